//! Cell dimension computed from the LP and predicted from the faces of the
//! certificate ball's boundary hulls.

use order_voronoi::cell::CellSpec;
use order_voronoi::dimension::{predicted_dimension, DimensionReport};
use order_voronoi::exact::{Point, Site, SiteSet};
use order_voronoi::harness::io::InstanceFile;

fn show(name: &str, r: &DimensionReport) {
    println!("{name}:");
    if r.cell_empty {
        println!("  empty cell");
        return;
    }
    if let Some(c) = &r.ball {
        println!("  ball centre {}, S on sphere {:?}, T on sphere {:?}", c.ball.center, c.on_boundary_s, c.on_boundary_t);
    }
    if let Some(p) = &r.c_point {
        println!("  boundary hulls meet at {p}, dim co(F_S, F_T) = {}", r.dim_co_faces);
    }
    println!("  predicted {}, lp {}, agree {}", r.predicted_dim, r.lp_dim, r.agree);
}

fn main() -> order_voronoi::error::Result<()> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/three_sites_ray.json");
    let spec = InstanceFile::read(path.as_ref())?.spec(4)?;
    show("three sites in R^3", &predicted_dimension(&spec)?);

    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/cyclic_quadrilateral.json");
    let spec = InstanceFile::read(path.as_ref())?.spec(4)?;
    show("diagonal of a square", &predicted_dimension(&spec)?);

    let sites = SiteSet::new(
        2,
        vec![
            Site::new("a", Point::from_ints(&[0, 0])),
            Site::new("b", Point::from_ints(&[4, 0])),
            Site::new("c", Point::from_ints(&[0, 3])),
        ],
    )?;
    show("generic pair", &predicted_dimension(&CellSpec::new(sites, ["a", "b"])?)?);
    Ok(())
}
