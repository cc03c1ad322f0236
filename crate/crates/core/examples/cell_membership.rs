//! Builds the cell of three sites against three competitors in R^3 and
//! tests points three ways: by distances, by bisector halfspaces and by a
//! certifying ball.

use order_voronoi::cell::{admissible_radius_range, cell_halfspaces, certificate_at, member, CellSpec};
use order_voronoi::exact::{format_scalar, Point, Site, SiteSet};

fn main() -> order_voronoi::error::Result<()> {
    let sites = SiteSet::new(
        3,
        vec![
            Site::new("s1", Point::from_ints(&[1, 0, 0])),
            Site::new("s2", Point::from_ints(&[-1, 0, 0])),
            Site::new("s3", Point::from_ints(&[0, 0, 1])),
            Site::new("t1", Point::from_ints(&[0, 1, 0])),
            Site::new("t2", Point::from_ints(&[0, -1, 0])),
            Site::new("t3", Point::from_ints(&[0, 0, -1])),
        ],
    )?;
    let spec = CellSpec::new(sites, ["s1", "s2", "s3"])?;

    let h = cell_halfspaces(&spec);
    let prov = h.provenance().unwrap_or_default();
    println!("{} bisector halfspaces:", h.inequalities().len());
    for (c, (s, t)) in h.inequalities().iter().zip(prov) {
        println!("  {c}    from ({s}, {t})");
    }
    let small = h.irredundant()?;
    println!("{} of them are irredundant", small.inequalities().len());

    for coords in [[0, 0, 2], [0, 0, 0], [0, 0, -1], [1, 0, 3]] {
        let x = Point::from_ints(&coords);
        let cert = certificate_at(&x, &spec)?;
        print!(
            "{x}: distances {}, halfspaces {}, ball {}",
            member(&x, &spec)?,
            h.contains(&x),
            cert.is_some()
        );
        if let Some(range) = admissible_radius_range(&x, &spec)? {
            let hi = range.sq_hi.as_ref().map_or("inf".to_string(), format_scalar);
            print!("  radius^2 in [{}, {hi}]", format_scalar(&range.sq_lo));
        }
        println!();
    }
    Ok(())
}
