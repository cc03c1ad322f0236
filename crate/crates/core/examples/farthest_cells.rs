//! Farthest-point cells: nonempty exactly for hull vertices, with an
//! exposing ball built from a witness point.

use order_voronoi::cell::{farthest_nonempty, Farthest};
use order_voronoi::exact::format_scalar;
use order_voronoi::harness::io::InstanceFile;

fn main() -> order_voronoi::error::Result<()> {
    for file in ["farthest_square.json", "farthest_collinear.json"] {
        let path = format!("{}/examples/{file}", env!("CARGO_MANIFEST_DIR"));
        let sites = InstanceFile::read(path.as_ref())?.site_set(4)?;
        println!("{file}:");
        for id in sites.ids() {
            match farthest_nonempty(&sites, id)? {
                Farthest::Nonempty { witness, exposed_ball } => println!(
                    "  {id}: nonempty at {witness}; ball centre {} radius^2 {}",
                    exposed_ball.center,
                    format_scalar(&exposed_ball.sq_radius)
                ),
                Farthest::Empty => println!("  {id}: empty"),
            }
        }
    }
    Ok(())
}
