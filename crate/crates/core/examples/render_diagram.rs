//! Writes the order-2 diagram of six cocircular sites as SVG.
//!
//! `cargo run --example render_diagram > diagram.svg`

use order_voronoi::harness::io::InstanceFile;
use order_voronoi::harness::svg::{render_svg, BBox};

fn main() -> order_voronoi::error::Result<()> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/cocircular_ambiguous.json");
    let sites = InstanceFile::read(path.as_ref())?.site_set(2)?;
    print!("{}", render_svg(&sites, 2, &BBox::parse("-2,-2,2,2")?)?);
    Ok(())
}
