//! Lineality space and polar cone of finitely generated cones: their
//! dimensions always add up to the ambient dimension.

use order_voronoi::exact::Point;
use order_voronoi::polytope::{lineality_dim, polar_dim, PolyCone};

fn main() -> order_voronoi::error::Result<()> {
    let cones = [
        ("quadrant", 2, vec![[1, 0, 0], [0, 1, 0]]),
        ("halfplane", 2, vec![[1, 0, 0], [-1, 0, 0], [0, 1, 0]]),
        ("ray", 3, vec![[1, 1, 1]]),
        ("wedge x line", 3, vec![[1, 0, 0], [0, 1, 0], [0, 0, 1], [0, 0, -1]]),
        ("whole space", 3, vec![[1, 0, 0], [0, 1, 0], [0, 0, 1], [-1, -1, -1]]),
    ];
    for (name, n, gens) in cones {
        let gens = gens.iter().map(|g| Point::from_ints(&g[..n])).collect();
        let k = PolyCone::new(n, gens)?;
        let (l, p) = (lineality_dim(&k)?, polar_dim(&k)?);
        println!("{name:>13} in R^{n}: lineality {l} + polar {p} = {}", l + p);
    }
    Ok(())
}
