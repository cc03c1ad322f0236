//! The exact simplex solver and affine-hull analysis on a small system.

use order_voronoi::exact::{format_scalar, frac, int, Point};
use order_voronoi::lp::{analyze, solve, LinearConstraint, Sense};

fn main() -> order_voronoi::error::Result<()> {
    // triangle x >= 0, y >= 0, 3x + 2y <= 6, squeezed onto y = 0 by -y >= 0
    let mut cons = vec![
        LinearConstraint::le(Point::from_ints(&[-1, 0]), int(0)),
        LinearConstraint::le(Point::from_ints(&[0, -1]), int(0)),
        LinearConstraint::le(Point::from_ints(&[3, 2]), int(6)),
    ];
    for (label, objective, sense) in [
        ("max x + y", [int(1), int(1)], Sense::Max),
        ("min y - x/3", [frac(-1, 3), int(1)], Sense::Min),
    ] {
        let out = solve(2, &cons, &objective, sense)?;
        match (out.value, out.point) {
            (Some(v), Some(x)) => println!("{label}: {} at {x}", format_scalar(&v)),
            _ => println!("{label}: {:?}", out.status),
        }
    }

    cons.push(LinearConstraint::le(Point::from_ints(&[0, 1]), int(0)));
    if let Some(a) = analyze(2, &cons)? {
        println!("implicit equalities {:?}, relative interior point {}", a.implicit, a.relint);
    }
    Ok(())
}
