use itertools::Itertools;
use num_traits::Zero;

use super::{HPolyhedron, VPolytope};
use crate::exact::{Point, Scalar};
use crate::linalg::{self, dot, normalize_ray};
use crate::lp::LinearConstraint;

/// Facet description of a V-polytope.
///
/// The equalities span the orthogonal complement of the affine hull. Facets
/// are found by brute force inside the hull: every affinely independent
/// `d`-subset of vertices spans a candidate hyperplane (with normal inside
/// the hull's direction space) that is kept when all vertices lie weakly on
/// one side. Candidates are deduplicated in canonical form, so cospherical or
/// otherwise degenerate vertex sets produce each facet once.
pub fn hull_facets(p: &VPolytope) -> HPolyhedron {
    let n = p.ambient_dim();
    let verts = p.vertices();
    let base = &verts[0];

    let mut directions: Vec<Vec<Scalar>> =
        verts[1..].iter().map(|v| v.sub(base).into_coords()).collect();
    linalg::rref(&mut directions);
    let d = directions.len();

    let equalities: Vec<LinearConstraint> = linalg::null_space(&directions, n)
        .into_iter()
        .map(|normal| {
            let normal = Point::new(normalize_ray(&normal));
            let rhs = normal.dot(base);
            LinearConstraint::eq(normal, rhs)
        })
        .collect();

    let mut facets: Vec<LinearConstraint> = Vec::new();
    if d > 0 {
        for subset in (0..verts.len()).combinations(d) {
            let anchor = &verts[subset[0]];
            let spans: Vec<Vec<Scalar>> = subset[1..]
                .iter()
                .map(|&i| verts[i].sub(anchor).into_coords())
                .collect();
            if linalg::rank(&spans) != d - 1 {
                continue;
            }
            // normal = sum_k c_k directions_k, orthogonal to every span vector
            let system: Vec<Vec<Scalar>> = spans
                .iter()
                .map(|w| directions.iter().map(|u| dot(u, w)).collect())
                .collect();
            let coeffs = linalg::null_space(&system, d);
            debug_assert_eq!(coeffs.len(), 1);
            let mut normal = vec![Scalar::zero(); n];
            for (c, u) in coeffs[0].iter().zip(&directions) {
                for (x, ui) in normal.iter_mut().zip(u) {
                    *x += c * ui;
                }
            }
            let normal = Point::new(normal);
            let level = normal.dot(anchor);
            let (mut below, mut above) = (false, false);
            for v in verts {
                match normal.dot(v).cmp(&level) {
                    std::cmp::Ordering::Less => below = true,
                    std::cmp::Ordering::Greater => above = true,
                    std::cmp::Ordering::Equal => {}
                }
                if below && above {
                    break;
                }
            }
            let facet = match (below, above) {
                (true, false) => LinearConstraint::le(normal, level),
                (false, true) => LinearConstraint::le(normal.neg(), -level),
                _ => continue,
            }
            .canonical();
            if !facets.contains(&facet) {
                facets.push(facet);
            }
        }
    }

    HPolyhedron::new(n, equalities, facets).expect("hull constraints share the ambient dimension")
}
