//! H- and V-represented polyhedra over the rationals.
//!
//! [`HPolyhedron`] is the working representation for Voronoi cells; a
//! [`VPolytope`] holds the convex hulls of boundary sites. Conversion from V
//! to H goes through [`hull_facets`], a brute-force facet enumeration that
//! stays exact under arbitrary degeneracy. [`PolyCone`] covers the
//! lineality/polar dimension pair.

mod cone;
mod hull;

pub use cone::{lineality_dim, polar_dim, PolyCone};
pub use hull::hull_facets;

use itertools::Itertools;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{check_dim, Error, Result};
use crate::exact::{affine_rank, Point, Scalar};
use crate::linalg;
use crate::lp::{self, HullAnalysis, LinearConstraint, LpStatus, Relation, Relint};

/// A polyhedron `{x : equalities, inequalities}`.
///
/// `provenance`, when present, labels each inequality with the ordered
/// site-id pair `(s, t)` whose bisector produced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HPolyhedron {
    ambient_dim: usize,
    equalities: Vec<LinearConstraint>,
    inequalities: Vec<LinearConstraint>,
    provenance: Option<Vec<(String, String)>>,
}

impl HPolyhedron {
    pub fn new(
        ambient_dim: usize,
        equalities: Vec<LinearConstraint>,
        inequalities: Vec<LinearConstraint>,
    ) -> Result<Self> {
        for c in &equalities {
            check_dim(ambient_dim, c.dim())?;
            if c.relation != Relation::Eq {
                return Err(Error::Precondition("equality list holds an inequality".into()));
            }
        }
        for c in &inequalities {
            check_dim(ambient_dim, c.dim())?;
            if c.relation != Relation::LessEq {
                return Err(Error::Precondition("inequality list holds an equality".into()));
            }
        }
        Ok(HPolyhedron {
            ambient_dim,
            equalities,
            inequalities,
            provenance: None,
        })
    }

    /// Polyhedron given by `<=` constraints only.
    pub fn from_inequalities(ambient_dim: usize, inequalities: Vec<LinearConstraint>) -> Result<Self> {
        Self::new(ambient_dim, Vec::new(), inequalities)
    }

    pub fn whole_space(ambient_dim: usize) -> Self {
        HPolyhedron {
            ambient_dim,
            equalities: Vec::new(),
            inequalities: Vec::new(),
            provenance: None,
        }
    }

    pub fn with_provenance(mut self, provenance: Vec<(String, String)>) -> Result<Self> {
        if provenance.len() != self.inequalities.len() {
            return Err(Error::Precondition(format!(
                "provenance covers {} of {} inequalities",
                provenance.len(),
                self.inequalities.len()
            )));
        }
        self.provenance = Some(provenance);
        Ok(self)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn equalities(&self) -> &[LinearConstraint] {
        &self.equalities
    }

    pub fn inequalities(&self) -> &[LinearConstraint] {
        &self.inequalities
    }

    pub fn provenance(&self) -> Option<&[(String, String)]> {
        self.provenance.as_deref()
    }

    /// Equalities followed by inequalities.
    pub fn constraints(&self) -> Vec<LinearConstraint> {
        self.equalities.iter().chain(&self.inequalities).cloned().collect()
    }

    pub fn contains(&self, x: &Point) -> bool {
        x.dim() == self.ambient_dim
            && self.equalities.iter().chain(&self.inequalities).all(|c| c.is_satisfied_by(x))
    }

    /// Implicit equalities (indices into [`Self::constraints`]) and a relative
    /// interior point; `None` for the empty set.
    pub fn analyze(&self) -> Result<Option<HullAnalysis>> {
        lp::analyze(self.ambient_dim, &self.constraints())
    }

    pub fn relint(&self) -> Result<Relint> {
        lp::relint_point(self.ambient_dim, &self.constraints())
    }

    pub fn is_empty(&self) -> Result<bool> {
        Ok(lp::feasible_point(self.ambient_dim, &self.constraints())?.is_none())
    }

    /// Dimension, `-1` for the empty set.
    pub fn dim(&self) -> Result<i64> {
        let Some(analysis) = self.analyze()? else {
            return Ok(-1);
        };
        let all = self.constraints();
        let normals: Vec<Vec<Scalar>> = analysis
            .implicit
            .iter()
            .map(|&i| all[i].normal.coords().to_vec())
            .collect();
        Ok(self.ambient_dim as i64 - linalg::rank(&normals) as i64)
    }

    /// Intersection: the constraint lists are concatenated. Provenance
    /// survives only if both operands carry it.
    pub fn intersect(&self, other: &HPolyhedron) -> Result<HPolyhedron> {
        check_dim(self.ambient_dim, other.ambient_dim)?;
        let provenance = match (&self.provenance, &other.provenance) {
            (Some(a), Some(b)) => Some(a.iter().chain(b).cloned().collect()),
            _ => None,
        };
        Ok(HPolyhedron {
            ambient_dim: self.ambient_dim,
            equalities: self.equalities.iter().chain(&other.equalities).cloned().collect(),
            inequalities: self.inequalities.iter().chain(&other.inequalities).cloned().collect(),
            provenance,
        })
    }

    /// Adds one more constraint of either relation.
    pub fn with_constraint(&self, c: LinearConstraint) -> Result<HPolyhedron> {
        check_dim(self.ambient_dim, c.dim())?;
        let mut out = self.clone();
        out.provenance = None;
        match c.relation {
            Relation::Eq => out.equalities.push(c),
            Relation::LessEq => out.inequalities.push(c),
        }
        Ok(out)
    }

    /// Drops inequalities that coincide (up to positive scaling) with an
    /// earlier one; the first occurrence keeps its provenance.
    pub fn deduplicated(&self) -> HPolyhedron {
        let mut seen = Vec::new();
        let mut inequalities = Vec::new();
        let mut provenance = self.provenance.as_ref().map(|_| Vec::new());
        for (i, c) in self.inequalities.iter().enumerate() {
            let key = c.canonical();
            if seen.contains(&key) {
                continue;
            }
            seen.push(key);
            inequalities.push(c.clone());
            if let (Some(out), Some(src)) = (provenance.as_mut(), self.provenance.as_ref()) {
                out.push(src[i].clone());
            }
        }
        HPolyhedron {
            ambient_dim: self.ambient_dim,
            equalities: self.equalities.clone(),
            inequalities,
            provenance,
        }
    }

    /// Removes, one at a time in order, every inequality implied by the
    /// remaining constraints. Provenance follows the survivors.
    pub fn irredundant(&self) -> Result<HPolyhedron> {
        let mut keep = vec![true; self.inequalities.len()];
        for i in 0..self.inequalities.len() {
            let others: Vec<LinearConstraint> = self
                .equalities
                .iter()
                .cloned()
                .chain(
                    self.inequalities
                        .iter()
                        .enumerate()
                        .filter(|&(j, _)| j != i && keep[j])
                        .map(|(_, c)| c.clone()),
                )
                .collect();
            let c = &self.inequalities[i];
            if violation_point(self.ambient_dim, &others, &c.normal, &c.rhs)?.is_none() {
                keep[i] = false;
            }
        }
        fn pick<T: Clone>(v: &[T], keep: &[bool]) -> Vec<T> {
            v.iter().zip(keep).filter(|(_, &k)| k).map(|(x, _)| x.clone()).collect()
        }
        Ok(HPolyhedron {
            ambient_dim: self.ambient_dim,
            equalities: self.equalities.clone(),
            inequalities: pick(&self.inequalities, &keep),
            provenance: self.provenance.as_deref().map(|p| pick(p, &keep)),
        })
    }

    /// Vertices, by brute force over `n`-subsets of constraints with
    /// independent normals. Empty when the polyhedron contains a line.
    pub fn vertices(&self) -> Vec<Point> {
        let n = self.ambient_dim;
        let all = self.constraints();
        let mut out: Vec<Point> = Vec::new();
        for subset in (0..all.len()).combinations(n) {
            let a: Vec<Vec<Scalar>> = subset.iter().map(|&i| all[i].normal.coords().to_vec()).collect();
            let b: Vec<Scalar> = subset.iter().map(|&i| all[i].rhs.clone()).collect();
            let Some(x) = linalg::solve_square(&a, &b) else {
                continue;
            };
            let x = Point::new(x);
            if self.contains(&x) && !out.contains(&x) {
                out.push(x);
            }
        }
        out
    }

    /// A point of `self` violating some constraint of `other`, or `None` when
    /// `self ⊆ other`.
    pub fn inclusion_witness(&self, other: &HPolyhedron) -> Result<Option<Point>> {
        check_dim(self.ambient_dim, other.ambient_dim)?;
        let mine = self.constraints();
        for c in other.equalities.iter().chain(&other.inequalities) {
            if let Some(x) = violation_point(self.ambient_dim, &mine, &c.normal, &c.rhs)? {
                return Ok(Some(x));
            }
            if c.is_equality() {
                if let Some(x) = violation_point(self.ambient_dim, &mine, &c.normal.neg(), &-&c.rhs)? {
                    return Ok(Some(x));
                }
            }
        }
        Ok(None)
    }
}

/// A point of the system with `normal · x > rhs`, if any. The search is
/// capped at `rhs + 1` so the LP is always bounded.
fn violation_point(
    dim: usize,
    system: &[LinearConstraint],
    normal: &Point,
    rhs: &Scalar,
) -> Result<Option<Point>> {
    let mut capped = system.to_vec();
    capped.push(LinearConstraint::le(normal.clone(), rhs + Scalar::one()));
    let (status, best) = lp::max_value(dim, &capped, normal)?;
    match (status, best) {
        (LpStatus::Optimal, Some((v, x))) if &v > rhs => Ok(Some(x)),
        // the cap itself can be what is infeasible, when the system forces
        // normal . x past rhs + 1; then any feasible point violates
        (LpStatus::Infeasible, _) => lp::feasible_point(dim, system),
        _ => Ok(None),
    }
}

/// Dimension of an H-polyhedron (`-1` if empty).
pub fn dim_h(p: &HPolyhedron) -> Result<i64> {
    p.dim()
}

/// `true` iff every constraint of `q` is valid over `p`, i.e. `p ⊆ q`.
pub fn includes_h(p: &HPolyhedron, q: &HPolyhedron) -> Result<bool> {
    Ok(p.inclusion_witness(q)?.is_none())
}

/// Set equality by mutual inclusion; two empty sets compare equal.
pub fn equal_h(p: &HPolyhedron, q: &HPolyhedron) -> Result<bool> {
    Ok(includes_h(p, q)? && includes_h(q, p)?)
}

/// Convex hull of finitely many points, stored by its vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VPolytope {
    ambient_dim: usize,
    vertices: Vec<Point>,
}

impl VPolytope {
    /// Builds the hull of `points`, discarding duplicates and every point
    /// that is a convex combination of the remaining ones.
    pub fn new(ambient_dim: usize, points: Vec<Point>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyInput("VPolytope"));
        }
        let mut vertices: Vec<Point> = Vec::with_capacity(points.len());
        for p in points {
            check_dim(ambient_dim, p.dim())?;
            if !vertices.contains(&p) {
                vertices.push(p);
            }
        }
        let mut i = 0;
        while i < vertices.len() && vertices.len() > 1 {
            let others: Vec<Point> = vertices
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, v)| v.clone())
                .collect();
            if in_convex_hull(ambient_dim, &others, &vertices[i])? {
                vertices.remove(i);
            } else {
                i += 1;
            }
        }
        Ok(VPolytope {
            ambient_dim,
            vertices,
        })
    }

    /// Wraps a list already known to be in convex position.
    pub(crate) fn from_vertices(ambient_dim: usize, vertices: Vec<Point>) -> Self {
        VPolytope {
            ambient_dim,
            vertices,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    /// Dimension of the affine hull.
    pub fn dim(&self) -> i64 {
        affine_rank(&self.vertices).map_or(-1, |r| r as i64)
    }

    pub fn contains(&self, x: &Point) -> Result<bool> {
        check_dim(self.ambient_dim, x.dim())?;
        in_convex_hull(self.ambient_dim, &self.vertices, x)
    }
}

/// Whether `x` is a convex combination of `points` (one feasibility LP over
/// the weights).
pub(crate) fn in_convex_hull(dim: usize, points: &[Point], x: &Point) -> Result<bool> {
    if points.is_empty() {
        return Ok(false);
    }
    let m = points.len();
    let unit = |j: usize, v: Scalar| {
        let mut e = vec![Scalar::zero(); m];
        e[j] = v;
        Point::new(e)
    };
    let mut system: Vec<LinearConstraint> = (0..m)
        .map(|j| LinearConstraint::le(unit(j, -Scalar::one()), Scalar::zero()))
        .collect();
    system.push(LinearConstraint::eq(
        Point::new(vec![Scalar::one(); m]),
        Scalar::one(),
    ));
    for i in 0..dim {
        let row = points.iter().map(|p| p[i].clone()).collect();
        system.push(LinearConstraint::eq(Point::new(row), x[i].clone()));
    }
    Ok(lp::feasible_point(m, &system)?.is_some())
}

/// Intersection of two V-polytopes in H-form, with a relative-interior point
/// of the intersection (or `Empty`).
pub fn intersect_v(a: &VPolytope, b: &VPolytope) -> Result<(HPolyhedron, Relint)> {
    check_dim(a.ambient_dim, b.ambient_dim)?;
    let h = hull_facets(a).intersect(&hull_facets(b))?;
    let relint = h.relint()?;
    Ok((h, relint))
}

/// The face of `p` cut out by the facets tight at `c`.
///
/// For `c` in the relative interior of a convex subset `C`, this is the
/// minimal face of `p` containing `C`.
pub fn minimal_face(p: &VPolytope, c: &Point) -> Result<VPolytope> {
    check_dim(p.ambient_dim, c.dim())?;
    let h = hull_facets(p);
    if !h.contains(c) {
        return Err(Error::OutsideHull);
    }
    let tight: Vec<&LinearConstraint> = h
        .inequalities()
        .iter()
        .filter(|f| f.slack(c).is_zero())
        .collect();
    let vertices = p
        .vertices
        .iter()
        .filter(|v| tight.iter().all(|f| f.slack(v).is_zero()))
        .cloned()
        .collect();
    Ok(VPolytope::from_vertices(p.ambient_dim, vertices))
}

/// Whether `x` lies strictly inside every inequality of `p` (and on its
/// equalities).
pub fn strictly_inside(p: &HPolyhedron, x: &Point) -> bool {
    p.equalities().iter().all(|c| c.is_satisfied_by(x))
        && p.inequalities().iter().all(|c| c.slack(x).is_positive())
}
