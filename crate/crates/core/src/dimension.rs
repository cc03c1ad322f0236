//! Dimension of a cell from the boundary sites of a certifying ball.
//!
//! Let `B` certify the cell. When the hulls of the `S`-sites and of the
//! competitor sites on the sphere of `B` are disjoint, the cell is
//! full-dimensional. Otherwise, with `c` in the relative interior of their
//! intersection and `F_S`, `F_T` the minimal faces of the two hulls containing
//! `c`, the cell has dimension `n - dim co(F_S ∪ F_T)`. The value is compared
//! with the dimension read off the H-representation by linear programming.

use serde::Serialize;

use crate::cell::{cell_halfspaces, certificate_at, BallCertificate, CellSpec};
use crate::error::{Error, Result};
use crate::exact::{affine_rank, Point};
use crate::lp::Relint;
use crate::polytope::{intersect_v, minimal_face, VPolytope};

/// Certificate at the canonical relative-interior point of the cell, or
/// `None` for an empty cell.
pub fn certified_ball(spec: &CellSpec) -> Result<Option<BallCertificate>> {
    match cell_halfspaces(spec).relint()? {
        Relint::Point(x) => certificate_at(&x, spec),
        Relint::Empty => Ok(None),
    }
}

/// Boundary sites of a certificate, split by side. A side without sites on
/// the sphere is `None`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundaryPartition {
    pub s_side: Option<VPolytope>,
    pub t_side: Option<VPolytope>,
}

pub fn boundary_partition(cert: &BallCertificate, spec: &CellSpec) -> Result<BoundaryPartition> {
    cert.validate(spec)?;
    let n = spec.ambient_dim();
    let hull = |ids: &[String]| -> Result<Option<VPolytope>> {
        if ids.is_empty() {
            return Ok(None);
        }
        let pts = ids
            .iter()
            .map(|id| spec.sites().get(id).expect("validated").point.clone())
            .collect();
        VPolytope::new(n, pts).map(Some)
    };
    Ok(BoundaryPartition {
        s_side: hull(&cert.on_boundary_s)?,
        t_side: hull(&cert.on_boundary_t)?,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimensionReport {
    pub ambient_dim: usize,
    pub cell_empty: bool,
    pub ball: Option<BallCertificate>,
    /// Whether the two boundary hulls are disjoint.
    pub c_empty: bool,
    /// Relative-interior point of the hull intersection.
    pub c_point: Option<Point>,
    pub f_s: Option<VPolytope>,
    pub f_t: Option<VPolytope>,
    /// `dim co(F_S ∪ F_T)`, `-1` when not applicable.
    pub dim_co_faces: i64,
    pub predicted_dim: i64,
    pub lp_dim: i64,
    pub agree: bool,
}

impl DimensionReport {
    fn empty(n: usize) -> Self {
        DimensionReport {
            ambient_dim: n,
            cell_empty: true,
            ball: None,
            c_empty: true,
            c_point: None,
            f_s: None,
            f_t: None,
            dim_co_faces: -1,
            predicted_dim: -1,
            lp_dim: -1,
            agree: true,
        }
    }
}

/// Dimension of the cell from its H-representation (`-1` if empty).
pub fn lp_dim(spec: &CellSpec) -> Result<i64> {
    cell_halfspaces(spec).dim()
}

/// Runs the boundary-face formula with the canonical certified ball.
pub fn predicted_dimension(spec: &CellSpec) -> Result<DimensionReport> {
    let h = cell_halfspaces(spec);
    let Relint::Point(x) = h.relint()? else {
        return Ok(DimensionReport::empty(spec.ambient_dim()));
    };
    let cert = certificate_at(&x, spec)?.ok_or_else(|| {
        Error::InvalidCertificate(format!("relative-interior point {x} fails membership"))
    })?;
    predicted_dimension_with(spec, cert)
}

/// Runs the formula with the ball centred at the cell point `x` (squared
/// radius the farthest `S`-distance).
pub fn predicted_dimension_at(spec: &CellSpec, x: &Point) -> Result<DimensionReport> {
    let cert = certificate_at(x, spec)?
        .ok_or_else(|| Error::Precondition(format!("{x} is not in the cell")))?;
    predicted_dimension_with(spec, cert)
}

/// Runs the formula with an arbitrary valid certificate.
pub fn predicted_dimension_with(spec: &CellSpec, cert: BallCertificate) -> Result<DimensionReport> {
    let n = spec.ambient_dim();
    let parts = boundary_partition(&cert, spec)?;
    let lp = lp_dim(spec)?;
    let mut report = DimensionReport {
        ambient_dim: n,
        cell_empty: false,
        ball: Some(cert),
        c_empty: true,
        c_point: None,
        f_s: None,
        f_t: None,
        dim_co_faces: -1,
        predicted_dim: n as i64,
        lp_dim: lp,
        agree: false,
    };
    if let (Some(s_hull), Some(t_hull)) = (&parts.s_side, &parts.t_side) {
        if let (_, Relint::Point(c)) = intersect_v(s_hull, t_hull)? {
            let f_s = minimal_face(s_hull, &c)?;
            let f_t = minimal_face(t_hull, &c)?;
            let union: Vec<Point> = f_s.vertices().iter().chain(f_t.vertices()).cloned().collect();
            let dim_co = affine_rank(&union)? as i64;
            report.c_empty = false;
            report.c_point = Some(c);
            report.f_s = Some(f_s);
            report.f_t = Some(f_t);
            report.dim_co_faces = dim_co;
            report.predicted_dim = n as i64 - dim_co;
        }
    }
    report.agree = report.predicted_dim == report.lp_dim;
    Ok(report)
}

/// `true` unless the cell has dimension exactly `n - 1`.
pub fn assert_no_codim_one(spec: &CellSpec) -> Result<bool> {
    Ok(lp_dim(spec)? != spec.ambient_dim() as i64 - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, Ball, Site, SiteSet};

    fn spec(dim: usize, s: &[&[i64]], t: &[&[i64]]) -> CellSpec {
        let mut sites = Vec::new();
        for (i, c) in s.iter().enumerate() {
            sites.push(Site::new(format!("s{i}"), Point::from_ints(c)));
        }
        for (i, c) in t.iter().enumerate() {
            sites.push(Site::new(format!("t{i}"), Point::from_ints(c)));
        }
        let ids: Vec<String> = (0..s.len()).map(|i| format!("s{i}")).collect();
        CellSpec::new(SiteSet::new(dim, sites).unwrap(), ids).unwrap()
    }

    fn worked() -> CellSpec {
        spec(3, &[&[1, 0, 0], &[-1, 0, 0], &[0, 0, 1]], &[&[0, 1, 0], &[0, -1, 0], &[0, 0, -1]])
    }

    fn square_diagonal() -> CellSpec {
        spec(2, &[&[1, 1], &[-1, -1]], &[&[-1, 1], &[1, -1]])
    }

    #[test]
    fn worked_example_pipeline() {
        let s = worked();
        let cert = certified_ball(&s).unwrap().unwrap();
        let c = &cert.ball.center;
        assert!(c[0] == int(0) && c[1] == int(0) && c[2] >= int(0));

        let unit = BallCertificate::from_ball(Ball::new(Point::origin(3), int(1)).unwrap(), &s).unwrap();
        let parts = boundary_partition(&unit, &s).unwrap();
        assert_eq!(parts.s_side.as_ref().unwrap().vertices().len(), 3);
        assert_eq!(parts.t_side.as_ref().unwrap().vertices().len(), 3);

        let r = predicted_dimension_with(&s, unit).unwrap();
        assert_eq!(r.c_point, Some(Point::origin(3)));
        assert_eq!(
            r.f_s.unwrap().vertices(),
            &[Point::from_ints(&[1, 0, 0]), Point::from_ints(&[-1, 0, 0])]
        );
        assert_eq!(
            r.f_t.unwrap().vertices(),
            &[Point::from_ints(&[0, 1, 0]), Point::from_ints(&[0, -1, 0])]
        );
        assert_eq!((r.dim_co_faces, r.predicted_dim, r.lp_dim), (2, 1, 1));
        assert!(r.agree);

        let r = predicted_dimension(&s).unwrap();
        assert_eq!((r.predicted_dim, r.lp_dim), (1, 1));
        assert!(assert_no_codim_one(&s).unwrap());
    }

    #[test]
    fn square_diagonal_is_a_point() {
        let s = square_diagonal();
        let cert = certified_ball(&s).unwrap().unwrap();
        assert_eq!(cert.ball.center, Point::origin(2));
        assert_eq!(cert.ball.sq_radius, int(2));
        let parts = boundary_partition(&cert, &s).unwrap();
        assert_eq!(parts.s_side.unwrap().vertices().len(), 2);
        assert_eq!(parts.t_side.unwrap().vertices().len(), 2);
        let r = predicted_dimension(&s).unwrap();
        assert_eq!(r.c_point, Some(Point::origin(2)));
        assert_eq!((r.dim_co_faces, r.predicted_dim, r.lp_dim), (2, 0, 0));
    }

    #[test]
    fn empty_cell() {
        let s = spec(2, &[&[0, 0], &[10, 0]], &[&[5, 0]]);
        assert!(certified_ball(&s).unwrap().is_none());
        let r = predicted_dimension(&s).unwrap();
        assert!(r.cell_empty);
        assert_eq!((r.predicted_dim, r.lp_dim), (-1, -1));
    }

    #[test]
    fn halfplane_cell() {
        let s = spec(2, &[&[0, 0]], &[&[4, 0]]);
        let r = predicted_dimension(&s).unwrap();
        assert!(r.c_empty);
        assert_eq!((r.predicted_dim, r.lp_dim), (2, 2));
        assert!(r.ball.unwrap().on_boundary_t.is_empty());
    }

    #[test]
    fn other_balls_agree() {
        let s = worked();
        for z in 0..4 {
            let r = predicted_dimension_at(&s, &Point::from_ints(&[0, 0, z])).unwrap();
            assert_eq!(r.predicted_dim, 1, "z = {z}");
        }
        assert!(predicted_dimension_at(&s, &Point::from_ints(&[0, 0, -1])).is_err());
    }
}
