//! Higher-order Voronoi cells.
//!
//! For a site set `T` and a selection `S`, the cell `V_T(S)` collects the
//! points no farther from any site of `S` than from any site of `T \ S`. It is
//! the intersection of the bisector halfspaces
//! `<t - s, x> <= (|t|^2 - |s|^2) / 2` over all pairs `(s, t)`, and a point
//! belongs to it exactly when some closed ball centred there contains `S`
//! while keeping `T \ S` out of its interior.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::Signed;
use serde::Serialize;

use crate::error::{check_dim, Error, Result};
use crate::exact::{opt_scalar_serde, scalar_serde, sq_dist, Ball, BallPosition, Point, Scalar, Site, SiteSet};
use crate::lp::{LinearConstraint, Relint};
use crate::polytope::HPolyhedron;

/// The pair `(S, T)`: a site set holding `T ∪ S` and the ids forming `S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellSpec {
    sites: SiteSet,
    s_ids: Vec<String>,
}

impl CellSpec {
    /// `s_ids` must be nonempty, duplicate-free and name existing sites. They
    /// are stored in site-set order.
    pub fn new<I, S>(sites: SiteSet, s_ids: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let requested: Vec<String> = s_ids.into_iter().map(Into::into).collect();
        if requested.is_empty() {
            return Err(Error::InvalidSpec("S must be nonempty".into()));
        }
        let mut set = HashSet::new();
        for id in &requested {
            if sites.get(id).is_none() {
                return Err(Error::UnknownId(id.clone()));
            }
            if !set.insert(id.as_str()) {
                return Err(Error::InvalidSpec(format!("site {id:?} listed twice in S")));
            }
        }
        let s_ids = sites
            .ids()
            .filter(|id| set.contains(id))
            .map(str::to_string)
            .collect();
        Ok(CellSpec { sites, s_ids })
    }

    pub fn sites(&self) -> &SiteSet {
        &self.sites
    }

    pub fn ambient_dim(&self) -> usize {
        self.sites.ambient_dim()
    }

    pub fn s_ids(&self) -> &[String] {
        &self.s_ids
    }

    pub fn order(&self) -> usize {
        self.s_ids.len()
    }

    pub fn in_s(&self, id: &str) -> bool {
        self.s_ids.iter().any(|s| s == id)
    }

    pub fn s_sites(&self) -> Vec<&Site> {
        self.sites.sites().iter().filter(|s| self.in_s(&s.id)).collect()
    }

    /// `T \ S`, in site-set order.
    pub fn others(&self) -> Vec<&Site> {
        self.sites.sites().iter().filter(|s| !self.in_s(&s.id)).collect()
    }

    pub fn other_ids(&self) -> Vec<String> {
        self.others().into_iter().map(|s| s.id.clone()).collect()
    }

    /// Whether `S` is a proper subset of `T` (so `T \ S` is nonempty).
    pub fn is_proper(&self) -> bool {
        self.order() < self.sites.len()
    }

    /// Same site set, different selection.
    pub fn with_selection<I, S>(&self, s_ids: I) -> Result<CellSpec>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        CellSpec::new(self.sites.clone(), s_ids)
    }

    /// The cell of `s_ids` against the competitor set `competitors` only:
    /// the site set is cut down to their union.
    pub fn reduced(&self, s_ids: &[String], competitors: &[String]) -> Result<CellSpec> {
        for id in s_ids.iter().chain(competitors) {
            if self.sites.get(id).is_none() {
                return Err(Error::UnknownId(id.clone()));
            }
        }
        let sites = self
            .sites
            .filtered(|id| s_ids.iter().chain(competitors).any(|k| k == id));
        CellSpec::new(sites, s_ids.iter().cloned())
    }
}

/// Bisector halfspaces of the cell, one per pair `(s, t)` in `S × (T \ S)`,
/// in `S`-major order, with the pair recorded as provenance. Coincident
/// inequalities are kept; see [`HPolyhedron::deduplicated`].
pub fn cell_halfspaces(spec: &CellSpec) -> HPolyhedron {
    let half = Scalar::new(BigInt::from(1), BigInt::from(2));
    let mut inequalities = Vec::new();
    let mut provenance = Vec::new();
    let others = spec.others();
    for s in spec.s_sites() {
        let s_norm = s.point.norm_sq();
        for t in &others {
            let normal = t.point.sub(&s.point);
            let rhs = (t.point.norm_sq() - &s_norm) * &half;
            inequalities.push(LinearConstraint::le(normal, rhs));
            provenance.push((s.id.clone(), t.id.clone()));
        }
    }
    HPolyhedron::from_inequalities(spec.ambient_dim(), inequalities)
        .and_then(|h| h.with_provenance(provenance))
        .expect("bisectors live in the ambient space")
}

/// Farthest `S`-distance and nearest `(T \ S)`-distance from `x`, squared.
fn distance_bounds(x: &Point, spec: &CellSpec) -> Result<(Scalar, Option<Scalar>)> {
    check_dim(spec.ambient_dim(), x.dim())?;
    let far_s = spec
        .s_sites()
        .iter()
        .map(|s| sq_dist(x, &s.point))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .max()
        .expect("S is nonempty");
    let near_t = spec
        .others()
        .iter()
        .map(|t| sq_dist(x, &t.point))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .min();
    Ok((far_s, near_t))
}

/// Membership straight from the distance definition.
pub fn member(x: &Point, spec: &CellSpec) -> Result<bool> {
    let (far_s, near_t) = distance_bounds(x, spec)?;
    Ok(near_t.is_none_or(|t| far_s <= t))
}

/// A ball witnessing that `S` fits inside while `T \ S` stays out of the
/// interior, together with the sites on its sphere.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BallCertificate {
    pub ball: Ball,
    pub on_boundary_s: Vec<String>,
    pub on_boundary_t: Vec<String>,
}

impl BallCertificate {
    /// Classifies every site of `spec` against `ball`; fails unless every
    /// `S`-site is inside or on the sphere and every other site is on or
    /// outside it.
    pub fn from_ball(ball: Ball, spec: &CellSpec) -> Result<Self> {
        check_dim(spec.ambient_dim(), ball.dim())?;
        let mut on_boundary_s = Vec::new();
        let mut on_boundary_t = Vec::new();
        for site in spec.sites().sites() {
            let pos = ball.position(&site.point)?;
            let in_s = spec.in_s(&site.id);
            match (in_s, pos) {
                (true, BallPosition::Exterior) => {
                    return Err(Error::InvalidCertificate(format!("S-site {:?} lies outside the ball", site.id)))
                }
                (false, BallPosition::Interior) => {
                    return Err(Error::InvalidCertificate(format!(
                        "competitor {:?} lies inside the ball",
                        site.id
                    )))
                }
                (true, BallPosition::Boundary) => on_boundary_s.push(site.id.clone()),
                (false, BallPosition::Boundary) => on_boundary_t.push(site.id.clone()),
                _ => {}
            }
        }
        Ok(BallCertificate {
            ball,
            on_boundary_s,
            on_boundary_t,
        })
    }

    /// Re-checks the certificate invariants against `spec`.
    pub fn validate(&self, spec: &CellSpec) -> Result<()> {
        let fresh = BallCertificate::from_ball(self.ball.clone(), spec)?;
        if fresh != *self {
            return Err(Error::InvalidCertificate("boundary lists do not match the ball".into()));
        }
        Ok(())
    }
}

/// The ball centred at `x` with squared radius `max_s |x - s|^2`, or `None`
/// when `x` is not in the cell.
pub fn certificate_at(x: &Point, spec: &CellSpec) -> Result<Option<BallCertificate>> {
    let (far_s, near_t) = distance_bounds(x, spec)?;
    if near_t.is_some_and(|t| far_s > t) {
        return Ok(None);
    }
    let ball = Ball::new(x.clone(), far_s)?;
    BallCertificate::from_ball(ball, spec).map(Some)
}

/// Squared radii for which the ball centred at a cell point certifies it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RadiusRange {
    #[serde(with = "scalar_serde")]
    pub sq_lo: Scalar,
    /// `None` stands for +∞ (no competitors).
    #[serde(with = "opt_scalar_serde")]
    pub sq_hi: Option<Scalar>,
}

impl RadiusRange {
    pub fn contains(&self, sq_r: &Scalar) -> bool {
        *sq_r >= self.sq_lo && self.sq_hi.as_ref().is_none_or(|hi| sq_r <= hi)
    }
}

/// `[max_s |x - s|^2, min_t |x - t|^2]`, or `None` when that interval is
/// empty (i.e. `x` is not in the cell).
pub fn admissible_radius_range(x: &Point, spec: &CellSpec) -> Result<Option<RadiusRange>> {
    let (sq_lo, sq_hi) = distance_bounds(x, spec)?;
    if sq_hi.as_ref().is_some_and(|hi| &sq_lo > hi) {
        return Ok(None);
    }
    Ok(Some(RadiusRange { sq_lo, sq_hi }))
}

/// Outcome of the farthest-cell test for one site.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Farthest {
    /// `witness` is a relative-interior point of the farthest cell and
    /// `exposed_ball` (centre `2x - s`, squared radius `4 |x - s|^2`) has the
    /// site on its sphere and every other site in its interior.
    Nonempty { witness: Point, exposed_ball: Ball },
    Empty,
}

/// Spec for the farthest cell of `s_id`: the points whose farthest site is
/// `s_id`, i.e. `S = T \ {s}` against the single competitor `s`.
pub fn farthest_spec(sites: &SiteSet, s_id: &str) -> Result<CellSpec> {
    if sites.get(s_id).is_none() {
        return Err(Error::UnknownId(s_id.to_string()));
    }
    if sites.len() < 2 {
        return Err(Error::Precondition("farthest cells need at least two sites".into()));
    }
    let rest: Vec<String> = sites.ids().filter(|id| *id != s_id).map(str::to_string).collect();
    CellSpec::new(sites.clone(), rest)
}

/// Whether `ball` exposes `s_id`: the site on the sphere, all others inside.
pub fn is_exposing_ball(sites: &SiteSet, s_id: &str, ball: &Ball) -> Result<bool> {
    for site in sites.sites() {
        let pos = ball.position(&site.point)?;
        let ok = if site.id == s_id {
            pos == BallPosition::Boundary
        } else {
            pos == BallPosition::Interior
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Decides whether the farthest cell of `s_id` in `sites` is nonempty; when
/// it is, constructs and checks the exposing ball.
pub fn farthest_nonempty(sites: &SiteSet, s_id: &str) -> Result<Farthest> {
    let spec = farthest_spec(sites, s_id)?;
    let Relint::Point(x) = cell_halfspaces(&spec).relint()? else {
        return Ok(Farthest::Empty);
    };
    let s = &sites.get(s_id).expect("checked above").point;
    let center = x.scale(&Scalar::from_integer(BigInt::from(2))).sub(s);
    let sq_radius = sq_dist(&x, s)? * Scalar::from_integer(BigInt::from(4));
    let ball = Ball::new(center, sq_radius)?;
    if !is_exposing_ball(sites, s_id, &ball)? {
        return Err(Error::InvalidCertificate(format!(
            "exposing ball for {s_id:?} failed validation at witness {x}"
        )));
    }
    debug_assert!(!ball.sq_radius.is_negative());
    Ok(Farthest::Nonempty {
        witness: x,
        exposed_ball: ball,
    })
}
