//! Seeded random instances, optionally with many sites on one sphere or on
//! a great circle of it.
//!
//! Points on the unit sphere of `R^n` come from inverse stereographic
//! projection of a rational `u ∈ R^{n-1}`:
//! `(2u, |u|^2 - 1) / (|u|^2 + 1)`, which has norm exactly one. In the plane
//! this is the familiar `((1 - u^2), 2u) / (1 + u^2)` up to a swap of axes.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cell::CellSpec;
use crate::error::{Error, Result};
use crate::exact::{opt_scalar_serde, scalar_serde, sq_dist, Point, Scalar, Site, SiteSet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InstanceConfig {
    pub ambient_dim: usize,
    pub num_sites: usize,
    pub order: usize,
    /// Share of the sites placed on a common sphere.
    #[serde(with = "scalar_serde")]
    pub degenerate_fraction: Scalar,
    pub coordinate_bound: i64,
    pub seed: u64,
}

impl InstanceConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidConfig(m));
        if !(2..=4).contains(&self.ambient_dim) {
            return bad(format!("dimension {} outside 2..=4", self.ambient_dim));
        }
        if self.order == 0 || self.order >= self.num_sites {
            return bad(format!("order {} must satisfy 1 <= k < {}", self.order, self.num_sites));
        }
        if self.degenerate_fraction < Scalar::zero() || self.degenerate_fraction > Scalar::one() {
            return bad("degenerate fraction outside [0, 1]".into());
        }
        if self.coordinate_bound < 2 {
            return bad("coordinate bound must be at least 2".into());
        }
        Ok(())
    }

    /// Number of sites forced onto the common sphere.
    pub fn sphere_count(&self) -> usize {
        let v = &self.degenerate_fraction * Scalar::from_integer(BigInt::from(self.num_sites));
        usize::try_from(v.floor().to_integer()).expect("fraction within [0, 1]")
    }
}

/// A generated cell specification with the sphere that was used.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneratedInstance {
    #[serde(skip)]
    pub spec: CellSpec,
    pub sphere_center: Option<Point>,
    #[serde(with = "opt_scalar_serde")]
    pub sphere_sq_radius: Option<Scalar>,
    /// Ids of the sites on the sphere.
    pub on_sphere: Vec<String>,
    /// Dimension of the flat spanned by the sphere points' great subsphere.
    pub sphere_dim: usize,
}

impl GeneratedInstance {
    /// Whether more sites share the (sub)sphere than a generic
    /// configuration allows: `m + 2` or more on a sphere spanning an
    /// `m`-flat.
    pub fn is_degenerate(&self) -> bool {
        !self.on_sphere.is_empty() && self.on_sphere.len() >= self.sphere_dim + 2
    }
}

fn small_rational(rng: &mut impl Rng, num: i64, den: i64) -> Scalar {
    Scalar::new(BigInt::from(rng.gen_range(-num..=num)), BigInt::from(rng.gen_range(1..=den)))
}

/// Rational point on the unit sphere of `R^n`.
pub fn unit_sphere_point(n: usize, rng: &mut impl Rng) -> Point {
    let u: Vec<Scalar> = (0..n - 1).map(|_| small_rational(rng, 6, 4)).collect();
    let norm: Scalar = u.iter().map(|x| x * x).sum();
    let denom = &norm + Scalar::one();
    let mut coords: Vec<Scalar> = u.iter().map(|x| x * Scalar::from_integer(BigInt::from(2)) / &denom).collect();
    coords.push((norm - Scalar::one()) / denom);
    Point::new(coords)
}

pub fn generate(cfg: &InstanceConfig) -> Result<GeneratedInstance> {
    cfg.validate()?;
    let n = cfg.ambient_dim;
    let b = cfg.coordinate_bound;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut points: Vec<Point> = Vec::with_capacity(cfg.num_sites);
    let mut flagged = Vec::new();

    let on_sphere = cfg.sphere_count();
    let sphere = (on_sphere > 0).then(|| {
        let center = Point::new((0..n).map(|_| Scalar::from_integer(BigInt::from(rng.gen_range(-b / 2..=b / 2)))).collect());
        let radius = Scalar::from_integer(BigInt::from(rng.gen_range(1..=(b / 2).max(1))));
        (center, radius)
    });
    // in R^3 and R^4 the points may share a great circle or 2-sphere
    let sphere_dim = if on_sphere > 0 && n > 2 { rng.gen_range(2..=n) } else { n };
    let mut axes: Vec<usize> = rand::seq::index::sample(&mut rng, n, sphere_dim).into_vec();
    axes.sort_unstable();
    if let Some((center, radius)) = &sphere {
        let mut attempts = 0;
        while flagged.len() < on_sphere {
            attempts += 1;
            if attempts > 10_000 {
                return Err(Error::InvalidConfig("could not place distinct sphere points".into()));
            }
            let q = unit_sphere_point(sphere_dim, &mut rng);
            let mut coords = vec![Scalar::zero(); n];
            for (&axis, c) in axes.iter().zip(q.into_coords()) {
                coords[axis] = c;
            }
            let p = center.add(&Point::new(coords).scale(radius));
            if !points.contains(&p) {
                points.push(p);
                flagged.push(true);
            }
        }
    }
    let mut attempts = 0;
    while points.len() < cfg.num_sites {
        attempts += 1;
        if attempts > 10_000 {
            return Err(Error::InvalidConfig("could not place distinct generic points".into()));
        }
        let p = Point::new((0..n).map(|_| small_rational(&mut rng, 2 * b, 2)).collect());
        if !points.contains(&p) {
            points.push(p);
            flagged.push(false);
        }
    }

    let mut order: Vec<usize> = (0..points.len()).collect();
    order.shuffle(&mut rng);
    let sites: Vec<Site> = order
        .iter()
        .enumerate()
        .map(|(i, &j)| Site::new(format!("p{i}"), points[j].clone()))
        .collect();
    let on_sphere_ids: Vec<String> = order
        .iter()
        .enumerate()
        .filter(|&(_, &j)| flagged[j])
        .map(|(i, _)| format!("p{i}"))
        .collect();
    let site_set = SiteSet::new(n, sites)?;

    let s_ids = choose_selection(&site_set, cfg.order, sphere.as_ref().map(|(c, _)| c), &mut rng)?;
    let spec = CellSpec::new(site_set, s_ids)?;
    Ok(GeneratedInstance {
        spec,
        sphere_sq_radius: sphere.as_ref().map(|(_, r)| r * r),
        sphere_center: sphere.map(|(c, _)| c),
        on_sphere: on_sphere_ids,
        sphere_dim,
    })
}

/// Either a uniform `k`-subset, or the `k` sites nearest to an anchor point
/// with random tie-breaking. Anchoring at the sphere centre makes the
/// selection cut through a cospherical tie, which yields lower-dimensional
/// cells.
fn choose_selection(sites: &SiteSet, k: usize, center: Option<&Point>, rng: &mut impl Rng) -> Result<Vec<String>> {
    let ids: Vec<String> = sites.ids().map(str::to_string).collect();
    let mode = rng.gen_range(0..3);
    if mode == 0 {
        let mut picked: Vec<String> = ids.choose_multiple(rng, k).cloned().collect();
        picked.sort();
        return Ok(picked);
    }
    let anchor = match (mode, center) {
        (1, Some(c)) => c.clone(),
        _ => sites.sites()[rng.gen_range(0..sites.len())].point.clone(),
    };
    let mut keyed = Vec::with_capacity(ids.len());
    for site in sites.sites() {
        keyed.push((sq_dist(&anchor, &site.point)?, rng.gen::<u32>(), site.id.clone()));
    }
    keyed.sort();
    let picked: BTreeSet<String> = keyed.into_iter().take(k).map(|(_, _, id)| id).collect();
    Ok(picked.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::frac;

    fn cfg(n: usize, sites: usize, k: usize, fraction: Scalar, seed: u64) -> InstanceConfig {
        InstanceConfig {
            ambient_dim: n,
            num_sites: sites,
            order: k,
            degenerate_fraction: fraction,
            coordinate_bound: 10,
            seed,
        }
    }

    #[test]
    fn fully_cocircular() {
        let g = generate(&cfg(2, 6, 2, frac(1, 1), 7)).unwrap();
        assert_eq!(g.on_sphere.len(), 6);
        let c = g.sphere_center.as_ref().unwrap();
        let r = g.sphere_sq_radius.as_ref().unwrap();
        for site in g.spec.sites().sites() {
            assert_eq!(&sq_dist(c, &site.point).unwrap(), r);
        }
        assert!(g.is_degenerate());
        assert_eq!(g.spec.order(), 2);
    }

    #[test]
    fn cospherical_in_three_and_four_dimensions() {
        for n in [3, 4] {
            let g = generate(&cfg(n, 7, 3, frac(6, 7), 11)).unwrap();
            let c = g.sphere_center.as_ref().unwrap();
            let r = g.sphere_sq_radius.as_ref().unwrap();
            assert_eq!(g.on_sphere.len(), 6);
            for id in &g.on_sphere {
                assert_eq!(&sq_dist(c, &g.spec.sites().get(id).unwrap().point).unwrap(), r);
            }
        }
    }

    #[test]
    fn great_circles_in_space() {
        use crate::exact::affine_rank;
        let mut seen = false;
        for seed in 0..20 {
            let g = generate(&cfg(3, 6, 2, frac(1, 1), seed)).unwrap();
            if g.sphere_dim == 2 {
                seen = true;
                let pts: Vec<Point> = g.spec.sites().points();
                assert_eq!(affine_rank(&pts).unwrap(), 2);
                assert!(g.is_degenerate());
            }
        }
        assert!(seen);
    }

    #[test]
    fn generic_and_deterministic() {
        let a = generate(&cfg(2, 8, 3, frac(0, 1), 5)).unwrap();
        assert!(a.on_sphere.is_empty() && a.sphere_center.is_none());
        let b = generate(&cfg(2, 8, 3, frac(0, 1), 5)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.spec, b.spec);
        let c = generate(&cfg(2, 8, 3, frac(0, 1), 6)).unwrap();
        assert_ne!(a.spec, c.spec);
    }

    #[test]
    fn invalid_configs() {
        assert!(generate(&cfg(1, 4, 1, frac(0, 1), 0)).is_err());
        assert!(generate(&cfg(5, 4, 1, frac(0, 1), 0)).is_err());
        assert!(generate(&cfg(2, 4, 4, frac(0, 1), 0)).is_err());
        assert!(generate(&cfg(2, 4, 0, frac(0, 1), 0)).is_err());
        assert!(generate(&cfg(2, 4, 1, frac(3, 2), 0)).is_err());
    }
}
