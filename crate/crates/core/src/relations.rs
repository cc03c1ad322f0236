//! Relations between cells of different orders.
//!
//! A cell is the intersection of the cells of any covering family of subsets
//! of `S`, each taken against `T \ S` only. Taken against the full site set
//! instead, the lower-order cells give an upper bound:
//! `V_T(S) ⊆ ⋃_{|S'|=K-1} V_T(S') ⊆ ... ⊆ ⋃_{|S'|=1} V_T(S')`.

use std::collections::BTreeSet;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cell::{cell_halfspaces, member, CellSpec};
use crate::error::{Error, Result};
use crate::exact::{sq_dist, Point, Scalar};
use crate::lp::{self, LinearConstraint, Relint, Sense};
use crate::polytope::HPolyhedron;

/// A family of subsets of a base set of site ids.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubsetFamily {
    base: Vec<String>,
    members: Vec<Vec<String>>,
}

impl SubsetFamily {
    /// Members must be nonempty subsets of `base` whose union is `base`.
    pub fn new(base: Vec<String>, members: Vec<Vec<String>>) -> Result<Self> {
        let base_set: BTreeSet<&str> = base.iter().map(String::as_str).collect();
        let mut covered = BTreeSet::new();
        for m in &members {
            if m.is_empty() {
                return Err(Error::Precondition("family members must be nonempty".into()));
            }
            for id in m {
                if !base_set.contains(id.as_str()) {
                    return Err(Error::Precondition(format!("{id:?} is not in the base set")));
                }
                covered.insert(id.as_str());
            }
        }
        if covered != base_set {
            return Err(Error::Precondition("family does not cover the base set".into()));
        }
        Ok(SubsetFamily { base, members })
    }

    /// All `k`-subsets of `base`, ids sorted and subsets in lexicographic
    /// order.
    pub fn k_subsets(base: &[String], k: usize) -> Result<Self> {
        if k == 0 || k > base.len() {
            return Err(Error::Precondition(format!("k = {k} outside 1..={}", base.len())));
        }
        let sorted: Vec<String> = base.iter().cloned().sorted().collect();
        let members = sorted.iter().cloned().combinations(k).collect();
        Ok(SubsetFamily {
            base: sorted,
            members,
        })
    }

    pub fn base(&self) -> &[String] {
        &self.base
    }

    pub fn members(&self) -> &[Vec<String>] {
        &self.members
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Holds,
    /// A point on which the two sides disagree.
    Violated { witness: Point },
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }
}

/// Exact set equality of two H-polyhedra, with a separating point otherwise.
fn compare(p: &HPolyhedron, q: &HPolyhedron) -> Result<Verdict> {
    if let Some(w) = p.inclusion_witness(q)? {
        return Ok(Verdict::Violated { witness: w });
    }
    if let Some(w) = q.inclusion_witness(p)? {
        return Ok(Verdict::Violated { witness: w });
    }
    Ok(Verdict::Holds)
}

fn intersection(dim: usize, cells: impl IntoIterator<Item = HPolyhedron>) -> Result<HPolyhedron> {
    cells
        .into_iter()
        .try_fold(HPolyhedron::whole_space(dim), |acc, h| acc.intersect(&h))
}

/// Checks `V_T(S) = ⋂_{U ∈ fam} V(U against T \ S)` exactly.
pub fn verify_cover_decomposition(spec: &CellSpec, fam: &SubsetFamily) -> Result<Verdict> {
    let base: BTreeSet<&str> = fam.base.iter().map(String::as_str).collect();
    let s: BTreeSet<&str> = spec.s_ids().iter().map(String::as_str).collect();
    if base != s {
        return Err(Error::Precondition("family base differs from S".into()));
    }
    let others = spec.other_ids();
    let parts = fam
        .members
        .iter()
        .map(|u| spec.reduced(u, &others).map(|r| cell_halfspaces(&r)))
        .collect::<Result<Vec<_>>>()?;
    compare(&cell_halfspaces(spec), &intersection(spec.ambient_dim(), parts)?)
}

/// Outcome of the order-`k` decomposition check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrderKReport {
    pub k: usize,
    /// `V_T(S) = ⋂_{|S'|=k} V(S' against T \ S)`.
    pub reduced: Verdict,
    /// `⋂_{|S'|=k} V_T(S') ⊆ V_T(S)`.
    pub full_inclusion: Verdict,
    /// Whether `⋂_{|S'|=k} V_T(S') = V_T(S)`. Recorded, not required: the
    /// full-site-set cells are usually smaller (see the module tests).
    pub full_equal: bool,
}

impl OrderKReport {
    pub fn holds(&self) -> bool {
        self.reduced.holds() && self.full_inclusion.holds()
    }
}

/// Checks the order-`k` decomposition of `V_T(S)` over all `k`-subsets of
/// `S`, against `T \ S` and against the full site set.
pub fn verify_order_k(spec: &CellSpec, k: usize) -> Result<OrderKReport> {
    if !spec.is_proper() {
        return Err(Error::Precondition("S must be a proper subset of T".into()));
    }
    let fam = SubsetFamily::k_subsets(spec.s_ids(), k)?;
    let reduced = verify_cover_decomposition(spec, &fam)?;
    let full_parts = fam
        .members
        .iter()
        .map(|u| spec.with_selection(u.iter().cloned()).map(|r| cell_halfspaces(&r)))
        .collect::<Result<Vec<_>>>()?;
    let full = intersection(spec.ambient_dim(), full_parts)?;
    let cell = cell_halfspaces(spec);
    let full_inclusion = match full.inclusion_witness(&cell)? {
        Some(w) => Verdict::Violated { witness: w },
        None => Verdict::Holds,
    };
    let full_equal = full_inclusion.holds() && cell.inclusion_witness(&full)?.is_none();
    Ok(OrderKReport {
        k,
        reduced,
        full_inclusion,
        full_equal,
    })
}

/// One link `⋃_{|S'|=from} V_T(S') ⊆ ⋃_{|S'|=from-1} V_T(S')`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinkReport {
    pub from_order: usize,
    pub to_order: usize,
    pub points_tested: usize,
    /// Every tested point of the left side lies in some right-hand cell.
    pub covered: bool,
    /// Dropping any farthest `S'`-site from a tested point's cell keeps the
    /// point in the resulting cell.
    pub drop_farthest_ok: bool,
    /// Some right-hand test point lies outside every left-hand cell.
    pub strict_evidence: bool,
    pub failure: Option<Point>,
}

impl LinkReport {
    pub fn holds(&self) -> bool {
        self.covered && self.drop_farthest_ok
    }
}

/// Point-wise certificate of the inclusion chain. Coverage is checked on
/// test points (vertices, a relative-interior point and random points of
/// each cell), not by exact polyhedral subtraction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainReport {
    pub order: usize,
    pub samples_per_cell: usize,
    pub links: Vec<LinkReport>,
}

impl ChainReport {
    pub fn holds(&self) -> bool {
        self.links.iter().all(LinkReport::holds)
    }

    pub fn points_tested(&self) -> usize {
        self.links.iter().map(|l| l.points_tested).sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChainOptions {
    pub samples: usize,
    pub seed: u64,
}

impl Default for ChainOptions {
    fn default() -> Self {
        ChainOptions { samples: 20, seed: 0 }
    }
}

/// Test points of a nonempty cell: its vertices, a relative-interior point
/// and `samples` random points.
///
/// The random points are convex combinations of anchor points of the cell
/// clipped to a box around the relative-interior point: the vertices, the
/// relative-interior point and LP optima of random objectives over the
/// clipped cell. They lie in the cell exactly, whatever its dimension.
pub fn cell_test_points(h: &HPolyhedron, samples: usize, rng: &mut impl Rng) -> Result<Vec<Point>> {
    let Relint::Point(center) = h.relint()? else {
        return Ok(Vec::new());
    };
    let n = h.ambient_dim();
    let mut points = h.vertices();
    points.push(center.clone());

    let reach = points
        .iter()
        .flat_map(|p| p.coords().iter())
        .map(|c| c.abs().ceil())
        .max()
        .unwrap_or_else(|| Scalar::from_integer(BigInt::from(0)))
        + Scalar::from_integer(BigInt::from(2));
    let mut clipped = h.constraints();
    for i in 0..n {
        let mut e = vec![Scalar::from_integer(BigInt::from(0)); n];
        e[i] = Scalar::from_integer(BigInt::from(1));
        let e = Point::new(e);
        clipped.push(LinearConstraint::le(e.clone(), &center[i] + &reach));
        clipped.push(LinearConstraint::le(e.neg(), &reach - &center[i]));
    }
    let mut anchors = points.clone();
    for _ in 0..=n {
        let objective: Vec<Scalar> = (0..n)
            .map(|_| Scalar::from_integer(BigInt::from(rng.gen_range(-3i64..=3))))
            .collect();
        if let Some(x) = lp::solve(n, &clipped, &objective, Sense::Max)?.point {
            if !anchors.contains(&x) {
                anchors.push(x);
            }
        }
    }
    for _ in 0..samples {
        let picks = rng.gen_range(1..=anchors.len().min(3));
        let mut total = Scalar::from_integer(BigInt::from(0));
        let mut acc = Point::origin(n);
        for _ in 0..picks {
            let w = Scalar::from_integer(BigInt::from(rng.gen_range(1i64..=5)));
            let a = &anchors[rng.gen_range(0..anchors.len())];
            acc = acc.add(&a.scale(&w));
            total += w;
        }
        let x = acc.scale(&total.recip());
        debug_assert!(h.contains(&x));
        points.push(x);
    }
    Ok(points)
}

/// Whether dropping every farthest site of `selection` from `x` leaves `x`
/// in the cell of the remaining sites (against the full site set).
fn drop_farthest_holds(spec: &CellSpec, selection: &[String], x: &Point) -> Result<bool> {
    let dists = selection
        .iter()
        .map(|id| sq_dist(x, &spec.sites().get(id).expect("known id").point))
        .collect::<Result<Vec<_>>>()?;
    let far = dists.iter().max().expect("nonempty selection");
    for (id, d) in selection.iter().zip(&dists) {
        if d != far {
            continue;
        }
        let rest: Vec<&String> = selection.iter().filter(|s| *s != id).collect();
        let smaller = spec.with_selection(rest.into_iter().cloned())?;
        if !member(x, &smaller)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Certifies every link of the inclusion chain on test points.
pub fn verify_inclusion_chain(spec: &CellSpec, opts: ChainOptions) -> Result<ChainReport> {
    if !spec.is_proper() {
        return Err(Error::Precondition("S must be a proper subset of T".into()));
    }
    let order = spec.order();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut links = Vec::new();
    if order < 2 {
        return Ok(ChainReport {
            order,
            samples_per_cell: opts.samples,
            links,
        });
    }

    let level = |k: usize| -> Result<Vec<(Vec<String>, CellSpec)>> {
        SubsetFamily::k_subsets(spec.s_ids(), k)?
            .members
            .into_iter()
            .map(|u| {
                let c = spec.with_selection(u.iter().cloned())?;
                Ok((u, c))
            })
            .collect()
    };
    let test_points = |cells: &[(Vec<String>, CellSpec)], rng: &mut ChaCha8Rng| -> Result<Vec<(usize, Point)>> {
        let mut out = Vec::new();
        for (i, (_, c)) in cells.iter().enumerate() {
            for x in cell_test_points(&cell_halfspaces(c), opts.samples, rng)? {
                out.push((i, x));
            }
        }
        Ok(out)
    };

    let mut left = level(order)?;
    let mut left_points = test_points(&left, &mut rng)?;
    for from in (2..=order).rev() {
        let right = level(from - 1)?;
        let right_points = test_points(&right, &mut rng)?;
        let mut link = LinkReport {
            from_order: from,
            to_order: from - 1,
            points_tested: left_points.len(),
            covered: true,
            drop_farthest_ok: true,
            strict_evidence: false,
            failure: None,
        };
        for (i, x) in &left_points {
            let mut inside = false;
            for (_, c) in &right {
                if member(x, c)? {
                    inside = true;
                    break;
                }
            }
            let dropped = drop_farthest_holds(spec, &left[*i].0, x)?;
            if !inside || !dropped {
                link.covered &= inside;
                link.drop_farthest_ok &= dropped;
                link.failure.get_or_insert_with(|| x.clone());
            }
        }
        for (_, y) in &right_points {
            let mut in_left = false;
            for (_, c) in &left {
                if member(y, c)? {
                    in_left = true;
                    break;
                }
            }
            if !in_left {
                link.strict_evidence = true;
                break;
            }
        }
        links.push(link);
        left = right;
        left_points = right_points;
    }
    Ok(ChainReport {
        order,
        samples_per_cell: opts.samples,
        links,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{Site, SiteSet};

    fn worked() -> CellSpec {
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
        )
        .unwrap();
        CellSpec::new(sites, ["s1", "s2", "s3"]).unwrap()
    }

    fn square_diagonal() -> CellSpec {
        let sites = SiteSet::from_int_coords(2, &[&[1, 1], &[-1, 1], &[-1, -1], &[1, -1]]).unwrap();
        CellSpec::new(sites, ["p0", "p2"]).unwrap()
    }

    fn ids(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn family_validation_and_order() {
        let base = ids(&["b", "a", "c"]);
        let fam = SubsetFamily::k_subsets(&base, 2).unwrap();
        assert_eq!(fam.members(), &[ids(&["a", "b"]), ids(&["a", "c"]), ids(&["b", "c"])]);
        assert!(SubsetFamily::k_subsets(&base, 0).is_err());
        assert!(SubsetFamily::k_subsets(&base, 4).is_err());
        assert!(SubsetFamily::new(base.clone(), vec![ids(&["a", "b"])]).is_err());
        assert!(SubsetFamily::new(base.clone(), vec![ids(&["a", "z"]), ids(&["b", "c"])]).is_err());
        assert!(SubsetFamily::new(base, vec![ids(&["a", "b"]), ids(&["c"])]).is_ok());
    }

    #[test]
    fn cover_decomposition_examples() {
        let s = worked();
        let singletons = SubsetFamily::k_subsets(s.s_ids(), 1).unwrap();
        assert!(verify_cover_decomposition(&s, &singletons).unwrap().holds());
        let whole = SubsetFamily::new(s.s_ids().to_vec(), vec![s.s_ids().to_vec()]).unwrap();
        assert!(verify_cover_decomposition(&s, &whole).unwrap().holds());
        let pairs = SubsetFamily::new(s.s_ids().to_vec(), vec![ids(&["s1", "s2"]), ids(&["s2", "s3"])]).unwrap();
        assert!(verify_cover_decomposition(&s, &pairs).unwrap().holds());
        let other_base = SubsetFamily::new(ids(&["s1", "s2"]), vec![ids(&["s1", "s2"])]).unwrap();
        assert!(verify_cover_decomposition(&s, &other_base).is_err());
    }

    #[test]
    fn order_k_examples() {
        let s = worked();
        for k in 1..=3 {
            let r = verify_order_k(&s, k).unwrap();
            assert!(r.holds(), "k = {k}: {r:?}");
        }
        assert!(verify_order_k(&s, 3).unwrap().full_equal);
        let r = verify_order_k(&square_diagonal(), 1).unwrap();
        assert!(r.holds());
        assert!(verify_order_k(&s, 0).is_err());
    }

    #[test]
    fn full_site_set_intersection_is_smaller() {
        // the first-order cells of s1, s2, s3 in the whole site set meet only
        // at the origin, while the order-3 cell is the ray 0 x 0 x R+
        let r = verify_order_k(&worked(), 1).unwrap();
        assert!(!r.full_equal);
        let x = Point::from_ints(&[0, 0, 1]);
        assert!(member(&x, &worked()).unwrap());
        assert!(!member(&x, &worked().with_selection(["s1"]).unwrap()).unwrap());
    }

    #[test]
    fn chain_on_worked_example() {
        let r = verify_inclusion_chain(&worked(), ChainOptions::default()).unwrap();
        assert_eq!(r.links.len(), 2);
        assert!(r.holds(), "{r:?}");
        assert!(r.links.iter().all(|l| l.points_tested >= 21));
    }

    #[test]
    fn chain_trivial_for_order_one() {
        let sites = SiteSet::from_int_coords(2, &[&[0, 0], &[1, 0]]).unwrap();
        let s = CellSpec::new(sites, ["p0"]).unwrap();
        let r = verify_inclusion_chain(&s, ChainOptions::default()).unwrap();
        assert!(r.links.is_empty() && r.holds());
        let all = CellSpec::new(SiteSet::from_int_coords(2, &[&[0, 0], &[1, 0]]).unwrap(), ["p0", "p1"]).unwrap();
        assert!(verify_inclusion_chain(&all, ChainOptions::default()).is_err());
    }

    #[test]
    fn test_points_lie_in_cell() {
        let h = cell_halfspaces(&worked());
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let pts = cell_test_points(&h, 30, &mut rng).unwrap();
        assert_eq!(pts.len(), 32);
        assert_eq!(pts[0], Point::origin(3));
        assert!(pts.iter().all(|p| h.contains(p)));
    }
}
