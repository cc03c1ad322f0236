//! Minimal neighbour sets.
//!
//! `N ⊆ T \ S` is a minimal set of neighbours when the cell of `S` against
//! `N` alone equals `V_T(S)` and no proper subset of `N` has that property.
//! The sites of `T \ S` that belong to some minimal set are the neighbours.
//! Full-dimensional cells have exactly one minimal set, made of the sites
//! whose bisectors support facets; lower-dimensional cells may have several.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use crate::cell::{cell_halfspaces, CellSpec};
use crate::error::{Error, Result};
use crate::polytope::{includes_h, HPolyhedron};
use crate::relations::SubsetFamily;

/// Largest competitor set the exhaustive search accepts by default.
pub const DEFAULT_NEIGHBOR_BUDGET: usize = 16;

/// Whether the cell of `S` against `n_ids` equals `V_T(S)`.
pub fn cells_equal_reduced(spec: &CellSpec, n_ids: &[String]) -> Result<bool> {
    let others = spec.other_ids();
    for id in n_ids {
        if !others.contains(id) {
            return Err(Error::Precondition(format!("{id:?} is not in T \\ S")));
        }
    }
    let target = cell_halfspaces(spec);
    equal_to_target(spec, &target, n_ids)
}

/// `V_N(S) ⊇ V_T(S)` always holds, so equality only needs the bisectors of
/// the sites left out of `N` to be valid on `V_N(S)`.
fn equal_to_target(spec: &CellSpec, target: &HPolyhedron, n_ids: &[String]) -> Result<bool> {
    let reduced = cell_halfspaces(&spec.reduced(spec.s_ids(), n_ids)?);
    let prov = target.provenance().expect("cell halfspaces carry provenance");
    let missing = target
        .inequalities()
        .iter()
        .zip(prov)
        .filter(|(_, (_, t))| !n_ids.contains(t))
        .map(|(c, _)| c.clone())
        .collect();
    let missing = HPolyhedron::from_inequalities(spec.ambient_dim(), missing)?;
    includes_h(&reduced, &missing)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NeighborReport {
    /// Every inclusion-minimal set, ids in site order, sets sorted.
    pub minimal_sets: Vec<Vec<String>>,
    /// Union of the minimal sets.
    pub neighbor_set: Vec<String>,
    pub unique: bool,
    pub interior_nonempty: bool,
    pub lp_dim: i64,
    /// Pairs `(s, t)` whose bisector supports a facet and coincides with no
    /// other pair's bisector; present for full-dimensional cells.
    pub facet_pairs: Option<Vec<(String, String)>>,
    /// Facet-supporting bisectors shared by several pairs (each pair listed).
    pub coincident_facet_pairs: Vec<(String, String)>,
}

impl NeighborReport {
    /// Sites occurring as the `t` of some facet pair.
    pub fn facet_sites(&self) -> BTreeSet<String> {
        self.facet_pairs
            .iter()
            .flatten()
            .map(|(_, t)| t.clone())
            .collect()
    }
}

struct Search<'a> {
    spec: &'a CellSpec,
    target: HPolyhedron,
    others: Vec<String>,
    memo: HashMap<u32, bool>,
}

impl Search<'_> {
    fn ids(&self, mask: u32) -> Vec<String> {
        self.others
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, id)| id.clone())
            .collect()
    }

    fn good(&mut self, mask: u32) -> Result<bool> {
        if let Some(&g) = self.memo.get(&mask) {
            return Ok(g);
        }
        let g = equal_to_target(self.spec, &self.target, &self.ids(mask))?;
        self.memo.insert(mask, g);
        Ok(g)
    }

    /// Visits every good subset of `mask` reachable by deleting elements of
    /// index `>= start` in increasing order. Good sets are closed upwards, so
    /// each good set is visited exactly once, and a good set is minimal iff
    /// no single deletion keeps it good.
    fn explore(&mut self, mask: u32, start: usize, out: &mut Vec<u32>) -> Result<()> {
        let mut minimal = true;
        for i in 0..self.others.len() {
            let bit = 1u32 << i;
            if mask & bit == 0 {
                continue;
            }
            if self.good(mask & !bit)? {
                minimal = false;
                if i >= start {
                    self.explore(mask & !bit, i + 1, out)?;
                }
            }
        }
        if minimal {
            out.push(mask);
        }
        Ok(())
    }
}

/// Exhaustive enumeration of the minimal neighbour sets with the default
/// budget.
pub fn all_minimal_neighbor_sets(spec: &CellSpec) -> Result<NeighborReport> {
    all_minimal_neighbor_sets_with_budget(spec, DEFAULT_NEIGHBOR_BUDGET)
}

pub fn all_minimal_neighbor_sets_with_budget(spec: &CellSpec, budget: usize) -> Result<NeighborReport> {
    let others = spec.other_ids();
    let limit = budget.min(31);
    if others.len() > limit {
        return Err(Error::BudgetExceeded {
            candidates: others.len(),
            limit,
        });
    }
    let target = cell_halfspaces(spec);
    let lp_dim = target.dim()?;
    let n = spec.ambient_dim();
    let mut search = Search {
        spec,
        target: target.clone(),
        others: others.clone(),
        memo: HashMap::new(),
    };
    let full = if others.is_empty() { 0 } else { u32::MAX >> (32 - others.len()) };
    let mut masks = Vec::new();
    search.explore(full, 0, &mut masks)?;

    let mut minimal_sets: Vec<Vec<String>> = masks.iter().map(|&m| search.ids(m)).collect();
    minimal_sets.sort();
    let union: BTreeSet<&String> = minimal_sets.iter().flatten().collect();
    let neighbor_set = others.iter().filter(|id| union.contains(id)).cloned().collect();

    let interior_nonempty = lp_dim == n as i64;
    let (facet_pairs, coincident_facet_pairs) = if interior_nonempty {
        let (single, shared) = facet_supporting_pairs(&target)?;
        (Some(single), shared)
    } else {
        (None, Vec::new())
    };
    Ok(NeighborReport {
        unique: minimal_sets.len() == 1,
        minimal_sets,
        neighbor_set,
        interior_nonempty,
        lp_dim,
        facet_pairs,
        coincident_facet_pairs,
    })
}

/// Groups the bisectors into classes of coincident halfspaces and keeps the
/// classes whose hyperplane meets the cell in dimension `dim - 1`. Returns
/// the pairs of singleton classes and of shared ones separately.
#[allow(clippy::type_complexity)]
fn facet_supporting_pairs(h: &HPolyhedron) -> Result<(Vec<(String, String)>, Vec<(String, String)>)> {
    let full_dim = h.dim()?;
    let prov = h.provenance().expect("cell halfspaces carry provenance");
    let mut classes: Vec<(crate::lp::LinearConstraint, Vec<usize>)> = Vec::new();
    for (i, c) in h.inequalities().iter().enumerate() {
        let key = c.canonical();
        match classes.iter_mut().find(|(k, _)| *k == key) {
            Some((_, members)) => members.push(i),
            None => classes.push((key, vec![i])),
        }
    }
    let (mut single, mut shared) = (Vec::new(), Vec::new());
    for (key, members) in classes {
        if h.with_constraint(key.tightened())?.dim()? != full_dim - 1 {
            continue;
        }
        let target = if members.len() == 1 { &mut single } else { &mut shared };
        target.extend(members.iter().map(|&i| prov[i].clone()));
    }
    single.sort();
    shared.sort();
    Ok((single, shared))
}

/// Whether the bisector of `(s, t)` meets the cell in dimension `n - 1`.
fn supports_facet(spec: &CellSpec, h: &HPolyhedron, s: &str, t: &str) -> Result<bool> {
    let n = spec.ambient_dim() as i64;
    let prov = h.provenance().expect("cell halfspaces carry provenance");
    for (c, (ps, pt)) in h.inequalities().iter().zip(prov) {
        if ps == s && pt == t {
            return Ok(h.with_constraint(c.tightened())?.dim()? == n - 1);
        }
    }
    Ok(false)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum UniqueMinimal {
    Confirmed,
    /// The cell has empty interior.
    NotApplicable,
    Violated { reason: String },
}

/// For a full-dimensional cell: exactly one minimal set, each of its sites
/// supports a facet, and it equals the set of facet-pair sites.
pub fn verify_unique_minimal(spec: &CellSpec) -> Result<UniqueMinimal> {
    if !spec.is_proper() {
        return Err(Error::Precondition("S must be a proper subset of T".into()));
    }
    verify_unique_minimal_from(spec, &all_minimal_neighbor_sets(spec)?)
}

/// As [`verify_unique_minimal`], reusing a report of the same cell.
pub fn verify_unique_minimal_from(spec: &CellSpec, report: &NeighborReport) -> Result<UniqueMinimal> {
    if !report.interior_nonempty {
        return Ok(UniqueMinimal::NotApplicable);
    }
    if !report.unique {
        return Ok(UniqueMinimal::Violated {
            reason: format!("{} minimal sets", report.minimal_sets.len()),
        });
    }
    let h = cell_halfspaces(spec);
    for t in &report.minimal_sets[0] {
        let mut facet = false;
        for s in spec.s_ids() {
            if supports_facet(spec, &h, s, t)? {
                facet = true;
                break;
            }
        }
        if !facet {
            return Ok(UniqueMinimal::Violated {
                reason: format!("neighbour {t:?} supports no facet"),
            });
        }
    }
    let minimal: BTreeSet<String> = report.minimal_sets[0].iter().cloned().collect();
    if minimal != report.facet_sites() {
        return Ok(UniqueMinimal::Violated {
            reason: format!(
                "minimal set {:?} differs from facet sites {:?}",
                minimal,
                report.facet_sites()
            ),
        });
    }
    Ok(UniqueMinimal::Confirmed)
}

/// One link `A ⊆ B` of a neighbour chain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NeighborLink {
    pub from_order: usize,
    pub to_order: usize,
    pub left: Vec<String>,
    pub right: Vec<String>,
    /// Sites of `left` missing from `right`.
    pub missing: Vec<String>,
}

impl NeighborLink {
    pub fn holds(&self) -> bool {
        self.missing.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NeighborChainReport {
    pub applicable: bool,
    /// `N_T(S) ⊆ ⋃_{|S'|=K-1} N(S' against T \ S) ⊆ ... ⊆ ⋃_{|S'|=1} ...`.
    pub reduced_links: Vec<NeighborLink>,
    /// `N_T(S) ⊆ ⋃_{|S'|=K-1} N_T(S') ⊆ ... ⊆ ⋃_{|S'|=1} N_T(S')`.
    pub full_links: Vec<NeighborLink>,
    /// The same chain with each union taken only over the `S'` whose cell
    /// `V_T(S')` has nonempty interior.
    pub full_interior_links: Vec<NeighborLink>,
}

impl NeighborChainReport {
    pub fn reduced_holds(&self) -> bool {
        self.reduced_links.iter().all(NeighborLink::holds)
    }

    pub fn full_holds(&self) -> bool {
        self.full_links.iter().all(NeighborLink::holds)
    }

    /// Whether the first link `N_T(S) ⊆ ⋃_{|S'|=K-1} N_T(S')` holds.
    pub fn full_first_link_holds(&self) -> bool {
        self.full_links.first().is_none_or(NeighborLink::holds)
    }

    pub fn full_interior_holds(&self) -> bool {
        self.full_interior_links.iter().all(NeighborLink::holds)
    }

    pub fn holds(&self) -> bool {
        self.reduced_holds() && self.full_holds()
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Lower {
    Reduced,
    Full,
    FullInterior,
}

type LowerCache = BTreeMap<Vec<String>, NeighborReport>;

fn union_over(spec: &CellSpec, k: usize, mode: Lower, cache: &mut LowerCache) -> Result<BTreeSet<String>> {
    let others = spec.other_ids();
    let mut out = BTreeSet::new();
    for sub in SubsetFamily::k_subsets(spec.s_ids(), k)?.members() {
        if mode == Lower::Reduced {
            out.extend(all_minimal_neighbor_sets(&spec.reduced(sub, &others)?)?.neighbor_set);
            continue;
        }
        if !cache.contains_key(sub) {
            let report = all_minimal_neighbor_sets(&spec.with_selection(sub.iter().cloned())?)?;
            cache.insert(sub.clone(), report);
        }
        let report = &cache[sub];
        if mode == Lower::FullInterior && !report.interior_nonempty {
            continue;
        }
        out.extend(report.neighbor_set.iter().cloned());
    }
    Ok(out)
}

fn chain(spec: &CellSpec, top: &BTreeSet<String>, mode: Lower, cache: &mut LowerCache) -> Result<Vec<NeighborLink>> {
    let mut links = Vec::new();
    let mut left = top.clone();
    for from in (2..=spec.order()).rev() {
        let right = union_over(spec, from - 1, mode, cache)?;
        links.push(NeighborLink {
            from_order: from,
            to_order: from - 1,
            missing: left.difference(&right).cloned().collect(),
            left: left.into_iter().collect(),
            right: right.iter().cloned().collect(),
        });
        left = right;
    }
    Ok(links)
}

/// Checks the neighbour chains link by link; not applicable when the cell
/// has empty interior.
pub fn verify_neighbor_chains(spec: &CellSpec) -> Result<NeighborChainReport> {
    if !spec.is_proper() {
        return Err(Error::Precondition("S must be a proper subset of T".into()));
    }
    verify_neighbor_chains_from(spec, &all_minimal_neighbor_sets(spec)?)
}

/// As [`verify_neighbor_chains`], reusing a report of the same cell.
pub fn verify_neighbor_chains_from(spec: &CellSpec, report: &NeighborReport) -> Result<NeighborChainReport> {
    if !report.interior_nonempty {
        return Ok(NeighborChainReport {
            applicable: false,
            reduced_links: Vec::new(),
            full_links: Vec::new(),
            full_interior_links: Vec::new(),
        });
    }
    let top: BTreeSet<String> = report.neighbor_set.iter().cloned().collect();
    let mut cache = LowerCache::new();
    Ok(NeighborChainReport {
        applicable: true,
        reduced_links: chain(spec, &top, Lower::Reduced, &mut cache)?,
        full_links: chain(spec, &top, Lower::Full, &mut cache)?,
        full_interior_links: chain(spec, &top, Lower::FullInterior, &mut cache)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{frac, Point, Site, SiteSet};

    fn ids(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    /// S = {(1,1)} against the other three square corners.
    fn non_neighbour() -> CellSpec {
        let sites = SiteSet::new(
            2,
            vec![
                Site::new("s", Point::from_ints(&[1, 1])),
                Site::new("a", Point::from_ints(&[-1, 1])),
                Site::new("b", Point::from_ints(&[-1, -1])),
                Site::new("c", Point::from_ints(&[1, -1])),
            ],
        )
        .unwrap();
        CellSpec::new(sites, ["s"]).unwrap()
    }

    /// Two antipodal sites with three competitors on the same circle.
    fn ambiguous() -> CellSpec {
        let sites = SiteSet::new(
            2,
            vec![
                Site::new("s1", Point::from_ints(&[1, 0])),
                Site::new("s2", Point::from_ints(&[-1, 0])),
                Site::new("up", Point::from_ints(&[0, 1])),
                Site::new("down", Point::from_ints(&[0, -1])),
                Site::new("q", Point::new(vec![frac(3, 5), frac(4, 5)])),
            ],
        )
        .unwrap();
        CellSpec::new(sites, ["s1", "s2"]).unwrap()
    }

    #[test]
    fn reduced_equality_examples() {
        let s = non_neighbour();
        assert!(cells_equal_reduced(&s, &ids(&["a", "c"])).unwrap());
        assert!(!cells_equal_reduced(&s, &ids(&["b"])).unwrap());
        assert!(cells_equal_reduced(&s, &ids(&["a", "b", "c"])).unwrap());
        assert!(cells_equal_reduced(&s, &ids(&["s"])).is_err());
    }

    #[test]
    fn non_neighbour_example() {
        let r = all_minimal_neighbor_sets(&non_neighbour()).unwrap();
        assert_eq!(r.minimal_sets, vec![ids(&["a", "c"])]);
        assert_eq!(r.neighbor_set, ids(&["a", "c"]));
        assert!(r.unique && r.interior_nonempty);
        assert_eq!(r.facet_pairs, Some(vec![("s".into(), "a".into()), ("s".into(), "c".into())]));
        assert_eq!(verify_unique_minimal(&non_neighbour()).unwrap(), UniqueMinimal::Confirmed);
    }

    #[test]
    fn ambiguous_cocircular_example() {
        let r = all_minimal_neighbor_sets(&ambiguous()).unwrap();
        assert_eq!(r.lp_dim, 0);
        assert!(!r.unique);
        assert!(r.minimal_sets.contains(&ids(&["up", "down"])));
        assert!(r.minimal_sets.contains(&ids(&["down", "q"])));
        for set in &r.minimal_sets {
            assert!(cells_equal_reduced(&ambiguous(), set).unwrap());
            for drop in set {
                let smaller: Vec<String> = set.iter().filter(|x| *x != drop).cloned().collect();
                assert!(!cells_equal_reduced(&ambiguous(), &smaller).unwrap());
            }
        }
        assert_eq!(verify_unique_minimal(&ambiguous()).unwrap(), UniqueMinimal::NotApplicable);
        assert!(!verify_neighbor_chains(&ambiguous()).unwrap().applicable);
    }

    #[test]
    fn single_competitor() {
        let sites = SiteSet::from_int_coords(2, &[&[0, 0], &[4, 0]]).unwrap();
        let s = CellSpec::new(sites, ["p0"]).unwrap();
        let r = all_minimal_neighbor_sets(&s).unwrap();
        assert_eq!(r.minimal_sets, vec![ids(&["p1"])]);
        let chains = verify_neighbor_chains(&s).unwrap();
        assert!(chains.applicable && chains.reduced_links.is_empty() && chains.holds());
    }

    #[test]
    fn budget_guard() {
        let coords: Vec<Vec<i64>> = (0..6).map(|i| vec![i, i * i]).collect();
        let refs: Vec<&[i64]> = coords.iter().map(|c| c.as_slice()).collect();
        let s = CellSpec::new(SiteSet::from_int_coords(2, &refs).unwrap(), ["p0"]).unwrap();
        assert_eq!(
            all_minimal_neighbor_sets_with_budget(&s, 4),
            Err(Error::BudgetExceeded { candidates: 5, limit: 4 })
        );
    }

    #[test]
    fn chains_on_a_full_dimensional_pair_cell() {
        let sites = SiteSet::from_int_coords(2, &[&[0, 0], &[2, 0], &[1, 3], &[1, -3], &[5, 1]]).unwrap();
        let s = CellSpec::new(sites, ["p0", "p1"]).unwrap();
        let r = verify_neighbor_chains(&s).unwrap();
        assert!(r.applicable);
        assert_eq!(r.reduced_links.len(), 1);
        assert!(r.reduced_holds(), "{r:?}");
    }
}
