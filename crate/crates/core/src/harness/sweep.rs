//! Randomised verification sweeps.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::generate::{generate, InstanceConfig};
use super::io::InstanceFile;
use crate::cell::{
    admissible_radius_range, cell_halfspaces, certificate_at, farthest_nonempty, farthest_spec, is_exposing_ball,
    member, BallCertificate, CellSpec, Farthest,
};
use crate::dimension::{predicted_dimension, predicted_dimension_with};
use crate::error::{Error, Result};
use crate::exact::{Ball, Point, Scalar};
use crate::neighbors::{
    all_minimal_neighbor_sets, cells_equal_reduced, verify_neighbor_chains_from, verify_unique_minimal_from, UniqueMinimal,
    DEFAULT_NEIGHBOR_BUDGET,
};
use crate::polytope::VPolytope;
use crate::relations::{cell_test_points, verify_inclusion_chain, verify_order_k, ChainOptions};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Check {
    Dimension,
    Chains,
    Neighbors,
    Farthest,
    Membership,
}

impl Check {
    pub const ALL: [Check; 5] = [
        Check::Dimension,
        Check::Chains,
        Check::Neighbors,
        Check::Farthest,
        Check::Membership,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Dimension => "dimension",
            Check::Chains => "chains",
            Check::Neighbors => "neighbors",
            Check::Farthest => "farthest",
            Check::Membership => "membership",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown check {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepConfig {
    pub ambient_dim: usize,
    pub instances: usize,
    pub seed: u64,
    pub min_sites: usize,
    pub max_sites: usize,
    pub max_order: usize,
    pub coordinate_bound: i64,
    /// Instances whose index modulo 5 is below this are forced degenerate.
    pub degenerate_per_five: usize,
    pub checks: BTreeSet<Check>,
    pub chain_samples: usize,
    pub membership_points: usize,
}

impl SweepConfig {
    /// Defaults sized for exact arithmetic: up to 8 sites in the plane, 7 in
    /// space and 6 in R^4, orders up to 4, two in five instances degenerate.
    pub fn new(ambient_dim: usize, instances: usize, seed: u64) -> Self {
        SweepConfig {
            ambient_dim,
            instances,
            seed,
            min_sites: ambient_dim + 2,
            max_sites: match ambient_dim {
                2 => 8,
                3 => 7,
                _ => 6,
            },
            max_order: 4,
            coordinate_bound: 10,
            degenerate_per_five: 2,
            checks: Check::ALL.into_iter().collect(),
            chain_samples: 20,
            membership_points: 8,
        }
    }

    pub fn with_checks(mut self, checks: impl IntoIterator<Item = Check>) -> Self {
        self.checks = checks.into_iter().collect();
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.min_sites < 2 || self.min_sites > self.max_sites {
            return Err(Error::InvalidConfig(format!(
                "site range {}..={} is empty or too small",
                self.min_sites, self.max_sites
            )));
        }
        if self.max_order == 0 {
            return Err(Error::InvalidConfig("max order must be positive".into()));
        }
        if self.degenerate_per_five > 5 {
            return Err(Error::InvalidConfig("at most 5 degenerate instances per 5".into()));
        }
        Ok(())
    }

    /// Parameters of instance `index`, drawn from its own random stream.
    /// Instances with `index % 5 < degenerate_per_five` put between `n + 2`
    /// and all of their sites on one sphere.
    pub fn instance_config(&self, index: usize) -> InstanceConfig {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(index as u64);
        let n = self.ambient_dim;
        let num_sites = rng.gen_range(self.min_sites..=self.max_sites);
        let order = rng.gen_range(1..=self.max_order.min(num_sites - 1));
        let on_sphere = if index % 5 < self.degenerate_per_five {
            rng.gen_range((n + 2).min(num_sites)..=num_sites)
        } else {
            0
        };
        InstanceConfig {
            ambient_dim: n,
            num_sites,
            order,
            degenerate_fraction: Scalar::new(BigInt::from(on_sphere), BigInt::from(num_sites)),
            coordinate_bound: self.coordinate_bound,
            seed: rng.gen(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub index: usize,
    pub check: Check,
    pub detail: String,
    pub instance: InstanceFile,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Counters {
    pub instances: usize,
    pub degenerate_instances: usize,
    /// Instances by cell dimension, `-1` for empty cells.
    pub cells_by_dim: BTreeMap<i64, usize>,
    pub empty_cells: usize,
    pub codim_one_cells: usize,
    pub dimension_checked: usize,
    pub alternate_balls: usize,
    pub chain_instances: usize,
    pub chain_links: usize,
    pub strict_links: usize,
    pub chain_points: usize,
    pub order_k_checks: usize,
    pub full_order_k_equal: usize,
    pub neighbor_instances: usize,
    pub full_dim_neighbor_instances: usize,
    pub multi_minimal_instances: usize,
    pub neighbor_over_budget: usize,
    /// Full-dimensional instances whose full neighbour chain, taken over all
    /// lower-order cells, breaks at some link.
    pub full_chain_violations: usize,
    pub farthest_sites: usize,
    pub farthest_nonempty: usize,
    pub farthest_empty: usize,
    pub membership_points: usize,
    pub membership_inside: usize,
}

impl Counters {
    fn merge(&mut self, o: &Counters) {
        self.instances += o.instances;
        self.degenerate_instances += o.degenerate_instances;
        for (k, v) in &o.cells_by_dim {
            *self.cells_by_dim.entry(*k).or_default() += v;
        }
        self.empty_cells += o.empty_cells;
        self.codim_one_cells += o.codim_one_cells;
        self.dimension_checked += o.dimension_checked;
        self.alternate_balls += o.alternate_balls;
        self.chain_instances += o.chain_instances;
        self.chain_links += o.chain_links;
        self.strict_links += o.strict_links;
        self.chain_points += o.chain_points;
        self.order_k_checks += o.order_k_checks;
        self.full_order_k_equal += o.full_order_k_equal;
        self.neighbor_instances += o.neighbor_instances;
        self.full_dim_neighbor_instances += o.full_dim_neighbor_instances;
        self.multi_minimal_instances += o.multi_minimal_instances;
        self.neighbor_over_budget += o.neighbor_over_budget;
        self.full_chain_violations += o.full_chain_violations;
        self.farthest_sites += o.farthest_sites;
        self.farthest_nonempty += o.farthest_nonempty;
        self.farthest_empty += o.farthest_empty;
        self.membership_points += o.membership_points;
        self.membership_inside += o.membership_inside;
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub config: SweepConfig,
    pub counters: Counters,
    pub failures: Vec<Failure>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

struct Outcome {
    counters: Counters,
    failures: Vec<(Check, String)>,
}

impl Outcome {
    fn fail(&mut self, check: Check, detail: impl Into<String>) {
        self.failures.push((check, detail.into()));
    }

    /// Records an unexpected error as a failure of `check`.
    fn guard(&mut self, check: Check, r: Result<()>) {
        if let Err(e) = r {
            self.fail(check, format!("error: {e}"));
        }
    }
}

pub fn run_sweep(cfg: &SweepConfig) -> Result<SweepReport> {
    cfg.validate()?;
    let outcomes: Vec<(usize, Option<InstanceFile>, Outcome)> = (0..cfg.instances)
        .into_par_iter()
        .map(|i| run_instance(cfg, i))
        .collect();
    Ok(assemble(cfg, outcomes))
}

fn assemble(cfg: &SweepConfig, outcomes: Vec<(usize, Option<InstanceFile>, Outcome)>) -> SweepReport {
    let mut counters = Counters::default();
    let mut failures = Vec::new();
    for (index, instance, outcome) in outcomes {
        counters.merge(&outcome.counters);
        for (check, detail) in outcome.failures {
            failures.push(Failure {
                index,
                check,
                detail,
                instance: instance.clone().unwrap_or_else(|| InstanceFile {
                    dimension: cfg.ambient_dim,
                    sites: Vec::new(),
                    s: Vec::new(),
                }),
            });
        }
    }
    SweepReport {
        config: cfg.clone(),
        counters,
        failures,
    }
}

fn run_instance(cfg: &SweepConfig, index: usize) -> (usize, Option<InstanceFile>, Outcome) {
    let mut out = Outcome {
        counters: Counters {
            instances: 1,
            ..Counters::default()
        },
        failures: Vec::new(),
    };
    let icfg = cfg.instance_config(index);
    let generated = match generate(&icfg) {
        Ok(g) => g,
        Err(e) => {
            out.fail(Check::Dimension, format!("generation failed: {e}"));
            return (index, None, out);
        }
    };
    let spec = &generated.spec;
    if generated.is_degenerate() {
        out.counters.degenerate_instances += 1;
    }
    check_spec(cfg, spec, icfg.seed, &mut out);
    (index, Some(InstanceFile::from_spec(spec)), out)
}

/// Runs the configured checks on given cell specifications instead of
/// generated ones; `seed` drives the sampling.
pub fn run_on_specs(cfg: &SweepConfig, specs: &[CellSpec]) -> Result<SweepReport> {
    cfg.validate()?;
    let outcomes: Vec<(usize, Option<InstanceFile>, Outcome)> = specs
        .par_iter()
        .enumerate()
        .map(|(i, spec)| {
            let mut out = Outcome {
                counters: Counters {
                    instances: 1,
                    ..Counters::default()
                },
                failures: Vec::new(),
            };
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(i as u64);
            check_spec(cfg, spec, rng.gen(), &mut out);
            (i, Some(InstanceFile::from_spec(spec)), out)
        })
        .collect();
    Ok(assemble(cfg, outcomes))
}

fn check_spec(cfg: &SweepConfig, spec: &CellSpec, seed: u64, out: &mut Outcome) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let dim = match cell_halfspaces(spec).dim() {
        Ok(d) => d,
        Err(e) => {
            out.fail(Check::Dimension, format!("error: {e}"));
            return;
        }
    };
    *out.counters.cells_by_dim.entry(dim).or_default() += 1;
    if dim < 0 {
        out.counters.empty_cells += 1;
    }

    for check in &cfg.checks {
        let r = match check {
            Check::Dimension => check_dimension(spec, dim, &mut rng, out),
            Check::Chains => check_chains(spec, cfg.chain_samples, seed, out),
            Check::Neighbors => check_neighbors(spec, out),
            Check::Farthest => check_farthest(spec, out),
            Check::Membership => check_membership(spec, cfg, &mut rng, out),
        };
        out.guard(*check, r);
    }
}

fn check_dimension(spec: &CellSpec, dim: i64, rng: &mut ChaCha8Rng, out: &mut Outcome) -> Result<()> {
    let n = spec.ambient_dim() as i64;
    out.counters.dimension_checked += 1;
    let report = predicted_dimension(spec)?;
    if report.lp_dim != dim {
        out.fail(Check::Dimension, format!("lp dimension {} vs {dim}", report.lp_dim));
    }
    if dim < 0 {
        return Ok(());
    }
    if !report.agree {
        out.fail(
            Check::Dimension,
            format!("predicted {} but lp {}", report.predicted_dim, report.lp_dim),
        );
    }
    if dim == n - 1 {
        out.counters.codim_one_cells += 1;
        out.fail(Check::Dimension, "nonempty cell of dimension n - 1");
    }

    // other admissible balls: other cell points, and radii inside the range
    let h = cell_halfspaces(spec);
    let points = cell_test_points(&h, 2, rng)?;
    for x in points.iter().take(4) {
        let Some(range) = admissible_radius_range(x, spec)? else {
            out.fail(Check::Dimension, format!("cell point {x} has no admissible radius"));
            continue;
        };
        let mut radii = vec![range.sq_lo.clone()];
        match &range.sq_hi {
            Some(hi) if *hi > range.sq_lo => radii.push((&range.sq_lo + hi) / Scalar::from_integer(BigInt::from(2))),
            None => radii.push(&range.sq_lo + Scalar::one()),
            _ => {}
        }
        for r in radii {
            let cert = BallCertificate::from_ball(Ball::new(x.clone(), r)?, spec)?;
            let alt = predicted_dimension_with(spec, cert)?;
            out.counters.alternate_balls += 1;
            if alt.predicted_dim != dim {
                out.fail(
                    Check::Dimension,
                    format!("ball at {x} predicts {} instead of {dim}", alt.predicted_dim),
                );
            }
        }
    }
    Ok(())
}

fn check_chains(spec: &CellSpec, samples: usize, seed: u64, out: &mut Outcome) -> Result<()> {
    out.counters.chain_instances += 1;
    for k in 1..=spec.order() {
        let r = verify_order_k(spec, k)?;
        out.counters.order_k_checks += 1;
        if r.full_equal {
            out.counters.full_order_k_equal += 1;
        }
        if !r.holds() {
            out.fail(Check::Chains, format!("order-{k} decomposition: {r:?}"));
        }
    }
    let chain = verify_inclusion_chain(spec, ChainOptions { samples, seed })?;
    out.counters.chain_links += chain.links.len();
    out.counters.chain_points += chain.points_tested();
    out.counters.strict_links += chain.links.iter().filter(|l| l.strict_evidence).count();
    for link in chain.links.iter().filter(|l| !l.holds()) {
        out.fail(Check::Chains, format!("inclusion chain link: {link:?}"));
    }
    Ok(())
}

fn check_neighbors(spec: &CellSpec, out: &mut Outcome) -> Result<()> {
    if spec.others().len() > DEFAULT_NEIGHBOR_BUDGET {
        out.counters.neighbor_over_budget += 1;
        return Ok(());
    }
    out.counters.neighbor_instances += 1;
    let report = all_minimal_neighbor_sets(spec)?;
    if report.minimal_sets.len() > 1 {
        out.counters.multi_minimal_instances += 1;
    }
    for set in &report.minimal_sets {
        if !cells_equal_reduced(spec, set)? {
            out.fail(Check::Neighbors, format!("{set:?} does not reproduce the cell"));
        }
        for drop in set {
            let smaller: Vec<String> = set.iter().filter(|x| *x != drop).cloned().collect();
            if cells_equal_reduced(spec, &smaller)? {
                out.fail(Check::Neighbors, format!("{set:?} is not minimal: {drop:?} is redundant"));
            }
        }
    }
    if !report.interior_nonempty {
        return Ok(());
    }
    out.counters.full_dim_neighbor_instances += 1;
    match verify_unique_minimal_from(spec, &report)? {
        UniqueMinimal::Confirmed => {}
        other => out.fail(Check::Neighbors, format!("unique minimal set: {other:?}")),
    }
    let chains = verify_neighbor_chains_from(spec, &report)?;
    if !chains.reduced_holds() {
        out.fail(Check::Neighbors, format!("reduced neighbour chain: {:?}", chains.reduced_links));
    }
    if !chains.full_first_link_holds() {
        out.fail(Check::Neighbors, format!("full neighbour chain, first link: {:?}", chains.full_links[0]));
    }
    if !chains.full_interior_holds() {
        out.fail(
            Check::Neighbors,
            format!("full neighbour chain over full-dimensional cells: {:?}", chains.full_interior_links),
        );
    }
    // later links over all lower cells are known to fail; counted, not failed
    if !chains.full_holds() {
        out.counters.full_chain_violations += 1;
    }
    Ok(())
}

fn check_farthest(spec: &CellSpec, out: &mut Outcome) -> Result<()> {
    let sites = spec.sites();
    for site in sites.sites() {
        out.counters.farthest_sites += 1;
        let rest: Vec<Point> = sites
            .sites()
            .iter()
            .filter(|s| s.id != site.id)
            .map(|s| s.point.clone())
            .collect();
        let extreme = !VPolytope::new(sites.ambient_dim(), rest)?.contains(&site.point)?;
        match farthest_nonempty(sites, &site.id)? {
            Farthest::Nonempty { exposed_ball, .. } => {
                out.counters.farthest_nonempty += 1;
                if !is_exposing_ball(sites, &site.id, &exposed_ball)? {
                    out.fail(Check::Farthest, format!("{}: exposing ball fails validation", site.id));
                }
                if !extreme {
                    out.fail(Check::Farthest, format!("{}: nonempty but not a hull vertex", site.id));
                }
            }
            Farthest::Empty => {
                out.counters.farthest_empty += 1;
                if !cell_halfspaces(&farthest_spec(sites, &site.id)?).is_empty()? {
                    out.fail(Check::Farthest, format!("{}: reported empty but feasible", site.id));
                }
                if extreme {
                    out.fail(Check::Farthest, format!("{}: empty but a hull vertex", site.id));
                }
            }
        }
    }
    Ok(())
}

fn check_membership(spec: &CellSpec, cfg: &SweepConfig, rng: &mut ChaCha8Rng, out: &mut Outcome) -> Result<()> {
    let n = spec.ambient_dim();
    let h = cell_halfspaces(spec);
    let b = cfg.coordinate_bound;
    let mut points: Vec<Point> = (0..cfg.membership_points)
        .map(|_| {
            Point::new(
                (0..n)
                    .map(|_| Scalar::new(BigInt::from(rng.gen_range(-4 * b..=4 * b)), BigInt::from(rng.gen_range(1..=4))))
                    .collect(),
            )
        })
        .collect();
    points.extend(cell_test_points(&h, 0, rng)?);
    for x in points {
        out.counters.membership_points += 1;
        let by_distance = member(&x, spec)?;
        let by_halfspaces = h.contains(&x);
        let cert = certificate_at(&x, spec)?;
        if by_distance != by_halfspaces || by_distance != cert.is_some() {
            out.fail(
                Check::Membership,
                format!("{x}: distance {by_distance}, halfspaces {by_halfspaces}, ball {}", cert.is_some()),
            );
            continue;
        }
        if by_distance {
            out.counters.membership_inside += 1;
        }
        if let Some(c) = &cert {
            if let Err(e) = c.validate(spec) {
                out.fail(Check::Membership, format!("{x}: certificate invalid: {e}"));
            }
        }
        radius_range_probe(&x, spec, out)?;
    }
    Ok(())
}

/// Balls at the ends and middle of the admissible range certify the cell;
/// balls just outside it do not.
fn radius_range_probe(x: &Point, spec: &CellSpec, out: &mut Outcome) -> Result<()> {
    let Some(range) = admissible_radius_range(x, spec)? else {
        return Ok(());
    };
    let half = Scalar::new(BigInt::from(1), BigInt::from(2));
    let mut inside = vec![range.sq_lo.clone()];
    let mut outside = Vec::new();
    if range.sq_lo > Scalar::zero() {
        outside.push((&range.sq_lo * &half).max(&range.sq_lo - &half));
    }
    match &range.sq_hi {
        Some(hi) => {
            inside.push(hi.clone());
            inside.push((&range.sq_lo + hi) * &half);
            outside.push(hi + &half);
        }
        None => inside.push(&range.sq_lo + Scalar::one()),
    }
    for r in inside {
        if BallCertificate::from_ball(Ball::new(x.clone(), r.clone())?, spec).is_err() {
            out.fail(Check::Membership, format!("{x}: radius² {r} inside the range fails"));
        }
    }
    for r in outside {
        if BallCertificate::from_ball(Ball::new(x.clone(), r.clone())?, spec).is_ok() {
            out.fail(Check::Membership, format!("{x}: radius² {r} outside the range passes"));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn check_names_round_trip() {
        for c in Check::ALL {
            assert_eq!(c.name().parse::<Check>().unwrap(), c);
        }
        assert!("bogus".parse::<Check>().is_err());
    }

    #[test]
    fn instance_configs_are_valid_and_stable() {
        let cfg = SweepConfig::new(2, 50, 9);
        for i in 0..50 {
            let a = cfg.instance_config(i);
            a.validate().unwrap();
            assert_eq!(a, cfg.instance_config(i));
        }
        assert_ne!(cfg.instance_config(0), cfg.instance_config(1));
    }

    #[test]
    fn small_sweep_passes() {
        let cfg = SweepConfig::new(2, 10, 1);
        let r = run_sweep(&cfg).unwrap();
        assert!(r.passed(), "{:#?}", r.failures);
        assert_eq!(r.counters.instances, 10);
        assert_eq!(r.counters.cells_by_dim.values().sum::<usize>(), 10);
        assert_eq!(r.counters.degenerate_instances, 4);
    }
}
