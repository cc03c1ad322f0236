//! Exact linear programming over the rationals.
//!
//! A dense two-phase tableau simplex with Bland's pivoting rule. Variables
//! are free (split internally into positive and negative parts), so callers
//! state problems directly as `a · x <= b` / `a · x = b` over R^n.
//!
//! On top of [`solve`] sit the two queries the polyhedral code needs:
//! [`implicit_equalities`] (which inequalities are tight on the whole
//! feasible set) and [`relint_point`] (a point in the relative interior).

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Result};
use crate::exact::{format_scalar, scalar_serde, Point, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Relation {
    LessEq,
    Eq,
}

/// `normal · x <= rhs` or `normal · x = rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LinearConstraint {
    pub normal: Point,
    #[serde(with = "scalar_serde")]
    pub rhs: Scalar,
    pub relation: Relation,
}

impl fmt::Display for LinearConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = match self.relation {
            Relation::LessEq => "<=",
            Relation::Eq => "=",
        };
        write!(f, "{} . x {op} {}", self.normal, format_scalar(&self.rhs))
    }
}

impl LinearConstraint {
    pub fn le(normal: Point, rhs: Scalar) -> Self {
        LinearConstraint {
            normal,
            rhs,
            relation: Relation::LessEq,
        }
    }

    pub fn eq(normal: Point, rhs: Scalar) -> Self {
        LinearConstraint {
            normal,
            rhs,
            relation: Relation::Eq,
        }
    }

    pub fn dim(&self) -> usize {
        self.normal.dim()
    }

    pub fn is_equality(&self) -> bool {
        self.relation == Relation::Eq
    }

    /// `rhs - normal · x`; zero on the bounding hyperplane.
    pub fn slack(&self, x: &Point) -> Scalar {
        &self.rhs - self.normal.dot(x)
    }

    pub fn is_satisfied_by(&self, x: &Point) -> bool {
        let s = self.slack(x);
        match self.relation {
            Relation::LessEq => !s.is_negative(),
            Relation::Eq => s.is_zero(),
        }
    }

    /// The same constraint with `<=` replaced by `=`.
    pub fn tightened(&self) -> Self {
        LinearConstraint::eq(self.normal.clone(), self.rhs.clone())
    }

    /// Scale-invariant form used to detect coincident constraints: the
    /// normal is rescaled so its first nonzero entry has absolute value one.
    pub fn canonical(&self) -> LinearConstraint {
        let Some(lead) = self.normal.coords().iter().find(|c| !c.is_zero()) else {
            return self.clone();
        };
        let mut s = num_traits::abs(lead.clone()).recip();
        if self.relation == Relation::Eq && lead.is_negative() {
            s = -s;
        }
        LinearConstraint {
            normal: self.normal.scale(&s),
            rhs: &self.rhs * &s,
            relation: self.relation,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sense {
    Max,
    Min,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpOutcome {
    pub status: LpStatus,
    pub point: Option<Point>,
    pub value: Option<Scalar>,
}

impl LpOutcome {
    fn infeasible() -> Self {
        LpOutcome {
            status: LpStatus::Infeasible,
            point: None,
            value: None,
        }
    }

    fn unbounded() -> Self {
        LpOutcome {
            status: LpStatus::Unbounded,
            point: None,
            value: None,
        }
    }
}

/// Relative-interior query result.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Relint {
    Empty,
    Point(Point),
}

impl Relint {
    pub fn point(&self) -> Option<&Point> {
        match self {
            Relint::Point(p) => Some(p),
            Relint::Empty => None,
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, Relint::Empty)
    }
}

fn check_system(dim: usize, constraints: &[LinearConstraint]) -> Result<()> {
    constraints.iter().try_for_each(|c| check_dim(dim, c.dim()))
}

/// Optimizes `objective · x` over `{x in R^dim : constraints}`.
pub fn solve(
    dim: usize,
    constraints: &[LinearConstraint],
    objective: &[Scalar],
    sense: Sense,
) -> Result<LpOutcome> {
    check_system(dim, constraints)?;
    check_dim(dim, objective.len())?;
    let mut tableau = match Tableau::phase_one(dim, constraints) {
        Some(t) => t,
        None => return Ok(LpOutcome::infeasible()),
    };
    let cost: Vec<Scalar> = match sense {
        Sense::Min => objective.to_vec(),
        Sense::Max => objective.iter().map(|c| -c).collect(),
    };
    if !tableau.phase_two(&cost) {
        return Ok(LpOutcome::unbounded());
    }
    let x = tableau.primal_point();
    let value = x.dot(&Point::new(objective.to_vec()));
    Ok(LpOutcome {
        status: LpStatus::Optimal,
        point: Some(x),
        value: Some(value),
    })
}

/// Any point of the feasible set, or `None` when it is empty.
pub fn feasible_point(dim: usize, constraints: &[LinearConstraint]) -> Result<Option<Point>> {
    check_system(dim, constraints)?;
    Ok(Tableau::phase_one(dim, constraints).map(|t| t.primal_point()))
}

/// Affine-hull data of a feasible system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HullAnalysis {
    /// Indices of constraints that hold with equality on the whole set
    /// (declared equalities included).
    pub implicit: BTreeSet<usize>,
    /// A point with zero slack exactly on `implicit` and positive slack on
    /// every other inequality.
    pub relint: Point,
}

/// Determines the implicit equalities of a system and a relative-interior
/// point; `None` when the system is infeasible.
///
/// One LP per inequality not already known to be slack: minimize its
/// left-hand side with the extra bound `a · x >= b - 1`, so the optimum exists
/// and is `b` exactly when the inequality is tight everywhere. Every optimum
/// that is strictly slack becomes a witness; the centroid of the witnesses
/// has positive slack on every non-implicit inequality.
pub fn analyze(dim: usize, constraints: &[LinearConstraint]) -> Result<Option<HullAnalysis>> {
    check_system(dim, constraints)?;
    let Some(x0) = Tableau::phase_one(dim, constraints).map(|t| t.primal_point()) else {
        return Ok(None);
    };
    let mut slack_seen = vec![false; constraints.len()];
    let mark = |x: &Point, seen: &mut [bool]| {
        for (c, s) in constraints.iter().zip(seen.iter_mut()) {
            if !c.is_equality() && c.slack(x).is_positive() {
                *s = true;
            }
        }
    };
    mark(&x0, &mut slack_seen);
    let mut witnesses = vec![x0];
    let mut implicit = BTreeSet::new();
    for (i, c) in constraints.iter().enumerate() {
        if c.is_equality() {
            implicit.insert(i);
            continue;
        }
        if slack_seen[i] {
            continue;
        }
        let mut system = constraints.to_vec();
        system.push(LinearConstraint::le(c.normal.neg(), Scalar::one() - &c.rhs));
        let out = solve(dim, &system, c.normal.coords(), Sense::Min)?;
        let (Some(x), Some(v)) = (out.point, out.value) else {
            unreachable!("bounded feasible LP must have an optimum");
        };
        if v == c.rhs {
            implicit.insert(i);
        } else {
            mark(&x, &mut slack_seen);
            witnesses.push(x);
        }
    }
    let relint = Point::centroid(&witnesses).expect("at least one witness");
    Ok(Some(HullAnalysis { implicit, relint }))
}

/// Indices `i` whose maximum slack over the feasible set is zero; `None`
/// signals an empty polyhedron.
pub fn implicit_equalities(
    dim: usize,
    constraints: &[LinearConstraint],
) -> Result<Option<BTreeSet<usize>>> {
    Ok(analyze(dim, constraints)?.map(|a| a.implicit))
}

pub fn relint_point(dim: usize, constraints: &[LinearConstraint]) -> Result<Relint> {
    Ok(match analyze(dim, constraints)? {
        Some(a) => Relint::Point(a.relint),
        None => Relint::Empty,
    })
}

/// Dense simplex tableau over the standard form `A y = b, y >= 0`.
///
/// Column layout: `x+ (n) | x- (n) | slacks | artificials`, the right-hand
/// side is stored as the last entry of each row.
struct Tableau {
    dim: usize,
    rows: Vec<Vec<Scalar>>,
    basis: Vec<usize>,
    /// Number of structural + slack columns (artificials excluded).
    real_cols: usize,
}

impl Tableau {
    /// Builds the tableau and drives it to a basic feasible solution; `None`
    /// if the system is infeasible.
    fn phase_one(dim: usize, constraints: &[LinearConstraint]) -> Option<Tableau> {
        let n_slack = constraints.iter().filter(|c| !c.is_equality()).count();
        let real_cols = 2 * dim + n_slack;

        let mut rows = Vec::with_capacity(constraints.len());
        let mut basis = Vec::with_capacity(constraints.len());
        let mut needs_artificial = Vec::new();
        let mut slack_col = 2 * dim;
        for c in constraints {
            let mut row = vec![Scalar::zero(); real_cols];
            for (j, a) in c.normal.coords().iter().enumerate() {
                row[j] = a.clone();
                row[dim + j] = -a;
            }
            let mut rhs = c.rhs.clone();
            let slack = (!c.is_equality()).then(|| {
                row[slack_col] = Scalar::one();
                slack_col += 1;
                slack_col - 1
            });
            if rhs.is_negative() {
                for v in row.iter_mut() {
                    *v = -&*v;
                }
                rhs = -rhs;
            }
            match slack {
                Some(s) if row[s].is_positive() => basis.push(s),
                _ => {
                    needs_artificial.push(rows.len());
                    basis.push(usize::MAX);
                }
            }
            row.push(rhs);
            rows.push(row);
        }

        let n_art = needs_artificial.len();
        let total = real_cols + n_art;
        for row in rows.iter_mut() {
            let rhs = row.pop().unwrap();
            row.resize(total, Scalar::zero());
            row.push(rhs);
        }
        for (k, &r) in needs_artificial.iter().enumerate() {
            rows[r][real_cols + k] = Scalar::one();
            basis[r] = real_cols + k;
        }

        let mut t = Tableau {
            dim,
            rows,
            basis,
            real_cols,
        };
        if n_art > 0 {
            let mut cost = vec![Scalar::zero(); total];
            for c in cost.iter_mut().skip(real_cols) {
                *c = Scalar::one();
            }
            let mut obj = t.objective_row(&cost);
            let bounded = t.run(&mut obj);
            debug_assert!(bounded, "phase one is bounded below by zero");
            if !obj.last().unwrap().is_zero() {
                return None;
            }
            t.expel_artificials();
        }
        Some(t)
    }

    fn width(&self) -> usize {
        self.rows.first().map_or(self.real_cols, |r| r.len() - 1)
    }

    /// Reduced-cost row for `cost`; the last entry holds minus the objective.
    fn objective_row(&self, cost: &[Scalar]) -> Vec<Scalar> {
        let mut obj = cost.to_vec();
        obj.resize(self.width(), Scalar::zero());
        obj.push(Scalar::zero());
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            let cb = obj[b].clone();
            if !cb.is_zero() {
                for (o, v) in obj.iter_mut().zip(row) {
                    *o -= &cb * v;
                }
            }
        }
        obj
    }

    /// Bland's rule iterations; returns `false` on unboundedness.
    fn run(&mut self, obj: &mut [Scalar]) -> bool {
        let width = self.width();
        loop {
            let Some(enter) = (0..width).find(|&j| obj[j].is_negative()) else {
                return true;
            };
            let mut leave: Option<(usize, Scalar)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[enter].is_positive() {
                    continue;
                }
                let ratio = &row[width] / &row[enter];
                let better = match &leave {
                    None => true,
                    Some((r, best)) => {
                        ratio < *best || (ratio == *best && self.basis[i] < self.basis[*r])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let Some((r, _)) = leave else {
                return false;
            };
            self.pivot(r, enter, obj);
        }
    }

    fn pivot(&mut self, r: usize, col: usize, obj: &mut [Scalar]) {
        let inv = self.rows[r][col].recip();
        for v in self.rows[r].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = std::mem::take(&mut self.rows[r]);
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &f * p;
                }
            }
        }
        if !obj[col].is_zero() {
            let f = obj[col].clone();
            for (v, p) in obj.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &f * p;
                }
            }
        }
        self.rows[r] = pivot_row;
        self.basis[r] = col;
    }

    /// Pivots zero-valued artificials out of the basis, drops rows that turn
    /// out to be redundant, then deletes the artificial columns.
    fn expel_artificials(&mut self) {
        let mut r = 0;
        while r < self.rows.len() {
            if self.basis[r] < self.real_cols {
                r += 1;
                continue;
            }
            match (0..self.real_cols).find(|&j| !self.rows[r][j].is_zero()) {
                Some(j) => {
                    let mut scratch = vec![Scalar::zero(); self.width() + 1];
                    self.pivot(r, j, &mut scratch);
                    r += 1;
                }
                None => {
                    self.rows.remove(r);
                    self.basis.remove(r);
                }
            }
        }
        let keep = self.real_cols;
        for row in self.rows.iter_mut() {
            let rhs = row.pop().unwrap();
            row.truncate(keep);
            row.push(rhs);
        }
    }

    /// Minimizes `cost · x` from the current feasible basis; `false` when
    /// unbounded.
    fn phase_two(&mut self, cost: &[Scalar]) -> bool {
        let mut full = vec![Scalar::zero(); self.real_cols];
        for (j, c) in cost.iter().enumerate() {
            full[j] = c.clone();
            full[self.dim + j] = -c;
        }
        let mut obj = self.objective_row(&full);
        self.run(&mut obj)
    }

    fn primal_point(&self) -> Point {
        let width = self.width();
        let mut y = vec![Scalar::zero(); width];
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            if b < width {
                y[b] = row[width].clone();
            }
        }
        Point::new((0..self.dim).map(|j| &y[j] - &y[self.dim + j]).collect())
    }
}

/// Maximum of `normal · x` over the system; `None` if unbounded or infeasible.
pub(crate) fn max_value(
    dim: usize,
    constraints: &[LinearConstraint],
    normal: &Point,
) -> Result<(LpStatus, Option<(Scalar, Point)>)> {
    let out = solve(dim, constraints, normal.coords(), Sense::Max)?;
    Ok(match (out.status, out.value, out.point) {
        (LpStatus::Optimal, Some(v), Some(p)) => (LpStatus::Optimal, Some((v, p))),
        (status, _, _) => (status, None),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{frac, int};

    fn le(normal: &[i64], rhs: i64) -> LinearConstraint {
        LinearConstraint::le(Point::from_ints(normal), int(rhs))
    }

    #[test]
    fn one_dimensional_examples() {
        let out = solve(1, &[le(&[1], 2)], &[int(1)], Sense::Max).unwrap();
        assert_eq!(out.status, LpStatus::Optimal);
        assert_eq!(out.value, Some(int(2)));
        assert_eq!(out.point, Some(Point::from_ints(&[2])));

        let out = solve(1, &[le(&[1], 0), le(&[-1], -1)], &[int(1)], Sense::Max).unwrap();
        assert_eq!(out.status, LpStatus::Infeasible);
        assert!(out.point.is_none());

        let out = solve(1, &[le(&[-1], 0)], &[int(1)], Sense::Max).unwrap();
        assert_eq!(out.status, LpStatus::Unbounded);
        assert!(out.point.is_none() && out.value.is_none());
    }

    #[test]
    fn rational_optimum() {
        // max x + y  s.t. 2x + y <= 2, x + 3y <= 3, x, y >= 0  ->  (3/5, 4/5)
        let cons = [le(&[2, 1], 2), le(&[1, 3], 3), le(&[-1, 0], 0), le(&[0, -1], 0)];
        let out = solve(2, &cons, &[int(1), int(1)], Sense::Max).unwrap();
        assert_eq!(out.value, Some(frac(7, 5)));
        assert_eq!(out.point, Some(Point::new(vec![frac(3, 5), frac(4, 5)])));
        let out = solve(2, &cons, &[int(1), int(1)], Sense::Min).unwrap();
        assert_eq!(out.value, Some(int(0)));
    }

    #[test]
    fn equalities_and_redundant_rows() {
        let cons = [
            LinearConstraint::eq(Point::from_ints(&[1, 1]), int(1)),
            LinearConstraint::eq(Point::from_ints(&[2, 2]), int(2)),
            le(&[-1, 0], 0),
            le(&[0, -1], 0),
        ];
        let out = solve(2, &cons, &[int(1), int(0)], Sense::Max).unwrap();
        assert_eq!(out.value, Some(int(1)));
        let bad = [
            LinearConstraint::eq(Point::from_ints(&[1, 1]), int(1)),
            LinearConstraint::eq(Point::from_ints(&[1, 1]), int(2)),
        ];
        assert_eq!(solve(2, &bad, &[int(0), int(0)], Sense::Max).unwrap().status, LpStatus::Infeasible);
    }

    #[test]
    fn trivial_rows() {
        assert_eq!(feasible_point(2, &[le(&[0, 0], 1)]).unwrap(), Some(Point::origin(2)));
        assert_eq!(feasible_point(2, &[le(&[0, 0], -1)]).unwrap(), None);
        assert_eq!(
            solve(2, &[], &[int(0), int(0)], Sense::Max).unwrap().value,
            Some(int(0))
        );
        assert_eq!(solve(2, &[], &[int(1), int(0)], Sense::Max).unwrap().status, LpStatus::Unbounded);
    }

    #[test]
    fn dimension_checks() {
        assert!(solve(2, &[le(&[1], 0)], &[int(1), int(1)], Sense::Max).is_err());
        assert!(solve(1, &[le(&[1], 0)], &[int(1), int(1)], Sense::Max).is_err());
    }

    #[test]
    fn implicit_equality_examples() {
        let both = implicit_equalities(1, &[le(&[1], 0), le(&[-1], 0)]).unwrap().unwrap();
        assert_eq!(both, BTreeSet::from([0, 1]));
        let square = [le(&[1, 0], 1), le(&[-1, 0], 0), le(&[0, 1], 1), le(&[0, -1], 0)];
        assert!(implicit_equalities(2, &square).unwrap().unwrap().is_empty());
        assert_eq!(implicit_equalities(1, &[le(&[1], 0), le(&[-1], -1)]).unwrap(), None);
    }

    #[test]
    fn worked_cell_implicit_equalities() {
        // y-x, y+x, -y-x, -y+x, y-z, -y-z, -z  (all <= 0)
        let cons = [
            le(&[-1, 1, 0], 0),
            le(&[1, 1, 0], 0),
            le(&[-1, -1, 0], 0),
            le(&[1, -1, 0], 0),
            le(&[0, 1, -1], 0),
            le(&[0, -1, -1], 0),
            le(&[0, 0, -1], 0),
        ];
        let a = analyze(3, &cons).unwrap().unwrap();
        assert_eq!(a.implicit, BTreeSet::from([0, 1, 2, 3]));
        let p = &a.relint;
        assert!(p[0].is_zero() && p[1].is_zero() && p[2].is_positive());
    }

    #[test]
    fn relint_examples() {
        let square = [le(&[1, 0], 1), le(&[-1, 0], 0), le(&[0, 1], 1), le(&[0, -1], 0)];
        let Relint::Point(p) = relint_point(2, &square).unwrap() else { panic!("nonempty") };
        assert!(square.iter().all(|c| c.slack(&p).is_positive()));
        assert_eq!(
            relint_point(1, &[le(&[1], 0), le(&[-1], 0)]).unwrap(),
            Relint::Point(Point::from_ints(&[0]))
        );
        assert_eq!(relint_point(1, &[le(&[1], 0), le(&[-1], -1)]).unwrap(), Relint::Empty);
    }

    #[test]
    fn canonical_form_identifies_scaled_constraints() {
        let a = le(&[2, -4], 6).canonical();
        let b = le(&[1, -2], 3).canonical();
        assert_eq!(a, b);
        assert_ne!(le(&[-1, 2], -3).canonical(), b);
    }
}
