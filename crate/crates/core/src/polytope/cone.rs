use num_traits::{One, Zero};
use serde::Serialize;

use super::HPolyhedron;
use crate::error::{check_dim, Error, Result};
use crate::exact::{Point, Scalar};
use crate::linalg;
use crate::lp::{self, LinearConstraint};

/// Finitely generated convex cone `{sum_i λ_i g_i : λ >= 0}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PolyCone {
    ambient_dim: usize,
    generators: Vec<Point>,
}

impl PolyCone {
    pub fn new(ambient_dim: usize, generators: Vec<Point>) -> Result<Self> {
        for g in &generators {
            check_dim(ambient_dim, g.dim())?;
            if g.is_zero() {
                return Err(Error::Precondition("cone generators must be nonzero".into()));
            }
        }
        Ok(PolyCone {
            ambient_dim,
            generators,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn generators(&self) -> &[Point] {
        &self.generators
    }

    /// Whether `z` is a nonnegative combination of the generators.
    pub fn contains(&self, z: &Point) -> Result<bool> {
        check_dim(self.ambient_dim, z.dim())?;
        let m = self.generators.len();
        if m == 0 {
            return Ok(z.is_zero());
        }
        let mut system: Vec<LinearConstraint> = (0..m)
            .map(|j| {
                let mut e = vec![Scalar::zero(); m];
                e[j] = -Scalar::one();
                LinearConstraint::le(Point::new(e), Scalar::zero())
            })
            .collect();
        for i in 0..self.ambient_dim {
            let row = self.generators.iter().map(|g| g[i].clone()).collect();
            system.push(LinearConstraint::eq(Point::new(row), z[i].clone()));
        }
        Ok(lp::feasible_point(m, &system)?.is_some())
    }

    /// Generators `g` with `-g` also in the cone. They span the lineality
    /// space `K ∩ -K`: a generator lies in it exactly when it carries positive
    /// weight in some representation of zero.
    pub fn lineality_generators(&self) -> Result<Vec<Point>> {
        let mut out = Vec::new();
        for g in &self.generators {
            if self.contains(&g.neg())? {
                out.push(g.clone());
            }
        }
        Ok(out)
    }

    pub fn lineality_dim(&self) -> Result<usize> {
        let rows: Vec<Vec<Scalar>> = self
            .lineality_generators()?
            .into_iter()
            .map(Point::into_coords)
            .collect();
        Ok(linalg::rank(&rows))
    }

    /// The polar cone `{y : <g, y> <= 0 for every generator}`.
    pub fn polar(&self) -> HPolyhedron {
        let inequalities = self
            .generators
            .iter()
            .map(|g| LinearConstraint::le(g.clone(), Scalar::zero()))
            .collect();
        HPolyhedron::from_inequalities(self.ambient_dim, inequalities)
            .expect("generators share the ambient dimension")
    }

    /// Dimension of the polar, computed from its H-representation.
    pub fn polar_dim(&self) -> Result<usize> {
        let d = self.polar().dim()?;
        Ok(usize::try_from(d).expect("a polar cone contains the origin"))
    }
}

pub fn lineality_dim(k: &PolyCone) -> Result<usize> {
    k.lineality_dim()
}

pub fn polar_dim(k: &PolyCone) -> Result<usize> {
    k.polar_dim()
}
