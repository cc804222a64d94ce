//! Exact rational linear programming and the geometric predicates built on
//! it.
//!
//! Every solve returns a certificate that is re-checked against the original
//! problem data before it is handed back: a dual solution for optima, a
//! Farkas multiplier vector for infeasible systems, and a feasible point plus
//! an improving ray for unbounded problems.

mod predicates;
mod simplex;

use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{format_rational, rational_serde, QVector, Rational};
use crate::error::{check_dim, Error, Result};

pub use predicates::{
    conv_membership, recession_nontrivial, segment_hits_hull, strict_separation, ConvexWeights,
    SegmentHit, Separation,
};

/// Relation of a linear constraint.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sense {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "=")]
    Eq,
    #[serde(rename = ">=")]
    Ge,
}

impl fmt::Display for Sense {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str(match self {
            Sense::Le => "<=",
            Sense::Eq => "=",
            Sense::Ge => ">=",
        })
    }
}

/// A single linear constraint `<a, x> (sense) rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Halfspace {
    pub a: QVector,
    pub sense: Sense,
    #[serde(with = "rational_serde")]
    pub rhs: Rational,
}

impl Halfspace {
    pub fn new(a: QVector, sense: Sense, rhs: Rational) -> Self {
        Halfspace { a, sense, rhs }
    }

    pub fn le(a: QVector, rhs: Rational) -> Self {
        Self::new(a, Sense::Le, rhs)
    }

    pub fn ge(a: QVector, rhs: Rational) -> Self {
        Self::new(a, Sense::Ge, rhs)
    }

    pub fn eq(a: QVector, rhs: Rational) -> Self {
        Self::new(a, Sense::Eq, rhs)
    }

    pub fn dim(&self) -> usize {
        self.a.dim()
    }

    fn holds_value(&self, lhs: &Rational) -> bool {
        match self.sense {
            Sense::Le => lhs <= &self.rhs,
            Sense::Eq => lhs == &self.rhs,
            Sense::Ge => lhs >= &self.rhs,
        }
    }

    pub fn satisfied_by(&self, x: &[Rational]) -> bool {
        self.holds_value(&self.a.dot(x))
    }

    pub fn satisfied_by_int(&self, x: &[i64]) -> bool {
        self.holds_value(&self.a.dot_int(x))
    }

    fn is_degenerate(&self) -> bool {
        self.a.is_zero() && !(self.sense == Sense::Eq && self.rhs.is_zero())
    }
}

impl fmt::Display for Halfspace {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.a.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if mag != Rational::from_integer(1.into()) {
                write!(f, "{}*", format_rational(&mag))?;
            }
            write!(f, "x{}", i + 1)?;
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " {} {}", self.sense, format_rational(&self.rhs))
    }
}

/// A polyhedron given by finitely many linear constraints.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HPolyhedron {
    dim: usize,
    constraints: Vec<Halfspace>,
}

impl HPolyhedron {
    /// Validates that every row has length `dim` and rejects rows with an
    /// all-zero left-hand side (other than `0 = 0`).
    pub fn new(dim: usize, constraints: Vec<Halfspace>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidParameter("polyhedron dimension must be positive".into()));
        }
        for (i, h) in constraints.iter().enumerate() {
            if h.dim() != dim {
                return Err(Error::Malformed(format!(
                    "constraints[{i}].a: length {} does not match dim {dim}",
                    h.dim()
                )));
            }
            if h.is_degenerate() {
                return Err(Error::Malformed(format!("constraints[{i}]: zero left-hand side")));
            }
        }
        Ok(HPolyhedron { dim, constraints })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn constraints(&self) -> &[Halfspace] {
        &self.constraints
    }

    pub fn len(&self) -> usize {
        self.constraints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.constraints.is_empty()
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.constraints.iter().all(|h| h.satisfied_by(x))
    }

    pub fn contains_int(&self, x: &[i64]) -> bool {
        self.constraints.iter().all(|h| h.satisfied_by_int(x))
    }

    /// Same polyhedron description without row `i`.
    pub fn without_row(&self, i: usize) -> HPolyhedron {
        let mut constraints = self.constraints.clone();
        constraints.remove(i);
        HPolyhedron { dim: self.dim, constraints }
    }

    /// Appends the rows of `other`.
    pub fn intersect(&self, other: &HPolyhedron) -> Result<HPolyhedron> {
        check_dim(self.dim, other.dim)?;
        let mut constraints = self.constraints.clone();
        constraints.extend(other.constraints.iter().cloned());
        Ok(HPolyhedron { dim: self.dim, constraints })
    }

    pub fn push(&mut self, h: Halfspace) -> Result<()> {
        let mut rows = std::mem::take(&mut self.constraints);
        rows.push(h);
        *self = HPolyhedron::new(self.dim, rows)?;
        Ok(())
    }
}

impl<'de> Deserialize<'de> for HPolyhedron {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Doc {
            dim: usize,
            constraints: Vec<Halfspace>,
        }
        let doc = Doc::deserialize(d)?;
        HPolyhedron::new(doc.dim, doc.constraints).map_err(serde::de::Error::custom)
    }
}

/// Result of an exact LP solve, carrying its certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    /// `farkas` holds one multiplier per constraint proving infeasibility.
    Infeasible { farkas: QVector },
    /// `dual` holds one multiplier per constraint proving optimality.
    Optimal { value: Rational, point: QVector, dual: QVector },
    /// `point` is feasible and `ray` is an improving recession direction.
    Unbounded { point: QVector, ray: QVector },
}

impl LpOutcome {
    pub fn is_optimal(&self) -> bool {
        matches!(self, LpOutcome::Optimal { .. })
    }

    pub fn value(&self) -> Option<&Rational> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }

    pub fn point(&self) -> Option<&QVector> {
        match self {
            LpOutcome::Optimal { point, .. } | LpOutcome::Unbounded { point, .. } => Some(point),
            LpOutcome::Infeasible { .. } => None,
        }
    }

    pub fn status(&self) -> &'static str {
        match self {
            LpOutcome::Infeasible { .. } => "infeasible",
            LpOutcome::Optimal { .. } => "optimal",
            LpOutcome::Unbounded { .. } => "unbounded",
        }
    }
}

/// A linear program over variables that are either free or nonnegative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearProgram {
    pub objective: QVector,
    pub maximize: bool,
    pub constraints: Vec<Halfspace>,
    pub nonneg: Vec<bool>,
}

impl LinearProgram {
    /// All variables free.
    pub fn free(objective: QVector, maximize: bool, constraints: Vec<Halfspace>) -> Self {
        let n = objective.dim();
        LinearProgram { objective, maximize, constraints, nonneg: vec![false; n] }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.dim()
    }

    pub fn solve(&self) -> LpOutcome {
        for h in &self.constraints {
            assert_eq!(h.dim(), self.num_vars(), "constraint length differs from objective length");
        }
        assert_eq!(self.nonneg.len(), self.num_vars());
        let outcome = simplex::solve(self);
        if let Err(msg) = self.check(&outcome) {
            panic!("simplex produced an invalid certificate: {msg}");
        }
        outcome
    }

    fn primal_feasible(&self, x: &[Rational]) -> std::result::Result<(), String> {
        for (i, h) in self.constraints.iter().enumerate() {
            if !h.satisfied_by(x) {
                return Err(format!("row {i} violated by the returned point"));
            }
        }
        for (j, &nn) in self.nonneg.iter().enumerate() {
            if nn && x[j].is_negative() {
                return Err(format!("variable {j} negative"));
            }
        }
        Ok(())
    }

    fn multiplier_signs(&self, y: &[Rational]) -> std::result::Result<(), String> {
        if y.len() != self.constraints.len() {
            return Err("multiplier vector has the wrong length".into());
        }
        for (i, (h, yi)) in self.constraints.iter().zip(y).enumerate() {
            let ok = match h.sense {
                Sense::Le => !yi.is_negative(),
                Sense::Ge => !yi.is_positive(),
                Sense::Eq => true,
            };
            if !ok {
                return Err(format!("multiplier {i} has the wrong sign"));
            }
        }
        Ok(())
    }

    /// `A^T y` as a vector over the variables.
    fn transpose_times(&self, y: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.num_vars()];
        for (h, yi) in self.constraints.iter().zip(y) {
            if yi.is_zero() {
                continue;
            }
            for (o, a) in out.iter_mut().zip(h.a.iter()) {
                if !a.is_zero() {
                    *o += a * yi;
                }
            }
        }
        out
    }

    fn rhs_dot(&self, y: &[Rational]) -> Rational {
        self.constraints
            .iter()
            .zip(y)
            .filter(|(_, yi)| !yi.is_zero())
            .fold(Rational::zero(), |acc, (h, yi)| acc + &h.rhs * yi)
    }

    /// Re-checks a certificate against the problem data using exact
    /// arithmetic only.
    pub fn check(&self, outcome: &LpOutcome) -> std::result::Result<(), String> {
        let sign = if self.maximize { Rational::from_integer(1.into()) } else { Rational::from_integer((-1).into()) };
        match outcome {
            LpOutcome::Optimal { value, point, dual } => {
                self.primal_feasible(point)?;
                if &self.objective.dot(point) != value {
                    return Err("objective at point differs from reported value".into());
                }
                self.multiplier_signs(dual)?;
                let aty = self.transpose_times(dual);
                for (j, (lhs, c)) in aty.iter().zip(self.objective.iter()).enumerate() {
                    let target = c * &sign;
                    let ok = if self.nonneg[j] { *lhs >= target } else { *lhs == target };
                    if !ok {
                        return Err(format!("dual constraint for variable {j} violated"));
                    }
                }
                if self.rhs_dot(dual) != value * &sign {
                    return Err("dual objective differs from primal value".into());
                }
                Ok(())
            }
            LpOutcome::Infeasible { farkas } => {
                self.multiplier_signs(farkas)?;
                let aty = self.transpose_times(farkas);
                for (j, lhs) in aty.iter().enumerate() {
                    let ok = if self.nonneg[j] { !lhs.is_negative() } else { lhs.is_zero() };
                    if !ok {
                        return Err(format!("Farkas combination nonzero on variable {j}"));
                    }
                }
                if !self.rhs_dot(farkas).is_negative() {
                    return Err("Farkas right-hand side is not negative".into());
                }
                Ok(())
            }
            LpOutcome::Unbounded { point, ray } => {
                self.primal_feasible(point)?;
                for (i, h) in self.constraints.iter().enumerate() {
                    let v = h.a.dot(ray);
                    let ok = match h.sense {
                        Sense::Le => !v.is_positive(),
                        Sense::Ge => !v.is_negative(),
                        Sense::Eq => v.is_zero(),
                    };
                    if !ok {
                        return Err(format!("ray leaves row {i}"));
                    }
                }
                for (j, &nn) in self.nonneg.iter().enumerate() {
                    if nn && ray[j].is_negative() {
                        return Err(format!("ray negative on variable {j}"));
                    }
                }
                if !(self.objective.dot(ray) * &sign).is_positive() {
                    return Err("ray does not improve the objective".into());
                }
                Ok(())
            }
        }
    }
}

/// Optimizes `objective` over `p` exactly.
pub fn solve_lp(objective: &QVector, maximize: bool, p: &HPolyhedron) -> Result<LpOutcome> {
    check_dim(p.dim(), objective.dim())?;
    Ok(LinearProgram::free(objective.clone(), maximize, p.constraints.clone()).solve())
}
