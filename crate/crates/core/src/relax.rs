//! Explicit relaxations, lattice enumeration and the relaxation check.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::{int, QVector, Rational};
use crate::error::{check_dim, Error, Result};
use crate::families::EdgeIndexer;
use crate::lattice::{enumerate_lattice_in_box, LatticeBox};
use crate::limits::Limits;
use crate::lp::{conv_membership, recession_nontrivial, solve_lp, HPolyhedron, Halfspace, LinearProgram, LpOutcome, Sense};
use crate::points::PointSet;

/// Integer-scaled cube relaxation with `d + 1` rows whose lattice points are
/// exactly `{0,1}^d`.
pub fn build_cube_relaxation(d: usize) -> Result<HPolyhedron> {
    if d == 0 {
        return Err(Error::InvalidParameter("cube relaxation needs d >= 1".into()));
    }
    let pow = |e: usize| Rational::from_integer(BigInt::one() << e);
    let mut rows = Vec::with_capacity(d + 1);
    for k in 0..d {
        let mut a = QVector::zeros(d);
        a[k] = pow(d);
        for i in k + 1..d {
            a[i] = -pow(d - i - 1);
        }
        rows.push(Halfspace::le(a, pow(d)));
    }
    let mut a = QVector::zeros(d);
    a[0] = pow(d);
    for i in 1..d {
        a[i] = pow(d - i - 1);
    }
    rows.push(Halfspace::ge(a, Rational::zero()));
    HPolyhedron::new(d, rows)
}

fn box_rows(dim: usize) -> Vec<Halfspace> {
    (0..dim)
        .flat_map(|e| {
            [Halfspace::ge(QVector::unit(dim, e), Rational::zero()), Halfspace::le(QVector::unit(dim, e), Rational::one())]
        })
        .collect()
}

/// Sum of the edge variables leaving `mask` (both directions when undirected).
fn cut_vector(ix: &EdgeIndexer, mask: u64) -> QVector {
    let mut a = QVector::zeros(ix.dim());
    for k in 0..ix.dim() {
        let (i, j) = ix.pair(k);
        let (si, sj) = (mask >> i & 1 == 1, mask >> j & 1 == 1);
        let leaves = if ix.directed() { si && !sj } else { si != sj };
        if leaves {
            a[k] = Rational::one();
        }
    }
    a
}

/// Cut masks: all nonempty proper subsets, or one per complementary pair
/// (those containing node 1) when undirected.
fn cut_masks(n: usize, directed: bool) -> impl Iterator<Item = u64> {
    let full = (1u64 << n) - 1;
    (1..full).filter(move |m| directed || m & 1 == 1)
}

fn check_cuts(n: usize, limits: &Limits) -> Result<()> {
    if n >= 64 {
        return Err(Error::TooLarge { what: "cut rows".into(), count: u128::MAX, cap: limits.max_subsets });
    }
    limits.check_subsets("cut rows", 1u128 << n)
}

/// Degree equalities plus cut inequalities for hamiltonian cycles; box rows
/// come first, then degree rows, then cuts by increasing subset mask.
pub fn build_subtour_relaxation(n: usize, directed: bool, limits: &Limits) -> Result<HPolyhedron> {
    if n < 3 {
        return Err(Error::InvalidParameter("subtour relaxation needs n >= 3".into()));
    }
    check_cuts(n, limits)?;
    let ix = EdgeIndexer::new(n, directed)?;
    let mut rows = box_rows(ix.dim());
    if directed {
        for v in 0..n {
            let mut out = QVector::zeros(ix.dim());
            let mut inc = QVector::zeros(ix.dim());
            for k in 0..ix.dim() {
                let (i, j) = ix.pair(k);
                if i == v {
                    out[k] = Rational::one();
                }
                if j == v {
                    inc[k] = Rational::one();
                }
            }
            rows.push(Halfspace::eq(out, Rational::one()));
            rows.push(Halfspace::eq(inc, Rational::one()));
        }
    } else {
        for v in 0..n {
            rows.push(Halfspace::eq(cut_vector(&ix, 1 << v), int(2)));
        }
    }
    let rhs = if directed { int(1) } else { int(2) };
    rows.extend(cut_masks(n, directed).map(|m| Halfspace::ge(cut_vector(&ix, m), rhs.clone())));
    HPolyhedron::new(ix.dim(), rows)
}

/// Box rows plus `x(δ(S)) >= 1` for each cut, one per complementary pair.
pub fn build_conn_cut_relaxation(n: usize, limits: &Limits) -> Result<HPolyhedron> {
    if n < 2 {
        return Err(Error::InvalidParameter("cut relaxation needs n >= 2".into()));
    }
    check_cuts(n, limits)?;
    let ix = EdgeIndexer::new(n, false)?;
    let mut rows = box_rows(ix.dim());
    rows.extend(cut_masks(n, false).map(|m| Halfspace::ge(cut_vector(&ix, m), Rational::one())));
    HPolyhedron::new(ix.dim(), rows)
}

/// Subset-sum description of the permutahedron: the total-sum equality, one
/// row per nonempty proper subset, and nonnegativity.
pub fn build_rado_permutahedron(n: usize, limits: &Limits) -> Result<HPolyhedron> {
    if n < 2 {
        return Err(Error::InvalidParameter("permutahedron needs n >= 2".into()));
    }
    check_cuts(n, limits)?;
    let tri = |k: usize| int((k * (k + 1) / 2) as i64);
    let mut rows = vec![Halfspace::eq(QVector(vec![Rational::one(); n]), tri(n))];
    for m in 1..(1u64 << n) - 1 {
        let mut a = QVector::zeros(n);
        for i in 0..n {
            if m >> i & 1 == 1 {
                a[i] = Rational::one();
            }
        }
        rows.push(Halfspace::ge(a, tri(m.count_ones() as usize)));
    }
    rows.extend((0..n).map(|i| Halfspace::ge(QVector::unit(n, i), Rational::zero())));
    HPolyhedron::new(n, rows)
}

/// The integer box spanned by the exact per-coordinate optima over `p`.
///
/// If some coordinate range contains no integer the returned box is empty.
pub fn bounding_box(p: &HPolyhedron) -> Result<LatticeBox> {
    let d = p.dim();
    let mut lower = Vec::with_capacity(d);
    let mut upper = Vec::with_capacity(d);
    for i in 0..d {
        for upward in [false, true] {
            match solve_lp(&QVector::unit(d, i), upward, p)? {
                LpOutcome::Infeasible { .. } => return Err(Error::Infeasible),
                LpOutcome::Unbounded { .. } => return Err(Error::UnboundedCoordinate { coordinate: i, upward }),
                LpOutcome::Optimal { value, .. } => {
                    let r = if upward { value.floor() } else { value.ceil() };
                    let v = r.to_integer().try_into().map_err(|_| {
                        Error::InvalidParameter(format!("bound on x{} does not fit in 64 bits", i + 1))
                    })?;
                    if upward {
                        upper.push(v);
                    } else {
                        lower.push(v);
                    }
                }
            }
        }
    }
    Ok(LatticeBox { lower, upper })
}

/// `p ∩ Z^d`, sorted; an infeasible `p` yields the empty set.
pub fn enumerate_lattice(p: &HPolyhedron, limits: &Limits) -> Result<PointSet> {
    match bounding_box(p) {
        Ok(bx) => enumerate_lattice_in_box(p, &bx, limits),
        Err(Error::Infeasible) => PointSet::from_flat(p.dim(), Vec::new()),
        Err(e) => Err(e),
    }
}

/// Why a polyhedron fails to be a relaxation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", content = "witness", rename_all = "snake_case")]
pub enum RelaxationFailure {
    ExtraLatticePoint(Vec<i64>),
    MissingPoint(Vec<i64>),
    UnboundedWithFiniteX(QVector),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelaxationReport {
    pub failure: Option<RelaxationFailure>,
    /// Lattice points of the polyhedron, when finitely many were enumerated.
    pub lattice_count: Option<usize>,
    /// Lattice points of `conv(X)` that are not in `X`; zero for sets that
    /// are exactly the integer points of their hull.
    pub hull_points: usize,
}

impl RelaxationReport {
    pub fn verified(&self) -> bool {
        self.failure.is_none()
    }

    pub fn status(&self) -> &'static str {
        if self.verified() {
            "verified"
        } else {
            "failed"
        }
    }
}

/// Checks `p ∩ Z^d = conv(X) ∩ Z^d` for a finite integer set `X`.
///
/// Since `p` is convex, `X ⊆ p` already gives `conv(X) ∩ Z^d ⊆ p`, so the
/// check reduces to `X ⊆ p` and every lattice point of `p` lying in `conv(X)`.
pub fn verify_relaxation(p: &HPolyhedron, x: &PointSet, limits: &Limits) -> Result<RelaxationReport> {
    check_dim(p.dim(), x.dim())?;
    if !x.is_empty() {
        if let Some(ray) = recession_nontrivial(p) {
            let failure = if x.iter().any(|pt| p.contains_int(pt)) {
                RelaxationFailure::UnboundedWithFiniteX(ray)
            } else {
                RelaxationFailure::MissingPoint(x.point(0).to_vec())
            };
            return Ok(RelaxationReport { failure: Some(failure), lattice_count: None, hull_points: 0 });
        }
    }
    let lattice = enumerate_lattice(p, limits)?;
    let mut hull_points = 0;
    let mut failure = None;
    for pt in lattice.iter().filter(|pt| !x.contains(pt)) {
        if !x.is_empty() && conv_membership(&QVector::from_ints(pt), x)?.is_some() {
            hull_points += 1;
        } else {
            failure = Some(RelaxationFailure::ExtraLatticePoint(pt.to_vec()));
            break;
        }
    }
    if failure.is_none() {
        failure = x.iter().find(|pt| !lattice.contains(pt)).map(|m| RelaxationFailure::MissingPoint(m.to_vec()));
    }
    Ok(RelaxationReport { failure, lattice_count: Some(lattice.len()), hull_points })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Irredundancy {
    /// Inequality rows that survive sequential redundancy removal.
    pub inequalities: usize,
    pub equalities: usize,
    /// 0-based indices of the removed rows, ascending.
    pub redundant_rows: Vec<usize>,
}

/// Removes redundant inequalities one at a time, scanning from the last row
/// to the first, and counts what remains.
pub fn irredundant_count(p: &HPolyhedron) -> Result<Irredundancy> {
    let d = p.dim();
    let rows = p.constraints();
    if let LpOutcome::Infeasible { .. } = solve_lp(&QVector::zeros(d), true, p)? {
        return Err(Error::Infeasible);
    }
    let mut kept = vec![true; rows.len()];
    for i in (0..rows.len()).rev() {
        let h = &rows[i];
        if h.sense == Sense::Eq {
            continue;
        }
        let others: Vec<Halfspace> =
            (0..rows.len()).filter(|&j| j != i && kept[j]).map(|j| rows[j].clone()).collect();
        let maximize = h.sense == Sense::Le;
        let redundant = match LinearProgram::free(h.a.clone(), maximize, others).solve() {
            LpOutcome::Optimal { value, .. } => {
                if maximize {
                    value <= h.rhs
                } else {
                    value >= h.rhs
                }
            }
            _ => false,
        };
        if redundant {
            kept[i] = false;
        }
    }
    let equalities = rows.iter().filter(|h| h.sense == Sense::Eq).count();
    let redundant_rows: Vec<usize> = (0..rows.len()).filter(|&i| !kept[i]).collect();
    Ok(Irredundancy { inequalities: rows.len() - equalities - redundant_rows.len(), equalities, redundant_rows })
}
