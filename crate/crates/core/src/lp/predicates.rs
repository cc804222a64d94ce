use num_traits::{One, Signed, Zero};

use super::{HPolyhedron, Halfspace, LinearProgram, LpOutcome, Sense};
use crate::arith::{int, QVector, Rational};
use crate::error::{check_dim, Error, Result};
use crate::points::PointSet;

/// Convex multipliers over the points of a set, by point index.
pub type ConvexWeights = Vec<(usize, Rational)>;

/// A common point of a segment `[a, b]` and `conv(X)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SegmentHit {
    /// The hit point equals `t * a + (1 - t) * b`.
    pub t: Rational,
    pub point: QVector,
    pub weights: ConvexWeights,
}

/// Outcome of a strict separation attempt.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Separation {
    /// `<a, x> <= rhs` on the first set and `<a, y> >= rhs + 1` on the second.
    Separated(Halfspace),
    NotSeparable,
}

impl Separation {
    pub fn halfspace(&self) -> Option<&Halfspace> {
        match self {
            Separation::Separated(h) => Some(h),
            Separation::NotSeparable => None,
        }
    }
}

/// Indices of points of a 0/1 set that can carry weight in a convex
/// combination landing on the segment `[a, b]`.
///
/// Where both endpoints are `<= 0` (or `>= 1`) in a coordinate, any common
/// point with the unit cube has that coordinate at 0 (or 1), and so must
/// every binary point with positive weight. Returns `None` when the segment
/// misses the cube outright.
fn binary_face(a: &[Rational], b: &[Rational], x: &PointSet) -> Option<Vec<usize>> {
    let one = Rational::one();
    let mut fixed: Vec<(usize, i64)> = Vec::new();
    for (e, (ae, be)) in a.iter().zip(b).enumerate() {
        let (lo, hi) = if ae <= be { (ae, be) } else { (be, ae) };
        if hi.is_negative() || *lo > one {
            return None;
        }
        if !hi.is_positive() {
            fixed.push((e, 0));
        } else if *lo >= one {
            fixed.push((e, 1));
        }
    }
    Some(
        (0..x.len())
            .filter(|&k| {
                let p = x.point(k);
                fixed.iter().all(|&(e, v)| p[e] == v)
            })
            .collect(),
    )
}

fn candidate_indices(a: &[Rational], b: &[Rational], x: &PointSet) -> Option<Vec<usize>> {
    if x.is_binary() {
        binary_face(a, b, x)
    } else {
        Some((0..x.len()).collect())
    }
}

/// Decides `p ∈ conv(X)`; on success returns exact convex multipliers.
pub fn conv_membership(p: &QVector, x: &PointSet) -> Result<Option<ConvexWeights>> {
    check_dim(x.dim(), p.dim())?;
    if x.is_empty() {
        return Err(Error::EmptySet);
    }
    Ok(segment_hits_hull(p, p, x)?.map(|hit| hit.weights))
}

/// Decides whether the segment `[a, b]` meets `conv(X)` by one LP over
/// `t ∈ [0, 1]` and convex multipliers on `X`.
pub fn segment_hits_hull(a: &QVector, b: &QVector, x: &PointSet) -> Result<Option<SegmentHit>> {
    check_dim(x.dim(), a.dim())?;
    check_dim(x.dim(), b.dim())?;
    if x.is_empty() {
        return Err(Error::EmptySet);
    }
    let Some(cols) = candidate_indices(a, b, x) else {
        return Ok(None);
    };
    if cols.is_empty() {
        return Ok(None);
    }
    let d = x.dim();
    let nvars = 1 + cols.len();
    let mut rows = Vec::with_capacity(d + 2);
    // (a - b) t - sum_k lambda_k x_k = -b
    for e in 0..d {
        let mut coeffs = Vec::with_capacity(nvars);
        coeffs.push(&a[e] - &b[e]);
        coeffs.extend(cols.iter().map(|&k| int(-x.point(k)[e])));
        let row = QVector(coeffs);
        if row.is_zero() {
            if !b[e].is_zero() {
                return Ok(None);
            }
            continue;
        }
        rows.push(Halfspace::eq(row, -b[e].clone()));
    }
    let mut sum = QVector::zeros(nvars);
    for s in sum.iter_mut().skip(1) {
        *s = Rational::one();
    }
    rows.push(Halfspace::eq(sum, Rational::one()));
    if a != b {
        rows.push(Halfspace::le(QVector::unit(nvars, 0), Rational::one()));
    }
    let lp = LinearProgram {
        objective: QVector::zeros(nvars),
        maximize: true,
        constraints: rows,
        nonneg: vec![true; nvars],
    };
    match lp.solve() {
        LpOutcome::Optimal { point: sol, .. } => {
            let t = if a == b { Rational::one() } else { sol[0].clone() };
            let one_minus = Rational::one() - &t;
            let point = QVector(a.iter().zip(b.iter()).map(|(ai, bi)| ai * &t + bi * &one_minus).collect());
            let weights = cols
                .iter()
                .zip(sol.iter().skip(1))
                .filter(|(_, w)| !w.is_zero())
                .map(|(&k, w)| (k, w.clone()))
                .collect();
            Ok(Some(SegmentHit { t, point, weights }))
        }
        LpOutcome::Infeasible { .. } => Ok(None),
        LpOutcome::Unbounded { .. } => unreachable!("zero objective cannot be unbounded"),
    }
}

/// Looks for `(a, γ)` with `<a, x> <= γ` on `X` and `<a, y> >= γ + 1` on `C`.
///
/// For finite sets this is feasible exactly when the two convex hulls are
/// disjoint; the returned halfspace comes from a basic solution.
pub fn strict_separation(x: &PointSet, c: &PointSet) -> Result<Separation> {
    check_dim(x.dim(), c.dim())?;
    if x.is_empty() || c.is_empty() {
        return Err(Error::EmptySet);
    }
    let d = x.dim();
    let row = |p: &[i64]| {
        let mut v = QVector::from_ints(p);
        v.push(-Rational::one());
        v
    };
    let mut rows: Vec<Halfspace> = x.iter().map(|p| Halfspace::le(row(p), Rational::zero())).collect();
    rows.extend(c.iter().map(|p| Halfspace::ge(row(p), Rational::one())));
    let lp = LinearProgram::free(QVector::zeros(d + 1), true, rows);
    match lp.solve() {
        LpOutcome::Optimal { point, .. } => {
            let mut a = point.0;
            let gamma = a.pop().expect("gamma variable");
            Ok(Separation::Separated(Halfspace::le(QVector(a), gamma)))
        }
        LpOutcome::Infeasible { .. } => Ok(Separation::NotSeparable),
        LpOutcome::Unbounded { .. } => unreachable!("zero objective cannot be unbounded"),
    }
}

/// Searches for a nonzero recession direction of `p` inside the box
/// `[-1, 1]^dim`, probing `± c_i` for every coordinate.
pub fn recession_nontrivial(p: &HPolyhedron) -> Option<QVector> {
    let dim = p.dim();
    let mut rows: Vec<Halfspace> = p
        .constraints()
        .iter()
        .map(|h| Halfspace::new(h.a.clone(), h.sense, Rational::zero()))
        .collect();
    for i in 0..dim {
        rows.push(Halfspace::le(QVector::unit(dim, i), Rational::one()));
        rows.push(Halfspace::ge(QVector::unit(dim, i), -Rational::one()));
    }
    for i in 0..dim {
        for sign in [1, -1] {
            let mut obj = QVector::zeros(dim);
            obj[i] = int(sign);
            let lp = LinearProgram::free(obj, true, rows.clone());
            if let LpOutcome::Optimal { value, point, .. } = lp.solve() {
                if value.is_positive() {
                    debug_assert!(is_recession_direction(p, &point));
                    return Some(point);
                }
            }
        }
    }
    None
}

/// True when the direction is a recession direction of `p`.
pub(crate) fn is_recession_direction(p: &HPolyhedron, c: &[Rational]) -> bool {
    p.constraints().iter().all(|h| {
        let v = h.a.dot(c);
        match h.sense {
            Sense::Le => !v.is_positive(),
            Sense::Ge => !v.is_negative(),
            Sense::Eq => v.is_zero(),
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ratio;
    use crate::families::{generate_basic, BasicFamily};
    use crate::limits::Limits;
    use crate::lp::solve_lp;

    fn q(xs: &[i64]) -> QVector {
        QVector::from_ints(xs)
    }

    fn set(dim: usize, pts: &[&[i64]]) -> PointSet {
        PointSet::new(dim, pts.iter().map(|p| p.to_vec()).collect()).unwrap()
    }

    fn simplex2() -> PointSet {
        set(2, &[&[0, 0], &[1, 0], &[0, 1]])
    }

    #[test]
    fn membership_examples() {
        let x = simplex2();
        for i in 0..x.len() {
            assert!(conv_membership(&x.qvector(i), &x).unwrap().is_some());
        }
        assert!(conv_membership(&q(&[1, 1]), &x).unwrap().is_none());
        let mid = QVector(vec![ratio(1, 2), ratio(1, 2)]);
        let w = conv_membership(&mid, &x).unwrap().unwrap();
        let total: Rational = w.iter().map(|(_, l)| l.clone()).sum();
        assert_eq!(total, int(1));
        assert!(matches!(conv_membership(&q(&[1]), &x), Err(Error::DimMismatch { .. })));
    }

    #[test]
    fn segment_examples() {
        let x = simplex2();
        let hit = segment_hits_hull(&q(&[1, 1]), &q(&[-1, 1]), &x).unwrap().unwrap();
        assert_eq!(hit.point, QVector(vec![hit.t.clone() * int(2) - int(1), int(1)]));
        assert!(segment_hits_hull(&q(&[1, 1]), &q(&[2, 2]), &x).unwrap().is_none());
    }

    #[test]
    fn non_binary_set_uses_full_lp() {
        let x = set(2, &[&[0, 0], &[2, 0], &[0, 2]]);
        assert!(conv_membership(&q(&[1, 1]), &x).unwrap().is_some());
        assert!(conv_membership(&q(&[2, 1]), &x).unwrap().is_none());
    }

    #[test]
    fn separation_examples() {
        let sep = strict_separation(&set(2, &[&[0, 0]]), &set(2, &[&[1, 1]])).unwrap();
        let h = sep.halfspace().unwrap();
        assert!(h.satisfied_by_int(&[0, 0]));
        assert!(h.a.dot_int(&[1, 1]) >= &h.rhs + int(1));

        let even2 = set(2, &[&[0, 0], &[1, 1]]);
        let odd2 = set(2, &[&[0, 1], &[1, 0]]);
        assert_eq!(strict_separation(&even2, &odd2).unwrap(), Separation::NotSeparable);

        let even3 = generate_basic(&BasicFamily::Even(3), &Limits::default()).unwrap();
        let single = set(3, &[&[1, 0, 0]]);
        assert!(conv_membership(&q(&[1, 0, 0]), &even3).unwrap().is_none());
        let h = strict_separation(&even3, &single).unwrap();
        let h = h.halfspace().unwrap();
        assert!(even3.iter().all(|p| h.satisfied_by_int(p)));
        assert!(h.a.dot_int(&[1, 0, 0]) >= &h.rhs + int(1));
    }

    #[test]
    fn recession_examples() {
        let orthant = HPolyhedron::new(2, vec![
            Halfspace::ge(q(&[1, 0]), int(0)),
            Halfspace::ge(q(&[0, 1]), int(0)),
        ])
        .unwrap();
        let dir = recession_nontrivial(&orthant).unwrap();
        assert_eq!(dir, q(&[1, 0]));
        assert!(is_recession_direction(&orthant, &dir));

        let square = HPolyhedron::new(2, vec![
            Halfspace::ge(q(&[1, 0]), int(0)),
            Halfspace::ge(q(&[0, 1]), int(0)),
            Halfspace::le(q(&[1, 1]), int(3)),
        ])
        .unwrap();
        assert!(recession_nontrivial(&square).is_none());
    }

    #[test]
    fn rado_lp_value() {
        let rado = crate::relax::build_rado_permutahedron(3, &Limits::default()).unwrap();
        let out = solve_lp(&q(&[1, 1, 0]), true, &rado).unwrap();
        assert_eq!(out.value(), Some(&int(5)));
        assert!(recession_nontrivial(&rado).is_none());
    }
}
