//! Exact rational scalars and vectors, Gaussian elimination and affine hulls.
//!
//! Every number in the toolkit is a [`Rational`], an arbitrary-precision
//! fraction kept in lowest terms with a positive denominator. There is no
//! floating point anywhere.

use std::fmt;
use std::ops::{Deref, DerefMut};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Deserializer, Visitor};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::points::PointSet;

/// Exact rational number in canonical form.
pub type Rational = BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Formats as `p/q`, or `p` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    Rational::from_str(t).map_err(|_| Error::Malformed(format!("not a rational number: `{s}`")))
}

/// Serde adapter writing a rational as a `"p/q"` string. Integers are also
/// accepted on input.
pub mod rational_serde {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        d.deserialize_any(RationalVisitor)
    }
}

struct RationalVisitor;

impl Visitor<'_> for RationalVisitor {
    type Value = Rational;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("a rational string \"p/q\" or an integer")
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<Rational, E> {
        parse_rational(v).map_err(E::custom)
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<Rational, E> {
        Ok(int(v))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<Rational, E> {
        Ok(Rational::from_integer(BigInt::from(v)))
    }
}

/// A vector of exact rationals.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct QVector(pub Vec<Rational>);

impl QVector {
    pub fn zeros(dim: usize) -> Self {
        QVector(vec![Rational::zero(); dim])
    }

    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[i] = Rational::one();
        v
    }

    pub fn from_ints(xs: &[i64]) -> Self {
        QVector(xs.iter().map(|&x| int(x)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn dot(&self, other: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (a, b) in self.0.iter().zip(other) {
            if !a.is_zero() && !b.is_zero() {
                acc += a * b;
            }
        }
        acc
    }

    /// Inner product with an integer point.
    pub fn dot_int(&self, x: &[i64]) -> Rational {
        let mut acc = Rational::zero();
        for (a, &b) in self.0.iter().zip(x) {
            if b != 0 && !a.is_zero() {
                acc += a * BigInt::from(b);
            }
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Returns the entries as integers when every entry is integral.
    pub fn to_ints(&self) -> Option<Vec<i64>> {
        self.0
            .iter()
            .map(|r| {
                if r.is_integer() {
                    i64::try_from(r.numer()).ok()
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn sub(&self, other: &QVector) -> QVector {
        QVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: &Rational) -> QVector {
        QVector(self.0.iter().map(|a| a * k).collect())
    }
}

impl Deref for QVector {
    type Target = Vec<Rational>;
    fn deref(&self) -> &Vec<Rational> {
        &self.0
    }
}

impl DerefMut for QVector {
    fn deref_mut(&mut self) -> &mut Vec<Rational> {
        &mut self.0
    }
}

impl From<Vec<Rational>> for QVector {
    fn from(v: Vec<Rational>) -> Self {
        QVector(v)
    }
}

impl fmt::Debug for QVector {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for QVector {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("(")?;
        for (i, r) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{r}")?;
        }
        f.write_str(")")
    }
}

impl Serialize for QVector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for r in &self.0 {
            seq.serialize_element(&format_rational(r))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for QVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Entry(#[serde(with = "rational_serde")] Rational);
        let entries: Vec<Entry> = Vec::deserialize(d)?;
        Ok(QVector(entries.into_iter().map(|e| e.0).collect()))
    }
}

/// Reduced row echelon form of `rows`, returned as its nonzero rows along
/// with their pivot columns. Pivots are taken column by column, choosing the
/// lowest-index row with a nonzero entry.
pub fn rref(rows: &[QVector]) -> (Vec<QVector>, Vec<usize>) {
    let mut m: Vec<QVector> = rows.to_vec();
    let ncols = m.first().map_or(0, |r| r.dim());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(pivot_row.iter()) {
                    if !p.is_zero() {
                        *x -= &f * p;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

/// Rank of the row span together with a row echelon basis of it.
///
/// All rows must share one dimension; an empty input has rank 0.
pub fn gaussian_rank(rows: &[QVector]) -> Result<(usize, Vec<QVector>)> {
    if let Some(first) = rows.first() {
        for r in rows {
            check_dim(first.dim(), r.dim())?;
        }
    }
    let (echelon, _) = rref(rows);
    Ok((echelon.len(), echelon))
}

/// One defining equation `<normal, x> = rhs` of an affine hull.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HullEquation {
    pub normal: QVector,
    #[serde(with = "rational_serde")]
    pub rhs: Rational,
}

impl HullEquation {
    pub fn holds(&self, p: &[Rational]) -> bool {
        self.normal.dot(p) == self.rhs
    }
}

/// The affine hull of a finite point set, in both parametric and implicit
/// form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineHull {
    pub base_point: QVector,
    pub basis: Vec<QVector>,
    pub equations: Vec<HullEquation>,
}

impl AffineHull {
    pub fn ambient_dim(&self) -> usize {
        self.base_point.dim()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains_int(&self, p: &[i64]) -> bool {
        self.equations
            .iter()
            .all(|e| e.normal.dot_int(p) == e.rhs)
    }
}

/// Primitive integer vector parallel to `v`, first nonzero entry positive.
fn primitive(v: &[Rational]) -> Vec<BigInt> {
    let lcm = v
        .iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let mut ints: Vec<BigInt> = v.iter().map(|r| (r * &lcm).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() {
        for x in ints.iter_mut() {
            *x /= &g;
        }
    }
    if ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        for x in ints.iter_mut() {
            *x = -&*x;
        }
    }
    ints
}

/// Integer-coefficient equations cutting out `base + span(rref rows)`.
fn nullspace_equations(
    dim: usize,
    rows: &[QVector],
    pivots: &[usize],
    base: &[i64],
) -> Vec<(Vec<BigInt>, BigInt)> {
    let mut eqs = Vec::with_capacity(dim - rows.len());
    for f in (0..dim).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rational::zero(); dim];
        v[f] = Rational::one();
        for (row, &p) in rows.iter().zip(pivots) {
            v[p] = -row[f].clone();
        }
        let normal = primitive(&v);
        let rhs = normal
            .iter()
            .zip(base)
            .fold(BigInt::zero(), |acc, (a, &b)| acc + a * b);
        eqs.push((normal, rhs));
    }
    eqs
}

fn satisfies(eq: &(Vec<BigInt>, BigInt), p: &[i64]) -> bool {
    let mut acc = BigInt::zero();
    for (a, &x) in eq.0.iter().zip(p) {
        if x != 0 && !a.is_zero() {
            acc += a * x;
        }
    }
    acc == eq.1
}

/// Smallest affine subspace containing every point of `points`.
///
/// The base point is the lexicographically smallest point, the basis is the
/// reduced echelon basis of the difference vectors, and the equations are
/// primitive integer normals of the complementary space. Scanning stops as
/// soon as the hull is full-dimensional.
pub fn affine_hull(points: &PointSet) -> Result<AffineHull> {
    let dim = points.dim();
    let base: Vec<i64> = points
        .iter()
        .min()
        .ok_or(Error::EmptySet)?
        .to_vec();
    let base_q = QVector::from_ints(&base);

    let mut rows: Vec<QVector> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    let mut eqs = nullspace_equations(dim, &rows, &pivots, &base);
    for p in points.iter() {
        if rows.len() == dim {
            break;
        }
        if eqs.iter().all(|e| satisfies(e, p)) {
            continue;
        }
        let mut all = rows.clone();
        all.push(QVector::from_ints(p).sub(&base_q));
        let (r, pv) = rref(&all);
        rows = r;
        pivots = pv;
        eqs = nullspace_equations(dim, &rows, &pivots, &base);
    }

    let to_q = |v: &[BigInt]| QVector(v.iter().map(|x| Rational::from_integer(x.clone())).collect());
    Ok(AffineHull {
        base_point: base_q,
        basis: rows,
        equations: eqs
            .iter()
            .map(|(n, r)| HullEquation {
                normal: to_q(n),
                rhs: Rational::from_integer(r.clone()),
            })
            .collect(),
    })
}

/// Whether `p` satisfies every equation of `hull`.
pub fn in_affine_hull(p: &QVector, hull: &AffineHull) -> Result<bool> {
    check_dim(hull.ambient_dim(), p.dim())?;
    Ok(hull.equations.iter().all(|e| e.holds(p)))
}
