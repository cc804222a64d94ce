//! Integer boxes and exact lattice-point enumeration of rational polyhedra.

use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::limits::Limits;
use crate::lp::{HPolyhedron, Sense};
use crate::points::PointSet;

/// Per-coordinate integer bounds, inclusive on both ends.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeBox {
    pub lower: Vec<i64>,
    pub upper: Vec<i64>,
}

impl LatticeBox {
    pub fn new(lower: Vec<i64>, upper: Vec<i64>) -> Result<Self> {
        check_dim(lower.len(), upper.len())?;
        if let Some(i) = (0..lower.len()).find(|&i| lower[i] > upper[i]) {
            return Err(Error::InvalidParameter(format!(
                "box coordinate {} has lower bound {} above upper bound {}",
                i + 1,
                lower[i],
                upper[i]
            )));
        }
        Ok(LatticeBox { lower, upper })
    }

    /// The cube `[lo, hi]^dim`.
    pub fn uniform(dim: usize, lo: i64, hi: i64) -> Result<Self> {
        LatticeBox::new(vec![lo; dim], vec![hi; dim])
    }

    /// Parses `lo1:hi1,lo2:hi2,...`.
    pub fn parse(s: &str) -> Result<Self> {
        let mut lower = Vec::new();
        let mut upper = Vec::new();
        for (i, part) in s.split(',').enumerate() {
            let bad = || Error::Malformed(format!("box entry {} `{}` is not lo:hi", i + 1, part.trim()));
            let (lo, hi) = part.trim().split_once(':').ok_or_else(bad)?;
            lower.push(lo.trim().parse().map_err(|_| bad())?);
            upper.push(hi.trim().parse().map_err(|_| bad())?);
        }
        LatticeBox::new(lower, upper)
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    /// True when some coordinate range is empty.
    pub fn is_empty(&self) -> bool {
        self.lower.iter().zip(&self.upper).any(|(l, u)| l > u)
    }

    /// Number of integer points; saturates at `u128::MAX`.
    pub fn volume(&self) -> u128 {
        if self.is_empty() {
            return 0;
        }
        self.lower
            .iter()
            .zip(&self.upper)
            .try_fold(1u128, |acc, (&l, &u)| acc.checked_mul((u as i128 - l as i128 + 1) as u128))
            .unwrap_or(u128::MAX)
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        x.len() == self.dim() && (0..x.len()).all(|i| self.lower[i] <= x[i] && x[i] <= self.upper[i])
    }

    /// Every point of the box in lexicographic order.
    pub fn points(&self, limits: &Limits) -> Result<Vec<Vec<i64>>> {
        limits.check_lattice("box", self.volume())?;
        let mut out = Vec::new();
        if self.is_empty() {
            return Ok(out);
        }
        let mut x = self.lower.clone();
        loop {
            out.push(x.clone());
            let mut i = x.len();
            loop {
                if i == 0 {
                    return Ok(out);
                }
                i -= 1;
                if x[i] < self.upper[i] {
                    x[i] += 1;
                    break;
                }
                x[i] = self.lower[i];
            }
        }
    }
}

/// A row `lo <= a.x <= hi` with integer data; `None` means no bound.
struct IntRow<T> {
    a: Vec<T>,
    lo: Option<T>,
    hi: Option<T>,
}

/// Clears denominators of every row. Scaling by a positive integer keeps the
/// integer solutions unchanged, and rounding the bounds inward is exact.
fn integer_rows(p: &HPolyhedron) -> Vec<IntRow<BigInt>> {
    p.constraints()
        .iter()
        .map(|h| {
            let l = h
                .a
                .iter()
                .chain(std::iter::once(&h.rhs))
                .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
            let a: Vec<BigInt> = h.a.iter().map(|r| (r * &l).to_integer()).collect();
            let b = &h.rhs * &l;
            let (lo, hi) = match h.sense {
                Sense::Le => (None, Some(b.floor().to_integer())),
                Sense::Ge => (Some(b.ceil().to_integer()), None),
                Sense::Eq => (Some(b.to_integer()), Some(b.to_integer())),
            };
            IntRow { a, lo, hi }
        })
        .collect()
}

fn narrow(rows: &[IntRow<BigInt>], bx: &LatticeBox) -> Option<Vec<IntRow<i128>>> {
    let reach: BigInt = bx
        .lower
        .iter()
        .zip(&bx.upper)
        .map(|(&l, &u)| BigInt::from(l.unsigned_abs().max(u.unsigned_abs())))
        .fold(BigInt::zero(), |acc, m| acc + m)
        + BigInt::one();
    let limit = BigInt::one() << 120u32;
    rows.iter()
        .map(|r| {
            let amax = r.a.iter().map(|x| x.abs()).max().unwrap_or_default();
            let bmax = [&r.lo, &r.hi].iter().filter_map(|b| b.as_ref().map(|x| x.abs())).max().unwrap_or_default();
            if &amax * &reach + bmax >= limit {
                return None;
            }
            Some(IntRow {
                a: r.a.iter().map(|x| x.to_i128().unwrap()).collect(),
                lo: r.lo.as_ref().map(|x| x.to_i128().unwrap()),
                hi: r.hi.as_ref().map(|x| x.to_i128().unwrap()),
            })
        })
        .collect()
}

trait Scalar: Clone + Ord + Zero + From<i64> + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> {}
impl Scalar for i128 {}
impl Scalar for BigInt {}

struct Search<'a, T> {
    rows: &'a [IntRow<T>],
    bx: &'a LatticeBox,
    /// `rest_min[r][k]`: smallest value of the row over coordinates `k..`.
    rest_min: Vec<Vec<T>>,
    rest_max: Vec<Vec<T>>,
    out: Vec<i64>,
}

impl<'a, T: Scalar> Search<'a, T> {
    fn new(rows: &'a [IntRow<T>], bx: &'a LatticeBox) -> Self {
        let d = bx.dim();
        let mut rest_min = Vec::with_capacity(rows.len());
        let mut rest_max = Vec::with_capacity(rows.len());
        for r in rows {
            let mut mn = vec![T::zero(); d + 1];
            let mut mx = vec![T::zero(); d + 1];
            for k in (0..d).rev() {
                let p = r.a[k].clone() * T::from(bx.lower[k]);
                let q = r.a[k].clone() * T::from(bx.upper[k]);
                let (lo, hi) = if p <= q { (p, q) } else { (q, p) };
                mn[k] = mn[k + 1].clone() + lo;
                mx[k] = mx[k + 1].clone() + hi;
            }
            rest_min.push(mn);
            rest_max.push(mx);
        }
        Search { rows, bx, rest_min, rest_max, out: Vec::new() }
    }

    fn feasible(&self, partial: &[T], k: usize) -> bool {
        self.rows.iter().enumerate().all(|(r, row)| {
            let fits_hi = row.hi.as_ref().map_or(true, |hi| partial[r].clone() + self.rest_min[r][k].clone() <= *hi);
            let fits_lo = row.lo.as_ref().map_or(true, |lo| partial[r].clone() + self.rest_max[r][k].clone() >= *lo);
            fits_hi && fits_lo
        })
    }

    fn run(&mut self, x: &mut Vec<i64>, partial: &mut Vec<T>) {
        let k = x.len();
        if !self.feasible(partial, k) {
            return;
        }
        if k == self.bx.dim() {
            self.out.extend_from_slice(x);
            return;
        }
        for v in self.bx.lower[k]..=self.bx.upper[k] {
            let saved = partial.clone();
            for (r, row) in self.rows.iter().enumerate() {
                partial[r] = partial[r].clone() + row.a[k].clone() * T::from(v);
            }
            x.push(v);
            self.run(x, partial);
            x.pop();
            *partial = saved;
        }
    }
}

fn search<T: Scalar>(rows: &[IntRow<T>], bx: &LatticeBox) -> Vec<i64> {
    let mut s = Search::new(rows, bx);
    let mut partial = vec![T::zero(); rows.len()];
    s.run(&mut Vec::with_capacity(bx.dim()), &mut partial);
    s.out
}

/// All integer points of `p` inside `bx`, sorted lexicographically.
pub fn enumerate_lattice_in_box(p: &HPolyhedron, bx: &LatticeBox, limits: &Limits) -> Result<PointSet> {
    check_dim(p.dim(), bx.dim())?;
    limits.check_lattice("lattice box", bx.volume())?;
    if bx.is_empty() {
        return PointSet::from_flat(p.dim(), Vec::new());
    }
    let rows = integer_rows(p);
    let flat = match narrow(&rows, bx) {
        Some(small) => search(&small, bx),
        None => search(&rows, bx),
    };
    PointSet::from_flat(p.dim(), flat)
}
