//! Dense two-phase tableau simplex over exact rationals with Bland's rule.
//!
//! Free variables are split into a positive and a negative part; inequality
//! rows get a slack column. Rows are negated where needed so the right-hand
//! side is nonnegative, and rows without a `+1` slack receive an artificial
//! column. The initial basis is therefore the identity, so the current
//! tableau columns of the initial basic variables always hold `B^-1`, from
//! which dual multipliers are read off.

use num_traits::{One, Signed, Zero};

use super::{LinearProgram, LpOutcome, Sense};
use crate::arith::{QVector, Rational};

#[derive(Clone, Copy, PartialEq, Eq)]
enum Column {
    /// Positive part of variable `j` (or the variable itself when nonneg).
    Plus(usize),
    Minus(usize),
    Slack,
    Artificial,
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    /// Reduced costs of the active phase.
    reduced: Vec<Rational>,
    value: Rational,
}

impl Tableau {
    fn pivot(&mut self, r: usize, e: usize) {
        let inv = self.rows[r][e].recip();
        if !inv.is_one() {
            for x in self.rows[r].iter_mut() {
                if !x.is_zero() {
                    *x *= &inv;
                }
            }
            self.rhs[r] *= &inv;
        }
        let support: Vec<usize> = (0..self.rows[r].len()).filter(|&j| !self.rows[r][j].is_zero()).collect();
        let (pivot_row, pivot_rhs) = (self.rows[r].clone(), self.rhs[r].clone());
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][e].is_zero() {
                continue;
            }
            let f = self.rows[i][e].clone();
            for &j in &support {
                let delta = &f * &pivot_row[j];
                self.rows[i][j] -= delta;
            }
            if !pivot_rhs.is_zero() {
                self.rhs[i] -= &f * &pivot_rhs;
            }
        }
        if !self.reduced[e].is_zero() {
            let f = self.reduced[e].clone();
            for &j in &support {
                let delta = &f * &pivot_row[j];
                self.reduced[j] -= delta;
            }
            // the objective moves by the entering reduced cost times the step
            self.value += &f * &pivot_rhs;
        }
        self.basis[r] = e;
    }

    fn set_costs(&mut self, costs: &[Rational]) {
        let mut reduced = costs.to_vec();
        let mut value = Rational::zero();
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = &costs[b];
            if cb.is_zero() {
                continue;
            }
            for (d, t) in reduced.iter_mut().zip(&self.rows[i]) {
                if !t.is_zero() {
                    *d -= cb * t;
                }
            }
            value += cb * &self.rhs[i];
        }
        self.reduced = reduced;
        self.value = value;
    }

    /// Runs Bland's rule over the allowed columns. Returns the entering
    /// column of an unbounded direction, if one is found.
    fn optimize(&mut self, allowed: &[bool]) -> Option<usize> {
        loop {
            let Some(e) = (0..allowed.len()).find(|&j| allowed[j] && self.reduced[j].is_positive()) else {
                return None;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let t = &self.rows[i][e];
                if !t.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / t;
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                None => return Some(e),
                Some((r, _)) => self.pivot(r, e),
            }
        }
    }

    /// Dual multipliers `u = B^-T c_B` in the sign-normalized row space.
    fn duals(&self, costs: &[Rational], initial: &[usize]) -> Vec<Rational> {
        initial
            .iter()
            .map(|&col| {
                self.basis
                    .iter()
                    .enumerate()
                    .filter(|(_, &b)| !costs[b].is_zero())
                    .fold(Rational::zero(), |acc, (k, &b)| acc + &costs[b] * &self.rows[k][col])
            })
            .collect()
    }
}

pub(super) fn solve(lp: &LinearProgram) -> LpOutcome {
    let n = lp.num_vars();
    let m = lp.constraints.len();

    let mut columns: Vec<Column> = Vec::new();
    let mut plus = vec![0; n];
    let mut minus = vec![None; n];
    for j in 0..n {
        plus[j] = columns.len();
        columns.push(Column::Plus(j));
        if !lp.nonneg[j] {
            minus[j] = Some(columns.len());
            columns.push(Column::Minus(j));
        }
    }

    let flips: Vec<bool> = lp.constraints.iter().map(|h| h.rhs.is_negative()).collect();
    let mut slack_of = vec![None; m];
    for (i, h) in lp.constraints.iter().enumerate() {
        if h.sense != Sense::Eq {
            slack_of[i] = Some(columns.len());
            columns.push(Column::Slack);
        }
    }
    let mut initial = vec![0; m];
    let mut needs_artificial = Vec::new();
    for (i, h) in lp.constraints.iter().enumerate() {
        // slack coefficient after the row flip
        let natural = match h.sense {
            Sense::Le => !flips[i],
            Sense::Ge => flips[i],
            Sense::Eq => false,
        };
        if natural {
            initial[i] = slack_of[i].unwrap();
        } else {
            initial[i] = columns.len();
            columns.push(Column::Artificial);
            needs_artificial.push(i);
        }
    }
    let ncols = columns.len();

    let mut rows = vec![vec![Rational::zero(); ncols]; m];
    let mut rhs = Vec::with_capacity(m);
    for (i, h) in lp.constraints.iter().enumerate() {
        let f = if flips[i] { -Rational::one() } else { Rational::one() };
        for (j, a) in h.a.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            rows[i][plus[j]] = a * &f;
            if let Some(mj) = minus[j] {
                rows[i][mj] = -(a * &f);
            }
        }
        if let Some(s) = slack_of[i] {
            let sigma = if h.sense == Sense::Le { Rational::one() } else { -Rational::one() };
            rows[i][s] = sigma * &f;
        }
        if columns[initial[i]] == Column::Artificial {
            rows[i][initial[i]] = Rational::one();
        }
        rhs.push(&h.rhs * &f);
    }

    let mut tab = Tableau {
        rows,
        rhs,
        basis: initial.clone(),
        reduced: vec![Rational::zero(); ncols],
        value: Rational::zero(),
    };
    let unflip = |u: Vec<Rational>| -> QVector {
        QVector(u.into_iter().zip(&flips).map(|(x, &fl)| if fl { -x } else { x }).collect())
    };

    if !needs_artificial.is_empty() {
        let costs: Vec<Rational> = columns
            .iter()
            .map(|c| if *c == Column::Artificial { -Rational::one() } else { Rational::zero() })
            .collect();
        tab.set_costs(&costs);
        let all = vec![true; ncols];
        let unbounded = tab.optimize(&all);
        debug_assert!(unbounded.is_none(), "phase one is bounded above by zero");
        if tab.value.is_negative() {
            return LpOutcome::Infeasible { farkas: unflip(tab.duals(&costs, &initial)) };
        }
        // drive artificials out of the basis where a real column allows it
        for r in 0..m {
            if columns[tab.basis[r]] != Column::Artificial {
                continue;
            }
            if let Some(j) = (0..ncols).find(|&j| columns[j] != Column::Artificial && !tab.rows[r][j].is_zero()) {
                tab.pivot(r, j);
            }
        }
    }

    let sign = if lp.maximize { Rational::one() } else { -Rational::one() };
    let costs: Vec<Rational> = columns
        .iter()
        .map(|c| match *c {
            Column::Plus(j) => &lp.objective[j] * &sign,
            Column::Minus(j) => -(&lp.objective[j] * &sign),
            _ => Rational::zero(),
        })
        .collect();
    tab.set_costs(&costs);
    let allowed: Vec<bool> = columns.iter().map(|c| *c != Column::Artificial).collect();
    let unbounded = tab.optimize(&allowed);

    let to_point = |values: &dyn Fn(usize) -> Rational| -> QVector {
        let mut x = vec![Rational::zero(); n];
        for (col, c) in columns.iter().enumerate() {
            match *c {
                Column::Plus(j) => x[j] += values(col),
                Column::Minus(j) => x[j] -= values(col),
                _ => {}
            }
        }
        QVector(x)
    };
    let basic_value = |col: usize| -> Rational {
        tab.basis
            .iter()
            .position(|&b| b == col)
            .map_or_else(Rational::zero, |r| tab.rhs[r].clone())
    };
    let point = to_point(&basic_value);

    match unbounded {
        Some(e) => {
            let direction = |col: usize| -> Rational {
                if col == e {
                    return Rational::one();
                }
                tab.basis
                    .iter()
                    .position(|&b| b == col)
                    .map_or_else(Rational::zero, |r| -tab.rows[r][e].clone())
            };
            let ray = to_point(&direction);
            LpOutcome::Unbounded { point, ray }
        }
        None => {
            let value = &tab.value * &sign;
            LpOutcome::Optimal { value, point, dual: unflip(tab.duals(&costs, &initial)) }
        }
    }
}
