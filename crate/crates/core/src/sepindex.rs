//! Separation of binary sets from the rest of the cube, and bound reports.

use std::collections::{BTreeSet, HashMap};

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::arith::{int, QVector, Rational};
use crate::clique::Graph;
use crate::error::{check_dim, Error, Result};
use crate::families::{generate_basic, BasicFamily, Family, GraphFamily};
use crate::hiding::{
    build_arb_hiding, build_diff_hiding, build_parity_hiding, build_perm_hiding, build_simplex_hiding,
    build_tjoin_hiding, build_tsp_hiding, max_hiding_in_box, verify_hiding, BoxSearch,
};
use crate::lattice::LatticeBox;
use crate::limits::Limits;
use crate::lp::{strict_separation, HPolyhedron, Halfspace, Separation};
use crate::points::{FamilyTag, PointSet};
use crate::relax::{
    bounding_box, build_conn_cut_relaxation, build_cube_relaxation, build_rado_permutahedron,
    build_subtour_relaxation, verify_relaxation,
};

/// Halfspaces valid on `X` that together cut off every other cube vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparationSystem {
    pub halfspaces: Vec<Halfspace>,
    /// Digest of the set the system was built for.
    pub target: String,
}

impl SeparationSystem {
    pub fn len(&self) -> usize {
        self.halfspaces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.halfspaces.is_empty()
    }

    /// Checks both defining conditions against `X` over the whole cube.
    pub fn validate(&self, x: &PointSet, limits: &Limits) -> Result<()> {
        if let Some(h) = self.halfspaces.iter().find(|h| h.dim() != x.dim()) {
            return Err(Error::DimMismatch { expected: x.dim(), found: h.dim() });
        }
        for p in x.iter() {
            if let Some(h) = self.halfspaces.iter().find(|h| !h.satisfied_by_int(p)) {
                return Err(Error::InvalidSystem(format!("{h} cuts off {}", QVector::from_ints(p))));
            }
        }
        for y in complement(x, limits)?.iter() {
            if self.halfspaces.iter().all(|h| h.satisfied_by_int(y)) {
                return Err(Error::InvalidSystem(format!("no row cuts off {}", QVector::from_ints(y))));
            }
        }
        Ok(())
    }
}

fn require_binary(x: &PointSet) -> Result<()> {
    if x.is_empty() {
        return Err(Error::EmptySet);
    }
    if !x.is_binary() {
        return Err(Error::InvalidParameter("point set must lie in {0,1}^d".into()));
    }
    Ok(())
}

/// `{0,1}^d ∖ X` in lexicographic order.
fn complement(x: &PointSet, limits: &Limits) -> Result<PointSet> {
    let cube = generate_basic(&BasicFamily::Cube(x.dim()), limits)?;
    PointSet::new(x.dim(), x_free(&cube, x))
}

fn x_free(cube: &PointSet, x: &PointSet) -> Vec<Vec<i64>> {
    cube.iter().filter(|p| !x.contains(p)).map(<[i64]>::to_vec).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JeroslowIndex {
    pub k: usize,
    pub system: SeparationSystem,
    /// Largest set of excluded points no two of which share a separator.
    pub clique_bound: usize,
    pub maximal_sets: usize,
}

struct Coverability<'a> {
    x: &'a PointSet,
    y: Vec<Vec<i64>>,
    memo: HashMap<u64, Option<Halfspace>>,
}

impl Coverability<'_> {
    fn check(&mut self, mask: u64) -> Result<bool> {
        if let Some(r) = self.memo.get(&mask) {
            return Ok(r.is_some());
        }
        let pts = (0..self.y.len()).filter(|&i| mask >> i & 1 == 1).map(|i| self.y[i].clone()).collect();
        let c = PointSet::new(self.x.dim(), pts)?;
        let h = match strict_separation(self.x, &c)? {
            Separation::Separated(h) => Some(h),
            Separation::NotSeparable => None,
        };
        let ok = h.is_some();
        self.memo.insert(mask, h);
        Ok(ok)
    }
}

/// Exact minimum number of halfspaces separating `X` from `{0,1}^d ∖ X`.
pub fn jeroslow_index(x: &PointSet, limits: &Limits) -> Result<JeroslowIndex> {
    require_binary(x)?;
    let d = x.dim();
    if d > limits.index_dim {
        return Err(Error::TooLarge { what: "index dimension".into(), count: d as u128, cap: limits.index_dim as u64 });
    }
    let y = x_free(&generate_basic(&BasicFamily::Cube(d), limits)?, x);
    let target = x.digest();
    if y.is_empty() {
        return Ok(JeroslowIndex { k: 0, system: SeparationSystem { halfspaces: vec![], target }, clique_bound: 0, maximal_sets: 0 });
    }
    let ny = y.len();
    let mut cov = Coverability { x, y, memo: HashMap::new() };

    let mut all_coverable: BTreeSet<u64> = BTreeSet::new();
    let mut level: Vec<u64> = Vec::new();
    for i in 0..ny {
        if cov.check(1 << i)? {
            level.push(1 << i);
        }
    }
    let mut conflict = Graph::new(ny);
    for i in 0..ny {
        for j in i + 1..ny {
            if !cov.check(1 << i | 1 << j)? {
                conflict.add_edge(i, j);
            }
        }
    }
    while !level.is_empty() {
        all_coverable.extend(&level);
        let current: BTreeSet<u64> = level.iter().copied().collect();
        let mut next = BTreeSet::new();
        for (a, &s) in level.iter().enumerate() {
            for &t in &level[a + 1..] {
                let u = s | t;
                if u.count_ones() != s.count_ones() + 1 || next.contains(&u) {
                    continue;
                }
                let closed = (0..ny).filter(|&i| u >> i & 1 == 1).all(|i| current.contains(&(u & !(1 << i))));
                if closed && cov.check(u)? {
                    next.insert(u);
                }
            }
        }
        level = next.into_iter().collect();
    }
    let maximal: Vec<u64> = all_coverable
        .iter()
        .copied()
        .filter(|&s| (0..ny).all(|i| s >> i & 1 == 1 || !all_coverable.contains(&(s | 1 << i))))
        .collect();

    let clique_bound = conflict.max_clique().len();
    let full = if ny == 64 { u64::MAX } else { (1u64 << ny) - 1 };
    let mut search = Cover { sets: &maximal, conflict: &conflict, full, best: Vec::new(), ny };
    search.best = greedy_cover(&maximal, full);
    search.run(0, &mut Vec::new(), clique_bound);
    let chosen = search.best.clone();

    let mut halfspaces = Vec::with_capacity(chosen.len());
    for s in &chosen {
        cov.check(*s)?;
        halfspaces.push(cov.memo[s].clone().expect("chosen sets are coverable"));
    }
    Ok(JeroslowIndex {
        k: chosen.len(),
        system: SeparationSystem { halfspaces, target },
        clique_bound,
        maximal_sets: maximal.len(),
    })
}

fn greedy_cover(sets: &[u64], full: u64) -> Vec<u64> {
    let mut covered = 0u64;
    let mut out = Vec::new();
    while covered != full {
        let best = *sets.iter().max_by_key(|&&s| ((s & !covered).count_ones(), std::cmp::Reverse(s))).unwrap();
        out.push(best);
        covered |= best;
    }
    out
}

struct Cover<'a> {
    sets: &'a [u64],
    conflict: &'a Graph,
    full: u64,
    best: Vec<u64>,
    ny: usize,
}

impl Cover<'_> {
    fn run(&mut self, covered: u64, chosen: &mut Vec<u64>, global_lb: usize) {
        if self.best.len() == global_lb {
            return;
        }
        if covered == self.full {
            if chosen.len() < self.best.len() {
                self.best = chosen.clone();
            }
            return;
        }
        let uncovered: Vec<usize> = (0..self.ny).filter(|&i| covered >> i & 1 == 0).collect();
        let lb = self.conflict.greedy_clique(&uncovered).len();
        if chosen.len() + lb >= self.best.len() {
            return;
        }
        let pivot = uncovered[0];
        for &s in self.sets.iter().filter(|&&s| s >> pivot & 1 == 1) {
            chosen.push(s);
            self.run(covered | s, chosen, global_lb);
            chosen.pop();
        }
    }
}

/// The given separation system, or one row per excluded vertex, followed by
/// the cube relaxation.
pub fn build_binary_relaxation(x: &PointSet, system: Option<&SeparationSystem>, limits: &Limits) -> Result<HPolyhedron> {
    require_binary(x)?;
    let d = x.dim();
    let mut rows = match system {
        Some(s) => {
            s.validate(x, limits)?;
            s.halfspaces.clone()
        }
        None => complement(x, limits)?
            .iter()
            .map(|y| {
                let a = QVector(y.iter().map(|&v| if v == 1 { -Rational::one() } else { Rational::one() }).collect());
                let ones = y.iter().filter(|&&v| v == 1).count() as i64;
                Halfspace::ge(a, int(1 - ones))
            })
            .collect(),
    };
    rows.extend(build_cube_relaxation(d)?.constraints().iter().cloned());
    HPolyhedron::new(d, rows)
}

/// A single halfspace inducing exactly `X` on the cube, from a basic LP
/// solution, or [`Separation::NotSeparable`].
pub fn rationalize_halfspace(x: &PointSet, limits: &Limits) -> Result<Separation> {
    require_binary(x)?;
    let y = complement(x, limits)?;
    if y.is_empty() {
        return Ok(Separation::Separated(Halfspace::le(QVector::unit(x.dim(), 0), Rational::one())));
    }
    strict_separation(x, &y)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertifiedBound {
    pub value: usize,
    pub certified: bool,
    pub reference: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RcBoundReport {
    pub family: FamilyTag,
    pub lower_bound: Option<CertifiedBound>,
    pub upper_bound: Option<CertifiedBound>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub box_search: Option<BoxSearch>,
    pub notes: Vec<String>,
}

fn hiding_for(family: &Family, limits: &Limits) -> Result<Option<(PointSet, String)>> {
    let gadget = |n: usize| (n >= 4 && n % 2 == 0).then(|| n / 2 - 1);
    Ok(match family {
        Family::Basic(BasicFamily::Simplex(d)) if *d >= 2 => Some((build_simplex_hiding(*d)?, "simplex hiding set".into())),
        Family::Basic(BasicFamily::Even(n)) if *n >= 2 => Some((build_parity_hiding(*n, limits)?, format!("odd({n})"))),
        Family::Basic(BasicFamily::Odd(n)) if *n >= 2 => {
            let even = generate_basic(&BasicFamily::Even(*n), limits)?;
            Some((even.with_family(FamilyTag::new("parity-hiding").param("n", *n)), format!("even({n})")))
        }
        Family::Basic(BasicFamily::Perm(n)) if *n >= 4 => Some((build_perm_hiding(*n, limits)?, format!("perm hiding set, n = {n}"))),
        Family::Basic(BasicFamily::Diff { m: 2, n }) => Some((build_diff_hiding(*n, limits)?, format!("duplicated rows, n = {n}"))),
        Family::Graph { kind, n } => match (kind, gadget(*n)) {
            (GraphFamily::Stsp | GraphFamily::Conn, Some(np)) => Some((build_tsp_hiding(np, false)?, format!("tour gadget, N = {np}"))),
            (GraphFamily::Atsp, Some(np)) => Some((build_tsp_hiding(np, true)?, format!("tour gadget, N = {np}"))),
            (GraphFamily::Spt | GraphFamily::Forests, Some(np)) => {
                Some((build_arb_hiding(np, false)?, format!("path gadget, N = {np}")))
            }
            (GraphFamily::Arb { .. } | GraphFamily::Branch { .. }, Some(np)) => {
                Some((build_arb_hiding(np, true)?, format!("path gadget, N = {np}")))
            }
            (GraphFamily::TJoins { t }, _) if n % 2 == 0 => {
                let (h1, h2) = build_tjoin_hiding(*n, t, limits)?;
                if h1.len() >= h2.len() {
                    Some((h1, "T-join family H_1".into()))
                } else {
                    Some((h2, "T-join family H_2".into()))
                }
            }
            _ => None,
        },
        _ => None,
    })
}

fn relaxation_for(family: &Family, x: &PointSet, limits: &Limits) -> Result<(HPolyhedron, String)> {
    Ok(match family {
        Family::Graph { kind: GraphFamily::Stsp, n } => (build_subtour_relaxation(*n, false, limits)?, "subtour relaxation".into()),
        Family::Graph { kind: GraphFamily::Atsp, n } => {
            (build_subtour_relaxation(*n, true, limits)?, "directed subtour relaxation".into())
        }
        Family::Graph { kind: GraphFamily::Conn, n } => (build_conn_cut_relaxation(*n, limits)?, "cut relaxation".into()),
        Family::Basic(BasicFamily::Perm(n)) => (build_rado_permutahedron(*n, limits)?, "subset-sum permutahedron".into()),
        Family::Basic(BasicFamily::Cube(d)) => (build_cube_relaxation(*d)?, "cube relaxation".into()),
        _ => (build_binary_relaxation(x, None, limits)?, "one row per excluded vertex plus cube relaxation".into()),
    })
}

/// Lower and upper bounds on the relaxation complexity of a family, each
/// backed by a construction that is verified when the caps allow it.
pub fn bound_report(family: &Family, search_box: Option<&LatticeBox>, limits: &Limits) -> Result<RcBoundReport> {
    let x = family.generate(limits)?;
    let mut notes = Vec::new();

    let lower_bound = match hiding_for(family, limits)? {
        Some((h, reference)) => {
            let cert = verify_hiding(&h, &x)?;
            if !cert.valid() {
                notes.push(format!("hiding set failed verification: {:?}", cert.failure));
            }
            Some(CertifiedBound { value: cert.bound, certified: cert.valid(), reference })
        }
        None => {
            notes.push(format!("no hiding-set construction for {family}"));
            None
        }
    };

    let (p, reference) = relaxation_for(family, &x, limits)?;
    let work = bounding_box(&p).map(|bx| bx.volume().saturating_mul(p.len() as u128));
    let budget = limits.max_lattice as u128 * 8;
    let certified = match work {
        Ok(w) if w <= budget => match verify_relaxation(&p, &x, limits) {
            Ok(r) => {
                if let Some(f) = &r.failure {
                    notes.push(format!("relaxation failed verification: {f:?}"));
                }
                r.verified()
            }
            Err(Error::TooLarge { .. }) => {
                notes.push("relaxation not verified: lattice enumeration exceeds the cap".into());
                false
            }
            Err(e) => return Err(e),
        },
        Ok(_) => {
            notes.push("relaxation not verified: enumeration work exceeds the budget".into());
            false
        }
        Err(e) => {
            notes.push(format!("relaxation not verified: {e}"));
            false
        }
    };
    let upper_bound = Some(CertifiedBound { value: p.len(), certified, reference });

    let box_search = match search_box {
        Some(bx) => {
            check_dim(x.dim(), bx.dim())?;
            Some(max_hiding_in_box(&x, bx, limits)?)
        }
        None => None,
    };

    Ok(RcBoundReport { family: family.tag(), lower_bound, upper_bound, box_search, notes })
}
