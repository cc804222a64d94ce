//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Every expected value is recomputed here by an independent route
//! (brute-force enumeration, structural graph checks, exact re-verification)
//! rather than read back from the library.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rcx_core::arith::QVector;
use rcx_core::families::{BasicFamily, Family, GraphFamily};
use rcx_core::hiding::{
    build_arb_hiding, build_diff_hiding, build_parity_hiding, build_perm_hiding, build_simplex_hiding,
    build_tjoin_hiding, build_tsp_hiding, gadget_arcs, max_hiding_in_box, verify_hiding,
};
use rcx_core::lattice::{enumerate_lattice_in_box, LatticeBox};
use rcx_core::lp::{recession_nontrivial, HPolyhedron, Halfspace, LinearProgram, LpOutcome, Sense, Separation};
use rcx_core::relax::{
    build_cube_relaxation, build_rado_permutahedron, build_subtour_relaxation, enumerate_lattice, irredundant_count,
    verify_relaxation, RelaxationFailure,
};
use rcx_core::sepindex::{jeroslow_index, rationalize_halfspace};
use rcx_core::{Limits, PointSet};

type Q = BigRational;

fn q(v: i64) -> Q {
    Q::from_integer(BigInt::from(v))
}

fn lim() -> Limits {
    Limits::default()
}

fn basic(b: BasicFamily) -> PointSet {
    Family::Basic(b).generate(&lim()).unwrap()
}

fn graph(kind: GraphFamily, n: usize) -> PointSet {
    Family::Graph { kind, n }.generate(&lim()).unwrap()
}

fn within(start: Instant, budget: Duration, what: &str) -> Result<String, String> {
    let t = start.elapsed();
    if t <= budget {
        Ok(format!("{what}; {:.2}s", t.as_secs_f64()))
    } else {
        Err(format!("{what}, but took {:.2}s (budget {}s)", t.as_secs_f64(), budget.as_secs()))
    }
}

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

/// Every `{0,1}^d` vector in lexicographic order.
fn cube_points(d: usize) -> Vec<Vec<i64>> {
    (0..1u32 << d).map(|m| (0..d).map(|i| (m >> (d - 1 - i) & 1) as i64).collect()).collect()
}

fn row_holds(h: &Halfspace, x: &[i64]) -> bool {
    let v = h.a.iter().zip(x).fold(Q::zero(), |acc, (a, &xi)| acc + a * q(xi));
    match h.sense {
        Sense::Le => v <= h.rhs,
        Sense::Ge => v >= h.rhs,
        Sense::Eq => v == h.rhs,
    }
}

fn criterion_1() -> Result<String, String> {
    let start = Instant::now();
    for d in 1..=6 {
        let p = build_cube_relaxation(d).unwrap();
        ensure!(p.len() == d + 1, "d={d}: {} rows", p.len());
        let r = verify_relaxation(&p, &basic(BasicFamily::Cube(d)), &lim()).unwrap();
        ensure!(r.verified() && r.lattice_count == Some(1 << d), "d={d}: {:?}", r);
    }
    let mut drops = 0;
    for d in 1..=4 {
        let p = build_cube_relaxation(d).unwrap();
        let bx = LatticeBox::uniform(d, -8, 8).unwrap();
        let cube: BTreeSet<Vec<i64>> = cube_points(d).into_iter().collect();
        for i in 0..p.len() {
            let q = p.without_row(i);
            let pts = enumerate_lattice_in_box(&q, &bx, &lim()).unwrap();
            let extra = pts.iter().find(|x| !cube.contains(*x)).map(<[i64]>::to_vec);
            ensure!(extra.is_some(), "d={d}: dropping row {i} still leaves only the cube in the box");
            let x = extra.unwrap();
            ensure!(q.constraints().iter().all(|h| row_holds(h, &x)), "witness {x:?} fails a kept row");
            ensure!(bx.contains(&x), "witness outside the box");
            drops += 1;
        }
    }
    within(start, Duration::from_secs(10), &format!("d=1..6 verified, {drops} single-row drops each admit an extra point"))
}

fn criterion_2() -> Result<String, String> {
    let start = Instant::now();
    let mut values = Vec::new();
    for n in 2..=4 {
        let x = basic(BasicFamily::Even(n));
        let r = jeroslow_index(&x, &lim()).unwrap();
        ensure!(r.k == 1 << (n - 1), "n={n}: index {} != {}", r.k, 1 << (n - 1));
        for y in cube_points(n) {
            let inside = r.system.halfspaces.iter().all(|h| row_holds(h, &y));
            ensure!(inside == x.contains(&y), "n={n}: system misclassifies {y:?}");
        }
        values.push(r.k);
    }
    within(start, Duration::from_secs(60), &format!("indices {values:?}"))
}

fn criterion_3() -> Result<String, String> {
    let start = Instant::now();
    let mut cases: Vec<(String, PointSet, PointSet, usize)> = vec![(
        "simplex hiding vs simplex(2)".into(),
        build_simplex_hiding(2).unwrap(),
        basic(BasicFamily::Simplex(2)),
        3,
    )];
    for (np, bound) in [(1, 1), (2, 2), (3, 4)] {
        cases.push((format!("tsp N={np} vs atsp"), build_tsp_hiding(np, true).unwrap(), graph(GraphFamily::Atsp, 2 * np + 2), bound));
    }
    for (np, bound) in [(2, 2), (3, 4)] {
        cases.push((format!("tsp N={np} vs stsp"), build_tsp_hiding(np, false).unwrap(), graph(GraphFamily::Stsp, 2 * np + 2), bound));
    }
    for (np, bound) in [(1, 1), (2, 2)] {
        cases.push((
            format!("arb N={np} vs arb"),
            build_arb_hiding(np, true).unwrap(),
            graph(GraphFamily::Arb { root: None }, 2 * np + 2),
            bound,
        ));
        cases.push((format!("arb N={np} vs spt"), build_arb_hiding(np, false).unwrap(), graph(GraphFamily::Spt, 2 * np + 2), bound));
    }
    for (n, bound) in [(1, 2), (2, 4), (3, 8)] {
        cases.push((format!("diff n={n}"), build_diff_hiding(n, &lim()).unwrap(), basic(BasicFamily::Diff { m: 2, n }), bound));
    }
    for (n, bound) in [(4, 6), (5, 10)] {
        cases.push((format!("perm n={n}"), build_perm_hiding(n, &lim()).unwrap(), basic(BasicFamily::Perm(n)), bound));
    }
    let t = vec![1, 2, 3, 4];
    let (h1, h2) = build_tjoin_hiding(8, &t, &lim()).unwrap();
    let tj = graph(GraphFamily::TJoins { t }, 8);
    cases.push(("tjoin H_1".into(), h1, tj.clone(), 2));
    cases.push(("tjoin H_2".into(), h2, tj, 2));
    for (n, bound) in [(2, 2), (3, 4), (4, 8)] {
        cases.push((format!("odd vs even n={n}"), build_parity_hiding(n, &lim()).unwrap(), basic(BasicFamily::Even(n)), bound));
    }
    let check = |h: &PointSet, x: &PointSet, bound: usize| -> Result<(), String> {
        ensure!(h.len() == bound, "|H| = {} != {bound}", h.len());
        let cert = verify_hiding(h, x).unwrap();
        ensure!(cert.valid(), "{:?}", cert.failure.unwrap());
        ensure!(cert.lower_bound() == Some(bound), "bound {:?}", cert.lower_bound());
        ensure!(cert.pairs.len() == bound * (bound - 1) / 2, "pair count");
        for pc in &cert.pairs {
            let t = pc.t.clone().unwrap();
            ensure!(!t.is_negative() && t <= q(1), "segment parameter {t} out of range");
        }
        Ok(())
    };
    let failures: Vec<String> =
        cases.iter().filter_map(|(name, h, x, bound)| check(h, x, *bound).err().map(|e| format!("{name}: {e}"))).collect();
    ensure!(failures.is_empty(), "{} of {} cases failed: {}", failures.len(), cases.len(), failures.join("; "));
    within(start, Duration::from_secs(300), &format!("{} certificates valid", cases.len()))
}

fn criterion_4() -> Result<String, String> {
    let start = Instant::now();
    let s2 = basic(BasicFamily::Simplex(2));
    let r2 = max_hiding_in_box(&s2, &LatticeBox::uniform(2, -3, 3).unwrap(), &lim()).unwrap();
    ensure!(r2.size == 3, "simplex(2) box max {}", r2.size);
    ensure!(verify_hiding(&r2.witness, &s2).unwrap().valid(), "simplex(2) witness invalid");
    let s3 = basic(BasicFamily::Simplex(3));
    let r3 = max_hiding_in_box(&s3, &LatticeBox::uniform(3, -2, 2).unwrap(), &lim()).unwrap();
    ensure!(r3.size <= 3, "simplex(3) box max {}", r3.size);
    within(start, Duration::from_secs(300), &format!("max sizes {} and {} over {} and {} candidates", r2.size, r3.size, r2.candidates, r3.candidates))
}

/// Hamiltonian cycles of `K_n` as sorted edge-incidence vectors, from
/// permutations fixing node 0.
fn tours(n: usize) -> BTreeSet<Vec<i64>> {
    let idx = |i: usize, j: usize| {
        let (a, b) = (i.min(j), i.max(j));
        (0..a).map(|r| n - 1 - r).sum::<usize>() + (b - a - 1)
    };
    let mut out = BTreeSet::new();
    let mut rest: Vec<usize> = (1..n).collect();
    permute(&mut rest, 0, &mut |p| {
        let mut x = vec![0; n * (n - 1) / 2];
        let mut prev = 0;
        for &v in p.iter().chain(std::iter::once(&0)) {
            x[idx(prev, v)] = 1;
            prev = v;
        }
        out.insert(x);
    });
    out
}

fn permute(items: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == items.len() {
        f(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, f);
        items.swap(k, i);
    }
}

fn criterion_5() -> Result<String, String> {
    let start = Instant::now();
    let mut counts = Vec::new();
    for (n, expected) in [(4, 3), (5, 12), (6, 60)] {
        let pts = enumerate_lattice(&build_subtour_relaxation(n, false, &lim()).unwrap(), &lim()).unwrap();
        let oracle = tours(n);
        ensure!(oracle.len() == expected, "oracle count {} for n={n}", oracle.len());
        let got: BTreeSet<Vec<i64>> = pts.iter().map(<[i64]>::to_vec).collect();
        ensure!(got == oracle, "n={n}: lattice points differ from the tour oracle ({} vs {})", got.len(), oracle.len());
        ensure!(graph(GraphFamily::Stsp, n).to_vecs().into_iter().collect::<BTreeSet<_>>() == oracle, "stsp({n}) differs");
        counts.push(got.len());
    }
    within(start, Duration::from_secs(120), &format!("lattice counts {counts:?}"))
}

/// Rank of an integer matrix by fraction-free elimination.
fn rank(mut m: Vec<Vec<BigInt>>) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let (a, b) = (m[r][c].clone(), m[i][c].clone());
                for j in 0..cols {
                    m[i][j] = &m[i][j] * &a - &m[r][j] * &b;
                }
            }
        }
        r += 1;
    }
    r
}

/// Rows of `p` whose tight permutations span a facet of the permutahedron.
fn facet_rows(p: &HPolyhedron, n: usize) -> usize {
    let mut perms = Vec::new();
    let mut items: Vec<usize> = (1..=n).collect();
    permute(&mut items, 0, &mut |s| perms.push(s.iter().map(|&v| v as i64).collect::<Vec<i64>>()));
    p.constraints()
        .iter()
        .filter(|h| h.sense != Sense::Eq)
        .filter(|h| {
            let tight: Vec<&Vec<i64>> = perms.iter().filter(|x| h.a.iter().zip(x.iter()).fold(Q::zero(), |s, (a, &v)| s + a * q(v)) == h.rhs).collect();
            if tight.len() < n - 1 {
                return false;
            }
            let base = tight[0];
            let diffs = tight[1..].iter().map(|x| x.iter().zip(base).map(|(a, b)| BigInt::from(a - b)).collect()).collect();
            rank(diffs) == n - 2
        })
        .count()
}

fn criterion_6() -> Result<String, String> {
    let mut counts = Vec::new();
    for n in [3, 4] {
        let p = build_rado_permutahedron(n, &lim()).unwrap();
        let r = verify_relaxation(&p, &basic(BasicFamily::Perm(n)), &lim()).unwrap();
        ensure!(r.verified(), "n={n}: {:?}", r.failure);
        let irr = irredundant_count(&p).unwrap();
        let expected = (1 << n) - 2;
        ensure!(irr.inequalities == expected, "n={n}: {} irredundant rows", irr.inequalities);
        ensure!(irr.equalities == 1, "n={n}: {} equalities", irr.equalities);
        let facets = facet_rows(&p, n);
        ensure!(facets == expected, "n={n}: facet oracle counts {facets}");
        counts.push(irr.inequalities);
    }
    Ok(format!("verified n=3,4; irredundant rows {counts:?}"))
}

fn arc_vector(b: &[bool], n_nodes: usize) -> Vec<i64> {
    let mut x = vec![0; n_nodes * n_nodes];
    for (i, j) in gadget_arcs(b, true) {
        x[i * n_nodes + j] += 1;
    }
    x
}

fn bits(mask: u32, len: usize) -> Vec<bool> {
    (0..len).map(|i| mask >> i & 1 == 1).collect()
}

fn criterion_7() -> Result<String, String> {
    let mut checked = 0;
    for np in 1..=4 {
        let nodes = 2 * (np + 1);
        let evens: Vec<u32> = (0..1u32 << np).filter(|m| m.count_ones() % 2 == 0).collect();
        for &b in &evens {
            for &b2 in &evens {
                if b == b2 {
                    continue;
                }
                for j in (0..np).filter(|&j| (b >> j & 1) != (b2 >> j & 1)) {
                    let (c, c2) = (b ^ 1 << j, b2 ^ 1 << j);
                    ensure!(c.count_ones() % 2 == 1 && c2.count_ones() % 2 == 1, "parity of c, c' for b={b:b}, b'={b2:b}");
                    let lhs: Vec<i64> = arc_vector(&bits(b, np), nodes).iter().zip(arc_vector(&bits(b2, np), nodes)).map(|(x, y)| x + y).collect();
                    let rhs: Vec<i64> = arc_vector(&bits(c, np), nodes).iter().zip(arc_vector(&bits(c2, np), nodes)).map(|(x, y)| x + y).collect();
                    ensure!(lhs == rhs, "identity fails for N={np}, b={b:b}, b'={b2:b}, j={j}");
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} (b, b', j) triples"))
}

/// Directed hamiltonian cycle test by walking successors.
fn is_hamiltonian(arcs: &[(usize, usize)], nodes: usize) -> bool {
    let mut succ = vec![None; nodes];
    let mut indeg = vec![0; nodes];
    for &(i, j) in arcs {
        if succ[i].is_some() {
            return false;
        }
        succ[i] = Some(j);
        indeg[j] += 1;
    }
    if arcs.len() != nodes || indeg.iter().any(|&d| d != 1) {
        return false;
    }
    let mut v = 0;
    for step in 1..=nodes {
        v = succ[v].unwrap();
        if v == 0 {
            return step == nodes;
        }
    }
    false
}

fn criterion_8() -> Result<String, String> {
    let mut checked = 0;
    for np in 1..=5 {
        for m in 0..1u32 << np {
            let arcs = gadget_arcs(&bits(m, np), true);
            ensure!(arcs.len() == 2 * (np + 1), "arc count for N={np}");
            let odd = m.count_ones() % 2 == 1;
            ensure!(is_hamiltonian(&arcs, 2 * (np + 1)) == odd, "N={np}, b={m:b}: hamiltonicity disagrees with parity");
            checked += 1;
        }
    }
    Ok(format!("{checked} vectors b"))
}

fn criterion_9() -> Result<String, String> {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0009);
    let cube = cube_points(4);
    let mut done = 0;
    while done < 200 {
        let a: Vec<i64> = (0..4).map(|_| rng.gen_range(-5..=5)).collect();
        let g: i64 = rng.gen_range(-6..=6);
        let pts: Vec<Vec<i64>> = cube.iter().filter(|x| x.iter().zip(&a).map(|(u, v)| u * v).sum::<i64>() <= g).cloned().collect();
        if pts.is_empty() {
            continue;
        }
        let x = PointSet::new(4, pts).unwrap();
        let Separation::Separated(h) = rationalize_halfspace(&x, &lim()).unwrap() else {
            return Err(format!("separable set from a={a:?}, g={g} reported not separable"));
        };
        for y in &cube {
            ensure!(row_holds(&h, y) == x.contains(y), "{h} misclassifies {y:?}");
            if !x.contains(y) {
                let lhs = h.a.iter().zip(y).fold(Q::zero(), |s, (c, &v)| s + c * q(v));
                ensure!(lhs >= &h.rhs + q(1), "{h} separates {y:?} by less than one");
            }
        }
        done += 1;
    }
    let even2 = basic(BasicFamily::Even(2));
    ensure!(rationalize_halfspace(&even2, &lim()).unwrap() == Separation::NotSeparable, "even(2) separated");
    within(start, Duration::from_secs(30), "200 random separable sets reproduced; even(2) not separable")
}

fn criterion_10() -> Result<String, String> {
    let e = |i| QVector::unit(2, i);
    let orthant = HPolyhedron::new(2, vec![Halfspace::ge(e(0), q(0)), Halfspace::ge(e(1), q(0))]).unwrap();
    let r = verify_relaxation(&orthant, &basic(BasicFamily::Simplex(2)), &lim()).unwrap();
    let Some(RelaxationFailure::UnboundedWithFiniteX(ray)) = r.failure else {
        return Err(format!("orthant report {:?}", r.failure));
    };
    ensure!(!ray.is_zero(), "zero ray");
    ensure!(orthant.constraints().iter().all(|h| h.a.dot(&ray) >= Q::zero()), "ray {ray} leaves the orthant");
    for d in 1..=6 {
        ensure!(recession_nontrivial(&build_cube_relaxation(d).unwrap()).is_none(), "d={d} cube relaxation recedes");
    }
    Ok(format!("ray witness {ray}; cube relaxations d=1..6 bounded"))
}

/// Dual and Farkas conditions recomputed from the raw data.
fn certificate_holds(lp: &LinearProgram, out: &LpOutcome) -> bool {
    let s = if lp.maximize { q(1) } else { q(-1) };
    let signs = |y: &QVector| {
        lp.constraints.iter().zip(y.iter()).all(|(h, yi)| match h.sense {
            Sense::Le => !yi.is_negative(),
            Sense::Ge => !yi.is_positive(),
            Sense::Eq => true,
        })
    };
    let col = |y: &QVector, j: usize| lp.constraints.iter().zip(y.iter()).fold(Q::zero(), |acc, (h, yi)| acc + &h.a[j] * yi);
    let rhs = |y: &QVector| lp.constraints.iter().zip(y.iter()).fold(Q::zero(), |acc, (h, yi)| acc + &h.rhs * yi);
    let n = lp.objective.len();
    match out {
        LpOutcome::Optimal { value, point, dual } => {
            let feasible = lp.constraints.iter().all(|h| {
                let v = h.a.dot(point);
                match h.sense {
                    Sense::Le => v <= h.rhs,
                    Sense::Ge => v >= h.rhs,
                    Sense::Eq => v == h.rhs,
                }
            }) && (0..n).all(|j| !lp.nonneg[j] || !point[j].is_negative());
            let dual_ok = (0..n).all(|j| {
                let target = &lp.objective[j] * &s;
                if lp.nonneg[j] {
                    col(dual, j) >= target
                } else {
                    col(dual, j) == target
                }
            });
            feasible && signs(dual) && dual_ok && lp.objective.dot(point) == *value && rhs(dual) == value * &s
        }
        LpOutcome::Infeasible { farkas } => {
            signs(farkas)
                && (0..n).all(|j| if lp.nonneg[j] { !col(farkas, j).is_negative() } else { col(farkas, j).is_zero() })
                && rhs(farkas).is_negative()
        }
        LpOutcome::Unbounded { .. } => true,
    }
}

fn criterion_11() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0011);
    let (mut optimal, mut infeasible, mut unbounded) = (0, 0, 0);
    for case in 0..1000 {
        let n = rng.gen_range(1..=4);
        let m = rng.gen_range(1..=5);
        let constraints: Vec<Halfspace> = (0..m)
            .map(|_| {
                let a = QVector((0..n).map(|_| q(rng.gen_range(-4..=4))).collect());
                let sense = [Sense::Le, Sense::Ge, Sense::Eq][rng.gen_range(0..3)];
                let rhs = Q::new(BigInt::from(rng.gen_range(-6..=6)), BigInt::from(rng.gen_range(1..=3)));
                Halfspace::new(a, sense, rhs)
            })
            .collect();
        let lp = LinearProgram {
            objective: QVector((0..n).map(|_| q(rng.gen_range(-3..=3))).collect()),
            maximize: rng.gen_bool(0.5),
            constraints,
            nonneg: (0..n).map(|_| rng.gen_bool(0.5)).collect(),
        };
        let out = lp.solve();
        ensure!(certificate_holds(&lp, &out), "case {case}: certificate rejected by the oracle: {out:?}");
        match out {
            LpOutcome::Optimal { .. } => optimal += 1,
            LpOutcome::Infeasible { .. } => infeasible += 1,
            LpOutcome::Unbounded { .. } => unbounded += 1,
        }
    }
    ensure!(optimal > 0 && infeasible > 0, "degenerate sample: {optimal} optimal, {infeasible} infeasible");
    Ok(format!("{optimal} optimal and {infeasible} infeasible certificates verified ({unbounded} unbounded)"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Result<String, String>); 11] = [
        ("cube relaxation", criterion_1),
        ("separation index of even(n)", criterion_2),
        ("hiding-set certificates", criterion_3),
        ("maximum hiding set for the simplex", criterion_4),
        ("subtour relaxation lattice points", criterion_5),
        ("permutahedron relaxation and facets", criterion_6),
        ("gadget pairing identity", criterion_7),
        ("gadget parity and hamiltonicity", criterion_8),
        ("halfspace rationalization", criterion_9),
        ("unboundedness guard", criterion_10),
        ("LP certificate self-consistency", criterion_11),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let label = format!("criterion {:>2}", i + 1);
        if !filter.is_empty() && !filter.iter().any(|f| label.contains(f.as_str()) || name.contains(f.as_str())) {
            continue;
        }
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        match outcome {
            Ok(detail) => println!("{label} PASS  {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("{label} FAIL  {name}: {detail}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
