//! Generators for the integer point families studied here.
//!
//! Graph families index coordinates through an [`EdgeIndexer`]: edges
//! `{i,j}` with `i < j` (or arcs `(i,j)` with `i != j`) in lexicographic
//! order. Nodes are labelled `1..=n` in every public interface.

use std::fmt;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::points::{FamilyTag, PointSet};

/// Bijection between coordinates and the edges (or arcs) of a complete graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeIndexer {
    n: usize,
    directed: bool,
    pairs: Vec<(usize, usize)>,
    lookup: Vec<usize>,
}

impl EdgeIndexer {
    pub fn new(n: usize, directed: bool) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameter(format!("graph needs at least 2 nodes, got {n}")));
        }
        let mut pairs = Vec::new();
        let mut lookup = vec![usize::MAX; n * n];
        for i in 0..n {
            for j in 0..n {
                if i == j || (!directed && j < i) {
                    continue;
                }
                lookup[i * n + j] = pairs.len();
                if !directed {
                    lookup[j * n + i] = pairs.len();
                }
                pairs.push((i, j));
            }
        }
        Ok(EdgeIndexer { n, directed, pairs, lookup })
    }

    pub fn nodes(&self) -> usize {
        self.n
    }

    pub fn directed(&self) -> bool {
        self.directed
    }

    pub fn dim(&self) -> usize {
        self.pairs.len()
    }

    /// Coordinate of edge `{i,j}` / arc `(i,j)`, nodes 0-based.
    pub fn index(&self, i: usize, j: usize) -> usize {
        let k = self.lookup[i * self.n + j];
        assert!(k != usize::MAX, "no coordinate for ({i},{j})");
        k
    }

    /// Endpoints of coordinate `k`, nodes 0-based.
    pub fn pair(&self, k: usize) -> (usize, usize) {
        self.pairs[k]
    }

    pub fn legend(&self) -> Vec<String> {
        self.pairs
            .iter()
            .map(|&(i, j)| {
                if self.directed {
                    format!("({},{})", i + 1, j + 1)
                } else {
                    format!("{{{},{}}}", i + 1, j + 1)
                }
            })
            .collect()
    }

    /// Characteristic vector of a set of edges given as a bitmask.
    pub fn vector(&self, mask: u128) -> Vec<i64> {
        (0..self.dim()).map(|k| ((mask >> k) & 1) as i64).collect()
    }

    pub fn mask_of(&self, edges: &[(usize, usize)]) -> u128 {
        edges.iter().fold(0u128, |m, &(i, j)| m | (1u128 << self.index(i, j)))
    }
}

pub fn edge_indexer(n: usize, directed: bool) -> Result<EdgeIndexer> {
    EdgeIndexer::new(n, directed)
}

/// Families whose members are described without a graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BasicFamily {
    Cube(usize),
    Simplex(usize),
    Even(usize),
    Odd(usize),
    Perm(usize),
    Diff { m: usize, n: usize },
}

/// Families of edge sets of the complete graph on `n` nodes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphFamily {
    Stsp,
    Atsp,
    Conn,
    Spt,
    /// Spanning arborescences, rooted anywhere or at the given node.
    Arb { root: Option<usize> },
    Forests,
    /// Branchings; with a root, that node is required to have no entering arc.
    Branch { root: Option<usize> },
    /// `T`-joins for the node subset `t` (1-based labels).
    TJoins { t: Vec<usize> },
}

impl GraphFamily {
    pub fn name(&self) -> &'static str {
        match self {
            GraphFamily::Stsp => "stsp",
            GraphFamily::Atsp => "atsp",
            GraphFamily::Conn => "conn",
            GraphFamily::Spt => "spt",
            GraphFamily::Arb { .. } => "arb",
            GraphFamily::Forests => "forests",
            GraphFamily::Branch { .. } => "branch",
            GraphFamily::TJoins { .. } => "tjoins",
        }
    }

    pub fn directed(&self) -> bool {
        matches!(self, GraphFamily::Atsp | GraphFamily::Arb { .. } | GraphFamily::Branch { .. })
    }
}

/// Any generated family together with its size parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    Basic(BasicFamily),
    Graph { kind: GraphFamily, n: usize },
}

impl Family {
    pub fn generate(&self, limits: &Limits) -> Result<PointSet> {
        match self {
            Family::Basic(b) => generate_basic(b, limits),
            Family::Graph { kind, n } => generate_graph(kind, *n, limits),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Family::Basic(BasicFamily::Cube(_)) => "cube",
            Family::Basic(BasicFamily::Simplex(_)) => "simplex",
            Family::Basic(BasicFamily::Even(_)) => "even",
            Family::Basic(BasicFamily::Odd(_)) => "odd",
            Family::Basic(BasicFamily::Perm(_)) => "perm",
            Family::Basic(BasicFamily::Diff { .. }) => "diff",
            Family::Graph { kind, .. } => kind.name(),
        }
    }

    pub fn tag(&self) -> FamilyTag {
        match self {
            Family::Basic(b) => basic_tag(b),
            Family::Graph { kind, n } => graph_tag(kind, *n),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        let tag = self.tag();
        write!(f, "{}", tag.name)?;
        for (k, v) in &tag.params {
            write!(f, " {k}={v}")?;
        }
        Ok(())
    }
}

fn basic_tag(b: &BasicFamily) -> FamilyTag {
    match *b {
        BasicFamily::Cube(d) => FamilyTag::new("cube").param("d", d),
        BasicFamily::Simplex(d) => FamilyTag::new("simplex").param("d", d),
        BasicFamily::Even(n) => FamilyTag::new("even").param("n", n),
        BasicFamily::Odd(n) => FamilyTag::new("odd").param("n", n),
        BasicFamily::Perm(n) => FamilyTag::new("perm").param("n", n),
        BasicFamily::Diff { m, n } => FamilyTag::new("diff").param("m", m).param("n", n),
    }
}

fn graph_tag(kind: &GraphFamily, n: usize) -> FamilyTag {
    let tag = FamilyTag::new(kind.name()).param("n", n);
    match kind {
        GraphFamily::Arb { root: Some(r) } | GraphFamily::Branch { root: Some(r) } => tag.param("root", *r),
        GraphFamily::TJoins { t } => tag.param("t", t.clone()),
        _ => tag,
    }
}

fn pow2(k: usize) -> u128 {
    if k >= 127 {
        u128::MAX
    } else {
        1u128 << k
    }
}

fn factorial(k: usize) -> u128 {
    (1..=k as u128).try_fold(1u128, |acc, x| acc.checked_mul(x)).unwrap_or(u128::MAX)
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

fn checked_pow(base: usize, exp: usize) -> u128 {
    (0..exp).try_fold(1u128, |acc, _| acc.checked_mul(base as u128)).unwrap_or(u128::MAX)
}

fn positive(name: &str, v: usize) -> Result<()> {
    if v == 0 {
        Err(Error::InvalidParameter(format!("{name} must be at least 1")))
    } else {
        Ok(())
    }
}

fn coordinate_legend(d: usize) -> Vec<String> {
    (1..=d).map(|i| format!("x{i}")).collect()
}

/// Calls `f` with every permutation of `items` in lexicographic order.
pub(crate) fn for_each_permutation(items: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    items.sort_unstable();
    loop {
        f(items);
        // next lexicographic permutation
        let Some(i) = (1..items.len()).rev().find(|&i| items[i - 1] < items[i]) else {
            return;
        };
        let j = (i..items.len()).rev().find(|&j| items[j] > items[i - 1]).unwrap();
        items.swap(i - 1, j);
        items[i..].reverse();
    }
}

/// Calls `f` with every `k`-subset of `0..n` in lexicographic order.
pub(crate) fn for_each_combination(n: usize, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Generates one of the non-graph families, sorted lexicographically.
pub fn generate_basic(family: &BasicFamily, limits: &Limits) -> Result<PointSet> {
    let tag = basic_tag(family);
    let (dim, data) = match *family {
        BasicFamily::Cube(d) | BasicFamily::Even(d) | BasicFamily::Odd(d) => {
            positive("d", d)?;
            limits.check_subsets(&tag.name, pow2(d))?;
            let parity = match family {
                BasicFamily::Even(_) => Some(0),
                BasicFamily::Odd(_) => Some(1),
                _ => None,
            };
            let mut data = Vec::new();
            for mask in 0u64..(1u64 << d) {
                if parity.is_some_and(|p| mask.count_ones() % 2 != p) {
                    continue;
                }
                data.extend((0..d).map(|i| ((mask >> (d - 1 - i)) & 1) as i64));
            }
            (d, data)
        }
        BasicFamily::Simplex(d) => {
            positive("d", d)?;
            limits.check_subsets("simplex", d as u128 + 1)?;
            let mut data = vec![0; d];
            for i in 0..d {
                data.extend((0..d).map(|j| i64::from(i == j)));
            }
            (d, data)
        }
        BasicFamily::Perm(n) => {
            positive("n", n)?;
            limits.check_subsets("perm", factorial(n))?;
            let mut data = Vec::new();
            let mut items: Vec<usize> = (1..=n).collect();
            for_each_permutation(&mut items, &mut |p| data.extend(p.iter().map(|&v| v as i64)));
            (n, data)
        }
        BasicFamily::Diff { m, n } => {
            positive("m", m)?;
            positive("n", n)?;
            limits.check_subsets("diff", pow2(m * n))?;
            let rows = 1usize << n;
            let mut data = Vec::new();
            // ordered choices of m distinct rows
            let mut pick = vec![0usize; m];
            let mut used = vec![false; rows];
            fn rec(level: usize, m: usize, n: usize, pick: &mut Vec<usize>, used: &mut Vec<bool>, data: &mut Vec<i64>) {
                if level == m {
                    for &r in pick.iter() {
                        data.extend((0..n).map(|i| ((r >> (n - 1 - i)) & 1) as i64));
                    }
                    return;
                }
                for r in 0..used.len() {
                    if !used[r] {
                        used[r] = true;
                        pick[level] = r;
                        rec(level + 1, m, n, pick, used, data);
                        used[r] = false;
                    }
                }
            }
            rec(0, m, n, &mut pick, &mut used, &mut data);
            let legend_dim = m * n;
            (legend_dim, data)
        }
    };
    let legend = match *family {
        BasicFamily::Diff { m, n } => (1..=m)
            .flat_map(|r| (1..=n).map(move |c| format!("r{r}c{c}")))
            .collect(),
        _ => coordinate_legend(dim),
    };
    Ok(PointSet::from_flat(dim, data)?.with_family(tag).with_legend(legend))
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false when `a` and `b` were already connected.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

fn connected(idx: &EdgeIndexer, mask: u128) -> bool {
    let mut uf = UnionFind::new(idx.nodes());
    let mut comps = idx.nodes();
    for k in 0..idx.dim() {
        if (mask >> k) & 1 == 1 {
            let (i, j) = idx.pair(k);
            if uf.union(i, j) {
                comps -= 1;
            }
        }
    }
    comps == 1
}

fn acyclic_edges(idx: &EdgeIndexer, edges: &[usize]) -> bool {
    let mut uf = UnionFind::new(idx.nodes());
    edges.iter().all(|&k| {
        let (i, j) = idx.pair(k);
        uf.union(i, j)
    })
}

/// Whether the parent map describes a forest of in-trees (no cycles).
fn parents_acyclic(parent: &[Option<usize>]) -> bool {
    let n = parent.len();
    for start in 0..n {
        let mut v = start;
        let mut steps = 0;
        while let Some(p) = parent[v] {
            v = p;
            steps += 1;
            if steps > n {
                return false;
            }
        }
    }
    true
}

fn node_degrees(idx: &EdgeIndexer, mask: u128) -> Vec<usize> {
    let mut deg = vec![0; idx.nodes()];
    for k in 0..idx.dim() {
        if (mask >> k) & 1 == 1 {
            let (i, j) = idx.pair(k);
            deg[i] += 1;
            deg[j] += 1;
        }
    }
    deg
}

fn check_node(n: usize, v: usize, what: &str) -> Result<usize> {
    if v == 0 || v > n {
        Err(Error::InvalidParameter(format!("{what} node {v} outside 1..={n}")))
    } else {
        Ok(v - 1)
    }
}

/// Validated, 0-based, sorted copy of a `T` node set.
pub(crate) fn normalize_t(n: usize, t: &[usize]) -> Result<Vec<usize>> {
    let mut out = t.iter().map(|&v| check_node(n, v, "T")).collect::<Result<Vec<_>>>()?;
    out.sort_unstable();
    if out.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidParameter("T contains a repeated node".into()));
    }
    if out.len() % 2 == 1 {
        return Err(Error::OddT { size: out.len() });
    }
    Ok(out)
}

/// Generates a graph family on `n` nodes by brute-force enumeration of its
/// defining property.
pub fn generate_graph(kind: &GraphFamily, n: usize, limits: &Limits) -> Result<PointSet> {
    let idx = EdgeIndexer::new(n, kind.directed())?;
    let dim = idx.dim();
    let name = kind.name();
    let candidates = match kind {
        GraphFamily::Stsp | GraphFamily::Atsp => factorial(n - 1),
        GraphFamily::Conn => pow2(dim),
        GraphFamily::Spt => binomial(dim, n - 1),
        GraphFamily::Forests => (0..n).map(|k| binomial(dim, k)).fold(0u128, u128::saturating_add),
        GraphFamily::Arb { root: Some(_) } => checked_pow(n - 1, n - 1),
        GraphFamily::Arb { root: None } => checked_pow(n - 1, n - 1).saturating_mul(n as u128),
        GraphFamily::Branch { root: Some(_) } => checked_pow(n, n - 1),
        GraphFamily::Branch { root: None } => checked_pow(n, n),
        GraphFamily::TJoins { .. } => pow2(dim + 1 - n),
    };
    limits.check_subsets(name, candidates)?;
    if dim > 128 {
        return Err(Error::TooLarge { what: format!("{name} coordinates"), count: dim as u128, cap: 128 });
    }

    let mut masks: Vec<u128> = Vec::new();
    match kind {
        GraphFamily::Stsp | GraphFamily::Atsp => {
            if *kind == GraphFamily::Stsp && n < 3 {
                return Err(Error::InvalidParameter("stsp needs n >= 3".into()));
            }
            let mut rest: Vec<usize> = (1..n).collect();
            for_each_permutation(&mut rest, &mut |p| {
                if *kind == GraphFamily::Stsp && p.len() > 1 && p[0] > p[p.len() - 1] {
                    return;
                }
                let mut tour = Vec::with_capacity(n);
                tour.push(0);
                tour.extend_from_slice(p);
                let edges: Vec<(usize, usize)> = (0..n).map(|i| (tour[i], tour[(i + 1) % n])).collect();
                masks.push(idx.mask_of(&edges));
            });
        }
        GraphFamily::Conn => {
            for mask in 0..pow2(dim) {
                if connected(&idx, mask) {
                    masks.push(mask);
                }
            }
        }
        GraphFamily::Spt => {
            for_each_combination(dim, n - 1, &mut |c| {
                if acyclic_edges(&idx, c) {
                    masks.push(c.iter().fold(0u128, |m, &k| m | (1u128 << k)));
                }
            });
        }
        GraphFamily::Forests => {
            for k in 0..n {
                for_each_combination(dim, k, &mut |c| {
                    if acyclic_edges(&idx, c) {
                        masks.push(c.iter().fold(0u128, |m, &k| m | (1u128 << k)));
                    }
                });
            }
        }
        GraphFamily::Arb { root } | GraphFamily::Branch { root } => {
            let spanning = matches!(kind, GraphFamily::Arb { .. });
            let fixed = root.map(|r| check_node(n, r, "root")).transpose()?;
            let mut parent: Vec<Option<usize>> = vec![None; n];
            enumerate_parents(0, n, spanning, fixed, &mut parent, &mut |parent| {
                let edges: Vec<(usize, usize)> =
                    (0..n).filter_map(|v| parent[v].map(|p| (p, v))).collect();
                masks.push(idx.mask_of(&edges));
            });
        }
        GraphFamily::TJoins { t } => {
            let t0 = normalize_t(n, t)?;
            let mut odd = vec![false; n];
            for &v in &t0 {
                odd[v] = true;
            }
            let base = idx.mask_of(&t0.chunks(2).map(|c| (c[0], c[1])).collect::<Vec<_>>());
            // fundamental cycles of the star at node 1
            let cycles: Vec<u128> = (1..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .map(|(i, j)| idx.mask_of(&[(0, i), (i, j), (0, j)]))
                .collect();
            let mut mask = base;
            for step in 0..pow2(cycles.len()) {
                if step > 0 {
                    mask ^= cycles[step.trailing_zeros() as usize];
                }
                let deg = node_degrees(&idx, mask);
                if deg.iter().zip(&odd).all(|(d, &o)| (d % 2 == 1) == o) {
                    masks.push(mask);
                }
            }
        }
    }

    let mut data = Vec::with_capacity(masks.len() * dim);
    for m in masks {
        data.extend((0..dim).map(|k| ((m >> k) & 1) as i64));
    }
    Ok(PointSet::from_flat(dim, data)?
        .with_family(graph_tag(kind, n))
        .with_legend(idx.legend()))
}

/// Enumerates parent maps: each node picks a parent or none. For spanning
/// arborescences exactly one node (the root) has no parent.
fn enumerate_parents(
    v: usize,
    n: usize,
    spanning: bool,
    root: Option<usize>,
    parent: &mut Vec<Option<usize>>,
    emit: &mut dyn FnMut(&[Option<usize>]),
) {
    if v == n {
        let roots = parent.iter().filter(|p| p.is_none()).count();
        if (!spanning || roots == 1) && parents_acyclic(parent) {
            emit(parent);
        }
        return;
    }
    let roots_so_far = parent[..v].iter().filter(|p| p.is_none()).count();
    let none_allowed = match root {
        Some(r) => v == r,
        None => !spanning || roots_so_far == 0,
    };
    if none_allowed {
        parent[v] = None;
        enumerate_parents(v + 1, n, spanning, root, parent, emit);
    }
    if root != Some(v) {
        for p in (0..n).filter(|&p| p != v) {
            parent[v] = Some(p);
            enumerate_parents(v + 1, n, spanning, root, parent, emit);
        }
    }
    parent[v] = None;
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lim() -> Limits {
        Limits::default()
    }

    fn ones(p: &[i64]) -> i64 {
        p.iter().sum()
    }

    #[test]
    fn indexer_orders() {
        let u = edge_indexer(3, false).unwrap();
        assert_eq!(u.dim(), 3);
        assert_eq!(u.legend(), vec!["{1,2}", "{1,3}", "{2,3}"]);
        assert_eq!(u.index(2, 0), 1);
        assert_eq!(edge_indexer(3, true).unwrap().dim(), 6);
        assert_eq!(edge_indexer(4, false).unwrap().dim(), 6);
        assert!(edge_indexer(1, false).is_err());
        let d = edge_indexer(4, true).unwrap();
        for k in 0..d.dim() {
            let (i, j) = d.pair(k);
            assert_eq!(d.index(i, j), k);
        }
    }

    #[test]
    fn basic_counts() {
        assert_eq!(generate_basic(&BasicFamily::Even(3), &lim()).unwrap().len(), 4);
        assert_eq!(generate_basic(&BasicFamily::Odd(3), &lim()).unwrap().len(), 4);
        let perm = generate_basic(&BasicFamily::Perm(3), &lim()).unwrap();
        assert_eq!(perm.len(), 6);
        for p in perm.iter() {
            let mut s = p.to_vec();
            s.sort();
            assert_eq!(s, vec![1, 2, 3]);
        }
        let diff = generate_basic(&BasicFamily::Diff { m: 2, n: 1 }, &lim()).unwrap();
        assert_eq!(diff.to_vecs(), vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(generate_basic(&BasicFamily::Diff { m: 2, n: 2 }, &lim()).unwrap().len(), 12);
        let simplex = generate_basic(&BasicFamily::Simplex(2), &lim()).unwrap();
        assert_eq!(simplex.to_vecs(), vec![vec![0, 0], vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn cap_guard() {
        let err = generate_graph(&GraphFamily::Stsp, 99, &lim()).unwrap_err();
        assert!(matches!(err, Error::TooLarge { .. }));
        let err = generate_basic(&BasicFamily::Cube(30), &lim()).unwrap_err();
        assert!(matches!(err, Error::TooLarge { .. }));
    }

    #[test]
    fn graph_counts() {
        assert_eq!(generate_graph(&GraphFamily::Stsp, 5, &lim()).unwrap().len(), 12);
        assert_eq!(generate_graph(&GraphFamily::Atsp, 4, &lim()).unwrap().len(), 6);
        assert_eq!(generate_graph(&GraphFamily::Spt, 4, &lim()).unwrap().len(), 16);
        assert_eq!(generate_graph(&GraphFamily::Conn, 4, &lim()).unwrap().len(), 38);
        // n^(n-1) arborescences rooted anywhere, n^(n-2) per root
        assert_eq!(generate_graph(&GraphFamily::Arb { root: None }, 4, &lim()).unwrap().len(), 64);
        assert_eq!(generate_graph(&GraphFamily::Arb { root: Some(2) }, 4, &lim()).unwrap().len(), 16);
        // rooted forests on n labelled nodes: (n+1)^(n-1)
        assert_eq!(generate_graph(&GraphFamily::Branch { root: None }, 4, &lim()).unwrap().len(), 125);
        // forests of K4
        assert_eq!(generate_graph(&GraphFamily::Forests, 4, &lim()).unwrap().len(), 38);
    }

    #[test]
    fn stsp_inside_conn() {
        let stsp = generate_graph(&GraphFamily::Stsp, 5, &lim()).unwrap();
        let conn = generate_graph(&GraphFamily::Conn, 5, &lim()).unwrap();
        for p in stsp.iter() {
            assert!(conn.contains(p));
            assert_eq!(ones(p), 5);
        }
    }

    #[test]
    fn trees_are_full_forests() {
        for n in 3..=4 {
            let spt = generate_graph(&GraphFamily::Spt, n, &lim()).unwrap();
            let forests = generate_graph(&GraphFamily::Forests, n, &lim()).unwrap();
            let full: Vec<&[i64]> = forests.iter().filter(|p| ones(p) == n as i64 - 1).collect();
            assert_eq!(spt.iter().collect::<Vec<_>>(), full);

            let arb = generate_graph(&GraphFamily::Arb { root: None }, n, &lim()).unwrap();
            let branch = generate_graph(&GraphFamily::Branch { root: None }, n, &lim()).unwrap();
            let full: Vec<&[i64]> = branch.iter().filter(|p| ones(p) == n as i64 - 1).collect();
            assert_eq!(arb.iter().collect::<Vec<_>>(), full);
        }
    }

    #[test]
    fn tjoins_degrees() {
        let empty = generate_graph(&GraphFamily::TJoins { t: vec![] }, 4, &lim()).unwrap();
        assert!(empty.contains(&[0; 6]));
        // cycle space of K4 has dimension 3
        assert_eq!(empty.len(), 8);
        let kind = GraphFamily::TJoins { t: vec![1, 3] };
        let joins = generate_graph(&kind, 5, &lim()).unwrap();
        assert_eq!(joins.len(), 64);
        let idx = edge_indexer(5, false).unwrap();
        for p in joins.iter() {
            let mut deg = [0; 5];
            for (k, &x) in p.iter().enumerate() {
                if x == 1 {
                    let (i, j) = idx.pair(k);
                    deg[i] += 1;
                    deg[j] += 1;
                }
            }
            let odd: Vec<usize> = (0..5).filter(|&v| deg[v] % 2 == 1).map(|v| v + 1).collect();
            assert_eq!(odd, vec![1, 3]);
        }
        assert_eq!(
            generate_graph(&GraphFamily::TJoins { t: vec![1, 2, 3] }, 4, &lim()).unwrap_err(),
            Error::OddT { size: 3 }
        );
    }

    #[test]
    fn parity_sizes() {
        for n in 1..=6 {
            let even = generate_basic(&BasicFamily::Even(n), &lim()).unwrap();
            let odd = generate_basic(&BasicFamily::Odd(n), &lim()).unwrap();
            assert_eq!(even.len(), 1 << (n - 1));
            assert_eq!(odd.len(), 1 << (n - 1));
        }
    }
}
