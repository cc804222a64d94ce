//! Hiding-set constructions, their verification, and exact box search.

use serde::Serialize;

use crate::arith::{affine_hull, QVector, Rational};
use crate::clique::Graph;
use crate::error::{check_dim, Error, Result};
use crate::families::{for_each_combination, generate_basic, normalize_t, BasicFamily, EdgeIndexer};
use crate::lattice::LatticeBox;
use crate::limits::Limits;
use crate::lp::{conv_membership, segment_hits_hull};
use crate::points::{FamilyTag, PointSet};

/// Arcs of the gadget `E_b` on `2(N+1)` nodes, 0-based: `v_i` is node
/// `i - 1` and `w_i` is node `N + i`. Position `i` contributes
/// `(v_i, v_{i+1}), (w_i, w_{i+1})` when `b_i = 0` and the crossed pair
/// `(v_i, w_{i+1}), (w_i, v_{i+1})` when `b_i = 1`.
pub fn gadget_arcs(b: &[bool], close_w: bool) -> Vec<(usize, usize)> {
    let n = b.len();
    let v = |i: usize| i - 1;
    let w = |i: usize| n + i;
    let mut arcs = vec![(v(n + 1), v(1))];
    if close_w {
        arcs.push((w(n + 1), w(1)));
    }
    for (k, &bit) in b.iter().enumerate() {
        let i = k + 1;
        if bit {
            arcs.push((v(i), w(i + 1)));
            arcs.push((w(i), v(i + 1)));
        } else {
            arcs.push((v(i), v(i + 1)));
            arcs.push((w(i), w(i + 1)));
        }
    }
    arcs
}

fn bits(mask: u64, len: usize) -> Vec<bool> {
    (0..len).map(|i| mask >> (len - 1 - i) & 1 == 1).collect()
}

/// Incidence vector of an arc list; undirected mode adds up both
/// orientations on the same edge.
fn arc_vector(ix: &EdgeIndexer, arcs: &[(usize, usize)]) -> Vec<i64> {
    let mut x = vec![0; ix.dim()];
    for &(i, j) in arcs {
        let k = if ix.directed() { ix.index(i, j) } else { ix.index(i.min(j), i.max(j)) };
        x[k] += 1;
    }
    x
}

fn gadget_set(n_pos: usize, directed: bool, close_w: bool, name: &str) -> Result<PointSet> {
    if n_pos == 0 || n_pos > 62 {
        return Err(Error::InvalidParameter(format!("{name} hiding set needs 1 <= N <= 62, got {n_pos}")));
    }
    let ix = EdgeIndexer::new(2 * (n_pos + 1), directed)?;
    let mut pts = Vec::new();
    for mask in 0..1u64 << n_pos {
        if mask.count_ones() % 2 == 0 {
            pts.push(arc_vector(&ix, &gadget_arcs(&bits(mask, n_pos), close_w)));
        }
    }
    let tag = FamilyTag::new(name).param("N", n_pos).param("directed", directed);
    Ok(PointSet::new(ix.dim(), pts)?.with_family(tag).with_legend(ix.legend()))
}

/// `{χ(E_b) : b even}` for the tour families.
pub fn build_tsp_hiding(n_pos: usize, directed: bool) -> Result<PointSet> {
    gadget_set(n_pos, directed, true, "tsp-hiding")
}

/// The tour gadget with the closing arc `(w_{N+1}, w_1)` removed.
pub fn build_arb_hiding(n_pos: usize, directed: bool) -> Result<PointSet> {
    gadget_set(n_pos, directed, false, "arb-hiding")
}

/// All duplicated rows `(x, x)` with `x ∈ {0,1}^n`, flattened row by row.
pub fn build_diff_hiding(n: usize, limits: &Limits) -> Result<PointSet> {
    let cube = generate_basic(&BasicFamily::Cube(n), limits)?;
    let pts = cube.iter().map(|x| x.iter().chain(x).copied().collect()).collect();
    Ok(PointSet::new(2 * n, pts)?.with_family(FamilyTag::new("diff-hiding").param("n", n)))
}

/// One vector `x^S` per subset `S` of size `m = ⌊n/2⌋`.
pub fn build_perm_hiding(n: usize, limits: &Limits) -> Result<PointSet> {
    if n < 4 {
        return Err(Error::InvalidParameter(format!("perm hiding set needs n >= 4, got {n}")));
    }
    let m = n / 2;
    limits.check_subsets("perm hiding subsets", binomial(n, m))?;
    let mut pts = Vec::new();
    for_each_combination(n, m, &mut |s| {
        let mut x = vec![0i64; n];
        for (r, &i) in s.iter().enumerate() {
            x[i] = (r + 1).min(m - 1) as i64;
        }
        let outside: Vec<usize> = (0..n).filter(|i| !s.contains(i)).collect();
        for (r, &i) in outside.iter().enumerate() {
            x[i] = (m + 1 + r.max(1)) as i64;
        }
        pts.push(x);
    });
    Ok(PointSet::new(n, pts)?.with_family(FamilyTag::new("perm-hiding").param("n", n)))
}

pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// The two T-join hiding sets `H_1` (even `b`) and `H_2` (odd `c`).
///
/// `T` holds 1-based node labels. With `T = ∅` there is no odd `b`, so `H_1`
/// is empty; with `T = V` there is no `c`, so `H_2` is empty.
pub fn build_tjoin_hiding(n: usize, t: &[usize], limits: &Limits) -> Result<(PointSet, PointSet)> {
    if n % 2 == 1 {
        return Err(Error::InvalidParameter(format!("T-join hiding sets need an even node count, got {n}")));
    }
    let t = normalize_t(n, t)?;
    let u: Vec<usize> = (0..n).filter(|v| !t.contains(v)).collect();
    let (k, l) = (t.len() / 2, u.len() / 2);
    limits.check_subsets("T-join hiding vectors", 1u128 << k.max(l))?;
    let ix = EdgeIndexer::new(n, false)?;
    let matching = |part: &[usize], half: usize, i: usize| -> Vec<(usize, usize)> {
        (0..half).map(|j| (part[j], part[half + (j + i) % half])).collect()
    };
    let join = |b: &[bool], c: &[bool]| -> Vec<i64> {
        let mut arcs = Vec::new();
        for (i, _) in b.iter().enumerate().filter(|(_, &x)| x) {
            arcs.extend(matching(&t, k, i));
        }
        for (i, _) in c.iter().enumerate().filter(|(_, &x)| x) {
            arcs.extend(matching(&u, l, i));
        }
        arc_vector(&ix, &arcs)
    };
    let vectors = |len: usize, odd: bool| -> Vec<Vec<bool>> {
        (0..1u64 << len).filter(|m| (m.count_ones() % 2 == 1) == odd).map(|m| bits(m, len)).collect()
    };
    let mut b_star = vec![false; k];
    let c_star = vec![false; l];
    let h1: Vec<Vec<i64>> = if k == 0 { Vec::new() } else { vectors(k, false).iter().map(|b| join(b, &c_star)).collect() };
    let h2: Vec<Vec<i64>> = if l == 0 {
        Vec::new()
    } else {
        if k > 0 {
            b_star[0] = true;
        }
        vectors(l, true).iter().map(|c| join(&b_star, c)).collect()
    };
    let labels: Vec<usize> = t.iter().map(|v| v + 1).collect();
    let tag = |part: usize| FamilyTag::new("tjoin-hiding").param("n", n).param("T", labels.clone()).param("part", part);
    Ok((
        PointSet::new(ix.dim(), h1)?.with_family(tag(1)).with_legend(ix.legend()),
        PointSet::new(ix.dim(), h2)?.with_family(tag(2)).with_legend(ix.legend()),
    ))
}

/// The odd-weight vectors, hiding for the even-weight ones.
pub fn build_parity_hiding(n: usize, limits: &Limits) -> Result<PointSet> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("parity hiding set needs n >= 2, got {n}")));
    }
    Ok(generate_basic(&BasicFamily::Odd(n), limits)?.with_family(FamilyTag::new("parity-hiding").param("n", n)))
}

/// `{e1+e2, -e1+e2, e1-e2}` in dimension `d`, hiding for the simplex.
pub fn build_simplex_hiding(d: usize) -> Result<PointSet> {
    if d < 2 {
        return Err(Error::InvalidParameter(format!("simplex hiding set needs d >= 2, got {d}")));
    }
    let pt = |a: i64, b: i64| {
        let mut x = vec![0; d];
        x[0] = a;
        x[1] = b;
        x
    };
    Ok(PointSet::new(d, vec![pt(1, 1), pt(-1, 1), pt(1, -1)])?.with_family(FamilyTag::new("simplex-hiding").param("d", d)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairCheck {
    pub i: usize,
    pub j: usize,
    /// Parameter `t` of the common point `t*h_i + (1-t)*h_j`.
    #[serde(with = "opt_rational")]
    pub t: Option<Rational>,
}

impl PairCheck {
    pub fn hits(&self) -> bool {
        self.t.is_some()
    }
}

mod opt_rational {
    use serde::Serializer;

    use crate::arith::{format_rational, Rational};

    pub fn serialize<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match r {
            Some(r) => s.serialize_str(&format_rational(r)),
            None => s.serialize_none(),
        }
    }
}

/// First failing condition, with its witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "check", rename_all = "snake_case")]
pub enum HidingFailure {
    NotInAffineHull { index: usize, point: Vec<i64> },
    InsideHull { index: usize, point: Vec<i64> },
    SegmentMissesHull { i: usize, j: usize, a: Vec<i64>, b: Vec<i64> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HidingCertificate {
    pub x_ref: String,
    pub h_ref: String,
    pub in_affine_hull: Vec<bool>,
    pub outside_hull: Vec<bool>,
    pub pairs: Vec<PairCheck>,
    pub failure: Option<HidingFailure>,
    pub bound: usize,
}

impl HidingCertificate {
    pub fn valid(&self) -> bool {
        self.failure.is_none()
    }

    /// `|H|` as a lower bound on the relaxation complexity, when valid.
    pub fn lower_bound(&self) -> Option<usize> {
        self.valid().then_some(self.bound)
    }
}

/// Checks every hiding-set condition for `H` against `X` exactly.
///
/// Points of a [`PointSet`] are integral by construction, so integrality
/// holds trivially.
pub fn verify_hiding(h: &PointSet, x: &PointSet) -> Result<HidingCertificate> {
    check_dim(x.dim(), h.dim())?;
    let hull = affine_hull(x)?;
    let in_affine_hull: Vec<bool> = h.iter().map(|p| hull.contains_int(p)).collect();
    let mut outside_hull = Vec::with_capacity(h.len());
    for i in 0..h.len() {
        outside_hull.push(conv_membership(&h.qvector(i), x)?.is_none());
    }
    let mut pairs = Vec::new();
    for i in 0..h.len() {
        for j in i + 1..h.len() {
            let hit = segment_hits_hull(&h.qvector(i), &h.qvector(j), x)?;
            pairs.push(PairCheck { i, j, t: hit.map(|s| s.t) });
        }
    }
    let failure = if let Some(i) = in_affine_hull.iter().position(|&ok| !ok) {
        Some(HidingFailure::NotInAffineHull { index: i, point: h.point(i).to_vec() })
    } else if let Some(i) = outside_hull.iter().position(|&ok| !ok) {
        Some(HidingFailure::InsideHull { index: i, point: h.point(i).to_vec() })
    } else {
        pairs.iter().find(|c| !c.hits()).map(|c| HidingFailure::SegmentMissesHull {
            i: c.i,
            j: c.j,
            a: h.point(c.i).to_vec(),
            b: h.point(c.j).to_vec(),
        })
    };
    Ok(HidingCertificate {
        x_ref: x.digest(),
        h_ref: h.digest(),
        in_affine_hull,
        outside_hull,
        pairs,
        failure,
        bound: h.len(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoxSearch {
    pub size: usize,
    pub candidates: usize,
    pub witness: PointSet,
}

/// Largest hiding set for `X` among the integer points of `bx`.
pub fn max_hiding_in_box(x: &PointSet, bx: &LatticeBox, limits: &Limits) -> Result<BoxSearch> {
    check_dim(x.dim(), bx.dim())?;
    let hull = affine_hull(x)?;
    let mut cands: Vec<Vec<i64>> = Vec::new();
    for p in bx.points(limits)? {
        if hull.contains_int(&p) && conv_membership(&QVector::from_ints(&p), x)?.is_none() {
            cands.push(p);
        }
    }
    let mut g = Graph::new(cands.len());
    let qs: Vec<QVector> = cands.iter().map(|p| QVector::from_ints(p)).collect();
    for i in 0..cands.len() {
        for j in i + 1..cands.len() {
            if segment_hits_hull(&qs[i], &qs[j], x)?.is_some() {
                g.add_edge(i, j);
            }
        }
    }
    let best = g.max_clique();
    let witness = PointSet::new(x.dim(), best.iter().map(|&i| cands[i].clone()).collect())?;
    Ok(BoxSearch { size: best.len(), candidates: cands.len(), witness })
}
