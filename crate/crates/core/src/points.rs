//! Finite sets of integer points.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use sha2::{Digest, Sha256};

use crate::arith::QVector;
use crate::error::{Error, Result};

/// Name and parameters of the family a point set was generated from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyTag {
    pub name: String,
    #[serde(default)]
    pub params: BTreeMap<String, serde_json::Value>,
}

impl FamilyTag {
    pub fn new(name: &str) -> Self {
        FamilyTag { name: name.to_string(), params: BTreeMap::new() }
    }

    pub fn param(mut self, key: &str, value: impl Into<serde_json::Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }
}

/// A finite set of distinct integer vectors of one ambient dimension, kept
/// in lexicographic order.
///
/// Points are stored row-major in a single buffer so that families with
/// millions of members stay compact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSet {
    dim: usize,
    data: Vec<i64>,
    pub family: Option<FamilyTag>,
    pub legend: Option<Vec<String>>,
}

impl PointSet {
    /// Builds a point set, sorting and dropping duplicate points.
    pub fn new(dim: usize, points: Vec<Vec<i64>>) -> Result<Self> {
        let mut data = Vec::with_capacity(points.len() * dim);
        for p in &points {
            crate::error::check_dim(dim, p.len())?;
            data.extend_from_slice(p);
        }
        Self::from_flat(dim, data)
    }

    /// Builds a point set from a row-major coordinate buffer.
    pub fn from_flat(dim: usize, data: Vec<i64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidParameter("point dimension must be positive".into()));
        }
        if data.len() % dim != 0 {
            return Err(Error::Malformed(format!(
                "buffer of length {} is not a multiple of dimension {dim}",
                data.len()
            )));
        }
        let n = data.len() / dim;
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_unstable_by(|&a, &b| data[a * dim..(a + 1) * dim].cmp(&data[b * dim..(b + 1) * dim]));
        order.dedup_by(|a, b| data[*a * dim..(*a + 1) * dim] == data[*b * dim..(*b + 1) * dim]);
        let mut sorted = Vec::with_capacity(order.len() * dim);
        for i in order {
            sorted.extend_from_slice(&data[i * dim..(i + 1) * dim]);
        }
        Ok(PointSet { dim, data: sorted, family: None, legend: None })
    }

    pub fn with_family(mut self, tag: FamilyTag) -> Self {
        self.family = Some(tag);
        self
    }

    pub fn with_legend(mut self, legend: Vec<String>) -> Self {
        self.legend = Some(legend);
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.data.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn point(&self, i: usize) -> &[i64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn iter(&self) -> std::slice::ChunksExact<'_, i64> {
        self.data.chunks_exact(self.dim)
    }

    pub fn to_vecs(&self) -> Vec<Vec<i64>> {
        self.iter().map(<[i64]>::to_vec).collect()
    }

    pub fn qvector(&self, i: usize) -> QVector {
        QVector::from_ints(self.point(i))
    }

    pub fn position(&self, p: &[i64]) -> Option<usize> {
        if p.len() != self.dim {
            return None;
        }
        let (mut lo, mut hi) = (0, self.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.point(mid).cmp(p) {
                Ordering::Less => lo = mid + 1,
                Ordering::Greater => hi = mid,
                Ordering::Equal => return Some(mid),
            }
        }
        None
    }

    pub fn contains(&self, p: &[i64]) -> bool {
        self.position(p).is_some()
    }

    /// Whether every coordinate of every point is 0 or 1.
    pub fn is_binary(&self) -> bool {
        self.data.iter().all(|&x| x == 0 || x == 1)
    }

    /// Points of `self` that are not in `other`.
    pub fn difference(&self, other: &PointSet) -> Vec<&[i64]> {
        self.iter().filter(|p| !other.contains(p)).collect()
    }

    /// Same points, no family tag or legend.
    pub fn strip(&self) -> PointSet {
        PointSet { dim: self.dim, data: self.data.clone(), family: None, legend: None }
    }

    /// SHA-256 over the dimension and the little-endian coordinates, in hex.
    pub fn digest(&self) -> String {
        let mut h = Sha256::new();
        h.update((self.dim as u64).to_le_bytes());
        for x in &self.data {
            h.update(x.to_le_bytes());
        }
        hex::encode(h.finalize())
    }
}

#[derive(Serialize, Deserialize)]
struct PointSetDoc {
    dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    family: Option<FamilyTag>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    legend: Option<Vec<String>>,
    points: Vec<Vec<i64>>,
}

impl Serialize for PointSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PointSetDoc {
            dim: self.dim,
            family: self.family.clone(),
            legend: self.legend.clone(),
            points: self.to_vecs(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PointSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let doc = PointSetDoc::deserialize(d)?;
        for (i, p) in doc.points.iter().enumerate() {
            if p.len() != doc.dim {
                return Err(D::Error::custom(format!(
                    "points[{i}]: length {} does not match dim {}",
                    p.len(),
                    doc.dim
                )));
            }
        }
        if let Some(legend) = &doc.legend {
            if legend.len() != doc.dim {
                return Err(D::Error::custom(format!(
                    "legend: {} labels for dim {}",
                    legend.len(),
                    doc.dim
                )));
            }
        }
        let count = doc.points.len();
        let mut set = PointSet::new(doc.dim, doc.points).map_err(D::Error::custom)?;
        if set.len() != count {
            return Err(D::Error::custom("points: duplicate entries"));
        }
        set.family = doc.family;
        set.legend = doc.legend;
        Ok(set)
    }
}
