//! Finite abstract simplicial complexes, viewed as nerves of covers: a
//! k-simplex `{i₀,…,i_k}` records that the sets `X_{i₀},…,X_{i_k}` meet.

mod catalog;

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

pub use catalog::{catalog, CATALOG_NAMES};

use crate::{Error, Result};

/// A simplex as a strictly increasing tuple of vertex labels.
pub type Simplex = Vec<u32>;

/// An immutable simplicial complex. Cloning is cheap (shared storage).
#[derive(Clone)]
pub struct Complex(Arc<Inner>);

struct Inner {
    vertices: Vec<u32>,
    // simplices[k] = sorted list of k-simplices
    simplices: Vec<Vec<Simplex>>,
    index: Vec<HashMap<Simplex, usize>>,
}

impl PartialEq for Complex {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.simplices == other.0.simplices
    }
}

impl Eq for Complex {}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Complex")
            .field("f_vector", &self.f_vector())
            .field("facets", &self.facets())
            .finish()
    }
}

/// Sorts a vertex tuple, returning the sorting permutation's sign
/// (`None` if a vertex repeats).
pub fn orient(tuple: &[u32]) -> Option<(Simplex, i8)> {
    let mut v = tuple.to_vec();
    let mut sign = 1i8;
    // insertion sort, counting transpositions
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, sign))
}

impl Complex {
    pub fn empty() -> Self {
        Self::from_face_set(BTreeSet::new())
    }

    /// Smallest complex containing every generator.
    pub fn closure<I, S>(generators: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[u32]>,
    {
        let mut faces = BTreeSet::new();
        for g in generators {
            let g = g.as_ref();
            let (sorted, _) = orient(g).ok_or_else(|| Error::RepeatedVertex(g.to_vec()))?;
            insert_faces(&mut faces, &sorted);
        }
        Ok(Self::from_face_set(faces))
    }

    /// Nerve of a cover given as index subsets flagged as nonempty or empty
    /// intersections. The result is the closure of the nonempty records.
    pub fn nerve_from_cover(records: &[CoverRecord]) -> Result<Self> {
        let mut empty = BTreeSet::new();
        let mut nonempty = Vec::new();
        for r in records {
            let (sorted, _) = orient(&r.subset).ok_or_else(|| Error::RepeatedVertex(r.subset.clone()))?;
            if r.nonempty {
                nonempty.push(sorted);
            } else {
                empty.insert(sorted);
            }
        }
        let complex = Self::closure(&nonempty)?;
        for s in &nonempty {
            let mut faces = BTreeSet::new();
            insert_faces(&mut faces, s);
            if let Some(face) = faces.into_iter().find(|f| empty.contains(f)) {
                return Err(Error::InconsistentCover {
                    subset: s.clone(),
                    face,
                });
            }
        }
        Ok(complex)
    }

    fn from_face_set(faces: BTreeSet<Simplex>) -> Self {
        let mut simplices: Vec<Vec<Simplex>> = Vec::new();
        for f in faces {
            let k = f.len() - 1;
            if simplices.len() <= k {
                simplices.resize(k + 1, Vec::new());
            }
            simplices[k].push(f);
        }
        for level in &mut simplices {
            level.sort();
        }
        let vertices = simplices.first().map_or_else(Vec::new, |v| v.iter().map(|s| s[0]).collect());
        let index = simplices
            .iter()
            .map(|level| level.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect())
            .collect();
        Complex(Arc::new(Inner {
            vertices,
            simplices,
            index,
        }))
    }

    pub fn vertices(&self) -> &[u32] {
        &self.0.vertices
    }

    pub fn is_empty(&self) -> bool {
        self.0.vertices.is_empty()
    }

    /// Largest simplex dimension; `None` for the empty complex.
    pub fn dimension(&self) -> Option<usize> {
        self.0.simplices.len().checked_sub(1)
    }

    /// The `k`-simplices in lexicographic order (empty slice above the dimension).
    pub fn simplices(&self, k: usize) -> &[Simplex] {
        self.0.simplices.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn count(&self, k: usize) -> usize {
        self.simplices(k).len()
    }

    /// Position of a sorted tuple among the simplices of its dimension.
    pub fn index_of(&self, simplex: &[u32]) -> Option<usize> {
        let k = simplex.len().checked_sub(1)?;
        self.0.index.get(k)?.get(simplex).copied()
    }

    pub fn contains(&self, tuple: &[u32]) -> bool {
        orient(tuple).is_some_and(|(s, _)| self.index_of(&s).is_some())
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.0.simplices.iter().map(Vec::len).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(k, &n)| if k % 2 == 0 { n as i64 } else { -(n as i64) })
            .sum()
    }

    /// Maximal simplices, sorted by dimension then lexicographically.
    pub fn facets(&self) -> Vec<Simplex> {
        let mut out = Vec::new();
        for (k, level) in self.0.simplices.iter().enumerate() {
            let above: BTreeSet<&Simplex> = self.simplices(k + 1).iter().collect();
            for s in level {
                let covered = above.iter().any(|t| is_subset(s, t));
                if !covered {
                    out.push(s.clone());
                }
            }
        }
        out
    }

    /// All simplices of every dimension, lowest dimension first.
    pub fn all_simplices(&self) -> impl Iterator<Item = &Simplex> {
        self.0.simplices.iter().flatten()
    }

    /// First simplex `σ ∌ apex` for which `σ ∪ {apex}` is missing.
    pub fn cone_defect(&self, apex: u32) -> Result<Option<Simplex>> {
        if !self.vertices().contains(&apex) {
            return Err(Error::MissingVertex(apex));
        }
        for s in self.all_simplices() {
            if s.contains(&apex) {
                continue;
            }
            let mut t = s.clone();
            let pos = t.partition_point(|&v| v < apex);
            t.insert(pos, apex);
            if self.index_of(&t).is_none() {
                return Ok(Some(t));
            }
        }
        Ok(None)
    }

    /// Whether every simplex extends by `apex`.
    pub fn is_cone(&self, apex: u32) -> Result<bool> {
        Ok(self.cone_defect(apex)?.is_none())
    }
}

/// One record of a cover: an index subset and whether the corresponding
/// intersection is nonempty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverRecord {
    pub subset: Vec<u32>,
    pub nonempty: bool,
}

impl CoverRecord {
    pub fn nonempty(subset: &[u32]) -> Self {
        CoverRecord {
            subset: subset.to_vec(),
            nonempty: true,
        }
    }

    pub fn empty(subset: &[u32]) -> Self {
        CoverRecord {
            subset: subset.to_vec(),
            nonempty: false,
        }
    }
}

fn is_subset(small: &[u32], big: &[u32]) -> bool {
    small.iter().all(|v| big.binary_search(v).is_ok())
}

fn insert_faces(faces: &mut BTreeSet<Simplex>, sorted: &[u32]) {
    if sorted.is_empty() || faces.contains(sorted) {
        return;
    }
    assert!(sorted.len() < 32, "simplex of dimension {} is too large", sorted.len() - 1);
    let n = sorted.len();
    for mask in 1u32..(1 << n) {
        let face: Simplex = (0..n).filter(|i| mask & (1 << i) != 0).map(|i| sorted[i]).collect();
        faces.insert(face);
    }
}
