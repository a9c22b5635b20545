//! Abstract simplicial complexes on the vertex set `[n]`.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::subset::VertexSubset;

/// Face families larger than this are not materialized; membership then goes
/// through the facet list.
pub const MATERIALIZE_LIMIT: u128 = 1 << 24;

/// A downward-closed family of subsets of `[n]`.
///
/// The family may be empty (the void complex), which is distinct from the
/// complex `{∅}` consisting of the empty face alone. Vertex `i` of the complex
/// carries the label `labels[i - 1]`; restriction and join keep track of the
/// labels of the ambient complex they came from.
#[derive(Clone, Debug)]
pub struct SimplicialComplex {
    n: usize,
    facets: Vec<VertexSubset>,
    faces: Option<Vec<VertexSubset>>,
    index: Option<HashSet<VertexSubset>>,
    labels: Vec<usize>,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.facets == other.facets
    }
}

impl Eq for SimplicialComplex {}

fn face_order(a: &VertexSubset, b: &VertexSubset) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then(a.bits().cmp(&b.bits()))
}

/// Keeps only the inclusion-maximal sets, sorted canonically.
fn maximal_sets(mut sets: Vec<VertexSubset>) -> Vec<VertexSubset> {
    sets.sort_by(|a, b| face_order(b, a));
    sets.dedup();
    let mut kept: Vec<VertexSubset> = Vec::new();
    for s in sets {
        if !kept.iter().any(|k| s.is_subset_of(*k)) {
            kept.push(s);
        }
    }
    kept.sort_by(face_order);
    kept
}

impl SimplicialComplex {
    /// Downward closure of `facets` on `[n]`.
    pub fn from_facets(n: usize, facets: &[VertexSubset]) -> Result<Self> {
        let full = VertexSubset::full(n);
        for f in facets {
            if !f.is_subset_of(full) {
                let vertex = f.difference(full).min().unwrap_or(0);
                return Err(Error::VertexOutOfRange { vertex, n });
            }
        }
        Ok(Self::build(
            n,
            maximal_sets(facets.to_vec()),
            (1..=n).collect(),
        ))
    }

    /// Convenience constructor from 1-based vertex lists.
    pub fn from_facet_lists(n: usize, facets: &[Vec<usize>]) -> Result<Self> {
        let masks = facets
            .iter()
            .map(|f| VertexSubset::from_vertices(n, f))
            .collect::<Result<Vec<_>>>()?;
        Self::from_facets(n, &masks)
    }

    /// The full simplex on `[n]` (for n = 0 this is `{∅}`).
    pub fn simplex(n: usize) -> Self {
        Self::build(n, vec![VertexSubset::full(n)], (1..=n).collect())
    }

    /// The complex with no faces at all.
    pub fn void(n: usize) -> Self {
        Self::build(n, Vec::new(), (1..=n).collect())
    }

    /// Boundary of the simplex on `[n]`.
    pub fn simplex_boundary(n: usize) -> Self {
        let full = VertexSubset::full(n);
        let facets: Vec<_> = full.iter().map(|v| full.remove(v)).collect();
        Self::build(n, maximal_sets(facets), (1..=n).collect())
    }

    fn build(n: usize, facets: Vec<VertexSubset>, labels: Vec<usize>) -> Self {
        let estimate: u128 = facets
            .iter()
            .map(|f| 1u128.checked_shl(f.len() as u32).unwrap_or(u128::MAX))
            .fold(0u128, |a, b| a.saturating_add(b));
        let (faces, index) = if estimate <= MATERIALIZE_LIMIT {
            let mut set = HashSet::new();
            for f in &facets {
                if set.contains(f) {
                    continue;
                }
                for s in f.subsets() {
                    set.insert(s);
                }
            }
            let mut faces: Vec<_> = set.iter().copied().collect();
            faces.sort_by(face_order);
            (Some(faces), Some(set))
        } else {
            (None, None)
        };
        SimplicialComplex {
            n,
            facets,
            faces,
            index,
            labels,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn facets(&self) -> &[VertexSubset] {
        &self.facets
    }

    /// Original labels of the vertices `1..=n`.
    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn is_materialized(&self) -> bool {
        self.faces.is_some()
    }

    /// All faces sorted by size then bitmask, the empty face first.
    ///
    /// Panics when the face family was too large to materialize.
    pub fn faces(&self) -> &[VertexSubset] {
        self.faces
            .as_deref()
            .expect("face family not materialized for this complex")
    }

    pub fn num_faces(&self) -> usize {
        self.faces().len()
    }

    pub fn contains(&self, face: VertexSubset) -> bool {
        match &self.index {
            Some(set) => set.contains(&face),
            None => self.facets.iter().any(|f| face.is_subset_of(*f)),
        }
    }

    /// Dimension; `-1` for `{∅}` and `None` for the void complex.
    pub fn dim(&self) -> Option<isize> {
        self.facets.iter().map(|f| f.len() as isize - 1).max()
    }

    /// f-vector `(f_{-1}, f_0, f_1, ...)`.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = Vec::new();
        for face in self.faces() {
            let k = face.len();
            if f.len() <= k {
                f.resize(k + 1, 0);
            }
            f[k] += 1;
        }
        f
    }

    pub fn vertex_set(&self) -> VertexSubset {
        self.facets.iter().fold(VertexSubset::EMPTY, |a, f| a | *f)
    }

    /// Vertices of `[n]` that are not faces of the complex.
    pub fn ghost_vertices(&self) -> Vec<usize> {
        VertexSubset::full(self.n)
            .difference(self.vertex_set())
            .to_vec()
    }

    pub fn has_ghost_vertices(&self) -> bool {
        self.vertex_set() != VertexSubset::full(self.n)
    }

    /// Faces contained in `set`, in ambient coordinates (no re-indexing).
    pub fn faces_within(&self, set: VertexSubset) -> Vec<VertexSubset> {
        if self.is_void() {
            return Vec::new();
        }
        match &self.faces {
            Some(faces) => faces
                .iter()
                .copied()
                .filter(|f| f.is_subset_of(set))
                .collect(),
            None => {
                let mut faces: Vec<_> = set.subsets().filter(|s| self.contains(*s)).collect();
                faces.sort_by(face_order);
                faces
            }
        }
    }

    /// Full subcomplex `K_I`, re-indexed on `I` in ascending order.
    pub fn restriction(&self, set: VertexSubset) -> Self {
        let set = set.intersection(VertexSubset::full(self.n));
        let verts = set.to_vec();
        let facets: Vec<_> = self
            .facets
            .iter()
            .map(|f| reindex(f.intersection(set), &verts))
            .collect();
        let labels = verts.iter().map(|&v| self.labels[v - 1]).collect();
        Self::build(verts.len(), maximal_sets(facets), labels)
    }

    /// `K \ {i}`, the restriction to `[n] - {i}`.
    pub fn deletion(&self, vertex: usize) -> Result<Self> {
        if vertex == 0 || vertex > self.n {
            return Err(Error::VertexOutOfRange { vertex, n: self.n });
        }
        Ok(self.restriction(VertexSubset::full(self.n).remove(vertex)))
    }

    /// Join of two complexes on disjoint label sets. Vertices of the result
    /// are ordered by ascending label.
    pub fn join(&self, other: &Self) -> Result<Self> {
        let mut labels: Vec<usize> = self.labels.iter().chain(&other.labels).copied().collect();
        labels.sort_unstable();
        if labels.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::OverlappingVertexSets);
        }
        let pos = |l: usize| labels.binary_search(&l).unwrap() + 1;
        let lift = |c: &Self, f: VertexSubset| {
            f.iter().fold(VertexSubset::EMPTY, |acc, v| {
                acc.insert(pos(c.labels[v - 1]))
            })
        };
        let mut facets = Vec::new();
        for f in &self.facets {
            for g in &other.facets {
                facets.push(lift(self, *f) | lift(other, *g));
            }
        }
        Ok(Self::build(labels.len(), maximal_sets(facets), labels))
    }

    /// Same complex with the given labels attached.
    pub fn with_labels(mut self, labels: Vec<usize>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                actual: labels.len(),
            });
        }
        self.labels = labels;
        Ok(self)
    }

    /// Restriction to the vertices carrying the given original labels.
    pub fn restrict_to_labels(&self, labels: &[usize]) -> Self {
        let set = self
            .labels
            .iter()
            .enumerate()
            .filter(|(_, l)| labels.contains(l))
            .fold(VertexSubset::EMPTY, |a, (i, _)| a.insert(i + 1));
        self.restriction(set)
    }

    /// Every subset of at most `m` vertices is a face.
    pub fn is_m_neighbourly(&self, m: usize) -> bool {
        let m = m.min(self.n);
        if self.is_void() {
            return false;
        }
        // downward closure makes the m-subsets sufficient
        let mut ok = true;
        for_each_k_subset(self.n, m, &mut |s| {
            if ok && !self.contains(s) {
                ok = false;
            }
        });
        ok
    }

    /// `⌊n/2⌋`-neighbourly.
    pub fn is_neighbourly(&self) -> bool {
        self.is_m_neighbourly(self.n / 2)
    }

    /// The same complex with vertices permuted: vertex `v` becomes `perm[v-1]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let facets: Vec<_> = self
            .facets
            .iter()
            .map(|f| {
                f.iter()
                    .fold(VertexSubset::EMPTY, |a, v| a.insert(perm[v - 1]))
            })
            .collect();
        Self::build(self.n, maximal_sets(facets), (1..=self.n).collect())
    }

    pub fn to_json(&self) -> ComplexJson {
        ComplexJson {
            n: self.n,
            facets: self.facets.iter().map(|f| f.to_vec()).collect(),
        }
    }

    pub fn from_json(json: &ComplexJson) -> Result<Self> {
        Self::from_facet_lists(json.n, &json.facets)
    }
}

/// Maps a subset of `verts` (sorted) to positions `1..=verts.len()`.
fn reindex(face: VertexSubset, verts: &[usize]) -> VertexSubset {
    face.iter().fold(VertexSubset::EMPTY, |acc, v| {
        acc.insert(verts.binary_search(&v).unwrap() + 1)
    })
}

/// Calls `f` on every `k`-subset of `[n]`.
pub fn for_each_k_subset(n: usize, k: usize, f: &mut dyn FnMut(VertexSubset)) {
    fn rec(start: usize, n: usize, k: usize, acc: VertexSubset, f: &mut dyn FnMut(VertexSubset)) {
        if k == 0 {
            f(acc);
            return;
        }
        for v in start..=n {
            if n - v + 1 < k {
                break;
            }
            rec(v + 1, n, k - 1, acc.insert(v), f);
        }
    }
    rec(1, n, k, VertexSubset::EMPTY, f);
}

/// JSON form `{"n": int, "facets": [[int, ...], ...]}` with 1-based vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub n: usize,
    pub facets: Vec<Vec<usize>>,
}

/// A vertex map between complexes sending faces to faces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialMap {
    pub source: SimplicialComplex,
    pub target: SimplicialComplex,
    /// `vertex_map[v - 1]` is the image of source vertex `v`.
    pub vertex_map: Vec<usize>,
}

impl SimplicialMap {
    pub fn new(
        source: SimplicialComplex,
        target: SimplicialComplex,
        vertex_map: Vec<usize>,
    ) -> Result<Self> {
        if vertex_map.len() != source.n() {
            return Err(Error::LengthMismatch {
                expected: source.n(),
                actual: vertex_map.len(),
            });
        }
        let map = SimplicialMap {
            source,
            target,
            vertex_map,
        };
        for &face in map.source.faces() {
            if !map.target.contains(map.image(face)) {
                return Err(Error::InvalidInput(format!(
                    "face {face} maps to {} which is not a target face",
                    map.image(face)
                )));
            }
        }
        Ok(map)
    }

    pub fn identity(k: &SimplicialComplex) -> Self {
        SimplicialMap {
            source: k.clone(),
            target: k.clone(),
            vertex_map: (1..=k.n()).collect(),
        }
    }

    pub fn image(&self, face: VertexSubset) -> VertexSubset {
        face.iter()
            .fold(VertexSubset::EMPTY, |a, v| a.insert(self.vertex_map[v - 1]))
    }

    /// Injective on faces.
    pub fn is_injective_on_faces(&self) -> bool {
        let mut seen = HashSet::new();
        self.source
            .faces()
            .iter()
            .all(|f| seen.insert(self.image(*f)))
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &SimplicialMap) -> Result<SimplicialMap> {
        if self.target != other.source {
            return Err(Error::InvalidInput("maps are not composable".into()));
        }
        let vertex_map = self
            .vertex_map
            .iter()
            .map(|&v| other.vertex_map[v - 1])
            .collect();
        SimplicialMap::new(self.source.clone(), other.target.clone(), vertex_map)
    }

    /// Join of two maps, `K ∗ L → K' ∗ L'`, using label-ordered joins.
    pub fn join(&self, other: &SimplicialMap) -> Result<SimplicialMap> {
        let source = self.source.join(&other.source)?;
        let target = self.target.join(&other.target)?;
        let mut label_image = std::collections::HashMap::new();
        for (map, src, tgt) in [
            (self, &self.source, &self.target),
            (other, &other.source, &other.target),
        ] {
            for v in 1..=src.n() {
                let tl = tgt.labels()[map.vertex_map[v - 1] - 1];
                label_image.insert(src.labels()[v - 1], tl);
            }
        }
        let vertex_map = source
            .labels()
            .iter()
            .map(|l| {
                let tl = label_image[l];
                target.labels().iter().position(|x| *x == tl).unwrap() + 1
            })
            .collect();
        SimplicialMap::new(source, target, vertex_map)
    }
}

/// The inclusion `K_{I∪J} → K_I ∗ K_J`, identity on vertices.
pub fn iota_inclusion(
    k: &SimplicialComplex,
    i: VertexSubset,
    j: VertexSubset,
) -> Result<SimplicialMap> {
    if i.is_empty() || j.is_empty() {
        return Err(Error::EmptyVertexSet);
    }
    if !i.is_disjoint(j) {
        return Err(Error::OverlappingVertexSets);
    }
    let full = VertexSubset::full(k.n());
    for s in [i, j] {
        if !s.is_subset_of(full) {
            return Err(Error::VertexOutOfRange {
                vertex: s.difference(full).min().unwrap(),
                n: k.n(),
            });
        }
    }
    let source = k.restriction(i | j);
    let target = k.restriction(i).join(&k.restriction(j))?;
    let vertex_map = (1..=source.n()).collect();
    SimplicialMap::new(source, target, vertex_map)
}
