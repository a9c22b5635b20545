//! Ordered partitions, the complex `𝒦_n` dual to the permutohedron, and the
//! coordinate maps `τ_t` between its barycentric points and the cube
//! boundary `U_t = {x : max |x_i| = t}`.
//!
//! `𝒦_n` has one `(m-2)`-face per ordered partition of `[n]` into `m`
//! blocks; its vertices are the 2-block partitions `(A, [n] - A)`, labelled
//! by the bitmask of `A` so that vertex labels run over `1..2^n - 2`.

use std::cmp::Ordering;
use std::fmt;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::homology::{self, HomologySummary};
use crate::subset::VertexSubset;

pub const MAX_KN: usize = 7;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OrderedPartition {
    blocks: Vec<VertexSubset>,
}

impl OrderedPartition {
    pub fn new(blocks: Vec<VertexSubset>) -> Result<Self> {
        if blocks.is_empty() || blocks.iter().any(|b| b.is_empty()) {
            return Err(Error::EmptyVertexSet);
        }
        let mut seen = VertexSubset::EMPTY;
        for b in &blocks {
            if !seen.is_disjoint(*b) {
                return Err(Error::OverlappingVertexSets);
            }
            seen = seen | *b;
        }
        Ok(OrderedPartition { blocks })
    }

    pub fn from_lists(blocks: &[Vec<usize>]) -> Result<Self> {
        Self::new(blocks.iter().map(|b| VertexSubset::of(b)).collect())
    }

    pub fn blocks(&self) -> &[VertexSubset] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn ground(&self) -> VertexSubset {
        self.blocks.iter().fold(VertexSubset::EMPTY, |a, b| a | *b)
    }

    /// 1-based index of the block containing `v`.
    pub fn block_of(&self, v: usize) -> Option<usize> {
        self.blocks
            .iter()
            .position(|b| b.contains(v))
            .map(|i| i + 1)
    }

    /// `d_i` merges blocks `i` and `i + 1`, `1 ≤ i ≤ m - 1`.
    pub fn face_map(&self, i: usize) -> Result<Self> {
        if i == 0 || i >= self.len() {
            return Err(Error::IndexOutOfRange {
                index: i,
                max: self.len().saturating_sub(1),
            });
        }
        let mut blocks = self.blocks.clone();
        let merged = blocks[i - 1] | blocks[i];
        blocks[i - 1] = merged;
        blocks.remove(i);
        Ok(OrderedPartition { blocks })
    }

    /// Prefix unions `I_1 ∪ … ∪ I_j` for `j = 1..m-1`: the vertices of the
    /// corresponding face of `𝒦_n`.
    pub fn prefix_unions(&self) -> Vec<VertexSubset> {
        let mut acc = VertexSubset::EMPTY;
        self.blocks[..self.len() - 1]
            .iter()
            .map(|b| {
                acc = acc | *b;
                acc
            })
            .collect()
    }

    /// The face of the flattened `𝒦_n` spanned by this partition.
    pub fn face(&self) -> VertexSubset {
        self.prefix_unions()
            .into_iter()
            .fold(VertexSubset::EMPTY, |a, p| a.insert(p.bits() as usize))
    }

    /// Recovers the ordered partition of `[n]` from a face of `𝒦_n`.
    pub fn from_face(n: usize, face: VertexSubset) -> Result<Self> {
        let mut chain: Vec<VertexSubset> = face.iter().map(|v| VertexSubset(v as u128)).collect();
        chain.sort_by_key(|s| s.len());
        let full = VertexSubset::full(n);
        chain.push(full);
        let mut blocks = Vec::new();
        let mut prev = VertexSubset::EMPTY;
        for s in chain {
            if !prev.is_subset_of(s) || prev == s || !s.is_subset_of(full) {
                return Err(Error::InvalidInput(format!(
                    "{face} is not a chain of subsets of [{n}]"
                )));
            }
            blocks.push(s.difference(prev));
            prev = s;
        }
        Self::new(blocks)
    }
}

impl fmt::Display for OrderedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{b}")?;
        }
        write!(f, ")")
    }
}

/// An exactly comparable value: a rational, or an opaque real known to lie
/// strictly inside a rational interval (used for values such as π).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrderedValue {
    Exact(BigRational),
    Opaque {
        name: String,
        lo: BigRational,
        hi: BigRational,
    },
}

impl OrderedValue {
    pub fn int(v: i64) -> Self {
        OrderedValue::Exact(BigRational::from_integer(v.into()))
    }

    pub fn pi() -> Self {
        OrderedValue::Opaque {
            name: "pi".to_string(),
            lo: BigRational::new(314159.into(), 100000.into()),
            hi: BigRational::new(314160.into(), 100000.into()),
        }
    }

    /// Errors when the comparison is not decided by the enclosing intervals.
    pub fn try_cmp(&self, other: &Self) -> Result<Ordering> {
        use OrderedValue::*;
        let undecided =
            || Error::InvalidInput("comparison of opaque values is undecidable".to_string());
        match (self, other) {
            (Exact(a), Exact(b)) => Ok(a.cmp(b)),
            (Exact(a), Opaque { lo, hi, .. }) => {
                if a <= lo {
                    Ok(Ordering::Less)
                } else if a >= hi {
                    Ok(Ordering::Greater)
                } else {
                    Err(undecided())
                }
            }
            (Opaque { .. }, Exact(_)) => other.try_cmp(self).map(Ordering::reverse),
            (
                Opaque {
                    name: n1,
                    lo: l1,
                    hi: h1,
                },
                Opaque {
                    name: n2,
                    lo: l2,
                    hi: h2,
                },
            ) => {
                if n1 == n2 && l1 == l2 && h1 == h2 {
                    Ok(Ordering::Equal)
                } else if h1 <= l2 {
                    Ok(Ordering::Less)
                } else if h2 <= l1 {
                    Ok(Ordering::Greater)
                } else {
                    Err(undecided())
                }
            }
        }
    }
}

/// `I_𝒮`: the elements of `I` grouped by equal value, blocks in increasing
/// order of value.
pub fn ordered_partition_from_sequence(
    set: VertexSubset,
    values: &[OrderedValue],
) -> Result<OrderedPartition> {
    let members = set.to_vec();
    if members.len() != values.len() {
        return Err(Error::LengthMismatch {
            expected: members.len(),
            actual: values.len(),
        });
    }
    if members.is_empty() {
        return Err(Error::EmptyVertexSet);
    }
    // insertion into sorted distinct values so every comparison is checked
    let mut distinct: Vec<(&OrderedValue, VertexSubset)> = Vec::new();
    for (v, x) in members.iter().zip(values) {
        let mut placed = false;
        for i in 0..distinct.len() {
            match x.try_cmp(distinct[i].0)? {
                Ordering::Equal => {
                    distinct[i].1 = distinct[i].1.insert(*v);
                    placed = true;
                    break;
                }
                Ordering::Less => {
                    distinct.insert(i, (x, VertexSubset::singleton(*v)));
                    placed = true;
                    break;
                }
                Ordering::Greater => {}
            }
        }
        if !placed {
            distinct.push((x, VertexSubset::singleton(*v)));
        }
    }
    OrderedPartition::new(distinct.into_iter().map(|(_, s)| s).collect())
}

pub fn ordered_partition_from_rationals(
    set: VertexSubset,
    values: &[BigRational],
) -> Result<OrderedPartition> {
    let values: Vec<OrderedValue> = values.iter().cloned().map(OrderedValue::Exact).collect();
    ordered_partition_from_sequence(set, &values)
}

/// All ordered partitions of `set`.
pub fn ordered_partitions(set: VertexSubset) -> Vec<OrderedPartition> {
    fn rec(rest: VertexSubset, prefix: &mut Vec<VertexSubset>, out: &mut Vec<OrderedPartition>) {
        if rest.is_empty() {
            out.push(OrderedPartition {
                blocks: prefix.clone(),
            });
            return;
        }
        for b in rest.subsets().filter(|b| !b.is_empty()) {
            prefix.push(b);
            rec(rest.difference(b), prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if !set.is_empty() {
        rec(set, &mut Vec::new(), &mut out);
    }
    out
}

/// `𝒦_n` as a delta set (ordered partitions by length) together with its
/// flattening to a simplicial complex on `2^n - 2` vertices.
pub struct PermutohedralComplex {
    pub n: usize,
    /// `by_length[m-1]` lists the partitions with `m` blocks.
    pub by_length: Vec<Vec<OrderedPartition>>,
    pub complex: SimplicialComplex,
}

pub fn build_kn(n: usize) -> Result<PermutohedralComplex> {
    if n < 2 {
        return Err(Error::OutOfRange(format!("𝒦_n needs n ≥ 2, got {n}")));
    }
    if n > MAX_KN {
        return Err(Error::SizeGuard {
            what: "permutohedral n",
            value: n,
            limit: MAX_KN,
        });
    }
    let mut by_length = vec![Vec::new(); n];
    for p in ordered_partitions(VertexSubset::full(n)) {
        by_length[p.len() - 1].push(p);
    }
    for l in &mut by_length {
        l.sort();
    }
    let facets: Vec<VertexSubset> = by_length[n - 1].iter().map(|p| p.face()).collect();
    let complex = SimplicialComplex::from_facets((1usize << n) - 2, &facets)?;
    Ok(PermutohedralComplex {
        n,
        by_length,
        complex,
    })
}

impl PermutohedralComplex {
    /// Number of `(m-2)`-faces for `m = 2..n`.
    pub fn face_counts(&self) -> Vec<usize> {
        self.by_length[1..].iter().map(Vec::len).collect()
    }

    /// Every codimension-one face lies in exactly two top faces.
    pub fn is_pseudomanifold(&self) -> bool {
        let mut count: std::collections::HashMap<OrderedPartition, usize> =
            std::collections::HashMap::new();
        for top in &self.by_length[self.n - 1] {
            for i in 1..top.len() {
                *count
                    .entry(top.face_map(i).expect("valid index"))
                    .or_default() += 1;
            }
        }
        self.n == 2
            || (count.len() == self.by_length[self.n - 2].len() && count.values().all(|&c| c == 2))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SphereReport {
    pub n: usize,
    pub face_counts: Vec<usize>,
    pub top_faces: usize,
    pub pseudomanifold: bool,
    pub homology: HomologySummary,
    pub flattened_faces_match: bool,
    pub is_sphere: bool,
}

/// Checks that `𝒦_n` is a pseudomanifold with the integral homology of
/// `S^{n-2}`.
pub fn verify_sphere(n: usize) -> Result<SphereReport> {
    let kn = build_kn(n)?;
    let homology = homology::reduced_homology_z(&kn.complex);
    let pseudomanifold = kn.is_pseudomanifold();
    let f = kn.complex.f_vector();
    // f-vector of the flattening (dims 0..n-2) must match partition counts
    let flattened_faces_match = f.len() == n && f[1..] == kn.face_counts()[..];
    let is_sphere = pseudomanifold
        && flattened_faces_match
        && homology.is_homology_sphere_of_dim(n as isize - 2);
    Ok(SphereReport {
        n,
        face_counts: kn.face_counts(),
        top_faces: kn.by_length[n - 1].len(),
        pseudomanifold,
        homology,
        flattened_faces_match,
        is_sphere,
    })
}

/// A point of `|𝒦_n|`: a face with barycentric weights on its vertices
/// (the prefix unions), `s_1, …, s_{m-1} ≥ 0`, summing to 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BarycentricPoint {
    pub face: OrderedPartition,
    pub weights: Vec<BigRational>,
}

impl BarycentricPoint {
    pub fn new(face: OrderedPartition, weights: Vec<BigRational>) -> Result<Self> {
        if weights.len() + 1 != face.len() {
            return Err(Error::LengthMismatch {
                expected: face.len().saturating_sub(1),
                actual: weights.len(),
            });
        }
        if face.len() < 2 {
            return Err(Error::InvalidInput(
                "a face of 𝒦_n has at least two blocks".to_string(),
            ));
        }
        if weights.iter().any(|w| w.is_negative()) {
            return Err(Error::OutOfRange("negative barycentric weight".to_string()));
        }
        let total: BigRational = weights.iter().sum();
        if total != BigRational::from_integer(1.into()) {
            return Err(Error::OutOfRange(
                "barycentric weights must sum to 1".to_string(),
            ));
        }
        Ok(BarycentricPoint { face, weights })
    }

    /// The same point on the smallest face containing it: zero weights
    /// merge the adjacent blocks.
    pub fn canonical(&self) -> Self {
        let mut face = self.face.clone();
        let mut weights = self.weights.clone();
        let mut i = 0;
        while i < weights.len() {
            if weights[i].is_zero() {
                face = face.face_map(i + 1).expect("index within range");
                weights.remove(i);
            } else {
                i += 1;
            }
        }
        BarycentricPoint { face, weights }
    }

    /// `t_{j,γ} = s_0 + … + s_{j_𝒮 - 1}` with `s_0 = 0`.
    pub fn vertex_times(&self) -> Vec<BigRational> {
        let n = self.face.ground().max().unwrap_or(0);
        let mut prefix = vec![BigRational::zero()];
        for w in &self.weights {
            let next = prefix.last().unwrap() + w;
            prefix.push(next);
        }
        (1..=n)
            .map(|j| prefix[self.face.block_of(j).expect("partition of [n]") - 1].clone())
            .collect()
    }
}

fn check_t(t: &BigRational) -> Result<()> {
    if !t.is_positive() || *t >= BigRational::from_integer(1.into()) {
        return Err(Error::OutOfRange(format!("t = {t} must lie in (0, 1)")));
    }
    Ok(())
}

/// `τ_t(γ) = (t/β_γ)(t_{j,γ} - t_{n,γ})_{j<n}` with
/// `β_γ = max_j |t_{j,γ} - t_{n,γ}|`.
pub fn tau(t: &BigRational, gamma: &BarycentricPoint) -> Result<Vec<BigRational>> {
    check_t(t)?;
    let times = gamma.vertex_times();
    let last = times.last().expect("n ≥ 2").clone();
    let diffs: Vec<BigRational> = times[..times.len() - 1].iter().map(|x| x - &last).collect();
    let beta = diffs
        .iter()
        .map(|d| d.abs())
        .max()
        .unwrap_or_else(BigRational::zero);
    if beta.is_zero() {
        return Err(Error::InvalidInput(
            "degenerate barycentric point".to_string(),
        ));
    }
    Ok(diffs.into_iter().map(|d| t * d / &beta).collect())
}

/// Inverse of [`tau`] on `U_t`: the face is `[n]_{(x, 0)}` and the weights
/// are the normalized gaps between consecutive distinct values.
pub fn tau_inv(t: &BigRational, x: &[BigRational]) -> Result<BarycentricPoint> {
    check_t(t)?;
    let max = x.iter().map(|v| v.abs()).max();
    if max.as_ref() != Some(t) {
        return Err(Error::OutOfRange("point does not lie in U_t".to_string()));
    }
    let mut values: Vec<BigRational> = x.to_vec();
    values.push(BigRational::zero());
    let n = values.len();
    let face = ordered_partition_from_rationals(VertexSubset::full(n), &values)?;
    let mut distinct = values.clone();
    distinct.sort();
    distinct.dedup();
    let range = distinct.last().unwrap() - distinct.first().unwrap();
    let weights = distinct
        .windows(2)
        .map(|w| (&w[1] - &w[0]) / &range)
        .collect();
    BarycentricPoint::new(face, weights)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn pi_partition() {
        let values = [
            OrderedValue::int(-1),
            OrderedValue::pi(),
            OrderedValue::int(-1),
            OrderedValue::int(0),
        ];
        let p = ordered_partition_from_sequence(VertexSubset::full(4), &values).unwrap();
        assert_eq!(
            p,
            OrderedPartition::from_lists(&[vec![1, 3], vec![4], vec![2]]).unwrap()
        );
        let undecided = [OrderedValue::pi(), OrderedValue::Exact(q(3141595, 1000000))];
        assert!(ordered_partition_from_sequence(VertexSubset::full(2), &undecided).is_err());
    }

    #[test]
    fn trivial_partitions() {
        let c =
            ordered_partition_from_rationals(VertexSubset::full(3), &[q(2, 1), q(2, 1), q(2, 1)])
                .unwrap();
        assert_eq!(c.len(), 1);
        let s =
            ordered_partition_from_rationals(VertexSubset::full(3), &[q(1, 1), q(2, 1), q(3, 1)])
                .unwrap();
        assert_eq!(
            s,
            OrderedPartition::from_lists(&[vec![1], vec![2], vec![3]]).unwrap()
        );
        assert!(ordered_partition_from_rationals(VertexSubset::full(3), &[q(1, 1)]).is_err());
    }

    #[test]
    fn face_maps() {
        let p = OrderedPartition::from_lists(&[vec![1, 3], vec![4], vec![2]]).unwrap();
        assert_eq!(
            p.face_map(1).unwrap(),
            OrderedPartition::from_lists(&[vec![1, 3, 4], vec![2]]).unwrap()
        );
        assert!(p.face_map(3).is_err());
        assert!(p.face_map(0).is_err());
        let two = OrderedPartition::from_lists(&[vec![1], vec![2]]).unwrap();
        assert_eq!(two.face_map(1).unwrap().len(), 1);
    }

    #[test]
    fn small_kn() {
        let k2 = build_kn(2).unwrap();
        assert_eq!(k2.complex.f_vector(), vec![1, 2]);
        let k3 = build_kn(3).unwrap();
        assert_eq!(k3.complex.f_vector(), vec![1, 6, 6]);
        let k4 = build_kn(4).unwrap();
        assert_eq!(k4.face_counts(), vec![14, 36, 24]);
        assert!(verify_sphere(4).unwrap().is_sphere);
        assert!(build_kn(1).is_err());
        assert!(matches!(build_kn(8), Err(Error::SizeGuard { .. })));
    }

    #[test]
    fn face_round_trip() {
        for p in ordered_partitions(VertexSubset::full(4))
            .into_iter()
            .filter(|p| p.len() >= 2)
        {
            assert_eq!(OrderedPartition::from_face(4, p.face()).unwrap(), p);
        }
    }

    #[test]
    fn tau_on_vertex() {
        let t = q(1, 3);
        let gamma = BarycentricPoint::new(
            OrderedPartition::from_lists(&[vec![1], vec![2, 3]]).unwrap(),
            vec![q(1, 1)],
        )
        .unwrap();
        let x = tau(&t, &gamma).unwrap();
        assert_eq!(x, vec![-t.clone(), q(0, 1)]);
        let mut seq = x.clone();
        seq.push(q(0, 1));
        assert_eq!(
            ordered_partition_from_rationals(VertexSubset::full(3), &seq).unwrap(),
            gamma.face
        );
        assert_eq!(tau_inv(&t, &x).unwrap(), gamma);
        assert!(tau(&q(1, 1), &gamma).is_err());
        assert!(tau_inv(&t, &[q(1, 5), q(0, 1)]).is_err());
    }
}
