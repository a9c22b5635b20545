//! Reduced simplicial (co)homology over ℤ, ℚ and F_p.
//!
//! Chains are indexed by faces in ascending-label order and the boundary is
//! `∂[v0 < ... < vk] = Σ (-1)^i [.. v̂i ..]`, augmented so that every vertex
//! bounds the empty face. Integer homology goes through Smith normal form with
//! arbitrary-precision entries.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::complex::SimplicialComplex;
use crate::field::{self, Coefficients, ColumnMatrix, Echelon, Field, SparseVec};
use crate::subset::VertexSubset;

/// Dense integer matrix, row-major.
pub type IntMatrix = Vec<Vec<BigInt>>;

/// Augmented simplicial chain complex of a face family.
#[derive(Clone, Debug)]
pub struct ChainComplexData {
    /// `bases[k + 1]` lists the k-faces (k ≥ -1) in ascending bitmask order.
    bases: Vec<Vec<VertexSubset>>,
    index: Vec<HashMap<VertexSubset, usize>>,
}

impl ChainComplexData {
    /// Builds the chain complex of a downward-closed face family.
    pub fn from_faces(faces: &[VertexSubset]) -> Self {
        let mut bases: Vec<Vec<VertexSubset>> = Vec::new();
        for f in faces {
            let k = f.len();
            if bases.len() <= k {
                bases.resize(k + 1, Vec::new());
            }
            bases[k].push(*f);
        }
        for b in &mut bases {
            b.sort();
            b.dedup();
        }
        let index = bases
            .iter()
            .map(|b| b.iter().enumerate().map(|(i, f)| (*f, i)).collect())
            .collect();
        let c = ChainComplexData { bases, index };
        debug_assert!(c.boundary_squares_to_zero());
        c
    }

    pub fn of_complex(k: &SimplicialComplex) -> Self {
        Self::from_faces(k.faces())
    }

    /// Top dimension present, `None` for an empty face family.
    pub fn top_dim(&self) -> Option<isize> {
        if self.bases.is_empty() {
            None
        } else {
            Some(self.bases.len() as isize - 2)
        }
    }

    /// Faces of dimension `k` (k ≥ -1).
    pub fn basis(&self, k: isize) -> &[VertexSubset] {
        if k < -1 {
            return &[];
        }
        self.bases
            .get((k + 1) as usize)
            .map(|v| v.as_slice())
            .unwrap_or(&[])
    }

    pub fn position(&self, face: VertexSubset) -> Option<usize> {
        self.index
            .get(face.len())
            .and_then(|m| m.get(&face).copied())
    }

    pub fn rank_of_chains(&self, k: isize) -> usize {
        self.basis(k).len()
    }

    /// Columns of `∂_k : C_k → C_{k-1}` with ±1 entries.
    pub fn boundary_columns(&self, k: isize) -> Vec<Vec<(usize, i64)>> {
        self.basis(k)
            .iter()
            .map(|f| {
                let mut col: Vec<(usize, i64)> = f
                    .iter()
                    .enumerate()
                    .map(|(i, v)| {
                        let g = f.remove(v);
                        let row = self.position(g).expect("face family is downward closed");
                        (row, if i % 2 == 0 { 1 } else { -1 })
                    })
                    .collect();
                col.sort_unstable();
                col
            })
            .collect()
    }

    /// `∂_k` over a field, as a column matrix.
    pub fn boundary_matrix<F: Field>(&self, field: &F, k: isize) -> ColumnMatrix<F::Elem> {
        ColumnMatrix {
            rows: self.rank_of_chains(k - 1),
            cols: self
                .boundary_columns(k)
                .into_iter()
                .map(|c| c.into_iter().map(|(r, v)| (r, field.from_i64(v))).collect())
                .collect(),
        }
    }

    /// `δ^k : C^k → C^{k+1}`, the transpose of `∂_{k+1}`.
    pub fn coboundary_matrix<F: Field>(&self, field: &F, k: isize) -> ColumnMatrix<F::Elem> {
        let mut cols: Vec<SparseVec<F::Elem>> = vec![Vec::new(); self.rank_of_chains(k)];
        for (j, col) in self.boundary_columns(k + 1).into_iter().enumerate() {
            for (r, v) in col {
                cols[r].push((j, field.from_i64(v)));
            }
        }
        ColumnMatrix {
            rows: self.rank_of_chains(k + 1),
            cols,
        }
    }

    pub fn boundary_dense(&self, k: isize) -> IntMatrix {
        let rows = self.rank_of_chains(k - 1);
        let cols = self.boundary_columns(k);
        let mut m = vec![vec![BigInt::zero(); cols.len()]; rows];
        for (j, col) in cols.iter().enumerate() {
            for (r, v) in col {
                m[*r][j] = BigInt::from(*v);
            }
        }
        m
    }

    /// Checks `∂_{k-1} ∘ ∂_k = 0` for all k.
    pub fn boundary_squares_to_zero(&self) -> bool {
        let top = match self.top_dim() {
            Some(t) => t,
            None => return true,
        };
        for k in 1..=top {
            let lower = self.boundary_columns(k - 1);
            for col in self.boundary_columns(k) {
                let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
                for (r, v) in col {
                    for (r2, v2) in &lower[r] {
                        *acc.entry(*r2).or_insert(0) += v * v2;
                    }
                }
                if acc.values().any(|v| *v != 0) {
                    return false;
                }
            }
        }
        true
    }
}

/// One reduced homology group `H̃_d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyGroup {
    pub degree: isize,
    /// Free rank over ℤ, or dimension over a field.
    pub rank: usize,
    /// Torsion coefficients `d1 | d2 | ...` (ℤ only).
    pub torsion: Vec<BigInt>,
}

/// Reduced homology in degrees `-1..=dim`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologySummary {
    /// `None` for integer coefficients.
    pub coefficients: Option<Coefficients>,
    pub groups: Vec<HomologyGroup>,
}

impl HomologySummary {
    pub fn group(&self, degree: isize) -> Option<&HomologyGroup> {
        self.groups.iter().find(|g| g.degree == degree)
    }

    pub fn rank(&self, degree: isize) -> usize {
        self.group(degree).map_or(0, |g| g.rank)
    }

    pub fn torsion(&self, degree: isize) -> &[BigInt] {
        self.group(degree).map_or(&[], |g| g.torsion.as_slice())
    }

    /// True when every group vanishes.
    pub fn is_acyclic(&self) -> bool {
        self.groups
            .iter()
            .all(|g| g.rank == 0 && g.torsion.is_empty())
    }

    /// `Σ (-1)^d rank H̃_d`.
    pub fn euler_characteristic(&self) -> i64 {
        self.groups
            .iter()
            .map(|g| {
                if g.degree.rem_euclid(2) == 0 {
                    g.rank as i64
                } else {
                    -(g.rank as i64)
                }
            })
            .sum()
    }

    /// Nonzero groups only, `(degree, rank, torsion)`.
    pub fn nonzero(&self) -> Vec<&HomologyGroup> {
        self.groups
            .iter()
            .filter(|g| g.rank > 0 || !g.torsion.is_empty())
            .collect()
    }

    pub fn is_homology_sphere_of_dim(&self, d: isize) -> bool {
        self.groups
            .iter()
            .all(|g| g.torsion.is_empty() && g.rank == usize::from(g.degree == d))
            && self.group(d).is_some()
    }
}

/// Smith normal form `M = U · D · V` with `U`, `V` unimodular.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.len().min(self.d.first().map_or(0, |r| r.len())))
            .map(|i| self.d[i][i].clone())
            .collect()
    }
}

pub fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect()
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner)
                        .filter(|&k| !row[k].is_zero() && !b[k][j].is_zero())
                        .fold(BigInt::zero(), |acc, k| acc + &row[k] * &b[k][j])
                })
                .collect()
        })
        .collect()
}

struct Transforms<'a> {
    u: Option<&'a mut IntMatrix>,
    v: Option<&'a mut IntMatrix>,
}

impl Transforms<'_> {
    fn swap_rows(&mut self, a: &mut IntMatrix, i: usize, j: usize) {
        a.swap(i, j);
        if let Some(u) = self.u.as_deref_mut() {
            for row in u.iter_mut() {
                row.swap(i, j);
            }
        }
    }

    fn swap_cols(&mut self, a: &mut IntMatrix, i: usize, j: usize) {
        for row in a.iter_mut() {
            row.swap(i, j);
        }
        if let Some(v) = self.v.as_deref_mut() {
            v.swap(i, j);
        }
    }

    /// row_i += q · row_j
    fn add_row(&mut self, a: &mut IntMatrix, i: usize, j: usize, q: &BigInt) {
        let src = a[j].clone();
        for (x, s) in a[i].iter_mut().zip(&src) {
            if !s.is_zero() {
                *x += q * s;
            }
        }
        if let Some(u) = self.u.as_deref_mut() {
            for row in u.iter_mut() {
                let t = &row[i] * q;
                row[j] -= t;
            }
        }
    }

    /// col_j += q · col_i
    fn add_col(&mut self, a: &mut IntMatrix, j: usize, i: usize, q: &BigInt) {
        for row in a.iter_mut() {
            if !row[i].is_zero() {
                let t = &row[i] * q;
                row[j] += t;
            }
        }
        if let Some(v) = self.v.as_deref_mut() {
            let src = v[j].clone();
            for (x, s) in v[i].iter_mut().zip(&src) {
                if !s.is_zero() {
                    *x -= q * s;
                }
            }
        }
    }

    fn negate_row(&mut self, a: &mut IntMatrix, i: usize) {
        for x in a[i].iter_mut() {
            *x = -std::mem::take(x);
        }
        if let Some(u) = self.u.as_deref_mut() {
            for row in u.iter_mut() {
                row[i] = -std::mem::take(&mut row[i]);
            }
        }
    }
}

fn snf_in_place(a: &mut IntMatrix, cols: usize, t: &mut Transforms<'_>) {
    let rows = a.len();
    for s in 0..rows.min(cols) {
        // minimal |entry| pivot in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in s..rows {
            for j in s..cols {
                if !a[i][j].is_zero()
                    && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        t.swap_rows(a, s, pi);
        t.swap_cols(a, s, pj);
        loop {
            let mut clean = true;
            for i in s + 1..rows {
                if !a[i][s].is_zero() {
                    let q = -(a[i][s].div_floor(&a[s][s]));
                    t.add_row(a, i, s, &q);
                    if !a[i][s].is_zero() {
                        clean = false;
                    }
                }
            }
            for j in s + 1..cols {
                if !a[s][j].is_zero() {
                    let q = -(a[s][j].div_floor(&a[s][s]));
                    t.add_col(a, j, s, &q);
                    if !a[s][j].is_zero() {
                        clean = false;
                    }
                }
            }
            if !clean {
                // bring the smallest remainder into the pivot position
                let mut best = (s, s);
                for i in s + 1..rows {
                    if !a[i][s].is_zero() && a[i][s].abs() < a[best.0][best.1].abs() {
                        best = (i, s);
                    }
                }
                for j in s + 1..cols {
                    if !a[s][j].is_zero() && a[s][j].abs() < a[best.0][best.1].abs() {
                        best = (s, j);
                    }
                }
                if best.0 != s {
                    t.swap_rows(a, s, best.0);
                } else if best.1 != s {
                    t.swap_cols(a, s, best.1);
                }
                continue;
            }
            // divisibility of the trailing block
            let mut offender = None;
            'outer: for i in s + 1..rows {
                for j in s + 1..cols {
                    if !(&a[i][j] % &a[s][s]).is_zero() {
                        offender = Some(i);
                        break 'outer;
                    }
                }
            }
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    t.add_row(a, s, i, &one);
                }
                None => break,
            }
        }
        if a[s][s].is_negative() {
            t.negate_row(a, s);
        }
    }
}

/// Smith normal form with unimodular transforms, `M = U · D · V`.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut d = m.clone();
    let mut u = identity(rows);
    let mut v = identity(cols);
    snf_in_place(
        &mut d,
        cols,
        &mut Transforms {
            u: Some(&mut u),
            v: Some(&mut v),
        },
    );
    SmithForm { u, d, v }
}

/// Nonzero invariant factors of a dense integer matrix.
pub fn invariant_factors_dense(m: &IntMatrix) -> Vec<BigInt> {
    let cols = m.first().map_or(0, |r| r.len());
    let mut d = m.clone();
    snf_in_place(&mut d, cols, &mut Transforms { u: None, v: None });
    (0..d.len().min(cols))
        .map(|i| d[i][i].clone())
        .take_while(|x| !x.is_zero())
        .collect()
}

/// Invariant factors of a sparse integer matrix given by columns.
///
/// Unit pivots are eliminated sparsely (each contributes a factor 1); the
/// remaining block, if any, goes through the dense algorithm.
pub fn invariant_factors_sparse(num_rows: usize, columns: &[Vec<(usize, i64)>]) -> Vec<BigInt> {
    let mut rows: Vec<BTreeMap<usize, BigInt>> = vec![BTreeMap::new(); num_rows];
    let mut colsets: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); columns.len()];
    for (j, col) in columns.iter().enumerate() {
        for (r, v) in col {
            if *v != 0 {
                rows[*r].insert(j, BigInt::from(*v));
                colsets[j].insert(*r);
            }
        }
    }
    let mut by_len: BTreeSet<(usize, usize)> = rows
        .iter()
        .enumerate()
        .filter(|(_, r)| !r.is_empty())
        .map(|(i, r)| (r.len(), i))
        .collect();
    let mut units = 0usize;
    loop {
        let mut pivot = None;
        for &(_, r) in by_len.iter() {
            let best = rows[r]
                .iter()
                .filter(|(_, v)| v.abs().is_one())
                .min_by_key(|(c, _)| colsets[**c].len())
                .map(|(c, _)| *c);
            if let Some(c) = best {
                pivot = Some((r, c));
                break;
            }
        }
        let Some((p, c)) = pivot else { break };
        let prow = rows[p].clone();
        let pval = prow[&c].clone();
        let others: Vec<usize> = colsets[c].iter().copied().filter(|&r| r != p).collect();
        for r in others {
            by_len.remove(&(rows[r].len(), r));
            let f = &rows[r][&c] * &pval; // pval = ±1 is its own inverse
            for (j, v) in &prow {
                let entry = rows[r].entry(*j).or_insert_with(BigInt::zero);
                *entry -= &f * v;
                if entry.is_zero() {
                    rows[r].remove(j);
                    colsets[*j].remove(&r);
                } else {
                    colsets[*j].insert(r);
                }
            }
            if !rows[r].is_empty() {
                by_len.insert((rows[r].len(), r));
            }
        }
        by_len.remove(&(prow.len(), p));
        for j in prow.keys() {
            colsets[*j].remove(&p);
        }
        rows[p].clear();
        units += 1;
    }
    let live_rows: Vec<usize> = (0..num_rows).filter(|&r| !rows[r].is_empty()).collect();
    let mut factors: Vec<BigInt> = vec![BigInt::one(); units];
    if !live_rows.is_empty() {
        let live_cols: Vec<usize> = (0..columns.len())
            .filter(|&c| !colsets[c].is_empty())
            .collect();
        let dense: IntMatrix = live_rows
            .iter()
            .map(|&r| {
                live_cols
                    .iter()
                    .map(|c| rows[r].get(c).cloned().unwrap_or_else(BigInt::zero))
                    .collect()
            })
            .collect();
        factors.extend(invariant_factors_dense(&dense));
    }
    factors
}

/// Reduced integral homology of a face family.
pub fn reduced_homology_z_faces(faces: &[VertexSubset]) -> HomologySummary {
    let c = ChainComplexData::from_faces(faces);
    let Some(top) = c.top_dim() else {
        return HomologySummary {
            coefficients: None,
            groups: Vec::new(),
        };
    };
    // factors[k + 1] = invariant factors of ∂_k
    let factors: Vec<Vec<BigInt>> = (-1..=top + 1)
        .map(|k| {
            if k <= -1 || k > top {
                Vec::new()
            } else {
                invariant_factors_sparse(c.rank_of_chains(k - 1), &c.boundary_columns(k))
            }
        })
        .collect();
    let groups = (-1..=top)
        .map(|d| {
            let rank_out = factors[(d + 1) as usize].len();
            let incoming = &factors[(d + 2) as usize];
            HomologyGroup {
                degree: d,
                rank: c.rank_of_chains(d) - rank_out - incoming.len(),
                torsion: incoming.iter().filter(|x| !x.is_one()).cloned().collect(),
            }
        })
        .collect();
    HomologySummary {
        coefficients: None,
        groups,
    }
}

pub fn reduced_homology_z(k: &SimplicialComplex) -> HomologySummary {
    reduced_homology_z_faces(k.faces())
}

/// Reduced homology dimensions over a field (equal to the cohomology
/// dimensions).
pub fn reduced_homology_field_faces<F: Field>(
    field: &F,
    faces: &[VertexSubset],
) -> HomologySummary {
    let c = ChainComplexData::from_faces(faces);
    let Some(top) = c.top_dim() else {
        return HomologySummary {
            coefficients: Some(field.descriptor()),
            groups: Vec::new(),
        };
    };
    let ranks: Vec<usize> = (-1..=top + 1)
        .map(|k| {
            if k <= -1 || k > top {
                0
            } else {
                field::rank(field, &c.boundary_matrix(field, k))
            }
        })
        .collect();
    let groups = (-1..=top)
        .map(|d| HomologyGroup {
            degree: d,
            rank: c.rank_of_chains(d) - ranks[(d + 1) as usize] - ranks[(d + 2) as usize],
            torsion: Vec::new(),
        })
        .collect();
    HomologySummary {
        coefficients: Some(field.descriptor()),
        groups,
    }
}

pub fn reduced_homology_field<F: Field>(field: &F, k: &SimplicialComplex) -> HomologySummary {
    reduced_homology_field_faces(field, k.faces())
}

/// Coefficient-dispatching entry point: `None` means ℤ.
pub fn reduced_homology(k: &SimplicialComplex, coeffs: Option<Coefficients>) -> HomologySummary {
    match coeffs {
        None => reduced_homology_z(k),
        Some(c) => crate::with_field!(c, |f| reduced_homology_field(&f, k)),
    }
}

/// A cocycle on a face family, stored by face.
#[derive(Clone, Debug, PartialEq)]
pub struct Cochain<E> {
    pub degree: isize,
    pub values: BTreeMap<VertexSubset, E>,
}

impl<E: Clone> Cochain<E> {
    pub fn zero(degree: isize) -> Self {
        Cochain {
            degree,
            values: BTreeMap::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, face: &VertexSubset) -> Option<&E> {
        self.values.get(face)
    }
}

/// A basis of `H̃^p` of a face family, with the linear algebra needed to
/// express any cocycle in that basis.
pub struct CohomologyBasis<F: Field> {
    field: F,
    chains: ChainComplexData,
    degree: isize,
    reps: Vec<SparseVec<F::Elem>>,
    classes: Echelon<F>,
}

impl<F: Field> CohomologyBasis<F> {
    pub fn new(field: &F, faces: &[VertexSubset], degree: isize) -> Self {
        let chains = ChainComplexData::from_faces(faces);
        let delta = chains.coboundary_matrix(field, degree);
        let cocycles = field::kernel(field, &delta);
        let mut boundaries = Echelon::new(field.clone());
        if degree > -1 {
            for col in chains.coboundary_matrix(field, degree - 1).cols {
                boundaries.insert(col);
            }
        }
        let mut reps = Vec::new();
        for z in cocycles {
            if boundaries.insert(z.clone()) {
                reps.push(z);
            }
        }
        let mut classes = Echelon::tracking(field.clone());
        for r in &reps {
            classes.insert(r.clone());
        }
        if degree > -1 {
            for col in chains.coboundary_matrix(field, degree - 1).cols {
                classes.insert(col);
            }
        }
        CohomologyBasis {
            field: field.clone(),
            chains,
            degree,
            reps,
            classes,
        }
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn degree(&self) -> isize {
        self.degree
    }

    pub fn faces(&self) -> &[VertexSubset] {
        self.chains.basis(self.degree)
    }

    pub fn representative(&self, i: usize) -> Cochain<F::Elem> {
        self.to_cochain(&self.reps[i])
    }

    pub fn representatives(&self) -> Vec<Cochain<F::Elem>> {
        (0..self.dim()).map(|i| self.representative(i)).collect()
    }

    fn to_cochain(&self, v: &SparseVec<F::Elem>) -> Cochain<F::Elem> {
        let faces = self.faces();
        Cochain {
            degree: self.degree,
            values: v.iter().map(|(i, e)| (faces[*i], e.clone())).collect(),
        }
    }

    fn to_vector(&self, c: &Cochain<F::Elem>) -> SparseVec<F::Elem> {
        let mut v: SparseVec<F::Elem> = c
            .values
            .iter()
            .filter(|(_, e)| !self.field.is_zero(e))
            .map(|(f, e)| {
                (
                    self.chains
                        .position(*f)
                        .expect("cochain supported on faces"),
                    e.clone(),
                )
            })
            .collect();
        v.sort_by_key(|(i, _)| *i);
        v
    }

    pub fn is_cocycle(&self, c: &Cochain<F::Elem>) -> bool {
        let delta = self.chains.coboundary_matrix(&self.field, self.degree);
        delta.apply(&self.field, &self.to_vector(c)).is_empty()
    }

    /// Coordinates of the class of a cocycle in the representative basis.
    pub fn coordinates(&self, c: &Cochain<F::Elem>) -> Option<Vec<F::Elem>> {
        let combo = self.classes.solve(&self.to_vector(c))?;
        let mut coords = vec![self.field.zero(); self.dim()];
        for (g, e) in combo {
            if g < coords.len() {
                coords[g] = e;
            }
        }
        Some(coords)
    }

    pub fn is_coboundary(&self, c: &Cochain<F::Elem>) -> bool {
        self.coordinates(c)
            .map_or(false, |x| x.iter().all(|e| self.field.is_zero(e)))
    }
}

/// Cocycle representatives of a basis of `H̃^degree(K; field)`.
pub fn cocycle_basis<F: Field>(
    field: &F,
    k: &SimplicialComplex,
    degree: isize,
) -> Vec<Cochain<F::Elem>> {
    CohomologyBasis::new(field, k.faces(), degree).representatives()
}
