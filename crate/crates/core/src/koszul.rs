//! A finite Koszul-type DGA computing `Tor_{k[v_1..v_n]}(k[K], k)`.
//!
//! Basis `u_J v_σ` with `J ∩ σ = ∅` and `σ ∈ K`; the `u_i` are exterior of
//! degree 1, the `v_i` have degree 2 and square to zero, `u_i v_i = 0`, and
//! `d u_i = v_i`. The model splits over multidegrees `J ∪ σ`, so all linear
//! algebra happens inside one multigraded block at a time.

use std::collections::{BTreeMap, HashMap};

use rand::RngCore;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::SimplicialComplex;
use crate::field::{self, ColumnMatrix, Echelon, Field, SparseVec};
use crate::hochster::{self, BigradedTable};
use crate::subset::{shuffle_sign, VertexSubset};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct KoszulBasisElement {
    pub j: VertexSubset,
    pub sigma: VertexSubset,
}

impl KoszulBasisElement {
    pub fn new(j: VertexSubset, sigma: VertexSubset) -> Self {
        debug_assert!(j.is_disjoint(sigma));
        KoszulBasisElement { j, sigma }
    }

    pub fn homological_degree(&self) -> usize {
        self.j.len()
    }

    pub fn total_degree(&self) -> usize {
        self.j.len() + 2 * self.sigma.len()
    }

    pub fn multidegree(&self) -> VertexSubset {
        self.j | self.sigma
    }
}

/// A finite linear combination of basis elements.
#[derive(Clone, Debug, PartialEq)]
pub struct KoszulElement<F: Field> {
    pub field: F,
    pub terms: BTreeMap<KoszulBasisElement, F::Elem>,
}

impl<F: Field> KoszulElement<F> {
    pub fn zero(field: &F) -> Self {
        KoszulElement {
            field: field.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(field: &F, e: KoszulBasisElement) -> Self {
        let mut z = Self::zero(field);
        z.add_term(e, field.one());
        z
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, e: KoszulBasisElement, c: F::Elem) {
        let f = &self.field;
        let v = match self.terms.remove(&e) {
            Some(old) => f.add(&old, &c),
            None => c,
        };
        if !f.is_zero(&v) {
            self.terms.insert(e, v);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let mut out = Self::zero(&self.field);
        for (e, v) in &self.terms {
            out.add_term(*e, self.field.mul(c, v));
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&self.field.neg(&self.field.one())))
    }

    /// Total degree of a homogeneous nonzero element.
    pub fn total_degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(|e| e.total_degree());
        let d = it.next()?;
        it.all(|x| x == d).then_some(d)
    }
}

/// Basis elements of one multidegree and total degree.
#[derive(Clone, Debug)]
pub struct Block {
    pub multidegree: VertexSubset,
    pub degree: usize,
    pub basis: Vec<KoszulBasisElement>,
    index: HashMap<KoszulBasisElement, usize>,
}

impl Block {
    fn new(multidegree: VertexSubset, degree: usize, basis: Vec<KoszulBasisElement>) -> Self {
        let index = basis.iter().enumerate().map(|(i, e)| (*e, i)).collect();
        Block {
            multidegree,
            degree,
            basis,
            index,
        }
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    fn vector<F: Field>(&self, x: &KoszulElement<F>) -> SparseVec<F::Elem> {
        let mut v: SparseVec<F::Elem> = x
            .terms
            .iter()
            .map(|(e, c)| {
                (
                    *self.index.get(e).expect("element lies in this block"),
                    c.clone(),
                )
            })
            .collect();
        v.sort_by_key(|(i, _)| *i);
        v
    }

    fn element<F: Field>(&self, field: &F, v: &SparseVec<F::Elem>) -> KoszulElement<F> {
        let mut x = KoszulElement::zero(field);
        for (i, c) in v {
            x.add_term(self.basis[*i], c.clone());
        }
        x
    }
}

/// The DGA: basis blocks, differential and product.
pub struct KoszulModel<F: Field> {
    field: F,
    complex: SimplicialComplex,
    blocks: HashMap<(VertexSubset, usize), Block>,
}

impl<F: Field> KoszulModel<F> {
    /// Enumerates the basis `u_J v_σ` grouped by multidegree and total degree.
    pub fn build(k: &SimplicialComplex, field: &F) -> Self {
        let mut grouped: BTreeMap<(VertexSubset, usize), Vec<KoszulBasisElement>> = BTreeMap::new();
        let full = VertexSubset::full(k.n());
        for &sigma in k.faces() {
            for j in full.difference(sigma).subsets() {
                let e = KoszulBasisElement::new(j, sigma);
                grouped
                    .entry((e.multidegree(), e.total_degree()))
                    .or_default()
                    .push(e);
            }
        }
        let blocks = grouped
            .into_iter()
            .map(|((m, d), mut basis)| {
                basis.sort();
                ((m, d), Block::new(m, d, basis))
            })
            .collect();
        KoszulModel {
            field: field.clone(),
            complex: k.clone(),
            blocks,
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn block(&self, multidegree: VertexSubset, degree: usize) -> Option<&Block> {
        self.blocks.get(&(multidegree, degree))
    }

    pub fn blocks(&self) -> impl Iterator<Item = &Block> {
        self.blocks.values()
    }

    pub fn dimension(&self) -> usize {
        self.blocks.values().map(Block::len).sum()
    }

    /// `d(u_J v_σ) = Σ_ℓ (-1)^{ℓ-1} u_{J - j_ℓ} v_{σ ∪ j_ℓ}` over `σ ∪ j_ℓ ∈ K`.
    pub fn differential_basis(&self, e: KoszulBasisElement) -> KoszulElement<F> {
        let mut out = KoszulElement::zero(&self.field);
        for (pos, i) in e.j.iter().enumerate() {
            let sigma = e.sigma.insert(i);
            if !self.complex.contains(sigma) {
                continue;
            }
            let sign = if pos % 2 == 0 { 1 } else { -1 };
            out.add_term(
                KoszulBasisElement::new(e.j.remove(i), sigma),
                self.field.from_i64(sign),
            );
        }
        out
    }

    pub fn differential(&self, x: &KoszulElement<F>) -> KoszulElement<F> {
        let mut out = KoszulElement::zero(&self.field);
        for (e, c) in &x.terms {
            for (t, v) in self.differential_basis(*e).terms {
                out.add_term(t, self.field.mul(c, &v));
            }
        }
        out
    }

    /// `u_J v_σ · u_{J'} v_{σ'} = ε(J, J') u_{J∪J'} v_{σ∪σ'}` when all four
    /// sets are pairwise disjoint and `σ ∪ σ' ∈ K`, zero otherwise.
    pub fn product_basis(
        &self,
        a: KoszulBasisElement,
        b: KoszulBasisElement,
    ) -> Option<(KoszulBasisElement, i64)> {
        if !a.multidegree().is_disjoint(b.multidegree()) {
            return None;
        }
        let sigma = a.sigma | b.sigma;
        if !self.complex.contains(sigma) {
            return None;
        }
        Some((
            KoszulBasisElement::new(a.j | b.j, sigma),
            shuffle_sign(a.j, b.j),
        ))
    }

    pub fn product(&self, x: &KoszulElement<F>, y: &KoszulElement<F>) -> KoszulElement<F> {
        let f = &self.field;
        let mut out = KoszulElement::zero(f);
        for (a, ca) in &x.terms {
            for (b, cb) in &y.terms {
                if let Some((e, s)) = self.product_basis(*a, *b) {
                    out.add_term(e, f.mul(&f.from_i64(s), &f.mul(ca, cb)));
                }
            }
        }
        out
    }

    /// Matrix of `d` from block `(M, d)` into block `(M, d+1)`.
    pub fn differential_matrix(
        &self,
        multidegree: VertexSubset,
        degree: usize,
    ) -> ColumnMatrix<F::Elem> {
        let source = self.block(multidegree, degree);
        let target = self.block(multidegree, degree + 1);
        let rows = target.map_or(0, Block::len);
        let cols = match source {
            None => Vec::new(),
            Some(s) => s
                .basis
                .iter()
                .map(|e| {
                    let de = self.differential_basis(*e);
                    match target {
                        Some(t) => t.vector(&de),
                        None => {
                            debug_assert!(de.is_zero());
                            Vec::new()
                        }
                    }
                })
                .collect(),
        };
        ColumnMatrix { rows, cols }
    }

    pub fn verify_d_squared(&self) -> bool {
        self.blocks
            .values()
            .flat_map(|b| b.basis.iter())
            .all(|e| self.differential(&self.differential_basis(*e)).is_zero())
    }

    /// Checks `d(xy) = (dx)y + (-1)^{|x|} x(dy)` on basis pairs: all pairs
    /// when there are at most `exhaustive_limit` basis elements, otherwise
    /// `samples` random pairs.
    pub fn verify_leibniz(
        &self,
        exhaustive_limit: usize,
        samples: usize,
        rng: &mut dyn RngCore,
    ) -> bool {
        let mut all: Vec<KoszulBasisElement> = self
            .blocks
            .values()
            .flat_map(|b| b.basis.iter().copied())
            .collect();
        all.sort();
        let check = |a: KoszulBasisElement, b: KoszulBasisElement| {
            let f = &self.field;
            let x = KoszulElement::basis(f, a);
            let y = KoszulElement::basis(f, b);
            let lhs = self.differential(&self.product(&x, &y));
            let sign = if a.total_degree() % 2 == 0 {
                f.one()
            } else {
                f.neg(&f.one())
            };
            let rhs = self
                .product(&self.differential(&x), &y)
                .add(&self.product(&x, &self.differential(&y)).scale(&sign));
            lhs == rhs
        };
        if all.len() <= exhaustive_limit {
            all.par_iter().all(|a| all.iter().all(|b| check(*a, *b)))
        } else {
            (0..samples).all(|_| {
                let a = all[(rng.next_u64() % all.len() as u64) as usize];
                let b = all[(rng.next_u64() % all.len() as u64) as usize];
                check(a, b)
            })
        }
    }
}

/// Cohomology data of one block.
struct BlockCohomology<F: Field> {
    cocycles: Vec<SparseVec<F::Elem>>,
    reps: Vec<SparseVec<F::Elem>>,
    classes: Echelon<F>,
    boundaries: Echelon<F>,
}

/// A basis class of the cohomology, identified by its block and index.
#[derive(Clone, Debug, PartialEq)]
pub struct KoszulClass<F: Field> {
    pub multidegree: VertexSubset,
    pub degree: usize,
    pub index: usize,
    pub representative: KoszulElement<F>,
}

/// Cohomology of the model with representatives per multigraded block.
pub struct KoszulCohomology<F: Field> {
    model: KoszulModel<F>,
    data: HashMap<(VertexSubset, usize), BlockCohomology<F>>,
}

/// Multigraded dimension record used in reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultigradedDim {
    pub multidegree: Vec<usize>,
    pub degree: usize,
    pub dim: usize,
}

impl<F: Field> KoszulCohomology<F> {
    pub fn compute(model: KoszulModel<F>) -> Self {
        let keys: Vec<(VertexSubset, usize)> = model.blocks.keys().copied().collect();
        let data = keys
            .par_iter()
            .map(|&(m, d)| ((m, d), block_cohomology(&model, m, d)))
            .collect::<Vec<_>>()
            .into_iter()
            .collect();
        KoszulCohomology { model, data }
    }

    pub fn model(&self) -> &KoszulModel<F> {
        &self.model
    }

    pub fn dim(&self, multidegree: VertexSubset, degree: usize) -> usize {
        self.data
            .get(&(multidegree, degree))
            .map_or(0, |b| b.reps.len())
    }

    /// Nonzero multigraded dimensions, ordered by multidegree then degree.
    pub fn multigraded_dims(&self) -> Vec<MultigradedDim> {
        let mut keys: Vec<_> = self
            .data
            .iter()
            .filter(|(_, b)| !b.reps.is_empty())
            .map(|(k, b)| (*k, b.reps.len()))
            .collect();
        keys.sort();
        keys.into_iter()
            .map(|((m, d), dim)| MultigradedDim {
                multidegree: m.to_vec(),
                degree: d,
                dim,
            })
            .collect()
    }

    /// Dimensions by total degree.
    pub fn graded_dims(&self) -> Vec<usize> {
        let mut poly = Vec::new();
        for ((_, d), b) in &self.data {
            if !b.reps.is_empty() {
                hochster::add_coefficient(&mut poly, *d, b.reps.len());
            }
        }
        poly
    }

    pub fn classes(&self, multidegree: VertexSubset, degree: usize) -> Vec<KoszulClass<F>> {
        let (Some(block), Some(data)) = (
            self.model.block(multidegree, degree),
            self.data.get(&(multidegree, degree)),
        ) else {
            return Vec::new();
        };
        data.reps
            .iter()
            .enumerate()
            .map(|(index, r)| KoszulClass {
                multidegree,
                degree,
                index,
                representative: block.element(&self.model.field, r),
            })
            .collect()
    }

    /// All basis classes of positive degree, ordered by block.
    pub fn positive_classes(&self) -> Vec<KoszulClass<F>> {
        let mut keys: Vec<_> = self
            .data
            .iter()
            .filter(|((m, _), b)| !m.is_empty() && !b.reps.is_empty())
            .map(|(k, _)| *k)
            .collect();
        keys.sort();
        keys.into_iter()
            .flat_map(|(m, d)| self.classes(m, d))
            .collect()
    }

    /// Coordinates of a homogeneous cocycle in block `(M, d)`.
    pub fn coordinates(
        &self,
        multidegree: VertexSubset,
        degree: usize,
        x: &KoszulElement<F>,
    ) -> Option<Vec<F::Elem>> {
        let f = &self.model.field;
        let Some(data) = self.data.get(&(multidegree, degree)) else {
            return x.is_zero().then(Vec::new);
        };
        let block = self.model.block(multidegree, degree)?;
        if !self.model.differential(x).is_zero() {
            return None;
        }
        let combo = data.classes.solve(&block.vector(x))?;
        let mut coords = vec![f.zero(); data.reps.len()];
        for (g, c) in combo {
            if g < coords.len() {
                coords[g] = c;
            }
        }
        Some(coords)
    }

    pub fn is_zero_class(
        &self,
        multidegree: VertexSubset,
        degree: usize,
        x: &KoszulElement<F>,
    ) -> bool {
        let f = &self.model.field;
        self.coordinates(multidegree, degree, x)
            .map_or(false, |c| c.iter().all(|e| f.is_zero(e)))
    }

    /// Some `y` in block `(M, d-1)` with `dy = x`, chosen by echelon
    /// back-substitution; with an rng a random cocycle is added.
    pub fn bounding_cochain(
        &self,
        multidegree: VertexSubset,
        degree: usize,
        x: &KoszulElement<F>,
        rng: Option<&mut dyn RngCore>,
    ) -> Option<KoszulElement<F>> {
        let f = &self.model.field;
        if degree == 0 {
            return x.is_zero().then(|| KoszulElement::zero(f));
        }
        let Some(source) = self.model.block(multidegree, degree - 1) else {
            return x.is_zero().then(|| KoszulElement::zero(f));
        };
        let data = self
            .data
            .get(&(multidegree, degree - 1))
            .expect("block data");
        let v = match self.model.block(multidegree, degree) {
            Some(t) => t.vector(x),
            None if x.is_zero() => Vec::new(),
            None => return None,
        };
        let target_data = self.data.get(&(multidegree, degree));
        let mut y = match target_data {
            Some(td) => td.boundaries.solve(&v)?,
            None if v.is_empty() => Vec::new(),
            None => return None,
        };
        if let Some(mut rng) = rng {
            for z in &data.cocycles {
                let c = f.random(&mut rng);
                y = field::axpy(f, &y, &c, z);
            }
        }
        Some(source.element(f, &y))
    }
}

fn reborrow<'a>(rng: &'a mut Option<&mut dyn RngCore>) -> Option<&'a mut dyn RngCore> {
    match rng {
        Some(r) => Some(&mut **r),
        None => None,
    }
}

fn block_cohomology<F: Field>(
    model: &KoszulModel<F>,
    m: VertexSubset,
    d: usize,
) -> BlockCohomology<F> {
    let f = &model.field;
    let delta = model.differential_matrix(m, d);
    let cocycles = field::kernel(f, &delta);
    let incoming = if d > 0 {
        model.differential_matrix(m, d - 1).cols
    } else {
        Vec::new()
    };
    let mut boundaries = Echelon::tracking(f.clone());
    for c in &incoming {
        boundaries.insert(c.clone());
    }
    let mut image = Echelon::new(f.clone());
    for c in &incoming {
        image.insert(c.clone());
    }
    let mut reps = Vec::new();
    for z in &cocycles {
        if image.insert(z.clone()) {
            reps.push(z.clone());
        }
    }
    let mut classes = Echelon::tracking(f.clone());
    for r in &reps {
        classes.insert(r.clone());
    }
    for c in incoming {
        classes.insert(c);
    }
    BlockCohomology {
        cocycles,
        reps,
        classes,
        boundaries,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MasseyVerdict {
    Vanishes,
    Nontrivial,
    Undefined,
}

/// `⟨a, b, c⟩ = [a·y - (-1)^{|a|} x·c]` where `dx = a·b`, `dy = b·c`.
#[derive(Clone, Debug, PartialEq)]
pub struct MasseyResult<F: Field> {
    pub defined: bool,
    pub multidegree: VertexSubset,
    pub degree: usize,
    pub representative: Option<KoszulElement<F>>,
    /// Coordinates of the representative in the cohomology basis.
    pub coordinates: Option<Vec<F::Elem>>,
    /// Basis (in coordinates) of `a·H + H·c`.
    pub indeterminacy: Vec<Vec<F::Elem>>,
    pub verdict: MasseyVerdict,
}

impl<F: Field> KoszulCohomology<F> {
    fn class_product(&self, a: &KoszulClass<F>, b: &KoszulClass<F>) -> KoszulElement<F> {
        self.model.product(&a.representative, &b.representative)
    }

    /// Triple Massey product with deterministic bounding cochains.
    pub fn triple_massey(
        &self,
        a: &KoszulClass<F>,
        b: &KoszulClass<F>,
        c: &KoszulClass<F>,
    ) -> MasseyResult<F> {
        self.triple_massey_with(a, b, c, None)
    }

    /// As [`Self::triple_massey`]; with an rng the bounding cochains are
    /// perturbed by random cocycles.
    pub fn triple_massey_with(
        &self,
        a: &KoszulClass<F>,
        b: &KoszulClass<F>,
        c: &KoszulClass<F>,
        mut rng: Option<&mut dyn RngCore>,
    ) -> MasseyResult<F> {
        let f = &self.model.field;
        let multidegree = a.multidegree | b.multidegree | c.multidegree;
        let degree = a.degree + b.degree + c.degree - 1;
        let undefined = MasseyResult {
            defined: false,
            multidegree,
            degree,
            representative: None,
            coordinates: None,
            indeterminacy: Vec::new(),
            verdict: MasseyVerdict::Undefined,
        };
        let ab = self.class_product(a, b);
        let bc = self.class_product(b, c);
        let ab_md = a.multidegree | b.multidegree;
        let bc_md = b.multidegree | c.multidegree;
        let x = match self.bounding_cochain(ab_md, a.degree + b.degree, &ab, reborrow(&mut rng)) {
            Some(x) => x,
            None => return undefined,
        };
        let y = match self.bounding_cochain(bc_md, b.degree + c.degree, &bc, reborrow(&mut rng)) {
            Some(y) => y,
            None => return undefined,
        };
        let sign = if a.degree % 2 == 0 {
            f.one()
        } else {
            f.neg(&f.one())
        };
        let rep = self
            .model
            .product(&a.representative, &y)
            .sub(&self.model.product(&x, &c.representative).scale(&sign));
        let coords = self
            .coordinates(multidegree, degree, &rep)
            .expect("Massey representative is a cocycle");

        let mut span = Echelon::new(f.clone());
        let mut indeterminacy = Vec::new();
        let mut push = |v: Vec<F::Elem>, span: &mut Echelon<F>| {
            if span.insert(field::from_dense(f, &v)) {
                indeterminacy.push(v);
            }
        };
        let overlapping = !a.multidegree.is_disjoint(b.multidegree)
            || !b.multidegree.is_disjoint(c.multidegree)
            || !a.multidegree.is_disjoint(c.multidegree);
        if !overlapping {
            for h in self.classes(bc_md, b.degree + c.degree - 1) {
                let p = self.model.product(&a.representative, &h.representative);
                push(
                    self.coordinates(multidegree, degree, &p).expect("cocycle"),
                    &mut span,
                );
            }
            for h in self.classes(ab_md, a.degree + b.degree - 1) {
                let p = self.model.product(&h.representative, &c.representative);
                push(
                    self.coordinates(multidegree, degree, &p).expect("cocycle"),
                    &mut span,
                );
            }
        }
        let vanishes = span.contains(&field::from_dense(f, &coords));
        MasseyResult {
            defined: true,
            multidegree,
            degree,
            representative: Some(rep),
            coordinates: Some(coords),
            indeterminacy,
            verdict: if vanishes {
                MasseyVerdict::Vanishes
            } else {
                MasseyVerdict::Nontrivial
            },
        }
    }

    /// Rank of the span of products `H(M₁) · H(M₂)` per target total degree.
    pub fn product_ranks(&self, m1: VertexSubset, m2: VertexSubset) -> BTreeMap<usize, usize> {
        let f = &self.model.field;
        let mut spans: BTreeMap<usize, Echelon<F>> = BTreeMap::new();
        let left: Vec<_> = self
            .positive_classes()
            .into_iter()
            .filter(|c| c.multidegree == m1)
            .collect();
        let right: Vec<_> = self
            .positive_classes()
            .into_iter()
            .filter(|c| c.multidegree == m2)
            .collect();
        for a in &left {
            for b in &right {
                let d = a.degree + b.degree;
                let p = self.class_product(a, b);
                let coords = self
                    .coordinates(m1 | m2, d, &p)
                    .expect("product of cocycles");
                spans
                    .entry(d)
                    .or_insert_with(|| Echelon::new(f.clone()))
                    .insert(field::from_dense(f, &coords));
            }
        }
        spans.into_iter().map(|(d, e)| (d, e.rank())).collect()
    }

    /// True when every product of positive-degree basis classes is zero.
    pub fn products_vanish(&self) -> bool {
        let classes = self.positive_classes();
        classes.iter().all(|a| {
            classes.iter().all(|b| {
                let p = self.class_product(a, b);
                self.is_zero_class(a.multidegree | b.multidegree, a.degree + b.degree, &p)
            })
        })
    }

    /// Triples of positive-degree basis classes with pairwise disjoint
    /// multidegrees.
    pub fn admissible_triples(&self) -> Vec<(KoszulClass<F>, KoszulClass<F>, KoszulClass<F>)> {
        let classes = self.positive_classes();
        let mut out = Vec::new();
        for a in &classes {
            for b in classes
                .iter()
                .filter(|b| b.multidegree.is_disjoint(a.multidegree))
            {
                for c in classes.iter().filter(|c| {
                    c.multidegree.is_disjoint(a.multidegree)
                        && c.multidegree.is_disjoint(b.multidegree)
                }) {
                    out.push((a.clone(), b.clone(), c.clone()));
                }
            }
        }
        out
    }
}

/// Builds the model and its cohomology.
pub fn cohomology<F: Field>(k: &SimplicialComplex, field: &F) -> KoszulCohomology<F> {
    KoszulCohomology::compute(KoszulModel::build(k, field))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossValidation {
    pub dimensions_agree: bool,
    pub products_agree: bool,
    pub mismatches: Vec<String>,
}

impl CrossValidation {
    pub fn agree(&self) -> bool {
        self.dimensions_agree && self.products_agree
    }
}

/// Compares the model against the Hochster table and products.
pub fn cross_validate<F: Field>(k: &SimplicialComplex, field: &F) -> CrossValidation {
    let ring = hochster::HochsterRing::new(k, field);
    let koszul = cohomology(k, field);
    cross_validate_with(&ring, &koszul)
}

pub fn cross_validate_with<F: Field>(
    ring: &hochster::HochsterRing<F>,
    koszul: &KoszulCohomology<F>,
) -> CrossValidation {
    let table: &BigradedTable = ring.table();
    let mut mismatches = Vec::new();
    let full = VertexSubset::full(table.n);
    for m in full.subsets() {
        let max_degree = 2 * m.len();
        for d in 0..=max_degree {
            let p = d as isize - m.len() as isize - 1;
            let h = table.dim(m, p);
            let kd = koszul.dim(m, d);
            if h != kd {
                mismatches.push(format!(
                    "multidegree {m} degree {d}: hochster {h}, koszul {kd}"
                ));
            }
        }
    }
    let dimensions_agree = mismatches.is_empty();

    let report = hochster::all_products_vanish_in(ring);
    let mut products_agree = report.all_vanish == koszul.products_vanish();
    if !products_agree {
        mismatches.push("product vanishing verdicts differ".to_string());
    }
    let mut supports: Vec<VertexSubset> = ring.supports().into_iter().map(|(s, _)| s).collect();
    supports.dedup();
    for (x, &i) in supports.iter().enumerate() {
        for &j in &supports[x + 1..] {
            if !i.is_disjoint(j) {
                continue;
            }
            let h: BTreeMap<usize, usize> = ring
                .product_ranks(i, j)
                .into_iter()
                .filter(|(_, r)| *r > 0)
                .collect();
            let kz: BTreeMap<usize, usize> = koszul
                .product_ranks(i, j)
                .into_iter()
                .filter(|(_, r)| *r > 0)
                .collect();
            if h != kz {
                products_agree = false;
                mismatches.push(format!(
                    "product ranks for {i}·{j}: hochster {h:?}, koszul {kz:?}"
                ));
            }
        }
    }
    CrossValidation {
        dimensions_agree,
        products_agree,
        mismatches,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn cycle4() -> SimplicialComplex {
        SimplicialComplex::from_facet_lists(4, &[vec![1, 2], vec![2, 3], vec![3, 4], vec![1, 4]])
            .unwrap()
    }

    #[test]
    fn one_point() {
        let k = SimplicialComplex::simplex(1);
        let model = KoszulModel::build(&k, &Rationals);
        assert_eq!(model.dimension(), 3);
        let u1 = KoszulBasisElement::new(VertexSubset::of(&[1]), VertexSubset::default());
        let v1 = KoszulBasisElement::new(VertexSubset::default(), VertexSubset::of(&[1]));
        assert_eq!(
            model.differential_basis(u1),
            KoszulElement::basis(&Rationals, v1)
        );
        let h = KoszulCohomology::compute(model);
        assert_eq!(h.graded_dims(), vec![1]);
    }

    #[test]
    fn two_points_is_three_sphere() {
        let k = SimplicialComplex::from_facet_lists(2, &[vec![1], vec![2]]).unwrap();
        assert_eq!(cohomology(&k, &Rationals).graded_dims(), vec![1, 0, 0, 1]);
    }

    #[test]
    fn cycle_dims_and_products() {
        let k = cycle4();
        let f = PrimeField::new(3).unwrap();
        let h = cohomology(&k, &f);
        assert_eq!(h.graded_dims(), vec![1, 0, 0, 2, 0, 0, 1]);
        assert!(h.model().verify_d_squared());
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(h.model().verify_leibniz(10_000, 0, &mut rng));
        assert!(!h.products_vanish());
        let a = &h.classes(VertexSubset::of(&[1, 3]), 3)[0];
        let b = &h.classes(VertexSubset::of(&[2, 4]), 3)[0];
        let r = h.triple_massey(a, b, a);
        assert_eq!(r.verdict, MasseyVerdict::Undefined);
        assert!(cross_validate(&k, &f).agree());
    }

    #[test]
    fn simplex_unit_only() {
        let k = SimplicialComplex::simplex(3);
        let h = cohomology(&k, &Rationals);
        assert_eq!(h.graded_dims(), vec![1]);
        assert!(h.admissible_triples().is_empty());
        assert!(cross_validate(&k, &Rationals).agree());
    }

    #[test]
    fn three_points_massey_vanishes() {
        // K = three points: products of degree-3 classes on disjoint pairs
        // of vertices can't form admissible triples, but {i} alone carries
        // nothing; use six disjoint points and pairs {1,2},{3,4},{5,6}.
        let k =
            SimplicialComplex::from_facet_lists(6, &(1..=6).map(|i| vec![i]).collect::<Vec<_>>())
                .unwrap();
        let h = cohomology(&k, &PrimeField::new(2).unwrap());
        let a = &h.classes(VertexSubset::of(&[1, 2]), 3)[0];
        let b = &h.classes(VertexSubset::of(&[3, 4]), 3)[0];
        let c = &h.classes(VertexSubset::of(&[5, 6]), 3)[0];
        let r = h.triple_massey(a, b, c);
        assert!(r.defined);
        assert_eq!(r.degree, 8);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..5 {
            let s = h.triple_massey_with(a, b, c, Some(&mut rng));
            assert_eq!(s.verdict, r.verdict);
        }
    }
}
