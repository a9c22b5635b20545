//! Hochster decomposition of `H*((D², S¹)^K)` and its cup product.
//!
//! `H^d(Z_K) ≅ ⊕_I H̃^{d-|I|-1}(K_I)`. A class on `(I, p)` has total degree
//! `|I| + 1 + p`, and the product of classes on disjoint `I`, `J` is the
//! pullback of the join cross product along `K_{I∪J} → K_I ∗ K_J`.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::field::{Coefficients, Field};
use crate::homology::{self, Cochain, CohomologyBasis, HomologySummary};
use crate::subset::{shuffle_sign, VertexSubset};

/// Reduced cohomology dimensions of every full subcomplex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BigradedTable {
    pub n: usize,
    pub coefficients: Coefficients,
    pub ghost_vertices: Vec<usize>,
    pub entries: BTreeMap<VertexSubset, HomologySummary>,
}

/// One nonzero `dim H̃^p(K_I)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableEntry {
    pub subset: Vec<usize>,
    pub degree: isize,
    pub dim: usize,
    pub total_degree: usize,
}

impl BigradedTable {
    pub fn dim(&self, subset: VertexSubset, degree: isize) -> usize {
        self.entries.get(&subset).map_or(0, |h| h.rank(degree))
    }

    /// Nonzero entries ordered by subset bitmask then degree.
    pub fn nonzero_entries(&self) -> Vec<TableEntry> {
        let mut out = Vec::new();
        for (s, h) in &self.entries {
            for g in h.nonzero() {
                out.push(TableEntry {
                    subset: s.to_vec(),
                    degree: g.degree,
                    dim: g.rank,
                    total_degree: total_degree(*s, g.degree),
                });
            }
        }
        out
    }

    /// Poincaré polynomial of `H*(Z_K)`: coefficient of `t^d` at index d.
    pub fn poincare_polynomial(&self) -> Vec<usize> {
        let mut poly = Vec::new();
        for e in self.nonzero_entries() {
            add_coefficient(&mut poly, e.total_degree, e.dim);
        }
        poly
    }
}

pub fn total_degree(subset: VertexSubset, degree: isize) -> usize {
    (subset.len() as isize + 1 + degree) as usize
}

pub(crate) fn add_coefficient(poly: &mut Vec<usize>, degree: usize, value: usize) {
    if poly.len() <= degree {
        poly.resize(degree + 1, 0);
    }
    poly[degree] += value;
}

/// Reduced cohomology of all `2^n` full subcomplexes.
pub fn bigraded_betti<F: Field>(k: &SimplicialComplex, field: &F) -> BigradedTable {
    let full = VertexSubset::full(k.n());
    let subsets: Vec<VertexSubset> = full.subsets().collect();
    let entries = subsets
        .par_iter()
        .map(|s| {
            (
                *s,
                homology::reduced_homology_field_faces(field, &k.faces_within(*s)),
            )
        })
        .collect::<Vec<_>>()
        .into_iter()
        .collect();
    BigradedTable {
        n: k.n(),
        coefficients: field.descriptor(),
        ghost_vertices: k.ghost_vertices(),
        entries,
    }
}

/// A cohomology class of `K_I`, given by a cocycle in ambient labels.
#[derive(Clone, Debug, PartialEq)]
pub struct HochsterClass<F: Field> {
    pub field: F,
    pub subset: VertexSubset,
    pub degree: isize,
    pub cocycle: Cochain<F::Elem>,
}

impl<F: Field> HochsterClass<F> {
    pub fn total_degree(&self) -> usize {
        total_degree(self.subset, self.degree)
    }
}

/// Result of a product query; `overlapping` marks the zero product forced by
/// intersecting multidegrees.
#[derive(Clone, Debug, PartialEq)]
pub struct ProductOutcome<F: Field> {
    pub class: HochsterClass<F>,
    pub overlapping: bool,
}

/// Cohomology bases of all full subcomplexes with nonzero cohomology.
pub struct HochsterRing<F: Field> {
    field: F,
    complex: SimplicialComplex,
    table: BigradedTable,
    bases: HashMap<(VertexSubset, isize), CohomologyBasis<F>>,
}

impl<F: Field> HochsterRing<F> {
    pub fn new(k: &SimplicialComplex, field: &F) -> Self {
        let table = bigraded_betti(k, field);
        let keys: Vec<(VertexSubset, isize)> = table
            .nonzero_entries()
            .into_iter()
            .map(|e| (VertexSubset::of(&e.subset), e.degree))
            .collect();
        let bases = keys
            .par_iter()
            .map(|&(s, p)| ((s, p), CohomologyBasis::new(field, &k.faces_within(s), p)))
            .collect::<Vec<_>>()
            .into_iter()
            .collect();
        HochsterRing {
            field: field.clone(),
            complex: k.clone(),
            table,
            bases,
        }
    }

    pub fn table(&self) -> &BigradedTable {
        &self.table
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    /// Basis classes of `H̃^p(K_I)`.
    pub fn classes(&self, subset: VertexSubset, degree: isize) -> Vec<HochsterClass<F>> {
        self.bases
            .get(&(subset, degree))
            .map_or_else(Vec::new, |b| {
                b.representatives()
                    .into_iter()
                    .map(|c| HochsterClass {
                        field: self.field.clone(),
                        subset,
                        degree,
                        cocycle: c,
                    })
                    .collect()
            })
    }

    /// `(I, p)` pairs with nonzero cohomology, I non-empty.
    pub fn supports(&self) -> Vec<(VertexSubset, isize)> {
        let mut keys: Vec<_> = self
            .bases
            .keys()
            .copied()
            .filter(|(s, _)| !s.is_empty())
            .collect();
        keys.sort();
        keys
    }

    /// Coordinates of a class in the stored basis; `None` if not a cocycle.
    pub fn coordinates(&self, class: &HochsterClass<F>) -> Option<Vec<F::Elem>> {
        match self.bases.get(&(class.subset, class.degree)) {
            Some(b) => {
                if !b.is_cocycle(&class.cocycle) {
                    return None;
                }
                b.coordinates(&class.cocycle)
            }
            None => {
                let b = CohomologyBasis::new(
                    &self.field,
                    &self.complex.faces_within(class.subset),
                    class.degree,
                );
                if b.is_cocycle(&class.cocycle) {
                    Some(Vec::new())
                } else {
                    None
                }
            }
        }
    }

    pub fn is_zero_class(&self, class: &HochsterClass<F>) -> bool {
        self.coordinates(class)
            .map_or(false, |c| c.iter().all(|e| self.field.is_zero(e)))
    }

    pub fn product(&self, a: &HochsterClass<F>, b: &HochsterClass<F>) -> Result<ProductOutcome<F>> {
        cup_product(&self.complex, a, b)
    }

    /// Rank of the span of all products `H(I) ⊗ H(J)` landing in total
    /// degree `d`, keyed by `d`.
    pub fn product_ranks(&self, i: VertexSubset, j: VertexSubset) -> BTreeMap<usize, usize> {
        let mut spans: BTreeMap<usize, crate::field::Echelon<F>> = BTreeMap::new();
        let supports = self.supports();
        for &(si, p) in supports.iter().filter(|(s, _)| *s == i) {
            for &(sj, q) in supports.iter().filter(|(s, _)| *s == j) {
                let target = total_degree(i | j, p + q + 1);
                let span = spans
                    .entry(target)
                    .or_insert_with(|| crate::field::Echelon::new(self.field.clone()));
                for a in self.classes(si, p) {
                    for b in self.classes(sj, q) {
                        let c = cup_product(&self.complex, &a, &b)
                            .expect("same field")
                            .class;
                        let coords = self.coordinates(&c).expect("product is a cocycle");
                        span.insert(crate::field::from_dense(&self.field, &coords));
                    }
                }
            }
        }
        spans.into_iter().map(|(d, e)| (d, e.rank())).collect()
    }
}

/// Cup product of Hochster classes on disjoint supports.
///
/// On faces `τ` of `K_{I∪J}` with `|τ∩I| = p+1`, `|τ∩J| = q+1` the product
/// cocycle is `s(I,J,p) · ε(τ∩I, τ∩J) · a(τ∩I) · b(τ∩J)` where `ε` is the
/// shuffle sign and `s(I,J,p) = ε(I,J) · (-1)^{|J|(p+1)}` makes the product
/// graded commutative in the total degree.
pub fn cup_product<F: Field>(
    k: &SimplicialComplex,
    a: &HochsterClass<F>,
    b: &HochsterClass<F>,
) -> Result<ProductOutcome<F>> {
    if a.field != b.field {
        return Err(Error::FieldMismatch(
            a.field.descriptor().to_string(),
            b.field.descriptor().to_string(),
        ));
    }
    if a.subset.is_empty() || b.subset.is_empty() {
        return Err(Error::EmptyVertexSet);
    }
    let field = &a.field;
    let union = a.subset | b.subset;
    let degree = a.degree + b.degree + 1;
    if !a.subset.is_disjoint(b.subset) {
        return Ok(ProductOutcome {
            class: HochsterClass {
                field: field.clone(),
                subset: union,
                degree,
                cocycle: Cochain::zero(degree),
            },
            overlapping: true,
        });
    }
    let global = shuffle_sign(a.subset, b.subset)
        * if (b.subset.len() as isize * (a.degree + 1)) % 2 == 0 {
            1
        } else {
            -1
        };
    let mut values: BTreeMap<VertexSubset, F::Elem> = BTreeMap::new();
    for (sigma, x) in &a.cocycle.values {
        for (rho, y) in &b.cocycle.values {
            let tau = *sigma | *rho;
            if !k.contains(tau) {
                continue;
            }
            let sign = global * shuffle_sign(*sigma, *rho);
            let term = field.mul(&field.from_i64(sign), &field.mul(x, y));
            let entry = values.entry(tau).or_insert_with(|| field.zero());
            *entry = field.add(entry, &term);
        }
    }
    values.retain(|_, v| !field.is_zero(v));
    Ok(ProductOutcome {
        class: HochsterClass {
            field: field.clone(),
            subset: union,
            degree,
            cocycle: Cochain { degree, values },
        },
        overlapping: false,
    })
}

/// First nonvanishing product found, as `(I, J, i, j)` with basis indices
/// into `H̃^p(K_I)` and `H̃^q(K_J)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductWitness {
    pub left: Vec<usize>,
    pub left_degree: isize,
    pub left_index: usize,
    pub right: Vec<usize>,
    pub right_degree: isize,
    pub right_index: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductsReport {
    pub coefficients: Coefficients,
    pub all_vanish: bool,
    pub witness: Option<ProductWitness>,
    /// Pairs `(I, J)` with their nonzero product ranks per target total degree.
    pub nonzero_ranks: Vec<(Vec<usize>, Vec<usize>, BTreeMap<usize, usize>)>,
}

/// Checks whether every product of classes on disjoint non-empty supports
/// vanishes.
pub fn all_products_vanish<F: Field>(k: &SimplicialComplex, field: &F) -> ProductsReport {
    all_products_vanish_in(&HochsterRing::new(k, field))
}

pub fn all_products_vanish_in<F: Field>(ring: &HochsterRing<F>) -> ProductsReport {
    let supports = ring.supports();
    let mut subsets: Vec<VertexSubset> = supports.iter().map(|(s, _)| *s).collect();
    subsets.dedup();
    let mut witness = None;
    let mut nonzero_ranks = Vec::new();
    for (x, &i) in subsets.iter().enumerate() {
        for &j in &subsets[x + 1..] {
            if !i.is_disjoint(j) {
                continue;
            }
            let (i, j) = if i.bits() < j.bits() { (i, j) } else { (j, i) };
            if witness.is_none() {
                'search: for &(_, p) in supports.iter().filter(|(s, _)| *s == i) {
                    for &(_, q) in supports.iter().filter(|(s, _)| *s == j) {
                        for (ai, a) in ring.classes(i, p).iter().enumerate() {
                            for (bi, b) in ring.classes(j, q).iter().enumerate() {
                                let c = ring.product(a, b).expect("same field").class;
                                if !ring.is_zero_class(&c) {
                                    witness = Some(ProductWitness {
                                        left: i.to_vec(),
                                        left_degree: p,
                                        left_index: ai,
                                        right: j.to_vec(),
                                        right_degree: q,
                                        right_index: bi,
                                    });
                                    break 'search;
                                }
                            }
                        }
                    }
                }
            }
            let ranks: BTreeMap<usize, usize> = ring
                .product_ranks(i, j)
                .into_iter()
                .filter(|(_, r)| *r > 0)
                .collect();
            if !ranks.is_empty() {
                nonzero_ranks.push((i.to_vec(), j.to_vec(), ranks));
            }
        }
    }
    nonzero_ranks.sort();
    ProductsReport {
        coefficients: ring.field.descriptor(),
        all_vanish: witness.is_none(),
        witness,
        nonzero_ranks,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BbcgReport {
    /// Poincaré polynomial of `ΣZ_K` obtained by shifting the aggregated table.
    pub suspended: Vec<usize>,
    /// `1 + Σ_{I≠∅} t^{|I|+2} P(H̃*(K_I))`.
    pub wedge: Vec<usize>,
    pub holds: bool,
}

/// Compares the suspended Poincaré polynomial with the wedge decomposition
/// `ΣZ_K ≃ ∨_I Σ^{|I|+2}|K_I|`.
pub fn bbcg_dimension_check(table: &BigradedTable) -> BbcgReport {
    let total = table.poincare_polynomial();
    let mut suspended = vec![1usize];
    for (d, c) in total.iter().enumerate().skip(1) {
        add_coefficient(&mut suspended, d + 1, *c);
    }
    let mut wedge = vec![1usize];
    for (s, h) in &table.entries {
        if s.is_empty() {
            continue;
        }
        for g in h.nonzero() {
            add_coefficient(
                &mut wedge,
                (s.len() as isize + 2 + g.degree) as usize,
                g.rank,
            );
        }
    }
    trim(&mut suspended);
    trim(&mut wedge);
    BbcgReport {
        holds: suspended == wedge,
        suspended,
        wedge,
    }
}

pub(crate) fn trim(poly: &mut Vec<usize>) {
    while poly.len() > 1 && *poly.last().unwrap() == 0 {
        poly.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn cycle4() -> SimplicialComplex {
        SimplicialComplex::from_facet_lists(4, &[vec![1, 2], vec![2, 3], vec![3, 4], vec![1, 4]])
            .unwrap()
    }

    #[test]
    fn cycle_table() {
        let t = bigraded_betti(&cycle4(), &PrimeField::new(2).unwrap());
        let nz = t.nonzero_entries();
        let summary: Vec<_> = nz
            .iter()
            .map(|e| (e.subset.clone(), e.degree, e.dim, e.total_degree))
            .collect();
        assert_eq!(
            summary,
            vec![
                (vec![], -1, 1, 0),
                (vec![1, 3], 0, 1, 3),
                (vec![2, 4], 0, 1, 3),
                (vec![1, 2, 3, 4], 1, 1, 6),
            ]
        );
        assert_eq!(t.poincare_polynomial(), vec![1, 0, 0, 2, 0, 0, 1]);
    }

    #[test]
    fn simplex_table_is_unit() {
        let t = bigraded_betti(&SimplicialComplex::simplex(3), &Rationals);
        assert_eq!(t.poincare_polynomial(), vec![1]);
        assert_eq!(bbcg_dimension_check(&t).suspended, vec![1]);
    }

    #[test]
    fn cycle_product_nonzero() {
        for coeffs in [
            Coefficients::Prime(2),
            Coefficients::Prime(3),
            Coefficients::Rational,
        ] {
            crate::with_field!(coeffs, |f| {
                let ring = HochsterRing::new(&cycle4(), &f);
                let a = &ring.classes(VertexSubset::of(&[1, 3]), 0)[0];
                let b = &ring.classes(VertexSubset::of(&[2, 4]), 0)[0];
                let c = ring.product(a, b).unwrap();
                assert!(!c.overlapping);
                assert_eq!(c.class.degree, 1);
                assert!(!ring.is_zero_class(&c.class));
                // pairing with the fundamental cycle 12 + 23 + 34 - 14
                let pair = [
                    (vec![1, 2], 1),
                    (vec![2, 3], 1),
                    (vec![3, 4], 1),
                    (vec![1, 4], -1),
                ]
                .iter()
                .fold(f.zero(), |acc, (e, s)| {
                    let v = c
                        .class
                        .cocycle
                        .get(&VertexSubset::of(e))
                        .cloned()
                        .unwrap_or(f.zero());
                    f.add(&acc, &f.mul(&f.from_i64(*s), &v))
                });
                assert!(!f.is_zero(&pair));
                let rep = all_products_vanish_in(&ring);
                assert!(!rep.all_vanish);
                let w = rep.witness.unwrap();
                assert_eq!((w.left, w.right), (vec![1, 3], vec![2, 4]));
            });
        }
    }

    #[test]
    fn overlapping_supports_give_flagged_zero() {
        let f = PrimeField::new(2).unwrap();
        let ring = HochsterRing::new(&cycle4(), &f);
        let a = &ring.classes(VertexSubset::of(&[1, 3]), 0)[0];
        let c = ring.product(a, a).unwrap();
        assert!(c.overlapping);
        assert!(c.class.cocycle.is_zero());
    }

    #[test]
    fn mismatched_fields_rejected() {
        let k = cycle4();
        let a = HochsterRing::new(&k, &PrimeField::new(2).unwrap())
            .classes(VertexSubset::of(&[1, 3]), 0)[0]
            .clone();
        let b = HochsterRing::new(&k, &PrimeField::new(3).unwrap())
            .classes(VertexSubset::of(&[2, 4]), 0)[0]
            .clone();
        assert!(matches!(
            cup_product(&k, &a, &b),
            Err(Error::FieldMismatch(..))
        ));
    }

    #[test]
    fn cone_products_vanish() {
        // K_{I∪J} a cone: vertex 4 joined to everything
        let k =
            SimplicialComplex::from_facet_lists(4, &[vec![1, 4], vec![2, 4], vec![3, 4]]).unwrap();
        let rep = all_products_vanish(&k, &Rationals);
        assert!(rep.all_vanish);
        assert!(all_products_vanish(&SimplicialComplex::simplex(4), &Rationals).all_vanish);
    }

    #[test]
    fn bbcg_for_cycle() {
        let t = bigraded_betti(&cycle4(), &Rationals);
        let r = bbcg_dimension_check(&t);
        assert!(r.holds);
        assert_eq!(r.suspended, vec![1, 0, 0, 0, 2, 0, 0, 1]);
    }
}
