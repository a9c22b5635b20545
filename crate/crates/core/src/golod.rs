//! Golod-type classifiers built from the Hochster and Koszul computations.

use serde::{Deserialize, Serialize};

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::field::{Coefficients, Echelon, Field};
use crate::hochster::{self, BigradedTable, HochsterRing, ProductWitness};
use crate::homology::ChainComplexData;
use crate::koszul::{self, KoszulCohomology, MasseyVerdict};
use crate::subset::VertexSubset;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GolodLabel {
    #[serde(rename = "not-Golod")]
    NotGolod,
    #[serde(rename = "Golod-up-to-triple-Massey")]
    GolodUpToTripleMassey,
}

/// A triple `⟨a, b, c⟩` of basis classes, each given as
/// `(multidegree, total degree, basis index)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MasseyWitness {
    pub classes: [(Vec<usize>, usize, usize); 3],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GolodVerdict {
    pub coefficients: Coefficients,
    pub products_vanish: bool,
    /// `None` when some product is nonzero, so triple products are not all
    /// defined.
    pub triple_massey_all_vanish: Option<bool>,
    pub triples_checked: usize,
    pub product_witness: Option<ProductWitness>,
    pub massey_witness: Option<MasseyWitness>,
    pub label: GolodLabel,
}

/// Products on disjoint supports plus all triple Massey products of basis
/// classes with pairwise disjoint multidegrees.
pub fn classify_golod<F: Field>(k: &SimplicialComplex, field: &F) -> Result<GolodVerdict> {
    if k.has_ghost_vertices() {
        return Err(Error::GhostVertices(k.ghost_vertices()));
    }
    let ring = HochsterRing::new(k, field);
    let products = hochster::all_products_vanish_in(&ring);
    let mut verdict = GolodVerdict {
        coefficients: field.descriptor(),
        products_vanish: products.all_vanish,
        triple_massey_all_vanish: None,
        triples_checked: 0,
        product_witness: products.witness,
        massey_witness: None,
        label: GolodLabel::NotGolod,
    };
    if !products.all_vanish {
        return Ok(verdict);
    }
    let h = koszul::cohomology(k, field);
    let (checked, witness) = massey_search(&h);
    verdict.triples_checked = checked;
    verdict.triple_massey_all_vanish = Some(witness.is_none());
    verdict.massey_witness = witness;
    if verdict.triple_massey_all_vanish == Some(true) {
        verdict.label = GolodLabel::GolodUpToTripleMassey;
    }
    Ok(verdict)
}

pub fn classify_golod_over(
    k: &SimplicialComplex,
    coefficients: Coefficients,
) -> Result<GolodVerdict> {
    crate::with_field!(coefficients, |f| classify_golod(k, &f))
}

/// Number of admissible triples examined and the first one whose Massey
/// product is not contained in its indeterminacy.
pub fn massey_search<F: Field>(h: &KoszulCohomology<F>) -> (usize, Option<MasseyWitness>) {
    let triples = h.admissible_triples();
    for (a, b, c) in &triples {
        let r = h.triple_massey(a, b, c);
        if r.verdict != MasseyVerdict::Vanishes {
            let w = |x: &koszul::KoszulClass<F>| (x.multidegree.to_vec(), x.degree, x.index);
            return (
                triples.len(),
                Some(MasseyWitness {
                    classes: [w(a), w(b), w(c)],
                }),
            );
        }
    }
    (triples.len(), None)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeSurjectivity {
    pub degree: isize,
    pub homology_dim: usize,
    pub image_dim: usize,
    pub surjective: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtractibilityReport {
    pub coefficients: Coefficients,
    pub degrees: Vec<DegreeSurjectivity>,
    pub necessary_condition_holds: bool,
    pub witness_degree: Option<isize>,
}

/// Checks that `⊕_i H̃_d(K∖i) → H̃_d(K)` is onto in every degree, which a
/// right homotopy inverse of `∨_i Σ|K∖i| → Σ|K|` would force.
pub fn extractible_necessary<F: Field>(k: &SimplicialComplex, field: &F) -> ExtractibilityReport {
    let chains = ChainComplexData::of_complex(k);
    let full = VertexSubset::full(k.n());
    let top = chains.top_dim().unwrap_or(-1);
    let deletions: Vec<ChainComplexData> = full
        .iter()
        .map(|v| ChainComplexData::from_faces(&k.faces_within(full.remove(v))))
        .collect();
    let mut degrees = Vec::new();
    for d in -1..=top {
        let cycles = crate::field::kernel(field, &chains.boundary_matrix(field, d));
        let mut span = Echelon::new(field.clone());
        for b in chains.boundary_matrix(field, d + 1).cols {
            span.insert(b);
        }
        let boundaries = span.rank();
        let homology_dim = cycles.len() - boundaries;
        for del in &deletions {
            let basis = del.basis(d);
            for z in crate::field::kernel(field, &del.boundary_matrix(field, d)) {
                let mut v: Vec<(usize, F::Elem)> = z
                    .into_iter()
                    .map(|(i, c)| (chains.position(basis[i]).expect("subcomplex face"), c))
                    .collect();
                v.sort_by_key(|(i, _)| *i);
                span.insert(v);
            }
        }
        let image_dim = span.rank() - boundaries;
        degrees.push(DegreeSurjectivity {
            degree: d,
            homology_dim,
            image_dim,
            surjective: image_dim == homology_dim,
        });
    }
    let witness_degree = degrees.iter().find(|d| !d.surjective).map(|d| d.degree);
    ExtractibilityReport {
        coefficients: field.descriptor(),
        degrees,
        necessary_condition_holds: witness_degree.is_none(),
        witness_degree,
    }
}

/// `(1+t)^n / (1 - Σ_{I≠∅, p} dim H̃^p(K_I) t^{|I|-p})`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PoincareSeries {
    pub numerator: Vec<i64>,
    pub denominator: Vec<i64>,
    pub convention: String,
    /// Set when the complex was not classified Golod, so the series is only
    /// the Golod bound.
    pub bound_only: bool,
}

impl PoincareSeries {
    /// First `terms` coefficients of the power series expansion.
    pub fn expand(&self, terms: usize) -> Vec<i64> {
        let mut out = vec![0i64; terms];
        for i in 0..terms {
            let mut c = self.numerator.get(i).copied().unwrap_or(0);
            for j in 1..=i.min(self.denominator.len().saturating_sub(1)) {
                c -= self.denominator[j] * out[i - j];
            }
            out[i] = c;
        }
        out
    }
}

pub const SERIES_CONVENTION: &str =
    "t counts homological degree of Tor_{k[K]}(k,k); a class of H̃^p(K_I) is a generator of Tor_{|I|-p-1}(k[K],k) and contributes t^{|I|-p} to the denominator";

pub fn golod_poincare_series(table: &BigradedTable, golod: bool) -> PoincareSeries {
    let n = table.n;
    let mut numerator = vec![1i64];
    for _ in 0..n {
        let mut next = vec![0i64; numerator.len() + 1];
        for (i, c) in numerator.iter().enumerate() {
            next[i] += c;
            next[i + 1] += c;
        }
        numerator = next;
    }
    let mut denominator = vec![1i64];
    for e in table.nonzero_entries() {
        if e.subset.is_empty() {
            continue;
        }
        let exp = (e.subset.len() as isize - e.degree) as usize;
        if denominator.len() <= exp {
            denominator.resize(exp + 1, 0);
        }
        denominator[exp] -= e.dim as i64;
    }
    PoincareSeries {
        numerator,
        denominator,
        convention: SERIES_CONVENTION.to_string(),
        bound_only: !golod,
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
    fn cycle_not_golod() {
        let v = classify_golod(&cycle4(), &Rationals).unwrap();
        assert_eq!(v.label, GolodLabel::NotGolod);
        assert!(v.product_witness.is_some());
        assert_eq!(v.triple_massey_all_vanish, None);
    }

    #[test]
    fn simplex_golod() {
        let v =
            classify_golod(&SimplicialComplex::simplex(3), &PrimeField::new(2).unwrap()).unwrap();
        assert_eq!(v.label, GolodLabel::GolodUpToTripleMassey);
    }

    #[test]
    fn ghosts_rejected() {
        let k = SimplicialComplex::from_facet_lists(3, &[vec![1, 2]]).unwrap();
        assert!(matches!(
            classify_golod(&k, &Rationals),
            Err(Error::GhostVertices(_))
        ));
    }

    #[test]
    fn cycle_extractibility_fails_in_degree_one() {
        let r = extractible_necessary(&cycle4(), &Rationals);
        assert!(!r.necessary_condition_holds);
        assert_eq!(r.witness_degree, Some(1));
        let s = extractible_necessary(&SimplicialComplex::simplex(4), &Rationals);
        assert!(s.necessary_condition_holds);
    }

    #[test]
    fn series_for_simplex_and_cycle() {
        let t = hochster::bigraded_betti(&SimplicialComplex::simplex(3), &Rationals);
        let s = golod_poincare_series(&t, true);
        assert_eq!(s.numerator, vec![1, 3, 3, 1]);
        assert_eq!(s.denominator, vec![1]);
        let t = hochster::bigraded_betti(&cycle4(), &Rationals);
        let s = golod_poincare_series(&t, false);
        assert_eq!(s.denominator, vec![1, 0, -2, -1]);
        assert!(s.bound_only);
        assert_eq!(s.expand(3), vec![1, 4, 8]);
    }
}
