use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use zk_core::catalog::{complexes_up_to_iso, neighbourly_up_to_iso};
use zk_core::field::{from_dense, Echelon};
use zk_core::golod::{classify_golod, extractible_necessary, golod_poincare_series, GolodLabel};
use zk_core::hochster::{all_products_vanish, bbcg_dimension_check, bigraded_betti, HochsterRing};
use zk_core::koszul::{cohomology, cross_validate, cross_validate_with, MasseyVerdict};
use zk_core::named::{cycle, points, pole_edge_sphere};
use zk_core::{Field, PrimeField, Rationals, SimplicialComplex, VertexSubset};

fn arb_complex(max_n: usize) -> impl Strategy<Value = SimplicialComplex> {
    (2..=max_n).prop_flat_map(|n| {
        prop::collection::vec(1u128..(1u128 << n), 1..7).prop_map(move |masks| {
            let facets: Vec<VertexSubset> = masks.into_iter().map(VertexSubset).collect();
            SimplicialComplex::from_facets(n, &facets).unwrap()
        })
    })
}

fn commutativity_holds<F: Field>(k: &SimplicialComplex, f: &F) -> bool {
    let ring = HochsterRing::new(k, f);
    let supports = ring.supports();
    for &(i, p) in &supports {
        for &(j, q) in &supports {
            if !i.is_disjoint(j) {
                continue;
            }
            let e = (p + i.len() as isize + 1) * (q + j.len() as isize + 1);
            let sign = if e % 2 == 0 { f.one() } else { f.neg(&f.one()) };
            for a in ring.classes(i, p) {
                for b in ring.classes(j, q) {
                    let ab = ring.product(&a, &b).unwrap().class;
                    let ba = ring.product(&b, &a).unwrap().class;
                    let x = ring.coordinates(&ab).unwrap();
                    let y: Vec<F::Elem> = ring
                        .coordinates(&ba)
                        .unwrap()
                        .iter()
                        .map(|c| f.mul(&sign, c))
                        .collect();
                    if x != y {
                        return false;
                    }
                }
            }
        }
    }
    true
}

fn associativity_holds<F: Field>(k: &SimplicialComplex, f: &F) -> bool {
    let ring = HochsterRing::new(k, f);
    let supports = ring.supports();
    for &(i, p) in &supports {
        for &(j, q) in supports.iter().filter(|(j, _)| j.is_disjoint(i)) {
            for &(l, r) in supports
                .iter()
                .filter(|(l, _)| l.is_disjoint(i) && l.is_disjoint(j))
            {
                for a in ring.classes(i, p) {
                    for b in ring.classes(j, q) {
                        for c in ring.classes(l, r) {
                            let ab_c = ring
                                .product(&ring.product(&a, &b).unwrap().class, &c)
                                .unwrap()
                                .class;
                            let a_bc = ring
                                .product(&a, &ring.product(&b, &c).unwrap().class)
                                .unwrap()
                                .class;
                            if ring.coordinates(&ab_c) != ring.coordinates(&a_bc) {
                                return false;
                            }
                        }
                    }
                }
            }
        }
    }
    true
}

#[test]
fn hochster_and_koszul_agree_on_all_small_complexes() {
    for n in 1..=5 {
        for k in complexes_up_to_iso(n).unwrap() {
            for coeffs in [
                zk_core::Coefficients::Prime(2),
                zk_core::Coefficients::Rational,
            ] {
                let cv = zk_core::with_field!(coeffs, |f| cross_validate(&k, &f));
                assert!(cv.agree(), "{:?}: {:?}", k.to_json(), cv.mismatches);
            }
        }
    }
}

#[test]
fn commutativity_and_associativity_on_catalog() {
    for n in 1..=5 {
        for k in complexes_up_to_iso(n).unwrap() {
            assert!(commutativity_holds(&k, &PrimeField::new(2).unwrap()));
            assert!(commutativity_holds(&k, &Rationals), "{:?}", k.to_json());
            assert!(associativity_holds(&k, &Rationals), "{:?}", k.to_json());
        }
    }
}

#[test]
fn six_points_products() {
    let k = points(6);
    assert!(commutativity_holds(&k, &Rationals));
    assert!(associativity_holds(&k, &Rationals));
    assert!(associativity_holds(&k, &PrimeField::new(3).unwrap()));
    assert!(cross_validate(&k, &Rationals).agree());
}

#[test]
fn hexagon_products() {
    let k = cycle(6);
    assert!(commutativity_holds(&k, &Rationals));
    assert!(associativity_holds(&k, &Rationals));
    assert!(!all_products_vanish(&k, &Rationals).all_vanish);
}

#[test]
fn pole_edge_sphere_invariants() {
    let k = pole_edge_sphere();
    let t = bigraded_betti(&k, &Rationals);
    let full = VertexSubset::full(5);
    assert_eq!(t.dim(full, 2), 1);
    assert!(t
        .nonzero_entries()
        .iter()
        .any(|e| e.subset == vec![1, 2, 3, 4, 5] && e.degree == 2 && e.total_degree == 8));
    let bbcg = bbcg_dimension_check(&t);
    assert!(bbcg.holds);
    assert!(bbcg.suspended[9] >= 1);
    assert!(all_products_vanish(&k, &Rationals).all_vanish);
    let v = classify_golod(&k, &Rationals).unwrap();
    assert_eq!(v.label, GolodLabel::GolodUpToTripleMassey);
    let ext = extractible_necessary(&k, &Rationals);
    assert_eq!(ext.witness_degree, Some(2));
    let s = golod_poincare_series(&t, true);
    // H̃²(K) on I = [5] sits at exponent |I| - p = 3
    assert!(s.denominator[3] < 0);
}

#[test]
fn neighbourly_complexes_are_golod() {
    for n in 1..=6 {
        for k in neighbourly_up_to_iso(n).unwrap() {
            if k.has_ghost_vertices() {
                continue;
            }
            for coeffs in [
                zk_core::Coefficients::Prime(2),
                zk_core::Coefficients::Rational,
            ] {
                let v = zk_core::golod::classify_golod_over(&k, coeffs).unwrap();
                assert_eq!(
                    v.label,
                    GolodLabel::GolodUpToTripleMassey,
                    "{:?}",
                    k.to_json()
                );
            }
        }
    }
}

#[test]
fn massey_verdicts_survive_random_bounding_cochains() {
    let k = points(6);
    let f = PrimeField::new(5).unwrap();
    let h = cohomology(&k, &f);
    let triples = h.admissible_triples();
    assert!(!triples.is_empty());
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (a, b, c) in triples.iter().take(40) {
        let base = h.triple_massey(a, b, c);
        assert!(base.defined);
        for _ in 0..3 {
            let other = h.triple_massey_with(a, b, c, Some(&mut rng));
            assert_eq!(other.verdict, base.verdict);
            let mut span = Echelon::new(f);
            for v in &base.indeterminacy {
                span.insert(from_dense(&f, v));
            }
            let diff: Vec<u64> = base
                .coordinates
                .as_ref()
                .unwrap()
                .iter()
                .zip(other.coordinates.as_ref().unwrap())
                .map(|(x, y)| f.sub(x, y))
                .collect();
            assert!(span.contains(&from_dense(&f, &diff)));
        }
    }
}

#[test]
fn four_cycle_massey_undefined() {
    let k = cycle(4);
    let h = cohomology(&k, &Rationals);
    let a = &h.classes(VertexSubset::of(&[1, 3]), 3)[0];
    let b = &h.classes(VertexSubset::of(&[2, 4]), 3)[0];
    assert_eq!(h.triple_massey(a, b, a).verdict, MasseyVerdict::Undefined);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_complexes_cross_validate(k in arb_complex(6)) {
        let f = PrimeField::new(3).unwrap();
        let ring = HochsterRing::new(&k, &f);
        let h = cohomology(&k, &f);
        let cv = cross_validate_with(&ring, &h);
        prop_assert!(cv.agree(), "{:?}", cv.mismatches);
        prop_assert!(h.model().verify_d_squared());
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        prop_assert!(h.model().verify_leibniz(300, 2000, &mut rng));
        prop_assert!(bbcg_dimension_check(ring.table()).holds);
    }

    #[test]
    fn random_complexes_products_are_graded_commutative(k in arb_complex(7)) {
        prop_assert!(commutativity_holds(&k, &PrimeField::new(2).unwrap()));
        prop_assert!(commutativity_holds(&k, &Rationals));
        prop_assert!(associativity_holds(&k, &Rationals));
    }
}

#[test]
fn nontrivial_massey_product_is_stable() {
    // found by random search; products of the three degree-3 classes vanish
    // pairwise and the indeterminacy is zero
    let k = SimplicialComplex::from_facet_lists(
        7,
        &[
            vec![2, 3],
            vec![2, 4],
            vec![1, 6],
            vec![6, 7],
            vec![1, 2, 5],
            vec![1, 3, 5],
            vec![4, 5, 6],
            vec![1, 3, 7],
        ],
    )
    .unwrap();
    for coeffs in [
        zk_core::Coefficients::Prime(2),
        zk_core::Coefficients::Prime(3),
        zk_core::Coefficients::Rational,
    ] {
        zk_core::with_field!(coeffs, |f| {
            let h = cohomology(&k, &f);
            let a = &h.classes(VertexSubset::of(&[1, 4]), 3)[0];
            let b = &h.classes(VertexSubset::of(&[3, 6]), 3)[0];
            let c = &h.classes(VertexSubset::of(&[2, 7]), 3)[0];
            let r = h.triple_massey(a, b, c);
            assert_eq!(r.verdict, MasseyVerdict::Nontrivial);
            assert!(r.indeterminacy.is_empty());
            let mut rng = ChaCha8Rng::seed_from_u64(2);
            for _ in 0..4 {
                assert_eq!(
                    h.triple_massey_with(a, b, c, Some(&mut rng)).verdict,
                    MasseyVerdict::Nontrivial
                );
            }
        });
    }
    let v = classify_golod(&k, &Rationals).unwrap();
    assert_eq!(v.label, GolodLabel::NotGolod);
}
