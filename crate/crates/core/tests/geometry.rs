use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use proptest::prelude::*;
use zk_core::catalog;
use zk_core::geometry::*;
use zk_core::named;
use zk_core::sampling::{verify_maps, verify_maps_with, MapChecks};
use zk_core::SimplicialComplex;

fn q(a: i64, b: i64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

/// Minimum over all `⌊n/2⌋`-subsets `S ⊆ [n] - {i}` of `Σ_{j∈S} |t_i - t_j|`.
fn alpha_oracle(params: &[BigRational]) -> Vec<BigRational> {
    let mut t = params.to_vec();
    t.push(q(0, 1));
    let n = t.len();
    let half = n / 2;
    (0..n)
        .map(|i| {
            let others: Vec<usize> = (0..n).filter(|&j| j != i).collect();
            (0u32..1 << others.len())
                .filter(|m| m.count_ones() as usize == half)
                .map(|m| {
                    others
                        .iter()
                        .enumerate()
                        .filter(|(b, _)| m >> b & 1 == 1)
                        .map(|(_, &j)| (&t[i] - &t[j]).abs())
                        .sum::<BigRational>()
                })
                .min()
                .unwrap()
        })
        .collect()
}

proptest! {
    #[test]
    fn alphas_match_subset_minimum(raw in prop::collection::vec(-8i64..=8, 1..7)) {
        let params: Vec<BigRational> = raw.iter().map(|&a| q(a, 8)).collect();
        prop_assert_eq!(NeighbourlyPsi::alphas(&params), alpha_oracle(&params));
    }
}

#[test]
fn h_round_trip_on_simplices() {
    let only_h = MapChecks {
        h: true,
        complex: false,
        psi: false,
    };
    for n in 2..=6 {
        let r = verify_maps_with(&SimplicialComplex::simplex(n), only_h, 2000, 7);
        assert!(r.passed, "{r:?}");
        assert!(r.checks.iter().all(|c| c.samples >= 2000));
    }
}

#[test]
fn sampler_on_small_catalog() {
    for n in 1..=4 {
        for k in catalog::complexes_up_to_iso(n).unwrap() {
            let r = verify_maps(&k, 600, 3);
            assert!(r.passed, "{k:?}: {r:?}");
            assert_eq!(r.neighbourly, k.is_neighbourly());
        }
    }
}

#[test]
fn sampler_is_deterministic() {
    let k = named::pole_edge_sphere();
    assert_eq!(verify_maps(&k, 700, 11), verify_maps(&k, 700, 11));
}

#[test]
fn neighbourly_psi_rejects_square() {
    assert!(NeighbourlyPsi::new(&named::cycle(4)).is_err());
    assert!(NeighbourlyPsi::new(&named::pole_edge_sphere()).is_ok());
    assert!(NeighbourlyPsi::new(&named::cycle(5)).is_err());
}

#[test]
fn disjoint_vertex_extension_lands_in_blocks() {
    let k = named::pole_edge_sphere();
    let dv = DisjointVertexPsi::new(NeighbourlyPsi::new(&k).unwrap()).unwrap();
    assert_eq!(dv.extended().n(), 6);
    let x = SmashPoint::new(vec![q(0, 1), q(1, 2), q(1, 1), q(1, 1), q(1, 1)]).unwrap();
    for s in [q(-1, 2), q(0, 1), q(1, 3), q(3, 4)] {
        let params = vec![q(1, 4), q(-1, 3), q(0, 1), q(1, 2), s];
        let y = dv.eval(&params, &x).unwrap();
        assert!(
            smash_membership(&y, &dv.target(&params)),
            "{params:?} -> {y:?}"
        );
    }
}
