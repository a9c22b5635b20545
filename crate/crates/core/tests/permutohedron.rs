use num_rational::BigRational;
use proptest::prelude::*;

use zk_core::permutohedron::*;
use zk_core::VertexSubset;

fn q(a: i64, b: i64) -> BigRational {
    BigRational::new(a.into(), b.into())
}

/// Stirling numbers of the second kind by the usual recurrence.
fn stirling2(n: usize, m: usize) -> usize {
    let mut s = vec![vec![0usize; n + 1]; n + 1];
    s[0][0] = 1;
    for i in 1..=n {
        for j in 1..=i {
            s[i][j] = j * s[i - 1][j] + s[i - 1][j - 1];
        }
    }
    s[n][m]
}

fn factorial(m: usize) -> usize {
    (1..=m).product()
}

#[test]
fn spheres_up_to_six() {
    for n in 2..=6 {
        let start = std::time::Instant::now();
        let r = verify_sphere(n).unwrap();
        assert!(r.is_sphere, "n = {n}: {r:?}");
        assert_eq!(r.top_faces, factorial(n));
        let expected: Vec<usize> = (2..=n).map(|m| factorial(m) * stirling2(n, m)).collect();
        assert_eq!(r.face_counts, expected);
        assert_eq!(r.homology.rank(n as isize - 2), 1);
        assert!(start.elapsed().as_secs() < 60);
    }
}

#[test]
fn three_gives_hexagon() {
    let k = build_kn(3).unwrap();
    assert_eq!(k.complex.facets().len(), 6);
    let h = zk_core::homology::reduced_homology_z(&k.complex);
    assert_eq!(h.rank(1), 1);
    assert!(h.torsion(1).is_empty());
}

#[test]
fn simplicial_identities_exhaustive() {
    for n in 1..=5 {
        for p in ordered_partitions(VertexSubset::full(n)) {
            let m = p.len();
            for j in 2..m {
                for i in 1..j {
                    let lhs = p.face_map(j).unwrap().face_map(i).unwrap();
                    let rhs = p.face_map(i).unwrap().face_map(j - 1).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}

#[test]
fn faces_are_chains_of_their_vertices() {
    let k = build_kn(5).unwrap();
    for layer in &k.by_length[1..] {
        for p in layer {
            assert!(k.complex.contains(p.face()));
            assert_eq!(OrderedPartition::from_face(5, p.face()).unwrap(), *p);
        }
    }
    assert_eq!(
        k.complex.num_faces(),
        1 + k.face_counts().iter().sum::<usize>()
    );
}

fn arb_point(n: usize) -> impl Strategy<Value = BarycentricPoint> {
    let parts = ordered_partitions(VertexSubset::full(n))
        .into_iter()
        .filter(|p| p.len() >= 2)
        .collect::<Vec<_>>();
    (
        prop::sample::select(parts),
        prop::collection::vec(0i64..6, n),
    )
        .prop_filter_map("nonzero weights", |(p, raw)| {
            let raw = &raw[..p.len() - 1];
            let total: i64 = raw.iter().sum();
            if total == 0 {
                return None;
            }
            let w = raw.iter().map(|x| q(*x, total)).collect();
            Some(BarycentricPoint::new(p, w).unwrap())
        })
}

proptest! {
    #[test]
    fn tau_round_trip(gamma in (2usize..=6).prop_flat_map(arb_point), tn in 1i64..20) {
        let t = q(tn, 20);
        let n = gamma.face.ground().len();
        let x = tau(&t, &gamma).unwrap();
        prop_assert_eq!(x.iter().map(|v| num_traits::Signed::abs(v)).max().unwrap(), t.clone());
        let canon = gamma.canonical();
        // partition consistency: [n]_{(τ_t(γ), 0)} is the face carrying γ
        let mut seq = x.clone();
        seq.push(q(0, 1));
        prop_assert_eq!(&ordered_partition_from_rationals(VertexSubset::full(n), &seq).unwrap(), &canon.face);
        prop_assert_eq!(tau_inv(&t, &x).unwrap(), canon);
    }

    #[test]
    fn partition_invariant_under_monotone_maps(values in prop::collection::vec(-5i64..5, 1..8), a in 1i64..7, b in -9i64..9) {
        let n = values.len();
        let xs: Vec<BigRational> = values.iter().map(|v| q(*v, 1)).collect();
        let ys: Vec<BigRational> = values.iter().map(|v| q(a * v * v * v + b, 3)).collect();
        let p = ordered_partition_from_rationals(VertexSubset::full(n), &xs).unwrap();
        prop_assert_eq!(p, ordered_partition_from_rationals(VertexSubset::full(n), &ys).unwrap());
    }

    #[test]
    fn top_face_interiors_have_distinct_coordinates(n in 2usize..=6, perm_seed in any::<u64>()) {
        let tops: Vec<_> = ordered_partitions(VertexSubset::full(n)).into_iter().filter(|p| p.len() == n).collect();
        let p = tops[(perm_seed % tops.len() as u64) as usize].clone();
        let w = vec![q(1, n as i64 - 1); n - 1];
        let x = tau(&q(1, 2), &BarycentricPoint::new(p, w).unwrap()).unwrap();
        let mut seq = x.clone();
        seq.push(q(0, 1));
        prop_assert_eq!(ordered_partition_from_rationals(VertexSubset::full(n), &seq).unwrap().len(), n);
    }
}
