//! A few named complexes used throughout tests and reports.

use crate::complex::SimplicialComplex;

/// The boundary of an `n`-gon, `n ≥ 3`.
pub fn cycle(n: usize) -> SimplicialComplex {
    assert!(n >= 3);
    let facets: Vec<Vec<usize>> = (1..=n).map(|i| vec![i, i % n + 1]).collect();
    SimplicialComplex::from_facet_lists(n, &facets).expect("valid facets")
}

/// The suspension of the triangle boundary on `{1,2,3}` with poles 4 and 5,
/// plus the edge `{4,5}`. Neighbourly, with `|K| ≃ S² ∨ S¹`.
pub fn pole_edge_sphere() -> SimplicialComplex {
    SimplicialComplex::from_facet_lists(
        5,
        &[
            vec![1, 2, 4],
            vec![1, 2, 5],
            vec![1, 3, 4],
            vec![1, 3, 5],
            vec![2, 3, 4],
            vec![2, 3, 5],
            vec![4, 5],
        ],
    )
    .expect("valid facets")
}

/// `m` isolated points.
pub fn points(m: usize) -> SimplicialComplex {
    let facets: Vec<Vec<usize>> = (1..=m).map(|i| vec![i]).collect();
    SimplicialComplex::from_facet_lists(m, &facets).expect("valid facets")
}
