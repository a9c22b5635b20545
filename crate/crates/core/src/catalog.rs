//! Small simplicial complexes up to isomorphism.
//!
//! Complexes on `n ≤ 6` vertices are encoded as a `u64` whose bit `s` is set
//! when the vertex subset with bitmask `s` is a face. Enumeration walks the
//! downsets of the Boolean lattice and keeps one complex per orbit of the
//! symmetric group.

use std::collections::HashSet;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::subset::VertexSubset;

pub const MAX_CATALOG_N: usize = 6;

/// Face family bitset of a complex with `n ≤ 6`.
pub fn face_bits(k: &SimplicialComplex) -> u64 {
    assert!(k.n() <= MAX_CATALOG_N);
    k.faces().iter().fold(0u64, |acc, f| acc | 1u64 << f.bits())
}

pub fn from_face_bits(n: usize, bits: u64) -> SimplicialComplex {
    let faces: Vec<VertexSubset> = (0..1u128 << n)
        .filter(|s| bits >> s & 1 == 1)
        .map(VertexSubset)
        .collect();
    SimplicialComplex::from_facets(n, &faces).expect("faces lie in [n]")
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    heap(n, &mut p, &mut out);
    out
}

fn heap(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(p.clone());
        return;
    }
    for i in 0..k {
        heap(k - 1, p, out);
        if k % 2 == 0 {
            p.swap(i, k - 1);
        } else {
            p.swap(0, k - 1);
        }
    }
}

/// For each permutation, the induced map on subset bitmasks.
fn mask_maps(n: usize) -> Vec<Vec<u8>> {
    permutations(n)
        .into_iter()
        .map(|p| {
            (0..1usize << n)
                .map(|s| {
                    (0..n)
                        .filter(|i| s >> i & 1 == 1)
                        .fold(0u8, |acc, i| acc | 1 << p[i])
                })
                .collect()
        })
        .collect()
}

fn apply(map: &[u8], bits: u64) -> u64 {
    let mut out = 0u64;
    let mut b = bits;
    while b != 0 {
        let s = b.trailing_zeros() as usize;
        out |= 1u64 << map[s];
        b &= b - 1;
    }
    out
}

/// Smallest face bitset in the isomorphism class.
pub fn canonical_form(k: &SimplicialComplex) -> Result<u64> {
    if k.n() > MAX_CATALOG_N {
        return Err(Error::SizeGuard {
            what: "catalog vertices",
            value: k.n(),
            limit: MAX_CATALOG_N,
        });
    }
    let bits = face_bits(k);
    Ok(mask_maps(k.n())
        .iter()
        .map(|m| apply(m, bits))
        .min()
        .unwrap_or(bits))
}

/// One representative per isomorphism class of non-void complexes on `[n]`
/// containing every subset of size at most `forced`.
fn downsets_up_to_iso(n: usize, forced: usize) -> Vec<u64> {
    let maps = mask_maps(n);
    let mut base = 0u64;
    let mut free: Vec<usize> = Vec::new();
    for s in 0..1usize << n {
        if (s.count_ones() as usize) <= forced {
            base |= 1 << s;
        } else {
            free.push(s);
        }
    }
    free.sort_by_key(|s| (s.count_ones(), *s));
    let mut seen: HashSet<u64> = HashSet::new();
    let mut reps = Vec::new();
    let mut visit = |bits: u64| {
        if seen.contains(&bits) {
            return;
        }
        let orbit: Vec<u64> = maps.iter().map(|m| apply(m, bits)).collect();
        reps.push(*orbit.iter().min().unwrap());
        seen.extend(orbit);
    };
    fn dfs(i: usize, bits: u64, n: usize, free: &[usize], visit: &mut dyn FnMut(u64)) {
        if i == free.len() {
            visit(bits);
            return;
        }
        let s = free[i];
        dfs(i + 1, bits, n, free, visit);
        let closed = (0..n)
            .filter(|v| s >> v & 1 == 1)
            .all(|v| bits >> (s & !(1 << v)) & 1 == 1);
        if closed {
            dfs(i + 1, bits | 1 << s, n, free, visit);
        }
    }
    dfs(0, base, n, &free, &mut visit);
    reps.sort();
    reps
}

/// All non-void complexes on `[n]`, `n ≤ 5`, up to isomorphism. Complexes
/// with ghost vertices are included.
pub fn complexes_up_to_iso(n: usize) -> Result<Vec<SimplicialComplex>> {
    if n > 5 {
        return Err(Error::SizeGuard {
            what: "exhaustive catalog vertices",
            value: n,
            limit: 5,
        });
    }
    Ok(downsets_up_to_iso(n, 0)
        .into_iter()
        .map(|b| from_face_bits(n, b))
        .collect())
}

/// All `⌊n/2⌋`-neighbourly complexes on `[n]`, `n ≤ 6`, up to isomorphism.
pub fn neighbourly_up_to_iso(n: usize) -> Result<Vec<SimplicialComplex>> {
    if n > MAX_CATALOG_N {
        return Err(Error::SizeGuard {
            what: "neighbourly catalog vertices",
            value: n,
            limit: MAX_CATALOG_N,
        });
    }
    Ok(downsets_up_to_iso(n, n / 2)
        .into_iter()
        .map(|b| from_face_bits(n, b))
        .collect())
}
