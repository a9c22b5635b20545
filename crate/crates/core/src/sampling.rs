//! Seeded random-sample verification of the coordinate maps in
//! [`crate::geometry`].
//!
//! Samples are drawn in batches, each from its own ChaCha stream derived
//! from `(seed, batch index)`, so results do not depend on scheduling.

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::SimplicialComplex;
use crate::geometry::*;
use crate::subset::VertexSubset;

const BATCH: usize = 500;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapCheck {
    pub name: String,
    pub samples: usize,
    pub failures: usize,
    pub first_counterexample: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapsReport {
    pub n: usize,
    pub samples: usize,
    pub seed: u64,
    pub neighbourly: bool,
    pub checks: Vec<MapCheck>,
    pub passed: bool,
}

/// A rational in `[-1, 1]`; half the time on the grid of eighths so that
/// ties and the endpoints occur often.
pub fn random_unit<R: Rng>(rng: &mut R) -> Q {
    if rng.gen_bool(0.5) {
        Q::new(rng.gen_range(-8i64..=8).into(), 8.into())
    } else {
        let b: i64 = rng.gen_range(1..=60);
        Q::new(rng.gen_range(-b..=b).into(), b.into())
    }
}

/// A rational in the open interval `(-1, 1)`.
pub fn random_open_unit<R: Rng>(rng: &mut R) -> Q {
    loop {
        let x = random_unit(rng);
        if x.abs_sub_one_nonzero() {
            return x;
        }
    }
}

trait UnitExt {
    fn abs_sub_one_nonzero(&self) -> bool;
}

impl UnitExt for Q {
    fn abs_sub_one_nonzero(&self) -> bool {
        !num_traits::Signed::abs(self).is_one()
    }
}

/// A random point of `|Δ^{n-1}|` supported inside `face`, occasionally
/// with tied maxima.
pub fn random_barycentric<R: Rng>(rng: &mut R, n: usize, face: VertexSubset) -> Barycentric {
    let members = face.to_vec();
    let mut w = vec![0i64; n];
    loop {
        for &v in &members {
            w[v - 1] = if rng.gen_bool(0.15) {
                0
            } else {
                rng.gen_range(1..=12)
            };
        }
        if rng.gen_bool(0.3) && members.len() >= 2 {
            let m = *w.iter().max().unwrap();
            let v = *members.choose(rng).unwrap();
            w[v - 1] = m;
        }
        if w.iter().any(|x| *x > 0) {
            break;
        }
    }
    let total: i64 = w.iter().sum();
    Barycentric::new(
        w.into_iter()
            .map(|x| Q::new(x.into(), total.into()))
            .collect(),
    )
    .expect("valid weights")
}

fn random_face<R: Rng>(rng: &mut R, k: &SimplicialComplex) -> VertexSubset {
    let facet = *k.facets().choose(rng).expect("non-void complex");
    facet
        .iter()
        .filter(|_| rng.gen_bool(0.8))
        .fold(VertexSubset::EMPTY, |s, v| s.insert(v))
}

fn random_nonempty_face<R: Rng>(rng: &mut R, k: &SimplicialComplex) -> Option<VertexSubset> {
    if k.facets().iter().all(|f| f.is_empty()) {
        return None;
    }
    loop {
        let f = random_face(rng, k);
        if !f.is_empty() {
            return Some(f);
        }
    }
}

/// A random point of `Ŵ`, rarely the basepoint.
pub fn random_w_point<R: Rng>(rng: &mut R, k: &SimplicialComplex) -> SmashPoint {
    let face = random_face(rng, k);
    let coords = (1..=k.n())
        .map(|i| {
            if !face.contains(i) {
                Q::one()
            } else if rng.gen_bool(0.01) {
                -Q::one()
            } else {
                let x = random_unit(rng);
                if x == -Q::one() {
                    Q::zero()
                } else {
                    x
                }
            }
        })
        .collect();
    SmashPoint::new(coords).expect("coordinates in range")
}

fn random_params<R: Rng>(rng: &mut R, len: usize) -> Vec<Q> {
    if rng.gen_bool(0.05) {
        return vec![Q::zero(); len];
    }
    (0..len).map(|_| random_open_unit(rng)).collect()
}

/// Which families of checks to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapChecks {
    /// Round trip and chart independence of `h` on `Σ|Δ^{n-1}|`.
    pub h: bool,
    /// Restriction of `h` to faces of `K`, and the image of `Φ_K`.
    pub complex: bool,
    /// Neighbourly `Ψ_K` and its disjoint-vertex extension (skipped unless
    /// `K` is neighbourly).
    pub psi: bool,
}

impl MapChecks {
    pub const ALL: MapChecks = MapChecks {
        h: true,
        complex: true,
        psi: true,
    };
}

#[derive(Default)]
struct Tally {
    checks: Vec<MapCheck>,
}

impl Tally {
    fn record(&mut self, name: &str, ok: bool, witness: impl FnOnce() -> String) {
        let c = match self.checks.iter_mut().find(|c| c.name == name) {
            Some(c) => c,
            None => {
                self.checks.push(MapCheck {
                    name: name.to_string(),
                    ..Default::default()
                });
                self.checks.last_mut().unwrap()
            }
        };
        c.samples += 1;
        if !ok {
            c.failures += 1;
            if c.first_counterexample.is_none() {
                c.first_counterexample = Some(witness());
            }
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        for o in other.checks {
            match self.checks.iter_mut().find(|c| c.name == o.name) {
                Some(c) => {
                    c.samples += o.samples;
                    c.failures += o.failures;
                    if c.first_counterexample.is_none() {
                        c.first_counterexample = o.first_counterexample;
                    }
                }
                None => self.checks.push(o),
            }
        }
        self
    }
}

fn sample_batch(
    k: &SimplicialComplex,
    checks: MapChecks,
    psi: Option<&NeighbourlyPsi>,
    count: usize,
    rng: &mut ChaCha8Rng,
) -> Tally {
    let n = k.n();
    let mut tally = Tally::default();
    let full = VertexSubset::full(n);
    let dv = psi.map(|p| DisjointVertexPsi::new(p.clone()).expect("valid extension"));
    for _ in 0..count {
        if checks.h {
            h_checks(&mut tally, n, full, rng);
        }
        if checks.complex {
            complex_checks(&mut tally, k, rng);
        }
        if let (true, Some(psi), Some(dv)) = (checks.psi, psi, dv.as_ref()) {
            psi_checks(&mut tally, k, psi, dv, rng);
        }
    }
    tally
}

fn fmt_qs(v: &[Q]) -> String {
    let parts: Vec<String> = v.iter().map(|q| q.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

fn fmt_point(x: &SmashPoint) -> String {
    x.coords().map_or_else(|| "basepoint".to_string(), fmt_qs)
}

fn h_checks(tally: &mut Tally, n: usize, full: VertexSubset, rng: &mut ChaCha8Rng) {
    let t = random_unit(rng);
    let z = random_barycentric(rng, n, full);
    let x = h_eval(&t, &z).expect("valid input");
    let back = h_inv_eval(&x).expect("valid point");
    let ok = if t == -Q::one() {
        back == HPreimage::Basepoint
    } else if t.is_one() {
        back == HPreimage::Apex
    } else {
        back == HPreimage::Point {
            t: t.clone(),
            z: z.clone(),
        }
    };
    tally.record("h-round-trip", ok, || {
        format!("t={t} z={}", fmt_qs(z.coords()))
    });

    let max = z.coords().iter().max().unwrap().clone();
    let charts: Vec<usize> = (1..=n).filter(|&i| z.coords()[i - 1] == max).collect();
    let ok = charts
        .iter()
        .all(|&i| h_eval_chart(&t, &z, i).expect("maximal chart") == x);
    tally.record("h-chart-independence", ok, || {
        format!("t={t} z={}", fmt_qs(z.coords()))
    });
}

fn complex_checks(tally: &mut Tally, k: &SimplicialComplex, rng: &mut ChaCha8Rng) {
    let n = k.n();
    let Some(face) = random_nonempty_face(rng, k) else {
        return;
    };
    let t = random_unit(rng);
    let z = random_barycentric(rng, n, face);
    let x = h_eval(&t, &z).expect("valid input");
    let fixed = x.coords().map_or(true, |c| {
        (1..=n)
            .filter(|i| !face.contains(*i))
            .all(|i| c[i - 1].is_one())
    });
    let ok = fixed && smash_membership(&x, &MembershipTarget::whole(k));
    tally.record("h-face-restriction", ok, || {
        format!(
            "face={face} t={t} z={} x={}",
            fmt_qs(z.coords()),
            fmt_point(&x)
        )
    });

    let params = random_params(rng, n - 1);
    let tt = random_unit(rng);
    let img = phi_eval(k, &params, &tt, &z).expect("valid input");
    let ok = phi_membership(k, &img);
    tally.record("phi-membership", ok, || {
        format!("params={} t={tt} z={}", fmt_qs(&params), fmt_qs(z.coords()))
    });
}

fn psi_checks(
    tally: &mut Tally,
    k: &SimplicialComplex,
    psi: &NeighbourlyPsi,
    dv: &DisjointVertexPsi<NeighbourlyPsi>,
    rng: &mut ChaCha8Rng,
) {
    let n = k.n();
    let x = random_w_point(rng, k);
    let zero = vec![Q::zero(); n - 1];
    let ok = psi.eval(&zero, &x).expect("valid input") == x;
    tally.record("psi-identity-at-zero", ok, || {
        format!("x={}", fmt_point(&x))
    });

    let params = random_params(rng, n - 1);
    let y = psi.eval(&params, &x).expect("valid input");
    let target = MembershipTarget::new(parameter_partition(&params), k).expect("partition of [n]");
    let ok = smash_membership(&y, &target);
    tally.record("psi-block-membership", ok, || {
        format!(
            "params={} x={} out={}",
            fmt_qs(&params),
            fmt_point(&x),
            fmt_point(&y)
        )
    });

    if let (true, Some(c)) = (n >= 2, x.coords()) {
        let mut edge = params.clone();
        let i = rng.gen_range(0..n - 1);
        edge[i] = if rng.gen_bool(0.5) {
            Q::one()
        } else {
            -Q::one()
        };
        let raw = psi.eval_raw(&edge, c);
        let ok = raw.iter().any(|v| *v == -Q::one());
        tally.record("psi-boundary-to-basepoint", ok, || {
            format!("params={} x={}", fmt_qs(&edge), fmt_point(&x))
        });
    }

    let s = random_unit(rng);
    let mut ext_params = params;
    ext_params.push(s);
    let at_zero = dv.eval(&vec![Q::zero(); n], &x).expect("valid input");
    let expected = match x.coords() {
        Some(c) => {
            let mut c = c.to_vec();
            c.push(Q::one());
            SmashPoint::Point(c)
        }
        None => SmashPoint::Basepoint,
    };
    tally.record(
        "disjoint-vertex-identity-at-zero",
        at_zero == expected,
        || format!("x={}", fmt_point(&x)),
    );
    let out = dv.eval(&ext_params, &x).expect("valid input");
    let ok = smash_membership(&out, &dv.target(&ext_params));
    tally.record("disjoint-vertex-block-membership", ok, || {
        format!(
            "params={} x={} out={}",
            fmt_qs(&ext_params),
            fmt_point(&x),
            fmt_point(&out)
        )
    });
}

/// Runs every applicable map check on `samples` random inputs.
pub fn verify_maps(k: &SimplicialComplex, samples: usize, seed: u64) -> MapsReport {
    verify_maps_with(k, MapChecks::ALL, samples, seed)
}

pub fn verify_maps_with(
    k: &SimplicialComplex,
    checks: MapChecks,
    samples: usize,
    seed: u64,
) -> MapsReport {
    let psi = NeighbourlyPsi::new(k).ok().filter(|_| k.n() >= 1);
    let batches = samples.div_ceil(BATCH);
    let tally = (0..batches)
        .into_par_iter()
        .map(|b| {
            let count = BATCH.min(samples - b * BATCH);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(b as u64);
            sample_batch(k, checks, psi.as_ref(), count, &mut rng)
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(Tally::default(), Tally::merge);
    let passed = tally.checks.iter().all(|c| c.failures == 0);
    MapsReport {
        n: k.n(),
        samples,
        seed,
        neighbourly: psi.is_some(),
        checks: tally.checks,
        passed,
    }
}
