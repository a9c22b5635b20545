//! Exact evaluators for the piecewise-rational maps relating `Σ|K|`, the
//! smash-product model `Ŵ ⊆ (D¹)^∧n` and its block subspaces, together with
//! membership oracles for their target subspaces.
//!
//! `D¹ = [-1, 1]` with basepoint `-1`; a point of `(D¹)^∧n` is the basepoint
//! as soon as one coordinate is `-1`. A point `x` lies in `Ŵ` iff
//! `{i : x_i ≠ 1}` is a face of `K`.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::permutohedron::{ordered_partition_from_rationals, OrderedPartition};
use crate::subset::VertexSubset;

pub type Q = BigRational;

fn q(a: i64, b: i64) -> Q {
    Q::new(a.into(), b.into())
}

fn in_unit(x: &Q) -> bool {
    x.abs() <= Q::one()
}

/// A point of `(D¹)^∧n`, canonicalized so the basepoint carries no data.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SmashPoint {
    Basepoint,
    Point(Vec<Q>),
}

impl SmashPoint {
    pub fn new(coords: Vec<Q>) -> Result<Self> {
        if let Some(x) = coords.iter().find(|x| !in_unit(x)) {
            return Err(Error::OutOfRange(format!("coordinate {x} outside [-1, 1]")));
        }
        if coords.iter().any(|x| *x == -Q::one()) {
            Ok(SmashPoint::Basepoint)
        } else {
            Ok(SmashPoint::Point(coords))
        }
    }

    pub fn is_basepoint(&self) -> bool {
        matches!(self, SmashPoint::Basepoint)
    }

    pub fn coords(&self) -> Option<&[Q]> {
        match self {
            SmashPoint::Basepoint => None,
            SmashPoint::Point(c) => Some(c),
        }
    }

    /// `{i : x_i ≠ 1}`.
    pub fn moving_coordinates(&self) -> VertexSubset {
        self.coords().map_or(VertexSubset::EMPTY, |c| {
            c.iter()
                .enumerate()
                .filter(|(_, x)| !x.is_one())
                .fold(VertexSubset::EMPTY, |s, (i, _)| s.insert(i + 1))
        })
    }
}

/// Barycentric coordinates of a point of `|Δ^{n-1}|`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Barycentric(Vec<Q>);

impl Barycentric {
    pub fn new(coords: Vec<Q>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidInput("empty barycentric point".to_string()));
        }
        if coords.iter().any(|x| x.is_negative()) {
            return Err(Error::OutOfRange(
                "negative barycentric coordinate".to_string(),
            ));
        }
        if coords.iter().sum::<Q>() != Q::one() {
            return Err(Error::OutOfRange(
                "barycentric coordinates must sum to 1".to_string(),
            ));
        }
        Ok(Barycentric(coords))
    }

    pub fn coords(&self) -> &[Q] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn support(&self) -> VertexSubset {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .fold(VertexSubset::EMPTY, |s, (i, _)| s.insert(i + 1))
    }

    fn max(&self) -> &Q {
        self.0.iter().max().expect("non-empty")
    }
}

/// A point of an iterated reduced suspension `Σ^k X`, where `X` is `|K|`
/// (with its own suspension coordinate folded into `params`) or `Ŵ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SuspensionPoint {
    Basepoint,
    Complex { params: Vec<Q>, z: Barycentric },
    Smash { params: Vec<Q>, x: Vec<Q> },
}

impl SuspensionPoint {
    /// A point `(t_1, …, t_k, z)` of `Σ^k|K|`: basepoint iff `t_k = -1` or
    /// `|t_i| = 1` for some `i < k`.
    pub fn of_complex(k: &SimplicialComplex, params: Vec<Q>, z: Barycentric) -> Result<Self> {
        check_params(&params)?;
        if z.dim() != k.n() {
            return Err(Error::LengthMismatch {
                expected: k.n(),
                actual: z.dim(),
            });
        }
        if !k.contains(z.support()) {
            return Err(Error::InvalidInput(format!(
                "support {} is not a face",
                z.support()
            )));
        }
        let Some((last, rest)) = params.split_last() else {
            return Err(Error::InvalidInput(
                "missing suspension coordinate".to_string(),
            ));
        };
        if *last == -Q::one() || rest.iter().any(|t| t.abs().is_one()) {
            return Ok(SuspensionPoint::Basepoint);
        }
        Ok(SuspensionPoint::Complex { params, z })
    }

    /// A point `(t_1, …, t_k, x)` of `Σ^k Ŵ`: basepoint iff some `|t_i| = 1`
    /// or `x` is the basepoint.
    pub fn of_smash(k: &SimplicialComplex, params: Vec<Q>, x: SmashPoint) -> Result<Self> {
        check_params(&params)?;
        if let Some(c) = x.coords() {
            if c.len() != k.n() {
                return Err(Error::LengthMismatch {
                    expected: k.n(),
                    actual: c.len(),
                });
            }
        }
        if !smash_membership(&x, &MembershipTarget::whole(k)) {
            return Err(Error::InvalidInput("point does not lie in Ŵ".to_string()));
        }
        match x {
            SmashPoint::Basepoint => Ok(SuspensionPoint::Basepoint),
            SmashPoint::Point(_) if params.iter().any(|t| t.abs().is_one()) => {
                Ok(SuspensionPoint::Basepoint)
            }
            SmashPoint::Point(c) => Ok(SuspensionPoint::Smash { params, x: c }),
        }
    }
}

fn check_params(params: &[Q]) -> Result<()> {
    match params.iter().find(|t| !in_unit(t)) {
        Some(t) => Err(Error::OutOfRange(format!(
            "suspension coordinate {t} outside [-1, 1]"
        ))),
        None => Ok(()),
    }
}

/// The subspace `Ŵ_{I_1} ∧ … ∧ Ŵ_{I_m}` of `(D¹)^∧n` for the complex `L`.
#[derive(Clone, Debug, PartialEq)]
pub struct MembershipTarget<'a> {
    pub partition: OrderedPartition,
    pub complex: &'a SimplicialComplex,
}

impl<'a> MembershipTarget<'a> {
    pub fn new(partition: OrderedPartition, complex: &'a SimplicialComplex) -> Result<Self> {
        if partition.ground() != VertexSubset::full(complex.n()) {
            return Err(Error::InvalidInput(format!(
                "{partition} is not a partition of [{}]",
                complex.n()
            )));
        }
        Ok(MembershipTarget { partition, complex })
    }

    /// The single-block target `Ŵ` itself.
    pub fn whole(k: &'a SimplicialComplex) -> Self {
        MembershipTarget {
            partition: OrderedPartition::new(vec![VertexSubset::full(k.n())])
                .expect("non-empty ground set"),
            complex: k,
        }
    }
}

/// Basepoint, or `{i ∈ I_j : x_i ≠ 1} ∈ L_{I_j}` for every block.
pub fn smash_membership(x: &SmashPoint, target: &MembershipTarget) -> bool {
    let moving = x.moving_coordinates();
    x.is_basepoint()
        || target
            .partition
            .blocks()
            .iter()
            .all(|b| target.complex.contains(moving.intersection(*b)))
}

/// `h : Σ|Δ^{n-1}| → (D¹)^∧n`, evaluated in the chart of a maximal
/// barycentric coordinate.
pub fn h_eval(t: &Q, z: &Barycentric) -> Result<SmashPoint> {
    let i = z.0.iter().position(|x| x == z.max()).expect("non-empty");
    h_eval_chart(t, z, i + 1)
}

/// `h` in chart `i` (1-based), which requires `z_i` to be maximal:
/// `x_j = t + (1-t)(z_i - z_j)/z_i`.
pub fn h_eval_chart(t: &Q, z: &Barycentric, i: usize) -> Result<SmashPoint> {
    if !in_unit(t) {
        return Err(Error::OutOfRange(format!("t = {t} outside [-1, 1]")));
    }
    if i == 0 || i > z.dim() || z.0[i - 1] != *z.max() {
        return Err(Error::InvalidInput(format!(
            "chart {i} is not at a maximal coordinate"
        )));
    }
    if *t == -Q::one() {
        return Ok(SmashPoint::Basepoint);
    }
    if t.is_one() {
        return Ok(SmashPoint::Point(vec![Q::one(); z.dim()]));
    }
    let zi = &z.0[i - 1];
    let s = Q::one() - t;
    let coords = z.0.iter().map(|zj| t + &s * (zi - zj) / zi).collect();
    SmashPoint::new(coords)
}

/// Preimage under `h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HPreimage {
    Basepoint,
    Apex,
    Point { t: Q, z: Barycentric },
}

/// `h^{-1}`: `t = min x_k`, `z_j = (1 - x_j)/(n - Σ x_k)`.
pub fn h_inv_eval(x: &SmashPoint) -> Result<HPreimage> {
    let Some(c) = x.coords() else {
        return Ok(HPreimage::Basepoint);
    };
    if c.iter().all(|v| v.is_one()) {
        return Ok(HPreimage::Apex);
    }
    let t = c.iter().min().expect("non-empty").clone();
    let n = Q::from_integer((c.len() as i64).into());
    let denom = n - c.iter().sum::<Q>();
    let z = c.iter().map(|v| (Q::one() - v) / &denom).collect();
    Ok(HPreimage::Point {
        t,
        z: Barycentric::new(z)?,
    })
}

/// `[n]_{(t_1, …, t_{n-1}, 0)}`.
pub fn parameter_partition(params: &[Q]) -> OrderedPartition {
    let mut values = params.to_vec();
    values.push(Q::zero());
    ordered_partition_from_rationals(VertexSubset::full(values.len()), &values)
        .expect("lengths agree")
}

/// `max(|t_1|, …, |t_k|, 0)`.
pub fn beta(params: &[Q]) -> Q {
    params
        .iter()
        .map(|t| t.abs())
        .max()
        .unwrap_or_else(Q::zero)
        .max(Q::zero())
}

/// A point of `Σ𝒬_K`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PhiImage {
    Basepoint,
    Point {
        s: Q,
        y: Vec<Q>,
        t: Q,
        z: Barycentric,
    },
}

/// `Φ_K(t_1, …, t_{n-1}, t, z) = (2β - 1, (t_1, …, t_{n-1}, 0), (t, z))`.
pub fn phi_eval(k: &SimplicialComplex, params: &[Q], t: &Q, z: &Barycentric) -> Result<PhiImage> {
    if params.len() + 1 != k.n() {
        return Err(Error::LengthMismatch {
            expected: k.n().saturating_sub(1),
            actual: params.len(),
        });
    }
    let mut all = params.to_vec();
    all.push(t.clone());
    let p = SuspensionPoint::of_complex(k, all, z.clone())?;
    if p == SuspensionPoint::Basepoint {
        return Ok(PhiImage::Basepoint);
    }
    let b = beta(params);
    // β = 0 puts y on the diagonal; s = 2β - 1 = -1 is the basepoint anyway
    if b.is_zero() || b.is_one() || *t == -Q::one() {
        return Ok(PhiImage::Basepoint);
    }
    let mut y = params.to_vec();
    y.push(Q::zero());
    Ok(PhiImage::Point {
        s: q(2, 1) * b - Q::one(),
        y,
        t: t.clone(),
        z: z.clone(),
    })
}

/// Whether a point of `Σ𝒫_n` lies in `Σ𝒬_K`: with `(I_1, …, I_m) = [n]_y`,
/// `supp(z) ∩ I_j ∈ K_{I_j}` for all `j`.
pub fn phi_membership(k: &SimplicialComplex, image: &PhiImage) -> bool {
    match image {
        PhiImage::Basepoint => true,
        PhiImage::Point { y, z, .. } => {
            let p = ordered_partition_from_rationals(VertexSubset::full(y.len()), y)
                .expect("lengths agree");
            let supp = z.support();
            p.blocks().iter().all(|b| k.contains(supp.intersection(*b)))
        }
    }
}

/// A map `Ψ : Σ^{n-1}Ŵ → (D¹)^∧n` for a complex on `[n]`.
pub trait PsiMap {
    fn complex(&self) -> &SimplicialComplex;

    /// `params = (t_1, …, t_{n-1})`, `x ∈ Ŵ`.
    fn eval(&self, params: &[Q], x: &SmashPoint) -> Result<SmashPoint>;
}

/// The explicit `Ψ_K` for a neighbourly complex:
/// `f_i(x) = (1 - 2α_iβ)(x + 1) - 1` if `α_i < 1/2`, else `(1 - β)(x + 1) - 1`.
#[derive(Clone, Debug)]
pub struct NeighbourlyPsi {
    complex: SimplicialComplex,
}

impl NeighbourlyPsi {
    pub fn new(k: &SimplicialComplex) -> Result<Self> {
        if !k.is_neighbourly() {
            return Err(Error::NotNeighbourly);
        }
        Ok(NeighbourlyPsi { complex: k.clone() })
    }

    /// `α_i`: the least sum of `|t_i - t_j|` over `⌊n/2⌋`-subsets of
    /// `[n] - {i}`, with `t_n = 0`; that is, the sum of the `⌊n/2⌋`
    /// smallest distances.
    pub fn alphas(params: &[Q]) -> Vec<Q> {
        let mut t = params.to_vec();
        t.push(Q::zero());
        let n = t.len();
        (0..n)
            .map(|i| {
                let mut d: Vec<Q> = (0..n)
                    .filter(|&j| j != i)
                    .map(|j| (&t[i] - &t[j]).abs())
                    .collect();
                d.sort();
                d.into_iter().take(n / 2).sum()
            })
            .collect()
    }

    /// The coordinate formula without basepoint canonicalization.
    pub fn eval_raw(&self, params: &[Q], x: &[Q]) -> Vec<Q> {
        let b = beta(params);
        let half = q(1, 2);
        Self::alphas(params)
            .iter()
            .zip(x)
            .map(|(a, xi)| {
                let scale = if *a < half {
                    Q::one() - q(2, 1) * a * &b
                } else {
                    Q::one() - &b
                };
                scale * (xi + Q::one()) - Q::one()
            })
            .collect()
    }
}

impl PsiMap for NeighbourlyPsi {
    fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    fn eval(&self, params: &[Q], x: &SmashPoint) -> Result<SmashPoint> {
        let n = self.complex.n();
        if params.len() + 1 != n {
            return Err(Error::LengthMismatch {
                expected: n - 1,
                actual: params.len(),
            });
        }
        match SuspensionPoint::of_smash(&self.complex, params.to_vec(), x.clone())? {
            SuspensionPoint::Smash { params, x } => SmashPoint::new(self.eval_raw(&params, &x)),
            _ => Ok(SmashPoint::Basepoint),
        }
    }
}

/// `Ψ_{L,K}` for `L = K ⊔ {n+1}` built from a map `Ψ_K`.
pub struct DisjointVertexPsi<P: PsiMap> {
    inner: P,
    extended: SimplicialComplex,
}

impl<P: PsiMap> DisjointVertexPsi<P> {
    pub fn new(inner: P) -> Result<Self> {
        let k = inner.complex();
        let n = k.n();
        let mut facets = k.facets().to_vec();
        facets.push(VertexSubset::singleton(n + 1));
        let extended = SimplicialComplex::from_facets(n + 1, &facets)?;
        Ok(DisjointVertexPsi { inner, extended })
    }

    /// `L = K ⊔ {n+1}`.
    pub fn extended(&self) -> &SimplicialComplex {
        &self.extended
    }

    pub fn inner(&self) -> &P {
        &self.inner
    }

    /// The added coordinate `y` as a function of `s`, with
    /// `α = min(t_i, 0)` and `β = max(t_i, 0)`.
    pub fn y_coordinate(params: &[Q], s: &Q) -> Q {
        let alpha = params
            .iter()
            .cloned()
            .chain([Q::zero()])
            .min()
            .expect("non-empty");
        let beta = params
            .iter()
            .cloned()
            .chain([Q::zero()])
            .max()
            .expect("non-empty");
        let one = Q::one();
        let two = q(2, 1);
        if s.abs().is_one() {
            -one
        } else if alpha <= *s && *s <= beta {
            one
        } else if *s > beta {
            &two * ((&one - s) / (&one - &beta)) - &one
        } else {
            &two * ((&one + s) / (&one + &alpha)) - &one
        }
    }

    /// `params = (t_1, …, t_{n-1}, s)`, `x ∈ Ŵ` for `K`; returns a point of
    /// `(D¹)^∧(n+1)`.
    pub fn eval(&self, params: &[Q], x: &SmashPoint) -> Result<SmashPoint> {
        let n = self.inner.complex().n();
        if params.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                actual: params.len(),
            });
        }
        let (s, ts) = params.split_last().expect("n ≥ 1");
        match SuspensionPoint::of_smash(self.inner.complex(), params.to_vec(), x.clone())? {
            SuspensionPoint::Basepoint => Ok(SmashPoint::Basepoint),
            _ => {
                let inner = self.inner.eval(ts, x)?;
                match inner {
                    SmashPoint::Basepoint => Ok(SmashPoint::Basepoint),
                    SmashPoint::Point(mut c) => {
                        c.push(Self::y_coordinate(ts, s));
                        SmashPoint::new(c)
                    }
                }
            }
        }
    }

    /// Block target for `(t_1, …, t_{n-1}, s)`: vertex `n+1` carries the
    /// value `s` and vertex `n` the value 0.
    pub fn target(&self, params: &[Q]) -> MembershipTarget<'_> {
        let n = self.inner.complex().n();
        let (s, ts) = params.split_last().expect("n ≥ 1");
        let mut values = ts.to_vec();
        values.push(Q::zero());
        values.push(s.clone());
        let p = ordered_partition_from_rationals(VertexSubset::full(n + 1), &values)
            .expect("lengths agree");
        MembershipTarget::new(p, &self.extended).expect("partition of [n+1]")
    }
}

/// The coordinate homotopy of the faithful neighbourhood
/// `(D¹, [0, 1/4) ∪ (3/4, 1])^K`, with `D¹` parametrized as `[0, 1]`.
pub fn faithful_homotopy_eval(t: &Q, s: &Q) -> Result<Q> {
    let zero = Q::zero();
    let one = Q::one();
    if *t < zero || *t > one || *s < zero || *s > one {
        return Err(Error::OutOfRange(format!(
            "(t, s) = ({t}, {s}) outside [0, 1]²"
        )));
    }
    let quarter = q(1, 4);
    let three_quarters = q(3, 4);
    Ok(if *s <= quarter {
        s * (&one - t)
    } else if *s < three_quarters {
        s + t * (s - q(1, 2))
    } else {
        s + t * (&one - s)
    })
}

/// [`faithful_homotopy_eval`] transported to `D¹ = [-1, 1]` by
/// `u = (x + 1)/2`.
pub fn faithful_homotopy_symmetric(t: &Q, x: &Q) -> Result<Q> {
    if !in_unit(x) {
        return Err(Error::OutOfRange(format!("x = {x} outside [-1, 1]")));
    }
    let u = (x + Q::one()) / q(2, 1);
    Ok(q(2, 1) * faithful_homotopy_eval(t, &u)? - Q::one())
}
