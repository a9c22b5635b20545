//! Labelled particle configurations on the line, representability of label
//! multisets in `W_k = (D¹, S⁰)^K ∩ {at least n - k coordinates at the
//! basepoint}`, `(m, n)`-partitions, the strict order on particles and on
//! their subsets, and the `η` values that embed that order into `ℚ`.

use std::cmp::Ordering;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::subset::VertexSubset;

type Q = BigRational;

/// Largest configuration for which `η` is evaluated by enumerating subsets.
pub const MAX_ETA_PARTICLES: usize = 24;

/// Which part of `D¹ = [-1, 1]` a label value lies in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LabelSymbol {
    /// `-1`, the basepoint.
    Basepoint,
    /// `(-1, 1)`.
    Interior,
    /// `+1`.
    Plus,
}

impl LabelSymbol {
    pub const ALL: [LabelSymbol; 3] = [
        LabelSymbol::Basepoint,
        LabelSymbol::Interior,
        LabelSymbol::Plus,
    ];

    pub fn of(value: &Q) -> Result<Self> {
        if value.abs() > Q::one() {
            return Err(Error::OutOfRange(format!(
                "label value {value} is outside [-1, 1]"
            )));
        }
        Ok(if *value == -Q::one() {
            LabelSymbol::Basepoint
        } else if value.is_one() {
            LabelSymbol::Plus
        } else {
            LabelSymbol::Interior
        })
    }
}

/// A label `(i, v)`: a point `v ∈ D¹` of the `i`-th summand.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Label {
    pub summand: usize,
    pub value: Q,
}

impl Label {
    pub fn new(summand: usize, value: Q) -> Result<Self> {
        if summand == 0 {
            return Err(Error::InvalidInput(
                "summand indices start at 1".to_string(),
            ));
        }
        LabelSymbol::of(&value)?;
        Ok(Label { summand, value })
    }

    pub fn symbol(&self) -> LabelSymbol {
        LabelSymbol::of(&self.value).expect("validated on construction")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Particle {
    pub position: Q,
    pub label: Label,
}

/// A finite configuration of labelled particles. Particles labelled by the
/// basepoint are dropped on construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledConfiguration {
    particles: Vec<Particle>,
}

impl LabeledConfiguration {
    /// Errors if two particles of the same summand share a position.
    pub fn new(particles: Vec<Particle>) -> Result<Self> {
        let particles: Vec<Particle> = particles
            .into_iter()
            .filter(|p| p.label.symbol() != LabelSymbol::Basepoint)
            .collect();
        particle_order(&particles)?;
        Ok(LabeledConfiguration { particles })
    }

    pub fn particles(&self) -> &[Particle] {
        &self.particles
    }

    pub fn len(&self) -> usize {
        self.particles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.particles.is_empty()
    }

    /// `σ(y)` for each particle, in input order.
    pub fn ranks(&self) -> Vec<usize> {
        particle_order(&self.particles).expect("validated on construction")
    }

    /// The label multiset, reduced to symbols.
    pub fn symbols(&self) -> Vec<(usize, LabelSymbol)> {
        self.particles
            .iter()
            .map(|p| (p.label.summand, p.label.symbol()))
            .collect()
    }
}

/// Whether the labels are the nonbasepoint coordinates of a point of `W_k`:
/// summands pairwise distinct, the interior coordinates span a face of `K`,
/// and at most `k` coordinates differ from the basepoint.
pub fn is_represented(
    labels: &[(usize, LabelSymbol)],
    complex: &SimplicialComplex,
    k: usize,
) -> bool {
    let mut used = VertexSubset::EMPTY;
    let mut interior = VertexSubset::EMPTY;
    let mut active = 0;
    for &(i, symbol) in labels {
        if i == 0 || i > complex.n() || used.contains(i) {
            return false;
        }
        used = used.insert(i);
        match symbol {
            LabelSymbol::Interior => {
                interior = interior.insert(i);
                active += 1;
            }
            LabelSymbol::Plus => active += 1,
            LabelSymbol::Basepoint => {}
        }
    }
    active <= k && complex.contains(interior)
}

/// [`is_represented`] for concrete label values.
pub fn is_represented_labels(labels: &[Label], complex: &SimplicialComplex, k: usize) -> bool {
    let symbols: Vec<_> = labels.iter().map(|l| (l.summand, l.symbol())).collect();
    is_represented(&symbols, complex, k)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyAReport {
    pub m: usize,
    pub k: usize,
    pub multisets_checked: usize,
    pub holds: bool,
    /// A multiset represented in exactly one of `W_m`, `W_k`.
    pub witness: Option<Vec<(usize, LabelSymbol)>>,
}

/// Checks that a multiset of `m` labels is represented in `W_k` iff it is
/// represented in `W_m`, over every multiset drawn from the alphabet
/// `[n] × {-1, interior, +1}`.
pub fn property_a_check(
    complex: &SimplicialComplex,
    m: usize,
    k: usize,
) -> Result<PropertyAReport> {
    property_a_check_with(complex, m, k, is_represented)
}

/// [`property_a_check`] against an arbitrary representability oracle.
pub fn property_a_check_with<F>(
    complex: &SimplicialComplex,
    m: usize,
    k: usize,
    oracle: F,
) -> Result<PropertyAReport>
where
    F: Fn(&[(usize, LabelSymbol)], &SimplicialComplex, usize) -> bool,
{
    let n = complex.n();
    if !(m < k && k <= n) {
        return Err(Error::OutOfRange(format!(
            "need m < k <= n, got m = {m}, k = {k}, n = {n}"
        )));
    }
    let alphabet: Vec<(usize, LabelSymbol)> = (1..=n)
        .flat_map(|i| LabelSymbol::ALL.into_iter().map(move |s| (i, s)))
        .collect();
    let mut report = PropertyAReport {
        m,
        k,
        multisets_checked: 0,
        holds: true,
        witness: None,
    };
    // multisets as non-decreasing index sequences into the alphabet
    let mut idx = vec![0usize; m];
    loop {
        let labels: Vec<_> = idx.iter().map(|&a| alphabet[a]).collect();
        report.multisets_checked += 1;
        if oracle(&labels, complex, k) != oracle(&labels, complex, m) {
            report.holds = false;
            report.witness = Some(labels);
            return Ok(report);
        }
        let Some(pos) = (0..m).rev().find(|&p| idx[p] + 1 < alphabet.len()) else {
            return Ok(report);
        };
        let next = idx[pos] + 1;
        idx[pos..].fill(next);
    }
}

/// A sequence `(s_1, …, s_n)` of non-negative integers summing to `m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MnPartition(pub Vec<usize>);

impl MnPartition {
    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn nonzero_parts(&self) -> usize {
        self.0.iter().filter(|&&s| s > 0).count()
    }
}

/// All `(m, n)`-partitions, in decreasing lexicographic order.
pub fn mn_partitions(m: usize, n: usize) -> Vec<MnPartition> {
    fn go(m: usize, slots: usize, prefix: &mut Vec<usize>, out: &mut Vec<MnPartition>) {
        if slots == 1 {
            prefix.push(m);
            out.push(MnPartition(prefix.clone()));
            prefix.pop();
            return;
        }
        for s in (0..=m).rev() {
            prefix.push(s);
            go(m - s, slots - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    match n {
        0 if m == 0 => out.push(MnPartition(Vec::new())),
        0 => {}
        _ => go(m, n, &mut Vec::new(), &mut out),
    }
    out
}

/// Ranks `σ(y) ∈ 1..=m` under the order: smaller summand first, then smaller
/// position. Particles must not carry the basepoint label.
pub fn particle_order(particles: &[Particle]) -> Result<Vec<usize>> {
    let mut order: Vec<usize> = (0..particles.len()).collect();
    for p in particles {
        if p.label.symbol() == LabelSymbol::Basepoint {
            return Err(Error::InvalidInput(
                "degenerate particle (basepoint label)".to_string(),
            ));
        }
    }
    let key = |i: usize| (particles[i].label.summand, &particles[i].position);
    order.sort_by(|&a, &b| key(a).cmp(&key(b)));
    if let Some(w) = order.windows(2).find(|w| key(w[0]) == key(w[1])) {
        return Err(Error::InvalidInput(format!(
            "particles {} and {} collide in summand {}",
            w[0], w[1], particles[w[0]].label.summand
        )));
    }
    let mut ranks = vec![0; particles.len()];
    for (r, &i) in order.iter().enumerate() {
        ranks[i] = r + 1;
    }
    Ok(ranks)
}

/// Compares two subsets given by the ranks of their members: the subset
/// containing the largest rank in the symmetric difference is larger.
pub fn subset_cmp(a: &[usize], b: &[usize]) -> Ordering {
    let desc = |s: &[usize]| {
        let mut v = s.to_vec();
        v.sort_unstable_by(|x, y| y.cmp(x));
        v.dedup();
        v
    };
    desc(a).cmp(&desc(b))
}

/// `η_{ω,S} = Σ_{S' ⪯ S} Π_{y ∈ S'} f(label(y))`, with `S` given as indices
/// into `ω.particles()`.
pub fn eta<F>(omega: &LabeledConfiguration, subset: &[usize], f: F) -> Result<Q>
where
    F: Fn(&Label) -> Q,
{
    let m = omega.len();
    if m > MAX_ETA_PARTICLES {
        return Err(Error::SizeGuard {
            what: "particles",
            value: m,
            limit: MAX_ETA_PARTICLES,
        });
    }
    let ranks = omega.ranks();
    let mut weights = vec![Q::zero(); m];
    for (i, p) in omega.particles().iter().enumerate() {
        let w = f(&p.label);
        if !w.is_positive() {
            return Err(Error::OutOfRange(format!(
                "weight {w} of particle {i} is not positive"
            )));
        }
        weights[ranks[i] - 1] = w;
    }
    let mut target: u64 = 0;
    for &i in subset {
        if i >= m {
            return Err(Error::IndexOutOfRange {
                index: i,
                max: m.saturating_sub(1),
            });
        }
        target |= 1 << (ranks[i] - 1);
    }
    // in rank coordinates the order on subsets is the order on bitmasks
    let mut total = Q::zero();
    for mask in 0..=target {
        let mut term = Q::one();
        for (r, w) in weights.iter().enumerate() {
            if mask >> r & 1 == 1 {
                term *= w;
            }
        }
        total += term;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;

    fn q(a: i64) -> Q {
        Q::from_integer(a.into())
    }

    fn particle(summand: usize, position: i64, value: Q) -> Particle {
        Particle {
            position: q(position),
            label: Label::new(summand, value).unwrap(),
        }
    }

    #[test]
    fn representability_on_square() {
        let k = named::cycle(4);
        let i = LabelSymbol::Interior;
        assert!(is_represented(&[], &k, 0));
        assert!(is_represented(&[(1, i), (2, i)], &k, 2));
        assert!(!is_represented(&[(1, i), (3, i)], &k, 2));
        assert!(!is_represented(&[(1, i), (3, i)], &k, 4));
        assert!(is_represented(
            &[(1, LabelSymbol::Plus), (3, LabelSymbol::Plus)],
            &k,
            2
        ));
        assert!(!is_represented(
            &[(1, LabelSymbol::Plus), (3, LabelSymbol::Plus)],
            &k,
            1
        ));
        assert!(!is_represented(&[(1, i), (1, LabelSymbol::Plus)], &k, 4));
    }

    #[test]
    fn partitions_small() {
        let p = mn_partitions(2, 2);
        assert_eq!(
            p,
            vec![
                MnPartition(vec![2, 0]),
                MnPartition(vec![1, 1]),
                MnPartition(vec![0, 2])
            ]
        );
        assert_eq!(mn_partitions(0, 3), vec![MnPartition(vec![0, 0, 0])]);
        assert_eq!(mn_partitions(4, 4).len(), 35);
    }

    #[test]
    fn summand_dominates_position() {
        let ps = vec![particle(2, 0, q(0)), particle(1, 5, q(0))];
        assert_eq!(particle_order(&ps).unwrap(), vec![2, 1]);
        let ps = vec![particle(1, 1, q(0)), particle(1, 0, q(0))];
        assert_eq!(particle_order(&ps).unwrap(), vec![2, 1]);
        let ps = vec![particle(1, 0, q(0)), particle(1, 0, q(1))];
        assert!(particle_order(&ps).is_err());
        assert!(LabeledConfiguration::new(ps).is_err());
        // different summands may share a position
        let ps = vec![particle(1, 0, q(0)), particle(2, 0, q(0))];
        assert!(LabeledConfiguration::new(ps).is_ok());
    }

    #[test]
    fn basepoint_particles_dropped() {
        let c =
            LabeledConfiguration::new(vec![particle(1, 0, q(-1)), particle(2, 0, q(1))]).unwrap();
        assert_eq!(c.len(), 1);
    }

    #[test]
    fn eta_two_particles() {
        let c =
            LabeledConfiguration::new(vec![particle(1, 0, q(0)), particle(2, 0, q(1))]).unwrap();
        let (a, b) = (q(3), q(5));
        let f = |l: &Label| if l.summand == 1 { a.clone() } else { b.clone() };
        assert_eq!(eta(&c, &[], f).unwrap(), q(1));
        assert_eq!(eta(&c, &[0], f).unwrap(), q(4));
        assert_eq!(eta(&c, &[1], f).unwrap(), q(9));
        assert_eq!(eta(&c, &[0, 1], f).unwrap(), q(24));
        assert!(eta(&c, &[0], |_| q(0)).is_err());
    }
}
