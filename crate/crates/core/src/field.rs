//! Coefficient fields and sparse linear algebra over them.

use std::collections::BTreeMap;
use std::fmt::{self, Debug};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Field descriptor: `0` is ℚ, a prime `p` is F_p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Coefficients {
    Rational,
    Prime(u64),
}

impl Coefficients {
    /// Parses the CLI convention (`0` for ℚ, otherwise a prime ≤ 2^31).
    pub fn from_code(code: u64) -> Result<Self> {
        if code == 0 {
            return Ok(Coefficients::Rational);
        }
        if code > (1 << 31) || !is_prime(code) {
            return Err(Error::InvalidInput(format!("{code} is not a prime ≤ 2^31")));
        }
        Ok(Coefficients::Prime(code))
    }

    pub fn code(self) -> u64 {
        match self {
            Coefficients::Rational => 0,
            Coefficients::Prime(p) => p,
        }
    }
}

impl fmt::Display for Coefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficients::Rational => write!(f, "Q"),
            Coefficients::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub trait Field: Clone + Debug + Send + Sync + PartialEq {
    type Elem: Clone + Debug + PartialEq + Send + Sync;

    fn descriptor(&self) -> Coefficients;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// A uniformly-ish random element, used for randomized solution choices.
    fn random<R: Rng>(&self, rng: &mut R) -> Self::Elem;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        match Coefficients::from_code(p)? {
            Coefficients::Prime(p) => Ok(PrimeField { p }),
            Coefficients::Rational => Err(Error::InvalidInput("0 is not a prime".into())),
        }
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn descriptor(&self) -> Coefficients {
        Coefficients::Prime(self.p)
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "inverse of zero");
        // Fermat
        let mut result = 1u64;
        let mut base = *a;
        let mut e = self.p - 2;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(&result, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        result
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn random<R: Rng>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.p)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn descriptor(&self) -> Coefficients {
        Coefficients::Rational
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero");
        a.recip()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn random<R: Rng>(&self, rng: &mut R) -> BigRational {
        let num: i64 = rng.gen_range(-5..=5);
        let den: i64 = rng.gen_range(1..=3);
        BigRational::new(num.into(), den.into())
    }
}

/// Runs `$body` with `$f` bound to the concrete field for `$coeffs`.
#[macro_export]
macro_rules! with_field {
    ($coeffs:expr, |$f:ident| $body:expr) => {
        match $coeffs {
            $crate::field::Coefficients::Rational => {
                let $f = $crate::field::Rationals;
                $body
            }
            $crate::field::Coefficients::Prime(p) => {
                let $f = $crate::field::PrimeField::new(p).expect("validated prime");
                $body
            }
        }
    };
}

/// Sparse vector: strictly increasing indices, no stored zeros.
pub type SparseVec<E> = Vec<(usize, E)>;

/// `x + c·y`.
pub fn axpy<F: Field>(
    field: &F,
    x: &SparseVec<F::Elem>,
    c: &F::Elem,
    y: &SparseVec<F::Elem>,
) -> SparseVec<F::Elem> {
    if field.is_zero(c) {
        return x.clone();
    }
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        if j == y.len() || (i < x.len() && x[i].0 < y[j].0) {
            out.push(x[i].clone());
            i += 1;
        } else if i == x.len() || y[j].0 < x[i].0 {
            out.push((y[j].0, field.mul(c, &y[j].1)));
            j += 1;
        } else {
            let v = field.add(&x[i].1, &field.mul(c, &y[j].1));
            if !field.is_zero(&v) {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn scale<F: Field>(field: &F, c: &F::Elem, x: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
    if field.is_zero(c) {
        return Vec::new();
    }
    x.iter().map(|(i, v)| (*i, field.mul(c, v))).collect()
}

pub fn to_dense<F: Field>(field: &F, x: &SparseVec<F::Elem>, len: usize) -> Vec<F::Elem> {
    let mut out = vec![field.zero(); len];
    for (i, v) in x {
        out[*i] = v.clone();
    }
    out
}

pub fn from_dense<F: Field>(field: &F, x: &[F::Elem]) -> SparseVec<F::Elem> {
    x.iter()
        .enumerate()
        .filter(|(_, v)| !field.is_zero(v))
        .map(|(i, v)| (i, v.clone()))
        .collect()
}

struct Pivot<E> {
    row: SparseVec<E>,
    combo: SparseVec<E>,
}

/// Incremental row-echelon basis of a subspace with optional bookkeeping of
/// how each basis vector is expressed in the inserted generators.
pub struct Echelon<F: Field> {
    field: F,
    pivots: BTreeMap<usize, Pivot<F::Elem>>,
    generators: usize,
    track: bool,
}

impl<F: Field> Echelon<F> {
    pub fn new(field: F) -> Self {
        Echelon {
            field,
            pivots: BTreeMap::new(),
            generators: 0,
            track: false,
        }
    }

    /// Echelon that records generator combinations, enabling [`Echelon::solve`].
    pub fn tracking(field: F) -> Self {
        Echelon {
            track: true,
            ..Self::new(field)
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    /// Inserts a generator; returns whether it was independent of the
    /// previous ones.
    pub fn insert(&mut self, v: SparseVec<F::Elem>) -> bool {
        let gen = self.generators;
        self.generators += 1;
        let combo0 = if self.track {
            vec![(gen, self.field.one())]
        } else {
            Vec::new()
        };
        let (row, combo) = self.reduce_tracked(v, combo0);
        match row.first() {
            None => false,
            Some((lead, lv)) => {
                let lead = *lead;
                let inv = self.field.inv(lv);
                let row = scale(&self.field, &inv, &row);
                let combo = scale(&self.field, &inv, &combo);
                self.pivots.insert(lead, Pivot { row, combo });
                true
            }
        }
    }

    fn reduce_tracked(
        &self,
        mut v: SparseVec<F::Elem>,
        mut combo: SparseVec<F::Elem>,
    ) -> (SparseVec<F::Elem>, SparseVec<F::Elem>) {
        // eliminate entries in increasing index order; pivot rows only carry
        // entries beyond their lead, so earlier positions stay reduced
        let mut pos = 0;
        while pos < v.len() {
            let (idx, val) = (v[pos].0, v[pos].1.clone());
            if let Some(p) = self.pivots.get(&idx) {
                let c = self.field.neg(&val);
                v = axpy(&self.field, &v, &c, &p.row);
                if self.track {
                    combo = axpy(&self.field, &combo, &c, &p.combo);
                }
            } else {
                pos += 1;
            }
        }
        (v, combo)
    }

    /// Normal form of `v` modulo the span.
    pub fn reduce(&self, v: SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        self.reduce_tracked(v, Vec::new()).0
    }

    pub fn contains(&self, v: &SparseVec<F::Elem>) -> bool {
        self.reduce(v.clone()).is_empty()
    }

    /// Coefficients `c` (indexed by generator) with `Σ c_g · gen_g = v`, if
    /// `v` lies in the span. Requires a tracking echelon.
    pub fn solve(&self, v: &SparseVec<F::Elem>) -> Option<SparseVec<F::Elem>> {
        assert!(self.track, "solve requires a tracking echelon");
        let (rest, combo) = self.reduce_tracked(v.clone(), Vec::new());
        if rest.is_empty() {
            Some(scale(
                &self.field,
                &self.field.neg(&self.field.one()),
                &combo,
            ))
        } else {
            None
        }
    }
}

/// Sparse matrix stored by columns: `cols[j]` is the image of basis vector `j`.
#[derive(Clone, Debug)]
pub struct ColumnMatrix<E> {
    pub rows: usize,
    pub cols: Vec<SparseVec<E>>,
}

impl<E: Clone> ColumnMatrix<E> {
    pub fn apply<F: Field<Elem = E>>(&self, field: &F, x: &SparseVec<E>) -> SparseVec<E> {
        let mut out = Vec::new();
        for (j, c) in x {
            out = axpy(field, &out, c, &self.cols[*j]);
        }
        out
    }
}

pub fn rank<F: Field>(field: &F, m: &ColumnMatrix<F::Elem>) -> usize {
    let mut e = Echelon::new(field.clone());
    for c in &m.cols {
        e.insert(c.clone());
    }
    e.rank()
}

/// Basis of `{x : M x = 0}`.
pub fn kernel<F: Field>(field: &F, m: &ColumnMatrix<F::Elem>) -> Vec<SparseVec<F::Elem>> {
    let mut e = Echelon::tracking(field.clone());
    let mut basis = Vec::new();
    for (j, c) in m.cols.iter().enumerate() {
        if !e.insert(c.clone()) {
            // c depends on previous columns: c = Σ a_g col_g
            let combo = e.solve(c).expect("dependent column is in the span");
            let mut v = scale(field, &field.neg(&field.one()), &combo);
            v.push((j, field.one()));
            basis.push(v);
        }
    }
    basis
}

/// Solves `M x = b`; `None` if inconsistent.
pub fn solve<F: Field>(
    field: &F,
    m: &ColumnMatrix<F::Elem>,
    b: &SparseVec<F::Elem>,
) -> Option<SparseVec<F::Elem>> {
    let mut e = Echelon::tracking(field.clone());
    for c in &m.cols {
        e.insert(c.clone());
    }
    e.solve(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = PrimeField::new(7).unwrap();
        for a in 1..7u64 {
            assert_eq!(f.mul(&a, &f.inv(&a)), 1);
        }
        assert_eq!(f.from_i64(-1), 6);
        assert!(PrimeField::new(9).is_err());
        assert!(Coefficients::from_code((1 << 31) + 11).is_err());
        assert_eq!(
            Coefficients::from_code(2147483647).unwrap(),
            Coefficients::Prime(2147483647)
        );
        let big = PrimeField::new(2147483647).unwrap();
        let a = 2147483646u64;
        assert_eq!(big.mul(&a, &a), 1);
    }

    #[test]
    fn kernel_and_solve_over_q() {
        let f = Rationals;
        // columns (1,1), (2,2), (0,1)
        let m = ColumnMatrix {
            rows: 2,
            cols: vec![
                vec![(0, q(1)), (1, q(1))],
                vec![(0, q(2)), (1, q(2))],
                vec![(1, q(1))],
            ],
        };
        assert_eq!(rank(&f, &m), 2);
        let ker = kernel(&f, &m);
        assert_eq!(ker.len(), 1);
        assert!(m.apply(&f, &ker[0]).is_empty());
        let b = vec![(0, q(3)), (1, q(5))];
        let x = solve(&f, &m, &b).unwrap();
        assert_eq!(m.apply(&f, &x), b);
    }

    #[test]
    fn echelon_reduce_is_canonical() {
        let f = PrimeField::new(3).unwrap();
        let mut e = Echelon::new(f);
        assert!(e.insert(vec![(0, 1), (2, 1)]));
        assert!(!e.insert(vec![(0, 2), (2, 2)]));
        assert_eq!(e.reduce(vec![(0, 1)]), e.reduce(vec![(2, 2)]));
        assert!(e.contains(&vec![(0, 2), (2, 2)]));
    }
}
