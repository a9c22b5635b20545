//! Reading complexes and sample points from JSON.
//!
//! Numbers may be given exactly as strings (`"3/8"`, `"-2"`) or as JSON
//! floats. A float `x` is replaced by the simplest rational in
//! `[x - ε, x + ε]` with `ε = 1e-9`; afterwards, values of one point that lie
//! within `ε` of each other are snapped to the smallest of them, so that
//! intended ties survive rounding.

use std::fs;
use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Deserialize;
use serde_json::Value;
use zk_core::{ComplexJson, SimplicialComplex};

use crate::CliError;

pub const SNAP_EPSILON: f64 = 1e-9;

fn read_json(path: &Path) -> Result<Value, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Malformed(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Malformed(format!("{}: {e}", path.display())))
}

fn complex_from_value(v: Value) -> Result<SimplicialComplex, CliError> {
    let json: ComplexJson =
        serde_json::from_value(v).map_err(|e| CliError::Malformed(format!("complex: {e}")))?;
    SimplicialComplex::from_json(&json).map_err(|e| CliError::Malformed(e.to_string()))
}

/// A single complex `{"n": .., "facets": [[..], ..]}`.
pub fn read_complex(path: &Path) -> Result<SimplicialComplex, CliError> {
    complex_from_value(read_json(path)?)
}

/// A single complex or an array of them.
pub fn read_complexes(path: &Path) -> Result<Vec<SimplicialComplex>, CliError> {
    match read_json(path)? {
        Value::Array(items) => items.into_iter().map(complex_from_value).collect(),
        v => Ok(vec![complex_from_value(v)?]),
    }
}

/// Simplest rational (least denominator, then least numerator magnitude)
/// in the closed interval `[lo, hi]`, `lo ≤ hi`.
pub fn simplest_between(lo: &BigRational, hi: &BigRational) -> BigRational {
    if lo.is_negative() && hi.is_positive() || lo.is_zero() || hi.is_zero() {
        return BigRational::zero();
    }
    if hi.is_negative() {
        return -simplest_between(&-hi, &-lo);
    }
    let fl = lo.floor();
    if fl == *lo {
        return fl;
    }
    if fl.clone() + BigRational::one() <= *hi {
        return fl + BigRational::one();
    }
    // both in (fl, fl + 1): recurse on the reciprocals of the fractional parts
    let a = (lo - &fl).recip();
    let b = (hi - &fl).recip();
    fl + simplest_between(&b, &a).recip()
}

pub fn snap_float(x: f64) -> Result<BigRational, CliError> {
    let exact = BigRational::from_float(x)
        .ok_or_else(|| CliError::Malformed(format!("{x} is not a finite number")))?;
    let eps = BigRational::from_float(SNAP_EPSILON).expect("finite");
    Ok(simplest_between(&(&exact - &eps), &(&exact + &eps)))
}

pub fn parse_rational(s: &str) -> Result<BigRational, CliError> {
    let bad = || CliError::Malformed(format!("{s:?} is not a rational number"));
    let (num, den) = match s.trim().split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s.trim(), "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

/// A value that was given as a float is marked inexact.
fn number(v: &Value) -> Result<(BigRational, bool), CliError> {
    match v {
        Value::String(s) => Ok((parse_rational(s)?, false)),
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok((BigRational::from_integer(i.into()), false)),
            None => Ok((snap_float(n.as_f64().expect("JSON number"))?, true)),
        },
        _ => Err(CliError::Malformed(format!("expected a number, got {v}"))),
    }
}

/// Snaps every inexact value lying within `ε` of some other value to the
/// smallest value of its cluster.
fn snap_ties(values: &mut [(BigRational, bool)]) {
    let eps = BigRational::from_float(SNAP_EPSILON).expect("finite");
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].0.cmp(&values[b].0));
    let mut anchor: Option<BigRational> = None;
    let mut prev: Option<BigRational> = None;
    for i in order {
        let v = values[i].0.clone();
        let joins = prev.as_ref().is_some_and(|p| &v - p <= eps);
        if !joins {
            anchor = Some(v.clone());
        }
        if joins && values[i].1 {
            values[i].0 = anchor.clone().expect("set");
        }
        prev = Some(v);
    }
}

#[derive(Deserialize)]
struct RawPoint {
    params: Vec<Value>,
    t: Value,
    z: Vec<Value>,
}

/// A point `(t_1, …, t_{n-1}, t, z)` of `Σ^n|K|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SamplePoint {
    pub params: Vec<BigRational>,
    pub t: BigRational,
    pub z: Vec<BigRational>,
}

/// An array of `{"params": [..], "t": .., "z": [..]}`. The parameters and
/// `t`, together with the implicit trailing `0`, are tie-snapped as one
/// group; `z` is tie-snapped separately and must sum to 1 within `ε`, after
/// which it is rescaled to sum exactly to 1.
pub fn read_points(path: &Path) -> Result<Vec<SamplePoint>, CliError> {
    let raw: Vec<RawPoint> = serde_json::from_value(read_json(path)?)
        .map_err(|e| CliError::Malformed(format!("points: {e}")))?;
    raw.iter().map(convert_point).collect()
}

fn convert_point(p: &RawPoint) -> Result<SamplePoint, CliError> {
    let mut group: Vec<(BigRational, bool)> = p
        .params
        .iter()
        .chain([&p.t])
        .map(number)
        .collect::<Result<_, _>>()?;
    group.push((BigRational::zero(), false));
    snap_ties(&mut group);
    group.pop();
    let t = group.pop().expect("t present").0;
    let params = group.into_iter().map(|(v, _)| v).collect();

    let mut z: Vec<(BigRational, bool)> = p.z.iter().map(number).collect::<Result<_, _>>()?;
    snap_ties(&mut z);
    let z: Vec<BigRational> = z.into_iter().map(|(v, _)| v).collect();
    let sum: BigRational = z.iter().sum();
    let eps = BigRational::from_float(SNAP_EPSILON).expect("finite");
    if (&sum - BigRational::one()).abs() > eps || !sum.is_positive() {
        return Err(CliError::Malformed(format!(
            "barycentric coordinates sum to {sum}"
        )));
    }
    let z = z.into_iter().map(|v| v / &sum).collect();
    Ok(SamplePoint { params, t, z })
}
