//! Report assembly for each subcommand.

use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use zk_core::catalog;
use zk_core::field::Coefficients;
use zk_core::geometry::{
    h_eval, h_inv_eval, phi_eval, phi_membership, smash_membership, Barycentric, HPreimage,
    MembershipTarget,
};
use zk_core::golod::{self, GolodLabel};
use zk_core::hochster::{self, BigradedTable};
use zk_core::homology::HomologySummary;
use zk_core::koszul;
use zk_core::permutohedron;
use zk_core::sampling;
use zk_core::{with_field, SimplicialComplex};

use crate::cache::Cache;
use crate::input::{self, SamplePoint};
use crate::{
    Cli, CliError, Command, ComplexArgs, DEFAULT_CATALOG_N, DEFAULT_MAX_KN, DEFAULT_MAX_N,
};

pub const TOOL: &str = "zk-workbench";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComplexInfo {
    /// First 16 hex digits of the SHA-256 of the complex's JSON form.
    pub id: String,
    pub n: usize,
    pub facets: Vec<Vec<usize>>,
}

impl ComplexInfo {
    pub fn of(k: &SimplicialComplex) -> Self {
        let json = k.to_json();
        let bytes = serde_json::to_vec(&json).expect("serializable");
        let id = hex::encode(Sha256::digest(&bytes))[..16].to_string();
        ComplexInfo {
            id,
            n: json.n,
            facets: json.facets,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AnalysisReport {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub complex: Option<ComplexInfo>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub field: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub result: Value,
}

impl AnalysisReport {
    fn new(command: &'static str, result: Value) -> Self {
        AnalysisReport {
            tool: TOOL,
            version: VERSION,
            command,
            complex: None,
            field: None,
            seed: None,
            result,
        }
    }

    /// Pretty-printed JSON with a trailing newline.
    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub report: AnalysisReport,
    pub counterexample: bool,
}

impl Outcome {
    pub fn exit_code(&self, allow_counterexamples: bool) -> i32 {
        if self.counterexample && !allow_counterexamples {
            1
        } else {
            0
        }
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn coefficients(code: u64) -> Result<Coefficients, CliError> {
    Ok(Coefficients::from_code(code)?)
}

fn guard(n: usize, limit: usize, what: &str) -> Result<(), CliError> {
    if n > limit {
        return Err(CliError::SizeGuard(format!(
            "{what}: n = {n} exceeds the limit {limit} (see --max-n)"
        )));
    }
    Ok(())
}

fn load(args: &ComplexArgs, max_n: usize) -> Result<(SimplicialComplex, Coefficients), CliError> {
    let coeffs = coefficients(args.field)?;
    let k = input::read_complex(&args.complex)?;
    guard(k.n(), max_n, "complex")?;
    Ok((k, coeffs))
}

fn plain(command: &'static str, k: &SimplicialComplex, c: Coefficients, v: Value) -> Outcome {
    Outcome {
        report: with_complex(AnalysisReport::new(command, v), k, Some(c)),
        counterexample: false,
    }
}

fn with_complex(
    mut r: AnalysisReport,
    k: &SimplicialComplex,
    coeffs: Option<Coefficients>,
) -> AnalysisReport {
    r.complex = Some(ComplexInfo::of(k));
    r.field = coeffs.map(Coefficients::code);
    r
}

pub fn homology_json(h: &HomologySummary) -> Value {
    let groups: Vec<Value> = h
        .groups
        .iter()
        .map(|g| {
            json!({
                "degree": g.degree,
                "rank": g.rank,
                "torsion": g.torsion.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({
        "coefficients": h.coefficients.map(|c| c.code()),
        "groups": groups,
    })
}

fn table_json(t: &BigradedTable) -> Value {
    json!({
        "ghost_vertices": t.ghost_vertices,
        "entries": t.nonzero_entries(),
        "total_degree_dims": t.poincare_polynomial(),
    })
}

fn betti_value(k: &SimplicialComplex, coeffs: Coefficients) -> Value {
    with_field!(coeffs, |f| table_json(&hochster::bigraded_betti(k, &f)))
}

fn hochster_value(k: &SimplicialComplex, coeffs: Coefficients) -> Value {
    with_field!(coeffs, |f| {
        let ring = hochster::HochsterRing::new(k, &f);
        json!({
            "table": table_json(ring.table()),
            "products": to_value(&hochster::all_products_vanish_in(&ring)),
            "suspension_splitting": to_value(&hochster::bbcg_dimension_check(ring.table())),
        })
    })
}

fn products_value(k: &SimplicialComplex, coeffs: Coefficients) -> Value {
    with_field!(coeffs, |f| to_value(&hochster::all_products_vanish(k, &f)))
}

fn golod_value(k: &SimplicialComplex, coeffs: Coefficients) -> Result<Value, CliError> {
    let verdict = golod::classify_golod_over(k, coeffs)?;
    let table = with_field!(coeffs, |f| hochster::bigraded_betti(k, &f));
    let golod = verdict.label == GolodLabel::GolodUpToTripleMassey;
    let series = golod::golod_poincare_series(&table, golod);
    Ok(json!({
        "verdict": to_value(&verdict),
        "poincare_series": to_value(&series),
        "series_expansion": series.expand(12),
    }))
}

fn extractible_value(k: &SimplicialComplex, coeffs: Coefficients) -> Value {
    with_field!(coeffs, |f| to_value(&golod::extractible_necessary(k, &f)))
}

fn crosscheck_value(k: &SimplicialComplex, coeffs: Coefficients) -> Value {
    with_field!(coeffs, |f| {
        let cv = koszul::cross_validate(k, &f);
        json!({
            "agree": cv.agree(),
            "report": to_value(&cv),
        })
    })
}

fn q_str(q: &BigRational) -> String {
    q.to_string()
}

fn point_value(k: &SimplicialComplex, p: &SamplePoint) -> Result<(Value, bool), CliError> {
    let z = Barycentric::new(p.z.clone())?;
    if z.dim() != k.n() {
        return Err(CliError::Malformed(format!(
            "point has {} barycentric coordinates, complex has {} vertices",
            z.dim(),
            k.n()
        )));
    }
    let x = h_eval(&p.t, &z)?;
    let back = h_inv_eval(&x)?;
    let round_trip = if p.t == -BigRational::one() {
        back == HPreimage::Basepoint
    } else if p.t.is_one() {
        back == HPreimage::Apex
    } else {
        back == HPreimage::Point {
            t: p.t.clone(),
            z: z.clone(),
        }
    };
    let in_complex = k.contains(z.support());
    let mut ok = round_trip;
    let mut v = json!({
        "params": p.params.iter().map(q_str).collect::<Vec<_>>(),
        "t": q_str(&p.t),
        "z": p.z.iter().map(q_str).collect::<Vec<_>>(),
        "h": x.coords().map(|c| c.iter().map(q_str).collect::<Vec<_>>()),
        "h_round_trip": round_trip,
        "z_in_complex": in_complex,
    });
    if in_complex {
        let restricted = smash_membership(&x, &MembershipTarget::whole(k));
        let img = phi_eval(k, &p.params, &p.t, &z)?;
        let phi = phi_membership(k, &img);
        ok &= restricted && phi;
        v["h_face_restriction"] = json!(restricted);
        v["phi_membership"] = json!(phi);
    }
    Ok((v, !ok))
}

fn maps_value(k: &SimplicialComplex, samples: usize, seed: u64) -> Value {
    to_value(&sampling::verify_maps(k, samples, seed))
}

const CATALOG_CHECKS: [&str; 6] = [
    "betti",
    "crosscheck",
    "products",
    "golod",
    "extractible",
    "maps",
];

fn catalog_check(
    name: &str,
    k: &SimplicialComplex,
    coeffs: Coefficients,
    samples: usize,
    seed: u64,
) -> Result<Value, CliError> {
    Ok(match name {
        "betti" => betti_value(k, coeffs),
        "crosscheck" => crosscheck_value(k, coeffs),
        "products" => products_value(k, coeffs),
        "golod" if k.has_ghost_vertices() => json!({ "skipped": "ghost vertices" }),
        "golod" => golod_value(k, coeffs)?,
        "extractible" => extractible_value(k, coeffs),
        "maps" => maps_value(k, samples, seed),
        _ => unreachable!("unknown check {name}"),
    })
}

fn catalog_entry(
    k: &SimplicialComplex,
    coeffs: Coefficients,
    samples: usize,
    seed: u64,
    cache: Option<&Cache>,
) -> Result<(Value, bool), CliError> {
    let canonical = catalog::canonical_form(k)?;
    let k = catalog::from_face_bits(k.n(), canonical);
    let mut checks = serde_json::Map::new();
    for name in CATALOG_CHECKS {
        let compute = || catalog_check(name, &k, coeffs, samples, seed);
        let v = match cache {
            Some(c) => {
                let key = Cache::key(&[
                    VERSION,
                    name,
                    &coeffs.code().to_string(),
                    &format!("{samples}:{seed}"),
                    &format!("{}:{canonical}", k.n()),
                ]);
                c.get_or_insert_with(&key, compute)?
            }
            None => compute()?,
        };
        checks.insert(name.to_string(), v);
    }
    let failed =
        checks["crosscheck"]["agree"] == json!(false) || checks["maps"]["passed"] == json!(false);
    let entry = json!({
        "complex": to_value(&ComplexInfo::of(&k)),
        "checks": Value::Object(checks),
    });
    Ok((entry, failed))
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let max_n = cli.max_n.unwrap_or(DEFAULT_MAX_N);
    Ok(match &cli.command {
        Command::Betti(a) => {
            let (k, c) = load(a, max_n)?;
            plain("betti", &k, c, betti_value(&k, c))
        }
        Command::Hochster(a) => {
            let (k, c) = load(a, max_n)?;
            plain("hochster", &k, c, hochster_value(&k, c))
        }
        Command::Products(a) => {
            let (k, c) = load(a, max_n)?;
            plain("products", &k, c, products_value(&k, c))
        }
        Command::Golod(a) => {
            let (k, c) = load(a, max_n)?;
            plain("golod", &k, c, golod_value(&k, c)?)
        }
        Command::Extractible(a) => {
            let (k, c) = load(a, max_n)?;
            plain("extractible", &k, c, extractible_value(&k, c))
        }
        Command::Crosscheck(a) => {
            let (k, c) = load(a, max_n)?;
            let v = crosscheck_value(&k, c);
            let counterexample = v["agree"] == json!(false);
            Outcome {
                report: with_complex(AnalysisReport::new("crosscheck", v), &k, Some(c)),
                counterexample,
            }
        }
        Command::Kn { n, verify_sphere } => {
            guard(*n, cli.max_n.unwrap_or(DEFAULT_MAX_KN), "K_n")?;
            let kn = permutohedron::build_kn(*n)?;
            let mut v = json!({
                "n": n,
                "face_counts": kn.face_counts(),
            });
            let mut counterexample = false;
            if *verify_sphere {
                let r = permutohedron::verify_sphere(*n)?;
                counterexample = !r.is_sphere;
                v["sphere"] = json!({
                    "top_faces": r.top_faces,
                    "pseudomanifold": r.pseudomanifold,
                    "flattened_faces_match": r.flattened_faces_match,
                    "homology": homology_json(&r.homology),
                    "is_sphere": r.is_sphere,
                });
            }
            Outcome {
                report: AnalysisReport::new("kn", v),
                counterexample,
            }
        }
        Command::VerifyMaps {
            complex,
            samples,
            seed,
            points,
        } => {
            let k = input::read_complex(complex)?;
            guard(k.n(), max_n, "complex")?;
            let report = sampling::verify_maps(&k, *samples, *seed);
            let mut counterexample = !report.passed;
            let mut v = to_value(&report);
            if let Some(path) = points {
                let mut evaluated = Vec::new();
                for p in input::read_points(path)? {
                    let (pv, bad) = point_value(&k, &p)?;
                    counterexample |= bad;
                    evaluated.push(pv);
                }
                v["points"] = Value::Array(evaluated);
            }
            let mut r = with_complex(AnalysisReport::new("verify-maps", v), &k, None);
            r.seed = Some(*seed);
            Outcome {
                report: r,
                counterexample,
            }
        }
        Command::Catalog {
            complex,
            field,
            samples,
            seed,
            cache,
        } => {
            let coeffs = coefficients(*field)?;
            let complexes = match complex {
                Some(path) => {
                    let ks = input::read_complexes(path)?;
                    for k in &ks {
                        guard(
                            k.n(),
                            cli.max_n.unwrap_or(catalog::MAX_CATALOG_N),
                            "catalog complex",
                        )?;
                    }
                    ks
                }
                None => {
                    let top = cli.max_n.unwrap_or(DEFAULT_CATALOG_N);
                    guard(top, DEFAULT_CATALOG_N, "catalog enumeration")?;
                    let mut all = Vec::new();
                    for n in 1..=top {
                        all.extend(catalog::complexes_up_to_iso(n)?);
                    }
                    all
                }
            };
            let cache = cache.as_deref().map(Cache::open).transpose()?;
            let entries: Vec<(Value, bool)> = complexes
                .par_iter()
                .map(|k| catalog_entry(k, coeffs, *samples, *seed, cache.as_ref()))
                .collect::<Result<_, _>>()?;
            let failures = entries.iter().filter(|(_, bad)| *bad).count();
            let v = json!({
                "complexes": entries.len(),
                "samples": samples,
                "failures": failures,
                "entries": entries.into_iter().map(|(e, _)| e).collect::<Vec<_>>(),
            });
            let mut r = AnalysisReport::new("catalog", v);
            r.field = Some(coeffs.code());
            r.seed = Some(*seed);
            Outcome {
                report: r,
                counterexample: failures > 0,
            }
        }
    })
}

/// Runs the command, writes the report and returns the process exit code.
/// Diagnostics go to standard error.
pub fn execute(cli: &Cli) -> i32 {
    let outcome = match run(cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return e.exit_code();
        }
    };
    let text = outcome.report.render();
    match &cli.out {
        Some(path) => {
            if let Err(e) = write_atomic(path, &text) {
                eprintln!("error: {e}");
                return e.exit_code();
            }
        }
        None => print!("{text}"),
    }
    outcome.exit_code(cli.allow_counterexamples)
}

fn write_atomic(path: &std::path::Path, text: &str) -> Result<(), CliError> {
    let io = |e: std::io::Error| CliError::Io(format!("{}: {e}", path.display()));
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    std::fs::write(&tmp, text).map_err(io)?;
    std::fs::rename(&tmp, path).map_err(io)
}
