use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use zk_core::field::PrimeField;
use zk_core::hochster::{cup_product, HochsterRing};
use zk_core::{SimplicialComplex, VertexSubset};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
}

fn workbench(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zk-workbench"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("report is JSON")
}

fn path_str(p: &PathBuf) -> &str {
    p.to_str().unwrap()
}

#[test]
fn golod_verdict_for_pole_edge_sphere() {
    let f = data("pole_edge_sphere.json");
    let out = workbench(&["golod", "--complex", path_str(&f), "--field", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json_of(&out);
    assert_eq!(r["command"], "golod");
    assert_eq!(r["field"], 2);
    assert_eq!(r["result"]["verdict"]["label"], "Golod-up-to-triple-Massey");
    assert_eq!(r["result"]["poincare_series"]["bound_only"], false);
}

#[test]
fn kn_sphere_and_guard() {
    let out = workbench(&["kn", "--n", "4", "--verify-sphere"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json_of(&out);
    assert_eq!(r["result"]["sphere"]["is_sphere"], true);
    assert_eq!(r["result"]["face_counts"], serde_json::json!([14, 36, 24]));
    assert_eq!(workbench(&["kn", "--n", "8"]).status.code(), Some(3));
    assert_eq!(
        workbench(&["kn", "--n", "5", "--max-n", "4"]).status.code(),
        Some(3)
    );
}

#[test]
fn betti_of_simplex_is_trivial() {
    let f = data("simplex3.json");
    let out = workbench(&["betti", "--complex", path_str(&f)]);
    assert_eq!(out.status.code(), Some(0));
    let r = json_of(&out);
    // only the empty subset contributes, in total degree 0
    assert_eq!(r["result"]["total_degree_dims"], serde_json::json!([1]));
    assert_eq!(r["result"]["entries"].as_array().unwrap().len(), 1);
}

#[test]
fn malformed_inputs_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ \"n\": 3, \"facets\": [[1, 2,").unwrap();
    let out = workbench(&["betti", "--complex", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("malformed"));

    std::fs::write(&bad, "{ \"n\": 3, \"facets\": [[1, 4]] }").unwrap();
    assert_eq!(
        workbench(&["betti", "--complex", bad.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
    let f = data("square.json");
    assert_eq!(
        workbench(&["betti", "--complex", path_str(&f), "--field", "4"])
            .status
            .code(),
        Some(2)
    );
    let missing = dir.path().join("missing.json");
    assert_eq!(
        workbench(&["golod", "--complex", missing.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn size_guard_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let big = dir.path().join("points13.json");
    let facets: Vec<Vec<usize>> = (1..=13).map(|i| vec![i]).collect();
    std::fs::write(
        &big,
        serde_json::json!({ "n": 13, "facets": facets }).to_string(),
    )
    .unwrap();
    let p = big.to_str().unwrap();
    assert_eq!(
        workbench(&["products", "--complex", p]).status.code(),
        Some(3)
    );
    assert_eq!(
        workbench(&["catalog", "--max-n", "6"]).status.code(),
        Some(3)
    );
    let out = workbench(&["betti", "--complex", p, "--max-n", "13"]);
    assert_eq!(out.status.code(), Some(0));
    // 13 points: H̃^0(K_I) has dimension |I| - 1
    let dims = json_of(&out)["result"]["total_degree_dims"].clone();
    assert_eq!(dims[2], 0);
    assert_eq!(dims[3], 78);
}

#[test]
fn reports_are_byte_stable() {
    let f = data("pole_edge_sphere.json");
    let args = [
        "verify-maps",
        "--complex",
        path_str(&f),
        "--samples",
        "600",
        "--seed",
        "5",
    ];
    let a = workbench(&args);
    let b = workbench(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let mut with_out = args.to_vec();
    with_out.extend(["--out", out.to_str().unwrap()]);
    let c = workbench(&with_out);
    assert!(c.stdout.is_empty());
    assert_eq!(std::fs::read(&out).unwrap(), a.stdout);
    let r = json_of(&a);
    assert_eq!(r["seed"], 5);
    assert_eq!(r["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(r["result"]["passed"], true);
}

#[test]
fn explicit_points_with_float_input() {
    let f = data("square.json");
    let p = data("square_points.json");
    let out = workbench(&[
        "verify-maps",
        "--complex",
        path_str(&f),
        "--samples",
        "10",
        "--points",
        path_str(&p),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = json_of(&out);
    let pts = r["result"]["points"].as_array().unwrap();
    assert_eq!(pts.len(), 2);
    // 0.25 and 0.2500000000001 are within ε and snap to one value
    assert_eq!(pts[1]["params"], serde_json::json!(["1/4", "1/4", "-1/2"]));
    assert_eq!(pts[1]["z"], serde_json::json!(["3/10", "7/10", "0", "0"]));
    for p in pts {
        assert_eq!(p["h_round_trip"], true);
        assert_eq!(p["phi_membership"], true);
    }
}

#[test]
fn product_witness_reverifies() {
    let f = data("square.json");
    let out = workbench(&["products", "--complex", path_str(&f), "--field", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json_of(&out)["result"].clone();
    assert_eq!(r["all_vanish"], false);
    let w = &r["witness"];
    let set = |v: &Value| {
        VertexSubset::of(
            &v.as_array()
                .unwrap()
                .iter()
                .map(|x| x.as_u64().unwrap() as usize)
                .collect::<Vec<_>>(),
        )
    };
    let k =
        SimplicialComplex::from_facet_lists(4, &[vec![1, 2], vec![2, 3], vec![3, 4], vec![1, 4]])
            .unwrap();
    let ring = HochsterRing::new(&k, &PrimeField::new(3).unwrap());
    let a = &ring.classes(set(&w["left"]), w["left_degree"].as_i64().unwrap() as isize)
        [w["left_index"].as_u64().unwrap() as usize];
    let b = &ring.classes(
        set(&w["right"]),
        w["right_degree"].as_i64().unwrap() as isize,
    )[w["right_index"].as_u64().unwrap() as usize];
    let prod = cup_product(&k, a, b).unwrap();
    assert!(!ring.is_zero_class(&prod.class));
}

#[test]
fn crosscheck_agrees_on_square() {
    let f = data("square.json");
    let out = workbench(&["crosscheck", "--complex", path_str(&f), "--field", "0"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["result"]["agree"], true);
}

#[test]
fn extractible_fails_for_pole_edge_sphere() {
    let f = data("pole_edge_sphere.json");
    let out = workbench(&["extractible", "--complex", path_str(&f), "--field", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json_of(&out)["result"].clone();
    assert_eq!(r["necessary_condition_holds"], false);
    assert_eq!(r["witness_degree"], 2);
}

#[test]
fn hochster_report_has_products_and_splitting() {
    let f = data("square.json");
    let out = workbench(&["hochster", "--complex", path_str(&f)]);
    assert_eq!(out.status.code(), Some(0));
    let r = json_of(&out)["result"].clone();
    assert_eq!(
        r["table"]["total_degree_dims"],
        serde_json::json!([1, 0, 0, 2, 0, 0, 1])
    );
    assert_eq!(r["suspension_splitting"]["holds"], true);
}

#[test]
fn catalog_with_cache_is_stable() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let args = [
        "catalog",
        "--max-n",
        "3",
        "--samples",
        "50",
        "--seed",
        "9",
        "--cache",
        cache.to_str().unwrap(),
    ];
    let cold = workbench(&args);
    assert_eq!(
        cold.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&cold.stderr)
    );
    assert!(std::fs::read_dir(&cache).unwrap().count() > 0);
    let warm = workbench(&args);
    assert_eq!(cold.stdout, warm.stdout);
    let uncached = workbench(&args[..7]);
    assert_eq!(cold.stdout, uncached.stdout);
    let r = json_of(&cold);
    // 2 + 4 + 9 complexes on at most 3 vertices
    assert_eq!(r["result"]["complexes"], 15);
    assert_eq!(r["result"]["failures"], 0);
}

#[test]
fn counterexamples_map_to_exit_1() {
    use zk_workbench::{AnalysisReport, Outcome};
    let o = Outcome {
        report: AnalysisReport {
            tool: "zk-workbench",
            version: env!("CARGO_PKG_VERSION"),
            command: "verify-maps",
            complex: None,
            field: None,
            seed: Some(0),
            result: Value::Null,
        },
        counterexample: true,
    };
    assert_eq!(o.exit_code(false), 1);
    assert_eq!(o.exit_code(true), 0);
}
