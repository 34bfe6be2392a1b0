use std::process::{Command, Output};

use serde_json::Value;

fn booth(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_booth")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json output")
}

fn csv_rows(text: &str) -> Vec<[f64; 3]> {
    text.lines()
        .skip(1)
        .map(|l| {
            let v: Vec<f64> = l.split(',').map(|x| x.parse().unwrap()).collect();
            [v[0], v[1], v[2]]
        })
        .collect()
}

#[test]
fn boundary_csv_for_half() {
    let o = booth(&["boundary", "--alpha", "0.5", "--samples", "720", "--format", "csv"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("phi,x,y\n"));
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 720);
    let xmax = rows.iter().map(|r| r[1]).fold(f64::MIN, f64::max);
    let ymax = rows.iter().map(|r| r[2]).fold(f64::MIN, f64::max);
    assert!((xmax - 2.0).abs() < 1e-9);
    // The y-intercept is 2/3, but the curve is pinched there: the vertical
    // extent is 3/(2√2), reached at sin φ = 1/(2√2).
    assert!((rows[180][2] - 2.0 / 3.0).abs() < 1e-9);
    assert!(ymax > 1.06 && ymax <= 3.0 / (2.0 * 2f64.sqrt()) + 1e-12);
}

#[test]
fn boundary_at_zero_is_unit_circle() {
    let o = booth(&["boundary", "--alpha", "0", "--samples", "64"]);
    for r in csv_rows(&stdout(&o)) {
        assert!((r[1].hypot(r[2]) - 1.0).abs() < 1e-15);
    }
}

#[test]
fn boundary_svg_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("d.svg");
    let o = booth(&["boundary", "--alpha", "0.3", "--format", "svg", "--output", path.to_str().unwrap()]);
    assert!(o.status.success());
    let svg = std::fs::read_to_string(path).unwrap();
    assert_eq!(svg.matches("<path").count(), 1);
    assert!(svg.contains("Z\""));
    assert!(svg.contains("viewBox"));
}

#[test]
fn membership_verdicts_and_exit_codes() {
    let o = booth(&["membership", "--alpha", "0.5", "--input", "f0"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["version"], 1);
    assert_eq!(v["verdict"], "certified_empirically");
    assert_eq!(v["grid"]["angular"], 4096);

    let o = booth(&["membership", "--alpha", "0.5", "--input", "koebe"]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    assert_eq!(v["verdict"], "rejected");
    let (zr, zi) = (v["worst_point"]["z_re"].as_f64().unwrap(), v["worst_point"]["z_im"].as_f64().unwrap());
    assert!((zr.hypot(zi) - 0.999).abs() < 1e-12);

    assert_eq!(booth(&["membership", "--alpha", "1.0", "--input", "f0"]).status.code(), Some(2));
    assert_eq!(booth(&["membership", "--alpha", "0.5", "--input", "f0", "--radii", "0.5,1.2"]).status.code(), Some(2));
    assert_eq!(booth(&["membership", "--alpha", "0.5", "--input", "f0", "--order", "129"]).status.code(), Some(2));
    assert_eq!(booth(&["membership", "--alpha", "0.5"]).status.code(), Some(2));
}

#[test]
fn membership_blaschke_input() {
    let o = booth(&["membership", "--alpha", "0.3", "--input", "blaschke:0.8,0.1;0.2,0.3", "--radii", "0.5,0.9"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(booth(&["membership", "--alpha", "0.3", "--input", "blaschke:1.5,0"]).status.code(), Some(2));
}

#[test]
fn coefficient_table_and_file_round_trip() {
    let o = booth(&["coeffs", "--alpha", "0.3", "--input", "f0", "--n", "8"]);
    let rows: Vec<Vec<f64>> = stdout(&o)
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 9);
    assert!((rows[2][1] - 1.0).abs() < 1e-15);
    assert!((rows[3][1] - 0.5).abs() < 1e-15);
    assert!((rows[4][1] - (1.0 / 6.0 + 0.1)).abs() < 1e-15);

    let o = booth(&["coeffs", "--alpha", "0.3", "--input", "f0", "--n", "1"]);
    assert_eq!(stdout(&o).lines().nth(2), Some("1,1.0000000000000000e0,0.0000000000000000e0"));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f0.series");
    let o = booth(&["coeffs", "--alpha", "0.3", "--input", "f0", "--n", "12", "--format", "json", "--output", path.to_str().unwrap()]);
    assert!(o.status.success());
    let p = path.to_str().unwrap();
    let echo = booth(&["coeffs", "--alpha", "0.3", "--input", p, "--format", "json"]);
    assert_eq!(stdout(&echo), std::fs::read_to_string(&path).unwrap());
    let m = booth(&["membership", "--alpha", "0.3", "--input", p]);
    assert_eq!(json(&m)["order"], 12);

    std::fs::write(&path, "not a series").unwrap();
    assert_eq!(booth(&["coeffs", "--alpha", "0.3", "--input", p]).status.code(), Some(2));
    assert_eq!(booth(&["coeffs", "--alpha", "0.3", "--input", "/nonexistent/x"]).status.code(), Some(2));
}

#[test]
fn classical_curves() {
    let o = booth(&["curves", "bernoulli", "--a", "1", "--samples", "2000"]);
    assert!(o.status.success());
    let rows = csv_rows(&stdout(&o));
    let xmax = rows.iter().map(|r| r[1]).fold(f64::MIN, f64::max);
    assert!((xmax - 2f64.sqrt()).abs() < 1e-9);

    let cassini = csv_rows(&stdout(&booth(&["curves", "cassini", "--a", "1", "--c", "1", "--samples", "2000"])));
    assert_eq!(cassini.len(), rows.len());
    for (a, b) in cassini.iter().zip(&rows) {
        assert!((a[1] - b[1]).abs() < 1e-12 && (a[2] - b[2]).abs() < 1e-12);
    }

    let o = booth(&["curves", "cassini", "--a", "0.8", "--c", "1", "--format", "json"]);
    let v = json(&o);
    assert_eq!(v["components"], 2);
    assert_eq!(v["loops"].as_array().unwrap().len(), 2);
    assert_eq!(v["curve"]["kind"], "cassini");

    let svg = stdout(&booth(&["curves", "persian", "--r", "2", "--d", "1", "--p", "0.5", "--format", "svg"]));
    assert_eq!(svg.matches("<path").count(), 2);
    assert_eq!(booth(&["curves", "persian", "--r", "1", "--d", "1", "--p", "5"]).status.code(), Some(2));
}

#[test]
fn verify_is_reproducible_and_passes() {
    let args = ["verify", "--suite", "all", "--alpha", "0.15", "--seed", "42", "--trials", "100"];
    let a = booth(&args);
    let b = booth(&args);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["pass"], true);
    let names: Vec<&str> = v["reports"].as_array().unwrap().iter().map(|r| r["name"].as_str().unwrap()).collect();
    assert_eq!(
        names,
        ["coefficient_bound", "fekete_szego", "inverse_coefficients", "rogosinski", "keogh_merkes", "growth", "log_subordination"]
    );
}

#[test]
fn verify_requires_seed() {
    assert_eq!(booth(&["verify", "--suite", "coeff", "--alpha", "0.5"]).status.code(), Some(2));
}

#[test]
fn verify_coeff_outside_theorem_range_is_labelled() {
    let v = json(&booth(&["verify", "--suite", "coeff", "--alpha", "0.5", "--seed", "1", "--trials", "50"]));
    assert_eq!(v["reports"][0]["in_theorem_range"], false);
}

#[test]
fn verify_fekete_at_mu_two_has_sharp_witness() {
    let v = json(&booth(&["verify", "--suite", "fekete", "--alpha", "0.2", "--seed", "5", "--mu", "2", "--trials", "200"]));
    let r = &v["reports"][0];
    assert_eq!(r["max_ratio"], 1.0);
    assert_eq!(r["witness"]["label"], "f0");
}

#[test]
fn verify_kth_bound_choice() {
    let base = ["verify", "--suite", "kth", "--alpha", "0.2", "--seed", "5", "--trials", "50"];
    assert_eq!(booth(&base).status.code(), Some(1));
    let mut derived = base.to_vec();
    derived.extend(["--kth-bound", "derived"]);
    assert_eq!(booth(&derived).status.code(), Some(0));
    let mut negative_mu = base.to_vec();
    negative_mu.extend(["--mu", "-1", "--max-k", "2"]);
    let v = json(&booth(&negative_mu));
    assert!((v["reports"][0]["max_ratio"].as_f64().unwrap() - 1.5).abs() < 1e-12);
}

#[test]
fn growth_envelope() {
    let o = booth(&["growth", "--alpha", "0.3", "--radius", "0.9", "--input", "f0", "--samples", "512"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let (lo, hi) = (v["envelope"]["min"].as_f64().unwrap(), v["envelope"]["max"].as_f64().unwrap());
    assert!(lo < 1.0 && hi > 1.0);
    assert_eq!(v["check"]["pass"], true);
    let o = booth(&["growth", "--alpha", "0.3", "--radius", "0.9", "--input", "koebe", "--samples", "512"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn unknown_flags_are_usage_errors() {
    assert_eq!(booth(&["boundary", "--alpha", "0.5", "-a"]).status.code(), Some(2));
    assert_eq!(booth(&["nonsense"]).status.code(), Some(2));
}
