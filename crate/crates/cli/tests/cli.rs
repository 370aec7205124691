use std::path::PathBuf;
use std::process::{Command, Output};

fn hqdisk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hqdisk")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = hqdisk(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hqdisk-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn csv_headers() {
    let cases: [(&[&str], &str); 4] = [
        (&["incompleteness", "--nmax", "1"], "n,lift_dist,sup_dist,K_max,verdict"),
        (&["example3"], "r,theta,re,im,mu_abs,K"),
        (
            &["convexity", "--trials", "2", "--nodes", "256", "--rmax", "0.5"],
            "trial,phi1,phi2,lambda,verdict,l_upper,l_upper_bound,interior_dist,lift_dist",
        ),
        (&["hilbert-demo", "--nodes", "2048"], "section,key,value,reference,error"),
    ];
    for (args, header) in cases {
        assert_eq!(stdout(args).lines().next(), Some(header), "{args:?}");
    }
}

#[test]
fn seeded_runs_are_byte_identical() {
    for args in [
        &["convexity", "--trials", "3", "--nodes", "256", "--rmax", "0.5", "--format", "json"][..],
        &["incompleteness", "--nmax", "2", "--format", "json"][..],
        &["render", "--lift", "phi_n:3"][..],
    ] {
        assert_eq!(stdout(args), stdout(args), "{args:?}");
    }
}

#[test]
fn seed_changes_convexity_trials() {
    let a = stdout(&["convexity", "--trials", "3", "--nodes", "256", "--rmax", "0.5", "--seed", "1"]);
    let b = stdout(&["convexity", "--trials", "3", "--nodes", "256", "--rmax", "0.5", "--seed", "2"]);
    assert_ne!(a, b);
}

#[test]
fn json_report_shape() {
    let text = stdout(&["incompleteness", "--nmax", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["experiment"], "incompleteness");
    assert_eq!(v["records"].as_array().unwrap().len(), 3);
    assert_eq!(v["parameters"]["nodes"], 4096);
    let checks = v["checks"].as_array().unwrap();
    assert!(checks.iter().any(|c| c["name"] == "sup_dist_bound" && c["passed"] == true));
}

#[test]
fn svg_written_to_out() {
    let path = scratch("identity.svg");
    let out = hqdisk(&["render", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let svg = std::fs::read_to_string(&path).unwrap();
    assert!(svg.starts_with("<svg") || svg.starts_with("<?xml"));
    assert!(svg.contains("<g id=\"image\""));
    assert!(svg.matches("<polyline").count() > 50);
    let stderr = String::from_utf8(out.stderr).unwrap();
    let line = stderr.lines().find(|l| l.contains("range_confinement")).unwrap();
    assert_eq!(line.split_whitespace().take(3).collect::<Vec<_>>(), ["[assert]", "range_confinement", "ok"]);
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        &["render", "--lift", "bogus"][..],
        &["example3", "--format", "svg"][..],
        &["render", "--format", "csv"][..],
        &["incompleteness", "--rmax", "1.5"][..],
        &["frobnicate"][..],
    ] {
        assert_eq!(hqdisk(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn unwritable_output_is_an_error() {
    let path = scratch("missing-dir").join("nested").join("x.csv");
    let out = hqdisk(&["hilbert-demo", "--nodes", "1024", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("x.csv"));
}
