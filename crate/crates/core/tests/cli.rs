use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

fn run(args: &[&str], file: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_toric-arith"));
    cmd.args(args);
    if let Some(f) = file {
        cmd.arg(data(f));
    }
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn field<'a>(text: &'a str, key: &str) -> Option<&'a str> {
    text.lines()
        .find_map(|l| l.strip_prefix(key)?.strip_prefix(" = "))
}

#[test]
fn height_of_the_cubic() {
    let o = run(&["height"], Some("cubic_curve.toml"));
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert_eq!(field(&s, "height"), Some("2*log(2) + 2*log(3)"));
    assert_eq!(field(&s, "degree"), Some("3"));
    assert_eq!(field(&s, "chow_weight.2"), Some("-2*log(2)"));
    assert!(field(&s, "height.decimal")
        .unwrap()
        .starts_with("3.5835189384561100016"));
}

#[test]
fn json_report() {
    let o = run(
        &["height", "--json", "--digits", "6"],
        Some("cubic_curve.toml"),
    );
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["height"]["exact"], "2*log(2) + 2*log(3)");
    assert_eq!(v["height"]["decimal"], "3.583519 (±1e-6)");
    assert_eq!(v["height"]["error_bound"], "1e-6");
    assert_eq!(v["degree"], "3");
}

#[test]
fn binomial_surface_kernel_and_ideal() {
    let s = stdout(&run(&["kernel"], Some("binomial_surface.toml")));
    assert_eq!(field(&s, "kernel.0"), Some("(2, -3, 2, -1)"));
    let s = stdout(&run(&["ideal"], Some("binomial_surface.json")));
    assert_eq!(field(&s, "generator.0"), Some("x0^2*x2^2 - 9*x1^3*x3"));
    let s = stdout(&run(&["obstruction"], Some("binomial_surface.toml")));
    assert_eq!(field(&s, "omega.1"), Some("4"));
    let s = stdout(&run(&["sandwich"], Some("binomial_surface.toml")));
    assert_eq!(field(&s, "verified"), Some("true"));
    let s = stdout(&run(&["pluecker"], Some("binomial_surface.toml")));
    assert_eq!(field(&s, "segre_degree"), Some("12"));
    assert_eq!(field(&s, "gcd"), Some("1"));
}

#[test]
fn ideal_round_trip_keeps_the_height() {
    let a = stdout(&run(&["height"], Some("binomial_surface.toml")));
    let b = stdout(&run(&["from-ideal"], Some("binomial_ideal.toml")));
    assert_eq!(field(&b, "degree"), Some("4"));
    assert_eq!(field(&a, "height"), field(&b, "height"));
}

#[test]
fn bezout_reports() {
    for cmd in ["bezout-chow", "bezout-height", "bezout-degree"] {
        let o = run(&[cmd], Some("square_divisor.toml"));
        assert_eq!(o.status.code(), Some(0), "{cmd}");
        assert_eq!(field(&stdout(&o), "verified"), Some("true"), "{cmd}");
    }
    let s = stdout(&run(&["bezout-chow"], Some("square_divisor.toml")));
    assert_eq!(field(&s, "lhs"), field(&s, "rhs"));
}

#[test]
fn small_commands() {
    let s = stdout(&run(
        &["chow-weight-hypersurface"],
        Some("conic_weight.toml"),
    ));
    assert_eq!(field(&s, "chow_weight"), Some("6"));
    let s = stdout(&run(&["multiheight"], Some("segments.toml")));
    assert_eq!(field(&s, "multiheight"), Some("log(3)"));
    let s = stdout(&run(&["minima"], Some("hypersurface_minima.toml")));
    assert_eq!(
        field(&s, "essential_minimum"),
        Some("1/2*log(2) + 1/2*log(3)")
    );
    let s = stdout(&run(&["zhang-family"], Some("family.toml")));
    assert_eq!(field(&s, "d"), Some("5"));
    assert_eq!(field(&s, "degree"), Some("5"));
    assert_eq!(field(&s, "predicted_minimum.2"), Some("2/5*log(2)"));
}

#[test]
fn stdin_input() {
    use std::io::Write;
    use std::process::Stdio;
    let mut child = Command::new(env!("CARGO_BIN_EXE_toric-arith"))
        .arg("point-height")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(br#"{"coefficients": [1, 2]}"#)
        .unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(field(&stdout(&o), "point_height"), Some("log(2)"));
}

#[test]
fn cells_are_written() {
    let path = std::env::temp_dir().join(format!("toric-cells-{}.csv", std::process::id()));
    let o = run(
        &["chow-weight", "--cells", path.to_str().unwrap()],
        Some("square_divisor.toml"),
    );
    assert_eq!(o.status.code(), Some(0));
    let csv = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    assert!(csv.starts_with("cell,point,x1,x2,lift\n"));
    assert_eq!(csv.lines().count(), 7);
}

#[test]
fn error_exit_codes() {
    let o = run(&["ess-min"], Some("segment_point.toml"));
    assert_eq!(o.status.code(), Some(3));
    let s = stdout(&o);
    assert_eq!(field(&s, "reason"), Some("hypothesis-not-satisfied"));
    assert_eq!(field(&s, "status"), Some("error"));

    let o = run(&["degree"], Some("unknown_field.toml"));
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(field(&stdout(&o), "reason"), Some("input-invalid"));

    let o = run(&["no-such-command"], None);
    assert_eq!(o.status.code(), Some(2));
}
