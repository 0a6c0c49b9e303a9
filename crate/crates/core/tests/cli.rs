use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const AFFINE_POSITIVE: &str = "\
# affine forcing
mode = i
kernel = 1
forcing = (1+t)*(r+1, r-2)
x0 = 0
sign_x = positive
";

const CONSTANT_NEGATIVE: &str = "\
mode = ii
kernel = 1
forcing = (r-1, 1-r)
x0 = 0
sign_x = negative
";

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path
}

fn fcvide(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fcvide"))
        .args(args)
        .output()
        .unwrap()
}

fn solve(path: &Path, extra: &[&str]) -> Output {
    let mut args = vec!["solve", path.to_str().unwrap()];
    args.extend_from_slice(extra);
    fcvide(&args)
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn prints_closed_forms() {
    let dir = TempDir::new().unwrap();
    let out = solve(&write(&dir, "a.fcv", AFFINE_POSITIVE), &[]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(
        text.contains("x_lower(t,r) = (1 + r)*(exp(t) - 1)"),
        "{text}"
    );
    assert!(
        text.contains("x_upper(t,r) = (-2 + r)*(exp(t) - 1)"),
        "{text}"
    );
    assert!(text.contains("oracle (steps = 1024"), "{text}");
    // the data are not a valid fuzzy number, which is reported but not fatal
    assert!(text.contains("WARN stacking"), "{text}");

    let out = solve(&write(&dir, "b.fcv", CONSTANT_NEGATIVE), &["--no-oracle"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("x_lower(t,r) = (1 - r)*sinh(t)"), "{text}");
    assert!(!text.contains("oracle"), "{text}");
}

#[test]
fn csv_envelope() {
    let dir = TempDir::new().unwrap();
    let csv = dir.path().join("x.csv");
    let problem = write(&dir, "a.fcv", AFFINE_POSITIVE);
    let out = solve(
        &problem,
        &[
            "--csv",
            csv.to_str().unwrap(),
            "--steps",
            "32",
            "--r-points",
            "5",
            "--no-oracle",
        ],
    );
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let bytes = fs::read(&csv).unwrap();
    assert!(!bytes.contains(&b'\r'));
    let text = String::from_utf8(bytes).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t,r,lower,upper"));
    let rows: Vec<Vec<f64>> = lines
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 33 * 5);
    assert!(rows.iter().flatten().all(|v| v.is_finite()));
    let last = rows.last().unwrap();
    assert_eq!((last[0], last[1]), (1.0, 1.0));
    let e1 = 1f64.exp() - 1.0;
    assert!((last[2] - 2.0 * e1).abs() < 1e-13);
    assert!((last[3] + e1).abs() < 1e-13);
    let digits = text.lines().nth(2).unwrap().split(',').nth(2).unwrap();
    let significant = digits
        .split('e')
        .next()
        .unwrap()
        .chars()
        .filter(char::is_ascii_digit)
        .count();
    assert!(significant >= 12, "{digits}");
}

#[test]
fn csv_path_from_file() {
    let dir = TempDir::new().unwrap();
    let csv = dir.path().join("y.csv");
    let text = format!(
        "{AFFINE_POSITIVE}csv_out = {}\nsteps = 16\noracle = off\n",
        csv.display()
    );
    let out = solve(&write(&dir, "a.fcv", &text), &[]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert_eq!(
        fs::read_to_string(&csv).unwrap().lines().count(),
        1 + 17 * 3
    );
}

#[test]
fn parse_failures_exit_3() {
    let dir = TempDir::new().unwrap();
    let bad_key = write(&dir, "k.fcv", &format!("{AFFINE_POSITIVE}colour = red\n"));
    let out = solve(&bad_key, &[]);
    assert_eq!(out.status.code(), Some(3));
    assert!(
        stderr(&out).contains("line 7, column 1: unknown key `colour`"),
        "{}",
        stderr(&out)
    );

    let bad_expr = write(
        &dir,
        "e.fcv",
        &AFFINE_POSITIVE.replace("kernel = 1", "kernel = exp(t"),
    );
    let out = solve(&bad_expr, &[]);
    assert_eq!(out.status.code(), Some(3));
    assert!(
        stderr(&out).contains("line 3, column 15"),
        "{}",
        stderr(&out)
    );

    let non_affine = write(
        &dir,
        "n.fcv",
        &AFFINE_POSITIVE.replace("(r+1, r-2)", "(r*r, 1)"),
    );
    assert_eq!(solve(&non_affine, &[]).status.code(), Some(3));

    let missing = dir.path().join("missing.fcv");
    assert_eq!(solve(&missing, &[]).status.code(), Some(3));

    let good = write(&dir, "g.fcv", AFFINE_POSITIVE);
    assert_eq!(solve(&good, &["--steps", "4"]).status.code(), Some(3));
    assert_eq!(fcvide(&["solve"]).status.code(), Some(3));
    assert_eq!(fcvide(&["--help"]).status.code(), Some(0));
}
