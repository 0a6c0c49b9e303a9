//! Problem-file driver behind the `fcvide` binary.

pub mod expr;
pub mod problem;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

pub use expr::{parse_time_expr, parse_value, ExprError, RPoly, Value};
pub use problem::{parse_problem, ParseError, ProblemFile, RunOptions};

use crate::oracle::{compare, numeric_solve, residual_check};
use crate::solver::{solve_fcvide_on, Check, EndpointFn, FuzzySolution, Sign};
use crate::timefun::{short_num, TimeExpr};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_SOLVER: i32 = 2;
pub const EXIT_PARSE: i32 = 3;

/// Oracle agreement thresholds used for warnings.
pub const COMPARE_WARN: f64 = 1e-3;
pub const RESIDUAL_WARN: f64 = 1e-5;

/// Command-line settings that take precedence over the problem file.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub csv: Option<PathBuf>,
    pub no_oracle: bool,
    pub r_points: Option<usize>,
    pub steps: Option<usize>,
}

impl Overrides {
    fn apply(&self, options: &mut RunOptions) {
        if let Some(p) = &self.csv {
            options.csv_out = Some(p.clone());
        }
        if self.no_oracle {
            options.oracle = false;
        }
        if let Some(n) = self.r_points {
            options.r_points = n;
        }
        if let Some(n) = self.steps {
            options.steps = n;
        }
    }
}

/// Reads, solves and reports one problem file; returns the exit code.
pub fn run_path(
    path: &Path,
    overrides: &Overrides,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            let _ = writeln!(err, "error: cannot read {}: {e}", path.display());
            return EXIT_PARSE;
        }
    };
    let mut file = match parse_problem(&text) {
        Ok(f) => f,
        Err(e) => {
            let _ = writeln!(err, "error: {}: {e}", path.display());
            return EXIT_PARSE;
        }
    };
    overrides.apply(&mut file.options);
    if let Err(e) = file.options.validate() {
        let _ = writeln!(err, "error: {e}");
        return EXIT_PARSE;
    }
    run(&file, out, err)
}

/// Solves a parsed problem, prints the report and writes the CSV.
pub fn run(file: &ProblemFile, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let opts = &file.options;
    let t_grid = opts.t_grid();
    let r_grid = opts.r_grid();
    let positive_t: Vec<f64> = t_grid.iter().copied().filter(|t| *t > 0.0).collect();

    let mut sol = match solve_fcvide_on(&file.problem, &positive_t, &r_grid) {
        Ok(s) => s,
        Err(e) => {
            let _ = writeln!(err, "error: solver failed: {e}");
            return EXIT_SOLVER;
        }
    };
    let oracle = opts.oracle.then(|| oracle_sweep(file, &sol, &r_grid));
    if let Some(rows) = &oracle {
        sol.diagnostics.residual = rows.iter().map(|row| row.residual).reduce(f64::max);
    }

    let report = write_report(file, &sol, oracle.as_deref(), out);
    if let Err(e) = report {
        let _ = writeln!(err, "error: writing report: {e}");
        return EXIT_IO;
    }
    if let Some(path) = &opts.csv_out {
        if let Err(e) = write_csv(path, &sol, &t_grid, &r_grid) {
            let _ = writeln!(err, "error: writing {}: {e}", path.display());
            return EXIT_IO;
        }
        let _ = writeln!(
            out,
            "csv: {} ({} rows)",
            path.display(),
            t_grid.len() * r_grid.len()
        );
    }
    EXIT_OK
}

/// Oracle results at one level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleRow {
    pub r: f64,
    pub compare: f64,
    pub residual: f64,
}

fn oracle_sweep(file: &ProblemFile, sol: &FuzzySolution<f64>, r_grid: &[f64]) -> Vec<OracleRow> {
    let opts = &file.options;
    let check_t: Vec<f64> = [0.25, 0.5, 1.0].iter().map(|f| f * opts.t_max).collect();
    std::thread::scope(|s| {
        let handles: Vec<_> = r_grid
            .iter()
            .map(|&r| {
                let check_t = &check_t;
                s.spawn(move || {
                    let traj = numeric_solve(&file.problem, r, opts.t_max, opts.steps)
                        .expect("options were validated");
                    OracleRow {
                        r,
                        compare: compare(&sol.x, &traj),
                        residual: residual_check(&file.problem, &sol.x, r, check_t),
                    }
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("oracle thread"))
            .collect()
    })
}

fn check_line(out: &mut dyn Write, name: &str, check: &Check<f64>) -> io::Result<()> {
    if check.passed {
        writeln!(out, "  {name}: ok")
    } else {
        writeln!(out, "WARN {name}: {check}")
    }
}

fn write_report(
    file: &ProblemFile,
    sol: &FuzzySolution<f64>,
    oracle: Option<&[OracleRow]>,
    out: &mut dyn Write,
) -> io::Result<()> {
    writeln!(out, "x_lower(t,r) = {}", format_endpoint(&sol.x.lower))?;
    writeln!(out, "x_upper(t,r) = {}", format_endpoint(&sol.x.upper))?;
    if sol.x.has_deltas() {
        writeln!(
            out,
            "note: delta terms act at t = 0 only and are left out of the CSV and oracle"
        )?;
    }
    let d = &sol.diagnostics;
    writeln!(out, "diagnostics:")?;
    let validity = if d.is_valid_fuzzy() { "ok" } else { "FAILED" };
    if d.is_valid_fuzzy() {
        writeln!(out, "  fuzzy validity: {validity}")?;
    } else {
        writeln!(out, "WARN fuzzy validity: {validity}")?;
    }
    let sign = match file.problem.sign_x {
        Sign::Positive => "sign (positive)",
        Sign::Negative => "sign (negative)",
    };
    check_line(out, sign, &d.sign)?;
    check_line(out, "stacking", &d.stacking)?;
    check_line(out, "monotonicity in r", &d.monotonicity)?;
    check_line(out, "initial condition", &d.initial_condition)?;
    if let Some(rows) = oracle {
        let o = &file.options;
        writeln!(
            out,
            "oracle (steps = {}, t_max = {}):",
            o.steps,
            short_num(o.t_max)
        )?;
        for row in rows {
            let bad = row.compare > COMPARE_WARN || row.residual > RESIDUAL_WARN;
            writeln!(
                out,
                "{}r = {}: max |closed form - numeric| = {:.3e}, residual = {:.3e}",
                if bad { "WARN " } else { "  " },
                short_num(row.r),
                row.compare,
                row.residual
            )?;
        }
    }
    Ok(())
}

/// CSV `t,r,lower,upper` of the smooth part over the grid.
pub fn write_csv(
    path: &Path,
    sol: &FuzzySolution<f64>,
    t_grid: &[f64],
    r_grid: &[f64],
) -> io::Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_path(path)?;
    w.write_record(["t", "r", "lower", "upper"])?;
    for &t in t_grid {
        for &r in r_grid {
            w.write_record([
                format!("{t:.16e}"),
                format!("{r:.16e}"),
                format!("{:.16e}", sol.x.lower.eval(t, r)),
                format!("{:.16e}", sol.x.upper.eval(t, r)),
            ])?;
        }
    }
    w.flush()
}

fn wrap(e: &TimeExpr<f64>) -> String {
    let s = e.pretty();
    let compound = s.trim_start_matches('-').contains([' ', '+', '-']);
    if compound || s.starts_with('-') {
        format!("({s})")
    } else {
        s
    }
}

/// `λ + μ·r` with unit coefficients elided.
fn format_affine(lambda: f64, mu: f64) -> String {
    let r_part = match short_num(mu.abs()).as_str() {
        "1" => "r".to_string(),
        m => format!("{m}*r"),
    };
    if short_num(lambda) == "0" {
        return if mu < 0.0 {
            format!("-{r_part}")
        } else {
            r_part
        };
    }
    let sign = if mu < 0.0 { '-' } else { '+' };
    format!("({} {sign} {r_part})", short_num(lambda))
}

/// Prints `base + r·rpart`, factoring a common time function when the two
/// parts are proportional, e.g. `(1 + r)*(exp(t) - 1)`.
pub fn format_endpoint(f: &EndpointFn<f64>) -> String {
    let tol = 1e-9;
    if f.rpart.is_zero() {
        return f.base.pretty();
    }
    let lead = f
        .rpart
        .smooth_terms()
        .last()
        .map(|s| s.coeff)
        .or_else(|| f.rpart.delta_terms().last().map(|d| d.coeff))
        .unwrap_or(1.0);
    let (g, mu) = if lead < 0.0 {
        (f.rpart.scale(-1.0), -1.0)
    } else {
        (f.rpart.clone(), 1.0)
    };
    let lambda = if f.base.is_zero() {
        Some(0.0)
    } else {
        f.base.ratio_to(&g, tol)
    };
    match lambda {
        Some(lambda) => {
            let affine = format_affine(lambda, mu);
            if g.as_constant() == Some(1.0) {
                affine
                    .trim_start_matches('(')
                    .trim_end_matches(')')
                    .to_string()
            } else {
                format!("{affine}*{}", wrap(&g))
            }
        }
        None => format!("{} + r*{}", wrap(&f.base), wrap(&f.rpart)),
    }
}
