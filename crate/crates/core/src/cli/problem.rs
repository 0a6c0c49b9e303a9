//! `key = value` problem files.

use std::collections::HashMap;
use std::fmt;
use std::path::PathBuf;

use super::expr::{parse_value, ExprError, RPoly, Value};
use crate::fuzzy::FuzzyNumber;
use crate::solver::{EndpointFn, FcvideProblem, FuzzyFn, Mode, Sign};
use crate::timefun::TimeExpr;

const KEYS: [&str; 11] = [
    "mode", "kernel", "forcing", "x0", "sign_x", "sign_k", "t_max", "steps", "r_points", "oracle",
    "csv_out",
];
const REQUIRED: [&str; 5] = ["mode", "kernel", "forcing", "x0", "sign_x"];

/// Parse failure, located by 1-based line and column when possible.
#[derive(Debug, Clone, PartialEq)]
pub struct ParseError {
    pub line: Option<usize>,
    pub column: Option<usize>,
    pub message: String,
}

impl ParseError {
    fn at(line: usize, column: usize, message: impl Into<String>) -> Self {
        Self {
            line: Some(line),
            column: Some(column),
            message: message.into(),
        }
    }

    pub(crate) fn general(message: impl Into<String>) -> Self {
        Self {
            line: None,
            column: None,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.line, self.column) {
            (Some(l), Some(c)) => write!(f, "line {l}, column {c}: {}", self.message),
            _ => f.write_str(&self.message),
        }
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOptions {
    pub t_max: f64,
    pub steps: usize,
    pub r_points: usize,
    pub oracle: bool,
    pub csv_out: Option<PathBuf>,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self {
            t_max: 1.0,
            steps: 1024,
            r_points: 3,
            oracle: true,
            csv_out: None,
        }
    }
}

impl RunOptions {
    pub fn validate(&self) -> Result<(), ParseError> {
        if !(self.t_max.is_finite() && self.t_max > 0.0) {
            return Err(ParseError::general("t_max must be a positive number"));
        }
        if self.steps < 16 {
            return Err(ParseError::general("steps must be at least 16"));
        }
        if self.r_points < 2 {
            return Err(ParseError::general("r_points must be at least 2"));
        }
        Ok(())
    }

    /// `t_i = i·t_max/steps`, `i = 0..=steps`.
    pub fn t_grid(&self) -> Vec<f64> {
        (0..=self.steps)
            .map(|i| i as f64 * self.t_max / self.steps as f64)
            .collect()
    }

    /// `r_i = i/(r_points - 1)`.
    pub fn r_grid(&self) -> Vec<f64> {
        let n = self.r_points - 1;
        (0..=n).map(|i| i as f64 / n as f64).collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProblemFile {
    pub problem: FcvideProblem<f64>,
    pub options: RunOptions,
}

struct Entry<'a> {
    line: usize,
    column: usize,
    value: &'a str,
}

impl Entry<'_> {
    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError::at(self.line, self.column, message)
    }

    fn expr_error(&self, e: ExprError) -> ParseError {
        ParseError::at(self.line, self.column + e.offset, e.message)
    }

    fn value(&self) -> Result<Value, ParseError> {
        parse_value(self.value).map_err(|e| self.expr_error(e))
    }
}

/// Parses a problem file.
pub fn parse_problem(text: &str) -> Result<ProblemFile, ParseError> {
    let mut entries: HashMap<&str, Entry> = HashMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let Some(eq) = content.find('=') else {
            let col = column_of(raw, raw.len() - raw.trim_start().len());
            return Err(ParseError::at(line, col, "expected `key = value`"));
        };
        let key_part = &content[..eq];
        let key = key_part.trim();
        let key_col = column_of(raw, key_part.len() - key_part.trim_start().len());
        if key.is_empty() {
            return Err(ParseError::at(line, key_col, "missing key before `=`"));
        }
        if !KEYS.contains(&key) {
            return Err(ParseError::at(
                line,
                key_col,
                format!("unknown key `{key}`"),
            ));
        }
        if let Some(prev) = entries.get(key) {
            return Err(ParseError::at(
                line,
                key_col,
                format!("duplicate key `{key}` (first set on line {})", prev.line),
            ));
        }
        let rest = &content[eq + 1..];
        let value = rest.trim();
        let lead = rest.len() - rest.trim_start().len();
        let column = column_of(raw, eq + 1 + lead);
        if value.is_empty() {
            return Err(ParseError::at(
                line,
                column,
                format!("empty value for `{key}`"),
            ));
        }
        entries.insert(
            key,
            Entry {
                line,
                column,
                value,
            },
        );
    }

    let end = text.lines().count() + 1;
    for key in REQUIRED {
        if !entries.contains_key(key) {
            return Err(ParseError::at(
                end,
                1,
                format!("missing required key `{key}`"),
            ));
        }
    }

    let mode = {
        let e = &entries["mode"];
        match e.value.to_ascii_lowercase().as_str() {
            "i" | "1" => Mode::I,
            "ii" | "2" => Mode::II,
            _ => return Err(e.error("mode must be `i` or `ii`")),
        }
    };
    let sign_x = parse_sign(&entries["sign_x"])?;
    let sign_k = entries
        .get("sign_k")
        .map(parse_sign)
        .transpose()?
        .unwrap_or(Sign::Positive);
    let kernel = crisp_expr(&entries["kernel"], "kernel")?;
    let forcing = fuzzy_fn(&entries["forcing"])?;
    let x0 = fuzzy_number(&entries["x0"])?;

    let mut options = RunOptions::default();
    if let Some(e) = entries.get("t_max") {
        options.t_max = number(e)?;
        if !(options.t_max.is_finite() && options.t_max > 0.0) {
            return Err(e.error("t_max must be a positive number"));
        }
    }
    if let Some(e) = entries.get("steps") {
        options.steps = integer(e)?;
        if options.steps < 16 {
            return Err(e.error("steps must be at least 16"));
        }
    }
    if let Some(e) = entries.get("r_points") {
        options.r_points = integer(e)?;
        if options.r_points < 2 {
            return Err(e.error("r_points must be at least 2"));
        }
    }
    if let Some(e) = entries.get("oracle") {
        options.oracle = match e.value.to_ascii_lowercase().as_str() {
            "on" => true,
            "off" => false,
            _ => return Err(e.error("oracle must be `on` or `off`")),
        };
    }
    if let Some(e) = entries.get("csv_out") {
        options.csv_out = Some(PathBuf::from(e.value));
    }

    Ok(ProblemFile {
        problem: FcvideProblem {
            kernel,
            forcing,
            x0,
            mode,
            sign_x,
            sign_k,
        },
        options,
    })
}

fn column_of(raw: &str, byte: usize) -> usize {
    raw[..byte].chars().count() + 1
}

fn parse_sign(e: &Entry) -> Result<Sign, ParseError> {
    match e.value.to_ascii_lowercase().as_str() {
        "positive" | "+" => Ok(Sign::Positive),
        "negative" | "-" => Ok(Sign::Negative),
        _ => Err(e.error("sign must be `positive` or `negative`")),
    }
}

fn number(e: &Entry) -> Result<f64, ParseError> {
    match e.value()? {
        Value::Scalar(p) => p.as_number().ok_or_else(|| e.error("expected a number")),
        Value::Pair(..) => Err(e.error("expected a number")),
    }
}

fn integer(e: &Entry) -> Result<usize, ParseError> {
    e.value
        .parse()
        .map_err(|_| e.error("expected a nonnegative integer"))
}

fn no_deltas(e: &Entry, what: &str, x: &TimeExpr<f64>) -> Result<(), ParseError> {
    if x.has_deltas() {
        return Err(e.error(format!("{what} may not contain delta terms")));
    }
    Ok(())
}

fn crisp_expr(e: &Entry, what: &str) -> Result<TimeExpr<f64>, ParseError> {
    match e.value()? {
        Value::Scalar(p) if p.r_degree() == 0 => {
            let x = p.coeff(0);
            no_deltas(e, what, &x)?;
            Ok(x)
        }
        Value::Scalar(_) => Err(e.error(format!("{what} must not depend on r"))),
        Value::Pair(..) => Err(e.error(format!("{what} must be crisp, not a pair"))),
    }
}

fn affine(e: &Entry, side: &RPoly) -> Result<EndpointFn<f64>, ParseError> {
    if side.r_degree() > 1 {
        return Err(e.error("non-affine r-dependence: endpoints must be a(t) + r*b(t)"));
    }
    let f = EndpointFn::new(side.coeff(0), side.coeff(1));
    if f.has_deltas() {
        return Err(e.error("forcing may not contain delta terms"));
    }
    Ok(f)
}

fn fuzzy_fn(e: &Entry) -> Result<FuzzyFn<f64>, ParseError> {
    match e.value()? {
        Value::Pair(lo, up) => Ok(FuzzyFn::new(affine(e, &lo)?, affine(e, &up)?)),
        Value::Scalar(p) if p.r_degree() == 0 => {
            let x = p.coeff(0);
            no_deltas(e, "forcing", &x)?;
            Ok(FuzzyFn::crisp(x))
        }
        Value::Scalar(_) => {
            Err(e.error("an r-dependent value must be written as a pair (lower, upper)"))
        }
    }
}

fn fuzzy_number(e: &Entry) -> Result<FuzzyNumber<f64>, ParseError> {
    let (lo, up) = match e.value()? {
        Value::Pair(lo, up) => (lo, up),
        Value::Scalar(p) if p.r_degree() == 0 => (p.clone(), p),
        Value::Scalar(_) => {
            return Err(e.error("an r-dependent value must be written as a pair (lower, upper)"))
        }
    };
    let coeffs = |side: &RPoly| -> Result<(f64, f64), ParseError> {
        if side.r_degree() > 1 {
            return Err(e.error("non-affine r-dependence: endpoints must be a + b*r"));
        }
        let a = side.coeff(0).as_constant();
        let b = side.coeff(1).as_constant();
        match (a, b) {
            (Some(a), Some(b)) => Ok((a, b)),
            _ => Err(e.error("x0 must not depend on t")),
        }
    };
    let (l0, l1) = coeffs(&lo)?;
    let (u0, u1) = coeffs(&up)?;
    Ok(FuzzyNumber::from_coeffs(l0, l1, u0, u1))
}
