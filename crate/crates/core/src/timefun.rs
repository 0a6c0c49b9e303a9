//! Exponential-polynomial-trigonometric expressions in `t`, plus Dirac terms.
//!
//! Every closed-form solution lives in this language: a finite sum of
//! `c·tⁿ·e^{at}·{1, cos ωt, sin ωt}` terms and `c·δ^{(k)}(t)` terms.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

use crate::real::{close, Real};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum TimeError {
    #[error("expression has delta terms; its pointwise value at t = 0 is undefined")]
    DeltaAtPoint,
    #[error("product of a delta term with a non-constant expression")]
    UnsupportedProduct,
}

/// Oscillating factor of a smooth term. Frequencies are kept positive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Osc<T> {
    None,
    Cos(T),
    Sin(T),
}

impl<T: Real> Osc<T> {
    pub fn omega(&self) -> T {
        match *self {
            Osc::None => T::zero(),
            Osc::Cos(w) | Osc::Sin(w) => w,
        }
    }

    fn tag(&self) -> u8 {
        match self {
            Osc::None => 0,
            Osc::Cos(_) => 1,
            Osc::Sin(_) => 2,
        }
    }

    fn eval(&self, t: T) -> T {
        match *self {
            Osc::None => T::one(),
            Osc::Cos(w) => (w * t).cos(),
            Osc::Sin(w) => (w * t).sin(),
        }
    }
}

/// `coeff · tⁿ · e^{rate·t} · osc(t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmoothTerm<T> {
    pub coeff: T,
    pub power: u32,
    pub rate: T,
    pub osc: Osc<T>,
}

impl<T: Real> SmoothTerm<T> {
    /// Builds a term, folding a negative or zero frequency into the
    /// coefficient (`sin(-ωt) = -sin ωt`, `cos 0 = 1`, `sin 0 = 0`).
    pub fn new(coeff: T, power: u32, rate: T, osc: Osc<T>) -> Self {
        let (coeff, osc) = match osc {
            Osc::Cos(w) if w == T::zero() => (coeff, Osc::None),
            Osc::Sin(w) if w == T::zero() => (T::zero(), Osc::None),
            Osc::Cos(w) if w < T::zero() => (coeff, Osc::Cos(-w)),
            Osc::Sin(w) if w < T::zero() => (-coeff, Osc::Sin(-w)),
            o => (coeff, o),
        };
        Self {
            coeff,
            power,
            rate,
            osc,
        }
    }

    pub fn eval(&self, t: T) -> T {
        self.coeff * t.powi(self.power as i32) * (self.rate * t).exp() * self.osc.eval(t)
    }

    fn cmp_key(&self, other: &Self) -> Ordering {
        let fc = |a: T, b: T| a.partial_cmp(&b).unwrap_or(Ordering::Equal);
        fc(self.rate, other.rate)
            .then_with(|| fc(self.osc.omega(), other.osc.omega()))
            .then_with(|| self.power.cmp(&other.power))
            .then_with(|| self.osc.tag().cmp(&other.osc.tag()))
    }

    fn same_signature(&self, other: &Self) -> bool {
        let tol = T::cluster_tol();
        self.power == other.power
            && self.osc.tag() == other.osc.tag()
            && close(self.rate, other.rate, tol)
            && close(self.osc.omega(), other.osc.omega(), tol)
    }

    /// Product of two smooth terms as a sum of at most two smooth terms.
    fn mul(&self, other: &Self) -> Vec<SmoothTerm<T>> {
        let c = self.coeff * other.coeff;
        let n = self.power + other.power;
        let a = self.rate + other.rate;
        let half = T::lit(0.5);
        match (self.osc, other.osc) {
            (Osc::None, o) | (o, Osc::None) => vec![SmoothTerm::new(c, n, a, o)],
            (Osc::Cos(x), Osc::Cos(y)) => vec![
                SmoothTerm::new(c * half, n, a, Osc::Cos(x - y)),
                SmoothTerm::new(c * half, n, a, Osc::Cos(x + y)),
            ],
            (Osc::Sin(x), Osc::Sin(y)) => vec![
                SmoothTerm::new(c * half, n, a, Osc::Cos(x - y)),
                SmoothTerm::new(-c * half, n, a, Osc::Cos(x + y)),
            ],
            (Osc::Sin(x), Osc::Cos(y)) | (Osc::Cos(y), Osc::Sin(x)) => vec![
                SmoothTerm::new(c * half, n, a, Osc::Sin(x + y)),
                SmoothTerm::new(c * half, n, a, Osc::Sin(x - y)),
            ],
        }
    }
}

/// `coeff · δ^{(order)}(t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeltaTerm<T> {
    pub coeff: T,
    pub order: u32,
}

/// A finite sum of smooth and delta terms. Constructors and arithmetic
/// return normalized values: like terms merged, negligible terms dropped,
/// terms sorted by `(rate, ω, power, osc)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeExpr<T> {
    smooth: Vec<SmoothTerm<T>>,
    deltas: Vec<DeltaTerm<T>>,
}

impl<T: Real> Default for TimeExpr<T> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<T: Real> TimeExpr<T> {
    pub fn new(smooth: Vec<SmoothTerm<T>>, deltas: Vec<DeltaTerm<T>>) -> Self {
        Self { smooth, deltas }.normalize()
    }

    pub fn zero() -> Self {
        Self {
            smooth: Vec::new(),
            deltas: Vec::new(),
        }
    }

    pub fn constant(c: T) -> Self {
        Self::term(c, 0, T::zero(), Osc::None)
    }

    /// `coeff · tⁿ · e^{rate·t} · osc`.
    pub fn term(coeff: T, power: u32, rate: T, osc: Osc<T>) -> Self {
        Self::new(vec![SmoothTerm::new(coeff, power, rate, osc)], Vec::new())
    }

    pub fn exp(rate: T) -> Self {
        Self::term(T::one(), 0, rate, Osc::None)
    }

    pub fn delta(coeff: T, order: u32) -> Self {
        Self::new(Vec::new(), vec![DeltaTerm { coeff, order }])
    }

    pub fn smooth_terms(&self) -> &[SmoothTerm<T>] {
        &self.smooth
    }

    pub fn delta_terms(&self) -> &[DeltaTerm<T>] {
        &self.deltas
    }

    pub fn is_zero(&self) -> bool {
        self.smooth.is_empty() && self.deltas.is_empty()
    }

    pub fn has_deltas(&self) -> bool {
        !self.deltas.is_empty()
    }

    /// The value if this is a constant (possibly zero), `None` otherwise.
    pub fn as_constant(&self) -> Option<T> {
        if self.has_deltas() {
            return None;
        }
        match self.smooth.as_slice() {
            [] => Some(T::zero()),
            [s] if s.power == 0 && s.rate == T::zero() && s.osc == Osc::None => Some(s.coeff),
            _ => None,
        }
    }

    /// The expression with its delta terms removed.
    pub fn smooth_part(&self) -> Self {
        Self {
            smooth: self.smooth.clone(),
            deltas: Vec::new(),
        }
    }

    /// Merges like terms, drops coefficients below the drop tolerance and
    /// sorts into canonical order.
    pub fn normalize(mut self) -> Self {
        self.smooth.sort_by(|x, y| x.cmp_key(y));
        let mut merged: Vec<SmoothTerm<T>> = Vec::with_capacity(self.smooth.len());
        for term in self.smooth {
            match merged.iter_mut().rev().find(|m| m.same_signature(&term)) {
                Some(m) => m.coeff += term.coeff,
                None => merged.push(term),
            }
        }
        merged.retain(|s| s.coeff.abs() >= T::drop_tol());
        merged.sort_by(|x, y| x.cmp_key(y));

        self.deltas.sort_by_key(|d| d.order);
        let mut deltas: Vec<DeltaTerm<T>> = Vec::with_capacity(self.deltas.len());
        for d in self.deltas {
            match deltas.last_mut() {
                Some(last) if last.order == d.order => last.coeff += d.coeff,
                _ => deltas.push(d),
            }
        }
        deltas.retain(|d| d.coeff.abs() >= T::drop_tol());

        Self {
            smooth: merged,
            deltas,
        }
    }

    /// Pointwise value. Delta terms vanish for `t > 0` and make the value
    /// undefined at `t = 0`.
    pub fn eval(&self, t: T) -> Result<T, TimeError> {
        if self.has_deltas() && t == T::zero() {
            return Err(TimeError::DeltaAtPoint);
        }
        Ok(self.eval_smooth(t))
    }

    /// Value of the smooth part only.
    pub fn eval_smooth(&self, t: T) -> T {
        self.smooth.iter().map(|s| s.eval(t)).sum()
    }

    /// Normalized `c1·e1 + c2·e2`.
    pub fn linear_combine(c1: T, e1: &Self, c2: T, e2: &Self) -> Self {
        let smooth = e1
            .smooth
            .iter()
            .map(|s| SmoothTerm {
                coeff: s.coeff * c1,
                ..*s
            })
            .chain(e2.smooth.iter().map(|s| SmoothTerm {
                coeff: s.coeff * c2,
                ..*s
            }))
            .collect();
        let deltas = e1
            .deltas
            .iter()
            .map(|d| DeltaTerm {
                coeff: d.coeff * c1,
                ..*d
            })
            .chain(e2.deltas.iter().map(|d| DeltaTerm {
                coeff: d.coeff * c2,
                ..*d
            }))
            .collect();
        Self::new(smooth, deltas)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::linear_combine(T::one(), self, T::one(), other)
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::linear_combine(T::one(), self, -T::one(), other)
    }

    pub fn scale(&self, c: T) -> Self {
        Self::linear_combine(c, self, T::zero(), &Self::zero())
    }

    /// Exact product, using product-to-sum identities for the oscillating
    /// factors. Deltas may only be multiplied by constants.
    pub fn mul(&self, other: &Self) -> Result<Self, TimeError> {
        if self.has_deltas() || other.has_deltas() {
            let (d, c) = match (self.as_constant(), other.as_constant()) {
                (_, Some(c)) => (self, c),
                (Some(c), _) => (other, c),
                _ => return Err(TimeError::UnsupportedProduct),
            };
            return Ok(d.scale(c));
        }
        let smooth = self
            .smooth
            .iter()
            .flat_map(|x| other.smooth.iter().flat_map(move |y| x.mul(y)))
            .collect();
        Ok(Self::new(smooth, Vec::new()))
    }

    /// Time derivative of the smooth part.
    pub fn derivative(&self) -> Self {
        let mut out = Vec::new();
        for s in &self.smooth {
            if s.power > 0 {
                out.push(SmoothTerm {
                    coeff: s.coeff * T::from_u32(s.power).unwrap(),
                    power: s.power - 1,
                    ..*s
                });
            }
            out.push(SmoothTerm {
                coeff: s.coeff * s.rate,
                ..*s
            });
            match s.osc {
                Osc::None => {}
                Osc::Cos(w) => out.push(SmoothTerm {
                    coeff: -s.coeff * w,
                    osc: Osc::Sin(w),
                    ..*s
                }),
                Osc::Sin(w) => out.push(SmoothTerm {
                    coeff: s.coeff * w,
                    osc: Osc::Cos(w),
                    ..*s
                }),
            }
        }
        Self::new(out, Vec::new())
    }

    /// Structural equality: same terms in the same order, coefficients,
    /// rates and frequencies within `tol` (relative to `max(1, |x|)`).
    pub fn approx_eq(&self, other: &Self, tol: T) -> bool {
        self.smooth.len() == other.smooth.len()
            && self.deltas.len() == other.deltas.len()
            && self.smooth.iter().zip(&other.smooth).all(|(x, y)| {
                x.power == y.power
                    && x.osc.tag() == y.osc.tag()
                    && close(x.coeff, y.coeff, tol)
                    && close(x.rate, y.rate, tol)
                    && close(x.osc.omega(), y.osc.omega(), tol)
            })
            && self
                .deltas
                .iter()
                .zip(&other.deltas)
                .all(|(x, y)| x.order == y.order && close(x.coeff, y.coeff, tol))
    }

    /// If `self = λ·other` structurally (within `tol`), returns `λ`.
    pub fn ratio_to(&self, other: &Self, tol: T) -> Option<T> {
        let pivot = other
            .smooth
            .iter()
            .map(|s| s.coeff)
            .chain(other.deltas.iter().map(|d| d.coeff))
            .next()?;
        let first = self
            .smooth
            .iter()
            .map(|s| s.coeff)
            .chain(self.deltas.iter().map(|d| d.coeff))
            .next()?;
        let lambda = first / pivot;
        other.scale(lambda).approx_eq(self, tol).then_some(lambda)
    }

    /// Canonical-form string with round-trippable numbers, e.g.
    /// `2.0*t^1*exp(-1.0*t) + 3.0*delta(t)`.
    pub fn canonical_string(&self) -> String {
        if self.is_zero() {
            return "0.0".to_string();
        }
        let mut parts = Vec::new();
        for s in &self.smooth {
            let mut p = format!("{:?}", s.coeff);
            if s.power > 0 {
                p.push_str(&format!("*t^{}", s.power));
            }
            if s.rate != T::zero() {
                p.push_str(&format!("*exp({:?}*t)", s.rate));
            }
            match s.osc {
                Osc::None => {}
                Osc::Cos(w) => p.push_str(&format!("*cos({w:?}*t)")),
                Osc::Sin(w) => p.push_str(&format!("*sin({w:?}*t)")),
            }
            parts.push(p);
        }
        for d in &self.deltas {
            parts.push(format!("{:?}*{}", d.coeff, delta_name(d.order)));
        }
        parts.join(" + ")
    }

    /// Human-oriented form: short numbers, unit coefficients elided,
    /// `½e^{at} ∓ ½e^{-at}` pairs printed as `sinh`/`cosh`, dominant terms
    /// first. Re-parses to an equivalent expression.
    pub fn pretty(&self) -> String {
        let mut items: Vec<(T, String)> = Vec::new();
        let mut used = vec![false; self.smooth.len()];
        // Descending canonical order puts growing exponentials first.
        for i in (0..self.smooth.len()).rev() {
            if used[i] {
                continue;
            }
            let s = self.smooth[i];
            used[i] = true;
            if s.rate > T::zero() {
                let partner = (0..self.smooth.len()).find(|&j| {
                    !used[j]
                        && self.smooth[j].power == s.power
                        && self.smooth[j].osc.tag() == s.osc.tag()
                        && close(self.smooth[j].osc.omega(), s.osc.omega(), T::cluster_tol())
                        && close(self.smooth[j].rate, -s.rate, T::cluster_tol())
                        && close(self.smooth[j].coeff.abs(), s.coeff.abs(), T::cluster_tol())
                });
                if let Some(j) = partner {
                    used[j] = true;
                    let hyper = if self.smooth[j].coeff * s.coeff < T::zero() {
                        "sinh"
                    } else {
                        "cosh"
                    };
                    let factor = format!("{hyper}({})", scaled_t(s.rate));
                    items.push(pretty_term(
                        s.coeff * T::lit(2.0),
                        s.power,
                        None,
                        s.osc,
                        Some(factor),
                    ));
                    continue;
                }
            }
            items.push(pretty_term(s.coeff, s.power, Some(s.rate), s.osc, None));
        }
        for d in &self.deltas {
            items.push(pretty_product(d.coeff, vec![delta_name(d.order)]));
        }
        join_signed(items)
    }
}

fn delta_name(order: u32) -> String {
    if order == 0 {
        "delta(t)".to_string()
    } else {
        format!("delta{order}(t)")
    }
}

/// Formats a number with at most 12 significant digits, shortest form.
pub(crate) fn short_num<T: Real>(x: T) -> String {
    let v = x.to_f64().unwrap_or(f64::NAN);
    let rounded: f64 = format!("{v:.11e}").parse().unwrap_or(v);
    format!("{rounded}")
}

fn scaled_t<T: Real>(k: T) -> String {
    let s = short_num(k);
    match s.as_str() {
        "1" => "t".to_string(),
        "-1" => "-t".to_string(),
        _ => format!("{s}*t"),
    }
}

fn pretty_term<T: Real>(
    coeff: T,
    power: u32,
    rate: Option<T>,
    osc: Osc<T>,
    extra: Option<String>,
) -> (T, String) {
    let mut factors = Vec::new();
    match power {
        0 => {}
        1 => factors.push("t".to_string()),
        n => factors.push(format!("t^{n}")),
    }
    if let Some(a) = rate {
        if a != T::zero() {
            factors.push(format!("exp({})", scaled_t(a)));
        }
    }
    if let Some(e) = extra {
        factors.push(e);
    }
    match osc {
        Osc::None => {}
        Osc::Cos(w) => factors.push(format!("cos({})", scaled_t(w))),
        Osc::Sin(w) => factors.push(format!("sin({})", scaled_t(w))),
    }
    pretty_product(coeff, factors)
}

/// `(sign, magnitude-string)` for one printed term.
fn pretty_product<T: Real>(coeff: T, factors: Vec<String>) -> (T, String) {
    let mag = short_num(coeff.abs());
    let body = if factors.is_empty() {
        mag
    } else if mag == "1" {
        factors.join("*")
    } else {
        format!("{mag}*{}", factors.join("*"))
    };
    (coeff, body)
}

fn join_signed<T: Real>(items: Vec<(T, String)>) -> String {
    if items.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (c, body)) in items.into_iter().enumerate() {
        let neg = c < T::zero();
        match (i, neg) {
            (0, false) => {}
            (0, true) => out.push('-'),
            (_, false) => out.push_str(" + "),
            (_, true) => out.push_str(" - "),
        }
        out.push_str(&body);
    }
    out
}

impl<T: Real> fmt::Display for TimeExpr<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_string())
    }
}

/// `max |e1(t) - e2(t)|` over `grid` (points should be `> 0`); infinite when
/// the delta parts differ beyond `1e-9`.
pub fn expr_distance<T: Real>(e1: &TimeExpr<T>, e2: &TimeExpr<T>, grid: &[T]) -> T {
    let d1 = TimeExpr::new(Vec::new(), e1.deltas.clone());
    let d2 = TimeExpr::new(Vec::new(), e2.deltas.clone());
    if !d1.approx_eq(&d2, T::lit(1e-9)) {
        return T::infinity();
    }
    grid.iter()
        .map(|&t| (e1.eval_smooth(t) - e2.eval_smooth(t)).abs())
        .fold(T::zero(), T::max)
}
