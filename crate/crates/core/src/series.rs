//! Truncated power series in `u` and `t`, where `u` plays the role of `q^-1`.
//!
//! A [`TruncSeries2`] stores every coefficient of `u^i t^j` with
//! `i < u_prec` and `j < t_prec` densely; arithmetic is exact inside that
//! window and never claims anything outside it. One-variable series in `u`
//! are plain coefficient vectors ([`USeries`]).

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::LaurentPoly2;

/// A precision window: exponents `u^i t^j` with `i < u_prec`, `j < t_prec`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Window {
    pub u_prec: usize,
    pub t_prec: usize,
}

impl Window {
    pub fn new(u_prec: usize, t_prec: usize) -> Self {
        Self { u_prec, t_prec }
    }

    pub fn intersect(self, other: Window) -> Window {
        Window::new(self.u_prec.min(other.u_prec), self.t_prec.min(other.t_prec))
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(u^{}, t^{})", self.u_prec, self.t_prec)
    }
}

/// Result of comparing two series on the intersection of their windows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesComparison {
    pub window: Window,
    /// First differing `(i, j)` in t-major order, if any.
    pub first_discrepancy: Option<(usize, usize)>,
}

impl SeriesComparison {
    pub fn agrees(&self) -> bool {
        self.first_discrepancy.is_none()
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct TruncSeries2 {
    window: Window,
    coeffs: Vec<BigInt>,
}

impl TruncSeries2 {
    pub fn zero(window: Window) -> Self {
        Self {
            window,
            coeffs: vec![BigInt::zero(); window.u_prec * window.t_prec],
        }
    }

    pub fn one(window: Window) -> Self {
        Self::monomial(1, 0, 0, window)
    }

    pub fn monomial(c: impl Into<BigInt>, i: usize, j: usize, window: Window) -> Self {
        let mut s = Self::zero(window);
        if i < window.u_prec && j < window.t_prec {
            s.coeffs[j * window.u_prec + i] = c.into();
        }
        s
    }

    /// Converts a Laurent polynomial in `(q, t)` by `q^a -> u^-a`, dropping
    /// terms outside the window. Negative resulting exponents are an error.
    pub fn from_poly(p: &LaurentPoly2, window: Window) -> Result<Self> {
        let mut s = Self::zero(window);
        for ((eq, et), c) in p.terms() {
            if -eq < 0 || et < 0 {
                return Err(Error::Domain(format!(
                    "term q^{eq} t^{et} has a negative exponent in u = q^-1"
                )));
            }
            let (i, j) = ((-eq) as usize, et as usize);
            if i < window.u_prec && j < window.t_prec {
                s.coeffs[j * window.u_prec + i] += c;
            }
        }
        Ok(s)
    }

    /// Builds `Σ_j coeffs[j](u) t^j` from one-variable series.
    pub fn from_t_coeffs(cols: &[USeries], window: Window) -> Self {
        let mut s = Self::zero(window);
        for (j, col) in cols.iter().enumerate().take(window.t_prec) {
            for (i, c) in col.iter().enumerate().take(window.u_prec) {
                s.coeffs[j * window.u_prec + i] = c.clone();
            }
        }
        s
    }

    pub fn window(&self) -> Window {
        self.window
    }

    fn idx(&self, i: usize, j: usize) -> usize {
        j * self.window.u_prec + i
    }

    /// Coefficient of `u^i t^j` (zero outside the window).
    pub fn coeff(&self, i: usize, j: usize) -> BigInt {
        if i < self.window.u_prec && j < self.window.t_prec {
            self.coeffs[self.idx(i, j)].clone()
        } else {
            BigInt::zero()
        }
    }

    pub(crate) fn coeff_ref(&self, i: usize, j: usize) -> &BigInt {
        &self.coeffs[self.idx(i, j)]
    }

    pub fn add_to_coeff(&mut self, i: usize, j: usize, c: &BigInt) {
        if i < self.window.u_prec && j < self.window.t_prec {
            let k = self.idx(i, j);
            self.coeffs[k] += c;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The coefficient of `t^j` as a series in `u`.
    pub fn t_coeff(&self, j: usize) -> USeries {
        if j >= self.window.t_prec {
            return vec![BigInt::zero(); self.window.u_prec];
        }
        let u = self.window.u_prec;
        self.coeffs[j * u..(j + 1) * u].to_vec()
    }

    /// Nonzero terms `(i, j, c)` in t-major order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> + '_ {
        let u = self.window.u_prec.max(1);
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, c)| (k % u, k / u, c))
    }

    /// Restricts to a smaller window.
    pub fn truncate(&self, window: Window) -> Self {
        let w = self.window.intersect(window);
        let mut s = Self::zero(w);
        for j in 0..w.t_prec {
            for i in 0..w.u_prec {
                s.coeffs[j * w.u_prec + i] = self.coeffs[self.idx(i, j)].clone();
            }
        }
        s
    }

    /// Compares on the intersection of the two windows.
    pub fn compare(&self, other: &TruncSeries2) -> SeriesComparison {
        let w = self.window.intersect(other.window);
        let first_discrepancy = (0..w.t_prec)
            .flat_map(|j| (0..w.u_prec).map(move |i| (i, j)))
            .find(|&(i, j)| self.coeffs[self.idx(i, j)] != other.coeffs[other.idx(i, j)]);
        SeriesComparison {
            window: w,
            first_discrepancy,
        }
    }

    pub fn add(&self, other: &TruncSeries2) -> TruncSeries2 {
        let mut out = self.truncate(other.window);
        for j in 0..out.window.t_prec {
            for i in 0..out.window.u_prec {
                let k = out.idx(i, j);
                out.coeffs[k] += other.coeff_ref(i, j);
            }
        }
        out
    }

    pub fn neg(&self) -> TruncSeries2 {
        Self {
            window: self.window,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &TruncSeries2) -> TruncSeries2 {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &BigInt) -> TruncSeries2 {
        Self {
            window: self.window,
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    pub fn mul(&self, other: &TruncSeries2) -> TruncSeries2 {
        let w = self.window.intersect(other.window);
        let mut out = Self::zero(w);
        let a_terms: Vec<(usize, usize, &BigInt)> =
            self.terms().filter(|&(i, j, _)| i < w.u_prec && j < w.t_prec).collect();
        for (j2, chunk) in other
            .coeffs
            .chunks(other.window.u_prec.max(1))
            .enumerate()
            .take(w.t_prec)
        {
            for (i2, c2) in chunk.iter().enumerate().take(w.u_prec) {
                if c2.is_zero() {
                    continue;
                }
                for &(i1, j1, c1) in &a_terms {
                    let (i, j) = (i1 + i2, j1 + j2);
                    if i < w.u_prec && j < w.t_prec {
                        let k = j * w.u_prec + i;
                        out.coeffs[k] += c1 * c2;
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> TruncSeries2 {
        let mut acc = Self::one(self.window);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplicative inverse; the constant term must be `±1`.
    pub fn inverse(&self) -> Result<TruncSeries2> {
        let w = self.window;
        if w.u_prec == 0 || w.t_prec == 0 {
            return Ok(self.clone());
        }
        let c0 = self.coeffs[0].clone();
        if !c0.abs().is_one() {
            return Err(Error::Domain(format!("constant term {c0} is not a unit")));
        }
        // Solve a * b = 1 coefficient by coefficient in t-major order.
        let mut b = Self::zero(w);
        let a_terms: Vec<(usize, usize, BigInt)> = self
            .terms()
            .filter(|&(i, j, _)| i + j > 0)
            .map(|(i, j, c)| (i, j, c.clone()))
            .collect();
        for j in 0..w.t_prec {
            for i in 0..w.u_prec {
                let mut acc = if i == 0 && j == 0 {
                    BigInt::one()
                } else {
                    BigInt::zero()
                };
                for (ai, aj, c) in &a_terms {
                    if *ai <= i && *aj <= j {
                        acc -= c * b.coeff_ref(i - ai, j - aj);
                    }
                }
                let k = b.idx(i, j);
                b.coeffs[k] = &acc * &c0;
            }
        }
        Ok(b)
    }

    /// In place: `self *= (1 - c u^a t^b)`.
    pub fn mul_binomial(&mut self, c: &BigInt, a: usize, b: usize) {
        let w = self.window;
        if a == 0 && b == 0 {
            let f = BigInt::one() - c;
            for x in self.coeffs.iter_mut() {
                *x *= &f;
            }
            return;
        }
        if a >= w.u_prec || b >= w.t_prec {
            return;
        }
        for j in (b..w.t_prec).rev() {
            for i in (a..w.u_prec).rev() {
                let src = self.coeffs[(j - b) * w.u_prec + (i - a)].clone();
                if !src.is_zero() {
                    self.coeffs[j * w.u_prec + i] -= c * src;
                }
            }
        }
    }

    /// In place: `self /= (1 - c u^a t^b)`, requiring `(a, b) != (0, 0)`
    /// unless `1 - c` is a unit.
    pub fn div_binomial(&mut self, c: &BigInt, a: usize, b: usize) -> Result<()> {
        let w = self.window;
        if a == 0 && b == 0 {
            let f = BigInt::one() - c;
            if !f.abs().is_one() {
                return Err(Error::Domain(format!("division by the non-unit constant {f}")));
            }
            for x in self.coeffs.iter_mut() {
                *x *= &f;
            }
            return Ok(());
        }
        if a >= w.u_prec || b >= w.t_prec {
            return Ok(());
        }
        for j in b..w.t_prec {
            for i in a..w.u_prec {
                let src = self.coeffs[(j - b) * w.u_prec + (i - a)].clone();
                if !src.is_zero() {
                    self.coeffs[j * w.u_prec + i] += c * src;
                }
            }
        }
        Ok(())
    }

    /// Multiplies by `u^a t^b`.
    pub fn shift(&self, a: usize, b: usize) -> TruncSeries2 {
        let w = self.window;
        let mut out = Self::zero(w);
        for j in b..w.t_prec {
            for i in a..w.u_prec {
                out.coeffs[j * w.u_prec + i] = self.coeffs[(j - b) * w.u_prec + (i - a)].clone();
            }
        }
        out
    }

    /// `self += u^du t^dt * f(u) * base`, with `f` a one-variable series.
    pub fn add_product(&mut self, f: &[BigInt], base: &TruncSeries2, du: usize, dt: usize) {
        let w = self.window;
        for j in 0..base.window.t_prec {
            let jj = j + dt;
            if jj >= w.t_prec {
                break;
            }
            for i in 0..base.window.u_prec {
                let c = base.coeff_ref(i, j);
                if c.is_zero() {
                    continue;
                }
                for (a, fa) in f.iter().enumerate() {
                    let ii = i + a + du;
                    if ii >= w.u_prec {
                        break;
                    }
                    if !fa.is_zero() {
                        self.coeffs[jj * w.u_prec + ii] += c * fa;
                    }
                }
            }
        }
    }

    /// Substitutes `t -> u^k t`.
    pub fn scale_t(&self, k: usize) -> TruncSeries2 {
        let w = self.window;
        let mut out = Self::zero(w);
        for j in 0..w.t_prec {
            for i in 0..w.u_prec {
                let ii = i + k * j;
                if ii < w.u_prec {
                    out.coeffs[j * w.u_prec + ii] = self.coeffs[j * w.u_prec + i].clone();
                }
            }
        }
        out
    }

    /// `Σ_j sign^j [t^j]`, a series in `u` to precision `u_prec`.
    pub fn eval_t(&self, sign: i32) -> USeries {
        let w = self.window;
        let mut out = vec![BigInt::zero(); w.u_prec];
        for j in 0..w.t_prec {
            let neg = sign < 0 && j % 2 == 1;
            for (i, o) in out.iter_mut().enumerate() {
                let c = &self.coeffs[j * w.u_prec + i];
                if neg {
                    *o -= c;
                } else {
                    *o += c;
                }
            }
        }
        out
    }

    /// The window contents as a Laurent polynomial, with `u` stored in the
    /// `q` slot (exponents are not negated).
    pub fn to_poly_in_u(&self) -> LaurentPoly2 {
        LaurentPoly2::from_terms(self.terms().map(|(i, j, c)| (i as i64, j as i64, c.clone())))
    }

    /// Text form grouped by powers of `t`, with `var` naming `u`.
    pub fn to_text(&self, var: &str) -> String {
        let body = self.to_poly_in_u().to_t_grouped_string(var, "t");
        format!("{body} + O({var}^{}, t^{})", self.window.u_prec, self.window.t_prec)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "u_prec": self.window.u_prec,
            "t_prec": self.window.t_prec,
            "terms": self.terms().map(|(i, j, c)| serde_json::json!([i, j, c.to_string()])).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        #[derive(Deserialize)]
        struct Raw {
            u_prec: usize,
            t_prec: usize,
            terms: Vec<(usize, usize, String)>,
        }
        let raw: Raw = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let mut s = Self::zero(Window::new(raw.u_prec, raw.t_prec));
        for (i, j, c) in raw.terms {
            let c: BigInt = c.parse().map_err(|e| Error::Parse(format!("{c:?}: {e}")))?;
            if i >= raw.u_prec || j >= raw.t_prec {
                return Err(Error::Parse(format!("term ({i},{j}) outside the window")));
            }
            s.add_to_coeff(i, j, &c);
        }
        Ok(s)
    }
}

impl fmt::Display for TruncSeries2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text("u"))
    }
}

impl fmt::Debug for TruncSeries2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncSeries2({self})")
    }
}

/// `(u^a t^b; u)_∞` truncated to `window`, together with the number of
/// factors that were multiplied (the stabilization index).
pub fn poch_inf_with_index(a: usize, b: usize, window: Window) -> Result<(TruncSeries2, usize)> {
    poch_inf_step(a, b, 1, window)
}

/// `(u^a t^b; u)_∞` truncated to `window`.
///
/// ```
/// use quotzeta::series::{poch_inf, Window};
/// let euler = poch_inf(1, 0, Window::new(6, 1)).unwrap();
/// assert_eq!(euler.to_text("u"), "1 - u - u^2 + u^5 + O(u^6, t^1)");
/// ```
pub fn poch_inf(a: usize, b: usize, window: Window) -> Result<TruncSeries2> {
    Ok(poch_inf_with_index(a, b, window)?.0)
}

/// `(u^a t^b; u^step)_∞` truncated to `window`.
pub fn poch_inf_step(a: usize, b: usize, step: usize, window: Window) -> Result<(TruncSeries2, usize)> {
    if (a == 0 && b == 0) || step == 0 {
        return Err(Error::Domain(format!("(u^{a} t^{b}; u^{step})_inf does not stabilize")));
    }
    let mut s = TruncSeries2::one(window);
    let one = BigInt::one();
    let mut factors = 0;
    if b < window.t_prec {
        let mut e = a;
        while e < window.u_prec {
            s.mul_binomial(&one, e, b);
            factors += 1;
            e += step;
        }
    }
    Ok((s, factors))
}

/// A monomial `c u^a t^b` used as a hypergeometric parameter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monomial {
    pub c: BigInt,
    pub u: usize,
    pub t: usize,
}

impl Monomial {
    pub fn new(c: impl Into<BigInt>, u: usize, t: usize) -> Self {
        Self { c: c.into(), u, t }
    }

    pub fn zero() -> Self {
        Self::new(0, 0, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_zero()
    }
}

/// The basic hypergeometric series
/// `rφs(a_1..a_r; b_1..b_s; u, z) = Σ_k (a_1..a_r; u)_k / ((u;u)_k (b_1..b_s; u)_k)
///  ((-1)^k u^{k(k-1)/2})^{1+s-r} z^k`, truncated to `window`.
///
/// ```
/// use quotzeta::series::{phi_rs, poch_inf, Monomial, Window};
/// // Euler: 0φ0(; ; u, ut) = Σ (-1)^k u^{k(k-1)/2} (ut)^k / (u;u)_k = (ut;u)_∞
/// let w = Window::new(10, 5);
/// let lhs = phi_rs(&[], &[], &Monomial::new(1, 1, 1), w).unwrap();
/// assert!(lhs.compare(&poch_inf(1, 1, w).unwrap()).agrees());
/// ```
pub fn phi_rs(upper: &[Monomial], lower: &[Monomial], z: &Monomial, window: Window) -> Result<TruncSeries2> {
    let r = upper.len() as i64;
    let s = lower.len() as i64;
    let ex = 1 + s - r;
    let mut total = TruncSeries2::one(window);
    if z.is_zero() || window.u_prec == 0 || window.t_prec == 0 {
        return Ok(total);
    }
    if z.u == 0 && z.t == 0 && ex <= 0 {
        return Err(Error::Domain("hypergeometric term order does not increase".into()));
    }
    let mut body = TruncSeries2::one(window);
    let mut coeff = BigInt::one();
    for k in 1usize.. {
        let km1 = k - 1;
        let off_u = k as i64 * z.u as i64 + ex * (k as i64 * km1 as i64 / 2);
        let off_t = k * z.t;
        if off_u < 0 {
            return Err(Error::Domain(format!("term {k} has negative u-order {off_u}")));
        }
        if off_t >= window.t_prec || off_u as usize >= window.u_prec {
            // Orders only grow from here on when ex >= 0; otherwise require
            // the t-order to have left the window.
            if ex >= 0 || off_t >= window.t_prec {
                break;
            }
        }
        for a in upper {
            body.mul_binomial(&a.c, a.u + km1, a.t);
        }
        body.div_binomial(&BigInt::one(), k, 0)?;
        for b in lower {
            if b.is_zero() {
                continue;
            }
            body.div_binomial(&b.c, b.u + km1, b.t)?;
        }
        coeff *= &z.c;
        if ex % 2 != 0 {
            coeff = -coeff;
        }
        if body.is_zero() {
            break;
        }
        if off_t < window.t_prec && (off_u as usize) < window.u_prec {
            total.add_product(&[coeff.clone()], &body, off_u as usize, off_t);
        }
    }
    Ok(total)
}

/// A one-variable series in `u`: `c[i]` is the coefficient of `u^i`.
pub type USeries = Vec<BigInt>;

pub fn u_one(prec: usize) -> USeries {
    let mut v = vec![BigInt::zero(); prec];
    if prec > 0 {
        v[0] = BigInt::one();
    }
    v
}

pub fn u_mul(a: &[BigInt], b: &[BigInt], prec: usize) -> USeries {
    let mut out = vec![BigInt::zero(); prec];
    for (i, x) in a.iter().enumerate().take(prec) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(prec - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// In place: `s /= (1 - u^a)` for `a >= 1`.
pub fn u_div_binomial(s: &mut [BigInt], a: usize) {
    assert!(a >= 1);
    for i in a..s.len() {
        let prev = s[i - a].clone();
        s[i] += prev;
    }
}

/// In place: `s *= (1 - u^a)`.
pub fn u_mul_binomial(s: &mut [BigInt], a: usize) {
    for i in (a..s.len()).rev() {
        let prev = s[i - a].clone();
        s[i] -= prev;
    }
}

/// `1 / (u;u)_n` to precision `prec`.
pub fn u_inv_poch(n: usize, prec: usize) -> USeries {
    let mut s = u_one(prec);
    for k in 1..=n {
        u_div_binomial(&mut s, k);
    }
    s
}

/// `(u^a; u^step)_∞` to precision `prec`, `a, step >= 1`.
pub fn u_poch_inf(a: usize, step: usize, prec: usize) -> USeries {
    assert!(a >= 1 && step >= 1);
    let mut s = u_one(prec);
    let mut e = a;
    while e < prec {
        u_mul_binomial(&mut s, e);
        e += step;
    }
    s
}

/// Inverts a one-variable series with constant term `±1`.
pub fn u_inverse(a: &[BigInt]) -> Result<USeries> {
    let prec = a.len();
    if prec == 0 {
        return Ok(Vec::new());
    }
    if !a[0].abs().is_one() {
        return Err(Error::Domain(format!("constant term {} is not a unit", a[0])));
    }
    let mut b = vec![BigInt::zero(); prec];
    for i in 0..prec {
        let mut acc = if i == 0 { BigInt::one() } else { BigInt::zero() };
        for k in 1..=i {
            if !a[k].is_zero() {
                acc -= &a[k] * &b[i - k];
            }
        }
        b[i] = acc * &a[0];
    }
    Ok(b)
}

/// Renders a one-variable series as `c0 + c1*u + ... + O(u^prec)`.
pub fn u_to_text(s: &[BigInt], var: &str) -> String {
    let p = LaurentPoly2::from_terms(s.iter().enumerate().map(|(i, c)| (i as i64, 0, c.clone())));
    let body = p.to_string_with(var, "t");
    format!("{body} + O({var}^{})", s.len())
}

/// A series in `u` and `t` whose `u`-exponents may be negative.
///
/// Used where substitutions like `t -> q^-d t` produce terms that only
/// cancel after further multiplication. [`LaurentSeries2::into_series`]
/// asserts that nothing with a negative exponent survives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentSeries2 {
    window: Window,
    terms: BTreeMap<(i64, usize), BigInt>,
}

impl LaurentSeries2 {
    pub fn zero(window: Window) -> Self {
        Self {
            window,
            terms: BTreeMap::new(),
        }
    }

    /// From a Laurent polynomial in `(q, t)` with `u = q^-1`; `t`-exponents
    /// must be nonnegative.
    pub fn from_poly(p: &LaurentPoly2, window: Window) -> Result<Self> {
        let mut s = Self::zero(window);
        for ((eq, et), c) in p.terms() {
            if et < 0 {
                return Err(Error::Domain(format!("negative t-exponent {et}")));
            }
            s.add_term(-eq, et as usize, c.clone());
        }
        Ok(s)
    }

    fn add_term(&mut self, i: i64, j: usize, c: BigInt) {
        if c.is_zero() || i >= self.window.u_prec as i64 || j >= self.window.t_prec {
            return;
        }
        let e = self.terms.entry((i, j)).or_default();
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    /// Lowest `u`-exponent present (0 if none is negative).
    pub fn u_floor(&self) -> i64 {
        self.terms.keys().map(|(i, _)| *i).min().unwrap_or(0).min(0)
    }

    pub fn add(&mut self, other: &LaurentSeries2) {
        for (&(i, j), c) in &other.terms {
            self.add_term(i, j, c.clone());
        }
    }

    /// Multiplies by a power series; `f` must be known to `u`-precision at
    /// least `u_prec - u_floor()` for the product to be exact in the window.
    pub fn mul_series(&self, f: &TruncSeries2) -> Result<LaurentSeries2> {
        let need = self.window.u_prec as i64 - self.u_floor();
        if (f.window().u_prec as i64) < need || f.window().t_prec < self.window.t_prec {
            return Err(Error::Domain(format!(
                "factor window {} too small, need u-precision {need}",
                f.window()
            )));
        }
        let mut out = Self::zero(self.window);
        for (&(i, j), c) in &self.terms {
            for (fi, fj, fc) in f.terms() {
                out.add_term(i + fi as i64, j + fj, c * fc);
            }
        }
        Ok(out)
    }

    /// Multiplies by a one-variable series in `u`, with the same precision
    /// requirement as [`LaurentSeries2::mul_series`].
    pub fn mul_useries(&self, f: &[BigInt]) -> Result<LaurentSeries2> {
        let need = self.window.u_prec as i64 - self.u_floor();
        if (f.len() as i64) < need {
            return Err(Error::Domain(format!(
                "factor precision {} too small, need {need}",
                f.len()
            )));
        }
        let mut out = Self::zero(self.window);
        for (&(i, j), c) in &self.terms {
            for (a, fa) in f.iter().enumerate() {
                if !fa.is_zero() {
                    out.add_term(i + a as i64, j, c * fa);
                }
            }
        }
        Ok(out)
    }

    /// Converts to an ordinary truncated series, failing if any term with a
    /// negative `u`-exponent remains.
    pub fn into_series(self) -> Result<TruncSeries2> {
        let mut s = TruncSeries2::zero(self.window);
        for ((i, j), c) in self.terms {
            if i < 0 {
                return Err(Error::InternalInvariant(format!(
                    "negative u-exponent survives: {c}*u^{i}*t^{j}"
                )));
            }
            s.add_to_coeff(i as usize, j, &c);
        }
        Ok(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn from_u_poly(s: &str, w: Window) -> TruncSeries2 {
        // parse with q standing for u
        let p: LaurentPoly2 = s.parse().unwrap();
        let mut out = TruncSeries2::zero(w);
        for ((i, j), c) in p.terms() {
            out.add_to_coeff(i as usize, j as usize, c);
        }
        out
    }

    #[test]
    fn inverse_of_one_minus_t() {
        let w = Window::new(3, 5);
        let inv = from_u_poly("1 - t", w).inverse().unwrap();
        assert_eq!(inv, from_u_poly("1 + t + t^2 + t^3 + t^4", w));
        assert!(from_u_poly("2 + t", w).inverse().is_err());
    }

    #[test]
    fn products() {
        let w = Window::new(5, 5);
        let p = from_u_poly("1 + q t", w).mul(&from_u_poly("1 - q t", w));
        assert_eq!(p, from_u_poly("1 - q^2 t^2", w));
    }

    #[test]
    fn pentagonal_numbers() {
        let (s, idx) = poch_inf_with_index(1, 0, Window::new(6, 1)).unwrap();
        assert_eq!(s.t_coeff(0), vec![big(1), big(-1), big(-1), big(0), big(0), big(1)]);
        assert_eq!(idx, 5);
        let e = u_poch_inf(1, 1, 30);
        let expected_nonzero: Vec<(usize, i64)> = vec![
            (0, 1),
            (1, -1),
            (2, -1),
            (5, 1),
            (7, 1),
            (12, -1),
            (15, -1),
            (22, 1),
            (26, 1),
        ];
        for (i, c) in e.iter().enumerate() {
            let want = expected_nonzero.iter().find(|(k, _)| *k == i).map_or(0, |(_, v)| *v);
            assert_eq!(*c, big(want), "u^{i}");
        }
        assert!(poch_inf(0, 0, Window::new(3, 3)).is_err());
        assert_eq!(poch_inf(1, 1, Window::new(4, 4)).unwrap().coeff(0, 0), big(1));
    }

    #[test]
    fn euler_identity() {
        // Σ_k (-1)^k u^{k(k+1)/2} t^k/(u;u)_k = (ut;u)_∞ on a 12 x 8 window
        let w = Window::new(12, 8);
        let mut sum = TruncSeries2::zero(w);
        for k in 0..w.t_prec {
            let e = k * (k + 1) / 2;
            if e >= w.u_prec {
                break;
            }
            let sign = if k % 2 == 0 { big(1) } else { big(-1) };
            let mut f = u_inv_poch(k, w.u_prec);
            for x in f.iter_mut() {
                *x *= &sign;
            }
            sum.add_product(&f, &TruncSeries2::one(w), e, k);
        }
        assert_eq!(sum, poch_inf(1, 1, w).unwrap());
        let prod = poch_inf(1, 1, w).unwrap().inverse().unwrap().mul(&sum);
        assert_eq!(prod, TruncSeries2::one(w));
    }

    #[test]
    fn cauchy_1phi1() {
        // 1φ1(a; az; u, z) = (z;u)_∞ / (az;u)_∞ with a = u, z = u^2 t
        let w = Window::new(10, 6);
        let a = Monomial::new(1, 1, 0);
        let b = Monomial::new(1, 3, 1);
        let z = Monomial::new(1, 2, 1);
        let lhs = phi_rs(&[a], &[b], &z, w).unwrap();
        let rhs = poch_inf(2, 1, w)
            .unwrap()
            .mul(&poch_inf(3, 1, w).unwrap().inverse().unwrap());
        assert!(lhs.compare(&rhs).agrees());
        assert_eq!(phi_rs(&[], &[], &Monomial::zero(), w).unwrap(), TruncSeries2::one(w));
        assert!(phi_rs(&[Monomial::new(1, 1, 0)], &[], &Monomial::new(1, 0, 0), w).is_err());
    }

    #[test]
    fn window_monotonicity() {
        let big_w = Window::new(12, 7);
        let small = Window::new(7, 4);
        let a = poch_inf(1, 1, big_w)
            .unwrap()
            .mul(&poch_inf(2, 0, big_w).unwrap())
            .inverse()
            .unwrap();
        let b = poch_inf(1, 1, small)
            .unwrap()
            .mul(&poch_inf(2, 0, small).unwrap())
            .inverse()
            .unwrap();
        assert_eq!(a.truncate(small), b);
        let cmp = a.compare(&b);
        assert!(cmp.agrees());
        assert_eq!(cmp.window, small);
    }

    #[test]
    fn text_and_json() {
        let w = Window::new(4, 3);
        let s = from_u_poly("1 - (q + q^2) t + 2 q t^2", w);
        assert_eq!(s.to_text("u"), "1 - (u + u^2)*t + 2*u*t^2 + O(u^4, t^3)");
        let j = s.to_json();
        assert_eq!(TruncSeries2::from_json(&j).unwrap(), s);
    }

    #[test]
    fn laurent_tolerant_assembly() {
        let w = Window::new(4, 3);
        // (q t) * (1 - u t)^{-1} ... u^-1 t (1 + u t + ...) has a surviving u^-1
        let p: LaurentPoly2 = "q t".parse().unwrap();
        let ls = LaurentSeries2::from_poly(&p, w).unwrap();
        assert_eq!(ls.u_floor(), -1);
        let f = TruncSeries2::one(Window::new(5, 3));
        assert!(ls.mul_series(&f).unwrap().into_series().is_err());
        // multiplied by u it becomes a power series
        let g = TruncSeries2::monomial(1, 1, 0, Window::new(5, 3));
        let ok = ls.mul_series(&g).unwrap().into_series().unwrap();
        assert_eq!(ok, TruncSeries2::monomial(1, 0, 1, w));
        assert!(ls.mul_series(&TruncSeries2::one(w)).is_err());
    }

    fn arb_unit_series() -> impl Strategy<Value = TruncSeries2> {
        prop::collection::vec(-3i64..4, 20).prop_map(|v| {
            let w = Window::new(5, 4);
            let mut s = TruncSeries2::zero(w);
            for (k, c) in v.into_iter().enumerate() {
                s.add_to_coeff(k % 5, k / 5, &big(c));
            }
            let c0 = s.coeff(0, 0);
            s.add_to_coeff(0, 0, &(big(1) - c0));
            s
        })
    }

    proptest! {
        #[test]
        fn inverse_is_an_involution(s in arb_unit_series()) {
            let inv = s.inverse().unwrap();
            prop_assert_eq!(inv.inverse().unwrap(), s.clone());
            prop_assert_eq!(inv.mul(&s), TruncSeries2::one(s.window()));
        }

        #[test]
        fn binomial_division_inverts_multiplication(s in arb_unit_series(), a in 0usize..3, b in 0usize..3) {
            prop_assume!(a + b > 0);
            let mut x = s.clone();
            x.mul_binomial(&big(1), a, b);
            x.div_binomial(&big(1), a, b).unwrap();
            prop_assert_eq!(x, s);
        }
    }
}
