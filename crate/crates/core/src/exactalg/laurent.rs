use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An exponent pair `(e_q, e_t)`.
pub type Exp = (i64, i64);

/// A Laurent polynomial in `q` and `t` with big-integer coefficients.
///
/// Terms are kept in a `BTreeMap` keyed by `(e_q, e_t)`, so iteration order
/// is the canonical ascending lexicographic order. Zero coefficients are
/// never stored, which makes derived equality structural equality.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly2 {
    terms: BTreeMap<Exp, BigInt>,
}

impl LaurentPoly2 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0, 0)
    }

    /// `c * q^eq * t^et`.
    pub fn monomial(c: impl Into<BigInt>, eq: i64, et: i64) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((eq, et), c);
        }
        Self { terms }
    }

    pub fn q() -> Self {
        Self::monomial(1, 1, 0)
    }

    pub fn t() -> Self {
        Self::monomial(1, 0, 1)
    }

    /// `q^e`.
    pub fn q_pow(e: i64) -> Self {
        Self::monomial(1, e, 0)
    }

    /// `t^e`.
    pub fn t_pow(e: i64) -> Self {
        Self::monomial(1, 0, e)
    }

    /// Builds a polynomial from `(e_q, e_t, c)` triples; repeated exponents
    /// are summed.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, i64, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (eq, et, c) in terms {
            p.add_term((eq, et), c.into());
        }
        p
    }

    /// Univariate polynomial in `q` from dense coefficients `c_0, c_1, ...`.
    pub fn from_q_coeffs(coeffs: &[BigInt]) -> Self {
        let mut p = Self::zero();
        for (i, c) in coeffs.iter().enumerate() {
            p.add_term((i as i64, 0), c.clone());
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0)).is_some_and(|c| c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (Exp, &BigInt)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, eq: i64, et: i64) -> BigInt {
        self.terms.get(&(eq, et)).cloned().unwrap_or_default()
    }

    pub(crate) fn add_term(&mut self, e: Exp, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// The coefficient of `t^j`, as a polynomial in `q` alone.
    pub fn t_coeff(&self, j: i64) -> LaurentPoly2 {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|((_, et), _)| *et == j)
                .map(|((eq, _), c)| ((*eq, 0), c.clone()))
                .collect(),
        }
    }

    /// Smallest and largest `t`-exponents, or `None` for the zero polynomial.
    pub fn t_range(&self) -> Option<(i64, i64)> {
        let mut it = self.terms.keys().map(|(_, et)| *et);
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), e| (lo.min(e), hi.max(e))))
    }

    /// Smallest and largest `q`-exponents, or `None` for the zero polynomial.
    pub fn q_range(&self) -> Option<(i64, i64)> {
        let lo = self.terms.keys().next()?.0;
        let hi = self.terms.keys().next_back()?.0;
        Some((lo, hi))
    }

    /// Degree in `t` (the zero polynomial has degree `-1` by convention here).
    pub fn t_degree(&self) -> i64 {
        self.t_range().map_or(-1, |(_, hi)| hi)
    }

    /// True if no exponent is negative.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|&(eq, et)| eq >= 0 && et >= 0)
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// Errors with `what` in the message unless the result lies in `Z[q,t]`.
    pub fn assert_polynomial(self, what: &str) -> Result<Self> {
        if let Some((&e, _)) = self.terms.iter().find(|((eq, et), _)| *eq < 0 || *et < 0) {
            return Err(Error::InternalInvariant(format!(
                "{what}: negative exponent (q^{}, t^{}) in {self}",
                e.0, e.1
            )));
        }
        Ok(self)
    }

    /// Drops every term with `t`-exponent `>= t_prec`.
    pub fn truncate_t(&self, t_prec: i64) -> Self {
        self.filter(|_, et| et < t_prec)
    }

    /// Keeps only the terms for which `keep(e_q, e_t)` holds.
    pub fn filter(&self, keep: impl Fn(i64, i64) -> bool) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|((eq, et), _)| keep(*eq, *et))
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
        }
    }

    /// Multiplies by `q^a t^b`.
    pub fn shift(&self, a: i64, b: i64) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|((eq, et), c)| ((eq + a, et + b), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, c)| (*e, c * k)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = &result * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// If `self` is a single term `c * q^a * t^b`, returns `(c, a, b)`.
    pub fn as_monomial(&self) -> Option<(&BigInt, i64, i64)> {
        if self.terms.len() != 1 {
            return None;
        }
        let (&(a, b), c) = self.terms.iter().next()?;
        Some((c, a, b))
    }

    /// Integer power, allowing negative exponents for unit monomials.
    pub fn pow_i64(&self, e: i64) -> Result<Self> {
        if e >= 0 {
            let e = u32::try_from(e).map_err(|_| Error::Domain(format!("exponent {e} too large")))?;
            return Ok(self.pow(e));
        }
        match self.as_monomial() {
            Some((c, a, b)) if c.abs().is_one() => {
                let sign = if c.is_negative() && e.is_odd() { -1 } else { 1 };
                Ok(Self::monomial(sign, a * e, b * e))
            }
            _ => Err(Error::Domain(format!("negative power of non-unit-monomial {self}"))),
        }
    }

    /// Substitutes `q -> q_image`, `t -> t_image`.
    ///
    /// Both images must be monomials with coefficient `±1`; `q -> 1` is the
    /// monomial `1` and is allowed.
    pub fn substitute(&self, q_image: &LaurentPoly2, t_image: &LaurentPoly2) -> Result<Self> {
        let unit = |p: &LaurentPoly2, name: &str| -> Result<(bool, i64, i64)> {
            match p.as_monomial() {
                Some((c, a, b)) if c.abs().is_one() => Ok((c.is_negative(), a, b)),
                _ => Err(Error::UnsupportedSubstitution(format!(
                    "{name} image {p} is not a unit monomial"
                ))),
            }
        };
        let (qneg, qa, qb) = unit(q_image, "q")?;
        let (tneg, ta, tb) = unit(t_image, "t")?;
        let mut out = Self::zero();
        for (&(eq, et), c) in &self.terms {
            let flip = (qneg && eq.is_odd()) ^ (tneg && et.is_odd());
            let c = if flip { -c } else { c.clone() };
            out.add_term((qa * eq + ta * et, qb * eq + tb * et), c);
        }
        Ok(out)
    }

    /// Shorthand for the substitution `t -> c * q^a * t^b` (with `q` fixed).
    pub fn subs_t(&self, sign: i32, a: i64, b: i64) -> Self {
        self.substitute(&Self::q(), &Self::monomial(sign, a, b))
            .expect("unit monomial substitution")
    }

    /// Evaluates at integer `q` and rational `t`.
    pub fn eval_int(&self, q_val: &BigInt, t_val: &BigRational) -> Result<BigRational> {
        let q = BigRational::from_integer(q_val.clone());
        let mut acc = BigRational::zero();
        for (&(eq, et), c) in &self.terms {
            let qp = rational_pow(&q, eq, "q")?;
            let tp = rational_pow(t_val, et, "t")?;
            acc += BigRational::from_integer(c.clone()) * qp * tp;
        }
        Ok(acc)
    }

    /// Evaluates at integer `q` and `t`, requiring an integral result.
    pub fn eval_at(&self, q_val: i64, t_val: i64) -> Result<BigInt> {
        let r = self.eval_int(&BigInt::from(q_val), &BigRational::from_integer(t_val.into()))?;
        if !r.is_integer() {
            return Err(Error::Domain(format!("value {r} is not an integer")));
        }
        Ok(r.to_integer())
    }

    /// Renders with the given variable names instead of `q` and `t`.
    pub fn to_string_with(&self, qv: &str, tv: &str) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (&(eq, et), c)) in self.terms.iter().enumerate() {
            push_signed(&mut out, i == 0, c.is_negative());
            out.push_str(&format_term(&c.abs(), &[(qv, eq), (tv, et)]));
        }
        out
    }

    /// Renders grouped by powers of `t`, each group's `q`-coefficients in
    /// ascending order, e.g. `1 - (1 + q)*t + q^2*t^2`. A group whose
    /// coefficients are all negative is printed with a leading minus. A
    /// leading `t^0` group is printed without parentheses.
    pub fn to_t_grouped_string(&self, qv: &str, tv: &str) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut groups: BTreeMap<i64, LaurentPoly2> = BTreeMap::new();
        for (&(eq, et), c) in &self.terms {
            groups.entry(et).or_default().add_term((eq, 0), c.clone());
        }
        let mut out = String::new();
        for (i, (et, g)) in groups.iter().enumerate() {
            let first = i == 0;
            if let Some((c, eq, _)) = g.as_monomial() {
                push_signed(&mut out, first, c.is_negative());
                out.push_str(&format_term(&c.abs(), &[(qv, eq), (tv, *et)]));
                continue;
            }
            if first && *et == 0 {
                out.push_str(&g.to_string_with(qv, tv));
                continue;
            }
            let negative = g.terms.values().all(|c| c.is_negative());
            push_signed(&mut out, first, negative);
            let inner = if negative { -g.clone() } else { g.clone() };
            out.push('(');
            out.push_str(&inner.to_string_with(qv, tv));
            out.push(')');
            match *et {
                0 => {}
                1 => {
                    out.push('*');
                    out.push_str(tv);
                }
                e => out.push_str(&format!("*{tv}^{e}")),
            }
        }
        out
    }

    /// The JSON form `{"vars":["q","t"],"terms":[[a,b,"c"],...]}`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("serializable")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))
    }
}

fn rational_pow(base: &BigRational, e: i64, name: &str) -> Result<BigRational> {
    if e == 0 {
        return Ok(BigRational::one());
    }
    if base.is_zero() {
        if e < 0 {
            return Err(Error::Domain(format!("{name} = 0 with negative exponent {e}")));
        }
        return Ok(BigRational::zero());
    }
    let e32 = i32::try_from(e).map_err(|_| Error::Domain(format!("exponent {e} too large")))?;
    Ok(num_traits::Pow::pow(base, e32))
}

fn push_signed(out: &mut String, first: bool, negative: bool) {
    match (first, negative) {
        (true, true) => out.push('-'),
        (true, false) => {}
        (false, true) => out.push_str(" - "),
        (false, false) => out.push_str(" + "),
    }
}

fn format_term(abs_c: &BigInt, vars: &[(&str, i64)]) -> String {
    let factors: Vec<String> = vars
        .iter()
        .filter(|(_, e)| *e != 0)
        .map(|(v, e)| if *e == 1 { v.to_string() } else { format!("{v}^{e}") })
        .collect();
    if factors.is_empty() {
        abs_c.to_string()
    } else if abs_c.is_one() {
        factors.join("*")
    } else {
        format!("{abs_c}*{}", factors.join("*"))
    }
}

impl fmt::Display for LaurentPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with("q", "t"))
    }
}

impl fmt::Debug for LaurentPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly2({self})")
    }
}

impl From<i64> for LaurentPoly2 {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

impl From<BigInt> for LaurentPoly2 {
    fn from(c: BigInt) -> Self {
        Self::constant(c)
    }
}

impl Add<&LaurentPoly2> for &LaurentPoly2 {
    type Output = LaurentPoly2;
    fn add(self, rhs: &LaurentPoly2) -> LaurentPoly2 {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&LaurentPoly2> for LaurentPoly2 {
    fn add_assign(&mut self, rhs: &LaurentPoly2) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl SubAssign<&LaurentPoly2> for LaurentPoly2 {
    fn sub_assign(&mut self, rhs: &LaurentPoly2) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, -c);
        }
    }
}

impl Sub<&LaurentPoly2> for &LaurentPoly2 {
    type Output = LaurentPoly2;
    fn sub(self, rhs: &LaurentPoly2) -> LaurentPoly2 {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for LaurentPoly2 {
    type Output = LaurentPoly2;
    fn neg(mut self) -> LaurentPoly2 {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Neg for &LaurentPoly2 {
    type Output = LaurentPoly2;
    fn neg(self) -> LaurentPoly2 {
        -self.clone()
    }
}

impl Mul<&LaurentPoly2> for &LaurentPoly2 {
    type Output = LaurentPoly2;
    fn mul(self, rhs: &LaurentPoly2) -> LaurentPoly2 {
        let mut out = LaurentPoly2::zero();
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &rhs.terms {
                out.add_term((a1 + a2, b1 + b2), c1 * c2);
            }
        }
        out
    }
}

impl MulAssign<&LaurentPoly2> for LaurentPoly2 {
    fn mul_assign(&mut self, rhs: &LaurentPoly2) {
        *self = &*self * rhs;
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<LaurentPoly2> for LaurentPoly2 {
            type Output = LaurentPoly2;
            fn $m(self, rhs: LaurentPoly2) -> LaurentPoly2 {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&LaurentPoly2> for LaurentPoly2 {
            type Output = LaurentPoly2;
            fn $m(self, rhs: &LaurentPoly2) -> LaurentPoly2 {
                (&self).$m(rhs)
            }
        }
        impl $tr<LaurentPoly2> for &LaurentPoly2 {
            type Output = LaurentPoly2;
            fn $m(self, rhs: LaurentPoly2) -> LaurentPoly2 {
                self.$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl std::iter::Sum for LaurentPoly2 {
    fn sum<I: Iterator<Item = LaurentPoly2>>(iter: I) -> Self {
        let mut acc = LaurentPoly2::zero();
        for p in iter {
            acc += &p;
        }
        acc
    }
}

impl std::iter::Product for LaurentPoly2 {
    fn product<I: Iterator<Item = LaurentPoly2>>(iter: I) -> Self {
        let mut acc = LaurentPoly2::one();
        for p in iter {
            acc = &acc * &p;
        }
        acc
    }
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    vars: (String, String),
    terms: Vec<(i64, i64, String)>,
}

impl Serialize for LaurentPoly2 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyJson {
            vars: ("q".into(), "t".into()),
            terms: self.terms.iter().map(|(&(a, b), c)| (a, b, c.to_string())).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly2 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = PolyJson::deserialize(d)?;
        if raw.vars.0 != "q" || raw.vars.1 != "t" {
            return Err(serde::de::Error::custom("vars must be [\"q\",\"t\"]"));
        }
        let mut p = LaurentPoly2::zero();
        for (a, b, c) in raw.terms {
            let c: BigInt = c.parse().map_err(serde::de::Error::custom)?;
            p.add_term((a, b), c);
        }
        Ok(p)
    }
}

// ---------------------------------------------------------------------------
// Parsing.
//
// Accepts the canonical text form and, more generally, integer expressions in
// `q` and `t` built from `+ - *`, parentheses, `^` with an integer exponent,
// and juxtaposition as multiplication (`2q^3 t`, `(q+1) t^2`). Braces may be
// used for exponents (`q^{10}`).

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Var(char),
    Plus,
    Minus,
    Star,
    Caret,
    Open,
    Close,
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let mut toks = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' | '\r' => {}
            '+' => toks.push(Tok::Plus),
            '-' => toks.push(Tok::Minus),
            '*' => toks.push(Tok::Star),
            '^' => toks.push(Tok::Caret),
            '(' | '{' => toks.push(Tok::Open),
            ')' | '}' => toks.push(Tok::Close),
            'q' | 't' => toks.push(Tok::Var(c)),
            '0'..='9' => {
                let start = i;
                while i + 1 < chars.len() && chars[i + 1].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..=i].iter().collect();
                toks.push(Tok::Num(digits.parse().expect("ascii digits")));
            }
            _ => return Err(Error::Parse(format!("unexpected character {c:?} in {s:?}"))),
        }
        i += 1;
    }
    Ok(toks)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<LaurentPoly2> {
        let mut acc = LaurentPoly2::zero();
        let mut negative = false;
        match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                negative = true;
            }
            Some(Tok::Plus) => {
                self.bump();
            }
            _ => {}
        }
        loop {
            let term = self.term()?;
            if negative {
                acc -= &term;
            } else {
                acc += &term;
            }
            match self.peek() {
                Some(Tok::Plus) => negative = false,
                Some(Tok::Minus) => negative = true,
                _ => return Ok(acc),
            }
            self.bump();
        }
    }

    fn term(&mut self) -> Result<LaurentPoly2> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                }
                Some(Tok::Num(_) | Tok::Var(_) | Tok::Open) => {}
                _ => return Ok(acc),
            }
            let rhs = self.power()?;
            acc = &acc * &rhs;
        }
    }

    fn power(&mut self) -> Result<LaurentPoly2> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.bump();
        let e = self.exponent()?;
        base.pow_i64(e)
    }

    fn exponent(&mut self) -> Result<i64> {
        let wrapped = self.peek() == Some(&Tok::Open);
        if wrapped {
            self.bump();
        }
        let negative = self.peek() == Some(&Tok::Minus);
        if negative {
            self.bump();
        }
        let n = match self.bump() {
            Some(Tok::Num(n)) => i64::try_from(n).map_err(|_| Error::Parse("exponent too large".into()))?,
            other => return Err(Error::Parse(format!("expected exponent, found {other:?}"))),
        };
        if wrapped && self.bump() != Some(Tok::Close) {
            return Err(Error::Parse("unclosed exponent".into()));
        }
        Ok(if negative { -n } else { n })
    }

    fn atom(&mut self) -> Result<LaurentPoly2> {
        match self.bump() {
            Some(Tok::Num(n)) => Ok(LaurentPoly2::constant(n)),
            Some(Tok::Var('q')) => Ok(LaurentPoly2::q()),
            Some(Tok::Var(_)) => Ok(LaurentPoly2::t()),
            Some(Tok::Open) => {
                let inner = self.expr()?;
                if self.bump() != Some(Tok::Close) {
                    return Err(Error::Parse("unbalanced parenthesis".into()));
                }
                Ok(inner)
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

impl FromStr for LaurentPoly2 {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let toks = tokenize(s)?;
        if toks.is_empty() {
            return Err(Error::Parse("empty input".into()));
        }
        let mut p = Parser { toks, pos: 0 };
        let out = p.expr()?;
        if p.pos != p.toks.len() {
            return Err(Error::Parse(format!("trailing input in {s:?}")));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> LaurentPoly2 {
        s.parse().unwrap()
    }

    #[test]
    fn canonical_text() {
        let x = LaurentPoly2::from_terms([(1, 2, 1), (0, 1, -1), (0, 0, 1)]);
        assert_eq!(x.to_string(), "1 - t + q*t^2");
        assert_eq!(LaurentPoly2::zero().to_string(), "0");
        assert_eq!(LaurentPoly2::monomial(-3, -1, 2).to_string(), "-3*q^-1*t^2");
        assert_eq!(LaurentPoly2::constant(-1).to_string(), "-1");
    }

    #[test]
    fn parse_accepts_typeset_forms() {
        assert_eq!(
            p("1-(q+1) t+(q^3+q^2+q) t^2"),
            p("1 - t - q*t + q*t^2 + q^2*t^2 + q^3*t^2")
        );
        assert_eq!(p("2q^{10}"), LaurentPoly2::monomial(2, 10, 0));
        assert_eq!(p("q^-2 t^(-1)"), LaurentPoly2::monomial(1, -2, -1));
        assert_eq!(p("-(1 - q)^2"), p("-1 + 2*q - q^2"));
        assert!("(q+1)^-1".parse::<LaurentPoly2>().is_err());
        assert!("1 +".parse::<LaurentPoly2>().is_err());
        assert!("x".parse::<LaurentPoly2>().is_err());
    }

    #[test]
    fn grouped_text() {
        let x = p("1 - (1 + q)*t + (q + q^2 + q^3)*t^2 - (q^2 + q^3)*t^3 + q^4*t^4");
        assert_eq!(
            x.to_t_grouped_string("q", "t"),
            "1 - (1 + q)*t + (q + q^2 + q^3)*t^2 - (q^2 + q^3)*t^3 + q^4*t^4"
        );
        assert_eq!(p("1 - t + q t").to_t_grouped_string("q", "t"), "1 + (-1 + q)*t");
        assert_eq!(p("-q - q^2").to_t_grouped_string("q", "t"), "-q - q^2");
        assert_eq!(p("-q - q^2 + t").to_t_grouped_string("q", "t"), "-q - q^2 + t");
    }

    #[test]
    fn substitution_examples() {
        let x = p("1 - t + q*t^2");
        let img = LaurentPoly2::monomial(1, -1, -1);
        assert_eq!(
            x.substitute(&LaurentPoly2::q(), &img).unwrap(),
            p("1 - q^-1*t^-1 + q^-1*t^-2")
        );
        assert_eq!(x.substitute(&LaurentPoly2::q(), &LaurentPoly2::t()).unwrap(), x);
        assert_eq!(
            LaurentPoly2::t().substitute(&LaurentPoly2::q(), &p("t^2")).unwrap(),
            p("t^2")
        );
        assert_eq!(x.subs_t(-1, 0, 1), p("1 + t + q t^2"));
        let bad = x.substitute(&LaurentPoly2::q(), &p("1 + t"));
        assert!(matches!(bad, Err(Error::UnsupportedSubstitution(_))));
        assert!(x.substitute(&p("2q"), &LaurentPoly2::t()).is_err());
    }

    #[test]
    fn evaluation() {
        let r = |n: i64| BigRational::from_integer(n.into());
        assert_eq!(p("1 + q t").eval_int(&2.into(), &r(1)).unwrap(), r(3));
        assert_eq!(p("q - 1").eval_int(&3.into(), &r(0)).unwrap(), r(2));
        assert_eq!(p("1 - t + q t^2").eval_int(&2.into(), &r(1)).unwrap(), r(2));
        assert!(p("t^-1").eval_int(&2.into(), &r(0)).is_err());
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(p("q^-1 + t").eval_int(&2.into(), &half).unwrap(), r(1));
    }

    #[test]
    fn json_form() {
        let x = p("1 - t + q*t^2");
        let j = x.to_json();
        assert_eq!(
            j.to_string(),
            r#"{"terms":[[0,0,"1"],[0,1,"-1"],[1,2,"1"]],"vars":["q","t"]}"#
        );
        assert_eq!(LaurentPoly2::from_json(&j).unwrap(), x);
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly2> {
        prop::collection::vec((-4i64..5, -3i64..4, -20i64..21), 0..8).prop_map(LaurentPoly2::from_terms)
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn text_round_trip(a in arb_poly()) {
            prop_assert_eq!(a.to_string().parse::<LaurentPoly2>().unwrap(), a.clone());
            prop_assert_eq!(a.to_t_grouped_string("q", "t").parse::<LaurentPoly2>().unwrap(), a);
        }

        #[test]
        fn json_round_trip(a in arb_poly()) {
            prop_assert_eq!(LaurentPoly2::from_json(&a.to_json()).unwrap(), a);
        }

        #[test]
        fn substitution_is_a_ring_map(a in arb_poly(), b in arb_poly(), e in -2i64..3, f in -2i64..3) {
            let q = LaurentPoly2::q();
            let img = LaurentPoly2::monomial(-1, e, f);
            let s = |x: &LaurentPoly2| x.substitute(&q, &img).unwrap();
            prop_assert_eq!(s(&(&a * &b)), &s(&a) * &s(&b));
            prop_assert_eq!(s(&(&a + &b)), &s(&a) + &s(&b));
        }
    }
}
