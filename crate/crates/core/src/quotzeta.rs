//! Quot zeta functions of the cusp `y^2 = x^(2m+1)` and node `y^2 = x^(2m)`
//! singularities.
//!
//! For a torsion-free module `E` of rank `d` over the local ring `R`, the
//! Quot zeta function `Z_E(t) = Σ_n #Quot_{E,n}(F_q) t^n` factors as
//! `NZ_E(t) / (t;q)_d^s`, where `s` is the number of branches and the
//! numerator `NZ_E` is a polynomial in `q` and `t`. This module gives closed
//! forms for `NZ` when `E` is free (`R^d`) or the normalization
//! (`R̃^d`), plus the checks that tie those forms together.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::{qbinomial, qinv_poch_ratio, qpoch_t, LaurentPoly2};
use crate::hall::{hall_box, hall_skew};
use crate::partitions::{iterate_box, Partition};
use crate::report::{Status, VerificationReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    /// `y^2 = x^(2m+1)`, one branch.
    Cusp,
    /// `y^2 = x^(2m)`, two branches.
    Node,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Cusp => "cusp",
            Kind::Node => "node",
        })
    }
}

impl FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "cusp" => Ok(Kind::Cusp),
            "node" => Ok(Kind::Node),
            other => Err(Error::Parse(format!(
                "unknown family {other:?} (expected cusp or node)"
            ))),
        }
    }
}

/// One member of the cusp or node family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SingularityFamily {
    pub kind: Kind,
    pub m: usize,
}

impl SingularityFamily {
    pub fn new(kind: Kind, m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::Domain("m must be positive".into()));
        }
        Ok(Self { kind, m })
    }

    pub fn cusp(m: usize) -> Self {
        Self::new(Kind::Cusp, m).expect("m >= 1")
    }

    pub fn node(m: usize) -> Self {
        Self::new(Kind::Node, m).expect("m >= 1")
    }

    /// Number of branches.
    pub fn s(&self) -> usize {
        match self.kind {
            Kind::Cusp => 1,
            Kind::Node => 2,
        }
    }

    /// Serre invariant `δ = dim R̃/R`.
    pub fn delta(&self) -> usize {
        self.m
    }

    /// Colength of the conductor in the normalization, `dim R̃/𝔠`.
    ///
    /// The cusp conductor is `(T^2m)`; the node conductor is `(T1^m, T2^m)`,
    /// which has colength `m` on each branch. Both give `2δ`, as they must
    /// for a Gorenstein ring.
    pub fn conductor_colength(&self) -> usize {
        2 * self.m
    }

    /// Upper bound `(2c + s) d` on the `t`-degree of any `NZ_E` of rank `d`.
    pub fn degree_bound(&self, d: usize) -> usize {
        (2 * self.conductor_colength() + self.s()) * d
    }
}

impl fmt::Display for SingularityFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} m={}", self.kind, self.m)
    }
}

/// Which module the numerator belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Module {
    /// `R^d`.
    Free,
    /// `R̃^d`, viewed as an `R`-module.
    Normalization,
}

impl FromStr for Module {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "free" => Ok(Module::Free),
            "normalization" | "norm" => Ok(Module::Normalization),
            other => Err(Error::Parse(format!("unknown module {other:?}"))),
        }
    }
}

impl fmt::Display for Module {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Module::Free => "free",
            Module::Normalization => "normalization",
        })
    }
}

fn hb(m: usize, d: usize, mu: &Partition) -> LaurentPoly2 {
    hall_box(m, d, mu).expect("partition from iterate_box fits the box")
}

fn hs(lambda: &Partition, mu: &Partition) -> LaurentPoly2 {
    hall_skew(lambda, mu).expect("hall_skew is a polynomial")
}

/// Pairs `μ ⊆ λ ⊆ (m^d)`.
fn nested_pairs(m: usize, d: usize) -> impl Iterator<Item = (Partition, Partition)> {
    iterate_box(m, d).flat_map(move |lambda| {
        iterate_box(m, d)
            .filter(|mu| mu.is_subset_of(&lambda))
            .map(|mu| (lambda.clone(), mu))
            .collect::<Vec<_>>()
    })
}

/// `NZ^R_{R̃^d}(t) = Σ_{μ ⊆ (m^d)} g^{(m^d)}_μ(q) (q^d t)^{|μ|}` for the cusp.
///
/// ```
/// use quotzeta::quotzeta::nz_cusp_normalization;
/// assert_eq!(nz_cusp_normalization(1, 1).to_string(), "1 + q*t");
/// assert_eq!(nz_cusp_normalization(1, 2).to_string(), "1 + q^2*t + q^3*t + q^4*t^2");
/// ```
pub fn nz_cusp_normalization(m: usize, d: usize) -> LaurentPoly2 {
    iterate_box(m, d)
        .map(|mu| {
            let k = mu.size() as i64;
            hb(m, d, &mu).shift(d as i64 * k, k)
        })
        .sum()
}

/// `NZ_{R^d}(t)` for the cusp: the normalization numerator at `t^2`.
///
/// ```
/// use quotzeta::quotzeta::nz_cusp_free;
/// assert_eq!(nz_cusp_free(1, 1).to_string(), "1 + q*t^2");
/// ```
pub fn nz_cusp_free(m: usize, d: usize) -> LaurentPoly2 {
    nz_cusp_normalization(m, d).subs_t(1, 0, 2)
}

/// The cusp free numerator before the squaring simplification:
/// `Σ_{μ ⊆ λ ⊆ (m^d)} g^{(m^d)}_λ g^λ_μ (t;q)_{d-λ'_m} t^{|λ|} (q^d t)^{|μ|}`.
///
/// Equal to [`nz_cusp_free`]; the equality is the bounded skew-Cauchy
/// identity checked by [`skew_cauchy_bounded_check`].
pub fn nz_cusp_free_unsimplified(m: usize, d: usize) -> LaurentPoly2 {
    nested_pairs(m, d)
        .map(|(lambda, mu)| {
            let poch = qpoch_t(0, d - lambda.col(m));
            let k = mu.size() as i64;
            let weight = (&hb(m, d, &lambda) * &hs(&lambda, &mu)).shift(d as i64 * k, lambda.size() as i64 + k);
            &weight * &poch
        })
        .sum()
}

/// `NZ^R_{R̃^d}(t)` for the node:
/// `Σ_{μ ⊆ (m^d)} g^{(m^d)}_μ (q^d t)^{|μ|} (q^-1;q^-1)_d / (q^-1;q^-1)_{d-μ'_1}`.
///
/// ```
/// use quotzeta::quotzeta::nz_node_normalization;
/// assert_eq!(nz_node_normalization(1, 1).to_string(), "1 - t + q*t");
/// ```
pub fn nz_node_normalization(m: usize, d: usize) -> LaurentPoly2 {
    let total: LaurentPoly2 = iterate_box(m, d)
        .map(|mu| {
            let k = mu.size() as i64;
            let ratio = qinv_poch_ratio(d, d - mu.col(1));
            &hb(m, d, &mu).shift(d as i64 * k, k) * &ratio
        })
        .sum();
    total
        .assert_polynomial("nz_node_normalization")
        .expect("node normalization numerator is a polynomial")
}

/// `NZ_{R^d}(t)` for the node:
/// `Σ_{μ ⊆ λ ⊆ (m^d)} g^{(m^d)}_λ g^λ_μ (t;q)_{d-λ'_m}^2 t^{|λ|} (q^d t)^{|λ|-|μ|}
///  (q^-1;q^-1)_{λ'_m} / (q^-1;q^-1)_{μ'_m}`.
///
/// ```
/// use quotzeta::quotzeta::nz_node_free;
/// assert_eq!(nz_node_free(1, 1).to_string(), "1 - t + q*t^2");
/// assert_eq!(nz_node_free(2, 1).to_string(), "1 - t + q*t^2 - q*t^3 + q^2*t^4");
/// ```
pub fn nz_node_free(m: usize, d: usize) -> LaurentPoly2 {
    let total: LaurentPoly2 = nested_pairs(m, d)
        .map(|(lambda, mu)| {
            let (lm, mm) = (lambda.col(m), mu.col(m));
            let poch = qpoch_t(0, d - lm);
            let k = (lambda.size() - mu.size()) as i64;
            let weight = (&hb(m, d, &lambda) * &hs(&lambda, &mu)).shift(d as i64 * k, lambda.size() as i64 + k);
            &(&weight * &(&poch * &poch)) * &qinv_poch_ratio(lm, mm)
        })
        .sum();
    total
        .assert_polynomial("nz_node_free")
        .expect("node free numerator is a polynomial")
}

/// The numerator for any family and module.
pub fn nz(family: SingularityFamily, d: usize, module: Module) -> LaurentPoly2 {
    let m = family.m;
    match (family.kind, module) {
        (Kind::Cusp, Module::Free) => nz_cusp_free(m, d),
        (Kind::Cusp, Module::Normalization) => nz_cusp_normalization(m, d),
        (Kind::Node, Module::Free) => nz_node_free(m, d),
        (Kind::Node, Module::Normalization) => nz_node_normalization(m, d),
    }
}

/// A power series in `t` with Laurent-polynomial coefficients in `q`,
/// known below `t^t_prec`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZetaSeries {
    pub poly: LaurentPoly2,
    pub t_prec: usize,
}

impl ZetaSeries {
    /// Coefficient of `t^k` as a polynomial in `q`.
    pub fn coeff(&self, k: usize) -> LaurentPoly2 {
        assert!(k < self.t_prec, "t^{k} is outside the precision t^{}", self.t_prec);
        self.poly.t_coeff(k as i64)
    }

    pub fn coeffs(&self) -> Vec<LaurentPoly2> {
        (0..self.t_prec).map(|k| self.coeff(k)).collect()
    }

    /// The coefficients evaluated at `q = p`.
    pub fn coeffs_at(&self, p: i64) -> Vec<BigInt> {
        self.coeffs()
            .iter()
            .map(|c| c.eval_at(p, 1).expect("polynomial coefficients"))
            .collect()
    }

    /// True when every coefficient is a polynomial in `q` with nonnegative
    /// integer coefficients, as point counts must be.
    pub fn is_point_count(&self) -> bool {
        self.poly.is_polynomial() && self.poly.has_nonnegative_coeffs()
    }
}

impl fmt::Display for ZetaSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + O(t^{})", self.poly.to_t_grouped_string("q", "t"), self.t_prec)
    }
}

/// `Z(t) = NZ(t) / (t;q)_d^s` below `t^t_prec`.
///
/// ```
/// use quotzeta::exactalg::LaurentPoly2;
/// use quotzeta::quotzeta::{full_z, SingularityFamily};
/// let z = full_z(&LaurentPoly2::one(), SingularityFamily::cusp(1), 2, 3);
/// assert_eq!(z.coeff(2).to_string(), "1 + q + q^2");
/// ```
pub fn full_z(nz: &LaurentPoly2, family: SingularityFamily, d: usize, t_prec: usize) -> ZetaSeries {
    let base = normalization_zeta(d, family.s(), t_prec);
    ZetaSeries {
        poly: (nz * &base.poly).truncate_t(t_prec as i64),
        t_prec,
    }
}

/// `1 / (t;q)_d^s` below `t^t_prec`: the Quot zeta function of the
/// normalization as a module over itself. For `s = 1` its coefficients
/// count submodules of `F_q[[T]]^d` by colength (Solomon's formula).
pub fn normalization_zeta(d: usize, s: usize, t_prec: usize) -> ZetaSeries {
    let prec = t_prec as i64;
    let mut acc = LaurentPoly2::one().truncate_t(prec);
    for k in 0..d {
        let geometric: LaurentPoly2 = (0..prec).map(|j| LaurentPoly2::monomial(1, k as i64 * j, j)).sum();
        for _ in 0..s {
            acc = (&acc * &geometric).truncate_t(prec);
        }
    }
    ZetaSeries { poly: acc, t_prec }
}

/// Checks `NZ(t) = (q^{d^2} t^{2d})^δ NZ(q^-d t^-1)` for an arbitrary
/// numerator.
pub fn check_functional_equation(nz: &LaurentPoly2, d: usize, delta: usize) -> VerificationReport {
    let d = d as i64;
    let delta = delta as i64;
    let rhs = nz.subs_t(1, -d, -1).shift(d * d * delta, 2 * d * delta);
    VerificationReport::new("funceq").compare_polys(nz, &rhs)
}

/// The functional equation for the free numerator of `family` in rank `d`.
pub fn funceq_check(family: SingularityFamily, d: usize) -> VerificationReport {
    let start = Instant::now();
    check_functional_equation(&nz(family, d, Module::Free), d, family.delta())
        .param("family", family.kind)
        .param("m", family.m)
        .param("d", d)
        .timed(start)
}

/// Specialization modes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Specialization {
    /// `t = 1`, leaving a polynomial in `q`.
    TEq1,
    /// `q = 1` (the Lefschetz class set to 1), leaving a polynomial in `t`.
    LambdaEq1,
}

pub fn specialize(nz: &LaurentPoly2, mode: Specialization) -> LaurentPoly2 {
    let image = match mode {
        Specialization::TEq1 => (LaurentPoly2::q(), LaurentPoly2::one()),
        Specialization::LambdaEq1 => (LaurentPoly2::one(), LaurentPoly2::t()),
    };
    nz.substitute(&image.0, &image.1).expect("unit monomial images")
}

/// The `q = 1` value of the free numerator predicted by the Euler
/// characteristic: `(Σ_{i<=m} t^{2i})^d` for the cusp and
/// `(Σ_{i<=2m} (-t)^i)^d` for the node.
pub fn euler_specialization(family: SingularityFamily, d: usize) -> LaurentPoly2 {
    let base: LaurentPoly2 = match family.kind {
        Kind::Cusp => (0..=family.m as i64).map(|i| LaurentPoly2::t_pow(2 * i)).sum(),
        Kind::Node => (0..=2 * family.m as i64)
            .map(|i| LaurentPoly2::monomial(if i % 2 == 0 { 1 } else { -1 }, 0, i))
            .sum(),
    };
    base.pow(d as u32)
}

/// Both specializations: `q = 1` of the free numerator against
/// [`euler_specialization`], and for the node the `t = 1` value of both
/// numerators against `q^{m d^2}`.
pub fn special_check(family: SingularityFamily, d: usize) -> VerificationReport {
    let start = Instant::now();
    let free = nz(family, d, Module::Free);
    let mut parts = vec![VerificationReport::new("lambda=1").compare_polys(
        &specialize(&free, Specialization::LambdaEq1),
        &euler_specialization(family, d),
    )];
    if family.kind == Kind::Node {
        let target = LaurentPoly2::q_pow((family.m * d * d) as i64);
        for module in [Module::Free, Module::Normalization] {
            let value = specialize(&nz(family, d, module), Specialization::TEq1);
            parts.push(VerificationReport::new(format!("t=1 {module}")).compare_polys(&value, &target));
        }
    }
    VerificationReport::new("special")
        .param("family", family.kind)
        .param("m", family.m)
        .param("d", d)
        .absorb(parts)
        .timed(start)
}

/// For every `μ ⊆ (m^d)`:
/// `Σ_{μ ⊆ λ ⊆ (m^d)} g^{(m^d)}_λ g^λ_μ t^{|λ|} (t;q)_{d-λ'_m} = g^{(m^d)}_μ t^{|μ|}`.
pub fn skew_cauchy_bounded_check(m: usize, d: usize) -> VerificationReport {
    let start = Instant::now();
    let parts = iterate_box(m, d).map(|mu| {
        let lhs: LaurentPoly2 = iterate_box(m, d)
            .filter(|lambda| mu.is_subset_of(lambda))
            .map(|lambda| {
                let w = (&hb(m, d, &lambda) * &hs(&lambda, &mu)).shift(0, lambda.size() as i64);
                &w * &qpoch_t(0, d - lambda.col(m))
            })
            .sum();
        let rhs = hb(m, d, &mu).shift(0, mu.size() as i64);
        VerificationReport::new("skew-cauchy")
            .param("mu", &mu)
            .compare_polys(&lhs, &rhs)
    });
    VerificationReport::new("squaring-lemma")
        .param("m", m)
        .param("d", d)
        .absorb(parts.collect::<Vec<_>>())
        .timed(start)
}

/// The cusp squaring identity `NZ_{R^d}(t) = NZ^R_{R̃^d}(t^2)`, with the
/// left side taken from the unsimplified double sum.
pub fn cusp_squaring_check(m: usize, d: usize) -> VerificationReport {
    let start = Instant::now();
    let lhs = nz_cusp_free_unsimplified(m, d);
    let rhs = nz_cusp_normalization(m, d).subs_t(1, 0, 2);
    VerificationReport::new("squaring")
        .param("m", m)
        .param("d", d)
        .compare_polys(&lhs, &rhs)
        .timed(start)
}

/// Compares `NZ^R_{R̃^d}(t^2)` with `NZ^R_{R̃^d}(t)|_{q -> q t}` for the cusp.
///
/// The two agree for `d = 1` and differ for every `d >= 2`; the check passes
/// when that expectation holds.
pub fn t2_check(m: usize, d: usize) -> VerificationReport {
    let start = Instant::now();
    let norm = nz_cusp_normalization(m, d);
    let squared = norm.subs_t(1, 0, 2);
    let shifted = norm
        .substitute(&LaurentPoly2::monomial(1, 1, 1), &LaurentPoly2::t())
        .expect("unit monomial");
    let same = squared == shifted;
    let expect_same = d <= 1;
    let mut r = VerificationReport::new("t2").param("m", m).param("d", d);
    r.lhs = Some(squared.to_string());
    r.rhs = Some(shifted.to_string());
    if same != expect_same {
        let loc = crate::report::first_difference(&squared, &shifted).unwrap_or((0, 0));
        r = r.fail_at(loc);
    }
    r.detail(if expect_same {
        "expected equal"
    } else {
        "expected different"
    })
    .timed(start)
}

/// `Σ_{r=0}^d (-1)^r q^{C(r,2)} t^r [d r]_q (t q^{d-r+1}; q)_r`, the free
/// numerator of `y^2 = x^2` in rank `d`.
///
/// ```
/// use quotzeta::quotzeta::node22_closed_form;
/// assert_eq!(node22_closed_form(1).to_string(), "1 - t + q*t^2");
/// ```
pub fn node22_closed_form(d: usize) -> LaurentPoly2 {
    (0..=d)
        .map(|r| {
            let sign = if r % 2 == 0 { 1 } else { -1 };
            let binom = qbinomial(d, r).expect("r <= d");
            let poch = qpoch_t((d - r + 1) as i64, r);
            (&binom * &poch)
                .shift((r * r.saturating_sub(1) / 2) as i64, r as i64)
                .scale(&BigInt::from(sign))
        })
        .sum()
}

pub fn node22_check(d: usize) -> VerificationReport {
    let start = Instant::now();
    VerificationReport::new("node22")
        .param("d", d)
        .compare_polys(&node22_closed_form(d), &nz_node_free(1, d))
        .timed(start)
}

/// The `m -> ∞` limit of the free numerator, as a power series in `q` and
/// `t`, restricted to `q^a t^b` with `a < q_prec`, `b < t_prec`:
/// `1/(q^d t^2; q)_d` for the cusp and `(t;q)_d/(q^d t^2; q)_d` for the node.
pub fn m_limit(kind: Kind, d: usize, q_prec: usize, t_prec: usize) -> LaurentPoly2 {
    let (qp, tp) = (q_prec as i64, t_prec as i64);
    let clip = |p: LaurentPoly2| p.filter(|a, b| a < qp && b < tp);
    let mut acc = match kind {
        Kind::Cusp => LaurentPoly2::one(),
        Kind::Node => qpoch_t(0, d),
    };
    for k in 0..d as i64 {
        let step = d as i64 + k;
        let geometric: LaurentPoly2 = (0..)
            .map(|j| (step * j, 2 * j))
            .take_while(|&(a, b)| a < qp && b < tp)
            .map(|(a, b)| LaurentPoly2::monomial(1, a, b))
            .sum();
        acc = clip(&acc * &geometric);
    }
    clip(acc)
}

/// Checks that the low-order coefficients of the free numerator stabilize
/// as `m` grows and agree with [`m_limit`] on the window. The reported
/// `stable_from` parameter is the least `m` from which every computed
/// numerator agrees with the limit.
pub fn m_limit_check(kind: Kind, d: usize, q_prec: usize, t_prec: usize, m_max: usize) -> VerificationReport {
    let start = Instant::now();
    let limit = m_limit(kind, d, q_prec, t_prec);
    let (qp, tp) = (q_prec as i64, t_prec as i64);
    let window: Vec<(usize, LaurentPoly2)> = (1..=m_max.max(2))
        .map(|m| {
            let p = nz(SingularityFamily::new(kind, m).expect("m >= 1"), d, Module::Free);
            (m, p.filter(|a, b| a < qp && b < tp))
        })
        .collect();
    let stable_from = window
        .iter()
        .rev()
        .take_while(|(_, p)| *p == limit)
        .last()
        .map(|(m, _)| *m);
    let (last_m, last) = window.last().expect("nonempty");
    let (_, prev) = &window[window.len() - 2];
    let mut r = VerificationReport::new("mlimit")
        .param("family", kind)
        .param("d", d)
        .param("window", format!("(q^{q_prec}, t^{t_prec})"))
        .param("m_max", last_m)
        .compare_polys(prev, last);
    if r.passed() {
        r = r.compare_polys(last, &limit);
    }
    match stable_from {
        Some(m) => r.param("stable_from", m),
        None => r.detail("no stabilization within m_max"),
    }
    .timed(start)
}

/// Diagnostic scan: does the free numerator at `-t` have nonnegative
/// coefficients? Never a failure; status is `reported` when a negative
/// coefficient shows up, with its exponent as the locator.
pub fn positivity_scan(family: SingularityFamily, d: usize) -> VerificationReport {
    let start = Instant::now();
    let p = nz(family, d, Module::Free).subs_t(-1, 0, 1);
    let mut r = VerificationReport::new("positivity")
        .param("family", family.kind)
        .param("m", family.m)
        .param("d", d);
    r.lhs = Some(p.to_string());
    if let Some(((a, b), c)) = p.terms().find(|(_, c)| c.is_negative()) {
        r.status = Status::Reported;
        r.discrepancy = Some((a, b));
        r.detail = Some(format!("coefficient {c} at q^{a} t^{b}"));
    }
    r.timed(start)
}

/// The `t`-degree of each numerator is at most `(2c + s) d`.
pub fn degree_bound_check(family: SingularityFamily, d: usize) -> VerificationReport {
    let bound = family.degree_bound(d) as i64;
    let degrees: Vec<i64> = [Module::Free, Module::Normalization]
        .iter()
        .map(|&module| nz(family, d, module).t_degree())
        .collect();
    let mut r = VerificationReport::new("degree-bound")
        .param("family", family.kind)
        .param("m", family.m)
        .param("d", d)
        .detail(format!("degrees {degrees:?}, bound {bound}"));
    if let Some(&deg) = degrees.iter().find(|&&x| x > bound) {
        r = r.fail_at((0, deg));
    }
    r
}

/// The full zeta function `Z(t)` as a sanity check: every coefficient must
/// be a polynomial in `q` with nonnegative coefficients.
pub fn point_count_check(family: SingularityFamily, d: usize, module: Module, t_prec: usize) -> VerificationReport {
    let z = full_z(&nz(family, d, module), family, d, t_prec);
    let mut r = VerificationReport::new("point-count")
        .param("family", family.kind)
        .param("m", family.m)
        .param("d", d)
        .param("module", module);
    if let Some(((a, b), _)) = z.poly.terms().find(|((a, _), c)| *a < 0 || c.is_negative()) {
        r = r.fail_at((a, b));
    }
    r.lhs = Some(z.to_string());
    r
}

/// Constant term sanity: every numerator starts with 1.
pub fn constant_term(nz: &LaurentPoly2) -> bool {
    nz.t_coeff(0).is_one() && nz.coeff(0, 0).is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPoly2 {
        s.parse().unwrap()
    }

    #[test]
    fn family_invariants() {
        let c = SingularityFamily::cusp(2);
        assert_eq!(
            (c.s(), c.delta(), c.conductor_colength(), c.degree_bound(1)),
            (1, 2, 4, 9)
        );
        let n = SingularityFamily::node(1);
        assert_eq!(
            (n.s(), n.delta(), n.conductor_colength(), n.degree_bound(2)),
            (2, 1, 2, 12)
        );
        assert!(SingularityFamily::new(Kind::Node, 0).is_err());
        assert_eq!("Node".parse::<Kind>().unwrap(), Kind::Node);
    }

    #[test]
    fn small_numerators() {
        for m in 1..=3 {
            for kind in [Kind::Cusp, Kind::Node] {
                for module in [Module::Free, Module::Normalization] {
                    assert!(nz(SingularityFamily::new(kind, m).unwrap(), 0, module).is_one());
                }
            }
        }
        assert_eq!(nz_cusp_normalization(1, 2), p("1 + (q^3 + q^2) t + q^4 t^2"));
        assert_eq!(nz_node_normalization(1, 1), p("1 + (q - 1) t"));
        assert_eq!(nz_node_free(1, 1), p("1 - t + q t^2"));
        assert_eq!(nz_node_free(2, 1), p("1 - t + q t^2 - q t^3 + q^2 t^4"));
    }

    #[test]
    fn full_z_examples() {
        let one = LaurentPoly2::one();
        let z = full_z(&one, SingularityFamily::cusp(1), 1, 3);
        assert_eq!(z.coeffs(), vec![one.clone(), one.clone(), one.clone()]);
        let z = full_z(&nz_node_free(1, 1), SingularityFamily::node(1), 1, 5);
        // (1 - t + q t^2) / (1 - t)^2
        assert_eq!(z.coeffs(), vec![p("1"), p("1"), p("1 + q"), p("1 + 2 q"), p("1 + 3 q")]);
        assert!(z.is_point_count());
    }

    #[test]
    fn funceq_small() {
        for kind in [Kind::Cusp, Kind::Node] {
            for m in 1..=2 {
                for d in 0..=2 {
                    let r = funceq_check(SingularityFamily::new(kind, m).unwrap(), d);
                    assert!(r.passed(), "{}", r.to_text());
                }
            }
        }
    }

    #[test]
    fn funceq_detects_a_flipped_coefficient() {
        let mut nz = nz_node_free(2, 2);
        nz += &LaurentPoly2::monomial(1, 3, 2);
        let r = check_functional_equation(&nz, 2, 2);
        assert_eq!(r.status, Status::Fail);
        assert!(r.discrepancy.is_some());
    }

    #[test]
    fn specializations() {
        assert_eq!(specialize(&nz_node_free(1, 2), Specialization::TEq1), p("q^4"));
        assert_eq!(specialize(&nz_cusp_free(1, 1), Specialization::LambdaEq1), p("1 + t^2"));
        assert_eq!(
            specialize(&nz_node_free(1, 1), Specialization::LambdaEq1),
            p("1 - t + t^2")
        );
        for kind in [Kind::Cusp, Kind::Node] {
            for d in 0..=2 {
                let r = special_check(SingularityFamily::new(kind, 2).unwrap(), d);
                assert!(r.passed(), "{}", r.to_text());
            }
        }
    }

    #[test]
    fn squaring_and_skew_cauchy() {
        for m in 1..=2 {
            for d in 0..=2 {
                assert!(cusp_squaring_check(m, d).passed());
                assert!(skew_cauchy_bounded_check(m, d).passed());
            }
        }
    }

    #[test]
    fn t2_expectations() {
        let r = t2_check(1, 1);
        assert!(r.passed(), "{}", r.to_text());
        let r = t2_check(1, 2);
        assert!(r.passed(), "{}", r.to_text());
        let norm = nz_cusp_normalization(1, 2);
        let shifted = norm.substitute(&p("q t"), &p("t")).unwrap();
        assert_ne!(norm.subs_t(1, 0, 2), shifted);
    }

    #[test]
    fn node22_small() {
        assert!(node22_closed_form(0).is_one());
        assert_eq!(node22_closed_form(2), nz_node_free(1, 2));
        assert_eq!(nz_node_free(1, 2).t_coeff(1), p("-1 - q"));
    }

    #[test]
    fn limits() {
        assert!(m_limit(Kind::Node, 0, 4, 4).is_one());
        assert_eq!(m_limit(Kind::Node, 1, 4, 5), p("1 - t + q t^2 - q t^3 + q^2 t^4"));
        assert_eq!(m_limit(Kind::Cusp, 1, 3, 5), p("1 + q t^2 + q^2 t^4"));
        let r = m_limit_check(Kind::Node, 1, 3, 4, 4);
        assert!(r.passed(), "{}", r.to_text());
        assert_eq!(r.params["stable_from"], "2");
        assert!(m_limit_check(Kind::Cusp, 2, 4, 5, 3).passed());
    }

    #[test]
    fn positivity_and_degree() {
        assert_eq!(positivity_scan(SingularityFamily::node(1), 1).status, Status::Pass);
        assert_eq!(positivity_scan(SingularityFamily::node(2), 1).status, Status::Pass);
        for kind in [Kind::Cusp, Kind::Node] {
            for d in 0..=2 {
                let f = SingularityFamily::new(kind, 2).unwrap();
                assert!(degree_bound_check(f, d).passed());
                assert!(point_count_check(f, d, Module::Free, 5).passed());
                assert!(point_count_check(f, d, Module::Normalization, 5).passed());
                assert!(constant_term(&nz(f, d, Module::Free)));
            }
        }
    }
}
