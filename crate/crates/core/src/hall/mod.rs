//! Hall polynomials.
//!
//! `g^λ_{μν}(q)` counts submodules of type `μ` and cotype `ν` in a finite
//! module of type `λ` over a discrete valuation ring with residue field of
//! size `q`. The summed version `g^λ_μ = Σ_ν g^λ_{μν}` and the box case
//! `g^{(m^d)}_μ` have closed forms ([`hall_skew`], [`hall_box`]); the general
//! constant comes from Hall-Littlewood structure constants
//! ([`hall_general`]).

mod littlewood;

use std::collections::BTreeMap;
use std::time::Instant;

use crate::error::{Error, Result};
use crate::exactalg::{qbinomial_qinv, qinv_poch_ratio, LaurentPoly2};
use crate::partitions::{iterate_box, partitions_of, Partition};
use crate::report::VerificationReport;

/// A Hall-polynomial query: `g^λ_{μν}` when `nu` is present, `g^λ_μ`
/// otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HallQuery {
    pub lambda: Partition,
    pub mu: Partition,
    pub nu: Option<Partition>,
}

impl HallQuery {
    pub fn eval(&self) -> Result<LaurentPoly2> {
        match &self.nu {
            Some(nu) => Ok(hall_general(&self.lambda, &self.mu, nu)),
            None => hall_skew(&self.lambda, &self.mu),
        }
    }
}

/// `g^λ_μ(q) = q^{Σ μ'_i(λ'_i - μ'_i)} ∏_i [λ'_i - μ'_{i+1}, λ'_i - μ'_i]_{q^-1}`.
///
/// Returns 0 when `μ ⊄ λ`.
///
/// ```
/// use quotzeta::{hall::hall_skew, partitions::Partition};
/// let l: Partition = "1,1".parse().unwrap();
/// let m: Partition = "1".parse().unwrap();
/// assert_eq!(hall_skew(&l, &m).unwrap().to_string(), "1 + q");
/// ```
pub fn hall_skew(lambda: &Partition, mu: &Partition) -> Result<LaurentPoly2> {
    if !mu.is_subset_of(lambda) {
        return Ok(LaurentPoly2::zero());
    }
    let width = lambda.part(0);
    let shift: usize = (1..=width).map(|i| mu.col(i) * (lambda.col(i) - mu.col(i))).sum();
    let mut acc = LaurentPoly2::q_pow(shift as i64);
    for i in 1..=width {
        let top = lambda.col(i) - mu.col(i + 1);
        let bottom = lambda.col(i) - mu.col(i);
        acc = &acc * &qbinomial_qinv(top, bottom);
    }
    acc.assert_polynomial("hall_skew")
}

/// `g^{(m^d)}_μ(q)`, which does not depend on `m` once `μ_1 <= m`:
/// `q^{d|μ| - Σμ'_i^2} ∏_{i>=0} [μ'_i, μ'_{i+1}]_{q^-1}` with `μ'_0 = d`.
pub fn hall_box(m: usize, d: usize, mu: &Partition) -> Result<LaurentPoly2> {
    if !mu.is_subset_of(&Partition::rect(m, d)) {
        return Err(Error::Domain(format!("{mu} does not fit in the box ({m}^{d})")));
    }
    let shift = (d * mu.size()) as i64 - mu.sum_col_squares() as i64;
    let mut acc = LaurentPoly2::q_pow(shift);
    let mut prev = d;
    for i in 1..=mu.part(0) {
        let c = mu.col(i);
        acc = &acc * &qbinomial_qinv(prev, c);
        prev = c;
    }
    acc.assert_polynomial("hall_box")
}

/// `g^λ_{μν}(q)` for arbitrary partitions, via Hall-Littlewood structure
/// constants: `g^λ_{μν}(q) = q^{n(λ)-n(μ)-n(ν)} f^λ_{μν}(q^-1)`.
///
/// ```
/// use quotzeta::{hall::hall_general, partitions::Partition};
/// let p = |s: &str| s.parse::<Partition>().unwrap();
/// assert_eq!(hall_general(&p("2"), &p("1"), &p("1")).to_string(), "1");
/// assert_eq!(hall_general(&p("1,1"), &p("1"), &p("1")).to_string(), "1 + q");
/// assert!(hall_general(&p("2"), &p("1"), &p("2")).is_zero());
/// ```
pub fn hall_general(lambda: &Partition, mu: &Partition, nu: &Partition) -> LaurentPoly2 {
    if lambda.size() != mu.size() + nu.size() || !mu.is_subset_of(lambda) || !nu.is_subset_of(lambda) {
        return LaurentPoly2::zero();
    }
    hall_expansion(mu, nu).remove(lambda).unwrap_or_default()
}

/// All nonzero `g^λ_{μν}(q)` for fixed `μ, ν`, keyed by `λ`.
pub fn hall_expansion(mu: &Partition, nu: &Partition) -> BTreeMap<Partition, LaurentPoly2> {
    let qinv = LaurentPoly2::q_pow(-1);
    let t = LaurentPoly2::t();
    littlewood::structure_constants(mu, nu)
        .into_iter()
        .map(|(lam, f)| {
            let shift = lam.n() as i64 - mu.n() as i64 - nu.n() as i64;
            let g = f.substitute(&qinv, &t).expect("unit monomial").shift(shift, 0);
            debug_assert!(g.is_polynomial());
            (lam, g)
        })
        .collect()
}

/// Number of surjections `R^d -> M` for `M` of type `μ`:
/// `q^{d|μ|} (q^-1;q^-1)_d / (q^-1;q^-1)_{d-μ'_1}`, zero if `μ'_1 > d`.
pub fn surjection_count(d: usize, mu: &Partition) -> Result<LaurentPoly2> {
    let rows = mu.len();
    if rows > d {
        return Ok(LaurentPoly2::zero());
    }
    let p = &LaurentPoly2::q_pow((d * mu.size()) as i64) * &qinv_poch_ratio(d, d - rows);
    p.assert_polynomial("surjection_count")
}

/// Exhaustive count over `F_p` of submodules of `⊕ F_p[T]/T^{λ_i}` with type
/// `μ` (and cotype `ν` if given). Delegates to [`crate::oracle`].
pub fn hall_count_oracle(
    lambda: &Partition,
    mu: &Partition,
    nu: Option<&Partition>,
    p: u32,
    budget: u64,
) -> Result<num_bigint::BigInt> {
    let census = crate::oracle::hall_census(lambda, p, budget)?;
    let n: u64 = census
        .iter()
        .filter(|((ty, coty), _)| ty == mu && nu.is_none_or(|nu| coty == nu))
        .map(|(_, c)| *c)
        .sum();
    Ok(n.into())
}

/// Symbolic consistency of the three Hall-polynomial routines:
///
/// * `hall_box(m, d, μ) = hall_skew((m^d), μ)` for `m, d <= box_max`;
/// * `Σ_ν g^λ_{μν} = g^λ_μ` for `|λ| <= max_size`;
/// * `g^λ_{μν} = g^λ_{νμ}` for `|μ| + |ν| <= max_size`.
pub fn hall_consistency_check(max_size: usize, box_max: usize) -> Result<VerificationReport> {
    let start = Instant::now();
    let mut parts = Vec::new();
    for m in 1..=box_max {
        for d in 0..=box_max {
            let rect = Partition::rect(m, d);
            let (lhs, rhs): (Vec<LaurentPoly2>, Vec<LaurentPoly2>) = iterate_box(m, d)
                .map(|mu| Ok((hall_box(m, d, &mu)?, hall_skew(&rect, &mu)?)))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .unzip();
            parts.push(
                VerificationReport::new("box-vs-skew")
                    .param("m", m)
                    .param("d", d)
                    .compare_lists(&lhs, &rhs),
            );
        }
    }
    let mut sums: BTreeMap<(Partition, Partition), LaurentPoly2> = BTreeMap::new();
    for n in 0..=max_size {
        for k in 0..=n {
            for mu in partitions_of(k) {
                for nu in partitions_of(n - k) {
                    let forward = hall_expansion(&mu, &nu);
                    if k <= n - k {
                        let backward = hall_expansion(&nu, &mu);
                        let show = |e: &BTreeMap<Partition, LaurentPoly2>| -> Vec<String> {
                            e.iter().map(|(l, g)| format!("{l}: {g}")).collect()
                        };
                        parts.push(
                            VerificationReport::new("symmetry")
                                .param("mu", &mu)
                                .param("nu", &nu)
                                .compare_lists(&show(&forward), &show(&backward)),
                        );
                    }
                    for (lambda, g) in forward {
                        *sums.entry((lambda, mu.clone())).or_default() += &g;
                    }
                }
            }
        }
    }
    for n in 0..=max_size {
        for lambda in partitions_of(n) {
            for k in 0..=n {
                for mu in partitions_of(k) {
                    let total = sums.get(&(lambda.clone(), mu.clone())).cloned().unwrap_or_default();
                    parts.push(
                        VerificationReport::new("sum-over-nu")
                            .param("lambda", &lambda)
                            .param("mu", &mu)
                            .compare_polys(&total, &hall_skew(&lambda, &mu)?),
                    );
                }
            }
        }
    }
    Ok(VerificationReport::new("hall-consistency")
        .param("max_size", max_size)
        .param("box_max", box_max)
        .absorb(parts)
        .timed(start))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn p(s: &str) -> LaurentPoly2 {
        s.parse().unwrap()
    }

    #[test]
    fn skew_examples() {
        for l in ["", "1", "2,1", "3,3,1"] {
            assert!(hall_skew(&part(l), &part(l)).unwrap().is_one());
            assert!(hall_skew(&part(l), &Partition::empty()).unwrap().is_one());
        }
        assert_eq!(hall_skew(&part("1,1"), &part("1")).unwrap(), p("q + 1"));
        assert!(hall_skew(&part("1,1"), &part("2")).unwrap().is_zero());
    }

    #[test]
    fn box_examples() {
        assert!(hall_box(1, 1, &part("1")).unwrap().is_one());
        assert!(hall_box(3, 2, &Partition::empty()).unwrap().is_one());
        assert_eq!(hall_box(1, 2, &part("1")).unwrap(), p("q + 1"));
        assert!(hall_box(1, 2, &part("2")).is_err());
    }

    #[test]
    fn box_matches_skew_and_is_independent_of_m() {
        for m in 1..=3 {
            for d in 0..=3 {
                for mu in iterate_box(m, d) {
                    let b = hall_box(m, d, &mu).unwrap();
                    assert_eq!(b, hall_skew(&Partition::rect(m, d), &mu).unwrap(), "({m},{d}) {mu}");
                    assert_eq!(b, hall_box(m + 2, d, &mu).unwrap());
                }
            }
        }
    }

    #[test]
    fn general_examples() {
        assert!(hall_general(&part("2"), &part("1"), &part("1")).is_one());
        assert_eq!(hall_general(&part("1,1"), &part("1"), &part("1")), p("q + 1"));
        assert!(hall_general(&part("2"), &part("1"), &part("2")).is_zero());
        // F_q[T]/T^3 has a unique submodule of each length
        assert!(hall_general(&part("3"), &part("1"), &part("2")).is_one());
        // (2,1): the q socle lines other than T*M have cyclic quotient
        assert_eq!(hall_general(&part("2,1"), &part("1"), &part("2")), p("q"));
        assert_eq!(hall_general(&part("2,1"), &part("1"), &part("1,1")), p("1"));
    }

    #[test]
    fn general_sums_to_skew_and_is_symmetric() {
        for n in 0..=5 {
            for lam in partitions_of(n) {
                for k in 0..=n {
                    for mu in partitions_of(k) {
                        let mut total = LaurentPoly2::zero();
                        for nu in partitions_of(n - k) {
                            let g = hall_general(&lam, &mu, &nu);
                            assert_eq!(g, hall_general(&lam, &nu, &mu), "{lam} {mu} {nu}");
                            total += &g;
                        }
                        assert_eq!(total, hall_skew(&lam, &mu).unwrap(), "{lam} {mu}");
                    }
                }
            }
        }
    }

    #[test]
    fn consistency_report() {
        let r = hall_consistency_check(4, 2).unwrap();
        assert!(r.passed(), "{}", r.to_text());
    }

    #[test]
    fn surjection_examples() {
        assert!(surjection_count(0, &Partition::empty()).unwrap().is_one());
        // R -> F_q: q - 1 surjections
        assert_eq!(surjection_count(1, &part("1")).unwrap(), p("q - 1"));
        assert!(surjection_count(1, &part("1,1")).unwrap().is_zero());
    }
}
