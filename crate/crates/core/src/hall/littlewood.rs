//! Hall-Littlewood `P` functions in finitely many variables and their
//! structure constants `f^λ_{μν}(ξ)`.
//!
//! The monomial expansion of `P_λ` is the tableau sum
//! `P_λ = Σ_T ψ_T(ξ) x^T`, where a tableau is a chain of horizontal strips
//! and `ψ_{λ/μ}(ξ) = ∏_{j∈J} (1 - ξ^{m_j(μ)})` over the set `J` of columns
//! `j` with `θ'_j = 0` and `θ'_{j+1} = 1`, `θ = λ - μ`. The variable `ξ` is
//! carried as `q` inside [`LaurentPoly2`].

use std::collections::{BTreeMap, HashMap};
use std::sync::{Mutex, OnceLock};

use crate::exactalg::LaurentPoly2;
use crate::partitions::{partitions_bounded, Partition};

type KKey = (Vec<usize>, Vec<usize>);

fn k_cache() -> &'static Mutex<HashMap<KKey, LaurentPoly2>> {
    static CACHE: OnceLock<Mutex<HashMap<KKey, LaurentPoly2>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn psi(lambda: &[usize], mu: &[usize]) -> LaurentPoly2 {
    let lp = Partition::from_sorted(lambda.to_vec());
    let mp = Partition::from_sorted(mu.to_vec());
    let theta = |j: usize| lp.col(j) - mp.col(j);
    let one = LaurentPoly2::one();
    let mut acc = LaurentPoly2::one();
    for j in 1..=lp.part(0) {
        if theta(j) == 0 && theta(j + 1) == 1 {
            acc = &acc * &(&one - &LaurentPoly2::q_pow(mp.multiplicity(j) as i64));
        }
    }
    acc
}

/// All `μ` with `λ/μ` a horizontal strip of size `r`.
fn horizontal_strips(lambda: &[usize], r: usize) -> Vec<Vec<usize>> {
    fn go(lambda: &[usize], i: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == lambda.len() {
            if left == 0 {
                let mut mu = cur.clone();
                while mu.last() == Some(&0) {
                    mu.pop();
                }
                out.push(mu);
            }
            return;
        }
        let lo = lambda.get(i + 1).copied().unwrap_or(0);
        for mi in lo..=lambda[i] {
            let removed = lambda[i] - mi;
            if removed > left {
                continue;
            }
            cur.push(mi);
            go(lambda, i + 1, left - removed, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(lambda, 0, r, &mut Vec::new(), &mut out);
    out
}

/// Coefficient of `x^ρ` in `P_λ(x; ξ)`, for a weak composition `ρ`.
pub(crate) fn monomial_coeff(lambda: &[usize], content: &[usize]) -> LaurentPoly2 {
    let mut rho: Vec<usize> = content.iter().copied().filter(|&c| c > 0).collect();
    rho.sort_unstable_by(|a, b| b.cmp(a));
    monomial_coeff_sorted(lambda, &rho)
}

fn monomial_coeff_sorted(lambda: &[usize], rho: &[usize]) -> LaurentPoly2 {
    if lambda.iter().sum::<usize>() != rho.iter().sum::<usize>() {
        return LaurentPoly2::zero();
    }
    if rho.is_empty() {
        return LaurentPoly2::one();
    }
    let key = (lambda.to_vec(), rho.to_vec());
    if let Some(v) = k_cache().lock().unwrap_or_else(|e| e.into_inner()).get(&key) {
        return v.clone();
    }
    let (last, rest) = rho.split_last().expect("nonempty");
    let mut acc = LaurentPoly2::zero();
    for mu in horizontal_strips(lambda, *last) {
        let inner = monomial_coeff_sorted(&mu, rest);
        if !inner.is_zero() {
            acc += &(&psi(lambda, &mu) * &inner);
        }
    }
    k_cache()
        .lock()
        .unwrap_or_else(|e| e.into_inner())
        .insert(key, acc.clone());
    acc
}

/// Weak compositions `α` of length `n` with `α_i <= bound_i` and `|α| = total`.
fn bounded_compositions(bound: &[usize], total: usize) -> Vec<Vec<usize>> {
    fn go(bound: &[usize], i: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == bound.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let room: usize = bound[i + 1..].iter().sum();
        let lo = left.saturating_sub(room);
        for a in lo..=bound[i].min(left) {
            cur.push(a);
            go(bound, i + 1, left - a, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(bound, 0, total, &mut Vec::new(), &mut out);
    out
}

/// Expands `P_μ P_ν = Σ_λ f^λ_{μν}(ξ) P_λ`, returning the nonzero `f^λ_{μν}`.
pub(crate) fn structure_constants(mu: &Partition, nu: &Partition) -> BTreeMap<Partition, LaurentPoly2> {
    let n = mu.size() + nu.size();
    let vars = (mu.len() + nu.len()).max(1);
    // Partitions of n in at most `vars` parts, lexicographically decreasing.
    let shapes = partitions_bounded(n, n, vars);
    let product_coeff = |lam: &Partition| -> LaurentPoly2 {
        let mut bound = lam.parts().to_vec();
        bound.resize(vars, 0);
        let mut acc = LaurentPoly2::zero();
        for alpha in bounded_compositions(&bound, mu.size()) {
            let a = monomial_coeff(mu.parts(), &alpha);
            if a.is_zero() {
                continue;
            }
            let beta: Vec<usize> = bound.iter().zip(&alpha).map(|(l, a)| l - a).collect();
            let b = monomial_coeff(nu.parts(), &beta);
            acc += &(&a * &b);
        }
        acc
    };
    let mut out: BTreeMap<Partition, LaurentPoly2> = BTreeMap::new();
    let mut solved: Vec<(Partition, LaurentPoly2)> = Vec::new();
    for lam in shapes {
        let mut f = product_coeff(&lam);
        for (kappa, fk) in &solved {
            let k = monomial_coeff(kappa.parts(), lam.parts());
            if !k.is_zero() {
                f -= &(fk * &k);
            }
        }
        if !f.is_zero() {
            solved.push((lam.clone(), f.clone()));
            out.insert(lam, f);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPoly2 {
        s.parse().unwrap()
    }

    #[test]
    fn small_p_functions() {
        assert_eq!(monomial_coeff(&[2], &[2]), p("1"));
        assert_eq!(monomial_coeff(&[2], &[1, 1]), p("1 - q"));
        assert_eq!(monomial_coeff(&[1, 1], &[1, 1]), p("1"));
        assert_eq!(monomial_coeff(&[1, 1], &[2]), p("0"));
        // P_{21} = m_{21} + (2 - q - q^2) m_{111}
        assert_eq!(monomial_coeff(&[2, 1], &[1, 1, 1]), p("2 - q - q^2"));
        // q_3 = (1-ξ) P_3 and the x1 x2 x3 coefficient of q_3 is (1-ξ)^3
        assert_eq!(monomial_coeff(&[3], &[1, 1, 1]), p("(1 - q)^2"));
    }

    #[test]
    fn p1_squared() {
        let one = Partition::new(vec![1]).unwrap();
        let sc = structure_constants(&one, &one);
        assert_eq!(sc[&Partition::new(vec![2]).unwrap()], p("1"));
        assert_eq!(sc[&Partition::new(vec![1, 1]).unwrap()], p("1 + q"));
    }

    #[test]
    fn at_xi_zero_these_are_littlewood_richardson() {
        // P(ξ=0) are Schur functions: s_1 * s_1 = s_2 + s_11; s_21 * s_1 = s_31 + s_22 + s_211
        let sc = structure_constants(&Partition::new(vec![2, 1]).unwrap(), &Partition::new(vec![1]).unwrap());
        for (lam, f) in &sc {
            assert_eq!(f.coeff(0, 0), 1.into(), "{lam}");
        }
        assert_eq!(sc.len(), 3);
    }
}
