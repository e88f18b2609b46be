use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::Zero;

use super::LaurentPoly2;
use crate::error::{domain, Result};
use crate::partitions::Partition;

/// `(x; step)_n = (1 - x)(1 - x*step)...(1 - x*step^(n-1))`.
///
/// ```
/// use quotzeta::exactalg::{qpochhammer, LaurentPoly2};
/// let p = qpochhammer(&LaurentPoly2::t(), &LaurentPoly2::q(), 2);
/// assert_eq!(p.to_string(), "1 - t - q*t + q*t^2");
/// ```
pub fn qpochhammer(x: &LaurentPoly2, step: &LaurentPoly2, n: usize) -> LaurentPoly2 {
    let one = LaurentPoly2::one();
    let mut acc = LaurentPoly2::one();
    let mut power = x.clone();
    for k in 0..n {
        acc = &acc * &(&one - &power);
        if k + 1 < n {
            power = &power * step;
        }
    }
    acc
}

/// `(t q^a; q)_n` with `t` scaled by `q^a`: the common special case.
pub fn qpoch_t(a: i64, n: usize) -> LaurentPoly2 {
    qpochhammer(&LaurentPoly2::monomial(1, a, 1), &LaurentPoly2::q(), n)
}

/// `prod_{k=lo+1}^{hi} (1 - q^(-k))`, i.e. `(q^-1;q^-1)_hi / (q^-1;q^-1)_lo`.
///
/// Empty (equal to 1) when `hi <= lo`.
pub fn qinv_poch_ratio(hi: usize, lo: usize) -> LaurentPoly2 {
    let one = LaurentPoly2::one();
    (lo + 1..=hi)
        .map(|k| &one - &LaurentPoly2::q_pow(-(k as i64)))
        .product()
}

/// `(q^-1; q^-1)_n`.
pub fn qinv_poch(n: usize) -> LaurentPoly2 {
    qinv_poch_ratio(n, 0)
}

/// `(q; q)_n`.
pub fn q_poch(n: usize) -> LaurentPoly2 {
    let q = LaurentPoly2::q();
    qpochhammer(&q, &q, n)
}

type Row = Vec<Vec<BigInt>>;

fn pascal_rows() -> &'static Mutex<Vec<Row>> {
    static ROWS: OnceLock<Mutex<Vec<Row>>> = OnceLock::new();
    ROWS.get_or_init(|| Mutex::new(vec![vec![vec![BigInt::from(1)]]]))
}

/// Dense coefficient vector of the Gaussian binomial `[n, r]_q`.
fn qbinomial_coeffs(n: usize, r: usize) -> Vec<BigInt> {
    let mut rows = pascal_rows().lock().unwrap_or_else(|e| e.into_inner());
    while rows.len() <= n {
        let prev = rows.last().expect("row 0 present");
        let k = rows.len();
        let mut row: Row = Vec::with_capacity(k + 1);
        for j in 0..=k {
            // [k, j] = [k-1, j-1] + q^j [k-1, j]
            let mut c: Vec<BigInt> = vec![BigInt::zero(); j * (k - j) + 1];
            if j > 0 {
                for (i, a) in prev[j - 1].iter().enumerate() {
                    c[i] += a;
                }
            }
            if j < k {
                for (i, a) in prev[j].iter().enumerate() {
                    c[i + j] += a;
                }
            }
            row.push(c);
        }
        rows.push(row);
    }
    rows[n][r].clone()
}

/// The Gaussian binomial `[n, r]_q`, built by the q-Pascal recurrence and
/// memoized process-wide.
///
/// ```
/// use quotzeta::exactalg::qbinomial;
/// assert_eq!(qbinomial(4, 2).unwrap().to_string(), "1 + q + 2*q^2 + q^3 + q^4");
/// assert!(qbinomial(1, 2).is_err());
/// ```
pub fn qbinomial(n: usize, r: usize) -> Result<LaurentPoly2> {
    if r > n {
        return domain(format!("q-binomial [{n}, {r}] with r > n"));
    }
    Ok(LaurentPoly2::from_q_coeffs(&qbinomial_coeffs(n, r)))
}

/// `[n, r]` evaluated in base `q^-1`, zero when `r > n`.
pub(crate) fn qbinomial_qinv(n: usize, r: usize) -> LaurentPoly2 {
    let coeffs = if r > n { Vec::new() } else { qbinomial_coeffs(n, r) };
    let mut p = LaurentPoly2::zero();
    for (i, c) in coeffs.into_iter().enumerate() {
        p.add_term((-(i as i64), 0), c);
    }
    p
}

/// `a_q(λ) = q^{Σ λ'_i^2} ∏_i (q^-1; q^-1)_{λ'_i - λ'_{i+1}}`, the size of
/// the automorphism group of a module of type `λ` over a DVR with residue
/// field of size `q`.
///
/// ```
/// use quotzeta::{exactalg::aq, partitions::Partition};
/// assert_eq!(aq(&Partition::new(vec![1, 1]).unwrap()).unwrap().to_string(), "q - q^2 - q^3 + q^4");
/// ```
pub fn aq(lambda: &Partition) -> Result<LaurentPoly2> {
    let cols = lambda.conjugate();
    let c = cols.parts();
    let shift: i64 = c.iter().map(|&x| (x * x) as i64).sum();
    let mut acc = LaurentPoly2::q_pow(shift);
    for i in 0..c.len() {
        let next = c.get(i + 1).copied().unwrap_or(0);
        acc = &acc * &qinv_poch(c[i] - next);
    }
    acc.assert_polynomial("a_q")
}
