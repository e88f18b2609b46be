//! Exact bivariate Laurent polynomials in `q` and `t`, and the q-special
//! functions built on them.
//!
//! Every coefficient is a [`BigInt`](num_bigint::BigInt); nothing in the
//! crate uses floating point.

mod laurent;
mod qfunc;

pub use laurent::{Exp, LaurentPoly2};
pub(crate) use qfunc::qbinomial_qinv;
pub use qfunc::{aq, q_poch, qbinomial, qinv_poch, qinv_poch_ratio, qpoch_t, qpochhammer};

/// Substitutes `q -> q_image`, `t -> t_image` in `p`; see
/// [`LaurentPoly2::substitute`].
pub fn substitute(p: &LaurentPoly2, q_image: &LaurentPoly2, t_image: &LaurentPoly2) -> crate::Result<LaurentPoly2> {
    p.substitute(q_image, t_image)
}

/// Evaluates `p` at an integer `q` and a rational `t`.
pub fn eval_int(
    p: &LaurentPoly2,
    q_val: &num_bigint::BigInt,
    t_val: &num_rational::BigRational,
) -> crate::Result<num_rational::BigRational> {
    p.eval_int(q_val, t_val)
}
