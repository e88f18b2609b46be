//! Exact Quot-scheme and Cohen-Lenstra zeta functions of the plane curve
//! singularities `y^2 = x^n`, with brute-force checks over finite fields.
//!
//! The crate is layered:
//!
//! - [`exactalg`]: bivariate Laurent polynomials in `q` and `t` with big
//!   integer coefficients, and q-Pochhammer symbols and Gaussian binomials.
//! - [`partitions`]: integer partitions and the enumerations used as
//!   summation ranges.
//! - [`hall`]: Hall polynomials in closed form and in general.
//! - [`series`]: truncated power series in `u = q^-1` and `t`.
//! - [`quotzeta`]: numerators `NZ` of the Quot zeta functions, for the cusp
//!   and node families, and the identities relating them.
//! - [`clzeta`]: Cohen-Lenstra series and conversions between ranks.
//! - [`oracle`]: exhaustive submodule and matrix counts over `F_p`.
//! - [`report`]: the structured outcome of every check.

pub mod clzeta;
pub mod error;
pub mod exactalg;
pub mod hall;
pub mod oracle;
pub mod partitions;
pub mod quotzeta;
pub mod report;
pub mod series;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/polynomials.md")]
    mod polynomials {}
    #[doc = include_str!("../../../book/src/hall.md")]
    mod hall {}
    #[doc = include_str!("../../../book/src/quot-zeta.md")]
    mod quot_zeta {}
    #[doc = include_str!("../../../book/src/cohen-lenstra.md")]
    mod cohen_lenstra {}
    #[doc = include_str!("../../../book/src/oracles.md")]
    mod oracles {}
    #[doc = include_str!("../../../book/src/reports.md")]
    mod reports {}
    #[doc = include_str!("../../../book/src/command-line.md")]
    mod command_line {}
}
