//! Exact coefficients: Gaussian rationals, rational functions of the level `k`,
//! and at most one adjoined square root `s` with `s^2 = q(k)`.

mod gauss;
mod level;
mod poly;
mod ratfn;
mod text;

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use thiserror::Error;

pub use gauss::GaussRat;
pub use level::Scalar;
pub use poly::Poly;
pub use ratfn::RatFn;
pub use text::parse_scalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("division by the zero rational function")]
    DivisionByZero,
    #[error("operands carry different adjoined roots")]
    RootMismatch,
    #[error("element is a zero divisor: the adjoined root is a square")]
    ZeroDivisor,
    #[error("pole at the evaluation point")]
    Pole,
    #[error("q(k0) is not the square of a rational")]
    NotASquare,
    #[error("a different root is already adjoined in this session")]
    SecondRoot,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

fn int_sqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &(&r * &r) == n {
        Some(r)
    } else {
        None
    }
}

/// Nonnegative square root of a nonnegative rational square.
pub fn rat_sqrt_principal(x: &BigRational) -> Option<GaussRat> {
    if x.is_negative() {
        return None;
    }
    let n = int_sqrt_exact(x.numer())?;
    let d = int_sqrt_exact(x.denom())?;
    Some(GaussRat::rational(BigRational::new(n, d)))
}

/// Square root of a real rational square in `Q(i)`: `sqrt(-a^2) = a*i`.
pub(crate) fn rat_sqrt_gauss(x: &GaussRat) -> Option<GaussRat> {
    if !x.is_real() {
        return None;
    }
    if x.re.is_zero() {
        return Some(GaussRat::zero());
    }
    if x.re.is_negative() {
        let r = rat_sqrt_principal(&-x.re.clone())?;
        return Some(&r * &GaussRat::i());
    }
    rat_sqrt_principal(&x.re)
}

/// Canonical reduced form of an expression; equal values print identically.
pub fn normalize(text: &str, root: Option<&Arc<Poly>>) -> Result<Scalar, ScalarError> {
    parse_scalar(text, root)
}

/// Computation session holding the (single) adjoined root.
#[derive(Clone, Debug, Default)]
pub struct Session {
    root: Option<Arc<Poly>>,
}

impl Session {
    pub fn new() -> Self {
        Session { root: None }
    }

    /// Adjoins `s` with `s^2 = q`; adjoining the same `q` twice is harmless.
    pub fn adjoin_root(&mut self, q: Poly) -> Result<Arc<Poly>, ScalarError> {
        if q.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        match &self.root {
            Some(r) if **r == q => Ok(r.clone()),
            Some(_) => Err(ScalarError::SecondRoot),
            None => {
                let r = Arc::new(q);
                self.root = Some(r.clone());
                Ok(r)
            }
        }
    }

    pub fn root(&self) -> Option<&Arc<Poly>> {
        self.root.as_ref()
    }

    /// The adjoined root as a scalar.
    pub fn s(&self) -> Option<Scalar> {
        self.root.as_ref().map(Scalar::root)
    }

    pub fn parse(&self, text: &str) -> Result<Scalar, ScalarError> {
        parse_scalar(text, self.root.as_ref())
    }
}

#[cfg(test)]
mod tests;
