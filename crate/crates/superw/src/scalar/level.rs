use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_rational::BigRational;

use super::gauss::GaussRat;
use super::poly::Poly;
use super::ratfn::RatFn;
use super::ScalarError;

/// Exact coefficient `a + b*s` with `a, b` in `Q(i)(k)` and `s^2 = q(k)`.
///
/// When `b = 0` the root is dropped, so structural equality is equality
/// of values.
#[derive(Clone, Debug)]
pub struct Scalar {
    a: RatFn,
    b: RatFn,
    q: Option<Arc<Poly>>,
}

impl PartialEq for Scalar {
    fn eq(&self, o: &Self) -> bool {
        self.a == o.a && self.b == o.b && (self.b.is_zero() || self.q == o.q)
    }
}

impl Eq for Scalar {}

impl Hash for Scalar {
    fn hash<H: Hasher>(&self, h: &mut H) {
        self.a.hash(h);
        self.b.hash(h);
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

fn merge_root(x: &Option<Arc<Poly>>, y: &Option<Arc<Poly>>) -> Result<Option<Arc<Poly>>, ScalarError> {
    match (x, y) {
        (None, None) => Ok(None),
        (Some(p), None) | (None, Some(p)) => Ok(Some(p.clone())),
        (Some(p), Some(r)) => {
            if Arc::ptr_eq(p, r) || p == r {
                Ok(Some(p.clone()))
            } else {
                Err(ScalarError::RootMismatch)
            }
        }
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { a: RatFn::zero(), b: RatFn::zero(), q: None }
    }

    pub fn one() -> Self {
        Scalar::from_ratfn(RatFn::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_ratfn(RatFn::constant(GaussRat::from_int(n)))
    }

    pub fn frac(n: i64, d: i64) -> Self {
        Scalar::from_ratfn(RatFn::constant(GaussRat::from_frac(n, d)))
    }

    pub fn from_gauss(g: GaussRat) -> Self {
        Scalar::from_ratfn(RatFn::constant(g))
    }

    pub fn from_rational(r: BigRational) -> Self {
        Scalar::from_gauss(GaussRat::rational(r))
    }

    pub fn i() -> Self {
        Scalar::from_gauss(GaussRat::i())
    }

    /// The formal level `k`.
    pub fn k() -> Self {
        Scalar::from_poly(Poly::k())
    }

    /// `a*k + b` with integer coefficients.
    pub fn linear(a: i64, b: i64) -> Self {
        Scalar::from_poly(Poly::linear(a, b))
    }

    pub fn from_poly(p: Poly) -> Self {
        Scalar::from_ratfn(RatFn::from_poly(p))
    }

    pub fn from_ratfn(a: RatFn) -> Self {
        Scalar { a, b: RatFn::zero(), q: None }
    }

    /// `a + b*s` under the root `s^2 = q`, normalized.
    pub fn with_root(a: RatFn, b: RatFn, q: Arc<Poly>) -> Self {
        Scalar { a, b, q: Some(q) }.normalized()
    }

    /// The adjoined root `s` itself.
    pub fn root(q: &Arc<Poly>) -> Self {
        Scalar::with_root(RatFn::zero(), RatFn::one(), q.clone())
    }

    pub fn rational_part(&self) -> &RatFn {
        &self.a
    }

    pub fn root_part(&self) -> &RatFn {
        &self.b
    }

    pub fn root_square(&self) -> Option<&Arc<Poly>> {
        if self.b.is_zero() {
            None
        } else {
            self.q.as_ref()
        }
    }

    fn normalized(mut self) -> Self {
        if self.b.is_zero() {
            self.q = None;
            return self;
        }
        if let Some(q) = &self.q {
            // Degenerate root: q is a perfect square, so s is a polynomial.
            if let Some(r) = q.sqrt() {
                self.a = self.a.add(&self.b.mul(&RatFn::from_poly(r)));
                self.b = RatFn::zero();
                self.q = None;
            }
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn is_rational_function(&self) -> bool {
        self.b.is_zero()
    }

    /// The value when it is a constant Gaussian rational.
    pub fn as_constant(&self) -> Option<GaussRat> {
        if self.b.is_zero() {
            self.a.as_constant()
        } else {
            None
        }
    }

    pub fn try_add(&self, o: &Scalar) -> Result<Scalar, ScalarError> {
        let q = merge_root(&self.q, &o.q)?;
        Ok(Scalar { a: self.a.add(&o.a), b: self.b.add(&o.b), q }.normalized())
    }

    pub fn try_mul(&self, o: &Scalar) -> Result<Scalar, ScalarError> {
        if self.b.is_zero() && o.b.is_zero() {
            return Ok(Scalar::from_ratfn(self.a.mul(&o.a)));
        }
        let q = merge_root(&self.q, &o.q)?;
        let qq = RatFn::from_poly(q.as_deref().cloned().unwrap_or_else(Poly::zero));
        let a = self.a.mul(&o.a).add(&self.b.mul(&o.b).mul(&qq));
        let b = self.a.mul(&o.b).add(&self.b.mul(&o.a));
        Ok(Scalar { a, b, q }.normalized())
    }

    pub fn try_inv(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        if self.b.is_zero() {
            return Ok(Scalar::from_ratfn(self.a.inv().unwrap()));
        }
        let q = self.q.clone().unwrap();
        let qq = RatFn::from_poly((*q).clone());
        let n = self.a.mul(&self.a).sub(&self.b.mul(&self.b).mul(&qq));
        let ninv = n.inv().ok_or(ScalarError::ZeroDivisor)?;
        Ok(Scalar { a: self.a.mul(&ninv), b: self.b.neg().mul(&ninv), q: Some(q) }.normalized())
    }

    pub fn try_div(&self, o: &Scalar) -> Result<Scalar, ScalarError> {
        self.try_mul(&o.try_inv()?)
    }

    pub fn inv(&self) -> Scalar {
        self.try_inv().expect("scalar inversion failed")
    }

    pub fn pow(&self, e: i32) -> Scalar {
        let mut base = if e < 0 { self.inv() } else { self.clone() };
        let mut n = e.unsigned_abs();
        let mut acc = Scalar::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            n >>= 1;
        }
        acc
    }

    pub fn scale_gauss(&self, g: &GaussRat) -> Scalar {
        Scalar { a: self.a.scale(g), b: self.b.scale(g), q: self.q.clone() }.normalized()
    }

    /// Exact value at `k = k0`; the root is the principal square root of `q(k0)`.
    pub fn evaluate(&self, k0: &BigRational) -> Result<GaussRat, ScalarError> {
        let a = self.a.eval(k0).ok_or(ScalarError::Pole)?;
        if self.b.is_zero() {
            return Ok(a);
        }
        let b = self.b.eval(k0).ok_or(ScalarError::Pole)?;
        let q = self.q.as_ref().unwrap().eval_rational(k0);
        if !q.is_real() {
            return Err(ScalarError::NotASquare);
        }
        let r = super::rat_sqrt_principal(&q.re).ok_or(ScalarError::NotASquare)?;
        Ok(&a + &(&b * &r))
    }

    /// Galois conjugate `s -> -s`.
    pub fn conjugate_root(&self) -> Scalar {
        Scalar { a: self.a.clone(), b: self.b.neg(), q: self.q.clone() }
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        self.try_add(o).expect("scalar addition failed")
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, o: Scalar) -> Scalar {
        &self + &o
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        *self = &*self + o;
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        self + &(-o)
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, o: Scalar) -> Scalar {
        &self - &o
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        self.try_mul(o).expect("scalar multiplication failed")
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, o: Scalar) -> Scalar {
        &self * &o
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, o: &Scalar) -> Scalar {
        self.try_div(o).expect("scalar division failed")
    }
}

impl Div for Scalar {
    type Output = Scalar;
    fn div(self, o: Scalar) -> Scalar {
        &self / &o
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { a: self.a.neg(), b: self.b.neg(), q: self.q.clone() }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl Scalar {
    /// Text form usable as a factor in a product.
    pub fn factor_text(&self) -> String {
        if self.b.is_zero() {
            self.a.factor_text()
        } else if self.a.is_zero() {
            let s = self.to_string();
            if s.starts_with('-') {
                format!("({})", s)
            } else {
                s
            }
        } else {
            format!("({})", self)
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let root_term = if self.b.is_one() { "s".to_string() } else { format!("{}*s", self.b.factor_text()) };
        if self.a.is_zero() {
            write!(f, "{}", root_term)
        } else {
            write!(f, "{} + {}", self.a, root_term)
        }
    }
}
