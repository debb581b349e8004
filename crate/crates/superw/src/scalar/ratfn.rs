use std::fmt;

use num_rational::BigRational;

use super::gauss::GaussRat;
use super::poly::Poly;

/// Reduced rational function `num/den` in `k`; `den` is monic and coprime to `num`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct RatFn {
    num: Poly,
    den: Poly,
}

impl RatFn {
    pub fn zero() -> Self {
        RatFn { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        RatFn { num: Poly::one(), den: Poly::one() }
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFn { num: p, den: Poly::one() }
    }

    pub fn constant(a: GaussRat) -> Self {
        RatFn::from_poly(Poly::constant(a))
    }

    /// Builds `num/den` in canonical form; `None` when `den` is zero.
    pub fn new(num: Poly, den: Poly) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        if num.is_zero() {
            return Some(RatFn::zero());
        }
        if den.is_constant() {
            let inv = den.lead().inv().unwrap();
            return Some(RatFn { num: num.scale(&inv), den: Poly::one() });
        }
        let g = num.gcd(&den);
        let (mut n, mut d) = if g.is_one() {
            (num, den)
        } else {
            (num.divrem(&g).0, den.divrem(&g).0)
        };
        let l = d.lead();
        if !l.is_one() {
            let inv = l.inv().unwrap();
            n = n.scale(&inv);
            d = d.scale(&inv);
        }
        Some(RatFn { num: n, den: d })
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.den.is_one() && self.num.is_constant()
    }

    pub fn as_constant(&self) -> Option<GaussRat> {
        if self.is_constant() {
            Some(self.num.constant_term())
        } else {
            None
        }
    }

    pub fn add(&self, o: &RatFn) -> RatFn {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            let n = self.num.add(&o.num);
            if self.den.is_one() {
                return RatFn { num: n, den: Poly::one() };
            }
            return RatFn::new(n, self.den.clone()).unwrap();
        }
        let n = self.num.mul(&o.den).add(&o.num.mul(&self.den));
        RatFn::new(n, self.den.mul(&o.den)).unwrap()
    }

    pub fn neg(&self) -> RatFn {
        RatFn { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, o: &RatFn) -> RatFn {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &RatFn) -> RatFn {
        if self.is_zero() || o.is_zero() {
            return RatFn::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return RatFn { num: self.num.mul(&o.num), den: Poly::one() };
        }
        if o.is_constant() {
            return RatFn { num: self.num.scale(&o.num.constant_term()), den: self.den.clone() };
        }
        if self.is_constant() {
            return RatFn { num: o.num.scale(&self.num.constant_term()), den: o.den.clone() };
        }
        RatFn::new(self.num.mul(&o.num), self.den.mul(&o.den)).unwrap()
    }

    pub fn inv(&self) -> Option<RatFn> {
        if self.is_zero() {
            return None;
        }
        RatFn::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, o: &RatFn) -> Option<RatFn> {
        Some(self.mul(&o.inv()?))
    }

    pub fn scale(&self, a: &GaussRat) -> RatFn {
        if a.is_zero() {
            return RatFn::zero();
        }
        RatFn { num: self.num.scale(a), den: self.den.clone() }
    }

    pub fn eval(&self, x: &BigRational) -> Option<GaussRat> {
        let d = self.den.eval_rational(x);
        if d.is_zero() {
            return None;
        }
        Some(&self.num.eval_rational(x) / &d)
    }

    /// Text form usable as a factor in a product.
    pub fn factor_text(&self) -> String {
        if self.den.is_one() {
            if self.num.is_constant() {
                return self.num.constant_term().factor_text();
            }
            if self.num.coeffs().iter().filter(|c| !c.is_zero()).count() == 1 {
                let s = self.num.to_string();
                if !s.starts_with('-') {
                    return s;
                }
            }
        }
        format!("({})", self)
    }
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            let n = RatFn::from_poly(self.num.clone()).factor_text();
            let d = RatFn::from_poly(self.den.clone()).factor_text();
            write!(f, "{}/{}", n, d)
        }
    }
}
