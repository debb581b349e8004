use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use super::gauss::GaussRat;

/// Dense univariate polynomial in `k` over the Gaussian rationals,
/// coefficients in ascending degree, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Poly {
    c: Vec<GaussRat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { c: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(GaussRat::one())
    }

    pub fn constant(a: GaussRat) -> Self {
        Poly::from_coeffs(vec![a])
    }

    pub fn k() -> Self {
        Poly::from_coeffs(vec![GaussRat::zero(), GaussRat::one()])
    }

    /// `a*k + b` with integer coefficients.
    pub fn linear(a: i64, b: i64) -> Self {
        Poly::from_coeffs(vec![GaussRat::from_int(b), GaussRat::from_int(a)])
    }

    pub fn from_coeffs(mut c: Vec<GaussRat>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Poly { c }
    }

    pub fn coeffs(&self) -> &[GaussRat] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        if self.c.is_empty() {
            None
        } else {
            Some(self.c.len() - 1)
        }
    }

    pub fn lead(&self) -> GaussRat {
        self.c.last().cloned().unwrap_or_else(GaussRat::zero)
    }

    pub fn constant_term(&self) -> GaussRat {
        self.c.first().cloned().unwrap_or_else(GaussRat::zero)
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            match (self.c.get(i), o.c.get(i)) {
                (Some(a), Some(b)) => out.push(a + b),
                (Some(a), None) => out.push(a.clone()),
                (None, Some(b)) => out.push(b.clone()),
                (None, None) => unreachable!(),
            }
        }
        Poly::from_coeffs(out)
    }

    pub fn neg(&self) -> Poly {
        Poly { c: self.c.iter().map(|x| -x).collect() }
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        if o.c.len() == 1 {
            return self.scale(&o.c[0]);
        }
        if self.c.len() == 1 {
            return o.scale(&self.c[0]);
        }
        let mut out = vec![GaussRat::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Poly::from_coeffs(out)
    }

    pub fn scale(&self, a: &GaussRat) -> Poly {
        if a.is_zero() {
            return Poly::zero();
        }
        if a.is_one() {
            return self.clone();
        }
        Poly::from_coeffs(self.c.iter().map(|x| x * a).collect())
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Euclidean division `self = q*d + r`.
    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        if self.c.len() < d.c.len() {
            return (Poly::zero(), self.clone());
        }
        let dl = d.lead().inv().unwrap();
        let mut r = self.c.clone();
        let dn = d.c.len();
        let mut q = vec![GaussRat::zero(); r.len() - dn + 1];
        for i in (0..q.len()).rev() {
            let coef = &r[i + dn - 1] * &dl;
            if coef.is_zero() {
                continue;
            }
            for (j, dj) in d.c.iter().enumerate() {
                r[i + j] = &r[i + j] - &(&coef * dj);
            }
            q[i] = coef;
        }
        (Poly::from_coeffs(q), Poly::from_coeffs(r))
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let l = self.lead();
        if l.is_one() {
            return self.clone();
        }
        self.scale(&l.inv().unwrap())
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            if b.is_constant() {
                return Poly::one();
            }
            let (_, r) = a.divrem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    pub fn derivative(&self) -> Poly {
        if self.c.len() <= 1 {
            return Poly::zero();
        }
        Poly::from_coeffs(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, x)| x * &GaussRat::from_int(i as i64))
                .collect(),
        )
    }

    /// Horner evaluation at a Gaussian rational point.
    pub fn eval(&self, x: &GaussRat) -> GaussRat {
        let mut acc = GaussRat::zero();
        for a in self.c.iter().rev() {
            acc = &(&acc * x) + a;
        }
        acc
    }

    pub fn eval_rational(&self, x: &BigRational) -> GaussRat {
        self.eval(&GaussRat::rational(x.clone()))
    }

    /// Exact square root when `self` is the square of a polynomial.
    pub fn sqrt(&self) -> Option<Poly> {
        if self.is_zero() {
            return Some(Poly::zero());
        }
        let d = self.degree().unwrap();
        if d % 2 == 1 {
            return None;
        }
        let lead_root = super::rat_sqrt_gauss(&self.lead())?;
        let m = d / 2;
        // Solve for the coefficients of r top-down from r^2 = self.
        let mut r = vec![GaussRat::zero(); m + 1];
        r[m] = lead_root;
        let two_lead = &r[m] * &GaussRat::from_int(2);
        for i in (0..m).rev() {
            let target_deg = m + i;
            let mut acc = self.c[target_deg].clone();
            for j in (i + 1)..=m {
                let l = target_deg - j;
                if l > i && l <= m && l != j {
                    acc = &acc - &(&r[j] * &r[l]);
                } else if l == j {
                    acc = &acc - &(&r[j] * &r[j]);
                }
            }
            r[i] = &acc / &two_lead;
        }
        let cand = Poly::from_coeffs(r);
        if cand.mul(&cand) == *self {
            Some(cand)
        } else {
            None
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (deg, a) in self.c.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            let kpart = match deg {
                0 => String::new(),
                1 => "k".to_string(),
                n => format!("k^{}", n),
            };
            let negative_real = a.im.is_zero() && a.re < BigRational::zero();
            let mag = if negative_real { -a } else { a.clone() };
            let body = if deg == 0 {
                let t = mag.to_string();
                if !first && !mag.is_real() && !mag.re.is_zero() {
                    format!("({})", t)
                } else {
                    t
                }
            } else if mag.is_one() {
                kpart.clone()
            } else {
                format!("{}*{}", mag.factor_text(), kpart)
            };
            if first {
                if negative_real {
                    write!(f, "-{}", body)?;
                } else {
                    write!(f, "{}", body)?;
                }
                first = false;
            } else if negative_real {
                write!(f, " - {}", body)?;
            } else {
                write!(f, " + {}", body)?;
            }
        }
        Ok(())
    }
}
