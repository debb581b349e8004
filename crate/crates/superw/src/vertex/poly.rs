use std::collections::BTreeMap;

use serde::Serialize;

use crate::scalar::Scalar;

/// `∂^der` applied to generator `gen`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Factor {
    pub gen: u32,
    pub der: u32,
}

impl Factor {
    pub fn new(gen: usize, der: u32) -> Self {
        Factor { gen: gen as u32, der }
    }

    pub fn bump(self, by: u32) -> Self {
        Factor { gen: self.gen, der: self.der + by }
    }
}

/// Right-nested normally ordered product `:f1 (:f2 (... fn):):`, factors non-decreasing.
pub type Mono = Vec<Factor>;

/// Finite linear combination of normal-form monomials.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct VertexPoly {
    pub(crate) terms: BTreeMap<Mono, Scalar>,
}

impl VertexPoly {
    pub fn zero() -> Self {
        VertexPoly { terms: BTreeMap::new() }
    }

    /// The vacuum `|0>`.
    pub fn one() -> Self {
        VertexPoly::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        VertexPoly::monomial(Vec::new(), c)
    }

    pub fn monomial(m: Mono, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        VertexPoly { terms }
    }

    pub fn factor(f: Factor) -> Self {
        VertexPoly::monomial(vec![f], Scalar::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Mono) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Coefficient of the vacuum.
    pub fn constant_term(&self) -> Scalar {
        self.coeff(&Vec::new())
    }

    pub fn add_term(&mut self, m: Mono, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(e) => {
                *e = &*e + c;
                if e.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    /// `self += c * other`.
    pub fn axpy(&mut self, c: &Scalar, other: &VertexPoly) {
        if c.is_zero() {
            return;
        }
        for (m, x) in &other.terms {
            if c.is_one() {
                self.add_term(m.clone(), x);
            } else {
                self.add_term(m.clone(), &(c * x));
            }
        }
    }

    pub fn add(&self, other: &VertexPoly) -> VertexPoly {
        let mut out = self.clone();
        out.axpy(&Scalar::one(), other);
        out
    }

    pub fn sub(&self, other: &VertexPoly) -> VertexPoly {
        let mut out = self.clone();
        out.axpy(&Scalar::from_int(-1), other);
        out
    }

    pub fn scale(&self, c: &Scalar) -> VertexPoly {
        if c.is_zero() {
            return VertexPoly::zero();
        }
        VertexPoly { terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    pub fn neg(&self) -> VertexPoly {
        self.scale(&Scalar::from_int(-1))
    }

    /// Applies `f` to every coefficient, dropping zeros.
    pub fn map_coeffs(&self, f: impl Fn(&Scalar) -> Scalar) -> VertexPoly {
        let mut out = VertexPoly::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), &f(c));
        }
        out
    }

    /// Largest coefficient (by monomial order) together with its monomial.
    pub fn leading(&self) -> Option<(&Mono, &Scalar)> {
        self.terms.iter().next_back()
    }
}

impl std::ops::Add for &VertexPoly {
    type Output = VertexPoly;
    fn add(self, o: &VertexPoly) -> VertexPoly {
        VertexPoly::add(self, o)
    }
}

impl std::ops::Sub for &VertexPoly {
    type Output = VertexPoly;
    fn sub(self, o: &VertexPoly) -> VertexPoly {
        VertexPoly::sub(self, o)
    }
}

impl std::ops::Neg for &VertexPoly {
    type Output = VertexPoly;
    fn neg(self) -> VertexPoly {
        VertexPoly::neg(self)
    }
}

impl std::ops::Mul<&VertexPoly> for &Scalar {
    type Output = VertexPoly;
    fn mul(self, o: &VertexPoly) -> VertexPoly {
        o.scale(self)
    }
}

/// `[a_λ b] = Σ λ^n c_n`; `coeffs[n]` is `a_(n)b / n!`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LambdaPoly {
    pub coeffs: Vec<VertexPoly>,
}

impl LambdaPoly {
    pub fn zero() -> Self {
        LambdaPoly { coeffs: Vec::new() }
    }

    pub fn from_coeffs(mut coeffs: Vec<VertexPoly>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        LambdaPoly { coeffs }
    }

    /// From n-th products `a_(n)b`.
    pub fn from_products(products: Vec<VertexPoly>) -> Self {
        let mut fact = Scalar::one();
        let mut out = Vec::with_capacity(products.len());
        for (n, p) in products.into_iter().enumerate() {
            if n > 0 {
                fact = &fact * &Scalar::from_int(n as i64);
            }
            out.push(p.scale(&fact.inv()));
        }
        LambdaPoly::from_coeffs(out)
    }

    /// n-th products `a_(n)b = n! c_n`.
    pub fn products(&self) -> Vec<VertexPoly> {
        let mut fact = Scalar::one();
        self.coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| {
                if n > 0 {
                    fact = &fact * &Scalar::from_int(n as i64);
                }
                c.scale(&fact)
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn coeff(&self, n: usize) -> VertexPoly {
        self.coeffs.get(n).cloned().unwrap_or_default()
    }

    pub fn add(&self, o: &LambdaPoly) -> LambdaPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        LambdaPoly::from_coeffs((0..n).map(|i| self.coeff(i).add(&o.coeff(i))).collect())
    }

    pub fn sub(&self, o: &LambdaPoly) -> LambdaPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        LambdaPoly::from_coeffs((0..n).map(|i| self.coeff(i).sub(&o.coeff(i))).collect())
    }

    pub fn scale(&self, c: &Scalar) -> LambdaPoly {
        LambdaPoly::from_coeffs(self.coeffs.iter().map(|p| p.scale(c)).collect())
    }

    /// Multiplication by `λ`.
    pub fn shift(&self) -> LambdaPoly {
        if self.is_zero() {
            return LambdaPoly::zero();
        }
        let mut c = vec![VertexPoly::zero()];
        c.extend(self.coeffs.iter().cloned());
        LambdaPoly::from_coeffs(c)
    }
}
