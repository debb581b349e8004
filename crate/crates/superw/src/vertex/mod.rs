//! Lambda-bracket calculus on freely generated vertex superalgebras.
//!
//! Elements are kept in the normal form of right-nested normally ordered
//! monomials in derivatives of generators, with factors sorted. All
//! operations reduce to modes of single generators acting on such states:
//! annihilation modes via the commutator formula, creation modes by sorted
//! insertion with quasi-commutativity corrections.

pub mod builders;
mod check;
mod embed;
mod poly;
mod text;

use std::cell::RefCell;
use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::scalar::Scalar;

pub use check::{AxiomReport, AxiomViolation};
pub use embed::{Embedding, MonoIndex};
pub use poly::{Factor, LambdaPoly, Mono, VertexPoly};
pub use text::{parse_poly, ParseError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VertexError {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("table entry ({0}, {1}) is not homogeneous for the truncation grading")]
    Inhomogeneous(String, String),
    #[error("bracket of `{0}` and `{1}` leaves the subalgebra")]
    NotClosed(String, String),
}

#[derive(Clone, Debug, Serialize)]
pub struct Generator {
    pub name: String,
    pub parity: u8,
    /// Conformal weight, doubled.
    pub two_weight: i64,
    pub charge: i64,
    /// Nonnegative grading used to truncate mode sums, doubled.
    pub two_bound: i64,
}

impl Generator {
    pub fn new(name: &str, parity: u8, two_weight: i64) -> Self {
        Generator { name: name.to_string(), parity: parity % 2, two_weight, charge: 0, two_bound: two_weight.max(0) }
    }

    pub fn with_charge(mut self, charge: i64) -> Self {
        self.charge = charge;
        self
    }

    pub fn with_bound(mut self, two_bound: i64) -> Self {
        self.two_bound = two_bound;
        self
    }
}

/// Weight of a polynomial under the conformal grading.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Weight {
    Zero,
    /// Doubled weight.
    Homogeneous(i64),
    Inhomogeneous,
}

impl Weight {
    pub fn as_half(&self) -> Option<Scalar> {
        match self {
            Weight::Homogeneous(w) => Some(Scalar::frac(*w, 2)),
            _ => None,
        }
    }
}

pub(crate) fn sign(e: u32) -> Scalar {
    if e.is_multiple_of(2) {
        Scalar::one()
    } else {
        Scalar::from_int(-1)
    }
}

/// Falling factorial `n(n-1)...(n-d+1)`.
fn falling(n: i64, d: u32) -> i64 {
    (0..d as i64).map(|t| n - t).product()
}

pub(crate) fn factorial(n: u32) -> i64 {
    (1..=n as i64).product()
}

/// Binomial coefficient `C(m, i)` for any integer `m`.
fn binom(m: i64, i: u32) -> Scalar {
    Scalar::frac(falling(m, i), factorial(i))
}

#[derive(Default)]
struct Caches {
    gen_mode: HashMap<(u32, i64, Mono), VertexPoly>,
    create: HashMap<(Factor, Mono), VertexPoly>,
    mono_mode: HashMap<(Mono, i64, Mono), VertexPoly>,
    gen_prod: HashMap<(u32, u32, Factor), VertexPoly>,
    deriv: HashMap<Mono, VertexPoly>,
}

/// A freely generated vertex superalgebra presented by a bracket table.
pub struct VertexAlgebra {
    pub name: String,
    gens: Vec<Generator>,
    index: HashMap<String, usize>,
    /// `table[a][b][n] = a_(n) b`.
    table: Vec<Vec<Vec<VertexPoly>>>,
    caches: RefCell<Caches>,
}

impl Clone for VertexAlgebra {
    fn clone(&self) -> Self {
        VertexAlgebra {
            name: self.name.clone(),
            gens: self.gens.clone(),
            index: self.index.clone(),
            table: self.table.clone(),
            caches: RefCell::new(Caches::default()),
        }
    }
}

impl std::fmt::Debug for VertexAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("VertexAlgebra").field("name", &self.name).field("gens", &self.gens.len()).finish()
    }
}

impl VertexAlgebra {
    pub fn new(name: &str, gens: Vec<Generator>) -> Result<Self, VertexError> {
        let mut index = HashMap::new();
        for (i, g) in gens.iter().enumerate() {
            if index.insert(g.name.clone(), i).is_some() {
                return Err(VertexError::DuplicateGenerator(g.name.clone()));
            }
        }
        let n = gens.len();
        Ok(VertexAlgebra {
            name: name.to_string(),
            gens,
            index,
            table: vec![vec![Vec::new(); n]; n],
            caches: RefCell::new(Caches::default()),
        })
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn gen(&self, i: usize) -> &Generator {
        &self.gens[i]
    }

    pub fn ngens(&self) -> usize {
        self.gens.len()
    }

    pub fn index(&self, name: &str) -> Result<usize, VertexError> {
        self.index.get(name).copied().ok_or_else(|| VertexError::UnknownGenerator(name.to_string()))
    }

    /// The generator `name` as an element; panics on unknown names.
    pub fn g(&self, name: &str) -> VertexPoly {
        VertexPoly::factor(Factor::new(self.index(name).unwrap_or_else(|e| panic!("{}", e)), 0))
    }

    pub fn try_g(&self, name: &str) -> Result<VertexPoly, VertexError> {
        Ok(VertexPoly::factor(Factor::new(self.index(name)?, 0)))
    }

    pub fn clear_caches(&self) {
        *self.caches.borrow_mut() = Caches::default();
    }

    /// Installs `a_(n) b` for `n = 0, 1, ...`.
    pub fn set_products(&mut self, a: usize, b: usize, products: Vec<VertexPoly>) {
        let mut p = products;
        while p.last().is_some_and(|x| x.is_zero()) {
            p.pop();
        }
        self.table[a][b] = p;
        self.clear_caches();
    }

    /// Installs `[a_λ b]`.
    pub fn set_bracket(&mut self, a: usize, b: usize, l: &LambdaPoly) {
        self.set_products(a, b, l.products());
    }

    pub fn has_entry(&self, a: usize, b: usize) -> bool {
        !self.table[a][b].is_empty()
    }

    pub fn products(&self, a: usize, b: usize) -> &[VertexPoly] {
        &self.table[a][b]
    }

    /// Fills every empty `(b, a)` entry with a nonempty `(a, b)` partner from skew-symmetry.
    pub fn complete_skew(&mut self) {
        let n = self.ngens();
        let mut todo = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if !self.table[a][b].is_empty() && self.table[b][a].is_empty() {
                    todo.push((a, b));
                }
            }
        }
        for (a, b) in todo {
            if !self.table[b][a].is_empty() {
                continue;
            }
            let prods = self.skew_products(a, b);
            self.set_products(b, a, prods);
        }
    }

    /// `b_(i) a` predicted by skew-symmetry from the `(a, b)` entry.
    pub fn skew_products(&self, a: usize, b: usize) -> Vec<VertexPoly> {
        let ab = self.table[a][b].clone();
        let p = sign(self.gens[a].parity as u32 * self.gens[b].parity as u32);
        let mut out = Vec::new();
        for i in 0..ab.len() {
            let mut acc = VertexPoly::zero();
            for (n, x) in ab.iter().enumerate().skip(i) {
                let m = (n - i) as u32;
                let d = self.deriv_n(x, m).scale(&Scalar::frac(1, factorial(m)));
                acc.axpy(&(&sign(n as u32) * &-p.clone()), &d);
            }
            out.push(acc);
        }
        out
    }

    /// Checks that every table entry is homogeneous for the truncation grading.
    pub fn check_bound_grading(&self) -> Result<(), VertexError> {
        for a in 0..self.ngens() {
            for b in 0..self.ngens() {
                for (n, x) in self.table[a][b].iter().enumerate() {
                    let want = self.gens[a].two_bound + self.gens[b].two_bound - 2 * (n as i64 + 1);
                    for m in x.terms.keys() {
                        if self.two_bound_mono(m) != want {
                            return Err(VertexError::Inhomogeneous(self.gens[a].name.clone(), self.gens[b].name.clone()));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn factor_parity(&self, f: Factor) -> u32 {
        self.gens[f.gen as usize].parity as u32
    }

    pub fn mono_parity(&self, m: &[Factor]) -> u32 {
        m.iter().map(|f| self.factor_parity(*f)).sum::<u32>() % 2
    }

    /// Parity of a homogeneous polynomial (0 for zero).
    pub fn parity(&self, x: &VertexPoly) -> u32 {
        x.terms.keys().next().map(|m| self.mono_parity(m)).unwrap_or(0)
    }

    pub fn is_parity_homogeneous(&self, x: &VertexPoly) -> bool {
        let mut ps = x.terms.keys().map(|m| self.mono_parity(m));
        match ps.next() {
            None => true,
            Some(p) => ps.all(|q| q == p),
        }
    }

    fn two_bound_factor(&self, f: Factor) -> i64 {
        self.gens[f.gen as usize].two_bound + 2 * f.der as i64
    }

    fn two_bound_mono(&self, m: &[Factor]) -> i64 {
        m.iter().map(|f| self.two_bound_factor(*f)).sum()
    }

    fn two_bound_poly(&self, x: &VertexPoly) -> i64 {
        x.terms.keys().map(|m| self.two_bound_mono(m)).max().unwrap_or(0)
    }

    pub fn two_weight_mono(&self, m: &[Factor]) -> i64 {
        m.iter().map(|f| self.gens[f.gen as usize].two_weight + 2 * f.der as i64).sum()
    }

    pub fn charge_mono(&self, m: &[Factor]) -> i64 {
        m.iter().map(|f| self.gens[f.gen as usize].charge).sum()
    }

    /// Common conformal weight of all monomials.
    pub fn hamiltonian_weight(&self, x: &VertexPoly) -> Weight {
        let mut it = x.terms.keys().map(|m| self.two_weight_mono(m));
        match it.next() {
            None => Weight::Zero,
            Some(w) => {
                if it.all(|v| v == w) {
                    Weight::Homogeneous(w)
                } else {
                    Weight::Inhomogeneous
                }
            }
        }
    }

    /// Common charge, if homogeneous.
    pub fn charge(&self, x: &VertexPoly) -> Option<i64> {
        let mut it = x.terms.keys().map(|m| self.charge_mono(m));
        let c = it.next()?;
        it.all(|v| v == c).then_some(c)
    }

    // ---- core rewriting ----

    /// `g_(i) (∂^e h)` from the table and sesquilinearity.
    fn gen_prod(&self, g: u32, i: u32, b: Factor) -> VertexPoly {
        let key = (g, i, b);
        if let Some(v) = self.caches.borrow().gen_prod.get(&key) {
            return v.clone();
        }
        let out = if b.der == 0 {
            self.table[g as usize][b.gen as usize].get(i as usize).cloned().unwrap_or_default()
        } else {
            let lower = Factor { gen: b.gen, der: b.der - 1 };
            let mut acc = self.deriv(&self.gen_prod(g, i, lower));
            if i > 0 {
                acc.axpy(&Scalar::from_int(i as i64), &self.gen_prod(g, i - 1, lower));
            }
            acc
        };
        self.caches.borrow_mut().gen_prod.insert(key, out.clone());
        out
    }

    /// `(∂^{d1} g1)_(j) (∂^{d2} g2)` for `j >= 0`.
    fn factor_prod(&self, a: Factor, j: u32, b: Factor) -> VertexPoly {
        if j < a.der {
            return VertexPoly::zero();
        }
        let c = &sign(a.der) * &Scalar::from_int(falling(j as i64, a.der));
        self.gen_prod(a.gen, j - a.der, b).scale(&c)
    }

    /// `g_(m) X` for a generator `g` and a monomial `X`.
    fn gen_mode(&self, g: u32, m: i64, x: &[Factor]) -> VertexPoly {
        if m < 0 {
            let d = (-m - 1) as u32;
            let v = self.create(Factor { gen: g, der: d }, x);
            return if d > 1 { v.scale(&Scalar::frac(1, factorial(d))) } else { v };
        }
        if x.is_empty() {
            return VertexPoly::zero();
        }
        if 2 * (m + 1) > self.gens[g as usize].two_bound + self.two_bound_mono(x) {
            return VertexPoly::zero();
        }
        let key = (g, m, x.to_vec());
        if let Some(v) = self.caches.borrow().gen_mode.get(&key) {
            return v.clone();
        }
        let b = x[0];
        let s = &x[1..];
        let mut acc = VertexPoly::zero();
        for i in 0..=(m as u32) {
            let y = self.gen_prod(g, i, b);
            if y.is_zero() {
                continue;
            }
            let t = self.poly_mode_mono(&y, m - 1 - i as i64, s);
            acc.axpy(&binom(m, i), &t);
        }
        let inner = self.gen_mode(g, m, s);
        if !inner.is_zero() {
            let p = sign(self.gens[g as usize].parity as u32 * self.factor_parity(b));
            acc.axpy(&p, &self.create_poly(b, &inner));
        }
        self.caches.borrow_mut().gen_mode.insert(key, acc.clone());
        acc
    }

    /// `f_(-1) X`: sorted insertion.
    fn create(&self, f: Factor, x: &[Factor]) -> VertexPoly {
        if x.is_empty() || f < x[0] || (f == x[0] && self.factor_parity(f) == 0) {
            let mut m = Vec::with_capacity(x.len() + 1);
            m.push(f);
            m.extend_from_slice(x);
            return VertexPoly::monomial(m, Scalar::one());
        }
        let key = (f, x.to_vec());
        if let Some(v) = self.caches.borrow().create.get(&key) {
            return v.clone();
        }
        let first = x[0];
        let rest = &x[1..];
        let mut acc = VertexPoly::zero();
        let jmax = (self.two_bound_factor(f) + self.two_bound_factor(first)) / 2 - 1;
        if f == first {
            // odd square: y_(-1) y_(-1) = 1/2 [y_(-1), y_(-1)]
            for j in 0..=jmax.max(-1) {
                let y = self.factor_prod(f, j as u32, f);
                if y.is_zero() {
                    continue;
                }
                let t = self.poly_mode_mono(&y, -2 - j, rest);
                acc.axpy(&(&sign(j as u32) * &Scalar::frac(1, 2)), &t);
            }
        } else {
            let p = sign(self.factor_parity(f) * self.factor_parity(first));
            let inner = self.create(f, rest);
            acc.axpy(&p, &self.create_poly(first, &inner));
            for j in 0..=jmax.max(-1) {
                let y = self.factor_prod(f, j as u32, first);
                if y.is_zero() {
                    continue;
                }
                let t = self.poly_mode_mono(&y, -2 - j, rest);
                acc.axpy(&sign(j as u32), &t);
            }
        }
        self.caches.borrow_mut().create.insert(key, acc.clone());
        acc
    }

    fn create_poly(&self, f: Factor, x: &VertexPoly) -> VertexPoly {
        let mut acc = VertexPoly::zero();
        for (m, c) in &x.terms {
            acc.axpy(c, &self.create(f, m));
        }
        acc
    }

    /// `A_(n) X` for monomials.
    fn mono_mode(&self, a: &[Factor], n: i64, x: &[Factor]) -> VertexPoly {
        if a.is_empty() {
            return if n == -1 { VertexPoly::monomial(x.to_vec(), Scalar::one()) } else { VertexPoly::zero() };
        }
        if a.len() == 1 {
            let f = a[0];
            if f.der == 0 {
                return self.gen_mode(f.gen, n, x);
            }
            let c = falling(n, f.der);
            if c == 0 {
                return VertexPoly::zero();
            }
            return self.gen_mode(f.gen, n - f.der as i64, x).scale(&(&sign(f.der) * &Scalar::from_int(c)));
        }
        if n >= 0 && 2 * (n + 1) > self.two_bound_mono(a) + self.two_bound_mono(x) {
            return VertexPoly::zero();
        }
        let key = (a.to_vec(), n, x.to_vec());
        if let Some(v) = self.caches.borrow().mono_mode.get(&key) {
            return v.clone();
        }
        let f = a[0];
        let r = &a[1..];
        let p = sign(self.factor_parity(f) * self.mono_parity(r));
        let mut acc = VertexPoly::zero();
        // Σ_j f_(-1-j) R_(n+j) X
        let bound_rx = self.two_bound_mono(r) + self.two_bound_mono(x);
        let mut j: i64 = 0;
        loop {
            let m = n + j;
            if m >= 0 && 2 * (m + 1) > bound_rx {
                break;
            }
            let t = self.mono_mode(r, m, x);
            if !t.is_zero() {
                let v = self.create_poly(f.bump(j as u32), &t);
                acc.axpy(&Scalar::frac(1, factorial(j as u32)), &v);
            }
            j += 1;
        }
        // p Σ_j R_(n-1-j) f_(j) X
        let bound_fx = self.two_bound_factor(f) + self.two_bound_mono(x);
        let mut j: i64 = 0;
        while 2 * (j + 1) <= bound_fx {
            let t = self.mono_mode(&[f], j, x);
            if !t.is_zero() {
                let mut u = VertexPoly::zero();
                for (m, c) in &t.terms {
                    u.axpy(c, &self.mono_mode(r, n - 1 - j, m));
                }
                acc.axpy(&p, &u);
            }
            j += 1;
        }
        self.caches.borrow_mut().mono_mode.insert(key, acc.clone());
        acc
    }

    fn poly_mode_mono(&self, y: &VertexPoly, n: i64, x: &[Factor]) -> VertexPoly {
        let mut acc = VertexPoly::zero();
        for (m, c) in &y.terms {
            acc.axpy(c, &self.mono_mode(m, n, x));
        }
        acc
    }

    /// The n-th product `A_(n) B`; `n = -1` is the normally ordered product.
    pub fn nprod(&self, a: &VertexPoly, n: i64, b: &VertexPoly) -> VertexPoly {
        let mut acc = VertexPoly::zero();
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let t = self.mono_mode(ma, n, mb);
                acc.axpy(&(ca * cb), &t);
            }
        }
        acc
    }

    /// `:AB:`.
    pub fn no(&self, a: &VertexPoly, b: &VertexPoly) -> VertexPoly {
        self.nprod(a, -1, b)
    }

    /// Right-nested `:A1 (:A2 (... An):):`.
    pub fn no_many(&self, xs: &[VertexPoly]) -> VertexPoly {
        match xs.split_last() {
            None => VertexPoly::one(),
            Some((last, init)) => init.iter().rev().fold(last.clone(), |acc, a| self.no(a, &acc)),
        }
    }

    fn deriv_mono(&self, x: &[Factor]) -> VertexPoly {
        if x.is_empty() {
            return VertexPoly::zero();
        }
        if let Some(v) = self.caches.borrow().deriv.get(x) {
            return v.clone();
        }
        let f = x[0];
        let rest = &x[1..];
        let mut acc = self.create(f.bump(1), rest);
        let dr = self.deriv_mono(rest);
        acc.axpy(&Scalar::one(), &self.create_poly(f, &dr));
        self.caches.borrow_mut().deriv.insert(x.to_vec(), acc.clone());
        acc
    }

    /// Translation `∂`.
    pub fn deriv(&self, x: &VertexPoly) -> VertexPoly {
        let mut acc = VertexPoly::zero();
        for (m, c) in &x.terms {
            acc.axpy(c, &self.deriv_mono(m));
        }
        acc
    }

    pub fn deriv_n(&self, x: &VertexPoly, n: u32) -> VertexPoly {
        (0..n).fold(x.clone(), |acc, _| self.deriv(&acc))
    }

    /// Largest `n` with possibly nonzero `A_(n) B`.
    pub fn max_product(&self, a: &VertexPoly, b: &VertexPoly) -> i64 {
        (self.two_bound_poly(a) + self.two_bound_poly(b)) / 2 - 1
    }

    /// `[A_λ B]`.
    pub fn lambda_bracket(&self, a: &VertexPoly, b: &VertexPoly) -> LambdaPoly {
        let nmax = self.max_product(a, b);
        let prods: Vec<VertexPoly> = (0..=nmax.max(-1)).map(|n| self.nprod(a, n, b)).collect();
        LambdaPoly::from_products(prods)
    }

    /// Image of `X` under the derivation determined by its values on generators.
    /// `parity` is the parity of the derivation; it must commute with `∂`.
    pub fn apply_derivation(&self, images: &dyn Fn(usize) -> VertexPoly, parity: u32, x: &VertexPoly) -> VertexPoly {
        let mut gen_cache: HashMap<Factor, VertexPoly> = HashMap::new();
        let mut mono_cache: HashMap<Mono, VertexPoly> = HashMap::new();
        let mut acc = VertexPoly::zero();
        for (m, c) in &x.terms {
            let v = self.derivation_mono(images, parity, m, &mut gen_cache, &mut mono_cache);
            acc.axpy(c, &v);
        }
        acc
    }

    fn derivation_mono(
        &self,
        images: &dyn Fn(usize) -> VertexPoly,
        parity: u32,
        m: &[Factor],
        gen_cache: &mut HashMap<Factor, VertexPoly>,
        mono_cache: &mut HashMap<Mono, VertexPoly>,
    ) -> VertexPoly {
        if m.is_empty() {
            return VertexPoly::zero();
        }
        if let Some(v) = mono_cache.get(m) {
            return v.clone();
        }
        let f = m[0];
        let rest = &m[1..];
        let df = match gen_cache.get(&f) {
            Some(v) => v.clone(),
            None => {
                let v = self.deriv_n(&images(f.gen as usize), f.der);
                gen_cache.insert(f, v.clone());
                v
            }
        };
        let rest_poly = VertexPoly::monomial(rest.to_vec(), Scalar::one());
        let mut acc = self.nprod(&df, -1, &rest_poly);
        let dr = self.derivation_mono(images, parity, rest, gen_cache, mono_cache);
        if !dr.is_zero() {
            let s = sign(parity * self.factor_parity(f));
            acc.axpy(&s, &self.create_poly(f, &dr));
        }
        mono_cache.insert(m.to_vec(), acc.clone());
        acc
    }

    /// Image of `X` under the vertex algebra homomorphism into `target`
    /// determined by generator images.
    pub fn apply_hom(&self, target: &VertexAlgebra, images: &dyn Fn(usize) -> VertexPoly, x: &VertexPoly) -> VertexPoly {
        let mut gen_cache: HashMap<Factor, VertexPoly> = HashMap::new();
        let mut mono_cache: HashMap<Mono, VertexPoly> = HashMap::new();
        let mut acc = VertexPoly::zero();
        for (m, c) in &x.terms {
            let v = self.hom_mono(target, images, m, &mut gen_cache, &mut mono_cache);
            acc.axpy(c, &v);
        }
        acc
    }

    fn hom_mono(
        &self,
        target: &VertexAlgebra,
        images: &dyn Fn(usize) -> VertexPoly,
        m: &[Factor],
        gen_cache: &mut HashMap<Factor, VertexPoly>,
        mono_cache: &mut HashMap<Mono, VertexPoly>,
    ) -> VertexPoly {
        if m.is_empty() {
            return VertexPoly::one();
        }
        if let Some(v) = mono_cache.get(m) {
            return v.clone();
        }
        let f = m[0];
        let img = match gen_cache.get(&f) {
            Some(v) => v.clone(),
            None => {
                let v = target.deriv_n(&images(f.gen as usize), f.der);
                gen_cache.insert(f, v.clone());
                v
            }
        };
        let rest = self.hom_mono(target, images, &m[1..], gen_cache, mono_cache);
        let out = target.nprod(&img, -1, &rest);
        mono_cache.insert(m.to_vec(), out.clone());
        out
    }

    /// All normal-form monomials of doubled weight `two_weight` (conformal grading)
    /// whose factors satisfy `allow`; requires positive generator weights or derivatives.
    pub fn monomials_of_weight(&self, two_weight: i64, allow: &dyn Fn(Factor) -> bool) -> Vec<Mono> {
        // candidate factors with positive weight up to two_weight
        let mut factors = Vec::new();
        for (g, info) in self.gens.iter().enumerate() {
            let mut d = 0u32;
            loop {
                let w = info.two_weight + 2 * d as i64;
                if w > two_weight {
                    break;
                }
                let f = Factor::new(g, d);
                if allow(f) {
                    assert!(w > 0, "monomial enumeration needs positive weights");
                    factors.push((f, w));
                }
                d += 1;
            }
        }
        factors.sort();
        let mut out = Vec::new();
        let mut cur = Vec::new();
        self.enum_monos(&factors, 0, two_weight, &mut cur, &mut out);
        out
    }

    fn enum_monos(&self, factors: &[(Factor, i64)], start: usize, left: i64, cur: &mut Mono, out: &mut Vec<Mono>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..factors.len() {
            let (f, w) = factors[i];
            if w > left {
                continue;
            }
            let odd = self.factor_parity(f) == 1;
            cur.push(f);
            self.enum_monos(factors, if odd { i + 1 } else { i }, left - w, cur, out);
            cur.pop();
        }
    }
}

#[cfg(test)]
mod tests;
