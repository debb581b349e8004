//! The `H`-twisted Zhu algebra of a freely generated vertex algebra.
//!
//! For `V = V(R)` with `R = C[∂] ⊗ g`, `Zhu_H V ≅ U(g)`. Elements are kept in PBW normal
//! form: words of generator indices in nondecreasing order, odd letters not repeated.
//! The projection uses `Zhu(∂a) = -Δ_a Zhu(a)` and
//! `Zhu(:aX:) = Zhu(a) Zhu(X) - Σ_{j≥0} binom(Δ_a, j+1) Zhu(a_(j) X)`;
//! the bracket of generators is `Σ_j binom(Δ_a - 1, j) Zhu(a_(j) b)`.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use crate::linalg::{ColMatrix, SparseVec};
use crate::scalar::Scalar;
use crate::vertex::{sign, Factor, VertexAlgebra, VertexPoly, Weight};

mod susy_zhu;
pub use susy_zhu::{
    check_good_almost_linear, filtered_words, q_j_without_correction, vertex_terms, wfin_closure, wfin_two_routes, zhu_terms, BracketCheck,
    DiffTerm, GradingProfile, LinearityReport, SusyZhu,
};

#[cfg(test)]
mod tests;

#[derive(Debug, Error)]
pub enum ZhuError {
    #[error("input is not homogeneous in conformal weight")]
    Inhomogeneous,
    #[error("{0}")]
    Brst(#[from] crate::brst::BrstError),
    #[error("{0}")]
    Other(String),
}

pub type Word = Vec<usize>;

/// An element of `U(g)` in PBW normal form.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ZhuElement {
    terms: BTreeMap<Word, Scalar>,
}

impl ZhuElement {
    pub fn zero() -> Self {
        ZhuElement::default()
    }

    pub fn constant(c: Scalar) -> Self {
        let mut out = ZhuElement::zero();
        out.add_term(Vec::new(), &c);
        out
    }

    pub fn one() -> Self {
        ZhuElement::constant(Scalar::one())
    }

    fn word(w: Word, c: Scalar) -> Self {
        let mut out = ZhuElement::zero();
        out.add_term(w, &c);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &[usize]) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn constant_term(&self) -> Scalar {
        self.coeff(&[])
    }

    fn add_term(&mut self, w: Word, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(w).or_insert_with(Scalar::zero);
        *e = &*e + c;
        if e.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn axpy(&mut self, c: &Scalar, x: &ZhuElement) {
        for (w, v) in &x.terms {
            self.add_term(w.clone(), &(c * v));
        }
    }

    pub fn add(&self, x: &ZhuElement) -> ZhuElement {
        let mut out = self.clone();
        out.axpy(&Scalar::one(), x);
        out
    }

    pub fn sub(&self, x: &ZhuElement) -> ZhuElement {
        let mut out = self.clone();
        out.axpy(&-&Scalar::one(), x);
        out
    }

    pub fn scale(&self, c: &Scalar) -> ZhuElement {
        let mut out = ZhuElement::zero();
        out.axpy(c, self);
        out
    }

    pub fn neg(&self) -> ZhuElement {
        self.scale(&-&Scalar::one())
    }

    /// Longest word.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(|w| w.len()).max().unwrap_or(0)
    }

    /// Words of length at most one, i.e. the linear and constant part.
    pub fn linear_part(&self) -> ZhuElement {
        ZhuElement { terms: self.terms.iter().filter(|(w, _)| w.len() <= 1).map(|(w, c)| (w.clone(), c.clone())).collect() }
    }
}

/// `binom(x, n)` for a scalar `x`.
pub fn binom(x: &Scalar, n: u32) -> Scalar {
    let mut out = Scalar::one();
    for i in 0..n {
        out = &(&out * &(x - &Scalar::from_int(i as i64))) / &Scalar::from_int(i as i64 + 1);
    }
    out
}

/// `Zhu_H` of a freely generated vertex algebra, with its associative product.
pub struct ZhuAlgebra {
    pub alg: VertexAlgebra,
    delta: Vec<Scalar>,
    parity: Vec<u32>,
    table: RefCell<HashMap<(usize, usize), ZhuElement>>,
    normal: RefCell<HashMap<Word, ZhuElement>>,
    projected: RefCell<HashMap<Vec<Factor>, ZhuElement>>,
}

impl ZhuAlgebra {
    pub fn new(alg: &VertexAlgebra) -> ZhuAlgebra {
        let delta = alg.generators().iter().map(|g| Scalar::frac(g.two_weight, 2)).collect();
        let parity = alg.generators().iter().map(|g| g.parity as u32).collect();
        ZhuAlgebra {
            alg: alg.clone(),
            delta,
            parity,
            table: RefCell::new(HashMap::new()),
            normal: RefCell::new(HashMap::new()),
            projected: RefCell::new(HashMap::new()),
        }
    }

    pub fn ngens(&self) -> usize {
        self.delta.len()
    }

    pub fn gen(&self, i: usize) -> ZhuElement {
        ZhuElement::word(vec![i], Scalar::one())
    }

    /// `Zhu_H` of a generator by name.
    pub fn g(&self, name: &str) -> ZhuElement {
        self.gen(self.alg.index(name).unwrap_or_else(|_| panic!("no generator {}", name)))
    }

    pub fn delta(&self, i: usize) -> &Scalar {
        &self.delta[i]
    }

    pub fn word_parity(&self, w: &[usize]) -> u32 {
        w.iter().map(|&i| self.parity[i]).sum::<u32>() % 2
    }

    /// Parity of a homogeneous element (`None` if mixed).
    pub fn parity(&self, x: &ZhuElement) -> Option<u32> {
        let mut ps = x.terms.keys().map(|w| self.word_parity(w));
        let first = ps.next().unwrap_or(0);
        ps.all(|p| p == first).then_some(first)
    }

    /// `[x_i, x_j] = x_i x_j - (-1)^{p_i p_j} x_j x_i`.
    pub fn gen_bracket(&self, i: usize, j: usize) -> ZhuElement {
        if let Some(v) = self.table.borrow().get(&(i, j)) {
            return v.clone();
        }
        let a = VertexPoly::factor(Factor::new(i, 0));
        let b = VertexPoly::factor(Factor::new(j, 0));
        let mut out = ZhuElement::zero();
        let top = self.alg.max_product(&a, &b);
        for n in 0..=top.max(-1) {
            let c = self.alg.nprod(&a, n, &b);
            if c.is_zero() {
                continue;
            }
            out.axpy(&binom(&(&self.delta[i] - &Scalar::one()), n as u32), &self.project(&c));
        }
        self.table.borrow_mut().insert((i, j), out.clone());
        out
    }

    fn normal_word(&self, w: &[usize]) -> ZhuElement {
        if let Some(v) = self.normal.borrow().get(w) {
            return v.clone();
        }
        let pos = w.windows(2).position(|p| p[0] > p[1] || (p[0] == p[1] && self.parity[p[0]] == 1));
        let out = match pos {
            None => ZhuElement::word(w.to_vec(), Scalar::one()),
            Some(i) => {
                let (a, b) = (w[i], w[i + 1]);
                let (pre, post) = (&w[..i], &w[i + 2..]);
                if a == b {
                    // x x = ½ [x, x] for odd x
                    self.sandwich(pre, &self.gen_bracket(a, a).scale(&Scalar::frac(1, 2)), post)
                } else {
                    let mut swapped = w.to_vec();
                    swapped.swap(i, i + 1);
                    let mut out = self.normal_word(&swapped).scale(&sign(self.parity[a] * self.parity[b]));
                    out.axpy(&Scalar::one(), &self.sandwich(pre, &self.gen_bracket(a, b), post));
                    out
                }
            }
        };
        self.normal.borrow_mut().insert(w.to_vec(), out.clone());
        out
    }

    fn sandwich(&self, pre: &[usize], mid: &ZhuElement, post: &[usize]) -> ZhuElement {
        let mut out = ZhuElement::zero();
        for (m, c) in &mid.terms {
            let w: Word = pre.iter().chain(m.iter()).chain(post.iter()).copied().collect();
            out.axpy(c, &self.normal_word(&w));
        }
        out
    }

    pub fn mul(&self, x: &ZhuElement, y: &ZhuElement) -> ZhuElement {
        let mut out = ZhuElement::zero();
        for (a, ca) in &x.terms {
            for (b, cb) in &y.terms {
                let w: Word = a.iter().chain(b.iter()).copied().collect();
                out.axpy(&(ca * cb), &self.normal_word(&w));
            }
        }
        out
    }

    pub fn mul_many(&self, xs: &[&ZhuElement]) -> ZhuElement {
        xs.iter().fold(ZhuElement::one(), |acc, x| self.mul(&acc, x))
    }

    /// Supercommutator of homogeneous elements.
    pub fn commutator(&self, x: &ZhuElement, y: &ZhuElement) -> ZhuElement {
        let mut out = ZhuElement::zero();
        for (a, ca) in &x.terms {
            for (b, cb) in &y.terms {
                let s = sign(self.word_parity(a) * self.word_parity(b));
                let ab: Word = a.iter().chain(b.iter()).copied().collect();
                let ba: Word = b.iter().chain(a.iter()).copied().collect();
                let c = ca * cb;
                out.axpy(&c, &self.normal_word(&ab));
                out.axpy(&-&(&c * &s), &self.normal_word(&ba));
            }
        }
        out
    }

    fn project_mono(&self, m: &[Factor]) -> ZhuElement {
        if m.is_empty() {
            return ZhuElement::one();
        }
        if let Some(v) = self.projected.borrow().get(m) {
            return v.clone();
        }
        let f = m[0];
        let rest = VertexPoly::monomial(m[1..].to_vec(), Scalar::one());
        let d0 = &self.delta[f.gen as usize];
        // Zhu(∂^n a) = (-1)^n Δ(Δ+1)...(Δ+n-1) Zhu(a)
        let mut c = Scalar::one();
        for i in 0..f.der {
            c = &c * &-&(d0 + &Scalar::from_int(i as i64));
        }
        let head = ZhuElement::word(vec![f.gen as usize], c);
        let mut out = self.mul(&head, &self.project_mono(&m[1..]));
        let delta = d0 + &Scalar::from_int(f.der as i64);
        let a = VertexPoly::factor(f);
        let top = self.alg.max_product(&a, &rest);
        for j in 0..=top.max(-1) {
            let x = self.alg.nprod(&a, j, &rest);
            if x.is_zero() {
                continue;
            }
            out.axpy(&-&binom(&delta, j as u32 + 1), &self.project(&x));
        }
        self.projected.borrow_mut().insert(m.to_vec(), out.clone());
        out
    }

    /// `Zhu_H` of an element of the vertex algebra.
    pub fn project(&self, x: &VertexPoly) -> ZhuElement {
        let mut out = ZhuElement::zero();
        for (m, c) in x.terms() {
            out.axpy(c, &self.project_mono(m));
        }
        out
    }

    /// `[Zhu a, Zhu b] = Σ_j binom(Δ_a - 1, j) Zhu(a_(j) b)` for weight-homogeneous `a`.
    pub fn zhu_bracket(&self, a: &VertexPoly, b: &VertexPoly) -> Result<ZhuElement, ZhuError> {
        let da = match self.alg.hamiltonian_weight(a) {
            Weight::Homogeneous(tw) => Scalar::frac(tw, 2),
            Weight::Zero => return Ok(ZhuElement::zero()),
            _ => return Err(ZhuError::Inhomogeneous),
        };
        let mut out = ZhuElement::zero();
        for n in 0..=self.alg.max_product(a, b).max(-1) {
            let c = self.alg.nprod(a, n, b);
            if !c.is_zero() {
                out.axpy(&binom(&(&da - &Scalar::one()), n as u32), &self.project(&c));
            }
        }
        Ok(out)
    }

    /// The odd derivation determined by its values on generators.
    pub fn derivation(&self, images: &[ZhuElement], x: &ZhuElement) -> ZhuElement {
        let mut out = ZhuElement::zero();
        for (w, c) in &x.terms {
            let mut before = 0u32;
            for (k, &i) in w.iter().enumerate() {
                let pre = ZhuElement::word(w[..k].to_vec(), sign(before));
                let post = ZhuElement::word(w[k + 1..].to_vec(), Scalar::one());
                out.axpy(c, &self.mul_many(&[&pre, &images[i], &post]));
                before += self.parity[i];
            }
        }
        out
    }

    /// Vectors of a list of elements over a shared word index.
    pub fn vectors(&self, xs: &[ZhuElement]) -> (usize, Vec<SparseVec>) {
        let mut index: BTreeMap<Word, usize> = BTreeMap::new();
        let cols = xs
            .iter()
            .map(|x| {
                x.terms
                    .iter()
                    .map(|(w, c)| {
                        let n = index.len();
                        (*index.entry(w.clone()).or_insert(n), c.clone())
                    })
                    .collect()
            })
            .collect();
        (index.len(), cols)
    }

    /// Dimension of the span of `xs`.
    pub fn rank(&self, xs: &[ZhuElement]) -> usize {
        let (n, cols) = self.vectors(xs);
        ColMatrix::new(n, cols).rank()
    }
}

/// `Q` on `Zhu_H V` induced from a derivation `d` of `V`.
pub struct InducedQ {
    images: Vec<ZhuElement>,
}

impl InducedQ {
    pub fn new(zhu: &ZhuAlgebra, d: &dyn Fn(usize) -> VertexPoly) -> InducedQ {
        InducedQ { images: (0..zhu.ngens()).map(|i| zhu.project(&d(i))).collect() }
    }

    pub fn generator(&self, i: usize) -> &ZhuElement {
        &self.images[i]
    }

    pub fn apply(&self, zhu: &ZhuAlgebra, x: &ZhuElement) -> ZhuElement {
        zhu.derivation(&self.images, x)
    }
}

/// Shorthand for `induced_Q`.
pub fn induced_q(zhu: &ZhuAlgebra, q: &InducedQ, x: &ZhuElement) -> ZhuElement {
    q.apply(zhu, x)
}
