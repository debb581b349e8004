//! Universal enveloping superalgebras in PBW normal form, the SUSY Takiff algebra
//! `g̃ ⊕ CK`, and the finite SUSY W-algebra `U(g̃, f)` as adjoint invariants.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};

use serde::Serialize;
use thiserror::Error;

use crate::linalg::{ColMatrix, SparseVec};
use crate::liealg::{AlgebraSpec, Elem, GradingData, LieError};
use crate::scalar::Scalar;
use crate::vertex::sign;

mod complex;
mod ghost;

pub use complex::{
    bridge_iota, ce_check, dh_display_check, dh_square, BracketCheckChain, BridgeReport, CeComplex, CeReport, Chain,
    DhSigns, DhSquare, DoubleComplex,
};
pub use ghost::{ghost_center_check, GhostCenterData, GhostCenterReport};

#[cfg(test)]
mod tests;

#[derive(Debug, Error)]
pub enum EnvError {
    #[error("unknown generator {0}")]
    Unknown(String),
    #[error("only scalars are invariant up to PBW degree {0}")]
    OnlyScalars(usize),
    #[error("scaling parameter must be nonzero")]
    ZeroScale,
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error("{0}")]
    Other(String),
}

pub type Word = Vec<usize>;

/// Linear combination of PBW words.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EnvElement {
    terms: BTreeMap<Word, Scalar>,
}

impl EnvElement {
    pub fn zero() -> Self {
        EnvElement::default()
    }

    pub fn constant(c: Scalar) -> Self {
        EnvElement::word(Vec::new(), c)
    }

    pub fn one() -> Self {
        EnvElement::constant(Scalar::one())
    }

    pub fn word(w: Word, c: Scalar) -> Self {
        let mut out = EnvElement::zero();
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

    /// True when the element is a scalar multiple of `1`.
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|w| w.is_empty())
    }

    fn add_term(&mut self, w: Word, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(w.clone()).or_insert_with(Scalar::zero);
        *e = &*e + c;
        if e.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn axpy(&mut self, c: &Scalar, x: &EnvElement) {
        for (w, v) in &x.terms {
            self.add_term(w.clone(), &(c * v));
        }
    }

    pub fn add(&self, x: &EnvElement) -> EnvElement {
        let mut out = self.clone();
        out.axpy(&Scalar::one(), x);
        out
    }

    pub fn sub(&self, x: &EnvElement) -> EnvElement {
        let mut out = self.clone();
        out.axpy(&-&Scalar::one(), x);
        out
    }

    pub fn scale(&self, c: &Scalar) -> EnvElement {
        let mut out = EnvElement::zero();
        out.axpy(c, self);
        out
    }

    pub fn neg(&self) -> EnvElement {
        self.scale(&-&Scalar::one())
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(|w| w.len()).max().unwrap_or(0)
    }
}

/// A Lie superalgebra with central constants in the bracket, and its enveloping algebra.
/// The generator order is the PBW order.
pub struct EnvAlgebra {
    pub names: Vec<String>,
    pub parity: Vec<u8>,
    /// `[x_i, x_j] = Σ c x_k + constant`.
    bracket: Vec<Vec<(Elem, Scalar)>>,
    normal: RefCell<HashMap<Word, EnvElement>>,
}

impl EnvAlgebra {
    pub fn new(names: Vec<String>, parity: Vec<u8>, bracket: Vec<Vec<(Elem, Scalar)>>) -> EnvAlgebra {
        EnvAlgebra { names, parity, bracket, normal: RefCell::new(HashMap::new()) }
    }

    /// `U(g)` for a Lie superalgebra, generators in basis order.
    pub fn from_spec(g: &AlgebraSpec) -> EnvAlgebra {
        let n = g.dim();
        let bracket = (0..n).map(|i| (0..n).map(|j| (g.bracket[i][j].clone(), Scalar::zero())).collect()).collect();
        EnvAlgebra::new(g.names.clone(), g.parity.clone(), bracket)
    }

    pub fn ngens(&self) -> usize {
        self.names.len()
    }

    pub fn index(&self, name: &str) -> Result<usize, EnvError> {
        self.names.iter().position(|n| n == name).ok_or_else(|| EnvError::Unknown(name.to_string()))
    }

    pub fn gen(&self, i: usize) -> EnvElement {
        EnvElement::word(vec![i], Scalar::one())
    }

    /// Generator by name; panics on unknown names.
    pub fn g(&self, name: &str) -> EnvElement {
        self.gen(self.index(name).unwrap())
    }

    pub fn word_parity(&self, w: &[usize]) -> u32 {
        w.iter().map(|&i| self.parity[i] as u32).sum::<u32>() % 2
    }

    /// Parity of a homogeneous element (`None` for mixed or zero).
    pub fn parity_of(&self, x: &EnvElement) -> Option<u32> {
        let mut ps = x.terms.keys().map(|w| self.word_parity(w));
        let p = ps.next()?;
        ps.all(|q| q == p).then_some(p)
    }

    /// `[x_i, x_j]` as an element.
    pub fn gen_bracket(&self, i: usize, j: usize) -> EnvElement {
        let (lin, c) = &self.bracket[i][j];
        let mut out = EnvElement::constant(c.clone());
        for (k, v) in lin {
            out.add_term(vec![*k], v);
        }
        out
    }

    /// Lie bracket of linear elements `(Σ c_i x_i, constant)`.
    pub fn lie_bracket(&self, a: &SparseVec, b: &SparseVec) -> (SparseVec, Scalar) {
        let mut lin = SparseVec::new();
        let mut c = Scalar::zero();
        for (i, x) in a {
            for (j, y) in b {
                let xy = x * y;
                let (l, k) = &self.bracket[*i][*j];
                for (m, v) in l {
                    crate::linalg::axpy(&mut lin, &(&xy * v), &SparseVec::from([(*m, Scalar::one())]));
                }
                c = &c + &(&xy * k);
            }
        }
        (lin, c)
    }

    /// Jacobi identity on all triples of generators, returning the failing triples.
    pub fn jacobi_failures(&self) -> Vec<(usize, usize, usize)> {
        let n = self.ngens();
        let e = |i: usize| SparseVec::from([(i, Scalar::one())]);
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let (pa, pb) = (self.parity[a] as u32, self.parity[b] as u32);
                    let bc = self.lie_bracket(&e(b), &e(c)).0;
                    let ab = self.lie_bracket(&e(a), &e(b)).0;
                    let ac = self.lie_bracket(&e(a), &e(c)).0;
                    let lhs = self.lie_bracket(&e(a), &bc);
                    let r1 = self.lie_bracket(&ab, &e(c));
                    let r2 = self.lie_bracket(&e(b), &ac);
                    let s = sign(pa * pb);
                    let mut lin = lhs.0.clone();
                    crate::linalg::axpy(&mut lin, &-&Scalar::one(), &r1.0);
                    crate::linalg::axpy(&mut lin, &-&s, &r2.0);
                    let cst = &(&lhs.1 - &r1.1) - &(&s * &r2.1);
                    if !lin.is_empty() || !cst.is_zero() {
                        out.push((a, b, c));
                    }
                }
            }
        }
        out
    }

    fn normal_word(&self, w: &[usize]) -> EnvElement {
        if let Some(v) = self.normal.borrow().get(w) {
            return v.clone();
        }
        let pos = w.windows(2).position(|p| p[0] > p[1] || (p[0] == p[1] && self.parity[p[0]] == 1));
        let out = match pos {
            None => EnvElement::word(w.to_vec(), Scalar::one()),
            Some(i) => {
                let (a, b) = (w[i], w[i + 1]);
                let (pre, post) = (&w[..i], &w[i + 2..]);
                if a == b {
                    // x x = ½ [x, x] for odd x
                    self.sandwich(pre, &self.gen_bracket(a, a).scale(&Scalar::frac(1, 2)), post)
                } else {
                    let mut swapped = w.to_vec();
                    swapped.swap(i, i + 1);
                    let s = sign(self.parity[a] as u32 * self.parity[b] as u32);
                    let mut out = self.normal_word(&swapped).scale(&s);
                    out.axpy(&Scalar::one(), &self.sandwich(pre, &self.gen_bracket(a, b), post));
                    out
                }
            }
        };
        self.normal.borrow_mut().insert(w.to_vec(), out.clone());
        out
    }

    fn sandwich(&self, pre: &[usize], mid: &EnvElement, post: &[usize]) -> EnvElement {
        let mut out = EnvElement::zero();
        for (m, c) in &mid.terms {
            let w: Word = pre.iter().chain(m.iter()).chain(post.iter()).copied().collect();
            out.axpy(c, &self.normal_word(&w));
        }
        out
    }

    /// PBW normal form of a product of generators.
    pub fn pbw_normalize(&self, w: &[usize]) -> EnvElement {
        self.normal_word(w)
    }

    pub fn mul(&self, x: &EnvElement, y: &EnvElement) -> EnvElement {
        let mut out = EnvElement::zero();
        for (a, ca) in &x.terms {
            for (b, cb) in &y.terms {
                let w: Word = a.iter().chain(b.iter()).copied().collect();
                out.axpy(&(ca * cb), &self.normal_word(&w));
            }
        }
        out
    }

    pub fn mul_many(&self, xs: &[&EnvElement]) -> EnvElement {
        xs.iter().fold(EnvElement::one(), |acc, x| self.mul(&acc, x))
    }

    /// Supercommutator, bilinear over homogeneous words.
    pub fn commutator(&self, x: &EnvElement, y: &EnvElement) -> EnvElement {
        let mut out = EnvElement::zero();
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

    /// Canonical text: words as space-separated names, coefficients in parentheses.
    pub fn text(&self, x: &EnvElement) -> String {
        if x.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = x
            .terms
            .iter()
            .map(|(w, c)| {
                let word: Vec<&str> = w.iter().map(|&i| self.names[i].as_str()).collect();
                match (word.is_empty(), c.is_one()) {
                    (true, _) => c.factor_text(),
                    (false, true) => word.join(" "),
                    (false, false) => format!("({})*{}", c.factor_text(), word.join(" ")),
                }
            })
            .collect();
        parts.join(" + ")
    }

    /// Parses a sum of `coeff*word` terms, e.g. `Fb - 2*fb xb + 1/4`.
    pub fn parse(&self, text: &str) -> Result<EnvElement, EnvError> {
        let mut out = EnvElement::zero();
        let spaced = text.replace('-', " -").replace('+', " +");
        let mut chunks: Vec<String> = Vec::new();
        for tok in spaced.split_whitespace() {
            if tok.starts_with('+') || tok.starts_with('-') || chunks.is_empty() {
                chunks.push(tok.to_string());
            } else {
                let last = chunks.last_mut().unwrap();
                last.push(' ');
                last.push_str(tok);
            }
        }
        for chunk in chunks {
            let (sgn, body) = match chunk.strip_prefix('-') {
                Some(b) => (-&Scalar::one(), b.trim().to_string()),
                None => (Scalar::one(), chunk.trim_start_matches('+').trim().to_string()),
            };
            if body.is_empty() {
                continue;
            }
            let (coeff, word) = match body.split_once('*') {
                Some((c, w)) => (parse_rational(c.trim())?, w.trim().to_string()),
                None if body.chars().next().is_some_and(|c| c.is_ascii_digit()) => (parse_rational(&body)?, String::new()),
                None => (Scalar::one(), body),
            };
            let mut x = EnvElement::constant(&sgn * &coeff);
            for name in word.split_whitespace() {
                x = self.mul(&x, &self.gen(self.index(name)?));
            }
            out = out.add(&x);
        }
        Ok(out)
    }
}

fn parse_rational(s: &str) -> Result<Scalar, EnvError> {
    let (n, d) = s.split_once('/').unwrap_or((s, "1"));
    let n: i64 = n.trim().parse().map_err(|_| EnvError::Other(format!("bad coefficient {}", s)))?;
    let d: i64 = d.trim().parse().map_err(|_| EnvError::Other(format!("bad coefficient {}", s)))?;
    if d == 0 {
        return Err(EnvError::Other("zero denominator".into()));
    }
    Ok(Scalar::frac(n, d))
}

/// `g̃ ⊕ CK` with `K` specialized to `kappa`. Generators are ordered with `p̃ = g_≤0 ⊕ ḡ_≤0`
/// first (by `Δ`, then name) and `ñ = n ⊕ n̄` last.
pub struct TakiffAlgebra {
    pub base: AlgebraSpec,
    pub grading: GradingData,
    pub kappa: Scalar,
    pub env: EnvAlgebra,
    /// Env index of `a` for each base index.
    pub plain: Vec<usize>,
    /// Env index of `ā` for each base index.
    pub bar: Vec<usize>,
    /// Number of `p̃` generators; indices from here on are `ñ`.
    pub n_start: usize,
}

impl TakiffAlgebra {
    pub fn new(g: &AlgebraSpec, kappa: Scalar) -> Result<TakiffAlgebra, EnvError> {
        let grading = g.grade_decompose()?;
        let n = g.dim();
        // (is ñ, 2Δ, name, base index, barred)
        let mut keys: Vec<(bool, i64, String, usize, bool)> = Vec::new();
        for a in 0..n {
            let tj = grading.two_j[a];
            keys.push((tj > 0, 2 - tj, g.names[a].clone(), a, false));
            keys.push((tj > 0, 1 - tj, format!("{}b", g.names[a]), a, true));
        }
        keys.sort();
        let mut plain = vec![0; n];
        let mut bar = vec![0; n];
        let mut names = Vec::new();
        let mut parity = Vec::new();
        for (idx, (_, _, name, a, barred)) in keys.iter().enumerate() {
            if *barred {
                bar[*a] = idx;
                parity.push(1 - g.parity[*a]);
            } else {
                plain[*a] = idx;
                parity.push(g.parity[*a]);
            }
            names.push(name.clone());
        }
        let n_start = keys.iter().position(|k| k.0).unwrap_or(keys.len());
        let m = 2 * n;
        let mut bracket = vec![vec![(Elem::new(), Scalar::zero()); m]; m];
        let map = |v: &Elem, to: &[usize]| -> Elem { v.iter().map(|(k, c)| (to[*k], c.clone())).collect() };
        for a in 0..n {
            for b in 0..n {
                let ab = &g.bracket[a][b];
                let pa = g.parity[a] as u32;
                bracket[plain[a]][plain[b]] = (map(ab, &plain), Scalar::zero());
                bracket[bar[a]][plain[b]] = (map(ab, &bar), Scalar::zero());
                let s = sign(pa);
                bracket[plain[a]][bar[b]] = (map(ab, &bar).into_iter().map(|(k, c)| (k, &c * &s)).collect(), Scalar::zero());
                bracket[bar[a]][bar[b]] = (Elem::new(), &(&s * &kappa) * &g.form[a][b]);
            }
        }
        let env = EnvAlgebra::new(names, parity, bracket);
        Ok(TakiffAlgebra { base: g.clone(), grading, kappa, env, plain, bar, n_start })
    }

    /// Base index and bar flag of an env generator.
    pub fn source(&self, i: usize) -> (usize, bool) {
        match self.plain.iter().position(|&p| p == i) {
            Some(a) => (a, false),
            None => (self.bar.iter().position(|&p| p == i).expect("generator"), true),
        }
    }

    /// `2j` of the underlying base vector.
    pub fn two_j(&self, i: usize) -> i64 {
        self.grading.two_j[self.source(i).0]
    }

    /// `2Δ`: `Δ(a) = 1 - j_a`, `Δ(ā) = ½ - j_a`.
    pub fn two_delta(&self, i: usize) -> i64 {
        let (a, barred) = self.source(i);
        let tj = self.grading.two_j[a];
        if barred {
            1 - tj
        } else {
            2 - tj
        }
    }

    pub fn is_n(&self, i: usize) -> bool {
        i >= self.n_start
    }

    /// `⟨x_i | x_j⟩`: `⟨ā|b⟩ = (a|b)`, `⟨a|b̄⟩ = (-1)^{p(a)} (a|b)`, zero otherwise.
    pub fn form(&self, i: usize, j: usize) -> Scalar {
        let (a, ba) = self.source(i);
        let (b, bb) = self.source(j);
        match (ba, bb) {
            (true, false) => self.base.form[a][b].clone(),
            (false, true) => &sign(self.base.parity[a] as u32) * &self.base.form[a][b],
            _ => Scalar::zero(),
        }
    }

    /// Invariance and supersymmetry of `⟨·|·⟩` on generators.
    pub fn form_failures(&self) -> Vec<String> {
        let n = self.env.ngens();
        let mut out = Vec::new();
        let pair = |x: &SparseVec, j: usize| -> Scalar {
            x.iter().fold(Scalar::zero(), |acc, (i, c)| &acc + &(c * &self.form(*i, j)))
        };
        for i in 0..n {
            for j in 0..n {
                let (pi, pj) = (self.env.parity[i] as u32, self.env.parity[j] as u32);
                let f = self.form(i, j);
                if f != &sign(pi * pj) * &self.form(j, i) {
                    out.push(format!("supersymmetry {} {}", self.env.names[i], self.env.names[j]));
                }
                for k in 0..n {
                    let e = |x: usize| SparseVec::from([(x, Scalar::one())]);
                    // ⟨[x_i, x_j] | x_k⟩ = ⟨x_i | [x_j, x_k]⟩
                    let l = pair(&self.env.lie_bracket(&e(i), &e(j)).0, k);
                    let jk = self.env.lie_bracket(&e(j), &e(k)).0;
                    let r = jk.iter().fold(Scalar::zero(), |acc, (m, c)| &acc + &(c * &self.form(i, *m)));
                    if l != r {
                        out.push(format!("invariance {} {} {}", self.env.names[i], self.env.names[j], self.env.names[k]));
                    }
                }
            }
        }
        out
    }

    /// Env generator for a base name, `"e"` or `"eb"`.
    pub fn idx(&self, name: &str) -> usize {
        self.env.index(name).unwrap()
    }

    /// The image of a base element `v` in `g` or in `ḡ`.
    pub fn lift(&self, v: &Elem, barred: bool) -> EnvElement {
        let to = if barred { &self.bar } else { &self.plain };
        let mut out = EnvElement::zero();
        for (a, c) in v {
            out.add_term(vec![to[*a]], c);
        }
        out
    }

    /// `2j` for each env generator.
    pub fn two_js(&self) -> Vec<i64> {
        (0..self.env.ngens()).map(|i| self.two_j(i)).collect()
    }
}

/// A character `χ` of `ñ`, stored on the `ñ` generators.
#[derive(Clone, Debug)]
pub struct NilCharacter {
    pub values: BTreeMap<usize, Scalar>,
}

impl NilCharacter {
    /// `χ_ℓ(ñ) = ℓ ⟨f|ñ⟩`.
    pub fn from_form(t: &TakiffAlgebra, ell: &Scalar) -> Result<NilCharacter, EnvError> {
        let f = t.base.osp.as_ref().ok_or_else(|| EnvError::Other("no odd principal f".into()))?.f;
        let fi = t.plain[f];
        let values = (t.n_start..t.env.ngens()).map(|i| (i, ell * &t.form(fi, i))).filter(|(_, c)| !c.is_zero()).collect();
        Ok(NilCharacter { values })
    }

    /// Explicit values on named `ñ` generators; the rest vanish.
    pub fn explicit(t: &TakiffAlgebra, values: &[(&str, Scalar)]) -> Result<NilCharacter, EnvError> {
        let mut out = BTreeMap::new();
        for (name, c) in values {
            let i = t.env.index(name)?;
            if !t.is_n(i) {
                return Err(EnvError::Other(format!("{} is not in ñ", name)));
            }
            if !c.is_zero() {
                out.insert(i, c.clone());
            }
        }
        Ok(NilCharacter { values: out })
    }

    pub fn value(&self, i: usize) -> Scalar {
        self.values.get(&i).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Pairs of `ñ` generators whose bracket is not killed by `χ`.
    pub fn failures(&self, t: &TakiffAlgebra) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in t.n_start..t.env.ngens() {
            for j in t.n_start..t.env.ngens() {
                let e = |x: usize| SparseVec::from([(x, Scalar::one())]);
                let (lin, c) = t.env.lie_bracket(&e(i), &e(j));
                let v = lin.iter().fold(c, |acc, (k, x)| &acc + &(x * &self.value(*k)));
                if !v.is_zero() {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

/// Reduction modulo the left ideal generated by `ñ + χ(ñ)`: each trailing `ñ` letter becomes
/// `-χ(ñ)`.
pub fn reduce_mod_ideal(t: &TakiffAlgebra, x: &EnvElement, chi: &NilCharacter) -> EnvElement {
    let mut out = EnvElement::zero();
    for (w, c) in x.terms() {
        let cut = w.iter().position(|&i| t.is_n(i)).unwrap_or(w.len());
        let mut coeff = c.clone();
        for &n in &w[cut..] {
            coeff = &coeff * &-&chi.value(n);
        }
        out.add_term(w[..cut].to_vec(), &coeff);
    }
    out
}

/// `ad ñ (X)` in `U^k(g̃) / U^k(g̃)(ñ + χ(ñ))`.
pub fn adjoint_action(t: &TakiffAlgebra, n: usize, x: &EnvElement, chi: &NilCharacter) -> EnvElement {
    reduce_mod_ideal(t, &t.env.commutator(&t.env.gen(n), x), chi)
}

/// PBW words in the `p̃` generators of length `1..=cutoff`.
pub fn p_words(t: &TakiffAlgebra, cutoff: usize) -> Vec<Word> {
    let mut out: Vec<Word> = Vec::new();
    let mut layer: Vec<Word> = vec![Vec::new()];
    for _ in 0..cutoff {
        let mut next = Vec::new();
        for w in &layer {
            let start = w.last().copied().unwrap_or(0);
            for i in start..t.n_start {
                if w.last() == Some(&i) && t.env.parity[i] == 1 {
                    continue;
                }
                let mut v = w.clone();
                v.push(i);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Echelon basis of the `ad ñ`-invariants without constant term spanned by PBW words of
/// length at most `cutoff`. Pivots are taken in the order: shorter words first, then larger
/// `Δ`, then PBW order.
pub fn finite_w_invariants(t: &TakiffAlgebra, chi: &NilCharacter, cutoff: usize) -> Result<Vec<EnvElement>, EnvError> {
    let mut words = p_words(t, cutoff);
    let wdelta = |w: &Word| -> i64 { w.iter().map(|&i| t.two_delta(i)).sum() };
    words.sort_by(|a, b| a.len().cmp(&b.len()).then(wdelta(b).cmp(&wdelta(a))).then(a.cmp(b)));
    let mut row_index: BTreeMap<(usize, Word), usize> = BTreeMap::new();
    let mut cols = Vec::new();
    for w in &words {
        let x = EnvElement::word(w.clone(), Scalar::one());
        let mut col = SparseVec::new();
        for n in t.n_start..t.env.ngens() {
            for (v, c) in adjoint_action(t, n, &x, chi).terms() {
                let len = row_index.len();
                let r = *row_index.entry((n, v.clone())).or_insert(len);
                col.insert(r, c.clone());
            }
        }
        cols.push(col);
    }
    let kernel = ColMatrix::new(row_index.len(), cols).kernel();
    if kernel.is_empty() {
        return Err(EnvError::OnlyScalars(cutoff));
    }
    // echelonize the kernel vectors with columns in word order
    let mut ecols: Vec<SparseVec> = vec![SparseVec::new(); words.len()];
    for (r, v) in kernel.iter().enumerate() {
        for (j, c) in v {
            ecols[*j].insert(r, c.clone());
        }
    }
    let ech = ColMatrix::new(kernel.len(), ecols).echelon();
    Ok(ech
        .rows
        .iter()
        .map(|(_, row)| {
            let mut x = EnvElement::zero();
            for (j, c) in row {
                x.add_term(words[*j].clone(), c);
            }
            x
        })
        .collect())
}

/// Coordinates of `x` against `basis` (mod constants when `mod_constants`), if it lies in the span.
pub fn express(x: &EnvElement, basis: &[EnvElement], mod_constants: bool) -> Option<Vec<Scalar>> {
    let mut index: BTreeMap<Word, usize> = BTreeMap::new();
    let mut vec_of = |e: &EnvElement| -> SparseVec {
        e.terms()
            .filter(|(w, _)| !(mod_constants && w.is_empty()))
            .map(|(w, c)| {
                let n = index.len();
                (*index.entry(w.clone()).or_insert(n), c.clone())
            })
            .collect()
    };
    let cols: Vec<SparseVec> = basis.iter().map(&mut vec_of).collect();
    let target = vec_of(x);
    let m = ColMatrix::new(index.len(), cols);
    let sol = crate::linalg::solve(&m, &target)?;
    Some((0..basis.len()).map(|j| sol.get(&j).cloned().unwrap_or_else(Scalar::zero)).collect())
}

/// An algebra map given on generators.
#[derive(Clone, Debug)]
pub struct EnvHom {
    pub images: Vec<EnvElement>,
}

impl EnvHom {
    pub fn apply(&self, dst: &EnvAlgebra, x: &EnvElement) -> EnvElement {
        let mut out = EnvElement::zero();
        for (w, c) in x.terms() {
            let imgs: Vec<&EnvElement> = w.iter().map(|&i| &self.images[i]).collect();
            out.axpy(c, &dst.mul_many(&imgs));
        }
        out
    }

    /// Generator pairs where `φ[x, y] ≠ [φx, φy]`.
    pub fn bracket_failures(&self, src: &EnvAlgebra, dst: &EnvAlgebra) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..src.ngens() {
            for j in 0..src.ngens() {
                let l = self.apply(dst, &src.gen_bracket(i, j));
                let r = dst.commutator(&self.images[i], &self.images[j]);
                if l != r {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

/// `ã ↦ ℓ^{-2 j_a} ã`, which carries the ideal of `χ` to that of `χ_ℓ = ℓ χ`.
pub fn scaling_automorphism(t: &TakiffAlgebra, ell: &Scalar) -> Result<EnvHom, EnvError> {
    if ell.is_zero() {
        return Err(EnvError::ZeroScale);
    }
    let images = (0..t.env.ngens()).map(|i| t.env.gen(i).scale(&ell.pow(-(t.two_j(i) as i32)))).collect();
    Ok(EnvHom { images })
}

/// `χ_ℓ`.
pub fn scaled_character(chi: &NilCharacter, ell: &Scalar) -> NilCharacter {
    NilCharacter { values: chi.values.iter().map(|(i, c)| (*i, ell * c)).collect() }
}

/// `ā ↦ s ā`, `a ↦ a` from `U^{s²κ}(g̃)` to `U^κ(g̃)`.
pub fn level_rescaling(t: &TakiffAlgebra, s: &Scalar) -> Result<(TakiffAlgebra, EnvHom), EnvError> {
    if s.is_zero() {
        return Err(EnvError::ZeroScale);
    }
    let src = TakiffAlgebra::new(&t.base, &t.kappa * &(s * s))?;
    let images = (0..t.env.ngens())
        .map(|i| if t.source(i).1 { t.env.gen(i).scale(s) } else { t.env.gen(i) })
        .collect();
    Ok((src, EnvHom { images }))
}

/// Result of the `osp(1|2)` finite W-algebra computation.
#[derive(Clone, Debug, Serialize)]
pub struct FiniteWReport {
    pub basis: Vec<String>,
    /// Which of the printed `w_F̄`, `w_F` appear in the computed basis.
    pub matches_printed: Vec<(String, bool)>,
    /// Nonzero `ad ñ` images of the printed elements.
    pub printed_residuals: Vec<(String, String)>,
    /// The listed `ad` computations: (label, computed, expected, pass).
    pub ad_checks: Vec<(String, String, String, bool)>,
    /// `2 w_F̄² + 2 w_F` for the computed `w_F̄`, `w_F`.
    pub closure_constant: String,
    pub closure_is_constant: bool,
    pub commuting: bool,
    pub pass: bool,
}

/// The finite SUSY W-algebra of `osp(1|2)` at `k + h∨ = 1` with `ē ↦ -1`.
pub fn osp_finite_w(g: &AlgebraSpec) -> Result<(TakiffAlgebra, NilCharacter, FiniteWReport), EnvError> {
    let t = TakiffAlgebra::new(g, Scalar::one())?;
    let chi = NilCharacter::explicit(&t, &[("eb", -&Scalar::one())])?;
    let basis = finite_w_invariants(&t, &chi, 2)?;
    let e = &t.env;
    let p = |s: &str| e.parse(s).unwrap();
    let printed = [("w_Fb", p("Fb - 2*fb xb + 2*xb - f - 4*xb x")), ("w_F", p("F - 2*fb x - 2*f xb - 4*x x"))];
    let matches_printed: Vec<(String, bool)> = printed.iter().map(|(n, w)| (n.to_string(), basis.contains(w))).collect();
    let mut printed_residuals = Vec::new();
    for (n, w) in &printed {
        for a in t.n_start..e.ngens() {
            let r = adjoint_action(&t, a, w, &chi);
            if !r.is_zero() {
                printed_residuals.push((format!("ad {}({})", e.names[a], n), e.text(&r)));
            }
        }
    }
    let lead = |w: &EnvElement, name: &str| w.coeff(&[t.idx(name)]).is_one();
    let w_f = basis.iter().find(|w| lead(w, "F")).cloned().unwrap_or_default();
    let w_fb = basis.iter().find(|w| lead(w, "Fb")).cloned().unwrap_or_default();
    let (eb, ee) = (t.idx("eb"), t.idx("e"));
    let cases: Vec<(usize, &str, &str, &str)> = vec![
        (eb, "F", "-fb", "ad eb(F)"),
        (eb, "fb x", "-1/2*fb + 2*x", "ad eb(fb x)"),
        (eb, "f xb", "-1/2", "ad eb(f xb)"),
        (eb, "x x", "-x + 1/4", "ad eb(x^2)"),
        (ee, "F", "-f", "ad e(F)"),
        (ee, "fb x", "2*xb x", "ad e(fb x)"),
        (ee, "f xb", "-1/2*f - 2*xb x", "ad e(f xb)"),
        (ee, "x x", "0", "ad e(x^2)"),
    ];
    let mut ad_checks = Vec::new();
    for (n, x, want, label) in cases {
        let got = adjoint_action(&t, n, &p(x), &chi);
        let want = p(want);
        ad_checks.push((label.to_string(), e.text(&got), e.text(&want), got == want));
    }
    let sq = reduce_mod_ideal(&t, &e.mul(&w_fb, &w_fb), &chi);
    let closure = sq.scale(&Scalar::from_int(2)).add(&w_f.scale(&Scalar::from_int(2)));
    let closure_is_constant = closure.is_constant();
    let comm1 = reduce_mod_ideal(&t, &e.commutator(&w_f, &w_fb), &chi);
    let comm2 = reduce_mod_ideal(&t, &e.commutator(&w_f, &w_f), &chi);
    let commuting = comm1.is_zero() && comm2.is_zero();
    let closure_is_constant = closure_is_constant && !w_fb.is_zero();
    let pass = basis.len() == 2 && matches_printed.iter().all(|m| m.1) && ad_checks.iter().all(|c| c.3) && closure_is_constant && commuting;
    let report = FiniteWReport {
        basis: basis.iter().map(|b| e.text(b)).collect(),
        matches_printed,
        printed_residuals,
        ad_checks,
        closure_constant: e.text(&closure),
        closure_is_constant,
        commuting,
        pass,
    };
    Ok((t, chi, report))
}
