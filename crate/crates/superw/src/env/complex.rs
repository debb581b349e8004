//! The Chevalley-Eilenberg complex `∧ñ* ⊗ U(p̃)`, the double complex `∧ñ* ⊗ M ⊗ ∧ñ` with
//! `M ≅ U^k(g̃)`, and the map `ι` into the Zhu algebra of the SUSY BRST complex.

use std::collections::BTreeMap;

use serde::Serialize;

use super::{adjoint_action, reduce_mod_ideal, EnvElement, NilCharacter, TakiffAlgebra, Word};
use crate::linalg::SparseVec;
use crate::liealg::{basis_vec, Elem};
use crate::scalar::Scalar;
use crate::vertex::sign;
use crate::zhu::{check_good_almost_linear, BracketCheck, DiffTerm, GradingProfile, LinearityReport, SusyZhu, ZhuElement};

/// `(ghosts, M word, wedge)`; ghosts and wedge letters are `ñ` generators.
type Key = (Vec<usize>, Word, Vec<usize>);

/// An element of `∧ñ* ⊗ U ⊗ ∧ñ`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Chain {
    terms: BTreeMap<Key, Scalar>,
}

impl Chain {
    pub fn zero() -> Chain {
        Chain::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Key, &Scalar)> {
        self.terms.iter()
    }

    fn add_term(&mut self, k: Key, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(k.clone()).or_insert_with(Scalar::zero);
        *e = &*e + c;
        if e.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn axpy(&mut self, c: &Scalar, x: &Chain) {
        for (k, v) in &x.terms {
            self.add_term(k.clone(), &(c * v));
        }
    }

    pub fn sub(&self, x: &Chain) -> Chain {
        let mut out = self.clone();
        out.axpy(&-&Scalar::one(), x);
        out
    }

    pub fn scale(&self, c: &Scalar) -> Chain {
        let mut out = Chain::zero();
        out.axpy(c, self);
        out
    }
}

fn unit(i: usize) -> SparseVec {
    SparseVec::from([(i, Scalar::one())])
}

/// Sorts letters of a supercommutative algebra, returning `None` when an odd letter repeats.
fn super_sort(letters: &[usize], par: &dyn Fn(usize) -> u32) -> Option<(Vec<usize>, Scalar)> {
    let mut w = letters.to_vec();
    let mut s = 0u32;
    for i in 0..w.len() {
        for j in (i + 1..w.len()).rev() {
            if w[j - 1] > w[j] {
                s += par(w[j - 1]) * par(w[j]);
                w.swap(j - 1, j);
            }
        }
    }
    if w.windows(2).any(|p| p[0] == p[1] && par(p[0]) == 1) {
        return None;
    }
    Some((w, sign(s)))
}

/// Shared structure of both complexes: the Takiff algebra, the character and the sign rules.
pub struct CeComplex<'a> {
    pub t: &'a TakiffAlgebra,
    pub chi: NilCharacter,
}

impl<'a> CeComplex<'a> {
    pub fn new(t: &'a TakiffAlgebra, chi: NilCharacter) -> CeComplex<'a> {
        CeComplex { t, chi }
    }

    fn nil(&self) -> std::ops::Range<usize> {
        self.t.n_start..self.t.env.ngens()
    }

    fn p(&self, i: usize) -> u32 {
        self.t.env.parity[i] as u32
    }

    /// Parity of a ghost or wedge letter.
    fn shifted(&self, i: usize) -> u32 {
        (self.p(i) + 1) % 2
    }

    fn word_shifted(&self, w: &[usize]) -> u32 {
        w.iter().map(|&i| self.shifted(i)).sum::<u32>() % 2
    }

    fn m_parity(&self, w: &[usize]) -> u32 {
        self.t.env.word_parity(w)
    }

    /// `π_+[x_i, x_j]` in `ñ` (central terms dropped).
    fn bracket_plus(&self, i: usize, j: usize) -> Vec<(usize, Scalar)> {
        let (lin, _) = self.t.env.lie_bracket(&unit(i), &unit(j));
        lin.into_iter().filter(|(k, _)| self.t.is_n(*k)).collect()
    }

    /// Adds `c · ω ⊗ m ⊗ β` with `ω`, `β` given as unsorted letter lists.
    fn push(&self, out: &mut Chain, ghosts: &[usize], m: &[usize], wedge: &[usize], c: &Scalar) {
        let par = |i: usize| self.shifted(i);
        let Some((g, sg)) = super_sort(ghosts, &par) else { return };
        let Some((b, sb)) = super_sort(wedge, &par) else { return };
        out.add_term((g, m.to_vec(), b), &(&(c * &sg) * &sb));
    }

    /// `d c^γ = ½ Σ (-1)^{p_α} f^γ_{βα} c^α c^β`.
    pub fn ghost_d(&self, gamma: usize) -> Chain {
        let mut out = Chain::zero();
        let half = Scalar::frac(1, 2);
        for a in self.nil() {
            for b in self.nil() {
                for (k, c) in self.bracket_plus(b, a) {
                    if k == gamma {
                        self.push(&mut out, &[a, b], &[], &[], &(&(&half * &sign(self.p(a))) * &c));
                    }
                }
            }
        }
        out
    }

    /// The display `½ Σ c^{y}_{x,γ} c^x c^y` with `π_+[x, x_γ] = Σ c^y_{x,γ} y`.
    pub fn ghost_d_display(&self, gamma: usize) -> Chain {
        let mut out = Chain::zero();
        let half = Scalar::frac(1, 2);
        for a in self.nil() {
            for (k, c) in self.bracket_plus(a, gamma) {
                self.push(&mut out, &[a, k], &[], &[], &(&half * &c));
            }
        }
        out
    }

    fn d_ghosts(&self, ghosts: &[usize]) -> Chain {
        let mut out = Chain::zero();
        let mut s = 0;
        for (i, &g) in ghosts.iter().enumerate() {
            for ((dg, _, _), c) in self.ghost_d(g).terms() {
                let letters: Vec<usize> = ghosts[..i].iter().chain(dg.iter()).chain(ghosts[i + 1..].iter()).copied().collect();
                self.push(&mut out, &letters, &[], &[], &(c * &sign(s)));
            }
            s += self.shifted(g);
        }
        out
    }

    /// Chevalley-Eilenberg differential on `∧ñ* ⊗ U(p̃)`.
    pub fn d(&self, x: &Chain) -> Chain {
        let mut out = Chain::zero();
        for ((g, m, b), c) in x.terms() {
            assert!(b.is_empty(), "wedge letters do not belong to this complex");
            for ((dg, _, _), c2) in self.d_ghosts(g).terms() {
                self.push(&mut out, dg, m, &[], &(c * c2));
            }
            let s = &sign(self.word_shifted(g)) * c;
            let me = EnvElement::word(m.clone(), Scalar::one());
            for a in self.nil() {
                let ghosts: Vec<usize> = g.iter().copied().chain([a]).collect();
                for (w, c3) in adjoint_action(self.t, a, &me, &self.chi).terms() {
                    self.push(&mut out, &ghosts, w, &[], &(&s * c3));
                }
            }
        }
        out
    }

    pub fn ghost(&self, a: usize) -> Chain {
        let mut out = Chain::zero();
        out.add_term((vec![a], Vec::new(), Vec::new()), &Scalar::one());
        out
    }

    pub fn letter(&self, a: usize) -> Chain {
        let mut out = Chain::zero();
        out.add_term((Vec::new(), vec![a], Vec::new()), &Scalar::one());
        out
    }

    /// Generators of the complex: `p̃` letters, then ghosts.
    pub fn generators(&self) -> Vec<(String, Chain)> {
        let mut out: Vec<(String, Chain)> = (0..self.t.n_start).map(|i| (self.t.env.names[i].clone(), self.letter(i))).collect();
        out.extend(self.nil().map(|a| (format!("c[{}]", self.t.env.names[a]), self.ghost(a))));
        out
    }

    /// Generators where `d² ≠ 0`.
    pub fn square_failures(&self) -> Vec<String> {
        self.generators().into_iter().filter(|(_, g)| !self.d(&self.d(g)).is_zero()).map(|(n, _)| n).collect()
    }

    /// `d(1 ⊗ a)` against `Σ c^α ⊗ ad x_α(a)` reduced.
    pub fn module_display_failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        for i in 0..self.t.n_start {
            let mut want = Chain::zero();
            for a in self.nil() {
                let ad = reduce_mod_ideal(self.t, &self.t.env.commutator(&self.t.env.gen(a), &self.t.env.gen(i)), &self.chi);
                for (w, c) in ad.terms() {
                    self.push(&mut want, &[a], w, &[], c);
                }
            }
            if self.d(&self.letter(i)) != want {
                out.push(self.t.env.names[i].clone());
            }
        }
        out
    }

    /// Ghost-linear part of `d(1 ⊗ a)`.
    pub fn graded_part(&self, i: usize) -> Chain {
        let mut out = Chain::zero();
        for ((g, m, b), c) in self.d(&self.letter(i)).terms() {
            if g.len() == 1 && m.is_empty() && b.is_empty() {
                out.add_term((g.clone(), Vec::new(), Vec::new()), c);
            }
        }
        out
    }

    /// The display `Σ χ([x_α, a]) c^α`.
    pub fn graded_display(&self, i: usize) -> Chain {
        let mut out = Chain::zero();
        for a in self.nil() {
            let (lin, _) = self.t.env.lie_bracket(&unit(a), &unit(i));
            let v = lin.iter().fold(Scalar::zero(), |acc, (k, c)| &acc + &(c * &self.chi.value(*k)));
            self.push(&mut out, &[a], &[], &[], &v);
        }
        out
    }

    /// Bigrading (doubled): `(2j, -2j)` on `p̃`, `(1 - 2j, 1 + 2j)` on ghosts.
    pub fn profile(&self) -> GradingProfile {
        let gens = self.generators();
        let names = gens.iter().map(|(n, _)| n.clone()).collect();
        let mut bidegree = Vec::new();
        let mut two_delta = Vec::new();
        for i in 0..self.t.n_start {
            let tj = self.t.two_j(i);
            bidegree.push((tj, -tj));
            two_delta.push(self.t.two_delta(i));
        }
        for a in self.nil() {
            let tj = self.t.two_j(a);
            bidegree.push((1 - tj, 1 + tj));
            two_delta.push(if self.t.source(a).1 { 1 + tj } else { tj });
        }
        GradingProfile { names, bidegree, two_delta }
    }

    /// The terms of `d` on generators, for the good almost linear test.
    pub fn diff_terms(&self, profile: &GradingProfile) -> Vec<Vec<DiffTerm>> {
        self.generators()
            .iter()
            .map(|(_, g)| {
                self.d(g)
                    .terms()
                    .map(|((gh, m, _), c)| {
                        let idx: Vec<usize> = m.iter().copied().chain(gh.iter().copied()).collect();
                        let bidegree = idx.iter().fold((0, 0), |(p, q), &i| (p + profile.bidegree[i].0, q + profile.bidegree[i].1));
                        DiffTerm { bidegree, linear: (idx.len() == 1).then(|| idx[0]), derivative: false, coeff: c.clone() }
                    })
                    .collect()
            })
            .collect()
    }

    pub fn text(&self, x: &Chain) -> String {
        chain_text(self.t, x)
    }
}

fn chain_text(t: &TakiffAlgebra, x: &Chain) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let names = &t.env.names;
    x.terms()
        .map(|((g, m, b), c)| {
            let mut parts: Vec<String> = g.iter().map(|&i| format!("c[{}]", names[i])).collect();
            parts.extend(m.iter().map(|&i| names[i].clone()));
            parts.extend(b.iter().map(|&i| format!("w[{}]", names[i])));
            let body = if parts.is_empty() { "1".to_string() } else { parts.join(" ") };
            if c.is_one() {
                body
            } else {
                format!("({})*{}", c.factor_text(), body)
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

/// Summary of the Chevalley-Eilenberg checks.
#[derive(Clone, Debug, Serialize)]
pub struct CeReport {
    pub square_failures: Vec<String>,
    pub module_display_failures: Vec<String>,
    /// Ghosts where the display with `π_+[x, x_γ]` coefficients differs from `d c^γ`.
    pub ghost_display_mismatches: Vec<String>,
    /// Letters where the ghost-linear part of `d` equals the graded display.
    pub graded_matches: usize,
    /// Letters where it equals minus the display.
    pub graded_opposite: usize,
    pub linearity: LinearityReport,
    pub pass: bool,
}

pub fn ce_check(t: &TakiffAlgebra, chi: &NilCharacter) -> CeReport {
    let ce = CeComplex::new(t, chi.clone());
    let square_failures = ce.square_failures();
    let module_display_failures = ce.module_display_failures();
    let ghost_display_mismatches =
        ce.nil().filter(|&a| ce.ghost_d(a) != ce.ghost_d_display(a)).map(|a| t.env.names[a].clone()).collect();
    let mut graded_matches = 0;
    let mut graded_opposite = 0;
    for i in 0..t.n_start {
        let (got, want) = (ce.graded_part(i), ce.graded_display(i));
        if got.is_zero() && want.is_zero() {
            continue;
        }
        if got == want {
            graded_matches += 1;
        } else if got == want.scale(&-&Scalar::one()) {
            graded_opposite += 1;
        }
    }
    let profile = ce.profile();
    let linearity = check_good_almost_linear(&profile, &ce.diff_terms(&profile));
    let pass = square_failures.is_empty() && module_display_failures.is_empty() && linearity.pass;
    CeReport { square_failures, module_display_failures, ghost_display_mismatches, graded_matches, graded_opposite, linearity, pass }
}

/// Sign rule for the homology differential `d_h`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DhSigns {
    /// `(-1)^{P_1} m·c_t` and `(-1)^{P_2} m ⊗ [c_r, c_t]` with the twisted action.
    Display,
    /// The Koszul rule for `m ⊗ c_1 ∧ ... ∧ c_s`: the action term picks up
    /// `(-1)^{(p(c_t)+1) p(m)}`, the bracket term `(-1)^{p(c_r)p(c_t) + p(c_r) + 1 + p(m)}`.
    Koszul,
}

/// The double complex `∧ñ* ⊗ M ⊗ ∧ñ` with `M ≅ U^k(g̃)`, right action
/// `m · ñ = (-1)^{p(ñ)} m (ñ + χ(ñ))` and differential `d_c + (-1)^{|ω|} d_h`.
pub struct DoubleComplex<'a> {
    pub ce: CeComplex<'a>,
    pub signs: DhSigns,
}

impl<'a> DoubleComplex<'a> {
    pub fn new(t: &'a TakiffAlgebra, chi: NilCharacter, signs: DhSigns) -> DoubleComplex<'a> {
        DoubleComplex { ce: CeComplex::new(t, chi), signs }
    }

    fn t(&self) -> &TakiffAlgebra {
        self.ce.t
    }

    /// `1 ⊗ ñ ∈ M`, that is `ñ + χ(ñ)`.
    pub fn m_of_nil(&self, n: usize) -> EnvElement {
        self.t().env.gen(n).add(&EnvElement::constant(self.ce.chi.value(n)))
    }

    /// `x · (m ⊗ β)` for `x ∈ ñ`.
    fn act(&self, x: usize, m: &[usize], b: &[usize], out: &mut Chain, ghosts: &[usize], c: &Scalar) {
        let env = &self.t().env;
        let me = EnvElement::word(m.to_vec(), Scalar::one());
        for (w, c2) in env.commutator(&env.gen(x), &me).terms() {
            self.ce.push(out, ghosts, w, b, &(c * c2));
        }
        let s0 = sign(self.ce.p(x) * self.ce.m_parity(m));
        let mut s = 0;
        for (i, &bi) in b.iter().enumerate() {
            for (k, c3) in self.ce.bracket_plus(x, bi) {
                let nb: Vec<usize> = b[..i].iter().copied().chain([k]).chain(b[i + 1..].iter().copied()).collect();
                self.ce.push(out, ghosts, m, &nb, &(&(&(c * &s0) * &sign(self.ce.p(x) * s)) * &c3));
            }
            s += self.ce.shifted(bi);
        }
    }

    /// `d_h(m ⊗ b_1 ∧ ... ∧ b_s)`.
    pub fn d_h(&self, m: &[usize], b: &[usize]) -> Chain {
        let env = &self.t().env;
        let me = EnvElement::word(m.to_vec(), Scalar::one());
        let p = |i: usize| self.ce.p(i);
        let koszul = self.signs == DhSigns::Koszul;
        let pm = self.ce.m_parity(m);
        let mut out = Chain::zero();
        for t in 0..b.len() {
            let before: u32 = b[..t].iter().map(|&j| p(j)).sum::<u32>() + t as u32;
            let p1 = (p(b[t]) + 1) * before + if koszul { (p(b[t]) + 1) * pm } else { 0 };
            let rest: Vec<usize> = b.iter().enumerate().filter(|(i, _)| *i != t).map(|(_, &x)| x).collect();
            let act = env.mul(&me, &self.m_of_nil(b[t])).scale(&sign(p(b[t])));
            for (w, c) in act.terms() {
                self.ce.push(&mut out, &[], w, &rest, &(c * &sign(p1)));
            }
        }
        for r in 0..b.len() {
            for t in r + 1..b.len() {
                let before: u32 = b[..r].iter().map(|&j| p(j)).sum::<u32>() + r as u32;
                let between: u32 = b[r + 1..t].iter().map(|&j| p(j)).sum::<u32>() + (t - r - 1) as u32;
                let mut p2 = (p(b[r]) + p(b[t])) * before + (p(b[t]) + 1) * between;
                if koszul {
                    p2 += p(b[r]) * p(b[t]) + p(b[r]) + 1 + pm;
                }
                let rest: Vec<usize> = b.iter().enumerate().filter(|(i, _)| *i != r && *i != t).map(|(_, &x)| x).collect();
                for (k, c) in self.ce.bracket_plus(b[r], b[t]) {
                    let nb: Vec<usize> = [k].into_iter().chain(rest.iter().copied()).collect();
                    self.ce.push(&mut out, &[], m, &nb, &(&c * &sign(p2)));
                }
            }
        }
        out
    }

    /// `d_I = d_c + (-1)^{|ω|} d_h`.
    pub fn d(&self, x: &Chain) -> Chain {
        let mut out = Chain::zero();
        for ((g, m, b), c) in x.terms() {
            for ((dg, _, _), c2) in self.ce.d_ghosts(g).terms() {
                self.ce.push(&mut out, dg, m, b, &(c * c2));
            }
            let s = &sign(self.ce.word_shifted(g)) * c;
            for a in self.ce.nil() {
                let ghosts: Vec<usize> = g.iter().copied().chain([a]).collect();
                self.act(a, m, b, &mut out, &ghosts, &s);
            }
            for ((_, w, nb), c3) in self.d_h(m, b).terms() {
                self.ce.push(&mut out, g, w, nb, &(&s * c3));
            }
        }
        out
    }

    pub fn wedge(&self, n: usize) -> Chain {
        let mut out = Chain::zero();
        out.add_term((Vec::new(), Vec::new(), vec![n]), &Scalar::one());
        out
    }

    /// Generators: ghosts, all letters of `g̃`, wedge letters.
    pub fn generators(&self) -> Vec<(String, Chain)> {
        let names = &self.t().env.names;
        let mut out: Vec<(String, Chain)> = self.ce.nil().map(|a| (format!("c[{}]", names[a]), self.ce.ghost(a))).collect();
        out.extend((0..self.t().env.ngens()).map(|i| (names[i].clone(), self.ce.letter(i))));
        out.extend(self.ce.nil().map(|a| (format!("w[{}]", names[a]), self.wedge(a))));
        out
    }

    pub fn square_failures(&self) -> Vec<String> {
        self.generators().into_iter().filter(|(_, g)| !self.d(&self.d(g)).is_zero()).map(|(n, _)| n).collect()
    }

    pub fn text(&self, x: &Chain) -> String {
        chain_text(self.t(), x)
    }
}

/// `d_h²` on `m ⊗ b_1 ∧ b_2` and `m ⊗ b_1 ∧ b_2 ∧ b_3` for `m = 1` and `m` a letter.
#[derive(Clone, Debug, Serialize)]
pub struct DhSquare {
    pub checked: usize,
    /// `(chain, d_h² of it)` for the failures.
    pub failures: Vec<(String, String)>,
}

pub fn dh_square(t: &TakiffAlgebra, chi: &NilCharacter, signs: DhSigns) -> DhSquare {
    let dc = DoubleComplex::new(t, chi.clone(), signs);
    let nil: Vec<usize> = dc.ce.nil().collect();
    let mut chains: Vec<Vec<usize>> = Vec::new();
    for (i, &a) in nil.iter().enumerate() {
        for (j, &b) in nil.iter().enumerate().skip(i) {
            chains.push(vec![a, b]);
            for &c in nil.iter().skip(j) {
                chains.push(vec![a, b, c]);
            }
        }
    }
    let mut failures = Vec::new();
    let mut checked = 0;
    let letters: Vec<Vec<usize>> = std::iter::once(Vec::new()).chain((0..t.env.ngens()).map(|i| vec![i])).collect();
    for m0 in &letters {
        for b in &chains {
            let mut x = Chain::zero();
            dc.ce.push(&mut x, &[], m0, b, &Scalar::one());
            let Some(((_, _, b), _)) = x.terms().next() else { continue };
            checked += 1;
            let mut sq = Chain::zero();
            for ((_, m, w), c) in dc.d_h(m0, b).terms() {
                sq.axpy(c, &dc.d_h(m, w));
            }
            if !sq.is_zero() {
                failures.push((dc.text(&x), dc.text(&sq)));
            }
        }
    }
    DhSquare { checked, failures }
}

/// `d_h(1 ⊗ ñ) = (-1)^{p(ñ)}(ñ + ⟨f|ñ⟩)` for every `ñ`.
pub fn dh_display_check(t: &TakiffAlgebra, chi: &NilCharacter) -> Vec<BracketCheckChain> {
    let dc = DoubleComplex::new(t, chi.clone(), DhSigns::Display);
    dc.ce
        .nil()
        .map(|n| {
            let got = dc.d_h(&[], &[n]);
            let mut want = Chain::zero();
            for (w, c) in dc.m_of_nil(n).scale(&sign(dc.ce.p(n))).terms() {
                dc.ce.push(&mut want, &[], w, &[], c);
            }
            BracketCheckChain { name: format!("d_h(1 w[{}])", t.env.names[n]), pass: got == want, got: dc.text(&got) }
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct BracketCheckChain {
    pub name: String,
    pub pass: bool,
    pub got: String,
}

/// Checks of the double complex and of the bridge into the Zhu algebra.
#[derive(Clone, Debug, Serialize)]
pub struct BridgeReport {
    /// The six displayed generator images.
    pub displays: Vec<BracketCheck>,
    pub square_failures: Vec<String>,
    /// `ι(d A) = Q(ι A)` on generators.
    pub bridge: Vec<BracketCheck>,
    /// `ι` respects the brackets of `g̃`.
    pub homomorphism: Vec<BracketCheck>,
    pub pass: bool,
}

/// Dictionary between the double complex and the Zhu algebra of the SUSY BRST complex.
struct Bridge<'s, 'a> {
    sz: &'s SusyZhu<'a>,
    t: &'s TakiffAlgebra,
    dc: DoubleComplex<'s>,
}

impl<'s, 'a> Bridge<'s, 'a> {
    fn base(&self, i: usize) -> (usize, bool, u32) {
        let (a, barred) = self.t.source(i);
        (a, barred, self.t.base.parity[a] as u32)
    }

    fn ipow(e: i32) -> Scalar {
        Scalar::i().pow(e)
    }

    /// `ι` on a single ghost, letter or wedge generator.
    fn ghost(&self, i: usize) -> ZhuElement {
        let (a, barred, p) = self.base(i);
        let up = &self.sz.cx.spec.duals.upper[&a];
        if barred {
            // c^{ū_α} = (-1)^{p(α)} Ψ^α, and Ψ^α ↦ -i^{p(α)} φ^{u^α}
            self.sz.phi_up(up).scale(&-&(&sign(p) * &Self::ipow(p as i32)))
        } else {
            self.sz.phi_up_bar(up).scale(&Self::ipow(p as i32))
        }
    }

    fn letter(&self, i: usize) -> ZhuElement {
        let (a, barred, p) = self.base(i);
        let e = basis_vec(a);
        let x = if barred { self.sz.bar(&e) } else { self.sz.bold(&e) };
        x.scale(&Self::ipow(-(p as i32)))
    }

    fn wedge(&self, i: usize) -> ZhuElement {
        let (a, barred, p) = self.base(i);
        let e = basis_vec(a);
        // the wedge letter n is Ψ_{n̄}, and n̄ is Ψ_n
        let x = if barred { self.sz.phi_low(&e) } else { self.sz.phi_low_bar(&e) };
        x.scale(&Self::ipow(-(p as i32)))
    }

    fn iota(&self, x: &Chain) -> ZhuElement {
        let z = &self.sz.zhu;
        let mut out = ZhuElement::zero();
        for ((g, m, b), c) in x.terms() {
            let mut parts: Vec<ZhuElement> = g.iter().map(|&i| self.ghost(i)).collect();
            parts.extend(m.iter().map(|&i| self.letter(i)));
            parts.extend(b.iter().map(|&i| self.wedge(i)));
            let refs: Vec<&ZhuElement> = parts.iter().collect();
            out.axpy(c, &z.mul_many(&refs));
        }
        out
    }

    fn check(&self, name: String, got: &ZhuElement, want: &ZhuElement) -> BracketCheck {
        let r = got.sub(want);
        BracketCheck { name, pass: r.is_zero(), residual: if r.is_zero() { String::new() } else { self.sz.zhu.text(&r) } }
    }

    fn check_chain(&self, name: String, got: &Chain, want: &Chain) -> BracketCheck {
        let r = got.sub(want);
        BracketCheck { name, pass: r.is_zero(), residual: if r.is_zero() { String::new() } else { self.dc.text(&r) } }
    }

    /// `Ψ^{m̄}` for `m ∈ g`: `Σ (m|u_γ) c^{u_γ}`.
    fn psi_up_bar(&self, m: &Elem) -> Vec<(usize, Scalar)> {
        let g = &self.t.base;
        self.t.grading.n_plus().into_iter().map(|c| (self.t.plain[c], g.form(m, &basis_vec(c)))).filter(|(_, v)| !v.is_zero()).collect()
    }

    /// `Ψ^m = Σ (m|u_γ) Ψ^γ` with `Ψ^γ = (-1)^{p(γ)} c^{ū_γ}`.
    fn psi_up(&self, m: &Elem) -> Vec<(usize, Scalar)> {
        let g = &self.t.base;
        self.t
            .grading
            .n_plus()
            .into_iter()
            .map(|c| (self.t.bar[c], &g.form(m, &basis_vec(c)) * &sign(g.parity[c] as u32)))
            .filter(|(_, v)| !v.is_zero())
            .collect()
    }

    /// `Ψ_n` for `n ∈ g` is the wedge letter `π_+(n)‾`; `Ψ_{n̄}` is `π_+(n)`.
    fn psi_low(&self, n: &Elem, barred: bool) -> Vec<(usize, Scalar)> {
        n.iter()
            .filter(|(a, _)| self.t.grading.two_j[**a] > 0)
            .map(|(a, c)| (if barred { self.t.plain[*a] } else { self.t.bar[*a] }, c.clone()))
            .collect()
    }

    fn displays(&self) -> Vec<BracketCheck> {
        let g = &self.t.base;
        let duals = &self.sz.cx.spec.duals.upper;
        let plus = self.t.grading.n_plus();
        let half = Scalar::frac(1, 2);
        let ce = &self.dc.ce;
        let mut out = Vec::new();
        let push2 = |acc: &mut Chain, xs: &[(usize, Scalar)], ys: &[(usize, Scalar)], c: &Scalar, wedge: bool| {
            for (x, cx) in xs {
                for (y, cy) in ys {
                    let k = &(c * cx) * cy;
                    if wedge {
                        ce.push(acc, &[*x], &[], &[*y], &k);
                    } else {
                        ce.push(acc, &[*x, *y], &[], &[], &k);
                    }
                }
            }
        };
        for &be in &plus {
            let ub = &duals[&be];
            let pb = g.parity[be] as u32;
            let mut w1 = Chain::zero();
            let mut w2 = Chain::zero();
            for &al in &plus {
                let pa = g.parity[al] as u32;
                let c = g.bracket(&basis_vec(al), ub);
                let a_bar = vec![(self.t.plain[al], Scalar::one())];
                let a_up = vec![(self.t.bar[al], sign(pa))];
                push2(&mut w1, &a_bar, &self.psi_up_bar(&c), &half, false);
                push2(&mut w2, &a_bar, &self.psi_up(&c), &(&half * &sign(pa)), false);
                push2(&mut w2, &a_up, &self.psi_up_bar(&c), &-&half, false);
            }
            let name = &g.names[be];
            out.push(self.check_chain(format!("d(Psi^{{{}b}})", name), &self.dc.d(&ce.ghost(self.t.plain[be])), &w1));
            // Ψ^β = (-1)^{p(β)} c^{ū_β}
            let lhs = self.dc.d(&ce.ghost(self.t.bar[be])).scale(&sign(pb));
            out.push(self.check_chain(format!("d(Psi^{{{}}})", name), &lhs, &w2));
        }
        let kappa = &self.t.kappa;
        for m in 0..g.dim() {
            let em = basis_vec(m);
            let mut w3 = Chain::zero();
            let mut w4 = Chain::zero();
            for &al in &plus {
                let pa = g.parity[al] as u32;
                let c = g.bracket(&basis_vec(al), &em);
                for (k, v) in &c {
                    ce.push(&mut w3, &[self.t.plain[al]], &[self.t.plain[*k]], &[], v);
                    // (-1)^{p(α)} Ψ^α = c^{ū_α}
                    ce.push(&mut w3, &[self.t.bar[al]], &[self.t.bar[*k]], &[], v);
                    ce.push(&mut w4, &[self.t.plain[al]], &[self.t.bar[*k]], &[], &(v * &sign(pa)));
                }
                let kf = kappa * &g.form[al][m];
                ce.push(&mut w4, &[self.t.bar[al]], &[], &[], &(&kf * &sign(pa)));
            }
            let name = &g.names[m];
            out.push(self.check_chain(format!("d({})", name), &self.dc.d(&ce.letter(self.t.plain[m])), &w3));
            out.push(self.check_chain(format!("d({}b)", name), &self.dc.d(&ce.letter(self.t.bar[m])), &w4));
        }
        for &n in &plus {
            let en = basis_vec(n);
            let pn = g.parity[n] as u32;
            let mut w5 = Chain::zero();
            let mut w6 = Chain::zero();
            for (w, c) in self.dc.m_of_nil(self.t.plain[n]).scale(&sign(pn)).terms() {
                ce.push(&mut w5, &[], w, &[], c);
            }
            for (w, c) in self.dc.m_of_nil(self.t.bar[n]).scale(&sign(pn + 1)).terms() {
                ce.push(&mut w6, &[], w, &[], c);
            }
            for &al in &plus {
                let pa = g.parity[al] as u32;
                let c = g.bracket(&basis_vec(al), &en);
                let a_bar = vec![(self.t.plain[al], Scalar::one())];
                let a_up = vec![(self.t.bar[al], sign(pa))];
                push2(&mut w5, &a_bar, &self.psi_low(&c, true), &Scalar::one(), true);
                push2(&mut w5, &a_up, &self.psi_low(&c, false), &sign(pa), true);
                push2(&mut w6, &a_bar, &self.psi_low(&c, false), &sign(pa), true);
            }
            let name = &g.names[n];
            out.push(self.check_chain(format!("d(Psi_{{{}b}})", name), &self.dc.d(&self.dc.wedge(self.t.plain[n])), &w5));
            out.push(self.check_chain(format!("d(Psi_{{{}}})", name), &self.dc.d(&self.dc.wedge(self.t.bar[n])), &w6));
        }
        out
    }

    fn bridge(&self) -> Vec<BracketCheck> {
        self.dc
            .generators()
            .into_iter()
            .map(|(name, x)| {
                let lhs = self.iota(&self.dc.d(&x));
                let rhs = self.sz.q(&self.iota(&x));
                self.check(format!("iota d({}) = Q iota({})", name, name), &lhs, &rhs)
            })
            .collect()
    }

    fn homomorphism(&self) -> Vec<BracketCheck> {
        let env = &self.t.env;
        let z = &self.sz.zhu;
        let mut out = Vec::new();
        for i in 0..env.ngens() {
            for j in 0..env.ngens() {
                let b = env.gen_bracket(i, j);
                let mut want = ZhuElement::zero();
                for (w, c) in b.terms() {
                    let parts: Vec<ZhuElement> = w.iter().map(|&k| self.letter(k)).collect();
                    want.axpy(c, &z.mul_many(&parts.iter().collect::<Vec<_>>()));
                }
                let got = z.commutator(&self.letter(i), &self.letter(j));
                out.push(self.check(format!("iota[{}, {}]", env.names[i], env.names[j]), &got, &want));
            }
        }
        out
    }
}

/// Builds the Takiff algebra at `k + h∨` of the complex, the character `χ_ℓ` with `ℓ = -i`,
/// and checks the displays, `d² = 0` and `ι ∘ d = Q ∘ ι` on generators.
pub fn bridge_iota(sz: &SusyZhu, signs: DhSigns) -> Result<BridgeReport, super::EnvError> {
    let g = &sz.cx.spec.algebra;
    let t = TakiffAlgebra::new(g, sz.cx.spec.shifted_level())?;
    let chi = NilCharacter::from_form(&t, &-&Scalar::i())?;
    let br = Bridge { sz, t: &t, dc: DoubleComplex::new(&t, chi, signs) };
    let displays = br.displays();
    let square_failures = br.dc.square_failures();
    let bridge = br.bridge();
    let homomorphism = br.homomorphism();
    let pass = displays.iter().chain(&bridge).chain(&homomorphism).all(|c| c.pass) && square_failures.is_empty();
    Ok(BridgeReport { displays, square_failures, bridge, homomorphism, pass })
}
