//! N=1 supersymmetry on top of the λ-bracket engine.
//!
//! A SUSY vertex algebra is stored as an ordinary vertex algebra whose
//! generators come in pairs `(ā, Dā)`. The Λ-bracket
//! `[a Λ b] = [Da λ b] + χ [a λ b]` is kept as the pair of λ-brackets.

use serde::Serialize;
use thiserror::Error;

use crate::liealg::AlgebraSpec;
use crate::scalar::Scalar;
use crate::vertex::{sign, Factor, Generator, LambdaPoly, VertexAlgebra, VertexError, VertexPoly};

#[derive(Debug, Error)]
pub enum SusyError {
    #[error("generator `{0}` has no SUSY partner")]
    NoPartner(String),
    #[error("Λ-table entry ({0}, {1}) is not linear; expand it by hand")]
    Nonlinear(String, String),
    #[error(transparent)]
    Vertex(#[from] VertexError),
}

/// `part0 + χ part1`, with `χ² = -λ` already eliminated.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LambdaSuperPoly {
    pub part0: LambdaPoly,
    pub part1: LambdaPoly,
}

impl LambdaSuperPoly {
    pub fn new(part0: LambdaPoly, part1: LambdaPoly) -> Self {
        LambdaSuperPoly { part0, part1 }
    }

    pub fn is_zero(&self) -> bool {
        self.part0.is_zero() && self.part1.is_zero()
    }

    pub fn sub(&self, o: &LambdaSuperPoly) -> LambdaSuperPoly {
        LambdaSuperPoly { part0: self.part0.sub(&o.part0), part1: self.part1.sub(&o.part1) }
    }

    pub fn scale(&self, c: &Scalar) -> LambdaSuperPoly {
        LambdaSuperPoly { part0: self.part0.scale(c), part1: self.part1.scale(c) }
    }

    /// Printed as a sum of `lambda^n*(…)` and `chi*lambda^n*(…)` terms.
    pub fn text(&self, alg: &VertexAlgebra) -> String {
        let mut parts = Vec::new();
        for (prefix, l) in [("", &self.part0), ("chi", &self.part1)] {
            for (n, c) in l.coeffs.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let lam = match n {
                    0 => String::new(),
                    1 => "lambda".to_string(),
                    _ => format!("lambda^{}", n),
                };
                let head: Vec<&str> = [prefix, lam.as_str()].into_iter().filter(|s| !s.is_empty()).collect();
                if head.is_empty() {
                    parts.push(format!("({})", alg.text(c)));
                } else {
                    parts.push(format!("{}*({})", head.join("*"), alg.text(c)));
                }
            }
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// A generator `ā` together with its partner `Dā`; weights and bounds are those of `ā`.
#[derive(Clone, Debug)]
pub struct SuperGen {
    pub name: String,
    pub parity: u8,
    pub two_weight: i64,
    pub charge: i64,
    pub two_bound: i64,
}

impl SuperGen {
    pub fn new(name: &str, parity: u8, two_weight: i64) -> Self {
        SuperGen { name: name.to_string(), parity, two_weight, charge: 0, two_bound: two_weight.max(0) }
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

/// Index of `ā` for the `i`-th super generator.
pub fn bar(i: usize) -> usize {
    2 * i
}

/// Index of `Dā` for the `i`-th super generator.
pub fn dbar(i: usize) -> usize {
    2 * i + 1
}

/// Builds a SUSY vertex algebra from Λ-brackets among the `ā`.
pub struct SusyBuilder {
    name: String,
    gens: Vec<SuperGen>,
    entries: Vec<(usize, usize, LambdaSuperPoly)>,
}

impl SusyBuilder {
    pub fn new(name: &str, gens: Vec<SuperGen>) -> Self {
        SusyBuilder { name: name.to_string(), gens, entries: Vec::new() }
    }

    /// `[ā_i Λ ā_j]`, with the right side written in generator indices `bar`/`dbar`.
    pub fn set(&mut self, i: usize, j: usize, value: LambdaSuperPoly) {
        self.entries.push((i, j, value));
    }

    /// Expands every entry into the four λ-brackets by sesquilinearity and
    /// fills the reversed pairs by skew-symmetry.
    pub fn build(self) -> Result<SusyAlgebra, SusyError> {
        let mut gens = Vec::new();
        for g in &self.gens {
            gens.push(Generator::new(&g.name, g.parity, g.two_weight).with_charge(g.charge).with_bound(g.two_bound));
            gens.push(
                Generator::new(&format!("D{}", g.name), 1 - g.parity, g.two_weight + 1)
                    .with_charge(g.charge)
                    .with_bound(g.two_bound + 1),
            );
        }
        let mut va = VertexAlgebra::new(&self.name, gens)?;
        let linear = |p: &LambdaPoly| p.coeffs.iter().all(|c| c.terms().all(|(m, _)| m.len() <= 1));
        for (i, j, v) in &self.entries {
            if !linear(&v.part0) || !linear(&v.part1) {
                return Err(SusyError::Nonlinear(self.gens[*i].name.clone(), self.gens[*j].name.clone()));
            }
        }
        let tmp = SusyAlgebra { va: va.clone(), npairs: self.gens.len() };
        for (i, j, v) in &self.entries {
            let (a, b) = (bar(*i), bar(*j));
            let pa = self.gens[*i].parity as u32;
            // [ā λ b̄], [Dā λ b̄]
            va.set_bracket(a, b, &v.part1);
            va.set_bracket(dbar(*i), b, &v.part0);
            // [ā λ Db̄] = (-1)^{p(ā)} (D[ā λ b̄] - [Dā λ b̄])
            let d1 = tmp.d_lambda(&v.part1);
            let x = d1.sub(&v.part0).scale(&sign(pa));
            va.set_bracket(a, dbar(*j), &x);
            // [Dā λ Db̄] = (-1)^{p(ā)+1} (D[Dā λ b̄] + λ[ā λ b̄])
            let d0 = tmp.d_lambda(&v.part0);
            let y = d0.add(&v.part1.shift()).scale(&sign(pa + 1));
            va.set_bracket(dbar(*i), dbar(*j), &y);
        }
        va.complete_skew();
        Ok(SusyAlgebra { va, npairs: self.gens.len() })
    }
}

fn d_image(g: usize) -> VertexPoly {
    if g.is_multiple_of(2) {
        VertexPoly::factor(Factor::new(g + 1, 0))
    } else {
        VertexPoly::factor(Factor::new(g - 1, 1))
    }
}

/// `D` on an algebra whose generators alternate `ā, Dā`.
pub fn apply_d(va: &VertexAlgebra, x: &VertexPoly) -> VertexPoly {
    va.apply_derivation(&d_image, 1, x)
}

/// A vertex algebra whose generators `2i, 2i+1` are `ā_i, Dā_i`.
#[derive(Clone, Debug)]
pub struct SusyAlgebra {
    pub va: VertexAlgebra,
    npairs: usize,
}

impl std::ops::Deref for SusyAlgebra {
    type Target = VertexAlgebra;
    fn deref(&self) -> &VertexAlgebra {
        &self.va
    }
}

impl SusyAlgebra {
    /// Wraps an algebra whose generators already alternate `ā, Dā`.
    pub fn from_pairs(va: VertexAlgebra) -> Result<Self, SusyError> {
        if !va.ngens().is_multiple_of(2) {
            return Err(SusyError::NoPartner(va.gen(va.ngens() - 1).name.clone()));
        }
        for i in 0..va.ngens() / 2 {
            let (a, b) = (va.gen(bar(i)), va.gen(dbar(i)));
            if a.parity == b.parity || b.two_weight != a.two_weight + 1 {
                return Err(SusyError::NoPartner(a.name.clone()));
            }
        }
        let npairs = va.ngens() / 2;
        Ok(SusyAlgebra { va, npairs })
    }

    pub fn npairs(&self) -> usize {
        self.npairs
    }

    /// The odd derivation with `D ā = Dā`, `D Dā = ∂ā`.
    #[allow(non_snake_case)]
    pub fn D(&self, x: &VertexPoly) -> VertexPoly {
        apply_d(&self.va, x)
    }

    fn d_lambda(&self, l: &LambdaPoly) -> LambdaPoly {
        LambdaPoly::from_coeffs(l.coeffs.iter().map(|c| self.D(c)).collect())
    }

    /// `[a Λ b] = [Da λ b] + χ [a λ b]`.
    pub fn lambda_super(&self, a: &VertexPoly, b: &VertexPoly) -> LambdaSuperPoly {
        LambdaSuperPoly { part0: self.va.lambda_bracket(&self.D(a), b), part1: self.va.lambda_bracket(a, b) }
    }

    /// `[a Λ Db]` predicted from `[a Λ b]`:
    /// its λ-parts are `[Da λ Db] = (-1)^{p(a)+1}(D[Da λ b] + λ[a λ b])`
    /// and `[a λ Db] = (-1)^{p(a)}(D[a λ b] - [Da λ b])`.
    pub fn predict_right_d(&self, a: &VertexPoly, ab: &LambdaSuperPoly) -> LambdaSuperPoly {
        let p = self.va.parity(a);
        let part0 = self.d_lambda(&ab.part0).add(&ab.part1.shift()).scale(&sign(p + 1));
        let part1 = self.d_lambda(&ab.part1).sub(&ab.part0).scale(&sign(p));
        LambdaSuperPoly { part0, part1 }
    }

    /// `[Da Λ b] = χ[a Λ b]`, i.e. parts `(-λ [a λ b], [Da λ b])`.
    pub fn predict_left_d(&self, ab: &LambdaSuperPoly) -> LambdaSuperPoly {
        LambdaSuperPoly { part0: ab.part1.shift().scale(&Scalar::from_int(-1)), part1: ab.part0.clone() }
    }

    /// Checks `[τ Λ τ] = (2∂ + 3λ + χD)τ + λ²χ c/3` and that `½Dτ` is a Virasoro vector.
    pub fn check_superconformal(&self, tau: &VertexPoly, c: Option<&Scalar>) -> SuperconformalReport {
        let got = self.lambda_super(tau, tau);
        let extracted = &got.part1.coeff(2).constant_term() * &Scalar::from_int(3);
        let c = c.cloned().unwrap_or_else(|| extracted.clone());
        let two = Scalar::from_int(2);
        let want = LambdaSuperPoly {
            part0: LambdaPoly::from_coeffs(vec![self.va.deriv(tau).scale(&two), tau.scale(&Scalar::from_int(3))]),
            part1: LambdaPoly::from_coeffs(vec![
                self.D(tau),
                VertexPoly::zero(),
                VertexPoly::constant(&c * &Scalar::frac(1, 3)),
            ]),
        };
        let residual = got.sub(&want);
        let l = self.D(tau).scale(&Scalar::frac(1, 2));
        let ll = self.va.lambda_bracket(&l, &l);
        let vir = LambdaPoly::from_coeffs(vec![
            self.va.deriv(&l),
            l.scale(&two),
            VertexPoly::zero(),
            VertexPoly::constant(&c * &Scalar::frac(1, 12)),
        ]);
        let virasoro_residual = ll.sub(&vir);
        SuperconformalReport {
            pass: residual.is_zero() && virasoro_residual.is_zero(),
            central_charge: c.factor_text(),
            residual: residual.text(&self.va),
            virasoro_residual: LambdaSuperPoly::new(virasoro_residual, LambdaPoly::zero()).text(&self.va),
            c_value: c,
        }
    }

    /// `D² = ∂` on a polynomial.
    pub fn check_d_squared(&self, x: &VertexPoly) -> bool {
        self.D(&self.D(x)) == self.va.deriv(x)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuperconformalReport {
    pub pass: bool,
    pub central_charge: String,
    pub residual: String,
    pub virasoro_residual: String,
    #[serde(skip)]
    pub c_value: Scalar,
}

/// Convention for the SUSY affine Λ-bracket.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AffineConvention {
    /// `[ā Λ b̄] = (-1)^{p(a)(p(b)+1)} [a,b]‾ + χ (a|b) κ`.
    Signed,
    /// `[ā Λ b̄] = (-1)^{p(a)} ([a,b]‾ + κ χ (a|b))`.
    Unsigned,
}

/// Sign in front of `[a,b]‾` and of the central term.
pub fn affine_signs(conv: AffineConvention, pa: u8, pb: u8) -> (Scalar, Scalar) {
    match conv {
        AffineConvention::Signed => (sign(pa as u32 * (pb as u32 + 1)), Scalar::one()),
        AffineConvention::Unsigned => (sign(pa as u32), sign(pa as u32)),
    }
}

/// `V(ḡ)` with `[ā Λ b̄] = s [a,b]‾ + χ (a|b) kappa`; names `prefix[nameb]`,
/// weights 1/2 and 1.
pub fn susy_affine(g: &AlgebraSpec, kappa: &Scalar, prefix: &str, conv: AffineConvention) -> SusyAlgebra {
    let gens: Vec<SuperGen> = (0..g.dim())
        .map(|i| SuperGen::new(&format!("{}[{}b]", prefix, g.names[i]), 1 - g.parity[i], 1))
        .collect();
    let mut b = SusyBuilder::new(&format!("V({}bar)", g.name), gens);
    for i in 0..g.dim() {
        for j in 0..g.dim() {
            let (s, t) = affine_signs(conv, g.parity[i], g.parity[j]);
            let mut br = VertexPoly::zero();
            for (c, v) in &g.bracket[i][j] {
                br.add_term(vec![Factor::new(bar(*c), 0)], &(&s * v));
            }
            let cst = VertexPoly::constant(&(&t * kappa) * &g.form[i][j]);
            if br.is_zero() && cst.is_zero() {
                continue;
            }
            b.set(i, j, LambdaSuperPoly::new(LambdaPoly::from_coeffs(vec![br]), LambdaPoly::from_coeffs(vec![cst])));
        }
    }
    b.build().expect("affine tables are linear")
}

/// Twist `ā ↦ √-1^{p(a)} ā` from the unsigned to the signed convention;
/// returns the pairs `(a, b)` whose Λ-brackets are not carried over.
pub fn twist_mismatches(g: &AlgebraSpec, kappa: &Scalar) -> Vec<(String, String)> {
    let src = susy_affine(g, kappa, "J", AffineConvention::Unsigned);
    let dst = susy_affine(g, kappa, "J", AffineConvention::Signed);
    let factor = |i: usize| if g.parity[i] == 1 { Scalar::i() } else { Scalar::one() };
    let images = |v: usize| VertexPoly::factor(Factor::new(v, 0)).scale(&factor(v / 2));
    let map = |x: &VertexPoly| src.va.apply_hom(&dst.va, &images, x);
    let map_l = |l: &LambdaPoly| LambdaPoly::from_coeffs(l.coeffs.iter().map(map).collect());
    let mut bad = Vec::new();
    for i in 0..g.dim() {
        for j in 0..g.dim() {
            let (x, y) = (VertexPoly::factor(Factor::new(bar(i), 0)), VertexPoly::factor(Factor::new(bar(j), 0)));
            let lhs = src.lambda_super(&x, &y);
            let lhs = LambdaSuperPoly::new(map_l(&lhs.part0), map_l(&lhs.part1));
            let rhs = dst.lambda_super(&map(&x), &map(&y));
            if lhs != rhs {
                bad.push((g.names[i].clone(), g.names[j].clone()));
            }
        }
    }
    bad
}

#[cfg(test)]
mod tests;
