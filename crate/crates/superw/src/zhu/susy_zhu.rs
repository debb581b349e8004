//! The Zhu algebra of the SUSY BRST complex: its bracket table, the induced differential,
//! the subalgebras `r_±`, and the good almost linear hypotheses.

use std::collections::BTreeMap;

use serde::Serialize;

use super::{InducedQ, ZhuAlgebra, ZhuElement, ZhuError};
use crate::brst::{Complex, Flavor, Reduced};
use crate::linalg::{ColMatrix, SparseVec};
use crate::liealg::{basis_vec, scale, Elem};
use crate::scalar::Scalar;
use crate::vertex::{sign, Factor, VertexAlgebra, VertexPoly};

/// One verified identity.
#[derive(Clone, Debug, Serialize)]
pub struct BracketCheck {
    pub name: String,
    pub pass: bool,
    /// Text of `computed - expected` when nonzero.
    pub residual: String,
}

fn check(zhu: &ZhuAlgebra, name: String, got: &ZhuElement, want: &ZhuElement) -> BracketCheck {
    let r = got.sub(want);
    BracketCheck { name, pass: r.is_zero(), residual: if r.is_zero() { String::new() } else { zhu.text(&r) } }
}

/// `Zhu_H C^k(ḡ, f)` with named generators.
pub struct SusyZhu<'a> {
    pub cx: &'a Complex,
    pub zhu: ZhuAlgebra,
    pub q: InducedQ,
    kappa: Scalar,
    /// `x = H/2`.
    x: Elem,
}

impl<'a> SusyZhu<'a> {
    pub fn new(cx: &'a Complex) -> Result<SusyZhu<'a>, ZhuError> {
        if cx.flavor() != Flavor::Susy {
            return Err(ZhuError::Other("the Zhu layer uses the SUSY complex".into()));
        }
        let zhu = ZhuAlgebra::new(&cx.alg);
        let q = InducedQ::new(&zhu, &|i| cx.d0_generator(i).clone());
        let h = cx.spec.algebra.h.clone().ok_or_else(|| ZhuError::Other("no grading element".into()))?;
        Ok(SusyZhu { cx, zhu, q, kappa: cx.spec.shifted_level(), x: scale(&h, &Scalar::frac(1, 2)) })
    }

    fn g(&self) -> &crate::liealg::AlgebraSpec {
        &self.cx.spec.algebra
    }

    fn plus(&self) -> Vec<usize> {
        self.cx.spec.grading.n_plus()
    }

    fn p(&self, a: usize) -> u32 {
        self.g().parity[a] as u32
    }

    fn lin(&self, v: &Elem, gen: &dyn Fn(usize) -> usize) -> ZhuElement {
        let mut out = ZhuElement::zero();
        for (i, c) in v {
            out.axpy(c, &self.zhu.gen(gen(*i)));
        }
        out
    }

    /// `ā`.
    pub fn bar(&self, a: &Elem) -> ZhuElement {
        self.lin(a, &|i| self.cx.u[i])
    }

    /// `Zhu_H(D ā)`.
    pub fn hat(&self, a: &Elem) -> ZhuElement {
        self.lin(a, &|i| self.cx.u[i] + 1)
    }

    /// `Zhu_H(D ā) - (k+h∨)(x|a)`.
    pub fn bold(&self, a: &Elem) -> ZhuElement {
        self.hat(a).sub(&ZhuElement::constant(&self.kappa * &self.g().form(&self.x, a)))
    }

    /// Coordinates `(m|u_α)` of `m ∈ n_-` in the basis `u^α`.
    fn lower_coords(&self, m: &Elem) -> Elem {
        self.plus().into_iter().map(|a| (a, self.g().form(m, &basis_vec(a)))).filter(|(_, c)| !c.is_zero()).collect()
    }

    /// Coordinates `(u^α|n)` of `n ∈ n` in the basis `u_α`.
    fn upper_coords(&self, n: &Elem) -> Elem {
        let duals = &self.cx.spec.duals.upper;
        self.plus().into_iter().map(|a| (a, self.g().form(&duals[&a], n))).filter(|(_, c)| !c.is_zero()).collect()
    }

    /// `φ^{m̄}` for `m ∈ n_-`.
    pub fn phi_up_bar(&self, m: &Elem) -> ZhuElement {
        self.lin(&self.lower_coords(m), &|a| self.cx.pu[&a])
    }

    /// `φ^m = Zhu_H(D φ^{m̄})`.
    pub fn phi_up(&self, m: &Elem) -> ZhuElement {
        self.lin(&self.lower_coords(m), &|a| self.cx.pu[&a] + 1)
    }

    /// `φ_n` for `n ∈ n`.
    pub fn phi_low(&self, n: &Elem) -> ZhuElement {
        self.lin(&self.upper_coords(n), &|a| self.cx.pl[&a])
    }

    /// `φ_{n̄} = Zhu_H(D φ_n)`.
    pub fn phi_low_bar(&self, n: &Elem) -> ZhuElement {
        self.lin(&self.upper_coords(n), &|a| self.cx.pl[&a] + 1)
    }

    /// `J_ā`.
    pub fn j_bar(&self, a: &Elem) -> ZhuElement {
        self.zhu.project(&self.cx.building_block(a))
    }

    /// `J_a = Zhu_H(D J_ā)`.
    pub fn j(&self, a: &Elem) -> ZhuElement {
        self.zhu.project(&self.cx.D(&self.cx.building_block(a)))
    }

    pub fn q(&self, x: &ZhuElement) -> ZhuElement {
        self.q.apply(&self.zhu, x)
    }

    fn mul(&self, a: &ZhuElement, b: &ZhuElement) -> ZhuElement {
        self.zhu.mul(a, b)
    }

    fn br(&self, a: usize, b: usize) -> Elem {
        self.g().bracket_basis(a, b).ok().cloned().unwrap_or_default()
    }

    fn br_elem(&self, a: &Elem, b: &Elem) -> Elem {
        self.g().bracket(a, b)
    }

    fn name(&self, a: usize) -> &str {
        &self.g().names[a]
    }

    /// The relations of the nonlinear Lie superalgebra `g̃_* ⊕ φ^{ñ_-} ⊕ φ_ñ`, computed from
    /// the vertex data through the bracket formula.
    pub fn bracket_table(&self) -> Vec<BracketCheck> {
        let g = self.g();
        let n = g.dim();
        let kh = &self.kappa;
        let z = &self.zhu;
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                let (ea, eb) = (basis_vec(a), basis_vec(b));
                let s = sign(self.p(a) * self.p(b));
                let ab = self.br(a, b);
                let (na, nb) = (self.name(a), self.name(b));
                out.push(check(
                    z,
                    format!("[{}b, {}b]", na, nb),
                    &z.commutator(&self.bar(&ea), &self.bar(&eb)),
                    &ZhuElement::constant(kh * &g.form[a][b]),
                ));
                out.push(check(
                    z,
                    format!("[{}b, {}]", na, nb),
                    &z.commutator(&self.bar(&ea), &self.bold(&eb)),
                    &self.bar(&ab).scale(&s),
                ));
                out.push(check(
                    z,
                    format!("[{}, {}]", na, nb),
                    &z.commutator(&self.bold(&ea), &self.bold(&eb)),
                    &self.bold(&ab).scale(&s),
                ));
                let xa = self.br_elem(&self.x, &ea);
                out.push(check(
                    z,
                    format!("[{}^, {}^]", na, nb),
                    &z.commutator(&self.hat(&ea), &self.hat(&eb)),
                    &self.hat(&ab).sub(&ZhuElement::constant(kh * &g.form(&xa, &eb))).scale(&s),
                ));
            }
        }
        let plus = self.plus();
        let duals = &self.cx.spec.duals.upper;
        for &al in &plus {
            let m = &duals[&al];
            for &be in &plus {
                let nb = basis_vec(be);
                let mn = ZhuElement::constant(g.form(m, &nb));
                let tag = format!("u^{}, u_{}", self.name(al), self.name(be));
                out.push(check(z, format!("[phi^m, phi_n] {}", tag), &z.commutator(&self.phi_up(m), &self.phi_low(&nb)), &mn));
                out.push(check(
                    z,
                    format!("[phi^mb, phi_nb] {}", tag),
                    &z.commutator(&self.phi_up_bar(m), &self.phi_low_bar(&nb)).scale(&sign(self.p(al))),
                    &mn,
                ));
                out.push(check(
                    z,
                    format!("[phi^mb, phi_n] {}", tag),
                    &z.commutator(&self.phi_up_bar(m), &self.phi_low(&nb)),
                    &ZhuElement::zero(),
                ));
                out.push(check(
                    z,
                    format!("[phi^m, phi_nb] {}", tag),
                    &z.commutator(&self.phi_up(m), &self.phi_low_bar(&nb)),
                    &ZhuElement::zero(),
                ));
            }
        }
        // affine and ghost generators commute, ghosts of one kind commute among themselves
        let ghosts_up: Vec<usize> = plus.iter().flat_map(|a| [self.cx.pu[a], self.cx.pu[a] + 1]).collect();
        let ghosts_low: Vec<usize> = plus.iter().flat_map(|a| [self.cx.pl[a], self.cx.pl[a] + 1]).collect();
        let affine: Vec<usize> = (0..n).flat_map(|a| [self.cx.u[a], self.cx.u[a] + 1]).collect();
        let mut zero_pairs = Vec::new();
        for &a in &affine {
            for &b in ghosts_up.iter().chain(ghosts_low.iter()) {
                zero_pairs.push((a, b));
            }
        }
        for set in [&ghosts_up, &ghosts_low] {
            for &a in set.iter() {
                for &b in set.iter() {
                    zero_pairs.push((a, b));
                }
            }
        }
        for (a, b) in zero_pairs {
            let name = format!("[{}, {}]", self.cx.alg.gen(a).name, self.cx.alg.gen(b).name);
            out.push(check(z, name, &z.gen_bracket(a, b), &ZhuElement::zero()));
        }
        out
    }

    /// The six formulas for `Q` on generators.
    pub fn q_formulas(&self) -> Vec<BracketCheck> {
        let g = self.g();
        let kh = &self.kappa;
        let z = &self.zhu;
        let plus = self.plus();
        let duals = &self.cx.spec.duals.upper;
        let f = basis_vec(g.osp.as_ref().expect("osp data").f);
        let mut out = Vec::new();
        for a in 0..g.dim() {
            let ea = basis_vec(a);
            let pa = self.p(a);
            let mut want_bar = ZhuElement::zero();
            let mut want_bold = ZhuElement::zero();
            let mut want_hat = ZhuElement::zero();
            for &be in &plus {
                let pb = self.p(be);
                let ub = basis_vec(be);
                let m = &duals[&be];
                let c = self.br(be, a);
                let (pub_, pu) = (self.phi_up_bar(m), self.phi_up(m));
                want_bar.axpy(&sign((pa + 1) * pb), &self.mul(&pub_, &self.bar(&c)));
                want_bar.axpy(&(&sign(pb + 1) * &(kh * &g.form(&ub, &ea))), &pu);
                want_bold.axpy(&sign((pa + 1) * pb + 1), &self.mul(&pu, &self.bar(&c)));
                want_bold.axpy(&sign(pa * pb), &self.mul(&pub_, &self.bold(&c)));
                want_hat.axpy(&sign((pa + 1) * pb + 1), &self.mul(&pu, &self.bar(&c)));
                want_hat.axpy(&sign(pa * pb), &self.mul(&pub_, &self.hat(&c)));
                let j = Scalar::frac(self.cx.spec.grading.two_j[be], 2);
                want_hat.axpy(&-&(&sign(pb) * &(&(kh * &j) * &g.form(&ub, &ea))), &pub_);
            }
            let na = self.name(a);
            out.push(check(z, format!("Q({}b)", na), &self.q(&self.bar(&ea)), &want_bar));
            out.push(check(z, format!("Q({})", na), &self.q(&self.bold(&ea)), &want_bold));
            out.push(check(z, format!("Q({}^)", na), &self.q(&self.hat(&ea)), &want_hat));
        }
        for &al in &plus {
            let pa = self.p(al);
            let ua = basis_vec(al);
            let ma = &duals[&al];
            let mut w3 = ZhuElement::zero();
            let mut w4 = ZhuElement::zero();
            let mut w5 = self.bar(&ua).scale(&sign(pa + 1));
            w5.axpy(&-&g.form(&f, &ua), &ZhuElement::one());
            let mut w6 = self.bold(&ua).scale(&sign(pa));
            for &be in &plus {
                let pb = self.p(be);
                let mb = &duals[&be];
                let ub = basis_vec(be);
                let (pub_, pu) = (self.phi_up_bar(mb), self.phi_up(mb));
                let c_up = self.br_elem(&ub, ma);
                let c_low = self.br_elem(&ub, &ua);
                let half = Scalar::frac(1, 2);
                w3.axpy(&(&half * &sign((pa + 1) * pb)), &self.mul(&pub_, &self.phi_up_bar(&c_up)));
                w4.axpy(&(&half * &sign((pa + 1) * pb + 1)), &self.mul(&pu, &self.phi_up_bar(&c_up)));
                w4.axpy(&(&half * &sign(pa * pb)), &self.mul(&pub_, &self.phi_up(&c_up)));
                w5.axpy(&sign((pa + 1) * pb), &self.mul(&pub_, &self.phi_low(&c_low)));
                w6.axpy(&sign((pa + 1) * pb + 1), &self.mul(&pu, &self.phi_low(&c_low)));
                w6.axpy(&sign(pa * pb), &self.mul(&pub_, &self.phi_low_bar(&c_low)));
            }
            let na = self.name(al);
            out.push(check(z, format!("Q(phi^{{{}b}})", na), &self.q(&self.phi_up_bar(ma)), &w3));
            out.push(check(z, format!("Q(phi^{{{}}})", na), &self.q(&self.phi_up(ma)), &w4));
            out.push(check(z, format!("Q(phi_{{{}}})", na), &self.q(&self.phi_low(&ua)), &w5));
            out.push(check(z, format!("Q(phi_{{{}b}})", na), &self.q(&self.phi_low_bar(&ua)), &w6));
        }
        out
    }

    /// `Q(Q(g))` for every generator `g`.
    pub fn q_squared(&self) -> Vec<BracketCheck> {
        (0..self.zhu.ngens())
            .map(|i| {
                let qq = self.q(self.q.generator(i));
                check(&self.zhu, format!("Q^2({})", self.cx.alg.gen(i).name), &qq, &ZhuElement::zero())
            })
            .collect()
    }

    fn pi_le0(&self, v: &Elem) -> Elem {
        let tj = &self.cx.spec.grading.two_j;
        v.iter().filter(|(i, _)| tj[**i] <= 0).map(|(i, c)| (*i, c.clone())).collect()
    }

    /// The commutation relations of `r_-`.
    pub fn r_minus_relations(&self) -> Vec<BracketCheck> {
        let g = self.g();
        let kh = &self.kappa;
        let z = &self.zhu;
        let le0 = self.cx.spec.grading.g_le0();
        let duals = &self.cx.spec.duals.upper;
        let plus = self.plus();
        let mut out = Vec::new();
        for &a in &le0 {
            let ea = basis_vec(a);
            let (jba, ja) = (self.j_bar(&ea), self.j(&ea));
            for &b in &le0 {
                let eb = basis_vec(b);
                let s = sign(self.p(a) * self.p(b));
                let ab = self.br(a, b);
                let (na, nb) = (self.name(a), self.name(b));
                let (jbb, jb) = (self.j_bar(&eb), self.j(&eb));
                out.push(check(z, format!("[J_{}b, J_{}b]", na, nb), &z.commutator(&jba, &jbb), &ZhuElement::constant(kh * &g.form[a][b])));
                out.push(check(z, format!("[J_{}b, J_{}]", na, nb), &z.commutator(&jba, &jb), &self.j_bar(&ab).scale(&s)));
                let xa = self.br_elem(&self.x, &ea);
                let want = self.j(&ab).sub(&ZhuElement::constant(kh * &g.form(&xa, &eb))).scale(&s);
                out.push(check(z, format!("[J_{}, J_{}]", na, nb), &z.commutator(&ja, &jb), &want));
            }
            for &al in &plus {
                let m = &duals[&al];
                let na = self.name(a);
                let nm = self.name(al);
                let ma = self.br_elem(m, &ea);
                let (pm, pmb) = (self.phi_up(m), self.phi_up_bar(m));
                out.push(check(z, format!("[J_{}b, phi^{}]", na, nm), &z.commutator(&jba, &pm), &self.phi_up_bar(&ma).neg()));
                out.push(check(
                    z,
                    format!("[J_{}, phi^{}b]", na, nm),
                    &z.commutator(&ja, &pmb).scale(&sign(self.p(a))),
                    &self.phi_up_bar(&ma).neg(),
                ));
                out.push(check(z, format!("[J_{}, phi^{}]", na, nm), &z.commutator(&ja, &pm), &self.phi_up(&ma).neg()));
                out.push(check(z, format!("[J_{}b, phi^{}b]", na, nm), &z.commutator(&jba, &pmb), &ZhuElement::zero()));
            }
        }
        for &a in &plus {
            for &b in &plus {
                let (m1, m2) = (&duals[&a], &duals[&b]);
                let tag = format!("{} {}", self.name(a), self.name(b));
                for (name, x, y) in [
                    ("[phi^b, phi^b]", self.phi_up_bar(m1), self.phi_up_bar(m2)),
                    ("[phi, phi^b]", self.phi_up(m1), self.phi_up_bar(m2)),
                    ("[phi, phi]", self.phi_up(m1), self.phi_up(m2)),
                ] {
                    out.push(check(z, format!("{} {}", name, tag), &z.commutator(&x, &y), &ZhuElement::zero()));
                }
            }
        }
        out
    }
}

/// `Q(U(r_±)) ⊂ U(r_±)`: the displayed formulas for `Q` on the generators of `r_-` and
/// `r_+`, and `H(U(r_+), Q) = C` on words of length at most two.
pub fn wfin_closure(sz: &SusyZhu) -> Vec<BracketCheck> {
    let g = sz.g();
    let z = &sz.zhu;
    let plus = sz.plus();
    let f = basis_vec(g.osp.as_ref().expect("osp data").f);
    let mut out = Vec::new();
    for a in sz.cx.spec.grading.g_le0() {
        let ea = basis_vec(a);
        let (w1, w2, shift) = q_j_expected(sz, a);
        let na = sz.name(a);
        out.push(check(z, format!("Q(J_{}b)", na), &sz.q(&sz.j_bar(&ea)), &w1));
        out.push(check(z, format!("Q(J_{})", na), &sz.q(&sz.j(&ea)), &w2.add(&shift)));
    }
    let mut rplus = Vec::new();
    for &al in &plus {
        let ua = basis_vec(al);
        let pa = sz.p(al);
        let mut want = sz.j_bar(&ua).scale(&sign(pa + 1));
        want.axpy(&-&g.form(&f, &ua), &ZhuElement::one());
        let na = sz.name(al);
        out.push(check(z, format!("Q(phi_{{{}}})", na), &sz.q(&sz.phi_low(&ua)), &want));
        out.push(check(z, format!("Q(phi_{{{}b}})", na), &sz.q(&sz.phi_low_bar(&ua)), &sz.j(&ua).scale(&sign(pa))));
        rplus.extend([sz.j_bar(&ua), sz.j(&ua), sz.phi_low(&ua), sz.phi_low_bar(&ua)]);
    }
    let h = cohomology_of_span(z, &|x| sz.q(x), &words_up_to_two(z, &rplus));
    out.push(BracketCheck {
        name: "dim H(U(r+), Q) on words of length <= 2".into(),
        pass: h == 1,
        residual: if h == 1 { String::new() } else { format!("dimension {}", h) },
    });
    out
}

/// The two sums for `Q(J_ā)` and `Q(J_a)` together with the term
/// `-½ Σ_β (-1)^{p(a)p(β)} φ^{\overline{[π_≤[u_β,a], u^β]}}` that the Zhu product corrections of
/// `:Dφ^β J_c̄:` and `:φ^β DJ_c̄:` leave behind, their weights being `j_β + ½` and `j_β`.
fn q_j_expected(sz: &SusyZhu, a: usize) -> (ZhuElement, ZhuElement, ZhuElement) {
    let g = sz.g();
    let kh = &sz.kappa;
    let duals = &sz.cx.spec.duals.upper;
    let f = basis_vec(g.osp.as_ref().expect("osp data").f);
    let ea = basis_vec(a);
    let pa = sz.p(a);
    let mut w1 = ZhuElement::zero();
    let mut w2 = ZhuElement::zero();
    let mut shift = ZhuElement::zero();
    for &be in &sz.plus() {
        let pb = sz.p(be);
        let ub = basis_vec(be);
        let m = &duals[&be];
        let c = sz.br(be, a);
        let cle = sz.pi_le0(&c);
        let fc = ZhuElement::constant(g.form(&f, &c));
        let (pub_, pu) = (sz.phi_up_bar(m), sz.phi_up(m));
        w1.axpy(&sign((pa + 1) * pb), &sz.mul(&pub_, &sz.j_bar(&cle).add(&fc)));
        w1.axpy(&(&sign(pb + 1) * &(kh * &g.form(&ub, &ea))), &pu);
        let xu = sz.br_elem(&sz.x, &ub);
        w2.axpy(&sign(pa * pb), &sz.mul(&pub_, &sz.j(&cle)));
        w2.axpy(&-&(&sign(pa * pb) * &(kh * &g.form(&xu, &ea))), &pub_);
        w2.axpy(&sign((pa + 1) * pb + 1), &sz.mul(&pu, &sz.j_bar(&cle).add(&fc)));
        shift.axpy(&(&Scalar::frac(-1, 2) * &sign(pa * pb)), &sz.phi_up_bar(&sz.br_elem(&cle, m)));
    }
    (w1, w2, shift)
}

/// `Q(J_a)` minus the two sums alone, for each `a ∈ g_≤0` where it is nonzero.
pub fn q_j_without_correction(sz: &SusyZhu) -> Vec<(String, ZhuElement)> {
    sz.cx
        .spec
        .grading
        .g_le0()
        .into_iter()
        .filter_map(|a| {
            let (_, w2, _) = q_j_expected(sz, a);
            let r = sz.q(&sz.j(&basis_vec(a))).sub(&w2);
            (!r.is_zero()).then(|| (format!("Q(J_{})", sz.name(a)), r))
        })
        .collect()
}

/// `1`, the generators, and all products of two of them.
fn words_up_to_two(z: &ZhuAlgebra, gens: &[ZhuElement]) -> Vec<ZhuElement> {
    let mut out = vec![ZhuElement::one()];
    out.extend(gens.iter().cloned());
    for a in gens {
        for b in gens {
            out.push(z.mul(a, b));
        }
    }
    out
}

/// `dim ker - dim im` of `q` on the span of `xs`, which must be `q`-stable.
fn cohomology_of_span(z: &ZhuAlgebra, q: &dyn Fn(&ZhuElement) -> ZhuElement, xs: &[ZhuElement]) -> usize {
    let images: Vec<ZhuElement> = xs.iter().map(q).collect();
    let dim = z.rank(xs);
    let all: Vec<ZhuElement> = xs.iter().chain(images.iter()).cloned().collect();
    assert_eq!(z.rank(&all), dim, "span is not stable under Q");
    let r = z.rank(&images);
    dim - 2 * r
}

/// Bidegrees `(2p, 2q)` and doubled weights of the generators of a complex.
#[derive(Clone, Debug, Serialize)]
pub struct GradingProfile {
    pub names: Vec<String>,
    pub bidegree: Vec<(i64, i64)>,
    pub two_delta: Vec<i64>,
}

/// One term of the image of a generator: its bidegree and, for linear terms, the generator.
#[derive(Clone, Debug)]
pub struct DiffTerm {
    pub bidegree: (i64, i64),
    /// `Some(g)` when the term is a multiple of generator `g` (no derivatives).
    pub linear: Option<usize>,
    pub derivative: bool,
    pub coeff: Scalar,
}

#[derive(Clone, Debug, Serialize)]
pub struct LinearityReport {
    /// Every term of `d(g)` lies in `F^p` with total degree `p + q + 1`.
    pub filtration_ok: bool,
    pub violations: Vec<String>,
    /// The graded linear part maps generators to generators without derivatives.
    pub graded_in_generators: bool,
    /// Bidegrees `(2p, 2q)` with `p + q ≠ 0` where `ker d^gr ≠ im d^gr`.
    pub inexact: Vec<(i64, i64)>,
    /// Basis of `H(g, d^gr)`, as linear combinations of generator names.
    pub cohomology: Vec<String>,
    pub pass: bool,
}

impl GradingProfile {
    /// The affine profile on the reduced SUSY complex: `gr(J_{ū_α}) = (j_α, -j_α)`,
    /// `gr(φ^α) = (1/2 - j_α, 1/2 + j_α)`, `gr(D) = (0, 0)`.
    pub fn affine(red: &Reduced, cx: &Complex) -> GradingProfile {
        Self::from_reduced(red, cx)
    }

    /// The finite profile on `U(r_-)`: the same table for `J_ū`, `J_u`, `φ^{ū}`, `φ^u`.
    pub fn finite(red: &Reduced, cx: &Complex) -> GradingProfile {
        Self::from_reduced(red, cx)
    }

    fn from_reduced(red: &Reduced, cx: &Complex) -> GradingProfile {
        let tj = &cx.spec.grading.two_j;
        let alg = red.alg();
        let n = alg.ngens();
        let mut bidegree = vec![(0, 0); n];
        for (&a, &i) in &red.j {
            bidegree[i] = (tj[a], -tj[a]);
            bidegree[i + 1] = (tj[a], -tj[a]);
        }
        for (&a, &i) in &red.pu {
            bidegree[i] = (1 - tj[a], 1 + tj[a]);
            bidegree[i + 1] = (1 - tj[a], 1 + tj[a]);
        }
        GradingProfile {
            names: (0..n).map(|i| alg.gen(i).name.clone()).collect(),
            bidegree,
            two_delta: (0..n).map(|i| alg.gen(i).two_weight).collect(),
        }
    }
}

fn bideg_sum(profile: &GradingProfile, gens: impl Iterator<Item = usize>) -> (i64, i64) {
    gens.fold((0, 0), |(p, q), g| (p + profile.bidegree[g].0, q + profile.bidegree[g].1))
}

/// The terms of `d(g)` for a derivation of a vertex algebra.
pub fn vertex_terms(profile: &GradingProfile, alg: &VertexAlgebra, d: &dyn Fn(usize) -> VertexPoly) -> Vec<Vec<DiffTerm>> {
    (0..alg.ngens())
        .map(|i| {
            d(i).terms()
                .map(|(m, c)| DiffTerm {
                    bidegree: bideg_sum(profile, m.iter().map(|f| f.gen as usize)),
                    linear: (m.len() == 1 && m[0].der == 0).then(|| m[0].gen as usize),
                    derivative: m.iter().any(|f| f.der > 0),
                    coeff: c.clone(),
                })
                .collect()
        })
        .collect()
}

/// The terms of `Q(g)` on a Zhu algebra.
pub fn zhu_terms(profile: &GradingProfile, zhu: &ZhuAlgebra, q: &InducedQ) -> Vec<Vec<DiffTerm>> {
    (0..zhu.ngens())
        .map(|i| {
            q.generator(i)
                .terms()
                .map(|(w, c)| DiffTerm {
                    bidegree: bideg_sum(profile, w.iter().copied()),
                    linear: (w.len() == 1).then(|| w[0]),
                    derivative: false,
                    coeff: c.clone(),
                })
                .collect()
        })
        .collect()
}

/// Checks that `d` is good and almost linear for the profile: every term of `d(g)` has
/// bidegree `(p + l, q + 1 - l)` with `l ≥ 0`, and the graded linear part `d^gr` is exact
/// on the generator space away from total degree `0`.
pub fn check_good_almost_linear(profile: &GradingProfile, images: &[Vec<DiffTerm>]) -> LinearityReport {
    let n = profile.names.len();
    let mut violations = Vec::new();
    let mut graded_in_generators = true;
    // d^gr as a matrix on the generator space
    let mut cols: Vec<SparseVec> = vec![SparseVec::new(); n];
    for (i, terms) in images.iter().enumerate() {
        let (p, q) = profile.bidegree[i];
        for t in terms {
            let (p2, q2) = t.bidegree;
            // constants have bidegree (0, 0) and never enter d^gr
            let is_const = t.linear.is_none() && !t.derivative && p2 == 0 && q2 == 0;
            if is_const {
                continue;
            }
            if p2 + q2 != p + q + 2 || p2 < p {
                violations.push(format!("{}: term of bidegree ({}/2, {}/2)", profile.names[i], p2, q2));
                continue;
            }
            if p2 == p {
                match t.linear {
                    Some(g) if !t.derivative => {
                        cols[i].insert(g, t.coeff.clone());
                    }
                    _ if t.derivative => graded_in_generators = false,
                    _ => {}
                }
            }
        }
    }
    let mut by_degree: BTreeMap<(i64, i64), Vec<usize>> = BTreeMap::new();
    for i in 0..n {
        by_degree.entry(profile.bidegree[i]).or_default().push(i);
    }
    let rank_from = |src: &[usize]| -> usize {
        let m = ColMatrix::new(n, src.iter().map(|&i| cols[i].clone()).collect());
        m.rank()
    };
    let mut inexact = Vec::new();
    let mut cohomology = Vec::new();
    for (&(p, q), idx) in &by_degree {
        let rank_out = rank_from(idx);
        let incoming: Vec<usize> = by_degree.get(&(p, q - 2)).cloned().unwrap_or_default();
        let rank_in = rank_from(&incoming);
        let h = idx.len() - rank_out - rank_in;
        if p + q != 0 {
            if h != 0 {
                inexact.push((p, q));
            }
        } else {
            let m = ColMatrix::new(n, idx.iter().map(|&i| cols[i].clone()).collect());
            for v in m.kernel() {
                let text: Vec<String> = v
                    .iter()
                    .map(|(j, c)| if c.is_one() { profile.names[idx[*j]].clone() } else { format!("{}*{}", c.factor_text(), profile.names[idx[*j]]) })
                    .collect();
                cohomology.push(text.join(" + "));
            }
        }
    }
    let filtration_ok = violations.is_empty();
    let pass = filtration_ok && graded_in_generators && inexact.is_empty();
    LinearityReport { filtration_ok, violations, graded_in_generators, inexact, cohomology, pass }
}

/// Words of length at most two in the generators of a Zhu algebra, filtered by charge and
/// doubled weight.
pub fn filtered_words(zhu: &ZhuAlgebra, charge: i64, two_delta_max: i64) -> Vec<ZhuElement> {
    let n = zhu.ngens();
    let tw = |i: usize| zhu.alg.gen(i).two_weight;
    let ch = |i: usize| zhu.alg.gen(i).charge;
    let mut out = Vec::new();
    if charge == 0 {
        out.push(ZhuElement::one());
    }
    for i in 0..n {
        if ch(i) == charge && tw(i) <= two_delta_max {
            out.push(zhu.gen(i));
        }
        for j in i..n {
            if ch(i) + ch(j) == charge && tw(i) + tw(j) <= two_delta_max {
                out.push(zhu.mul(&zhu.gen(i), &zhu.gen(j)));
            }
        }
    }
    out
}

/// The two routes to `W^fin` on words of length at most two and weight at most
/// `two_delta_max / 2`: the kernel of `Q` on the charge-0 part of `U(r_-)`, and the Zhu
/// images of the cohomology of `d_(0|0)` up to that weight. Returns both dimensions and
/// whether the spans agree.
pub fn wfin_two_routes(red: &Reduced, two_delta_max: i64) -> Result<(usize, usize, bool), ZhuError> {
    let zhu = ZhuAlgebra::new(red.alg());
    let q = InducedQ::new(&zhu, &|i| red.apply_d0(&VertexPoly::factor(Factor::new(i, 0))));
    let words = filtered_words(&zhu, 0, two_delta_max);
    let images: Vec<ZhuElement> = words.iter().map(|x| q.apply(&zhu, x)).collect();
    // kernel of Q restricted to the span of the words
    let all: Vec<ZhuElement> = words.iter().chain(images.iter()).cloned().collect();
    let (nw, cols) = zhu.vectors(&all);
    let m = ColMatrix::new(nw, cols[words.len()..].to_vec());
    let kernel_coeffs = m.kernel();
    let kernel: Vec<ZhuElement> = kernel_coeffs
        .iter()
        .map(|v| {
            let mut x = ZhuElement::zero();
            for (j, c) in v {
                x.axpy(c, &words[*j]);
            }
            x
        })
        .collect();
    let kdim = zhu.rank(&kernel);
    let mut route_b = vec![ZhuElement::one()];
    for tw in 1..=two_delta_max {
        for w in red.cohomology_generators(tw)? {
            route_b.push(zhu.project(&w));
        }
    }
    let bdim = zhu.rank(&route_b);
    let both: Vec<ZhuElement> = kernel.iter().chain(route_b.iter()).cloned().collect();
    let joint = zhu.rank(&both);
    Ok((kdim, bdim, joint == kdim && joint == bdim))
}

impl ZhuAlgebra {
    /// Text of an element, words written as space-separated generator names.
    pub fn text(&self, x: &ZhuElement) -> String {
        if x.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = x
            .terms()
            .map(|(w, c)| {
                let word: Vec<&str> = w.iter().map(|&i| self.alg.gen(i).name.as_str()).collect();
                match (word.is_empty(), c.is_one()) {
                    (true, _) => c.factor_text(),
                    (false, true) => word.join(" "),
                    (false, false) => format!("({})*{}", c.factor_text(), word.join(" ")),
                }
            })
            .collect();
        parts.join(" + ")
    }
}
