//! BRST complexes for affine and SUSY affine W-algebras.
//!
//! The full complex is a free vertex algebra with generators
//! `u[a]`, `Phi[a]`, `pl[a]`, `pu[a]` (non-SUSY) or `u[ab]`, `pu[a]`, `pl[a]`
//! with their `D` partners (SUSY). The reduced complex is presented abstractly
//! by the building blocks `J[..]` and the ghosts `pu[..]`, embedded in the full one.

mod charge;
mod osp;
mod reduced;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::liealg::{basis_vec, AlgebraSpec, DualBases, Elem, GradingData, LieError};
use crate::scalar::Scalar;
use crate::susy::{apply_d, bar, dbar, AffineConvention, LambdaSuperPoly, SuperGen, SusyBuilder, SusyError};
use crate::vertex::{builders, sign, Factor, Generator, LambdaPoly, VertexAlgebra, VertexError, VertexPoly};

pub use charge::{central_charge, central_charge_identities, CentralChargeForm};
pub use osp::OspNormalized;
pub use reduced::{Cohomology, Reduced, TauMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    NonSusy,
    Susy,
}

impl std::str::FromStr for Flavor {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "nonsusy" => Ok(Flavor::NonSusy),
            "susy" => Ok(Flavor::Susy),
            _ => Err(format!("unknown flavor `{}`", s)),
        }
    }
}

impl std::fmt::Display for Flavor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Flavor::NonSusy => "nonsusy",
            Flavor::Susy => "susy",
        })
    }
}

#[derive(Debug, Error)]
pub enum BrstError {
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Vertex(#[from] VertexError),
    #[error(transparent)]
    Susy(#[from] SusyError),
    #[error("the algebra carries no osp(1|2) data")]
    NoOsp,
    #[error("{0}")]
    Other(String),
}

/// Input data of a complex.
#[derive(Clone, Debug)]
pub struct ComplexSpec {
    pub flavor: Flavor,
    pub algebra: AlgebraSpec,
    pub grading: GradingData,
    pub duals: DualBases,
    pub level: Scalar,
}

impl ComplexSpec {
    pub fn new(algebra: &AlgebraSpec, flavor: Flavor) -> Result<Self, BrstError> {
        Self::with_level(algebra, flavor, Scalar::k())
    }

    pub fn with_level(algebra: &AlgebraSpec, flavor: Flavor, level: Scalar) -> Result<Self, BrstError> {
        let grading = algebra.grade_decompose()?;
        let duals = algebra.dual_bases(&grading)?;
        Ok(ComplexSpec { flavor, algebra: algebra.clone(), grading, duals, level })
    }

    /// `k + h∨`.
    pub fn shifted_level(&self) -> Scalar {
        &self.level + &self.algebra.dual_coxeter
    }

    /// `ν_k(a|b) = k(a|b) + ½κ_g(a|b) - ½κ_{g_0}(a|b)`.
    pub fn nu(&self, a: &Elem, b: &Elem) -> Scalar {
        let g = &self.algebra;
        let half = Scalar::frac(1, 2);
        let all: Vec<usize> = (0..g.dim()).collect();
        let k = &self.level * &g.form(a, b);
        let x = &half * &g.killing_on(a, b, &all);
        let y = &half * &g.killing_on(a, b, &self.grading.g0());
        &(&k + &x) - &y
    }
}

/// The full BRST complex with its differential.
pub struct Complex {
    pub spec: ComplexSpec,
    pub alg: VertexAlgebra,
    /// Generator index of `u_a` (or `ū_a`) per basis element.
    pub u: Vec<usize>,
    pub phi: BTreeMap<usize, usize>,
    pub pl: BTreeMap<usize, usize>,
    pub pu: BTreeMap<usize, usize>,
    /// `d` itself.
    pub d: VertexPoly,
    /// The odd field whose zero mode is the differential (`d`, or `Dd` in the SUSY case).
    pub d_field: VertexPoly,
    d0_images: Vec<VertexPoly>,
}

fn fac(i: usize) -> VertexPoly {
    VertexPoly::factor(Factor::new(i, 0))
}

impl Complex {
    pub fn new(spec: ComplexSpec) -> Result<Complex, BrstError> {
        match spec.flavor {
            Flavor::NonSusy => Self::new_nonsusy(spec),
            Flavor::Susy => Self::new_susy(spec),
        }
    }

    pub fn flavor(&self) -> Flavor {
        self.spec.flavor
    }

    fn new_nonsusy(spec: ComplexSpec) -> Result<Complex, BrstError> {
        let g = &spec.algebra;
        let gr = &spec.grading;
        let n = g.dim();
        let plus = gr.n_plus();
        let half = gr.g_half();
        let mut gens = Vec::new();
        for i in 0..n {
            gens.push(Generator::new(&format!("u[{}]", g.names[i]), g.parity[i], 2 - gr.two_j[i]).with_bound(2));
        }
        let mut phi = BTreeMap::new();
        for &a in &half {
            phi.insert(a, gens.len());
            gens.push(Generator::new(&format!("Phi[{}]", g.names[a]), g.parity[a], 1).with_bound(1));
        }
        let mut pl = BTreeMap::new();
        for &a in &plus {
            pl.insert(a, gens.len());
            gens.push(
                Generator::new(&format!("pl[{}]", g.names[a]), 1 - g.parity[a], 2 - gr.two_j[a]).with_charge(-1).with_bound(2),
            );
        }
        let mut pu = BTreeMap::new();
        for &a in &plus {
            pu.insert(a, gens.len());
            gens.push(Generator::new(&format!("pu[{}]", g.names[a]), 1 - g.parity[a], gr.two_j[a]).with_charge(1).with_bound(0));
        }
        let mut alg = VertexAlgebra::new(&format!("C({}, F)", g.name), gens)?;
        builders::install_affine(&mut alg, g, &spec.level, 0);
        let big_f = g.osp.as_ref().ok_or(BrstError::NoOsp)?.big_f;
        for &a in &half {
            for &b in &half {
                // [Φ_a λ Φ_b] = (F|[a,b])
                let c = g.form(&basis_vec(big_f), &g.bracket[a][b]);
                if !c.is_zero() {
                    alg.set_products(phi[&a], phi[&b], vec![VertexPoly::constant(c)]);
                }
            }
        }
        for &a in &plus {
            for &b in &plus {
                // [φ_a λ φ^b] = (u_a | u^b)
                let c = g.form(&basis_vec(a), &spec.duals.upper[&b]);
                if !c.is_zero() {
                    alg.set_products(pl[&a], pu[&b], vec![VertexPoly::constant(c)]);
                }
            }
        }
        alg.complete_skew();
        let u: Vec<usize> = (0..n).collect();
        let mut cx = Complex {
            spec,
            alg,
            u,
            phi,
            pl,
            pu,
            d: VertexPoly::zero(),
            d_field: VertexPoly::zero(),
            d0_images: Vec::new(),
        };
        cx.d = cx.differential_element_nonsusy();
        cx.d_field = cx.d.clone();
        cx.cache_d0();
        Ok(cx)
    }

    fn new_susy(spec: ComplexSpec) -> Result<Complex, BrstError> {
        let g = &spec.algebra;
        let gr = &spec.grading;
        let n = g.dim();
        let plus = gr.n_plus();
        let mut sgens = Vec::new();
        for i in 0..n {
            sgens.push(SuperGen::new(&format!("u[{}b]", g.names[i]), 1 - g.parity[i], 1 - gr.two_j[i]).with_bound(1));
        }
        let mut pu = BTreeMap::new();
        for &a in &plus {
            pu.insert(a, bar(sgens.len()));
            sgens.push(
                SuperGen::new(&format!("pu[{}]", g.names[a]), 1 - g.parity[a], gr.two_j[a]).with_charge(1).with_bound(0),
            );
        }
        let mut pl = BTreeMap::new();
        for &a in &plus {
            pl.insert(a, bar(sgens.len()));
            sgens.push(
                SuperGen::new(&format!("pl[{}]", g.names[a]), g.parity[a], 1 - gr.two_j[a]).with_charge(-1).with_bound(1),
            );
        }
        let mut b = SusyBuilder::new(&format!("C({}bar, f)", g.name), sgens);
        let kh = spec.shifted_level();
        for i in 0..n {
            for j in 0..n {
                let (s, _) = crate::susy::affine_signs(AffineConvention::Signed, g.parity[i], g.parity[j]);
                let mut br = VertexPoly::zero();
                for (c, v) in &g.bracket[i][j] {
                    br.add_term(vec![Factor::new(bar(*c), 0)], &(&s * v));
                }
                let cst = VertexPoly::constant(&kh * &g.form[i][j]);
                if br.is_zero() && cst.is_zero() {
                    continue;
                }
                b.set(i, j, LambdaSuperPoly::new(LambdaPoly::from_coeffs(vec![br]), LambdaPoly::from_coeffs(vec![cst])));
            }
        }
        for &a in &plus {
            for &c in &plus {
                // [φ^a Λ φ_c] = (u^a | u_c)
                let v = g.form(&spec.duals.upper[&a], &basis_vec(c));
                if !v.is_zero() {
                    b.set(
                        pu[&a] / 2,
                        pl[&c] / 2,
                        LambdaSuperPoly::new(LambdaPoly::from_coeffs(vec![VertexPoly::constant(v)]), LambdaPoly::zero()),
                    );
                }
            }
        }
        let alg = b.build()?.va;
        let u: Vec<usize> = (0..n).map(bar).collect();
        let mut cx = Complex {
            spec,
            alg,
            u,
            phi: BTreeMap::new(),
            pl,
            pu,
            d: VertexPoly::zero(),
            d_field: VertexPoly::zero(),
            d0_images: Vec::new(),
        };
        cx.d = cx.differential_element_susy();
        cx.d_field = apply_d(&cx.alg, &cx.d);
        cx.cache_d0();
        Ok(cx)
    }

    fn cache_d0(&mut self) {
        self.d0_images = (0..self.alg.ngens()).map(|i| self.alg.nprod(&self.d_field, 0, &fac(i))).collect();
    }

    /// `Σ c_i X_i` for a linear combination of generator-indexed fields.
    fn lin(&self, v: &Elem, map: &dyn Fn(usize) -> Option<usize>) -> VertexPoly {
        let mut out = VertexPoly::zero();
        for (i, c) in v {
            if let Some(g) = map(*i) {
                out.add_term(vec![Factor::new(g, 0)], c);
            }
        }
        out
    }

    fn differential_element_nonsusy(&self) -> VertexPoly {
        let g = &self.spec.algebra;
        let plus = self.spec.grading.n_plus();
        let big_f = g.osp.as_ref().map(|o| o.big_f).unwrap();
        let a = &self.alg;
        let mut d = VertexPoly::zero();
        for &al in &plus {
            let pal = g.parity[al] as u32;
            d.axpy(&sign(pal), &a.no(&fac(self.u[al]), &fac(self.pu[&al])));
            // -½ Σ (-1)^{p(α)p(γ)} c^γ_{αβ} :φ_γ φ^α φ^β:
            for &be in &plus {
                for (&ga, c) in &g.bracket[al][be] {
                    let Some(&plg) = self.pl.get(&ga) else { continue };
                    let s = &sign(pal * g.parity[ga] as u32) * c;
                    let t = a.no_many(&[fac(plg), fac(self.pu[&al]), fac(self.pu[&be])]);
                    d.axpy(&(&s * &Scalar::frac(-1, 2)), &t);
                }
            }
            if let Some(&ph) = self.phi.get(&al) {
                d = d.add(&a.no(&fac(ph), &fac(self.pu[&al])));
            }
            let c = g.form(&basis_vec(big_f), &basis_vec(al));
            d.axpy(&c, &fac(self.pu[&al]));
        }
        d
    }

    fn differential_element_susy(&self) -> VertexPoly {
        let g = &self.spec.algebra;
        let plus = self.spec.grading.n_plus();
        let f = g.osp.as_ref().map(|o| o.f).unwrap();
        let a = &self.alg;
        let mut d = VertexPoly::zero();
        for &al in &plus {
            d = d.add(&a.no(&fac(self.u[al]), &fac(self.pu[&al])));
            // ½ Σ (-1)^{p(α)(p(β)+1)} :φ_{[u_α,u_β]} φ^β φ^α:
            for &be in &plus {
                let br = &g.bracket[al][be];
                if br.is_empty() {
                    continue;
                }
                let s = sign(g.parity[al] as u32 * (g.parity[be] as u32 + 1));
                let pl = self.lin(br, &|i| self.pl.get(&i).copied());
                let t = a.no_many(&[pl, fac(self.pu[&be]), fac(self.pu[&al])]);
                d.axpy(&(&s * &Scalar::frac(1, 2)), &t);
            }
            let c = g.form(&basis_vec(f), &basis_vec(al));
            d.axpy(&-c, &fac(self.pu[&al]));
        }
        d
    }

    /// `d_(0)` (or `d_(0|0)`) on any element.
    pub fn apply_d0(&self, x: &VertexPoly) -> VertexPoly {
        self.alg.apply_derivation(&|g| self.d0_images[g].clone(), 1, x)
    }

    /// `d_(0)` on generator `i`.
    pub fn d0_generator(&self, i: usize) -> &VertexPoly {
        &self.d0_images[i]
    }

    /// `(generator, d0(d0(generator)))` for every generator with nonzero residual.
    pub fn d_squared_residuals(&self) -> Vec<(String, VertexPoly)> {
        let mut out = Vec::new();
        for i in 0..self.alg.ngens() {
            let r = self.apply_d0(&self.d0_images[i]);
            if !r.is_zero() {
                out.push((self.alg.gen(i).name.clone(), r));
            }
        }
        out
    }

    /// `D` (SUSY complexes only).
    #[allow(non_snake_case)]
    pub fn D(&self, x: &VertexPoly) -> VertexPoly {
        assert_eq!(self.flavor(), Flavor::Susy);
        apply_d(&self.alg, x)
    }

    /// Λ-bracket in the SUSY complex.
    pub fn lambda_super(&self, a: &VertexPoly, b: &VertexPoly) -> LambdaSuperPoly {
        LambdaSuperPoly::new(self.alg.lambda_bracket(&self.D(a), b), self.alg.lambda_bracket(a, b))
    }

    /// The building block `J_a` (non-SUSY) or `J_ā` (SUSY) for a basis element.
    pub fn building_block_basis(&self, a: usize) -> VertexPoly {
        let g = &self.spec.algebra;
        let plus = self.spec.grading.n_plus();
        let al = &self.alg;
        let mut out = fac(self.u[a]);
        match self.flavor() {
            Flavor::NonSusy => {
                for &be in &plus {
                    for (&ga, c) in &g.bracket[a][be] {
                        let Some(&plg) = self.pl.get(&ga) else { continue };
                        out.axpy(c, &al.no(&fac(plg), &fac(self.pu[&be])));
                    }
                }
            }
            Flavor::Susy => {
                let pa = g.parity[a] as u32;
                for &be in &plus {
                    let br = &g.bracket[be][a];
                    if br.is_empty() {
                        continue;
                    }
                    let s = sign((pa + 1) * (g.parity[be] as u32 + 1));
                    for &ga in &plus {
                        let c = g.form(&self.spec.duals.upper[&ga], br);
                        if c.is_zero() {
                            continue;
                        }
                        out.axpy(&(&s * &c), &al.no(&fac(self.pu[&be]), &fac(self.pl[&ga])));
                    }
                }
            }
        }
        out
    }

    /// Linear extension of the building block map.
    pub fn building_block(&self, v: &Elem) -> VertexPoly {
        let mut out = VertexPoly::zero();
        for (i, c) in v {
            out.axpy(c, &self.building_block_basis(*i));
        }
        out
    }

    /// Pairs `(a, b)` in `g_{≤0}` violating the closed-form building block bracket.
    pub fn closure_failures(&self) -> Vec<(String, String)> {
        let g = &self.spec.algebra;
        let le0 = self.spec.grading.g_le0();
        let kh = self.spec.shifted_level();
        let mut bad = Vec::new();
        for &a in &le0 {
            for &b in &le0 {
                let (ja, jb) = (self.building_block_basis(a), self.building_block_basis(b));
                let jab = self.building_block(&g.bracket[a][b]);
                let ok = match self.flavor() {
                    Flavor::NonSusy => {
                        let got = self.alg.lambda_bracket(&ja, &jb);
                        let nu = self.spec.nu(&basis_vec(a), &basis_vec(b));
                        got == LambdaPoly::from_coeffs(vec![jab, VertexPoly::constant(nu)])
                    }
                    Flavor::Susy => {
                        let got = self.lambda_super(&ja, &jb);
                        let s = sign(g.parity[a] as u32 * (g.parity[b] as u32 + 1));
                        let want = LambdaSuperPoly::new(
                            LambdaPoly::from_coeffs(vec![jab.scale(&s)]),
                            LambdaPoly::from_coeffs(vec![VertexPoly::constant(&kh * &g.form[a][b])]),
                        );
                        got == want
                    }
                };
                if !ok {
                    bad.push((g.names[a].clone(), g.names[b].clone()));
                }
            }
        }
        bad
    }

    /// Generator index of the `D` partner (SUSY).
    pub fn partner(&self, i: usize) -> usize {
        dbar(i / 2)
    }
}
