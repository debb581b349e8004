//! Free field realizations: Fock modules over Heisenberg and SUSY Heisenberg algebras,
//! the exponential intertwiners `e^{-α}(z)` and `e^{-α}(Z)`, and their residues.
//!
//! States are labelled by normally ordered monomials in the negative modes, which is the
//! same as the PBW basis of the vacuum vertex algebra. The shift `s_{-α}` commutes with
//! all nonzero modes, so a state of `π_{-α}` carries the label of its preimage in `π_0`.
//! Only vacuum-sourced intertwiners are supported: there `α_(0)` acts by zero and the
//! power `z^{-α_(0)/(k+h∨)}` is the identity.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::brst::Flavor;
use crate::linalg::{ColMatrix, SparseVec};
use crate::liealg::{AlgebraSpec, Elem, GradingData, LieError};
use crate::scalar::Scalar;
use crate::vertex::{Generator, Mono, MonoIndex, VertexAlgebra, VertexError, VertexPoly};

#[cfg(test)]
mod tests;

#[derive(Debug, Error)]
pub enum ScreeningError {
    #[error("negative cutoff {0}")]
    Cutoff(i64),
    #[error("weight {0}/2 exceeds the cutoff {1}/2")]
    AboveCutoff(i64, i64),
    #[error("only vacuum-sourced intertwiners are supported")]
    NonVacuum,
    #[error("the component of weight {0}/2 is empty")]
    EmptyComponent(i64),
    #[error("flavors do not match")]
    FlavorMismatch,
    #[error("no simple root {0}")]
    NoRoot(usize),
    #[error("{0}")]
    Lie(#[from] LieError),
    #[error("{0}")]
    Vertex(#[from] VertexError),
    #[error("{0}")]
    Other(String),
}

/// A Fock module `π_β` (tensored with `Φ(g_{1/2})` in the non-SUSY case).
#[derive(Clone)]
pub struct FockModule {
    pub flavor: Flavor,
    /// The free field vertex algebra whose PBW monomials label the states.
    pub alg: VertexAlgebra,
    /// `k + h∨`.
    pub kappa: Scalar,
    /// The highest weight `β`, as an element of `h` through the form.
    pub weight: Elem,
}

fn cartan_field(g: &AlgebraSpec, alg: &VertexAlgebra, h: &Elem, template: &str) -> Result<VertexPoly, ScreeningError> {
    let mut out = VertexPoly::zero();
    for (a, c) in h {
        out.axpy(c, &alg.try_g(&template.replace("{}", &g.names[*a]))?);
    }
    Ok(out)
}

impl FockModule {
    /// Wraps an existing free field algebra as the vacuum module.
    pub fn vacuum(flavor: Flavor, alg: VertexAlgebra, kappa: Scalar) -> FockModule {
        FockModule { flavor, alg, kappa, weight: Elem::new() }
    }

    /// The vacuum module built from `g`: non-SUSY generators `J[h]` (`h ∈ g_0`) and
    /// `Phi[a]` (`a ∈ g_{1/2}`), SUSY generators `J[hb]`, `DJ[hb]`.
    pub fn free_field(g: &AlgebraSpec, gr: &GradingData, flavor: Flavor, level: &Scalar) -> Result<FockModule, ScreeningError> {
        let kappa = level + &g.dual_coxeter;
        let cartan = gr.g0();
        let mut gens = Vec::new();
        let mut fields: Vec<(usize, bool)> = Vec::new();
        match flavor {
            Flavor::NonSusy => {
                for &a in &cartan {
                    gens.push(Generator::new(&format!("J[{}]", g.names[a]), g.parity[a], 2).with_bound(2));
                    fields.push((a, true));
                }
                for a in gr.g_half() {
                    gens.push(Generator::new(&format!("Phi[{}]", g.names[a]), g.parity[a], 1).with_bound(1));
                    fields.push((a, false));
                }
            }
            Flavor::Susy => {
                for &a in &cartan {
                    let p = 1 - g.parity[a];
                    gens.push(Generator::new(&format!("J[{}b]", g.names[a]), p, 1).with_bound(1));
                    gens.push(Generator::new(&format!("DJ[{}b]", g.names[a]), 1 - p, 2).with_bound(2));
                    fields.push((a, false));
                    fields.push((a, true));
                }
            }
        }
        let name = match flavor {
            Flavor::NonSusy => format!("pi x Phi({})", g.name),
            Flavor::Susy => format!("pi^({})", g.name),
        };
        let mut alg = VertexAlgebra::new(&name, gens)?;
        let big_f = g.osp.as_ref().map(|o| crate::liealg::basis_vec(o.big_f));
        let basis = crate::liealg::basis_vec;
        for (i, &(a, bi)) in fields.iter().enumerate() {
            for (j, &(b, bj)) in fields.iter().enumerate() {
                let prods = match (flavor, bi, bj) {
                    (_, true, true) => {
                        let v = &kappa * &g.form(&basis(a), &basis(b));
                        if v.is_zero() {
                            continue;
                        }
                        vec![VertexPoly::zero(), VertexPoly::constant(v)]
                    }
                    (Flavor::NonSusy, false, false) => {
                        let Some(f) = &big_f else { continue };
                        let v = g.form(f, &g.bracket(&basis(a), &basis(b)));
                        if v.is_zero() {
                            continue;
                        }
                        vec![VertexPoly::constant(v)]
                    }
                    (Flavor::Susy, false, false) => {
                        let v = &kappa * &g.form(&basis(a), &basis(b));
                        if v.is_zero() {
                            continue;
                        }
                        vec![VertexPoly::constant(v)]
                    }
                    _ => continue,
                };
                alg.set_products(i, j, prods);
            }
        }
        Ok(FockModule { flavor, alg, kappa, weight: Elem::new() })
    }

    /// The same states, read in `π_β`.
    pub fn shifted(&self, beta: Elem) -> FockModule {
        FockModule { weight: beta, ..self.clone() }
    }

    pub fn is_vacuum(&self) -> bool {
        self.weight.values().all(|c| c.is_zero())
    }

    /// Eigenvalue of `h_(0)` (resp. `(D h̄)_(0)`) on the highest weight vector.
    pub fn zero_mode(&self, g: &AlgebraSpec, h: &Elem) -> Scalar {
        g.form(h, &self.weight)
    }

    /// PBW monomials of doubled weight `two_weight`.
    pub fn basis(&self, two_weight: i64) -> Vec<Mono> {
        if two_weight < 0 {
            return Vec::new();
        }
        self.alg.monomials_of_weight(two_weight, &|_| true)
    }

    /// `h` as a field: `J[h]` in the non-SUSY case, `D h̄ = DJ[hb]` in the SUSY case.
    pub fn boson(&self, g: &AlgebraSpec, h: &Elem) -> Result<VertexPoly, ScreeningError> {
        let template = match self.flavor {
            Flavor::NonSusy => "J[{}]",
            Flavor::Susy => "DJ[{}b]",
        };
        cartan_field(g, &self.alg, h, template)
    }

    /// The odd partner `h̄ = J[hb]` (SUSY only).
    pub fn fermion_bar(&self, g: &AlgebraSpec, h: &Elem) -> Result<VertexPoly, ScreeningError> {
        if self.flavor != Flavor::Susy {
            return Err(ScreeningError::FlavorMismatch);
        }
        cartan_field(g, &self.alg, h, "J[{}b]")
    }

    /// `Φ_v` for `v ∈ g_{1/2}`. A module with a single fermion `Phi` uses it for any `v`.
    pub fn phi(&self, g: &AlgebraSpec, v: &Elem) -> Result<VertexPoly, ScreeningError> {
        if self.flavor != Flavor::NonSusy {
            return Err(ScreeningError::FlavorMismatch);
        }
        if let Ok(p) = self.alg.try_g("Phi") {
            return Ok(p);
        }
        cartan_field(g, &self.alg, v, "Phi[{}]")
    }
}

/// The element `h_α ∈ h` with `(h_α|x) = α(x)` for all `x ∈ h = g_0`.
pub fn root_dual(g: &AlgebraSpec, gr: &GradingData, root: usize) -> Result<Elem, ScreeningError> {
    let ea = g.simple_roots.get(root).ok_or(ScreeningError::NoRoot(root))?;
    let cartan = gr.g0();
    let basis = crate::liealg::basis_vec;
    // α(x) from [x, e_α] = α(x) e_α
    let (&lead, lc) = ea.iter().find(|(_, c)| !c.is_zero()).ok_or(ScreeningError::NoRoot(root))?;
    let cols: Vec<SparseVec> = cartan
        .iter()
        .map(|&y| cartan.iter().enumerate().filter_map(|(r, &x)| {
            let v = g.form(&basis(x), &basis(y));
            (!v.is_zero()).then_some((r, v))
        }).collect())
        .collect();
    let target: SparseVec = cartan
        .iter()
        .enumerate()
        .filter_map(|(r, &x)| {
            let v = &g.bracket(&basis(x), ea).get(&lead).cloned().unwrap_or_else(Scalar::zero) / lc;
            (!v.is_zero()).then_some((r, v))
        })
        .collect();
    let sol = crate::linalg::solve(&ColMatrix::new(cartan.len(), cols), &target)
        .ok_or_else(|| ScreeningError::Other("degenerate form on the Cartan subalgebra".into()))?;
    Ok(sol.into_iter().map(|(i, c)| (cartan[i], c)).collect())
}

/// The modes of `e^{-α}(z)` (or `e^{-α}(Z)`) on a vacuum module, and its residue.
pub struct ScreeningOp {
    pub root: usize,
    pub flavor: Flavor,
    /// Doubled weight cutoff `2N`.
    pub two_cutoff: i64,
    /// `α(z)`; in the SUSY case the even component `(D h̄_α)(z)`.
    boson: VertexPoly,
    /// `Φ_α(z)` (non-SUSY, `α ∈ Π_{1/2}`) or `h̄_α(z)` (SUSY).
    fermion: Option<VertexPoly>,
    /// `1` for `∫ dz`; `-1/(k+h∨)` from the odd component of `e^{-α}(Z)` for `∫ dZ`.
    prefactor: Scalar,
    kappa_inv: Scalar,
}

/// The series `Σ_n z^n c_n` with `c_n` stored at key `n`.
pub type Series = BTreeMap<i64, VertexPoly>;

/// One weight block of a residue operator.
pub struct ScreeningBlock {
    pub two_weight: i64,
    pub domain: Vec<Mono>,
    pub codomain: Vec<Mono>,
    pub matrix: ColMatrix,
}

#[derive(Serialize)]
pub struct BlockDump {
    pub two_weight: i64,
    pub domain: Vec<String>,
    pub codomain: Vec<String>,
    /// `(row, column, coefficient)`.
    pub entries: Vec<(usize, usize, String)>,
}

impl ScreeningBlock {
    pub fn dump(&self, alg: &VertexAlgebra) -> BlockDump {
        let mut entries = Vec::new();
        for (j, col) in self.matrix.cols.iter().enumerate() {
            for (i, c) in col {
                entries.push((*i, j, c.factor_text()));
            }
        }
        BlockDump {
            two_weight: self.two_weight,
            domain: self.domain.iter().map(|m| alg.mono_text(m)).collect(),
            codomain: self.codomain.iter().map(|m| alg.mono_text(m)).collect(),
            entries,
        }
    }
}

/// Builds the intertwiner `e^{-α}(z)` (resp. `e^{-α}(Z)`) for the simple root `α` and
/// weight cutoff `two_cutoff / 2`, together with the screening field it enters.
pub fn vertex_exp_modes(
    fock: &FockModule,
    g: &AlgebraSpec,
    gr: &GradingData,
    root: usize,
    two_cutoff: i64,
) -> Result<ScreeningOp, ScreeningError> {
    if two_cutoff < 0 {
        return Err(ScreeningError::Cutoff(two_cutoff));
    }
    if !fock.is_vacuum() {
        return Err(ScreeningError::NonVacuum);
    }
    let ea = g.simple_roots.get(root).ok_or(ScreeningError::NoRoot(root))?;
    let h = root_dual(g, gr, root)?;
    let boson = fock.boson(g, &h)?;
    let kappa_inv = fock.kappa.inv();
    let (fermion, prefactor) = match fock.flavor {
        Flavor::NonSusy => {
            let half = gr.g_half();
            let in_half = ea.keys().all(|a| half.contains(a));
            (if in_half { Some(fock.phi(g, ea)?) } else { None }, Scalar::one())
        }
        Flavor::Susy => (Some(fock.fermion_bar(g, &h)?), -&kappa_inv),
    };
    Ok(ScreeningOp { root, flavor: fock.flavor, two_cutoff, boson, fermion, prefactor, kappa_inv })
}

impl ScreeningOp {
    fn check_weight(&self, two_weight: i64) -> Result<(), ScreeningError> {
        if two_weight > self.two_cutoff {
            return Err(ScreeningError::AboveCutoff(two_weight, self.two_cutoff));
        }
        Ok(())
    }

    /// `e^{-α}(z) v` for `v` of doubled weight at most `two_weight`, keeping powers `z^n`
    /// with `n ≤ top`. In the SUSY case this is the even component of `e^{-α}(Z)`.
    pub fn exp_series(&self, fock: &FockModule, v: &VertexPoly, two_weight: i64, top: i64) -> Series {
        let alg = &fock.alg;
        let pmax = two_weight / 2;
        // E_+ = exp(Σ_{n>0} α_(n) z^{-n} / (nκ)): p g_p = κ^{-1} Σ_j α_(j) g_{p-j}
        let mut g = vec![v.clone()];
        for p in 1..=pmax {
            let mut acc = VertexPoly::zero();
            for j in 1..=p {
                acc.axpy(&Scalar::one(), &alg.nprod(&self.boson, j, &g[(p - j) as usize]));
            }
            g.push(acc.scale(&(&self.kappa_inv / &Scalar::from_int(p))));
        }
        let mut out = Series::new();
        for (p, gp) in g.iter().enumerate() {
            if gp.is_zero() {
                continue;
            }
            // E_- = exp(-Σ_{m>0} α_(-m) z^m / (mκ)): m f_m = -κ^{-1} Σ_j α_(-j) f_{m-j}
            let p = p as i64;
            let mmax = top + p;
            let mut f = vec![gp.clone()];
            for m in 1..=mmax {
                let mut acc = VertexPoly::zero();
                for j in 1..=m {
                    acc.axpy(&Scalar::one(), &alg.nprod(&self.boson, -j, &f[(m - j) as usize]));
                }
                f.push(acc.scale(&(&-&self.kappa_inv / &Scalar::from_int(m))));
            }
            for (m, fm) in f.into_iter().enumerate() {
                if fm.is_zero() {
                    continue;
                }
                out.entry(m as i64 - p).or_insert_with(VertexPoly::zero).axpy(&Scalar::one(), &fm);
            }
        }
        out.retain(|_, x| !x.is_zero());
        out
    }

    /// The residue operator `∫ S_α(z) dz` (resp. `∫ e^{-α}(Z) dZ`) on a state of doubled
    /// weight `two_weight`. The result is labelled by its preimage under `s_{-α}`.
    pub fn apply(&self, fock: &FockModule, v: &VertexPoly, two_weight: i64) -> Result<VertexPoly, ScreeningError> {
        self.check_weight(two_weight)?;
        if fock.flavor != self.flavor {
            return Err(ScreeningError::FlavorMismatch);
        }
        if !fock.is_vacuum() {
            return Err(ScreeningError::NonVacuum);
        }
        let top = two_weight / 2 + 1;
        let series = self.exp_series(fock, v, two_weight, top);
        let out = match &self.fermion {
            None => series.get(&-1).cloned().unwrap_or_else(VertexPoly::zero),
            Some(psi) => {
                let mut acc = VertexPoly::zero();
                for (n, c) in &series {
                    acc.axpy(&Scalar::one(), &fock.alg.nprod(psi, *n, c));
                }
                acc
            }
        };
        Ok(out.scale(&self.prefactor))
    }

    /// Doubled weight of the output label for an input of doubled weight `two_weight`.
    pub fn target_weight(&self, two_weight: i64) -> i64 {
        match (self.flavor, &self.fermion) {
            (Flavor::NonSusy, None) => two_weight - 2,
            _ => two_weight - 1,
        }
    }

    pub fn block(&self, fock: &FockModule, two_weight: i64) -> Result<ScreeningBlock, ScreeningError> {
        let domain = fock.basis(two_weight);
        let codomain = fock.basis(self.target_weight(two_weight));
        let mut idx = MonoIndex::default();
        for m in &codomain {
            idx.vector(&VertexPoly::monomial(m.clone(), Scalar::one()));
        }
        let mut cols = Vec::new();
        for m in &domain {
            let x = self.apply(fock, &VertexPoly::monomial(m.clone(), Scalar::one()), two_weight)?;
            cols.push(idx.vector(&x));
        }
        if idx.len() != codomain.len() {
            return Err(ScreeningError::Other("residue left the codomain component".into()));
        }
        Ok(ScreeningBlock { two_weight, domain, codomain, matrix: ColMatrix::new(idx.len(), cols) })
    }

    /// All blocks up to the cutoff.
    pub fn blocks(&self, fock: &FockModule) -> Result<Vec<ScreeningBlock>, ScreeningError> {
        (0..=self.two_cutoff).map(|tw| self.block(fock, tw)).collect()
    }
}

/// The screening operators of all simple roots.
pub fn screenings(fock: &FockModule, g: &AlgebraSpec, gr: &GradingData, two_cutoff: i64) -> Result<Vec<ScreeningOp>, ScreeningError> {
    (0..g.simple_roots.len()).map(|r| vertex_exp_modes(fock, g, gr, r, two_cutoff)).collect()
}

/// Basis of the joint kernel of the residue operators on the component of doubled weight
/// `two_weight`.
pub fn screening_kernel(ops: &[ScreeningOp], fock: &FockModule, two_weight: i64) -> Result<Vec<VertexPoly>, ScreeningError> {
    let domain = fock.basis(two_weight);
    if domain.is_empty() {
        return Err(ScreeningError::EmptyComponent(two_weight));
    }
    let mut cols: Vec<SparseVec> = vec![SparseVec::new(); domain.len()];
    let mut offset = 0;
    for op in ops {
        let b = op.block(fock, two_weight)?;
        for (j, col) in b.matrix.cols.iter().enumerate() {
            for (i, c) in col {
                cols[j].insert(offset + i, c.clone());
            }
        }
        offset += b.matrix.nrows;
    }
    Ok(ColMatrix::new(offset, cols)
        .kernel()
        .into_iter()
        .map(|v| {
            let mut x = VertexPoly::zero();
            for (j, c) in v {
                x.add_term(domain[j].clone(), &c);
            }
            x
        })
        .collect())
}

/// Carries a non-SUSY state to the SUSY Fock module along `τ`.
pub fn identify_domains(
    nonsusy: &FockModule,
    susy: &FockModule,
    tau: &dyn Fn(&VertexPoly) -> VertexPoly,
    x: &VertexPoly,
) -> Result<VertexPoly, ScreeningError> {
    if nonsusy.flavor != Flavor::NonSusy || susy.flavor != Flavor::Susy {
        return Err(ScreeningError::FlavorMismatch);
    }
    Ok(tau(x))
}

/// The scalar `c` with `∫e^{-α}(Z)dZ (τ v) = c · τ(∫Φ_α e^{-α}(z)dz v)` for all `v` of
/// doubled weight at most `two_weight`. The codomains are identified as modules only up to
/// such a scalar; `None` when no single scalar works.
pub fn codomain_scalar(
    ns: (&ScreeningOp, &FockModule),
    su: (&ScreeningOp, &FockModule),
    tau: &dyn Fn(&VertexPoly) -> VertexPoly,
    two_weight: i64,
) -> Result<Option<Scalar>, ScreeningError> {
    let mut found: Option<Scalar> = None;
    for tw in 0..=two_weight {
        for m in ns.1.basis(tw) {
            let v = VertexPoly::monomial(m, Scalar::one());
            let lhs = su.0.apply(su.1, &identify_domains(ns.1, su.1, tau, &v)?, tw)?;
            let rhs = identify_domains(ns.1, su.1, tau, &ns.0.apply(ns.1, &v, tw)?)?;
            if rhs.is_zero() {
                if !lhs.is_zero() {
                    return Ok(None);
                }
                continue;
            }
            let c = match &found {
                Some(c) => c.clone(),
                None => {
                    let (mono, rc) = rhs.leading().expect("nonzero");
                    &lhs.coeff(mono) / rc
                }
            };
            if lhs != rhs.scale(&c) {
                return Ok(None);
            }
            found = Some(c);
        }
    }
    Ok(found)
}
