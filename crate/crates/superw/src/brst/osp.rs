//! The non-SUSY `osp(1|2)` Miura target with a unit-norm fermion.
//!
//! The raw target has `[Phi[e] λ Phi[e]] = 2`; the unit fermion is `Phi = -Phi[e]/√2`.
//! Since `√2` is not available as a scalar, raw images are carried over monomial by
//! monomial: a monomial of fermion degree `d` picks up `2^{⌊d/2⌋}`, and odd elements lose
//! their common factor `-√2`.

use std::sync::Arc;

use super::BrstError;
use crate::scalar::{Poly, Scalar};
use crate::vertex::{Factor, Generator, VertexAlgebra, VertexPoly};

pub struct OspNormalized {
    /// Generators `J[H]` and `Phi`, in the order of the raw target.
    pub alg: VertexAlgebra,
    /// `2k + 3`.
    pub root: Arc<Poly>,
    phi: usize,
    raw_phi: usize,
}

impl OspNormalized {
    /// `raw` is the non-SUSY Miura target with generators `J[H]` and `Phi[e]`.
    pub fn new(raw: &VertexAlgebra) -> Result<OspNormalized, BrstError> {
        let jh = raw.index("J[H]")?;
        let raw_phi = raw.index("Phi[e]")?;
        let norm = raw.products(raw_phi, raw_phi).first().map(|x| x.constant_term()).unwrap_or_else(Scalar::zero);
        if norm != Scalar::from_int(2) {
            return Err(BrstError::Other(format!("unexpected fermion norm {}", norm.factor_text())));
        }
        let mut gens = Vec::new();
        for i in 0..raw.ngens() {
            let g = raw.gen(i);
            let name = if i == raw_phi { "Phi".to_string() } else { g.name.clone() };
            gens.push(Generator::new(&name, g.parity, g.two_weight).with_bound(g.two_bound));
        }
        let mut alg = VertexAlgebra::new("pi x Phi", gens)?;
        alg.set_products(jh, jh, raw.products(jh, jh).to_vec());
        alg.set_products(raw_phi, raw_phi, vec![VertexPoly::one()]);
        let level = raw.products(jh, jh).get(1).map(|x| x.constant_term()).unwrap_or_else(Scalar::zero);
        let root = level.rational_part().num().clone();
        if !level.rational_part().den().is_one() {
            return Err(BrstError::Other("level of J[H] is not a polynomial".into()));
        }
        Ok(OspNormalized { alg, root: Arc::new(root), phi: raw_phi, raw_phi })
    }

    pub fn phi(&self) -> usize {
        self.phi
    }

    /// Carries a raw image over, up to the factor `-√2` on odd elements.
    pub fn convert(&self, x: &VertexPoly) -> VertexPoly {
        let mut out = VertexPoly::zero();
        for (m, c) in x.terms() {
            let d = m.iter().filter(|f| f.gen as usize == self.raw_phi).count() as i32;
            out.add_term(m.clone(), &(c * &Scalar::from_int(2).pow(d / 2)));
        }
        out
    }

    /// `τ`: `Phi ↦ J[Hb]/√(2k+3)`, `J[H] ↦ DJ[Hb]`.
    pub fn tau(&self, susy: &VertexAlgebra, x: &VertexPoly) -> Result<VertexPoly, BrstError> {
        let jb = susy.index("J[Hb]")?;
        let djb = susy.index("DJ[Hb]")?;
        let s_inv = Scalar::root(&self.root).inv();
        let images = |g: usize| -> VertexPoly {
            if g == self.phi {
                VertexPoly::factor(Factor::new(jb, 0)).scale(&s_inv)
            } else {
                VertexPoly::factor(Factor::new(djb, 0))
            }
        };
        Ok(self.alg.apply_hom(susy, &images, x))
    }
}
