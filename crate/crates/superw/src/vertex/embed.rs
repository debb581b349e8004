//! Freely generated subalgebras presented by generator images in a host algebra.

use std::collections::BTreeMap;

use super::{Generator, Mono, VertexAlgebra, VertexError, VertexPoly};
use crate::linalg::{solve, ColMatrix, SparseVec};
use crate::scalar::Scalar;

/// An abstract algebra `sub` with an injective map into `host` given on generators.
#[derive(Clone, Debug)]
pub struct Embedding {
    pub sub: VertexAlgebra,
    pub images: Vec<VertexPoly>,
}

/// Column vectors of host polynomials over a shared monomial index.
#[derive(Default)]
pub struct MonoIndex {
    index: BTreeMap<Mono, usize>,
}

impl MonoIndex {
    pub fn vector(&mut self, x: &VertexPoly) -> SparseVec {
        let mut out = SparseVec::new();
        for (m, c) in x.terms() {
            let n = self.index.len();
            let i = *self.index.entry(m.clone()).or_insert(n);
            out.insert(i, c.clone());
        }
        out
    }

    pub fn len(&self) -> usize {
        self.index.len()
    }

    pub fn is_empty(&self) -> bool {
        self.index.is_empty()
    }
}

impl Embedding {
    /// Builds the subalgebra generated by `gens` (with their images in `host`),
    /// deriving its bracket table by expressing every host bracket back in the subalgebra.
    pub fn new(host: &VertexAlgebra, name: &str, gens: Vec<(Generator, VertexPoly)>) -> Result<Embedding, VertexError> {
        let (infos, images): (Vec<Generator>, Vec<VertexPoly>) = gens.into_iter().unzip();
        let sub = VertexAlgebra::new(name, infos)?;
        let mut emb = Embedding { sub, images };
        let n = emb.sub.ngens();
        let mut table = Vec::new();
        for a in 0..n {
            for b in 0..n {
                let l = host.lambda_bracket(&emb.images[a], &emb.images[b]);
                if l.is_zero() {
                    continue;
                }
                let ga = emb.sub.gen(a).clone();
                let gb = emb.sub.gen(b).clone();
                let mut prods = Vec::new();
                for (k, c) in l.products().into_iter().enumerate() {
                    let w = ga.two_weight + gb.two_weight - 2 * (k as i64 + 1);
                    let q = ga.charge + gb.charge;
                    let x = emb
                        .express(host, &c, w, q)
                        .ok_or_else(|| VertexError::NotClosed(ga.name.clone(), gb.name.clone()))?;
                    prods.push(x);
                }
                table.push((a, b, prods));
            }
        }
        for (a, b, p) in table {
            emb.sub.set_products(a, b, p);
        }
        Ok(emb)
    }

    /// Image in the host.
    pub fn embed(&self, host: &VertexAlgebra, x: &VertexPoly) -> VertexPoly {
        self.sub.apply_hom(host, &|g| self.images[g].clone(), x)
    }

    /// Normal-form monomials of the subalgebra with given doubled weight and charge.
    pub fn basis(&self, two_weight: i64, charge: i64) -> Vec<Mono> {
        if two_weight < 0 {
            return Vec::new();
        }
        self.sub
            .monomials_of_weight(two_weight, &|_| true)
            .into_iter()
            .filter(|m| self.sub.charge_mono(m) == charge)
            .collect()
    }

    /// Writes a host polynomial as an element of the subalgebra, if it is one.
    pub fn express(&self, host: &VertexAlgebra, x: &VertexPoly, two_weight: i64, charge: i64) -> Option<VertexPoly> {
        if x.is_zero() {
            return Some(VertexPoly::zero());
        }
        let basis = self.basis(two_weight, charge);
        let mut idx = MonoIndex::default();
        let cols: Vec<SparseVec> =
            basis.iter().map(|m| idx.vector(&self.embed(host, &VertexPoly::monomial(m.clone(), Scalar::one())))).collect();
        let target = idx.vector(x);
        let mat = ColMatrix::new(idx.len(), cols);
        let sol = solve(&mat, &target)?;
        let mut out = VertexPoly::zero();
        for (j, c) in sol {
            out.add_term(basis[j].clone(), &c);
        }
        Some(out)
    }
}
