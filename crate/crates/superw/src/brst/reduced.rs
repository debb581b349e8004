//! The reduced complex generated by building blocks, its cohomology, and the Miura map.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_rational::BigRational;
use serde::Serialize;

use super::{BrstError, Complex, Flavor};
use crate::linalg::{ColMatrix, SparseVec};
use crate::liealg::Elem;
use crate::scalar::{Poly, Scalar};
use crate::susy::apply_d;
use crate::vertex::{Embedding, Factor, Generator, Mono, MonoIndex, VertexAlgebra, VertexPoly};

fn fac(i: usize) -> VertexPoly {
    VertexPoly::factor(Factor::new(i, 0))
}

/// The reduced complex as an abstract algebra embedded in the full complex.
pub struct Reduced {
    pub flavor: Flavor,
    pub emb: Embedding,
    /// Basis index `a ∈ g_{≤0}` to the generator `J[a]` (`J[ab]` in the SUSY case).
    pub j: BTreeMap<usize, usize>,
    pub phi: BTreeMap<usize, usize>,
    pub pu: BTreeMap<usize, usize>,
    d0_images: Vec<VertexPoly>,
}

/// Kernel and image dimensions of `d_(0)` on one graded component.
#[derive(Clone, Debug, Serialize)]
pub struct Cohomology {
    pub two_weight: i64,
    pub charge: i64,
    /// Dimension of the component.
    pub dim: usize,
    /// Rank of `d_(0)` leaving the component.
    pub rank_out: usize,
    /// Rank of `d_(0)` entering the component.
    pub rank_in: usize,
}

impl Cohomology {
    pub fn kernel(&self) -> usize {
        self.dim - self.rank_out
    }

    pub fn cohomology(&self) -> usize {
        self.kernel() - self.rank_in
    }
}

impl Reduced {
    pub fn new(cx: &Complex) -> Result<Reduced, BrstError> {
        let g = &cx.spec.algebra;
        let gr = &cx.spec.grading;
        let mut gens: Vec<(Generator, VertexPoly)> = Vec::new();
        let mut j = BTreeMap::new();
        let mut phi = BTreeMap::new();
        let mut pu = BTreeMap::new();
        match cx.flavor() {
            Flavor::NonSusy => {
                for a in gr.g_le0() {
                    j.insert(a, gens.len());
                    let info = Generator::new(&format!("J[{}]", g.names[a]), g.parity[a], 2 - gr.two_j[a]).with_bound(2);
                    gens.push((info, cx.building_block_basis(a)));
                }
                for (&a, &i) in &cx.phi {
                    phi.insert(a, gens.len());
                    gens.push((cx.alg.gen(i).clone(), fac(i)));
                }
                for (&a, &i) in &cx.pu {
                    pu.insert(a, gens.len());
                    gens.push((cx.alg.gen(i).clone(), fac(i)));
                }
            }
            Flavor::Susy => {
                for a in gr.g_le0() {
                    j.insert(a, gens.len());
                    let name = format!("J[{}b]", g.names[a]);
                    let p = 1 - g.parity[a];
                    let w = 1 - gr.two_j[a];
                    let x = cx.building_block_basis(a);
                    let dx = cx.D(&x);
                    gens.push((Generator::new(&name, p, w).with_bound(1), x));
                    gens.push((Generator::new(&format!("D{}", name), 1 - p, w + 1).with_bound(2), dx));
                }
                for (&a, &i) in &cx.pu {
                    pu.insert(a, gens.len());
                    gens.push((cx.alg.gen(i).clone(), fac(i)));
                    gens.push((cx.alg.gen(i + 1).clone(), fac(i + 1)));
                }
            }
        }
        let name = match cx.flavor() {
            Flavor::NonSusy => format!("C+({}, F)", g.name),
            Flavor::Susy => format!("C~({}bar, f)", g.name),
        };
        let emb = Embedding::new(&cx.alg, &name, gens)?;
        let mut red = Reduced { flavor: cx.flavor(), emb, j, phi, pu, d0_images: Vec::new() };
        for i in 0..red.alg().ngens() {
            let info = red.alg().gen(i).clone();
            let img = cx.apply_d0(&red.emb.images[i]);
            let x = red
                .emb
                .express(&cx.alg, &img, info.two_weight, info.charge + 1)
                .ok_or_else(|| BrstError::Other(format!("d0({}) leaves the reduced complex", info.name)))?;
            red.d0_images.push(x);
        }
        Ok(red)
    }

    pub fn alg(&self) -> &VertexAlgebra {
        &self.emb.sub
    }

    /// `J[a]` (or `J[ab]`) for a linear combination in `g_{≤0}`.
    pub fn j_elem(&self, v: &Elem) -> VertexPoly {
        let mut out = VertexPoly::zero();
        for (i, c) in v {
            out.add_term(vec![Factor::new(self.j[i], 0)], c);
        }
        out
    }

    /// `d_(0)` restricted to the reduced complex.
    pub fn apply_d0(&self, x: &VertexPoly) -> VertexPoly {
        self.alg().apply_derivation(&|g| self.d0_images[g].clone(), 1, x)
    }

    /// `D` on the reduced complex (SUSY only).
    #[allow(non_snake_case)]
    pub fn D(&self, x: &VertexPoly) -> VertexPoly {
        assert_eq!(self.flavor, Flavor::Susy);
        apply_d(self.alg(), x)
    }

    /// Normal-ordered monomials of doubled weight and charge.
    pub fn component(&self, two_weight: i64, charge: i64) -> Vec<Mono> {
        self.emb.basis(two_weight, charge)
    }

    fn d0_matrix(&self, two_weight: i64, charge: i64, idx: &mut MonoIndex) -> (Vec<Mono>, Vec<SparseVec>) {
        let basis = self.component(two_weight, charge);
        let cols = basis.iter().map(|m| idx.vector(&self.apply_d0(&VertexPoly::monomial(m.clone(), Scalar::one())))).collect();
        (basis, cols)
    }

    /// Basis of `ker d_(0)` on the charge-0 component of doubled weight `two_weight`,
    /// over rational functions in `k`.
    pub fn cohomology_generators(&self, two_weight: i64) -> Result<Vec<VertexPoly>, BrstError> {
        let mut idx = MonoIndex::default();
        let (basis, cols) = self.d0_matrix(two_weight, 0, &mut idx);
        if basis.is_empty() {
            return Err(BrstError::Other(format!("empty component at weight {}/2", two_weight)));
        }
        let mat = ColMatrix::new(idx.len(), cols);
        Ok(mat
            .kernel()
            .into_iter()
            .map(|v| {
                let mut x = VertexPoly::zero();
                for (j, c) in v {
                    x.add_term(basis[j].clone(), &c);
                }
                x
            })
            .collect())
    }

    /// Dimension counts of one component; `k0` specializes the level first.
    pub fn counts(&self, two_weight: i64, charge: i64, k0: Option<&BigRational>) -> Result<Cohomology, BrstError> {
        let rank = |m: ColMatrix| -> Result<usize, BrstError> {
            Ok(match k0 {
                Some(k) => m.specialize(k).map_err(|e| BrstError::Other(e.to_string()))?.rank(),
                None => m.rank(),
            })
        };
        let mut idx = MonoIndex::default();
        let (basis, out) = self.d0_matrix(two_weight, charge, &mut idx);
        let rank_out = rank(ColMatrix::new(idx.len(), out))?;
        let mut idx = MonoIndex::default();
        let (_, inc) = self.d0_matrix(two_weight, charge - 1, &mut idx);
        let rank_in = rank(ColMatrix::new(idx.len(), inc))?;
        Ok(Cohomology { two_weight, charge, dim: basis.len(), rank_out, rank_in })
    }

    /// The target of the Miura map: the subalgebra generated by `J[a]`, `a ∈ g_0`, and the `Phi`.
    pub fn miura_target(&self, cx: &Complex) -> Result<Embedding, BrstError> {
        let g0 = cx.spec.grading.g0();
        let mut gens = Vec::new();
        for a in g0 {
            let i = self.j[&a];
            gens.push((self.alg().gen(i).clone(), fac(i)));
            if self.flavor == Flavor::Susy {
                gens.push((self.alg().gen(i + 1).clone(), fac(i + 1)));
            }
        }
        for &i in self.phi.values() {
            gens.push((self.alg().gen(i).clone(), fac(i)));
        }
        Ok(Embedding::new(self.alg(), &format!("V({})", cx.spec.algebra.name), gens)?)
    }

    /// The Miura map: project every `J[a]` onto `g_0` and drop the ghosts.
    pub fn miura(&self, target: &Embedding, x: &VertexPoly) -> VertexPoly {
        let t = &target.sub;
        let image = |g: usize| -> VertexPoly {
            let name = &self.alg().gen(g).name;
            match t.index(name) {
                Ok(i) => fac(i),
                Err(_) => VertexPoly::zero(),
            }
        };
        self.alg().apply_hom(t, &image, x)
    }
}

/// The identification of the non-SUSY Cartan/fermion target with the SUSY Heisenberg target:
/// `√(k+h∨) Φ_{e_α} ↦ h̄_α` and `h ↦ D h̄`.
pub struct TauMap {
    pub root: Arc<Poly>,
    images: Vec<VertexPoly>,
}

impl TauMap {
    /// `nonsusy` and `susy` are the two Miura targets.
    pub fn new(cx: &Complex, nonsusy: &VertexAlgebra, susy: &VertexAlgebra) -> Result<TauMap, BrstError> {
        let g = &cx.spec.algebra;
        let kh = cx.spec.shifted_level();
        let q = kh.rational_part().num().clone();
        let den = kh.rational_part().den().clone();
        if !den.is_constant() {
            return Err(BrstError::Other("k + h∨ is not a polynomial".into()));
        }
        // √(k+h∨) = √(num)/√(den); den is a constant, so scale num to absorb it
        let root = Arc::new(q.scale(&den.constant_term().inv().expect("nonzero")));
        let s_inv = Scalar::root(&root).inv();
        let roots = &g.simple_roots;
        let coroots = g.coroots();
        let mut images = Vec::new();
        for i in 0..nonsusy.ngens() {
            let name = nonsusy.gen(i).name.clone();
            let inner = &name[name.find('[').unwrap() + 1..name.len() - 1];
            let a = g.index(inner)?;
            let img = if name.starts_with("Phi[") {
                let c = crate::liealg::express_in(&crate::liealg::basis_vec(a), roots)
                    .ok_or_else(|| BrstError::Other(format!("{} is not in the span of the simple roots", inner)))?;
                let mut h = Elem::new();
                for (r, v) in c.iter().enumerate() {
                    h = crate::liealg::add(&h, &crate::liealg::scale(&coroots[r], v));
                }
                elem_bar(g, susy, &h, false)?.scale(&s_inv)
            } else {
                elem_bar(g, susy, &crate::liealg::basis_vec(a), true)?
            };
            images.push(img);
        }
        Ok(TauMap { root, images })
    }

    pub fn apply(&self, nonsusy: &VertexAlgebra, susy: &VertexAlgebra, x: &VertexPoly) -> VertexPoly {
        nonsusy.apply_hom(susy, &|g| self.images[g].clone(), x)
    }

    pub fn image(&self, g: usize) -> &VertexPoly {
        &self.images[g]
    }
}

/// `Σ c_a J[ab]` (or `Σ c_a DJ[ab]`) in a SUSY target.
fn elem_bar(g: &crate::liealg::AlgebraSpec, susy: &VertexAlgebra, v: &Elem, d: bool) -> Result<VertexPoly, BrstError> {
    let mut out = VertexPoly::zero();
    for (a, c) in v {
        let name = format!("{}J[{}b]", if d { "D" } else { "" }, g.names[*a]);
        out.axpy(c, &susy.try_g(&name)?);
    }
    Ok(out)
}
