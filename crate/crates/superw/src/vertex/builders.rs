//! Standard bracket tables: affine, Heisenberg, fermionic ghosts, neutral fermions.

use super::{Factor, Generator, VertexAlgebra, VertexPoly};
use crate::liealg::{AlgebraSpec, Elem};
use crate::scalar::Scalar;

/// Linear combination of generators with the given offsets.
pub fn linear(terms: &[(usize, Scalar)]) -> VertexPoly {
    let mut out = VertexPoly::zero();
    for (i, c) in terms {
        out.add_term(vec![Factor::new(*i, 0)], c);
    }
    out
}

/// Element of `g` as a linear combination of the generators `offset + i`.
pub fn elem_poly(v: &Elem, offset: usize) -> VertexPoly {
    let mut out = VertexPoly::zero();
    for (i, c) in v {
        out.add_term(vec![Factor::new(offset + i, 0)], c);
    }
    out
}

/// `V^level(g)`: `[a_λ b] = [a,b] + level (a|b) λ`; generator names `prefix[name]`.
pub fn affine(g: &AlgebraSpec, level: &Scalar, prefix: &str) -> VertexAlgebra {
    let gens: Vec<Generator> =
        (0..g.dim()).map(|i| Generator::new(&format!("{}[{}]", prefix, g.names[i]), g.parity[i], 2)).collect();
    let mut alg = VertexAlgebra::new(&format!("V^k({})", g.name), gens).unwrap();
    install_affine(&mut alg, g, level, 0);
    alg
}

/// Adds affine brackets among generators `offset .. offset + dim g`.
pub fn install_affine(alg: &mut VertexAlgebra, g: &AlgebraSpec, level: &Scalar, offset: usize) {
    for i in 0..g.dim() {
        for j in 0..g.dim() {
            let p0 = elem_poly(&g.bracket[i][j], offset);
            let p1 = VertexPoly::constant(level * &g.form[i][j]);
            if !p0.is_zero() || !p1.is_zero() {
                alg.set_products(offset + i, offset + j, vec![p0, p1]);
            }
        }
    }
}

/// Heisenberg algebra with `[a_λ b] = gram[a][b] λ`.
pub fn heisenberg(names: &[&str], gram: &[Vec<Scalar>]) -> VertexAlgebra {
    let gens = names.iter().map(|n| Generator::new(n, 0, 2)).collect();
    let mut alg = VertexAlgebra::new("heisenberg", gens).unwrap();
    for i in 0..names.len() {
        for j in 0..names.len() {
            if !gram[i][j].is_zero() {
                alg.set_products(i, j, vec![VertexPoly::zero(), VertexPoly::constant(gram[i][j].clone())]);
            }
        }
    }
    alg
}

/// Neutral fermions/bosons `[a_λ b] = gram[a][b]` with weight 1/2.
pub fn neutral(names: &[(&str, u8)], gram: &[Vec<Scalar>]) -> VertexAlgebra {
    let gens = names.iter().map(|(n, p)| Generator::new(n, *p, 1)).collect();
    let mut alg = VertexAlgebra::new("neutral", gens).unwrap();
    for i in 0..names.len() {
        for j in 0..names.len() {
            if !gram[i][j].is_zero() {
                alg.set_products(i, j, vec![VertexPoly::constant(gram[i][j].clone())]);
            }
        }
    }
    alg
}
