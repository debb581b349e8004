use super::{file::parse_spec, AlgebraSpec, LieError};
use crate::scalar::Scalar;

pub const OSP12_JSON: &str = include_str!("../../data/osp12.json");
pub const SL21_JSON: &str = include_str!("../../data/sl21.json");

/// `osp(1|2)` with basis `E, e, H, f, F`.
pub fn osp12() -> AlgebraSpec {
    parse_spec(OSP12_JSON).expect("embedded osp12 spec")
}

/// `sl(2|1)` with basis `E, e, et, H, U, f, ft, F` (`et`, `ft` stand for the tilded vectors).
pub fn sl21() -> AlgebraSpec {
    parse_spec(SL21_JSON).expect("embedded sl21 spec")
}

/// `osp(1|2)` with `H` replaced by `x = H/2`.
pub fn osp12_x() -> AlgebraSpec {
    let g = osp12();
    let h = g.idx("H");
    g.rescale_basis(h, &Scalar::frac(1, 2), "x")
}

/// Built-in lookup by name.
pub fn builtin(name: &str) -> Result<AlgebraSpec, LieError> {
    match name {
        "osp12" | "osp(1|2)" => Ok(osp12()),
        "sl21" | "sl(2|1)" => Ok(sl21()),
        other => Err(LieError::UnknownName(other.to_string())),
    }
}

/// Abelian algebra on `n` even generators with the identity form.
pub fn abelian(n: usize) -> AlgebraSpec {
    let names: Vec<String> = (0..n).map(|i| format!("h{}", i)).collect();
    let mut form = vec![vec![Scalar::zero(); n]; n];
    for (i, row) in form.iter_mut().enumerate() {
        row[i] = Scalar::one();
    }
    AlgebraSpec {
        name: format!("abelian{}", n),
        names,
        parity: vec![0; n],
        bracket: vec![vec![Default::default(); n]; n],
        form,
        h: None,
        dual_coxeter: Scalar::zero(),
        osp: None,
        simple_roots: Vec::new(),
    }
}
