//! Versioned JSON format for algebra specs.
//!
//! ```json
//! {
//!   "schema": "superw-algebra/1",
//!   "name": "osp12",
//!   "basis": [{"name": "E", "parity": 0}, ...],
//!   "brackets": [["H", "E", {"E": "2"}], ...],
//!   "form": [["E", "F", "1"], ...],
//!   "h": "H",
//!   "dual_coxeter": "3/2",
//!   "osp": {"E": "E", "e": "e", "H": "H", "f": "f", "F": "F"},
//!   "simple_roots": [{"e": "-1/2"}]
//! }
//! ```
//!
//! Coefficients are exact rationals written as strings. A bracket `[a,b]`
//! listed without its partner `[b,a]` gets the partner from super
//! skew-symmetry; likewise for the form.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{scale, AlgebraSpec, Elem, LieError, Osp12Data};
use crate::scalar::{parse_scalar, Scalar};

pub const SCHEMA: &str = "superw-algebra/1";

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BasisEntry {
    pub name: String,
    pub parity: u8,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OspEntry {
    #[serde(rename = "E")]
    pub big_e: String,
    pub e: String,
    #[serde(rename = "H")]
    pub h: String,
    pub f: String,
    #[serde(rename = "F")]
    pub big_f: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpecFile {
    pub schema: String,
    pub name: String,
    pub basis: Vec<BasisEntry>,
    #[serde(default)]
    pub brackets: Vec<(String, String, BTreeMap<String, String>)>,
    #[serde(default)]
    pub form: Vec<(String, String, String)>,
    #[serde(default)]
    pub h: Option<String>,
    pub dual_coxeter: String,
    #[serde(default)]
    pub osp: Option<OspEntry>,
    #[serde(default)]
    pub simple_roots: Vec<BTreeMap<String, String>>,
}

fn rational(text: &str) -> Result<Scalar, LieError> {
    let x = parse_scalar(text, None).map_err(|e| LieError::File(format!("`{}`: {}", text, e)))?;
    match x.as_constant() {
        Some(g) if g.is_real() => Ok(x),
        _ => Err(LieError::File(format!("`{}` is not an exact rational", text))),
    }
}

pub fn parse_spec(text: &str) -> Result<AlgebraSpec, LieError> {
    let file: SpecFile = serde_json::from_str(text).map_err(|e| LieError::File(e.to_string()))?;
    file.build()
}

pub fn load_spec(path: &Path) -> Result<AlgebraSpec, LieError> {
    let text = std::fs::read_to_string(path).map_err(|e| LieError::File(format!("{}: {}", path.display(), e)))?;
    parse_spec(&text)
}

impl SpecFile {
    pub fn build(&self) -> Result<AlgebraSpec, LieError> {
        if self.schema != SCHEMA {
            return Err(LieError::File(format!("unsupported schema `{}`", self.schema)));
        }
        let names: Vec<String> = self.basis.iter().map(|b| b.name.clone()).collect();
        let parity: Vec<u8> = self.basis.iter().map(|b| b.parity % 2).collect();
        if self.basis.iter().any(|b| b.parity > 1) {
            return Err(LieError::File("parity must be 0 or 1".into()));
        }
        let n = names.len();
        let idx = |name: &str| names.iter().position(|m| m == name).ok_or_else(|| LieError::UnknownName(name.to_string()));
        let elem = |m: &BTreeMap<String, String>| -> Result<Elem, LieError> {
            let mut v = Elem::new();
            for (k, c) in m {
                let c = rational(c)?;
                if !c.is_zero() {
                    v.insert(idx(k)?, c);
                }
            }
            Ok(v)
        };
        let mut given = vec![vec![None; n]; n];
        for (a, b, m) in &self.brackets {
            let (i, j) = (idx(a)?, idx(b)?);
            if given[i][j].is_some() {
                return Err(LieError::File(format!("bracket [{},{}] listed twice", a, b)));
            }
            given[i][j] = Some(elem(m)?);
        }
        let mut bracket = vec![vec![Elem::new(); n]; n];
        for i in 0..n {
            for j in 0..n {
                bracket[i][j] = match (&given[i][j], &given[j][i]) {
                    (Some(v), _) => v.clone(),
                    (None, Some(w)) => {
                        let s = if parity[i] * parity[j] == 1 { Scalar::one() } else { Scalar::from_int(-1) };
                        scale(w, &s)
                    }
                    (None, None) => Elem::new(),
                };
            }
        }
        let mut fgiven = vec![vec![None; n]; n];
        for (a, b, c) in &self.form {
            let (i, j) = (idx(a)?, idx(b)?);
            fgiven[i][j] = Some(rational(c)?);
        }
        let mut form = vec![vec![Scalar::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                form[i][j] = match (&fgiven[i][j], &fgiven[j][i]) {
                    (Some(v), _) => v.clone(),
                    (None, Some(w)) => {
                        if parity[i] * parity[j] == 1 {
                            -w
                        } else {
                            w.clone()
                        }
                    }
                    (None, None) => Scalar::zero(),
                };
            }
        }
        let h = self.h.as_deref().map(idx).transpose()?.map(super::basis_vec);
        let osp = match &self.osp {
            Some(o) => Some(Osp12Data {
                big_e: idx(&o.big_e)?,
                e: idx(&o.e)?,
                h: idx(&o.h)?,
                f: idx(&o.f)?,
                big_f: idx(&o.big_f)?,
            }),
            None => None,
        };
        let simple_roots = self.simple_roots.iter().map(elem).collect::<Result<Vec<_>, _>>()?;
        Ok(AlgebraSpec {
            name: self.name.clone(),
            names,
            parity,
            bracket,
            form,
            h,
            dual_coxeter: rational(&self.dual_coxeter)?,
            osp,
            simple_roots,
        })
    }
}
