//! Finite-dimensional Lie superalgebras: structure constants, invariant forms,
//! gradings by `ad(H/2)`, dual bases, and the principal `osp(1|2)` data.

mod builtin;
mod file;

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::linalg::{axpy, ColMatrix, SparseVec};
use crate::scalar::Scalar;

pub use builtin::{abelian, builtin, osp12, osp12_x, sl21, OSP12_JSON, SL21_JSON};
pub use file::{load_spec, parse_spec, SpecFile};

/// Element of the algebra as coordinates in the spec's basis.
pub type Elem = SparseVec;

#[derive(Debug, Error)]
pub enum LieError {
    #[error("basis index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("unknown basis element `{0}`")]
    UnknownName(String),
    #[error("ad(H/2) is not diagonal on basis element `{0}`")]
    NotDiagonal(String),
    #[error("no element designated as H")]
    NoH,
    #[error("degenerate pairing between n+ and n-")]
    DegeneratePairing,
    #[error("spec file: {0}")]
    File(String),
}

/// Indices of the principal `osp(1|2)` triple inside the algebra.
#[derive(Clone, Debug, Serialize)]
pub struct Osp12Data {
    pub big_e: usize,
    pub e: usize,
    pub h: usize,
    pub f: usize,
    pub big_f: usize,
}

#[derive(Clone, Debug)]
pub struct AlgebraSpec {
    pub name: String,
    pub names: Vec<String>,
    pub parity: Vec<u8>,
    /// `bracket[i][j]` = coordinates of `[u_i, u_j]`.
    pub bracket: Vec<Vec<Elem>>,
    pub form: Vec<Vec<Scalar>>,
    /// The element `H` of the principal grading.
    pub h: Option<Elem>,
    pub dual_coxeter: Scalar,
    pub osp: Option<Osp12Data>,
    /// Simple root vectors `e_alpha` normalized so that `f = sum e^alpha`.
    pub simple_roots: Vec<Elem>,
}

/// Weights `j` of the basis under `ad(H/2)`.
#[derive(Clone, Debug, Serialize)]
pub struct GradingData {
    /// Doubled weight `2j` per basis index.
    pub two_j: Vec<i64>,
}

impl GradingData {
    pub fn j(&self, i: usize) -> Scalar {
        Scalar::frac(self.two_j[i], 2)
    }

    /// `m_alpha` with `[H, u_alpha] = 2 m_alpha u_alpha`.
    pub fn m(&self, i: usize) -> Scalar {
        self.j(i)
    }

    pub fn indices_with(&self, pred: impl Fn(i64) -> bool) -> Vec<usize> {
        (0..self.two_j.len()).filter(|&i| pred(self.two_j[i])).collect()
    }

    pub fn n_plus(&self) -> Vec<usize> {
        self.indices_with(|t| t > 0)
    }

    pub fn n_minus(&self) -> Vec<usize> {
        self.indices_with(|t| t < 0)
    }

    pub fn g0(&self) -> Vec<usize> {
        self.indices_with(|t| t == 0)
    }

    pub fn g_half(&self) -> Vec<usize> {
        self.indices_with(|t| t == 1)
    }

    pub fn g_le0(&self) -> Vec<usize> {
        self.indices_with(|t| t <= 0)
    }
}

/// Dual bases `(u^alpha | u_beta) = delta` for `n+`, and for the whole algebra.
#[derive(Clone, Debug)]
pub struct DualBases {
    /// Indices `alpha` of `n+`.
    pub plus: Vec<usize>,
    /// `upper[alpha]` = `u^alpha` in `n-` with `(u^alpha | u_beta) = delta`.
    pub upper: BTreeMap<usize, Elem>,
    /// `full[i]` = `v^i` with `(v^i | u_j) = delta_ij` over the whole algebra.
    pub full: Vec<Elem>,
}

/// One line of a structural check.
#[derive(Clone, Debug, Serialize)]
pub struct CheckEntry {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize, Default)]
pub struct CheckReport {
    pub entries: Vec<CheckEntry>,
}

impl CheckReport {
    pub fn push(&mut self, name: &str, pass: bool, detail: impl Into<String>) {
        self.entries.push(CheckEntry { name: name.to_string(), pass, detail: detail.into() });
    }

    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }

    pub fn get(&self, name: &str) -> Option<&CheckEntry> {
        self.entries.iter().find(|e| e.name == name)
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            writeln!(f, "[{}] {} {}", if e.pass { "pass" } else { "FAIL" }, e.name, e.detail)?;
        }
        Ok(())
    }
}

pub fn basis_vec(i: usize) -> Elem {
    let mut v = Elem::new();
    v.insert(i, Scalar::one());
    v
}

pub fn scale(v: &Elem, a: &Scalar) -> Elem {
    let mut out = Elem::new();
    axpy(&mut out, a, v);
    out
}

pub fn add(a: &Elem, b: &Elem) -> Elem {
    let mut out = a.clone();
    axpy(&mut out, &Scalar::one(), b);
    out
}

pub fn sub(a: &Elem, b: &Elem) -> Elem {
    let mut out = a.clone();
    axpy(&mut out, &Scalar::from_int(-1), b);
    out
}

/// Coordinates of `v` in the span of `vecs`, if it lies there.
pub fn express_in(v: &Elem, vecs: &[Elem]) -> Option<Vec<Scalar>> {
    let nrows = vecs.iter().chain(std::iter::once(v)).flat_map(|x| x.keys().copied()).max().map_or(0, |m| m + 1);
    let sol = crate::linalg::solve(&ColMatrix::new(nrows, vecs.to_vec()), v)?;
    Some((0..vecs.len()).map(|i| sol.get(&i).cloned().unwrap_or_else(Scalar::zero)).collect())
}

fn sign(e: u8) -> Scalar {
    if e.is_multiple_of(2) {
        Scalar::one()
    } else {
        Scalar::from_int(-1)
    }
}

impl AlgebraSpec {
    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn index(&self, name: &str) -> Result<usize, LieError> {
        self.names.iter().position(|n| n == name).ok_or_else(|| LieError::UnknownName(name.to_string()))
    }

    /// Index lookup that panics on unknown names (for built-in data).
    pub fn idx(&self, name: &str) -> usize {
        self.index(name).unwrap()
    }

    pub fn e(&self, name: &str) -> Elem {
        basis_vec(self.idx(name))
    }

    /// Parity of a homogeneous element (0 for zero).
    pub fn elem_parity(&self, v: &Elem) -> u8 {
        v.keys().next().map(|&i| self.parity[i]).unwrap_or(0)
    }

    pub fn sdim(&self, idx: &[usize]) -> i64 {
        idx.iter().map(|&i| if self.parity[i] == 0 { 1 } else { -1 }).sum()
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> Result<&Elem, LieError> {
        if i >= self.dim() {
            return Err(LieError::IndexOutOfRange(i));
        }
        if j >= self.dim() {
            return Err(LieError::IndexOutOfRange(j));
        }
        Ok(&self.bracket[i][j])
    }

    /// Bilinear extension of the structure constants.
    pub fn bracket(&self, a: &Elem, b: &Elem) -> Elem {
        let mut out = Elem::new();
        for (i, x) in a {
            for (j, y) in b {
                let c = &self.bracket[*i][*j];
                if !c.is_empty() {
                    axpy(&mut out, &(x * y), c);
                }
            }
        }
        out
    }

    pub fn try_bracket(&self, a: &Elem, b: &Elem) -> Result<Elem, LieError> {
        for i in a.keys().chain(b.keys()) {
            if *i >= self.dim() {
                return Err(LieError::IndexOutOfRange(*i));
            }
        }
        Ok(self.bracket(a, b))
    }

    pub fn form(&self, a: &Elem, b: &Elem) -> Scalar {
        let mut acc = Scalar::zero();
        for (i, x) in a {
            for (j, y) in b {
                let f = &self.form[*i][*j];
                if !f.is_zero() {
                    acc = &acc + &(&(x * y) * f);
                }
            }
        }
        acc
    }

    pub fn ad(&self, v: &Elem) -> ColMatrix {
        let cols = (0..self.dim()).map(|j| self.bracket(v, &basis_vec(j))).collect();
        ColMatrix::new(self.dim(), cols)
    }

    /// Supertrace of `ad a o ad b`.
    pub fn killing(&self, a: &Elem, b: &Elem) -> Scalar {
        let mut acc = Scalar::zero();
        for i in 0..self.dim() {
            let img = self.bracket(a, &self.bracket(b, &basis_vec(i)));
            if let Some(c) = img.get(&i) {
                acc = &acc + &(&sign(self.parity[i]) * c);
            }
        }
        acc
    }

    /// Killing form restricted to the subalgebra spanned by `idx` (assumed closed).
    pub fn killing_on(&self, a: &Elem, b: &Elem, idx: &[usize]) -> Scalar {
        let mut acc = Scalar::zero();
        for &i in idx {
            let img = self.bracket(a, &self.bracket(b, &basis_vec(i)));
            if let Some(c) = img.get(&i) {
                acc = &acc + &(&sign(self.parity[i]) * c);
            }
        }
        acc
    }

    pub fn grade_decompose(&self) -> Result<GradingData, LieError> {
        let hv = self.h.clone().ok_or(LieError::NoH)?;
        let mut two_j = Vec::with_capacity(self.dim());
        for i in 0..self.dim() {
            let img = self.bracket(&hv, &basis_vec(i));
            let diag = img.keys().all(|&k| k == i);
            if !diag {
                return Err(LieError::NotDiagonal(self.names[i].clone()));
            }
            let c = img.get(&i).cloned().unwrap_or_else(Scalar::zero);
            let g = c.as_constant().filter(|g| g.is_real() && g.re.is_integer());
            match g {
                Some(g) => {
                    let n: i64 = g.re.to_integer().try_into().unwrap();
                    two_j.push(n);
                }
                None => return Err(LieError::NotDiagonal(self.names[i].clone())),
            }
        }
        Ok(GradingData { two_j })
    }

    /// Basis of `ker ad v`.
    pub fn centralizer(&self, v: &Elem) -> Vec<Elem> {
        self.ad(v).kernel()
    }

    pub fn dual_bases(&self, g: &GradingData) -> Result<DualBases, LieError> {
        let plus = g.n_plus();
        let minus = g.n_minus();
        let mut upper = BTreeMap::new();
        // Solve (sum_m c_m u_m | u_beta) = delta_{alpha beta}.
        let cols: Vec<SparseVec> = minus
            .iter()
            .map(|&m| {
                plus.iter()
                    .enumerate()
                    .filter_map(|(r, &b)| {
                        let v = self.form[m][b].clone();
                        (!v.is_zero()).then_some((r, v))
                    })
                    .collect()
            })
            .collect();
        let mat = ColMatrix::new(plus.len(), cols);
        for (r, &a) in plus.iter().enumerate() {
            let target: SparseVec = [(r, Scalar::one())].into_iter().collect();
            let x = crate::linalg::solve(&mat, &target).ok_or(LieError::DegeneratePairing)?;
            let elem: Elem = x.into_iter().map(|(c, v)| (minus[c], v)).collect();
            upper.insert(a, elem);
        }
        let n = self.dim();
        let cols: Vec<SparseVec> = (0..n)
            .map(|m| (0..n).filter(|&b| !self.form[m][b].is_zero()).map(|b| (b, self.form[m][b].clone())).collect())
            .collect();
        let mat = ColMatrix::new(n, cols);
        let mut full = Vec::with_capacity(n);
        for i in 0..n {
            let target: SparseVec = [(i, Scalar::one())].into_iter().collect();
            let x = crate::linalg::solve(&mat, &target).ok_or(LieError::DegeneratePairing)?;
            full.push(x);
        }
        Ok(DualBases { plus, upper, full })
    }

    /// Exhaustive structural validation.
    pub fn check_algebra(&self) -> CheckReport {
        let n = self.dim();
        let mut rep = CheckReport::default();
        let mut bad = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let lhs = &self.bracket[j][i];
                let rhs = scale(&self.bracket[i][j], &-sign(self.parity[i] * self.parity[j]));
                if *lhs != rhs {
                    bad.push(format!("({},{})", self.names[i], self.names[j]));
                }
            }
        }
        rep.push("skew-symmetry", bad.is_empty(), bad.join(" "));
        let mut bad = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let (a, b, c) = (basis_vec(i), basis_vec(j), basis_vec(k));
                    let lhs = self.bracket(&a, &self.bracket(&b, &c));
                    let t1 = self.bracket(&self.bracket(&a, &b), &c);
                    let t2 = scale(&self.bracket(&b, &self.bracket(&a, &c)), &sign(self.parity[i] * self.parity[j]));
                    if lhs != add(&t1, &t2) {
                        bad.push(format!("({},{},{})", self.names[i], self.names[j], self.names[k]));
                    }
                }
            }
        }
        let shown: Vec<String> = bad.iter().take(6).cloned().collect();
        rep.push("jacobi", bad.is_empty(), shown.join(" "));
        let mut bad = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let v = &self.form[i][j];
                if self.parity[i] != self.parity[j] && !v.is_zero() {
                    bad.push(format!("odd pairing ({},{})", self.names[i], self.names[j]));
                }
                if *v != &sign(self.parity[i] * self.parity[j]) * &self.form[j][i] {
                    bad.push(format!("({},{})", self.names[i], self.names[j]));
                }
            }
        }
        rep.push("form-supersymmetry", bad.is_empty(), bad.join(" "));
        let mut bad = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let (a, b, c) = (basis_vec(i), basis_vec(j), basis_vec(k));
                    let l = self.form(&self.bracket(&a, &b), &c);
                    let r = self.form(&a, &self.bracket(&b, &c));
                    if l != r {
                        bad.push(format!(
                            "(([{},{}])|{}) = {} vs ({}|[{},{}]) = {}",
                            self.names[i], self.names[j], self.names[k], l, self.names[i], self.names[j], self.names[k], r
                        ));
                    }
                }
            }
        }
        let shown: Vec<String> = bad.iter().take(4).cloned().collect();
        rep.push("form-invariance", bad.is_empty(), shown.join("; "));
        let ndeg = ColMatrix::new(
            n,
            (0..n).map(|j| (0..n).filter(|&i| !self.form[i][j].is_zero()).map(|i| (i, self.form[i][j].clone())).collect()).collect(),
        )
        .rank()
            == n;
        rep.push("form-nondegenerate", ndeg, "");
        match self.grade_decompose() {
            Ok(g) => {
                let mut bad = Vec::new();
                for i in 0..n {
                    for j in 0..n {
                        for k in self.bracket[i][j].keys() {
                            if g.two_j[*k] != g.two_j[i] + g.two_j[j] {
                                bad.push(format!("[{},{}]", self.names[i], self.names[j]));
                            }
                        }
                    }
                }
                rep.push("grading-compatibility", bad.is_empty(), bad.join(" "));
            }
            Err(e) => rep.push("grading-compatibility", self.h.is_none(), e.to_string()),
        }
        let two_h = &Scalar::from_int(2) * &self.dual_coxeter;
        let mut bad = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let (a, b) = (basis_vec(i), basis_vec(j));
                let kf = self.killing(&a, &b);
                if kf != &two_h * &self.form[i][j] {
                    bad.push(format!("({},{}) str={} form={}", self.names[i], self.names[j], kf, self.form[i][j]));
                }
            }
        }
        let shown: Vec<String> = bad.iter().take(3).cloned().collect();
        rep.push("killing=2h(.|.)", bad.is_empty(), shown.join("; "));
        rep
    }

    /// Checks of the principal `osp(1|2)` embedding.
    pub fn check_osp(&self) -> CheckReport {
        let mut rep = CheckReport::default();
        let Some(o) = &self.osp else {
            rep.push("osp-data", false, "missing");
            return rep;
        };
        let (ee, e, f, ff) = (basis_vec(o.big_e), basis_vec(o.e), basis_vec(o.f), basis_vec(o.big_f));
        let h = self.h.clone().unwrap_or_default();
        let two = Scalar::from_int(2);
        let x = scale(&h, &Scalar::frac(1, 2));
        rep.push("sl2: [E,F]=H", self.bracket(&ee, &ff) == h, "");
        rep.push("sl2: [H,E]=2E", self.bracket(&h, &ee) == scale(&ee, &two), "");
        rep.push("sl2: [H,F]=-2F", self.bracket(&h, &ff) == scale(&ff, &-two.clone()), "");
        rep.push("F=-1/2[f,f]", scale(&self.bracket(&f, &f), &Scalar::frac(-1, 2)) == ff, "");
        rep.push("[x,e]=e/2", self.bracket(&x, &e) == scale(&e, &Scalar::frac(1, 2)), "");
        rep.push("[x,f]=-f/2", self.bracket(&x, &f) == scale(&f, &Scalar::frac(-1, 2)), "");
        rep.push("[E,f]=e", self.bracket(&ee, &f) == e, "");
        rep.push("[F,e]=f", self.bracket(&ff, &e) == f, "");
        if let Ok(g) = self.grade_decompose() {
            if let Ok(duals) = self.simple_root_duals(&g) {
                let sum = duals.iter().fold(Elem::new(), |acc, d| add(&acc, d));
                let ok = self.simple_roots.is_empty() || sum == f;
                rep.push("f = sum of dual simple roots", ok, "");
                let all_half = self.simple_roots.iter().all(|r| r.keys().all(|&i| g.two_j[i] == 1));
                rep.push("simple roots in g_1/2", all_half, "");
            }
        }
        rep
    }

    /// Duals `e^alpha` in `g_{-1/2}` of the simple root vectors, `(e_alpha|e^beta) = delta`.
    pub fn simple_root_duals(&self, g: &GradingData) -> Result<Vec<Elem>, LieError> {
        let minus = g.indices_with(|t| t == -1);
        let roots = &self.simple_roots;
        let cols: Vec<SparseVec> = minus
            .iter()
            .map(|&m| {
                roots
                    .iter()
                    .enumerate()
                    .filter_map(|(r, ea)| {
                        let v = self.form(ea, &basis_vec(m));
                        (!v.is_zero()).then_some((r, v))
                    })
                    .collect()
            })
            .collect();
        let mat = ColMatrix::new(roots.len(), cols);
        let mut out = Vec::new();
        for r in 0..roots.len() {
            let target: SparseVec = [(r, Scalar::one())].into_iter().collect();
            let x = crate::linalg::solve(&mat, &target).ok_or(LieError::DegeneratePairing)?;
            out.push(x.into_iter().map(|(c, v)| (minus[c], v)).collect());
        }
        Ok(out)
    }

    /// Coroots `h_alpha = [f, e_alpha]` of the simple roots.
    pub fn coroots(&self) -> Vec<Elem> {
        let Some(o) = &self.osp else { return Vec::new() };
        self.simple_roots.iter().map(|ea| self.bracket(&basis_vec(o.f), ea)).collect()
    }

    /// `g^F = g^f + [e, g^f]` as subspaces (dimension and containment).
    pub fn check_gf_decomposition(&self) -> CheckReport {
        let mut rep = CheckReport::default();
        let Some(o) = &self.osp else {
            rep.push("g^F decomposition", false, "no osp data");
            return rep;
        };
        let gf = self.centralizer(&basis_vec(o.f));
        let g_big_f = self.centralizer(&basis_vec(o.big_f));
        let mut span: Vec<Elem> = gf.clone();
        for v in &gf {
            span.push(self.bracket(&basis_vec(o.e), v));
        }
        let rank_span = ColMatrix::new(self.dim(), span.clone()).rank();
        let mut both = span;
        both.extend(g_big_f.iter().cloned());
        let rank_both = ColMatrix::new(self.dim(), both).rank();
        rep.push(
            "g^F = g^f + [e,g^f]",
            rank_span == g_big_f.len() && rank_both == g_big_f.len(),
            format!("dim g^f = {}, dim g^F = {}", gf.len(), g_big_f.len()),
        );
        rep
    }

    /// Number of independent elements of a Cartan-type subalgebra: the dimension of `g^f`.
    pub fn rank_from_gf(&self) -> Option<usize> {
        self.osp.as_ref().map(|o| self.centralizer(&basis_vec(o.f)).len())
    }

    pub fn elem_text(&self, v: &Elem) -> String {
        if v.is_empty() {
            return "0".to_string();
        }
        let parts: Vec<String> = v
            .iter()
            .map(|(i, c)| if c.is_one() { self.names[*i].clone() } else { format!("{}*{}", c.factor_text(), self.names[*i]) })
            .collect();
        parts.join(" + ")
    }

    /// Copy with basis vector `idx` replaced by `factor * u_idx` under a new name.
    pub fn rescale_basis(&self, idx: usize, factor: &Scalar, new_name: &str) -> AlgebraSpec {
        let n = self.dim();
        let inv = factor.inv();
        // New basis w_idx = factor*u_idx; coordinates: u_idx = inv*w_idx.
        let fix_coords = |v: &Elem| -> Elem {
            v.iter().map(|(k, c)| if *k == idx { (*k, c * &inv) } else { (*k, c.clone()) }).collect()
        };
        let mut out = self.clone();
        out.names[idx] = new_name.to_string();
        for i in 0..n {
            for j in 0..n {
                let mut c = self.bracket[i][j].clone();
                let mut s = Scalar::one();
                if i == idx {
                    s = &s * factor;
                }
                if j == idx {
                    s = &s * factor;
                }
                c = scale(&fix_coords(&c), &s);
                out.bracket[i][j] = c;
                out.form[i][j] = &self.form[i][j] * &s;
            }
        }
        out.simple_roots = self.simple_roots.iter().map(fix_coords).collect();
        out.h = self.h.as_ref().map(fix_coords);
        out
    }

    /// Deliberately damaged copy used as a negative control.
    pub fn corrupted(&self, axiom: &str) -> Option<AlgebraSpec> {
        let mut out = self.clone();
        match axiom {
            "jacobi" => {
                // scale one bracket pair consistently so skew-symmetry still holds
                let o = self.osp.as_ref()?;
                let (i, j) = (o.big_e, o.f);
                out.bracket[i][j] = scale(&self.bracket[i][j], &Scalar::from_int(2));
                out.bracket[j][i] = scale(&self.bracket[j][i], &Scalar::from_int(2));
                out.name = format!("{}[corrupt jacobi]", self.name);
                Some(out)
            }
            "skew" => {
                let o = self.osp.as_ref()?;
                let (i, j) = (o.big_e, o.f);
                out.bracket[j][i] = Elem::new();
                Some(out)
            }
            "form" => {
                let o = self.osp.as_ref()?;
                out.form[o.e][o.f] = -&self.form[o.e][o.f];
                out.form[o.f][o.e] = -&self.form[o.f][o.e];
                Some(out)
            }
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests;
