//! Closed-form central charges of principal W-algebras.

use serde::{Deserialize, Serialize};

use crate::liealg::{AlgebraSpec, GradingData};
use crate::scalar::Scalar;
use crate::vertex::sign;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CentralChargeForm {
    /// The Virasoro form, in terms of `m_α` squared and `sdim g_{1/2}`.
    NonSusy,
    /// The superconformal form, in terms of `m_α` and `sdim n_+`.
    Susy,
}

fn int(n: i64) -> Scalar {
    Scalar::from_int(n)
}

/// `(H|H)` for the grading element.
fn h_norm(g: &AlgebraSpec) -> Scalar {
    g.h.as_ref().map(|h| g.form(h, h)).unwrap_or_else(Scalar::zero)
}

pub fn central_charge(g: &AlgebraSpec, gr: &GradingData, level: &Scalar, form: CentralChargeForm) -> Scalar {
    let all: Vec<usize> = (0..g.dim()).collect();
    let plus = gr.n_plus();
    let kh = level + &g.dual_coxeter;
    let first = &(level * &int(g.sdim(&all))) / &kh;
    let hh = h_norm(g);
    match form {
        CentralChargeForm::NonSusy => {
            let mut sum = Scalar::zero();
            for &a in &plus {
                let m = gr.m(a);
                let t = &(&(&int(12) * &(&m * &m)) - &(&int(12) * &m)) + &int(2);
                sum = &sum + &(&sign(g.parity[a] as u32) * &t);
            }
            let half = &Scalar::frac(1, 2) * &int(g.sdim(&gr.g_half()));
            &(&(&first - &(&(&int(3) * level) * &hh)) - &sum) - &half
        }
        CentralChargeForm::Susy => {
            let mut sum = Scalar::zero();
            for &a in &plus {
                sum = &sum + &(&sign(g.parity[a] as u32) * &gr.m(a));
            }
            let mut c = &first + &(&Scalar::frac(1, 2) * &int(g.sdim(&all)));
            c = &c + &(&int(12) * &sum);
            c = &c - &(&int(3) * &int(g.sdim(&plus)));
            &c - &(&(&int(3) * &kh) * &hh)
        }
    }
}

/// The two identities relating the forms: `sdim g = 2 sdim n_+ - sdim g_{1/2}` and
/// `h∨ (H|H) = 4 Σ (-1)^{p(α)} m_α²`, as `(lhs, rhs)` pairs.
pub fn central_charge_identities(g: &AlgebraSpec, gr: &GradingData) -> [(Scalar, Scalar); 2] {
    let all: Vec<usize> = (0..g.dim()).collect();
    let plus = gr.n_plus();
    let sdim = int(g.sdim(&all));
    let rhs = int(2 * g.sdim(&plus) - g.sdim(&gr.g_half()));
    let mut sum = Scalar::zero();
    for &a in &plus {
        let m = gr.m(a);
        sum = &sum + &(&sign(g.parity[a] as u32) * &(&m * &m));
    }
    [(sdim, rhs), (&g.dual_coxeter * &h_norm(g), &int(4) * &sum)]
}
