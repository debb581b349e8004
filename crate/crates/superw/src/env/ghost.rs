//! Casimir elements of `U(osp(1|2))` and the relation `T² = 4C + ¼` in the ghost center.

use serde::Serialize;

use super::{EnvAlgebra, EnvElement, EnvError};
use crate::liealg::AlgebraSpec;
use crate::scalar::Scalar;

/// `Q`, `C` and `T = 4Q - 4C + ½` in `U(osp(1|2))`.
pub struct GhostCenterData {
    pub env: EnvAlgebra,
    pub q: EnvElement,
    pub c: EnvElement,
    pub t: EnvElement,
}

impl GhostCenterData {
    /// Expects the basis `E, e, H, f, F`.
    pub fn new(g: &AlgebraSpec) -> Result<GhostCenterData, EnvError> {
        let env = EnvAlgebra::from_spec(g);
        let q = env.parse("1/2*H H + E F + F E")?;
        let c = q.add(&env.parse("1/2*e f - 1/2*f e")?);
        let t = q.sub(&c).scale(&Scalar::from_int(4)).add(&EnvElement::constant(Scalar::frac(1, 2)));
        Ok(GhostCenterData { env, q, c, t })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GhostCenterReport {
    pub q: String,
    pub c: String,
    pub t: String,
    /// Generators that fail to commute with `C`.
    pub c_not_central: Vec<String>,
    /// Even generators that fail to commute with `Q`.
    pub q_not_even_central: Vec<String>,
    /// `T² - 4C - ¼`.
    pub t_square_residual: String,
    /// Odd generators `y` with `T y ≠ -y T`.
    pub t_not_anticommuting: Vec<String>,
    /// `λ²` with `2 λ² T² = 8C + ½`, if one exists.
    pub lambda_squared: String,
    /// The constant `s` making `4Q - 4C + s` anticommute with the odd generators.
    pub anticentral_shift: String,
    /// `(a, b)` with `(4Q - 4C + s)² = aC + b`.
    pub anticentral_square: (String, String),
    pub pass: bool,
}

/// Writes `x = aC + b` when possible.
fn in_terms_of_c(x: &EnvElement, c: &EnvElement) -> Option<(Scalar, Scalar)> {
    let b = x.constant_term();
    let rest = x.sub(&EnvElement::constant(b.clone()));
    let cc = c.sub(&EnvElement::constant(c.constant_term()));
    let (w, v) = cc.terms().next()?;
    let a = &rest.coeff(w) * &v.inv();
    let b = &b - &(&a * &c.constant_term());
    (x == &c.scale(&a).add(&EnvElement::constant(b.clone()))).then_some((a, b))
}

pub fn ghost_center_check(g: &AlgebraSpec) -> Result<GhostCenterReport, EnvError> {
    let d = GhostCenterData::new(g)?;
    let env = &d.env;
    let mut c_not_central = Vec::new();
    let mut q_not_even_central = Vec::new();
    let mut t_not_anticommuting = Vec::new();
    for i in 0..env.ngens() {
        let x = env.gen(i);
        if !env.commutator(&d.c, &x).is_zero() {
            c_not_central.push(env.names[i].clone());
        }
        if env.parity[i] == 0 && !env.commutator(&d.q, &x).is_zero() {
            q_not_even_central.push(env.names[i].clone());
        }
        if env.parity[i] == 1 && !env.mul(&d.t, &x).add(&env.mul(&x, &d.t)).is_zero() {
            t_not_anticommuting.push(env.names[i].clone());
        }
    }
    let t2 = env.mul(&d.t, &d.t);
    let residual = t2.sub(&d.c.scale(&Scalar::from_int(4))).sub(&EnvElement::constant(Scalar::frac(1, 4)));
    // 2 λ² T² = 8C + ½ with T² = 4C + ¼
    let target = d.c.scale(&Scalar::from_int(8)).add(&EnvElement::constant(Scalar::frac(1, 2)));
    let two_t2 = t2.scale(&Scalar::from_int(2));
    let lambda_squared = if two_t2.is_zero() {
        None
    } else {
        let (w, c) = two_t2.terms().next().map(|(w, c)| (w.clone(), c.clone())).unwrap();
        let l2 = &target.coeff(&w) * &c.inv();
        (two_t2.scale(&l2) == target).then_some(l2)
    };
    let base = d.q.sub(&d.c).scale(&Scalar::from_int(4));
    let e0 = (0..env.ngens()).find(|&i| env.parity[i] == 1).ok_or_else(|| EnvError::Other("no odd generator".into()))?;
    let y = env.gen(e0);
    let r = env.mul(&base, &y).add(&env.mul(&y, &base));
    let shift = &-&r.coeff(&[e0]) * &Scalar::frac(1, 2);
    let anti = base.add(&EnvElement::constant(shift.clone()));
    let anticentral_square = in_terms_of_c(&env.mul(&anti, &anti), &d.c)
        .map(|(a, b)| (a.factor_text(), b.factor_text()))
        .unwrap_or_else(|| ("none".into(), "none".into()));
    let pass = c_not_central.is_empty() && q_not_even_central.is_empty() && residual.is_zero() && lambda_squared.as_ref().is_some_and(|l| l.is_one());
    Ok(GhostCenterReport {
        q: env.text(&d.q),
        c: env.text(&d.c),
        t: env.text(&d.t),
        c_not_central,
        q_not_even_central,
        t_square_residual: env.text(&residual),
        t_not_anticommuting,
        lambda_squared: lambda_squared.map(|l| l.factor_text()).unwrap_or_else(|| "none".into()),
        anticentral_shift: shift.factor_text(),
        anticentral_square,
        pass,
    })
}
