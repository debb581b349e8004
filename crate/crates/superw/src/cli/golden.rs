//! Printed displays for `osp(1|2)` and `sl(2|1)` and their comparison with the engine.

use std::sync::Arc;

use super::Check;
use crate::brst::{Complex, ComplexSpec, Flavor, OspNormalized, Reduced, TauMap};
use crate::linalg::{solve, ColMatrix};
use crate::liealg::AlgebraSpec;
use crate::scalar::{parse_scalar, Poly, Scalar};
use crate::vertex::{LambdaPoly, MonoIndex, VertexPoly};

pub(crate) fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

pub const OSP_OMEGA_FB: &str =
    "J[Fb] - (2*k+3)/4*DJ[fb] - 1/2*:J[Hb] J[fb]: + (2*k+3)/8*:J[Hb] DJ[Hb]: + (k+1)*(2*k+3)/4*d(J[Hb])";
pub const OSP_MIURA_OMEGA: &str = "(2*k+3)/8*:J[Hb] DJ[Hb]: + (k+1)*(2*k+3)/4*d(J[Hb])";
pub const OSP_MIURA_D_OMEGA: &str =
    "(2*k+3)/8*:DJ[Hb] DJ[Hb]: - (2*k+3)/8*:J[Hb] d(J[Hb]): + (k+1)*(2*k+3)/4*d(DJ[Hb])";
/// `μ^k(J^{f_α})` and `μ^k(J^{f_2α})` in the unit-fermion normalization, with their leading monomials.
pub const OSP_NONSUSY: [(i64, &str, &str); 2] = [
    (3, ":J[H] Phi:", "1/2*:Phi J[H]: + (k+1)*d(Phi)"),
    (4, ":J[H] J[H]:", "-1/4*:J[H] J[H]: - (k+1)/2*d(J[H]) + (2*k+3)/4*:Phi d(Phi):"),
];
pub const OSP_ISO_SCALARS: [&str; 2] = ["(2*k+3)/4*s", "-(2*k+3)/2"];

pub const SL21_W1: &str = "J[ftb] - (k+1)*DJ[Ub] + 1/2*:J[Ub] J[Hb]:";
pub const SL21_W2: &str = "J[Fb] - (k+1)/2*DJ[fb] - 1/2*:J[fb] J[Hb]: + 1/2*:J[ftb] J[Ub]: + (k+1)/4*:DJ[Hb] J[Hb]: - (k+1)/4*:DJ[Ub] J[Ub]: + (k+1)^2/2*d(J[Hb])";

fn complex(g: &AlgebraSpec, fl: Flavor) -> Result<Complex, String> {
    Complex::new(ComplexSpec::new(g, fl).map_err(err)?).map_err(err)
}

/// Cohomology generator, Miura images and the isomorphism scalars for `osp(1|2)`.
pub fn osp_golden(g: &AlgebraSpec) -> Result<Vec<Check>, String> {
    let mut out = Vec::new();
    let sx = complex(g, Flavor::Susy)?;
    let sr = Reduced::new(&sx).map_err(err)?;
    let gens = sr.cohomology_generators(3).map_err(err)?;
    let want = sr.alg().parse(OSP_OMEGA_FB, None).map_err(err)?;
    let omega = match gens.as_slice() {
        [w] => {
            out.push(Check::new("omega(Fb) at weight 3/2", *w == want, sr.alg().text(w)));
            w.clone()
        }
        _ => {
            out.push(Check::new("omega(Fb) at weight 3/2", false, format!("{} generators", gens.len())));
            return Ok(out);
        }
    };
    out.push(Check::new("omega(Fb) is d0-closed in C", sx.apply_d0(&sr.emb.embed(&sx.alg, &omega)).is_zero(), ""));
    let st = sr.miura_target(&sx).map_err(err)?;
    let t = &st.sub;
    let m1 = sr.miura(&st, &omega);
    let m2 = sr.miura(&st, &sr.D(&omega));
    out.push(Check::new("Miura image of omega(Fb)", m1 == t.parse(OSP_MIURA_OMEGA, None).map_err(err)?, t.text(&m1)));
    out.push(Check::new("Miura image of D omega(Fb)", m2 == t.parse(OSP_MIURA_D_OMEGA, None).map_err(err)?, t.text(&m2)));

    let nx = complex(g, Flavor::NonSusy)?;
    let nr = Reduced::new(&nx).map_err(err)?;
    let nt = nr.miura_target(&nx).map_err(err)?;
    let norm = OspNormalized::new(&nt.sub).map_err(err)?;
    let n = &norm.alg;
    let mut imgs = Vec::new();
    for (tw, lead, display) in OSP_NONSUSY {
        let v = nr.cohomology_generators(tw).map_err(err)?;
        let name = format!("nonsusy Miura image at weight {}/2", tw);
        if v.len() != 1 {
            out.push(Check::new(name, false, format!("{} generators", v.len())));
            return Ok(out);
        }
        let x = norm.convert(&nr.miura(&nt, &v[0]));
        let want = n.parse(display, None).map_err(err)?;
        let m = n.parse(lead, None).map_err(err)?;
        let mono = m.leading().ok_or("empty leading term")?.0.clone();
        if x.coeff(&mono).is_zero() {
            out.push(Check::new(name, false, n.text(&x)));
            return Ok(out);
        }
        let x = x.scale(&(&want.coeff(&mono) / &x.coeff(&mono)));
        out.push(Check::new(name, x == want, n.text(&x)));
        imgs.push(want);
    }
    for ((img, susy), c) in imgs.iter().zip([&m1, &m2]).zip(OSP_ISO_SCALARS) {
        let tau = norm.tau(t, img).map_err(err)?;
        let (mono, tc) = tau.leading().ok_or("tau image vanishes")?;
        let ratio = &susy.coeff(mono) / tc;
        let want = parse_scalar(c, Some(&norm.root)).map_err(err)?;
        out.push(Check::new(
            format!("isomorphism scalar {}", c),
            tau.scale(&ratio) == *susy && ratio == want,
            ratio.factor_text(),
        ));
    }
    Ok(out)
}

/// SUSY Miura images and the `N = 2` table for `sl(2|1)`.
pub fn sl21_golden(g: &AlgebraSpec) -> Result<Vec<Check>, String> {
    let mut out = Vec::new();
    let sx = complex(g, Flavor::Susy)?;
    let sr = Reduced::new(&sx).map_err(err)?;
    let st = sr.miura_target(&sx).map_err(err)?;
    let t = &st.sub;
    let w1 = sr.alg().parse(SL21_W1, None).map_err(err)?;
    let w2 = sr.alg().parse(SL21_W2, None).map_err(err)?;
    out.push(Check::new("omega(ftb) is d0-closed", sr.apply_d0(&w1).is_zero(), ""));
    out.push(Check::new("omega(Fb) is d0-closed", sr.apply_d0(&w2).is_zero(), ""));
    let c2 = sr.cohomology_generators(2).map_err(err)?;
    out.push(Check::new("weight 1 cohomology is spanned by omega(ftb)", c2 == vec![w1.clone()], ""));
    let c3 = sr.cohomology_generators(3).map_err(err)?;
    out.push(Check::new("omega(Fb) is the second weight 3/2 generator", c3.get(1) == Some(&w2), ""));

    let q = Arc::new(Poly::linear(1, 1));
    let s = Scalar::root(&q);
    let k1 = &Scalar::k() + &Scalar::one();
    let half = Scalar::frac(1, 2);
    let (jh, ju) = (t.try_g("J[Hb]").map_err(err)?, t.try_g("J[Ub]").map_err(err)?);
    let (djh, dju) = (t.try_g("DJ[Hb]").map_err(err)?, t.try_g("DJ[Ub]").map_err(err)?);
    let p1 = jh.sub(&ju).scale(&(&half * &s.inv()));
    let p2 = jh.add(&ju).scale(&(&half * &s.inv())).neg();
    let j1 = djh.sub(&dju).scale(&half);
    let j2 = djh.add(&dju).scale(&half);
    let d = |x: &VertexPoly| t.deriv(x);
    let no = |a: &VertexPoly, b: &VertexPoly| t.no(a, b);
    let s3 = &s * &k1;
    let k12 = &k1 * &k1;
    let m_w1 = j1.sub(&j2).scale(&k1).add(&no(&p1, &p2).scale(&k1));
    let m_dw1 = d(&p1).add(&d(&p2)).scale(&s3).add(&no(&p1, &j2).scale(&s)).add(&no(&p2, &j1).scale(&s));
    let m_w2 = no(&p1, &j2)
        .sub(&no(&p2, &j1))
        .scale(&(&s3 * &half))
        .add(&d(&p1).sub(&d(&p2)).scale(&(&(&s3 * &k1) * &half)));
    let m_dw2 = no(&j1, &j2)
        .scale(&k1)
        .add(&no(&p1, &d(&p2)).add(&no(&p2, &d(&p1))).scale(&(&k12 * &half)))
        .add(&d(&j1).add(&d(&j2)).scale(&(&k12 * &half)));
    for (name, x, want) in [
        ("Miura image of omega(ftb)", &w1, &m_w1),
        ("Miura image of D omega(ftb)", &sr.D(&w1), &m_dw1),
        ("Miura image of omega(Fb)", &w2, &m_w2),
        ("Miura image of D omega(Fb)", &sr.D(&w2), &m_dw2),
    ] {
        let got = sr.miura(&st, x);
        out.push(Check::new(name, got == *want, t.text(&got)));
    }

    // J, G±, L from the printed table, checked against the N = 2 relations
    let jj = m_w1.scale(&k1.inv());
    let ll = m_dw2.scale(&k12.inv());
    let s5 = &s3 * &k1;
    let gp = m_dw1.scale(&(&k1 * &half)).sub(&m_w2).scale(&s5.inv());
    let gm = gp.scale(&k1).sub(&m_dw1.scale(&s.inv()));
    let c = &Scalar::from_int(-3) * &(&(&Scalar::from_int(2) * &Scalar::k()) + &Scalar::one());
    let lp = LambdaPoly::from_coeffs;
    let cst = VertexPoly::constant;
    let z = VertexPoly::zero();
    let table = [
        ("[J J]", t.lambda_bracket(&jj, &jj), lp(vec![z.clone(), cst(&c * &Scalar::frac(1, 3))])),
        ("[J G+]", t.lambda_bracket(&jj, &gp), lp(vec![gp.clone()])),
        ("[J G-]", t.lambda_bracket(&jj, &gm), lp(vec![gm.neg()])),
        ("[L G+]", t.lambda_bracket(&ll, &gp), lp(vec![d(&gp), gp.scale(&Scalar::frac(3, 2))])),
        ("[L G-]", t.lambda_bracket(&ll, &gm), lp(vec![d(&gm), gm.scale(&Scalar::frac(3, 2))])),
        (
            "[G+ G-]",
            t.lambda_bracket(&gp, &gm),
            lp(vec![ll.add(&d(&jj).scale(&half)), jj.clone(), cst(&c * &Scalar::frac(1, 6))]),
        ),
        ("[G+ G+]", t.lambda_bracket(&gp, &gp), LambdaPoly::zero()),
        (
            "[L L]",
            t.lambda_bracket(&ll, &ll),
            lp(vec![d(&ll), ll.scale(&Scalar::from_int(2)), z.clone(), cst(&c * &Scalar::frac(1, 12))]),
        ),
        ("[L J]", t.lambda_bracket(&ll, &jj), lp(vec![d(&jj), jj.clone()])),
    ];
    for (name, got, want) in table {
        out.push(Check::new(format!("N=2 relation {}", name), got == want, ""));
    }

    let nx = complex(g, Flavor::NonSusy)?;
    let nr = Reduced::new(&nx).map_err(err)?;
    let nt = nr.miura_target(&nx).map_err(err)?;
    let tau = TauMap::new(&nx, &nt.sub, t).map_err(err)?;
    for (tw, xs) in [(2, vec![("J", &jj)]), (3, vec![("G+", &gp), ("G-", &gm)]), (4, vec![("L", &ll)])] {
        let span: Vec<VertexPoly> = nr
            .cohomology_generators(tw)
            .map_err(err)?
            .iter()
            .map(|v| tau.apply(&nt.sub, t, &nr.miura(&nt, v)))
            .collect();
        for (name, x) in xs {
            let mut idx = MonoIndex::default();
            let cols: Vec<_> = span.iter().map(|v| idx.vector(v)).collect();
            let target = idx.vector(x);
            let inside = solve(&ColMatrix::new(idx.len(), cols), &target).is_some();
            out.push(Check::new(format!("{} lies in tau(mu(W^k(g, F)))", name), inside, ""));
        }
    }
    Ok(out)
}
