use super::builders::{affine, heisenberg, neutral};
use super::*;
use crate::liealg::{osp12, AlgebraSpec};
use proptest::prelude::*;

fn q(n: i64, d: i64) -> Scalar {
    Scalar::frac(n, d)
}

fn virasoro_residual(alg: &VertexAlgebra, l: &VertexPoly, c: &Scalar) -> LambdaPoly {
    // [L_λ L] - (∂L + 2λL + c/12 λ^3)
    let got = alg.lambda_bracket(l, l);
    let want = LambdaPoly::from_coeffs(vec![
        alg.deriv(l),
        l.scale(&Scalar::from_int(2)),
        VertexPoly::zero(),
        VertexPoly::constant(c * &q(1, 12)),
    ]);
    got.sub(&want)
}

#[test]
fn heisenberg_sugawara_is_virasoro() {
    let alg = heisenberg(&["a"], &[vec![Scalar::one()]]);
    let a = alg.g("a");
    let l = alg.no(&a, &a).scale(&q(1, 2));
    assert!(virasoro_residual(&alg, &l, &Scalar::one()).is_zero());
    assert_eq!(alg.hamiltonian_weight(&l), Weight::Homogeneous(4));
}

fn sl2() -> AlgebraSpec {
    // even part of osp(1|2)
    let g = osp12();
    let keep = [g.idx("E"), g.idx("H"), g.idx("F")];
    let n = keep.len();
    let mut bracket = vec![vec![Elem::new(); n]; n];
    let mut form = vec![vec![Scalar::zero(); n]; n];
    for (a, &i) in keep.iter().enumerate() {
        for (b, &j) in keep.iter().enumerate() {
            bracket[a][b] = g.bracket[i][j].iter().map(|(k, c)| (keep.iter().position(|x| x == k).unwrap(), c.clone())).collect();
            form[a][b] = g.form[i][j].clone();
        }
    }
    AlgebraSpec {
        name: "sl2".into(),
        names: vec!["E".into(), "H".into(), "F".into()],
        parity: vec![0; 3],
        bracket,
        form,
        h: None,
        dual_coxeter: Scalar::from_int(2),
        osp: None,
        simple_roots: vec![],
    }
}

use crate::liealg::Elem;

fn sugawara(g: &AlgebraSpec, alg: &VertexAlgebra) -> VertexPoly {
    let gr = crate::liealg::GradingData { two_j: vec![0; g.dim()] };
    let db = g.dual_bases(&gr).unwrap();
    let mut acc = VertexPoly::zero();
    for i in 0..g.dim() {
        // (u_i|u^i) = 1 with u_i on the left
        let upper = builders::elem_poly(&db.full[i], 0).scale(&sign(g.parity[i] as u32));
        acc = acc.add(&alg.no(&upper, &VertexPoly::factor(Factor::new(i, 0))));
    }
    let kh = &Scalar::k() + &g.dual_coxeter;
    acc.scale(&(&Scalar::from_int(2) * &kh).inv())
}

#[test]
fn sugawara_central_charges() {
    let g = sl2();
    let alg = affine(&g, &Scalar::k(), "J");
    let l = sugawara(&g, &alg);
    let c = &(&Scalar::from_int(3) * &Scalar::k()) / &(&Scalar::k() + &Scalar::from_int(2));
    assert!(virasoro_residual(&alg, &l, &c).is_zero());

    let g = osp12();
    let alg = affine(&g, &Scalar::k(), "J");
    let l = sugawara(&g, &alg);
    let c = &Scalar::k() / &(&Scalar::k() + &q(3, 2));
    let r = virasoro_residual(&alg, &l, &c);
    assert!(r.is_zero(), "{:?}", r.coeffs.iter().map(|x| alg.text(x)).collect::<Vec<_>>());
}

#[test]
fn affine_axioms_pass() {
    let alg = affine(&osp12(), &Scalar::k(), "J");
    let rep = alg.axiom_check(4);
    assert!(rep.pass(), "{:?}", rep.violations.first());
    assert!(rep.triples_checked > 125);
}

#[test]
fn corrupted_table_reports_jacobi() {
    let g = osp12().corrupted("jacobi").unwrap();
    let alg = affine(&g, &Scalar::k(), "J");
    let rep = alg.axiom_check(2);
    assert!(rep.jacobi_failures() > 0);
}

#[test]
fn odd_square_vanishes() {
    // [Phi_e λ Phi_e] = (F|[e,e]) = 2
    let alg = neutral(&[("Phi[e]", 1)], &[vec![Scalar::from_int(2)]]);
    let p = alg.g("Phi[e]");
    assert!(alg.no(&p, &p).is_zero());
    // the correction term -1/2 ∂(const) is what cancels; ∂ of a constant is zero
    assert!(alg.deriv(&VertexPoly::constant(Scalar::from_int(2))).is_zero());
    let dp = alg.deriv(&p);
    let x = alg.no(&dp, &p);
    let y = alg.no(&p, &dp);
    assert_eq!(x, y.neg());
    assert_eq!(alg.hamiltonian_weight(&dp), Weight::Homogeneous(3));
    assert_eq!(alg.hamiltonian_weight(&p.add(&dp)), Weight::Inhomogeneous);
}

#[test]
fn commuting_bosons_reorder() {
    let alg = heisenberg(&["a", "b"], &[vec![Scalar::zero(), Scalar::zero()], vec![Scalar::zero(), Scalar::zero()]]);
    let (a, b) = (alg.g("a"), alg.g("b"));
    assert_eq!(alg.no(&b, &a), alg.no(&a, &b));
    assert_eq!(alg.no(&VertexPoly::one(), &a), a);
    assert!(alg.lambda_bracket(&VertexPoly::one(), &a).is_zero());
}

#[test]
fn heisenberg_level_bracket() {
    let kh = &Scalar::k() + &q(3, 2);
    let alg = heisenberg(&["alpha"], &[vec![&kh * &q(1, 2)]]);
    let a = alg.g("alpha");
    let l = alg.lambda_bracket(&a, &a);
    assert_eq!(l.coeffs.len(), 2);
    assert_eq!(l.coeff(1), VertexPoly::constant(&kh * &q(1, 2)));
}

#[test]
fn text_roundtrip() {
    let alg = affine(&osp12(), &Scalar::k(), "J");
    let x = alg.parse("(k + 1)*:J[H] d(J[e]) J[f]: - 1/2*d2(J[F]) + 3", None).unwrap();
    let t = alg.text(&x);
    let y = alg.parse(&t, None).unwrap();
    assert_eq!(x, y);
    assert_eq!(alg.text(&y), t);
    assert!(alg.parse("J[Q]", None).is_err());
    assert!(alg.parse("1 +", None).is_err());
    assert_eq!(alg.text(&alg.parse("1", None).unwrap()), "1");
}

fn wick_rhs(alg: &VertexAlgebra, a: &VertexPoly, b: &VertexPoly, c: &VertexPoly) -> LambdaPoly {
    // [a_λ :bc:] = :[a_λ b] c: + p :b [a_λ c]: + ∫_0^λ [[a_λ b]_μ c] dμ
    let p = sign(alg.parity(a) * alg.parity(b));
    let ab = alg.lambda_bracket(a, b);
    let ac = alg.lambda_bracket(a, c);
    let n = ab.coeffs.len().max(ac.coeffs.len()) + 4;
    let mut out = vec![VertexPoly::zero(); n + 4];
    for (i, x) in ab.coeffs.iter().enumerate() {
        out[i] = out[i].add(&alg.no(x, c));
        // ∫_0^λ λ^i [x_μ c] dμ = Σ_j λ^{i+j+1}/(j+1) coeff_j
        let xc = alg.lambda_bracket(x, c);
        for (j, y) in xc.coeffs.iter().enumerate() {
            out[i + j + 1].axpy(&Scalar::frac(1, j as i64 + 1), y);
        }
    }
    for (i, x) in ac.coeffs.iter().enumerate() {
        out[i].axpy(&p, &alg.no(b, x));
    }
    LambdaPoly::from_coeffs(out)
}

#[test]
fn noncommutative_wick_formula() {
    let alg = affine(&osp12(), &Scalar::k(), "J");
    let names = ["J[E]", "J[e]", "J[H]", "J[f]", "J[F]"];
    for a in names {
        for b in names {
            for c in names {
                let (x, y, z) = (alg.g(a), alg.g(b), alg.g(c));
                let lhs = alg.lambda_bracket(&x, &alg.no(&y, &z));
                assert_eq!(lhs, wick_rhs(&alg, &x, &y, &z), "{} {} {}", a, b, c);
            }
        }
    }
}

fn osp_alg() -> VertexAlgebra {
    affine(&osp12(), &Scalar::k(), "J")
}

fn mono_strategy() -> impl Strategy<Value = Vec<(usize, u32)>> {
    prop::collection::vec((0usize..5, 0u32..2), 1..3)
}

fn build(alg: &VertexAlgebra, fs: &[(usize, u32)]) -> VertexPoly {
    let parts: Vec<VertexPoly> = fs.iter().map(|(g, d)| VertexPoly::factor(Factor::new(*g, *d))).collect();
    alg.no_many(&parts)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn skew_symmetry_random(a in mono_strategy(), b in mono_strategy()) {
        let alg = osp_alg();
        let (x, y) = (build(&alg, &a), build(&alg, &b));
        prop_assume!(alg.is_parity_homogeneous(&x) && alg.is_parity_homogeneous(&y));
        prop_assert!(alg.skew_residuals(&x, &y).is_empty());
    }

    #[test]
    fn jacobi_random(a in 0usize..5, b in 0usize..5, c in mono_strategy()) {
        let alg = osp_alg();
        let z = build(&alg, &c);
        let (x, y) = (VertexPoly::factor(Factor::new(a, 0)), VertexPoly::factor(Factor::new(b, 0)));
        prop_assert!(alg.jacobi_residuals(&x, &y, &z).is_empty());
    }

    #[test]
    fn sesquilinearity(a in mono_strategy(), b in mono_strategy()) {
        let alg = osp_alg();
        let (x, y) = (build(&alg, &a), build(&alg, &b));
        // [∂x_λ y] = -λ [x_λ y]
        let lhs = alg.lambda_bracket(&alg.deriv(&x), &y);
        let rhs = alg.lambda_bracket(&x, &y).shift().scale(&Scalar::from_int(-1));
        prop_assert_eq!(lhs, rhs);
        // [x_λ ∂y] = (λ + ∂)[x_λ y]
        let lhs = alg.lambda_bracket(&x, &alg.deriv(&y));
        let base = alg.lambda_bracket(&x, &y);
        let d = LambdaPoly::from_coeffs(base.coeffs.iter().map(|c| alg.deriv(c)).collect());
        prop_assert_eq!(lhs, base.shift().add(&d));
    }

    #[test]
    fn weights_add(a in mono_strategy(), b in mono_strategy()) {
        let alg = osp_alg();
        let (x, y) = (build(&alg, &a), build(&alg, &b));
        let wx = match alg.hamiltonian_weight(&x) { Weight::Homogeneous(w) => w, _ => return Ok(()) };
        let wy = match alg.hamiltonian_weight(&y) { Weight::Homogeneous(w) => w, _ => return Ok(()) };
        let xy = alg.no(&x, &y);
        if !xy.is_zero() {
            prop_assert_eq!(alg.hamiltonian_weight(&xy), Weight::Homogeneous(wx + wy));
        }
        let l = alg.lambda_bracket(&x, &y);
        for (n, c) in l.coeffs.iter().enumerate() {
            if !c.is_zero() {
                prop_assert_eq!(alg.hamiltonian_weight(c), Weight::Homogeneous(wx + wy - 2 * n as i64 - 2));
            }
        }
    }
}
