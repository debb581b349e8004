use super::*;
use crate::brst::{Complex, ComplexSpec, Flavor, Reduced};
use crate::liealg::{basis_vec, osp12, sl21, AlgebraSpec};
use crate::vertex::Generator;
use proptest::prelude::*;

fn susy(g: &AlgebraSpec) -> Complex {
    Complex::new(ComplexSpec::new(g, Flavor::Susy).unwrap()).unwrap()
}

fn failures(checks: &[BracketCheck]) -> Vec<String> {
    checks.iter().filter(|c| !c.pass).map(|c| format!("{}: {}", c.name, c.residual)).collect()
}

fn fac(i: usize) -> VertexPoly {
    VertexPoly::factor(Factor::new(i, 0))
}

#[test]
fn binomials() {
    assert_eq!(binom(&Scalar::from_int(5), 2), Scalar::from_int(10));
    assert_eq!(binom(&Scalar::frac(1, 2), 2), Scalar::frac(-1, 8));
    assert_eq!(binom(&Scalar::from_int(3), 0), Scalar::one());
}

#[test]
fn heisenberg_zhu_is_polynomial() {
    let alg = VertexAlgebra::new("heis", vec![Generator::new("a", 0, 2)]).unwrap();
    let mut alg = alg;
    alg.set_products(0, 0, vec![VertexPoly::zero(), VertexPoly::constant(Scalar::one())]);
    let z = ZhuAlgebra::new(&alg);
    assert!(z.gen_bracket(0, 0).is_zero());
    // Zhu(∂a) = -Zhu(a) and Zhu(:aa:) = a^2
    let da = VertexPoly::factor(Factor::new(0, 1));
    assert_eq!(z.project(&da), z.gen(0).neg());
    let aa = VertexPoly::monomial(vec![Factor::new(0, 0), Factor::new(0, 0)], Scalar::one());
    assert_eq!(z.project(&aa), z.mul(&z.gen(0), &z.gen(0)));
}

#[test]
fn odd_squares_reduce() {
    let cx = susy(&osp12());
    let z = ZhuAlgebra::new(&cx.alg);
    for i in 0..z.ngens() {
        if cx.alg.gen(i).parity == 1 {
            let sq = z.mul(&z.gen(i), &z.gen(i));
            assert_eq!(sq, z.gen_bracket(i, i).scale(&Scalar::frac(1, 2)));
        }
    }
}

#[test]
fn associativity_on_generators() {
    let cx = susy(&osp12());
    let z = ZhuAlgebra::new(&cx.alg);
    let n = z.ngens();
    for i in 0..n {
        for j in 0..n {
            for k in (0..n).step_by(3) {
                let (a, b, c) = (z.gen(i), z.gen(j), z.gen(k));
                let l = z.mul(&z.mul(&a, &b), &c);
                let r = z.mul(&a, &z.mul(&b, &c));
                assert_eq!(l, r, "{} {} {}", i, j, k);
            }
        }
    }
}

#[test]
fn bracket_matches_commutator_of_projections() {
    let cx = susy(&sl21());
    let z = ZhuAlgebra::new(&cx.alg);
    for i in 0..z.ngens() {
        for j in 0..z.ngens() {
            let b = z.zhu_bracket(&fac(i), &fac(j)).unwrap();
            assert_eq!(b, z.commutator(&z.gen(i), &z.gen(j)));
        }
    }
}

#[test]
fn osp_bracket_table() {
    let cx = susy(&osp12());
    let sz = SusyZhu::new(&cx).unwrap();
    let f = failures(&sz.bracket_table());
    assert!(f.is_empty(), "{:#?}", f);
}

#[test]
fn sl21_bracket_table() {
    let cx = susy(&sl21());
    let sz = SusyZhu::new(&cx).unwrap();
    let f = failures(&sz.bracket_table());
    assert!(f.is_empty(), "{:#?}", f);
}

#[test]
fn q_formulas_on_generators() {
    for g in [osp12(), sl21()] {
        let cx = susy(&g);
        let sz = SusyZhu::new(&cx).unwrap();
        let f = failures(&sz.q_formulas());
        assert!(f.is_empty(), "{}: {:#?}", g.name, f);
        let f = failures(&sz.q_squared());
        assert!(f.is_empty(), "{}: {:#?}", g.name, f);
    }
}

#[test]
fn r_minus_relations() {
    for g in [osp12(), sl21()] {
        let cx = susy(&g);
        let sz = SusyZhu::new(&cx).unwrap();
        let f = failures(&sz.r_minus_relations());
        assert!(f.is_empty(), "{}: {:#?}", g.name, f);
    }
}

#[test]
fn q_preserves_r_plus_and_r_minus() {
    for g in [osp12(), sl21()] {
        let cx = susy(&g);
        let sz = SusyZhu::new(&cx).unwrap();
        let f = failures(&wfin_closure(&sz));
        assert!(f.is_empty(), "{}: {:#?}", g.name, f);
    }
}

#[test]
fn finite_w_two_routes_agree() {
    let cx = susy(&osp12());
    let red = Reduced::new(&cx).unwrap();
    let (k, b, same) = wfin_two_routes(&red, 4).unwrap();
    assert!(same, "kernel {} cohomology {}", k, b);
    assert_eq!(k, 3);
}

#[test]
fn affine_profile_is_good_almost_linear() {
    for g in [osp12(), sl21()] {
        let cx = susy(&g);
        let red = Reduced::new(&cx).unwrap();
        let prof = GradingProfile::affine(&red, &cx);
        let terms = vertex_terms(&prof, red.alg(), &|i| red.apply_d0(&fac(i)));
        let rep = check_good_almost_linear(&prof, &terms);
        assert!(rep.pass, "{}: {:?}", g.name, rep);
        if g.name == "osp12" {
            assert_eq!(rep.cohomology, vec!["J[Fb]".to_string(), "DJ[Fb]".to_string()]);
        }
    }
}

#[test]
fn finite_profile_is_good_almost_linear() {
    let cx = susy(&osp12());
    let red = Reduced::new(&cx).unwrap();
    let prof = GradingProfile::finite(&red, &cx);
    let zhu = ZhuAlgebra::new(red.alg());
    let q = InducedQ::new(&zhu, &|i| red.apply_d0(&fac(i)));
    let rep = check_good_almost_linear(&prof, &zhu_terms(&prof, &zhu, &q));
    assert!(rep.pass, "{:?}", rep);
    assert_eq!(rep.cohomology.len(), 2);
}

#[test]
fn zero_differential_is_not_good() {
    let cx = susy(&osp12());
    let red = Reduced::new(&cx).unwrap();
    let prof = GradingProfile::affine(&red, &cx);
    let terms = vertex_terms(&prof, red.alg(), &|_| VertexPoly::zero());
    assert!(!check_good_almost_linear(&prof, &terms).pass);
}

#[test]
fn non_susy_complex_is_rejected() {
    let cx = Complex::new(ComplexSpec::new(&osp12(), Flavor::NonSusy).unwrap()).unwrap();
    assert!(SusyZhu::new(&cx).is_err());
}

#[test]
fn inhomogeneous_bracket_errors() {
    let cx = susy(&osp12());
    let z = ZhuAlgebra::new(&cx.alg);
    let x = fac(0).add(&VertexPoly::factor(Factor::new(1, 0)));
    assert!(matches!(z.zhu_bracket(&x, &fac(0)), Err(ZhuError::Inhomogeneous)));
    let _ = basis_vec(0);
}

fn arb_poly(n: usize) -> impl Strategy<Value = VertexPoly> {
    prop::collection::vec((0..n, 0u32..2, 0..n, -3i64..4), 1..4).prop_map(|v| {
        let mut p = VertexPoly::zero();
        for (a, d, b, c) in v {
            p.add_term(vec![Factor::new(a, d), Factor::new(b, 0)], &Scalar::from_int(c));
        }
        p
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn q_commutes_with_projection(x in arb_poly(8)) {
        let cx = susy(&osp12());
        let z = ZhuAlgebra::new(&cx.alg);
        let q = InducedQ::new(&z, &|i| cx.d0_generator(i).clone());
        let lhs = q.apply(&z, &z.project(&x));
        let rhs = z.project(&cx.apply_d0(&x));
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn q_on_j_needs_the_zhu_correction_for_osp() {
    let cx = susy(&osp12());
    let sz = SusyZhu::new(&cx).unwrap();
    let z = &sz.zhu;
    let r: Vec<(String, String)> = q_j_without_correction(&sz).into_iter().map(|(n, x)| (n, z.text(&x))).collect();
    assert_eq!(
        r,
        vec![("Q(J_f)".to_string(), "((1/2))*pu[e]".to_string()), ("Q(J_F)".to_string(), "((1/2))*pu[E]".to_string())]
    );
    let cx = susy(&sl21());
    let sz = SusyZhu::new(&cx).unwrap();
    assert!(q_j_without_correction(&sz).is_empty());
}
