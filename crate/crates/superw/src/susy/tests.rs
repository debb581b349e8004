use super::*;
use crate::liealg::{osp12, osp12_x, sl21};
use crate::vertex::Weight;
use proptest::prelude::*;

fn kh(g: &AlgebraSpec) -> Scalar {
    &Scalar::k() + &g.dual_coxeter
}

#[test]
fn d_on_pairs() {
    let g = osp12();
    let v = susy_affine(&g, &kh(&g), "J", AffineConvention::Signed);
    let hb = v.g("J[Hb]");
    assert_eq!(v.D(&hb), v.g("DJ[Hb]"));
    assert_eq!(v.D(&v.g("DJ[Hb]")), v.deriv(&hb));
    assert_eq!(v.gen(v.index("J[Hb]").unwrap()).parity, 1);
    assert_eq!(v.gen(v.index("J[eb]").unwrap()).parity, 0);
    assert_eq!(v.hamiltonian_weight(&v.g("DJ[eb]")), Weight::Homogeneous(2));
}

#[test]
fn osp_ef_bracket() {
    // [ē Λ f̄] = (-1)^{1·2} [e,f]‾ + χ (e|f)(k+3/2) with the x = H/2 basis
    let g = osp12_x();
    let v = susy_affine(&g, &kh(&g), "J", AffineConvention::Signed);
    let got = v.lambda_super(&v.g("J[eb]"), &v.g("J[fb]"));
    let want = LambdaSuperPoly::new(
        LambdaPoly::from_coeffs(vec![v.g("J[xb]").scale(&Scalar::from_int(-2))]),
        LambdaPoly::from_coeffs(vec![VertexPoly::constant(&Scalar::from_int(-2) * &kh(&g))]),
    );
    assert_eq!(got, want, "{}", got.text(&v));
    assert!(v.lambda_super(&v.g("J[Eb]"), &v.g("J[Eb]")).is_zero());
}

#[test]
fn affine_tables_satisfy_axioms() {
    for g in [osp12(), sl21()] {
        for conv in [AffineConvention::Signed, AffineConvention::Unsigned] {
            let v = susy_affine(&g, &kh(&g), "J", conv);
            v.check_bound_grading().unwrap();
            let rep = v.axiom_check(2);
            assert!(rep.pass(), "{} {:?}", g.name, rep.violations.first());
        }
    }
}

#[test]
fn sesquilinear_two_paths() {
    let g = osp12();
    let v = susy_affine(&g, &kh(&g), "J", AffineConvention::Signed);
    let gens: Vec<VertexPoly> = (0..g.dim()).map(|i| VertexPoly::factor(Factor::new(bar(i), 0))).collect();
    for a in &gens {
        for b in &gens {
            let ab = v.lambda_super(a, b);
            assert_eq!(v.predict_right_d(a, &ab), v.lambda_super(a, &v.D(b)));
            assert_eq!(v.predict_left_d(&ab), v.lambda_super(&v.D(a), b));
            let nb = v.no(a, b);
            let c = &gens[0];
            assert_eq!(v.predict_right_d(c, &v.lambda_super(c, &nb)), v.lambda_super(c, &v.D(&nb)));
        }
    }
}

#[test]
fn twist_relates_conventions() {
    for g in [osp12(), sl21()] {
        assert!(twist_mismatches(&g, &kh(&g)).is_empty(), "{}", g.name);
    }
}

#[test]
fn twist_is_needed() {
    // the identity map does not intertwine the two conventions on odd pairs
    let g = osp12();
    let a = susy_affine(&g, &kh(&g), "J", AffineConvention::Unsigned);
    let b = susy_affine(&g, &kh(&g), "J", AffineConvention::Signed);
    let e = a.g("J[eb]");
    assert_ne!(a.lambda_super(&e, &e), b.lambda_super(&e, &e));
}

fn free_fermion() -> SusyAlgebra {
    // one neutral odd ā with [ā Λ ā] = χ: Dā is a free boson, ā a free fermion
    let mut b = SusyBuilder::new("free", vec![SuperGen::new("a", 1, 1)]);
    b.set(0, 0, LambdaSuperPoly::new(LambdaPoly::zero(), LambdaPoly::from_coeffs(vec![VertexPoly::one()])));
    b.build().unwrap()
}

#[test]
fn free_superfield_superconformal() {
    // τ = :(Dā) ā: has c = 3/2
    let v = free_fermion();
    let (a, da) = (v.g("a"), v.g("Da"));
    let tau = v.no(&da, &a);
    let rep = v.check_superconformal(&tau, None);
    assert!(rep.pass, "{} | {}", rep.residual, rep.virasoro_residual);
    assert_eq!(rep.c_value, Scalar::frac(3, 2));
    let zero = v.check_superconformal(&VertexPoly::zero(), None);
    assert!(zero.pass);
    assert!(zero.c_value.is_zero());
    let twice = v.check_superconformal(&tau.scale(&Scalar::from_int(2)), None);
    assert!(!twice.pass);
    let wrong_c = v.check_superconformal(&tau, Some(&Scalar::one()));
    assert!(!wrong_c.pass);
}

#[test]
fn nonlinear_entries_rejected() {
    let mut b = SusyBuilder::new("bad", vec![SuperGen::new("a", 1, 1), SuperGen::new("b", 1, 1)]);
    let quad = VertexPoly::monomial(vec![Factor::new(0, 0), Factor::new(2, 0)], Scalar::one());
    b.set(0, 1, LambdaSuperPoly::new(LambdaPoly::from_coeffs(vec![quad]), LambdaPoly::zero()));
    assert!(matches!(b.build(), Err(SusyError::Nonlinear(_, _))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn d_squares_to_partial(fs in prop::collection::vec((0usize..10, 0u32..2), 1..4)) {
        let g = osp12();
        let v = susy_affine(&g, &kh(&g), "J", AffineConvention::Signed);
        let parts: Vec<VertexPoly> = fs.iter().map(|(i, d)| VertexPoly::factor(Factor::new(*i, *d))).collect();
        let x = v.no_many(&parts);
        prop_assert!(v.check_d_squared(&x));
        if !x.is_zero() && v.is_parity_homogeneous(&x) {
            let dx = v.D(&x);
            if !dx.is_zero() {
                prop_assert_eq!(v.parity(&dx), 1 - v.parity(&x));
            }
        }
    }
}
