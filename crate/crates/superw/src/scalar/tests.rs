use super::*;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn osp_root() -> Arc<Poly> {
    Arc::new(Poly::linear(2, 3))
}

#[test]
fn root_squares_to_q() {
    let r = osp_root();
    let s = Scalar::root(&r);
    assert_eq!(&s * &s, Scalar::linear(2, 3));
}

#[test]
fn three_halves_power_shape() {
    let r = osp_root();
    let x = &Scalar::linear(2, 3) * &Scalar::root(&r);
    assert!(x.rational_part().is_zero());
    assert_eq!(x.root_part(), &RatFn::from_poly(Poly::linear(2, 3)));
    assert_eq!(x.to_string(), "(2*k + 3)*s");
}

#[test]
fn cancellation() {
    let x = Scalar::linear(1, 1) / Scalar::linear(1, 1);
    assert!(x.is_one());
}

#[test]
fn central_charge_value_at_one() {
    // k/(k+3/2) - 6k - 5/2
    let k = Scalar::k();
    let x = &(&k / &(&k + &Scalar::frac(3, 2))) - &(&(&Scalar::from_int(6) * &k) + &Scalar::frac(5, 2));
    let v = x.evaluate(&q(1, 1)).unwrap();
    // independent rational oracle
    let k0 = q(1, 1);
    let oracle = &k0 / (&k0 + q(3, 2)) - q(6, 1) * &k0 - q(5, 2);
    assert_eq!(v, GaussRat::rational(oracle));
    assert_eq!(v, GaussRat::rational(q(-81, 10)));
}

#[test]
fn principal_root_evaluation() {
    let s = Scalar::root(&osp_root());
    assert_eq!(s.evaluate(&q(3, 1)).unwrap(), GaussRat::from_int(3));
    assert_eq!(Scalar::one().evaluate(&q(7, 3)).unwrap(), GaussRat::one());
    assert_eq!(s.evaluate(&q(0, 1)), Err(ScalarError::NotASquare));
}

#[test]
fn pole_is_reported() {
    let x = Scalar::one() / Scalar::linear(1, 1);
    assert_eq!(x.evaluate(&q(-1, 1)), Err(ScalarError::Pole));
}

#[test]
fn degenerate_root_resolves() {
    let one = Arc::new(Poly::one());
    let s = Scalar::root(&one);
    assert!(s.is_one());
    let four = Arc::new(Poly::constant(GaussRat::from_int(4)));
    assert_eq!(Scalar::root(&four), Scalar::from_int(2));
}

#[test]
fn second_root_rejected() {
    let mut sess = Session::new();
    sess.adjoin_root(Poly::linear(2, 3)).unwrap();
    assert!(sess.adjoin_root(Poly::linear(2, 3)).is_ok());
    assert_eq!(sess.adjoin_root(Poly::linear(1, 1)), Err(ScalarError::SecondRoot));
}

#[test]
fn mixing_roots_fails() {
    let a = Scalar::root(&osp_root());
    let b = Scalar::root(&Arc::new(Poly::linear(1, 1)));
    assert_eq!(a.try_add(&b), Err(ScalarError::RootMismatch));
}

#[test]
fn division_by_zero() {
    assert_eq!(Scalar::one().try_div(&Scalar::zero()), Err(ScalarError::DivisionByZero));
    assert!(parse_scalar("1/(k-k)", None).is_err());
}

#[test]
fn parse_examples() {
    let r = osp_root();
    let x = parse_scalar("(2*k+3)^2*s/8", Some(&r)).unwrap();
    let y = &(&Scalar::linear(2, 3).pow(2) * &Scalar::root(&r)) * &Scalar::frac(1, 8);
    assert_eq!(x, y);
    let z = parse_scalar("i^2 + 1", None).unwrap();
    assert!(z.is_zero());
    assert!(parse_scalar("s", None).is_err());
    assert!(parse_scalar("2*", None).is_err());
}

#[test]
fn printing_is_canonical() {
    let x = parse_scalar("(k^2 - 1)/(2*k + 2)", None).unwrap();
    assert_eq!(x.to_string(), "(1/2)*k - 1/2");
    let y = parse_scalar("3/(2*k+3)", None).unwrap();
    assert_eq!(y.to_string(), "(3/2)/(k + 3/2)");
    let z = parse_scalar("1 - 2*i*k", None).unwrap();
    assert_eq!(parse_scalar(&z.to_string(), None).unwrap(), z);
}

#[test]
fn poly_sqrt() {
    let p = Poly::linear(1, 1).mul(&Poly::linear(1, 1));
    assert_eq!(p.sqrt(), Some(Poly::linear(1, 1)));
    assert_eq!(Poly::linear(2, 3).sqrt(), None);
}

fn small_rat() -> impl Strategy<Value = GaussRat> {
    (-6i64..=6, 1i64..=4, -2i64..=2).prop_map(|(n, d, im)| {
        GaussRat::new(BigRational::new(BigInt::from(n), BigInt::from(d)), BigRational::from_integer(BigInt::from(im)))
    })
}

fn small_poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(small_rat(), 0..4).prop_map(Poly::from_coeffs)
}

fn scalar_strategy() -> impl Strategy<Value = Scalar> {
    (small_poly(), small_poly(), small_poly(), small_poly(), any::<bool>()).prop_map(|(a, b, c, d, rooted)| {
        let den1 = if b.is_zero() { Poly::one() } else { b };
        let den2 = if d.is_zero() { Poly::one() } else { d };
        let x = RatFn::new(a, den1).unwrap();
        let y = RatFn::new(c, den2).unwrap();
        if rooted {
            Scalar::with_root(x, y, osp_root())
        } else {
            Scalar::from_ratfn(x)
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(x in scalar_strategy(), y in scalar_strategy(), z in scalar_strategy()) {
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x * &y, &y * &x);
        if !x.is_zero() {
            prop_assert!((&x * &x.inv()).is_one());
        }
    }

    #[test]
    fn print_parse_roundtrip(x in scalar_strategy()) {
        let text = x.to_string();
        let back = parse_scalar(&text, Some(&osp_root())).unwrap();
        prop_assert_eq!(&back, &x);
        prop_assert_eq!(back.to_string(), text);
    }

    #[test]
    fn evaluation_is_a_homomorphism(x in scalar_strategy(), y in scalar_strategy(), k0 in prop::sample::select(vec![3i64, 11, 39])) {
        // q(k0) = 2k0+3 is 9, 25, 81
        let k0 = BigRational::from_integer(BigInt::from(k0));
        if let (Ok(a), Ok(b)) = (x.evaluate(&k0), y.evaluate(&k0)) {
            if let Ok(p) = (&x * &y).evaluate(&k0) {
                prop_assert_eq!(p, &a * &b);
            }
            if let Ok(p) = (&x + &y).evaluate(&k0) {
                prop_assert_eq!(p, &a + &b);
            }
        }
    }

    #[test]
    fn normalize_idempotent(x in scalar_strategy()) {
        let once = normalize(&x.to_string(), Some(&osp_root())).unwrap();
        let twice = normalize(&once.to_string(), Some(&osp_root())).unwrap();
        prop_assert_eq!(once, twice);
    }
}
