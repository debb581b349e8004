use super::*;
use num_rational::BigRational;

fn q(n: i64, d: i64) -> Scalar {
    Scalar::frac(n, d)
}

fn v(g: &AlgebraSpec, terms: &[(&str, Scalar)]) -> Elem {
    let mut out = Elem::new();
    for (n, c) in terms {
        out = add(&out, &scale(&g.e(n), c));
    }
    out
}

// 3x3 supermatrices with index 3 odd; entries as BigRational.
type Mat = [[BigRational; 3]; 3];

fn zero_mat() -> Mat {
    std::array::from_fn(|_| std::array::from_fn(|_| BigRational::from_integer(0.into())))
}

fn unit(i: usize, j: usize) -> Mat {
    let mut m = zero_mat();
    m[i - 1][j - 1] = BigRational::from_integer(1.into());
    m
}

fn lin(terms: &[(i64, Mat)]) -> Mat {
    let mut m = zero_mat();
    for (c, x) in terms {
        for i in 0..3 {
            for j in 0..3 {
                m[i][j] += BigRational::from_integer((*c).into()) * &x[i][j];
            }
        }
    }
    m
}

fn matmul(a: &Mat, b: &Mat) -> Mat {
    let mut m = zero_mat();
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                m[i][j] += &a[i][k] * &b[k][j];
            }
        }
    }
    m
}

fn sl21_matrices() -> Vec<(&'static str, u8, Mat)> {
    vec![
        ("E", 0, unit(1, 2)),
        ("e", 1, lin(&[(1, unit(1, 3)), (1, unit(3, 2))])),
        ("et", 1, lin(&[(1, unit(1, 3)), (-1, unit(3, 2))])),
        ("H", 0, lin(&[(1, unit(1, 1)), (-1, unit(2, 2))])),
        ("U", 0, lin(&[(-1, unit(1, 1)), (-1, unit(2, 2)), (-2, unit(3, 3))])),
        ("f", 1, lin(&[(-1, unit(3, 1)), (1, unit(2, 3))])),
        ("ft", 1, lin(&[(-1, unit(3, 1)), (-1, unit(2, 3))])),
        ("F", 0, unit(2, 1)),
    ]
}

#[test]
fn sl21_matches_supermatrix_realization() {
    let g = sl21();
    let mats = sl21_matrices();
    for (i, (ni, pi, a)) in mats.iter().enumerate() {
        assert_eq!(g.names[i], *ni);
        assert_eq!(g.parity[i], *pi);
        for (j, (_, pj, b)) in mats.iter().enumerate() {
            let sign = if pi * pj == 1 { -1 } else { 1 };
            let comm = lin(&[(1, matmul(a, b)), (-sign, matmul(b, a))]);
            let img = g.bracket(&basis_vec(i), &basis_vec(j));
            let rebuilt = img.iter().fold(zero_mat(), |mut acc, (k, c)| {
                let c = c.as_constant().unwrap().re;
                for r in 0..3 {
                    for s in 0..3 {
                        acc[r][s] += &c * &mats[*k].2[r][s];
                    }
                }
                acc
            });
            assert_eq!(rebuilt, comm, "[{}, {}]", ni, mats[j].0);
            let ab = matmul(a, b);
            let str_ab = &ab[0][0] + &ab[1][1] - &ab[2][2];
            assert_eq!(g.form[i][j].as_constant().unwrap().re, str_ab);
        }
    }
}

#[test]
fn builtins_pass_all_axioms() {
    for g in [osp12(), sl21(), osp12_x()] {
        let rep = g.check_algebra();
        assert!(rep.all_pass(), "{}\n{}", g.name, rep);
        let rep = g.check_osp();
        assert!(rep.all_pass(), "{}\n{}", g.name, rep);
        assert!(g.check_gf_decomposition().all_pass());
    }
    assert!(abelian(1).check_algebra().all_pass());
}

#[test]
fn osp_bracket_examples() {
    let g = osp12_x();
    assert_eq!(g.bracket(&g.e("x"), &g.e("e")), scale(&g.e("e"), &q(1, 2)));
    assert_eq!(g.bracket(&g.e("e"), &g.e("f")), scale(&g.e("x"), &q(-2, 1)));
    assert_eq!(g.bracket(&g.e("f"), &g.e("e")), scale(&g.e("x"), &q(-2, 1)));
    assert!(g.bracket(&g.e("E"), &g.e("E")).is_empty());
    assert!(g.try_bracket(&basis_vec(9), &g.e("E")).is_err());
}

#[test]
fn flipped_form_breaks_invariance() {
    let g = osp12_x().corrupted("form").unwrap();
    let rep = g.check_algebra();
    assert!(!rep.get("form-invariance").unwrap().pass);
    // ([e,f]|x) vs (e|[f,x]) with the flipped form
    let (e, f, x) = (g.e("e"), g.e("f"), g.e("x"));
    assert_ne!(g.form(&g.bracket(&e, &f), &x), g.form(&e, &g.bracket(&f, &x)));
    let good = osp12_x();
    let (l, r) = (good.form(&good.bracket(&e, &f), &x), good.form(&e, &good.bracket(&f, &x)));
    assert_eq!(l, q(-1, 1));
    assert_eq!(r, q(-1, 1));
}

#[test]
fn corrupt_jacobi_detected() {
    let g = osp12().corrupted("jacobi").unwrap();
    let rep = g.check_algebra();
    assert!(rep.get("skew-symmetry").unwrap().pass);
    assert!(!rep.get("jacobi").unwrap().pass);
}

#[test]
fn gradings() {
    let g = osp12();
    let gr = g.grade_decompose().unwrap();
    assert_eq!(gr.two_j, vec![2, 1, 0, -1, -2]);
    assert_eq!(gr.g_half(), vec![g.idx("e")]);
    assert_eq!(gr.g0(), vec![g.idx("H")]);
    let s = sl21();
    let gr = s.grade_decompose().unwrap();
    assert_eq!(gr.g0(), vec![s.idx("H"), s.idx("U")]);
    assert_eq!(gr.n_plus(), vec![s.idx("E"), s.idx("e"), s.idx("et")]);
    assert_eq!(gr.j(s.idx("H")), Scalar::zero());
}

#[test]
fn centralizers() {
    let g = osp12();
    let c = g.centralizer(&g.e("f"));
    assert_eq!(c.len(), 1);
    assert_eq!(c[0].keys().copied().collect::<Vec<_>>(), vec![g.idx("F")]);
    assert_eq!(g.centralizer(&Elem::new()).len(), 5);
    let s = sl21();
    let c = s.centralizer(&s.e("f"));
    let support: std::collections::BTreeSet<usize> = c.iter().flat_map(|v| v.keys().copied()).collect();
    assert_eq!(c.len(), 2);
    assert_eq!(support, [s.idx("ft"), s.idx("F")].into_iter().collect());
    assert_eq!(g.rank_from_gf(), Some(1));
    assert_eq!(s.rank_from_gf(), Some(2));
}

#[test]
fn dual_bases_follow_left_slot_convention() {
    let g = osp12();
    let gr = g.grade_decompose().unwrap();
    let db = g.dual_bases(&gr).unwrap();
    // (u^e | e) = 1 with (f|e) = 2
    assert_eq!(db.upper[&g.idx("e")], scale(&g.e("f"), &q(1, 2)));
    assert_eq!(db.upper[&g.idx("E")], g.e("F"));
    for i in 0..g.dim() {
        for j in 0..g.dim() {
            let d = g.form(&db.full[i], &basis_vec(j));
            assert_eq!(d, if i == j { Scalar::one() } else { Scalar::zero() });
        }
    }
    let a = abelian(1);
    let db = a.dual_bases(&GradingData { two_j: vec![0] }).unwrap();
    assert_eq!(db.full[0], basis_vec(0));
}

#[test]
fn supertrace_identity() {
    let g = osp12_x();
    let x = g.e("x");
    assert_eq!(g.killing(&x, &x), q(3, 2));
    assert_eq!(g.form(&x, &x), q(1, 2));
}

#[test]
fn simple_roots_and_coroots() {
    let g = osp12();
    let gr = g.grade_decompose().unwrap();
    let d = g.simple_root_duals(&gr).unwrap();
    assert_eq!(d, vec![g.e("f")]);
    assert_eq!(g.coroots(), vec![scale(&g.e("H"), &q(1, 2))]);
    let s = sl21();
    let gr = s.grade_decompose().unwrap();
    let d = s.simple_root_duals(&gr).unwrap();
    // e^{alpha_1} = -E31, e^{alpha_2} = E23
    assert_eq!(d[0], v(&s, &[("f", q(1, 2)), ("ft", q(1, 2))]));
    assert_eq!(d[1], v(&s, &[("f", q(1, 2)), ("ft", q(-1, 2))]));
    let h = s.coroots();
    assert_eq!(h[0], v(&s, &[("H", q(1, 2)), ("U", q(-1, 2))]));
    assert_eq!(h[1], v(&s, &[("H", q(1, 2)), ("U", q(1, 2))]));
    assert_eq!(s.form(&h[0], &h[0]), Scalar::zero());
    assert_eq!(s.form(&h[0], &h[1]), Scalar::one());
}

#[test]
fn loader_rejects_bad_input() {
    assert!(parse_spec("{}").is_err());
    let bad = OSP12_JSON.replace("\"3/2\"", "\"1.5\"");
    assert!(parse_spec(&bad).is_err());
    let bad = OSP12_JSON.replace("superw-algebra/1", "superw-algebra/9");
    assert!(parse_spec(&bad).is_err());
    let bad = OSP12_JSON.replace("\"h\": \"H\"", "\"h\": \"Q\"");
    assert!(parse_spec(&bad).is_err());
}

#[test]
fn embedded_specs_are_stable() {
    let a = osp12();
    let b = parse_spec(OSP12_JSON).unwrap();
    assert_eq!(a.names, b.names);
    assert_eq!(a.bracket, b.bracket);
}
