use super::*;
use crate::brst::{Complex, ComplexSpec, OspNormalized, Reduced, TauMap};
use crate::liealg::{osp12, sl21};
use crate::vertex::Factor;
use proptest::prelude::*;

struct Setup {
    g: AlgebraSpec,
    gr: GradingData,
    cx: Complex,
    red: Reduced,
    target: crate::vertex::Embedding,
}

fn setup(g: &AlgebraSpec, flavor: Flavor) -> Setup {
    let cx = Complex::new(ComplexSpec::new(g, flavor).unwrap()).unwrap();
    let red = Reduced::new(&cx).unwrap();
    let target = red.miura_target(&cx).unwrap();
    Setup { g: g.clone(), gr: cx.spec.grading.clone(), cx, red, target }
}

fn fock(s: &Setup) -> FockModule {
    FockModule::free_field(&s.g, &s.gr, s.cx.flavor(), &s.cx.spec.level).unwrap()
}

fn kappa(g: &AlgebraSpec) -> Scalar {
    &Scalar::k() + &g.dual_coxeter
}

#[test]
fn free_field_matches_miura_targets() {
    for g in [osp12(), sl21()] {
        for fl in [Flavor::NonSusy, Flavor::Susy] {
            let s = setup(&g, fl);
            let f = fock(&s);
            let t = &s.target.sub;
            assert_eq!(f.alg.ngens(), t.ngens());
            for i in 0..t.ngens() {
                assert_eq!(f.alg.gen(i).name, t.gen(i).name);
                assert_eq!(f.alg.gen(i).parity, t.gen(i).parity);
                assert_eq!(f.alg.gen(i).two_weight, t.gen(i).two_weight);
                for j in 0..t.ngens() {
                    let a = VertexPoly::factor(Factor::new(i, 0));
                    let b = VertexPoly::factor(Factor::new(j, 0));
                    assert_eq!(f.alg.lambda_bracket(&a, &b), t.lambda_bracket(&a, &b), "{} {}", g.name, fl);
                }
            }
        }
    }
}

#[test]
fn root_duals_are_coroots() {
    for g in [osp12(), sl21()] {
        let gr = g.grade_decompose().unwrap();
        for (r, h) in g.coroots().iter().enumerate() {
            let d = root_dual(&g, &gr, r).unwrap();
            let h: Elem = h.iter().filter(|(_, c)| !c.is_zero()).map(|(a, c)| (*a, c.clone())).collect();
            assert_eq!(d, h, "{} root {}", g.name, r);
        }
    }
}

#[test]
fn osp_nonsusy_generator_in_kernel() {
    let s = setup(&osp12(), Flavor::NonSusy);
    let norm = OspNormalized::new(&s.target.sub).unwrap();
    let f = FockModule::vacuum(Flavor::NonSusy, norm.alg.clone(), kappa(&s.g));
    let ops = screenings(&f, &s.g, &s.gr, 6).unwrap();
    let x = f.alg.parse("1/2*:Phi J[H]: + (k+1)*d(Phi)", None).unwrap();
    assert!(ops[0].apply(&f, &x, 3).unwrap().is_zero());
    let ker = screening_kernel(&ops, &f, 3).unwrap();
    assert_eq!(ker.len(), 1);
    let (m, c) = x.leading().unwrap();
    assert_eq!(ker[0].scale(&(c / &ker[0].coeff(m))), x);
}

#[test]
fn osp_weight_half_block() {
    let s = setup(&osp12(), Flavor::NonSusy);
    let f = fock(&s);
    let op = vertex_exp_modes(&f, &s.g, &s.gr, 0, 1).unwrap();
    let b = op.block(&f, 1).unwrap();
    assert_eq!((b.domain.len(), b.codomain.len()), (1, 1));
    // ∫S Φ[e] = Φ_{e_α (0)} Φ[e] = (F|[e_α, e])
    let o = s.g.osp.as_ref().unwrap();
    let e = crate::liealg::basis_vec(s.gr.g_half()[0]);
    let want = s.g.form(&crate::liealg::basis_vec(o.big_f), &s.g.bracket(&s.g.simple_roots[0], &e));
    assert_eq!(b.matrix.cols[0].get(&0).cloned().unwrap_or_else(Scalar::zero), want);
    assert_eq!(want, Scalar::from_int(-1));
    assert!(screening_kernel(&[op], &f, 1).unwrap().is_empty());
}

#[test]
fn residue_of_vacuum_vanishes() {
    for g in [osp12(), sl21()] {
        for fl in [Flavor::NonSusy, Flavor::Susy] {
            let s = setup(&g, fl);
            let f = fock(&s);
            for op in screenings(&f, &s.g, &s.gr, 0).unwrap() {
                assert!(op.apply(&f, &VertexPoly::one(), 0).unwrap().is_zero());
                let series = op.exp_series(&f, &VertexPoly::one(), 0, 3);
                assert!(series.keys().all(|&n| n >= 0));
                assert_eq!(series[&0], VertexPoly::one());
            }
        }
    }
}

/// `Σ z^n c_n` as a map, with every mode applied.
fn modes(f: &FockModule, field: &VertexPoly, n: i64, series: &Series) -> Series {
    let mut out = Series::new();
    for (m, c) in series {
        let x = f.alg.nprod(field, n, c);
        if !x.is_zero() {
            out.insert(*m, x);
        }
    }
    out
}

fn add_into(acc: &mut Series, shift: i64, c: &Scalar, s: &Series) {
    for (n, x) in s {
        acc.entry(n + shift).or_insert_with(VertexPoly::zero).axpy(c, x);
    }
}

#[test]
fn exponential_derivative_and_ope() {
    for g in [osp12(), sl21()] {
        let s = setup(&g, Flavor::NonSusy);
        let f = fock(&s);
        let kinv = kappa(&g).inv();
        for r in 0..g.simple_roots.len() {
            let op = vertex_exp_modes(&f, &g, &s.gr, r, 6).unwrap();
            let h_alpha = root_dual(&g, &s.gr, r).unwrap();
            let alpha = f.boson(&g, &h_alpha).unwrap();
            for tw in 0..=4 {
                for m in f.basis(tw) {
                    let v = VertexPoly::monomial(m, Scalar::one());
                    let top = 3;
                    let e = op.exp_series(&f, &v, tw, top + 3);
                    // ∂_z e^{-α}(z) = -(1/κ) :α(z) e^{-α}(z):
                    let mut lhs = Series::new();
                    for (n, c) in &e {
                        if *n != 0 {
                            lhs.insert(n - 1, c.scale(&Scalar::from_int(*n)));
                        }
                    }
                    let mut rhs = Series::new();
                    for j in 1..=top + 4 {
                        // α_(-j) z^{j-1}
                        add_into(&mut rhs, j - 1, &-&kinv, &modes(&f, &alpha, -j, &e));
                    }
                    for j in 0..=tw / 2 {
                        // e(z) α_(j) z^{-j-1}
                        let w = f.alg.nprod(&alpha, j, &v);
                        if !w.is_zero() {
                            add_into(&mut rhs, -j - 1, &-&kinv, &op.exp_series(&f, &w, tw, top + 4));
                        }
                    }
                    for n in -4..top {
                        let l = lhs.get(&n).cloned().unwrap_or_else(VertexPoly::zero);
                        let r = rhs.get(&n).cloned().unwrap_or_else(VertexPoly::zero);
                        assert_eq!(l, r, "{} z^{}", g.name, n);
                    }
                    // [h_(j), e^{-α}(z)] = -α(h) z^j e^{-α}(z) for h ∈ g_0, j > 0
                    for h in s.gr.g0() {
                        let he = crate::liealg::basis_vec(h);
                        let field = f.boson(&g, &he).unwrap();
                        let ah = g.form(&he, &h_alpha);
                        for j in 1..=2 {
                            let mut l = modes(&f, &field, j, &e);
                            let hv = f.alg.nprod(&field, j, &v);
                            add_into(&mut l, 0, &-&Scalar::one(), &op.exp_series(&f, &hv, tw, top + 3));
                            let mut want = Series::new();
                            add_into(&mut want, j, &-&ah, &e);
                            for n in -4..top {
                                let a = l.get(&n).cloned().unwrap_or_else(VertexPoly::zero);
                                let b = want.get(&n).cloned().unwrap_or_else(VertexPoly::zero);
                                assert_eq!(a, b, "{} h-mode {} z^{}", g.name, j, n);
                            }
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn miura_images_are_screened() {
    for g in [osp12(), sl21()] {
        for fl in [Flavor::NonSusy, Flavor::Susy] {
            let s = setup(&g, fl);
            let f = FockModule::vacuum(fl, s.target.sub.clone(), kappa(&g));
            let ops = screenings(&f, &g, &s.gr, 6).unwrap();
            for tw in 1..=6 {
                for w in s.red.cohomology_generators(tw).unwrap() {
                    let m = s.red.miura(&s.target, &w);
                    for op in &ops {
                        let r = op.apply(&f, &m, tw).unwrap();
                        assert!(r.is_zero(), "{} {} {}: {}", g.name, fl, tw, f.alg.text(&r));
                    }
                }
            }
        }
    }
}

#[test]
fn kernel_dimensions_match_cohomology() {
    for g in [osp12(), sl21()] {
        for fl in [Flavor::NonSusy, Flavor::Susy] {
            let s = setup(&g, fl);
            let f = fock(&s);
            let ops = screenings(&f, &g, &s.gr, 6).unwrap();
            for tw in 0..=6 {
                let ker = screening_kernel(&ops, &f, tw).unwrap().len();
                let h = s.red.counts(tw, 0, None).unwrap().cohomology();
                assert_eq!(ker, h, "{} {} weight {}/2", g.name, fl, tw);
            }
        }
    }
}

#[test]
fn osp_screenings_agree_under_tau() {
    let g = osp12();
    let ns = setup(&g, Flavor::NonSusy);
    let su = setup(&g, Flavor::Susy);
    let norm = OspNormalized::new(&ns.target.sub).unwrap();
    let fn_ = FockModule::vacuum(Flavor::NonSusy, norm.alg.clone(), kappa(&g));
    let fs = fock(&su);
    let on = vertex_exp_modes(&fn_, &g, &ns.gr, 0, 6).unwrap();
    let os = vertex_exp_modes(&fs, &g, &su.gr, 0, 6).unwrap();
    let tau = |x: &VertexPoly| norm.tau(&fs.alg, x).unwrap();
    let c = codomain_scalar((&on, &fn_), (&os, &fs), &tau, 6).unwrap().expect("uniform scalar");
    let want = -&Scalar::root(&norm.root).inv();
    assert_eq!(c, want, "{}", c.factor_text());
}

#[test]
fn sl21_screenings_agree_under_tau() {
    let g = sl21();
    let ns = setup(&g, Flavor::NonSusy);
    let su = setup(&g, Flavor::Susy);
    let tau_map = TauMap::new(&ns.cx, &ns.target.sub, &su.target.sub).unwrap();
    let fn_ = fock(&ns);
    let fs = fock(&su);
    let tau = |x: &VertexPoly| tau_map.apply(&fn_.alg, &fs.alg, x);
    for r in 0..2 {
        let on = vertex_exp_modes(&fn_, &g, &ns.gr, r, 6).unwrap();
        let os = vertex_exp_modes(&fs, &g, &su.gr, r, 6).unwrap();
        let c = codomain_scalar((&on, &fn_), (&os, &fs), &tau, 6).unwrap().expect("uniform scalar");
        let want = -&Scalar::root(&tau_map.root).inv();
        assert_eq!(c, want, "root {}: {}", r, c.factor_text());
    }
}

#[test]
fn highest_weights_match_under_tau() {
    for g in [osp12(), sl21()] {
        let gr = g.grade_decompose().unwrap();
        for r in 0..g.simple_roots.len() {
            let ha = root_dual(&g, &gr, r).unwrap();
            let minus = crate::liealg::scale(&ha, &Scalar::from_int(-1));
            let n = FockModule::free_field(&g, &gr, Flavor::NonSusy, &Scalar::k()).unwrap().shifted(minus.clone());
            let s = FockModule::free_field(&g, &gr, Flavor::Susy, &Scalar::k()).unwrap().shifted(minus);
            for h in gr.g0() {
                let he = crate::liealg::basis_vec(h);
                let alpha_h = g.form(&he, &ha);
                assert_eq!(n.zero_mode(&g, &he), -&alpha_h);
                assert_eq!(s.zero_mode(&g, &he), -&alpha_h);
            }
        }
    }
}

#[test]
fn osp_graded_dimensions_agree() {
    let g = osp12();
    let gr = g.grade_decompose().unwrap();
    let n = FockModule::free_field(&g, &gr, Flavor::NonSusy, &Scalar::k()).unwrap();
    let s = FockModule::free_field(&g, &gr, Flavor::Susy, &Scalar::k()).unwrap();
    let dims: Vec<usize> = (0..=6).map(|tw| n.basis(tw).len()).collect();
    assert_eq!(dims, (0..=6).map(|tw| s.basis(tw).len()).collect::<Vec<_>>());
    // one boson of weight 1 and one fermion of weight 1/2
    assert_eq!(dims, vec![1, 1, 1, 2, 3, 4, 5]);
}

#[test]
fn sl21_residue_commutes_with_orthogonal_modes() {
    let g = sl21();
    let s = setup(&g, Flavor::NonSusy);
    let f = fock(&s);
    let cartan = s.gr.g0();
    for r in 0..2 {
        let op = vertex_exp_modes(&f, &g, &s.gr, r, 6).unwrap();
        let ha = root_dual(&g, &s.gr, r).unwrap();
        // h ⊥ h_α inside the Cartan subalgebra
        let (a, b) = (crate::liealg::basis_vec(cartan[0]), crate::liealg::basis_vec(cartan[1]));
        let h = crate::liealg::sub(&crate::liealg::scale(&a, &g.form(&b, &ha)), &crate::liealg::scale(&b, &g.form(&a, &ha)));
        assert!(g.form(&h, &ha).is_zero());
        let field = f.boson(&g, &h).unwrap();
        for tw in 0..=4 {
            for m in f.basis(tw) {
                let v = VertexPoly::monomial(m, Scalar::one());
                for n in [-2i64, -1, 1, 2] {
                    let hv = f.alg.nprod(&field, n, &v);
                    let tw2 = tw - 2 * n;
                    if !(0..=6).contains(&tw2) {
                        continue;
                    }
                    let l = op.apply(&f, &hv, tw2).unwrap();
                    let r = f.alg.nprod(&field, n, &op.apply(&f, &v, tw).unwrap());
                    assert_eq!(l, r);
                }
            }
        }
    }
}

#[test]
fn error_cases() {
    let g = osp12();
    let gr = g.grade_decompose().unwrap();
    let f = FockModule::free_field(&g, &gr, Flavor::NonSusy, &Scalar::k()).unwrap();
    assert!(matches!(vertex_exp_modes(&f, &g, &gr, 0, -1), Err(ScreeningError::Cutoff(-1))));
    assert!(matches!(vertex_exp_modes(&f, &g, &gr, 5, 2), Err(ScreeningError::NoRoot(5))));
    let shifted = f.shifted(root_dual(&g, &gr, 0).unwrap());
    assert!(matches!(vertex_exp_modes(&shifted, &g, &gr, 0, 2), Err(ScreeningError::NonVacuum)));
    let op = vertex_exp_modes(&f, &g, &gr, 0, 2).unwrap();
    assert!(matches!(op.apply(&f, &VertexPoly::one(), 4), Err(ScreeningError::AboveCutoff(4, 2))));
    assert!(matches!(screening_kernel(&[op], &f, -1), Err(ScreeningError::EmptyComponent(-1))));
    let s = FockModule::free_field(&g, &gr, Flavor::Susy, &Scalar::k()).unwrap();
    assert!(matches!(identify_domains(&s, &f, &|x| x.clone(), &VertexPoly::one()), Err(ScreeningError::FlavorMismatch)));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn residue_is_linear(a in -5i64..5, b in -5i64..5, i in 0usize..4, j in 0usize..4) {
        let g = osp12();
        let gr = g.grade_decompose().unwrap();
        let f = FockModule::free_field(&g, &gr, Flavor::Susy, &Scalar::k()).unwrap();
        let op = vertex_exp_modes(&f, &g, &gr, 0, 5).unwrap();
        let basis = f.basis(5);
        let x = VertexPoly::monomial(basis[i % basis.len()].clone(), Scalar::from_int(a));
        let y = VertexPoly::monomial(basis[j % basis.len()].clone(), Scalar::from_int(b));
        let lhs = op.apply(&f, &x.add(&y), 5).unwrap();
        let rhs = op.apply(&f, &x, 5).unwrap().add(&op.apply(&f, &y, 5).unwrap());
        prop_assert_eq!(lhs, rhs);
    }
}
