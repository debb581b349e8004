use std::path::PathBuf;
use std::process::{Command, Output};

use superw::brst::Flavor;
use superw::cli::{evaluate, run_criterion, verify_paper, AlgebraSource, RunConfig, Status};

fn superw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_superw")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn cfg(algebra: &str) -> RunConfig {
    RunConfig { algebra: AlgebraSource::Builtin(algebra.into()), ..RunConfig::default() }
}

#[test]
fn compute_one() {
    let o = superw(&["compute", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1\n");
}

#[test]
fn miura_of_omega_fb() {
    let ev = evaluate(&cfg("osp12"), "miura(omega(Fb))").unwrap();
    assert_eq!(ev.kind, "miura");
    assert_eq!(ev.flavor, "susy");
    assert_eq!(ev.result, "((1/4)*k + 3/8)*:J[Hb] DJ[Hb]: + ((1/2)*k^2 + (5/4)*k + 3/4)*d(J[Hb])");
}

#[test]
fn omega_matches_the_sl21_generators() {
    let c = cfg("sl21");
    assert_eq!(evaluate(&c, "omega(ftb)").unwrap().result, "(-1/2)*:J[Hb] J[Ub]: + (-k - 1)*DJ[Ub] + J[ftb]");
    let w = evaluate(&c, "omega(Fb)").unwrap().result;
    let d = evaluate(&c, &format!("d0({})", w)).unwrap().result;
    assert_eq!(d, "0");
}

#[test]
fn lambda_brackets() {
    let c = cfg("osp12");
    assert_eq!(evaluate(&c, "Lambda(J[fb], J[fb])").unwrap().result, "((-2)*J[Fb])");
    assert_eq!(evaluate(&c, "Lambda(J[Hb], J[Hb])").unwrap().result, "chi*((2*k + 3))");
    let ev = evaluate(&c, "lambda(J[H], J[H])").unwrap();
    assert_eq!((ev.flavor.as_str(), ev.result.as_str()), ("nonsusy", "lambda*((2*k + 3))"));
}

#[test]
fn d0_and_q_agree_through_zhu() {
    let c = RunConfig { flavor: Some(Flavor::Susy), ..cfg("osp12") };
    let direct = evaluate(&c, "zhu(d0(J[Fb]))").unwrap().result;
    let induced = evaluate(&c, "Q(J[Fb])").unwrap().result;
    assert_eq!(direct, induced);
    assert_eq!(evaluate(&c, "Q(Q(J[Fb]))").unwrap().result, "0");
    assert_eq!(evaluate(&c, "d0(d0(J[Fb]))").unwrap().result, "0");
}

#[test]
fn enveloping_algebra_expressions() {
    let c = cfg("osp12");
    assert_eq!(evaluate(&c, "reduce(eb)").unwrap().result, "1");
    let ev = evaluate(&c, "ad(eb, x x)").unwrap();
    assert_eq!(ev.kind, "env");
    assert_eq!(ev.result, evaluate(&c, "reduce(-x + 1/4)").unwrap().result);
    assert_eq!(evaluate(&c, "ad(e, x x)").unwrap().result, "0");
    let e = evaluate(&c, "ad(x, F)").unwrap_err();
    assert_eq!(e.pos, 3);
}

#[test]
fn parse_errors_carry_positions() {
    let c = cfg("osp12");
    let e = evaluate(&c, "d0(J[Fb] + J[zz])").unwrap_err();
    assert!(!e.is_setup());
    assert!(e.msg.contains("J[zz]"), "{}", e.msg);
    assert!(e.pos >= 3 && e.pos <= 11, "{}", e.pos);
    assert_eq!(evaluate(&c, "d0(J[Fb]").unwrap_err().pos, 8);
    assert_eq!(evaluate(&c, "lambda(J[Fb])").unwrap_err().pos, 0);
    let o = superw(&["compute", "lambda(J[Fb]"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("at byte"));
}

#[test]
fn output_is_deterministic() {
    let a = superw(&["--algebra", "sl21", "--json", "compute", "Lambda(J[Fb], J[Fb])"]);
    let b = superw(&["--algebra", "sl21", "--json", "compute", "Lambda(J[Fb], J[Fb])"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["schema"], "superw-compute/1");
    assert_eq!(v["kind"], "lambda");
}

#[test]
fn bracket_subcommand_forms() {
    let one = superw(&["bracket", "Lambda(J[fb], J[fb])", "--algebra", "osp12"]);
    let two = superw(&["bracket", "J[fb]", "J[fb]", "--algebra", "osp12"]);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(stdout(&one), stdout(&two));
    let plain = superw(&["bracket", "J[H]", "J[H]"]);
    assert_eq!(stdout(&plain), "lambda*((2*k + 3))\n");
    assert_eq!(superw(&["bracket", "J[H]"]).status.code(), Some(2));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(superw(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(superw(&["--cutoff", "0", "verify-paper"]).status.code(), Some(2));
    assert_eq!(superw(&["--flavor", "n2", "compute", "1"]).status.code(), Some(2));
    assert_eq!(superw(&["--algebra", "g2", "compute", "1"]).status.code(), Some(2));
    assert_eq!(superw(&["--algebra", "sl21", "--sample-k", "-1", "verify-paper"]).status.code(), Some(2));
    assert_eq!(superw(&["--corrupt", "nothing", "verify-paper"]).status.code(), Some(2));
    assert_eq!(superw(&["--spec-file", "/nonexistent.json", "verify-paper"]).status.code(), Some(2));
}

#[test]
fn corrupted_jacobi_fails_at_the_axiom_stage() {
    let o = superw(&["verify-paper", "--algebra", "osp12", "--corrupt", "jacobi"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.starts_with("[FAIL]  1"), "{}", out);
    assert_eq!(out.matches("axiom stage failed").count(), 11);
}

#[test]
fn corrupted_algebras_fail_criterion_one() {
    for axiom in ["jacobi", "skew", "form"] {
        let c = RunConfig { corrupt: Some(axiom.into()), ..cfg("sl21") };
        let rep = verify_paper(&c).unwrap();
        assert!(!rep.pass);
        assert_eq!(rep.criteria[0].status, Status::Fail, "{}", axiom);
        assert!(rep.criteria[1..].iter().all(|c| c.status == Status::Skipped));
    }
}

#[test]
fn sl21_suite_passes() {
    let o = superw(&["verify-paper", "--algebra", "sl21", "--json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema"], "superw-report/1");
    assert_eq!(v["pass"], true);
    let skipped: Vec<u64> = v["criteria"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["status"] == "skipped")
        .map(|c| c["id"].as_u64().unwrap())
        .collect();
    assert_eq!(skipped, [4, 9, 10]);
}

#[test]
fn osp12_suite_reports_the_two_reference_mismatches() {
    let o = superw(&["verify-paper", "--algebra", "osp12"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    let fails: Vec<&str> = out.lines().filter(|l| l.starts_with("[FAIL]")).collect();
    assert_eq!(fails, ["[FAIL]  9 finite SUSY W-algebra of osp(1|2)", "[FAIL] 10 ghost center of U(osp(1|2))"]);
}

#[test]
fn spec_file_matches_builtin() {
    let path = data("osp12.json");
    let c = RunConfig { algebra: AlgebraSource::File(path.clone()), ..RunConfig::default() };
    assert_eq!(run_criterion(4, &c).unwrap().status, Status::Pass);
    let o = superw(&["--spec-file", path.to_str().unwrap(), "compute", "miura(omega(Fb))"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), stdout(&superw(&["--algebra", "osp12", "miura", "omega(Fb)"])));
}

#[test]
fn flavor_restriction() {
    let c = RunConfig { flavor: Some(Flavor::NonSusy), ..cfg("osp12") };
    let rep = run_criterion(2, &c).unwrap();
    assert_eq!(rep.status, Status::Pass);
    assert!(rep.checks.iter().all(|ch| ch.name.contains("nonsusy")));
    assert!(evaluate(&c, "D(J[H])").is_err());
}
