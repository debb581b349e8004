//! One line per acceptance criterion. Criteria 9 and 10 fail on the reference data; the
//! test pins exactly which checks fail there and requires every other criterion to pass.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use superw::brst::{central_charge, CentralChargeForm};
use superw::cli::{run_criterion, CriterionReport, RunConfig, Status, CRITERIA};
use superw::liealg::osp12;
use superw::scalar::Scalar;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// `c(k)` for `osp(1|2)` from the non-SUSY form, evaluated term by term.
fn oracle_c(k: &BigRational) -> BigRational {
    let sdim = q(1, 1);
    let h_dual = q(3, 2);
    let hh = q(2, 1);
    let sdim_half = q(-1, 1);
    // I_+ = {E: m = 1, even; e: m = 1/2, odd}
    let roots = [(q(1, 1), 1i64), (q(1, 2), -1i64)];
    let mut sum = q(0, 1);
    for (m, sign) in roots {
        sum += q(sign, 1) * (q(12, 1) * &m * &m - q(12, 1) * &m + q(2, 1));
    }
    k * &sdim / (k + &h_dual) - q(3, 1) * k * hh - sum - q(1, 2) * sdim_half
}

/// Failing check names expected for the two criteria that do not reproduce.
fn pinned(id: u8) -> Option<(&'static [&'static str], &'static str)> {
    match id {
        9 => Some((&["reference w_Fb is a basis vector"], "ad e(w_Fb) = 1")),
        10 => Some((&["T^2 = 4C + 1/4", "w_Fb -> T under one normalization"], "4Q - 4C + 1")),
        _ => None,
    }
}

fn judge(rep: &CriterionReport, extra: Result<(), String>) -> Result<&'static str, String> {
    extra?;
    match (rep.status, pinned(rep.id)) {
        (Status::Pass, None) => Ok("PASS"),
        (Status::Fail, Some((names, note))) => {
            let got: Vec<&str> = rep.failures().map(|c| c.name.as_str()).collect();
            if got == names && rep.note.contains(note) {
                Ok("FAIL (pinned)")
            } else {
                Err(format!("unexpected failures {:?}, note `{}`", got, rep.note))
            }
        }
        (Status::Pass, Some(_)) => Err("expected the pinned failures".into()),
        (s, None) => {
            let got: Vec<String> = rep.failures().map(|c| format!("{}: {}", c.name, c.detail)).collect();
            Err(format!("{:?}: {}", s, got.join("; ")))
        }
        (s, Some(_)) => Err(format!("{:?}", s)),
    }
}

/// Criterion-specific checks on top of the suite report.
fn extra(id: u8, elapsed: Duration) -> Result<(), String> {
    match id {
        1 if elapsed > Duration::from_secs(60) => Err(format!("took {:?}", elapsed)),
        7 if elapsed > Duration::from_secs(300) => Err(format!("took {:?}", elapsed)),
        6 => {
            let want = oracle_c(&q(1, 1));
            if want != q(-81, 10) {
                return Err(format!("oracle gives {}", want));
            }
            let g = osp12();
            let gr = g.grade_decompose().map_err(|e| e.to_string())?;
            for form in [CentralChargeForm::NonSusy, CentralChargeForm::Susy] {
                for k in [1, 2, 5] {
                    let got = central_charge(&g, &gr, &Scalar::from_int(k), form);
                    if got != Scalar::from_rational(oracle_c(&q(k, 1))) {
                        return Err(format!("{:?} at k = {}: {}", form, k, got.factor_text()));
                    }
                }
            }
            Ok(())
        }
        _ => Ok(()),
    }
}

fn main() -> ExitCode {
    let cfg = RunConfig::default();
    let mut ok = true;
    for (id, title) in CRITERIA {
        let t = Instant::now();
        let rep = match run_criterion(id, &cfg) {
            Ok(r) => r,
            Err(e) => {
                println!("criterion {:>2} FAIL  {} ({})", id, title, e);
                ok = false;
                continue;
            }
        };
        let elapsed = t.elapsed();
        match judge(&rep, extra(id, elapsed)) {
            Ok(tag) => println!("criterion {:>2} {:<13} {} [{:.1}s]", id, tag, title, elapsed.as_secs_f64()),
            Err(e) => {
                println!("criterion {:>2} FAIL          {}: {}", id, title, e);
                ok = false;
            }
        }
    }
    if ok {
        println!("acceptance: ok");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: FAILED");
        ExitCode::FAILURE
    }
}
