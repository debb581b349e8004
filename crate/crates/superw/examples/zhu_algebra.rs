//! The Zhu algebra of the SUSY complex and the induced differential Q.

use superw::brst::{Complex, ComplexSpec, Flavor};
use superw::liealg::osp12;
use superw::zhu::{wfin_closure, SusyZhu};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cx = Complex::new(ComplexSpec::new(&osp12(), Flavor::Susy)?)?;
    let sz = SusyZhu::new(&cx)?;
    for (label, checks) in [
        ("bracket table", sz.bracket_table()),
        ("Q on generators", sz.q_formulas()),
        ("Q² = 0", sz.q_squared()),
        ("U(r_-) relations", sz.r_minus_relations()),
        ("closure of U(r_±)", wfin_closure(&sz)),
    ] {
        let bad = checks.iter().filter(|c| !c.pass).count();
        println!("{:<18} {} identities, {} failing", label, checks.len(), bad);
    }
    for c in sz.q_formulas().iter().take(4) {
        println!("  {} {}", if c.pass { "ok  " } else { "FAIL" }, c.name);
    }
    Ok(())
}
