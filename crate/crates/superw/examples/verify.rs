//! Runs the verification suite on sl(2|1) and prints the report.

use superw::cli::{verify_paper, AlgebraSource, RunConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = RunConfig { algebra: AlgebraSource::Builtin("sl21".into()), ..RunConfig::default() };
    let rep = verify_paper(&cfg)?;
    print!("{}", rep.text());
    Ok(())
}
