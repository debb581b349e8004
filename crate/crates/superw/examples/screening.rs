//! Screening operators on the free-field Fock module and their joint kernel.

use superw::brst::Flavor;
use superw::liealg::sl21;
use superw::scalar::Scalar;
use superw::screening::{screening_kernel, screenings, FockModule};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = sl21();
    let gr = g.grade_decompose()?;
    for fl in [Flavor::NonSusy, Flavor::Susy] {
        let f = FockModule::free_field(&g, &gr, fl, &Scalar::k())?;
        let ops = screenings(&f, &g, &gr, 4)?;
        println!("{}: {} screening operators", fl, ops.len());
        for tw in 0..=4 {
            let ker = screening_kernel(&ops, &f, tw)?;
            println!("  weight {}/2: kernel dimension {}", tw, ker.len());
            for v in ker.iter().take(2) {
                println!("    {}", f.alg.text(v));
            }
        }
    }
    Ok(())
}
