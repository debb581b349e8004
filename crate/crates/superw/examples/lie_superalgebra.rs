//! Structure checks and the Dynkin grading of the built-in Lie superalgebras.

use superw::liealg::{builtin, load_spec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("data/sl21.json");
    for g in [builtin("osp12")?, load_spec(&path)?] {
        println!("{}: dim {}, h∨ = {}", g.name, g.dim(), g.dual_coxeter.factor_text());
        for e in &g.check_algebra().entries {
            println!("  {:<24} {}", e.name, if e.pass { "ok" } else { e.detail.as_str() });
        }
        let gr = g.grade_decompose()?;
        let names = |idx: Vec<usize>| idx.iter().map(|&i| g.names[i].clone()).collect::<Vec<_>>().join(" ");
        println!("  g_0 = {{{}}}, g_1/2 = {{{}}}, n_+ = {{{}}}", names(gr.g0()), names(gr.g_half()), names(gr.n_plus()));
    }
    Ok(())
}
