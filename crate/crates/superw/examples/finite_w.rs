//! Finite SUSY W-algebra of osp(1|2): invariants of the Takiff enveloping algebra.

use superw::env::{adjoint_action, finite_w_invariants, NilCharacter, TakiffAlgebra};
use superw::liealg::osp12_x;
use superw::scalar::Scalar;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let t = TakiffAlgebra::new(&osp12_x(), Scalar::one())?;
    let chi = NilCharacter::explicit(&t, &[("eb", -&Scalar::one())])?;
    let e = &t.env;
    println!("PBW order: {}", e.names.join(" "));
    let basis = finite_w_invariants(&t, &chi, 2)?;
    for w in &basis {
        println!("invariant: {}", e.text(w));
        for n in t.n_start..e.ngens() {
            println!("  ad {}: {}", e.names[n], e.text(&adjoint_action(&t, n, w, &chi)));
        }
    }
    let x2 = e.parse("x x")?;
    println!("ad eb(x x) = {}", e.text(&adjoint_action(&t, t.idx("eb"), &x2, &chi)));
    Ok(())
}
