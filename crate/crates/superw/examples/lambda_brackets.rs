//! Lambda-brackets and normally ordered products in the affine vertex algebra V^k(osp(1|2)).

use superw::liealg::osp12;
use superw::scalar::Scalar;
use superw::vertex::builders;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let v = builders::affine(&osp12(), &Scalar::k(), "J");
    let (e, f, h) = (v.try_g("J[e]")?, v.try_g("J[f]")?, v.try_g("J[H]")?);
    for (n, c) in v.lambda_bracket(&e, &f).coeffs.iter().enumerate() {
        println!("[J[e] λ J[f]] λ^{}: {}", n, v.text(c));
    }
    let hh = v.no(&h, &h);
    println!(":J[H] J[H]: = {}", v.text(&hh));
    println!("∂ :J[H] J[H]: = {}", v.text(&v.deriv(&hh)));
    let x = v.parse(":J[H] J[E]: + k*d(J[E])", None)?;
    for (n, c) in v.lambda_bracket(&f, &x).coeffs.iter().enumerate() {
        println!("[J[f] λ X] λ^{}: {}", n, v.text(c));
    }
    let rep = v.axiom_check(2);
    println!("axioms: {} pairs, {} triples, pass {}", rep.pairs_checked, rep.triples_checked, rep.pass());
    Ok(())
}
