//! The SUSY BRST complex of osp(1|2): d² = 0, cohomology in low weight and the Miura map.

use superw::brst::{central_charge, CentralChargeForm, Complex, ComplexSpec, Flavor, Reduced};
use superw::liealg::osp12;
use superw::scalar::Scalar;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = osp12();
    let cx = Complex::new(ComplexSpec::new(&g, Flavor::Susy)?)?;
    println!("d² residuals: {}", cx.d_squared_residuals().len());
    let red = Reduced::new(&cx)?;
    let target = red.miura_target(&cx)?;
    for tw in 1..=4 {
        for w in red.cohomology_generators(tw)? {
            println!("weight {}/2: {}", tw, red.alg().text(&w));
            println!("  Miura image: {}", target.sub.text(&red.miura(&target, &w)));
        }
    }
    let gr = g.grade_decompose()?;
    let c = central_charge(&g, &gr, &Scalar::k(), CentralChargeForm::Susy);
    println!("central charge: {}", c.factor_text());
    Ok(())
}
