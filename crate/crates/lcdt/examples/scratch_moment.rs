use lcdt::corpus::make_gaussian;
use lcdt::measure::{weighted_moment_norm, QuadratureSpec};
use lcdt::special::DunklOrder;
use std::time::Instant;
fn main() {
    // the formerly non-converging case: fractional |x|^{αp} with 2k+1 = 0
    let f = make_gaussian(0.5, -1.0).unwrap();
    let k = DunklOrder::new(-0.5).unwrap();
    let quad = QuadratureSpec::default();
    for (alpha, p) in [(0.1, 1.25), (0.5 / 3.0, 1.5), (0.25, 2.0), (1.0, 2.0)] {
        let t0 = Instant::now();
        let v = weighted_moment_norm(&f, alpha, p, k, &quad);
        println!("alpha={alpha:.4} p={p}: {v:?}  ({:?})", t0.elapsed());
    }
    // closed-form check: ‖|x|^α f‖_p^p = ∫|x|^{αp} e^{-0.5 p x²} dx/√(2π)
    //   = Γ((αp+1)/2) (p/2)^{-(αp+1)/2} / √(2π)   [via 2∫_0^∞ x^{a}e^{-cx²}]
    let (alpha, p) = (0.25f64, 2.0f64);
    let a = alpha * p;
    let c = 0.5 * p;
    let exact_pow = lcdt::special::log_gamma((a + 1.0) / 2.0).unwrap().exp()
        * c.powf(-(a + 1.0) / 2.0)
        / (2.0 * std::f64::consts::PI).sqrt();
    let exact = exact_pow.powf(1.0 / p);
    let got = weighted_moment_norm(&f, alpha, p, k, &quad).unwrap();
    println!(
        "closed form {exact:.15}  got {got:.15}  rel {:.2e}",
        (got / exact - 1.0).abs()
    );
}
