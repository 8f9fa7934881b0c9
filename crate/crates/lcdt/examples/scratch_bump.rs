use lcdt::corpus::corpus_default;
use lcdt::harness::{inversion_report, TransformCase};
use lcdt::measure::QuadratureSpec;
use lcdt::special::DunklOrder;
use lcdt::transform::CanonicalMatrix;

fn main() {
    let corpus = corpus_default(7);
    let entry = corpus
        .iter()
        .find(|e| e.signal.label.contains("trig-bump#2"))
        .unwrap();
    let m = CanonicalMatrix::fractional(std::f64::consts::FRAC_PI_6);
    let k = DunklOrder::new(1.5).unwrap();
    let quad = QuadratureSpec::default();
    let ctx = TransformCase::build(&entry.signal, &m, k, &quad).unwrap();
    let vals = ctx.spectrum.values();
    let peak = ctx.spectrum.sup_abs();
    let n = vals.len();
    println!("window {:.2}, samples {n}, peak {peak:.3e}", ctx.window);
    println!("|F(edge)|/peak = {:.3e}", vals[0].norm() / peak);
    println!("|F(mid-tail)|/peak = {:.3e}", vals[n / 8].norm() / peak);
    println!("interp_error estimate = {:.3e}", ctx.interp_error);
    let mut ctx = ctx;
    let r = inversion_report(&mut ctx).unwrap();
    println!("inversion rel err = {:.6e}", r.lhs);
}
