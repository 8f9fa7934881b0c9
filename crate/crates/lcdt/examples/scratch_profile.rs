use lcdt::special::{DunklOrder, KernelEvaluator};
use std::time::Instant;

fn main() {
    let k = DunklOrder::new(0.5).unwrap();
    let ev = KernelEvaluator::new(k);
    for (lo, hi, label) in [
        (0.0, 9.0, "f64 series"),
        (9.0, 30.0, "dd series"),
        (30.0, 110.0, "asymptotic"),
    ] {
        let n = 200_000;
        let t0 = Instant::now();
        let mut acc = 0.0;
        for i in 0..n {
            let u = lo + (hi - lo) * (i as f64 + 0.5) / n as f64;
            let v = ev.eval(u, 1.0);
            acc += v.re + v.im;
        }
        let dt = t0.elapsed();
        println!(
            "{label}: {:.0} ns/eval (acc {acc:.3})",
            dt.as_nanos() as f64 / n as f64
        );
    }
    // realistic mix for gauss case: u = mu * x, mu in 0..12, x in 0..9.2
    let n = 1000;
    let t0 = Instant::now();
    let mut acc = 0.0;
    for i in 0..n {
        let mu = 12.0 * i as f64 / n as f64;
        for j in 0..1900 {
            let x = 9.2 * (j as f64 + 0.5) / 1900.0;
            let v = ev.eval(mu, x);
            acc += v.re;
        }
    }
    println!(
        "mix: {:.0} ns/eval (acc {acc:.0})",
        t0.elapsed().as_nanos() as f64 / (n * 1900) as f64
    );
}
