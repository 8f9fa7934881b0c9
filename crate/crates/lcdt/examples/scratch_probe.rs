use lcdt::corpus::{make_gaussian, make_smooth_bump, make_trig_bump};
use lcdt::measure::{lp_norm, mu_weight, QuadratureSpec, Signal};
use lcdt::quad::{gauss_legendre, uniform_panels};
use lcdt::special::DunklOrder;
use lcdt::transform::{lcdt_forward, spectral_oscillation, spectral_window, CanonicalMatrix};
use std::time::Instant;

fn spectrum_l2(f: &Signal, m: &CanonicalMatrix, k: DunklOrder, quad: &QuadratureSpec) -> f64 {
    let half = spectral_window(f, m);
    let osc = spectral_oscillation(f) / m.b().abs();
    let rule = gauss_legendre(quad.nodes_per_panel);
    let mut panels_n = ((2.0 * half * osc / quad.nodes_per_panel as f64).ceil() as usize).max(8);
    let eval = |pn: usize| -> f64 {
        let mut grid = Vec::new();
        let mut w = Vec::new();
        for p in uniform_panels(-half, half, pn) {
            let mid = 0.5 * (p.lo + p.hi);
            let h = 0.5 * (p.hi - p.lo);
            for (&t, &wt) in rule.nodes.iter().zip(&rule.weights) {
                grid.push(mid + h * t);
                w.push(wt * h);
            }
        }
        let mut idx: Vec<usize> = (0..grid.len()).collect();
        idx.sort_by(|&i, &j| grid[i].partial_cmp(&grid[j]).unwrap());
        let sg: Vec<f64> = idx.iter().map(|&i| grid[i]).collect();
        let s = lcdt_forward(f, m, k, &sg, quad).unwrap();
        let mut acc = 0.0;
        for (pos, &i) in idx.iter().enumerate() {
            acc += w[i] * s.values()[pos].norm_sqr() * mu_weight(k, sg[pos]);
        }
        acc
    };
    let mut cur = eval(panels_n);
    loop {
        let next = eval(panels_n * 2);
        if (next - cur).abs() <= 1e-10 * next.abs() {
            return next.sqrt();
        }
        panels_n *= 2;
        cur = next;
        if panels_n > 4096 {
            panic!("no converge");
        }
    }
}

fn main() {
    let quad = QuadratureSpec::default();
    for (label, f, m, k) in [
        (
            "bump r=2 / dunkl / k=1.5",
            make_smooth_bump(2.0).unwrap(),
            CanonicalMatrix::fractional(std::f64::consts::FRAC_PI_2),
            1.5,
        ),
        (
            "trig r=3.5 / b=-2 / k=1.5",
            make_trig_bump(3.5, &[(0.8, 3.9, 0.3), (0.5, 2.2, 1.0), (0.9, 1.1, 2.0)]).unwrap(),
            CanonicalMatrix::new(1.0, -2.0, 1.0, -1.0).unwrap(),
            1.5,
        ),
        (
            "gauss s=0.5 / shear / k=0",
            make_gaussian(0.5, 0.0).unwrap(),
            CanonicalMatrix::new(1.0, 1.0, 0.0, 1.0).unwrap(),
            0.0,
        ),
        (
            "chirped s=2 w=1.5 / theta=pi/6 / k=0.5",
            make_gaussian(2.0, 1.5).unwrap(),
            CanonicalMatrix::fractional(std::f64::consts::FRAC_PI_6),
            0.5,
        ),
    ] {
        let k = DunklOrder::new(k).unwrap();
        let t0 = Instant::now();
        let sn = spectrum_l2(&f, &m, k, &quad);
        let fnorm = lp_norm(&f, 2.0, k, &quad).unwrap();
        println!(
            "{label}: window={:.1} ratio-1 = {:+.3e}   ({:?})",
            spectral_window(&f, &m),
            sn / fnorm - 1.0,
            t0.elapsed()
        );
    }
}
