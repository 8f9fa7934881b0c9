//! Deterministic families of test signals with exact metadata (decay radius,
//! support, spectral profile) feeding the verification suites.
//!
//! Every entry is reproducible from `(family, params, seed)` alone; the random
//! family draws from a fixed portable generator (ChaCha8) in a fixed order.
//!
//! The default corpus has 23 entries. The 20 with super-polynomially decaying
//! spectra (`transform_sweep = true`) form the sweep used by the transform-side
//! checks: indicator spectra decay only like `|λ|^{-(k+3/2)}`, so truncated
//! quadrature cannot certify Plancherel-grade identities on them, and they
//! participate in the signal-side inequalities and set-measure checks instead.

use crate::measure::{Signal, SpectralProfile};
use crate::{Error, Result};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Gaussian,
    ChirpedGaussian,
    PolyGaussian,
    Indicator,
    SmoothBump,
    RandomTrigBump,
}

/// One corpus signal plus its reproducibility metadata.
#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub signal: Signal,
    pub family: Family,
    pub params: BTreeMap<String, f64>,
    /// Spectrum decays fast enough for 1e-6 Plancherel/inversion sweeps.
    pub transform_sweep: bool,
}

/// `x ↦ e^{-(s_re + i·s_im)x²}`, decay radius `√(36/s_re)`.
pub fn make_gaussian(s_re: f64, s_im: f64) -> Result<Signal> {
    if !(s_re > 0.0) {
        return Err(Error::Domain(format!(
            "gaussian rate must be positive, got {s_re}"
        )));
    }
    let label = if s_im == 0.0 {
        format!("gaussian(s={s_re})")
    } else {
        format!("chirped-gaussian(s={s_re},w={s_im})")
    };
    Ok(Signal::new(label, (36.0 / s_re).sqrt(), move |x| {
        (-Complex64::new(s_re, s_im) * x * x).exp()
    })
    .with_spectral(SpectralProfile::GaussianDecay {
        s: s_re,
        w: s_im,
        poly_deg: 0,
    }))
}

/// `x ↦ x^m e^{-δx²}` for `m ≤ 6`.
pub fn make_poly_gaussian(m: u32, delta: f64) -> Result<Signal> {
    if m > 6 {
        return Err(Error::ParameterOutOfRange(format!(
            "degree must be ≤ 6, got {m}"
        )));
    }
    if !(delta > 0.0) {
        return Err(Error::Domain(format!(
            "delta must be positive, got {delta}"
        )));
    }
    let radius = ((36.0 + 3.0 * m as f64) / delta).sqrt();
    let mut signal = Signal::new(
        format!("poly-gaussian(m={m},δ={delta})"),
        radius,
        move |x| Complex64::new(x.powi(m as i32) * (-delta * x * x).exp(), 0.0),
    )
    .with_spectral(SpectralProfile::GaussianDecay {
        s: delta,
        w: 0.0,
        poly_deg: m,
    });
    if m > 0 {
        // |x^m e^{-δx²}| peaks at ±√(m/2δ)
        let peak = (m as f64 / (2.0 * delta)).sqrt();
        signal.critical_points = vec![0.0, peak, -peak];
    }
    Ok(signal)
}

/// `χ_{(-r,r)}` with exact support metadata.
pub fn make_indicator(r: f64) -> Result<Signal> {
    if !(r > 0.0) {
        return Err(Error::Domain(format!(
            "indicator radius must be positive, got {r}"
        )));
    }
    Ok(Signal::new(format!("indicator(r={r})"), r, move |x| {
        Complex64::new(if x.abs() < r { 1.0 } else { 0.0 }, 0.0)
    })
    .with_support(-r, r)
    .with_spectral(SpectralProfile::CompactRough { support_radius: r }))
}

/// `x ↦ exp(1 - 1/(1 - (x/r)²))` on `(-r, r)`, zero outside; equals 1 at 0.
pub fn make_smooth_bump(r: f64) -> Result<Signal> {
    if !(r > 0.0) {
        return Err(Error::Domain(format!(
            "bump radius must be positive, got {r}"
        )));
    }
    Ok(Signal::new(format!("smooth-bump(r={r})"), r, move |x| {
        let t = x / r;
        if t.abs() >= 1.0 {
            Complex64::new(0.0, 0.0)
        } else {
            Complex64::new((1.0 - 1.0 / (1.0 - t * t)).exp(), 0.0)
        }
    })
    .with_support(-r, r)
    .with_spectral(SpectralProfile::CompactSmooth {
        support_radius: r,
        freq_shift: 0.0,
    }))
}

/// Smooth bump times a finite trigonometric sum `Σ aⱼ e^{i(ωⱼx + φⱼ)}`.
pub fn make_trig_bump(r: f64, terms: &[(f64, f64, f64)]) -> Result<Signal> {
    if !(r > 0.0) || terms.is_empty() {
        return Err(Error::Domain(
            "bump radius must be positive and terms nonempty".into(),
        ));
    }
    let terms = terms.to_vec();
    let freq_max = terms.iter().fold(0.0f64, |m, &(_, w, _)| m.max(w.abs()));
    Ok(
        Signal::new(format!("trig-bump(r={r},n={})", terms.len()), r, move |x| {
            let t = x / r;
            if t.abs() >= 1.0 {
                return Complex64::new(0.0, 0.0);
            }
            let bump = (1.0 - 1.0 / (1.0 - t * t)).exp();
            let mut acc = Complex64::new(0.0, 0.0);
            for &(a, w, phi) in &terms {
                acc += a * Complex64::from_polar(1.0, w * x + phi);
            }
            bump * acc
        })
        .with_support(-r, r)
        .with_spectral(SpectralProfile::CompactSmooth {
            support_radius: r,
            freq_shift: freq_max,
        }),
    )
}

/// The deterministic default corpus: 23 entries spanning all six families,
/// 20 of them flagged for the transform sweep.
pub fn corpus_default(seed: u64) -> Vec<CorpusEntry> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut entries = Vec::new();
    let mut push = |signal: Signal, family: Family, params: Vec<(&str, f64)>, sweep: bool| {
        let params: BTreeMap<String, f64> = params
            .into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect();
        entries.push(CorpusEntry {
            signal: signal.with_seed(seed),
            family,
            params,
            transform_sweep: sweep,
        });
    };

    for s in [0.5, 1.0, 2.0, 3.7] {
        push(
            make_gaussian(s, 0.0).unwrap(),
            Family::Gaussian,
            vec![("s", s)],
            true,
        );
    }
    for (s, w) in [(1.0, 0.5), (0.5, -1.0), (2.0, 1.5), (1.2, 0.8)] {
        push(
            make_gaussian(s, w).unwrap(),
            Family::ChirpedGaussian,
            vec![("s", s), ("w", w)],
            true,
        );
    }
    for (m, delta) in [
        (1u32, 1.0),
        (2, 0.5),
        (3, 1.0),
        (4, 2.0),
        (2, 2.0),
        (1, 0.5),
    ] {
        push(
            make_poly_gaussian(m, delta).unwrap(),
            Family::PolyGaussian,
            vec![("m", m as f64), ("delta", delta)],
            true,
        );
    }
    for r in [2.0, 3.0] {
        push(
            make_smooth_bump(r).unwrap(),
            Family::SmoothBump,
            vec![("r", r)],
            true,
        );
    }
    for (i, r) in [2.0, 2.5, 3.0, 3.5].into_iter().enumerate() {
        // three random modulation terms per entry, drawn in a fixed order
        let mut terms = Vec::new();
        let mut params: Vec<(&str, f64)> = vec![("r", r)];
        const NAMES: [(&str, &str, &str); 3] = [
            ("a0", "w0", "phi0"),
            ("a1", "w1", "phi1"),
            ("a2", "w2", "phi2"),
        ];
        for names in NAMES {
            let a = rng.gen_range(0.3..1.0);
            let w = rng.gen_range(0.5..4.0);
            let phi = rng.gen_range(0.0..std::f64::consts::TAU);
            terms.push((a, w, phi));
            params.push((names.0, a));
            params.push((names.1, w));
            params.push((names.2, phi));
        }
        let mut signal = make_trig_bump(r, &terms).unwrap();
        signal.label = format!("trig-bump#{i}(r={r})");
        push(signal, Family::RandomTrigBump, params, true);
    }
    for r in [0.5, 1.0, 2.0] {
        push(
            make_indicator(r).unwrap(),
            Family::Indicator,
            vec![("r", r)],
            false,
        );
    }
    entries
}

/// JSON manifest of a corpus: family, params, and seed per entry.
#[derive(Serialize)]
pub struct CorpusManifest {
    pub seed: u64,
    pub entries: Vec<ManifestEntry>,
}

#[derive(Serialize)]
pub struct ManifestEntry {
    pub label: String,
    pub family: Family,
    pub params: BTreeMap<String, f64>,
    pub transform_sweep: bool,
}

pub fn corpus_manifest(seed: u64, entries: &[CorpusEntry]) -> CorpusManifest {
    CorpusManifest {
        seed,
        entries: entries
            .iter()
            .map(|e| ManifestEntry {
                label: e.signal.label.clone(),
                family: e.family,
                params: e.params.clone(),
                transform_sweep: e.transform_sweep,
            })
            .collect(),
    }
}
