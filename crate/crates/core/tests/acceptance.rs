//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::f64::consts::{LN_2, PI};
use std::process::ExitCode;
use std::time::Instant;

use num_complex::Complex64;
use photodist_core::entropy::{
    f_coherent_inequality, poisson_information_closed_form, poisson_residue_information_trig,
    q_coherent_information,
};
use photodist_core::photon_dist::{adaptive, PhotonDistribution};
use photodist_core::{
    block_entropies, complex_information_with, deformed_distribution, information, mean_photon_xyt,
    pn_centered_xyt, pn_hermite, pn_laguerre, pn_violation, two_mode_p2k, violation_exact, Classification,
    ComplexReading, DeformationSpec, FConvention, OneModeGaussianState, PartitionScheme, XYTState,
};
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn ln_fact(n: usize) -> f64 {
    (1..=n).map(|k| (k as f64).ln()).sum()
}

fn valid_grid(count: usize, seed: u64) -> Vec<XYTState> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let x = rng.gen_range(0.5..=3.0);
        let y = rng.gen_range(0.5..=3.0);
        let t = rng.gen_range(0.0..=0.4);
        if x * y - t * t - 0.25 >= 0.01 {
            out.push(XYTState { x, y, t });
        }
    }
    out
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    let d = (a - b).norm();
    if d == 0.0 {
        0.0
    } else {
        d / b.norm()
    }
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for s in valid_grid(200, 1) {
        let reference = pn_centered_xyt(&s, 40).expect("centered form");
        let state = s.to_state();
        let h = pn_hermite(&state, 40).expect("hermite");
        let l = pn_laguerre(&state, 40).expect("laguerre");
        for n in 0..=40 {
            worst = worst.max(rel(h.get(n), reference.get(n))).max(rel(l.get(n), reference.get(n)));
        }
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(worst <= 1e-9 && secs < 60.0, format!("max rel err {worst:.2e}, {secs:.1} s"))
}

fn criterion_2() -> Outcome {
    let mut worst = 0.0f64;
    for s in valid_grid(200, 1) {
        let d = adaptive(|n| pn_hermite(&s.to_state(), n)).expect("adaptive");
        worst = worst.max((d.total().re - 1.0).abs());
    }
    let grid = [0.0, 0.25, 0.5, 0.8];
    let mut worst2 = 0.0f64;
    for &s1 in &grid {
        for &s2 in &grid {
            let mut total = 0.0;
            for k in 0..5000 {
                let p = two_mode_p2k(s1, s2, k).expect("p2k");
                total += p;
                if k > 0 && p < 1e-20 {
                    break;
                }
            }
            worst2 = worst2.max((total - 1.0).abs());
        }
    }
    outcome(
        worst <= 1e-9 && worst2 <= 1e-9,
        format!("one-mode max |Σ-1| {worst:.2e}, two-mode max |Σ-1| {worst2:.2e}"),
    )
}

/// `sech r (tanh r / 2)^{2m} (2m)! / (m!)^2`.
fn squeezed_law(r: f64, n: usize) -> f64 {
    if n % 2 == 1 {
        return 0.0;
    }
    let m = n / 2;
    if r == 0.0 {
        return if m == 0 { 1.0 } else { 0.0 };
    }
    (-r.cosh().ln() + n as f64 * (r.tanh() / 2.0).ln() + ln_fact(n) - 2.0 * ln_fact(m)).exp()
}

fn criterion_3() -> Outcome {
    let mut worst_even = 0.0f64;
    let mut worst_odd = 0.0f64;
    for r in [0.5, 1.0, 2.0] {
        let d = pn_hermite(&OneModeGaussianState::squeezed_vacuum(r), 60).expect("hermite");
        for n in 0..=60 {
            let v = d.get(n);
            if n % 2 == 0 {
                worst_even = worst_even.max((v - squeezed_law(r, n)).norm());
            } else {
                worst_odd = worst_odd.max(v.norm());
            }
        }
    }
    outcome(
        worst_even <= 1e-10 && worst_odd < 1e-12,
        format!("max |ΔP_2n| {worst_even:.2e}, max |P_2n+1| {worst_odd:.2e}"),
    )
}

fn poisson(x: f64) -> PhotonDistribution {
    adaptive(|n| deformed_distribution(&DeformationSpec::poisson(x), n)).expect("poisson")
}

fn criterion_4() -> Outcome {
    // the closed form is the even/odd (residue) entropy h_sub2 of the pair partition
    let mut worst = 0.0f64;
    for x in [0.1, 0.5, 1.0, 2.0, 5.0, 10.0] {
        let r = block_entropies(&poisson(x), PartitionScheme::pairs()).expect("entropies");
        worst = worst.max((r.h_sub2 - poisson_information_closed_form(x)).abs());
    }
    let small = block_entropies(&poisson(1e-12), PartitionScheme::pairs()).expect("entropies").h_sub2;
    let large = block_entropies(&poisson(20.0), PartitionScheme::pairs()).expect("entropies").h_sub2;
    outcome(
        worst <= 1e-10 && small.abs() < 1e-9 && (large - LN_2).abs() < 1e-6,
        format!("max |Δ| {worst:.2e}, I(1e-12) = {small:.2e}, |I(20) - ln 2| = {:.2e}", (large - LN_2).abs()),
    )
}

fn roots_of_unity_mass(x: f64, m: usize, j: usize) -> f64 {
    let s: Complex64 = (0..m)
        .map(|q| {
            let w = Complex64::from_polar(1.0, 2.0 * PI * q as f64 / m as f64);
            (x * (w - 1.0)).exp() * w.powi(-(j as i32))
        })
        .sum();
    s.re / m as f64
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut min_info = f64::INFINITY;
    for _ in 0..500 {
        let len = rng.gen_range(1..=256);
        let raw: Vec<f64> = (0..len).map(|_| rng.gen::<f64>()).collect();
        let total: f64 = raw.iter().sum();
        let mut v: Vec<f64> = raw.iter().map(|p| p / total).collect();
        v.extend([0.0, 0.0]);
        let d = PhotonDistribution::from_real(v);
        for m in [2, 3, 5] {
            let i = information(&d, PartitionScheme::new(m).unwrap()).expect("probability");
            min_info = min_info.min(i);
        }
    }
    let mut worst = 0.0f64;
    let mut trig_gap = 0.0f64;
    for x in [0.1, 0.5, 1.0, 2.0, 5.0] {
        let truth: f64 = (0..3)
            .map(|j| {
                let p = roots_of_unity_mass(x, 3, j);
                -p * p.ln()
            })
            .sum();
        let r = block_entropies(&poisson(x), PartitionScheme::new(3).unwrap()).expect("entropies");
        worst = worst.max((r.h_sub2 - truth).abs());
        trig_gap = trig_gap.max((poisson_residue_information_trig(x) - truth).abs());
    }
    outcome(
        min_info >= -1e-12 && worst <= 1e-10,
        format!(
            "min information {min_info:.2e}, m=3 max |Δ| {worst:.2e}; three-class trig form off by up to {trig_gap:.3e} (documented discrepancy)"
        ),
    )
}

fn criterion_6() -> Outcome {
    let mut worst = 0.0f64;
    for k in 0..=150 {
        let r = k as f64 * 0.02;
        let d = adaptive(|n| deformed_distribution(&DeformationSpec::squeezed_vacuum(r), n)).expect("squeezed");
        worst = worst.max(information(&d, PartitionScheme::pairs()).expect("probability").abs());
    }
    for r in [0.3, 1.0, 2.0] {
        let d = adaptive(|n| pn_hermite(&OneModeGaussianState::squeezed_vacuum(r), n)).expect("hermite");
        worst = worst.max(information(&d, PartitionScheme::pairs()).expect("probability").abs());
    }
    outcome(worst <= 1e-12, format!("max |I| {worst:.2e} over r ∈ [0, 3]"))
}

fn bounded_adaptive(tau: f64) -> PhotonDistribution {
    let mut n = 32;
    loop {
        let d = violation_exact(tau, 5.0, 0.0, n).expect("violation");
        if d.tail_bound() < 1e-12 || n >= 512 {
            return d;
        }
        n *= 2;
    }
}

/// `-i (2l)! 2^{6l+1/2} 5^{2l+1/2} (215/4)^{-(2l+1/2)} Σ_k (17/4096)^k / (k! ((2(l-k))!)^2)`.
fn tau4_even(l: usize) -> Complex64 {
    let inner: f64 = (0..=l)
        .map(|k| (k as f64 * (17.0f64 / 4096.0).ln() - ln_fact(k) - 2.0 * ln_fact(2 * (l - k))).exp())
        .sum();
    let e = 2.0 * l as f64 + 0.5;
    let ln_mag = ln_fact(2 * l) + (6.0 * l as f64 + 0.5) * LN_2 + e * 5f64.ln() - e * (215.0f64 / 4.0).ln();
    Complex64::new(0.0, -ln_mag.exp() * inner)
}

fn criterion_7() -> Outcome {
    let wrong: Vec<f64> = (-1000i32..=1000)
        .into_par_iter()
        .filter_map(|k| {
            let tau = k as f64 * 1e-3;
            let probability = bounded_adaptive(tau).classification() == Classification::Probability;
            (probability != (k <= 0)).then_some(tau)
        })
        .collect();
    let d = pn_violation(4.0, 5.0, 0.0, 20).expect("violation form");
    let mut worst = 0.0f64;
    let mut imaginary = true;
    for l in 0..=10 {
        let v = d.get(2 * l);
        worst = worst.max(rel(v, tau4_even(l)));
        imaginary &= v.re == 0.0 && v.im != 0.0;
    }
    let mean = mean_photon_xyt(-0.75, 5.0).expect("mean");
    let mean_ok = (mean.abs() - 23.0 / 57.0).abs() <= 1e-12;
    outcome(
        wrong.is_empty() && worst <= 1e-9 && imaginary && mean_ok,
        format!(
            "{} misclassified τ cells, tau=4 closed-form max rel err {worst:.2e}, purely imaginary {imaginary}, <n> = {mean:+.15} (rational form +23/57)",
            wrong.len()
        ),
    )
}

fn criterion_8() -> Outcome {
    let mut worst_one = 0.0f64;
    for s2 in [0.1f64, 0.25, 0.5, 0.8, 0.95] {
        let r = s2.sqrt().atanh();
        for k in 0..=30 {
            worst_one = worst_one.max((two_mode_p2k(0.0, s2, k).unwrap() - squeezed_law(r, 2 * k)).abs());
        }
    }
    let mut worst_eq = 0.0f64;
    for s in [0.0, 0.1, 0.25, 0.5, 0.8, 0.95] {
        for k in 0..=30 {
            worst_eq = worst_eq.max((two_mode_p2k(s, s, k).unwrap() - (1.0 - s) * s.powi(k as i32)).abs());
        }
    }
    outcome(
        worst_one <= 1e-10 && worst_eq <= 1e-12,
        format!("one-sided max |Δ| {worst_one:.2e}, equal max |Δ| {worst_eq:.2e}"),
    )
}

fn criterion_9() -> Outcome {
    let d = pn_violation(4.0, 5.0, 0.0, 60).expect("violation form");
    let tail = d.tail_bound();
    let mut detail = format!("tail {tail:.1e}");
    let mut finite = true;
    for reading in [ComplexReading::Literal, ComplexReading::Block] {
        match complex_information_with(&d, PartitionScheme::pairs(), 0, reading) {
            Ok(r) => {
                let i = Complex64::from(r.information);
                finite &= i.re.is_finite() && i.im.is_finite();
                detail += &format!("; {reading:?} I = {:.12e}{:+.12e}i, |I - 0| = {:.6e}", i.re, i.im, i.norm());
            }
            Err(e) => {
                finite = false;
                detail += &format!("; {reading:?} error {e}");
            }
        }
    }
    outcome(tail < 1e-10 && finite, detail)
}

fn criterion_10() -> Outcome {
    let alphas: Vec<f64> = (1..=100).map(|k| k as f64 * 0.02).collect();
    let mut min_f = f64::INFINITY;
    for &a in &alphas {
        let r = f_coherent_inequality(a * a, vec![1.0], FConvention::SqrtFactorial, 400).expect("f-coherent");
        min_f = min_f.min(r.margin);
    }
    let mut min_q = f64::INFINITY;
    let mut lambda2_secs = 0.0;
    for lambda in [1.0, 2.0] {
        let start = Instant::now();
        for &a in &alphas {
            let r = q_coherent_information(a * a, lambda, 200).expect("q-coherent");
            min_q = min_q.min(r.margin).min(r.information);
        }
        if lambda == 2.0 {
            lambda2_secs = start.elapsed().as_secs_f64();
        }
    }
    outcome(
        min_f >= 0.0 && min_q >= 0.0 && lambda2_secs < 30.0,
        format!("min f-coherent margin {min_f:.3e}, min q-coherent margin {min_q:.3e}, λ=2 sweep {lambda2_secs:.2} s"),
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("1 cross-representation identity", criterion_1),
        ("2 normalization", criterion_2),
        ("3 squeezed-vacuum law", criterion_3),
        ("4 Poisson pair closed form", criterion_4),
        ("5 subadditivity suite and three-class Poisson", criterion_5),
        ("6 squeezed-vacuum zero information", criterion_6),
        ("7 violation detection", criterion_7),
        ("8 two-mode consistency", criterion_8),
        ("9 complex information", criterion_9),
        ("10 deformed coherent margins", criterion_10),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let o = run();
        if !o.pass {
            failed += 1;
        }
        println!(
            "{} criterion {name}: {} [{:.1} s]",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail,
            start.elapsed().as_secs_f64()
        );
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
