use cubic_spin::analytic::{analytic_weak_qfi, peak_even_max_qfi};
use cubic_spin::cat::{cat_state, evolved_cat_reference, ghz_components, ghz_projection_qfi, peak_schedule};
use cubic_spin::ensemble::{Parity, SpinEnsemble};
use cubic_spin::evolve::{evolve_zdiag, ZDiagonalHamiltonian};
use cubic_spin::qfi::qfi_pure;
use cubic_spin::state::{css_state, CssParams};
use std::f64::consts::PI;

fn main() {
    // --- (3) even peaks at N=1500: t = pi/12k, expect {0.85,0.75,0.70,0.67,0.65} N^2
    let n = 1500usize;
    let ens = SpinEnsemble::new(n).unwrap();
    let css = css_state(ens, &CssParams::equatorial(0.0));
    let n2 = (n * n) as f64;
    println!("--- even peaks N=1500");
    for (k, t) in peak_schedule(Parity::Even, 5).iter().enumerate() {
        let state = evolve_zdiag(&css, &ZDiagonalHamiltonian::cubic(), *t);
        let q = qfi_pure(&state).qfi;
        println!("k={} t={:.6} qfi/N^2 = {:.6}", k + 1, t, q / n2);
    }
    // Eq. 26 exact at N=4 and N=200 vs numerics at t=pi/4
    for nn in [4usize, 200] {
        let e = SpinEnsemble::new(nn).unwrap();
        let c = css_state(e, &CssParams::equatorial(0.0));
        let s = evolve_zdiag(&c, &ZDiagonalHamiltonian::cubic(), PI / 4.0);
        let q = qfi_pure(&s).qfi;
        let closed = peak_even_max_qfi(nn).unwrap().exact;
        println!("N={nn}: numeric {q:.12}, Eq26 {closed:.12}, rel {:.3e}", ((q - closed)/closed).abs());
        // also t = pi/12
        let s12 = evolve_zdiag(&c, &ZDiagonalHamiltonian::cubic(), PI / 12.0);
        let q12 = qfi_pure(&s12).qfi;
        println!("   t=pi/12 numeric {q12:.12} rel-to-Eq26 {:.3e}", ((q12 - closed)/closed).abs());
    }

    // --- (2) weak coupling agreement N=200, alpha in [0, 0.5]
    println!("--- weak coupling N=200");
    let n = 200usize;
    let ens = SpinEnsemble::new(n).unwrap();
    let css = css_state(ens, &CssParams::equatorial(0.0));
    let mut worst: (f64, f64) = (0.0, 0.0);
    for i in 0..=100 {
        let alpha = 0.5 * i as f64 / 100.0;
        let t = alpha / n as f64;
        let state = evolve_zdiag(&css, &ZDiagonalHamiltonian::cubic(), t);
        let numeric = qfi_pure(&state).qfi;
        let analytic = analytic_weak_qfi(n, t);
        let rel = ((analytic - numeric) / numeric).abs();
        if rel > worst.1 { worst = (alpha, rel); }
    }
    println!("worst rel deviation {:.4} at alpha={:.3}", worst.1, worst.0);

    // cubic vs oat excess ratio at alpha = 0.01
    let alpha = 0.01;
    let t = alpha / 200.0;
    let cubic_num = qfi_pure(&evolve_zdiag(&css, &ZDiagonalHamiltonian::cubic(), t)).qfi;
    let oat_num = qfi_pure(&evolve_zdiag(&css, &ZDiagonalHamiltonian::oat(), t)).qfi;
    let ratio = (cubic_num - 200.0) / (oat_num - 200.0);
    println!("numeric excess ratio {:.4} vs 9N/8 = {}", ratio, 9.0 * 200.0 / 8.0);

    // --- (5) even-odd at t = pi/3
    println!("--- even-odd");
    for nn in [200usize, 201] {
        let e = SpinEnsemble::new(nn).unwrap();
        let c = css_state(e, &CssParams::equatorial(0.0));
        let s = evolve_zdiag(&c, &ZDiagonalHamiltonian::cubic(), PI / 3.0);
        let q = qfi_pure(&s).qfi;
        println!("N={nn}: qfi {q:.6} (N={}, N^2={})", nn, nn * nn);
    }
    // 7pi/12 time check for N=201
    let e = SpinEnsemble::new(201).unwrap();
    let c = css_state(e, &CssParams::equatorial(0.0));
    let s = evolve_zdiag(&c, &ZDiagonalHamiltonian::cubic(), 7.0 * PI / 12.0);
    println!("N=201 at t=7pi/12: qfi/N^2 = {:.6}", qfi_pure(&s).qfi / (201.0f64 * 201.0));

    // --- (6) Table I states at N=1500: ghz projection vs exact
    println!("--- Table I projection, N=1500");
    let n = 1500usize;
    let ens = SpinEnsemble::new(n).unwrap();
    for k in 1..=5usize {
        let label = 12 * k;
        let (decomp, state) = cat_state(ens, label).unwrap();
        let comps = ghz_components(&decomp);
        let (proj, _) = ghz_projection_qfi(&comps, n).unwrap();
        let exact = qfi_pure(&state).qfi;
        println!(
            "n={label}: components {} proj {:.4} exact {:.4} gap {:.4}%",
            comps.len(),
            proj / (n * n) as f64,
            exact / (n * n) as f64,
            100.0 * (proj - exact).abs() / exact
        );
    }
    // gap shrinks with N (Appendix C): compare N=300
    let small = SpinEnsemble::new(300).unwrap();
    let (d300, s300) = cat_state(small, 12).unwrap();
    let (p300, _) = ghz_projection_qfi(&ghz_components(&d300), 300).unwrap();
    let e300 = qfi_pure(&s300).qfi;
    println!("N=300 n=12 gap {:.4}%", 100.0 * (p300 - e300).abs() / e300);

    // --- (4) reconstruction overlaps
    println!("--- cat reconstruction");
    for nn in [200usize, 201] {
        let e = SpinEnsemble::new(nn).unwrap();
        for label in [2usize, 3, 4, 12, 24] {
            let (_, rebuilt) = cat_state(e, label).unwrap();
            let evolved = evolved_cat_reference(e, label);
            let ov = rebuilt.overlap(&evolved).unwrap().norm();
            println!("N={nn} n={label}: 1-overlap = {:.2e}", 1.0 - ov);
        }
    }
}
