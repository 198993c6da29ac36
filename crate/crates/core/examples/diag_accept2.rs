use cubic_spin::ensemble::SpinEnsemble;
use cubic_spin::evolve::{evolve_zdiag, ZDiagonalHamiltonian};
use cubic_spin::qfi::qfi_pure;
use cubic_spin::state::{css_state, CssParams};
use std::f64::consts::PI;

fn main() {
    // N=4: max QFI over a fine t scan (period 2π)
    let ens = SpinEnsemble::new(4).unwrap();
    let css = css_state(ens, &CssParams::equatorial(0.0));
    let mut best = (0.0f64, 0.0f64);
    for i in 0..20000 {
        let t = 2.0 * PI * i as f64 / 20000.0;
        let q = qfi_pure(&evolve_zdiag(&css, &ZDiagonalHamiltonian::cubic(), t)).qfi;
        if q > best.1 { best = (t, q); }
    }
    println!("N=4 max qfi over t: {:.9} at t={:.6} (t/pi = {:.4}); Eq26 = 14.2426",
             best.1, best.0, best.0 / PI);

    // weak coupling excesses
    for n in [100usize, 200] {
        let ens = SpinEnsemble::new(n).unwrap();
        let css = css_state(ens, &CssParams::equatorial(0.0));
        println!("--- N={n}");
        for alpha in [0.005f64, 0.01, 0.02, 0.05] {
            let t = alpha / n as f64;
            let qc = qfi_pure(&evolve_zdiag(&css, &ZDiagonalHamiltonian::cubic(), t)).qfi;
            let qo = qfi_pure(&evolve_zdiag(&css, &ZDiagonalHamiltonian::oat(), t)).qfi;
            let s = n as f64 / 2.0;
            println!(
                "alpha={alpha}: cubic excess {:.6} (formula {:.6}), oat excess {:.6} (formula {:.6}, linear 2Nα = {:.3}), ratio {:.3}",
                qc - n as f64,
                4.5 * s * s * alpha * alpha,
                qo - n as f64,
                2.0 * s * alpha * alpha,
                2.0 * n as f64 * alpha,
                (qc - n as f64) / (qo - n as f64)
            );
        }
    }
}
