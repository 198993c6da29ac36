use cubic_spin::analytic::analytic_moments;
use cubic_spin::cat::{cat_state, ghz_components, GhzSign};
use cubic_spin::ensemble::SpinEnsemble;
use cubic_spin::evolve::{evolve_zdiag, HermitianPropagator, ZDiagonalHamiltonian};
use cubic_spin::operators::CollectiveOperator;
use cubic_spin::qfi::qfi_pure;
use cubic_spin::state::{css_state, CssParams, DickeVector};
use num_complex::Complex64;

fn main() {
    // §II short-time: N=6, |↑>^N under exp(−iχt Sx³)
    let n = 6usize;
    let ens = SpinEnsemble::new(n).unwrap();
    let north = css_state(ens, &CssParams::new(0.0, 0.0).unwrap());
    let sx = CollectiveOperator::sx(ens).to_dense();
    let sx3 = &sx * &sx * &sx;
    let prop = HermitianPropagator::new(&sx3).unwrap();
    for alpha in [0.005f64, 0.01, 0.02] {
        let chi_t = alpha / n as f64;
        let evolved = prop.evolve(&north, chi_t).unwrap();
        // perturbative ket: N(|S,S> - (3iα/4N)sqrt(C(N,3)) |S,S-3>)
        let c_n3 = 20f64; // C(6,3)
        let amp = Complex64::new(0.0, -3.0 * alpha / (4.0 * n as f64)) * c_n3.sqrt();
        let mut pert = vec![Complex64::ZERO; ens.dim()];
        pert[0] = Complex64::ONE;
        pert[3] = amp;
        let mut pert = DickeVector::from_amplitudes(ens, pert).unwrap();
        pert.normalize();
        let ov = pert.overlap(&evolved).unwrap().norm();
        println!("alpha={alpha}: overlap {:.10} >= {:.10}?", ov, 1.0 - 5.0 * alpha * alpha);
    }

    // Table I row II1: n=24 weights 1, 7/10, -7/10 at angles π/6, 7π/24, 19π/24
    let big = SpinEnsemble::new(1500).unwrap();
    let (decomp, _) = cat_state(big, 24).unwrap();
    let comps = ghz_components(&decomp);
    println!("n=24 GHZ components:");
    let wmax = comps.iter().map(|c| c.weight.norm()).fold(0.0, f64::max);
    for c in &comps {
        println!(
            "  phi/pi = {:.6} sign {:?} |w|/wmax = {:.4} w = {:.4}{:+.4}i",
            c.varphi / std::f64::consts::PI, c.sign, c.weight.norm() / wmax, c.weight.re, c.weight.im
        );
    }
    // Table I row III1: n=36
    let (d36, s36) = cat_state(big, 36).unwrap();
    let c36 = ghz_components(&d36);
    let (proj, _) = cubic_spin::cat::ghz_projection_qfi(&c36, 1500).unwrap();
    println!("n=36: proj/N^2 = {:.4}, exact {:.4}", proj / 2.25e6, qfi_pure(&s36).qfi / 2.25e6);

    // analytic moments vs exact ⟨S+(t)⟩ at N=200, chi_t=0.001
    let n = 200usize;
    let ens = SpinEnsemble::new(n).unwrap();
    let css = css_state(ens, &CssParams::equatorial(0.0));
    let st = evolve_zdiag(&css, &ZDiagonalHamiltonian::cubic(), 0.001);
    let sp = CollectiveOperator::splus(ens);
    let exact = st.overlap(&sp.apply(&st).unwrap()).unwrap();
    let m = analytic_moments(n, 0.001);
    println!(
        "⟨S+⟩ exact {:.6}{:+.6}i analytic {:.6}{:+.6}i |diff|/S = {:.4e}",
        exact.re, exact.im, m.mean_sp.re, m.mean_sp.im,
        (exact - m.mean_sp).norm() / 100.0
    );
    // evolve_hermitian CQA example: N=20, eps=0.29, t=0.65 → QFI = 0.99 N² within 0.5%
    let e20 = SpinEnsemble::new(20).unwrap();
    let c20 = css_state(e20, &CssParams::equatorial(0.0));
    let h = cubic_spin::hybrid::cqa_hamiltonian(&cubic_spin::hybrid::CqaParams::new(0.29, 1.0, 20).unwrap()).unwrap();
    let s = cubic_spin::evolve::evolve_hermitian(&c20, &h, 0.65).unwrap();
    println!("CQA N=20 t=0.65 eps=0.29: qfi/N^2 = {:.5}", qfi_pure(&s).qfi / 400.0);
    let _ = GhzSign::Plus;
}
