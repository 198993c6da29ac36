use cubic_spin::ensemble::SpinEnsemble;
use cubic_spin::evolve::HermitianPropagator;
use cubic_spin::hybrid::{cqa_hamiltonian, CqaParams};
use cubic_spin::qfi::qfi_pure;
use cubic_spin::state::{css_state, CssParams};

fn main() {
    let n = 30usize;
    let ens = SpinEnsemble::new(n).unwrap();
    let initial = css_state(ens, &CssParams::equatorial(0.0));
    let n2 = (n * n) as f64;
    // fine grid over eps in [0.5, 1.0], t in [0.2, 0.35]
    let mut best = (0.0, 0.0, 0.0f64);
    let mut top: Vec<(f64, f64, f64)> = Vec::new();
    for i in 0..=250 {
        let eps = 0.5 + 0.5 * i as f64 / 250.0;
        let params = CqaParams::new(eps, 1.0, n).unwrap();
        let prop = HermitianPropagator::new(&cqa_hamiltonian(&params).unwrap().to_dense()).unwrap();
        for j in 0..=300 {
            let t = 0.20 + 0.15 * j as f64 / 300.0;
            let q = qfi_pure(&prop.evolve(&initial, t).unwrap()).qfi;
            if q > best.2 { best = (eps, t, q); }
            if q > 0.9695 * n2 { top.push((eps, t, q)); }
        }
    }
    println!("best on fine grid: eps {:.4} t {:.4} qfi/N^2 {:.6}", best.0, best.1, best.2 / n2);
    top.sort_by(|a, b| b.2.partial_cmp(&a.2).unwrap());
    for (e, t, q) in top.iter().take(8) {
        println!("  eps {:.4} t {:.4} qfi/N^2 {:.6}", e, t, q / n2);
    }
}
