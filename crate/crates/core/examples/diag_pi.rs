use cubic_spin::ensemble::SpinEnsemble;
use cubic_spin::lindblad::{full_observables, lindblad_evolve_full, lindblad_evolve_pi_pure, LindbladParams, PiHamiltonian};
use cubic_spin::state::{css_state, CssParams};

fn main() {
    let mut seed = 1234u64;
    for n in [2usize, 4, 6, 8] {
        for draw in 0..5 {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let gamma = 0.02 + 0.1 * ((seed >> 16) & 0xff) as f64 / 255.0;
            let gamma_deph = 0.02 + 0.1 * ((seed >> 32) & 0xff) as f64 / 255.0;
            let ens = SpinEnsemble::new(n).unwrap();
            let initial = css_state(ens, &CssParams::equatorial(0.0));
            let params = LindbladParams::new(gamma, gamma_deph).unwrap();
            let h = PiHamiltonian::cubic(1.0);
            let grid = [0.4];
            let pi = lindblad_evolve_pi_pure(&initial, &h, &params, &grid).unwrap();
            let full = lindblad_evolve_full(&initial, &h, &params, &grid).unwrap();
            let obs = full_observables(n, &full.states[0], 1e-8).unwrap();
            let qfi_pi = pi[0].qfi(1e-8).unwrap().qfi;
            println!(
                "N={n} draw={draw} γ={gamma:.6} Γ={gamma_deph:.6}: dtrace {:+.2e} dsz {:+.2e} qfi_pi {:.9} qfi_full {:.9} dqfi {:+.3e}",
                pi[0].trace() - obs.trace,
                pi[0].mean_sz() - obs.mean_sz,
                qfi_pi, obs.qfi, qfi_pi - obs.qfi
            );
        }
    }
}
