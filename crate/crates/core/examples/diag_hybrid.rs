use cubic_spin::hybrid::{optimize_ghz, optimize_ghz_constrained};
use cubic_spin::lindblad::{damped_qfi_sweep, DampedScheme, LindbladParams};
use std::f64::consts::PI;
use std::time::Instant;

fn main() {
    let t0 = Instant::now();
    let r20 = optimize_ghz(20, (0.01, 1.0), (0.01, PI)).unwrap();
    println!(
        "N=20: eps {:.4} t_f {:.4} qfi/N^2 {:.5} fid {:.5} speedup {:.4}  [{:?}]",
        r20.epsilon_opt, r20.t_f, r20.qfi_max / 400.0, r20.fidelity, r20.speedup, t0.elapsed()
    );
    let t0 = Instant::now();
    let r30 = optimize_ghz_constrained(30, 0.30).unwrap();
    println!(
        "N=30 capped 0.30: eps {:.4} t_f {:.4} qfi/N^2 {:.5} fid {:.5}  [{:?}]",
        r30.epsilon_opt, r30.t_f, r30.qfi_max / 900.0, r30.fidelity, t0.elapsed()
    );
    let r30b = optimize_ghz_constrained(30, 0.35).unwrap();
    println!("N=30 capped 0.35: eps {:.4} t_f {:.4} qfi/N^2 {:.5}", r30b.epsilon_opt, r30b.t_f, r30b.qfi_max / 900.0);
    let r30c = optimize_ghz(30, (0.01, 1.0), (0.01, PI)).unwrap();
    println!("N=30 unconstrained: eps {:.4} t_f {:.4} qfi/N^2 {:.5}", r30c.epsilon_opt, r30c.t_f, r30c.qfi_max / 900.0);

    // Fig. 7 orderings at N=20
    let t0 = Instant::now();
    let params = LindbladParams::new(0.1, 0.1).unwrap();
    let cubic = damped_qfi_sweep(DampedScheme::Cubic, 20, &params, &[PI / 12.0]).unwrap();
    let oat = damped_qfi_sweep(DampedScheme::Oat, 20, &params, &[PI / 2.0]).unwrap();
    println!(
        "damped γ=Γ=0.1: cubic@π/12 qfi {:.3}, oat@π/2 qfi {:.3}  [{:?}]",
        cubic[0].qfi, oat[0].qfi, t0.elapsed()
    );
    // dephasing-only degradation
    let deph = LindbladParams::new(0.0, 0.1).unwrap();
    let closed = LindbladParams::new(0.0, 0.0).unwrap();
    let c_deph = damped_qfi_sweep(DampedScheme::Cubic, 20, &deph, &[PI / 12.0]).unwrap()[0].qfi;
    let c_free = damped_qfi_sweep(DampedScheme::Cubic, 20, &closed, &[PI / 12.0]).unwrap()[0].qfi;
    let o_deph = damped_qfi_sweep(DampedScheme::Oat, 20, &deph, &[PI / 2.0]).unwrap()[0].qfi;
    let o_free = damped_qfi_sweep(DampedScheme::Oat, 20, &closed, &[PI / 2.0]).unwrap()[0].qfi;
    println!(
        "dephasing-only: cubic {:.4} of lossless ({:.2}/{:.2}), oat {:.4} ({:.2}/{:.2})",
        c_deph / c_free, c_deph, c_free, o_deph / o_free, o_deph, o_free
    );
}
