use cubic_spin::ode::AdaptiveRk;
use num_complex::Complex64;

fn main() {
    let rk = AdaptiveRk::default();
    let omega = 7.0;
    let mut y = vec![Complex64::ONE];
    rk.integrate(|_, y, dy| dy[0] = Complex64::new(0.0, omega) * y[0], 0.0, 2.0, &mut y, |_| true).unwrap();
    println!("norm err {:.3e}, phase err {:.3e}", (y[0].norm() - 1.0).abs(), (y[0] - Complex64::from_polar(1.0, 14.0)).norm());
    let mut y = vec![Complex64::ONE];
    rk.integrate(|_, y, dy| dy[0] = -y[0], 0.0, 3.0, &mut y, |_| true).unwrap();
    println!("decay err {:.3e}", (y[0].re - (-3.0f64).exp()).abs());
}
