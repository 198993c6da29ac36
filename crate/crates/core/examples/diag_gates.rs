use cubic_spin::ensemble::SpinEnsemble;
use cubic_spin::evolve::HermitianPropagator;
use cubic_spin::operators::CollectiveOperator;
use nalgebra::DMatrix;
use num_complex::Complex64;

fn fit(ens: SpinEnsemble, u: &DMatrix<Complex64>) -> [f64; 4] {
    let dim = ens.dim();
    let mut ata = [[0.0f64; 4]; 4];
    let mut atb = [0.0f64; 4];
    for k in 0..dim {
        let m = ens.m(k);
        let theta = u[(k, k)].arg();
        let row = [1.0, m, m * m, m * m * m];
        for i in 0..4 {
            for j in 0..4 {
                ata[i][j] += row[i] * row[j];
            }
            atb[i] += row[i] * theta;
        }
    }
    let mut a = ata; let mut b = atb;
    for col in 0..4 {
        let mut piv = col;
        for r in col+1..4 { if a[r][col].abs() > a[piv][col].abs() { piv = r; } }
        a.swap(col, piv); b.swap(col, piv);
        for r in col+1..4 {
            let f = a[r][col]/a[col][col];
            for k in col..4 { a[r][k] -= f*a[col][k]; }
            b[r] -= f*b[col];
        }
    }
    let mut x = [0.0f64; 4];
    for r in (0..4).rev() {
        let mut acc = b[r];
        for k in r+1..4 { acc -= a[r][k]*x[k]; }
        x[r] = acc/a[r][r];
    }
    x
}

fn offdiag_norm(u: &DMatrix<Complex64>) -> f64 {
    let mut acc = 0.0;
    for i in 0..u.nrows() { for j in 0..u.ncols() { if i != j { acc += u[(i,j)].norm_sqr(); } } }
    acc.sqrt()
}

fn main() {
    let n = 4usize;
    let ens = SpinEnsemble::new(n).unwrap();
    let sx = CollectiveOperator::sx(ens).to_dense();
    let sy = CollectiveOperator::sy(ens).to_dense();
    let sz = CollectiveOperator::sz(ens).to_dense();
    let px = HermitianPropagator::new(&sx).unwrap();
    let py = HermitianPropagator::new(&sy).unwrap();
    let px2 = HermitianPropagator::new(&(&sx * &sx)).unwrap();
    let py2 = HermitianPropagator::new(&(&sy * &sy)).unwrap();
    let a_p = &sy * &sz + &sz * &sy;
    let b_p = &sx * &sz + &sz * &sx;
    let comm = &a_p * &b_p - &b_p * &a_p;
    let s = n as f64 / 2.0;
    let c = 4.0 * s * s + 4.0 * s - 1.0;
    let i_unit = Complex64::new(0.0, 1.0);
    let sz3 = &sz * &sz * &sz;
    let claim = (sz3.clone() * Complex64::new(8.0, 0.0) - &sz * Complex64::new(c, 0.0)) * i_unit;
    println!("|| [A,B] - i(8Sz^3 - c Sz) || = {:.3e}", (&comm - &claim).map(|z| z.norm()).max());
    let claim2 = claim * Complex64::new(-1.0, 0.0);
    println!("|| [A,B] + i(8Sz^3 - c Sz) || = {:.3e}", (&comm - &claim2).map(|z| z.norm()).max());

    for &delta in &[0.1f64, 0.05, 0.025] {
        let e = |pa: &HermitianPropagator, pb: &HermitianPropagator, d: f64| {
            pa.unitary(-d) * pb.unitary(-d) * pa.unitary(d) * pb.unitary(d)
        };
        let e1 = e(&px, &py2, delta);
        let e2 = e(&px2, &py, delta);
        let e3 = e(&py2, &px, delta);
        let e4 = e(&py, &px2, delta);
        let u_c = &e1 * &e2 * &e3 * &e4;
        let f = fit(ens, &u_c);
        println!(
            "delta={delta}: a0={:+.4e} a1={:+.4e} a2={:+.4e} a3={:+.4e} | 8d4={:.4e} c*d4={:.4e} | offdiag={:.3e}",
            f[0], f[1], f[2], f[3], 8.0*delta.powi(4), c*delta.powi(4), offdiag_norm(&u_c)
        );
        let inv_err = (&e3 - e1.adjoint()).map(|z| z.norm()).max();
        println!("   ||E(Sy2,Sx) - E(Sx,Sy2)^dagger|| = {:.3e}", inv_err);
    }
}
