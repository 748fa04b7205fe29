//! Gauss–Hermite rules and Gaussian expectation values in three dimensions.

use std::f64::consts::PI;

/// Default number of nodes per axis.
pub const DEFAULT_ORDER: usize = 20;

/// Nodes and weights for `∫ e^{-t²} f(t) dt`, nodes in decreasing order.
pub fn gauss_hermite_rule(order: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(order >= 1, "Gauss–Hermite order must be positive");
    let n = order;
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let pim4 = PI.powf(-0.25);
    let nf = n as f64;
    let mut z = 0.0_f64;
    for i in 0..n.div_ceil(2) {
        z = match i {
            0 => (2.0 * nf + 1.0).sqrt() - 1.85575 * (2.0 * nf + 1.0).powf(-0.16667),
            1 => z - 1.14 * nf.powf(0.426) / z,
            2 => 1.86 * z - 0.86 * x[0],
            3 => 1.91 * z - 0.91 * x[1],
            _ => 2.0 * z - x[i - 2],
        };
        let mut pp = 0.0;
        for _ in 0..100 {
            // Orthonormal Hermite recurrence.
            let mut p1 = pim4;
            let mut p2 = 0.0;
            for j in 0..n {
                let p3 = p2;
                p2 = p1;
                let jf = j as f64;
                p1 = z * (2.0 / (jf + 1.0)).sqrt() * p2 - (jf / (jf + 1.0)).sqrt() * p3;
            }
            pp = (2.0 * nf).sqrt() * p2;
            let z1 = z;
            z = z1 - p1 / pp;
            if (z - z1).abs() <= 1e-15 * z.abs().max(1.0) {
                break;
            }
        }
        x[i] = z;
        x[n - 1 - i] = -z;
        w[i] = 2.0 / (pp * pp);
        w[n - 1 - i] = w[i];
    }
    (x, w)
}

/// Expectation of `g(x, y, z)` under an isotropic Gaussian with standard
/// deviation `sigma` per axis, using a tensor-product rule.
pub fn gauss_hermite_average<G>(g: G, sigma: f64, order: usize) -> f64
where
    G: Fn(f64, f64, f64) -> f64,
{
    gauss_hermite_average_masked(g, sigma, order, |_, _, _| true).0
}

/// Like [`gauss_hermite_average`], but nodes rejected by `accept` are
/// dropped and the remaining weights renormalized. Returns the average and
/// the retained probability mass.
pub fn gauss_hermite_average_masked<G, A>(g: G, sigma: f64, order: usize, accept: A) -> (f64, f64)
where
    G: Fn(f64, f64, f64) -> f64,
    A: Fn(f64, f64, f64) -> bool,
{
    assert!(order >= 2, "Gauss–Hermite order must be at least 2");
    let (t, w) = gauss_hermite_rule(order);
    let scale = std::f64::consts::SQRT_2 * sigma;
    let norm = 1.0 / PI.sqrt();
    let pts: Vec<(f64, f64)> = t.iter().zip(&w).map(|(ti, wi)| (scale * ti, wi * norm)).collect();
    let mut acc = 0.0;
    let mut mass = 0.0;
    for &(x, wx) in &pts {
        for &(y, wy) in &pts {
            for &(z, wz) in &pts {
                if !accept(x, y, z) {
                    continue;
                }
                let wt = wx * wy * wz;
                acc += wt * g(x, y, z);
                mass += wt;
            }
        }
    }
    (acc / mass, mass)
}
