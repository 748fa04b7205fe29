//! Special functions needed by the image-charge and transverse-mode sums.

use crate::error::{Error, Result};

/// Shift target for the recurrence before the asymptotic tail is applied.
const ASYMPTOTIC_START: f64 = 10.0;

/// `(2k+1) B_{2k}` for k = 1..=7, the Euler–Maclaurin tail coefficients of
/// `-2 Σ 1/(z+k)^3`.
const TAIL_COEFFS: [f64; 7] = [
    0.5,
    -1.0 / 6.0,
    1.0 / 6.0,
    -0.3,
    5.0 / 6.0,
    -691.0 / 210.0,
    17.5,
];

/// Second polygamma function `Ψ⁽²⁾(x) = d³/dx³ ln Γ(x)` for real `x > 0`.
///
/// Uses `Ψ⁽²⁾(z) = -2 Σ_{k≥0} 1/(z+k)³`: the first terms are summed
/// explicitly until the argument reaches 10, and the remaining tail is
/// closed with its Euler–Maclaurin expansion.
pub fn polygamma2(x: f64) -> Result<f64> {
    if !(x.is_finite() && x > 0.0) {
        return Err(Error::Domain {
            func: "polygamma2",
            value: x,
            domain: "x > 0",
        });
    }
    let mut z = x;
    let mut head = 0.0;
    while z < ASYMPTOTIC_START {
        head -= 2.0 / (z * z * z);
        z += 1.0;
    }
    let inv = 1.0 / z;
    let inv2 = inv * inv;
    // Horner over 1/z^2 for the Bernoulli part, innermost term first.
    let mut bern = 0.0;
    for c in TAIL_COEFFS.iter().rev() {
        bern = bern * inv2 + c;
    }
    let tail = -inv2 - inv2 * inv - inv2 * inv2 * bern;
    Ok(head + tail)
}

/// Apéry's constant ζ(3).
///
/// Evaluated from the central-binomial series
/// `ζ(3) = 5/2 Σ (-1)^{n+1} / (n³ C(2n, n))`, which gains about 0.6 digits
/// per term and is independent of the polygamma route.
pub fn zeta3() -> f64 {
    let mut sum = 0.0;
    let mut central = 1.0_f64; // C(2n, n)
    for n in 1..=40u32 {
        let nf = f64::from(n);
        central *= 2.0 * (2.0 * nf - 1.0) / nf;
        let term = 1.0 / (nf * nf * nf * central);
        if n % 2 == 1 {
            sum += term;
        } else {
            sum -= term;
        }
        if term < 1e-20 {
            break;
        }
    }
    2.5 * sum
}
