//! Electrostatics of a dipole between two grounded, perfectly conducting
//! plates: the image-charge potential, its quadratic expansion, and the
//! resulting ground-state shift.

use std::cell::RefCell;

use crate::dipole::DipoleModel;
use crate::error::{require_positive, Error, Result};
use crate::numerics::hermite::{gauss_hermite_average_masked, DEFAULT_ORDER};
use crate::numerics::special::{polygamma2, zeta3};

/// Closest a position fraction may come to either plate.
pub const WALL_GUARD: f64 = 1e-6;

/// Spacing `d` between the plates and height `z0` of the positive charge,
/// stored as the fraction `z0/d`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlateGeometry {
    d_nm: f64,
    z0_over_d: f64,
}

impl PlateGeometry {
    pub fn new(d_nm: f64, z0_over_d: f64) -> Result<Self> {
        let d_nm = require_positive("d", d_nm)?;
        check_fraction("z0_over_d", z0_over_d)?;
        Ok(PlateGeometry { d_nm, z0_over_d })
    }

    pub fn d_nm(&self) -> f64 {
        self.d_nm
    }

    pub fn z0_over_d(&self) -> f64 {
        self.z0_over_d
    }

    pub fn z0_nm(&self) -> f64 {
        self.z0_over_d * self.d_nm
    }

    /// The same position reflected through the midplane.
    pub fn mirrored(&self) -> Self {
        PlateGeometry {
            d_nm: self.d_nm,
            z0_over_d: 1.0 - self.z0_over_d,
        }
    }
}

fn check_fraction(name: &'static str, x: f64) -> Result<f64> {
    if x.is_finite() && x > WALL_GUARD && x < 1.0 - WALL_GUARD {
        Ok(x)
    } else {
        Err(Error::InvalidParameter {
            name,
            value: x,
            reason: "must lie strictly inside (0, 1), away from the plates",
        })
    }
}

/// Displacement of the negative charge from the positive one, in nm.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DipoleDisplacement {
    pub x_nm: f64,
    pub y_nm: f64,
    pub z_nm: f64,
}

impl DipoleDisplacement {
    pub fn new(x_nm: f64, y_nm: f64, z_nm: f64) -> Self {
        DipoleDisplacement { x_nm, y_nm, z_nm }
    }

    pub fn along_z(z_nm: f64) -> Self {
        Self::new(0.0, 0.0, z_nm)
    }
}

/// Displacement in units of `d`, after checking that the negative charge
/// stays between the plates.
fn reduced(g: &PlateGeometry, r: &DipoleDisplacement) -> Result<(f64, f64, f64)> {
    let (x, y, w) = (r.x_nm / g.d_nm, r.y_nm / g.d_nm, r.z_nm / g.d_nm);
    let t = g.z0_over_d + w;
    if !(x.is_finite() && y.is_finite() && t > 0.0 && t < 1.0) {
        return Err(Error::InvalidParameter {
            name: "z_d",
            value: r.z_nm,
            reason: "negative charge must stay between the plates",
        });
    }
    Ok((x, y, w))
}

const FIRST_BLOCK: usize = 32;
const MAX_PAIRS: usize = 1 << 16;
const PAIR_REL_TOL: f64 = 1e-12;
/// Convergence requirement in units of `V_C` once `MAX_PAIRS` is reached.
const FINAL_TOL_VC: f64 = 1e-9;

/// Sums `head + Σ_{m≥1} pair(m)` for pair terms decaying like `1/m³`.
/// Partial sums at `N = 32, 64, …` leave an `O(1/N²)` tail, which is
/// removed by Richardson extrapolation between successive doublings.
fn extrapolated_image_sum(head: f64, pair: impl Fn(f64) -> f64, vc_per_unit: f64) -> Result<f64> {
    let mut sum = head;
    let mut magnitude = head.abs();
    let mut next = 1usize;
    let mut n = FIRST_BLOCK;
    let mut prev_partial: Option<f64> = None;
    let mut prev_extrap: Option<f64> = None;
    loop {
        while next <= n {
            let t = pair(next as f64);
            sum += t;
            magnitude += t.abs();
            next += 1;
        }
        if let Some(p) = prev_partial {
            let r = (4.0 * sum - p) / 3.0;
            if let Some(q) = prev_extrap {
                let change = (r - q).abs();
                if change <= PAIR_REL_TOL * magnitude || change == 0.0 {
                    return Ok(r);
                }
                if n >= MAX_PAIRS {
                    if change * vc_per_unit <= FINAL_TOL_VC {
                        return Ok(r);
                    }
                    return Err(Error::NonConvergence {
                        what: "image-charge series",
                        iterations: n,
                        last_term: change,
                        tolerance: FINAL_TOL_VC,
                    });
                }
            }
            prev_extrap = Some(r);
        }
        prev_partial = Some(sum);
        n *= 2;
    }
}

/// `1/a - 1/b` with `b² - a²` supplied directly, avoiding cancellation.
#[inline]
fn inv_diff(a: f64, b: f64, b2_minus_a2: f64) -> f64 {
    b2_minus_a2 / (a * b * (a + b))
}

/// One `n`-term of the image series in units of `q²/(4πε₀d)`, written so
/// that the pieces that cancel at zero displacement cancel exactly.
fn image_term(n: f64, s: f64, rho2: f64, w: f64) -> f64 {
    let mut v = 0.0;
    if n != 0.0 {
        let u = w + 2.0 * n;
        let a = (2.0 * n).abs();
        let b = (rho2 + u * u).sqrt();
        v += inv_diff(a, b, rho2 + 2.0 * u * w - w * w);
    }
    let u = 2.0 * s + w + 2.0 * n;
    let dd = (rho2 + u * u).sqrt();
    let below = (u - w).abs();
    let above = (u + w).abs();
    v + 0.5 * (inv_diff(below, dd, w * w - 2.0 * u * w - rho2) + inv_diff(above, dd, w * w + 2.0 * u * w - rho2))
}

/// Full image-charge interaction energy of the displaced dipole, in units
/// of `V_C`. Zero when the two charges coincide.
pub fn v_im_full(g: &PlateGeometry, r: &DipoleDisplacement, m: &DipoleModel) -> Result<f64> {
    let (x, y, w) = reduced(g, r)?;
    let s = g.z0_over_d;
    let rho2 = x * x + y * y;
    let scale = m.a0_nm() / g.d_nm;
    let b = extrapolated_image_sum(
        image_term(0.0, s, rho2, w),
        |k| image_term(k, s, rho2, w) + image_term(-k, s, rho2, w),
        scale,
    )?;
    Ok(scale * b)
}

/// The image potential split into the part felt by the charges'
/// interaction with the images of the partner charge (`plus`) and with
/// their own images (`minus`), in units of `V_C`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ImageSplit {
    pub plus: f64,
    pub minus: f64,
}

impl ImageSplit {
    pub fn total(&self) -> f64 {
        self.plus + self.minus
    }
}

pub fn v_im_split(g: &PlateGeometry, r: &DipoleDisplacement, m: &DipoleModel) -> Result<ImageSplit> {
    let (x, y, w) = reduced(g, r)?;
    let s = g.z0_over_d;
    let t = s + w;
    let rho2 = x * x + y * y;
    let scale = m.a0_nm() / g.d_nm;

    // −Σ1/n + ½Σn/(n²−s²) + ½Σn/(n²−t²), paired termwise.
    let self_pair = |k: f64| 0.5 * (s * s / (k * (k * k - s * s)) + t * t / (k * (k * k - t * t)));
    let minus = -extrapolated_image_sum(0.25 / s + 0.25 / t, self_pair, scale)?;

    let cross = |u: f64| 1.0 / (rho2 + u * u).sqrt();
    let cross_pair = |k: f64| {
        cross(w + 2.0 * k) + cross(w - 2.0 * k) - cross(2.0 * s + w + 2.0 * k) - cross(2.0 * s + w - 2.0 * k)
    };
    let plus = -extrapolated_image_sum(-cross(2.0 * s + w), cross_pair, scale)?;

    Ok(ImageSplit {
        plus: scale * plus,
        minus: scale * minus,
    })
}

/// `Ψ⁽²⁾`-based bracket `2/x³ − Ψ⁽²⁾(1−x) − Ψ⁽²⁾(1+x)`.
fn polygamma_bracket(x: f64) -> Result<f64> {
    Ok(2.0 / (x * x * x) - polygamma2(1.0 - x)? - polygamma2(1.0 + x)?)
}

/// Second-order expansion of [`v_im_full`] in the displacement, in units of
/// `V_C`.
pub fn v_im_quadratic(g: &PlateGeometry, r: &DipoleDisplacement, m: &DipoleModel) -> Result<f64> {
    let (x, y, w) = reduced(g, r)?;
    let p = polygamma_bracket(g.z0_over_d)?;
    let z3 = zeta3();
    let lateral = (x * x + y * y) / 32.0 * (p - 4.0 * z3);
    let normal = w * w / 16.0 * (p + 4.0 * z3);
    Ok(-(m.a0_nm() / g.d_nm) * (lateral + normal))
}

/// Dimensionless electrostatic scaling function
/// `F_im(x) = (1/8)[2/x³ − Ψ⁽²⁾(1−x) − Ψ⁽²⁾(1+x)]` for `x = z0/d`.
pub fn f_im(x: f64) -> Result<f64> {
    if !(x > 0.0 && x < 1.0) {
        return Err(Error::Domain {
            func: "f_im",
            value: x,
            domain: "0 < z0/d < 1",
        });
    }
    Ok(polygamma_bracket(x)? / 8.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ImageShiftMode {
    /// `−V_C (a₀/d)³ F_im(z0/d)`.
    Analytic,
    /// Ground-state Gaussian average of [`v_im_full`], clipped at the plates.
    NumericFull,
}

/// Smallest `d/a₀` for which the clipped Gaussian average is attempted.
pub const MIN_NUMERIC_SPACING: f64 = 5.0;

/// Electrostatic ground-state shift in units of `V_C`.
pub fn delta_e_im(g: &PlateGeometry, m: &DipoleModel, mode: ImageShiftMode) -> Result<f64> {
    let ratio = m.a0_nm() / g.d_nm;
    match mode {
        ImageShiftMode::Analytic => Ok(-ratio.powi(3) * f_im(g.z0_over_d)?),
        ImageShiftMode::NumericFull => {
            if g.d_nm < MIN_NUMERIC_SPACING * m.a0_nm() {
                return Err(Error::InvalidParameter {
                    name: "d",
                    value: g.d_nm,
                    reason: "numeric average needs d >= 5 a0",
                });
            }
            let failure = RefCell::new(None);
            let z0 = g.z0_nm();
            let inside = |_: f64, _: f64, z: f64| {
                let t = (z0 + z) / g.d_nm;
                t > 0.0 && t < 1.0
            };
            let (avg, _) = gauss_hermite_average_masked(
                |x, y, z| match v_im_full(g, &DipoleDisplacement::new(x, y, z), m) {
                    Ok(v) => v,
                    Err(e) => {
                        failure.borrow_mut().get_or_insert(e);
                        0.0
                    }
                },
                m.a0_nm(),
                DEFAULT_ORDER,
                inside,
            );
            match failure.into_inner() {
                Some(e) => Err(e),
                None => Ok(avg),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn model() -> DipoleModel {
        DipoleModel::new(1.0, 1.0, 1.0).unwrap()
    }

    // Plain truncated sum of the image series as printed, no pairing
    // tricks beyond n ↔ −n and no extrapolation.
    fn brute_image(s: f64, x: f64, y: f64, w: f64, n: i64) -> f64 {
        let rho2 = x * x + y * y;
        let t = s + w;
        let term = |k: i64| {
            let k = k as f64;
            let mut v = 0.0;
            if k != 0.0 {
                v += 1.0 / (2.0 * k).abs() - 1.0 / (rho2 + (w + 2.0 * k).powi(2)).sqrt();
            }
            v - 0.5 / (2.0 * s + 2.0 * k).abs() - 0.5 / (2.0 * t + 2.0 * k).abs()
                + 1.0 / (rho2 + (2.0 * s + w + 2.0 * k).powi(2)).sqrt()
        };
        let mut sum = term(0);
        for k in 1..=n {
            sum += term(k) + term(-k);
        }
        sum
    }

    #[test]
    fn coincident_charges_have_no_image_energy() {
        let g = PlateGeometry::new(10.0, 0.3).unwrap();
        assert_eq!(v_im_full(&g, &DipoleDisplacement::default(), &model()).unwrap(), 0.0);
        assert_eq!(v_im_quadratic(&g, &DipoleDisplacement::default(), &model()).unwrap(), 0.0);
    }

    #[test]
    fn matches_brute_force_series() {
        let g = PlateGeometry::new(1.0, 0.35).unwrap();
        let r = DipoleDisplacement::new(0.1, -0.05, 0.2);
        let got = v_im_full(&g, &r, &model()).unwrap();
        // brute force tail is O(1/N²); 4e5 pairs leaves ~1e-12
        let oracle = brute_image(0.35, 0.1, -0.05, 0.2, 400_000);
        assert_relative_eq!(got, oracle, max_relative = 1e-8);
    }

    #[test]
    fn split_adds_up() {
        let g = PlateGeometry::new(1.0, 0.4).unwrap();
        let r = DipoleDisplacement::new(0.05, 0.1, -0.15);
        let split = v_im_split(&g, &r, &model()).unwrap();
        let full = v_im_full(&g, &r, &model()).unwrap();
        assert_relative_eq!(split.total(), full, max_relative = 1e-9);
        assert!(split.minus < 0.0);
    }

    #[test]
    fn mirror_symmetry() {
        let m = model();
        for &(s, w) in &[(0.2, 0.05), (0.35, -0.1), (0.6, 0.2)] {
            let g = PlateGeometry::new(1.0, s).unwrap();
            let a = v_im_full(&g, &DipoleDisplacement::new(0.03, 0.02, w), &m).unwrap();
            let b = v_im_full(&g.mirrored(), &DipoleDisplacement::new(0.03, 0.02, -w), &m).unwrap();
            assert_relative_eq!(a, b, max_relative = 1e-10);
        }
    }

    #[test]
    fn escaping_charge_is_rejected() {
        let g = PlateGeometry::new(1.0, 0.5).unwrap();
        assert!(v_im_full(&g, &DipoleDisplacement::along_z(0.6), &model()).is_err());
        assert!(PlateGeometry::new(1.0, 1e-7).is_err());
        assert!(PlateGeometry::new(1.0, 1.0 - 1e-7).is_err());
        assert!(PlateGeometry::new(0.0, 0.5).is_err());
    }

    #[test]
    fn f_im_reference_values() {
        assert!((f_im(0.5).unwrap() - 4.2072).abs() < 5e-4);
        // F_im(½) = 7ζ(3)/2 via Ψ⁽²⁾(½) = −14ζ(3) and Ψ⁽²⁾(3/2) = Ψ⁽²⁾(½) + 16
        let exact = (16.0 + 28.0 * zeta3() - 16.0) / 8.0;
        assert_relative_eq!(f_im(0.5).unwrap(), exact, max_relative = 1e-13);
        let x: f64 = 0.05;
        assert!((f_im(x).unwrap() / (1.0 / (4.0 * x.powi(3))) - 1.0).abs() < 0.015);
        assert!((f_im(0.02).unwrap() * 4.0 * 0.02f64.powi(3) - 1.0).abs() < 0.02);
        assert!(f_im(0.0).is_err());
        assert!(f_im(1.0).is_err());
    }

    #[test]
    fn f_im_symmetric_with_midplane_minimum() {
        for i in 1..10 {
            let x = i as f64 / 10.0;
            assert_relative_eq!(f_im(x).unwrap(), f_im(1.0 - x).unwrap(), max_relative = 1e-12);
        }
        let grid: Vec<f64> = (1..200).map(|i| i as f64 / 200.0).collect();
        let best = grid
            .iter()
            .copied()
            .min_by(|a, b| f_im(*a).unwrap().partial_cmp(&f_im(*b).unwrap()).unwrap())
            .unwrap();
        assert_eq!(best, 0.5);
        // local parabola through the three grid points around the minimum
        let h = 1.0 / 200.0;
        let (l, c, r) = (f_im(0.5 - h).unwrap(), f_im(0.5).unwrap(), f_im(0.5 + h).unwrap());
        let vertex = 0.5 + 0.5 * h * (l - r) / (l - 2.0 * c + r);
        assert!((vertex - 0.5).abs() < 1e-9);
    }

    #[test]
    fn quadratic_expansion_breaks_isotropy() {
        let m = model();
        for &s in &[0.1, 0.3, 0.5, 0.8] {
            let g = PlateGeometry::new(1.0, s).unwrap();
            let cx = v_im_quadratic(&g, &DipoleDisplacement::new(0.01, 0.0, 0.0), &m).unwrap();
            let cz = v_im_quadratic(&g, &DipoleDisplacement::along_z(0.01), &m).unwrap();
            assert!((cx - cz).abs() > 1e-3 * cz.abs());
        }
    }

    #[test]
    fn quadratic_agrees_at_small_displacement() {
        let m = model();
        let g = PlateGeometry::new(10.0, 0.2).unwrap();
        let r = DipoleDisplacement::new(0.01, 0.0, 0.02);
        let full = v_im_full(&g, &r, &m).unwrap();
        let quad = v_im_quadratic(&g, &r, &m).unwrap();
        assert_relative_eq!(full, quad, max_relative = 2e-2);
    }

    #[test]
    fn analytic_shift_values() {
        let m = model();
        let g = PlateGeometry::new(10.0, 0.5).unwrap();
        let e = delta_e_im(&g, &m, ImageShiftMode::Analytic).unwrap();
        assert_relative_eq!(e, -1e-3 * f_im(0.5).unwrap(), max_relative = 1e-14);
        let far = PlateGeometry::new(1e6, 0.5).unwrap();
        assert!(delta_e_im(&far, &m, ImageShiftMode::Analytic).unwrap().abs() < 1e-17);
        let tight = PlateGeometry::new(4.0, 0.5).unwrap();
        assert!(delta_e_im(&tight, &m, ImageShiftMode::NumericFull).is_err());
    }

    #[test]
    fn numeric_shift_approaches_analytic_for_wide_gaps() {
        let m = model();
        let g = PlateGeometry::new(50.0, 0.5).unwrap();
        let num = delta_e_im(&g, &m, ImageShiftMode::NumericFull).unwrap();
        let ana = delta_e_im(&g, &m, ImageShiftMode::Analytic).unwrap();
        assert!(num < 0.0);
        assert!((num / ana - 1.0).abs() < 0.01, "{num} vs {ana}");
    }

    fn hessian_diag(s: f64) -> (f64, f64) {
        let m = model();
        let g = PlateGeometry::new(1.0, s).unwrap();
        let v = |x: f64, z: f64| v_im_full(&g, &DipoleDisplacement::new(x, 0.0, z), &m).unwrap();
        let c = v(0.0, 0.0);
        let second = |h: f64| {
            (
                (v(h, 0.0) + v(-h, 0.0) - 2.0 * c) / (h * h),
                (v(0.0, h) + v(0.0, -h) - 2.0 * c) / (h * h),
            )
        };
        // central differences at h = 1e-3 d, with the O(h²) error removed
        let (coarse, fine) = (second(1e-3), second(5e-4));
        ((4.0 * fine.0 - coarse.0) / 3.0, (4.0 * fine.1 - coarse.1) / 3.0)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(20))]
        #[test]
        fn hessian_matches_quadratic_coefficients(s in 0.1f64..0.9) {
            let m = model();
            let g = PlateGeometry::new(1.0, s).unwrap();
            let (hx, hz) = hessian_diag(s);
            let qx = 2.0 * v_im_quadratic(&g, &DipoleDisplacement::new(1.0e-3, 0.0, 0.0), &m).unwrap() / 1e-6;
            let qz = 2.0 * v_im_quadratic(&g, &DipoleDisplacement::along_z(1.0e-3), &m).unwrap() / 1e-6;
            prop_assert!((hx / qx - 1.0).abs() < 1e-4, "x: {} vs {}", hx, qx);
            prop_assert!((hz / qz - 1.0).abs() < 1e-4, "z: {} vs {}", hz, qz);
        }

        #[test]
        fn analytic_shift_is_negative(s in 0.01f64..0.99, d in 1.0f64..1e4) {
            let g = PlateGeometry::new(d, s).unwrap();
            prop_assert!(delta_e_im(&g, &model(), ImageShiftMode::Analytic).unwrap() < 0.0);
        }
    }
}
