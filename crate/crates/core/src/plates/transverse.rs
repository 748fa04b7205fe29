//! Shift from the transverse vacuum modes between the plates.
//!
//! The shift is assembled from four Lamb-type functions, each a
//! cutoff-regularized "sum over modes minus continuum integral". Two of
//! them (the `A²` pieces) are constants or depend only on position; the
//! two `A·p` pieces also depend on `ν₀ = ω₀ d/(πc)`.

use std::f64::consts::PI;

use crate::dipole::{DipoleModel, FINE_STRUCTURE};
use crate::error::{Error, Result};
use crate::numerics::cutoff::{CutoffKind, CutoffSpec};
use crate::numerics::quadrature::{integrate_semi_infinite_with, integrate_with, QuadratureOptions};
use crate::numerics::summation::{regulated_sum, sum_minus_integral, Summand};
use crate::plates::electrostatic::{f_im, PlateGeometry};

/// How a Lamb function is to be evaluated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Method {
    /// Mode sum with an explicit regulator.
    Numeric(CutoffSpec),
    /// Exact regularized value.
    ClosedForm,
    /// Expansion for `ν₀ ≪ 1`.
    LowFrequency,
    /// Expansion for `ν₀ ≫ 1`.
    HighFrequency,
    /// Quadrature of the resummed series, valid at every `ν₀`.
    ContourIntegral,
}

impl Method {
    fn name(&self) -> &'static str {
        match self {
            Method::Numeric(_) => "numeric",
            Method::ClosedForm => "closed-form",
            Method::LowFrequency => "low-frequency",
            Method::HighFrequency => "high-frequency",
            Method::ContourIntegral => "contour-integral",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EvaluationPath {
    NumericSharp,
    NumericSmooth,
    AnalyticClosedForm,
    AnalyticLowFreq,
    AnalyticHighFreq,
    ContourIntegral,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LambWarning {
    /// The numeric series oscillates without settling this close to a plate.
    NearWall,
    /// An asymptotic form was requested outside its regime.
    OutsideExpansionRegime,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LambFunctionResult {
    pub value: f64,
    pub path: EvaluationPath,
    pub cutoff: Option<CutoffSpec>,
    /// Truncation or quadrature error estimate; zero for closed forms.
    pub tail_estimate: f64,
    pub warning: Option<LambWarning>,
}

impl LambFunctionResult {
    fn exact(value: f64, path: EvaluationPath) -> Self {
        LambFunctionResult {
            value,
            path,
            cutoff: None,
            tail_estimate: 0.0,
            warning: None,
        }
    }

    fn warn_if(mut self, cond: bool, w: LambWarning) -> Self {
        if cond {
            self.warning = Some(w);
        }
        self
    }
}

fn numeric_path(c: &CutoffSpec) -> EvaluationPath {
    if c.kind() == CutoffKind::Sharp {
        EvaluationPath::NumericSharp
    } else {
        EvaluationPath::NumericSmooth
    }
}

fn unsupported(func: &'static str, m: &Method) -> Error {
    Error::Unsupported {
        func,
        method: m.name(),
    }
}

fn check_position(x: f64) -> Result<f64> {
    if x > 0.0 && x < 1.0 {
        Ok(x)
    } else {
        Err(Error::Domain {
            func: "lamb function",
            value: x,
            domain: "0 < z0/d < 1",
        })
    }
}

fn check_frequency(nu0: f64) -> Result<f64> {
    if nu0.is_finite() && nu0 > 0.0 {
        Ok(nu0)
    } else {
        Err(Error::Domain {
            func: "lamb function",
            value: nu0,
            domain: "nu0 > 0",
        })
    }
}

fn near_wall(x: f64) -> bool {
    !(0.1..=0.9).contains(&x)
}

/// `∫_n^∞ k(ν) h(ν) dν` for the regulator `h`. A sharp step is integrated
/// only up to its edge. Failures surface as NaN, which the summation
/// engine reports as non-convergence.
fn regulated_tail(c: &CutoffSpec, n: f64, k: impl Fn(f64) -> f64) -> f64 {
    let opts = QuadratureOptions::default();
    let lambda = c.lambda();
    let weighted = |nu: f64| {
        let w = c.weight(nu);
        if w == 0.0 {
            0.0
        } else {
            k(nu) * w
        }
    };
    let result = match c.kind() {
        CutoffKind::Sharp if !c.is_unregulated() => {
            if n >= lambda {
                return 0.0;
            }
            integrate_with(&k, n, lambda, opts).map(|e| e.value)
        }
        _ if n < lambda && lambda.is_finite() => integrate_with(weighted, n, lambda, opts)
            .and_then(|head| integrate_semi_infinite_with(weighted, lambda, opts).map(|t| head.value + t.value)),
        _ => integrate_semi_infinite_with(weighted, n, opts).map(|e| e.value),
    };
    result.unwrap_or(f64::NAN)
}

/// `g_{A²}`: regularized value of `Σ′_n F(n) − ∫ F`, `F(n) = ∫_n^∞ h dν`.
pub fn g_a2(method: Method) -> Result<LambFunctionResult> {
    match method {
        Method::ClosedForm => Ok(LambFunctionResult::exact(1.0 / 12.0, EvaluationPath::AnalyticClosedForm)),
        Method::Numeric(c) => {
            let s = Summand::new(move |n| regulated_tail(&c, n, |_| 1.0)).pre_regulated();
            let est = sum_minus_integral(&s, &c)?;
            Ok(LambFunctionResult {
                value: est.value,
                path: numeric_path(&c),
                cutoff: Some(c),
                tail_estimate: est.tail_estimate,
                warning: None,
            })
        }
        m => Err(unsupported("g_a2", &m)),
    }
}

/// `f_{A²}` at position `x = z0/d`; the regularized value is
/// `1/(4 sin²(πx))`.
pub fn f_a2(x: f64, method: Method) -> Result<LambFunctionResult> {
    let x = check_position(x)?;
    match method {
        Method::ClosedForm => {
            let s = (PI * x).sin();
            Ok(LambFunctionResult::exact(0.25 / (s * s), EvaluationPath::AnalyticClosedForm))
        }
        Method::Numeric(c) => {
            let s = Summand::new(move |n: f64| {
                if n == 0.0 {
                    return 0.0;
                }
                -n * n * (2.0 * PI * n * x).cos() * regulated_tail(&c, n, |nu| 1.0 / (nu * nu))
            })
            .pre_regulated();
            let est = regulated_sum(&s, &c)?;
            Ok(LambFunctionResult {
                value: est.value,
                path: numeric_path(&c),
                cutoff: Some(c),
                tail_estimate: est.tail_estimate,
                warning: None,
            }
            .warn_if(near_wall(x), LambWarning::NearWall))
        }
        m => Err(unsupported("f_a2", &m)),
    }
}

/// `ν₀[(ν₀+½) ln((ν₀+1)/ν₀) + 1/(12(1+ν₀)) − 1]`.
fn g_ap_closed(nu0: f64) -> f64 {
    nu0 * ((nu0 + 0.5) * (1.0 / nu0).ln_1p() + 1.0 / (12.0 * (1.0 + nu0)) - 1.0)
}

/// `g_{A·p}`, position independent. The low-frequency closed form stays
/// accurate at all `ν₀`.
pub fn g_ap(nu0: f64, method: Method) -> Result<LambFunctionResult> {
    let nu0 = check_frequency(nu0)?;
    match method {
        Method::LowFrequency | Method::ClosedForm => {
            Ok(LambFunctionResult::exact(g_ap_closed(nu0), EvaluationPath::AnalyticLowFreq))
        }
        Method::HighFrequency => Ok(LambFunctionResult::exact(
            1.0 / 12.0 + 1.0 / (360.0 * nu0 * nu0),
            EvaluationPath::AnalyticHighFreq,
        )
        .warn_if(nu0 < 1.0, LambWarning::OutsideExpansionRegime)),
        Method::Numeric(c) => {
            let s = Summand::new(move |n| regulated_tail(&c, n, |nu| nu0 / (nu + nu0))).pre_regulated();
            let est = sum_minus_integral(&s, &c)?;
            Ok(LambFunctionResult {
                value: est.value,
                path: numeric_path(&c),
                cutoff: Some(c),
                tail_estimate: est.tail_estimate,
                warning: None,
            })
        }
        m => Err(unsupported("g_ap", &m)),
    }
}

/// Position-dependent correction `f_{A·p} − 1/(4 sin²(πx))`:
/// `−(1/ν₀) ∫_0^∞ u² cosh(uζ)/sinh(πu) · arctan(ν₀/u) du`, `ζ = 2πx − π`.
fn f_ap_correction(nu0: f64, x: f64) -> Result<(f64, f64)> {
    let zeta = (2.0 * PI * x - PI).abs();
    let integrand = |u: f64| {
        // cosh(uζ)/sinh(πu) without overflow
        let ratio = ((u * (zeta - PI)).exp() + (-u * (zeta + PI)).exp()) / -(-2.0 * PI * u).exp_m1();
        // arctan(ν₀/u)/ν₀, finite as ν₀ → 0
        let damp = if nu0 == 0.0 { 1.0 / u } else { (nu0 / u).atan() / nu0 };
        u * u * ratio * damp
    };
    let est = integrate_semi_infinite_with(integrand, 0.0, QuadratureOptions::default())?;
    Ok((-est.value, est.error))
}

/// `f_{A·p}` at frequency `ν₀` and position `x = z0/d`.
pub fn f_ap(nu0: f64, x: f64, method: Method) -> Result<LambFunctionResult> {
    let nu0 = check_frequency(nu0)?;
    let x = check_position(x)?;
    let sin2 = (PI * x).sin().powi(2);
    match method {
        Method::LowFrequency => Ok(LambFunctionResult::exact(0.25 * nu0, EvaluationPath::AnalyticLowFreq)
            .warn_if(nu0 > 1.0, LambWarning::OutsideExpansionRegime)),
        Method::HighFrequency => Ok(LambFunctionResult::exact(
            0.25 / sin2 - f_im(x)? / (2.0 * PI * PI * nu0),
            EvaluationPath::AnalyticHighFreq,
        )
        .warn_if(nu0 < 1.0, LambWarning::OutsideExpansionRegime)),
        Method::ContourIntegral | Method::ClosedForm => {
            let (corr, err) = f_ap_correction(nu0, x)?;
            Ok(LambFunctionResult {
                value: 0.25 / sin2 + corr,
                path: EvaluationPath::ContourIntegral,
                cutoff: None,
                tail_estimate: err,
                warning: None,
            })
        }
        Method::Numeric(c) => {
            let s = Summand::new(move |n: f64| {
                if n == 0.0 {
                    return 0.0;
                }
                let inner = regulated_tail(&c, n, |nu| 1.0 / (nu * nu * (nu + nu0)));
                -(2.0 * PI * n * x).cos() * n * n * nu0 * inner
            })
            .pre_regulated();
            let est = regulated_sum(&s, &c)?;
            Ok(LambFunctionResult {
                value: est.value,
                path: numeric_path(&c),
                cutoff: Some(c),
                tail_estimate: est.tail_estimate,
                warning: None,
            }
            .warn_if(near_wall(x), LambWarning::NearWall))
        }
    }
}

/// Abel sum of the low-frequency series `−(ν₀/2) Σ_{n≥1} (−1)ⁿ cos(nζ)`,
/// `ζ = 2πx − π`: the terms are damped by `rⁿ` and `r → 1` is reached
/// by Richardson extrapolation.
pub fn f_ap_abel(nu0: f64, x: f64) -> Result<f64> {
    let nu0 = check_frequency(nu0)?;
    let x = check_position(x)?;
    let zeta = 2.0 * PI * x - PI;
    let damped = |h: f64| {
        let r = 1.0 - h;
        let mut sum = 0.0;
        let mut rn: f64 = 1.0;
        let mut n = 1.0;
        // stop once rⁿ is below 1e-17
        while rn.abs() > 1e-17 {
            rn *= -r;
            sum += rn * (n * zeta).cos();
            n += 1.0;
        }
        -0.5 * nu0 * sum
    };
    let h = 0.02;
    Ok((8.0 * damped(h / 4.0) - 6.0 * damped(h / 2.0) + damped(h)) / 3.0)
}

/// How [`f_a_with_path`] obtained its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FactorPath {
    ContourIntegral,
    /// The contour quadrature failed; the low- and high-frequency forms
    /// were interpolated instead.
    Blended,
}

const BLEND_LOW: f64 = 0.8;
const BLEND_HIGH: f64 = 1.25;

/// Transverse scaling function
/// `F_A = 2π[g_{A²} + f_{A²} − g_{A·p} − f_{A·p}]`, with the tag of the path
/// used for `f_{A·p}`.
pub fn f_a_with_path(nu0: f64, x: f64) -> Result<(f64, FactorPath)> {
    let x = check_position(x)?;
    if !(nu0.is_finite() && nu0 >= 0.0) {
        return Err(Error::Domain {
            func: "f_a",
            value: nu0,
            domain: "nu0 >= 0",
        });
    }
    let sin2 = (PI * x).sin().powi(2);
    if nu0 == 0.0 {
        return Ok((2.0 * PI * (1.0 / 12.0 + 0.25 / sin2), FactorPath::ContourIntegral));
    }
    let g = g_ap_closed(nu0);
    match f_ap_correction(nu0, x) {
        Ok((corr, _)) => Ok((2.0 * PI * (1.0 / 12.0 - g - corr), FactorPath::ContourIntegral)),
        Err(Error::ToleranceNotMet { .. }) => {
            let low = 2.0 * PI * (1.0 / 12.0 + 0.25 / sin2 - g - 0.25 * nu0);
            let high = 2.0 * PI * (1.0 / 12.0 - g + f_im(x)? / (2.0 * PI * PI * nu0));
            let value = if nu0 <= BLEND_LOW {
                low
            } else if nu0 >= BLEND_HIGH {
                high
            } else {
                let t = (nu0 / BLEND_LOW).ln() / (BLEND_HIGH / BLEND_LOW).ln();
                (1.0 - t) * low + t * high
            };
            Ok((value, FactorPath::Blended))
        }
        Err(e) => Err(e),
    }
}

pub fn f_a(nu0: f64, x: f64) -> Result<f64> {
    f_a_with_path(nu0, x).map(|(v, _)| v)
}

/// `ΔE_A = α ħω₀ (q a₀/(e d))² F_A`, in units of `V_C`.
pub fn delta_e_a(g: &PlateGeometry, m: &DipoleModel) -> Result<f64> {
    let nu0 = m.nu0(g.d_nm())?;
    let ratio = m.q_over_e() * m.a0_nm() / g.d_nm();
    let ev = FINE_STRUCTURE * m.hbar_omega0_ev() * ratio * ratio * f_a(nu0, g.z0_over_d())?;
    Ok(ev / m.coulomb_scale())
}

/// `π ν₀ F_A/F_im`, which equals `ΔE_A/|ΔE_im|` and stays below one.
pub fn bound_ratio(g: &PlateGeometry, m: &DipoleModel) -> Result<f64> {
    let nu0 = m.nu0(g.d_nm())?;
    let x = g.z0_over_d();
    Ok(PI * nu0 * f_a(nu0, x)? / f_im(x)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plates::electrostatic::{delta_e_im, ImageShiftMode};
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn logistic(l: f64) -> Method {
        Method::Numeric(CutoffSpec::logistic(l).unwrap())
    }

    #[test]
    fn g_a2_closed_and_numeric() {
        assert_eq!(g_a2(Method::ClosedForm).unwrap().value, 1.0 / 12.0);
        let r = g_a2(logistic(10.0)).unwrap();
        assert!((r.value - 1.0 / 12.0).abs() < 1e-3, "{}", r.value);
        assert_eq!(r.path, EvaluationPath::NumericSmooth);
        assert!(r.tail_estimate < 1e-6);
        assert!(g_a2(Method::LowFrequency).is_err());
    }

    #[test]
    fn g_a2_logistic_inner_integral_matches_closed_form() {
        // ∫_n^∞ dν/(1+e^{ν−Λ}) = ln(1+e^{Λ−n})
        let c = CutoffSpec::logistic(10.0).unwrap();
        for &n in &[0.0, 3.0, 10.0, 17.0] {
            let f: f64 = 10.0 - n;
            assert_relative_eq!(regulated_tail(&c, n, |_| 1.0), f.exp().ln_1p(), max_relative = 1e-9);
        }
    }

    #[test]
    fn g_a2_sharp_oscillates_about_one_twelfth() {
        // F(n) = (Λ−n)₊ gives δ(1−δ)/2, δ = frac(Λ)
        let r = g_a2(Method::Numeric(CutoffSpec::sharp(20.5).unwrap())).unwrap();
        assert!((r.value - 0.125).abs() < 1e-9, "{}", r.value);
        let lambdas: Vec<f64> = (0..=40).map(|i| 15.0 + 0.25 * i as f64).collect();
        let mean = lambdas
            .iter()
            .map(|&l| g_a2(Method::Numeric(CutoffSpec::sharp(l).unwrap())).unwrap().value)
            .sum::<f64>()
            / lambdas.len() as f64;
        assert!((mean - 1.0 / 12.0).abs() < 2e-2, "{mean}");
    }

    #[test]
    fn f_a2_values() {
        assert_relative_eq!(f_a2(0.5, Method::ClosedForm).unwrap().value, 0.25, max_relative = 1e-15);
        for &x in &[0.13, 0.3, 0.42] {
            assert_relative_eq!(
                f_a2(x, Method::ClosedForm).unwrap().value,
                f_a2(1.0 - x, Method::ClosedForm).unwrap().value,
                max_relative = 1e-12
            );
        }
        let n = f_a2(0.5, logistic(10.0)).unwrap();
        assert!((n.value - 0.25).abs() < 5e-3, "{}", n.value);
        assert_eq!(n.warning, None);
        let wall = f_a2(0.05, logistic(10.0)).unwrap();
        assert_eq!(wall.warning, Some(LambWarning::NearWall));
    }

    #[test]
    fn g_ap_closed_form_values() {
        let v = g_ap(1.0, Method::LowFrequency).unwrap().value;
        assert_relative_eq!(v, 1.5 * 2f64.ln() + 1.0 / 24.0 - 1.0, max_relative = 1e-14);
        assert!((v - 0.081_387).abs() < 1e-6);
        assert!(g_ap(1e-9, Method::LowFrequency).unwrap().value.abs() < 1e-7);
        let hf = g_ap(10.0, Method::HighFrequency).unwrap().value;
        assert_relative_eq!(hf, 1.0 / 12.0 + 1.0 / 36000.0, max_relative = 1e-15);
        // both forms tend to 1/12
        assert!((g_ap(10.0, Method::LowFrequency).unwrap().value - hf).abs() < 1e-4);
        assert!(g_ap(0.0, Method::LowFrequency).is_err());
    }

    #[test]
    fn g_ap_numeric_matches_closed_form() {
        let n = g_ap(10.0, logistic(10.0)).unwrap().value;
        let c = g_ap(10.0, Method::LowFrequency).unwrap().value;
        assert!((n / c - 1.0).abs() < 1e-2, "{n} vs {c}");
    }

    #[test]
    fn f_ap_forms() {
        for &x in &[0.2, 0.5, 0.8] {
            assert_eq!(f_ap(0.01, x, Method::LowFrequency).unwrap().value, 0.0025);
        }
        let hf = f_ap(50.0, 0.5, Method::HighFrequency).unwrap().value;
        assert_relative_eq!(hf, 0.25 - f_im(0.5).unwrap() / (2.0 * PI * PI * 50.0), max_relative = 1e-15);
        let ci = f_ap(50.0, 0.5, Method::ContourIntegral).unwrap();
        assert!((ci.value - hf).abs() < 1e-3, "{} vs {hf}", ci.value);
        // small ν₀: the contour form reduces to ν₀/4
        let small = f_ap(1e-3, 0.5, Method::ContourIntegral).unwrap().value;
        assert!((small - 2.5e-4).abs() < 1e-5, "{small}");
    }

    #[test]
    fn f_ap_numeric_matches_contour_form() {
        for &(nu0, x) in &[(0.1, 0.5), (1.0, 0.3), (10.0, 0.7)] {
            let n = f_ap(nu0, x, logistic(10.0)).unwrap().value;
            let c = f_ap(nu0, x, Method::ContourIntegral).unwrap().value;
            assert!((n - c).abs() < 1e-2, "{nu0} {x}: {n} vs {c}");
        }
    }

    #[test]
    fn abel_sum_reproduces_low_frequency_value() {
        for &x in &[0.5, 0.3] {
            let v = f_ap_abel(0.01, x).unwrap();
            assert!((v - 0.0025).abs() < 1e-4 * 0.0025, "{v}");
        }
    }

    #[test]
    fn f_a_reference_values() {
        assert!((f_a(0.0, 0.5).unwrap() - 2.0 * PI / 3.0).abs() < 1e-12);
        assert!((f_a(1e-9, 0.5).unwrap() - 2.0 * PI / 3.0).abs() < 1e-6);
        let x: f64 = 0.02;
        let wall = f_a(0.0, x).unwrap() * x * x;
        assert!((wall * 2.0 * PI - 1.0).abs() < 0.05, "{wall}");
        let mut prev = f64::INFINITY;
        for i in 0..=20 {
            let v = f_a(0.1 * i as f64, 0.5).unwrap();
            assert!(v < prev);
            prev = v;
        }
        assert!(f_a(-1.0, 0.5).is_err());
        assert!(f_a(0.5, 1.0).is_err());
    }

    #[test]
    fn delta_e_a_scaling() {
        let m = DipoleModel::new(1.0, 0.1, 1e-6).unwrap();
        let g = PlateGeometry::new(10.0, 0.5).unwrap();
        let e = delta_e_a(&g, &m).unwrap() * m.coulomb_scale();
        let expected = FINE_STRUCTURE * 1e-6 * 1e-4 * 2.0 * PI / 3.0;
        assert_relative_eq!(e, expected, max_relative = 1e-6);
        let g2 = PlateGeometry::new(20.0, 0.5).unwrap();
        let ratio = delta_e_a(&g, &m).unwrap() / delta_e_a(&g2, &m).unwrap();
        assert!((ratio - 4.0).abs() < 1e-3);
    }

    #[test]
    fn bound_ratio_midplane_fixture() {
        let d = 100.0;
        let m = DipoleModel::new(1.0, 0.1, PI * crate::dipole::HBAR_C_EV_NM / d).unwrap();
        let g = PlateGeometry::new(d, 0.5).unwrap();
        let r = bound_ratio(&g, &m).unwrap();
        assert!((r - BOUND_RATIO_NU0_1_MID).abs() < 1e-9, "{r}");
        assert!(r < 1.0);
        let im = delta_e_im(&g, &m, ImageShiftMode::Analytic).unwrap();
        assert_relative_eq!(delta_e_a(&g, &m).unwrap() / im.abs(), r, max_relative = 1e-12);
    }

    const BOUND_RATIO_NU0_1_MID: f64 = 0.579_841_276_510_387_1;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn bound_holds_and_f_a_positive(x in 0.05f64..0.95, log_nu in -2.0f64..1.0) {
            let nu0 = 10f64.powf(log_nu);
            let fa = f_a(nu0, x).unwrap();
            prop_assert!(fa > 0.0);
            prop_assert!(PI * nu0 * fa / f_im(x).unwrap() < 1.0);
        }

        #[test]
        fn bound_ratio_matches_shift_ratio_for_any_charge(q in 0.2f64..3.0, x in 0.1f64..0.9) {
            let m = DipoleModel::new(q, 0.2, 0.5).unwrap();
            let g = PlateGeometry::new(300.0, x).unwrap();
            let im = delta_e_im(&g, &m, ImageShiftMode::Analytic).unwrap();
            let r = delta_e_a(&g, &m).unwrap() / im.abs();
            prop_assert!((r / bound_ratio(&g, &m).unwrap() - 1.0).abs() < 1e-12);
        }
    }
}
