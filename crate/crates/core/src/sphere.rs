//! A dipole outside a plasmonic nanosphere.
//!
//! The sphere supports surface plasmons `ω_ℓ = ω_P √(ℓ/(2ℓ+1))`, `ℓ ≥ 1`.
//! The dipole is restricted to motion along the sphere's radial axis.
//! Frequencies are expressed as energies `ħω` in eV.

use std::f64::consts::PI;

use crate::dipole::{DipoleModel, EnergyUnit, FINE_STRUCTURE, HBAR_C_EV_NM};
use crate::error::{require_positive, Error, Result};
use crate::plates::total::ShiftBreakdown;

/// Number of dynamical plasmon modes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EllMax {
    Finite(u32),
    /// All modes, summed until the tail bound drops below [`TAIL_BOUND`].
    Infinite,
}

impl EllMax {
    pub fn finite(ell_max: u32) -> Result<Self> {
        if ell_max == 0 {
            return Err(Error::InvalidParameter {
                name: "ell_max",
                value: 0.0,
                reason: "at least one plasmon mode is required",
            });
        }
        Ok(EllMax::Finite(ell_max))
    }
}

/// Absolute bound on the neglected tail of infinite sums.
pub const TAIL_BOUND: f64 = 1e-12;
const MAX_TERMS: u32 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphereSetup {
    r_nm: f64,
    z0_nm: f64,
    hbar_omega_p_ev: f64,
    dipole: DipoleModel,
    ell_max: EllMax,
}

impl SphereSetup {
    pub fn new(r_nm: f64, z0_nm: f64, hbar_omega_p_ev: f64, dipole: DipoleModel, ell_max: EllMax) -> Result<Self> {
        if let EllMax::Finite(l) = ell_max {
            EllMax::finite(l)?;
        }
        Ok(SphereSetup {
            r_nm: require_positive("R", r_nm)?,
            z0_nm: require_positive("z0", z0_nm)?,
            hbar_omega_p_ev: require_positive("omega_P", hbar_omega_p_ev)?,
            dipole,
            ell_max,
        })
    }

    pub fn r_nm(&self) -> f64 {
        self.r_nm
    }

    pub fn z0_nm(&self) -> f64 {
        self.z0_nm
    }

    pub fn hbar_omega_p_ev(&self) -> f64 {
        self.hbar_omega_p_ev
    }

    pub fn dipole(&self) -> &DipoleModel {
        &self.dipole
    }

    pub fn ell_max(&self) -> EllMax {
        self.ell_max
    }

    pub fn with_ell_max(&self, ell_max: EllMax) -> Result<Self> {
        Self::new(self.r_nm, self.z0_nm, self.hbar_omega_p_ev, self.dipole, ell_max)
    }

    /// `ω₀/ω_P`.
    pub fn frequency_ratio(&self) -> f64 {
        self.dipole.hbar_omega0_ev() / self.hbar_omega_p_ev
    }

    /// `z0/R`.
    pub fn gap_ratio(&self) -> f64 {
        self.z0_nm / self.r_nm
    }

    /// `Z_P/Z_vac = c/(π R ω_P)` of the fundamental plasmon.
    pub fn z_p_ratio(&self) -> f64 {
        HBAR_C_EV_NM / (PI * self.hbar_omega_p_ev * self.r_nm)
    }

    /// `Z_eff/Z_vac = c/(π z0 ω_P)`.
    pub fn z_eff_ratio(&self) -> f64 {
        HBAR_C_EV_NM / (PI * self.hbar_omega_p_ev * self.z0_nm)
    }

    /// `η_P = g_P/ω_P = (q a₀/(e R)) √(2πα Z_P/Z_vac)`.
    pub fn eta_p(&self) -> f64 {
        self.dipole.q_over_e() * self.dipole.a0_nm() / self.r_nm * (2.0 * PI * FINE_STRUCTURE * self.z_p_ratio()).sqrt()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlasmonMode {
    pub ell: u32,
    /// `ħω_ℓ` in eV.
    pub omega_ev: f64,
    /// `ħg_ℓ` in eV.
    pub g_ev: f64,
}

fn check_ell(ell: u32) -> Result<f64> {
    if ell == 0 {
        Err(Error::Domain {
            func: "plasmon mode",
            value: 0.0,
            domain: "ell >= 1",
        })
    } else {
        Ok(ell as f64)
    }
}

/// `ω_ℓ = ω_P √(ℓ/(2ℓ+1))`.
pub fn omega_ell(ell: u32, omega_p: f64) -> Result<f64> {
    let l = check_ell(ell)?;
    Ok(omega_p * (l / (2.0 * l + 1.0)).sqrt())
}

/// `g_ℓ = g_P (ℓ+1)/2 · (ℓ/(2ℓ+1))^{1/4} · (R/(R+z0))^{ℓ+2}`, in eV.
pub fn g_ell(ell: u32, s: &SphereSetup) -> Result<f64> {
    let l = check_ell(ell)?;
    let g_p = s.eta_p() * s.hbar_omega_p_ev;
    let r = s.r_nm / (s.r_nm + s.z0_nm);
    Ok(g_p * 0.5 * (l + 1.0) * (l / (2.0 * l + 1.0)).powf(0.25) * r.powf(l + 2.0))
}

pub fn plasmon_mode(ell: u32, s: &SphereSetup) -> Result<PlasmonMode> {
    Ok(PlasmonMode {
        ell,
        omega_ev: omega_ell(ell, s.hbar_omega_p_ev)?,
        g_ev: g_ell(ell, s)?,
    })
}

/// Relative bound on the neglected tail of infinite sums.
const TAIL_REL: f64 = 1e-15;

/// Sums positive terms `t(ℓ)`, `ℓ ≥ 1`. For `Infinite`, `ratio(ℓ)` must
/// bound `t(k+1)/t(k)` for every `k ≥ ℓ`; summation stops once the
/// geometric tail `t(ℓ) ρ/(1−ρ)` is below `abs_tol` and below
/// `TAIL_REL` times the running sum.
fn mode_sum(ell_max: EllMax, abs_tol: f64, term: impl Fn(f64) -> f64, ratio: impl Fn(f64) -> f64) -> Result<f64> {
    match ell_max {
        EllMax::Finite(n) => Ok((1..=n).map(|l| term(l as f64)).sum()),
        EllMax::Infinite => {
            let mut sum = 0.0;
            for l in 1..=MAX_TERMS {
                let l = l as f64;
                let t = term(l);
                sum += t;
                let rho = ratio(l);
                if rho < 1.0 && t * rho / (1.0 - rho) < abs_tol.min(TAIL_REL * sum) {
                    return Ok(sum);
                }
            }
            Err(Error::NonConvergence {
                what: "plasmon mode sum",
                iterations: MAX_TERMS as usize,
                last_term: term(MAX_TERMS as f64),
                tolerance: abs_tol,
            })
        }
    }
}

/// Bound on `t(ℓ+1)/t(ℓ)` for summands `(ℓ+1)² r^{2ℓ+4}` times a
/// non-increasing factor.
fn geometric_ratio(l: f64, r2: f64) -> f64 {
    let k = (l + 2.0) / (l + 1.0);
    k * k * r2
}

/// Electrostatic function of the sphere,
/// `F_im^sp(x) = (x³/2) Σ_ℓ (ℓ+1)² (1+x)^{−(2ℓ+4)}`, `x = z0/R`.
pub fn f_im_sp(x: f64, ell_max: EllMax) -> Result<f64> {
    let x = require_positive("z0_over_R", x)?;
    let r = 1.0 / (1.0 + x);
    let q = r * r;
    match ell_max {
        EllMax::Infinite => {
            // Σ_{ℓ≥1} (ℓ+1)² q^ℓ = (1+q)/(1−q)³ − 1, with 1 − q = x(2+x) r²
            let one_minus_q = x * (2.0 + x) * q;
            Ok(0.5 * x.powi(3) * q * q * ((1.0 + q) / one_minus_q.powi(3) - 1.0))
        }
        finite => mode_sum(finite, 0.0, |l| (l + 1.0).powi(2) * q.powf(l + 2.0), |_| 0.0).map(|s| 0.5 * x.powi(3) * s),
    }
}

/// Electrostatic shift `−V_C (a₀/z0)³ F_im^sp(z0/R)` in units of `V_C`,
/// with `⟨z_d²⟩ = a₀²`. Always uses the full static image potential.
pub fn delta_e_im_sphere(s: &SphereSetup) -> Result<f64> {
    let ratio = s.dipole.a0_nm() / s.z0_nm;
    Ok(-ratio.powi(3) * f_im_sp(s.gap_ratio(), EllMax::Infinite)?)
}

/// Plasmon scaling function
/// `F_P(x, y) = (πy³/2) Σ_ℓ (ℓ+1)² s_ℓ/(1+x s_ℓ) (1+y)^{−(2ℓ+4)}`,
/// `s_ℓ = √((2ℓ+1)/ℓ)`, `x = ω₀/ω_P`, `y = z0/R`.
pub fn f_p(x: f64, y: f64, ell_max: EllMax) -> Result<f64> {
    if !(x.is_finite() && x >= 0.0) {
        return Err(Error::Domain {
            func: "f_p",
            value: x,
            domain: "omega0/omega_P >= 0",
        });
    }
    let y = require_positive("z0_over_R", y)?;
    let prefactor = 0.5 * PI * y.powi(3);
    let r2 = 1.0 / ((1.0 + y) * (1.0 + y));
    let term = |l: f64| {
        let sl = ((2.0 * l + 1.0) / l).sqrt();
        (l + 1.0).powi(2) * sl / (1.0 + x * sl) * r2.powf(l + 2.0)
    };
    let sum = mode_sum(ell_max, TAIL_BOUND / prefactor, term, |l| geometric_ratio(l, r2))?;
    Ok(prefactor * sum)
}

/// Dynamical plasmon shift
/// `α ħω₀ (q a₀/(e z0))² (Z_eff/Z_vac) F_P(ω₀/ω_P, z0/R)` in units of `V_C`.
pub fn delta_e_p(s: &SphereSetup) -> Result<f64> {
    let m = &s.dipole;
    let ratio = m.q_over_e() * m.a0_nm() / s.z0_nm;
    let f = f_p(s.frequency_ratio(), s.gap_ratio(), s.ell_max)?;
    let ev = FINE_STRUCTURE * m.hbar_omega0_ev() * ratio * ratio * s.z_eff_ratio() * f;
    Ok(ev / m.coulomb_scale())
}

/// The same shift from second-order perturbation theory mode by mode,
/// `Σ_ℓ ħg_ℓ² ω₀/(ω_ℓ(ω_ℓ+ω₀))`, in units of `V_C`.
pub fn delta_e_p_mode_sum(s: &SphereSetup) -> Result<f64> {
    let w0 = s.dipole.hbar_omega0_ev();
    let r2 = (s.r_nm / (s.r_nm + s.z0_nm)).powi(2);
    let term = |l: f64| {
        let ell = l as u32;
        match (omega_ell(ell, s.hbar_omega_p_ev), g_ell(ell, s)) {
            (Ok(w), Ok(g)) => g * g * w0 / (w * (w + w0)),
            _ => f64::NAN,
        }
    };
    let ev = mode_sum(s.ell_max, f64::INFINITY, term, |l| geometric_ratio(l, r2))?;
    Ok(ev / s.dipole.coulomb_scale())
}

/// `Σ_{ℓ ≤ ℓmax} ħg_ℓ²/ω_ℓ ⟨μ²⟩` in units of `V_C`, the counter-term
/// that keeps the dynamical modes from double counting electrostatics.
/// Over all modes it cancels the static image energy exactly.
pub fn p2_counterterm(s: &SphereSetup, ell_max: EllMax) -> Result<f64> {
    let r2 = (s.r_nm / (s.r_nm + s.z0_nm)).powi(2);
    let term = |l: f64| {
        let ell = l as u32;
        match (omega_ell(ell, s.hbar_omega_p_ev), g_ell(ell, s)) {
            (Ok(w), Ok(g)) => g * g / w,
            _ => f64::NAN,
        }
    };
    let ev = mode_sum(ell_max, f64::INFINITY, term, |l| geometric_ratio(l, r2))?;
    Ok(ev / s.dipole.coulomb_scale())
}

/// `ΔE_GS = ΔE_im + ΔE_P` in units of `V_C`; transverse modes are not
/// included, so `e_a` is zero and the LC slot holds the plasmon term.
pub fn sphere_total(s: &SphereSetup) -> Result<ShiftBreakdown> {
    let e_im = delta_e_im_sphere(s)?;
    let e_p = delta_e_p(s)?;
    Ok(ShiftBreakdown::new(e_im, 0.0, e_p, EnergyUnit::CoulombVC, s.dipole.units()))
}
