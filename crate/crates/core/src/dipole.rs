//! The isotropic harmonic dipole: characteristic scales and unit plumbing.
//!
//! Lengths are in nanometres and energies in electronvolts. Every other
//! module works in dimensionless form and reports energies in one of the
//! [`EnergyUnit`]s below.

use std::f64::consts::PI;

use crate::error::{require_positive, Error, Result};

/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
/// Fine-structure constant.
pub const FINE_STRUCTURE: f64 = 1.0 / 137.035_999_084;
/// ħc in eV·nm.
pub const HBAR_C_EV_NM: f64 = 197.326_980_4;
/// Bohr radius in nm.
pub const BOHR_RADIUS_NM: f64 = 0.052_917_721_090_3;

/// `ν₀ = ω₀ d / (π c)` from SI inputs (rad/s and metres).
pub fn nu0_from_si(omega0_rad_per_s: f64, d_m: f64) -> Result<f64> {
    require_positive("d", d_m)?;
    if !(omega0_rad_per_s >= 0.0) {
        return Err(Error::InvalidParameter {
            name: "omega0",
            value: omega0_rad_per_s,
            reason: "must be non-negative",
        });
    }
    Ok(omega0_rad_per_s * d_m / (PI * SPEED_OF_LIGHT))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DipoleModel {
    q_over_e: f64,
    a0_nm: f64,
    hbar_omega0_ev: f64,
}

impl DipoleModel {
    pub fn new(q_over_e: f64, a0_nm: f64, hbar_omega0_ev: f64) -> Result<Self> {
        Ok(DipoleModel {
            q_over_e: require_positive("q_over_e", q_over_e)?,
            a0_nm: require_positive("a0", a0_nm)?,
            hbar_omega0_ev: require_positive("omega0", hbar_omega0_ev)?,
        })
    }

    pub fn q_over_e(&self) -> f64 {
        self.q_over_e
    }

    pub fn a0_nm(&self) -> f64 {
        self.a0_nm
    }

    pub fn hbar_omega0_ev(&self) -> f64 {
        self.hbar_omega0_ev
    }

    /// Copy with a different transition energy.
    pub fn with_hbar_omega0(&self, hbar_omega0_ev: f64) -> Result<Self> {
        Self::new(self.q_over_e, self.a0_nm, hbar_omega0_ev)
    }

    /// Coulomb energy `V_C = q²/(4πε₀a₀) = α ħc (q/e)² / a₀`, in eV.
    pub fn coulomb_scale(&self) -> f64 {
        FINE_STRUCTURE * HBAR_C_EV_NM * self.q_over_e * self.q_over_e / self.a0_nm
    }

    /// Transition frequency in units of the lowest transverse mode `πc/d`.
    pub fn nu0(&self, d_nm: f64) -> Result<f64> {
        require_positive("d", d_nm)?;
        Ok(self.hbar_omega0_ev * d_nm / (PI * HBAR_C_EV_NM))
    }

    pub fn units(&self) -> ReducedUnits {
        ReducedUnits {
            coulomb_ev: self.coulomb_scale(),
            hbar_omega0_ev: self.hbar_omega0_ev,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EnergyUnit {
    CoulombVC,
    HbarOmega0,
}

impl EnergyUnit {
    pub fn name(self) -> &'static str {
        match self {
            EnergyUnit::CoulombVC => "V_C",
            EnergyUnit::HbarOmega0 => "hbar_omega0",
        }
    }
}

/// Conversion factors between the dimensionless energy units of one dipole.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedUnits {
    coulomb_ev: f64,
    hbar_omega0_ev: f64,
}

impl ReducedUnits {
    fn ev_per(&self, unit: EnergyUnit) -> f64 {
        match unit {
            EnergyUnit::CoulombVC => self.coulomb_ev,
            EnergyUnit::HbarOmega0 => self.hbar_omega0_ev,
        }
    }

    pub fn to_ev(&self, value: f64, unit: EnergyUnit) -> f64 {
        value * self.ev_per(unit)
    }

    pub fn from_ev(&self, ev: f64, unit: EnergyUnit) -> f64 {
        ev / self.ev_per(unit)
    }

    pub fn convert(&self, value: f64, from: EnergyUnit, to: EnergyUnit) -> f64 {
        if from == to {
            return value;
        }
        value * (self.ev_per(from) / self.ev_per(to))
    }
}
