//! Coupling to the LC resonance and the total ground-state shift of the
//! plate geometry.

use std::f64::consts::PI;

use crate::dipole::{DipoleModel, EnergyUnit, ReducedUnits, FINE_STRUCTURE};
use crate::error::{require_positive, Error, Result};
use crate::plates::electrostatic::{delta_e_im, ImageShiftMode, PlateGeometry};
use crate::plates::transverse::delta_e_a;

/// Largest coupling parameter accepted by [`PlateSetup::new`].
pub const MAX_ETA: f64 = 5.0;
/// `ω_c/ω₀` used when no LC frequency is given.
pub const DEFAULT_OMEGA_C_RATIO: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlateSetup {
    geometry: PlateGeometry,
    dipole: DipoleModel,
    hbar_omega_c_ev: f64,
    z_over_zvac: f64,
}

impl PlateSetup {
    /// `hbar_omega_c_ev = None` places the LC resonance at `10 ω₀`.
    pub fn new(
        geometry: PlateGeometry,
        dipole: DipoleModel,
        z_over_zvac: f64,
        hbar_omega_c_ev: Option<f64>,
    ) -> Result<Self> {
        let hbar_omega_c_ev = match hbar_omega_c_ev {
            Some(w) => require_positive("omega_c", w)?,
            None => DEFAULT_OMEGA_C_RATIO * dipole.hbar_omega0_ev(),
        };
        let setup = PlateSetup {
            geometry,
            dipole,
            hbar_omega_c_ev,
            z_over_zvac: require_positive("z_over_zvac", z_over_zvac)?,
        };
        let eta = eta(&setup);
        if eta >= MAX_ETA {
            return Err(Error::InvalidParameter {
                name: "eta",
                value: eta,
                reason: "coupling parameter must stay below 5",
            });
        }
        Ok(setup)
    }

    pub fn geometry(&self) -> &PlateGeometry {
        &self.geometry
    }

    pub fn dipole(&self) -> &DipoleModel {
        &self.dipole
    }

    pub fn hbar_omega_c_ev(&self) -> f64 {
        self.hbar_omega_c_ev
    }

    pub fn z_over_zvac(&self) -> f64 {
        self.z_over_zvac
    }
}

/// `η = (q a₀/(e d)) √(2πα Z/Z_vac)`.
pub fn eta(s: &PlateSetup) -> f64 {
    let ratio = s.dipole.q_over_e() * s.dipole.a0_nm() / s.geometry.d_nm();
    ratio * (2.0 * PI * FINE_STRUCTURE * s.z_over_zvac).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CavityShiftMode {
    /// Second-order perturbation theory in the LC mode.
    Exact,
    /// The `ω₀ ≪ ω_c` limit `ħω₀η²`.
    LowFreqApprox,
}

/// LC-mode shift in units of `V_C`. With `g = η ω_c` the exact result is
/// `ħg²/ω_c − ħg²/(ω_c+ω₀) = ħω₀ η² ω_c/(ω_c+ω₀)`.
pub fn delta_e_cav(s: &PlateSetup, mode: CavityShiftMode) -> f64 {
    let w0 = s.dipole.hbar_omega0_ev();
    let eta2 = eta(s).powi(2);
    let ev = match mode {
        CavityShiftMode::Exact => {
            let wc = s.hbar_omega_c_ev;
            w0 * eta2 * wc / (wc + w0)
        }
        CavityShiftMode::LowFreqApprox => w0 * eta2,
    };
    ev / s.dipole.coulomb_scale()
}

/// The three contributions to the ground-state shift and their sum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShiftBreakdown {
    pub e_im: f64,
    pub e_a: f64,
    pub e_cav: f64,
    pub total: f64,
    pub unit: EnergyUnit,
    pub scales: ReducedUnits,
}

impl ShiftBreakdown {
    pub fn new(e_im: f64, e_a: f64, e_cav: f64, unit: EnergyUnit, scales: ReducedUnits) -> Self {
        ShiftBreakdown {
            e_im,
            e_a,
            e_cav,
            total: e_im + e_a + e_cav,
            unit,
            scales,
        }
    }

    pub fn in_unit(&self, unit: EnergyUnit) -> Self {
        let c = |v: f64| self.scales.convert(v, self.unit, unit);
        ShiftBreakdown {
            e_im: c(self.e_im),
            e_a: c(self.e_a),
            e_cav: c(self.e_cav),
            total: c(self.total),
            unit,
            scales: self.scales,
        }
    }

    /// Each component in eV, in the order `(e_im, e_a, e_cav, total)`.
    pub fn in_ev(&self) -> [f64; 4] {
        let c = |v: f64| self.scales.to_ev(v, self.unit);
        [c(self.e_im), c(self.e_a), c(self.e_cav), c(self.total)]
    }
}

/// `ΔE_GS = ΔE_im + ΔE_A + ΔE_cav` in units of `V_C`, with the analytic
/// electrostatic term and the exact LC term.
pub fn total_shift(s: &PlateSetup) -> Result<ShiftBreakdown> {
    let e_im = delta_e_im(&s.geometry, &s.dipole, ImageShiftMode::Analytic)?;
    let e_a = delta_e_a(&s.geometry, &s.dipole)?;
    let e_cav = delta_e_cav(s, CavityShiftMode::Exact);
    Ok(ShiftBreakdown::new(e_im, e_a, e_cav, EnergyUnit::CoulombVC, s.dipole.units()))
}

/// Fixed parameters of a sign map over `(d/a₀, Z/Z_vac)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignSlice {
    pub z0_over_d: f64,
    pub hbar_omega0_over_vc: f64,
    pub q_over_e: f64,
    /// Only fixes the absolute length scale; the map is independent of it.
    pub a0_nm: f64,
    pub omega_c_over_omega0: f64,
}

impl Default for SignSlice {
    fn default() -> Self {
        SignSlice {
            z0_over_d: 0.5,
            hbar_omega0_over_vc: 0.5,
            q_over_e: 1.0,
            a0_nm: 0.1,
            omega_c_over_omega0: DEFAULT_OMEGA_C_RATIO,
        }
    }
}

impl SignSlice {
    pub fn setup(&self, d_over_a0: f64, z_over_zvac: f64) -> Result<PlateSetup> {
        let probe = DipoleModel::new(self.q_over_e, self.a0_nm, 1.0)?;
        let dipole = probe.with_hbar_omega0(self.hbar_omega0_over_vc * probe.coulomb_scale())?;
        let geometry = PlateGeometry::new(require_positive("d_over_a0", d_over_a0)? * self.a0_nm, self.z0_over_d)?;
        let wc = require_positive("omega_c_over_omega0", self.omega_c_over_omega0)? * dipole.hbar_omega0_ev();
        PlateSetup::new(geometry, dipole, z_over_zvac, Some(wc))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignRow {
    pub d_over_a0: f64,
    pub z_over_zvac: f64,
    pub shift: ShiftBreakdown,
    pub positive: bool,
}

pub fn sign_row(slice: &SignSlice, d_over_a0: f64, z_over_zvac: f64) -> Result<SignRow> {
    let shift = total_shift(&slice.setup(d_over_a0, z_over_zvac)?)?;
    Ok(SignRow {
        d_over_a0,
        z_over_zvac,
        shift,
        positive: shift.total > 0.0,
    })
}

/// Relative precision of the located zero crossing.
pub const CONTOUR_REL_TOL: f64 = 1e-3;

/// Impedance at which the total shift changes sign at fixed `d/a₀`,
/// located by bisection inside `[z_min, z_max]`. `None` when the sign does
/// not change in that interval.
pub fn zero_contour(slice: &SignSlice, d_over_a0: f64, z_min: f64, z_max: f64) -> Result<Option<f64>> {
    let total = |z: f64| sign_row(slice, d_over_a0, z).map(|r| r.shift.total);
    let (mut lo, mut hi) = (z_min, z_max);
    let (f_lo, f_hi) = (total(lo)?, total(hi)?);
    if f_lo.signum() == f_hi.signum() {
        return Ok(None);
    }
    while hi - lo > CONTOUR_REL_TOL * lo {
        let mid = 0.5 * (lo + hi);
        if total(mid)?.signum() == f_lo.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(Some(0.5 * (lo + hi)))
}

#[derive(Debug, Clone, PartialEq)]
pub struct SignGrid {
    /// Row-major in `(d/a₀, Z/Z_vac)`.
    pub rows: Vec<SignRow>,
    /// `(d/a₀, Z*)` for every spacing of the grid.
    pub contour: Vec<(f64, Option<f64>)>,
}

/// Sign map of the total shift over the given spacings and impedances.
pub fn sign_boundary_grid(slice: &SignSlice, d_over_a0: &[f64], z_over_zvac: &[f64]) -> Result<SignGrid> {
    let check_increasing = |name: &'static str, v: &[f64]| -> Result<()> {
        for w in v.windows(2) {
            if !(w[1] > w[0]) {
                return Err(Error::InvalidParameter {
                    name,
                    value: w[1],
                    reason: "grid must be strictly increasing",
                });
            }
        }
        Ok(())
    };
    check_increasing("d_over_a0", d_over_a0)?;
    check_increasing("z_over_zvac", z_over_zvac)?;
    let mut rows = Vec::with_capacity(d_over_a0.len() * z_over_zvac.len());
    let mut contour = Vec::with_capacity(d_over_a0.len());
    for &d in d_over_a0 {
        for &z in z_over_zvac {
            rows.push(sign_row(slice, d, z)?);
        }
        let star = match (z_over_zvac.first(), z_over_zvac.last()) {
            (Some(&lo), Some(&hi)) if hi > lo => zero_contour(slice, d, lo, hi)?,
            _ => None,
        };
        contour.push((d, star));
    }
    Ok(SignGrid { rows, contour })
}
