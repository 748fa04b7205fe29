//! Vacuum-induced ground-state shifts of a single dipole in two confined
//! geometries: a parallel-plate capacitor closed by an LC resonator, and a
//! plasmonic nanosphere.
//!
//! Every contribution is split into its electrostatic image part and its
//! dynamical (transverse-vacuum, LC-mode, or plasmon) part. Divergent mode
//! sums are regularized with an explicit high-frequency cutoff and checked
//! against closed forms.
//!
//! Lengths are in nm and energies in eV at the API boundary; shifts are
//! returned in units of the Coulomb energy `V_C` unless stated otherwise.

pub mod dipole;
pub mod error;
pub mod numerics;
pub mod plates;
pub mod sphere;

pub use dipole::{DipoleModel, EnergyUnit, ReducedUnits};
pub use error::{Error, Result};
pub use numerics::{CutoffKind, CutoffSpec};
pub use plates::{PlateGeometry, PlateSetup, ShiftBreakdown};
pub use sphere::{EllMax, SphereSetup};
