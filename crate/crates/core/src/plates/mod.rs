//! The parallel-plate capacitor closed by an LC resonator.

pub mod electrostatic;
pub mod total;
pub mod transverse;

pub use electrostatic::{
    delta_e_im, f_im, v_im_full, v_im_quadratic, v_im_split, DipoleDisplacement, ImageShiftMode, ImageSplit,
    PlateGeometry,
};

pub use transverse::{
    bound_ratio, delta_e_a, f_a, f_a2, f_a_with_path, f_ap, f_ap_abel, g_a2, g_ap, EvaluationPath, FactorPath,
    LambFunctionResult, LambWarning, Method,
};

pub use total::{
    delta_e_cav, eta, sign_boundary_grid, sign_row, total_shift, zero_contour, CavityShiftMode, PlateSetup,
    ShiftBreakdown, SignGrid, SignRow, SignSlice, CONTOUR_REL_TOL,
};
