//! Single-point evaluations and parameter sweeps.

use vacshift::plates::{bound_ratio, eta, f_a_with_path, f_im, total_shift, FactorPath};
use vacshift::sphere::{f_im_sp, f_p, sphere_total};
use vacshift::{EllMax, EnergyUnit};

use crate::error::CliError;
use crate::parallel::ordered_map;
use crate::params::{parse_ell_max, Model, Params};
use crate::table::{Table, Value};

const PLATE_INPUTS: &[&str] = &[
    "d_nm",
    "z0_over_d",
    "a0_nm",
    "q_over_e",
    "hbar_omega0_ev",
    "z_over_zvac",
    "hbar_omega_c_ev",
];

const PLATE_OUTPUTS: &[&str] = &[
    "nu0",
    "eta",
    "f_im",
    "f_a",
    "f_a_path",
    "bound_ratio",
    "v_c_ev",
    "e_im_vc",
    "e_a_vc",
    "e_cav_vc",
    "total_vc",
    "e_im_ev",
    "e_a_ev",
    "e_cav_ev",
    "total_ev",
    "total_over_hbar_omega0",
];

const SPHERE_INPUTS: &[&str] = &["r_nm", "z0_nm", "hbar_omega_p_ev", "a0_nm", "q_over_e", "hbar_omega0_ev", "ell_max"];

const SPHERE_OUTPUTS: &[&str] = &[
    "omega0_over_omega_p",
    "z0_over_r",
    "z_eff_over_zvac",
    "eta_p",
    "f_im_sp",
    "f_p",
    "v_c_ev",
    "e_im_vc",
    "e_p_vc",
    "total_vc",
    "e_im_ev",
    "e_p_ev",
    "total_ev",
    "total_over_hbar_omega0",
];

fn header(model: Model, prefix: &[&str]) -> Vec<String> {
    let (inputs, outputs) = match model {
        Model::Plates => (PLATE_INPUTS, PLATE_OUTPUTS),
        Model::Sphere => (SPHERE_INPUTS, SPHERE_OUTPUTS),
    };
    prefix.iter().chain(inputs).chain(outputs).map(|s| s.to_string()).collect()
}

fn path_name(p: FactorPath) -> &'static str {
    match p {
        FactorPath::ContourIntegral => "contour",
        FactorPath::Blended => "blended",
    }
}

type Row = (Vec<Value>, Result<Vec<Value>, String>);

fn plate_row(p: &Params) -> Row {
    let setup = p.plate_setup();
    let wc = match &setup {
        Ok(s) => s.hbar_omega_c_ev(),
        Err(_) => p.opt_num("omegac-ev").unwrap_or(f64::NAN),
    };
    let inputs = vec![
        p.num("d-nm").into(),
        p.num("z0-frac").into(),
        p.num("a0-nm").into(),
        p.num("q-e").into(),
        p.num("omega0-ev").into(),
        p.num("z-ratio").into(),
        if wc.is_finite() { wc.into() } else { Value::Missing },
    ];
    let outputs = (|| -> vacshift::Result<Vec<Value>> {
        let s = setup?;
        let g = s.geometry();
        let m = s.dipole();
        let x = g.z0_over_d();
        let nu0 = m.nu0(g.d_nm())?;
        let (fa, path) = f_a_with_path(nu0, x)?;
        let shift = total_shift(&s)?;
        let ev = shift.in_ev();
        let hw = shift.in_unit(EnergyUnit::HbarOmega0).total;
        Ok(vec![
            nu0.into(),
            eta(&s).into(),
            f_im(x)?.into(),
            fa.into(),
            path_name(path).into(),
            bound_ratio(g, m)?.into(),
            m.coulomb_scale().into(),
            shift.e_im.into(),
            shift.e_a.into(),
            shift.e_cav.into(),
            shift.total.into(),
            ev[0].into(),
            ev[1].into(),
            ev[2].into(),
            ev[3].into(),
            hw.into(),
        ])
    })();
    (inputs, outputs.map_err(|e| e.to_string()))
}

fn sphere_row(p: &Params) -> Row {
    let inputs = vec![
        p.num("r-nm").into(),
        p.num("z0-nm").into(),
        p.num("omegap-ev").into(),
        p.num("a0-nm").into(),
        p.num("q-e").into(),
        p.num("omega0-ev").into(),
        p.text("ell-max").into(),
    ];
    let outputs = (|| -> vacshift::Result<Vec<Value>> {
        let s = p.sphere_setup()?;
        let shift = sphere_total(&s)?;
        let ev = shift.in_ev();
        let hw = shift.in_unit(EnergyUnit::HbarOmega0).total;
        Ok(vec![
            s.frequency_ratio().into(),
            s.gap_ratio().into(),
            s.z_eff_ratio().into(),
            s.eta_p().into(),
            f_im_sp(s.gap_ratio(), EllMax::Infinite)?.into(),
            f_p(s.frequency_ratio(), s.gap_ratio(), s.ell_max())?.into(),
            s.dipole().coulomb_scale().into(),
            shift.e_im.into(),
            shift.e_cav.into(),
            shift.total.into(),
            ev[0].into(),
            ev[2].into(),
            ev[3].into(),
            hw.into(),
        ])
    })();
    (inputs, outputs.map_err(|e| e.to_string()))
}

fn row(p: &Params) -> Row {
    match p.model() {
        Model::Plates => plate_row(p),
        Model::Sphere => sphere_row(p),
    }
}

/// One-row table for a single setup.
pub fn single(p: &Params) -> Table {
    let mut t = Table::new(&header(p.model(), &[]));
    let (inputs, outputs) = row(p);
    t.push_result(inputs, outputs);
    t
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scale {
    Linear,
    Log,
}

impl Scale {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "lin" => Some(Scale::Linear),
            "log" => Some(Scale::Log),
            _ => None,
        }
    }
}

/// One swept parameter.
#[derive(Debug, Clone, PartialEq)]
pub struct Axis {
    pub key: &'static str,
    pub from: f64,
    pub to: f64,
    pub points: usize,
    pub scale: Scale,
}

impl Axis {
    pub fn new(model: Model, key: &str, from: f64, to: f64, points: usize, scale: Scale) -> Result<Self, CliError> {
        let key = model
            .keys()
            .iter()
            .find(|k| k.name == key)
            .map(|k| k.name)
            .ok_or_else(|| CliError::config(format!("`{key}` is not a {} parameter", model.name())))?;
        if points == 0 {
            return Err(CliError::config("--points must be at least 1"));
        }
        if !(from.is_finite() && to.is_finite()) {
            return Err(CliError::config("sweep bounds must be finite"));
        }
        if scale == Scale::Log && !(from > 0.0 && to > 0.0) {
            return Err(CliError::config("log sweeps need positive bounds"));
        }
        Ok(Axis { key, from, to, points, scale })
    }

    pub fn values(&self) -> Vec<f64> {
        grid(self.from, self.to, self.points, self.scale)
    }

    fn assign(&self, p: &Params, v: f64) -> Result<Params, CliError> {
        let text = if self.key == "ell-max" {
            format!("{}", v.round() as i64)
        } else {
            format!("{v:e}")
        };
        if self.key == "ell-max" {
            parse_ell_max(&text)?;
        }
        Ok(p.with(self.key, text))
    }
}

/// `points` values from `from` to `to`, both ends included exactly.
pub fn grid(from: f64, to: f64, points: usize, scale: Scale) -> Vec<f64> {
    if points == 1 {
        return vec![from];
    }
    let last = (points - 1) as f64;
    (0..points)
        .map(|i| {
            if i == 0 {
                return from;
            }
            if i == points - 1 {
                return to;
            }
            let t = i as f64 / last;
            match scale {
                Scale::Linear => from + t * (to - from),
                Scale::Log => (from.ln() + t * (to.ln() - from.ln())).exp(),
            }
        })
        .collect()
}

/// Full table over one or two axes; the first axis varies slowest.
pub fn sweep(base: &Params, axes: &[Axis], jobs: usize) -> Result<Table, CliError> {
    let mut points = vec![base.clone()];
    for axis in axes {
        let mut next = Vec::with_capacity(points.len() * axis.points);
        for p in &points {
            for v in axis.values() {
                next.push(axis.assign(p, v)?);
            }
        }
        points = next;
    }
    let rows = ordered_map(jobs, &points, row);
    let mut t = Table::new(&header(base.model(), &[]));
    for (inputs, outputs) in rows {
        t.push_result(inputs, outputs);
    }
    Ok(t)
}
