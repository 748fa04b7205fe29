//! Data behind each published curve, one column per curve.

use std::f64::consts::PI;

use vacshift::plates::{
    f_a, f_a2, f_a_with_path, f_ap, f_im, g_a2, g_ap, total_shift, v_im_full, v_im_quadratic, v_im_split,
    zero_contour, DipoleDisplacement, FactorPath, Method, PlateGeometry, SignSlice,
};
use vacshift::sphere::f_p;
use vacshift::{CutoffSpec, DipoleModel, EllMax};

use crate::commands::{grid, Scale};
use crate::parallel::ordered_map;
use crate::table::{Table, Value};

pub const NAMES: &[&str] = &["fig2a", "fig2b", "fig2c", "fig3b", "sm_g1", "sm_f1", "sm_gm", "sm_fm", "sm_vim", "sm_FA"];

type Outputs = vacshift::Result<Vec<Value>>;

fn path_name(p: FactorPath) -> &'static str {
    match p {
        FactorPath::ContourIntegral => "contour",
        FactorPath::Blended => "blended",
    }
}

/// Evaluates `f` at every point in parallel and appends the rows in order.
fn fill<T, F>(t: &mut Table, jobs: usize, points: &[T], inputs: impl Fn(&T) -> Vec<Value>, f: F)
where
    T: Sync,
    F: Fn(&T) -> Outputs + Sync + Send,
{
    let results = ordered_map(jobs, points, |p| f(p).map_err(|e| e.to_string()));
    for (p, r) in points.iter().zip(results) {
        t.push_result(inputs(p), r);
    }
}

fn steps(from: f64, to: f64, step: f64) -> Vec<f64> {
    let n = ((to - from) / step).round() as usize;
    (0..=n).map(|i| from + i as f64 * step).collect()
}

fn positions() -> Vec<f64> {
    steps(0.05, 0.95, 0.01)
}

pub fn figure(name: &str, jobs: usize) -> Option<Table> {
    Some(match name {
        "fig2a" => fig2a(jobs),
        "fig2b" => fig2b(jobs),
        "fig2c" => fig2c(jobs),
        "fig3b" => fig3b(jobs),
        "sm_g1" => sm_g1(jobs),
        "sm_f1" => sm_f1(jobs),
        "sm_gm" => sm_gm(jobs),
        "sm_fm" => sm_fm(jobs),
        "sm_vim" => sm_vim(jobs),
        "sm_FA" => sm_fa(jobs),
        _ => return None,
    })
}

fn fig2a(jobs: usize) -> Table {
    let mut t = Table::new(&["z0_over_d", "f_im", "f_a_static"]);
    fill(&mut t, jobs, &positions(), |&x| vec![x.into()], |&x| Ok(vec![f_im(x)?.into(), f_a(0.0, x)?.into()]));
    t
}

const FIG2B_POSITIONS: [f64; 2] = [0.5, 0.2];

fn fig2b(jobs: usize) -> Table {
    let mut t = Table::new(&["omega0_over_omega_perp", "f_a_z0_over_d_0.5", "f_a_z0_over_d_0.2"]);
    t.comment("positions z0/d = 0.5 and 0.2 are assumed; the second value is not given with the figure");
    fill(
        &mut t,
        jobs,
        &steps(0.02, 3.0, 0.02),
        |&nu| vec![nu.into()],
        |&nu| FIG2B_POSITIONS.iter().map(|&x| f_a(nu, x).map(Value::from)).collect(),
    );
    t
}

const FIG2C_Z_RANGE: (f64, f64) = (0.1, 300.0);

fn fig2c(jobs: usize) -> Table {
    let slice = SignSlice::default();
    let spacings = grid(2.0, 100.0, 25, Scale::Log);
    let impedances = grid(FIG2C_Z_RANGE.0, FIG2C_Z_RANGE.1, 40, Scale::Log);
    let stars = ordered_map(jobs, &spacings, |&d| zero_contour(&slice, d, FIG2C_Z_RANGE.0, FIG2C_Z_RANGE.1));
    let points: Vec<(usize, f64, f64)> = spacings
        .iter()
        .enumerate()
        .flat_map(|(i, &d)| impedances.iter().map(move |&z| (i, d, z)))
        .collect();
    let mut t = Table::new(&["d_over_a0", "z_over_zvac", "total_vc", "positive", "z_star"]);
    t.comment("z0/d = 0.5, hbar*omega0 = V_C/2, q = e, omega_c = 10 omega0; z_star is the sign change at this spacing");
    fill(
        &mut t,
        jobs,
        &points,
        |&(_, d, z)| vec![d.into(), z.into()],
        |&(i, d, z)| {
            let total = total_shift(&slice.setup(d, z)?)?.total;
            let star = match &stars[i] {
                Ok(Some(s)) => Value::Num(*s),
                Ok(None) => Value::Missing,
                Err(e) => return Err(e.clone()),
            };
            Ok(vec![total.into(), Value::Int(i64::from(total > 0.0)), star])
        },
    );
    t
}

const FIG3B_GAPS: [f64; 3] = [0.1, 0.5, 1.0];

fn fig3b(jobs: usize) -> Table {
    let mut t = Table::new(&["ell_max", "f_p_ratio_y_0.1", "f_p_ratio_y_0.5", "f_p_ratio_y_1"]);
    t.comment("omega0/omega_P = 1; gaps z0/R = 0.1, 0.5, 1 are assumed; ratio is F_P(ell_max)/F_P(inf)");
    let limits: Vec<vacshift::Result<f64>> = FIG3B_GAPS.iter().map(|&y| f_p(1.0, y, EllMax::Infinite)).collect();
    let ells: Vec<u32> = (1..=100).collect();
    fill(
        &mut t,
        jobs,
        &ells,
        |&l| vec![Value::Int(i64::from(l))],
        |&l| {
            FIG3B_GAPS
                .iter()
                .zip(&limits)
                .map(|(&y, inf)| Ok(Value::from(f_p(1.0, y, EllMax::Finite(l))? / inf.clone()?)))
                .collect()
        },
    );
    t
}

fn cutoffs() -> Vec<f64> {
    steps(1.0, 30.0, 0.25)
}

fn sm_g1(jobs: usize) -> Table {
    let mut t = Table::new(&["lambda", "g_a2_sharp", "g_a2_logistic", "g_a2_regularized"]);
    fill(
        &mut t,
        jobs,
        &cutoffs(),
        |&l| vec![l.into()],
        |&l| {
            Ok(vec![
                g_a2(Method::Numeric(CutoffSpec::sharp(l)?))?.value.into(),
                g_a2(Method::Numeric(CutoffSpec::logistic(l)?))?.value.into(),
                g_a2(Method::ClosedForm)?.value.into(),
            ])
        },
    );
    t
}

fn sm_f1(jobs: usize) -> Table {
    let mut t = Table::new(&[
        "lambda",
        "f_a2_sharp_x_0.5",
        "f_a2_logistic_x_0.5",
        "f_a2_closed_x_0.5",
        "f_a2_sharp_x_0.2",
        "f_a2_logistic_x_0.2",
        "f_a2_closed_x_0.2",
    ]);
    fill(
        &mut t,
        jobs,
        &cutoffs(),
        |&l| vec![l.into()],
        |&l| {
            let mut out = Vec::new();
            for x in [0.5, 0.2] {
                out.push(f_a2(x, Method::Numeric(CutoffSpec::sharp(l)?))?.value.into());
                out.push(f_a2(x, Method::Numeric(CutoffSpec::logistic(l)?))?.value.into());
                out.push(f_a2(x, Method::ClosedForm)?.value.into());
            }
            Ok(out)
        },
    );
    t
}

const SM_LAMBDA: f64 = 10.0;

fn frequencies() -> Vec<f64> {
    grid(0.01, 10.0, 31, Scale::Log)
}

fn sm_gm(jobs: usize) -> Table {
    let mut t = Table::new(&["nu0", "g_ap_sharp", "g_ap_logistic", "g_ap_closed", "g_ap_high_freq"]);
    t.comment("cutoff lambda = 10");
    fill(
        &mut t,
        jobs,
        &frequencies(),
        |&nu| vec![nu.into()],
        |&nu| {
            Ok(vec![
                g_ap(nu, Method::Numeric(CutoffSpec::sharp(SM_LAMBDA)?))?.value.into(),
                g_ap(nu, Method::Numeric(CutoffSpec::logistic(SM_LAMBDA)?))?.value.into(),
                g_ap(nu, Method::ClosedForm)?.value.into(),
                g_ap(nu, Method::HighFrequency)?.value.into(),
            ])
        },
    );
    t
}

fn sm_fm(jobs: usize) -> Table {
    let mut t = Table::new(&[
        "nu0",
        "f_ap_sharp",
        "f_ap_logistic",
        "f_ap_contour",
        "f_ap_low_freq",
        "f_ap_high_freq",
    ]);
    t.comment("z0/d = 0.5, cutoff lambda = 10");
    let x = 0.5;
    fill(
        &mut t,
        jobs,
        &frequencies(),
        |&nu| vec![nu.into()],
        |&nu| {
            Ok(vec![
                f_ap(nu, x, Method::Numeric(CutoffSpec::sharp(SM_LAMBDA)?))?.value.into(),
                f_ap(nu, x, Method::Numeric(CutoffSpec::logistic(SM_LAMBDA)?))?.value.into(),
                f_ap(nu, x, Method::ContourIntegral)?.value.into(),
                f_ap(nu, x, Method::LowFrequency)?.value.into(),
                f_ap(nu, x, Method::HighFrequency)?.value.into(),
            ])
        },
    );
    t
}

fn sm_vim(jobs: usize) -> Table {
    let a0 = 0.1;
    let mut t = Table::new(&["axis", "displacement_over_a0", "v_plus", "v_minus", "v_im", "v_im_quadratic"]);
    t.comment("d = 10 a0, z0/d = 0.2; energies in units of V_C");
    let offsets = grid(-1.5, 1.5, 61, Scale::Linear);
    let points: Vec<(&str, f64)> = ["z", "x"].iter().flat_map(|&a| offsets.iter().map(move |&s| (a, s))).collect();
    fill(
        &mut t,
        jobs,
        &points,
        |&(a, s)| vec![a.into(), s.into()],
        |&(a, s)| {
            let m = DipoleModel::new(1.0, a0, 1.0)?;
            let g = PlateGeometry::new(10.0 * a0, 0.2)?;
            let r = if a == "z" {
                DipoleDisplacement::along_z(s * a0)
            } else {
                DipoleDisplacement::new(s * a0, 0.0, 0.0)
            };
            let split = v_im_split(&g, &r, &m)?;
            Ok(vec![
                split.plus.into(),
                split.minus.into(),
                v_im_full(&g, &r, &m)?.into(),
                v_im_quadratic(&g, &r, &m)?.into(),
            ])
        },
    );
    t
}

fn sm_fa(jobs: usize) -> Table {
    let mut t = Table::new(&["z0_over_d", "nu0", "f_a", "f_a_path", "bound_ratio"]);
    let xs = steps(0.05, 0.95, 0.05);
    let nus = grid(0.01, 10.0, 13, Scale::Log);
    let points: Vec<(f64, f64)> = xs.iter().flat_map(|&x| nus.iter().map(move |&nu| (x, nu))).collect();
    fill(
        &mut t,
        jobs,
        &points,
        |&(x, nu)| vec![x.into(), nu.into()],
        |&(x, nu)| {
            let (fa, path) = f_a_with_path(nu, x)?;
            Ok(vec![fa.into(), path_name(path).into(), (PI * nu * fa / f_im(x)?).into()])
        },
    );
    t
}
