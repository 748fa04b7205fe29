//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::f64::consts::PI;
use std::process::Command;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use vacshift::plates::{
    bound_ratio, delta_e_cav, delta_e_im, f_a, f_a2, f_ap, f_ap_abel, f_im, g_a2, g_ap, sign_boundary_grid,
    v_im_full, v_im_quadratic, CavityShiftMode, DipoleDisplacement, ImageShiftMode, Method, PlateGeometry,
    PlateSetup, SignSlice,
};
use vacshift::sphere::{delta_e_p, delta_e_p_mode_sum, f_p, sphere_total};
use vacshift::dipole::{FINE_STRUCTURE, HBAR_C_EV_NM};
use vacshift::{CutoffSpec, DipoleModel, EllMax, SphereSetup};

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome { pass, detail: detail.into() }
    }

    fn and(self, other: Outcome) -> Outcome {
        Outcome::new(self.pass && other.pass, format!("{}; {}", self.detail, other.detail))
    }
}

fn within(name: &str, value: f64, expected: f64, tol: f64) -> Outcome {
    let dev = (value - expected).abs();
    Outcome::new(dev <= tol, format!("{name} = {value:.6e} (target {expected:.6e}, |dev| {dev:.2e} <= {tol:.0e})"))
}

fn logistic(l: f64) -> Method {
    Method::Numeric(CutoffSpec::logistic(l).unwrap())
}

fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| (lo.ln() + (hi.ln() - lo.ln()) * i as f64 / (n - 1) as f64).exp())
        .collect()
}

fn image_constant() -> Outcome {
    let mid = within("F_im(1/2)", f_im(0.5).unwrap(), 4.2072, 5e-3);
    let x: f64 = 0.02;
    let vdw = f_im(x).unwrap() * 4.0 * x.powi(3);
    mid.and(within("4x³F_im(0.02)", vdw, 1.0, 0.02))
}

fn regularized_constant() -> Outcome {
    let mut out = Outcome::new(true, "");
    let mut parts = Vec::new();
    for l in [5.0, 10.0, 20.0] {
        for (name, c) in [("logistic", CutoffSpec::logistic(l)), ("gaussian", CutoffSpec::gaussian(l))] {
            let v = g_a2(Method::Numeric(c.unwrap())).unwrap().value;
            let dev = (v - 1.0 / 12.0).abs();
            out.pass &= dev < 1e-3;
            parts.push(format!("{name} L={l}: {dev:.1e}"));
        }
    }
    out.detail = format!("|g_A2 - 1/12| {} (< 1e-3)", parts.join(", "));
    out
}

fn f_a2_centre() -> Outcome {
    let numeric = f_a2(0.5, logistic(10.0)).unwrap().value;
    let closed = f_a2(0.5, Method::ClosedForm).unwrap().value;
    within("f_A2(1/2) logistic L=10", numeric, 0.25, 5e-3).and(within("closed form", closed, 0.25, 1e-15))
}

fn g_ap_agreement() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut parts = Vec::new();
    for nu in [0.01f64, 0.1, 1.0, 10.0] {
        // the regulator must sit well above the dipole frequency
        let l = 20.0 * nu.max(1.0);
        let numeric = g_ap(nu, logistic(l)).unwrap().value;
        let closed = g_ap(nu, Method::ClosedForm).unwrap().value;
        let rel = ((numeric - closed) / closed).abs();
        worst = worst.max(rel);
        parts.push(format!("nu0={nu}: {rel:.1e}"));
    }
    Outcome::new(worst < 1e-2, format!("max rel dev {worst:.2e} < 1e-2 ({})", parts.join(", ")))
}

fn f_ap_paths() -> Outcome {
    let abel = f_ap_abel(0.01, 0.5).unwrap();
    let contour = f_ap(50.0, 0.5, Method::ContourIntegral).unwrap().value;
    let high = f_ap(50.0, 0.5, Method::HighFrequency).unwrap().value;
    within("Abel f_Ap(0.01, 1/2)", abel, 0.0025, 1e-4).and(within("contour vs high-freq at nu0=50", contour, high, 1e-3))
}

fn f_a_limits() -> Outcome {
    let centre = within("F_A(0, 1/2)", f_a(0.0, 0.5).unwrap(), 2.0 * PI / 3.0, 1e-3);
    let x: f64 = 0.02;
    let wall = f_a(0.0, x).unwrap() * 2.0 * PI * x * x;
    centre.and(within("2π x² F_A(0, 0.02)", wall, 1.0, 0.05))
}

fn bound() -> Outcome {
    let d = 100.0;
    let mut worst: f64 = 0.0;
    let mut points = 0;
    for i in 1..=19 {
        let x = 0.05 * i as f64;
        let g = PlateGeometry::new(d, x).unwrap();
        for nu in log_grid(0.01, 10.0, 13) {
            let hbar_omega0 = PI * HBAR_C_EV_NM * nu / d;
            let m = DipoleModel::new(1.0, 0.1, hbar_omega0).unwrap();
            worst = worst.max(bound_ratio(&g, &m).unwrap());
            points += 1;
        }
    }
    Outcome::new(worst < 1.0, format!("max πν₀F_A/F_im = {worst:.4} < 1 over {points} points"))
}

fn cavity_limit() -> Outcome {
    let g = PlateGeometry::new(50.0, 0.5).unwrap();
    let m = DipoleModel::new(1.0, 0.1, 0.01).unwrap();
    let mut out = Outcome::new(true, "");
    let mut parts = Vec::new();
    for r in [0.01, 0.05, 0.1] {
        let s = PlateSetup::new(g, m, 50.0, Some(m.hbar_omega0_ev() / r)).unwrap();
        let exact = delta_e_cav(&s, CavityShiftMode::Exact);
        let approx = delta_e_cav(&s, CavityShiftMode::LowFreqApprox);
        let rel = ((approx - exact) / exact).abs();
        out.pass &= rel < 1.1 * r;
        parts.push(format!("w0/wc={r}: {rel:.2e} < {:.3}", 1.1 * r));
    }
    out.detail = parts.join(", ");
    // F_cav = ΔE_cav/(α ħω₀ (q a₀/(e d))² Z/Z_vac) as ω₀/ω_c → 0
    let s = PlateSetup::new(g, m, 50.0, Some(m.hbar_omega0_ev() * 1e9)).unwrap();
    let ev = delta_e_cav(&s, CavityShiftMode::Exact) * m.coulomb_scale();
    let f_cav = ev / (FINE_STRUCTURE * m.hbar_omega0_ev() * (m.a0_nm() / g.d_nm()).powi(2) * 50.0);
    out.and(within("F_cav", f_cav, 2.0 * PI, 1e-6))
}

fn sphere_setup(r: f64, z0: f64, wp: f64, w0: f64, a0: f64, q: f64, ell: EllMax) -> SphereSetup {
    SphereSetup::new(r, z0, wp, DipoleModel::new(q, a0, w0).unwrap(), ell).unwrap()
}

fn sphere_convergence() -> Outcome {
    let limit = within("F_P(0, 0.01)", f_p(0.0, 0.01, EllMax::Infinite).unwrap(), PI / 32f64.sqrt(), 0.02 * PI / 32f64.sqrt());

    let mut monotone = true;
    for (x, y) in [(1.0, 0.1), (1.0, 0.5), (0.5, 1.0), (0.0, 0.05)] {
        let inf = f_p(x, y, EllMax::Infinite).unwrap();
        let mut prev = 0.0;
        for l in 1..=400 {
            let v = f_p(x, y, EllMax::Finite(l)).unwrap();
            monotone &= v >= prev && v <= inf * (1.0 + 1e-12);
            prev = v;
        }
        monotone &= (prev - inf).abs() <= 1e-6 * inf || y < 0.1;
    }
    let mono = Outcome::new(monotone, "F_P(ell_max) non-decreasing and bounded by F_P^inf");

    let mut rng = StdRng::seed_from_u64(0x5eed_0009);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let ell = if rng.gen_bool(0.5) {
            EllMax::Infinite
        } else {
            EllMax::Finite(rng.gen_range(1..=200))
        };
        let s = sphere_setup(
            10f64.powf(rng.gen_range(0.0..2.0)),
            10f64.powf(rng.gen_range(-1.0..1.5)),
            rng.gen_range(1.0..10.0),
            10f64.powf(rng.gen_range(-2.0..1.0)),
            rng.gen_range(0.05..0.5),
            rng.gen_range(0.5..2.0),
            ell,
        );
        let a = delta_e_p(&s).unwrap();
        let b = delta_e_p_mode_sum(&s).unwrap();
        worst = worst.max((a / b - 1.0).abs());
    }
    let fact = Outcome::new(worst < 1e-10, format!("factorized vs mode sum max rel dev {worst:.1e} < 1e-10 (100 setups)"));
    limit.and(mono).and(fact)
}

fn sphere_headline() -> Outcome {
    let z0 = 0.5;
    let mut out = Outcome::new(true, "");
    let mut parts = Vec::new();
    for wp in [1.0, 10.0] {
        // q a₀/(e z0) = 1 and ω₀ = ω_P/2
        let s = sphere_setup(20.0, z0, wp, wp / 2.0, z0, 1.0, EllMax::Infinite);
        let z = s.z_eff_ratio();
        let shift = delta_e_p(&s).unwrap() * s.dipole().coulomb_scale() / s.dipole().hbar_omega0_ev();
        let z_ok = (11.5..=130.0).contains(&z);
        let e_ok = (0.04..=0.55).contains(&shift);
        out.pass &= z_ok && e_ok;
        parts.push(format!(
            "wP={wp} eV: Z_eff/Z_vac = {z:.2} in [11.5, 130] {}, dE_P/hw0 = {shift:.4} in [0.04, 0.55] {}",
            if z_ok { "ok" } else { "out" },
            if e_ok { "ok" } else { "out" }
        ));
    }
    out.detail = format!("{} (R = 20 nm)", parts.join("; "));
    out
}

fn sphere_negativity() -> Outcome {
    let mut worst = f64::NEG_INFINITY;
    let mut n = 0;
    for x in log_grid(0.01, 100.0, 100) {
        for y in log_grid(0.01, 10.0, 100) {
            let r = 10.0;
            let wp = 2.0;
            let s = sphere_setup(r, y * r, wp, x * wp, 0.1, 1.0, EllMax::Infinite);
            let b = sphere_total(&s).unwrap();
            worst = worst.max(b.total / b.e_im.abs());
            n += 1;
        }
    }
    Outcome::new(worst < 0.0, format!("max total/|dE_im| = {worst:.4} < 0 over {n} points"))
}

fn electrostatic_cross_check() -> Outcome {
    let a0 = 0.1;
    let m = DipoleModel::new(1.0, a0, 1.0).unwrap();
    let mut avg = Outcome::new(true, "");
    let mut parts = Vec::new();
    for x in [0.2, 0.5] {
        let g = PlateGeometry::new(10.0 * a0, x).unwrap();
        let numeric = delta_e_im(&g, &m, ImageShiftMode::NumericFull).unwrap();
        let analytic = delta_e_im(&g, &m, ImageShiftMode::Analytic).unwrap();
        let rel = (numeric / analytic - 1.0).abs();
        avg.pass &= rel <= 0.05;
        parts.push(format!("z0/d={x}: {rel:.3} <= 0.05"));
    }
    avg.detail = format!("Gaussian average vs analytic at d=10a0: {}", parts.join(", "));

    // second derivatives of the full potential at zero displacement
    let mut worst: f64 = 0.0;
    for x in [0.1, 0.3, 0.5, 0.8] {
        let g = PlateGeometry::new(1.0, x).unwrap();
        let m = DipoleModel::new(1.0, 0.1, 1.0).unwrap();
        for axis in [0, 2] {
            let at = |h: f64| {
                if axis == 0 {
                    DipoleDisplacement::new(h, 0.0, 0.0)
                } else {
                    DipoleDisplacement::along_z(h)
                }
            };
            let second = |h: f64| {
                let f = |s: f64| v_im_full(&g, &at(s), &m).unwrap();
                (f(h) - 2.0 * f(0.0) + f(-h)) / (h * h)
            };
            let h = 1e-3;
            let fd = (4.0 * second(h / 2.0) - second(h)) / 3.0;
            let exact = 2.0 * v_im_quadratic(&g, &at(h), &m).unwrap() / (h * h);
            worst = worst.max((fd / exact - 1.0).abs());
        }
    }
    let hess = Outcome::new(worst < 1e-4, format!("Hessian vs quadratic coefficients max rel dev {worst:.1e} < 1e-4"));
    avg.and(hess)
}

fn sign_contour() -> Outcome {
    let slice = SignSlice::default();
    let spacings = log_grid(2.0, 100.0, 25);
    let impedances = log_grid(0.1, 300.0, 40);
    let grid = sign_boundary_grid(&slice, &spacings, &impedances).unwrap();
    let stars: Vec<Option<f64>> = grid.contour.iter().map(|&(_, z)| z).collect();
    let exists = stars.iter().all(Option::is_some);
    let increasing = exists && stars.windows(2).all(|w| w[1].unwrap() > w[0].unwrap());
    let low_z_negative = grid
        .rows
        .iter()
        .filter(|r| r.z_over_zvac == impedances[0])
        .all(|r| r.shift.total < 0.0);
    let first = stars.first().copied().flatten().unwrap_or(f64::NAN);
    let last = stars.last().copied().flatten().unwrap_or(f64::NAN);
    Outcome::new(
        exists && increasing && low_z_negative,
        format!(
            "contour exists at every d: {exists}; Z* from {first:.3} (d=2a0) to {last:.3} (d=100a0), increasing: {increasing}; all Z=0.1 points negative: {low_z_negative}"
        ),
    )
}

fn run_binary(args: &[&str]) -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_vacshift"))
        .args(args)
        .env_remove("VACSHIFT_JOBS")
        .output()
        .expect("binary runs");
    assert!(out.status.success(), "{args:?} failed");
    out.stdout
}

fn determinism() -> Outcome {
    let selftest = [run_binary(&["selftest"]), run_binary(&["selftest"]), run_binary(&["selftest", "--jobs", "4"])];
    let sweep = ["1", "2", "8"].map(|j| {
        run_binary(&[
            "sweep", "plates", "--param", "d-nm", "--from", "20", "--to", "2000", "--points", "24", "--scale", "log",
            "--param2", "z0-frac", "--from2", "0.1", "--to2", "0.9", "--points2", "5", "--jobs", j,
        ])
    });
    let fig = ["1", "6"].map(|j| run_binary(&["figure", "sm_FA", "--jobs", j]));
    let same = |v: &[Vec<u8>]| v.windows(2).all(|w| w[0] == w[1]);
    Outcome::new(
        same(&selftest) && same(&sweep) && same(&fig),
        format!(
            "selftest x3 identical: {}; 120-row sweep at jobs 1/2/8 identical: {}; sm_FA at jobs 1/6 identical: {}",
            same(&selftest),
            same(&sweep),
            same(&fig)
        ),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 14] = [
        ("electrostatic constant F_im", image_constant),
        ("regularized g_A2 and cutoff independence", regularized_constant),
        ("f_A2 at the centre", f_a2_centre),
        ("g_Ap closed form vs numeric", g_ap_agreement),
        ("f_Ap low- and high-frequency paths", f_ap_paths),
        ("F_A static value and wall scaling", f_a_limits),
        ("transverse/electrostatic bound", bound),
        ("LC shift low-frequency limit", cavity_limit),
        ("sphere F_P limit, convergence, factorization", sphere_convergence),
        ("sphere headline numbers", sphere_headline),
        ("sphere negativity", sphere_negativity),
        ("electrostatic cross-validation", electrostatic_cross_check),
        ("sign-change contour structure", sign_contour),
        ("output determinism", determinism),
    ];
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let n = i + 1;
        let o = check();
        println!("{} [{n:2}] {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        if !o.pass {
            failed.push(n);
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed.len(), criteria.len());
    if !failed.is_empty() {
        println!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
