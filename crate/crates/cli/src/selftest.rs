//! Reference constants the library must reproduce.

use std::f64::consts::PI;

use vacshift::plates::{f_a, f_im, g_a2, Method};
use vacshift::sphere::f_p;
use vacshift::{CutoffSpec, EllMax};

use crate::table::{Table, Value};

struct Check {
    name: &'static str,
    expected: f64,
    tolerance: f64,
    eval: fn() -> vacshift::Result<f64>,
}

const CHECKS: &[Check] = &[
    Check {
        name: "f_im x=1/2",
        expected: 4.2072,
        tolerance: 5e-3,
        eval: || f_im(0.5),
    },
    Check {
        name: "g_a2 logistic lambda=10",
        expected: 1.0 / 12.0,
        tolerance: 1e-3,
        eval: || Ok(g_a2(Method::Numeric(CutoffSpec::logistic(10.0)?))?.value),
    },
    Check {
        name: "f_a nu0=0 x=1/2",
        expected: 2.0 * PI / 3.0,
        tolerance: 1e-3,
        eval: || f_a(0.0, 0.5),
    },
    Check {
        name: "f_p x=0 y=0.01 ell_max=inf",
        // π/√32, checked to 2 %
        expected: 0.555_360_367_269_795_8,
        tolerance: 0.02 * 0.555_360_367_269_795_8,
        eval: || f_p(0.0, 0.01, EllMax::Infinite),
    },
];

/// Runs every check; returns the table and whether all passed.
pub fn selftest() -> (Table, bool) {
    let mut t = Table::new(&["check", "expected", "value", "tolerance", "status"]);
    let mut all = true;
    for c in CHECKS {
        match (c.eval)() {
            Ok(v) => {
                let pass = (v - c.expected).abs() <= c.tolerance;
                all &= pass;
                let status = if pass { "PASS" } else { "FAIL" };
                t.push(
                    vec![c.name.into(), c.expected.into(), v.into(), c.tolerance.into(), status.into()],
                    None,
                );
            }
            Err(e) => {
                all = false;
                t.push(
                    vec![c.name.into(), c.expected.into(), Value::Missing, c.tolerance.into(), "FAIL".into()],
                    Some(e.to_string()),
                );
            }
        }
    }
    (t, all)
}
