//! Cutoff-regularized mode sums and their "sum minus integral" differences.

use crate::error::{Error, Result};
use crate::numerics::cutoff::CutoffSpec;
use crate::numerics::quadrature::{integrate_semi_infinite_with, integrate_with, QuadratureOptions};

/// Relative size of the last retained term above which a truncated sum is
/// reported as unconverged.
pub const TAIL_TOLERANCE: f64 = 1e-10;

/// Upper limit on the number of terms for unregulated sums.
const MAX_FREE_TERMS: usize = 10_000_000;

/// The per-mode term of a sum over a non-negative mode index `n`.
pub struct Summand<'a> {
    f: Box<dyn Fn(f64) -> f64 + Sync + 'a>,
    half_weight_at_zero: bool,
    regulate_index: bool,
}

impl<'a> Summand<'a> {
    /// A summand following the primed-sum convention (`n = 0` counted with
    /// weight 1/2) whose index is damped by the cutoff weight.
    pub fn new(f: impl Fn(f64) -> f64 + Sync + 'a) -> Self {
        Summand {
            f: Box::new(f),
            half_weight_at_zero: true,
            regulate_index: true,
        }
    }

    pub fn half_weight_at_zero(mut self, yes: bool) -> Self {
        self.half_weight_at_zero = yes;
        self
    }

    /// The cutoff already acts inside `f` (for example on an inner frequency
    /// integral); it then only fixes the truncation bound.
    pub fn pre_regulated(mut self) -> Self {
        self.regulate_index = false;
        self
    }

    fn term(&self, n: f64, c: &CutoffSpec) -> f64 {
        let v = (self.f)(n);
        if self.regulate_index {
            let w = c.weight(n);
            if w == 0.0 {
                0.0
            } else {
                v * w
            }
        } else {
            v
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SumEstimate {
    pub value: f64,
    /// Magnitude of the last terms retained before truncation.
    pub tail_estimate: f64,
    pub terms: usize,
}

/// `Σ′_{n≥0} f(n) w(n)`.
pub fn regulated_sum(s: &Summand<'_>, c: &CutoffSpec) -> Result<SumEstimate> {
    let zero_weight = if s.half_weight_at_zero { 0.5 } else { 1.0 };
    match c.truncation_bound() {
        Some(n_max) => {
            let mut sum = zero_weight * s.term(0.0, c);
            let mut last = [0.0f64; 2];
            for n in 1..=n_max {
                let t = s.term(n as f64, c);
                if !t.is_finite() {
                    return Err(Error::NonConvergence {
                        what: "regulated mode sum",
                        iterations: n,
                        last_term: t,
                        tolerance: TAIL_TOLERANCE,
                    });
                }
                sum += t;
                last = [last[1], t];
            }
            let tail = last[0].abs() + last[1].abs();
            if tail > TAIL_TOLERANCE * sum.abs().max(1.0) {
                return Err(Error::NonConvergence {
                    what: "regulated mode sum",
                    iterations: n_max,
                    last_term: last[1],
                    tolerance: TAIL_TOLERANCE,
                });
            }
            Ok(SumEstimate {
                value: sum,
                tail_estimate: tail,
                terms: n_max + 1,
            })
        }
        None => {
            let mut sum = zero_weight * s.term(0.0, c);
            let mut quiet = 0;
            let mut last = 0.0f64;
            for n in 1..MAX_FREE_TERMS {
                let t = s.term(n as f64, c);
                sum += t;
                last = t;
                if t.abs() <= f64::EPSILON * 1e-2 * sum.abs() {
                    quiet += 1;
                    if quiet >= 10 {
                        return Ok(SumEstimate {
                            value: sum,
                            tail_estimate: t.abs(),
                            terms: n + 1,
                        });
                    }
                } else {
                    quiet = 0;
                }
            }
            Err(Error::NonConvergence {
                what: "unregulated mode sum",
                iterations: MAX_FREE_TERMS,
                last_term: last,
                tolerance: TAIL_TOLERANCE,
            })
        }
    }
}

/// `∫_0^∞ f(n) w(n) dn`, split at Λ where the regulator bends.
pub fn regulated_integral(s: &Summand<'_>, c: &CutoffSpec) -> Result<f64> {
    let opts = QuadratureOptions::default();
    let g = |n: f64| s.term(n, c);
    if c.is_unregulated() {
        return integrate_semi_infinite_with(g, 0.0, opts).map(|e| e.value);
    }
    let lambda = c.lambda();
    let head = integrate_with(g, 0.0, lambda, opts)?;
    let tail = integrate_semi_infinite_with(g, lambda, opts)?;
    Ok(head.value + tail.value)
}

/// The regularized difference `Σ′_n f(n) w(n) - ∫_0^∞ f(n) w(n) dn`.
pub fn sum_minus_integral(s: &Summand<'_>, c: &CutoffSpec) -> Result<SumEstimate> {
    let sum = regulated_sum(s, c)?;
    let integral = regulated_integral(s, c)?;
    Ok(SumEstimate {
        value: sum.value - integral,
        ..sum
    })
}
