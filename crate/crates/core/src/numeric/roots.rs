//! Bracketed scalar root finding.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub x: f64,
    pub residual: f64,
    pub iterations: usize,
}

/// Newton's method safeguarded by bisection.
///
/// `f` returns `(value, derivative)`. `[lo, hi]` must bracket a sign change.
/// Iteration stops once `|f(x)| <= tol` or the bracket has collapsed to
/// adjacent floats.
pub fn newton_bisect<F>(f: F, mut lo: f64, mut hi: f64, tol: f64, max_iter: usize) -> Result<Root>
where
    F: Fn(f64) -> (f64, f64),
{
    // also rejects NaN
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    if !(lo < hi) {
        return Err(Error::domain(
            "bracket",
            format!("need lo < hi, got [{lo}, {hi}]"),
        ));
    }
    let (f_lo, _) = f(lo);
    let (f_hi, _) = f(hi);
    if f_lo == 0.0 {
        return Ok(Root {
            x: lo,
            residual: 0.0,
            iterations: 0,
        });
    }
    if f_hi == 0.0 {
        return Ok(Root {
            x: hi,
            residual: 0.0,
            iterations: 0,
        });
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(Error::NonConvergence {
            what: "root bracket",
            residual: f_lo.abs().min(f_hi.abs()),
        });
    }
    let lo_positive = f_lo > 0.0;

    let mut x = 0.5 * (lo + hi);
    let mut best = (x, f64::INFINITY);
    for iter in 1..=max_iter {
        let (fx, dfx) = f(x);
        if fx.abs() < best.1 {
            best = (x, fx.abs());
        }
        if fx.abs() <= tol {
            return Ok(Root {
                x,
                residual: fx.abs(),
                iterations: iter,
            });
        }
        if (fx > 0.0) == lo_positive {
            lo = x;
        } else {
            hi = x;
        }
        let newton = x - fx / dfx;
        x = if newton.is_finite() && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if x <= lo || x >= hi || lo.next_up() >= hi {
            let (fx, _) = f(x);
            let residual = fx.abs().min(best.1);
            let x = if fx.abs() <= best.1 { x } else { best.0 };
            return if residual <= tol {
                Ok(Root {
                    x,
                    residual,
                    iterations: iter,
                })
            } else {
                Err(Error::NonConvergence {
                    what: "root finding",
                    residual,
                })
            };
        }
    }
    Err(Error::NonConvergence {
        what: "root finding",
        residual: best.1,
    })
}

/// Plain bisection on a monotone function until the bracket is narrower than
/// `xtol`. Returns the bracket midpoint.
pub fn bisect<F>(f: F, mut lo: f64, mut hi: f64, xtol: f64, max_iter: usize) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let f_lo = f(lo)?;
    let f_hi = f(hi)?;
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(Error::NonConvergence {
            what: "bisection bracket",
            residual: f_lo.abs().min(f_hi.abs()),
        });
    }
    let lo_positive = f_lo > 0.0;
    for _ in 0..max_iter {
        if hi - lo <= xtol {
            return Ok(0.5 * (lo + hi));
        }
        let mid = 0.5 * (lo + hi);
        let fm = f(mid)?;
        if fm == 0.0 {
            return Ok(mid);
        }
        if (fm > 0.0) == lo_positive {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Err(Error::NonConvergence {
        what: "bisection",
        residual: hi - lo,
    })
}
