//! Golden-section search for a bracketed minimum.

use crate::error::{Error, Result};

// 1/φ
const INV_PHI: f64 = 0.618_033_988_749_894_8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Minimum {
    pub x: f64,
    pub value: f64,
    pub iterations: usize,
}

/// Shrinks `[a, b]` around a local minimum of `f` until it is narrower than
/// `xtol`. One new evaluation per iteration.
pub fn golden_section<F>(f: F, a: f64, b: f64, xtol: f64, max_iter: usize) -> Result<Minimum>
where
    F: Fn(f64) -> f64,
{
    // also rejects NaN
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    if !(a < b) {
        return Err(Error::domain("bracket", format!("need a < b, got [{a}, {b}]")));
    }
    let (mut a, mut b) = (a, b);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);

    for iter in 1..=max_iter {
        if (b - a).abs() <= xtol {
            let (x, value) = if fc <= fd { (c, fc) } else { (d, fd) };
            return Ok(Minimum {
                x,
                value,
                iterations: iter,
            });
        }
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    Err(Error::NonConvergence {
        what: "golden-section search",
        residual: b - a,
    })
}
