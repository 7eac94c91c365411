//! Floating-point views of exact values, for display and diagnostics only.
//!
//! No decision procedure in this crate calls into this module. The poison
//! switch makes any call panic, which the test suite uses to prove it.

use std::sync::atomic::{AtomicBool, Ordering};

use num_traits::ToPrimitive;

use crate::cyclo::CycNumber;

static POISONED: AtomicBool = AtomicBool::new(false);

pub fn set_poisoned(on: bool) {
    POISONED.store(on, Ordering::SeqCst);
}

pub fn is_poisoned() -> bool {
    POISONED.load(Ordering::SeqCst)
}

fn guard() {
    if is_poisoned() {
        panic!("floating point display layer used while poisoned");
    }
}

/// Approximate complex value (re, im).
pub fn to_complex(a: &CycNumber) -> (f64, f64) {
    guard();
    let n = a.conductor() as f64;
    let mut re = 0.0;
    let mut im = 0.0;
    for (j, c) in a.coeffs().iter().enumerate() {
        let v = c.to_f64().unwrap_or(f64::NAN);
        let t = 2.0 * std::f64::consts::PI * j as f64 / n;
        re += v * t.cos();
        im += v * t.sin();
    }
    (re, im)
}

/// Short human-readable approximation such as "1.414" or "0.5+0.866i".
pub fn approx_string(a: &CycNumber) -> String {
    let (re, im) = to_complex(a);
    if im.abs() < 1e-12 {
        format!("{:.6}", re)
    } else if re.abs() < 1e-12 {
        format!("{:.6}i", im)
    } else {
        format!("{:.6}{:+.6}i", re, im)
    }
}
