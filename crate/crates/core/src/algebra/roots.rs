use num_complex::Complex64;

use super::poly::Poly;
use super::scalar::ComplexScalar;
use crate::error::{Error, Result};

/// All complex roots (with multiplicity) by Aberth–Ehrlich iteration.
///
/// Multiple roots converge linearly and come back as a tight cluster; callers
/// that need multiplicities group roots by distance.
pub fn complex_roots(p: &Poly<ComplexScalar>) -> Result<Vec<Complex64>> {
    let Some(deg) = p.degree() else {
        return Err(Error::Domain("roots of the zero polynomial".into()));
    };
    if deg == 0 {
        return Ok(Vec::new());
    }
    let lc = p.leading().expect("nonzero").c64();
    let c: Vec<Complex64> = p.coeffs().iter().map(|z| z.c64() / lc).collect();
    // Cauchy bound for the initial circle
    let radius = 1.0 + c[..deg].iter().map(|z| z.norm()).fold(0.0, f64::max);
    let r0 = radius.min(1e8).max(1e-3) * 0.5;
    let mut z: Vec<Complex64> = (0..deg)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / deg as f64 + 0.4;
            Complex64::from_polar(r0, theta)
        })
        .collect();
    let eval = |x: Complex64| -> (Complex64, Complex64) {
        let mut v = Complex64::new(0.0, 0.0);
        let mut dv = Complex64::new(0.0, 0.0);
        for a in c.iter().rev() {
            dv = dv * x + v;
            v = v * x + a;
        }
        (v, dv)
    };
    for _ in 0..2000 {
        let mut max_step: f64 = 0.0;
        for i in 0..deg {
            let (v, dv) = eval(z[i]);
            if v.norm() == 0.0 {
                continue;
            }
            let ratio = v / dv;
            let repulse: Complex64 = (0..deg)
                .filter(|&j| j != i)
                .map(|j| {
                    let d = z[i] - z[j];
                    if d.norm() == 0.0 {
                        Complex64::new(0.0, 0.0)
                    } else {
                        d.inv()
                    }
                })
                .sum();
            let denom = Complex64::new(1.0, 0.0) - ratio * repulse;
            let step = if denom.norm() == 0.0 || !denom.is_finite() { ratio } else { ratio / denom };
            if !step.is_finite() {
                continue;
            }
            z[i] -= step;
            max_step = max_step.max(step.norm() / (1.0 + z[i].norm()));
        }
        if max_step < 1e-15 {
            break;
        }
    }
    if z.iter().any(|w| !w.is_finite()) {
        return Err(Error::Inconclusive("root iteration diverged".into()));
    }
    // a few plain Newton polishing steps
    for w in z.iter_mut() {
        for _ in 0..3 {
            let (v, dv) = eval(*w);
            if dv.norm() == 0.0 {
                break;
            }
            let step = v / dv;
            if step.is_finite() && step.norm() < 1e-6 * (1.0 + w.norm()) {
                *w -= step;
            }
        }
    }
    Ok(z)
}
