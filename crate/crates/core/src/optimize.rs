//! Deterministic scalar search and quadrature used by the guessing games.

use crate::error::{Error, Result};

/// 1/φ where φ is the golden ratio.
const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Minimizes `f` on `[a, b]` by golden-section search until the bracket is
/// narrower than `tol`. Assumes `f` is unimodal on the bracket.
pub fn golden_section<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    // the bracket shrinks by 1/φ per step; 200 steps covers any finite start
    for _ in 0..200 {
        if (b - a).abs() <= tol {
            break;
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
    if fc <= fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// Outcome of a grid scan followed by golden-section refinement.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScanMinimum {
    pub x: f64,
    pub value: f64,
    /// True when every grid value agreed to within `FLAT_TOL`; `x` is then
    /// the smallest grid point and no refinement was attempted.
    pub flat: bool,
}

/// Grid values closer than this are considered a flat objective.
pub const FLAT_TOL: f64 = 1e-14;

/// Minimizes a `period`-periodic function on `[start, start + period)`.
///
/// `points` equally spaced samples are scanned; the first (smallest `x`)
/// minimum wins ties. The bracket around it is refined by golden section to
/// `tol`, and the refined point is kept only if it is no worse. The result
/// is wrapped back into `[start, start + period)`.
pub fn minimize_periodic<F: Fn(f64) -> f64>(
    f: F,
    start: f64,
    period: f64,
    points: usize,
    tol: f64,
) -> ScanMinimum {
    assert!(points >= 3, "grid needs at least three points");
    let step = period / points as f64;
    let mut best = (0usize, f64::INFINITY);
    let mut worst = f64::NEG_INFINITY;
    for k in 0..points {
        let v = f(start + step * k as f64);
        if v < best.1 {
            best = (k, v);
        }
        worst = worst.max(v);
    }
    let x_grid = start + step * best.0 as f64;
    if worst - best.1 <= FLAT_TOL {
        return ScanMinimum {
            x: start,
            value: best.1,
            flat: true,
        };
    }
    let (x, v) = golden_section(&f, x_grid - step, x_grid + step, tol);
    let (x, value) = if v <= best.1 { (x, v) } else { (x_grid, best.1) };
    ScanMinimum {
        x: wrap(x, start, period),
        value,
        flat: false,
    }
}

/// Maps `x` into `[start, start + period)`.
pub fn wrap(x: f64, start: f64, period: f64) -> f64 {
    let mut y = (x - start).rem_euclid(period);
    if y >= period {
        y = 0.0;
    }
    start + y
}

/// Composite Simpson rule with `panels` (even) sub-intervals.
pub fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, panels: usize) -> Result<f64> {
    if panels < 2 || !panels.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!(
            "Simpson's rule needs an even panel count, got {panels}"
        )));
    }
    let h = (b - a) / panels as f64;
    let mut sum = f(a) + f(b);
    for k in 1..panels {
        let w = if k % 2 == 1 { 4.0 } else { 2.0 };
        sum += w * f(a + h * k as f64);
    }
    Ok(sum * h / 3.0)
}

/// Nelder–Mead simplex minimization from `x0` with initial edge `step`.
/// Stops when the spread of simplex values falls below `ftol` or after
/// `max_iter` iterations.
pub fn nelder_mead<F: Fn(&[f64]) -> f64>(
    f: F,
    x0: &[f64],
    step: f64,
    ftol: f64,
    max_iter: usize,
) -> (Vec<f64>, f64) {
    let n = x0.len();
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
    simplex.push((x0.to_vec(), f(x0)));
    for i in 0..n {
        let mut x = x0.to_vec();
        x[i] += step;
        let v = f(&x);
        simplex.push((x, v));
    }
    let lerp = |a: &[f64], b: &[f64], t: f64| -> Vec<f64> {
        a.iter().zip(b).map(|(ai, bi)| ai + t * (bi - ai)).collect()
    };

    for _ in 0..max_iter {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        if simplex[n].1 - simplex[0].1 <= ftol {
            break;
        }
        let mut centroid = vec![0.0; n];
        for (x, _) in &simplex[..n] {
            for (c, xi) in centroid.iter_mut().zip(x) {
                *c += xi / n as f64;
            }
        }
        let worst = simplex[n].0.clone();
        let reflected = lerp(&centroid, &worst, -1.0);
        let fr = f(&reflected);
        if fr < simplex[0].1 {
            let expanded = lerp(&centroid, &worst, -2.0);
            let fe = f(&expanded);
            simplex[n] = if fe < fr { (expanded, fe) } else { (reflected, fr) };
        } else if fr < simplex[n - 1].1 {
            simplex[n] = (reflected, fr);
        } else {
            let contracted = if fr < simplex[n].1 {
                lerp(&centroid, &reflected, 0.5)
            } else {
                lerp(&centroid, &worst, 0.5)
            };
            let fc = f(&contracted);
            if fc < simplex[n].1.min(fr) {
                simplex[n] = (contracted, fc);
            } else {
                let best = simplex[0].0.clone();
                for entry in simplex.iter_mut().skip(1) {
                    let x = lerp(&best, &entry.0, 0.5);
                    let v = f(&x);
                    *entry = (x, v);
                }
            }
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    simplex.swap_remove(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn golden_finds_parabola_vertex() {
        // a quadratic minimum is only located to about √ε
        let (x, v) = golden_section(|x| (x - 0.3).powi(2) + 1.0, -1.0, 2.0, 1e-10);
        assert!((x - 0.3).abs() < 1e-7);
        assert!((v - 1.0).abs() < 1e-14);
        let (x, _) = golden_section(|x: f64| (x - 0.3).abs(), -1.0, 2.0, 1e-10);
        assert!((x - 0.3).abs() < 1e-10);
    }

    #[test]
    fn periodic_minimum_across_the_seam() {
        // minimum of |sin(x)| with period π sits at 0 ≡ π
        let m = minimize_periodic(|x: f64| x.sin().abs(), 0.0, PI, 64, 1e-12);
        assert!(!m.flat);
        assert!(m.x < 1e-9 || (PI - m.x) < 1e-9, "x = {}", m.x);
        assert!(m.value < 1e-9);

        let m = minimize_periodic(|x: f64| (x - 2.0).cos(), 0.0, 2.0 * PI, 100, 1e-12);
        assert!((m.x - (2.0 + PI)).abs() < 1e-6);
    }

    #[test]
    fn flat_objective_returns_smallest_grid_point() {
        let m = minimize_periodic(|_| 0.5, 0.0, PI, 16, 1e-10);
        assert!(m.flat);
        assert_eq!(m.x, 0.0);
    }

    #[test]
    fn wrap_into_range() {
        assert!((wrap(-0.1, 0.0, PI) - (PI - 0.1)).abs() < 1e-15);
        assert!((wrap(PI + 0.2, 0.0, PI) - 0.2).abs() < 1e-15);
        assert_eq!(wrap(PI, 0.0, PI), 0.0);
    }

    #[test]
    fn simpson_is_exact_for_cubics() {
        let v = simpson(|x| x * x * x - 2.0 * x + 1.0, 0.0, 2.0, 2).unwrap();
        assert!((v - 2.0).abs() < 1e-14);
        let v = simpson(f64::sin, 0.0, PI, 64).unwrap();
        assert!((v - 2.0).abs() < 1e-6);
        assert!(simpson(f64::sin, 0.0, PI, 63).is_err());
    }

    #[test]
    fn nelder_mead_rosenbrock() {
        let f = |x: &[f64]| (1.0 - x[0]).powi(2) + 100.0 * (x[1] - x[0] * x[0]).powi(2);
        let (x, v) = nelder_mead(f, &[-1.2, 1.0], 0.1, 1e-20, 5000);
        assert!(v < 1e-12, "v = {v}");
        assert!((x[0] - 1.0).abs() < 1e-5 && (x[1] - 1.0).abs() < 1e-5);
    }
}
