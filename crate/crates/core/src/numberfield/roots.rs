//! Simultaneous root finding (Aberth-Ehrlich iteration) for complex polynomials.

use std::cmp::Ordering;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Debug)]
pub struct RootSet {
    pub roots: Vec<Complex64>,
    pub converged: bool,
    pub iterations: usize,
}

fn horner(poly: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for c in poly.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// Initial points from the upper convex hull of `(k, log|a_k|)`: every hull
/// edge contributes a circle whose radius matches the modulus of that group of
/// roots.
fn initial_points(poly: &[Complex64], rng: &mut ChaCha8Rng) -> Vec<Complex64> {
    let n = poly.len() - 1;
    let pts: Vec<(usize, f64)> = poly
        .iter()
        .enumerate()
        .filter(|(_, c)| c.norm() > 0.0)
        .map(|(k, c)| (k, c.norm().ln()))
        .collect();
    let mut hull: Vec<(usize, f64)> = Vec::new();
    for &p in &pts {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (b.0 as f64 - a.0 as f64) * (p.1 - a.1) - (b.1 - a.1) * (p.0 as f64 - a.0 as f64);
            if cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    let mut out = Vec::with_capacity(n);
    for w in hull.windows(2) {
        let (k0, l0) = w[0];
        let (k1, l1) = w[1];
        let count = k1 - k0;
        let radius = ((l0 - l1) / count as f64).exp();
        let offset: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
        for j in 0..count {
            let theta = offset + std::f64::consts::TAU * (j as f64 + rng.gen_range(0.0..0.25)) / count as f64;
            out.push(Complex64::from_polar(radius, theta));
        }
    }
    out
}

/// Finds all roots of `poly` (coefficients constant term first).
///
/// Leading zero coefficients are dropped; exact zero roots are split off
/// before iterating. The seed is fixed so results are reproducible.
pub fn aberth(poly: &[Complex64], max_iter: usize, tol: f64) -> RootSet {
    let mut poly: Vec<Complex64> = poly.to_vec();
    while poly.last().is_some_and(|c| c.norm() == 0.0) {
        poly.pop();
    }
    let zeros = poly.iter().take_while(|c| c.norm() == 0.0).count();
    let poly: Vec<Complex64> = poly[zeros..].to_vec();
    let mut roots = vec![Complex64::new(0.0, 0.0); zeros];
    if poly.len() <= 1 {
        return RootSet {
            roots,
            converged: true,
            iterations: 0,
        };
    }
    let lead = *poly.last().unwrap();
    let monic: Vec<Complex64> = poly.iter().map(|c| c / lead).collect();
    let n = monic.len() - 1;
    let mut rng = ChaCha8Rng::seed_from_u64(0x005e_ed0f_b17a);
    let mut z = initial_points(&monic, &mut rng);
    let mut done = vec![false; n];
    let mut iterations = 0;
    let mut converged = false;
    while iterations < max_iter {
        iterations += 1;
        for i in 0..n {
            if done[i] {
                continue;
            }
            let (p, dp) = horner(&monic, z[i]);
            if p.norm() == 0.0 {
                done[i] = true;
                continue;
            }
            let ratio = p / dp;
            let mut sum = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if j != i {
                    let diff = z[i] - z[j];
                    if diff.norm() > 0.0 {
                        sum += diff.inv();
                    }
                }
            }
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * sum);
            if !step.re.is_finite() || !step.im.is_finite() {
                // restart this point at a perturbed location
                let kick = Complex64::from_polar(1e-3 * (1.0 + z[i].norm()), rng.gen_range(0.0..std::f64::consts::TAU));
                z[i] += kick;
                continue;
            }
            z[i] -= step;
            if step.norm() <= tol * (1.0 + z[i].norm()) {
                done[i] = true;
            }
        }
        if done.iter().all(|&d| d) {
            converged = true;
            break;
        }
    }
    roots.extend(z);
    RootSet {
        roots,
        converged,
        iterations,
    }
}

/// Sorts roots by real part, then imaginary part; real parts within a small
/// relative tolerance count as equal.
pub fn sort_roots(mut roots: Vec<Complex64>) -> Vec<Complex64> {
    roots.sort_by(|a, b| {
        let tol = 1e-9 * (1.0 + a.re.abs().max(b.re.abs()));
        if (a.re - b.re).abs() <= tol {
            a.im.partial_cmp(&b.im).unwrap_or(Ordering::Equal)
        } else {
            a.re.partial_cmp(&b.re).unwrap_or(Ordering::Equal)
        }
    });
    roots
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn quadratic_roots() {
        // x^2 + x + 2
        let set = aberth(&[c(2.0), c(1.0), c(1.0)], 1000, 1e-15);
        assert!(set.converged);
        let r = sort_roots(set.roots);
        let s = 7f64.sqrt() / 2.0;
        assert!((r[0] - Complex64::new(-0.5, -s)).norm() < 1e-12);
        assert!((r[1] - Complex64::new(-0.5, s)).norm() < 1e-12);
    }

    #[test]
    fn wide_dynamic_range() {
        // (x - 1e-3)(x - 1)(x - 1e4)
        let roots = [1e-3, 1.0, 1e4];
        let mut poly = vec![c(1.0)];
        for r in roots {
            let mut next = vec![c(0.0); poly.len() + 1];
            for (k, a) in poly.iter().enumerate() {
                next[k + 1] += a;
                next[k] -= a * r;
            }
            poly = next;
        }
        let set = aberth(&poly, 1000, 1e-15);
        assert!(set.converged);
        let r = sort_roots(set.roots);
        for (got, want) in r.iter().zip(roots) {
            assert!((got - c(want)).norm() < 1e-9 * want.max(1.0));
        }
    }

    #[test]
    fn zero_roots_are_exact() {
        let set = aberth(&[c(0.0), c(0.0), c(-1.0), c(1.0)], 100, 1e-15);
        let r = sort_roots(set.roots);
        assert_eq!(r[0], c(0.0));
        assert_eq!(r[1], c(0.0));
        assert!((r[2] - c(1.0)).norm() < 1e-14);
    }
}
