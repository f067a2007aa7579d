//! Derivative-free maximization over Bloch directions and orthonormal
//! frames: a deterministic quasi-uniform grid pass followed by local
//! Nelder-Mead refinement. Every reported value is one that was actually
//! evaluated, so results are certified lower bounds on the true maximum.

use nalgebra::Rotation3;
use std::f64::consts::{PI, TAU};

use crate::state::Vec3;

/// Result of a grid + simplex search.
#[derive(Debug, Clone)]
pub struct SearchOutcome<T> {
    pub argmax: T,
    pub value: f64,
    /// Nelder-Mead iterations spent in the refinement stage.
    pub iterations: usize,
    pub converged: bool,
}

/// Quasi-uniform deterministic covering of the unit sphere (Fibonacci
/// lattice).
pub fn fibonacci_sphere(n: usize) -> impl Iterator<Item = Vec3> {
    let golden = PI * (3.0 - 5.0f64.sqrt());
    (0..n).map(move |i| {
        let z = 1.0 - 2.0 * (i as f64 + 0.5) / n as f64;
        let r = (1.0 - z * z).sqrt();
        let th = golden * i as f64;
        Vec3::new(r * th.cos(), r * th.sin(), z)
    })
}

/// Deterministic orthonormal pair spanning the plane perpendicular to `u`.
pub fn tangent_basis(u: &Vec3) -> (Vec3, Vec3) {
    let axis = if u.x.abs() <= u.y.abs() && u.x.abs() <= u.z.abs() {
        Vec3::x()
    } else if u.y.abs() <= u.z.abs() {
        Vec3::y()
    } else {
        Vec3::z()
    };
    let e1 = u.cross(&axis).normalize();
    let e2 = u.cross(&e1);
    (e1, e2)
}

/// Nelder-Mead simplex minimization. Converged when the simplex diameter
/// (infinity norm around the best vertex) drops below `tol`.
pub(crate) fn nelder_mead_min(
    f: &dyn Fn(&[f64]) -> f64,
    x0: &[f64],
    step: f64,
    tol: f64,
    iter_cap: usize,
) -> (Vec<f64>, f64, usize, bool) {
    let dim = x0.len();
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(dim + 1);
    simplex.push((x0.to_vec(), f(x0)));
    for i in 0..dim {
        let mut x = x0.to_vec();
        x[i] += step;
        let fx = f(&x);
        simplex.push((x, fx));
    }

    let mut iterations = 0;
    let mut converged = false;
    while iterations < iter_cap {
        simplex.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap());
        let diameter = simplex[1..]
            .iter()
            .map(|(x, _)| {
                x.iter()
                    .zip(&simplex[0].0)
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0, f64::max)
            })
            .fold(0.0, f64::max);
        if diameter < tol {
            converged = true;
            break;
        }
        iterations += 1;

        let worst = simplex[dim].clone();
        let mut centroid = vec![0.0; dim];
        for (x, _) in &simplex[..dim] {
            for (c, v) in centroid.iter_mut().zip(x) {
                *c += v / dim as f64;
            }
        }
        let lerp = |t: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&worst.0)
                .map(|(c, w)| c + t * (c - w))
                .collect()
        };

        let reflected = lerp(1.0);
        let fr = f(&reflected);
        if fr < simplex[0].1 {
            let expanded = lerp(2.0);
            let fe = f(&expanded);
            simplex[dim] = if fe < fr {
                (expanded, fe)
            } else {
                (reflected, fr)
            };
        } else if fr < simplex[dim - 1].1 {
            simplex[dim] = (reflected, fr);
        } else {
            let contracted = if fr < worst.1 { lerp(0.5) } else { lerp(-0.5) };
            let fc = f(&contracted);
            if fc < worst.1.min(fr) {
                simplex[dim] = (contracted, fc);
            } else {
                // shrink toward the best vertex
                let best = simplex[0].0.clone();
                for entry in simplex.iter_mut().skip(1) {
                    let x: Vec<f64> = entry
                        .0
                        .iter()
                        .zip(&best)
                        .map(|(v, b)| b + 0.5 * (v - b))
                        .collect();
                    let fx = f(&x);
                    *entry = (x, fx);
                }
            }
        }
    }
    simplex.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap());
    let (x, fx) = simplex.swap_remove(0);
    (x, fx, iterations, converged)
}

/// Maximize a smooth function over unit directions: Fibonacci grid of
/// `grid_points` seeds, then Nelder-Mead in a tangent patch around the
/// best seed.
pub fn max_over_directions(
    f: impl Fn(&Vec3) -> f64,
    grid_points: usize,
    tol: f64,
    iter_cap: usize,
) -> SearchOutcome<Vec3> {
    let grid_points = grid_points.max(2);
    let mut best_dir = Vec3::z();
    let mut best = f64::NEG_INFINITY;
    for u in fibonacci_sphere(grid_points) {
        let v = f(&u);
        if v > best {
            best = v;
            best_dir = u;
        }
    }
    let (e1, e2) = tangent_basis(&best_dir);
    let patch = |x: &[f64]| -(f(&(best_dir + x[0] * e1 + x[1] * e2).normalize()));
    let step = 2.0 / (grid_points as f64).sqrt();
    let (x, neg, iterations, converged) = nelder_mead_min(&patch, &[0.0, 0.0], step, tol, iter_cap);
    let refined = (best_dir + x[0] * e1 + x[1] * e2).normalize();
    if -neg >= best {
        SearchOutcome {
            argmax: refined,
            value: -neg,
            iterations,
            converged,
        }
    } else {
        SearchOutcome {
            argmax: best_dir,
            value: best,
            iterations,
            converged,
        }
    }
}

/// Minimize over unit directions; same contract as [`max_over_directions`].
/// `extra_seeds` lets callers inject known stationary candidates.
pub fn min_over_directions(
    f: impl Fn(&Vec3) -> f64,
    grid_points: usize,
    tol: f64,
    iter_cap: usize,
    extra_seeds: &[Vec3],
) -> SearchOutcome<Vec3> {
    let grid_points = grid_points.max(2);
    let mut best_dir = Vec3::z();
    let mut best = f64::INFINITY;
    for u in fibonacci_sphere(grid_points).chain(extra_seeds.iter().copied()) {
        let v = f(&u);
        if v < best {
            best = v;
            best_dir = u;
        }
    }
    let (e1, e2) = tangent_basis(&best_dir);
    let patch = |x: &[f64]| f(&(best_dir + x[0] * e1 + x[1] * e2).normalize());
    let step = 2.0 / (grid_points as f64).sqrt();
    let (x, fx, iterations, converged) = nelder_mead_min(&patch, &[0.0, 0.0], step, tol, iter_cap);
    let refined = (best_dir + x[0] * e1 + x[1] * e2).normalize();
    if fx <= best {
        SearchOutcome {
            argmax: refined,
            value: fx,
            iterations,
            converged,
        }
    } else {
        SearchOutcome {
            argmax: best_dir,
            value: best,
            iterations,
            converged,
        }
    }
}

/// Orthonormal frame (the three columns of a rotation matrix).
pub type Frame = [Vec3; 3];

fn frame_of(r: &Rotation3<f64>) -> Frame {
    let m = r.matrix();
    [
        Vec3::new(m[(0, 0)], m[(1, 0)], m[(2, 0)]),
        Vec3::new(m[(0, 1)], m[(1, 1)], m[(2, 1)]),
        Vec3::new(m[(0, 2)], m[(1, 2)], m[(2, 2)]),
    ]
}

/// Maximize over orthonormal frames. The grid scans `cells`^3 rotations
/// parameterized by three angles (z-y-z composition with the middle angle
/// sampled uniformly in its cosine); refinement runs Nelder-Mead in the
/// rotation tangent space at the best cell.
pub fn max_over_frames(
    f: impl Fn(&Frame) -> f64,
    cells: usize,
    tol: f64,
    iter_cap: usize,
) -> SearchOutcome<Frame> {
    let cells = cells.max(2);
    let mut best_rot = Rotation3::identity();
    let mut best = f64::NEG_INFINITY;
    for i in 0..cells {
        let a = TAU * (i as f64 + 0.5) / cells as f64;
        for j in 0..cells {
            let cos_b = -1.0 + 2.0 * (j as f64 + 0.5) / cells as f64;
            let b = cos_b.acos();
            for k in 0..cells {
                let g = TAU * (k as f64 + 0.5) / cells as f64;
                let rot = Rotation3::from_axis_angle(&Vec3::z_axis(), a)
                    * Rotation3::from_axis_angle(&Vec3::y_axis(), b)
                    * Rotation3::from_axis_angle(&Vec3::z_axis(), g);
                let v = f(&frame_of(&rot));
                if v > best {
                    best = v;
                    best_rot = rot;
                }
            }
        }
    }
    // local refinement: R(w) = R0 exp([w]_x), w in R^3
    let objective = |w: &[f64]| {
        let rot = best_rot * Rotation3::new(Vec3::new(w[0], w[1], w[2]));
        -f(&frame_of(&rot))
    };
    let step = PI / cells as f64;
    let (w, neg, iterations, converged) =
        nelder_mead_min(&objective, &[0.0, 0.0, 0.0], step, tol, iter_cap);
    let refined = best_rot * Rotation3::new(Vec3::new(w[0], w[1], w[2]));
    if -neg >= best {
        SearchOutcome {
            argmax: frame_of(&refined),
            value: -neg,
            iterations,
            converged,
        }
    } else {
        SearchOutcome {
            argmax: frame_of(&best_rot),
            value: best,
            iterations,
            converged,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn fibonacci_points_are_unit_and_spread() {
        let pts: Vec<Vec3> = fibonacci_sphere(500).collect();
        assert_eq!(pts.len(), 500);
        for p in &pts {
            assert_abs_diff_eq!(p.norm(), 1.0, epsilon = 1e-12);
        }
        // both hemispheres are populated
        assert!(pts.iter().filter(|p| p.z > 0.0).count() > 200);
        assert!(pts.iter().filter(|p| p.z < 0.0).count() > 200);
    }

    #[test]
    fn nelder_mead_minimizes_a_quadratic() {
        let f = |x: &[f64]| (x[0] - 1.0).powi(2) + 2.0 * (x[1] + 2.0).powi(2);
        let (x, fx, _, converged) = nelder_mead_min(&f, &[0.0, 0.0], 0.5, 1e-10, 500);
        assert!(converged);
        assert!(fx < 1e-15);
        assert_abs_diff_eq!(x[0], 1.0, epsilon = 1e-7);
        assert_abs_diff_eq!(x[1], -2.0, epsilon = 1e-7);
    }

    #[test]
    fn direction_search_finds_a_known_maximum() {
        let target = Vec3::new(0.3, -0.8, 0.5).normalize();
        let out = max_over_directions(|u| u.dot(&target), 800, 1e-9, 500);
        assert!(out.converged);
        assert_abs_diff_eq!(out.value, 1.0, epsilon = 1e-10);
        assert!((out.argmax - target).norm() < 1e-4);
    }

    #[test]
    fn direction_min_respects_extra_seeds() {
        let out = min_over_directions(|u| u.x * u.x, 600, 1e-9, 500, &[Vec3::z()]);
        assert!(out.value.abs() < 1e-12);
    }

    #[test]
    fn frame_search_returns_orthonormal_frames() {
        // maximize the smallest |z-alignment|; optimum spreads the frame
        // symmetrically around z with min value 1/sqrt(3)
        let out = max_over_frames(
            |fr| fr.iter().map(|u| u.z.abs()).fold(f64::INFINITY, f64::min),
            14,
            1e-8,
            500,
        );
        for i in 0..3 {
            assert_abs_diff_eq!(out.argmax[i].norm(), 1.0, epsilon = 1e-12);
            for j in (i + 1)..3 {
                assert_abs_diff_eq!(out.argmax[i].dot(&out.argmax[j]), 0.0, epsilon = 1e-12);
            }
        }
        assert_abs_diff_eq!(out.value, 1.0 / 3.0f64.sqrt(), epsilon = 1e-4);
    }
}
