//! Gauss-Legendre quadrature plus the two geometric averages used by the
//! payoff analysis: the uniform average over a great circle of target
//! states, and the average over plane normals covering one hemisphere.
//!
//! Plane normals are parameterized as
//! `beta = (sin(theta) sin(phi), sin(theta) cos(phi), cos(theta))` with
//! `theta, phi` in `[0, pi]` and `sin(theta)` weight, which covers each
//! great circle exactly once.

use std::f64::consts::{PI, TAU};

use crate::state::Vec3;

/// Nodes (ascending) and weights of the n-point Gauss-Legendre rule on
/// [-1, 1]. Computed by Newton iteration on the Legendre recurrence.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut pp = 0.0;
        for _ in 0..100 {
            // Legendre polynomial at z by upward recurrence
            let mut p1 = 1.0;
            let mut p2 = 0.0;
            for j in 0..n {
                let p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j as f64 + 1.0) * z * p2 - j as f64 * p3) / (j as f64 + 1.0);
            }
            pp = n as f64 * (z * p1 - p2) / (z * z - 1.0);
            let dz = p1 / pp;
            z -= dz;
            if dz.abs() < 1e-15 {
                break;
            }
        }
        nodes[i] = -z;
        nodes[n - 1 - i] = z;
        let w = 2.0 / ((1.0 - z * z) * pp * pp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// Average of `f` over all plane normals: n x n Gauss-Legendre in
/// cos(theta) and phi over the hemisphere described in the module docs.
pub fn hemisphere_average(f: impl Fn(&Vec3) -> f64, n: usize) -> f64 {
    let (cu, wu) = gauss_legendre(n);
    let (xp, wp) = gauss_legendre(n);
    let mut total = 0.0;
    for (u, wu_i) in cu.iter().zip(&wu) {
        let sin_theta = (1.0 - u * u).max(0.0).sqrt();
        for (x, wp_j) in xp.iter().zip(&wp) {
            let phi = (x + 1.0) * PI / 2.0;
            let beta = Vec3::new(sin_theta * phi.sin(), sin_theta * phi.cos(), *u);
            total += wu_i * (wp_j * PI / 2.0) * f(&beta);
        }
    }
    // the measure sin(theta) d(theta) d(phi) integrates to 2 pi
    total / TAU
}

/// Deterministic orthonormal pair spanning the plane perpendicular to
/// `beta` (assumed unit).
pub fn plane_basis(beta: &Vec3) -> (Vec3, Vec3) {
    crate::optim::tangent_basis(beta)
}

/// The `n` target Bloch vectors at uniform midpoint angles on the great
/// circle perpendicular to `beta`.
pub fn circle_points(beta: &Vec3, n: usize) -> Vec<Vec3> {
    let (u, v) = plane_basis(beta);
    (0..n)
        .map(|k| {
            let phi = TAU * (k as f64 + 0.5) / n as f64;
            phi.cos() * u + phi.sin() * v
        })
        .collect()
}

/// Uniform-angle average of `f` over the great circle perpendicular to
/// `beta`. Exact to rounding for trigonometric polynomials of degree
/// below `n`.
pub fn circle_average(f: impl Fn(&Vec3) -> f64, beta: &Vec3, n: usize) -> f64 {
    circle_points(beta, n).iter().map(f).sum::<f64>() / n as f64
}
