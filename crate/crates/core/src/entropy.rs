//! Entropic primitives in bits and the Holevo quantity of a local
//! projective measurement.
//!
//! All logarithms are base 2, so every quantity here lives in [0, 1] for
//! qubit ensembles. Single-qubit entropies are always evaluated from the
//! Bloch norm rather than a spectral solve, which keeps the innermost
//! optimization loops free of iterative linear algebra.

use crate::error::{Error, Result};
use crate::state::{conditional_bob_state, FanoState, Outcome, QubitState, Vec3};

/// An information quantity measured in bits.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Bits(pub f64);

impl Bits {
    pub fn value(self) -> f64 {
        self.0
    }
}

impl From<Bits> for f64 {
    fn from(b: Bits) -> f64 {
        b.0
    }
}

impl std::fmt::Display for Bits {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

const BOUNDARY_TOL: f64 = 1e-12;

/// Raw binary entropy with the argument clamped to [0, 1] and 0 log 0 = 0.
pub(crate) fn h2(x: f64) -> f64 {
    let x = x.clamp(0.0, 1.0);
    if x == 0.0 || x == 1.0 {
        return 0.0;
    }
    -(x * x.log2()) - (1.0 - x) * (1.0 - x).log2()
}

/// Binary entropy h(x) = -x log2 x - (1-x) log2(1-x).
///
/// Inputs within 1e-12 of the [0, 1] boundary are clamped; anything
/// further out is a domain error.
pub fn binary_entropy(x: f64) -> Result<Bits> {
    if !(-BOUNDARY_TOL..=1.0 + BOUNDARY_TOL).contains(&x) {
        return Err(Error::Domain(format!(
            "binary entropy argument {x} outside [0, 1]"
        )));
    }
    Ok(Bits(h2(x)))
}

/// Von Neumann entropy of a qubit from its Bloch norm: h((1 + |r|)/2).
pub fn von_neumann_qubit(state: &QubitState) -> Bits {
    let n = state.bloch.norm();
    debug_assert!(n <= 1.0 + 1e-9, "Bloch norm {n} exceeds 1");
    Bits(h2((1.0 + n.min(1.0)) / 2.0))
}

/// Shannon entropy in bits of a probability vector; tiny negative entries
/// from spectral rounding are treated as zero.
pub fn entropy_of_probs(probs: &[f64]) -> f64 {
    probs
        .iter()
        .map(|&p| {
            debug_assert!(p > -1e-9, "probability {p} is significantly negative");
            if p <= 0.0 {
                0.0
            } else {
                -p * p.log2()
            }
        })
        .sum()
}

/// Holevo quantity of the ensemble Bob holds after Alice measures along the
/// unit direction `alpha`:
/// chi = S(sum_i p_i rho_i) - sum_i p_i S(rho_i).
///
/// The outcome-averaged state is Bob's marginal, so the first term is the
/// entropy of `b`. Zero-probability branches contribute nothing. The
/// result is clamped into [0, 1].
pub fn holevo_chi(state: &FanoState, alpha: &Vec3) -> Bits {
    let avg_entropy = h2((1.0 + state.b.norm().min(1.0)) / 2.0);
    let mut cond_entropy = 0.0;
    for outcome in Outcome::BOTH {
        let branch = conditional_bob_state(state, alpha, outcome);
        if !branch.zero_probability {
            cond_entropy +=
                branch.probability * h2((1.0 + branch.bob_state.bloch.norm().min(1.0)) / 2.0);
        }
    }
    Bits((avg_entropy - cond_entropy).clamp(0.0, 1.0))
}

/// Mutual information S(A) + S(B) - S(AB) in bits. Marginal entropies come
/// from Bloch norms, the joint entropy from the 4x4 spectrum.
pub fn mutual_information(state: &FanoState) -> Result<f64> {
    let s_a = h2((1.0 + state.a.norm().min(1.0)) / 2.0);
    let s_b = h2((1.0 + state.b.norm().min(1.0)) / 2.0);
    let spectrum = crate::state::hermitian_eigenvalues(&state.to_density())?;
    Ok(s_a + s_b - entropy_of_probs(&spectrum))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::{BellDiagonalState, Mat3};
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn binary_entropy_reference_points() {
        assert_eq!(binary_entropy(0.5).unwrap().value(), 1.0);
        assert_eq!(binary_entropy(0.0).unwrap().value(), 0.0);
        assert_eq!(binary_entropy(1.0).unwrap().value(), 0.0);
        assert_abs_diff_eq!(
            binary_entropy(0.75).unwrap().value(),
            0.8112781244591328,
            epsilon = 1e-15
        );
        assert!(binary_entropy(-0.1).is_err());
        assert!(binary_entropy(1.0 + 1e-6).is_err());
        assert_eq!(binary_entropy(1.0 + 1e-13).unwrap().value(), 0.0);
    }

    #[test]
    fn qubit_entropy_from_bloch_norm() {
        assert_eq!(
            von_neumann_qubit(&QubitState {
                bloch: Vec3::zeros()
            })
            .value(),
            1.0
        );
        assert_eq!(
            von_neumann_qubit(&QubitState {
                bloch: Vec3::new(0.0, 0.0, 1.0)
            })
            .value(),
            0.0
        );
        assert_abs_diff_eq!(
            von_neumann_qubit(&QubitState {
                bloch: Vec3::new(0.5, 0.0, 0.0)
            })
            .value(),
            0.8112781244591328,
            epsilon = 1e-15
        );
    }

    #[test]
    fn holevo_vanishes_on_product_states() {
        let state = FanoState::product(Vec3::new(0.3, 0.1, -0.2), Vec3::new(0.0, 0.7, 0.1));
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let alpha = random_unit(&mut rng);
            assert!(holevo_chi(&state, &alpha).value() < 1e-12);
        }
    }

    #[test]
    fn holevo_is_one_for_the_singlet() {
        let state = BellDiagonalState::new(-1.0, -1.0, -1.0).to_fano();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..20 {
            let alpha = random_unit(&mut rng);
            assert_eq!(holevo_chi(&state, &alpha).value(), 1.0);
        }
    }

    #[test]
    fn holevo_closed_form_for_bell_diagonal() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let bd = BellDiagonalState::random(&mut rng);
            let alpha = random_unit(&mut rng);
            let eu = Mat3::from_diagonal(&bd.correlations()) * alpha;
            let closed = 1.0 - h2((1.0 + eu.norm()) / 2.0);
            let general = holevo_chi(&bd.to_fano(), &alpha).value();
            assert_abs_diff_eq!(general, closed, epsilon = 1e-10);
        }
    }

    #[test]
    fn holevo_general_state_frozen_value() {
        // frozen from the density-matrix route on a generic Fano state
        let state = FanoState::new(
            Vec3::new(0.3, -0.1, 0.2),
            Vec3::new(0.2, 0.1, -0.3),
            Mat3::from_row_slice(&[0.4, 0.05, 0.0, 0.1, -0.3, 0.02, 0.0, -0.05, 0.25]),
        );
        let alpha = Vec3::new(1.0, 1.0, 1.0).normalize();
        assert_abs_diff_eq!(
            holevo_chi(&state, &alpha).value(),
            0.126907970015295,
            epsilon = 1e-12
        );
    }

    #[test]
    fn holevo_symmetric_under_basis_relabeling() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..50 {
            let bd = BellDiagonalState::random(&mut rng);
            let state = FanoState::new(
                Vec3::new(rng.gen_range(-0.2..0.2), 0.0, 0.0),
                Vec3::new(0.0, rng.gen_range(-0.2..0.2), 0.0),
                bd.to_fano().e,
            );
            let alpha = random_unit(&mut rng);
            let plus = holevo_chi(&state, &alpha).value();
            let minus = holevo_chi(&state, &(-alpha)).value();
            assert_abs_diff_eq!(plus, minus, epsilon = 1e-12);
        }
    }

    #[test]
    fn mutual_information_of_singlet_is_two() {
        let state = BellDiagonalState::new(-1.0, -1.0, -1.0).to_fano();
        assert_abs_diff_eq!(mutual_information(&state).unwrap(), 2.0, epsilon = 1e-10);
        let product = FanoState::product(Vec3::new(0.0, 0.0, 0.5), Vec3::new(0.3, 0.0, 0.0));
        assert_abs_diff_eq!(mutual_information(&product).unwrap(), 0.0, epsilon = 1e-10);
    }

    fn random_unit(rng: &mut impl Rng) -> Vec3 {
        loop {
            let v = Vec3::new(
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
            );
            let n = v.norm();
            if n > 1e-3 {
                return v / n;
            }
        }
    }
}
