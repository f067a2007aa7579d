//! The remote-state-preparation protocol and its efficiency measures.
//!
//! Alice and Bob share a two-qubit state and agree on a great circle of
//! pure targets, fixed by its unit normal `beta`. Alice measures along a
//! direction `alpha` and sends the outcome bit; on the minus outcome Bob
//! applies the pi rotation about `beta` (`r -> 2(r.beta)beta - r`). The
//! outcome-averaged corrected Bloch vector is the prepared state; payoffs
//! compare it with the target.
//!
//! For a state with Bob marginal `b` this average is
//! `E^T alpha + ((b - E^T alpha).beta) beta`, which for maximally mixed
//! marginals reduces to the projection of `E^T alpha` onto the target
//! plane.
//!
//! Two averaged efficiencies are exposed side by side: `pq_av_closed`
//! evaluates the closed expression `||E||^2 - beta'(E'E)beta` exactly as
//! printed in the literature, while `pq_av_quadrature` averages the
//! per-target optimum around the circle directly. The two differ by an
//! exact factor of two, which the oracle suite pins down as an executable
//! fact rather than silently choosing a side.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::entropy::{h2, Bits};
use crate::error::{Error, Result};
use crate::measures::SearchOpts;
use crate::optim::{max_over_directions, min_over_directions};
use crate::quadrature::{circle_average, hemisphere_average};
use crate::state::{conditional_bob_state, BellDiagonalState, FanoState, Outcome, Vec3};

/// A great circle of pure target states, stored as its unit normal.
/// `beta` and `-beta` describe the same circle.
#[derive(Debug, Clone, Copy)]
pub struct GreatCircle {
    beta: Vec3,
}

impl GreatCircle {
    pub fn new(normal: Vec3) -> Result<Self> {
        let n = normal.norm();
        if n < 1e-12 {
            return Err(Error::Domain("circle normal must be nonzero".into()));
        }
        Ok(Self { beta: normal / n })
    }

    /// Normal from the polar angles used by the hemisphere average:
    /// `beta = (sin(theta) sin(phi), sin(theta) cos(phi), cos(theta))`.
    pub fn from_angles(theta: f64, phi: f64) -> Self {
        Self {
            beta: Vec3::new(
                theta.sin() * phi.sin(),
                theta.sin() * phi.cos(),
                theta.cos(),
            ),
        }
    }

    pub fn beta(&self) -> Vec3 {
        self.beta
    }
}

/// Pure target `cos(theta)|0> + e^{i phi} sin(theta)|1>` with Bloch vector
/// `(sin(2 theta) cos(phi), sin(2 theta) sin(phi), cos(2 theta))`.
#[derive(Debug, Clone, Copy)]
pub struct TargetState {
    pub theta: f64,
    pub phi: f64,
}

impl TargetState {
    pub fn new(theta: f64, phi: f64) -> Self {
        Self { theta, phi }
    }

    pub fn bloch(&self) -> Vec3 {
        let (t2, p) = (2.0 * self.theta, self.phi);
        Vec3::new(t2.sin() * p.cos(), t2.sin() * p.sin(), t2.cos())
    }
}

/// Alice's projective measurement direction.
#[derive(Debug, Clone, Copy)]
pub struct AliceMeasurement {
    alpha: Vec3,
}

impl AliceMeasurement {
    pub fn new(direction: Vec3) -> Result<Self> {
        let n = direction.norm();
        if n < 1e-12 {
            return Err(Error::Domain(
                "measurement direction must be nonzero".into(),
            ));
        }
        Ok(Self {
            alpha: direction / n,
        })
    }

    /// Direction from polar angles, same parameterization as
    /// [`GreatCircle::from_angles`].
    pub fn from_angles(theta: f64, phi: f64) -> Self {
        Self {
            alpha: Vec3::new(
                theta.sin() * phi.sin(),
                theta.sin() * phi.cos(),
                theta.cos(),
            ),
        }
    }

    pub fn alpha(&self) -> Vec3 {
        self.alpha
    }
}

/// Ensemble-averaged prepared Bloch vector (|bloch| <= 1).
#[derive(Debug, Clone, Copy)]
pub struct PreparedState {
    pub bloch: Vec3,
}

/// Optimal payoff report for one target.
#[derive(Debug, Clone, Copy)]
pub struct PayoffReport {
    /// Quadratic payoff (t.p)^2 at the optimum.
    pub pq: f64,
    /// Linear payoff (1 + t.p)/2 at the same measurement.
    pub pl: f64,
    pub argmax_alpha: Vec3,
}

/// Pi rotation about the axis `beta` (unit): keeps the component along
/// `beta`, flips the rest.
pub fn pi_rotation_about(beta: &Vec3, r: &Vec3) -> Vec3 {
    2.0 * r.dot(beta) * beta - r
}

/// Outcome-averaged prepared Bloch vector of one protocol instance.
pub fn prepared_bloch(
    state: &FanoState,
    alpha: &AliceMeasurement,
    circle: &GreatCircle,
) -> PreparedState {
    // probability-weighted branch vectors (b +/- E^T alpha)/2 avoid the
    // 0/0 of a vanishing branch
    let et_alpha = state.e.transpose() * alpha.alpha();
    let plus = (state.b + et_alpha) / 2.0;
    let minus = (state.b - et_alpha) / 2.0;
    PreparedState {
        bloch: plus + pi_rotation_about(&circle.beta(), &minus),
    }
}

/// Quadratic and linear payoff of a prepared vector against a unit target.
pub fn payoff(target: &TargetState, prepared: &PreparedState) -> (f64, f64) {
    let overlap = target.bloch().dot(&prepared.bloch);
    (overlap * overlap, (1.0 + overlap) / 2.0)
}

/// Maximum quadratic payoff over Alice's measurement directions for a
/// target on the circle. For Bell-diagonal states the optimum is
/// `sum_i e_i^2 t_i^2` with the maximizer along `E t`.
pub fn pq_max(
    state: &FanoState,
    target: &TargetState,
    circle: &GreatCircle,
    opts: &SearchOpts,
) -> Result<PayoffReport> {
    let t = target.bloch();
    let off = t.dot(&circle.beta()).abs();
    if off > 1e-9 {
        return Err(Error::Domain(format!(
            "target is not on the great circle: |t.beta| = {off:.3e}"
        )));
    }
    let objective = |alpha: &Vec3| {
        let m = AliceMeasurement { alpha: *alpha };
        let (pq, _) = payoff(target, &prepared_bloch(state, &m, circle));
        pq
    };
    let out = max_over_directions(
        objective,
        opts.grid_points.max(1000),
        opts.refine_tol,
        opts.iter_cap,
    );
    // two antipodal maximizers; report the one with positive overlap
    let mut alpha = out.argmax;
    let m = AliceMeasurement { alpha };
    let mut overlap = t.dot(&prepared_bloch(state, &m, circle).bloch);
    if overlap < 0.0 {
        alpha = -alpha;
        overlap = -overlap;
    }
    Ok(PayoffReport {
        pq: out.value,
        pl: (1.0 + overlap) / 2.0,
        argmax_alpha: alpha,
    })
}

/// Circle-averaged optimal payoff in the closed form
/// `||E||^2 - beta'(E'E)beta`, evaluated literally. Twice the direct
/// circle average (see the module docs).
pub fn pq_av_closed(state: &BellDiagonalState, circle: &GreatCircle) -> f64 {
    let e = state.correlations();
    let beta = circle.beta();
    let ete_beta = Vec3::new(e.x * e.x * beta.x, e.y * e.y * beta.y, e.z * e.z * beta.z);
    e.norm_squared() - beta.dot(&ete_beta)
}

/// Direct uniform average over the circle of the per-target optimal payoff
/// `sum_i e_i^2 t_i^2`. Equals `pq_av_closed / 2` exactly.
pub fn pq_av_quadrature(state: &BellDiagonalState, circle: &GreatCircle, n: usize) -> f64 {
    assert!(n >= 64, "circle quadrature needs at least 64 points");
    let e = state.correlations();
    circle_average(
        |t| e.x * e.x * t.x * t.x + e.y * e.y * t.y * t.y + e.z * e.z * t.z * t.z,
        &circle.beta(),
        n,
    )
}

/// Minimize the closed circle-averaged payoff over plane normals. The
/// minimum is the sum of the two smallest squared correlations, attained
/// with the normal along the strongest correlation axis.
pub fn min_over_beta(state: &BellDiagonalState, opts: &SearchOpts) -> (f64, Vec3) {
    let objective = |beta: &Vec3| pq_av_closed(state, &GreatCircle { beta: *beta });
    // the quadratic form is stationary exactly on the coordinate axes, so
    // seed them alongside the lattice
    let out = min_over_directions(
        objective,
        opts.grid_points.max(1000),
        opts.refine_tol,
        opts.iter_cap,
        &[Vec3::x(), Vec3::y(), Vec3::z()],
    );
    (out.value, out.argmax)
}

/// Average RSP efficiency in closed form: `(2/3)(e1^2 + e2^2 + e3^2)`.
pub fn g_closed(state: &BellDiagonalState) -> f64 {
    2.0 / 3.0 * state.correlations().norm_squared()
}

/// Average RSP efficiency by hemisphere quadrature of [`pq_av_closed`]
/// over all plane normals. Matches [`g_closed`] to quadrature accuracy.
pub fn g_quadrature(state: &BellDiagonalState, n: usize) -> f64 {
    hemisphere_average(|beta| pq_av_closed(state, &GreatCircle { beta: *beta }), n)
}

/// C3 of any Bell-diagonal state with average efficiency `g`:
/// `1 - h((1 + sqrt(g/2))/2)`. Monotone increasing on [0, 2].
pub fn c3_from_g(g: f64) -> Result<Bits> {
    if !(-1e-12..=2.0 + 1e-12).contains(&g) {
        return Err(Error::Domain(format!(
            "average efficiency {g} outside [0, 2]"
        )));
    }
    let g = g.clamp(0.0, 2.0);
    Ok(Bits(1.0 - h2((1.0 + (g / 2.0).sqrt()) / 2.0)))
}

/// Singlet fraction `p` mixed with flip noise on |01>, |10>:
/// correlations `(-p, -p, -1)`.
pub fn rho_c(p: f64) -> Result<BellDiagonalState> {
    check_unit_interval(p)?;
    Ok(BellDiagonalState::new(-p, -p, -1.0))
}

/// Singlet fraction `p` mixed with aligned noise on |00>, |11>:
/// correlations `(-p, -p, 1 - 2p)`.
pub fn rho_g(p: f64) -> Result<BellDiagonalState> {
    check_unit_interval(p)?;
    Ok(BellDiagonalState::new(-p, -p, 1.0 - 2.0 * p))
}

fn check_unit_interval(p: f64) -> Result<()> {
    if !(-1e-12..=1.0 + 1e-12).contains(&p) {
        return Err(Error::Domain(format!(
            "mixing parameter {p} outside [0, 1]"
        )));
    }
    Ok(())
}

/// Reference payoff curve quoted for the rho_c family,
/// `(1 + p + (1-p) cos(2 theta))/2`. Comparison plots only; not derived
/// from the payoff definition here.
pub fn reference_fidelity_c(p: f64, theta: f64) -> f64 {
    0.5 * (1.0 + p + (1.0 - p) * (2.0 * theta).cos())
}

/// Reference payoff curve quoted for the rho_g family,
/// `(3p + (1-p) cos(2 theta) - 1)/2`. Takes values below zero for some
/// angles, which the oracle suite records.
pub fn reference_fidelity_g(p: f64, theta: f64) -> f64 {
    0.5 * (3.0 * p + (1.0 - p) * (2.0 * theta).cos() - 1.0)
}

/// Event-level Monte Carlo estimate of one protocol instance.
#[derive(Debug, Clone, Copy)]
pub struct McReport {
    /// Empirical mean of the corrected Bloch vectors.
    pub mean: Vec3,
    /// Per-component standard error (sample stdev / sqrt(n)).
    pub std_error: Vec3,
    /// Quadratic payoff of the empirical mean against the target.
    pub pq: f64,
    /// Linear payoff of the empirical mean against the target.
    pub pl: f64,
    pub events: usize,
}

/// Simulate `n` independent protocol events. Each event draws Alice's
/// outcome with its exact probability, applies the outcome correction and
/// records the corrected Bloch vector. Event `i` uses stream `i` of a
/// ChaCha generator keyed by `seed`, so results do not depend on
/// scheduling or evaluation order.
pub fn mc_simulate(
    state: &FanoState,
    alpha: &AliceMeasurement,
    circle: &GreatCircle,
    target: &TargetState,
    n: usize,
    seed: u64,
) -> McReport {
    assert!(n >= 1, "need at least one event");
    let p_plus = conditional_bob_state(state, &alpha.alpha(), Outcome::Plus).probability;
    let mut sum = Vec3::zeros();
    let mut sum_sq = Vec3::zeros();
    for i in 0..n {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(i as u64);
        let u: f64 = rng.gen();
        let outcome = if u < p_plus {
            Outcome::Plus
        } else {
            Outcome::Minus
        };
        let branch = conditional_bob_state(state, &alpha.alpha(), outcome);
        let v = match outcome {
            Outcome::Plus => branch.bob_state.bloch,
            Outcome::Minus => pi_rotation_about(&circle.beta(), &branch.bob_state.bloch),
        };
        sum += v;
        sum_sq += v.component_mul(&v);
    }
    let nf = n as f64;
    let mean = sum / nf;
    let std_error = if n > 1 {
        Vec3::from_fn(|i, _| {
            let var = ((sum_sq[i] - nf * mean[i] * mean[i]) / (nf - 1.0)).max(0.0);
            (var / nf).sqrt()
        })
    } else {
        Vec3::zeros()
    };
    let (pq, pl) = payoff(target, &PreparedState { bloch: mean });
    McReport {
        mean,
        std_error,
        pq,
        pl,
        events: n,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand_chacha::ChaCha8Rng;

    fn singlet() -> BellDiagonalState {
        BellDiagonalState::new(-1.0, -1.0, -1.0)
    }

    fn opts() -> SearchOpts {
        SearchOpts::default()
    }

    fn z_circle() -> GreatCircle {
        GreatCircle::new(Vec3::z()).unwrap()
    }

    #[test]
    fn target_angles_map_to_bloch() {
        let t = TargetState::new(std::f64::consts::FRAC_PI_4, 0.0);
        assert!((t.bloch() - Vec3::x()).norm() < 1e-12);
        let t = TargetState::new(0.0, 1.3);
        assert!((t.bloch() - Vec3::z()).norm() < 1e-12);
    }

    #[test]
    fn prepared_bloch_examples() {
        let alpha = AliceMeasurement::new(Vec3::x()).unwrap();
        let p = prepared_bloch(&singlet().to_fano(), &alpha, &z_circle());
        assert!((p.bloch - Vec3::new(-1.0, 0.0, 0.0)).norm() < 1e-15);

        let p = prepared_bloch(
            &BellDiagonalState::new(0.8, 0.0, 0.0).to_fano(),
            &alpha,
            &z_circle(),
        );
        assert!((p.bloch - Vec3::new(0.8, 0.0, 0.0)).norm() < 1e-15);

        // no correlations: only the component of b along beta survives the
        // outcome averaging
        let state = FanoState::new(
            Vec3::zeros(),
            Vec3::new(0.3, 0.2, 0.5),
            crate::state::Mat3::zeros(),
        );
        let p = prepared_bloch(&state, &alpha, &z_circle());
        assert!((p.bloch - Vec3::new(0.0, 0.0, 0.5)).norm() < 1e-15);
        let zero = FanoState::new(Vec3::zeros(), Vec3::zeros(), crate::state::Mat3::zeros());
        assert!(prepared_bloch(&zero, &alpha, &z_circle()).bloch.norm() < 1e-15);
    }

    #[test]
    fn payoff_reference_points() {
        let t = TargetState::new(std::f64::consts::FRAC_PI_4, 0.0);
        let (pq, pl) = payoff(&t, &PreparedState { bloch: t.bloch() });
        assert_abs_diff_eq!(pq, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(pl, 1.0, epsilon = 1e-12);
        let (pq, pl) = payoff(
            &t,
            &PreparedState {
                bloch: Vec3::zeros(),
            },
        );
        assert_eq!((pq, pl), (0.0, 0.5));
        let (pq, pl) = payoff(
            &t,
            &PreparedState {
                bloch: Vec3::new(0.8, 0.0, 0.0),
            },
        );
        assert_abs_diff_eq!(pq, 0.64, epsilon = 1e-12);
        assert_abs_diff_eq!(pl, 0.9, epsilon = 1e-12);
    }

    #[test]
    fn pq_max_examples() {
        let t = TargetState::new(std::f64::consts::FRAC_PI_4, 0.0);
        let report = pq_max(&singlet().to_fano(), &t, &z_circle(), &opts()).unwrap();
        assert_abs_diff_eq!(report.pq, 1.0, epsilon = 1e-9);

        let report = pq_max(
            &BellDiagonalState::new(0.8, 0.0, 0.0).to_fano(),
            &t,
            &z_circle(),
            &opts(),
        )
        .unwrap();
        assert_abs_diff_eq!(report.pq, 0.64, epsilon = 1e-9);
        assert!(report.argmax_alpha.x.abs() > 1.0 - 1e-4);
        assert_abs_diff_eq!(report.pl, 0.9, epsilon = 1e-6);

        let zero = FanoState::new(Vec3::zeros(), Vec3::zeros(), crate::state::Mat3::zeros());
        let report = pq_max(&zero, &t, &z_circle(), &opts()).unwrap();
        assert!(report.pq.abs() < 1e-12);
    }

    #[test]
    fn pq_max_rejects_off_circle_targets() {
        let t = TargetState::new(0.0, 0.0); // Bloch +z
        let err = pq_max(&singlet().to_fano(), &t, &z_circle(), &opts());
        assert!(err.is_err());
    }

    #[test]
    fn pq_max_matches_analytic_optimum_on_random_instances() {
        let mut rng = ChaCha8Rng::seed_from_u64(61);
        for _ in 0..10 {
            let bd = BellDiagonalState::random(&mut rng);
            let beta = crate::optim::fibonacci_sphere(37).nth(17).unwrap();
            let circle = GreatCircle::new(beta).unwrap();
            let (u, _) = crate::quadrature::plane_basis(&circle.beta());
            // pick a target on the circle through u
            let t = u;
            let theta = 0.5 * t.z.acos();
            let phi = t.y.atan2(t.x);
            let target = TargetState::new(theta, phi);
            assert!((target.bloch() - t).norm() < 1e-10);
            let e = bd.correlations();
            let want = e.x * e.x * t.x * t.x + e.y * e.y * t.y * t.y + e.z * e.z * t.z * t.z;
            let got = pq_max(&bd.to_fano(), &target, &circle, &opts()).unwrap();
            assert_abs_diff_eq!(got.pq, want, epsilon = 1e-6);
        }
    }

    #[test]
    fn circle_average_closed_form_examples() {
        assert_abs_diff_eq!(pq_av_closed(&singlet(), &z_circle()), 2.0, epsilon = 1e-15);
        let axis = BellDiagonalState::new(0.8, 0.0, 0.0);
        let x_circle = GreatCircle::new(Vec3::x()).unwrap();
        assert_abs_diff_eq!(pq_av_closed(&axis, &x_circle), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(pq_av_closed(&axis, &z_circle()), 0.64, epsilon = 1e-15);
    }

    #[test]
    fn circle_quadrature_examples_and_factor() {
        assert_abs_diff_eq!(
            pq_av_quadrature(&singlet(), &z_circle(), 4096),
            1.0,
            epsilon = 1e-12
        );
        let axis = BellDiagonalState::new(0.8, 0.0, 0.0);
        assert_abs_diff_eq!(
            pq_av_quadrature(&axis, &z_circle(), 4096),
            0.32,
            epsilon = 1e-12
        );
        let zero = BellDiagonalState::new(0.0, 0.0, 0.0);
        assert_abs_diff_eq!(
            pq_av_quadrature(&zero, &z_circle(), 64),
            0.0,
            epsilon = 1e-15
        );

        let mut rng = ChaCha8Rng::seed_from_u64(67);
        for _ in 0..20 {
            let bd = BellDiagonalState::random(&mut rng);
            let beta = crate::optim::fibonacci_sphere(101).nth(53).unwrap();
            let circle = GreatCircle::new(beta).unwrap();
            assert_abs_diff_eq!(
                pq_av_quadrature(&bd, &circle, 4096),
                pq_av_closed(&bd, &circle) / 2.0,
                epsilon = 1e-9
            );
        }
    }

    #[test]
    fn min_over_beta_examples() {
        let (v, arg) = min_over_beta(&BellDiagonalState::new(0.8, 0.0, 0.0), &opts());
        assert_abs_diff_eq!(v, 0.0, epsilon = 1e-12);
        assert!(arg.x.abs() > 1.0 - 1e-6);

        let (v, _) = min_over_beta(&singlet(), &opts());
        assert_abs_diff_eq!(v, 2.0, epsilon = 1e-12);

        let (v, _) = min_over_beta(&BellDiagonalState::new(-0.2, -0.2, -1.0), &opts());
        assert_abs_diff_eq!(v, 0.08, epsilon = 1e-12);
    }

    #[test]
    fn g_examples() {
        assert_abs_diff_eq!(g_closed(&singlet()), 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(
            g_closed(&BellDiagonalState::new(0.8, 0.0, 0.0)),
            0.4266666666666667,
            epsilon = 1e-15
        );
        assert_eq!(g_closed(&BellDiagonalState::new(0.0, 0.0, 0.0)), 0.0);

        assert_abs_diff_eq!(g_quadrature(&singlet(), 64), 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(
            g_quadrature(&BellDiagonalState::new(0.8, 0.0, 0.0), 64),
            0.4266666666666667,
            epsilon = 1e-12
        );
        assert_eq!(
            g_quadrature(&BellDiagonalState::new(0.0, 0.0, 0.0), 64),
            0.0
        );
    }

    #[test]
    fn measurement_from_angles_matches_circle_parameterization() {
        let m = AliceMeasurement::from_angles(1.1, 0.4);
        let c = GreatCircle::from_angles(1.1, 0.4);
        assert!((m.alpha() - c.beta()).norm() < 1e-15);
        assert_abs_diff_eq!(m.alpha().norm(), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn c3_from_g_examples() {
        assert_eq!(c3_from_g(2.0).unwrap().value(), 1.0);
        assert_eq!(c3_from_g(0.0).unwrap().value(), 0.0);
        assert_abs_diff_eq!(
            c3_from_g(0.4266666666666667).unwrap().value(),
            0.15988759604821934,
            epsilon = 1e-12
        );
        assert!(c3_from_g(-0.1).is_err());
        assert!(c3_from_g(2.1).is_err());
    }

    #[test]
    fn noise_family_constructors() {
        assert_eq!(rho_c(1.0).unwrap(), singlet());
        assert_eq!(rho_g(1.0).unwrap(), singlet());
        assert_eq!(
            rho_c(0.2).unwrap(),
            BellDiagonalState::new(-0.2, -0.2, -1.0)
        );
        assert_eq!(rho_g(0.2).unwrap(), BellDiagonalState::new(-0.2, -0.2, 0.6));
        assert!(rho_c(1.2).is_err());
        assert!(rho_g(-0.1).is_err());
    }

    #[test]
    fn reference_curves() {
        for p in [0.0, 0.2, 0.7, 1.0] {
            assert_abs_diff_eq!(reference_fidelity_c(p, 0.0), 1.0, epsilon = 1e-15);
            assert_abs_diff_eq!(reference_fidelity_g(p, 0.0), p, epsilon = 1e-15);
        }
        // the quoted curve leaves [0, 1]
        assert_abs_diff_eq!(
            reference_fidelity_g(0.2, std::f64::consts::FRAC_PI_2),
            -0.6,
            epsilon = 1e-15
        );
    }

    #[test]
    fn mc_is_deterministic_per_seed() {
        let alpha = AliceMeasurement::new(Vec3::x()).unwrap();
        let target = TargetState::new(std::f64::consts::FRAC_PI_4, 0.0);
        let state = BellDiagonalState::new(0.6, -0.3, 0.2).to_fano();
        let a = mc_simulate(&state, &alpha, &z_circle(), &target, 1, 99);
        let b = mc_simulate(&state, &alpha, &z_circle(), &target, 1, 99);
        assert_eq!(a.mean, b.mean);
        let a = mc_simulate(&state, &alpha, &z_circle(), &target, 2000, 7);
        let b = mc_simulate(&state, &alpha, &z_circle(), &target, 2000, 7);
        assert_eq!(a.mean, b.mean);
        assert_eq!(a.std_error, b.std_error);
    }

    #[test]
    fn mc_singlet_events_are_exact() {
        let alpha = AliceMeasurement::new(Vec3::x()).unwrap();
        let target = TargetState::new(std::f64::consts::FRAC_PI_4, 0.0);
        let report = mc_simulate(
            &singlet().to_fano(),
            &alpha,
            &z_circle(),
            &target,
            20_000,
            3,
        );
        // every corrected event vector is exactly (-1, 0, 0)
        assert_eq!(report.mean, Vec3::new(-1.0, 0.0, 0.0));
        assert_eq!(report.std_error, Vec3::zeros());
        assert_abs_diff_eq!(report.pq, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn mc_null_state_stays_at_origin() {
        let alpha = AliceMeasurement::new(Vec3::x()).unwrap();
        let target = TargetState::new(std::f64::consts::FRAC_PI_4, 0.0);
        let zero = FanoState::new(Vec3::zeros(), Vec3::zeros(), crate::state::Mat3::zeros());
        let report = mc_simulate(&zero, &alpha, &z_circle(), &target, 10_000, 5);
        assert_eq!(report.mean, Vec3::zeros());
        assert_eq!(report.pq, 0.0);
        assert_eq!(report.pl, 0.5);
    }

    #[test]
    fn mc_converges_to_prepared_bloch() {
        let alpha = AliceMeasurement::new(Vec3::new(0.4, -1.0, 0.3)).unwrap();
        let circle = GreatCircle::new(Vec3::new(0.2, 0.1, 1.0)).unwrap();
        let target = {
            let (u, _) = crate::quadrature::plane_basis(&circle.beta());
            TargetState::new(0.5 * u.z.acos(), u.y.atan2(u.x))
        };
        let state = BellDiagonalState::new(-0.4, -0.7, 0.1).to_fano();
        let exact = prepared_bloch(&state, &alpha, &circle).bloch;
        let report = mc_simulate(&state, &alpha, &circle, &target, 100_000, 12);
        for i in 0..3 {
            let dev = (report.mean[i] - exact[i]).abs();
            assert!(
                dev <= 4.0 * report.std_error[i] + 1e-12,
                "component {i}: deviation {dev:.3e} exceeds 4 x SE {:.3e}",
                report.std_error[i]
            );
        }
    }
}
