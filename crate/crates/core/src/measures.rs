//! Correlation measures built on the Holevo quantity: the single-basis
//! maximum C1, the mutually-unbiased pair measure C2, the triad measure C3
//! with its Bell-diagonal closed form, and two discord variants.
//!
//! For qubits a pair of mutually unbiased bases corresponds to a pair of
//! orthogonal Bloch directions, and a triad to an orthonormal Bloch frame;
//! the searches below therefore run over directions and rotation frames.
//! Reported values are certified lower bounds (the best evaluated point),
//! and tests compare them against closed forms rather than other runs.

use crate::entropy::{h2, holevo_chi, mutual_information, Bits};
use crate::error::{Error, Result};
use crate::optim::{max_over_directions, max_over_frames, Frame};
use crate::state::{tetrahedron_check, BellDiagonalState, FanoState, Vec3};

/// Tolerance on the orthonormality invariants of [`MubPair`] and
/// [`MubTriad`].
pub const MUB_ORTHO_TOL: f64 = 1e-10;

/// Options shared by every measure search.
#[derive(Debug, Clone, Copy)]
pub struct SearchOpts {
    /// Fibonacci-lattice seeds for direction searches (C1, discord).
    pub grid_points: usize,
    /// Cells per angle in the frame grid (C2, C3), so `frame_grid^3` cells.
    pub frame_grid: usize,
    /// Simplex size at which refinement stops.
    pub refine_tol: f64,
    /// Refinement iteration cap.
    pub iter_cap: usize,
    /// Seed for auxiliary randomized cross-checks; the searches themselves
    /// are deterministic.
    pub seed: u64,
}

impl Default for SearchOpts {
    fn default() -> Self {
        Self {
            grid_points: 1024,
            frame_grid: 20,
            refine_tol: 1e-6,
            iter_cap: 500,
            seed: 0,
        }
    }
}

/// A pair of Bloch directions representing two mutually unbiased qubit
/// bases (orthogonal directions).
#[derive(Debug, Clone, Copy)]
pub struct MubPair {
    u: Vec3,
    v: Vec3,
}

impl MubPair {
    pub fn new(u: Vec3, v: Vec3) -> Result<Self> {
        for w in [&u, &v] {
            if (w.norm() - 1.0).abs() > MUB_ORTHO_TOL {
                return Err(Error::Domain("pair directions must be unit vectors".into()));
            }
        }
        if u.dot(&v).abs() > MUB_ORTHO_TOL {
            return Err(Error::Domain("pair directions must be orthogonal".into()));
        }
        Ok(Self { u, v })
    }

    pub fn directions(&self) -> (Vec3, Vec3) {
        (self.u, self.v)
    }
}

/// A triad of Bloch directions representing three mutually unbiased qubit
/// bases (an orthonormal frame).
#[derive(Debug, Clone, Copy)]
pub struct MubTriad {
    axes: [Vec3; 3],
}

impl MubTriad {
    pub fn new(axes: [Vec3; 3]) -> Result<Self> {
        for i in 0..3 {
            if (axes[i].norm() - 1.0).abs() > MUB_ORTHO_TOL {
                return Err(Error::Domain("triad axes must be unit vectors".into()));
            }
            for j in (i + 1)..3 {
                if axes[i].dot(&axes[j]).abs() > MUB_ORTHO_TOL {
                    return Err(Error::Domain(
                        "triad axes must be pairwise orthogonal".into(),
                    ));
                }
            }
        }
        Ok(Self { axes })
    }

    pub fn axes(&self) -> [Vec3; 3] {
        self.axes
    }
}

/// Argmax witness attached to a measure value.
#[derive(Debug, Clone, Copy)]
pub enum Witness {
    Direction(Vec3),
    Pair(MubPair),
    Triad(MubTriad),
    /// The objective was flat (uncorrelated state); no witness.
    Degenerate,
}

/// Measure value with its optimizing witness and optimizer diagnostics.
#[derive(Debug, Clone)]
pub struct MeasureResult {
    pub value: Bits,
    pub witness: Witness,
    pub iterations: usize,
    pub converged: bool,
}

/// States with no correlations at all make every search objective flat;
/// they are short-circuited to zero.
fn degenerate(state: &FanoState) -> bool {
    state.e.norm() + state.a.norm().min(state.b.norm()) < 1e-12
}

fn degenerate_result() -> MeasureResult {
    MeasureResult {
        value: Bits(0.0),
        witness: Witness::Degenerate,
        iterations: 0,
        converged: true,
    }
}

/// C1: the maximum Holevo quantity over all of Alice's projective bases.
pub fn c1(state: &FanoState, opts: &SearchOpts) -> MeasureResult {
    if degenerate(state) {
        return degenerate_result();
    }
    let out = max_over_directions(
        |alpha| holevo_chi(state, alpha).value(),
        opts.grid_points.max(1000),
        opts.refine_tol,
        opts.iter_cap,
    );
    MeasureResult {
        value: Bits(out.value),
        witness: Witness::Direction(out.argmax),
        iterations: out.iterations,
        converged: out.converged,
    }
}

/// C2: max over mutually unbiased pairs of the smaller of the two Holevo
/// quantities. Pairs are realized as the first two axes of a rotated frame.
pub fn c2(state: &FanoState, opts: &SearchOpts) -> MeasureResult {
    if degenerate(state) {
        return degenerate_result();
    }
    let objective = |fr: &Frame| {
        holevo_chi(state, &fr[0])
            .value()
            .min(holevo_chi(state, &fr[1]).value())
    };
    let out = max_over_frames(
        objective,
        opts.frame_grid.max(20),
        opts.refine_tol,
        opts.iter_cap,
    );
    let pair = MubPair::new(out.argmax[0], out.argmax[1]).expect("rotation columns");
    MeasureResult {
        value: Bits(out.value),
        witness: Witness::Pair(pair),
        iterations: out.iterations,
        converged: out.converged,
    }
}

/// C3: max over mutually unbiased triads of the smallest of the three
/// Holevo quantities.
pub fn c3(state: &FanoState, opts: &SearchOpts) -> MeasureResult {
    if degenerate(state) {
        return degenerate_result();
    }
    let objective = |fr: &Frame| {
        fr.iter()
            .map(|u| holevo_chi(state, u).value())
            .fold(f64::INFINITY, f64::min)
    };
    let out = max_over_frames(
        objective,
        opts.frame_grid.max(20),
        opts.refine_tol,
        opts.iter_cap,
    );
    let triad = MubTriad::new(out.argmax).expect("rotation columns");
    MeasureResult {
        value: Bits(out.value),
        witness: Witness::Triad(triad),
        iterations: out.iterations,
        converged: out.converged,
    }
}

/// Closed form of C3 for Bell-diagonal states:
/// `1 - h((1 + sqrt((e1^2 + e2^2 + e3^2)/3)) / 2)`.
pub fn c3_bell_closed(state: &BellDiagonalState) -> Result<Bits> {
    if !tetrahedron_check(state) {
        return Err(Error::Domain(format!(
            "unphysical Bell-diagonal state {state:?}"
        )));
    }
    let e = state.correlations();
    Ok(Bits(
        1.0 - h2((1.0 + (e.norm_squared() / 3.0).sqrt()) / 2.0),
    ))
}

/// Quadratic discord of a Bell-diagonal state: with the correlation
/// magnitudes sorted as |E1| >= |E2| >= |E3|, returns
/// `sqrt((E2^2 + E3^2)/2)`. Vanishes exactly on the single-axis family.
pub fn discord_quadratic(state: &BellDiagonalState) -> f64 {
    let m = state.sorted_magnitudes();
    ((m[1] * m[1] + m[2] * m[2]) / 2.0).sqrt()
}

/// Entropic discord with measurement on Alice: mutual information minus
/// the best classical correlation, which equals `I - C1` because the
/// outcome-averaged Bob state is his marginal.
pub fn discord_entropic(state: &FanoState, opts: &SearchOpts) -> Result<MeasureResult> {
    let info = mutual_information(state)?;
    let classical = c1(state, opts);
    Ok(MeasureResult {
        value: Bits((info - classical.value.value()).clamp(0.0, 1.0)),
        witness: classical.witness,
        iterations: classical.iterations,
        converged: classical.converged,
    })
}

/// Closed form of the entropic discord for Bell-diagonal states:
/// `1 - S(rho) + h((1+c)/2)` with `c` the largest correlation magnitude.
pub fn discord_entropic_bell(state: &BellDiagonalState) -> Result<f64> {
    if !tetrahedron_check(state) {
        return Err(Error::Domain(format!(
            "unphysical Bell-diagonal state {state:?}"
        )));
    }
    let joint = crate::entropy::entropy_of_probs(&state.bell_weights());
    let c = state.sorted_magnitudes()[0];
    Ok((1.0 - joint + h2((1.0 + c) / 2.0)).clamp(0.0, 1.0))
}
