//! Two-qubit states in Fano form and as explicit density matrices.
//!
//! A two-qubit state is parameterized by the local Bloch vectors `a`
//! (Alice) and `b` (Bob) together with the 3x3 correlation matrix `E`,
//! with `E[(j,k)] = <sigma_j (x) sigma_k>`. Conventions fixed throughout
//! the crate: sigma_1 = x, sigma_2 = y, sigma_3 = z; computational basis
//! ordered |00>, |01>, |10>, |11>; the first tensor factor is Alice.

use nalgebra::{Complex, Matrix2, SymmetricEigen};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

pub type Vec3 = nalgebra::Vector3<f64>;
pub type Mat3 = nalgebra::Matrix3<f64>;
/// 4x4 complex density matrix in the computational basis.
pub type Density4 = nalgebra::Matrix4<Complex<f64>>;

/// Default tolerance for positive-semidefiniteness checks.
pub const PSD_TOL: f64 = 1e-9;
/// Measurement branches below this probability are flagged as degenerate.
pub const ZERO_PROB_TOL: f64 = 1e-12;

fn c(re: f64, im: f64) -> Complex<f64> {
    Complex::new(re, im)
}

/// The three Pauli matrices in the fixed x, y, z order.
pub fn pauli_matrices() -> [Matrix2<Complex<f64>>; 3] {
    [
        Matrix2::new(c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)),
        Matrix2::new(c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)),
        Matrix2::new(c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)),
    ]
}

/// Measurement outcome of a two-outcome projective measurement.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Plus,
    Minus,
}

impl Outcome {
    pub const BOTH: [Outcome; 2] = [Outcome::Plus, Outcome::Minus];

    pub fn sign(self) -> f64 {
        match self {
            Outcome::Plus => 1.0,
            Outcome::Minus => -1.0,
        }
    }
}

/// Single-qubit state given by its Bloch vector (|bloch| <= 1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitState {
    pub bloch: Vec3,
}

/// One branch of a local two-outcome measurement: outcome probability and
/// Bob's post-measurement state.
#[derive(Debug, Clone, Copy)]
pub struct ConditionalOutcome {
    pub probability: f64,
    pub bob_state: QubitState,
    /// Set when the branch probability is below [`ZERO_PROB_TOL`]; the Bloch
    /// vector is reported as zero in that case.
    pub zero_probability: bool,
}

/// Signed physicality report: `physical` holds iff the smallest eigenvalue
/// of the reconstructed density matrix is >= -tol.
#[derive(Debug, Clone, Copy)]
pub struct Physicality {
    pub physical: bool,
    pub min_eigenvalue: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Separability {
    Separable,
    Entangled,
}

/// Peres-Horodecki classification with the smallest partial-transpose
/// eigenvalue as witness. Exact for two qubits.
#[derive(Debug, Clone, Copy)]
pub struct PptReport {
    pub classification: Separability,
    pub witness_eigenvalue: f64,
}

/// General two-qubit state in Fano form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FanoState {
    /// Alice's marginal Bloch vector.
    pub a: Vec3,
    /// Bob's marginal Bloch vector.
    pub b: Vec3,
    /// Correlation matrix, `e[(j,k)] = <sigma_j (x) sigma_k>`.
    pub e: Mat3,
}

impl FanoState {
    pub fn new(a: Vec3, b: Vec3, e: Mat3) -> Self {
        Self { a, b, e }
    }

    /// Product state `rho_A (x) rho_B`; its correlation matrix is `a b^T`.
    pub fn product(a: Vec3, b: Vec3) -> Self {
        Self {
            a,
            b,
            e: a * b.transpose(),
        }
    }

    /// Expand into the explicit 4x4 density matrix.
    pub fn to_density(&self) -> Density4 {
        let id2 = Matrix2::identity();
        let sigma = pauli_matrices();
        let mut rho: Density4 = id2.kronecker(&id2);
        for i in 0..3 {
            rho += sigma[i].kronecker(&id2).map(|z| z * c(self.a[i], 0.0));
            rho += id2.kronecker(&sigma[i]).map(|z| z * c(self.b[i], 0.0));
            for j in 0..3 {
                rho += sigma[i]
                    .kronecker(&sigma[j])
                    .map(|z| z * c(self.e[(i, j)], 0.0));
            }
        }
        rho.map(|z| z * c(0.25, 0.0))
    }

    /// Recover the Fano parameterization of a density matrix by Pauli traces.
    /// Rejects inputs that are not Hermitian with unit trace.
    pub fn from_density(rho: &Density4) -> Result<Self> {
        let tol = 1e-9;
        let herm_defect = (rho - rho.adjoint())
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        if herm_defect > tol {
            return Err(Error::Domain(format!(
                "density matrix is not Hermitian (defect {herm_defect:.3e})"
            )));
        }
        let trace = rho.trace();
        if (trace.re - 1.0).abs() > tol || trace.im.abs() > tol {
            return Err(Error::Domain(format!(
                "density matrix trace is {trace}, expected 1"
            )));
        }
        let id2 = Matrix2::identity();
        let sigma = pauli_matrices();
        let mut a = Vec3::zeros();
        let mut b = Vec3::zeros();
        let mut e = Mat3::zeros();
        for i in 0..3 {
            a[i] = (rho * sigma[i].kronecker(&id2)).trace().re;
            b[i] = (rho * id2.kronecker(&sigma[i])).trace().re;
            for j in 0..3 {
                e[(i, j)] = (rho * sigma[i].kronecker(&sigma[j])).trace().re;
            }
        }
        Ok(Self { a, b, e })
    }

    /// Bell-diagonal view of this state, if `a`, `b` and the off-diagonal
    /// correlations all vanish within `tol`.
    pub fn as_bell_diagonal(&self, tol: f64) -> Option<BellDiagonalState> {
        let mut off = 0.0f64;
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    off = off.max(self.e[(i, j)].abs());
                }
            }
        }
        if self.a.norm() <= tol && self.b.norm() <= tol && off <= tol {
            Some(BellDiagonalState::new(
                self.e[(0, 0)],
                self.e[(1, 1)],
                self.e[(2, 2)],
            ))
        } else {
            None
        }
    }
}

/// Bell-diagonal state: maximally mixed marginals and diagonal correlation
/// matrix. Entries are stored unordered; operations that need the
/// magnitude-sorted convention sort locally.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BellDiagonalState {
    pub e1: f64,
    pub e2: f64,
    pub e3: f64,
}

impl BellDiagonalState {
    pub fn new(e1: f64, e2: f64, e3: f64) -> Self {
        Self { e1, e2, e3 }
    }

    pub fn correlations(&self) -> Vec3 {
        Vec3::new(self.e1, self.e2, self.e3)
    }

    pub fn to_fano(&self) -> FanoState {
        FanoState::new(
            Vec3::zeros(),
            Vec3::zeros(),
            Mat3::from_diagonal(&self.correlations()),
        )
    }

    /// The four linear margins whose nonnegativity is equivalent to
    /// positivity of the state.
    pub fn tetrahedron_margins(&self) -> [f64; 4] {
        let (e1, e2, e3) = (self.e1, self.e2, self.e3);
        [
            1.0 - e1 - e2 - e3,
            1.0 - e1 + e2 + e3,
            1.0 + e1 - e2 + e3,
            1.0 + e1 + e2 - e3,
        ]
    }

    /// Weights in the Bell basis, ordered [phi+, phi-, psi+, psi-].
    pub fn bell_weights(&self) -> [f64; 4] {
        let (e1, e2, e3) = (self.e1, self.e2, self.e3);
        [
            (1.0 + e1 - e2 + e3) / 4.0,
            (1.0 - e1 + e2 + e3) / 4.0,
            (1.0 + e1 + e2 - e3) / 4.0,
            (1.0 - e1 - e2 - e3) / 4.0,
        ]
    }

    /// Correlation magnitudes sorted in descending order.
    pub fn sorted_magnitudes(&self) -> [f64; 3] {
        let mut m = [self.e1.abs(), self.e2.abs(), self.e3.abs()];
        m.sort_by(|x, y| y.partial_cmp(x).unwrap());
        m
    }

    /// Uniform rejection sampling of physical correlation triples from
    /// [-1,1]^3. Roughly one in three proposals is accepted.
    pub fn random(rng: &mut impl Rng) -> Self {
        loop {
            let s = Self::new(
                rng.gen_range(-1.0..=1.0),
                rng.gen_range(-1.0..=1.0),
                rng.gen_range(-1.0..=1.0),
            );
            if tetrahedron_check(&s) {
                return s;
            }
        }
    }

    /// Deterministic sampling: the same seed always yields the same triple.
    pub fn random_seeded(seed: u64) -> Self {
        Self::random(&mut ChaCha8Rng::seed_from_u64(seed))
    }
}

/// True iff all four tetrahedron margins are >= -[`PSD_TOL`]. Agrees with
/// [`is_physical`] on the embedded Fano state.
pub fn tetrahedron_check(state: &BellDiagonalState) -> bool {
    state.tetrahedron_margins().iter().all(|m| *m >= -PSD_TOL)
}

/// Eigenvalues of a Hermitian 4x4 matrix, ascending. The matrix is
/// symmetrized first so that rounding noise in the input cannot break the
/// Hermitian solver.
pub fn hermitian_eigenvalues(m: &Density4) -> Result<[f64; 4]> {
    let h = (m + m.adjoint()).map(|z| z * c(0.5, 0.0));
    let eig = SymmetricEigen::try_new(h, 1e-12, 0).ok_or(Error::SpectralFailure)?;
    let mut vals = [0.0f64; 4];
    for (i, v) in eig.eigenvalues.iter().enumerate() {
        vals[i] = *v;
    }
    vals.sort_by(|x, y| x.partial_cmp(y).unwrap());
    Ok(vals)
}

/// Physicality of a Fano state from the spectrum of its density matrix.
pub fn is_physical(state: &FanoState, tol: f64) -> Physicality {
    let vals = hermitian_eigenvalues(&state.to_density())
        .expect("4x4 Hermitian eigenvalue iteration converges");
    Physicality {
        physical: vals[0] >= -tol,
        min_eigenvalue: vals[0],
    }
}

/// Outcome probability and Bob's conditional state when Alice measures the
/// projector pair along the unit direction `alpha`.
///
/// The probability is `(1 + s a.alpha)/2` and the conditional Bloch vector
/// `(b + s E^T alpha)/(1 + s a.alpha)` with `s` the outcome sign. A branch
/// with vanishing probability is flagged and carries a zero Bloch vector.
pub fn conditional_bob_state(
    state: &FanoState,
    alpha: &Vec3,
    outcome: Outcome,
) -> ConditionalOutcome {
    debug_assert!(
        (alpha.norm() - 1.0).abs() < 1e-9,
        "alpha must be a unit vector"
    );
    let s = outcome.sign();
    let p = 0.5 * (1.0 + s * state.a.dot(alpha));
    if p < ZERO_PROB_TOL {
        return ConditionalOutcome {
            probability: p.max(0.0),
            bob_state: QubitState {
                bloch: Vec3::zeros(),
            },
            zero_probability: true,
        };
    }
    let bloch = (state.b + s * state.e.transpose() * alpha) / (2.0 * p);
    ConditionalOutcome {
        probability: p.min(1.0),
        bob_state: QubitState { bloch },
        zero_probability: false,
    }
}

/// Partial transpose with respect to Bob's qubit.
pub fn partial_transpose_bob(rho: &Density4) -> Density4 {
    let mut out = *rho;
    for ai in 0..2usize {
        for aj in 0..2usize {
            let (r, s) = (2 * ai, 2 * aj);
            out[(r, s + 1)] = rho[(r + 1, s)];
            out[(r + 1, s)] = rho[(r, s + 1)];
        }
    }
    out
}

/// Peres-Horodecki test: entangled iff the partial transpose has an
/// eigenvalue below -[`PSD_TOL`].
pub fn ppt_check(state: &FanoState) -> PptReport {
    let pt = partial_transpose_bob(&state.to_density());
    let vals = hermitian_eigenvalues(&pt).expect("4x4 Hermitian eigenvalue iteration converges");
    let classification = if vals[0] < -PSD_TOL {
        Separability::Entangled
    } else {
        Separability::Separable
    };
    PptReport {
        classification,
        witness_eigenvalue: vals[0],
    }
}

/// Parsed form of the textual state grammar, `bell:E1,E2,E3` or
/// `fano:ax,ay,az;bx,by,bz;E11,E12,...,E33` (E row-major).
#[derive(Debug, Clone, Copy)]
pub enum StateSpec {
    Bell(BellDiagonalState),
    Fano(FanoState),
}

impl StateSpec {
    pub fn fano(&self) -> FanoState {
        match self {
            StateSpec::Bell(bd) => bd.to_fano(),
            StateSpec::Fano(f) => *f,
        }
    }

    pub fn bell(&self) -> Option<BellDiagonalState> {
        match self {
            StateSpec::Bell(bd) => Some(*bd),
            StateSpec::Fano(f) => f.as_bell_diagonal(1e-12),
        }
    }
}

fn parse_reals(text: &str, expected: usize, what: &str) -> Result<Vec<f64>> {
    let vals: Vec<f64> = text
        .split(',')
        .map(|t| t.trim().parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| Error::Parse(format!("bad real in {what}: {e}")))?;
    if vals.len() != expected {
        return Err(Error::Parse(format!(
            "{what} needs {expected} comma-separated reals, got {}",
            vals.len()
        )));
    }
    if let Some(v) = vals.iter().find(|v| !v.is_finite()) {
        return Err(Error::Parse(format!("non-finite entry {v} in {what}")));
    }
    Ok(vals)
}

impl std::str::FromStr for StateSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("bell:") {
            let v = parse_reals(rest, 3, "bell spec")?;
            Ok(StateSpec::Bell(BellDiagonalState::new(v[0], v[1], v[2])))
        } else if let Some(rest) = s.strip_prefix("fano:") {
            let parts: Vec<&str> = rest.split(';').collect();
            if parts.len() != 3 {
                return Err(Error::Parse(
                    "fano spec needs three ';'-separated groups: a; b; E".into(),
                ));
            }
            let a = parse_reals(parts[0], 3, "fano a")?;
            let b = parse_reals(parts[1], 3, "fano b")?;
            let e = parse_reals(parts[2], 9, "fano E")?;
            Ok(StateSpec::Fano(FanoState::new(
                Vec3::new(a[0], a[1], a[2]),
                Vec3::new(b[0], b[1], b[2]),
                Mat3::from_row_slice(&e),
            )))
        } else {
            Err(Error::Parse(format!(
                "state spec must start with 'bell:' or 'fano:', got '{s}'"
            )))
        }
    }
}
