//! Two-qubit remote state preparation and simultaneous correlations in
//! mutually unbiased bases.
//!
//! The crate models two-qubit states in Fano form (local Bloch vectors
//! plus a 3x3 correlation matrix), runs the one-bit remote-state-
//! preparation protocol on them, and quantifies how useful a state is as
//! a resource: through the circle- and sphere-averaged optimal payoffs,
//! through two discord variants, and through the correlation measures
//! C1, C2, C3 obtained by maximizing the Holevo quantity over single
//! bases, mutually unbiased pairs and triads.
//!
//! Every closed form ships with an independent numerical route (grid
//! optimization, circle quadrature or Monte Carlo), and [`verify`]
//! bundles the cross-checks into a runnable oracle suite.
//!
//! The `examples/` directory walks through each capability; the `scmub`
//! binary exposes the same functionality as `measures`, `rsp`, `scan`
//! and `verify` subcommands.
//!
//! Conventions, fixed everywhere: Pauli order x, y, z; basis order
//! |00>, |01>, |10>, |11> with Alice first; entropies in bits.

pub mod cli;
pub mod entropy;
pub mod error;
pub mod measures;
pub mod optim;
pub mod quadrature;
pub mod rsp;
pub mod state;
pub mod verify;

pub use entropy::{binary_entropy, holevo_chi, mutual_information, von_neumann_qubit, Bits};
pub use error::{Error, Result};
pub use measures::{
    c1, c2, c3, c3_bell_closed, discord_entropic, discord_entropic_bell, discord_quadratic,
    MeasureResult, MubPair, MubTriad, SearchOpts, Witness,
};
pub use rsp::{
    c3_from_g, g_closed, g_quadrature, mc_simulate, min_over_beta, payoff, pq_av_closed,
    pq_av_quadrature, pq_max, prepared_bloch, rho_c, rho_g, AliceMeasurement, GreatCircle,
    McReport, PayoffReport, PreparedState, TargetState,
};
pub use state::{
    conditional_bob_state, is_physical, ppt_check, tetrahedron_check, BellDiagonalState, Density4,
    FanoState, Mat3, Outcome, QubitState, Separability, StateSpec, Vec3,
};
pub use verify::{full_suite, CheckReport, Level, SuiteReport};
