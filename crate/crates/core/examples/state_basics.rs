//! Building two-qubit states, checking physicality, conditioning on a
//! local measurement, and classifying separability.
//!
//! ```bash
//! cargo run -p scmub --example state_basics
//! ```

use scmub::{
    conditional_bob_state, is_physical, ppt_check, tetrahedron_check, BellDiagonalState, FanoState,
    Outcome, StateSpec, Vec3,
};

fn main() {
    // states parse from the same grammar the CLI accepts
    let singlet: StateSpec = "bell:-1,-1,-1".parse().unwrap();
    let report = is_physical(&singlet.fano(), 1e-9);
    println!(
        "singlet: physical = {}, min eigenvalue = {:.3e}",
        report.physical, report.min_eigenvalue
    );

    // the all-ones triple lies outside the tetrahedron of physical states
    let outside = BellDiagonalState::new(1.0, 1.0, 1.0);
    let report = is_physical(&outside.to_fano(), 1e-9);
    println!(
        "(1,1,1): tetrahedron check = {}, min eigenvalue = {:.3}",
        tetrahedron_check(&outside),
        report.min_eigenvalue
    );

    // conditioning the singlet on a z measurement flips Bob to the
    // opposite pole with probability 1/2
    for outcome in Outcome::BOTH {
        let branch = conditional_bob_state(&singlet.fano(), &Vec3::z(), outcome);
        println!(
            "singlet | z, {outcome:?}: p = {:.3}, Bob Bloch = ({:+.2}, {:+.2}, {:+.2})",
            branch.probability,
            branch.bob_state.bloch.x,
            branch.bob_state.bloch.y,
            branch.bob_state.bloch.z
        );
    }

    // a product state is never changed by conditioning
    let product = FanoState::product(Vec3::new(0.0, 0.0, 0.8), Vec3::new(0.3, 0.0, 0.1));
    let branch = conditional_bob_state(&product, &Vec3::x(), Outcome::Plus);
    println!(
        "product | x, Plus: Bob Bloch = ({:.2}, {:.2}, {:.2}) (the marginal itself)",
        branch.bob_state.bloch.x, branch.bob_state.bloch.y, branch.bob_state.bloch.z
    );

    // partial-transpose classification of the two singlet-plus-noise
    // families at p = 0.2: one stays entangled, the other does not
    for (name, state) in [
        ("rho_c(0.2)", scmub::rho_c(0.2).unwrap()),
        ("rho_g(0.2)", scmub::rho_g(0.2).unwrap()),
    ] {
        let ppt = ppt_check(&state.to_fano());
        println!(
            "{name}: {:?}, witness eigenvalue {:+.4}",
            ppt.classification, ppt.witness_eigenvalue
        );
    }

    // seeded sampling of physical correlation triples
    let sample = BellDiagonalState::random_seeded(7);
    println!(
        "seeded sample: ({:+.4}, {:+.4}, {:+.4}), physical = {}",
        sample.e1,
        sample.e2,
        sample.e3,
        tetrahedron_check(&sample)
    );
}
