//! One full protocol instance: prepared state, payoff against the target,
//! the optimal measurement, and an event-level Monte Carlo cross-check.
//!
//! ```bash
//! cargo run -p scmub --example rsp_protocol
//! ```

use std::f64::consts::FRAC_PI_4;

use scmub::{
    mc_simulate, payoff, pq_max, prepared_bloch, AliceMeasurement, BellDiagonalState, GreatCircle,
    SearchOpts, TargetState, Vec3,
};

fn main() {
    // resource with a single correlated axis; targets live on the circle
    // perpendicular to z
    let state = BellDiagonalState::new(0.8, 0.0, 0.0);
    let fano = state.to_fano();
    let circle = GreatCircle::new(Vec3::z()).unwrap();
    let target = TargetState::new(FRAC_PI_4, 0.0); // Bloch +x

    println!(
        "resource ({}, {}, {}), circle normal z, target +x\n",
        state.e1, state.e2, state.e3
    );

    // hand-picked measurement along x
    let alpha = AliceMeasurement::new(Vec3::x()).unwrap();
    let prepared = prepared_bloch(&fano, &alpha, &circle);
    let (pq, pl) = payoff(&target, &prepared);
    println!(
        "alpha = x: prepared = ({:+.3}, {:+.3}, {:+.3}), pq = {pq:.4}, pl = {pl:.4}",
        prepared.bloch.x, prepared.bloch.y, prepared.bloch.z
    );

    // the optimizer confirms x is already optimal: pq_max = 0.8^2
    let best = pq_max(&fano, &target, &circle, &SearchOpts::default()).unwrap();
    println!(
        "optimal: pq_max = {:.6}, linear payoff {:.6}, alpha = ({:+.4}, {:+.4}, {:+.4})",
        best.pq, best.pl, best.argmax_alpha.x, best.argmax_alpha.y, best.argmax_alpha.z
    );

    // event-level simulation at the optimal measurement: the empirical
    // mean lands on the ensemble average within a few standard errors
    let alpha = AliceMeasurement::new(best.argmax_alpha).unwrap();
    let exact = prepared_bloch(&fano, &alpha, &circle).bloch;
    for n in [1_000usize, 10_000, 100_000] {
        let mc = mc_simulate(&fano, &alpha, &circle, &target, n, 42);
        println!(
            "n = {n:>6}: mean = ({:+.4}, {:+.4}, {:+.4}), SE = ({:.1e}, {:.1e}, {:.1e}), pq = {:.4}",
            mc.mean.x, mc.mean.y, mc.mean.z, mc.std_error.x, mc.std_error.y, mc.std_error.z, mc.pq
        );
    }
    println!(
        "exact ensemble average: ({:+.4}, {:+.4}, {:+.4})",
        exact.x, exact.y, exact.z
    );

    // a target off the agreed circle is rejected
    let off = TargetState::new(0.0, 0.0); // Bloch +z
    match pq_max(&fano, &off, &circle, &SearchOpts::default()) {
        Err(e) => println!("\noff-circle target rejected: {e}"),
        Ok(_) => unreachable!(),
    }
}
