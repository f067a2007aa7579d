//! A state with zero quadratic discord that still prepares targets well:
//! the single-axis family (e1, 0, 0). Its payoff is perfect along the
//! correlated axis even though one circle is completely dead.
//!
//! ```bash
//! cargo run -p scmub --example zero_discord
//! ```

use std::f64::consts::FRAC_PI_4;

use scmub::{
    c3_bell_closed, discord_entropic, discord_quadratic, g_closed, pq_av_closed, pq_max,
    BellDiagonalState, GreatCircle, SearchOpts, TargetState, Vec3,
};

fn main() {
    let opts = SearchOpts::default();
    let state = BellDiagonalState::new(0.8, 0.0, 0.0);
    let fano = state.to_fano();

    println!("state (0.8, 0, 0):");
    println!("  quadratic discord = {}", discord_quadratic(&state));
    println!(
        "  entropic discord  = {:.2e}",
        discord_entropic(&fano, &opts).unwrap().value.value()
    );
    println!(
        "  C3 = {:.6} (nonzero!)",
        c3_bell_closed(&state).unwrap().value()
    );
    println!("  G  = {:.6}", g_closed(&state));

    // on the circle perpendicular to z the state reaches payoff 0.64 for
    // the x target
    let circle = GreatCircle::new(Vec3::z()).unwrap();
    let target = TargetState::new(FRAC_PI_4, 0.0);
    let report = pq_max(&fano, &target, &circle, &opts).unwrap();
    println!("\ncircle normal z, target +x: pq_max = {:.6}", report.pq);

    // payoff decays as the target rotates away from the correlated axis
    println!("\n{:>10}  {:>10}", "angle", "pq_max");
    for k in 0..=4 {
        let angle = k as f64 * std::f64::consts::FRAC_PI_8;
        let target = TargetState::new(FRAC_PI_4, angle);
        let pq = pq_max(&fano, &target, &circle, &opts).unwrap().pq;
        println!("{angle:>10.4}  {pq:>10.6}");
    }

    // the circle perpendicular to the correlated axis is dead: its
    // averaged payoff vanishes identically
    let dead = pq_av_closed(&state, &GreatCircle::new(Vec3::x()).unwrap());
    println!("\naveraged payoff on the circle perpendicular to x: {dead}");
    println!("zero discord kills one circle, not the protocol.");
}
