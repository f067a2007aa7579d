//! Averaged efficiencies: circle averages (closed form vs direct
//! quadrature and their exact factor of two), the worst circle and its
//! link to the quadratic discord, and the all-circle average G with its
//! monotone relation to C3.
//!
//! ```bash
//! cargo run -p scmub --example efficiency_g
//! ```

use scmub::{
    c3_bell_closed, c3_from_g, discord_quadratic, g_closed, g_quadrature, min_over_beta,
    pq_av_closed, pq_av_quadrature, BellDiagonalState, GreatCircle, SearchOpts, Vec3,
};

fn main() {
    let state = BellDiagonalState::new(0.7, -0.5, 0.3);
    let opts = SearchOpts::default();

    // circle averages for a few plane normals: the printed closed form is
    // exactly twice the direct average over targets
    println!("circle averages for state (0.7, -0.5, 0.3):");
    println!("{:>14}  {:>12}  {:>14}", "beta", "closed", "direct average");
    for (label, beta) in [
        ("x", Vec3::x()),
        ("y", Vec3::y()),
        ("z", Vec3::z()),
        ("(1,1,1)/sqrt3", Vec3::new(1.0, 1.0, 1.0).normalize()),
    ] {
        let circle = GreatCircle::new(beta).unwrap();
        let closed = pq_av_closed(&state, &circle);
        let direct = pq_av_quadrature(&state, &circle, 4096);
        println!("{label:>14}  {closed:>12.8}  {direct:>14.8}");
    }

    // the worst circle sits perpendicular to the strongest axis and its
    // value is twice the squared quadratic discord
    let (worst, beta) = min_over_beta(&state, &opts);
    let d = discord_quadratic(&state);
    println!(
        "\nworst circle: value {worst:.8} at beta = ({:+.3}, {:+.3}, {:+.3}); 2 D^2 = {:.8}",
        beta.x,
        beta.y,
        beta.z,
        2.0 * d * d
    );

    // averaging over every circle gives G, in closed form and by
    // hemisphere quadrature
    println!("\nG closed = {:.10}", g_closed(&state));
    println!("G quadrature (64x64) = {:.10}", g_quadrature(&state, 64));

    // C3 is a monotone function of G, so ordering by G orders by C3
    println!(
        "\n{:>22}  {:>10}  {:>10}  {:>10}",
        "state", "G", "C3(G)", "C3 closed"
    );
    for bd in [
        BellDiagonalState::new(0.3, 0.0, 0.0),
        BellDiagonalState::new(0.5, -0.4, 0.2),
        BellDiagonalState::new(0.7, -0.5, 0.3),
        BellDiagonalState::new(-1.0, -1.0, -1.0),
    ] {
        let g = g_closed(&bd);
        println!(
            "({:+.1}, {:+.1}, {:+.1})      {g:>10.6}  {:>10.6}  {:>10.6}",
            bd.e1,
            bd.e2,
            bd.e3,
            c3_from_g(g).unwrap().value(),
            c3_bell_closed(&bd).unwrap().value()
        );
    }
}
