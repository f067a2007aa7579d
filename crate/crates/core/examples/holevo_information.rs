//! The Holevo quantity of a local measurement: how much Bob can learn
//! about Alice's outcome, as a function of her measurement direction.
//!
//! ```bash
//! cargo run -p scmub --example holevo_information
//! ```

use scmub::{binary_entropy, holevo_chi, rho_c, Vec3};

fn main() {
    let state = rho_c(0.3).unwrap();
    let fano = state.to_fano();
    println!(
        "state rho_c(0.3), correlations ({:+.1}, {:+.1}, {:+.1})\n",
        state.e1, state.e2, state.e3
    );

    println!("{:>24}  {:>10}  {:>10}", "alpha", "chi [bits]", "closed");
    for (label, alpha) in [
        ("x", Vec3::x()),
        ("y", Vec3::y()),
        ("z", Vec3::z()),
        ("(x+z)/sqrt2", Vec3::new(1.0, 0.0, 1.0).normalize()),
        ("(x+y+z)/sqrt3", Vec3::new(1.0, 1.0, 1.0).normalize()),
    ] {
        let chi = holevo_chi(&fano, &alpha);
        // Bell-diagonal closed form: 1 - h((1 + |E alpha|)/2)
        let e_alpha = Vec3::new(state.e1 * alpha.x, state.e2 * alpha.y, state.e3 * alpha.z);
        let closed = 1.0
            - binary_entropy((1.0 + e_alpha.norm()) / 2.0)
                .unwrap()
                .value();
        println!("{label:>24}  {:>10.6}  {closed:>10.6}", chi.value());
    }

    // relabeling the outcomes (alpha -> -alpha) changes nothing
    let alpha = Vec3::new(0.3, -0.5, 0.2).normalize();
    println!(
        "\nsymmetry: chi(+alpha) = {:.12}, chi(-alpha) = {:.12}",
        holevo_chi(&fano, &alpha).value(),
        holevo_chi(&fano, &(-alpha)).value()
    );

    // strongest direction for this family is the z axis, where the
    // correlation is perfect and one full bit comes through
    println!(
        "chi(z) = {} bit: the z correlation of rho_c is exact",
        holevo_chi(&fano, &Vec3::z()).value()
    );
}
