//! Independent oracle suite: brute-force and quadrature cross-checks for
//! every closed form and ordering claim in the crate, runnable from the
//! library or through the `verify` CLI subcommand.
//!
//! No check calls the code path it validates. Closed forms are compared
//! against grid searches, quadratures against formula values, the Monte
//! Carlo sampler against the exact ensemble average. Checks are
//! independent and run in parallel; reports are ordered by name.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use std::time::Instant;

use crate::entropy::{h2, holevo_chi};
use crate::error::Error;
use crate::measures::{
    c1, c2, c3, c3_bell_closed, discord_entropic, discord_entropic_bell, discord_quadratic,
    SearchOpts,
};
use crate::quadrature::{hemisphere_average, plane_basis};
use crate::rsp::{
    c3_from_g, g_closed, g_quadrature, mc_simulate, min_over_beta, pq_av_closed, pq_av_quadrature,
    pq_max, prepared_bloch, reference_fidelity_g, rho_c, rho_g, AliceMeasurement, GreatCircle,
    TargetState,
};
use crate::state::{
    conditional_bob_state, is_physical, ppt_check, tetrahedron_check, BellDiagonalState, FanoState,
    Mat3, Outcome, Separability, Vec3, PSD_TOL,
};

/// Suite depth. Smoke keeps every check but shrinks sample counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    Smoke,
    Full,
}

impl std::str::FromStr for Level {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "smoke" => Ok(Level::Smoke),
            "full" => Ok(Level::Full),
            other => Err(Error::Parse(format!(
                "unknown level '{other}', expected smoke|full"
            ))),
        }
    }
}

impl std::fmt::Display for Level {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Level::Smoke => write!(f, "smoke"),
            Level::Full => write!(f, "full"),
        }
    }
}

/// One oracle check: `passed` holds iff every observed entry is within
/// `tolerance` of its expected counterpart.
#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub passed: bool,
    pub observed: Vec<f64>,
    pub expected: Vec<f64>,
    pub tolerance: f64,
    pub runtime_s: f64,
    pub note: String,
}

impl CheckReport {
    fn evaluate(
        name: &str,
        observed: Vec<f64>,
        expected: Vec<f64>,
        tolerance: f64,
        note: impl Into<String>,
        start: Instant,
    ) -> Self {
        assert_eq!(observed.len(), expected.len());
        let passed = observed
            .iter()
            .zip(&expected)
            .all(|(o, e)| (o - e).abs() <= tolerance && o.is_finite());
        CheckReport {
            name: name.into(),
            passed,
            observed,
            expected,
            tolerance,
            runtime_s: start.elapsed().as_secs_f64(),
            note: note.into(),
        }
    }
}

/// Full suite outcome with deterministic, name-sorted check order.
#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub level: String,
    pub checks: Vec<CheckReport>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

struct Sizes {
    roundtrip: usize,
    triples: usize,
    proposals: usize,
    acceptance_tol: f64,
    conditional: usize,
    ppt: usize,
    holevo: usize,
    hierarchy: usize,
    c3_states: usize,
    product: usize,
    sign_flip: usize,
    factor: usize,
    min_beta: usize,
    g_quad: usize,
    hemi_form: usize,
    ordering_pairs: usize,
    ordering_targets: usize,
    link: usize,
    mc_runs: usize,
    mc_events: usize,
    mc_required: usize,
    scan_grid: Vec<f64>,
    scan_targets: usize,
}

impl Sizes {
    fn for_level(level: Level) -> Self {
        match level {
            Level::Full => Sizes {
                roundtrip: 100,
                triples: 10_000,
                proposals: 10_000,
                acceptance_tol: 0.02,
                conditional: 200,
                ppt: 10_000,
                holevo: 100,
                hierarchy: 100,
                c3_states: 100,
                product: 20,
                sign_flip: 100,
                factor: 50,
                min_beta: 100,
                g_quad: 50,
                hemi_form: 20,
                ordering_pairs: 20,
                ordering_targets: 100,
                link: 500,
                mc_runs: 100,
                mc_events: 100_000,
                mc_required: 99,
                scan_grid: vec![0.05, 0.10, 0.15, 0.20, 0.25, 0.30],
                scan_targets: 100,
            },
            Level::Smoke => Sizes {
                roundtrip: 25,
                triples: 1_500,
                proposals: 3_000,
                acceptance_tol: 0.04,
                conditional: 60,
                ppt: 1_500,
                holevo: 30,
                hierarchy: 16,
                c3_states: 20,
                product: 6,
                sign_flip: 30,
                factor: 12,
                min_beta: 25,
                g_quad: 12,
                hemi_form: 6,
                ordering_pairs: 5,
                ordering_targets: 25,
                link: 100,
                mc_runs: 15,
                mc_events: 20_000,
                mc_required: 14,
                scan_grid: vec![0.10, 0.20, 0.30],
                scan_targets: 25,
            },
        }
    }
}

fn rng_for(seed: u64, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

fn random_unit(rng: &mut impl Rng) -> Vec3 {
    loop {
        let v = Vec3::new(
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        );
        let n = v.norm();
        if (1e-3..=1.0).contains(&n) {
            return v / n;
        }
    }
}

/// Random physical state with all Fano components exercised: a mixture of
/// a Bell-diagonal state and a pure product state.
fn random_general_state(rng: &mut impl Rng) -> FanoState {
    let bd = BellDiagonalState::random(rng).to_fano();
    let product = FanoState::product(random_unit(rng), random_unit(rng));
    let lam: f64 = rng.gen_range(0.0..1.0);
    FanoState::new(
        lam * bd.a + (1.0 - lam) * product.a,
        lam * bd.b + (1.0 - lam) * product.b,
        lam * bd.e + (1.0 - lam) * product.e,
    )
}

fn in_plane_target(beta: &Vec3, angle: f64) -> TargetState {
    let (u, v) = plane_basis(beta);
    let t = angle.cos() * u + angle.sin() * v;
    TargetState::new(0.5 * t.z.clamp(-1.0, 1.0).acos(), t.y.atan2(t.x))
}

fn check_roundtrip(seed: u64, sz: &Sizes) -> CheckReport {
    let start = Instant::now();
    let mut rng = rng_for(seed, 1);
    let mut worst = 0.0f64;
    for _ in 0..sz.roundtrip {
        let state = random_general_state(&mut rng);
        let back = FanoState::from_density(&state.to_density()).expect("valid density");
        worst = worst
            .max((back.a - state.a).norm())
            .max((back.b - state.b).norm())
            .max((back.e - state.e).norm());
    }
    CheckReport::evaluate(
        "roundtrip_fano_density",
        vec![worst],
        vec![0.0],
        1e-12,
        format!(
            "worst Pauli-trace roundtrip deviation over {} states",
            sz.roundtrip
        ),
        start,
    )
}

fn check_tetrahedron(seed: u64, sz: &Sizes) -> CheckReport {
    let start = Instant::now();
    let mut rng = rng_for(seed, 2);
    let mut disagreements = 0.0;
    for _ in 0..sz.triples {
        let s = BellDiagonalState::new(
            rng.gen_range(-1.0..=1.0),
            rng.gen_range(-1.0..=1.0),
            rng.gen_range(-1.0..=1.0),
        );
        if tetrahedron_check(&s) != is_physical(&s.to_fano(), PSD_TOL).physical {
            disagreements += 1.0;
        }
    }
    CheckReport::evaluate(
        "tetrahedron_vs_spectrum",
        vec![disagreements],
        vec![0.0],
        0.5,
        format!(
            "margin inequalities vs 4x4 spectrum on {} uniform triples",
            sz.triples
        ),
        start,
    )
}

fn check_sampler_acceptance(seed: u64, sz: &Sizes) -> CheckReport {
    let start = Instant::now();
    let mut rng = rng_for(seed, 3);
    let mut accepted = 0usize;
    for _ in 0..sz.proposals {
        let s = BellDiagonalState::new(
            rng.gen_range(-1.0..=1.0),
            rng.gen_range(-1.0..=1.0),
            rng.gen_range(-1.0..=1.0),
        );
        if tetrahedron_check(&s) {
            accepted += 1;
        }
    }
    CheckReport::evaluate(
        "bell_sampler_acceptance",
        vec![accepted as f64 / sz.proposals as f64],
        vec![1.0 / 3.0],
        sz.acceptance_tol,
        format!(
            "tetrahedron volume fraction of the correlation cube, {} proposals",
            sz.proposals
        ),
        start,
    )
}

fn check_conditional(seed: u64, sz: &Sizes) -> CheckReport {
    let start = Instant::now();
    let mut rng = rng_for(seed, 4);
    let mut worst = 0.0f64;
    for _ in 0..sz.conditional {
        let state = random_general_state(&mut rng);
        let alpha = random_unit(&mut rng);
        let plus = conditional_bob_state(&state, &alpha, Outcome::Plus);
        let minus = conditional_bob_state(&state, &alpha, Outcome::Minus);
        worst = worst.max((plus.probability + minus.probability - 1.0).abs());
        let avg =
            plus.probability * plus.bob_state.bloch + minus.probability * minus.bob_state.bloch;
        worst = worst.max((avg - state.b).norm());
    }
    CheckReport::evaluate(
        "conditional_state_consistency",
        vec![worst],
        vec![0.0],
        1e-12,
        "branch probabilities sum to one; probability-weighted Bloch average equals Bob marginal",
        start,
    )
}

fn check_ppt_weights(seed: u64, sz: &Sizes) -> CheckReport {
    let start = Instant::now();
    let mut rng = rng_for(seed, 5);
    let mut disagreements = 0.0;
    for _ in 0..sz.ppt {
        let s = BellDiagonalState::random(&mut rng);
        let max_w = s.bell_weights().iter().cloned().fold(f64::MIN, f64::max);
        let entangled = ppt_check(&s.to_fano()).classification == Separability::Entangled;
        if entangled != (max_w > 0.5 + PSD_TOL) {
            disagreements += 1.0;
        }
    }
    CheckReport::evaluate(
        "ppt_vs_bell_weights",
        vec![disagreements],
        vec![0.0],
        0.5,
        format!(
            "partial-transpose spectrum vs largest Bell weight on {} states",
            sz.ppt
        ),
        start,
    )
}

fn check_holevo_closed(seed: u64, sz: &Sizes) -> CheckReport {
    let start = Instant::now();
    let mut rng = rng_for(seed, 6);
    let mut worst = 0.0f64;
    for _ in 0..sz.holevo {
        let bd = BellDiagonalState::random(&mut rng);
        let alpha = random_unit(&mut rng);
        let eu = Mat3::from_diagonal(&bd.correlations()) * alpha;
        let closed = 1.0 - h2((1.0 + eu.norm()) / 2.0);
        let general = holevo_chi(&bd.to_fano(), &alpha).value();
        worst = worst.max((general - closed).abs());
    }
    CheckReport::evaluate(
        "holevo_general_vs_closed",
        vec![worst],
        vec![0.0],
        1e-10,
        format!(
            "general conditional-state path vs closed expression, {} pairs",
            sz.holevo
        ),
        start,
    )
}

fn check_hierarchy(seed: u64, sz: &Sizes, opts: &SearchOpts) -> CheckReport {
    let start = Instant::now();
    let states: Vec<BellDiagonalState> = {
        let mut rng = rng_for(seed, 7);
        (0..sz.hierarchy)
            .map(|_| BellDiagonalState::random(&mut rng))
            .collect()
    };
    let margins: Vec<(f64, f64)> = states
        .par_iter()
        .map(|bd| {
            let f = bd.to_fano();
            let v1 = c1(&f, opts).value.value();
            let v2 = c2(&f, opts).value.value();
            let v3 = c3(&f, opts).value.value();
            (v3 - v2, v2 - v1)
        })
        .collect();
    let worst32 = margins.iter().map(|m| m.0).fold(f64::MIN, f64::max);
    let worst21 = margins.iter().map(|m| m.1).fold(f64::MIN, f64::max);

    // raw Holevo range on random states and directions, before clamping
    let mut rng = rng_for(seed, 70);
    let mut chi_min = f64::INFINITY;
    let mut chi_max = f64::NEG_INFINITY;
    for _ in 0..200 {
        let state = random_general_state(&mut rng);
        let alpha = random_unit(&mut rng);
        let avg = h2((1.0 + state.b.norm().min(1.0)) / 2.0);
        let mut cond = 0.0;
        for o in Outcome::BOTH {
            let br = conditional_bob_state(&state, &alpha, o);
            if !br.zero_probability {
                cond += br.probability * h2((1.0 + br.bob_state.bloch.norm().min(1.0)) / 2.0);
            }
        }
        let chi = avg - cond;
        chi_min = chi_min.min(chi);
        chi_max = chi_max.max(chi);
    }
    let range_ok = if chi_min >= -1e-12 && chi_max <= 1.0 + 1e-12 {
        0.0
    } else {
        1.0
    };

    CheckReport::evaluate(
        "hierarchy_c1_c2_c3",
        vec![worst32.max(0.0), worst21.max(0.0), range_ok],
        vec![0.0, 0.0, 0.0],
        1e-6,
        format!(
            "C3 <= C2 <= C1 within optimizer slack on {} states; raw chi range [{chi_min:.2e}, {chi_max:.6}]",
            sz.hierarchy
        ),
        start,
    )
}

/// Frame-search C3 against the Bell-diagonal closed form on seeded random
/// states. Reports the worst offender.
pub fn c3_consistency_check(n_states: usize, seed: u64) -> CheckReport {
    let start = Instant::now();
    let opts = SearchOpts::default();
    let states: Vec<BellDiagonalState> = {
        let mut rng = rng_for(seed, 8);
        (0..n_states)
            .map(|_| BellDiagonalState::random(&mut rng))
            .collect()
    };
    let devs: Vec<f64> = states
        .par_iter()
        .map(|bd| {
            let closed = c3_bell_closed(bd)
                .expect("sampled states are physical")
                .value();
            let numeric = c3(&bd.to_fano(), &opts).value.value();
            (numeric - closed).abs()
        })
        .collect();
    let (worst_idx, worst) = devs
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
        .map(|(i, d)| (i, *d))
        .unwrap_or((0, 0.0));
    CheckReport::evaluate(
        "c3_matches_closed_form",
        vec![worst],
        vec![0.0],
        1e-3,
        format!(
            "{n_states} states; worst offender {:?}",
            states.get(worst_idx)
        ),
        start,
    )
}

fn check_c3_product(seed: u64, sz: &Sizes, opts: &SearchOpts) -> CheckReport {
    let start = Instant::now();
    let products: Vec<FanoState> = {
        let mut rng = rng_for(seed, 9);
        (0..sz.product)
            .map(|_| {
                let a = random_unit(&mut rng) * rng.gen_range(0.0..1.0);
                let b = random_unit(&mut rng) * rng.gen_range(0.0..1.0);
                FanoState::product(a, b)
            })
            .collect()
    };
    let worst = products
        .par_iter()
        .map(|s| c3(s, opts).value.value())
        .reduce(|| 0.0, f64::max);
    CheckReport::evaluate(
        "c3_product_states_zero",
        vec![worst],
        vec![0.0],
        1e-6,
        format!("C3 on {} random product states", sz.product),
        start,
    )
}

fn check_sign_flip(seed: u64, sz: &Sizes) -> CheckReport {
    let start = Instant::now();
    let mut rng = rng_for(seed, 10);
    let mut worst = 0.0f64;
    for _ in 0..sz.sign_flip {
        let bd = BellDiagonalState::random(&mut rng);
        for flipped in [
            BellDiagonalState::new(-bd.e1, -bd.e2, bd.e3),
            BellDiagonalState::new(-bd.e1, bd.e2, -bd.e3),
            BellDiagonalState::new(bd.e1, -bd.e2, -bd.e3),
        ] {
            worst = worst
                .max(
                    (c3_bell_closed(&bd).unwrap().value()
                        - c3_bell_closed(&flipped).unwrap().value())
                    .abs(),
                )
                .max((discord_quadratic(&bd) - discord_quadratic(&flipped)).abs())
                .max(
                    (discord_entropic_bell(&bd).unwrap()
                        - discord_entropic_bell(&flipped).unwrap())
                    .abs(),
                )
                .max((g_closed(&bd) - g_closed(&flipped)).abs());
        }
    }
    CheckReport::evaluate(
        "sign_flip_invariance",
        vec![worst],
        vec![0.0],
        1e-12,
        "pairwise sign flips are local unitaries; closed forms depend only on squared entries",
        start,
    )
}

fn check_discord_axis(seed: u64, sz: &Sizes, opts: &SearchOpts) -> CheckReport {
    let _ = seed;
    let start = Instant::now();
    let count = if sz.product >= 20 { 5 } else { 2 };
    let mut worst_d3 = 0.0f64;
    let mut worst_dent = 0.0f64;
    for i in 0..count {
        let e1 = (i as f64 + 1.0) / count as f64;
        for s in [
            BellDiagonalState::new(e1, 0.0, 0.0),
            BellDiagonalState::new(-e1, 0.0, 0.0),
        ] {
            worst_d3 = worst_d3.max(discord_quadratic(&s));
            let dent = discord_entropic(&s.to_fano(), opts)
                .expect("physical")
                .value
                .value();
            worst_dent = worst_dent.max(dent);
        }
    }
    CheckReport::evaluate(
        "discord_axis_family",
        vec![worst_d3, worst_dent],
        vec![0.0, 0.0],
        1e-6,
        "single-axis states carry zero discord in both variants",
        start,
    )
}

fn check_factor_relation(seed: u64, sz: &Sizes) -> CheckReport {
    let start = Instant::now();
    let mut rng = rng_for(seed, 11);
    let mut worst = 0.0f64;
    for _ in 0..sz.factor {
        let bd = BellDiagonalState::random(&mut rng);
        let circle = GreatCircle::new(random_unit(&mut rng)).unwrap();
        let quad = pq_av_quadrature(&bd, &circle, 4096);
        let closed = pq_av_closed(&bd, &circle);
        worst = worst.max((quad - closed / 2.0).abs());
    }
    CheckReport::evaluate(
        "factor_circle_vs_closed",
        vec![worst],
        vec![0.0],
        1e-9,
        format!(
            "direct circle average equals half the closed expression on {} (state, circle) pairs",
            sz.factor
        ),
        start,
    )
}

fn check_min_beta(seed: u64, sz: &Sizes, opts: &SearchOpts) -> CheckReport {
    let start = Instant::now();
    let mut rng = rng_for(seed, 12);
    let mut worst_sum = 0.0f64;
    let mut worst_discord = 0.0f64;
    for _ in 0..sz.min_beta {
        let bd = BellDiagonalState::random(&mut rng);
        let (value, _) = min_over_beta(&bd, opts);
        let m = bd.sorted_magnitudes();
        worst_sum = worst_sum.max((value - (m[1] * m[1] + m[2] * m[2])).abs());
        let d = discord_quadratic(&bd);
        worst_discord = worst_discord.max((value - 2.0 * d * d).abs());
    }
    CheckReport::evaluate(
        "min_beta_vs_discord",
        vec![worst_sum, worst_discord],
        vec![0.0, 0.0],
        1e-8,
        format!(
            "worst-circle average equals the two smallest squared correlations = 2 x (quadratic discord)^2, {} states",
            sz.min_beta
        ),
        start,
    )
}

fn check_g_quadrature(seed: u64, sz: &Sizes) -> CheckReport {
    let start = Instant::now();
    let mut rng = rng_for(seed, 13);
    let mut worst = 0.0f64;
    for _ in 0..sz.g_quad {
        let bd = BellDiagonalState::random(&mut rng);
        worst = worst.max((g_quadrature(&bd, 64) - g_closed(&bd)).abs());
    }
    CheckReport::evaluate(
        "g_quadrature_matches_closed",
        vec![worst],
        vec![0.0],
        1e-6,
        format!(
            "64x64 hemisphere quadrature vs (2/3) sum of squares on {} states",
            sz.g_quad
        ),
        start,
    )
}

/// Hemisphere quadrature of the quadratic form `beta'(E'E)beta` against
/// its exact average `||E||^2 / 3`.
pub fn hemisphere_form_check(state: &BellDiagonalState, n: usize) -> CheckReport {
    let start = Instant::now();
    let e = state.correlations();
    let observed = hemisphere_average(
        |beta| {
            e.x * e.x * beta.x * beta.x + e.y * e.y * beta.y * beta.y + e.z * e.z * beta.z * beta.z
        },
        n,
    );
    let expected = e.norm_squared() / 3.0;
    CheckReport::evaluate(
        "hemisphere_quadratic_form",
        vec![observed],
        vec![expected],
        1e-9,
        format!(
            "state ({:.4}, {:.4}, {:.4}), {n}x{n} nodes",
            state.e1, state.e2, state.e3
        ),
        start,
    )
}

fn check_hemisphere_form(seed: u64, sz: &Sizes) -> CheckReport {
    let start = Instant::now();
    let mut rng = rng_for(seed, 14);
    let mut worst = 0.0f64;
    for _ in 0..sz.hemi_form {
        let bd = BellDiagonalState::random(&mut rng);
        let single = hemisphere_form_check(&bd, 64);
        worst = worst.max((single.observed[0] - single.expected[0]).abs());
    }
    // fixed corner cases: isotropic and single-axis states
    for bd in [
        BellDiagonalState::new(-1.0, -1.0, -1.0),
        BellDiagonalState::new(1.0, 0.0, 0.0),
        BellDiagonalState::new(0.0, 0.0, 0.0),
    ] {
        let single = hemisphere_form_check(&bd, 64);
        worst = worst.max((single.observed[0] - single.expected[0]).abs());
    }
    CheckReport::evaluate(
        "hemisphere_quadratic_form",
        vec![worst],
        vec![0.0],
        1e-9,
        format!(
            "quadratic-form average vs ||E||^2/3 on {} states plus corner cases",
            sz.hemi_form
        ),
        start,
    )
}

fn check_ordering(seed: u64, sz: &Sizes, opts: &SearchOpts) -> CheckReport {
    let start = Instant::now();
    let mut rng = rng_for(seed, 15);
    let mut pairs = Vec::new();
    while pairs.len() < sz.ordering_pairs {
        let strong = BellDiagonalState::random(&mut rng);
        let weak = BellDiagonalState::random(&mut rng);
        let dominates = strong.e1.abs() >= weak.e1.abs()
            && strong.e2.abs() >= weak.e2.abs()
            && strong.e3.abs() >= weak.e3.abs();
        if dominates {
            pairs.push((strong, weak, random_unit(&mut rng)));
        }
    }
    let violations: f64 = pairs
        .par_iter()
        .map(|(strong, weak, beta)| {
            let circle = GreatCircle::new(*beta).unwrap();
            let mut v = 0.0;
            if g_closed(strong) < g_closed(weak) - 1e-12 {
                v += 1.0;
            }
            for k in 0..sz.ordering_targets {
                let target = in_plane_target(
                    &circle.beta(),
                    std::f64::consts::TAU * (k as f64 + 0.5) / sz.ordering_targets as f64,
                );
                let hi = pq_max(&strong.to_fano(), &target, &circle, opts)
                    .unwrap()
                    .pq;
                let lo = pq_max(&weak.to_fano(), &target, &circle, opts).unwrap().pq;
                if hi < lo - 1e-9 {
                    v += 1.0;
                }
            }
            v
        })
        .sum();
    CheckReport::evaluate(
        "ordering_by_correlation_strength",
        vec![violations],
        vec![0.0],
        0.5,
        format!(
            "componentwise stronger correlations never lose: {} dominating pairs x {} targets",
            sz.ordering_pairs, sz.ordering_targets
        ),
        start,
    )
}

fn check_c3_g_link(seed: u64, sz: &Sizes) -> CheckReport {
    let start = Instant::now();
    let mut rng = rng_for(seed, 16);
    let mut samples: Vec<(f64, f64)> = Vec::with_capacity(sz.link);
    let mut worst = 0.0f64;
    for _ in 0..sz.link {
        let bd = BellDiagonalState::random(&mut rng);
        let g = g_closed(&bd);
        let via_g = c3_from_g(g).expect("g in range").value();
        let closed = c3_bell_closed(&bd).unwrap().value();
        worst = worst.max((via_g - closed).abs());
        samples.push((g, closed));
    }
    samples.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    let monotone_violations = samples
        .windows(2)
        .filter(|w| w[1].1 < w[0].1 - 1e-15)
        .count() as f64;
    CheckReport::evaluate(
        "c3_g_monotone_link",
        vec![worst, monotone_violations],
        vec![0.0, 0.0],
        1e-12,
        format!(
            "C3(g) composition matches the closed form and is monotone, {} states",
            sz.link
        ),
        start,
    )
}

fn check_mc(seed: u64, sz: &Sizes) -> CheckReport {
    let start = Instant::now();
    let successes: usize = (0..sz.mc_runs)
        .into_par_iter()
        .map(|run| {
            let mut rng = rng_for(seed, 17 + run as u64);
            let bd = BellDiagonalState::random(&mut rng);
            let state = bd.to_fano();
            let alpha = AliceMeasurement::new(random_unit(&mut rng)).unwrap();
            let circle = GreatCircle::new(random_unit(&mut rng)).unwrap();
            let target = in_plane_target(&circle.beta(), rng.gen_range(0.0..std::f64::consts::TAU));
            let exact = prepared_bloch(&state, &alpha, &circle).bloch;
            let report = mc_simulate(
                &state,
                &alpha,
                &circle,
                &target,
                sz.mc_events,
                rng.gen::<u64>(),
            );
            let ok = (0..3)
                .all(|i| (report.mean[i] - exact[i]).abs() <= 4.0 * report.std_error[i] + 1e-12);
            usize::from(ok)
        })
        .sum();
    CheckReport::evaluate(
        "mc_prepared_convergence",
        vec![successes as f64],
        vec![sz.mc_runs as f64],
        (sz.mc_runs - sz.mc_required) as f64 + 0.25,
        format!(
            "empirical mean within 4 standard errors of the ensemble average, {} runs x {} events",
            sz.mc_runs, sz.mc_events
        ),
        start,
    )
}

/// Per-mixing-parameter comparison of the two noise families. Failures are
/// data: each report records the computed orderings at one `p`.
pub fn counterexample_scan(p_grid: &[f64], targets: usize, opts: &SearchOpts) -> Vec<CheckReport> {
    p_grid
        .par_iter()
        .map(|&p| {
            let start = Instant::now();
            let c = rho_c(p).expect("p in range");
            let g = rho_g(p).expect("p in range");
            let mut violations = 0.0;
            let identical = (p - 1.0).abs() < 1e-12;

            // averaged efficiency and C3 favor the rho_c family strictly
            // away from the endpoints
            if !identical {
                if g_closed(&c) <= g_closed(&g) {
                    violations += 1.0;
                }
                if c3_bell_closed(&c).unwrap().value() <= c3_bell_closed(&g).unwrap().value() {
                    violations += 1.0;
                }
            }
            if p <= 1.0 / 3.0 + 1e-12 {
                if discord_entropic_bell(&c).unwrap() >= discord_entropic_bell(&g).unwrap() {
                    violations += 1.0;
                }
                if (discord_quadratic(&c) - p).abs() > 1e-12
                    || (discord_quadratic(&g) - p).abs() > 1e-12
                {
                    violations += 1.0;
                }
            }
            for circle in [
                GreatCircle::new(Vec3::z()).unwrap(),
                GreatCircle::new(Vec3::x()).unwrap(),
                GreatCircle::new(Vec3::new(1.0, 1.0, 1.0)).unwrap(),
            ] {
                for k in 0..targets {
                    let target = in_plane_target(
                        &circle.beta(),
                        std::f64::consts::TAU * (k as f64 + 0.5) / targets as f64,
                    );
                    let hi = pq_max(&c.to_fano(), &target, &circle, opts).unwrap().pq;
                    let lo = pq_max(&g.to_fano(), &target, &circle, opts).unwrap().pq;
                    if hi < lo - 1e-9 {
                        violations += 1.0;
                    }
                }
            }
            let sep_c = ppt_check(&c.to_fano()).classification;
            let sep_g = ppt_check(&g.to_fano()).classification;
            CheckReport::evaluate(
                &format!("counterexample_p{p:.2}"),
                vec![violations],
                vec![0.0],
                0.5,
                format!(
                    "G {:.6} vs {:.6}; entropic discord {:.6} vs {:.6}; quadratic discord {:.6} vs {:.6}; ppt {:?}/{:?}",
                    g_closed(&c),
                    g_closed(&g),
                    discord_entropic_bell(&c).unwrap(),
                    discord_entropic_bell(&g).unwrap(),
                    discord_quadratic(&c),
                    discord_quadratic(&g),
                    sep_c,
                    sep_g,
                ),
                start,
            )
        })
        .collect()
}

/// A single-axis state has zero quadratic discord yet a working protocol:
/// positive C3, full payoff along its axis, and one dead circle.
pub fn zero_discord_usefulness_check(e1: f64) -> CheckReport {
    let start = Instant::now();
    let opts = SearchOpts::default();
    let state = BellDiagonalState::new(e1, 0.0, 0.0);
    let d3 = discord_quadratic(&state);
    let c3v = c3_bell_closed(&state)
        .expect("axis states are physical")
        .value();
    let circle = GreatCircle::new(Vec3::z()).unwrap();
    let target = TargetState::new(std::f64::consts::FRAC_PI_4, 0.0);
    let pq = pq_max(&state.to_fano(), &target, &circle, &opts)
        .expect("target on circle")
        .pq;
    let dead = pq_av_closed(&state, &GreatCircle::new(Vec3::x()).unwrap());
    CheckReport::evaluate(
        "zero_discord_usefulness",
        vec![d3, pq, dead, f64::from(c3v > 1e-6)],
        vec![0.0, e1 * e1, 0.0, 1.0],
        1e-6,
        format!(
            "state ({e1}, 0, 0): C3 = {c3v:.6}, payoff {pq:.6} along x, dead circle at beta = x"
        ),
        start,
    )
}

fn info_discord_tie(sz: &Sizes) -> CheckReport {
    let start = Instant::now();
    let mut ties = 0.0;
    let mut total = 0.0;
    for &p in sz.scan_grid.iter().filter(|&&p| p <= 1.0 / 3.0 + 1e-12) {
        total += 1.0;
        let dc = discord_quadratic(&rho_c(p).unwrap());
        let dg = discord_quadratic(&rho_g(p).unwrap());
        if (dc - dg).abs() < 1e-15 && (dc - p).abs() < 1e-15 {
            ties += 1.0;
        }
    }
    CheckReport::evaluate(
        "info_discord_quadratic_tie",
        vec![ties],
        vec![total],
        0.25,
        "informational: the quadratic discord equals p for both noise families below 1/3 and cannot order them",
        start,
    )
}

fn info_reference_curve() -> CheckReport {
    let start = Instant::now();
    let value = reference_fidelity_g(0.2, std::f64::consts::FRAC_PI_2);
    CheckReport::evaluate(
        "info_reference_fidelity_range",
        vec![value, f64::from(value < 0.0)],
        vec![-0.6, 1.0],
        1e-12,
        "informational: the quoted rho_g payoff curve leaves [0, 1]; payoff orderings are verified by direct optimization instead",
        start,
    )
}

fn info_rho_c_ppt() -> CheckReport {
    let start = Instant::now();
    let mut entangled = 0.0;
    let mut witness = 0.0f64;
    for p in [0.1, 0.2, 0.3] {
        let report = ppt_check(&rho_c(p).unwrap().to_fano());
        if report.classification == Separability::Entangled {
            entangled += 1.0;
        }
        witness = witness.min(report.witness_eigenvalue);
    }
    CheckReport::evaluate(
        "info_rho_c_ppt_classification",
        vec![entangled],
        vec![3.0],
        0.25,
        format!(
            "informational: rho_c(p) fails the partial-transpose test for every p > 0 (worst witness {witness:.3e}), although the family is often described as separable"
        ),
        start,
    )
}

/// Run every oracle check. Checks execute in parallel and the returned
/// reports are sorted by name; the exit status of the CLI wrapper is
/// nonzero iff any check failed.
pub fn full_suite(seed: u64, level: Level) -> SuiteReport {
    let sz = Sizes::for_level(level);
    let opts = SearchOpts::default();

    let mut checks: Vec<CheckReport> = Vec::new();
    let independent: Vec<Box<dyn Fn() -> CheckReport + Sync + Send>> = vec![
        Box::new(|| check_roundtrip(seed, &sz)),
        Box::new(|| check_tetrahedron(seed, &sz)),
        Box::new(|| check_sampler_acceptance(seed, &sz)),
        Box::new(|| check_conditional(seed, &sz)),
        Box::new(|| check_ppt_weights(seed, &sz)),
        Box::new(|| check_holevo_closed(seed, &sz)),
        Box::new(|| check_hierarchy(seed, &sz, &opts)),
        Box::new(|| c3_consistency_check(sz.c3_states, seed)),
        Box::new(|| check_c3_product(seed, &sz, &opts)),
        Box::new(|| check_sign_flip(seed, &sz)),
        Box::new(|| check_discord_axis(seed, &sz, &opts)),
        Box::new(|| check_factor_relation(seed, &sz)),
        Box::new(|| check_min_beta(seed, &sz, &opts)),
        Box::new(|| check_g_quadrature(seed, &sz)),
        Box::new(|| check_hemisphere_form(seed, &sz)),
        Box::new(|| check_ordering(seed, &sz, &opts)),
        Box::new(|| check_c3_g_link(seed, &sz)),
        Box::new(|| check_mc(seed, &sz)),
        Box::new(|| zero_discord_usefulness_check(0.8)),
        Box::new(|| info_discord_tie(&sz)),
        Box::new(info_reference_curve),
        Box::new(info_rho_c_ppt),
    ];
    checks.par_extend(independent.par_iter().map(|f| f()));
    checks.extend(counterexample_scan(&sz.scan_grid, sz.scan_targets, &opts));
    checks.sort_by(|a, b| a.name.cmp(&b.name));
    SuiteReport {
        seed,
        level: level.to_string(),
        checks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hemisphere_form_check_reference_cases() {
        let r = hemisphere_form_check(&BellDiagonalState::new(1.0, 1.0, 1.0), 32);
        assert!(r.passed);
        assert!((r.observed[0] - 1.0).abs() < 1e-12);
        let r = hemisphere_form_check(&BellDiagonalState::new(1.0, 0.0, 0.0), 32);
        assert!((r.observed[0] - 1.0 / 3.0).abs() < 1e-12);
        let r = hemisphere_form_check(&BellDiagonalState::new(0.0, 0.0, 0.0), 32);
        assert_eq!(r.observed[0], 0.0);
    }

    #[test]
    fn zero_discord_check_passes_at_point_eight() {
        let r = zero_discord_usefulness_check(0.8);
        assert!(r.passed, "{r:?}");
        assert!((r.observed[1] - 0.64).abs() < 1e-6);
    }

    #[test]
    fn counterexample_scan_handles_endpoints() {
        let opts = SearchOpts::default();
        let reports = counterexample_scan(&[0.2, 1.0], 8, &opts);
        assert_eq!(reports.len(), 2);
        assert!(reports.iter().all(|r| r.passed), "{reports:?}");
    }

    #[test]
    fn c3_consistency_small_run() {
        let r = c3_consistency_check(4, 42);
        assert!(r.passed, "{r:?}");
        assert!(r.observed[0] <= 1e-3);
    }

    #[test]
    fn level_parsing() {
        assert_eq!("smoke".parse::<Level>().unwrap(), Level::Smoke);
        assert_eq!("full".parse::<Level>().unwrap(), Level::Full);
        assert!("bogus".parse::<Level>().is_err());
    }
}
