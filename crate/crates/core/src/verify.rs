//! Self-check suites. Each suite reduces one family of identities to a single
//! maximal deviation that is compared against a tolerance.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::ds::{build_ds_generators, ds_casimir, intertwine_check_ds, DSWeight};
use crate::error::{Error, Result};
use crate::generators::LadderSet;
use crate::group::{check_structure_constants, jacobi_action, GroupElement, PointCH};
use crate::observables::{
    check_zero_locus, covariance_closed, covariance_numeric, is_squeezed, mandel_q_closed,
    mandel_q_with, squeeze_ratio, squeezing_disk,
};
use crate::operator::{commutator, BasisLabel, TruncatedOperator, C64};
use crate::squeeze::{
    conjugate_by_inverse, displacement, displacement_me_closed, leakage_interior, squeeze,
    squeeze_me_closed, squeeze_w_sector, squeezed_op, transformed_generators, SqueezeParams,
    LEAKAGE_BUDGET,
};
use crate::sw::{
    build_sw_generators, f_poly_rational, generating_residual, heat_pde_residual,
    intertwine_check_sw, SWGenerators, SWIndex,
};

/// Weights exercised by the discrete-series suites in addition to the
/// configured one.
pub const STANDARD_WEIGHTS: [f64; 4] = [1.7, 2.5, 3.0, 4.25];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Structure,
    Boson,
    Casimir,
    Intertwine,
    Generating,
    Unitarity,
    ClosedVsOracle,
    Transformed,
    Covariance,
    Disk,
    Mandel,
    Action,
}

impl Suite {
    pub const ALL: [Suite; 12] = [
        Suite::Structure,
        Suite::Boson,
        Suite::Casimir,
        Suite::Intertwine,
        Suite::Generating,
        Suite::Unitarity,
        Suite::ClosedVsOracle,
        Suite::Transformed,
        Suite::Covariance,
        Suite::Disk,
        Suite::Mandel,
        Suite::Action,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Structure => "structure",
            Suite::Boson => "boson",
            Suite::Casimir => "casimir",
            Suite::Intertwine => "intertwine",
            Suite::Generating => "generating",
            Suite::Unitarity => "unitarity",
            Suite::ClosedVsOracle => "closed-vs-oracle",
            Suite::Transformed => "transformed",
            Suite::Covariance => "covariance",
            Suite::Disk => "disk",
            Suite::Mandel => "mandel",
            Suite::Action => "action",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown suite {s:?}")))
    }
}

/// Parses `all` or a comma-separated list of suite names.
pub fn parse_suites(list: &str) -> Result<Vec<Suite>> {
    if list == "all" {
        return Ok(Suite::ALL.to_vec());
    }
    list.split(',').map(|s| s.trim().parse()).collect()
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyConfig {
    pub cutoff: usize,
    pub tol: f64,
    pub k: f64,
    pub idx: SWIndex,
    pub seed: u64,
    /// Largest `|w|` sampled by the random suites.
    pub w_max: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            cutoff: 64,
            tol: 1e-8,
            k: 3.0,
            idx: SWIndex::unit(),
            seed: 0,
            w_max: 0.6,
        }
    }
}

impl VerifyConfig {
    /// Discrete-series level used where the suites need one: dense products
    /// on the two-index basis grow like `level⁶`.
    pub fn ds_level(&self) -> usize {
        self.cutoff.clamp(4, 12)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub detail: String,
}

pub fn run_suites(suites: &[Suite], config: &VerifyConfig) -> Result<Vec<SuiteReport>> {
    suites.par_iter().map(|s| run_suite(*s, config)).collect()
}

pub fn run_suite(suite: Suite, config: &VerifyConfig) -> Result<SuiteReport> {
    let (max_deviation, detail) = match suite {
        Suite::Structure => structure(),
        Suite::Boson => boson(config)?,
        Suite::Casimir => casimir(config)?,
        Suite::Intertwine => intertwine(config)?,
        Suite::Generating => generating(config)?,
        Suite::Unitarity => unitarity(config)?,
        Suite::ClosedVsOracle => closed_vs_oracle(config)?,
        Suite::Transformed => transformed(config)?,
        Suite::Covariance => covariance(config)?,
        Suite::Disk => disk()?,
        Suite::Mandel => mandel(config)?,
        Suite::Action => action(config)?,
    };
    Ok(SuiteReport {
        suite,
        max_deviation,
        tolerance: config.tol,
        passed: max_deviation <= config.tol,
        detail,
    })
}

fn rng(config: &VerifyConfig, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(config.seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ salt)
}

fn disk_point(rng: &mut ChaCha8Rng, radius: f64) -> C64 {
    // uniform in area
    let rho = radius * rng.random::<f64>().sqrt();
    C64::from_polar(rho, rng.random_range(0.0..2.0 * PI))
}

fn weights(config: &VerifyConfig) -> Result<Vec<DSWeight>> {
    let mut ks = STANDARD_WEIGHTS.to_vec();
    if !ks.contains(&config.k) {
        ks.push(config.k);
    }
    ks.into_iter().map(DSWeight::new).collect()
}

fn structure() -> (f64, String) {
    let report = check_structure_constants();
    (
        report.max_deviation as f64,
        format!("{} brackets in integer arithmetic", report.pairs.len()),
    )
}

/// Boson and `su(1,1)` relations on grades `<= interior`.
pub fn ladder_relations<L: LadderSet + ?Sized>(g: &L, interior: usize) -> Result<f64> {
    let two = C64::new(2.0, 0.0);
    let checks = [
        (
            commutator(g.a(), g.a_dag())?,
            TruncatedOperator::identity(g.basis()),
        ),
        (commutator(g.k0(), g.k_plus())?, g.k_plus().clone()),
        (commutator(g.k0(), g.k_minus())?, -g.k_minus()),
        (commutator(g.k_minus(), g.k_plus())?, g.k0().scale(two)),
        (commutator(g.a(), g.k_plus())?, g.a_dag().clone()),
        (commutator(g.k_minus(), g.a_dag())?, g.a().clone()),
        (
            commutator(g.k_minus(), g.a())?,
            TruncatedOperator::zeros(g.basis()),
        ),
        (commutator(g.a(), g.k0())?.scale(two), g.a().clone()),
    ];
    let mut worst = 0.0f64;
    for (lhs, rhs) in &checks {
        worst = worst.max(lhs.max_abs_diff_within(rhs, interior)?);
    }
    Ok(worst)
}

fn boson(config: &VerifyConfig) -> Result<(f64, String)> {
    let sw = build_sw_generators(config.cutoff, config.idx)?;
    let mut worst = ladder_relations(&sw, config.cutoff - 2)?;
    let level = config.ds_level();
    for weight in weights(config)? {
        let ds = build_ds_generators(weight, level)?;
        worst = worst.max(ladder_relations(&ds, 2 * level - 2)?);
    }
    Ok((
        worst,
        format!("oscillator N={}, discrete series D={level}", config.cutoff),
    ))
}

fn casimir(config: &VerifyConfig) -> Result<(f64, String)> {
    let level = config.ds_level();
    let mut worst = 0.0f64;
    for weight in weights(config)? {
        worst = worst.max(ds_casimir(weight, level)?.deviation);
    }
    let expected = DSWeight::new(config.k)?.casimir_value();
    Ok((
        worst,
        format!("D={level}, expected {expected} at k={}", config.k),
    ))
}

fn intertwine(config: &VerifyConfig) -> Result<(f64, String)> {
    let n = config.cutoff.min(16);
    let level = config.ds_level().min(8);
    let mut worst = intertwine_check_sw(n)?;
    for weight in weights(config)? {
        worst = worst.max(intertwine_check_ds(weight, level)?);
    }
    Ok((worst, format!("N={n}, D={level}")))
}

fn generating(config: &VerifyConfig) -> Result<(f64, String)> {
    let mut rng = rng(config, 1);
    let mut worst = 0.0f64;
    for _ in 0..64 {
        let z = disk_point(&mut rng, 1.0);
        let alpha = disk_point(&mut rng, 1.0);
        let w = disk_point(&mut rng, 0.5);
        worst = worst.max(generating_residual(z, alpha, w, 40)?);
    }
    let mut nonzero = 0usize;
    for n in 0..=20 {
        if !heat_pde_residual(&f_poly_rational(n))?.is_zero() {
            nonzero += 1;
        }
    }
    worst = worst.max(nonzero as f64);
    Ok((
        worst,
        format!("64 points, 40 terms; {nonzero} nonzero heat residuals for n<=20"),
    ))
}

/// `(U†U − I)` on the leakage interior of `U` built at `cutoff`, measured with
/// a reference built at `2·cutoff`.
fn unitary_deviation(
    small: &TruncatedOperator,
    big: &TruncatedOperator,
    cutoff: usize,
) -> Result<(f64, Option<usize>)> {
    let Some(interior) = leakage_interior(big, cutoff, LEAKAGE_BUDGET) else {
        return Ok((0.0, None));
    };
    let id = TruncatedOperator::identity(small.basis());
    let dev = (&small.adjoint() * small).max_abs_diff_within(&id, interior)?;
    Ok((dev, Some(interior)))
}

fn unitarity(config: &VerifyConfig) -> Result<(f64, String)> {
    let n = config.cutoff;
    let g = build_sw_generators(n, config.idx)?;
    let big = build_sw_generators(2 * n, config.idx)?;
    let mut rng = rng(config, 2);
    let mut worst = 0.0f64;
    let mut min_interior = usize::MAX;
    let mut skipped = 0;
    for _ in 0..4 {
        let alpha = disk_point(&mut rng, 2.0);
        let w = disk_point(&mut rng, config.w_max);
        let d = displacement(alpha, &g)?;
        let s = squeeze(w, &g)?;
        for (small, reference) in [(&d, displacement(alpha, &big)?), (&s, squeeze(w, &big)?)] {
            match unitary_deviation(small, &reference, n)? {
                (dev, Some(interior)) => {
                    worst = worst.max(dev);
                    min_interior = min_interior.min(interior);
                }
                (_, None) => skipped += 1,
            }
        }
        if let Some(interior) = leakage_interior(&displacement(alpha, &big)?, n, LEAKAGE_BUDGET) {
            let generator = &(&g.a_dag * alpha) - &(&g.a * alpha.conj());
            let oracle = generator.expm_dense(C64::new(1.0, 0.0))?;
            worst = worst.max(d.max_abs_diff_within(&oracle, interior)?);
        }
        worst = worst.max(s.adjoint().max_abs_diff_within(&squeeze(-w, &g)?, n / 2)?);
    }
    if skipped == 8 {
        return Err(Error::Leakage {
            leakage: f64::INFINITY,
            budget: LEAKAGE_BUDGET,
        });
    }
    Ok((
        worst,
        format!(
            "N={n}, smallest leakage interior grade {min_interior}, {skipped} operators skipped"
        ),
    ))
}

/// Closed squeeze elements over the `W`-sector matrix oracle for
/// `0 <= n <= n' <= max_index`. Returns `(max |closed − oracle|, max spread
/// of closed/oracle over w, mean ratio)`.
pub fn squeeze_closed_vs_oracle(
    weight: DSWeight,
    max_index: usize,
    ws: &[C64],
) -> Result<(f64, f64, f64)> {
    let g = build_ds_generators(weight, max_index.max(2))?;
    let mut worst = 0.0f64;
    let mut spread = 0.0f64;
    let mut ratios = Vec::new();
    let oracles: Vec<TruncatedOperator> = ws
        .iter()
        .map(|w| squeeze_w_sector(*w, &g))
        .collect::<Result<_>>()?;
    for n in 0..=max_index {
        for n_prime in n..=max_index {
            let row = BasisLabel::Pair {
                n_prime: 0,
                n: n_prime,
            };
            let col = BasisLabel::Pair { n_prime: 0, n };
            let mut lo = f64::INFINITY;
            let mut hi = f64::NEG_INFINITY;
            for (w, oracle) in ws.iter().zip(&oracles) {
                let closed = squeeze_me_closed(weight, n, n_prime, *w)?;
                let numeric = oracle.element(row, col);
                worst = worst.max((closed - numeric).norm());
                if numeric.norm() > 1e-12 {
                    let ratio = (closed / numeric).re;
                    lo = lo.min(ratio);
                    hi = hi.max(ratio);
                    ratios.push(ratio);
                }
            }
            if hi >= lo {
                spread = spread.max(hi - lo);
            }
        }
    }
    let mean = ratios.iter().sum::<f64>() / ratios.len().max(1) as f64;
    Ok((worst, spread, mean))
}

/// Twenty nonzero `w` values spread over the disk `|w| <= radius`.
pub fn sample_ws(radius: f64) -> Vec<C64> {
    (0..20)
        .map(|j| {
            let rho = radius * (j as f64 + 1.0) / 20.0;
            C64::from_polar(rho, 2.399_963_229_728_653 * j as f64)
        })
        .collect()
}

fn closed_vs_oracle(config: &VerifyConfig) -> Result<(f64, String)> {
    let mut worst = 0.0f64;
    let ws = sample_ws(config.w_max.min(0.9));
    for k in [2.0, 3.0, 4.25] {
        let (dev, spread, _) = squeeze_closed_vs_oracle(DSWeight::new(k)?, 6, &ws)?;
        worst = worst.max(dev).max(spread);
    }

    let g = build_sw_generators(config.cutoff, config.idx)?;
    let mut rng = rng(config, 3);
    let top = config.cutoff.min(10);
    for _ in 0..4 {
        let alpha = disk_point(&mut rng, 2.0);
        let d = displacement(alpha, &g)?;
        for m in 0..=top {
            for n in 0..=top {
                let closed = displacement_me_closed(m, n, alpha);
                let entry = d.element(BasisLabel::Number(m), BasisLabel::Number(n));
                worst = worst.max((closed - entry).norm());
            }
        }
    }

    let mandel = mandel_sweep(&g, 8, config.w_max)?;
    worst = worst.max(mandel);
    Ok((
        worst,
        "squeeze elements vs W-sector matrix, Laguerre vs matrix, Mandel closed vs engine".into(),
    ))
}

/// Largest `|Q_closed − Q_engine|` over an `r × θ` polar grid of `w`, a few
/// `α`, and `n <= 3`.
pub fn mandel_sweep(g: &SWGenerators, grid: usize, w_max: f64) -> Result<f64> {
    let alphas = [
        C64::new(0.0, 0.0),
        C64::new(2.0, 0.0),
        C64::new(-0.8, 1.1),
        C64::new(0.0, -1.5),
    ];
    let points: Vec<(C64, C64)> = (0..grid)
        .flat_map(|i| (0..grid).map(move |j| (i, j)))
        .flat_map(|(i, j)| {
            let w = C64::from_polar(
                w_max * i as f64 / grid as f64,
                2.0 * PI * j as f64 / grid as f64,
            );
            alphas.iter().map(move |a| (*a, w))
        })
        .collect();
    let devs: Vec<f64> = points
        .par_iter()
        .map(|(alpha, w)| -> Result<f64> {
            let params = SqueezeParams::new(*alpha, *w)?;
            let transformed = transformed_generators(&params, g);
            let mut worst = 0.0f64;
            for n in 0..=3 {
                let label = BasisLabel::Number(n);
                match (
                    mandel_q_closed(*alpha, *w, n),
                    mandel_q_with(&transformed, g, label),
                ) {
                    (Ok(closed), Ok(numeric)) => worst = worst.max((closed - numeric).abs()),
                    (Err(Error::VacuumMandel), Err(Error::VacuumMandel)) => {}
                    (Err(e), _) | (_, Err(e)) => return Err(e),
                }
            }
            Ok(worst)
        })
        .collect::<Result<_>>()?;
    Ok(devs.into_iter().fold(0.0, f64::max))
}

fn transformed(config: &VerifyConfig) -> Result<(f64, String)> {
    let n = config.cutoff;
    let g = build_sw_generators(n, config.idx)?;
    let big = build_sw_generators(2 * n, config.idx)?;
    let mut rng = rng(config, 4);
    let mut worst = 0.0f64;
    let mut used = 0;
    for _ in 0..3 {
        let params = SqueezeParams::new(disk_point(&mut rng, 1.5), disk_point(&mut rng, 0.5))?;
        let Some(tail) = leakage_interior(&squeezed_op(&params, &big)?, n, LEAKAGE_BUDGET) else {
            continue;
        };
        let interior = tail.saturating_sub(2);
        used += 1;
        let t = transformed_generators(&params, &g);
        for (x, closed) in [
            (&g.a, &t.a_hat),
            (&g.a_dag, &t.a_dag_hat),
            (&g.k0, &t.k0_hat),
            (&g.k_plus, &t.kp_hat),
            (&g.k_minus, &t.km_hat),
        ] {
            let oracle = conjugate_by_inverse(&params, &g, x)?;
            worst = worst.max(closed.max_abs_diff_within(&oracle, interior)?);
        }
    }
    if used == 0 {
        return Err(Error::Leakage {
            leakage: f64::INFINITY,
            budget: LEAKAGE_BUDGET,
        });
    }
    Ok((worst, format!("N={n}, {used} parameter sets")))
}

fn covariance(config: &VerifyConfig) -> Result<(f64, String)> {
    let g = build_sw_generators(config.cutoff, config.idx)?;
    let hbar = config.idx.hbar;
    let mut rng = rng(config, 5);
    let mut worst = 0.0f64;
    let mut skipped = 0;
    let mut used = 0;
    for _ in 0..6 {
        let params = SqueezeParams::new(
            disk_point(&mut rng, 2.0),
            disk_point(&mut rng, config.w_max),
        )?;
        for n in 0..=3 {
            let closed = covariance_closed(n, params.w, hbar)?;
            match covariance_numeric(&params, &g, BasisLabel::Number(n), hbar) {
                Ok(numeric) => {
                    worst = worst.max(closed.max_abs_diff(&numeric));
                    used += 1;
                }
                Err(Error::Leakage { .. }) => skipped += 1,
                Err(e) => return Err(e),
            }
            worst = worst.max(closed.product_check().abs());
            if n == 0 {
                worst = worst.max(closed.schrodinger_slack().abs());
            }
        }
    }
    Ok((
        worst,
        format!("{used} states compared, {skipped} skipped for leakage"),
    ))
}

fn disk() -> Result<(f64, String)> {
    let mut disagreements = 0usize;
    let mut boundary = 0.0f64;
    for n in 0..4 {
        let disk = squeezing_disk(n);
        for i in 0..32 {
            for j in 0..32 {
                let w = C64::new(
                    -1.0 + (i as f64 + 0.5) / 16.0,
                    -1.0 + (j as f64 + 0.5) / 16.0,
                );
                if w.norm() < 1.0 && is_squeezed(n, w)? != disk.contains(w) {
                    disagreements += 1;
                }
            }
        }
        for w in disk.boundary(64) {
            if w.norm() < 1.0 - 1e-9 {
                boundary = boundary.max((squeeze_ratio(n, w)? - 1.0).abs());
            }
        }
    }
    Ok((
        boundary.max(disagreements as f64),
        format!("{disagreements} grid disagreements, boundary |2 n0 u+ - 1| <= {boundary:e}"),
    ))
}

fn mandel(config: &VerifyConfig) -> Result<(f64, String)> {
    let g = build_sw_generators(config.cutoff, config.idx)?;
    let mut worst = mandel_sweep(&g, 16, config.w_max)?;
    let mut notes = Vec::new();
    for n in 0..=3 {
        match check_zero_locus(n, 1e-3) {
            Ok(check) => {
                worst = worst.max(check.q_at_radius.abs());
                if !check.sign_change() {
                    worst = worst.max(1.0);
                    notes.push(format!("n={n}: no sign change"));
                }
            }
            // the zero radius for n = 0 is |w| = 0, where the state is the
            // vacuum and Q is undefined
            Err(Error::VacuumMandel) if n == 0 => {
                notes.push("n=0: zero radius is the vacuum".into())
            }
            Err(e) => return Err(e),
        }
    }
    let alpha_half = C64::new(0.5f64.sqrt(), 0.0);
    for n in 1..=3 {
        worst = worst.max(mandel_q_closed(alpha_half, C64::new(0.0, 0.0), n)?.abs());
    }
    worst = worst.max(mandel_q_closed(C64::new(1.0, 0.0), C64::new(0.0, 0.0), 0)?.abs());
    Ok((
        worst,
        format!("16x16 grid, N={}; {}", config.cutoff, notes.join("; ")),
    ))
}

fn random_element(rng: &mut ChaCha8Rng) -> Result<GroupElement> {
    let a = rng.random_range(0.5..2.0);
    let b = rng.random_range(-1.0..1.0);
    let c = rng.random_range(-1.0..1.0);
    let d = (1.0 + b * c) / a;
    GroupElement::new(
        rng.random_range(-1.0..1.0),
        rng.random_range(-1.0..1.0),
        rng.random_range(-1.0..1.0),
        [[a, b], [c, d]],
    )
}

fn action(config: &VerifyConfig) -> Result<(f64, String)> {
    let mut rng = rng(config, 6);
    let mut worst = 0.0f64;
    for _ in 0..200 {
        let g1 = random_element(&mut rng)?;
        let g2 = random_element(&mut rng)?;
        let p = PointCH::new(
            C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)),
            C64::new(rng.random_range(-1.0..1.0), rng.random_range(0.3..2.0)),
        )?;
        let m = config.idx.m;
        let k = config.k.round().max(1.0);
        let (p2, j2) = jacobi_action(&g2, &p, m, k)?;
        let (p12, j1) = jacobi_action(&g1, &p2, m, k)?;
        let (direct, j12) = jacobi_action(&g1.compose(&g2)?, &p, m, k)?;
        worst = worst
            .max((direct.z - p12.z).norm())
            .max((direct.tau - p12.tau).norm())
            .max((j12 - j1 * j2).norm() / j12.norm());
        if direct.tau.im <= 0.0 {
            worst = worst.max(1.0);
        }
        let back = g1.compose(&g1.inverse())?;
        let id = GroupElement::identity();
        for (x, y) in back
            .embed()
            .iter()
            .flatten()
            .zip(id.embed().iter().flatten())
        {
            worst = worst.max((x - y).abs());
        }
    }
    Ok((
        worst,
        "200 random pairs: left action, cocycle, inverse".into(),
    ))
}
