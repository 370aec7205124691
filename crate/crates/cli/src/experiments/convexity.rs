use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use hqdisk::boundary_maps::{
    check_membership_with, convex_combination, estimate_bilipschitz, lift_sup_distance, MembershipConfig,
};
use hqdisk::poisson::{interior_sup_distance, HarmonicExtension};
use hqdisk::{PvConfig, Quadrature};

use super::{require, Settings, PV_NODES};
use crate::error::Result;
use crate::lifts::LiftName;
use crate::report::{Check, ExperimentReport, Parameters};

const L_TOL: f64 = 1e-9;
const LAMBDA_TOL: f64 = 1e-6;
const ANGLES: usize = 64;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConvexityRow {
    pub trial: usize,
    pub phi1: String,
    pub phi2: String,
    pub lambda: f64,
    pub verdict: &'static str,
    pub l_upper: f64,
    pub l_upper_bound: f64,
    pub interior_dist: f64,
    pub lift_dist: f64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct ConvexitySummary {
    pub members: usize,
    pub max_l_excess: f64,
    pub max_lambda_excess: f64,
}

/// Draws from identity, `φ_n` (`n ≤ 4`) and Möbius traces with `|a| ≤ 0.5`.
fn draw_generator(rng: &mut ChaCha8Rng) -> LiftName {
    match rng.gen_range(0..3) {
        0 => LiftName::Identity,
        1 => LiftName::PhiN(rng.gen_range(0..=4)),
        _ => {
            let r = 0.5 * rng.gen::<f64>();
            let a = std::f64::consts::TAU * rng.gen::<f64>();
            LiftName::Mobius(r * a.cos(), r * a.sin())
        }
    }
}

fn run_trial(
    trial: usize,
    (g1, g2, lambda): &(LiftName, LiftName, f64),
    cfg: &Quadrature,
    pv: &PvConfig,
    radii: &[f64],
) -> Result<ConvexityRow> {
    let mcfg = MembershipConfig::from_quadrature(cfg);
    let (p1, p2) = (g1.build()?, g2.build()?);
    let combo = convex_combination(&p1, &p2, *lambda)?;
    let report = check_membership_with(&combo, &mcfg, pv)?;
    let bound = estimate_bilipschitz(&p1, mcfg.lipschitz_mesh)?
        .upper
        .max(estimate_bilipschitz(&p2, mcfg.lipschitz_mesh)?.upper);
    let (h1, h2) = (HarmonicExtension::new(p1.clone(), *cfg), HarmonicExtension::new(p2.clone(), *cfg));
    Ok(ConvexityRow {
        trial,
        phi1: g1.to_string(),
        phi2: g2.to_string(),
        lambda: *lambda,
        verdict: report.verdict.as_str(),
        l_upper: report.bilipschitz_upper,
        l_upper_bound: bound,
        interior_dist: interior_sup_distance(&h1, &h2, radii, ANGLES)?,
        // Contains every quadrature node.
        lift_dist: lift_sup_distance(&p1, &p2, 4 * cfg.nodes),
    })
}

/// Closure of admissible lifts under convex combination, and `Λ` as a 1-Lipschitz map.
pub fn convexity(s: &Settings) -> Result<ExperimentReport<ConvexityRow, ConvexitySummary>> {
    let trials = s.trials.unwrap_or(100);
    require(trials >= 1, || "--trials must be at least 1".into())?;
    let cfg = s.quadrature(1024, 0.9)?;
    let pv = s.pv(PV_NODES)?;
    let mut radii: Vec<f64> = [0.2, 0.5, 0.8].into_iter().filter(|&r| r < cfg.r_max).collect();
    radii.push(cfg.r_max);

    let mut rng = ChaCha8Rng::seed_from_u64(s.seed);
    let draws: Vec<(LiftName, LiftName, f64)> = (0..trials)
        .map(|_| {
            let g1 = draw_generator(&mut rng);
            let g2 = draw_generator(&mut rng);
            (g1, g2, rng.gen::<f64>())
        })
        .collect();
    let rows =
        draws.par_iter().enumerate().map(|(i, d)| run_trial(i, d, &cfg, &pv, &radii)).collect::<Result<Vec<_>>>()?;

    // Endpoint combinations must reproduce the endpoint verdicts.
    let (g1, g2, _) = &draws[0];
    let mut endpoint_ok = true;
    let mcfg = MembershipConfig::from_quadrature(&cfg);
    for (lambda, g) in [(1.0, g1), (0.0, g2)] {
        let combo = convex_combination(&g1.build()?, &g2.build()?, lambda)?;
        let a = check_membership_with(&combo, &mcfg, &pv)?.verdict;
        let b = check_membership_with(&g.build()?, &mcfg, &pv)?.verdict;
        endpoint_ok &= a == b;
    }

    let summary = ConvexitySummary {
        members: rows.iter().filter(|r| r.verdict == "member").count(),
        max_l_excess: rows.iter().map(|r| r.l_upper - r.l_upper_bound).fold(f64::NEG_INFINITY, f64::max),
        max_lambda_excess: rows.iter().map(|r| r.interior_dist - r.lift_dist).fold(f64::NEG_INFINITY, f64::max),
    };
    let params = Parameters {
        nodes: Some(cfg.nodes),
        r_max: Some(cfg.r_max),
        flatness_floor: Some(cfg.flatness_floor),
        epsilon: Some(pv.epsilon),
        pv_nodes: Some(pv.nodes),
        trials: Some(trials),
        seed: Some(s.seed),
        angles: Some(ANGLES),
        radii,
        ..Parameters::default()
    };
    let mut report = ExperimentReport::new("convexity", params, summary);
    let sm = &report.summary;
    let checks = vec![
        Check::asserted(
            "combinations_admissible",
            sm.members == trials,
            format!("{}/{} combinations are members", sm.members, trials),
        ),
        Check::asserted(
            "upper_lipschitz_bound",
            sm.max_l_excess <= L_TOL,
            format!("max(L+ - max(L1+, L2+)) = {:.3e}", sm.max_l_excess),
        ),
        Check::asserted(
            "lambda_one_lipschitz",
            sm.max_lambda_excess <= LAMBDA_TOL,
            format!("max(interior - lift distance) = {:.3e}", sm.max_lambda_excess),
        ),
        Check::asserted("endpoint_verdicts", endpoint_ok, format!("lambda in {{0, 1}} for ({g1}, {g2})")),
    ];
    report.checks = checks;
    report.records = rows;
    Ok(report)
}
