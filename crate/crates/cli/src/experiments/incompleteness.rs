use rayon::prelude::*;
use serde::Serialize;

use hqdisk::boundary_maps::{check_membership_with, lift_sup_distance, MembershipConfig};
use hqdisk::cantor::{phi_cantor, phi_n};
use hqdisk::poisson::{sup_distance, HarmonicExtension};
use hqdisk::qc_analysis::dilatation_field;

use super::{fmt_list, require, Settings, PV_NODES};
use crate::error::Result;
use crate::report::{Check, ExperimentReport, Parameters};

/// Radius at which the distortion of each approximant is sampled.
pub const K_RADIUS: f64 = 0.95;
const MESH: usize = 4096;
const K_ANGLES: usize = 1024;
const SUP_TOL: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IncompletenessRow {
    pub n: usize,
    pub lift_dist: f64,
    pub sup_dist: f64,
    #[serde(rename = "K_max")]
    pub k_max: f64,
    pub verdict: &'static str,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct IncompletenessSummary {
    pub lift_ratios: Vec<f64>,
    pub sup_ratios: Vec<f64>,
    pub k_growth: Option<f64>,
}

fn ratios(xs: &[f64]) -> Vec<f64> {
    xs.windows(2).map(|w| w[1] / w[0]).collect()
}

/// `φ_n → φ_C` uniformly while every `φ_n` stays admissible and the limit does not.
pub fn incompleteness(s: &Settings) -> Result<ExperimentReport<IncompletenessRow, IncompletenessSummary>> {
    let n_max = s.n_max.unwrap_or(6);
    require(n_max <= 12, || format!("--nmax {n_max} exceeds 12"))?;
    let cfg = s.quadrature(4096, K_RADIUS)?;
    require(cfg.r_max >= K_RADIUS, || format!("--rmax must be at least {K_RADIUS}"))?;
    let pv = s.pv(PV_NODES)?;
    let mcfg = MembershipConfig::from_quadrature(&cfg);

    let limit = phi_cantor::<f64>();
    let h_limit = HarmonicExtension::new(limit.clone(), cfg);
    let rows = (0..=n_max)
        .into_par_iter()
        .map(|n| {
            let phi = phi_n::<f64>(n);
            let report = check_membership_with(&phi, &mcfg, &pv)?;
            let h = HarmonicExtension::new(phi.clone(), cfg);
            let field = dilatation_field(&h, &[K_RADIUS], K_ANGLES)?;
            Ok(IncompletenessRow {
                n,
                lift_dist: lift_sup_distance(&phi, &limit, MESH),
                sup_dist: sup_distance(&h, &h_limit, MESH).chord,
                k_max: field.k_max,
                verdict: report.verdict.as_str(),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let lift: Vec<f64> = rows.iter().map(|r| r.lift_dist).collect();
    let sup: Vec<f64> = rows.iter().map(|r| r.sup_dist).collect();
    let k: Vec<f64> = rows.iter().map(|r| r.k_max).collect();
    let summary = IncompletenessSummary {
        lift_ratios: ratios(&lift),
        sup_ratios: ratios(&sup),
        k_growth: (n_max >= 6).then(|| k[6] / k[0]),
    };

    let params = Parameters {
        nodes: Some(cfg.nodes),
        r_max: Some(cfg.r_max),
        flatness_floor: Some(cfg.flatness_floor),
        epsilon: Some(pv.epsilon),
        pv_nodes: Some(pv.nodes),
        n_max: Some(n_max),
        mesh: Some(MESH),
        angles: Some(K_ANGLES),
        radii: vec![K_RADIUS],
        ..Parameters::default()
    };
    let mut report = ExperimentReport::new("incompleteness", params, summary);

    let worst = rows.iter().map(|r| r.sup_dist - r.lift_dist).fold(f64::NEG_INFINITY, f64::max);
    report.checks.push(Check::asserted(
        "sup_dist_bound",
        worst <= SUP_TOL,
        format!("max(sup_dist - lift_dist) = {worst:.3e}, tolerance {SUP_TOL:e}"),
    ));
    let non_members: Vec<usize> = rows.iter().filter(|r| r.verdict != "member").map(|r| r.n).collect();
    report.checks.push(Check::asserted(
        "approximants_admissible",
        non_members.is_empty(),
        format!("non-member indices: {non_members:?}"),
    ));
    let in_band = |rs: &[f64]| rs.iter().all(|r| (0.4..=0.6).contains(r));
    report.checks.push(Check::observed(
        "lift_dist_contraction",
        in_band(&report.summary.lift_ratios),
        format!("ratios {}", fmt_list(&report.summary.lift_ratios)),
    ));
    report.checks.push(Check::observed(
        "sup_dist_contraction",
        in_band(&report.summary.sup_ratios),
        format!("ratios {}", fmt_list(&report.summary.sup_ratios)),
    ));
    report.checks.push(Check::observed(
        "k_max_increasing",
        k.windows(2).all(|w| w[1] > w[0]),
        format!("K_max at r = {K_RADIUS}: {}", fmt_list(&k)),
    ));
    if let Some(g) = report.summary.k_growth {
        report.checks.push(Check::observed("k_max_doubling", g >= 2.0, format!("K_max(6)/K_max(0) = {g:.4}")));
    }
    report.records = rows;
    Ok(report)
}
