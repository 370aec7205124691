use serde::Serialize;

use hqdisk::boundary_maps::{check_membership_with, example3_unit, make_example3, MembershipConfig, MembershipVerdict};
use hqdisk::poisson::HarmonicExtension;
use hqdisk::qc_analysis::{dilatation_field, mu_nondecreasing};

use super::{require, Settings, PV_NODES};
use crate::error::Result;
use crate::report::{Check, ExperimentReport, Parameters};

const RADII: [f64; 3] = [0.5, 0.9, 0.99];
const ANGLES: usize = 256;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DilatationRow {
    pub r: f64,
    pub theta: f64,
    pub re: f64,
    pub im: f64,
    pub mu_abs: f64,
    #[serde(rename = "K")]
    pub k: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GrowthRow {
    pub r: f64,
    pub max_mu: f64,
    #[serde(rename = "K_max")]
    pub k_max: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Example3Summary {
    pub verdict: &'static str,
    pub findings: Vec<String>,
    pub bilipschitz_upper: f64,
    pub bilipschitz_lower: f64,
    pub total_increase: f64,
    pub hilbert_sup: Option<f64>,
    /// `(x, φ(x))` at the ends of the flat segment.
    pub unit_values: Vec<(f64, f64)>,
    pub growth: Vec<GrowthRow>,
}

/// Membership and dilatation growth of the piecewise-linear map with a flat segment.
pub fn example3(s: &Settings) -> Result<ExperimentReport<DilatationRow, Example3Summary>> {
    let cfg = s.quadrature(8192, 0.99)?;
    let pv = s.pv(PV_NODES)?;
    let radii: Vec<f64> = RADII.iter().copied().filter(|&r| r <= cfg.r_max).collect();
    require(radii.len() >= 2, || format!("--rmax {} leaves fewer than two sweep radii", cfg.r_max))?;

    let phi = make_example3::<f64>();
    let m = check_membership_with(&phi, &MembershipConfig::from_quadrature(&cfg), &pv)?;
    let field = dilatation_field(&HarmonicExtension::new(phi, cfg), &radii, ANGLES)?;
    let growth: Vec<GrowthRow> =
        field.radius_stats().into_iter().map(|st| GrowthRow { r: st.r, max_mu: st.max_mu, k_max: st.k_max }).collect();

    let unit_values: Vec<(f64, f64)> = [1.0 / 3.0, 0.75].iter().map(|&x| (x, example3_unit(x))).collect();
    let summary = Example3Summary {
        verdict: m.verdict.as_str(),
        findings: m.findings.iter().map(|f| format!("{f:?}")).collect(),
        bilipschitz_upper: m.bilipschitz_upper,
        bilipschitz_lower: m.bilipschitz_lower,
        total_increase: m.total_increase,
        hilbert_sup: m.hilbert_sup,
        unit_values,
        growth,
    };
    let params = Parameters {
        nodes: Some(cfg.nodes),
        r_max: Some(cfg.r_max),
        flatness_floor: Some(cfg.flatness_floor),
        epsilon: Some(pv.epsilon),
        pv_nodes: Some(pv.nodes),
        lift: Some("example3".into()),
        angles: Some(ANGLES),
        radii: radii.clone(),
        ..Parameters::default()
    };
    let mut report = ExperimentReport::new("example3", params, summary);

    report.checks.push(Check::asserted(
        "non_member",
        m.verdict == MembershipVerdict::NonMember,
        format!("verdict {}", m.verdict.as_str()),
    ));
    report.checks.push(Check::asserted(
        "flat_segment",
        m.bilipschitz_lower == 0.0,
        format!("L- = {:e}", m.bilipschitz_lower),
    ));
    let off = report.summary.unit_values.iter().map(|&(_, v)| (v - 2.0 / 3.0).abs()).fold(0.0, f64::max);
    report.checks.push(Check::asserted(
        "flat_value",
        off <= 1e-15,
        format!("max |φ(x) - 2/3| over x in {{1/3, 3/4}} = {off:e}"),
    ));
    let stats = field.radius_stats();
    let (first, last) = (stats[0], stats[stats.len() - 1]);
    report.checks.push(Check::observed(
        "distortion_growth",
        last.max_mu > first.max_mu && mu_nondecreasing(&stats, 1e-3),
        format!("max|mu| {:.4} at r = {} -> {:.4} at r = {}", first.max_mu, first.r, last.max_mu, last.r),
    ));

    report.records = field
        .samples
        .iter()
        .map(|p| DilatationRow { r: p.r, theta: p.theta, re: p.mu.re, im: p.mu.im, mu_abs: p.mu_abs, k: p.k })
        .collect();
    Ok(report)
}
