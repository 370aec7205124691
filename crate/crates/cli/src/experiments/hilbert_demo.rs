use std::f64::consts::TAU;

use serde::Serialize;

use hqdisk::hilbert::{hilbert_at, Kernel, PVConfig};

use super::{Settings, PV_NODES};
use crate::error::Result;
use crate::report::{Check, ExperimentReport, Parameters};

const SAMPLES: usize = 64;

/// One line of the demo table; `key` is `n`, `x` or `λ` depending on `section`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HilbertRow {
    pub section: &'static str,
    pub key: f64,
    pub value: f64,
    pub reference: f64,
    pub error: f64,
}

impl HilbertRow {
    fn new(section: &'static str, key: f64, value: f64, reference: f64) -> Self {
        Self { section, key, value, reference, error: (value - reference).abs() }
    }
}

fn g1(x: f64) -> f64 {
    (x).cos() - 0.4 * (3.0 * x).sin() + 0.2 * (5.0 * x).cos()
}

fn g2(x: f64) -> f64 {
    0.7 * (2.0 * x).sin() + 0.3 * (4.0 * x).cos()
}

fn max_error(section: &str, rows: &[HilbertRow]) -> f64 {
    rows.iter().filter(|r| r.section == section).map(|r| r.error).fold(0.0, f64::max)
}

/// Conjugate pairs, linearity, and the agreement of the two kernels.
pub fn hilbert_demo(s: &Settings) -> Result<ExperimentReport<HilbertRow>> {
    let pv = s.pv(s.nodes.unwrap_or(PV_NODES))?;
    let xs: Vec<f64> = (0..SAMPLES).map(|i| TAU * i as f64 / SAMPLES as f64).collect();
    let mut rows = Vec::new();

    for n in 1..=8 {
        let m = n as f64;
        let (c, sn) = (move |x: f64| (m * x).cos(), move |x: f64| (m * x).sin());
        let (mut ec, mut es) = (0.0f64, 0.0f64);
        for &x in &xs {
            ec = ec.max((hilbert_at(&c, x, &pv)? - (m * x).sin()).abs());
            es = es.max((hilbert_at(&sn, x, &pv)? + (m * x).cos()).abs());
        }
        rows.push(HilbertRow::new("conjugate_cos", m, ec, 0.0));
        rows.push(HilbertRow::new("conjugate_sin", m, es, 0.0));
    }

    rows.push(HilbertRow::new("cos_at_x", 0.7, hilbert_at(&f64::cos, 0.7, &pv)?, 0.7f64.sin()));
    rows.push(HilbertRow::new("constant", 0.0, hilbert_at(&|_: f64| 2.5, 0.7, &pv)?, 0.0));

    for (i, lambda) in [0.0, 0.25, 0.5, 0.8, 1.0].into_iter().enumerate() {
        let x = 0.3 + 1.1 * i as f64;
        let mix = |t: f64| lambda * g1(t) + (1.0 - lambda) * g2(t);
        let lhs = hilbert_at(&mix, x, &pv)?;
        let rhs = lambda * hilbert_at(&g1, x, &pv)? + (1.0 - lambda) * hilbert_at(&g2, x, &pv)?;
        rows.push(HilbertRow::new("linearity", lambda, lhs, rhs));
    }

    // Tan minus linear kernel at ε and ε/2; the error column holds the relative change.
    let half = PVConfig::new(pv.epsilon / 2.0, pv.nodes, Kernel::Tan)?;
    let diff = |cfg: &PVConfig<f64>, x: f64| -> Result<f64> {
        Ok(hilbert_at(&g1, x, cfg)? - hilbert_at(&g1, x, &cfg.with_kernel(Kernel::Linear))?)
    };
    let mut worst_rel = 0.0f64;
    for &x in xs.iter().step_by(8) {
        let (a, b) = (diff(&pv, x)?, diff(&half, x)?);
        let rel = (a - b).abs() / a.abs().max(1e-6);
        worst_rel = worst_rel.max(rel);
        rows.push(HilbertRow { section: "kernel_difference", key: x, value: a, reference: b, error: rel });
    }

    let params = Parameters {
        epsilon: Some(pv.epsilon),
        pv_nodes: Some(pv.nodes),
        angles: Some(SAMPLES),
        ..Parameters::default()
    };
    let mut report = ExperimentReport::new("hilbert-demo", params, ());
    let conj = max_error("conjugate_cos", &rows).max(max_error("conjugate_sin", &rows));
    let lin = max_error("linearity", &rows);
    let cos07 = max_error("cos_at_x", &rows);
    let constant = max_error("constant", &rows);
    report.checks = vec![
        Check::asserted("linearity", lin <= 1e-9, format!("max residual {lin:.3e}")),
        Check::asserted("constant", constant == 0.0, format!("|H(const)| = {constant:e}")),
        Check::observed("conjugate_pairs", conj <= 1e-5, format!("L-inf error {conj:.3e} for n = 1..8")),
        Check::observed("cos_at_0.7", cos07 <= 1e-5, format!("error {cos07:.3e}")),
        Check::observed(
            "kernel_difference_stable",
            worst_rel < 0.01,
            format!("max relative change under epsilon halving {worst_rel:.3e}"),
        ),
    ];
    report.records = rows;
    Ok(report)
}
