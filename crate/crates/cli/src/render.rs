//! SVG rendering of concentric circles, radial rays and a Euclidean grid
//! (left panel) and their images under the Poisson extension (right panel).
//!
//! Polyline coordinates are written in disk units; each panel applies its
//! own `translate`/`scale` transform, so the drawn points can be checked
//! against the unit disk directly.

use std::f64::consts::TAU;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use hqdisk::{Extension, C64};

use crate::error::Result;
use crate::experiments::Settings;
use crate::report::{Check, ExperimentReport, Parameters};

pub const SAMPLES: usize = 256;
pub const RAYS: usize = 24;
pub const GRID_LINES: usize = 21;
const RANGE_TOL: f64 = 1e-6;
const PANEL: f64 = 520.0;
const SCALE: f64 = 240.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CurveKind {
    Circle,
    Ray,
    Grid,
}

impl CurveKind {
    fn class(self) -> &'static str {
        match self {
            Self::Circle => "circle",
            Self::Ray => "ray",
            Self::Grid => "grid",
        }
    }

    fn color(self) -> &'static str {
        match self {
            Self::Circle => "#1f5fa8",
            Self::Ray => "#d9741c",
            Self::Grid => "#9a9a9a",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Curve {
    pub kind: CurveKind,
    /// Radius, ray angle, or grid-line offset.
    pub param: f64,
    pub points: Vec<C64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CurveRow {
    pub curve: usize,
    pub kind: CurveKind,
    pub param: f64,
    pub samples: usize,
    pub max_abs_w: f64,
    /// `max | |w| − r |` for circles.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub radial_deviation: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RenderSummary {
    pub curves: usize,
    pub points: usize,
    pub max_abs_w: f64,
    pub max_radial_deviation: f64,
}

fn linspace(a: f64, b: f64, n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |i| a + (b - a) * i as f64 / (n - 1) as f64)
}

/// Circles of radius `0.1..=0.9`, `RAYS` rays to `r_max`, and the parts of a
/// `GRID_LINES × GRID_LINES` grid on `[−1, 1]²` inside `|z| ≤ r_max`.
pub fn preimage_curves(r_max: f64) -> Vec<Curve> {
    let mut curves = Vec::new();
    for i in 1..=9 {
        let r = 0.1 * i as f64;
        let points = (0..=SAMPLES).map(|k| C64::from_polar(r, TAU * k as f64 / SAMPLES as f64)).collect();
        curves.push(Curve { kind: CurveKind::Circle, param: r, points });
    }
    for j in 0..RAYS {
        let a = TAU * j as f64 / RAYS as f64;
        let points = linspace(0.0, r_max, SAMPLES).map(|r| C64::from_polar(r, a)).collect();
        curves.push(Curve { kind: CurveKind::Ray, param: a, points });
    }
    for c in linspace(-1.0, 1.0, GRID_LINES) {
        if c.abs() >= r_max {
            continue;
        }
        let half = (r_max * r_max - c * c).sqrt();
        let vertical = linspace(-half, half, SAMPLES).map(|y| C64::new(c, y)).collect();
        let horizontal = linspace(-half, half, SAMPLES).map(|x| C64::new(x, c)).collect();
        curves.push(Curve { kind: CurveKind::Grid, param: c, points: vertical });
        curves.push(Curve { kind: CurveKind::Grid, param: c, points: horizontal });
    }
    curves
}

fn image_curves(h: &Extension, curves: &[Curve]) -> Result<Vec<Curve>> {
    curves
        .par_iter()
        .map(|c| {
            let points = c.points.iter().map(|&z| h.extend(z)).collect::<hqdisk::Result<Vec<_>>>()?;
            Ok(Curve { points, ..c.clone() })
        })
        .collect()
}

fn write_panel(svg: &mut String, id: &str, offset: f64, title: &str, curves: &[Curve]) {
    let c = PANEL / 2.0;
    let _ = writeln!(svg, r#"<text x="{}" y="24" text-anchor="middle">{title}</text>"#, offset + c);
    let _ = writeln!(
        svg,
        r#"<g id="{id}" transform="translate({},{c}) scale({SCALE},{})" fill="none" stroke-width="0.8">"#,
        offset + c,
        -SCALE
    );
    let _ = writeln!(
        svg,
        r#"<circle class="boundary" cx="0" cy="0" r="1" stroke="black" vector-effect="non-scaling-stroke"/>"#
    );
    for curve in curves {
        let _ = write!(
            svg,
            r#"<polyline class="{}" data-param="{:.6}" stroke="{}" vector-effect="non-scaling-stroke" points=""#,
            curve.kind.class(),
            curve.param,
            curve.kind.color()
        );
        for (k, p) in curve.points.iter().enumerate() {
            let sep = if k == 0 { "" } else { " " };
            let _ = write!(svg, "{sep}{:.8},{:.8}", p.re, p.im);
        }
        svg.push_str("\"/>\n");
    }
    svg.push_str("</g>\n");
}

fn svg_document(label: &str, pre: &[Curve], img: &[Curve]) -> String {
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{PANEL}" viewBox="0 0 {w} {PANEL}" font-family="sans-serif" font-size="16">"#,
        w = 2.0 * PANEL
    );
    svg.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    write_panel(&mut svg, "preimage", 0.0, "preimage", pre);
    write_panel(&mut svg, "image", PANEL, &format!("image under PT[{label}]"), img);
    svg.push_str("</svg>\n");
    svg
}

pub struct Rendering {
    pub svg: String,
    pub report: ExperimentReport<CurveRow, RenderSummary>,
}

/// Renders the lift named in `s` and verifies range confinement.
pub fn render(s: &Settings) -> Result<Rendering> {
    let cfg = hqdisk::poisson::QuadratureConfig::with_nodes(s.nodes.unwrap_or(8192), s.r_max.unwrap_or(0.99))?;
    let lift = s.lift.build()?;
    let h = Extension::new(lift, cfg);
    let pre = preimage_curves(cfg.r_max);
    let img = image_curves(&h, &pre)?;

    let rows: Vec<CurveRow> = img
        .iter()
        .enumerate()
        .map(|(i, c)| CurveRow {
            curve: i,
            kind: c.kind,
            param: c.param,
            samples: c.points.len(),
            max_abs_w: c.points.iter().map(|w| w.norm()).fold(0.0, f64::max),
            radial_deviation: (c.kind == CurveKind::Circle)
                .then(|| c.points.iter().map(|w| (w.norm() - c.param).abs()).fold(0.0, f64::max)),
        })
        .collect();
    let summary = RenderSummary {
        curves: rows.len(),
        points: rows.iter().map(|r| r.samples).sum(),
        max_abs_w: rows.iter().map(|r| r.max_abs_w).fold(0.0, f64::max),
        max_radial_deviation: rows.iter().filter_map(|r| r.radial_deviation).fold(0.0, f64::max),
    };
    let label = s.lift.to_string();
    let params = Parameters {
        nodes: Some(cfg.nodes),
        r_max: Some(cfg.r_max),
        lift: Some(label.clone()),
        ..Parameters::default()
    };
    let mut report = ExperimentReport::new("render", params, summary);
    let sm = &report.summary;
    let min_samples = rows.iter().map(|r| r.samples).min().unwrap_or(0);
    let mut checks = vec![
        Check::asserted("range_confinement", sm.max_abs_w <= 1.0 + RANGE_TOL, format!("max |w| = {:.9}", sm.max_abs_w)),
        Check::asserted(
            "polyline_samples",
            min_samples >= SAMPLES,
            format!("{} polylines, at least {min_samples} points each", sm.curves),
        ),
    ];
    if s.lift == crate::lifts::LiftName::Identity {
        checks.push(Check::asserted(
            "circles_to_circles",
            sm.max_radial_deviation <= 1e-6,
            format!("max radial deviation {:.3e}", sm.max_radial_deviation),
        ));
    }
    report.checks = checks;
    report.records = rows;
    Ok(Rendering { svg: svg_document(&label, &pre, &img), report })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preimage_stays_in_disk() {
        let curves = preimage_curves(0.99);
        let circles = curves.iter().filter(|c| c.kind == CurveKind::Circle).count();
        let rays = curves.iter().filter(|c| c.kind == CurveKind::Ray).count();
        assert_eq!((circles, rays), (9, RAYS));
        assert_eq!(curves.len() - circles - rays, 2 * (GRID_LINES - 2));
        for c in &curves {
            assert!(c.points.len() >= SAMPLES);
            assert!(c.points.iter().all(|z| z.norm() <= 0.99 + 1e-12));
        }
    }

    #[test]
    fn svg_panels_have_transforms() {
        let pre = preimage_curves(0.9);
        let svg = svg_document("identity", &pre, &pre);
        assert!(svg.starts_with("<svg"));
        assert!(svg.contains(r#"<g id="preimage" transform="translate(260,260) scale(240,-240)""#));
        assert!(svg.contains(r#"<g id="image" transform="translate(780,260)"#));
        assert_eq!(svg.matches("<polyline").count(), 2 * pre.len());
    }
}
