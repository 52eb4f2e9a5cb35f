//! CSV, SVG and JSON writers.
//!
//! CSV files have a header row and LF line endings; numbers use Rust's
//! shortest round-trip formatting, so identical inputs give identical bytes.

use std::fmt::Write as _;
use std::io;

use serde::Serialize;
use serde_json::{json, Value};

use crate::one_dim::{Branch, Exponent};
use crate::spectrum::SpectrumCurve;

pub const SCHEMA: &str = "fucik/1";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

fn csv_writer<W: io::Write>(w: W) -> csv::Writer<W> {
    csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(w)
}

fn num(v: f64) -> String {
    format!("{v}")
}

pub const CURVE_HEADER: [&str; 10] = ["t", "alpha", "beta", "source", "c1x", "c1y", "r1", "c2x", "c2y", "r2"];

pub fn write_curve_csv<W: io::Write>(w: W, curve: &SpectrumCurve) -> csv::Result<()> {
    let mut out = csv_writer(w);
    out.write_record(CURVE_HEADER)?;
    for s in &curve.samples {
        let mut row = vec![num(s.t), num(s.alpha), num(s.beta), s.source.as_str().to_string()];
        match &s.witness {
            Some(wt) => row.extend(
                [wt.centers.0.x, wt.centers.0.y, wt.radii.0, wt.centers.1.x, wt.centers.1.y, wt.radii.1].map(num),
            ),
            None => row.extend(std::iter::repeat_n(String::new(), 6)),
        }
        out.write_record(&row)?;
    }
    out.flush()?;
    Ok(())
}

/// One row of a one-dimensional curve table, in `p`-th root coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Curve1DRow {
    pub k: u32,
    pub branch: Branch,
    pub p: Exponent,
    pub s: f64,
    pub alpha_root: f64,
    pub beta_root: f64,
}

pub fn write_curves_1d_csv<W: io::Write>(w: W, rows: &[Curve1DRow]) -> csv::Result<()> {
    let mut out = csv_writer(w);
    out.write_record(["k", "branch", "p", "s", "alpha_root", "beta_root"])?;
    for r in rows {
        out.write_record([
            r.k.to_string(),
            r.branch.to_string(),
            r.p.to_string(),
            num(r.s),
            num(r.alpha_root),
            num(r.beta_root),
        ])?;
    }
    out.flush()?;
    Ok(())
}

pub fn write_profile_csv<W: io::Write>(w: W, xs: &[f64], us: &[f64]) -> csv::Result<()> {
    let mut out = csv_writer(w);
    out.write_record(["x", "u"])?;
    for (x, u) in xs.iter().zip(us) {
        out.write_record([num(*x), num(*u)])?;
    }
    out.flush()?;
    Ok(())
}

/// `{"schema": "fucik/1", "tool_version": …, "kind": kind, "data": data}`.
pub fn envelope<T: Serialize>(kind: &str, data: &T) -> serde_json::Result<Value> {
    Ok(json!({
        "schema": SCHEMA,
        "tool_version": TOOL_VERSION,
        "kind": kind,
        "data": serde_json::to_value(data)?,
    }))
}

/// A polyline in the `(α, β)` plane.
#[derive(Debug, Clone, PartialEq)]
pub struct PlotBranch {
    pub label: String,
    pub points: Vec<(f64, f64)>,
}

/// Curves in the `(α, β)` plane together with the trivial lines at `level`.
#[derive(Debug, Clone, PartialEq)]
pub struct Plot {
    pub title: String,
    pub branches: Vec<PlotBranch>,
    pub trivial_level: f64,
}

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 640.0;
const PAD: f64 = 48.0;
const COLORS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

impl Plot {
    /// Data range over all finite points and the trivial level, widened by 10%.
    fn range(&self) -> (f64, f64, f64, f64) {
        let mut r = (self.trivial_level, self.trivial_level, self.trivial_level, self.trivial_level);
        for (a, b) in self.branches.iter().flat_map(|br| br.points.iter()) {
            if a.is_finite() && b.is_finite() {
                r = (r.0.min(*a), r.1.max(*a), r.2.min(*b), r.3.max(*b));
            }
        }
        let (mut x0, mut x1, mut y0, mut y1) = r;
        let (dx, dy) = ((x1 - x0).max(1e-9), (y1 - y0).max(1e-9));
        x0 -= 0.1 * dx;
        x1 += 0.1 * dx;
        y0 -= 0.1 * dy;
        y1 += 0.1 * dy;
        (x0, x1, y0, y1)
    }

    pub fn to_svg(&self) -> String {
        let (x0, x1, y0, y1) = self.range();
        let sx = |a: f64| PAD + (a - x0) / (x1 - x0) * (WIDTH - 2.0 * PAD);
        let sy = |b: f64| HEIGHT - PAD - (b - y0) / (y1 - y0) * (HEIGHT - 2.0 * PAD);
        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {WIDTH} {HEIGHT}" width="{WIDTH}" height="{HEIGHT}">"#
        );
        let _ = writeln!(s, r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
        let _ = writeln!(s, r#"<text x="{}" y="24" text-anchor="middle" font-size="16">{}</text>"#, WIDTH / 2.0, escape(&self.title));
        // axes frame with range labels
        let _ = writeln!(
            s,
            r#"<rect x="{PAD}" y="{PAD}" width="{}" height="{}" fill="none" stroke="black"/>"#,
            WIDTH - 2.0 * PAD,
            HEIGHT - 2.0 * PAD
        );
        let _ = writeln!(s, r#"<text x="{}" y="{}" text-anchor="middle" font-size="14">α</text>"#, WIDTH / 2.0, HEIGHT - 8.0);
        let _ = writeln!(s, r#"<text x="14" y="{}" text-anchor="middle" font-size="14">β</text>"#, HEIGHT / 2.0);
        for (x, y, anchor, v) in [
            (PAD, HEIGHT - PAD + 16.0, "start", x0),
            (WIDTH - PAD, HEIGHT - PAD + 16.0, "end", x1),
            (PAD - 4.0, HEIGHT - PAD, "end", y0),
            (PAD - 4.0, PAD + 10.0, "end", y1),
        ] {
            let _ = writeln!(s, r#"<text x="{x}" y="{y}" text-anchor="{anchor}" font-size="10">{v:.3}</text>"#);
        }
        let lv = self.trivial_level;
        let _ = writeln!(
            s,
            r#"<line class="trivial" x1="{}" y1="{}" x2="{}" y2="{}" stroke="gray" stroke-dasharray="6 4"/>"#,
            sx(x0),
            sy(lv),
            sx(x1),
            sy(lv)
        );
        let _ = writeln!(
            s,
            r#"<line class="trivial" x1="{}" y1="{}" x2="{}" y2="{}" stroke="gray" stroke-dasharray="6 4"/>"#,
            sx(lv),
            sy(y0),
            sx(lv),
            sy(y1)
        );
        for (i, br) in self.branches.iter().enumerate() {
            let pts: Vec<String> = br
                .points
                .iter()
                .filter(|(a, b)| a.is_finite() && b.is_finite())
                .map(|&(a, b)| format!("{:.3},{:.3}", sx(a), sy(b)))
                .collect();
            let color = COLORS[i % COLORS.len()];
            let _ = writeln!(
                s,
                r#"<polyline class="branch" fill="none" stroke="{color}" stroke-width="1.5" points="{}"><title>{}</title></polyline>"#,
                pts.join(" "),
                escape(&br.label)
            );
            let _ = writeln!(
                s,
                r#"<text x="{}" y="{}" font-size="11" fill="{color}">{}</text>"#,
                WIDTH - PAD - 4.0,
                PAD + 14.0 * (i + 1) as f64,
                escape(&br.label)
            );
        }
        s.push_str("</svg>\n");
        s
    }
}
