//! Minimal self-contained SVG line chart.

use std::fmt::Write as _;

use crate::table::Table;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 360.0;
const MARGIN: f64 = 40.0;

/// Plots the last column holding finite numbers against the row index.
pub fn polyline(table: &Table) -> Option<String> {
    let col = (0..table.columns.len()).rev().find(|&c| {
        !table.rows.is_empty() && table.rows.iter().all(|r| r[c].as_f64().is_some_and(f64::is_finite))
    })?;
    let ys: Vec<f64> = table.rows.iter().map(|r| r[col].as_f64().unwrap()).collect();
    let (lo, hi) = ys.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &y| (a.min(y), b.max(y)));
    let span = if hi > lo { hi - lo } else { 1.0 };
    let n = ys.len().max(2) - 1;
    let mut points = String::new();
    for (i, y) in ys.iter().enumerate() {
        let px = MARGIN + (WIDTH - 2.0 * MARGIN) * i as f64 / n as f64;
        let py = HEIGHT - MARGIN - (HEIGHT - 2.0 * MARGIN) * (y - lo) / span;
        let _ = write!(points, "{px:.2},{py:.2} ");
    }
    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#);
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<polyline fill="none" stroke="steelblue" stroke-width="1.5" points="{}"/>"#,
        points.trim_end()
    );
    let _ = writeln!(s, r#"<text x="{MARGIN}" y="20" font-size="12">{} (min {lo:.3e}, max {hi:.3e})</text>"#, table.columns[col]);
    s.push_str("</svg>\n");
    Some(s)
}
