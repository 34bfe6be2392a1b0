//! CSV, SVG and JSON renderings of command results.

use std::fmt::Write as _;

use booth_core::curves::extent;
use booth_core::geometry::CurveSample;
use serde::Serialize;

pub const REPORT_VERSION: u32 = 1;

/// `phi,x,y` with 17 significant digits; loops follow one another.
pub fn curve_csv(loops: &[Vec<CurveSample>]) -> String {
    let mut out = String::from("phi,x,y\n");
    for s in loops.iter().flatten() {
        let _ = writeln!(out, "{:.16e},{:.16e},{:.16e}", s.phi, s.point.x, s.point.y);
    }
    out
}

/// One closed path per loop. The y axis is flipped so the picture has the
/// mathematical orientation; the viewBox is the data extent padded by 5%.
pub fn curve_svg(loops: &[Vec<CurveSample>]) -> String {
    let (x0, x1, y0, y1) = extent(loops.iter().flatten().map(|s| &s.point)).unwrap_or((-1.0, 1.0, -1.0, 1.0));
    let (w, h) = ((x1 - x0).max(1e-12), (y1 - y0).max(1e-12));
    let (px, py) = (0.05 * w, 0.05 * h);
    let stroke = 0.002 * w.max(h);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}">"#,
        x0 - px,
        -y1 - py,
        w + 2.0 * px,
        h + 2.0 * py
    );
    for lp in loops.iter().filter(|lp| !lp.is_empty()) {
        let mut d = String::new();
        for (i, s) in lp.iter().enumerate() {
            let _ = write!(d, "{}{:.9} {:.9} ", if i == 0 { "M" } else { "L" }, s.point.x, -s.point.y);
        }
        d.push('Z');
        let _ = writeln!(out, r#"  <path d="{d}" fill="none" stroke="black" stroke-width="{stroke:.6}"/>"#);
    }
    out.push_str("</svg>\n");
    out
}

/// Wraps a payload with the report version and command name, preserving
/// the payload's field order.
#[derive(Serialize)]
pub struct Envelope<'a, T: Serialize> {
    pub version: u32,
    pub command: &'a str,
    #[serde(flatten)]
    pub body: T,
}

pub fn json<T: Serialize>(command: &str, body: T) -> String {
    let env = Envelope { version: REPORT_VERSION, command, body };
    let mut s = serde_json::to_string_pretty(&env).expect("reports serialize");
    s.push('\n');
    s
}
