//! Standalone SVG pictures of configurations on their integer grid.

use num::bigint::BigInt;
use num::ToPrimitive;
use riderlab::configs::{GeneratedConfig, Trajectory};
use riderlab::exactmath::lcd;
use std::fmt::Write;

/// Integer picture: grid extent, pieces, and attack segments between pieces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Figure {
    pub width: i64,
    pub height: i64,
    pub pieces: Vec<(i64, i64)>,
    /// Pairs of piece indices.
    pub segments: Vec<(usize, usize)>,
    pub title: String,
}

impl Figure {
    pub fn from_config(c: &GeneratedConfig) -> Figure {
        Figure {
            width: c.width(),
            height: c.height(),
            pieces: c.positions.clone(),
            segments: c.equations.iter().map(|e| (e.i, e.j)).collect(),
            title: format!("{} q={} delta={}", c.kind, c.q(), c.claimed_delta),
        }
    }

    /// Scales the unit-square trajectory by its common denominator.
    pub fn from_trajectory(t: &Trajectory) -> Figure {
        let s = lcd(t.points.iter().flat_map(|p| [&p.0, &p.1]));
        let to_int = |r: &riderlab::exactmath::Rational| {
            let v: BigInt = r.numer() * (&s / r.denom());
            v.to_i64().expect("trajectory too large to draw")
        };
        let pieces: Vec<(i64, i64)> = t.points.iter().map(|p| (to_int(&p.0), to_int(&p.1))).collect();
        let side = s.to_i64().expect("trajectory too large to draw");
        let (width, height) = if pieces.len() > 1 { (side, side) } else { (0, 0) };
        Figure {
            width,
            height,
            segments: (1..pieces.len()).map(|k| (k - 1, k)).collect(),
            pieces,
            title: format!("trajectory delta={s}"),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SvgOptions {
    /// Pixels per grid unit.
    pub cell: u32,
    pub grid: bool,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions { cell: 24, grid: true }
    }
}

/// Grid lines are skipped past this many units per side.
const MAX_GRID_LINES: i64 = 400;

pub fn emit_svg(fig: &Figure, opts: &SvgOptions) -> String {
    let cell = opts.cell.max(4) as i64;
    let m = cell;
    let (w, h) = (fig.width * cell + 2 * m, fig.height * cell + 2 * m);
    let px = |x: i64| m + x * cell;
    let py = |y: i64| m + (fig.height - y) * cell;
    let r = (cell * 2 / 5).max(3);

    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}" data-extent="{}x{}">"#,
        fig.width, fig.height
    )
    .unwrap();
    writeln!(s, "<title>{}</title>", escape(&fig.title)).unwrap();
    writeln!(s, r#"<rect x="0" y="0" width="{w}" height="{h}" fill="white"/>"#).unwrap();
    if opts.grid && fig.width.max(fig.height) <= MAX_GRID_LINES {
        s.push_str(r##"<g stroke="#ccc" stroke-width="1">"##);
        s.push('\n');
        for x in 0..=fig.width {
            writeln!(s, r#"<line x1="{0}" y1="{1}" x2="{0}" y2="{2}"/>"#, px(x), py(0), py(fig.height)).unwrap();
        }
        for y in 0..=fig.height {
            writeln!(s, r#"<line x1="{1}" y1="{0}" x2="{2}" y2="{0}"/>"#, py(y), px(0), px(fig.width)).unwrap();
        }
        s.push_str("</g>\n");
    }
    writeln!(
        s,
        r##"<rect x="{}" y="{}" width="{}" height="{}" fill="none" stroke="#333" stroke-width="2"/>"##,
        px(0),
        py(fig.height),
        fig.width * cell,
        fig.height * cell
    )
    .unwrap();
    if !fig.segments.is_empty() {
        s.push_str(r##"<g stroke="#c33" stroke-width="2">"##);
        s.push('\n');
        for &(i, j) in &fig.segments {
            let (a, b) = (fig.pieces[i], fig.pieces[j]);
            writeln!(s, r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#, px(a.0), py(a.1), px(b.0), py(b.1)).unwrap();
        }
        s.push_str("</g>\n");
    }
    let font = (r * 5 / 4).max(6);
    for (k, &(x, y)) in fig.pieces.iter().enumerate() {
        writeln!(
            s,
            r##"<circle cx="{}" cy="{}" r="{r}" fill="#1f4e99"/><text x="{}" y="{}" font-size="{font}" text-anchor="middle" dominant-baseline="central" fill="white">{}</text>"##,
            px(x),
            py(y),
            px(x),
            py(y),
            k + 1
        )
        .unwrap();
    }
    s.push_str("</svg>\n");
    s
}

fn escape(t: &str) -> String {
    t.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_disk() {
        let f = Figure { width: 0, height: 0, pieces: vec![(0, 0)], segments: vec![], title: "one".into() };
        let s = emit_svg(&f, &SvgOptions::default());
        assert_eq!(s.matches("<circle").count(), 1);
        assert!(s.contains(r#"data-extent="0x0""#));
        assert!(s.ends_with("</svg>\n"));
    }

    #[test]
    fn title_is_escaped() {
        let f = Figure { width: 1, height: 1, pieces: vec![], segments: vec![], title: "a<b&c".into() };
        assert!(emit_svg(&f, &SvgOptions::default()).contains("<title>a&lt;b&amp;c</title>"));
    }

    #[test]
    fn grid_line_count() {
        let f = Figure { width: 3, height: 2, pieces: vec![], segments: vec![], title: String::new() };
        let with = emit_svg(&f, &SvgOptions { cell: 10, grid: true });
        let without = emit_svg(&f, &SvgOptions { cell: 10, grid: false });
        assert_eq!(with.matches("<line").count(), 4 + 3);
        assert_eq!(without.matches("<line").count(), 0);
    }
}
