//! Kite diagram: the slice of the multiplicity-4 Kunz cone with every
//! enumerated Apéry point plotted and colored by its minimal embedding
//! dimension.

use std::fmt::{self, Write as _};
use std::io;
use std::path::Path;

use crate::honest::{point_record, HonestError};
use crate::kunz::{enumerate_points, kite_projection, PointRecord, KITE_VERTICES};

/// Layout and colors. Fixed so output is byte-stable.
pub struct SvgStyle {
    pub width: f64,
    pub height: f64,
    pub margin: f64,
    pub legend_height: f64,
    pub point_radius: f64,
    pub outline: &'static str,
    pub fill: &'static str,
    /// Colors for `me = 2, 3, 4`.
    pub me_colors: [&'static str; 3],
    pub font_size: f64,
}

pub const STYLE: SvgStyle = SvgStyle {
    width: 480.0,
    height: 600.0,
    margin: 30.0,
    legend_height: 70.0,
    point_radius: 3.0,
    outline: "#333333",
    fill: "#f4f1e8",
    me_colors: ["#1b9e77", "#d95f02", "#7570b3"],
    font_size: 13.0,
};

/// Maps kite coordinates to the drawing area, `v` pointing up.
struct Frame {
    u_min: f64,
    v_max: f64,
    scale: f64,
    left: f64,
    top: f64,
}

impl Frame {
    fn new(style: &SvgStyle) -> Self {
        let corners: Vec<(f64, f64)> = KITE_VERTICES
            .iter()
            .map(|&x| {
                let (u, v) = kite_projection(x);
                (u.to_f64(), v.to_f64())
            })
            .collect();
        let u_min = corners.iter().map(|c| c.0).fold(f64::INFINITY, f64::min);
        let u_max = corners.iter().map(|c| c.0).fold(f64::NEG_INFINITY, f64::max);
        let v_min = corners.iter().map(|c| c.1).fold(f64::INFINITY, f64::min);
        let v_max = corners.iter().map(|c| c.1).fold(f64::NEG_INFINITY, f64::max);
        let avail_w = style.width - 2.0 * style.margin;
        let avail_h = style.height - 2.0 * style.margin - style.legend_height;
        let scale = (avail_w / (u_max - u_min)).min(avail_h / (v_max - v_min));
        let left = style.margin + (avail_w - scale * (u_max - u_min)) / 2.0;
        Frame {
            u_min,
            v_max,
            scale,
            left,
            top: style.margin,
        }
    }

    fn place(&self, x: [u64; 3]) -> (f64, f64) {
        let (u, v) = kite_projection(x);
        (
            self.left + (u.to_f64() - self.u_min) * self.scale,
            self.top + (self.v_max - v.to_f64()) * self.scale,
        )
    }
}

/// Point records plotted for `bound`, in enumeration order.
pub fn kite_records(bound: u64) -> Result<Vec<PointRecord>, HonestError> {
    enumerate_points(bound)
        .iter()
        .map(|(p, face)| point_record(p, face))
        .collect()
}

pub fn render_kite_svg(bound: u64) -> Result<String, HonestError> {
    let records = kite_records(bound)?;
    Ok(render_records(bound, &records, &STYLE))
}

fn render_records(bound: u64, records: &[PointRecord], style: &SvgStyle) -> String {
    let mut svg = String::new();
    write_svg(&mut svg, bound, records, style).expect("writing to a String");
    svg
}

fn write_svg(w: &mut String, bound: u64, records: &[PointRecord], style: &SvgStyle) -> fmt::Result {
    let frame = Frame::new(style);
    writeln!(w, r#"<?xml version="1.0" encoding="UTF-8"?>"#)?;
    writeln!(
        w,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{:.0}" height="{:.0}" viewBox="0 0 {:.0} {:.0}">"#,
        style.width, style.height, style.width, style.height
    )?;
    writeln!(w, "<title>Kunz cone slice, multiplicity 4, bound {bound}</title>")?;
    writeln!(w, "<style>")?;
    for (i, color) in style.me_colors.iter().enumerate() {
        writeln!(w, ".me{} {{ fill: {color}; }}", i + 2)?;
    }
    writeln!(w, "</style>")?;

    let outline: Vec<String> = KITE_VERTICES
        .iter()
        .map(|&x| {
            let (px, py) = frame.place(x);
            format!("{px:.2},{py:.2}")
        })
        .collect();
    writeln!(
        w,
        r#"<polygon id="kite" points="{}" fill="{}" stroke="{}" stroke-width="1.5"/>"#,
        outline.join(" "),
        style.fill,
        style.outline
    )?;

    writeln!(w, r#"<g id="points">"#)?;
    for r in records {
        let (px, py) = frame.place(r.x);
        writeln!(
            w,
            r#"<circle class="me{}" cx="{px:.2}" cy="{py:.2}" r="{:.1}"><title>({}, {}, {}) {} e={} me={}</title></circle>"#,
            r.me, style.point_radius, r.x[0], r.x[1], r.x[2], r.face, r.e, r.me
        )?;
    }
    writeln!(w, "</g>")?;

    let legend_top = style.height - style.margin - style.legend_height + 20.0;
    writeln!(w, r#"<g id="legend" font-family="sans-serif" font-size="{:.0}">"#, style.font_size)?;
    for (i, _) in style.me_colors.iter().enumerate() {
        let me = i + 2;
        let count = records.iter().filter(|r| r.me == me).count();
        let x = style.margin + i as f64 * (style.width - 2.0 * style.margin) / 3.0;
        writeln!(
            w,
            r#"<circle class="me{me}" cx="{:.2}" cy="{legend_top:.2}" r="{:.1}"/>"#,
            x + 6.0,
            style.point_radius * 2.0
        )?;
        writeln!(
            w,
            r#"<text x="{:.2}" y="{:.2}">me = {me} ({count})</text>"#,
            x + 16.0,
            legend_top + style.font_size / 3.0
        )?;
    }
    writeln!(
        w,
        r#"<text x="{:.2}" y="{:.2}">{} points with x1, x2, x3 &lt;= {bound}</text>"#,
        style.margin,
        legend_top + 2.0 * style.font_size,
        records.len()
    )?;
    writeln!(w, "</g>")?;
    writeln!(w, "</svg>")
}

#[derive(Debug, thiserror::Error)]
pub enum SvgError {
    #[error(transparent)]
    Honest(#[from] HonestError),
    #[error("cannot write {path}: {source}")]
    Io { path: String, source: io::Error },
}

/// Renders the diagram for `bound` to `out` and returns the plotted points.
pub fn emit_kite_svg(bound: u64, out: &Path) -> Result<Vec<PointRecord>, SvgError> {
    let records = kite_records(bound)?;
    let svg = render_records(bound, &records, &STYLE);
    std::fs::write(out, svg).map_err(|source| SvgError::Io {
        path: out.display().to_string(),
        source,
    })?;
    Ok(records)
}
