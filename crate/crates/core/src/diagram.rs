//! Newton-diagram drawings of sign patterns for two and three variables.
//!
//! Positive points are thick circles labelled `P`, negative points thin
//! circles labelled `N`, and unused lattice points dotted circles. A pattern
//! with no nonzero point renders as a bare header.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::poly::MultiIndex;
use crate::search::{Sign, SignPattern};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiagramFormat {
    Svg,
    Ascii,
}

#[derive(Clone, Debug)]
pub struct DiagramSpec<'a> {
    pub pattern: &'a SignPattern,
    pub format: DiagramFormat,
    /// Shade, for `n = 3`, the triangle of degree-`D` points under each
    /// monomial of the product by `x₁ + x₂ + x₃` that some term reaches,
    /// when all three corners are lattice points.
    pub simplices: bool,
}

const SPACING: f64 = 40.0;
const MARGIN: f64 = 30.0;
const RADIUS: f64 = 10.0;

pub fn render(spec: &DiagramSpec<'_>) -> Result<String> {
    let n = spec.pattern.nvars();
    if n != 2 && n != 3 {
        return Err(Error::UnsupportedDimension(n));
    }
    Ok(match spec.format {
        DiagramFormat::Svg => svg(spec),
        DiagramFormat::Ascii => ascii(spec.pattern),
    })
}

fn position(alpha: &[u32], degree: u32) -> (f64, f64) {
    let h = SPACING * 3f64.sqrt() / 2.0;
    match alpha.len() {
        2 => (MARGIN + SPACING * alpha[1] as f64, MARGIN),
        _ => (
            MARGIN + SPACING * (alpha[1] as f64 + alpha[0] as f64 / 2.0),
            MARGIN + h * (degree as f64 - alpha[0] as f64),
        ),
    }
}

fn q(v: f64) -> String {
    format!("{:.2}", (v * 100.0).round() / 100.0)
}

fn svg(spec: &DiagramSpec<'_>) -> String {
    let pat = spec.pattern;
    let degree = pat.degree();
    let width = 2.0 * MARGIN + SPACING * degree as f64;
    let height = if pat.nvars() == 2 {
        2.0 * MARGIN
    } else {
        2.0 * MARGIN + SPACING * 3f64.sqrt() / 2.0 * degree as f64
    };
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        q(width),
        q(height),
        q(width),
        q(height)
    );
    if pat.nonzero().next().is_none() {
        out.push_str("</svg>\n");
        return out;
    }
    if spec.simplices && pat.nvars() == 3 {
        let mut tops: Vec<MultiIndex> = pat
            .nonzero()
            .flat_map(|(a, _)| (0..3).map(move |k| a.add(&MultiIndex::unit(3, k))))
            .collect();
        tops.retain(|t| t.exps().iter().all(|&e| e >= 1));
        tops.sort();
        tops.dedup();
        for top in tops {
            let corners: Vec<String> = (0..3)
                .map(|k| {
                    let c = top.checked_sub(&MultiIndex::unit(3, k)).expect("corner is a lattice point");
                    let (x, y) = position(c.exps(), degree);
                    format!("{},{}", q(x), q(y))
                })
                .collect();
            let _ = writeln!(
                out,
                r#"  <polygon class="simplex" points="{}" fill="gray" fill-opacity="0.25" stroke="none"/>"#,
                corners.join(" ")
            );
        }
    }
    for alpha in pat.lattice() {
        let (x, y) = position(alpha.exps(), degree);
        let (class, width, dash, label) = match pat.sign(&alpha) {
            Sign::Pos => ("pos", "3", "", "P"),
            Sign::Neg => ("neg", "1", "", "N"),
            Sign::Zero => ("zero", "1", r#" stroke-dasharray="2,2""#, ""),
        };
        let _ = writeln!(
            out,
            r#"  <circle class="{class}" cx="{}" cy="{}" r="{}" fill="white" stroke="black" stroke-width="{width}"{dash}/>"#,
            q(x),
            q(y),
            q(RADIUS)
        );
        if !label.is_empty() {
            let _ = writeln!(
                out,
                r#"  <text x="{}" y="{}" text-anchor="middle" font-size="11">{label}</text>"#,
                q(x),
                q(y + 4.0)
            );
        }
    }
    out.push_str("</svg>\n");
    out
}

fn glyph(s: Sign) -> char {
    match s {
        Sign::Pos => 'P',
        Sign::Neg => 'N',
        Sign::Zero => '.',
    }
}

fn ascii(pat: &SignPattern) -> String {
    let c = pat.counts();
    let degree = pat.degree();
    let mut out = format!("# n={} D={} P={} N={}\n", pat.nvars(), degree, c.n_plus, c.n_minus);
    if pat.nonzero().next().is_none() {
        return out;
    }
    if pat.nvars() == 2 {
        let row: Vec<String> =
            (0..=degree).map(|j| glyph(pat.sign(&MultiIndex::new(vec![degree - j, j]))).to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
        return out;
    }
    for a1 in (0..=degree).rev() {
        let row: Vec<String> = (0..=degree - a1)
            .map(|a2| glyph(pat.sign(&MultiIndex::new(vec![a1, a2, degree - a1 - a2]))).to_string())
            .collect();
        let _ = writeln!(out, "{}{}", " ".repeat(a1 as usize), row.join(" "));
    }
    out
}
