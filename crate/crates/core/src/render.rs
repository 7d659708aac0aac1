//! SVG drawings of fish and ternary trees.
//!
//! Fish cells are squares turned by 45° and drawn translucent so that
//! overlapping sheets stay visible. Trees are drawn top-down with the
//! abscissa growing to the left.

use std::fmt::Write;

use crate::fish::{Fish, StemKind};
use crate::ternary::TernaryTree;

const UNIT: f64 = 30.0;
const MARGIN: f64 = 20.0;

const HEAD_FILL: &str = "#e07a5f";
const TAIL_FILL: &str = "#3d85c6";
const BRANCH_FILL: &str = "#8e44ad";
const CELL_FILL: &str = "#b0b0b0";

fn svg_open(out: &mut String, width: f64, height: f64) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}">"#
    );
}

pub fn fish_svg(fish: &Fish) -> String {
    let coords = fish.coords();
    let centres: Vec<(f64, f64)> = coords
        .iter()
        .map(|c| (f64::from(c.u + c.v), f64::from(c.u - c.v)))
        .collect();
    let min_x = centres.iter().map(|c| c.0).fold(f64::INFINITY, f64::min) - 1.0;
    let max_x = centres
        .iter()
        .map(|c| c.0)
        .fold(f64::NEG_INFINITY, f64::max)
        + 1.0;
    let min_y = centres.iter().map(|c| c.1).fold(f64::INFINITY, f64::min) - 1.0;
    let max_y = centres
        .iter()
        .map(|c| c.1)
        .fold(f64::NEG_INFINITY, f64::max)
        + 1.0;
    let px = |x: f64| MARGIN + (x - min_x) * UNIT;
    let py = |y: f64| MARGIN + (y - min_y) * UNIT;

    let mut out = String::new();
    svg_open(
        &mut out,
        2.0 * MARGIN + (max_x - min_x) * UNIT,
        2.0 * MARGIN + (max_y - min_y) * UNIT,
    );
    for (id, &(x, y)) in fish.cell_ids().zip(&centres) {
        let kind = fish.stem_kind(id);
        let fill = if id == fish.head() {
            HEAD_FILL
        } else {
            match kind {
                Some(StemKind::Tail) => TAIL_FILL,
                Some(StemKind::Branch) => BRANCH_FILL,
                _ => CELL_FILL,
            }
        };
        let _ = writeln!(
            out,
            r#"  <polygon class="cell" data-cell="{id}" points="{:.1},{:.1} {:.1},{:.1} {:.1},{:.1} {:.1},{:.1}" fill="{fill}" fill-opacity="0.4" stroke="black" stroke-width="1"/>"#,
            px(x - 1.0),
            py(y),
            px(x),
            py(y - 1.0),
            px(x + 1.0),
            py(y),
            px(x),
            py(y + 1.0),
        );
        if kind.is_some() {
            let _ = writeln!(
                out,
                r#"  <circle class="stem" data-cell="{id}" cx="{:.1}" cy="{:.1}" r="4" fill="black"/>"#,
                px(x),
                py(y)
            );
        }
    }
    out.push_str("</svg>\n");
    out
}

pub fn tree_svg(tree: &TernaryTree) -> String {
    let mut out = String::new();
    let Ok(alpha) = tree.abscissas() else {
        svg_open(&mut out, 2.0 * MARGIN, 2.0 * MARGIN);
        out.push_str("</svg>\n");
        return out;
    };
    let labels = tree.labels().expect("nonempty");
    let depth = tree.depths();
    let xs: Vec<f64> = alpha.iter().map(|&a| -(a as f64)).collect();
    let min_x = xs.iter().copied().fold(f64::INFINITY, f64::min);
    let max_x = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let max_depth = depth.iter().copied().max().unwrap_or(0) as f64;
    let px = |x: f64| MARGIN + (x - min_x) * UNIT;
    let py = |d: usize| MARGIN + d as f64 * UNIT;

    svg_open(
        &mut out,
        2.0 * MARGIN + (max_x - min_x) * UNIT,
        2.0 * MARGIN + max_depth * UNIT,
    );
    for node in 0..tree.len() {
        for c in tree.children(node).into_iter().flatten() {
            let _ = writeln!(
                out,
                r#"  <line x1="{:.1}" y1="{:.1}" x2="{:.1}" y2="{:.1}" stroke="black" stroke-width="1.5"/>"#,
                px(xs[node]),
                py(depth[node]),
                px(xs[c]),
                py(depth[c])
            );
        }
    }
    for node in 0..tree.len() {
        let _ = writeln!(
            out,
            r#"  <circle class="node" data-abscissa="{}" cx="{:.1}" cy="{:.1}" r="6" fill="white" stroke="black"/>"#,
            alpha[node],
            px(xs[node]),
            py(depth[node])
        );
        let _ = writeln!(
            out,
            r#"  <text x="{:.1}" y="{:.1}" font-size="10">{}</text>"#,
            px(xs[node]) + 8.0,
            py(depth[node]) + 4.0,
            labels[node]
        );
    }
    out.push_str("</svg>\n");
    out
}
