//! Lattice paths of operator words.
//!
//! A nonzero word walks the integer plane from `* = (0, 0)`: a creation
//! letter of length `k` steps by `(k, k)`, an annihilation letter by
//! `(-k, -k)`, and a vertex letter by `(0, 1)` whatever its exponent. The
//! zero operator gets the empty path. A path has the *-axis property when it
//! is nonempty and ends on `{(0, y) : y >= 0}`.

use std::fmt::Write;

use crate::graph::{DirectedGraph, VertexId};
use crate::groupoid::{to_shadow_word, Exponent, Letter, OperatorWord};

pub type Point = (i64, i64);

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum LatticePath {
    Empty,
    /// Starts at the origin, one further point per letter.
    Points(Vec<Point>),
}

fn step(letter: &Letter) -> Point {
    if letter.element.is_unit() {
        return (0, 1);
    }
    let k = letter.element.len() as i64 * letter.exponent.sign();
    (k, k)
}

impl LatticePath {
    pub fn of(graph: &DirectedGraph, word: &OperatorWord) -> LatticePath {
        if to_shadow_word(graph, word).is_zero() {
            return LatticePath::Empty;
        }
        let mut points = Vec::with_capacity(word.len() + 1);
        let mut at = (0, 0);
        points.push(at);
        for letter in word.letters() {
            let (dx, dy) = step(letter);
            at = (at.0 + dx, at.1 + dy);
            points.push(at);
        }
        LatticePath::Points(points)
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, LatticePath::Empty)
    }

    pub fn points(&self) -> &[Point] {
        match self {
            LatticePath::Empty => &[],
            LatticePath::Points(p) => p,
        }
    }

    pub fn endpoint(&self) -> Option<Point> {
        self.points().last().copied()
    }

    pub fn has_star_axis_property(&self) -> bool {
        matches!(self.endpoint(), Some((0, y)) if y >= 0)
    }

    /// One `x,y` row per point. The empty path is a single comment row.
    pub fn to_csv(&self) -> String {
        if self.is_empty() {
            return "# empty lattice path\n".to_string();
        }
        let mut out = String::new();
        for (x, y) in self.points() {
            let _ = writeln!(out, "{x},{y}");
        }
        out
    }

    /// A single polyline over both axes, with `*` at the origin. Plane `y`
    /// points up, so SVG coordinates use `-y`.
    pub fn to_svg(&self) -> String {
        let pts = self.points();
        let (min_x, max_x, min_y, max_y) = pts.iter().fold((0, 0, 0, 0), |(a, b, c, d), &(x, y)| {
            (a.min(x), b.max(x), c.min(y), d.max(y))
        });
        let (left, top) = (min_x - 1, -(max_y + 1));
        let (width, height) = (max_x - min_x + 2, max_y - min_y + 2);

        let mut out = String::new();
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{left} {top} {width} {height}">"#
        );
        let _ = writeln!(
            out,
            r#"  <line x1="{}" y1="0" x2="{}" y2="0" stroke="gray" stroke-width="0.02"/>"#,
            left,
            left + width
        );
        let _ = writeln!(
            out,
            r#"  <line x1="0" y1="{}" x2="0" y2="{}" stroke="gray" stroke-width="0.02"/>"#,
            top,
            top + height
        );
        let _ = writeln!(
            out,
            r#"  <text x="0.05" y="-0.05" font-size="0.3">*</text>"#
        );
        if pts.is_empty() {
            let _ = writeln!(out, "  <!-- empty lattice path -->");
        } else {
            let coords = pts
                .iter()
                .map(|(x, y)| format!("{x},{}", -y))
                .collect::<Vec<_>>()
                .join(" ");
            let _ = writeln!(
                out,
                r#"  <polyline points="{coords}" fill="none" stroke="black" stroke-width="0.05"/>"#
            );
        }
        out.push_str("</svg>\n");
        out
    }

    pub fn export(&self, format: ExportFormat) -> String {
        match format {
            ExportFormat::Csv => self.to_csv(),
            ExportFormat::Svg => self.to_svg(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Csv,
    Svg,
}

pub fn lattice_path(graph: &DirectedGraph, word: &OperatorWord) -> LatticePath {
    LatticePath::of(graph, word)
}

/// Projection test through the lattice path.
///
/// When the path has the *-axis property the vertex is read off the end
/// letters: the first letter gives its source for a creation and its range
/// for an annihilation, the last letter gives its range for a creation and
/// its source for an annihilation. Both readings must name the same vertex.
pub fn check_projection(graph: &DirectedGraph, word: &OperatorWord) -> Option<VertexId> {
    if !lattice_path(graph, word).has_star_axis_property() {
        return None;
    }
    let letters = word.letters();
    let first = &letters[0];
    let last = &letters[letters.len() - 1];
    let start = match first.exponent {
        Exponent::One => first.element.source(),
        Exponent::Star => first.element.range(),
    };
    let end = match last.exponent {
        Exponent::One => last.element.range(),
        Exponent::Star => last.element.source(),
    };
    (start == end).then_some(start)
}
