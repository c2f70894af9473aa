use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::Error;

use super::{LatticeView, MatrixKind, NonZeroCurve, NonZeroRegion};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenderFormat {
    Ascii,
    Svg,
}

impl FromStr for RenderFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "ascii" => Ok(RenderFormat::Ascii),
            "svg" => Ok(RenderFormat::Svg),
            other => Err(Error::UnknownFormat(other.to_string())),
        }
    }
}

const CELL: i64 = 24;

/// Renders a view, optionally overlaid with traced curves and shaded region
/// translates. Output is a pure function of the inputs.
///
/// ASCII uses one character per cell, top row = largest `j`: `+`, `-`, `.`
/// for 1, -1, 0 (and `*` for any larger magnitude). Cells carrying an arrow
/// of one of `curves` print as `>` or `<` instead.
pub fn render(
    view: &LatticeView,
    curves: &[NonZeroCurve],
    region: Option<&NonZeroRegion>,
    format: RenderFormat,
) -> String {
    match format {
        RenderFormat::Ascii => ascii(view, curves),
        RenderFormat::Svg => svg(view, curves, region),
    }
}

fn ascii(view: &LatticeView, curves: &[NonZeroCurve]) -> String {
    let w = view.window;
    if w.is_empty() {
        return String::new();
    }
    let on_curve: std::collections::HashSet<(i64, i64)> = curves
        .iter()
        .flat_map(|c| c.arrows.iter().map(|a| (a.i, a.j)))
        .collect();
    let mut out = String::with_capacity((w.width() + 1) * w.height());
    for j in (w.j0..=w.j1).rev() {
        for i in w.i0..=w.i1 {
            let v = view.get((i, j)).expect("point inside window");
            let ch = match v {
                1 if on_curve.contains(&(i, j)) => '>',
                -1 if on_curve.contains(&(i, j)) => '<',
                1 => '+',
                -1 => '-',
                0 => '.',
                _ => '*',
            };
            out.push(ch);
        }
        out.push('\n');
    }
    out
}

fn svg(view: &LatticeView, curves: &[NonZeroCurve], region: Option<&NonZeroRegion>) -> String {
    let w = view.window;
    let (width, height) = (w.width() as i64 * CELL, w.height() as i64 * CELL);
    let x = |i: i64| (i - w.i0) * CELL;
    let y = |j: i64| (w.j1 - j) * CELL;
    let half = CELL / 2;

    let mut s = String::new();
    s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n");
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">"
    );
    let _ = writeln!(
        s,
        "<title>{} matrix for (p, k) = {}, i = {}..{}, j = {}..{}</title>",
        view.kind, view.params, w.i0, w.i1, w.j0, w.j1
    );
    s.push_str("<defs><marker id=\"head\" markerWidth=\"6\" markerHeight=\"6\" refX=\"5\" refY=\"3\" orient=\"auto\"><path d=\"M0,0 L6,3 L0,6 z\" fill=\"#000000\"/></marker></defs>\n");

    if let (Some(region), false) = (region, w.is_empty()) {
        s.push_str("<g id=\"regions\" stroke=\"none\">\n");
        for (i, j) in w.points() {
            if let Some(cell) = region.locate((i, j)) {
                let fill = if cell.translate.rem_euclid(2) == 0 {
                    "#cfe3f7"
                } else {
                    "#f7e3cf"
                };
                let _ = writeln!(
                    s,
                    "<rect x=\"{}\" y=\"{}\" width=\"{CELL}\" height=\"{CELL}\" fill=\"{fill}\"/>",
                    x(i),
                    y(j)
                );
            }
        }
        s.push_str("</g>\n");
    }

    s.push_str("<g id=\"grid\" fill=\"none\" stroke=\"#999999\" stroke-width=\"0.5\">\n");
    for (i, j) in w.points() {
        let _ = writeln!(
            s,
            "<rect x=\"{}\" y=\"{}\" width=\"{CELL}\" height=\"{CELL}\"/>",
            x(i),
            y(j)
        );
    }
    s.push_str("</g>\n");

    match view.kind {
        MatrixKind::A => {
            s.push_str("<g id=\"arrows\" stroke=\"#000000\" stroke-width=\"1.5\">\n");
            for (i, j) in w.points() {
                let v = view.get((i, j)).expect("point inside window");
                if v == 0 {
                    continue;
                }
                let (cx, cy) = (x(i) + half, y(j) + half);
                let reach = CELL / 3 * v.signum();
                let _ = writeln!(
                    s,
                    "<line x1=\"{}\" y1=\"{cy}\" x2=\"{}\" y2=\"{cy}\" marker-end=\"url(#head)\"/>",
                    cx - reach,
                    cx + reach
                );
            }
            s.push_str("</g>\n");
        }
        MatrixKind::DA => {
            s.push_str("<g id=\"values\" font-family=\"monospace\" font-size=\"10\" text-anchor=\"middle\">\n");
            for (i, j) in w.points() {
                let v = view.get((i, j)).expect("point inside window");
                if v != 0 {
                    let _ = writeln!(
                        s,
                        "<text x=\"{}\" y=\"{}\">{v}</text>",
                        x(i) + half,
                        y(j) + half + 4
                    );
                }
            }
            s.push_str("</g>\n");
        }
    }

    s.push_str("<g id=\"curves\" fill=\"none\" stroke=\"#c03030\" stroke-width=\"2\">\n");
    for curve in curves {
        let points: Vec<String> = curve
            .arrows
            .iter()
            .map(|a| format!("{},{}", x(a.i) + half, y(a.j) + half))
            .collect();
        let _ = writeln!(
            s,
            "<polyline id=\"curve-{}\" points=\"{}\"/>",
            curve.id,
            points.join(" ")
        );
    }
    s.push_str("</g>\n</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::SurgeryParams;
    use crate::lattice::{trace_curves, Lattice, Window};

    fn eleven_two() -> Lattice {
        Lattice::new(SurgeryParams::new(11, 2).unwrap()).unwrap()
    }

    #[test]
    fn ascii_column_reads_alternating() {
        let l = eleven_two();
        let view = l.view(MatrixKind::A, Window::new(0, 2, 0, 4)).unwrap();
        let text = render(&view, &[], None, RenderFormat::Ascii);
        let column: String = text
            .lines()
            .rev()
            .map(|line| line.chars().next().unwrap())
            .collect();
        assert_eq!(column, "+-+-+");
        assert_eq!(text.lines().count(), 5);
        assert!(text.lines().all(|line| line.chars().count() == 3));
    }

    #[test]
    fn ascii_overlay_and_empty() {
        let l = eleven_two();
        let window = Window::new(0, 2, 0, 4);
        let view = l.view(MatrixKind::A, window).unwrap();
        let curves = trace_curves(&l, window);
        let text = render(&view, &curves, None, RenderFormat::Ascii);
        assert!(text.starts_with('>'));
        let empty = l.view(MatrixKind::A, Window::new(3, 2, 0, 0)).unwrap();
        assert_eq!(render(&empty, &[], None, RenderFormat::Ascii), "");
    }

    #[test]
    fn svg_has_one_polyline_per_curve() {
        let l = eleven_two();
        let window = l.fundamental_window();
        let view = l.view(MatrixKind::A, window).unwrap();
        let curves = trace_curves(&l, window);
        let region = l.region().unwrap();
        let doc = render(&view, &curves, Some(&region), RenderFormat::Svg);
        assert_eq!(doc.matches("<polyline").count(), curves.len());
        assert!(doc.contains("version=\"1.1\""));
        assert_eq!(
            doc,
            render(&view, &curves, Some(&region), RenderFormat::Svg)
        );
    }

    #[test]
    fn unknown_format() {
        assert!(
            matches!("png".parse::<RenderFormat>(), Err(Error::UnknownFormat(f)) if f == "png")
        );
    }
}
