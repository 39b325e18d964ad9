//! SVG drawings of `R_n` (grey) and `Q_n` (black) on the unit disk, with
//! chords drawn as hyperbolic geodesics.

use std::f64::consts::PI;
use std::fmt::Write as _;

use crate::circle::{Angle, Arc};
use crate::components::HyperbolicComponent;
use crate::error::{Error, Result};
use crate::lamination::{polygon_edges, Edge, Leaf, RQTrace, Stage};

const GREY: &str = "#9a9a9a";
const BLACK: &str = "#000000";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Step {
    One(usize),
    /// Every step `0..=N` side by side.
    All,
}

#[derive(Clone, Debug)]
pub struct RenderSpec {
    pub component: HyperbolicComponent,
    pub step: Step,
    /// Side of one disk panel, in pixels.
    pub size: u32,
    pub labels: bool,
}

impl RenderSpec {
    pub fn new(component: HyperbolicComponent, step: Step) -> RenderSpec {
        RenderSpec { component, step, size: 320, labels: true }
    }
}

struct Panel {
    cx: f64,
    cy: f64,
    r: f64,
}

impl Panel {
    fn point(&self, theta: &Angle) -> (f64, f64) {
        self.at(theta.to_f64())
    }

    fn at(&self, t: f64) -> (f64, f64) {
        let phi = 2.0 * PI * t;
        (self.cx + self.r * phi.cos(), self.cy - self.r * phi.sin())
    }
}

fn num(x: f64) -> String {
    let s = format!("{x:.3}");
    if s == "-0.000" {
        "0.000".into()
    } else {
        s
    }
}

fn arc_path(p: &Panel, arc: &Arc) -> String {
    if arc.is_full() {
        return format!(
            "M {} {} A {r} {r} 0 1 0 {} {} A {r} {r} 0 1 0 {} {}",
            num(p.cx + p.r),
            num(p.cy),
            num(p.cx - p.r),
            num(p.cy),
            num(p.cx + p.r),
            num(p.cy),
            r = num(p.r)
        );
    }
    let (x1, y1) = p.point(&arc.start);
    let (x2, y2) = p.point(&arc.end);
    let large = if arc.length().to_f64() > 0.5 { 1 } else { 0 };
    format!("M {} {} A {r} {r} 0 {large} 0 {} {}", num(x1), num(y1), num(x2), num(y2), r = num(p.r))
}

/// The geodesic of the disk joining the endpoints: an arc of the circle
/// orthogonal to the boundary, or a diameter.
fn leaf_path(p: &Panel, leaf: &Leaf) -> String {
    let (a, b) = leaf.endpoints();
    let (x1, y1) = p.point(a);
    let (x2, y2) = p.point(b);
    let (ta, tb) = (a.to_f64() * 2.0 * PI, b.to_f64() * 2.0 * PI);
    let mut sep = (tb - ta).rem_euclid(2.0 * PI);
    let mut mid = ta + sep / 2.0;
    if sep > PI {
        sep = 2.0 * PI - sep;
        mid = tb + sep / 2.0;
    }
    let delta = sep / 2.0;
    if (PI / 2.0 - delta).abs() < 1e-9 {
        return format!("M {} {} L {} {}", num(x1), num(y1), num(x2), num(y2));
    }
    let radius = p.r * delta.tan();
    let dist = p.r / delta.cos();
    let (cx, cy) = (p.cx + dist * mid.cos(), p.cy - dist * mid.sin());
    let cross = (x2 - x1) * (cy - y1) - (y2 - y1) * (cx - x1);
    let sweep = if cross > 0.0 { 1 } else { 0 };
    format!("M {} {} A {R} {R} 0 0 {sweep} {} {}", num(x1), num(y1), num(x2), num(y2), R = num(radius))
}

fn draw_edges(out: &mut String, p: &Panel, edges: &[Edge], colour: &str, width: f64) {
    for e in edges {
        match e {
            Edge::Arc(arc) if arc.is_point() => {
                let (x, y) = p.point(&arc.start);
                let _ = writeln!(out, r#"  <circle cx="{}" cy="{}" r="{}" fill="{colour}"/>"#, num(x), num(y), num(width * 1.5));
            }
            Edge::Arc(arc) => {
                let _ = writeln!(
                    out,
                    r#"  <path d="{}" fill="none" stroke="{colour}" stroke-width="{}"/>"#,
                    arc_path(p, arc),
                    num(width)
                );
            }
            Edge::Leaf(leaf) => {
                let _ = writeln!(
                    out,
                    r#"  <path d="{}" fill="none" stroke="{colour}" stroke-width="{}"/>"#,
                    leaf_path(p, leaf),
                    num(width / 2.0)
                );
            }
        }
    }
}

fn draw_panel(out: &mut String, trace: &RQTrace, n: usize, p: &Panel, labels: bool) {
    let _ = writeln!(
        out,
        r#"  <circle cx="{}" cy="{}" r="{}" fill="none" stroke="{BLACK}" stroke-width="0.5"/>"#,
        num(p.cx),
        num(p.cy),
        num(p.r)
    );
    draw_edges(out, p, &polygon_edges(trace, n, Stage::R), GREY, 4.0);
    if n < trace.period() {
        draw_edges(out, p, &polygon_edges(trace, n, Stage::Q), BLACK, 4.0);
    }
    let _ = writeln!(
        out,
        r#"  <text x="{}" y="{}" font-family="serif" font-size="14" text-anchor="middle">n = {n}</text>"#,
        num(p.cx),
        num(p.cy + p.r + 36.0)
    );
    if !labels {
        return;
    }
    let den = trace.denominator();
    let marks = trace.marks(n);
    let mut ends = trace.r(n).endpoints();
    if n < trace.period() {
        ends.extend(trace.q(n).endpoints());
    }
    ends.sort();
    ends.dedup();
    let outer = Panel { cx: p.cx, cy: p.cy, r: p.r + 16.0 };
    for e in ends {
        let (x, y) = outer.point(&e);
        let mut label = e.numerator_over(den).map(|v| v.to_string()).unwrap_or_else(|| e.to_string());
        if marks.contains(&e) {
            label.push('ᵉ');
        }
        let _ = writeln!(
            out,
            r#"  <text x="{}" y="{}" font-family="serif" font-size="11" text-anchor="middle" dominant-baseline="middle">{label}</text>"#,
            num(x),
            num(y)
        );
    }
}

/// An SVG 1.1 document for the requested step(s) of `trace`.
pub fn render_svg(trace: &RQTrace, spec: &RenderSpec) -> Result<String> {
    let steps: Vec<usize> = match spec.step {
        Step::One(n) if n <= trace.period() => vec![n],
        Step::One(n) => {
            return Err(Error::Precondition(format!("step {n} exceeds per(H) = {}", trace.period())));
        }
        Step::All => (0..=trace.period()).collect(),
    };
    let size = spec.size.max(120) as f64;
    let width = size * steps.len() as f64;
    let height = size + 24.0;
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        num(width),
        num(height),
        num(width),
        num(height)
    );
    let h = trace.component();
    let _ = writeln!(out, "  <title>R_n and Q_n for ({},{}) over {}</title>", h.theta_minus(), h.theta_plus(), trace.denominator());
    for (i, &n) in steps.iter().enumerate() {
        let panel = Panel { cx: size * (i as f64 + 0.5), cy: size / 2.0, r: size / 2.0 - 44.0 };
        let _ = writeln!(out, r#"  <g id="step-{n}">"#);
        draw_panel(&mut out, trace, n, &panel, spec.labels);
        let _ = writeln!(out, "  </g>");
    }
    let _ = writeln!(out, "</svg>");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::components::pair_periodic_angles;
    use crate::lamination::rq_trace;

    #[test]
    fn deterministic_and_labelled() {
        let pool = pair_periodic_angles(5).unwrap();
        let h = HyperbolicComponent::from_fractions((13, 31), (18, 31)).unwrap();
        let trace = rq_trace(&h, &pool).unwrap();
        let spec = RenderSpec::new(h.clone(), Step::All);
        let a = render_svg(&trace, &spec).unwrap();
        let b = render_svg(&trace, &spec).unwrap();
        assert_eq!(a, b);
        assert!(a.contains("version=\"1.1\""));
        assert_eq!(a.matches("<g id=\"step-").count(), 6);
        let three = render_svg(&trace, &RenderSpec::new(h.clone(), Step::One(3))).unwrap();
        for label in [">18<", ">20ᵉ<", ">42ᵉ<", ">44<"] {
            assert!(three.contains(label), "{label}");
        }
        assert!(render_svg(&trace, &RenderSpec::new(h, Step::One(6))).is_err());
    }

    #[test]
    fn geodesic_is_orthogonal_circle() {
        let p = Panel { cx: 0.0, cy: 0.0, r: 1.0 };
        let leaf = Leaf::new(Angle::new(0, 1), Angle::new(1, 4)).unwrap();
        let d = leaf_path(&p, &leaf);
        // separation π/2: radius tan(π/4) = 1
        assert!(d.contains("A 1.000 1.000"), "{d}");
        let diam = Leaf::new(Angle::new(0, 1), Angle::new(1, 2)).unwrap();
        assert!(leaf_path(&p, &diam).contains(" L "));
    }
}
