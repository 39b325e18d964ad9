//! Worked examples: the `R_n` / `Q_n` orbits of a component written as
//! numerators over a common denominator, with `ᵉ` on images of the endpoints
//! of `Π₁(H)`.

use std::fmt::Write as _;

use num_bigint::BigUint;
use serde::Serialize;

use crate::circle::{Angle, Arc, ArcSet};
use crate::coding::{symbols_to_string, Symbol};
use crate::components::{conspicuous_components, ComponentPool, HyperbolicComponent};
use crate::error::Result;
use crate::lamination::{leaves_of, BracketStyle, RQTrace, SplitOrder};
use crate::verify::verify_with;

/// Presentation settings of one worked example.
#[derive(Clone, Debug)]
pub struct ExampleSpec {
    pub label: String,
    pub component: HyperbolicComponent,
    pub style: BracketStyle,
    pub order: SplitOrder,
}

/// The four standard examples with their presentation settings.
pub fn appendix_examples() -> Vec<ExampleSpec> {
    let mk = |label: &str, m: (u64, u64), p: (u64, u64), style, order| ExampleSpec {
        label: label.to_string(),
        component: HyperbolicComponent::from_fractions(m, p).expect("valid example component"),
        style,
        order,
    };
    vec![
        mk("Example 1", (13, 31), (18, 31), BracketStyle::Exact, SplitOrder::Sorted),
        mk("Example 2", (2, 5), (3, 5), BracketStyle::Interior, SplitOrder::Sorted),
        mk("Example 3", (26, 63), (37, 63), BracketStyle::Interior, SplitOrder::Sorted),
        mk("Example 4", (10, 63), (17, 63), BracketStyle::Interior, SplitOrder::AlongArc),
    ]
}

#[derive(Clone, Debug, Serialize)]
pub struct ComponentSummary {
    pub name: Option<&'static str>,
    /// `Π₁(H)` with both ends over `2^per − 1`.
    pub wake_over_period: String,
    pub theta_minus: Angle,
    pub theta_plus: Angle,
    pub period: usize,
    pub kneading: String,
    pub discarded: String,
}

impl ComponentSummary {
    fn of(h: &HyperbolicComponent) -> ComponentSummary {
        let den = (BigUint::from(1u32) << h.period()) - 1u32;
        ComponentSummary {
            name: h.name(),
            wake_over_period: format!("[{},{}]", over(h.theta_minus(), &den), over(h.theta_plus(), &den)),
            theta_minus: h.theta_minus().clone(),
            theta_plus: h.theta_plus().clone(),
            period: h.period(),
            kneading: symbols_to_string(h.kneading()),
            discarded: symbols_to_string(h.discarded_kneading()),
        }
    }
}

/// One run of consecutive images, ending at a return time or at `N`.
#[derive(Clone, Debug, Serialize)]
pub struct Segment {
    /// `R` or `Q` index of the first set shown.
    pub from: usize,
    pub to: usize,
    pub sets: Vec<String>,
    /// Possible codings of the last set.
    pub codings: Vec<String>,
    /// The coding continued into the next segment, if any.
    pub continues_with: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FlipNote {
    pub major: String,
    pub major_prime: String,
    pub half_period: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExceptionalNote {
    pub angle: Angle,
    pub itinerary: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Example {
    pub label: String,
    pub component: ComponentSummary,
    pub conspicuous: Vec<ComponentSummary>,
    pub star_piece: String,
    pub a_piece: String,
    pub b_piece: String,
    pub denominator: String,
    pub interior: bool,
    pub segments: Vec<Segment>,
    pub flip: Option<FlipNote>,
    pub exceptional: Vec<ExceptionalNote>,
}

fn over(a: &Angle, den: &BigUint) -> String {
    match a.numerator_over(den) {
        Some(n) => format!("{n}/{den}"),
        None => a.to_string(),
    }
}

fn arcs_over(set: &ArcSet, den: &BigUint) -> String {
    set.arcs()
        .iter()
        .map(|arc: &Arc| {
            let l = if arc.start_closed { '[' } else { '(' };
            let r = if arc.end_closed { ']' } else { ')' };
            format!("{l}{},{}{r}", over(&arc.start, den), over(&arc.end, den))
        })
        .collect::<Vec<_>>()
        .join("∪")
}

fn word(symbols: &[Symbol]) -> String {
    symbols_to_string(symbols)
}

pub fn build_example(spec: &ExampleSpec, pool: &ComponentPool) -> Result<Example> {
    let h = &spec.component;
    let conspicuous = conspicuous_components(h, pool)?;
    let mut proper: Vec<&HyperbolicComponent> = conspicuous.iter().filter(|c| *c != h).collect();
    proper.sort_by_key(|c| c.period());
    let times: Vec<usize> = proper.iter().map(|c| c.period()).collect();
    let trace = RQTrace::build(h, &times, spec.order)?;
    let den = trace.denominator().clone();
    let partition = h.star_spec().partition();
    let piece = |s: Symbol| arcs_over(&partition.piece(s).expect("star piece"), &den);
    let n_max = h.period();
    let k = h.kneading();

    let mut segments = Vec::new();
    let mut bounds = vec![1];
    bounds.extend(times.iter().copied());
    bounds.push(n_max);
    for (j, pair) in bounds.windows(2).enumerate() {
        let (from, to) = (pair[0], pair[1]);
        let mut sets = Vec::new();
        if j == 0 {
            sets.push(trace.format_r(1, spec.style));
        } else {
            sets.push(trace.format_q(from, spec.style));
        }
        for n in from + 1..=to {
            sets.push(trace.format_r(n, spec.style));
        }
        let (codings, continues_with) = if to == n_max {
            (vec![word(k), word(&h.discarded_star())], None)
        } else {
            let c = proper.iter().find(|c| c.period() == to).expect("return time component");
            let cont = word(&k[..to]);
            (vec![word(c.kneading()), word(&c.discarded_star()), cont.clone()], Some(cont))
        };
        segments.push(Segment { from, to, sets, codings, continues_with });
    }

    let leaves = leaves_of(h)?;
    let flip = leaves.flip.then(|| FlipNote {
        major: leaves.major.to_string(),
        major_prime: leaves.major_prime.to_string(),
        half_period: n_max / 2,
    });
    let report = verify_with(h, conspicuous.clone())?;
    let star_partition = h.star_spec().partition();
    let exceptional = report
        .residual_points
        .iter()
        .map(|p| ExceptionalNote { angle: p.clone(), itinerary: star_partition.itinerary_word(p).to_string() })
        .collect();

    Ok(Example {
        label: spec.label.clone(),
        component: ComponentSummary::of(h),
        conspicuous: proper.iter().map(|c| ComponentSummary::of(c)).collect(),
        star_piece: piece(Symbol::Star),
        a_piece: piece(Symbol::A),
        b_piece: piece(Symbol::B),
        denominator: den.to_string(),
        interior: spec.style == BracketStyle::Interior,
        segments,
        flip,
        exceptional,
    })
}

fn either(codings: &[String]) -> String {
    match codings {
        [] => String::new(),
        [one] => one.clone(),
        [init @ .., last] => format!("{} or {last}", init.join(", ")),
    }
}

fn wake(c: &ComponentSummary) -> String {
    let reduced = format!("[{},{}]", c.theta_minus, c.theta_plus);
    if reduced == c.wake_over_period {
        reduced
    } else {
        format!("{reduced} = {}", c.wake_over_period)
    }
}

impl Example {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let c = &self.component;
        let name = c.name.map(|n| format!(" ({n})")).unwrap_or_default();
        let _ = writeln!(s, "{}. H = ({},{}){name}", self.label, c.theta_minus, c.theta_plus);
        let _ = writeln!(
            s,
            "  Π₁(H) = [{},{}], ⋆-piece = {}, A-piece = {}, B-piece = {}, K(H) = {}, K̂(H) = {}, per(H) = {}",
            c.theta_minus, c.theta_plus, self.star_piece, self.a_piece, self.b_piece, c.kneading, c.discarded, c.period
        );
        for h in &self.conspicuous {
            let name = h.name.map(|n| format!(" ({n})")).unwrap_or_default();
            let _ = writeln!(
                s,
                "  conspicuous: Π₁ = {}{name}, K = {}, K̂ = {}, per = {}",
                wake(h), h.kneading, h.discarded, h.period
            );
        }
        let _ = writeln!(s, "  numerators over {}:", self.denominator);
        for (j, seg) in self.segments.iter().enumerate() {
            let chain = seg.sets.join(" ↦ ");
            if j == 0 {
                let head = if self.interior { "int(Π₁(H))=" } else { "Π₁(H)=" };
                let _ = writeln!(s, "  {head}{chain}");
            } else {
                let _ = writeln!(s, "  {chain}");
            }
            let _ = writeln!(s, "  whose coding is either {}.", either(&seg.codings));
            if let Some(cont) = &seg.continues_with {
                let _ = writeln!(s, "  The {cont}-part of the last image is mapped as");
            }
        }
        if let Some(f) = &self.flip {
            let _ = writeln!(
                s,
                "  Remark: ℓ₀ = {} is invariant but flipped by σ^{}; ℓ₀′ = {}.",
                f.major, f.half_period, f.major_prime
            );
        }
        if !self.exceptional.is_empty() {
            let list = self
                .exceptional
                .iter()
                .map(|e| format!("I_H({}) = {}", e.angle, e.itinerary))
                .collect::<Vec<_>>()
                .join(", ");
            let _ = writeln!(s, "  Uncovered points of Π₁(H), all in Ξ(H): {list}.");
        }
        s
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AppendixReport {
    pub examples: Vec<Example>,
}

impl AppendixReport {
    pub fn to_text(&self) -> String {
        self.examples.iter().map(Example::to_text).collect::<Vec<_>>().join("\n")
    }
}

/// Examples 1–4 regenerated from scratch; `pool` must reach period 6.
pub fn appendix_a(pool: &ComponentPool) -> Result<AppendixReport> {
    pool.require_period(6)?;
    let examples = appendix_examples().iter().map(|e| build_example(e, pool)).collect::<Result<_>>()?;
    Ok(AppendixReport { examples })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::components::pair_periodic_angles;

    #[test]
    fn example_two_text() {
        let pool = pair_periodic_angles(6).unwrap();
        let spec = &appendix_examples()[1];
        let text = build_example(spec, &pool).unwrap().to_text();
        assert!(text.contains("int(Π₁(H))=(4ᵉ,6ᵉ) ↦ (8ᵉ,2ᵉ) ↦ (6ᵉ,4ᵉ)"), "{text}");
        assert!(text.contains("whose coding is either BAA, BA⋆ or BAB."), "{text}");
        assert!(text.contains("(3,4ᵉ)∪(6ᵉ,7) ↦ (6,8ᵉ)∪(2ᵉ,4)"), "{text}");
        assert!(text.contains("whose coding is either BABB or BAB⋆."), "{text}");
        assert!(text.contains("ℓ₀ = {1/5,4/5} is invariant but flipped by σ^2"), "{text}");
        assert!(text.contains("⋆-piece = [2/10,3/10]∪[7/10,8/10]"), "{text}");
        assert!(text.contains("I_H(2/5) = (B⋆)*"), "{text}");
    }
}
