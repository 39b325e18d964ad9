//! The finite leaf system of a component and the `R_n` / `Q_n` arc-set
//! recursion, with the structural checks that go with it.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use serde::Serialize;
use serde_json::json;

use crate::circle::{Angle, Arc, ArcSet, Fraction};
use crate::coding::Symbol;
use crate::components::{return_times, ComponentPool, HyperbolicComponent};
use crate::error::{Error, Result};

/// A chord of the closed disk between two distinct angles.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Leaf {
    a: Angle,
    b: Angle,
}

impl Leaf {
    pub fn new(x: Angle, y: Angle) -> Result<Leaf> {
        match x.cmp(&y) {
            std::cmp::Ordering::Less => Ok(Leaf { a: x, b: y }),
            std::cmp::Ordering::Greater => Ok(Leaf { a: y, b: x }),
            std::cmp::Ordering::Equal => Err(Error::DegenerateArc(format!("leaf with both ends at {x}"))),
        }
    }

    /// Endpoints, smaller first.
    pub fn endpoints(&self) -> (&Angle, &Angle) {
        (&self.a, &self.b)
    }

    pub fn has_endpoint(&self, x: &Angle) -> bool {
        self.a == *x || self.b == *x
    }

    /// Circle distance between the endpoints, in `(0, 1/2]`.
    pub fn length(&self) -> Fraction {
        let d1 = self.a.ccw_distance(&self.b);
        let d2 = self.b.ccw_distance(&self.a);
        d1.min(d2)
    }

    /// `σ(ℓ)`; fails for a diameter, whose image is a single point.
    pub fn double(&self) -> Result<Leaf> {
        Leaf::new(self.a.double(), self.b.double())
    }

    /// Transversal intersection inside the disk. Leaves sharing an endpoint
    /// do not cross.
    pub fn crosses(&self, other: &Leaf) -> bool {
        if self.has_endpoint(&other.a) || self.has_endpoint(&other.b) {
            return false;
        }
        let inside = |x: &Angle| self.a < *x && *x < self.b;
        inside(&other.a) != inside(&other.b)
    }
}

impl fmt::Display for Leaf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.a, self.b)
    }
}

impl fmt::Debug for Leaf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Leaf {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        [&self.a, &self.b].serialize(serializer)
    }
}

/// `ℓ₀′, ℓ₀, ℓ₁, …, ℓ_{N−1}` for a component of period `N`.
#[derive(Clone, Debug, Serialize)]
pub struct LeafSystem {
    pub minor: Leaf,
    /// `ℓ₁ … ℓ_{N−1}`.
    pub chain: Vec<Leaf>,
    pub major: Leaf,
    pub major_prime: Leaf,
    /// The leaves have set-period `N/2`: `σ^{N/2}` swaps the endpoints of `ℓ₁`.
    pub flip: bool,
}

impl LeafSystem {
    /// `ℓ_n` for `0 <= n <= N-1`.
    pub fn leaf(&self, n: usize) -> &Leaf {
        if n == 0 {
            &self.major
        } else {
            &self.chain[n - 1]
        }
    }

    /// Every leaf of the system, `ℓ₀′` first.
    pub fn all(&self) -> Vec<&Leaf> {
        let mut v = vec![&self.major_prime, &self.major];
        v.extend(self.chain.iter());
        v
    }
}

pub fn leaves_of(h: &HyperbolicComponent) -> Result<LeafSystem> {
    let n = h.period();
    let minor = Leaf::new(h.theta_minus().clone(), h.theta_plus().clone())?;
    let mut chain = vec![minor.clone()];
    while chain.len() < n {
        let next = chain.last().expect("nonempty").double()?;
        chain.push(next);
    }
    let ell_n = chain.pop().expect("nonempty");
    let (m0, p0) = h.theta_minus().halves();
    let (m1, p1) = h.theta_plus().halves();
    let first = Leaf::new(m0.clone(), p1.clone())?;
    let second = Leaf::new(m1, p0)?;
    let (major, major_prime) = if ell_n == first {
        (first, second)
    } else if ell_n == second {
        (second, first)
    } else {
        return Err(Error::Violation(format!("ℓ_N = {ell_n} is neither major of {h}")));
    };
    let flip = n % 2 == 0 && h.theta_minus().double_n(n / 2) == *h.theta_plus();
    Ok(LeafSystem { minor, chain, major, major_prime, flip })
}

/// How the pieces of `Q_n = R_n ∩ closure(T_k)` are listed when `R_n` splits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize)]
pub enum SplitOrder {
    /// By start angle.
    #[default]
    Sorted,
    /// In order along each arc of `R_n`, arcs taken in their listed order.
    AlongArc,
}

/// Bracket convention when printing arcs over the common denominator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize)]
pub enum BracketStyle {
    /// Brackets reflect actual endpoint membership.
    #[default]
    Exact,
    /// Every arc is printed with parentheses (its interior).
    Interior,
}

/// The record of `R₀ … R_N` and `Q₀ … Q_{N−1}`.
#[derive(Clone, Debug)]
pub struct RQTrace {
    component: HyperbolicComponent,
    return_times: Vec<usize>,
    r: Vec<ArcSet>,
    q: Vec<ArcSet>,
    r_arcs: Vec<Vec<Arc>>,
    q_arcs: Vec<Vec<Arc>>,
    denominator: BigUint,
}

pub fn rq_trace(h: &HyperbolicComponent, pool: &ComponentPool) -> Result<RQTrace> {
    rq_trace_with(h, pool, SplitOrder::Sorted)
}

pub fn rq_trace_with(h: &HyperbolicComponent, pool: &ComponentPool, order: SplitOrder) -> Result<RQTrace> {
    RQTrace::build(h, &return_times(h, pool)?, order)
}

impl RQTrace {
    /// Runs the recursion with the given return times.
    pub fn build(h: &HyperbolicComponent, return_times: &[usize], order: SplitOrder) -> Result<RQTrace> {
        let n_max = h.period();
        let partition = h.star_spec().partition();
        let mut r = vec![h.pi0()];
        let mut r_arcs = vec![r[0].arcs()];
        let mut q = Vec::with_capacity(n_max);
        let mut q_arcs = Vec::with_capacity(n_max);
        for n in 0..n_max {
            let (qn, qn_arcs) = if n >= 1 && return_times.contains(&n) {
                let k = h.kneading()[n - 1];
                let closure = partition.piece(k).expect("letter piece").closure();
                let qn = r[n].intersect(&closure);
                let arcs = order_split(&r_arcs[n], &qn, order);
                (qn, arcs)
            } else {
                (r[n].clone(), r_arcs[n].clone())
            };
            let next = qn.image_under_sigma().map_err(|e| {
                Error::Violation(format!("Q_{n} = {qn} of {h} has an arc of length ≥ 1/2 ({e})"))
            })?;
            let mapped = qn_arcs.iter().map(Arc::double).collect::<Result<Vec<_>>>()?;
            r_arcs.push(reconcile(mapped, &next));
            r.push(next);
            q.push(qn);
            q_arcs.push(qn_arcs);
        }
        Ok(RQTrace {
            component: h.clone(),
            return_times: return_times.to_vec(),
            r,
            q,
            r_arcs,
            q_arcs,
            denominator: h.common_denominator(),
        })
    }

    pub fn component(&self) -> &HyperbolicComponent {
        &self.component
    }

    pub fn period(&self) -> usize {
        self.component.period()
    }

    pub fn return_times(&self) -> &[usize] {
        &self.return_times
    }

    pub fn is_return_time(&self, n: usize) -> bool {
        self.return_times.contains(&n)
    }

    /// `R_n`, `0 <= n <= N`.
    pub fn r(&self, n: usize) -> &ArcSet {
        &self.r[n]
    }

    /// `Q_n`, `0 <= n < N`.
    pub fn q(&self, n: usize) -> &ArcSet {
        &self.q[n]
    }

    /// Components of `R_n` in display order.
    pub fn r_arcs(&self, n: usize) -> &[Arc] {
        &self.r_arcs[n]
    }

    pub fn q_arcs(&self, n: usize) -> &[Arc] {
        &self.q_arcs[n]
    }

    pub fn denominator(&self) -> &BigUint {
        &self.denominator
    }

    /// `k_n`, the `n`-th letter of `K(H)`, `1 <= n <= N`.
    pub fn k(&self, n: usize) -> Symbol {
        self.component.kneading()[n - 1]
    }

    /// Images of the endpoints of `Π₁(H)` that live at step `n`:
    /// `σ^{n−1}θ⁻` and `σ^{n−1}θ⁺`. Empty at step 0.
    pub fn marks(&self, n: usize) -> Vec<Angle> {
        if n == 0 {
            return Vec::new();
        }
        vec![self.component.theta_minus().double_n(n - 1), self.component.theta_plus().double_n(n - 1)]
    }

    /// Arcs as numerators over the common denominator, joined by `∪`.
    pub fn format_arcs(&self, arcs: &[Arc], n: usize, style: BracketStyle) -> String {
        let marks = self.marks(n);
        let is_marked = |a: &Angle| marks.contains(a);
        arcs.iter()
            .map(|arc| {
                if arc.is_full() {
                    return "T".to_string();
                }
                let mut shown = arc.clone();
                if style == BracketStyle::Interior && !arc.is_point() {
                    shown.start_closed = false;
                    shown.end_closed = false;
                }
                shown.format_over(&self.denominator, &is_marked)
            })
            .collect::<Vec<_>>()
            .join("∪")
    }

    pub fn format_r(&self, n: usize, style: BracketStyle) -> String {
        self.format_arcs(&self.r_arcs[n], n, style)
    }

    pub fn format_q(&self, n: usize, style: BracketStyle) -> String {
        self.format_arcs(&self.q_arcs[n], n, style)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let steps: Vec<_> = (0..=self.period())
            .map(|n| {
                let mut step = json!({
                    "n": n,
                    "return_time": self.is_return_time(n),
                    "R": self.format_r(n, BracketStyle::Exact),
                    "R_set": self.r[n].to_string(),
                    "marks": self.marks(n),
                });
                if n >= 1 {
                    step["k"] = json!(self.k(n).to_string());
                }
                if n < self.period() {
                    step["Q"] = json!(self.format_q(n, BracketStyle::Exact));
                }
                step
            })
            .collect();
        json!({
            "component": self.component,
            "denominator": self.denominator.to_string(),
            "return_times": self.return_times,
            "steps": steps,
        })
    }
}

fn order_split(r_arcs: &[Arc], qn: &ArcSet, order: SplitOrder) -> Vec<Arc> {
    let canonical = qn.arcs();
    if order == SplitOrder::Sorted {
        return canonical;
    }
    let mut out = Vec::with_capacity(canonical.len());
    for r in r_arcs {
        let hull = r.closure();
        let mut inside: Vec<&Arc> = canonical
            .iter()
            .filter(|q| hull.contains(&q.start) && hull.contains(&q.end) && !out.contains(*q))
            .collect();
        inside.sort_by(|x, y| r.start.ccw_distance(&x.start).cmp(&r.start.ccw_distance(&y.start)));
        out.extend(inside.into_iter().cloned());
    }
    if out.len() == canonical.len() {
        out
    } else {
        canonical
    }
}

/// Keeps the order of the mapped arcs when they are exactly the components
/// of the image, and falls back to the canonical order otherwise.
fn reconcile(mapped: Vec<Arc>, image: &ArcSet) -> Vec<Arc> {
    let mut unique: Vec<Arc> = Vec::with_capacity(mapped.len());
    for a in mapped {
        if !unique.contains(&a) {
            unique.push(a);
        }
    }
    let canonical = image.arcs();
    if unique.len() == canonical.len() && unique.iter().all(|a| canonical.contains(a)) {
        unique
    } else {
        canonical
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckEntry {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub component: HyperbolicComponent,
    pub checks: Vec<CheckEntry>,
    /// For each return time `n`: whether `R_n ⊃ Π₀(H)`. Recorded, not required.
    pub converse: Vec<(usize, bool)>,
}

impl CheckReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckEntry> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn converse_holds(&self) -> bool {
        self.converse.iter().all(|&(_, ok)| ok)
    }

    fn push(&mut self, name: &str, failures: Vec<String>) {
        let passed = failures.is_empty();
        let detail = if passed { String::new() } else { failures.join("; ") };
        self.checks.push(CheckEntry { name: name.to_string(), passed, detail });
    }
}

/// Evaluates the leaf and arc-set properties of one component.
pub fn structural_checks(trace: &RQTrace, leaves: &LeafSystem) -> CheckReport {
    let h = trace.component();
    let n_max = h.period();
    let partition = h.star_spec().partition();
    let pi0 = h.pi0();
    let int_pi0 = pi0.interior();
    let closed_piece = |k: Symbol| partition.piece(k).expect("letter piece").closure();
    let mut report = CheckReport { component: h.clone(), checks: Vec::new(), converse: Vec::new() };

    let all = leaves.all();
    let mut bad = Vec::new();
    for leaf in &all {
        let (x, y) = leaf.endpoints();
        if int_pi0.contains_point(x) || int_pi0.contains_point(y) {
            bad.push(format!("{leaf} meets int Π₀"));
        }
    }
    for (i, l1) in all.iter().enumerate() {
        for l2 in &all[i + 1..] {
            if l1.crosses(l2) {
                bad.push(format!("{l1} crosses {l2}"));
            }
        }
    }
    report.push("leaves-disjoint", bad);

    let mut bad = Vec::new();
    for i in 0..leaves.chain.len() {
        let next = if i + 1 < leaves.chain.len() { &leaves.chain[i + 1] } else { &leaves.major };
        match leaves.chain[i].double() {
            Ok(img) if img == *next => {}
            _ => bad.push(format!("σ(ℓ_{}) ≠ ℓ_{}", i + 1, i + 2)),
        }
    }
    for major in [&leaves.major, &leaves.major_prime] {
        if major.double().ok().as_ref() != Some(&leaves.minor) {
            bad.push(format!("σ({major}) ≠ ℓ₁"));
        }
    }
    let min_len = leaves.minor.length();
    let max_len = leaves.major.length();
    if leaves.major_prime.length() != max_len {
        bad.push("majors differ in length".into());
    }
    for leaf in &all {
        let len = leaf.length();
        if len < min_len || len > max_len {
            bad.push(format!("{leaf} has length outside [|ℓ₁|, |ℓ₀|]"));
        }
    }
    for arc in pi0.arcs() {
        if !is_double(&min_len, &arc.length()) {
            bad.push(format!("|ℓ₁| ≠ 2·|{arc}|"));
        }
    }
    report.push("leaf-dynamics", bad);

    let mut bad = Vec::new();
    for n in 1..n_max {
        let piece = closed_piece(trace.k(n));
        let (x, y) = leaves.leaf(n).endpoints();
        if !piece.contains_point(x) || !piece.contains_point(y) {
            bad.push(format!("ℓ_{n} = {} not in closure(T_{})", leaves.leaf(n), trace.k(n)));
        }
    }
    report.push("leaf-endpoints-in-piece", bad);

    let mut bad = Vec::new();
    for n in 1..=n_max {
        let rn = trace.r(n);
        if !rn.is_subset(&closed_piece(trace.k(n))) && !pi0.is_subset(rn) {
            bad.push(format!("R_{n} = {rn}"));
        }
    }
    report.push("dichotomy", bad);

    let mut bad = Vec::new();
    for n in 1..n_max {
        if pi0.is_subset(trace.r(n)) && !trace.is_return_time(n) {
            bad.push(format!("R_{n} ⊃ Π₀ but {n} is not a return time"));
        }
    }
    report.push("covering-implies-return", bad);

    let mut bad = Vec::new();
    let rn = trace.r(n_max);
    if !pi0.is_subset(rn) {
        bad.push(format!("R_N = {rn} does not contain Π₀"));
    }
    let allowed = partition.piece(trace.k(n_max)).expect("letter piece").union(&pi0);
    if !rn.is_subset(&allowed) {
        bad.push(format!("R_N = {rn} leaves T_{} ∪ T_⋆", trace.k(n_max)));
    }
    report.push("final-step", bad);

    report.push("germ-sides", germ_side_failures(h, leaves, &pi0));

    report.converse = trace
        .return_times()
        .iter()
        .map(|&n| (n, pi0.is_subset(trace.r(n))))
        .collect();
    report
}

fn is_double(small: &Fraction, half: &Fraction) -> bool {
    small.numer() * half.denom() == half.numer() * small.denom() * 2u32
}

/// `x + s/den`, taken mod 1.
fn nudge(x: &Angle, s: i64, den: &BigUint) -> Angle {
    let num = BigInt::from(x.numer().clone()) * BigInt::from(den.clone()) + BigInt::from(s) * BigInt::from(x.denom().clone());
    Angle::try_new(num, BigInt::from(x.denom() * den)).expect("positive denominator")
}

/// The side of an endpoint of `ℓ₀` facing `Π₀(H)` must come back to the same
/// side under `σ^N`; for flipped systems, `σ^{N/2}` must send it to the side
/// of the other endpoint facing away from `Π₀(H)`.
fn germ_side_failures(h: &HyperbolicComponent, leaves: &LeafSystem, pi0: &ArcSet) -> Vec<String> {
    let n = h.period();
    let eps_den = h.common_denominator() * 4u32 * (BigUint::from(1u32) << n);
    let (x, y) = leaves.major.endpoints();
    let mut bad = Vec::new();
    let side = |p: &Angle| -> Option<i64> {
        let plus = pi0.contains_point(&nudge(p, 1, &eps_den));
        let minus = pi0.contains_point(&nudge(p, -1, &eps_den));
        match (plus, minus) {
            (true, false) => Some(1),
            (false, true) => Some(-1),
            _ => None,
        }
    };
    for (p, other) in [(x, y), (y, x)] {
        let Some(s) = side(p) else {
            bad.push(format!("{p} is not a one-sided boundary point of Π₀"));
            continue;
        };
        let full = BigInt::from(s) << n;
        let back = Angle::try_new(
            BigInt::from(p.numer().clone()) * BigInt::from(eps_den.clone()) + full * BigInt::from(p.denom().clone()),
            BigInt::from(p.denom() * &eps_den),
        )
        .expect("positive denominator");
        if p.double_n(n) != *p || !pi0.contains_point(&back) {
            bad.push(format!("σ^N does not return the Π₀-side germ at {p}"));
        }
        if leaves.flip {
            let half = n / 2;
            if p.double_n(half) != *other {
                bad.push(format!("σ^(N/2) does not swap the ends of ℓ₀ at {p}"));
                continue;
            }
            let scaled = BigInt::from(s) << half;
            let image = Angle::try_new(
                BigInt::from(other.numer().clone()) * BigInt::from(eps_den.clone())
                    + scaled * BigInt::from(other.denom().clone()),
                BigInt::from(other.denom() * &eps_den),
            )
            .expect("positive denominator");
            if pi0.contains_point(&image) {
                bad.push(format!("σ^(N/2) sends the Π₀-side germ at {p} to the Π₀-side of {other}"));
            }
        }
    }
    bad
}

/// A boundary edge of the polygon spanned by an arc set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Edge {
    Arc(Arc),
    Leaf(Leaf),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stage {
    R,
    Q,
}

/// Edges of the polygon whose sides are the components of `R_n` (or `Q_n`)
/// and the chords joining consecutive components.
pub fn polygon_edges(trace: &RQTrace, n: usize, stage: Stage) -> Vec<Edge> {
    let set = match stage {
        Stage::R => trace.r(n),
        Stage::Q => trace.q(n),
    };
    let arcs = set.arcs();
    let mut edges = Vec::with_capacity(arcs.len() * 2);
    if arcs.len() == 1 && (arcs[0].is_full() || arcs[0].is_point()) {
        edges.push(Edge::Arc(arcs[0].clone()));
        return edges;
    }
    for (i, arc) in arcs.iter().enumerate() {
        edges.push(Edge::Arc(arc.clone()));
        let next = &arcs[(i + 1) % arcs.len()];
        if let Ok(leaf) = Leaf::new(arc.end.clone(), next.start.clone()) {
            edges.push(Edge::Leaf(leaf));
        }
    }
    edges
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::components::pair_periodic_angles;

    fn hc(m: (u64, u64), p: (u64, u64)) -> HyperbolicComponent {
        HyperbolicComponent::from_fractions(m, p).unwrap()
    }

    fn leaf(a: (u64, u64), b: (u64, u64)) -> Leaf {
        Leaf::new(Angle::new(a.0, a.1), Angle::new(b.0, b.1)).unwrap()
    }

    #[test]
    fn majors_and_flip() {
        let h4 = leaves_of(&hc((2, 5), (3, 5))).unwrap();
        assert_eq!(h4.major, leaf((1, 5), (4, 5)));
        assert_eq!(h4.major_prime, leaf((3, 10), (7, 10)));
        assert!(h4.flip);
        let bas = leaves_of(&hc((1, 3), (2, 3))).unwrap();
        assert_eq!(bas.major, leaf((1, 3), (2, 3)));
        assert_eq!(bas.major_prime, leaf((1, 6), (5, 6)));
        assert!(bas.flip);
        assert!(!leaves_of(&hc((3, 7), (4, 7))).unwrap().flip);
    }

    #[test]
    fn crossing() {
        assert!(leaf((1, 5), (3, 5)).crosses(&leaf((2, 5), (4, 5))));
        assert!(!leaf((1, 5), (2, 5)).crosses(&leaf((3, 5), (4, 5))));
        assert!(!leaf((1, 5), (2, 5)).crosses(&leaf((2, 5), (4, 5))));
    }

    #[test]
    fn lobster_trace() {
        let pool = pair_periodic_angles(5).unwrap();
        let t = rq_trace(&hc((13, 31), (18, 31)), &pool).unwrap();
        assert_eq!(t.denominator().to_string(), "62");
        let s = BracketStyle::Exact;
        assert_eq!(t.format_r(1, s), "[26ᵉ,36ᵉ]");
        assert_eq!(t.format_r(2, s), "[52ᵉ,10ᵉ]");
        assert_eq!(t.format_r(3, s), "[42ᵉ,20ᵉ]");
        assert_eq!(t.format_q(3, s), "[18,20ᵉ]∪[42ᵉ,44]");
        assert_eq!(t.format_r(4, s), "[36,40ᵉ]∪[22ᵉ,26]");
        assert_eq!(t.format_r(5, s), "[10,18ᵉ]∪[44ᵉ,52]");
        assert_eq!(t.r(0), &hc((13, 31), (18, 31)).pi0());
        let report = structural_checks(&t, &leaves_of(t.component()).unwrap());
        assert!(report.all_passed(), "{report:?}");
        assert_eq!(report.converse, vec![(3, true)]);
    }

    #[test]
    fn split_orders() {
        let pool = pair_periodic_angles(6).unwrap();
        let h = hc((10, 63), (17, 63));
        let i = BracketStyle::Interior;
        let along = rq_trace_with(&h, &pool, SplitOrder::AlongArc).unwrap();
        assert_eq!(along.format_q(4, i), "(34ᵉ,73)∪(17,20ᵉ)");
        assert_eq!(along.format_q(5, i), "(68ᵉ,73)∪(17,20)∪(34,40ᵉ)");
        assert_eq!(along.format_r(6, i), "(10ᵉ,20)∪(34,40)∪(68,80ᵉ)");
        let sorted = rq_trace(&h, &pool).unwrap();
        assert_eq!(sorted.format_q(4, i), "(17,20ᵉ)∪(34ᵉ,73)");
        assert_eq!(sorted.q(4), along.q(4));
    }

    #[test]
    fn checks_pass_for_small_components() {
        let pool = pair_periodic_angles(7).unwrap();
        for h in pool.components() {
            let t = rq_trace(h, &pool).unwrap();
            let report = structural_checks(&t, &leaves_of(h).unwrap());
            assert!(report.all_passed(), "{h}: {:?}", report.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn polygons() {
        let pool = pair_periodic_angles(5).unwrap();
        let h = hc((13, 31), (18, 31));
        let t = rq_trace(&h, &pool).unwrap();
        let q3 = polygon_edges(&t, 3, Stage::Q);
        assert_eq!(q3.iter().filter(|e| matches!(e, Edge::Arc(_))).count(), 2);
        assert_eq!(q3.iter().filter(|e| matches!(e, Edge::Leaf(_))).count(), 2);
        let leaves = leaves_of(&h).unwrap();
        let p0 = polygon_edges(&t, 0, Stage::R);
        assert!(p0.contains(&Edge::Leaf(leaves.major.clone())));
        assert!(p0.contains(&Edge::Leaf(leaves.major_prime.clone())));
    }
}
