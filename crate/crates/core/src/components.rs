//! Hyperbolic components as conjugate pairs of periodic angles.
//!
//! Components are enumerated by Lavaurs' pairing of periodic angles, period by
//! period. On top of a pool we answer the order questions: wake containment
//! `H' ≻ H`, combinatorial arcs and conspicuousness `H' ▷ H`.
//!
//! Conspicuousness of `H' ≻ H` only looks at components of period smaller
//! than `per(H') < per(H)`, so a pool that is complete up to `per(H)` is
//! enough to decide it.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use num_bigint::BigUint;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::circle::{Angle, Arc, ArcSet};
use crate::coding::{PartitionSpec, Symbol, Word};
use crate::error::{Error, Result};

/// Components mentioned by name in the literature, keyed by their angles.
pub const NAMED: &[(&str, (u64, u64), (u64, u64))] = &[
    ("Basilica", (1, 3), (2, 3)),
    ("Rabbit", (1, 7), (2, 7)),
    ("Airplane", (3, 7), (4, 7)),
    ("H4", (2, 5), (3, 5)),
    ("Lobster", (13, 31), (18, 31)),
    ("H6", (26, 63), (37, 63)),
    ("H4'", (3, 15), (4, 15)),
    ("H5'", (5, 31), (6, 31)),
    ("H6'", (10, 63), (17, 63)),
];

/// A hyperbolic component, identified by the two angles `θ⁻ < θ⁺` whose
/// parameter rays land at its root.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HyperbolicComponent {
    theta_minus: Angle,
    theta_plus: Angle,
    period: usize,
    kneading: Vec<Symbol>,
}

impl HyperbolicComponent {
    /// Validates the pair locally: ordering, common exact period `>= 2`, and
    /// agreement of the two one-sided kneading sequences. Whether the pair is
    /// actually a landing pair is a pool question, see [`ComponentPool::check_pair`].
    pub fn new(theta_minus: Angle, theta_plus: Angle) -> Result<HyperbolicComponent> {
        if theta_minus.is_zero() || theta_minus >= theta_plus {
            return Err(Error::InvalidComponent(format!(
                "need 0 < θ⁻ < θ⁺ < 1, got θ⁻ = {theta_minus}, θ⁺ = {theta_plus}"
            )));
        }
        let (pm, pp) = (theta_minus.exact_period(), theta_plus.exact_period());
        let period = match (pm, pp) {
            (Some(p), Some(q)) if p == q && p >= 2 => p,
            _ => {
                return Err(Error::InvalidComponent(format!(
                    "period mismatch: θ⁻ = {theta_minus} has period {}, θ⁺ = {theta_plus} has period {}",
                    fmt_period(pm),
                    fmt_period(pp)
                )))
            }
        };
        let plus = PartitionSpec::Plus(theta_minus.clone()).partition().itinerary_prefix(&theta_minus, period);
        let minus = PartitionSpec::Minus(theta_plus.clone()).partition().itinerary_prefix(&theta_plus, period);
        if plus != minus {
            return Err(Error::InvalidComponent(format!(
                "kneading mismatch: I⁺(θ⁻) starts {}, I⁻(θ⁺) starts {}",
                crate::coding::symbols_to_string(&plus),
                crate::coding::symbols_to_string(&minus)
            )));
        }
        Ok(HyperbolicComponent { theta_minus, theta_plus, period, kneading: plus })
    }

    pub fn from_fractions(minus: (u64, u64), plus: (u64, u64)) -> Result<HyperbolicComponent> {
        HyperbolicComponent::new(Angle::new(minus.0, minus.1), Angle::new(plus.0, plus.1))
    }

    pub fn theta_minus(&self) -> &Angle {
        &self.theta_minus
    }

    pub fn theta_plus(&self) -> &Angle {
        &self.theta_plus
    }

    pub fn period(&self) -> usize {
        self.period
    }

    /// `K(H)`: the first `per(H)` letters of `I⁺_{θ⁻}(θ⁻)`.
    pub fn kneading(&self) -> &[Symbol] {
        &self.kneading
    }

    /// `K̂(H)`: `K(H)` without its last letter.
    pub fn discarded_kneading(&self) -> &[Symbol] {
        &self.kneading[..self.period - 1]
    }

    pub fn kneading_word(&self) -> Word {
        Word::finite(self.kneading.clone())
    }

    pub fn discarded_word(&self) -> Word {
        Word::finite(self.discarded_kneading().to_vec())
    }

    /// `K̂(H)⋆`.
    pub fn discarded_star(&self) -> Vec<Symbol> {
        let mut w = self.discarded_kneading().to_vec();
        w.push(Symbol::Star);
        w
    }

    /// The three-piece partition `I_H`.
    pub fn star_spec(&self) -> PartitionSpec {
        PartitionSpec::Star { minus: self.theta_minus.clone(), plus: self.theta_plus.clone() }
    }

    /// `I⁺_H = I⁺_{θ⁻}`.
    pub fn plus_spec(&self) -> PartitionSpec {
        PartitionSpec::Plus(self.theta_minus.clone())
    }

    /// `I⁻_H = I⁻_{θ⁺}`.
    pub fn minus_spec(&self) -> PartitionSpec {
        PartitionSpec::Minus(self.theta_plus.clone())
    }

    /// `Π₁(H) = [θ⁻, θ⁺]`.
    pub fn pi1(&self) -> ArcSet {
        ArcSet::from_arc(&Arc::closed(self.theta_minus.clone(), self.theta_plus.clone()))
    }

    /// `Π₀(H) = σ⁻¹(Π₁(H))`, the closed `⋆`-piece.
    pub fn pi0(&self) -> ArcSet {
        self.pi1().preimage_under_sigma()
    }

    /// `2·lcm` of the two denominators: every endpoint of every set built
    /// from this component is a multiple of its inverse.
    pub fn common_denominator(&self) -> BigUint {
        self.theta_minus.denom().lcm(self.theta_plus.denom()) * 2u32
    }

    pub fn name(&self) -> Option<&'static str> {
        NAMED.iter().find_map(|&(name, m, p)| {
            (self.theta_minus == Angle::new(m.0, m.1) && self.theta_plus == Angle::new(p.0, p.1)).then_some(name)
        })
    }

    /// `other` has its wake inside the wake of `self`.
    fn contains_wake_of(&self, other: &HyperbolicComponent) -> bool {
        self.theta_minus <= other.theta_minus && other.theta_plus <= self.theta_plus
    }
}

fn fmt_period(p: Option<usize>) -> String {
    p.map(|p| p.to_string()).unwrap_or_else(|| "∞ (preperiodic)".into())
}

impl fmt::Display for HyperbolicComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.theta_minus, self.theta_plus)
    }
}

impl fmt::Debug for HyperbolicComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H{}[{}]", self, crate::coding::symbols_to_string(&self.kneading))
    }
}

#[derive(Serialize, Deserialize)]
struct ComponentRecord {
    period: usize,
    theta_minus: Angle,
    theta_plus: Angle,
    kneading: String,
}

impl Serialize for HyperbolicComponent {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        ComponentRecord {
            period: self.period,
            theta_minus: self.theta_minus.clone(),
            theta_plus: self.theta_plus.clone(),
            kneading: crate::coding::symbols_to_string(&self.kneading),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for HyperbolicComponent {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let rec = ComponentRecord::deserialize(deserializer)?;
        let h = HyperbolicComponent::new(rec.theta_minus, rec.theta_plus).map_err(D::Error::custom)?;
        if h.period != rec.period || crate::coding::symbols_to_string(&h.kneading) != rec.kneading {
            return Err(D::Error::custom(format!("stored period/kneading disagree with {h}")));
        }
        Ok(h)
    }
}

/// `H1 ≻ H2`: the wake of `H1` sits strictly inside the wake of `H2`.
pub fn wake_gt(h1: &HyperbolicComponent, h2: &HyperbolicComponent) -> bool {
    h1 != h2 && h2.contains_wake_of(h1)
}

/// Number of angles of exact period `n` under doubling, by Möbius inversion
/// of `2^n - 1`.
pub fn count_exact_period(n: usize) -> u64 {
    assert!(n >= 1 && n < 64);
    (1..=n)
        .filter(|d| n % d == 0)
        .map(|d| mobius(n / d) * ((1i64 << d) - 1))
        .sum::<i64>() as u64
}

fn mobius(mut n: usize) -> i64 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// All angles of exact period `n`, increasing.
pub fn angles_of_exact_period(n: usize) -> Vec<Angle> {
    assert!((1..64).contains(&n));
    let den = (1u64 << n) - 1;
    if n == 1 {
        return vec![Angle::zero()];
    }
    (1..den)
        .map(|k| Angle::new(k, den))
        .filter(|a| a.exact_period() == Some(n))
        .collect()
}

/// All hyperbolic components (other than the main cardioid) of period up to
/// `max_period`, sorted by `(period, θ⁻)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentPool {
    max_period: usize,
    components: Vec<HyperbolicComponent>,
}

impl ComponentPool {
    pub fn max_period(&self) -> usize {
        self.max_period
    }

    pub fn components(&self) -> &[HyperbolicComponent] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn of_period(&self, n: usize) -> impl Iterator<Item = &HyperbolicComponent> {
        self.components.iter().filter(move |h| h.period == n)
    }

    pub fn find(&self, theta_minus: &Angle, theta_plus: &Angle) -> Option<&HyperbolicComponent> {
        self.components
            .iter()
            .find(|h| h.theta_minus == *theta_minus && h.theta_plus == *theta_plus)
    }

    /// The component having `theta` as one of its two angles.
    pub fn containing_angle(&self, theta: &Angle) -> Option<&HyperbolicComponent> {
        self.components.iter().find(|h| h.theta_minus == *theta || h.theta_plus == *theta)
    }

    pub fn require_period(&self, n: usize) -> Result<()> {
        if self.max_period < n {
            Err(Error::PoolTooSmall { need: n, have: self.max_period })
        } else {
            Ok(())
        }
    }

    /// Explains why `(θ⁻, θ⁺)` is or is not a component of this pool.
    pub fn check_pair(&self, theta_minus: &Angle, theta_plus: &Angle) -> Result<HyperbolicComponent> {
        let h = HyperbolicComponent::new(theta_minus.clone(), theta_plus.clone())?;
        self.require_period(h.period)?;
        if let Some(found) = self.find(theta_minus, theta_plus) {
            return Ok(found.clone());
        }
        let chord = Arc::closed(theta_minus.clone(), theta_plus.clone());
        let ends = [theta_minus, theta_plus];
        let crossing = self.components.iter().find(|c| {
            !ends.contains(&&c.theta_minus)
                && !ends.contains(&&c.theta_plus)
                && chord.contains(&c.theta_minus) != chord.contains(&c.theta_plus)
        });
        let partner = |t: &Angle| {
            self.containing_angle(t).map(|c| c.to_string()).unwrap_or_else(|| "none".into())
        };
        let why = match crossing {
            Some(c) => format!("crossing chord: the chord {{{theta_minus}, {theta_plus}}} crosses the component chord {c}"),
            None => format!(
                "not a landing pair: {theta_minus} belongs to {}, {theta_plus} belongs to {}",
                partner(theta_minus),
                partner(theta_plus)
            ),
        };
        Err(Error::InvalidComponent(why))
    }

    /// Pretty JSON tagged `"schema": "kneading.components/1"`.
    pub fn to_json(&self) -> Result<String> {
        let mut value = serde_json::to_value(self)?;
        value["schema"] = serde_json::Value::from("kneading.components/1");
        Ok(serde_json::to_string_pretty(&value)?)
    }

    /// Parses and validates a pool file: each entry is re-checked and the
    /// per-period counts must match the Möbius count.
    pub fn from_json(s: &str) -> Result<ComponentPool> {
        #[derive(Deserialize)]
        struct Raw {
            max_period: usize,
            components: Vec<HyperbolicComponent>,
        }
        let raw: Raw = serde_json::from_str(s)?;
        if raw.max_period < 2 {
            return Err(Error::Parse("pool max_period must be at least 2".into()));
        }
        let mut components = raw.components;
        components.sort_by(|a, b| a.period.cmp(&b.period).then_with(|| a.theta_minus.cmp(&b.theta_minus)));
        for n in 2..=raw.max_period {
            let have = components.iter().filter(|h| h.period == n).count() as u64;
            if have * 2 != count_exact_period(n) {
                return Err(Error::Parse(format!(
                    "pool lists {have} components of period {n}, expected {}",
                    count_exact_period(n) / 2
                )));
            }
        }
        if components.iter().any(|h| h.period > raw.max_period) {
            return Err(Error::Parse("pool lists components above max_period".into()));
        }
        Ok(ComponentPool { max_period: raw.max_period, components })
    }

    pub fn load(path: &Path) -> Result<ComponentPool> {
        ComponentPool::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        if let Some(dir) = path.parent() {
            std::fs::create_dir_all(dir)?;
        }
        std::fs::write(path, self.to_json()?)?;
        Ok(())
    }

    /// The sub-pool of components with period `<= max_period`.
    pub fn truncated(&self, max_period: usize) -> ComponentPool {
        ComponentPool {
            max_period: max_period.min(self.max_period),
            components: self.components.iter().filter(|h| h.period <= max_period).cloned().collect(),
        }
    }
}

#[derive(Clone)]
enum Endpoint {
    Paired(Angle),
    Free,
}

/// Lavaurs' pairing of periodic angles.
///
/// Period by period, the smallest unpaired angle is joined to the nearest
/// larger unpaired angle of the same period whose chord crosses no chord
/// drawn so far.
pub fn pair_periodic_angles(max_period: usize) -> Result<ComponentPool> {
    if max_period < 2 {
        return Err(Error::Precondition(format!("max_period must be at least 2, got {max_period}")));
    }
    if max_period > 40 {
        return Err(Error::Precondition(format!("max_period {max_period} is beyond enumeration range")));
    }
    let mut points: BTreeMap<Angle, Endpoint> = BTreeMap::new();
    let mut components = Vec::new();
    for n in 2..=max_period {
        let level = angles_of_exact_period(n);
        for a in &level {
            points.insert(a.clone(), Endpoint::Free);
        }
        for a in &level {
            if !matches!(points.get(a), Some(Endpoint::Free)) {
                continue;
            }
            let mut open = 0usize;
            let mut partner = None;
            for (p, info) in points.range((std::ops::Bound::Excluded(a), std::ops::Bound::Unbounded)) {
                match info {
                    Endpoint::Paired(q) => {
                        if a < q && q < p {
                            open -= 1;
                        } else {
                            open += 1;
                        }
                    }
                    Endpoint::Free if open == 0 => {
                        partner = Some(p.clone());
                        break;
                    }
                    Endpoint::Free => {}
                }
            }
            let b = partner.ok_or_else(|| Error::Violation(format!("no Lavaurs partner for {a}")))?;
            points.insert(a.clone(), Endpoint::Paired(b.clone()));
            points.insert(b.clone(), Endpoint::Paired(a.clone()));
            let h = HyperbolicComponent::new(a.clone(), b)?;
            components.push(h);
        }
    }
    components.sort_by(|a, b| a.period.cmp(&b.period).then_with(|| a.theta_minus.cmp(&b.theta_minus)));
    Ok(ComponentPool { max_period, components })
}

/// Components strictly between `h` and `h_prime` in the wake order, from `h`
/// outward. Requires `h_prime ≻ h`.
pub fn combinatorial_arc(
    h: &HyperbolicComponent,
    h_prime: &HyperbolicComponent,
    pool: &ComponentPool,
) -> Result<Vec<HyperbolicComponent>> {
    if !wake_gt(h_prime, h) {
        return Err(Error::Precondition(format!("{h_prime} ≻ {h} does not hold")));
    }
    let mut arc: Vec<HyperbolicComponent> = pool
        .components
        .iter()
        .filter(|c| wake_gt(h_prime, c) && wake_gt(c, h))
        .cloned()
        .collect();
    arc.sort_by(|a, b| a.theta_minus.cmp(&b.theta_minus));
    Ok(arc)
}

/// All `H' ▷ H`, `H` itself included, by decreasing period.
pub fn conspicuous_components(h: &HyperbolicComponent, pool: &ComponentPool) -> Result<Vec<HyperbolicComponent>> {
    pool.require_period(h.period)?;
    // any component violating condition (3) for a candidate is itself a candidate
    let candidates: Vec<&HyperbolicComponent> = pool
        .components
        .iter()
        .filter(|c| c.period < h.period && wake_gt(c, h))
        .collect();
    let mut out = vec![h.clone()];
    for c in &candidates {
        let blocked = candidates
            .iter()
            .any(|d| d.period < c.period && wake_gt(c, d) && wake_gt(d, h));
        if !blocked {
            out.push((*c).clone());
        }
    }
    out.sort_by(|a, b| b.period.cmp(&a.period).then_with(|| a.theta_minus.cmp(&b.theta_minus)));
    Ok(out)
}

/// `{per(H') : H' ▷ H, H' ≠ H}`, increasing.
pub fn return_times(h: &HyperbolicComponent, pool: &ComponentPool) -> Result<Vec<usize>> {
    let mut times: Vec<usize> = conspicuous_components(h, pool)?
        .iter()
        .filter(|c| *c != h)
        .map(|c| c.period)
        .collect();
    times.sort_unstable();
    times.dedup();
    Ok(times)
}
