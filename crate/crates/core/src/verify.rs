//! Decision procedures for Disc(H), Ξ(H), the covering of `Π₁(H)` by the
//! cylinders of conspicuous kneadings, and the marker decomposition of
//! itineraries.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::circle::{Angle, ArcSet};
use crate::coding::{symbols_to_string, Partition, Symbol, Word};
use crate::components::{conspicuous_components, ComponentPool, HyperbolicComponent};
use crate::error::{Error, Result};
use crate::lamination::{leaves_of, structural_checks, CheckReport, RQTrace, SplitOrder};

/// Forward iterates `σ^n(θ)` for `n = 1 ..` until the orbit closes up.
fn forward_iterates(theta: &Angle) -> impl Iterator<Item = (usize, Angle)> {
    let steps = theta.forward_orbit().len();
    let mut x = theta.clone();
    (1..=steps).map(move |n| {
        x = x.double();
        (n, x.clone())
    })
}

/// `θ ∈ Ξ(H)`: some `σ^n(θ)`, `n >= 1`, is `θ⁻` or `θ⁺`.
pub fn xi_contains(h: &HyperbolicComponent, theta: &Angle) -> bool {
    forward_iterates(theta).any(|(_, x)| x == *h.theta_minus() || x == *h.theta_plus())
}

/// The first `m >= 1` with `σ^m(θ) ∈ Π₁(H)`, if any.
pub fn disc_entry(h: &HyperbolicComponent, theta: &Angle) -> Option<usize> {
    forward_iterates(theta)
        .find(|(_, x)| h.theta_minus() <= x && x <= h.theta_plus())
        .map(|(m, _)| m)
}

pub fn disc_contains(h: &HyperbolicComponent, theta: &Angle) -> bool {
    disc_entry(h, theta).is_some()
}

/// Positions `m < depth` where `I⁺_H(θ)` and `I⁻_H(θ)` differ, with the
/// plus and minus symbols.
pub fn compare_codings(h: &HyperbolicComponent, theta: &Angle, depth: usize) -> Vec<(usize, Symbol, Symbol)> {
    let plus = h.plus_spec().partition().itinerary_prefix(theta, depth);
    let minus = h.minus_spec().partition().itinerary_prefix(theta, depth);
    plus.into_iter()
        .zip(minus)
        .enumerate()
        .filter(|(_, (p, m))| p != m)
        .map(|(i, (p, m))| (i, p, m))
        .collect()
}

/// No `σ^k(θ±)` with `0 <= k < per(H) − 1` lies in the closed `Π₀(H)`.
pub fn remark_condition(h: &HyperbolicComponent) -> bool {
    let pi0 = h.pi0();
    (0..h.period() - 1).all(|k| {
        !pi0.contains_point(&h.theta_minus().double_n(k)) && !pi0.contains_point(&h.theta_plus().double_n(k))
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub component: HyperbolicComponent,
    pub conspicuous: Vec<HyperbolicComponent>,
    /// `Π₁(H)` minus the union of the conspicuous cylinders.
    pub residual_set: ArcSet,
    pub discrete: bool,
    pub residual_points: Vec<Angle>,
    pub residual_in_xi: Vec<bool>,
    pub remark_condition: bool,
    pub covered: bool,
}

impl VerificationReport {
    /// Residual empty whenever the remark condition holds.
    pub fn remark_consistent(&self) -> bool {
        !self.remark_condition || self.residual_set.is_empty()
    }

    pub fn passed(&self) -> bool {
        self.covered && self.remark_consistent()
    }
}

/// `U`: the union over `H' ▷ H` of `T_{K(H')}` and `T_{K̂(H')⋆}`, cylinders
/// taken in the star partition of `H`.
pub fn conspicuous_cover(partition: &Partition, conspicuous: &[HyperbolicComponent]) -> Result<ArcSet> {
    let mut u = ArcSet::empty();
    for c in conspicuous {
        u = u.union(&partition.cylinder(c.kneading())?);
        u = u.union(&partition.cylinder(&c.discarded_star())?);
    }
    Ok(u)
}

pub fn verify_main_theorem(h: &HyperbolicComponent, pool: &ComponentPool) -> Result<VerificationReport> {
    let conspicuous = conspicuous_components(h, pool)?;
    verify_with(h, conspicuous)
}

/// As [`verify_main_theorem`] with the conspicuous family supplied.
pub fn verify_with(h: &HyperbolicComponent, conspicuous: Vec<HyperbolicComponent>) -> Result<VerificationReport> {
    let partition = h.star_spec().partition();
    let u = conspicuous_cover(&partition, &conspicuous)?;
    let residual_set = h.pi1().difference(&u);
    let discrete = residual_set.is_discrete();
    let residual_points = residual_set.points();
    let residual_in_xi: Vec<bool> = residual_points.iter().map(|p| xi_contains(h, p)).collect();
    let covered = discrete && residual_in_xi.iter().all(|&b| b);
    Ok(VerificationReport {
        component: h.clone(),
        conspicuous,
        residual_set,
        discrete,
        residual_points,
        residual_in_xi,
        remark_condition: remark_condition(h),
        covered,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BlockKind {
    /// `⋆K̂(H_i)` followed by another `⋆`.
    Continue,
    /// `⋆K(H_i)`, ending the chain.
    Terminal,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MarkerBlock {
    /// Index into the conspicuous family (sorted by decreasing period).
    pub component: usize,
    pub period: usize,
    pub kind: BlockKind,
    /// Position in the itinerary of the `⋆` opening the block.
    pub star: usize,
    /// The block's letters, without the opening `⋆`.
    pub letters: Vec<Symbol>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum MarkerEnd {
    /// Closed by a terminal `K(H_i)` block.
    Terminal,
    /// The blocks from `cycle_start` on repeat forever.
    Infinite { cycle_start: usize },
    /// No conspicuous block fits at `position`. Only reported for points of
    /// Ξ(H), where the decomposition is not defined.
    Stuck { position: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MarkerChain {
    pub first_star: usize,
    pub blocks: Vec<MarkerBlock>,
    pub end: MarkerEnd,
    /// `θ ∈ Ξ(H)`.
    pub exceptional: bool,
}

impl MarkerChain {
    pub fn infinite(&self) -> bool {
        matches!(self.end, MarkerEnd::Infinite { .. })
    }

    pub fn parsed(&self) -> bool {
        !matches!(self.end, MarkerEnd::Stuck { .. })
    }

    pub fn star_positions(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.star).collect()
    }

    fn unit(block: &MarkerBlock) -> String {
        format!("⋆{}", symbols_to_string(&block.letters))
    }

    /// The first `len` symbols spelled by the chain, starting at the first `⋆`.
    pub fn expand(&self, len: usize) -> Vec<Symbol> {
        let mut out = Vec::with_capacity(len);
        let push_block = |b: &MarkerBlock, out: &mut Vec<Symbol>| {
            out.push(Symbol::Star);
            out.extend_from_slice(&b.letters);
        };
        for b in &self.blocks {
            if out.len() >= len {
                break;
            }
            push_block(b, &mut out);
        }
        if let MarkerEnd::Infinite { cycle_start } = self.end {
            while out.len() < len {
                for b in &self.blocks[cycle_start..] {
                    push_block(b, &mut out);
                }
            }
        }
        out.truncate(len);
        out
    }

    /// Number of symbols spelled before the chain ends or starts repeating.
    pub fn spelled_len(&self) -> usize {
        self.blocks.iter().map(|b| 1 + b.letters.len()).sum()
    }
}

impl fmt::Display for MarkerChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.end {
            MarkerEnd::Infinite { cycle_start } => {
                for b in &self.blocks[..cycle_start] {
                    write!(f, "{}", MarkerChain::unit(b))?;
                }
                write!(f, "(")?;
                for b in &self.blocks[cycle_start..] {
                    write!(f, "{}", MarkerChain::unit(b))?;
                }
                write!(f, ")*")
            }
            _ => {
                for b in &self.blocks {
                    write!(f, "{}", MarkerChain::unit(b))?;
                }
                if let MarkerEnd::Stuck { position } = self.end {
                    write!(f, " (stuck at {position})")?;
                }
                Ok(())
            }
        }
    }
}

/// Marker parsing against the conspicuous family of one component.
pub struct MarkerParser {
    component: HyperbolicComponent,
    conspicuous: Vec<HyperbolicComponent>,
    by_period: HashMap<usize, usize>,
    partition: Partition,
}

impl MarkerParser {
    pub fn new(h: &HyperbolicComponent, pool: &ComponentPool) -> Result<MarkerParser> {
        Ok(MarkerParser::with_conspicuous(h, conspicuous_components(h, pool)?))
    }

    pub fn with_conspicuous(h: &HyperbolicComponent, conspicuous: Vec<HyperbolicComponent>) -> MarkerParser {
        let by_period = conspicuous.iter().enumerate().map(|(i, c)| (c.period(), i)).collect();
        MarkerParser { component: h.clone(), conspicuous, by_period, partition: h.star_spec().partition() }
    }

    pub fn conspicuous(&self) -> &[HyperbolicComponent] {
        &self.conspicuous
    }

    /// The `{K(H'), K̂(H')⋆}` vocabulary, each word prefixed by `⋆`.
    pub fn alphabet(&self) -> Vec<String> {
        self.conspicuous
            .iter()
            .flat_map(|c| {
                [format!("⋆{}", symbols_to_string(c.kneading())), format!("⋆{}", symbols_to_string(&c.discarded_star()))]
            })
            .collect()
    }

    pub fn itinerary(&self, theta: &Angle) -> Word {
        self.partition.itinerary_word(theta)
    }

    /// The chain starting at the first `⋆` of `I_H(θ)`; `None` off Disc(H).
    pub fn decompose(&self, theta: &Angle) -> Result<Option<MarkerChain>> {
        let word = self.itinerary(theta);
        let Some(first) = word.position(Symbol::Star) else {
            return Ok(None);
        };
        self.parse_from(theta, &word, first).map(Some)
    }

    /// Every chain of `I_H(θ)`: after a terminal block the next `⋆` opens a
    /// new chain. Stops at an infinite or stuck chain, or when the restart
    /// position repeats along the cycle of the itinerary.
    pub fn decompose_all(&self, theta: &Angle) -> Result<Vec<MarkerChain>> {
        let word = self.itinerary(theta);
        let mut chains = Vec::new();
        let mut seen = Vec::new();
        let mut from = 0;
        loop {
            let Some(star) = next_star(&word, from) else { break };
            let key = cycle_key(&word, star);
            if let Some(k) = key {
                if seen.contains(&k) {
                    break;
                }
                seen.push(k);
            }
            let chain = self.parse_from(theta, &word, star)?;
            let done = chain.end != MarkerEnd::Terminal;
            from = star + chain.spelled_len();
            chains.push(chain);
            if done {
                break;
            }
        }
        Ok(chains)
    }

    fn parse_from(&self, theta: &Angle, word: &Word, first: usize) -> Result<MarkerChain> {
        let kneading = self.component.kneading();
        let n_max = self.component.period();
        let own = self.by_period[&n_max];
        let mut blocks: Vec<MarkerBlock> = Vec::new();
        let mut seen: HashMap<usize, usize> = HashMap::new();
        let mut star = first;
        let exceptional = || xi_contains(&self.component, theta);
        loop {
            let start = star + 1;
            if let Some(k) = cycle_key(word, start) {
                if let Some(&cycle_start) = seen.get(&k) {
                    return Ok(MarkerChain { first_star: first, blocks, end: MarkerEnd::Infinite { cycle_start }, exceptional: exceptional() });
                }
                seen.insert(k, blocks.len());
            }
            let mut i = 1;
            let block = loop {
                let pos = start + i - 1;
                let x = word.get(pos).expect("infinite itinerary");
                let k_i = kneading[i - 1];
                let return_at = if i < n_max { self.by_period.get(&i).copied() } else { None };
                if let Some(c) = return_at {
                    if x == Symbol::Star {
                        break (c, BlockKind::Continue, pos);
                    }
                    if x == k_i.opposite() {
                        break (c, BlockKind::Terminal, pos);
                    }
                } else if i == n_max {
                    if x == Symbol::Star {
                        break (own, BlockKind::Continue, pos);
                    }
                    if x == k_i {
                        break (own, BlockKind::Terminal, pos);
                    }
                }
                if x != k_i || i == n_max {
                    if exceptional() {
                        return Ok(MarkerChain { first_star: first, blocks, end: MarkerEnd::Stuck { position: pos }, exceptional: true });
                    }
                    return Err(Error::Violation(format!(
                        "marker parse of θ = {theta} for {} fails at position {pos} (symbol {x}, itinerary {word})",
                        self.component
                    )));
                }
                i += 1;
            };
            let (c, kind, last) = block;
            let letters = match kind {
                BlockKind::Continue => self.conspicuous[c].discarded_kneading().to_vec(),
                BlockKind::Terminal => self.conspicuous[c].kneading().to_vec(),
            };
            blocks.push(MarkerBlock { component: c, period: self.conspicuous[c].period(), kind, star, letters });
            match kind {
                BlockKind::Terminal => {
                    return Ok(MarkerChain { first_star: first, blocks, end: MarkerEnd::Terminal, exceptional: exceptional() })
                }
                BlockKind::Continue => star = last,
            }
        }
    }
}

/// Default depth of the backtracking audit parse, in symbols.
pub const AUDIT_DEPTH: usize = 128;

/// Result of the backtracking audit parse.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditParse {
    pub first_star: usize,
    pub blocks: Vec<MarkerBlock>,
    /// The last block is a terminal `K(H_i)`; otherwise the tiling ran to the
    /// depth limit.
    pub terminal: bool,
}

impl AuditParse {
    pub fn spelled(&self) -> Vec<Symbol> {
        let mut out = Vec::new();
        for b in &self.blocks {
            out.push(Symbol::Star);
            out.extend_from_slice(&b.letters);
        }
        out
    }
}

impl MarkerParser {
    /// Tiles `I_H(θ)` from its first `⋆` by the words `⋆K̂(H_i)` (followed by
    /// another `⋆`) and `⋆K(H_i)`, trying every block at every position and
    /// backtracking on failure, for up to `depth` symbols. Blocks are tried in
    /// increasing period. `None` off Disc(H) or when no tiling exists.
    pub fn decompose_backtracking(&self, theta: &Angle, depth: usize) -> Option<AuditParse> {
        let word = self.itinerary(theta);
        let first = word.position(Symbol::Star)?;
        let end = first + depth;
        let reach = end + self.component.period() + 1;
        let symbols: Vec<Symbol> = (0..reach).map(|i| word.get(i).expect("infinite itinerary")).collect();
        let mut order: Vec<usize> = (0..self.conspicuous.len()).collect();
        order.sort_by_key(|&i| self.conspicuous[i].period());
        let mut dead = std::collections::HashSet::new();
        let mut blocks = Vec::new();
        let terminal = self.tile(&symbols, first, end, &order, &mut dead, &mut blocks)?;
        Some(AuditParse { first_star: first, blocks, terminal })
    }

    fn tile(
        &self,
        symbols: &[Symbol],
        star: usize,
        end: usize,
        order: &[usize],
        dead: &mut std::collections::HashSet<usize>,
        blocks: &mut Vec<MarkerBlock>,
    ) -> Option<bool> {
        if star >= end {
            return Some(false);
        }
        if symbols[star] != Symbol::Star || dead.contains(&star) {
            return None;
        }
        let matches = |from: usize, w: &[Symbol]| {
            w.iter().enumerate().all(|(j, &x)| symbols[from + j] == x)
        };
        for &c in order {
            let h = &self.conspicuous[c];
            for kind in [BlockKind::Terminal, BlockKind::Continue] {
                let letters = match kind {
                    BlockKind::Terminal => h.kneading(),
                    BlockKind::Continue => h.discarded_kneading(),
                };
                if !matches(star + 1, letters) {
                    continue;
                }
                blocks.push(MarkerBlock { component: c, period: h.period(), kind, star, letters: letters.to_vec() });
                let next = star + 1 + letters.len();
                let found = match kind {
                    BlockKind::Terminal => Some(true),
                    BlockKind::Continue => self.tile(symbols, next, end, order, dead, blocks),
                };
                if found.is_some() {
                    return found;
                }
                blocks.pop();
            }
        }
        dead.insert(star);
        None
    }
}

fn next_star(word: &Word, from: usize) -> Option<usize> {
    let horizon = word.prefix_part().len() + word.cycle_part().len();
    let end = from.max(word.prefix_part().len()) + horizon;
    (from..end).find(|&i| word.get(i) == Some(Symbol::Star))
}

/// Position modulo the cycle, once inside it.
fn cycle_key(word: &Word, pos: usize) -> Option<usize> {
    let pre = word.prefix_part().len();
    let cyc = word.cycle_part().len();
    (cyc > 0 && pos >= pre).then(|| (pos - pre) % cyc)
}

pub fn marker_decomposition(h: &HyperbolicComponent, theta: &Angle, pool: &ComponentPool) -> Result<Option<MarkerChain>> {
    MarkerParser::new(h, pool)?.decompose(theta)
}

pub fn all_markers(h: &HyperbolicComponent, theta: &Angle, pool: &ComponentPool) -> Result<Vec<MarkerChain>> {
    MarkerParser::new(h, pool)?.decompose_all(theta)
}

/// Everything checked for one component in a sweep.
#[derive(Clone, Debug, Serialize)]
pub struct ComponentOutcome {
    pub report: VerificationReport,
    pub checks: CheckReport,
}

impl ComponentOutcome {
    pub fn passed(&self) -> bool {
        self.report.passed() && self.checks.all_passed()
    }
}

pub fn check_component(h: &HyperbolicComponent, pool: &ComponentPool) -> Result<ComponentOutcome> {
    let conspicuous = conspicuous_components(h, pool)?;
    let times: Vec<usize> = conspicuous.iter().filter(|c| *c != h).map(|c| c.period()).collect();
    let trace = RQTrace::build(h, &times, SplitOrder::Sorted)?;
    let checks = structural_checks(&trace, &leaves_of(h)?);
    let report = verify_with(h, conspicuous)?;
    Ok(ComponentOutcome { report, checks })
}

/// Checks every pool component of period `<= max_period` on `jobs` worker
/// threads (all cores when `None`). Results come back in pool order.
pub fn sweep(pool: &ComponentPool, max_period: usize, jobs: Option<usize>) -> Result<Vec<ComponentOutcome>> {
    use rayon::prelude::*;
    pool.require_period(max_period)?;
    let targets: Vec<&HyperbolicComponent> = pool.components().iter().filter(|h| h.period() <= max_period).collect();
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = jobs {
        builder = builder.num_threads(n);
    }
    let workers = builder.build().map_err(|e| Error::Precondition(format!("thread pool: {e}")))?;
    workers.install(|| targets.par_iter().map(|h| check_component(h, pool)).collect())
}
