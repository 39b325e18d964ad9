//! Itinerary codings of angles under doubling.
//!
//! A [`PartitionSpec`] cuts the circle into labelled pieces; the itinerary of
//! `θ` records which piece each `σⁿ(θ)` falls into. Four partitions are
//! supported: the open one with boundary symbol `∘` relative to an angle
//! `α`, its two half-open variants, and the three-piece partition with a
//! closed `⋆`-piece attached to a conjugate pair `θ⁻ < θ⁺`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::circle::{Angle, Arc, ArcSet};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    A,
    B,
    Star,
    Circ,
}

impl Symbol {
    /// `A ↔ B`; `⋆` and `∘` are their own opposites.
    pub fn opposite(self) -> Symbol {
        match self {
            Symbol::A => Symbol::B,
            Symbol::B => Symbol::A,
            s => s,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Symbol::A => 'A',
            Symbol::B => 'B',
            Symbol::Star => '⋆',
            Symbol::Circ => '∘',
        }
    }

    pub fn from_char(c: char) -> Option<Symbol> {
        match c {
            'A' => Some(Symbol::A),
            'B' => Some(Symbol::B),
            '⋆' | '★' | '*' | 'S' => Some(Symbol::Star),
            '∘' | 'o' | 'O' => Some(Symbol::Circ),
            _ => None,
        }
    }

    pub fn is_letter(self) -> bool {
        matches!(self, Symbol::A | Symbol::B)
    }
}

impl Serialize for Symbol {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_char(self.as_char())
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

pub fn symbols_to_string(symbols: &[Symbol]) -> String {
    symbols.iter().map(|s| s.as_char()).collect()
}

/// A finite word, or an eventually periodic infinite word `prefix (cycle)^∞`.
///
/// Infinite words are kept canonical: the cycle is primitive and the prefix
/// is as short as possible, so equal sequences compare equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Word {
    prefix: Vec<Symbol>,
    cycle: Vec<Symbol>,
}

impl Word {
    pub fn finite(symbols: Vec<Symbol>) -> Word {
        Word { prefix: symbols, cycle: Vec::new() }
    }

    pub fn lasso(mut prefix: Vec<Symbol>, cycle: Vec<Symbol>) -> Word {
        assert!(!cycle.is_empty(), "lasso with empty cycle");
        let mut cycle = primitive_root(&cycle).to_vec();
        while let (Some(&p), Some(&c)) = (prefix.last(), cycle.last()) {
            if p != c {
                break;
            }
            prefix.pop();
            cycle.rotate_right(1);
        }
        Word { prefix, cycle }
    }

    pub fn is_infinite(&self) -> bool {
        !self.cycle.is_empty()
    }

    /// Length of a finite word, `None` for infinite ones.
    pub fn len(&self) -> Option<usize> {
        if self.is_infinite() {
            None
        } else {
            Some(self.prefix.len())
        }
    }

    pub fn is_empty(&self) -> bool {
        self.prefix.is_empty() && self.cycle.is_empty()
    }

    pub fn prefix_part(&self) -> &[Symbol] {
        &self.prefix
    }

    pub fn cycle_part(&self) -> &[Symbol] {
        &self.cycle
    }

    pub fn get(&self, i: usize) -> Option<Symbol> {
        if i < self.prefix.len() {
            Some(self.prefix[i])
        } else if self.cycle.is_empty() {
            None
        } else {
            Some(self.cycle[(i - self.prefix.len()) % self.cycle.len()])
        }
    }

    /// The first `n` symbols (fewer if the word is finite and shorter).
    pub fn take(&self, n: usize) -> Vec<Symbol> {
        (0..n).map_while(|i| self.get(i)).collect()
    }

    pub fn contains(&self, s: Symbol) -> bool {
        self.prefix.contains(&s) || self.cycle.contains(&s)
    }

    /// First index holding `s`.
    pub fn position(&self, s: Symbol) -> Option<usize> {
        self.prefix
            .iter()
            .position(|&x| x == s)
            .or_else(|| self.cycle.iter().position(|&x| x == s).map(|i| i + self.prefix.len()))
    }

    pub fn push(&mut self, s: Symbol) {
        assert!(!self.is_infinite(), "push onto an infinite word");
        self.prefix.push(s);
    }
}

fn primitive_root(cycle: &[Symbol]) -> &[Symbol] {
    let n = cycle.len();
    for d in 1..n {
        if n % d == 0 && (d..n).all(|i| cycle[i] == cycle[i - d]) {
            return &cycle[..d];
        }
    }
    cycle
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", symbols_to_string(&self.prefix))?;
        if self.is_infinite() {
            write!(f, "({})*", symbols_to_string(&self.cycle))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Word {
    type Err = Error;

    /// `BABB⋆` or `B(A⋆)*`; see [`Symbol::from_char`] for ASCII aliases.
    fn from_str(s: &str) -> Result<Word> {
        let bad = |why: &str| Error::Parse(format!("bad word {s:?}: {why}"));
        let mut prefix = Vec::new();
        let mut cycle = Vec::new();
        let mut in_cycle = false;
        let mut chars = s.trim().chars().peekable();
        while let Some(c) = chars.next() {
            match c {
                '(' if !in_cycle && cycle.is_empty() => in_cycle = true,
                ')' if in_cycle => {
                    if chars.next() != Some('*') {
                        return Err(bad("expected '*' after ')'"));
                    }
                    if chars.peek().is_some() {
                        return Err(bad("cycle must come last"));
                    }
                    if cycle.is_empty() {
                        return Err(bad("empty cycle"));
                    }
                    return Ok(Word::lasso(prefix, cycle));
                }
                c if c.is_whitespace() => {}
                c => {
                    let sym = Symbol::from_char(c).ok_or_else(|| bad("unknown symbol"))?;
                    if in_cycle {
                        cycle.push(sym);
                    } else {
                        prefix.push(sym);
                    }
                }
            }
        }
        if in_cycle {
            return Err(bad("unterminated cycle"));
        }
        Ok(Word::finite(prefix))
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Word, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Which partition of the circle an itinerary is read against.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PartitionSpec {
    /// Open pieces cut at `α/2`, `(α+1)/2`, boundary points coded `∘`.
    Circ(Angle),
    /// `A = [(α+1)/2, α/2)`, `B = [α/2, (α+1)/2)`.
    Plus(Angle),
    /// `A = ((α+1)/2, α/2]`, `B = (α/2, (α+1)/2]`.
    Minus(Angle),
    /// Open `A`/`B` pieces and the closed `⋆`-piece `σ⁻¹[θ⁻, θ⁺]`.
    Star { minus: Angle, plus: Angle },
}

impl PartitionSpec {
    pub fn star(minus: Angle, plus: Angle) -> Result<PartitionSpec> {
        if minus >= plus {
            return Err(Error::InvalidPartition(format!("star needs θ⁻ < θ⁺, got {minus} ≥ {plus}")));
        }
        match (minus.exact_period(), plus.exact_period()) {
            (Some(p), Some(q)) if p == q => Ok(PartitionSpec::Star { minus, plus }),
            _ => Err(Error::InvalidPartition(format!(
                "star needs periodic angles of equal period, got {minus} and {plus}"
            ))),
        }
    }

    pub fn partition(&self) -> Partition {
        Partition::new(self.clone())
    }

    pub fn symbols(&self) -> &'static [Symbol] {
        match self {
            PartitionSpec::Circ(_) => &[Symbol::A, Symbol::B, Symbol::Circ],
            PartitionSpec::Plus(_) | PartitionSpec::Minus(_) => &[Symbol::A, Symbol::B],
            PartitionSpec::Star { .. } => &[Symbol::A, Symbol::B, Symbol::Star],
        }
    }
}

impl fmt::Display for PartitionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PartitionSpec::Circ(a) => write!(f, "circ({a})"),
            PartitionSpec::Plus(a) => write!(f, "plus({a})"),
            PartitionSpec::Minus(a) => write!(f, "minus({a})"),
            PartitionSpec::Star { minus, plus } => write!(f, "star({minus},{plus})"),
        }
    }
}

/// A partition with its cut points precomputed, for fast classification.
#[derive(Clone, Debug)]
pub struct Partition {
    spec: PartitionSpec,
    cuts: Vec<Angle>,
}

impl Partition {
    fn new(spec: PartitionSpec) -> Partition {
        let cuts = match &spec {
            PartitionSpec::Circ(a) | PartitionSpec::Plus(a) | PartitionSpec::Minus(a) => {
                let (h0, h1) = a.halves();
                vec![h0, h1]
            }
            PartitionSpec::Star { minus, plus } => {
                let (m0, m1) = minus.halves();
                let (p0, p1) = plus.halves();
                vec![m0, p0, m1, p1]
            }
        };
        Partition { spec, cuts }
    }

    pub fn spec(&self) -> &PartitionSpec {
        &self.spec
    }

    /// The piece containing `theta`.
    pub fn symbol_of(&self, theta: &Angle) -> Symbol {
        let c = &self.cuts;
        match &self.spec {
            PartitionSpec::Star { .. } => {
                let in_star = |lo: &Angle, hi: &Angle| lo <= theta && theta <= hi;
                if in_star(&c[0], &c[1]) || in_star(&c[2], &c[3]) {
                    Symbol::Star
                } else if c[1] < *theta && *theta < c[2] {
                    Symbol::B
                } else {
                    Symbol::A
                }
            }
            spec => {
                let (h0, h1) = (&c[0], &c[1]);
                match (theta.cmp(h0), theta.cmp(h1)) {
                    (Ordering::Equal, _) => match spec {
                        PartitionSpec::Circ(_) => Symbol::Circ,
                        PartitionSpec::Plus(_) => Symbol::B,
                        _ => Symbol::A,
                    },
                    (_, Ordering::Equal) => match spec {
                        PartitionSpec::Circ(_) => Symbol::Circ,
                        PartitionSpec::Plus(_) => Symbol::A,
                        _ => Symbol::B,
                    },
                    (Ordering::Greater, Ordering::Less) => Symbol::B,
                    _ => Symbol::A,
                }
            }
        }
    }

    /// The exact piece labelled `symbol`, if the partition has one.
    pub fn piece(&self, symbol: Symbol) -> Option<ArcSet> {
        let c = &self.cuts;
        let arc = |i: usize, j: usize, lc: bool, rc: bool| ArcSet::from_arc(&Arc::new(c[i].clone(), c[j].clone(), lc, rc).expect("distinct cut points"));
        let piece = match (&self.spec, symbol) {
            (PartitionSpec::Circ(_), Symbol::A) => arc(1, 0, false, false),
            (PartitionSpec::Circ(_), Symbol::B) => arc(0, 1, false, false),
            (PartitionSpec::Circ(_), Symbol::Circ) => ArcSet::point(&c[0]).union(&ArcSet::point(&c[1])),
            (PartitionSpec::Plus(_), Symbol::A) => arc(1, 0, true, false),
            (PartitionSpec::Plus(_), Symbol::B) => arc(0, 1, true, false),
            (PartitionSpec::Minus(_), Symbol::A) => arc(1, 0, false, true),
            (PartitionSpec::Minus(_), Symbol::B) => arc(0, 1, false, true),
            (PartitionSpec::Star { .. }, Symbol::A) => arc(3, 0, false, false),
            (PartitionSpec::Star { .. }, Symbol::B) => arc(1, 2, false, false),
            (PartitionSpec::Star { .. }, Symbol::Star) => arc(0, 1, true, true).union(&arc(2, 3, true, true)),
            _ => return None,
        };
        Some(piece)
    }

    /// All pieces, keyed by symbol.
    pub fn pieces(&self) -> Vec<(Symbol, ArcSet)> {
        self.spec
            .symbols()
            .iter()
            .map(|&s| (s, self.piece(s).expect("listed symbol has a piece")))
            .collect()
    }

    fn piece_or_err(&self, symbol: Symbol) -> Result<ArcSet> {
        self.piece(symbol).ok_or_else(|| Error::NoSuchPiece {
            symbol: symbol.as_char(),
            partition: self.spec.to_string(),
        })
    }

    /// Full itinerary of `theta` as a canonical eventually periodic word.
    pub fn itinerary_word(&self, theta: &Angle) -> Word {
        let orbit = theta.forward_orbit();
        let mut prefix = Vec::with_capacity(orbit.preperiod);
        let mut a = theta.clone();
        for _ in 0..orbit.preperiod {
            prefix.push(self.symbol_of(&a));
            a = a.double();
        }
        let cycle = orbit.cycle.iter().map(|x| self.symbol_of(x)).collect();
        Word::lasso(prefix, cycle)
    }

    /// First `n` symbols of the itinerary of `theta`.
    pub fn itinerary_prefix(&self, theta: &Angle, n: usize) -> Vec<Symbol> {
        let mut out = Vec::with_capacity(n);
        let mut a = theta.clone();
        for _ in 0..n {
            out.push(self.symbol_of(&a));
            a = a.double();
        }
        out
    }

    /// Cylinder set `⋂_j σ^{-j}(piece(w_j))`, built back to front.
    pub fn cylinder(&self, word: &[Symbol]) -> Result<ArcSet> {
        let Some((&last, rest)) = word.split_last() else {
            return Ok(ArcSet::full());
        };
        let mut set = self.piece_or_err(last)?;
        for &s in rest.iter().rev() {
            set = self.piece_or_err(s)?.intersect(&set.preimage_under_sigma());
        }
        Ok(set)
    }
}

/// Exact pieces of a partition.
pub fn pieces(spec: &PartitionSpec) -> Vec<(Symbol, ArcSet)> {
    spec.partition().pieces()
}

/// Itinerary of `theta`. Returns the compressed eventually periodic word when
/// `length` exceeds preperiod plus period, else the first `length` symbols.
pub fn itinerary(spec: &PartitionSpec, theta: &Angle, length: usize) -> Word {
    let partition = spec.partition();
    let orbit_len = theta.forward_orbit().len();
    if length > orbit_len {
        partition.itinerary_word(theta)
    } else {
        Word::finite(partition.itinerary_prefix(theta, length))
    }
}

/// Kneading sequence of the angle `α`: its own itinerary for `circ(α)`.
pub fn kneading_of_angle(alpha: &Angle, length: usize) -> Word {
    itinerary(&PartitionSpec::Circ(alpha.clone()), alpha, length)
}

pub fn cylinder_set(spec: &PartitionSpec, word: &[Symbol]) -> Result<ArcSet> {
    spec.partition().cylinder(word)
}
