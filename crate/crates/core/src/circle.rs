//! Exact arithmetic on the circle `T = R/Z`.
//!
//! Points of the circle are reduced rationals in `[0, 1)`. Sets are finite
//! unions of arcs with per-endpoint openness, kept in a canonical form so
//! that equal sets compare equal structurally.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A reduced rational in the closed unit interval `[0, 1]`.
///
/// Used for lengths and for the internal linear coordinates of arc sets,
/// where the right end `1` of `[0, 1)` has to be representable.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Fraction {
    num: BigUint,
    den: BigUint,
}

impl Fraction {
    fn from_parts(num: BigUint, den: BigUint) -> Self {
        debug_assert!(!den.is_zero());
        let g = num.gcd(&den);
        if g.is_one() {
            Fraction { num, den }
        } else if num.is_zero() {
            Fraction { num, den: BigUint::one() }
        } else {
            Fraction { num: num / &g, den: den / &g }
        }
    }

    pub fn zero() -> Self {
        Fraction { num: BigUint::zero(), den: BigUint::one() }
    }

    pub fn one() -> Self {
        Fraction { num: BigUint::one(), den: BigUint::one() }
    }

    pub fn half_turn() -> Self {
        Fraction { num: BigUint::one(), den: BigUint::from(2u32) }
    }

    pub fn numer(&self) -> &BigUint {
        &self.num
    }

    pub fn denom(&self) -> &BigUint {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn is_one(&self) -> bool {
        self.num == self.den
    }

    /// `x / 2`.
    fn half(&self) -> Fraction {
        if self.num.is_even() {
            Fraction { num: &self.num >> 1u32, den: self.den.clone() }
        } else {
            Fraction { num: self.num.clone(), den: &self.den << 1u32 }
        }
    }

    /// `(x + 1) / 2`.
    fn half_plus(&self) -> Fraction {
        let shifted = Fraction { num: &self.num + &self.den, den: self.den.clone() };
        shifted.half()
    }

    /// `2x mod 1`, always landing in `[0, 1)`.
    fn double_mod_one(&self) -> Fraction {
        if self.den.is_even() {
            let den = &self.den >> 1u32;
            let num = &self.num % &den;
            if num.is_zero() {
                return Fraction::zero();
            }
            Fraction { num, den }
        } else {
            let num = (&self.num << 1u32) % &self.den;
            if num.is_zero() {
                return Fraction::zero();
            }
            Fraction { num, den: self.den.clone() }
        }
    }

    fn add(&self, other: &Fraction) -> Fraction {
        Fraction::from_parts(&self.num * &other.den + &other.num * &self.den, &self.den * &other.den)
    }

    /// `self - other`, requires `self >= other`.
    fn sub(&self, other: &Fraction) -> Fraction {
        debug_assert!(*self >= *other);
        Fraction::from_parts(&self.num * &other.den - &other.num * &self.den, &self.den * &other.den)
    }

    pub fn to_f64(&self) -> f64 {
        ratio_to_f64(&self.num, &self.den)
    }
}

fn ratio_to_f64(num: &BigUint, den: &BigUint) -> f64 {
    match (num.to_u64(), den.to_u64()) {
        (Some(n), Some(d)) => n as f64 / d as f64,
        _ => {
            let shift = den.bits().saturating_sub(60);
            let n = (num >> shift).to_f64().unwrap_or(f64::MAX);
            let d = (den >> shift).to_f64().unwrap_or(f64::MAX);
            n / d
        }
    }
}

impl Ord for Fraction {
    fn cmp(&self, other: &Self) -> Ordering {
        if let (Some(a), Some(b), Some(c), Some(d)) =
            (self.num.to_u64(), self.den.to_u64(), other.num.to_u64(), other.den.to_u64())
        {
            return (a as u128 * d as u128).cmp(&(c as u128 * b as u128));
        }
        (&self.num * &other.den).cmp(&(&other.num * &self.den))
    }
}

impl PartialOrd for Fraction {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl fmt::Debug for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A rational point of the circle, stored as a reduced fraction in `[0, 1)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Angle(Fraction);

impl Angle {
    /// `num / den` reduced mod 1. Panics if `den == 0`.
    pub fn new(num: u64, den: u64) -> Angle {
        assert!(den != 0, "angle with zero denominator");
        Angle::from_biguint(BigUint::from(num), BigUint::from(den))
    }

    pub fn try_new(num: BigInt, den: BigInt) -> Result<Angle> {
        if den.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {num}/{den}")));
        }
        let (num, den) = if den.is_negative() { (-num, -den) } else { (num, den) };
        let den = den.magnitude().clone();
        let num = num.mod_floor(&BigInt::from(den.clone())).magnitude().clone();
        Ok(Angle::from_biguint(num, den))
    }

    fn from_biguint(num: BigUint, den: BigUint) -> Angle {
        let num = num % &den;
        Angle(Fraction::from_parts(num, den))
    }

    pub(crate) fn from_fraction(f: Fraction) -> Angle {
        if f.is_one() {
            Angle::zero()
        } else {
            Angle(f)
        }
    }

    pub fn zero() -> Angle {
        Angle(Fraction::zero())
    }

    pub fn numer(&self) -> &BigUint {
        &self.0.num
    }

    pub fn denom(&self) -> &BigUint {
        &self.0.den
    }

    pub fn as_fraction(&self) -> &Fraction {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// The angle-doubling map `θ ↦ 2θ mod 1`.
    pub fn double(&self) -> Angle {
        Angle(self.0.double_mod_one())
    }

    /// `σ^n(θ)`.
    pub fn double_n(&self, n: usize) -> Angle {
        let mut a = self.clone();
        for _ in 0..n {
            a = a.double();
        }
        a
    }

    /// The two preimages `θ/2` and `(θ+1)/2` under doubling, in increasing order.
    pub fn halves(&self) -> (Angle, Angle) {
        (Angle(self.0.half()), Angle(self.0.half_plus()))
    }

    /// Exact period under doubling, `None` for strictly preperiodic angles.
    pub fn exact_period(&self) -> Option<usize> {
        if self.0.den.is_even() {
            return None;
        }
        Some(multiplicative_order_of_two(&self.0.den))
    }

    /// Tail length and cycle of the (eventually periodic) forward orbit.
    pub fn forward_orbit(&self) -> Orbit {
        let preperiod = self.0.den.trailing_zeros().unwrap_or(0) as usize;
        let entry = self.double_n(preperiod);
        let period = entry.exact_period().expect("odd denominator after removing powers of two");
        let mut cycle = Vec::with_capacity(period);
        let mut a = entry;
        for _ in 0..period {
            let next = a.double();
            cycle.push(a);
            a = next;
        }
        Orbit { preperiod, cycle }
    }

    /// Counterclockwise distance from `self` to `to`, in `[0, 1)`.
    pub fn ccw_distance(&self, to: &Angle) -> Fraction {
        if to.0 >= self.0 {
            to.0.sub(&self.0)
        } else {
            Fraction::one().sub(&self.0.sub(&to.0))
        }
    }

    /// Numerator of this angle written over `den`, if `den` is a multiple
    /// of the reduced denominator.
    pub fn numerator_over(&self, den: &BigUint) -> Option<BigUint> {
        if (den % &self.0.den).is_zero() {
            Some(&self.0.num * (den / &self.0.den))
        } else {
            None
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }
}

/// Multiplicative order of 2 modulo an odd `modulus` (1 for `modulus == 1`).
pub fn multiplicative_order_of_two(modulus: &BigUint) -> usize {
    debug_assert!(modulus.is_odd());
    if modulus.is_one() {
        return 1;
    }
    if let Some(m) = modulus.to_u64() {
        let m = m as u128;
        let mut x = 2u128 % m;
        let mut k = 1usize;
        while x != 1 {
            x = (x << 1) % m;
            k += 1;
        }
        return k;
    }
    let two = BigUint::from(2u32);
    let mut x = &two % modulus;
    let mut k = 1usize;
    while !x.is_one() {
        x = (x << 1u32) % modulus;
        k += 1;
    }
    k
}

/// Eventually periodic forward orbit of a rational angle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    pub preperiod: usize,
    pub cycle: Vec<Angle>,
}

impl Orbit {
    pub fn period(&self) -> usize {
        self.cycle.len()
    }

    /// `σ^n(θ)` read off the lasso, for `n >= preperiod`.
    pub fn cycle_point(&self, n: usize) -> &Angle {
        debug_assert!(n >= self.preperiod);
        &self.cycle[(n - self.preperiod) % self.cycle.len()]
    }

    /// Number of distinct points `θ, σθ, …` on the orbit.
    pub fn len(&self) -> usize {
        self.preperiod + self.cycle.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.num, self.0.den)
    }
}

impl fmt::Debug for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Angle {
    type Err = Error;

    fn from_str(s: &str) -> Result<Angle> {
        let s = s.trim();
        let bad = || Error::Parse(format!("not a rational angle: {s:?}"));
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = den.parse().map_err(|_| bad())?;
        Angle::try_new(num, den)
    }
}

impl Serialize for Angle {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Angle {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Angle, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A circular arc traversed counterclockwise from `start` to `end`.
///
/// `start == end` is either a single closed point or, with `full` set, the
/// whole circle (both ends closed) or the circle minus that point (both
/// ends open).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Arc {
    pub start: Angle,
    pub end: Angle,
    pub start_closed: bool,
    pub end_closed: bool,
    full: bool,
}

impl Arc {
    pub fn new(start: Angle, end: Angle, start_closed: bool, end_closed: bool) -> Result<Arc> {
        if start == end && !(start_closed && end_closed) {
            return Err(Error::DegenerateArc(start.to_string()));
        }
        Ok(Arc { start, end, start_closed, end_closed, full: false })
    }

    pub fn closed(start: Angle, end: Angle) -> Arc {
        Arc::new(start, end, true, true).expect("closed arcs are never degenerate")
    }

    /// Open arc; panics on `start == end`.
    pub fn open(start: Angle, end: Angle) -> Arc {
        Arc::new(start, end, false, false).expect("open arc with equal endpoints")
    }

    pub fn point(at: Angle) -> Arc {
        Arc { start: at.clone(), end: at, start_closed: true, end_closed: true, full: false }
    }

    pub fn full() -> Arc {
        Arc { start: Angle::zero(), end: Angle::zero(), start_closed: true, end_closed: true, full: true }
    }

    /// The whole circle except `at`.
    pub fn punctured(at: Angle) -> Arc {
        Arc { start: at.clone(), end: at, start_closed: false, end_closed: false, full: true }
    }

    pub fn is_full(&self) -> bool {
        self.full
    }

    pub fn is_point(&self) -> bool {
        !self.full && self.start == self.end
    }

    pub fn length(&self) -> Fraction {
        if self.full {
            Fraction::one()
        } else {
            self.start.ccw_distance(&self.end)
        }
    }

    pub fn contains(&self, theta: &Angle) -> bool {
        if self.full {
            return self.start_closed || *theta != self.start;
        }
        if *theta == self.start {
            return self.start_closed;
        }
        if *theta == self.end {
            return self.end_closed;
        }
        let span = self.start.ccw_distance(&self.end);
        let offset = self.start.ccw_distance(theta);
        offset < span
    }

    pub fn closure(&self) -> Arc {
        if self.full {
            return Arc::full();
        }
        Arc { start_closed: true, end_closed: true, ..self.clone() }
    }

    /// Linear pieces on `[0, 1)`.
    fn intervals(&self) -> Vec<Interval> {
        let mut out = Vec::with_capacity(2);
        if self.full {
            let x = self.start.0.clone();
            if self.start_closed {
                out.push(Interval::new(Fraction::zero(), true, Fraction::one(), false));
            } else {
                out.push(Interval::new(Fraction::zero(), true, x.clone(), false));
                out.push(Interval::new(x, false, Fraction::one(), false));
            }
            return out;
        }
        let (a, b) = (&self.start.0, &self.end.0);
        match a.cmp(b) {
            Ordering::Less | Ordering::Equal => {
                out.push(Interval::new(a.clone(), self.start_closed, b.clone(), self.end_closed));
            }
            Ordering::Greater => {
                out.push(Interval::new(a.clone(), self.start_closed, Fraction::one(), false));
                if b.is_zero() {
                    if self.end_closed {
                        out.push(Interval::new(Fraction::zero(), true, Fraction::zero(), true));
                    }
                } else {
                    out.push(Interval::new(Fraction::zero(), true, b.clone(), self.end_closed));
                }
            }
        }
        out
    }

    /// Image under doubling; defined only for arcs shorter than a half turn.
    pub fn double(&self) -> Result<Arc> {
        if self.full || self.length() >= Fraction::half_turn() {
            return Err(Error::ArcTooLong(self.to_string()));
        }
        Ok(Arc {
            start: self.start.double(),
            end: self.end.double(),
            start_closed: self.start_closed,
            end_closed: self.end_closed,
            full: false,
        })
    }

    /// Writes the arc with endpoints as numerators over `den`.
    pub fn format_over(&self, den: &BigUint, marks: &dyn Fn(&Angle) -> bool) -> String {
        let num = |a: &Angle| {
            let n = a.numerator_over(den).map(|n| n.to_string()).unwrap_or_else(|| a.to_string());
            if marks(a) {
                format!("{n}ᵉ")
            } else {
                n
            }
        };
        let (l, r) = (if self.start_closed { '[' } else { '(' }, if self.end_closed { ']' } else { ')' });
        format!("{l}{},{}{r}", num(&self.start), num(&self.end))
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.full && self.start_closed {
            return write!(f, "T");
        }
        let l = if self.start_closed { '[' } else { '(' };
        let r = if self.end_closed { ']' } else { ')' };
        write!(f, "{l}{},{}{r}", self.start, self.end)
    }
}

impl Serialize for Arc {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl fmt::Debug for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Arc {
    type Err = Error;

    /// Grammar: `T` for the whole circle, otherwise `[a,b]`, `(a,b)`,
    /// `[a,b)` or `(a,b]` with angles `p/q`. `(a,a)` is the circle
    /// punctured at `a` and `[a,a]` the single point `a`.
    fn from_str(s: &str) -> Result<Arc> {
        let s = s.trim();
        if s == "T" {
            return Ok(Arc::full());
        }
        let bad = || Error::Parse(format!("not an arc: {s:?}"));
        let mut chars = s.chars();
        let open_ch = chars.next().ok_or_else(bad)?;
        let close_ch = chars.next_back().ok_or_else(bad)?;
        let start_closed = match open_ch {
            '[' => true,
            '(' => false,
            _ => return Err(bad()),
        };
        let end_closed = match close_ch {
            ']' => true,
            ')' => false,
            _ => return Err(bad()),
        };
        let (a, b) = chars.as_str().split_once(',').ok_or_else(bad)?;
        let (a, b): (Angle, Angle) = (a.parse()?, b.parse()?);
        if a == b && !start_closed && !end_closed {
            return Ok(Arc::punctured(a));
        }
        Arc::new(a, b, start_closed, end_closed)
    }
}

/// Linear interval inside `[0, 1]`; canonical sets never contain the point 1.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
struct Interval {
    lo: Fraction,
    lo_closed: bool,
    hi: Fraction,
    hi_closed: bool,
}

impl Interval {
    fn new(lo: Fraction, lo_closed: bool, hi: Fraction, hi_closed: bool) -> Interval {
        Interval { lo, lo_closed, hi, hi_closed }
    }

    fn is_empty(&self) -> bool {
        match self.lo.cmp(&self.hi) {
            Ordering::Less => false,
            Ordering::Equal => !(self.lo_closed && self.hi_closed),
            Ordering::Greater => true,
        }
    }

    fn contains(&self, x: &Fraction) -> bool {
        let above = match self.lo.cmp(x) {
            Ordering::Less => true,
            Ordering::Equal => self.lo_closed,
            Ordering::Greater => false,
        };
        let below = match x.cmp(&self.hi) {
            Ordering::Less => true,
            Ordering::Equal => self.hi_closed,
            Ordering::Greater => false,
        };
        above && below
    }
}

/// A finite union of arcs in canonical form.
///
/// Internally the set is cut at `0` into sorted, pairwise separated linear
/// intervals of `[0, 1)`; [`ArcSet::arcs`] fuses the piece ending at `1`
/// with the piece starting at `0` again.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ArcSet {
    intervals: Vec<Interval>,
}

impl ArcSet {
    pub fn empty() -> ArcSet {
        ArcSet::default()
    }

    pub fn full() -> ArcSet {
        ArcSet::from_arc(&Arc::full())
    }

    pub fn from_arc(arc: &Arc) -> ArcSet {
        ArcSet::normalized(arc.intervals())
    }

    pub fn from_arcs<'a>(arcs: impl IntoIterator<Item = &'a Arc>) -> ArcSet {
        ArcSet::normalized(arcs.into_iter().flat_map(|a| a.intervals()).collect())
    }

    pub fn point(at: &Angle) -> ArcSet {
        ArcSet::from_arc(&Arc::point(at.clone()))
    }

    fn normalized(raw: Vec<Interval>) -> ArcSet {
        let mut items: Vec<Interval> = Vec::with_capacity(raw.len() + 1);
        for mut iv in raw {
            if iv.hi.is_one() && iv.hi_closed {
                iv.hi_closed = false;
                items.push(Interval::new(Fraction::zero(), true, Fraction::zero(), true));
            }
            if !iv.is_empty() {
                items.push(iv);
            }
        }
        items.sort_by(|a, b| a.lo.cmp(&b.lo).then_with(|| b.lo_closed.cmp(&a.lo_closed)));
        let mut out: Vec<Interval> = Vec::with_capacity(items.len());
        for iv in items {
            if let Some(last) = out.last_mut() {
                let joins = match iv.lo.cmp(&last.hi) {
                    Ordering::Less => true,
                    Ordering::Equal => iv.lo_closed || last.hi_closed,
                    Ordering::Greater => false,
                };
                if joins {
                    match iv.hi.cmp(&last.hi) {
                        Ordering::Greater => {
                            last.hi = iv.hi;
                            last.hi_closed = iv.hi_closed;
                        }
                        Ordering::Equal => last.hi_closed |= iv.hi_closed,
                        Ordering::Less => {}
                    }
                    if iv.lo == last.lo {
                        last.lo_closed |= iv.lo_closed;
                    }
                    continue;
                }
            }
            out.push(iv);
        }
        ArcSet { intervals: out }
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn is_full(&self) -> bool {
        *self == ArcSet::full()
    }

    /// The connected components, as arcs, sorted by start angle (an arc
    /// through `0` comes last).
    pub fn arcs(&self) -> Vec<Arc> {
        let ivs = &self.intervals;
        if ivs.is_empty() {
            return Vec::new();
        }
        let to_arc = |iv: &Interval| Arc {
            start: Angle::from_fraction(iv.lo.clone()),
            end: Angle::from_fraction(iv.hi.clone()),
            start_closed: iv.lo_closed,
            end_closed: iv.hi_closed,
            full: false,
        };
        let first = &ivs[0];
        let last = &ivs[ivs.len() - 1];
        let wraps = last.hi.is_one() && first.lo.is_zero() && first.lo_closed;
        if !wraps {
            return ivs.iter().map(to_arc).collect();
        }
        if ivs.len() == 1 {
            return vec![Arc::full()];
        }
        let fused_start = Angle::from_fraction(last.lo.clone());
        let fused_end = Angle::from_fraction(first.hi.clone());
        let fused = if fused_start == fused_end {
            Arc::punctured(fused_start)
        } else {
            Arc {
                start: fused_start,
                end: fused_end,
                start_closed: last.lo_closed,
                end_closed: first.hi_closed,
                full: false,
            }
        };
        let mut arcs: Vec<Arc> = ivs[1..ivs.len() - 1].iter().map(to_arc).collect();
        arcs.push(fused);
        arcs
    }

    pub fn contains_point(&self, theta: &Angle) -> bool {
        self.intervals.iter().any(|iv| iv.contains(&theta.0))
    }

    pub fn complement(&self) -> ArcSet {
        let mut out = Vec::with_capacity(self.intervals.len() + 1);
        let mut cursor = Fraction::zero();
        let mut cursor_closed = true;
        for iv in &self.intervals {
            let gap = Interval::new(cursor, cursor_closed, iv.lo.clone(), !iv.lo_closed);
            if !gap.is_empty() {
                out.push(gap);
            }
            cursor = iv.hi.clone();
            cursor_closed = !iv.hi_closed;
        }
        let tail = Interval::new(cursor, cursor_closed, Fraction::one(), false);
        if !tail.is_empty() {
            out.push(tail);
        }
        ArcSet::normalized(out)
    }

    pub fn union(&self, other: &ArcSet) -> ArcSet {
        let mut all = self.intervals.clone();
        all.extend(other.intervals.iter().cloned());
        ArcSet::normalized(all)
    }

    pub fn intersect(&self, other: &ArcSet) -> ArcSet {
        let (a, b) = (&self.intervals, &other.intervals);
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        while i < a.len() && j < b.len() {
            let (x, y) = (&a[i], &b[j]);
            let (lo, lo_closed) = match x.lo.cmp(&y.lo) {
                Ordering::Greater => (&x.lo, x.lo_closed),
                Ordering::Less => (&y.lo, y.lo_closed),
                Ordering::Equal => (&x.lo, x.lo_closed && y.lo_closed),
            };
            let hi_order = x.hi.cmp(&y.hi);
            let (hi, hi_closed) = match hi_order {
                Ordering::Less => (&x.hi, x.hi_closed),
                Ordering::Greater => (&y.hi, y.hi_closed),
                Ordering::Equal => (&x.hi, x.hi_closed && y.hi_closed),
            };
            let piece = Interval::new(lo.clone(), lo_closed, hi.clone(), hi_closed);
            if !piece.is_empty() {
                out.push(piece);
            }
            match hi_order {
                Ordering::Less => i += 1,
                Ordering::Greater => j += 1,
                Ordering::Equal => {
                    // the one whose right end is open finishes first; a closed
                    // end may still meet a point-interval of the other set
                    if x.hi_closed && !y.hi_closed {
                        j += 1;
                    } else if y.hi_closed && !x.hi_closed {
                        i += 1;
                    } else {
                        i += 1;
                        j += 1;
                    }
                }
            }
        }
        ArcSet::normalized(out)
    }

    pub fn difference(&self, other: &ArcSet) -> ArcSet {
        self.intersect(&other.complement())
    }

    pub fn is_subset(&self, other: &ArcSet) -> bool {
        self.difference(other).is_empty()
    }

    /// Preimage under doubling: every arc lifts to its two half-size copies.
    pub fn preimage_under_sigma(&self) -> ArcSet {
        let mut out = Vec::with_capacity(2 * self.intervals.len());
        for iv in &self.intervals {
            out.push(Interval::new(iv.lo.half(), iv.lo_closed, iv.hi.half(), iv.hi_closed));
            out.push(Interval::new(iv.lo.half_plus(), iv.lo_closed, iv.hi.half_plus(), iv.hi_closed));
        }
        ArcSet::normalized(out)
    }

    /// Image under doubling, arc by arc. Every component must be shorter than
    /// a half turn.
    pub fn image_under_sigma(&self) -> Result<ArcSet> {
        let images = self.arcs().iter().map(Arc::double).collect::<Result<Vec<_>>>()?;
        Ok(ArcSet::from_arcs(&images))
    }

    pub fn closure(&self) -> ArcSet {
        ArcSet::from_arcs(&self.arcs().iter().map(Arc::closure).collect::<Vec<_>>())
    }

    pub fn interior(&self) -> ArcSet {
        self.complement().closure().complement()
    }

    /// Total length.
    pub fn measure(&self) -> Fraction {
        self.intervals.iter().fold(Fraction::zero(), |acc, iv| acc.add(&iv.hi.sub(&iv.lo)))
    }

    /// True if every component is a single point.
    pub fn is_discrete(&self) -> bool {
        self.intervals.iter().all(|iv| iv.lo == iv.hi)
    }

    /// The points of a discrete set, in increasing order.
    pub fn points(&self) -> Vec<Angle> {
        self.intervals
            .iter()
            .filter(|iv| iv.lo == iv.hi)
            .map(|iv| Angle::from_fraction(iv.lo.clone()))
            .collect()
    }

    /// Endpoints of all components (each listed once, sorted).
    pub fn endpoints(&self) -> Vec<Angle> {
        let mut pts: Vec<Angle> = self
            .arcs()
            .iter()
            .filter(|a| !a.is_full())
            .flat_map(|a| [a.start.clone(), a.end.clone()])
            .collect();
        pts.sort();
        pts.dedup();
        pts
    }
}

impl fmt::Display for ArcSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let arcs = self.arcs();
        if arcs.is_empty() {
            return write!(f, "∅");
        }
        for (i, a) in arcs.iter().enumerate() {
            if i > 0 {
                write!(f, "∪")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

impl Serialize for ArcSet {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl fmt::Debug for ArcSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for ArcSet {
    type Err = Error;

    /// Arcs joined by `∪` (or `u`); `∅` for the empty set.
    fn from_str(s: &str) -> Result<ArcSet> {
        let s = s.trim();
        if s == "∅" || s.is_empty() {
            return Ok(ArcSet::empty());
        }
        let arcs = s
            .split(['∪', 'u'])
            .map(str::parse)
            .collect::<Result<Vec<Arc>>>()?;
        Ok(ArcSet::from_arcs(&arcs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(p: u64, q: u64) -> Angle {
        Angle::new(p, q)
    }

    fn set(s: &str) -> ArcSet {
        s.parse().unwrap()
    }

    #[test]
    fn doubling() {
        assert_eq!(a(1, 3).double(), a(2, 3));
        assert_eq!(a(26, 62).double(), a(52, 62));
        assert_eq!(a(52, 62).double(), a(42, 62));
        assert_eq!(a(52, 62), a(26, 31));
        assert_eq!(a(1, 2).double(), Angle::zero());
    }

    #[test]
    fn halves_in_order() {
        assert_eq!(Angle::zero().halves(), (Angle::zero(), a(1, 2)));
        assert_eq!(a(1, 3).halves(), (a(1, 6), a(2, 3)));
        assert_eq!(a(3, 7).halves(), (a(3, 14), a(10, 14)));
    }

    #[test]
    fn periods() {
        assert_eq!(Angle::zero().exact_period(), Some(1));
        assert_eq!(a(1, 7).exact_period(), Some(3));
        assert_eq!(a(13, 31).exact_period(), Some(5));
        assert_eq!(a(1, 6).exact_period(), None);
        assert_eq!(a(26, 63).exact_period(), Some(6));
    }

    #[test]
    fn orbits() {
        let o = a(1, 3).forward_orbit();
        assert_eq!((o.preperiod, o.cycle), (0, vec![a(1, 3), a(2, 3)]));
        let o = a(1, 6).forward_orbit();
        assert_eq!((o.preperiod, o.cycle), (1, vec![a(1, 3), a(2, 3)]));
        let o = a(3, 8).forward_orbit();
        assert_eq!((o.preperiod, o.cycle), (3, vec![Angle::zero()]));
    }

    #[test]
    fn parse_and_display() {
        assert_eq!("26/62".parse::<Angle>().unwrap(), a(13, 31));
        assert_eq!("0".parse::<Angle>().unwrap(), Angle::zero());
        assert_eq!("-1/3".parse::<Angle>().unwrap(), a(2, 3));
        assert_eq!(a(13, 31).to_string(), "13/31");
        assert!("0.5".parse::<Angle>().is_err());
        assert!("1/0".parse::<Angle>().is_err());
        assert!("x/3".parse::<Angle>().is_err());
        for s in ["[1/3,2/3]", "(5/6,1/6)", "[1/4,1/2)", "(0/1,1/2]", "T", "(1/3,1/3)", "[1/3,1/3]"] {
            assert_eq!(s.parse::<Arc>().unwrap().to_string(), s);
        }
        assert!("(1/3,1/3]".parse::<Arc>().is_err());
    }

    #[test]
    fn wrap_arcs_split_and_fuse() {
        let s = set("(5/6,1/6)");
        assert_eq!(s.arcs(), vec!["(5/6,1/6)".parse().unwrap()]);
        assert!(s.contains_point(&Angle::zero()));
        assert!(!s.contains_point(&a(1, 6)));
        assert!(s.contains_point(&a(11, 12)));
        let s = set("(1/2,0/1)");
        assert!(!s.contains_point(&Angle::zero()));
        assert_eq!(s.to_string(), "(1/2,0/1)");
        let s = set("(1/2,0/1]");
        assert!(s.contains_point(&Angle::zero()));
        assert_eq!(s.to_string(), "(1/2,0/1]");
        assert_eq!(set("[0/1,1/2)∪[1/2,0/1)").to_string(), "T");
        assert_eq!(set("[0/1,1/2)∪(1/2,0/1)").to_string(), "(1/2,1/2)");
    }

    #[test]
    fn contains_point_respects_openness() {
        assert!(set("[1/3,2/3]").contains_point(&a(1, 3)));
        assert!(!set("(1/3,2/3]").contains_point(&a(1, 3)));
    }

    #[test]
    fn union_merges_touching_closures() {
        assert_eq!(set("[0/1,1/3)∪[1/3,1/2]"), set("[0/1,1/2]"));
        assert_eq!(set("(0/1,1/3)∪(1/3,1/2)").arcs().len(), 2);
        assert_eq!(set("(0/1,1/3)∪(1/3,1/2)").union(&ArcSet::point(&a(1, 3))), set("(0/1,1/2)"));
    }

    #[test]
    fn intersect_and_complement() {
        let s = set("[1/3,2/3]");
        assert_eq!(s.complement(), set("(2/3,1/3)"));
        assert!(s.intersect(&s.complement()).is_empty());
        assert_eq!(set("[1/4,1/2]").intersect(&set("[1/2,3/4]")), ArcSet::point(&a(1, 2)));
        assert!(set("[1/4,1/2)").intersect(&set("[1/2,3/4]")).is_empty());
        assert_eq!(set("[42/62,20/62]").intersect(&set("[18/62,44/62]")), set("[18/62,20/62]∪[42/62,44/62]"));
        // closed right end meeting a point of the other set
        assert_eq!(set("[0/1,1/2]").intersect(&set("(1/4,1/2)∪[1/2,1/2]")), set("(1/4,1/2]"));
    }

    #[test]
    fn preimage_halves_endpoints() {
        assert_eq!(set("[1/3,2/3]").preimage_under_sigma(), set("[1/6,1/3]∪[2/3,5/6]"));
        assert_eq!(ArcSet::point(&Angle::zero()).preimage_under_sigma(), set("[0/1,0/1]∪[1/2,1/2]"));
        assert_eq!(set("(1/2,0/1)").preimage_under_sigma(), set("(1/4,1/2)∪(3/4,0/1)"));
    }

    #[test]
    fn image_of_short_arcs() {
        let s = set("[18/62,20/62]∪[42/62,44/62]");
        assert_eq!(s.image_under_sigma().unwrap(), set("[36/62,40/62]∪[22/62,26/62]"));
        assert!(set("[0/1,1/2]").image_under_sigma().is_err());
        assert!(ArcSet::full().image_under_sigma().is_err());
        assert_eq!(ArcSet::point(&a(1, 3)).image_under_sigma().unwrap(), ArcSet::point(&a(2, 3)));
    }

    #[test]
    fn interior_and_closure() {
        let s = set("[1/6,1/3]∪[2/3,5/6]");
        assert_eq!(s.interior(), set("(1/6,1/3)∪(2/3,5/6)"));
        assert_eq!(s.interior().closure(), s);
        assert_eq!(s.measure(), Fraction::from_parts(1u32.into(), 3u32.into()));
    }
}
