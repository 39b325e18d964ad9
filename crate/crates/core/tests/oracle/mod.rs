//! Naive reference implementations on machine integers, written without the
//! library's arc-set machinery.

#![allow(dead_code)]

use std::cmp::Ordering;
use std::collections::HashMap;

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// A reduced fraction `num/den` in `[0, 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Q {
    pub num: u64,
    pub den: u64,
}

impl Q {
    pub fn new(num: u64, den: u64) -> Q {
        let num = num % den;
        let g = gcd(num, den).max(1);
        Q { num: num / g, den: den / g }
    }

    pub fn double(self) -> Q {
        Q::new(2 * self.num, self.den)
    }

    /// `(num + shift·den) / (2·den)`, i.e. `self/2` or `(self+1)/2`.
    pub fn half(self, shift: u64) -> Q {
        Q::new(self.num + shift * self.den, 2 * self.den)
    }

    pub fn text(self) -> String {
        format!("{}/{}", self.num, self.den)
    }
}

impl Ord for Q {
    fn cmp(&self, other: &Q) -> Ordering {
        (self.num as u128 * other.den as u128).cmp(&(other.num as u128 * self.den as u128))
    }
}

impl PartialOrd for Q {
    fn partial_cmp(&self, other: &Q) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub fn exact_period(q: Q) -> Option<usize> {
    if q.den % 2 == 0 {
        return None;
    }
    let mut x = q.double();
    let mut n = 1;
    while x != q {
        x = x.double();
        n += 1;
    }
    Some(n)
}

/// Number of points of the forward orbit, `q` included: preperiod plus period.
pub fn orbit_len(q: Q) -> usize {
    let mut seen = HashMap::new();
    let mut x = q;
    let mut i = 0;
    while !seen.contains_key(&x) {
        seen.insert(x, i);
        x = x.double();
        i += 1;
    }
    i
}

pub fn angles_of_period(n: usize) -> Vec<Q> {
    let d = (1u64 << n) - 1;
    let mut v: Vec<Q> = (0..d).map(|k| Q::new(k, d)).filter(|&q| exact_period(q) == Some(n)).collect();
    v.sort();
    v.dedup();
    v
}

fn crosses(a: (Q, Q), b: (Q, Q)) -> bool {
    let inside = |x: Q| a.0 < x && x < a.1;
    let shared = a.0 == b.0 || a.0 == b.1 || a.1 == b.0 || a.1 == b.1;
    !shared && inside(b.0) != inside(b.1)
}

/// Lavaurs' rule, literally: within each period, the smallest unpaired angle
/// is joined to the next unpaired one whose chord crosses no earlier chord.
pub fn lavaurs(max_period: usize) -> Vec<(Q, Q, usize)> {
    let mut chords: Vec<(Q, Q)> = Vec::new();
    let mut out = Vec::new();
    for n in 2..=max_period {
        let angles = angles_of_period(n);
        let mut used = vec![false; angles.len()];
        while let Some(i) = used.iter().position(|u| !u) {
            used[i] = true;
            let j = (i + 1..angles.len())
                .find(|&j| !used[j] && chords.iter().all(|&c| !crosses(c, (angles[i], angles[j]))))
                .expect("every angle has a partner");
            used[j] = true;
            chords.push((angles[i], angles[j]));
            out.push((angles[i], angles[j], n));
        }
    }
    out
}

/// Symbol of `x` for the plus (`closed_left`) or minus partition cut at
/// `α/2` and `(α+1)/2`.
fn one_sided(alpha: Q, x: Q, closed_left: bool) -> char {
    let (lo, hi) = (alpha.half(0), alpha.half(1));
    let b = if closed_left { lo <= x && x < hi } else { lo < x && x <= hi };
    if b {
        'B'
    } else {
        'A'
    }
}

pub fn plus_itinerary(alpha: Q, x: Q, len: usize) -> String {
    walk(x, len, |y| one_sided(alpha, y, true))
}

pub fn minus_itinerary(alpha: Q, x: Q, len: usize) -> String {
    walk(x, len, |y| one_sided(alpha, y, false))
}

pub fn star_symbol(m: Q, p: Q, x: Q) -> char {
    let in_closed = |a: Q, b: Q| a <= x && x <= b;
    if in_closed(m.half(0), p.half(0)) || in_closed(m.half(1), p.half(1)) {
        '⋆'
    } else if p.half(0) < x && x < m.half(1) {
        'B'
    } else {
        'A'
    }
}

pub fn star_itinerary(m: Q, p: Q, x: Q, len: usize) -> String {
    walk(x, len, |y| star_symbol(m, p, y))
}

fn walk(x: Q, len: usize, f: impl Fn(Q) -> char) -> String {
    let mut y = x;
    let mut s = String::new();
    for _ in 0..len {
        s.push(f(y));
        y = y.double();
    }
    s
}

pub fn kneading(m: Q, n: usize) -> String {
    plus_itinerary(m, m, n)
}

/// Disc(H) by its definition: the two one-sided codings of `x` disagree
/// somewhere.
pub fn in_disc(m: Q, p: Q, x: Q) -> bool {
    let len = orbit_len(x) + 1;
    plus_itinerary(m, x, len) != minus_itinerary(p, x, len)
}

/// All points where the star itinerary of length `len` can change: the
/// `σ^j`-preimages of the four cut points, `j < len`, as numerators over
/// `den`.
pub fn cylinder_breaks(m: Q, p: Q, len: usize, den: u64) -> Vec<u64> {
    let mut out = Vec::new();
    for c in [m.half(0), m.half(1), p.half(0), p.half(1)] {
        assert_eq!(den % c.den, 0);
        let base = c.num * (den / c.den);
        for j in 0..len {
            let step = den >> j;
            for k in 0..(1u64 << j) {
                out.push((base >> j) + k * step);
            }
        }
    }
    out.sort();
    out.dedup();
    out
}
