//! Rankings of `q` alternatives, adjacent transpositions and profiles.
//!
//! A [`Ranking`] stores alternatives by position: `order()[0]` is the
//! top-ranked alternative. Alternatives are labelled `1..=q`; ranks returned
//! by [`Ranking::rank_of`] are 1-based (rank 1 is the top).

mod lehmer;
mod profile;

pub use lehmer::{decode, encode, RankingIndex};
pub use profile::{profile_count, profiles, random_profile, Profile, ProfileIter, DEFAULT_PROFILE_CAP};

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{domain, Error, Result};
use crate::paths::Path;

/// Largest number of alternatives supported by the fixed-size representation.
pub const MAX_Q: usize = 12;

/// An alternative label in `1..=q`.
pub type Alt = u8;

/// A total order of the alternatives `1..=q`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ranking {
    q: u8,
    order: [Alt; MAX_Q],
}

impl Ranking {
    /// Builds a ranking from alternatives listed top to bottom.
    pub fn new(order: &[Alt]) -> Result<Self> {
        let q = order.len();
        if q == 0 || q > MAX_Q {
            return domain(format!("ranking length {q} outside 1..={MAX_Q}"));
        }
        let mut seen = [false; MAX_Q + 1];
        for &a in order {
            if a == 0 || a as usize > q || seen[a as usize] {
                return domain(format!("{order:?} is not a permutation of 1..={q}"));
            }
            seen[a as usize] = true;
        }
        Ok(Self::from_slice_unchecked(order))
    }

    pub(crate) fn from_slice_unchecked(order: &[Alt]) -> Self {
        let mut buf = [0; MAX_Q];
        buf[..order.len()].copy_from_slice(order);
        Ranking { q: order.len() as u8, order: buf }
    }

    pub fn identity(q: usize) -> Self {
        assert!((1..=MAX_Q).contains(&q), "q={q} out of range");
        let v: Vec<Alt> = (1..=q as Alt).collect();
        Self::from_slice_unchecked(&v)
    }

    /// `q > q-1 > ... > 1`, the last ranking in Lehmer order.
    pub fn reversed(q: usize) -> Self {
        assert!((1..=MAX_Q).contains(&q), "q={q} out of range");
        let v: Vec<Alt> = (1..=q as Alt).rev().collect();
        Self::from_slice_unchecked(&v)
    }

    #[inline]
    pub fn q(&self) -> usize {
        self.q as usize
    }

    /// Alternatives from top to bottom.
    #[inline]
    pub fn order(&self) -> &[Alt] {
        &self.order[..self.q as usize]
    }

    #[inline]
    pub fn top(&self) -> Alt {
        self.order[0]
    }

    /// 0-based position of `a`.
    #[inline]
    pub fn position(&self, a: Alt) -> usize {
        self.order().iter().position(|&x| x == a).unwrap_or_else(|| panic!("alternative {a} not in ranking {self}"))
    }

    /// 1-based rank of `a`.
    #[inline]
    pub fn rank_of(&self, a: Alt) -> usize {
        self.position(a) + 1
    }

    /// True when `a` is ranked strictly above `b`.
    #[inline]
    pub fn prefers(&self, a: Alt, b: Alt) -> bool {
        self.position(a) < self.position(b)
    }

    /// The ranking read as a map `k -> order[k-1]` on `1..=q`.
    #[inline]
    pub fn apply(&self, a: Alt) -> Alt {
        self.order[a as usize - 1]
    }

    /// `self ∘ x`: the ranking whose `k`-th entry is `self(x(k))`.
    pub fn compose(&self, x: &Ranking) -> Result<Ranking> {
        if self.q != x.q {
            return domain(format!("cannot compose rankings of sizes {} and {}", self.q, x.q));
        }
        Ok(self.compose_unchecked(x))
    }

    #[inline]
    pub(crate) fn compose_unchecked(&self, x: &Ranking) -> Ranking {
        let mut out = *x;
        for slot in out.order[..x.q as usize].iter_mut() {
            *slot = self.apply(*slot);
        }
        out
    }

    pub fn inverse(&self) -> Ranking {
        let mut out = *self;
        for (k, &a) in self.order().iter().enumerate() {
            out.order[a as usize - 1] = k as Alt + 1;
        }
        out
    }

    /// Exchanges the positions of the entries at `p` and `p + 1`.
    #[inline]
    pub fn swap_adjacent_positions(&self, p: usize) -> Ranking {
        let mut out = *self;
        out.order.swap(p, p + 1);
        out
    }

    /// Exchanges the positions of `a` and `b`, adjacent or not.
    pub fn swap_alternatives(&self, a: Alt, b: Alt) -> Ranking {
        let (pa, pb) = (self.position(a), self.position(b));
        let mut out = *self;
        out.order.swap(pa, pb);
        out
    }

    /// Moves `a` to 0-based position `to`, shifting the entries in between.
    pub fn moved(&self, a: Alt, to: usize) -> Ranking {
        let from = self.position(a);
        let mut out = *self;
        if from < to {
            out.order[from..=to].rotate_left(1);
        } else {
            out.order[to..=from].rotate_right(1);
        }
        out
    }

    /// The order with `a` deleted.
    pub fn without(&self, a: Alt) -> Vec<Alt> {
        self.order().iter().copied().filter(|&x| x != a).collect()
    }

    /// True when `a` and `b` occupy neighbouring positions.
    pub fn adjacent(&self, a: Alt, b: Alt) -> bool {
        self.position(a).abs_diff(self.position(b)) == 1
    }

    /// True when the alternatives in `set` occupy a contiguous range of positions.
    pub fn contiguous(&self, set: &[Alt]) -> bool {
        let ps: Vec<usize> = set.iter().map(|&a| self.position(a)).collect();
        let lo = *ps.iter().min().unwrap();
        let hi = *ps.iter().max().unwrap();
        hi - lo + 1 == set.len()
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R, q: usize) -> Ranking {
        let mut v: Vec<Alt> = (1..=q as Alt).collect();
        v.shuffle(rng);
        Self::from_slice_unchecked(&v)
    }

    /// Lexicographic successor, or `None` for the reversed ranking.
    pub fn next_lex(&self) -> Option<Ranking> {
        let mut out = *self;
        let v = &mut out.order[..self.q as usize];
        let q = v.len();
        if q < 2 {
            return None;
        }
        let mut i = q - 1;
        while i > 0 && v[i - 1] >= v[i] {
            i -= 1;
        }
        if i == 0 {
            return None;
        }
        let mut j = q - 1;
        while v[j] <= v[i - 1] {
            j -= 1;
        }
        v.swap(i - 1, j);
        v[i..].reverse();
        Some(out)
    }
}

pub fn compose(y: &Ranking, x: &Ranking) -> Result<Ranking> {
    y.compose(x)
}

pub fn random_ranking<R: Rng + ?Sized>(rng: &mut R, q: usize) -> Ranking {
    Ranking::random(rng, q)
}

/// All `q!` rankings in Lehmer (lexicographic) order.
pub fn rankings(q: usize) -> impl Iterator<Item = Ranking> {
    std::iter::successors(Some(Ranking::identity(q)), |r| r.next_lex())
}

impl fmt::Display for Ranking {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, a) in self.order().iter().enumerate() {
            if k > 0 {
                f.write_str(">")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Ranking {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for Ranking {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let order = s
            .split('>')
            .map(|t| t.trim().parse::<Alt>().map_err(|e| Error::Parse(format!("{s:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Ranking::new(&order).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// The operator `[a:b]`: swaps `a` and `b` when they are adjacent, otherwise
/// leaves the ranking alone. Stored with `a < b`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct AdjTransposition {
    a: Alt,
    b: Alt,
}

impl AdjTransposition {
    pub fn new(a: Alt, b: Alt) -> Result<Self> {
        if a == b || a == 0 || b == 0 {
            return domain(format!("invalid transposition [{a}:{b}]"));
        }
        Ok(AdjTransposition { a: a.min(b), b: a.max(b) })
    }

    pub fn pair(&self) -> (Alt, Alt) {
        (self.a, self.b)
    }

    pub fn involves(&self, x: Alt) -> bool {
        self.a == x || self.b == x
    }

    /// Same unordered pair as `{x, y}`.
    pub fn is(&self, x: Alt, y: Alt) -> bool {
        (self.a, self.b) == (x.min(y), x.max(y))
    }

    pub fn apply(&self, x: &Ranking) -> Ranking {
        let (pa, pb) = (x.position(self.a), x.position(self.b));
        if pa.abs_diff(pb) == 1 {
            let mut out = *x;
            out.order.swap(pa, pb);
            out
        } else {
            *x
        }
    }

    /// The set `T` of all `q(q-1)/2` transpositions, lexicographic in `(a, b)`.
    pub fn all(q: usize) -> Vec<AdjTransposition> {
        let mut out = Vec::with_capacity(q * (q - 1) / 2);
        for a in 1..=q as Alt {
            for b in a + 1..=q as Alt {
                out.push(AdjTransposition { a, b });
            }
        }
        out
    }
}

impl fmt::Display for AdjTransposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}:{}]", self.a, self.b)
    }
}

impl serde::Serialize for AdjTransposition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

pub fn apply_adjacent(t: &AdjTransposition, x: &Ranking) -> Ranking {
    t.apply(x)
}

/// The transposition `t` with `y = t x`, when `x != y` and one exists.
pub fn adjacent_swap_between(x: &Ranking, y: &Ranking) -> Option<AdjTransposition> {
    if x.q != y.q || x == y {
        return None;
    }
    let diff: Vec<usize> = (0..x.q()).filter(|&k| x.order[k] != y.order[k]).collect();
    match diff.as_slice() {
        &[p, p1] if p1 == p + 1 && x.order[p] == y.order[p1] && x.order[p1] == y.order[p] => {
            Some(AdjTransposition { a: x.order[p].min(x.order[p1]), b: x.order[p].max(x.order[p1]) })
        }
        _ => None,
    }
}

/// Moves `a` one position at a time until it sits at the 1-based `target`.
/// Every step is an adjacent transposition involving `a`.
pub fn bubble_path(x: &Ranking, a: Alt, target: usize) -> Result<Path<Ranking>> {
    if target == 0 || target > x.q() {
        return domain(format!("target position {target} outside 1..={}", x.q()));
    }
    let mut path = Path::single(*x);
    bubble_into(&mut path, a, target - 1);
    Ok(path)
}

/// Extends `path` by bubbling `a` to 0-based position `to` from the path's end.
pub(crate) fn bubble_into(path: &mut Path<Ranking>, a: Alt, to: usize) {
    let mut cur = *path.last();
    let mut p = cur.position(a);
    while p != to {
        let next = if p > to { p - 1 } else { p + 1 };
        cur = cur.swap_adjacent_positions(p.min(next));
        path.push(cur);
        p = next;
    }
}
