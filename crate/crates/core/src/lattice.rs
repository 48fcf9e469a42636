//! Allocations over the integer lattice N₀^c and the level walk used by MINE.
//!
//! Level `S_h` is the set of allocations summing to `h`. Within a level the
//! walk follows reverse lexicographic order: `x` comes before `y` when, at the
//! first index where they differ, `x` is larger.

use std::cmp::Ordering;
use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Number of nodes to draw from each community.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Allocation(Vec<u32>);

impl Allocation {
    pub fn new(entries: Vec<u32>) -> Allocation {
        Allocation(entries)
    }

    pub fn zeros(c: usize) -> Allocation {
        Allocation(vec![0; c])
    }

    /// `(h, 0, …, 0)`, the first point of `S_h`.
    pub fn first_of_level(c: usize, h: u32) -> Allocation {
        let mut v = vec![0; c];
        v[0] = h;
        Allocation(v)
    }

    pub fn level(&self) -> u64 {
        self.0.iter().map(|&x| x as u64).sum()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<u32> {
        self.0
    }

    pub fn plus_unit(&self, i: usize) -> Allocation {
        let mut v = self.0.clone();
        v[i] += 1;
        Allocation(v)
    }

    pub fn minus_unit(&self, i: usize) -> Option<Allocation> {
        let mut v = self.0.clone();
        v[i] = v[i].checked_sub(1)?;
        Some(Allocation(v))
    }

    /// Componentwise `self ≤ other`.
    pub fn dominated_by(&self, other: &Allocation) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl Deref for Allocation {
    type Target = [u32];

    fn deref(&self) -> &[u32] {
        &self.0
    }
}

impl From<Vec<u32>> for Allocation {
    fn from(v: Vec<u32>) -> Self {
        Allocation(v)
    }
}

/// Position of `x` relative to `y` in reverse lexicographic order:
/// `Less` means `x` is visited first.
pub fn revlex_cmp(x: &[u32], y: &[u32]) -> Ordering {
    y.cmp(x)
}

/// `x ⪯ y`.
pub fn revlex_le(x: &[u32], y: &[u32]) -> bool {
    revlex_cmp(x, y) != Ordering::Greater
}

/// Subtracts one from the leftmost positive entry.
pub fn downward(k: &Allocation) -> Result<Allocation> {
    let i =
        k.iter().position(|&x| x > 0).ok_or_else(|| Error::Domain("downward step from the zero allocation".into()))?;
    let mut v = k.0.clone();
    v[i] -= 1;
    Ok(Allocation(v))
}

/// Adds one to the first entry.
pub fn upward(k: &Allocation) -> Allocation {
    k.plus_unit(0)
}

/// Successor of `x` within its level in reverse lexicographic order, or
/// `None` when `x = (0, …, 0, h)`.
pub fn next_point(x: &Allocation) -> Option<Allocation> {
    let c = x.len();
    if x[..c - 1].iter().all(|&v| v == 0) {
        return None;
    }
    let mut i = c - 2;
    while x[i] == 0 {
        i -= 1;
    }
    let mut next = x.0.clone();
    next[i] -= 1;
    next[i + 1] = if x[c - 1] == 0 { x[i + 1] + 1 } else { x[c - 1] + 1 };
    for entry in next.iter_mut().skip(i + 2) {
        *entry = 0;
    }
    Some(Allocation(next))
}

/// Number of points in `S_h` for `c` coordinates, C(h + c − 1, c − 1),
/// saturating at `u64::MAX`.
pub fn level_size(c: usize, h: u64) -> u64 {
    let mut acc: u128 = 1;
    for t in 1..c as u128 {
        acc = acc * (h as u128 + t) / t;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// All points of `S_h`, generated recursively (independently of
/// [`next_point`]) in reverse lexicographic order.
pub fn level_points(c: usize, h: u32) -> Vec<Allocation> {
    fn rec(prefix: &mut Vec<u32>, remaining: u32, slots: usize, out: &mut Vec<Allocation>) {
        if slots == 1 {
            prefix.push(remaining);
            out.push(Allocation(prefix.clone()));
            prefix.pop();
            return;
        }
        for first in (0..=remaining).rev() {
            prefix.push(first);
            rec(prefix, remaining - first, slots - 1, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::with_capacity(c), h, c, &mut out);
    out
}
