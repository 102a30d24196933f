use rayon::prelude::*;

use super::move_span;
use crate::ranking::Profile;
use crate::scf::TabularScf;

/// Per-profile manipulability of a tabulated function.
///
/// Stores, for every profile index, the smallest block width realising a
/// manipulation there (0 when the profile is not a manipulation point).
#[derive(Clone, Debug)]
pub struct ManipulationTable {
    q: usize,
    n: usize,
    min_span: Vec<u8>,
}

impl ManipulationTable {
    pub fn build(t: &TabularScf) -> Self {
        let q = t.q();
        let radix = t.radix() as usize;
        let all = t.all_rankings();
        // rank[c * (q + 1) + a] = 0-based position of a in ranking c
        let mut rank = vec![0u8; radix * (q + 1)];
        for (c, r) in all.iter().enumerate() {
            for (k, &a) in r.order().iter().enumerate() {
                rank[c * (q + 1) + a as usize] = k as u8;
            }
        }
        let min_span = (0..t.len())
            .into_par_iter()
            .map(|idx| {
                let now = t.get(idx) as usize;
                let mut best = u8::MAX;
                for i in 0..t.n() {
                    let c = t.code_at(idx, i) as usize;
                    let row = &rank[c * (q + 1)..(c + 1) * (q + 1)];
                    for code in 0..radix {
                        if code == c {
                            continue;
                        }
                        let b = t.get(t.replace(idx, i, code as u64)) as usize;
                        if row[b] < row[now] {
                            let s = move_span(&all[c], &all[code]) as u8;
                            best = best.min(s);
                        }
                    }
                }
                if best == u8::MAX {
                    0
                } else {
                    best
                }
            })
            .collect();
        ManipulationTable { q, n: t.n(), min_span }
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> u64 {
        self.min_span.len() as u64
    }

    pub fn is_empty(&self) -> bool {
        self.min_span.is_empty()
    }

    #[inline]
    pub fn is_manipulable(&self, index: u64) -> bool {
        self.min_span[index as usize] != 0
    }

    #[inline]
    pub fn is_r_manipulable(&self, index: u64, r: usize) -> bool {
        let s = self.min_span[index as usize];
        s != 0 && s as usize <= r
    }

    pub fn min_span(&self, index: u64) -> Option<usize> {
        match self.min_span[index as usize] {
            0 => None,
            s => Some(s as usize),
        }
    }

    pub fn is_manipulable_profile(&self, x: &Profile) -> bool {
        self.is_manipulable(x.index())
    }

    /// Number of manipulation points.
    pub fn count(&self) -> u64 {
        self.min_span.iter().filter(|&&s| s != 0).count() as u64
    }

    /// Number of `r`-manipulation points.
    pub fn count_r(&self, r: usize) -> u64 {
        self.min_span.iter().filter(|&&s| s != 0 && s as usize <= r).count() as u64
    }

    pub fn spans(&self) -> &[u8] {
        &self.min_span
    }
}
