use serde::{Deserialize, Serialize};

use super::{Alt, Ranking, MAX_Q};
use crate::error::{domain, Result};
use crate::exact::factorial;

/// Position of a ranking in lexicographic order, `0..q!`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RankingIndex(pub u64);

/// Lehmer code of `x`; the identity maps to 0.
pub fn encode(x: &Ranking) -> RankingIndex {
    let order = x.order();
    let q = order.len();
    let mut code = 0u64;
    let mut used = 0u32;
    for (k, &a) in order.iter().enumerate() {
        // number of unused alternatives smaller than a
        let below = (a as u32 - 1) - (used & ((1u32 << (a - 1)) - 1)).count_ones();
        code = code * (q - k) as u64 + below as u64;
        used |= 1 << (a - 1);
    }
    RankingIndex(code)
}

pub fn decode(index: RankingIndex, q: usize) -> Result<Ranking> {
    if q == 0 || q > MAX_Q {
        return domain(format!("q={q} outside 1..={MAX_Q}"));
    }
    let total = factorial(q);
    if index.0 >= total {
        return domain(format!("index {} outside 0..{total}", index.0));
    }
    let mut digits = [0usize; MAX_Q];
    let mut rest = index.0;
    for k in (0..q).rev() {
        let radix = (q - k) as u64;
        digits[k] = (rest % radix) as usize;
        rest /= radix;
    }
    let mut pool: Vec<Alt> = (1..=q as Alt).collect();
    let order: Vec<Alt> = digits[..q].iter().map(|&d| pool.remove(d)).collect();
    Ok(Ranking::from_slice_unchecked(&order))
}
