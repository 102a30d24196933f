use std::fmt::Write as _;
use std::path::Path as FsPath;
use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::Scf;
use crate::error::{domain, Error, Result};
use crate::exact::factorial;
use crate::ranking::{encode, profile_count, rankings, Alt, Profile, Ranking};

/// Dense table of winners indexed by profile index.
///
/// Besides backing tabular rules, this is the workhorse of every exact
/// computation: neighbours of a profile in coordinate `i` are reached by
/// index arithmetic instead of re-evaluating a rule.
#[derive(Clone, Debug)]
pub struct TabularScf {
    q: usize,
    n: usize,
    radix: u64,
    table: Vec<Alt>,
    rankings: Arc<Vec<Ranking>>,
}

#[derive(Serialize, Deserialize)]
struct TableJson {
    q: usize,
    n: usize,
    table: Vec<Alt>,
}

impl TabularScf {
    pub fn new(q: usize, n: usize, table: Vec<Alt>) -> Result<Self> {
        if q == 0 || q > crate::ranking::MAX_Q || n == 0 {
            return domain(format!("invalid dimensions q={q}, n={n}"));
        }
        let expected = profile_count(q, n);
        if table.len() as u128 != expected {
            return domain(format!("table has {} entries, expected {expected}", table.len()));
        }
        if let Some(bad) = table.iter().find(|&&a| a == 0 || a as usize > q) {
            return domain(format!("table entry {bad} outside 1..={q}"));
        }
        Ok(Self::build(q, n, table))
    }

    fn build(q: usize, n: usize, table: Vec<Alt>) -> Self {
        TabularScf { q, n, radix: factorial(q), table, rankings: Arc::new(rankings(q).collect()) }
    }

    pub fn from_scf(f: &Scf, cap: u128) -> Result<Self> {
        let (q, n) = (f.q(), f.n());
        let table: Vec<Alt> = crate::ranking::profiles(q, n, cap)?.map(|x| f.winner(x.voters())).collect();
        if let Some(bad) = table.iter().find(|&&a| a == 0 || a as usize > q) {
            return domain(format!("{} produced alternative {bad} outside 1..={q}", f.name()));
        }
        Ok(Self::build(q, n, table))
    }

    /// Uniformly random table.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, q: usize, n: usize) -> Self {
        let len = profile_count(q, n) as usize;
        let table = (0..len).map(|_| rng.gen_range(1..=q as Alt)).collect();
        Self::build(q, n, table)
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `(q!)^n`.
    pub fn len(&self) -> u64 {
        self.table.len() as u64
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn table(&self) -> &[Alt] {
        &self.table
    }

    /// `q!`.
    pub fn radix(&self) -> u64 {
        self.radix
    }

    #[inline]
    pub fn get(&self, index: u64) -> Alt {
        self.table[index as usize]
    }

    #[inline]
    pub fn winner(&self, x: &[Ranking]) -> Alt {
        self.table[self.index_of_slice(x) as usize]
    }

    /// Index weight of coordinate `i`.
    #[inline]
    pub fn stride(&self, i: usize) -> u64 {
        self.radix.pow((self.n - 1 - i) as u32)
    }

    /// Lehmer code of coordinate `i` of the profile at `index`.
    #[inline]
    pub fn code_at(&self, index: u64, i: usize) -> u64 {
        (index / self.stride(i)) % self.radix
    }

    /// Index of the profile at `index` with coordinate `i` set to `code`.
    #[inline]
    pub fn replace(&self, index: u64, i: usize, code: u64) -> u64 {
        let s = self.stride(i);
        index - self.code_at(index, i) * s + code * s
    }

    #[inline]
    pub fn ranking(&self, code: u64) -> &Ranking {
        &self.rankings[code as usize]
    }

    pub fn all_rankings(&self) -> &[Ranking] {
        &self.rankings
    }

    #[inline]
    pub fn code_of(&self, r: &Ranking) -> u64 {
        encode(r).0
    }

    pub fn profile(&self, index: u64) -> Profile {
        let voters = (0..self.n).map(|i| *self.ranking(self.code_at(index, i))).collect();
        Profile::from_vec_unchecked(voters)
    }

    pub fn index_of(&self, x: &Profile) -> u64 {
        self.index_of_slice(x.voters())
    }

    fn index_of_slice(&self, x: &[Ranking]) -> u64 {
        x.iter().fold(0u64, |acc, r| acc * self.radix + encode(r).0)
    }

    /// Distinct values taken, ascending.
    pub fn values(&self) -> Vec<Alt> {
        let mut seen = [false; crate::ranking::MAX_Q + 1];
        for &a in &self.table {
            seen[a as usize] = true;
        }
        (1..=self.q as Alt).filter(|&a| seen[a as usize]).collect()
    }

    /// Plain-text form: a `q=<q> n=<n>` header, then one winner per line.
    pub fn to_text(&self) -> String {
        let mut s = String::with_capacity(self.table.len() * 2 + 16);
        writeln!(s, "q={} n={}", self.q, self.n).unwrap();
        for a in &self.table {
            writeln!(s, "{a}").unwrap();
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| Error::Parse("empty table file".into()))?;
        let (q, n) = parse_header(header)?;
        let table = lines
            .map(|l| l.trim().parse::<Alt>().map_err(|e| Error::Parse(format!("table entry {l:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(q, n, table)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&TableJson { q: self.q, n: self.n, table: self.table.clone() }).unwrap()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let t: TableJson = serde_json::from_str(text)?;
        Self::new(t.q, t.n, t.table)
    }

    /// Reads either format; JSON is recognised by a leading `{`.
    pub fn load(path: impl AsRef<FsPath>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        if text.trim_start().starts_with('{') {
            Self::from_json(&text)
        } else {
            Self::from_text(&text)
        }
    }

    pub fn store(&self, path: impl AsRef<FsPath>, json: bool) -> Result<()> {
        let body = if json { self.to_json() } else { self.to_text() };
        std::fs::write(path, body)?;
        Ok(())
    }
}

fn parse_header(header: &str) -> Result<(usize, usize)> {
    let bad = || Error::Parse(format!("bad table header {header:?}, expected \"q=<q> n=<n>\""));
    let mut parts = header.split_whitespace();
    let q = parts.next().and_then(|t| t.strip_prefix("q=")).and_then(|v| v.parse().ok()).ok_or_else(bad)?;
    let n = parts.next().and_then(|t| t.strip_prefix("n=")).and_then(|v| v.parse().ok()).ok_or_else(bad)?;
    if parts.next().is_some() {
        return Err(bad());
    }
    Ok((q, n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ranking::{profiles, DEFAULT_PROFILE_CAP};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn tabulated_rule_agrees_everywhere() {
        let f = Scf::plurality_leftmost(3, 2).unwrap();
        let t = f.tabulate(DEFAULT_PROFILE_CAP).unwrap();
        let g = Scf::tabular(t.clone());
        for x in profiles(3, 2, DEFAULT_PROFILE_CAP).unwrap() {
            assert_eq!(f.evaluate(&x).unwrap(), g.evaluate(&x).unwrap());
            assert_eq!(t.profile(t.index_of(&x)), x);
        }
    }

    #[test]
    fn index_arithmetic() {
        let t = TabularScf::random(&mut ChaCha8Rng::seed_from_u64(3), 3, 3);
        for idx in [0u64, 17, 100, 215] {
            let x = t.profile(idx);
            for i in 0..3 {
                for code in 0..6 {
                    let y = t.profile(t.replace(idx, i, code));
                    assert_eq!(y, x.with_voter(i, *t.ranking(code)));
                }
            }
        }
    }

    #[test]
    fn text_and_json_are_bit_exact() {
        let t = TabularScf::random(&mut ChaCha8Rng::seed_from_u64(5), 3, 2);
        let text = t.to_text();
        assert!(text.starts_with("q=3 n=2\n"));
        assert_eq!(text.lines().count(), 37);
        assert_eq!(TabularScf::from_text(&text).unwrap().to_text(), text);
        let json = t.to_json();
        assert_eq!(TabularScf::from_json(&json).unwrap().to_json(), json);
        assert_eq!(TabularScf::from_json(&json).unwrap().table(), t.table());
    }

    #[test]
    fn file_roundtrip() {
        let dir = tempfile::tempdir().unwrap();
        let t = TabularScf::random(&mut ChaCha8Rng::seed_from_u64(6), 3, 2);
        for json in [false, true] {
            let path = dir.path().join(if json { "f.json" } else { "f.txt" });
            t.store(&path, json).unwrap();
            assert_eq!(TabularScf::load(&path).unwrap().table(), t.table());
        }
    }

    #[test]
    fn malformed_tables() {
        assert!(TabularScf::from_text("q=3 n=2\n1\n2\n").is_err());
        assert!(TabularScf::from_text("q3 n2\n").is_err());
        assert!(TabularScf::new(3, 1, vec![1, 2, 3, 4, 1, 1]).is_err());
        assert!(TabularScf::new(3, 1, vec![1, 2, 3, 0, 1, 1]).is_err());
        assert!(TabularScf::from_json("{\"q\":3,\"n\":1,\"table\":[1]}").is_err());
    }
}
