//! Social choice functions `L_q^n -> [q]`: built-in rules, dense tables,
//! restrictions, neutrality and distances to the non-manipulable classes.
//!
//! Voters are addressed 0-based (`dictator_top(q, n, 0)` follows the first
//! voter). Alternatives keep their `1..=q` labels.

mod distance;
mod neutral;
mod table;

pub(crate) use distance::exact_distribution;
pub use distance::{dist, distribution, Distances, Distribution};
pub use neutral::{is_neutral, Neutrality};
pub use table::TabularScf;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{domain, Result};
use crate::ranking::{Alt, Profile, Ranking};

type Evaluator = dyn Fn(&[Ranking]) -> Alt + Send + Sync;

#[derive(Clone)]
enum Rule {
    Constant(Alt),
    DictatorTop(usize),
    PluralityLeftmost,
    BordaVoter1,
    Tabular(Arc<TabularScf>),
    Restricted { base: Arc<Scf>, fixed: Vec<Option<Ranking>> },
    Custom { name: String, eval: Arc<Evaluator> },
}

/// A deterministic, total map from profiles to alternatives.
#[derive(Clone)]
pub struct Scf {
    q: usize,
    n: usize,
    rule: Rule,
}

impl Scf {
    pub fn constant(q: usize, n: usize, a: Alt) -> Result<Scf> {
        check_qn(q, n)?;
        if a == 0 || a as usize > q {
            return domain(format!("alternative {a} outside 1..={q}"));
        }
        Ok(Scf { q, n, rule: Rule::Constant(a) })
    }

    /// The top choice of voter `i` (0-based).
    pub fn dictator_top(q: usize, n: usize, i: usize) -> Result<Scf> {
        check_qn(q, n)?;
        if i >= n {
            return domain(format!("voter {i} outside 0..{n}"));
        }
        Ok(Scf { q, n, rule: Rule::DictatorTop(i) })
    }

    /// Most first places; score ties go to the first voter (left to right)
    /// whose top choice is among the tied alternatives.
    pub fn plurality_leftmost(q: usize, n: usize) -> Result<Scf> {
        check_qn(q, n)?;
        Ok(Scf { q, n, rule: Rule::PluralityLeftmost })
    }

    /// Borda count (position `k` earns `q - k` points); ties broken by the
    /// first voter's ranking of the tied alternatives.
    pub fn borda_voter1_tiebreak(q: usize, n: usize) -> Result<Scf> {
        check_qn(q, n)?;
        Ok(Scf { q, n, rule: Rule::BordaVoter1 })
    }

    pub fn tabular(table: TabularScf) -> Scf {
        Scf { q: table.q(), n: table.n(), rule: Rule::Tabular(Arc::new(table)) }
    }

    /// Wraps an arbitrary evaluator. It must return alternatives in `1..=q`.
    pub fn from_fn<F>(q: usize, n: usize, name: impl Into<String>, eval: F) -> Result<Scf>
    where
        F: Fn(&[Ranking]) -> Alt + Send + Sync + 'static,
    {
        check_qn(q, n)?;
        Ok(Scf { q, n, rule: Rule::Custom { name: name.into(), eval: Arc::new(eval) } })
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Short rule name used in reports (voters printed 1-based).
    pub fn name(&self) -> String {
        match &self.rule {
            Rule::Constant(a) => format!("constant:{a}"),
            Rule::DictatorTop(i) => format!("dictator:{}", i + 1),
            Rule::PluralityLeftmost => "plurality".into(),
            Rule::BordaVoter1 => "borda".into(),
            Rule::Tabular(_) => "tabular".into(),
            Rule::Restricted { base, .. } => format!("restrict({})", base.name()),
            Rule::Custom { name, .. } => name.clone(),
        }
    }

    pub fn evaluate(&self, x: &Profile) -> Result<Alt> {
        if x.q() != self.q || x.n() != self.n {
            return domain(format!(
                "profile has q={}, n={} but the function expects q={}, n={}",
                x.q(),
                x.n(),
                self.q,
                self.n
            ));
        }
        Ok(self.winner(x.voters()))
    }

    /// Evaluates without dimension checks.
    pub fn winner(&self, x: &[Ranking]) -> Alt {
        match &self.rule {
            Rule::Constant(a) => *a,
            Rule::DictatorTop(i) => x[*i].top(),
            Rule::PluralityLeftmost => plurality_leftmost(self.q, x),
            Rule::BordaVoter1 => borda_voter1(self.q, x),
            Rule::Tabular(t) => t.winner(x),
            Rule::Restricted { base, fixed } => {
                let mut free = x.iter();
                let full: Vec<Ranking> =
                    fixed.iter().map(|slot| slot.unwrap_or_else(|| *free.next().unwrap())).collect();
                base.winner(&full)
            }
            Rule::Custom { eval, .. } => eval(x),
        }
    }

    /// Fixes the listed coordinates; the result is a function of the others,
    /// in their original order.
    pub fn restrict(&self, fixed: &BTreeMap<usize, Ranking>) -> Result<Scf> {
        if let Some((&i, _)) = fixed.iter().find(|(&i, _)| i >= self.n) {
            return domain(format!("voter {i} outside 0..{}", self.n));
        }
        if let Some(r) = fixed.values().find(|r| r.q() != self.q) {
            return domain(format!("fixed ranking {r} has the wrong q"));
        }
        let free = self.n - fixed.len();
        if free == 0 {
            return domain("restriction fixes every voter");
        }
        let slots = (0..self.n).map(|i| fixed.get(&i).copied()).collect();
        Ok(Scf { q: self.q, n: free, rule: Rule::Restricted { base: Arc::new(self.clone()), fixed: slots } })
    }

    /// Dense table of all `(q!)^n` values.
    pub fn tabulate(&self, cap: u128) -> Result<TabularScf> {
        if let Rule::Tabular(t) = &self.rule {
            return Ok((**t).clone());
        }
        TabularScf::from_scf(self, cap)
    }
}

impl fmt::Debug for Scf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scf({}, q={}, n={})", self.name(), self.q, self.n)
    }
}

fn check_qn(q: usize, n: usize) -> Result<()> {
    if q == 0 || q > crate::ranking::MAX_Q || n == 0 {
        return domain(format!("invalid dimensions q={q}, n={n}"));
    }
    Ok(())
}

fn plurality_leftmost(q: usize, x: &[Ranking]) -> Alt {
    let mut score = [0u32; crate::ranking::MAX_Q + 1];
    for r in x {
        score[r.top() as usize] += 1;
    }
    let best = *score[1..=q].iter().max().unwrap();
    // the leftmost voter whose top choice attains the best score
    x.iter().map(|r| r.top()).find(|&a| score[a as usize] == best).unwrap()
}

fn borda_voter1(q: usize, x: &[Ranking]) -> Alt {
    let mut score = [0u32; crate::ranking::MAX_Q + 1];
    for r in x {
        for (k, &a) in r.order().iter().enumerate() {
            score[a as usize] += (q - 1 - k) as u32;
        }
    }
    let best = *score[1..=q].iter().max().unwrap();
    x[0].order().iter().copied().find(|&a| score[a as usize] == best).unwrap()
}
