use std::fmt;

use serde::Serialize;

use super::InfluenceTable;
use crate::error::{domain, Error, Result};
use crate::exact::{int, ratio, zero, Frac, FracJson};
use crate::manipulation::ManipulationTable;
use crate::ranking::{AdjTransposition, Alt, Profile};
use crate::sampling::Mode;
use crate::scf::{is_neutral, Distances, Scf};

/// One edge `(x, y)` of a boundary: the profiles differ only at voter `i`,
/// and when `z` is present `y_i = z x_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundaryEdge {
    #[serde(serialize_with = "as_text")]
    pub x: Profile,
    #[serde(serialize_with = "as_text")]
    pub y: Profile,
    pub i: usize,
    pub z: Option<AdjTransposition>,
}

fn as_text<S: serde::Serializer>(p: &Profile, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(p)
}

impl BoundaryEdge {
    pub fn new(x: Profile, y: Profile, i: usize, z: Option<AdjTransposition>) -> Result<Self> {
        if x.q() != y.q() || x.n() != y.n() || i >= x.n() {
            return domain("edge endpoints must share dimensions and i must be a voter");
        }
        if (0..x.n()).any(|j| j != i && x.voter(j) != y.voter(j)) {
            return domain(format!("edge endpoints differ outside voter {i}"));
        }
        if let Some(z) = z {
            if z.apply(x.voter(i)) != *y.voter(i) {
                return domain(format!("voter {i} of y is not {z} applied to voter {i} of x"));
            }
        }
        Ok(BoundaryEdge { x, y, i, z })
    }

    /// `(f(x), f(y))`.
    pub fn winners(&self, f: &Scf) -> (Alt, Alt) {
        (f.winner(self.x.voters()), f.winner(self.y.voters()))
    }

    /// Whether this edge lies in `B_i^{a,b}` (or its refinement by `z`).
    pub fn is_in(&self, f: &Scf, a: Alt, b: Alt) -> bool {
        self.winners(f) == (a, b)
    }
}

impl fmt::Display for BoundaryEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {} @{}", self.x, self.y, self.i + 1)?;
        if let Some(z) = self.z {
            write!(f, " {z}")?;
        }
        Ok(())
    }
}

/// Which edges of a boundary to list.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Refinement {
    /// Every pair differing only at voter `i`.
    None,
    /// Pairs whose voter `i` differs by the given transposition.
    Z(AdjTransposition),
    /// The union over all adjacent transpositions.
    AllZ,
}

/// All edges of `B_i^{a,b}` (or a refinement), `x` in index order and then
/// `y` in index order.
pub fn boundary_edges(
    f: &Scf,
    i: usize,
    a: Alt,
    b: Alt,
    refinement: Refinement,
    cap: u128,
) -> Result<Vec<BoundaryEdge>> {
    let q = f.q() as Alt;
    if i >= f.n() || a == b || !(1..=q).contains(&a) || !(1..=q).contains(&b) {
        return domain(format!("invalid boundary parameters i={i}, a={a}, b={b}"));
    }
    let t = f.tabulate(cap)?;
    let zs = match refinement {
        Refinement::None => Vec::new(),
        Refinement::Z(z) => {
            let (u, v) = z.pair();
            if u > q || v > q {
                return domain(format!("{z} is not a transposition of 1..={q}"));
            }
            vec![z]
        }
        Refinement::AllZ => AdjTransposition::all(f.q()),
    };
    let mut out = Vec::new();
    for idx in (0..t.len()).filter(|&idx| t.get(idx) == a) {
        let xi = t.ranking(t.code_at(idx, i));
        let mut push = |jdx: u64, z| {
            if t.get(jdx) == b {
                out.push(BoundaryEdge { x: t.profile(idx), y: t.profile(jdx), i, z });
            }
        };
        if refinement == Refinement::None {
            for code in 0..t.radix() {
                push(t.replace(idx, i, code), None);
            }
        } else {
            let mut targets: Vec<(u64, AdjTransposition)> =
                zs.iter().map(|z| (t.replace(idx, i, t.code_of(&z.apply(xi))), *z)).collect();
            targets.sort_by_key(|(j, _)| *j);
            for (jdx, z) in targets {
                push(jdx, Some(z));
            }
        }
    }
    Ok(out)
}

/// Which form of the large-boundary statement to search for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundaryVariant {
    /// `Inf_i^{a,b}` and `Inf_j^{c,d}` at least `2ε/(n q² (q-1))` with
    /// `c ∉ {a,b}`, where `ε` is the distance to non-manipulable functions.
    General,
    /// Neutral `f`, `q >= 4`: threshold `ε/(n q² (q-1))` with `ε` the distance
    /// to dictators and `a, b, c, d` distinct.
    Neutral,
    /// Either the 2-manipulable fraction is at least `4ε/(n q⁷)` or
    /// `Inf_i^{a,b;[a:b]}` and `Inf_j^{c,d;[c:d]}` are at least `2ε/(n q⁷)`.
    Refined,
    /// Neutral refined form: `2ε/(n q⁷)` and `ε/(n q⁷)`, all four distinct.
    RefinedNeutral,
}

impl BoundaryVariant {
    fn neutral(self) -> bool {
        matches!(self, BoundaryVariant::Neutral | BoundaryVariant::RefinedNeutral)
    }

    fn refined(self) -> bool {
        matches!(self, BoundaryVariant::Refined | BoundaryVariant::RefinedNeutral)
    }

    /// `(pair threshold, 2-manipulable threshold)` for the given `ε`.
    pub fn thresholds(self, eps: &Frac, n: usize, q: usize) -> (Frac, Option<Frac>) {
        let (n, q) = (n as u64, q as u64);
        let q7 = int(q.pow(7));
        match self {
            BoundaryVariant::General => (eps * ratio(2u64, n * q * q * (q - 1)), None),
            BoundaryVariant::Neutral => (eps * ratio(1u64, n * q * q * (q - 1)), None),
            BoundaryVariant::Refined => (eps * int(2u64) / (int(n) * &q7), Some(eps * int(4u64) / (int(n) * q7))),
            BoundaryVariant::RefinedNeutral => (eps / (int(n) * &q7), Some(eps * int(2u64) / (int(n) * q7))),
        }
    }
}

/// Two voters with large boundaries between the named alternatives.
#[derive(Clone, Debug, Serialize)]
pub struct BoundaryPair {
    pub i: usize,
    pub a: Alt,
    pub b: Alt,
    pub j: usize,
    pub c: Alt,
    pub d: Alt,
    pub first: FracJson,
    pub second: FracJson,
    pub threshold: FracJson,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum BoundaryOutcome {
    Pair(BoundaryPair),
    /// The 2-manipulation points of `f`, whose fraction meets the threshold.
    TwoManipulable {
        fraction: FracJson,
        threshold: FracJson,
        #[serde(skip)]
        points: Vec<Profile>,
    },
}

impl BoundaryOutcome {
    pub fn pair(&self) -> Option<&BoundaryPair> {
        match self {
            BoundaryOutcome::Pair(p) => Some(p),
            BoundaryOutcome::TwoManipulable { .. } => None,
        }
    }
}

/// Searches `(i, a, b)` in lexicographic order and, for each hit, the
/// partner `(j, c, d)` in lexicographic order; returns the first match.
///
/// `eps` defaults to the exact distance the variant is stated for; a larger
/// supplied value is rejected. Finding nothing when every hypothesis holds
/// is a [`Error::TheoremViolation`].
pub fn find_large_boundary_pair(
    f: &Scf,
    eps: Option<Frac>,
    variant: BoundaryVariant,
    cap: u128,
) -> Result<BoundaryOutcome> {
    let (q, n) = (f.q(), f.n());
    if q < 3 || n < 2 {
        return Err(Error::Precondition(format!("need q >= 3 and n >= 2, got q={q}, n={n}")));
    }
    let t = f.tabulate(cap)?;
    let dist = Distances::of_table(&t);
    let computed = if variant.neutral() { dist.to_dict } else { dist.to_nonmanip };
    if variant.neutral() {
        if q < 4 {
            return Err(Error::Precondition(format!("the neutral form needs q >= 4, got q={q}")));
        }
        if !is_neutral(&Scf::tabular(t.clone()), Mode::Exact, cap)?.is_neutral() {
            return Err(Error::Precondition(format!("{} is not neutral", f.name())));
        }
    }
    let eps = match eps {
        Some(e) if e > computed => {
            return Err(Error::Precondition(format!("ε={e} exceeds the exact distance {computed}")));
        }
        Some(e) if e < zero() => return domain("ε must be nonnegative"),
        Some(e) => e,
        None => computed,
    };
    let (pair_threshold, manip_threshold) = variant.thresholds(&eps, n, q);

    if let Some(th) = manip_threshold {
        let m = ManipulationTable::build(&t);
        let fraction = ratio(m.count_r(2), t.len());
        if fraction >= th && m.count_r(2) > 0 {
            let points = (0..t.len()).filter(|&idx| m.is_r_manipulable(idx, 2)).map(|idx| t.profile(idx)).collect();
            return Ok(BoundaryOutcome::TwoManipulable { fraction: fraction.into(), threshold: th.into(), points });
        }
    }

    let inf = InfluenceTable::build(&t);
    if let Some(p) = search(&inf, &pair_threshold, variant) {
        return Ok(BoundaryOutcome::Pair(p));
    }
    Err(Error::TheoremViolation(format!(
        "{}: no pair of voters meets the {variant:?} threshold {pair_threshold} at ε={eps}",
        f.name()
    )))
}

fn search(inf: &InfluenceTable, threshold: &Frac, variant: BoundaryVariant) -> Option<BoundaryPair> {
    let (q, n) = (inf.q() as Alt, inf.n());
    let value = |i: usize, a: Alt, b: Alt| {
        if variant.refined() {
            let z = AdjTransposition::new(a, b).expect("a != b");
            inf.pair_refined(i, a, b, &z)
        } else {
            inf.pair(i, a, b)
        }
    };
    let triples = || {
        (0..n).flat_map(move |i| (1..=q).flat_map(move |a| (1..=q).filter(move |&b| b != a).map(move |b| (i, a, b))))
    };
    for (i, a, b) in triples() {
        let first = value(i, a, b);
        if first < *threshold {
            continue;
        }
        for (j, c, d) in triples() {
            let ok = j != i && c != a && c != b && (!variant.neutral() || (d != a && d != b));
            if !ok {
                continue;
            }
            let second = value(j, c, d);
            if second >= *threshold {
                return Some(BoundaryPair {
                    i,
                    a,
                    b,
                    j,
                    c,
                    d,
                    first: first.into(),
                    second: second.into(),
                    threshold: threshold.clone().into(),
                });
            }
        }
    }
    None
}
