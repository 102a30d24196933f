//! Command-line front end: `census`, `verify`, `scaling` and `paths`.
//!
//! Exit codes: 0 pass, 1 usage or I/O error, 2 a checked bound failed,
//! 3 a constructive procedure ran out of cases.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::{factorial, zero, FracJson};
use crate::influence::{
    boundary_edges, check_inequalities, find_large_boundary_pair, BoundaryEdge, BoundaryVariant, Refinement,
};
use crate::manipulation::{census, gs_witness, plurality_scaling_experiment, write_profile_csv, GsOutcome};
use crate::paths::{
    bubble_sort_path, inverse_image_census, junction_counts, order_preserving_path, profile_path_v1,
    refined_coord_path_block, refined_coord_path_generic, refined_profile_path, sim_canon_path, verify_invariance,
    BlockRefinedMap, BubbleSortMap, Extractor, GenericRefinedMap, GroupAction, OrderPreservingMap, PairVertex,
    PartLabel, Path, PathMap, RefinedProfileMap,
};
use crate::ranking::{adjacent_swap_between, profiles, AdjTransposition, Alt, Profile, Ranking};
use crate::sampling::{block_rng, Mode};
use crate::scf::{distribution, is_neutral, Distances, Scf, TabularScf};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_BOUND: i32 = 2;
pub const EXIT_VIOLATION: i32 = 3;

/// Pairs or triples examined per extraction check in `verify --suite lemmas`.
const LEMMA_LIMIT: usize = 20_000;

#[derive(Parser, Debug)]
#[command(name = "gslab", version, about = "Manipulation censuses, bound checks and canonical paths")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Count manipulation points and check both lower bounds.
    Census(Common),
    /// Run one verification suite.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[command(flatten)]
        common: Common,
    },
    /// Estimate the manipulable fraction of plurality for several `n`.
    Scaling {
        #[arg(long, default_value_t = 3)]
        q: usize,
        /// Comma-separated electorate sizes.
        #[arg(long, default_value = "5,11,21")]
        ns: String,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Print a canonical path.
    Paths {
        #[arg(long, value_enum)]
        kind: PathKind,
        /// Start: a ranking, a profile, or `x;y` for an edge.
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        /// Alternatives `a,b[,c,d]`.
        #[arg(long, default_value = "1,2,3,4")]
        alts: String,
        /// Voters (1-based) of the two refined edges.
        #[arg(long, default_value_t = 1)]
        i: usize,
        #[arg(long, default_value_t = 2)]
        j: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: DumpFormat,
    },
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// borda, plurality, constant:<a>, dictator:<i>, or a table file.
    #[arg(long, default_value = "borda")]
    rule: String,
    #[arg(long, default_value_t = 4)]
    q: usize,
    #[arg(long, default_value_t = 2)]
    n: usize,
    #[arg(long, conflicts_with = "samples")]
    exact: bool,
    #[arg(long)]
    samples: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long, env = "GSLAB_CAP", default_value_t = crate::ranking::DEFAULT_PROFILE_CAP)]
    cap: u128,
}

impl Common {
    fn mode(&self) -> Result<Mode> {
        if self.q < 3 {
            return Err(Error::Domain(format!("--q must be at least 3, got {}", self.q)));
        }
        match (self.samples, self.seed) {
            (Some(samples), Some(seed)) if samples > 0 => Ok(Mode::Sampled { samples, seed }),
            (Some(_), Some(_)) => Err(Error::Domain("--samples must be positive".into())),
            (Some(_), None) => Err(Error::Domain("--samples needs --seed".into())),
            (None, _) => Ok(Mode::Exact),
        }
    }

    fn echo(&self) -> Value {
        json!({
            "rule": self.rule,
            "q": self.q,
            "n": self.n,
            "samples": self.samples,
            "seed": self.seed,
            "cap": self.cap.to_string(),
        })
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
enum Suite {
    Lemmas,
    Paths,
    Gs,
    Neutrality,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum DumpFormat {
    Text,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum PathKind {
    Bubble,
    Order,
    Sim,
    Generic,
    Block,
    V1,
    Refined,
}

/// Builds a rule from its command-line name. Voters are 1-based here.
pub fn parse_rule(text: &str, q: usize, n: usize) -> Result<Scf> {
    let (name, arg) = match text.split_once(':') {
        Some((name, arg)) => (name, Some(arg)),
        None => (text, None),
    };
    let num = |what: &str| -> Result<usize> {
        arg.ok_or_else(|| Error::Parse(format!("{name} needs :<{what}>")))?
            .parse()
            .map_err(|e| Error::Parse(format!("{text}: {e}")))
    };
    match name {
        "borda" => Scf::borda_voter1_tiebreak(q, n),
        "plurality" => Scf::plurality_leftmost(q, n),
        "constant" => Scf::constant(q, n, num("alternative")? as Alt),
        "dictator" => match num("voter")? {
            0 => Err(Error::Parse("voters are numbered from 1".into())),
            i => Scf::dictator_top(q, n, i - 1),
        },
        _ => {
            let t = TabularScf::load(text.strip_prefix("file:").unwrap_or(text))?;
            if (t.q(), t.n()) != (q, n) {
                return Err(Error::Domain(format!("table has q={}, n={} but --q {q} --n {n} was given", t.q(), t.n())));
            }
            Ok(Scf::tabular(t))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub status: Status,
    pub detail: Value,
}

impl Check {
    fn new(name: &'static str, ok: bool, detail: Value) -> Self {
        Check { name, status: if ok { Status::Pass } else { Status::Fail }, detail }
    }

    fn na(name: &'static str, why: &str) -> Self {
        Check { name, status: Status::NotApplicable, detail: json!({ "reason": why }) }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub suite: &'static str,
    pub config: Value,
    pub checks: Vec<Check>,
    pub pass: bool,
}

/// Entry point of the binary.
pub fn main() -> i32 {
    let _ = env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).try_init();
    let mut out = std::io::stdout().lock();
    run(std::env::args_os(), &mut out)
}

/// Parses `args` (program name first) and runs the command. Reports go to
/// `--out` when given and to `stdout` otherwise; errors go to stderr.
pub fn run<I, T>(args: I, stdout: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli, stdout) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("gslab: {e}");
            match e {
                Error::TheoremViolation(_) => EXIT_VIOLATION,
                _ => EXIT_USAGE,
            }
        }
    }
}

fn dispatch(cli: Cli, stdout: &mut dyn Write) -> Result<i32> {
    let mut buf = Vec::new();
    let code = match cli.command {
        Command::Census(c) => with_workers(c.workers, || cmd_census(&c, &mut buf))?,
        Command::Verify { suite, common } => with_workers(common.workers, || cmd_verify(suite, &common, &mut buf))?,
        Command::Scaling { q, ns, samples, seed, out, format, workers } => {
            let ns = ns
                .split(',')
                .map(|t| t.trim().parse().map_err(|e| Error::Parse(format!("--ns {t:?}: {e}"))))
                .collect::<Result<Vec<usize>>>()?;
            let rows = with_workers(workers, || plurality_scaling_experiment(q, &ns, samples, seed))?;
            let text = match format {
                Format::Json => {
                    serde_json::to_string_pretty(&json!({ "rule": "plurality", "q": q, "rows": rows }))? + "\n"
                }
                Format::Csv => {
                    let mut s = String::from("n,manip_mean,manip_stderr,near_tie_mean,near_tie_stderr\n");
                    for r in &rows {
                        s.push_str(&format!(
                            "{},{},{},{},{}\n",
                            r.n, r.manip.mean, r.manip.stderr, r.near_tie.mean, r.near_tie.stderr
                        ));
                    }
                    s
                }
            };
            emit(out.as_ref(), &text, &mut buf)?;
            EXIT_OK
        }
        Command::Paths { kind, from, to, alts, i, j, out, format } => {
            let text = cmd_paths(kind, &from, &to, &alts, i, j, format)?;
            emit(out.as_ref(), &text, &mut buf)?;
            EXIT_OK
        }
    };
    stdout.write_all(&buf)?;
    Ok(code)
}

fn with_workers<T: Send>(workers: Option<usize>, body: impl FnOnce() -> Result<T> + Send) -> Result<T> {
    match workers {
        None => body(),
        Some(w) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(w)
                .build()
                .map_err(|e| Error::Domain(format!("--workers {w}: {e}")))?;
            pool.install(body)
        }
    }
}

fn emit(out: Option<&PathBuf>, text: &str, stdout: &mut dyn Write) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn cmd_census(c: &Common, stdout: &mut dyn Write) -> Result<i32> {
    let f = parse_rule(&c.rule, c.q, c.n)?;
    let mode = c.mode()?;
    let report = census(&f, mode, c.cap)?;
    let text = match c.format {
        Format::Json => report.to_json() + "\n",
        Format::Csv => {
            if mode != Mode::Exact {
                return Err(Error::Domain("CSV output lists every profile and needs --exact".into()));
            }
            let mut buf = Vec::new();
            write_profile_csv(&f, c.cap, &mut buf)?;
            String::from_utf8(buf).expect("csv is ASCII")
        }
    };
    emit(c.out.as_ref(), &text, stdout)?;
    let chain = mode != Mode::Exact || report.chain_holds;
    Ok(if report.bounds_ok() && chain { EXIT_OK } else { EXIT_BOUND })
}

fn cmd_verify(suite: Suite, c: &Common, stdout: &mut dyn Write) -> Result<i32> {
    let (name, checks) = match suite {
        Suite::Lemmas => ("lemmas", lemmas_suite(c)?),
        Suite::Paths => ("paths", paths_suite(c.q)?),
        Suite::Gs => ("gs", gs_suite(c)?),
        Suite::Neutrality => ("neutrality", neutrality_suite(c)?),
    };
    let pass = checks.iter().all(|k| k.status != Status::Fail);
    let report = VerifyReport { suite: name, config: c.echo(), checks, pass };
    let text = match c.format {
        Format::Json => serde_json::to_string_pretty(&report)? + "\n",
        Format::Csv => {
            let mut s = String::from("check,status\n");
            for k in &report.checks {
                s.push_str(&format!("{},{}\n", k.name, serde_json::to_value(k.status)?.as_str().unwrap()));
            }
            s
        }
    };
    emit(c.out.as_ref(), &text, stdout)?;
    Ok(if pass { EXIT_OK } else { EXIT_BOUND })
}

fn spread<T: Clone>(v: &[T], k: usize) -> Vec<T> {
    if v.len() <= k {
        return v.to_vec();
    }
    (0..k).map(|t| v[t * v.len() / k].clone()).collect()
}

/// Every edge at voter `i` whose two profiles differ by one adjacent swap
/// and carry different values.
fn swap_edges(f: &Scf, i: usize, cap: u128) -> Result<Vec<BoundaryEdge>> {
    let q = f.q() as Alt;
    let mut out = Vec::new();
    for a in 1..=q {
        for b in (1..=q).filter(|&b| b != a) {
            out.extend(boundary_edges(f, i, a, b, Refinement::AllZ, cap)?);
        }
    }
    Ok(out)
}

/// Edges whose swap is the pair of values itself.
fn refined_edges(ex: &Extractor, f: &Scf, i: usize, cap: u128) -> Result<Vec<BoundaryEdge>> {
    let mut v = swap_edges(f, i, cap)?;
    v.retain(|e| {
        let (a, b) = ex.value_pair(e);
        e.z.is_some_and(|z| z.is(a, b))
    });
    Ok(v)
}

fn four_distinct(ex: &Extractor, s: &BoundaryEdge, e: &BoundaryEdge) -> bool {
    let (a, b) = ex.value_pair(s);
    let (c, d) = ex.value_pair(e);
    BTreeSet::from([a, b, c, d]).len() == 4
}

fn lemmas_suite(c: &Common) -> Result<Vec<Check>> {
    let f = parse_rule(&c.rule, c.q, c.n)?;
    let t = f.tabulate(c.cap)?;
    let (q, n) = (f.q(), f.n());
    let dist = Distances::of_table(&t);
    let mut checks = Vec::new();

    if t.values().len() < 2 {
        checks.push(Check::na("influence_inequalities", "the function is constant"));
    } else {
        let r = check_inequalities(&f, c.cap)?;
        checks.push(Check::new("influence_inequalities", r.all_hold(), serde_json::to_value(&r)?));
    }

    let eps_zero = dist.to_nonmanip == zero();
    let small = q < 3 || n < 2;
    for (name, variant) in [("boundary_pair", BoundaryVariant::General), ("refined_boundary", BoundaryVariant::Refined)]
    {
        if eps_zero || small {
            checks.push(Check::na(name, "distance to non-manipulable functions is 0, or q < 3, or n < 2"));
        } else {
            let r = find_large_boundary_pair(&f, None, variant, c.cap)?;
            checks.push(Check::new(name, true, serde_json::to_value(&r)?));
        }
    }
    let neutral = is_neutral(&f, Mode::Exact, c.cap).map(|r| r.is_neutral()).unwrap_or(false);
    let mut candidates = Vec::new();
    if neutral && q >= 4 && n >= 2 && dist.to_dict != zero() {
        let r = find_large_boundary_pair(&f, None, BoundaryVariant::Neutral, c.cap)?;
        let p = r.pair().expect("the neutral variant always returns a pair");
        let ok = BTreeSet::from([p.a, p.b, p.c, p.d]).len() == 4;
        candidates.push(p.clone());
        checks.push(Check::new("neutral_boundary_pair", ok, serde_json::to_value(&r)?));
    } else {
        checks.push(Check::na("neutral_boundary_pair", "needs a neutral f with q >= 4, n >= 2 and Dist(f, DICT) > 0"));
    }

    let ex = Extractor::new(&f, c.cap)?;
    let mut two = (0u64, 0u64);
    for i in 0..n {
        for e in swap_edges(&f, i, c.cap)? {
            let (a, b) = ex.value_pair(&e);
            if e.z.is_some_and(|z| !z.is(a, b)) {
                two.0 += 1;
                two.1 += u64::from(ex.two_manipulation(&e)?.verify(&f));
            }
        }
    }
    checks.push(if two.0 == 0 {
        Check::na("two_manipulation_from_edges", "no refined edge with a foreign transposition")
    } else {
        Check::new("two_manipulation_from_edges", two.0 == two.1, json!({ "edges": two.0, "verified": two.1 }))
    });

    let mut triples = (0u64, 0u64);
    'outer: for y in profiles(q, n, c.cap)? {
        for i in 0..n {
            for j in (0..n).filter(|&j| j != i) {
                for s in AdjTransposition::all(q) {
                    for u in AdjTransposition::all(q) {
                        let (x, z) = (apply_at(&s, i, &y), apply_at(&u, j, &y));
                        let (a, b, cc) = (ex.value(&x), ex.value(&y), ex.value(&z));
                        if x == y || z == y || BTreeSet::from([a, b, cc]).len() < 3 {
                            continue;
                        }
                        let r = ex.three_manipulation(&x, &y, &z, i, j, a, b, cc)?;
                        triples.0 += 1;
                        triples.1 += u64::from(r.witness.verify(&f) && r.witness.span() <= 3);
                        if triples.0 as usize >= LEMMA_LIMIT {
                            break 'outer;
                        }
                    }
                }
            }
        }
    }
    checks.push(if triples.0 == 0 {
        Check::na("three_manipulation_from_triples", "no triple with three values")
    } else {
        Check::new(
            "three_manipulation_from_triples",
            triples.0 == triples.1,
            json!({ "triples": triples.0, "verified": triples.1, "limit": LEMMA_LIMIT }),
        )
    });

    let side = (LEMMA_LIMIT as f64).sqrt() as usize;
    let pick = |edges: Vec<BoundaryEdge>| spread(&edges, side);
    if let Some(Ok(r)) =
        (!eps_zero && !small).then(|| find_large_boundary_pair(&f, None, BoundaryVariant::General, c.cap))
    {
        if let Some(p) = r.pair() {
            candidates.insert(0, p.clone());
        }
    }
    let simple = match candidates.into_iter().find(|p| BTreeSet::from([p.a, p.b, p.c, p.d]).len() == 4) {
        Some(p) => {
            let s = pick(boundary_edges(&f, p.i, p.a, p.b, Refinement::None, c.cap)?);
            let e = pick(boundary_edges(&f, p.j, p.c, p.d, Refinement::None, c.cap)?);
            Some(ex.simple_census(&s, &e)?)
        }
        _ => None,
    };
    checks.push(match simple {
        Some(r) => Check::new("extraction_simple", r.pass, serde_json::to_value(&r)?),
        None => Check::na("extraction_simple", "no boundary pair with four distinct values"),
    });

    let mut refined = None;
    if n >= 2 {
        let s0 = refined_edges(&ex, &f, 0, c.cap)?;
        let s1 = refined_edges(&ex, &f, 1, c.cap)?;
        let (starts, ends): (Vec<_>, Vec<_>) = (pick(s0), pick(s1));
        let mut census_pairs = (Vec::new(), Vec::new());
        for s in &starts {
            if ends.iter().any(|e| four_distinct(&ex, s, e)) {
                census_pairs.0.push(s.clone());
            }
        }
        for e in &ends {
            if census_pairs.0.iter().any(|s| four_distinct(&ex, s, e)) {
                census_pairs.1.push(e.clone());
            }
        }
        let mut total = (0u64, 0u64, 0u64);
        for s in &census_pairs.0 {
            for e in census_pairs.1.iter().filter(|e| four_distinct(&ex, s, e)) {
                let r = ex.refined(s, e)?;
                total.0 += 1;
                total.1 += u64::from(r.witness.verify(&f) && r.witness.span() <= 4);
                total.2 += u64::from(!r.close);
            }
        }
        if total.0 > 0 {
            refined = Some(total);
        }
    }
    checks.push(match refined {
        Some((inputs, verified, not_close)) => Check::new(
            "extraction_refined",
            inputs == verified,
            json!({ "inputs": inputs, "verified": verified, "not_close": not_close }),
        ),
        None => Check::na("extraction_refined", "no pair of refined edges with four distinct values"),
    });
    Ok(checks)
}

fn apply_at(t: &AdjTransposition, k: usize, v: &Profile) -> Profile {
    v.with_voter(k, t.apply(v.voter(k)))
}

fn census_check<M: PathMap>(name: &'static str, map: &M, group: &GroupAction) -> Result<Check> {
    let c = inverse_image_census(map, Some(group), u128::MAX)?;
    let detail = json!({
        "map": c.map,
        "pairs": c.pairs,
        "max_len": c.max_len,
        "longest": c.longest,
        "max_total": c.max_total,
        "max_position": c.max_position,
        "bound": c.bound,
        "counting_bound": c.counting_bound.map(|b| b.to_string()),
    });
    Ok(Check::new(name, c.pass, detail))
}

fn invariance_check<M: PathMap>(name: &'static str, map: &M, group: &GroupAction) -> Result<Check> {
    let r = verify_invariance(map, group, Mode::Exact)?;
    Ok(Check::new(name, r.pass, serde_json::to_value(&r)?))
}

fn paths_suite(q: usize) -> Result<Vec<Check>> {
    if !(3..=5).contains(&q) {
        return Err(Error::Domain(format!("the paths suite runs at q in 3..=5, got {q}")));
    }
    let mut checks = Vec::new();
    let all = GroupAction::all_relabelings(q);
    let bubble = BubbleSortMap { q };
    checks.push(census_check("bubble_census", &bubble, &all)?);
    checks.push(invariance_check("bubble_invariance", &bubble, &all)?);
    checks.push(Check::new("relabelings_fixed_point_free", all.is_fixed_point_free_on(&bubble.sources()), json!({})));

    let op = OrderPreservingMap { q, a: 1, b: 2 };
    let fix2 = GroupAction::fixing(q, &[1, 2]);
    checks.push(census_check("order_preserving_census", &op, &fix2)?);
    let keeps = op
        .sources()
        .iter()
        .all(|x| op.targets().iter().all(|y| op.path(x, y).vertices().iter().all(|v| v.prefers(1, 2))));
    checks.push(Check::new("order_preserving_keeps_order", keeps, json!({ "a": 1, "b": 2 })));
    checks.push(invariance_check("order_preserving_invariance", &op, &fix2)?);

    if q < 4 {
        checks.push(Check::na("generic_refined_census", "needs q >= 4"));
        checks.push(Check::na("block_refined_census", "needs q >= 4"));
        return Ok(checks);
    }
    let alts = [1, 2, 3, 4];
    let fix4 = GroupAction::fixing(q, &alts);
    let generic = GenericRefinedMap { q, alts };
    checks.push(census_check("generic_refined_census", &generic, &fix4)?);
    let junction = junction_counts(&generic, PartLabel::I);
    let qf = factorial(q);
    let exact = junction.len() as u64 == qf && junction.values().all(|&k| k == qf);
    checks.push(Check::new(
        "generic_refined_junction",
        exact,
        json!({ "expected_each": qf, "junctions": junction.len() }),
    ));
    let discipline = generic.sources().iter().all(|x| {
        generic.targets().iter().all(|y| {
            let p = generic.path(x, y);
            part_steps(&p, PartLabel::I).iter().all(|t| !t.is(1, 2))
                && part_steps(&p, PartLabel::Pi).iter().all(|t| !t.is(3, 4))
        })
    });
    checks.push(Check::new("generic_refined_discipline", discipline, json!({})));
    checks.push(invariance_check("generic_refined_invariance", &generic, &fix4)?);

    let block = BlockRefinedMap { q, alts };
    checks.push(census_check("block_refined_census", &block, &fix4)?);
    let bound = 2 * (q as u64).pow(3) * qf;
    let jmax = junction_counts(&block, PartLabel::I).values().copied().max().unwrap_or(0);
    checks.push(Check::new("block_refined_junction", jmax <= bound, json!({ "max": jmax, "bound": bound })));
    let still = block.sources().iter().all(|x| {
        block
            .targets()
            .iter()
            .all(|y| part_steps(&block.path(x, y), PartLabel::I).iter().all(|t| !t.involves(1) && !t.involves(2)))
    });
    checks.push(Check::new("block_refined_discipline", still, json!({})));
    checks.push(invariance_check("block_refined_invariance", &block, &fix4)?);

    if q == 4 {
        let profile_map = RefinedProfileMap { q, n: 2, alts, i: 0, j: 1 };
        checks.push(census_check("refined_profile_census", &profile_map, &fix4)?);
    }
    Ok(checks)
}

fn part_steps(p: &Path<Ranking>, label: PartLabel) -> Vec<AdjTransposition> {
    p.part_vertices(label)
        .map(|vs| vs.windows(2).filter_map(|w| adjacent_swap_between(&w[0], &w[1])).collect())
        .unwrap_or_default()
}

fn gs_suite(c: &Common) -> Result<Vec<Check>> {
    match c.mode()? {
        Mode::Exact => {
            let f = parse_rule(&c.rule, c.q, c.n)?;
            Ok(vec![match gs_witness(&f, c.cap)? {
                GsOutcome::Witness(w) => Check::new("gs_witness", w.verify(&f), serde_json::to_value(&w)?),
                GsOutcome::NotApplicable { values } => {
                    Check::na("gs_witness", &format!("{values} values, or a function of one voter"))
                }
            }])
        }
        Mode::Sampled { samples, seed } => {
            let (q, n) = (c.q, c.n);
            let mut found = 0u64;
            for k in 0..samples {
                let mut rng = block_rng(seed, k);
                let f = loop {
                    let t = TabularScf::random(&mut rng, q, n);
                    if t.values().len() >= 3 && Distances::of_table(&t).to_dict != zero() {
                        break Scf::tabular(t);
                    }
                    let _: u32 = rng.gen();
                };
                if let GsOutcome::Witness(w) = gs_witness(&f, c.cap)? {
                    found += u64::from(w.verify(&f));
                }
            }
            Ok(vec![Check::new(
                "gs_random_functions",
                found == samples,
                json!({ "functions": samples, "witnesses": found, "q": q, "n": n }),
            )])
        }
    }
}

fn neutrality_suite(c: &Common) -> Result<Vec<Check>> {
    let f = parse_rule(&c.rule, c.q, c.n)?;
    let r = is_neutral(&f, c.mode()?, c.cap)?;
    let detail = match &r {
        crate::scf::Neutrality::Neutral => json!({ "neutral": true }),
        crate::scf::Neutrality::Violated { relabel, profile } => {
            json!({ "neutral": false, "relabel": relabel.to_string(), "profile": profile.to_string() })
        }
    };
    let mut checks = vec![Check::new("neutrality", true, detail)];
    if !r.is_neutral() || c.mode()? != Mode::Exact {
        checks.push(Check::na("neutral_uniform_winner", "needs an exhaustively neutral function"));
        return Ok(checks);
    }
    let d = distribution(&f, Mode::Exact, c.cap)?;
    let mus: Vec<FracJson> = (1..=f.q() as Alt).map(|a| FracJson(d.mu(a))).collect();
    let equal = mus.windows(2).all(|w| w[0].0 == w[1].0);
    checks.push(Check::new("neutral_uniform_winner", equal, json!({ "mu": mus })));
    Ok(checks)
}

fn parse_alts(s: &str) -> Result<Vec<Alt>> {
    s.split(',').map(|t| t.trim().parse::<Alt>().map_err(|e| Error::Parse(format!("alternative {t:?}: {e}")))).collect()
}

fn parse_edge(s: &str) -> Result<BoundaryEdge> {
    let (x, y) = s.split_once(';').ok_or_else(|| Error::Parse(format!("{s:?} is not an edge x;y")))?;
    let (x, y): (Profile, Profile) = (x.trim().parse()?, y.trim().parse()?);
    match x.differing_voters(&y).as_slice() {
        [i] => BoundaryEdge::new(x, y, *i, None),
        _ => Err(Error::Domain(format!("{s:?} must differ at exactly one voter"))),
    }
}

fn need<const K: usize>(alts: &[Alt]) -> Result<[Alt; K]> {
    alts.try_into().map_err(|_| Error::Domain(format!("--alts needs {K} alternatives")))
}

fn cmd_paths(
    kind: PathKind,
    from: &str,
    to: &str,
    alts: &str,
    i: usize,
    j: usize,
    format: DumpFormat,
) -> Result<String> {
    let alts = parse_alts(alts)?;
    let ranking_path = |p: Path<Ranking>| render(p, format);
    match kind {
        PathKind::Bubble => ranking_path(bubble_sort_path(&from.parse()?, &to.parse()?)?),
        PathKind::Order => {
            let [a, b] = need(&alts[..2.min(alts.len())])?;
            let p = order_preserving_path(a, b, &from.parse()?, &to.parse()?)?;
            if p.vertices().iter().any(|v| v.prefers(a, b) != p.first().prefers(a, b)) {
                return Err(Error::TheoremViolation("order-preserving path changed the order".into()));
            }
            ranking_path(p)
        }
        PathKind::Sim => {
            let [a, b] = need(&alts[..2.min(alts.len())])?;
            ranking_path(sim_canon_path(a, b, &from.parse()?, &to.parse()?)?)
        }
        PathKind::Generic => {
            let [a, b, c, d] = need(&alts)?;
            let p = refined_coord_path_generic(a, b, c, d, &from.parse()?, &to.parse()?)?;
            if part_steps(&p, PartLabel::I).iter().any(|t| t.is(a, b))
                || part_steps(&p, PartLabel::Pi).iter().any(|t| t.is(c, d))
            {
                return Err(Error::TheoremViolation("refined path broke its edge discipline".into()));
            }
            ranking_path(p)
        }
        PathKind::Block => {
            let [a, b, c, d] = need(&alts)?;
            let p = refined_coord_path_block(a, b, c, d, &from.parse()?, &to.parse()?)?;
            if part_steps(&p, PartLabel::I).iter().any(|t| t.involves(a) || t.involves(b)) {
                return Err(Error::TheoremViolation("block path moved a or b in its first part".into()));
            }
            ranking_path(p)
        }
        PathKind::V1 => {
            let [a, b, c, d] = need(&alts)?;
            render(profile_path_v1(a, b, c, d, &parse_edge(from)?, &parse_edge(to)?)?, format)
        }
        PathKind::Refined => {
            let [a, b, c, d] = need(&alts)?;
            if i == 0 || j == 0 {
                return Err(Error::Domain("voters are numbered from 1".into()));
            }
            let (x, z): (Profile, Profile) = (from.parse()?, to.parse()?);
            let (i, j) = (i - 1, j - 1);
            if i >= x.n() || j >= x.n() {
                return Err(Error::Domain(format!("voters must be at most {}", x.n())));
            }
            let start = PairVertex::new(x.clone(), apply_at(&AdjTransposition::new(a, b)?, i, &x));
            let end = PairVertex::new(z.clone(), apply_at(&AdjTransposition::new(c, d)?, j, &z));
            render(refined_profile_path(a, b, c, d, i, j, &start, &end)?, format)
        }
    }
}

fn render<V: std::fmt::Display + Clone + PartialEq>(p: Path<V>, format: DumpFormat) -> Result<String> {
    Ok(match format {
        DumpFormat::Text => p.dump(),
        DumpFormat::Json => {
            let parts: Vec<Value> = p
                .parts()
                .iter()
                .map(|part| json!({ "label": part.label.to_string(), "start": part.start, "end": part.end }))
                .collect();
            let vertices: Vec<String> = p.vertices().iter().map(|v| v.to_string()).collect();
            serde_json::to_string_pretty(&json!({ "length": p.len(), "vertices": vertices, "parts": parts }))? + "\n"
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String) {
        let mut out = Vec::new();
        let code = run(std::iter::once("gslab").chain(args.iter().copied()), &mut out);
        (code, String::from_utf8(out).unwrap())
    }

    #[test]
    fn census_constant_is_all_zero() {
        let (code, out) = call(&["census", "--rule", "constant:1", "--q", "4", "--n", "2", "--exact"]);
        assert_eq!(code, EXIT_OK);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["counts"]["manip"], 0);
        assert_eq!(v["counts"]["r4"], 0);
    }

    #[test]
    fn sampled_census_is_reproducible() {
        let args = ["census", "--rule", "plurality", "--q", "3", "--n", "7", "--samples", "2000", "--seed", "7"];
        let (c1, a) = call(&args);
        let (c2, b) = call(&args);
        assert_eq!((c1, c2), (EXIT_OK, EXIT_OK));
        assert_eq!(a, b);
        let mut w = args.to_vec();
        w.extend(["--workers", "2"]);
        assert_eq!(call(&w).1, a);
    }

    #[test]
    fn usage_errors() {
        assert_eq!(call(&["census", "--rule", "nosuchrule", "--q", "3", "--n", "2"]).0, EXIT_USAGE);
        assert_eq!(call(&["census", "--samples", "10"]).0, EXIT_USAGE);
        assert_eq!(call(&["verify", "--suite", "bogus"]).0, EXIT_USAGE);
        assert_eq!(call(&["census", "--q", "6", "--n", "5", "--exact", "--cap", "1000"]).0, EXIT_USAGE);
    }

    #[test]
    fn lemmas_on_constant_are_vacuous() {
        let (code, out) = call(&["verify", "--suite", "lemmas", "--rule", "constant:2", "--q", "4", "--n", "2"]);
        assert_eq!(code, EXIT_OK);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert!(v["checks"].as_array().unwrap().iter().all(|c| c["status"] == "not_applicable"));
    }

    #[test]
    fn gs_suite_finds_every_witness() {
        let (code, out) = call(&["verify", "--suite", "gs", "--q", "3", "--n", "2", "--samples", "50", "--seed", "1"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("\"witnesses\": 50"));
    }

    #[test]
    fn path_dumps() {
        let (code, out) = call(&["paths", "--kind", "bubble", "--from", "1>2>3", "--to", "3>2>1"]);
        assert_eq!(code, EXIT_OK);
        assert_eq!(out.lines().count(), 4);
        let (_, out) = call(&["paths", "--kind", "sim", "--alts", "1,2", "--from", "1>2>3>4", "--to", "3>1>2>4"]);
        assert_eq!(out.lines().nth(1), out.lines().nth(2));
        let (code, out) = call(&[
            "paths",
            "--kind",
            "refined",
            "--from",
            "1>2>3>4|4>3>2>1",
            "--to",
            "2>4>1>3|3>4>1>2",
            "--i",
            "1",
            "--j",
            "2",
        ]);
        assert_eq!(code, EXIT_OK);
        for label in ["# I", "# Δ", "# Π"] {
            assert!(out.lines().any(|l| l == label), "{out}");
        }
        let (code, _) = call(&["paths", "--kind", "block", "--from", "1>3>2>4", "--to", "1>2>3>4"]);
        assert_eq!(code, EXIT_USAGE);
    }
}
