//! The end-to-end decision procedure.
//!
//! Stages, in order: sine equalities, linear equalities, linear
//! occurrences, divisibility. The remaining oscillatory formula is periodic
//! with period `2Nπ` in every variable; its real solutions inside one
//! period are searched by branch-and-prune over interval boxes.

use std::collections::{HashMap, HashSet, VecDeque};
use std::time::Instant;

use rug::float::Round;
use rug::Float;
use serde::Serialize;

use crate::arith::{lcm_all, Integer, Rational};
use crate::error::Error;
use crate::formula::{to_dnf, AffineForm, Formula, Literal};
use crate::interval::{eval_term, pi_enclosure, sign_of_ground, Interval, IntervalBox, Sign};
use crate::linear::{
    eliminate_divisibility_branch, eliminate_equalities, eliminate_linear_branch, AffineMap, Branch,
};
use crate::sine_eq::SineEqEliminator;
use crate::syntax::Sentence;
use crate::term::NormalTerm;

/// Order in which pending boxes are explored.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Schedule {
    DepthFirst,
    BreadthFirst,
    /// Depth first, upper halves before lower halves.
    ReverseDepthFirst,
}

#[derive(Clone, Debug)]
pub struct Options {
    /// Maximum number of boxes examined by the search.
    pub budget: u64,
    /// Working precisions in bits, tried in order when boxes become too
    /// narrow to split.
    pub precisions: Vec<u32>,
    /// Integer witnesses are searched in `[-B, B]` per coordinate; 0 skips
    /// the search.
    pub witness_bound: u64,
    pub congruence_cap: usize,
    pub schedule: Schedule,
    /// More clauses than this after any stage gives up with UNKNOWN.
    pub max_clauses: usize,
    /// Keep the printed formula of every stage in the trace.
    pub keep_formulas: bool,
}

impl Default for Options {
    fn default() -> Options {
        Options {
            budget: 1_000_000,
            precisions: vec![53, 113, 256],
            witness_bound: 10_000,
            congruence_cap: crate::sine_eq::DEFAULT_CAP,
            schedule: Schedule::DepthFirst,
            max_clauses: 100_000,
            keep_formulas: false,
        }
    }
}

impl Options {
    /// A three-step precision ladder starting at `bits`.
    pub fn ladder(bits: u32) -> Vec<u32> {
        vec![bits, 2 * bits + 7, 4 * bits + 44]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum VerdictKind {
    Sat,
    Unsat,
    Unknown,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Verdict {
    /// Every inequality of clause `clause` of the final formula is strictly
    /// positive on the whole box.
    Sat {
        certified_box: IntervalBox,
        clause: usize,
        witness: Option<Vec<Integer>>,
    },
    /// The refuted boxes cover the closed search domain.
    Unsat {
        refuted_boxes: u64,
    },
    Unknown {
        reason: String,
    },
}

impl Verdict {
    pub fn kind(&self) -> VerdictKind {
        match self {
            Verdict::Sat { .. } => VerdictKind::Sat,
            Verdict::Unsat { .. } => VerdictKind::Unsat,
            Verdict::Unknown { .. } => VerdictKind::Unknown,
        }
    }

    pub fn witness(&self) -> Option<&[Integer]> {
        match self {
            Verdict::Sat { witness, .. } => witness.as_deref(),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StageSnapshot {
    pub name: &'static str,
    pub clauses: usize,
    pub literals: usize,
    pub millis: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub formula: Option<String>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SearchStats {
    pub boxes: u64,
    pub refuted: u64,
    pub certified: u64,
    pub escalations: u64,
    pub stuck: u64,
    /// Exact fraction of the domain covered by refuted boxes.
    pub coverage: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct PipelineTrace {
    pub stages: Vec<StageSnapshot>,
    pub period: Option<String>,
    pub schanuel_conditional: bool,
    pub search: SearchStats,
}

#[derive(Clone, Debug)]
pub struct Decision {
    pub verdict: Verdict,
    pub trace: PipelineTrace,
}

/// Least common multiple of the denominators of every variable coefficient
/// inside a sine, over all literals.
pub fn period_multiplier<'a>(lits: impl IntoIterator<Item = &'a Literal>) -> Integer {
    let mut dens = Vec::new();
    for l in lits {
        let t = l.term();
        let n = t.arity();
        for v in t.sine_vectors() {
            for c in &v[..n] {
                dens.push(c.denom().clone());
            }
        }
    }
    lcm_all(&dens)
}

pub fn formula_period(f: &Formula) -> Integer {
    period_multiplier(f.literals())
}

/// The closed search domain `[0, 2Nπ]ⁿ`, degenerate in unused coordinates.
pub fn search_domain(n: &Integer, used: &[bool], prec: u32) -> IntervalBox {
    let pi = pi_enclosure(prec);
    let two_n = Rational::from(Integer::from(n * 2u32));
    let top = pi.mul_rational(&two_n, prec);
    let zero = Interval::from_rational(&Rational::new(), prec);
    IntervalBox::new(
        used.iter()
            .map(|&u| {
                if u {
                    Interval::new(zero.lo().clone(), top.hi().clone())
                } else {
                    zero.clone()
                }
            })
            .collect(),
    )
}

/// Outcome of the box search.
#[derive(Clone, Debug, PartialEq)]
pub enum ProxyOutcome {
    Certified { clause: usize, region: IntervalBox },
    Empty { refuted: u64 },
    Exhausted { reason: String },
}

const ROUND_DEPTH: u32 = 8;

struct Pending {
    region: IntervalBox,
    depth: u32,
    level: usize,
    open: Vec<(usize, Vec<usize>)>,
}

/// Branch-and-prune over `[0, 2Nπ]ⁿ` for a disjunction of conjunctions of
/// `OscLess` literals.
pub fn decide_proxy_nonempty(
    clauses: &[Vec<Literal>],
    arity: usize,
    period: &Integer,
    opts: &Options,
    stats: &mut SearchStats,
) -> ProxyOutcome {
    let gaps: Vec<Vec<NormalTerm>> = clauses
        .iter()
        .map(|c| {
            c.iter()
                .map(|l| match l {
                    Literal::OscLess { .. } => l.term(),
                    other => panic!("{} literal in the oscillatory search", other.kind()),
                })
                .collect()
        })
        .collect();
    let mut used = vec![false; arity];
    for g in gaps.iter().flatten() {
        for (u, o) in used.iter_mut().zip(g.occurring_vars()) {
            *u |= o;
        }
    }
    let dims: Vec<usize> = (0..arity).filter(|&i| used[i]).collect();
    let mut coverage = Rational::new();
    let finish = |stats: &mut SearchStats, coverage: &Rational| {
        stats.coverage = coverage.to_string();
    };
    if clauses.is_empty() {
        stats.coverage = "1".into();
        return ProxyOutcome::Empty { refuted: 0 };
    }
    let prec0 = opts.precisions[0];
    let mut work: VecDeque<Pending> = VecDeque::new();
    work.push_back(Pending {
        region: search_domain(period, &used, prec0),
        depth: 0,
        level: 0,
        open: gaps
            .iter()
            .enumerate()
            .map(|(i, g)| (i, (0..g.len()).collect()))
            .collect(),
    });
    // boxes deeper than `cap` wait for the next round, so every schedule
    // examines the coarse subdivisions before any fine one
    let mut cap = ROUND_DEPTH;
    let mut deferred = Vec::new();
    loop {
        while let Some(item) = match opts.schedule {
            Schedule::BreadthFirst => work.pop_front(),
            _ => work.pop_back(),
        } {
            if item.depth > cap {
                deferred.push(item);
                continue;
            }
            if stats.boxes >= opts.budget {
                finish(stats, &coverage);
                return ProxyOutcome::Exhausted {
                    reason: format!("box budget of {} exhausted", opts.budget),
                };
            }
            stats.boxes += 1;
            let prec = opts.precisions[item.level];
            let mut open = Vec::with_capacity(item.open.len());
            for (ci, lits) in item.open {
                let mut rest = Vec::with_capacity(lits.len());
                let mut refuted = false;
                for li in lits {
                    let v = eval_term(&gaps[ci][li], &item.region, prec);
                    if *v.lo() > 0 {
                        continue;
                    }
                    if *v.hi() <= 0 {
                        refuted = true;
                        break;
                    }
                    rest.push(li);
                }
                if refuted {
                    continue;
                }
                if rest.is_empty() {
                    stats.certified += 1;
                    finish(stats, &coverage);
                    return ProxyOutcome::Certified {
                        clause: ci,
                        region: item.region,
                    };
                }
                open.push((ci, rest));
            }
            if open.is_empty() {
                stats.refuted += 1;
                coverage += Rational::from((Integer::from(1), Integer::from(1) << item.depth));
                continue;
            }
            let widest = dims
                .iter()
                .copied()
                .max_by(|&a, &b| {
                    item.region.dims[a]
                        .width()
                        .partial_cmp(&item.region.dims[b].width())
                        .expect("finite widths")
                        .then(b.cmp(&a))
                })
                .expect("an undecided box has a used coordinate");
            match item.region.dims[widest].bisect(prec) {
                Some((lo, hi)) => {
                    let mut a = item.region.clone();
                    a.dims[widest] = lo;
                    let mut b = item.region;
                    b.dims[widest] = hi;
                    let (first, second) = match opts.schedule {
                        Schedule::ReverseDepthFirst => (b, a),
                        _ => (a, b),
                    };
                    let push = |work: &mut VecDeque<Pending>, region| {
                        work.push_back(Pending {
                            region,
                            depth: item.depth + 1,
                            level: item.level,
                            open: open.clone(),
                        })
                    };
                    match opts.schedule {
                        Schedule::BreadthFirst => {
                            push(&mut work, first);
                            push(&mut work, second);
                        }
                        _ => {
                            push(&mut work, second);
                            push(&mut work, first);
                        }
                    }
                }
                None if item.level + 1 < opts.precisions.len() => {
                    stats.escalations += 1;
                    work.push_back(Pending {
                        region: item.region,
                        depth: item.depth,
                        level: item.level + 1,
                        open,
                    });
                }
                None => stats.stuck += 1,
            }
        }
        if deferred.is_empty() {
            break;
        }
        cap += ROUND_DEPTH;
        work.extend(deferred.drain(..));
    }
    finish(stats, &coverage);
    if stats.stuck > 0 {
        return ProxyOutcome::Exhausted {
            reason: format!(
                "{} boxes could not be split at the highest precision",
                stats.stuck
            ),
        };
    }
    assert_eq!(coverage, 1, "refuted boxes must cover the domain");
    ProxyOutcome::Empty {
        refuted: stats.refuted,
    }
}

/// Integers in `[-bound, bound]` whose residue modulo `2Nπ` lies strictly
/// inside `iv`, in the order 0, 1, -1, 2, -2, … and at most `limit` of them.
pub fn residue_candidates(
    iv: &Interval,
    period: &Integer,
    bound: u64,
    limit: usize,
) -> Vec<Integer> {
    const PREC: u32 = 160;
    let pi = pi_enclosure(PREC);
    let two_n = Rational::from(Integer::from(period * 2u32));
    let full = pi.mul_rational(&two_n, PREC);
    let mut out = Vec::new();
    let inside = |x: i64| {
        let xi = Interval::from_integer(&Integer::from(x), PREC);
        let turns = Float::with_val(PREC, Float::with_val(PREC, x) / full.lo()).floor();
        let turns = turns.to_integer().expect("finite");
        for m in [turns.clone() - 1u32, turns.clone(), turns + 1u32] {
            let shifted = xi.sub(&full.mul_rational(&Rational::from(m), PREC), PREC);
            if shifted.lo() > iv.lo() && shifted.hi() < iv.hi() {
                return true;
            }
        }
        false
    };
    let bound = bound.min(i64::MAX as u64) as i64;
    let order = std::iter::once(0).chain((1..=bound).flat_map(|x| [x, -x]));
    for x in order {
        if inside(x) {
            out.push(Integer::from(x));
        }
        if out.len() >= limit {
            break;
        }
    }
    out
}

/// First integer point in `[-bound, bound]ⁿ` whose coordinates reduce into
/// the interior of `region` modulo `2Nπ`. Degenerate coordinates take 0.
pub fn extract_integer_witness(
    region: &IntervalBox,
    period: &Integer,
    bound: u64,
) -> Option<Vec<Integer>> {
    if bound == 0 {
        return None;
    }
    let mut z = Vec::with_capacity(region.dim());
    for iv in &region.dims {
        if iv.lo() == iv.hi() {
            z.push(Integer::new());
            continue;
        }
        z.push(
            residue_candidates(iv, period, bound, 1)
                .into_iter()
                .next()?,
        );
    }
    Some(z)
}

/// Exact truth of a literal at an integer point.
pub fn holds_at(l: &Literal, z: &[Integer], ground: &mut GroundDecider) -> bool {
    match l {
        Literal::Div { k, p } => {
            let mut acc = p[p.len() - 1].clone();
            for (c, x) in p.iter().zip(z) {
                acc += Integer::from(c * x);
            }
            acc.is_divisible(k)
        }
        _ => {
            let rows: Vec<Vec<Rational>> = z
                .iter()
                .map(|x| AffineForm::constant(z.len(), x.clone()).0)
                .collect();
            let s = ground.sign(&l.term().substitute(&rows));
            match l {
                Literal::LinSineLess { .. } | Literal::OscLess { .. } => s == Sign::Positive,
                Literal::LinSineEq { .. } | Literal::LinEq(_) => s == Sign::Zero,
                Literal::LinSineNeq { .. } | Literal::LinNeq(_) => s != Sign::Zero,
                Literal::Div { .. } => unreachable!(),
            }
        }
    }
}

pub fn formula_holds_at(f: &Formula, z: &[Integer], ground: &mut GroundDecider) -> bool {
    f.eval(&mut |l| holds_at(l, z, ground))
}

/// Exact signs of variable-free terms, cached.
#[derive(Default)]
pub struct GroundDecider {
    cache: HashMap<NormalTerm, Sign>,
    /// Set when a non-affine term was found to be exactly zero.
    pub used_zero_test: bool,
}

impl GroundDecider {
    pub fn sign(&mut self, t: &NormalTerm) -> Sign {
        if let Some(s) = self.cache.get(t) {
            return *s;
        }
        let s = sign_of_ground(t);
        if s == Sign::Zero && !t.is_affine() {
            self.used_zero_test = true;
        }
        self.cache.insert(t.clone(), s);
        s
    }

    /// Truth value of a ground literal.
    pub fn truth(&mut self, l: &Literal) -> bool {
        let n = l.arity();
        holds_at(l, &vec![Integer::new(); n], self)
    }
}

/// Decide ground literals and drop the clauses they falsify.
fn settle_ground(branches: Vec<Branch>, ground: &mut GroundDecider) -> Vec<Branch> {
    let mut seen = HashSet::new();
    branches
        .into_iter()
        .filter_map(|mut b| {
            let mut kept = Vec::with_capacity(b.clause.len());
            for l in b.clause {
                if l.is_ground() {
                    if !ground.truth(&l) {
                        return None;
                    }
                } else if !kept.contains(&l) {
                    kept.push(l);
                }
            }
            b.clause = kept;
            let mut side = Vec::with_capacity(b.side.len());
            for l in b.side {
                if l.is_ground() {
                    if !ground.truth(&l) {
                        return None;
                    }
                } else {
                    side.push(l);
                }
            }
            b.side = side;
            let mut key = (b.clause.clone(), b.side.clone());
            key.0.sort();
            key.1.sort();
            seen.insert(key).then_some(b)
        })
        .collect()
}

fn branches_formula(branches: &[Branch], arity: usize) -> Formula {
    if branches.is_empty() {
        return Formula::Leaf(Literal::falsum(arity));
    }
    Formula::disj(branches.iter().map(Branch::to_formula))
}

/// Eliminate sine equalities; disequalities with sines are split by
/// trichotomy. Returns the rewritten matrix and whether any nontrivial
/// equality was eliminated.
pub fn eliminate_sine_equalities(f: &Formula, cap: usize) -> Result<(Formula, bool), Error> {
    let mut elim = SineEqEliminator::new(cap);
    let mut fired = false;
    let g = f.try_map_leaves(&mut |l| match l {
        Literal::LinSineEq { .. } => {
            fired = true;
            elim.eliminate(&l.term())
        }
        Literal::LinSineNeq { .. } => {
            let t = l.term();
            Ok(Formula::disj([
                Formula::Leaf(Literal::gap_positive(&t)),
                Formula::Leaf(Literal::gap_positive(&t.neg())),
            ]))
        }
        other => Ok(Formula::Leaf(other.clone())),
    })?;
    Ok((g, fired))
}

struct Stages<'a> {
    opts: &'a Options,
    trace: PipelineTrace,
    arity: usize,
    clock: Instant,
}

impl Stages<'_> {
    fn record(&mut self, name: &'static str, branches: &[Branch]) {
        let now = Instant::now();
        self.trace.stages.push(StageSnapshot {
            name,
            clauses: branches.len(),
            literals: branches.iter().map(|b| b.clause.len()).sum(),
            millis: (now - self.clock).as_secs_f64() * 1e3,
            formula: self
                .opts
                .keep_formulas
                .then(|| branches_formula(branches, self.arity).to_string()),
        });
        self.clock = now;
    }

    fn too_many(&self, branches: &[Branch]) -> Option<Verdict> {
        (branches.len() > self.opts.max_clauses).then(|| Verdict::Unknown {
            reason: format!("more than {} clauses", self.opts.max_clauses),
        })
    }
}

/// Run the four reductions, leaving branches whose clauses only contain
/// oscillatory literals. `Err` carries an UNKNOWN verdict when the clause
/// limit is exceeded.
fn run_stages(
    s: &Sentence,
    opts: &Options,
    st: &mut Stages,
    ground: &mut GroundDecider,
) -> Result<Result<Vec<Branch>, Verdict>, Error> {
    let n = s.arity();
    let (f1, fired) = eliminate_sine_equalities(&s.matrix, opts.congruence_cap)?;
    st.trace.schanuel_conditional = fired;
    let b1 = settle_ground(
        to_dnf(&f1)
            .clauses
            .into_iter()
            .map(|c| Branch::new(c, n))
            .collect(),
        ground,
    );
    st.record("sine equalities", &b1);
    if let Some(v) = st.too_many(&b1) {
        return Ok(Err(v));
    }

    let mut b2 = Vec::new();
    for b in &b1 {
        for sub in eliminate_equalities(&b.clause, n).branches {
            b2.push(Branch {
                clause: sub.clause,
                side: Vec::new(),
                map: b.map.then(&sub.map),
            });
        }
        if let Some(v) = st.too_many(&b2) {
            return Ok(Err(v));
        }
    }
    let b2 = settle_ground(b2, ground);
    st.record("linear equalities", &b2);

    let mut b3 = Vec::new();
    for b in b2 {
        b3.extend(eliminate_linear_branch(b, n));
        if let Some(v) = st.too_many(&b3) {
            return Ok(Err(v));
        }
    }
    let b3 = settle_ground(b3, ground);
    st.record("linear occurrences", &b3);

    let mut b4 = Vec::new();
    for b in b3 {
        b4.extend(eliminate_divisibility_branch(b, n));
        if let Some(v) = st.too_many(&b4) {
            return Ok(Err(v));
        }
    }
    let b4 = settle_ground(b4, ground);
    st.record("divisibility", &b4);
    Ok(Ok(b4))
}

/// The oscillatory branches an existential sentence reduces to, or `None`
/// when the clause limit is exceeded.
pub fn reduce_to_oscillatory(s: &Sentence, opts: &Options) -> Result<Option<Vec<Branch>>, Error> {
    if !s.is_existential() {
        return Err(Error::NonExistential);
    }
    let mut st = Stages {
        opts,
        trace: PipelineTrace::default(),
        arity: s.arity(),
        clock: Instant::now(),
    };
    Ok(run_stages(s, opts, &mut st, &mut GroundDecider::default())?.ok())
}

/// Decide an existential sentence over the integers.
pub fn decide_existential(s: &Sentence, opts: &Options) -> Result<Decision, Error> {
    if !s.is_existential() {
        return Err(Error::NonExistential);
    }
    assert!(!opts.precisions.is_empty(), "empty precision ladder");
    let n = s.arity();
    let mut st = Stages {
        opts,
        trace: PipelineTrace::default(),
        arity: n,
        clock: Instant::now(),
    };
    let mut ground = GroundDecider::default();
    let done = |st: Stages, verdict: Verdict, ground: &GroundDecider| {
        let mut trace = st.trace;
        trace.schanuel_conditional |= ground.used_zero_test;
        Ok(Decision { verdict, trace })
    };

    let b4 = match run_stages(s, opts, &mut st, &mut ground)? {
        Ok(b4) => b4,
        Err(v) => return done(st, v, &ground),
    };

    let clauses: Vec<Vec<Literal>> = b4.iter().map(|b| b.clause.clone()).collect();
    let period = period_multiplier(clauses.iter().flatten());
    st.trace.period = Some(period.to_string());
    let mut stats = SearchStats::default();
    let outcome = decide_proxy_nonempty(&clauses, n, &period, opts, &mut stats);
    st.trace.search = stats;
    let verdict = match outcome {
        ProxyOutcome::Empty { refuted } => Verdict::Unsat {
            refuted_boxes: refuted,
        },
        ProxyOutcome::Exhausted { reason } => Verdict::Unknown { reason },
        ProxyOutcome::Certified { clause, region } => {
            let witness = find_witness(
                &b4[clause],
                &region,
                &period,
                s,
                opts.witness_bound,
                &mut ground,
            );
            Verdict::Sat {
                certified_box: region,
                clause,
                witness,
            }
        }
    };
    st.record("proxy search", &b4);
    done(st, verdict, &ground)
}

/// Search integer points of the certified region that also satisfy the
/// branch's side conditions, map them back and check them against the
/// original matrix.
fn find_witness(
    branch: &Branch,
    region: &IntervalBox,
    period: &Integer,
    s: &Sentence,
    bound: u64,
    ground: &mut GroundDecider,
) -> Option<Vec<Integer>> {
    if bound == 0 {
        return None;
    }
    const PER_COORDINATE: usize = 24;
    const COMBINATIONS: usize = 4096;
    let per: Vec<Vec<Integer>> = region
        .dims
        .iter()
        .map(|iv| {
            if iv.lo() == iv.hi() {
                free_candidates(bound, PER_COORDINATE)
            } else {
                residue_candidates(iv, period, bound, PER_COORDINATE)
            }
        })
        .collect();
    if per.iter().any(Vec::is_empty) {
        return None;
    }
    let mut idx = vec![0usize; per.len()];
    for _ in 0..COMBINATIONS {
        let z: Vec<Integer> = idx.iter().zip(&per).map(|(&i, c)| c[i].clone()).collect();
        if branch.side.iter().all(|l| holds_at(l, &z, ground)) {
            if let Some(x) = branch.map.apply_integral(&z) {
                if formula_holds_at(&s.matrix, &x, ground) {
                    return Some(x);
                }
            }
        }
        // odometer over the candidate lists
        let mut k = 0;
        loop {
            if k == idx.len() {
                return None;
            }
            idx[k] += 1;
            if idx[k] < per[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
    None
}

/// Values tried for a coordinate no oscillatory literal depends on; only
/// the side conditions constrain it, so spread them over all magnitudes.
fn free_candidates(bound: u64, limit: usize) -> Vec<Integer> {
    let mut out = vec![Integer::new()];
    let mut m: u64 = 1;
    while m <= bound && out.len() + 2 <= limit {
        out.push(Integer::from(m));
        out.push(-Integer::from(m));
        m = match m {
            1 => 2,
            2 => 3,
            m if m.to_string().starts_with('3') => m / 3 * 10,
            m => m * 3,
        };
    }
    out
}

/// Identity map helper for callers assembling branches by hand.
pub fn identity_branch(clause: Vec<Literal>, arity: usize) -> Branch {
    Branch {
        clause,
        side: Vec::new(),
        map: AffineMap::identity(arity),
    }
}

fn decimal(x: &Float, round: Round) -> String {
    let (neg, digits, exp) = x.to_sign_string_exp_round(10, Some(20), round);
    let sign = if neg { "-" } else { "" };
    match exp {
        Some(e) => format!("{sign}0.{digits}e{e}"),
        None => format!("{sign}{digits}"),
    }
}

#[derive(Serialize)]
struct Report<'a> {
    verdict: VerdictKind,
    witness: Option<Vec<serde_json::Value>>,
    certified_box: Option<Vec<[String; 2]>>,
    #[serde(rename = "period_N")]
    period_n: Option<&'a str>,
    schanuel_conditional: bool,
    stage_stats: &'a PipelineTrace,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<&'a str>,
}

impl Decision {
    /// JSON report with decimal box endpoints rounded outward.
    pub fn to_json(&self) -> serde_json::Value {
        let witness = self.verdict.witness().map(|z| {
            z.iter()
                .map(|x| match x.to_i64() {
                    Some(v) => serde_json::Value::from(v),
                    None => serde_json::Value::from(x.to_string()),
                })
                .collect()
        });
        let certified_box = match &self.verdict {
            Verdict::Sat { certified_box, .. } => Some(
                certified_box
                    .dims
                    .iter()
                    .map(|iv| [decimal(iv.lo(), Round::Down), decimal(iv.hi(), Round::Up)])
                    .collect(),
            ),
            _ => None,
        };
        let reason = match &self.verdict {
            Verdict::Unknown { reason } => Some(reason.as_str()),
            _ => None,
        };
        serde_json::to_value(Report {
            verdict: self.verdict.kind(),
            witness,
            certified_box,
            period_n: self.trace.period.as_deref(),
            schanuel_conditional: self.trace.schanuel_conditional,
            stage_stats: &self.trace,
            reason,
        })
        .expect("serializable report")
    }
}
