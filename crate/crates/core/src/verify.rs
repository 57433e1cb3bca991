//! Decision procedures for the standing conditions on a tile system.
//!
//! * H0: every transition matrix is nonzero.
//! * H1a-H1c: the matrices commute, and pairwise and triple products are
//!   {0,1}-matrices. Together these give unique products of words.
//! * H1 itself, checked independently by exhaustive grid search.
//! * H2: the combined transition graph is strongly connected.
//! * H3*: every direction-`j` extension fiber has two or more letters,
//!   decided by a fixed-point computation over letter subsets.
//! * H3, bounded: a non-`p`-periodic word for every small `p`.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::completion::word_from_path;
use crate::enumerate;
use crate::error::Result;
use crate::shape::{Shape, Translate};
use crate::system::{Alphabet, Letter, TileSystem};
use crate::word::Word;

/// A direction whose matrix has no nonzero entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ZeroMatrix {
    pub direction: usize,
}

pub fn check_h0(ts: &TileSystem) -> Result<(), ZeroMatrix> {
    match ts.matrices().iter().position(|m| m.is_zero()) {
        Some(direction) => Err(ZeroMatrix { direction }),
        None => Ok(()),
    }
}

/// An entry of a matrix product that breaks one of the local conditions.
/// Directions are 0-based; `(b, a)` follows the matrix convention.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum H1LocalFailure {
    /// `(M_i M_j)(b, a) != (M_j M_i)(b, a)`.
    NonCommuting {
        i: usize,
        j: usize,
        b: Letter,
        a: Letter,
        ij: u64,
        ji: u64,
    },
    /// `(M_i M_j)(b, a) > 1`.
    PairNotZeroOne {
        i: usize,
        j: usize,
        b: Letter,
        a: Letter,
        value: u64,
    },
    /// `(M_i M_j M_k)(b, a) > 1`.
    TripleNotZeroOne {
        i: usize,
        j: usize,
        k: usize,
        b: Letter,
        a: Letter,
        value: u64,
    },
}

impl H1LocalFailure {
    pub fn condition(&self) -> &'static str {
        match self {
            H1LocalFailure::NonCommuting { .. } => "H1a",
            H1LocalFailure::PairNotZeroOne { .. } => "H1b",
            H1LocalFailure::TripleNotZeroOne { .. } => "H1c",
        }
    }
}

pub fn check_h1a(ts: &TileSystem) -> Result<(), H1LocalFailure> {
    let counts: Vec<_> = ts.matrices().iter().map(|m| m.to_counts()).collect();
    for i in 0..ts.rank() {
        for j in (i + 1)..ts.rank() {
            let ij = counts[i].mul(&counts[j]);
            let ji = counts[j].mul(&counts[i]);
            if let Some((b, a)) = ij.first_difference(&ji) {
                return Err(H1LocalFailure::NonCommuting {
                    i,
                    j,
                    b: Letter(b),
                    a: Letter(a),
                    ij: ij.get(b, a),
                    ji: ji.get(b, a),
                });
            }
        }
    }
    Ok(())
}

pub fn check_h1b(ts: &TileSystem) -> Result<(), H1LocalFailure> {
    let counts: Vec<_> = ts.matrices().iter().map(|m| m.to_counts()).collect();
    for i in 0..ts.rank() {
        for j in (i + 1)..ts.rank() {
            if let Some((b, a, value)) = counts[i].mul(&counts[j]).first_entry_above_one() {
                return Err(H1LocalFailure::PairNotZeroOne {
                    i,
                    j,
                    b: Letter(b),
                    a: Letter(a),
                    value,
                });
            }
        }
    }
    Ok(())
}

#[allow(clippy::needless_range_loop)]
pub fn check_h1c(ts: &TileSystem) -> Result<(), H1LocalFailure> {
    let counts: Vec<_> = ts.matrices().iter().map(|m| m.to_counts()).collect();
    let r = ts.rank();
    for i in 0..r {
        for j in (i + 1)..r {
            let ij = counts[i].mul(&counts[j]);
            for k in (j + 1)..r {
                if let Some((b, a, value)) = ij.mul(&counts[k]).first_entry_above_one() {
                    return Err(H1LocalFailure::TripleNotZeroOne {
                        i,
                        j,
                        k,
                        b: Letter(b),
                        a: Letter(a),
                        value,
                    });
                }
            }
        }
    }
    Ok(())
}

/// H1a, then H1b, then H1c; the first failure wins.
pub fn check_h1_local(ts: &TileSystem) -> Result<(), H1LocalFailure> {
    check_h1a(ts)?;
    check_h1b(ts)?;
    check_h1c(ts)
}

/// A composable pair `(u, v)` without exactly one completion. `completions`
/// is empty when none exists and holds two distinct ones otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompletionFailure {
    pub u: Word,
    pub v: Word,
    pub completions: Vec<Word>,
}

/// Checks by brute force that every `u, v` with `t(u) = o(v)` and
/// `σ(u) + σ(v) <= bound` have exactly one word of shape `σ(u) + σ(v)`
/// restricting to them. Only matrices are consulted, never the extension
/// machinery.
pub fn check_h1_oracle(ts: &TileSystem, bound: &Shape) -> Result<(), CompletionFailure> {
    assert_eq!(bound.rank(), ts.rank(), "bound rank must match the system");
    let mut cache: HashMap<Shape, Vec<Word>> = HashMap::new();
    for n in bound.shapes_within() {
        let all = enumerate::words(ts, &n, None);
        for m in n.shapes_within() {
            if m.is_zero() || m == n {
                continue;
            }
            let k = n.checked_sub(&m).expect("m <= n");
            check_split(ts, &all, &m, &n, &cache[&m], &cache[&k])?;
        }
        cache.insert(n, all);
    }
    Ok(())
}

fn check_split(
    ts: &TileSystem,
    all: &[Word],
    m: &Shape,
    n: &Shape,
    left: &[Word],
    right: &[Word],
) -> Result<(), CompletionFailure> {
    let zero = Shape::zero(m.rank());
    let mut seen: HashMap<(Word, Word), usize> = HashMap::new();
    for (i, w) in all.iter().enumerate() {
        let u = w.restrict(&zero, m).expect("in bounds");
        let v = w.restrict(m, n).expect("in bounds");
        if let Some(&first) = seen.get(&(u.clone(), v.clone())) {
            return Err(CompletionFailure {
                u,
                v,
                completions: vec![all[first].clone(), w.clone()],
            });
        }
        seen.insert((u, v), i);
    }
    let mut by_origin: Vec<Vec<&Word>> = vec![Vec::new(); ts.letter_count()];
    for v in right {
        by_origin[v.origin().0].push(v);
    }
    let pairs: usize = left.iter().map(|u| by_origin[u.terminus().0].len()).sum();
    if pairs == seen.len() {
        return Ok(());
    }
    for u in left {
        for &v in &by_origin[u.terminus().0] {
            if !seen.contains_key(&(u.clone(), v.clone())) {
                return Err(CompletionFailure {
                    u: u.clone(),
                    v: v.clone(),
                    completions: Vec::new(),
                });
            }
        }
    }
    unreachable!("pair count mismatch without a missing pair")
}

/// Strongly connected components of the graph with an edge `a -> b` whenever
/// some `M_i(b, a) = 1`. Each component is sorted and components are ordered
/// by their least letter.
pub fn transition_components(ts: &TileSystem) -> Vec<Vec<Letter>> {
    let mut g: DiGraph<(), ()> = DiGraph::new();
    let nodes: Vec<_> = ts.letters().map(|_| g.add_node(())).collect();
    for a in ts.letters() {
        let mut targets: Vec<Letter> = (0..ts.rank())
            .flat_map(|j| ts.successors(j, a).iter().copied())
            .collect();
        targets.sort();
        targets.dedup();
        for b in targets {
            g.add_edge(nodes[a.0], nodes[b.0], ());
        }
    }
    let mut comps: Vec<Vec<Letter>> = tarjan_scc(&g)
        .into_iter()
        .map(|c| {
            let mut c: Vec<Letter> = c.into_iter().map(|n| Letter(n.index())).collect();
            c.sort();
            c
        })
        .collect();
    comps.sort();
    comps
}

/// Passes iff the transition graph is strongly connected; otherwise returns
/// its components.
pub fn check_h2(ts: &TileSystem) -> Result<(), Vec<Vec<Letter>>> {
    let comps = transition_components(ts);
    if comps.len() == 1 {
        Ok(())
    } else {
        Err(comps)
    }
}

/// A subset of the alphabet as a bitmask.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LetterSet {
    bits: Vec<u64>,
}

impl LetterSet {
    pub fn empty(letters: usize) -> Self {
        LetterSet {
            bits: vec![0; letters.div_ceil(64)],
        }
    }

    pub fn from_letters(letters: usize, items: impl IntoIterator<Item = Letter>) -> Self {
        let mut s = LetterSet::empty(letters);
        for a in items {
            s.insert(a);
        }
        s
    }

    pub fn insert(&mut self, a: Letter) {
        self.bits[a.0 / 64] |= 1 << (a.0 % 64);
    }

    pub fn contains(&self, a: Letter) -> bool {
        self.bits[a.0 / 64] >> (a.0 % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..self.bits.len() * 64)
            .filter(|&i| self.contains(Letter(i)))
            .map(Letter)
    }
}

/// One discovered value `A(j, w)` together with the word `w` that realizes
/// it, stored as its staircase from `origin`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ASetEntry {
    pub set: LetterSet,
    pub origin: Letter,
    pub steps: Vec<(usize, Letter)>,
}

impl ASetEntry {
    pub fn word(&self, ts: &TileSystem) -> Result<Word> {
        word_from_path(ts, self.origin, &self.steps)
    }
}

/// For a fixed direction `j`, the list of every value of `A(j, w)` per
/// origin letter, over words `w` with `σ(w)_j = 0`.
#[derive(Clone, Debug)]
pub struct ASetFamily {
    pub direction: usize,
    lists: Vec<Vec<ASetEntry>>,
}

impl ASetFamily {
    pub fn sets_for(&self, c: Letter) -> &[ASetEntry] {
        &self.lists[c.0]
    }

    pub fn entries(&self) -> impl Iterator<Item = &ASetEntry> {
        self.lists.iter().flatten()
    }

    pub fn len(&self) -> usize {
        self.lists.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The first stored set with fewer than two letters.
    pub fn first_small(&self) -> Option<&ASetEntry> {
        self.entries().find(|e| e.set.len() < 2)
    }

    /// Sets produced by one full transfer round that are not yet listed.
    pub fn next_round(&self, ts: &TileSystem) -> Vec<(Letter, LetterSet)> {
        let known: HashSet<(Letter, &LetterSet)> =
            self.entries().map(|e| (e.origin, &e.set)).collect();
        let mut fresh = Vec::new();
        for e in self.entries() {
            for (c2, _, t) in transfers(ts, self.direction, e.origin, &e.set) {
                if !known.contains(&(c2, &t)) && !fresh.contains(&(c2, t.clone())) {
                    fresh.push((c2, t));
                }
            }
        }
        fresh
    }

    pub fn is_closed(&self, ts: &TileSystem) -> bool {
        self.next_round(ts).is_empty()
    }
}

// every `(c', k, A(j, vw))` for unit words `v: c' -> c` in directions `k != j`
fn transfers<'a>(
    ts: &'a TileSystem,
    j: usize,
    c: Letter,
    set: &'a LetterSet,
) -> impl Iterator<Item = (Letter, usize, LetterSet)> + 'a {
    let n = ts.letter_count();
    (0..ts.rank()).filter(move |&k| k != j).flat_map(move |k| {
        ts.letters()
            .filter(move |&c2| ts.allows(k, c2, c))
            .map(move |c2| {
                let t = LetterSet::from_letters(
                    n,
                    ts.successors(j, c2)
                        .iter()
                        .copied()
                        .filter(|&a| set.iter().any(|b| ts.allows(k, a, b))),
                );
                (c2, k, t)
            })
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum H3StarStatus {
    Pass,
    /// Some word has fewer than two extensions; the entry names it.
    Fail(ASetEntry),
    /// More than `limit` sets were discovered before the lists closed.
    CapHit {
        limit: usize,
    },
}

#[derive(Clone, Debug)]
pub struct H3StarResult {
    pub status: H3StarStatus,
    pub family: ASetFamily,
}

/// Runs the subset fixed point for direction `j` (0-based). The lists are
/// seeded with `A(j, c)` for each letter and closed under prepending unit
/// words in the other directions. At most `cap` sets are stored.
pub fn check_h3_star(ts: &TileSystem, j: usize, cap: usize) -> Result<H3StarResult> {
    ts.check_direction(j)?;
    let n = ts.letter_count();
    let mut lists: Vec<Vec<ASetEntry>> = vec![Vec::new(); n];
    let mut seen: HashSet<(Letter, LetterSet)> = HashSet::new();
    let mut queue: VecDeque<(Letter, usize)> = VecDeque::new();
    let mut total = 0usize;
    let mut capped = false;

    for c in ts.letters() {
        if total >= cap {
            capped = true;
            break;
        }
        let set = LetterSet::from_letters(n, ts.successors(j, c).iter().copied());
        seen.insert((c, set.clone()));
        lists[c.0].push(ASetEntry {
            set,
            origin: c,
            steps: Vec::new(),
        });
        queue.push_back((c, 0));
        total += 1;
    }

    if capped {
        queue.clear();
    }
    'outer: while let Some((c, idx)) = queue.pop_front() {
        let entry = lists[c.0][idx].clone();
        for (c2, k, t) in transfers(ts, j, c, &entry.set) {
            if seen.contains(&(c2, t.clone())) {
                continue;
            }
            if total >= cap {
                capped = true;
                break 'outer;
            }
            seen.insert((c2, t.clone()));
            let mut steps = Vec::with_capacity(entry.steps.len() + 1);
            steps.push((k, c));
            steps.extend_from_slice(&entry.steps);
            lists[c2.0].push(ASetEntry {
                set: t,
                origin: c2,
                steps,
            });
            queue.push_back((c2, lists[c2.0].len() - 1));
            total += 1;
        }
    }

    let family = ASetFamily {
        direction: j,
        lists,
    };
    let status = if let Some(e) = family.first_small() {
        H3StarStatus::Fail(e.clone())
    } else if capped {
        H3StarStatus::CapHit { limit: cap }
    } else {
        H3StarStatus::Pass
    };
    Ok(H3StarResult { status, family })
}

/// The first word (graded shape order, then lexicographic) of shape at most
/// `shape_bound` that is not `p`-periodic. Only shapes with `|p| <= l` are
/// tried since smaller ones have an empty overlap.
pub fn find_nonperiodic(
    ts: &TileSystem,
    p: &Translate,
    shape_bound: &Shape,
    origin: Option<Letter>,
) -> Option<Word> {
    let need = p.abs();
    shape_bound
        .shapes_within()
        .into_iter()
        .filter(|l| need.le(l))
        .find_map(|l| {
            enumerate::find_word(ts, &l, origin, |w| !w.is_periodic(p).expect("p is nonzero"))
        })
}

#[derive(Clone, Debug)]
pub struct H3BoundedResult {
    pub p_bound: Shape,
    pub shape_bound: Shape,
    /// One entry per class `{p, -p}`, in lexicographic order of the
    /// representative with positive leading coordinate.
    pub witnesses: Vec<(Translate, Option<Word>)>,
}

impl H3BoundedResult {
    pub fn passed(&self) -> bool {
        self.witnesses.iter().all(|(_, w)| w.is_some())
    }

    pub fn missing(&self) -> Vec<&Translate> {
        self.witnesses
            .iter()
            .filter(|(_, w)| w.is_none())
            .map(|(p, _)| p)
            .collect()
    }
}

/// Searches a non-`p`-periodic word for each nonzero `|p| <= p_bound`. A
/// word is `p`-periodic exactly when it is `-p`-periodic, so one class
/// representative is tried per pair.
pub fn check_h3_bounded(ts: &TileSystem, p_bound: &Shape, shape_bound: &Shape) -> H3BoundedResult {
    let witnesses = Translate::classes_within(p_bound)
        .into_par_iter()
        .map(|p| {
            let w = find_nonperiodic(ts, &p, shape_bound, None);
            (p, w)
        })
        .collect();
    H3BoundedResult {
        p_bound: p_bound.clone(),
        shape_bound: shape_bound.clone(),
        witnesses,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    BoundedPass,
    Skipped,
    CapHit,
}

impl Status {
    pub fn is_failure(self) -> bool {
        matches!(self, Status::Fail | Status::CapHit)
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::BoundedPass => "bounded-pass",
            Status::Skipped => "skipped",
            Status::CapHit => "cap-hit",
        })
    }
}

/// One line of a report. Directions and matrix indices are 1-based here.
#[derive(Clone, Debug, Serialize)]
pub struct CheckEntry {
    pub condition: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    pub params: Value,
    #[serde(skip)]
    pub summary: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<CheckEntry>,
}

impl VerificationReport {
    /// True when no check failed or hit its cap.
    pub fn passed(&self) -> bool {
        !self.checks.iter().any(|c| c.status.is_failure())
    }

    pub fn get(&self, condition: &str) -> Option<&CheckEntry> {
        self.checks.iter().find(|c| c.condition == condition)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            write!(f, "{}: {}", c.condition, c.status)?;
            if !c.summary.is_empty() {
                write!(f, " ({})", c.summary)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    /// Bound for the exhaustive H1 check; `None` skips it.
    pub h1_oracle_bound: Option<Shape>,
    pub h3_p_bound: Shape,
    pub h3_shape_bound: Shape,
    pub h3_star_cap: usize,
}

impl VerifyOptions {
    pub fn defaults(rank: usize) -> Self {
        VerifyOptions {
            h1_oracle_bound: Some(Shape::uniform(rank, 1)),
            h3_p_bound: Shape::uniform(rank, 1),
            h3_shape_bound: Shape::uniform(rank, 3),
            h3_star_cap: 100_000,
        }
    }
}

pub fn word_json(w: &Word, alphabet: &Alphabet) -> Value {
    json!({ "shape": w.shape(), "word": w.to_compact(alphabet) })
}

fn letters_json(alphabet: &Alphabet, ls: impl IntoIterator<Item = Letter>) -> Value {
    Value::from(
        ls.into_iter()
            .map(|a| alphabet.name(a).to_string())
            .collect::<Vec<_>>(),
    )
}

fn entry(
    condition: impl Into<String>,
    status: Status,
    witness: Option<Value>,
    params: Value,
    summary: String,
) -> CheckEntry {
    CheckEntry {
        condition: condition.into(),
        status,
        witness,
        params,
        summary,
    }
}

fn h1_local_entry(ts: &TileSystem, condition: &str, res: Result<(), H1LocalFailure>) -> CheckEntry {
    let al = ts.alphabet();
    match res {
        Ok(()) => entry(condition, Status::Pass, None, json!({}), String::new()),
        Err(f) => {
            let (witness, summary) = match f {
                H1LocalFailure::NonCommuting { i, j, b, a, ij, ji } => (
                    json!({"i": i + 1, "j": j + 1, "b": al.name(b), "a": al.name(a), "MiMj": ij, "MjMi": ji}),
                    format!(
                        "(M{} M{})({},{}) = {ij} but (M{} M{})({},{}) = {ji}",
                        i + 1,
                        j + 1,
                        al.name(b),
                        al.name(a),
                        j + 1,
                        i + 1,
                        al.name(b),
                        al.name(a)
                    ),
                ),
                H1LocalFailure::PairNotZeroOne { i, j, b, a, value } => (
                    json!({"i": i + 1, "j": j + 1, "b": al.name(b), "a": al.name(a), "value": value}),
                    format!(
                        "(M{} M{})({},{}) = {value}",
                        i + 1,
                        j + 1,
                        al.name(b),
                        al.name(a)
                    ),
                ),
                H1LocalFailure::TripleNotZeroOne {
                    i,
                    j,
                    k,
                    b,
                    a,
                    value,
                } => (
                    json!({"i": i + 1, "j": j + 1, "k": k + 1, "b": al.name(b), "a": al.name(a), "value": value}),
                    format!(
                        "(M{} M{} M{})({},{}) = {value}",
                        i + 1,
                        j + 1,
                        k + 1,
                        al.name(b),
                        al.name(a)
                    ),
                ),
            };
            entry(condition, Status::Fail, Some(witness), json!({}), summary)
        }
    }
}

/// Runs every check. When any of H1a-H1c fails, the checks that rely on
/// unique products (H3* and bounded H3) are reported as skipped.
pub fn verify_report(ts: &TileSystem, opts: &VerifyOptions) -> VerificationReport {
    let al = ts.alphabet();
    let mut checks = Vec::new();

    checks.push(match check_h0(ts) {
        Ok(()) => entry("H0", Status::Pass, None, json!({}), String::new()),
        Err(z) => entry(
            "H0",
            Status::Fail,
            Some(json!({"direction": z.direction + 1})),
            json!({}),
            format!("M{} is zero", z.direction + 1),
        ),
    });

    let h1 = [
        ("H1a", check_h1a(ts)),
        ("H1b", check_h1b(ts)),
        ("H1c", check_h1c(ts)),
    ];
    let local_ok = h1.iter().all(|(_, r)| r.is_ok());
    for (name, res) in h1 {
        checks.push(h1_local_entry(ts, name, res));
    }

    match &opts.h1_oracle_bound {
        None => checks.push(entry(
            "H1",
            Status::Skipped,
            None,
            json!({}),
            "no bound given".into(),
        )),
        Some(bound) => {
            let params = json!({ "bound": bound });
            checks.push(match check_h1_oracle(ts, bound) {
                Ok(()) => entry("H1", Status::BoundedPass, None, params, String::new()),
                Err(f) => {
                    let summary = if f.completions.is_empty() {
                        format!("{} and {} have no completion", f.u.to_compact(al), f.v.to_compact(al))
                    } else {
                        format!(
                            "{} and {} have completions {} and {}",
                            f.u.to_compact(al),
                            f.v.to_compact(al),
                            f.completions[0].to_compact(al),
                            f.completions[1].to_compact(al)
                        )
                    };
                    let witness = json!({
                        "u": word_json(&f.u, al),
                        "v": word_json(&f.v, al),
                        "completions": f.completions.iter().map(|w| word_json(w, al)).collect::<Vec<_>>(),
                    });
                    entry("H1", Status::Fail, Some(witness), params, summary)
                }
            });
        }
    }

    checks.push(match check_h2(ts) {
        Ok(()) => entry("H2", Status::Pass, None, json!({}), String::new()),
        Err(comps) => {
            let names: Vec<Value> = comps
                .iter()
                .map(|c| letters_json(al, c.iter().copied()))
                .collect();
            entry(
                "H2",
                Status::Fail,
                Some(json!({ "components": names })),
                json!({}),
                format!("{} strongly connected components", comps.len()),
            )
        }
    });

    let star: Vec<CheckEntry> = (0..ts.rank())
        .into_par_iter()
        .map(|j| {
            let name = format!("H3*[{}]", j + 1);
            let params = json!({ "direction": j + 1, "cap": opts.h3_star_cap });
            if !local_ok {
                return entry(name, Status::Skipped, None, params, "needs H1a-H1c".into());
            }
            let res = check_h3_star(ts, j, opts.h3_star_cap).expect("direction in range");
            let sets = res.family.len();
            match res.status {
                H3StarStatus::Pass => {
                    entry(name, Status::Pass, None, params, format!("{sets} sets"))
                }
                H3StarStatus::CapHit { limit } => entry(
                    name,
                    Status::CapHit,
                    None,
                    params,
                    format!("stopped after {limit} sets"),
                ),
                H3StarStatus::Fail(e) => {
                    let w = e.word(ts).expect("witness paths are valid");
                    let witness = json!({
                        "word": word_json(&w, al),
                        "set": letters_json(al, e.set.iter()),
                    });
                    let summary = format!(
                        "A({}, {}) = {{{}}}",
                        j + 1,
                        w.to_compact(al),
                        e.set
                            .iter()
                            .map(|a| al.name(a))
                            .collect::<Vec<_>>()
                            .join(",")
                    );
                    entry(name, Status::Fail, Some(witness), params, summary)
                }
            }
        })
        .collect();
    checks.extend(star);

    let params = json!({ "p_bound": opts.h3_p_bound, "shape_bound": opts.h3_shape_bound });
    checks.push(if !local_ok {
        entry("H3", Status::Skipped, None, params, "needs H1a-H1c".into())
    } else {
        let res = check_h3_bounded(ts, &opts.h3_p_bound, &opts.h3_shape_bound);
        if res.passed() {
            let ws: Vec<Value> = res
                .witnesses
                .iter()
                .map(|(p, w)| json!({ "p": p, "word": word_json(w.as_ref().expect("passed"), al) }))
                .collect();
            entry(
                "H3",
                Status::BoundedPass,
                Some(Value::from(ws)),
                params,
                format!("{} translate classes", res.witnesses.len()),
            )
        } else {
            let missing: Vec<&Translate> = res.missing();
            let summary = format!(
                "no non-periodic word within the bound for p = {}",
                missing
                    .iter()
                    .map(|p| p.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            );
            entry(
                "H3",
                Status::Fail,
                Some(json!({ "missing": missing })),
                params,
                summary,
            )
        }
    });

    VerificationReport { checks }
}
