//! Constructive witnesses: connecting words, distinct pairs, words without
//! small periods, translate-separated families and the support of the
//! associated projection.
//!
//! Every choice the constructions leave open is made canonically: shapes in
//! graded order, letters in declaration order, first valid option wins.

use std::collections::{HashMap, VecDeque};
use std::ops::ControlFlow;

use crate::completion::{extend_unit, list_extensions, pad_to, product, word_from_path};
use crate::enumerate;
use crate::error::{Error, Result};
use crate::shape::{Shape, Translate};
use crate::system::{DecorationMap, Letter, TileSystem};
use crate::verify::find_nonperiodic;
use crate::word::{DecoratedWord, Word};

/// Search bounds for the constructions.
#[derive(Clone, Debug)]
pub struct WitnessOptions {
    /// Extra room per coordinate, beyond `m`, for the non-periodic word search.
    pub slack: usize,
    /// Largest total degree tried by [`distinct_pair`].
    pub max_pair_degree: usize,
}

impl Default for WitnessOptions {
    fn default() -> Self {
        WitnessOptions {
            slack: 2,
            max_pair_degree: 2,
        }
    }
}

/// A letter reached and the progress towards `n_min`, capped at `n_min`.
type Progress = (Letter, Shape);

/// A word `w` with `o(w) = a`, `t(w) = b` and `σ(w) >= n_min`.
///
/// Breadth-first search over pairs (letter, progress), progress being the
/// shape walked so far capped at `n_min`, finds a shortest staircase; the
/// word is then the unique one through it.
pub fn connect(ts: &TileSystem, a: Letter, b: Letter, n_min: &Shape) -> Result<Word> {
    if n_min.rank() != ts.rank() {
        return Err(Error::RankMismatch {
            expected: ts.rank(),
            found: n_min.rank(),
        });
    }
    let start = (a, Shape::zero(ts.rank()));
    let goal = (b, n_min.clone());
    // state -> (predecessor, direction of the step taken)
    let mut prev: HashMap<Progress, Option<(Progress, usize)>> = HashMap::new();
    prev.insert(start.clone(), None);
    let mut queue = VecDeque::from([start]);
    while let Some(state) = queue.pop_front() {
        if state == goal {
            let mut steps = Vec::new();
            let mut cur = state;
            while let Some((p, j)) = prev[&cur].clone() {
                steps.push((j, cur.0));
                cur = p;
            }
            steps.reverse();
            let w = word_from_path(ts, a, &steps)?;
            debug_assert!(n_min.le(w.shape()) && w.origin() == a && w.terminus() == b);
            return Ok(w);
        }
        let (x, progress) = &state;
        for j in 0..ts.rank() {
            let next_progress = if progress[j] < n_min[j] {
                progress.plus_unit(j)
            } else {
                progress.clone()
            };
            for &y in ts.successors(j, *x) {
                let next = (y, next_progress.clone());
                if !prev.contains_key(&next) {
                    prev.insert(next.clone(), Some((state.clone(), j)));
                    queue.push_back(next);
                }
            }
        }
    }
    Err(Error::Unreachable { from: a, to: b })
}

/// Two different words with the same shape and origin: the first two words
/// of the first (shape, origin) that has at least two, shapes of positive
/// degree in graded order.
///
/// Under unique products a word is fixed by its staircase, so if every letter
/// has at most one successor in every direction no such pair exists at any
/// degree; degree 1 already decides the question.
pub fn distinct_pair(ts: &TileSystem, max_degree: usize) -> Result<(Word, Word)> {
    for degree in 1..=max_degree {
        for shape in Shape::shapes_of_degree(ts.rank(), degree) {
            for c in ts.letters() {
                let mut found: Vec<Word> = Vec::with_capacity(2);
                let _ = enumerate::for_each_word(ts, &shape, Some(c), |cells| {
                    found.push(
                        crate::word::validate_word(ts, shape.clone(), cells.to_vec())
                            .expect("enumerated words are valid"),
                    );
                    if found.len() == 2 {
                        ControlFlow::Break(())
                    } else {
                        ControlFlow::Continue(())
                    }
                });
                if found.len() == 2 {
                    let v = found.pop().expect("two words");
                    let u = found.pop().expect("two words");
                    return Ok((u, v));
                }
            }
        }
    }
    Err(Error::NoDistinctPair { max_degree })
}

/// A word starting at `a` that is not `p`-periodic for any nonzero `p` with
/// `|p| <= m`.
///
/// One non-`p`-periodic word is found per class `{p, -p}` and the words are
/// chained together by products with connecting spacers. Non-periodicity of a
/// sub-box carries over to the whole word, so the product inherits every
/// witness. For `m = 0` there is nothing to defeat and the result is `a`.
pub fn nonperiodic_all(
    ts: &TileSystem,
    m: &Shape,
    a: Letter,
    opts: &WitnessOptions,
) -> Result<Word> {
    if m.rank() != ts.rank() {
        return Err(Error::RankMismatch {
            expected: ts.rank(),
            found: m.rank(),
        });
    }
    let bound = Shape::new(m.components().iter().map(|c| c + opts.slack).collect());
    let zero = Shape::zero(ts.rank());
    let mut w = Word::single(a, ts.rank());
    for p in Translate::classes_within(m) {
        if !w.is_periodic(&p)? {
            continue;
        }
        let wp = find_nonperiodic(ts, &p, &bound, None).ok_or_else(|| Error::MissingWitness {
            p: p.clone(),
            shape_bound: bound.clone(),
        })?;
        let spacer = connect(ts, w.terminus(), wp.origin(), &zero)?;
        w = product(ts, &product(ts, &w, &spacer)?, &wp)?;
    }
    Ok(w)
}

/// Extensions `w1' ⊇ w1`, `w2' ⊇ w2` of a common shape such that `τ_p w1'`
/// and `w2'` disagree somewhere on their overlap.
///
/// Append to `w1` a spacer `s` and then one of a distinct pair `u, v`, the
/// spacer long enough that the appended block lands, after translating by
/// `p`, at a nonnegative offset `q` inside the (padded) `w2`. Whichever of
/// `u, v` differs from what `w2` holds there is used.
pub fn separate_translates(
    ts: &TileSystem,
    p: &Translate,
    w1: &Word,
    w2: &Word,
    opts: &WitnessOptions,
) -> Result<(Word, Word)> {
    if w1.shape() != w2.shape() {
        return Err(Error::ShapeMismatch {
            expected: w1.shape().clone(),
            found: w2.shape().clone(),
        });
    }
    if p.rank() != ts.rank() {
        return Err(Error::RankMismatch {
            expected: ts.rank(),
            found: p.rank(),
        });
    }
    let l = w1.shape();
    let (u, v) = distinct_pair(ts, opts.max_pair_degree)?;
    // σ(s) >= (-p - l) ∨ 0 keeps q = p + l + σ(s) nonnegative
    let n_min = Shape::new(
        p.components()
            .iter()
            .zip(l.components())
            .map(|(&pj, &lj)| (-pj - lj as i64).max(0) as usize)
            .collect(),
    );
    let s = connect(ts, w1.terminus(), u.origin(), &n_min)?;
    let q = Shape::new(
        p.components()
            .iter()
            .zip(l.components())
            .zip(s.shape().components())
            .map(|((&pj, &lj), &sj)| (pj + lj as i64 + sj as i64) as usize)
            .collect(),
    );
    let q_end = &q + u.shape();
    let w2pp = pad_to(ts, w2, &l.join(&q_end))?;
    let block = w2pp.restrict(&q, &q_end)?;
    let pick = if block == u { &v } else { &u };
    let w1pp = product(ts, &product(ts, w1, &s)?, pick)?;
    let target = w1pp.shape().join(w2pp.shape());
    Ok((pad_to(ts, &w1pp, &target)?, pad_to(ts, &w2pp, &target)?))
}

/// A family `{w_a}` of words of one common shape with `o(w_a) = a`, such
/// that `w_a` and `τ_p w_b` disagree on their overlap for all letters `a, b`
/// and all nonzero `|p| <= m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparatedSet {
    pub shape: Shape,
    /// Indexed by letter.
    pub words: Vec<Word>,
}

impl SeparatedSet {
    pub fn word(&self, a: Letter) -> &Word {
        &self.words[a.0]
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.words.get(w.origin().0) == Some(w)
    }
}

/// First `(a, b, p)` at which a family breaks the separation contract.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeparationFailure {
    Origin(Letter),
    Shape(Letter),
    Agrees { a: Letter, b: Letter, p: Translate },
}

/// Exhaustive check of the contract over every letter pair and translate.
pub fn check_separated(
    ts: &TileSystem,
    m: &Shape,
    set: &SeparatedSet,
) -> Result<(), SeparationFailure> {
    for a in ts.letters() {
        if set.word(a).origin() != a {
            return Err(SeparationFailure::Origin(a));
        }
        if set.word(a).shape() != &set.shape {
            return Err(SeparationFailure::Shape(a));
        }
    }
    for a in ts.letters() {
        for b in ts.letters() {
            for p in Translate::nonzero_within(m) {
                if set
                    .word(a)
                    .agrees_with_translate(set.word(b), &p)
                    .expect("shapes agree")
                {
                    return Err(SeparationFailure::Agrees { a, b, p });
                }
            }
        }
    }
    Ok(())
}

/// Builds a separated family for translate bound `m`.
///
/// Starts from a word per letter without periods up to `m`, padded to a
/// common shape, and then visits `(a, b, p)` with `a != b` in canonical order,
/// separating `w_a` from `τ_p w_b` where they still agree and padding the
/// remaining words to the new shape.
pub fn build_separated_set(
    ts: &TileSystem,
    m: &Shape,
    opts: &WitnessOptions,
) -> Result<SeparatedSet> {
    let mut words = ts
        .letters()
        .map(|a| nonperiodic_all(ts, m, a, opts))
        .collect::<Result<Vec<_>>>()?;
    let mut shape = words
        .iter()
        .fold(Shape::zero(ts.rank()), |acc, w| acc.join(w.shape()));
    for w in &mut words {
        *w = pad_to(ts, w, &shape)?;
    }
    let translates = Translate::nonzero_within(m);
    for a in ts.letters() {
        for b in ts.letters() {
            if a == b {
                continue;
            }
            for p in &translates {
                if !words[a.0].agrees_with_translate(&words[b.0], p)? {
                    continue;
                }
                let (wb, wa) = separate_translates(ts, p, &words[b.0], &words[a.0], opts)?;
                shape = wa.shape().clone();
                words[a.0] = wa;
                words[b.0] = wb;
                for w in &mut words {
                    *w = pad_to(ts, w, &shape)?;
                }
            }
        }
    }
    Ok(SeparatedSet { shape, words })
}

/// All decorated words of shape `m + σ(S)` whose restriction to
/// `[m, m + σ(S)]` lies in `S`. Under unique products these are exactly the
/// products `x w_{t(x)}` over decorated `x` of shape `m`.
pub fn q_support(
    ts: &TileSystem,
    dmap: &DecorationMap,
    m: &Shape,
    set: &SeparatedSet,
) -> Result<Vec<DecoratedWord>> {
    let mut out = Vec::new();
    for d in dmap.decorations() {
        let base = DecoratedWord::of_decoration(dmap, d, ts.rank());
        for (_, x) in list_extensions(ts, &base, m)? {
            out.push(product(ts, &x, set.word(x.terminus()))?);
        }
    }
    out.sort();
    Ok(out)
}

/// The same index set described at a larger shape `m + l'`, `l' >= σ(S)`:
/// decorated words of that shape whose `[m, m + σ(S)]` block lies in `S`.
pub fn q_support_at(
    ts: &TileSystem,
    dmap: &DecorationMap,
    m: &Shape,
    set: &SeparatedSet,
    l_prime: &Shape,
) -> Result<Vec<DecoratedWord>> {
    let extra = l_prime
        .checked_sub(&set.shape)
        .ok_or_else(|| Error::ShapeMismatch {
            expected: set.shape.clone(),
            found: l_prime.clone(),
        })?;
    let mut out = Vec::new();
    for w in q_support(ts, dmap, m, set)? {
        for (_, wz) in list_extensions(ts, &w, &extra)? {
            out.push(wz);
        }
    }
    out.sort();
    Ok(out)
}

/// Every one-step extension in direction `j` of every word in `words`.
pub fn unit_extensions(
    ts: &TileSystem,
    dmap: &DecorationMap,
    words: &[DecoratedWord],
    j: usize,
) -> Result<Vec<DecoratedWord>> {
    let mut out = Vec::new();
    for w in words {
        for &a in ts.successors(j, w.terminus()) {
            let ext = extend_unit(ts, w.word(), j, a)?;
            out.push(DecoratedWord::new(dmap, w.decoration(), ext)?);
        }
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::fixtures;
    use crate::word::validate_named;

    fn s(v: &[usize]) -> Shape {
        Shape::new(v.to_vec())
    }

    #[test]
    fn connect_examples() {
        let gm = fixtures::golden_mean();
        assert_eq!(
            connect(&gm, Letter(0), Letter(0), &s(&[0])).unwrap(),
            Word::single(Letter(0), 1)
        );
        let w = connect(&gm, Letter(1), Letter(1), &s(&[2])).unwrap();
        assert_eq!(w.to_compact(gm.alphabet()), "1,0,1");

        let fs2 = fixtures::fs2();
        let w = connect(&fs2, Letter(0), Letter(3), &s(&[1, 1])).unwrap();
        assert!(s(&[1, 1]).le(w.shape()));
        assert_eq!((w.origin(), w.terminus()), (Letter(0), Letter(3)));

        let id = fixtures::identity2();
        assert_eq!(
            connect(&id, Letter(0), Letter(1), &s(&[0])),
            Err(Error::Unreachable {
                from: Letter(0),
                to: Letter(1)
            })
        );
    }

    #[test]
    fn distinct_pair_examples() {
        let gm = fixtures::golden_mean();
        let (u, v) = distinct_pair(&gm, 2).unwrap();
        assert_eq!(u.to_compact(gm.alphabet()), "0,0");
        assert_eq!(v.to_compact(gm.alphabet()), "0,1");

        let fs2 = fixtures::fs2();
        let (u, v) = distinct_pair(&fs2, 2).unwrap();
        assert_eq!(u.shape(), &s(&[1, 0]));
        assert_eq!(u.origin(), Letter(0));
        assert_eq!(v.origin(), Letter(0));
        assert_ne!(u, v);

        assert_eq!(
            distinct_pair(&fixtures::single_letter(), 3),
            Err(Error::NoDistinctPair { max_degree: 3 })
        );
    }

    #[test]
    fn nonperiodic_all_contract() {
        let opts = WitnessOptions::default();
        for ts in [fixtures::fs2(), fixtures::gm2()] {
            let w = nonperiodic_all(&ts, &s(&[1, 1]), Letter(0), &opts).unwrap();
            assert_eq!(w.origin(), Letter(0));
            for p in Translate::nonzero_within(&s(&[1, 1])) {
                assert!(!w.is_periodic(&p).unwrap(), "{p}");
            }
        }
        let gm = fixtures::golden_mean();
        assert_eq!(
            nonperiodic_all(&gm, &s(&[0]), Letter(1), &opts).unwrap(),
            Word::single(Letter(1), 1)
        );
        assert!(matches!(
            nonperiodic_all(&fixtures::single_letter(), &s(&[1]), Letter(0), &opts),
            Err(Error::MissingWitness { .. })
        ));
    }

    #[test]
    fn separate_translates_contract() {
        let opts = WitnessOptions::default();
        let gm = fixtures::golden_mean();
        let w = validate_named(&gm, s(&[0]), &["0"]).unwrap();
        let p = Translate::new(vec![1]);
        let (a, b) = separate_translates(&gm, &p, &w, &w, &opts).unwrap();
        assert_eq!(a.shape(), b.shape());
        assert_eq!(a.restrict(&s(&[0]), &s(&[0])).unwrap(), w);
        assert!(!b.agrees_with_translate(&a, &p).unwrap());

        let fs2 = fixtures::fs2();
        let w = Word::single(Letter(0), 2);
        for p in Translate::nonzero_within(&s(&[2, 2])) {
            let (a, b) = separate_translates(&fs2, &p, &w, &w, &opts).unwrap();
            assert_eq!(a.origin(), Letter(0));
            assert_eq!(b.origin(), Letter(0));
            assert!(!b.agrees_with_translate(&a, &p).unwrap(), "{p}");
        }
    }

    #[test]
    fn separated_set_contract() {
        let opts = WitnessOptions::default();
        for ts in [fixtures::fs2(), fixtures::gm2()] {
            let set = build_separated_set(&ts, &s(&[1, 1]), &opts).unwrap();
            assert_eq!(check_separated(&ts, &s(&[1, 1]), &set), Ok(()));
        }
        assert!(build_separated_set(&fixtures::single_letter(), &s(&[1]), &opts).is_err());
    }

    #[test]
    fn q_support_at_zero_is_the_set() {
        let opts = WitnessOptions::default();
        let fs2 = fixtures::fs2();
        let d = DecorationMap::identity(fs2.alphabet());
        let set = build_separated_set(&fs2, &s(&[1, 1]), &opts).unwrap();
        let sup = q_support(&fs2, &d, &s(&[0, 0]), &set).unwrap();
        let words: Vec<&Word> = sup.iter().map(|w| w.word()).collect();
        assert_eq!(words, set.words.iter().collect::<Vec<_>>());
    }

    #[test]
    fn q_support_refines_by_unit_extension() {
        let opts = WitnessOptions::default();
        let fs2 = fixtures::fs2();
        let d = DecorationMap::identity(fs2.alphabet());
        let m = s(&[1, 1]);
        let set = build_separated_set(&fs2, &m, &opts).unwrap();
        let sup = q_support(&fs2, &d, &m, &set).unwrap();
        assert_eq!(sup.len(), 16);
        for j in 0..2 {
            let bigger = q_support_at(&fs2, &d, &m, &set, &set.shape.plus_unit(j)).unwrap();
            assert_eq!(bigger, unit_extensions(&fs2, &d, &sup, j).unwrap());
        }
    }
}
