//! Unit-step extension, path-determined words and the product of words.
//!
//! Everything here assumes the system satisfies the local product conditions
//! (commuting matrices whose pairwise and triple products are {0,1}). When it
//! does not, the fill step finds zero or several candidate letters and
//! reports the offending cell instead of guessing.

use crate::error::{Error, Result};
use crate::shape::{BoxPoints, Shape};
use crate::system::{Letter, TileSystem};
use crate::word::{Word, WordLike};

/// The unique word of shape `σ(w) + e_j` that restricts to `w` on `[0, σ(w)]`
/// and ends at `a`.
///
/// The new layer is filled from the far corner backwards in decreasing
/// lexicographic order. Each cell sees its neighbour below (in direction `j`)
/// and its already-filled neighbours above within the layer, and must be
/// forced to a single letter by them.
pub fn extend_unit(ts: &TileSystem, w: &Word, j: usize, a: Letter) -> Result<Word> {
    ts.check_direction(j)?;
    if w.rank() != ts.rank() {
        return Err(Error::RankMismatch {
            expected: ts.rank(),
            found: w.rank(),
        });
    }
    if !ts.allows(j, w.terminus(), a) {
        return Err(Error::ForbiddenTransition {
            direction: j,
            from: w.terminus(),
            to: a,
        });
    }
    let old = w.shape();
    let new = old.plus_unit(j);
    let strides = new.strides();
    let mut cells: Vec<Option<Letter>> = vec![None; new.cell_count()];
    for (pt, &c) in old.points().zip(w.cells()) {
        let idx: usize = pt.iter().zip(&strides).map(|(x, s)| x * s).sum();
        cells[idx] = Some(c);
    }
    let last = cells.len() - 1;
    cells[last] = Some(a);

    let top = new[j];
    let mut lo = vec![0; new.rank()];
    lo[j] = top;
    let layer: Vec<Vec<usize>> = BoxPoints::new(lo, new.components().to_vec()).collect();
    for x in layer.iter().rev().skip(1) {
        let idx: usize = x.iter().zip(&strides).map(|(c, s)| c * s).sum();
        let below = cells[idx - strides[j]].expect("old box is filled");
        let above: Vec<(usize, Letter)> = (0..new.rank())
            .filter(|&k| k != j && x[k] < new[k])
            .map(|k| {
                (
                    k,
                    cells[idx + strides[k]].expect("filled in decreasing order"),
                )
            })
            .collect();
        let mut found = None;
        let mut count = 0;
        for &c in ts.successors(j, below) {
            if above.iter().all(|&(k, b)| ts.allows(k, c, b)) {
                count += 1;
                found = Some(c);
            }
        }
        if count != 1 {
            return Err(Error::FillFailure {
                cell: x.clone(),
                candidates: count,
            });
        }
        cells[idx] = found;
    }
    Ok(Word::from_parts(
        new,
        cells
            .into_iter()
            .map(|c| c.expect("all cells filled"))
            .collect(),
    ))
}

/// The unique word through the staircase `a0 -> a1 -> ... -> ap`, where step
/// `i` moves in direction `j_i`. Its shape is the sum of the unit vectors.
pub fn word_from_path(ts: &TileSystem, a0: Letter, steps: &[(usize, Letter)]) -> Result<Word> {
    let mut prev = a0;
    for (index, &(j, a)) in steps.iter().enumerate() {
        ts.check_direction(j)?;
        if !ts.allows(j, prev, a) {
            return Err(Error::PathStep { index });
        }
        prev = a;
    }
    let mut w = Word::single(a0, ts.rank());
    for &(j, a) in steps {
        w = extend_unit(ts, &w, j, a)?;
    }
    Ok(w)
}

/// The product `uv`: the unique word of shape `σ(u) + σ(v)` restricting to
/// `u` on `[0, σ(u)]` and to `v` on `[σ(u), σ(u) + σ(v)]`. A decoration on
/// `u` carries over.
pub fn product<U: WordLike>(ts: &TileSystem, u: &U, v: &Word) -> Result<U> {
    let uw = u.word();
    if uw.terminus() != v.origin() {
        return Err(Error::EndpointMismatch {
            terminus: uw.terminus(),
            origin: v.origin(),
        });
    }
    let mut w = uw.clone();
    for (j, a) in v.staircase() {
        w = extend_unit(ts, &w, j, a)?;
    }
    let m = uw.shape();
    if w.restrict(m, w.shape())? != *v {
        return Err(Error::NonUniqueProduct);
    }
    Ok(u.with_word(w))
}

/// All words of shape `n` starting at `c`, built one unit layer at a time, in
/// lexicographic order.
pub fn words_from(ts: &TileSystem, c: Letter, n: &Shape) -> Result<Vec<Word>> {
    let mut frontier = vec![Word::single(c, ts.rank())];
    for j in 0..ts.rank() {
        for _ in 0..n[j] {
            let mut next = Vec::new();
            for w in &frontier {
                for &a in ts.successors(j, w.terminus()) {
                    next.push(extend_unit(ts, w, j, a)?);
                }
            }
            frontier = next;
        }
    }
    frontier.sort();
    Ok(frontier)
}

/// Every `w` of shape `n` with `o(w) = t(u)`, paired with the product `uw`.
pub fn list_extensions<U: WordLike>(ts: &TileSystem, u: &U, n: &Shape) -> Result<Vec<(Word, U)>> {
    words_from(ts, u.word().terminus(), n)?
        .into_iter()
        .map(|w| {
            let uw = product(ts, u, &w)?;
            Ok((w, uw))
        })
        .collect()
}

/// Extends `w` to exactly `target` using, at every step, the first letter in
/// declaration order that may follow the current terminus.
pub fn pad_to(ts: &TileSystem, w: &Word, target: &Shape) -> Result<Word> {
    let mut cur = w.clone();
    for j in 0..ts.rank() {
        while cur.shape()[j] < target[j] {
            let t = cur.terminus();
            let &a = ts.successors(j, t).first().ok_or(Error::DeadEnd {
                direction: j,
                from: t,
            })?;
            cur = extend_unit(ts, &cur, j, a)?;
        }
    }
    Ok(cur)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::fixtures;
    use crate::enumerate;
    use crate::system::{Decoration, DecorationMap};
    use crate::word::{parse_compact, validate_named, DecoratedWord};

    fn s(v: &[usize]) -> Shape {
        Shape::new(v.to_vec())
    }

    #[test]
    fn rank_one_extension_is_a_lookup() {
        let gm = fixtures::golden_mean();
        let w = validate_named(&gm, s(&[1]), &["0", "1"]).unwrap();
        let v = extend_unit(&gm, &w, 0, Letter(0)).unwrap();
        assert_eq!(v.to_compact(gm.alphabet()), "0,1,0");
        assert!(matches!(
            extend_unit(&gm, &w, 0, Letter(1)),
            Err(Error::ForbiddenTransition { .. })
        ));
    }

    #[test]
    fn gm2_extension_in_second_direction() {
        let gm2 = fixtures::gm2();
        // shape (1,0): cells (0,0)=01, (1,0)=11
        let w = parse_compact(&gm2, "01;11").unwrap();
        let a = gm2.alphabet().letter("10").unwrap();
        let v = extend_unit(&gm2, &w, 1, a).unwrap();
        assert_eq!(v.shape(), &s(&[1, 1]));
        assert_eq!(v.to_compact(gm2.alphabet()), "01,00;11,10");

        let single = Word::single(gm2.alphabet().letter("01").unwrap(), 2);
        let err = extend_unit(&gm2, &single, 1, gm2.alphabet().letter("01").unwrap());
        assert!(matches!(
            err,
            Err(Error::ForbiddenTransition { direction: 1, .. })
        ));
    }

    #[test]
    fn fill_failure_on_non_unique_system() {
        let jj = fixtures::jj();
        let w = Word::single(Letter(0), 2);
        let w = extend_unit(&jj, &w, 0, Letter(1)).unwrap();
        let err = extend_unit(&jj, &w, 1, Letter(0)).unwrap_err();
        assert_eq!(
            err,
            Error::FillFailure {
                cell: vec![0, 1],
                candidates: 2
            }
        );
    }

    #[test]
    fn path_examples() {
        let fs2 = fixtures::fs2();
        let w = word_from_path(&fs2, Letter(0), &[]).unwrap();
        assert_eq!(w, Word::single(Letter(0), 2));
        let w = word_from_path(&fs2, Letter(0), &[(0, Letter(2)), (1, Letter(3))]).unwrap();
        assert_eq!(w.to_compact(fs2.alphabet()), "00,01;10,11");

        let gm = fixtures::golden_mean();
        let err = word_from_path(&gm, Letter(0), &[(0, Letter(1)), (0, Letter(1))]);
        assert_eq!(err, Err(Error::PathStep { index: 1 }));
    }

    #[test]
    fn product_examples() {
        let gm = fixtures::golden_mean();
        let u = validate_named(&gm, s(&[1]), &["1", "0"]).unwrap();
        let v = validate_named(&gm, s(&[1]), &["0", "1"]).unwrap();
        let w = product(&gm, &u, &v).unwrap();
        assert_eq!(w.to_compact(gm.alphabet()), "1,0,1");
        assert_eq!(product(&gm, &u, &Word::single(Letter(0), 1)).unwrap(), u);
        assert!(matches!(
            product(&gm, &u, &u),
            Err(Error::EndpointMismatch { .. })
        ));
    }

    #[test]
    fn decorated_product_keeps_decoration() {
        let gm = fixtures::golden_mean();
        let d = DecorationMap::identity(gm.alphabet());
        let u = DecoratedWord::new(
            &d,
            Decoration(1),
            validate_named(&gm, s(&[1]), &["1", "0"]).unwrap(),
        )
        .unwrap();
        let v = validate_named(&gm, s(&[1]), &["0", "0"]).unwrap();
        let uv = product(&gm, &u, &v).unwrap();
        assert_eq!(uv.decoration(), Decoration(1));
        assert_eq!(uv.shape(), &s(&[2]));
    }

    #[test]
    fn extension_counts() {
        let gm = fixtures::golden_mean();
        let u = Word::single(Letter(0), 1);
        assert_eq!(
            list_extensions(&gm, &u, &s(&[0])).unwrap(),
            vec![(u.clone(), u.clone())]
        );
        let ext = list_extensions(&gm, &u, &s(&[2])).unwrap();
        let texts: Vec<String> = ext
            .iter()
            .map(|(w, _)| w.to_compact(gm.alphabet()))
            .collect();
        assert_eq!(texts, vec!["0,0,0", "0,0,1", "0,1,0"]);

        let gm2 = fixtures::gm2();
        let ext = list_extensions(&gm2, &Word::single(Letter(0), 2), &s(&[1, 1])).unwrap();
        assert_eq!(ext.len(), 4);
    }

    #[test]
    fn layered_extensions_match_grid_enumeration() {
        for ts in [fixtures::gm2(), fixtures::fs2()] {
            for c in ts.letters() {
                for n in s(&[2, 2]).shapes_within() {
                    let layered = words_from(&ts, c, &n).unwrap();
                    let grid = enumerate::words(&ts, &n, Some(c));
                    assert_eq!(layered, grid);
                }
            }
        }
    }

    #[test]
    fn pad_uses_first_successor() {
        let gm = fixtures::golden_mean();
        let w = Word::single(Letter(1), 1);
        assert_eq!(
            pad_to(&gm, &w, &s(&[3])).unwrap().to_compact(gm.alphabet()),
            "1,0,0,0"
        );
    }
}
