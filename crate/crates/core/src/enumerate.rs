//! Exhaustive enumeration of words by cell-by-cell backtracking.
//!
//! This route never calls the extension machinery in [`crate::completion`];
//! it only consults transition matrices, so it serves as the independent
//! oracle for uniqueness, counting and extension results.

use std::ops::ControlFlow;

use crate::shape::Shape;
use crate::system::{Letter, TileSystem};
use crate::word::Word;

struct Plan {
    // preds[i] = (direction, index of cell i - e_direction)
    preds: Vec<Vec<(usize, usize)>>,
}

impl Plan {
    fn new(shape: &Shape) -> Self {
        let strides = shape.strides();
        let preds = shape
            .points()
            .enumerate()
            .map(|(i, pt)| {
                (0..shape.rank())
                    .filter(|&j| pt[j] > 0)
                    .map(|j| (j, i - strides[j]))
                    .collect()
            })
            .collect();
        Plan { preds }
    }
}

/// Visits every word of `shape` (optionally with a fixed origin) in
/// lexicographic order of its row-major cells. The visitor may stop early.
pub fn for_each_word<F>(
    ts: &TileSystem,
    shape: &Shape,
    origin: Option<Letter>,
    mut visit: F,
) -> ControlFlow<()>
where
    F: FnMut(&[Letter]) -> ControlFlow<()>,
{
    assert_eq!(shape.rank(), ts.rank(), "shape rank must match the system");
    let plan = Plan::new(shape);
    let mut cells = vec![Letter(0); plan.preds.len()];
    let firsts: Vec<Letter> = match origin {
        Some(a) => vec![a],
        None => ts.letters().collect(),
    };
    for a in firsts {
        cells[0] = a;
        fill(ts, &plan, 1, &mut cells, &mut visit)?;
    }
    ControlFlow::Continue(())
}

fn fill<F>(
    ts: &TileSystem,
    plan: &Plan,
    i: usize,
    cells: &mut [Letter],
    visit: &mut F,
) -> ControlFlow<()>
where
    F: FnMut(&[Letter]) -> ControlFlow<()>,
{
    if i == cells.len() {
        return visit(cells);
    }
    let preds = &plan.preds[i];
    let (j0, p0) = preds[0];
    // candidates come from the first predecessor, filtered by the rest
    for &c in ts.successors(j0, cells[p0]) {
        if preds[1..].iter().all(|&(j, p)| ts.allows(j, cells[p], c)) {
            cells[i] = c;
            fill(ts, plan, i + 1, cells, visit)?;
        }
    }
    ControlFlow::Continue(())
}

/// All words of `shape`, lexicographic order.
pub fn words(ts: &TileSystem, shape: &Shape, origin: Option<Letter>) -> Vec<Word> {
    let mut out = Vec::new();
    let _ = for_each_word(ts, shape, origin, |cells| {
        out.push(Word::from_parts(shape.clone(), cells.to_vec()));
        ControlFlow::Continue(())
    });
    out
}

/// Number of words of `shape` ending at each letter.
pub fn count_by_terminus(ts: &TileSystem, shape: &Shape, origin: Option<Letter>) -> Vec<u64> {
    let mut counts = vec![0u64; ts.letter_count()];
    let _ = for_each_word(ts, shape, origin, |cells| {
        counts[cells[cells.len() - 1].0] += 1;
        ControlFlow::Continue(())
    });
    counts
}

/// First word (lexicographic) satisfying `pred`.
pub fn find_word<P>(
    ts: &TileSystem,
    shape: &Shape,
    origin: Option<Letter>,
    mut pred: P,
) -> Option<Word>
where
    P: FnMut(&Word) -> bool,
{
    let mut found = None;
    let _ = for_each_word(ts, shape, origin, |cells| {
        let w = Word::from_parts(shape.clone(), cells.to_vec());
        if pred(&w) {
            found = Some(w);
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    found
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::fixtures;
    use crate::word::violations;

    #[test]
    fn golden_mean_counts_are_fibonacci() {
        let gm = fixtures::golden_mean();
        let n: Vec<usize> = (0..6)
            .map(|k| words(&gm, &Shape::new(vec![k]), None).len())
            .collect();
        assert_eq!(n, vec![2, 3, 5, 8, 13, 21]);
    }

    #[test]
    fn enumeration_matches_naive_filter() {
        // every assignment of letters, filtered by the violation scan
        let gm2 = fixtures::gm2();
        let shape = Shape::new(vec![1, 1]);
        let mut naive = Vec::new();
        for code in 0..4usize.pow(4) {
            let cells: Vec<Letter> = (0..4)
                .rev()
                .map(|i| Letter((code >> (2 * i)) & 3))
                .collect();
            if violations(&gm2, &shape, &cells).is_empty() {
                naive.push(cells);
            }
        }
        let dfs: Vec<Vec<Letter>> = words(&gm2, &shape, None)
            .into_iter()
            .map(|w| w.cells().to_vec())
            .collect();
        assert_eq!(dfs, naive);
        assert_eq!(dfs.len(), 9);
    }

    #[test]
    fn early_exit() {
        let fs2 = fixtures::fs2();
        let w = find_word(&fs2, &Shape::new(vec![1, 1]), Some(Letter(0)), |w| {
            w.terminus() == Letter(3)
        });
        assert_eq!(w.unwrap().terminus(), Letter(3));
    }
}
