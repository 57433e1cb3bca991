//! Words on boxes `[0, m]`, decorated words, restriction and periodicity.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::shape::{Shape, Translate};
use crate::system::{Alphabet, Decoration, DecorationMap, Letter, TileSystem};

/// A transition constraint that fails: the step from `cell` to `cell + e_direction`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub cell: Vec<usize>,
    /// 0-based direction index.
    pub direction: usize,
}

/// A letter assignment on `[0, shape]`, stored row-major (last coordinate fastest).
///
/// Values of this type satisfy every unit-step transition of the system they
/// were built against.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    shape: Shape,
    cells: Vec<Letter>,
}

impl Word {
    /// The shape-0 word holding a single letter.
    pub fn single(letter: Letter, rank: usize) -> Self {
        Word {
            shape: Shape::zero(rank),
            cells: vec![letter],
        }
    }

    pub(crate) fn from_parts(shape: Shape, cells: Vec<Letter>) -> Self {
        debug_assert_eq!(shape.cell_count(), cells.len());
        Word { shape, cells }
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn rank(&self) -> usize {
        self.shape.rank()
    }

    pub fn cells(&self) -> &[Letter] {
        &self.cells
    }

    pub fn origin(&self) -> Letter {
        self.cells[0]
    }

    pub fn terminus(&self) -> Letter {
        *self.cells.last().expect("words are nonempty")
    }

    pub fn index_of(&self, cell: &[usize]) -> usize {
        cell.iter()
            .zip(self.shape.strides())
            .map(|(c, s)| c * s)
            .sum()
    }

    pub fn at(&self, cell: &[usize]) -> Letter {
        self.cells[self.index_of(cell)]
    }

    /// Sub-box `[k, l]`, reindexed to start at 0.
    pub fn restrict(&self, k: &Shape, l: &Shape) -> Result<Word> {
        if k.rank() != self.rank() || l.rank() != self.rank() {
            return Err(Error::RankMismatch {
                expected: self.rank(),
                found: if k.rank() != self.rank() {
                    k.rank()
                } else {
                    l.rank()
                },
            });
        }
        if !k.le(l) || !l.le(&self.shape) {
            return Err(Error::OutOfBounds {
                lo: k.clone(),
                hi: l.clone(),
                shape: self.shape.clone(),
            });
        }
        let sub = l.checked_sub(k).expect("k <= l checked");
        let strides = self.shape.strides();
        let cells = sub
            .points()
            .map(|pt| {
                let idx: usize = pt
                    .iter()
                    .zip(k.components())
                    .zip(&strides)
                    .map(|((p, k), s)| (p + k) * s)
                    .sum();
                self.cells[idx]
            })
            .collect();
        Ok(Word { shape: sub, cells })
    }

    /// Whether `τ_p other` agrees with `self` on `[0, l] ∩ [p, p + l]`, where
    /// both words have shape `l`. An empty overlap agrees vacuously.
    pub fn agrees_with_translate(&self, other: &Word, p: &Translate) -> Result<bool> {
        if other.shape != self.shape {
            return Err(Error::ShapeMismatch {
                expected: self.shape.clone(),
                found: other.shape.clone(),
            });
        }
        if p.rank() != self.rank() {
            return Err(Error::RankMismatch {
                expected: self.rank(),
                found: p.rank(),
            });
        }
        Ok(self.first_translate_disagreement(other, p).is_none())
    }

    /// First cell `x` (lexicographic) of the overlap where `self(x) != other(x - p)`.
    pub fn first_translate_disagreement(&self, other: &Word, p: &Translate) -> Option<Vec<usize>> {
        let (lo, hi) = overlap(&self.shape, p)?;
        let strides = self.shape.strides();
        let shift: Vec<i64> = p.components().to_vec();
        crate::shape::BoxPoints::new(lo, hi).find(|x| {
            let here: usize = x.iter().zip(&strides).map(|(c, s)| c * s).sum();
            let there: usize = x
                .iter()
                .zip(&shift)
                .zip(&strides)
                .map(|((c, d), s)| (*c as i64 - d) as usize * s)
                .sum();
            self.cells[here] != other.cells[there]
        })
    }

    /// Whether the word agrees with its `p`-translate on their common box.
    pub fn is_periodic(&self, p: &Translate) -> Result<bool> {
        if p.is_zero() {
            return Err(Error::ZeroTranslate);
        }
        self.agrees_with_translate(self, p)
    }

    /// Monotone staircase through the word: direction 1 to its end, then
    /// direction 2, and so on. Steps are `(direction, letter reached)`.
    pub fn staircase(&self) -> Vec<(usize, Letter)> {
        let mut cell = vec![0; self.rank()];
        let mut steps = Vec::with_capacity(self.shape.total());
        for j in 0..self.rank() {
            for _ in 0..self.shape[j] {
                cell[j] += 1;
                steps.push((j, self.at(&cell)));
            }
        }
        steps
    }

    /// Compact text form: letters separated by `,` along the last coordinate,
    /// `;` along the one before, then `|` and `/`.
    pub fn to_compact(&self, alphabet: &Alphabet) -> String {
        let rank = self.rank();
        let mut out = String::new();
        let pts: Vec<Vec<usize>> = self.shape.points().collect();
        for (i, pt) in pts.iter().enumerate() {
            if i > 0 {
                // deepest coordinate that rolled over decides the separator
                let prev = &pts[i - 1];
                let changed = (0..rank).find(|&j| pt[j] != prev[j]).unwrap_or(rank - 1);
                out.push(separator(rank - 1 - changed));
            }
            out.push_str(alphabet.name(self.cells[i]));
        }
        out
    }
}

const SEPARATORS: [char; 4] = [',', ';', '|', '/'];

fn separator(level: usize) -> char {
    SEPARATORS[level.min(SEPARATORS.len() - 1)]
}

/// Parses the compact text form produced by [`Word::to_compact`] for a system
/// of rank at most 4, validating it against the system.
pub fn parse_compact(ts: &TileSystem, text: &str) -> Result<Word> {
    let rank = ts.rank();
    if rank > SEPARATORS.len() {
        return Err(Error::RankMismatch {
            expected: SEPARATORS.len(),
            found: rank,
        });
    }
    let mut extents = vec![None::<usize>; rank];
    let mut names = Vec::new();
    parse_level(text.trim(), rank, 0, &mut extents, &mut names)?;
    let shape = Shape::new(extents.iter().map(|e| e.unwrap_or(0)).collect());
    let cells = names
        .iter()
        .map(|n| ts.alphabet().letter(n.trim()))
        .collect::<Result<Vec<_>>>()?;
    validate_word(ts, shape, cells)
}

fn parse_level(
    text: &str,
    rank: usize,
    coord: usize,
    extents: &mut [Option<usize>],
    names: &mut Vec<String>,
) -> Result<()> {
    if coord == rank {
        names.push(text.to_string());
        return Ok(());
    }
    let parts: Vec<&str> = text.split(separator(rank - 1 - coord)).collect();
    let extent = parts.len() - 1;
    match extents[coord] {
        None => extents[coord] = Some(extent),
        Some(e) if e != extent => {
            return Err(Error::GridMismatch {
                shape: Shape::zero(rank),
                expected: e + 1,
                found: extent + 1,
            })
        }
        Some(_) => {}
    }
    for part in parts {
        parse_level(part, rank, coord + 1, extents, names)?;
    }
    Ok(())
}

/// The region `[0, l] ∩ [p, p + l]` as an inclusive box, if nonempty.
pub fn overlap(l: &Shape, p: &Translate) -> Option<(Vec<usize>, Vec<usize>)> {
    let mut lo = Vec::with_capacity(l.rank());
    let mut hi = Vec::with_capacity(l.rank());
    for (&lj, &pj) in l.components().iter().zip(p.components()) {
        let a = pj.max(0);
        let b = (lj as i64).min(pj + lj as i64);
        if a > b {
            return None;
        }
        lo.push(a as usize);
        hi.push(b as usize);
    }
    Some((lo, hi))
}

/// Every transition constraint the grid breaks.
pub fn violations(ts: &TileSystem, shape: &Shape, cells: &[Letter]) -> Vec<Violation> {
    let strides = shape.strides();
    let mut out = Vec::new();
    for pt in shape.points() {
        let here: usize = pt.iter().zip(&strides).map(|(c, s)| c * s).sum();
        for j in 0..shape.rank() {
            if pt[j] < shape[j] && !ts.allows(j, cells[here], cells[here + strides[j]]) {
                out.push(Violation {
                    cell: pt.clone(),
                    direction: j,
                });
            }
        }
    }
    out
}

/// Checks a raw grid against the system's transitions.
pub fn validate_word(ts: &TileSystem, shape: Shape, cells: Vec<Letter>) -> Result<Word> {
    if shape.rank() != ts.rank() {
        return Err(Error::RankMismatch {
            expected: ts.rank(),
            found: shape.rank(),
        });
    }
    if shape.cell_count() != cells.len() {
        return Err(Error::GridMismatch {
            expected: shape.cell_count(),
            found: cells.len(),
            shape,
        });
    }
    if let Some(bad) = cells.iter().find(|a| a.0 >= ts.letter_count()) {
        return Err(Error::UnknownLetter(bad.to_string()));
    }
    let bad = violations(ts, &shape, &cells);
    if !bad.is_empty() {
        return Err(Error::InvalidWord(bad));
    }
    Ok(Word { shape, cells })
}

/// Like [`validate_word`] with letters given by name.
pub fn validate_named(ts: &TileSystem, shape: Shape, names: &[&str]) -> Result<Word> {
    let cells = names
        .iter()
        .map(|n| ts.alphabet().letter(n))
        .collect::<Result<Vec<_>>>()?;
    validate_word(ts, shape, cells)
}

/// A word together with a decoration over its origin.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DecoratedWord {
    decoration: Decoration,
    word: Word,
}

/// Result of restricting a decorated word: boxes based at 0 keep the decoration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Restricted {
    Decorated(DecoratedWord),
    Plain(Word),
}

impl DecoratedWord {
    pub fn new(dmap: &DecorationMap, decoration: Decoration, word: Word) -> Result<Self> {
        let base = dmap.delta(decoration);
        if base != word.origin() {
            return Err(Error::EndpointMismatch {
                terminus: base,
                origin: word.origin(),
            });
        }
        Ok(DecoratedWord { decoration, word })
    }

    /// The decorated word of shape 0 identified with `d`.
    pub fn of_decoration(dmap: &DecorationMap, d: Decoration, rank: usize) -> Self {
        DecoratedWord {
            decoration: d,
            word: Word::single(dmap.delta(d), rank),
        }
    }

    pub fn decoration(&self) -> Decoration {
        self.decoration
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn shape(&self) -> &Shape {
        self.word.shape()
    }

    pub fn terminus(&self) -> Letter {
        self.word.terminus()
    }

    pub fn restrict(&self, k: &Shape, l: &Shape) -> Result<Restricted> {
        let w = self.word.restrict(k, l)?;
        Ok(if k.is_zero() {
            Restricted::Decorated(DecoratedWord {
                decoration: self.decoration,
                word: w,
            })
        } else {
            Restricted::Plain(w)
        })
    }
}

/// Plain and decorated words, as far as products and extensions care.
pub trait WordLike: Clone {
    fn word(&self) -> &Word;

    /// Same decoration (if any) on a word with the same origin.
    fn with_word(&self, word: Word) -> Self;
}

impl WordLike for Word {
    fn word(&self) -> &Word {
        self
    }

    fn with_word(&self, word: Word) -> Self {
        word
    }
}

impl WordLike for DecoratedWord {
    fn word(&self) -> &Word {
        &self.word
    }

    fn with_word(&self, word: Word) -> Self {
        debug_assert_eq!(word.origin(), self.word.origin());
        DecoratedWord {
            decoration: self.decoration,
            word,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::fixtures;

    fn s(v: &[usize]) -> Shape {
        Shape::new(v.to_vec())
    }

    #[test]
    fn validate_golden_mean() {
        let gm = fixtures::golden_mean();
        let w = validate_named(&gm, s(&[2]), &["0", "1", "0"]).unwrap();
        assert_eq!(w.shape(), &s(&[2]));
        let err = validate_named(&gm, s(&[2]), &["0", "1", "1"]).unwrap_err();
        assert_eq!(
            err,
            Error::InvalidWord(vec![Violation {
                cell: vec![1],
                direction: 0
            }])
        );
        assert!(validate_named(&gm, s(&[0]), &["1"]).is_ok());
    }

    #[test]
    fn validate_reports_grid_and_letter_errors() {
        let gm = fixtures::golden_mean();
        assert!(matches!(
            validate_named(&gm, s(&[2]), &["0", "1"]),
            Err(Error::GridMismatch { .. })
        ));
        assert!(matches!(
            validate_named(&gm, s(&[1]), &["0", "x"]),
            Err(Error::UnknownLetter(_))
        ));
    }

    #[test]
    fn restrict_examples() {
        let gm = fixtures::golden_mean();
        let w = validate_named(&gm, s(&[2]), &["0", "1", "0"]).unwrap();
        assert_eq!(w.restrict(&s(&[0]), &s(&[2])).unwrap(), w);
        let sub = w.restrict(&s(&[1]), &s(&[2])).unwrap();
        assert_eq!(sub.to_compact(gm.alphabet()), "1,0");
        assert!(matches!(
            w.restrict(&s(&[1]), &s(&[3])),
            Err(Error::OutOfBounds { .. })
        ));
        assert!(w.restrict(&s(&[2]), &s(&[1])).is_err());
    }

    #[test]
    fn restrict_decorated_drops_decoration_off_origin() {
        let fs2 = fixtures::fs2();
        let d = DecorationMap::identity(fs2.alphabet());
        let w =
            crate::completion::word_from_path(&fs2, Letter(0), &[(0, Letter(2)), (1, Letter(3))])
                .unwrap();
        let dw = DecoratedWord::new(&d, Decoration(0), w).unwrap();
        assert!(matches!(
            dw.restrict(&s(&[1, 0]), &s(&[1, 1])).unwrap(),
            Restricted::Plain(_)
        ));
        assert!(matches!(
            dw.restrict(&s(&[0, 0]), &s(&[1, 0])).unwrap(),
            Restricted::Decorated(_)
        ));
        assert!(DecoratedWord::new(&d, Decoration(1), dw.word().clone()).is_err());
    }

    #[test]
    fn periodicity_examples() {
        let gm = fixtures::golden_mean();
        let w = validate_named(&gm, s(&[2]), &["0", "1", "0"]).unwrap();
        assert!(!w.is_periodic(&Translate::new(vec![1])).unwrap());
        assert!(w.is_periodic(&Translate::new(vec![2])).unwrap());
        // overlap empty
        assert!(w.is_periodic(&Translate::new(vec![3])).unwrap());
        assert_eq!(
            w.is_periodic(&Translate::new(vec![0])),
            Err(Error::ZeroTranslate)
        );

        let fs2 = fixtures::fs2();
        let c = validate_word(&fs2, s(&[2, 0]), vec![Letter(1); 3]).unwrap();
        assert!(c.is_periodic(&Translate::new(vec![1, 0])).unwrap());
        assert!(c.is_periodic(&Translate::new(vec![3, 1])).unwrap());
    }

    #[test]
    fn compact_roundtrip_rank2() {
        let gm2 = fixtures::gm2();
        let w = parse_compact(&gm2, "01,00;11,10").unwrap();
        assert_eq!(w.shape(), &s(&[1, 1]));
        assert_eq!(w.at(&[1, 0]).0, 3);
        assert_eq!(w.to_compact(gm2.alphabet()), "01,00;11,10");
        assert!(parse_compact(&gm2, "01,00;11").is_err());
    }

    #[test]
    fn staircase_walks_direction_one_first() {
        let fs2 = fixtures::fs2();
        let w = parse_compact(&fs2, "00,01;10,11").unwrap();
        assert_eq!(w.staircase(), vec![(0, Letter(2)), (1, Letter(3))]);
    }
}
