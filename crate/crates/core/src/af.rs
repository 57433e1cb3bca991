//! Block dimensions and inclusion data of the AF core.
//!
//! The block of the level-`m` algebra over letter `a` has dimension equal to
//! the number of decorated words of shape `m` ending at `a`. These counts obey
//! `d_0(a) = #δ⁻¹(a)` and `d_{m+e_j} = M_j d_m`, and the inclusion from level
//! `m` to `m + e_j` has multiplicity `M_j(b, a)` from block `a` to block `b`.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::BoolMatrix;
use crate::shape::{graded_cmp, Shape, Translate};
use crate::system::{DecorationMap, TileSystem};
use crate::word::DecoratedWord;

pub type DimVector = Vec<BigUint>;

fn apply(m: &BoolMatrix, d: &[BigUint]) -> DimVector {
    let n = d.len();
    (0..n)
        .map(|b| {
            (0..n)
                .filter(|&a| m.get(b, a))
                .fold(BigUint::zero(), |acc, a| acc + &d[a])
        })
        .collect()
}

fn initial(ts: &TileSystem, dmap: &DecorationMap) -> DimVector {
    dmap.fiber_sizes(ts.letter_count())
        .into_iter()
        .map(BigUint::from)
        .collect()
}

/// Per-terminus count of decorated words of shape `m`.
pub fn dim_vector(ts: &TileSystem, dmap: &DecorationMap, m: &Shape) -> Result<DimVector> {
    let path: Vec<usize> = (0..m.rank())
        .flat_map(|j| std::iter::repeat_n(j, m[j]))
        .collect();
    dim_vector_along(ts, dmap, m.rank(), &path)
}

/// The count vector reached by applying the matrices in the order given by
/// `path` (a list of directions). Any ordering of the same multiset of
/// directions gives the same result on a system with commuting matrices.
pub fn dim_vector_along(
    ts: &TileSystem,
    dmap: &DecorationMap,
    rank: usize,
    path: &[usize],
) -> Result<DimVector> {
    if rank != ts.rank() {
        return Err(Error::RankMismatch {
            expected: ts.rank(),
            found: rank,
        });
    }
    let mut d = initial(ts, dmap);
    for &j in path {
        ts.check_direction(j)?;
        d = apply(ts.matrix(j), &d);
    }
    Ok(d)
}

pub fn total(d: &[BigUint]) -> BigUint {
    d.iter().sum()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BratteliEdge {
    pub from: Shape,
    /// 0-based direction.
    pub direction: usize,
    pub to: Shape,
}

/// The graded diagram on the shape box `[0, upto]`.
#[derive(Clone, Debug)]
pub struct BratteliDiagram {
    pub upto: Shape,
    /// Dimension vectors keyed by shape.
    pub levels: BTreeMap<Shape, DimVector>,
    pub edges: Vec<BratteliEdge>,
    multiplicities: Vec<BoolMatrix>,
}

impl BratteliDiagram {
    /// Multiplicity matrix for an edge in direction `j`: entry `(b, a)` is the
    /// number of times block `a` sits in block `b`.
    pub fn multiplicity(&self, j: usize) -> &BoolMatrix {
        &self.multiplicities[j]
    }

    /// Levels in graded order.
    pub fn ordered_levels(&self) -> Vec<(&Shape, &DimVector)> {
        let mut v: Vec<_> = self.levels.iter().collect();
        v.sort_by(|a, b| graded_cmp(a.0, b.0));
        v
    }

    /// First lattice square `(m, j, k)` with `j < k` where the two composite
    /// inclusions `m -> m+e_j+e_k` have different multiplicity matrices or
    /// yield different dimension vectors.
    pub fn first_noncommuting_square(&self) -> Option<(Shape, usize, usize)> {
        let r = self.upto.rank();
        for m in self.upto.shapes_within() {
            for j in 0..r {
                for k in (j + 1)..r {
                    let top = m.plus_unit(j).plus_unit(k);
                    if !top.le(&self.upto) {
                        continue;
                    }
                    let mj = self.multiplicity(j).to_counts();
                    let mk = self.multiplicity(k).to_counts();
                    let d = &self.levels[&m];
                    let via_j = apply(self.multiplicity(k), &apply(self.multiplicity(j), d));
                    let via_k = apply(self.multiplicity(j), &apply(self.multiplicity(k), d));
                    if mk.mul(&mj) != mj.mul(&mk) || via_j != via_k || via_j != self.levels[&top] {
                        return Some((m, j, k));
                    }
                }
            }
        }
        None
    }

    /// The chain along the diagonal `k (1, ..., 1)`, with the composite
    /// multiplicity `M_r ... M_1` between consecutive levels.
    pub fn diagonal_chain(&self) -> (Vec<(Shape, DimVector)>, Option<crate::matrix::CountMatrix>) {
        let r = self.upto.rank();
        let steps = self.upto.components().iter().copied().min().unwrap_or(0);
        let chain = (0..=steps)
            .map(|k| {
                let s = Shape::uniform(r, k);
                let d = self.levels[&s].clone();
                (s, d)
            })
            .collect();
        let composite = self
            .multiplicities
            .iter()
            .map(BoolMatrix::to_counts)
            .reduce(|acc, m| m.mul(&acc));
        (chain, composite)
    }
}

/// Builds the diagram on `[0, upto]`.
pub fn bratteli(ts: &TileSystem, dmap: &DecorationMap, upto: &Shape) -> Result<BratteliDiagram> {
    if upto.rank() != ts.rank() {
        return Err(Error::RankMismatch {
            expected: ts.rank(),
            found: upto.rank(),
        });
    }
    let mut levels: BTreeMap<Shape, DimVector> = BTreeMap::new();
    let mut edges = Vec::new();
    // graded order guarantees some predecessor is already present
    for m in upto.shapes_within() {
        let d = match (0..ts.rank()).find(|&j| m[j] > 0) {
            None => initial(ts, dmap),
            Some(j) => {
                let mut prev = m.components().to_vec();
                prev[j] -= 1;
                apply(ts.matrix(j), &levels[&Shape::new(prev)])
            }
        };
        levels.insert(m.clone(), d);
        for j in 0..ts.rank() {
            let to = m.plus_unit(j);
            if to.le(upto) {
                edges.push(BratteliEdge {
                    from: m.clone(),
                    direction: j,
                    to,
                });
            }
        }
    }
    Ok(BratteliDiagram {
        upto: upto.clone(),
        levels,
        edges,
        multiplicities: ts.matrices().to_vec(),
    })
}

/// Index `(u, v)` of a generator: two decorated words with a common terminus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorIndex {
    u: DecoratedWord,
    v: DecoratedWord,
}

impl GeneratorIndex {
    pub fn new(u: DecoratedWord, v: DecoratedWord) -> Result<Self> {
        if u.terminus() != v.terminus() {
            return Err(Error::TerminusMismatch(u.terminus(), v.terminus()));
        }
        Ok(GeneratorIndex { u, v })
    }

    pub fn u(&self) -> &DecoratedWord {
        &self.u
    }

    pub fn v(&self) -> &DecoratedWord {
        &self.v
    }

    /// `σ(u) - σ(v)`.
    pub fn grading(&self) -> Translate {
        Translate::new(
            self.u
                .shape()
                .components()
                .iter()
                .zip(self.v.shape().components())
                .map(|(&a, &b)| a as i64 - b as i64)
                .collect(),
        )
    }
}

/// Indices grouped by grading. The zero class is the part fixed by the
/// gauge action and kept by the conditional expectation.
#[derive(Clone, Debug, Default)]
pub struct GradingPartition {
    pub classes: BTreeMap<Translate, Vec<GeneratorIndex>>,
}

impl GradingPartition {
    pub fn zero_class(&self) -> &[GeneratorIndex] {
        self.classes
            .iter()
            .find(|(g, _)| g.is_zero())
            .map(|(_, v)| v.as_slice())
            .unwrap_or(&[])
    }

    pub fn len(&self) -> usize {
        self.classes.values().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

pub fn grading_filter(pairs: &[GeneratorIndex]) -> GradingPartition {
    let mut classes: BTreeMap<Translate, Vec<GeneratorIndex>> = BTreeMap::new();
    for p in pairs {
        classes.entry(p.grading()).or_default().push(p.clone());
    }
    GradingPartition { classes }
}

/// Convenience: `BigUint` vector to `u64`, for tests on small counts.
pub fn to_u64(d: &[BigUint]) -> Option<Vec<u64>> {
    d.iter().map(|x| u64::try_from(x).ok()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::fixtures;
    use crate::enumerate;
    use crate::system::{Decoration, Letter};
    use crate::word::Word;

    fn s(v: &[usize]) -> Shape {
        Shape::new(v.to_vec())
    }

    fn dims(ts: &TileSystem, m: &[usize]) -> Vec<u64> {
        let d = DecorationMap::identity(ts.alphabet());
        to_u64(&dim_vector(ts, &d, &s(m)).unwrap()).unwrap()
    }

    #[test]
    fn dim_vector_examples() {
        let gm2 = fixtures::gm2();
        assert_eq!(dims(&gm2, &[0, 0]), vec![1, 1, 1, 1]);
        assert_eq!(dims(&gm2, &[1, 1]), vec![4, 2, 2, 1]);
        assert_eq!(dims(&fixtures::fs2(), &[1, 1]), vec![4, 4, 4, 4]);
    }

    #[test]
    fn dim_vector_matches_enumeration_small() {
        let gm2 = fixtures::gm2();
        for m in s(&[2, 2]).shapes_within() {
            assert_eq!(
                dims(&gm2, m.components()),
                enumerate::count_by_terminus(&gm2, &m, None)
            );
        }
    }

    #[test]
    fn counts_do_not_overflow() {
        let full = fixtures::full_shift(2);
        let d = DecorationMap::identity(full.alphabet());
        let v = dim_vector(&full, &d, &s(&[100])).unwrap();
        assert_eq!(total(&v), BigUint::from(2u8).pow(101));
    }

    #[test]
    fn golden_mean_chain() {
        let gm = fixtures::golden_mean();
        let d = DecorationMap::identity(gm.alphabet());
        let b = bratteli(&gm, &d, &s(&[2])).unwrap();
        let levels: Vec<Vec<u64>> = b
            .ordered_levels()
            .iter()
            .map(|(_, d)| to_u64(d).unwrap())
            .collect();
        assert_eq!(levels, vec![vec![1, 1], vec![2, 1], vec![3, 2]]);
        assert_eq!(b.edges.len(), 2);
        assert_eq!(b.multiplicity(0), gm.matrix(0));
    }

    #[test]
    fn single_level_diagram() {
        let gm = fixtures::golden_mean();
        let d = DecorationMap::identity(gm.alphabet());
        let b = bratteli(&gm, &d, &s(&[0])).unwrap();
        assert_eq!(b.levels.len(), 1);
        assert!(b.edges.is_empty());
    }

    #[test]
    fn gm2_square_commutes() {
        let gm2 = fixtures::gm2();
        let d = DecorationMap::identity(gm2.alphabet());
        let b = bratteli(&gm2, &d, &s(&[1, 1])).unwrap();
        assert_eq!(b.first_noncommuting_square(), None);
        let (chain, composite) = b.diagonal_chain();
        assert_eq!(chain.len(), 2);
        assert_eq!(composite.unwrap().size(), 4);
    }

    #[test]
    fn grading_examples() {
        let fs2 = fixtures::fs2();
        let d = DecorationMap::identity(fs2.alphabet());
        let base = DecoratedWord::of_decoration(&d, Decoration(0), 2);
        let same = GeneratorIndex::new(base.clone(), base.clone()).unwrap();
        assert!(same.grading().is_zero());

        let u = crate::completion::pad_to(&fs2, base.word(), &s(&[2, 0])).unwrap();
        let v = crate::completion::pad_to(&fs2, base.word(), &s(&[0, 1])).unwrap();
        // both padded words end at letter 00 or 01; make termini equal first
        let u = DecoratedWord::new(&d, Decoration(0), u).unwrap();
        let v = DecoratedWord::new(&d, Decoration(0), v).unwrap();
        assert_eq!(u.terminus(), v.terminus());
        let g = GeneratorIndex::new(u, v).unwrap();
        assert_eq!(g.grading(), Translate::new(vec![2, -1]));

        let part = grading_filter(&[same.clone(), g.clone(), same]);
        assert_eq!(part.len(), 3);
        assert_eq!(part.zero_class().len(), 2);

        let other = DecoratedWord::of_decoration(&d, Decoration(1), 2);
        assert!(GeneratorIndex::new(
            other,
            DecoratedWord::new(&d, Decoration(0), Word::single(Letter(0), 2)).unwrap()
        )
        .is_err());
    }
}
