//! Constructors: rank-1 systems, tensor products, redecoration by shape, the
//! fixture corpus and random generators.

use crate::completion;
use crate::error::{Error, Result};
use crate::matrix::BoolMatrix;
use crate::shape::Shape;
use crate::system::{Alphabet, DecorationMap, Letter, TileSystem};
use crate::word::DecoratedWord;

/// The rank-1 system whose single matrix is `m` (`m(b, a) = 1` allows `a -> b`).
pub fn from_rank1(alphabet: Alphabet, m: BoolMatrix) -> Result<TileSystem> {
    TileSystem::new(alphabet, vec![m])
}

/// Tensor product of rank-1 systems: the alphabet is the cartesian product in
/// factor order, and direction `j` acts by factor `j`'s matrix in slot `j` and
/// identities elsewhere.
///
/// Product letters are named by concatenation when every factor letter name
/// is a single character, and joined with `.` otherwise.
pub fn tensor(systems: &[TileSystem]) -> Result<TileSystem> {
    if systems.is_empty() {
        return Err(Error::ZeroRank);
    }
    if let Some(bad) = systems.iter().find(|s| s.rank() != 1) {
        return Err(Error::RankMismatch {
            expected: 1,
            found: bad.rank(),
        });
    }
    let single_char = systems
        .iter()
        .all(|s| s.alphabet().names().iter().all(|n| n.chars().count() == 1));
    let sep = if single_char { "" } else { "." };

    let mut names = vec![String::new()];
    for s in systems {
        names = names
            .iter()
            .flat_map(|prefix| {
                s.alphabet().names().iter().map(move |n| {
                    if prefix.is_empty() {
                        n.clone()
                    } else {
                        format!("{prefix}{sep}{n}")
                    }
                })
            })
            .collect();
    }

    let matrices = (0..systems.len())
        .map(|j| {
            systems
                .iter()
                .enumerate()
                .fold(BoolMatrix::identity(1), |acc, (i, s)| {
                    let factor = if i == j {
                        s.matrix(0).clone()
                    } else {
                        BoolMatrix::identity(s.letter_count())
                    };
                    acc.kronecker(&factor)
                })
        })
        .collect();
    TileSystem::new(Alphabet::new(names)?, matrices)
}

/// The decoration set of decorated words `(d, w)` with `σ(w) = shapes[d]`,
/// decorated over their termini.
#[derive(Clone, Debug)]
pub struct Redecoration {
    pub map: DecorationMap,
    /// `elements[i]` is the decorated word behind decoration `i` of `map`.
    pub elements: Vec<DecoratedWord>,
}

/// Replaces each decoration `d` by all decorated words starting at `d` of
/// shape `shapes[d]`; the new decoration map sends each to its terminus.
/// New names are `"<d>:<word>"` with the word in compact form.
pub fn redecorate_by_shape(
    ts: &TileSystem,
    dmap: &DecorationMap,
    shapes: &[Shape],
) -> Result<Redecoration> {
    if shapes.len() != dmap.len() {
        return Err(Error::RankMismatch {
            expected: dmap.len(),
            found: shapes.len(),
        });
    }
    let mut names = Vec::new();
    let mut delta = Vec::new();
    let mut elements = Vec::new();
    for d in dmap.decorations() {
        let shape = &shapes[d.0];
        if shape.rank() != ts.rank() {
            return Err(Error::RankMismatch {
                expected: ts.rank(),
                found: shape.rank(),
            });
        }
        for w in completion::words_from(ts, dmap.delta(d), shape)? {
            names.push(format!("{}:{}", dmap.name(d), w.to_compact(ts.alphabet())));
            delta.push(w.terminus());
            elements.push(DecoratedWord::new(dmap, d, w)?);
        }
    }
    let map = DecorationMap::new(names, delta, ts.alphabet())?;
    Ok(Redecoration { map, elements })
}

/// Named systems used throughout the tests, examples and benchmarks.
pub mod fixtures {
    use super::*;

    /// Golden mean shift: any step except `1 -> 1`.
    pub fn golden_mean() -> TileSystem {
        let m = BoolMatrix::from_bits(&[&[1, 1], &[1, 0]]).unwrap();
        from_rank1(Alphabet::numbered(2).unwrap(), m).unwrap()
    }

    pub fn full_shift(n: usize) -> TileSystem {
        from_rank1(Alphabet::numbered(n).unwrap(), BoolMatrix::ones(n)).unwrap()
    }

    /// `golden_mean ⊗ golden_mean`, letters `00, 01, 10, 11`.
    pub fn gm2() -> TileSystem {
        tensor(&[golden_mean(), golden_mean()]).unwrap()
    }

    /// `full_shift(2) ⊗ full_shift(2)`, letters `00, 01, 10, 11`.
    pub fn fs2() -> TileSystem {
        tensor(&[full_shift(2), full_shift(2)]).unwrap()
    }

    /// Two letters, both matrices all-ones: products have entries 2.
    pub fn jj() -> TileSystem {
        TileSystem::new(
            Alphabet::numbered(2).unwrap(),
            vec![BoolMatrix::ones(2), BoolMatrix::ones(2)],
        )
        .unwrap()
    }

    /// Rank 1, identity on two letters: transition graph is disconnected.
    pub fn identity2() -> TileSystem {
        from_rank1(Alphabet::numbered(2).unwrap(), BoolMatrix::identity(2)).unwrap()
    }

    /// One letter, `M = [1]`: every word is constant.
    pub fn single_letter() -> TileSystem {
        from_rank1(Alphabet::new(["a"]).unwrap(), BoolMatrix::ones(1)).unwrap()
    }

    /// `golden_mean ⊗ full_shift(2)`.
    pub fn gm_fs() -> TileSystem {
        tensor(&[golden_mean(), full_shift(2)]).unwrap()
    }

    /// `full_shift(2) ⊗ full_shift(3)`.
    pub fn fs2x3() -> TileSystem {
        tensor(&[full_shift(2), full_shift(3)]).unwrap()
    }

    /// A rank-2 system whose second direction is a 2-cycle: every word is
    /// `2 e_2`-periodic.
    pub fn cycle_fs() -> TileSystem {
        let cycle = from_rank1(
            Alphabet::numbered(2).unwrap(),
            BoolMatrix::from_bits(&[&[0, 1], &[1, 0]]).unwrap(),
        )
        .unwrap();
        tensor(&[full_shift(2), cycle]).unwrap()
    }

    /// Every fixture by name, in a fixed order.
    pub fn corpus() -> Vec<(&'static str, TileSystem)> {
        vec![
            ("gm", golden_mean()),
            ("full2", full_shift(2)),
            ("gm2", gm2()),
            ("fs2", fs2()),
            ("gm_fs", gm_fs()),
            ("fs2x3", fs2x3()),
            ("cycle_fs", cycle_fs()),
            ("jj", jj()),
            ("identity2", identity2()),
            ("single", single_letter()),
        ]
    }
}

/// Random systems for property tests.
pub mod random {
    use rand::seq::{IndexedRandom, SliceRandom};
    use rand::Rng;

    use super::*;

    /// Square {0,1}-matrix with each entry set with probability `density`.
    pub fn matrix<R: Rng + ?Sized>(rng: &mut R, n: usize, density: f64) -> BoolMatrix {
        let mut m = BoolMatrix::zeros(n);
        for b in 0..n {
            for a in 0..n {
                m.set(b, a, rng.random_bool(density));
            }
        }
        m
    }

    /// A rank-`rank` system on `letters` letters with independent random matrices.
    pub fn system<R: Rng + ?Sized>(
        rng: &mut R,
        letters: usize,
        rank: usize,
        density: f64,
    ) -> TileSystem {
        let alphabet = Alphabet::numbered(letters).unwrap();
        let ms = (0..rank).map(|_| matrix(rng, letters, density)).collect();
        TileSystem::new(alphabet, ms).unwrap()
    }

    /// A rank-2 system that is likely to have unique products: a tensor of
    /// random rank-1 factors, a pair of commuting permutation powers, or one
    /// of these with a single entry flipped.
    pub fn structured_pair<R: Rng + ?Sized>(rng: &mut R, max_letters: usize) -> TileSystem {
        match rng.random_range(0..4) {
            0 => {
                let n1 = rng.random_range(1..=2);
                let n2 = rng.random_range(1..=(max_letters / n1).clamp(1, 2));
                let f1 = from_rank1(Alphabet::numbered(n1).unwrap(), matrix(rng, n1, 0.6)).unwrap();
                let f2 = from_rank1(Alphabet::numbered(n2).unwrap(), matrix(rng, n2, 0.6)).unwrap();
                tensor(&[f1, f2]).unwrap()
            }
            1 => {
                let n = rng.random_range(1..=max_letters);
                let mut perm: Vec<usize> = (0..n).collect();
                perm.shuffle(rng);
                let mut p = BoolMatrix::zeros(n);
                for (a, &b) in perm.iter().enumerate() {
                    p.set(b, a, true);
                }
                let k = rng.random_range(0..=n);
                let mut q = BoolMatrix::identity(n);
                for _ in 0..k {
                    q = compose(&p, &q);
                }
                TileSystem::new(Alphabet::numbered(n).unwrap(), vec![p, q]).unwrap()
            }
            _ => {
                let base = structured_pair(rng, max_letters);
                let n = base.letter_count();
                let mut ms = base.matrices().to_vec();
                let j = rng.random_range(0..2);
                let (b, a) = (rng.random_range(0..n), rng.random_range(0..n));
                let cur = ms[j].get(b, a);
                ms[j].set(b, a, !cur);
                TileSystem::new(base.alphabet().clone(), ms).unwrap()
            }
        }
    }

    fn compose(x: &BoolMatrix, y: &BoolMatrix) -> BoolMatrix {
        let n = x.size();
        let mut out = BoolMatrix::zeros(n);
        for b in 0..n {
            for a in 0..n {
                out.set(b, a, (0..n).any(|c| x.get(b, c) && y.get(c, a)));
            }
        }
        out
    }

    /// A uniformly random walk to a word of shape `shape` from `origin`, or
    /// `None` if a dead end is reached.
    pub fn word<R: Rng + ?Sized>(
        rng: &mut R,
        ts: &TileSystem,
        origin: Letter,
        shape: &Shape,
    ) -> Option<crate::word::Word> {
        let mut w = crate::word::Word::single(origin, ts.rank());
        for j in 0..ts.rank() {
            for _ in 0..shape[j] {
                let &a = ts.successors(j, w.terminus()).choose(rng)?;
                w = completion::extend_unit(ts, &w, j, a).ok()?;
            }
        }
        Some(w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::af;
    use crate::system::Decoration;

    #[test]
    fn rank1_wrappers() {
        let gm = fixtures::golden_mean();
        assert_eq!(gm.rank(), 1);
        assert!(from_rank1(Alphabet::numbered(2).unwrap(), BoolMatrix::identity(3)).is_err());
        assert_eq!(fixtures::single_letter().letter_count(), 1);
    }

    #[test]
    fn tensor_of_full_shifts() {
        let fs2 = fixtures::fs2();
        assert_eq!(fs2.letter_count(), 4);
        assert_eq!(fs2.alphabet().names(), &["00", "01", "10", "11"]);
        let j = BoolMatrix::ones(2);
        let i = BoolMatrix::identity(2);
        assert_eq!(fs2.matrix(0), &j.kronecker(&i));
        assert_eq!(fs2.matrix(1), &i.kronecker(&j));
    }

    #[test]
    fn tensor_edge_cases() {
        let gm = fixtures::golden_mean();
        assert_eq!(tensor(std::slice::from_ref(&gm)).unwrap(), gm);
        assert!(tensor(&[fixtures::gm2()]).is_err());
        assert!(tensor(&[]).is_err());
        let long = from_rank1(Alphabet::new(["ab", "c"]).unwrap(), BoolMatrix::ones(2)).unwrap();
        let t = tensor(&[long, gm]).unwrap();
        assert_eq!(t.alphabet().names()[0], "ab.0");
    }

    #[test]
    fn redecorate_identity_shapes() {
        let gm = fixtures::golden_mean();
        let d = DecorationMap::identity(gm.alphabet());
        let r = redecorate_by_shape(&gm, &d, &[Shape::zero(1), Shape::zero(1)]).unwrap();
        assert_eq!(r.map.len(), 2);
        assert_eq!(r.map.delta(Decoration(0)), Letter(0));
        assert_eq!(r.map.delta(Decoration(1)), Letter(1));
    }

    #[test]
    fn redecorate_golden_mean() {
        let gm = fixtures::golden_mean();
        let d = DecorationMap::identity(gm.alphabet());
        let r = redecorate_by_shape(&gm, &d, &[Shape::new(vec![1]), Shape::zero(1)]).unwrap();
        assert_eq!(r.map.names(), &["0:0,0", "0:0,1", "1:1"]);
        let deltas: Vec<_> = r.map.decorations().map(|x| r.map.delta(x).0).collect();
        assert_eq!(deltas, vec![0, 1, 1]);
    }

    #[test]
    fn redecorate_fs2_count() {
        let fs2 = fixtures::fs2();
        let d = DecorationMap::identity(fs2.alphabet());
        let shape = Shape::new(vec![1, 0]);
        let r = redecorate_by_shape(&fs2, &d, &vec![shape.clone(); 4]).unwrap();
        let total: u64 = af::dim_vector(&fs2, &d, &shape)
            .unwrap()
            .iter()
            .map(|x| u64::try_from(x).unwrap())
            .sum();
        assert_eq!(r.map.len(), 8);
        assert_eq!(total, 8);
    }
}
