//! Alphabets, tile systems and decoration maps.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::BoolMatrix;

/// Index of a letter in its alphabet's declaration order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Letter(pub usize);

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Index of a decoration in its map's declaration order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Decoration(pub usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
    index: HashMap<String, Letter>,
}

impl Alphabet {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        let index = unique_index(&names)?;
        Ok(Alphabet {
            names,
            index: index.into_iter().map(|(k, v)| (k, Letter(v))).collect(),
        })
    }

    /// Letters named `0, 1, ..., n-1`.
    pub fn numbered(n: usize) -> Result<Self> {
        Alphabet::new((0..n).map(|i| i.to_string()))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, a: Letter) -> &str {
        &self.names[a.0]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn letter(&self, name: &str) -> Result<Letter> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownLetter(name.to_string()))
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..self.names.len()).map(Letter)
    }
}

fn unique_index(names: &[String]) -> Result<HashMap<String, usize>> {
    let mut index = HashMap::with_capacity(names.len());
    for (i, n) in names.iter().enumerate() {
        if index.insert(n.clone(), i).is_some() {
            return Err(Error::DuplicateName(n.clone()));
        }
    }
    Ok(index)
}

/// An alphabet with `r` transition matrices. `M_j(b, a) = 1` allows the step
/// `a -> b` in direction `j`.
///
/// Construction only checks well-formedness; the structural conditions are
/// decided by [`crate::verify`], so failing systems can still be loaded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TileSystem {
    alphabet: Alphabet,
    matrices: Vec<BoolMatrix>,
    // successors[j][a] = letters b with M_j(b, a) = 1, ascending
    successors: Vec<Vec<Vec<Letter>>>,
}

impl TileSystem {
    pub fn new(alphabet: Alphabet, matrices: Vec<BoolMatrix>) -> Result<Self> {
        if matrices.is_empty() {
            return Err(Error::ZeroRank);
        }
        let n = alphabet.len();
        for (j, m) in matrices.iter().enumerate() {
            if m.size() != n {
                return Err(Error::MatrixDimension {
                    direction: j + 1,
                    rows: m.size(),
                    cols: m.size(),
                    expected: n,
                });
            }
        }
        let successors = matrices
            .iter()
            .map(|m| {
                (0..n)
                    .map(|a| (0..n).filter(|&b| m.get(b, a)).map(Letter).collect())
                    .collect()
            })
            .collect();
        Ok(TileSystem {
            alphabet,
            matrices,
            successors,
        })
    }

    pub fn rank(&self) -> usize {
        self.matrices.len()
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn letter_count(&self) -> usize {
        self.alphabet.len()
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        self.alphabet.letters()
    }

    pub fn matrices(&self) -> &[BoolMatrix] {
        &self.matrices
    }

    pub fn matrix(&self, j: usize) -> &BoolMatrix {
        &self.matrices[j]
    }

    /// Whether the step `from -> to` is allowed in direction `j`.
    pub fn allows(&self, j: usize, from: Letter, to: Letter) -> bool {
        self.matrices[j].get(to.0, from.0)
    }

    pub fn successors(&self, j: usize, a: Letter) -> &[Letter] {
        &self.successors[j][a.0]
    }

    pub(crate) fn check_direction(&self, j: usize) -> Result<()> {
        if j < self.rank() {
            Ok(())
        } else {
            Err(Error::BadDirection {
                direction: j,
                rank: self.rank(),
            })
        }
    }
}

/// A finite decoration set `D` with its map `δ: D -> A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecorationMap {
    names: Vec<String>,
    index: HashMap<String, Decoration>,
    delta: Vec<Letter>,
}

impl DecorationMap {
    pub fn new(names: Vec<String>, delta: Vec<Letter>, alphabet: &Alphabet) -> Result<Self> {
        if names.is_empty() {
            return Err(Error::EmptyDecorations);
        }
        if names.len() != delta.len() {
            return Err(Error::RankMismatch {
                expected: names.len(),
                found: delta.len(),
            });
        }
        if let Some(bad) = delta.iter().find(|a| a.0 >= alphabet.len()) {
            return Err(Error::UnknownLetter(bad.to_string()));
        }
        let index = unique_index(&names)?
            .into_iter()
            .map(|(k, v)| (k, Decoration(v)))
            .collect();
        Ok(DecorationMap {
            names,
            index,
            delta,
        })
    }

    /// `D = A` with `δ` the identity.
    pub fn identity(alphabet: &Alphabet) -> Self {
        DecorationMap::new(
            alphabet.names().to_vec(),
            alphabet.letters().collect(),
            alphabet,
        )
        .expect("alphabet names are unique and nonempty")
    }

    pub fn is_identity_on(&self, alphabet: &Alphabet) -> bool {
        self.names == alphabet.names() && self.delta.iter().enumerate().all(|(i, a)| a.0 == i)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, d: Decoration) -> &str {
        &self.names[d.0]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn delta(&self, d: Decoration) -> Letter {
        self.delta[d.0]
    }

    pub fn decoration(&self, name: &str) -> Result<Decoration> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownDecoration(name.to_string()))
    }

    pub fn decorations(&self) -> impl Iterator<Item = Decoration> + '_ {
        (0..self.names.len()).map(Decoration)
    }

    /// Number of decorations over each letter.
    pub fn fiber_sizes(&self, letters: usize) -> Vec<usize> {
        let mut out = vec![0; letters];
        for a in &self.delta {
            out[a.0] += 1;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alphabet_rejects_duplicates_and_empty() {
        assert_eq!(
            Alphabet::new(["a", "a"]),
            Err(Error::DuplicateName("a".into()))
        );
        assert_eq!(
            Alphabet::new(Vec::<String>::new()),
            Err(Error::EmptyAlphabet)
        );
        let a = Alphabet::new(["x", "y"]).unwrap();
        assert_eq!(a.letter("y"), Ok(Letter(1)));
        assert!(a.letter("z").is_err());
    }

    #[test]
    fn system_checks_dimensions() {
        let a = Alphabet::numbered(2).unwrap();
        assert_eq!(TileSystem::new(a.clone(), vec![]), Err(Error::ZeroRank));
        let err = TileSystem::new(a, vec![BoolMatrix::identity(3)]).unwrap_err();
        assert!(matches!(err, Error::MatrixDimension { expected: 2, .. }));
    }

    #[test]
    fn successors_follow_column_convention() {
        let a = Alphabet::numbered(2).unwrap();
        // M(b, a): row b, column a. Only 0 -> 1 allowed.
        let m = BoolMatrix::from_bits(&[&[0, 0], &[1, 0]]).unwrap();
        let ts = TileSystem::new(a, vec![m]).unwrap();
        assert!(ts.allows(0, Letter(0), Letter(1)));
        assert!(!ts.allows(0, Letter(1), Letter(0)));
        assert_eq!(ts.successors(0, Letter(0)), &[Letter(1)]);
    }

    #[test]
    fn identity_decorations() {
        let a = Alphabet::numbered(3).unwrap();
        let d = DecorationMap::identity(&a);
        assert!(d.is_identity_on(&a));
        assert_eq!(d.fiber_sizes(3), vec![1, 1, 1]);
        assert!(DecorationMap::new(vec![], vec![], &a).is_err());
    }
}
