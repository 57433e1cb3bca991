//! Square {0,1}-matrices indexed `(b, a)` and their integer products.

use std::fmt;

/// A square boolean matrix; `get(b, a)` is the entry in row `b`, column `a`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BoolMatrix {
    n: usize,
    entries: Vec<bool>,
}

impl BoolMatrix {
    pub fn zeros(n: usize) -> Self {
        BoolMatrix {
            n,
            entries: vec![false; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = BoolMatrix::zeros(n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn ones(n: usize) -> Self {
        BoolMatrix {
            n,
            entries: vec![true; n * n],
        }
    }

    /// Builds from rows; returns `None` if the rows are not square.
    pub fn from_rows(rows: &[Vec<bool>]) -> Option<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return None;
        }
        Some(BoolMatrix {
            n,
            entries: rows.iter().flatten().copied().collect(),
        })
    }

    /// Builds from 0/1 rows; any nonzero entry counts as 1.
    pub fn from_bits(rows: &[&[u8]]) -> Option<Self> {
        let rows: Vec<Vec<bool>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| x != 0).collect())
            .collect();
        BoolMatrix::from_rows(&rows)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, b: usize, a: usize) -> bool {
        self.entries[b * self.n + a]
    }

    pub fn set(&mut self, b: usize, a: usize, value: bool) {
        self.entries[b * self.n + a] = value;
    }

    pub fn is_zero(&self) -> bool {
        !self.entries.iter().any(|&x| x)
    }

    pub fn transpose(&self) -> Self {
        let mut t = BoolMatrix::zeros(self.n);
        for b in 0..self.n {
            for a in 0..self.n {
                t.set(a, b, self.get(b, a));
            }
        }
        t
    }

    /// Kronecker product; index `(i, k)` of the result is `i * other.n + k`.
    pub fn kronecker(&self, other: &BoolMatrix) -> Self {
        let n = self.n * other.n;
        let mut out = BoolMatrix::zeros(n);
        for b1 in 0..self.n {
            for a1 in 0..self.n {
                if !self.get(b1, a1) {
                    continue;
                }
                for b2 in 0..other.n {
                    for a2 in 0..other.n {
                        if other.get(b2, a2) {
                            out.set(b1 * other.n + b2, a1 * other.n + a2, true);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn rows(&self) -> Vec<Vec<bool>> {
        self.entries
            .chunks(self.n.max(1))
            .map(|r| r.to_vec())
            .collect()
    }

    pub fn to_counts(&self) -> CountMatrix {
        CountMatrix {
            n: self.n,
            entries: self.entries.iter().map(|&x| x as u64).collect(),
        }
    }
}

impl fmt::Display for BoolMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in 0..self.n {
            for a in 0..self.n {
                if a > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(b, a) as u8)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Square matrix of path counts.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CountMatrix {
    n: usize,
    entries: Vec<u64>,
}

impl CountMatrix {
    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, b: usize, a: usize) -> u64 {
        self.entries[b * self.n + a]
    }

    pub fn mul(&self, rhs: &CountMatrix) -> CountMatrix {
        let n = self.n;
        let mut entries = vec![0u64; n * n];
        for i in 0..n {
            for k in 0..n {
                let x = self.get(i, k);
                if x == 0 {
                    continue;
                }
                for j in 0..n {
                    entries[i * n + j] += x * rhs.get(k, j);
                }
            }
        }
        CountMatrix { n, entries }
    }

    /// First `(b, a)` in row-major order with entry above 1.
    pub fn first_entry_above_one(&self) -> Option<(usize, usize, u64)> {
        (0..self.n * self.n)
            .find(|&i| self.entries[i] > 1)
            .map(|i| (i / self.n, i % self.n, self.entries[i]))
    }

    /// First `(b, a)` in row-major order where the two matrices differ.
    pub fn first_difference(&self, other: &CountMatrix) -> Option<(usize, usize)> {
        (0..self.n * self.n)
            .find(|&i| self.entries[i] != other.entries[i])
            .map(|i| (i / self.n, i % self.n))
    }
}
