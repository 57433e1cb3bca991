//! Lattice points of `Z^r_+` (shapes) and `Z^r` (translates).
//!
//! `Shape` derives a lexicographic `Ord` so it can key ordered maps; the
//! componentwise partial order is [`Shape::le`].

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Shape(Vec<usize>);

impl Shape {
    pub fn new(components: Vec<usize>) -> Self {
        Shape(components)
    }

    pub fn zero(rank: usize) -> Self {
        Shape(vec![0; rank])
    }

    /// The standard basis vector `e_j` (0-based `j`).
    pub fn unit(rank: usize, j: usize) -> Self {
        let mut s = Shape::zero(rank);
        s.0[j] = 1;
        s
    }

    pub fn uniform(rank: usize, value: usize) -> Self {
        Shape(vec![value; rank])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn components(&self) -> &[usize] {
        &self.0
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Componentwise `self <= other`.
    pub fn le(&self, other: &Shape) -> bool {
        self.rank() == other.rank() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn plus_unit(&self, j: usize) -> Shape {
        let mut s = self.clone();
        s.0[j] += 1;
        s
    }

    pub fn checked_sub(&self, other: &Shape) -> Option<Shape> {
        if self.rank() != other.rank() {
            return None;
        }
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Shape)
    }

    pub fn join(&self, other: &Shape) -> Shape {
        Shape(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    /// Number of lattice points in the box `[0, self]`.
    pub fn cell_count(&self) -> usize {
        self.0.iter().map(|c| c + 1).product()
    }

    /// Row-major strides for the box `[0, self]`; the last coordinate varies fastest.
    pub fn strides(&self) -> Vec<usize> {
        let mut strides = vec![1; self.rank()];
        for j in (0..self.rank().saturating_sub(1)).rev() {
            strides[j] = strides[j + 1] * (self.0[j + 1] + 1);
        }
        strides
    }

    pub fn to_translate(&self) -> Translate {
        Translate(self.0.iter().map(|&c| c as i64).collect())
    }

    /// All points of `[0, self]` in row-major (lexicographic) order.
    pub fn points(&self) -> BoxPoints {
        BoxPoints {
            lo: vec![0; self.rank()],
            hi: self.0.clone(),
            next: Some(vec![0; self.rank()]),
        }
    }

    /// All shapes `m` with `0 <= m <= self`, in graded order.
    pub fn shapes_within(&self) -> Vec<Shape> {
        let mut all: Vec<Shape> = self.points().map(Shape).collect();
        all.sort_by(graded_cmp);
        all
    }

    /// All shapes of total degree `degree` in rank `rank`, in graded order.
    pub fn shapes_of_degree(rank: usize, degree: usize) -> Vec<Shape> {
        let mut out = Vec::new();
        let mut cur = vec![0; rank];
        fn rec(j: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Shape>) {
            if j + 1 == cur.len() {
                cur[j] = left;
                out.push(Shape(cur.clone()));
                return;
            }
            for c in (0..=left).rev() {
                cur[j] = c;
                rec(j + 1, left - c, cur, out);
            }
        }
        if rank > 0 {
            rec(0, degree, &mut cur, &mut out);
        }
        out
    }
}

/// Graded order on shapes: by total degree, then with larger early coordinates
/// first, so that `e_1` precedes `e_2`.
pub fn graded_cmp(a: &Shape, b: &Shape) -> Ordering {
    a.total().cmp(&b.total()).then_with(|| b.0.cmp(&a.0))
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, self.0.iter())
    }
}

impl std::ops::Add for &Shape {
    type Output = Shape;

    fn add(self, rhs: &Shape) -> Shape {
        Shape(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl std::ops::Index<usize> for Shape {
    type Output = usize;

    fn index(&self, j: usize) -> &usize {
        &self.0[j]
    }
}

impl From<Vec<usize>> for Shape {
    fn from(v: Vec<usize>) -> Self {
        Shape(v)
    }
}

/// Iterator over the integer points of a box, lexicographic order.
pub struct BoxPoints {
    lo: Vec<usize>,
    hi: Vec<usize>,
    next: Option<Vec<usize>>,
}

impl BoxPoints {
    pub fn new(lo: Vec<usize>, hi: Vec<usize>) -> Self {
        let empty = lo.iter().zip(&hi).any(|(l, h)| l > h);
        BoxPoints {
            next: if empty { None } else { Some(lo.clone()) },
            lo,
            hi,
        }
    }
}

impl Iterator for BoxPoints {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let cur = self.next.take()?;
        let mut succ = cur.clone();
        let mut j = succ.len();
        loop {
            if j == 0 {
                break;
            }
            j -= 1;
            if succ[j] < self.hi[j] {
                succ[j] += 1;
                self.next = Some(succ);
                break;
            }
            succ[j] = self.lo[j];
        }
        Some(cur)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Translate(Vec<i64>);

impl Translate {
    pub fn new(components: Vec<i64>) -> Self {
        Translate(components)
    }

    pub fn zero(rank: usize) -> Self {
        Translate(vec![0; rank])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn components(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn neg(&self) -> Translate {
        Translate(self.0.iter().map(|c| -c).collect())
    }

    pub fn meet(&self, other: &Translate) -> Translate {
        Translate(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.min(b))
                .collect(),
        )
    }

    pub fn join(&self, other: &Translate) -> Translate {
        Translate(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    /// `|p| = p ∨ (-p)`, returned as a shape.
    pub fn abs(&self) -> Shape {
        Shape(self.0.iter().map(|c| c.unsigned_abs() as usize).collect())
    }

    /// `p ∨ 0`.
    pub fn positive_part(&self) -> Shape {
        Shape(self.0.iter().map(|&c| c.max(0) as usize).collect())
    }

    /// `(-p) ∨ 0`.
    pub fn negative_part(&self) -> Shape {
        Shape(self.0.iter().map(|&c| (-c).max(0) as usize).collect())
    }

    /// Sign-canonical representative of `{p, -p}`: first nonzero component positive.
    pub fn is_canonical(&self) -> bool {
        self.0.iter().find(|&&c| c != 0).is_some_and(|&c| c > 0)
    }

    /// Nonzero `p` with `|p| <= bound`, one per class `{p, -p}`, lexicographic order.
    pub fn classes_within(bound: &Shape) -> Vec<Translate> {
        Translate::nonzero_within(bound)
            .into_iter()
            .filter(Translate::is_canonical)
            .collect()
    }

    /// Every nonzero `p` with `|p| <= bound`, lexicographic order.
    pub fn nonzero_within(bound: &Shape) -> Vec<Translate> {
        let span = Shape::new(bound.components().iter().map(|b| 2 * b).collect());
        span.points()
            .map(|pt| {
                Translate(
                    pt.iter()
                        .zip(bound.components())
                        .map(|(&x, &b)| x as i64 - b as i64)
                        .collect(),
                )
            })
            .filter(|p| !p.is_zero())
            .collect()
    }
}

impl fmt::Display for Translate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, self.0.iter())
    }
}

impl From<Vec<i64>> for Translate {
    fn from(v: Vec<i64>) -> Self {
        Translate(v)
    }
}

fn write_tuple<T: fmt::Display>(
    f: &mut fmt::Formatter<'_>,
    items: impl Iterator<Item = T>,
) -> fmt::Result {
    write!(f, "(")?;
    for (i, x) in items.enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{x}")?;
    }
    write!(f, ")")
}

/// Componentwise meet, join and `|l|` of two translates.
pub fn shape_lattice(l: &Translate, m: &Translate) -> Result<(Translate, Translate, Translate)> {
    if l.rank() != m.rank() {
        return Err(Error::RankMismatch {
            expected: l.rank(),
            found: m.rank(),
        });
    }
    Ok((l.meet(m), l.join(m), l.join(&l.neg())))
}
