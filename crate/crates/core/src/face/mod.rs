//! Faces of the n-cube and the cubic/MR operations on them.
//!
//! A face is a vector over {minus, plus, free}. Each coordinate takes two
//! bits, stored as a pair of bitmasks (`plus`, `minus`); a coordinate set in
//! neither mask is free. Bit `i` of a mask is coordinate `i` (0-based); the
//! textual form writes coordinate 0 leftmost.
//!
//! The order is containment of faces: `x <= y` when every coordinate fixed
//! in `y` is fixed to the same sign in `x`. The top `1` is the all-free face
//! and the vertices are the faces with no free coordinate.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub mod axioms;

use crate::error::{Error, Result};

/// Largest supported ambient dimension (one bit per coordinate in a `u32`).
pub const MAX_DIM: usize = 32;

/// Set of coordinates, bit `i` for coordinate `i`.
pub type CoordMask = u32;

pub(crate) fn full_mask(n: usize) -> CoordMask {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

pub(crate) fn mask_coords(mask: CoordMask) -> impl Iterator<Item = usize> {
    (0..32).filter(move |i| mask >> i & 1 == 1)
}

/// State of one coordinate. The derived order `Minus < Plus < Free` is the
/// canonical order used for enumeration output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Coord {
    Minus,
    Plus,
    Free,
}

impl Coord {
    pub fn flip(self) -> Coord {
        match self {
            Coord::Minus => Coord::Plus,
            Coord::Plus => Coord::Minus,
            Coord::Free => Coord::Free,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Coord::Minus => '-',
            Coord::Plus => '+',
            Coord::Free => '*',
        }
    }
}

/// A face of the n-cube, i.e. an element of the face semilattice `L_n`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Face {
    n: u8,
    plus: CoordMask,
    minus: CoordMask,
}

impl Face {
    /// Builds a face from its plus and minus coordinate sets.
    pub fn new(n: usize, plus: CoordMask, minus: CoordMask) -> Result<Face> {
        if n == 0 || n > MAX_DIM {
            return Err(Error::OutOfRange {
                what: "face dimension",
                n,
                min: 1,
                max: MAX_DIM,
            });
        }
        let full = full_mask(n);
        if plus & minus != 0 || (plus | minus) & !full != 0 {
            return Err(Error::Precondition(format!(
                "plus {plus:#b} and minus {minus:#b} must be disjoint subsets of {n} coordinates"
            )));
        }
        Ok(Face::raw(n, plus, minus))
    }

    pub(crate) const fn raw(n: usize, plus: CoordMask, minus: CoordMask) -> Face {
        Face {
            n: n as u8,
            plus,
            minus,
        }
    }

    pub fn from_coords(coords: &[Coord]) -> Result<Face> {
        let mut plus = 0;
        let mut minus = 0;
        for (i, c) in coords.iter().enumerate().take(MAX_DIM) {
            match c {
                Coord::Plus => plus |= 1 << i,
                Coord::Minus => minus |= 1 << i,
                Coord::Free => {}
            }
        }
        Face::new(coords.len(), plus, minus)
    }

    /// The whole cube, `1`.
    pub fn top(n: usize) -> Face {
        Face::raw(n, 0, 0)
    }

    /// The all-minus vertex, the fixed base atom `0` used by locator pairs.
    pub fn base_vertex(n: usize) -> Face {
        Face::raw(n, 0, full_mask(n))
    }

    pub fn dim(&self) -> usize {
        self.n as usize
    }

    pub fn coord(&self, i: usize) -> Coord {
        if self.plus >> i & 1 == 1 {
            Coord::Plus
        } else if self.minus >> i & 1 == 1 {
            Coord::Minus
        } else {
            Coord::Free
        }
    }

    pub fn coords(&self) -> Vec<Coord> {
        (0..self.dim()).map(|i| self.coord(i)).collect()
    }

    pub fn plus_mask(&self) -> CoordMask {
        self.plus
    }

    pub fn minus_mask(&self) -> CoordMask {
        self.minus
    }

    pub fn fixed_mask(&self) -> CoordMask {
        self.plus | self.minus
    }

    pub fn free_mask(&self) -> CoordMask {
        full_mask(self.dim()) & !self.fixed_mask()
    }

    /// Number of fixed coordinates (codimension of the face).
    pub fn corank(&self) -> usize {
        self.fixed_mask().count_ones() as usize
    }

    pub fn is_top(&self) -> bool {
        self.fixed_mask() == 0
    }

    pub fn is_vertex(&self) -> bool {
        self.free_mask() == 0
    }

    pub fn is_coatom(&self) -> bool {
        self.corank() == 1
    }

    /// Every face of `L_n` in canonical order.
    pub fn all(n: usize) -> impl Iterator<Item = Face> {
        let total = 3usize.pow(n as u32);
        (0..total).map(move |mut code| {
            let mut plus = 0;
            let mut minus = 0;
            // coordinate 0 is the most significant base-3 digit
            for i in (0..n).rev() {
                match code % 3 {
                    0 => minus |= 1 << i,
                    1 => plus |= 1 << i,
                    _ => {}
                }
                code /= 3;
            }
            Face::raw(n, plus, minus)
        })
    }

    /// The `2^n` vertices in canonical order.
    pub fn vertices(n: usize) -> impl Iterator<Item = Face> {
        let full = full_mask(n);
        (0..1u64 << n).map(move |code| {
            let mut plus = 0;
            for i in 0..n {
                if code >> (n - 1 - i) & 1 == 1 {
                    plus |= 1 << i;
                }
            }
            Face::raw(n, plus, full & !plus)
        })
    }

    /// The `2n` coatoms in canonical order.
    pub fn coatoms(n: usize) -> Vec<Face> {
        let mut out: Vec<Face> = (0..n)
            .flat_map(|i| [Face::raw(n, 0, 1 << i), Face::raw(n, 1 << i, 0)])
            .collect();
        out.sort();
        out
    }

    fn same_dim(&self, other: &Face) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            })
        }
    }

    /// Containment order.
    pub fn leq(&self, other: &Face) -> Result<bool> {
        self.same_dim(other)?;
        Ok(self.leq_raw(other))
    }

    pub(crate) fn leq_raw(&self, other: &Face) -> bool {
        other.plus & !self.plus == 0 && other.minus & !self.minus == 0
    }

    /// Least face containing both.
    pub fn join(&self, other: &Face) -> Result<Face> {
        self.same_dim(other)?;
        Ok(self.join_raw(other))
    }

    pub(crate) fn join_raw(&self, other: &Face) -> Face {
        Face::raw(self.dim(), self.plus & other.plus, self.minus & other.minus)
    }

    /// Greatest lower bound, `None` when the two faces fix some coordinate
    /// to opposite signs.
    pub fn meet(&self, other: &Face) -> Result<Option<Face>> {
        self.same_dim(other)?;
        Ok(self.meet_raw(other))
    }

    pub(crate) fn meet_raw(&self, other: &Face) -> Option<Face> {
        let plus = self.plus | other.plus;
        let minus = self.minus | other.minus;
        if plus & minus != 0 {
            None
        } else {
            Some(Face::raw(self.dim(), plus, minus))
        }
    }

    /// Reflection of `y` through the centre of `self`; requires `y <= self`.
    pub fn delta(&self, y: &Face) -> Result<Face> {
        self.same_dim(y)?;
        if !y.leq_raw(self) {
            return Err(Error::Precondition(format!(
                "delta({self}, {y}) needs {y} <= {self}"
            )));
        }
        Ok(self.delta_raw(y))
    }

    pub(crate) fn delta_raw(&self, y: &Face) -> Face {
        let flip = self.free_mask() & y.fixed_mask();
        Face::raw(
            self.dim(),
            (y.plus & !flip) | (y.minus & flip),
            (y.minus & !flip) | (y.plus & flip),
        )
    }

    /// `Δ(1, x)`: the antipodal face.
    pub fn antipode(&self) -> Face {
        Face::raw(self.dim(), self.minus, self.plus)
    }

    /// `x ^ y = x ∧ Δ(x ∨ y, y)`. Total on `L_n`; a missing meet is
    /// reported as an invariant violation.
    pub fn caret(&self, y: &Face) -> Result<Face> {
        self.same_dim(y)?;
        self.caret_raw(y)
    }

    pub(crate) fn caret_raw(&self, y: &Face) -> Result<Face> {
        let reflected = self.join_raw(y).delta_raw(y);
        self.meet_raw(&reflected).ok_or_else(|| {
            Error::Invariant(format!("caret({self}, {y}): meet with {reflected} does not exist"))
        })
    }

    /// `a ⪯ b` iff `Δ(a ∨ b, a) <= b`.
    pub fn preceq(&self, b: &Face) -> Result<bool> {
        self.same_dim(b)?;
        Ok(self.join_raw(b).delta_raw(self).leq_raw(b))
    }

    /// `a ≃ b` iff `Δ(a ∨ b, a) = b`.
    pub fn simeq(&self, b: &Face) -> Result<bool> {
        self.same_dim(b)?;
        Ok(self.join_raw(b).delta_raw(self) == *b)
    }

    /// The map `x ↦ (x ∨ a) ∧ (Δ(1, x) ∨ a)` toward the vertex `a = self`.
    pub fn translate(&self, x: &Face) -> Result<Face> {
        self.same_dim(x)?;
        if !self.is_vertex() {
            return Err(Error::Precondition(format!("translate target {self} is not a vertex")));
        }
        self.translate_raw(x)
    }

    pub(crate) fn translate_raw(&self, x: &Face) -> Result<Face> {
        let left = x.join_raw(self);
        let right = x.antipode().join_raw(self);
        left.meet_raw(&right)
            .ok_or_else(|| Error::Invariant(format!("translate({self}, {x}): meet of {left} and {right} does not exist")))
    }

    pub fn to_signed_set(&self) -> SignedSet {
        SignedSet {
            n: self.dim(),
            pos: mask_coords(self.plus).collect(),
            neg: mask_coords(self.minus).collect(),
        }
    }

    pub fn from_signed_set(s: &SignedSet) -> Result<Face> {
        let to_mask = |set: &BTreeSet<usize>| -> Result<CoordMask> {
            set.iter().try_fold(0u32, |m, &i| {
                if i < s.n {
                    Ok(m | 1 << i)
                } else {
                    Err(Error::Precondition(format!("coordinate {i} out of range for n = {}", s.n)))
                }
            })
        };
        Face::new(s.n, to_mask(&s.pos)?, to_mask(&s.neg)?)
    }

    pub fn to_interval_pair(&self) -> IntervalPair {
        let full = full_mask(self.dim());
        IntervalPair {
            n: self.dim(),
            a: full & !self.plus,
            b: full & !self.minus,
        }
    }

    pub fn from_interval_pair(p: &IntervalPair) -> Result<Face> {
        p.validate()?;
        let full = full_mask(p.n);
        Face::new(p.n, full & !p.a, full & !p.b)
    }
}

impl Ord for Face {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n.cmp(&other.n).then_with(|| {
            let diff = (self.plus ^ other.plus) | (self.minus ^ other.minus);
            if diff == 0 {
                Ordering::Equal
            } else {
                let i = diff.trailing_zeros() as usize;
                self.coord(i).cmp(&other.coord(i))
            }
        })
    }
}

impl PartialOrd for Face {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.dim() {
            write!(f, "{}", self.coord(i).symbol())?;
        }
        Ok(())
    }
}

impl fmt::Debug for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Face({self})")
    }
}

impl FromStr for Face {
    type Err = Error;

    /// Parses a literal such as `"+*-"`; the Unicode minus sign is accepted
    /// as well as `-`.
    fn from_str(s: &str) -> Result<Face> {
        let coords = s
            .chars()
            .map(|c| match c {
                '+' => Ok(Coord::Plus),
                '-' | '\u{2212}' => Ok(Coord::Minus),
                '*' => Ok(Coord::Free),
                _ => Err(Error::Parse {
                    what: "face literal",
                    input: s.to_string(),
                }),
            })
            .collect::<Result<Vec<_>>>()?;
        if coords.is_empty() {
            return Err(Error::Parse {
                what: "face literal",
                input: s.to_string(),
            });
        }
        Face::from_coords(&coords)
    }
}

impl Serialize for Face {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Face {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Face, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A signed subset `⟨pos, neg⟩` of the coordinates, ordered by reverse
/// pointwise inclusion.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignedSet {
    pub n: usize,
    pub pos: BTreeSet<usize>,
    pub neg: BTreeSet<usize>,
}

impl SignedSet {
    pub fn leq(&self, other: &SignedSet) -> bool {
        other.pos.is_subset(&self.pos) && other.neg.is_subset(&self.neg)
    }
}

/// A pair `⟨a, b⟩` of subsets of the coordinates with `a ∪ b` everything,
/// ordered componentwise. The face with plus set `P` and minus set `N` is
/// `⟨¬P, ¬N⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct IntervalPair {
    pub n: usize,
    pub a: CoordMask,
    pub b: CoordMask,
}

impl IntervalPair {
    fn validate(&self) -> Result<()> {
        let full = full_mask(self.n);
        if self.a | self.b != full || (self.a | self.b) & !full != 0 {
            return Err(Error::Precondition(format!(
                "interval pair ⟨{:#b}, {:#b}⟩ must join to the top",
                self.a, self.b
            )));
        }
        Ok(())
    }

    pub fn leq(&self, other: &IntervalPair) -> bool {
        self.a & !other.a == 0 && self.b & !other.b == 0
    }

    /// `Δ(⟨a,b⟩, ⟨c,d⟩) = ⟨a ∧ (b → d), b ∧ (a → c)⟩`, for `⟨c,d⟩ <= ⟨a,b⟩`.
    pub fn delta(&self, q: &IntervalPair) -> Result<IntervalPair> {
        if self.n != q.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: q.n,
            });
        }
        self.validate()?;
        q.validate()?;
        if !q.leq(self) {
            return Err(Error::Precondition("interval delta needs q <= p".into()));
        }
        let full = full_mask(self.n);
        let implies = |x: CoordMask, y: CoordMask| (full & !x) | y;
        Ok(IntervalPair {
            n: self.n,
            a: self.a & implies(self.b, q.b),
            b: self.b & implies(self.a, q.a),
        })
    }
}
