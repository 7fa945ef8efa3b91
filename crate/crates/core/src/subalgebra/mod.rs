//! MR-subalgebras of `L_n`.
//!
//! Every MR-subalgebra is a signed partial partition of the coordinates: a
//! family of disjoint blocks, each carrying a sign pattern that is only
//! defined up to a global flip. A face belongs to the subalgebra when its
//! fixed coordinates are a union of blocks and on each of those blocks it
//! agrees with the block pattern or with its negation. A subalgebra with
//! `k` blocks is isomorphic to `L_k`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{check_range, Error, Result};
use crate::face::{full_mask, mask_coords, CoordMask, Face, MAX_DIM};

pub mod locator;

/// Largest `n` for which the structural enumeration is offered.
pub const MAX_STRUCTURAL_N: usize = 6;
/// Largest `n` for which the generated-closure oracle enumeration runs.
pub const MAX_CLOSURE_ORACLE_N: usize = 3;

/// A block of coordinates with its sign pattern. Canonical form has the
/// lowest coordinate of the block set to plus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Block {
    support: CoordMask,
    minus: CoordMask,
}

impl Block {
    pub fn new(support: CoordMask, minus: CoordMask) -> Result<Block> {
        if support == 0 || minus & !support != 0 {
            return Err(Error::Precondition(format!(
                "block support {support:#b} must be nonempty and contain minus set {minus:#b}"
            )));
        }
        let lowest = support & support.wrapping_neg();
        let minus = if minus & lowest != 0 { support & !minus } else { minus };
        Ok(Block { support, minus })
    }

    pub fn support(&self) -> CoordMask {
        self.support
    }

    /// Coordinates where the canonical pattern is minus.
    pub fn minus(&self) -> CoordMask {
        self.minus
    }

    pub fn plus(&self) -> CoordMask {
        self.support & !self.minus
    }

    pub fn len(&self) -> usize {
        self.support.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.support == 0
    }

    fn lowest(&self) -> u32 {
        self.support.trailing_zeros()
    }

    /// Plus and minus masks of the pattern (`positive`) or its negation.
    pub fn signed(&self, positive: bool) -> (CoordMask, CoordMask) {
        if positive {
            (self.plus(), self.minus)
        } else {
            (self.minus, self.plus())
        }
    }

    /// Pattern as a string over `+`/`-`, lowest coordinate first.
    pub fn pattern(&self) -> String {
        mask_coords(self.support)
            .map(|i| if self.minus >> i & 1 == 1 { '-' } else { '+' })
            .collect()
    }
}

/// An MR-subalgebra of `L_n` in structural form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MRSubalgebra {
    n: usize,
    blocks: Vec<Block>,
}

impl MRSubalgebra {
    pub fn new(n: usize, blocks: impl IntoIterator<Item = Block>) -> Result<MRSubalgebra> {
        check_range("subalgebra dimension", n, 1, MAX_DIM)?;
        let mut blocks: Vec<Block> = blocks.into_iter().collect();
        let mut seen = 0;
        for b in &blocks {
            if b.support & seen != 0 || b.support & !full_mask(n) != 0 {
                return Err(Error::Precondition(format!(
                    "blocks must be disjoint subsets of {n} coordinates"
                )));
            }
            seen |= b.support;
        }
        blocks.sort_by_key(Block::lowest);
        Ok(MRSubalgebra { n, blocks })
    }

    /// `{1}`.
    pub fn bottom(n: usize) -> MRSubalgebra {
        MRSubalgebra { n, blocks: Vec::new() }
    }

    /// `L_n` itself.
    pub fn full(n: usize) -> MRSubalgebra {
        MRSubalgebra {
            n,
            blocks: (0..n).map(|i| Block { support: 1 << i, minus: 0 }).collect(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    /// `k`, the number of blocks.
    pub fn dimension(&self) -> usize {
        self.blocks.len()
    }

    /// Union of the blocks: the fixed support of every vertex.
    pub fn support(&self) -> CoordMask {
        self.blocks.iter().fold(0, |m, b| m | b.support)
    }

    /// `r`, the corank of the vertices.
    pub fn vertex_corank(&self) -> usize {
        self.support().count_ones() as usize
    }

    /// Image of a face of `L_k` under the canonical isomorphism `L_k ≅ A`
    /// sending coordinate `j` to block `j`.
    pub fn embed(&self, y: &Face) -> Result<Face> {
        if y.dim() != self.dimension() {
            return Err(Error::DimensionMismatch {
                left: y.dim(),
                right: self.dimension(),
            });
        }
        let mut plus = 0;
        let mut minus = 0;
        for (j, b) in self.blocks.iter().enumerate() {
            let (p, m) = match y.coord(j) {
                crate::face::Coord::Plus => b.signed(true),
                crate::face::Coord::Minus => b.signed(false),
                crate::face::Coord::Free => (0, 0),
            };
            plus |= p;
            minus |= m;
        }
        Ok(Face::raw(self.n, plus, minus))
    }

    /// Inverse of [`MRSubalgebra::embed`]; `None` when `x` is not in the
    /// subalgebra.
    pub fn coordinates_of(&self, x: &Face) -> Option<Face> {
        let mut plus = 0;
        let mut minus = 0;
        let mut covered = 0;
        for (j, b) in self.blocks.iter().enumerate() {
            let xp = x.plus_mask() & b.support;
            let xm = x.minus_mask() & b.support;
            if xp | xm == 0 {
                continue;
            }
            if (xp, xm) == b.signed(true) {
                plus |= 1 << j;
            } else if (xp, xm) == b.signed(false) {
                minus |= 1 << j;
            } else {
                return None;
            }
            covered |= b.support;
        }
        if x.fixed_mask() & !covered != 0 {
            return None;
        }
        Some(Face::raw(self.dimension(), plus, minus))
    }

    pub fn contains(&self, x: &Face) -> bool {
        x.dim() == self.n && self.coordinates_of(x).is_some()
    }

    /// All `3^k` faces of the subalgebra in canonical face order.
    pub fn materialize(&self) -> Vec<Face> {
        let k = self.dimension();
        let mut faces: Vec<Face> = if k == 0 {
            vec![Face::top(self.n)]
        } else {
            Face::all(k).map(|y| self.embed(&y).expect("dimension checked")).collect()
        };
        faces.sort();
        faces
    }

    pub fn materialize_set(&self) -> BTreeSet<Face> {
        self.materialize().into_iter().collect()
    }

    /// The `2^k` vertices of the subalgebra in canonical face order.
    pub fn vertices(&self) -> Vec<Face> {
        let k = self.dimension();
        let mut out: Vec<Face> = if k == 0 {
            vec![Face::top(self.n)]
        } else {
            Face::vertices(k).map(|y| self.embed(&y).expect("dimension checked")).collect()
        };
        out.sort();
        out
    }

    /// `CoAt(A)`: the faces fixing exactly one block.
    pub fn coatoms(&self) -> Vec<Face> {
        let mut out: Vec<Face> = self
            .blocks
            .iter()
            .flat_map(|b| {
                let (p, m) = b.signed(true);
                [Face::raw(self.n, p, m), Face::raw(self.n, m, p)]
            })
            .collect();
        out.sort();
        out
    }

    pub fn type_vector(&self) -> TypeVector {
        let mut t = vec![0; self.n];
        for b in &self.blocks {
            t[b.len() - 1] += 1;
        }
        TypeVector { t }
    }

    /// Structural inclusion: every block of `self` is a disjoint union of
    /// blocks of `other`, each carrying the restricted pattern up to sign.
    pub fn includes_in(&self, other: &MRSubalgebra) -> Result<bool> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(self.blocks.iter().all(|b| {
            let mut covered = 0;
            for o in &other.blocks {
                if o.support & b.support == 0 {
                    continue;
                }
                if o.support & !b.support != 0 {
                    return false;
                }
                let restricted = b.minus & o.support;
                if restricted != o.minus && restricted != o.plus() {
                    return false;
                }
                covered |= o.support;
            }
            covered == b.support
        }))
    }

    /// Recovers the structural form of an extensional subalgebra.
    pub fn from_face_set(n: usize, faces: &BTreeSet<Face>) -> Result<MRSubalgebra> {
        let top = Face::top(n);
        if !faces.contains(&top) || faces.iter().any(|x| x.dim() != n) {
            return Err(Error::Precondition("face set must contain the top of L_n".into()));
        }
        let coatoms: Vec<&Face> = faces
            .iter()
            .filter(|x| **x != top && !faces.iter().any(|y| *y != top && y != *x && x.leq_raw(y)))
            .collect();
        let mut blocks = BTreeSet::new();
        for c in coatoms {
            blocks.insert(Block::new(c.fixed_mask(), c.minus_mask())?);
        }
        let candidate = MRSubalgebra::new(n, blocks)?;
        if candidate.materialize_set() == *faces {
            Ok(candidate)
        } else {
            Err(Error::Precondition("face set is not an MR-subalgebra".into()))
        }
    }
}

impl Ord for MRSubalgebra {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n
            .cmp(&other.n)
            .then(self.dimension().cmp(&other.dimension()))
            .then_with(|| self.blocks.cmp(&other.blocks))
    }
}

impl PartialOrd for MRSubalgebra {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MRSubalgebra {
    /// `{[1,2:+-],[3:+]}` with 1-based coordinates; `{}` is `{1}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (j, b) in self.blocks.iter().enumerate() {
            if j > 0 {
                write!(f, ",")?;
            }
            let coords: Vec<String> = mask_coords(b.support).map(|i| (i + 1).to_string()).collect();
            write!(f, "[{}:{}]", coords.join(","), b.pattern())?;
        }
        write!(f, "}}")
    }
}

#[derive(Serialize, Deserialize)]
struct BlockWire {
    coords: Vec<usize>,
    signs: String,
}

#[derive(Serialize, Deserialize)]
struct SubalgebraWire {
    n: usize,
    blocks: Vec<BlockWire>,
}

impl Serialize for MRSubalgebra {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        SubalgebraWire {
            n: self.n,
            blocks: self
                .blocks
                .iter()
                .map(|b| BlockWire {
                    coords: mask_coords(b.support).map(|i| i + 1).collect(),
                    signs: b.pattern(),
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MRSubalgebra {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let wire = SubalgebraWire::deserialize(deserializer)?;
        let mut blocks = Vec::new();
        for b in wire.blocks {
            if b.coords.len() != b.signs.chars().count() {
                return Err(D::Error::custom("coords and signs differ in length"));
            }
            let mut support = 0u32;
            let mut minus = 0u32;
            for (&c, s) in b.coords.iter().zip(b.signs.chars()) {
                if c == 0 || c > wire.n {
                    return Err(D::Error::custom(format!("coordinate {c} out of range")));
                }
                support |= 1 << (c - 1);
                match s {
                    '+' => {}
                    '-' | '\u{2212}' => minus |= 1 << (c - 1),
                    _ => return Err(D::Error::custom(format!("bad sign {s:?}"))),
                }
            }
            blocks.push(Block::new(support, minus).map_err(D::Error::custom)?);
        }
        MRSubalgebra::new(wire.n, blocks).map_err(D::Error::custom)
    }
}

/// The type `(t_1, …, t_n)`: `t_i` blocks of size `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TypeVector {
    /// `t[i - 1] = t_i`.
    pub t: Vec<usize>,
}

impl TypeVector {
    pub fn new(t: Vec<usize>) -> TypeVector {
        TypeVector { t }
    }

    pub fn n(&self) -> usize {
        self.t.len()
    }

    /// `r = Σ i·t_i`.
    pub fn r(&self) -> usize {
        self.t.iter().enumerate().map(|(i, &t)| (i + 1) * t).sum()
    }

    /// `k = Σ t_i`.
    pub fn k(&self) -> usize {
        self.t.iter().sum()
    }

    pub fn t_i(&self, i: usize) -> usize {
        self.t.get(i.wrapping_sub(1)).copied().unwrap_or(0)
    }

    pub fn validate(&self) -> Result<()> {
        if self.r() > self.n() {
            Err(Error::Precondition(format!(
                "type {self} has r = {} > n = {}",
                self.r(),
                self.n()
            )))
        } else {
            Ok(())
        }
    }

    /// Every type with `Σ i·t_i <= n`, in lexicographic order of `t`.
    pub fn all(n: usize) -> Vec<TypeVector> {
        fn go(n: usize, size: usize, budget: usize, cur: &mut Vec<usize>, out: &mut Vec<TypeVector>) {
            if size > n {
                out.push(TypeVector { t: cur.clone() });
                return;
            }
            for count in 0..=budget / size {
                cur[size - 1] = count;
                go(n, size + 1, budget - count * size, cur, out);
            }
            cur[size - 1] = 0;
        }
        let mut out = Vec::new();
        go(n, 1, n, &mut vec![0; n], &mut out);
        out.sort();
        out
    }
}

impl fmt::Display for TypeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.t.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `C_a`: the coatoms of `L_n` lying above `a`.
pub fn coatoms_above(a: &Face) -> Vec<Face> {
    Face::coatoms(a.dim()).into_iter().filter(|c| a.leq_raw(c)).collect()
}

/// Type computed from the coatoms: `2 t_i = |{a ∈ CoAt(A) : |C_a| = i}|`.
pub fn type_from_coatoms(n: usize, coatoms: &[Face]) -> Result<TypeVector> {
    let mut twice = vec![0usize; n];
    for a in coatoms {
        let size = coatoms_above(a).len();
        if size == 0 {
            return Err(Error::Precondition(format!("{a} is the top, not a coatom")));
        }
        twice[size - 1] += 1;
    }
    if twice.iter().any(|c| c % 2 == 1) {
        return Err(Error::Invariant("coatoms of a subalgebra come in antipodal pairs".into()));
    }
    Ok(TypeVector::new(twice.into_iter().map(|c| c / 2).collect()))
}

/// Least superset of `generators ∪ {top}` below `top` closed under join,
/// delta on comparable pairs, and caret.
pub fn closure_within(top: &Face, generators: &[Face]) -> Result<BTreeSet<Face>> {
    let mut set: BTreeSet<Face> = BTreeSet::new();
    set.insert(*top);
    for g in generators {
        if g.dim() != top.dim() || !g.leq_raw(top) {
            return Err(Error::Precondition(format!("generator {g} is not below {top}")));
        }
        set.insert(*g);
    }
    loop {
        let current: Vec<Face> = set.iter().copied().collect();
        let mut fresh = Vec::new();
        for x in &current {
            for y in &current {
                fresh.push(x.join_raw(y));
                fresh.push(x.caret_raw(y)?);
                if y.leq_raw(x) {
                    fresh.push(x.delta_raw(y));
                }
            }
        }
        let before = set.len();
        set.extend(fresh);
        if set.len() == before {
            return Ok(set);
        }
    }
}

/// The MR-subalgebra of `L_n` generated by `generators`.
pub fn generated_closure(generators: &[Face]) -> Result<BTreeSet<Face>> {
    let first = generators
        .first()
        .ok_or_else(|| Error::Precondition("generated_closure needs a generator".into()))?;
    closure_within(&Face::top(first.dim()), generators)
}

/// True when `set` is closed under join, delta and caret.
pub fn is_closed_set(set: &BTreeSet<Face>) -> bool {
    set.iter().all(|x| {
        set.iter().all(|y| {
            set.contains(&x.join_raw(y))
                && x.caret_raw(y).is_ok_and(|c| set.contains(&c))
                && (!y.leq_raw(x) || set.contains(&x.delta_raw(y)))
        })
    })
}

/// All set partitions of the coordinates in `mask`, as sorted block lists.
pub fn set_partitions(mask: CoordMask) -> Vec<Vec<CoordMask>> {
    let coords: Vec<usize> = mask_coords(mask).collect();
    let mut out = Vec::new();
    fn go(coords: &[usize], idx: usize, blocks: &mut Vec<CoordMask>, out: &mut Vec<Vec<CoordMask>>) {
        if idx == coords.len() {
            out.push(blocks.clone());
            return;
        }
        let bit = 1 << coords[idx];
        for j in 0..blocks.len() {
            blocks[j] |= bit;
            go(coords, idx + 1, blocks, out);
            blocks[j] &= !bit;
        }
        blocks.push(bit);
        go(coords, idx + 1, blocks, out);
        blocks.pop();
    }
    go(&coords, 0, &mut Vec::new(), &mut out);
    out
}

/// Every MR-subalgebra of `L_n`, duplicate-free, in canonical order.
pub fn enumerate_subalgebras(n: usize) -> Result<Vec<MRSubalgebra>> {
    check_range("structural subalgebra enumeration", n, 1, MAX_STRUCTURAL_N)?;
    let mut out = Vec::new();
    for support in 0..=full_mask(n) {
        for partition in set_partitions(support) {
            if partition.is_empty() {
                out.push(MRSubalgebra::bottom(n));
                continue;
            }
            // each block has 2^(|S|-1) canonical patterns
            let choices: Vec<Vec<Block>> = partition
                .iter()
                .map(|&s| {
                    let lowest = s & s.wrapping_neg();
                    let rest = s & !lowest;
                    subsets_of(rest).map(|m| Block { support: s, minus: m }).collect()
                })
                .collect();
            for combo in itertools::Itertools::multi_cartesian_product(choices.into_iter().map(Vec::into_iter)) {
                out.push(MRSubalgebra::new(n, combo)?);
            }
        }
    }
    out.sort();
    Ok(out)
}

pub(crate) fn subsets_of(mask: CoordMask) -> impl Iterator<Item = CoordMask> {
    // standard submask walk, including 0
    let mut sub = mask;
    let mut done = false;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let cur = sub;
        if sub == 0 {
            done = true;
        } else {
            sub = (sub - 1) & mask;
        }
        Some(cur)
    })
}

/// Oracle: the distinct subalgebras generated by sets of faces sharing one
/// fixed support (the empty set giving `{1}`), in sorted order.
pub fn enumerate_by_closure(n: usize) -> Result<Vec<BTreeSet<Face>>> {
    check_range("closure oracle enumeration", n, 1, MAX_CLOSURE_ORACLE_N)?;
    let top = Face::top(n);
    let mut found: BTreeSet<BTreeSet<Face>> = BTreeSet::new();
    found.insert(closure_within(&top, &[])?);
    for support in subsets_of(full_mask(n)) {
        let level: Vec<Face> = subsets_of(support)
            .map(|minus| Face::raw(n, support & !minus, minus))
            .collect();
        for pick in 1u64..1 << level.len() {
            let gens: Vec<Face> = level
                .iter()
                .enumerate()
                .filter(|(i, _)| pick >> i & 1 == 1)
                .map(|(_, v)| *v)
                .collect();
            found.insert(closure_within(&top, &gens)?);
        }
    }
    Ok(found.into_iter().collect())
}

/// Subalgebras grouped by type, in type order.
pub fn group_by_type(subalgebras: &[MRSubalgebra]) -> BTreeMap<TypeVector, Vec<MRSubalgebra>> {
    let mut groups: BTreeMap<TypeVector, Vec<MRSubalgebra>> = BTreeMap::new();
    for a in subalgebras {
        groups.entry(a.type_vector()).or_default().push(a.clone());
    }
    groups
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> Face {
        s.parse().unwrap()
    }

    fn block(coords: &[usize], signs: &str) -> Block {
        let mut support = 0;
        let mut minus = 0;
        for (&c, s) in coords.iter().zip(signs.chars()) {
            support |= 1 << c;
            if s == '-' {
                minus |= 1 << c;
            }
        }
        Block::new(support, minus).unwrap()
    }

    fn antidiagonal() -> MRSubalgebra {
        MRSubalgebra::new(2, [block(&[0, 1], "+-")]).unwrap()
    }

    #[test]
    fn block_canonical_sign() {
        assert_eq!(block(&[0, 1], "-+"), block(&[0, 1], "+-"));
        assert_eq!(block(&[1, 2], "--").pattern(), "++");
        assert!(Block::new(0, 0).is_err());
    }

    #[test]
    fn overlapping_blocks_rejected() {
        let r = MRSubalgebra::new(3, [block(&[0, 1], "++"), block(&[1], "+")]);
        assert!(r.is_err());
        assert!(MRSubalgebra::new(2, [block(&[2], "+")]).is_err());
    }

    #[test]
    fn materialize_examples() {
        assert_eq!(MRSubalgebra::bottom(3).materialize(), vec![Face::top(3)]);
        assert_eq!(
            antidiagonal().materialize_set(),
            BTreeSet::from([Face::top(2), f("+-"), f("-+")])
        );
        assert_eq!(MRSubalgebra::full(2).materialize().len(), 9);
    }

    #[test]
    fn closure_examples() {
        assert_eq!(generated_closure(&[Face::top(2)]).unwrap(), BTreeSet::from([Face::top(2)]));
        assert_eq!(
            generated_closure(&[f("+-")]).unwrap(),
            BTreeSet::from([Face::top(2), f("+-"), f("-+")])
        );
        assert_eq!(generated_closure(&[f("+*"), f("*+")]).unwrap().len(), 9);
        assert!(generated_closure(&[]).is_err());
    }

    #[test]
    fn type_examples() {
        let t = MRSubalgebra::bottom(3).type_vector();
        assert_eq!((t.r(), t.k()), (0, 0));
        let t = MRSubalgebra::full(3).type_vector();
        assert_eq!(t.t, vec![3, 0, 0]);
        assert_eq!((t.r(), t.k()), (3, 3));
        let t = antidiagonal().type_vector();
        assert_eq!(t.t, vec![0, 1]);
        assert_eq!((t.r(), t.k()), (2, 1));
        let from_coatoms = type_from_coatoms(2, &antidiagonal().coatoms()).unwrap();
        assert_eq!(from_coatoms, t);
    }

    #[test]
    fn includes_examples() {
        let axis = MRSubalgebra::new(2, [block(&[0], "+")]).unwrap();
        let full = MRSubalgebra::full(2);
        assert!(MRSubalgebra::bottom(2).includes_in(&antidiagonal()).unwrap());
        assert!(axis.includes_in(&full).unwrap());
        assert!(!antidiagonal().includes_in(&axis).unwrap());
        assert!(antidiagonal().includes_in(&full).unwrap());
        assert!(axis.includes_in(&MRSubalgebra::full(3)).is_err());
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_subalgebras(1).unwrap().len(), 2);
        assert_eq!(enumerate_subalgebras(2).unwrap().len(), 6);
        assert_eq!(enumerate_subalgebras(3).unwrap().len(), 24);
        assert_eq!(enumerate_subalgebras(4).unwrap().len(), 116);
        assert!(enumerate_subalgebras(0).is_err());
        assert!(enumerate_subalgebras(7).is_err());
    }

    #[test]
    fn type_2_in_l2_count() {
        let subs = enumerate_subalgebras(2).unwrap();
        let count = subs.iter().filter(|a| a.type_vector().t == vec![0, 1]).count();
        assert_eq!(count, 2);
    }

    #[test]
    fn set_partition_counts_are_bell_numbers() {
        let bell = [1, 1, 2, 5, 15, 52];
        for (n, &b) in bell.iter().enumerate() {
            assert_eq!(set_partitions(full_mask(n)).len(), b);
        }
    }

    #[test]
    fn face_set_round_trip() {
        for a in enumerate_subalgebras(3).unwrap() {
            let back = MRSubalgebra::from_face_set(3, &a.materialize_set()).unwrap();
            assert_eq!(back, a);
        }
        let not_closed = BTreeSet::from([Face::top(2), f("+-")]);
        assert!(MRSubalgebra::from_face_set(2, &not_closed).is_err());
    }

    #[test]
    fn all_types_small() {
        // partitions of 0..=3 into parts: 1 + 1 + 2 + 3
        assert_eq!(TypeVector::all(3).len(), 7);
        assert!(TypeVector::all(5).iter().all(|t| t.validate().is_ok()));
    }

    #[test]
    fn json_wire_format() {
        let json = serde_json::to_string(&antidiagonal()).unwrap();
        assert_eq!(json, r#"{"n":2,"blocks":[{"coords":[1,2],"signs":"+-"}]}"#);
        let back: MRSubalgebra = serde_json::from_str(&json).unwrap();
        assert_eq!(back, antidiagonal());
        assert!(serde_json::from_str::<MRSubalgebra>(r#"{"n":2,"blocks":[{"coords":[3],"signs":"+"}]}"#).is_err());
    }
}
