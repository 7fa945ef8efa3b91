//! Locator pairs: naming subalgebras by an implication sublattice of the
//! Boolean interval `[0, 1]` above the all-minus vertex plus a locating face.
//!
//! A face in `[0, 1]` has only minus coordinates, so it is determined by its
//! set of free coordinates; that set is its value in the Boolean lattice
//! `[0, 1] ≅ ℘(n)`. An implication sublattice is stored as the fixed support
//! `M` of its least element together with a partition of `M`: its members
//! are the faces whose fixed support is a union of partition blocks.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{generated_closure, set_partitions, Block, MRSubalgebra, TypeVector};
use crate::error::{check_range, Error, Result};
use crate::face::{full_mask, mask_coords, CoordMask, Face, MAX_DIM};

/// Boolean sum of `c ∨ a` and `d ∨ a` in the interval `[a, 1]`.
pub fn plus_a(c: &Face, d: &Face, a: &Face) -> Result<Face> {
    for x in [c, d] {
        if x.dim() != a.dim() {
            return Err(Error::DimensionMismatch {
                left: x.dim(),
                right: a.dim(),
            });
        }
    }
    // in [a, 1], c ∨ a is the set of a-fixed coordinates where c differs from a
    let released = |x: &Face| a.fixed_mask() & !(x.join_raw(a).fixed_mask());
    let sum = released(c) ^ released(d);
    Ok(Face::raw(a.dim(), a.plus_mask() & !sum, a.minus_mask() & !sum))
}

/// An implication sublattice of `[0, 1]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ImpSublattice {
    n: usize,
    support: CoordMask,
    partition: Vec<CoordMask>,
}

impl ImpSublattice {
    pub fn new(n: usize, support: CoordMask, partition: impl IntoIterator<Item = CoordMask>) -> Result<ImpSublattice> {
        check_range("implication sublattice dimension", n, 1, MAX_DIM)?;
        let mut partition: Vec<CoordMask> = partition.into_iter().collect();
        let mut seen = 0;
        for &b in &partition {
            if b == 0 || b & seen != 0 {
                return Err(Error::Precondition("partition blocks must be nonempty and disjoint".into()));
            }
            seen |= b;
        }
        if seen != support || support & !full_mask(n) != 0 {
            return Err(Error::Precondition(format!(
                "partition must cover the support {support:#b} within {n} coordinates"
            )));
        }
        partition.sort_by_key(|b| b.trailing_zeros());
        Ok(ImpSublattice { n, support, partition })
    }

    /// `{1}`.
    pub fn bottom(n: usize) -> ImpSublattice {
        ImpSublattice {
            n,
            support: 0,
            partition: Vec::new(),
        }
    }

    /// The whole interval `[0, 1]`.
    pub fn full(n: usize) -> ImpSublattice {
        ImpSublattice {
            n,
            support: full_mask(n),
            partition: (0..n).map(|i| 1 << i).collect(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn support(&self) -> CoordMask {
        self.support
    }

    pub fn partition(&self) -> &[CoordMask] {
        &self.partition
    }

    /// Number of atoms (equivalently coatoms) of the sublattice.
    pub fn dimension(&self) -> usize {
        self.partition.len()
    }

    /// True when the least element is `0`, i.e. a Boolean subalgebra of `[0, 1]`.
    pub fn is_boolean(&self) -> bool {
        self.support == full_mask(self.n)
    }

    /// `t_i` = number of partition blocks of size `i`.
    pub fn type_vector(&self) -> TypeVector {
        let mut t = vec![0; self.n];
        for b in &self.partition {
            t[b.count_ones() as usize - 1] += 1;
        }
        TypeVector::new(t)
    }

    pub fn min_face(&self) -> Face {
        Face::raw(self.n, 0, self.support)
    }

    pub fn contains(&self, x: &Face) -> bool {
        x.dim() == self.n
            && x.plus_mask() == 0
            && x.fixed_mask() & !self.support == 0
            && self
                .partition
                .iter()
                .all(|&b| x.fixed_mask() & b == 0 || x.fixed_mask() & b == b)
    }

    pub fn materialize(&self) -> BTreeSet<Face> {
        (0u64..1 << self.partition.len())
            .map(|pick| {
                let fixed = self
                    .partition
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| pick >> j & 1 == 1)
                    .fold(0, |m, (_, &b)| m | b);
                Face::raw(self.n, 0, fixed)
            })
            .collect()
    }

    /// Structural inclusion of the member sets.
    pub fn is_subset(&self, other: &ImpSublattice) -> bool {
        self.n == other.n
            && self.partition.iter().all(|&s| {
                s & !other.support == 0 && other.partition.iter().all(|&t| t & s == 0 || t & s == t)
            })
    }

    /// Refines the partition by the free set of `c`: the sublattice of
    /// `[min B, 1]` generated by `B ∪ {c}`.
    pub fn refine_by(&self, c: &Face) -> ImpSublattice {
        let free = c.free_mask();
        let mut partition: Vec<CoordMask> = self
            .partition
            .iter()
            .flat_map(|&b| [b & free, b & !free])
            .filter(|&b| b != 0)
            .collect();
        partition.sort_by_key(|b| b.trailing_zeros());
        ImpSublattice {
            n: self.n,
            support: self.support,
            partition,
        }
    }

    /// Every implication sublattice of `[0, 1]`, sorted.
    pub fn enumerate(n: usize) -> Result<Vec<ImpSublattice>> {
        check_range("implication sublattice enumeration", n, 1, 12)?;
        let mut out = Vec::new();
        for support in 0..=full_mask(n) {
            for partition in set_partitions(support) {
                out.push(ImpSublattice::new(n, support, partition)?);
            }
        }
        out.sort();
        Ok(out)
    }
}

impl fmt::Display for ImpSublattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks: Vec<String> = self
            .partition
            .iter()
            .map(|&b| {
                let c: Vec<String> = mask_coords(b).map(|i| (i + 1).to_string()).collect();
                format!("[{}]", c.join(","))
            })
            .collect();
        write!(f, "{{{}}}", blocks.join(","))
    }
}

#[derive(Serialize, Deserialize)]
struct ImpWire {
    support: Vec<usize>,
    partition: Vec<Vec<usize>>,
}

fn to_wire(b: &ImpSublattice) -> ImpWire {
    ImpWire {
        support: mask_coords(b.support).map(|i| i + 1).collect(),
        partition: b.partition.iter().map(|&p| mask_coords(p).map(|i| i + 1).collect()).collect(),
    }
}

fn from_wire(n: usize, w: ImpWire) -> Result<ImpSublattice> {
    let mask = |coords: &[usize]| -> Result<CoordMask> {
        coords.iter().try_fold(0u32, |m, &c| {
            if c == 0 || c > n {
                Err(Error::Precondition(format!("coordinate {c} out of range")))
            } else {
                Ok(m | 1 << (c - 1))
            }
        })
    };
    let support = mask(&w.support)?;
    let partition = w.partition.iter().map(|p| mask(p)).collect::<Result<Vec<_>>>()?;
    ImpSublattice::new(n, support, partition)
}

/// Boolean implication `x → y = ¬x ∨ y` on faces of `[0, 1]`.
pub fn implies(x: &Face, y: &Face) -> Face {
    let full = full_mask(x.dim());
    let free = (full & !x.free_mask()) | y.free_mask();
    Face::raw(x.dim(), 0, full & !free)
}

/// Boolean meet on faces of `[0, 1]`.
pub fn boolean_meet(x: &Face, y: &Face) -> Face {
    let free = x.free_mask() & y.free_mask();
    Face::raw(x.dim(), 0, full_mask(x.dim()) & !free)
}

/// Oracle: closure of a subset of `[0, 1]` under `→` and `∧`.
pub fn implication_closure(generators: &BTreeSet<Face>) -> BTreeSet<Face> {
    let mut set = generators.clone();
    loop {
        let current: Vec<Face> = set.iter().copied().collect();
        let before = set.len();
        for x in &current {
            for y in &current {
                set.insert(implies(x, y));
                set.insert(boolean_meet(x, y));
            }
        }
        if set.len() == before {
            return set;
        }
    }
}

/// A locator pair `⟨c, B⟩` with `c` in `[0, 1]` and `c >= min B`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LocatorPair {
    c: Face,
    b: ImpSublattice,
}

impl LocatorPair {
    pub fn new(c: Face, b: ImpSublattice) -> Result<LocatorPair> {
        if c.dim() != b.n {
            return Err(Error::DimensionMismatch {
                left: c.dim(),
                right: b.n,
            });
        }
        if c.plus_mask() != 0 {
            return Err(Error::Precondition(format!("locating face {c} is not in [0, 1]")));
        }
        if !b.min_face().leq_raw(&c) {
            return Err(Error::Precondition(format!("locating face {c} is not above min B")));
        }
        Ok(LocatorPair { c, b })
    }

    pub fn c(&self) -> &Face {
        &self.c
    }

    pub fn b(&self) -> &ImpSublattice {
        &self.b
    }

    /// The vertex `a = Δ(c, min B)` of the located subalgebra.
    pub fn anchor(&self) -> Face {
        self.c.delta_raw(&self.b.min_face())
    }

    /// The located subalgebra: each block of `B` carries the signs of the
    /// anchor vertex.
    pub fn locate(&self) -> MRSubalgebra {
        let a = self.anchor();
        let blocks = self.b.partition.iter().map(|&s| {
            Block::new(s, a.minus_mask() & s).expect("partition blocks are nonempty")
        });
        MRSubalgebra::new(self.b.n, blocks).expect("partition blocks are disjoint")
    }

    /// Oracle form of [`LocatorPair::locate`]: move `B` to the anchor with
    /// the translate map and close.
    pub fn locate_by_closure(&self) -> Result<BTreeSet<Face>> {
        let a = self.anchor();
        let image = self
            .b
            .materialize()
            .iter()
            .map(|x| a.translate_raw(x))
            .collect::<Result<Vec<_>>>()?;
        generated_closure(&image)
    }

    /// Locator of `A` at its least vertex in canonical face order.
    pub fn locator_of(a: &MRSubalgebra) -> LocatorPair {
        let n = a.ambient_dim();
        let vertex = a.vertices()[0];
        let base = Face::base_vertex(n);
        let c = base.join_raw(&vertex);
        let b = ImpSublattice {
            n,
            support: a.support(),
            partition: a.blocks().iter().map(Block::support).collect(),
        };
        LocatorPair { c, b }
    }

    /// `p1 <= p2` iff `B1 ⊆ B2` and `c1 +_{min B1} c2 ∈ B2`.
    pub fn pair_leq(&self, other: &LocatorPair) -> Result<bool> {
        if self.b.n != other.b.n {
            return Err(Error::DimensionMismatch {
                left: self.b.n,
                right: other.b.n,
            });
        }
        Ok(self.b.is_subset(&other.b) && other.b.contains(&plus_a(&self.c, &other.c, &self.b.min_face())?))
    }

    pub fn pair_equiv(&self, other: &LocatorPair) -> Result<bool> {
        Ok(self.pair_leq(other)? && other.pair_leq(self)?)
    }

    /// `⟨c, B*⟩`.
    pub fn pair_closure(&self) -> LocatorPair {
        LocatorPair {
            c: self.c,
            b: self.b.refine_by(&self.c),
        }
    }

    pub fn is_closed(&self) -> bool {
        self.b.contains(&self.c)
    }

    /// Every locator pair of `L_n`.
    pub fn enumerate(n: usize) -> Result<Vec<LocatorPair>> {
        let mut out = Vec::new();
        for b in ImpSublattice::enumerate(n)? {
            let min = b.min_face();
            // c ranges over [min B, 1]: release any subset of the support
            for released in super::subsets_of(b.support) {
                let c = Face::raw(n, 0, min.minus_mask() & !released);
                out.push(LocatorPair { c, b: b.clone() });
            }
        }
        out.sort();
        Ok(out)
    }
}

impl fmt::Display for LocatorPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨{}, {}⟩", self.c, self.b)
    }
}

#[derive(Serialize, Deserialize)]
struct PairWire {
    c: Face,
    #[serde(rename = "B")]
    b: ImpWire,
}

impl Serialize for LocatorPair {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        PairWire {
            c: self.c,
            b: to_wire(&self.b),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LocatorPair {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let wire = PairWire::deserialize(deserializer)?;
        let b = from_wire(wire.c.dim(), wire.b).map_err(D::Error::custom)?;
        LocatorPair::new(wire.c, b).map_err(D::Error::custom)
    }
}

/// The closure operator on subalgebras induced by `⟨c, B⟩ ↦ ⟨c, B*⟩`: each
/// block splits into its plus part and its minus part.
pub fn subalgebra_closure(a: &MRSubalgebra) -> MRSubalgebra {
    LocatorPair::locator_of(a).pair_closure().locate()
}
