//! Automorphisms of `L_n` as signed permutations.
//!
//! Convention: signs act before the coordinate permutation, so coordinate
//! `perm[i]` of `φ(x)` is `signs[i] · x[i]`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use itertools::Itertools;
use num_bigint::BigUint;

use crate::error::{check_range, Error, Result};
use crate::face::{full_mask, mask_coords, Coord, CoordMask, Face};
use crate::numbers::{factorial, pow2};

/// Largest `n` for which the group is enumerated (`2^6 · 6! = 46080`).
pub const MAX_ENUM_N: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPerm {
    perm: Vec<usize>,
    /// bit `i` set when `signs[i] = -1`
    negate: CoordMask,
}

impl SignedPerm {
    pub fn new(perm: Vec<usize>, signs: &[i8]) -> Result<SignedPerm> {
        let n = perm.len();
        if signs.len() != n {
            return Err(Error::DimensionMismatch {
                left: n,
                right: signs.len(),
            });
        }
        let distinct: BTreeSet<usize> = perm.iter().copied().collect();
        if distinct.len() != n || perm.iter().any(|&p| p >= n) {
            return Err(Error::Precondition(format!("{perm:?} is not a permutation")));
        }
        let mut negate = 0;
        for (i, &s) in signs.iter().enumerate() {
            match s {
                1 => {}
                -1 => negate |= 1 << i,
                _ => return Err(Error::Precondition(format!("sign {s} is not ±1"))),
            }
        }
        Ok(SignedPerm { perm, negate })
    }

    pub fn identity(n: usize) -> SignedPerm {
        SignedPerm {
            perm: (0..n).collect(),
            negate: 0,
        }
    }

    /// Flips the signs in `mask`, no permutation.
    pub fn flips(n: usize, mask: CoordMask) -> SignedPerm {
        SignedPerm {
            perm: (0..n).collect(),
            negate: mask & full_mask(n),
        }
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn signs(&self) -> Vec<i8> {
        (0..self.dim()).map(|i| if self.negate >> i & 1 == 1 { -1 } else { 1 }).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.negate == 0 && self.perm.iter().enumerate().all(|(i, &p)| i == p)
    }

    pub fn apply(&self, x: &Face) -> Result<Face> {
        if x.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: x.dim(),
            });
        }
        Ok(self.apply_raw(x))
    }

    pub(crate) fn apply_raw(&self, x: &Face) -> Face {
        let mut plus = 0;
        let mut minus = 0;
        for (i, &target) in self.perm.iter().enumerate() {
            let (p, m) = (x.plus_mask() >> i & 1, x.minus_mask() >> i & 1);
            let (p, m) = if self.negate >> i & 1 == 1 { (m, p) } else { (p, m) };
            plus |= p << target;
            minus |= m << target;
        }
        Face::raw(self.dim(), plus, minus)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &SignedPerm) -> Result<SignedPerm> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        let mut perm = vec![0; self.dim()];
        let mut negate = 0;
        for i in 0..self.dim() {
            let mid = other.perm[i];
            perm[i] = self.perm[mid];
            if (other.negate >> i ^ self.negate >> mid) & 1 == 1 {
                negate |= 1 << i;
            }
        }
        Ok(SignedPerm { perm, negate })
    }

    pub fn inverse(&self) -> SignedPerm {
        let mut perm = vec![0; self.dim()];
        let mut negate = 0;
        for (i, &p) in self.perm.iter().enumerate() {
            perm[p] = i;
            if self.negate >> i & 1 == 1 {
                negate |= 1 << p;
            }
        }
        SignedPerm { perm, negate }
    }

    /// Restriction to the coatoms, in canonical coatom order.
    pub fn on_coatoms(&self) -> Vec<Face> {
        Face::coatoms(self.dim()).iter().map(|c| self.apply_raw(c)).collect()
    }
}

impl fmt::Display for SignedPerm {
    /// `π=[2,1,3]; s=[+,-,+]`, one-line notation with 1-based values.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let perm: Vec<String> = self.perm.iter().map(|p| (p + 1).to_string()).collect();
        let signs: Vec<&str> = self.signs().iter().map(|&s| if s < 0 { "-" } else { "+" }).collect();
        write!(f, "π=[{}]; s=[{}]", perm.join(","), signs.join(","))
    }
}

/// All `2^n · n!` automorphisms, lexicographic in (one-line permutation,
/// sign vector with `+` before `-`).
pub fn enumerate_aut(n: usize) -> Result<impl Iterator<Item = SignedPerm>> {
    check_range("automorphism enumeration", n, 1, MAX_ENUM_N)?;
    Ok((0..n).permutations(n).flat_map(move |perm| {
        (0u32..1 << n).map(move |code| {
            // coordinate 0 is the most significant bit of the sign word
            let negate = (0..n).fold(0, |m, i| m | (code >> (n - 1 - i) & 1) << i);
            SignedPerm {
                perm: perm.clone(),
                negate,
            }
        })
    }))
}

/// Closure of a generating set under composition.
pub fn generated_group(generators: &[SignedPerm]) -> Result<BTreeSet<SignedPerm>> {
    let n = generators
        .first()
        .map(SignedPerm::dim)
        .ok_or_else(|| Error::Precondition("need at least one generator".into()))?;
    let mut group = BTreeSet::from([SignedPerm::identity(n)]);
    let mut frontier = vec![SignedPerm::identity(n)];
    while let Some(g) = frontier.pop() {
        for s in generators {
            let h = s.compose(&g)?;
            if group.insert(h.clone()) {
                frontier.push(h);
            }
        }
    }
    Ok(group)
}

/// Adjacent transpositions plus a single sign flip.
pub fn standard_generators(n: usize) -> Vec<SignedPerm> {
    let mut gens: Vec<SignedPerm> = (0..n.saturating_sub(1))
        .map(|i| {
            let mut perm: Vec<usize> = (0..n).collect();
            perm.swap(i, i + 1);
            SignedPerm { perm, negate: 0 }
        })
        .collect();
    gens.push(SignedPerm::flips(n, 1));
    gens
}

/// The unique automorphism restricting to `m` on the coatoms, for a
/// bijection of the coatoms that commutes with `Δ(1, ·)`.
pub fn extend_coatom_map(n: usize, m: &BTreeMap<Face, Face>) -> Result<SignedPerm> {
    let coatoms = Face::coatoms(n);
    let keys: Vec<Face> = m.keys().copied().collect();
    if keys != coatoms {
        return Err(Error::Precondition("map must be defined on exactly the coatoms".into()));
    }
    let values: BTreeSet<Face> = m.values().copied().collect();
    if values.len() != coatoms.len() || values.iter().any(|v| !v.is_coatom() || v.dim() != n) {
        return Err(Error::Precondition("map is not a bijection of the coatoms".into()));
    }
    for (c, v) in m {
        if m[&c.antipode()] != v.antipode() {
            return Err(Error::Precondition(format!("map does not commute with Δ(1, ·) at {c}")));
        }
    }
    let mut perm = vec![0; n];
    let mut negate = 0;
    for i in 0..n {
        let image = m[&Face::raw(n, 1 << i, 0)];
        perm[i] = image.fixed_mask().trailing_zeros() as usize;
        if image.minus_mask() != 0 {
            negate |= 1 << i;
        }
    }
    let phi = SignedPerm { perm, negate };
    debug_assert!(coatoms.iter().all(|c| phi.apply_raw(c) == m[c]));
    Ok(phi)
}

/// An automorphism taking `v1` to `v2`, for faces of equal corank.
pub fn corank_transitive_witness(v1: &Face, v2: &Face) -> Result<SignedPerm> {
    if v1.dim() != v2.dim() {
        return Err(Error::DimensionMismatch {
            left: v1.dim(),
            right: v2.dim(),
        });
    }
    if v1.corank() != v2.corank() {
        return Err(Error::Precondition(format!(
            "coranks differ: {} has {}, {} has {}",
            v1,
            v1.corank(),
            v2,
            v2.corank()
        )));
    }
    let n = v1.dim();
    let mut perm = vec![0; n];
    let mut negate = 0;
    let pairs = mask_coords(v1.fixed_mask())
        .zip(mask_coords(v2.fixed_mask()))
        .chain(mask_coords(v1.free_mask()).zip(mask_coords(v2.free_mask())));
    for (i, j) in pairs {
        perm[i] = j;
        let fixed = v1.coord(i) != Coord::Free;
        if fixed && v1.coord(i) != v2.coord(j) {
            negate |= 1 << i;
        }
    }
    Ok(SignedPerm { perm, negate })
}

/// Extends an isomorphism `]←, c1] → ]←, c2]` between downsets of two
/// coatoms to an automorphism of `L_n`. The isomorphism is given as a
/// signed permutation of the `n - 1` free coordinates, both listed in
/// increasing order.
pub fn extend_downset_iso(c1: &Face, c2: &Face, sub: &SignedPerm) -> Result<SignedPerm> {
    if !c1.is_coatom() || !c2.is_coatom() || c1.dim() != c2.dim() {
        return Err(Error::Precondition("both faces must be coatoms of the same L_n".into()));
    }
    let n = c1.dim();
    if sub.dim() + 1 != n {
        return Err(Error::DimensionMismatch {
            left: sub.dim() + 1,
            right: n,
        });
    }
    let free1: Vec<usize> = mask_coords(c1.free_mask()).collect();
    let free2: Vec<usize> = mask_coords(c2.free_mask()).collect();
    let i1 = c1.fixed_mask().trailing_zeros() as usize;
    let i2 = c2.fixed_mask().trailing_zeros() as usize;
    let mut perm = vec![0; n];
    let mut negate = 0;
    perm[i1] = i2;
    if c1.coord(i1) != c2.coord(i2) {
        negate |= 1 << i1;
    }
    for (j, &src) in free1.iter().enumerate() {
        perm[src] = free2[sub.perm[j]];
        if sub.negate >> j & 1 == 1 {
            negate |= 1 << src;
        }
    }
    Ok(SignedPerm { perm, negate })
}

fn validate_coatom_partition(n: usize, blocks: &[Vec<Face>]) -> Result<()> {
    let mut seen = BTreeSet::new();
    for block in blocks {
        let set: BTreeSet<Face> = block.iter().copied().collect();
        if set.is_empty() || set.len() != block.len() {
            return Err(Error::Precondition("blocks must be nonempty sets".into()));
        }
        for c in &set {
            if !c.is_coatom() || c.dim() != n {
                return Err(Error::Precondition(format!("{c} is not a coatom of L_{n}")));
            }
            if !set.contains(&c.antipode()) {
                return Err(Error::Precondition(format!("block is not Δ-closed at {c}")));
            }
            if !seen.insert(*c) {
                return Err(Error::Precondition(format!("{c} appears in two blocks")));
            }
        }
    }
    if seen.len() != 2 * n {
        return Err(Error::Precondition("blocks do not cover the coatoms".into()));
    }
    Ok(())
}

/// `|Aut_P| = ∏_{X ∈ P} 2^{|X|/2} (|X|/2)!` for a Δ-closed partition `P`
/// of the coatoms.
pub fn aut_partition_product(n: usize, blocks: &[Vec<Face>]) -> Result<BigUint> {
    validate_coatom_partition(n, blocks)?;
    Ok(blocks
        .iter()
        .map(|b| pow2(b.len() / 2) * factorial(b.len() / 2))
        .product())
}

/// Brute-force `|Aut_P|`: automorphisms mapping every block onto itself.
pub fn aut_partition_brute(n: usize, blocks: &[Vec<Face>]) -> Result<u64> {
    validate_coatom_partition(n, blocks)?;
    let sets: Vec<BTreeSet<Face>> = blocks.iter().map(|b| b.iter().copied().collect()).collect();
    Ok(enumerate_aut(n)?
        .filter(|phi| sets.iter().all(|s| s.iter().all(|c| s.contains(&phi.apply_raw(c)))))
        .count() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> Face {
        s.parse().unwrap()
    }

    #[test]
    fn apply_examples() {
        for x in Face::all(3) {
            assert_eq!(SignedPerm::identity(3).apply(&x).unwrap(), x);
        }
        let flip_all = SignedPerm::flips(3, 0b111);
        assert_eq!(flip_all.apply(&Face::top(3)).unwrap(), Face::top(3));
        for v in Face::vertices(3) {
            assert_eq!(flip_all.apply(&v).unwrap(), Face::top(3).delta(&v).unwrap());
        }
        assert!(SignedPerm::identity(2).apply(&Face::top(3)).is_err());
    }

    #[test]
    fn convention_signs_then_permute() {
        // coordinate 1 carries -x_0, coordinate 0 carries x_1
        let phi = SignedPerm::new(vec![1, 0], &[-1, 1]).unwrap();
        assert_eq!(phi.apply(&f("+*")).unwrap(), f("*-"));
        assert_eq!(phi.to_string(), "π=[2,1]; s=[-,+]");
    }

    #[test]
    fn compose_and_inverse() {
        let group: Vec<SignedPerm> = enumerate_aut(3).unwrap().collect();
        for phi in group.iter().step_by(5) {
            assert!(phi.compose(&phi.inverse()).unwrap().is_identity());
            assert!(phi.inverse().compose(phi).unwrap().is_identity());
            assert_eq!(SignedPerm::identity(3).compose(phi).unwrap(), *phi);
            for psi in group.iter().step_by(7) {
                let both = phi.compose(psi).unwrap();
                for x in Face::all(3) {
                    assert_eq!(both.apply(&x).unwrap(), phi.apply(&psi.apply(&x).unwrap()).unwrap());
                }
            }
        }
    }

    #[test]
    fn generated_by_standard_generators() {
        assert_eq!(generated_group(&standard_generators(3)).unwrap().len(), 48);
    }

    #[test]
    fn group_orders() {
        assert_eq!(enumerate_aut(1).unwrap().count(), 2);
        assert_eq!(enumerate_aut(2).unwrap().count(), 8);
        assert_eq!(enumerate_aut(5).unwrap().count(), 3840);
        assert!(enumerate_aut(0).is_err());
        assert!(enumerate_aut(7).is_err());
    }

    #[test]
    fn enumeration_is_sorted_and_distinct() {
        let all: Vec<SignedPerm> = enumerate_aut(3).unwrap().collect();
        assert!(all.windows(2).all(|w| (w[0].perm(), w[0].signs().iter().map(|&s| s < 0).collect::<Vec<_>>())
            < (w[1].perm(), w[1].signs().iter().map(|&s| s < 0).collect::<Vec<_>>())));
    }

    #[test]
    fn extend_coatom_map_examples() {
        let coatoms = Face::coatoms(2);
        let identity: BTreeMap<Face, Face> = coatoms.iter().map(|c| (*c, *c)).collect();
        assert!(extend_coatom_map(2, &identity).unwrap().is_identity());

        let antipodal: BTreeMap<Face, Face> = coatoms.iter().map(|c| (*c, c.antipode())).collect();
        assert_eq!(extend_coatom_map(2, &antipodal).unwrap(), SignedPerm::flips(2, 0b11));

        let swap: BTreeMap<Face, Face> = coatoms
            .iter()
            .map(|c| {
                let t = Face::new(2, (c.plus_mask() & 1) << 1 | c.plus_mask() >> 1, (c.minus_mask() & 1) << 1 | c.minus_mask() >> 1)
                    .unwrap();
                (*c, t)
            })
            .collect();
        assert_eq!(
            extend_coatom_map(2, &swap).unwrap(),
            SignedPerm::new(vec![1, 0], &[1, 1]).unwrap()
        );

        let mut broken = identity.clone();
        broken.insert(f("+*"), f("*+"));
        assert!(extend_coatom_map(2, &broken).is_err());
    }

    #[test]
    fn witness_examples() {
        let w = corank_transitive_witness(&f("+*"), &f("+*")).unwrap();
        assert!(w.is_identity());
        let w = corank_transitive_witness(&f("+*"), &f("-*")).unwrap();
        assert_eq!(w, SignedPerm::flips(2, 0b01));
        let w = corank_transitive_witness(&f("+*"), &f("*-")).unwrap();
        assert_eq!(w.apply(&f("+*")).unwrap(), f("*-"));
        assert!(corank_transitive_witness(&f("+*"), &f("+-")).is_err());
    }

    #[test]
    fn partition_product_examples() {
        for n in 1..=3 {
            let single = vec![Face::coatoms(n)];
            assert_eq!(aut_partition_product(n, &single).unwrap(), crate::numbers::hyperoctahedral_order(n));
            let pairs: Vec<Vec<Face>> = (0..n)
                .map(|i| vec![Face::raw(n, 0, 1 << i), Face::raw(n, 1 << i, 0)])
                .collect();
            assert_eq!(aut_partition_product(n, &pairs).unwrap(), pow2(n));
            assert_eq!(aut_partition_brute(n, &pairs).unwrap(), 1 << n);
        }
        let mixed = vec![
            vec![f("-**"), f("+**"), f("*-*"), f("*+*")],
            vec![f("**-"), f("**+")],
        ];
        assert_eq!(aut_partition_product(3, &mixed).unwrap(), BigUint::from(16u32));
        assert_eq!(aut_partition_brute(3, &mixed).unwrap(), 16);
        let not_closed = vec![vec![f("-**")], vec![f("+**"), f("*-*"), f("*+*"), f("**-"), f("**+")]];
        assert!(aut_partition_product(3, &not_closed).is_err());
    }
}
