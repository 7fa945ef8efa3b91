//! Orbits, stabilizers, freezers and derangements of MR-subalgebras.
//!
//! `Stab(A)` is the setwise stabilizer (`φ[A] = A`), `Fr(A)` the pointwise
//! one (`φ↾A = id`), and `ρ: Stab(A) → Aut(A)` is restriction.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::aut::{enumerate_aut, SignedPerm};
use crate::error::{check_range, Error, Result};
use crate::face::Face;
use crate::mobius::mr_poset;
use crate::numbers::{binomial, factorial, hyperoctahedral_order, pow2};
use crate::subalgebra::{enumerate_subalgebras, is_closed_set, Block, MRSubalgebra, TypeVector};

/// Seed for the reproducible subalgebra sample at `n = 4`.
pub const DEFAULT_SEED: u64 = 20_240_917;
pub const MAX_BRUTE_N: usize = 4;
pub const MAX_DIRECT_N: usize = 5;
pub const MAX_FORMULA_N: usize = 32;

fn check_type(t: &TypeVector, n: usize) -> Result<()> {
    check_range("census formulas", n, 0, MAX_FORMULA_N)?;
    if t.t.iter().enumerate().any(|(i, &c)| c > 0 && i >= n) || t.r() > n {
        return Err(Error::Precondition(format!("type {t} is not valid for n = {n}")));
    }
    Ok(())
}

/// `∏ (i!)^{t_i}`.
fn block_symmetries(t: &TypeVector) -> BigUint {
    t.t.iter()
        .enumerate()
        .map(|(i, &c)| factorial(i + 1).pow(c as u32))
        .product()
}

/// `∏ t_i!`.
fn block_permutations(t: &TypeVector) -> BigUint {
    t.t.iter().map(|&c| factorial(c)).product()
}

/// `2^{r-k} C(n,r) r! / ∏ (i!)^{t_i} t_i!`.
pub fn orbit_size_formula(t: &TypeVector, n: usize) -> Result<BigUint> {
    check_type(t, n)?;
    let (r, k) = (t.r(), t.k());
    let numerator = pow2(r - k) * binomial(n, r) * factorial(r);
    let denominator = block_symmetries(t) * block_permutations(t);
    if &numerator % &denominator != BigUint::zero() {
        return Err(Error::Invariant(format!("orbit size for type {t} is not an integer")));
    }
    Ok(numerator / denominator)
}

/// `2^{n+k-r} (n-r)! ∏ (i!)^{t_i} t_i!`.
pub fn stab_size_formula(t: &TypeVector, n: usize) -> Result<BigUint> {
    check_type(t, n)?;
    let (r, k) = (t.r(), t.k());
    Ok(pow2(n + k - r) * factorial(n - r) * block_symmetries(t) * block_permutations(t))
}

/// `2^{n-r} (n-r)! ∏ (i!)^{t_i}`.
pub fn fr_size_formula(t: &TypeVector, n: usize) -> Result<BigUint> {
    check_type(t, n)?;
    let r = t.r();
    Ok(pow2(n - r) * factorial(n - r) * block_symmetries(t))
}

/// `2^k ∏ t_i!`.
pub fn im_rho_formula(t: &TypeVector, n: usize) -> Result<BigUint> {
    check_type(t, n)?;
    Ok(pow2(t.k()) * block_permutations(t))
}

/// `|Fr(A)|` counted the second way: automorphisms with `φ[C_a] = C_a`
/// for the coatoms above an `A`-vertex `a`, acting trivially on each
/// `A`-block and arbitrarily on the leftover coatoms `D`.
pub fn fr_size_via_leftover(t: &TypeVector, n: usize) -> Result<BigUint> {
    check_type(t, n)?;
    let leftover = n - t.r();
    Ok(hyperoctahedral_order(leftover) * block_symmetries(t))
}

/// The image `φ[A]`, computed on blocks.
pub fn act_on_subalgebra(phi: &SignedPerm, a: &MRSubalgebra) -> Result<MRSubalgebra> {
    if phi.dim() != a.ambient_dim() {
        return Err(Error::DimensionMismatch {
            left: phi.dim(),
            right: a.ambient_dim(),
        });
    }
    let signs = phi.signs();
    let blocks = a.blocks().iter().map(|b| {
        let mut support = 0;
        let mut minus = 0;
        for i in 0..phi.dim() {
            if b.support() >> i & 1 == 0 {
                continue;
            }
            let j = phi.perm()[i];
            support |= 1 << j;
            if (b.minus() >> i & 1 == 1) != (signs[i] < 0) {
                minus |= 1 << j;
            }
        }
        Block::new(support, minus)
    });
    MRSubalgebra::new(a.ambient_dim(), blocks.collect::<Result<Vec<_>>>()?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BruteCounts {
    pub orbit: u64,
    pub stab: u64,
    pub fr: u64,
    pub im_rho: u64,
}

#[derive(Default)]
struct Tally {
    images: BTreeSet<Vec<Face>>,
    stab: u64,
    fr: u64,
    restrictions: BTreeSet<Vec<Face>>,
}

impl Tally {
    fn merge(mut self, other: Tally) -> Tally {
        self.images.extend(other.images);
        self.restrictions.extend(other.restrictions);
        self.stab += other.stab;
        self.fr += other.fr;
        self
    }
}

/// Orbit, stabilizer, freezer and `Im(ρ)` sizes by running every
/// automorphism over the faces of `A`.
pub fn brute_counts(a: &MRSubalgebra) -> Result<BruteCounts> {
    let n = a.ambient_dim();
    check_range("brute-force census", n, 1, MAX_BRUTE_N)?;
    let faces = a.materialize();
    let set: BTreeSet<Face> = faces.iter().copied().collect();
    let group: Vec<SignedPerm> = enumerate_aut(n)?.collect();
    let tally = group
        .par_iter()
        .fold(Tally::default, |mut acc, phi| {
            let images: Vec<Face> = faces.iter().map(|x| phi.apply_raw(x)).collect();
            let mut sorted = images.clone();
            sorted.sort();
            if sorted.iter().zip(&set).all(|(x, y)| x == y) {
                acc.stab += 1;
                if images == faces {
                    acc.fr += 1;
                }
                acc.restrictions.insert(images);
            }
            acc.images.insert(sorted);
            acc
        })
        .reduce(Tally::default, Tally::merge);
    Ok(BruteCounts {
        orbit: tally.images.len() as u64,
        stab: tally.stab,
        fr: tally.fr,
        im_rho: tally.restrictions.len() as u64,
    })
}

pub fn orbit_brute(a: &MRSubalgebra) -> Result<u64> {
    Ok(brute_counts(a)?.orbit)
}

pub fn stab_brute(a: &MRSubalgebra) -> Result<u64> {
    Ok(brute_counts(a)?.stab)
}

pub fn fr_brute(a: &MRSubalgebra) -> Result<u64> {
    Ok(brute_counts(a)?.fr)
}

pub fn im_rho_brute(a: &MRSubalgebra) -> Result<u64> {
    Ok(brute_counts(a)?.im_rho)
}

/// The members of `Stab(A)` and `Fr(A)`.
pub fn stabilizer_groups(a: &MRSubalgebra) -> Result<(BTreeSet<SignedPerm>, BTreeSet<SignedPerm>)> {
    let n = a.ambient_dim();
    check_range("stabilizer enumeration", n, 1, MAX_BRUTE_N)?;
    let faces = a.materialize();
    let set = a.materialize_set();
    let mut stab = BTreeSet::new();
    let mut fr = BTreeSet::new();
    for phi in enumerate_aut(n)? {
        let images: Vec<Face> = faces.iter().map(|x| phi.apply_raw(x)).collect();
        if images.iter().all(|x| set.contains(x)) {
            if images == faces {
                fr.insert(phi.clone());
            }
            stab.insert(phi);
        }
    }
    Ok((stab, fr))
}

/// Whether `h` is a subgroup of `g` (contains the identity, closed under
/// composition and inverse).
pub fn is_subgroup(h: &BTreeSet<SignedPerm>, g: &BTreeSet<SignedPerm>) -> bool {
    let Some(first) = h.iter().next() else {
        return false;
    };
    h.contains(&SignedPerm::identity(first.dim()))
        && h.is_subset(g)
        && h.iter().all(|x| h.contains(&x.inverse()))
        && h.iter().all(|x| h.iter().all(|y| x.compose(y).map(|p| h.contains(&p)).unwrap_or(false)))
}

/// Checks the description of `Im(ρ)`: an automorphism of `A` extends to
/// `L_n` iff it maps each `Γ_i` (the `A`-coatoms of corank `i` in `L_n`)
/// onto itself. Returns `(|Im ρ|, |{ψ ∈ Aut(A) : ψ[Γ_i] = Γ_i ∀i}|, equal as sets)`.
pub fn im_rho_block_criterion(a: &MRSubalgebra) -> Result<(u64, u64, bool)> {
    let n = a.ambient_dim();
    check_range("block criterion", n, 1, MAX_BRUTE_N)?;
    let faces = a.materialize();
    let (stab, _) = stabilizer_groups(a)?;
    let restrictions: BTreeSet<Vec<Face>> = stab
        .iter()
        .map(|phi| faces.iter().map(|x| phi.apply_raw(x)).collect())
        .collect();

    let k = a.dimension();
    let inner: Vec<SignedPerm> = if k == 0 {
        vec![SignedPerm::identity(0)]
    } else {
        enumerate_aut(k)?.collect()
    };
    let coatoms = a.coatoms();
    let gamma: BTreeMap<usize, BTreeSet<Face>> = coatoms.iter().fold(BTreeMap::new(), |mut m, c| {
        m.entry(c.corank()).or_default().insert(*c);
        m
    });
    let act = |psi: &SignedPerm, x: &Face| -> Result<Face> {
        let y = a
            .coordinates_of(x)
            .ok_or_else(|| Error::Invariant(format!("{x} is not in {a}")))?;
        a.embed(&psi.apply_raw(&y))
    };
    let mut criterion = BTreeSet::new();
    for psi in &inner {
        let mut preserves = true;
        for class in gamma.values() {
            for c in class {
                if !class.contains(&act(psi, c)?) {
                    preserves = false;
                }
            }
        }
        if preserves {
            let images = faces.iter().map(|x| act(psi, x)).collect::<Result<Vec<_>>>()?;
            criterion.insert(images);
        }
    }
    Ok((
        restrictions.len() as u64,
        criterion.len() as u64,
        restrictions == criterion,
    ))
}

/// Orbits of `Aut(L_n)` on the subalgebras of `L_n`, by brute force.
pub fn orbit_partition(n: usize) -> Result<Vec<BTreeSet<MRSubalgebra>>> {
    check_range("orbit partition", n, 1, MAX_BRUTE_N)?;
    let group: Vec<SignedPerm> = enumerate_aut(n)?.collect();
    let mut seen = BTreeSet::new();
    let mut orbits = Vec::new();
    for a in enumerate_subalgebras(n)? {
        if seen.contains(&a) {
            continue;
        }
        let orbit = group
            .iter()
            .map(|phi| act_on_subalgebra(phi, &a))
            .collect::<Result<BTreeSet<_>>>()?;
        seen.extend(orbit.iter().cloned());
        orbits.push(orbit);
    }
    Ok(orbits)
}

/// A deterministic sample of `count` distinct subalgebras of `L_n`, in
/// canonical order.
pub fn sample_subalgebras(n: usize, count: usize, seed: u64) -> Result<Vec<MRSubalgebra>> {
    let all = enumerate_subalgebras(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picks = sample(&mut rng, all.len(), count.min(all.len())).into_vec();
    picks.sort_unstable();
    Ok(picks.into_iter().map(|i| all[i].clone()).collect())
}

/// The representative of a type: blocks on consecutive coordinates,
/// largest first, all signs `+`.
pub fn prototype(t: &TypeVector, n: usize) -> Result<MRSubalgebra> {
    check_type(t, n)?;
    let mut next = 0;
    let mut blocks = Vec::new();
    for size in (1..=t.t.len()).rev() {
        for _ in 0..t.t_i(size) {
            let support = ((1u32 << size) - 1) << next;
            blocks.push(Block::new(support, 0)?);
            next += size;
        }
    }
    MRSubalgebra::new(n, blocks)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FormulaCheck {
    pub subalgebra: String,
    pub formula: BruteCounts,
    pub brute: BruteCounts,
}

impl FormulaCheck {
    pub fn agrees(&self) -> bool {
        self.formula == self.brute
    }
}

fn formula_counts(t: &TypeVector, n: usize) -> Result<BruteCounts> {
    let narrow = |x: BigUint| -> Result<u64> {
        u64::try_from(x).map_err(|_| Error::Invariant("count exceeds 64 bits".into()))
    };
    Ok(BruteCounts {
        orbit: narrow(orbit_size_formula(t, n)?)?,
        stab: narrow(stab_size_formula(t, n)?)?,
        fr: narrow(fr_size_formula(t, n)?)?,
        im_rho: narrow(im_rho_formula(t, n)?)?,
    })
}

/// Formula-versus-brute comparison for each given subalgebra.
pub fn formula_checks(subalgebras: &[MRSubalgebra]) -> Result<Vec<FormulaCheck>> {
    subalgebras
        .iter()
        .map(|a| {
            Ok(FormulaCheck {
                subalgebra: a.to_string(),
                formula: formula_counts(&a.type_vector(), a.ambient_dim())?,
                brute: brute_counts(a)?,
            })
        })
        .collect()
}

/// Checks `stab · orbit = 2^n n!` and `stab = fr · im_rho` for every type.
pub fn formula_identities(n: usize) -> Result<usize> {
    let order = hyperoctahedral_order(n);
    let types = TypeVector::all(n);
    for t in &types {
        let stab = stab_size_formula(t, n)?;
        if &stab * orbit_size_formula(t, n)? != order {
            return Err(Error::Invariant(format!("stab · orbit ≠ 2^n n! for type {t}")));
        }
        if stab != fr_size_formula(t, n)? * im_rho_formula(t, n)? {
            return Err(Error::Invariant(format!("stab ≠ fr · im_rho for type {t}")));
        }
        if fr_size_formula(t, n)? != fr_size_via_leftover(t, n)? {
            return Err(Error::Invariant(format!("the two freezer counts differ for type {t}")));
        }
    }
    Ok(types.len())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct STableRow {
    pub subalgebra: MRSubalgebra,
    #[serde(serialize_with = "crate::numbers::serialize_bigint")]
    pub f: BigInt,
    #[serde(serialize_with = "crate::numbers::serialize_bigint")]
    pub s: BigInt,
}

/// `s(A) = Σ_{B ⊇ A} μ(A, B) f(B)` with `f = |Fr|`. The freezer formula is
/// first checked against brute force on every subalgebra, and the result is
/// checked by re-summing `f(A) = Σ_{B ⊇ A} s(B)`.
pub fn s_table(n: usize) -> Result<Vec<STableRow>> {
    check_range("s table", n, 1, MAX_BRUTE_N)?;
    let poset = mr_poset(n)?;
    let f: Vec<BigInt> = poset
        .elements()
        .par_iter()
        .map(|a| {
            let formula = fr_size_formula(&a.type_vector(), n)?;
            let brute = brute_counts(a)?.fr;
            if formula != BigUint::from(brute) {
                return Err(Error::Invariant(format!("|Fr({a})|: formula {formula}, brute {brute}")));
            }
            Ok(BigInt::from(formula))
        })
        .collect::<Result<_>>()?;
    let len = poset.len();
    let s: Vec<BigInt> = (0..len)
        .into_par_iter()
        .map(|x| {
            let row = poset.mu_row(x);
            (0..len).filter_map(|y| row[y].as_ref().map(|m| m * &f[y])).sum()
        })
        .collect();
    for x in 0..len {
        let resum: BigInt = (0..len).filter(|&y| poset.leq_at(x, y)).map(|y| &s[y]).sum();
        if resum != f[x] {
            return Err(Error::Invariant(format!(
                "re-summation fails at {}: {} ≠ {}",
                poset.element(x),
                resum,
                f[x]
            )));
        }
    }
    Ok(poset
        .elements()
        .iter()
        .zip(f.into_iter().zip(s))
        .map(|(a, (f, s))| STableRow {
            subalgebra: a.clone(),
            f,
            s,
        })
        .collect())
}

/// Derangements as `s({1})`.
pub fn derangements_inversion(n: usize) -> Result<BigInt> {
    let table = s_table(n)?;
    let bottom = MRSubalgebra::bottom(n);
    table
        .into_iter()
        .find(|row| row.subalgebra == bottom)
        .map(|row| row.s)
        .ok_or_else(|| Error::Invariant("bottom missing from s table".into()))
}

/// Derangements counted directly: automorphisms fixing no face but `1`.
/// For `n <= 3` each fixed-face set is also checked to be a subalgebra.
pub fn derangements_direct(n: usize) -> Result<u64> {
    check_range("direct derangement count", n, 1, MAX_DIRECT_N)?;
    let faces: Vec<Face> = Face::all(n).collect();
    let group: Vec<SignedPerm> = enumerate_aut(n)?.collect();
    group
        .par_iter()
        .map(|phi| {
            let fixed: BTreeSet<Face> = faces.iter().filter(|x| phi.apply_raw(x) == **x).copied().collect();
            if n <= 3 && !is_closed_set(&fixed) {
                return Err(Error::Invariant(format!("fixed faces of {phi} do not form a subalgebra")));
            }
            Ok(u64::from(fixed.len() == 1))
        })
        .try_reduce(|| 0, |a, b| Ok(a + b))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Inversion,
    Direct,
    Both,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DerangementReport {
    pub n: usize,
    #[serde(serialize_with = "crate::numbers::serialize_opt_bigint")]
    pub inversion: Option<BigInt>,
    pub direct: Option<u64>,
    pub agree: Option<bool>,
}

pub fn derangements(n: usize, method: Method) -> Result<DerangementReport> {
    let inversion = match method {
        Method::Inversion | Method::Both => Some(derangements_inversion(n)?),
        Method::Direct => None,
    };
    let direct = match method {
        Method::Direct | Method::Both => Some(derangements_direct(n)?),
        Method::Inversion => None,
    };
    let agree = match (&inversion, direct) {
        (Some(i), Some(d)) => Some(*i == BigInt::from(d)),
        _ => None,
    };
    Ok(DerangementReport {
        n,
        inversion,
        direct,
        agree,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    pub id: String,
    pub type_vector: String,
    pub r: usize,
    pub k: usize,
    #[serde(serialize_with = "crate::numbers::serialize_biguint")]
    pub orbit_formula: BigUint,
    pub orbit_brute: Option<u64>,
    #[serde(serialize_with = "crate::numbers::serialize_biguint")]
    pub stab_formula: BigUint,
    pub stab_brute: Option<u64>,
    #[serde(serialize_with = "crate::numbers::serialize_biguint")]
    pub fr_formula: BigUint,
    pub fr_brute: Option<u64>,
    #[serde(serialize_with = "crate::numbers::serialize_biguint")]
    pub im_rho_formula: BigUint,
    pub im_rho_brute: Option<u64>,
    #[serde(serialize_with = "crate::numbers::serialize_biguint")]
    pub f: BigUint,
    #[serde(serialize_with = "crate::numbers::serialize_biguint")]
    pub g: BigUint,
    #[serde(serialize_with = "crate::numbers::serialize_opt_bigint")]
    pub s: Option<BigInt>,
}

impl CensusRow {
    pub fn consistent(&self) -> bool {
        let eq = |formula: &BigUint, brute: Option<u64>| brute.is_none_or(|b| *formula == BigUint::from(b));
        eq(&self.orbit_formula, self.orbit_brute)
            && eq(&self.stab_formula, self.stab_brute)
            && eq(&self.fr_formula, self.fr_brute)
            && eq(&self.im_rho_formula, self.im_rho_brute)
    }
}

/// One row per orbit, represented by [`prototype`]. Brute-force columns and
/// `s` are filled in where enumeration is feasible.
pub fn census(n: usize) -> Result<Vec<CensusRow>> {
    check_range("census", n, 1, MAX_FORMULA_N.min(10))?;
    let s_values: BTreeMap<MRSubalgebra, BigInt> = if n <= MAX_BRUTE_N {
        s_table(n)?.into_iter().map(|r| (r.subalgebra, r.s)).collect()
    } else {
        BTreeMap::new()
    };
    TypeVector::all(n)
        .iter()
        .map(|t| {
            let proto = prototype(t, n)?;
            let brute = if n <= MAX_BRUTE_N { Some(brute_counts(&proto)?) } else { None };
            let fr = fr_size_formula(t, n)?;
            let stab = stab_size_formula(t, n)?;
            Ok(CensusRow {
                id: proto.to_string(),
                type_vector: t.to_string(),
                r: t.r(),
                k: t.k(),
                orbit_formula: orbit_size_formula(t, n)?,
                orbit_brute: brute.map(|b| b.orbit),
                stab_formula: stab.clone(),
                stab_brute: brute.map(|b| b.stab),
                fr_formula: fr.clone(),
                fr_brute: brute.map(|b| b.fr),
                im_rho_formula: im_rho_formula(t, n)?,
                im_rho_brute: brute.map(|b| b.im_rho),
                f: fr,
                g: stab,
                s: s_values.get(&proto).cloned(),
            })
        })
        .collect()
}
