//! Explicit finite posets with a memoized Möbius function.

use std::collections::{BTreeMap, HashMap};
use std::fmt::{self, Display};
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

/// One row of the Möbius function: `row[z] = Some(μ(x, z))` for `z ≥ x`.
pub type MuRow = Vec<Option<BigInt>>;

pub struct PosetTable<T> {
    elements: Vec<T>,
    index: BTreeMap<T, usize>,
    len: usize,
    leq: Vec<bool>,
    /// a linear extension, as element indices
    linear: Vec<usize>,
    memo: RwLock<HashMap<usize, Arc<MuRow>>>,
    hash: [u8; 32],
}

impl<T: Ord + Clone + Display> PosetTable<T> {
    /// Builds the table and checks the partial-order laws.
    pub fn build(elements: Vec<T>, leq: impl Fn(&T, &T) -> bool) -> Result<PosetTable<T>> {
        let len = elements.len();
        let mut index = BTreeMap::new();
        for (i, e) in elements.iter().enumerate() {
            if index.insert(e.clone(), i).is_some() {
                return Err(Error::PosetLaw(format!("duplicate element {e}")));
            }
        }
        let mut rel = vec![false; len * len];
        for (i, x) in elements.iter().enumerate() {
            for (j, y) in elements.iter().enumerate() {
                rel[i * len + j] = leq(x, y);
            }
        }
        for i in 0..len {
            if !rel[i * len + i] {
                return Err(Error::PosetLaw(format!("not reflexive at {}", elements[i])));
            }
            for j in 0..i {
                if rel[i * len + j] && rel[j * len + i] {
                    return Err(Error::PosetLaw(format!(
                        "not antisymmetric: {} and {} are mutually below",
                        elements[i], elements[j]
                    )));
                }
            }
        }
        for i in 0..len {
            for j in 0..len {
                if !rel[i * len + j] {
                    continue;
                }
                for k in 0..len {
                    if rel[j * len + k] && !rel[i * len + k] {
                        return Err(Error::PosetLaw(format!(
                            "not transitive: {} ≤ {} ≤ {} but {} ≰ {}",
                            elements[i], elements[j], elements[k], elements[i], elements[k]
                        )));
                    }
                }
            }
        }
        // sorting by down-set size gives a linear extension
        let down: Vec<usize> = (0..len).map(|j| (0..len).filter(|&i| rel[i * len + j]).count()).collect();
        let mut linear: Vec<usize> = (0..len).collect();
        linear.sort_by_key(|&j| (down[j], j));

        let mut hasher = Sha256::new();
        hasher.update((len as u64).to_le_bytes());
        for e in &elements {
            let label = e.to_string();
            hasher.update((label.len() as u64).to_le_bytes());
            hasher.update(label.as_bytes());
        }
        for chunk in rel.chunks(8) {
            hasher.update([chunk.iter().enumerate().fold(0u8, |b, (i, &r)| b | (r as u8) << i)]);
        }

        Ok(PosetTable {
            elements,
            index,
            len,
            leq: rel,
            linear,
            memo: RwLock::new(HashMap::new()),
            hash: hasher.finalize().into(),
        })
    }

    pub fn index_of(&self, x: &T) -> Option<usize> {
        self.index.get(x).copied()
    }

    fn require(&self, x: &T) -> Result<usize> {
        self.index_of(x)
            .ok_or_else(|| Error::Precondition(format!("{x} is not an element of the poset")))
    }

    /// `μ(x, y)`; errors unless `x ≤ y`.
    pub fn mobius(&self, x: &T, y: &T) -> Result<BigInt> {
        let (i, j) = (self.require(x)?, self.require(y)?);
        self.mobius_at(i, j)
    }
}

impl<T> PosetTable<T> {
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn elements(&self) -> &[T] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &T {
        &self.elements[i]
    }

    pub fn leq_at(&self, i: usize, j: usize) -> bool {
        self.leq[i * self.len + j]
    }

    pub fn linear_extension(&self) -> &[usize] {
        &self.linear
    }

    /// Unique minimum, if any.
    pub fn bottom(&self) -> Option<usize> {
        (0..self.len).find(|&i| (0..self.len).all(|j| self.leq_at(i, j)))
    }

    /// Unique maximum, if any.
    pub fn top(&self) -> Option<usize> {
        (0..self.len).find(|&j| (0..self.len).all(|i| self.leq_at(i, j)))
    }

    /// Hex SHA-256 of the element labels and the order relation.
    pub fn content_hash(&self) -> String {
        self.hash.iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn mobius_at(&self, i: usize, j: usize) -> Result<BigInt> {
        if i >= self.len || j >= self.len {
            return Err(Error::Precondition("index out of range".into()));
        }
        if !self.leq_at(i, j) {
            return Err(Error::Precondition(format!("element {i} is not below element {j}")));
        }
        Ok(self.mu_row(i)[j].clone().expect("row covers the upper set"))
    }

    /// `μ(x, ·)` on the upper set of `x`, memoized.
    pub fn mu_row(&self, x: usize) -> Arc<MuRow> {
        if let Some(row) = self.memo.read().expect("memo lock").get(&x) {
            return row.clone();
        }
        let row = Arc::new(self.compute_row(x));
        self.memo.write().expect("memo lock").entry(x).or_insert(row).clone()
    }

    fn compute_row(&self, x: usize) -> MuRow {
        let mut row: MuRow = vec![None; self.len];
        for &z in &self.linear {
            if !self.leq_at(x, z) {
                continue;
            }
            let value = if z == x {
                BigInt::one()
            } else {
                let below: BigInt = (0..self.len)
                    .filter(|&w| w != z && self.leq_at(w, z))
                    .filter_map(|w| row[w].as_ref())
                    .sum();
                -below
            };
            row[z] = Some(value);
        }
        row
    }

    /// Every row of `μ`, in element order.
    pub fn mu_matrix(&self) -> Vec<MuRow> {
        (0..self.len).map(|x| self.mu_row(x).as_ref().clone()).collect()
    }

    /// Seeds the memo with externally stored rows. Each row must satisfy
    /// the defining identity, which determines it uniquely, so a bad row
    /// is rejected rather than trusted.
    pub fn preload(&self, rows: Vec<MuRow>) -> Result<()> {
        if rows.len() != self.len {
            return Err(Error::Invariant("row count does not match the poset".into()));
        }
        for (x, row) in rows.iter().enumerate() {
            self.check_row(x, row)?;
        }
        let mut memo = self.memo.write().expect("memo lock");
        for (x, row) in rows.into_iter().enumerate() {
            memo.insert(x, Arc::new(row));
        }
        Ok(())
    }

    fn check_row(&self, x: usize, row: &MuRow) -> Result<()> {
        if row.len() != self.len {
            return Err(Error::Invariant(format!("row {x} has the wrong length")));
        }
        for y in 0..self.len {
            if row[y].is_some() != self.leq_at(x, y) {
                return Err(Error::Invariant(format!("row {x} has the wrong support at {y}")));
            }
            if !self.leq_at(x, y) {
                continue;
            }
            let sum: BigInt = (0..self.len)
                .filter(|&z| self.leq_at(z, y))
                .filter_map(|z| row[z].as_ref())
                .sum();
            let expected = if x == y { BigInt::one() } else { BigInt::zero() };
            if sum != expected {
                return Err(Error::Invariant(format!("Möbius identity fails for ({x}, {y})")));
            }
        }
        Ok(())
    }

    /// Checks `Σ_{x≤z≤y} μ(x,z) = [x=y]` for every pair; returns the number
    /// of pairs checked.
    pub fn check_mobius_identity(&self) -> Result<usize> {
        let mut pairs = 0;
        for x in 0..self.len {
            let row = self.mu_row(x);
            self.check_row(x, &row)?;
            pairs += (0..self.len).filter(|&y| self.leq_at(x, y)).count();
        }
        Ok(pairs)
    }

    /// Indices in the closed interval `[x, y]`.
    pub fn interval(&self, x: usize, y: usize) -> Vec<usize> {
        (0..self.len).filter(|&z| self.leq_at(x, z) && self.leq_at(z, y)).collect()
    }

    /// The sub-poset on `subset` (indices), as a relation matrix.
    pub fn restrict(&self, subset: &[usize]) -> Vec<Vec<bool>> {
        subset
            .iter()
            .map(|&i| subset.iter().map(|&j| self.leq_at(i, j)).collect())
            .collect()
    }
}

/// Whether two finite posets, given as relation matrices, are isomorphic.
pub fn order_isomorphic(a: &[Vec<bool>], b: &[Vec<bool>]) -> bool {
    let n = a.len();
    if n != b.len() {
        return false;
    }
    let profile = |m: &[Vec<bool>], i: usize| {
        let up = (0..n).filter(|&j| m[i][j]).count();
        let down = (0..n).filter(|&j| m[j][i]).count();
        (up, down)
    };
    let pa: Vec<_> = (0..n).map(|i| profile(a, i)).collect();
    let pb: Vec<_> = (0..n).map(|i| profile(b, i)).collect();
    let mut sa = pa.clone();
    let mut sb = pb.clone();
    sa.sort();
    sb.sort();
    if sa != sb {
        return false;
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    extend_iso(a, b, &pa, &pb, 0, &mut map, &mut used)
}

fn extend_iso(
    a: &[Vec<bool>],
    b: &[Vec<bool>],
    pa: &[(usize, usize)],
    pb: &[(usize, usize)],
    i: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    let n = a.len();
    if i == n {
        return true;
    }
    for j in 0..n {
        if used[j] || pa[i] != pb[j] {
            continue;
        }
        let consistent = (0..i).all(|p| a[p][i] == b[map[p]][j] && a[i][p] == b[j][map[p]]);
        if !consistent {
            continue;
        }
        map[i] = j;
        used[j] = true;
        if extend_iso(a, b, pa, pb, i + 1, map, used) {
            return true;
        }
        used[j] = false;
    }
    map[i] = usize::MAX;
    false
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiberRow {
    pub closed: String,
    pub fiber: Vec<String>,
    #[serde(serialize_with = "crate::numbers::serialize_bigint")]
    pub fiber_sum: BigInt,
    #[serde(serialize_with = "crate::numbers::serialize_bigint")]
    pub mu_closed: BigInt,
    pub matches: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosureReport {
    pub base: String,
    pub fibers: Vec<FiberRow>,
}

impl ClosureReport {
    pub fn all_match(&self) -> bool {
        self.fibers.iter().all(|f| f.matches)
    }

    pub fn fiber_of(&self, closed: &str) -> Option<&FiberRow> {
        self.fibers.iter().find(|f| f.closed == closed)
    }
}

impl fmt::Display for ClosureReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "closure fibers above {}", self.base)?;
        for row in &self.fibers {
            writeln!(
                f,
                "  {}: |fiber|={} sum={} mu_closed={} {}",
                row.closed,
                row.fiber.len(),
                row.fiber_sum,
                row.mu_closed,
                if row.matches { "ok" } else { "MISMATCH" }
            )?;
        }
        Ok(())
    }
}

/// Checks that `cl` (given on indices) is a closure operator on `p`.
pub fn check_closure_laws<T: Display>(p: &PosetTable<T>, cl: &[usize]) -> Result<()> {
    if cl.len() != p.len() {
        return Err(Error::ClosureLaw("closure map has the wrong length".into()));
    }
    for x in 0..p.len() {
        if !p.leq_at(x, cl[x]) {
            return Err(Error::ClosureLaw(format!("not extensive at {}", p.element(x))));
        }
        if cl[cl[x]] != cl[x] {
            return Err(Error::ClosureLaw(format!("not idempotent at {}", p.element(x))));
        }
        for y in 0..p.len() {
            if p.leq_at(x, y) && !p.leq_at(cl[x], cl[y]) {
                return Err(Error::ClosureLaw(format!(
                    "not monotone: {} ≤ {} but closures are incomparable",
                    p.element(x),
                    p.element(y)
                )));
            }
        }
    }
    Ok(())
}

/// For a closure operator `cl` on `p` and a closed `y`, compares the fiber
/// sums `Σ_{cl(x)=z} μ(y,x)` with `μ(y,z)` computed in the closed subposet.
pub fn closure_audit<T: Ord + Clone + Display>(p: &PosetTable<T>, cl: &[usize], y: usize) -> Result<ClosureReport> {
    check_closure_laws(p, cl)?;
    if cl[y] != y {
        return Err(Error::Precondition(format!("{} is not closed", p.element(y))));
    }
    let closed: Vec<usize> = (0..p.len()).filter(|&x| cl[x] == x).collect();
    let closed_poset = PosetTable::build(closed.clone(), |&a, &b| p.leq_at(a, b))?;
    let row = p.mu_row(y);
    let mut fibers = Vec::new();
    for &z in &closed {
        if !p.leq_at(y, z) {
            continue;
        }
        let members: Vec<usize> = (0..p.len()).filter(|&x| cl[x] == z && p.leq_at(y, x)).collect();
        let fiber_sum: BigInt = members.iter().filter_map(|&x| row[x].as_ref()).sum();
        let mu_closed = closed_poset.mobius(&y, &z)?;
        fibers.push(FiberRow {
            closed: p.element(z).to_string(),
            fiber: members.iter().map(|&x| p.element(x).to_string()).collect(),
            matches: fiber_sum == mu_closed,
            fiber_sum,
            mu_closed,
        });
    }
    Ok(ClosureReport {
        base: p.element(y).to_string(),
        fibers,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(k: u32) -> PosetTable<u32> {
        PosetTable::build((0..k).collect(), |a, b| a <= b).unwrap()
    }

    fn boolean(n: u32) -> PosetTable<u32> {
        PosetTable::build((0..1 << n).collect(), |a, b| a & !b == 0).unwrap()
    }

    #[test]
    fn chain_values() {
        let p = chain(2);
        assert_eq!(p.mobius(&0, &1).unwrap(), BigInt::from(-1));
        assert_eq!(p.mobius(&1, &1).unwrap(), BigInt::one());
        assert!(p.mobius(&1, &0).is_err());
        let p = chain(5);
        assert_eq!(p.mobius(&0, &4).unwrap(), BigInt::zero());
    }

    #[test]
    fn boolean_lattice_values() {
        let p = boolean(4);
        for x in 0..16u32 {
            for y in 0..16u32 {
                if x & !y == 0 {
                    let rank = (y & !x).count_ones() as usize;
                    assert_eq!(p.mobius(&x, &y).unwrap(), crate::numbers::sign(rank));
                }
            }
        }
        assert!(p.check_mobius_identity().is_ok());
    }

    #[test]
    fn divisor_lattice() {
        let d: Vec<u32> = (1..=36).filter(|k| 36 % k == 0).collect();
        let p = PosetTable::build(d, |a, b| b % a == 0).unwrap();
        assert_eq!(p.mobius(&1, &6).unwrap(), BigInt::one());
        assert_eq!(p.mobius(&1, &36).unwrap(), BigInt::zero());
        assert_eq!(p.mobius(&2, &6).unwrap(), BigInt::from(-1));
    }

    #[test]
    fn law_violations_name_the_elements() {
        let err = PosetTable::build(vec![0u32, 1, 2], |a, b| a == b || (*a, *b) == (0, 1) || (*a, *b) == (1, 2))
            .err()
            .unwrap();
        assert!(err.to_string().contains("0 ≤ 1 ≤ 2"), "{err}");
        let err = PosetTable::build(vec![0u32, 1], |_, _| true).err().unwrap();
        assert!(err.to_string().contains("antisymmetric"));
        assert!(PosetTable::build(vec![0u32, 1], |_, _| false).is_err());
    }

    #[test]
    fn preload_rejects_bad_rows() {
        let p = boolean(2);
        let good = p.mu_matrix();
        let q = boolean(2);
        assert!(q.preload(good.clone()).is_ok());
        let mut bad = good;
        bad[0][3] = Some(BigInt::from(7));
        assert!(boolean(2).preload(bad).is_err());
        assert_eq!(p.content_hash(), q.content_hash());
        assert_ne!(p.content_hash(), chain(4).content_hash());
    }

    #[test]
    fn isomorphism() {
        let b2 = boolean(2);
        let all: Vec<usize> = (0..4).collect();
        let diamond = PosetTable::build(vec![0u32, 1, 2, 3], |a, b| a == b || *a == 0 || *b == 3).unwrap();
        assert!(order_isomorphic(&b2.restrict(&all), &diamond.restrict(&all)));
        assert!(!order_isomorphic(&b2.restrict(&all), &chain(4).restrict(&all)));
    }

    #[test]
    fn identity_closure_audit() {
        let p = boolean(3);
        let cl: Vec<usize> = (0..p.len()).collect();
        let report = closure_audit(&p, &cl, 0).unwrap();
        assert!(report.all_match());
        assert!(report.fibers.iter().all(|f| f.fiber.len() == 1));
    }

    #[test]
    fn closure_laws_are_checked() {
        let p = chain(3);
        assert!(check_closure_laws(&p, &[1, 1, 2]).is_ok());
        assert!(check_closure_laws(&p, &[0, 0, 2]).is_err());
        assert!(check_closure_laws(&p, &[1, 2, 2]).is_err());
        assert!(closure_audit(&p, &[1, 1, 2], 0).is_err());
    }
}
