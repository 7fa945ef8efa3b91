use std::collections::{BTreeMap, BTreeSet};

use cubemob_core::census::orbit_partition;
use cubemob_core::mobius::mr_poset;
use cubemob_core::poset::order_isomorphic;
use cubemob_core::subalgebra::locator::{implication_closure, implies, boolean_meet, subalgebra_closure};
use cubemob_core::subalgebra::{enumerate_by_closure, enumerate_subalgebras, is_closed_set};
use cubemob_core::{Face, ImpSublattice, LocatorPair, MRSubalgebra, TypeVector};

#[test]
fn structural_enumeration_matches_closure_oracle() {
    for (n, expected) in [(1, 2), (2, 6), (3, 24)] {
        let structural: BTreeSet<BTreeSet<Face>> = enumerate_subalgebras(n)
            .unwrap()
            .iter()
            .map(MRSubalgebra::materialize_set)
            .collect();
        let oracle: BTreeSet<BTreeSet<Face>> = enumerate_by_closure(n).unwrap().into_iter().collect();
        assert_eq!(structural.len(), expected);
        assert_eq!(structural, oracle, "n = {n}");
    }
    assert_eq!(enumerate_subalgebras(4).unwrap().len(), 116);
}

#[test]
fn every_enumerated_subalgebra_is_closed() {
    for n in 1..=3 {
        for a in enumerate_subalgebras(n).unwrap() {
            assert!(is_closed_set(&a.materialize_set()), "{a}");
            assert_eq!(MRSubalgebra::from_face_set(n, &a.materialize_set()).unwrap(), a);
        }
    }
}

#[test]
fn structural_inclusion_matches_face_sets() {
    for n in 1..=3 {
        let all = enumerate_subalgebras(n).unwrap();
        for a in &all {
            for b in &all {
                let extensional = a.materialize_set().is_subset(&b.materialize_set());
                assert_eq!(a.includes_in(b).unwrap(), extensional, "{a} ⊆ {b}");
            }
        }
    }
}

#[test]
fn type_determines_orbit() {
    for n in 1..=3 {
        let orbits = orbit_partition(n).unwrap();
        let mut by_type: BTreeMap<TypeVector, BTreeSet<MRSubalgebra>> = BTreeMap::new();
        for a in enumerate_subalgebras(n).unwrap() {
            by_type.entry(a.type_vector()).or_default().insert(a);
        }
        let orbit_sets: BTreeSet<BTreeSet<MRSubalgebra>> = orbits.into_iter().collect();
        let type_sets: BTreeSet<BTreeSet<MRSubalgebra>> = by_type.into_values().collect();
        assert_eq!(orbit_sets, type_sets, "n = {n}");
    }
}

#[test]
fn imp_sublattices_match_subset_oracle() {
    for n in 1..=3 {
        let interval: Vec<Face> = (0u32..1 << n)
            .map(|free| Face::new(n, 0, ((1u32 << n) - 1) & !free).unwrap())
            .collect();
        let top = Face::top(n);
        let mut oracle = BTreeSet::new();
        for pick in 0u32..1 << interval.len() {
            let set: BTreeSet<Face> = interval
                .iter()
                .enumerate()
                .filter(|(i, _)| pick >> i & 1 == 1)
                .map(|(_, x)| *x)
                .collect();
            if !set.contains(&top) {
                continue;
            }
            let closed = set
                .iter()
                .all(|x| set.iter().all(|y| set.contains(&implies(x, y)) && set.contains(&boolean_meet(x, y))));
            if closed {
                oracle.insert(set);
            }
        }
        let structural: BTreeSet<BTreeSet<Face>> =
            ImpSublattice::enumerate(n).unwrap().iter().map(ImpSublattice::materialize).collect();
        assert_eq!(structural, oracle, "n = {n}");
    }
    assert_eq!(ImpSublattice::enumerate(2).unwrap().len(), 5);
}

#[test]
fn locate_matches_translate_and_close() {
    for n in 1..=3 {
        for p in LocatorPair::enumerate(n).unwrap() {
            assert_eq!(p.locate().materialize_set(), p.locate_by_closure().unwrap(), "{p}");
        }
    }
}

#[test]
fn every_subalgebra_is_located_by_its_locator() {
    for n in 1..=4 {
        for a in enumerate_subalgebras(n).unwrap() {
            assert_eq!(LocatorPair::locator_of(&a).locate(), a);
        }
    }
}

#[test]
fn pair_order_matches_located_inclusion() {
    for n in 1..=3 {
        let pairs = LocatorPair::enumerate(n).unwrap();
        let located: Vec<BTreeSet<Face>> = pairs.iter().map(|p| p.locate().materialize_set()).collect();
        for (p, a) in pairs.iter().zip(&located) {
            for (q, b) in pairs.iter().zip(&located) {
                assert_eq!(p.pair_leq(q).unwrap(), a.is_subset(b), "{p} vs {q}");
            }
        }
    }
}

#[test]
fn pair_closure_matches_generated_sublattice() {
    for n in 1..=3 {
        for p in LocatorPair::enumerate(n).unwrap() {
            let mut gens = p.b().materialize();
            gens.insert(*p.c());
            let closed = p.pair_closure();
            assert_eq!(closed.b().materialize(), implication_closure(&gens), "{p}");
            assert!(closed.is_closed());
            assert_eq!(closed.pair_closure(), closed);
        }
    }
}

#[test]
fn closure_is_well_defined_on_subalgebras() {
    for n in 1..=3 {
        let pairs = LocatorPair::enumerate(n).unwrap();
        for p in &pairs {
            for q in &pairs {
                if p.pair_equiv(q).unwrap() {
                    assert_eq!(p.pair_closure().locate(), q.pair_closure().locate(), "{p} ~ {q}");
                }
            }
        }
        let all = enumerate_subalgebras(n).unwrap();
        for a in &all {
            let ca = subalgebra_closure(a);
            assert!(a.includes_in(&ca).unwrap());
            assert_eq!(subalgebra_closure(&ca), ca);
            for b in &all {
                if a.includes_in(b).unwrap() {
                    assert!(ca.includes_in(&subalgebra_closure(b)).unwrap());
                }
            }
        }
    }
}

fn upper_set_matrix(n: usize, base: &MRSubalgebra) -> Vec<Vec<bool>> {
    let poset = mr_poset(n).unwrap();
    let x = poset.index_of(base).unwrap();
    let top = poset.index_of(&MRSubalgebra::full(n)).unwrap();
    poset.restrict(&poset.interval(x, top))
}

fn product(a: &[Vec<bool>], b: &[Vec<bool>]) -> Vec<Vec<bool>> {
    let (la, lb) = (a.len(), b.len());
    (0..la * lb)
        .map(|p| (0..la * lb).map(|q| a[p / lb][q / lb] && b[p % lb][q % lb]).collect())
        .collect()
}

#[test]
fn upper_interval_of_a_subalgebra_factors_by_blocks() {
    // [A, L_n] is the product of one factor per block of A (the refinements
    // of a diagonal) and the subalgebra lattice of the unused coordinates.
    for n in 1..=3 {
        let poset = mr_poset(n).unwrap();
        let top = poset.index_of(&MRSubalgebra::full(n)).unwrap();
        for a in enumerate_subalgebras(n).unwrap() {
            let x = poset.index_of(&a).unwrap();
            let interval = poset.restrict(&poset.interval(x, top));
            let mut expected = vec![vec![true]];
            for b in a.blocks() {
                let i = b.len();
                let diagonal = MRSubalgebra::new(i, [cubemob_core::Block::new((1 << i) - 1, 0).unwrap()]).unwrap();
                expected = product(&expected, &upper_set_matrix(i, &diagonal));
            }
            let free = n - a.support().count_ones() as usize;
            if free > 0 {
                expected = product(&expected, &upper_set_matrix(free, &MRSubalgebra::bottom(free)));
            }
            assert!(order_isomorphic(&interval, &expected), "{a}");
        }
    }
}

#[test]
fn lower_intervals_depend_only_on_dimension() {
    for n in 1..=3 {
        let poset = mr_poset(n).unwrap();
        let bottom = poset.bottom().unwrap();
        let all = enumerate_subalgebras(n).unwrap();
        let shapes: Vec<_> = all
            .iter()
            .map(|a| poset.restrict(&poset.interval(bottom, poset.index_of(a).unwrap())))
            .collect();
        for (i, a) in all.iter().enumerate() {
            for (j, b) in all.iter().enumerate().skip(i) {
                let iso = order_isomorphic(&shapes[i], &shapes[j]);
                assert_eq!(iso, a.dimension() == b.dimension(), "{a} vs {b}");
            }
        }
    }
}
