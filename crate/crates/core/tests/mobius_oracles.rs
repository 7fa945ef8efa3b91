use cubemob_core::mobius::*;
use cubemob_core::numbers::factorial;
use num_bigint::{BigInt, BigUint};

#[test]
fn mobius_identity_on_every_poset() {
    for n in 1..=4 {
        assert!(imp_poset(n).unwrap().check_mobius_identity().unwrap() > 0);
    }
    for n in 1..=3 {
        assert!(mr_poset(n).unwrap().check_mobius_identity().unwrap() > 0);
    }
}

#[test]
fn closed_formula_matches_poset_oracle() {
    for n in 1..=4 {
        let audit = impl_formula_audit(n).unwrap();
        assert!(audit.formula_agrees(), "n = {n}");
        assert_eq!(audit.mu_one_oracle, BigInt::from(factorial(n)) * if n % 2 == 0 { 1 } else { -1 });
        assert_eq!(audit.printed_value_agrees(), n % 2 == 0);
    }
}

#[test]
fn closure_theorem_holds_on_mr_posets() {
    for n in 1..=3 {
        assert!(mr_closure_audit(n).unwrap().all_match(), "n = {n}");
    }
}

#[test]
fn boolean_locator_counts() {
    for n in 1..=3 {
        for m in 0..=n {
            let count = boolean_locator_census(n, m).unwrap();
            assert_eq!(BigUint::from(count.total), boolean_locator_formula(n, m).unwrap(), "n={n} m={m}");
            assert_eq!(BigUint::from(count.closure_is_top), top_fiber_count(n, m));
        }
    }
}

#[test]
fn mr_values_and_recurrences() {
    let brute: Vec<BigInt> = (1..=4).map(|n| mr_mobius_bruteforce(n).unwrap()).collect();
    assert_eq!(brute[0], BigInt::from(-1));
    assert_eq!(brute[1], BigInt::from(3));
    for n in 1..=4 {
        assert_eq!(mr_recurrence_adjudicated(n).unwrap(), brute[n - 1]);
        assert_ne!(mr_recurrence_paper(n).unwrap(), brute[n - 1]);
    }
    assert!(adjudication_audit(4).unwrap().all_ok());
}

#[test]
fn audit_lists_the_known_discrepancies() {
    let audit = mobius_audit(1).unwrap();
    assert_eq!(audit.discrepancies.len(), 2);
    let audit = mobius_audit(2).unwrap();
    assert_eq!(audit.discrepancies.len(), 1);
    assert!(audit.closure_fibers.iter().all(|f| f.matches));
}
