//! Executable checks of the cubic-algebra axioms, the MR-axiom and the
//! derived identities on `L_n`, either exhaustively or on random samples.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{full_mask, Face};
use crate::subalgebra::locator::plus_a;

/// Outcome of checking one law.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LawCheck {
    pub name: &'static str,
    pub checked: u64,
    pub violations: u64,
    pub counterexample: Option<String>,
}

impl LawCheck {
    fn new(name: &'static str) -> Self {
        LawCheck {
            name,
            checked: 0,
            violations: 0,
            counterexample: None,
        }
    }

    fn record(&mut self, holds: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !holds {
            self.violations += 1;
            if self.counterexample.is_none() {
                self.counterexample = Some(witness());
            }
        }
    }

    pub fn holds(&self) -> bool {
        self.violations == 0
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AxiomReport {
    pub n: usize,
    pub exhaustive: bool,
    pub laws: Vec<LawCheck>,
}

impl AxiomReport {
    pub fn all_hold(&self) -> bool {
        self.laws.iter().all(LawCheck::holds)
    }

    pub fn law(&self, name: &str) -> Option<&LawCheck> {
        self.laws.iter().find(|l| l.name == name)
    }
}

/// `xy = Δ(1, Δ(x ∨ y, y)) ∨ y`.
pub fn cubic_product(x: &Face, y: &Face) -> Face {
    x.join_raw(y).delta_raw(y).antipode().join_raw(y)
}

struct Laws {
    a: LawCheck,
    b: LawCheck,
    c: LawCheck,
    d: LawCheck,
    e: LawCheck,
    f: LawCheck,
    mr: LawCheck,
    caret: LawCheck,
    preceq_above: LawCheck,
    preceq_meet: LawCheck,
    plus_lem_a: LawCheck,
    plus_lem_b: LawCheck,
    signed_set: LawCheck,
    interval_pair: LawCheck,
}

impl Laws {
    fn new() -> Self {
        Laws {
            a: LawCheck::new("axiom_a"),
            b: LawCheck::new("axiom_b"),
            c: LawCheck::new("axiom_c"),
            d: LawCheck::new("axiom_d"),
            e: LawCheck::new("axiom_e"),
            f: LawCheck::new("axiom_f"),
            mr: LawCheck::new("mr_axiom"),
            caret: LawCheck::new("caret_total"),
            preceq_above: LawCheck::new("preceq_is_leq_above_common_lower_bound"),
            preceq_meet: LawCheck::new("preceq_meet_characterization"),
            plus_lem_a: LawCheck::new("plus_lemma_a"),
            plus_lem_b: LawCheck::new("plus_lemma_b"),
            signed_set: LawCheck::new("signed_set_representation"),
            interval_pair: LawCheck::new("interval_pair_representation"),
        }
    }

    fn into_report(self, n: usize, exhaustive: bool) -> AxiomReport {
        AxiomReport {
            n,
            exhaustive,
            laws: vec![
                self.a,
                self.b,
                self.c,
                self.d,
                self.e,
                self.f,
                self.mr,
                self.caret,
                self.preceq_above,
                self.preceq_meet,
                self.plus_lem_a,
                self.plus_lem_b,
                self.signed_set,
                self.interval_pair,
            ],
        }
    }

    fn single(&mut self, x: &Face) {
        let s = x.to_signed_set();
        let back = Face::from_signed_set(&s).ok();
        self.signed_set.record(back == Some(*x), || format!("round trip of {x}"));
        let p = x.to_interval_pair();
        let back = Face::from_interval_pair(&p).ok();
        self.interval_pair.record(back == Some(*x), || format!("round trip of {x}"));
    }

    fn pair(&mut self, x: &Face, y: &Face) {
        let x_leq_y = x.leq_raw(y);
        // representations preserve and reflect the order
        let ss = x.to_signed_set().leq(&y.to_signed_set());
        self.signed_set.record(ss == x_leq_y, || format!("order of {x}, {y}"));
        let ip = x.to_interval_pair().leq(&y.to_interval_pair());
        self.interval_pair.record(ip == x_leq_y, || format!("order of {x}, {y}"));

        if x_leq_y {
            self.a.record(y.delta_raw(x).join_raw(x) == *y, || format!("x={x} y={y}"));
            self.c.record(y.delta_raw(&y.delta_raw(x)) == *x, || format!("x={x} y={y}"));
            let via_pairs = y
                .to_interval_pair()
                .delta(&x.to_interval_pair())
                .ok()
                .and_then(|p| Face::from_interval_pair(&p).ok());
            self.interval_pair
                .record(via_pairs == Some(y.delta_raw(x)), || format!("delta({y}, {x})"));
        }

        let xy = cubic_product(x, y);
        self.e.record(cubic_product(&xy, y) == x.join_raw(y), || format!("x={x} y={y}"));

        let caret = x.caret_raw(y);
        self.caret.record(caret.is_ok(), || format!("x={x} y={y}"));

        let preceq = x.join_raw(y).delta_raw(x).leq_raw(y);
        let characterization = y
            .join_raw(x)
            .meet_raw(&y.join_raw(&x.antipode())) == Some(*y);
        self.preceq_meet
            .record(preceq == characterization, || format!("a={x} b={y}"));
    }

    fn triple(&mut self, x: &Face, y: &Face, z: &Face) {
        if x.leq_raw(y) && y.leq_raw(z) {
            let dzx = z.delta_raw(x);
            let dzy = z.delta_raw(y);
            let d_ok = dzx.leq_raw(&dzy);
            self.d.record(d_ok, || format!("x={x} y={y} z={z}"));
            let lhs = z.delta_raw(&y.delta_raw(x));
            let rhs = d_ok.then(|| dzy.delta_raw(&dzx));
            self.b.record(rhs == Some(lhs), || format!("x={x} y={y} z={z}"));
        }

        let lhs = cubic_product(x, &cubic_product(y, z));
        let rhs = cubic_product(y, &cubic_product(x, z));
        self.f.record(lhs == rhs, || format!("x={x} y={y} z={z}"));

        // MR-axiom with x as the upper element
        if y.leq_raw(x) && y != x && z.leq_raw(x) && z != x {
            let below = x.delta_raw(y).join_raw(z);
            let strictly_below = below.leq_raw(x) && below != *x;
            let no_meet = y.meet_raw(z).is_none();
            self.mr
                .record(strictly_below == no_meet, || format!("x={x} a={y} b={z}"));
        }

        // with a = x: b, c >= a implies (b ⪯ c iff b <= c)
        if x.leq_raw(y) && x.leq_raw(z) {
            let preceq = y.join_raw(z).delta_raw(y).leq_raw(z);
            self.preceq_above
                .record(preceq == y.leq_raw(z), || format!("a={x} b={y} c={z}"));
        }
    }

    /// Both parts of the Boolean-sum lemma for `c1, c2` with `c1 ∧ c2`
    /// defined, `a <= c1 ∧ c2`, and a witness `b` / `x`.
    fn plus_lemma(&mut self, c1: &Face, c2: &Face, a: &Face, b: &Face) {
        let Some(m) = c1.meet_raw(c2) else { return };
        if !a.leq_raw(&m) {
            return;
        }
        if a.leq_raw(b) && b.leq_raw(c1) {
            let left = c1.delta_raw(b).join_raw(&c2.delta_raw(a));
            let right = c1.delta_raw(b).join_raw(&c2.join_raw(b).delta_raw(b));
            self.plus_lem_a
                .record(left == right, || format!("c1={c1} c2={c2} a={a} b={b}"));
        }
        // b plays the role of x in part (b)
        if a.leq_raw(b) {
            let x = b;
            let top = x.join_raw(c1).join_raw(c2);
            let inner = x.join_raw(c1).delta_raw(x).join_raw(&x.join_raw(c2).delta_raw(x));
            let ok = inner.leq_raw(&top) && plus_a(c1, c2, x).ok() == Some(top.delta_raw(&inner));
            self.plus_lem_b
                .record(ok, || format!("c1={c1} c2={c2} a={a} x={x}"));
        }
    }
}

/// Checks every law on all faces, pairs and triples of `L_n`, and the
/// Boolean-sum lemma on all quadruples. Intended for `n <= 3`.
pub fn check_exhaustive(n: usize) -> AxiomReport {
    let faces: Vec<Face> = Face::all(n).collect();
    let mut laws = Laws::new();
    for x in &faces {
        laws.single(x);
        for y in &faces {
            laws.pair(x, y);
            for z in &faces {
                laws.triple(x, y, z);
                for w in &faces {
                    laws.plus_lemma(x, y, z, w);
                }
            }
        }
    }
    laws.into_report(n, true)
}

fn random_face<R: Rng>(rng: &mut R, n: usize) -> Face {
    let mut plus = 0;
    let mut minus = 0;
    for i in 0..n {
        match rng.gen_range(0..3) {
            0 => minus |= 1 << i,
            1 => plus |= 1 << i,
            _ => {}
        }
    }
    Face::raw(n, plus, minus)
}

/// A random face below `x`: each free coordinate of `x` is fixed with
/// probability 1/2 to a random sign.
fn random_below<R: Rng>(rng: &mut R, x: &Face) -> Face {
    let mut plus = x.plus_mask();
    let mut minus = x.minus_mask();
    for i in 0..x.dim() {
        if x.free_mask() >> i & 1 == 1 && rng.gen_bool(0.5) {
            if rng.gen_bool(0.5) {
                plus |= 1 << i;
            } else {
                minus |= 1 << i;
            }
        }
    }
    Face::raw(x.dim(), plus, minus)
}

/// Randomized version of [`check_exhaustive`]: `samples` draws per group of
/// laws, with comparable chains drawn directly so the order-restricted
/// axioms are exercised on every draw.
pub fn check_sampled(n: usize, samples: u64, seed: u64) -> AxiomReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut laws = Laws::new();
    debug_assert!(full_mask(n) != 0);
    for _ in 0..samples {
        let x = random_face(&mut rng, n);
        let y = random_face(&mut rng, n);
        let z = random_face(&mut rng, n);
        laws.single(&x);
        laws.pair(&x, &y);
        laws.triple(&x, &y, &z);

        // a chain x3 <= x2 <= x1 for axioms a-d
        let top = random_face(&mut rng, n);
        let mid = random_below(&mut rng, &top);
        let low = random_below(&mut rng, &mid);
        laws.pair(&low, &mid);
        laws.triple(&low, &mid, &top);
        // MR-axiom and the lemma on common lower bounds
        let a = random_below(&mut rng, &top);
        let b = random_below(&mut rng, &top);
        laws.triple(&top, &a, &b);
        laws.triple(&low, &mid, &random_below(&mut rng, &Face::top(n)).join_raw(&low));

        // Boolean-sum lemma: c1, c2 over a common a
        let seed_face = random_face(&mut rng, n);
        let base = random_below(&mut rng, &seed_face);
        let c1 = random_up(&mut rng, &base);
        let c2 = random_up(&mut rng, &base);
        let b = random_between(&mut rng, &base, &c1);
        laws.plus_lemma(&c1, &c2, &base, &b);
        let xx = random_up(&mut rng, &base);
        laws.plus_lemma(&c1, &c2, &base, &xx);
    }
    laws.into_report(n, false)
}

/// A random face above `x`: each fixed coordinate is released with
/// probability 1/2.
fn random_up<R: Rng>(rng: &mut R, x: &Face) -> Face {
    let mut plus = x.plus_mask();
    let mut minus = x.minus_mask();
    for i in 0..x.dim() {
        if rng.gen_bool(0.5) {
            plus &= !(1 << i);
            minus &= !(1 << i);
        }
    }
    Face::raw(x.dim(), plus, minus)
}

fn random_between<R: Rng>(rng: &mut R, low: &Face, high: &Face) -> Face {
    let mut plus = high.plus_mask();
    let mut minus = high.minus_mask();
    for i in 0..low.dim() {
        if (low.fixed_mask() & !high.fixed_mask()) >> i & 1 == 1 && rng.gen_bool(0.5) {
            plus |= low.plus_mask() & 1 << i;
            minus |= low.minus_mask() & 1 << i;
        }
    }
    Face::raw(low.dim(), plus, minus)
}

/// `|{d : corank(d) = r}|` for each `r` in `0..=n`, by enumeration.
pub fn corank_census(n: usize) -> Vec<u64> {
    let mut counts = vec![0u64; n + 1];
    for x in Face::all(n) {
        counts[x.corank()] += 1;
    }
    counts
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exhaustive_small_dimensions() {
        for n in 1..=2 {
            let report = check_exhaustive(n);
            for law in &report.laws {
                assert!(law.holds(), "{} fails at n={n}: {:?}", law.name, law.counterexample);
                assert!(law.checked > 0, "{} never exercised at n={n}", law.name);
            }
        }
    }

    #[test]
    fn cubic_product_small_case() {
        let x: Face = "+".parse().unwrap();
        let y: Face = "-".parse().unwrap();
        assert_eq!(cubic_product(&x, &y), y);
        assert_eq!(cubic_product(&cubic_product(&x, &y), &y), Face::top(1));
    }

    #[test]
    fn corank_counts_n3() {
        assert_eq!(corank_census(3), vec![1, 6, 12, 8]);
    }
}
