use cubemob_core::face::Coord;
use cubemob_core::Face;
use proptest::prelude::*;

fn face(n: usize) -> impl Strategy<Value = Face> {
    prop::collection::vec(prop_oneof![Just(Coord::Minus), Just(Coord::Plus), Just(Coord::Free)], n)
        .prop_map(|c| Face::from_coords(&c).unwrap())
}

fn triple() -> impl Strategy<Value = (Face, Face, Face)> {
    (1usize..=10).prop_flat_map(|n| (face(n), face(n), face(n)))
}

proptest! {
    #[test]
    fn join_is_a_semilattice((x, y, z) in triple()) {
        prop_assert_eq!(x.join(&y).unwrap(), y.join(&x).unwrap());
        prop_assert_eq!(x.join(&y).unwrap().join(&z).unwrap(), x.join(&y.join(&z).unwrap()).unwrap());
        prop_assert!(x.leq(&x.join(&y).unwrap()).unwrap());
        prop_assert_eq!(x.leq(&y).unwrap(), x.join(&y).unwrap() == y);
    }

    #[test]
    fn delta_is_an_involution_below((x, y, _z) in triple()) {
        let y = x.join(&y).unwrap();
        // reflecting through the centre of y twice is the identity
        prop_assert_eq!(y.delta(&y.delta(&x).unwrap()).unwrap(), x);
        prop_assert!(y.delta(&x).unwrap().leq(&y).unwrap());
        prop_assert_eq!(y.delta(&x).unwrap().corank(), x.corank());
    }

    #[test]
    fn representations_round_trip((x, _y, _z) in triple()) {
        prop_assert_eq!(Face::from_signed_set(&x.to_signed_set()).unwrap(), x);
        prop_assert_eq!(Face::from_interval_pair(&x.to_interval_pair()).unwrap(), x);
        prop_assert_eq!(x.to_string().parse::<Face>().unwrap(), x);
        prop_assert_eq!(x.antipode().antipode(), x);
    }

    #[test]
    fn interval_pair_delta_agrees((x, y, _z) in triple()) {
        let x = x.join(&y).unwrap();
        let lhs = x.delta(&y).unwrap().to_interval_pair();
        prop_assert_eq!(x.to_interval_pair().delta(&y.to_interval_pair()).unwrap(), lhs);
    }

    #[test]
    fn meet_is_greatest_lower_bound((x, y, z) in triple()) {
        match x.meet(&y).unwrap() {
            Some(m) => {
                prop_assert!(m.leq(&x).unwrap() && m.leq(&y).unwrap());
                if z.leq(&x).unwrap() && z.leq(&y).unwrap() {
                    prop_assert!(z.leq(&m).unwrap());
                }
            }
            None => prop_assert!(!(z.leq(&x).unwrap() && z.leq(&y).unwrap())),
        }
    }
}
