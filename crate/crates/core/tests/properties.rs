use kneading::coding::{PartitionSpec, Symbol, Word};
use kneading::components::pair_periodic_angles;
use kneading::{Angle, Arc, ArcSet};
use proptest::prelude::*;

fn angle() -> impl Strategy<Value = Angle> {
    (1u64..=96).prop_flat_map(|den| (0..den).prop_map(move |num| Angle::new(num, den)))
}

/// Arcs of length below a half turn, with arbitrary end types.
fn arc() -> impl Strategy<Value = Arc> {
    (angle(), 1u64..48, any::<bool>(), any::<bool>()).prop_map(|(start, len, lc, rc)| {
        let end = add(&start, len, 97);
        Arc::new(start.clone(), end, lc, rc).unwrap_or_else(|_| Arc::point(start))
    })
}

fn add(a: &Angle, num: u64, den: u64) -> Angle {
    let (p, q): (u64, u64) = (a.numer().try_into().unwrap(), a.denom().try_into().unwrap());
    Angle::new(p * den + num * q, q * den)
}

fn arc_set() -> impl Strategy<Value = ArcSet> {
    prop::collection::vec(arc(), 0..4).prop_map(|arcs| ArcSet::from_arcs(&arcs))
}

fn symbol() -> impl Strategy<Value = Symbol> {
    prop_oneof![Just(Symbol::A), Just(Symbol::B), Just(Symbol::Star)]
}

fn star_spec() -> impl Strategy<Value = PartitionSpec> {
    let pool = pair_periodic_angles(6).unwrap();
    let specs: Vec<PartitionSpec> = pool.components().iter().map(|h| h.star_spec()).collect();
    prop::sample::select(specs)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn complement_is_an_involution(s in arc_set()) {
        prop_assert_eq!(s.complement().complement(), s.clone());
        prop_assert!(s.union(&s.complement()).is_full());
        prop_assert!(s.intersect(&s.complement()).is_empty());
    }

    #[test]
    fn set_algebra_matches_membership(s in arc_set(), t in arc_set(), x in angle()) {
        let (a, b) = (s.contains_point(&x), t.contains_point(&x));
        prop_assert_eq!(s.union(&t).contains_point(&x), a || b);
        prop_assert_eq!(s.intersect(&t).contains_point(&x), a && b);
        prop_assert_eq!(s.difference(&t).contains_point(&x), a && !b);
    }

    #[test]
    fn preimage_then_image(s in arc_set(), x in angle()) {
        let pre = s.preimage_under_sigma();
        prop_assert_eq!(pre.contains_point(&x), s.contains_point(&x.double()));
        if !s.arcs().iter().any(|a| a.is_full()) && pre.arcs().iter().all(|a| a.length() < kneading::Fraction::half_turn()) {
            prop_assert_eq!(pre.image_under_sigma().unwrap(), s);
        }
    }

    #[test]
    fn display_round_trip(s in arc_set(), x in angle()) {
        prop_assert_eq!(s.to_string().parse::<ArcSet>().unwrap(), s);
        prop_assert_eq!(x.to_string().parse::<Angle>().unwrap(), x);
    }

    #[test]
    fn cylinders_partition_the_circle(spec in star_spec(), len in 1usize..=3) {
        let p = spec.partition();
        let alphabet = [Symbol::A, Symbol::B, Symbol::Star];
        let mut words: Vec<Vec<Symbol>> = vec![vec![]];
        for _ in 0..len {
            words = words
                .into_iter()
                .flat_map(|w| alphabet.iter().map(move |&s| { let mut v = w.clone(); v.push(s); v }))
                .collect();
        }
        let sets: Vec<ArcSet> = words.iter().map(|w| p.cylinder(w).unwrap()).collect();
        let mut union = ArcSet::empty();
        for (i, s) in sets.iter().enumerate() {
            for t in &sets[i + 1..] {
                prop_assert!(s.intersect(t).is_empty());
            }
            union = union.union(s);
        }
        prop_assert!(union.is_full());
    }

    #[test]
    fn cylinder_shift_compatibility(spec in star_spec(), s in symbol(), w in prop::collection::vec(symbol(), 0..4)) {
        let p = spec.partition();
        let mut sw = vec![s];
        sw.extend(&w);
        let expected = p.piece(s).unwrap().intersect(&p.cylinder(&w).unwrap().preimage_under_sigma());
        prop_assert_eq!(p.cylinder(&sw).unwrap(), expected);
    }

    #[test]
    fn cylinder_membership_is_itinerary_prefix(spec in star_spec(), w in prop::collection::vec(symbol(), 1..5), x in angle()) {
        let p = spec.partition();
        let inside = p.itinerary_prefix(&x, w.len()) == w;
        prop_assert_eq!(p.cylinder(&w).unwrap().contains_point(&x), inside);
    }

    #[test]
    fn itinerary_shifts_with_sigma(spec in star_spec(), x in angle()) {
        let p = spec.partition();
        let word = p.itinerary_word(&x);
        let next = p.itinerary_word(&x.double());
        for i in 0..30 {
            prop_assert_eq!(word.get(i + 1), next.get(i));
        }
    }

    #[test]
    fn word_text_round_trip(prefix in prop::collection::vec(symbol(), 0..5), cycle in prop::collection::vec(symbol(), 1..5)) {
        let w = Word::lasso(prefix.clone(), cycle.clone());
        prop_assert_eq!(w.to_string().parse::<Word>().unwrap(), w.clone());
        for i in 0..20 {
            let expected = if i < prefix.len() { prefix[i] } else { cycle[(i - prefix.len()) % cycle.len()] };
            prop_assert_eq!(w.get(i), Some(expected));
        }
    }
}
