use kneading::coding::{kneading_of_angle, Symbol};
use kneading::components::{combinatorial_arc, conspicuous_components, pair_periodic_angles, wake_gt};
use kneading::HyperbolicComponent;

#[test]
fn equal_periods_are_separated_by_a_smaller_one() {
    let pool = pair_periodic_angles(9).unwrap();
    let comps = pool.components();
    for a in comps {
        for b in comps.iter().filter(|b| b.period() == a.period() && wake_gt(b, a)) {
            let arc = combinatorial_arc(a, b, &pool).unwrap();
            assert!(arc.iter().any(|c| c.period() < a.period()), "{b} ≻ {a} with nothing smaller between");
        }
    }
}

#[test]
fn conspicuousness_is_transitive() {
    let pool = pair_periodic_angles(9).unwrap();
    for h in pool.components() {
        let over_h = conspicuous_components(h, &pool).unwrap();
        for c in over_h.iter().filter(|c| *c != h) {
            for d in conspicuous_components(c, &pool).unwrap() {
                assert!(over_h.contains(&d), "{d} ▷ {c} ▷ {h} but not {d} ▷ {h}");
            }
        }
    }
}

#[test]
fn conspicuous_periods_decrease_along_the_wake_order() {
    let pool = pair_periodic_angles(9).unwrap();
    for h in pool.components() {
        let family = conspicuous_components(h, &pool).unwrap();
        assert_eq!(family[0], *h);
        assert!(family.windows(2).all(|w| w[0].period() > w[1].period()), "{h}");
        for c in &family[1..] {
            assert!(wake_gt(c, h), "{c} not ≻ {h}");
            for d in family.iter().filter(|d| wake_gt(c, d)) {
                assert!(c.period() < d.period(), "{c} ≻ {d} in the family of {h}");
            }
        }
    }
}

#[test]
fn paired_angles_share_their_kneading() {
    let pool = pair_periodic_angles(10).unwrap();
    for h in pool.components() {
        let n = h.period();
        let a = kneading_of_angle(h.theta_minus(), n);
        let b = kneading_of_angle(h.theta_plus(), n);
        assert_eq!(a.take(n - 1), b.take(n - 1), "{h}");
        assert_eq!(a.get(n - 1), Some(Symbol::Circ), "{h}");
        assert_eq!(b.get(n - 1), Some(Symbol::Circ), "{h}");
        assert_eq!(&a.take(n - 1)[..], &h.kneading()[..n - 1], "{h}");
    }
}

#[test]
fn chords_of_the_pool_never_cross() {
    let pool = pair_periodic_angles(8).unwrap();
    let comps: Vec<&HyperbolicComponent> = pool.components().iter().collect();
    for (i, a) in comps.iter().enumerate() {
        for b in &comps[i + 1..] {
            let inside = |x| a.theta_minus() < x && x < a.theta_plus();
            assert_eq!(inside(b.theta_minus()), inside(b.theta_plus()), "{a} crosses {b}");
        }
    }
}
