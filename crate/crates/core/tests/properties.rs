use num_complex::Complex64;
use num_rational::BigRational;
use proptest::prelude::*;

use renorm_rays::circle::{Angle, Arc, ArcSet};
use renorm_rays::lamination::{linked, Chord};
use renorm_rays::plane::{green, Params};
use renorm_rays::renorm::{in_shadow, subwindow, itinerary_point, theta, tune, RayPair, Tower, SUB_LABELS};
use renorm_rays::rotation::{minimal_rotation_set, rotation_number};

fn angle() -> impl Strategy<Value = Angle> {
    (1i64..100_000).prop_flat_map(|d| (0..d).prop_map(move |n| Angle::new(n, d).unwrap()))
}

/// Arcs shorter than one half.
fn short_arc() -> impl Strategy<Value = Arc> {
    (angle(), 1i64..1000, 2001i64..4000)
        .prop_map(|(t, n, d)| Arc::new(t, BigRational::new(n.into(), d.into())).unwrap())
}

fn any_arc() -> impl Strategy<Value = Arc> {
    (angle(), 0i64..1000).prop_map(|(t, n)| Arc::new(t, BigRational::new(n.into(), 1000.into())).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn preimages_double_back(t in angle()) {
        let (a, b) = t.preimages();
        prop_assert_eq!(a.double(), t.clone());
        prop_assert_eq!(b.double(), t);
        prop_assert!(a < b);
    }

    #[test]
    fn iterate_is_repeated_doubling(t in angle(), m in 0u64..80) {
        let mut u = t.clone();
        for _ in 0..m {
            u = u.double();
        }
        prop_assert_eq!(t.iterate(m), u);
    }

    #[test]
    fn orbit_info_describes_the_orbit(t in angle()) {
        let info = t.orbit_info();
        let start = t.iterate(info.preperiod);
        prop_assert_eq!(start.iterate(info.period), start.clone());
        if info.preperiod > 0 {
            let before = t.iterate(info.preperiod - 1);
            prop_assert_ne!(before.iterate(info.period), before);
        }
    }

    #[test]
    fn canonical_form_is_stable(arcs in prop::collection::vec(any_arc(), 0..6), t in angle()) {
        let set = ArcSet::from_arcs(arcs.clone());
        prop_assert_eq!(set.canonical(), set.clone());
        let naive = arcs.iter().any(|a| a.contains(&t));
        prop_assert_eq!(set.contains(&t), naive);
    }

    #[test]
    fn preimage_of_image_covers_the_arc(a in short_arc()) {
        let image = ArcSet::from_arcs([a.double().unwrap()]);
        let back = image.sigma_preimage_pow(1).unwrap();
        prop_assert!(ArcSet::from_arcs([a]).is_subset_of(&back));
    }

    #[test]
    fn contains_arc_matches_rational_test(a in any_arc(), b in any_arc()) {
        let off = a.start().ccw_to(b.start());
        let expected = a.is_full() || (!b.is_full() && off + b.len() <= a.len().clone());
        prop_assert_eq!(a.contains_arc(&b), expected);
    }

    #[test]
    fn linking_is_symmetric(a in angle(), b in angle(), c in angle(), d in angle()) {
        if let (Ok(x), Ok(y)) = (Chord::new(a, b), Chord::new(c, d)) {
            prop_assert_eq!(linked(&x, &y), linked(&y, &x));
        }
    }

    #[test]
    fn rotation_number_round_trips(q in 1i64..40, p in 0i64..40) {
        prop_assume!(p < q && num_integer::gcd(p, q) == 1);
        let nu = BigRational::new(p.into(), q.into());
        let set = minimal_rotation_set(&nu).unwrap();
        prop_assert_eq!(set.points.len() as i64, q);
        prop_assert_eq!(rotation_number(&set.points), Some(nu));
    }

    #[test]
    fn theta_semiconjugates(
        n in 1usize..3,
        first in 0usize..4,
        picks in prop::collection::vec(0usize..4, 1..8),
        cut in 0usize..8,
    ) {
        let tower = Tower::feigenbaum(2).unwrap();
        let p = tower.level(n).unwrap().period;
        let sub = subwindow(tower.level(n).unwrap(), p).unwrap();
        let covers = |a: &str| sub.detail.iter().find(|c| c.label == a).unwrap().covers.clone();
        let follows = |a: &str, b: &str| b.starts_with(&covers(a));
        let mut word = vec![SUB_LABELS[first]];
        for k in picks {
            let last = *word.last().unwrap();
            let next: Vec<&str> = SUB_LABELS.into_iter().filter(|l| follows(last, l)).collect();
            word.push(next[k % next.len()]);
        }
        let cut = cut % word.len();
        prop_assume!(follows(word[word.len() - 1], word[cut]));
        let t = itinerary_point(&tower, n, p, &word[..cut], &word[cut..]).unwrap();
        let a = theta(&tower, n, &t).unwrap();
        prop_assume!(!a.boundary_collapse);
        let b = theta(&tower, n, &t.iterate(p)).unwrap();
        prop_assert_eq!(b.value, a.value.double());
    }

    #[test]
    fn shadows_nest(t in angle()) {
        let tower = Tower::feigenbaum(3).unwrap();
        for n in 1..3 {
            if in_shadow(&t, &tower, n + 1, 1).unwrap() {
                prop_assert!(in_shadow(&t, &tower, n, 1).unwrap());
            }
        }
    }

    #[test]
    fn tuning_multiplies_periods(k in 1i64..64, q in 1u32..7) {
        let d = (1i64 << q) - 1;
        prop_assume!(k < d);
        let t = Angle::new(k, d).unwrap();
        let base = RayPair::new(3, Angle::new(1, 7).unwrap(), Angle::new(2, 7).unwrap()).unwrap();
        let tuned = tune(&base, &t).unwrap();
        let period = t.orbit_info().period;
        prop_assert_eq!(tuned.orbit_info().preperiod, 0);
        prop_assert_eq!(tuned.iterate(3 * period), tuned);
    }

    #[test]
    fn green_doubles_under_f(re in -3.0f64..3.0, im in -3.0f64..3.0, cr in -1.5f64..0.5, ci in -1.0f64..1.0) {
        let params = Params::new(Complex64::new(cr, ci));
        let z = Complex64::new(re, im);
        let g = green(&params, z);
        prop_assume!(g > 1e-3);
        prop_assert!((green(&params, params.f(z)) - 2.0 * g).abs() < 1e-10 * (1.0 + g));
    }
}
