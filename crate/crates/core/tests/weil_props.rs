mod common;

use aqalg_core::arith::{reciprocal_transform, Poly};
use aqalg_core::motives::{motive_of, zeta_abelian_variety, zeta_product, ZetaData};
use aqalg_core::padic::{newton_polygon, ord_q, padic_places_auto};
use aqalg_core::prime_power::ord_p_int;
use aqalg_core::weil::{
    coniveau_sub, is_effective, mth_root_factors, tate_twist, verify_weil, weil_restriction_charpoly,
    TateStructure, WeilOrbit,
};
use aqalg_core::{rat, Rational};
use common::{elliptic, elliptic_l, p, q, SMALL_Q};
use num::{BigInt, Signed};
use proptest::prelude::*;

/// `(q, a)` with `a^2 <= 4q`: the Weil polynomials of elliptic curves and
/// of some non-realizable but still Weil classes.
fn weil_trace() -> impl Strategy<Value = (u64, i64)> {
    prop::sample::select(SMALL_Q.to_vec()).prop_flat_map(|qq| {
        let b = (2.0 * (qq as f64).sqrt()).floor() as i64;
        (Just(qq), -b..=b)
    })
}

/// Products of one to three elliptic curves over one base.
fn product_data() -> impl Strategy<Value = ZetaData> {
    (prop::sample::select(vec![2u64, 3, 4, 5]), prop::collection::vec(any::<prop::sample::Index>(), 1..=3)).prop_map(
        |(qq, idx)| {
            let b = (2.0 * (qq as f64).sqrt()).floor() as i64;
            let traces: Vec<i64> = (-b..=b).collect();
            idx.iter()
                .map(|i| elliptic(*i.get(&traces), qq))
                .reduce(|x, y| zeta_product(&x, &y).unwrap())
                .unwrap()
        },
    )
}

fn all_orbits(z: &ZetaData) -> Vec<(i64, TateStructure)> {
    motive_of(z).unwrap().graded_parts().iter().map(|(w, v)| (*w, v.clone())).collect()
}

fn slopes_symmetric(np: &[Rational], m: i64) -> bool {
    let mut mirrored: Vec<Rational> = np.iter().map(|s| rat(m) - s).collect();
    mirrored.sort();
    mirrored == np
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn polygon_total_is_constant_term_valuation((qq, a) in weil_trace()) {
        let c = reciprocal_transform(&elliptic_l(a, qq), 2).unwrap();
        let np = newton_polygon(&c, &q(qq)).unwrap();
        let total = np.segments().iter().fold(rat(0), |acc, (s, m)| acc + s * rat(*m as i64));
        prop_assert_eq!(total, ord_q(&c.constant_term().abs(), &q(qq)).unwrap());
        prop_assert_eq!(np.degree(), 2);
    }

    #[test]
    fn places_regroup_into_the_polygon(z in product_data()) {
        for (w, v) in all_orbits(&z) {
            for (o, _) in v.parts() {
                let places = padic_places_auto(o.min_poly(), o.base()).unwrap();
                let mut from_places: Vec<Rational> = places
                    .iter()
                    .flat_map(|pl| std::iter::repeat(pl.slope.clone()).take(pl.local_degree))
                    .collect();
                from_places.sort();
                prop_assert_eq!(&from_places, &o.newton_polygon().slopes());
                prop_assert_eq!(places.iter().map(|pl| pl.local_degree).sum::<usize>(), o.degree());
                prop_assert!(slopes_symmetric(&from_places, w));
            }
        }
    }

    #[test]
    fn weil_orbits_have_p_power_constant_terms(z in product_data()) {
        let pr = z.base().p();
        for (w, v) in all_orbits(&z) {
            for (o, _) in v.parts() {
                let c0 = o.min_poly().constant_term().abs();
                prop_assert!(c0.is_integer());
                let n = c0.to_integer();
                let e = ord_p_int(&n, pr);
                prop_assert_eq!(n, BigInt::from(pr).pow(e as u32));
                let expected = Rational::new(BigInt::from(w * o.degree() as i64), BigInt::from(2));
                prop_assert_eq!(ord_q(&c0, o.base()).unwrap(), expected);
                prop_assert_eq!(verify_weil(o.min_poly(), o.base()), Ok(w));
            }
        }
    }

    #[test]
    fn coniveau_is_decreasing_and_matches_slopes(z in product_data()) {
        for (_, v) in all_orbits(&z) {
            for r in 0u32..4 {
                let big = coniveau_sub(&v, r).unwrap();
                let small = coniveau_sub(&v, r + 1).unwrap();
                for (o, m) in small.parts() {
                    prop_assert!(big.multiplicity(o.min_poly()) >= *m);
                }
                for (o, m) in v.parts() {
                    let min = o.newton_polygon().min_slope().cloned().unwrap();
                    let inside = min >= rat(r as i64);
                    prop_assert_eq!(big.multiplicity(o.min_poly()), if inside { *m } else { 0 });
                }
            }
        }
    }

    #[test]
    fn twist_round_trips(z in product_data(), r in -3i64..4) {
        for (_, v) in all_orbits(&z) {
            prop_assert_eq!(tate_twist(&tate_twist(&v, r), -r), v);
        }
    }

    #[test]
    fn restriction_preserves_slopes((qq, a) in weil_trace(), m in 1u32..4) {
        let base = q(qq);
        let target = base.pow(m);
        // an elliptic polynomial over q^m with trace a
        let c = p(&[target.q().try_into().unwrap(), -a, 1]);
        prop_assume!(verify_weil(&c, &target).is_ok());
        let r = weil_restriction_charpoly(&c, &base, m).unwrap();
        prop_assert_eq!(r.deg(), 2 * m as usize);
        let over_target = newton_polygon(&c, &target).unwrap();
        let over_base = newton_polygon(&r, &base).unwrap();
        let lifted: Vec<Rational> = over_target.slopes().iter().flat_map(|s| std::iter::repeat(s.clone()).take(m as usize)).collect();
        prop_assert_eq!(over_base.slopes(), lifted);
    }
}

fn brute_force_coniveau(v: &TateStructure, r: u32) -> TateStructure {
    let parts = v.parts();
    let mut best: Option<TateStructure> = None;
    for mask in 0u32..(1 << parts.len()) {
        let chosen: Vec<(WeilOrbit, usize)> =
            (0..parts.len()).filter(|i| mask >> i & 1 == 1).map(|i| parts[i].clone()).collect();
        let s = TateStructure::new(v.base().clone(), chosen).unwrap();
        if tate_twist(&s, r as i64).is_effective() && best.as_ref().map_or(true, |b| s.dim() > b.dim()) {
            best = Some(s);
        }
    }
    best.unwrap()
}

#[test]
fn coniveau_equals_brute_force_maximum() {
    let mut checked = 0;
    for qq in [2u64, 3, 4, 5, 9] {
        let traces: Vec<i64> = common::waterhouse(qq).into_iter().map(|(a, _)| a).collect();
        for (i, &a) in traces.iter().enumerate() {
            let b = traces[(i * 7 + 3) % traces.len()];
            let z = zeta_product(&elliptic(a, qq), &elliptic(b, qq)).unwrap();
            for (_, v) in all_orbits(&z) {
                if v.parts().len() > 4 {
                    continue;
                }
                for r in 0..4 {
                    assert_eq!(coniveau_sub(&v, r).unwrap(), brute_force_coniveau(&v, r));
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 100);
}

#[test]
fn mth_roots_reconstruct_the_lift() {
    let cases: Vec<(Poly, u64, u32)> = vec![
        (p(&[-4, 1]), 4, 2),
        (p(&[-2, 1]), 4, 1),
        (p(&[-9, 1]), 3, 4),
        (p(&[4, -1, 1]), 2, 2),
        (p(&[-8, 1]), 4, 3),
        (p(&[27, 0, 1]), 3, 3),
        (p(&[16, 1]), 4, 4),
    ];
    for (c, qq, m) in cases {
        let base = q(qq);
        let fs = mth_root_factors(&c, &base, m).unwrap();
        let prod: Poly = fs.iter().map(|o| o.min_poly().clone()).product();
        assert_eq!(prod, c.substitute_power(m as usize), "{c}");
        assert!(fs.iter().all(|o| o.weight() == 1 && is_effective(o)));
    }
}

#[test]
fn weight_m_corpus_orbits_split_into_weight_one() {
    // every orbit of weight m <= 4 in products of elliptic curves
    let mut seen = 0;
    for qq in [2u64, 3, 4] {
        for (a, _) in common::waterhouse(qq) {
            let e = elliptic(a, qq);
            let mut z = e.clone();
            for _ in 0..2 {
                for (w, v) in all_orbits(&z) {
                    if !(1..=4).contains(&w) {
                        continue;
                    }
                    for (o, _) in v.parts() {
                        let fs = mth_root_factors(o.min_poly(), o.base(), w as u32).unwrap();
                        let prod: Poly = fs.iter().map(|f| f.min_poly().clone()).product();
                        assert_eq!(prod, o.min_poly().substitute_power(w as usize));
                        assert!(fs.iter().all(|f| f.weight() == 1));
                        seen += 1;
                    }
                }
                z = zeta_product(&z, &e).unwrap();
            }
        }
    }
    assert!(seen > 50);
}

#[test]
fn abelian_surface_polygons_are_symmetric() {
    let l = p(&[1, 0, 0, 0, 4]);
    let z = zeta_abelian_variety(&l, &q(2)).unwrap();
    for (w, v) in all_orbits(&z) {
        for (o, _) in v.parts() {
            assert!(slopes_symmetric(&o.newton_polygon().slopes(), w));
        }
    }
}
