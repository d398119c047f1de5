mod common;

use aqalg_core::arith::{factor_rational_poly, reciprocal_transform, Poly};
use aqalg_core::endalg::{
    brauer_block, compute_A, compute_a_in_degree, curve_end_algebra, honda_tate_dimension, rank_from_algebra,
    s_selection, weight1_realization, witt_vector_rank, AlgebraDescription,
};
use aqalg_core::motives::{motive_of, zeta_product, ZetaData};
use aqalg_core::weil::WeilOrbit;
use aqalg_core::{rat, ratio, Rational};
use common::{complex_roots, elliptic, elliptic_l, k_subsets, p, q, to_f64, waterhouse, EllipticKind, SMALL_Q};
use num::complex::Complex64;
use num::{BigInt, Integer, One};
use proptest::prelude::*;

fn build(qq: u64, idx: &[prop::sample::Index]) -> ZetaData {
    let traces: Vec<i64> = waterhouse(qq).into_iter().map(|(a, _)| a).collect();
    idx.iter()
        .map(|i| elliptic(*i.get(&traces), qq))
        .reduce(|x, y| zeta_product(&x, &y).unwrap())
        .unwrap()
}

fn varieties() -> impl Strategy<Value = ZetaData> {
    (prop::sample::select(vec![2u64, 3, 4, 5, 8, 9]), prop::collection::vec(any::<prop::sample::Index>(), 1..=3))
        .prop_map(|(qq, idx)| build(qq, &idx))
}

/// Selected orbits of the middle weight with multiplicities.
fn kept_dimension(z: &ZetaData) -> usize {
    let v = motive_of(z).unwrap().part(z.dim_n() as i64);
    s_selection(&v).parts().iter().map(|(o, m)| m * o.degree()).sum()
}

fn check_algebra(a: &AlgebraDescription) {
    for b in &a.blocks {
        let mut e = BigInt::one();
        for (_, inv) in &b.finite_invariants {
            assert!(inv >= &rat(0) && inv < &rat(1));
            e = e.lcm(inv.denom());
        }
        if b.real_places > 0 {
            e = e.lcm(b.real_invariant.denom());
        }
        assert_eq!(BigInt::from(b.index_e), e);
        assert!(b.invariant_sum().is_integer());
        assert_eq!(b.orbit_size, b.center_poly.deg());
        assert!(b.r() >= 1);
    }
    let dim: usize = a.blocks.iter().map(|b| b.r() * b.r() * b.index_e * b.index_e * b.orbit_size).sum();
    assert_eq!(a.dim_q(), dim);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn rank_is_the_selected_dimension(z in varieties()) {
        let a = compute_A(&z).unwrap();
        check_algebra(&a);
        prop_assert_eq!(rank_from_algebra(&a), kept_dimension(&z));
        if witt_vector_rank(&z).unwrap() == 0 {
            prop_assert!(a.is_zero());
        }
    }

    #[test]
    fn blowing_up_points_leaves_the_algebra_unchanged(z in varieties(), extra in 1usize..3) {
        let n = z.dim_n();
        prop_assume!(n >= 2);
        // a blow-up adds classes q^r to H^{2r} for 0 < r < n
        let mut ls = z.l_polys().to_vec();
        for r in 1..n {
            let class = Poly::new(vec![rat(1), -z.base().q_pow(r as i64)]);
            ls[2 * r] = &ls[2 * r] * &class.pow(extra as u32);
        }
        let blown = ZetaData::new(z.base().clone(), n, ls).unwrap();
        prop_assert_eq!(compute_A(&blown).unwrap(), compute_A(&z).unwrap());
        prop_assert_eq!(witt_vector_rank(&blown).unwrap(), witt_vector_rank(&z).unwrap());
    }
}

#[test]
fn other_weights_do_not_matter() {
    // same H^2, different H^1 and H^3
    let base = elliptic(1, 2);
    let x = zeta_product(&base, &base).unwrap();
    let mut ls = x.l_polys().to_vec();
    let other = elliptic(-1, 2);
    let swap = zeta_product(&other, &other).unwrap();
    ls[1] = swap.l_poly(1).clone();
    ls[3] = swap.l_poly(3).clone();
    let y = ZetaData::new(x.base().clone(), 2, ls).unwrap();
    assert_eq!(compute_A(&x).unwrap(), compute_A(&y).unwrap());
}

#[test]
fn elliptic_golden_suite() {
    let mut count = 0;
    for qq in SMALL_Q {
        let pr = q(qq).p() as i64;
        for (a, kind) in waterhouse(qq) {
            let alg = curve_end_algebra(&elliptic_l(a, qq), &q(qq)).unwrap();
            check_algebra(&alg);
            assert_eq!(rank_from_algebra(&alg), 2, "q={qq} a={a}");
            assert_eq!(alg.blocks.len(), 1);
            let b = &alg.blocks[0];
            match kind {
                EllipticKind::Ordinary | EllipticKind::SupersingularField => {
                    assert_eq!((b.orbit_size, b.index_e, b.r()), (2, 1, 1), "q={qq} a={a}");
                    assert_eq!(alg.dim_q(), 2);
                    assert_eq!(b.real_places, 0);
                }
                EllipticKind::Quaternion => {
                    assert_eq!((b.orbit_size, b.index_e, b.r()), (1, 2, 1), "q={qq} a={a}");
                    assert_eq!(b.finite_invariant_values(), vec![ratio(1, 2)]);
                    assert_eq!((b.real_places, b.real_invariant.clone()), (1, ratio(1, 2)));
                    assert_eq!(b.center_poly, p(&[-a / 2, 1]));
                    assert_eq!(alg.dim_q(), 4);
                }
            }
            if kind == EllipticKind::Ordinary {
                assert_eq!(witt_vector_rank(&elliptic(a, qq)).unwrap(), 1);
            } else {
                // both slopes are 1/2
                assert_eq!(witt_vector_rank(&elliptic(a, qq)).unwrap(), 2);
                assert_eq!(a.rem_euclid(pr), 0);
            }
            let c = reciprocal_transform(&elliptic_l(a, qq), 2).unwrap();
            for (f, _) in factor_rational_poly(&c).unwrap().factors {
                let o = WeilOrbit::new(f, q(qq)).unwrap();
                assert_eq!(honda_tate_dimension(&o), Ok(1), "q={qq} a={a}");
            }
            count += 1;
        }
    }
    assert!(count > 100);
}

#[test]
fn supersingular_squares_have_zero_algebra() {
    for pr in [2i64, 3, 5] {
        let qq = (pr * pr) as u64;
        for a in [2 * pr, -2 * pr] {
            let e = elliptic(a, qq);
            let ee = zeta_product(&e, &e).unwrap();
            assert!(compute_A(&ee).unwrap().is_zero());
            assert_eq!(witt_vector_rank(&ee).unwrap(), 0);
            // H^1 of the product still carries the quaternion algebra
            let h1 = compute_a_in_degree(&ee, 1).unwrap();
            assert_eq!(h1.blocks[0].index_e, 2);
            assert_eq!(h1.blocks[0].r(), 2);
        }
    }
}

fn harvest_orbits() -> Vec<WeilOrbit> {
    let mut out: Vec<WeilOrbit> = Vec::new();
    for qq in [2u64, 3, 4, 5, 7, 8, 9] {
        let traces: Vec<i64> = waterhouse(qq).into_iter().map(|(a, _)| a).collect();
        for (i, &a) in traces.iter().enumerate() {
            let b = traces[(3 * i + 1) % traces.len()];
            let z = zeta_product(&elliptic(a, qq), &elliptic(b, qq)).unwrap();
            for (_, v) in motive_of(&z).unwrap().graded_parts() {
                for (o, _) in v.parts() {
                    if !out.contains(o) {
                        out.push(o.clone());
                    }
                }
            }
        }
    }
    out
}

#[test]
fn brauer_reciprocity_on_harvested_orbits() {
    let orbits = harvest_orbits();
    assert!(orbits.len() >= 100, "{}", orbits.len());
    for o in &orbits {
        let n_odd = o.weight() % 2 != 0;
        let b = brauer_block(o, n_odd).unwrap();
        let real = &b.real_invariant * Rational::from_integer(BigInt::from(b.real_places));
        let sum = b.finite_invariants.iter().fold(real, |acc, (_, i)| acc + i);
        assert!(sum.is_integer(), "{}", o.min_poly());
        if !n_odd {
            assert_eq!(b.real_invariant, rat(0));
        }
    }
}

#[test]
fn weight_one_orbits_are_all_selected() {
    for qq in SMALL_Q {
        for (a, _) in waterhouse(qq) {
            let z = elliptic(a, qq);
            let h1 = motive_of(&z).unwrap().part(1);
            assert_eq!(s_selection(&h1), h1);
        }
    }
}

/// Every root of the orbit is a product of `m` roots of the restricted
/// polynomial, up to floating error.
fn realized_by_root_products(o: &WeilOrbit, restricted: &Poly, m: usize) -> bool {
    let alphas = complex_roots(&to_f64(o.min_poly()));
    let roots = complex_roots(&to_f64(restricted));
    let prods: Vec<Complex64> =
        k_subsets(roots.len(), m).iter().map(|s| s.iter().map(|&i| roots[i]).product()).collect();
    alphas.iter().all(|a| prods.iter().any(|x| (x - a).norm() <= 1e-6 * a.norm().max(1.0)))
}

#[test]
fn weight_m_orbits_are_realized_in_exterior_powers() {
    let mut checked = 0;
    for qq in [2u64, 3, 4] {
        for o in harvest_orbits().into_iter().filter(|o| o.base() == &q(qq)) {
            let m = o.weight();
            if !(1..=3).contains(&m) || o.degree() * m as usize > 8 {
                continue;
            }
            let r = weight1_realization(&o, m as u32).unwrap();
            assert_eq!(r.q_m, q(qq).pow(m as u32));
            assert!(realized_by_root_products(&o, &r.restricted, m as usize), "{}", o.min_poly());
            checked += 1;
        }
    }
    // T - q over q with m = 2
    for qq in [2u64, 3, 5] {
        let o = WeilOrbit::new(p(&[-(qq as i64), 1]), q(qq)).unwrap();
        let r = weight1_realization(&o, 2).unwrap();
        assert_eq!(r.restricted, p(&[qq as i64, 0, 1]));
        assert!(realized_by_root_products(&o, &r.restricted, 2));
        checked += 1;
    }
    assert!(checked > 10);
}
