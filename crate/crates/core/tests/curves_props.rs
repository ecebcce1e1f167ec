//! Property suite for the marked-curve layer: local expansions, principal
//! part reduction, splitting, and the H^1 verdict invariants.

use proptest::prelude::*;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use unicover::curves::{
    elliptic_verdict, frobenius_on_h1, hasse_deuring, injectivity_counterexample,
    injectivity_probe_elliptic, injectivity_probe_p1, point_count,
    reduce_principal_part, rr_basis, split_elliptic, wp_star_on_h1, EllipticFunction,
    EllipticMarkedCurve, H1Class, ProbeVerdict,
};
use unicover::sampling::random_series;
use unicover::series::GlobalP1Element;
use unicover::{FiniteField, LaurentSeries};

const PRIMES: [u64; 4] = [5, 7, 11, 13];

/// Any nonsingular curve over one of the small primes.
fn curve_strategy() -> impl Strategy<Value = EllipticMarkedCurve> {
    (0usize..PRIMES.len(), any::<u64>(), any::<u64>()).prop_filter_map(
        "discriminant must not vanish",
        |(pi, a, b)| {
            let p = PRIMES[pi];
            EllipticMarkedCurve::new(p, a % p, b % p).ok()
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn expansion_satisfies_the_curve_equation(curve in curve_strategy(), extra in 0i64..=14) {
        let prec = 10 + extra;
        let (x, y) = curve.weierstrass_expansion(prec);
        let f = curve.field();
        let curve_poly = &(&(&x * &x) * &x)
            + &(&x.scale(&f.from_u64(curve.a())) + &LaurentSeries::monomial(f.from_u64(curve.b()), 0, prec));
        prop_assert!((&(&y * &y) - &curve_poly).is_zero());
        prop_assert_eq!(x.val(), -2);
        prop_assert_eq!(y.val(), -3);
    }

    #[test]
    fn basis_realizes_every_pole_order_but_one(curve in curve_strategy(), m in 0u64..=9) {
        let basis = rr_basis(&curve, m, 16);
        prop_assert_eq!(basis.len() as u64, m.max(1));
        let mut orders: Vec<u64> = basis.iter().map(|f| f.pole_order).collect();
        prop_assert!(orders.iter().all(|&o| o != 1 && o <= m.max(1)));
        orders.sort_unstable();
        orders.dedup();
        prop_assert_eq!(orders.len(), basis.len());
        for f in &basis {
            if f.pole_order == 0 {
                prop_assert!(f.expansion.is_zero() || f.expansion.val() == 0);
            } else {
                prop_assert_eq!(f.expansion.val(), -(f.pole_order as i64));
            }
        }
    }

    #[test]
    fn principal_part_reduction_reconstructs(curve in curve_strategy(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let prec = curve.p() as i64 + 6;
        let f = random_series(curve.field(), &mut rng, -6, prec);
        let (g, c, tail) = reduce_principal_part(&curve, &f).unwrap();

        prop_assert!(c < curve.p());
        prop_assert!(tail.is_zero() || tail.val() >= 0);
        let gap = LaurentSeries::monomial(curve.field().from_u64(c), -1, f.prec());
        let recon = &(&g.expansion(f.prec()) + &gap) + &tail;
        prop_assert!(recon.agrees_with(&f));
    }

    #[test]
    fn split_reconstructs_and_respects_the_obstruction(curve in curve_strategy(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let prec = curve.p() as i64 + 8;
        let f = random_series(curve.field(), &mut rng, -5, prec);
        let split = split_elliptic(&curve, &f).unwrap();

        // the residue line dies exactly when alpha - 1 is invertible, which
        // is wider than the complement of the anomalous locus
        if frobenius_on_h1(&curve) != 1 {
            prop_assert_eq!(split.obstruction, 0);
        }
        let gap = LaurentSeries::monomial(
            curve.field().from_u64(split.obstruction), -1, f.prec());
        let recon = &(&split.preimage.artin_schreier() + &split.global.expansion(f.prec())) + &gap;
        prop_assert!(recon.agrees_with(&f));
    }

    #[test]
    fn verdict_flags_are_consistent(curve in curve_strategy()) {
        let p = curve.p();
        let count = point_count(&curve);
        let alpha = frobenius_on_h1(&curve);

        // Hasse bound, and the three computations of the Frobenius trace agree
        let bound = 2.0 * (p as f64).sqrt();
        prop_assert!((p as f64 + 1.0 - count as f64).abs() <= bound);
        prop_assert_eq!(alpha, hasse_deuring(&curve));
        prop_assert_eq!(alpha, (3 * p + 1 - count) % p);

        let v = elliptic_verdict(&curve).unwrap();
        prop_assert_eq!(v.anomalous, count == p);
        prop_assert_eq!(v.injective, alpha != 1);
        prop_assert_eq!(v.surjective, alpha != 1);
        prop_assert_eq!(v.equivalence, alpha != 1);
        prop_assert_eq!(v.criteria_diverge(), (alpha == 1) != (count == p));

        // wp* acts on H^1 as multiplication by alpha - 1
        for c in 0..p {
            let image = wp_star_on_h1(&curve, H1Class { c });
            prop_assert_eq!(image.c, c * ((alpha + p - 1) % p) % p);
        }
    }

    #[test]
    fn elliptic_probe_affirms_globals(curve in curve_strategy(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = curve.p();
        let prec = p as i64 + 8;
        // b with wp(b) global: take b itself global
        let mut g = EllipticFunction::zero(&curve);
        for f in rr_basis(&curve, 5, 1) {
            g = g.add(&EllipticFunction::monomial(&curve, f.x_exp as usize, f.y_exp as usize)
                .scale(rng.next_u64() % p));
        }
        let b = g.expansion(prec);

        match injectivity_probe_elliptic(&curve, &b).unwrap() {
            ProbeVerdict::Affirmative { global } => {
                prop_assert!(global.expansion(prec).agrees_with(&b));
            }
            ProbeVerdict::Obstructed { .. } => prop_assert!(false, "a global input is never obstructed"),
        }
    }

    #[test]
    fn p1_probe_affirms_globals((fi, seed) in (0usize..3, any::<u64>())) {
        let field = [
            FiniteField::prime(2).unwrap(),
            FiniteField::prime(5).unwrap(),
            FiniteField::extension(3, 2).unwrap(),
        ][fi].clone();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let coeffs = (0..5).map(|_| unicover::sampling::random_element(&field, &mut rng)).collect();
        let h = GlobalP1Element::new(&field, coeffs).unwrap();
        let b = h.to_series(12);

        match injectivity_probe_p1(&b).unwrap() {
            ProbeVerdict::Affirmative { global } => prop_assert_eq!(global, h),
            ProbeVerdict::Obstructed { .. } => prop_assert!(false, "the projective line has no obstructions"),
        }
    }
}

#[test]
fn counterexamples_are_obstructed() {
    // every alpha = 1 curve over the two smallest usable primes; this is
    // wider than the anomalous locus because of the divergent curves
    for p in [5u64, 7] {
        for a in 0..p {
            for b in 0..p {
                let Ok(curve) = EllipticMarkedCurve::new(p, a, b) else { continue };
                let prec = p as i64 + 4;
                if frobenius_on_h1(&curve) != 1 {
                    assert!(injectivity_counterexample(&curve, prec).is_err());
                    continue;
                }
                let witness = injectivity_counterexample(&curve, prec).unwrap();
                match injectivity_probe_elliptic(&curve, &witness).unwrap() {
                    ProbeVerdict::Obstructed { h1_class } => assert_eq!(h1_class, 1),
                    ProbeVerdict::Affirmative { .. } => panic!("witness must be obstructed"),
                }
            }
        }
    }
}

#[test]
fn divergent_curves_exist_and_split_detects_them() {
    // count = 2p with alpha = 1 - p = 1: the two criteria disagree
    let curve = EllipticMarkedCurve::new(5, 3, 0).unwrap();
    assert_eq!(point_count(&curve), 10);
    assert_eq!(frobenius_on_h1(&curve), 1);
    let v = elliptic_verdict(&curve).unwrap();
    assert!(v.criteria_diverge());
    assert!(!v.anomalous);
    assert!(!v.injective);

    // the obstruction is live even though the curve is not anomalous
    let pole = LaurentSeries::monomial(curve.field().one(), -5, 7);
    let split = split_elliptic(&curve, &pole).unwrap();
    assert_eq!(split.obstruction, 1);
}
