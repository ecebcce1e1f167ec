//! Property suite for truncated Laurent arithmetic and the local
//! Artin-Schreier solvers.

use proptest::prelude::*;
use unicover::series::{artin_schreier_solve, artin_schreier_solve_tail, split_p1};
use unicover::{FiniteField, GlobalP1Element, LaurentSeries, Ring};

fn fields() -> Vec<FiniteField> {
    vec![
        FiniteField::prime(2).unwrap(),
        FiniteField::prime(3).unwrap(),
        FiniteField::prime(5).unwrap(),
        FiniteField::prime(7).unwrap(),
        FiniteField::extension(2, 2).unwrap(),
        FiniteField::extension(3, 2).unwrap(),
        FiniteField::extension(2, 3).unwrap(),
    ]
}

/// Field, valuation window, and coefficient indices; the indices wrap at
/// the field order so a single strategy serves every field.
fn series_data() -> impl Strategy<Value = (usize, i64, i64, Vec<u64>)> {
    (
        0usize..fields().len(),
        -6i64..=3,
        0i64..=14,
        prop::collection::vec(any::<u64>(), 25),
    )
}

fn build(field: &FiniteField, val: i64, extra: i64, idxs: &[u64]) -> LaurentSeries {
    let prec = val + extra;
    let coeffs = (0..=(prec - val))
        .map(|k| field.element_from_index(idxs[k as usize % idxs.len()] % field.order()))
        .collect();
    LaurentSeries::from_coeffs(field, val, prec, coeffs).expect("window is consistent")
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn addition_laws((fi, val, extra, idxs) in series_data(),
                     (val2, extra2) in (-6i64..=3, 0i64..=14),
                     (val3, extra3) in (-6i64..=3, 0i64..=14)) {
        let field = &fields()[fi];
        let a = build(field, val, extra, &idxs);
        let b = build(field, val2, extra2, &idxs[1..]);
        let c = build(field, val3, extra3, &idxs[2..]);

        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!((&a + &b).prec(), a.prec().min(b.prec()));
        prop_assert!((&a - &a).is_zero());
        let zero = LaurentSeries::zero(field, a.prec());
        prop_assert_eq!(&a + &zero, a);
    }

    #[test]
    fn multiplication_laws((fi, val, extra, idxs) in series_data(),
                           (val2, extra2) in (-6i64..=3, 0i64..=14),
                           (val3, extra3) in (-6i64..=3, 0i64..=14)) {
        let field = &fields()[fi];
        let a = build(field, val, extra, &idxs);
        let b = build(field, val2, extra2, &idxs[1..]);
        let c = build(field, val3, extra3, &idxs[2..]);

        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!((&a * &b).prec(), (a.val() + b.prec()).min(b.val() + a.prec()));
        if !a.is_zero() && !b.is_zero() {
            prop_assert_eq!((&a * &b).val(), a.val() + b.val());
        }

        // distribution can only gain precision on the left
        let lhs = &a * &(&b + &c);
        let rhs = &(&a * &b) + &(&a * &c);
        prop_assert!(lhs.agrees_with(&rhs));
        prop_assert!(lhs.prec() >= rhs.prec());
    }

    #[test]
    fn truncation_and_inverse((fi, val, extra, idxs) in series_data(), cut in -8i64..=20) {
        let field = &fields()[fi];
        let a = build(field, val, extra, &idxs);

        let t = a.truncate(cut);
        if cut >= a.prec() {
            prop_assert_eq!(&t, &a);
        } else {
            prop_assert_eq!(t.prec(), cut);
            prop_assert!(t.agrees_with(&a));
        }

        if !a.is_zero() {
            let inv = a.inverse().unwrap();
            prop_assert_eq!(inv.val(), -a.val());
            prop_assert_eq!(inv.prec(), a.prec() - 2 * a.val());
            let one = LaurentSeries::one(field, a.prec());
            prop_assert!((&a * &inv).agrees_with(&one));
        }
    }

    #[test]
    fn frobenius_is_a_ring_map((fi, val, extra, idxs) in series_data(),
                               (val2, extra2) in (-6i64..=3, 0i64..=14)) {
        let field = &fields()[fi];
        let a = build(field, val, extra, &idxs);
        let b = build(field, val2, extra2, &idxs[3..]);

        prop_assert_eq!((&a + &b).frobenius(), &a.frobenius() + &b.frobenius());
        prop_assert_eq!((&a * &b).frobenius(), &a.frobenius() * &b.frobenius());
        // wp = frobenius - id is additive
        prop_assert_eq!((&a + &b).artin_schreier(), &a.artin_schreier() + &b.artin_schreier());
    }

    #[test]
    fn tail_solver_round_trip((fi, extra, idxs) in (0usize..fields().len(), 0i64..=20,
                                                    prop::collection::vec(any::<u64>(), 25))) {
        let field = &fields()[fi];
        let l = build(field, 1, extra, &idxs);
        let m = build(field, 1, extra, &idxs[4..]);

        let b = artin_schreier_solve_tail(&l).unwrap();
        prop_assert!(b.is_zero() || b.val() >= 1);
        prop_assert_eq!(b.prec(), l.prec());
        prop_assert!(b.artin_schreier().agrees_with(&l));

        // the solver is linear because wp is additive and injective on tails
        let bm = artin_schreier_solve_tail(&m).unwrap();
        let bsum = artin_schreier_solve_tail(&(&l + &m)).unwrap();
        prop_assert_eq!(bsum, &b + &bm);
    }

    #[test]
    fn local_solver_round_trip((fi, val, extra, idxs) in series_data()) {
        let field = &fields()[fi];
        let b = build(field, val.max(-3), extra, &idxs);
        let g = b.artin_schreier();

        let b2 = artin_schreier_solve(&g).expect("wp image is solvable");
        prop_assert!(b2.artin_schreier().agrees_with(&g));

        // solutions differ by a prime-field constant
        let d = &b - &b2;
        if !d.is_zero() {
            prop_assert_eq!(d.val(), 0);
            let c = d.coeff(0);
            let p = field.characteristic();
            prop_assert!((0..p).any(|k| c == field.from_u64(k)));
            prop_assert!(d.agrees_with(&LaurentSeries::monomial(c, 0, d.prec())));
        }
    }

    #[test]
    fn local_solver_rejections((fi, idxs) in (0usize..fields().len(),
                                              prop::collection::vec(any::<u64>(), 25))) {
        let field = &fields()[fi];
        // a simple pole is never of the form wp(b)
        let pole = build(field, -1, 8, &idxs);
        if pole.val() == -1 {
            prop_assert!(artin_schreier_solve(&pole).is_none());
        }
        // a constant with nonzero absolute trace is not solvable
        let c = field.element_from_index(idxs[0] % field.order());
        let g = LaurentSeries::monomial(c.clone(), 0, 8);
        prop_assert_eq!(artin_schreier_solve(&g).is_some(), c.absolute_trace() == 0);
    }

    #[test]
    fn p1_split_reconstructs((fi, val, extra, idxs) in series_data()) {
        let field = &fields()[fi];
        let f = build(field, val, extra, &idxs);
        let (b, h) = split_p1(&f);

        prop_assert!(b.is_zero() || b.val() >= 1);
        prop_assert_eq!(b.prec(), f.prec());
        prop_assert!(h.pole_order() as i64 <= (-f.val()).max(0));
        let recon = &b.artin_schreier() + &h.to_series(f.prec());
        prop_assert!(recon.agrees_with(&f));
    }

    #[test]
    fn p1_ring_and_expansion((fi, i1, i2, i3) in (0usize..fields().len(),
                                                  prop::collection::vec(any::<u64>(), 4),
                                                  prop::collection::vec(any::<u64>(), 4),
                                                  prop::collection::vec(any::<u64>(), 4))) {
        let field = &fields()[fi];
        let gen = |idxs: &[u64]| {
            let coeffs = idxs.iter().map(|&i| field.element_from_index(i % field.order())).collect();
            GlobalP1Element::new(field, coeffs).unwrap()
        };
        let (a, b, c) = (gen(&i1), gen(&i2), gen(&i3));

        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));

        // expansion at the marked point is a ring map and sees the pole order
        let prec = 4i64;
        prop_assert!(a.mul(&b).to_series(prec).agrees_with(&(&a.to_series(prec + 8) * &b.to_series(prec + 8))));
        if !a.is_zero() {
            prop_assert_eq!(a.to_series(prec).val(), -(a.pole_order() as i64));
        }
    }
}
