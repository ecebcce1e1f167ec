//! Property suite for the unipotent matrix layer: group laws, Lang-map
//! equivariance, and the equivalence decision.

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use unicover::sampling::{random_matrix_fq, random_matrix_series, random_tail};
use unicover::unipotent::{
    entry_correction_check, lang_map, lang_section, orbit_classes, p_conjugate, p_equiv_decide,
    positions_row_major, UnipotentMatrix,
};
use unicover::{FieldElement, FiniteField};

fn fields() -> Vec<FiniteField> {
    vec![
        FiniteField::prime(2).unwrap(),
        FiniteField::prime(3).unwrap(),
        FiniteField::prime(5).unwrap(),
        FiniteField::extension(2, 2).unwrap(),
    ]
}

fn setup() -> impl Strategy<Value = (usize, usize, u64)> {
    (0usize..fields().len(), 2usize..=4, any::<u64>())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn group_laws((fi, n, seed) in setup()) {
        let field = &fields()[fi];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_matrix_fq(n, field, &mut rng);
        let b = random_matrix_fq(n, field, &mut rng);
        let c = random_matrix_fq(n, field, &mut rng);

        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert!(a.mul(&a.inverse()).is_identity());
        prop_assert!(a.inverse().mul(&a).is_identity());
        prop_assert_eq!(a.inverse().inverse(), a.clone());
        prop_assert_eq!(a.mul(&b).inverse(), b.inverse().mul(&a.inverse()));
        prop_assert_eq!(
            a.mul(&b).frobenius_entrywise(),
            a.frobenius_entrywise().mul(&b.frobenius_entrywise())
        );
    }

    #[test]
    fn lang_map_equivariance((fi, n, seed) in setup()) {
        let field = &fields()[fi];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let b = random_matrix_fq(n, field, &mut rng);
        let c = random_matrix_fq(n, field, &mut rng);

        prop_assert_eq!(lang_map(&c.mul(&b)), p_conjugate(&c, &lang_map(&b)));
        prop_assert!(lang_map(&UnipotentMatrix::identity(n, &field.zero()).unwrap()).is_identity());
    }

    #[test]
    fn twisted_conjugation_is_an_action((fi, n, seed) in setup()) {
        let field = &fields()[fi];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_matrix_fq(n, field, &mut rng);
        let c1 = random_matrix_fq(n, field, &mut rng);
        let c2 = random_matrix_fq(n, field, &mut rng);

        prop_assert_eq!(
            p_conjugate(&c1, &p_conjugate(&c2, &m)),
            p_conjugate(&c1.mul(&c2), &m)
        );
        let id = UnipotentMatrix::identity(n, &field.zero()).unwrap();
        prop_assert_eq!(p_conjugate(&id, &m), m);
    }

    #[test]
    fn equivalence_decision_finds_constructed_witnesses((fi, n, seed) in setup()) {
        let field = &fields()[fi];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m_prime = random_matrix_fq(n, field, &mut rng);
        let c = random_matrix_fq(n, field, &mut rng);
        let m = p_conjugate(&c, &m_prime);

        let witness = p_equiv_decide(&m, &m_prime).unwrap().expect("orbits coincide");
        prop_assert_eq!(p_conjugate(&witness, &m_prime), m.clone());

        // reflexivity and symmetry
        prop_assert!(p_equiv_decide(&m, &m).unwrap().is_some());
        prop_assert!(p_equiv_decide(&m_prime, &m).unwrap().is_some());
    }

    #[test]
    fn equivalence_decision_matches_the_trace_criterion(
        (fi, i1, i2) in (0usize..fields().len(), any::<u64>(), any::<u64>())
    ) {
        // for n = 2 the single entry equation is wp(c) = b - a, solvable
        // exactly when the difference has absolute trace zero
        let field = &fields()[fi];
        let a = field.element_from_index(i1 % field.order());
        let b = field.element_from_index(i2 % field.order());
        let ma = UnipotentMatrix::new(2, vec![a.clone()]).unwrap();
        let mb = UnipotentMatrix::new(2, vec![b.clone()]).unwrap();

        let equivalent = p_equiv_decide(&ma, &mb).unwrap().is_some();
        prop_assert_eq!(equivalent, (&b - &a).absolute_trace() == 0);
    }

    #[test]
    fn correction_terms_only_see_smaller_diagonals((fi, n, seed) in setup()) {
        let field = &fields()[fi];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let b = random_matrix_fq(n, field, &mut rng);
        let m = random_matrix_fq(n, field, &mut rng);
        for d in 1..n {
            prop_assert!(entry_correction_check(&b, &m, d, &mut rng, 4));
        }
    }

    #[test]
    fn equivalence_decision_over_series((fi, seed) in (0usize..3, any::<u64>())) {
        let field = &fields()[fi];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = 3;
        let prec = 30;
        let m_prime = random_matrix_series(n, field, &mut rng, 3, prec);
        // a conjugator with tail entries keeps every equation solvable
        let mut c = UnipotentMatrix::identity(n, &unicover::LaurentSeries::zero(field, prec)).unwrap();
        for (i, j) in positions_row_major(n) {
            c.set_entry(i, j, random_tail(field, &mut rng, prec));
        }
        let m = p_conjugate(&c, &m_prime);

        let witness = p_equiv_decide(&m, &m_prime).unwrap().expect("orbits coincide");
        prop_assert!(p_conjugate(&witness, &m_prime).agrees_with(&m));
    }
}

#[test]
fn orbit_reports_are_coherent() {
    for (n, field, expected) in [
        (2, FiniteField::prime(2).unwrap(), 2),
        (2, FiniteField::prime(3).unwrap(), 3),
        (2, FiniteField::prime(5).unwrap(), 5),
        (3, FiniteField::prime(2).unwrap(), 5),
    ] {
        let report = orbit_classes(n, &field).unwrap();
        assert_eq!(report.class_count, expected);
        assert_eq!(report.class_sizes.len(), expected);
        assert_eq!(report.representatives.len(), expected);
        let total: u64 = report.class_sizes.iter().sum();
        assert_eq!(total, field.order().pow((n * (n - 1) / 2) as u32));

        // representatives really are pairwise inequivalent
        for (i, a) in report.representatives.iter().enumerate() {
            for b in report.representatives.iter().skip(i + 1) {
                assert!(p_equiv_decide(a, b).unwrap().is_none());
            }
        }
    }
}

#[test]
fn lang_sections_verify() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for field in [FiniteField::prime(2).unwrap(), FiniteField::prime(3).unwrap()] {
        for n in 2..=3 {
            for _ in 0..10 {
                let m = random_matrix_fq(n, &field, &mut rng);
                let section = lang_section(&m).unwrap();
                assert_eq!(lang_map(&section.preimage), section.base_image);
                let p = field.characteristic();
                let mut s = section.extension_degree;
                while s.is_multiple_of(p) {
                    s /= p;
                }
                assert_eq!(s, 1, "extension degree must be a power of p");

                // matrices already of the form L(B) need no extension
                let b = random_matrix_fq(n, &field, &mut rng);
                let in_image = lang_section(&lang_map(&b)).unwrap();
                assert_eq!(in_image.extension_degree, 1);
            }
        }
    }
}

#[test]
fn base_image_embeds_the_input() {
    let field = FiniteField::prime(2).unwrap();
    let mut one_needed_extension = false;
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..20 {
        let m = random_matrix_fq(3, &field, &mut rng);
        let section = lang_section(&m).unwrap();
        if section.extension_degree == 1 {
            assert_eq!(section.base_image, m);
        } else {
            one_needed_extension = true;
            let ext = section.base_image.sample_entry().field().clone();
            let emb = field.embed_into(&ext).unwrap();
            let expected: Vec<FieldElement> = m.entries().iter().map(|e| emb.map(e)).collect();
            assert_eq!(section.base_image.entries(), &expected[..]);
        }
    }
    assert!(one_needed_extension, "sample should hit a non-surjective case");
}
