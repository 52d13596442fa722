use proptest::prelude::*;
use qonkit::graded::{
    closed_form_h, graded_multiply, graded_resolution, supercoherent, CyclicElement, CyclotomicScalar, GradedElement,
    Word,
};
use qonkit::qcalc::C64;

type S = CyclotomicScalar;

fn scalar(k: u32, coords: [i64; 4]) -> S {
    let coords = if k == 2 { [coords[0], 0, 0, 0] } else { coords };
    S::from_coords(k, coords).unwrap()
}

/// Sum of up to three random words with random coefficients.
fn element(k: u32, reorder: u32) -> impl Strategy<Value = GradedElement> {
    let word = (0..k, 0..k, 0..k, 0..k, proptest::array::uniform4(-3i64..=3));
    proptest::collection::vec(word, 1..=3).prop_map(move |ws| {
        ws.into_iter().fold(GradedElement::zero(k, reorder).unwrap(), |acc, (m, n, r, s, c)| {
            let t = GradedElement::term(k, reorder, Word::new(m, n, r, s), scalar(k, c)).unwrap();
            acc.try_add(&t).unwrap()
        })
    })
}

fn triple() -> impl Strategy<Value = (GradedElement, GradedElement, GradedElement)> {
    prop_oneof![Just((2u32, 0u32)), Just((2, 1)), Just((3, 0)), Just((3, 1)), Just((3, 2))]
        .prop_flat_map(|(k, j)| (element(k, j), element(k, j), element(k, j)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn product_is_associative((x, y, z) in triple()) {
        let left = graded_multiply(&graded_multiply(&x, &y).unwrap(), &z).unwrap();
        let right = graded_multiply(&x, &graded_multiply(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn high_variable_powers_vanish(k in 2u32..=3, j_raw in 0u32..3, m in 0u32..6, n in 0u32..6) {
        let j = j_raw % k;
        let t = GradedElement::variables(k, j, m, n, S::one(k)).unwrap();
        prop_assert_eq!(t.is_zero(), m >= k || n >= k);
        let xi = GradedElement::xi(k, j).unwrap();
        let xibar = GradedElement::xibar(k, j).unwrap();
        prop_assert!(xi.pow(k).is_zero() && xibar.pow(k).is_zero());
        // a power reached through other factors also vanishes
        let mixed = graded_multiply(&xi.pow(k - 1), &graded_multiply(&xibar, &xi).unwrap()).unwrap();
        prop_assert!(mixed.is_zero());
    }
}

#[test]
fn fermion_resolution_is_the_identity() {
    let m = graded_resolution(2, 1, &closed_form_h(2).unwrap()).unwrap();
    for (r, row) in m.iter().enumerate() {
        for (c, entry) in row.iter().enumerate() {
            assert_eq!(*entry, if r == c { S::one(2) } else { S::zero(2) }, "entry ({r}, {c})");
        }
    }
}

fn cyclic_word(g: u32, dual: bool, word: &[u32]) -> CyclicElement {
    word.iter().fold(CyclicElement::one(g, dual), |acc, &a| {
        acc.try_mul(&CyclicElement::generator(g, dual, a).unwrap()).unwrap()
    })
}

#[test]
fn cyclic_relations() {
    let q = S::q(3);
    for dual in [false, true] {
        let rho = if dual { &q * &q } else { q.clone() };
        for g in 3..=4u32 {
            for a in 0..g {
                for b in 0..g {
                    for c in 0..g {
                        if a == b || b == c || a == c {
                            continue;
                        }
                        let lhs = cyclic_word(g, dual, &[a, b, c]);
                        let rhs = cyclic_word(g, dual, &[b, c, a]).scale(&rho);
                        assert!(lhs.try_sub(&rhs).unwrap().is_zero(), "{a}{b}{c}, dual = {dual}");
                        assert!(!lhs.is_zero());
                    }
                }
            }
            for w in 0..g.pow(4) {
                let word = [w % g, (w / g) % g, (w / g / g) % g, w / g / g / g];
                assert!(cyclic_word(g, dual, &word).is_zero(), "{word:?}");
            }
            for a in 0..g {
                assert!(cyclic_word(g, dual, &[a, a, a]).is_zero());
            }
        }
    }
}

#[test]
fn supercoherent_forms_agree() {
    for z in [C64::new(0.5, 0.0), C64::new(1.2, -0.7), C64::new(-2.0, 0.3)] {
        for dim in [8, 20, 40] {
            let table = supercoherent(z, dim, 0).unwrap();
            assert!(table.graded_sector_exact);
            assert!(table.boson_residual < 1e-12, "z = {z}, dim = {dim}: {}", table.boson_residual);
        }
    }
}
