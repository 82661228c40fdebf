mod common;

use proptest::prelude::*;

use torusknot::diagram::{canonical_key, decode_diagram, encode_diagram, Quotient};
use torusknot::invariant::{canonical_invariant, graded_x, kauffman_x};
use torusknot::moves::{apply_move, find_r2up, simplify};
use torusknot::poly::XPolynomial;

#[test]
fn random_diagrams_satisfy_every_property() {
    let mut rng = common::rng(7);
    for d in common::random_diagrams(300, 11) {
        let v = common::property_violations(&d, &mut rng);
        assert!(v.is_empty(), "{v:?}");
    }
}

#[test]
fn knot_key_is_constant_on_symmetry_orbits() {
    let mut rng = common::rng(3);
    for d in common::random_diagrams(200, 5) {
        let key = canonical_key(&d, Quotient::KNOT);
        assert_eq!(canonical_key(&d.mirror(), Quotient::KNOT), key);
        assert_eq!(canonical_key(&d.reflect(), Quotient::KNOT), key);
        assert_eq!(canonical_key(&d.rebase(common::random_sl2(&mut rng)), Quotient::KNOT), key);
        let shifted = d.gauge_shift(&common::random_potential(&mut rng, d.crossings()));
        assert_eq!(canonical_key(&shifted, Quotient::KNOT), key);
        assert_eq!(canonical_invariant(&d.reflect()), canonical_invariant(&d));
    }
}

#[test]
fn graded_invariant_survives_moves() {
    for d in common::random_diagrams(60, 13) {
        let g = graded_x(&d);
        assert_eq!(g.total(), kauffman_x(&d));
        for site in find_r2up(&d).into_iter().take(12) {
            let up = apply_move(&d, site).unwrap();
            assert_eq!(graded_x(&up), g, "{site:?} on {}", encode_diagram(&d));
            assert_eq!(graded_x(&simplify(&up)), graded_x(&simplify(&d)));
        }
    }
}

#[test]
fn decode_rejects_garbage() {
    for bad in ["", "tkc:v2;n=0;class=(0,1)", "tkc:v1;n=1;pair=0-1;over=0", "tkc:v1;n=1;pair=0-1,2-3;over=01"] {
        assert!(decode_diagram(bad).is_err(), "{bad}");
    }
}

fn poly() -> impl Strategy<Value = XPolynomial> {
    prop::collection::vec((-4i64..=4, 0u32..4, -8i32..=8), 0..6).prop_map(|terms| {
        terms
            .into_iter()
            .fold(XPolynomial::zero(), |acc, (c, x, a)| &acc + &XPolynomial::monomial(c, x, a))
    })
}

proptest! {
    #[test]
    fn poly_text_round_trips(p in poly()) {
        prop_assert_eq!(p.encode().parse::<XPolynomial>().unwrap(), p);
    }

    #[test]
    fn mirror_is_a_ring_involution(p in poly(), q in poly()) {
        prop_assert_eq!(p.mirror_a().mirror_a(), p.clone());
        prop_assert_eq!((&p * &q).mirror_a(), &p.mirror_a() * &q.mirror_a());
        prop_assert_eq!((&p + &q).mirror_a(), &p.mirror_a() + &q.mirror_a());
    }

    #[test]
    fn canonical_form_picks_from_the_pair(p in poly()) {
        let c = p.mirror_canonical();
        prop_assert!(c == p || c == p.mirror_a());
        prop_assert_eq!(p.mirror_a().mirror_canonical(), c);
    }

    #[test]
    fn multiplication_distributes(p in poly(), q in poly(), r in poly()) {
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
    }
}
