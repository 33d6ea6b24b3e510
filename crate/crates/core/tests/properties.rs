mod common;

use common::{brute_force_rank, random_element, random_expr, random_homogeneous, rng};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

use schubert::chern_segre::{invert_total_class, product_total_class, TotalClass};
use schubert::dsl::parse;
use schubert::graded_ring::ideal_contains;
use schubert::spaces::{pairing_matrix, pullback_g_to_ps, pushforward_ps_to_g, space, SpaceId};
use schubert::{Polynomial, RingHandle};

fn all_rings() -> Vec<(SpaceId, std::sync::Arc<schubert::GradedRingPresentation>)> {
    SpaceId::ALL.into_iter().map(|id| (id, space(id).ring().clone())).collect()
}

#[test]
fn ring_axioms_on_random_triples() {
    for (id, ring) in all_rings() {
        let mut r = rng(11 + id as u64);
        for _ in 0..1000 {
            let a = random_element(&ring, &mut r);
            let b = random_element(&ring, &mut r);
            let c = random_element(&ring, &mut r);
            assert_eq!(&(&a + &b) + &c, &a + &(&b + &c), "{id}: additive associativity");
            assert_eq!(&a + &b, &b + &a, "{id}: additive commutativity");
            assert_eq!(&(&a * &b) * &c, &a * &(&b * &c), "{id}: associativity");
            assert_eq!(&a * &b, &b * &a, "{id}: commutativity");
            assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c), "{id}: distributivity");
            assert_eq!(&a * &ring.one(), a, "{id}: unit");
            assert!((&a - &a).is_zero(), "{id}: additive inverse");
        }
    }
}

#[test]
fn normal_form_is_idempotent() {
    for (id, ring) in all_rings() {
        let mut r = rng(5 + id as u64);
        for _ in 0..500 {
            let a = random_element(&ring, &mut r);
            assert_eq!(a.normal_form(), a);
            assert_eq!(ring.element(&a.to_polynomial()), a);
        }
    }
}

#[test]
fn ranks_match_brute_force_elimination() {
    for (id, ring) in all_rings() {
        let ranks = ring.ranks();
        for d in 0..=ring.top_degree() + 2 {
            let expect = brute_force_rank(ring.weights(), ring.relations(), d);
            let got = ranks.get(d as usize).copied().unwrap_or(0);
            assert_eq!(got, expect, "{id}: rank in degree {d}");
        }
    }
    assert_eq!(space(SpaceId::G).ring().ranks(), vec![1, 1, 2, 1, 1]);
    assert_eq!(space(SpaceId::PS).ring().ranks(), vec![1, 2, 3, 3, 2, 1]);
}

/// Rewrites with c1³ → 2c1c2, c1²c2 → c2² and kills degrees above 4.
fn rewrite_grassmannian(p: &Polynomial) -> Polynomial {
    let mut cur = p.clone();
    loop {
        let mut next = Polynomial::zero(2);
        let mut changed = false;
        for (m, c) in cur.terms() {
            let e = m.exponents();
            let (a, b) = (e[0], e[1]);
            if a + 2 * b > 4 {
                changed = true;
            } else if a >= 3 {
                next.add_term(common::mono(&[a - 2, b + 1]), c * BigInt::from(2));
                changed = true;
            } else if a >= 2 && b >= 1 {
                next.add_term(common::mono(&[a - 2, b + 1]), c.clone());
                changed = true;
            } else {
                next.add_term(m.clone(), c.clone());
            }
        }
        if !changed {
            return next;
        }
        cur = next;
    }
}

#[test]
fn grassmannian_rewriting_is_confluent_with_normal_form() {
    let ring = space(SpaceId::G).ring().clone();
    let mut r = rng(99);
    for _ in 0..1000 {
        let p = common::random_polynomial(&ring, &mut r);
        let by_rules = rewrite_grassmannian(&p);
        assert_eq!(ring.element(&by_rules), ring.element(&p));
        assert_eq!(ring.element(&p).to_polynomial(), by_rules);
    }
}

fn random_total_class(r: &mut impl rand::Rng, bound: usize) -> TotalClass {
    let ring = space(SpaceId::G).ring();
    TotalClass::new(
        2,
        (1..=bound as u32).map(|d| random_homogeneous(ring, d, r)).collect(),
    )
}

#[test]
fn segre_inversion_is_an_involution() {
    let mut r = rng(3);
    for _ in 0..100 {
        let c = random_total_class(&mut r, 4);
        assert_eq!(invert_total_class(&invert_total_class(&c, 4), 4), c);
    }
}

#[test]
fn inversion_is_multiplicative() {
    let mut r = rng(4);
    for _ in 0..50 {
        let a = random_total_class(&mut r, 4);
        let b = random_total_class(&mut r, 4);
        assert_eq!(
            invert_total_class(&product_total_class(&a, &b, 4), 4),
            product_total_class(&invert_total_class(&a, 4), &invert_total_class(&b, 4), 4)
        );
    }
}

#[test]
fn higher_segre_classes_lie_in_the_ideal() {
    let c = TotalClass::new(2, vec![Polynomial::var(2, 0), Polynomial::var(2, 1)]);
    let s = invert_total_class(&c, 6);
    let rels = [s.component(3), s.component(4)];
    for k in 5..=6 {
        assert!(ideal_contains(&[1, 2], &rels, &s.component(k)), "s{k}");
    }
    assert!(!ideal_contains(&[1, 2], &rels, &Polynomial::from_i64(2, &[(&[0, 2], 1)])));
}

#[test]
fn schubert_duality_on_the_grassmannian() {
    let g = space(SpaceId::G);
    let cls = |s: &str| g.eval_str(s).unwrap();
    for (lo, hi) in [(vec!["1"], vec!["G"]), (vec!["g"], vec!["g_s"]), (vec!["g_p", "g_e"], vec!["g_p", "g_e"])] {
        let left: Vec<_> = lo.iter().map(|s| cls(s)).collect();
        let right: Vec<_> = hi.iter().map(|s| cls(s)).collect();
        let m = pairing_matrix(&left, &right);
        for (i, row) in m.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                assert_eq!(*x, if i == j { BigInt::one() } else { BigInt::zero() });
            }
        }
    }
}

#[test]
fn pushforward_is_compatible_with_evaluation() {
    let ps = space(SpaceId::PS);
    let g = space(SpaceId::G);
    let mut r = rng(8);
    for _ in 0..500 {
        let x = ps.ring().element(&random_homogeneous(ps.ring(), 5, &mut r));
        let pushed = pushforward_ps_to_g(&x).unwrap();
        assert_eq!(pushed.evaluate_top(), x.evaluate_top());
        // projection formula
        let y = common::random_element(g.ring(), &mut r);
        let z = common::random_element(ps.ring(), &mut r);
        assert_eq!(
            pushforward_ps_to_g(&(&z * &pullback_g_to_ps(&y).unwrap())).unwrap(),
            &pushforward_ps_to_g(&z).unwrap() * &y
        );
    }
}

#[test]
fn dsl_round_trip_on_random_expressions() {
    let mut r = rng(21);
    for _ in 0..1000 {
        let e = random_expr(&mut r, 5);
        let text = e.to_string();
        assert_eq!(parse(&text).unwrap(), e, "{text}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn dsl_round_trip_prop(seed in any::<u64>(), depth in 0u32..6) {
        let e = random_expr(&mut rng(seed), depth);
        prop_assert_eq!(parse(&e.to_string()).unwrap(), e);
    }

    #[test]
    fn parse_never_panics(s in "[ -~]{0,40}") {
        let _ = parse(&s);
    }

    #[test]
    fn top_evaluation_is_linear(seed in any::<u64>()) {
        let ring = space(SpaceId::PS).ring().clone();
        let mut r = rng(seed);
        let a = random_element(&ring, &mut r);
        let b = random_element(&ring, &mut r);
        prop_assert_eq!((&a + &b).homogeneous_part(5).evaluate_top(),
            a.homogeneous_part(5).evaluate_top() + b.homogeneous_part(5).evaluate_top());
    }
}
