mod common;

use common::{binary_all_small, impartial, recipe};
use misere::quotient::{compute_poset, multisets, poset_at_bound, PosetReport};
use misere::{Engine, Outcome, PositionId, Side, SumPosition};
use proptest::prelude::*;

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn multiset_counts() {
    for k in 1..5 {
        for m in 0..6 {
            assert_eq!(multisets(k, m).len(), binom(k + m, m), "k={k} m={m}");
        }
    }
}

fn sum(e: &Engine, s: &str) -> SumPosition {
    e.parse_expression(s).unwrap()
}

#[test]
fn rho_distinguishing_contexts() {
    let e = Engine::new();
    let base = e.option_closure(&[e.rho()]);
    let rows = [
        ("0", "star + rho", "star"),
        ("0", "star + 2*rho", "rho"),
        ("0", "star + 3*rho", "rho"),
        ("star + rho", "star + 2*rho", "star"),
        ("star + rho", "star + 3*rho", "star"),
        ("star + 2*rho", "star + 3*rho", "star"),
        ("star", "2*rho", "2*rho"),
        ("3*rho", "4*rho", "star"),
    ];
    for (a, b, z) in rows {
        let (a, b, z) = (sum(&e, a), sum(&e, b), sum(&e, z));
        assert_ne!(e.misere_outcome(&a.add(&z)), e.misere_outcome(&b.add(&z)), "{a:?} {b:?}");
        assert!(e.distinguish(&a, &b, &base, 3).is_some());
    }
}

#[test]
fn distinguishing_survives_larger_bases() {
    let e = Engine::new();
    let small = e.option_closure(&[e.rho()]);
    let big = e.option_closure(&[e.rho(), e.rho_bar(), e.tau()]);
    for a in multisets(small.nonzero().len(), 3) {
        for b in multisets(small.nonzero().len(), 3) {
            let (x, y) = (small.sum_of(&a), small.sum_of(&b));
            if let Some(z) = e.distinguish(&x, &y, &small, 3) {
                assert!(big.word_of(&z).is_some());
                assert_ne!(e.misere_outcome(&x.add(&z)), e.misere_outcome(&y.add(&z)));
                assert!(e.distinguish(&x, &y, &big, 3).is_some());
            }
        }
    }
}

fn check_poset(p: &PosetReport, n: usize) {
    for &(a, b) in &p.order {
        assert_ne!(a, b);
        assert!(!p.greater(b, a), "antisymmetry fails at {a},{b}");
        for c in 0..n {
            if p.greater(b, c) {
                assert!(p.greater(a, c), "transitivity fails at {a},{b},{c}");
            }
        }
    }
    assert_eq!(p.down_directed, p.bottom.is_some());
    assert_eq!(p.up_directed, p.top.is_some());
    if let Some(b) = p.bottom {
        assert!((0..n).all(|c| c == b || p.greater(c, b)));
    }
}

#[test]
fn quotients_are_congruences() {
    let e = Engine::new();
    let sets = vec![
        vec![e.rho()],
        vec![e.tau()],
        vec![e.sigma(), e.sigma_bar()],
        vec![e.one(), e.one_bar()],
        vec![e.star()],
    ];
    for gens in sets {
        let q = e.compute_quotient(&gens, 4, 4).unwrap();
        let k = q.closure.nonzero().len();
        let words = multisets(k, 4);
        let class = |w: &[u16]| q.class_of(&e, &q.closure.sum_of(w)).unwrap();
        for w in &words {
            assert_eq!(e.misere_outcome(&q.closure.sum_of(w)), q.quotient.class_outcome(class(w)));
        }
        for a in &words {
            for b in &words {
                if a.len() > 3 || b.len() > 3 || a >= b || class(a) != class(b) {
                    continue;
                }
                for g in 0..k as u16 {
                    let mut a2 = a.clone();
                    a2.push(g);
                    a2.sort_unstable();
                    let mut b2 = b.clone();
                    b2.push(g);
                    b2.sort_unstable();
                    assert_eq!(class(&a2), class(&b2));
                }
            }
        }
        check_poset(&poset_at_bound(&q.quotient), q.class_count());
        if let Ok(p) = compute_poset(&q.quotient) {
            check_poset(&p, q.class_count());
        }
    }
}

#[test]
fn class_counts_grow_with_context_bound() {
    let e = Engine::new();
    let counts: Vec<usize> =
        (1..=5).map(|cb| e.compute_quotient(&[e.rho()], 5, cb).unwrap().class_count()).collect();
    assert!(counts.windows(2).all(|w| w[0] <= w[1]), "{counts:?}");
}

#[test]
fn star_built_positions_behave_like_star() {
    let e = Engine::new();
    let mut pool = e.star_built_on_day(1).unwrap();
    pool.extend(e.star_built_on_day(2).unwrap());
    pool.extend(e.star_built_on_day(3).unwrap().into_iter().step_by(16));
    for &p in &pool {
        assert!(e.star_iso_check(&[p], 5).passes(), "{}", e.format_position(p));
        assert!(e.is_star_built(e.conjugate(p)));
        if e.misere(p) == Outcome::P {
            assert!(e.is_star_built(e.left_of(p)));
        }
    }
    assert!(!e.star_iso_check(&[PositionId::ZERO], 5).passes());
}

#[test]
fn star_squares_vanish() {
    let e = Engine::new();
    for gens in [vec![e.star()], vec![e.star(), e.rho()], vec![e.tau(), e.eta()], vec![e.theta()]] {
        assert!(e.verify_star_square_zero(&gens, 4).unwrap().holds());
    }
}

fn build_ab3_zero(e: &Engine, x: PositionId, y: PositionId) -> PositionId {
    let a = e.build(&[x], &[PositionId::ZERO]).unwrap();
    let b = e.build(&[PositionId::ZERO], &[y]).unwrap();
    e.build(&[a], &[b]).unwrap()
}

#[test]
fn ab3_with_zero_crossings_is_zero() {
    let e = Engine::new();
    let small = misere::corpus::binary_all_small_through(&e, 2).unwrap();
    let mut seen = 0;
    for &x in &small {
        for &y in &small {
            let xi = build_ab3_zero(&e, x, y);
            if !e.is_ab3(xi) {
                continue;
            }
            seen += 1;
            let base = e.option_closure(&[xi]);
            let check = e.verify_relation(&SumPosition::single(xi), &SumPosition::zero(), &base, 4);
            assert!(check.holds(), "{}", e.format_position(xi));
        }
    }
    assert!(seen > 0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn genus_zero_matches_p(r in impartial(5)) {
        let e = Engine::new();
        let p = r.build(&e);
        let s = SumPosition::single(p);
        prop_assert_eq!(e.g_minus(&s).unwrap() == 0, e.misere(p) == Outcome::P);
        prop_assert_eq!(e.g_plus(p).unwrap() == 0, e.normal(p) == Outcome::P);
        prop_assert_eq!(e.genus(p, 12).unwrap().g_plus, e.g_plus(p).unwrap());
        prop_assert_eq!(e.genus(p, 12).unwrap().digit(0), e.g_minus(&s).unwrap());
    }

    #[test]
    fn left_of_all_small_with_right_move_to_zero(l in prop::collection::vec(binary_all_small(3), 1..3)) {
        let e = Engine::new();
        let left: Vec<PositionId> = l.iter().map(|r| r.build(&e)).collect();
        let xi = e.build(&left, &[PositionId::ZERO]).unwrap();
        let lx = e.left_of(xi);
        let base = e.option_closure(&[lx]);
        prop_assert!(e.verify_relation(&SumPosition::single(lx), &SumPosition::zero(), &base, 4).holds());
    }

    #[test]
    fn tweedle_wins_exactly_on_n(r in binary_all_small(5), q in binary_all_small(4)) {
        let e = Engine::new();
        let comps: Vec<PositionId> = [r.build(&e), q.build(&e)].into_iter().filter(|&p| e.is_ab3(p) && p != PositionId::ZERO).collect();
        if !comps.is_empty() {
            let mut all = comps.clone();
            all.extend(comps.iter().map(|&p| e.conjugate(p)));
            let s = SumPosition::new(all);
            prop_assert_eq!(e.misere_outcome(&s), Outcome::N);
            for mover in [Side::Left, Side::Right] {
                prop_assert!(e.tweedle_playout(&comps, mover).unwrap().win);
            }
        }
    }

    #[test]
    fn star_iso_holds_for_random_star_built(r in recipe(3, 2)) {
        let e = Engine::new();
        let p = r.build(&e);
        if e.is_star_built(p) {
            prop_assert!(e.star_iso_check(&[p], 4).passes());
            prop_assert!(e.is_star_built(e.conjugate(p)));
        }
    }
}
