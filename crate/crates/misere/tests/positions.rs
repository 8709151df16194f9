mod common;

use common::{binary_all_small, recipe};
use misere::{Engine, PositionId, SumPosition};
use proptest::prelude::*;

#[test]
fn named_positions() {
    let e = Engine::new();
    assert_eq!(e.build(&[], &[]).unwrap(), PositionId::ZERO);
    let star = e.build(&[PositionId::ZERO], &[PositionId::ZERO]).unwrap();
    assert_eq!(star, e.star());
    assert_eq!(e.build(&[PositionId::ZERO, PositionId::ZERO], &[PositionId::ZERO]).unwrap(), star);
    assert_eq!(e.star_n(1), star);
    assert_eq!(e.tau_n(0), star);
    assert_eq!(e.rho(), e.build(&[star], &[PositionId::ZERO]).unwrap());
    assert_eq!(e.conjugate(e.one()), e.one_bar());
    assert_eq!(e.conjugate(star), star);
    assert_eq!(e.conjugate(e.rho()), e.rho_bar());
    assert_eq!(e.conjugate(e.theta()), e.theta());
}

#[test]
fn adjoints() {
    let e = Engine::new();
    assert_eq!(e.adjoint(PositionId::ZERO), e.star());
    assert_eq!(e.adjoint(e.star()), e.tau());
    assert_eq!(e.adjoint(e.one()), e.rho_bar());
}

#[test]
fn profiles() {
    let e = Engine::new();
    let p = e.profile(e.star());
    assert_eq!((p.birthday, p.impartial, p.all_small, p.binary, p.ab_rank), (1, true, true, true, Some(1)));
    let p = e.profile(e.rho());
    assert_eq!((p.birthday, p.impartial, p.all_small, p.binary, p.ab_rank), (2, false, true, true, Some(2)));
    assert_eq!(e.profile(e.tau()).ab_rank, Some(2));
    assert_eq!(e.profile(e.eta()).ab_rank, Some(4));
    assert_eq!(e.profile(e.theta()).ab_rank, Some(4));
    assert_eq!(e.profile(e.one()).ab_rank, None);
    assert!(e.profile(e.one()).right_end && !e.profile(e.one()).left_end);
    assert!(!e.profile(e.star_n(2)).binary);
}

#[test]
fn alt_sums_of_zero() {
    let e = Engine::new();
    use misere::SumKind::*;
    assert_eq!(e.alt_sum(And, PositionId::ZERO, PositionId::ZERO).unwrap(), PositionId::ZERO);
    assert_eq!(e.alt_sum(Ordinal, PositionId::ZERO, PositionId::ZERO).unwrap(), PositionId::ZERO);
    let seq = e.alt_sum(Seqjoin, PositionId::ZERO, e.star()).unwrap();
    assert_eq!(e.left(seq), vec![PositionId::ZERO]);
    assert_eq!(e.right(seq), vec![PositionId::ZERO]);
    assert!(e.alt_sum(Disjunctive, PositionId::ZERO, PositionId::ZERO).is_err());
}

#[test]
fn dot_output() {
    let e = Engine::new();
    let zero = e.to_dot(PositionId::ZERO);
    assert!(!zero.contains("->"));
    let star = e.to_dot(e.star());
    assert_eq!(star.matches("[label=\"L\"]").count(), 1);
    assert_eq!(star.matches("[label=\"R\"]").count(), 1);
    let tau = e.to_dot(e.tau());
    assert_eq!(tau.matches("label=").count() - tau.matches("->").count(), 3);
}

#[test]
fn unknown_ids_are_rejected() {
    let e = Engine::new();
    assert!(e.build(&[PositionId(10_000)], &[]).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn conjugate_is_an_involution(r in recipe(5, 3)) {
        let e = Engine::new();
        let p = r.build(&e);
        prop_assert_eq!(e.conjugate(e.conjugate(p)), p);
        let mut want: Vec<PositionId> = e.right(p).into_iter().map(|o| e.conjugate(o)).collect();
        want.sort_unstable();
        prop_assert_eq!(e.left(e.conjugate(p)), want);
    }

    #[test]
    fn interning_is_structural(r in recipe(5, 3)) {
        let e = Engine::new();
        prop_assert_eq!(r.build(&e), r.build(&e));
        prop_assert_eq!(r.shuffled().build(&e), r.build(&e));
    }

    #[test]
    fn birthday_decreases_along_edges(r in recipe(5, 3)) {
        let e = Engine::new();
        let p = r.build(&e);
        for q in e.subpositions(&[p]) {
            for o in e.left(q).into_iter().chain(e.right(q)) {
                prop_assert!(e.birthday(o) < e.birthday(q));
            }
        }
    }

    #[test]
    fn sums_of_all_small_are_all_small(a in binary_all_small(4), b in binary_all_small(4)) {
        let e = Engine::new();
        let s = SumPosition::new(vec![a.build(&e), b.build(&e)]);
        prop_assert!(e.is_all_small(e.compile_sum(&s)));
    }

    #[test]
    fn ab_rank_is_inherited(r in binary_all_small(6)) {
        let e = Engine::new();
        let p = r.build(&e);
        let n = e.profile(p).ab_rank.unwrap();
        for o in e.left(p).into_iter().chain(e.right(p)) {
            prop_assert!(e.profile(o).ab_rank.unwrap() <= n);
        }
    }
}
