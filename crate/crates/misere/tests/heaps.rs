use misere::heap::{colex_box, CoordinateStatus, HeapGame, HeapVector, PeriodicityBounds, SubtractionGameSpec};
use misere::{Engine, Outcome, SumPosition};

fn game(left: &[u32], right: &[u32], max_heap: u32) -> HeapGame {
    HeapGame::new(SubtractionGameSpec::new(left, right, max_heap).unwrap())
}

fn weight(v: &[u32]) -> u32 {
    v.iter().enumerate().map(|(i, x)| (i as u32 + 1) * x).sum()
}

/// Every heap vector with total token count at most `limit`.
fn vectors(max_heap: usize, limit: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![0; max_heap]];
    for i in 0..max_heap {
        let mut next = Vec::new();
        for v in out {
            let mut w = v.clone();
            while weight(&w) <= limit {
                next.push(w.clone());
                w[i] += 1;
            }
        }
        out = next;
    }
    out
}

#[test]
fn single_heaps() {
    let g = game(&[1, 2], &[1], 6);
    assert_eq!(g.outcome_of(&[1]).unwrap(), Outcome::P);
    assert_eq!(g.outcome_of(&[0, 1]).unwrap(), Outcome::N);
    assert_eq!(g.outcome_of(&[0, 0, 1]).unwrap(), Outcome::L);
    assert!(g.outcome_of(&[0, 0, 0, 0, 0, 0, 1]).is_err());
    assert!(SubtractionGameSpec::new(&[], &[1], 3).is_err());
}

#[test]
fn compiled_heaps_agree() {
    let e = Engine::new();
    for (l, r) in [(vec![1, 2], vec![1]), (vec![1], vec![2]), (vec![2], vec![1, 3])] {
        let g = game(&l, &r, 5);
        let spec = SubtractionGameSpec::new(&l, &r, 5).unwrap();
        let heaps: Vec<_> = (1..=5).map(|n| e.compile_heap_position(&spec, n).unwrap()).collect();
        for v in vectors(5, 9) {
            let parts: Vec<_> = v.iter().enumerate().flat_map(|(i, &x)| std::iter::repeat_n(heaps[i], x as usize)).collect();
            assert_eq!(g.outcome_of(&v).unwrap(), e.misere_outcome(&SumPosition::new(parts)), "{v:?}");
        }
    }
}

#[test]
fn colex_order() {
    let b = colex_box(&[2, 1]);
    assert_eq!(b, vec![vec![0, 0], vec![1, 0], vec![2, 0], vec![0, 1], vec![1, 1], vec![2, 1]]);
    let vs: Vec<HeapVector> = b.into_iter().map(HeapVector::new).collect();
    assert!(vs.windows(2).all(|w| w[0].colex_cmp(&w[1]).is_lt()));
    assert_eq!(HeapVector::new(vec![2, 0, 0]).to_string(), "(2)");
}

#[test]
fn one_one_heaps_are_star() {
    let g = game(&[1], &[1], 1);
    let q = g.heap_quotient(6, 6).unwrap();
    assert_eq!(q.quotient.len(), 2);
    assert_eq!(q.class_of(&[2]), q.class_of(&[]));
}

#[test]
fn one_two_formula() {
    let g = game(&[1], &[2], 2);
    for x1 in 0..=12u32 {
        for x2 in 0..=12u32 {
            let want = if x1 > x2 {
                Outcome::R
            } else {
                [Outcome::N, Outcome::P, Outcome::R][((x2 - x1) % 3) as usize]
            };
            assert_eq!(g.outcome_of(&[x1, x2]).unwrap(), want, "({x1},{x2})");
        }
    }
}

#[test]
fn big_heaps_favour_left() {
    let g = game(&[1, 2], &[1], 6);
    for v in vectors(6, 14) {
        if v[3] >= 1 {
            assert_eq!(g.outcome_of(&v).unwrap(), Outcome::L, "{v:?}");
        }
    }
}

#[test]
fn periods_extend_past_detection() {
    for g in [game(&[1, 2], &[1], 6), game(&[1], &[2], 2), game(&[2], &[1], 3)] {
        let report = g.detect_periodicity(PeriodicityBounds::default());
        let found: Vec<_> = report.found().filter(|c| c.verified).collect();
        if found.is_empty() {
            continue;
        }
        let maxes: Vec<u32> = report
            .coordinates
            .iter()
            .map(|c| match c.status {
                CoordinateStatus::Found => c.r.unwrap() + 2 * c.d.unwrap() + 3,
                CoordinateStatus::NotFound => 0,
            })
            .collect();
        let maxes = &maxes[..found.last().unwrap().heap as usize];
        for v in colex_box(maxes) {
            let r = report.reduce(&v);
            assert_eq!(g.outcome_of(&v).unwrap(), g.outcome_of(&r).unwrap(), "{} {v:?} -> {r:?}", report.game);
        }
    }
}
