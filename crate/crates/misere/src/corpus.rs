//! Position generators for tests and sweeps.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::position::{Engine, PositionId};

/// Every position born by `day`. Only feasible up to day 2 (256 positions).
pub fn all_positions_through(engine: &Engine, day: u32) -> Result<Vec<PositionId>> {
    if day > 2 {
        return Err(Error::Resource(format!("day {day} has more than 2^256 positions")));
    }
    let mut all = vec![PositionId::ZERO];
    for _ in 0..day {
        let pool = all.clone();
        let n = pool.len();
        let pick = |mask: usize| -> Vec<PositionId> { (0..n).filter(|i| mask >> i & 1 == 1).map(|i| pool[i]).collect() };
        let mut next = Vec::with_capacity(1 << (2 * n));
        for lm in 0..1usize << n {
            for rm in 0..1usize << n {
                next.push(engine.build(&pick(lm), &pick(rm))?);
            }
        }
        next.sort_unstable();
        next.dedup();
        all = next;
    }
    Ok(all)
}

/// All-small positions with at most one option per player, born by `day`.
pub fn binary_all_small_through(engine: &Engine, day: u32) -> Result<Vec<PositionId>> {
    if day > 4 {
        return Err(Error::Resource(format!("day {day} binary enumeration is too large")));
    }
    let mut all = vec![PositionId::ZERO];
    for _ in 0..day {
        let mut next = vec![PositionId::ZERO];
        for &a in &all {
            for &b in &all {
                next.push(engine.build(&[a], &[b])?);
            }
        }
        next.sort_unstable();
        next.dedup();
        all = next;
    }
    Ok(all)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random position of birthday exactly `birthday`, with at most `width` options per side.
pub fn random_position<R: Rng>(engine: &Engine, rng: &mut R, birthday: u32, width: usize) -> Result<PositionId> {
    if birthday == 0 {
        return Ok(PositionId::ZERO);
    }
    let side = |rng: &mut R| -> Result<Vec<PositionId>> {
        let k = rng.gen_range(0..=width);
        (0..k)
            .map(|_| {
                let b = rng.gen_range(0..birthday);
                random_position(engine, rng, b, width)
            })
            .collect()
    };
    let mut left = side(rng)?;
    let mut right = side(rng)?;
    let deepest = random_position(engine, rng, birthday - 1, width)?;
    if rng.gen_bool(0.5) {
        left.push(deepest);
    } else {
        right.push(deepest);
    }
    engine.build(&left, &right)
}

/// A random binary all-small position born by `max_birthday`.
pub fn random_binary_all_small<R: Rng>(engine: &Engine, rng: &mut R, max_birthday: u32) -> Result<PositionId> {
    if max_birthday == 0 || rng.gen_bool(0.2) {
        return Ok(PositionId::ZERO);
    }
    let a = random_binary_all_small(engine, rng, max_birthday - 1)?;
    let b = random_binary_all_small(engine, rng, max_birthday - 1)?;
    engine.build(&[a], &[b])
}

/// Distinct random ab3 positions (other than 0) born by `max_birthday`.
pub fn random_ab3<R: Rng>(engine: &Engine, rng: &mut R, max_birthday: u32, count: usize) -> Result<Vec<PositionId>> {
    let mut out: Vec<PositionId> = Vec::new();
    let mut tries = 0usize;
    while out.len() < count {
        tries += 1;
        if tries > count * 10_000 {
            return Err(Error::Resource(format!("found only {} ab3 positions", out.len())));
        }
        let p = random_binary_all_small(engine, rng, max_birthday)?;
        if p != PositionId::ZERO && engine.is_ab3(p) && !out.contains(&p) {
            out.push(p);
        }
    }
    Ok(out)
}

/// Every position born by day 2, then `sampled` random positions of birthday 3 or 4.
pub fn adjoint_corpus(engine: &Engine, seed: u64, sampled: usize) -> Result<Vec<PositionId>> {
    let mut out = all_positions_through(engine, 2)?;
    let mut r = rng(seed);
    for _ in 0..sampled {
        let b = *[3u32, 4].choose(&mut r).unwrap();
        out.push(random_position(engine, &mut r, b, 2)?);
    }
    Ok(out)
}
