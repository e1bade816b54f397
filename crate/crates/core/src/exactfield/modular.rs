//! Monte-Carlo rank over prime fields.
//!
//! The rank of a rational matrix modulo a prime `p` not dividing any entry
//! denominator is a lower bound on its rational rank, with equality unless
//! `p` divides one of finitely many nonzero minors. Three random primes in
//! `[2^30, 2^31)` are drawn from a seeded generator.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::matrix::ExactMatrix;
use super::rational::Rat;
use crate::error::{Error, Result};
use crate::par;

pub const PRIME_COUNT: usize = 3;
const PRIME_LO: u64 = 1 << 30;
const PRIME_HI: u64 = 1 << 31;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModularRank {
    /// Maximum of the per-prime ranks (each is a lower bound).
    pub rank: usize,
    pub primes: Vec<u64>,
    pub ranks: Vec<usize>,
    /// Whether all primes gave the same rank.
    pub agreed: bool,
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn big_mod(n: &BigInt, p: u64) -> u64 {
    n.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits")
}

fn reduce(r: &Rat, p: u64) -> u64 {
    match r.to_i64() {
        Some(n) => n.rem_euclid(p as i64) as u64,
        None => {
            let num = big_mod(&r.numer(), p);
            let den = big_mod(&r.denom(), p);
            mul_mod(num, inv_mod(den, p), p)
        }
    }
}

/// Draws `count` distinct primes in `[2^30, 2^31)` that divide none of `dens`.
pub fn choose_primes(seed: u64, count: usize, dens: &[BigInt]) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let c = rng.gen_range(PRIME_LO..PRIME_HI) | 1;
        if out.contains(&c) || !is_prime(c) {
            continue;
        }
        let bp = BigInt::from(c);
        if dens.iter().any(|d| (d % &bp) == BigInt::from(0)) {
            continue;
        }
        out.push(c);
    }
    out
}

/// Rank of a dense residue matrix, destroying it.
pub fn rank_mod_p(data: &mut [u64], rows: usize, cols: usize, p: u64) -> usize {
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(piv) = (rank..rows).find(|&r| data[r * cols + c] != 0) else {
            continue;
        };
        if piv != rank {
            let (a, b) = data.split_at_mut(piv * cols);
            a[rank * cols..(rank + 1) * cols].swap_with_slice(&mut b[..cols]);
        }
        let inv = inv_mod(data[rank * cols + c], p);
        for j in c..cols {
            let v = data[rank * cols + j];
            if v != 0 {
                data[rank * cols + j] = mul_mod(v, inv, p);
            }
        }
        let prow: Vec<(usize, u64)> =
            (c..cols).map(|j| (j, data[rank * cols + j])).filter(|&(_, v)| v != 0).collect();
        let work = (rows - rank) * prow.len();
        let pr = rank;
        par::for_each_row(data, cols, work > par::PAR_THRESHOLD, |r, row| {
            if r <= pr {
                return;
            }
            let f = row[c];
            if f == 0 {
                return;
            }
            for &(j, v) in &prow {
                let t = mul_mod(f, v, p);
                row[j] = if row[j] >= t { row[j] - t } else { row[j] + p - t };
            }
        });
        rank += 1;
    }
    rank
}

/// Rank of a rational matrix by three-prime agreement.
pub fn modular_rank(a: &ExactMatrix, seed: u64) -> Result<ModularRank> {
    if !a.field().is_rational() {
        return Err(Error::ModularOverExtension { degree: a.field().degree() });
    }
    let (rows, cols) = a.shape();
    let mut dens: Vec<BigInt> = Vec::new();
    for r in a.rational_entries() {
        if !r.is_integer() {
            let d = r.denom();
            if !dens.contains(&d) {
                dens.push(d);
            }
        }
    }
    let primes = choose_primes(seed, PRIME_COUNT, &dens);
    let ranks = par::map(&primes, |&p| {
        let mut data: Vec<u64> = a.rational_entries().map(|r| if r.is_zero() { 0 } else { reduce(r, p) }).collect();
        rank_mod_p(&mut data, rows, cols, p)
    });
    let rank = ranks.iter().copied().max().unwrap_or(0);
    let agreed = ranks.iter().all(|&r| r == rank);
    Ok(ModularRank { rank, primes, ranks, agreed })
}
