//! Prime-field matrices: the randomized fast path for rank trials.
//!
//! A rational matrix reduced modulo a large prime has rank at most its
//! rational rank, so a mod-p rank is always a sound lower bound. Equality
//! holds unless the prime divides one of the rank-witnessing minors, which a
//! random 62-bit prime misses with overwhelming probability.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use crate::linalg::RationalMatrix;
use crate::rng::Rng;
use crate::{Error, Result};

/// Dense matrix over Z/p for a prime modulus below 2^62.
#[derive(Clone, Debug)]
pub struct PrimeFieldMatrix {
    rows: usize,
    cols: usize,
    modulus: u64,
    entries: Vec<u64>,
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // p prime, a nonzero mod p
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller-Rabin, valid for all u64.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A random prime in `[2^61, 2^62)`, deterministic under the rng state.
pub fn random_prime(rng: &mut Rng) -> u64 {
    loop {
        let candidate = (rng.next_u64() >> 2) | (1 << 61) | 1;
        if is_prime_u64(candidate) {
            return candidate;
        }
    }
}

fn bigint_mod(v: &BigInt, p: u64) -> u64 {
    let m = (v % BigInt::from(p)).to_i128().expect("residue fits i128");
    if m < 0 {
        (m + p as i128) as u64
    } else {
        m as u64
    }
}

impl PrimeFieldMatrix {
    /// Reduce a rational matrix modulo `p`. Errors with [`Error::BadPrime`]
    /// when a denominator vanishes mod `p`; callers retry with a new prime.
    pub fn from_rational(m: &RationalMatrix, p: u64) -> Result<Self> {
        assert!(p >= 2 && p < 1 << 62);
        let mut entries = Vec::with_capacity(m.rows() * m.cols());
        for i in 0..m.rows() {
            for e in m.row(i) {
                let den = bigint_mod(e.denom(), p);
                if den == 0 {
                    return Err(Error::BadPrime(p));
                }
                let num = bigint_mod(&e.numer().abs(), p);
                let mut v = mul_mod(num, inv_mod(den, p), p);
                if e.numer().is_negative() && v != 0 {
                    v = p - v;
                }
                entries.push(v);
            }
        }
        Ok(PrimeFieldMatrix {
            rows: m.rows(),
            cols: m.cols(),
            modulus: p,
            entries,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    /// Rank by Gaussian elimination over Z/p.
    pub fn rank(&self) -> usize {
        let mut m = self.entries.clone();
        let (rows, cols, p) = (self.rows, self.cols, self.modulus);
        let mut rank = 0;
        let mut r = 0;
        for col in 0..cols {
            let Some(piv) = (r..rows).find(|&i| m[i * cols + col] != 0) else {
                continue;
            };
            if piv != r {
                for j in 0..cols {
                    m.swap(r * cols + j, piv * cols + j);
                }
            }
            let inv = inv_mod(m[r * cols + col], p);
            for i in r + 1..rows {
                let lead = m[i * cols + col];
                if lead == 0 {
                    continue;
                }
                let f = mul_mod(lead, inv, p);
                for j in col..cols {
                    let sub = mul_mod(f, m[r * cols + j], p);
                    let cur = m[i * cols + j];
                    m[i * cols + j] = if cur >= sub { cur - sub } else { cur + p - sub };
                }
            }
            rank += 1;
            r += 1;
            if r == rows {
                break;
            }
        }
        rank
    }
}

/// Rank of `m` reduced modulo `prime`; always at most the rational rank.
pub fn rank_modp(m: &RationalMatrix, prime: u64) -> Result<usize> {
    Ok(PrimeFieldMatrix::from_rational(m, prime)?.rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::Rng;
    use crate::util::{rat, rat_int};

    #[test]
    fn primality() {
        assert!(is_prime_u64(2));
        assert!(is_prime_u64((1 << 61) - 1)); // Mersenne
        assert!(!is_prime_u64(1));
        assert!(!is_prime_u64((1 << 61) + 1));
        assert!(!is_prime_u64(3_215_031_751)); // strong pseudoprime to bases 2,3,5,7
        let mut rng = Rng::new(1);
        for _ in 0..5 {
            let p = random_prime(&mut rng);
            assert!(p >= 1 << 61);
            assert!(is_prime_u64(p));
        }
    }

    #[test]
    fn rank_identity_and_zero() {
        let p = (1 << 61) - 1;
        assert_eq!(rank_modp(&RationalMatrix::identity(6), p).unwrap(), 6);
        assert_eq!(rank_modp(&RationalMatrix::zeros(5, 3), p).unwrap(), 0);
    }

    #[test]
    fn bad_prime_is_signalled() {
        let m = RationalMatrix::from_rows(vec![vec![rat(1, 5)]]).unwrap();
        assert!(matches!(rank_modp(&m, 5), Err(crate::Error::BadPrime(5))));
    }

    #[test]
    fn negative_and_rational_entries_reduce_correctly() {
        let p = 1_000_000_007u64;
        // [-1/2  1] has rank 1; -1/2 mod p must be consistent: x with 2x = -1
        let m = RationalMatrix::from_rows(vec![vec![rat(-1, 2), rat_int(1)]]).unwrap();
        let f = PrimeFieldMatrix::from_rational(&m, p).unwrap();
        let x = f.entries[0];
        assert_eq!((2 * x as u128 + 1) % p as u128, 0);
        assert_eq!(f.rank(), 1);
    }

    #[test]
    fn modp_rank_never_exceeds_exact_rank() {
        // even for a deliberately tiny prime, reduction can only lose rank
        let mut rng = Rng::new(404);
        let mut undercounts = 0;
        for _ in 0..50 {
            let rows = (0..5)
                .map(|_| (0..5).map(|_| rat_int(rng.int_with_bits(6))).collect())
                .collect();
            let m = RationalMatrix::from_rows(rows).unwrap();
            let exact = m.rank();
            let reduced = rank_modp(&m, 2).unwrap();
            assert!(reduced <= exact);
            if reduced < exact {
                undercounts += 1;
            }
        }
        // mod 2 genuinely undercounts sometimes, so the inequality is live
        assert!(undercounts > 0);
    }

    #[test]
    fn modp_rank_matches_exact_rank_on_random_matrices() {
        // 100 random 8x8 matrices of known rank r, random 62-bit primes
        let mut rng = Rng::new(2024);
        for trial in 0..100 {
            let r = (trial % 9) as usize;
            // rank-r product of 8xr and rx8 integer matrices
            let a_rows: Vec<Vec<_>> = (0..8)
                .map(|_| (0..r).map(|_| rat_int(rng.int_with_bits(10))).collect())
                .collect();
            let b_rows: Vec<Vec<_>> = (0..r)
                .map(|_| (0..8).map(|_| rat_int(rng.int_with_bits(10))).collect())
                .collect();
            let m = if r == 0 {
                RationalMatrix::zeros(8, 8)
            } else {
                RationalMatrix::from_rows(a_rows)
                    .unwrap()
                    .matmul(&RationalMatrix::from_rows(b_rows).unwrap())
                    .unwrap()
            };
            let exact = m.rank();
            assert!(exact <= r);
            let p = random_prime(&mut rng);
            assert_eq!(rank_modp(&m, p).unwrap(), exact);
        }
    }
}
