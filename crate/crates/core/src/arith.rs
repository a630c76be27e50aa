//! Elementary integer arithmetic: primes, factorization, quadratic symbols,
//! Bernoulli numbers and divisor sums.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Primes `p <= bound`, ascending.
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter_map(|(i, &is_p)| is_p.then_some(i as u64))
        .collect()
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorization by trial division, as `(p, e)` pairs with ascending `p`.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Smallest prime factor for every `n <= bound` (entry 0 and 1 are 0).
pub fn smallest_prime_factors(bound: usize) -> Vec<u64> {
    let mut spf = vec![0u64; bound + 1];
    for i in 2..=bound {
        if spf[i] == 0 {
            let mut j = i;
            while j <= bound {
                if spf[j] == 0 {
                    spf[j] = i as u64;
                }
                j += i;
            }
        }
    }
    spf
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn mobius(n: u64) -> i64 {
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `sigma_k(n) = sum_{d | n} d^k`.
pub fn divisor_sigma(k: u32, n: u64) -> BigInt {
    divisors(n)
        .into_iter()
        .map(|d| BigInt::from(d).pow(k))
        .sum()
}

/// Table of `sigma_k(n)` for `0 <= n <= bound` (entry 0 is 0), via a divisor sieve.
pub fn divisor_sigma_table(k: u32, bound: usize) -> Vec<BigInt> {
    let mut table = vec![BigInt::zero(); bound + 1];
    for d in 1..=bound {
        let dk = BigInt::from(d).pow(k);
        let mut m = d;
        while m <= bound {
            table[m] += &dk;
            m += d;
        }
    }
    table
}

pub fn pow_u64(base: u64, exp: u32) -> BigInt {
    BigInt::from(base).pow(exp)
}

pub fn mod_pow(base: u64, mut exp: u64, m: u64) -> u64 {
    let m = m as u128;
    let mut acc = 1u128 % m;
    let mut b = base as u128 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// Reduce a big integer into `[0, m)`.
pub fn mod_big(x: &BigInt, m: u64) -> u64 {
    x.mod_floor(&BigInt::from(m)).to_u64().expect("residue fits")
}

/// p-adic valuation of a nonzero big integer (`u32::MAX` for zero).
pub fn valuation(x: &BigInt, p: u64) -> u32 {
    if x.is_zero() {
        return u32::MAX;
    }
    let p = BigInt::from(p);
    let mut x = x.clone();
    let mut v = 0;
    while (&x % &p).is_zero() {
        x /= &p;
        v += 1;
    }
    v
}

/// Quadratic character table of `F_p` for odd `p`: entry `v` is 0, 1 or -1.
pub fn quadratic_character_table(p: u64) -> Vec<i8> {
    let n = p as usize;
    let mut chi = vec![-1i8; n];
    chi[0] = 0;
    for y in 1..n {
        chi[y * y % n] = 1;
    }
    chi
}

/// Kronecker symbol `(d / n)` for `n >= 1`.
pub fn kronecker(d: i64, n: u64) -> i64 {
    let mut result = 1i64;
    let mut n = n;
    if n == 0 {
        return if d.abs() == 1 { 1 } else { 0 };
    }
    while n % 2 == 0 {
        n /= 2;
        if d % 2 == 0 {
            return 0;
        }
        let r = d.rem_euclid(8);
        if r == 3 || r == 5 {
            result = -result;
        }
    }
    // Jacobi symbol (d / n) for odd n.
    let mut a = d.rem_euclid(n as i64) as u64;
    let mut m = n;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            let r = m % 8;
            if r == 3 || r == 5 {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut m);
        if a % 4 == 3 && m % 4 == 3 {
            result = -result;
        }
        a %= m;
    }
    if m == 1 {
        result
    } else {
        0
    }
}

/// Bernoulli numbers `B_0..=B_n` with the convention `B_1 = -1/2`.
pub fn bernoulli_numbers(n: usize) -> Vec<BigRational> {
    let mut b: Vec<BigRational> = Vec::with_capacity(n + 1);
    b.push(BigRational::one());
    for m in 1..=n {
        // sum_{j=0}^{m} C(m+1, j) B_j = 0
        let mut acc = BigRational::zero();
        let mut binom = BigInt::one();
        for (j, bj) in b.iter().enumerate() {
            acc += BigRational::from_integer(binom.clone()) * bj;
            binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
        }
        b.push(-acc / BigRational::from_integer(BigInt::from(m + 1)));
    }
    b
}

pub fn bernoulli(n: usize) -> BigRational {
    bernoulli_numbers(n).pop().expect("nonempty")
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn rational_to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        // Fall back through a scaled quotient when numerator or denominator overflow.
        let n = x.numer();
        let d = x.denom();
        let shift = n.bits().max(d.bits()).saturating_sub(900) as u32;
        let n = (n >> shift).to_f64().unwrap_or(f64::NAN);
        let d = (d >> shift).to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

pub fn is_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &(&r * &r) == n
}

/// Squarefree kernel with sign: `n = sign * core * f^2` where `core > 0` is squarefree.
pub fn squarefree_decomposition(n: u64) -> (u64, u64) {
    let mut core = 1;
    let mut f = 1;
    for (p, e) in factorize(n) {
        f *= p.pow(e / 2);
        if e % 2 == 1 {
            core *= p;
        }
    }
    (core, f)
}

/// Explicit constant `C` with `d(n) <= C * n^eps` for all `n >= 1`, where `d` is the
/// divisor-counting function. The supremum of `d(n) / n^eps` factors over primes.
pub fn divisor_bound_constant(eps: f64) -> f64 {
    assert!(eps > 0.0, "exponent must be positive");
    // Primes with p^eps >= 2 contribute a factor of at most 1.
    let limit = 2f64.powf(1.0 / eps).ceil() as u64 + 1;
    primes_up_to(limit)
        .into_iter()
        .map(|p| {
            let mut best = 1.0f64;
            let mut e = 1u32;
            loop {
                let v = (e + 1) as f64 / (p as f64).powf(eps * e as f64);
                if v > best {
                    best = v;
                } else if e > 4 && v < best * 0.5 {
                    break;
                }
                e += 1;
                if e > 400 {
                    break;
                }
            }
            best
        })
        .product()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_primes() {
        assert_eq!(primes_up_to(20), vec![2, 3, 5, 7, 11, 13, 17, 19]);
        assert!(primes_up_to(1).is_empty());
        assert!(is_prime(97) && !is_prime(91));
    }

    #[test]
    fn bernoulli_values() {
        let b = bernoulli_numbers(12);
        assert_eq!(b[1], BigRational::new((-1).into(), 2.into()));
        assert_eq!(b[4], BigRational::new((-1).into(), 30.into()));
        assert_eq!(b[6], BigRational::new(1.into(), 42.into()));
        assert_eq!(b[12], BigRational::new((-691).into(), 2730.into()));
        assert!(b[7].is_zero());
    }

    #[test]
    fn kronecker_matches_legendre() {
        for p in [3u64, 5, 7, 11, 13] {
            let chi = quadratic_character_table(p);
            for a in -20i64..20 {
                assert_eq!(kronecker(a, p), chi[a.rem_euclid(p as i64) as usize] as i64);
            }
        }
        // (-4 / n) is the character mod 4.
        assert_eq!(kronecker(-4, 1), 1);
        assert_eq!(kronecker(-4, 3), -1);
        assert_eq!(kronecker(-4, 2), 0);
        // (-3 / 2) = -1, (5 / 2) = -1, (-7 / 2) = 1.
        assert_eq!(kronecker(-3, 2), -1);
        assert_eq!(kronecker(-7, 2), 1);
    }

    #[test]
    fn divisor_bound_holds() {
        let c = divisor_bound_constant(0.25);
        for n in 1..20000u64 {
            let d = divisors(n).len() as f64;
            assert!(d <= c * (n as f64).powf(0.25) + 1e-9, "n = {n}");
        }
    }

    #[test]
    fn sigma_table_matches_direct() {
        let t = divisor_sigma_table(3, 50);
        for n in 1..=50u64 {
            assert_eq!(t[n as usize], divisor_sigma(3, n));
        }
    }
}
