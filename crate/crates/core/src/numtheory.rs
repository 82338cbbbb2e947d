//! Elementary and modular number theory over arbitrary-precision integers.
//!
//! Everything here is exact. Primality is deterministic Miller-Rabin on
//! 64-bit inputs and trial division beyond that; square roots modulo
//! composite moduli go through factorization, Hensel lifting and CRT.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Default number of candidates a bounded search may examine.
pub const DEFAULT_CEILING: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumberTheoryError {
    #[error("{a} is not prime to {m}")]
    NotCoprime { a: BigInt, m: BigInt },
    #[error("no prime in {a} + n*{m} for n < {steps}")]
    CeilingExceeded { a: BigInt, m: BigInt, steps: u64 },
    #[error("{q} is not a square of a unit mod {p}")]
    NonResidue { q: BigInt, p: BigInt },
    #[error("{0} is of the form 4^a(8b+7) and is not a sum of three squares")]
    ExcludedFromThreeSquares(BigInt),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, NumberTheoryError>;

/// Greatest common divisor, always nonnegative; `gcd(0, 0) = 0`.
pub fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    a.gcd(b)
}

/// Least nonnegative residue of `a` modulo `m` (`m > 0`).
pub fn modulo(a: &BigInt, m: &BigInt) -> BigInt {
    a.mod_floor(m)
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    if m.is_one() {
        return Some(BigInt::zero());
    }
    let e = modulo(a, m).extended_gcd(m);
    if e.gcd.is_one() {
        Some(modulo(&e.x, m))
    } else {
        None
    }
}

fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod_u64(acc, base, m);
        }
        base = mul_mod_u64(base, base, m);
        exp >>= 1;
    }
    acc
}

// First twelve primes: a complete witness set below 3.3 * 10^24.
const MR_WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_WITNESSES {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &MR_WITNESSES {
        let mut x = pow_mod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Exact primality test.
pub fn is_prime(n: &BigInt) -> bool {
    if n < &BigInt::from(2) {
        return false;
    }
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    if n.is_even() {
        return false;
    }
    let mut d = BigInt::from(3);
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            return false;
        }
        d += 2;
    }
    true
}

/// Smallest prime of the form `a + n*m`, `n >= 0`, examining at most
/// `ceiling` terms of the progression.
pub fn find_prime_in_progression(a: &BigInt, m: &BigInt, ceiling: u64) -> Result<BigInt> {
    if a < &BigInt::one() || m < &BigInt::one() {
        return Err(NumberTheoryError::InvalidArgument(format!(
            "progression {a} + n*{m} needs a >= 1 and m >= 1"
        )));
    }
    if !gcd(a, m).is_one() {
        return Err(NumberTheoryError::NotCoprime {
            a: a.clone(),
            m: m.clone(),
        });
    }
    let mut candidate = a.clone();
    for _ in 0..ceiling {
        if is_prime(&candidate) {
            return Ok(candidate);
        }
        candidate += m;
    }
    Err(NumberTheoryError::CeilingExceeded {
        a: a.clone(),
        m: m.clone(),
        steps: ceiling,
    })
}

/// Prime factorization by trial division, primes ascending.
pub fn factorize(n: &BigInt) -> Vec<(BigInt, u32)> {
    assert!(n.is_positive(), "factorize needs n >= 1, got {n}");
    if let Some(small) = n.to_u64() {
        return factorize_u64(small)
            .into_iter()
            .map(|(p, e)| (BigInt::from(p), e))
            .collect();
    }
    let mut out = Vec::new();
    let mut rest = n.clone();
    let mut d = BigInt::from(2);
    while &d * &d <= rest {
        if let Some(small) = rest.to_u64() {
            out.extend(
                factorize_u64(small)
                    .into_iter()
                    .map(|(p, e)| (BigInt::from(p), e)),
            );
            return out;
        }
        let mut e = 0;
        while (&rest % &d).is_zero() {
            rest /= &d;
            e += 1;
        }
        if e > 0 {
            out.push((d.clone(), e));
        }
        d += if d == BigInt::from(2) { 1 } else { 2 };
    }
    if rest > BigInt::one() {
        out.push((rest, 1));
    }
    out
}

fn factorize_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut primes = Vec::new();
    let mut d = 2u64;
    while d < 1000 && d.saturating_mul(d) <= n {
        while n.is_multiple_of(d) {
            n /= d;
            primes.push(d);
        }
        d += if d == 2 { 1 } else { 2 };
    }
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime_u64(m) {
            primes.push(m);
            continue;
        }
        let f = pollard_rho(m);
        stack.push(f);
        stack.push(m / f);
    }
    primes.sort_unstable();
    let mut out: Vec<(u64, u32)> = Vec::new();
    for p in primes {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

// Brent's variant of Pollard rho; `n` odd composite without tiny factors.
fn pollard_rho(n: u64) -> u64 {
    let g = |x: u64, c: u64| (mul_mod_u64(x, x, n) + c) % n;
    for c in 1.. {
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = g(x, c);
            y = g(g(y, c), c);
            d = x.abs_diff(y).gcd(&n);
        }
        if d != n {
            return d;
        }
    }
    unreachable!("rho always splits a composite for some increment")
}

/// Jacobi symbol `(a/n)` for odd positive `n`.
pub fn jacobi(a: &BigInt, n: &BigInt) -> i32 {
    assert!(
        n.is_positive() && n.is_odd(),
        "jacobi symbol needs odd positive modulus, got {n}"
    );
    let mut a = modulo(a, n);
    let mut n = n.clone();
    let mut result = 1;
    let three = BigInt::from(3);
    let five = BigInt::from(5);
    let four = BigInt::from(4);
    let eight = BigInt::from(8);
    while !a.is_zero() {
        while a.is_even() {
            a >>= 1;
            let r = &n % &eight;
            if r == three || r == five {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if &a % &four == three && &n % &four == three {
            result = -result;
        }
        a = a.mod_floor(&n);
    }
    if n.is_one() {
        result
    } else {
        0
    }
}

fn check_unit(q: &BigInt, p: &BigInt) -> Result<()> {
    if !p.is_positive() {
        return Err(NumberTheoryError::InvalidArgument(format!(
            "modulus must be positive, got {p}"
        )));
    }
    if !gcd(q, p).is_one() {
        return Err(NumberTheoryError::NotCoprime {
            a: q.clone(),
            m: p.clone(),
        });
    }
    Ok(())
}

fn residue_mod_prime_power(q: &BigInt, prime: &BigInt, exp: u32) -> bool {
    if prime == &BigInt::from(2) {
        let r = modulo(q, &BigInt::from(8));
        return match exp {
            1 => true,
            2 => (&r % 4) == BigInt::one(),
            _ => r.is_one(),
        };
    }
    let e = (prime - 1u32) >> 1;
    modulo(q, prime).modpow(&e, prime).is_one()
}

/// Whether `q` is the square of a unit modulo `p`. Requires `gcd(q, p) = 1`.
pub fn is_quadratic_residue(q: &BigInt, p: &BigInt) -> Result<bool> {
    check_unit(q, p)?;
    Ok(factorize(p)
        .iter()
        .all(|(prime, exp)| residue_mod_prime_power(q, prime, *exp)))
}

/// Square root of `a` modulo an odd prime `prime`, for a nonzero residue `a`.
/// Uses the `(prime+1)/4` exponent when `prime = 3 mod 4`, Tonelli-Shanks otherwise.
pub fn sqrt_mod_prime(a: &BigInt, prime: &BigInt) -> Option<BigInt> {
    let a = modulo(a, prime);
    if prime == &BigInt::from(2) {
        return Some(a);
    }
    if a.is_zero() {
        return Some(a);
    }
    let pm1 = prime - 1u32;
    if !a.modpow(&(&pm1 >> 1), prime).is_one() {
        return None;
    }
    if (prime % 4u32) == BigInt::from(3) {
        let r = a.modpow(&((prime + 1u32) >> 2), prime);
        return Some(r);
    }
    // Tonelli-Shanks: prime - 1 = odd * 2^s
    let mut odd = pm1.clone();
    let mut s = 0u32;
    while odd.is_even() {
        odd >>= 1;
        s += 1;
    }
    let mut z = BigInt::from(2);
    while z.modpow(&(&pm1 >> 1), prime) != pm1 {
        z += 1;
    }
    let mut m = s;
    let mut c = z.modpow(&odd, prime);
    let mut t = a.modpow(&odd, prime);
    let mut r = a.modpow(&((&odd + 1u32) >> 1), prime);
    while !t.is_one() {
        let mut i = 0u32;
        let mut t2 = t.clone();
        while !t2.is_one() {
            t2 = (&t2 * &t2) % prime;
            i += 1;
        }
        let mut b = c.clone();
        for _ in 0..(m - i - 1) {
            b = (&b * &b) % prime;
        }
        m = i;
        c = (&b * &b) % prime;
        t = (&t * &c) % prime;
        r = (&r * &b) % prime;
    }
    Some(r)
}

// All square roots of the unit `q` modulo prime^exp.
fn roots_mod_prime_power(q: &BigInt, prime: &BigInt, exp: u32) -> Vec<BigInt> {
    let modulus = prime.pow(exp);
    let two = BigInt::from(2);
    let mut roots = Vec::new();
    if prime == &two {
        match exp {
            1 => roots.push(BigInt::one()),
            2 => {
                roots.push(BigInt::one());
                roots.push(BigInt::from(3));
            }
            _ => {
                // x^2 = q mod 2^j lifted one bit at a time
                let mut x = BigInt::one();
                for j in 3..exp {
                    let next = two.pow(j + 1);
                    if !modulo(&(&x * &x - q), &next).is_zero() {
                        x += two.pow(j - 1);
                    }
                }
                let half = two.pow(exp - 1);
                for r in [x.clone(), -&x, &x + &half, &half - &x] {
                    roots.push(modulo(&r, &modulus));
                }
            }
        }
    } else {
        let mut x = sqrt_mod_prime(q, prime).expect("residue checked by caller");
        let mut current = prime.clone();
        for _ in 1..exp {
            current *= prime;
            // Newton step: x <- x - (x^2 - q) / (2x)
            let inv = mod_inverse(&(&x * 2u32), &current).expect("2x is a unit");
            x = modulo(&(&x - (&x * &x - q) * inv), &current);
        }
        roots.push(x.clone());
        roots.push(modulo(&(-x), &modulus));
    }
    roots.sort();
    roots.dedup();
    roots
}

/// Smallest `u` in `[0, p)` with `u^2 = q mod p`.
pub fn sqrt_mod(q: &BigInt, p: &BigInt) -> Result<BigInt> {
    if !is_quadratic_residue(q, p)? {
        return Err(NumberTheoryError::NonResidue {
            q: q.clone(),
            p: p.clone(),
        });
    }
    if p.is_one() {
        return Ok(BigInt::zero());
    }
    // Combine the root sets of every prime power with CRT.
    let mut combined: Vec<BigInt> = vec![BigInt::zero()];
    let mut modulus = BigInt::one();
    for (prime, exp) in factorize(p) {
        let pk = prime.pow(exp);
        let local = roots_mod_prime_power(q, &prime, exp);
        let inv = mod_inverse(&modulus, &pk).expect("coprime moduli");
        let mut next = Vec::with_capacity(combined.len() * local.len());
        for x in &combined {
            for r in &local {
                // y = x mod modulus, y = r mod pk
                let t = modulo(&((r - x) * &inv), &pk);
                next.push(x + &modulus * t);
            }
        }
        modulus *= &pk;
        combined = next;
    }
    Ok(combined
        .into_iter()
        .map(|x| modulo(&x, p))
        .min()
        .expect("at least one root"))
}

/// True iff `n = 4^a (8b + 7)` for some `a, b >= 0`.
pub fn is_three_square_excluded(n: &BigInt) -> bool {
    if n.is_zero() || n.is_negative() {
        return false;
    }
    let mut m = n.clone();
    let four = BigInt::from(4);
    while (&m % &four).is_zero() {
        m /= &four;
    }
    (&m % 8u32) == BigInt::from(7)
}

/// Writes `n = a1^2 + a2^2 + a3^2` with `a1 >= a2 >= a3 >= 0`, picking the
/// lexicographically greatest `(a1, a2)`.
pub fn three_squares(n: &BigInt) -> Result<(BigInt, BigInt, BigInt)> {
    if n.is_negative() {
        return Err(NumberTheoryError::InvalidArgument(format!(
            "cannot write negative {n} as a sum of squares"
        )));
    }
    if is_three_square_excluded(n) {
        return Err(NumberTheoryError::ExcludedFromThreeSquares(n.clone()));
    }
    let mut a1 = n.sqrt();
    loop {
        let rest1 = n - &a1 * &a1;
        let mut a2 = rest1.sqrt().min(a1.clone());
        loop {
            let rest2 = &rest1 - &a2 * &a2;
            if &a2 * &a2 * 2u32 < rest1 {
                break;
            }
            let a3 = rest2.sqrt();
            if &a3 * &a3 == rest2 {
                return Ok((a1, a2, a3));
            }
            if a2.is_zero() {
                break;
            }
            a2 -= 1;
        }
        if a1.is_zero() || &a1 * &a1 * 3u32 < *n {
            unreachable!("Legendre's three-square theorem failed for {n}");
        }
        a1 -= 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd(&b(0), &b(7)), b(7));
        assert_eq!(gcd(&b(12), &b(18)), b(6));
        assert_eq!(gcd(&b(35), &b(44)), b(1));
        assert_eq!(gcd(&b(0), &b(0)), b(0));
        assert_eq!(gcd(&b(-12), &b(18)), b(6));
    }

    #[test]
    fn primality_examples() {
        assert!(is_prime(&b(2)));
        assert!(is_prime(&b(79)));
        assert!(!is_prime(&b(91)));
        assert!(!is_prime(&b(1)));
        assert!(!is_prime(&b(0)));
        assert!(!is_prime(&b(-7)));
        // strong pseudoprime to bases 2, 3, 5, 7
        assert!(!is_prime(&b(3_215_031_751)));
        assert!(is_prime(&BigInt::from(18_446_744_073_709_551_557u64)));
    }

    #[test]
    fn primality_agrees_with_trial_division() {
        for n in 0..5000i64 {
            let slow = n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0);
            assert_eq!(is_prime(&b(n)), slow, "n = {n}");
        }
    }

    #[test]
    fn prime_progression_examples() {
        let c = DEFAULT_CEILING;
        assert_eq!(find_prime_in_progression(&b(3), &b(20), c).unwrap(), b(3));
        assert_eq!(find_prime_in_progression(&b(35), &b(44), c).unwrap(), b(79));
        assert_eq!(find_prime_in_progression(&b(7), &b(4), c).unwrap(), b(7));
        assert!(matches!(
            find_prime_in_progression(&b(6), &b(9), c),
            Err(NumberTheoryError::NotCoprime { .. })
        ));
        assert!(matches!(
            find_prime_in_progression(&b(35), &b(44), 1),
            Err(NumberTheoryError::CeilingExceeded { steps: 1, .. })
        ));
    }

    #[test]
    fn residue_examples() {
        assert!(is_quadratic_residue(&b(4), &b(7)).unwrap());
        assert!(!is_quadratic_residue(&b(3), &b(7)).unwrap());
        assert!(is_quadratic_residue(&b(2), &b(7)).unwrap());
        assert!(is_quadratic_residue(&b(-1), &b(1)).unwrap());
        assert!(is_quadratic_residue(&b(9), &b(16)).unwrap());
        assert!(!is_quadratic_residue(&b(5), &b(16)).unwrap());
        assert!(matches!(
            is_quadratic_residue(&b(3), &b(9)),
            Err(NumberTheoryError::NotCoprime { .. })
        ));
    }

    #[test]
    fn sqrt_examples() {
        assert_eq!(sqrt_mod(&b(4), &b(7)).unwrap(), b(2));
        assert_eq!(sqrt_mod(&b(2), &b(7)).unwrap(), b(3));
        assert_eq!(sqrt_mod(&b(1), &b(2)).unwrap(), b(1));
        assert!(matches!(
            sqrt_mod(&b(3), &b(7)),
            Err(NumberTheoryError::NonResidue { .. })
        ));
    }

    #[test]
    fn sqrt_mod_is_smallest_root_for_small_moduli() {
        for p in 1..400i64 {
            for q in 0..p {
                if gcd(&b(q), &b(p)) != b(1) {
                    continue;
                }
                let brute = (0..p).find(|u| (u * u - q).rem_euclid(p) == 0);
                match brute {
                    Some(u) => assert_eq!(sqrt_mod(&b(q), &b(p)).unwrap(), b(u), "{q} mod {p}"),
                    None => assert!(sqrt_mod(&b(q), &b(p)).is_err(), "{q} mod {p}"),
                }
            }
        }
    }

    #[test]
    fn tonelli_shanks_on_primes_one_mod_eight() {
        for prime in [17i64, 41, 73, 97, 113, 193, 257, 65537] {
            let pb = b(prime);
            for a in 1..prime.min(300) {
                if let Some(r) = sqrt_mod_prime(&b(a), &pb) {
                    assert_eq!(modulo(&(&r * &r - a), &pb), b(0));
                } else {
                    assert!(!is_quadratic_residue(&b(a), &pb).unwrap());
                }
            }
        }
    }

    #[test]
    fn three_square_exclusion_examples() {
        assert!(is_three_square_excluded(&b(7)));
        assert!(!is_three_square_excluded(&b(27)));
        assert!(is_three_square_excluded(&b(28)));
        assert!(!is_three_square_excluded(&b(0)));
        assert!(is_three_square_excluded(&b(112)));
    }

    #[test]
    fn three_squares_examples() {
        assert_eq!(three_squares(&b(0)).unwrap(), (b(0), b(0), b(0)));
        assert_eq!(three_squares(&b(27)).unwrap(), (b(5), b(1), b(1)));
        assert_eq!(three_squares(&b(11)).unwrap(), (b(3), b(1), b(1)));
        assert!(matches!(
            three_squares(&b(7)),
            Err(NumberTheoryError::ExcludedFromThreeSquares(_))
        ));
    }

    #[test]
    fn factorize_examples() {
        assert!(factorize(&b(1)).is_empty());
        assert_eq!(
            factorize(&b(60)),
            vec![(b(2), 2), (b(3), 1), (b(5), 1)]
        );
        assert_eq!(factorize(&b(8633)), vec![(b(89), 1), (b(97), 1)]);
        let big = BigInt::from(18_446_744_073_709_551_557u64) * 6u32;
        assert_eq!(
            factorize(&big),
            vec![
                (b(2), 1),
                (b(3), 1),
                (BigInt::from(18_446_744_073_709_551_557u64), 1)
            ]
        );
    }

    #[test]
    fn jacobi_matches_euler_on_primes() {
        for prime in [3i64, 5, 7, 11, 13, 97] {
            for a in 0..prime {
                let euler = if a == 0 {
                    0
                } else if b(a).modpow(&b((prime - 1) / 2), &b(prime)) == b(1) {
                    1
                } else {
                    -1
                };
                assert_eq!(jacobi(&b(a), &b(prime)), euler);
            }
        }
        assert_eq!(jacobi(&b(2), &b(15)), 1);
        assert_eq!(jacobi(&b(7), &b(1)), 1);
    }

    #[test]
    fn mod_inverse_basics() {
        assert_eq!(mod_inverse(&b(3), &b(7)), Some(b(5)));
        assert_eq!(mod_inverse(&b(-2), &b(5)), Some(b(2)));
        assert_eq!(mod_inverse(&b(2), &b(4)), None);
    }
}
