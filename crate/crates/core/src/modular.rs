//! Modular gcd of integer polynomials: gcds modulo word-sized primes,
//! Chinese remaindering, and exact trial division as the final check.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

fn invmod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

/// Deterministic Miller-Rabin for 64-bit integers.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for b in BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'outer: for a in BASES {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Primes below `2^62`, descending.
fn primes() -> impl Iterator<Item = u64> {
    ((1u64 << 61)..(1u64 << 62)).rev().filter(|&n| n % 2 == 1 && is_prime(n))
}

fn reduce(c: &[BigInt], p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    c.iter().map(|x| x.mod_floor(&pb).to_u64().unwrap()).collect()
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Monic gcd over `F_p`, coefficients lowest first.
fn gcd_mod(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let inv = invmod(*b.last().unwrap(), p);
        while a.len() >= b.len() {
            let k = a.len() - b.len();
            let f = mulmod(*a.last().unwrap(), inv, p);
            for (j, bj) in b.iter().enumerate() {
                a[k + j] = (a[k + j] + p - mulmod(f, *bj, p)) % p;
            }
            trim(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    if let Some(&lc) = a.last() {
        let inv = invmod(lc, p);
        for x in a.iter_mut() {
            *x = mulmod(*x, inv, p);
        }
    }
    a
}

fn primitive(c: Vec<BigInt>) -> Vec<BigInt> {
    let g = c.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let sign = if c.last().is_some_and(|x| x.is_negative()) { -BigInt::one() } else { BigInt::one() };
    let g = g * sign;
    if g.is_one() {
        c
    } else {
        c.into_iter().map(|x| x / &g).collect()
    }
}

/// Does `d` divide `a` over `Q`?
fn divides(d: &[BigInt], a: &[BigInt]) -> bool {
    if a.len() < d.len() {
        return a.iter().all(Zero::is_zero);
    }
    let lc = d.last().unwrap();
    let mut r = a.to_vec();
    while r.len() >= d.len() {
        let k = r.len() - d.len();
        let lead = r.last().unwrap().clone();
        // keep r integral: r <- lc * r - lead * x^k * d, then drop the content
        for x in r.iter_mut() {
            *x *= lc;
        }
        for (j, dj) in d.iter().enumerate() {
            r[k + j] -= &lead * dj;
        }
        while r.last().is_some_and(Zero::is_zero) {
            r.pop();
        }
        r = primitive(r);
    }
    r.is_empty()
}

/// Primitive gcd (positive leading coefficient) of two nonzero integer polynomials.
pub(crate) fn gcd_int(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.len() == 1 || b.len() == 1 {
        return vec![BigInt::one()];
    }
    let a = primitive(a.to_vec());
    let b = primitive(b.to_vec());
    let gamma = a.last().unwrap().gcd(b.last().unwrap());
    let mut deg = usize::MAX;
    let mut modulus = BigInt::one();
    let mut image: Vec<BigInt> = Vec::new();
    let mut previous: Option<Vec<BigInt>> = None;
    for p in primes() {
        let pb = BigInt::from(p);
        if (a.last().unwrap() % &pb).is_zero() || (b.last().unwrap() % &pb).is_zero() {
            continue;
        }
        let g = gcd_mod(reduce(&a, p), reduce(&b, p), p);
        let d = g.len() - 1;
        if d == 0 {
            return vec![BigInt::one()];
        }
        if d > deg {
            continue;
        }
        let gm = gamma.mod_floor(&pb).to_u64().unwrap();
        let g: Vec<u64> = g.into_iter().map(|x| mulmod(x, gm, p)).collect();
        if d < deg {
            deg = d;
            modulus = pb;
            image = g.into_iter().map(BigInt::from).collect();
            previous = None;
            continue;
        }
        // CRT: new = old + M * ((g - old) * M^-1 mod p)
        let minv = BigInt::from(invmod(modulus.mod_floor(&pb).to_u64().unwrap(), p));
        for (c, gi) in image.iter_mut().zip(g) {
            let diff = (BigInt::from(gi) - &*c).mod_floor(&pb);
            *c += &modulus * ((diff * &minv) % &pb);
        }
        modulus *= pb;
        let half = &modulus >> 1;
        let candidate = primitive(image.iter().map(|c| if c > &half { c - &modulus } else { c.clone() }).collect());
        if previous.as_ref() == Some(&candidate) && divides(&candidate, &a) && divides(&candidate, &b) {
            return candidate;
        }
        previous = Some(candidate);
    }
    unreachable!("there are infinitely many primes")
}
