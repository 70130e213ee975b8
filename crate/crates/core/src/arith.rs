//! Machine-integer number theory: primality, modular powers, orders.

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

pub fn mod_pow(base: u64, mut exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let m = modulus as u128;
    let mut b = base as u128 % m;
    let mut acc = 1u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// Inverse of `a` modulo the prime `p`; `a` must be nonzero mod `p`.
pub fn mod_inv(a: u64, p: u64) -> u64 {
    mod_pow(a % p, p - 2, p)
}

/// Reduces a signed integer into `[0, m)`.
pub fn reduce_i128(x: i128, m: u64) -> u64 {
    x.rem_euclid(m as i128) as u64
}

/// Distinct prime factors of `n`, ascending.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Multiplicative order of `a` modulo the prime `ell`. Returns `None` for `a ≡ 0`.
pub fn multiplicative_order(a: u64, ell: u64) -> Option<u64> {
    let a = a % ell;
    if a == 0 {
        return None;
    }
    let mut order = ell - 1;
    for r in prime_factors(ell - 1) {
        while order % r == 0 && mod_pow(a, order / r, ell) == 1 {
            order /= r;
        }
    }
    Some(order)
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Sorted divisors of `n`.
pub fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|d| n % d == 0).collect()
}

/// Square root modulo an odd prime by Tonelli–Shanks; `None` for non-residues.
/// Returns the smaller of the two roots.
pub fn sqrt_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if mod_pow(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    let mut s = 0;
    let mut t = p - 1;
    while t % 2 == 0 {
        t /= 2;
        s += 1;
    }
    let z = (2..p).find(|&z| mod_pow(z, (p - 1) / 2, p) == p - 1)?;
    let mut c = mod_pow(z, t, p);
    let mut r = mod_pow(a, (t + 1) / 2, p);
    let mut tt = mod_pow(a, t, p);
    let mut m = s;
    while tt != 1 {
        let mut i = 0;
        let mut probe = tt;
        while probe != 1 {
            probe = (probe as u128 * probe as u128 % p as u128) as u64;
            i += 1;
        }
        let b = mod_pow(c, 1 << (m - i - 1), p);
        r = (r as u128 * b as u128 % p as u128) as u64;
        c = (b as u128 * b as u128 % p as u128) as u64;
        tt = (tt as u128 * c as u128 % p as u128) as u64;
        m = i;
    }
    Some(r.min(p - r))
}

/// Largest `e` with `ell^e | n`, and the cofactor `n / ell^e`.
pub fn split_power(mut n: u128, ell: u64) -> (u32, u128) {
    let l = ell as u128;
    let mut e = 0;
    while n != 0 && n % l == 0 {
        n /= l;
        e += 1;
    }
    (e, n)
}
