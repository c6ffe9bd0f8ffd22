//! Reduction of field elements modulo word-sized primes, used for fast rank
//! computations on large Gram matrices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::field::{Field, Scalar, Q};

#[inline]
pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

pub fn inv_mod(a: u64, p: u64) -> Option<u64> {
    (a % p != 0).then(|| pow_mod(a, p - 2, p))
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &w in &WITNESSES {
        if n % w == 0 {
            return n == w;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'outer: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut f = 2;
    while f * f <= n {
        if n % f == 0 {
            out.push(f);
            while n % f == 0 {
                n /= f;
            }
        }
        f += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Square root modulo an odd prime (Tonelli–Shanks).
pub fn sqrt_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if pow_mod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    let s = (p - 1).trailing_zeros();
    let qd = (p - 1) >> s;
    let z = (2..p).find(|&z| pow_mod(z, (p - 1) / 2, p) == p - 1)?;
    let mut m = s;
    let mut c = pow_mod(z, qd, p);
    let mut t = pow_mod(a, qd, p);
    let mut r = pow_mod(a, qd.div_ceil(2), p);
    while t != 1 {
        let mut i = 0;
        let mut tt = t;
        while tt != 1 {
            tt = mul_mod(tt, tt, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r)
}

fn reduce_int(n: &BigInt, p: u64) -> u64 {
    n.mod_floor(&BigInt::from(p)).to_u64().expect("reduced value fits")
}

fn reduce_rat(r: &Q, p: u64) -> Option<u64> {
    let den = reduce_int(r.denom(), p);
    let inv = inv_mod(den, p)?;
    Some(mul_mod(reduce_int(r.numer(), p), inv, p))
}

/// A ring homomorphism from a number field (or Q) onto Z/p.
#[derive(Clone, Debug)]
pub struct Reducer {
    pub p: u64,
    c_img: u64,
    s_img: u64,
}

impl Reducer {
    /// Finds up to `count` primes below 2^62 for which the field maps onto Z/p.
    pub fn for_field(field: Option<&Field>, count: usize) -> Vec<Reducer> {
        let step = match field.and_then(Field::nu) {
            Some(nu) => 2 * nu as u64,
            None => 2,
        };
        let mut out = Vec::new();
        let mut cand = ((1u64 << 62) / step) * step + 1;
        while out.len() < count {
            cand -= step;
            if !is_prime(cand) {
                continue;
            }
            if let Some(r) = Reducer::try_prime(field, cand) {
                out.push(r);
            }
        }
        out
    }

    fn try_prime(field: Option<&Field>, p: u64) -> Option<Reducer> {
        let Some(field) = field else {
            return Some(Reducer { p, c_img: 0, s_img: 0 });
        };
        let mut c_img = 0;
        if let Some(nu) = field.nu().filter(|_| field.base_degree() > 1) {
            let order = 2 * nu as u64;
            let factors = prime_factors(order);
            let zeta = (2..1000u64).find_map(|g| {
                let z = pow_mod(g, (p - 1) / order, p);
                factors
                    .iter()
                    .all(|&l| pow_mod(z, order / l, p) != 1)
                    .then_some(z)
            })?;
            c_img = (zeta + inv_mod(zeta, p)?) % p;
            let mut acc = 0u64;
            for coef in field.modulus().iter().rev() {
                acc = (mul_mod(acc, c_img, p) + reduce_rat(coef, p)?) % p;
            }
            if acc != 0 {
                return None;
            }
        }
        let mut red = Reducer { p, c_img, s_img: 0 };
        if let Some(r) = field.radicand() {
            let r_img = red.image(&r)?;
            if r_img == 0 {
                return None;
            }
            red.s_img = sqrt_mod(r_img, p)?;
        }
        Some(red)
    }

    fn eval_base(&self, coefs: &[Q]) -> Option<u64> {
        let mut acc = 0u64;
        for coef in coefs.iter().rev() {
            acc = (mul_mod(acc, self.c_img, self.p) + reduce_rat(coef, self.p)?) % self.p;
        }
        Some(acc)
    }

    /// Image of a scalar; `None` when p divides a denominator.
    pub fn image(&self, x: &Scalar) -> Option<u64> {
        match x {
            Scalar::Rat(r) => reduce_rat(r, self.p),
            Scalar::Alg(f, c) => {
                let d = f.base_degree();
                if f.radicand().is_some() {
                    let a = self.eval_base(&c[..d])?;
                    let b = self.eval_base(&c[d..])?;
                    Some((a + mul_mod(b, self.s_img, self.p)) % self.p)
                } else {
                    self.eval_base(c)
                }
            }
        }
    }
}

/// True when `x` maps to zero under the reducer (or cannot be reduced).
pub fn maybe_zero(red: &Reducer, x: &Scalar) -> bool {
    red.image(x).is_none_or(|v| v.is_zero())
}
