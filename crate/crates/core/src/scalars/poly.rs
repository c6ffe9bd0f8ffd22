//! Integer polynomials needed to build the real cyclotomic fields.
//! Coefficient vectors are stored lowest degree first.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Euler's totient.
pub fn totient(n: u64) -> u64 {
    let mut n_left = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n_left {
        if n_left % p == 0 {
            while n_left % p == 0 {
                n_left /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n_left > 1 {
        result -= result / n_left;
    }
    result
}

fn trim(p: &mut Vec<BigInt>) {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

/// Exact division by a monic divisor; panics if the remainder is nonzero.
fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    assert!(den[dd].is_one(), "divisor must be monic");
    if rem.len() < den.len() {
        assert!(rem.iter().all(Zero::is_zero), "inexact polynomial division");
        return vec![BigInt::zero()];
    }
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for i in (0..quot.len()).rev() {
        let coef = rem[i + dd].clone();
        if coef.is_zero() {
            continue;
        }
        for (j, d) in den.iter().enumerate() {
            rem[i + j] -= &coef * d;
        }
        quot[i] = coef;
    }
    assert!(rem.iter().all(Zero::is_zero), "inexact polynomial division");
    trim(&mut quot);
    quot
}

/// The cyclotomic polynomial Φ_n, by dividing x^n − 1 by Φ_d for every proper divisor d.
pub fn cyclotomic_poly(n: u64) -> Vec<BigInt> {
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = BigInt::from(-1);
    num[n as usize] = BigInt::one();
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        num = poly_div_exact(&num, &cyclotomic_poly(d));
    }
    num
}

/// Minimal polynomial of 2cos(π/ν) over the rationals, monic, lowest degree first.
///
/// Φ_{2ν} is palindromic of degree 2m, so z^{-m}Φ_{2ν}(z) is a polynomial in
/// x = z + 1/z; the coefficients are matched through z^j + z^{-j} = V_j(x).
pub fn minimal_polynomial(nu: u32) -> Vec<BigInt> {
    assert!(nu >= 3, "minimal_polynomial needs nu >= 3");
    let phi = cyclotomic_poly(2 * nu as u64);
    let m = (phi.len() - 1) / 2;
    // V_0 = 2, V_1 = x, V_j = x V_{j-1} - V_{j-2}
    let mut v_prev = vec![BigInt::from(2)];
    let mut v_cur = vec![BigInt::zero(), BigInt::one()];
    let mut mu = vec![BigInt::zero(); m + 1];
    mu[0] += &phi[m];
    for j in 1..=m {
        for (i, c) in v_cur.iter().enumerate() {
            mu[i] += &phi[m + j] * c;
        }
        let mut next = vec![BigInt::zero(); v_cur.len() + 1];
        for (i, c) in v_cur.iter().enumerate() {
            next[i + 1] += c;
        }
        for (i, c) in v_prev.iter().enumerate() {
            next[i] -= c;
        }
        v_prev = std::mem::replace(&mut v_cur, next);
    }
    trim(&mut mu);
    debug_assert_eq!(mu.len() as u64 - 1, totient(2 * nu as u64) / 2);
    mu
}

/// Resultant-free cross-check used by tests: the product of (x − 2cos(kπ/ν)) over
/// odd k coprime to ν reproduces the minimal polynomial numerically.
pub fn conjugate_roots(nu: u32) -> Vec<f64> {
    (1..2 * nu)
        .filter(|k| k % 2 == 1 && (*k as u64).gcd(&(2 * nu as u64)) == 1 && *k < nu)
        .map(|k| 2.0 * (k as f64 * std::f64::consts::PI / nu as f64).cos())
        .collect()
}

/// Integer characteristic polynomial det(xI − A), lowest degree first (Faddeev–LeVerrier).
pub fn charpoly(a: &[Vec<BigInt>]) -> Vec<BigInt> {
    let n = a.len();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut m = vec![vec![BigInt::zero(); n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = vec![vec![BigInt::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = BigInt::zero();
                for (l, row) in m.iter().enumerate() {
                    acc += &a[i][l] * &row[j];
                }
                next[i][j] = acc;
            }
            next[i][i] += &coeffs[n - k + 1];
        }
        m = next;
        let mut tr = BigInt::zero();
        for i in 0..n {
            for l in 0..n {
                tr += &a[i][l] * &m[l][i];
            }
        }
        coeffs[n - k] = -(tr / BigInt::from(k));
    }
    coeffs
}
