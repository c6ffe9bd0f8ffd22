//! Exact coefficient arithmetic and the loop parameter.

mod field;
pub mod modp;
mod param;
mod poly;

pub use field::{Field, Scalar, Q};
pub use param::{parse_rational, LoopParam, Param};
pub use poly::{charpoly, conjugate_roots, cyclotomic_poly, minimal_polynomial, totient};

use crate::error::{Error, Result};

/// P_k(x) with P_0 = P_1 = 1 and P_{k+1} = P_k − x·P_{k−1}.
pub fn chebyshev(k: usize, x: &Scalar) -> Scalar {
    let mut prev = Scalar::one();
    let mut cur = Scalar::one();
    for _ in 1..k {
        let next = &cur - &(x * &prev);
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// True iff P_k(τ) ≠ 0 for 1 ≤ k ≤ n.
pub fn is_generic(param: &Param, n: usize) -> bool {
    first_vanishing(param, n).is_none()
}

/// The smallest k ≤ n with P_k(τ) = 0.
pub fn first_vanishing(param: &Param, n: usize) -> Option<usize> {
    let tau = param.tau();
    let mut prev = Scalar::one();
    let mut cur = Scalar::one();
    for k in 2..=n {
        let next = &cur - &(tau * &prev);
        prev = std::mem::replace(&mut cur, next);
        if cur.is_zero() {
            return Some(k);
        }
    }
    None
}

/// λ_k = (D/d)·P_{k−1}(τ)/P_k(τ).
pub fn lambda(param: &Param, k: usize) -> Result<Scalar> {
    if k == 0 {
        return Err(Error::IndexOutOfRange { index: 0, range: "1..".into() });
    }
    let pk = param.cheb(k);
    if pk.is_zero() {
        return Err(Error::GenericityViolation {
            stage: k,
            context: format!("lambda_{k} at {param}"),
        });
    }
    let ratio = &param.cheb(k - 1) / &pk;
    Ok(&(param.loop_value() / param.d()) * &ratio)
}

/// d^i·P_i(τ), the quantum dimension of label i.
pub fn quantum_dim(param: &Param, i: usize) -> Scalar {
    &param.d().pow(i as i64).expect("nonnegative power") * &param.cheb(i)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chebyshev_small_values() {
        let tau = Scalar::frac(1, 9);
        assert!(chebyshev(0, &tau).is_one());
        assert_eq!(chebyshev(2, &tau), Scalar::frac(8, 9));
        assert!(chebyshev(3, &Scalar::frac(1, 2)).is_zero());
    }

    #[test]
    fn genericity() {
        let four = Param::rational(4, 1).unwrap();
        assert!(is_generic(&four, 10));
        let two = Param::rational(2, 1).unwrap();
        assert!(is_generic(&two, 1));
        assert!(!is_generic(&two, 2));
        let s = Param::root_of_unity(4).unwrap();
        assert!(is_generic(&s, 2));
        assert!(!is_generic(&s, 3));
    }

    #[test]
    fn lambda_values() {
        let four = Param::rational(4, 1).unwrap();
        assert_eq!(lambda(&four, 1).unwrap(), Scalar::frac(4, 3));
        let two = Param::rational(2, 1).unwrap();
        assert!(matches!(lambda(&two, 2), Err(Error::GenericityViolation { stage: 2, .. })));
        let s = Param::root_of_unity(4).unwrap();
        let l2 = lambda(&s, 2).unwrap();
        assert!((l2.to_f64() - (2.0 + 2f64.sqrt())).abs() < 1e-12);
    }

    #[test]
    fn tau_times_d_squared_is_one() {
        for p in ["4", "7/2", "-3", "cos:4", "cos:5", "cos:7", "cos:12"] {
            let p: Param = p.parse().unwrap();
            assert!((&(p.tau() * p.d()) * p.d()).is_one(), "{p}");
            assert_eq!(p.d(), &(p.loop_value() - &Scalar::one()));
        }
    }
}
