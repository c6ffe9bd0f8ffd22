use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigUint::one(), |acc, i| acc * BigUint::from(n - i) / BigUint::from(i + 1))
}

/// Motzkin number 𝓜_k = Σ_i C(k,2i)·C(2i,i)/(i+1).
pub fn count_motzkin(k: usize) -> BigUint {
    (0..=k / 2)
        .map(|i| binomial(k, 2 * i) * binomial(2 * i, i) / BigUint::from(i + 1))
        .sum()
}

/// 𝓜_0..=𝓜_k by the convolution 𝓜_k = 𝓜_{k−1} + Σ_{i=1}^{k−1} 𝓜_{i−1}𝓜_{k−i−1}.
pub fn count_motzkin_recursive(k: usize) -> Vec<BigUint> {
    let mut m: Vec<BigUint> = vec![BigUint::one()];
    for j in 1..=k {
        let conv: BigUint = (1..j).map(|i| &m[i - 1] * &m[j - i - 1]).sum();
        let next = &m[j - 1] + conv;
        m.push(next);
    }
    m
}

/// Number of Motzkin paths of length n ending at height r, by the three-term recursion.
pub fn count_paths(n: usize, r: usize) -> BigUint {
    if r > n {
        return BigUint::zero();
    }
    let mut row = vec![BigUint::one()];
    for step in 1..=n {
        let next: Vec<BigUint> = (0..=step)
            .map(|h| {
                let mut acc = BigUint::zero();
                if h >= 1 && h - 1 < row.len() {
                    acc += &row[h - 1];
                }
                if h < row.len() {
                    acc += &row[h];
                }
                if h + 1 < row.len() {
                    acc += &row[h + 1];
                }
                acc
            })
            .collect();
        row = next;
    }
    row.swap_remove(r)
}

/// Closed form: choose the 2j+r up/down steps, then count ballot sequences
/// C(s,j) − C(s,j−1) among them.
pub fn count_paths_closed(n: usize, r: usize) -> BigUint {
    (0..)
        .map(|j| (j, 2 * j + r))
        .take_while(|&(_, s)| s <= n)
        .map(|(j, s)| {
            let ballot = binomial(s, j) - if j == 0 { BigUint::zero() } else { binomial(s, j - 1) };
            binomial(n, s) * ballot
        })
        .sum()
}

/// A lattice path with steps in {−1, 0, +1} that never goes below zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MotzkinPath(Vec<i8>);

impl MotzkinPath {
    pub fn new(steps: Vec<i8>) -> Result<MotzkinPath> {
        let mut h = 0i64;
        for &s in &steps {
            if !(-1..=1).contains(&s) {
                return Err(Error::parse(format!("bad step {s}")));
            }
            h += s as i64;
            if h < 0 {
                return Err(Error::DomainError("path dips below zero".into()));
            }
        }
        Ok(MotzkinPath(steps))
    }

    pub fn steps(&self) -> &[i8] {
        &self.0
    }

    /// Final height.
    pub fn rank(&self) -> usize {
        self.0.iter().map(|&s| s as i64).sum::<i64>() as usize
    }
}

/// All Motzkin paths of length n, lexicographic in the step values.
pub fn enumerate_paths(n: usize) -> Vec<MotzkinPath> {
    fn go(n: usize, h: i64, cur: &mut Vec<i8>, out: &mut Vec<MotzkinPath>) {
        if cur.len() == n {
            out.push(MotzkinPath(cur.clone()));
            return;
        }
        for s in [-1i8, 0, 1] {
            if h + s as i64 >= 0 {
                cur.push(s);
                go(n, h + s as i64, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(n, 0, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn motzkin_numbers_agree() {
        let rec = count_motzkin_recursive(14);
        for (k, r) in rec.iter().enumerate() {
            assert_eq!(&count_motzkin(k), r);
        }
        assert_eq!(rec[14], BigUint::from(113634u32));
    }

    #[test]
    fn path_counts() {
        let row: Vec<_> = (0..=3).map(|r| count_paths(3, r)).collect();
        assert_eq!(row, [4u32, 5, 3, 1].map(BigUint::from));
        for n in 0..10 {
            for r in 0..=n + 1 {
                assert_eq!(count_paths(n, r), count_paths_closed(n, r));
            }
            let by_rank = enumerate_paths(n).iter().filter(|p| p.rank() == 2.min(n)).count();
            assert_eq!(BigUint::from(by_rank), count_paths(n, 2.min(n)));
        }
    }
}
