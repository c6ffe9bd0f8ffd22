//! Exact and modular linear algebra over the coefficient fields.

use std::cmp::Ordering;

use rayon::prelude::*;

use crate::scalars::modp::{inv_mod, mul_mod, Reducer};
use crate::scalars::Scalar;

/// Rank by fraction-free (Bareiss) elimination; pivots are the first nonzero
/// entry of each column in row order.
pub fn rank_exact(mut m: Vec<Vec<Scalar>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0;
    let mut prev = Scalar::one();
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(piv) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, piv);
        let (head, tail) = m.split_at_mut(rank + 1);
        let prow = &head[rank];
        let pivot = &prow[col];
        tail.par_iter_mut().for_each(|row| {
            let f = row[col].clone();
            for c in col + 1..cols {
                let v = &(&row[c] * pivot) - &(&f * &prow[c]);
                row[c] = &v / &prev;
            }
            row[col] = Scalar::zero();
        });
        prev = m[rank][col].clone();
        rank += 1;
    }
    rank
}

/// Rank of a matrix over Z/p by Gaussian elimination.
pub fn rank_mod(mut m: Vec<Vec<u64>>, p: u64) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(piv) = (rank..rows).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = inv_mod(m[rank][col], p).expect("pivot is a unit");
        let (head, tail) = m.split_at_mut(rank + 1);
        let prow = &head[rank];
        tail.par_iter_mut().for_each(|row| {
            if row[col] == 0 {
                return;
            }
            let f = mul_mod(row[col], inv, p);
            for c in col..cols {
                if prow[c] != 0 {
                    row[c] = (row[c] + p - mul_mod(f, prow[c], p)) % p;
                }
            }
        });
        rank += 1;
    }
    rank
}

/// Lower bound on the rank from reductions modulo several primes. Equal to the
/// true rank unless every prime divides one of finitely many minors.
pub fn rank_modular(m: &[Vec<Scalar>], primes: usize) -> usize {
    let field = m.iter().flatten().find_map(|x| x.field().cloned());
    Reducer::for_field(field.as_deref(), primes)
        .into_iter()
        .map(|red| {
            let reduced: Option<Vec<Vec<u64>>> =
                m.iter().map(|row| row.iter().map(|x| red.image(x)).collect()).collect();
            reduced.map_or(0, |r| rank_mod(r, red.p))
        })
        .max()
        .unwrap_or(0)
}

/// Exact test for positive semidefiniteness of a symmetric matrix, by
/// symmetric elimination on positive diagonal pivots.
pub fn is_psd(mut m: Vec<Vec<Scalar>>) -> bool {
    let n = m.len();
    let mut alive: Vec<usize> = (0..n).collect();
    loop {
        let mut best = None;
        for &i in &alive {
            match m[i][i].sign() {
                Ordering::Less => return false,
                Ordering::Greater if best.is_none() => best = Some(i),
                _ => {}
            }
        }
        let Some(k) = best else {
            // zero diagonal: a PSD remainder must vanish
            return alive.iter().all(|&i| alive.iter().all(|&j| m[i][j].is_zero()));
        };
        alive.retain(|&i| i != k);
        let pivot = m[k][k].clone();
        let pk: Vec<Scalar> = m[k].clone();
        for &i in &alive {
            if pk[i].is_zero() {
                continue;
            }
            let f = &pk[i] / &pivot;
            for &j in &alive {
                if !pk[j].is_zero() {
                    m[i][j] = &m[i][j] - &(&f * &pk[j]);
                }
            }
        }
    }
}

/// A basis of the right nullspace {v : M v = 0}, exact.
pub fn nullspace(m: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut a = m.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, piv);
        let inv = a[r][c].inv().expect("nonzero pivot");
        a[r] = a[r].iter().map(|x| x * &inv).collect();
        let prow = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&prow) {
                    if !y.is_zero() {
                        *x = &*x - &(&f * y);
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Scalar::zero(); cols];
            v[free] = Scalar::one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = -&a[i][free];
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[i64]]) -> Vec<Vec<Scalar>> {
        rows.iter().map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect()).collect()
    }

    #[test]
    fn ranks_agree() {
        let m = mat(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank_exact(m.clone()), 2);
        assert_eq!(rank_modular(&m, 2), 2);
        assert_eq!(nullspace(&m).len(), 1);
    }

    #[test]
    fn psd_detection() {
        assert!(is_psd(mat(&[&[2, 1], &[1, 1]])));
        assert!(is_psd(mat(&[&[1, 1], &[1, 1]])));
        assert!(!is_psd(mat(&[&[1, 2], &[2, 1]])));
        assert!(!is_psd(mat(&[&[0, 1], &[1, 0]])));
        assert!(is_psd(mat(&[&[0, 0], &[0, 0]])));
    }
}
