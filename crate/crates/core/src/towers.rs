//! Block dimensions, Bratteli diagrams, weight vectors, the matrix Q_ν,
//! dimension formulas and relative-commutant tables.

use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::algebra::gram;
use crate::error::{Error, Result};
use crate::scalars::{charpoly, first_vanishing, Field, LoopParam, Param, Scalar, Q};

/// Number of simple blocks the tower can have at this parameter, if bounded.
pub fn width(param: &Param, k: usize) -> Option<usize> {
    match param.nu() {
        Some(nu) => Some(nu as usize - 1),
        None => first_vanishing(param, k + 1),
    }
}

/// One step of the tridiagonal recursion, truncated to `width` entries.
fn step(v: &[BigUint], width: Option<usize>) -> Vec<BigUint> {
    let len = width.map_or(v.len() + 1, |w| (v.len() + 1).min(w));
    (0..len)
        .map(|r| {
            let mut acc = BigUint::zero();
            for s in r.saturating_sub(1)..=r + 1 {
                if let Some(x) = v.get(s) {
                    acc += x;
                }
            }
            acc
        })
        .collect()
}

/// Dimensions of the simple blocks of A_k: (m_{k,0}, …, m_{k,k}) generically,
/// truncated to the first ν−1 blocks at D = 1 + 2cos(π/ν).
pub fn block_dims(k: usize, param: &Param) -> Vec<BigUint> {
    let w = width(param, k);
    (0..k).fold(vec![BigUint::one()], |v, _| step(&v, w))
}

/// Levels 0..=depth of the Bratteli diagram with their inclusion matrices.
#[derive(Clone, Debug)]
pub struct BratteliDiagram {
    pub param: Param,
    pub levels: Vec<Vec<BigUint>>,
    /// `inclusions[k][r][s]` = 1 when block r of level k sits in block s of level k+1.
    pub inclusions: Vec<Vec<Vec<u8>>>,
}

pub fn bratteli(param: &Param, depth: usize) -> BratteliDiagram {
    let w = width(param, depth);
    let mut levels = vec![vec![BigUint::one()]];
    for _ in 0..depth {
        let next = step(levels.last().unwrap(), w);
        levels.push(next);
    }
    let inclusions = levels
        .windows(2)
        .map(|pair| {
            (0..pair[0].len())
                .map(|r| (0..pair[1].len()).map(|s| u8::from(r.abs_diff(s) <= 1)).collect())
                .collect()
        })
        .collect();
    BratteliDiagram {
        param: param.clone(),
        levels,
        inclusions,
    }
}

impl BratteliDiagram {
    /// Graphviz export, level-major, blocks labeled "k:r".
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph bratteli {\n  rankdir=TB;\n");
        for (k, level) in self.levels.iter().enumerate() {
            let names: Vec<String> = (0..level.len()).map(|r| format!("\"{k}:{r}\"")).collect();
            let _ = writeln!(s, "  {{ rank=same; {} }}", names.join("; "));
            for (r, dim) in level.iter().enumerate() {
                let _ = writeln!(s, "  \"{k}:{r}\" [label=\"{dim}\"];");
            }
        }
        for (k, inc) in self.inclusions.iter().enumerate() {
            for (r, row) in inc.iter().enumerate() {
                for (t, &e) in row.iter().enumerate() {
                    if e == 1 {
                        let _ = writeln!(s, "  \"{k}:{r}\" -> \"{}:{t}\";", k + 1);
                    }
                }
            }
        }
        s.push_str("}\n");
        s
    }

    /// dims_{k+1} = inclusionᵀ · dims_k at every level.
    pub fn is_consistent(&self) -> bool {
        self.inclusions.iter().enumerate().all(|(k, inc)| {
            let next = &self.levels[k + 1];
            (0..next.len()).all(|s| {
                let sum: BigUint = (0..inc.len())
                    .filter(|&r| inc[r][s] == 1)
                    .map(|r| self.levels[k][r].clone())
                    .sum();
                sum == next[s]
            })
        })
    }
}

/// Traces of the minimal projections of A_k: entry i is (d^i/D^k)·P_i(τ).
pub fn weight_vector(k: usize, param: &Param) -> Result<Vec<Scalar>> {
    let len = width(param, k).map_or(k + 1, |w| w.min(k + 1));
    let dk = param.power(-(k as i64));
    (0..len)
        .map(|i| {
            if i >= 2 {
                if let Some(stage) = first_vanishing(param, i - 1) {
                    return Err(Error::GenericityViolation {
                        stage,
                        context: format!("q_{{{k},{i}}} is undefined"),
                    });
                }
            }
            let di = param.d().pow(i as i64)?;
            Ok(&(&dk * &di) * &param.cheb(i))
        })
        .collect()
}

/// dim H_j as the rank of the Gram form on M(⌊j/2⌋, ⌈j/2⌉).
pub fn gns_dim(j: usize, param: &Param) -> Result<usize> {
    Ok(gram(j / 2, j.div_ceil(2), param)?.rank())
}

/// The (ν−1)×(ν−1) matrix with q_{ij} = 1 iff |i − j| ≤ 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMatrix {
    pub nu: u32,
    pub entries: Vec<Vec<u8>>,
}

impl QMatrix {
    pub fn new(nu: u32) -> Result<QMatrix> {
        if nu < 3 {
            return Err(Error::DomainError(format!("Q_nu needs nu >= 3, got {nu}")));
        }
        let n = nu as usize - 1;
        let entries = (0..n).map(|i| (0..n).map(|j| u8::from(i.abs_diff(j) <= 1)).collect()).collect();
        Ok(QMatrix { nu, entries })
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    /// Q·v over the integers.
    pub fn apply(&self, v: &[BigUint]) -> Vec<BigUint> {
        self.entries
            .iter()
            .map(|row| row.iter().zip(v).filter(|(&q, _)| q == 1).map(|(_, x)| x.clone()).sum())
            .collect()
    }

    /// The unit vector ξ = (1, 0, …, 0).
    pub fn xi(&self) -> Vec<BigUint> {
        let mut v = vec![BigUint::zero(); self.size()];
        v[0] = BigUint::one();
        v
    }

    /// Q^k ξ.
    pub fn power_xi(&self, k: usize) -> Vec<BigUint> {
        (0..k).fold(self.xi(), |v, _| self.apply(&v))
    }

    /// det(xI − Q), lowest degree first.
    pub fn charpoly(&self) -> Vec<BigInt> {
        let m: Vec<Vec<BigInt>> = self
            .entries
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        charpoly(&m)
    }

    /// Eigenvector (U_0(c/2), …, U_{ν−2}(c/2)) with c = 2cos(π/ν): the entries
    /// are sin(jπ/ν)/sin(π/ν) and the eigenvalue is 1 + c.
    pub fn perron_vector(&self) -> Vec<Scalar> {
        let c = cos_generator(self.nu);
        let mut v = vec![Scalar::one(), c.clone()];
        while v.len() < self.size() {
            let n = v.len();
            let next = &(&c * &v[n - 1]) - &v[n - 2];
            v.push(next);
        }
        v.truncate(self.size());
        v
    }

    /// Q·v over the field.
    pub fn apply_scalar(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.entries
            .iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .filter(|(&q, _)| q == 1)
                    .fold(Scalar::zero(), |acc, (_, x)| &acc + x)
            })
            .collect()
    }

    /// The values 1 + 2cos(jπ/ν), j = 1..ν−1, in Q(2cos(π/ν)).
    pub fn expected_eigenvalues(&self) -> Vec<Scalar> {
        let c = cos_generator(self.nu);
        let mut v = vec![Scalar::from_int(2), c.clone()];
        while v.len() < self.nu as usize {
            let n = v.len();
            let next = &(&c * &v[n - 1]) - &v[n - 2];
            v.push(next);
        }
        v[1..].iter().map(|x| x + &Scalar::one()).collect()
    }

    /// The characteristic polynomial evaluated at a field element.
    pub fn charpoly_at(&self, x: &Scalar) -> Scalar {
        self.charpoly()
            .iter()
            .rev()
            .fold(Scalar::zero(), |acc, coef| &(&acc * x) + &Scalar::Rat(Q::from_integer(coef.clone())))
    }
}

fn cos_generator(nu: u32) -> Scalar {
    if nu == 3 {
        Scalar::one()
    } else {
        Scalar::generator(&Field::real_cyclotomic(nu))
    }
}

/// ⟨Q_ν^k ξ, ξ⟩, an exact integer.
pub fn dim_closed_form(k: usize, nu: u32) -> Result<BigUint> {
    Ok(QMatrix::new(nu)?.power_xi(k).swap_remove(0))
}

/// Coefficients of ⟨(I − xQ_ν)^{-1}ξ, ξ⟩ up to x^N, by the linear recurrence
/// carried by det(I − xQ_ν).
pub fn gf_coefficients(nu: u32, n: usize) -> Result<Vec<BigInt>> {
    let q = QMatrix::new(nu)?;
    let size = q.size();
    // det(I − xQ) = x^size·χ(1/x): reversed characteristic polynomial
    let rev: Vec<BigInt> = q.charpoly().into_iter().rev().collect();
    let mut out: Vec<BigInt> = Vec::with_capacity(n + 1);
    let mut v = q.xi();
    for k in 0..=n {
        if k < size {
            out.push(BigInt::from(v[0].clone()));
            v = q.apply(&v);
        } else {
            let next: BigInt = -(1..=size).map(|i| &rev[i] * &out[k - i]).sum::<BigInt>();
            out.push(next);
        }
    }
    Ok(out)
}

/// Motzkin numbers from the algebraic equation M = 1 + xM + x²M².
pub fn gf_coefficients_generic(n: usize) -> Vec<BigInt> {
    let mut m: Vec<BigInt> = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let v = if k == 0 {
            BigInt::one()
        } else {
            let conv: BigInt = (0..k.saturating_sub(1)).map(|i| &m[i] * &m[k - 2 - i]).sum();
            &m[k - 1] + conv
        };
        m.push(v);
    }
    m
}

/// Power-series coefficients of P_{ν−1}(x)/P_ν(x).
pub fn chebyshev_ratio_coefficients(nu: u32, n: usize) -> Vec<BigInt> {
    let cheb = |k: usize| -> Vec<BigInt> {
        let (mut prev, mut cur) = (vec![BigInt::one()], vec![BigInt::one()]);
        for _ in 1..k {
            let mut next = cur.clone();
            next.resize(prev.len().max(cur.len()) + 1, BigInt::zero());
            for (i, c) in prev.iter().enumerate() {
                next[i + 1] -= c;
            }
            prev = std::mem::replace(&mut cur, next);
        }
        cur
    };
    let num = cheb(nu as usize - 1);
    let den = cheb(nu as usize);
    let mut out: Vec<BigInt> = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let mut acc = num.get(k).cloned().unwrap_or_default();
        for i in 1..den.len().min(k + 1) {
            acc -= &den[i] * &out[k - i];
        }
        out.push(acc);
    }
    out
}

/// Comparison of the resolvent series against P_{ν−1}/P_ν.
#[derive(Clone, Debug)]
pub struct GfComparison {
    pub nu: u32,
    pub resolvent: Vec<BigInt>,
    pub chebyshev_ratio: Vec<BigInt>,
    /// (power of x, resolvent, ratio) at the first disagreement.
    pub first_mismatch: Option<(usize, BigInt, BigInt)>,
}

pub fn compare_gf(nu: u32, n: usize) -> Result<GfComparison> {
    let resolvent = gf_coefficients(nu, n)?;
    let chebyshev_ratio = chebyshev_ratio_coefficients(nu, n);
    let first_mismatch = resolvent
        .iter()
        .zip(&chebyshev_ratio)
        .enumerate()
        .find(|(_, (a, b))| a != b)
        .map(|(i, (a, b))| (i, a.clone(), b.clone()));
    Ok(GfComparison {
        nu,
        resolvent,
        chebyshev_ratio,
        first_mismatch,
    })
}

/// One summand Mat_{n(k−1;i,j,l)} of the generic relative commutant.
#[derive(Clone, Debug)]
pub struct CommutantBlock {
    pub composition: (usize, usize, usize),
    pub dim: BigUint,
    /// q^{j−l}/(1+q+q⁻¹)^{k−1}
    pub weight: Scalar,
    /// D^i/(1+D+D⁻¹)^{k−1}, reported for comparison only
    pub literal_weight: Scalar,
}

#[derive(Clone, Debug)]
pub struct CommutantTable {
    pub k: usize,
    pub big_d: Q,
    pub q: Scalar,
    pub blocks: Vec<CommutantBlock>,
}

impl CommutantTable {
    /// Σ dim·weight.
    pub fn total_weight(&self) -> Scalar {
        self.blocks
            .iter()
            .fold(Scalar::zero(), |acc, b| &acc + &(&Scalar::Rat(Q::from_integer(b.dim.clone().into())) * &b.weight))
    }

    pub fn total_literal_weight(&self) -> Scalar {
        self.blocks.iter().fold(Scalar::zero(), |acc, b| {
            &acc + &(&Scalar::Rat(Q::from_integer(b.dim.clone().into())) * &b.literal_weight)
        })
    }

    /// Σ dim², the dimension of the commutant.
    pub fn dimension(&self) -> BigUint {
        self.blocks.iter().map(|b| &b.dim * &b.dim).sum()
    }
}

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * BigUint::from(i))
}

/// Compositions (i, j, l) of n, lexicographically descending.
pub fn compositions3(n: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    (0..=n).rev().flat_map(move |i| (0..=n - i).rev().map(move |j| (i, j, n - i - j)))
}

/// Blocks of the relative commutant at rational D ≥ 3, with q + q⁻¹ = D − 1.
pub fn commutant_table(k: usize, big_d: &Q) -> Result<CommutantTable> {
    if k == 0 {
        return Err(Error::IndexOutOfRange { index: 0, range: "1..".into() });
    }
    let three = Q::from_integer(3.into());
    if *big_d < three {
        return Err(Error::DomainError(format!("q is not real for D = {big_d} < 3")));
    }
    let dm1 = Scalar::Rat(big_d - Q::one());
    let disc = &(&dm1 * &dm1) - &Scalar::from_int(4);
    let q = &(&dm1 + &disc.sqrt()?) * &Scalar::frac(1, 2);
    let qi = q.inv()?;
    let norm = (&(&Scalar::one() + &q) + &qi).pow(-(k as i64 - 1))?;
    let dd = Scalar::Rat(big_d.clone());
    let lit_norm = (&(&Scalar::one() + &dd) + &dd.inv()?).pow(-(k as i64 - 1))?;
    let fk = factorial(k - 1);
    let blocks = compositions3(k - 1)
        .map(|(i, j, l)| -> Result<CommutantBlock> {
            let dim = &fk / (factorial(i) * factorial(j) * factorial(l));
            let weight = &q.pow(j as i64 - l as i64)? * &norm;
            let literal_weight = &dd.pow(i as i64)? * &lit_norm;
            Ok(CommutantBlock {
                composition: (i, j, l),
                dim,
                weight,
                literal_weight,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CommutantTable {
        k,
        big_d: big_d.clone(),
        q,
        blocks,
    })
}

/// Σ mult² over the joint weights of the two-torus grading on words of length
/// k − 1 over {0, 1, 2}, counted by walking all 3^{k−1} words.
pub fn centralizer_dim_bruteforce(k: usize) -> BigUint {
    let len = k.saturating_sub(1) as u32;
    let mut mult: std::collections::HashMap<(u32, u32), u64> = std::collections::HashMap::new();
    for word in 0..3u64.pow(len) {
        let (mut w, mut ones, mut twos) = (word, 0, 0);
        for _ in 0..len {
            match w % 3 {
                1 => ones += 1,
                2 => twos += 1,
                _ => {}
            }
            w /= 3;
        }
        *mult.entry((ones, twos)).or_insert(0) += 1;
    }
    mult.values().map(|&c| BigUint::from(c) * BigUint::from(c)).sum()
}

/// [M : M_{−k}] = D^{2k}.
pub fn index_report(k: usize, param: &Param) -> Scalar {
    param.power(2 * k as i64)
}

/// dim of the relative commutant A_{k−1} at D = 1 + 2cos(π/ν).
pub fn commutant_dim_root(k: usize, nu: u32) -> Result<BigUint> {
    if k == 0 {
        return Err(Error::IndexOutOfRange { index: 0, range: "1..".into() });
    }
    let param = Param::new(LoopParam::RootOfUnity(nu))?;
    Ok(block_dims(k - 1, &param).iter().map(|x| x * x).sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[u32]) -> Vec<BigUint> {
        v.iter().map(|&x| BigUint::from(x)).collect()
    }

    #[test]
    fn block_dimensions() {
        let four = Param::rational(4, 1).unwrap();
        assert_eq!(block_dims(3, &four), big(&[4, 5, 3, 1]));
        let s = Param::root_of_unity(4).unwrap();
        assert_eq!(block_dims(4, &s), big(&[9, 12, 8]));
        let two = Param::rational(2, 1).unwrap();
        assert_eq!(block_dims(2, &two), big(&[2, 2]));
    }

    #[test]
    fn first_inclusions() {
        let b = bratteli(&Param::rational(4, 1).unwrap(), 3);
        assert_eq!(b.inclusions[1], vec![vec![1, 1, 0], vec![1, 1, 1]]);
        assert!(b.is_consistent());
        let b = bratteli(&Param::rational(2, 1).unwrap(), 3);
        assert_eq!(b.inclusions[1], vec![vec![1, 1], vec![1, 1]]);
    }

    #[test]
    fn generating_functions() {
        let g = gf_coefficients(4, 8).unwrap();
        let want: Vec<BigInt> = [1, 1, 2, 4, 9, 21, 50, 120, 289].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(g, want);
        let g3 = gf_coefficients(3, 5).unwrap();
        assert_eq!(g3, [1, 1, 2, 4, 8, 16].map(BigInt::from).to_vec());
        let cmp = compare_gf(4, 8).unwrap();
        assert_eq!(cmp.first_mismatch, Some((3, BigInt::from(4), BigInt::from(5))));
    }

    #[test]
    fn commutant_small() {
        let t = commutant_table(2, &Q::from_integer(4.into())).unwrap();
        assert_eq!(t.blocks.len(), 3);
        assert!(t.total_weight().is_one());
        let t = commutant_table(3, &Q::from_integer(4.into())).unwrap();
        let dims: Vec<_> = t.blocks.iter().map(|b| b.dim.clone()).collect();
        assert_eq!(dims, big(&[1, 2, 2, 1, 2, 1]));
        assert!(commutant_table(2, &Q::from_integer(2.into())).is_err());
        for k in 1..=5 {
            let t = commutant_table(k, &Q::from_integer(4.into())).unwrap();
            assert_eq!(t.dimension(), centralizer_dim_bruteforce(k));
        }
    }

    #[test]
    fn root_commutant_dims() {
        assert_eq!(commutant_dim_root(4, 4).unwrap(), BigUint::from(50u32));
        assert_eq!(commutant_dim_root(3, 4).unwrap(), BigUint::from(9u32));
        assert_eq!(commutant_dim_root(1, 7).unwrap(), BigUint::one());
    }
}
