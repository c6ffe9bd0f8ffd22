use std::collections::HashMap;

use rayon::prelude::*;

use super::elem::{fmt_shape, AlgElem};
use crate::error::{Error, Result};
use crate::linalg;
use crate::scalars::modp::{pow_mod, Reducer};
use crate::scalars::{Param, Scalar};
use crate::tangles::{enumerate_tangles, loops_raw, Seam, Tangle};

/// Matrices up to this side are ranked exactly; larger ones modulo primes.
pub const EXACT_RANK_LIMIT: usize = 128;

/// Number of primes used for modular ranks.
const RANK_PRIMES: usize = 3;

/// The trace pairing on the tangle space of one shape, over its canonical basis.
/// Every entry is a power of D, so only the exponents are stored.
#[derive(Clone, Debug)]
pub struct GramForm {
    param: Param,
    shape: (usize, usize),
    basis: Vec<Tangle>,
    /// entry (i, j) = D^{loops[i·n + j] − bottom}
    loops: Vec<u16>,
}

impl GramForm {
    pub fn new(param: &Param, m: usize, n: usize) -> Result<GramForm> {
        GramForm::over_basis(param, (m, n), enumerate_tangles(m, n)?)
    }

    /// Gram matrix over an arbitrary list of same-shape tangles.
    pub fn over_basis(param: &Param, shape: (usize, usize), basis: Vec<Tangle>) -> Result<GramForm> {
        if let Some(t) = basis.iter().find(|t| t.shape() != shape) {
            return Err(Error::shape(fmt_shape(shape), fmt_shape(t.shape())));
        }
        let seam = Seam::closure(shape);
        let size = basis.len();
        let loops: Vec<u16> = (0..size * size)
            .into_par_iter()
            .map(|ij| loops_raw(&basis[ij / size], &basis[ij % size], &seam) as u16)
            .collect();
        Ok(GramForm {
            param: param.clone(),
            shape,
            basis,
            loops,
        })
    }

    pub fn param(&self) -> &Param {
        &self.param
    }

    pub fn shape(&self) -> (usize, usize) {
        self.shape
    }

    pub fn basis(&self) -> &[Tangle] {
        &self.basis
    }

    pub fn size(&self) -> usize {
        self.basis.len()
    }

    pub fn loops(&self, i: usize, j: usize) -> u32 {
        self.loops[i * self.size() + j] as u32
    }

    pub fn entry(&self, i: usize, j: usize) -> Scalar {
        self.param.power(self.loops(i, j) as i64 - self.shape.1 as i64)
    }

    /// The full matrix of exact entries.
    pub fn matrix(&self) -> Vec<Vec<Scalar>> {
        let n = self.size();
        (0..n).map(|i| (0..n).map(|j| self.entry(i, j)).collect()).collect()
    }

    /// Matrix scaled by D^bottom, so entries are D^loops.
    fn integral_matrix(&self) -> Vec<Vec<Scalar>> {
        let n = self.size();
        (0..n)
            .map(|i| (0..n).map(|j| self.param.power(self.loops(i, j) as i64)).collect())
            .collect()
    }

    /// Exact rank for small forms, modular rank above [`EXACT_RANK_LIMIT`].
    pub fn rank(&self) -> usize {
        if self.size() <= EXACT_RANK_LIMIT {
            self.rank_exact()
        } else {
            self.rank_modular()
        }
    }

    pub fn rank_exact(&self) -> usize {
        linalg::rank_exact(self.integral_matrix())
    }

    /// Rank over Z/p for several primes p; a lower bound on the exact rank
    /// that coincides with it for all but finitely many primes.
    pub fn rank_modular(&self) -> usize {
        let n = self.size();
        let reducers = Reducer::for_field(self.param.field().map(|f| &**f), RANK_PRIMES);
        reducers
            .iter()
            .map(|red| {
                let p = red.p;
                let d = red.image(self.param.loop_value()).expect("D reduces");
                let max = self.loops.iter().copied().max().unwrap_or(0) as u64;
                let pows: Vec<u64> = (0..=max).map(|e| pow_mod(d, e, p)).collect();
                let m: Vec<Vec<u64>> = (0..n)
                    .map(|i| (0..n).map(|j| pows[self.loops(i, j) as usize]).collect())
                    .collect();
                linalg::rank_mod(m, p)
            })
            .max()
            .unwrap_or(0)
    }

    /// Coefficient vector of `x` in this basis.
    fn coords(&self, x: &AlgElem) -> Result<Vec<Scalar>> {
        if x.shape() != self.shape {
            return Err(Error::shape(fmt_shape(self.shape), fmt_shape(x.shape())));
        }
        let index: HashMap<&Tangle, usize> = self.basis.iter().enumerate().map(|(i, t)| (t, i)).collect();
        let mut v = vec![Scalar::zero(); self.size()];
        for (t, c) in x.terms() {
            let i = *index
                .get(t)
                .ok_or_else(|| Error::DomainError(format!("tangle {t} is not in the basis")))?;
            v[i] = c.clone();
        }
        Ok(v)
    }

    /// True iff ⟨b, x⟩ = 0 for every basis tangle b.
    pub fn radical_contains(&self, x: &AlgElem) -> Result<bool> {
        let v = self.coords(x)?;
        let support: Vec<(usize, &Scalar)> = v.iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
        Ok((0..self.size()).into_par_iter().all(|i| {
            support
                .iter()
                .fold(Scalar::zero(), |acc, &(j, c)| &acc + &(c * &self.entry(i, j)))
                .is_zero()
        }))
    }

    /// Exact positive-semidefiniteness of the form.
    pub fn is_psd(&self) -> bool {
        linalg::is_psd(self.matrix())
    }
}

/// Gram form of M(m, n).
pub fn gram(m: usize, n: usize, param: &Param) -> Result<GramForm> {
    GramForm::new(param, m, n)
}

/// Gram matrix of an arbitrary family of elements under the trace pairing.
pub fn gram_of(elems: &[AlgElem]) -> Result<Vec<Vec<Scalar>>> {
    let n = elems.len();
    let rows: Result<Vec<Vec<Scalar>>> = (0..n)
        .into_par_iter()
        .map(|i| (0..n).map(|j| super::pairing(&elems[i], &elems[j])).collect())
        .collect();
    rows
}
