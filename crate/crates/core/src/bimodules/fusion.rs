use std::collections::BTreeMap;

use crate::algebra::{all_isolated, generator, gram, product, AlgElem};
use crate::error::{Error, Result};
use crate::idempotents::{jw, minimal_projection, Report};
use crate::scalars::{quantum_dim, Param, Scalar};
use crate::tangles::Generator;

use super::check_projection;

/// The label of H_{k,i}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FusionLabel {
    pub k: usize,
    pub i: usize,
}

impl FusionLabel {
    pub fn new(k: usize, i: usize, param: &Param) -> Result<FusionLabel> {
        let bound = param.cap().map_or(k, |c| c.min(k));
        if i > bound {
            return Err(Error::IndexOutOfRange { index: i, range: format!("0..={bound}") });
        }
        Ok(FusionLabel { k, i })
    }
}

impl std::fmt::Display for FusionLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.k, self.i)
    }
}

impl std::str::FromStr for FusionLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<FusionLabel> {
        let (k, i) = s
            .trim()
            .trim_start_matches('(')
            .trim_end_matches(')')
            .split_once(',')
            .ok_or_else(|| Error::parse(format!("label {s:?} is not k,i")))?;
        let num = |x: &str| x.trim().parse::<usize>().map_err(|_| Error::parse(format!("bad label {s:?}")));
        Ok(FusionLabel { k: num(k)?, i: num(i)? })
    }
}

/// The labels of one parameter with their truncation.
#[derive(Clone, Debug)]
pub struct FusionRing {
    pub param: Param,
    /// ν − 2 at a root of unity, unbounded otherwise
    pub cap: Option<usize>,
}

impl FusionRing {
    pub fn new(param: &Param) -> FusionRing {
        FusionRing {
            param: param.clone(),
            cap: param.cap(),
        }
    }

    /// N((a, b) → c) ∈ {0, 1}.
    pub fn coefficient(&self, a: FusionLabel, b: FusionLabel, c: FusionLabel) -> u8 {
        u8::from(fuse(a, b, self.cap).labels.contains(&c))
    }
}

/// Result of one fusion product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fused {
    pub labels: Vec<FusionLabel>,
    /// true when the truncation removed terms the untruncated rule would keep
    pub capped: bool,
}

/// (k,i) ⊗ (l,j) = ⊕ (k+l, m) for m = |i−j|, |i−j|+2, … up to
/// min(i+j, 2(k+l) − (i+j), 2·cap − (i+j)).
pub fn fuse(a: FusionLabel, b: FusionLabel, cap: Option<usize>) -> Fused {
    let k = a.k + b.k;
    let s = a.i + b.i;
    let lo = a.i.abs_diff(b.i);
    let plain = s.min(2 * k - s);
    let hi = match cap {
        Some(c) if 2 * c < s => None,
        Some(c) => Some(plain.min(2 * c - s)),
        None => Some(plain),
    };
    let labels: Vec<_> = match hi {
        Some(hi) if hi >= lo => (lo..=hi).step_by(2).map(|i| FusionLabel { k, i }).collect(),
        _ => Vec::new(),
    };
    let untruncated = if plain >= lo { (plain - lo) / 2 + 1 } else { 0 };
    Fused {
        capped: labels.len() < untruncated,
        labels,
    }
}

/// All valid labels with k ≤ bound.
pub fn labels(param: &Param, bound: usize) -> Vec<FusionLabel> {
    (0..=bound)
        .flat_map(|k| {
            let top = param.cap().map_or(k, |c| c.min(k));
            (0..=top).map(move |i| FusionLabel { k, i })
        })
        .collect()
}

/// d^i·P_i(τ), the quantum dimension of H_{k,i}.
pub fn qdim(i: usize, param: &Param) -> Result<Scalar> {
    if let Some(cap) = param.cap() {
        if i > cap {
            return Err(Error::IndexOutOfRange { index: i, range: format!("0..={cap}") });
        }
    }
    Ok(quantum_dim(param, i))
}

/// D^k·tr(p) for a projection p ∈ M_k.
pub fn dim_bimodule(p: &AlgElem) -> Result<Scalar> {
    check_projection(p)?;
    Ok(&p.param().power(p.shape().0 as i64) * &p.trace()?)
}

fn multiset(v: impl IntoIterator<Item = FusionLabel>) -> BTreeMap<FusionLabel, usize> {
    let mut out = BTreeMap::new();
    for x in v {
        *out.entry(x).or_insert(0) += 1;
    }
    out
}

fn fuse_all(xs: &BTreeMap<FusionLabel, usize>, b: FusionLabel, cap: Option<usize>) -> BTreeMap<FusionLabel, usize> {
    let mut out = BTreeMap::new();
    for (&a, &n) in xs {
        for c in fuse(a, b, cap).labels {
            *out.entry(c).or_insert(0) += n;
        }
    }
    out
}

/// Commutativity, associativity, multiplicity-freeness, the qdim homomorphism
/// and the path-graph action of (1,1), over all labels with k ≤ bound.
pub fn verify_fusion_ring(param: &Param, bound: usize) -> Result<Report> {
    let ring = FusionRing::new(param);
    let cap = ring.cap;
    let all = labels(param, bound);
    let qd: Vec<Scalar> = (0..=cap.unwrap_or(2 * bound).min(2 * bound))
        .map(|i| qdim(i, param))
        .collect::<Result<_>>()?;
    let mut rep = Report::default();
    let (mut comm, mut free, mut hom, mut assoc) = (true, true, true, true);
    for &a in &all {
        for &b in &all {
            let ab = fuse(a, b, cap);
            comm &= ab == fuse(b, a, cap);
            free &= multiset(ab.labels.iter().copied()).values().all(|&n| n == 1);
            let sum = ab.labels.iter().fold(Scalar::zero(), |acc, c| &acc + &qd[c.i]);
            hom &= sum == &qd[a.i] * &qd[b.i];
            for &c in &all {
                let left = fuse_all(&multiset(ab.labels.iter().copied()), c, cap);
                let bc = multiset(fuse(b, c, cap).labels);
                let mut right = BTreeMap::new();
                for (&x, &n) in &bc {
                    for y in fuse(a, x, cap).labels {
                        *right.entry(y).or_insert(0) += n;
                    }
                }
                assoc &= left == right;
            }
        }
    }
    let label = format!("labels k <= {bound} at {param}");
    rep.push(format!("commutative ({label})"), comm);
    rep.push(format!("associative ({label})"), assoc);
    rep.push(format!("multiplicity free ({label})"), free);
    rep.push(format!("qdim is a ring homomorphism ({label})"), hom);
    if cap != Some(0) {
        let one = FusionLabel { k: 1, i: 1 };
        let path = all.iter().all(|&a| {
            let got: Vec<usize> = fuse(a, one, cap).labels.iter().map(|c| c.i).collect();
            let want: Vec<usize> = [a.i.checked_sub(1), Some(a.i + 1)]
                .into_iter()
                .flatten()
                .filter(|&j| cap.is_none_or(|c| j <= c))
                .collect();
            got == want
        });
        rep.push(format!("(1,1) acts by the path graph adjacency ({label})"), path);
    }
    Ok(rep)
}

/// w = g_i | ((p_1⋯p_{k−i} | g_1)·r_{k−i}⋯r_1) | p_1⋯p_{l−1} in M_{k+l}.
pub fn partial_isometry(k: usize, i: usize, l: usize, param: &Param) -> Result<AlgElem> {
    if i > k || l == 0 {
        return Err(Error::IndexOutOfRange { index: i, range: format!("0..={k} with l >= 1") });
    }
    let n = k - i + 1;
    let head = all_isolated(param, k - i).juxtapose(&jw(1, param)?);
    let rs: Vec<AlgElem> = (1..n).rev().map(|j| generator(param, Generator::R, n, j)).collect::<Result<_>>()?;
    let middle = product(n, param, std::iter::once(&head).chain(&rs))?;
    Ok(jw(i, param)?.juxtapose(&middle).juxtapose(&all_isolated(param, l - 1)))
}

/// The decomposition H_{1,1} ⊗ H_{1,1} = H_{2,2} ⊕ H_{2,0} at the level of
/// projections, and the general partial isometries for k + l ≤ 4, all modulo
/// the radical of the trace on M_{k+l}.
pub fn verify_fusion_witness(param: &Param) -> Result<Report> {
    let mut rep = Report::default();
    let radical = |n: usize| gram(n, n, param);
    let g1 = jw(1, param)?;
    let g2 = jw(2, param)?;
    let gg = g1.juxtapose(&g1);
    let w1 = gg.try_sub(&g2)?;
    let r2 = radical(2)?;
    let in_rad = |x: &AlgElem| -> Result<bool> { Ok(x.is_zero() || r2.radical_contains(x)?) };
    rep.push(format!("g1|g1 - g2 is a projection ({param})"), w1.star() == w1 && in_rad(&w1.multiply(&w1)?.try_sub(&w1)?)?);
    rep.push(format!("g2 and g1|g1 - g2 are orthogonal ({param})"), in_rad(&g2.multiply(&w1)?)?);

    let p1 = generator(param, Generator::P, 2, 1)?;
    let e1 = generator(param, Generator::E, 2, 1)?;
    let scale = param.d().sqrt()?.inv()?;
    let w = product(2, param, [&p1, &e1, &gg])?.scale(&scale);
    let q20 = minimal_projection(2, 0, param)?;
    rep.push(format!("w w* = q_(2,0) ({param})"), in_rad(&w.multiply(&w.star())?.try_sub(&q20)?)?);
    rep.push(format!("w* w = g1|g1 - g2 ({param})"), in_rad(&w.star().multiply(&w)?.try_sub(&w1)?)?);

    let cap = param.cap().unwrap_or(usize::MAX);
    for (k, i, l) in [(2, 1, 1), (2, 0, 1), (1, 0, 1), (2, 1, 2), (3, 1, 1), (2, 2, 1)] {
        if i + 1 > cap || i > cap {
            continue;
        }
        let n = k + l;
        let w = partial_isometry(k, i, l, param)?;
        let rad = radical(n)?;
        let rc = |x: &AlgElem| -> Result<bool> { Ok(x.is_zero() || rad.radical_contains(x)?) };
        let left = minimal_projection(k, i, param)?.juxtapose(&minimal_projection(l, 1, param)?);
        let right = jw(i, param)?
            .juxtapose(&g1)
            .juxtapose(&all_isolated(param, n - i - 1));
        let ok = rc(&w.multiply(&w.star())?.try_sub(&left)?)? && rc(&w.star().multiply(&w)?.try_sub(&right)?)?;
        rep.push(format!("partial isometry k={k}, i={i}, l={l} ({param})"), ok);
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lab(k: usize, i: usize) -> FusionLabel {
        FusionLabel { k, i }
    }

    #[test]
    fn fusion_examples() {
        assert_eq!(fuse(lab(2, 1), lab(1, 1), None).labels, vec![lab(3, 0), lab(3, 2)]);
        assert_eq!(fuse(lab(1, 1), lab(1, 1), Some(1)).labels, vec![lab(2, 0)]);
        assert!(fuse(lab(1, 1), lab(1, 1), Some(1)).capped);
        assert_eq!(fuse(lab(2, 0), lab(3, 2), Some(3)).labels, vec![lab(5, 2)]);
    }

    #[test]
    fn quantum_dims() {
        let s: Param = "cos:4".parse().unwrap();
        assert!(qdim(2, &s).unwrap().is_one());
        assert!(qdim(3, &s).is_err());
        let four: Param = "4".parse().unwrap();
        assert_eq!(qdim(1, &four).unwrap(), Scalar::from_int(3));
        let id = AlgElem::identity(&four, 2);
        assert_eq!(dim_bimodule(&id).unwrap(), Scalar::from_int(16));
    }

    #[test]
    fn ring_axioms() {
        for p in ["cos:3", "cos:4", "cos:5", "cos:6", "4"] {
            let param: Param = p.parse().unwrap();
            let rep = verify_fusion_ring(&param, 4).unwrap();
            assert!(rep.passed(), "{p}: {:?}", rep.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn witness() {
        for p in ["cos:4", "cos:5", "4"] {
            let param: Param = p.parse().unwrap();
            let rep = verify_fusion_witness(&param).unwrap();
            assert!(rep.passed(), "{p}: {:?}", rep.failures().collect::<Vec<_>>());
        }
    }
}
