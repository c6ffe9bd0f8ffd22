use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::scalars::{Param, Scalar};
use crate::tangles::{glue, Seam, Slot, Tangle};

/// A finite linear combination of same-shape tangles.
#[derive(Clone, PartialEq)]
pub struct AlgElem {
    param: Param,
    shape: (usize, usize),
    terms: BTreeMap<Tangle, Scalar>,
}

/// Products with more term pairs than this are split across threads.
const PARALLEL_PAIRS: usize = 4096;

impl AlgElem {
    pub fn zero(param: &Param, shape: (usize, usize)) -> AlgElem {
        AlgElem {
            param: param.clone(),
            shape,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_tangle(param: &Param, t: Tangle) -> AlgElem {
        AlgElem::from_term(param, t, Scalar::one())
    }

    pub fn from_term(param: &Param, t: Tangle, c: Scalar) -> AlgElem {
        let mut x = AlgElem::zero(param, t.shape());
        x.add_term(t, c);
        x
    }

    /// Builds from (tangle, coefficient) pairs, which must all have `shape`.
    pub fn from_terms(
        param: &Param,
        shape: (usize, usize),
        terms: impl IntoIterator<Item = (Tangle, Scalar)>,
    ) -> Result<AlgElem> {
        let mut x = AlgElem::zero(param, shape);
        for (t, c) in terms {
            if t.shape() != shape {
                return Err(Error::shape(fmt_shape(shape), fmt_shape(t.shape())));
            }
            x.add_term(t, c);
        }
        Ok(x)
    }

    pub fn identity(param: &Param, n: usize) -> AlgElem {
        AlgElem::from_tangle(param, Tangle::identity(n))
    }

    pub fn scalar(param: &Param, n: usize, c: Scalar) -> AlgElem {
        AlgElem::from_term(param, Tangle::identity(n), c)
    }

    pub fn param(&self) -> &Param {
        &self.param
    }

    pub fn shape(&self) -> (usize, usize) {
        self.shape
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Tangle, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, t: &Tangle) -> Scalar {
        self.terms.get(t).cloned().unwrap_or_else(Scalar::zero)
    }

    pub(crate) fn add_term(&mut self, t: Tangle, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(t) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check_same(&self, other: &AlgElem) -> Result<()> {
        if self.shape != other.shape {
            return Err(Error::shape(fmt_shape(self.shape), fmt_shape(other.shape)));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &AlgElem) -> Result<AlgElem> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (t, c) in &other.terms {
            out.add_term(t.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &AlgElem) -> Result<AlgElem> {
        self.try_add(&-other)
    }

    pub fn scale(&self, c: &Scalar) -> AlgElem {
        let mut out = AlgElem::zero(&self.param, self.shape);
        if c.is_zero() {
            return out;
        }
        out.terms = self.terms.iter().map(|(t, a)| (t.clone(), a * c)).collect();
        out
    }

    /// Keeps only the terms whose tangle satisfies `keep`.
    pub fn filter(&self, keep: impl Fn(&Tangle) -> bool) -> AlgElem {
        AlgElem {
            param: self.param.clone(),
            shape: self.shape,
            terms: self.terms.iter().filter(|(t, _)| keep(t)).map(|(t, c)| (t.clone(), c.clone())).collect(),
        }
    }

    /// The product `self · other` (self on top).
    pub fn multiply(&self, other: &AlgElem) -> Result<AlgElem> {
        if self.shape.1 != other.shape.0 {
            return Err(Error::shape(
                format!("({}, _)", self.shape.1),
                fmt_shape(other.shape),
            ));
        }
        let seam = Seam::stack(self.shape, other.shape)?;
        let out_shape = (self.shape.0, other.shape.1);
        Ok(self.combine(other, &seam, out_shape))
    }

    /// Bilinear extension of a glue along `seam`, each picture weighted by D^loops.
    pub(crate) fn combine(&self, other: &AlgElem, seam: &Seam, out_shape: (usize, usize)) -> AlgElem {
        let param = &self.param;
        let left: Vec<_> = self.terms.iter().collect();
        let fold_one = |mut acc: HashMap<Tangle, Scalar>, (s, a): (&Tangle, &Scalar)| {
            for (t, b) in &other.terms {
                let (z, loops) = crate::tangles::glue_raw(s, t, seam);
                let c = &(a * b) * &param.power(loops as i64);
                match acc.entry(z) {
                    std::collections::hash_map::Entry::Vacant(v) => {
                        v.insert(c);
                    }
                    std::collections::hash_map::Entry::Occupied(mut o) => {
                        let sum = o.get() + &c;
                        *o.get_mut() = sum;
                    }
                }
            }
            acc
        };
        let acc: HashMap<Tangle, Scalar> = if left.len() * other.len() > PARALLEL_PAIRS && left.len() > 1 {
            left.par_iter()
                .map(|&(s, a)| fold_one(HashMap::new(), (s, a)))
                .reduce(HashMap::new, merge)
        } else {
            left.iter().map(|&(s, a)| (s, a)).fold(HashMap::new(), fold_one)
        };
        AlgElem {
            param: param.clone(),
            shape: out_shape,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    /// Termwise adjoint (all coefficients are real).
    pub fn star(&self) -> AlgElem {
        AlgElem {
            param: self.param.clone(),
            shape: (self.shape.1, self.shape.0),
            terms: self.terms.iter().map(|(t, c)| (t.adjoint(), c.clone())).collect(),
        }
    }

    /// Side-by-side placement, self on the left.
    pub fn juxtapose(&self, other: &AlgElem) -> AlgElem {
        let mut out = AlgElem::zero(&self.param, (self.shape.0 + other.shape.0, self.shape.1 + other.shape.1));
        for (s, a) in &self.terms {
            for (t, b) in &other.terms {
                out.add_term(s.juxtapose(t), a * b);
            }
        }
        out
    }

    /// x ↦ x | 1_t.
    pub fn embed(&self, t: usize) -> AlgElem {
        let id = Tangle::identity(t);
        AlgElem {
            param: self.param.clone(),
            shape: (self.shape.0 + t, self.shape.1 + t),
            terms: self.terms.iter().map(|(s, c)| (s.juxtapose(&id), c.clone())).collect(),
        }
    }

    fn check_square(&self) -> Result<usize> {
        if self.shape.0 != self.shape.1 {
            return Err(Error::shape("square", fmt_shape(self.shape)));
        }
        Ok(self.shape.0)
    }

    /// Normalized trace tr_n, with tr(1_n) = 1.
    pub fn trace(&self) -> Result<Scalar> {
        let n = self.check_square()?;
        let seam = Seam::closure((n, n));
        let id = Tangle::identity(n);
        let mut sum = Scalar::zero();
        for (t, c) in &self.terms {
            let loops = crate::tangles::loops_raw(t, &id, &seam);
            sum = &sum + &(c * &self.param.power(loops as i64 - n as i64));
        }
        Ok(sum)
    }

    /// Conditional expectation M_n → M_{n−1}: close T_n to B_n and divide by D.
    pub fn cond_expect(&self) -> Result<AlgElem> {
        let n = self.check_square()?;
        if n == 0 {
            return Err(Error::shape("(n, n) with n >= 1", "(0, 0)"));
        }
        let cap = Tangle::from_partners_unchecked(2, 0, vec![1, 0]);
        let pairs = [(n - 1, 0), (2 * n - 1, 1)];
        let top: Vec<_> = (0..n - 1).map(Slot::X).collect();
        let bottom: Vec<_> = (0..n - 1).map(|j| Slot::X(n + j)).collect();
        let seam = Seam::new((n, n), (2, 0), &pairs, &top, &bottom)?;
        let cap = AlgElem::from_tangle(&self.param, cap);
        let closed = self.combine(&cap, &seam, (n - 1, n - 1));
        Ok(closed.scale(&self.param.power(-1)))
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(t, c)| json!({"coeff": c.to_json(), "tangle": t.to_json()}))
            .collect();
        json!({
            "param": self.param.to_string(),
            "top": self.shape.0,
            "bottom": self.shape.1,
            "terms": terms,
        })
    }
}

fn merge(mut a: HashMap<Tangle, Scalar>, b: HashMap<Tangle, Scalar>) -> HashMap<Tangle, Scalar> {
    if a.len() < b.len() {
        return merge(b, a);
    }
    for (t, c) in b {
        match a.entry(t) {
            std::collections::hash_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::hash_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                *o.get_mut() = sum;
            }
        }
    }
    a
}

pub(crate) fn fmt_shape(s: (usize, usize)) -> String {
    format!("({}, {})", s.0, s.1)
}

/// tr(y*·x), the trace pairing on a tangle space of any shape (normalized by
/// the bottom count).
pub fn pairing(x: &AlgElem, y: &AlgElem) -> Result<Scalar> {
    x.check_same(y)?;
    let seam = Seam::closure(x.shape);
    let n = x.shape.1 as i64;
    let mut sum = Scalar::zero();
    for (s, a) in &x.terms {
        for (t, b) in &y.terms {
            let loops = crate::tangles::loops_raw(s, t, &seam) as i64;
            sum = &sum + &(&(a * b) * &x.param.power(loops - n));
        }
    }
    Ok(sum)
}

/// Glue along an arbitrary seam, with D^loops weights. Exposed for the bimodule code.
pub fn glue_elems(x: &AlgElem, y: &AlgElem, seam: &Seam) -> Result<AlgElem> {
    let (xs, ys) = seam.input_shapes();
    if xs != x.shape || ys != y.shape {
        return Err(Error::SeamMismatch(format!(
            "seam expects {:?} and {:?}, got {:?} and {:?}",
            xs, ys, x.shape, y.shape
        )));
    }
    // validate once on any term pair
    if let (Some(s), Some(t)) = (x.terms.keys().next(), y.terms.keys().next()) {
        glue(s, t, seam)?;
    }
    Ok(x.combine(y, seam, seam.output_shape()))
}

impl fmt::Display for AlgElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (t, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if c.is_one() {
                write!(f, "[{t}]")?;
            } else {
                write!(f, "({c})[{t}]")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for AlgElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgElem{}{{{self}}}", fmt_shape(self.shape))
    }
}

impl Add for &AlgElem {
    type Output = AlgElem;
    fn add(self, rhs: &AlgElem) -> AlgElem {
        self.try_add(rhs).expect("adding elements of different shapes")
    }
}

impl Sub for &AlgElem {
    type Output = AlgElem;
    fn sub(self, rhs: &AlgElem) -> AlgElem {
        self.try_sub(rhs).expect("subtracting elements of different shapes")
    }
}

impl Mul for &AlgElem {
    type Output = AlgElem;
    fn mul(self, rhs: &AlgElem) -> AlgElem {
        self.multiply(rhs).expect("multiplying elements of incompatible shapes")
    }
}

impl Neg for &AlgElem {
    type Output = AlgElem;
    fn neg(self) -> AlgElem {
        self.scale(&Scalar::from_int(-1))
    }
}
