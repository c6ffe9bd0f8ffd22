//! Exact scalars: rationals, the real cyclotomic fields Q(2cos(π/ν)), and
//! quadratic extensions of either.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::minimal_polynomial;
use crate::error::{Error, Result};

pub type Q = BigRational;

pub(crate) fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// A number field of one of the shapes Q(c), Q(√r) or Q(c)(√r), where
/// c = 2cos(π/ν) and r lies in the base.
pub struct Field {
    nu: Option<u32>,
    /// Monic minimal polynomial of c, lowest degree first; `[0, 1]` when the base is Q.
    modulus: Vec<Q>,
    radicand: Option<Vec<Q>>,
    /// Rational interval isolating c among the roots of `modulus`.
    bracket: Mutex<(Q, Q)>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("nu", &self.nu)
            .field("radicand", &self.radicand.as_ref().map(|r| fmt_base(r, self.nu.is_some())))
            .finish()
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self, other) || (self.nu == other.nu && self.radicand == other.radicand)
    }
}

impl Eq for Field {}

impl Field {
    /// Q(2cos(π/ν)). For ν = 3 this is Q itself and callers should stay with rationals.
    pub fn real_cyclotomic(nu: u32) -> Arc<Field> {
        let modulus: Vec<Q> = minimal_polynomial(nu).into_iter().map(Q::from_integer).collect();
        let c0 = 2.0 * (std::f64::consts::PI / nu as f64).cos();
        let bracket = isolate(&modulus, c0);
        Arc::new(Field {
            nu: Some(nu),
            modulus,
            radicand: None,
            bracket: Mutex::new(bracket),
        })
    }

    /// Quadratic extension of Q by √r, r a positive non-square rational.
    pub fn quadratic(r: &Q) -> Arc<Field> {
        Arc::new(Field {
            nu: None,
            modulus: vec![Q::zero(), Q::one()],
            radicand: Some(vec![r.clone()]),
            bracket: Mutex::new((Q::zero(), Q::zero())),
        })
    }

    /// Quadratic extension of this (radicand-free) field by √r.
    fn extend(self: &Arc<Self>, r: Vec<Q>) -> Arc<Field> {
        assert!(self.radicand.is_none(), "towers of quadratic extensions are not supported");
        let bracket = self.bracket.lock().unwrap().clone();
        Arc::new(Field {
            nu: self.nu,
            modulus: self.modulus.clone(),
            radicand: Some(r),
            bracket: Mutex::new(bracket),
        })
    }

    pub fn nu(&self) -> Option<u32> {
        self.nu
    }

    pub fn modulus(&self) -> &[Q] {
        &self.modulus
    }

    /// Degree of the base field over Q.
    pub fn base_degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn radicand(&self) -> Option<Scalar> {
        let base = self.base_field();
        self.radicand.as_ref().map(|r| Scalar::from_coords(base, r.clone()))
    }

    fn dim(&self) -> usize {
        self.base_degree() * if self.radicand.is_some() { 2 } else { 1 }
    }

    /// The field with the quadratic layer stripped, or `None` when that is Q.
    pub fn base_field(&self) -> Option<Arc<Field>> {
        self.nu.filter(|_| self.base_degree() > 1).map(|nu| {
            let bracket = self.bracket.lock().unwrap().clone();
            Arc::new(Field {
                nu: Some(nu),
                modulus: self.modulus.clone(),
                radicand: None,
                bracket: Mutex::new(bracket),
            })
        })
    }

    /// True if elements of `other` embed into `self` by zero padding.
    fn contains(&self, other: &Field) -> bool {
        self == other
            || (other.radicand.is_none() && self.nu == other.nu && self.base_degree() == other.base_degree())
    }

    fn lift(&self, from: &Field, coords: &[Q]) -> Vec<Q> {
        if self == from {
            return coords.to_vec();
        }
        let mut out = coords.to_vec();
        out.resize(self.dim(), Q::zero());
        out
    }

    /// Current isolating interval for c (refined on demand).
    pub fn c_bracket(&self) -> (Q, Q) {
        self.bracket.lock().unwrap().clone()
    }

    fn refine(&self, rounds: usize) {
        let mut guard = self.bracket.lock().unwrap();
        let (mut lo, mut hi) = guard.clone();
        let s_lo = eval_q(&self.modulus, &lo).signum();
        for _ in 0..rounds {
            let mid = (&lo + &hi) / q(2);
            let s = eval_q(&self.modulus, &mid).signum();
            if s.is_zero() {
                lo = mid.clone();
                hi = mid;
                break;
            }
            if s == s_lo {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        *guard = (lo, hi);
    }
}

fn eval_q(p: &[Q], x: &Q) -> Q {
    let mut acc = Q::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// Rational interval around the float estimate `c0` on which `modulus` changes sign.
fn isolate(modulus: &[Q], c0: f64) -> (Q, Q) {
    let mut eps = 1e-12;
    loop {
        let lo = Q::from_float(c0 - eps).expect("finite");
        let hi = Q::from_float(c0 + eps).expect("finite");
        let a = eval_q(modulus, &lo);
        let b = eval_q(modulus, &hi);
        if a.is_zero() {
            return (lo.clone(), lo);
        }
        if b.is_zero() {
            return (hi.clone(), hi);
        }
        if a.signum() != b.signum() {
            return (lo, hi);
        }
        eps *= 16.0;
        assert!(eps < 1e-3, "could not isolate 2cos(pi/nu)");
    }
}

// ---------------------------------------------------------------------------
// base-field arithmetic on coefficient slices

fn base_mul(modulus: &[Q], a: &[Q], b: &[Q]) -> Vec<Q> {
    let deg = modulus.len() - 1;
    if deg == 1 {
        return vec![&a[0] * &b[0]];
    }
    let mut prod = vec![Q::zero(); 2 * deg - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                prod[i + j] += x * y;
            }
        }
    }
    for k in (deg..prod.len()).rev() {
        let c = std::mem::replace(&mut prod[k], Q::zero());
        if c.is_zero() {
            continue;
        }
        for (j, m) in modulus[..deg].iter().enumerate() {
            prod[k - deg + j] -= &c * m;
        }
    }
    prod.truncate(deg);
    prod
}

fn base_inv(modulus: &[Q], a: &[Q]) -> Option<Vec<Q>> {
    let deg = modulus.len() - 1;
    if a.iter().all(Zero::is_zero) {
        return None;
    }
    if deg == 1 {
        return Some(vec![a[0].recip()]);
    }
    // Solve (multiplication-by-a matrix) x = e_0.
    let mut cols: Vec<Vec<Q>> = Vec::with_capacity(deg);
    let mut basis = vec![Q::zero(); deg];
    basis[0] = Q::one();
    let mut x_pow = vec![Q::zero(); deg];
    x_pow[1] = Q::one();
    for _ in 0..deg {
        cols.push(base_mul(modulus, a, &basis));
        basis = base_mul(modulus, &basis, &x_pow);
    }
    let mut m: Vec<Vec<Q>> = (0..deg)
        .map(|i| {
            let mut row: Vec<Q> = (0..deg).map(|j| cols[j][i].clone()).collect();
            row.push(if i == 0 { Q::one() } else { Q::zero() });
            row
        })
        .collect();
    for col in 0..deg {
        let piv = (col..deg).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        let inv = m[col][col].recip();
        for v in m[col].iter_mut() {
            *v *= &inv;
        }
        for r in 0..deg {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..=deg {
                    let t = &f * &m[col][c];
                    m[r][c] -= t;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[deg].clone()).collect())
}

fn interval_mul(a: (&Q, &Q), b: (&Q, &Q)) -> (Q, Q) {
    let cands = [a.0 * b.0, a.0 * b.1, a.1 * b.0, a.1 * b.1];
    let lo = cands.iter().min().unwrap().clone();
    let hi = cands.iter().max().unwrap().clone();
    (lo, hi)
}

/// Sign of a base-field element under c ↦ 2cos(π/ν).
fn base_sign(field: &Field, a: &[Q]) -> Ordering {
    if a.iter().skip(1).all(Zero::is_zero) {
        return a[0].cmp(&Q::zero());
    }
    loop {
        let (lo, hi) = field.c_bracket();
        let mut acc = (Q::zero(), Q::zero());
        for coef in a.iter().rev() {
            let m = interval_mul((&acc.0, &acc.1), (&lo, &hi));
            acc = (m.0 + coef, m.1 + coef);
        }
        if acc.0.is_positive() {
            return Ordering::Greater;
        }
        if acc.1.is_negative() {
            return Ordering::Less;
        }
        if lo == hi {
            // c is rational here, so the element evaluates exactly.
            return acc.0.cmp(&Q::zero());
        }
        field.refine(16);
    }
}

// ---------------------------------------------------------------------------

/// An exact field element. Rational values are always stored as `Rat`, so
/// structural equality is value equality.
#[derive(Clone)]
pub enum Scalar {
    Rat(Q),
    Alg(Arc<Field>, Vec<Q>),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rat(Q::zero())
    }

    pub fn one() -> Self {
        Scalar::Rat(Q::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::Rat(q(n))
    }

    pub fn frac(n: i64, d: i64) -> Self {
        Scalar::Rat(Q::new(BigInt::from(n), BigInt::from(d)))
    }

    /// The generator c = 2cos(π/ν) of a cyclotomic field.
    pub fn generator(field: &Arc<Field>) -> Self {
        let mut coords = vec![Q::zero(); field.dim()];
        if field.base_degree() == 1 {
            // Q: c is the rational root of x − c0
            return Scalar::Rat(-field.modulus[0].clone());
        }
        coords[1] = Q::one();
        Scalar::from_coords(Some(field.clone()), coords)
    }

    /// The square root adjoined by a quadratic field.
    pub fn sqrt_generator(field: &Arc<Field>) -> Self {
        let d = field.base_degree();
        let mut coords = vec![Q::zero(); 2 * d];
        coords[d] = Q::one();
        Scalar::from_coords(Some(field.clone()), coords)
    }

    /// Build from coordinates; `None` field means Q.
    pub fn from_coords(field: Option<Arc<Field>>, coords: Vec<Q>) -> Self {
        match field {
            None => Scalar::Rat(coords.into_iter().next().unwrap_or_else(Q::zero)),
            Some(f) => {
                if coords.iter().skip(1).all(Zero::is_zero) {
                    Scalar::Rat(coords.into_iter().next().unwrap_or_else(Q::zero))
                } else {
                    Scalar::Alg(f, coords)
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Scalar::Rat(r) if r.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Scalar::Rat(r) if r.is_one())
    }

    pub fn as_rational(&self) -> Option<&Q> {
        match self {
            Scalar::Rat(r) => Some(r),
            Scalar::Alg(..) => None,
        }
    }

    pub fn field(&self) -> Option<&Arc<Field>> {
        match self {
            Scalar::Rat(_) => None,
            Scalar::Alg(f, _) => Some(f),
        }
    }

    /// Coordinates in `field` (the field must contain this value).
    pub fn coords_in(&self, field: &Field) -> Vec<Q> {
        match self {
            Scalar::Rat(r) => {
                let mut v = vec![Q::zero(); field.dim()];
                v[0] = r.clone();
                v
            }
            Scalar::Alg(f, c) => {
                assert!(field.contains(f), "scalar does not live in the requested field");
                field.lift(f, c)
            }
        }
    }

    fn binary(&self, other: &Scalar, op: impl Fn(&Arc<Field>, &[Q], &[Q]) -> Vec<Q>) -> Scalar {
        let field = match (self, other) {
            (Scalar::Alg(f, _), Scalar::Alg(g, _)) => {
                if f.contains(g) {
                    f.clone()
                } else if g.contains(f) {
                    g.clone()
                } else {
                    panic!("scalars from different fields: {f:?} vs {g:?}")
                }
            }
            (Scalar::Alg(f, _), _) | (_, Scalar::Alg(f, _)) => f.clone(),
            _ => unreachable!(),
        };
        let a = self.coords_in(&field);
        let b = other.coords_in(&field);
        let out = op(&field, &a, &b);
        Scalar::from_coords(Some(field), out)
    }

    pub fn inv(&self) -> Result<Scalar> {
        match self {
            Scalar::Rat(r) => {
                if r.is_zero() {
                    Err(Error::DivisionByZero)
                } else {
                    Ok(Scalar::Rat(r.recip()))
                }
            }
            Scalar::Alg(f, c) => {
                let d = f.base_degree();
                let out = match &f.radicand {
                    None => base_inv(&f.modulus, c).ok_or(Error::DivisionByZero)?,
                    Some(r) => {
                        // (a + b s)^{-1} = (a − b s) / (a² − b² r)
                        let (a, b) = c.split_at(d);
                        let a2 = base_mul(&f.modulus, a, a);
                        let b2 = base_mul(&f.modulus, b, b);
                        let b2r = base_mul(&f.modulus, &b2, r);
                        let norm: Vec<Q> = a2.iter().zip(&b2r).map(|(x, y)| x - y).collect();
                        let ninv = base_inv(&f.modulus, &norm).ok_or(Error::DivisionByZero)?;
                        let mut out = base_mul(&f.modulus, a, &ninv);
                        out.extend(base_mul(&f.modulus, b, &ninv).into_iter().map(|x| -x));
                        out
                    }
                };
                Ok(Scalar::from_coords(Some(f.clone()), out))
            }
        }
    }

    pub fn pow(&self, e: i64) -> Result<Scalar> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Scalar::one();
        let mut sq = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &sq;
            }
            k >>= 1;
            if k > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// Exact sign under the distinguished real embedding (c = 2cos(π/ν), √r > 0).
    pub fn sign(&self) -> Ordering {
        match self {
            Scalar::Rat(r) => r.cmp(&Q::zero()),
            Scalar::Alg(f, c) => match &f.radicand {
                None => base_sign(f, c),
                Some(r) => {
                    let d = f.base_degree();
                    let (a, b) = c.split_at(d);
                    let sa = base_sign(f, a);
                    let sb = base_sign(f, b);
                    if sb == Ordering::Equal {
                        return sa;
                    }
                    if sa == Ordering::Equal || sa == sb {
                        return sb;
                    }
                    let a2 = base_mul(&f.modulus, a, a);
                    let b2 = base_mul(&f.modulus, b, b);
                    let b2r = base_mul(&f.modulus, &b2, r);
                    let t: Vec<Q> = a2.iter().zip(&b2r).map(|(x, y)| x - y).collect();
                    match base_sign(f, &t) {
                        Ordering::Greater => sa,
                        Ordering::Less => sb,
                        Ordering::Equal => panic!("degenerate quadratic extension: radicand is a square"),
                    }
                }
            },
        }
    }

    pub fn is_positive(&self) -> bool {
        self.sign() == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.sign() == Ordering::Less
    }

    /// Square root, adjoining it when needed. Returns the root in either the
    /// current field or a fresh quadratic extension of it.
    pub fn sqrt(&self) -> Result<Scalar> {
        if self.is_negative() {
            return Err(Error::DomainError(format!("square root of negative value {self}")));
        }
        match self {
            Scalar::Rat(r) => {
                if let Some(root) = rational_sqrt(r) {
                    return Ok(Scalar::Rat(root));
                }
                let f = Field::quadratic(r);
                Ok(Scalar::sqrt_generator(&f))
            }
            Scalar::Alg(f, c) => {
                if f.radicand.is_some() {
                    return Err(Error::DomainError(
                        "nested square roots are not supported".into(),
                    ));
                }
                let ext = f.extend(c.clone());
                Ok(Scalar::sqrt_generator(&ext))
            }
        }
    }

    /// Floating-point preview (for display only).
    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Rat(r) => r.to_f64().unwrap_or(f64::NAN),
            Scalar::Alg(f, c) => {
                let cval = f.nu.map(|nu| 2.0 * (std::f64::consts::PI / nu as f64).cos()).unwrap_or(0.0);
                let d = f.base_degree();
                let ev = |coef: &[Q]| -> f64 {
                    if d == 1 {
                        return coef[0].to_f64().unwrap_or(f64::NAN);
                    }
                    coef.iter().rev().fold(0.0, |acc, x| acc * cval + x.to_f64().unwrap_or(f64::NAN))
                };
                match &f.radicand {
                    None => ev(c),
                    Some(r) => ev(&c[..d]) + ev(&c[d..]) * ev(r).sqrt(),
                }
            }
        }
    }

    /// JSON form: `{"num":…,"den":…}` for rationals, `{"poly":[…],"nu":ν}` otherwise.
    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Scalar::Rat(r) => rational_json(r),
            Scalar::Alg(f, c) => {
                let d = f.base_degree();
                let mut obj = serde_json::Map::new();
                obj.insert("poly".into(), c[..d].iter().map(rational_json).collect());
                if let Some(nu) = f.nu {
                    obj.insert("nu".into(), nu.into());
                }
                if let Some(r) = &f.radicand {
                    obj.insert("sqrt_coeff".into(), c[d..].iter().map(rational_json).collect());
                    obj.insert("radicand".into(), r.iter().map(rational_json).collect());
                }
                serde_json::Value::Object(obj)
            }
        }
    }
}

pub(crate) fn rational_json(r: &Q) -> serde_json::Value {
    let num = match r.numer().to_i64() {
        Some(v) => serde_json::Value::from(v),
        None => serde_json::Value::from(r.numer().to_string()),
    };
    let den = match r.denom().to_i64() {
        Some(v) => serde_json::Value::from(v),
        None => serde_json::Value::from(r.denom().to_string()),
    };
    serde_json::json!({ "num": num, "den": den })
}

pub(crate) fn rational_sqrt(r: &Q) -> Option<Q> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    (&n * &n == *r.numer() && &d * &d == *r.denom()).then(|| Q::new(n, d))
}

fn fmt_rat(r: &Q) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn fmt_base(c: &[Q], cyclotomic: bool) -> String {
    if !cyclotomic || c.len() == 1 {
        return fmt_rat(&c[0]);
    }
    let mut parts: Vec<String> = Vec::new();
    for (i, a) in c.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let mag = a.abs();
        let body = match (i, mag.is_one()) {
            (0, _) => fmt_rat(&mag),
            (1, true) => "c".to_string(),
            (1, false) => format!("{}*c", fmt_rat(&mag)),
            (_, true) => format!("c^{i}"),
            (_, false) => format!("{}*c^{i}", fmt_rat(&mag)),
        };
        let sign = if a.is_negative() { "-" } else { "+" };
        if parts.is_empty() {
            parts.push(if a.is_negative() { format!("-{body}") } else { body });
        } else {
            parts.push(format!("{sign} {body}"));
        }
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" ")
    }
}

impl fmt::Display for Scalar {
    /// Rationals print as `p/q`; cyclotomic elements as polynomials in `c` = 2cos(π/ν);
    /// extension elements as `a + (b)*sqrt(r)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => write!(f, "{}", fmt_rat(r)),
            Scalar::Alg(field, c) => {
                let cyc = field.nu.is_some() && field.base_degree() > 1;
                match &field.radicand {
                    None => write!(f, "{}", fmt_base(c, cyc)),
                    Some(r) => {
                        let d = field.base_degree();
                        let a = fmt_base(&c[..d], cyc);
                        let b = fmt_base(&c[d..], cyc);
                        let rr = fmt_base(r, cyc);
                        if c[..d].iter().all(Zero::is_zero) {
                            write!(f, "({b})*sqrt({rr})")
                        } else {
                            write!(f, "{a} + ({b})*sqrt({rr})")
                        }
                    }
                }
            }
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => a == b,
            (Scalar::Alg(f, a), Scalar::Alg(g, b)) => {
                if f == g {
                    a == b
                } else if f.contains(g) {
                    *a == f.lift(g, b)
                } else if g.contains(f) {
                    g.lift(f, a) == *b
                } else {
                    false
                }
            }
            _ => false,
        }
    }
}

impl Eq for Scalar {}

impl Hash for Scalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self {
            Scalar::Rat(r) => r.hash(state),
            Scalar::Alg(_, c) => {
                // Lifting only appends zeros, so hash the trimmed coordinates.
                let end = c.iter().rposition(|x| !x.is_zero()).map_or(0, |i| i + 1);
                c[..end].hash(state)
            }
        }
    }
}

impl From<Q> for Scalar {
    fn from(r: Q) -> Self {
        Scalar::Rat(r)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        if let (Scalar::Rat(a), Scalar::Rat(b)) = (self, rhs) {
            return Scalar::Rat(a + b);
        }
        self.binary(rhs, |_, a, b| a.iter().zip(b).map(|(x, y)| x + y).collect())
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        if let (Scalar::Rat(a), Scalar::Rat(b)) = (self, rhs) {
            return Scalar::Rat(a - b);
        }
        self.binary(rhs, |_, a, b| a.iter().zip(b).map(|(x, y)| x - y).collect())
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Rat(a), Scalar::Alg(f, c)) | (Scalar::Alg(f, c), Scalar::Rat(a)) => {
                if a.is_zero() {
                    Scalar::zero()
                } else {
                    Scalar::Alg(f.clone(), c.iter().map(|x| x * a).collect())
                }
            }
            _ => self.binary(rhs, |f, a, b| {
                let d = f.base_degree();
                match &f.radicand {
                    None => base_mul(&f.modulus, a, b),
                    Some(r) => {
                        let (a0, a1) = a.split_at(d);
                        let (b0, b1) = b.split_at(d);
                        let m = &f.modulus;
                        let s11 = base_mul(m, &base_mul(m, a1, b1), r);
                        let mut out: Vec<Q> =
                            base_mul(m, a0, b0).into_iter().zip(s11).map(|(x, y)| x + y).collect();
                        let cross: Vec<Q> = base_mul(m, a0, b1)
                            .into_iter()
                            .zip(base_mul(m, a1, b0))
                            .map(|(x, y)| x + y)
                            .collect();
                        out.extend(cross);
                        out
                    }
                }
            }),
        }
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    /// Panics on division by zero; use [`Scalar::inv`] for a checked inverse.
    fn div(self, rhs: &'a Scalar) -> Scalar {
        self * &rhs.inv().expect("division by zero")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(r) => Scalar::Rat(-r),
            Scalar::Alg(f, c) => Scalar::Alg(f.clone(), c.iter().map(|x| -x).collect()),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &'a Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);
