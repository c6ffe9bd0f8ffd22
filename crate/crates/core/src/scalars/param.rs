use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::field::{Field, Scalar, Q};
use super::chebyshev;
use crate::error::{Error, Result};

/// The loop value D as a user states it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum LoopParam {
    Rational(Q),
    /// D = 1 + 2cos(π/ν).
    RootOfUnity(u32),
}

struct Inner {
    kind: LoopParam,
    field: Option<Arc<Field>>,
    big_d: Scalar,
    d: Scalar,
    tau: Scalar,
    powers: OnceLock<Vec<Scalar>>,
}

/// A validated loop parameter together with its coefficient field and the
/// derived values d = D − 1 and τ = 1/d². Cheap to clone.
#[derive(Clone)]
pub struct Param(Arc<Inner>);

const POWER_CACHE: usize = 64;

impl Param {
    pub fn new(kind: LoopParam) -> Result<Param> {
        let kind = match kind {
            // 2 = 1 + 2cos(π/3): treat it as the ν = 3 root of unity.
            LoopParam::Rational(r) if r == Q::from_integer(BigInt::from(2)) => LoopParam::RootOfUnity(3),
            other => other,
        };
        let (field, big_d) = match &kind {
            LoopParam::Rational(r) => {
                if r.is_one() {
                    return Err(Error::DomainError("D = 1 leaves tau undefined".into()));
                }
                (None, Scalar::Rat(r.clone()))
            }
            LoopParam::RootOfUnity(nu) => {
                if *nu < 3 {
                    return Err(Error::DomainError(format!("root-of-unity index {nu} < 3")));
                }
                if *nu == 3 {
                    (None, Scalar::from_int(2))
                } else {
                    let f = Field::real_cyclotomic(*nu);
                    let c = Scalar::generator(&f);
                    (Some(f), &c + &Scalar::one())
                }
            }
        };
        Ok(Self::assemble(kind, field, big_d))
    }

    fn assemble(kind: LoopParam, field: Option<Arc<Field>>, big_d: Scalar) -> Param {
        let d = &big_d - &Scalar::one();
        let tau = (&d * &d).inv().expect("d is nonzero");
        Param(Arc::new(Inner {
            kind,
            field,
            big_d,
            d,
            tau,
            powers: OnceLock::new(),
        }))
    }

    pub fn rational(n: i64, den: i64) -> Result<Param> {
        Param::new(LoopParam::Rational(Q::new(BigInt::from(n), BigInt::from(den))))
    }

    pub fn root_of_unity(nu: u32) -> Result<Param> {
        Param::new(LoopParam::RootOfUnity(nu))
    }

    /// The same loop value over a larger field, e.g. after adjoining √(D−1).
    pub fn over_field(&self, field: Arc<Field>) -> Param {
        let big_d = Scalar::from_coords(Some(field.clone()), self.0.big_d.coords_in(&field));
        Self::assemble(self.0.kind.clone(), Some(field), big_d)
    }

    pub fn kind(&self) -> &LoopParam {
        &self.0.kind
    }

    pub fn field(&self) -> Option<&Arc<Field>> {
        self.0.field.as_ref()
    }

    /// D
    pub fn loop_value(&self) -> &Scalar {
        &self.0.big_d
    }

    /// d = D − 1
    pub fn d(&self) -> &Scalar {
        &self.0.d
    }

    /// τ = 1/d²
    pub fn tau(&self) -> &Scalar {
        &self.0.tau
    }

    /// ν when D = 1 + 2cos(π/ν).
    pub fn nu(&self) -> Option<u32> {
        match self.0.kind {
            LoopParam::RootOfUnity(nu) => Some(nu),
            LoopParam::Rational(_) => None,
        }
    }

    /// Largest label index i with nonzero quantum dimension: ν − 2 at a root of unity.
    pub fn cap(&self) -> Option<usize> {
        self.nu().map(|nu| nu as usize - 2)
    }

    /// D ≤ 1 is accepted for algebraic experiments but flagged non-positive.
    pub fn is_positive(&self) -> bool {
        self.0.d.is_positive()
    }

    /// D^e for any integer e, cached for small nonnegative exponents.
    pub fn power(&self, e: i64) -> Scalar {
        if (0..POWER_CACHE as i64).contains(&e) {
            let cache = self.0.powers.get_or_init(|| {
                let mut v = Vec::with_capacity(POWER_CACHE);
                let mut acc = Scalar::one();
                for _ in 0..POWER_CACHE {
                    v.push(acc.clone());
                    acc = &acc * &self.0.big_d;
                }
                v
            });
            return cache[e as usize].clone();
        }
        self.0.big_d.pow(e).expect("D is nonzero for negative powers")
    }

    /// P_k(τ)
    pub fn cheb(&self, k: usize) -> Scalar {
        chebyshev(k, &self.0.tau)
    }

    /// The generator 2cos(π/ν) as a field element (1 at ν = 3).
    pub fn cos_generator(&self) -> Option<Scalar> {
        match (self.nu(), &self.0.field) {
            (Some(3), _) => Some(Scalar::one()),
            (Some(_), Some(f)) => Some(Scalar::generator(f)),
            _ => None,
        }
    }
}

impl PartialEq for Param {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.kind == other.0.kind && self.0.field == other.0.field)
    }
}

impl fmt::Debug for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Param({self})")
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0.kind {
            LoopParam::Rational(r) => write!(f, "D={}", Scalar::Rat(r.clone())),
            LoopParam::RootOfUnity(3) => write!(f, "D=2"),
            LoopParam::RootOfUnity(nu) => write!(f, "D=cos:{nu}"),
        }
    }
}

impl FromStr for Param {
    type Err = Error;

    /// Accepts `4`, `7/2`, `cos:5`, optionally prefixed with `D=`.
    fn from_str(s: &str) -> Result<Param> {
        let s = s.trim();
        let s = s.strip_prefix("D=").unwrap_or(s).trim();
        if let Some(nu) = s.strip_prefix("cos:") {
            let nu: u32 = nu
                .trim()
                .parse()
                .map_err(|_| Error::parse(format!("bad root-of-unity index {nu:?}")))?;
            return Param::root_of_unity(nu);
        }
        Param::new(LoopParam::Rational(parse_rational(s)?))
    }
}

/// Parse `p`, `p/q` or a terminating decimal into an exact rational.
pub fn parse_rational(s: &str) -> Result<Q> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| Error::parse(format!("bad numerator {n:?}")))?;
        let d: BigInt = d.trim().parse().map_err(|_| Error::parse(format!("bad denominator {d:?}")))?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        return Ok(Q::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let digits = format!("{int}{frac}");
        let n: BigInt = digits.parse().map_err(|_| Error::parse(format!("bad number {s:?}")))?;
        let d = num_traits::pow(BigInt::from(10), frac.len());
        return Ok(Q::new(n, d));
    }
    let n: BigInt = s.parse().map_err(|_| Error::parse(format!("bad number {s:?}")))?;
    Ok(Q::from_integer(n))
}
