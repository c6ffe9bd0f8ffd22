//! The diagram algebras M_n(D) and the tangle spaces M(m, n).

mod elem;
mod gram;
mod word;

pub use elem::{glue_elems, pairing, AlgElem};
pub use gram::{gram, gram_of, GramForm, EXACT_RANK_LIMIT};
pub use word::parse_word;

use crate::error::Result;
use crate::scalars::Param;
use crate::tangles::{Generator, Tangle};

/// A named generator of M_n as an algebra element.
pub fn generator(param: &Param, kind: Generator, n: usize, i: usize) -> Result<AlgElem> {
    Ok(AlgElem::from_tangle(param, Tangle::generator(kind, n, i)?))
}

/// Product of a list of same-size elements, left to right.
pub fn product<'a>(n: usize, param: &Param, factors: impl IntoIterator<Item = &'a AlgElem>) -> Result<AlgElem> {
    factors
        .into_iter()
        .try_fold(AlgElem::identity(param, n), |acc, f| acc.multiply(f))
}

/// The all-isolated n-diagram p_1⋯p_n.
pub fn all_isolated(param: &Param, n: usize) -> AlgElem {
    let t = Tangle::from_partners(n, n, vec![crate::tangles::ISO; 2 * n]).expect("isolated points are planar");
    AlgElem::from_tangle(param, t)
}
