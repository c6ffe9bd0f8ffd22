//! Motzkin tangles: planar partial matchings on the boundary of a rectangle.
//!
//! Points are addressed by a raw index: `0..top` are T1..Ttop left to right and
//! `top..top+bottom` are B1..Bbottom left to right. Planarity is checked in the
//! circular order T1..Ttop, Bbottom..B1.

mod count;
mod enumerate;
mod format;
mod glue;

pub use count::{count_motzkin, count_motzkin_recursive, count_paths, count_paths_closed, enumerate_paths, MotzkinPath};
pub use enumerate::{enumerate_tangles, max_points};
pub use format::to_dot;
pub use glue::{glue, glue_loops, Seam, Slot};
pub(crate) use glue::{glue_unchecked as glue_raw, loops_unchecked as loops_raw};

use std::fmt;

use crate::error::{Error, Result};

/// Marks an unmatched point in the partner table.
pub const ISO: u8 = u8::MAX;

/// A boundary point, 1-based as in `T3` or `B1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Point {
    T(usize),
    B(usize),
}

/// The named generators of M_n.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    Id,
    E,
    L,
    R,
    P,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tangle {
    top: u8,
    bottom: u8,
    partner: Box<[u8]>,
}

impl Tangle {
    /// Builds a tangle from a raw partner table, checking symmetry and planarity.
    pub fn from_partners(top: usize, bottom: usize, partner: Vec<u8>) -> Result<Tangle> {
        let n = top + bottom;
        if n >= ISO as usize {
            return Err(Error::BoundExceeded { points: n, bound: ISO as usize - 1 });
        }
        if partner.len() != n {
            return Err(Error::parse(format!("expected {n} partner entries, got {}", partner.len())));
        }
        for (i, &p) in partner.iter().enumerate() {
            if p == ISO {
                continue;
            }
            let p = p as usize;
            if p >= n || p == i || partner[p] as usize != i {
                return Err(Error::parse(format!("partner table is not an involution at {i}")));
            }
        }
        let t = Tangle::from_partners_unchecked(top, bottom, partner);
        if !t.is_planar() {
            return Err(Error::parse(format!("crossing strands in {t}")));
        }
        Ok(t)
    }

    pub(crate) fn from_partners_unchecked(top: usize, bottom: usize, partner: Vec<u8>) -> Tangle {
        Tangle {
            top: top as u8,
            bottom: bottom as u8,
            partner: partner.into_boxed_slice(),
        }
    }

    /// Builds a tangle from a list of matched pairs; all other points are isolated.
    pub fn from_pairs(top: usize, bottom: usize, pairs: &[(Point, Point)]) -> Result<Tangle> {
        let mut partner = vec![ISO; top + bottom];
        for &(a, b) in pairs {
            let (a, b) = (raw_of(top, bottom, a)?, raw_of(top, bottom, b)?);
            if partner[a] != ISO || partner[b] != ISO || a == b {
                return Err(Error::parse(format!("point used twice in {pairs:?}")));
            }
            partner[a] = b as u8;
            partner[b] = a as u8;
        }
        Tangle::from_partners(top, bottom, partner)
    }

    pub fn top(&self) -> usize {
        self.top as usize
    }

    pub fn bottom(&self) -> usize {
        self.bottom as usize
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.top(), self.bottom())
    }

    pub fn points(&self) -> usize {
        self.partner.len()
    }

    pub fn partners(&self) -> &[u8] {
        &self.partner
    }

    /// Partner of a raw point, if any.
    pub fn partner(&self, raw: usize) -> Option<usize> {
        match self.partner[raw] {
            ISO => None,
            p => Some(p as usize),
        }
    }

    pub fn point(&self, raw: usize) -> Point {
        if raw < self.top() {
            Point::T(raw + 1)
        } else {
            Point::B(raw - self.top() + 1)
        }
    }

    pub fn raw(&self, p: Point) -> Result<usize> {
        raw_of(self.top(), self.bottom(), p)
    }

    /// Position in the circular order T1..Ttop, Bbottom..B1.
    pub fn circular(&self, raw: usize) -> usize {
        let t = self.top();
        if raw < t {
            raw
        } else {
            t + self.bottom() - 1 - (raw - t)
        }
    }

    fn is_planar(&self) -> bool {
        let n = self.points();
        let mut by_pos = vec![ISO; n];
        for raw in 0..n {
            by_pos[self.circular(raw)] = match self.partner[raw] {
                ISO => ISO,
                p => self.circular(p as usize) as u8,
            };
        }
        let mut stack = Vec::new();
        for (pos, &other) in by_pos.iter().enumerate() {
            if other == ISO {
                continue;
            }
            let other = other as usize;
            if other > pos {
                stack.push(pos);
            } else if stack.pop() != Some(other) {
                return false;
            }
        }
        stack.is_empty()
    }

    /// Matched pairs (a, b) with a < b in raw order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.partner
            .iter()
            .enumerate()
            .filter(|&(i, &p)| p != ISO && i < p as usize)
            .map(|(i, &p)| (i, p as usize))
    }

    pub fn isolated(&self) -> impl Iterator<Item = usize> + '_ {
        self.partner.iter().enumerate().filter(|(_, &p)| p == ISO).map(|(i, _)| i)
    }

    /// Number of through strings.
    pub fn rank(&self) -> usize {
        let t = self.top();
        self.edges().filter(|&(a, b)| a < t && b >= t).count()
    }

    pub fn identity(n: usize) -> Tangle {
        let partner = (0..2 * n).map(|i| ((i + n) % (2 * n)) as u8).collect();
        Tangle::from_partners_unchecked(n, n, partner)
    }

    /// The empty diagram with no boundary points.
    pub fn empty() -> Tangle {
        Tangle::identity(0)
    }

    /// Named generator of M_n, with 1-based index `i`.
    pub fn generator(kind: Generator, n: usize, i: usize) -> Result<Tangle> {
        let limit = match kind {
            Generator::Id => return Ok(Tangle::identity(n)),
            Generator::P => n,
            _ => n.saturating_sub(1),
        };
        if i == 0 || i > limit {
            return Err(Error::IndexOutOfRange { index: i, range: format!("1..={limit}") });
        }
        let mut partner: Vec<u8> = Tangle::identity(n).partner.into_vec();
        let (t, b) = (i - 1, n + i - 1);
        let mut set = |a: usize, c: Option<usize>| match c {
            Some(c) => {
                partner[a] = c as u8;
                partner[c] = a as u8;
            }
            None => partner[a] = ISO,
        };
        match kind {
            Generator::P => {
                set(t, None);
                set(b, None);
            }
            Generator::E => {
                set(t, Some(t + 1));
                set(b, Some(b + 1));
            }
            Generator::L => {
                set(t, Some(b + 1));
                set(t + 1, None);
                set(b, None);
            }
            Generator::R => {
                set(t + 1, Some(b));
                set(t, None);
                set(b + 1, None);
            }
            Generator::Id => unreachable!(),
        }
        Ok(Tangle::from_partners_unchecked(n, n, partner))
    }

    pub fn e(n: usize, i: usize) -> Result<Tangle> {
        Tangle::generator(Generator::E, n, i)
    }

    pub fn l(n: usize, i: usize) -> Result<Tangle> {
        Tangle::generator(Generator::L, n, i)
    }

    pub fn r(n: usize, i: usize) -> Result<Tangle> {
        Tangle::generator(Generator::R, n, i)
    }

    pub fn p(n: usize, i: usize) -> Result<Tangle> {
        Tangle::generator(Generator::P, n, i)
    }

    /// Reflection swapping top and bottom.
    pub fn adjoint(&self) -> Tangle {
        let (t, b) = (self.top(), self.bottom());
        let map = |raw: usize| if raw < t { b + raw } else { raw - t };
        let mut partner = vec![ISO; t + b];
        for (raw, &p) in self.partner.iter().enumerate() {
            if p != ISO {
                partner[map(raw)] = map(p as usize) as u8;
            }
        }
        Tangle::from_partners_unchecked(b, t, partner)
    }

    /// `self` placed to the left of `other`.
    pub fn juxtapose(&self, other: &Tangle) -> Tangle {
        let (xt, xb, yt, yb) = (self.top(), self.bottom(), other.top(), other.bottom());
        let xmap = |raw: usize| if raw < xt { raw } else { xt + yt + raw - xt };
        let ymap = |raw: usize| if raw < yt { xt + raw } else { xt + yt + xb + raw - yt };
        let mut partner = vec![ISO; xt + xb + yt + yb];
        for (raw, &p) in self.partner.iter().enumerate() {
            if p != ISO {
                partner[xmap(raw)] = xmap(p as usize) as u8;
            }
        }
        for (raw, &p) in other.partner.iter().enumerate() {
            if p != ISO {
                partner[ymap(raw)] = ymap(p as usize) as u8;
            }
        }
        Tangle::from_partners_unchecked(xt + yt, xb + yb, partner)
    }

}

fn raw_of(top: usize, bottom: usize, p: Point) -> Result<usize> {
    match p {
        Point::T(i) if (1..=top).contains(&i) => Ok(i - 1),
        Point::B(j) if (1..=bottom).contains(&j) => Ok(top + j - 1),
        _ => Err(Error::IndexOutOfRange {
            index: match p {
                Point::T(i) | Point::B(i) => i,
            },
            range: format!("T1..T{top}, B1..B{bottom}"),
        }),
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::T(i) => write!(f, "T{i}"),
            Point::B(j) => write!(f, "B{j}"),
        }
    }
}

impl fmt::Debug for Tangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tangle({},{}: {self})", self.top, self.bottom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_have_expected_ranks() {
        let n = 4;
        for i in 1..n {
            assert_eq!(Tangle::e(n, i).unwrap().rank(), n - 2);
            assert_eq!(Tangle::l(n, i).unwrap().rank(), n - 1);
            assert_eq!(Tangle::r(n, i).unwrap().rank(), n - 1);
        }
        assert_eq!(Tangle::p(n, n).unwrap().rank(), n - 1);
        assert_eq!(Tangle::identity(n).rank(), n);
        assert!(Tangle::e(n, n).is_err());
        assert!(Tangle::p(n, 0).is_err());
    }

    #[test]
    fn adjoint_swaps_l_and_r() {
        for i in 1..4 {
            assert_eq!(Tangle::l(4, i).unwrap().adjoint(), Tangle::r(4, i).unwrap());
            assert_eq!(Tangle::e(4, i).unwrap().adjoint(), Tangle::e(4, i).unwrap());
        }
    }

    #[test]
    fn crossing_is_rejected() {
        let bad = Tangle::from_pairs(2, 2, &[(Point::T(1), Point::B(2)), (Point::T(2), Point::B(1))]);
        assert!(bad.is_err());
        let nested = Tangle::from_pairs(3, 0, &[(Point::T(1), Point::T(3))]);
        assert!(nested.is_ok());
    }

    #[test]
    fn juxtaposition_of_projections() {
        let p = Tangle::p(1, 1).unwrap();
        let pp = p.juxtapose(&p);
        assert_eq!(pp.shape(), (2, 2));
        assert_eq!(pp.isolated().count(), 4);
        assert_eq!(Tangle::identity(2).juxtapose(&Tangle::identity(3)), Tangle::identity(5));
    }
}
