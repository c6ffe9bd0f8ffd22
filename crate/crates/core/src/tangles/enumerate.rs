use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::{Tangle, ISO};
use crate::error::{Error, Result};

/// Default bound on boundary points, overridable by `MOTZKIN_MAX_POINTS`.
pub fn max_points() -> usize {
    std::env::var("MOTZKIN_MAX_POINTS")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .filter(|&v: &usize| v > 0)
        .unwrap_or(18)
}

type Matchings = Arc<Vec<Box<[u8]>>>;

fn cache() -> &'static Mutex<HashMap<usize, Matchings>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Matchings>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// All planar partial matchings of `len` points on a line, as partner tables
/// indexed by position. Order: the first point isolated, then matched to
/// 1, 2, … in turn; for a fixed partner the enclosed matchings vary slowest and
/// the ones to the right fastest.
fn matchings(len: usize) -> Matchings {
    if let Some(m) = cache().lock().unwrap().get(&len) {
        return m.clone();
    }
    let mut out: Vec<Box<[u8]>> = Vec::new();
    if len == 0 {
        out.push(Box::new([]));
    } else {
        for rest in matchings(len - 1).iter() {
            let mut v = Vec::with_capacity(len);
            v.push(ISO);
            v.extend(rest.iter().map(|&p| shift(p, 1)));
            out.push(v.into_boxed_slice());
        }
        for k in 1..len {
            let inside = matchings(k - 1);
            let outside = matchings(len - k - 1);
            for a in inside.iter() {
                for b in outside.iter() {
                    let mut v = Vec::with_capacity(len);
                    v.push(k as u8);
                    v.extend(a.iter().map(|&p| shift(p, 1)));
                    v.push(0);
                    v.extend(b.iter().map(|&p| shift(p, k + 1)));
                    out.push(v.into_boxed_slice());
                }
            }
        }
    }
    let out = Arc::new(out);
    cache().lock().unwrap().insert(len, out.clone());
    out
}

fn shift(p: u8, by: usize) -> u8 {
    if p == ISO {
        ISO
    } else {
        p + by as u8
    }
}

/// Every Motzkin (m,n)-tangle once, in the canonical order of the circular
/// matchings of T1..Tm, Bn..B1.
pub fn enumerate_tangles(m: usize, n: usize) -> Result<Vec<Tangle>> {
    let bound = max_points();
    if m + n > bound {
        return Err(Error::BoundExceeded { points: m + n, bound });
    }
    let len = m + n;
    // circular position → raw index
    let raw_of = |pos: usize| if pos < m { pos } else { m + (n - 1 - (pos - m)) };
    Ok(matchings(len)
        .iter()
        .map(|circ| {
            let mut partner = vec![ISO; len];
            for (pos, &q) in circ.iter().enumerate() {
                if q != ISO {
                    partner[raw_of(pos)] = raw_of(q as usize) as u8;
                }
            }
            Tangle::from_partners_unchecked(m, n, partner)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_tangles(1, 1).unwrap().len(), 2);
        assert_eq!(enumerate_tangles(2, 2).unwrap().len(), 9);
        assert_eq!(enumerate_tangles(3, 4).unwrap().len(), 127);
        assert_eq!(enumerate_tangles(0, 0).unwrap(), vec![Tangle::empty()]);
    }

    #[test]
    fn enumeration_is_planar_and_distinct() {
        let all = enumerate_tangles(3, 3).unwrap();
        let set: HashSet<_> = all.iter().cloned().collect();
        assert_eq!(set.len(), all.len());
        for t in &all {
            Tangle::from_partners(3, 3, t.partners().to_vec()).unwrap();
        }
    }

    #[test]
    fn first_entries_follow_canonical_order() {
        let all = enumerate_tangles(1, 1).unwrap();
        assert_eq!(all[0].partner(0), None);
        assert_eq!(all[1], Tangle::identity(1));
    }

    #[test]
    fn bound_is_enforced() {
        assert!(matches!(enumerate_tangles(10, 10), Err(Error::BoundExceeded { .. })));
    }
}
