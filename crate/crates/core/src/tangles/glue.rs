//! The single gluing kernel behind products, traces, pairings and actions.

use super::{Tangle, ISO};
use crate::error::{Error, Result};

/// A boundary point of one of the two glued pictures, by raw index.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slot {
    X(usize),
    Y(usize),
}

/// How two pictures are joined: which points are identified and where the
/// surviving points go in the output.
#[derive(Clone, Debug)]
pub struct Seam {
    x_shape: (usize, usize),
    y_shape: (usize, usize),
    /// node → seam partner (nodes: x raw, then y raw offset by x's size)
    mate: Vec<u16>,
    /// node → output raw index
    out: Vec<u16>,
    top: usize,
    bottom: usize,
}

const NONE: u16 = u16::MAX;

impl Seam {
    /// Identify `pairs[i].0` of x with `pairs[i].1` of y; the output has the
    /// listed top and bottom slots. Every point must be used exactly once.
    pub fn new(
        x_shape: (usize, usize),
        y_shape: (usize, usize),
        pairs: &[(usize, usize)],
        top: &[Slot],
        bottom: &[Slot],
    ) -> Result<Seam> {
        let nx = x_shape.0 + x_shape.1;
        let ny = y_shape.0 + y_shape.1;
        let mut mate = vec![NONE; nx + ny];
        let mut out = vec![NONE; nx + ny];
        let mut used = vec![false; nx + ny];
        let mut claim = |node: usize| -> Result<()> {
            if std::mem::replace(&mut used[node], true) {
                return Err(Error::SeamMismatch(format!("point {node} used twice")));
            }
            Ok(())
        };
        for &(a, b) in pairs {
            if a >= nx || b >= ny {
                return Err(Error::SeamMismatch(format!("seam pair ({a},{b}) out of range")));
            }
            claim(a)?;
            claim(nx + b)?;
            mate[a] = (nx + b) as u16;
            mate[nx + b] = a as u16;
        }
        for (i, slot) in top.iter().chain(bottom).enumerate() {
            let node = match *slot {
                Slot::X(a) if a < nx => a,
                Slot::Y(b) if b < ny => nx + b,
                _ => return Err(Error::SeamMismatch(format!("output slot {slot:?} out of range"))),
            };
            claim(node)?;
            out[node] = i as u16;
        }
        if let Some(node) = used.iter().position(|u| !u) {
            return Err(Error::SeamMismatch(format!("point {node} is neither glued nor kept")));
        }
        Ok(Seam {
            x_shape,
            y_shape,
            mate,
            out,
            top: top.len(),
            bottom: bottom.len(),
        })
    }

    /// Vertical stacking: x on top, x.B_j glued to y.T_j.
    pub fn stack(x_shape: (usize, usize), y_shape: (usize, usize)) -> Result<Seam> {
        if x_shape.1 != y_shape.0 {
            return Err(Error::SeamMismatch(format!(
                "cannot stack {}x{} over {}x{}",
                x_shape.0, x_shape.1, y_shape.0, y_shape.1
            )));
        }
        let pairs: Vec<_> = (0..x_shape.1).map(|j| (x_shape.0 + j, j)).collect();
        let top: Vec<_> = (0..x_shape.0).map(Slot::X).collect();
        let bottom: Vec<_> = (0..y_shape.1).map(|j| Slot::Y(y_shape.0 + j)).collect();
        Seam::new(x_shape, y_shape, &pairs, &top, &bottom)
    }

    /// Full contraction of two same-shape pictures: x.T_i↔y.T_i and x.B_j↔y.B_j.
    pub fn closure(shape: (usize, usize)) -> Seam {
        let n = shape.0 + shape.1;
        let pairs: Vec<_> = (0..n).map(|i| (i, i)).collect();
        Seam::new(shape, shape, &pairs, &[], &[]).expect("closure seam is well formed")
    }

    pub fn output_shape(&self) -> (usize, usize) {
        (self.top, self.bottom)
    }

    pub fn input_shapes(&self) -> ((usize, usize), (usize, usize)) {
        (self.x_shape, self.y_shape)
    }
}

/// Glues `x` and `y` along `seam`. Returns the resulting picture and the
/// number of closed loops removed.
pub fn glue(x: &Tangle, y: &Tangle, seam: &Seam) -> Result<(Tangle, u32)> {
    check(x, y, seam)?;
    Ok(glue_unchecked(x, y, seam))
}

/// Loop count only (for seams whose output has no points, or when the picture is not needed).
pub fn glue_loops(x: &Tangle, y: &Tangle, seam: &Seam) -> Result<u32> {
    check(x, y, seam)?;
    Ok(run(x, y, seam, None))
}

fn check(x: &Tangle, y: &Tangle, seam: &Seam) -> Result<()> {
    if x.shape() != seam.x_shape || y.shape() != seam.y_shape {
        return Err(Error::SeamMismatch(format!(
            "seam expects {:?} and {:?}, got {:?} and {:?}",
            seam.x_shape,
            seam.y_shape,
            x.shape(),
            y.shape()
        )));
    }
    Ok(())
}

pub(crate) fn glue_unchecked(x: &Tangle, y: &Tangle, seam: &Seam) -> (Tangle, u32) {
    let mut partner = vec![ISO; seam.top + seam.bottom];
    let loops = run(x, y, seam, Some(&mut partner));
    (Tangle::from_partners_unchecked(seam.top, seam.bottom, partner), loops)
}

pub(crate) fn loops_unchecked(x: &Tangle, y: &Tangle, seam: &Seam) -> u32 {
    run(x, y, seam, None)
}

fn run(x: &Tangle, y: &Tangle, seam: &Seam, mut result: Option<&mut Vec<u8>>) -> u32 {
    let nx = x.points();
    let n = nx + y.points();
    let inner = |node: usize| -> u16 {
        let p = if node < nx { x.partners()[node] } else { y.partners()[node - nx] };
        match p {
            ISO => NONE,
            p if node < nx => p as u16,
            p => (p as usize + nx) as u16,
        }
    };
    const STACK: usize = 128;
    let mut stack_buf = [false; STACK];
    let mut heap_buf;
    let visited: &mut [bool] = if n <= STACK {
        &mut stack_buf[..n]
    } else {
        heap_buf = vec![false; n];
        &mut heap_buf
    };

    // Open strands: start from each output point.
    if let Some(res) = result.as_deref_mut() {
        for start in 0..n {
            let slot = seam.out[start];
            if slot == NONE || res[slot as usize] != ISO {
                continue;
            }
            let mut cur = inner(start);
            let end = loop {
                if cur == NONE {
                    break None;
                }
                let c = cur as usize;
                if seam.out[c] != NONE {
                    break Some(seam.out[c]);
                }
                visited[c] = true;
                let m = seam.mate[c] as usize;
                visited[m] = true;
                cur = inner(m);
            };
            if let Some(end) = end {
                res[slot as usize] = end as u8;
                res[end as usize] = slot as u8;
            }
        }
    } else {
        for start in (0..n).filter(|&s| seam.out[s] != NONE) {
            let mut cur = inner(start);
            while cur != NONE && seam.out[cur as usize] == NONE {
                let c = cur as usize;
                visited[c] = true;
                let m = seam.mate[c] as usize;
                visited[m] = true;
                cur = inner(m);
            }
        }
    }

    // What remains lives entirely on the seam: closed loops or dead-end paths.
    let mut loops = 0;
    for s in 0..nx {
        if visited[s] || seam.mate[s] == NONE {
            continue;
        }
        visited[s] = true;
        let mut cur = s;
        let closed = loop {
            let nxt = inner(cur);
            if nxt == NONE {
                break false;
            }
            let nx_ = nxt as usize;
            visited[nx_] = true;
            let m = seam.mate[nx_] as usize;
            if m == s {
                break true;
            }
            visited[m] = true;
            cur = m;
        };
        if closed {
            loops += 1;
            continue;
        }
        let mut cur = seam.mate[s] as usize;
        visited[cur] = true;
        loop {
            let nxt = inner(cur);
            if nxt == NONE {
                break;
            }
            visited[nxt as usize] = true;
            cur = seam.mate[nxt as usize] as usize;
            visited[cur] = true;
        }
    }
    loops
}

#[cfg(test)]
mod tests {
    use super::*;

    fn stack(x: &Tangle, y: &Tangle) -> (Tangle, u32) {
        let seam = Seam::stack(x.shape(), y.shape()).unwrap();
        glue(x, y, &seam).unwrap()
    }

    #[test]
    fn e_squared_makes_one_loop() {
        let e = Tangle::e(2, 1).unwrap();
        assert_eq!(stack(&e, &e), (e.clone(), 1));
    }

    #[test]
    fn r_l_products_are_projections() {
        let (l, r) = (Tangle::l(2, 1).unwrap(), Tangle::r(2, 1).unwrap());
        assert_eq!(stack(&r, &l), (Tangle::p(2, 1).unwrap(), 0));
        assert_eq!(stack(&l, &r), (Tangle::p(2, 2).unwrap(), 0));
        for n in 3..6 {
            for i in 1..n {
                let (l, r) = (Tangle::l(n, i).unwrap(), Tangle::r(n, i).unwrap());
                assert_eq!(stack(&r, &l).0, Tangle::p(n, i).unwrap());
                assert_eq!(stack(&l, &r).0, Tangle::p(n, i + 1).unwrap());
            }
        }
    }

    #[test]
    fn identity_is_neutral() {
        let e = Tangle::e(3, 2).unwrap();
        assert_eq!(stack(&Tangle::identity(3), &e), (e.clone(), 0));
        assert_eq!(stack(&e, &Tangle::identity(3)), (e, 0));
    }

    #[test]
    fn closure_of_identity_counts_strands() {
        let id = Tangle::identity(4);
        assert_eq!(glue_loops(&id, &id, &Seam::closure((4, 4))).unwrap(), 4);
        let p = Tangle::p(4, 2).unwrap();
        assert_eq!(glue_loops(&p, &Tangle::identity(4), &Seam::closure((4, 4))).unwrap(), 3);
    }

    #[test]
    fn mismatched_seams_are_rejected() {
        assert!(matches!(Seam::stack((2, 3), (2, 2)), Err(Error::SeamMismatch(_))));
        let seam = Seam::stack((2, 2), (2, 2)).unwrap();
        let t = Tangle::identity(3);
        assert!(glue(&t, &t, &seam).is_err());
    }
}
