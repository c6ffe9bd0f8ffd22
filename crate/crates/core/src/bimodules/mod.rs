//! Finite-stage bimodule spaces V_m(p), their actions and pairings, the
//! tensor map T₀ and the fusion ring of the labels H_{k,i}.
//!
//! A vector of V_m(p) is a combination of frame pictures: tangles with
//! 2m + k top points and no bottom points, read in the circular order
//! L_1..L_m, B_1..B_k, R_m..R_1 (left side top to bottom, bottom left to
//! right, right side bottom to top). Odd k is padded with an isolated point,
//! so p acts as p|p₁ and every frame has an even bottom.

mod fusion;

pub use fusion::{
    dim_bimodule, fuse, labels, partial_isometry, qdim, verify_fusion_ring, verify_fusion_witness, FusionLabel,
    FusionRing, Fused,
};

use crate::algebra::{glue_elems, AlgElem};
use crate::error::{Error, Result};
use crate::idempotents::Report;
use crate::linalg;
use crate::scalars::{Param, Scalar};
use crate::tangles::{enumerate_tangles, loops_raw, Seam, Slot, Tangle};

/// A vector in the frame with m points on each side and k bottom points.
#[derive(Clone, Debug, PartialEq)]
pub struct BimodVector {
    m: usize,
    k: usize,
    elem: AlgElem,
}

impl BimodVector {
    /// Wraps a combination of (2m + k, 0) pictures.
    pub fn new(m: usize, k: usize, elem: AlgElem) -> Result<BimodVector> {
        if elem.shape() != (2 * m + k, 0) {
            return Err(Error::shape(format!("({}, 0)", 2 * m + k), format!("{:?}", elem.shape())));
        }
        Ok(BimodVector { m, k, elem })
    }

    pub fn from_tangle(param: &Param, m: usize, t: Tangle) -> Result<BimodVector> {
        let k = t
            .top()
            .checked_sub(2 * m)
            .filter(|_| t.bottom() == 0)
            .ok_or_else(|| Error::shape(format!("(2*{m} + k, 0)"), format!("{:?}", t.shape())))?;
        Ok(BimodVector {
            m,
            k,
            elem: AlgElem::from_tangle(param, t),
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn elem(&self) -> &AlgElem {
        &self.elem
    }

    pub fn param(&self) -> &Param {
        self.elem.param()
    }

    pub fn is_zero(&self) -> bool {
        self.elem.is_zero()
    }

    pub fn scale(&self, c: &Scalar) -> BimodVector {
        BimodVector {
            elem: self.elem.scale(c),
            ..self.clone()
        }
    }

    pub fn try_add(&self, other: &BimodVector) -> Result<BimodVector> {
        same_frame(self, other)?;
        Ok(BimodVector {
            elem: self.elem.try_add(&other.elem)?,
            ..self.clone()
        })
    }

    fn left(&self, i: usize) -> usize {
        i
    }

    fn bottom(&self, j: usize) -> usize {
        self.m + j
    }

    /// Raw index of R_{i+1}.
    fn right(&self, i: usize) -> usize {
        2 * self.m + self.k - 1 - i
    }

    /// The picture as an element of M_{m + k/2}: the first half of the circular
    /// order goes to the top, the second half to the bottom.
    pub fn embed(&self) -> Result<AlgElem> {
        if self.k % 2 == 1 {
            return Err(Error::DomainError("odd bottom: pad with p_1 first".into()));
        }
        let n = self.m + self.k / 2;
        let map = |f: usize| if f < n { f } else { 3 * n - 1 - f };
        let mut out = AlgElem::zero(self.param(), (n, n));
        for (t, c) in self.elem.terms() {
            let mut partner = vec![crate::tangles::ISO; 2 * n];
            for (f, p) in t.partners().iter().enumerate() {
                if *p != crate::tangles::ISO {
                    partner[map(f)] = map(*p as usize) as u8;
                }
            }
            let image = Tangle::from_partners(n, n, partner)?;
            out = out.try_add(&AlgElem::from_term(self.param(), image, c.clone()))?;
        }
        Ok(out)
    }
}

fn same_frame(u: &BimodVector, v: &BimodVector) -> Result<()> {
    if (u.m, u.k) != (v.m, v.k) {
        return Err(Error::shape(format!("frame m={}, k={}", u.m, u.k), format!("frame m={}, k={}", v.m, v.k)));
    }
    Ok(())
}

fn square(a: &AlgElem, m: usize) -> Result<()> {
    if a.shape() != (m, m) {
        return Err(Error::shape(format!("({m}, {m})"), format!("{:?}", a.shape())));
    }
    Ok(())
}

/// x·v: x.B_j is glued to L_j and x.T_j becomes the new L_j.
pub fn act_left(x: &AlgElem, v: &BimodVector) -> Result<BimodVector> {
    let m = v.m;
    square(x, m)?;
    let pairs: Vec<_> = (0..m).map(|j| (m + j, v.left(j))).collect();
    let top: Vec<Slot> = (0..m).map(Slot::X).chain((m..2 * m + v.k).map(Slot::Y)).collect();
    let seam = Seam::new((m, m), v.elem.shape(), &pairs, &top, &[])?;
    BimodVector::new(m, v.k, glue_elems(x, &v.elem, &seam)?)
}

/// v·y: R_i is glued to y.T_i and y.B_i becomes the new R_i.
pub fn act_right(v: &BimodVector, y: &AlgElem) -> Result<BimodVector> {
    let m = v.m;
    square(y, m)?;
    let pairs: Vec<_> = (0..m).map(|i| (v.right(i), i)).collect();
    let top: Vec<Slot> = (0..m + v.k)
        .map(Slot::X)
        .chain((0..m).rev().map(|i| Slot::Y(m + i)))
        .collect();
    let seam = Seam::new(v.elem.shape(), (m, m), &pairs, &top, &[])?;
    BimodVector::new(m, v.k, glue_elems(&v.elem, y, &seam)?)
}

/// Composes a (k, k) element under the bottom points: B_j to p.T_j.
pub fn act_bottom(v: &BimodVector, p: &AlgElem) -> Result<BimodVector> {
    let (m, k) = (v.m, v.k);
    square(p, k)?;
    let pairs: Vec<_> = (0..k).map(|j| (v.bottom(j), j)).collect();
    let top: Vec<Slot> = (0..m)
        .map(Slot::X)
        .chain((0..k).map(|j| Slot::Y(k + j)))
        .chain((m + k..2 * m + k).map(Slot::X))
        .collect();
    let seam = Seam::new(v.elem.shape(), (k, k), &pairs, &top, &[])?;
    BimodVector::new(m, k, glue_elems(&v.elem, p, &seam)?)
}

/// Full contraction of u against the mirror of v, normalized by D^{−(m + k/2)}
/// so that it agrees with the trace pairing of the embeddings.
pub fn inner(u: &BimodVector, v: &BimodVector) -> Result<Scalar> {
    same_frame(u, v)?;
    let param = u.param();
    let seam = Seam::closure(u.elem.shape());
    let norm = u.m as i64 + u.k.div_ceil(2) as i64;
    let mut sum = Scalar::zero();
    for (s, a) in u.elem.terms() {
        for (t, b) in v.elem.terms() {
            let loops = loops_raw(s, t, &seam) as i64;
            sum = &sum + &(&(a * b) * &param.power(loops - norm));
        }
    }
    Ok(sum)
}

/// The M-valued pairing: contract bottoms and right sides, keep u's left side
/// on top and v's left side on the bottom.
pub fn pairing_m(u: &BimodVector, v: &BimodVector) -> Result<AlgElem> {
    same_frame(u, v)?;
    let (m, k) = (u.m, u.k);
    let pairs: Vec<_> = (m..2 * m + k).map(|f| (f, f)).collect();
    let top: Vec<Slot> = (0..m).map(Slot::X).collect();
    let bottom: Vec<Slot> = (0..m).map(Slot::Y).collect();
    let seam = Seam::new(u.elem.shape(), v.elem.shape(), &pairs, &top, &bottom)?;
    let glued = glue_elems(&u.elem, &v.elem, &seam)?;
    Ok(glued.scale(&u.param().power(-(k.div_ceil(2) as i64))))
}

/// T₀(v ⊗ u): v's right side glued to u's left side, R_j to L_j; the bottom
/// becomes v's bottom followed by u's.
pub fn tensor_t0(v: &BimodVector, u: &BimodVector) -> Result<BimodVector> {
    if v.m != u.m {
        return Err(Error::shape(format!("m = {}", v.m), format!("m = {}", u.m)));
    }
    let m = v.m;
    let pairs: Vec<_> = (0..m).map(|j| (v.right(j), u.left(j))).collect();
    let top: Vec<Slot> = (0..m + v.k)
        .map(Slot::X)
        .chain((m..2 * m + u.k).map(Slot::Y))
        .collect();
    let seam = Seam::new(v.elem.shape(), u.elem.shape(), &pairs, &top, &[])?;
    BimodVector::new(m, v.k + u.k, glue_elems(&v.elem, &u.elem, &seam)?)
}

/// The spanning family {v·p} of V_m(p) over all frame pictures v.
#[derive(Clone, Debug)]
pub struct BimodSpace {
    param: Param,
    m: usize,
    /// p as given
    p: AlgElem,
    /// p, or p|p₁ for odd size
    bottom: AlgElem,
    vectors: Vec<BimodVector>,
}

/// p|p₁ when p has odd size, p otherwise.
pub fn pad(p: &AlgElem) -> AlgElem {
    if p.shape().0 % 2 == 1 {
        p.juxtapose(&crate::algebra::all_isolated(p.param(), 1))
    } else {
        p.clone()
    }
}

pub fn check_projection(p: &AlgElem) -> Result<()> {
    if p.shape().0 != p.shape().1 {
        return Err(Error::shape("square", format!("{:?}", p.shape())));
    }
    if p.star() != *p || p.multiply(p)? != *p {
        return Err(Error::NotIdempotent("p is not a self-adjoint idempotent".into()));
    }
    Ok(())
}

pub fn basis(m: usize, p: &AlgElem) -> Result<BimodSpace> {
    check_projection(p)?;
    let param = p.param().clone();
    let bottom = pad(p);
    let k = bottom.shape().0;
    let mut vectors: Vec<BimodVector> = Vec::new();
    for t in enumerate_tangles(2 * m + k, 0)? {
        let v = act_bottom(&BimodVector::from_tangle(&param, m, t)?, &bottom)?;
        if !v.is_zero() && !vectors.contains(&v) {
            vectors.push(v);
        }
    }
    Ok(BimodSpace {
        param,
        m,
        p: p.clone(),
        bottom,
        vectors,
    })
}

impl BimodSpace {
    pub fn param(&self) -> &Param {
        &self.param
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn projection(&self) -> &AlgElem {
        &self.p
    }

    /// The projection actually composed under the frames.
    pub fn bottom(&self) -> &AlgElem {
        &self.bottom
    }

    pub fn vectors(&self) -> &[BimodVector] {
        &self.vectors
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn gram(&self) -> Result<Vec<Vec<Scalar>>> {
        gram_vectors(&self.vectors)
    }

    /// dim H_m(p) at this stage.
    pub fn rank(&self) -> Result<usize> {
        Ok(linalg::rank_exact(self.gram()?))
    }

    pub fn is_positive(&self) -> Result<bool> {
        Ok(linalg::is_psd(self.gram()?))
    }
}

pub fn gram_vectors(vs: &[BimodVector]) -> Result<Vec<Vec<Scalar>>> {
    vs.iter()
        .map(|u| vs.iter().map(|v| inner(u, v)).collect())
        .collect()
}

/// Property sweep over one space: positivity, commuting and star-compatible
/// actions, the pairing identities and agreement with the embedding.
pub fn verify_space(space: &BimodSpace) -> Result<Report> {
    let mut rep = Report::default();
    let m = space.m;
    let param = &space.param;
    let vs = &space.vectors;
    let gram = space.gram()?;
    let label = format!("m={m}, |p|={} at {param}", space.p.shape().0);
    rep.push(format!("Gram form positive ({label})"), linalg::is_psd(gram.clone()));

    let xs: Vec<AlgElem> = enumerate_tangles(m, m)?
        .into_iter()
        .map(|t| AlgElem::from_tangle(param, t))
        .collect();
    let unit = AlgElem::identity(param, m);
    let mut ok_unit = true;
    let mut ok_commute = true;
    let mut ok_star = true;
    let mut ok_embed = true;
    let mut ok_pairing = true;
    let mut ok_inner = true;
    for (a, u) in vs.iter().enumerate() {
        ok_unit &= act_left(&unit, u)? == *u && act_right(u, &unit)? == *u;
        let eu = u.embed()?;
        for x in &xs {
            let xu = act_left(x, u)?;
            ok_embed &= xu.embed()? == x.embed(u.k / 2).multiply(&eu)?;
            ok_embed &= act_right(u, x)?.embed()? == eu.multiply(&x.embed(u.k / 2))?;
            for y in &xs {
                ok_commute &= act_left(x, &act_right(u, y)?)? == act_right(&xu, y)?;
            }
        }
        for (b, v) in vs.iter().enumerate() {
            ok_inner &= gram[a][b] == crate::algebra::pairing(&eu, &v.embed()?)?;
            let pm = pairing_m(u, v)?;
            for x in &xs {
                let xu = act_left(x, u)?;
                ok_star &= inner(&xu, v)? == inner(u, &act_left(&x.star(), v)?)?;
                ok_pairing &= x.multiply(&pm)?.trace()? == inner(&xu, v)?;
                ok_pairing &= pairing_m(&xu, v)? == x.multiply(&pm)?;
            }
        }
    }
    rep.push(format!("unit acts trivially ({label})"), ok_unit);
    rep.push(format!("left and right actions commute ({label})"), ok_commute);
    rep.push(format!("actions agree with products under the embedding ({label})"), ok_embed);
    rep.push(format!("inner product equals the embedded trace pairing ({label})"), ok_inner);
    rep.push(format!("<xu, v> = <u, x*v> ({label})"), ok_star);
    rep.push(format!("tr(x<u,v>_M) = <xu, v> and <xu,v>_M = x<u,v>_M ({label})"), ok_pairing);
    Ok(rep)
}

/// ⟨T₀(v⊗u), T₀(v′⊗u′)⟩ = ⟨v·⟨u,u′⟩_M, v′⟩ for all spanning pairs.
pub fn verify_isometry(vs: &BimodSpace, us: &BimodSpace) -> Result<Report> {
    let mut rep = Report::default();
    let mut ok = true;
    let mut count = 0usize;
    for v in &vs.vectors {
        for u in &us.vectors {
            let t = tensor_t0(v, u)?;
            for v2 in &vs.vectors {
                for u2 in &us.vectors {
                    let lhs = inner(&t, &tensor_t0(v2, u2)?)?;
                    let rhs = inner(&act_right(v, &pairing_m(u, u2)?)?, v2)?;
                    ok &= lhs == rhs;
                    count += 1;
                }
            }
        }
    }
    rep.push(
        format!(
            "T0 isometry on {count} pairs (m={}, |p|={}, |q|={}, {})",
            vs.m,
            vs.p.shape().0,
            us.p.shape().0,
            vs.param
        ),
        ok,
    );
    Ok(rep)
}

/// The stage embedding V_m(p) → V_{m+1}(p): a new strand joins the new L_1 and
/// R_1 across the top, the old points shift inward.
pub fn raise(v: &BimodVector) -> Result<BimodVector> {
    let n = 2 * v.m + v.k;
    let mut out = AlgElem::zero(v.param(), (n + 2, 0));
    for (t, c) in v.elem.terms() {
        let mut partner = vec![crate::tangles::ISO; n + 2];
        partner[0] = (n + 1) as u8;
        partner[n + 1] = 0;
        for (f, p) in t.partners().iter().enumerate() {
            if *p != crate::tangles::ISO {
                partner[f + 1] = *p + 1;
            }
        }
        out = out.try_add(&AlgElem::from_term(v.param(), Tangle::from_partners(n + 2, 0, partner)?, c.clone()))?;
    }
    BimodVector::new(v.m + 1, v.k, out)
}

/// Same-stage comparison of T₀ with its target V_m(p'|q').
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Surjectivity {
    pub m: usize,
    /// rank of the T₀ image of V_m(p) ⊗ V_m(q)
    pub image_rank: usize,
    /// rank of the target spanning family
    pub target_rank: usize,
}

impl Surjectivity {
    pub fn holds(&self) -> bool {
        self.image_rank == self.target_rank
    }
}

pub fn t0_surjectivity(m: usize, p: &AlgElem, q: &AlgElem) -> Result<Surjectivity> {
    let (vs, us) = (basis(m, p)?, basis(m, q)?);
    let image: Vec<BimodVector> = vs
        .vectors
        .iter()
        .flat_map(|v| us.vectors.iter().map(move |u| tensor_t0(v, u)))
        .collect::<Result<_>>()?;
    let target = basis(m, &pad(p).juxtapose(&pad(q)))?;
    Ok(Surjectivity {
        m,
        image_rank: linalg::rank_exact(gram_vectors(&image)?),
        target_rank: target.rank()?,
    })
}

/// Injectivity of M_m/R → End(V_m(p)/R): the matrices (⟨x_a u_b, u_c⟩)_{bc}
/// span a space of dimension rank gram(m, m).
pub fn left_action_faithful(space: &BimodSpace) -> Result<bool> {
    let m = space.m;
    let param = &space.param;
    let xs = enumerate_tangles(m, m)?;
    let rows: Vec<Vec<Scalar>> = xs
        .iter()
        .map(|t| {
            let x = AlgElem::from_tangle(param, t.clone());
            let mut row = Vec::new();
            for u in &space.vectors {
                let xu = act_left(&x, u)?;
                for v in &space.vectors {
                    row.push(inner(&xu, v)?);
                }
            }
            Ok(row)
        })
        .collect::<Result<_>>()?;
    let gram = crate::algebra::gram(m, m, param)?;
    Ok(linalg::rank_exact(rows) == gram.rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::idempotents::jw;

    #[test]
    fn spanning_counts() {
        let four = Param::rational(4, 1).unwrap();
        let one = AlgElem::identity(&four, 1);
        assert_eq!(basis(1, &one).unwrap().len(), 4);
        let empty = AlgElem::identity(&four, 0);
        let s = basis(0, &empty).unwrap();
        assert_eq!(s.len(), 1);
        assert!(inner(&s.vectors[0], &s.vectors[0]).unwrap().is_one());
        let g1 = jw(1, &four).unwrap();
        assert_eq!(basis(1, &g1).unwrap().rank().unwrap(), 2);
    }

    #[test]
    fn small_space_properties() {
        for d in ["4", "cos:4"] {
            let param: Param = d.parse().unwrap();
            for p in [AlgElem::identity(&param, 1), jw(1, &param).unwrap()] {
                let rep = verify_space(&basis(1, &p).unwrap()).unwrap();
                assert!(rep.passed(), "{:?}", rep.failures().collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn isometry_small() {
        let param: Param = "4".parse().unwrap();
        let one = basis(1, &AlgElem::identity(&param, 1)).unwrap();
        assert!(verify_isometry(&one, &one).unwrap().passed());
    }

    #[test]
    fn raising_is_isometric() {
        let param: Param = "cos:4".parse().unwrap();
        let s = basis(1, &jw(1, &param).unwrap()).unwrap();
        for u in s.vectors() {
            for v in s.vectors() {
                assert_eq!(inner(u, v).unwrap(), inner(&raise(u).unwrap(), &raise(v).unwrap()).unwrap());
            }
        }
    }

    #[test]
    fn t0_single_stage_ranks() {
        // a target picture can need more strands across the p|q junction than
        // the m side points carry, so one stage is not enough
        let param: Param = "cos:4".parse().unwrap();
        let g1 = jw(1, &param).unwrap();
        let s = t0_surjectivity(1, &g1, &g1).unwrap();
        assert_eq!((s.image_rank, s.target_rank), (2, 3));
        let one = AlgElem::identity(&param, 0);
        assert!(t0_surjectivity(1, &one, &g1).unwrap().holds());
    }

    #[test]
    fn t0_with_empty_bottom_is_identity() {
        let param: Param = "4".parse().unwrap();
        let unit = basis(1, &AlgElem::identity(&param, 0)).unwrap();
        let id_frame = unit
            .vectors()
            .iter()
            .find(|v| v.elem.terms().next().unwrap().0.partner(0) == Some(1))
            .unwrap()
            .clone();
        for u in basis(1, &jw(1, &param).unwrap()).unwrap().vectors() {
            assert_eq!(tensor_t0(&id_frame, u).unwrap(), *u);
        }
    }
}
