//! The idempotents g_k, the minimal projections q_{k,i} and matrix-unit families.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::algebra::{all_isolated, generator, product, AlgElem, GramForm};
use crate::error::{Error, Result};
use crate::scalars::{lambda, Param, Scalar};
use crate::tangles::{Generator, Tangle};

/// g_1, g_2, … for one parameter, extended on demand.
#[derive(Clone, Debug)]
pub struct JWTower {
    param: Param,
    elems: Vec<Arc<AlgElem>>,
    lambdas: Vec<Scalar>,
}

impl JWTower {
    pub fn new(param: &Param) -> JWTower {
        let g1 = &AlgElem::identity(param, 1) - &generator(param, Generator::P, 1, 1).expect("p_1 exists");
        JWTower {
            param: param.clone(),
            elems: vec![Arc::new(g1)],
            lambdas: Vec::new(),
        }
    }

    pub fn param(&self) -> &Param {
        &self.param
    }

    /// Number of idempotents built so far.
    pub fn built(&self) -> usize {
        self.elems.len()
    }

    /// λ_1, λ_2, … used so far.
    pub fn lambdas(&self) -> &[Scalar] {
        &self.lambdas
    }

    /// g_k, building the missing stages. g_0 is the empty diagram.
    pub fn get(&mut self, k: usize) -> Result<Arc<AlgElem>> {
        if k == 0 {
            return Ok(Arc::new(AlgElem::identity(&self.param, 0)));
        }
        while self.elems.len() < k {
            let j = self.elems.len();
            let lam = lambda(&self.param, j).map_err(|e| match e {
                Error::GenericityViolation { stage, .. } => Error::GenericityViolation {
                    stage,
                    context: format!("g_{} needs P_{j}(tau) != 0 at {}", j + 1, self.param),
                },
                other => other,
            })?;
            let next = next_stage(&self.elems[j - 1], j, &lam)?;
            self.lambdas.push(lam);
            self.elems.push(Arc::new(next));
        }
        Ok(self.elems[k - 1].clone())
    }
}

/// g_{k+1} = g_k(1 − p_{k+1}) − (λ_k/D)·g_k e_k g_k.
///
/// In g_k e_k g_k only the terms of e_k g_k whose first k−1 top points are
/// through strings survive the left factor g_k (all others end in an
/// isolated point or a cup under g_k), so the rest are dropped before the
/// second product.
fn next_stage(gk: &AlgElem, k: usize, lam: &Scalar) -> Result<AlgElem> {
    let param = gk.param().clone();
    let gk1 = gk.embed(1);
    let first = &gk1 - &gk.juxtapose(&all_isolated(&param, 1));
    let ek = generator(&param, Generator::E, k + 1, k)?;
    let right = ek.multiply(&gk1)?;
    let right = right.filter(|t| top_through(t, k - 1));
    let middle = gk1.multiply(&right)?;
    let coef = lam * &param.power(-1);
    Ok(&first - &middle.scale(&coef))
}

fn top_through(t: &Tangle, k: usize) -> bool {
    let top = t.top();
    (0..k).all(|i| t.partner(i).is_some_and(|p| p >= top))
}

/// The unpruned recursion, used to cross-check the construction.
pub fn jw_direct(k: usize, param: &Param) -> Result<AlgElem> {
    let mut g = &AlgElem::identity(param, 1) - &generator(param, Generator::P, 1, 1)?;
    for j in 1..k {
        let lam = lambda(param, j)?;
        let gj1 = g.embed(1);
        let pj1 = generator(param, Generator::P, j + 1, j + 1)?;
        let ej = generator(param, Generator::E, j + 1, j)?;
        let first = gj1.multiply(&(&AlgElem::identity(param, j + 1) - &pj1))?;
        let middle = product(j + 1, param, [&gj1, &ej, &gj1])?;
        g = &first - &middle.scale(&(&lam * &param.power(-1)));
    }
    Ok(g)
}

type TowerCache = Mutex<HashMap<String, Arc<Mutex<JWTower>>>>;

fn towers() -> &'static TowerCache {
    static CACHE: OnceLock<TowerCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// The shared tower for a parameter.
pub fn tower(param: &Param) -> Arc<Mutex<JWTower>> {
    let key = format!("{:?}|{:?}", param.kind(), param.field());
    towers()
        .lock()
        .unwrap()
        .entry(key)
        .or_insert_with(|| Arc::new(Mutex::new(JWTower::new(param))))
        .clone()
}

/// g_k as an explicit combination of (k,k)-tangles.
pub fn jw(k: usize, param: &Param) -> Result<AlgElem> {
    let t = tower(param);
    let mut t = t.lock().unwrap();
    t.get(k).map(|g| (*g).clone())
}

/// One named check and its outcome.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool) -> Check {
        Check {
            name: name.into(),
            passed,
        }
    }
}

/// Outcome of a family of checks.
#[derive(Clone, Debug, Default)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn push(&mut self, name: impl Into<String>, passed: bool) {
        self.checks.push(Check::new(name, passed));
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }
}

/// The five defining properties of g_k, each checked as an exact identity.
pub fn verify_jw(k: usize, param: &Param) -> Result<Report> {
    let g = jw(k, param)?;
    let mut rep = Report::default();

    let mut annihilated = true;
    for i in 1..k {
        for kind in [Generator::E, Generator::L, Generator::R] {
            let x = generator(param, kind, k, i)?;
            annihilated &= g.multiply(&x)?.is_zero() && x.multiply(&g)?.is_zero();
        }
    }
    rep.push("annihilated by e_i, l_i, r_i", annihilated);

    let square = g.multiply(&g)?;
    rep.push("self-adjoint idempotent", g.star() == g && square == g);

    let expect_ok = if k == 1 {
        g.cond_expect()? == AlgElem::scalar(param, 0, param.d() / param.loop_value())
    } else {
        let prev = jw(k - 1, param)?;
        let c = &(param.d() * &param.cheb(k)) / &(param.loop_value() * &param.cheb(k - 1));
        g.cond_expect()? == prev.scale(&c)
    };
    rep.push("conditional expectation", expect_ok);

    let mut absorbs = true;
    for i in 1..k {
        let gi = jw(i, param)?.embed(k - i);
        absorbs &= gi.multiply(&g)? == g && g.multiply(&gi)? == g;
    }
    rep.push("g_i g_k = g_k for i <= k", absorbs);

    let id = Tangle::identity(k);
    rep.push("identity coefficient is 1", g.coefficient(&id).is_one());
    Ok(rep)
}

/// q_{k,i} = g_i p_{i+1}⋯p_k.
pub fn minimal_projection(k: usize, i: usize, param: &Param) -> Result<AlgElem> {
    if i > k {
        return Err(Error::IndexOutOfRange { index: i, range: format!("0..={k}") });
    }
    if let Some(cap) = param.cap() {
        if i > cap {
            return Err(Error::IndexOutOfRange { index: i, range: format!("0..={cap}") });
        }
    }
    Ok(jw(i, param)?.juxtapose(&all_isolated(param, k - i)))
}

/// One simple block of a matrix-unit family: `units[a][b]` is x_{a+1,b+1}.
#[derive(Clone, Debug)]
pub struct UnitBlock {
    pub label: String,
    pub units: Vec<Vec<AlgElem>>,
}

/// A labeled family of matrix units in M_n.
#[derive(Clone, Debug)]
pub struct MatrixUnits {
    pub n: usize,
    pub blocks: Vec<UnitBlock>,
}

/// Matrix units of M_2 (three blocks) or the top blocks E^{(n−1)}, E^{(n)} of M_n.
pub fn matrix_units(n: usize, param: &Param) -> Result<MatrixUnits> {
    if n < 2 {
        return Err(Error::IndexOutOfRange { index: n, range: "2..".into() });
    }
    if n == 2 {
        return two_strand_units(param);
    }
    let mut blocks = vec![UnitBlock {
        label: format!("E^({})", n - 1),
        units: top_block(n, param)?,
    }];
    if let Ok(g) = jw(n, param) {
        blocks.push(UnitBlock {
            label: format!("E^({n})"),
            units: vec![vec![g]],
        });
    }
    Ok(MatrixUnits { n, blocks })
}

fn word(n: usize, param: &Param, parts: &[(Generator, usize)]) -> Result<Vec<AlgElem>> {
    parts.iter().map(|&(k, i)| generator(param, k, n, i)).collect()
}

/// E_{i,j} = r_i⋯r_{n−1} g_{n−1} l_{n−1}⋯l_j, with p_n standing in for the
/// empty r- or l-word at index n.
fn top_block(n: usize, param: &Param) -> Result<Vec<Vec<AlgElem>>> {
    let g = jw(n - 1, param)?.embed(1);
    let left = |i: usize| -> Result<AlgElem> {
        if i == n {
            return generator(param, Generator::P, n, n);
        }
        let rs: Vec<_> = (i..n).map(|j| (Generator::R, j)).collect();
        product(n, param, &word(n, param, &rs)?)
    };
    let right = |j: usize| -> Result<AlgElem> {
        if j == n {
            return generator(param, Generator::P, n, n);
        }
        let ls: Vec<_> = (j..n).rev().map(|i| (Generator::L, i)).collect();
        product(n, param, &word(n, param, &ls)?)
    };
    let lefts: Vec<AlgElem> = (1..=n).map(left).collect::<Result<_>>()?;
    let rights: Vec<AlgElem> = (1..=n).map(right).collect::<Result<_>>()?;
    lefts
        .iter()
        .map(|a| rights.iter().map(|b| product(n, param, [a, &g, b])).collect())
        .collect()
}

/// The nine units of M_2. The first block needs √(D−1), adjoined when it is
/// not already in the field.
fn two_strand_units(param: &Param) -> Result<MatrixUnits> {
    let n = 2;
    let d = param.d();
    let s = d.sqrt()?;
    let si = s.inv()?;
    let di = d.inv()?;
    let z = all_isolated(param, 2);
    let e1 = generator(param, Generator::E, n, 1)?;
    let p1 = generator(param, Generator::P, n, 1)?;
    let p2 = generator(param, Generator::P, n, 2)?;
    let l1 = generator(param, Generator::L, n, 1)?;
    let r1 = generator(param, Generator::R, n, 1)?;
    let p1e1 = p1.multiply(&e1)?;
    let e1p1 = e1.multiply(&p1)?;
    let first = vec![
        vec![z.clone(), (&z - &p1e1).scale(&si)],
        vec![(&z - &e1p1).scale(&si), (&(&(&z + &e1) - &p1e1) - &e1p1).scale(&di)],
    ];
    let g1 = jw(1, param)?.embed(1);
    let second = vec![
        vec![product(n, param, [&p2, &g1, &p2])?, product(n, param, [&p2, &g1, &l1])?],
        vec![product(n, param, [&r1, &g1, &p2])?, product(n, param, [&r1, &g1, &l1])?],
    ];
    let mut blocks = vec![
        UnitBlock {
            label: "e^(1)".into(),
            units: first,
        },
        UnitBlock {
            label: "e^(2)".into(),
            units: second,
        },
    ];
    if let Ok(g2) = jw(2, param) {
        blocks.push(UnitBlock {
            label: "e^(3)".into(),
            units: vec![vec![g2]],
        });
    }
    Ok(MatrixUnits { n, blocks })
}

/// Checks x_{ab}·y_{cd} − δ·x_{ad} in the radical of the trace for every pair of
/// units (δ is 1 for the same block with b = c), and that each unit is
/// trace-orthogonal to the top idempotent when present.
pub fn verify_matrix_units(family: &MatrixUnits, gram: &GramForm) -> Result<Report> {
    let mut rep = Report::default();
    let n = family.n;
    let param = gram.param();
    let flat: Vec<(usize, usize, usize, &AlgElem)> = family
        .blocks
        .iter()
        .enumerate()
        .flat_map(|(bi, b)| {
            b.units
                .iter()
                .enumerate()
                .flat_map(move |(a, row)| row.iter().enumerate().map(move |(c, x)| (bi, a, c, x)))
        })
        .collect();
    let mut defects = 0usize;
    let mut exact_defects = 0usize;
    for &(bx, a, b, x) in &flat {
        for &(by, c, d, y) in &flat {
            let xy = x.multiply(y)?;
            let defect = if bx == by && b == c {
                xy.try_sub(&family.blocks[bx].units[a][d])?
            } else {
                xy
            };
            if !defect.is_zero() {
                exact_defects += 1;
                if !gram.radical_contains(&defect)? {
                    defects += 1;
                }
            }
        }
    }
    rep.push(
        format!("{} unit products hold modulo the radical ({exact_defects} nonzero exact defects)", flat.len().pow(2)),
        defects == 0,
    );
    if let Ok(g) = jw(n, param) {
        let mut orth = true;
        for &(_, _, _, x) in &flat {
            if family.blocks.iter().any(|b| b.units.len() == 1 && &b.units[0][0] == x) {
                continue;
            }
            orth &= x.multiply(&g)?.trace()?.is_zero();
        }
        rep.push(format!("tr(x g_{n}) = 0 for the lower blocks"), orth);
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g1_and_g2() {
        let four = Param::rational(4, 1).unwrap();
        let g1 = jw(1, &four).unwrap();
        assert_eq!(g1.len(), 2);
        let g2 = jw(2, &four).unwrap();
        assert_eq!(g2.trace().unwrap(), Scalar::frac(1, 2));
        assert_eq!(g2, jw_direct(2, &four).unwrap());
    }

    #[test]
    fn pruned_recursion_matches_direct() {
        for p in ["4", "cos:5", "7/2"] {
            let p: Param = p.parse().unwrap();
            for k in 1..=4 {
                assert_eq!(jw(k, &p).unwrap(), jw_direct(k, &p).unwrap(), "k={k} {p}");
            }
        }
    }

    #[test]
    fn genericity_failure_names_stage() {
        let two = Param::rational(2, 1).unwrap();
        match jw(3, &two) {
            Err(Error::GenericityViolation { stage, .. }) => assert_eq!(stage, 2),
            other => panic!("unexpected {other:?}"),
        }
    }
}
