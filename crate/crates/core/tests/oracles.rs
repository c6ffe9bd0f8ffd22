//! Values checked against independent computations or literal reference numbers.

use std::f64::consts::PI;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use motzkin::algebra::parse_word;
use motzkin::bimodules::{fuse, qdim, FusionLabel};
use motzkin::idempotents::jw;
use motzkin::scalars::{quantum_dim, Param, Scalar};
use motzkin::tangles::{count_motzkin, count_paths, enumerate_tangles};
use motzkin::towers::{block_dims, dim_closed_form, gns_dim, weight_vector};

fn p(s: &str) -> Param {
    s.parse().unwrap()
}

/// Non-crossing partial matchings of n points on a line, by first-point recursion.
fn matchings_brute(n: usize) -> u64 {
    let mut a = vec![0u64; n + 1];
    a[0] = 1;
    for k in 1..=n {
        // point 1 isolated, or matched to point j splitting inside/outside
        let mut s = a[k - 1];
        for j in 2..=k {
            s += a[j - 2] * a[k - j];
        }
        a[k] = s;
    }
    a[n]
}

/// Number of walks of length n on {0,1,2,...} with steps -1,0,+1 ending at height h.
fn walks(n: usize, h: usize) -> u64 {
    let mut v = vec![0u64; n + 2];
    v[0] = 1;
    for _ in 0..n {
        let mut w = vec![0u64; n + 2];
        for (x, &c) in v.iter().enumerate() {
            if c == 0 {
                continue;
            }
            w[x] += c;
            if x + 1 < w.len() {
                w[x + 1] += c;
            }
            if x > 0 {
                w[x - 1] += c;
            }
        }
        v = w;
    }
    v[h]
}

/// Truncated walks used for the root-of-unity dimensions: heights 0..=width-1.
fn walks_capped(n: usize, width: usize) -> u64 {
    let mut v = vec![0u64; width];
    v[0] = 1;
    for _ in 0..n {
        let mut w = vec![0u64; width];
        for x in 0..width {
            w[x] += v[x];
            if x + 1 < width {
                w[x + 1] += v[x];
            }
            if x > 0 {
                w[x - 1] += v[x];
            }
        }
        v = w;
    }
    v[0]
}

fn trig_dim(k: usize, nu: u32) -> f64 {
    let n = nu as f64;
    (1..nu)
        .map(|j| {
            let t = j as f64 * PI / n;
            (2.0 * t.cos() + 1.0).powi(k as i32) * t.sin().powi(2)
        })
        .sum::<f64>()
        * 2.0
        / n
}

#[test]
fn motzkin_numbers_match_brute_force_matchings() {
    for n in 0..=20 {
        assert_eq!(count_motzkin(n), BigUint::from(matchings_brute(n)), "n = {n}");
    }
}

#[test]
fn enumeration_counts_match_brute_force() {
    for total in 0..=9 {
        for m in 0..=total {
            assert_eq!(enumerate_tangles(m, total - m).unwrap().len() as u64, matchings_brute(total));
        }
    }
}

#[test]
fn path_counts_match_walks() {
    for n in 0..=14 {
        for h in 0..=n {
            assert_eq!(count_paths(n, h), BigUint::from(walks(n, h)), "n = {n}, h = {h}");
        }
    }
}

#[test]
fn block_dims_are_walk_counts() {
    let four = p("4");
    for k in 0..=10 {
        let dims = block_dims(k, &four);
        for (r, m) in dims.iter().enumerate() {
            assert_eq!(m.to_u64().unwrap(), walks(k, r), "k = {k}, r = {r}");
        }
    }
    assert_eq!(block_dims(3, &four).iter().map(|x| x.to_u64().unwrap()).collect::<Vec<_>>(), [4, 5, 3, 1]);
}

#[test]
fn closed_form_matches_trigonometric_sum_and_capped_walks() {
    for nu in 3..=7u32 {
        for k in 0..=14 {
            let exact = dim_closed_form(k, nu).unwrap().to_f64().unwrap();
            let trig = trig_dim(k, nu);
            assert!((exact - trig).abs() < 1e-6 * trig.max(1.0), "nu = {nu}, k = {k}: {exact} vs {trig}");
            assert_eq!(exact as u64, walks_capped(k, nu as usize - 1), "nu = {nu}, k = {k}");
        }
    }
}

#[test]
fn reference_dimensions_at_one_plus_sqrt2() {
    let param = p("cos:4");
    assert_eq!(gns_dim(5, &param).unwrap(), 21);
    assert_eq!(gns_dim(7, &param).unwrap(), 120);
    assert_eq!(dim_closed_form(7, 4).unwrap(), BigUint::from(120u32));
}

#[test]
fn gram_ranks_at_generic_and_degenerate_d() {
    let five_halves = p("5/2");
    for j in 0..=6 {
        assert_eq!(BigUint::from(gns_dim(j, &five_halves).unwrap()), count_motzkin(j), "j = {j}");
    }
    // D = 2 truncates to walks on {0, 1}
    let two = p("2");
    for j in 0..=7 {
        assert_eq!(gns_dim(j, &two).unwrap() as u64, walks_capped(j, 2), "j = {j}");
    }
}

#[test]
fn jones_wenzl_traces_by_hand() {
    let four = p("4");
    // d = 3, tau = 1/9: tr g1 = 3/4, tr g2 = (9/16)(1 - 1/9) = 1/2
    assert_eq!(jw(1, &four).unwrap().trace().unwrap(), Scalar::frac(3, 4));
    assert_eq!(jw(2, &four).unwrap().trace().unwrap(), Scalar::frac(1, 2));
    let g2 = jw(2, &four).unwrap();
    for w in ["e1", "l1", "r1", "p1", "p2"] {
        let x = parse_word(w, 2, &four).unwrap();
        assert!(g2.multiply(&x).unwrap().is_zero(), "g2 * {w}");
        assert!(x.multiply(&g2).unwrap().is_zero(), "{w} * g2");
    }
}

#[test]
fn weight_vectors_against_float_formula() {
    let param = p("cos:5");
    let big_d = 1.0 + 2.0 * (PI / 5.0).cos();
    let d = big_d - 1.0;
    let tau = 1.0 / (d * d);
    let cheb = |k: usize| {
        let (mut a, mut b) = (1.0, 1.0);
        for _ in 1..k {
            (a, b) = (b, b - tau * a);
        }
        if k == 0 {
            1.0
        } else {
            b
        }
    };
    for k in 1..=5 {
        for (i, w) in weight_vector(k, &param).unwrap().iter().enumerate() {
            let want = d.powi(i as i32) / big_d.powi(k as i32) * cheb(i);
            assert!((w.to_f64() - want).abs() < 1e-12, "k = {k}, i = {i}");
        }
    }
}

#[test]
fn quantum_dims_are_sine_ratios_at_roots_of_unity() {
    for nu in 3..=8u32 {
        let param = Param::root_of_unity(nu).unwrap();
        let s = (PI / nu as f64).sin();
        for i in 0..=(nu as usize - 2) {
            let want = ((i + 1) as f64 * PI / nu as f64).sin() / s;
            let got = quantum_dim(&param, i).to_f64();
            assert!((got - want).abs() < 1e-10, "nu = {nu}, i = {i}: {got} vs {want}");
        }
    }
}

#[test]
fn fusion_reference_products() {
    let c5 = p("cos:5");
    let l = |k, i| FusionLabel::new(k, i, &c5).unwrap();
    let got = fuse(l(2, 1), l(3, 2), c5.cap()).labels;
    assert_eq!(got, vec![l(5, 1), l(5, 3)]);
    // at cap 3, (1,1) x (1,1) keeps both summands
    assert_eq!(fuse(l(1, 1), l(1, 1), c5.cap()).labels, vec![l(2, 0), l(2, 2)]);
    let generic = p("4");
    let g = |k, i| FusionLabel::new(k, i, &generic).unwrap();
    assert_eq!(fuse(g(2, 2), g(2, 1), None).labels, vec![g(4, 1), g(4, 3)]);
    // qdim multiplies numerically over the products
    for (a, b) in [(g(2, 1), g(3, 2)), (g(1, 1), g(2, 2))] {
        let lhs = qdim(a.i, &generic).unwrap().to_f64() * qdim(b.i, &generic).unwrap().to_f64();
        let rhs: f64 = fuse(a, b, None).labels.iter().map(|c| qdim(c.i, &generic).unwrap().to_f64()).sum();
        assert!((lhs - rhs).abs() < 1e-9);
    }
}
