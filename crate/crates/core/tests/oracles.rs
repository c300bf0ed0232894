//! Cross-checks against independent closed forms: the general product
//! formula for the one-step coefficients, classical Jacobi polynomials and
//! the scalar Gauss series.

use mvop::family::f_wr;
use mvop::hypergeom::h1_coeffs;
use mvop::linalg::{Matrix, VecPoly};
use mvop::recurrence::{a_sq, b_sq, blocks, Shift, SHIFTS};
use mvop::verify::default_grid;
use mvop::{Params, Rational, Scalar};
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn q(x: i64) -> Rational {
    Rational::from_i64(x)
}

/// Integer data `(n, k, ℓ, m)` of an integer-mode parameter set.
fn ints(p: &Params) -> (i64, i64, i64, i64) {
    let n = p.n::<Rational>().to_integer().try_into().unwrap();
    let m = p.m_int().unwrap();
    (n, p.k, p.ell as i64, m)
}

/// Highest weight `m(w, r)` of `U(n+1)`, 1-based entries stored 0-based.
fn highest_weight(p: &Params, w: i64, r: i64) -> Vec<i64> {
    let (n, k, ell, m) = ints(p);
    let mut out = vec![w + m + ell];
    out.extend(std::iter::repeat_n(m + ell, (k - 1) as usize));
    out.push(m + r);
    out.extend(std::iter::repeat_n(m, (n - k - 1) as usize));
    out.push(-w - r);
    out
}

fn k_type(p: &Params) -> Vec<i64> {
    let (n, k, ell, m) = ints(p);
    let mut out = vec![m + ell; k as usize];
    out.extend(std::iter::repeat_n(m, (n - k) as usize));
    out
}

/// `|Π_j (k_j − m_i − j + i − offset) / Π_{j≠i} (m_j − m_i − j + i)|`, indices 1-based.
fn product_formula(mw: &[i64], kt: &[i64], i: usize, offset: i64) -> Option<Rational> {
    let ii = i as i64;
    let num = kt
        .iter()
        .enumerate()
        .map(|(j, kj)| q(kj - mw[i - 1] - (j as i64 + 1) + ii - offset))
        .fold(Rational::one(), |acc, x| acc * x);
    let den = mw
        .iter()
        .enumerate()
        .filter(|(j, _)| j + 1 != i)
        .map(|(j, mj)| q(mj - mw[i - 1] - (j as i64 + 1) + ii))
        .fold(Rational::one(), |acc, x| acc * x);
    (!den.is_zero()).then(|| (num / den).abs())
}

fn general_a_sq(mw: &[i64], kt: &[i64], i: usize) -> Option<Rational> {
    product_formula(mw, kt, i, 1)
}

fn general_b_sq(mw: &[i64], kt: &[i64], i: usize) -> Option<Rational> {
    product_formula(mw, kt, i, 0)
}

fn index(p: &Params, shift: Shift) -> usize {
    let (n, k, _, _) = ints(p);
    match shift {
        Shift::First => 1,
        Shift::Middle => k as usize + 1,
        Shift::Last => n as usize + 1,
    }
}

fn more_params() -> Vec<Params> {
    let mut out = default_grid();
    out.extend([Params::integer(4, 2, 3, 2), Params::integer(5, 1, 2, 0), Params::integer(5, 4, 1, 3)]);
    out
}

#[test]
fn one_step_coefficients_match_product_formula() {
    for p in more_params() {
        let kt = k_type(&p);
        for w in 0..6 {
            for r in 0..=p.ell {
                let mw = highest_weight(&p, w as i64, r as i64);
                let mut total_a = Rational::zero();
                for i in 1..mw.len() + 1 {
                    let general = general_a_sq(&mw, &kt, i).expect("dominant weight");
                    total_a += general.clone();
                    match SHIFTS.iter().find(|&&s| index(&p, s) == i) {
                        Some(&s) => assert_eq!(a_sq::<Rational>(&p, s, w, r).unwrap(), general, "{p} a_{i}"),
                        None => assert!(general.is_zero(), "{p} a_{i} should vanish"),
                    }
                }
                assert_eq!(total_a, Rational::one());
                for &j in &SHIFTS {
                    if a_sq::<Rational>(&p, j, w, r).unwrap().is_zero() {
                        continue;
                    }
                    let mut shifted = mw.clone();
                    shifted[index(&p, j) - 1] += 1;
                    let mut total_b = Rational::zero();
                    for i in 1..mw.len() + 1 {
                        let general = general_b_sq(&shifted, &kt, i).expect("dominant weight");
                        total_b += general.clone();
                        match SHIFTS.iter().find(|&&s| index(&p, s) == i) {
                            Some(&s) => assert_eq!(
                                b_sq::<Rational>(&p, s, j, w, r).unwrap(),
                                general,
                                "{p} b_{i} at shift {j:?}, w={w}, r={r}"
                            ),
                            None => assert!(general.is_zero()),
                        }
                    }
                    assert_eq!(total_b, Rational::one());
                }
            }
        }
    }
}

/// `P_w^{(α,β)}(x)` by the standard three-term recurrence.
fn jacobi_value(w: usize, alpha: f64, beta: f64, x: f64) -> f64 {
    let (mut prev, mut cur) = (1.0, (alpha + 1.0) + (alpha + beta + 2.0) * (x - 1.0) / 2.0);
    if w == 0 {
        return prev;
    }
    for j in 1..w {
        let j = j as f64;
        let s = 2.0 * j + alpha + beta;
        let next = ((s + 1.0) * ((s + 2.0) * s * x + alpha * alpha - beta * beta) * cur
            - 2.0 * (j + alpha) * (j + beta) * (s + 2.0) * prev)
            / (2.0 * (j + 1.0) * (j + alpha + beta + 1.0) * s);
        prev = cur;
        cur = next;
    }
    cur
}

fn binom_f(x: f64, j: usize) -> f64 {
    (1..=j).map(|i| (x - j as f64 + i as f64) / i as f64).product()
}

#[test]
fn scalar_case_is_a_jacobi_family() {
    for (n, m) in [(2, 0), (2, 1), (3, 0), (3, 2), (4, 1)] {
        let p = Params::integer(n, 1, 0, m);
        let (alpha, beta) = ((n - 1) as f64, m as f64);
        for w in 0..7 {
            let f = f_wr::<f64>(&p, w, 0).unwrap();
            let norm = binom_f(w as f64 + alpha, w);
            for i in 0..=10 {
                let u = i as f64 / 10.0;
                let expected = jacobi_value(w, alpha, beta, 1.0 - 2.0 * u) / norm;
                let got = f.poly.evaluate(&u)[0];
                assert!((got - expected).abs() < 1e-11 * expected.abs().max(1.0), "n={n} m={m} w={w} u={u}");
            }
        }
    }
}

#[test]
fn scalar_three_term_matches_jacobi_recurrence() {
    for (n, m) in [(2, 0), (2, 1), (3, 0), (3, 2), (4, 1), (6, 3)] {
        let p = Params::integer(n, 1, 0, m);
        let (a, b) = (q(n - 1), q(m));
        let two = q(2);
        for w in 0..8i64 {
            let wq = q(w);
            let s = two.clone() * wq.clone() + a.clone() + b.clone();
            // x P_w = up P_{w+1} + mid P_w + down P_{w−1}, then normalize P_j(1) = 1.
            let den = (s.clone() + q(1)) * (s.clone() + q(2)) * s.clone();
            let up = two.clone() * (wq.clone() + q(1)) * (wq.clone() + a.clone() + b.clone() + q(1)) * s.clone()
                / den.clone();
            let mid = -(s.clone() + q(1)) * (a.clone() * a.clone() - b.clone() * b.clone()) / den.clone();
            let down = two.clone() * (wq.clone() + a.clone()) * (wq.clone() + b.clone()) * (s.clone() + q(2)) / den;
            let up = up * (wq.clone() + q(1) + a.clone()) / (wq.clone() + q(1));
            let down = if w == 0 { Rational::zero() } else { down * wq.clone() / (wq.clone() + a.clone()) };
            // 1 − u = (1 + x)/2.
            let expected_c = up / two.clone();
            let expected_b = (q(1) + mid) / two.clone();
            let expected_a = down / two.clone();
            let bl = blocks::<Rational>(&p, w as usize).unwrap();
            assert_eq!(bl.c[(0, 0)], expected_c, "n={n} m={m} w={w}");
            assert_eq!(bl.b[(0, 0)], expected_b, "n={n} m={m} w={w}");
            assert_eq!(bl.a[(0, 0)], expected_a, "n={n} m={m} w={w}");
        }
    }
}

fn pochhammer(x: f64, j: usize) -> f64 {
    (0..j).map(|i| x + i as f64).product()
}

#[test]
fn diagonal_series_decouples_into_gauss_series() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..20 {
        let dim = rng.random_range(1..=4);
        let a: Vec<f64> = (0..dim).map(|_| rng.random_range(-3.0..3.0)).collect();
        let b: Vec<f64> = (0..dim).map(|_| rng.random_range(-3.0..3.0)).collect();
        let c: Vec<f64> = (0..dim).map(|_| rng.random_range(0.5..4.0)).collect();
        let u: Vec<f64> = a.iter().zip(&b).map(|(x, y)| x + y + 1.0).collect();
        let v: Vec<f64> = a.iter().zip(&b).map(|(x, y)| x * y).collect();
        let series = h1_coeffs(&Matrix::diag(&c), &Matrix::diag(&u), &Matrix::diag(&v), 12).unwrap();
        for (j, term) in series.coeffs.iter().enumerate() {
            for row in 0..dim {
                for col in 0..dim {
                    let expected = if row == col {
                        pochhammer(a[row], j) * pochhammer(b[row], j)
                            / (pochhammer(c[row], j) * pochhammer(1.0, j))
                    } else {
                        0.0
                    };
                    let got = term[(row, col)];
                    assert!((got - expected).abs() <= 1e-12 * expected.abs().max(1.0), "term {j}: {got} vs {expected}");
                }
            }
        }
    }
}

#[test]
fn series_solves_the_hypergeometric_equation() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let dim = 3;
    let random = |rng: &mut ChaCha8Rng| Matrix::from_fn(dim, dim, |_, _| rng.random_range(-1.0..1.0));
    let c = &Matrix::<f64>::identity(dim).scale(&3.0) + &random(&mut rng);
    let (u_mat, v_mat) = (random(&mut rng), random(&mut rng));
    let terms = 120;
    let series = h1_coeffs(&c, &u_mat, &v_mat, terms).unwrap();
    let v0: Vec<f64> = (0..dim).map(|_| rng.random_range(-1.0..1.0)).collect();
    let coeffs: Vec<Vec<f64>> = series.coeffs.iter().map(|m| m.mul_vec(&v0)).collect();
    let f = VecPoly::new(dim, coeffs).unwrap();
    let (d1, d2) = (f.derivative(), f.derivative().derivative());
    for _ in 0..20 {
        let x: f64 = rng.random_range(0.0..0.5);
        let (f0, f1, f2) = (f.evaluate(&x), d1.evaluate(&x), d2.evaluate(&x));
        let drift = &c - &u_mat.scale(&x);
        let a = drift.mul_vec(&f1);
        let b = v_mat.mul_vec(&f0);
        for i in 0..dim {
            let res = x * (1.0 - x) * f2[i] + a[i] - b[i];
            let scale = (x * (1.0 - x) * f2[i]).abs().max(a[i].abs()).max(b[i].abs()).max(1.0);
            assert!(res.abs() <= 1e-10 * scale, "u={x}: residual {res}");
        }
    }
}
