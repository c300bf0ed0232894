use mvop::family::f_wr;
use mvop::linalg::{Matrix, VecPoly};
use mvop::operators::{apply_d_u, apply_e_u, d_eigen_residual, e_eigen_residual};
use mvop::orthogonality::{gram, gram_refined, WeightSpec};
use mvop::recurrence::blocks;
use mvop::spectral::{build_m, superdiagonal_closed_form};
use mvop::verify::default_grid;
use mvop::walk::Chain;
use mvop::{Params, Rational, StructureSetExact, StructureSetF32, StructureSetF64};
use proptest::prelude::*;

fn params() -> impl Strategy<Value = Params> {
    (2i64..=6, 0usize..=3, 0i64..=4)
        .prop_flat_map(|(n, ell, m)| (Just(n), 1..n, Just(ell), Just(m)))
        .prop_map(|(n, k, ell, m)| Params::integer(n, k, ell, m))
}

fn grid_point() -> impl Strategy<Value = Params> {
    prop::sample::select(default_grid())
}

fn matrix(dim: usize) -> impl Strategy<Value = Matrix<f64>> {
    prop::collection::vec(-1.0f64..1.0, dim * dim)
        .prop_map(move |v| Matrix::from_row_major(dim, dim, v).unwrap())
}

fn vec_poly(dim: usize, max_degree: usize) -> impl Strategy<Value = VecPoly<f64>> {
    prop::collection::vec(prop::collection::vec(-1.0f64..1.0, dim), 1..=max_degree + 1)
        .prop_map(move |c| VecPoly::new(dim, c).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn mu_is_a_function_of_lambda(p in params(), w in 0usize..30, r in 0usize..4) {
        prop_assume!(r <= p.ell);
        let lambda = p.lambda_int(w, r).unwrap();
        prop_assert_eq!(p.mu_of_lambda_int(r, lambda), p.mu_int(w, r));
        prop_assert!(p.lambda_int(w + 1, r).unwrap() < lambda);
    }

    #[test]
    fn matrix_product_is_associative(a in matrix(3), b in matrix(3), c in matrix(3)) {
        let left = &(&a * &b) * &c;
        let right = &a * &(&b * &c);
        prop_assert!((&left - &right).max_abs() <= 1e-12);
    }

    #[test]
    fn derivative_matches_finite_difference(f in vec_poly(3, 6), u in 0.0f64..1.0) {
        let h = 1e-5;
        let exact = f.derivative().evaluate(&u);
        let (hi, lo) = (f.evaluate(&(u + h)), f.evaluate(&(u - h)));
        for i in 0..3 {
            prop_assert!(((hi[i] - lo[i]) / (2.0 * h) - exact[i]).abs() <= 1e-6);
        }
    }

    #[test]
    fn reflection_is_an_involution(f in vec_poly(2, 6), u in 0.0f64..1.0) {
        let g = f.reflect();
        let (a, b) = (f.evaluate(&u), g.evaluate(&(1.0 - u)));
        for i in 0..2 {
            prop_assert!((a[i] - b[i]).abs() <= 1e-10 * f.max_abs().max(1.0));
        }
        prop_assert!(g.reflect().sub(&f).max_abs() <= 1e-10 * f.max_abs().max(1.0));
    }

    #[test]
    fn operators_commute(p in grid_point(), seed in vec_poly(3, 5)) {
        let s = StructureSetF64::build(&p);
        let dim = p.dim();
        let coeffs: Vec<Vec<f64>> = seed.coeffs().iter().map(|c| c[..dim].to_vec()).collect();
        let f = VecPoly::new(dim, coeffs).unwrap();
        let de = apply_d_u(&s, &apply_e_u(&s, &f));
        let ed = apply_e_u(&s, &apply_d_u(&s, &f));
        let scale = de.max_abs().max(ed.max_abs()).max(1.0);
        prop_assert!(de.sub(&ed).max_abs() <= 1e-9 * scale);
    }

    #[test]
    fn superdiagonal_does_not_depend_on_lambda(p in params(), lambda in -200.0f64..200.0) {
        let s = StructureSetF64::build(&p);
        let m = build_m(&s, &lambda).unwrap();
        prop_assert!(m.above_superdiagonal() <= 1e-10);
        for (idx, x) in m.superdiagonal().iter().enumerate() {
            let closed = superdiagonal_closed_form(&s, idx);
            prop_assert!((x - closed).abs() <= 1e-10 * closed.abs().max(1.0));
            prop_assert!(closed != 0.0);
        }
    }

    #[test]
    fn weight_is_symmetric_positive_definite(p in params(), u in 0.001f64..0.999) {
        let spec = WeightSpec::new(&p).unwrap();
        let w = spec.w_at(u);
        prop_assert_eq!(w.transpose(), w.clone());
        prop_assert!(spec.min_eigenvalue(u) > 0.0);
        let via = spec.w_via_psi(u);
        prop_assert!((&w - &via).max_abs() <= 1e-12 * w.max_abs().max(1.0));
    }

    #[test]
    fn blocks_are_stochastic(p in params(), w in 0usize..40) {
        let b = blocks::<f64>(&p, w).unwrap();
        prop_assert!(b.min_entry() >= 0.0);
        for sum in b.row_sums() {
            prop_assert!((sum - 1.0).abs() <= 1e-12);
        }
        if w == 0 {
            prop_assert!(b.a.is_zero());
        }
    }

    #[test]
    fn walk_rows_are_distributions(p in params(), w in 0usize..30, r in 0usize..4) {
        prop_assume!(p.in_set(w, r));
        let mut chain = Chain::new(&p).unwrap();
        let t = chain.transitions((w, r)).unwrap();
        let total: f64 = t.iter().map(|x| x.1).sum();
        prop_assert!((total - 1.0).abs() <= 1e-12);
        prop_assert!(t.iter().filter(|x| x.1 > 0.0).all(|((w2, s), _)| p.in_set(*w2, *s)));
    }
}

#[test]
fn doubling_the_quadrature_changes_nothing() {
    let mut grid = default_grid();
    grid.push(Params::jacobi(0.5, 1.5, 1, 2));
    for p in grid {
        let (base, fine) = (gram(&p, 4).unwrap(), gram_refined(&p, 4, 2).unwrap());
        let scale = base.entries.iter().flatten().fold(0.0f64, |acc, x| acc.max(x.abs()));
        for (a, b) in base.entries.iter().zip(&fine.entries) {
            for (x, y) in a.iter().zip(b) {
                assert!((x - y).abs() <= 1e-12 * scale, "{p}: {x} vs {y}");
            }
        }
    }
}

#[test]
fn exact_family_has_zero_residuals() {
    for p in [Params::integer(2, 1, 1, 0), Params::integer(3, 2, 2, 1), Params::integer(3, 1, 2, 0)] {
        let s = StructureSetExact::build(&p);
        for (w, r) in p.labels(3) {
            let f = f_wr::<Rational>(&p, w, r).unwrap();
            assert_eq!(d_eigen_residual(&s, &f.poly, &f.lambda).abs, 0.0, "{p} ({w},{r})");
            assert_eq!(e_eigen_residual(&s, &f.poly, &f.mu).abs, 0.0, "{p} ({w},{r})");
        }
    }
}

#[test]
fn single_precision_family() {
    for p in default_grid() {
        let s = StructureSetF32::build(&p);
        for (w, r) in p.labels(3) {
            let f = f_wr::<f32>(&p, w, r).unwrap();
            assert!(d_eigen_residual(&s, &f.poly, &f.lambda).within(1e-4), "{p} ({w},{r})");
            assert!(e_eigen_residual(&s, &f.poly, &f.mu).within(1e-4), "{p} ({w},{r})");
            let exact = f_wr::<f64>(&p, w, r).unwrap();
            let gap = f.poly.to_f64().sub(&exact.poly).max_abs();
            assert!(gap <= 1e-3 * exact.poly.max_abs().max(1.0), "{p} ({w},{r}): {gap}");
        }
    }
}

#[test]
fn floating_family_matches_exact_family() {
    for p in default_grid() {
        for (w, r) in p.labels(4) {
            let exact = f_wr::<Rational>(&p, w, r).unwrap().poly.to_f64();
            let float = f_wr::<f64>(&p, w, r).unwrap().poly;
            assert!(float.sub(&exact).max_abs() <= 1e-12 * exact.max_abs().max(1.0), "{p} ({w},{r})");
        }
    }
}
