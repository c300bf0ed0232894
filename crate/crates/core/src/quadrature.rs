//! Gauss rules on `[0, 1]`.

use nalgebra::{DMatrix, SymmetricEigen};
use statrs::function::beta::beta;

/// Nodes and weights of an interpolatory rule on `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl QuadRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(x, w)| w * f(*x)).sum()
    }
}

/// Number of Gauss nodes that integrates polynomials of `max_degree` exactly.
pub fn nodes_for_degree(max_degree: usize) -> usize {
    max_degree / 2 + 1
}

/// Gauss–Legendre rule on `[0, 1]` exact up to `max_degree`.
pub fn quad_rule(max_degree: usize) -> QuadRule {
    gauss_legendre(nodes_for_degree(max_degree))
}

/// `count`-point Gauss–Legendre rule on `[0, 1]`, by Newton iteration on `P_count`.
pub fn gauss_legendre(count: usize) -> QuadRule {
    let n = count;
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() <= 1e-16 {
                let (_, d) = legendre_with_derivative(n, x);
                dp = d;
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        // map [−1, 1] → [0, 1]
        nodes[i] = (1.0 - x) / 2.0;
        nodes[n - 1 - i] = (1.0 + x) / 2.0;
        weights[i] = w / 2.0;
        weights[n - 1 - i] = w / 2.0;
    }
    QuadRule { nodes, weights }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// `count`-point Gauss rule for `∫₀¹ f(u) u^b (1−u)^a du`, by the
/// Golub–Welsch eigenvalue method on the Jacobi matrix.
pub fn gauss_jacobi(count: usize, a: f64, b: f64) -> QuadRule {
    assert!(a > -1.0 && b > -1.0, "Jacobi exponents must exceed -1");
    let n = count;
    let ab = a + b;
    // Recurrence of the monic Jacobi polynomials on [−1, 1] with weight (1−x)^a (1+x)^b.
    let diag = |j: usize| {
        if j == 0 {
            (b - a) / (ab + 2.0)
        } else {
            let s = 2.0 * j as f64 + ab;
            (b * b - a * a) / (s * (s + 2.0))
        }
    };
    let off = |j: usize| {
        let jf = j as f64;
        if j == 1 {
            4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab).powi(2) * (3.0 + ab))
        } else {
            let s = 2.0 * jf + ab;
            4.0 * jf * (jf + a) * (jf + b) * (jf + ab) / (s * s * (s + 1.0) * (s - 1.0))
        }
    };
    let mut jm = DMatrix::<f64>::zeros(n, n);
    for j in 0..n {
        jm[(j, j)] = (diag(j) + 1.0) / 2.0;
        if j + 1 < n {
            let e = off(j + 1).sqrt() / 2.0;
            jm[(j, j + 1)] = e;
            jm[(j + 1, j)] = e;
        }
    }
    let eig = SymmetricEigen::new(jm);
    let mass = beta(b + 1.0, a + 1.0);
    let mut pairs: Vec<(f64, f64)> = (0..n)
        .map(|i| (eig.eigenvalues[i], mass * eig.eigenvectors[(0, i)].powi(2)))
        .collect();
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0));
    QuadRule { nodes: pairs.iter().map(|p| p.0).collect(), weights: pairs.iter().map(|p| p.1).collect() }
}
