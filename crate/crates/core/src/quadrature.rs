//! Gauss quadrature rules on [-1, 1] for the weights the sphere grid and the
//! zonal kernel integrals need.
//!
//! * Legendre (weight 1): Newton iteration on the three-term recurrence.
//! * Chebyshev second kind (weight sqrt(1 - x^2)): closed form.
//! * Chebyshev third kind (weight sqrt((1+x)/(1-x))): closed form. This is
//!   the singularity-adapted rule for integrands with an integrable
//!   (1-x)^(-1/2) endpoint singularity.

use std::f64::consts::PI;

/// Nodes and positive weights of a quadrature rule on [-1, 1].
#[derive(Debug, Clone)]
pub struct GaussRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }
}

/// Gauss-Legendre rule with `order` points, exact for degree 2*order - 1.
pub fn gauss_legendre(order: usize) -> GaussRule {
    assert!(order >= 1, "quadrature order must be positive");
    let n = order;
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Chebyshev-angle initial guess, then Newton on P_n
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, d) = legendre_and_derivative(n, x);
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre_and_derivative(n, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    GaussRule { nodes, weights }
}

fn legendre_and_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
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

/// Gauss-Chebyshev rule of the second kind: weight sqrt(1 - x^2).
pub fn gauss_chebyshev2(order: usize) -> GaussRule {
    assert!(order >= 1);
    let np1 = (order + 1) as f64;
    let mut nodes = Vec::with_capacity(order);
    let mut weights = Vec::with_capacity(order);
    for k in 1..=order {
        let theta = k as f64 * PI / np1;
        nodes.push(theta.cos());
        weights.push(PI / np1 * theta.sin() * theta.sin());
    }
    GaussRule { nodes, weights }
}

/// Gauss-Chebyshev rule of the third kind: weight sqrt((1+x)/(1-x)).
pub fn gauss_chebyshev3(order: usize) -> GaussRule {
    assert!(order >= 1);
    let denom = (2 * order + 1) as f64;
    let mut nodes = Vec::with_capacity(order);
    let mut weights = Vec::with_capacity(order);
    for k in 1..=order {
        let theta = (2 * k - 1) as f64 * PI / denom;
        let x = theta.cos();
        nodes.push(x);
        weights.push(2.0 * PI / denom * (1.0 + x));
    }
    GaussRule { nodes, weights }
}

/// Chebyshev polynomial of the second kind U_l(x) by recurrence.
pub fn chebyshev_u(l: usize, x: f64) -> f64 {
    let mut u0 = 1.0;
    let mut u1 = 2.0 * x;
    if l == 0 {
        return u0;
    }
    for _ in 2..=l {
        let u2 = 2.0 * x * u1 - u0;
        u0 = u1;
        u1 = u2;
    }
    u1
}
