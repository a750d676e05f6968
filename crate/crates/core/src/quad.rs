//! Deterministic Gauss-Hermite quadrature on the line and its tensorization
//! over the complex plane with Gaussian weights.
//!
//! All reductions use a fixed pairwise (tree) summation order, so identical
//! inputs produce bit-identical results.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::kernels::poly_rbf_kernel;
use crate::polygauss::PolyGaussRep;

pub const MAX_ORDER: usize = 256;

/// A Gauss-Hermite rule for the weight `e^{-x^2}` on the real line:
/// `int f(x) e^{-x^2} dx ~= sum w_i f(x_i)`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl QuadRule {
    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// `int f(x) e^{-x^2} dx` for an `f` supplied without the weight.
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        let mut vals: Vec<f64> = self
            .nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .collect();
        pairwise_sum_real(&mut vals)
    }
}

/// Gauss-Hermite nodes and weights of the given order (Golub-Welsch from the
/// symmetric tridiagonal Jacobi matrix). Rules are built once and cached.
pub fn gauss_hermite(order: usize) -> Result<Arc<QuadRule>> {
    if order == 0 || order > MAX_ORDER {
        return Err(Error::QuadOrder(order));
    }
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<QuadRule>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(rule) = cache.lock().unwrap().get(&order) {
        return Ok(Arc::clone(rule));
    }
    let rule = Arc::new(build_rule(order));
    cache.lock().unwrap().insert(order, Arc::clone(&rule));
    Ok(rule)
}

/// Orthonormal Hermite values `(p_{order}(x), p_{order-1}(x), sum_{k<order} p_k(x)^2)`
/// for the weight `e^{-x^2}`.
fn orthonormal_hermite_scan(order: usize, x: f64) -> (f64, f64, f64) {
    let mut prev = std::f64::consts::PI.powf(-0.25);
    let mut sum_sq = prev * prev;
    if order == 1 {
        let cur = std::f64::consts::SQRT_2 * x * prev;
        return (cur, prev, sum_sq);
    }
    let mut cur = std::f64::consts::SQRT_2 * x * prev;
    for k in 1..order {
        sum_sq += cur * cur;
        let kf = k as f64;
        let next = x * (2.0 / (kf + 1.0)).sqrt() * cur - (kf / (kf + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
    }
    (cur, prev, sum_sq)
}

fn build_rule(order: usize) -> QuadRule {
    // Golub-Welsch: eigenvalues of the Jacobi matrix (zero diagonal,
    // off-diagonal sqrt(k/2)) seed the nodes, then two Newton steps on the
    // orthonormal Hermite polynomial sharpen them to full precision and the
    // weights come from the Christoffel function 1/sum_k p_k(x)^2.
    let mut jac = DMatrix::<f64>::zeros(order, order);
    for k in 1..order {
        let off = (k as f64 / 2.0).sqrt();
        jac[(k - 1, k)] = off;
        jac[(k, k - 1)] = off;
    }
    let eig = jac.symmetric_eigen();
    let mut pairs: Vec<(f64, f64)> = (0..order)
        .map(|i| {
            let mut x = eig.eigenvalues[i];
            for _ in 0..2 {
                let (pn, pn_1, _) = orthonormal_hermite_scan(order, x);
                // p_n'(x) = sqrt(2n) p_{n-1}(x)
                let deriv = (2.0 * order as f64).sqrt() * pn_1;
                if deriv != 0.0 {
                    x -= pn / deriv;
                }
            }
            let (_, _, sum_sq) = orthonormal_hermite_scan(order, x);
            (x, 1.0 / sum_sq)
        })
        .collect();
    pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    // enforce the +/- symmetry of the rule exactly
    let n = pairs.len();
    for i in 0..n / 2 {
        let j = n - 1 - i;
        let x = 0.5 * (pairs[j].0 - pairs[i].0);
        let w = 0.5 * (pairs[i].1 + pairs[j].1);
        pairs[i] = (-x, w);
        pairs[j] = (x, w);
    }
    if n % 2 == 1 {
        pairs[n / 2].0 = 0.0;
    }
    QuadRule {
        nodes: pairs.iter().map(|p| p.0).collect(),
        weights: pairs.iter().map(|p| p.1).collect(),
    }
}

/// Pairwise (tree) summation; consumes the buffer.
pub(crate) fn pairwise_sum(vals: &mut [Complex64]) -> Complex64 {
    let mut len = vals.len();
    if len == 0 {
        return Complex64::new(0.0, 0.0);
    }
    while len > 1 {
        let half = len / 2;
        for i in 0..half {
            vals[i] = vals[2 * i] + vals[2 * i + 1];
        }
        if len % 2 == 1 {
            vals[half] = vals[len - 1];
            len = half + 1;
        } else {
            len = half;
        }
    }
    vals[0]
}

pub(crate) fn pairwise_sum_real(vals: &mut [f64]) -> f64 {
    let mut len = vals.len();
    if len == 0 {
        return 0.0;
    }
    while len > 1 {
        let half = len / 2;
        for i in 0..half {
            vals[i] = vals[2 * i] + vals[2 * i + 1];
        }
        if len % 2 == 1 {
            vals[half] = vals[len - 1];
            len = half + 1;
        } else {
            len = half;
        }
    }
    vals[0]
}

/// Plane measures used by the inner products of the Fock and RBF spaces.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Measure {
    /// `(alpha/pi) e^{-alpha |z|^2} dlambda(z)`
    FockPlane { alpha: f64 },
    /// `(2/(pi gamma^2)) e^{(z - conj z)^2 / gamma^2} dlambda(z)`; integrands
    /// must carry the analytic factor `e^{-z^2/gamma^2}` in both slots so the
    /// combined weight is the genuine 2D Gaussian `e^{-2|z|^2/gamma^2}`.
    RbfPlane { gamma: f64 },
}

impl Measure {
    pub fn fock(alpha: f64) -> Result<Self> {
        if !alpha.is_finite() || alpha <= 0.0 {
            return Err(Error::Domain(format!("fock alpha must be > 0, got {alpha}")));
        }
        Ok(Measure::FockPlane { alpha })
    }

    pub fn rbf(gamma: f64) -> Result<Self> {
        if !gamma.is_finite() || gamma <= 0.0 {
            return Err(Error::Domain(format!("rbf gamma must be > 0, got {gamma}")));
        }
        Ok(Measure::RbfPlane { gamma })
    }

    /// Scale factor from unit Gauss-Hermite coordinates `(u, v)` to `z`.
    fn node_scale(&self) -> f64 {
        match *self {
            Measure::FockPlane { alpha } => 1.0 / alpha.sqrt(),
            Measure::RbfPlane { gamma } => gamma / std::f64::consts::SQRT_2,
        }
    }
}

/// `int f(x) conj(g(x)) dx` on the line, evaluated by writing the integrand
/// as `(f conj(g) e^{x^2}) e^{-x^2}` on the node set.
pub fn inner_l2<F, G>(f: F, g: G, rule: &QuadRule) -> Result<Complex64>
where
    F: Fn(f64) -> Complex64,
    G: Fn(f64) -> Complex64,
{
    let mut vals = Vec::with_capacity(rule.order());
    for (i, (&x, &w)) in rule.nodes.iter().zip(&rule.weights).enumerate() {
        let v = f(x) * g(x).conj() * (x * x).exp() * w;
        if !v.re.is_finite() || !v.im.is_finite() {
            return Err(Error::NonFinite { context: "inner_l2", node: i });
        }
        vals.push(v);
    }
    Ok(pairwise_sum(&mut vals))
}

/// Inner product over the complex plane against `measure`, by the tensor
/// Gauss-Hermite rule with the measure's Gaussian absorbed into the weights.
pub fn inner_plane<F, G>(f: F, g: G, measure: &Measure, rule: &QuadRule) -> Result<Complex64>
where
    F: Fn(Complex64) -> Complex64,
    G: Fn(Complex64) -> Complex64,
{
    let s = measure.node_scale();
    let n = rule.order();
    let mut row_sums = Vec::with_capacity(n);
    for (i, (&u, &wu)) in rule.nodes.iter().zip(&rule.weights).enumerate() {
        let mut row = Vec::with_capacity(n);
        for (j, (&v, &wv)) in rule.nodes.iter().zip(&rule.weights).enumerate() {
            let z = Complex64::new(s * u, s * v);
            let mut val = f(z) * g(z).conj();
            if let Measure::RbfPlane { gamma } = *measure {
                // restore the mismatch between the RBF weight and the
                // absorbed Gaussian: e^{2 Re(z^2) / gamma^2}
                val *= (2.0 * (z.re * z.re - z.im * z.im) / (gamma * gamma)).exp();
            }
            let term = val * (wu * wv);
            if !term.re.is_finite() || !term.im.is_finite() {
                return Err(Error::NonFinite { context: "inner_plane", node: i * n + j });
            }
            row.push(term);
        }
        row_sums.push(pairwise_sum(&mut row));
    }
    Ok(pairwise_sum(&mut row_sums) / std::f64::consts::PI)
}

/// Margin reserved for the entire (non-polynomial) exponential factor that
/// the reproducing integrand carries.
const REPRODUCE_DEGREE_MARGIN: usize = 16;

/// Evaluates the reproducing integral
/// `(2/(gamma^2 pi)) int f(z) conj(K_{RBF,N}(z, w)) e^{(z - conj z)^2/gamma^2} dlambda(z)`
/// for `f` held as a polynomial-times-Gaussian representation. Within the
/// rule's exactness budget this returns `f(w)` when `f` lies in the order-`N`
/// polyanalytic RBF space.
pub fn reproduce_rbf(
    f: &PolyGaussRep,
    n_order: u32,
    w: Complex64,
    rule: &QuadRule,
) -> Result<Complex64> {
    let gamma = f.gamma();
    let degree = f.deg_z() as usize
        + f.deg_zbar() as usize
        + 2 * (n_order as usize - 1)
        + REPRODUCE_DEGREE_MARGIN;
    let budget = 2 * rule.order() - 1;
    if degree > budget {
        return Err(Error::DegreeOverflow { degree, budget });
    }
    let measure = Measure::rbf(gamma)?;
    inner_plane(
        |z| f.evaluate(z),
        |z| poly_rbf_kernel(gamma, n_order, z, w),
        &measure,
        rule,
    )
}
