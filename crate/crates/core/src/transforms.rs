//! Convolution operators with Hermite windows, Segal-Bargmann and true/full
//! polyanalytic Bargmann transforms with quadrature inverses, and the Weyl
//! operator families (Fock side, true polyanalytic, RBF side).
//!
//! Bargmann-type integrals are evaluated on a Gauss-Hermite rule shifted to
//! the integrand's own Gaussian center, so complex arguments of moderate size
//! never run through catastrophically large intermediates.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::kernels::normalized_fock_kernel;
use crate::quad::{gauss_hermite, pairwise_sum, QuadRule};
use crate::specfun::{binomial, factorial, hermite_poly, ito_hermite_at, ItoHermiteIndex};

const SQRT_2: f64 = std::f64::consts::SQRT_2;
const PI: f64 = std::f64::consts::PI;

/// Default line-rule order for the transform integrals.
pub const DEFAULT_LINE_ORDER: usize = 96;

/// Guard against callables without Gaussian decay: the Gaussian-free part
/// `psi(x) e^{x^2/2}` may not exceed this at any node.
const NODE_MAGNITUDE_GUARD: f64 = 1e80;

/// A time-domain signal: either finite coefficients against the normalized
/// Hermite basis `psi_n`, or a raw callable with Gaussian decay.
pub enum Signal {
    PsiBasis(Vec<Complex64>),
    Callable(Box<dyn Fn(f64) -> Complex64 + Send + Sync>),
}

impl Signal {
    pub fn psi_basis(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::Domain("psi-basis coefficients must be finite".into()));
        }
        Ok(Signal::PsiBasis(coeffs))
    }

    /// Single basis function `psi_n`.
    pub fn psi(n: usize) -> Self {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); n + 1];
        coeffs[n] = Complex64::new(1.0, 0.0);
        Signal::PsiBasis(coeffs)
    }

    pub fn from_fn<F: Fn(f64) -> Complex64 + Send + Sync + 'static>(f: F) -> Self {
        Signal::Callable(Box::new(f))
    }

    /// Pointwise value.
    pub fn eval(&self, x: f64) -> Complex64 {
        match self {
            Signal::PsiBasis(_) => self.gaussian_free(x) * (-0.5 * x * x).exp(),
            Signal::Callable(f) => f(x),
        }
    }

    /// `psi(x) e^{x^2/2}`: polynomial for basis signals, hence stable at any
    /// real argument the shifted rules produce.
    fn gaussian_free(&self, x: f64) -> Complex64 {
        match self {
            Signal::PsiBasis(coeffs) => {
                // phi_n = H_n / (sqrt(n! 2^n) pi^{1/4}) by the normalized
                // recurrence
                let mut acc = Complex64::new(0.0, 0.0);
                let mut prev = PI.powf(-0.25);
                let mut cur = SQRT_2 * x * prev;
                if let Some(&c0) = coeffs.first() {
                    acc += c0 * prev;
                }
                if let Some(&c1) = coeffs.get(1) {
                    acc += c1 * cur;
                }
                for (n, &cn) in coeffs.iter().enumerate().skip(2) {
                    let kf = (n - 1) as f64;
                    let next = x * (2.0 / (kf + 1.0)).sqrt() * cur - (kf / (kf + 1.0)).sqrt() * prev;
                    prev = cur;
                    cur = next;
                    acc += cn * cur;
                }
                acc
            }
            Signal::Callable(f) => f(x) * (0.5 * x * x).exp(),
        }
    }
}

/// Weyl parameter: complex shift `a + ib` and polyanalytic order `ell` on one
/// of the three sides.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeylParam {
    pub a: f64,
    pub b: f64,
    pub ell: u32,
    pub side: WeylSide,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeylSide {
    Fock,
    TruePoly,
    Rbf,
}

impl WeylParam {
    pub fn fock(a: f64, b: f64) -> Self {
        WeylParam { a, b, ell: 1, side: WeylSide::Fock }
    }

    pub fn true_poly(a: f64, b: f64, ell: u32) -> Result<Self> {
        if ell < 1 {
            return Err(Error::Domain("weyl ell must be >= 1".into()));
        }
        Ok(WeylParam { a, b, ell, side: WeylSide::TruePoly })
    }

    pub fn rbf(a: f64, b: f64, ell: u32) -> Result<Self> {
        if ell < 1 {
            return Err(Error::Domain("weyl ell must be >= 1".into()));
        }
        Ok(WeylParam { a, b, ell, side: WeylSide::Rbf })
    }

    pub fn beta(&self) -> Complex64 {
        Complex64::new(self.a, self.b)
    }
}

/// Window normalization absorbed into the closed-form Weyl operators.
pub fn weyl_normalization(ell: u32) -> f64 {
    factorial(ell - 1) * 2f64.powi(ell as i32 - 1)
}

/// Dispatches the Weyl operator named by `param.side`.
pub fn weyl_apply<F: Fn(Complex64) -> Complex64>(
    param: &WeylParam,
    f: F,
    z: Complex64,
) -> Complex64 {
    match param.side {
        WeylSide::Fock => weyl_fock(param.beta(), f, z),
        WeylSide::TruePoly => weyl_true_poly(param, f, z),
        WeylSide::Rbf => weyl_rbf(param, f, z),
    }
}

/// Which complex extension of the Hermite-window convolution to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Extension {
    Analytic,
    Polyanalytic,
}

/// Closed form of the convolution `psi_m * psi_n` extended off the real line.
///
/// Polyanalytic: `e^{-z^2/4} H_{m,n}(z/sqrt2, conj(z)/sqrt2) / sqrt(m! n!)`
/// with the window degree `m` on the anti-holomorphic slot, so the result is
/// polyanalytic of order `m + 1`. Analytic: both slots `z/sqrt2`.
pub fn conv_psi_closed(m: u32, n: u32, z: Complex64, extension: Extension) -> Complex64 {
    let idx = ItoHermiteIndex { n: m, m: n, alpha: 1.0 };
    let zs = z / SQRT_2;
    let second = match extension {
        Extension::Analytic => zs,
        Extension::Polyanalytic => z.conj() / SQRT_2,
    };
    (-z * z / 4.0).exp() * ito_hermite_at(idx, zs, second) / (factorial(m) * factorial(n)).sqrt()
}

/// Algebraic closed form of `h_k * h_ell` (requires `k <= ell`):
/// `sqrt(pi) e^{-x^2/4} sum_j (-1)^j C(k,j) 2^j ell!/(ell-j)! x^{k+ell-2j}`.
pub fn conv_hermite_algebraic(k: u32, ell: u32, x: f64) -> Result<f64> {
    if k > ell {
        return Err(Error::Domain(format!("conv_hermite_algebraic needs k <= ell, got {k} > {ell}")));
    }
    let mut falling = 1.0f64; // ell!/(ell-j)!
    let mut sum = 0.0f64;
    for j in 0..=k {
        if j > 0 {
            falling *= (ell - j + 1) as f64;
        }
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign * binomial(k, j) * 2f64.powi(j as i32) * falling
            * x.powi((k + ell - 2 * j) as i32);
    }
    Ok(PI.sqrt() * (-x * x / 4.0).exp() * sum)
}

/// Convolution of modulated Hermite functions `(M_x h_k * M_u h_m)(lambda)`:
/// `sqrt(pi) i^{m-k} 2^{(k+m)/2} e^{-lambda^2/4 + i lambda (x+u)/2}
///  e^{-(x-u)^2/4} H_{k,m}((u-x-i lambda)/sqrt2, (u-x+i lambda)/sqrt2)`.
///
/// The slot order is the one that reproduces the defining integral; it also
/// restricts at `x = u = 0` to the plain Hermite convolution.
pub fn modulated_conv(k: u32, m: u32, x: f64, u: f64, lambda: f64) -> Complex64 {
    let i_pow = Complex64::new(0.0, 1.0).powi(m as i32 - k as i32);
    let first = Complex64::new(u - x, -lambda) / SQRT_2;
    let second = Complex64::new(u - x, lambda) / SQRT_2;
    let idx = ItoHermiteIndex { n: k, m, alpha: 1.0 };
    PI.sqrt()
        * i_pow
        * 2f64.powf((k + m) as f64 / 2.0)
        * (Complex64::new(-lambda * lambda / 4.0, lambda * (x + u) / 2.0)).exp()
        * (-(x - u) * (x - u) / 4.0).exp()
        * ito_hermite_at(idx, first, second)
}

/// Stable Bargmann-type line integral
/// `c int H_{ell-1}(sqrt2 Re(z) - x) A_z(x) psi(x) dx` with the rule shifted
/// to the integrand's Gaussian center `Re(z)/sqrt2`.
fn bargmann_integral(ell: u32, psi: &Signal, z: Complex64, rule: &QuadRule) -> Result<Complex64> {
    let (a, b) = (z.re, z.im);
    let s = a / SQRT_2;
    let pref = PI.powf(-0.25)
        * (-z * z / 2.0 + Complex64::new(a * a / 2.0, a * b)).exp();
    let mut vals = Vec::with_capacity(rule.order());
    for (i, (&t, &w)) in rule.nodes().iter().zip(rule.weights()).enumerate() {
        let x = s + t;
        let phi = psi.gaussian_free(x);
        if !phi.re.is_finite() || !phi.im.is_finite() || phi.norm() > NODE_MAGNITUDE_GUARD {
            return Err(Error::NonFinite { context: "bargmann integrand", node: i });
        }
        let herm = if ell == 1 { 1.0 } else { hermite_poly(ell - 1, s - t) };
        let osc = Complex64::new(0.0, SQRT_2 * b * t).exp();
        vals.push(w * herm * osc * phi);
    }
    Ok(pref * pairwise_sum(&mut vals))
}

/// Segal-Bargmann transform `(B psi)(z)`; maps `psi_k` to `z^k/sqrt(k!)`.
pub fn bargmann(psi: &Signal, z: Complex64) -> Result<Complex64> {
    true_bargmann(1, psi, z)
}

/// True polyanalytic Bargmann transform of order `ell`, with the window
/// normalization `(2^{ell-1} (ell-1)!)^{-1/2}` included so the map is a
/// unitary onto the order-`ell` true polyanalytic Fock space.
pub fn true_bargmann(ell: u32, psi: &Signal, z: Complex64) -> Result<Complex64> {
    if ell < 1 {
        return Err(Error::Domain("bargmann order ell must be >= 1".into()));
    }
    let rule = gauss_hermite(DEFAULT_LINE_ORDER)?;
    let c = 1.0 / (2f64.powi(ell as i32 - 1) * factorial(ell - 1)).sqrt();
    Ok(c * bargmann_integral(ell, psi, z, &rule)?)
}

/// Inverse of [`true_bargmann`] by a plane quadrature of
/// `c (1/pi) int H_{ell-1}(sqrt2 Re z - x) conj(A_z(x)) F(z) e^{-|z|^2} dlambda(z)`.
///
/// The rule is anisotropic and recentred: the integrand's Gaussian part is
/// `e^{-(3/2)(Re z - sqrt2 x/3)^2 - (Im z)^2/2}` for polynomially bounded `F`,
/// which covers every function produced by the forward transform on
/// basis signals.
pub fn true_bargmann_inverse<F>(ell: u32, f: F, x: f64, order: usize) -> Result<Complex64>
where
    F: Fn(Complex64) -> Complex64,
{
    if ell < 1 {
        return Err(Error::Domain("bargmann order ell must be >= 1".into()));
    }
    let rule = gauss_hermite(order)?;
    let c = 1.0 / (2f64.powi(ell as i32 - 1) * factorial(ell - 1)).sqrt();
    let a0 = SQRT_2 * x / 3.0;
    let au = (2.0f64 / 3.0).sqrt();
    let jac = 2.0 / 3f64.sqrt();
    let n = rule.order();
    let mut rows = Vec::with_capacity(n);
    for (i, (&u, &wu)) in rule.nodes().iter().zip(rule.weights()).enumerate() {
        let a = a0 + au * u;
        let herm = if ell == 1 { 1.0 } else { hermite_poly(ell - 1, SQRT_2 * a - x) };
        let mut row = Vec::with_capacity(n);
        for (jn, (&v, &wv)) in rule.nodes().iter().zip(rule.weights()).enumerate() {
            let b = SQRT_2 * v;
            let z = Complex64::new(a, b);
            let zb = z.conj();
            // conj(A_z(x)) e^{-|z|^2} e^{u^2+v^2}; the real part of the
            // exponent is the constant -x^2/6
            let expo = -(x * x + zb * zb) / 2.0 + SQRT_2 * zb * x - z.norm_sqr()
                + (u * u + v * v);
            let fv = f(z);
            if !fv.re.is_finite() || !fv.im.is_finite() || fv.norm() > NODE_MAGNITUDE_GUARD {
                return Err(Error::NonFinite { context: "bargmann inverse integrand", node: i * n + jn });
            }
            row.push(wu * wv * herm * expo.exp() * fv);
        }
        rows.push(pairwise_sum(&mut row));
    }
    Ok(c * jac * PI.powf(-1.25) * pairwise_sum(&mut rows))
}

/// Full polyanalytic Bargmann transform: `sum_ell B_ell phi_ell` over the
/// component signals.
pub fn full_bargmann(components: &[Signal], z: Complex64) -> Result<Complex64> {
    let mut acc = Complex64::new(0.0, 0.0);
    for (i, psi) in components.iter().enumerate() {
        acc += true_bargmann(i as u32 + 1, psi, z)?;
    }
    Ok(acc)
}

/// Fock-side Weyl operator `W_a f(z) = k_a(z) f(z - a)` with the normalized
/// alpha = 1 Fock kernel.
pub fn weyl_fock<F: Fn(Complex64) -> Complex64>(a: Complex64, f: F, z: Complex64) -> Complex64 {
    normalized_fock_kernel(1.0, z, a) * f(z - a)
}

/// Generating function of the windowed convolutions:
/// `Phi_m(z, u) = ((-1)^m / sqrt(m!)) (z - u/sqrt2)^m e^{z u/sqrt2 - u^2/4}`.
pub fn phi_m(m: u32, z: Complex64, u: f64) -> Complex64 {
    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
    let shift = u / SQRT_2;
    sign / factorial(m).sqrt()
        * (z - shift).powu(m)
        * (z * shift - u * u / 4.0).exp()
}

/// True polyanalytic Weyl operator, closed form:
/// `(ell-1)! 2^{ell-1} e^{z beta/sqrt2 - |beta|^2/4} f(z - conj(beta)/sqrt2)`.
pub fn weyl_true_poly<F: Fn(Complex64) -> Complex64>(
    param: &WeylParam,
    f: F,
    z: Complex64,
) -> Complex64 {
    let beta = param.beta();
    weyl_normalization(param.ell)
        * (z * beta / SQRT_2 - beta.norm_sqr() / 4.0).exp()
        * f(z - beta.conj() / SQRT_2)
}

/// The same operator evaluated through the defining composition
/// `B_ell (M_b tau_a) B_ell^{-1}` by stacked quadratures, times the window
/// normalization. For `b != 0` this differs from [`weyl_true_poly`] by the
/// constant commutation phase `e^{i a b / 2}`.
pub fn weyl_true_poly_composition<F>(
    param: &WeylParam,
    f: F,
    z: Complex64,
    order: usize,
) -> Result<Complex64>
where
    F: Fn(Complex64) -> Complex64,
{
    let ell = param.ell;
    let (a, b) = (param.a, param.b);
    let rule = gauss_hermite(order)?;
    let c = 1.0 / (2f64.powi(ell as i32 - 1) * factorial(ell - 1)).sqrt();
    // psi_f(x) = e^{ibx} (B^{-1} f)(x - a), then transform forward at z.
    let (za, zb) = (z.re, z.im);
    let s = za / SQRT_2;
    let pref = PI.powf(-0.25)
        * (-z * z / 2.0 + Complex64::new(za * za / 2.0, za * zb)).exp();
    let mut vals = Vec::with_capacity(rule.order());
    for (&t, &w) in rule.nodes().iter().zip(rule.weights()) {
        let x = s + t;
        let inv = true_bargmann_inverse(ell, &f, x - a, order)?;
        let psi_f = Complex64::new(0.0, b * x).exp() * inv;
        let phi = psi_f * (0.5 * x * x).exp();
        let herm = if ell == 1 { 1.0 } else { hermite_poly(ell - 1, s - t) };
        let osc = Complex64::new(0.0, SQRT_2 * zb * t).exp();
        vals.push(w * herm * osc * phi);
    }
    Ok(weyl_normalization(ell) * c * pref * pairwise_sum(&mut vals))
}

/// Polyanalytic RBF-Weyl operator, closed form:
/// `(ell-1)! 2^{ell-1} e^{(z/sqrt2)(beta - conj beta)} e^{(conj(beta)^2 - |beta|^2)/4}
///  f(z - conj(beta)/sqrt2)`.
pub fn weyl_rbf<F: Fn(Complex64) -> Complex64>(
    param: &WeylParam,
    f: F,
    z: Complex64,
) -> Complex64 {
    let beta = param.beta();
    let bc = beta.conj();
    weyl_normalization(param.ell)
        * (z / SQRT_2 * (beta - bc)).exp()
        * ((bc * bc - beta.norm_sqr()) / 4.0).exp()
        * f(z - bc / SQRT_2)
}
