//! Scalar special functions: Hermite polynomials and functions, generalized
//! Laguerre polynomials, complex Ito-Hermite polynomials, and the
//! Christoffel-Darboux / Mehler combinations built from them.
//!
//! Everything here is a pure function of its arguments; evaluation uses
//! three-term recurrences rather than explicit sums wherever cancellation is
//! a risk.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest `n` for which `n!` is finite in f64.
pub const FACTORIAL_MAX: u32 = 170;

/// `n!` as f64; infinite beyond [`FACTORIAL_MAX`].
pub fn factorial(n: u32) -> f64 {
    if n > FACTORIAL_MAX {
        return f64::INFINITY;
    }
    let mut acc = 1.0f64;
    for k in 2..=n {
        acc *= k as f64;
    }
    acc
}

/// Binomial coefficient `C(n, k)` by the multiplicative formula.
pub fn binomial(n: u32, k: u32) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0f64;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc
}

/// Physicists' Hermite polynomial `H_n(x)` via the three-term recurrence
/// `H_{n+1} = 2x H_n - 2n H_{n-1}`.
pub fn hermite_poly(n: u32, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = 2.0 * x;
    for k in 1..n {
        let next = 2.0 * x * cur - 2.0 * k as f64 * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Hermite function `h_n(x) = e^{-x^2/2} H_n(x)`.
pub fn hermite_fn(n: u32, x: f64) -> f64 {
    (-0.5 * x * x).exp() * hermite_poly(n, x)
}

/// Normalized Hermite function `psi_n = h_n / sqrt(n! 2^n sqrt(pi))`.
///
/// Uses the normalized recurrence
/// `psi_{n+1} = x sqrt(2/(n+1)) psi_n - sqrt(n/(n+1)) psi_{n-1}`,
/// which stays in range for large `n` where `H_n` itself would overflow.
pub fn normalized_hermite(n: u32, x: f64) -> f64 {
    let psi0 = std::f64::consts::PI.powf(-0.25) * (-0.5 * x * x).exp();
    if n == 0 {
        return psi0;
    }
    let mut prev = psi0;
    let mut cur = std::f64::consts::SQRT_2 * x * psi0;
    for k in 1..n {
        let kf = k as f64;
        let next = x * (2.0 / (kf + 1.0)).sqrt() * cur - (kf / (kf + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Generalized Laguerre polynomial `L^beta_k(x)` by the forward recurrence
/// `(k+1) L_{k+1} = (2k+1+beta-x) L_k - (k+beta) L_{k-1}`.
pub fn laguerre(k: u32, beta: f64, x: f64) -> f64 {
    if k == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = 1.0 + beta - x;
    for i in 1..k {
        let fi = i as f64;
        let next = ((2.0 * fi + 1.0 + beta - x) * cur - (fi + beta) * prev) / (fi + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// Index triple of a complex Ito-Hermite polynomial `H^alpha_{n,m}`.
///
/// `n` is the anti-holomorphic degree (power of `conj(z)`), `m` the
/// holomorphic degree (power of `z`), `alpha > 0` the Gaussian weight
/// parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ItoHermiteIndex {
    pub n: u32,
    pub m: u32,
    pub alpha: f64,
}

impl ItoHermiteIndex {
    pub fn new(n: u32, m: u32, alpha: f64) -> Result<Self> {
        if !alpha.is_finite() || alpha <= 0.0 {
            return Err(Error::Domain(format!("ito-hermite alpha must be > 0, got {alpha}")));
        }
        Ok(Self { n, m, alpha })
    }
}

/// Index of a generalized Laguerre polynomial `L^beta_k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaguerreIndex {
    pub k: u32,
    pub beta: f64,
}

/// Index of a real Hermite polynomial `H_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HermiteIndex {
    pub n: u32,
}

/// Complex Ito-Hermite polynomial `H^alpha_{n,m}(z, conj(z))`.
///
/// Coefficient formula (the Rodrigues-consistent reading):
/// `sum_j (-1)^j j! C(n,j) C(m,j) alpha^{n+m-j} z^{m-j} conj(z)^{n-j}`.
pub fn ito_hermite(idx: ItoHermiteIndex, z: Complex64) -> Complex64 {
    ito_hermite_at(idx, z, z.conj())
}

/// Two-slot extension of the Ito-Hermite polynomial: the first slot carries
/// the holomorphic degree `m`, the second the anti-holomorphic degree `n`.
/// `ito_hermite` is the restriction `w = conj(z)`.
pub fn ito_hermite_at(idx: ItoHermiteIndex, z_slot: Complex64, w_slot: Complex64) -> Complex64 {
    let ItoHermiteIndex { n, m, alpha } = idx;
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..=n.min(m) {
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        let coeff = sign * factorial(j) * binomial(n, j) * binomial(m, j)
            * alpha.powi((n + m - j) as i32);
        acc += coeff * z_slot.powu(m - j) * w_slot.powu(n - j);
    }
    acc
}

/// Coefficient table of `H^alpha_{n,m}`: entries `((j, k), c)` meaning
/// `c * z^j * conj(z)^k`. Exact in f64 for dyadic `alpha` and small indices.
pub fn ito_hermite_coeffs(idx: ItoHermiteIndex) -> Vec<((u32, u32), f64)> {
    let ItoHermiteIndex { n, m, alpha } = idx;
    let mut out = Vec::with_capacity((n.min(m) + 1) as usize);
    for j in 0..=n.min(m) {
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        let coeff = sign * factorial(j) * binomial(n, j) * binomial(m, j)
            * alpha.powi((n + m - j) as i32);
        out.push(((m - j, n - j), coeff));
    }
    out
}

/// Christoffel-Darboux partial sum
/// `M_N(u, v) = sum_{m=0}^{N} H_m(u) H_m(v) / (2^m m!)`.
pub fn christoffel_darboux(n_max: u32, u: f64, v: f64) -> f64 {
    // Accumulate with normalized terms t_m = H_m(u)H_m(v)/(2^m m!) via two
    // scaled recurrences p_m = H_m(u)/sqrt(2^m m!).
    let mut pu_prev = 1.0f64;
    let mut pv_prev = 1.0f64;
    let mut acc = 1.0f64;
    if n_max == 0 {
        return acc;
    }
    let mut pu = std::f64::consts::SQRT_2 * u;
    let mut pv = std::f64::consts::SQRT_2 * v;
    acc += pu * pv;
    for k in 1..n_max {
        let kf = k as f64;
        let a = (2.0 / (kf + 1.0)).sqrt();
        let b = (kf / (kf + 1.0)).sqrt();
        let pu_next = a * u * pu - b * pu_prev;
        let pv_next = a * v * pv - b * pv_prev;
        pu_prev = pu;
        pv_prev = pv;
        pu = pu_next;
        pv = pv_next;
        acc += pu * pv;
    }
    acc
}

/// Quotient form of the Christoffel-Darboux sum; `None` within `1e-8` of the
/// diagonal where the division loses meaning.
pub fn christoffel_darboux_quotient(n_max: u32, u: f64, v: f64) -> Option<f64> {
    if (u - v).abs() <= 1e-8 {
        return None;
    }
    let num = hermite_poly(n_max, v) * hermite_poly(n_max + 1, u)
        - hermite_poly(n_max, u) * hermite_poly(n_max + 1, v);
    let den = factorial(n_max) * 2f64.powi(n_max as i32 + 1) * (u - v);
    Some(num / den)
}

/// Truncated Mehler kernel
/// `E_{rho,N}(u, v) = sum_{m=0}^{N} rho^m H_m(u) H_m(v) / (2^m m!)`.
///
/// Domain error when `|rho| >= 1`.
pub fn mehler_sum(rho: f64, n_max: u32, u: f64, v: f64) -> Result<f64> {
    if rho.is_nan() || rho.abs() >= 1.0 {
        return Err(Error::Domain(format!("mehler rho must satisfy |rho| < 1, got {rho}")));
    }
    let mut pu_prev = 1.0f64;
    let mut pv_prev = 1.0f64;
    let mut acc = 1.0f64;
    if n_max == 0 {
        return Ok(acc);
    }
    let mut pu = std::f64::consts::SQRT_2 * u;
    let mut pv = std::f64::consts::SQRT_2 * v;
    let mut rho_pow = rho;
    acc += rho_pow * pu * pv;
    for k in 1..n_max {
        let kf = k as f64;
        let a = (2.0 / (kf + 1.0)).sqrt();
        let b = (kf / (kf + 1.0)).sqrt();
        let pu_next = a * u * pu - b * pu_prev;
        let pv_next = a * v * pv - b * pv_prev;
        pu_prev = pu;
        pv_prev = pv;
        pu = pu_next;
        pv = pv_next;
        rho_pow *= rho;
        acc += rho_pow * pu * pv;
    }
    Ok(acc)
}

/// Cramer's bound constant: `|H_m(x)| e^{-x^2/2} <= c 2^{m/2} sqrt(m!)`.
const CRAMER_C: f64 = 1.09;

/// Number of Mehler terms so the tail is below `tol` at `(u, v)`.
///
/// Term `m` is bounded by `c^2 |rho|^m e^{(u^2+v^2)/2}`, so the tail past `N`
/// is below `c^2 e^{(u^2+v^2)/2} |rho|^{N+1} / (1 - |rho|)`.
pub fn mehler_terms_for_tol(rho: f64, u: f64, v: f64, tol: f64) -> Result<u32> {
    if rho.is_nan() || rho.abs() >= 1.0 {
        return Err(Error::Domain(format!("mehler rho must satisfy |rho| < 1, got {rho}")));
    }
    if !tol.is_finite() || tol <= 0.0 {
        return Err(Error::Domain(format!("tolerance must be > 0, got {tol}")));
    }
    let r = rho.abs();
    if r == 0.0 {
        return Ok(0);
    }
    let front = CRAMER_C * CRAMER_C * (0.5 * (u * u + v * v)).exp() / (1.0 - r);
    // front * r^{N+1} < tol
    let n = ((tol / front).ln() / r.ln() - 1.0).ceil().max(0.0);
    Ok(n as u32)
}
