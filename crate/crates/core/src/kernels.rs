//! Closed-form evaluation of the kernel families: Fock, polyanalytic Fock,
//! true polyanalytic Fock, Gaussian RBF, true polyanalytic RBF, polyanalytic
//! Gaussian RBF (complex and real-vector forms), Mehler-type sums and limits,
//! and the `I_{a,m}` building blocks, together with their Zaremba-Bergman
//! series counterparts used as oracles.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specfun::{factorial, laguerre};

/// Kernel families selectable through [`KernelSpec`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KernelFamily {
    Fock,
    PolyFock,
    TruePolyFock,
    Rbf,
    TruePolyRbf,
    PolyRbf,
    PolyRbfRd,
    MehlerSum,
    KRho,
}

/// Tagged description of one kernel with its parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KernelSpec {
    pub family: KernelFamily,
    /// Fock-side weight parameter.
    pub alpha: f64,
    /// RBF-side width parameter.
    pub gamma: f64,
    /// Polyanalytic order `N` (or `ell` for the true kernels).
    pub order: u32,
    /// Mehler parameter, used by `MehlerSum` and `KRho` only.
    pub rho: f64,
    /// Translation parameter `a`, used by `MehlerSum` only.
    pub shift_a: f64,
}

impl Default for KernelSpec {
    fn default() -> Self {
        KernelSpec {
            family: KernelFamily::Rbf,
            alpha: 1.0,
            gamma: 2.0,
            order: 1,
            rho: 0.0,
            shift_a: 0.0,
        }
    }
}

impl KernelSpec {
    pub fn validate(&self) -> Result<()> {
        if !self.alpha.is_finite() || self.alpha <= 0.0 {
            return Err(Error::Domain(format!("alpha must be > 0, got {}", self.alpha)));
        }
        if !self.gamma.is_finite() || self.gamma <= 0.0 {
            return Err(Error::Domain(format!("gamma must be > 0, got {}", self.gamma)));
        }
        if self.order < 1 {
            return Err(Error::Domain("order must be >= 1".into()));
        }
        if matches!(self.family, KernelFamily::MehlerSum | KernelFamily::KRho)
            && (self.rho.is_nan() || self.rho.abs() >= 1.0)
        {
            return Err(Error::Domain(format!("|rho| must be < 1, got {}", self.rho)));
        }
        Ok(())
    }

    /// Evaluates the kernel at a complex pair. `PolyRbfRd` is excluded here;
    /// use [`KernelSpec::evaluate_rd`] for real vectors.
    pub fn evaluate(&self, z: Complex64, w: Complex64) -> Result<KernelValue> {
        self.validate()?;
        let value = match self.family {
            KernelFamily::Fock => fock_kernel(self.alpha, z, w),
            KernelFamily::PolyFock => poly_fock_kernel(self.alpha, self.order, z, w),
            KernelFamily::TruePolyFock => true_poly_fock_kernel(self.alpha, self.order, z, w),
            KernelFamily::Rbf => rbf_kernel(self.gamma, z, w),
            KernelFamily::TruePolyRbf => true_poly_rbf_kernel(self.gamma, self.order, z, w),
            KernelFamily::PolyRbf => poly_rbf_kernel(self.gamma, self.order, z, w),
            KernelFamily::PolyRbfRd => {
                return Err(Error::Domain(
                    "poly_rbf_rd takes real vectors; use evaluate_rd".into(),
                ))
            }
            KernelFamily::MehlerSum => {
                return s_rho_a_n(self.rho, self.shift_a, self.order, z, w)
            }
            KernelFamily::KRho => krho_kernel(self.rho, z, w)?,
        };
        if !value.re.is_finite() || !value.im.is_finite() {
            return Err(Error::NonFinite { context: "kernel evaluation", node: 0 });
        }
        Ok(KernelValue { value, series_terms_used: None })
    }

    /// Real-vector evaluation for the `PolyRbfRd` family.
    pub fn evaluate_rd(&self, x: &[f64], y: &[f64]) -> Result<f64> {
        self.validate()?;
        if self.family != KernelFamily::PolyRbfRd {
            return Err(Error::Domain("evaluate_rd requires family poly_rbf_rd".into()));
        }
        poly_rbf_kernel_rd(self.gamma, self.order, x, y)
    }
}

/// A kernel value together with, for series evaluators, how many terms were
/// actually summed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelValue {
    pub value: Complex64,
    pub series_terms_used: Option<u32>,
}

/// `|z - w|^2` computed in real arithmetic to avoid cancellation for nearly
/// equal arguments.
#[inline]
pub(crate) fn abs2_diff(z: Complex64, w: Complex64) -> f64 {
    let dx = z.re - w.re;
    let dy = z.im - w.im;
    dx * dx + dy * dy
}

/// Fock kernel `K_alpha(z, w) = e^{alpha z conj(w)}`.
pub fn fock_kernel(alpha: f64, z: Complex64, w: Complex64) -> Complex64 {
    (alpha * z * w.conj()).exp()
}

/// Normalized Fock kernel `k_alpha(z, w) = e^{alpha(z conj(w) - |w|^2/2)}`.
pub fn normalized_fock_kernel(alpha: f64, z: Complex64, w: Complex64) -> Complex64 {
    (alpha * (z * w.conj() - 0.5 * w.norm_sqr())).exp()
}

/// Polyanalytic Fock kernel of order `N`:
/// `e^{alpha z conj(w)} L^1_{N-1}(alpha |z - w|^2)`.
pub fn poly_fock_kernel(alpha: f64, n_order: u32, z: Complex64, w: Complex64) -> Complex64 {
    fock_kernel(alpha, z, w) * laguerre(n_order - 1, 1.0, alpha * abs2_diff(z, w))
}

/// True polyanalytic Fock kernel of order `ell`:
/// `e^{alpha z conj(w)} L^0_{ell-1}(alpha |z - w|^2)`.
pub fn true_poly_fock_kernel(alpha: f64, ell: u32, z: Complex64, w: Complex64) -> Complex64 {
    fock_kernel(alpha, z, w) * laguerre(ell - 1, 0.0, alpha * abs2_diff(z, w))
}

/// Gaussian RBF kernel `exp(-(z - conj(w))^2 / gamma^2)`.
pub fn rbf_kernel(gamma: f64, z: Complex64, w: Complex64) -> Complex64 {
    let d = z - w.conj();
    (-(d * d) / (gamma * gamma)).exp()
}

/// True polyanalytic Gaussian RBF kernel of order `ell`:
/// `L^0_{ell-1}(2|z-w|^2/gamma^2) exp(-(z - conj w)^2/gamma^2)`.
pub fn true_poly_rbf_kernel(gamma: f64, ell: u32, z: Complex64, w: Complex64) -> Complex64 {
    rbf_kernel(gamma, z, w) * laguerre(ell - 1, 0.0, 2.0 * abs2_diff(z, w) / (gamma * gamma))
}

/// Polyanalytic Gaussian RBF kernel of order `N`:
/// `L^1_{N-1}(2|z-w|^2/gamma^2) exp(-(z - conj w)^2/gamma^2)`.
pub fn poly_rbf_kernel(gamma: f64, n_order: u32, z: Complex64, w: Complex64) -> Complex64 {
    rbf_kernel(gamma, z, w) * laguerre(n_order - 1, 1.0, 2.0 * abs2_diff(z, w) / (gamma * gamma))
}

/// Real-vector polyanalytic Gaussian RBF kernel on R^d:
/// `e^{-||x-y||^2/gamma^2} L^1_{N-1}(2 ||x-y||^2 / gamma^2)`.
pub fn poly_rbf_kernel_rd(gamma: f64, n_order: u32, x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch { left: x.len(), right: y.len() });
    }
    if x.is_empty() {
        return Err(Error::Domain("vectors must have dimension >= 1".into()));
    }
    let r2: f64 = x.iter().zip(y).map(|(a, b)| (a - b) * (a - b)).sum();
    let g2 = gamma * gamma;
    let value = (-r2 / g2).exp() * laguerre(n_order - 1, 1.0, 2.0 * r2 / g2);
    if !value.is_finite() {
        return Err(Error::NonFinite { context: "poly_rbf_kernel_rd", node: 0 });
    }
    Ok(value)
}

/// Deviation of the factorization
/// `K_{RBF,N}(z,w) = e^{-z^2/gamma^2} K^{2/gamma^2}_N(z,w) e^{-conj(w)^2/gamma^2}`.
pub fn rbf_fock_factorization_check(
    gamma: f64,
    n_order: u32,
    z: Complex64,
    w: Complex64,
) -> f64 {
    let g2 = gamma * gamma;
    let lhs = poly_rbf_kernel(gamma, n_order, z, w);
    let rhs = (-z * z / g2).exp()
        * poly_fock_kernel(2.0 / g2, n_order, z, w)
        * (-w.conj() * w.conj() / g2).exp();
    (lhs - rhs).norm()
}

/// Mehler-type kernel `K_rho(z, w) = e^{-rho |z-w|^2/(1-rho)} / (1-rho)`.
pub fn krho_kernel(rho: f64, z: Complex64, w: Complex64) -> Result<Complex64> {
    if rho.is_nan() || rho.abs() >= 1.0 {
        return Err(Error::Domain(format!("|rho| must be < 1, got {rho}")));
    }
    Ok(Complex64::new((-(rho / (1.0 - rho)) * abs2_diff(z, w)).exp() / (1.0 - rho), 0.0))
}

/// `I_{a,m}(z, w) = m! 2^m e^{-a^2/4 + z a/sqrt2} e^{(z - a/sqrt2) conj(w)}
/// L^0_m(|z - a/sqrt2 - w|^2)`.
pub fn i_am(a: f64, m: u32, z: Complex64, w: Complex64) -> Complex64 {
    let shift = a / std::f64::consts::SQRT_2;
    let zs = z - shift;
    factorial(m)
        * 2f64.powi(m as i32)
        * (Complex64::from(-a * a / 4.0) + z * shift).exp()
        * (zs * w.conj()).exp()
        * laguerre(m, 0.0, abs2_diff(zs, w))
}

/// `S_{a,N}(z, w) = sum_{m=0}^{N} I_{a,m}(z,w) / (2^m m!)`, in closed form
/// `e^{-a^2/4 + z a/sqrt2} K_{N+1}(z - a/sqrt2, w)` with the alpha = 1
/// polyanalytic Fock kernel.
pub fn s_a_n(a: f64, n_trunc: u32, z: Complex64, w: Complex64) -> Complex64 {
    let shift = a / std::f64::consts::SQRT_2;
    (Complex64::from(-a * a / 4.0) + z * shift).exp()
        * poly_fock_kernel(1.0, n_trunc + 1, z - shift, w)
}

/// `S_{rho,a,N}(z, w) = sum_{m=0}^{N} rho^m I_{a,m}(z,w) / (2^m m!)`.
pub fn s_rho_a_n(rho: f64, a: f64, n_trunc: u32, z: Complex64, w: Complex64) -> Result<KernelValue> {
    if rho.is_nan() || rho.abs() >= 1.0 {
        return Err(Error::Domain(format!("|rho| must be < 1, got {rho}")));
    }
    let shift = a / std::f64::consts::SQRT_2;
    let zs = z - shift;
    let x = abs2_diff(zs, w);
    // sum rho^m L^0_m(x) with the stable Laguerre recurrence inline
    let mut acc = Complex64::new(1.0, 0.0);
    let mut l_prev = 1.0f64;
    let mut l_cur = 1.0 - x;
    let mut rho_pow = rho;
    if n_trunc >= 1 {
        acc += rho_pow * l_cur;
        for k in 1..n_trunc {
            let kf = k as f64;
            let l_next = ((2.0 * kf + 1.0 - x) * l_cur - kf * l_prev) / (kf + 1.0);
            l_prev = l_cur;
            l_cur = l_next;
            rho_pow *= rho;
            acc += rho_pow * l_cur;
        }
    }
    let value = (Complex64::from(-a * a / 4.0) + z * shift).exp() * (zs * w.conj()).exp() * acc;
    Ok(KernelValue { value, series_terms_used: Some(n_trunc + 1) })
}

/// `lim_N S_{rho,a,N}`:
/// `(1/(1-rho)) e^{-a^2/4 + z a/sqrt2} e^{(z-a/sqrt2) conj(w)}
///  e^{-rho/(1-rho) |z - a/sqrt2 - w|^2}`.
pub fn mehler_limit(rho: f64, a: f64, z: Complex64, w: Complex64) -> Result<Complex64> {
    if rho.is_nan() || rho.abs() >= 1.0 {
        return Err(Error::Domain(format!("|rho| must be < 1, got {rho}")));
    }
    let shift = a / std::f64::consts::SQRT_2;
    let zs = z - shift;
    Ok((Complex64::from(-a * a / 4.0) + z * shift).exp()
        * (zs * w.conj()).exp()
        * ((-(rho / (1.0 - rho)) * abs2_diff(zs, w)).exp() / (1.0 - rho)))
}

/// Which Zaremba-Bergman series to partially sum (both at `gamma = 2`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZarembaKind {
    /// Basis `z^n e^{-z^2/4} / sqrt(n! 2^n)`; converges to the Gaussian RBF
    /// kernel.
    RbfAnalytic,
    /// Basis `e^{-z^2/4} H_{ell-1,n}(z/sqrt2, conj(z)/sqrt2) / sqrt((ell-1)! n!)`
    /// (window degree on the anti-holomorphic slot); converges to the true
    /// polyanalytic RBF kernel of the given order.
    TruePoly(u32),
}

/// Hard cap on partial-sum length; beyond it factorial-decay bookkeeping is
/// not worth carrying.
pub const ZAREMBA_TERM_CAP: usize = 512;

/// Partial Zaremba-Bergman sum with `terms` summands.
pub fn zaremba_partial(
    kind: ZarembaKind,
    terms: usize,
    z: Complex64,
    w: Complex64,
) -> Result<KernelValue> {
    if terms == 0 || terms > ZAREMBA_TERM_CAP {
        return Err(Error::SeriesBudget { requested: terms, cap: ZAREMBA_TERM_CAP });
    }
    let value = match kind {
        ZarembaKind::RbfAnalytic => {
            // sum_n (z conj(w)/2)^n / n!  times the Gaussian prefactors,
            // accumulated with a ratio recurrence (no factorials).
            let pref = (-z * z / 4.0 - w.conj() * w.conj() / 4.0).exp();
            let q = z * w.conj() / 2.0;
            let mut term = Complex64::new(1.0, 0.0);
            let mut acc = term;
            for n in 1..terms {
                term *= q / n as f64;
                acc += term;
            }
            pref * acc
        }
        ZarembaKind::TruePoly(ell) => {
            if ell < 1 {
                return Err(Error::Domain("true-poly order ell must be >= 1".into()));
            }
            let m = ell - 1;
            let a_slot = z / std::f64::consts::SQRT_2; // holomorphic slot of B_n(z)
            let b_slot = z.conj() / std::f64::consts::SQRT_2;
            let aw = w / std::f64::consts::SQRT_2;
            let bw = w.conj() / std::f64::consts::SQRT_2;
            let pref = (-z * z / 4.0 - w.conj() * w.conj() / 4.0).exp() / factorial(m);
            // u_j(n) = C(n,j) a^{n-j} / sqrt(n!), via
            // u_j(n+1) = u_j(n) * a * (n+1) / ((n+1-j) sqrt(n+1)), u_j(j) = 1/sqrt(j!)
            let m_us = m as usize;
            let mut uz = vec![Complex64::new(0.0, 0.0); m_us + 1];
            let mut uw = vec![Complex64::new(0.0, 0.0); m_us + 1];
            let mut acc = Complex64::new(0.0, 0.0);
            for n in 0..terms {
                if n > 0 {
                    // advance u_j(n-1) -> u_j(n) for the j already started
                    let nf = n as f64;
                    for j in 0..=m_us.min(n - 1) {
                        let scale = nf / ((nf - j as f64) * nf.sqrt());
                        uz[j] *= a_slot * scale;
                        uw[j] *= aw * scale;
                    }
                }
                if n <= m_us {
                    let seed = Complex64::from(1.0 / factorial(n as u32).sqrt());
                    uz[n] = seed;
                    uw[n] = seed;
                }
                // B_n = pref-part * sum_j (-1)^j j! C(m,j) b^{m-j} u_j(n)
                let mut bz = Complex64::new(0.0, 0.0);
                let mut bwv = Complex64::new(0.0, 0.0);
                for (j, (ujz, ujw)) in uz.iter().zip(&uw).enumerate().take(m_us.min(n) + 1) {
                    let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                    let cj = sign * factorial(j as u32) * crate::specfun::binomial(m, j as u32);
                    bz += cj * b_slot.powu(m - j as u32) * ujz;
                    bwv += cj * bw.powu(m - j as u32) * ujw;
                }
                acc += bz * bwv.conj();
            }
            pref * acc
        }
    };
    if !value.re.is_finite() || !value.im.is_finite() {
        return Err(Error::NonFinite { context: "zaremba_partial", node: 0 });
    }
    Ok(KernelValue { value, series_terms_used: Some(terms as u32) })
}
