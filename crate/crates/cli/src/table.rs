//! Kernel-slice tables over rectangular grids, written as CSV for external
//! plotting.

use num_complex::Complex64;
use polyrbf::kernels::{KernelFamily, KernelSpec};

/// One axis of a grid: `min:max:steps`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Axis {
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl Axis {
    pub fn parse(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(format!("grid axis must be min:max:steps, got '{s}'"));
        }
        let min: f64 = parts[0].parse().map_err(|_| format!("bad axis min '{}'", parts[0]))?;
        let max: f64 = parts[1].parse().map_err(|_| format!("bad axis max '{}'", parts[1]))?;
        let steps: usize =
            parts[2].parse().map_err(|_| format!("bad axis steps '{}'", parts[2]))?;
        if steps == 0 {
            return Err("axis needs at least one step".into());
        }
        if min.is_nan() || max.is_nan() || min > max {
            return Err(format!("axis min {min} must not exceed max {max}"));
        }
        Ok(Axis { min, max, steps })
    }

    pub fn values(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.min];
        }
        let h = (self.max - self.min) / (self.steps - 1) as f64;
        (0..self.steps).map(|i| self.min + h * i as f64).collect()
    }
}

/// Grid spec: one axis, or two comma-separated axes.
pub fn parse_grid(s: &str) -> Result<(Axis, Axis), String> {
    match s.split_once(',') {
        Some((a, b)) => Ok((Axis::parse(a)?, Axis::parse(b)?)),
        None => {
            let a = Axis::parse(s)?;
            Ok((a, a))
        }
    }
}

/// Renders the kernel table: for complex families the grid spans `z = x + iy`
/// against a fixed `w` (columns `re,im,...`); for the real-vector family the
/// two axes are the scalar inputs themselves (columns `x,y,...`).
pub fn render_table(
    spec: &KernelSpec,
    grid: (Axis, Axis),
    w: Complex64,
) -> Result<String, polyrbf::Error> {
    let (ax, ay) = grid;
    let mut out = String::new();
    if spec.family == KernelFamily::PolyRbfRd {
        out.push_str("x,y,value_re,value_im\n");
        for &x in &ax.values() {
            for &y in &ay.values() {
                let v = spec.evaluate_rd(&[x], &[y])?;
                out.push_str(&format!("{x},{y},{v},0\n"));
            }
        }
    } else {
        out.push_str("re,im,value_re,value_im\n");
        for &x in &ax.values() {
            for &y in &ay.values() {
                let v = spec.evaluate(Complex64::new(x, y), w)?;
                out.push_str(&format!("{x},{y},{},{}\n", v.value.re, v.value.im));
            }
        }
    }
    Ok(out)
}
