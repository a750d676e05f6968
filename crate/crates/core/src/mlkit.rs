//! Kernel-methods layer over the real-vector polyanalytic Gaussian RBF
//! kernel: Gram matrices, positive-semidefiniteness reports, kernel ridge
//! regression, and CSV ingestion.

use std::path::Path;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernels::{poly_rbf_kernel_rd, KernelFamily, KernelSpec};

/// Rows of d-dimensional features with optional targets.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    x: Vec<Vec<f64>>,
    y: Option<Vec<f64>>,
    feature_names: Option<Vec<String>>,
}

impl Dataset {
    pub fn new(x: Vec<Vec<f64>>, y: Option<Vec<f64>>) -> Result<Self> {
        Self::with_names(x, y, None)
    }

    pub fn with_names(
        x: Vec<Vec<f64>>,
        y: Option<Vec<f64>>,
        feature_names: Option<Vec<String>>,
    ) -> Result<Self> {
        if x.is_empty() {
            return Err(Error::Domain("dataset must contain at least one row".into()));
        }
        let d = x[0].len();
        if d == 0 {
            return Err(Error::Domain("feature dimension must be >= 1".into()));
        }
        for (i, row) in x.iter().enumerate() {
            if row.len() != d {
                return Err(Error::DimensionMismatch { left: d, right: row.len() });
            }
            if let Some(j) = row.iter().position(|v| !v.is_finite()) {
                return Err(Error::Csv { row: i + 1, col: j + 1, msg: "non-finite feature".into() });
            }
        }
        if let Some(targets) = &y {
            if targets.len() != x.len() {
                return Err(Error::DimensionMismatch { left: x.len(), right: targets.len() });
            }
            if let Some(i) = targets.iter().position(|v| !v.is_finite()) {
                return Err(Error::Csv { row: i + 1, col: 0, msg: "non-finite target".into() });
            }
        }
        Ok(Dataset { x, y, feature_names })
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.x
    }

    pub fn targets(&self) -> Option<&[f64]> {
        self.y.as_deref()
    }

    pub fn feature_names(&self) -> Option<&[String]> {
        self.feature_names.as_deref()
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.x[0].len()
    }
}

/// Gram matrix `G[i][j] = K(x_i, x_j)` for a `PolyRbfRd` spec. Entries are
/// computed for `i <= j` and mirrored, so symmetry is exact by construction.
pub fn gram(spec: &KernelSpec, data: &Dataset) -> Result<DMatrix<f64>> {
    spec.validate()?;
    if spec.family != KernelFamily::PolyRbfRd {
        return Err(Error::Domain("gram requires family poly_rbf_rd".into()));
    }
    let n = data.len();
    let mut g = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let v = poly_rbf_kernel_rd(spec.gamma, spec.order, &data.rows()[i], &data.rows()[j])?;
            g[(i, j)] = v;
            g[(j, i)] = v;
        }
    }
    Ok(g)
}

/// Result of a positive-semidefiniteness check.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PsdReport {
    pub min_eig: f64,
    pub passed: bool,
}

/// Checks `G` for positive semidefiniteness: passed iff the smallest
/// eigenvalue is at least `-tol`. Errors on asymmetric input.
pub fn psd_check(g: &DMatrix<f64>, tol: f64) -> Result<PsdReport> {
    if g.nrows() != g.ncols() {
        return Err(Error::DimensionMismatch { left: g.nrows(), right: g.ncols() });
    }
    let mut max_dev = 0.0f64;
    for i in 0..g.nrows() {
        for j in (i + 1)..g.ncols() {
            max_dev = max_dev.max((g[(i, j)] - g[(j, i)]).abs());
        }
    }
    if max_dev > 1e-12 {
        return Err(Error::Asymmetric(max_dev));
    }
    let eigs = g.clone().symmetric_eigen().eigenvalues;
    let min_eig = eigs.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(PsdReport { min_eig, passed: min_eig >= -tol })
}

/// Fitted kernel ridge regression model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GramModel {
    pub spec: KernelSpec,
    #[serde(rename = "X_train")]
    pub x_train: Vec<Vec<f64>>,
    pub dual_coeffs: Vec<f64>,
    pub ridge_lambda: f64,
    pub jitter_used: f64,
}

/// Escalating diagonal jitter tried when the Cholesky factorization of
/// `G + lambda I` fails.
const JITTER_LADDER: [f64; 4] = [0.0, 1e-12, 1e-10, 1e-8];

/// Solves `(G + lambda I) c = y` by Cholesky with escalating jitter and
/// returns the fitted model.
pub fn krr_fit(spec: &KernelSpec, data: &Dataset, ridge_lambda: f64) -> Result<GramModel> {
    if ridge_lambda < 0.0 {
        return Err(Error::Domain(format!("ridge lambda must be >= 0, got {ridge_lambda}")));
    }
    let y = data
        .targets()
        .ok_or_else(|| Error::Domain("krr_fit needs a dataset with targets".into()))?;
    let g = gram(spec, data)?;
    let n = data.len();
    let rhs = DVector::from_column_slice(y);
    for &jitter in &JITTER_LADDER {
        let mut a = g.clone();
        for i in 0..n {
            a[(i, i)] += ridge_lambda + jitter;
        }
        if let Some(chol) = a.cholesky() {
            let coeffs = chol.solve(&rhs);
            return Ok(GramModel {
                spec: spec.clone(),
                x_train: data.rows().to_vec(),
                dual_coeffs: coeffs.iter().copied().collect(),
                ridge_lambda,
                jitter_used: jitter,
            });
        }
    }
    Err(Error::Solve(format!(
        "cholesky failed for all jitters up to {:e}",
        JITTER_LADDER[JITTER_LADDER.len() - 1]
    )))
}

/// `predict(x*) = sum_i c_i K(x*, x_i)` for each row of `x_new`.
pub fn krr_predict(model: &GramModel, x_new: &[Vec<f64>]) -> Result<Vec<f64>> {
    let d = model.x_train[0].len();
    let mut out = Vec::with_capacity(x_new.len());
    for row in x_new {
        if row.len() != d {
            return Err(Error::DimensionMismatch { left: d, right: row.len() });
        }
        let mut acc = 0.0;
        for (xi, ci) in model.x_train.iter().zip(&model.dual_coeffs) {
            acc += ci * poly_rbf_kernel_rd(model.spec.gamma, model.spec.order, row, xi)?;
        }
        out.push(acc);
    }
    Ok(out)
}

pub fn save_model<P: AsRef<Path>>(model: &GramModel, path: P) -> Result<()> {
    let json = serde_json::to_string_pretty(model)?;
    std::fs::write(path, json)?;
    Ok(())
}

pub fn load_model<P: AsRef<Path>>(path: P) -> Result<GramModel> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

/// Loads a CSV with a header row of numeric columns. When `target` names a
/// column, it becomes `y` and the remaining columns the features.
pub fn load_csv<P: AsRef<Path>>(path: P, target: Option<&str>) -> Result<Dataset> {
    let mut reader = csv::ReaderBuilder::new().has_headers(true).from_path(path.as_ref())
        .map_err(|e| Error::Csv { row: 0, col: 0, msg: e.to_string() })?;
    let headers: Vec<String> = reader
        .headers()
        .map_err(|e| Error::Csv { row: 0, col: 0, msg: e.to_string() })?
        .iter()
        .map(|s| s.to_string())
        .collect();
    let target_idx = match target {
        Some(name) => Some(headers.iter().position(|h| h == name).ok_or_else(|| Error::Csv {
            row: 0,
            col: 0,
            msg: format!("target column '{name}' not found"),
        })?),
        None => None,
    };
    let mut x = Vec::new();
    let mut y = Vec::new();
    for (ri, record) in reader.records().enumerate() {
        let record = record.map_err(|e| Error::Csv { row: ri + 1, col: 0, msg: e.to_string() })?;
        let mut row = Vec::with_capacity(headers.len());
        for (ci, field) in record.iter().enumerate() {
            let v: f64 = field.trim().parse().map_err(|_| Error::Csv {
                row: ri + 1,
                col: ci + 1,
                msg: format!("not a number: '{field}'"),
            })?;
            if !v.is_finite() {
                return Err(Error::Csv {
                    row: ri + 1,
                    col: ci + 1,
                    msg: format!("non-finite value: '{field}'"),
                });
            }
            if Some(ci) == target_idx {
                y.push(v);
            } else {
                row.push(v);
            }
        }
        x.push(row);
    }
    let names: Vec<String> = headers
        .iter()
        .enumerate()
        .filter(|(i, _)| Some(*i) != target_idx)
        .map(|(_, h)| h.clone())
        .collect();
    Dataset::with_names(x, if target_idx.is_some() { Some(y) } else { None }, Some(names))
}

/// Writes a dataset back out with full round-trip precision.
pub fn write_csv<P: AsRef<Path>>(data: &Dataset, path: P, target_name: Option<&str>) -> Result<()> {
    let mut writer = csv::Writer::from_path(path.as_ref())
        .map_err(|e| Error::Csv { row: 0, col: 0, msg: e.to_string() })?;
    let d = data.dim();
    let mut header: Vec<String> = match data.feature_names() {
        Some(names) => names.to_vec(),
        None => (0..d).map(|i| format!("x{i}")).collect(),
    };
    if data.targets().is_some() {
        header.push(target_name.unwrap_or("y").to_string());
    }
    writer
        .write_record(&header)
        .map_err(|e| Error::Csv { row: 0, col: 0, msg: e.to_string() })?;
    for (i, row) in data.rows().iter().enumerate() {
        let mut record: Vec<String> = row.iter().map(|v| format!("{v}")).collect();
        if let Some(y) = data.targets() {
            record.push(format!("{}", y[i]));
        }
        writer
            .write_record(&record)
            .map_err(|e| Error::Csv { row: i + 1, col: 0, msg: e.to_string() })?;
    }
    writer.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn rd_spec(gamma: f64, order: u32) -> KernelSpec {
        KernelSpec { family: KernelFamily::PolyRbfRd, gamma, order, ..Default::default() }
    }

    #[test]
    fn gram_single_point_is_order() {
        for n in 1..=5u32 {
            let data = Dataset::new(vec![vec![0.4, -1.0]], None).unwrap();
            let g = gram(&rd_spec(2.0, n), &data).unwrap();
            assert_eq!(g.nrows(), 1);
            assert_abs_diff_eq!(g[(0, 0)], n as f64, epsilon = 1e-14);
        }
    }

    #[test]
    fn gram_n1_is_classical_rbf() {
        let rows = vec![
            vec![0.0, 0.0],
            vec![1.0, -0.5],
            vec![0.3, 2.0],
            vec![-1.2, 0.4],
        ];
        let data = Dataset::new(rows.clone(), None).unwrap();
        let g = gram(&rd_spec(1.5, 1), &data).unwrap();
        for i in 0..rows.len() {
            for j in 0..rows.len() {
                let r2: f64 =
                    rows[i].iter().zip(&rows[j]).map(|(a, b)| (a - b) * (a - b)).sum();
                let classical = (-r2 / (1.5 * 1.5)).exp();
                assert!((g[(i, j)] - classical).abs() <= 1e-14);
            }
        }
    }

    #[test]
    fn psd_check_basics() {
        let id = DMatrix::<f64>::identity(4, 4);
        let rep = psd_check(&id, 1e-10).unwrap();
        assert!(rep.passed);
        assert_abs_diff_eq!(rep.min_eig, 1.0, epsilon = 1e-12);
        let mut asym = id.clone();
        asym[(0, 1)] = 0.5;
        assert!(matches!(psd_check(&asym, 1e-10), Err(Error::Asymmetric(_))));
    }

    #[test]
    fn duplicated_row_stays_psd() {
        let mut rows = vec![vec![0.1], vec![0.9], vec![-0.7]];
        rows.push(rows[0].clone());
        let data = Dataset::new(rows, None).unwrap();
        let g = gram(&rd_spec(2.0, 3), &data).unwrap();
        let rep = psd_check(&g, 1e-8).unwrap();
        assert!(rep.passed, "min_eig = {}", rep.min_eig);
    }

    #[test]
    fn krr_single_point() {
        let data = Dataset::new(vec![vec![0.5, 0.5]], Some(vec![3.25])).unwrap();
        let model = krr_fit(&rd_spec(2.0, 2), &data, 0.0).unwrap();
        let pred = krr_predict(&model, &[vec![0.5, 0.5]]).unwrap();
        assert_abs_diff_eq!(pred[0], 3.25, epsilon = 1e-12);
    }

    #[test]
    fn krr_interpolates_kernel_sections() {
        // targets sampled from f(x) = K(x, p): exact interpolation at lambda=0
        let spec = rd_spec(2.0, 2);
        let p = vec![0.3, -0.4];
        let rows: Vec<Vec<f64>> = (0..20)
            .map(|i| {
                let t = i as f64 / 19.0 * 3.0 - 1.5;
                vec![t, (1.3 * t).sin()]
            })
            .collect();
        let y: Vec<f64> = rows
            .iter()
            .map(|r| poly_rbf_kernel_rd(2.0, 2, r, &p).unwrap())
            .collect();
        let data = Dataset::new(rows.clone(), Some(y.clone())).unwrap();
        let model = krr_fit(&spec, &data, 0.0).unwrap();
        let pred = krr_predict(&model, &rows).unwrap();
        for (got, want) in pred.iter().zip(&y) {
            assert!((got - want).abs() <= 1e-6 * want.abs().max(1.0));
        }
    }

    #[test]
    fn ridge_limit_drives_predictions_down() {
        let rows = vec![vec![0.0], vec![1.0], vec![2.0]];
        let y = vec![1.0, 2.0, 3.0];
        let data = Dataset::new(rows.clone(), Some(y)).unwrap();
        let model = krr_fit(&rd_spec(2.0, 1), &data, 1e9).unwrap();
        let pred = krr_predict(&model, &rows).unwrap();
        for p in pred {
            assert!(p.abs() < 1e-6);
        }
    }

    #[test]
    fn krr_permutation_invariance() {
        let rows = vec![vec![0.0], vec![0.7], vec![-1.2], vec![2.0]];
        let y = vec![0.3, -0.5, 1.1, 0.9];
        let data = Dataset::new(rows.clone(), Some(y.clone())).unwrap();
        let model = krr_fit(&rd_spec(2.0, 3), &data, 1e-8).unwrap();
        let perm = [2usize, 0, 3, 1];
        let rows_p: Vec<Vec<f64>> = perm.iter().map(|&i| rows[i].clone()).collect();
        let y_p: Vec<f64> = perm.iter().map(|&i| y[i]).collect();
        let model_p = krr_fit(&rd_spec(2.0, 3), &Dataset::new(rows_p, Some(y_p)).unwrap(), 1e-8)
            .unwrap();
        let query = vec![vec![0.4], vec![-0.9]];
        let a = krr_predict(&model, &query).unwrap();
        let b = krr_predict(&model_p, &query).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn predict_dimension_mismatch() {
        let data = Dataset::new(vec![vec![0.0, 1.0]], Some(vec![1.0])).unwrap();
        let model = krr_fit(&rd_spec(2.0, 1), &data, 0.0).unwrap();
        assert!(matches!(
            krr_predict(&model, &[vec![1.0]]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn csv_round_trip_and_errors() {
        let dir = std::env::temp_dir().join(format!("polyrbf-mlkit-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();

        let path = dir.join("data.csv");
        std::fs::write(&path, "a,b,y\n1,2,3\n4.5,-0.25,0.125\n7,8,9\n").unwrap();
        let data = load_csv(&path, Some("y")).unwrap();
        assert_eq!(data.dim(), 2);
        assert_eq!(data.len(), 3);
        assert_eq!(data.targets().unwrap(), &[3.0, 0.125, 9.0]);

        // bit-exact round trip
        let out = dir.join("echo.csv");
        write_csv(&data, &out, Some("y")).unwrap();
        let again = load_csv(&out, Some("y")).unwrap();
        assert_eq!(data, again);

        // inf cell rejected with its location
        let bad = dir.join("bad.csv");
        std::fs::write(&bad, "a,b\n1,inf\n").unwrap();
        match load_csv(&bad, None) {
            Err(Error::Csv { row: 1, col: 2, .. }) => {}
            other => panic!("expected csv error, got {other:?}"),
        }

        std::fs::remove_dir_all(&dir).ok();
    }

    #[test]
    fn model_json_round_trip() {
        let data = Dataset::new(vec![vec![0.0], vec![1.0]], Some(vec![0.5, -0.5])).unwrap();
        let model = krr_fit(&rd_spec(2.0, 2), &data, 1e-10).unwrap();
        let dir = std::env::temp_dir().join(format!("polyrbf-model-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("model.json");
        save_model(&model, &path).unwrap();
        let back = load_model(&path).unwrap();
        assert_eq!(model, back);
        std::fs::remove_dir_all(&dir).ok();
    }
}
