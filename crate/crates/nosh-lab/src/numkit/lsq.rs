use nalgebra::{DMatrix, DVector};

use super::NumError;

/// Relative tolerance on QR / LU pivot magnitudes below which a column is
/// declared linearly dependent.
const PIVOT_REL_TOL: f64 = 1e-10;

/// Column-labeled design matrix.
///
/// Invariants: at least one column, all columns the same length with at least
/// one row, all values finite, labels unique and non-empty. Data is stored
/// column-major so per-column slices are contiguous.
#[derive(Debug, Clone)]
pub struct DesignMatrix {
    names: Vec<String>,
    mat: DMatrix<f64>,
}

impl DesignMatrix {
    /// Builds a labeled design matrix from `(name, values)` pairs.
    pub fn from_columns<S: Into<String>>(columns: Vec<(S, Vec<f64>)>) -> Result<Self, NumError> {
        if columns.is_empty() {
            return Err(NumError::InvalidInput("design matrix has no columns".into()));
        }
        let mut names = Vec::with_capacity(columns.len());
        let mut cols = Vec::with_capacity(columns.len());
        for (name, values) in columns {
            names.push(name.into());
            cols.push(values);
        }
        let n = cols[0].len();
        if n == 0 {
            return Err(NumError::InvalidInput("design matrix has no rows".into()));
        }
        for (j, name) in names.iter().enumerate() {
            if name.is_empty() {
                return Err(NumError::InvalidInput(format!(
                    "design column {j} has an empty name"
                )));
            }
            if names[..j].contains(name) {
                return Err(NumError::InvalidInput(format!(
                    "duplicate design column name {name:?}"
                )));
            }
            if cols[j].len() != n {
                return Err(NumError::InvalidInput(format!(
                    "design column {name:?} has {} rows, expected {n}",
                    cols[j].len()
                )));
            }
            if !cols[j].iter().all(|v| v.is_finite()) {
                return Err(NumError::InvalidInput(format!(
                    "design column {name:?} contains a non-finite value"
                )));
            }
        }

        let mut mat = DMatrix::zeros(n, names.len());
        for (j, col) in cols.iter().enumerate() {
            mat.column_mut(j).copy_from_slice(col);
        }
        Ok(Self { names, mat })
    }

    /// Number of rows.
    pub fn n_rows(&self) -> usize {
        self.mat.nrows()
    }

    /// Number of columns.
    pub fn n_cols(&self) -> usize {
        self.mat.ncols()
    }

    /// Column labels, in order.
    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// The underlying matrix.
    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.mat
    }
}

/// Result of a least-squares fit.
#[derive(Debug, Clone)]
pub struct LinearFit {
    /// Coefficients, in design-column order.
    pub coefficients: Vec<f64>,
    /// Residuals `y - X b`, one per row.
    pub residuals: Vec<f64>,
    /// HC0 sandwich covariance of the coefficients (symmetric, positive
    /// semidefinite up to roundoff).
    pub robust_cov: DMatrix<f64>,
}

impl LinearFit {
    /// Heteroskedasticity-robust standard error of coefficient `j`.
    pub fn robust_se(&self, j: usize) -> f64 {
        self.robust_cov[(j, j)].sqrt()
    }
}

/// Thin QR factorization with an explicit rank check.
///
/// Shared by ordinary least squares and the two-stage IV fits; callers get
/// coefficient solves and column-space projections without re-factorizing.
pub(crate) struct QrLs {
    q: DMatrix<f64>,
    r: DMatrix<f64>,
}

impl QrLs {
    /// Factorizes `x`, failing with the offending column names if any QR
    /// diagonal entry falls below [`PIVOT_REL_TOL`] relative to the largest.
    pub(crate) fn new(x: DMatrix<f64>, names: &[String]) -> Result<Self, NumError> {
        let (n, k) = (x.nrows(), x.ncols());
        debug_assert_eq!(k, names.len());
        if n < k {
            return Err(NumError::InvalidInput(format!(
                "least squares needs at least as many rows ({n}) as columns ({k})"
            )));
        }
        let (q, r) = x.qr().unpack();
        let max_diag = (0..k).map(|j| r[(j, j)].abs()).fold(0.0, f64::max);
        let offending: Vec<String> = (0..k)
            .filter(|&j| r[(j, j)].abs() <= PIVOT_REL_TOL * max_diag)
            .map(|j| names[j].clone())
            .collect();
        if max_diag == 0.0 {
            return Err(NumError::RankDeficient {
                columns: names.to_vec(),
            });
        }
        if !offending.is_empty() {
            return Err(NumError::RankDeficient { columns: offending });
        }
        Ok(Self { q, r })
    }

    /// Least-squares coefficients for response `y`: `R^-1 Q' y`.
    pub(crate) fn solve(&self, y: &DVector<f64>) -> Result<DVector<f64>, NumError> {
        let qty = self.q.tr_mul(y);
        self.r
            .solve_upper_triangular(&qty)
            .ok_or_else(|| NumError::InvalidInput("triangular solve failed".into()))
    }

    /// Orthogonal projection of `v` onto the column space: `Q Q' v`.
    pub(crate) fn project(&self, v: &DVector<f64>) -> DVector<f64> {
        &self.q * self.q.tr_mul(v)
    }
}

/// Ordinary least squares of `y` on the columns of `x`, with HC0 standard
/// errors.
///
/// Fails if shapes disagree, `y` has non-finite entries, there are fewer rows
/// than columns, or the design is rank deficient (the error names the
/// dependent columns).
pub fn fit_least_squares(y: &[f64], x: &DesignMatrix) -> Result<LinearFit, NumError> {
    let n = x.n_rows();
    if y.len() != n {
        return Err(NumError::InvalidInput(format!(
            "response has {} rows but design has {n}",
            y.len()
        )));
    }
    if !y.iter().all(|v| v.is_finite()) {
        return Err(NumError::InvalidInput(
            "response contains a non-finite value".into(),
        ));
    }
    let qr = QrLs::new(x.matrix().clone(), x.names())?;
    let yv = DVector::from_column_slice(y);
    let b = qr.solve(&yv)?;
    let residuals: Vec<f64> = (&yv - x.matrix() * &b).iter().copied().collect();
    let robust_cov = sandwich_cov(x, x, &residuals)?;
    Ok(LinearFit {
        coefficients: b.iter().copied().collect(),
        residuals,
        robust_cov,
    })
}

/// HC0 sandwich covariance for just-identified moment conditions
/// `W'(y - R b) = 0`:
///
/// ```text
/// V = (W'R)^-1 (sum_i e_i^2 w_i w_i') (R'W)^-1
/// ```
///
/// where `W` are instruments, `R` regressors, and `e` the residuals computed
/// from the *actual* regressors. With `W = R` this reduces to the usual HC0
/// covariance for ordinary least squares. The result is symmetrized to remove
/// roundoff asymmetry. A numerically singular `W'R` yields
/// [`NumError::SingularCrossProduct`], the classic symptom of weak or
/// collinear instruments.
pub fn sandwich_cov(
    regressors: &DesignMatrix,
    instruments: &DesignMatrix,
    residuals: &[f64],
) -> Result<DMatrix<f64>, NumError> {
    let n = regressors.n_rows();
    let k = regressors.n_cols();
    if instruments.n_rows() != n {
        return Err(NumError::InvalidInput(format!(
            "instruments have {} rows but regressors have {n}",
            instruments.n_rows()
        )));
    }
    if instruments.n_cols() != k {
        return Err(NumError::InvalidInput(format!(
            "just-identified sandwich needs equal column counts: instruments have {}, regressors {k}",
            instruments.n_cols()
        )));
    }
    if residuals.len() != n {
        return Err(NumError::InvalidInput(format!(
            "residuals have {} rows but design has {n}",
            residuals.len()
        )));
    }
    if !residuals.iter().all(|v| v.is_finite()) {
        return Err(NumError::InvalidInput(
            "residuals contain a non-finite value".into(),
        ));
    }

    let w = instruments.matrix();
    let r = regressors.matrix();

    // Meat: S = sum_i e_i^2 w_i w_i', accumulated over contiguous column
    // slices (upper triangle, then mirrored).
    let mut s = DMatrix::zeros(k, k);
    for a in 0..k {
        let col_a = w.column(a);
        let col_a = col_a.as_slice();
        for b in a..k {
            let col_b = w.column(b);
            let col_b = col_b.as_slice();
            let mut acc = 0.0;
            for i in 0..n {
                let e = residuals[i];
                acc += e * e * col_a[i] * col_b[i];
            }
            s[(a, b)] = acc;
            s[(b, a)] = acc;
        }
    }

    // Bread: A = W'R, inverted via LU with a pivot-magnitude check.
    let a = w.tr_mul(r);
    let lu = a.full_piv_lu();
    let u_diag: Vec<f64> = (0..k).map(|j| lu.u()[(j, j)].abs()).collect();
    let max_pivot = u_diag.iter().fold(0.0f64, |m, &v| m.max(v));
    if max_pivot == 0.0 || u_diag.iter().any(|&v| v <= PIVOT_REL_TOL * max_pivot) {
        return Err(NumError::SingularCrossProduct {
            columns: instruments.names().to_vec(),
        });
    }

    // V = A^-1 S A^-T, then symmetrize.
    let t = lu
        .solve(&s)
        .ok_or_else(|| NumError::SingularCrossProduct {
            columns: instruments.names().to_vec(),
        })?;
    let v = lu
        .solve(&t.transpose())
        .ok_or_else(|| NumError::SingularCrossProduct {
            columns: instruments.names().to_vec(),
        })?;
    Ok((&v + v.transpose()) * 0.5)
}

/// Sample mean.
pub fn sample_mean(x: &[f64]) -> Result<f64, NumError> {
    if x.is_empty() {
        return Err(NumError::InvalidInput("mean of an empty slice".into()));
    }
    Ok(x.iter().sum::<f64>() / x.len() as f64)
}

/// Sample covariance with the n-1 divisor. Needs at least two observations.
pub fn sample_cov(x: &[f64], y: &[f64]) -> Result<f64, NumError> {
    if x.len() != y.len() {
        return Err(NumError::InvalidInput(format!(
            "covariance inputs have different lengths: {} vs {}",
            x.len(),
            y.len()
        )));
    }
    if x.len() < 2 {
        return Err(NumError::InvalidInput(
            "covariance needs at least two observations".into(),
        ));
    }
    let mx = sample_mean(x)?;
    let my = sample_mean(y)?;
    let acc: f64 = x
        .iter()
        .zip(y)
        .map(|(&a, &b)| (a - mx) * (b - my))
        .sum();
    Ok(acc / (x.len() - 1) as f64)
}

/// Sample median: the middle order statistic, or the mean of the two middle
/// order statistics when the length is even.
pub fn sample_median(x: &[f64]) -> Result<f64, NumError> {
    if x.is_empty() {
        return Err(NumError::InvalidInput("median of an empty slice".into()));
    }
    let mut v = x.to_vec();
    v.sort_unstable_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        Ok(v[n / 2])
    } else {
        Ok((v[n / 2 - 1] + v[n / 2]) / 2.0)
    }
}
