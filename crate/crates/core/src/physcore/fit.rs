//! Levenberg-Marquardt least squares with a central-difference Jacobian.
//!
//! Every fitting operation in the crate goes through [`lm_fit`]. The damping
//! starts at `1e-3`, is multiplied by ten on a rejected step and divided by
//! ten on an accepted one. The damping matrix is `diag(JᵀWJ)` (Marquardt
//! scaling), floored so that parameters with a vanishing column stay solvable.
//!
//! Covariance convention: when explicit weights are supplied they are taken
//! as absolute `1/σ²`, and the covariance is `(JᵀWJ)⁻¹`. Without weights the
//! same matrix is scaled by the residual variance `χ²/(m−n)`.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FitError {
    #[error("model produced a non-finite value at parameters {0:?}")]
    SingularModel(Vec<f64>),
    #[error("underdetermined fit: {observations} observations for {parameters} parameters")]
    Rank {
        observations: usize,
        parameters: usize,
    },
    #[error("inputs and observations differ in length ({inputs} vs {observations})")]
    LengthMismatch { inputs: usize, observations: usize },
    #[error("weights must be positive and finite (index {0})")]
    BadWeight(usize),
    #[error("parameter name list has {names} entries for {parameters} parameters")]
    Names { names: usize, parameters: usize },
}

/// Finite-difference step rule: `h_i = max(min_step, relative·|θ_i|)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StepPolicy {
    pub min_step: f64,
    pub relative: f64,
}

impl Default for StepPolicy {
    fn default() -> Self {
        StepPolicy {
            min_step: 1e-8,
            relative: 1e-6,
        }
    }
}

impl StepPolicy {
    pub fn step(&self, value: f64) -> f64 {
        self.min_step.max(self.relative * value.abs())
    }
}

/// Central-difference Jacobian of a vector-valued model, rows are outputs.
pub fn numeric_jacobian<F>(model: F, params: &[f64], policy: &StepPolicy) -> Result<DMatrix<f64>, FitError>
where
    F: Fn(&[f64]) -> Vec<f64>,
{
    let mut jac: Option<DMatrix<f64>> = None;
    let mut probe = params.to_vec();
    for (j, &theta) in params.iter().enumerate() {
        let h = policy.step(theta);
        probe[j] = theta + h;
        let upper = checked_eval(&model, &probe)?;
        probe[j] = theta - h;
        let lower = checked_eval(&model, &probe)?;
        probe[j] = theta;
        let jac = jac.get_or_insert_with(|| DMatrix::zeros(upper.len(), params.len()));
        for (i, (u, l)) in upper.iter().zip(&lower).enumerate() {
            jac[(i, j)] = (u - l) / (2.0 * h);
        }
    }
    match jac {
        Some(jac) => Ok(jac),
        None => Ok(DMatrix::zeros(checked_eval(&model, params)?.len(), 0)),
    }
}

fn checked_eval<F>(model: &F, params: &[f64]) -> Result<Vec<f64>, FitError>
where
    F: Fn(&[f64]) -> Vec<f64>,
{
    let out = model(params);
    if out.iter().any(|v| !v.is_finite()) {
        return Err(FitError::SingularModel(params.to_vec()));
    }
    Ok(out)
}

/// Observations `y_i` taken at inputs `x_i`, optionally weighted by `1/σ_i²`.
#[derive(Clone, Copy, Debug)]
pub struct FitData<'a> {
    pub inputs: &'a [f64],
    pub observations: &'a [f64],
    pub weights: Option<&'a [f64]>,
}

impl<'a> FitData<'a> {
    pub fn new(inputs: &'a [f64], observations: &'a [f64]) -> Self {
        FitData {
            inputs,
            observations,
            weights: None,
        }
    }

    pub fn weighted(inputs: &'a [f64], observations: &'a [f64], weights: &'a [f64]) -> Self {
        FitData {
            inputs,
            observations,
            weights: Some(weights),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LmConfig {
    pub max_iterations: usize,
    /// Converge when an accepted step lowers the cost by less than this fraction.
    pub cost_tolerance: f64,
    /// Converge when the scaled gradient (max cosine between residual and
    /// Jacobian columns) drops below this.
    pub gradient_tolerance: f64,
    pub initial_damping: f64,
    pub damping_factor: f64,
    pub step: StepPolicy,
}

impl Default for LmConfig {
    fn default() -> Self {
        LmConfig {
            max_iterations: 200,
            cost_tolerance: 1e-10,
            gradient_tolerance: 1e-12,
            initial_damping: 1e-3,
            damping_factor: 10.0,
            step: StepPolicy::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FitResult {
    pub names: Vec<String>,
    pub params: Vec<f64>,
    pub covariance: DMatrix<f64>,
    /// `sqrt(Σ w_i r_i² / m)`.
    pub residual_rms: f64,
    pub chi_squared: f64,
    pub dof: usize,
    pub converged: bool,
    pub iterations: usize,
    /// `JᵀWJ` was singular at the solution; the affected variances are infinite.
    pub rank_deficient: bool,
}

impl FitResult {
    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn value(&self, name: &str) -> Option<f64> {
        self.index(name).map(|i| self.params[i])
    }

    /// One-sigma uncertainty of a parameter.
    pub fn sigma(&self, name: &str) -> Option<f64> {
        self.index(name).map(|i| self.sigma_at(i))
    }

    pub fn sigma_at(&self, index: usize) -> f64 {
        self.covariance[(index, index)].max(0.0).sqrt()
    }

    /// True when the parameter's relative uncertainty exceeds one, or it is
    /// not identifiable at all.
    pub fn poorly_constrained(&self, name: &str) -> bool {
        match self.index(name) {
            Some(i) => {
                let sigma = self.sigma_at(i);
                !sigma.is_finite() || sigma > self.params[i].abs()
            }
            None => true,
        }
    }
}

/// Fits `y ≈ model(x, θ)` starting from `initial`.
pub fn lm_fit<M>(
    model: M,
    data: &FitData<'_>,
    initial: &[f64],
    names: &[&str],
    config: &LmConfig,
) -> Result<FitResult, FitError>
where
    M: Fn(f64, &[f64]) -> f64,
{
    let m = data.observations.len();
    let n = initial.len();
    if data.inputs.len() != m {
        return Err(FitError::LengthMismatch {
            inputs: data.inputs.len(),
            observations: m,
        });
    }
    if names.len() != n {
        return Err(FitError::Names {
            names: names.len(),
            parameters: n,
        });
    }
    if m < n || n == 0 {
        return Err(FitError::Rank {
            observations: m,
            parameters: n,
        });
    }
    let sqrt_w: Vec<f64> = match data.weights {
        Some(w) => {
            if w.len() != m {
                return Err(FitError::LengthMismatch {
                    inputs: w.len(),
                    observations: m,
                });
            }
            if let Some(i) = w.iter().position(|&v| !(v > 0.0 && v.is_finite())) {
                return Err(FitError::BadWeight(i));
            }
            w.iter().map(|v| v.sqrt()).collect()
        }
        None => vec![1.0; m],
    };

    // Weighted residuals and predictions as vector functions of θ.
    let predict = |theta: &[f64]| -> Vec<f64> {
        data.inputs
            .iter()
            .zip(&sqrt_w)
            .map(|(&x, &s)| s * model(x, theta))
            .collect()
    };
    let residuals = |pred: &[f64]| -> DVector<f64> {
        DVector::from_iterator(
            m,
            data.observations
                .iter()
                .zip(&sqrt_w)
                .zip(pred)
                .map(|((y, s), p)| s * y - p),
        )
    };

    let mut theta = initial.to_vec();
    let mut r = residuals(&checked_eval(&predict, &theta)?);
    let mut cost = r.norm_squared();
    let mut lambda = config.initial_damping;
    let mut iterations = 0;
    let mut converged = false;

    'outer: while iterations < config.max_iterations {
        if cost == 0.0 {
            converged = true;
            break;
        }
        let jac = numeric_jacobian(&predict, &theta, &config.step)?;
        let gradient = jac.transpose() * &r;
        let r_norm = r.norm();
        let scaled_gradient = (0..n)
            .map(|j| {
                let col = jac.column(j).norm();
                if col == 0.0 {
                    0.0
                } else {
                    gradient[j].abs() / (col * r_norm)
                }
            })
            .fold(0.0, f64::max);
        if scaled_gradient < config.gradient_tolerance {
            converged = true;
            break;
        }
        let normal = jac.transpose() * &jac;
        let max_diag = (0..n).map(|j| normal[(j, j)]).fold(0.0, f64::max);
        let floor = if max_diag > 0.0 { max_diag * 1e-12 } else { 1.0 };

        while iterations < config.max_iterations {
            iterations += 1;
            let mut damped = normal.clone();
            for j in 0..n {
                damped[(j, j)] += lambda * normal[(j, j)].max(floor);
            }
            let Some(chol) = damped.cholesky() else {
                lambda *= config.damping_factor;
                continue;
            };
            let delta = chol.solve(&gradient);
            let trial: Vec<f64> = theta.iter().zip(delta.iter()).map(|(t, d)| t + d).collect();
            let trial_r = residuals(&checked_eval(&predict, &trial)?);
            let trial_cost = trial_r.norm_squared();
            if trial_cost <= cost {
                let decrease = (cost - trial_cost) / cost;
                theta = trial;
                r = trial_r;
                cost = trial_cost;
                lambda = (lambda / config.damping_factor).max(1e-300);
                if decrease < config.cost_tolerance {
                    converged = true;
                    break 'outer;
                }
                continue 'outer;
            }
            lambda *= config.damping_factor;
            if !lambda.is_finite() || lambda > 1e300 {
                break 'outer;
            }
        }
    }

    let jac = numeric_jacobian(&predict, &theta, &config.step)?;
    let normal = jac.transpose() * &jac;
    let dof = m - n;
    let scale = match data.weights {
        Some(_) => 1.0,
        None if dof > 0 => cost / dof as f64,
        None => 1.0,
    };
    let (covariance, rank_deficient) = covariance_from_normal(&normal, scale);
    Ok(FitResult {
        names: names.iter().map(|s| s.to_string()).collect(),
        params: theta,
        covariance,
        residual_rms: (cost / m as f64).sqrt(),
        chi_squared: cost,
        dof,
        converged,
        iterations,
        rank_deficient,
    })
}

/// Pseudo-inverse on the well-conditioned subspace; directions with a
/// vanishing eigenvalue get infinite variance on every parameter they touch.
/// The eigen decomposition runs on the diagonally scaled matrix so that
/// parameters of very different magnitude keep their correlations.
fn covariance_from_normal(normal: &DMatrix<f64>, scale: f64) -> (DMatrix<f64>, bool) {
    let n = normal.nrows();
    let d: Vec<f64> = (0..n)
        .map(|j| {
            let v = normal[(j, j)];
            if v > 0.0 {
                1.0 / v.sqrt()
            } else {
                0.0
            }
        })
        .collect();
    let scaled = DMatrix::from_fn(n, n, |i, j| normal[(i, j)] * d[i] * d[j]);
    let eig = SymmetricEigen::new(scaled);
    let max_eig = eig.eigenvalues.iter().fold(0.0_f64, |a, &b| a.max(b.abs()));
    let tol = max_eig * 1e-13 * n as f64;
    let mut cov = DMatrix::zeros(n, n);
    let mut degenerate: Vec<bool> = d.iter().map(|v| *v == 0.0).collect();
    let mut rank_deficient = degenerate.iter().any(|b| *b);
    for k in 0..n {
        let lam = eig.eigenvalues[k];
        let v = eig.eigenvectors.column(k);
        if lam > tol && lam > 0.0 {
            cov += (v * v.transpose()) * (scale / lam);
        } else {
            rank_deficient = true;
            for i in 0..n {
                if v[i].abs() > 1e-8 {
                    degenerate[i] = true;
                }
            }
        }
    }
    let mut cov = DMatrix::from_fn(n, n, |i, j| cov[(i, j)] * d[i] * d[j]);
    for (i, bad) in degenerate.into_iter().enumerate() {
        if bad {
            cov[(i, i)] = f64::INFINITY;
        }
    }
    (cov, rank_deficient)
}

/// Built-in model shapes shared by the fitting operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    /// `slope·x + intercept`
    Line,
    /// `amplitude·exp(−rate·x)`
    Exponential,
    /// `amplitude·exp(−(x−center)²/(2·sigma²)) + offset`
    Gaussian,
    /// `amplitude·(Γ/2)²/((x−center)² + (Γ/2)²) + offset`
    Lorentzian,
}

impl Shape {
    pub fn param_names(self) -> &'static [&'static str] {
        match self {
            Shape::Line => &["slope", "intercept"],
            Shape::Exponential => &["amplitude", "rate"],
            Shape::Gaussian => &["amplitude", "center", "sigma", "offset"],
            Shape::Lorentzian => &["amplitude", "center", "fwhm", "offset"],
        }
    }

    pub fn eval(self, x: f64, p: &[f64]) -> f64 {
        match self {
            Shape::Line => p[0] * x + p[1],
            Shape::Exponential => p[0] * (-p[1] * x).exp(),
            Shape::Gaussian => {
                let u = (x - p[1]) / p[2];
                p[0] * (-0.5 * u * u).exp() + p[3]
            }
            Shape::Lorentzian => {
                let half = 0.5 * p[2];
                p[0] * half * half / ((x - p[1]).powi(2) + half * half) + p[3]
            }
        }
    }

    pub fn fit(self, data: &FitData<'_>, initial: &[f64]) -> Result<FitResult, FitError> {
        lm_fit(|x, p| self.eval(x, p), data, initial, self.param_names(), &LmConfig::default())
    }
}
