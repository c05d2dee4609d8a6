use super::potential::{dc_gradient_unchecked, pseudopotential_unchecked, rf_field_unchecked};
use super::{DcVoltages, ElectrodeLayout, IonSpecies, TrapError};
use crate::physcore::simplex::{nelder_mead, SimplexOptions};
use nalgebra::{Matrix3, SymmetricEigen, Vector3};
use std::f64::consts::{PI, SQRT_2};

/// Start heights for the null search, m.
pub const NULL_START_HEIGHTS: [f64; 4] = [30e-6, 60e-6, 120e-6, 240e-6];
/// Relative residual field accepted at a null: |E|·z/V_rf.
const NULL_FIELD_TOLERANCE: f64 = 1e-9;
const DEPTH_RAYS: usize = 64;
const DEPTH_SAMPLES: usize = 500;
/// Rays extend to this multiple of the null height.
const DEPTH_REACH: f64 = 10.0;
/// Stability limit of the Mathieu equation on the a = 0 line.
pub const Q_STABILITY_LIMIT: f64 = 0.908;

#[derive(Clone, Debug, PartialEq)]
pub struct RfNull {
    pub position: [f64; 3],
    pub height: f64,
    /// |E_rf| at the returned point, V/m.
    pub residual_field: f64,
    /// Number of starts that reached an accepted null.
    pub converged_starts: usize,
    /// Largest distance between accepted nulls from different starts, m.
    pub start_spread: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TrapSolution {
    pub null: RfNull,
    /// ω_i in rad/s, ascending curvature; 0 for unstable axes.
    pub secular_frequencies: [f64; 3],
    /// Unit principal axes, one per frequency.
    pub axes: [[f64; 3]; 3],
    /// Hessian eigenvalues of the total potential, J/m².
    pub curvatures: [f64; 3],
    pub q_params: [f64; 3],
    /// Lowest barrier over the escape rays, J.
    pub trap_depth: f64,
    pub unstable_axes: Vec<usize>,
}

impl TrapSolution {
    pub fn trap_depth_ev(&self) -> f64 {
        self.trap_depth / crate::physcore::constants::ELEMENTARY_CHARGE
    }

    /// All axes stable and every |q| inside the first stability region.
    pub fn is_valid(&self) -> bool {
        self.unstable_axes.is_empty() && self.q_params.iter().all(|q| q.abs() < Q_STABILITY_LIMIT)
    }
}

/// Locates the RF null in the x–z plane through the axial centre of the RF
/// electrodes by Nelder-Mead on (x/L, ln z/L), started from several heights.
pub fn find_rf_null(layout: &ElectrodeLayout, _species: &IonSpecies) -> Result<RfNull, TrapError> {
    let (xc, yc) = layout.rf_center();
    let scale = 0.5 * layout.rf_extent_x();
    let v_rf = layout.rf_voltage_amplitude.abs();
    if v_rf == 0.0 {
        return Err(TrapError::NoTrap);
    }
    let (v_lo, v_hi) = ((1e-4f64).ln(), (1e4f64).ln());
    let to_point = |p: &[f64]| [xc + scale * p[0], yc, scale * p[1].exp()];
    // |E|² in units of (V_rf/L)²; the minimiser is that of Ψ
    let objective = |p: &[f64]| {
        if !(p[1] > v_lo && p[1] < v_hi) || !p[0].is_finite() {
            return f64::INFINITY;
        }
        let e = rf_field_unchecked(layout, to_point(p));
        (e[0] * e[0] + e[1] * e[1] + e[2] * e[2]) * (scale / v_rf).powi(2)
    };
    let opts = SimplexOptions {
        initial_step: vec![0.05, 0.1],
        x_tolerance: 1e-11,
        f_tolerance: f64::INFINITY,
        max_iterations: 5000,
    };
    let mut accepted: Vec<([f64; 3], f64)> = Vec::new();
    for &z0 in &NULL_START_HEIGHTS {
        let result = nelder_mead(objective, &[0.0, (z0 / scale).ln()], &opts);
        if !result.converged {
            continue;
        }
        let point = to_point(&result.x);
        let z = point[2];
        if !(z > 1e-3 * scale && z < 1e3 * scale) {
            continue;
        }
        let e = rf_field_unchecked(layout, point);
        let e_abs = (e[0] * e[0] + e[1] * e[1] + e[2] * e[2]).sqrt();
        if e_abs * z / v_rf < NULL_FIELD_TOLERANCE {
            accepted.push((point, e_abs));
        }
    }
    let best = accepted
        .iter()
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .ok_or(TrapError::NoTrap)?;
    let mut spread = 0.0_f64;
    for (i, a) in accepted.iter().enumerate() {
        for b in &accepted[i + 1..] {
            spread = spread.max(distance(a.0, b.0));
        }
    }
    Ok(RfNull {
        position: best.0,
        height: best.0[2],
        residual_field: best.1,
        converged_starts: accepted.len(),
        start_spread: spread,
    })
}

fn distance(a: [f64; 3], b: [f64; 3]) -> f64 {
    ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)).sqrt()
}

fn shifted(p: [f64; 3], k: usize, d: f64) -> [f64; 3] {
    let mut q = p;
    q[k] += d;
    q
}

fn richardson(coarse: Matrix3<f64>, fine: Matrix3<f64>) -> Matrix3<f64> {
    (fine * 4.0 - coarse) / 3.0
}

fn pseudo_hessian_step(layout: &ElectrodeLayout, species: &IonSpecies, p: [f64; 3], h: f64) -> Matrix3<f64> {
    let f = |q: [f64; 3]| pseudopotential_unchecked(layout, species, q);
    let f0 = f(p);
    let mut m = Matrix3::zeros();
    for i in 0..3 {
        m[(i, i)] = (f(shifted(p, i, h)) - 2.0 * f0 + f(shifted(p, i, -h))) / (h * h);
        for j in i + 1..3 {
            let pp = f(shifted(shifted(p, i, h), j, h));
            let pm = f(shifted(shifted(p, i, h), j, -h));
            let mp = f(shifted(shifted(p, i, -h), j, h));
            let mm = f(shifted(shifted(p, i, -h), j, -h));
            let v = (pp - pm - mp + mm) / (4.0 * h * h);
            m[(i, j)] = v;
            m[(j, i)] = v;
        }
    }
    m
}

fn dc_hessian_step(layout: &ElectrodeLayout, dc: &DcVoltages, p: [f64; 3], h: f64) -> Matrix3<f64> {
    let mut m = Matrix3::zeros();
    for j in 0..3 {
        let up = dc_gradient_unchecked(layout, dc, shifted(p, j, h));
        let dn = dc_gradient_unchecked(layout, dc, shifted(p, j, -h));
        for i in 0..3 {
            m[(i, j)] = (up[i] - dn[i]) / (2.0 * h);
        }
    }
    (m + m.transpose()) * 0.5
}

/// Hessians at `point` of the pseudopotential and of the DC potential energy
/// (charge × potential), J/m², each with step z/1e4 and one Richardson level.
pub fn total_hessian(
    layout: &ElectrodeLayout,
    species: &IonSpecies,
    dc: &DcVoltages,
    point: [f64; 3],
) -> Result<(Matrix3<f64>, Matrix3<f64>), TrapError> {
    if !(point[2] > 0.0) {
        return Err(TrapError::Domain("Hessian point must lie above the plane".into()));
    }
    let h = point[2] / 1e4;
    let rf = richardson(
        pseudo_hessian_step(layout, species, point, h),
        pseudo_hessian_step(layout, species, point, h / 2.0),
    );
    let dc = richardson(dc_hessian_step(layout, dc, point, h), dc_hessian_step(layout, dc, point, h / 2.0))
        * species.charge;
    Ok((rf, dc))
}

fn total_energy(layout: &ElectrodeLayout, species: &IonSpecies, dc: &DcVoltages, p: [f64; 3]) -> f64 {
    let phi: f64 = layout
        .strips()
        .iter()
        .filter(|s| s.role != super::Role::Rf)
        .map(|s| {
            let v = dc.voltage(s.role);
            if v == 0.0 {
                0.0
            } else {
                v * super::potential::rect_potential(s, p).unwrap_or(0.0)
            }
        })
        .sum();
    pseudopotential_unchecked(layout, species, p) + species.charge * phi
}

/// Lowest barrier along rays in the x–z plane leaving the null.
fn trap_depth(layout: &ElectrodeLayout, species: &IonSpecies, dc: &DcVoltages, null: [f64; 3]) -> f64 {
    let height = null[2];
    let u0 = total_energy(layout, species, dc, null);
    let reach = DEPTH_REACH * height;
    let floor = 1e-3 * height;
    (0..DEPTH_RAYS)
        .map(|k| {
            let theta = 2.0 * PI * k as f64 / DEPTH_RAYS as f64;
            let (dx, dz) = (theta.cos(), theta.sin());
            let mut barrier = 0.0_f64;
            for i in 1..=DEPTH_SAMPLES {
                let s = reach * i as f64 / DEPTH_SAMPLES as f64;
                let p = [null[0] + s * dx, null[1], null[2] + s * dz];
                if p[2] < floor {
                    break;
                }
                barrier = barrier.max(total_energy(layout, species, dc, p) - u0);
            }
            barrier
        })
        .fold(f64::INFINITY, f64::min)
}

/// Secular frequencies, principal axes, stability parameters and depth of
/// the trap formed at the RF null by the pseudopotential plus DC potential.
pub fn secular_spectrum(
    layout: &ElectrodeLayout,
    species: &IonSpecies,
    dc: &DcVoltages,
) -> Result<TrapSolution, TrapError> {
    let null = find_rf_null(layout, species)?;
    let (h_rf, h_dc) = total_hessian(layout, species, dc, null.position)?;
    let eig = SymmetricEigen::new(h_rf + h_dc);
    let mut order = [0usize, 1, 2];
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));

    let mut frequencies = [0.0; 3];
    let mut axes = [[0.0; 3]; 3];
    let mut curvatures = [0.0; 3];
    let mut q_params = [0.0; 3];
    let mut unstable = Vec::new();
    for (slot, &i) in order.iter().enumerate() {
        let k = eig.eigenvalues[i];
        let v: Vector3<f64> = eig.eigenvectors.column(i).into_owned();
        curvatures[slot] = k;
        axes[slot] = [v[0], v[1], v[2]];
        if k > 0.0 {
            frequencies[slot] = (k / species.mass).sqrt();
        } else {
            unstable.push(slot);
        }
        let k_rf = (v.transpose() * h_rf * v)[(0, 0)].max(0.0);
        q_params[slot] = 2.0 * SQRT_2 * (k_rf / species.mass).sqrt() / layout.rf_frequency;
    }
    let depth = trap_depth(layout, species, dc, null.position);
    Ok(TrapSolution {
        null,
        secular_frequencies: frequencies,
        axes,
        curvatures,
        q_params,
        trap_depth: depth,
        unstable_axes: unstable,
    })
}
