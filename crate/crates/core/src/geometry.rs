//! Graph-hypersurface geometry: Hessian determinants, the gradient factor
//! `omega = sqrt(1 + |grad f|^2)` and the Gauss-Kronecker curvature
//! `G = det(H) / omega^(n+2)` of the graph `x -> (x, f(x))`.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::funcspec::FunctionSpec;
use crate::jets::{jet1d, jet_multivariate, Jet1, Jet2N};
use crate::linalg;

/// Default zero threshold on `|G|`.
pub const DEFAULT_DEVELOPABLE_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurvatureRecord {
    pub omega: f64,
    pub hessian_det: f64,
    pub gk_curvature: f64,
    pub n: usize,
}

pub fn hessian(spec: &FunctionSpec, point: &[f64]) -> Result<DMatrix<f64>> {
    Ok(jet_multivariate(spec, point)?.hessian)
}

/// Determinant of the assembled Hessian by partial-pivot LU.
pub fn hessian_det_direct(spec: &FunctionSpec, point: &[f64]) -> Result<f64> {
    Ok(linalg::determinant(&hessian(spec, point)?))
}

/// Closed-form Hessian determinant of a homothetical product
/// `f = f1(x1) ... fn(xn)`:
///
/// ```text
/// det H = f^n [ (f1''/f1) prod_{i>=2} q_i + q_1 sum_{i>=2} r_i^2 prod_{k>=2, k!=i} q_k ]
/// ```
///
/// with `r_i = f_i'/f_i` and `q_i = (f_i'/f_i)' = (f_i'' f_i - f_i'^2) / f_i^2`.
/// The factor `f^n = prod f_k^n` is distributed over the bracket so every
/// `f_i^2` denominator cancels; the result needs no division and stays
/// defined where a component vanishes.
pub fn hessian_det_closed(spec: &FunctionSpec, point: &[f64]) -> Result<f64> {
    let components = match spec {
        FunctionSpec::Homothetical { components } => components,
        _ => return Err(Error::Spec("closed-form determinant needs a homothetical spec".into())),
    };
    // shares validation and domain checks with the multivariate path
    jet_multivariate(spec, point)?;
    let jets = components
        .iter()
        .zip(point)
        .map(|(c, &x)| jet1d(c, x))
        .collect::<Result<Vec<Jet1>>>()?;
    Ok(lemma_bracket(&jets))
}

fn lemma_bracket(jets: &[Jet1]) -> f64 {
    if jets.len() == 1 {
        return jets[0].d2;
    }
    let n = jets.len() as i32;
    // f_i^n * q_i and f_i^n * r_i^2, with the f_i^2 of the quotients absorbed
    let q: Vec<f64> = jets
        .iter()
        .map(|j| (j.d2 * j.value - j.d1 * j.d1) * j.value.powi(n - 2))
        .collect();
    let r2: Vec<f64> = jets.iter().map(|j| j.d1 * j.d1 * j.value.powi(n - 2)).collect();
    let first = &jets[0];

    let tail_product: f64 = q[1..].iter().product();
    let lead = first.d2 * first.value.powi(n - 1) * tail_product;
    let sum: f64 = (1..jets.len())
        .map(|i| {
            let others: f64 = q
                .iter()
                .enumerate()
                .skip(1)
                .filter(|&(k, _)| k != i)
                .map(|(_, v)| v)
                .product();
            r2[i] * others
        })
        .sum();
    lead + q[0] * sum
}

fn record(hessian_det: f64, gradient: &[f64]) -> CurvatureRecord {
    let n = gradient.len();
    let omega = (1.0 + gradient.iter().map(|g| g * g).sum::<f64>()).sqrt();
    CurvatureRecord {
        omega,
        hessian_det,
        gk_curvature: hessian_det / omega.powi(n as i32 + 2),
        n,
    }
}

/// Curvature of the graph at `point`. Homothetical specs take the determinant
/// from [`hessian_det_closed`], everything else from [`hessian_det_direct`].
pub fn gauss_kronecker(spec: &FunctionSpec, point: &[f64]) -> Result<CurvatureRecord> {
    let jet = jet_multivariate(spec, point)?;
    let hessian_det = match spec {
        FunctionSpec::Homothetical { .. } => hessian_det_closed(spec, point)?,
        _ => linalg::determinant(&jet.hessian),
    };
    Ok(record(hessian_det, &jet.gradient))
}

/// Curvature from an already computed jet (e.g. a finite-difference one),
/// with the determinant taken directly.
pub fn curvature_from_jet(jet: &Jet2N) -> CurvatureRecord {
    record(linalg::determinant(&jet.hessian), &jet.gradient)
}

/// `(max |G| <= tol, max |G|)` over the sample points.
pub fn is_developable(spec: &FunctionSpec, sample_points: &[Vec<f64>], tol: f64) -> Result<(bool, f64)> {
    if sample_points.is_empty() {
        return Err(Error::Spec("developability test needs at least one sample point".into()));
    }
    let mut max_abs = 0.0f64;
    for p in sample_points {
        max_abs = max_abs.max(gauss_kronecker(spec, p)?.gk_curvature.abs());
    }
    Ok((max_abs <= tol, max_abs))
}
