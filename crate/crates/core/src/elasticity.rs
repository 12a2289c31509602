//! Hicks and Allen elasticities of substitution, the bordered Hessian and the
//! constant-elasticity probe.
//!
//! Pair indices `i`, `j` are 1-based, matching the variable names `x1..xn`.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::funcspec::FunctionSpec;
use crate::jets::{jet_multivariate, Jet2N};
use crate::linalg;

/// Relative zero threshold for the Hicks denominator and the bordered
/// determinant.
pub const SINGULARITY_TOL: f64 = 1e-12;

fn check_pair(n: usize, i: usize, j: usize) -> Result<()> {
    if i == j || i == 0 || j == 0 || i > n || j > n {
        return Err(Error::Spec(format!("pair ({i}, {j}) must be distinct indices in 1..={n}")));
    }
    Ok(())
}

fn check_orthant(point: &[f64]) -> Result<()> {
    match point.iter().enumerate().find(|(_, &x)| !(x > 0.0)) {
        Some((k, x)) => Err(Error::Domain(format!(
            "x{} = {x} is outside the positive orthant",
            k + 1
        ))),
        None => Ok(()),
    }
}

fn nonzero_partial(jet: &Jet2N, index: usize) -> Result<f64> {
    let g = jet.gradient[index - 1];
    if g == 0.0 {
        Err(Error::ZeroGradient { index })
    } else {
        Ok(g)
    }
}

/// Hicks elasticity from an already computed jet; `i`, `j` are 1-based.
pub fn hicks_from_jet(jet: &Jet2N, point: &[f64], i: usize, j: usize) -> Result<f64> {
    // evaluate in canonical order so H_ij and H_ji are bit-identical
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    let fi = nonzero_partial(jet, i)?;
    let fj = nonzero_partial(jet, j)?;
    let (a, b) = (i - 1, j - 1);
    let t1 = jet.hessian[(a, a)] / (fi * fi);
    let t2 = -2.0 * jet.hessian[(a, b)] / (fi * fj);
    let t3 = jet.hessian[(b, b)] / (fj * fj);
    let den = t1 + t2 + t3;
    let (n1, n2) = (1.0 / (point[a] * fi), 1.0 / (point[b] * fj));
    // The second test catches denominators whose terms are themselves
    // cancellation noise (e.g. a function linear in x_i and x_j), which the
    // first cannot see; it caps |H_ij| near 1 / SINGULARITY_TOL.
    if !(den.abs() > SINGULARITY_TOL * (t1.abs() + t2.abs() + t3.abs()))
        || !(den.abs() > SINGULARITY_TOL * (n1.abs() + n2.abs()))
    {
        return Err(Error::HicksUndefined { i, j });
    }
    Ok(-(n1 + n2) / den)
}

/// Hicks elasticity of substitution `H_ij`.
pub fn hicks(spec: &FunctionSpec, point: &[f64], i: usize, j: usize) -> Result<f64> {
    check_pair(spec.dim(), i, j)?;
    check_orthant(point)?;
    let jet = jet_multivariate(spec, point)?;
    hicks_from_jet(&jet, point, i, j)
}

fn bordered_from_jet(jet: &Jet2N) -> DMatrix<f64> {
    let n = jet.dim();
    DMatrix::from_fn(n + 1, n + 1, |r, c| match (r, c) {
        (0, 0) => 0.0,
        (0, c) => jet.gradient[c - 1],
        (r, 0) => jet.gradient[r - 1],
        (r, c) => jet.hessian[(r - 1, c - 1)],
    })
}

/// The `(n+1) x (n+1)` bordered Hessian `[[0, grad^T], [grad, H]]` and its
/// determinant.
pub fn bordered_hessian(spec: &FunctionSpec, point: &[f64]) -> Result<(DMatrix<f64>, f64)> {
    let jet = jet_multivariate(spec, point)?;
    let m = bordered_from_jet(&jet);
    let det = linalg::determinant(&m);
    Ok((m, det))
}

/// `det(H^B) / prod ||row||`, the scale-free size of the bordered determinant.
pub fn relative_bordered_det(spec: &FunctionSpec, point: &[f64]) -> Result<f64> {
    let (m, det) = bordered_hessian(spec, point)?;
    Ok(linalg::relative_determinant(det, &m))
}

fn allen_from_parts(m: &DMatrix<f64>, det: f64, jet: &Jet2N, point: &[f64], i: usize, j: usize) -> Result<f64> {
    let relative_det = linalg::relative_determinant(det, m);
    if !(relative_det.abs() > SINGULARITY_TOL) {
        return Err(Error::AllenUndefined { relative_det });
    }
    let weighted: f64 = point.iter().zip(&jet.gradient).map(|(x, g)| x * g).sum();
    let cof = linalg::cofactor(m, i, j);
    Ok(weighted / (point[i - 1] * point[j - 1]) * cof / det)
}

/// Allen elasticity of substitution
/// `A_ij = (sum_k x_k f_k) / (x_i x_j) * C_ij / det(H^B)`,
/// where `C_ij` is the signed cofactor of the entry `f_{x_i x_j}` of the
/// bordered Hessian. For two variables this coincides with [`hicks`].
pub fn allen(spec: &FunctionSpec, point: &[f64], i: usize, j: usize) -> Result<f64> {
    check_pair(spec.dim(), i, j)?;
    check_orthant(point)?;
    let jet = jet_multivariate(spec, point)?;
    nonzero_partial(&jet, i)?;
    nonzero_partial(&jet, j)?;
    let m = bordered_from_jet(&jet);
    let det = linalg::determinant(&m);
    allen_from_parts(&m, det, &jet, point, i, j)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ElasticityReport {
    /// `hicks[i][j]` for 0-based `i != j`; `None` on the diagonal and where
    /// the pair is undefined.
    pub hicks: Vec<Vec<Option<f64>>>,
    /// Allen matrix, present only when the bordered Hessian is nonsingular.
    pub allen: Option<Vec<Vec<f64>>>,
    pub bordered_det: f64,
    /// Signed cofactors of the Hessian block entries of the bordered Hessian.
    pub cofactors: Vec<Vec<f64>>,
}

/// Every elasticity quantity at one point.
pub fn elasticity_report(spec: &FunctionSpec, point: &[f64]) -> Result<ElasticityReport> {
    check_orthant(point)?;
    let jet = jet_multivariate(spec, point)?;
    let n = jet.dim();
    let m = bordered_from_jet(&jet);
    let det = linalg::determinant(&m);
    let cofactors: Vec<Vec<f64>> = (1..=n)
        .map(|i| (1..=n).map(|j| linalg::cofactor(&m, i, j)).collect())
        .collect();
    let hicks = (1..=n)
        .map(|i| {
            (1..=n)
                .map(|j| if i == j { None } else { hicks_from_jet(&jet, point, i, j).ok() })
                .collect()
        })
        .collect();
    let singular = !(linalg::relative_determinant(det, &m).abs() > SINGULARITY_TOL);
    let has_zero_partial = jet.gradient.iter().any(|g| *g == 0.0);
    let allen = if singular || has_zero_partial {
        None
    } else {
        let weighted: f64 = point.iter().zip(&jet.gradient).map(|(x, g)| x * g).sum();
        Some(
            (0..n)
                .map(|a| {
                    (0..n)
                        .map(|b| weighted / (point[a] * point[b]) * cofactors[a][b] / det)
                        .collect()
                })
                .collect(),
        )
    };
    Ok(ElasticityReport {
        hicks,
        allen,
        bordered_det: det,
        cofactors,
    })
}

/// A sample where some `H_ij` could not be evaluated.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UndefinedSample {
    /// Index into the sample list.
    pub point: usize,
    pub i: usize,
    pub j: usize,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CesVerdict {
    pub is_constant: bool,
    /// Mean of all sampled `H_ij`.
    pub sigma: f64,
    /// Max minus min of all sampled `H_ij`.
    pub spread: f64,
    pub undefined: Vec<UndefinedSample>,
}

/// Samples `H_ij` for every pair at every point. The elasticity is declared
/// constant when every value is defined and `max - min <= tol`.
pub fn ces_probe(spec: &FunctionSpec, sample_points: &[Vec<f64>], tol: f64) -> Result<CesVerdict> {
    let n = spec.dim();
    if n < 2 {
        return Err(Error::Spec("elasticity of substitution needs at least two variables".into()));
    }
    if sample_points.len() < 2 {
        return Err(Error::Spec("constant-elasticity probe needs at least two sample points".into()));
    }
    let mut values = Vec::new();
    let mut undefined = Vec::new();
    for (k, p) in sample_points.iter().enumerate() {
        check_orthant(p)?;
        let jet = jet_multivariate(spec, p)?;
        for i in 1..=n {
            for j in (i + 1)..=n {
                match hicks_from_jet(&jet, p, i, j) {
                    Ok(h) => values.push(h),
                    Err(e @ (Error::HicksUndefined { .. } | Error::ZeroGradient { .. })) => {
                        undefined.push(UndefinedSample {
                            point: k,
                            i,
                            j,
                            reason: e.to_string(),
                        })
                    }
                    Err(e) => return Err(e),
                }
            }
        }
    }
    let (lo, hi) = values
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)));
    let spread = if values.is_empty() { f64::INFINITY } else { hi - lo };
    let sigma = if values.is_empty() {
        f64::NAN
    } else {
        values.iter().sum::<f64>() / values.len() as f64
    };
    Ok(CesVerdict {
        is_constant: undefined.is_empty() && spread <= tol,
        sigma,
        spread,
        undefined,
    })
}
