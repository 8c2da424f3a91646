//! Combination weights for partially observed estimates.
//!
//! A node combines neighbor estimates `w_k = M_k w_opt + e_k`. With diagonal
//! (transform-domain) combiners the mean-square error splits into one scalar
//! problem per component:
//!
//! ```text
//! J(c) = (sum_k c_k d_k - 1)^2 s0 + sum_k c_k^2 s_k,    s_k = s0 / lambda_k^2
//! ```
//!
//! whose minimiser solves `(d d' + diag(lambda^-2)) c = d`. Three routes to
//! that solution are provided so they can check each other: the closed form
//! `c_l = d_l lambda_l^2 / (1 + sum_k d_k^2 lambda_k^2)`, a dense LU solve,
//! and an explicit Sherman–Morrison inverse of `diag(1/(d lambda^2)) + 1 d'`.
//!
//! The conventional (scalar weight per neighbor) problem couples all
//! components and is solved by accumulating rank-one updates of the inverse.

use nalgebra::{DMatrix, DVector};

use crate::error::{check_len, Error, Result};
use crate::transforms::ObservabilityMask;

/// One per-component subproblem.
#[derive(Debug, Clone, PartialEq)]
pub struct ComponentProblem {
    /// Observability gains `d_k >= 0`.
    pub d: Vec<f64>,
    /// Per-node SNRs `lambda_k^2 = s0 / s_k > 0`.
    pub lambda_sq: Vec<f64>,
    /// Target component variance `s0`.
    pub sigma0_sq: f64,
}

impl ComponentProblem {
    pub fn new(d: Vec<f64>, lambda_sq: Vec<f64>, sigma0_sq: f64) -> Result<Self> {
        if d.is_empty() {
            return Err(Error::arg("component problem needs at least one node"));
        }
        check_len("lambda_sq", lambda_sq.len(), d.len())?;
        if let Some(v) = d.iter().find(|v| !(**v >= 0.0 && v.is_finite())) {
            return Err(Error::arg(format!(
                "observability gain {v} must be finite and >= 0"
            )));
        }
        if let Some(v) = lambda_sq.iter().find(|v| !(**v > 0.0 && v.is_finite())) {
            return Err(Error::arg(format!("SNR {v} must be finite and > 0")));
        }
        if !(sigma0_sq > 0.0 && sigma0_sq.is_finite()) {
            return Err(Error::arg(format!(
                "target variance {sigma0_sq} must be > 0"
            )));
        }
        Ok(ComponentProblem {
            d,
            lambda_sq,
            sigma0_sq,
        })
    }

    pub fn len(&self) -> usize {
        self.d.len()
    }

    pub fn is_empty(&self) -> bool {
        self.d.is_empty()
    }

    /// Indices with non-zero gain and the reduced problem over them.
    fn active(&self) -> (Vec<usize>, Vec<f64>, Vec<f64>) {
        let idx: Vec<usize> = (0..self.len()).filter(|&k| self.d[k] != 0.0).collect();
        let d = idx.iter().map(|&k| self.d[k]).collect();
        let l = idx.iter().map(|&k| self.lambda_sq[k]).collect();
        (idx, d, l)
    }
}

/// `J(c) = (sum_k c_k d_k - 1)^2 s0 + sum_k c_k^2 s0 / lambda_k^2`.
pub fn subproblem_cost(p: &ComponentProblem, c: &[f64]) -> Result<f64> {
    check_len("weights", c.len(), p.len())?;
    let bias: f64 = c.iter().zip(&p.d).map(|(c, d)| c * d).sum::<f64>() - 1.0;
    let noise: f64 = c
        .iter()
        .zip(&p.lambda_sq)
        .map(|(c, l)| c * c * p.sigma0_sq / l)
        .sum();
    Ok(bias * bias * p.sigma0_sq + noise)
}

/// Closed-form optimal weights. Entries with `d_l = 0` are exactly zero.
pub fn optimal_weights_closed_form(p: &ComponentProblem) -> Vec<f64> {
    let denom = 1.0
        + p.d
            .iter()
            .zip(&p.lambda_sq)
            .map(|(d, l)| d * d * l)
            .sum::<f64>();
    p.d.iter()
        .zip(&p.lambda_sq)
        .map(|(&d, &l)| if d == 0.0 { 0.0 } else { d * l / denom })
        .collect()
}

/// Solves `(d d' + diag(lambda^-2)) c = d` by dense LU over the non-zero
/// gains, reinserting zeros for the dropped indices.
pub fn optimal_weights_direct(p: &ComponentProblem) -> Result<Vec<f64>> {
    let (idx, d, l) = p.active();
    let mut out = vec![0.0; p.len()];
    let m = idx.len();
    if m == 0 {
        return Ok(out);
    }
    let a = DMatrix::from_fn(m, m, |r, c| {
        d[r] * d[c] + if r == c { 1.0 / l[r] } else { 0.0 }
    });
    let rhs = DVector::from_vec(d);
    let sol = a
        .lu()
        .solve(&rhs)
        .ok_or_else(|| Error::Numeric("singular per-component system".into()))?;
    for (k, &i) in idx.iter().enumerate() {
        out[i] = sol[k];
    }
    Ok(out)
}

/// Builds `(Lambda + 1 d')^{-1}` with `Lambda = diag(1/(d_l lambda_l^2))`
/// via Sherman–Morrison and applies it to the all-ones vector.
pub fn optimal_weights_sherman_morrison(p: &ComponentProblem) -> Result<Vec<f64>> {
    let (idx, d, l) = p.active();
    let mut out = vec![0.0; p.len()];
    let m = idx.len();
    if m == 0 {
        return Ok(out);
    }
    // Lambda^{-1} = diag(d_l lambda_l^2)
    let lam_inv = DMatrix::from_diagonal(&DVector::from_iterator(
        m,
        d.iter().zip(&l).map(|(d, l)| d * l),
    ));
    let ones = DVector::from_element(m, 1.0);
    let dv = DVector::from_vec(d);
    let u = &lam_inv * &ones;
    let v = lam_inv.transpose() * &dv;
    let denom = 1.0 + dv.dot(&u);
    if !(denom.abs() > 0.0 && denom.is_finite()) {
        return Err(Error::Numeric(
            "Sherman–Morrison denominator vanished".into(),
        ));
    }
    let inverse = &lam_inv - (&u * v.transpose()) / denom;
    let sol = inverse * ones;
    for (k, &i) in idx.iter().enumerate() {
        out[i] = sol[k];
    }
    Ok(out)
}

/// Weights when every node observes the component with the same gain `d0`:
/// `c_l = d0 lambda_l^2 / (1 + d0^2 sum_k lambda_k^2)`.
pub fn optimal_weights_equal_observability(d0: f64, lambda_sq: &[f64]) -> Result<Vec<f64>> {
    if !(d0 > 0.0 && d0.is_finite()) {
        return Err(Error::arg(format!("d0 must be positive, got {d0}")));
    }
    let denom = 1.0 + d0 * d0 * lambda_sq.iter().sum::<f64>();
    Ok(lambda_sq.iter().map(|l| d0 * l / denom).collect())
}

/// Scalar-weight combination problem over `L` components and `m` neighbors.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarWeightProblem {
    /// `d_vectors[j][k] = d_k(j)`: gain of neighbor `k` on component `j`.
    pub d_vectors: Vec<Vec<f64>>,
    pub lambda_sq: Vec<f64>,
}

impl ScalarWeightProblem {
    pub fn new(d_vectors: Vec<Vec<f64>>, lambda_sq: Vec<f64>) -> Result<Self> {
        if d_vectors.is_empty() {
            return Err(Error::arg(
                "scalar weight problem needs at least one component",
            ));
        }
        if lambda_sq.is_empty() {
            return Err(Error::arg("scalar weight problem needs at least one node"));
        }
        for (j, dj) in d_vectors.iter().enumerate() {
            check_len(&format!("d_vectors[{j}]"), dj.len(), lambda_sq.len())?;
            if dj.iter().any(|v| !(*v >= 0.0 && v.is_finite())) {
                return Err(Error::arg(format!(
                    "d_vectors[{j}] has a negative or non-finite gain"
                )));
            }
        }
        if let Some(v) = lambda_sq.iter().find(|v| !(**v > 0.0 && v.is_finite())) {
            return Err(Error::arg(format!("SNR {v} must be finite and > 0")));
        }
        Ok(ScalarWeightProblem {
            d_vectors,
            lambda_sq,
        })
    }

    /// Builds the problem from binary per-node masks (node-major).
    pub fn from_masks(masks: &[&ObservabilityMask], lambda_sq: Vec<f64>) -> Result<Self> {
        let first = masks.first().ok_or_else(|| Error::arg("no masks given"))?;
        let len = first.len();
        for m in masks {
            check_len("mask", m.len(), len)?;
        }
        let d_vectors = (0..len)
            .map(|j| {
                masks
                    .iter()
                    .map(|m| if m.get(j) { 1.0 } else { 0.0 })
                    .collect()
            })
            .collect();
        Self::new(d_vectors, lambda_sq)
    }

    pub fn components(&self) -> usize {
        self.d_vectors.len()
    }

    pub fn nodes(&self) -> usize {
        self.lambda_sq.len()
    }

    /// `L diag(lambda^-2)`.
    pub fn regularizer(&self) -> DMatrix<f64> {
        let l = self.components() as f64;
        DMatrix::from_diagonal(&DVector::from_iterator(
            self.nodes(),
            self.lambda_sq.iter().map(|v| l / v),
        ))
    }

    /// `sum_j d_j`.
    pub fn rhs(&self) -> DVector<f64> {
        let mut b = DVector::zeros(self.nodes());
        for dj in &self.d_vectors {
            b += DVector::from_column_slice(dj);
        }
        b
    }
}

/// `sum_j d_j d_j'`; entry `(x, y)` is the inner product of the observability
/// vectors of nodes `x` and `y`.
pub fn cooperation_matrix(p: &ScalarWeightProblem) -> DMatrix<f64> {
    let m = p.nodes();
    let mut out = DMatrix::zeros(m, m);
    for dj in &p.d_vectors {
        let v = DVector::from_column_slice(dj);
        out += &v * v.transpose();
    }
    out
}

/// Inverse of `L diag(lambda^-2) + sum_j d_j d_j'` by successive rank-one
/// Sherman–Morrison updates starting from the inverse of the diagonal part.
pub fn conventional_inverse(p: &ScalarWeightProblem) -> Result<DMatrix<f64>> {
    let l = p.components() as f64;
    let mut s = DMatrix::from_diagonal(&DVector::from_iterator(
        p.nodes(),
        p.lambda_sq.iter().map(|v| v / l),
    ));
    for (j, dj) in p.d_vectors.iter().enumerate() {
        let d = DVector::from_column_slice(dj);
        let sd = &s * &d;
        let denom = 1.0 + d.dot(&sd);
        if !(denom > 0.0 && denom.is_finite()) {
            return Err(Error::Numeric(format!(
                "rank-one update {j} has non-positive denominator {denom}"
            )));
        }
        // S is symmetric, so d' S = (S d)'.
        s -= (&sd * sd.transpose()) / denom;
    }
    Ok(s)
}

/// Scalar per-neighbor weights `g` solving
/// `(L diag(lambda^-2) + sum_j d_j d_j') g = sum_j d_j`.
pub fn conventional_scalar_weights(p: &ScalarWeightProblem) -> Result<Vec<f64>> {
    let s = conventional_inverse(p)?;
    let g = s * p.rhs();
    if g.iter().any(|v| !v.is_finite()) {
        return Err(Error::Numeric("non-finite conventional weight".into()));
    }
    Ok(g.iter().copied().collect())
}

/// Optimal diagonal combiners for one node's neighborhood.
///
/// `masks[k]` and `lambda_sq[k]` describe the `k`-th neighbor. Returns
/// `gains[k][j]`, the weight of neighbor `k` on transform component `j`.
/// Components no neighbor observes get all-zero weights.
pub fn per_component_gain_matrices(
    masks: &[&ObservabilityMask],
    lambda_sq: &[f64],
) -> Result<Vec<Vec<f64>>> {
    check_len("lambda_sq", lambda_sq.len(), masks.len())?;
    let first = masks
        .first()
        .ok_or_else(|| Error::arg("empty neighborhood"))?;
    let len = first.len();
    for m in masks {
        check_len("mask", m.len(), len)?;
    }
    let mut gains = vec![vec![0.0; len]; masks.len()];
    for j in 0..len {
        let d: Vec<f64> = masks
            .iter()
            .map(|m| if m.get(j) { 1.0 } else { 0.0 })
            .collect();
        if d.iter().all(|&v| v == 0.0) {
            continue;
        }
        // The weights do not depend on s0; any positive value will do.
        let problem = ComponentProblem::new(d, lambda_sq.to_vec(), 1.0)?;
        for (k, c) in optimal_weights_closed_form(&problem)
            .into_iter()
            .enumerate()
        {
            gains[k][j] = c;
        }
    }
    Ok(gains)
}
