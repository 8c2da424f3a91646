//! Orthonormal transform pairs and masked projections.
//!
//! Every node observes the target through `M = T' diag(m) T`, where `T` is an
//! orthonormal transform shared by the whole network and `m` is the node's
//! 0/1 observability mask in the transform domain. Two transforms are
//! provided: the identity (observations sparse in time) and the orthonormal
//! DCT-II (observations sparse in the cosine domain).
//!
//! The DCT is applied as a dense `L x L` matrix product. Vector lengths in
//! this crate are small enough that a fast transform buys nothing.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use crate::error::{check_len, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TransformKind {
    Identity,
    Dct,
}

impl TransformKind {
    pub fn name(self) -> &'static str {
        match self {
            TransformKind::Identity => "identity",
            TransformKind::Dct => "dct",
        }
    }
}

impl fmt::Display for TransformKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for TransformKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "identity" | "time" => Ok(TransformKind::Identity),
            "dct" => Ok(TransformKind::Dct),
            other => Err(format!(
                "unknown transform `{other}` (expected identity | dct)"
            )),
        }
    }
}

/// An orthonormal transform of fixed size `L`.
///
/// Cloning is cheap: the DCT basis is shared behind an `Arc`.
#[derive(Clone)]
pub struct Transform {
    kind: TransformKind,
    size: usize,
    /// Row-major `L x L` basis; row `k` is the `k`-th DCT-II basis vector.
    basis: Option<Arc<[f64]>>,
}

impl fmt::Debug for Transform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Transform")
            .field("kind", &self.kind)
            .field("size", &self.size)
            .finish()
    }
}

impl PartialEq for Transform {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind && self.size == other.size
    }
}

impl Transform {
    pub fn new(kind: TransformKind, size: usize) -> Result<Self> {
        if size == 0 {
            return Err(Error::arg("transform size must be positive"));
        }
        let basis = match kind {
            TransformKind::Identity => None,
            TransformKind::Dct => Some(dct2_basis(size)),
        };
        Ok(Transform { kind, size, basis })
    }

    pub fn identity(size: usize) -> Result<Self> {
        Self::new(TransformKind::Identity, size)
    }

    pub fn dct(size: usize) -> Result<Self> {
        Self::new(TransformKind::Dct, size)
    }

    pub fn kind(&self) -> TransformKind {
        self.kind
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Returns `T x`.
    pub fn forward(&self, x: &[f64]) -> Result<Vec<f64>> {
        check_len("forward transform input", x.len(), self.size)?;
        let mut out = vec![0.0; self.size];
        self.forward_into(x, &mut out);
        Ok(out)
    }

    /// Returns `T' X`.
    pub fn inverse(&self, coeffs: &[f64]) -> Result<Vec<f64>> {
        check_len("inverse transform input", coeffs.len(), self.size)?;
        let mut out = vec![0.0; self.size];
        self.inverse_into(coeffs, &mut out);
        Ok(out)
    }

    /// Unchecked variant of [`Transform::forward`]; lengths must already agree.
    pub(crate) fn forward_into(&self, x: &[f64], out: &mut [f64]) {
        match &self.basis {
            None => out.copy_from_slice(x),
            Some(basis) => {
                let n = self.size;
                for (k, o) in out.iter_mut().enumerate() {
                    let row = &basis[k * n..(k + 1) * n];
                    *o = row.iter().zip(x).map(|(b, v)| b * v).sum();
                }
            }
        }
    }

    /// Unchecked variant of [`Transform::inverse`]; lengths must already agree.
    pub(crate) fn inverse_into(&self, coeffs: &[f64], out: &mut [f64]) {
        match &self.basis {
            None => out.copy_from_slice(coeffs),
            Some(basis) => {
                let n = self.size;
                out.iter_mut().for_each(|o| *o = 0.0);
                for (k, &c) in coeffs.iter().enumerate() {
                    if c == 0.0 {
                        continue;
                    }
                    let row = &basis[k * n..(k + 1) * n];
                    for (o, b) in out.iter_mut().zip(row) {
                        *o += b * c;
                    }
                }
            }
        }
    }

    /// Returns `T' diag(mask) T x`.
    pub fn apply_mask(&self, mask: &ObservabilityMask, x: &[f64]) -> Result<Vec<f64>> {
        check_len("mask", mask.len(), self.size)?;
        let mut coeffs = self.forward(x)?;
        for (c, on) in coeffs.iter_mut().zip(mask.iter()) {
            if !on {
                *c = 0.0;
            }
        }
        self.inverse(&coeffs)
    }
}

fn dct2_basis(n: usize) -> Arc<[f64]> {
    let nf = n as f64;
    let mut basis = vec![0.0; n * n];
    for k in 0..n {
        let scale = if k == 0 {
            (1.0 / nf).sqrt()
        } else {
            (2.0 / nf).sqrt()
        };
        for j in 0..n {
            let angle = PI * (2 * j + 1) as f64 * k as f64 / (2.0 * nf);
            basis[k * n + j] = scale * angle.cos();
        }
    }
    basis.into()
}

/// Diagonal 0/1 observability indicator in the transform domain.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ObservabilityMask(Vec<bool>);

impl ObservabilityMask {
    pub fn new(bits: Vec<bool>) -> Self {
        ObservabilityMask(bits)
    }

    pub fn full(len: usize) -> Self {
        ObservabilityMask(vec![true; len])
    }

    pub fn empty(len: usize) -> Self {
        ObservabilityMask(vec![false; len])
    }

    /// Builds a mask from numeric indicators; every entry must be exactly 0 or 1.
    pub fn from_indicators(values: &[f64]) -> Result<Self> {
        values
            .iter()
            .enumerate()
            .map(|(j, &v)| {
                if v == 1.0 {
                    Ok(true)
                } else if v == 0.0 {
                    Ok(false)
                } else {
                    Err(Error::arg(format!(
                        "mask entry {j} is {v}, expected 0 or 1"
                    )))
                }
            })
            .collect::<Result<Vec<_>>>()
            .map(ObservabilityMask)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, j: usize) -> bool {
        self.0[j]
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        self.0.iter().copied()
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    /// Number of observed components, `sum_j D(j)`.
    pub fn count(&self) -> usize {
        self.0.iter().filter(|&&b| b).count()
    }

    pub fn indicators(&self) -> Vec<f64> {
        self.0.iter().map(|&b| if b { 1.0 } else { 0.0 }).collect()
    }

    /// Componentwise OR.
    pub fn union(&self, other: &ObservabilityMask) -> ObservabilityMask {
        ObservabilityMask(self.0.iter().zip(&other.0).map(|(a, b)| *a || *b).collect())
    }
}

impl From<Vec<bool>> for ObservabilityMask {
    fn from(bits: Vec<bool>) -> Self {
        ObservabilityMask(bits)
    }
}
