//! Finite-dimensional real coordinate space with a norm-induced metric.
//!
//! The metric `d(x, y) = ‖x − y‖` is homogeneous and translation invariant
//! for every supported [`NormKind`], so the space is both a complete metric
//! space and a Banach space.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::DVector;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Absolute tolerance used for metric-axiom comparisons.
pub const METRIC_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NormKind {
    L1,
    L2,
    LInf,
}

impl NormKind {
    pub const ALL: [NormKind; 3] = [NormKind::L1, NormKind::L2, NormKind::LInf];
}

impl fmt::Display for NormKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            NormKind::L1 => "L1",
            NormKind::L2 => "L2",
            NormKind::LInf => "LInf",
        };
        f.write_str(s)
    }
}

/// A point of the space. Entries are always finite.
#[derive(Debug, Clone, PartialEq)]
pub struct Vector(DVector<f64>);

impl Vector {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        Self::from_dvector(DVector::from_vec(coords))
    }

    pub fn from_dvector(v: DVector<f64>) -> Result<Self> {
        if let Some(index) = v.iter().position(|c| !c.is_finite()) {
            return Err(Error::InvalidVector { index });
        }
        Ok(Vector(v))
    }

    pub fn zeros(dim: usize) -> Self {
        Vector(DVector::zeros(dim))
    }

    /// Standard basis vector `e_i`.
    pub fn basis(dim: usize, i: usize) -> Self {
        let mut v = DVector::zeros(dim);
        v[i] = 1.0;
        Vector(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[f64] {
        self.0.as_slice()
    }

    pub fn as_dvector(&self) -> &DVector<f64> {
        &self.0
    }

    pub fn into_dvector(self) -> DVector<f64> {
        self.0
    }

    pub fn to_vec(&self) -> Vec<f64> {
        self.0.iter().copied().collect()
    }

    pub fn scale(&self, alpha: f64) -> Vector {
        Vector(&self.0 * alpha)
    }

    pub fn norm(&self, kind: NormKind) -> f64 {
        dnorm(&self.0, kind)
    }

    pub fn check_dim(&self, expected: usize) -> Result<()> {
        if self.dim() != expected {
            return Err(Error::dimension(expected, self.dim()));
        }
        Ok(())
    }
}

impl<'a> Add<&'a Vector> for &'a Vector {
    type Output = Vector;
    fn add(self, rhs: &'a Vector) -> Vector {
        Vector(&self.0 + &rhs.0)
    }
}

impl<'a> Sub<&'a Vector> for &'a Vector {
    type Output = Vector;
    fn sub(self, rhs: &'a Vector) -> Vector {
        Vector(&self.0 - &rhs.0)
    }
}

impl Neg for &Vector {
    type Output = Vector;
    fn neg(self) -> Vector {
        Vector(-&self.0)
    }
}

impl Mul<&Vector> for f64 {
    type Output = Vector;
    fn mul(self, rhs: &Vector) -> Vector {
        rhs.scale(self)
    }
}

pub(crate) fn dnorm(v: &DVector<f64>, kind: NormKind) -> f64 {
    match kind {
        NormKind::L1 => v.iter().map(|c| c.abs()).sum(),
        NormKind::L2 => v.norm(),
        NormKind::LInf => v.iter().fold(0.0_f64, |m, c| m.max(c.abs())),
    }
}

/// `‖x‖` in the chosen norm.
pub fn norm_of(x: &Vector, kind: NormKind) -> f64 {
    x.norm(kind)
}

/// `d(x, y) = ‖x − y‖`.
pub fn distance(x: &Vector, y: &Vector, kind: NormKind) -> Result<f64> {
    y.check_dim(x.dim())?;
    Ok(dnorm(&(&x.0 - &y.0), kind))
}
