//! Scalar and vector primitives the solver is built from: the wing loss,
//! its vector penalty, soft thresholding, the residual quantile threshold
//! and the sigmoid weight rule.
//!
//! The wing loss is
//!
//! ```text
//! wing(r) = ω·ln(1 + |r|/ε)   if |r| < ω
//!         = |r| − C           otherwise,      C = ω − ω·ln(1 + ω/ε)
//! ```
//!
//! so the logarithmic and linear branches meet continuously at `|r| = ω`.

use crate::error::{Error, Result};

/// Parameters of the wing loss.
///
/// `omega` bounds the nonlinear region to `(-omega, omega)` and `epsilon`
/// controls its curvature. The joining constant is derived, never user-set,
/// which is what makes the two branches meet.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WingParams {
    omega: f64,
    epsilon: f64,
    c_const: f64,
}

impl WingParams {
    pub fn new(omega: f64, epsilon: f64) -> Result<Self> {
        if !omega.is_finite() || omega <= 0.0 {
            return Err(Error::InvalidInput(format!(
                "wing omega must be a positive finite real, got {omega}"
            )));
        }
        if !epsilon.is_finite() || epsilon <= 0.0 {
            return Err(Error::InvalidInput(format!(
                "wing epsilon must be a positive finite real, got {epsilon}"
            )));
        }
        let c_const = omega - omega * (1.0 + omega / epsilon).ln();
        Ok(Self {
            omega,
            epsilon,
            c_const,
        })
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// `C = ω − ω·ln(1 + ω/ε)`, the constant joining the two branches.
    pub fn c_const(&self) -> f64 {
        self.c_const
    }
}

/// Parameters of the sigmoid weight rule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightParams {
    q: f64,
    tau: f64,
}

impl WeightParams {
    /// `q` is the penalty rate of the sigmoid; `tau` in `(0, 1]` is the
    /// quantile fraction used to pick the residual threshold.
    pub fn new(q: f64, tau: f64) -> Result<Self> {
        if !q.is_finite() || q <= 0.0 {
            return Err(Error::InvalidInput(format!(
                "weight q must be a positive finite real, got {q}"
            )));
        }
        if !tau.is_finite() || tau <= 0.0 || tau > 1.0 {
            return Err(Error::InvalidInput(format!(
                "weight tau must lie in (0, 1], got {tau}"
            )));
        }
        Ok(Self { q, tau })
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }
}

/// Per-entry weights with the threshold they were learned from.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightState {
    /// One weight per residual entry, each in `[0, 1]`.
    pub weights: Vec<f64>,
    /// Squared-residual threshold the weights were computed against.
    pub delta: f64,
}

impl WeightState {
    /// The uniform (all-ones) state used before any weights are learned
    /// and whenever the threshold degenerates to zero.
    pub fn uniform(len: usize) -> Self {
        Self {
            weights: vec![1.0; len],
            delta: 0.0,
        }
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }
}

/// Evaluates the wing loss at residual `r`. Total on the reals, even, and
/// nondecreasing in `|r|`.
pub fn wing_loss(r: f64, params: &WingParams) -> f64 {
    let a = r.abs();
    if a < params.omega {
        params.omega * (1.0 + a / params.epsilon).ln()
    } else {
        a - params.c_const
    }
}

/// The solver's penalty `g(z)`: the scalar wing loss applied to `‖z‖₁`.
pub fn wing_penalty(z: &[f64], params: &WingParams) -> f64 {
    let l1: f64 = z.iter().map(|v| v.abs()).sum();
    if l1 < params.omega {
        params.omega * (1.0 + l1 / params.epsilon).ln()
    } else {
        l1 - params.c_const
    }
}

/// Soft-thresholding operator `S_k(a)`: shrinks `a` toward zero by `k`,
/// with dead zone `[-k, k]`. The proximal operator of `k·|·|`.
pub fn soft_threshold(a: f64, k: f64) -> f64 {
    debug_assert!(k >= 0.0, "threshold must be nonnegative");
    if a > k {
        a - k
    } else if a < -k {
        a + k
    } else {
        0.0
    }
}

/// Elementwise soft threshold over a slice.
pub fn soft_threshold_vec(a: &[f64], k: f64) -> Vec<f64> {
    a.iter().map(|&v| soft_threshold(v, k)).collect()
}

/// Returns the residual threshold `δ`: the k-th smallest squared residual,
/// `k = max(1, ⌊tau·m⌋)`.
///
/// Sorting is ascending, so `δ` is the `tau`-quantile of squared residuals
/// and entries above it end up with weight below one half.
pub fn residual_threshold(e: &[f64], tau: f64) -> Result<f64> {
    if e.is_empty() {
        return Err(Error::InvalidInput(
            "residual vector must be nonempty".into(),
        ));
    }
    if !tau.is_finite() || tau <= 0.0 || tau > 1.0 {
        return Err(Error::InvalidInput(format!(
            "tau must lie in (0, 1], got {tau}"
        )));
    }
    let m = e.len();
    let mut psi: Vec<f64> = e.iter().map(|v| v * v).collect();
    psi.sort_unstable_by(|a, b| a.total_cmp(b));
    // k = ⌊tau·m⌋ can be 0 for small tau·m; clamp so delta is a data value.
    let k = ((tau * m as f64).floor() as usize).max(1);
    Ok(psi[k - 1])
}

// Evaluate exp only at nonpositive arguments so large |t| cannot overflow.
fn stable_sigmoid(t: f64) -> f64 {
    if t >= 0.0 {
        1.0 / (1.0 + (-t).exp())
    } else {
        let et = t.exp();
        et / (1.0 + et)
    }
}

/// Learns per-entry weights `w_i = 1 / (1 + exp(−q·(δ − e_i²)/δ))` from the
/// residual vector `e` and threshold `delta`.
///
/// A zero `delta` makes the rule undefined and yields
/// [`Error::DegenerateThreshold`]; callers substitute uniform weights for
/// that iteration.
pub fn compute_weights(e: &[f64], delta: f64, q: f64) -> Result<WeightState> {
    if delta == 0.0 {
        return Err(Error::DegenerateThreshold);
    }
    if !delta.is_finite() || delta < 0.0 {
        return Err(Error::InvalidInput(format!(
            "delta must be a nonnegative finite real, got {delta}"
        )));
    }
    if !q.is_finite() || q <= 0.0 {
        return Err(Error::InvalidInput(format!(
            "q must be a positive finite real, got {q}"
        )));
    }
    let weights = e
        .iter()
        .map(|&ei| {
            let e2 = ei * ei;
            stable_sigmoid(q * (delta - e2) / delta)
        })
        .collect();
    Ok(WeightState { weights, delta })
}
