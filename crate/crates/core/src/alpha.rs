//! Alpha invariant of a toric Q-Fano variety.
//!
//! The infimum over effective `D ~_Q −K_X` is attained at torus-invariant
//! divisors, and a torus-invariant pair `(X, Σ d_i D_i)` is log canonical
//! iff every `d_i <= 1`. Writing `d_i = 1 + <m, v_i>` with `m ∈ P` gives
//!
//! ```text
//! α(X) = 1 / max_j (1 + max_{u ∈ P} <u, v_j>) = 1 / max_j τ(v_j).
//! ```
//!
//! The inner maximum is a vertex evaluation over the anticanonical polytope.

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::lattice::{rat, DualVec, Rat};
use crate::variety::ToricFano;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaResult {
    pub alpha: Rat,
    pub witness_ray_index: usize,
    /// The character `m` with `d_i = 1 + <m, v_i>`.
    pub witness_m: DualVec,
    /// Coefficients `d_i` of the extremal divisor `D = Σ d_i D_i`.
    pub witness_divisor: Vec<Rat>,
    /// `τ(v_j) = 1 + max_P <u, v_j>` for every ray.
    pub ray_thresholds: Vec<Rat>,
}

impl AlphaResult {
    /// Effective, linearly equivalent to `−K_X` through `witness_m`, and
    /// with largest coefficient `1/α`.
    pub fn witness_is_valid(&self, fan: &Fan) -> bool {
        let effective = self.witness_divisor.iter().all(|d| !d.is_negative());
        let equivalent = fan
            .rays()
            .iter()
            .zip(&self.witness_divisor)
            .all(|(v, d)| *d == rat(1) + v.pair(&self.witness_m));
        let max = self.witness_divisor.iter().max().cloned().unwrap_or_default();
        effective && equivalent && &self.alpha * max == rat(1)
    }
}

pub fn alpha(variety: &ToricFano) -> AlphaResult {
    let fan = variety.fan();
    let poly = variety.polytope();
    let mut best: Option<(usize, DualVec, Rat)> = None;
    let mut ray_thresholds = Vec::with_capacity(fan.rays().len());
    for (j, v) in fan.rays().iter().enumerate() {
        let (m, val) = poly.argmax(v);
        let t = rat(1) + val;
        if best.as_ref().is_none_or(|b| t > b.2) {
            best = Some((j, m.clone(), t.clone()));
        }
        ray_thresholds.push(t);
    }
    let (j, m, t) = best.expect("a fan has rays");
    let witness_divisor = fan.rays().iter().map(|v| rat(1) + v.pair(&m)).collect();
    AlphaResult {
        alpha: t.recip(),
        witness_ray_index: j,
        witness_m: m,
        witness_divisor,
        ray_thresholds,
    }
}

/// Log canonicity of the torus-invariant pair `(X, Σ d_i D_i)`: for
/// `w = Σ a_j v_j` the log discrepancy is `Σ a_j (1 − d_j)`, nonnegative for
/// all `w` iff every `d_j <= 1`.
pub fn is_lc_torus_pair(fan: &Fan, coeffs: &[Rat]) -> Result<bool> {
    if coeffs.len() != fan.rays().len() {
        return Err(Error::DimensionMismatch {
            expected: fan.rays().len(),
            got: coeffs.len(),
        });
    }
    if let Some(index) = coeffs.iter().position(Signed::is_negative) {
        return Err(Error::NotEffective { index });
    }
    Ok(coeffs.iter().all(|d| d <= &rat(1)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlphaGate {
    HypothesisMet { alpha: Rat, bound: Rat },
    HypothesisNotMet { alpha: Rat, bound: Rat },
    InapplicableSingular,
    InapplicableDimension,
}

impl AlphaGate {
    pub fn label(&self) -> &'static str {
        match self {
            AlphaGate::HypothesisMet { .. } => "hypothesis met",
            AlphaGate::HypothesisNotMet { .. } => "hypothesis not met",
            AlphaGate::InapplicableSingular => "criterion inapplicable (singular)",
            AlphaGate::InapplicableDimension => "criterion inapplicable (dimension < 2)",
        }
    }
}

/// Whether `α(X) >= n/(n+1)` for a smooth `X` of dimension at least 2,
/// the alpha criterion for K-stability.
pub fn alpha_gate(variety: &ToricFano) -> AlphaGate {
    if !variety.is_smooth() {
        return AlphaGate::InapplicableSingular;
    }
    let n = variety.dim() as i64;
    if n < 2 {
        return AlphaGate::InapplicableDimension;
    }
    let a = alpha(variety).alpha;
    let bound = Rat::new(n.into(), (n + 1).into());
    if a >= bound {
        AlphaGate::HypothesisMet { alpha: a, bound }
    } else {
        AlphaGate::HypothesisNotMet { alpha: a, bound }
    }
}

/// `true` iff `α·D` is log canonical for the witness divisor; used to
/// probe the threshold.
pub fn witness_scaled_is_lc(variety: &ToricFano, result: &AlphaResult, scale: &Rat) -> Result<bool> {
    let scaled: Vec<Rat> = result.witness_divisor.iter().map(|d| d * scale).collect();
    is_lc_torus_pair(variety.fan(), &scaled)
}
