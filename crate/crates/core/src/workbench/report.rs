//! The stability report and its JSON form.

use serde_json::{json, Value};

use crate::alpha::{alpha, AlphaResult};
use crate::error::{Error, Result};
use crate::lattice::{rat_string, DualVec, LatticeVec, Rat};
use crate::piecewise::PiecewisePolynomial;
use crate::valuation::ValuationProfile;
use crate::variety::ToricFano;
use crate::workbench::{all_nonnegative, min_beta, steepest_witness, ScreenResult};

/// Standing assumptions recorded in every report.
pub const ASSUMPTIONS: [&str; 4] = [
    "dreaminess: every toric valuation has a finitely generated section ring (toric Cox rings are finitely generated); assumed, not computed",
    "alpha: the infimum over effective Q-divisors equivalent to -K_X is attained at torus-invariant divisors",
    "semistability verdict is toric-divisorial: only torus-invariant valuations are tested; for toric varieties these suffice for semistability",
    "Q-Fano: certified by simpliciality (Q-factorial, hence log terminal) and ampleness of -K_X on the fan",
];

/// How each verdict was obtained.
pub const CLAIM_BASIS: [&str; 3] = [
    "semistability rests on the exact barycenter identity beta(w) = -(-K_X)^n <barycenter, w>, a global statement over all toric valuations",
    "the agreement of that identity with piecewise integration, and the projective-space screen, rest on exhaustive search over the battery",
    "strict stability over toric valuations is impossible: beta(-w) = -beta(w), so the battery minimum is at most 0",
];

#[derive(Clone, Debug)]
pub struct StabilityReport {
    pub name: String,
    pub dim: usize,
    pub degree: Rat,
    pub alpha: AlphaResult,
    pub barycenter: DualVec,
    pub radius: u32,
    pub smooth: bool,
    pub profiles: Vec<ValuationProfile>,
    pub toric_divisorial_semistable: bool,
    pub strictly_stable_over_toric: bool,
    pub screen: ScreenResult,
}

impl StabilityReport {
    pub(crate) fn assemble(
        name: &str,
        variety: &ToricFano,
        radius: u32,
        profiles: Vec<ValuationProfile>,
        screen: ScreenResult,
    ) -> Result<Self> {
        let bary_zero = variety.barycenter().is_zero();
        let min_nonneg = min_beta(&profiles).is_none_or(|p| p.beta >= Rat::default());
        let all_nonneg = all_nonnegative(&profiles);
        if bary_zero != min_nonneg || min_nonneg != all_nonneg {
            return Err(Error::Inconsistent(format!(
                "semistability verdicts disagree: barycenter zero {bary_zero}, min beta >= 0 {min_nonneg}, all beta >= 0 {all_nonneg}"
            )));
        }
        Ok(StabilityReport {
            name: name.to_string(),
            dim: variety.dim(),
            degree: variety.degree().clone(),
            alpha: alpha(variety),
            barycenter: variety.barycenter().clone(),
            radius,
            smooth: variety.is_smooth(),
            profiles,
            toric_divisorial_semistable: bary_zero,
            strictly_stable_over_toric: false,
            screen,
        })
    }

    pub fn min_beta_profile(&self) -> Option<&ValuationProfile> {
        min_beta(&self.profiles)
    }

    pub fn to_json(&self) -> Value {
        let min = self.min_beta_profile();
        let steep = steepest_witness(&self.profiles);
        json!({
            "fan": self.name,
            "n": self.dim,
            "degree": rat_string(&self.degree),
            "alpha": rat_string(&self.alpha.alpha),
            "alpha_witness": {
                "ray_index": self.alpha.witness_ray_index,
                "m": self.alpha.witness_m.to_strings(),
                "divisor": self.alpha.witness_divisor.iter().map(rat_string).collect::<Vec<_>>(),
                "ray_thresholds": self.alpha.ray_thresholds.iter().map(rat_string).collect::<Vec<_>>(),
            },
            "barycenter": self.barycenter.to_strings(),
            "smooth": self.smooth,
            "battery_radius": self.radius,
            "profiles": self.profiles.iter().map(profile_json).collect::<Vec<_>>(),
            "verdicts": {
                "toric_divisorial_semistable": self.toric_divisorial_semistable,
                "min_beta": min.map(|p| rat_string(&p.beta)),
                "min_beta_witness": min.map(|p| lattice_json(&p.w)),
                "destabilizing_witness": steep.map(|p| json!({
                    "w": lattice_json(&p.w),
                    "beta": rat_string(&p.beta),
                })),
                "strictly_stable_over_toric": self.strictly_stable_over_toric,
                "strictly_stable_reason": CLAIM_BASIS[2],
                "projective_space_screen": screen_json(&self.screen),
            },
            "claim_basis": CLAIM_BASIS,
            "assumptions": ASSUMPTIONS,
        })
    }

    /// Pretty JSON; byte-identical for identical input.
    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("report serializes")
    }
}

pub fn lattice_json(w: &LatticeVec) -> Value {
    Value::Array(
        w.coords()
            .iter()
            .map(|c| match i64::try_from(c) {
                Ok(x) => json!(x),
                Err(_) => json!(c.to_string()),
            })
            .collect(),
    )
}

pub fn piecewise_json(f: &PiecewisePolynomial) -> Value {
    json!({
        "breakpoints": f.breakpoints().iter().map(rat_string).collect::<Vec<_>>(),
        "pieces": f
            .pieces()
            .iter()
            .map(|p| p.coeffs().iter().map(rat_string).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    })
}

pub fn profile_json(p: &ValuationProfile) -> Value {
    json!({
        "w": lattice_json(&p.w),
        "primitive": p.primitive,
        "A": rat_string(&p.a),
        "tau": rat_string(&p.tau),
        "eps": rat_string(&p.eps),
        "S": rat_string(&p.s),
        "beta": rat_string(&p.beta),
        "center_codim": p.center_codim,
        "vol": piecewise_json(&p.vol_fn),
        "Q": piecewise_json(&p.q_fn),
    })
}

pub fn screen_json(s: &ScreenResult) -> Value {
    json!({
        "smooth": s.smooth,
        "projective_space": s.projective_space,
        "verdict": s.verdict.label(),
        "witnesses": s
            .witnesses
            .iter()
            .map(|p| json!({
                "w": lattice_json(&p.w),
                "A": rat_string(&p.a),
                "tau": rat_string(&p.tau),
                "eps": rat_string(&p.eps),
                "beta": rat_string(&p.beta),
                "center_codim": p.center_codim,
            }))
            .collect::<Vec<_>>(),
    })
}
