//! Orchestration: valuation batteries, the stability report, the
//! projective-space screen and volume-function export.

pub mod corpus;
pub mod csv;
pub mod report;
pub mod spec;
pub mod suite;

use num_bigint::BigInt;
use num_traits::Signed;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lattice::{rat_string, LatticeVec, Rat};
use crate::valuation::{ToricValuation, ValuationProfile};
use crate::variety::ToricFano;

pub use report::StabilityReport;
pub use spec::{load_fan, FanSpec};

/// Default battery radius.
pub const DEFAULT_RADIUS: u32 = 4;

/// All primitive integer vectors of max-norm at most `radius`, in
/// lexicographic order. Primitivity already removes repeated directions.
pub fn valuation_battery(dim: usize, radius: u32) -> Vec<LatticeVec> {
    let r = radius as i64;
    let mut out = Vec::new();
    let mut v = vec![-r; dim];
    loop {
        let lv = LatticeVec::from_i64(&v);
        if lv.is_primitive() {
            out.push(lv);
        }
        let mut i = dim;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if v[i] < r {
                v[i] += 1;
                break;
            }
            v[i] = -r;
        }
    }
}

/// Profiles of every battery valuation, in battery order.
pub fn battery_profiles(variety: &ToricFano, radius: u32) -> Vec<ValuationProfile> {
    valuation_battery(variety.dim(), radius)
        .into_par_iter()
        .map(|w| {
            ToricValuation::new(variety, w)
                .expect("battery vectors are nonzero")
                .profile()
        })
        .collect()
}

/// Full stability report over the battery of the given radius.
pub fn analyze(name: &str, variety: &ToricFano, radius: u32) -> Result<StabilityReport> {
    let profiles = battery_profiles(variety, radius);
    for p in &profiles {
        let v = ToricValuation::new(variety, p.w.clone())?;
        let closed = v.beta_from_barycenter();
        if closed != p.beta {
            return Err(Error::Inconsistent(format!(
                "beta({}) = {} by integration but {} from the barycenter",
                p.w,
                rat_string(&p.beta),
                rat_string(&closed)
            )));
        }
    }
    let screen = screen_profiles(variety, &profiles);
    StabilityReport::assemble(name, variety, radius, profiles, screen)
}

/// Outcome of the projective-space screen.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScreenVerdict {
    NoWitnesses,
    /// Smooth fan with witnesses, recognized as `P^n`.
    ProjectiveSpace,
    /// Smooth fan with witnesses that is not `P^n`.
    Contradiction,
    /// Singular fan with witnesses; no conclusion is drawn.
    SingularCounterexample,
}

impl ScreenVerdict {
    pub fn label(&self) -> &'static str {
        match self {
            ScreenVerdict::NoWitnesses => "no witnesses",
            ScreenVerdict::ProjectiveSpace => "projective space recognized",
            ScreenVerdict::Contradiction => "contradiction: smooth fan with witnesses is not projective space",
            ScreenVerdict::SingularCounterexample => "singular counterexample",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScreenResult {
    pub smooth: bool,
    pub projective_space: bool,
    /// Valuations with `A >= (n/(n+1))·τ` and `β <= 0`.
    pub witnesses: Vec<ValuationProfile>,
    pub verdict: ScreenVerdict,
}

impl ScreenResult {
    pub fn witness_vectors(&self) -> Vec<LatticeVec> {
        self.witnesses.iter().map(|p| p.w.clone()).collect()
    }
}

/// Searches the battery for valuations with `A >= (n/(n+1))·τ` and
/// `β <= 0`. On a smooth fan any witness forces the fan to be `P^n`; on a
/// singular fan witnesses are reported without a conclusion.
pub fn screen(variety: &ToricFano, radius: u32) -> ScreenResult {
    let n = variety.dim() as i64;
    let ratio = Rat::new(BigInt::from(n), BigInt::from(n + 1));
    let witnesses: Vec<ValuationProfile> = valuation_battery(variety.dim(), radius)
        .into_par_iter()
        .filter_map(|w| {
            let v = ToricValuation::new(variety, w).expect("battery vectors are nonzero");
            // Cheap prefilter before the volume function is needed.
            if v.log_discrepancy() < &ratio * v.tau() {
                return None;
            }
            let p = v.profile();
            p.is_screen_witness().then_some(p)
        })
        .collect();
    classify(variety, witnesses)
}

fn screen_profiles(variety: &ToricFano, profiles: &[ValuationProfile]) -> ScreenResult {
    let witnesses = profiles
        .iter()
        .filter(|p| p.is_screen_witness())
        .cloned()
        .collect();
    classify(variety, witnesses)
}

fn classify(variety: &ToricFano, witnesses: Vec<ValuationProfile>) -> ScreenResult {
    let smooth = variety.is_smooth();
    let projective_space = variety.fan().is_projective_space();
    let verdict = match (witnesses.is_empty(), smooth, projective_space) {
        (true, _, _) => ScreenVerdict::NoWitnesses,
        (false, false, _) => ScreenVerdict::SingularCounterexample,
        (false, true, true) => ScreenVerdict::ProjectiveSpace,
        (false, true, false) => ScreenVerdict::Contradiction,
    };
    ScreenResult {
        smooth,
        projective_space,
        witnesses,
        verdict,
    }
}

/// Parses `"a,b,..."` into a lattice vector.
pub fn parse_w(text: &str) -> Result<LatticeVec> {
    let coords = text
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<BigInt>()
                .map_err(|e| Error::Parse(format!("bad coordinate {t:?} in {text:?}: {e}")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LatticeVec::new(coords))
}

/// Smallest beta in a profile list, with its valuation (first in order).
pub fn min_beta(profiles: &[ValuationProfile]) -> Option<&ValuationProfile> {
    profiles.iter().fold(None, |best: Option<&ValuationProfile>, p| match best {
        Some(b) if b.beta <= p.beta => Some(b),
        _ => Some(p),
    })
}

/// The most destabilizing direction: the negative-beta valuation
/// minimizing `β(w)/|w|` (Euclidean norm), first in order on ties. Since
/// `β` is linear in `w` this points along the barycenter. Compared exactly
/// through `β²/|w|²`.
pub fn steepest_witness(profiles: &[ValuationProfile]) -> Option<&ValuationProfile> {
    let key = |p: &ValuationProfile| {
        let norm2: BigInt = p.w.coords().iter().map(|c| c * c).sum();
        &p.beta * &p.beta / Rat::from_integer(norm2)
    };
    profiles
        .iter()
        .filter(|p| p.beta.is_negative())
        .fold(None, |best: Option<(&ValuationProfile, Rat)>, p| {
            let k = key(p);
            match best {
                Some((b, bk)) if bk >= k => Some((b, bk)),
                _ => Some((p, k)),
            }
        })
        .map(|(p, _)| p)
}

pub(crate) fn all_nonnegative(profiles: &[ValuationProfile]) -> bool {
    profiles.iter().all(|p| !p.beta.is_negative())
}
