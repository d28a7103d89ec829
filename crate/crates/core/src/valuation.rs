//! Invariants of torus-invariant divisorial valuations.
//!
//! A nonzero `w ∈ N` gives the valuation `ord_w`, which on the section of
//! `-K_X` indexed by `u ∈ P` takes the value `<u, w> + A_X(w)`. Hence
//!
//! ```text
//! vol(−K_X − x·ord_w) = n!·vol(P ∩ {u : <u, w> >= x − A_X(w)})
//! ```
//!
//! and every quantity below is an exact polytope computation. Primitive
//! `w` correspond to prime divisors over `X`; non-primitive `w` are
//! accepted and give the rescaled valuation.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::lattice::{frac, primitivize, rat, rat_string, LatticeVec, Rat};
use crate::piecewise::{PiecewisePolynomial, Polynomial};
use crate::polytope::{factorial, HalfSpace};
use crate::variety::ToricFano;

/// Default cap on lattice points visited by [`ToricValuation::h0_count`].
pub const DEFAULT_ORACLE_BUDGET: u128 = 10_000_000;
pub const ORACLE_BUDGET_ENV: &str = "TKS_ORACLE_BUDGET";

/// The lattice-enumeration budget, overridable through the environment.
pub fn oracle_budget() -> u128 {
    std::env::var(ORACLE_BUDGET_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_ORACLE_BUDGET)
}

#[derive(Clone, Debug)]
pub struct ToricValuation<'a> {
    variety: &'a ToricFano,
    w: LatticeVec,
}

impl<'a> ToricValuation<'a> {
    pub fn new(variety: &'a ToricFano, w: LatticeVec) -> Result<Self> {
        if w.dim() != variety.dim() {
            return Err(Error::DimensionMismatch {
                expected: variety.dim(),
                got: w.dim(),
            });
        }
        if w.is_zero() {
            return Err(Error::ZeroVector);
        }
        Ok(ToricValuation { variety, w })
    }

    pub fn w(&self) -> &LatticeVec {
        &self.w
    }

    pub fn variety(&self) -> &ToricFano {
        self.variety
    }

    fn fan(&self) -> &Fan {
        self.variety.fan()
    }

    fn n(&self) -> usize {
        self.variety.dim()
    }

    pub fn is_primitive(&self) -> bool {
        self.w.is_primitive()
    }

    /// `A_X(w)`: sum of the coordinates of `w` in a maximal cone containing it.
    pub fn log_discrepancy(&self) -> Rat {
        let (_, coords) = self
            .fan()
            .locate(&self.w)
            .expect("complete fan covers every vector");
        coords.into_iter().sum()
    }

    /// Pseudo-effective threshold `τ(w) = A_X(w) + max_P <u, w>`.
    pub fn tau(&self) -> Rat {
        self.log_discrepancy() + self.variety.polytope().max_linear_functional(&self.w)
    }

    /// `vol(−K_X − x·ord_w)` evaluated directly from the sliced polytope.
    pub fn volume_at(&self, x: &Rat) -> Rat {
        let a = self.log_discrepancy();
        self.slice_volume(x, &a)
    }

    fn slice_volume(&self, x: &Rat, a: &Rat) -> Rat {
        let cut = HalfSpace::new(self.w.clone(), x - a);
        let slab = self
            .variety
            .polytope()
            .cut(cut)
            .expect("a cut of a bounded polytope is bounded");
        slab.volume() * factorial(self.n())
    }

    /// Breakpoints of the volume function: the distinct values
    /// `A_X(w) + <vertex, w>`, which run from `0` to `τ(w)`.
    pub fn breakpoints(&self) -> Vec<Rat> {
        let a = self.log_discrepancy();
        let mut vals: Vec<Rat> = self
            .variety
            .polytope()
            .vertices()
            .iter()
            .map(|v| self.w.pair(v) + &a)
            .collect();
        vals.sort();
        vals.dedup();
        vals
    }

    /// The volume function on `[0, τ]` as an exact piecewise polynomial.
    /// Between consecutive breakpoints the slab keeps its combinatorial
    /// type, so its volume is a polynomial of degree <= n, recovered by
    /// interpolating exact slab volumes at `n + 1` nodes.
    pub fn volume_function(&self) -> PiecewisePolynomial {
        let a = self.log_discrepancy();
        let n = self.n();
        let breakpoints = self.breakpoints();
        let mut cache: BTreeMap<Rat, Rat> = BTreeMap::new();
        let mut pieces = Vec::with_capacity(breakpoints.len() - 1);
        for win in breakpoints.windows(2) {
            let (lo, hi) = (&win[0], &win[1]);
            let nodes: Vec<(Rat, Rat)> = (0..=n)
                .map(|i| {
                    let x = lo + (hi - lo) * frac(i as i64, n as i64);
                    let y = cache
                        .entry(x.clone())
                        .or_insert_with(|| self.slice_volume(&x, &a))
                        .clone();
                    (x, y)
                })
                .collect();
            pieces.push(Polynomial::interpolate(&nodes));
        }
        PiecewisePolynomial::new(breakpoints, pieces)
    }

    /// `h^0` oracle: `#{u ∈ kP ∩ M : <u, w> + k·A_X(w) >= j}`.
    pub fn h0_count(&self, k: u64, j: u64, budget: u128) -> Result<u128> {
        if k == 0 {
            return Ok(1);
        }
        let offset = rat(j as i64) - rat(k as i64) * self.log_discrepancy();
        let extra = [HalfSpace::new(self.w.clone(), offset)];
        self.variety.polytope().count_lattice_points(k, &extra, budget)
    }

    /// `S(w) = ∫_0^τ vol(−K_X − x·ord_w) dx`.
    pub fn s_integral(&self) -> Rat {
        self.volume_function().integral()
    }

    /// `β(w) = A_X(w)·(−K_X)^n − S(w)`, by piecewise integration.
    pub fn beta(&self) -> Rat {
        self.log_discrepancy() * self.variety.degree() - self.s_integral()
    }

    /// Closed form `β(w) = −(−K_X)^n·<barycenter(P), w>`.
    pub fn beta_from_barycenter(&self) -> Rat {
        -(self.variety.degree() * self.w.pair(self.variety.barycenter()))
    }

    /// `Q(x) = −(1/n)·d/dx vol(−K_X − x·ord_w)`, extended to the endpoints
    /// by the boundary pieces.
    pub fn restricted_volume(&self) -> PiecewisePolynomial {
        restricted_volume_of(&self.volume_function(), self.n())
    }

    /// Nef threshold: the largest `ε` with `σ*(−K_X) − ε·F` nef on the star
    /// subdivision at the primitive direction of `w`, rescaled by the
    /// content of `w`.
    pub fn nef_threshold(&self) -> Rat {
        let content = self.w.content();
        let prim = primitivize(&self.w).expect("w is nonzero");
        let fan = self.fan();
        // Support-function values at each ray, as base + slope·ε.
        let (sub, base, slope) = match fan.ray_index(&prim) {
            Some(j) => {
                let base = vec![Rat::one(); fan.rays().len()];
                let mut slope = vec![Rat::zero(); fan.rays().len()];
                slope[j] = rat(-1);
                (fan.clone(), base, slope)
            }
            None => {
                let a = ToricValuation::new(self.variety, prim.clone())
                    .expect("primitive part is nonzero")
                    .log_discrepancy();
                let sub = fan.star_subdivision(&prim).expect("valid subdivision");
                let mut base = vec![Rat::one(); fan.rays().len()];
                base.push(a);
                let mut slope = vec![Rat::zero(); fan.rays().len()];
                slope.push(rat(-1));
                (sub, base, slope)
            }
        };
        let eps = convexity_threshold(&sub, &base, &slope);
        eps * Rat::from_integer(content)
    }

    /// Dimension of the smallest cone containing `w`; equals `n` exactly
    /// when the center of the valuation is a torus-fixed point.
    pub fn center_codim(&self) -> usize {
        self.fan()
            .minimal_cone(&self.w)
            .expect("complete fan covers every vector")
            .len()
    }

    pub fn profile(&self) -> ValuationProfile {
        let a = self.log_discrepancy();
        let vol_fn = self.volume_function();
        let tau = vol_fn.end().clone();
        let s = vol_fn.integral();
        let beta = &a * self.variety.degree() - &s;
        let q_fn = restricted_volume_of(&vol_fn, self.n());
        ValuationProfile {
            w: self.w.clone(),
            primitive: self.is_primitive(),
            dim: self.n(),
            a,
            tau,
            eps: self.nef_threshold(),
            s,
            beta,
            degree: self.variety.degree().clone(),
            vol_fn,
            q_fn,
            center_codim: self.center_codim(),
        }
    }
}

pub fn restricted_volume_of(vol_fn: &PiecewisePolynomial, n: usize) -> PiecewisePolynomial {
    vol_fn.derivative().scale(&(-Rat::new(BigInt::one(), BigInt::from(n))))
}

/// Largest `ε >= 0` for which the piecewise-linear function with ray values
/// `base + ε·slope` is convex across every wall of `fan`.
fn convexity_threshold(fan: &Fan, base: &[Rat], slope: &[Rat]) -> Rat {
    let mut best: Option<Rat> = None;
    for wall in fan.walls() {
        let (c1, _) = wall.cones;
        let (_, far) = wall.opposite;
        let coords = fan.coordinates_in(c1, &fan.rays()[far]);
        let rays = fan.cones()[c1].rays();
        let lin = |vals: &[Rat]| -> Rat { rays.iter().zip(&coords).map(|(&r, c)| c * &vals[r]).sum() };
        let s0 = &base[far] - lin(base);
        let s1 = &slope[far] - lin(slope);
        debug_assert!(!s0.is_negative(), "pullback of -K_X must be nef");
        if s1.is_negative() {
            let bound = s0 / -s1;
            if best.as_ref().is_none_or(|b| &bound < b) {
                best = Some(bound);
            }
        }
    }
    best.expect("some wall bounds the nef threshold")
}

/// All per-valuation invariants in one bundle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValuationProfile {
    pub w: LatticeVec,
    pub primitive: bool,
    pub dim: usize,
    pub a: Rat,
    pub tau: Rat,
    pub eps: Rat,
    pub s: Rat,
    pub beta: Rat,
    pub degree: Rat,
    pub vol_fn: PiecewisePolynomial,
    pub q_fn: PiecewisePolynomial,
    pub center_codim: usize,
}

impl ValuationProfile {
    pub fn center_is_point(&self) -> bool {
        self.center_codim == self.dim
    }

    /// `n/(n+1)`.
    fn ratio(&self) -> Rat {
        frac(self.dim as i64, self.dim as i64 + 1)
    }

    /// Integral-bound certificate: when `(n/(n+1))·τ·(−K_X)^n <= S`, the
    /// bound must be an equality, `τ = ε`, the center must be a point and
    /// the volume function must be `V − V·(x/τ)^n`.
    pub fn check_integral_bound(&self) -> CertificateResult {
        let lhs = self.ratio() * &self.tau * &self.degree;
        let mut quantities = vec![
            ("bound".to_string(), lhs.clone()),
            ("S".to_string(), self.s.clone()),
            ("tau".to_string(), self.tau.clone()),
            ("eps".to_string(), self.eps.clone()),
        ];
        if lhs > self.s {
            return CertificateResult::not_met(quantities);
        }
        let mut failures = Vec::new();
        if lhs != self.s {
            failures.push(format!("bound {} is strict against S = {}", rat_string(&lhs), rat_string(&self.s)));
        }
        if self.tau != self.eps {
            failures.push(format!("tau {} != eps {}", rat_string(&self.tau), rat_string(&self.eps)));
        }
        if !self.center_is_point() {
            failures.push(format!("center has codimension {} < {}", self.center_codim, self.dim));
        }
        // V − (V/τ^n)·x^n
        let mut coeffs = vec![Rat::zero(); self.dim + 1];
        coeffs[0] = self.degree.clone();
        let tau_pow = (0..self.dim).fold(Rat::one(), |acc, _| acc * &self.tau);
        coeffs[self.dim] = -(&self.degree / &tau_pow);
        let target = Polynomial::new(coeffs);
        quantities.push(("leading".to_string(), target.coeffs()[self.dim].clone()));
        if self.vol_fn.pieces().iter().any(|p| p != &target) {
            failures.push("volume function is not V - V (x/tau)^n".to_string());
        }
        CertificateResult::finish(quantities, failures)
    }

    /// Discrepancy-bound certificate: when `A >= (n/(n+1))·τ` and `β <= 0`,
    /// then `A = n`, `τ = ε = n + 1` and the center is a point.
    pub fn check_discrepancy_bound(&self) -> CertificateResult {
        let bound = self.ratio() * &self.tau;
        let quantities = vec![
            ("A".to_string(), self.a.clone()),
            ("bound".to_string(), bound.clone()),
            ("beta".to_string(), self.beta.clone()),
            ("tau".to_string(), self.tau.clone()),
            ("eps".to_string(), self.eps.clone()),
        ];
        if self.a < bound || self.beta.is_positive() {
            return CertificateResult::not_met(quantities);
        }
        let n = rat(self.dim as i64);
        let n1 = rat(self.dim as i64 + 1);
        let mut failures = Vec::new();
        if self.a != n {
            failures.push(format!("A = {} != n = {}", rat_string(&self.a), self.dim));
        }
        if self.tau != n1 {
            failures.push(format!("tau = {} != n + 1", rat_string(&self.tau)));
        }
        if self.eps != n1 {
            failures.push(format!("eps = {} != n + 1", rat_string(&self.eps)));
        }
        if !self.center_is_point() {
            failures.push(format!("center has codimension {} < {}", self.center_codim, self.dim));
        }
        CertificateResult::finish(quantities, failures)
    }

    /// Witness condition of the projective-space screen.
    pub fn is_screen_witness(&self) -> bool {
        self.a >= self.ratio() * &self.tau && !self.beta.is_positive()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertificateStatus {
    Pass,
    Fail,
    HypothesisNotMet,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateResult {
    pub status: CertificateStatus,
    /// Exact quantities entering the check, by name.
    pub quantities: Vec<(String, Rat)>,
    pub failures: Vec<String>,
}

impl CertificateResult {
    fn not_met(quantities: Vec<(String, Rat)>) -> Self {
        CertificateResult {
            status: CertificateStatus::HypothesisNotMet,
            quantities,
            failures: Vec::new(),
        }
    }

    fn finish(quantities: Vec<(String, Rat)>, failures: Vec<String>) -> Self {
        let status = if failures.is_empty() {
            CertificateStatus::Pass
        } else {
            CertificateStatus::Fail
        };
        CertificateResult {
            status,
            quantities,
            failures,
        }
    }

    pub fn quantity(&self, name: &str) -> Option<&Rat> {
        self.quantities.iter().find(|(k, _)| k == name).map(|(_, v)| v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::LatticeVec;
    use crate::polytope::Subsets;

    fn lv(xs: &[i64]) -> LatticeVec {
        LatticeVec::from_i64(xs)
    }

    fn p123() -> ToricFano {
        let fan = Fan::new(
            2,
            vec![lv(&[1, 0]), lv(&[0, 1]), lv(&[-2, -3])],
            vec![vec![0, 1], vec![1, 2], vec![2, 0]],
        )
        .unwrap();
        ToricFano::new(fan).unwrap()
    }

    fn p1xp1() -> ToricFano {
        let fan = Fan::new(
            2,
            vec![lv(&[1, 0]), lv(&[0, 1]), lv(&[-1, 0]), lv(&[0, -1])],
            vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]],
        )
        .unwrap();
        ToricFano::new(fan).unwrap()
    }

    fn projective(n: usize) -> ToricFano {
        let mut rays: Vec<LatticeVec> = (0..n).map(|i| LatticeVec::unit(n, i)).collect();
        rays.push(LatticeVec::from_i64(&vec![-1; n]));
        let fan = Fan::new(n, rays, Subsets::new(n + 1, n).collect()).unwrap();
        ToricFano::new(fan).unwrap()
    }

    fn poly(xs: &[(i64, i64)]) -> Polynomial {
        Polynomial::new(xs.iter().map(|&(n, d)| frac(n, d)).collect())
    }

    #[test]
    fn weighted_projective_example_values() {
        let x = p123();
        let v = ToricValuation::new(&x, lv(&[-1, 0])).unwrap();
        assert_eq!(v.log_discrepancy(), rat(2));
        assert_eq!(v.tau(), rat(3));
        assert_eq!(v.nef_threshold(), rat(3));
        let f = v.volume_function();
        assert_eq!(f.breakpoints(), &[rat(0), rat(3)]);
        assert_eq!(f.pieces(), &[poly(&[(6, 1), (0, 1), (-2, 3)])]);
        assert_eq!(v.s_integral(), rat(12));
        assert_eq!(v.beta(), rat(0));
        assert_eq!(v.restricted_volume().pieces(), &[poly(&[(0, 1), (2, 3)])]);
        assert_eq!(v.center_codim(), 2);
    }

    #[test]
    fn ray_valuations_have_unit_discrepancy() {
        let x = p123();
        for r in x.fan().rays() {
            let v = ToricValuation::new(&x, r.clone()).unwrap();
            assert_eq!(v.log_discrepancy(), rat(1));
            assert_eq!(v.center_codim(), 1);
        }
    }

    #[test]
    fn beta_examples_both_routes() {
        let x = p123();
        for (w, b) in [([1, 0], 0), ([0, 1], 2), ([0, -1], -2)] {
            let v = ToricValuation::new(&x, lv(&w)).unwrap();
            assert_eq!(v.beta(), rat(b), "w = {w:?}");
            assert_eq!(v.beta_from_barycenter(), rat(b), "w = {w:?}");
        }
    }

    #[test]
    fn h0_counts() {
        let x = p123();
        let v = ToricValuation::new(&x, lv(&[-1, 0])).unwrap();
        assert_eq!(v.h0_count(1, 0, 1_000).unwrap(), 7);
        // Points with u1 = -1: (-1,-1), (-1,0), (-1,1).
        assert_eq!(v.h0_count(1, 3, 1_000).unwrap(), 3);
        assert_eq!(v.h0_count(2, 7, 1_000).unwrap(), 0);
        assert!(matches!(v.h0_count(1000, 0, 100), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn projective_space_equality_case() {
        for n in 2..=4usize {
            let x = projective(n);
            let ones = LatticeVec::from_i64(&vec![1; n]);
            let v = ToricValuation::new(&x, ones).unwrap();
            let n1 = rat(n as i64 + 1);
            assert_eq!(v.log_discrepancy(), rat(n as i64));
            assert_eq!(v.tau(), n1);
            assert_eq!(v.nef_threshold(), n1);
            let mut coeffs = vec![Rat::zero(); n + 1];
            coeffs[0] = rat((n as i64 + 1).pow(n as u32));
            coeffs[n] = rat(-1);
            assert_eq!(v.volume_function().pieces(), &[Polynomial::new(coeffs)]);
            assert_eq!(v.s_integral(), rat(n as i64 * (n as i64 + 1).pow(n as u32)));
            assert_eq!(v.beta(), rat(0));
            let mut q = vec![Rat::zero(); n];
            q[n - 1] = rat(1);
            assert_eq!(v.restricted_volume().pieces(), &[Polynomial::new(q)]);
            assert_eq!(v.center_codim(), n);
        }
    }

    #[test]
    fn product_of_lines_blowup_threshold() {
        let x = p1xp1();
        let v = ToricValuation::new(&x, lv(&[1, 1])).unwrap();
        assert_eq!(v.log_discrepancy(), rat(2));
        assert_eq!(v.tau(), rat(4));
        // The strict transforms of the two rulings through the point have
        // class f − E with (σ*(−K) − εE)·(f − E) = 2 − ε.
        assert_eq!(v.nef_threshold(), rat(2));
        let f = v.volume_function();
        assert_eq!(f.breakpoints(), &[rat(0), rat(2), rat(4)]);
        assert_eq!(f.pieces()[0], poly(&[(8, 1), (0, 1), (-1, 1)]));
        assert_eq!(f.pieces()[1], poly(&[(16, 1), (-8, 1), (1, 1)]));
        assert!(f.is_c1());
    }

    #[test]
    fn integral_bound_certificate() {
        let x = p123();
        let p = ToricValuation::new(&x, lv(&[-1, 0])).unwrap().profile();
        let c = p.check_integral_bound();
        assert_eq!(c.status, CertificateStatus::Pass, "{c:?}");
        assert_eq!(c.quantity("bound"), Some(&rat(12)));

        let y = p1xp1();
        let p = ToricValuation::new(&y, lv(&[1, 0])).unwrap().profile();
        let c = p.check_integral_bound();
        assert_eq!(c.status, CertificateStatus::HypothesisNotMet);
        // (2/3)·2·8 against S = ∫_0^2 (8 − 4x) dx = 8.
        assert_eq!(c.quantity("bound"), Some(&frac(32, 3)));
        assert_eq!(c.quantity("S"), Some(&rat(8)));
    }

    #[test]
    fn discrepancy_bound_certificate() {
        let x = p123();
        let p = ToricValuation::new(&x, lv(&[-1, 0])).unwrap().profile();
        assert_eq!(p.check_discrepancy_bound().status, CertificateStatus::Pass);
        assert!(p.is_screen_witness());

        let y = p1xp1();
        let p = ToricValuation::new(&y, lv(&[1, 1])).unwrap().profile();
        let c = p.check_discrepancy_bound();
        assert_eq!(c.status, CertificateStatus::HypothesisNotMet);
        assert_eq!(c.quantity("bound"), Some(&frac(8, 3)));

        let z = projective(3);
        let p = ToricValuation::new(&z, lv(&[1, 1, 1])).unwrap().profile();
        assert_eq!(p.check_discrepancy_bound().status, CertificateStatus::Pass);
        assert_eq!(p.check_integral_bound().status, CertificateStatus::Pass);
    }

    #[test]
    fn zero_and_mismatched_vectors_rejected() {
        let x = p123();
        assert_eq!(ToricValuation::new(&x, lv(&[0, 0])).unwrap_err(), Error::ZeroVector);
        assert!(matches!(
            ToricValuation::new(&x, lv(&[1, 0, 0])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn non_primitive_scaling() {
        let x = p123();
        let v = ToricValuation::new(&x, lv(&[-1, 0])).unwrap();
        let v2 = ToricValuation::new(&x, lv(&[-2, 0])).unwrap();
        assert!(!v2.is_primitive());
        assert_eq!(v2.tau(), rat(2) * v.tau());
        assert_eq!(v2.nef_threshold(), rat(6));
        assert_eq!(v2.s_integral(), rat(2) * v.s_integral());
    }
}
