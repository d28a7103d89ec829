//! One-command regression of every pinned value on the built-in corpus.
//!
//! Each [`Expectation`] pairs an exact expected string with a computation;
//! the log has one line per expectation and no timings, so two runs are
//! byte-identical.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use crate::alpha::alpha;
use crate::concavity::midpoint_concavity;
use crate::lattice::{frac, rat, rat_string, LatticeVec, Rat};
use crate::polytope::factorial;
use crate::valuation::{oracle_budget, ToricValuation, ValuationProfile};
use crate::variety::ToricFano;
use crate::workbench::{battery_profiles, corpus, screen, valuation_battery};

pub struct Expectation {
    pub label: String,
    pub expected: String,
    compute: Box<dyn Fn() -> String + Send + Sync>,
}

impl Expectation {
    pub fn new(
        label: impl Into<String>,
        expected: impl Into<String>,
        compute: impl Fn() -> String + Send + Sync + 'static,
    ) -> Self {
        Expectation {
            label: label.into(),
            expected: expected.into(),
            compute: Box::new(compute),
        }
    }

    pub fn compute(&self) -> String {
        (self.compute)()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteOutcome {
    pub exit_code: i32,
    pub passed: usize,
    pub failed: usize,
    pub log: String,
}

pub fn run_expectations(expectations: &[Expectation]) -> SuiteOutcome {
    let mut log = String::new();
    let (mut passed, mut failed) = (0, 0);
    for e in expectations {
        let got = e.compute();
        if got == e.expected {
            passed += 1;
            log.push_str(&format!("PASS {}: {}\n", e.label, got));
        } else {
            failed += 1;
            log.push_str(&format!("FAIL {}\n  - expected: {}\n  + computed: {}\n", e.label, e.expected, got));
        }
    }
    log.push_str(&format!("{passed} passed, {failed} failed\n"));
    SuiteOutcome {
        exit_code: if failed == 0 { 0 } else { 1 },
        passed,
        failed,
        log,
    }
}

pub fn run_builtin_suite() -> SuiteOutcome {
    run_expectations(&builtin_expectations())
}

fn variety(spec: crate::workbench::FanSpec) -> ToricFano {
    spec.to_variety().expect("built-in fan is valid")
}

fn valuation_value(spec: fn() -> crate::workbench::FanSpec, w: Vec<i64>, f: fn(&ToricValuation) -> Rat) -> impl Fn() -> String {
    move || {
        let x = variety(spec());
        let v = ToricValuation::new(&x, LatticeVec::from_i64(&w)).expect("nonzero");
        rat_string(&f(&v))
    }
}

/// Battery valuations whose integrated beta differs from the barycenter
/// form, or violates antisymmetry or homogeneity.
pub fn barycenter_mismatches(x: &ToricFano, radius: u32) -> Vec<String> {
    let mut bad = Vec::new();
    for w in valuation_battery(x.dim(), radius) {
        let v = ToricValuation::new(x, w.clone()).expect("nonzero");
        let beta = v.beta();
        if beta != v.beta_from_barycenter() {
            bad.push(format!("{w}: barycenter form"));
        }
        let neg = ToricValuation::new(x, w.neg()).expect("nonzero");
        if neg.beta() != -beta.clone() {
            bad.push(format!("{w}: antisymmetry"));
        }
        let two = ToricValuation::new(x, w.scale(&BigInt::from(2))).expect("nonzero");
        if two.beta() != rat(2) * &beta {
            bad.push(format!("{w}: homogeneity"));
        }
    }
    bad
}

/// Relative errors `|h0(k, ⌈kx⌉)·n!/k^n − vol(x)| / vol(x)`.
pub fn lattice_limit_errors(x: &ToricFano, w: &LatticeVec, points: &[Rat], k: u64) -> Vec<Rat> {
    let v = ToricValuation::new(x, w.clone()).expect("nonzero");
    let vol = v.volume_function();
    let n = x.dim();
    let norm = factorial(n) / Rat::from_integer(BigInt::from(k).pow(n as u32));
    points
        .iter()
        .map(|p| {
            let j = (p * rat(k as i64)).ceil().to_integer().to_u64().expect("small");
            let count = v.h0_count(k, j, oracle_budget()).expect("within budget");
            let approx = Rat::from_integer(BigInt::from(count)) * &norm;
            let exact = vol.eval(p);
            ((approx - &exact) / exact).abs()
        })
        .collect()
}

/// Total midpoint-concavity violations of `Q^(1/(n-1))` over profiles.
pub fn concavity_violations(profiles: &[ValuationProfile], samples: usize) -> usize {
    profiles
        .iter()
        .filter(|p| p.dim >= 2)
        .map(|p| midpoint_concavity(&p.q_fn, p.dim as u32 - 1, samples).violations.len())
        .sum()
}

pub fn builtin_expectations() -> Vec<Expectation> {
    let mut out = Vec::new();
    let w = vec![-1, 0];

    // Weighted projective plane, extracted divisor (-1, 0).
    out.push(Expectation::new("P(1,2,3) A(-1,0)", "2/1", valuation_value(corpus::p123, w.clone(), |v| v.log_discrepancy())));
    out.push(Expectation::new("P(1,2,3) tau(-1,0)", "3/1", valuation_value(corpus::p123, w.clone(), |v| v.tau())));
    out.push(Expectation::new("P(1,2,3) eps(-1,0)", "3/1", valuation_value(corpus::p123, w.clone(), |v| v.nef_threshold())));
    out.push(Expectation::new("P(1,2,3) S(-1,0)", "12/1", valuation_value(corpus::p123, w.clone(), |v| v.s_integral())));
    out.push(Expectation::new("P(1,2,3) beta(-1,0)", "0/1", valuation_value(corpus::p123, w.clone(), |v| v.beta())));
    out.push(Expectation::new("P(1,2,3) beta(0,1)", "2/1", valuation_value(corpus::p123, vec![0, 1], |v| v.beta())));
    out.push(Expectation::new("P(1,2,3) beta(0,-1)", "-2/1", valuation_value(corpus::p123, vec![0, -1], |v| v.beta())));
    out.push(Expectation::new("P(1,2,3) vol(-1,0)", "[0/1,3/1] 6/1 0/1 -2/3", move || {
        let x = variety(corpus::p123());
        let v = ToricValuation::new(&x, LatticeVec::from_i64(&[-1, 0])).expect("nonzero");
        let f = v.volume_function();
        let bps: Vec<String> = f.breakpoints().iter().map(rat_string).collect();
        let pieces: Vec<String> = f
            .pieces()
            .iter()
            .map(|p| p.coeffs().iter().map(rat_string).collect::<Vec<_>>().join(" "))
            .collect();
        format!("[{}] {}", bps.join(","), pieces.join(" | "))
    }));
    out.push(Expectation::new("P(1,2,3) degree", "6/1", || rat_string(variety(corpus::p123()).degree())));
    out.push(Expectation::new("P(1,2,3) barycenter", "(0,-1/3)", || variety(corpus::p123()).barycenter().to_string()));
    out.push(Expectation::new("P(1,2,3) alpha", "1/6", || rat_string(&alpha(&variety(corpus::p123())).alpha)));
    out.push(Expectation::new("P(1,2,3) h0(k=1, j=3)", "3", || {
        let x = variety(corpus::p123());
        let v = ToricValuation::new(&x, LatticeVec::from_i64(&[-1, 0])).expect("nonzero");
        v.h0_count(1, 3, oracle_budget()).map_or_else(|e| e.to_string(), |c| c.to_string())
    }));
    out.push(Expectation::new("P(1,2,3) screen radius 2", "singular counterexample", || {
        screen(&variety(corpus::p123()), 2).verdict.label().to_string()
    }));
    out.push(Expectation::new("P1 alpha", "1/2", || rat_string(&alpha(&variety(corpus::projective_space(1))).alpha)));

    // Projective spaces at w = (1, ..., 1).
    for n in 2..=5usize {
        out.push(Expectation::new(
            format!("P{n} (A, tau, eps, beta) at (1,...,1)"),
            format!("{n}/1 {}/1 {}/1 0/1", n + 1, n + 1),
            move || {
                let x = variety(corpus::projective_space(n));
                let v = ToricValuation::new(&x, LatticeVec::from_i64(&vec![1; n])).expect("nonzero");
                let p = v.profile();
                [p.a, p.tau, p.eps, p.beta].iter().map(rat_string).collect::<Vec<_>>().join(" ")
            },
        ));
        out.push(Expectation::new(format!("P{n} screen radius 1"), "projective space recognized", move || {
            screen(&variety(corpus::projective_space(n)), 1).verdict.label().to_string()
        }));
        out.push(Expectation::new(format!("P{n} alpha"), format!("1/{}", n + 1), move || {
            rat_string(&alpha(&variety(corpus::projective_space(n))).alpha)
        }));
    }

    out.push(Expectation::new("P1xP1 eps(1,1)", "2/1", valuation_value(corpus::p1xp1, vec![1, 1], |v| v.nef_threshold())));
    out.push(Expectation::new("P1xP1 alpha", "1/2", || rat_string(&alpha(&variety(corpus::p1xp1())).alpha)));

    // Projective-space screen over the smooth del Pezzo surfaces.
    for spec in corpus::smooth_del_pezzo() {
        let expected = if spec.name == "P2" {
            "projective space recognized"
        } else {
            "no witnesses"
        };
        out.push(Expectation::new(format!("{} screen radius 4", spec.name), expected, move || {
            screen(&variety(spec.clone()), 4).verdict.label().to_string()
        }));
    }

    // Closed-form beta and the alpha identity across the corpus.
    for spec in corpus::corpus().into_iter().filter(|s| s.dim <= 3) {
        let name = spec.name.clone();
        let s = spec.clone();
        out.push(Expectation::new(format!("{name} barycenter identity radius 2"), "0 mismatches", move || {
            format!("{} mismatches", barycenter_mismatches(&variety(s.clone()), 2).len())
        }));
        let s = spec.clone();
        out.push(Expectation::new(format!("{name} alpha = 1/max tau(v_j)"), "true", move || {
            let x = variety(s.clone());
            let a = alpha(&x);
            let max_tau = x
                .fan()
                .rays()
                .iter()
                .map(|r| ToricValuation::new(&x, r.clone()).expect("nonzero").tau())
                .max()
                .expect("rays");
            (a.alpha == max_tau.recip() && a.witness_is_valid(x.fan())).to_string()
        }));
        if spec.dim >= 2 {
            let s = spec.clone();
            out.push(Expectation::new(format!("{name} concavity radius 1"), "0 violations", move || {
                let profiles = battery_profiles(&variety(s.clone()), 1);
                format!("{} violations", concavity_violations(&profiles, 100))
            }));
        }
    }

    out.push(Expectation::new("P(1,2,3) lattice limit", "k=30 within 7/100, errors non-increasing", || {
        let x = variety(corpus::p123());
        let w = LatticeVec::from_i64(&[-1, 0]);
        let pts = [frac(1, 2), rat(1), frac(3, 2), rat(2)];
        let e: Vec<Vec<Rat>> = [10, 20, 30].iter().map(|&k| lattice_limit_errors(&x, &w, &pts, k)).collect();
        let within = e[2].iter().all(|r| r <= &frac(7, 100));
        let monotone = (0..pts.len()).all(|i| e[0][i] >= e[1][i] && e[1][i] >= e[2][i]);
        match (within, monotone) {
            (true, true) => "k=30 within 7/100, errors non-increasing".to_string(),
            _ => format!("within={within} monotone={monotone}"),
        }
    }));
    out
}
