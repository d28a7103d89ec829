//! Exact midpoint-concavity test for `Q(x)^(1/k)`.
//!
//! The roots are irrational in general, so each comparison
//! `Q(m) >= ((Q(x)^(1/k) + Q(y)^(1/k)) / 2)^k` is decided exactly when
//! possible (a perfect `k`-th power, a vanishing side, or a perfect-power
//! ratio `Q(x)/Q(y)`), and otherwise by rational brackets of the roots of
//! width `10^-9`, refined until the sides separate.

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};

use crate::lattice::{exact_root, frac, rat, root_bracket, Rat};
use crate::piecewise::PiecewisePolynomial;

/// Bracket scales tried in turn: widths `10^-9`, `10^-18`, `10^-36`, `10^-72`.
const BRACKET_EXPONENTS: [u32; 4] = [9, 18, 36, 72];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Comparison {
    Holds,
    Violated,
    /// Brackets never separated; no violation is claimed.
    Unresolved,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConcavityReport {
    pub triples: usize,
    pub decided_exactly: usize,
    pub decided_by_brackets: usize,
    pub unresolved: usize,
    /// Midpoints at which concavity fails.
    pub violations: Vec<Rat>,
}

impl ConcavityReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks midpoint concavity of `q^(1/k)` at `samples` evenly spaced
/// triples `(x_{i-1}, x_i, x_{i+1})` covering the domain of `q`.
pub fn midpoint_concavity(q: &PiecewisePolynomial, k: u32, samples: usize) -> ConcavityReport {
    let (a, b) = (q.start(), q.end());
    let step = (b - a) * frac(1, samples as i64 + 1);
    let xs: Vec<Rat> = (0..=samples + 1).map(|i| a + &step * rat(i as i64)).collect();
    let vals: Vec<Rat> = xs.iter().map(|x| q.eval(x)).collect();
    let mut report = ConcavityReport::default();
    for i in 1..=samples {
        report.triples += 1;
        let (verdict, exact) = compare_midpoint(&vals[i - 1], &vals[i + 1], &vals[i], k);
        match verdict {
            Comparison::Holds if exact => report.decided_exactly += 1,
            Comparison::Holds => report.decided_by_brackets += 1,
            Comparison::Unresolved => report.unresolved += 1,
            Comparison::Violated => {
                if exact {
                    report.decided_exactly += 1;
                } else {
                    report.decided_by_brackets += 1;
                }
                report.violations.push(xs[i].clone());
            }
        }
    }
    report
}

/// Decides `qm >= ((qx^(1/k) + qy^(1/k)) / 2)^k`; the flag is `true` when
/// the decision used no brackets.
pub fn compare_midpoint(qx: &Rat, qy: &Rat, qm: &Rat, k: u32) -> (Comparison, bool) {
    assert!(k >= 1, "root order must be positive");
    let decide = |rhs: Rat| {
        if qm >= &rhs {
            Comparison::Holds
        } else {
            Comparison::Violated
        }
    };
    let half_pow = Rat::new(BigInt::one(), BigInt::from(2).pow(k));

    if let (Some(rx), Some(ry)) = (exact_root(qx, k), exact_root(qy, k)) {
        return (decide((rx + ry).pow(k as i32) * &half_pow), true);
    }
    if qx.is_zero() {
        return (decide(qy * &half_pow), true);
    }
    if qy.is_zero() {
        return (decide(qx * &half_pow), true);
    }
    if let Some(ratio) = exact_root(&(qx / qy), k) {
        return (decide((ratio + Rat::one()).pow(k as i32) * &half_pow * qy), true);
    }

    for e in BRACKET_EXPONENTS {
        let scale = BigInt::from(10).pow(e);
        let (lx, hx) = root_bracket(qx, k, &scale);
        let (ly, hy) = root_bracket(qy, k, &scale);
        let lower = (lx + ly).pow(k as i32) * &half_pow;
        let upper = (hx + hy).pow(k as i32) * &half_pow;
        if qm >= &upper {
            return (Comparison::Holds, false);
        }
        if qm < &lower {
            return (Comparison::Violated, false);
        }
    }
    (Comparison::Unresolved, false)
}
