//! Exact univariate polynomials and piecewise polynomials over `Q`.

use num_traits::{Signed, Zero};

use crate::lattice::{rat, Rat};

/// Dense polynomial in `x`, coefficients in ascending degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    coeffs: Vec<Rat>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: Rat) -> Self {
        Polynomial::new(vec![c])
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Degree, with the zero polynomial reported as 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        self.coeffs
            .iter()
            .rev()
            .fold(Rat::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Polynomial {
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * rat(k as i64))
                .collect(),
        )
    }

    /// Antiderivative vanishing at 0.
    pub fn antiderivative(&self) -> Polynomial {
        let mut out = vec![Rat::zero()];
        out.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| c / rat(k as i64 + 1)),
        );
        Polynomial::new(out)
    }

    pub fn integral(&self, a: &Rat, b: &Rat) -> Rat {
        let f = self.antiderivative();
        f.eval(b) - f.eval(a)
    }

    pub fn scale(&self, k: &Rat) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// The unique polynomial of degree `< points.len()` through the points.
    pub fn interpolate(points: &[(Rat, Rat)]) -> Polynomial {
        let mut acc = vec![Rat::zero(); points.len()];
        for (i, (xi, yi)) in points.iter().enumerate() {
            // Basis polynomial prod_{j != i} (x - xj) / (xi - xj).
            let mut basis = vec![rat(1)];
            let mut denom = rat(1);
            for (j, (xj, _)) in points.iter().enumerate() {
                if i == j {
                    continue;
                }
                let mut next = vec![Rat::zero(); basis.len() + 1];
                for (k, c) in basis.iter().enumerate() {
                    next[k + 1] += c;
                    next[k] -= c * xj;
                }
                basis = next;
                denom *= xi - xj;
            }
            let factor = yi / denom;
            for (k, c) in basis.iter().enumerate() {
                acc[k] += c * &factor;
            }
        }
        Polynomial::new(acc)
    }
}

/// A function on `[breakpoints[0], breakpoints[m]]` given by one polynomial
/// per interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiecewisePolynomial {
    breakpoints: Vec<Rat>,
    pieces: Vec<Polynomial>,
}

impl PiecewisePolynomial {
    pub fn new(breakpoints: Vec<Rat>, pieces: Vec<Polynomial>) -> Self {
        assert_eq!(breakpoints.len(), pieces.len() + 1, "one piece per interval");
        assert!(
            breakpoints.windows(2).all(|w| w[0] < w[1]),
            "breakpoints must increase strictly"
        );
        PiecewisePolynomial { breakpoints, pieces }
    }

    pub fn breakpoints(&self) -> &[Rat] {
        &self.breakpoints
    }

    pub fn pieces(&self) -> &[Polynomial] {
        &self.pieces
    }

    pub fn start(&self) -> &Rat {
        &self.breakpoints[0]
    }

    pub fn end(&self) -> &Rat {
        self.breakpoints.last().unwrap()
    }

    /// Index of the piece used at `x`: the right-hand piece at interior
    /// breakpoints, the boundary pieces outside the domain.
    pub fn piece_index(&self, x: &Rat) -> usize {
        let m = self.pieces.len();
        self.breakpoints[1..m]
            .iter()
            .position(|b| x < b)
            .unwrap_or(m - 1)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        self.pieces[self.piece_index(x)].eval(x)
    }

    pub fn derivative(&self) -> PiecewisePolynomial {
        PiecewisePolynomial {
            breakpoints: self.breakpoints.clone(),
            pieces: self.pieces.iter().map(Polynomial::derivative).collect(),
        }
    }

    pub fn scale(&self, k: &Rat) -> PiecewisePolynomial {
        PiecewisePolynomial {
            breakpoints: self.breakpoints.clone(),
            pieces: self.pieces.iter().map(|p| p.scale(k)).collect(),
        }
    }

    /// Integral over the whole domain.
    pub fn integral(&self) -> Rat {
        self.pieces
            .iter()
            .zip(self.breakpoints.windows(2))
            .map(|(p, w)| p.integral(&w[0], &w[1]))
            .sum()
    }

    /// Exact agreement of adjacent pieces at each interior breakpoint.
    pub fn is_continuous(&self) -> bool {
        self.pieces
            .windows(2)
            .zip(&self.breakpoints[1..])
            .all(|(p, x)| p[0].eval(x) == p[1].eval(x))
    }

    /// One-sided derivatives agree at each interior breakpoint.
    pub fn is_c1(&self) -> bool {
        self.is_continuous() && self.derivative().is_continuous()
    }

    /// Non-increasing on the domain: the derivative has no positive value
    /// on any piece (checked at the piece endpoints and at every critical
    /// point of the derivative inside the piece).
    pub fn is_non_increasing(&self) -> bool {
        let d = self.derivative();
        d.pieces
            .iter()
            .zip(self.breakpoints.windows(2))
            .all(|(p, w)| max_on_interval(p, &w[0], &w[1]).is_none_or(|m| !m.is_positive()))
    }
}

/// Upper bound of a polynomial on `[a, b]`, exact for degree <= 2 and
/// sampled on a fine grid (plus endpoints) otherwise.
fn max_on_interval(p: &Polynomial, a: &Rat, b: &Rat) -> Option<Rat> {
    let mut candidates = vec![a.clone(), b.clone()];
    match p.degree() {
        0 | 1 => {}
        2 => {
            let c = p.coeffs();
            let vertex = -&c[1] / (rat(2) * &c[2]);
            if &vertex > a && &vertex < b {
                candidates.push(vertex);
            }
        }
        _ => {
            let steps = 64;
            for i in 1..steps {
                candidates.push(a + (b - a) * Rat::new(i.into(), steps.into()));
            }
        }
    }
    candidates.iter().map(|x| p.eval(x)).max()
}
