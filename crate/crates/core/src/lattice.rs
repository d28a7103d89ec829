//! Exact rational arithmetic and lattice linear algebra.
//!
//! Every quantity in the workbench is a [`Rat`] (arbitrary-precision
//! rational in lowest terms) or an integer vector. Nothing here touches
//! floating point.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always normalized.
pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Renders a rational as `p/q`, with `q = 1` spelled out.
pub fn rat_string(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `p/q` or a plain integer.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let parse_int = |t: &str| {
        t.trim()
            .parse::<BigInt>()
            .map_err(|e| Error::Parse(format!("bad rational {s:?}: {e}")))
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rat::new(parse_int(n)?, d))
        }
        None => Ok(Rat::from_integer(parse_int(s)?)),
    }
}

/// Exact `k`-th root of a nonnegative rational, when it is rational.
pub fn exact_root(q: &Rat, k: u32) -> Option<Rat> {
    if q.is_negative() {
        return None;
    }
    if k == 1 {
        return Some(q.clone());
    }
    let n = q.numer().nth_root(k);
    let d = q.denom().nth_root(k);
    if n.pow(k) == *q.numer() && d.pow(k) == *q.denom() {
        Some(Rat::new(n, d))
    } else {
        None
    }
}

/// Rational bracket `lo <= q^(1/k) <= hi` with `hi - lo = 1/scale`.
pub fn root_bracket(q: &Rat, k: u32, scale: &BigInt) -> (Rat, Rat) {
    assert!(!q.is_negative(), "root of a negative rational");
    let scaled = (q * Rat::from_integer(scale.pow(k))).floor().to_integer();
    let r = scaled.nth_root(k);
    let lo = Rat::new(r.clone(), scale.clone());
    let hi = Rat::new(r + 1, scale.clone());
    (lo, hi)
}

/// An element of the lattice `N`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVec(Vec<BigInt>);

impl LatticeVec {
    pub fn new(coords: Vec<BigInt>) -> Self {
        LatticeVec(coords)
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        LatticeVec(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(dim: usize) -> Self {
        LatticeVec(vec![BigInt::zero(); dim])
    }

    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zero(dim);
        v.0[i] = BigInt::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// gcd of the coordinates (0 for the zero vector).
    pub fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn is_primitive(&self) -> bool {
        self.content().is_one()
    }

    pub fn scale(&self, k: &BigInt) -> LatticeVec {
        LatticeVec(self.0.iter().map(|c| c * k).collect())
    }

    pub fn neg(&self) -> LatticeVec {
        LatticeVec(self.0.iter().map(|c| -c).collect())
    }

    pub fn add(&self, other: &LatticeVec) -> LatticeVec {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        LatticeVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn to_rat(&self) -> Vec<Rat> {
        self.0.iter().map(|c| Rat::from_integer(c.clone())).collect()
    }

    /// Coordinates as `i64`, when they fit.
    pub fn to_i64(&self) -> Option<Vec<i64>> {
        self.0.iter().map(ToPrimitive::to_i64).collect()
    }

    /// Pairing `<u, self>` with a point of the dual space.
    pub fn pair(&self, u: &DualVec) -> Rat {
        assert_eq!(self.dim(), u.dim(), "dimension mismatch");
        self.0
            .iter()
            .zip(u.coords())
            .fold(Rat::zero(), |acc, (a, b)| acc + b * a)
    }
}

impl fmt::Display for LatticeVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A point of `M ⊗ Q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DualVec(Vec<Rat>);

impl DualVec {
    pub fn new(coords: Vec<Rat>) -> Self {
        DualVec(coords)
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        DualVec(coords.iter().map(|&c| rat(c)).collect())
    }

    pub fn zero(dim: usize) -> Self {
        DualVec(vec![Rat::zero(); dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rat] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn sub(&self, other: &DualVec) -> DualVec {
        DualVec(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn add(&self, other: &DualVec) -> DualVec {
        DualVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, k: &Rat) -> DualVec {
        DualVec(self.0.iter().map(|a| a * k).collect())
    }

    /// Centroid of a nonempty point set.
    pub fn centroid(points: &[&DualVec]) -> DualVec {
        assert!(!points.is_empty(), "centroid of an empty set");
        let dim = points[0].dim();
        let mut acc = DualVec::zero(dim);
        for p in points {
            acc = acc.add(p);
        }
        acc.scale(&Rat::new(BigInt::one(), BigInt::from(points.len())))
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(rat_string).collect()
    }
}

impl fmt::Display for DualVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Divides out the coordinate gcd.
pub fn primitivize(v: &LatticeVec) -> Result<LatticeVec> {
    let g = v.content();
    if g.is_zero() {
        return Err(Error::ZeroVector);
    }
    Ok(LatticeVec(v.0.iter().map(|c| c / &g).collect()))
}

/// Solves the square system `a · x = b` exactly.
pub fn solve_linear(a: &[Vec<Rat>], b: &[Rat]) -> Result<Vec<Rat>> {
    let n = a.len();
    if b.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: b.len(),
        });
    }
    let mut m: Vec<Vec<Rat>> = Vec::with_capacity(n);
    for (row, rhs) in a.iter().zip(b) {
        if row.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: row.len(),
            });
        }
        let mut r = row.clone();
        r.push(rhs.clone());
        m.push(r);
    }
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !m[r][col].is_zero())
            .ok_or(Error::SingularSystem)?;
        m.swap(col, pivot);
        let inv = m[col][col].recip();
        for x in &mut m[col][col..] {
            *x *= &inv;
        }
        let prow = m[col].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != col && !row[col].is_zero() {
                let factor = row[col].clone();
                for (x, p) in row[col..].iter_mut().zip(&prow[col..]) {
                    *x -= &factor * p;
                }
            }
        }
    }
    Ok(m.into_iter().map(|mut row| row.pop().unwrap()).collect())
}

/// Rank of a list of rational row vectors.
pub fn rank(rows: &[Vec<Rat>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let mut m = rows.to_vec();
    let cols = m[0].len();
    let mut r = 0;
    for col in 0..cols {
        let Some(pivot) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, pivot);
        let prow = m[r].clone();
        for row in m.iter_mut().skip(r + 1) {
            if !row[col].is_zero() {
                let factor = &row[col] / &prow[col];
                for (x, p) in row[col..].iter_mut().zip(&prow[col..]) {
                    *x -= &factor * p;
                }
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

/// Determinant of a square rational matrix. Rows are cleared of
/// denominators and the integer matrix is reduced fraction-free (Bareiss).
pub fn determinant(a: &[Vec<Rat>]) -> Rat {
    let n = a.len();
    let mut scale = BigInt::one();
    let mut m: Vec<Vec<BigInt>> = a
        .iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            let ints = row.iter().map(|x| x.numer() * (&l / x.denom())).collect();
            scale *= l;
            ints
        })
        .collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Rat::zero();
        };
        if pivot != col {
            m.swap(col, pivot);
            sign = -sign;
        }
        for r in (col + 1)..n {
            for k in (col + 1)..n {
                let v = (&m[r][k] * &m[col][col] - &m[r][col] * &m[col][k]) / &prev;
                m[r][k] = v;
            }
        }
        prev = m[col][col].clone();
    }
    let det = if n == 0 { BigInt::one() } else { prev };
    Rat::new(sign * det, scale)
}

/// Generalized cross product: a nonzero normal to the span of `n - 1`
/// independent vectors in dimension `n` (cofactor expansion).
pub fn normal_vector(vectors: &[Vec<Rat>], dim: usize) -> Vec<Rat> {
    assert_eq!(vectors.len() + 1, dim, "need dim - 1 vectors");
    (0..dim)
        .map(|k| {
            let minor: Vec<Vec<Rat>> = vectors
                .iter()
                .map(|v| {
                    v.iter()
                        .enumerate()
                        .filter(|&(j, _)| j != k)
                        .map(|(_, x)| x.clone())
                        .collect()
                })
                .collect();
            let d = determinant(&minor);
            if k % 2 == 0 {
                d
            } else {
                -d
            }
        })
        .collect()
}

/// Outcome of expressing a vector in the coordinates of a simplicial cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConeCoordinates {
    Inside(Vec<Rat>),
    Outside,
}

/// Solves `w = Σ a_i v_i` over the generators of a simplicial cone.
pub fn cone_coordinates(w: &LatticeVec, generators: &[LatticeVec]) -> Result<ConeCoordinates> {
    let coeffs = generator_coordinates(w, generators)?;
    if coeffs.iter().any(Signed::is_negative) {
        Ok(ConeCoordinates::Outside)
    } else {
        Ok(ConeCoordinates::Inside(coeffs))
    }
}

/// Raw (possibly negative) coordinates of `w` in a basis of generators.
pub fn generator_coordinates(w: &LatticeVec, generators: &[LatticeVec]) -> Result<Vec<Rat>> {
    let n = w.dim();
    if generators.len() != n {
        return Err(Error::NonSimplicialCone);
    }
    for g in generators {
        if g.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: g.dim(),
            });
        }
    }
    // Columns are generators.
    let a: Vec<Vec<Rat>> = (0..n)
        .map(|row| {
            generators
                .iter()
                .map(|g| Rat::from_integer(g.coords()[row].clone()))
                .collect()
        })
        .collect();
    solve_linear(&a, &w.to_rat()).map_err(|e| match e {
        Error::SingularSystem => Error::NonSimplicialCone,
        other => other,
    })
}
