//! Rational polytopes in `M ⊗ Q`: vertex enumeration, exact volume and
//! barycenter, and the anticanonical polytope of a fan.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, InvariantKind, Result};
use crate::fan::Fan;
use crate::lattice::{determinant, normal_vector, primitivize, rank, rat, solve_linear, DualVec, LatticeVec, Rat};

/// The half-space `<u, normal> >= offset`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfSpace {
    pub normal: LatticeVec,
    pub offset: Rat,
}

impl HalfSpace {
    pub fn new(normal: LatticeVec, offset: Rat) -> Self {
        HalfSpace { normal, offset }
    }

    pub fn slack(&self, u: &DualVec) -> Rat {
        self.normal.pair(u) - &self.offset
    }

    pub fn contains(&self, u: &DualVec) -> bool {
        !self.slack(u).is_negative()
    }
}

/// A bounded polytope carried in both representations.
#[derive(Clone, Debug)]
pub struct RationalPolytope {
    dim: usize,
    h_rep: Vec<HalfSpace>,
    vertices: Vec<DualVec>,
    /// For each vertex, the sorted indices of the half-spaces tight at it.
    tight: Vec<Vec<usize>>,
    full_dimensional: bool,
}

impl RationalPolytope {
    /// Intersects half-spaces and enumerates vertices by exhaustive
    /// `n`-subset intersection. The result may be empty or lower-dimensional,
    /// but must be bounded.
    pub fn from_h_rep(dim: usize, h_rep: Vec<HalfSpace>) -> Result<Self> {
        for h in &h_rep {
            if h.normal.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: h.normal.dim(),
                });
            }
        }
        if !recession_cone_is_trivial(dim, &h_rep) {
            return Err(Error::invariant(
                InvariantKind::Unbounded,
                "half-space system is unbounded",
            ));
        }

        let rows: Vec<Vec<Rat>> = h_rep.iter().map(|h| h.normal.to_rat()).collect();
        let mut found = BTreeSet::new();
        for subset in Subsets::new(h_rep.len(), dim) {
            let a: Vec<Vec<Rat>> = subset.iter().map(|&i| rows[i].clone()).collect();
            let b: Vec<Rat> = subset.iter().map(|&i| h_rep[i].offset.clone()).collect();
            let Ok(x) = solve_linear(&a, &b) else {
                continue;
            };
            let u = DualVec::new(x);
            if h_rep.iter().all(|h| h.contains(&u)) {
                found.insert(u);
            }
        }
        Ok(RationalPolytope::from_parts(dim, h_rep, found.into_iter().collect()))
    }

    fn from_parts(dim: usize, h_rep: Vec<HalfSpace>, vertices: Vec<DualVec>) -> Self {
        let tight = vertices
            .iter()
            .map(|u| {
                h_rep
                    .iter()
                    .enumerate()
                    .filter(|(_, h)| h.slack(u).is_zero())
                    .map(|(i, _)| i)
                    .collect()
            })
            .collect();
        let refs: Vec<&DualVec> = vertices.iter().collect();
        let full_dimensional = affine_dim(&refs) == Some(dim);
        RationalPolytope {
            dim,
            h_rep,
            vertices,
            tight,
            full_dimensional,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn h_rep(&self) -> &[HalfSpace] {
        &self.h_rep
    }

    pub fn vertices(&self) -> &[DualVec] {
        &self.vertices
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.full_dimensional
    }

    pub fn contains(&self, u: &DualVec) -> bool {
        self.h_rep.iter().all(|h| h.contains(u))
    }

    pub fn contains_strictly(&self, u: &DualVec) -> bool {
        self.h_rep.iter().all(|h| h.slack(u).is_positive())
    }

    /// Adds one more half-space. Vertices are updated incrementally: kept
    /// vertices survive, and each edge crossing the new hyperplane
    /// contributes its crossing point. Agrees with [`Self::from_h_rep`] on
    /// the extended system.
    pub fn cut(&self, h: HalfSpace) -> Result<RationalPolytope> {
        if h.normal.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: h.normal.dim(),
            });
        }
        let slacks: Vec<Rat> = self.vertices.iter().map(|u| h.slack(u)).collect();
        let mut found: BTreeSet<DualVec> = self
            .vertices
            .iter()
            .zip(&slacks)
            .filter(|(_, s)| !s.is_negative())
            .map(|(u, _)| u.clone())
            .collect();
        let rows: Vec<Vec<Rat>> = self.h_rep.iter().map(|h| h.normal.to_rat()).collect();
        for (i, si) in slacks.iter().enumerate() {
            if !si.is_positive() {
                continue;
            }
            for (j, sj) in slacks.iter().enumerate() {
                if !sj.is_negative() || !self.adjacent(i, j, &rows) {
                    continue;
                }
                // Point on [u_i, u_j] where the slack vanishes.
                let t = si / (si - sj);
                let (ui, uj) = (&self.vertices[i], &self.vertices[j]);
                found.insert(ui.add(&uj.sub(ui).scale(&t)));
            }
        }
        let mut h_rep = self.h_rep.clone();
        h_rep.push(h);
        Ok(RationalPolytope::from_parts(self.dim, h_rep, found.into_iter().collect()))
    }

    /// Vertices `i` and `j` span an edge when their common tight
    /// constraints have rank `n - 1`.
    fn adjacent(&self, i: usize, j: usize, rows: &[Vec<Rat>]) -> bool {
        let common: Vec<Vec<Rat>> = self.tight[i]
            .iter()
            .filter(|k| self.tight[j].binary_search(k).is_ok())
            .map(|&k| rows[k].clone())
            .collect();
        common.len() + 1 >= self.dim && rank(&common) + 1 == self.dim
    }

    /// Maximum of `<., w>` over the polytope, attained at a vertex.
    pub fn max_linear_functional(&self, w: &LatticeVec) -> Rat {
        self.argmax(w).1
    }

    /// Minimum of `<., w>` over the polytope.
    pub fn min_linear_functional(&self, w: &LatticeVec) -> Rat {
        let neg = w.neg();
        -self.argmax(&neg).1
    }

    /// First vertex (in sorted vertex order) maximizing `<., w>`.
    pub fn argmax(&self, w: &LatticeVec) -> (&DualVec, Rat) {
        assert!(!self.vertices.is_empty(), "maximum over an empty polytope");
        let mut best = (&self.vertices[0], w.pair(&self.vertices[0]));
        for v in &self.vertices[1..] {
            let val = w.pair(v);
            if val > best.1 {
                best = (v, val);
            }
        }
        best
    }

    /// Exact volume; `0` when not full-dimensional.
    pub fn volume(&self) -> Rat {
        if !self.full_dimensional {
            if !self.vertices.is_empty() {
                log::debug!("volume of a lower-dimensional polytope taken as 0");
            }
            return Rat::zero();
        }
        self.pulling().iter().map(|s| simplex_volume(s)).sum()
    }

    /// Volume via the fan-out triangulation from the given base point,
    /// which must lie in the polytope.
    pub fn volume_from(&self, base: &DualVec) -> Rat {
        if !self.full_dimensional {
            return Rat::zero();
        }
        self.triangulate_from(base)
            .iter()
            .map(|s| simplex_volume(s))
            .sum()
    }

    /// Vertex average; always in the relative interior.
    pub fn interior_point(&self) -> DualVec {
        let refs: Vec<&DualVec> = self.vertices.iter().collect();
        DualVec::centroid(&refs)
    }

    /// Exact centroid: volume-weighted mean of simplex centroids.
    pub fn barycenter(&self) -> Result<DualVec> {
        if !self.full_dimensional {
            return Err(Error::invariant(
                InvariantKind::Degenerate,
                "barycenter of a lower-dimensional polytope",
            ));
        }
        let mut total = Rat::zero();
        let mut acc = DualVec::zero(self.dim);
        for s in self.pulling() {
            let v = simplex_volume(&s);
            let refs: Vec<&DualVec> = s.iter().collect();
            acc = acc.add(&DualVec::centroid(&refs).scale(&v));
            total += v;
        }
        Ok(acc.scale(&total.recip()))
    }

    /// Triangulation without new vertices (requires full dimension).
    fn pulling(&self) -> Vec<Vec<DualVec>> {
        let all: Vec<usize> = (0..self.vertices.len()).collect();
        self.face_simplices(&all, self.dim)
    }

    /// Triangulation into full-dimensional simplices: the boundary is
    /// triangulated facet by facet and the result coned from `base`.
    pub fn triangulate_from(&self, base: &DualVec) -> Vec<Vec<DualVec>> {
        let all: Vec<usize> = (0..self.vertices.len()).collect();
        let mut out = Vec::new();
        for facet in self.subfaces(&all) {
            for mut s in self.face_simplices(&facet, self.dim - 1) {
                s.insert(0, base.clone());
                if !simplex_volume(&s).is_zero() {
                    out.push(s);
                }
            }
        }
        out
    }

    /// Pulling triangulation of a `d`-dimensional face: cone from its first
    /// vertex over the facets of the face not containing that vertex.
    fn face_simplices(&self, face: &[usize], d: usize) -> Vec<Vec<DualVec>> {
        let apex = face[0];
        if d == 0 {
            return vec![vec![self.vertices[apex].clone()]];
        }
        let mut out = Vec::new();
        for sub in self.subfaces(face) {
            if sub.binary_search(&apex).is_ok() {
                continue;
            }
            for mut s in self.face_simplices(&sub, d - 1) {
                s.insert(0, self.vertices[apex].clone());
                out.push(s);
            }
        }
        out
    }

    /// Facets of the face `face`. Every facet of a face is cut out by some
    /// facet of the polytope, so they are the inclusion-maximal proper
    /// faces among `face ∩ {h tight}`.
    fn subfaces(&self, face: &[usize]) -> Vec<Vec<usize>> {
        let mut seen = BTreeSet::new();
        for h in 0..self.h_rep.len() {
            let sub: Vec<usize> = face
                .iter()
                .copied()
                .filter(|&v| self.tight[v].binary_search(&h).is_ok())
                .collect();
            if !sub.is_empty() && sub.len() < face.len() {
                seen.insert(sub);
            }
        }
        let cands: Vec<Vec<usize>> = seen.into_iter().collect();
        cands
            .iter()
            .filter(|a| !cands.iter().any(|b| b.len() > a.len() && a.iter().all(|v| b.binary_search(v).is_ok())))
            .cloned()
            .collect()
    }

    /// Facet inequalities of the convex hull of the vertex set, with
    /// primitive integer normals. Independent of the stored `h_rep`.
    pub fn hull_facets(&self) -> Vec<HalfSpace> {
        let n = self.dim;
        let mut out = BTreeSet::new();
        if !self.full_dimensional {
            return Vec::new();
        }
        for subset in Subsets::new(self.vertices.len(), n) {
            let p0 = &self.vertices[subset[0]];
            let diffs: Vec<Vec<Rat>> = subset[1..]
                .iter()
                .map(|&i| self.vertices[i].sub(p0).coords().to_vec())
                .collect();
            if rank(&diffs) != n - 1 {
                continue;
            }
            let nrm = integer_direction(&normal_vector(&diffs, n));
            let offset = nrm.pair(p0);
            let vals: Vec<Rat> = self.vertices.iter().map(|v| nrm.pair(v) - &offset).collect();
            if vals.iter().all(|s| !s.is_negative()) {
                out.insert(HalfSpace::new(nrm, offset));
            } else if vals.iter().all(|s| !s.is_positive()) {
                out.insert(HalfSpace::new(nrm.neg(), -offset));
            }
        }
        out.into_iter().collect()
    }

    /// Number of lattice points `u` of `k·P` satisfying every extra
    /// half-space, by enumeration over the bounding box. Fails if the
    /// box holds more than `budget` points.
    pub fn count_lattice_points(&self, k: u64, extra: &[HalfSpace], budget: u128) -> Result<u128> {
        if self.vertices.is_empty() {
            return Ok(0);
        }
        let kr = rat(k as i64);
        let mut lo = vec![None::<BigInt>; self.dim];
        let mut hi = vec![None::<BigInt>; self.dim];
        for v in &self.vertices {
            for (i, c) in v.coords().iter().enumerate() {
                let c = c * &kr;
                let f = c.floor().to_integer();
                let cl = c.ceil().to_integer();
                if lo[i].as_ref().is_none_or(|x| &f < x) {
                    lo[i] = Some(f);
                }
                if hi[i].as_ref().is_none_or(|x| &cl > x) {
                    hi[i] = Some(cl);
                }
            }
        }
        let to_i64 = |b: &BigInt| {
            b.to_i64().ok_or(Error::BudgetExceeded {
                needed: u128::MAX,
                budget,
            })
        };
        let lo: Vec<i64> = lo.iter().map(|b| to_i64(b.as_ref().unwrap())).collect::<Result<_>>()?;
        let hi: Vec<i64> = hi.iter().map(|b| to_i64(b.as_ref().unwrap())).collect::<Result<_>>()?;
        let mut needed: u128 = 1;
        for (a, b) in lo.iter().zip(&hi) {
            needed = needed.saturating_mul((b - a + 1) as u128);
        }
        if needed > budget {
            return Err(Error::BudgetExceeded { needed, budget });
        }

        // Integer forms of the constraints: <u, a> >= ceil(rhs).
        let mut constraints: Vec<(Vec<i64>, i64)> = Vec::new();
        let scaled = self.h_rep.iter().map(|h| (h, &h.offset * &kr));
        let extra = extra.iter().map(|h| (h, h.offset.clone()));
        for (h, rhs) in scaled.chain(extra) {
            let a = h.normal.to_i64().ok_or(Error::BudgetExceeded {
                needed: u128::MAX,
                budget,
            })?;
            let r = to_i64(&rhs.ceil().to_integer())?;
            constraints.push((a, r));
        }

        let mut count = 0u128;
        let mut u = lo.clone();
        loop {
            if constraints.iter().all(|(a, r)| {
                a.iter().zip(&u).map(|(x, y)| (*x as i128) * (*y as i128)).sum::<i128>() >= *r as i128
            }) {
                count += 1;
            }
            let mut i = 0;
            loop {
                if i == self.dim {
                    return Ok(count);
                }
                if u[i] < hi[i] {
                    u[i] += 1;
                    break;
                }
                u[i] = lo[i];
                i += 1;
            }
        }
    }
}

/// The polytope `{u : <u, v_i> >= -1}` of sections of `-K_X`, validated to
/// be bounded with every cone's vertex `m_σ` strictly inside the other
/// inequalities (ampleness of `-K_X`).
pub fn anticanonical_polytope(fan: &Fan) -> Result<RationalPolytope> {
    let n = fan.dim();
    let h_rep: Vec<HalfSpace> = fan
        .rays()
        .iter()
        .map(|v| HalfSpace::new(v.clone(), rat(-1)))
        .collect();
    let poly = RationalPolytope::from_h_rep(n, h_rep).map_err(|e| match e {
        Error::Invariant {
            kind: InvariantKind::Unbounded,
            ..
        } => Error::invariant(InvariantKind::Unbounded, "anticanonical polytope is unbounded"),
        other => other,
    })?;
    let origin = DualVec::zero(n);
    if !poly.contains_strictly(&origin) {
        return Err(Error::invariant(
            InvariantKind::NotFano,
            "origin is not interior to the anticanonical polytope",
        ));
    }

    // Each maximal cone must contribute its own vertex.
    let mut cone_vertices = BTreeMap::new();
    for (ci, cone) in fan.cones().iter().enumerate() {
        let a: Vec<Vec<Rat>> = cone.rays().iter().map(|&r| fan.rays()[r].to_rat()).collect();
        let b = vec![rat(-1); n];
        let m = DualVec::new(solve_linear(&a, &b)?);
        for (j, v) in fan.rays().iter().enumerate() {
            if cone.contains_ray(j) {
                continue;
            }
            if v.pair(&m) <= rat(-1) {
                return Err(Error::invariant(
                    InvariantKind::NotFano,
                    format!("-K is not ample: vertex {m} of cone {ci} violates ray {j} = {v} strictly"),
                ));
            }
        }
        cone_vertices.insert(m, ci);
    }
    let enumerated: BTreeSet<&DualVec> = poly.vertices().iter().collect();
    let from_cones: BTreeSet<&DualVec> = cone_vertices.keys().collect();
    if enumerated != from_cones {
        return Err(Error::invariant(
            InvariantKind::NotFano,
            "vertex set does not match the maximal cones",
        ));
    }
    Ok(poly)
}

/// `(−K_X)^n = n!·vol(P)`.
pub fn degree(poly: &RationalPolytope) -> Rat {
    poly.volume() * factorial(poly.dim())
}

pub fn factorial(n: usize) -> Rat {
    (1..=n).fold(Rat::one(), |acc, k| acc * rat(k as i64))
}

/// Absolute volume of the simplex spanned by `n + 1` points.
pub fn simplex_volume(points: &[DualVec]) -> Rat {
    let n = points.len() - 1;
    let rows: Vec<Vec<Rat>> = points[1..]
        .iter()
        .map(|p| p.sub(&points[0]).coords().to_vec())
        .collect();
    determinant(&rows).abs() / factorial(n)
}

/// Affine dimension of a point set (`None` when empty).
pub fn affine_dim(points: &[&DualVec]) -> Option<usize> {
    let (first, rest) = points.split_first()?;
    let diffs: Vec<Vec<Rat>> = rest.iter().map(|p| p.sub(first).coords().to_vec()).collect();
    Some(rank(&diffs))
}

/// Scales a nonzero rational vector to a primitive integer vector with the
/// same direction.
fn integer_direction(v: &[Rat]) -> LatticeVec {
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Rat::from_integer(l.clone())).to_integer()).collect();
    primitivize(&LatticeVec::new(ints)).expect("normal vector is nonzero")
}

fn recession_cone_is_trivial(dim: usize, h_rep: &[HalfSpace]) -> bool {
    let rows: Vec<Vec<Rat>> = h_rep.iter().map(|h| h.normal.to_rat()).collect();
    if rank(&rows) < dim {
        return false;
    }
    for subset in Subsets::new(rows.len(), dim - 1) {
        let sel: Vec<Vec<Rat>> = subset.iter().map(|&i| rows[i].clone()).collect();
        if rank(&sel) != dim - 1 {
            continue;
        }
        let d = normal_vector(&sel, dim);
        let vals: Vec<Rat> = rows
            .iter()
            .map(|r| r.iter().zip(&d).map(|(a, b)| a * b).sum())
            .collect();
        if vals.iter().all(|x| !x.is_negative()) || vals.iter().all(|x| !x.is_positive()) {
            return false;
        }
    }
    true
}

/// Lexicographic `k`-subsets of `0..n`.
pub(crate) struct Subsets {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Subsets {
    pub(crate) fn new(n: usize, k: usize) -> Self {
        let current = (k <= n).then(|| (0..k).collect());
        Subsets { n, current }
    }
}

impl Iterator for Subsets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let k = out.len();
        let mut next = out.clone();
        let mut i = k;
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            i -= 1;
            if next[i] < self.n - k + i {
                next[i] += 1;
                for j in (i + 1)..k {
                    next[j] = next[j - 1] + 1;
                }
                self.current = Some(next);
                break;
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::frac;

    fn lv(xs: &[i64]) -> LatticeVec {
        LatticeVec::from_i64(xs)
    }

    fn dv(xs: &[i64]) -> DualVec {
        DualVec::from_i64(xs)
    }

    fn p123() -> Fan {
        Fan::new(
            2,
            vec![lv(&[1, 0]), lv(&[0, 1]), lv(&[-2, -3])],
            vec![vec![0, 1], vec![1, 2], vec![2, 0]],
        )
        .unwrap()
    }

    fn projective(n: usize) -> Fan {
        let mut rays: Vec<LatticeVec> = (0..n).map(|i| LatticeVec::unit(n, i)).collect();
        rays.push(LatticeVec::from_i64(&vec![-1; n]));
        let cones = Subsets::new(n + 1, n).collect();
        Fan::new(n, rays, cones).unwrap()
    }

    fn unit_square() -> RationalPolytope {
        RationalPolytope::from_h_rep(
            2,
            vec![
                HalfSpace::new(lv(&[1, 0]), rat(0)),
                HalfSpace::new(lv(&[-1, 0]), rat(-1)),
                HalfSpace::new(lv(&[0, 1]), rat(0)),
                HalfSpace::new(lv(&[0, -1]), rat(-1)),
            ],
        )
        .unwrap()
    }

    #[test]
    fn subsets_enumerate_binomially() {
        assert_eq!(Subsets::new(5, 2).count(), 10);
        assert_eq!(Subsets::new(3, 0).count(), 1);
        assert_eq!(Subsets::new(2, 3).count(), 0);
    }

    #[test]
    fn weighted_projective_triangle() {
        let p = anticanonical_polytope(&p123()).unwrap();
        let verts: BTreeSet<_> = p.vertices().iter().cloned().collect();
        let expected: BTreeSet<_> = [dv(&[-1, -1]), dv(&[-1, 1]), dv(&[2, -1])].into_iter().collect();
        assert_eq!(verts, expected);
        assert_eq!(p.volume(), rat(3));
        assert_eq!(degree(&p), rat(6));
        assert_eq!(p.barycenter().unwrap(), DualVec::new(vec![rat(0), frac(-1, 3)]));
        assert_eq!(p.max_linear_functional(&lv(&[-1, 0])), rat(1));
        assert_eq!(p.max_linear_functional(&lv(&[0, 0])), rat(0));
    }

    #[test]
    fn projective_line_segment() {
        let p1 = Fan::new(1, vec![lv(&[1]), lv(&[-1])], vec![vec![0], vec![1]]).unwrap();
        let p = anticanonical_polytope(&p1).unwrap();
        assert_eq!(p.vertices(), &[dv(&[-1]), dv(&[1])]);
        assert_eq!(p.volume(), rat(2));
        assert_eq!(p.barycenter().unwrap(), dv(&[0]));
    }

    #[test]
    fn projective_space_simplex() {
        for n in 2..=4 {
            let p = anticanonical_polytope(&projective(n)).unwrap();
            assert_eq!(p.vertices().len(), n + 1);
            for v in p.vertices() {
                let big = v.coords().iter().filter(|c| **c == rat(n as i64)).count();
                let minus = v.coords().iter().filter(|c| **c == rat(-1)).count();
                assert!(minus == n || (big == 1 && minus == n - 1));
            }
            assert_eq!(degree(&p), rat((n as i64 + 1).pow(n as u32)));
            assert!(p.barycenter().unwrap().is_zero());
            let ones = LatticeVec::from_i64(&vec![1; n]);
            assert_eq!(p.max_linear_functional(&ones), rat(1));
        }
        let p = anticanonical_polytope(&projective(2)).unwrap();
        assert_eq!(p.volume(), frac(9, 2));
    }

    #[test]
    fn unit_square_volume() {
        let sq = unit_square();
        assert_eq!(sq.volume(), rat(1));
        assert_eq!(sq.barycenter().unwrap(), DualVec::new(vec![frac(1, 2), frac(1, 2)]));
    }

    #[test]
    fn lower_dimensional_volume_is_zero() {
        let seg = RationalPolytope::from_h_rep(
            2,
            vec![
                HalfSpace::new(lv(&[1, 0]), rat(0)),
                HalfSpace::new(lv(&[-1, 0]), rat(0)),
                HalfSpace::new(lv(&[0, 1]), rat(0)),
                HalfSpace::new(lv(&[0, -1]), rat(-1)),
            ],
        )
        .unwrap();
        assert!(!seg.is_full_dimensional());
        assert_eq!(seg.volume(), rat(0));
        assert!(seg.barycenter().is_err());
    }

    #[test]
    fn unbounded_is_rejected() {
        let e = RationalPolytope::from_h_rep(
            2,
            vec![HalfSpace::new(lv(&[1, 0]), rat(0)), HalfSpace::new(lv(&[0, 1]), rat(0))],
        )
        .unwrap_err();
        assert!(matches!(e, Error::Invariant { kind: InvariantKind::Unbounded, .. }));
    }

    #[test]
    fn non_fano_fan_is_rejected() {
        // Hirzebruch surface F_2: -K is nef but not ample.
        let f2 = Fan::new(
            2,
            vec![lv(&[1, 0]), lv(&[0, 1]), lv(&[-1, 2]), lv(&[0, -1])],
            vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]],
        )
        .unwrap();
        let e = anticanonical_polytope(&f2).unwrap_err();
        assert!(matches!(e, Error::Invariant { kind: InvariantKind::NotFano, .. }));
    }

    #[test]
    fn hull_facets_recover_h_rep() {
        let p = anticanonical_polytope(&p123()).unwrap();
        let got: BTreeSet<_> = p.hull_facets().into_iter().collect();
        let want: BTreeSet<_> = p.h_rep().iter().cloned().collect();
        assert_eq!(got, want);
    }

    #[test]
    fn volume_is_base_point_independent() {
        let p = anticanonical_polytope(&p123()).unwrap();
        for base in [dv(&[0, 0]), dv(&[-1, -1]), dv(&[2, -1]), DualVec::new(vec![frac(1, 3), frac(-1, 2)])] {
            assert_eq!(p.volume_from(&base), rat(3));
        }
    }

    #[test]
    fn lattice_count_of_triangle() {
        let p = anticanonical_polytope(&p123()).unwrap();
        assert_eq!(p.count_lattice_points(1, &[], 1000).unwrap(), 7);
        let e = p.count_lattice_points(100, &[], 10).unwrap_err();
        assert!(matches!(e, Error::BudgetExceeded { .. }));
    }
}
