//! Complete simplicial fans in `N ⊗ R`.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, InvariantKind, Result};
use crate::lattice::{determinant, normal_vector, solve_linear, LatticeVec, Rat};

/// Number of point-location probes used by the completeness check.
pub const COMPLETENESS_PROBES: usize = 1000;
/// Seed for the completeness probes; fixed so validation is reproducible.
pub const COMPLETENESS_SEED: u64 = 0x746b_735f_6661_6e00;
const PROBE_RANGE: i64 = 1_000_000;

/// A maximal cone, stored as sorted indices into the fan's ray table.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cone {
    rays: Vec<usize>,
}

impl Cone {
    pub fn new(mut rays: Vec<usize>) -> Self {
        rays.sort_unstable();
        Cone { rays }
    }

    pub fn rays(&self) -> &[usize] {
        &self.rays
    }

    pub fn contains_ray(&self, i: usize) -> bool {
        self.rays.binary_search(&i).is_ok()
    }
}

/// Two maximal cones glued along a common facet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Wall {
    pub cones: (usize, usize),
    pub shared: Vec<usize>,
    /// The ray of each cone that is not on the wall.
    pub opposite: (usize, usize),
}

/// A validated complete simplicial fan.
#[derive(Clone, Debug)]
pub struct Fan {
    dim: usize,
    rays: Vec<LatticeVec>,
    cones: Vec<Cone>,
    /// Per cone, the inverse of the matrix whose columns are its rays.
    /// Per cone, the inverse ray matrix as an integer matrix over a
    /// positive common denominator.
    inverses: Vec<(Vec<Vec<BigInt>>, BigInt)>,
}

impl PartialEq for Fan {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.rays == other.rays && self.cones == other.cones
    }
}

impl Eq for Fan {}

impl Fan {
    /// Builds and validates a fan. Rays must be primitive and distinct,
    /// cones simplicial and full-dimensional, and the fan complete.
    pub fn new(dim: usize, rays: Vec<LatticeVec>, cones: Vec<Vec<usize>>) -> Result<Fan> {
        let fan = Fan::build(dim, rays, cones, true)?;
        fan.check_complete()?;
        Ok(fan)
    }

    /// Structural checks only, completeness is assumed. Used for
    /// subdivisions of fans that were already validated.
    fn build(
        dim: usize,
        rays: Vec<LatticeVec>,
        cones: Vec<Vec<usize>>,
        require_primitive: bool,
    ) -> Result<Fan> {
        if dim == 0 {
            return Err(Error::invariant(
                InvariantKind::DegenerateCone,
                "dimension must be at least 1",
            ));
        }
        let mut seen = BTreeMap::new();
        for (i, r) in rays.iter().enumerate() {
            if r.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: r.dim(),
                });
            }
            if r.is_zero() {
                return Err(Error::invariant(InvariantKind::ZeroRay, format!("ray {i}")));
            }
            if require_primitive && !r.is_primitive() {
                return Err(Error::invariant(
                    InvariantKind::NonPrimitiveRay,
                    format!("ray {i} = {r}"),
                ));
            }
            if let Some(j) = seen.insert(r.clone(), i) {
                return Err(Error::invariant(
                    InvariantKind::DuplicateRay,
                    format!("rays {j} and {i} are both {r}"),
                ));
            }
        }

        let mut used = vec![false; rays.len()];
        let mut built = Vec::with_capacity(cones.len());
        let mut inverses = Vec::with_capacity(cones.len());
        let mut cone_set = BTreeSet::new();
        for (ci, c) in cones.into_iter().enumerate() {
            for &r in &c {
                if r >= rays.len() {
                    return Err(Error::invariant(
                        InvariantKind::BadRayIndex,
                        format!("cone {ci} references ray {r}"),
                    ));
                }
                used[r] = true;
            }
            let cone = Cone::new(c);
            if cone.rays.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::invariant(
                    InvariantKind::DegenerateCone,
                    format!("cone {ci} repeats a ray"),
                ));
            }
            if cone.rays.len() > dim {
                return Err(Error::invariant(
                    InvariantKind::NonSimplicial,
                    format!("cone {ci} has {} rays in dimension {dim}", cone.rays.len()),
                ));
            }
            if cone.rays.len() < dim {
                return Err(Error::invariant(
                    InvariantKind::DegenerateCone,
                    format!("cone {ci} has {} rays in dimension {dim}", cone.rays.len()),
                ));
            }
            let inv = cone_inverse(&rays, &cone).ok_or_else(|| {
                Error::invariant(
                    InvariantKind::DegenerateCone,
                    format!("cone {ci} has linearly dependent rays"),
                )
            })?;
            if !cone_set.insert(cone.clone()) {
                return Err(Error::invariant(
                    InvariantKind::DegenerateCone,
                    format!("cone {ci} is listed twice"),
                ));
            }
            built.push(cone);
            inverses.push(inv);
        }
        if let Some(i) = used.iter().position(|u| !u) {
            return Err(Error::invariant(
                InvariantKind::UnusedRay,
                format!("ray {i} = {}", rays[i]),
            ));
        }
        Ok(Fan {
            dim,
            rays,
            cones: built,
            inverses,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[LatticeVec] {
        &self.rays
    }

    pub fn cones(&self) -> &[Cone] {
        &self.cones
    }

    pub fn ray_index(&self, v: &LatticeVec) -> Option<usize> {
        self.rays.iter().position(|r| r == v)
    }

    pub fn cone_rays(&self, cone: usize) -> Vec<LatticeVec> {
        self.cones[cone]
            .rays
            .iter()
            .map(|&i| self.rays[i].clone())
            .collect()
    }

    /// Coordinates of `w` in the ray basis of `cone` (possibly negative).
    pub fn coordinates_in(&self, cone: usize, w: &LatticeVec) -> Vec<Rat> {
        let (num, den) = &self.inverses[cone];
        scaled_coordinates(num, w)
            .into_iter()
            .map(|c| Rat::new(c, den.clone()))
            .collect()
    }

    /// First maximal cone (in table order) containing `w`, together with the
    /// nonnegative coordinates of `w` in its rays.
    pub fn locate(&self, w: &LatticeVec) -> Option<(usize, Vec<Rat>)> {
        assert_eq!(w.dim(), self.dim, "dimension mismatch");
        (0..self.cones.len()).find_map(|c| {
            let coords = self.coordinates_in(c, w);
            (!coords.iter().any(Signed::is_negative)).then_some((c, coords))
        })
    }

    /// Rays spanning the smallest cone of the fan that contains `w`.
    pub fn minimal_cone(&self, w: &LatticeVec) -> Option<Vec<usize>> {
        let (c, coords) = self.locate(w)?;
        Some(
            self.cones[c]
                .rays
                .iter()
                .zip(&coords)
                .filter(|(_, a)| a.is_positive())
                .map(|(&r, _)| r)
                .collect(),
        )
    }

    /// Adjacent pairs of maximal cones.
    pub fn walls(&self) -> Vec<Wall> {
        let mut by_facet: BTreeMap<Vec<usize>, Vec<(usize, usize)>> = BTreeMap::new();
        for (ci, c) in self.cones.iter().enumerate() {
            for &drop in &c.rays {
                let facet: Vec<usize> = c.rays.iter().copied().filter(|&r| r != drop).collect();
                by_facet.entry(facet).or_default().push((ci, drop));
            }
        }
        by_facet
            .into_iter()
            .filter(|(_, v)| v.len() == 2)
            .map(|(shared, v)| Wall {
                cones: (v[0].0, v[1].0),
                shared,
                opposite: (v[0].1, v[1].1),
            })
            .collect()
    }

    /// Wall pairing plus seeded point-location probes.
    fn check_complete(&self) -> Result<()> {
        let mut by_facet: BTreeMap<Vec<usize>, Vec<(usize, usize)>> = BTreeMap::new();
        for (ci, c) in self.cones.iter().enumerate() {
            for &drop in &c.rays {
                let facet: Vec<usize> = c.rays.iter().copied().filter(|&r| r != drop).collect();
                by_facet.entry(facet).or_default().push((ci, drop));
            }
        }
        for (facet, owners) in &by_facet {
            if owners.len() != 2 {
                return Err(Error::invariant(
                    InvariantKind::NotComplete,
                    format!(
                        "wall {facet:?} belongs to {} maximal cone(s): {:?}",
                        owners.len(),
                        owners.iter().map(|o| o.0).collect::<Vec<_>>()
                    ),
                ));
            }
            let basis: Vec<Vec<Rat>> = facet.iter().map(|&r| self.rays[r].to_rat()).collect();
            let nrm = normal_vector(&basis, self.dim);
            let side = |r: usize| -> Rat {
                self.rays[r]
                    .to_rat()
                    .iter()
                    .zip(&nrm)
                    .map(|(a, b)| a * b)
                    .sum()
            };
            let (a, b) = (side(owners[0].1), side(owners[1].1));
            if (a.clone() * b).is_positive() || a.is_zero() {
                return Err(Error::invariant(
                    InvariantKind::NotComplete,
                    format!(
                        "cones {} and {} overlap across wall {facet:?}",
                        owners[0].0, owners[1].0
                    ),
                ));
            }
        }

        let mut rng = ChaCha8Rng::seed_from_u64(COMPLETENESS_SEED);
        for probe in 0..COMPLETENESS_PROBES {
            let p = LatticeVec::new(
                (0..self.dim)
                    .map(|_| BigInt::from(rng.gen_range(-PROBE_RANGE..=PROBE_RANGE)))
                    .collect(),
            );
            let mut containing = 0usize;
            let mut interior = false;
            for (num, _) in &self.inverses {
                // The denominator is positive, so signs can be read off
                // the integer numerators.
                let coords = scaled_coordinates(num, &p);
                if coords.iter().any(Signed::is_negative) {
                    continue;
                }
                containing += 1;
                interior |= coords.iter().all(Signed::is_positive);
            }
            if containing == 0 {
                return Err(Error::invariant(
                    InvariantKind::NotComplete,
                    format!("probe {probe} at {p} is not covered by any cone"),
                ));
            }
            if containing > 1 && interior {
                return Err(Error::invariant(
                    InvariantKind::NotComplete,
                    format!("probe {probe} at {p} lies in overlapping cones"),
                ));
            }
        }
        Ok(())
    }

    /// Every maximal cone is generated by a lattice basis.
    pub fn is_smooth(&self) -> bool {
        (0..self.cones.len()).all(|c| {
            let m: Vec<Vec<Rat>> = self.cone_rays(c).iter().map(LatticeVec::to_rat).collect();
            determinant(&m).abs() == Rat::from_integer(1.into())
        })
    }

    /// Smooth, complete and exactly `n + 1` rays: the fan of projective space.
    pub fn is_projective_space(&self) -> bool {
        self.is_smooth() && self.rays.len() == self.dim + 1
    }

    /// Star subdivision at a primitive `w` that is not already a ray. The
    /// new ray is appended at the end of the ray table.
    pub fn star_subdivision(&self, w: &LatticeVec) -> Result<Fan> {
        if w.is_zero() {
            return Err(Error::ZeroVector);
        }
        if self.ray_index(w).is_some() {
            return Ok(self.clone());
        }
        let new_index = self.rays.len();
        let mut rays = self.rays.clone();
        rays.push(w.clone());
        let mut cones = Vec::new();
        for (ci, c) in self.cones.iter().enumerate() {
            let coords = self.coordinates_in(ci, w);
            if coords.iter().any(Signed::is_negative) {
                cones.push(c.rays.clone());
                continue;
            }
            for (k, a) in coords.iter().enumerate() {
                if a.is_positive() {
                    let mut nc = c.rays.clone();
                    nc[k] = new_index;
                    cones.push(nc);
                }
            }
        }
        Fan::build(self.dim, rays, cones, false)
    }
}

fn cone_inverse(rays: &[LatticeVec], cone: &Cone) -> Option<(Vec<Vec<BigInt>>, BigInt)> {
    let n = cone.rays.len();
    // Matrix with rays as columns; invert column by column.
    let a: Vec<Vec<Rat>> = (0..n)
        .map(|row| {
            cone.rays
                .iter()
                .map(|&r| Rat::from_integer(rays[r].coords()[row].clone()))
                .collect()
        })
        .collect();
    let mut cols = Vec::with_capacity(n);
    for k in 0..n {
        let e: Vec<Rat> = (0..n)
            .map(|i| Rat::from_integer(BigInt::from((i == k) as i64)))
            .collect();
        cols.push(solve_linear(&a, &e).ok()?);
    }
    let den = cols
        .iter()
        .flatten()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let num = (0..n)
        .map(|i| {
            cols.iter()
                .map(|c| (&c[i] * Rat::from_integer(den.clone())).to_integer())
                .collect()
        })
        .collect();
    Some((num, den))
}

fn scaled_coordinates(num: &[Vec<BigInt>], w: &LatticeVec) -> Vec<BigInt> {
    num.iter()
        .map(|row| row.iter().zip(w.coords()).map(|(a, b)| a * b).sum())
        .collect()
}
