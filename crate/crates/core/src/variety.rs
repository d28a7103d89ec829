//! A validated toric Q-Fano variety: its fan together with the cached
//! anticanonical polytope data every invariant needs.

use crate::error::Result;
use crate::fan::Fan;
use crate::lattice::{DualVec, Rat};
use crate::polytope::{anticanonical_polytope, factorial, RationalPolytope};

#[derive(Clone, Debug)]
pub struct ToricFano {
    fan: Fan,
    polytope: RationalPolytope,
    volume: Rat,
    degree: Rat,
    barycenter: DualVec,
}

impl ToricFano {
    /// Fails unless the anticanonical polytope is bounded and `-K_X` is
    /// ample. Simplicial fans are Q-factorial, hence log terminal, so this
    /// certifies the Q-Fano condition.
    pub fn new(fan: Fan) -> Result<Self> {
        let polytope = anticanonical_polytope(&fan)?;
        let volume = polytope.volume();
        let degree = &volume * factorial(fan.dim());
        let barycenter = polytope.barycenter()?;
        Ok(ToricFano {
            fan,
            polytope,
            volume,
            degree,
            barycenter,
        })
    }

    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    pub fn dim(&self) -> usize {
        self.fan.dim()
    }

    pub fn polytope(&self) -> &RationalPolytope {
        &self.polytope
    }

    /// Euclidean volume of the anticanonical polytope.
    pub fn volume(&self) -> &Rat {
        &self.volume
    }

    /// Anticanonical degree `(−K_X)^n = n!·vol(P)`.
    pub fn degree(&self) -> &Rat {
        &self.degree
    }

    pub fn barycenter(&self) -> &DualVec {
        &self.barycenter
    }

    pub fn is_smooth(&self) -> bool {
        self.fan.is_smooth()
    }
}
