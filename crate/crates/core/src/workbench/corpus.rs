//! Built-in fans.

use crate::polytope::Subsets;
use crate::workbench::spec::FanSpec;

/// Projective space `P^n`: rays `e_1..e_n, −Σ e_i`, all `n`-subsets as cones.
pub fn projective_space(n: usize) -> FanSpec {
    let mut rays: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| (i == j) as i64).collect())
        .collect();
    rays.push(vec![-1; n]);
    FanSpec::new(format!("P{n}"), n, rays, Subsets::new(n + 1, n).collect())
}

/// A complete two-dimensional fan from rays listed counterclockwise.
fn polygon_fan(name: &str, rays: &[[i64; 2]]) -> FanSpec {
    let k = rays.len();
    FanSpec::new(
        name,
        2,
        rays.iter().map(|r| r.to_vec()).collect(),
        (0..k).map(|i| vec![i, (i + 1) % k]).collect(),
    )
}

pub fn p1xp1() -> FanSpec {
    polygon_fan("P1xP1", &[[1, 0], [0, 1], [-1, 0], [0, -1]])
}

/// Blowup of `P^2` at one torus-fixed point (`F_1`).
pub fn bl1p2() -> FanSpec {
    polygon_fan("Bl1P2", &[[1, 0], [1, 1], [0, 1], [-1, -1]])
}

pub fn bl2p2() -> FanSpec {
    polygon_fan("Bl2P2", &[[1, 0], [1, 1], [0, 1], [-1, 0], [-1, -1]])
}

pub fn bl3p2() -> FanSpec {
    polygon_fan("Bl3P2", &[[1, 0], [1, 1], [0, 1], [-1, 0], [-1, -1], [0, -1]])
}

/// Weighted projective plane `P(1,2,3)`.
pub fn p123() -> FanSpec {
    FanSpec::new(
        "P(1,2,3)",
        2,
        vec![vec![1, 0], vec![0, 1], vec![-2, -3]],
        vec![vec![0, 1], vec![1, 2], vec![2, 0]],
    )
}

/// The toric surface obtained from `P(1,2,3)` by extracting the divisor
/// of `(−1, 0)`.
pub fn p123_extraction() -> FanSpec {
    polygon_fan("P(1,2,3)+(-1,0)", &[[1, 0], [0, 1], [-1, 0], [-2, -3]])
}

/// Weighted projective plane `P(1,1,2)`.
pub fn p112() -> FanSpec {
    FanSpec::new(
        "P(1,1,2)",
        2,
        vec![vec![1, 1], vec![-1, 1], vec![0, -1]],
        vec![vec![0, 1], vec![1, 2], vec![2, 0]],
    )
}

pub fn p1xp1xp1() -> FanSpec {
    let mut rays = Vec::new();
    for i in 0..3 {
        for s in [1, -1] {
            let mut r = vec![0; 3];
            r[i] = s;
            rays.push(r);
        }
    }
    // Ray 2i is +e_i, ray 2i+1 is −e_i.
    let mut cones = Vec::new();
    for mask in 0..8usize {
        cones.push((0..3).map(|i| 2 * i + ((mask >> i) & 1)).collect());
    }
    FanSpec::new("P1xP1xP1", 3, rays, cones)
}

pub fn p2xp1() -> FanSpec {
    let rays = vec![vec![1, 0, 0], vec![0, 1, 0], vec![-1, -1, 0], vec![0, 0, 1], vec![0, 0, -1]];
    let mut cones = Vec::new();
    for pair in [[0, 1], [1, 2], [2, 0]] {
        for z in [3, 4] {
            cones.push(vec![pair[0], pair[1], z]);
        }
    }
    FanSpec::new("P2xP1", 3, rays, cones)
}

/// The five smooth toric del Pezzo surfaces.
pub fn smooth_del_pezzo() -> Vec<FanSpec> {
    vec![projective_space(2), p1xp1(), bl1p2(), bl2p2(), bl3p2()]
}

/// The full built-in corpus, in a fixed order.
pub fn corpus() -> Vec<FanSpec> {
    let mut out = vec![projective_space(1)];
    out.extend(smooth_del_pezzo());
    out.extend([p123(), p123_extraction(), p112()]);
    out.extend([projective_space(3), p1xp1xp1(), p2xp1()]);
    out.extend([projective_space(4), projective_space(5)]);
    out
}

pub fn by_name(name: &str) -> Option<FanSpec> {
    corpus().into_iter().find(|f| f.name == name)
}
