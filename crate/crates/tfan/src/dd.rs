//! Double description: minimal generator form of `{x : ⟨c, x⟩ ≥ 0 for all c}`.
//!
//! This is the single conversion engine behind every cone and polyhedron
//! construction in the crate. It is exact (arbitrary-precision integers, no
//! perturbation) and handles degenerate input: redundant constraints, lower
//! dimensional cones, and non-pointed cones, whose lineality space is split
//! off and the pointed part solved in quotient coordinates.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use crate::lattice::{self, Int};

/// Minimal generator description of a cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorForm {
    /// Canonical basis of the lineality space; empty iff the cone is pointed.
    pub lineality: Vec<Vec<Int>>,
    /// Primitive extreme rays (modulo lineality), sorted lexicographically.
    pub rays: Vec<Vec<Int>>,
}

/// Computes the minimal V-form of `{x ∈ Q^dim : ⟨c, x⟩ ≥ 0 ∀ c ∈ constraints}`.
pub fn extreme_rays(dim: usize, constraints: &[Vec<Int>]) -> GeneratorForm {
    let cs: Vec<Vec<Int>> = constraints
        .iter()
        .filter(|c| !c.iter().all(Zero::is_zero))
        .cloned()
        .collect();
    if cs.is_empty() {
        let lineality = (0..dim)
            .map(|j| {
                (0..dim)
                    .map(|i| if i == j { Int::from(1) } else { Int::zero() })
                    .collect()
            })
            .collect();
        return GeneratorForm {
            lineality,
            rays: vec![],
        };
    }
    debug_assert!(cs.iter().all(|c| c.len() == dim));

    let lineality = lattice::kernel_basis(&cs, dim);
    let d = dim - lineality.len();
    if d == 0 {
        return GeneratorForm {
            lineality,
            rays: vec![],
        };
    }

    // The row space of the constraint matrix complements the lineality
    // space; in its coordinates the cone is pointed.
    let (section, projected): (Option<Vec<Vec<Int>>>, Vec<Vec<Int>>) = if lineality.is_empty() {
        (None, cs.clone())
    } else {
        let w = lattice::row_hnf(cs.clone());
        debug_assert_eq!(w.len(), d);
        let proj = cs
            .iter()
            .map(|c| w.iter().map(|wj| lattice::dot(c, wj)).collect())
            .collect();
        (Some(w), proj)
    };

    let quotient_rays = pointed_extreme_rays(d, &projected);
    let mut rays: Vec<Vec<Int>> = quotient_rays
        .into_iter()
        .map(|t| {
            let full = match &section {
                None => t,
                Some(w) => {
                    let mut x = vec![Int::zero(); dim];
                    for (tj, wj) in t.iter().zip(w) {
                        for (xi, wji) in x.iter_mut().zip(wj) {
                            *xi += tj * wji;
                        }
                    }
                    x
                }
            };
            lattice::primitive(&full).expect("extreme ray is nonzero")
        })
        .collect();
    rays.sort();
    GeneratorForm { lineality, rays }
}

/// Incremental double description for a pointed cone: the constraint matrix
/// has full column rank `d`.
fn pointed_extreme_rays(d: usize, cs: &[Vec<Int>]) -> Vec<Vec<Int>> {
    // Seed with d linearly independent constraints; their intersection is a
    // simplicial cone whose rays are the (sign-fixed) adjugate columns.
    let mut seed_rows: Vec<Vec<Int>> = Vec::with_capacity(d);
    let mut seed_idx: Vec<usize> = Vec::with_capacity(d);
    for (i, c) in cs.iter().enumerate() {
        if seed_rows.len() == d {
            break;
        }
        seed_rows.push(c.clone());
        if lattice::rank_of(&seed_rows) == seed_rows.len() {
            seed_idx.push(i);
        } else {
            seed_rows.pop();
        }
    }
    assert_eq!(
        seed_idx.len(),
        d,
        "constraint matrix must have full rank in quotient coordinates"
    );

    let m = lattice::IntMatrix::from_rows(seed_rows);
    let det = m.det();
    let adj = m.adjugate();
    let negate = det.is_negative();
    let mut rays: Vec<Vec<Int>> = (0..d)
        .map(|j| {
            let col: Vec<Int> = (0..d)
                .map(|i| {
                    let e = adj.get(i, j).clone();
                    if negate {
                        -e
                    } else {
                        e
                    }
                })
                .collect();
            lattice::primitive(&col).expect("adjugate column of invertible matrix is nonzero")
        })
        .collect();

    // Remaining constraints in input order.
    let order: Vec<usize> = seed_idx
        .iter()
        .copied()
        .chain((0..cs.len()).filter(|i| !seed_idx.contains(i)))
        .collect();

    for step in d..order.len() {
        let c = &cs[order[step]];
        let values: Vec<Int> = rays.iter().map(|r| lattice::dot(c, r)).collect();
        if values.iter().all(|s| !s.is_negative()) {
            continue;
        }
        let mut kept: Vec<Vec<Int>> = Vec::new();
        let mut positive: Vec<(usize, &Int)> = Vec::new();
        let mut negative: Vec<(usize, &Int)> = Vec::new();
        for (i, s) in values.iter().enumerate() {
            if s.is_positive() {
                positive.push((i, s));
                kept.push(rays[i].clone());
            } else if s.is_zero() {
                kept.push(rays[i].clone());
            } else {
                negative.push((i, s));
            }
        }
        let seen: Vec<&Vec<Int>> = order[..=step].iter().map(|&i| &cs[i]).collect();
        let mut fresh: BTreeSet<Vec<Int>> = BTreeSet::new();
        for &(pi, sp) in &positive {
            for &(ni, sn) in &negative {
                let combo: Vec<Int> = rays[pi]
                    .iter()
                    .zip(&rays[ni])
                    .map(|(p, n)| sp * n - sn * p)
                    .collect();
                if combo.iter().all(Zero::is_zero) {
                    continue;
                }
                let candidate = lattice::primitive(&combo).expect("nonzero combination");
                if fresh.contains(&candidate) {
                    continue;
                }
                let tight: Vec<Vec<Int>> = seen
                    .iter()
                    .filter(|cc| lattice::dot(cc, &candidate).is_zero())
                    .map(|cc| (*cc).clone())
                    .collect();
                if lattice::rank_of(&tight) == d - 1 {
                    fresh.insert(candidate);
                }
            }
        }
        kept.extend(fresh);
        rays = kept;
    }

    rays
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(coords: &[i64]) -> Vec<Int> {
        coords.iter().map(|&c| Int::from(c)).collect()
    }

    #[test]
    fn quadrant() {
        let g = extreme_rays(2, &[iv(&[1, 0]), iv(&[0, 1])]);
        assert!(g.lineality.is_empty());
        assert_eq!(g.rays, vec![iv(&[0, 1]), iv(&[1, 0])]);
    }

    #[test]
    fn halfplane_has_lineality() {
        let g = extreme_rays(2, &[iv(&[1, 0])]);
        assert_eq!(g.lineality, vec![iv(&[0, 1])]);
        assert_eq!(g.rays, vec![iv(&[1, 0])]);
    }

    #[test]
    fn opposite_constraints_give_hyperplane() {
        let g = extreme_rays(2, &[iv(&[1, 0]), iv(&[-1, 0])]);
        assert_eq!(g.lineality, vec![iv(&[0, 1])]);
        assert!(g.rays.is_empty());
    }

    #[test]
    fn no_constraints_is_everything() {
        let g = extreme_rays(2, &[]);
        assert_eq!(g.lineality, vec![iv(&[1, 0]), iv(&[0, 1])]);
        assert!(g.rays.is_empty());
    }

    #[test]
    fn redundant_constraints_are_harmless() {
        let g = extreme_rays(2, &[iv(&[1, 0]), iv(&[0, 1]), iv(&[1, 1]), iv(&[2, 0])]);
        assert_eq!(g.rays, vec![iv(&[0, 1]), iv(&[1, 0])]);
    }

    #[test]
    fn infeasible_strictly_reduces_to_origin() {
        // x >= 0, -x >= 0, y >= 0, -y >= 0 in the plane: just the origin.
        let g = extreme_rays(
            2,
            &[iv(&[1, 0]), iv(&[-1, 0]), iv(&[0, 1]), iv(&[0, -1])],
        );
        assert!(g.lineality.is_empty());
        assert!(g.rays.is_empty());
    }

    #[test]
    fn octant_cross_section() {
        // {x+y+z >= 0} ∩ octant has the octant's rays.
        let g = extreme_rays(
            3,
            &[iv(&[1, 0, 0]), iv(&[0, 1, 0]), iv(&[0, 0, 1]), iv(&[1, 1, 1])],
        );
        assert_eq!(
            g.rays,
            vec![iv(&[0, 0, 1]), iv(&[0, 1, 0]), iv(&[1, 0, 0])]
        );
    }

    #[test]
    fn square_pyramid_cone() {
        // Cone over the square [-1,1]^2 at height one:
        // z >= x, z >= -x, z >= y, z >= -y.
        let g = extreme_rays(
            3,
            &[
                iv(&[-1, 0, 1]),
                iv(&[1, 0, 1]),
                iv(&[0, -1, 1]),
                iv(&[0, 1, 1]),
            ],
        );
        let expected: Vec<Vec<Int>> = vec![
            iv(&[-1, -1, 1]),
            iv(&[-1, 1, 1]),
            iv(&[1, -1, 1]),
            iv(&[1, 1, 1]),
        ];
        assert_eq!(g.rays, expected);
    }
}
