//! Complete toric fans, the downgrade to a divisorial fan along the last
//! coordinate, and random fan generators for oracle testing.
//!
//! Downgrading a complete fan in N⊕Z yields a divisorial fan on P¹ over N:
//! each maximal cone δ contributes the member with coefficients
//! D_0 = δ ∩ {height 1}, D_∞ = δ ∩ {height −1} and tail δ ∩ {height 0}.
//! The resulting fan describes the same variety with the subtorus action,
//! which makes classical toric smoothness an oracle for the fan-level
//! smoothness test.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};
use rand::Rng;
use thiserror::Error;

use crate::cone::Cone;
use crate::divfan::{DivisorialFan, FanError};
use crate::lattice::{Int, LatticeVector};
use crate::pdivisor::{Coefficient, DivisorError, PDivisor, PointOnP1};
use crate::polyhedron::{Constraint, Polyhedron};
use crate::report::Finding;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ToricError {
    #[error("fan rank must be at least 2 to downgrade")]
    RankTooSmall,
    #[error("fan is not complete")]
    NotComplete,
    #[error("cone {0} is not pointed")]
    NotPointed(String),
    #[error(transparent)]
    Divisor(#[from] DivisorError),
    #[error(transparent)]
    Fan(#[from] FanError),
}

/// A fan given by its maximal cones.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ToricFan {
    rank: usize,
    maximal_cones: Vec<Cone>,
}

impl ToricFan {
    pub fn new(rank: usize, maximal_cones: Vec<Cone>) -> Result<ToricFan, ToricError> {
        for c in &maximal_cones {
            if !c.is_pointed() {
                return Err(ToricError::NotPointed(c.to_string()));
            }
        }
        Ok(ToricFan {
            rank,
            maximal_cones,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn maximal_cones(&self) -> &[Cone] {
        &self.maximal_cones
    }

    /// Completeness diagnostics: full-dimensional maximal cones meeting in
    /// common faces, with every facet shared by exactly two of them.
    pub fn completeness_findings(&self) -> Vec<Finding> {
        let mut findings = Vec::new();
        if self.maximal_cones.is_empty() {
            findings.push(Finding::new("completeness", "fan", "fan has no cones"));
            return findings;
        }
        for (i, c) in self.maximal_cones.iter().enumerate() {
            if c.dim() != self.rank {
                findings.push(Finding::new(
                    "completeness",
                    format!("cone {i}"),
                    "maximal cone is not full-dimensional",
                ));
            }
        }
        for (i, a) in self.maximal_cones.iter().enumerate() {
            for (j, b) in self.maximal_cones.iter().enumerate().skip(i + 1) {
                let common = a.intersect(b).expect("cones share one rank");
                if !common.is_face_of(a) || !common.is_face_of(b) {
                    findings.push(Finding::new(
                        "completeness",
                        format!("cones {i},{j}"),
                        "intersection is not a common face",
                    ));
                }
            }
        }
        if !findings.is_empty() {
            return findings;
        }
        let mut facets = BTreeSet::new();
        for c in &self.maximal_cones {
            facets.extend(c.facets());
        }
        for f in facets {
            let count = self
                .maximal_cones
                .iter()
                .filter(|c| c.contains_cone(&f))
                .count();
            if count != 2 {
                findings.push(Finding::new(
                    "completeness",
                    format!("facet {f}"),
                    format!("lies in {count} maximal cones, expected 2"),
                ));
            }
        }
        findings
    }

    pub fn is_complete(&self) -> bool {
        self.completeness_findings().is_empty()
    }

    /// Classical toric smoothness: every maximal cone regular.
    pub fn is_smooth(&self) -> bool {
        self.maximal_cones
            .iter()
            .all(|c| c.is_regular() == Ok(true))
    }

    /// The divisorial fan of the downgrade along the last coordinate.
    pub fn downgrade(&self) -> Result<DivisorialFan, ToricError> {
        if self.rank < 2 {
            return Err(ToricError::RankTooSmall);
        }
        if !self.is_complete() {
            return Err(ToricError::NotComplete);
        }
        let n = self.rank - 1;
        let mut members = Vec::with_capacity(self.maximal_cones.len());
        for cone in &self.maximal_cones {
            let tail = height_slice_cone(cone, n);
            let mut support = std::collections::BTreeMap::new();
            support.insert(PointOnP1::Zero, slice_coefficient(cone, n, 1)?);
            support.insert(PointOnP1::Infinity, slice_coefficient(cone, n, -1)?);
            members.push(PDivisor::new(tail, support)?);
        }
        Ok(DivisorialFan::new(n, members)?)
    }

    /// Same fan with the chosen coordinate moved last, so that `downgrade`
    /// projects along it.
    pub fn with_height_coordinate(&self, coord: usize) -> ToricFan {
        assert!(coord < self.rank);
        if coord == self.rank - 1 {
            return self.clone();
        }
        let permute = |v: &LatticeVector| {
            let mut coords: Vec<Int> = Vec::with_capacity(v.rank());
            for i in 0..v.rank() {
                if i != coord {
                    coords.push(v[i].clone());
                }
            }
            coords.push(v[coord].clone());
            LatticeVector::new(coords)
        };
        let cones = self
            .maximal_cones
            .iter()
            .map(|c| {
                let rays: Vec<LatticeVector> = c.rays().iter().map(&permute).collect();
                Cone::from_rays(self.rank, &rays)
            })
            .collect();
        ToricFan {
            rank: self.rank,
            maximal_cones: cones,
        }
    }
}

/// δ ∩ {last coordinate = 0} as a cone in the quotient coordinates.
fn height_slice_cone(cone: &Cone, n: usize) -> Cone {
    let eqs: Vec<LatticeVector> = cone
        .span_eqs()
        .iter()
        .map(|a| LatticeVector::new(a.coords()[..n].to_vec()))
        .collect();
    let ineqs: Vec<LatticeVector> = cone
        .facet_normals()
        .iter()
        .map(|a| LatticeVector::new(a.coords()[..n].to_vec()))
        .collect();
    Cone::from_halfspaces(n, &eqs, &ineqs)
}

/// δ ∩ {last coordinate = h} as a divisor coefficient.
fn slice_coefficient(cone: &Cone, n: usize, h: i64) -> Result<Coefficient, ToricError> {
    let mut eqs: Vec<Constraint> = Vec::new();
    let mut ineqs: Vec<Constraint> = Vec::new();
    for a in cone.span_eqs() {
        let offset = -Int::from(h) * &a.coords()[n];
        eqs.push((LatticeVector::new(a.coords()[..n].to_vec()), offset));
    }
    for a in cone.facet_normals() {
        let offset = -Int::from(h) * &a.coords()[n];
        ineqs.push((LatticeVector::new(a.coords()[..n].to_vec()), offset));
    }
    match Polyhedron::from_constraints(n, &eqs, &ineqs) {
        Ok(Some(p)) => Ok(Coefficient::Poly(p)),
        Ok(None) => Ok(Coefficient::Empty),
        Err(e) => Err(ToricError::Divisor(DivisorError::Geom(e))),
    }
}

/// The fan of the projective plane: rays (1,0), (0,1), (−1,−1).
pub fn projective_plane_fan() -> ToricFan {
    fan_from_ray_cycle(&[&[1, 0], &[0, 1], &[-1, -1]])
}

/// The product fan of two projective lines: the four quadrants.
pub fn p1_times_p1_fan() -> ToricFan {
    fan_from_ray_cycle(&[&[1, 0], &[0, 1], &[-1, 0], &[0, -1]])
}

/// The a-th Hirzebruch surface: rays (1,0), (0,1), (−1,a), (0,−1).
pub fn hirzebruch_fan(a: i64) -> ToricFan {
    fan_from_ray_cycle(&[&[1, 0], &[0, 1], &[-1, a], &[0, -1]])
}

/// A complete rank-2 fan from rays listed in counterclockwise order.
pub fn fan_from_ray_cycle(rays: &[&[i64]]) -> ToricFan {
    let rays: Vec<LatticeVector> = rays.iter().map(|r| LatticeVector::from_i64(r)).collect();
    let cones = (0..rays.len())
        .map(|i| {
            Cone::from_rays(
                2,
                &[rays[i].clone(), rays[(i + 1) % rays.len()].clone()],
            )
        })
        .collect();
    ToricFan::new(2, cones).expect("consecutive rays span pointed cones")
}

/// The fan of projective 3-space.
pub fn projective_3space_fan() -> ToricFan {
    let rays = [
        LatticeVector::from_i64(&[1, 0, 0]),
        LatticeVector::from_i64(&[0, 1, 0]),
        LatticeVector::from_i64(&[0, 0, 1]),
        LatticeVector::from_i64(&[-1, -1, -1]),
    ];
    let cones = (0..4)
        .map(|skip| {
            let rs: Vec<LatticeVector> = (0..4).filter(|&i| i != skip).map(|i| rays[i].clone()).collect();
            Cone::from_rays(3, &rs)
        })
        .collect();
    ToricFan::new(3, cones).expect("simplex cones are pointed")
}

/// The fan of (P¹)³: the eight octants.
pub fn p1_cubed_fan() -> ToricFan {
    let mut cones = Vec::new();
    for sx in [1i64, -1] {
        for sy in [1i64, -1] {
            for sz in [1i64, -1] {
                cones.push(Cone::from_rays(
                    3,
                    &[
                        LatticeVector::from_i64(&[sx, 0, 0]),
                        LatticeVector::from_i64(&[0, sy, 0]),
                        LatticeVector::from_i64(&[0, 0, sz]),
                    ],
                ));
            }
        }
    }
    ToricFan::new(3, cones).expect("octants are pointed")
}

// Counterclockwise angular order without floating point: upper half
// (y > 0, or y = 0 with x > 0) precedes lower half; within a half the
// cross product decides.
fn angle_order(a: &LatticeVector, b: &LatticeVector) -> std::cmp::Ordering {
    use std::cmp::Ordering;
    let half = |v: &LatticeVector| {
        if v[1].is_positive() || (v[1].is_zero() && v[0].is_positive()) {
            0u8
        } else {
            1u8
        }
    };
    match half(a).cmp(&half(b)) {
        Ordering::Equal => {
            let cross = &a[0] * &b[1] - &a[1] * &b[0];
            if cross.is_positive() {
                Ordering::Less
            } else if cross.is_negative() {
                Ordering::Greater
            } else {
                Ordering::Equal
            }
        }
        other => other,
    }
}

/// A random complete rank-2 fan: the four axis rays plus random primitive
/// directions, angularly sorted; consecutive pairs become maximal cones.
pub fn random_complete_fan_rank2(rng: &mut impl Rng) -> ToricFan {
    let mut rays: BTreeSet<LatticeVector> = [
        LatticeVector::from_i64(&[1, 0]),
        LatticeVector::from_i64(&[0, 1]),
        LatticeVector::from_i64(&[-1, 0]),
        LatticeVector::from_i64(&[0, -1]),
    ]
    .into_iter()
    .collect();
    let extra = rng.gen_range(0..6);
    for _ in 0..extra {
        let x = rng.gen_range(-5i64..=5);
        let y = rng.gen_range(-5i64..=5);
        let v = LatticeVector::from_i64(&[x, y]);
        if let Ok(p) = v.primitive() {
            rays.insert(p);
        }
    }
    let mut sorted: Vec<LatticeVector> = rays.into_iter().collect();
    sorted.sort_by(angle_order);
    let cones = (0..sorted.len())
        .map(|i| {
            Cone::from_rays(
                2,
                &[sorted[i].clone(), sorted[(i + 1) % sorted.len()].clone()],
            )
        })
        .collect();
    ToricFan::new(2, cones).expect("axis rays keep every gap below a half turn")
}

/// A random smooth complete rank-2 fan: a chain of adjacent-ray insertions
/// (toric blowups) starting from the plane or the quadric seed.
pub fn random_smooth_fan_rank2(rng: &mut impl Rng) -> ToricFan {
    let mut rays: Vec<LatticeVector> = if rng.gen_bool(0.5) {
        vec![
            LatticeVector::from_i64(&[1, 0]),
            LatticeVector::from_i64(&[0, 1]),
            LatticeVector::from_i64(&[-1, -1]),
        ]
    } else {
        vec![
            LatticeVector::from_i64(&[1, 0]),
            LatticeVector::from_i64(&[0, 1]),
            LatticeVector::from_i64(&[-1, 0]),
            LatticeVector::from_i64(&[0, -1]),
        ]
    };
    let blowups = rng.gen_range(0..6);
    for _ in 0..blowups {
        let i = rng.gen_range(0..rays.len());
        let j = (i + 1) % rays.len();
        let sum = rays[i].add(&rays[j]);
        rays.insert(i + 1, sum);
    }
    let cones = (0..rays.len())
        .map(|i| {
            Cone::from_rays(2, &[rays[i].clone(), rays[(i + 1) % rays.len()].clone()])
        })
        .collect();
    ToricFan::new(2, cones).expect("blowup chains stay pointed")
}

fn simplicial_rank3_cones(fan: &ToricFan) -> Vec<[LatticeVector; 3]> {
    fan.maximal_cones()
        .iter()
        .map(|c| {
            let r = c.rays();
            assert_eq!(r.len(), 3, "rank-3 seed fans are simplicial");
            [r[0].clone(), r[1].clone(), r[2].clone()]
        })
        .collect()
}

fn fan_from_triples(triples: Vec<[LatticeVector; 3]>) -> ToricFan {
    let cones = triples
        .iter()
        .map(|t| Cone::from_rays(3, t))
        .collect();
    ToricFan::new(3, cones).expect("stellar subdivisions stay pointed")
}

/// A random complete rank-3 fan: stellar subdivisions of a seed fan at
/// random interior lattice directions. Usually singular.
pub fn random_complete_fan_rank3(rng: &mut impl Rng) -> ToricFan {
    let seed = if rng.gen_bool(0.5) {
        projective_3space_fan()
    } else {
        p1_cubed_fan()
    };
    let mut triples = simplicial_rank3_cones(&seed);
    let steps = rng.gen_range(0..4);
    for _ in 0..steps {
        let idx = rng.gen_range(0..triples.len());
        let [a, b, c] = triples.swap_remove(idx);
        let ca = Int::from(rng.gen_range(1i64..=3));
        let cb = Int::from(rng.gen_range(1i64..=3));
        let cc = Int::from(rng.gen_range(1i64..=3));
        let w = a
            .scale(&ca)
            .add(&b.scale(&cb))
            .add(&c.scale(&cc))
            .primitive()
            .expect("positive combination is nonzero");
        triples.push([w.clone(), b.clone(), c.clone()]);
        triples.push([a.clone(), w.clone(), c]);
        triples.push([a, b, w]);
    }
    fan_from_triples(triples)
}

/// A random smooth complete rank-3 fan: chains of vertex and edge blowups
/// (stellar subdivisions at ray sums) of a smooth seed.
pub fn random_smooth_fan_rank3(rng: &mut impl Rng) -> ToricFan {
    let seed = if rng.gen_bool(0.5) {
        projective_3space_fan()
    } else {
        p1_cubed_fan()
    };
    let mut triples = simplicial_rank3_cones(&seed);
    let steps = rng.gen_range(0..4);
    for _ in 0..steps {
        if rng.gen_bool(0.5) {
            // Blowup of a fixed point: subdivide one cone at the ray sum.
            let idx = rng.gen_range(0..triples.len());
            let [a, b, c] = triples.swap_remove(idx);
            let w = a.add(&b).add(&c);
            triples.push([w.clone(), b.clone(), c.clone()]);
            triples.push([a.clone(), w.clone(), c]);
            triples.push([a, b, w]);
        } else {
            // Blowup of an invariant curve: subdivide every cone containing
            // the chosen edge.
            let idx = rng.gen_range(0..triples.len());
            let e = rng.gen_range(0..3);
            let (ri, rj) = {
                let t = &triples[idx];
                (t[e].clone(), t[(e + 1) % 3].clone())
            };
            let w = ri.add(&rj);
            let mut next = Vec::with_capacity(triples.len() + 2);
            for t in triples {
                let has_i = t.contains(&ri);
                let has_j = t.contains(&rj);
                if has_i && has_j {
                    let rest = t
                        .iter()
                        .find(|r| **r != ri && **r != rj)
                        .expect("simplicial cone has a third ray")
                        .clone();
                    next.push([w.clone(), rj.clone(), rest.clone()]);
                    next.push([ri.clone(), w.clone(), rest]);
                } else {
                    next.push(t);
                }
            }
            triples = next;
        }
    }
    fan_from_triples(triples)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use crate::lattice::RationalVector;

    fn lv(coords: &[i64]) -> LatticeVector {
        LatticeVector::from_i64(coords)
    }

    fn qv(coords: &[i64]) -> RationalVector {
        RationalVector::from_i64(coords)
    }

    #[test]
    fn hirzebruch_1_downgrade_members() {
        let fan = hirzebruch_fan(1);
        assert!(fan.is_complete());
        assert!(fan.is_smooth());
        let div = fan.downgrade().unwrap();
        assert_eq!(div.members().len(), 4);
        // The member of cone{(-1,1),(0,-1)} is (-∞,-1]·0 + (-∞,0]·∞.
        let expected_d0 =
            Polyhedron::from_generators(1, &[qv(&[-1])], &[lv(&[-1])]).unwrap();
        let expected_dinf =
            Polyhedron::from_generators(1, &[qv(&[0])], &[lv(&[-1])]).unwrap();
        let member = &div.members()[2];
        assert_eq!(
            member.coefficient(&PointOnP1::Zero),
            Coefficient::Poly(expected_d0.clone())
        );
        assert_eq!(
            member.coefficient(&PointOnP1::Infinity),
            Coefficient::Poly(expected_dinf)
        );
        assert!(member.is_proper());
        assert_eq!(member.degree(), Coefficient::Poly(expected_d0));
        // It matches the hand-built divisorial fan.
        assert_eq!(div, crate::divfan::tests::hirzebruch_1_fan());
    }

    #[test]
    fn projective_plane_downgrade_slices() {
        let div = projective_plane_fan().downgrade().unwrap();
        assert_eq!(div.members().len(), 3);
        let slices = div.slices();
        let s0 = &slices.named[&PointOnP1::Zero];
        let down = Polyhedron::from_generators(1, &[qv(&[0])], &[lv(&[-1])]).unwrap();
        let up = Polyhedron::from_generators(1, &[qv(&[0])], &[lv(&[1])]).unwrap();
        assert_eq!(s0.maximal_cells, vec![down.clone(), up.clone()]);
        let sinf = &slices.named[&PointOnP1::Infinity];
        let down1 = Polyhedron::from_generators(1, &[qv(&[-1])], &[lv(&[-1])]).unwrap();
        let up1 = Polyhedron::from_generators(1, &[qv(&[-1])], &[lv(&[1])]).unwrap();
        assert_eq!(sinf.maximal_cells, vec![down1, up1]);
        let tf = div.tail_fan().unwrap();
        assert_eq!(
            tf.marked.iter().cloned().collect::<Vec<_>>(),
            vec![Cone::from_rays(1, &[lv(&[-1])])]
        );
    }

    #[test]
    fn p1_times_p1_downgrade() {
        let div = p1_times_p1_fan().downgrade().unwrap();
        assert_eq!(div.members().len(), 4);
        let slices = div.slices();
        let down = Polyhedron::from_generators(1, &[qv(&[0])], &[lv(&[-1])]).unwrap();
        let up = Polyhedron::from_generators(1, &[qv(&[0])], &[lv(&[1])]).unwrap();
        assert_eq!(
            slices.named[&PointOnP1::Zero].maximal_cells,
            vec![down.clone(), up.clone()]
        );
        assert_eq!(
            slices.named[&PointOnP1::Infinity].maximal_cells,
            vec![down, up]
        );
        // No marked cones: every maximal cone misses one height.
        let tf = div.tail_fan().unwrap();
        assert!(tf.marked.is_empty());
    }

    #[test]
    fn downgrades_pass_compatibility_rules() {
        for fan in [
            projective_plane_fan(),
            p1_times_p1_fan(),
            hirzebruch_fan(1),
            hirzebruch_fan(2),
            hirzebruch_fan(3),
        ] {
            let div = fan.downgrade().unwrap();
            assert!(div.check_properness().is_empty());
            assert!(div.check_slice_rule().is_empty());
            assert!(div.check_degree_rule().is_empty());
        }
    }

    #[test]
    fn hirzebruch_2_has_half_integral_slice_cell() {
        // Downgrading the second Hirzebruch surface slices the cone
        // cone{(0,1),(-1,2)} at height one into [-1/2, 0].
        let div = hirzebruch_fan(2).downgrade().unwrap();
        let slices = div.slices();
        let s0 = &slices.named[&PointOnP1::Zero];
        let has_half_vertex = s0.cells.iter().any(|c| {
            c.vertices()
                .iter()
                .any(|v| v.coords().iter().any(|x| !x.is_integer()))
        });
        assert!(has_half_vertex);
        // Still a smooth surface.
        assert!(div.check_smoothness().is_empty());
    }

    #[test]
    fn singular_weighted_fan_fails_smoothness() {
        let fan = fan_from_ray_cycle(&[&[1, 0], &[0, 1], &[-1, -2]]);
        assert!(fan.is_complete());
        assert!(!fan.is_smooth());
        let div = fan.downgrade().unwrap();
        let findings = div.check_smoothness();
        assert!(!findings.is_empty());
    }

    #[test]
    fn incomplete_fan_is_rejected() {
        let quadrant = Cone::from_rays(2, &[lv(&[1, 0]), lv(&[0, 1])]);
        let fan = ToricFan::new(2, vec![quadrant]).unwrap();
        assert!(!fan.is_complete());
        assert_eq!(fan.downgrade(), Err(ToricError::NotComplete));
    }

    #[test]
    fn oracle_agreement_on_seeded_random_fans() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10 {
            let fan = random_complete_fan_rank2(&mut rng);
            assert!(fan.is_complete());
            let div = fan.downgrade().unwrap();
            let smooth_fan = fan.is_smooth();
            let smooth_div = div.check_smoothness().is_empty();
            assert_eq!(smooth_fan, smooth_div);
        }
        for _ in 0..3 {
            let fan = random_smooth_fan_rank3(&mut rng);
            assert!(fan.is_complete());
            assert!(fan.is_smooth());
            assert!(fan.downgrade().unwrap().check_smoothness().is_empty());
        }
    }

    #[test]
    fn markings_match_direct_height_inspection() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for i in 0..12 {
            let fan = if i % 2 == 0 {
                random_complete_fan_rank2(&mut rng)
            } else {
                random_complete_fan_rank3(&mut rng)
            };
            let div = fan.downgrade().unwrap();
            let marked = div.tail_fan().unwrap().marked;
            // A maximal cone meets both open height halves iff it has rays
            // with positive and with negative last coordinate.
            let h = fan.rank() - 1;
            let expected: std::collections::BTreeSet<Cone> = fan
                .maximal_cones()
                .iter()
                .filter(|c| {
                    c.rays().iter().any(|r| r[h].is_positive())
                        && c.rays().iter().any(|r| r[h].is_negative())
                })
                .map(|c| height_slice_cone(c, h))
                .collect();
            assert_eq!(marked, expected);
        }
    }

    #[test]
    fn height_coordinate_permutation() {
        let fan = projective_plane_fan().with_height_coordinate(0);
        assert!(fan.is_complete());
        let div = fan.downgrade().unwrap();
        assert_eq!(div.members().len(), 3);
        assert!(div.check_slice_rule().is_empty());
    }
}
