//! Rational polyhedra in N_Q as vertices plus tail rays, with cached,
//! irredundant inequality descriptions.
//!
//! The primary representation is the V-side Minkowski decomposition
//! P = conv(vertices) + cone(tail rays); the H-side is derived at
//! construction through the homogenization cone, so every stored value is
//! canonical and equality is plain component comparison. The empty set is
//! never a `Polyhedron`; operations that can produce it return `Option`.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::cone::Cone;
use crate::dd;
use crate::error::GeomError;
use crate::lattice::{self, Int, LatticeVector, Rational, RationalVector};

/// Inequality `⟨normal, x⟩ ≥ offset` (or equality, depending on context).
pub type Constraint = (LatticeVector, Int);

#[derive(Clone, Debug)]
pub struct Polyhedron {
    rank: usize,
    vertices: Vec<RationalVector>,
    rays: Vec<LatticeVector>,
    eqs: Vec<Constraint>,
    ineqs: Vec<Constraint>,
    dim: usize,
}

/// A face of a polyhedron together with a functional selecting it.
#[derive(Clone, Debug)]
pub struct Face {
    pub selecting_normal: LatticeVector,
    pub polyhedron: Polyhedron,
}

fn scale_point_to_generator(p: &RationalVector) -> Vec<Int> {
    let mut lcm = Int::one();
    for c in p.coords() {
        lcm = lcm.lcm(c.denom());
    }
    let mut gen: Vec<Int> = p
        .coords()
        .iter()
        .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    gen.push(lcm);
    gen
}

fn constraint_rows(eqs: &[Constraint], ineqs: &[Constraint], rank: usize) -> Vec<Vec<Int>> {
    let mut rows = Vec::new();
    for (a, b) in ineqs {
        let mut row = a.coords().to_vec();
        row.push(-b.clone());
        rows.push(row);
    }
    for (a, b) in eqs {
        let mut row = a.coords().to_vec();
        row.push(-b.clone());
        rows.push(row.iter().map(|e| -e).collect());
        rows.push(row);
    }
    // t ≥ 0 for the homogenization coordinate.
    let mut t_row = vec![Int::zero(); rank];
    t_row.push(Int::one());
    rows.push(t_row);
    rows
}

/// Vertex/ray enumeration for `{x : eqs, ineqs}`; `None` means empty.
fn hrep_to_vrep(
    rank: usize,
    eqs: &[Constraint],
    ineqs: &[Constraint],
) -> Result<Option<(Vec<RationalVector>, Vec<LatticeVector>)>, GeomError> {
    let rows = constraint_rows(eqs, ineqs, rank);
    let form = dd::extreme_rays(rank + 1, &rows);
    let mut vertices = Vec::new();
    let mut rays = Vec::new();
    for r in &form.rays {
        let t = &r[rank];
        debug_assert!(!t.is_negative());
        if t.is_zero() {
            rays.push(LatticeVector::new(r[..rank].to_vec()));
        } else {
            let coords = r[..rank]
                .iter()
                .map(|c| Rational::new(c.clone(), t.clone()))
                .collect();
            vertices.push(RationalVector::new(coords));
        }
    }
    if vertices.is_empty() {
        return Ok(None);
    }
    if !form.lineality.is_empty() {
        return Err(GeomError::ContainsLine);
    }
    vertices.sort();
    rays.sort();
    Ok(Some((vertices, rays)))
}

/// Irredundant H-description of conv(points) + cone(rays).
fn vrep_to_hrep(
    rank: usize,
    points: &[RationalVector],
    rays: &[LatticeVector],
) -> (Vec<Constraint>, Vec<Constraint>) {
    let mut gens: Vec<Vec<Int>> = Vec::new();
    for p in points {
        gens.push(
            lattice::primitive(&scale_point_to_generator(p)).expect("point generator is nonzero"),
        );
    }
    for r in rays {
        if r.is_zero() {
            continue;
        }
        let mut g = r.coords().to_vec();
        g.push(Int::zero());
        gens.push(g);
    }
    let dual = dd::extreme_rays(rank + 1, &gens);
    let mut eqs = Vec::new();
    for l in &dual.lineality {
        let a = LatticeVector::new(l[..rank].to_vec());
        debug_assert!(!a.is_zero(), "vertical equality is impossible with points");
        eqs.push((a, -l[rank].clone()));
    }
    let mut ineqs = Vec::new();
    for r in &dual.rays {
        let a = LatticeVector::new(r[..rank].to_vec());
        if a.is_zero() {
            // The trivial t ≥ 0 facet of the homogenization.
            debug_assert!(r[rank].is_positive());
            continue;
        }
        ineqs.push((a, -r[rank].clone()));
    }
    eqs.sort();
    ineqs.sort();
    (eqs, ineqs)
}

impl Polyhedron {
    /// Canonical polyhedron conv(points) + cone(rays). The input need not be
    /// irredundant; redundant points and rays are eliminated here. Fails with
    /// `NoPoints` on an empty point list and `ContainsLine` if the generated
    /// set has no vertices.
    pub fn from_generators(
        rank: usize,
        points: &[RationalVector],
        rays: &[LatticeVector],
    ) -> Result<Polyhedron, GeomError> {
        if points.is_empty() {
            return Err(GeomError::NoPoints);
        }
        for p in points {
            if p.rank() != rank {
                return Err(GeomError::RankMismatch {
                    expected: rank,
                    got: p.rank(),
                });
            }
        }
        for r in rays {
            if r.rank() != rank {
                return Err(GeomError::RankMismatch {
                    expected: rank,
                    got: r.rank(),
                });
            }
        }
        let (eqs, ineqs) = vrep_to_hrep(rank, points, rays);
        let (vertices, rays) = hrep_to_vrep(rank, &eqs, &ineqs)?
            .expect("a generated polyhedron with a point is nonempty");
        let dim = rank - eqs.len();
        Ok(Polyhedron {
            rank,
            vertices,
            rays,
            eqs,
            ineqs,
            dim,
        })
    }

    /// Exact vertex enumeration: `Ok(None)` when the system is infeasible.
    pub fn from_constraints(
        rank: usize,
        eqs: &[Constraint],
        ineqs: &[Constraint],
    ) -> Result<Option<Polyhedron>, GeomError> {
        match hrep_to_vrep(rank, eqs, ineqs)? {
            None => Ok(None),
            Some((vertices, rays)) => {
                Ok(Some(Polyhedron::from_generators(rank, &vertices, &rays)?))
            }
        }
    }

    /// The cone as a polyhedron with its apex at the origin.
    pub fn from_cone(cone: &Cone) -> Result<Polyhedron, GeomError> {
        let origin = RationalVector::zero(cone.rank());
        Polyhedron::from_generators(cone.rank(), &[origin], &cone.generators())
    }

    pub fn single_point(p: &RationalVector) -> Polyhedron {
        Polyhedron::from_generators(p.rank(), &[p.clone()], &[])
            .expect("a point is a valid polyhedron")
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[RationalVector] {
        &self.vertices
    }

    pub fn tail_rays(&self) -> &[LatticeVector] {
        &self.rays
    }

    pub fn is_bounded(&self) -> bool {
        self.rays.is_empty()
    }

    /// Equalities of the affine hull, `⟨a, x⟩ = b`.
    pub fn equalities(&self) -> &[Constraint] {
        &self.eqs
    }

    /// Irredundant facet inequalities, `⟨a, x⟩ ≥ b`.
    pub fn inequalities(&self) -> &[Constraint] {
        &self.ineqs
    }

    /// The recession cone, generated by the tail rays.
    pub fn tail(&self) -> Cone {
        Cone::from_rays(self.rank, &self.rays)
    }

    pub fn contains(&self, p: &RationalVector) -> bool {
        self.eqs
            .iter()
            .all(|(a, b)| p.dot_lattice(a) == Rational::from_integer(b.clone()))
            && self
                .ineqs
                .iter()
                .all(|(a, b)| p.dot_lattice(a) >= Rational::from_integer(b.clone()))
    }

    pub fn contains_polyhedron(&self, other: &Polyhedron) -> bool {
        other.vertices.iter().all(|v| self.contains(v))
            && other.rays.iter().all(|r| {
                self.eqs.iter().all(|(a, _)| a.dot(r).is_zero())
                    && self.ineqs.iter().all(|(a, _)| !a.dot(r).is_negative())
            })
    }

    pub fn translate(&self, by: &RationalVector) -> Polyhedron {
        let points: Vec<RationalVector> = self.vertices.iter().map(|v| v.add(by)).collect();
        Polyhedron::from_generators(self.rank, &points, &self.rays)
            .expect("translation preserves validity")
    }

    /// Minkowski sum. Fails with `ContainsLine` when the joint tail rays
    /// span a line, in which case the sum has no vertex description.
    pub fn minkowski_sum(&self, other: &Polyhedron) -> Result<Polyhedron, GeomError> {
        if self.rank != other.rank {
            return Err(GeomError::RankMismatch {
                expected: self.rank,
                got: other.rank,
            });
        }
        let mut points = Vec::with_capacity(self.vertices.len() * other.vertices.len());
        for v in &self.vertices {
            for w in &other.vertices {
                points.push(v.add(w));
            }
        }
        let rays: Vec<LatticeVector> = self.rays.iter().chain(&other.rays).cloned().collect();
        Polyhedron::from_generators(self.rank, &points, &rays)
    }

    /// Exact intersection; `Ok(None)` signals the empty set.
    pub fn intersect(&self, other: &Polyhedron) -> Result<Option<Polyhedron>, GeomError> {
        if self.rank != other.rank {
            return Err(GeomError::RankMismatch {
                expected: self.rank,
                got: other.rank,
            });
        }
        let eqs: Vec<Constraint> = self.eqs.iter().chain(&other.eqs).cloned().collect();
        let ineqs: Vec<Constraint> = self.ineqs.iter().chain(&other.ineqs).cloned().collect();
        Polyhedron::from_constraints(self.rank, &eqs, &ineqs)
    }

    /// The argmin face of `⟨u, ·⟩`; `None` when the functional is unbounded
    /// below, i.e. the selected face is empty.
    pub fn face_for_normal(&self, u: &LatticeVector) -> Option<Polyhedron> {
        if self.rays.iter().any(|r| u.dot(r).is_negative()) {
            return None;
        }
        let values: Vec<Rational> = self.vertices.iter().map(|v| v.dot_lattice(u)).collect();
        let min = values.iter().min().expect("vertex list is nonempty").clone();
        let points: Vec<RationalVector> = self
            .vertices
            .iter()
            .zip(&values)
            .filter(|(_, s)| **s == min)
            .map(|(v, _)| v.clone())
            .collect();
        let rays: Vec<LatticeVector> = self
            .rays
            .iter()
            .filter(|r| u.dot(r).is_zero())
            .cloned()
            .collect();
        Some(
            Polyhedron::from_generators(self.rank, &points, &rays)
                .expect("a face of a polyhedron is a polyhedron"),
        )
    }

    /// Whether `self` is a (nonempty) face of `other`. The improper face
    /// `self == other` counts; the empty face is handled by callers.
    pub fn is_face_of(&self, other: &Polyhedron) -> bool {
        if self.rank != other.rank {
            return false;
        }
        if self == other {
            return true;
        }
        if !other.contains_polyhedron(self) {
            return false;
        }
        let tight: Vec<&Constraint> = other
            .ineqs
            .iter()
            .filter(|(a, b)| {
                self.vertices
                    .iter()
                    .all(|v| v.dot_lattice(a) == Rational::from_integer(b.clone()))
                    && self.rays.iter().all(|r| a.dot(r).is_zero())
            })
            .collect();
        let mut u = LatticeVector::zero(self.rank);
        for (a, _) in &tight {
            u = u.add(a);
        }
        match other.face_for_normal(&u) {
            Some(face) => face == *self,
            None => false,
        }
    }

    /// Facets: the proper faces selected by each irredundant inequality.
    pub fn facets(&self) -> Vec<Face> {
        self.ineqs
            .iter()
            .map(|(a, _)| Face {
                selecting_normal: a.clone(),
                polyhedron: self
                    .face_for_normal(a)
                    .expect("facet normals are bounded below"),
            })
            .collect()
    }

    /// Every nonempty face, including the polyhedron itself.
    pub fn face_closure(&self) -> Vec<Polyhedron> {
        let mut seen = BTreeSet::new();
        let mut stack = vec![self.clone()];
        while let Some(p) = stack.pop() {
            if seen.contains(&p) {
                continue;
            }
            for f in p.facets() {
                stack.push(f.polyhedron);
            }
            seen.insert(p);
        }
        seen.into_iter().collect()
    }

    /// `Some(v)` iff `self = v + cone` with `v` a lattice point.
    pub fn lattice_translate_of(&self, cone: &Cone) -> Option<LatticeVector> {
        let v = self.translate_of(cone)?;
        v.to_lattice()
    }

    /// `Some(v)` iff `self = v + cone` for a rational `v` (the unique vertex).
    pub fn translate_of(&self, cone: &Cone) -> Option<RationalVector> {
        if self.rank != cone.rank() || self.vertices.len() != 1 {
            return None;
        }
        if self.tail() != *cone {
            return None;
        }
        Some(self.vertices[0].clone())
    }

    /// Whether the polyhedron is exactly `0 + cone`.
    pub fn is_cone(&self, cone: &Cone) -> bool {
        match self.translate_of(cone) {
            Some(v) => v.is_zero(),
            None => false,
        }
    }
}

impl PartialEq for Polyhedron {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank && self.vertices == other.vertices && self.rays == other.rays
    }
}

impl Eq for Polyhedron {}

impl PartialOrd for Polyhedron {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Polyhedron {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.rank, &self.vertices, &self.rays).cmp(&(other.rank, &other.vertices, &other.rays))
    }
}

impl Hash for Polyhedron {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.rank.hash(state);
        self.vertices.hash(state);
        self.rays.hash(state);
    }
}

impl fmt::Display for Polyhedron {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "conv{{")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")?;
        if !self.rays.is_empty() {
            write!(f, " + cone{{")?;
            for (i, r) in self.rays.iter().enumerate() {
                if i > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{r}")?;
            }
            write!(f, "}}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn qv(coords: &[i64]) -> RationalVector {
        RationalVector::from_i64(coords)
    }

    fn lv(coords: &[i64]) -> LatticeVector {
        LatticeVector::from_i64(coords)
    }

    fn interval(a: i64, b: i64) -> Polyhedron {
        Polyhedron::from_generators(1, &[qv(&[a]), qv(&[b])], &[]).unwrap()
    }

    fn half_line_up(a: i64) -> Polyhedron {
        Polyhedron::from_generators(1, &[qv(&[a])], &[lv(&[1])]).unwrap()
    }

    fn half_line_down(a: i64) -> Polyhedron {
        Polyhedron::from_generators(1, &[qv(&[a])], &[lv(&[-1])]).unwrap()
    }

    #[test]
    fn tail_cone_examples() {
        assert!(interval(-1, 0).tail().is_zero());
        assert_eq!(half_line_up(1).tail(), Cone::from_rays(1, &[lv(&[1])]));
        let p = Polyhedron::from_generators(2, &[qv(&[0, 0]), qv(&[1, 0])], &[lv(&[0, 1])]).unwrap();
        assert_eq!(p.tail(), Cone::from_rays(2, &[lv(&[0, 1])]));
    }

    #[test]
    fn minkowski_interval_arithmetic() {
        // [1,∞) + [0,∞) = [1,∞)
        assert_eq!(
            half_line_up(1).minkowski_sum(&half_line_up(0)).unwrap(),
            half_line_up(1)
        );
        // [-1,0] + {0} = [-1,0]
        let origin = Polyhedron::single_point(&qv(&[0]));
        assert_eq!(
            interval(-1, 0).minkowski_sum(&origin).unwrap(),
            interval(-1, 0)
        );
        // (-∞,-1] + (-∞,0] = (-∞,-1]
        assert_eq!(
            half_line_down(-1).minkowski_sum(&half_line_down(0)).unwrap(),
            half_line_down(-1)
        );
    }

    #[test]
    fn minkowski_sum_of_opposite_half_lines_has_no_vertices() {
        assert_eq!(
            half_line_up(0).minkowski_sum(&half_line_down(0)),
            Err(GeomError::ContainsLine)
        );
    }

    #[test]
    fn intersection_examples() {
        assert_eq!(
            half_line_up(0).intersect(&half_line_down(0)).unwrap(),
            Some(Polyhedron::single_point(&qv(&[0])))
        );
        assert_eq!(half_line_up(1).intersect(&half_line_down(0)).unwrap(), None);
        // Unit square ∩ {x ≥ 1} = the right edge, via the combined
        // inequality system (the bare half-plane has no vertices).
        let square = Polyhedron::from_generators(
            2,
            &[qv(&[0, 0]), qv(&[1, 0]), qv(&[0, 1]), qv(&[1, 1])],
            &[],
        )
        .unwrap();
        let mut ineqs = square.inequalities().to_vec();
        ineqs.push((lv(&[1, 0]), Int::from(1)));
        let edge = Polyhedron::from_constraints(2, square.equalities(), &ineqs)
            .unwrap()
            .unwrap();
        let expected =
            Polyhedron::from_generators(2, &[qv(&[1, 0]), qv(&[1, 1])], &[]).unwrap();
        assert_eq!(edge, expected);
        assert!(edge.is_face_of(&square));
    }

    #[test]
    fn dual_description_counts() {
        let cube = Polyhedron::from_generators(
            3,
            &[
                qv(&[0, 0, 0]),
                qv(&[1, 0, 0]),
                qv(&[0, 1, 0]),
                qv(&[0, 0, 1]),
                qv(&[1, 1, 0]),
                qv(&[1, 0, 1]),
                qv(&[0, 1, 1]),
                qv(&[1, 1, 1]),
            ],
            &[],
        )
        .unwrap();
        assert_eq!(cube.inequalities().len(), 6);
        assert!(cube.equalities().is_empty());

        let simplex =
            Polyhedron::from_generators(2, &[qv(&[0, 0]), qv(&[1, 0]), qv(&[0, 1])], &[]).unwrap();
        assert_eq!(simplex.inequalities().len(), 3);
    }

    #[test]
    fn face_examples() {
        let origin = Polyhedron::single_point(&qv(&[0]));
        assert!(origin.is_face_of(&half_line_up(0)));
        assert!(!origin.is_face_of(&half_line_up(-1)));
        assert!(interval(-1, 0).is_face_of(&interval(-1, 0)));
    }

    #[test]
    fn redundant_vertices_are_dropped() {
        let p = Polyhedron::from_generators(1, &[qv(&[0]), qv(&[1]), qv(&[2])], &[]).unwrap();
        assert_eq!(p.vertices(), &[qv(&[0]), qv(&[2])]);
        let q = Polyhedron::from_generators(1, &[qv(&[0]), qv(&[5])], &[lv(&[1])]).unwrap();
        assert_eq!(q.vertices(), &[qv(&[0])]);
    }

    #[test]
    fn translate_detection() {
        let ray = Cone::from_rays(1, &[lv(&[1])]);
        assert_eq!(half_line_up(0).lattice_translate_of(&ray), Some(lv(&[0])));
        assert_eq!(half_line_up(-1).lattice_translate_of(&ray), Some(lv(&[-1])));
        let half = Polyhedron::from_generators(
            1,
            &[RationalVector::new(vec![lattice::rat(-1, 2)])],
            &[lv(&[1])],
        )
        .unwrap();
        assert_eq!(half.lattice_translate_of(&ray), None);
        assert_eq!(
            half.translate_of(&ray),
            Some(RationalVector::new(vec![lattice::rat(-1, 2)]))
        );
        assert_eq!(interval(-1, 0).lattice_translate_of(&Cone::zero(1)), None);
        assert_eq!(interval(-1, 0).translate_of(&ray), None);

        // {(1/3, 2)} + cone{(1,0)} relative to cone{(1,0)}.
        let c = Cone::from_rays(2, &[lv(&[1, 0])]);
        let p = Polyhedron::from_generators(
            2,
            &[RationalVector::new(vec![
                lattice::rat(1, 3),
                lattice::rat(2, 1),
            ])],
            &[lv(&[1, 0])],
        )
        .unwrap();
        assert_eq!(
            p.translate_of(&c),
            Some(RationalVector::new(vec![
                lattice::rat(1, 3),
                lattice::rat(2, 1)
            ]))
        );
    }

    fn small_polyhedron() -> impl Strategy<Value = Polyhedron> {
        let dim = 2usize;
        let point = proptest::collection::vec(-4i64..=4, dim);
        let ray = proptest::collection::vec(-2i64..=2, dim);
        (
            proptest::collection::vec(point, 1..=4),
            proptest::collection::vec(ray, 0..=2),
        )
            .prop_filter_map("must have a vertex description", move |(pts, rays)| {
                let points: Vec<RationalVector> =
                    pts.iter().map(|p| RationalVector::from_i64(p)).collect();
                let rays: Vec<LatticeVector> = rays
                    .iter()
                    .map(|r| LatticeVector::from_i64(r))
                    .filter(|r| !r.is_zero())
                    .collect();
                Polyhedron::from_generators(dim, &points, &rays).ok()
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn hrep_vrep_round_trip(p in small_polyhedron()) {
            let back = Polyhedron::from_constraints(p.rank(), p.equalities(), p.inequalities())
                .unwrap()
                .unwrap();
            prop_assert_eq!(back, p);
        }

        #[test]
        fn minkowski_sum_commutes(p in small_polyhedron(), q in small_polyhedron()) {
            let pq = p.minkowski_sum(&q);
            let qp = q.minkowski_sum(&p);
            prop_assert_eq!(pq, qp);
        }

        #[test]
        fn tail_of_sum_is_joined_tails(p in small_polyhedron(), q in small_polyhedron()) {
            if let Ok(sum) = p.minkowski_sum(&q) {
                let mut rays = p.tail_rays().to_vec();
                rays.extend_from_slice(q.tail_rays());
                prop_assert_eq!(sum.tail(), Cone::from_rays(p.rank(), &rays));
            }
        }

        #[test]
        fn minkowski_sum_associates(
            p in small_polyhedron(),
            q in small_polyhedron(),
            r in small_polyhedron(),
        ) {
            let left = p.minkowski_sum(&q).and_then(|pq| pq.minkowski_sum(&r));
            let right = q.minkowski_sum(&r).and_then(|qr| p.minkowski_sum(&qr));
            if let (Ok(l), Ok(r)) = (left, right) {
                prop_assert_eq!(l, r);
            }
        }

        #[test]
        fn face_transitivity(p in small_polyhedron()) {
            for f in p.facets() {
                for g in f.polyhedron.facets() {
                    prop_assert!(g.polyhedron.is_face_of(&f.polyhedron));
                    prop_assert!(g.polyhedron.is_face_of(&p));
                }
            }
        }

        #[test]
        fn lattice_translate_round_trip(
            v in proptest::collection::vec(-5i64..=5, 2),
            pick in 0usize..3,
        ) {
            let cones = [
                Cone::from_rays(2, &[lv(&[1, 0]), lv(&[0, 1])]),
                Cone::from_rays(2, &[lv(&[1, 2])]),
                Cone::zero(2),
            ];
            let sigma = &cones[pick];
            let v = LatticeVector::from_i64(&v);
            let shifted = Polyhedron::from_cone(sigma).unwrap().translate(&v.to_rational());
            prop_assert_eq!(shifted.lattice_translate_of(sigma), Some(v));
        }
    }
}
