//! Rational polyhedral cones in N_Q with cached dual descriptions.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use num_traits::{Signed, Zero};

use crate::dd;
use crate::error::GeomError;
use crate::lattice::{self, Int, LatticeVector, RationalVector};

/// A rational polyhedral cone. Both descriptions are computed once, at
/// construction, and are canonical: two values compare equal iff they are
/// the same set.
///
/// Cones are usually pointed here (tail cones, fan cones). Non-pointed
/// cones can still be represented — they arise from degenerate downgrade
/// input — but `is_regular` and face computations reject them.
#[derive(Clone, Debug)]
pub struct Cone {
    rank: usize,
    rays: Vec<LatticeVector>,
    lineality: Vec<LatticeVector>,
    facet_normals: Vec<LatticeVector>,
    span_eqs: Vec<LatticeVector>,
    dim: usize,
}

impl Cone {
    /// Cone generated by the given vectors; zero generators are ignored.
    pub fn from_rays(rank: usize, generators: &[LatticeVector]) -> Cone {
        for g in generators {
            assert_eq!(g.rank(), rank, "generator rank mismatch");
        }
        let gen_rows: Vec<Vec<Int>> = generators
            .iter()
            .filter(|g| !g.is_zero())
            .map(|g| g.coords().to_vec())
            .collect();
        let dual = dd::extreme_rays(rank, &gen_rows);
        Cone::from_dual_form(rank, dual)
    }

    /// Cone `{x : ⟨a, x⟩ = 0 ∀ a ∈ eqs, ⟨a, x⟩ ≥ 0 ∀ a ∈ ineqs}`.
    pub fn from_halfspaces(rank: usize, eqs: &[LatticeVector], ineqs: &[LatticeVector]) -> Cone {
        let mut rows: Vec<Vec<Int>> = Vec::new();
        for a in ineqs {
            rows.push(a.coords().to_vec());
        }
        for a in eqs {
            rows.push(a.coords().to_vec());
            rows.push(a.neg().coords().to_vec());
        }
        let primal = dd::extreme_rays(rank, &rows);
        // Re-derive the dual side from the minimal generators so the stored
        // H-description is irredundant and canonical.
        let mut gens: Vec<Vec<Int>> = primal.rays.clone();
        for l in &primal.lineality {
            gens.push(l.clone());
            gens.push(l.iter().map(|e| -e).collect());
        }
        let dual = dd::extreme_rays(rank, &gens);
        Cone {
            rank,
            rays: primal.rays.into_iter().map(LatticeVector::new).collect(),
            lineality: primal
                .lineality
                .into_iter()
                .map(LatticeVector::new)
                .collect(),
            facet_normals: dual.rays.into_iter().map(LatticeVector::new).collect(),
            span_eqs: dual.lineality.into_iter().map(LatticeVector::new).collect(),
            dim: 0,
        }
        .with_dim()
    }

    fn from_dual_form(rank: usize, dual: dd::GeneratorForm) -> Cone {
        let facet_normals: Vec<LatticeVector> =
            dual.rays.into_iter().map(LatticeVector::new).collect();
        let span_eqs: Vec<LatticeVector> =
            dual.lineality.into_iter().map(LatticeVector::new).collect();
        let mut rows: Vec<Vec<Int>> = Vec::new();
        for a in &facet_normals {
            rows.push(a.coords().to_vec());
        }
        for a in &span_eqs {
            rows.push(a.coords().to_vec());
            rows.push(a.neg().coords().to_vec());
        }
        let primal = dd::extreme_rays(rank, &rows);
        Cone {
            rank,
            rays: primal.rays.into_iter().map(LatticeVector::new).collect(),
            lineality: primal
                .lineality
                .into_iter()
                .map(LatticeVector::new)
                .collect(),
            facet_normals,
            span_eqs,
            dim: 0,
        }
        .with_dim()
    }

    fn with_dim(mut self) -> Cone {
        self.dim = self.rank - self.span_eqs.len();
        self
    }

    pub fn zero(rank: usize) -> Cone {
        Cone::from_rays(rank, &[])
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }

    /// Minimal generating set: the extremal rays when the cone is pointed.
    pub fn rays(&self) -> &[LatticeVector] {
        &self.rays
    }

    pub fn lineality(&self) -> &[LatticeVector] {
        &self.lineality
    }

    pub fn facet_normals(&self) -> &[LatticeVector] {
        &self.facet_normals
    }

    pub fn span_eqs(&self) -> &[LatticeVector] {
        &self.span_eqs
    }

    /// All generators including both signs of the lineality basis.
    pub fn generators(&self) -> Vec<LatticeVector> {
        let mut g = self.rays.clone();
        for l in &self.lineality {
            g.push(l.clone());
            g.push(l.neg());
        }
        g
    }

    pub fn contains_lattice(&self, v: &LatticeVector) -> bool {
        self.facet_normals.iter().all(|a| !a.dot(v).is_negative())
            && self.span_eqs.iter().all(|a| a.dot(v).is_zero())
    }

    pub fn contains_rational(&self, v: &RationalVector) -> bool {
        self.facet_normals
            .iter()
            .all(|a| !v.dot_lattice(a).is_negative())
            && self.span_eqs.iter().all(|a| v.dot_lattice(a).is_zero())
    }

    pub fn contains_cone(&self, other: &Cone) -> bool {
        other.generators().iter().all(|g| self.contains_lattice(g))
    }

    pub fn intersect(&self, other: &Cone) -> Result<Cone, GeomError> {
        if self.rank != other.rank {
            return Err(GeomError::RankMismatch {
                expected: self.rank,
                got: other.rank,
            });
        }
        let eqs: Vec<LatticeVector> = self
            .span_eqs
            .iter()
            .chain(&other.span_eqs)
            .cloned()
            .collect();
        let ineqs: Vec<LatticeVector> = self
            .facet_normals
            .iter()
            .chain(&other.facet_normals)
            .cloned()
            .collect();
        Ok(Cone::from_halfspaces(self.rank, &eqs, &ineqs))
    }

    /// Whether `self` is a face of `other`: an argmin of some linear
    /// functional that is bounded below on `other`. The improper face
    /// (`self == other`) counts.
    pub fn is_face_of(&self, other: &Cone) -> bool {
        if self.rank != other.rank {
            return false;
        }
        if self == other {
            return true;
        }
        if !other.contains_cone(self) {
            return false;
        }
        let gens = self.generators();
        let tight: Vec<&LatticeVector> = other
            .facet_normals
            .iter()
            .filter(|a| gens.iter().all(|g| a.dot(g).is_zero()))
            .collect();
        if tight.is_empty() {
            return false;
        }
        let mut u = LatticeVector::zero(self.rank);
        for a in &tight {
            u = u.add(a);
        }
        let mut eqs: Vec<LatticeVector> = other.span_eqs.clone();
        eqs.push(u);
        let face = Cone::from_halfspaces(self.rank, &eqs, &other.facet_normals);
        face == *self
    }

    /// Facets of a pointed cone: one per facet normal.
    pub fn facets(&self) -> Vec<Cone> {
        assert!(self.is_pointed(), "facets of non-pointed cone");
        self.facet_normals
            .iter()
            .map(|a| {
                let rays: Vec<LatticeVector> = self
                    .rays
                    .iter()
                    .filter(|r| a.dot(r).is_zero())
                    .cloned()
                    .collect();
                Cone::from_rays(self.rank, &rays)
            })
            .collect()
    }

    /// The full face lattice of a pointed cone, including the cone itself
    /// and the zero cone.
    pub fn face_closure(&self) -> Vec<Cone> {
        assert!(self.is_pointed(), "faces of non-pointed cone");
        let mut seen = std::collections::BTreeSet::new();
        let mut stack = vec![self.clone()];
        while let Some(c) = stack.pop() {
            if !seen.insert(c.clone()) {
                continue;
            }
            if c.dim() > 0 {
                stack.extend(c.facets());
            }
        }
        seen.into_iter().collect()
    }

    /// A pointed cone is regular when its extremal rays extend to a basis
    /// of the lattice. This is the toric smoothness criterion.
    pub fn is_regular(&self) -> Result<bool, GeomError> {
        if !self.is_pointed() {
            return Err(GeomError::NonPointedCone);
        }
        if self.rays.len() != self.dim {
            return Ok(false);
        }
        lattice::extends_to_basis(&self.rays)
    }
}

impl PartialEq for Cone {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank && self.rays == other.rays && self.lineality == other.lineality
    }
}

impl Eq for Cone {}

impl PartialOrd for Cone {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Cone {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.rank, &self.rays, &self.lineality).cmp(&(other.rank, &other.rays, &other.lineality))
    }
}

impl Hash for Cone {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.rank.hash(state);
        self.rays.hash(state);
        self.lineality.hash(state);
    }
}

impl fmt::Display for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cone{{")?;
        let mut first = true;
        for r in &self.rays {
            if !first {
                write!(f, ", ")?;
            }
            write!(f, "{r}")?;
            first = false;
        }
        for l in &self.lineality {
            if !first {
                write!(f, ", ")?;
            }
            write!(f, "±{l}")?;
            first = false;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lv(coords: &[i64]) -> LatticeVector {
        LatticeVector::from_i64(coords)
    }

    fn cone2(rays: &[&[i64]]) -> Cone {
        let vs: Vec<LatticeVector> = rays.iter().map(|r| lv(r)).collect();
        Cone::from_rays(2, &vs)
    }

    #[test]
    fn generators_reduce_to_extremal_rays() {
        let c = cone2(&[&[1, 0], &[1, 1], &[0, 1]]);
        assert_eq!(c.rays(), &[lv(&[0, 1]), lv(&[1, 0])]);
        assert!(c.is_pointed());
        assert_eq!(c.dim(), 2);
    }

    #[test]
    fn scaled_and_duplicate_generators_collapse() {
        let c = cone2(&[&[2, 0], &[1, 0], &[0, 3]]);
        assert_eq!(c, cone2(&[&[1, 0], &[0, 1]]));
    }

    #[test]
    fn non_pointed_cone_is_flagged() {
        let c = cone2(&[&[0, 1], &[0, -1]]);
        assert!(!c.is_pointed());
        assert_eq!(c.lineality(), &[lv(&[0, 1])]);
        assert!(c.rays().is_empty());
        assert_eq!(c.is_regular(), Err(GeomError::NonPointedCone));
    }

    #[test]
    fn regularity_examples() {
        assert_eq!(cone2(&[&[1, 1], &[0, -1]]).is_regular(), Ok(true));
        assert_eq!(cone2(&[&[1, 0], &[1, 2]]).is_regular(), Ok(false));
        // A rank-2 pointed cone is always simplicial, so a dependent
        // generator like (1,1) is just absorbed.
        let c = cone2(&[&[1, 0], &[0, 1], &[1, 1]]);
        assert_eq!(c.rays().len(), 2);
        assert_eq!(c.is_regular(), Ok(true));
        // Cone over the unit square: four extremal rays in rank three,
        // not simplicial.
        let square = Cone::from_rays(
            3,
            &[
                lv(&[0, 0, 1]),
                lv(&[1, 0, 1]),
                lv(&[0, 1, 1]),
                lv(&[1, 1, 1]),
            ],
        );
        assert_eq!(square.rays().len(), 4);
        assert_eq!(square.is_regular(), Ok(false));
        // The zero cone is regular.
        assert_eq!(Cone::zero(2).is_regular(), Ok(true));
    }

    #[test]
    fn intersection_and_faces() {
        let quadrant = cone2(&[&[1, 0], &[0, 1]]);
        let upper = cone2(&[&[0, 1], &[-1, 0]]);
        let axis = quadrant.intersect(&upper).unwrap();
        assert_eq!(axis, cone2(&[&[0, 1]]));
        assert!(axis.is_face_of(&quadrant));
        assert!(axis.is_face_of(&upper));
        assert!(Cone::zero(2).is_face_of(&quadrant));
        assert!(quadrant.is_face_of(&quadrant));
        assert!(!cone2(&[&[1, 1]]).is_face_of(&quadrant));
    }

    #[test]
    fn face_closure_of_quadrant() {
        let quadrant = cone2(&[&[1, 0], &[0, 1]]);
        let faces = quadrant.face_closure();
        assert_eq!(faces.len(), 4); // itself, two edges, origin
        assert!(faces.contains(&Cone::zero(2)));
        assert!(faces.contains(&cone2(&[&[1, 0]])));
        assert!(faces.contains(&cone2(&[&[0, 1]])));
    }

    #[test]
    fn halfspace_roundtrip() {
        let c = cone2(&[&[1, 1], &[0, -1]]);
        let back = Cone::from_halfspaces(2, c.span_eqs(), c.facet_normals());
        assert_eq!(back, c);
    }

    #[test]
    fn regularity_is_unimodular_invariant() {
        use crate::lattice::{dot, IntMatrix};
        let cones = [
            cone2(&[&[1, 1], &[0, -1]]),
            cone2(&[&[1, 0], &[1, 2]]),
            cone2(&[&[1, 0]]),
            Cone::zero(2),
        ];
        // Shear, flip, and a composite: all unimodular.
        let transforms = [
            IntMatrix::from_i64_rows(&[&[1, 3], &[0, 1]]),
            IntMatrix::from_i64_rows(&[&[0, 1], &[1, 0]]),
            IntMatrix::from_i64_rows(&[&[2, 1], &[1, 1]]),
        ];
        for u in &transforms {
            assert!(u.is_unimodular());
            for c in &cones {
                let mapped: Vec<LatticeVector> = c
                    .rays()
                    .iter()
                    .map(|r| {
                        LatticeVector::new((0..2).map(|i| dot(u.row(i), r.coords())).collect())
                    })
                    .collect();
                let image = Cone::from_rays(2, &mapped);
                assert_eq!(image.is_regular(), c.is_regular());
            }
        }
    }
}
