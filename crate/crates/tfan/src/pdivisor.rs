//! Polyhedral divisors on P¹: degree, properness, downgrade cones,
//! extremal-ray classification, smoothness, and affine-space certificates.
//!
//! A polyhedral divisor is a formal sum Σ D_y · y over points of P¹ whose
//! coefficients are polyhedra with one common pointed tail cone σ; all but
//! finitely many coefficients equal σ itself and are therefore kept
//! implicit. Empty coefficients are allowed. A divisor is proper (a
//! "p-divisor") when its degree — the Minkowski sum of all coefficients —
//! is empty or a proper subset of σ; these encode affine varieties with a
//! torus action one dimension smaller than the variety.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::cone::Cone;
use crate::error::GeomError;
use crate::lattice::{Int, LatticeVector, Rational, RationalVector};
use crate::polyhedron::Polyhedron;

/// A point of P¹, identified symbolically. No projective arithmetic is
/// done: the theory only ever distinguishes finitely many special points.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum PointOnP1 {
    Zero,
    Infinity,
    Coordinate(Rational),
    Named(String),
}

impl PointOnP1 {
    /// Coordinate point, normalizing `@0` to the distinguished `Zero`.
    pub fn coordinate(r: Rational) -> PointOnP1 {
        if r.is_zero() {
            PointOnP1::Zero
        } else {
            PointOnP1::Coordinate(r)
        }
    }

    pub fn named(s: impl Into<String>) -> PointOnP1 {
        PointOnP1::Named(s.into())
    }
}

impl fmt::Display for PointOnP1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointOnP1::Zero => write!(f, "0"),
            PointOnP1::Infinity => write!(f, "inf"),
            PointOnP1::Coordinate(r) => write!(f, "@{r}"),
            PointOnP1::Named(s) => write!(f, "{s}"),
        }
    }
}

/// A divisor coefficient: a polyhedron with the divisor's tail cone, or
/// the empty set.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Coefficient {
    Empty,
    Poly(Polyhedron),
}

impl Coefficient {
    pub fn is_empty(&self) -> bool {
        matches!(self, Coefficient::Empty)
    }

    pub fn as_poly(&self) -> Option<&Polyhedron> {
        match self {
            Coefficient::Empty => None,
            Coefficient::Poly(p) => Some(p),
        }
    }

    /// Empty counts as a face of everything.
    pub fn is_face_of(&self, other: &Coefficient) -> bool {
        match (self, other) {
            (Coefficient::Empty, _) => true,
            (Coefficient::Poly(_), Coefficient::Empty) => false,
            (Coefficient::Poly(f), Coefficient::Poly(p)) => f.is_face_of(p),
        }
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficient::Empty => write!(f, "empty"),
            Coefficient::Poly(p) => write!(f, "{p}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DivisorError {
    #[error("tail cone must be pointed")]
    TailNotPointed,
    #[error("coefficient at {0} has a different tail cone than the divisor")]
    TailMismatch(PointOnP1),
    #[error("coefficient at {0} has the wrong rank")]
    CoefficientRank(PointOnP1),
    #[error(
        "divisor not of downgrade form: coefficient at {0} is not a lattice translate of the tail"
    )]
    NotDowngradeForm(PointOnP1),
    #[error("the two distinguished points must be distinct")]
    DistinguishedPointsCoincide,
    #[error("smoothness test requires a p-divisor (the divisor is not proper)")]
    NotProper,
    #[error(transparent)]
    Geom(#[from] GeomError),
}

/// Formal sum Σ D_y · y over P¹ with common pointed tail cone. Points not
/// listed in the support implicitly carry the tail cone itself; explicit
/// tail-cone coefficients are normalized away at construction.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct PDivisor {
    rank: usize,
    tail: Cone,
    support: BTreeMap<PointOnP1, Coefficient>,
}

impl PDivisor {
    pub fn new(
        tail: Cone,
        support: BTreeMap<PointOnP1, Coefficient>,
    ) -> Result<PDivisor, DivisorError> {
        if !tail.is_pointed() {
            return Err(DivisorError::TailNotPointed);
        }
        let rank = tail.rank();
        let tail_poly = Polyhedron::from_cone(&tail).expect("pointed cone is a polyhedron");
        let mut cleaned = BTreeMap::new();
        for (y, c) in support {
            if let Coefficient::Poly(p) = &c {
                if p.rank() != rank {
                    return Err(DivisorError::CoefficientRank(y));
                }
                if p.tail() != tail {
                    return Err(DivisorError::TailMismatch(y));
                }
                if *p == tail_poly {
                    continue;
                }
            }
            cleaned.insert(y, c);
        }
        Ok(PDivisor {
            rank,
            tail,
            support: cleaned,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn tail(&self) -> &Cone {
        &self.tail
    }

    pub fn tail_polyhedron(&self) -> Polyhedron {
        Polyhedron::from_cone(&self.tail).expect("pointed cone is a polyhedron")
    }

    /// Explicitly listed coefficients (all differing from the tail cone).
    pub fn support(&self) -> &BTreeMap<PointOnP1, Coefficient> {
        &self.support
    }

    /// The coefficient at a point, resolving the implicit tail cone.
    pub fn coefficient(&self, y: &PointOnP1) -> Coefficient {
        match self.support.get(y) {
            Some(c) => c.clone(),
            None => Coefficient::Poly(self.tail_polyhedron()),
        }
    }

    /// deg D = Σ_y D_y: empty iff some coefficient is empty, otherwise the
    /// Minkowski sum of the listed coefficients (implicit tail-cone
    /// coefficients are absorbed, σ + σ = σ).
    pub fn degree(&self) -> Coefficient {
        if self.support.values().any(Coefficient::is_empty) {
            return Coefficient::Empty;
        }
        let mut acc: Option<Polyhedron> = None;
        for c in self.support.values() {
            let p = c.as_poly().expect("empty handled above");
            acc = Some(match acc {
                None => p.clone(),
                Some(sum) => sum
                    .minkowski_sum(p)
                    .expect("coefficients share one pointed tail"),
            });
        }
        Coefficient::Poly(acc.unwrap_or_else(|| self.tail_polyhedron()))
    }

    /// Properness: deg D is empty or a proper subset of the tail cone.
    pub fn is_proper(&self) -> bool {
        match self.degree() {
            Coefficient::Empty => true,
            Coefficient::Poly(d) => {
                let inside = d.vertices().iter().all(|v| self.tail.contains_rational(v))
                    && d.tail_rays().iter().all(|r| self.tail.contains_lattice(r));
                inside && !d.is_cone(&self.tail)
            }
        }
    }

    /// Listed points whose coefficient is empty or not a lattice translate
    /// of the tail cone. A divisor has downgrade form iff at most two such
    /// points exist (they become the distinguished pair).
    pub fn special_points(&self) -> Vec<PointOnP1> {
        self.support
            .iter()
            .filter(|(_, c)| match c {
                Coefficient::Empty => true,
                Coefficient::Poly(p) => p.lattice_translate_of(&self.tail).is_none(),
            })
            .map(|(y, _)| y.clone())
            .collect()
    }

    /// The distinguished pair (y₀, y∞): the special points, padded with
    /// Zero, Infinity, then remaining listed points, in that order.
    pub fn choose_distinguished(&self) -> Result<(PointOnP1, PointOnP1), DivisorError> {
        let special = self.special_points();
        assert!(special.len() <= 2, "no downgrade form exists");
        let mut chosen = special;
        let candidates = [PointOnP1::Zero, PointOnP1::Infinity]
            .into_iter()
            .chain(self.support.keys().cloned());
        for cand in candidates {
            if chosen.len() == 2 {
                break;
            }
            if !chosen.contains(&cand) {
                chosen.push(cand);
            }
        }
        assert_eq!(chosen.len(), 2);
        Ok((chosen[0].clone(), chosen[1].clone()))
    }

    /// Lattice translates v_y of the coefficients away from (y₀, y∞), and
    /// their sum v. Fails when some other coefficient is not of that shape.
    pub fn downgrade_translates(
        &self,
        y0: &PointOnP1,
        y_inf: &PointOnP1,
    ) -> Result<DowngradeTranslates, DivisorError> {
        if y0 == y_inf {
            return Err(DivisorError::DistinguishedPointsCoincide);
        }
        let mut translates = BTreeMap::new();
        let mut sum = LatticeVector::zero(self.rank);
        for (y, c) in &self.support {
            if y == y0 || y == y_inf {
                continue;
            }
            let v = c
                .as_poly()
                .and_then(|p| p.lattice_translate_of(&self.tail))
                .ok_or_else(|| DivisorError::NotDowngradeForm(y.clone()))?;
            sum = sum.add(&v);
            translates.insert(y.clone(), v);
        }
        Ok(DowngradeTranslates { translates, sum })
    }

    /// Default shift w₀: zero when the translate sum v vanishes, otherwise
    /// the componentwise floor of minus the vertex barycenter of D_{y₀}.
    /// Any other choice gives a unimodularly equivalent cone.
    pub fn default_w0(
        &self,
        y0: &PointOnP1,
        y_inf: &PointOnP1,
    ) -> Result<LatticeVector, DivisorError> {
        let form = self.downgrade_translates(y0, y_inf)?;
        if form.sum.is_zero() {
            return Ok(LatticeVector::zero(self.rank));
        }
        match self.coefficient(y0) {
            Coefficient::Empty => Ok(LatticeVector::zero(self.rank)),
            Coefficient::Poly(p) => {
                let n = Rational::from_integer(Int::from(p.vertices().len() as i64));
                let mut bary = RationalVector::zero(self.rank);
                for v in p.vertices() {
                    bary = bary.add(v);
                }
                let correction =
                    RationalVector::new(bary.coords().iter().map(|c| -(c / &n)).collect());
                Ok(correction.floor())
            }
        }
    }

    /// The cone in N⊕Z generated by (w₀+D_{y₀})×{1}, σ×{0} and
    /// (w∞+D_{y∞})×{−1}, where w∞ = v − w₀. Its toric variety realizes the
    /// variety of the divisor; empty coefficients contribute nothing on
    /// their side, and the result may be non-pointed for improper input.
    pub fn downgrade_cone(
        &self,
        y0: &PointOnP1,
        y_inf: &PointOnP1,
        w0: &LatticeVector,
    ) -> Result<Cone, DivisorError> {
        let form = self.downgrade_translates(y0, y_inf)?;
        let w_inf = form.sum.sub(w0);
        let mut gens: Vec<LatticeVector> = Vec::new();
        for r in self.tail.rays() {
            gens.push(append_height(r, 0));
        }
        if let Coefficient::Poly(p) = self.coefficient(y0) {
            for u in p.vertices() {
                gens.push(lift_point(&u.add_lattice(w0), 1));
            }
            for r in p.tail_rays() {
                gens.push(append_height(r, 0));
            }
        }
        if let Coefficient::Poly(p) = self.coefficient(y_inf) {
            for u in p.vertices() {
                gens.push(lift_point(&u.add_lattice(&w_inf), -1));
            }
            for r in p.tail_rays() {
                gens.push(append_height(r, 0));
            }
        }
        Ok(Cone::from_rays(self.rank + 1, &gens))
    }

    /// The extremal rays of the downgrade cone, classified: tail rays ρ×{0}
    /// survive exactly when deg D ∩ ρ = ∅; every vertex of D_{y₀} lifts to
    /// height 1 and every vertex of D_{y∞} to height −1.
    pub fn classified_extremal_rays(
        &self,
        y0: &PointOnP1,
        y_inf: &PointOnP1,
        w0: &LatticeVector,
    ) -> Result<Vec<ClassifiedRay>, DivisorError> {
        let form = self.downgrade_translates(y0, y_inf)?;
        let w_inf = form.sum.sub(w0);
        let degree = self.degree();
        let mut rays = Vec::new();
        for rho in self.tail.rays() {
            let survives = match &degree {
                Coefficient::Empty => true,
                Coefficient::Poly(d) => {
                    let ray_poly = Polyhedron::from_generators(
                        self.rank,
                        &[RationalVector::zero(self.rank)],
                        &[rho.clone()],
                    )
                    .expect("a ray is a polyhedron");
                    d.intersect(&ray_poly)?.is_none()
                }
            };
            if survives {
                rays.push(ClassifiedRay {
                    ray: append_height(rho, 0),
                    kind: RayKind::Tail,
                });
            }
        }
        if let Coefficient::Poly(p) = self.coefficient(y0) {
            for u in p.vertices() {
                rays.push(ClassifiedRay {
                    ray: lift_point(&u.add_lattice(w0), 1),
                    kind: RayKind::Y0Vertex,
                });
            }
        }
        if let Coefficient::Poly(p) = self.coefficient(y_inf) {
            for u in p.vertices() {
                rays.push(ClassifiedRay {
                    ray: lift_point(&u.add_lattice(&w_inf), -1),
                    kind: RayKind::YInfVertex,
                });
            }
        }
        rays.sort();
        Ok(rays)
    }

    /// Smoothness of the encoded affine variety. With nonempty degree the
    /// divisor must have downgrade form with a regular cone; with empty
    /// degree every one-sided coefficient cone (including the implicit
    /// tail) must be regular.
    pub fn is_smooth(&self) -> Result<bool, DivisorError> {
        if !self.is_proper() {
            return Err(DivisorError::NotProper);
        }
        match self.degree() {
            Coefficient::Poly(_) => {
                if self.special_points().len() > 2 {
                    return Ok(false);
                }
                let (y0, y_inf) = self.choose_distinguished()?;
                let w0 = self.default_w0(&y0, &y_inf)?;
                let cone = self.downgrade_cone(&y0, &y_inf, &w0)?;
                Ok(cone.is_regular()?)
            }
            Coefficient::Empty => {
                if !self.tail.is_regular()? {
                    return Ok(false);
                }
                for c in self.support.values() {
                    if let Coefficient::Poly(p) = c {
                        if !self.coefficient_cone(p).is_regular()? {
                            return Ok(false);
                        }
                    }
                }
                Ok(true)
            }
        }
    }

    /// The one-sided cone of a single coefficient: generated by D_y×{1}
    /// and σ×{0} in N⊕Z.
    pub fn coefficient_cone(&self, p: &Polyhedron) -> Cone {
        let mut gens: Vec<LatticeVector> = Vec::new();
        for r in self.tail.rays() {
            gens.push(append_height(r, 0));
        }
        for u in p.vertices() {
            gens.push(lift_point(u, 1));
        }
        for r in p.tail_rays() {
            gens.push(append_height(r, 0));
        }
        Cone::from_rays(self.rank + 1, &gens)
    }

    /// One-sided affine-space certificate: `Some` iff the divisor has
    /// downgrade form and the cone is regular of full dimension, in which
    /// case the encoded variety is an affine space. `None` proves nothing.
    pub fn affine_space_certificate(
        &self,
    ) -> Result<Option<AffineSpaceCertificate>, DivisorError> {
        if !self.is_proper() {
            return Err(DivisorError::NotProper);
        }
        if self.special_points().len() > 2 {
            return Ok(None);
        }
        let (y0, y_inf) = self.choose_distinguished()?;
        let w0 = self.default_w0(&y0, &y_inf)?;
        let form = self.downgrade_translates(&y0, &y_inf)?;
        let w_inf = form.sum.sub(&w0);
        let cone = self.downgrade_cone(&y0, &y_inf, &w0)?;
        let regular = cone.is_regular()?;
        let full_dimensional = cone.dim() == self.rank + 1;
        if regular && full_dimensional {
            Ok(Some(AffineSpaceCertificate {
                cone,
                y0,
                y_inf,
                w0,
                w_inf,
                regular,
                full_dimensional,
            }))
        } else {
            Ok(None)
        }
    }
}

impl fmt::Display for PDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.support.is_empty() {
            return write!(f, "{} (trivial)", self.tail);
        }
        let mut first = true;
        for (y, c) in &self.support {
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "[{c}]·{y}")?;
            first = false;
        }
        write!(f, "  (tail {})", self.tail)
    }
}

/// The v_y data of a divisor in downgrade form.
#[derive(Clone, Debug)]
pub struct DowngradeTranslates {
    pub translates: BTreeMap<PointOnP1, LatticeVector>,
    pub sum: LatticeVector,
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum RayKind {
    /// ρ×{0} for a tail ray ρ missing the degree.
    Tail,
    /// (w₀+u, 1) for a vertex u of the coefficient at y₀.
    Y0Vertex,
    /// (w∞+u, −1) for a vertex u of the coefficient at y∞.
    YInfVertex,
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct ClassifiedRay {
    pub ray: LatticeVector,
    pub kind: RayKind,
}

/// Proof that a p-divisor encodes an affine space: a regular downgrade
/// cone of dimension rank+1 with a recorded choice of distinguished points
/// and shift. Valid iff `regular`, `full_dimensional`, and w₀+w∞ equals
/// the translate sum v.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AffineSpaceCertificate {
    pub cone: Cone,
    pub y0: PointOnP1,
    pub y_inf: PointOnP1,
    pub w0: LatticeVector,
    pub w_inf: LatticeVector,
    pub regular: bool,
    pub full_dimensional: bool,
}

impl AffineSpaceCertificate {
    /// Re-derives every claim of the certificate against the divisor.
    pub fn verify(&self, divisor: &PDivisor) -> bool {
        let Ok(form) = divisor.downgrade_translates(&self.y0, &self.y_inf) else {
            return false;
        };
        if self.w0.add(&self.w_inf) != form.sum {
            return false;
        }
        let Ok(cone) = divisor.downgrade_cone(&self.y0, &self.y_inf, &self.w0) else {
            return false;
        };
        if cone != self.cone {
            return false;
        }
        self.regular
            && self.full_dimensional
            && cone.is_regular() == Ok(true)
            && cone.dim() == divisor.rank() + 1
    }
}

/// (v, h) as a primitive lattice vector in N⊕Z.
fn lift_point(v: &RationalVector, height: i64) -> LatticeVector {
    let mut lcm = Int::one();
    for c in v.coords() {
        lcm = lcm.lcm(c.denom());
    }
    let mut coords: Vec<Int> = v
        .coords()
        .iter()
        .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    coords.push(Int::from(height) * &lcm);
    LatticeVector::new(coords)
        .primitive()
        .expect("lifted point has nonzero height")
}

fn append_height(v: &LatticeVector, height: i64) -> LatticeVector {
    let mut coords = v.coords().to_vec();
    coords.push(Int::from(height));
    LatticeVector::new(coords)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::rat;

    fn lv(coords: &[i64]) -> LatticeVector {
        LatticeVector::from_i64(coords)
    }

    fn qv(coords: &[i64]) -> RationalVector {
        RationalVector::from_i64(coords)
    }

    fn ray_up() -> Cone {
        Cone::from_rays(1, &[lv(&[1])])
    }

    fn half_line(a: i64) -> Polyhedron {
        Polyhedron::from_generators(1, &[qv(&[a])], &[lv(&[1])]).unwrap()
    }

    /// [1,∞)·0 + [0,∞)·∞ with tail Q≥0.
    fn fixture_e1() -> PDivisor {
        let mut support = BTreeMap::new();
        support.insert(PointOnP1::Zero, Coefficient::Poly(half_line(1)));
        support.insert(PointOnP1::Infinity, Coefficient::Poly(half_line(0)));
        PDivisor::new(ray_up(), support).unwrap()
    }

    #[test]
    fn degree_examples() {
        assert_eq!(fixture_e1().degree(), Coefficient::Poly(half_line(1)));

        let mut support = BTreeMap::new();
        support.insert(PointOnP1::Zero, Coefficient::Empty);
        let d = PDivisor::new(ray_up(), support).unwrap();
        assert_eq!(d.degree(), Coefficient::Empty);

        let trivial = PDivisor::new(ray_up(), BTreeMap::new()).unwrap();
        assert_eq!(trivial.degree(), Coefficient::Poly(half_line(0)));
    }

    #[test]
    fn degree_ignores_explicit_tail_coefficients() {
        let mut support = BTreeMap::new();
        support.insert(PointOnP1::Zero, Coefficient::Poly(half_line(1)));
        support.insert(PointOnP1::Infinity, Coefficient::Poly(half_line(0)));
        support.insert(PointOnP1::named("extra"), Coefficient::Poly(half_line(0)));
        let d = PDivisor::new(ray_up(), support).unwrap();
        assert_eq!(d, fixture_e1());
        assert_eq!(d.degree(), fixture_e1().degree());
    }

    #[test]
    fn properness_examples() {
        assert!(fixture_e1().is_proper());
        let trivial = PDivisor::new(ray_up(), BTreeMap::new()).unwrap();
        assert!(!trivial.is_proper());
        let mut support = BTreeMap::new();
        support.insert(PointOnP1::Zero, Coefficient::Empty);
        assert!(PDivisor::new(ray_up(), support).unwrap().is_proper());
    }

    #[test]
    fn downgrade_cone_of_e1() {
        let d = fixture_e1();
        let c = d
            .downgrade_cone(&PointOnP1::Zero, &PointOnP1::Infinity, &lv(&[0]))
            .unwrap();
        assert_eq!(c.rays(), &[lv(&[0, -1]), lv(&[1, 1])]);
        assert!(c.is_pointed());
    }

    #[test]
    fn downgrade_cone_with_empty_side() {
        // ∅·0 + (0+σ)·∞ over Q≥0: only σ and the y∞ part contribute.
        let mut support = BTreeMap::new();
        support.insert(PointOnP1::Zero, Coefficient::Empty);
        support.insert(PointOnP1::Infinity, Coefficient::Poly(half_line(0)));
        let d = PDivisor::new(ray_up(), support).unwrap();
        let c = d
            .downgrade_cone(&PointOnP1::Zero, &PointOnP1::Infinity, &lv(&[0]))
            .unwrap();
        assert_eq!(c.rays(), &[lv(&[0, -1]), lv(&[1, 0])]);
    }

    #[test]
    fn degenerate_downgrade_cone_is_flagged_not_false() {
        // D₀ = {0}, D∞ = {0}, σ = {0} in rank one: the cone is a line.
        let origin = Polyhedron::single_point(&qv(&[0]));
        let mut support = BTreeMap::new();
        support.insert(PointOnP1::Zero, Coefficient::Poly(origin.clone()));
        support.insert(PointOnP1::Infinity, Coefficient::Poly(origin));
        let d = PDivisor::new(Cone::zero(1), support).unwrap();
        let c = d
            .downgrade_cone(&PointOnP1::Zero, &PointOnP1::Infinity, &lv(&[0]))
            .unwrap();
        assert!(!c.is_pointed());
        assert_eq!(c.is_regular(), Err(GeomError::NonPointedCone));
    }

    #[test]
    fn extremal_ray_classification_e1() {
        let d = fixture_e1();
        let rays = d
            .classified_extremal_rays(&PointOnP1::Zero, &PointOnP1::Infinity, &lv(&[0]))
            .unwrap();
        // (1,0) is excluded: deg ∩ ρ = [1,∞) ≠ ∅.
        assert_eq!(
            rays,
            vec![
                ClassifiedRay {
                    ray: lv(&[0, -1]),
                    kind: RayKind::YInfVertex
                },
                ClassifiedRay {
                    ray: lv(&[1, 1]),
                    kind: RayKind::Y0Vertex
                },
            ]
        );
        let cone_rays: Vec<LatticeVector> = rays.iter().map(|r| r.ray.clone()).collect();
        let c = d
            .downgrade_cone(&PointOnP1::Zero, &PointOnP1::Infinity, &lv(&[0]))
            .unwrap();
        assert_eq!(cone_rays, c.rays());
    }

    #[test]
    fn extremal_rays_with_empty_degree_keep_tail_rays() {
        let mut support = BTreeMap::new();
        support.insert(PointOnP1::Zero, Coefficient::Empty);
        support.insert(PointOnP1::Infinity, Coefficient::Poly(half_line(0)));
        let d = PDivisor::new(ray_up(), support).unwrap();
        let rays = d
            .classified_extremal_rays(&PointOnP1::Zero, &PointOnP1::Infinity, &lv(&[0]))
            .unwrap();
        assert_eq!(
            rays,
            vec![
                ClassifiedRay {
                    ray: lv(&[0, -1]),
                    kind: RayKind::YInfVertex
                },
                ClassifiedRay {
                    ray: lv(&[1, 0]),
                    kind: RayKind::Tail
                },
            ]
        );
    }

    #[test]
    fn extremal_rays_of_bounded_coefficient() {
        // D₀ = [−1,0], D∞ = ∅, σ = {0}: both vertices lift.
        let seg = Polyhedron::from_generators(1, &[qv(&[-1]), qv(&[0])], &[]).unwrap();
        let mut support = BTreeMap::new();
        support.insert(PointOnP1::Zero, Coefficient::Poly(seg));
        support.insert(PointOnP1::Infinity, Coefficient::Empty);
        let d = PDivisor::new(Cone::zero(1), support).unwrap();
        let rays = d
            .classified_extremal_rays(&PointOnP1::Zero, &PointOnP1::Infinity, &lv(&[0]))
            .unwrap();
        assert_eq!(
            rays,
            vec![
                ClassifiedRay {
                    ray: lv(&[-1, 1]),
                    kind: RayKind::Y0Vertex
                },
                ClassifiedRay {
                    ray: lv(&[0, 1]),
                    kind: RayKind::Y0Vertex
                },
            ]
        );
    }

    #[test]
    fn smoothness_examples() {
        assert_eq!(fixture_e1().is_smooth(), Ok(true));

        // Empty coefficient over a non-regular tail.
        let bad_tail = Cone::from_rays(2, &[lv(&[1, 0]), lv(&[1, 2])]);
        let mut support = BTreeMap::new();
        support.insert(PointOnP1::Zero, Coefficient::Empty);
        let d = PDivisor::new(bad_tail, support).unwrap();
        assert_eq!(d.is_smooth(), Ok(false));

        // Half-integral vertices on both sides: determinant −4.
        let half =
            Polyhedron::from_generators(1, &[RationalVector::new(vec![rat(1, 2)])], &[lv(&[1])])
                .unwrap();
        let mut support = BTreeMap::new();
        support.insert(PointOnP1::Zero, Coefficient::Poly(half.clone()));
        support.insert(PointOnP1::Infinity, Coefficient::Poly(half));
        let d = PDivisor::new(ray_up(), support).unwrap();
        assert!(d.is_proper());
        assert_eq!(d.is_smooth(), Ok(false));

        let trivial = PDivisor::new(ray_up(), BTreeMap::new()).unwrap();
        assert_eq!(trivial.is_smooth(), Err(DivisorError::NotProper));
    }

    #[test]
    fn affine_space_certificates() {
        let cert = fixture_e1().affine_space_certificate().unwrap().unwrap();
        assert_eq!(cert.cone.rays(), &[lv(&[0, -1]), lv(&[1, 1])]);
        assert!(cert.verify(&fixture_e1()));

        // The non-maximal-tail chart of the first Hirzebruch surface:
        // ∅·inf + [−1,0]·0 with zero tail.
        let seg = Polyhedron::from_generators(1, &[qv(&[-1]), qv(&[0])], &[]).unwrap();
        let mut support = BTreeMap::new();
        support.insert(PointOnP1::Zero, Coefficient::Poly(seg));
        support.insert(PointOnP1::Infinity, Coefficient::Empty);
        let d = PDivisor::new(Cone::zero(1), support).unwrap();
        let cert = d.affine_space_certificate().unwrap().unwrap();
        assert_eq!(cert.cone.rays(), &[lv(&[-1, 1]), lv(&[0, 1])]);
        assert_eq!(cert.cone.dim(), 2);
        assert!(cert.verify(&d));

        let trivial = PDivisor::new(ray_up(), BTreeMap::new()).unwrap();
        assert_eq!(
            trivial.affine_space_certificate(),
            Err(DivisorError::NotProper)
        );
    }

    #[test]
    fn certificate_implies_smooth() {
        let cases = [fixture_e1()];
        for d in cases {
            if d.affine_space_certificate().unwrap().is_some() {
                assert_eq!(d.is_smooth(), Ok(true));
            }
        }
    }

    #[test]
    fn point_coefficients_certify_iff_rays_extend_to_basis() {
        // Full-dimensional regular tail with single lattice-point shifts on
        // both sides: the certificate exists exactly when the assembled
        // ray set is part of a lattice basis.
        let quadrant = Cone::from_rays(2, &[lv(&[1, 0]), lv(&[0, 1])]);
        for (d0, dinf) in [
            (lv(&[1, 0]), lv(&[0, 0])),  // three rays, unimodular
            (lv(&[2, 3]), lv(&[-1, 1])), // four rays, not simplicial
            (lv(&[2, 0]), lv(&[0, 0])),  // three rays, index two
            (lv(&[0, 0]), lv(&[0, 0])),  // improper, skipped
        ] {
            let shift = |v: &LatticeVector| {
                Polyhedron::from_cone(&quadrant)
                    .unwrap()
                    .translate(&v.to_rational())
            };
            let mut support = BTreeMap::new();
            support.insert(PointOnP1::Zero, Coefficient::Poly(shift(&d0)));
            support.insert(PointOnP1::Infinity, Coefficient::Poly(shift(&dinf)));
            let d = PDivisor::new(quadrant.clone(), support).unwrap();
            if !d.is_proper() {
                continue;
            }
            let cert = d.affine_space_certificate().unwrap();
            // Assemble the candidate rays by hand: surviving tail rays at
            // height zero plus the two vertex lifts.
            let cone = d
                .downgrade_cone(
                    &PointOnP1::Zero,
                    &PointOnP1::Infinity,
                    &LatticeVector::zero(2),
                )
                .unwrap();
            let expected = cone.rays().len() == 3
                && crate::lattice::extends_to_basis(cone.rays()).unwrap();
            assert_eq!(cert.is_some(), expected);
            if let Some(c) = cert {
                assert_eq!(d.is_smooth(), Ok(true));
                assert!(c.verify(&d));
            }
        }
    }

    #[test]
    fn w0_choices_are_unimodularly_related() {
        let d = fixture_e1();
        let w_a = lv(&[0]);
        let w_b = lv(&[3]);
        let ca = d
            .downgrade_cone(&PointOnP1::Zero, &PointOnP1::Infinity, &w_a)
            .unwrap();
        let cb = d
            .downgrade_cone(&PointOnP1::Zero, &PointOnP1::Infinity, &w_b)
            .unwrap();
        // (x, k) ↦ (x + k(w_a − w_b), k) carries the w_b cone to the w_a cone.
        let shift = w_a.sub(&w_b);
        let mapped: Vec<LatticeVector> = cb
            .rays()
            .iter()
            .map(|r| {
                let k = r[1].clone();
                LatticeVector::new(vec![r[0].clone() + &k * &shift[0], k])
            })
            .collect();
        let remapped = Cone::from_rays(2, &mapped);
        assert_eq!(remapped, ca);
        assert_eq!(ca.is_regular(), cb.is_regular());
    }
}
