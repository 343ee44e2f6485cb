//! Divisorial fans: finite compatible sets of p-divisors on P¹.
//!
//! A divisorial fan encodes a complete T-variety of complexity one through
//! its slices (the coefficient subdivisions of N_Q at each point of P¹)
//! and the markings of its tail fan. The compatibility rules checked here:
//!
//! * slice rule — every slice is a complete polyhedral subdivision of N_Q,
//!   decided by the facet-pairing criterion (full-dimensional maximal
//!   cells, every codimension-one face shared by exactly two of them);
//! * degree rule — any two members agree on the degree inside the
//!   intersection of their tails.
//!
//! Fan-level smoothness combines the per-divisor criterion with the
//! marked/unmarked conditions on maximal tail cones.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::cone::Cone;
use crate::lattice::LatticeVector;
use crate::pdivisor::{Coefficient, DivisorError, PDivisor, PointOnP1};
use crate::polyhedron::Polyhedron;
use crate::report::Finding;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FanError {
    #[error("fan has no members")]
    Empty,
    #[error("member {index} has rank {got}, expected {expected}")]
    MemberRank {
        index: usize,
        expected: usize,
        got: usize,
    },
    #[error("slice at {point}: expected one cell with tail {tail}, found {found}")]
    SliceCellForTail {
        point: String,
        tail: String,
        found: usize,
    },
    #[error("tail cones do not form a fan")]
    TailsNotFan,
    #[error(transparent)]
    Divisor(#[from] DivisorError),
}

/// Where a slice sits: at a named point, or at any of the infinitely many
/// unnamed (generic) points, which all share the tail fan as their slice.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum SlicePoint {
    At(PointOnP1),
    Generic,
}

impl fmt::Display for SlicePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SlicePoint::At(y) => write!(f, "{y}"),
            SlicePoint::Generic => write!(f, "generic"),
        }
    }
}

/// The coefficients of all members over one point: a polyhedral complex.
#[derive(Clone, Debug)]
pub struct Slice {
    pub at: SlicePoint,
    /// All distinct nonempty coefficient polyhedra.
    pub cells: Vec<Polyhedron>,
    /// Cells not contained in any other cell.
    pub maximal_cells: Vec<Polyhedron>,
    /// Face closure of the maximal cells (contains them).
    pub closure: Vec<Polyhedron>,
}

impl Slice {
    fn build(at: SlicePoint, cells: BTreeSet<Polyhedron>) -> Slice {
        let cells: Vec<Polyhedron> = cells.into_iter().collect();
        let maximal_cells: Vec<Polyhedron> = cells
            .iter()
            .filter(|p| {
                !cells
                    .iter()
                    .any(|q| q != *p && q.contains_polyhedron(p))
            })
            .cloned()
            .collect();
        let mut closure = BTreeSet::new();
        for m in &maximal_cells {
            closure.extend(m.face_closure());
        }
        Slice {
            at,
            cells,
            maximal_cells,
            closure: closure.into_iter().collect(),
        }
    }

    /// Completeness and common-face diagnostics for this slice.
    pub fn check_complete(&self, rank: usize) -> Vec<Finding> {
        let mut findings = Vec::new();
        let loc = format!("slice {}", self.at);
        if self.maximal_cells.is_empty() {
            findings.push(Finding::new("slice-rule", loc, "slice has no cells"));
            return findings;
        }
        for (i, p) in self.cells.iter().enumerate() {
            for q in self.cells.iter().skip(i + 1) {
                match p.intersect(q) {
                    Ok(None) => {}
                    Ok(Some(common)) => {
                        if !common.is_face_of(p) || !common.is_face_of(q) {
                            findings.push(Finding::new(
                                "slice-rule",
                                loc.clone(),
                                format!("cells {p} and {q} intersect in {common}, not a common face"),
                            ));
                        }
                    }
                    Err(e) => findings.push(Finding::new("slice-rule", loc.clone(), e.to_string())),
                }
            }
        }
        for m in &self.maximal_cells {
            if m.dim() != rank {
                findings.push(Finding::new(
                    "slice-rule",
                    loc.clone(),
                    format!("maximal cell {m} is not full-dimensional"),
                ));
            }
        }
        // Facet pairing: complete supports have every wall shared by two
        // full-dimensional cells; boundaries show up as count one.
        let mut facets = BTreeSet::new();
        for m in &self.maximal_cells {
            for f in m.facets() {
                facets.insert(f.polyhedron);
            }
        }
        for f in facets {
            let count = self
                .maximal_cells
                .iter()
                .filter(|m| m.contains_polyhedron(&f))
                .count();
            if count != 2 {
                findings.push(Finding::new(
                    "slice-rule",
                    loc.clone(),
                    format!("facet {f} lies in {count} maximal cells, expected 2"),
                ));
            }
        }
        findings
    }

    /// The unique cell with the given (maximal) tail cone.
    pub fn cell_with_tail(&self, tail: &Cone) -> Result<&Polyhedron, FanError> {
        let hits: Vec<&Polyhedron> = self
            .cells
            .iter()
            .filter(|p| p.tail() == *tail)
            .collect();
        if hits.len() == 1 {
            Ok(hits[0])
        } else {
            Err(FanError::SliceCellForTail {
                point: self.at.to_string(),
                tail: tail.to_string(),
                found: hits.len(),
            })
        }
    }

    /// Lexicographically smallest lattice vector v with v + tail a cell of
    /// the face closure.
    pub fn lattice_translate_of_tail(&self, tail: &Cone) -> Option<LatticeVector> {
        self.closure
            .iter()
            .filter_map(|p| p.lattice_translate_of(tail))
            .min()
    }
}

/// All slices of a fan: one per named point plus the generic slice.
#[derive(Clone, Debug)]
pub struct Slices {
    pub named: BTreeMap<PointOnP1, Slice>,
    pub generic: Slice,
}

impl Slices {
    pub fn iter(&self) -> impl Iterator<Item = &Slice> {
        self.named.values().chain(std::iter::once(&self.generic))
    }
}

/// The fan generated by the member tails, plus the marked maximal cones.
#[derive(Clone, Debug)]
pub struct TailFan {
    /// Face closure of all member tails, sorted.
    pub cones: Vec<Cone>,
    /// Tails not properly contained in another tail.
    pub maximal: Vec<Cone>,
    /// Maximal cones realized by a member with nonempty degree.
    pub marked: BTreeSet<Cone>,
}

/// A finite set of p-divisors with common rank.
///
/// Construction is permissive: properness and the compatibility rules are
/// checks, not invariants, so that invalid input can be loaded and
/// diagnosed.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DivisorialFan {
    rank: usize,
    members: Vec<PDivisor>,
    point_universe: BTreeSet<PointOnP1>,
}

impl DivisorialFan {
    pub fn new(rank: usize, members: Vec<PDivisor>) -> Result<DivisorialFan, FanError> {
        DivisorialFan::with_extra_points(rank, members, BTreeSet::new())
    }

    /// Like `new`, with additional named points forced into the universe.
    /// Their slices equal the generic slice unless some member lists them.
    pub fn with_extra_points(
        rank: usize,
        members: Vec<PDivisor>,
        extra: BTreeSet<PointOnP1>,
    ) -> Result<DivisorialFan, FanError> {
        if members.is_empty() {
            return Err(FanError::Empty);
        }
        for (index, m) in members.iter().enumerate() {
            if m.rank() != rank {
                return Err(FanError::MemberRank {
                    index,
                    expected: rank,
                    got: m.rank(),
                });
            }
        }
        let mut point_universe: BTreeSet<PointOnP1> =
            [PointOnP1::Zero, PointOnP1::Infinity].into_iter().collect();
        point_universe.extend(extra);
        for m in &members {
            point_universe.extend(m.support().keys().cloned());
        }
        Ok(DivisorialFan {
            rank,
            members,
            point_universe,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn members(&self) -> &[PDivisor] {
        &self.members
    }

    /// Union of the member supports together with Zero and Infinity.
    pub fn point_universe(&self) -> &BTreeSet<PointOnP1> {
        &self.point_universe
    }

    /// Adds all pairwise coefficient-wise intersections as members
    /// (deduplicated). Used by the opt-in intersection-closure mode.
    pub fn close_under_intersections(&self) -> Result<DivisorialFan, FanError> {
        let mut members = self.members.clone();
        let mut known: BTreeSet<PDivisor> = members.iter().cloned().collect();
        for i in 0..self.members.len() {
            for j in i + 1..self.members.len() {
                let m = intersect_divisors(&self.members[i], &self.members[j])?;
                if known.insert(m.clone()) {
                    members.push(m);
                }
            }
        }
        DivisorialFan::new(self.rank, members)
    }

    pub fn slice_at(&self, y: &PointOnP1) -> Slice {
        let mut cells = BTreeSet::new();
        for m in &self.members {
            if let Coefficient::Poly(p) = m.coefficient(y) {
                cells.insert(p);
            }
        }
        Slice::build(SlicePoint::At(y.clone()), cells)
    }

    /// The slice at any unnamed point: the member tails themselves.
    pub fn generic_slice(&self) -> Slice {
        let mut cells = BTreeSet::new();
        for m in &self.members {
            cells.insert(m.tail_polyhedron());
        }
        Slice::build(SlicePoint::Generic, cells)
    }

    pub fn slices(&self) -> Slices {
        let named = self
            .point_universe
            .iter()
            .map(|y| (y.clone(), self.slice_at(y)))
            .collect();
        Slices {
            named,
            generic: self.generic_slice(),
        }
    }

    /// Every member must be proper.
    pub fn check_properness(&self) -> Vec<Finding> {
        let mut findings = Vec::new();
        for (i, m) in self.members.iter().enumerate() {
            if !m.is_proper() {
                findings.push(Finding::new(
                    "properness",
                    format!("member {i}"),
                    format!("degree {} is not a proper subset of the tail cone", m.degree()),
                ));
            }
        }
        findings
    }

    /// Slice rule: every slice, named and generic, is a complete
    /// polyhedral subdivision of N_Q.
    pub fn check_slice_rule(&self) -> Vec<Finding> {
        let slices = self.slices();
        let mut findings: Vec<Finding> = slices
            .named
            .par_iter()
            .flat_map(|(_, s)| s.check_complete(self.rank))
            .collect();
        findings.extend(slices.generic.check_complete(self.rank));
        findings.sort();
        findings
    }

    /// Degree rule: for members D, D' and τ = tail D ∩ tail D',
    /// τ ∩ deg D = τ ∩ deg D'.
    pub fn check_degree_rule(&self) -> Vec<Finding> {
        let pairs: Vec<(usize, usize)> = (0..self.members.len())
            .flat_map(|i| (i + 1..self.members.len()).map(move |j| (i, j)))
            .collect();
        let mut findings: Vec<Finding> = pairs
            .par_iter()
            .filter_map(|&(i, j)| {
                let a = &self.members[i];
                let b = &self.members[j];
                let tau = a
                    .tail()
                    .intersect(b.tail())
                    .expect("members share one rank");
                let lhs = degree_restricted_to(a, &tau);
                let rhs = degree_restricted_to(b, &tau);
                if lhs == rhs {
                    None
                } else {
                    Some(Finding::new(
                        "degree-rule",
                        format!("members {i},{j}"),
                        format!(
                            "on common tail {tau}: {} vs {}",
                            coefficient_label(&lhs),
                            coefficient_label(&rhs)
                        ),
                    ))
                }
            })
            .collect();
        findings.sort();
        findings
    }

    /// The fan generated by the member tails; fails with findings when two
    /// tails intersect in a non-face.
    pub fn tail_fan(&self) -> Result<TailFan, Vec<Finding>> {
        let tails: Vec<Cone> = {
            let set: BTreeSet<Cone> = self.members.iter().map(|m| m.tail().clone()).collect();
            set.into_iter().collect()
        };
        let mut findings = Vec::new();
        for (i, a) in tails.iter().enumerate() {
            for b in tails.iter().skip(i + 1) {
                let common = a.intersect(b).expect("tails share one rank");
                if !common.is_face_of(a) || !common.is_face_of(b) {
                    findings.push(Finding::new(
                        "tail-fan",
                        format!("tails {a} and {b}"),
                        format!("intersection {common} is not a common face"),
                    ));
                }
            }
        }
        if !findings.is_empty() {
            return Err(findings);
        }
        let mut cones = BTreeSet::new();
        for t in &tails {
            cones.extend(t.face_closure());
        }
        let maximal: Vec<Cone> = tails
            .iter()
            .filter(|t| !tails.iter().any(|u| u != *t && u.contains_cone(t)))
            .cloned()
            .collect();
        let marked = self.marked_cones(&maximal);
        Ok(TailFan {
            cones: cones.into_iter().collect(),
            maximal,
            marked,
        })
    }

    /// σ is marked iff some member with tail σ has nonempty degree.
    fn marked_cones(&self, maximal: &[Cone]) -> BTreeSet<Cone> {
        maximal
            .iter()
            .filter(|sigma| {
                self.members
                    .iter()
                    .any(|m| m.tail() == *sigma && !m.degree().is_empty())
            })
            .cloned()
            .collect()
    }

    /// Fan-level smoothness: every member smooth, and per maximal tail σ
    /// the marked/unmarked coefficient conditions hold.
    pub fn check_smoothness(&self) -> Vec<Finding> {
        let mut findings = Vec::new();
        let tail_fan = match self.tail_fan() {
            Ok(tf) => tf,
            Err(f) => return f,
        };
        let slices = self.slices();

        let mut member_findings: Vec<(usize, Finding)> = self
            .members
            .par_iter()
            .enumerate()
            .filter_map(|(i, m)| match m.is_smooth() {
                Ok(true) => None,
                Ok(false) => Some((
                    i,
                    Finding::new(
                        "smoothness",
                        format!("member {i}"),
                        "the affine chart of this divisor is singular",
                    ),
                )),
                Err(e) => Some((
                    i,
                    Finding::new("smoothness", format!("member {i}"), e.to_string()),
                )),
            })
            .collect();
        member_findings.sort();
        findings.extend(member_findings.into_iter().map(|(_, f)| f));

        for sigma in &tail_fan.maximal {
            let marked = tail_fan.marked.contains(sigma);
            let mut missing_translates = 0usize;
            for (y, slice) in &slices.named {
                let cell = match slice.cell_with_tail(sigma) {
                    Ok(c) => c,
                    Err(e) => {
                        findings.push(Finding::new(
                            "smoothness",
                            format!("slice {y}"),
                            e.to_string(),
                        ));
                        continue;
                    }
                };
                if cell.lattice_translate_of(sigma).is_none() {
                    missing_translates += 1;
                    if !marked {
                        findings.push(Finding::new(
                            "smoothness",
                            format!("slice {y}"),
                            format!(
                                "unmarked maximal tail {sigma}: cell {cell} is not a lattice translate"
                            ),
                        ));
                    }
                }
            }
            if marked && missing_translates > 2 {
                findings.push(Finding::new(
                    "smoothness",
                    format!("tail {sigma}"),
                    format!(
                        "marked maximal tail has {missing_translates} non-translate coefficients, at most 2 allowed"
                    ),
                ));
            }
            if !marked {
                match sigma.is_regular() {
                    Ok(true) => {}
                    Ok(false) => findings.push(Finding::new(
                        "smoothness",
                        format!("tail {sigma}"),
                        "unmarked maximal tail cone is not regular",
                    )),
                    Err(e) => findings.push(Finding::new(
                        "smoothness",
                        format!("tail {sigma}"),
                        e.to_string(),
                    )),
                }
            }
        }
        findings.sort();
        findings
    }
}

/// Open-subdivisor test: every coefficient of `inner` is a face of the
/// matching coefficient of `outer`, and deg inner = deg outer ∩ tail inner.
pub fn is_open_subdivisor(inner: &PDivisor, outer: &PDivisor) -> Result<bool, DivisorError> {
    if inner.rank() != outer.rank() {
        return Ok(false);
    }
    let mut points: BTreeSet<PointOnP1> = inner.support().keys().cloned().collect();
    points.extend(outer.support().keys().cloned());
    for y in &points {
        if !inner.coefficient(y).is_face_of(&outer.coefficient(y)) {
            return Ok(false);
        }
    }
    // Implicit coefficients: tail(inner) must be a face of tail(outer).
    if !inner.tail().is_face_of(outer.tail()) {
        return Ok(false);
    }
    let expected = degree_restricted_to(outer, inner.tail());
    Ok(inner.degree() == expected)
}

/// Coefficient-wise intersection of two divisors.
pub fn intersect_divisors(a: &PDivisor, b: &PDivisor) -> Result<PDivisor, DivisorError> {
    let tail = a
        .tail()
        .intersect(b.tail())
        .expect("divisors share one rank");
    let mut points: BTreeSet<PointOnP1> = a.support().keys().cloned().collect();
    points.extend(b.support().keys().cloned());
    let mut support = BTreeMap::new();
    for y in points {
        let ca = a.coefficient(&y);
        let cb = b.coefficient(&y);
        let c = match (ca, cb) {
            (Coefficient::Empty, _) | (_, Coefficient::Empty) => Coefficient::Empty,
            (Coefficient::Poly(p), Coefficient::Poly(q)) => match p.intersect(&q)? {
                None => Coefficient::Empty,
                Some(r) => Coefficient::Poly(r),
            },
        };
        support.insert(y, c);
    }
    PDivisor::new(tail, support)
}

/// deg D ∩ τ as a coefficient (empty degree intersects as empty).
pub fn degree_restricted_to(d: &PDivisor, tau: &Cone) -> Coefficient {
    match d.degree() {
        Coefficient::Empty => Coefficient::Empty,
        Coefficient::Poly(deg) => {
            let tau_poly = Polyhedron::from_cone(tau).expect("pointed tail intersection");
            match deg.intersect(&tau_poly).expect("same rank") {
                None => Coefficient::Empty,
                Some(p) => Coefficient::Poly(p),
            }
        }
    }
}

fn coefficient_label(c: &Coefficient) -> String {
    match c {
        Coefficient::Empty => "empty".to_string(),
        Coefficient::Poly(p) => p.to_string(),
    }
}
