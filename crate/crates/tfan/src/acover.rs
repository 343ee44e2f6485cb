//! Constructive coverings by affine-space charts.
//!
//! Given a divisorial fan that passes the compatibility rules and the
//! smoothness check, `build_acover` produces a new set of p-divisors with
//! the same slices and markings whose charts are all certified affine
//! spaces:
//!
//! * for every marked maximal tail cone, one existing member with
//!   nonempty degree is reused;
//! * for every unmarked maximal tail cone, two divisors are emitted,
//!   puncturing the slices at Zero and at Infinity respectively;
//! * for every maximal slice cell with non-maximal tail, one divisor is
//!   built from the cell, an empty coefficient at a puncture point, and
//!   lattice translates of the tail found in the other slices.
//!
//! Every chart carries an affine-space certificate, and the resulting
//! cover is checked to reproduce the maximal slice cells and the
//! markings of the input. All tie-breaks are deterministic, so repeated
//! runs yield identical certificates.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::cone::Cone;
use crate::divfan::{DivisorialFan, FanError, Slice, Slices, TailFan};
use crate::lattice::LatticeVector;
use crate::pdivisor::{
    AffineSpaceCertificate, Coefficient, DivisorError, PDivisor, PointOnP1,
};
use crate::polyhedron::Polyhedron;
use crate::report::Finding;

/// Why a chart is part of the cover.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ChartOrigin {
    /// An input member with this marked maximal tail and nonempty degree.
    MarkedMax(Cone),
    /// Unmarked maximal tail, slices punctured at Zero.
    UnmarkedMaxZero(Cone),
    /// Unmarked maximal tail, slices punctured at Infinity.
    UnmarkedMaxInfinity(Cone),
    /// A maximal slice cell with non-maximal tail.
    NonMaxTail {
        cell: Polyhedron,
        at: PointOnP1,
        tail: Cone,
        puncture: PointOnP1,
    },
}

impl fmt::Display for ChartOrigin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChartOrigin::MarkedMax(c) => write!(f, "marked maximal tail {c}"),
            ChartOrigin::UnmarkedMaxZero(c) => {
                write!(f, "unmarked maximal tail {c}, punctured at 0")
            }
            ChartOrigin::UnmarkedMaxInfinity(c) => {
                write!(f, "unmarked maximal tail {c}, punctured at inf")
            }
            ChartOrigin::NonMaxTail {
                cell,
                at,
                puncture,
                ..
            } => write!(f, "cell {cell} of slice {at}, punctured at {puncture}"),
        }
    }
}

/// One certified affine-space chart.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ACoverChart {
    pub divisor: PDivisor,
    pub origin: ChartOrigin,
    pub certificate: AffineSpaceCertificate,
}

/// The full cover with its global checks.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ACoverCertificate {
    pub input: DivisorialFan,
    pub charts: Vec<ACoverChart>,
    pub coverage_ok: bool,
    pub markings_ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ACoverError {
    #[error("input fan fails preconditions ({n} findings)", n = .0.len())]
    Preconditions(Vec<Finding>),
    #[error("cell {cell} of slice {at}: no lattice translate of the tail in slices {missing:?}")]
    MissingTranslates {
        cell: String,
        at: String,
        missing: Vec<String>,
    },
    #[error("chart for {origin} failed affine-space certification")]
    ChartNotCertified { origin: String },
    #[error(transparent)]
    Divisor(#[from] DivisorError),
    #[error(transparent)]
    Fan(#[from] FanError),
}

/// Lexicographically smallest lattice vector translating `tail` onto a
/// cell of the slice's face closure.
pub fn find_lattice_translate(tail: &Cone, slice: &Slice) -> Option<LatticeVector> {
    slice.lattice_translate_of_tail(tail)
}

/// Builds and certifies an affine-space covering of a smooth complete
/// divisorial fan.
pub fn build_acover(fan: &DivisorialFan) -> Result<ACoverCertificate, ACoverError> {
    let mut pre = fan.check_properness();
    pre.extend(fan.check_slice_rule());
    pre.extend(fan.check_degree_rule());
    if !pre.is_empty() {
        return Err(ACoverError::Preconditions(pre));
    }
    let smooth = fan.check_smoothness();
    if !smooth.is_empty() {
        return Err(ACoverError::Preconditions(smooth));
    }
    let tail_fan = fan.tail_fan().map_err(ACoverError::Preconditions)?;
    let slices = fan.slices();

    let mut charts = Vec::new();
    for sigma in &tail_fan.maximal {
        if tail_fan.marked.contains(sigma) {
            let member = fan
                .members()
                .iter()
                .find(|m| m.tail() == sigma && !m.degree().is_empty())
                .expect("marked cones are realized by a member with nonempty degree");
            let origin = ChartOrigin::MarkedMax(sigma.clone());
            charts.push(certify(member.clone(), origin)?);
        } else {
            for puncture in [PointOnP1::Zero, PointOnP1::Infinity] {
                let mut support = BTreeMap::new();
                support.insert(puncture.clone(), Coefficient::Empty);
                for (y, slice) in &slices.named {
                    if *y == puncture {
                        continue;
                    }
                    let cell = slice.cell_with_tail(sigma)?;
                    support.insert(y.clone(), Coefficient::Poly(cell.clone()));
                }
                let divisor = PDivisor::new(sigma.clone(), support)?;
                let origin = if puncture == PointOnP1::Zero {
                    ChartOrigin::UnmarkedMaxZero(sigma.clone())
                } else {
                    ChartOrigin::UnmarkedMaxInfinity(sigma.clone())
                };
                charts.push(certify(divisor, origin)?);
            }
        }
    }

    for (z, slice) in &slices.named {
        for cell in &slice.maximal_cells {
            let tau = cell.tail();
            if tail_fan.maximal.contains(&tau) {
                continue;
            }
            let mut translates: BTreeMap<PointOnP1, LatticeVector> = BTreeMap::new();
            let mut missing: Vec<PointOnP1> = Vec::new();
            for (y, other) in &slices.named {
                if y == z {
                    continue;
                }
                match other.lattice_translate_of_tail(&tau) {
                    Some(v) => {
                        translates.insert(y.clone(), v);
                    }
                    None => missing.push(y.clone()),
                }
            }
            let puncture = match missing.len() {
                0 => {
                    if *z == PointOnP1::Infinity {
                        PointOnP1::Zero
                    } else {
                        PointOnP1::Infinity
                    }
                }
                1 => missing[0].clone(),
                _ => {
                    return Err(ACoverError::MissingTranslates {
                        cell: cell.to_string(),
                        at: z.to_string(),
                        missing: missing.iter().map(|y| y.to_string()).collect(),
                    });
                }
            };
            let mut support = BTreeMap::new();
            support.insert(puncture.clone(), Coefficient::Empty);
            support.insert(z.clone(), Coefficient::Poly(cell.clone()));
            let tau_poly = Polyhedron::from_cone(&tau).expect("tails are pointed");
            for (y, v) in &translates {
                if *y == puncture {
                    continue;
                }
                support.insert(
                    y.clone(),
                    Coefficient::Poly(tau_poly.translate(&v.to_rational())),
                );
            }
            let divisor = PDivisor::new(tau.clone(), support)?;
            let origin = ChartOrigin::NonMaxTail {
                cell: cell.clone(),
                at: z.clone(),
                tail: tau,
                puncture,
            };
            charts.push(certify(divisor, origin)?);
        }
    }

    let coverage_ok = coverage_findings(fan, &slices, &tail_fan, &charts).is_empty();
    let markings_ok = marking_findings(&tail_fan, fan.rank(), &charts).is_empty();
    Ok(ACoverCertificate {
        input: fan.clone(),
        charts,
        coverage_ok,
        markings_ok,
    })
}

fn certify(divisor: PDivisor, origin: ChartOrigin) -> Result<ACoverChart, ACoverError> {
    match divisor.affine_space_certificate()? {
        Some(certificate) => Ok(ACoverChart {
            divisor,
            origin,
            certificate,
        }),
        None => Err(ACoverError::ChartNotCertified {
            origin: origin.to_string(),
        }),
    }
}

/// Every maximal cell of every slice must reappear as a chart coefficient
/// at the same point (tails covering the generic slice).
fn coverage_findings(
    _fan: &DivisorialFan,
    slices: &Slices,
    tail_fan: &TailFan,
    charts: &[ACoverChart],
) -> Vec<Finding> {
    let mut findings = Vec::new();
    for (y, slice) in &slices.named {
        for cell in &slice.maximal_cells {
            let covered = charts
                .iter()
                .any(|c| c.divisor.coefficient(y) == Coefficient::Poly(cell.clone()));
            if !covered {
                findings.push(Finding::new(
                    "coverage",
                    format!("slice {y}"),
                    format!("maximal cell {cell} is not a chart coefficient"),
                ));
            }
        }
    }
    for sigma in &tail_fan.maximal {
        let covered = charts.iter().any(|c| c.divisor.tail() == sigma);
        if !covered {
            findings.push(Finding::new(
                "coverage",
                "generic slice",
                format!("maximal tail {sigma} carries no chart"),
            ));
        }
    }
    findings.sort();
    findings
}

/// The chart set must reproduce the maximal tail cones and their markings.
fn marking_findings(input_tf: &TailFan, rank: usize, charts: &[ACoverChart]) -> Vec<Finding> {
    let divisors: Vec<PDivisor> = charts.iter().map(|c| c.divisor.clone()).collect();
    let chart_fan = match DivisorialFan::new(rank, divisors) {
        Ok(f) => f,
        Err(e) => return vec![Finding::new("markings", "charts", e.to_string())],
    };
    let chart_tf = match chart_fan.tail_fan() {
        Ok(tf) => tf,
        Err(f) => return f,
    };
    let mut findings = Vec::new();
    let input_max: Vec<&Cone> = input_tf.maximal.iter().collect();
    let chart_max: Vec<&Cone> = chart_tf.maximal.iter().collect();
    if input_max != chart_max {
        findings.push(Finding::new(
            "markings",
            "tail fan",
            "maximal tail cones of the cover differ from the input",
        ));
    }
    if input_tf.marked != chart_tf.marked {
        findings.push(Finding::new(
            "markings",
            "tail fan",
            format!(
                "marked cones differ: input {:?}, cover {:?}",
                input_tf
                    .marked
                    .iter()
                    .map(Cone::to_string)
                    .collect::<Vec<_>>(),
                chart_tf
                    .marked
                    .iter()
                    .map(Cone::to_string)
                    .collect::<Vec<_>>()
            ),
        ));
    }
    findings
}

/// Independent validation of an externally supplied cover: re-checks each
/// certificate, the coverage of maximal slice cells, and the markings.
pub fn verify_acover(fan: &DivisorialFan, charts: &[ACoverChart]) -> Vec<Finding> {
    let mut findings = Vec::new();
    for (i, chart) in charts.iter().enumerate() {
        if !chart.divisor.is_proper() {
            findings.push(Finding::new(
                "certificate",
                format!("chart {i}"),
                "chart divisor is not proper",
            ));
            continue;
        }
        if !chart.certificate.verify(&chart.divisor) {
            findings.push(Finding::new(
                "certificate",
                format!("chart {i}"),
                "affine-space certificate does not verify against the divisor",
            ));
        }
    }
    let slices = fan.slices();
    match fan.tail_fan() {
        Ok(tf) => {
            findings.extend(coverage_findings(fan, &slices, &tf, charts));
            findings.extend(marking_findings(&tf, fan.rank(), charts));
        }
        Err(f) => findings.extend(f),
    }
    findings.sort();
    findings
}
