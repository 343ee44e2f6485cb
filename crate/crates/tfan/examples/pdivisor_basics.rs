//! Polyhedral divisors on P¹: degree, properness, the downgrade cone with
//! its classified extremal rays, smoothness, and the affine-space
//! certificate, on the running half-line example
//! D = [1,∞)·0 + [0,∞)·∞ with tail cone Q≥0.
//!
//! Run with: cargo run --example pdivisor_basics

use std::collections::BTreeMap;

use tfan::lattice::{LatticeVector, RationalVector};
use tfan::pdivisor::{Coefficient, PDivisor, PointOnP1};
use tfan::{Cone, Polyhedron};

fn main() {
    let up = Cone::from_rays(1, &[LatticeVector::from_i64(&[1])]);
    let half_line = |a: i64| {
        Polyhedron::from_generators(
            1,
            &[RationalVector::from_i64(&[a])],
            &[LatticeVector::from_i64(&[1])],
        )
        .unwrap()
    };

    let mut support = BTreeMap::new();
    support.insert(PointOnP1::Zero, Coefficient::Poly(half_line(1)));
    support.insert(PointOnP1::Infinity, Coefficient::Poly(half_line(0)));
    let divisor = PDivisor::new(up, support).unwrap();

    println!("divisor: {divisor}");
    println!("degree:  {}", divisor.degree());
    println!("proper:  {}", divisor.is_proper());

    let (y0, y_inf) = divisor.choose_distinguished().unwrap();
    let w0 = divisor.default_w0(&y0, &y_inf).unwrap();
    println!("distinguished points: ({y0}, {y_inf}), shift w0 = {w0}");

    let cone = divisor.downgrade_cone(&y0, &y_inf, &w0).unwrap();
    println!("downgrade cone: {cone} (dim {})", cone.dim());
    for ray in divisor.classified_extremal_rays(&y0, &y_inf, &w0).unwrap() {
        println!("  extremal ray {} from {:?}", ray.ray, ray.kind);
    }

    println!("smooth: {:?}", divisor.is_smooth());
    match divisor.affine_space_certificate().unwrap() {
        Some(cert) => {
            println!(
                "affine-space certificate: cone {} is regular and full, so the chart is A^{}",
                cert.cone,
                divisor.rank() + 1
            );
            assert!(cert.verify(&divisor));
        }
        None => println!("no affine-space certificate"),
    }

    // An empty coefficient makes the degree empty; the divisor stays proper.
    let mut support = BTreeMap::new();
    support.insert(PointOnP1::Zero, Coefficient::Empty);
    let punctured = PDivisor::new(
        Cone::from_rays(1, &[LatticeVector::from_i64(&[1])]),
        support,
    )
    .unwrap();
    println!(
        "punctured divisor {punctured}: degree {}, proper {}",
        punctured.degree(),
        punctured.is_proper()
    );
}
