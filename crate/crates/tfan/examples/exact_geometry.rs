//! Tour of the exact-geometry kernel: lattice normal forms, cones, and
//! polyhedra with their dual descriptions.
//!
//! Run with: cargo run --example exact_geometry

use tfan::lattice::{self, IntMatrix, LatticeVector, RationalVector};
use tfan::{Cone, Polyhedron};

fn main() {
    // Smith normal form with the recorded transforms.
    let m = IntMatrix::from_i64_rows(&[&[2, 0], &[0, 3]]);
    let snf = lattice::smith_normal_form(&m);
    println!("smith normal form of\n{m}is\n{}", snf.s);
    println!(
        "invariant factors: {:?}",
        snf.invariant_factors()
            .iter()
            .map(|d| d.to_string())
            .collect::<Vec<_>>()
    );
    assert_eq!(snf.u.mul(&m).mul(&snf.v), snf.s);

    // Primitivity and lattice-basis extension.
    let v = LatticeVector::from_i64(&[-6, 9]);
    println!("primitive({v}) = {}", v.primitive().unwrap());
    let part = [
        LatticeVector::from_i64(&[1, 1]),
        LatticeVector::from_i64(&[0, -1]),
    ];
    println!(
        "{{(1,1), (0,-1)}} extends to a basis: {}",
        lattice::extends_to_basis(&part).unwrap()
    );

    // Cones: canonical extremal rays, facet normals, regularity.
    let cone = Cone::from_rays(
        2,
        &[
            LatticeVector::from_i64(&[1, 1]),
            LatticeVector::from_i64(&[1, 0]), // absorbed: interior direction
            LatticeVector::from_i64(&[0, -1]),
        ],
    );
    println!("cone = {cone}");
    println!(
        "facet normals: {:?}",
        cone.facet_normals()
            .iter()
            .map(|a| a.to_string())
            .collect::<Vec<_>>()
    );
    println!("regular: {:?}", cone.is_regular());

    // Polyhedra: Minkowski decomposition, sums, intersections, faces.
    let p = Polyhedron::from_generators(
        2,
        &[
            RationalVector::from_i64(&[0, 0]),
            RationalVector::from_i64(&[1, 0]),
        ],
        &[LatticeVector::from_i64(&[0, 1])],
    )
    .unwrap();
    println!("p = {p}");
    println!("tail(p) = {}", p.tail());
    let q = Polyhedron::from_generators(2, &[RationalVector::from_i64(&[2, 1])], &[]).unwrap();
    let sum = p.minkowski_sum(&q).unwrap();
    println!("p + {{(2,1)}} = {sum}");
    for (a, b) in sum.inequalities() {
        println!("  facet: <{a}, x> >= {b}");
    }
    for face in sum.facets() {
        println!("  face selected by {}: {}", face.selecting_normal, face.polyhedron);
    }
    let strip = Polyhedron::from_generators(
        2,
        &[
            RationalVector::from_i64(&[2, 0]),
            RationalVector::from_i64(&[2, 5]),
        ],
        &[],
    )
    .unwrap();
    match sum.intersect(&strip).unwrap() {
        Some(i) => println!("sum ∩ segment = {i}"),
        None => println!("sum ∩ segment = empty"),
    }
}
