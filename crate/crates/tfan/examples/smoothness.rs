//! Fan-level smoothness: a smooth Hirzebruch downgrade next to a singular
//! weighted-plane downgrade, with the findings explaining the failure.
//!
//! Run with: cargo run --example smoothness

use tfan::toric;

fn main() {
    // The second Hirzebruch surface is smooth even though one slice cell
    // has a half-integral vertex.
    let smooth = toric::hirzebruch_fan(2).downgrade().unwrap();
    println!("Hirzebruch-2 downgrade:");
    let findings = smooth.check_smoothness();
    if findings.is_empty() {
        println!("  smooth");
    }
    for f in &findings {
        println!("  {f}");
    }

    // The weighted plane with rays (1,0), (0,1), (-1,-2) has a singular
    // chart; the downgrade detects it through the coefficient cones.
    let singular = toric::fan_from_ray_cycle(&[&[1, 0], &[0, 1], &[-1, -2]])
        .downgrade()
        .unwrap();
    println!("weighted-plane downgrade:");
    let findings = singular.check_smoothness();
    if findings.is_empty() {
        println!("  smooth");
    }
    for f in &findings {
        println!("  {f}");
    }

    // Per-member detail for the singular input.
    println!("member-by-member:");
    for (i, m) in singular.members().iter().enumerate() {
        println!("  member {i}: {m}");
        println!("    smooth: {:?}", m.is_smooth());
    }
}
