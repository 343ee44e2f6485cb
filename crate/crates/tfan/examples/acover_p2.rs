//! The covering of the projective plane recovered from its downgrade:
//! three charts, matching the three standard affine charts.
//!
//! Run with: cargo run --example acover_p2

use tfan::acover::build_acover;
use tfan::format;
use tfan::toric;

fn main() {
    let fan = toric::projective_plane_fan().downgrade().unwrap();
    let cover = build_acover(&fan).unwrap();
    assert_eq!(cover.charts.len(), 3);
    for chart in &cover.charts {
        println!("{}", chart.origin);
        println!("  cone {}", chart.certificate.cone);
    }
    println!(
        "coverage_ok: {}, markings_ok: {}",
        cover.coverage_ok, cover.markings_ok
    );
    println!("\ncertificate payload:");
    println!(
        "{}",
        serde_json::to_string_pretty(&format::cover_to_json(&cover)).unwrap()
    );
}
