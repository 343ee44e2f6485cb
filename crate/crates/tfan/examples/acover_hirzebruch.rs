//! The full affine-space covering of the first Hirzebruch surface via its
//! divisorial fan: one marked chart, two punctured charts for the unmarked
//! maximal tail, and one chart for the bounded segment cell.
//!
//! Run with: cargo run --example acover_hirzebruch

use tfan::acover::{build_acover, verify_acover};
use tfan::toric;

fn main() {
    let fan = toric::hirzebruch_fan(1).downgrade().unwrap();
    let cover = build_acover(&fan).expect("smooth complete input");

    println!("{} charts:", cover.charts.len());
    for (i, chart) in cover.charts.iter().enumerate() {
        println!("chart {i}: {}", chart.origin);
        println!("  divisor:     {}", chart.divisor);
        println!(
            "  certificate: cone {} over ({}, {}), w0 = {}, w_inf = {}",
            chart.certificate.cone,
            chart.certificate.y0,
            chart.certificate.y_inf,
            chart.certificate.w0,
            chart.certificate.w_inf,
        );
    }
    println!("coverage_ok: {}", cover.coverage_ok);
    println!("markings_ok: {}", cover.markings_ok);

    // The validator accepts its own output...
    assert!(verify_acover(&fan, &cover.charts).is_empty());
    // ...and notices a deleted chart.
    let mut broken = cover.charts.clone();
    broken.remove(0);
    println!("\nafter deleting the marked chart:");
    for finding in verify_acover(&fan, &broken) {
        println!("  {finding}");
    }
}
