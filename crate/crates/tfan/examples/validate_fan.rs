//! Loading a fan document and checking properness, the slice rule, and
//! the degree rule, with per-violation findings.
//!
//! Run with: cargo run --example validate_fan [-- path/to/fan.json]

use tfan::format;

fn main() {
    let path = std::env::args().nth(1).unwrap_or_else(|| {
        format!("{}/fixtures/f1_fan.json", env!("CARGO_MANIFEST_DIR"))
    });
    let text = std::fs::read_to_string(&path).expect("readable fan file");
    let fan = match format::parse_fan_document(&text) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("parse error {e}");
            std::process::exit(2);
        }
    };
    println!(
        "loaded fan: rank {}, {} members, points {:?}",
        fan.rank(),
        fan.members().len(),
        fan.point_universe()
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
    );

    let mut findings = fan.check_properness();
    findings.extend(fan.check_slice_rule());
    findings.extend(fan.check_degree_rule());
    if let Err(f) = fan.tail_fan() {
        findings.extend(f);
    }
    findings.sort();

    if findings.is_empty() {
        println!("all compatibility rules hold");
    } else {
        for f in &findings {
            println!("{f}");
        }
        std::process::exit(1);
    }
}
