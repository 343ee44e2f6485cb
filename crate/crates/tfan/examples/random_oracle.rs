//! Cross-checking the fan smoothness test against classical toric
//! smoothness on a corpus of random complete fans: the downgrade of a fan
//! is smooth exactly when every maximal cone is regular, and for smooth
//! inputs the cover has one chart per maximal cone.
//!
//! Run with: cargo run --release --example random_oracle [-- seed]

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tfan::acover::build_acover;
use tfan::toric;

fn main() {
    let seed: u64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(42);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut smooth = 0usize;
    let mut singular = 0usize;
    let mut checked = 0usize;

    for i in 0..60 {
        let fan = match i % 3 {
            0 => toric::random_complete_fan_rank2(&mut rng),
            1 => toric::random_smooth_fan_rank2(&mut rng),
            _ => {
                if i % 2 == 0 {
                    toric::random_complete_fan_rank3(&mut rng)
                } else {
                    toric::random_smooth_fan_rank3(&mut rng)
                }
            }
        };
        assert!(fan.is_complete());
        let divisorial = fan.downgrade().unwrap();
        let toric_smooth = fan.is_smooth();
        let fan_smooth = divisorial.check_smoothness().is_empty();
        assert_eq!(toric_smooth, fan_smooth, "oracle disagreement");
        checked += 1;
        if toric_smooth {
            smooth += 1;
            let cover = build_acover(&divisorial).unwrap();
            assert_eq!(cover.charts.len(), fan.maximal_cones().len());
            assert!(cover.coverage_ok && cover.markings_ok);
        } else {
            singular += 1;
        }
    }
    println!(
        "checked {checked} random complete fans (seed {seed}): \
         {smooth} smooth, {singular} singular, smoothness oracle agreed on all"
    );
    println!("every smooth downgrade was covered with one chart per maximal cone");
}
