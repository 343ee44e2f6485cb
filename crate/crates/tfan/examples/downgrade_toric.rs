//! Downgrading a complete toric fan to a divisorial fan on P¹: each
//! maximal cone is sliced at heights ±1 and 0 along the last coordinate.
//!
//! Run with: cargo run --example downgrade_toric

use tfan::format;
use tfan::toric;

fn main() {
    let fan = toric::hirzebruch_fan(2);
    println!("toric fan (second Hirzebruch surface):");
    for cone in fan.maximal_cones() {
        println!("  {cone}");
    }
    println!("complete: {}, smooth: {}", fan.is_complete(), fan.is_smooth());

    let divisorial = fan.downgrade().expect("the fan is complete");
    println!("\ndowngraded members:");
    for (i, member) in divisorial.members().iter().enumerate() {
        println!("  member {i}: {member}");
    }

    let slices = divisorial.slices();
    println!("\nslices:");
    for (point, slice) in &slices.named {
        println!("  at {point}:");
        for cell in &slice.maximal_cells {
            println!("    {cell}");
        }
    }
    println!("  generic (tail fan):");
    for cell in &slices.generic.maximal_cells {
        println!("    {cell}");
    }

    let tail_fan = divisorial.tail_fan().expect("tails form a fan");
    println!("\nmarked maximal tails:");
    for cone in &tail_fan.marked {
        println!("  {cone}");
    }

    println!("\nfan document:\n{}", format::fan_to_string(&divisorial));
}
