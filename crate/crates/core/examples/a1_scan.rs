//! Finite-horizon scan of a_1 values.
//!
//! `cargo run --release --example a1_scan -- 12` scans the rationals in [1, 2]
//! with denominator at most 6 up to the given horizon.

use lieconf::exactpoly::Scalar;
use lieconf::grading::{rational_grid, scan_grid, ScanOptions};

fn main() {
    let horizon = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(8);
    let grid = rational_grid(&Scalar::from_int(1), &Scalar::from_int(2), 6);
    for r in scan_grid(&grid, horizon, &ScanOptions::default()) {
        match &r.witness_sequence {
            Some(seq) => {
                let seq: Vec<String> = seq.iter().map(Scalar::to_string).collect();
                println!("{:>5}  admissible  {}", r.a1.to_string(), seq.join(" "));
            }
            None => println!("{:>5}  rejected at grade {}", r.a1.to_string(), r.rejection_depth.unwrap_or(0)),
        }
    }
}
