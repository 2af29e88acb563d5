//! Time each stage of the main-identity check for one root system.
//!
//! cargo run --release --example timing -- 8A1 3 3

use rootlift::lifts::*;
use std::time::Instant;

fn main() {
    let name = std::env::args().nth(1).unwrap_or("A4".into());
    let q: i64 = std::env::args().nth(2).map_or(3, |s| s.parse().unwrap());
    let xi: u32 = std::env::args().nth(3).map_or(3, |s| s.parse().unwrap());
    let spec = name.parse().expect("root system");
    let plan = PrecisionPlan::new(q, xi);

    let t0 = Instant::now();
    let (theta, psi) = theta_and_psi(&spec, &plan).unwrap();
    eprintln!("theta + psi {:?} ({} + {} terms)", t0.elapsed(), theta.series.num_terms(), psi.series.num_terms());
    let input = borcherds_input_from_psi(psi).unwrap();

    let t0 = Instant::now();
    let g = gritsenko_lift(&theta, q, xi).unwrap();
    eprintln!("G {:?} ({} terms)", t0.elapsed(), g.num_terms());

    let t0 = Instant::now();
    let b = borcherds_product(&input, q, xi).unwrap();
    eprintln!("B {:?} ({} terms)", t0.elapsed(), b.num_terms());

    let c = g.compare(&b).unwrap();
    eprintln!("compared {} mismatches {}", c.compared, c.mismatches.len());
}
