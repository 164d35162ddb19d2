//! Runs the fusion-ring sweeps and prints one JSON line per check.

use virasoro_fusion::oracle::check_ring_axioms;

fn main() {
    let p: u32 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(3);
    let rmax: u32 = std::env::args()
        .nth(2)
        .and_then(|s| s.parse().ok())
        .unwrap_or(4);
    let rep = check_ring_axioms(p, rmax);
    print!("{}", rep.to_json_lines());
    println!("{}", rep.summary_line());
}
