//! Fusion table of the simple and projective modules with r <= 2.

use virasoro_fusion::fuscat::tensor;
use virasoro_fusion::oracle::all_labels;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = 3;
    let labels = all_labels(p, 2);
    for (i, a) in labels.iter().enumerate() {
        for b in &labels[i..] {
            println!("{a} x {b} = {}", tensor(a, b)?);
        }
    }
    Ok(())
}
