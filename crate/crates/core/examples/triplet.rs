//! Induction to the triplet algebra W(p), its fusion rules and
//! restriction back to Virasoro modules.

use virasoro_fusion::fuscat::ModuleLabel;
use virasoro_fusion::triplet::{
    all_triplet_labels, check_monoidal, induce, restrict, triplet_tensor_sourced, TripletLabel,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = 3;
    for r in 1..=4 {
        let a = ModuleLabel::simple(p, r, 2)?;
        println!("induce {a} = {}", induce(&a));
    }
    let w12 = TripletLabel::w(p, 1, 2)?;
    for b in all_triplet_labels(p) {
        let (d, src) = triplet_tensor_sourced(&w12, &b)?;
        println!("{w12} x {b} = {d}  [{src:?}]");
    }
    println!(
        "restrict W:2,1 = {:?}",
        restrict(&TripletLabel::w(p, 2, 1)?, 3)
    );
    let s = check_monoidal(p, 4);
    println!(
        "monoidal check: {} cases, {} failures",
        s.count,
        s.failures.len()
    );
    Ok(())
}
