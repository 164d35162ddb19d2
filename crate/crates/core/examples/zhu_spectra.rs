//! Lowest conformal weights of L_{1,2} and L_{2,1} times L_{r,s}, read off
//! from the Zhu algebra bimodule relations.

use virasoro_fusion::verma::CentralData;
use virasoro_fusion::zhu::{logarithmic_flag, top_level_spectrum, BimodPoly};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = 3;
    let cd = CentralData::new(p)?;
    for g in [(1, 2), (2, 1)] {
        let bp = BimodPoly::for_generator(&cd, g.0, g.1)?;
        println!("f_{:?}(x, y) = {}", g, bp.f);
        for r in 1..=3 {
            for s in 1..=p as i64 {
                let spec = top_level_spectrum(&bp, &cd, r, s)?;
                println!("  with L({r},{s}): {:?}", spec.roots);
            }
        }
    }
    for s in 1..=p as i64 {
        println!(
            "double root for L(1,2) x L(1,{s}): {}",
            logarithmic_flag(&cd, 1, s)?
        );
    }
    Ok(())
}
