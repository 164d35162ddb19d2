//! Singular vectors of the Verma modules V(h_{r,s}) at level rs.

use virasoro_fusion::verma::{singular_vectors, CentralData};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for p in 2..=4 {
        let cd = CentralData::new(p)?;
        println!("p = {p}, c = {}", cd.c);
        for (r, s) in [(1, 2), (2, 1), (1, 3)] {
            let h = cd.h(r, s);
            for v in singular_vectors(&cd, &h, (r * s) as u32)? {
                println!("  ({r},{s}) h = {h}: {v}");
            }
        }
    }
    Ok(())
}
