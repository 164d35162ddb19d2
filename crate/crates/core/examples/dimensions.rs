//! Categorical dimensions, Loewy layers and the semisimplified products.

use virasoro_fusion::fuscat::{cat_dim, loewy, semisimplify, ss_tensor, tensor, ModuleLabel};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = 4;
    for r in 1..=2 {
        for s in 1..=p {
            let a = ModuleLabel::simple(p, r, s)?;
            let d = cat_dim(&a);
            println!("dim {a} = {d} = {:.6}", d.to_complex().re);
        }
    }
    let pr = ModuleLabel::proj(p, 2, 1)?;
    println!("{pr}: {:?}", loewy(&pr));
    let (a, b) = (ModuleLabel::simple(p, 2, 2)?, ModuleLabel::simple(p, 1, 3)?);
    println!("{a} x {b} = {}", tensor(&a, &b)?);
    println!("  modulo negligibles: {}", semisimplify(&tensor(&a, &b)?));
    println!("  semisimplified rule: {}", ss_tensor(&a, &b)?);
    Ok(())
}
