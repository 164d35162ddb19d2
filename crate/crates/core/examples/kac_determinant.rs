//! Gram determinants vanish exactly at the weights of the embedding chain.

use virasoro_fusion::scalars::Rat;
use virasoro_fusion::verma::{embedding_chain, gram_det, CentralData};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = 3;
    let cd = CentralData::new(p)?;
    let chain = embedding_chain(p, 1, 2, 4)?;
    println!("chain below (1,2): {chain:?}");
    let h = cd.h(1, 2);
    for level in 1..=6 {
        println!(
            "level {level}: det at h_(1,2) = {}",
            gram_det(&cd, &h, level)
        );
    }
    let generic = Rat::new(1, 7);
    println!("level 3 at h = 1/7: {}", gram_det(&cd, &generic, 3));
    Ok(())
}
