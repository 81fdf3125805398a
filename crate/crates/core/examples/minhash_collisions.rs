//! Classical minwise hashing: the fraction of agreeing signature slots
//! estimates the Jaccard similarity of the underlying sets.
//!
//!     cargo run --release --example minhash_collisions

use shingleblock::minhash::{jaccard, naive_minhash, HashFamily};
use shingleblock::shingle::ShingleSet;

fn main() -> shingleblock::Result<()> {
    let family = HashFamily::new(7);
    let k = 2000;
    println!("{:>8} {:>10} {:>10}", "overlap", "jaccard", "collision");
    for overlap in [0u32, 50, 100, 150, 200, 250, 300] {
        let a = ShingleSet::from_indices(0, (0..300).collect());
        let b = ShingleSet::from_indices(1, (300 - overlap..600 - overlap).collect());
        let (sa, _) = naive_minhash(&a, &family, k)?;
        let (sb, _) = naive_minhash(&b, &family, k)?;
        let agree = sa.values.iter().zip(&sb.values).filter(|(x, y)| x == y).count();
        println!(
            "{:>8} {:>10.4} {:>10.4}",
            overlap,
            jaccard(&a, &b),
            agree as f64 / k as f64
        );
    }
    Ok(())
}
