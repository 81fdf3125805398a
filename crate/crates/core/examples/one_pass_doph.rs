//! Densified one-permutation hashing: the same collision behaviour as
//! classical minhash, from a single hash evaluation per set element.
//!
//!     cargo run --release --example one_pass_doph

use shingleblock::doph::{oph_signature, DophConfig};
use shingleblock::minhash::{jaccard, naive_minhash, HashFamily};
use shingleblock::shingle::ShingleSet;

fn main() -> shingleblock::Result<()> {
    let cfg = DophConfig::new(20, 100, 7); // k = K * L = 2000 slots
    let family = HashFamily::new(7);

    let a = ShingleSet::from_indices(0, (0..800).collect());
    let b = ShingleSet::from_indices(1, (300..1100).collect());
    let j = jaccard(&a, &b);

    let (sa, fast_inv) = oph_signature(&a, &cfg)?;
    let (sb, _) = oph_signature(&b, &cfg)?;
    let agree = sa.values.iter().zip(&sb.values).filter(|(x, y)| x == y).count();
    let (_, naive_inv) = naive_minhash(&a, &family, cfg.signature_len())?;

    println!("exact jaccard          {j:.4}");
    println!("one-pass collision     {:.4}", agree as f64 / sa.values.len() as f64);
    println!("hash invocations       {fast_inv} (one per element)");
    println!("classical equivalent   {naive_inv} ({}x more)", naive_inv / fast_inv);
    Ok(())
}
