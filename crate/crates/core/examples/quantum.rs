//! Quantum cluster variables in the torus Z1 Z2 = q^2 Z2 Z1.
//!
//! Run with `cargo run --example quantum -- 3 4`.

use dyckcluster::bijection::phi;
use dyckcluster::coloring::{enumerate_collections, Framework, Limits};
use dyckcluster::compat::pair_word;
use dyckcluster::laurent::Direction;
use dyckcluster::paths::FamilyContext;
use dyckcluster::quantum::{quantum_expansion, uq, verify_quantum_recurrence, wq_allpairs, wq_closed};

fn main() -> dyckcluster::Result<()> {
    let args: Vec<u64> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let (r, n) = (args.first().copied().unwrap_or(3), args.get(1).copied().unwrap_or(4) as usize);
    let ctx = FamilyContext::new(r, n)?;
    let limits = Limits::default();

    println!("collection                         word                w_q  all-pairs  u_q");
    for beta in enumerate_collections(&ctx, Framework::Simplified, &limits)? {
        let word = pair_word(&phi(&ctx, &beta)?);
        println!(
            "{:<34} {:<18} {:>4} {:>10} {:>4}",
            beta.to_string(),
            word.as_str(),
            wq_closed(&ctx, &beta)?,
            wq_allpairs(&word, r),
            uq(&ctx, &beta)?
        );
    }

    let z = quantum_expansion(&ctx, Direction::Forward, &limits)?;
    println!("\nZ_{n} = {z}");
    println!("at q = 1: {}", z.specialize_q()?);
    for dir in [Direction::Forward, Direction::Backward] {
        println!("{dir:?} exchange relation holds: {}", verify_quantum_recurrence(r, n, dir, &limits)?);
    }
    Ok(())
}
