//! Classical and principal-coefficient expansions against the exchange recurrence.
//!
//! Run with `cargo run --example laurent -- 3 5`.

use dyckcluster::coloring::Limits;
use dyckcluster::laurent::{
    cluster_recurrence, coefficient_recurrence, expansion_classical, expansion_with_coefficients, principal_degree,
    Direction, Formula,
};
use dyckcluster::paths::FamilyContext;

fn main() -> dyckcluster::Result<()> {
    let args: Vec<u64> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let (r, n) = (args.first().copied().unwrap_or(3), args.get(1).copied().unwrap_or(5) as usize);
    let ctx = FamilyContext::new(r, n)?;
    let limits = Limits::default();

    for dir in [Direction::Forward, Direction::Backward] {
        let m = dir.index(n);
        let from_paths = expansion_classical(&ctx, Formula::Subpaths, dir, &limits)?;
        let from_pairs = expansion_classical(&ctx, Formula::Pairs, dir, &limits)?;
        let oracle = cluster_recurrence(r, m)?;
        println!("X_{m} = {from_paths}");
        println!("  subpaths = pairs = recurrence: {}", from_paths == from_pairs && from_pairs == oracle);
        println!("  value at X1 = X2 = 1: {}", oracle.evaluate_at_ones()?);

        let with_y = expansion_with_coefficients(&ctx, dir, &limits)?;
        println!("  principal coefficients agree: {}", with_y == coefficient_recurrence(r, m)?.0);
        println!("  degree: {:?}", principal_degree(&with_y, r));
    }
    println!("\nJSON: {}", cluster_recurrence(r, 4)?.to_json());
    Ok(())
}
