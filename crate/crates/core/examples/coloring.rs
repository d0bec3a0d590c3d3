//! Colored subpath collections on D_n under both coloring frameworks.
//!
//! Run with `cargo run --example coloring -- 3 5`.

use dyckcluster::coloring::{
    chi_map, complementary_decomposition, count_collections, enumerate_collections, Framework, Limits,
};
use dyckcluster::paths::FamilyContext;

fn main() -> dyckcluster::Result<()> {
    let args: Vec<u64> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let (r, n) = (args.first().copied().unwrap_or(3), args.get(1).copied().unwrap_or(5) as usize);
    let ctx = FamilyContext::new(r, n)?;

    for fw in [Framework::LeeSchiffler, Framework::Simplified] {
        println!("{fw:?}: {} collections", count_collections(&ctx, fw)?);
    }

    let limits = Limits::default();
    println!("\nfirst spans in canonical order, with their brown counterparts:");
    let spans = enumerate_collections(&ctx, Framework::LeeSchiffler, &limits)?
        .filter(|beta| beta.members().iter().any(|m| m.is_span()))
        .take(6);
    for beta in spans {
        let brown = chi_map(&ctx, &beta)?;
        println!("  {beta}  ->  {brown}");
    }

    let stream = enumerate_collections(&ctx, Framework::Simplified, &limits)?;
    let middle = stream.total() / 2;
    if let Some(beta) = stream.skip(middle).next() {
        println!("\ncollection #{middle} {beta}, complement parts:");
        for part in complementary_decomposition(&ctx, &beta).parts {
            println!("  {} edges, {} corners", part.edge_count(), part.corner_count());
        }
    }
    Ok(())
}
