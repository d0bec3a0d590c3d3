//! Compatible pairs on C_n: enumeration, shadows and the letter encoding.
//!
//! Run with `cargo run --example compat -- 3 4`.

use dyckcluster::coloring::Limits;
use dyckcluster::compat::{
    enumerate_compatible_pairs, has_non_spanning_shadows, is_compatible, pair_word, shadow, EdgePair, Orientation,
};
use dyckcluster::paths::{Family, FamilyContext};

fn main() -> dyckcluster::Result<()> {
    let args: Vec<u64> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let (r, n) = (args.first().copied().unwrap_or(3), args.get(1).copied().unwrap_or(4) as usize);
    let ctx = FamilyContext::new(r, n)?;
    let host = ctx.path(Family::C);
    println!("C_{n} = {host}");

    for pair in enumerate_compatible_pairs(&host, r, &Limits::default())? {
        let s1 = pair.s1_indices();
        let sh = shadow(&pair, Orientation::Horizontal, &s1)?;
        println!(
            "{:<32} {}  shadow(S1)={:?}  non-spanning={}",
            pair.to_string(),
            pair_word(&pair),
            sh.edges,
            has_non_spanning_shadows(&pair)
        );
    }

    let (a, b) = host.endpoint();
    let everything = EdgePair::new(host.clone(), r, 1..=a, 1..=b)?;
    println!("all edges chosen: compatible = {}", is_compatible(&everything));
    Ok(())
}
