//! The map Phi from brown collections on D_n to compatible pairs on C_n.
//!
//! Run with `cargo run --example bijection -- 3 5`.

use dyckcluster::bijection::{phi, phi_inverse, verify_bijection, VerifyMode};
use dyckcluster::coloring::{enumerate_collections, Framework, Limits};
use dyckcluster::compat::pair_word;
use dyckcluster::paths::FamilyContext;

fn main() -> dyckcluster::Result<()> {
    let args: Vec<u64> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let (r, n) = (args.first().copied().unwrap_or(3), args.get(1).copied().unwrap_or(5) as usize);
    let ctx = FamilyContext::new(r, n)?;
    let limits = Limits::default();

    for beta in enumerate_collections(&ctx, Framework::Simplified, &limits)?.step_by(40).take(8) {
        let pair = phi(&ctx, &beta)?;
        let back = phi_inverse(&ctx, &pair)?;
        println!("{beta:<40} -> {pair:<28} {}  round trip {}", pair_word(&pair), back == beta);
    }

    let report = verify_bijection(&ctx, VerifyMode::Bruteforce, &limits)?;
    println!("\n{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    Ok(())
}
