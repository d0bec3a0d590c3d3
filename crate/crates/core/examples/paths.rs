//! Maximal Dyck paths D_n and C_n, their corners, and the corner steps t(i).
//!
//! Run with `cargo run --example paths -- 3 6`.

use dyckcluster::paths::{pi_value, t_decomposition, Family, FamilyContext, Morphism};

fn main() -> dyckcluster::Result<()> {
    let args: Vec<u64> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let (r, n) = (args.first().copied().unwrap_or(3), args.get(1).copied().unwrap_or(6) as usize);
    let ctx = FamilyContext::new(r, n)?;

    println!("c-sequence for r={r}: {:?}", ctx.c_sequence());
    for family in [Family::D, Family::C] {
        let word = ctx.path(family);
        println!("{family}_{n} = {word}  (endpoint {:?})", word.endpoint());
    }

    let pis: Vec<i64> = (0..=ctx.edge_count()).map(|i| pi_value(&ctx, i)).collect::<Result<_, _>>()?;
    println!("pi values along D_{n}: {pis:?}");

    println!("corner  position  t(i)  (m,w)");
    for i in 0..ctx.last_corner() {
        let v = ctx.corner(i)?;
        let step = match t_decomposition(&ctx, i)? {
            Some(s) => format!("v{:<4} ({},{})", s.t, s.decomposition.m, s.decomposition.w),
            None => "none".to_string(),
        };
        println!("v{i:<6} {:?}  {step}", v.coords());
    }

    if n > 3 {
        let lower = FamilyContext::new(r, n - 1)?;
        let lifted = Morphism::lambda(r).apply_path(lower.d_path())?;
        println!("lambda(D_{}) = {lifted}", n - 1);
    }
    Ok(())
}
