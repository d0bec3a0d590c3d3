use std::collections::HashMap;

use super::torus::QuantumElement;
use super::weights::uq_members;
use crate::coloring::{for_each_collection, Framework, Limits};
use crate::error::{Error, Result};
use crate::laurent::Direction;
use crate::paths::FamilyContext;

/// `Σ_β q^{u_q(β)} Z1^{r|β|₁ - c_{n-1}} Z2^{r(c_{n-1}-|β|₂) - c_{n-2}}` as normal-ordered
/// monomials (`Forward`, giving `Z_n`), or with the two exponents exchanged (`Backward`, giving `Z_{3-n}`).
pub fn quantum_expansion(ctx: &FamilyContext, direction: Direction, limits: &Limits) -> Result<QuantumElement> {
    let r = ctx.r() as i64;
    let cn1 = ctx.c(ctx.n() - 1) as i64;
    let cn2 = ctx.c(ctx.n() - 2) as i64;
    let mut acc: HashMap<(i64, i64, i64), i128> = HashMap::new();
    for_each_collection(ctx, Framework::Simplified, limits, |members| {
        let (b1, b2) = members
            .iter()
            .fold((0i64, 0i64), |(a, b), m| (a + m.corner_count() as i64, b + m.edge_count(ctx) as i64));
        let (a, b) = (r * b1 - cn1, r * (cn1 - b2) - cn2);
        let key = match direction {
            Direction::Forward => (a, b),
            Direction::Backward => (b, a),
        };
        *acc.entry((key.0, key.1, uq_members(ctx, members))).or_insert(0) += 1;
    })?;
    QuantumElement::from_terms(acc.into_iter().map(|((a, b, k), c)| (a, b, k, c)))
}

/// `q^{-r} Z^r + 1`.
fn exchange_numerator(z: &QuantumElement, r: u64) -> Result<QuantumElement> {
    z.checked_pow(r as u32)?.q_shift(-(r as i64)).checked_add(&QuantumElement::one())
}

/// `Z_0, Z_1, Z_2, Z_3`: the initial generators and one exchange step either way.
pub fn quantum_seed(r: u64, k: i64) -> Result<QuantumElement> {
    let (z1, z2) = (QuantumElement::z1(), QuantumElement::z2());
    match k {
        1 => Ok(z1),
        2 => Ok(z2),
        3 => exchange_numerator(&z2, r)?.checked_mul(&z1.monomial_inverse()?),
        0 => z2.monomial_inverse()?.checked_mul(&exchange_numerator(&z1, r)?),
        _ => Err(Error::InvalidParameter(format!("no seed for index {k}"))),
    }
}

/// `Z_k` for any integer `k`: seeds for `0..=3`, the expansion otherwise.
pub fn quantum_cluster_variable(r: u64, k: i64, limits: &Limits) -> Result<QuantumElement> {
    match k {
        0..=3 => quantum_seed(r, k),
        _ if k > 3 => quantum_expansion(&FamilyContext::new(r, k as usize)?, Direction::Forward, limits),
        _ => quantum_expansion(&FamilyContext::new(r, (3 - k) as usize)?, Direction::Backward, limits),
    }
}

/// Check `Z_{k+1} Z_{k-1} = q^{-r} Z_k^r + 1` at `k = n` (`Forward`) or `k = 3 - n` (`Backward`).
pub fn verify_quantum_recurrence(r: u64, n: usize, direction: Direction, limits: &Limits) -> Result<bool> {
    let k = direction.index(n);
    let prev = quantum_cluster_variable(r, k - 1, limits)?;
    let cur = quantum_cluster_variable(r, k, limits)?;
    let next = quantum_cluster_variable(r, k + 1, limits)?;
    Ok(next.checked_mul(&prev)? == exchange_numerator(&cur, r)?)
}
