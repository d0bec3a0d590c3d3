use std::collections::HashMap;
use std::str::FromStr;

use super::LaurentPoly;
use crate::bijection::phi_sets;
use crate::coloring::{for_each_collection, Framework, Limits};
use crate::compat::enumerate_compatible_pairs;
use crate::error::{Error, Result};
use crate::paths::{c_value, Family, FamilyContext};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    /// Sum over brown collections on `D_n`.
    Subpaths,
    /// Sum over compatible pairs on `C_n`.
    Pairs,
}

/// `Forward` expands `X_n`; `Backward` expands `X_{3-n}` with the roles of the variables exchanged.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Forward,
    Backward,
}

impl Direction {
    /// The cluster index expanded for family index `n`.
    pub fn index(self, n: usize) -> i64 {
        match self {
            Direction::Forward => n as i64,
            Direction::Backward => 3 - n as i64,
        }
    }
}

impl FromStr for Direction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "forward" => Ok(Direction::Forward),
            "backward" => Ok(Direction::Backward),
            other => Err(Error::Parse(format!("unknown direction {other:?}"))),
        }
    }
}

/// Multiplicities of `(|β|₁, |β|₂)` over all brown collections.
pub(crate) fn statistic_counts(ctx: &FamilyContext, limits: &Limits) -> Result<HashMap<(usize, usize), i128>> {
    let mut counts: HashMap<(usize, usize), i128> = HashMap::new();
    for_each_collection(ctx, Framework::Simplified, limits, |members| {
        let stats = members
            .iter()
            .fold((0, 0), |(b1, b2), m| (b1 + m.corner_count(), b2 + m.edge_count(ctx)));
        *counts.entry(stats).or_insert(0) += 1;
    })?;
    Ok(counts)
}

/// Multiplicities of `(|S2|, c_{n-1} - |S1|)`, which play the roles of `(|β|₁, |β|₂)`.
fn pair_counts(ctx: &FamilyContext, limits: &Limits) -> Result<HashMap<(usize, usize), i128>> {
    let host = ctx.path(Family::C);
    let cn1 = ctx.edge_count();
    let mut counts: HashMap<(usize, usize), i128> = HashMap::new();
    let brute_force = host.len() < 127 && (1u128 << host.len()) <= limits.max_subsets;
    if brute_force {
        for pair in enumerate_compatible_pairs(&host, ctx.r(), limits)? {
            *counts.entry((pair.s2().count(), cn1 - pair.s1().count())).or_insert(0) += 1;
        }
    } else {
        for_each_collection(ctx, Framework::Simplified, limits, |members| {
            let (s1, s2) = phi_sets(ctx, members);
            *counts.entry((s2.count(), cn1 - s1.count())).or_insert(0) += 1;
        })?;
    }
    Ok(counts)
}

fn exponents(ctx: &FamilyContext, b1: usize, b2: usize) -> (i64, i64) {
    let r = ctx.r() as i64;
    let cn1 = ctx.c(ctx.n() - 1) as i64;
    let cn2 = ctx.c(ctx.n() - 2) as i64;
    (r * b1 as i64 - cn1, r * (cn1 - b2 as i64) - cn2)
}

/// `X_n = X1^{-c_{n-1}} X2^{-c_{n-2}} Σ X1^{r|β|₁} X2^{r(c_{n-1}-|β|₂)}`, or `X_{3-n}` with `X1 <-> X2`.
///
/// The pair sum scans all subsets of `C_n` when the subset limit allows it and
/// otherwise walks the images of the brown collections.
pub fn expansion_classical(
    ctx: &FamilyContext,
    formula: Formula,
    direction: Direction,
    limits: &Limits,
) -> Result<LaurentPoly> {
    let counts = match formula {
        Formula::Subpaths => statistic_counts(ctx, limits)?,
        Formula::Pairs => pair_counts(ctx, limits)?,
    };
    let terms = counts.into_iter().map(|((b1, b2), mult)| {
        let (a, b) = exponents(ctx, b1, b2);
        match direction {
            Direction::Forward => ([a, b, 0, 0], mult),
            Direction::Backward => ([b, a, 0, 0], mult),
        }
    });
    LaurentPoly::from_terms(2, terms)
}

/// Principal-coefficient expansion: each term of the classical sum gains
/// `Y1^{|β|₂} Y2^{|β|₁}` (forward) or `Y2^{-|β|₂} Y1^{-|β|₁}` (backward).
pub fn expansion_with_coefficients(ctx: &FamilyContext, direction: Direction, limits: &Limits) -> Result<LaurentPoly> {
    let counts = statistic_counts(ctx, limits)?;
    let terms = counts.into_iter().map(|((b1, b2), mult)| {
        let (a, b) = exponents(ctx, b1, b2);
        let (b1, b2) = (b1 as i64, b2 as i64);
        match direction {
            Direction::Forward => ([a, b, b2, b1], mult),
            Direction::Backward => ([b, a, -b1, -b2], mult),
        }
    });
    LaurentPoly::from_terms(4, terms)
}

/// The common degree `(d1, d2)` meaning `d1 e1 + d2 e2` under `deg X_i = e_i`,
/// `deg Y1 = r e2`, `deg Y2 = -r e1`; `None` if the terms disagree.
pub fn principal_degree(p: &LaurentPoly, r: u64) -> Option<(i64, i64)> {
    let r = r as i64;
    let mut degrees = p.terms().map(|(e, _)| (e[0] - r * e[3], e[1] + r * e[2]));
    let first = degrees.next()?;
    degrees.all(|d| d == first).then_some(first)
}

/// Degree of `X̃_m`: `-c_{m-1} e1 + c_m e2` for `m >= 2`, `c_{3-m} e1 - c_{2-m} e2` otherwise.
pub fn expected_principal_degree(r: u64, m: i64) -> Result<(i64, i64)> {
    let c = |k: i64| -> Result<i64> {
        let v = c_value(r, k as u32)?;
        i64::try_from(v).map_err(|_| Error::Overflow("c-sequence"))
    };
    if m >= 2 {
        Ok((-c(m - 1)?, c(m)?))
    } else {
        Ok((c(3 - m)?, -c(2 - m)?))
    }
}
