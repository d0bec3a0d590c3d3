//! The weight-preserving bijection `Φ` from brown collections on `D_n` to
//! compatible pairs on `C_n`, its inverse, and an end-to-end check.

use std::collections::HashSet;

use serde::Serialize;

use crate::coloring::{
    decode_collection, for_each_collection, validate_collection, ColoredCollection, Framework, Limits, Subpath,
};
use crate::compat::{enumerate_compatible_pairs, is_compatible, EdgePair};
use crate::edgeset::EdgeSet;
use crate::error::{Error, Result};
use crate::laurent::cluster_value_at_ones;
use crate::paths::{Family, FamilyContext};

/// `S1` = uncovered edges, `S2` = corners strictly inside or ending a span.
pub(crate) fn phi_sets(ctx: &FamilyContext, members: &[Subpath]) -> (EdgeSet, EdgeSet) {
    let mut covered = EdgeSet::new(ctx.edge_count());
    let mut s2 = EdgeSet::new(ctx.last_corner());
    for m in members {
        let (a, b) = m.edges(ctx);
        for s in a..=b {
            covered.insert(s - 1);
        }
        if let Subpath::Span { start, end, .. } = *m {
            for j in start + 1..=end {
                s2.insert(j - 1);
            }
        }
    }
    (covered.complement(), s2)
}

pub fn phi(ctx: &FamilyContext, beta: &ColoredCollection) -> Result<EdgePair> {
    if beta.framework() != Framework::Simplified {
        return Err(Error::InvalidCollection("phi expects a blue/brown collection".into()));
    }
    validate_collection(ctx, beta)?;
    let (s1, s2) = phi_sets(ctx, beta.members());
    EdgePair::from_sets(ctx.path(Family::C), ctx.r(), s1, s2)
}

/// Rebuild the collection from its image: uncovered edges from `S1`, spans from maximal runs in `S2`.
pub fn phi_inverse(ctx: &FamilyContext, pair: &EdgePair) -> Result<ColoredCollection> {
    if pair.r() != ctx.r() || *pair.host() != ctx.path(Family::C) {
        return Err(Error::ReconstructionFailure("pair is not on C_n for this r".into()));
    }
    let covered = pair.s1().complement();
    let mut corners = EdgeSet::new(ctx.last_corner() + 1);
    for j in pair.s2().iter() {
        corners.insert(j + 1);
    }
    let beta = decode_collection(ctx, Framework::Simplified, &covered, &corners)?;
    validate_collection(ctx, &beta).map_err(|e| Error::ReconstructionFailure(e.to_string()))?;
    if phi_sets(ctx, beta.members()) != (pair.s1().clone(), pair.s2().clone()) {
        return Err(Error::ReconstructionFailure(format!("{pair} is not an image")));
    }
    Ok(beta)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum VerifyMode {
    /// Compare against every compatible pair found by subset scan.
    Bruteforce,
    /// Injectivity plus count equality with the recurrence; compatibility of images is sampled.
    CountsOnly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BijectionReport {
    pub r: u64,
    pub n: usize,
    pub mode: VerifyMode,
    pub count_collections: u128,
    pub count_pairs: u128,
    pub injective: bool,
    pub surjective: bool,
    pub weight_preserving: bool,
    pub mismatches: Vec<String>,
}

impl BijectionReport {
    pub fn pass(&self) -> bool {
        self.count_collections == self.count_pairs && self.injective && self.surjective && self.weight_preserving
    }
}

const MAX_REPORTED: usize = 20;
const SAMPLED_COMPATIBILITY: u128 = 20_000;

fn note(list: &mut Vec<String>, msg: impl FnOnce() -> String) {
    if list.len() < MAX_REPORTED {
        list.push(msg());
    }
}

pub fn verify_bijection(ctx: &FamilyContext, mode: VerifyMode, limits: &Limits) -> Result<BijectionReport> {
    let host = ctx.path(Family::C);
    let cn1 = ctx.edge_count();
    let mut mismatches = Vec::new();
    let mut weight_preserving = true;
    let mut check_weight = |members: &[Subpath], s1: &EdgeSet, s2: &EdgeSet, mismatches: &mut Vec<String>| {
        let (b1, b2) = members
            .iter()
            .fold((0, 0), |(x, y), m| (x + m.corner_count(), y + m.edge_count(ctx)));
        if s2.count() != b1 || s1.count() != cn1 - b2 {
            weight_preserving = false;
            note(mismatches, || format!("weight differs for {members:?}"));
        }
    };

    let report = match mode {
        VerifyMode::Bruteforce => {
            if host.len() >= 127 {
                return Err(Error::GuardExceeded { needed: u128::MAX, limit: limits.max_subsets });
            }
            let mut images: Vec<(EdgeSet, EdgeSet)> = Vec::new();
            let count_collections = for_each_collection(ctx, Framework::Simplified, limits, |members| {
                let (s1, s2) = phi_sets(ctx, members);
                check_weight(members, &s1, &s2, &mut mismatches);
                images.push((s1, s2));
            })?;
            let pairs: HashSet<(EdgeSet, EdgeSet)> = enumerate_compatible_pairs(&host, ctx.r(), limits)?
                .map(|p| (p.s1().clone(), p.s2().clone()))
                .collect();
            let image_set: HashSet<(EdgeSet, EdgeSet)> = images.iter().cloned().collect();
            let injective = image_set.len() == images.len();
            for (s1, s2) in &images {
                if !pairs.contains(&(s1.clone(), s2.clone())) {
                    note(&mut mismatches, || format!("image S1={s1:?} S2={s2:?} is not compatible"));
                }
            }
            let mut surjective = true;
            for (s1, s2) in &pairs {
                if !image_set.contains(&(s1.clone(), s2.clone())) {
                    surjective = false;
                    note(&mut mismatches, || format!("pair S1={s1:?} S2={s2:?} has no preimage"));
                }
            }
            let all_images_compatible = image_set.is_subset(&pairs);
            BijectionReport {
                r: ctx.r(),
                n: ctx.n(),
                mode,
                count_collections,
                count_pairs: pairs.len() as u128,
                injective,
                surjective: surjective && all_images_compatible,
                weight_preserving,
                mismatches,
            }
        }
        VerifyMode::CountsOnly => {
            let w1 = cn1.div_ceil(64);
            let stride = w1 + ctx.last_corner().div_ceil(64);
            let mut keys: Vec<u64> = Vec::new();
            let mut sampled_ok = true;
            let expected = cluster_value_at_ones(ctx.r(), ctx.n() as i64)?;
            let every = (expected / SAMPLED_COMPATIBILITY).max(1);
            let mut index = 0u128;
            let count_collections = for_each_collection(ctx, Framework::Simplified, limits, |members| {
                let (s1, s2) = phi_sets(ctx, members);
                check_weight(members, &s1, &s2, &mut mismatches);
                if index % every == 0 {
                    let pair = EdgePair::from_sets(host.clone(), ctx.r(), s1.clone(), s2.clone()).expect("sizes match C_n");
                    if !is_compatible(&pair) {
                        sampled_ok = false;
                        note(&mut mismatches, || format!("image {pair} is not compatible"));
                    }
                }
                index += 1;
                keys.extend_from_slice(s1.words());
                keys.extend_from_slice(s2.words());
            })?;
            let mut rows: Vec<&[u64]> = if stride == 0 { Vec::new() } else { keys.chunks(stride).collect() };
            rows.sort_unstable();
            let injective = rows.windows(2).all(|w| w[0] != w[1]);
            if !injective {
                note(&mut mismatches, || "two collections share an image".into());
            }
            BijectionReport {
                r: ctx.r(),
                n: ctx.n(),
                mode,
                count_collections,
                count_pairs: expected,
                injective,
                surjective: injective && sampled_ok && count_collections == expected,
                weight_preserving,
                mismatches,
            }
        }
    };
    Ok(report)
}
