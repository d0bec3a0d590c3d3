use crate::coloring::{validate_collection, ColoredCollection, Framework, Subpath};
use crate::compat::PairWord;
use crate::error::{Error, Result};
use crate::paths::FamilyContext;

/// Antisymmetric weights on ordered letter pairs of `{h, v, H, V}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WeightTable {
    r: i64,
}

impl WeightTable {
    pub fn new(r: u64) -> Self {
        WeightTable { r: r as i64 }
    }

    pub fn get(&self, x: char, y: char) -> Result<i64> {
        for c in [x, y] {
            if !matches!(c, 'h' | 'v' | 'H' | 'V') {
                return Err(Error::UnknownLetter(c));
            }
        }
        Ok(self.weight(x, y))
    }

    fn base(&self, x: char, y: char) -> Option<i64> {
        let r = self.r;
        match (x, y) {
            ('h', 'v') | ('H', 'v') | ('h', 'V') => Some(1),
            ('H', 'h') | ('v', 'V') => Some(r),
            ('V', 'H') => Some(r * r - 1),
            _ => None,
        }
    }

    fn weight(&self, x: char, y: char) -> i64 {
        self.base(x, y).or_else(|| self.base(y, x).map(|w| -w)).unwrap_or(0)
    }
}

/// Sum of the table over all ordered position pairs `p < p'` of the word.
pub fn wq_allpairs(word: &PairWord, r: u64) -> i64 {
    let table = WeightTable::new(r);
    let letters: Vec<char> = word.as_str().chars().collect();
    let mut total = 0;
    for (i, &x) in letters.iter().enumerate() {
        for &y in &letters[i + 1..] {
            total += table.weight(x, y);
        }
    }
    total
}

/// Closed-form weight of a brown collection, summed over complementary parts.
///
/// `prefix_inclusive` selects whether member `i` counts against part `j` when
/// `i <= j` (the form matching [`wq_allpairs`]) or only when `i < j`.
pub(crate) fn closed_weight(ctx: &FamilyContext, members: &[Subpath], prefix_inclusive: bool) -> i64 {
    let r = ctx.r() as i64;
    let base = (ctx.c(ctx.n() - 1) + ctx.c(ctx.n() - 2)) as i64 - 1;
    let stats: Vec<(i64, i64)> = members
        .iter()
        .map(|m| (m.corner_count() as i64, m.edge_count(ctx) as i64))
        .collect();
    let (t1, t2) = stats.iter().fold((0, 0), |(a, b), (x, y)| (a + x, b + y));
    let (mut p1, mut p2) = (0i64, 0i64);
    let (mut prev1, mut prev2) = (0i64, 0i64);
    let mut total = base;
    let mut next = 0;
    let mut covered_until = 0usize;
    let mut inside_span = false;
    for s in 1..=ctx.edge_count() {
        if next < members.len() && members[next].edges(ctx).0 == s {
            prev1 = p1;
            prev2 = p2;
            p1 += stats[next].0;
            p2 += stats[next].1;
            covered_until = members[next].edges(ctx).1;
            inside_span = members[next].is_span();
            next += 1;
        }
        let covered = s <= covered_until && next > 0;
        let (q1, q2) = if prefix_inclusive { (p1, p2) } else { (prev1, prev2) };
        let (sum1, sum2) = (t1 - 2 * q1, t2 - 2 * q2);
        if !covered {
            total += r * sum2 - r * r * sum1;
        }
        if ctx.corner_at(s).is_some() && !(covered && inside_span) {
            total += r * sum1;
        }
    }
    total
}

fn simplified(ctx: &FamilyContext, beta: &ColoredCollection) -> Result<()> {
    if beta.framework() != Framework::Simplified {
        return Err(Error::InvalidCollection("quantum weights need a blue/brown collection".into()));
    }
    validate_collection(ctx, beta)
}

/// `w_q(β)` from the complementary decomposition; equals the all-pairs weight of the word of `Φ(β)`.
pub fn wq_closed(ctx: &FamilyContext, beta: &ColoredCollection) -> Result<i64> {
    simplified(ctx, beta)?;
    Ok(closed_weight(ctx, beta.members(), true))
}

/// The closed form with the sign switching only for `i < j`; kept to document
/// where it departs from [`wq_closed`].
pub fn wq_closed_strict_sign(ctx: &FamilyContext, beta: &ColoredCollection) -> Result<i64> {
    simplified(ctx, beta)?;
    Ok(closed_weight(ctx, beta.members(), false))
}

pub(crate) fn uq_members(ctx: &FamilyContext, members: &[Subpath]) -> i64 {
    let r = ctx.r() as i64;
    let (b1, b2) = members
        .iter()
        .fold((0i64, 0i64), |(a, b), m| (a + m.corner_count() as i64, b + m.edge_count(ctx) as i64));
    let base = (ctx.c(ctx.n() - 1) + ctx.c(ctx.n() - 2)) as i64 - 1;
    let cn1 = ctx.c(ctx.n() - 1) as i64;
    let cn = ctx.c(ctx.n()) as i64;
    closed_weight(ctx, members, true) - base + (cn1 - r * b1) * (cn - r * b2)
}

/// `u_q(β) = w_q(β) - (c_{n-1}+c_{n-2}-1) + (c_{n-1} - r|β|₁)(c_n - r|β|₂)`.
pub fn uq(ctx: &FamilyContext, beta: &ColoredCollection) -> Result<i64> {
    simplified(ctx, beta)?;
    Ok(uq_members(ctx, beta.members()))
}
