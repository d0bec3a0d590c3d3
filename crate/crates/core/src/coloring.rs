//! Colored subpaths of `D_n` under the blue/brown and blue/green/red
//! frameworks, their enumeration, and the maps between them.

use std::fmt;

use rand::Rng;
use serde_json::{json, Value};

use crate::edgeset::EdgeSet;
use crate::error::{Error, Result};
use crate::paths::{a_value, c_value, mw_decomposition, Decomposition, FamilyContext, StepWord};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Framework {
    /// Blue, green and red spans.
    LeeSchiffler,
    /// Blue and brown spans.
    Simplified,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SpanColor {
    Blue,
    Brown(Decomposition),
    Green(Decomposition),
    Red,
}

impl SpanColor {
    pub fn name(&self) -> &'static str {
        match self {
            SpanColor::Blue => "blue",
            SpanColor::Brown(_) => "brown",
            SpanColor::Green(_) => "green",
            SpanColor::Red => "red",
        }
    }

    pub fn decomposition(&self) -> Option<Decomposition> {
        match self {
            SpanColor::Brown(d) | SpanColor::Green(d) => Some(*d),
            _ => None,
        }
    }
}

/// A member of a collection: a single edge `α_s` (1-based) or a span between corners `v_start` and `v_end`.
///
/// Red spans additionally cover the edge entering `v_start`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Subpath {
    Edge(usize),
    Span { start: usize, end: usize, color: SpanColor },
}

impl Subpath {
    /// Inclusive range of covered edge numbers.
    pub fn edges(&self, ctx: &FamilyContext) -> (usize, usize) {
        match *self {
            Subpath::Edge(s) => (s, s),
            Subpath::Span { start, end, color } => {
                let p = ctx.corner_position(start);
                let first = if color == SpanColor::Red { p } else { p + 1 };
                (first, ctx.corner_position(end))
            }
        }
    }

    pub fn edge_count(&self, ctx: &FamilyContext) -> usize {
        let (a, b) = self.edges(ctx);
        b + 1 - a
    }

    /// Contribution `k - i` to `|β|₁`.
    pub fn corner_count(&self) -> usize {
        match *self {
            Subpath::Edge(_) => 0,
            Subpath::Span { start, end, .. } => end - start,
        }
    }

    pub fn is_span(&self) -> bool {
        matches!(self, Subpath::Span { .. })
    }

    pub fn to_json(&self) -> Value {
        match *self {
            Subpath::Edge(s) => json!({ "edge": s }),
            Subpath::Span { start, end, color } => {
                let mut v = json!({ "span": [start, end], "color": color.name() });
                if let Some(d) = color.decomposition() {
                    v["m"] = json!(d.m);
                    v["w"] = json!(d.w);
                }
                v
            }
        }
    }
}

impl fmt::Display for Subpath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Subpath::Edge(s) => write!(f, "a{s}"),
            Subpath::Span { start, end, color } => {
                let head = if *color == SpanColor::Red { "a" } else { "g" };
                write!(f, "{head}({start},{end}):{}", color.name())?;
                if let Some(d) = color.decomposition() {
                    write!(f, "({},{})", d.m, d.w)?;
                }
                Ok(())
            }
        }
    }
}

/// Left-to-right list of non-overlapping colored subpaths.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ColoredCollection {
    framework: Framework,
    members: Vec<Subpath>,
}

impl ColoredCollection {
    pub fn empty(framework: Framework) -> Self {
        ColoredCollection { framework, members: Vec::new() }
    }

    /// Members are sorted by their first covered edge; validity is not checked.
    pub fn new(ctx: &FamilyContext, framework: Framework, mut members: Vec<Subpath>) -> Self {
        members.sort_by_key(|m| m.edges(ctx).0);
        ColoredCollection { framework, members }
    }

    pub fn framework(&self) -> Framework {
        self.framework
    }

    pub fn members(&self) -> &[Subpath] {
        &self.members
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn covered(&self, ctx: &FamilyContext) -> EdgeSet {
        let mut set = EdgeSet::new(ctx.edge_count());
        for m in &self.members {
            let (a, b) = m.edges(ctx);
            for s in a..=b {
                set.insert(s - 1);
            }
        }
        set
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.members.iter().map(Subpath::to_json).collect())
    }
}

impl fmt::Display for ColoredCollection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, m) in self.members.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{m}")?;
        }
        f.write_str("}")
    }
}

/// `(|β|₁, |β|₂)`: corners spanned and edges covered.
pub fn collection_stats(ctx: &FamilyContext, beta: &ColoredCollection) -> (usize, usize) {
    stats_of(ctx, beta.members())
}

fn stats_of(ctx: &FamilyContext, members: &[Subpath]) -> (usize, usize) {
    members
        .iter()
        .fold((0, 0), |(b1, b2), m| (b1 + m.corner_count(), b2 + m.edge_count(ctx)))
}

fn check_span(ctx: &FamilyContext, i: usize, k: usize) -> Result<()> {
    let last = ctx.last_corner();
    if k > last {
        return Err(Error::IndexOutOfRange { index: k, max: last });
    }
    if i >= k {
        return Err(Error::InvalidParameter(format!("span needs start < end, got ({i}, {k})")));
    }
    Ok(())
}

/// Color of the span from `v_i` to `v_k`.
pub fn classify_span(ctx: &FamilyContext, i: usize, k: usize, framework: Framework) -> Result<Subpath> {
    check_span(ctx, i, k)?;
    let color = match ctx.first_exceeding(i) {
        Some(t) if t <= k => {
            let d = (t - i) as u64;
            match framework {
                Framework::Simplified => {
                    SpanColor::Brown(mw_decomposition(ctx.r(), d).ok_or(Error::DecompositionFailure(d))?)
                }
                Framework::LeeSchiffler => green_form(ctx, d)?.map_or(SpanColor::Red, SpanColor::Green),
            }
        }
        _ => SpanColor::Blue,
    };
    Ok(Subpath::Span { start: i, end: k, color })
}

/// `(m, w)` with `3 <= m <= n-2`, `1 <= w <= r-2` and `c_m - w c_{m-1} = d`.
fn green_form(ctx: &FamilyContext, d: u64) -> Result<Option<Decomposition>> {
    for m in 3..=ctx.n().saturating_sub(2) as u32 {
        for w in 1..ctx.r().saturating_sub(1) {
            if a_value(ctx.r(), m, w)? == d as i128 {
                return Ok(Some(Decomposition { m, w }));
            }
        }
    }
    Ok(None)
}

/// How many edges before a brown/green span must contain a covered one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum WindowRule {
    /// `a_{m-1,w} = c_{m-1} - w c_{m-2}`.
    Weighted,
    /// `c_{m-1} - 2 c_{m-2}` regardless of `w`.
    Literal,
}

fn window(ctx: &FamilyContext, d: Decomposition, rule: WindowRule) -> Result<usize> {
    let a = match rule {
        WindowRule::Weighted => a_value(ctx.r(), d.m - 1, d.w)?,
        WindowRule::Literal => {
            c_value(ctx.r(), d.m - 1)? - 2 * if d.m >= 3 { c_value(ctx.r(), d.m - 2)? } else { 0 }
        }
    };
    Ok(a.max(0) as usize)
}

/// Check membership in the family of admissible collections for its framework.
pub fn validate_collection(ctx: &FamilyContext, beta: &ColoredCollection) -> Result<()> {
    let bad = |msg: String| Err(Error::InvalidCollection(msg));
    let len = ctx.edge_count();
    let mut last_edge = 0usize;
    let mut last_span_end: Option<usize> = None;
    let mut prev_covered = 0usize;
    for (idx, m) in beta.members().iter().enumerate() {
        if let Subpath::Span { start, end, color } = *m {
            check_span(ctx, start, end).or_else(|e| bad(e.to_string()))?;
            let expected = classify_span(ctx, start, end, beta.framework())?;
            let expected_color = match expected {
                Subpath::Span { color, .. } => color,
                Subpath::Edge(_) => unreachable!(),
            };
            if expected_color != color {
                return bad(format!("{m} should be {}", Subpath::Span { start, end, color: expected_color }));
            }
            if color != SpanColor::Red && last_span_end == Some(start) {
                return bad(format!("{m} starts where another span ends"));
            }
        }
        let (first, last) = m.edges(ctx);
        if first == 0 || last > len {
            return bad(format!("{m} lies outside edges 1..={len}"));
        }
        if idx > 0 && first <= last_edge {
            return bad(format!("{m} overlaps or precedes the previous member"));
        }
        if let Subpath::Span { start, color, .. } = *m {
            if let SpanColor::Brown(d) | SpanColor::Green(d) = color {
                let a = window(ctx, d, WindowRule::Weighted)?;
                let p = ctx.corner_position(start);
                if prev_covered == 0 || prev_covered + a <= p {
                    return bad(format!("{m} needs one of the {a} edges before it covered"));
                }
            }
        }
        last_edge = last;
        prev_covered = last;
        last_span_end = match *m {
            Subpath::Span { end, .. } => Some(end),
            Subpath::Edge(_) => None,
        };
    }
    Ok(())
}

#[derive(Clone, Copy, Debug)]
struct SpanOption {
    subpath: Subpath,
    end: usize,
    /// Window length and the position it ends at.
    window: Option<usize>,
    anchor: usize,
    blocked_after_span: bool,
}

/// Precomputed moves for the left-to-right traversal of `D_n`.
struct Engine<'a> {
    ctx: &'a FamilyContext,
    framework: Framework,
    options: Vec<Vec<SpanOption>>,
    cap: usize,
}

impl<'a> Engine<'a> {
    fn new(ctx: &'a FamilyContext, framework: Framework, rule: WindowRule) -> Result<Self> {
        let len = ctx.edge_count();
        let mut options = vec![Vec::new(); len + 1];
        let mut cap = 1;
        for i in 0..ctx.last_corner() {
            let p = ctx.corner_position(i);
            for k in i + 1..=ctx.last_corner() {
                let subpath = classify_span(ctx, i, k, framework)?;
                let color = match subpath {
                    Subpath::Span { color, .. } => color,
                    Subpath::Edge(_) => unreachable!(),
                };
                let window = match color.decomposition() {
                    Some(d) => Some(window(ctx, d, rule)?),
                    None => None,
                };
                if let Some(a) = window {
                    cap = cap.max(a + 1);
                }
                let (start_pos, blocked_after_span) = if color == SpanColor::Red { (p - 1, false) } else { (p, true) };
                options[start_pos].push(SpanOption {
                    subpath,
                    end: ctx.corner_position(k),
                    window,
                    anchor: p,
                    blocked_after_span,
                });
            }
        }
        Ok(Engine { ctx, framework, options, cap })
    }

    fn allowed(&self, opt: &SpanOption, last_covered: usize, after_span: bool) -> bool {
        if opt.blocked_after_span && after_span {
            return false;
        }
        match opt.window {
            None => true,
            Some(a) => last_covered > 0 && last_covered + a > opt.anchor,
        }
    }

    /// Number of completions from every state `(position, gap, after_span)`, saturating.
    ///
    /// `gap` is the distance back to the last covered edge, capped at `self.cap`
    /// (which also stands for "none").
    fn count_table(&self) -> Vec<u128> {
        let len = self.ctx.edge_count();
        let width = self.cap + 1;
        let idx = |pos: usize, gap: usize, flag: bool| (pos * width + gap) * 2 + flag as usize;
        let mut table = vec![0u128; (len + 1) * width * 2];
        for gap in 0..width {
            table[idx(len, gap, false)] = 1;
            table[idx(len, gap, true)] = 1;
        }
        for pos in (0..len).rev() {
            for gap in 0..width {
                for flag in [false, true] {
                    let skip_gap = (gap + 1).min(self.cap);
                    let mut total = table[idx(pos + 1, skip_gap, false)].saturating_add(table[idx(pos + 1, 0, false)]);
                    let last_covered = if gap >= self.cap || gap >= pos { 0 } else { pos - gap };
                    for opt in &self.options[pos] {
                        if self.allowed(opt, last_covered, flag) {
                            total = total.saturating_add(table[idx(opt.end, 0, true)]);
                        }
                    }
                    table[idx(pos, gap, flag)] = total;
                }
            }
        }
        table
    }

    fn count(&self) -> u128 {
        let table = self.count_table();
        table[self.cap * 2]
    }

    fn visit<F: FnMut(&[Subpath])>(&self, f: &mut F) {
        let mut members = Vec::with_capacity(self.ctx.edge_count());
        self.walk(0, 0, false, &mut members, f);
    }

    fn walk<F: FnMut(&[Subpath])>(
        &self,
        pos: usize,
        last_covered: usize,
        after_span: bool,
        members: &mut Vec<Subpath>,
        f: &mut F,
    ) {
        if pos == self.ctx.edge_count() {
            f(members);
            return;
        }
        self.walk(pos + 1, last_covered, false, members, f);
        members.push(Subpath::Edge(pos + 1));
        self.walk(pos + 1, pos + 1, false, members, f);
        members.pop();
        for opt in &self.options[pos] {
            if self.allowed(opt, last_covered, after_span) {
                members.push(opt.subpath);
                self.walk(opt.end, opt.end, true, members, f);
                members.pop();
            }
        }
    }

    fn sample<R: Rng + ?Sized>(&self, table: &[u128], rng: &mut R) -> Result<Vec<Subpath>> {
        let width = self.cap + 1;
        let idx = |pos: usize, gap: usize, flag: bool| (pos * width + gap) * 2 + flag as usize;
        let len = self.ctx.edge_count();
        let (mut pos, mut gap, mut flag) = (0usize, self.cap, false);
        let mut members = Vec::new();
        while pos < len {
            let total = table[idx(pos, gap, flag)];
            if total == u128::MAX {
                return Err(Error::Overflow("collection count for sampling"));
            }
            let mut pick = rng.gen_range(0..total);
            let skip = table[idx(pos + 1, (gap + 1).min(self.cap), false)];
            if pick < skip {
                gap = (gap + 1).min(self.cap);
                pos += 1;
                flag = false;
                continue;
            }
            pick -= skip;
            let single = table[idx(pos + 1, 0, false)];
            if pick < single {
                members.push(Subpath::Edge(pos + 1));
                pos += 1;
                gap = 0;
                flag = false;
                continue;
            }
            pick -= single;
            let last_covered = if gap >= self.cap || gap >= pos { 0 } else { pos - gap };
            let mut chosen = None;
            for opt in &self.options[pos] {
                if self.allowed(opt, last_covered, flag) {
                    let c = table[idx(opt.end, 0, true)];
                    if pick < c {
                        chosen = Some(*opt);
                        break;
                    }
                    pick -= c;
                }
            }
            let opt = chosen.expect("sampling weights are consistent with the table");
            members.push(opt.subpath);
            pos = opt.end;
            gap = 0;
            flag = true;
        }
        Ok(members)
    }
}

/// Size limits for enumerations; exceeding one is an error, never a silent truncation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_collections: u128,
    pub max_subsets: u128,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_collections: 1 << 23, max_subsets: 1 << 26 }
    }
}

impl Limits {
    pub fn unlimited() -> Self {
        Limits { max_collections: u128::MAX, max_subsets: u128::MAX }
    }

    pub fn uniform(max_objects: u128) -> Self {
        Limits { max_collections: max_objects, max_subsets: max_objects }
    }

    pub fn check_collections(&self, needed: u128) -> Result<()> {
        if needed > self.max_collections {
            return Err(Error::GuardExceeded { needed, limit: self.max_collections });
        }
        Ok(())
    }

    pub fn check_subsets(&self, needed: u128) -> Result<()> {
        if needed > self.max_subsets {
            return Err(Error::GuardExceeded { needed, limit: self.max_subsets });
        }
        Ok(())
    }
}

/// Exact number of admissible collections (saturating at `u128::MAX`).
pub fn count_collections(ctx: &FamilyContext, framework: Framework) -> Result<u128> {
    Ok(Engine::new(ctx, framework, WindowRule::Weighted)?.count())
}

/// Brown-collection counts under the adopted window `a_{m-1,w}` and under the
/// alternative `c_{m-1} - 2c_{m-2}`; they differ only when some window depends on `w`.
pub fn literal_rule_discrepancy(ctx: &FamilyContext) -> Result<(u128, u128)> {
    let adopted = Engine::new(ctx, Framework::Simplified, WindowRule::Weighted)?.count();
    let literal = Engine::new(ctx, Framework::Simplified, WindowRule::Literal)?.count();
    Ok((adopted, literal))
}

/// Visit every admissible collection in traversal order without materializing the family.
///
/// The callback receives the members left to right.
pub fn for_each_collection<F: FnMut(&[Subpath])>(
    ctx: &FamilyContext,
    framework: Framework,
    limits: &Limits,
    mut f: F,
) -> Result<u128> {
    let engine = Engine::new(ctx, framework, WindowRule::Weighted)?;
    let total = engine.count();
    limits.check_collections(total)?;
    engine.visit(&mut f);
    Ok(total)
}

/// Draw a collection uniformly at random.
pub fn sample_collection<R: Rng + ?Sized>(ctx: &FamilyContext, framework: Framework, rng: &mut R) -> Result<ColoredCollection> {
    let engine = Engine::new(ctx, framework, WindowRule::Weighted)?;
    let table = engine.count_table();
    let members = engine.sample(&table, rng)?;
    Ok(ColoredCollection { framework, members })
}

/// Reusable uniform sampler.
pub struct Sampler<'a> {
    engine: Engine<'a>,
    table: Vec<u128>,
}

impl<'a> Sampler<'a> {
    pub fn new(ctx: &'a FamilyContext, framework: Framework) -> Result<Self> {
        let engine = Engine::new(ctx, framework, WindowRule::Weighted)?;
        let table = engine.count_table();
        Ok(Sampler { engine, table })
    }

    pub fn total(&self) -> u128 {
        self.table[self.engine.cap * 2]
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<ColoredCollection> {
        let members = self.engine.sample(&self.table, rng)?;
        Ok(ColoredCollection { framework: self.engine.framework, members })
    }
}

/// Covered edges (bit `s-1` for `α_s`) and spanned corners (bit `j` for each `v_j`
/// interior to or ending a span). Together they determine a collection.
pub fn collection_key(ctx: &FamilyContext, members: &[Subpath]) -> (EdgeSet, EdgeSet) {
    let mut covered = EdgeSet::new(ctx.edge_count());
    let mut corners = EdgeSet::new(ctx.last_corner() + 1);
    for m in members {
        let (a, b) = m.edges(ctx);
        for s in a..=b {
            covered.insert(s - 1);
        }
        if let Subpath::Span { start, end, .. } = *m {
            for j in start + 1..=end {
                corners.insert(j);
            }
        }
    }
    (covered, corners)
}

/// Rebuild the collection with the given covered edges and spanned corners.
///
/// Maximal runs `v_{i+1}..v_k` of spanned corners become spans `(i, k)`; the
/// remaining covered edges become single edges. The result is not validated.
pub fn decode_collection(
    ctx: &FamilyContext,
    framework: Framework,
    covered: &EdgeSet,
    corners: &EdgeSet,
) -> Result<ColoredCollection> {
    let mut members = Vec::new();
    let mut in_span = EdgeSet::new(ctx.edge_count());
    let mut j = 1;
    let last = ctx.last_corner();
    while j <= last {
        if !corners.contains(j) {
            j += 1;
            continue;
        }
        let start = j - 1;
        while j <= last && corners.contains(j) {
            j += 1;
        }
        let span = classify_span(ctx, start, j - 1, framework)?;
        let (a, b) = span.edges(ctx);
        for s in a..=b {
            if !covered.contains(s - 1) {
                return Err(Error::ReconstructionFailure(format!("edge a{s} of {span} is not covered")));
            }
            in_span.insert(s - 1);
        }
        members.push(span);
    }
    for s in covered.iter() {
        if !in_span.contains(s) {
            members.push(Subpath::Edge(s + 1));
        }
    }
    Ok(ColoredCollection::new(ctx, framework, members))
}

/// Collections in canonical order: ascending by covered-edge mask, then by
/// spanned-corner mask, both read as integers with `α_1` (resp. `v_0`) as bit 0.
pub struct CollectionStream<'a> {
    ctx: &'a FamilyContext,
    framework: Framework,
    edge_words: usize,
    stride: usize,
    keys: Vec<u64>,
    order: Vec<u32>,
    next: usize,
}

pub fn enumerate_collections<'a>(
    ctx: &'a FamilyContext,
    framework: Framework,
    limits: &Limits,
) -> Result<CollectionStream<'a>> {
    let engine = Engine::new(ctx, framework, WindowRule::Weighted)?;
    let total = engine.count();
    limits.check_collections(total)?;
    if total > u32::MAX as u128 {
        return Err(Error::GuardExceeded { needed: total, limit: u32::MAX as u128 });
    }
    let edge_words = ctx.edge_count().div_ceil(64);
    let stride = edge_words + (ctx.last_corner() + 1).div_ceil(64);
    let mut keys = Vec::with_capacity(total as usize * stride);
    engine.visit(&mut |members: &[Subpath]| {
        let (covered, corners) = collection_key(ctx, members);
        keys.extend_from_slice(covered.words());
        keys.extend_from_slice(corners.words());
    });
    let mut order: Vec<u32> = (0..total as u32).collect();
    let key = |i: u32| &keys[i as usize * stride..(i as usize + 1) * stride];
    order.sort_unstable_by(|&a, &b| {
        let (ka, kb) = (key(a), key(b));
        let edges = ka[..edge_words].iter().rev().cmp(kb[..edge_words].iter().rev());
        edges.then_with(|| ka[edge_words..].iter().rev().cmp(kb[edge_words..].iter().rev()))
    });
    Ok(CollectionStream { ctx, framework, edge_words, stride, keys, order, next: 0 })
}

impl CollectionStream<'_> {
    pub fn total(&self) -> usize {
        self.order.len()
    }
}

impl Iterator for CollectionStream<'_> {
    type Item = ColoredCollection;

    fn next(&mut self) -> Option<Self::Item> {
        let i = *self.order.get(self.next)? as usize;
        self.next += 1;
        let key = &self.keys[i * self.stride..(i + 1) * self.stride];
        let mut covered = EdgeSet::new(self.ctx.edge_count());
        let mut corners = EdgeSet::new(self.ctx.last_corner() + 1);
        for s in 0..self.ctx.edge_count() {
            if key[s / 64] >> (s % 64) & 1 == 1 {
                covered.insert(s);
            }
        }
        for j in 0..=self.ctx.last_corner() {
            if key[self.edge_words + j / 64] >> (j % 64) & 1 == 1 {
                corners.insert(j);
            }
        }
        Some(decode_collection(self.ctx, self.framework, &covered, &corners).expect("keys come from valid collections"))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = self.order.len() - self.next;
        (left, Some(left))
    }
}

impl ExactSizeIterator for CollectionStream<'_> {}

/// Split red spans into their first edge plus a span and recolor green as brown.
pub fn chi_map(ctx: &FamilyContext, beta: &ColoredCollection) -> Result<ColoredCollection> {
    if beta.framework() != Framework::LeeSchiffler {
        return Err(Error::InvalidCollection("chi expects a blue/green/red collection".into()));
    }
    validate_collection(ctx, beta)?;
    let mut out = Vec::with_capacity(beta.members().len() + 1);
    for m in beta.members() {
        match *m {
            Subpath::Edge(_) => out.push(*m),
            Subpath::Span { start, end, color } => {
                if color == SpanColor::Red {
                    out.push(Subpath::Edge(ctx.corner_position(start)));
                }
                out.push(classify_span(ctx, start, end, Framework::Simplified)?);
            }
        }
    }
    Ok(ColoredCollection { framework: Framework::Simplified, members: out })
}

/// One complementary part: uncovered edges and the corners it owns.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ComplementPart {
    pub edges: Vec<usize>,
    pub corners: Vec<usize>,
}

impl ComplementPart {
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn corner_count(&self) -> usize {
        self.corners.len()
    }
}

/// Parts `β̄_0..β̄_t` between and around the `t` members of a collection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplementaryDecomposition {
    pub parts: Vec<ComplementPart>,
}

/// Part `j` follows member `j` (1-based); corners strictly inside or ending a
/// span belong to no part.
pub fn complementary_decomposition(ctx: &FamilyContext, beta: &ColoredCollection) -> ComplementaryDecomposition {
    complement_parts(ctx, beta.members())
}

fn complement_parts(ctx: &FamilyContext, members: &[Subpath]) -> ComplementaryDecomposition {
    let len = ctx.edge_count();
    let mut owner = vec![usize::MAX; len + 1];
    let mut spanned = vec![false; ctx.last_corner() + 1];
    for (idx, m) in members.iter().enumerate() {
        let (a, b) = m.edges(ctx);
        for s in a..=b {
            owner[s] = idx;
        }
        if let Subpath::Span { start, end, .. } = *m {
            for flag in &mut spanned[start + 1..=end] {
                *flag = true;
            }
        }
    }
    let mut parts = vec![ComplementPart::default(); members.len() + 1];
    let mut current = 0;
    for s in 1..=len {
        if owner[s] != usize::MAX {
            current = owner[s] + 1;
        } else {
            parts[current].edges.push(s);
        }
        if let Some(j) = ctx.corner_at(s) {
            if !spanned[j] {
                parts[current].corners.push(j);
            }
        }
    }
    ComplementaryDecomposition { parts }
}

/// Split a blue or brown span into minimal brown prefixes followed by at most one blue span.
pub fn atomic_decomposition(ctx: &FamilyContext, span: &Subpath) -> Result<Vec<Subpath>> {
    let (mut i, k) = match *span {
        Subpath::Span { start, end, color: SpanColor::Blue | SpanColor::Brown(_) } => (start, end),
        _ => return Err(Error::InvalidParameter(format!("{span} is not a blue or brown span"))),
    };
    let mut out = Vec::new();
    while i < k {
        match ctx.first_exceeding(i) {
            Some(t) if t <= k => {
                out.push(classify_span(ctx, i, t, Framework::Simplified)?);
                i = t;
            }
            _ => {
                out.push(classify_span(ctx, i, k, Framework::Simplified)?);
                break;
            }
        }
    }
    Ok(out)
}

/// The subword of `D_n` covered by `sp`.
pub fn subpath_word(ctx: &FamilyContext, sp: &Subpath) -> StepWord {
    let (a, b) = sp.edges(ctx);
    StepWord::from_steps(ctx.d_path().steps()[a - 1..b].to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paths::Decomposition as D;

    fn ctx(r: u64, n: usize) -> FamilyContext {
        FamilyContext::new(r, n).unwrap()
    }

    fn span(c: &FamilyContext, i: usize, k: usize) -> Subpath {
        classify_span(c, i, k, Framework::Simplified).unwrap()
    }

    fn six_member(c: &FamilyContext) -> ColoredCollection {
        let m = vec![span(c, 0, 1), Subpath::Edge(4), Subpath::Edge(6), span(c, 2, 5), Subpath::Edge(16), span(c, 6, 8)];
        ColoredCollection::new(c, Framework::Simplified, m)
    }

    #[test]
    fn classification() {
        let c5 = ctx(3, 5);
        assert_eq!(span(&c5, 0, 1), Subpath::Span { start: 0, end: 1, color: SpanColor::Blue });
        assert_eq!(span(&c5, 2, 3), Subpath::Span { start: 2, end: 3, color: SpanColor::Brown(D { m: 3, w: 2 }) });
        let c6 = ctx(3, 6);
        let red = classify_span(&c6, 2, 5, Framework::LeeSchiffler).unwrap();
        assert_eq!(red, Subpath::Span { start: 2, end: 5, color: SpanColor::Red });
        assert!(classify_span(&c6, 5, 5, Framework::Simplified).is_err());
        assert!(classify_span(&c6, 0, 9, Framework::Simplified).is_err());
    }

    #[test]
    fn full_span_is_blue() {
        for (r, n) in [(3, 5), (3, 6), (4, 5), (2, 6)] {
            let c = ctx(r, n);
            assert_eq!(span(&c, 0, c.last_corner()), Subpath::Span { start: 0, end: c.last_corner(), color: SpanColor::Blue });
        }
    }

    #[test]
    fn small_counts() {
        for (r, n, expected) in [(3, 3, 2u128), (3, 4, 9), (3, 5, 365), (2, 6, 34), (4, 4, 17)] {
            let c = ctx(r, n);
            assert_eq!(count_collections(&c, Framework::Simplified).unwrap(), expected);
            assert_eq!(count_collections(&c, Framework::LeeSchiffler).unwrap(), expected);
            let mut seen = 0u128;
            for_each_collection(&c, Framework::Simplified, &Limits::default(), |_| seen += 1).unwrap();
            assert_eq!(seen, expected);
        }
    }

    #[test]
    fn guard_aborts() {
        let c = ctx(3, 5);
        let limits = Limits { max_collections: 100, max_subsets: 100 };
        let err = for_each_collection(&c, Framework::Simplified, &limits, |_| {}).unwrap_err();
        assert_eq!(err, Error::GuardExceeded { needed: 365, limit: 100 });
    }

    #[test]
    fn canonical_stream_is_sorted_and_valid() {
        let c = ctx(3, 5);
        let all: Vec<_> = enumerate_collections(&c, Framework::Simplified, &Limits::default()).unwrap().collect();
        assert_eq!(all.len(), 365);
        let keys: Vec<_> = all.iter().map(|b| collection_key(&c, b.members())).collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]));
        for b in &all {
            validate_collection(&c, b).unwrap();
        }
        assert!(all[0].is_empty());
    }

    #[test]
    fn stats() {
        let c5 = ctx(3, 5);
        let b = ColoredCollection::new(&c5, Framework::Simplified, vec![span(&c5, 0, 1), Subpath::Edge(6), span(&c5, 2, 3)]);
        assert_eq!(collection_stats(&c5, &b), (2, 6));
        validate_collection(&c5, &b).unwrap();
        assert_eq!(collection_stats(&c5, &ColoredCollection::empty(Framework::Simplified)), (0, 0));
        let c6 = ctx(3, 6);
        assert_eq!(collection_stats(&c6, &six_member(&c6)), (6, 19));
    }

    #[test]
    fn brown_needs_a_covered_predecessor() {
        let c5 = ctx(3, 5);
        let b = ColoredCollection::new(&c5, Framework::Simplified, vec![span(&c5, 0, 1), span(&c5, 2, 3)]);
        assert!(validate_collection(&c5, &b).is_err());
        let glued = ColoredCollection::new(&c5, Framework::Simplified, vec![span(&c5, 0, 1), span(&c5, 1, 2)]);
        assert!(validate_collection(&c5, &glued).is_err());
    }

    #[test]
    fn chi_example() {
        let c6 = ctx(3, 6);
        let ls = |i, k| classify_span(&c6, i, k, Framework::LeeSchiffler).unwrap();
        let beta = ColoredCollection::new(&c6, Framework::LeeSchiffler, vec![ls(0, 1), Subpath::Edge(4), ls(2, 5), Subpath::Edge(16), ls(6, 8)]);
        assert_eq!(ls(6, 8), Subpath::Span { start: 6, end: 8, color: SpanColor::Green(D { m: 3, w: 1 }) });
        let image = chi_map(&c6, &beta).unwrap();
        assert_eq!(image, six_member(&c6));
        assert_eq!(collection_stats(&c6, &beta), collection_stats(&c6, &image));
        let empty = ColoredCollection::empty(Framework::LeeSchiffler);
        assert!(chi_map(&c6, &empty).unwrap().is_empty());
    }

    #[test]
    fn complements() {
        let c5 = ctx(3, 5);
        let b = ColoredCollection::new(&c5, Framework::Simplified, vec![span(&c5, 0, 1), Subpath::Edge(6), span(&c5, 2, 3)]);
        let parts = complementary_decomposition(&c5, &b).parts;
        assert_eq!(parts.len(), 4);
        assert_eq!(parts[0], ComplementPart::default());
        assert_eq!(parts[1], ComplementPart { edges: vec![4, 5], corners: vec![] });
        assert_eq!(parts[2], ComplementPart { edges: vec![], corners: vec![2] });
        assert_eq!(parts[3], ComplementPart::default());

        let c6 = ctx(3, 6);
        let parts = complementary_decomposition(&c6, &six_member(&c6)).parts;
        let summary: Vec<_> = parts.iter().map(|p| (p.edges.clone(), p.corners.clone())).collect();
        assert_eq!(
            summary,
            vec![
                (vec![], vec![]),
                (vec![], vec![]),
                (vec![5], vec![]),
                (vec![], vec![2]),
                (vec![15], vec![]),
                (vec![], vec![6]),
                (vec![], vec![]),
            ]
        );

        let empty = complementary_decomposition(&c6, &ColoredCollection::empty(Framework::Simplified)).parts;
        assert_eq!(empty.len(), 1);
        assert_eq!(empty[0].edge_count(), 21);
        assert_eq!(empty[0].corners, (1..=8).collect::<Vec<_>>());
    }

    #[test]
    fn atomic_components() {
        let c6 = ctx(3, 6);
        let parts = atomic_decomposition(&c6, &span(&c6, 2, 5)).unwrap();
        assert_eq!(parts, vec![span(&c6, 2, 3), Subpath::Span { start: 3, end: 5, color: SpanColor::Blue }]);
        assert_eq!(atomic_decomposition(&c6, &span(&c6, 0, 1)).unwrap(), vec![span(&c6, 0, 1)]);
        let c5 = ctx(3, 5);
        assert_eq!(atomic_decomposition(&c5, &span(&c5, 2, 3)).unwrap(), vec![span(&c5, 2, 3)]);
    }

    #[test]
    fn json_rendering() {
        let c5 = ctx(3, 5);
        let b = ColoredCollection::new(&c5, Framework::Simplified, vec![span(&c5, 0, 1), Subpath::Edge(6), span(&c5, 2, 3)]);
        assert_eq!(
            b.to_json().to_string(),
            r#"[{"span":[0,1],"color":"blue"},{"edge":6},{"span":[2,3],"color":"brown","m":3,"w":2}]"#
        );
        assert_eq!(b.to_string(), "{g(0,1):blue, a6, g(2,3):brown(3,2)}");
    }
}
