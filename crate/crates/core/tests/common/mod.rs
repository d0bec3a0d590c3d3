//! Checks shared by the property suites and the acceptance runner.
//!
//! Each check returns the number of instances it examined, or a description
//! of the first counterexample.

#![allow(dead_code)]

use std::cmp::Ordering;

use dyckcluster::coloring::{classify_span, subpath_word, Framework, Subpath, SpanColor};
use dyckcluster::compat::{
    has_non_spanning_shadows, insert_pair, is_compatible, is_compatible_by_definition, is_geometric_splice, shadow,
    EdgePair, Orientation,
};
use dyckcluster::paths::{
    a_value, brown_weights, build_maximal_path, c_value, d_index, mw_decomposition, northwest_corners, pi_value,
    slope_compare, t_decomposition, Family, FamilyContext, Morphism, StepWord,
};
use dyckcluster::quantum::WeightTable;
use rand::Rng;

pub type Check = Result<usize, String>;

pub fn ctx(r: u64, n: usize) -> FamilyContext {
    FamilyContext::new(r, n).expect("valid parameters")
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// `D_n` is `r-1` copies of `D_{n-1}` followed by `D_{n-1}` without its first `c_{n-3}` letters.
pub fn path_recursion(r: u64, n: usize) -> Check {
    let (big, small) = (ctx(r, n), ctx(r, n - 1));
    let word = small.d_path().to_string();
    let drop = big.c(n - 3) as usize;
    let expected = format!("{}{}", word.repeat(r as usize - 1), &word[drop..]);
    ensure(big.d_path().to_string() == expected, || format!("r={r} n={n}: D_n is not built from D_(n-1)"))?;
    Ok(1)
}

/// `λ(D_n) = D_{n+1}`, `θ(D_n) = C_n` and `θλθ⁻¹(C_n) = C_{n+1}`.
pub fn morphism_towers(r: u64, n: usize) -> Check {
    let (c, next) = (ctx(r, n), ctx(r, n + 1));
    let (lambda, theta) = (Morphism::lambda(r), Morphism::theta());
    let d = c.d_path().to_string();
    let cw = c.path(Family::C).to_string();
    let lifted = lambda.apply(&d).map_err(|e| e.to_string())?;
    ensure(lifted == next.d_path().to_string(), || format!("r={r} n={n}: lambda(D_n) != D_(n+1)"))?;
    ensure(theta.apply(&d).map_err(|e| e.to_string())? == cw, || format!("r={r} n={n}: theta(D_n) != C_n"))?;
    let conj = theta
        .preimage(&cw)
        .and_then(|w| lambda.apply(&w))
        .and_then(|w| theta.apply(&w))
        .map_err(|e| e.to_string())?;
    ensure(conj == next.path(Family::C).to_string(), || format!("r={r} n={n}: conjugated lambda(C_n) != C_(n+1)"))?;
    Ok(3)
}

/// `π_n` permutes `0..c_{n-1}` on `1..=c_{n-1}`; for `i < j`, `slope(w_i, w_j) >= s` iff `π_n(i) >= π_n(j)`.
pub fn pi_order(r: u64, n: usize) -> Check {
    let c = ctx(r, n);
    let len = c.edge_count();
    let pis: Vec<i64> = (0..=len).map(|i| pi_value(&c, i)).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
    ensure(pis[0] == 0 && pis[len] == 0, || format!("r={r} n={n}: endpoints not zero"))?;
    let mut sorted = pis[1..].to_vec();
    sorted.sort_unstable();
    ensure(sorted == (0..len as i64).collect::<Vec<_>>(), || format!("r={r} n={n}: not a permutation"))?;
    let verts: Vec<(i64, i64)> = (0..=len).map(|i| c.vertex(i).unwrap()).collect();
    let mut count = 0;
    for i in 1..=len {
        for j in i + 1..=len {
            let steep = slope_compare(verts[i], verts[j], c.slope()).map_err(|e| e.to_string())? != Ordering::Less;
            ensure((pis[i] >= pis[j]) == steep, || format!("r={r} n={n}: order differs at ({i},{j})"))?;
            count += 1;
        }
    }
    Ok(count)
}

/// `π_n(r x + (r-1) y) = π_{n-1}(x + y)` for every vertex `(x, y)` of `D_{n-1}`.
pub fn corner_recursion(r: u64, n: usize) -> Check {
    let (big, small) = (ctx(r, n), ctx(r, n - 1));
    let verts = small.d_path().vertices();
    for &(x, y) in &verts {
        let i = (r as i64 * x + (r as i64 - 1) * y) as usize;
        let lhs = pi_value(&big, i).map_err(|e| e.to_string())?;
        let rhs = pi_value(&small, (x + y) as usize).map_err(|e| e.to_string())?;
        ensure(lhs == rhs, || format!("r={r} n={n}: vertex ({x},{y}) gives {lhs} vs {rhs}"))?;
    }
    Ok(verts.len())
}

/// Northwest corners of `D_n` are exactly the vertices with `π_n(i) < c_{n-2}`.
pub fn corner_characterization(r: u64, n: usize) -> Check {
    let c = ctx(r, n);
    let bound = c.c(n - 2) as i64;
    let by_pi: Vec<usize> = (0..=c.edge_count()).filter(|&i| pi_value(&c, i).unwrap() < bound).collect();
    let corners: Vec<usize> = northwest_corners(c.d_path()).iter().map(|v| v.index).collect();
    ensure(by_pi == corners, || format!("r={r} n={n}: {by_pi:?} vs corners {corners:?}"))?;
    ensure(corners.len() == c.c(n - 2) as usize + 1, || format!("r={r} n={n}: wrong corner count"))?;
    Ok(corners.len())
}

/// From a non-corner vertex, `d(i)` is the next corner, at most `r-1` steps ahead.
pub fn non_corner_gap(r: u64, n: usize) -> Check {
    let c = ctx(r, n);
    let positions = c.corner_positions();
    let mut count = 0;
    for i in 0..c.edge_count() {
        if c.corner_at(i).is_some() {
            continue;
        }
        let d = d_index(&c, i).map_err(|e| e.to_string())?;
        let next = positions.iter().copied().find(|&p| p > i);
        ensure(Some(d) == next && d - i <= r as usize - 1, || format!("r={r} n={n}: d({i}) = {d}, next corner {next:?}"))?;
        count += 1;
    }
    Ok(count)
}

/// All `(m, w)` with `m >= 3`, `w` in the brown range and `c_m - w c_{m-1} = d`, up to `m = max_m`.
fn all_decompositions(r: u64, d: u64, max_m: u32) -> Vec<(u32, u64)> {
    let mut out = Vec::new();
    for m in 3..=max_m {
        for w in brown_weights(r) {
            if a_value(r, m, w).ok() == Some(d as i128) {
                out.push((m, w));
            }
        }
    }
    out
}

/// Every corner step `t(i) - i` and every `d(i) - i` at a corner has an `(m, w)`,
/// unique for `r >= 3`. For `r = 2` every `a_{m,1}` is 1, so only existence is checked.
pub fn decompositions(r: u64, n: usize) -> Check {
    let c = ctx(r, n);
    let max_m = n as u32 + 4;
    let mut count = 0;
    for i in 0..c.last_corner() {
        if let Some(step) = t_decomposition(&c, i).map_err(|e| e.to_string())? {
            let d = (step.t - i) as u64;
            let all = all_decompositions(r, d, max_m);
            let dm = step.decomposition;
            let unique = if r == 2 { all.contains(&(dm.m, dm.w)) } else { all == vec![(dm.m, dm.w)] };
            ensure(unique, || format!("r={r} n={n}: t({i})-{i}={d} has {all:?}"))?;
            count += 1;
        }
    }
    for j in 1..c.last_corner() {
        let i = c.corner_position(j);
        let d = (d_index(&c, i).map_err(|e| e.to_string())? - i) as u64;
        let all = all_decompositions(r, d, max_m);
        let found = mw_decomposition(r, d).map(|x| (x.m, x.w));
        let unique = if r == 2 { found.is_some_and(|f| all.contains(&f)) } else { all.len() == 1 && found == Some(all[0]) };
        ensure(unique, || {
            format!("r={r} n={n}: d({i})-{i}={d} has {all:?}")
        })?;
        count += 1;
    }
    if r >= 3 {
        for m in 4..=max_m {
            let big = c_value(r, m).unwrap() - (r as i128 - 1) * c_value(r, m - 1).unwrap();
            let small = c_value(r, m - 1).unwrap() - 2 * c_value(r, m - 2).unwrap();
            ensure(big > small, || format!("r={r}: decomposition ranges overlap at m={m}"))?;
        }
    }
    Ok(count)
}

/// Atomic brown spans spell `λ^{m-2}(E^{r-w-1}N)` with `a_{m+1,w}` edges, and
/// the `a_{m-1,w}` edges before them spell an atomic `(m-2, w)` word or `E^{a-1}N`.
pub fn atomic_brown_shape(r: u64, n: usize) -> Check {
    let c = ctx(r, n);
    let lambda = Morphism::lambda(r);
    let mut count = 0;
    for i in 0..c.last_corner() {
        let Some(t) = c.first_exceeding(i) else { continue };
        let sp = classify_span(&c, i, t, Framework::Simplified).map_err(|e| e.to_string())?;
        let Subpath::Span { color: SpanColor::Brown(d), .. } = sp else {
            return Err(format!("r={r} n={n}: span ({i},{t}) is not brown"));
        };
        let atomic = |m: u32| -> String {
            let mut w = format!("{}N", "E".repeat((r - d.w - 1) as usize));
            for _ in 2..m {
                w = lambda.apply(&w).unwrap();
            }
            w
        };
        let word = subpath_word(&c, &sp).to_string();
        ensure(word == atomic(d.m), || format!("r={r} n={n}: span ({i},{t}) spells {word}"))?;
        let size = a_value(r, d.m + 1, d.w).unwrap();
        ensure(word.len() as i128 == size, || format!("r={r} n={n}: span ({i},{t}) has {} edges, not {size}", word.len()))?;

        let before = a_value(r, d.m - 1, d.w).unwrap() as usize;
        let (first, _) = sp.edges(&c);
        if first > before {
            let steps = &c.d_path().to_string()[first - 1 - before..first - 1];
            let expected = if d.m >= 5 { atomic(d.m - 2) } else { String::new() };
            let short = format!("{}N", "E".repeat(before.saturating_sub(1)));
            let ok = steps == expected || (before < r as usize && steps == short);
            ensure(ok, || format!("r={r} n={n}: predecessors of ({i},{t}) spell {steps}"))?;
        }
        count += 1;
    }
    Ok(count)
}

/// `r a_{m,w} = a_{m+1,w} + a_{m-1,w}`.
pub fn a_identity(r: u64, max_m: u32) -> Check {
    let mut count = 0;
    for m in 3..=max_m {
        for w in brown_weights(r) {
            let (lo, mid, hi) = (a_value(r, m - 1, w).unwrap(), a_value(r, m, w).unwrap(), a_value(r, m + 1, w).unwrap());
            ensure(r as i128 * mid == hi + lo, || format!("r={r} m={m} w={w}"))?;
            count += 1;
        }
    }
    Ok(count)
}

/// A maximal path with `1..=max_a` east and `0..=max_b` north steps.
pub fn random_host<R: Rng>(rng: &mut R, max_a: u64, max_b: u64) -> StepWord {
    build_maximal_path(rng.gen_range(1..=max_a), rng.gen_range(0..=max_b)).unwrap()
}

/// A uniformly random pair of subsets (not necessarily compatible).
pub fn random_pair<R: Rng>(rng: &mut R, host: &StepWord, r: u64) -> EdgePair {
    let (a, b) = host.endpoint();
    let s1: Vec<usize> = (1..=a).filter(|_| rng.gen_bool(0.4)).collect();
    let s2: Vec<usize> = (1..=b).filter(|_| rng.gen_bool(0.4)).collect();
    EdgePair::new(host.clone(), r, s1, s2).unwrap()
}

/// Shadow of any `S ⊆ S1` has `min(b, r|S|)` edges, of any `S ⊆ S2` has `min(a, r|S|)`.
pub fn shadow_law(pair: &EdgePair) -> Result<(), String> {
    let (a, b) = pair.host().endpoint();
    let r = pair.r() as usize;
    for (side, members, other) in
        [(Orientation::Horizontal, pair.s1_indices(), b), (Orientation::Vertical, pair.s2_indices(), a)]
    {
        let mut subset = Vec::new();
        for &i in &members {
            subset.push(i);
            let single = EdgePair::new(
                pair.host().clone(),
                pair.r(),
                if side == Orientation::Horizontal { subset.clone() } else { vec![] },
                if side == Orientation::Vertical { subset.clone() } else { vec![] },
            )
            .unwrap();
            let len = shadow(&single, side, &subset).map_err(|e| e.to_string())?.len();
            ensure(len == other.min(r * subset.len()), || {
                format!("{} on {}: shadow of {subset:?} has {len} edges", single, single.host())
            })?;
        }
    }
    Ok(())
}

/// Removing any single edge from a compatible pair keeps it compatible.
pub fn deletion_monotone(pair: &EdgePair) -> Result<(), String> {
    if !is_compatible(pair) {
        return Ok(());
    }
    let (s1, s2) = (pair.s1_indices(), pair.s2_indices());
    for skip in 0..s1.len() + s2.len() {
        let t1: Vec<usize> = s1.iter().enumerate().filter(|(k, _)| *k != skip).map(|(_, &x)| x).collect();
        let t2: Vec<usize> = s2.iter().enumerate().filter(|(k, _)| k + s1.len() != skip).map(|(_, &x)| x).collect();
        let smaller = EdgePair::new(pair.host().clone(), pair.r(), t1, t2).unwrap();
        ensure(is_compatible(&smaller), || format!("{pair} compatible but {smaller} is not"))?;
    }
    Ok(())
}

/// Fast and definitional predicates agree.
pub fn predicates_agree(pair: &EdgePair) -> Result<(), String> {
    let (fast, slow) = (is_compatible(pair), is_compatible_by_definition(pair));
    ensure(fast == slow, || format!("{pair} on {}: fast {fast}, definition {slow}", pair.host()))
}

/// One random insertion attempt. `None` when the drawn configuration is outside
/// the lemma's hypotheses; otherwise whether the result stayed compatible.
pub fn insertion_trial<R: Rng>(rng: &mut R) -> Option<Result<(), String>> {
    let r = rng.gen_range(2..=4u64);
    let host = random_host(rng, 6, 4);
    let inserted = random_host(rng, 4, 2);
    let verts = host.vertices();
    let (x, y) = verts[rng.gen_range(0..verts.len())];
    let position = (x as usize, y as usize);
    if !is_geometric_splice(&host, &inserted, position).ok()? {
        return None;
    }
    let host_pair = random_pair(rng, &host, r);
    let inner = random_pair(rng, &inserted, r);
    if !is_compatible(&host_pair) || !is_compatible(&inner) || !has_non_spanning_shadows(&inner) {
        return None;
    }
    let out = insert_pair(&host_pair, &inner, position).ok()?;
    Some(ensure(is_compatible_by_definition(&out), || {
        format!("inserting {inner} on {inserted} into {host_pair} on {host} at {position:?} gives incompatible {out}")
    }))
}

/// Sum of the weight table over ordered position pairs, computed directly.
pub fn word_weight(word: &str, r: u64) -> i64 {
    let table = WeightTable::new(r);
    let letters: Vec<char> = word.chars().collect();
    let mut total = 0;
    for i in 0..letters.len() {
        for j in i + 1..letters.len() {
            total += table.get(letters[i], letters[j]).unwrap();
        }
    }
    total
}

/// Change in weight when `H -> h`, `v -> V` is applied to the `u` blocks of
/// `t_1 u_1 ... t_s u_s` (all blocks over `{H, v}`).
pub fn substitution_delta(blocks: &[(String, String)], r: u64) -> i64 {
    let r = r as i64;
    let count = |s: &str, c: char| s.chars().filter(|&x| x == c).count() as i64;
    let mut total = 0;
    for (i, (_, u)) in blocks.iter().enumerate() {
        for (j, (t, _)) in blocks.iter().enumerate() {
            let term = r * count(t, 'H') * count(u, 'H') + (r * count(t, 'v') - r * r * count(t, 'H')) * count(u, 'v');
            total += if i < j { -term } else { term };
        }
    }
    total
}

pub fn sigma_blocks(blocks: &[(String, String)]) -> (String, String) {
    let sigma = Morphism::sigma();
    let before: String = blocks.iter().map(|(t, u)| format!("{t}{u}")).collect();
    let after: String = blocks.iter().map(|(t, u)| format!("{t}{}", sigma.apply(u).unwrap())).collect();
    (before, after)
}
