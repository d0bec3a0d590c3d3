//! Compatible pairs on maximal Dyck paths: the lattice-point predicate,
//! local shadows, brute-force enumeration, insertion and `{h,v,H,V}` words.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::coloring::Limits;
use crate::edgeset::EdgeSet;
use crate::error::{Error, Result};
use crate::paths::{build_maximal_path, Step, StepWord};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    Horizontal,
    Vertical,
}

/// `S1` (horizontal edges `η_i`) and `S2` (vertical edges `ν_j`) on a host path, both 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EdgePair {
    host: StepWord,
    r: u64,
    s1: EdgeSet,
    s2: EdgeSet,
}

impl EdgePair {
    pub fn new<A, B>(host: StepWord, r: u64, s1: A, s2: B) -> Result<Self>
    where
        A: IntoIterator<Item = usize>,
        B: IntoIterator<Item = usize>,
    {
        let (a, b) = host.endpoint();
        let mut set1 = EdgeSet::new(a);
        for i in s1 {
            if i == 0 || i > a {
                return Err(Error::InvalidPair(format!("horizontal index {i} outside 1..={a}")));
            }
            set1.insert(i - 1);
        }
        let mut set2 = EdgeSet::new(b);
        for j in s2 {
            if j == 0 || j > b {
                return Err(Error::InvalidPair(format!("vertical index {j} outside 1..={b}")));
            }
            set2.insert(j - 1);
        }
        Ok(EdgePair { host, r, s1: set1, s2: set2 })
    }

    /// Build from sets whose bit `i` stands for index `i + 1`.
    pub fn from_sets(host: StepWord, r: u64, s1: EdgeSet, s2: EdgeSet) -> Result<Self> {
        let (a, b) = host.endpoint();
        if s1.capacity() != a || s2.capacity() != b {
            return Err(Error::InvalidPair("set sizes do not match the host".into()));
        }
        Ok(EdgePair { host, r, s1, s2 })
    }

    pub fn host(&self) -> &StepWord {
        &self.host
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn s1(&self) -> &EdgeSet {
        &self.s1
    }

    pub fn s2(&self) -> &EdgeSet {
        &self.s2
    }

    pub fn s1_indices(&self) -> Vec<usize> {
        self.s1.iter().map(|i| i + 1).collect()
    }

    pub fn s2_indices(&self) -> Vec<usize> {
        self.s2.iter().map(|i| i + 1).collect()
    }

    fn marks(&self) -> Vec<bool> {
        let (mut h, mut v) = (0, 0);
        self.host
            .steps()
            .iter()
            .map(|s| match s {
                Step::E => {
                    h += 1;
                    self.s1.contains(h - 1)
                }
                Step::N => {
                    v += 1;
                    self.s2.contains(v - 1)
                }
            })
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "S1": self.s1_indices(),
            "S2": self.s2_indices(),
            "word": pair_word(self).to_string(),
        })
    }
}

impl fmt::Display for EdgePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S1={:?} S2={:?}", self.s1_indices(), self.s2_indices())
    }
}

fn edge_positions(host: &StepWord, orientation: Orientation) -> Vec<usize> {
    let want = match orientation {
        Orientation::Horizontal => Step::E,
        Orientation::Vertical => Step::N,
    };
    host.steps().iter().enumerate().filter(|(_, s)| **s == want).map(|(p, _)| p).collect()
}

/// Steps from the left end of the horizontal edge at `pos` to the first lattice
/// point `t` with `|ut|₂ = r |ut ∩ S1|`, within one loop.
fn forward_closure(steps: &[Step], marks: &[bool], r: u64, pos: usize) -> Option<usize> {
    let len = steps.len();
    let (mut vertical, mut chosen) = (0u64, 0u64);
    for st in 1..len {
        let q = (pos + st - 1) % len;
        match steps[q] {
            Step::N => vertical += 1,
            Step::E if marks[q] => chosen += 1,
            Step::E => {}
        }
        if vertical == r * chosen {
            return Some(st);
        }
    }
    None
}

/// Steps back from the top of the vertical edge at `pos` to the first lattice
/// point `t` with `|tw|₁ = r |tw ∩ S2|`, within one loop.
fn backward_closure(steps: &[Step], marks: &[bool], r: u64, pos: usize) -> Option<usize> {
    let len = steps.len();
    let (mut horizontal, mut chosen) = (0u64, 0u64);
    for st in 1..len {
        let q = (pos + 1 + len - st) % len;
        match steps[q] {
            Step::E => horizontal += 1,
            Step::N if marks[q] => chosen += 1,
            Step::N => {}
        }
        if horizontal == r * chosen {
            return Some(st);
        }
    }
    None
}

/// Length of the cyclic subpath from the left end of edge `e1` to the top of edge `e2`.
fn cyclic_span(len: usize, e1: usize, e2: usize) -> usize {
    match (e2 + 1 + len - e1) % len {
        0 => len,
        d => d,
    }
}

fn compatible_marks(steps: &[Step], marks: &[bool], r: u64) -> bool {
    let mut horizontal = Vec::new();
    let mut vertical = Vec::new();
    for (p, s) in steps.iter().enumerate() {
        if marks[p] {
            match s {
                Step::E => horizontal.push((p, forward_closure(steps, marks, r, p))),
                Step::N => vertical.push((p, backward_closure(steps, marks, r, p))),
            }
        }
    }
    let len = steps.len();
    horizontal.iter().all(|&(e1, fwd)| {
        vertical.iter().all(|&(e2, bwd)| {
            let span = cyclic_span(len, e1, e2);
            fwd.is_some_and(|d| d < span) || bwd.is_some_and(|d| d < span)
        })
    })
}

/// For every `η ∈ S1` (left vertex `u`) and `ν ∈ S2` (top vertex `w`), some
/// lattice point `t ≠ u, w` on the cyclic subpath `u → w` has
/// `|tw|₁ = r|tw ∩ S2|` or `|ut|₂ = r|ut ∩ S1|`.
pub fn is_compatible(pair: &EdgePair) -> bool {
    compatible_marks(pair.host.steps(), &pair.marks(), pair.r)
}

/// The same predicate evaluated by scanning every `t` for every edge pair.
pub fn is_compatible_by_definition(pair: &EdgePair) -> bool {
    let steps = pair.host.steps();
    let marks = pair.marks();
    let len = steps.len();
    let r = pair.r;
    let h_pos: Vec<usize> = edge_positions(&pair.host, Orientation::Horizontal)
        .into_iter()
        .filter(|&p| marks[p])
        .collect();
    let v_pos: Vec<usize> = edge_positions(&pair.host, Orientation::Vertical)
        .into_iter()
        .filter(|&p| marks[p])
        .collect();
    for &e1 in &h_pos {
        for &e2 in &v_pos {
            let span = cyclic_span(len, e1, e2);
            let edge_at = |j: usize| (e1 + j) % len;
            let found = (1..span).any(|dt| {
                let (mut ut_vertical, mut ut_chosen) = (0u64, 0u64);
                for j in 0..dt {
                    let q = edge_at(j);
                    match steps[q] {
                        Step::N => ut_vertical += 1,
                        Step::E => ut_chosen += marks[q] as u64,
                    }
                }
                let (mut tw_horizontal, mut tw_chosen) = (0u64, 0u64);
                for j in dt..span {
                    let q = edge_at(j);
                    match steps[q] {
                        Step::E => tw_horizontal += 1,
                        Step::N => tw_chosen += marks[q] as u64,
                    }
                }
                tw_horizontal == r * tw_chosen || ut_vertical == r * ut_chosen
            });
            if !found {
                return false;
            }
        }
    }
    true
}

/// Edges of one orientation, 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shadow {
    pub orientation: Orientation,
    pub edges: BTreeSet<usize>,
}

impl Shadow {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

/// The local shadow of `η_index ∈ S1` (side `Horizontal`) or `ν_index ∈ S2` (side `Vertical`).
///
/// It is the set of opposite-orientation edges on the shortest subpath from the
/// edge that balances the count; when no such subpath exists it is every
/// opposite-orientation edge.
pub fn local_shadow(pair: &EdgePair, side: Orientation, index: usize) -> Result<Shadow> {
    let member = match side {
        Orientation::Horizontal => index >= 1 && pair.s1.contains(index - 1),
        Orientation::Vertical => index >= 1 && pair.s2.contains(index - 1),
    };
    if !member {
        return Err(Error::InvalidPair(format!("edge {index} is not in the {side:?} set")));
    }
    let steps = pair.host.steps();
    let marks = pair.marks();
    let len = steps.len();
    let pos = edge_positions(&pair.host, side)[index - 1];
    let rank = rank_table(steps);
    let (orientation, positions): (Orientation, Vec<usize>) = match side {
        Orientation::Horizontal => {
            let walked = forward_closure(steps, &marks, pair.r, pos)
                .map(|st| (0..st).map(|j| (pos + j) % len).collect())
                .unwrap_or_else(|| (0..len).collect::<Vec<_>>());
            (Orientation::Vertical, walked.into_iter().filter(|&q| steps[q] == Step::N).collect())
        }
        Orientation::Vertical => {
            let walked = backward_closure(steps, &marks, pair.r, pos)
                .map(|st| (1..=st).map(|j| (pos + 1 + len - j) % len).collect())
                .unwrap_or_else(|| (0..len).collect::<Vec<_>>());
            (Orientation::Horizontal, walked.into_iter().filter(|&q| steps[q] == Step::E).collect())
        }
    };
    Ok(Shadow { orientation, edges: positions.into_iter().map(|q| rank[q]).collect() })
}

/// Union of the local shadows of a subset of `S1` or `S2`.
pub fn shadow(pair: &EdgePair, side: Orientation, indices: &[usize]) -> Result<Shadow> {
    let orientation = match side {
        Orientation::Horizontal => Orientation::Vertical,
        Orientation::Vertical => Orientation::Horizontal,
    };
    let mut edges = BTreeSet::new();
    for &i in indices {
        edges.extend(local_shadow(pair, side, i)?.edges);
    }
    Ok(Shadow { orientation, edges })
}

fn rank_table(steps: &[Step]) -> Vec<usize> {
    let (mut h, mut v) = (0, 0);
    steps
        .iter()
        .map(|s| match s {
            Step::E => {
                h += 1;
                h
            }
            Step::N => {
                v += 1;
                v
            }
        })
        .collect()
}

/// True when every local shadow closes without running past either end of the host.
pub fn has_non_spanning_shadows(pair: &EdgePair) -> bool {
    let steps = pair.host.steps();
    let marks = pair.marks();
    let len = steps.len();
    steps.iter().enumerate().filter(|(p, _)| marks[*p]).all(|(p, s)| match s {
        Step::E => forward_closure(steps, &marks, pair.r, p).is_some_and(|st| p + st <= len),
        Step::N => backward_closure(steps, &marks, pair.r, p).is_some_and(|st| st <= p + 1),
    })
}

/// Lazily scans all `2^L` subsets in ascending bitmask order (bit `p` for the edge at path position `p`).
pub struct PairStream {
    host: StepWord,
    r: u64,
    next: u128,
    end: u128,
}

impl Iterator for PairStream {
    type Item = EdgePair;

    fn next(&mut self) -> Option<EdgePair> {
        let steps = self.host.steps();
        let mut marks = vec![false; steps.len()];
        while self.next < self.end {
            let mask = self.next;
            self.next += 1;
            for (p, m) in marks.iter_mut().enumerate() {
                *m = mask >> p & 1 == 1;
            }
            if compatible_marks(steps, &marks, self.r) {
                let (a, b) = self.host.endpoint();
                let (mut s1, mut s2) = (EdgeSet::new(a), EdgeSet::new(b));
                let rank = rank_table(steps);
                for (p, s) in steps.iter().enumerate() {
                    if marks[p] {
                        match s {
                            Step::E => s1.insert(rank[p] - 1),
                            Step::N => s2.insert(rank[p] - 1),
                        }
                    }
                }
                return Some(EdgePair { host: self.host.clone(), r: self.r, s1, s2 });
            }
        }
        None
    }
}

/// Every compatible pair on `host`, by exhaustive subset scan.
pub fn enumerate_compatible_pairs(host: &StepWord, r: u64, limits: &Limits) -> Result<PairStream> {
    let len = host.len();
    if len >= 127 {
        return Err(Error::GuardExceeded { needed: u128::MAX, limit: limits.max_subsets });
    }
    let end = 1u128 << len;
    limits.check_subsets(end)?;
    Ok(PairStream { host: host.clone(), r, next: 0, end })
}

/// Insert `inserted` at lattice point `position` of the host: the combined pair
/// lives on `P(a1 + a1', a2 + a2')`, with indices up to the position kept,
/// the inserted indices shifted past it, and later host indices shifted by the
/// inserted sizes.
pub fn insert_pair(host_pair: &EdgePair, inserted: &EdgePair, position: (usize, usize)) -> Result<EdgePair> {
    if host_pair.r != inserted.r {
        return Err(Error::InvalidPair("pairs use different r".into()));
    }
    let (j1, j2) = position;
    let on_host = host_pair.host.vertices().iter().any(|&(x, y)| (x as usize, y as usize) == (j1, j2));
    if !on_host {
        return Err(Error::InvalidPair(format!("({j1}, {j2}) is not a lattice point of the host")));
    }
    let (a1, a2) = host_pair.host.endpoint();
    let (b1, b2) = inserted.host.endpoint();
    let host = build_maximal_path((a1 + b1) as u64, (a2 + b2) as u64)?;
    let splice = |s: &EdgeSet, t: &EdgeSet, j: usize, shift: usize| -> Vec<usize> {
        let mut out: Vec<usize> = s.iter().map(|i| i + 1).filter(|&i| i <= j).collect();
        out.extend(t.iter().map(|i| i + 1 + j));
        out.extend(s.iter().map(|i| i + 1).filter(|&i| i > j).map(|i| i + shift));
        out
    };
    let s1 = splice(&host_pair.s1, &inserted.s1, j1, b1);
    let s2 = splice(&host_pair.s2, &inserted.s2, j2, b2);
    EdgePair::new(host, host_pair.r, s1, s2)
}

/// Whether the maximal path of the combined endpoint is the host word with the
/// inserted word spliced in at `position`.
pub fn is_geometric_splice(host: &StepWord, inserted: &StepWord, position: (usize, usize)) -> Result<bool> {
    let verts = host.vertices();
    let idx = verts
        .iter()
        .position(|&(x, y)| (x as usize, y as usize) == position)
        .ok_or_else(|| Error::InvalidPair(format!("{position:?} is not a lattice point of the host")))?;
    let (a1, a2) = host.endpoint();
    let (b1, b2) = inserted.endpoint();
    let combined = build_maximal_path((a1 + b1) as u64, (a2 + b2) as u64)?;
    let mut spliced = host.steps()[..idx].to_vec();
    spliced.extend_from_slice(inserted.steps());
    spliced.extend_from_slice(&host.steps()[idx..]);
    Ok(combined.steps() == spliced.as_slice())
}

/// One letter per host edge: `h`/`H` horizontal, `v`/`V` vertical, capitals for members.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PairWord(String);

impl PairWord {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The pair this word encodes, on the host read off its letters.
    pub fn to_pair(&self, r: u64) -> Result<EdgePair> {
        let mut steps = Vec::with_capacity(self.0.len());
        let (mut s1, mut s2) = (Vec::new(), Vec::new());
        let (mut h, mut v) = (0, 0);
        for ch in self.0.chars() {
            match ch {
                'h' | 'H' => {
                    h += 1;
                    steps.push(Step::E);
                    if ch == 'H' {
                        s1.push(h);
                    }
                }
                'v' | 'V' => {
                    v += 1;
                    steps.push(Step::N);
                    if ch == 'V' {
                        s2.push(v);
                    }
                }
                other => return Err(Error::UnknownLetter(other)),
            }
        }
        EdgePair::new(StepWord::from_steps(steps), r, s1, s2)
    }
}

impl FromStr for PairWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if let Some(bad) = s.chars().find(|c| !matches!(c, 'h' | 'v' | 'H' | 'V')) {
            return Err(Error::UnknownLetter(bad));
        }
        Ok(PairWord(s.to_owned()))
    }
}

impl fmt::Display for PairWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

pub fn pair_word(pair: &EdgePair) -> PairWord {
    let marks = pair.marks();
    let word = pair
        .host
        .steps()
        .iter()
        .zip(marks)
        .map(|(s, m)| match (s, m) {
            (Step::E, false) => 'h',
            (Step::E, true) => 'H',
            (Step::N, false) => 'v',
            (Step::N, true) => 'V',
        })
        .collect();
    PairWord(word)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn host(a: u64, b: u64) -> StepWord {
        build_maximal_path(a, b).unwrap()
    }

    fn c(r: u64, n: usize) -> StepWord {
        crate::paths::FamilyContext::new(r, n).unwrap().path(crate::paths::Family::C)
    }

    #[test]
    fn predicate_examples() {
        let c4 = c(3, 4);
        assert!(is_compatible(&EdgePair::new(c4.clone(), 3, [], []).unwrap()));
        let p = EdgePair::new(c4, 3, [1], [1]).unwrap();
        assert!(!is_compatible(&p));
        assert!(!is_compatible_by_definition(&p));
        let p = EdgePair::new(c(3, 5), 3, [4, 5], [1, 3]).unwrap();
        assert!(is_compatible(&p));
        assert!(is_compatible_by_definition(&p));
    }

    #[test]
    fn shadows() {
        let c4 = c(3, 4);
        let p = EdgePair::new(c4.clone(), 3, [], [1]).unwrap();
        let sh = local_shadow(&p, Orientation::Vertical, 1).unwrap();
        assert_eq!(sh.orientation, Orientation::Horizontal);
        assert_eq!(sh.edges, BTreeSet::from([1, 2, 3]));
        let p = EdgePair::new(c4, 3, [3], []).unwrap();
        let sh = local_shadow(&p, Orientation::Horizontal, 3).unwrap();
        assert_eq!(sh.edges, BTreeSet::from([1]));
        assert!(local_shadow(&p, Orientation::Horizontal, 1).is_err());
    }

    #[test]
    fn first_edge_shadow_has_min_size() {
        for (a, b, r) in [(5u64, 3u64, 2u64), (8, 3, 3), (4, 7, 2), (3, 2, 4)] {
            let p = EdgePair::new(host(a, b), r, [1], []).unwrap();
            let sh = local_shadow(&p, Orientation::Horizontal, 1).unwrap();
            assert_eq!(sh.len() as u64, b.min(r));
        }
    }

    #[test]
    fn enumeration_counts() {
        let limits = Limits::default();
        let pairs: Vec<_> = enumerate_compatible_pairs(&c(3, 3), 3, &limits).unwrap().collect();
        assert_eq!(pairs.len(), 2);
        assert_eq!(pairs[0].s1_indices(), Vec::<usize>::new());
        assert_eq!(pairs[1].s1_indices(), vec![1]);
        let pairs: Vec<_> = enumerate_compatible_pairs(&c(3, 4), 3, &limits).unwrap().collect();
        assert_eq!(pairs.len(), 9);
        let with_s2: Vec<_> = pairs.iter().filter(|p| !p.s2().is_empty()).collect();
        assert_eq!(with_s2.len(), 1);
        assert_eq!((with_s2[0].s1_indices(), with_s2[0].s2_indices()), (vec![], vec![1]));
        assert_eq!(enumerate_compatible_pairs(&c(3, 5), 3, &limits).unwrap().count(), 365);
    }

    #[test]
    fn subset_guard() {
        let limits = Limits { max_collections: 10, max_subsets: 1 << 10 };
        assert!(matches!(
            enumerate_compatible_pairs(&c(3, 5), 3, &limits),
            Err(Error::GuardExceeded { needed: 2048, limit: 1024 })
        ));
    }

    #[test]
    fn insertion_cases() {
        let e = host(1, 0);
        let base = EdgePair::new(host(3, 1), 2, [1, 3], []).unwrap();
        let empty = EdgePair::new(e.clone(), 2, [], []).unwrap();
        let out = insert_pair(&base, &empty, (0, 0)).unwrap();
        assert_eq!(out.s1_indices(), vec![2, 4]);
        let one = EdgePair::new(e, 2, [1], []).unwrap();
        let out = insert_pair(&one, &one, (1, 0)).unwrap();
        assert_eq!(out.host().to_string(), "EE");
        assert_eq!(out.s1_indices(), vec![1, 2]);
        assert!(insert_pair(&one, &one, (0, 1)).is_err());
    }

    #[test]
    fn words() {
        assert_eq!(pair_word(&EdgePair::new(c(3, 4), 3, [], []).unwrap()).as_str(), "hhhv");
        let p = EdgePair::new(c(3, 5), 3, [4, 5], [1, 3]).unwrap();
        let w = pair_word(&p);
        assert_eq!(w.to_pair(3).unwrap(), p);
        assert!("hxv".parse::<PairWord>().is_err());
    }
}
