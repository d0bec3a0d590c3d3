//! Maximal Dyck paths, the c-sequence, Christoffel-word morphisms and the
//! slope bookkeeping behind the subpath colorings.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// `c_1..c_n` with `c_1 = 0`, `c_2 = 1`, `c_k = r c_{k-1} - c_{k-2}`.
pub fn c_sequence(r: u64, n: usize) -> Result<Vec<u64>> {
    if r < 2 {
        return Err(Error::InvalidParameter(format!("r must be at least 2, got {r}")));
    }
    if n < 1 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    let mut c = vec![0u64, 1];
    while c.len() < n {
        let k = c.len();
        let next = r
            .checked_mul(c[k - 1])
            .and_then(|v| v.checked_sub(c[k - 2]))
            .ok_or(Error::Overflow("c-sequence"))?;
        c.push(next);
    }
    c.truncate(n);
    Ok(c)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    E,
    N,
}

impl Step {
    pub fn letter(self) -> char {
        match self {
            Step::E => 'E',
            Step::N => 'N',
        }
    }
}

/// A lattice path read as a word over `{E, N}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct StepWord {
    steps: Vec<Step>,
    east: usize,
    north: usize,
}

impl StepWord {
    pub fn from_steps(steps: Vec<Step>) -> Self {
        let east = steps.iter().filter(|&&s| s == Step::E).count();
        let north = steps.len() - east;
        StepWord { steps, east, north }
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// `(a, b)`: the number of E and N steps.
    pub fn endpoint(&self) -> (usize, usize) {
        (self.east, self.north)
    }

    /// Lattice points `w_0..w_len` visited by the path.
    pub fn vertices(&self) -> Vec<(i64, i64)> {
        let mut out = Vec::with_capacity(self.len() + 1);
        let (mut x, mut y) = (0i64, 0i64);
        out.push((x, y));
        for s in &self.steps {
            match s {
                Step::E => x += 1,
                Step::N => y += 1,
            }
            out.push((x, y));
        }
        out
    }

    /// True when this is the maximal Dyck path to its own endpoint.
    pub fn is_maximal(&self) -> bool {
        let (a, b) = self.endpoint();
        if a == 0 && b == 0 {
            return false;
        }
        let (mut x, mut y) = (0u128, 0u128);
        for s in &self.steps {
            let raise = y < b as u128 && (y + 1) * a as u128 <= x * b as u128;
            match (s, raise) {
                (Step::N, true) => y += 1,
                (Step::E, false) => x += 1,
                _ => return false,
            }
        }
        true
    }
}

impl fmt::Display for StepWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            write!(f, "{}", s.letter())?;
        }
        Ok(())
    }
}

impl FromStr for StepWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|ch| match ch {
                'E' => Ok(Step::E),
                'N' => Ok(Step::N),
                other => Err(Error::UnknownLetter(other)),
            })
            .collect::<Result<Vec<_>>>()
            .map(StepWord::from_steps)
    }
}

/// The path from `(0,0)` to `(a,b)` weakly below and closest to the diagonal.
pub fn build_maximal_path(a: u64, b: u64) -> Result<StepWord> {
    if a == 0 && b == 0 {
        return Err(Error::InvalidParameter("maximal path needs (a, b) != (0, 0)".into()));
    }
    let total = a.checked_add(b).ok_or(Error::Overflow("path length"))?;
    let mut steps = Vec::with_capacity(total as usize);
    let (a128, b128) = (a as u128, b as u128);
    let (mut x, mut y) = (0u128, 0u128);
    while x < a128 || y < b128 {
        if y < b128 && (y + 1) * a128 <= x * b128 {
            steps.push(Step::N);
            y += 1;
        } else {
            steps.push(Step::E);
            x += 1;
        }
    }
    Ok(StepWord::from_steps(steps))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    D,
    C,
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "D" | "d" => Ok(Family::D),
            "C" | "c" => Ok(Family::C),
            other => Err(Error::Parse(format!("unknown path family {other:?}"))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::D => "D",
            Family::C => "C",
        })
    }
}

/// Exact slope `rise / run` with `run > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Slope {
    pub rise: i64,
    pub run: i64,
}

/// A path vertex `w_index`, tagged with its corner label `v_j` when it is a
/// northwest corner.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Vertex {
    pub x: i64,
    pub y: i64,
    pub index: usize,
    pub corner: Option<usize>,
}

impl Vertex {
    pub fn coords(&self) -> (i64, i64) {
        (self.x, self.y)
    }
}

/// Corners in southwest-to-northeast order: `w_0` plus the endpoint of every N step.
pub fn northwest_corners(word: &StepWord) -> Vec<Vertex> {
    let verts = word.vertices();
    let mut out = vec![Vertex { x: 0, y: 0, index: 0, corner: Some(0) }];
    for (i, s) in word.steps().iter().enumerate() {
        if *s == Step::N {
            let (x, y) = verts[i + 1];
            out.push(Vertex { x, y, index: i + 1, corner: Some(out.len()) });
        }
    }
    out
}

/// Compare the slope of the segment `u -> w` with `s`. Vertical segments are `Greater`.
pub fn slope_compare(u: (i64, i64), w: (i64, i64), s: Slope) -> Result<Ordering> {
    let dx = w.0 - u.0;
    let dy = w.1 - u.1;
    if dx == 0 && dy == 0 {
        return Err(Error::DegenerateSegment);
    }
    if dx == 0 {
        return Ok(Ordering::Greater);
    }
    let lhs = dy as i128 * s.run as i128;
    let rhs = s.rise as i128 * dx as i128;
    Ok(if dx > 0 { lhs.cmp(&rhs) } else { rhs.cmp(&lhs) })
}

/// The corner map `(x, y) -> ((r-1)x + (r-2)y, x + y)`.
pub fn mu_map(r: u64, v: (i64, i64)) -> (i64, i64) {
    let r = r as i64;
    ((r - 1) * v.0 + (r - 2) * v.1, v.0 + v.1)
}

/// Letter substitution on a finite alphabet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    images: BTreeMap<char, String>,
}

impl Morphism {
    pub fn new<I, S>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (char, S)>,
        S: Into<String>,
    {
        Morphism {
            images: pairs.into_iter().map(|(c, s)| (c, s.into())).collect(),
        }
    }

    /// `E -> E^{r-1}N`, `N -> E^{r-2}N`.
    pub fn lambda(r: u64) -> Self {
        let r = r as usize;
        Morphism::new([
            ('E', format!("{}N", "E".repeat(r - 1))),
            ('N', format!("{}N", "E".repeat(r - 2))),
        ])
    }

    /// `N -> EN`, `E -> E`.
    pub fn theta() -> Self {
        Morphism::new([('E', "E"), ('N', "EN")])
    }

    /// `H -> Hv`, `v -> v`.
    pub fn psi() -> Self {
        Morphism::new([('H', "Hv"), ('v', "v")])
    }

    /// `H -> H^r v`, `v -> H^{r-1} v`.
    pub fn kappa(r: u64) -> Self {
        let r = r as usize;
        Morphism::new([
            ('H', format!("{}v", "H".repeat(r))),
            ('v', format!("{}v", "H".repeat(r - 1))),
        ])
    }

    /// `H -> h`, `v -> V`.
    pub fn sigma() -> Self {
        Morphism::new([('H', "h"), ('v', "V")])
    }

    pub fn image(&self, letter: char) -> Option<&str> {
        self.images.get(&letter).map(String::as_str)
    }

    pub fn apply(&self, word: &str) -> Result<String> {
        let mut out = String::with_capacity(word.len() * 2);
        for ch in word.chars() {
            out.push_str(self.image(ch).ok_or(Error::UnknownLetter(ch))?);
        }
        Ok(out)
    }

    pub fn apply_path(&self, word: &StepWord) -> Result<StepWord> {
        self.apply(&word.to_string())?.parse()
    }

    /// The unique preimage of `word`, parsed by longest-image-first matching.
    pub fn preimage(&self, word: &str) -> Result<String> {
        let mut by_len: Vec<(&char, &String)> = self.images.iter().filter(|(_, s)| !s.is_empty()).collect();
        by_len.sort_by(|a, b| b.1.len().cmp(&a.1.len()).then(a.0.cmp(b.0)));
        let mut out = String::new();
        let mut rest = word;
        while !rest.is_empty() {
            let (letter, image) = by_len
                .iter()
                .find(|(_, img)| rest.starts_with(img.as_str()))
                .ok_or_else(|| Error::Parse(format!("{rest:?} has no preimage")))?;
            out.push(**letter);
            rest = &rest[image.len()..];
        }
        if self.apply(&out)? != word {
            return Err(Error::Parse(format!("{word:?} has no preimage")));
        }
        Ok(out)
    }
}

/// The pair `(m, w)` with `distance = c_m - w c_{m-1}` and `m >= 3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Decomposition {
    pub m: u32,
    pub w: u64,
}

impl Decomposition {
    /// Diagnostic: the stated theorem bounds `m <= n - 2`, which the data does not always respect.
    pub fn exceeds_stated_bound(&self, n: usize) -> bool {
        self.m as usize > n.saturating_sub(2)
    }
}

/// Range of `w` for brown spans: `2..=r-1`, or just `1` when `r = 2`.
pub fn brown_weights(r: u64) -> std::ops::RangeInclusive<u64> {
    if r == 2 {
        1..=1
    } else {
        2..=r - 1
    }
}

/// `c_m` for any `m >= 1`, computed in `i128`.
pub fn c_value(r: u64, m: u32) -> Result<i128> {
    if m == 0 {
        return Err(Error::InvalidParameter("c_m is defined for m >= 1".into()));
    }
    let (mut prev, mut cur) = (0i128, 1i128);
    if m == 1 {
        return Ok(0);
    }
    for _ in 2..m {
        let next = (r as i128)
            .checked_mul(cur)
            .and_then(|v| v.checked_sub(prev))
            .ok_or(Error::Overflow("c-sequence"))?;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// `a_{m,w} = c_m - w c_{m-1}` for `m >= 2`.
pub fn a_value(r: u64, m: u32, w: u64) -> Result<i128> {
    if m < 2 {
        return Err(Error::InvalidParameter("a_{m,w} is defined for m >= 2".into()));
    }
    let cm = c_value(r, m)?;
    let cm1 = c_value(r, m - 1)?;
    (w as i128)
        .checked_mul(cm1)
        .and_then(|v| cm.checked_sub(v))
        .ok_or(Error::Overflow("a_{m,w}"))
}

/// First `(m, w)` with `m >= 3`, `w` in [`brown_weights`], and `c_m - w c_{m-1} = distance`.
pub fn mw_decomposition(r: u64, distance: u64) -> Option<Decomposition> {
    let d = distance as i128;
    let weights = brown_weights(r);
    for m in 3u32.. {
        let mut smallest = i128::MAX;
        for w in weights.clone() {
            let a = a_value(r, m, w).ok()?;
            if a == d {
                return Some(Decomposition { m, w });
            }
            smallest = smallest.min(a);
        }
        if r == 2 || smallest > d {
            return None;
        }
    }
    None
}

/// First corner after `start` lying strictly above the diagonal direction, with its `(m, w)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CornerStep {
    pub t: usize,
    pub decomposition: Decomposition,
}

/// Everything derived from `(r, n)`: the c-sequence, `D_n`, its corners and slope data.
#[derive(Clone, Debug)]
pub struct FamilyContext {
    r: u64,
    n: usize,
    c: Vec<u64>,
    d_path: StepWord,
    vertices: Vec<(i64, i64)>,
    corners: Vec<usize>,
    corner_of_position: Vec<Option<usize>>,
    next_exceeding: Vec<Option<usize>>,
}

impl FamilyContext {
    pub fn new(r: u64, n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidParameter(format!("n must be at least 3, got {n}")));
        }
        let c = c_sequence(r, n)?;
        let (cn1, cn2) = (c[n - 2], c[n - 3]);
        let d_path = build_maximal_path(cn1 - cn2, cn2)?;
        let vertices = d_path.vertices();
        let corners: Vec<usize> = northwest_corners(&d_path).iter().map(|v| v.index).collect();
        let mut corner_of_position = vec![None; d_path.len() + 1];
        for (j, &p) in corners.iter().enumerate() {
            corner_of_position[p] = Some(j);
        }
        let mut ctx = FamilyContext {
            r,
            n,
            c,
            d_path,
            vertices,
            corners,
            corner_of_position,
            next_exceeding: Vec::new(),
        };
        ctx.next_exceeding = (0..ctx.corners.len()).map(|i| ctx.scan_exceeding(i)).collect();
        Ok(ctx)
    }

    fn scan_exceeding(&self, i: usize) -> Option<usize> {
        let s = self.slope();
        let u = self.vertices[self.corners[i]];
        (i + 1..self.corners.len()).find(|&t| {
            slope_compare(u, self.vertices[self.corners[t]], s).map(|o| o == Ordering::Greater).unwrap_or(false)
        })
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `c_k` for `1 <= k <= n`.
    pub fn c(&self, k: usize) -> u64 {
        self.c[k - 1]
    }

    pub fn c_sequence(&self) -> &[u64] {
        &self.c
    }

    /// `c_{n+1}`, used by weights involving the next index.
    pub fn c_next(&self) -> Result<u64> {
        self.r
            .checked_mul(self.c(self.n))
            .and_then(|v| v.checked_sub(self.c(self.n - 1)))
            .ok_or(Error::Overflow("c-sequence"))
    }

    /// The diagonal slope `c_{n-2} / (c_{n-1} - c_{n-2})`.
    pub fn slope(&self) -> Slope {
        let (cn1, cn2) = (self.c(self.n - 1) as i64, self.c(self.n - 2) as i64);
        Slope { rise: cn2, run: cn1 - cn2 }
    }

    pub fn d_path(&self) -> &StepWord {
        &self.d_path
    }

    pub fn path(&self, family: Family) -> StepWord {
        match family {
            Family::D => self.d_path.clone(),
            Family::C => build_maximal_path(self.c(self.n - 1), self.c(self.n - 2))
                .expect("c_{n-1} > 0 for n >= 3"),
        }
    }

    /// Number of edges of `D_n`, which is `c_{n-1}`.
    pub fn edge_count(&self) -> usize {
        self.d_path.len()
    }

    /// Index of the last corner, `c_{n-2}`.
    pub fn last_corner(&self) -> usize {
        self.corners.len() - 1
    }

    pub fn vertex(&self, i: usize) -> Result<(i64, i64)> {
        self.vertices
            .get(i)
            .copied()
            .ok_or(Error::IndexOutOfRange { index: i, max: self.edge_count() })
    }

    /// Path index of corner `v_j`.
    pub fn corner_position(&self, j: usize) -> usize {
        self.corners[j]
    }

    pub fn corner_positions(&self) -> &[usize] {
        &self.corners
    }

    pub fn corner_at(&self, position: usize) -> Option<usize> {
        self.corner_of_position.get(position).copied().flatten()
    }

    pub fn corner(&self, j: usize) -> Result<Vertex> {
        let index = *self
            .corners
            .get(j)
            .ok_or(Error::IndexOutOfRange { index: j, max: self.last_corner() })?;
        let (x, y) = self.vertices[index];
        Ok(Vertex { x, y, index, corner: Some(j) })
    }

    /// Minimal corner `t > i` whose slope from `v_i` strictly exceeds the diagonal.
    pub fn first_exceeding(&self, i: usize) -> Option<usize> {
        self.next_exceeding.get(i).copied().flatten()
    }
}

pub fn build_family_path(ctx: &FamilyContext, family: Family) -> StepWord {
    ctx.path(family)
}

pub fn apply_morphism(word: &str, m: &Morphism) -> Result<String> {
    m.apply(word)
}

/// `x c_{n-2} - (i - x)(c_{n-1} - c_{n-2})` for `w_i = (x, i - x)` on `D_n`.
pub fn pi_value(ctx: &FamilyContext, i: usize) -> Result<i64> {
    let (x, _) = ctx.vertex(i)?;
    let s = ctx.slope();
    Ok(x * s.rise - (i as i64 - x) * s.run)
}

/// Minimal `j > i` with `slope(w_i, w_j)` at least the diagonal slope.
pub fn d_index(ctx: &FamilyContext, i: usize) -> Result<usize> {
    let len = ctx.edge_count();
    if i >= len {
        return Err(Error::IndexOutOfRange { index: i, max: len.saturating_sub(1) });
    }
    let u = ctx.vertices[i];
    let s = ctx.slope();
    for j in i + 1..=len {
        if slope_compare(u, ctx.vertices[j], s)? != Ordering::Less {
            return Ok(j);
        }
    }
    Ok(len)
}

/// `t(i)` together with its `(m, w)`; `None` when no later corner exceeds the diagonal.
pub fn t_decomposition(ctx: &FamilyContext, i: usize) -> Result<Option<CornerStep>> {
    let last = ctx.last_corner();
    if i >= last {
        return Err(Error::IndexOutOfRange { index: i, max: last.saturating_sub(1) });
    }
    match ctx.first_exceeding(i) {
        None => Ok(None),
        Some(t) => {
            let d = (t - i) as u64;
            let decomposition = mw_decomposition(ctx.r(), d).ok_or(Error::DecompositionFailure(d))?;
            Ok(Some(CornerStep { t, decomposition }))
        }
    }
}
