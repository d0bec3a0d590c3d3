//! Exact Laurent polynomials in `X1, X2` (optionally `Y1, Y2`) with integer
//! coefficients, the exchange-recurrence oracles and the classical expansions.

mod expansion;
mod recurrence;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use expansion::{
    expansion_classical, expansion_with_coefficients, expected_principal_degree, principal_degree, Direction, Formula,
};
pub use recurrence::{cluster_recurrence, cluster_value_at_ones, coefficient_recurrence, coefficient_y_exponents};

/// Exponents of `X1, X2, Y1, Y2`; unused slots stay zero.
pub type Exponents = [i64; 4];

const NAMES: [&str; 4] = ["X1", "X2", "Y1", "Y2"];

/// Sparse Laurent polynomial; no zero coefficients are stored and terms are
/// kept in ascending lexicographic order of exponent vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Exponents, i128>,
}

fn checked(v: Option<i128>) -> Result<i128> {
    v.ok_or(Error::Overflow("Laurent coefficient"))
}

fn add_exps(a: &Exponents, b: &Exponents) -> Exponents {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]]
}

fn sub_exps(a: &Exponents, b: &Exponents) -> Exponents {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]]
}

impl LaurentPoly {
    fn check_nvars(nvars: usize) {
        assert!(nvars == 2 || nvars == 4, "Laurent polynomials use 2 or 4 variables");
    }

    pub fn zero(nvars: usize) -> Self {
        Self::check_nvars(nvars);
        LaurentPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: i128) -> Self {
        Self::monomial(nvars, &[0; 4][..nvars], c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, 1)
    }

    /// `coeff * Π var_i^{exps_i}`; `exps` may be shorter than `nvars`.
    pub fn monomial(nvars: usize, exps: &[i64], coeff: i128) -> Self {
        let mut p = Self::zero(nvars);
        assert!(exps.len() <= nvars, "too many exponents");
        let mut e = [0; 4];
        e[..exps.len()].copy_from_slice(exps);
        if coeff != 0 {
            p.terms.insert(e, coeff);
        }
        p
    }

    /// The variable with index `i` (0 = X1, 1 = X2, 2 = Y1, 3 = Y2).
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = [0; 4];
        e[i] = 1;
        Self::monomial(nvars, &e[..nvars], 1)
    }

    /// Sum terms, combining repeated exponents.
    pub fn from_terms<I: IntoIterator<Item = (Exponents, i128)>>(nvars: usize, terms: I) -> Result<Self> {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            p.add_term(e, c)?;
        }
        Ok(p)
    }

    fn add_term(&mut self, e: Exponents, c: i128) -> Result<()> {
        if c == 0 {
            return Ok(());
        }
        debug_assert!(e[self.nvars..].iter().all(|&x| x == 0));
        let slot = self.terms.entry(e).or_insert(0);
        *slot = checked(slot.checked_add(c))?;
        if *slot == 0 {
            self.terms.remove(&e);
        }
        Ok(())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &i128)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[i64]) -> i128 {
        let mut e = [0; 4];
        e[..exps.len()].copy_from_slice(exps);
        self.terms.get(&e).copied().unwrap_or(0)
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    fn same_ring(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::InvalidParameter(format!(
                "mixing {}- and {}-variable polynomials",
                self.nvars, other.nvars
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, *c)?;
        }
        Ok(out)
    }

    pub fn checked_neg(&self) -> Result<Self> {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = checked(c.checked_neg())?;
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.checked_neg()?)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let mut acc: HashMap<Exponents, i128> = HashMap::with_capacity(self.len() * other.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let prod = checked(ca.checked_mul(*cb))?;
                let slot = acc.entry(add_exps(ea, eb)).or_insert(0);
                *slot = checked(slot.checked_add(prod))?;
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| *c != 0).collect();
        Ok(LaurentPoly { nvars: self.nvars, terms })
    }

    pub fn checked_pow(&self, k: u32) -> Result<Self> {
        let mut result = Self::one(self.nvars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.checked_mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.checked_mul(&base)?;
            }
        }
        Ok(result)
    }

    /// Multiply by `coeff * X^shift`.
    pub fn mul_monomial(&self, shift: &Exponents, coeff: i128) -> Result<Self> {
        let mut terms = BTreeMap::new();
        if coeff != 0 {
            for (e, c) in &self.terms {
                terms.insert(add_exps(e, shift), checked(c.checked_mul(coeff))?);
            }
        }
        Ok(LaurentPoly { nvars: self.nvars, terms })
    }

    fn leading(&self) -> Option<(Exponents, i128)> {
        self.terms.iter().next_back().map(|(e, c)| (*e, *c))
    }

    /// Componentwise minimum exponent over all terms.
    pub fn min_exponents(&self) -> Option<Exponents> {
        self.fold_exps(i64::min)
    }

    pub fn max_exponents(&self) -> Option<Exponents> {
        self.fold_exps(i64::max)
    }

    fn fold_exps(&self, f: fn(i64, i64) -> i64) -> Option<Exponents> {
        let mut it = self.terms.keys();
        let first = *it.next()?;
        Some(it.fold(first, |acc, e| [f(acc[0], e[0]), f(acc[1], e[1]), f(acc[2], e[2]), f(acc[3], e[3])]))
    }

    /// `self / divisor` when the quotient is a Laurent polynomial, else `NotDivisible`.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self> {
        self.same_ring(divisor)?;
        if divisor.is_zero() {
            return Err(Error::NotDivisible);
        }
        if self.is_zero() {
            return Ok(self.clone());
        }
        if divisor.is_monomial() {
            let (e, c) = divisor.leading().expect("nonzero divisor");
            let mut terms = BTreeMap::new();
            for (te, tc) in &self.terms {
                if tc % c != 0 {
                    return Err(Error::NotDivisible);
                }
                terms.insert(sub_exps(te, &e), tc / c);
            }
            return Ok(LaurentPoly { nvars: self.nvars, terms });
        }
        // Quotient exponents lie in a box determined per variable by the extreme degrees.
        let lo = sub_exps(&self.min_exponents().unwrap(), &divisor.min_exponents().unwrap());
        let hi = sub_exps(&self.max_exponents().unwrap(), &divisor.max_exponents().unwrap());
        if (0..4).any(|i| lo[i] > hi[i]) {
            return Err(Error::NotDivisible);
        }
        let (lead_e, lead_c) = divisor.leading().expect("nonzero divisor");
        let mut remainder = self.clone();
        let mut quotient = Self::zero(self.nvars);
        while let Some((e, c)) = remainder.leading() {
            let q = sub_exps(&e, &lead_e);
            if (0..4).any(|i| q[i] < lo[i] || q[i] > hi[i]) || c % lead_c != 0 {
                return Err(Error::NotDivisible);
            }
            let qc = c / lead_c;
            quotient.add_term(q, qc)?;
            remainder = remainder.checked_sub(&divisor.mul_monomial(&q, qc)?)?;
        }
        Ok(quotient)
    }

    /// Value at all variables equal to 1.
    pub fn evaluate_at_ones(&self) -> Result<i128> {
        self.terms.values().try_fold(0i128, |acc, c| checked(acc.checked_add(*c)))
    }

    /// Set `Y1 = Y2 = 1`, giving a polynomial in `X1, X2`.
    pub fn specialize_coefficients(&self) -> Result<Self> {
        let mut out = Self::zero(2);
        for (e, c) in &self.terms {
            out.add_term([e[0], e[1], 0, 0], *c)?;
        }
        Ok(out)
    }

    /// Reinterpret a 2-variable polynomial in the 4-variable ring.
    pub fn with_coefficient_vars(&self) -> Self {
        LaurentPoly { nvars: 4, terms: self.terms.clone() }
    }

    /// Exchange `X1 <-> X2` and `Y1 <-> Y2`.
    pub fn swap_variables(&self) -> Self {
        let terms = self.terms.iter().map(|(e, c)| ([e[1], e[0], e[3], e[2]], *c)).collect();
        LaurentPoly { nvars: self.nvars, terms }
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_document()).expect("polynomial documents serialize")
    }

    pub fn to_document(&self) -> PolyDocument {
        PolyDocument {
            vars: NAMES[..self.nvars].iter().map(|s| s.to_string()).collect(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| TermDocument { exps: e[..self.nvars].to_vec(), coeff: *c })
                .collect(),
        }
    }

    pub fn from_document(doc: &PolyDocument) -> Result<Self> {
        let nvars = doc.vars.len();
        if !(nvars == 2 || nvars == 4) || doc.vars.iter().zip(NAMES).any(|(a, b)| a != b) {
            return Err(Error::Parse(format!("unsupported variable list {:?}", doc.vars)));
        }
        let mut p = Self::zero(nvars);
        for t in &doc.terms {
            if t.exps.len() != nvars {
                return Err(Error::Parse(format!("term has {} exponents, expected {nvars}", t.exps.len())));
            }
            let mut e = [0; 4];
            e[..nvars].copy_from_slice(&t.exps);
            p.add_term(e, t.coeff)?;
        }
        Ok(p)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let doc: PolyDocument = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_document(&doc)
    }
}

/// JSON form: `{"vars": [...], "terms": [{"exps": [...], "coeff": c}]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyDocument {
    pub vars: Vec<String>,
    pub terms: Vec<TermDocument>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermDocument {
    pub exps: Vec<i64>,
    pub coeff: i128,
}

/// Render `coeff*X1^a*X2^b...`, dropping unit coefficients, zero exponents and `^1`.
pub(crate) fn write_monomial(f: &mut impl fmt::Write, exps: &[i64], names: &[&str], coeff: i128) -> fmt::Result {
    let factors: Vec<String> = exps
        .iter()
        .zip(names)
        .filter(|(e, _)| **e != 0)
        .map(|(e, n)| if *e == 1 { n.to_string() } else { format!("{n}^{e}") })
        .collect();
    let magnitude = coeff.unsigned_abs();
    match (factors.is_empty(), magnitude) {
        (true, _) => write!(f, "{magnitude}"),
        (false, 1) => write!(f, "{}", factors.join("*")),
        (false, _) => write!(f, "{magnitude}*{}", factors.join("*")),
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            match (i, *c < 0) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            write_monomial(f, &e[..self.nvars], &NAMES[..self.nvars], *c)?;
        }
        Ok(())
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;

    /// Panics on coefficient overflow; use [`LaurentPoly::checked_add`] to handle it.
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_add(rhs).expect("Laurent addition")
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;

    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_sub(rhs).expect("Laurent subtraction")
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_mul(rhs).expect("Laurent multiplication")
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        self.checked_neg().expect("Laurent negation")
    }
}
