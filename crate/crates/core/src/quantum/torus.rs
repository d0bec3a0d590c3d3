use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::laurent::{write_monomial, LaurentPoly};

fn checked(v: Option<i128>) -> Result<i128> {
    v.ok_or(Error::Overflow("quantum coefficient"))
}

/// Integer Laurent polynomial in `q`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct QLaurent {
    terms: BTreeMap<i64, i128>,
}

impl QLaurent {
    pub fn zero() -> Self {
        QLaurent::default()
    }

    pub fn monomial(k: i64, c: i128) -> Self {
        let mut p = QLaurent::zero();
        if c != 0 {
            p.terms.insert(k, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &i128)> {
        self.terms.iter()
    }

    pub fn coeff(&self, k: i64) -> i128 {
        self.terms.get(&k).copied().unwrap_or(0)
    }

    fn add_term(&mut self, k: i64, c: i128) -> Result<()> {
        if c == 0 {
            return Ok(());
        }
        let slot = self.terms.entry(k).or_insert(0);
        *slot = checked(slot.checked_add(c))?;
        if *slot == 0 {
            self.terms.remove(&k);
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, *c)?;
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let mut out = QLaurent::zero();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                out.add_term(ka + kb, checked(ca.checked_mul(*cb))?)?;
            }
        }
        Ok(out)
    }

    pub fn shift(&self, k: i64) -> Self {
        QLaurent { terms: self.terms.iter().map(|(e, c)| (e + k, *c)).collect() }
    }

    /// Value at `q = 1`.
    pub fn at_one(&self) -> Result<i128> {
        self.terms.values().try_fold(0i128, |acc, c| checked(acc.checked_add(*c)))
    }
}

impl fmt::Display for QLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        if self.is_zero() {
            f.write_str("0")?;
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            match (i, *c < 0) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            write_monomial(f, &[*k], &["q"], *c)?;
        }
        f.write_str(")")
    }
}

/// `Σ f_{a,b}(q) Z1^a Z2^b` in normal order, where `Z1 Z2 = q^2 Z2 Z1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct QuantumElement {
    terms: BTreeMap<(i64, i64), QLaurent>,
}

impl QuantumElement {
    pub fn zero() -> Self {
        QuantumElement::default()
    }

    /// `c q^k Z1^a Z2^b`.
    pub fn monomial(a: i64, b: i64, k: i64, c: i128) -> Self {
        let mut out = QuantumElement::zero();
        if c != 0 {
            out.terms.insert((a, b), QLaurent::monomial(k, c));
        }
        out
    }

    pub fn one() -> Self {
        Self::monomial(0, 0, 0, 1)
    }

    pub fn z1() -> Self {
        Self::monomial(1, 0, 0, 1)
    }

    pub fn z2() -> Self {
        Self::monomial(0, 1, 0, 1)
    }

    /// Sum normal-ordered terms `(a, b, k, c)` meaning `c q^k Z1^a Z2^b`.
    pub fn from_terms<I: IntoIterator<Item = (i64, i64, i64, i128)>>(terms: I) -> Result<Self> {
        let mut out = QuantumElement::zero();
        for (a, b, k, c) in terms {
            out.add_term((a, b), k, c)?;
        }
        Ok(out)
    }

    fn add_term(&mut self, key: (i64, i64), k: i64, c: i128) -> Result<()> {
        if c == 0 {
            return Ok(());
        }
        let slot = self.terms.entry(key).or_default();
        slot.add_term(k, c)?;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i64, i64), &QLaurent)> {
        self.terms.iter()
    }

    pub fn coeff(&self, a: i64, b: i64) -> QLaurent {
        self.terms.get(&(a, b)).cloned().unwrap_or_default()
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        for (key, f) in &other.terms {
            for (k, c) in &f.terms {
                out.add_term(*key, *k, *c)?;
            }
        }
        Ok(out)
    }

    /// `(q^j Z1^a Z2^b)(q^k Z1^c Z2^d) = q^{j+k-2bc} Z1^{a+c} Z2^{b+d}`, extended bilinearly.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let mut acc: HashMap<(i64, i64, i64), i128> = HashMap::new();
        for (&(a, b), f) in &self.terms {
            for (&(c, d), g) in &other.terms {
                let twist = -2 * b * c;
                for (j, x) in &f.terms {
                    for (k, y) in &g.terms {
                        let slot = acc.entry((a + c, b + d, j + k + twist)).or_insert(0);
                        *slot = checked(slot.checked_add(checked(x.checked_mul(*y))?))?;
                    }
                }
            }
        }
        Self::from_terms(acc.into_iter().map(|((a, b, k), c)| (a, b, k, c)))
    }

    pub fn checked_pow(&self, e: u32) -> Result<Self> {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.checked_mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.checked_mul(&base)?;
            }
        }
        Ok(result)
    }

    /// Multiply every coefficient by `q^k`.
    pub fn q_shift(&self, k: i64) -> Self {
        QuantumElement { terms: self.terms.iter().map(|(key, f)| (*key, f.shift(k))).collect() }
    }

    /// Inverse of a unit monomial `±q^j Z1^a Z2^b`.
    pub fn monomial_inverse(&self) -> Result<Self> {
        let mut it = self.terms.iter();
        match (it.next(), it.next()) {
            (Some((&(a, b), f)), None) if f.terms.len() == 1 => {
                let (&j, &c) = f.terms.iter().next().expect("one term");
                if c.abs() != 1 {
                    return Err(Error::NotDivisible);
                }
                Ok(Self::monomial(-a, -b, -j - 2 * a * b, c))
            }
            _ => Err(Error::NotDivisible),
        }
    }

    /// Set `q = 1`.
    pub fn specialize_q(&self) -> Result<LaurentPoly> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (&(a, b), f) in &self.terms {
            terms.push(([a, b, 0, 0], f.at_one()?));
        }
        LaurentPoly::from_terms(2, terms)
    }

    pub fn to_json(&self) -> String {
        let doc = QuantumDocument {
            vars: vec!["Z1".into(), "Z2".into()],
            terms: self.terms.iter().map(|(&(a, b), f)| QuantumTerm { exps: [a, b], q: QTerms(f.terms.clone()) }).collect(),
        };
        serde_json::to_string(&doc).expect("quantum documents serialize")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let doc: QuantumDocument = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        if doc.vars != ["Z1", "Z2"] {
            return Err(Error::Parse(format!("unsupported variable list {:?}", doc.vars)));
        }
        let mut out = QuantumElement::zero();
        for t in doc.terms {
            for (k, c) in t.q.0 {
                out.add_term((t.exps[0], t.exps[1]), k, c)?;
            }
        }
        Ok(out)
    }
}

/// JSON form: `{"vars": ["Z1","Z2"], "terms": [{"exps": [a,b], "q": {"k": c}}]}`.
#[derive(Serialize, Deserialize)]
struct QuantumDocument {
    vars: Vec<String>,
    terms: Vec<QuantumTerm>,
}

#[derive(Serialize, Deserialize)]
struct QuantumTerm {
    exps: [i64; 2],
    q: QTerms,
}

/// q-exponent map keyed by decimal strings, in ascending numeric order.
struct QTerms(BTreeMap<i64, i128>);

impl Serialize for QTerms {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (k, c) in &self.0 {
            map.serialize_entry(&k.to_string(), c)?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for QTerms {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = BTreeMap::<String, i128>::deserialize(deserializer)?;
        raw.into_iter()
            .map(|(k, c)| k.parse::<i64>().map(|k| (k, c)).map_err(serde::de::Error::custom))
            .collect::<std::result::Result<_, _>>()
            .map(QTerms)
    }
}

impl fmt::Display for QuantumElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (&(a, b), g)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{g}")?;
            if (a, b) != (0, 0) {
                f.write_str("*")?;
                write_monomial(f, &[a, b], &["Z1", "Z2"], 1)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn commutation() {
        let z1 = QuantumElement::z1();
        let z2 = QuantumElement::z2();
        assert_eq!(z2.checked_mul(&z1).unwrap(), QuantumElement::monomial(1, 1, -2, 1));
        assert_eq!(z1.checked_mul(&z2).unwrap(), QuantumElement::monomial(1, 1, 0, 1));
        let z12 = QuantumElement::monomial(1, 1, 0, 1);
        assert_eq!(z12.checked_mul(&z12).unwrap(), QuantumElement::monomial(2, 2, -2, 1));
        let x = QuantumElement::monomial(3, -1, 4, 2).checked_add(&z2).unwrap();
        assert_eq!(QuantumElement::one().checked_mul(&x).unwrap(), x);
    }

    #[test]
    fn associativity_sample() {
        let a = QuantumElement::from_terms([(1, 2, 0, 1), (-1, 0, 3, 2)]).unwrap();
        let b = QuantumElement::from_terms([(0, -1, 1, 1), (2, 1, 0, -1)]).unwrap();
        let c = QuantumElement::from_terms([(3, 3, -2, 1), (1, -2, 0, 5)]).unwrap();
        let left = a.checked_mul(&b).unwrap().checked_mul(&c).unwrap();
        let right = a.checked_mul(&b.checked_mul(&c).unwrap()).unwrap();
        assert_eq!(left, right);
    }

    #[test]
    fn monomial_inverse() {
        let m = QuantumElement::monomial(2, -3, 5, -1);
        assert_eq!(m.checked_mul(&m.monomial_inverse().unwrap()).unwrap(), QuantumElement::one());
        assert_eq!(m.monomial_inverse().unwrap().checked_mul(&m).unwrap(), QuantumElement::one());
    }

    #[test]
    fn rendering_and_json() {
        let x = QuantumElement::from_terms([(-3, 2, 0, 1), (-3, 2, 6, 1), (-3, 2, 12, 1), (0, -1, 0, 1), (-3, -1, -3, 1)])
            .unwrap();
        assert_eq!(x.to_string(), "(q^-3)*Z1^-3*Z2^-1 + (1 + q^6 + q^12)*Z1^-3*Z2^2 + (1)*Z2^-1");
        let s = x.to_json();
        assert_eq!(QuantumElement::from_json(&s).unwrap(), x);
        assert_eq!(QuantumElement::from_json(&s).unwrap().to_json(), s);
        assert!(s.contains(r#"{"exps":[-3,2],"q":{"0":1,"6":1,"12":1}}"#));
    }
}
