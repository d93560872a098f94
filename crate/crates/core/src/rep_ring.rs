//! The representation ring: virtual characters in the irreducible basis, tensor
//! products, and the polynomial model in the fundamental characters.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::lie_core::{RootSystem, Weight};

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum CoeffRepr {
    Small(i64),
    Big(String),
}

impl CoeffRepr {
    fn from_bigint(c: &BigInt) -> Self {
        match c.to_i64() {
            Some(v) => CoeffRepr::Small(v),
            None => CoeffRepr::Big(c.to_string()),
        }
    }

    fn to_bigint(&self) -> Result<BigInt> {
        match self {
            CoeffRepr::Small(v) => Ok(BigInt::from(*v)),
            CoeffRepr::Big(s) => s
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad coefficient {s:?}"))),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermRepr {
    weight: Vec<i64>,
    coeff: CoeffRepr,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermsRepr {
    terms: Vec<TermRepr>,
}

fn decode_terms(json: &str) -> Result<Vec<(Vec<i64>, BigInt)>> {
    let repr: TermsRepr = serde_json::from_str(json).map_err(|e| Error::InvalidInput(e.to_string()))?;
    let mut len = None;
    let mut out = Vec::with_capacity(repr.terms.len());
    for t in repr.terms {
        if *len.get_or_insert(t.weight.len()) != t.weight.len() {
            return invalid("terms have weights of different lengths");
        }
        out.push((t.weight, t.coeff.to_bigint()?));
    }
    Ok(out)
}

fn encode_terms<'a>(terms: impl Iterator<Item = (Vec<i64>, &'a BigInt)>) -> TermsRepr {
    TermsRepr {
        terms: terms
            .map(|(weight, c)| TermRepr { weight, coeff: CoeffRepr::from_bigint(c) })
            .collect(),
    }
}

pub(crate) fn add_into<K: Ord>(map: &mut BTreeMap<K, BigInt>, key: K, c: BigInt) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match map.entry(key) {
        Entry::Vacant(e) => {
            e.insert(c);
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

/// An element of the representation ring, as integer combination of irreducibles
/// keyed by dominant highest weight.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct VirtualCharacter {
    terms: BTreeMap<Weight, BigInt>,
}

impl VirtualCharacter {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn irrep(w: Weight) -> Self {
        assert!(w.is_dominant(), "irreducible characters need a dominant weight");
        let mut terms = BTreeMap::new();
        terms.insert(w, BigInt::one());
        VirtualCharacter { terms }
    }

    pub fn trivial(rank: usize) -> Self {
        Self::irrep(Weight::zero(rank))
    }

    /// Builds a character from `(weight, coefficient)` pairs, summing repeats.
    pub fn from_terms<I, C>(terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Weight, C)>,
        C: Into<BigInt>,
    {
        let mut out = VirtualCharacter::zero();
        let mut rank = None;
        for (w, c) in terms {
            if !w.is_dominant() {
                return invalid(format!("{w} is not dominant"));
            }
            if *rank.get_or_insert(w.rank()) != w.rank() {
                return invalid("weights of different lengths");
            }
            out.add_term(w, c.into());
        }
        Ok(out)
    }

    pub fn add_term(&mut self, w: Weight, c: BigInt) {
        debug_assert!(w.is_dominant());
        add_into(&mut self.terms, w, c);
    }

    pub fn terms(&self) -> &BTreeMap<Weight, BigInt> {
        &self.terms
    }

    pub fn coeff(&self, w: &Weight) -> BigInt {
        self.terms.get(w).cloned().unwrap_or_default()
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

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        VirtualCharacter { terms: self.terms.iter().map(|(w, x)| (w.clone(), x * c)).collect() }
    }

    /// Virtual dimension.
    pub fn dimension(&self, rs: &RootSystem) -> BigInt {
        self.terms
            .iter()
            .map(|(w, c)| c * rs.data().weyl_dimension(w))
            .sum()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    pub fn from_json(json: &str) -> Result<Self> {
        let terms = decode_terms(json)?;
        Self::from_terms(terms.into_iter().map(|(w, c)| (Weight(w), c)))
    }
}

impl Serialize for VirtualCharacter {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        encode_terms(self.terms.iter().map(|(w, c)| (w.0.clone(), c))).serialize(s)
    }
}

impl<'de> Deserialize<'de> for VirtualCharacter {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = TermsRepr::deserialize(d)?;
        let mut terms = Vec::new();
        for t in repr.terms {
            terms.push((Weight(t.weight), t.coeff.to_bigint().map_err(serde::de::Error::custom)?));
        }
        VirtualCharacter::from_terms(terms).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for VirtualCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let a = c.abs();
            if !a.is_one() {
                write!(f, "{a}*")?;
            }
            write!(f, "V{w}")?;
        }
        Ok(())
    }
}

impl Add for &VirtualCharacter {
    type Output = VirtualCharacter;
    fn add(self, rhs: &VirtualCharacter) -> VirtualCharacter {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
}

impl Sub for &VirtualCharacter {
    type Output = VirtualCharacter;
    fn sub(self, rhs: &VirtualCharacter) -> VirtualCharacter {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), -c);
        }
        out
    }
}

impl Neg for &VirtualCharacter {
    type Output = VirtualCharacter;
    fn neg(self) -> VirtualCharacter {
        VirtualCharacter { terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect() }
    }
}

/// A polynomial in the fundamental characters `x_1, ..., x_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyChar {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl PolyChar {
    pub fn zero(nvars: usize) -> Self {
        PolyChar { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: BigInt) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn variable(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(e, BigInt::one());
        p
    }

    pub fn from_terms<I, C>(nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return invalid(format!("exponent vector of length {} in {nvars} variables", e.len()));
            }
            p.add_term(e, c.into());
        }
        Ok(p)
    }

    pub fn add_term(&mut self, e: Vec<u32>, c: BigInt) {
        debug_assert_eq!(e.len(), self.nvars);
        add_into(&mut self.terms, e, c);
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, BigInt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn mul(&self, other: &PolyChar) -> PolyChar {
        let mut out = PolyChar::zero(self.nvars);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let e = a.iter().zip(b).map(|(p, q)| p + q).collect();
                out.add_term(e, x * y);
            }
        }
        out
    }

    pub fn add(&self, other: &PolyChar) -> PolyChar {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    pub fn from_json(json: &str) -> Result<Self> {
        let terms = decode_terms(json)?;
        let nvars = terms.first().map(|t| t.0.len()).unwrap_or(0);
        let mut out = PolyChar::zero(nvars);
        for (e, c) in terms {
            let e: Option<Vec<u32>> = e.iter().map(|&x| u32::try_from(x).ok()).collect();
            let Some(e) = e else {
                return invalid("exponents must be nonnegative");
            };
            out.add_term(e, c);
        }
        Ok(out)
    }
}

impl Serialize for PolyChar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        encode_terms(self.terms.iter().map(|(e, c)| (e.iter().map(|&x| x as i64).collect(), c))).serialize(s)
    }
}

impl fmt::Display for PolyChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let a = c.abs();
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &p)| p > 0)
                .map(|(j, &p)| if p == 1 { format!("x{}", j + 1) } else { format!("x{}^{p}", j + 1) })
                .collect();
            if mono.is_empty() {
                write!(f, "{a}")?;
            } else {
                if !a.is_one() {
                    write!(f, "{a}*")?;
                }
                write!(f, "{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Decomposition of `V(a) (x) V(b)` by Klimyk's formula.
pub fn irrep_product(rs: &RootSystem, a: &Weight, b: &Weight) -> VirtualCharacter {
    let data = rs.data();
    let wa = data.weight_system(a);
    let wb = data.weight_system(b);
    let (expand, base) = if wa.weights.len() <= wb.weights.len() { (wa, b) } else { (wb, a) };
    let mut out = VirtualCharacter::zero();
    for (nu, m) in &expand.weights {
        if let Some((d, sign)) = data.shifted_reduce(&(base + nu)) {
            let c = BigInt::from(*m as i64 * sign.to_i64());
            out.add_term(d, c);
        }
    }
    out
}

pub fn tensor_product(rs: &RootSystem, x: &VirtualCharacter, y: &VirtualCharacter) -> VirtualCharacter {
    let mut out = VirtualCharacter::zero();
    for (a, ca) in &x.terms {
        for (b, cb) in &y.terms {
            let coeff = ca * cb;
            for (w, c) in irrep_product(rs, a, b).terms {
                out.add_term(w, c * &coeff);
            }
        }
    }
    out
}

/// Characters of monomials in the fundamental characters, built up one factor at a time.
struct MonomialChars<'a> {
    rs: &'a RootSystem,
    memo: HashMap<Vec<u32>, VirtualCharacter>,
}

impl<'a> MonomialChars<'a> {
    fn new(rs: &'a RootSystem) -> Self {
        MonomialChars { rs, memo: HashMap::new() }
    }

    fn get(&mut self, e: &[u32]) -> VirtualCharacter {
        if let Some(c) = self.memo.get(e) {
            return c.clone();
        }
        let n = self.rs.rank();
        let ch = match e.iter().position(|&p| p > 0) {
            None => VirtualCharacter::trivial(n),
            Some(i) => {
                let mut lower = e.to_vec();
                lower[i] -= 1;
                let rest = self.get(&lower);
                tensor_product(self.rs, &rest, &VirtualCharacter::irrep(Weight::unit(n, i)))
            }
        };
        self.memo.insert(e.to_vec(), ch.clone());
        ch
    }
}

/// Expresses `x` as a polynomial in the fundamental characters.
pub fn to_polynomial(rs: &RootSystem, x: &VirtualCharacter) -> PolyChar {
    let n = rs.rank();
    let mut chars = MonomialChars::new(rs);
    let mut rem = x.clone();
    let mut poly = PolyChar::zero(n);
    while let Some((lead, c)) = rem
        .terms
        .iter()
        .max_by_key(|(w, _)| (rs.level(w), (*w).clone()))
        .map(|(w, c)| (w.clone(), c.clone()))
    {
        let e: Vec<u32> = lead.0.iter().map(|&v| v as u32).collect();
        let ch = chars.get(&e);
        debug_assert!(ch.coeff(&lead).is_one());
        rem = &rem - &ch.scale(&c);
        poly.add_term(e, c);
    }
    poly
}

pub fn from_polynomial(rs: &RootSystem, p: &PolyChar) -> VirtualCharacter {
    let mut chars = MonomialChars::new(rs);
    let mut out = VirtualCharacter::zero();
    for (e, c) in &p.terms {
        out = &out + &chars.get(e).scale(c);
    }
    out
}
