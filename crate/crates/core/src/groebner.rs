//! Buchberger's algorithm over the rationals and prime fields, in graded reverse
//! lexicographic order.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{invalid, Error, Result};
use crate::rep_ring::PolyChar;

pub trait Field: Clone + Debug + Send + Sync {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    fn name(&self) -> String;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse of a nonzero element.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn from_bigint(&self, a: &BigInt) -> Self::Elem;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn name(&self) -> String {
        "Q".to_string()
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
    fn from_bigint(&self, a: &BigInt) -> BigRational {
        BigRational::from_integer(a.clone())
    }
}

/// The prime field with `p < 2^31` elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p >= 1 << 31 || !is_prime(p) {
            return invalid(format!("{p} is not a prime below 2^31"));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn name(&self) -> String {
        format!("F_{}", self.p)
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn inv(&self, a: &u64) -> u64 {
        let g = (*a as i64).extended_gcd(&(self.p as i64));
        debug_assert_eq!(g.gcd, 1);
        g.x.rem_euclid(self.p as i64) as u64
    }
    fn from_bigint(&self, a: &BigInt) -> u64 {
        a.mod_floor(&BigInt::from(self.p)).to_u64().unwrap()
    }
}

/// Exponent vector ordered by graded reverse lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other`, assuming `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            for (a, b) in self.0.iter().zip(&other.0).rev() {
                if a != b {
                    // smaller exponent in the last differing variable is larger
                    return b.cmp(a);
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial over a field, terms stored in decreasing monomial order.
#[derive(Clone, Debug)]
pub struct FieldPoly<F: Field> {
    field: F,
    nvars: usize,
    terms: Vec<(Monomial, F::Elem)>,
}

impl<F: Field> PartialEq for FieldPoly<F> {
    fn eq(&self, other: &Self) -> bool {
        self.nvars == other.nvars && self.terms == other.terms
    }
}

impl<F: Field> FieldPoly<F> {
    pub fn zero(field: F, nvars: usize) -> Self {
        FieldPoly { field, nvars, terms: Vec::new() }
    }

    pub fn from_terms(field: F, nvars: usize, terms: Vec<(Vec<u32>, F::Elem)>) -> Result<Self> {
        let mut p = Self::zero(field, nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return invalid("exponent vectors must have uniform length");
            }
            let single = FieldPoly { field: p.field.clone(), nvars, terms: vec![(Monomial(e), c)] };
            p = p.add(&single);
        }
        Ok(p)
    }

    pub fn from_polychar(field: F, p: &PolyChar) -> Self {
        let terms = p
            .terms()
            .iter()
            .map(|(e, c)| (e.clone(), field.from_bigint(c)))
            .collect();
        Self::from_terms(field, p.nvars(), terms).expect("uniform exponent lengths")
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Monomial, F::Elem)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<&(Monomial, F::Elem)> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    fn merge(&self, other: &Self, coeff: &F::Elem, shift: &Monomial) -> Self {
        // self + coeff * shift * other
        let f = &self.field;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut i = 0;
        let mut j = 0;
        let shifted = |t: &(Monomial, F::Elem)| (t.0.mul(shift), f.mul(&t.1, coeff));
        while i < self.terms.len() || j < other.terms.len() {
            if j == other.terms.len() {
                out.push(self.terms[i].clone());
                i += 1;
                continue;
            }
            let (m2, c2) = shifted(&other.terms[j]);
            if i == self.terms.len() {
                if !f.is_zero(&c2) {
                    out.push((m2, c2));
                }
                j += 1;
                continue;
            }
            match self.terms[i].0.cmp(&m2) {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    if !f.is_zero(&c2) {
                        out.push((m2, c2));
                    }
                    j += 1;
                }
                Ordering::Equal => {
                    let c = f.add(&self.terms[i].1, &c2);
                    if !f.is_zero(&c) {
                        out.push((m2, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        FieldPoly { field: self.field.clone(), nvars: self.nvars, terms: out }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.merge(other, &self.field.one(), &Monomial(vec![0; self.nvars]))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.merge(other, &self.field.neg(&self.field.one()), &Monomial(vec![0; self.nvars]))
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        Self::zero(self.field.clone(), self.nvars).merge(self, c, &Monomial(vec![0; self.nvars]))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.field.clone(), self.nvars);
        for (m, c) in &self.terms {
            out = out.merge(other, c, m);
        }
        out
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => self.scale(&self.field.inv(c)),
        }
    }
}

/// Fully reduced remainder of `p` modulo `basis`.
pub fn normal_form<F: Field>(p: &FieldPoly<F>, basis: &[FieldPoly<F>]) -> FieldPoly<F> {
    let f = p.field.clone();
    let mut rest = p.clone();
    let mut rem: Vec<(Monomial, F::Elem)> = Vec::new();
    while let Some((m, c)) = rest.leading().cloned() {
        let divisor = basis
            .iter()
            .find(|g| g.leading_monomial().is_some_and(|lm| lm.divides(&m)));
        match divisor {
            Some(g) => {
                let (lm, lc) = g.leading().unwrap();
                let coeff = f.neg(&f.mul(&c, &f.inv(lc)));
                rest = rest.merge(g, &coeff, &m.div(lm));
            }
            None => {
                rem.push((m, c));
                rest.terms.remove(0);
            }
        }
    }
    FieldPoly { field: f, nvars: p.nvars, terms: rem }
}

fn s_polynomial<F: Field>(a: &FieldPoly<F>, b: &FieldPoly<F>) -> FieldPoly<F> {
    let f = &a.field;
    let (ma, ca) = a.leading().unwrap();
    let (mb, cb) = b.leading().unwrap();
    let l = ma.lcm(mb);
    let left = FieldPoly::zero(f.clone(), a.nvars).merge(a, &f.inv(ca), &l.div(ma));
    left.merge(b, &f.neg(&f.inv(cb)), &l.div(mb))
}

/// Reduced Groebner basis of the ideal generated by `gens`, sorted by decreasing leading monomial.
pub fn buchberger<F: Field>(gens: &[FieldPoly<F>]) -> Result<Vec<FieldPoly<F>>> {
    let Some(first) = gens.first() else {
        return Ok(Vec::new());
    };
    let nvars = first.nvars;
    if gens.iter().any(|g| g.nvars != nvars) {
        return invalid("generators have different numbers of variables");
    }
    let mut basis: Vec<FieldPoly<F>> = gens.iter().filter(|g| !g.is_zero()).map(|g| g.monic()).collect();
    let mut pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.insert((i, j));
        }
    }
    while !pairs.is_empty() {
        if basis.iter().any(|g| g.leading_monomial().unwrap().degree() == 0) {
            break;
        }
        // normal strategy: smallest lcm first
        let &(i, j) = pairs
            .iter()
            .min_by(|p, q| {
                let lp = basis[p.0].leading_monomial().unwrap().lcm(basis[p.1].leading_monomial().unwrap());
                let lq = basis[q.0].leading_monomial().unwrap().lcm(basis[q.1].leading_monomial().unwrap());
                lp.cmp(&lq).then(p.cmp(q))
            })
            .unwrap();
        pairs.remove(&(i, j));
        let mi = basis[i].leading_monomial().unwrap();
        let mj = basis[j].leading_monomial().unwrap();
        if mi.coprime(mj) {
            continue;
        }
        let l = mi.lcm(mj);
        let ordered = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].leading_monomial().unwrap().divides(&l)
                && !pairs.contains(&ordered(i, k))
                && !pairs.contains(&ordered(j, k))
        });
        if chain {
            continue;
        }
        let r = normal_form(&s_polynomial(&basis[i], &basis[j]), &basis);
        if !r.is_zero() {
            let n = basis.len();
            basis.push(r.monic());
            for k in 0..n {
                pairs.insert((k, n));
            }
        }
    }
    Ok(reduce_basis(basis))
}

fn reduce_basis<F: Field>(basis: Vec<FieldPoly<F>>) -> Vec<FieldPoly<F>> {
    if let Some(unit) = basis.iter().find(|g| g.leading_monomial().unwrap().degree() == 0) {
        return vec![unit.monic()];
    }
    // minimal basis: drop elements whose leading monomial is divisible by another's
    let mut minimal: Vec<FieldPoly<F>> = Vec::new();
    for (idx, g) in basis.iter().enumerate() {
        let lm = g.leading_monomial().unwrap();
        let redundant = basis.iter().enumerate().any(|(o, h)| {
            let hm = h.leading_monomial().unwrap();
            o != idx && hm.divides(lm) && (hm != lm || o < idx)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<FieldPoly<F>> =
            minimal.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, g)| g.clone()).collect();
        let (lm, lc) = minimal[i].leading().unwrap().clone();
        let tail = FieldPoly {
            field: minimal[i].field.clone(),
            nvars: minimal[i].nvars,
            terms: minimal[i].terms[1..].to_vec(),
        };
        let tail = normal_form(&tail, &others);
        let head = FieldPoly { field: tail.field.clone(), nvars: tail.nvars, terms: vec![(lm, lc)] };
        reduced.push(head.add(&tail).monic());
    }
    reduced.sort_by(|a, b| b.leading_monomial().cmp(&a.leading_monomial()));
    reduced
}

/// Standard monomials of a zero-dimensional ideal given by its Groebner basis.
pub fn standard_monomials<F: Field>(basis: &[FieldPoly<F>], nvars: usize, field_name: &str) -> Result<Vec<Monomial>> {
    let leads: Vec<&Monomial> = basis.iter().filter_map(|g| g.leading_monomial()).collect();
    if leads.iter().any(|m| m.degree() == 0) {
        return Ok(Vec::new());
    }
    let mut bounds = Vec::with_capacity(nvars);
    for i in 0..nvars {
        let pure = leads
            .iter()
            .filter(|m| m.0.iter().enumerate().all(|(j, &e)| j == i || e == 0))
            .map(|m| m.0[i])
            .min();
        match pure {
            Some(b) => bounds.push(b),
            None => return Err(Error::InfiniteCodimension { field: field_name.to_string() }),
        }
    }
    let mut out = Vec::new();
    let mut cur = vec![0u32; nvars];
    loop {
        let m = Monomial(cur.clone());
        if !leads.iter().any(|l| l.divides(&m)) {
            out.push(m);
        }
        // odometer over the box
        let mut i = 0;
        loop {
            if i == nvars {
                out.sort_by(|a, b| b.cmp(a));
                return Ok(out);
            }
            cur[i] += 1;
            if cur[i] < bounds[i] {
                break;
            }
            cur[i] = 0;
            i += 1;
        }
    }
}

/// Dimension of the quotient ring as a vector space.
pub fn quotient_codimension<F: Field>(gens: &[FieldPoly<F>]) -> Result<usize> {
    let Some(first) = gens.first() else {
        return invalid("no generators");
    };
    let name = first.field.name();
    let nvars = first.nvars;
    let gb = buchberger(gens)?;
    if gb.is_empty() {
        if nvars == 0 {
            return Ok(1);
        }
        return Err(Error::InfiniteCodimension { field: name });
    }
    Ok(standard_monomials(&gb, nvars, &name)?.len())
}
