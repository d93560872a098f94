//! Kac-Walton folding: the ground-truth fusion ring at level `k`.

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{invalid, Error, Result};
use crate::lie_core::{LieType, RootSystem, Sign, Weight};
use crate::rep_ring::{add_into, irrep_product, VirtualCharacter};

/// An element of the fusion ring: integer combination of level-`k` alcove weights.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FusionElement {
    level: i64,
    terms: BTreeMap<Weight, BigInt>,
}

impl FusionElement {
    pub fn zero(level: i64) -> Self {
        FusionElement { level, terms: BTreeMap::new() }
    }

    pub fn level(&self) -> i64 {
        self.level
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

    pub fn add_term(&mut self, w: Weight, c: BigInt) {
        add_into(&mut self.terms, w, c);
    }

    pub fn add(&self, other: &FusionElement) -> FusionElement {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> FusionElement {
        let mut out = FusionElement::zero(self.level);
        for (w, x) in &self.terms {
            out.add_term(w.clone(), x * c);
        }
        out
    }

    /// The same element viewed in the representation ring.
    pub fn to_virtual(&self) -> VirtualCharacter {
        VirtualCharacter::from_terms(self.terms.iter().map(|(w, c)| (w.clone(), c.clone())))
            .expect("alcove weights are dominant")
    }
}

/// Serialized as a list of `[weight, coeff]` pairs.
impl Serialize for FusionElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (w, c) in &self.terms {
            let coeff = match c.to_i64() {
                Some(v) => serde_json::Value::from(v),
                None => serde_json::Value::from(c.to_string()),
            };
            seq.serialize_element(&(w, coeff))?;
        }
        seq.end()
    }
}

fn step_limit(rs: &RootSystem, k: i64, shifted: &Weight) -> usize {
    let big_k = k + rs.dual_coxeter();
    let size: i64 = shifted.0.iter().map(|c| c.abs()).sum::<i64>() * rs.comarks().iter().max().unwrap();
    (10 * big_k * rs.rank() as i64 + 10 * rs.rank() as i64 * size) as usize
}

/// Reduces `w + rho` into the level-`k` alcove under the shifted affine Weyl group.
/// Returns `None` on a wall.
pub fn fold_weight(rs: &RootSystem, w: &Weight, k: i64) -> Result<Option<(Weight, Sign)>> {
    let big_k = k + rs.dual_coxeter();
    let theta = rs.highest_root();
    let data = rs.data();
    let mut gamma: Weight = w + &rs.rho();
    let limit = step_limit(rs, k, &gamma);
    let mut sign = Sign::Plus;
    for _ in 0..=limit {
        if let Some(i) = gamma.0.iter().position(|&c| c < 0) {
            gamma = data.reflect(&gamma, i);
            sign = sign.flip();
            continue;
        }
        if gamma.0.contains(&0) {
            return Ok(None);
        }
        let t = rs.level(&gamma);
        if t < big_k {
            return Ok(Some((Weight(gamma.0.iter().map(|c| c - 1).collect()), sign)));
        }
        if t == big_k {
            return Ok(None);
        }
        gamma = gamma.add_scaled(theta, -(t - big_k));
        sign = sign.flip();
    }
    Err(Error::InternalLimit(format!("folding {w} at level {k} exceeded {limit} reflections")))
}

pub fn fold(rs: &RootSystem, x: &VirtualCharacter, k: i64) -> Result<FusionElement> {
    if k < 0 {
        return invalid("level must be nonnegative");
    }
    let mut out = FusionElement::zero(k);
    for (w, c) in x.terms() {
        rs.check_rank(w)?;
        if let Some((a, sign)) = fold_weight(rs, w, k)? {
            out.add_term(a, c * BigInt::from(sign.to_i64()));
        }
    }
    Ok(out)
}

fn check_alcove(rs: &RootSystem, w: &Weight, k: i64) -> Result<()> {
    rs.check_rank(w)?;
    if !w.is_dominant() || rs.level(w) > k {
        return invalid(format!("{w} is not in the level-{k} alcove"));
    }
    Ok(())
}

pub fn fusion_product(rs: &RootSystem, a: &Weight, b: &Weight, k: i64) -> Result<FusionElement> {
    if k < 0 {
        return invalid("level must be nonnegative");
    }
    check_alcove(rs, a, k)?;
    check_alcove(rs, b, k)?;
    fold(rs, &irrep_product(rs, a, b), k)
}

/// Product of two arbitrary fusion elements of the same level.
pub fn fusion_multiply(rs: &RootSystem, x: &FusionElement, y: &FusionElement) -> Result<FusionElement> {
    let k = x.level;
    let mut out = FusionElement::zero(k);
    for (a, ca) in &x.terms {
        for (b, cb) in &y.terms {
            let p = fusion_product(rs, a, b, k)?;
            out = out.add(&p.scale(&(ca * cb)));
        }
    }
    Ok(out)
}

pub fn in_fusion_ideal(rs: &RootSystem, x: &VirtualCharacter, k: i64) -> Result<bool> {
    Ok(fold(rs, x, k)?.is_zero())
}

/// The full multiplication table of the level-`k` fusion ring.
#[derive(Clone, Debug, Serialize)]
pub struct FusionTable {
    pub group: LieType,
    pub level: i64,
    pub basis: Vec<Weight>,
    /// `products[i][j] = basis[i] * basis[j]`.
    pub products: Vec<Vec<FusionElement>>,
}

pub fn fusion_table(rs: &RootSystem, k: i64) -> Result<FusionTable> {
    if k < 0 {
        return invalid("level must be nonnegative");
    }
    let basis = rs.alcove_weights(k);
    let products = basis
        .par_iter()
        .map(|a| basis.iter().map(|b| fusion_product(rs, a, b, k)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(FusionTable { group: rs.lie_type(), level: k, basis, products })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RingAxiomReport {
    pub commutative: bool,
    pub associative: bool,
    pub unit: bool,
    pub nonnegative: bool,
}

impl RingAxiomReport {
    pub fn passed(&self) -> bool {
        self.commutative && self.associative && self.unit && self.nonnegative
    }
}

impl FusionTable {
    fn index(&self) -> BTreeMap<&Weight, usize> {
        self.basis.iter().enumerate().map(|(i, w)| (w, i)).collect()
    }

    fn times(&self, idx: &BTreeMap<&Weight, usize>, x: &FusionElement, j: usize) -> FusionElement {
        let mut out = FusionElement::zero(self.level);
        for (w, c) in &x.terms {
            out = out.add(&self.products[idx[w]][j].scale(c));
        }
        out
    }

    pub fn check_ring_axioms(&self) -> RingAxiomReport {
        let n = self.basis.len();
        let idx = self.index();
        let vacuum = self.basis.iter().position(|w| w.is_zero()).expect("vacuum in alcove");
        let commutative = (0..n).all(|i| (0..n).all(|j| self.products[i][j] == self.products[j][i]));
        let unit = (0..n).all(|i| {
            let mut e = FusionElement::zero(self.level);
            e.add_term(self.basis[i].clone(), BigInt::from(1));
            self.products[vacuum][i] == e && self.products[i][vacuum] == e
        });
        let nonnegative = self
            .products
            .iter()
            .flatten()
            .all(|p| p.terms.values().all(|c| c > &BigInt::zero()));
        let associative = (0..n).all(|a| {
            (0..n).all(|b| {
                (0..n).all(|c| {
                    let left = self.times(&idx, &self.products[a][b], c);
                    // a * (b * c), using commutativity-free expansion
                    let mut right = FusionElement::zero(self.level);
                    for (w, coeff) in &self.products[b][c].terms {
                        right = right.add(&self.products[a][idx[w]].scale(coeff));
                    }
                    left == right
                })
            })
        });
        RingAxiomReport { commutative, associative, unit, nonnegative }
    }

    /// CSV with rows indexed by the left factor and columns by the right factor;
    /// each cell holds the product as a JSON list of `[weight, coeff]`.
    pub fn to_csv(&self) -> String {
        let mut wtr = csv::Writer::from_writer(Vec::new());
        let mut header = vec!["a\\b".to_string()];
        header.extend(self.basis.iter().map(|w| serde_json::to_string(w).unwrap()));
        wtr.write_record(&header).unwrap();
        for (i, a) in self.basis.iter().enumerate() {
            let mut row = vec![serde_json::to_string(a).unwrap()];
            row.extend(self.products[i].iter().map(|p| serde_json::to_string(p).unwrap()));
            wtr.write_record(&row).unwrap();
        }
        String::from_utf8(wtr.into_inner().unwrap()).unwrap()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerlindeReport {
    pub group: LieType,
    pub level: i64,
    pub tolerance: f64,
    pub max_deviation: f64,
    pub passed: bool,
}

/// Signed Weyl orbit of a regular weight.
fn signed_orbit(rs: &RootSystem, gamma: &Weight) -> Vec<(Weight, Sign)> {
    let data = rs.data();
    let mut seen: HashSet<Weight> = HashSet::from([gamma.clone()]);
    let mut out = vec![(gamma.clone(), Sign::Plus)];
    let mut queue = VecDeque::from([(gamma.clone(), Sign::Plus)]);
    while let Some((w, s)) = queue.pop_front() {
        for i in 0..rs.rank() {
            let r = data.reflect(&w, i);
            if seen.insert(r.clone()) {
                out.push((r.clone(), s.flip()));
                queue.push_back((r, s.flip()));
            }
        }
    }
    out
}

/// Modular S-matrix on the level-`k` alcove, normalized to be unitary.
pub fn s_matrix(rs: &RootSystem, k: i64) -> (Vec<Weight>, Vec<Vec<Complex64>>) {
    let basis = rs.alcove_weights(k);
    let big_k = (k + rs.dual_coxeter()) as f64;
    let rho = rs.rho();
    let shifted: Vec<Weight> = basis.iter().map(|w| w + &rho).collect();
    let orbits: Vec<Vec<(Weight, Sign)>> = shifted.iter().map(|g| signed_orbit(rs, g)).collect();
    let n = basis.len();
    let mut s = vec![vec![Complex64::new(0.0, 0.0); n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for (w, sign) in &orbits[i] {
                let q = rs.pairing(w, &shifted[j]);
                let x = *q.numer() as f64 / *q.denom() as f64;
                acc += Complex64::from_polar(1.0, -2.0 * PI * x / big_k) * sign.to_i64() as f64;
            }
            s[i][j] = acc;
        }
    }
    let norm: f64 = s[0].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    for row in &mut s {
        for z in row.iter_mut() {
            *z /= norm;
        }
    }
    (basis, s)
}

/// Compares the Verlinde formula with the folded structure constants.
pub fn verlinde_numeric_check(rs: &RootSystem, k: i64, tol: f64) -> Result<VerlindeReport> {
    if k < 0 || tol.is_nan() || tol <= 0.0 {
        return invalid("need k >= 0 and tol > 0");
    }
    let table = fusion_table(rs, k)?;
    let (basis, s) = s_matrix(rs, k);
    let n = basis.len();
    let vac = basis.iter().position(|w| w.is_zero()).unwrap();
    let mut max_dev: f64 = 0.0;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let mut z = Complex64::new(0.0, 0.0);
                for x in 0..n {
                    z += s[a][x] * s[b][x] * s[c][x].conj() / s[vac][x];
                }
                let exact = table.products[a][b].coeff(&basis[c]).to_f64().unwrap_or(f64::INFINITY);
                let dev = (z - Complex64::new(exact, 0.0)).norm();
                if dev.is_nan() {
                    max_dev = f64::INFINITY;
                } else {
                    max_dev = max_dev.max(dev);
                }
            }
        }
    }
    Ok(VerlindeReport { group: rs.lie_type(), level: k, tolerance: tol, max_deviation: max_dev, passed: max_dev < tol })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(s: &str) -> RootSystem {
        RootSystem::new(s.parse().unwrap())
    }

    fn v(w: &[i64]) -> VirtualCharacter {
        VirtualCharacter::irrep(Weight(w.to_vec()))
    }

    fn e(k: i64, terms: &[(&[i64], i64)]) -> FusionElement {
        let mut out = FusionElement::zero(k);
        for (w, c) in terms {
            out.add_term(Weight(w.to_vec()), BigInt::from(*c));
        }
        out
    }

    #[test]
    fn fold_examples() {
        let g = rs("G2");
        assert_eq!(fold(&g, &v(&[1, 0]), 1).unwrap(), e(1, &[(&[1, 0], 1)]));
        assert!(fold(&g, &v(&[3, 0]), 1).unwrap().is_zero());
        assert!(fold(&g, &v(&[0, 1]), 1).unwrap().is_zero());
        assert!(in_fusion_ideal(&g, &v(&[1, 1]), 2).unwrap());
        assert!(!in_fusion_ideal(&g, &v(&[0, 0]), 5).unwrap());
    }

    #[test]
    fn fold_a1_reflects_with_sign() {
        let a = rs("A1");
        // (k+2) at level k reflects to -(k)
        assert_eq!(fold(&a, &v(&[5]), 3).unwrap(), e(3, &[(&[3], -1)]));
        assert!(fold(&a, &v(&[4]), 3).unwrap().is_zero());
    }

    #[test]
    fn products() {
        let g = rs("G2");
        let w = |x: &[i64]| Weight(x.to_vec());
        assert_eq!(fusion_product(&g, &w(&[1, 0]), &w(&[1, 0]), 1).unwrap(), e(1, &[(&[0, 0], 1), (&[1, 0], 1)]));
        assert_eq!(fusion_product(&g, &w(&[0, 0]), &w(&[1, 0]), 1).unwrap(), e(1, &[(&[1, 0], 1)]));
        assert!(fusion_product(&g, &w(&[0, 1]), &w(&[1, 0]), 1).is_err());
        let a = rs("A1");
        assert_eq!(fusion_product(&a, &w(&[1]), &w(&[1]), 1).unwrap(), e(1, &[(&[0], 1)]));
    }

    #[test]
    fn tables_satisfy_axioms() {
        for name in ["G2", "A2", "C2"] {
            let r = rs(name);
            for k in 0..=3 {
                let t = fusion_table(&r, k).unwrap();
                assert!(t.check_ring_axioms().passed(), "{name} level {k}");
            }
        }
    }

    #[test]
    fn verlinde_agrees() {
        for (name, kmax) in [("G2", 3), ("A2", 4), ("A1", 4)] {
            let r = rs(name);
            for k in 0..=kmax {
                let rep = verlinde_numeric_check(&r, k, 1e-6).unwrap();
                assert!(rep.passed, "{name} level {k}: {}", rep.max_deviation);
            }
        }
    }

    #[test]
    fn csv_export() {
        let g = rs("G2");
        let t = fusion_table(&g, 1).unwrap();
        let csv = t.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 3);
        assert_eq!(lines[0], "a\\b,\"[0,0]\",\"[1,0]\"");
        assert_eq!(lines[2], "\"[1,0]\",\"[[[1,0],1]]\",\"[[[0,0],1],[[1,0],1]]\"");
    }
}
