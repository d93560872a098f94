//! Invariant modules `Z[weights]^{W_S^k}` attached to faces of the Weyl alcove.

mod basis;
pub(crate) use basis::norm_limit;
mod census;
mod g2;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::lie_core::{CartanData, RootSystem, Sign, Weight, Q};
use crate::rep_ring::{add_into, VirtualCharacter};

pub use basis::{default_bound, find_basis, verify_module_basis, BasisReport, Descent, SearchOrder};
pub use g2::{check_g2_module_bases, g2_level_one_identity, g2_module_bases, NamedBasis, NamedBasisReport};
pub use census::{census, centralizer_info, twist_order, CensusCount, CensusEntry, CensusGroup, CensusReport, CentralizerInfo};

/// A subset of the affine Dynkin nodes `0..=rank`, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FaceSubset(Vec<usize>);

impl FaceSubset {
    pub fn new(rank: usize, nodes: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut v: Vec<usize> = nodes.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        if let Some(&bad) = v.iter().find(|&&i| i > rank) {
            return invalid(format!("node {bad} is out of range for rank {rank}"));
        }
        Ok(FaceSubset(v))
    }

    pub fn empty() -> Self {
        FaceSubset(Vec::new())
    }

    pub fn full(rank: usize) -> Self {
        FaceSubset((0..=rank).collect())
    }

    pub fn nodes(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    /// Nodes of `0..=rank` not in the subset, sorted.
    pub fn complement(&self, rank: usize) -> Vec<usize> {
        (0..=rank).filter(|&i| !self.contains(i)).collect()
    }

    pub fn with(&self, i: usize) -> FaceSubset {
        let mut v = self.0.clone();
        v.push(i);
        v.sort_unstable();
        v.dedup();
        FaceSubset(v)
    }

    /// All subsets of `0..=rank` of the given size, in lexicographic order.
    pub fn all_of_size(rank: usize, size: usize) -> Vec<FaceSubset> {
        fn rec(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<FaceSubset>) {
            if cur.len() == size {
                out.push(FaceSubset(cur.clone()));
                return;
            }
            for i in start..n {
                cur.push(i);
                rec(i + 1, n, size, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(0, rank + 1, size, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for FaceSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", s.join(","))
    }
}

/// The reflection group `W_S^k`: simple reflections for nonaffine nodes of `S`,
/// plus the reflection in the level-`k` affine wall when `0` is in `S`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ReflectionGroupSpec {
    pub subset: FaceSubset,
    pub level: i64,
}

/// A weight with half-integral coordinates, stored doubled.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfWeight {
    pub doubled: Weight,
}

impl HalfWeight {
    pub fn to_weight(&self) -> Option<Weight> {
        if self.doubled.0.iter().all(|c| c % 2 == 0) {
            Some(Weight(self.doubled.0.iter().map(|c| c / 2).collect()))
        } else {
            None
        }
    }

    pub fn coords(&self) -> Vec<Q> {
        self.doubled.0.iter().map(|&c| Q::new(c, 2)).collect()
    }
}

impl fmt::Display for HalfWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.coords().iter().map(|q| q.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// Root subsystem spanned by the affine simple roots of `S`.
pub fn subsystem(rs: &RootSystem, s: &FaceSubset) -> CartanData {
    let nodes = s.nodes();
    let cartan = nodes
        .iter()
        .map(|&a| {
            let ra = rs.affine_simple_root(a);
            nodes.iter().map(|&b| rs.coroot_pairing(&ra, b)).collect()
        })
        .collect();
    let half = nodes.iter().map(|&a| rs.affine_half_norm(a)).collect();
    CartanData::new(cartan, half)
}

/// Expresses a vector of subsystem root coordinates as a weight of `G`.
fn subsystem_vector(rs: &RootSystem, s: &FaceSubset, coords: &[i64]) -> Weight {
    let mut w = Weight::zero(rs.rank());
    for (&a, &c) in s.nodes().iter().zip(coords) {
        if c != 0 {
            w = w.add_scaled(&rs.affine_simple_root(a), c);
        }
    }
    w
}

/// Half the sum of the positive roots of the subsystem generated by `S`.
pub fn rho_s(rs: &RootSystem, s: &FaceSubset) -> HalfWeight {
    let sub = subsystem(rs, s);
    let mut total = Weight::zero(rs.rank());
    for c in sub.positive_root_coords() {
        total = &total + &subsystem_vector(rs, s, c);
    }
    HalfWeight { doubled: total }
}

/// Point of the face closest to the origin: the fixed point of `W_S^k` of minimal norm.
fn face_point(rs: &RootSystem, s: &FaceSubset, k: i64) -> Vec<Q> {
    let n = rs.rank();
    let nodes = s.nodes();
    if !s.contains(0) || k == 0 {
        return vec![Q::zero(); n];
    }
    // x = sum_b t_b alpha_b / d_b with <x, alpha_a^vee> = c_a
    let m = nodes.len();
    let mut mat: Vec<Vec<Q>> = vec![vec![Q::zero(); m]; m];
    for (ia, &a) in nodes.iter().enumerate() {
        for (ib, &b) in nodes.iter().enumerate() {
            let pairing = rs.coroot_pairing(&rs.affine_simple_root(b), a);
            mat[ia][ib] = Q::from(pairing) / rs.affine_half_norm(b);
        }
    }
    let rhs: Vec<Q> = nodes.iter().map(|&a| if a == 0 { Q::from(-k) } else { Q::zero() }).collect();
    let inv = crate::lie_core::invert_matrix(&mat);
    let t: Vec<Q> = (0..m).map(|i| (0..m).map(|j| inv[i][j] * rhs[j]).sum()).collect();
    let mut x = vec![Q::zero(); n];
    for (ib, &b) in nodes.iter().enumerate() {
        let root = rs.affine_simple_root(b);
        for i in 0..n {
            x[i] += t[ib] * Q::from(root.0[i]) / rs.affine_half_norm(b);
        }
    }
    x
}

/// A face module `Z[weights]^{W_S^k}` together with its label calculus.
///
/// Basis labels are weights `mu` with `mu + rho_S` strictly inside the chamber
/// `<beta, alpha_i^vee> > 0` for nonaffine `i` in `S` and `<beta, alpha_0^vee> > -k` if `0` is in `S`.
#[derive(Debug)]
pub struct TwistedModule<'a> {
    rs: &'a RootSystem,
    subset: FaceSubset,
    level: i64,
    sub: CartanData,
    rho2: Weight,
    face: Vec<Q>,
}

impl<'a> TwistedModule<'a> {
    pub fn new(rs: &'a RootSystem, subset: FaceSubset, level: i64) -> Result<Self> {
        if level < 0 {
            return invalid("level must be nonnegative");
        }
        if subset.nodes().iter().any(|&i| i > rs.rank()) {
            return invalid(format!("subset {subset} out of range"));
        }
        if subset.len() == rs.rank() + 1 {
            return invalid("the full affine diagram does not index a face");
        }
        let sub = subsystem(rs, &subset);
        let rho2 = rho_s(rs, &subset).doubled;
        let face = face_point(rs, &subset, level);
        Ok(TwistedModule { rs, subset, level, sub, rho2, face })
    }

    pub fn root_system(&self) -> &'a RootSystem {
        self.rs
    }

    pub fn subset(&self) -> &FaceSubset {
        &self.subset
    }

    pub fn level(&self) -> i64 {
        self.level
    }

    pub fn subsystem(&self) -> &CartanData {
        &self.sub
    }

    pub fn rho(&self) -> HalfWeight {
        HalfWeight { doubled: self.rho2.clone() }
    }

    pub fn face_point(&self) -> &[Q] {
        &self.face
    }

    /// Free rank over the representation ring: `|W_G| / |W_H|`.
    pub fn rank(&self) -> u128 {
        self.rs.weyl_order() / self.sub.weyl_order()
    }

    fn doubled_shift(&self, mu: &Weight) -> Weight {
        mu.scale(2).add_scaled(&self.rho2, 1)
    }

    pub fn is_label(&self, mu: &Weight) -> bool {
        let b = self.doubled_shift(mu);
        self.subset.nodes().iter().all(|&a| {
            if a == 0 {
                self.rs.level(&b) < 2 * self.level
            } else {
                b.0[a - 1] > 0
            }
        })
    }

    /// Reduces `mu + rho_S` into the chamber. `None` if it lies on a wall.
    pub fn regularize(&self, mu: &Weight) -> Option<(Weight, Sign)> {
        let rs = self.rs;
        let theta = rs.highest_root();
        let mut b = self.doubled_shift(mu);
        let mut sign = Sign::Plus;
        // each step crosses one wall of a finite reflection arrangement
        let limit = 1 + 8 * self.sub.positive_roots().len().max(1) * (1 + mu.0.iter().map(|c| c.unsigned_abs() as usize).sum::<usize>());
        let mut steps = 0;
        loop {
            let mut moved = false;
            for &a in self.subset.nodes() {
                if a == 0 {
                    let t = rs.level(&b);
                    if t > 2 * self.level {
                        b = b.add_scaled(theta, 2 * self.level - t);
                        moved = true;
                    }
                } else {
                    let c = b.0[a - 1];
                    if c < 0 {
                        b = b.add_scaled(&rs.affine_simple_root(a), -c);
                        moved = true;
                    }
                }
                if moved {
                    sign = sign.flip();
                    break;
                }
            }
            if !moved {
                break;
            }
            steps += 1;
            assert!(steps <= limit, "chamber reduction did not terminate");
        }
        let on_wall = self.subset.nodes().iter().any(|&a| {
            if a == 0 {
                rs.level(&b) == 2 * self.level
            } else {
                b.0[a - 1] == 0
            }
        });
        if on_wall {
            return None;
        }
        let mu = Weight(b.0.iter().zip(&self.rho2.0).map(|(x, r)| (x - r) / 2).collect());
        Some((mu, sign))
    }

    /// Squared distance of `mu + rho_S` from the face point; invariant under `W_S^k`.
    pub fn norm_key(&self, mu: &Weight) -> Q {
        let n = self.rs.rank();
        let y: Vec<Q> = (0..n)
            .map(|i| Q::from(mu.0[i]) + Q::new(self.rho2.0[i], 2) - self.face[i])
            .collect();
        let form = self.rs.form();
        let mut acc = Q::zero();
        for i in 0..n {
            if y[i].is_zero() {
                continue;
            }
            for j in 0..n {
                acc += y[i] * form[i][j] * y[j];
            }
        }
        acc
    }

    /// Level of the dominant weight in the Weyl orbit of `mu`.
    pub fn size(&self, mu: &Weight) -> i64 {
        self.rs.level(&self.rs.to_dominant(mu).0)
    }

    /// Every basis label whose orbit size is at most `bound`, sorted by `(norm_key, size, weight)`.
    pub fn labels_up_to(&self, bound: i64) -> Vec<Weight> {
        let mut out = Vec::new();
        for d in self.rs.alcove_weights(bound) {
            for w in self.rs.weyl_orbit(&d) {
                if self.is_label(&w) {
                    out.push(w);
                }
            }
        }
        out.sort_by_cached_key(|w| (self.norm_key(w), self.size(w), w.clone()));
        out
    }

    /// Dynkin labels of the subsystem highest weight attached to a basis label.
    pub fn subsystem_labels(&self, mu: &Weight) -> Weight {
        Weight(
            self.subset
                .nodes()
                .iter()
                .map(|&a| if a == 0 { self.level - self.rs.level(mu) } else { mu.0[a - 1] })
                .collect(),
        )
    }

    /// The basis element of a label written out as a Laurent polynomial in the weight lattice.
    pub fn expand_label(&self, mu: &Weight) -> BTreeMap<Weight, BigInt> {
        assert!(self.is_label(mu), "{mu} is not a basis label");
        let top = self.subsystem_labels(mu);
        let ws = self.sub.weight_system(&top);
        let mut out = BTreeMap::new();
        for (nu, m) in &ws.weights {
            let depth = self.sub.root_coords(&(&top - nu)).expect("weights differ by roots");
            let w = mu - &subsystem_vector(self.rs, &self.subset, &depth);
            add_into(&mut out, w, BigInt::from(*m));
        }
        out
    }

    /// Product of an irreducible character with a basis label.
    pub fn multiply_label(&self, highest: &Weight, mu: &Weight) -> BTreeMap<Weight, BigInt> {
        let ws = self.rs.data().weight_system(highest);
        let mut out = BTreeMap::new();
        for (nu, m) in &ws.weights {
            if let Some((label, sign)) = self.regularize(&(mu + nu)) {
                add_into(&mut out, label, BigInt::from(*m as i64 * sign.to_i64()));
            }
        }
        out
    }

    pub fn element(&self, terms: BTreeMap<Weight, BigInt>) -> TwistedModuleElement {
        TwistedModuleElement { subset: self.subset.clone(), level: self.level, terms }
    }

    pub fn label_element(&self, mu: &Weight) -> TwistedModuleElement {
        let mut terms = BTreeMap::new();
        terms.insert(mu.clone(), BigInt::from(1));
        self.element(terms)
    }

    /// Image of an element in the weight lattice group ring.
    pub fn to_laurent(&self, x: &TwistedModuleElement) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (mu, c) in &x.terms {
            for (w, m) in self.expand_label(mu) {
                out.add_term(w.0, m * c);
            }
        }
        out
    }

    /// Image in the weight lattice group ring shifted by minus the face point, so that
    /// products of elements from different levels compare on equal footing.
    pub fn to_normalized_laurent(&self, x: &TwistedModuleElement) -> LaurentPoly {
        let denom = self.face.iter().fold(1i64, |acc, q| num_integer::lcm(acc, *q.denom()));
        let mut out = LaurentPoly { denom, terms: BTreeMap::new() };
        for (e, c) in self.to_laurent(x).terms {
            let shifted: Vec<i64> = e
                .iter()
                .zip(&self.face)
                .map(|(&a, v)| (Q::from(a * denom) - v * Q::from(denom)).to_integer())
                .collect();
            out.add_term(shifted, c);
        }
        out
    }
}

/// An element of a face module, in the label basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TwistedModuleElement {
    pub subset: FaceSubset,
    pub level: i64,
    #[serde(serialize_with = "serialize_terms")]
    pub terms: BTreeMap<Weight, BigInt>,
}

fn serialize_terms<S: serde::Serializer>(terms: &BTreeMap<Weight, BigInt>, s: S) -> std::result::Result<S::Ok, S::Error> {
    let v: Vec<(&Weight, String)> = terms.iter().map(|(w, c)| (w, c.to_string())).collect();
    v.serialize(s)
}

impl TwistedModuleElement {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &TwistedModuleElement) -> TwistedModuleElement {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            add_into(&mut out.terms, w.clone(), c.clone());
        }
        out
    }
}

/// Action of the representation ring on a face module.
pub fn rg_multiply(rs: &RootSystem, c: &VirtualCharacter, x: &TwistedModuleElement) -> Result<TwistedModuleElement> {
    let module = TwistedModule::new(rs, x.subset.clone(), x.level)?;
    for mu in x.terms.keys() {
        if !module.is_label(mu) {
            return invalid(format!("{mu} is not a basis label for {} at level {}", x.subset, x.level));
        }
    }
    let mut out = BTreeMap::new();
    for (lambda, a) in c.terms() {
        rs.check_rank(lambda)?;
        for (mu, b) in &x.terms {
            let coeff = a * b;
            for (w, m) in module.multiply_label(lambda, mu) {
                add_into(&mut out, w, m * &coeff);
            }
        }
    }
    Ok(module.element(out))
}

/// `regularize` as a free function on a root system.
pub fn regularize_affine(rs: &RootSystem, s: &FaceSubset, k: i64, w: &Weight) -> Result<Option<(Weight, Sign)>> {
    rs.check_rank(w)?;
    Ok(TwistedModule::new(rs, s.clone(), k)?.regularize(w))
}

/// Laurent polynomial with exponents in `(1/denom) * Z^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPoly {
    pub denom: i64,
    pub terms: BTreeMap<Vec<i64>, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { denom: 1, terms: BTreeMap::new() }
    }

    pub fn add_term(&mut self, e: Vec<i64>, c: BigInt) {
        add_into(&mut self.terms, e, c);
    }

    fn rescaled(&self, denom: i64) -> LaurentPoly {
        let f = denom / self.denom;
        LaurentPoly {
            denom,
            terms: self.terms.iter().map(|(e, c)| (e.iter().map(|x| x * f).collect(), c.clone())).collect(),
        }
    }

    fn common(&self, other: &LaurentPoly) -> (LaurentPoly, LaurentPoly) {
        let d = num_integer::lcm(self.denom, other.denom);
        (self.rescaled(d), other.rescaled(d))
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        let (mut a, b) = self.common(other);
        for (e, c) in b.terms {
            a.add_term(e, c);
        }
        a
    }

    pub fn sub(&self, other: &LaurentPoly) -> LaurentPoly {
        let (mut a, b) = self.common(other);
        for (e, c) in b.terms {
            a.add_term(e, -c);
        }
        a
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        let (a, b) = self.common(other);
        let mut out = LaurentPoly { denom: a.denom, terms: BTreeMap::new() };
        for (e, c) in &a.terms {
            for (f, d) in &b.terms {
                out.add_term(e.iter().zip(f).map(|(x, y)| x + y).collect(), c * d);
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Character of a virtual representation as a Laurent polynomial.
    pub fn from_character(rs: &RootSystem, c: &VirtualCharacter) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (lambda, a) in c.terms() {
            for (w, m) in &rs.data().weight_system(lambda).weights {
                out.add_term(w.0.clone(), a * BigInt::from(*m));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests;
