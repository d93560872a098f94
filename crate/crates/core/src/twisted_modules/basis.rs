//! Descent: integer row reduction of a face module against representation-ring
//! multiples of candidate generators, ordered by distance from the face.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::{FaceSubset, TwistedModule};
use crate::error::{invalid, Error, Result};
use crate::lie_core::{LieType, RootSystem, Weight, Q};
use crate::rep_ring::{add_into, VirtualCharacter};

type Key = (Q, Weight);

#[derive(Clone, Debug)]
struct Row {
    vec: BTreeMap<Key, BigInt>,
    /// `(candidate index, highest weight) -> coefficient`
    prov: BTreeMap<(usize, Weight), BigInt>,
}

fn axpy<K: Ord + Clone>(dst: &mut BTreeMap<K, BigInt>, src: &BTreeMap<K, BigInt>, c: &BigInt) {
    if c.is_zero() {
        return;
    }
    for (k, v) in src {
        add_into(dst, k.clone(), v * c);
    }
}

fn scaled<K: Ord + Clone>(src: &BTreeMap<K, BigInt>, c: &BigInt) -> BTreeMap<K, BigInt> {
    let mut out = BTreeMap::new();
    axpy(&mut out, src, c);
    out
}

/// Incremental integer echelon form of the submodule generated by candidate labels,
/// truncated to products whose extremal terms stay within a norm limit.
pub struct Descent<'m, 'a> {
    module: &'m TwistedModule<'a>,
    candidates: Vec<Weight>,
    rows: BTreeMap<Key, Row>,
    norm_limit: Q,
    track: bool,
    products: usize,
}

impl<'m, 'a> Descent<'m, 'a> {
    pub fn new(module: &'m TwistedModule<'a>, norm_limit: Q, track: bool) -> Self {
        Descent { module, candidates: Vec::new(), rows: BTreeMap::new(), norm_limit, track, products: 0 }
    }

    pub fn candidates(&self) -> &[Weight] {
        &self.candidates
    }

    pub fn product_count(&self) -> usize {
        self.products
    }

    fn key(&self, w: &Weight) -> Key {
        (self.module.norm_key(w), w.clone())
    }

    fn to_keyed(&self, x: &BTreeMap<Weight, BigInt>) -> BTreeMap<Key, BigInt> {
        x.iter().map(|(w, c)| (self.key(w), c.clone())).collect()
    }

    /// Dominant weights whose products with `b` may have extremal terms within the limit.
    fn multipliers(&self, b: &Weight) -> Vec<Weight> {
        let rs = self.module.root_system();
        let radius = sqrt_q(self.norm_limit) + sqrt_q(self.module.norm_key(b));
        // level(lambda) = F(lambda, theta) <= sqrt(2) |lambda|
        let max_level = (std::f64::consts::SQRT_2 * radius).floor() as i64 + 1;
        rs.alcove_weights(max_level)
            .into_iter()
            .filter(|lambda| {
                rs.weyl_orbit(lambda)
                    .iter()
                    .all(|w| self.module.norm_key(&(b + w)) <= self.norm_limit)
            })
            .collect()
    }

    /// Adds a generator and all of its truncated multiples.
    pub fn add_candidate(&mut self, b: Weight) {
        let idx = self.candidates.len();
        self.candidates.push(b.clone());
        for lambda in self.multipliers(&b) {
            let prod = self.module.multiply_label(&lambda, &b);
            let mut prov = BTreeMap::new();
            if self.track {
                prov.insert((idx, lambda.clone()), BigInt::one());
            }
            self.products += 1;
            self.insert(Row { vec: self.to_keyed(&prod), prov });
        }
    }

    fn insert(&mut self, mut row: Row) {
        loop {
            let Some((pk, pc)) = row.vec.iter().next_back().map(|(k, c)| (k.clone(), c.clone())) else {
                return;
            };
            let Some(pivot) = self.rows.get_mut(&pk) else {
                if pc.is_negative() {
                    row.vec = scaled(&row.vec, &-BigInt::one());
                    row.prov = scaled(&row.prov, &-BigInt::one());
                }
                self.rows.insert(pk, row);
                return;
            };
            let rc = pivot.vec[&pk].clone();
            if (&pc % &rc).is_zero() {
                let q = -(&pc / &rc);
                axpy(&mut row.vec, &pivot.vec, &q);
                axpy(&mut row.prov, &pivot.prov, &q);
            } else {
                let e = rc.extended_gcd(&pc);
                let g = e.gcd;
                // new pivot row: x*pivot + y*row, with pivot coefficient g
                let mut new_vec = scaled(&pivot.vec, &e.x);
                axpy(&mut new_vec, &row.vec, &e.y);
                let mut new_prov = scaled(&pivot.prov, &e.x);
                axpy(&mut new_prov, &row.prov, &e.y);
                // eliminated row: (pc/g)*pivot - (rc/g)*row
                let mut other_vec = scaled(&pivot.vec, &(&pc / &g));
                axpy(&mut other_vec, &row.vec, &-(&rc / &g));
                let mut other_prov = scaled(&pivot.prov, &(&pc / &g));
                axpy(&mut other_prov, &row.prov, &-(&rc / &g));
                pivot.vec = new_vec;
                pivot.prov = new_prov;
                row = Row { vec: other_vec, prov: other_prov };
            }
        }
    }

    /// Reduces `x`; returns the remainder and the multiples subtracted.
    fn reduce_keyed(&self, x: BTreeMap<Key, BigInt>) -> (BTreeMap<Key, BigInt>, BTreeMap<(usize, Weight), BigInt>) {
        let mut vec = x;
        let mut acc = BTreeMap::new();
        loop {
            let Some((pk, pc)) = vec.iter().next_back().map(|(k, c)| (k.clone(), c.clone())) else {
                return (vec, acc);
            };
            let Some(pivot) = self.rows.get(&pk) else {
                return (vec, acc);
            };
            let rc = &pivot.vec[&pk];
            if !(&pc % rc).is_zero() {
                return (vec, acc);
            }
            let q = &pc / rc;
            axpy(&mut vec, &pivot.vec, &-&q);
            axpy(&mut acc, &pivot.prov, &q);
        }
    }

    pub fn in_span(&self, x: &BTreeMap<Weight, BigInt>) -> bool {
        self.reduce_keyed(self.to_keyed(x)).0.is_empty()
    }

    /// Writes `x` as `sum_s c_s * candidate_s` with representation-ring coefficients,
    /// or `None` if `x` does not reduce to zero.
    pub fn decompose(&self, x: &BTreeMap<Weight, BigInt>) -> Option<Vec<VirtualCharacter>> {
        assert!(self.track, "decomposition needs provenance tracking");
        let (rem, acc) = self.reduce_keyed(self.to_keyed(x));
        if !rem.is_empty() {
            return None;
        }
        let mut coeffs = vec![VirtualCharacter::zero(); self.candidates.len()];
        for ((idx, lambda), c) in acc {
            coeffs[idx].add_term(lambda, c);
        }
        Some(coeffs)
    }
}

fn sqrt_q(q: Q) -> f64 {
    (*q.numer() as f64 / *q.denom() as f64).max(0.0).sqrt()
}

/// Norm limit for products: a label at distance `r` is reached from a generator at
/// distance `g` through a multiplier of length at most `r + g`, whose orbit stays
/// within `r + 2g`.
pub(crate) fn norm_limit(labels: &[Weight], generators: &[Weight], module: &TwistedModule<'_>) -> Q {
    let r = labels.iter().map(|w| sqrt_q(module.norm_key(w))).fold(0.0, f64::max);
    let g = generators.iter().map(|w| sqrt_q(module.norm_key(w))).fold(0.0, f64::max);
    Q::from((r + 2.0 * g).powi(2).ceil() as i64 + 1)
}

#[derive(Clone, Debug, Serialize)]
pub struct BasisReport {
    pub group: LieType,
    pub subset: FaceSubset,
    pub level: i64,
    pub module_rank: u128,
    pub candidate: Vec<Weight>,
    /// Orbit-level bound on the labels checked for spanning.
    pub bound: i64,
    pub labels_checked: usize,
    pub products_used: usize,
    pub passed: bool,
    pub failure: Option<String>,
}

pub fn default_bound(rs: &RootSystem, k: i64) -> i64 {
    k + 2 * rs.dual_coxeter()
}

/// Checks that `candidate` spans the face module up to the bound and has the right size.
pub fn verify_module_basis(
    rs: &RootSystem,
    s: &FaceSubset,
    k: i64,
    candidate: &[Weight],
    bound: Option<i64>,
) -> Result<BasisReport> {
    let module = TwistedModule::new(rs, s.clone(), k)?;
    for w in candidate {
        rs.check_rank(w)?;
        if !module.is_label(w) {
            return invalid(format!("{w} is not a basis label for {s} at level {k}"));
        }
    }
    let bound = bound.unwrap_or_else(|| default_bound(rs, k));
    let rank = module.rank();
    let mut report = BasisReport {
        group: rs.lie_type(),
        subset: s.clone(),
        level: k,
        module_rank: rank,
        candidate: candidate.to_vec(),
        bound,
        labels_checked: 0,
        products_used: 0,
        passed: false,
        failure: None,
    };
    if candidate.len() as u128 != rank {
        report.failure = Some(format!("{} candidates for a module of rank {rank}", candidate.len()));
        return Ok(report);
    }
    let labels = module.labels_up_to(bound);
    let mut descent = Descent::new(&module, norm_limit(&labels, candidate, &module), false);
    for b in candidate {
        descent.add_candidate(b.clone());
    }
    report.products_used = descent.product_count();
    for w in &labels {
        report.labels_checked += 1;
        let mut x = BTreeMap::new();
        x.insert(w.clone(), BigInt::one());
        if !descent.in_span(&x) {
            report.failure = Some(format!("label {w} is not reached by the candidates"));
            return Ok(report);
        }
    }
    report.passed = true;
    Ok(report)
}

/// Order in which `find_basis` tries labels.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchOrder {
    /// Closest to the face point first.
    Norm,
    /// Closest to one of the seed labels first.
    NearSeed,
}

/// Greedily extends `seed` to a generating set of the face module, truncated at `bound`.
/// Fails if the result is larger than the rank.
pub fn find_basis(module: &TwistedModule<'_>, seed: &[Weight], bound: i64, order: SearchOrder) -> Result<Vec<Weight>> {
    let rs = module.root_system();
    let mut labels = module.labels_up_to(bound);
    if order == SearchOrder::NearSeed && !seed.is_empty() {
        let dist = |w: &Weight| seed.iter().map(|s| rs.pairing(&(w - s), &(w - s))).min().unwrap();
        labels.sort_by_cached_key(|w| (dist(w), module.norm_key(w), w.clone()));
    }
    // generators are expected among the labels of size at most `k + h^vee`
    let mut likely = module.labels_up_to(module.level() + rs.dual_coxeter());
    likely.extend(seed.iter().cloned());
    let mut descent = Descent::new(module, norm_limit(&labels, &likely, module), false);
    for s in seed {
        descent.add_candidate(s.clone());
    }
    for w in &labels {
        let mut x = BTreeMap::new();
        x.insert(w.clone(), BigInt::one());
        if !descent.in_span(&x) {
            descent.add_candidate(w.clone());
        }
    }
    let found = descent.candidates().to_vec();
    if found.len() as u128 != module.rank() {
        return Err(Error::InternalLimit(format!(
            "greedy search for {} at level {} found {} generators for rank {}",
            module.subset(),
            module.level(),
            found.len(),
            module.rank()
        )));
    }
    Ok(found)
}
