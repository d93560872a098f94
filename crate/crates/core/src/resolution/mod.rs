//! The complex of face modules over the alcove, its differential, and fusion ideal
//! presentations read off from it.

mod presentation;

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{invalid, Result};
use crate::fusion_oracle::fold_weight;
use crate::lie_core::{LieType, RootSystem, Sign, Weight};
use crate::rep_ring::add_into;
use crate::twisted_modules::{default_bound, FaceSubset, TwistedModule};

pub use presentation::{
    extract_presentation, g2_theorem_generators, verify_presentation, Codimension, EdgeExtraction, ExtractOptions,
    PresentationReport, DEFAULT_PRIMES,
};

/// Faces graded by homological degree: degree `p` holds the subsets of size `n - p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComplexSpec {
    pub group: LieType,
    pub level: i64,
    pub degrees: Vec<Vec<FaceSubset>>,
    /// Free ranks over the representation ring, per degree.
    pub ranks: Vec<u128>,
    /// Nodes in the order used for signs; the affine node comes first.
    pub node_order: Vec<usize>,
    pub euler_characteristic: i128,
}

pub fn build_complex(rs: &RootSystem, k: i64) -> Result<ComplexSpec> {
    let n = rs.rank();
    let mut degrees = Vec::with_capacity(n + 1);
    let mut ranks = Vec::with_capacity(n + 1);
    for p in 0..=n {
        let faces = FaceSubset::all_of_size(n, n - p);
        let rank = faces
            .iter()
            .map(|s| TwistedModule::new(rs, s.clone(), k).map(|m| m.rank()))
            .sum::<Result<u128>>()?;
        degrees.push(faces);
        ranks.push(rank);
    }
    let euler = ranks
        .iter()
        .enumerate()
        .map(|(p, &r)| if p % 2 == 0 { r as i128 } else { -(r as i128) })
        .sum();
    Ok(ComplexSpec {
        group: rs.lie_type(),
        level: k,
        degrees,
        ranks,
        node_order: (0..=n).collect(),
        euler_characteristic: euler,
    })
}

/// Position of `j` in the sorted complement of `S`, or an error if `j` is in `S`.
fn insertion_sign(rs: &RootSystem, s: &FaceSubset, j: usize) -> Result<Sign> {
    if j > rs.rank() {
        return invalid(format!("node {j} out of range"));
    }
    if s.contains(j) {
        return invalid(format!("node {j} already lies in {s}"));
    }
    let pos = s.complement(rs.rank()).iter().position(|&c| c == j).expect("complement");
    Ok(Sign::from_parity(pos % 2 == 1))
}

/// The component of the differential from the module of `S` to that of `S + {j}`,
/// applied to a basis label. `None` when the image is zero.
pub fn d1_component(rs: &RootSystem, s: &FaceSubset, j: usize, k: i64, mu: &Weight) -> Result<Option<(Weight, Sign)>> {
    rs.check_rank(mu)?;
    let outer = insertion_sign(rs, s, j)?;
    let source = TwistedModule::new(rs, s.clone(), k)?;
    if !source.is_label(mu) {
        return invalid(format!("{mu} is not a basis label for {s} at level {k}"));
    }
    let target = TwistedModule::new(rs, s.with(j), k)?;
    Ok(target.regularize(mu).map(|(w, sign)| (w, sign.times(outer))))
}

/// All face modules of the complex, built once.
struct Faces<'a> {
    rs: &'a RootSystem,
    modules: BTreeMap<FaceSubset, TwistedModule<'a>>,
}

type Chain = BTreeMap<(FaceSubset, Weight), BigInt>;

impl<'a> Faces<'a> {
    fn new(rs: &'a RootSystem, k: i64) -> Result<Self> {
        let n = rs.rank();
        let mut modules = BTreeMap::new();
        for size in 0..=n {
            for s in FaceSubset::all_of_size(n, size) {
                modules.insert(s.clone(), TwistedModule::new(rs, s, k)?);
            }
        }
        Ok(Faces { rs, modules })
    }

    fn of_size(&self, size: usize) -> impl Iterator<Item = &TwistedModule<'a>> {
        self.modules.values().filter(move |m| m.subset().len() == size)
    }

    /// Differential of one label, as a chain one degree lower.
    fn d1(&self, s: &FaceSubset, mu: &Weight) -> Chain {
        let n = self.rs.rank();
        let mut out = Chain::new();
        if s.len() == n {
            return out;
        }
        for (pos, j) in s.complement(n).into_iter().enumerate() {
            let t = s.with(j);
            if let Some((w, sign)) = self.modules[&t].regularize(mu) {
                let c = sign.times(Sign::from_parity(pos % 2 == 1)).to_i64();
                add_into(&mut out, (t, w), BigInt::from(c));
            }
        }
        out
    }

    fn d1_chain(&self, x: &Chain) -> Chain {
        let mut out = Chain::new();
        for ((s, mu), c) in x {
            for (key, v) in self.d1(s, mu) {
                add_into(&mut out, key, v * c);
            }
        }
        out
    }

    fn labels(&self, size: usize, bound: i64) -> Vec<(FaceSubset, Weight)> {
        self.of_size(size)
            .flat_map(|m| m.labels_up_to(bound).into_iter().map(move |w| (m.subset().clone(), w)))
            .collect()
    }
}

/// Image of a degree-zero label in the fusion ring: the folded induced character.
fn augment(rs: &RootSystem, mu: &Weight, k: i64) -> Result<Option<(Weight, Sign)>> {
    fold_weight(rs, mu, k)
}

fn augment_chain(rs: &RootSystem, x: &Chain, k: i64) -> Result<BTreeMap<Weight, BigInt>> {
    let mut out = BTreeMap::new();
    for ((_, mu), c) in x {
        if let Some((w, sign)) = augment(rs, mu, k)? {
            add_into(&mut out, w, c * sign.to_i64());
        }
    }
    Ok(out)
}

const MAX_REPORTED: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DSquaredReport {
    pub group: LieType,
    pub level: i64,
    pub bound: i64,
    /// Degree-2 labels whose double differential was computed.
    pub degree2_labels: usize,
    /// Degree-1 labels whose differential was pushed to the fusion ring.
    pub degree1_labels: usize,
    pub violation_count: usize,
    /// The first few violations.
    pub violations: Vec<String>,
    pub passed: bool,
}

/// Checks `d1 d1 = 0` on every degree-2 label up to `bound`, and that the fusion ring
/// image of `d1` vanishes on every degree-1 label.
pub fn d_squared_check(rs: &RootSystem, k: i64, bound: Option<i64>) -> Result<DSquaredReport> {
    let bound = bound.unwrap_or_else(|| default_bound(rs, k));
    let faces = Faces::new(rs, k)?;
    let n = rs.rank();
    let deg2 = if n >= 2 { faces.labels(n - 2, bound) } else { Vec::new() };
    let mut violations: Vec<String> = deg2
        .par_iter()
        .filter_map(|(s, mu)| {
            let mut x = Chain::new();
            x.insert((s.clone(), mu.clone()), BigInt::from(1));
            let dd = faces.d1_chain(&faces.d1_chain(&x));
            (!dd.is_empty()).then(|| format!("d1 d1 of {mu} on {s} is nonzero"))
        })
        .collect();
    let deg1 = faces.labels(n - 1, bound);
    let aug: Vec<Result<Option<String>>> = deg1
        .par_iter()
        .map(|(s, mu)| {
            let mut x = Chain::new();
            x.insert((s.clone(), mu.clone()), BigInt::from(1));
            let image = augment_chain(rs, &faces.d1_chain(&x), k)?;
            Ok((!image.is_empty()).then(|| format!("d1 of {mu} on {s} does not vanish in the fusion ring")))
        })
        .collect();
    for r in aug {
        if let Some(v) = r? {
            violations.push(v);
        }
    }
    let count = violations.len();
    violations.truncate(MAX_REPORTED);
    Ok(DSquaredReport {
        group: rs.lie_type(),
        level: k,
        bound,
        degree2_labels: deg2.len(),
        degree1_labels: deg1.len(),
        violation_count: count,
        violations,
        passed: count == 0,
    })
}

/// Union-find over degree-zero labels where each node carries a sign relative to its root.
struct SignedClasses {
    index: HashMap<(FaceSubset, Weight), usize>,
    parent: Vec<usize>,
    /// Sign of a node relative to its parent.
    rel: Vec<Sign>,
    killed: Vec<bool>,
}

impl SignedClasses {
    fn new() -> Self {
        SignedClasses { index: HashMap::new(), parent: Vec::new(), rel: Vec::new(), killed: Vec::new() }
    }

    fn node(&mut self, key: &(FaceSubset, Weight)) -> usize {
        if let Some(&i) = self.index.get(key) {
            return i;
        }
        let i = self.parent.len();
        self.index.insert(key.clone(), i);
        self.parent.push(i);
        self.rel.push(Sign::Plus);
        self.killed.push(false);
        i
    }

    fn find(&mut self, i: usize) -> (usize, Sign) {
        let p = self.parent[i];
        if p == i {
            return (i, Sign::Plus);
        }
        let (root, s) = self.find(p);
        let total = self.rel[i].times(s);
        self.parent[i] = root;
        self.rel[i] = total;
        (root, total)
    }

    fn kill(&mut self, i: usize) {
        let (r, _) = self.find(i);
        self.killed[r] = true;
    }

    /// Imposes `a = sign * b`.
    fn unite(&mut self, a: usize, b: usize, sign: Sign) {
        let (ra, sa) = self.find(a);
        let (rb, sb) = self.find(b);
        if ra == rb {
            // a = sa r, b = sb r: consistent iff sa = sign * sb, otherwise the class is 2-torsion-free zero
            if sa != sign.times(sb) {
                self.killed[ra] = true;
            }
            return;
        }
        // ra = sa a = sa sign b = sa sign sb rb
        self.parent[ra] = rb;
        self.rel[ra] = sa.times(sign).times(sb);
        if self.killed[ra] {
            self.killed[rb] = true;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CokernelReport {
    pub group: LieType,
    pub level: i64,
    pub bound: i64,
    /// Labels of orbit size at most this are far enough from the truncation to be trusted.
    pub inner_bound: i64,
    pub degree0_labels: usize,
    pub relations: usize,
    pub oracle_rank: usize,
    /// Surviving classes that contain a trusted label.
    pub cokernel_rank: usize,
    pub unreached: Vec<Weight>,
    pub violation_count: usize,
    pub violations: Vec<String>,
    pub passed: bool,
}

/// Compares the degree-zero homology of the truncated complex, as an abelian group, with
/// the fusion ring of the oracle.
pub fn cokernel_vs_oracle(rs: &RootSystem, k: i64, bound: Option<i64>) -> Result<CokernelReport> {
    let bound = bound.unwrap_or_else(|| default_bound(rs, k));
    let inner_bound = k;
    let faces = Faces::new(rs, k)?;
    let n = rs.rank();
    let deg0 = faces.labels(n, bound);
    let deg1 = faces.labels(n - 1, bound);
    let images: Vec<Chain> = deg1
        .par_iter()
        .map(|(s, mu)| faces.d1(s, mu))
        .collect();

    let mut classes = SignedClasses::new();
    for key in &deg0 {
        classes.node(key);
    }
    let mut violations = Vec::new();
    for ((s, mu), img) in deg1.iter().zip(&images) {
        if !augment_chain(rs, img, k)?.is_empty() {
            violations.push(format!("d1 of {mu} on {s} does not vanish in the fusion ring"));
        }
        let terms: Vec<(usize, Sign)> = img
            .iter()
            .map(|(key, c)| (classes.node(key), if c.is_zero() || *c > BigInt::zero() { Sign::Plus } else { Sign::Minus }))
            .collect();
        match terms.as_slice() {
            [] => {}
            [(a, _)] => classes.kill(*a),
            // ea a + eb b = 0
            [(a, ea), (b, eb)] => classes.unite(*a, *b, ea.times(*eb).flip()),
            _ => violations.push(format!("d1 of {mu} on {s} has more than two terms")),
        }
    }

    let mut psi: BTreeMap<usize, BTreeSet<(Weight, Sign)>> = BTreeMap::new();
    let mut dead_nonzero = Vec::new();
    let mut trusted_roots = BTreeSet::new();
    let mut reached = BTreeSet::new();
    for key in &deg0 {
        let i = classes.node(key);
        let (root, rel) = classes.find(i);
        let image = augment(rs, &key.1, k)?;
        if let Some((w, _)) = &image {
            reached.insert(w.clone());
        }
        if faces.modules[&key.0].size(&key.1) > inner_bound {
            continue;
        }
        match image {
            Some((w, sign)) if !classes.killed[root] => {
                trusted_roots.insert(root);
                psi.entry(root).or_default().insert((w, sign.times(rel)));
            }
            Some(_) => dead_nonzero.push(format!("{} on {} maps to a nonzero class but is killed", key.1, key.0)),
            None if !classes.killed[root] => {
                trusted_roots.insert(root);
                psi.entry(root).or_default();
            }
            None => {}
        }
    }
    violations.extend(dead_nonzero);
    let mut seen: BTreeMap<Weight, usize> = BTreeMap::new();
    for root in &trusted_roots {
        let images = &psi[root];
        match images.iter().next() {
            None => violations.push("a surviving class maps to zero".to_string()),
            Some((w, _)) => {
                if images.len() > 1 {
                    violations.push(format!("a class maps to several elements, including {w}"));
                }
                if let Some(other) = seen.insert(w.clone(), *root) {
                    if other != *root {
                        violations.push(format!("two surviving classes both map to {w}"));
                    }
                }
            }
        }
    }
    let alcove = rs.alcove_weights(k);
    let unreached: Vec<Weight> = alcove.iter().filter(|w| !reached.contains(*w)).cloned().collect();
    let count = violations.len();
    violations.truncate(MAX_REPORTED);
    let cokernel_rank = trusted_roots.len();
    Ok(CokernelReport {
        group: rs.lie_type(),
        level: k,
        bound,
        inner_bound,
        degree0_labels: deg0.len(),
        relations: deg1.len(),
        oracle_rank: alcove.len(),
        cokernel_rank,
        passed: count == 0 && unreached.is_empty() && cokernel_rank == alcove.len(),
        unreached,
        violation_count: count,
        violations,
    })
}
