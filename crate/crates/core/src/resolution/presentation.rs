use std::collections::BTreeMap;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{invalid, Error, Result};
use crate::fusion_oracle::in_fusion_ideal;
use crate::groebner::{quotient_codimension, FieldPoly, PrimeField, Rationals};
use crate::lie_core::{LieType, RootSystem, Weight};
use crate::rep_ring::{tensor_product, to_polynomial, VirtualCharacter};
use crate::twisted_modules::{default_bound, find_basis, norm_limit, Descent, FaceSubset, SearchOrder, TwistedModule};

pub const DEFAULT_PRIMES: [u64; 11] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Codimension {
    Finite(usize),
    /// The quotient is not zero-dimensional.
    Infinite,
}

impl Serialize for Codimension {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Codimension::Finite(n) => s.serialize_u64(*n as u64),
            Codimension::Infinite => s.serialize_str("infinite"),
        }
    }
}

/// How one nonaffine node contributed generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeExtraction {
    pub node: usize,
    pub vertex: FaceSubset,
    pub edge: FaceSubset,
    pub vertex_basis: Vec<Weight>,
    pub edge_basis: Vec<Weight>,
    /// Whether the edge basis extends the vertex basis.
    pub shared: bool,
    pub generators: usize,
}

#[derive(Clone, Debug, Serialize)]
#[allow(non_snake_case)]
pub struct PresentationReport {
    pub group: LieType,
    pub level: i64,
    pub generators: Vec<VirtualCharacter>,
    pub membership: Vec<bool>,
    pub codim_Q: Codimension,
    pub codim_Fp: BTreeMap<u64, Codimension>,
    pub alcove_count: usize,
    /// Upper bound on the generator count from the edge module ranks, when extracted.
    pub generator_bound: Option<u128>,
    /// Orbit-size truncation used by the extraction, when extracted.
    pub truncation: Option<i64>,
    pub extraction: Option<Vec<EdgeExtraction>>,
    pub note: String,
    pub verdict: String,
}

impl PresentationReport {
    pub fn passed(&self) -> bool {
        self.verdict == "pass"
    }
}

/// The four relations of the level-`k` fusion ideal of `G2`, coordinate 1 short.
pub fn g2_theorem_generators(k: i64) -> Result<Vec<VirtualCharacter>> {
    if k < 1 {
        return invalid("the G2 relations are stated for positive levels");
    }
    let rho = |a: i64, b: i64| VirtualCharacter::irrep(Weight::from([a, b]));
    let sum = |x: VirtualCharacter, y: VirtualCharacter| &x + &y;
    Ok(if k % 2 == 1 {
        let h = (k - 1) / 2;
        vec![
            rho(0, h + 1),
            sum(rho(1, h), rho(1, h + 1)),
            sum(rho(0, h), rho(0, h + 2)),
            rho(k + 2, 0),
        ]
    } else {
        let h = k / 2;
        vec![
            rho(1, h),
            sum(rho(0, h), rho(0, h + 1)),
            sum(rho(1, h - 1), rho(1, h + 1)),
            rho(k + 2, 0),
        ]
    })
}

fn codimension_over(rs: &RootSystem, gens: &[VirtualCharacter], prime: Option<u64>) -> Result<Codimension> {
    let polys: Vec<_> = gens.iter().map(|g| to_polynomial(rs, g)).collect();
    let result = match prime {
        None => quotient_codimension(&polys.iter().map(|p| FieldPoly::from_polychar(Rationals, p)).collect::<Vec<_>>()),
        Some(p) => {
            let field = PrimeField::new(p)?;
            quotient_codimension(&polys.iter().map(|q| FieldPoly::from_polychar(field, q)).collect::<Vec<_>>())
        }
    };
    match result {
        Ok(n) => Ok(Codimension::Finite(n)),
        Err(Error::InfiniteCodimension { .. }) => Ok(Codimension::Infinite),
        Err(e) => Err(e),
    }
}

/// Checks that `gens` generate the level-`k` fusion ideal: each folds to zero, and the
/// quotient has the alcove count as dimension over the rationals and each prime field.
pub fn verify_presentation(rs: &RootSystem, k: i64, gens: &[VirtualCharacter], primes: &[u64]) -> Result<PresentationReport> {
    if k < 0 {
        return invalid("level must be nonnegative");
    }
    if gens.is_empty() {
        return invalid("no generators given");
    }
    if primes.is_empty() {
        return invalid("no primes given");
    }
    for &p in primes {
        PrimeField::new(p)?;
    }
    let membership = gens.iter().map(|g| in_fusion_ideal(rs, g, k)).collect::<Result<Vec<bool>>>()?;
    let fields: Vec<Option<u64>> = std::iter::once(None).chain(primes.iter().map(|&p| Some(p))).collect();
    let codims = fields
        .par_iter()
        .map(|f| codimension_over(rs, gens, *f))
        .collect::<Result<Vec<Codimension>>>()?;
    let alcove_count = rs.alcove_weights(k).len();
    let codim_q = codims[0];
    let codim_fp: BTreeMap<u64, Codimension> = primes.iter().copied().zip(codims[1..].iter().copied()).collect();
    let passed = membership.iter().all(|&m| m) && codims.iter().all(|c| *c == Codimension::Finite(alcove_count));
    Ok(PresentationReport {
        group: rs.lie_type(),
        level: k,
        generators: gens.to_vec(),
        membership,
        codim_Q: codim_q,
        codim_Fp: codim_fp,
        alcove_count,
        generator_bound: None,
        truncation: None,
        extraction: None,
        note: "codimensions are certified over Q and the listed primes only".to_string(),
        verdict: if passed { "pass" } else { "fail" }.to_string(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtractOptions {
    /// Orbit-size truncation for basis searches; defaults to `k + 2 h^vee`.
    pub bound: Option<i64>,
    pub primes: Vec<u64>,
    /// Try to extend each vertex basis to the adjacent edge basis first.
    pub shared_bases: bool,
}

impl Default for ExtractOptions {
    fn default() -> Self {
        ExtractOptions { bound: None, primes: DEFAULT_PRIMES.to_vec(), shared_bases: true }
    }
}

/// Image of a label in the representation ring under finite shifted reflection.
fn to_character(rs: &RootSystem, mu: &Weight) -> VirtualCharacter {
    let mut out = VirtualCharacter::zero();
    if let Some((w, sign)) = rs.shifted_dominant_reduce(mu) {
        out.add_term(w, BigInt::from(sign.to_i64()));
    }
    out
}

fn extract_node(rs: &RootSystem, k: i64, j: usize, bound: i64, shared_bases: bool) -> Result<(Vec<VirtualCharacter>, EdgeExtraction)> {
    let n = rs.rank();
    let vertex = FaceSubset::new(n, (0..=n).filter(|&i| i != j))?;
    let edge = FaceSubset::new(n, (1..=n).filter(|&i| i != j))?;
    let vm = TwistedModule::new(rs, vertex.clone(), k)?;
    let em = TwistedModule::new(rs, edge.clone(), k)?;
    let vertex_basis = find_basis(&vm, &[], bound, SearchOrder::Norm)?;
    let extended = if shared_bases {
        match find_basis(&em, &vertex_basis, bound, SearchOrder::NearSeed) {
            Ok(b) => Some(b),
            Err(Error::InternalLimit(_)) => None,
            Err(e) => return Err(e),
        }
    } else {
        None
    };
    let shared = extended.is_some();
    let edge_basis = match extended {
        Some(b) => b,
        None => find_basis(&em, &[], bound, SearchOrder::Norm)?,
    };

    let images: Vec<_> = edge_basis.iter().map(|g| vm.regularize(g)).collect();
    let targets: Vec<Weight> = images.iter().flatten().map(|(w, _)| w.clone()).collect();
    let mut descent = Descent::new(&vm, norm_limit(&targets, &vertex_basis, &vm), true);
    for b in &vertex_basis {
        descent.add_candidate(b.clone());
    }
    let lifted: Vec<VirtualCharacter> = vertex_basis.iter().map(|b| to_character(rs, b)).collect();
    let mut gens = Vec::new();
    for (g, image) in edge_basis.iter().zip(&images) {
        let mut rel = to_character(rs, g);
        if let Some((w, sign)) = image {
            let mut x = BTreeMap::new();
            x.insert(w.clone(), BigInt::from(sign.to_i64()));
            let coeffs = descent.decompose(&x).ok_or_else(|| {
                Error::InternalLimit(format!(
                    "could not express {w} in the basis of {vertex} at level {k}; raise the truncation above {bound}"
                ))
            })?;
            for (c, h) in coeffs.iter().zip(&lifted) {
                if !c.is_zero() && !h.is_zero() {
                    rel = &rel - &tensor_product(rs, c, h);
                }
            }
        }
        if !rel.is_zero() {
            gens.push(rel);
        }
    }
    let summary = EdgeExtraction {
        node: j,
        vertex,
        edge,
        vertex_basis,
        edge_basis,
        shared,
        generators: gens.len(),
    };
    Ok((gens, summary))
}

/// Reads a generating set of the level-`k` fusion ideal off the edges through the
/// identity vertex, then verifies it.
pub fn extract_presentation(rs: &RootSystem, k: i64, options: &ExtractOptions) -> Result<PresentationReport> {
    if k < 0 {
        return invalid("level must be nonnegative");
    }
    let n = rs.rank();
    let bound = options.bound.unwrap_or_else(|| default_bound(rs, k));
    let per_node = (1..=n)
        .into_par_iter()
        .map(|j| extract_node(rs, k, j, bound, options.shared_bases))
        .collect::<Result<Vec<_>>>()?;
    let mut gens = Vec::new();
    let mut edges = Vec::new();
    let mut generator_bound = 0u128;
    for (g, e) in per_node {
        generator_bound += rs.weyl_order() / crate::twisted_modules::subsystem(rs, &e.edge).weyl_order();
        for x in g {
            // relations equal up to sign add nothing to the ideal
            if !gens.iter().any(|y: &VirtualCharacter| *y == x || y.is_zero() || *y == -&x) {
                gens.push(x);
            }
        }
        edges.push(e);
    }
    let mut report = verify_presentation(rs, k, &gens, &options.primes)?;
    if gens.len() as u128 > generator_bound {
        report.verdict = "fail".to_string();
    }
    report.generator_bound = Some(generator_bound);
    report.truncation = Some(bound);
    report.extraction = Some(edges);
    Ok(report)
}
