use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::{subsystem, FaceSubset};
use crate::error::{invalid, Result};
use crate::lie_core::{LieType, RootSystem};

/// gcd of the comarks over the nodes outside `S`.
pub fn twist_order(rs: &RootSystem, s: &FaceSubset) -> Result<i64> {
    let comp = s.complement(rs.rank());
    if comp.is_empty() {
        return invalid("the full affine diagram does not index a face");
    }
    if s.nodes().iter().any(|&i| i > rs.rank()) {
        return invalid(format!("subset {s} out of range"));
    }
    Ok(comp.iter().fold(0, |g, &i| num_integer::gcd(g, rs.comarks()[i])))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CentralizerInfo {
    pub subset: FaceSubset,
    pub centralizer_type: String,
    pub weyl_order: u128,
    pub module_rank: u128,
    pub twist_order: i64,
}

fn type_name(rs: &RootSystem, s: &FaceSubset) -> String {
    let parts = subsystem(rs, s).component_types();
    if parts.is_empty() {
        return "T".to_string();
    }
    parts
        .iter()
        .map(|(c, r)| format!("{c}{r}"))
        .collect::<Vec<_>>()
        .join("+")
}

pub fn centralizer_info(rs: &RootSystem, s: &FaceSubset) -> Result<CentralizerInfo> {
    let twist = twist_order(rs, s)?;
    let weyl_order = subsystem(rs, s).weyl_order();
    Ok(CentralizerInfo {
        subset: s.clone(),
        centralizer_type: type_name(rs, s),
        weyl_order,
        module_rank: rs.weyl_order() / weyl_order,
        twist_order: twist,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusEntry {
    pub subset: FaceSubset,
    pub centralizer_type: String,
    pub twist_order: i64,
    pub module_rank: u128,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CensusCount {
    /// Twisted modules of this order.
    pub total: usize,
    /// Of which attached to a vertex of the alcove.
    pub vertices: usize,
    pub non_vertex: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusGroup {
    pub centralizer_type: String,
    pub twist_order: i64,
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    pub group: LieType,
    pub entries: Vec<CensusEntry>,
    /// Keyed by twist order.
    pub counts: BTreeMap<i64, CensusCount>,
    pub groups: Vec<CensusGroup>,
}

impl CensusReport {
    pub fn count(&self, order: i64) -> CensusCount {
        self.counts.get(&order).cloned().unwrap_or_default()
    }
}

/// Every proper face whose module is twisted, i.e. has twist order above one.
pub fn census(rs: &RootSystem) -> CensusReport {
    let n = rs.rank();
    let subsets: Vec<FaceSubset> = (0..=n).flat_map(|size| FaceSubset::all_of_size(n, size)).collect();
    let mut entries: Vec<CensusEntry> = subsets
        .par_iter()
        .filter_map(|s| {
            let info = centralizer_info(rs, s).expect("proper subset");
            (info.twist_order > 1).then_some(CensusEntry {
                subset: info.subset,
                centralizer_type: info.centralizer_type,
                twist_order: info.twist_order,
                module_rank: info.module_rank,
            })
        })
        .collect();
    entries.sort_by(|a, b| a.twist_order.cmp(&b.twist_order).then_with(|| a.subset.cmp(&b.subset)));
    let mut counts: BTreeMap<i64, CensusCount> = BTreeMap::new();
    let mut groups: BTreeMap<(i64, String), usize> = BTreeMap::new();
    for e in &entries {
        let c = counts.entry(e.twist_order).or_default();
        c.total += 1;
        if e.subset.len() == n {
            c.vertices += 1;
        } else {
            c.non_vertex += 1;
        }
        *groups.entry((e.twist_order, e.centralizer_type.clone())).or_default() += 1;
    }
    let groups = groups
        .into_iter()
        .map(|((twist_order, centralizer_type), count)| CensusGroup { centralizer_type, twist_order, count })
        .collect();
    CensusReport { group: rs.lie_type(), entries, counts, groups }
}
