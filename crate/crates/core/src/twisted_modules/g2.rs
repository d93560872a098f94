//! Explicit module bases for the faces of the `G2` alcove.

use serde::Serialize;

use super::{verify_module_basis, BasisReport, FaceSubset, LaurentPoly, TwistedModule};
use crate::error::{invalid, Result};
use crate::lie_core::{LieType, RootSystem, Series, Weight};
use crate::rep_ring::VirtualCharacter;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NamedBasis {
    pub name: &'static str,
    pub subset: FaceSubset,
    pub level: i64,
    pub basis: Vec<Weight>,
}

fn named(name: &'static str, nodes: &[usize], level: i64, basis: &[[i64; 2]]) -> NamedBasis {
    NamedBasis {
        name,
        subset: FaceSubset::new(2, nodes.iter().copied()).expect("G2 face"),
        level,
        basis: basis.iter().map(|w| Weight::from(*w)).collect(),
    }
}

/// Bases of the six face modules of `G2` that the presentation argument relies on.
pub fn g2_module_bases() -> Vec<NamedBasis> {
    vec![
        named(
            "T",
            &[],
            0,
            &[[0, 0], [0, 1], [0, 2], [1, 0], [1, 1], [1, 2], [2, -1], [2, 0], [2, 1], [3, -1], [3, 0], [3, 1]],
        ),
        named("U(2) short", &[1], 0, &[[0, 0], [0, 1], [0, 2], [1, 0], [1, 1], [1, 2]]),
        named("U(2) long", &[2], 0, &[[0, 0], [1, 0], [2, 0], [3, 0], [0, 1], [-2, 2]]),
        named("SU(3)", &[0, 2], 0, &[[0, 0], [-1, 0]]),
        named("SO(4) even", &[0, 1], 0, &[[0, 0], [1, -1], [0, -1]]),
        named("SO(4) odd", &[0, 1], 1, &[[0, 0], [1, 0], [1, -1]]),
    ]
}

fn require_g2(rs: &RootSystem) -> Result<()> {
    if rs.lie_type() != LieType::new(Series::G, 2)? {
        return invalid(format!("these bases are specific to G2, not {}", rs.lie_type()));
    }
    Ok(())
}

#[derive(Clone, Debug, Serialize)]
pub struct NamedBasisReport {
    pub name: &'static str,
    #[serde(flatten)]
    pub report: BasisReport,
}

pub fn check_g2_module_bases(rs: &RootSystem, bound: Option<i64>) -> Result<Vec<NamedBasisReport>> {
    require_g2(rs)?;
    g2_module_bases()
        .into_iter()
        .map(|b| {
            let report = verify_module_basis(rs, &b.subset, b.level, &b.basis, bound)?;
            Ok(NamedBasisReport { name: b.name, report })
        })
        .collect()
}

/// With `s` and `r` the level-one labels of the twisted vertex (long and short factor)
/// and `a` the seven-dimensional character, checks `a s = s^2 r + r^2 s - s` in the
/// weight lattice group ring.
pub fn g2_level_one_identity(rs: &RootSystem) -> Result<bool> {
    require_g2(rs)?;
    let m = TwistedModule::new(rs, FaceSubset::new(2, [0, 1])?, 1)?;
    let s = m.to_normalized_laurent(&m.label_element(&Weight::from([0, 0])));
    let r = m.to_normalized_laurent(&m.label_element(&Weight::from([1, 0])));
    let a = LaurentPoly::from_character(rs, &VirtualCharacter::irrep(Weight::from([1, 0])));
    let lhs = a.mul(&s);
    let rhs = s.mul(&s).mul(&r).add(&r.mul(&r).mul(&s)).sub(&s);
    Ok(lhs.sub(&rhs).is_zero())
}
