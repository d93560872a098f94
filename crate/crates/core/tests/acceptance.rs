//! One pass/fail line per acceptance criterion. Exits nonzero if any fails.

use std::time::Instant;

use fusion_ideal::fusion_oracle::{fusion_table, verlinde_numeric_check};
use fusion_ideal::lie_core::{build_root_system, RootSystem};
use fusion_ideal::resolution::{
    build_complex, cokernel_vs_oracle, d_squared_check, extract_presentation, g2_theorem_generators, verify_presentation,
    Codimension, ExtractOptions, DEFAULT_PRIMES,
};
use fusion_ideal::twisted_modules::{census, check_g2_module_bases, g2_level_one_identity, subsystem, FaceSubset};
use fusion_ideal::Result;

fn rs(name: &str) -> RootSystem {
    build_root_system(name.parse().expect("group name"))
}

/// `Ok(detail)` on success, `Err(reason)` on a failed check.
type Check = std::result::Result<String, String>;

fn lift(r: Result<Check>) -> Check {
    r.unwrap_or_else(|e| Err(format!("error: {e}")))
}

fn g2_theorem() -> Result<Check> {
    let g2 = rs("G2");
    let expected = [2, 4, 6, 9, 12, 16, 20, 25];
    for k in 1..=8 {
        let r = verify_presentation(&g2, k, &g2_theorem_generators(k)?, &DEFAULT_PRIMES)?;
        let want = Codimension::Finite(expected[k as usize - 1]);
        if !r.passed() || r.codim_Q != want || r.codim_Fp.values().any(|c| *c != want) {
            return Ok(Err(format!("k={k}: membership {:?}, codim Q {:?}, Fp {:?}", r.membership, r.codim_Q, r.codim_Fp)));
        }
    }
    Ok(Ok(format!("k=1..8 codimensions {expected:?} over Q and {} primes", DEFAULT_PRIMES.len())))
}

fn census_reproduction() -> Check {
    for name in ["A1", "A2", "A3", "A5", "A8", "C2", "C3", "C4", "C6"] {
        if !census(&rs(name)).entries.is_empty() {
            return Err(format!("{name} has twisted modules"));
        }
    }
    let e7 = census(&rs("E7"));
    let e7_counts = (e7.count(2).total, e7.count(3).total, e7.count(4).total);
    if e7_counts != (14, 3, 1) {
        return Err(format!("E7 order 2/3/4 totals {e7_counts:?}"));
    }
    let types = |r: &fusion_ideal::twisted_modules::CensusReport, order: i64| {
        r.groups
            .iter()
            .filter(|g| g.twist_order == order)
            .map(|g| (g.centralizer_type.clone(), g.count))
            .collect::<Vec<_>>()
    };
    if types(&e7, 3) != vec![("A2+A2+A2".to_string(), 1), ("A5+A2".to_string(), 2)]
        || types(&e7, 4) != vec![("A3+A3+A1".to_string(), 1)]
    {
        return Err(format!("E7 higher-order types {:?} {:?}", types(&e7, 3), types(&e7, 4)));
    }
    let e8 = census(&rs("E8"));
    if e8.count(2).non_vertex != 25 {
        return Err(format!("E8 non-vertex order 2 count {}", e8.count(2).non_vertex));
    }
    let g2 = census(&rs("G2"));
    let so4 = FaceSubset::new(2, [0, 1]).expect("face");
    if g2.entries.len() != 1 || g2.entries[0].subset != so4 || g2.entries[0].twist_order != 2 {
        return Err(format!("G2 census {:?}", g2.entries));
    }
    Ok("A, C empty; E7 14/3/1; E8 25 non-vertex order 2; G2 single SO(4) vertex".to_string())
}

fn resolution_health() -> Result<Check> {
    let g2 = rs("G2");
    for k in 0..=4 {
        let c = build_complex(&g2, k)?;
        if c.ranks != vec![6, 18, 12] || c.euler_characteristic != 0 {
            return Ok(Err(format!("k={k}: ranks {:?} euler {}", c.ranks, c.euler_characteristic)));
        }
        let dd = d_squared_check(&g2, k, None)?;
        if !dd.passed {
            return Ok(Err(format!("k={k}: d1 d1 {:?}", dd.violations)));
        }
        let coker = cokernel_vs_oracle(&g2, k, None)?;
        if !coker.passed {
            return Ok(Err(format!("k={k}: cokernel {} vs oracle {}: {:?}", coker.cokernel_rank, coker.oracle_rank, coker.violations)));
        }
    }
    Ok(Ok("G2 k=0..4: ranks (6,18,12), euler 0, d1 d1 = 0, cokernel ranks match".to_string()))
}

fn basis_lemma() -> Result<Check> {
    let g2 = rs("G2");
    let reports = check_g2_module_bases(&g2, None)?;
    let ranks: Vec<u128> = reports.iter().map(|r| r.report.module_rank).collect();
    if ranks != vec![12, 6, 6, 2, 3, 3] {
        return Ok(Err(format!("module ranks {ranks:?}")));
    }
    if let Some(bad) = reports.iter().find(|r| !r.report.passed) {
        return Ok(Err(format!("{}: {:?}", bad.name, bad.report.failure)));
    }
    if !g2_level_one_identity(&g2)? {
        return Ok(Err("as = s^2 r + r^2 s - s fails".to_string()));
    }
    Ok(Ok("six bases span with ranks 12,6,6,2,3,3; identity holds".to_string()))
}

fn oracle_consistency() -> Result<Check> {
    let mut worst: f64 = 0.0;
    for name in ["G2", "A2", "C2"] {
        let g = rs(name);
        for k in 0..=3 {
            let axioms = fusion_table(&g, k)?.check_ring_axioms();
            if !axioms.passed() {
                return Ok(Err(format!("{name} k={k}: {axioms:?}")));
            }
            let v = verlinde_numeric_check(&g, k, 1e-6)?;
            if !v.passed {
                return Ok(Err(format!("{name} k={k}: Verlinde deviation {:e}", v.max_deviation)));
            }
            worst = worst.max(v.max_deviation);
        }
    }
    Ok(Ok(format!("G2, A2, C2 at k=0..3; max Verlinde deviation {worst:.1e}")))
}

fn finiteness() -> Result<Check> {
    for (name, levels) in [("A1", 0..=10), ("G2", 0..=4)] {
        let g = rs(name);
        let bound: u128 = (1..=g.rank())
            .map(|j| {
                let edge = FaceSubset::new(g.rank(), (1..=g.rank()).filter(|&i| i != j)).expect("face");
                g.weyl_order() / subsystem(&g, &edge).weyl_order()
            })
            .sum();
        for k in levels {
            let r = extract_presentation(&g, k, &ExtractOptions::default())?;
            if !r.passed() || r.generators.len() as u128 > bound || !r.membership.iter().all(|&m| m) {
                return Ok(Err(format!(
                    "{name} k={k}: {} generators (bound {bound}), codim Q {:?}, verdict {}",
                    r.generators.len(),
                    r.codim_Q,
                    r.verdict
                )));
            }
        }
    }
    Ok(Ok("A1 k=0..10 and G2 k=0..4 extracted and verified within the generator bound".to_string()))
}

type Criterion = (&'static str, Box<dyn Fn() -> Check>);

fn main() {
    let criteria: Vec<Criterion> = vec![
        ("G2 theorem reproduction", Box::new(|| lift(g2_theorem()))),
        ("census reproduction", Box::new(census_reproduction)),
        ("resolution health", Box::new(|| lift(resolution_health()))),
        ("basis lemma", Box::new(|| lift(basis_lemma()))),
        ("oracle self-consistency", Box::new(|| lift(oracle_consistency()))),
        ("finiteness at desk scale", Box::new(|| lift(finiteness()))),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS {name} ({detail}) [{secs:.1}s]", i + 1),
            Err(reason) => {
                failed += 1;
                println!("criterion {}: FAIL {name} ({reason}) [{secs:.1}s]", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
