use std::sync::Arc;

use num_bigint::BigInt;

use super::cartan::{CartanData, WeightSystem, Q};
use super::types::{LieType, Series, Sign, Weight};
use crate::error::{invalid, Result};

/// Cartan matrix in Bourbaki numbering, with entry `[i][j] = <alpha_i, alpha_j^vee>`.
pub fn cartan_matrix(t: LieType) -> Vec<Vec<i64>> {
    let n = t.rank();
    let mut a = vec![vec![0i64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize| {
        a[i][j] = -1;
        a[j][i] = -1;
    };
    match t.series() {
        Series::A | Series::B | Series::C => {
            for i in 0..n - 1 {
                link(i, i + 1);
            }
        }
        Series::D => {
            for i in 0..n - 2 {
                link(i, i + 1);
            }
            link(n - 3, n - 1);
        }
        Series::E => {
            link(0, 2);
            link(1, 3);
            for i in 2..n - 1 {
                link(i, i + 1);
            }
        }
        Series::F => {
            link(0, 1);
            link(1, 2);
            link(2, 3);
        }
        Series::G => link(0, 1),
    }
    match t.series() {
        // alpha_n short
        Series::B => a[n - 2][n - 1] = -2,
        // alpha_n long
        Series::C => a[n - 1][n - 2] = -2,
        Series::F => a[1][2] = -2,
        Series::G => a[1][0] = -3,
        _ => {}
    }
    a
}

/// Weyl group order from the closed formula of each series.
pub fn weyl_order_formula(t: LieType) -> u128 {
    let n = t.rank() as u128;
    let fact = |m: u128| (1..=m).product::<u128>();
    match t.series() {
        Series::A => fact(n + 1),
        Series::B | Series::C => (1u128 << n) * fact(n),
        Series::D => (1u128 << (n - 1)) * fact(n),
        Series::E => match n {
            6 => 51_840,
            7 => 2_903_040,
            _ => 696_729_600,
        },
        Series::F => 1152,
        Series::G => 12,
    }
}

/// Cartan, Weyl and alcove data of one simple Lie type.
///
/// Affine node indices run `0..=rank`, with `0` the affine node; nonaffine node
/// `i` corresponds to Dynkin coordinate `i - 1`.
#[derive(Debug)]
pub struct RootSystem {
    lie_type: LieType,
    data: CartanData,
    highest_root: Weight,
    marks: Vec<i64>,
    comarks: Vec<i64>,
    dual_coxeter: i64,
    weyl_order: u128,
}

impl RootSystem {
    pub fn new(t: LieType) -> Self {
        let data = CartanData::irreducible(cartan_matrix(t));
        let theta_coords = data.highest_root_coords();
        let highest_root = data.from_root_coords(&theta_coords);
        let mut marks = vec![1];
        marks.extend(theta_coords.iter().copied());
        let mut comarks = vec![1];
        for (i, &m) in theta_coords.iter().enumerate() {
            // long roots have half norm 1
            let c = Q::from(m) * data.half_norms()[i];
            assert!(c.is_integer());
            comarks.push(c.to_integer());
        }
        let dual_coxeter = comarks.iter().sum();
        let weyl_order = data.weyl_order();
        RootSystem { lie_type: t, data, highest_root, marks, comarks, dual_coxeter, weyl_order }
    }

    pub fn lie_type(&self) -> LieType {
        self.lie_type
    }

    pub fn rank(&self) -> usize {
        self.data.rank()
    }

    pub fn data(&self) -> &CartanData {
        &self.data
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        self.data.cartan()
    }

    pub fn simple_roots(&self) -> Vec<Weight> {
        (0..self.rank()).map(|i| self.data.simple_root(i)).collect()
    }

    pub fn positive_roots(&self) -> &[Weight] {
        self.data.positive_roots()
    }

    pub fn rho(&self) -> Weight {
        self.data.rho()
    }

    pub fn highest_root(&self) -> &Weight {
        &self.highest_root
    }

    /// `alpha_0 = -theta`.
    pub fn affine_root(&self) -> Weight {
        -&self.highest_root
    }

    /// Marks indexed by affine node, `marks[0] = 1`.
    pub fn marks(&self) -> &[i64] {
        &self.marks
    }

    /// Comarks (dual Coxeter labels) indexed by affine node, `comarks[0] = 1`.
    pub fn comarks(&self) -> &[i64] {
        &self.comarks
    }

    pub fn dual_coxeter(&self) -> i64 {
        self.dual_coxeter
    }

    pub fn form(&self) -> &[Vec<Q>] {
        self.data.form()
    }

    pub fn weyl_order(&self) -> u128 {
        self.weyl_order
    }

    /// Simple affine root for node `i`, as a weight.
    pub fn affine_simple_root(&self, i: usize) -> Weight {
        if i == 0 {
            self.affine_root()
        } else {
            self.data.simple_root(i - 1)
        }
    }

    /// Half squared length of the simple affine root at node `i`.
    pub fn affine_half_norm(&self, i: usize) -> Q {
        if i == 0 {
            Q::from(1)
        } else {
            self.data.half_norms()[i - 1]
        }
    }

    /// `<w, alpha_i^vee>` for an affine node `i`; for `i = 0` this is `-level(w)`.
    pub fn coroot_pairing(&self, w: &Weight, i: usize) -> i64 {
        if i == 0 {
            -self.level(w)
        } else {
            w.0[i - 1]
        }
    }

    /// Level of a weight: `sum_i comark_i * w_i` over the nonaffine nodes.
    pub fn level(&self, w: &Weight) -> i64 {
        w.0.iter().zip(&self.comarks[1..]).map(|(a, b)| a * b).sum()
    }

    pub fn pairing(&self, x: &Weight, y: &Weight) -> Q {
        self.data.pairing(x, y)
    }

    pub fn weyl_orbit(&self, w: &Weight) -> Vec<Weight> {
        self.data.orbit(w)
    }

    pub fn to_dominant(&self, w: &Weight) -> (Weight, Sign) {
        self.data.to_dominant(w)
    }

    /// `None` when `w + rho` is singular, otherwise the dominant weight in the dot-orbit and the sign.
    pub fn shifted_dominant_reduce(&self, w: &Weight) -> Option<(Weight, Sign)> {
        self.data.shifted_reduce(w)
    }

    /// Dominant weights of level at most `k`, in lexicographic order.
    pub fn alcove_weights(&self, k: i64) -> Vec<Weight> {
        let mut out = Vec::new();
        let n = self.rank();
        let mut cur = vec![0i64; n];
        self.alcove_rec(0, k, &mut cur, &mut out);
        out
    }

    fn alcove_rec(&self, i: usize, budget: i64, cur: &mut Vec<i64>, out: &mut Vec<Weight>) {
        if i == cur.len() {
            out.push(Weight(cur.clone()));
            return;
        }
        let c = self.comarks[i + 1];
        let mut v = 0;
        while v * c <= budget {
            cur[i] = v;
            self.alcove_rec(i + 1, budget - v * c, cur, out);
            v += 1;
        }
        cur[i] = 0;
    }

    /// Dominant weights of level at most `k`, in increasing level order.
    pub fn dominant_weights_by_level(&self, k: i64) -> Vec<Weight> {
        let mut ws = self.alcove_weights(k);
        ws.sort_by_cached_key(|w| (self.level(w), w.clone()));
        ws
    }

    pub fn weight_system(&self, highest: &Weight) -> Result<Arc<WeightSystem>> {
        self.check_rank(highest)?;
        if !highest.is_dominant() {
            return invalid(format!("highest weight {highest} is not dominant"));
        }
        Ok(self.data.weight_system(highest))
    }

    pub fn weight_multiplicity(&self, highest: &Weight, mu: &Weight) -> Result<u64> {
        self.check_rank(mu)?;
        self.weight_system(highest)?;
        Ok(self.data.multiplicity(highest, mu))
    }

    pub fn weyl_dimension(&self, highest: &Weight) -> Result<BigInt> {
        self.check_rank(highest)?;
        if !highest.is_dominant() {
            return invalid(format!("highest weight {highest} is not dominant"));
        }
        Ok(self.data.weyl_dimension(highest))
    }

    pub fn check_rank(&self, w: &Weight) -> Result<()> {
        if w.rank() != self.rank() {
            return invalid(format!("weight {w} has length {} but the rank is {}", w.rank(), self.rank()));
        }
        Ok(())
    }
}

pub fn build_root_system(t: LieType) -> RootSystem {
    RootSystem::new(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(s: &str) -> RootSystem {
        RootSystem::new(s.parse().unwrap())
    }

    #[test]
    fn g2_data() {
        let g = rs("G2");
        assert_eq!(g.comarks(), &[1, 1, 2]);
        assert_eq!(g.marks(), &[1, 3, 2]);
        assert_eq!(g.dual_coxeter(), 4);
        assert_eq!(g.highest_root(), &Weight::from([0, 1]));
        assert_eq!(g.simple_roots(), vec![Weight::from([2, -1]), Weight::from([-3, 2])]);
        assert_eq!(g.weyl_order(), 12);
    }

    #[test]
    fn e8_comarks() {
        let e = rs("E8");
        assert_eq!(e.comarks(), &[1, 2, 3, 4, 6, 5, 4, 3, 2]);
        assert_eq!(e.dual_coxeter(), 30);
        assert_eq!(e.positive_roots().len(), 120);
    }

    #[test]
    fn e7_and_f4_comarks() {
        assert_eq!(rs("E7").comarks(), &[1, 2, 2, 3, 4, 3, 2, 1]);
        assert_eq!(rs("F4").comarks(), &[1, 2, 3, 2, 1]);
        assert_eq!(rs("F4").dual_coxeter(), 9);
        assert_eq!(rs("E6").dual_coxeter(), 12);
        assert_eq!(rs("E7").dual_coxeter(), 18);
    }

    #[test]
    fn classical_comarks() {
        assert!(rs("A4").comarks().iter().all(|&c| c == 1));
        assert!(rs("C3").comarks().iter().all(|&c| c == 1));
        assert_eq!(rs("B3").comarks(), &[1, 1, 2, 1]);
        assert_eq!(rs("D5").comarks(), &[1, 1, 2, 2, 1, 1]);
        assert_eq!(rs("B3").dual_coxeter(), 5);
        assert_eq!(rs("C3").dual_coxeter(), 4);
    }

    #[test]
    fn orbits() {
        let g = rs("G2");
        assert_eq!(g.weyl_orbit(&Weight::from([0, 0])), vec![Weight::from([0, 0])]);
        assert_eq!(g.weyl_orbit(&Weight::from([1, 0])).len(), 6);
        let a1 = rs("A1");
        assert_eq!(a1.weyl_orbit(&Weight::from([3])), vec![Weight::from([-3]), Weight::from([3])]);
    }

    #[test]
    fn shifted_reduce_examples() {
        let a1 = rs("A1");
        assert_eq!(a1.shifted_dominant_reduce(&Weight::from([-1])), None);
        assert_eq!(a1.shifted_dominant_reduce(&Weight::from([-2])), Some((Weight::from([0]), Sign::Minus)));
        let g = rs("G2");
        let w = Weight::from([2, 1]);
        assert_eq!(g.shifted_dominant_reduce(&w), Some((w, Sign::Plus)));
    }

    #[test]
    fn alcoves() {
        let g = rs("G2");
        assert_eq!(g.alcove_weights(0), vec![Weight::from([0, 0])]);
        assert_eq!(g.alcove_weights(1), vec![Weight::from([0, 0]), Weight::from([1, 0])]);
        assert_eq!(g.alcove_weights(4).len(), 9);
    }

    #[test]
    fn multiplicities_and_dimensions() {
        let g = rs("G2");
        assert_eq!(g.weight_multiplicity(&Weight::from([0, 1]), &Weight::from([0, 0])).unwrap(), 2);
        assert_eq!(g.weight_multiplicity(&Weight::from([1, 1]), &Weight::from([1, 1])).unwrap(), 1);
        assert!(g.weight_multiplicity(&Weight::from([-1, 1]), &Weight::from([0, 0])).is_err());
        let a2 = rs("A2");
        // (1,0) - (0,0) is not in the root lattice
        assert_eq!(a2.weight_multiplicity(&Weight::from([1, 0]), &Weight::from([0, 0])).unwrap(), 0);
        assert_eq!(g.weyl_dimension(&Weight::from([0, 0])).unwrap(), BigInt::from(1));
        assert_eq!(g.weyl_dimension(&Weight::from([1, 0])).unwrap(), BigInt::from(7));
        assert_eq!(g.weyl_dimension(&Weight::from([0, 1])).unwrap(), BigInt::from(14));
        assert!(g.weyl_dimension(&Weight::from([0, -1])).is_err());
    }
}
