//! Root data attached to a Cartan matrix. Used for the simple group itself and
//! for the (possibly reducible) root subsystems generated by faces of the alcove.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, Zero};

use super::types::{Sign, Weight};

pub type Q = Ratio<i64>;

/// Weights and multiplicities of one irreducible representation.
#[derive(Debug, Clone)]
pub struct WeightSystem {
    pub highest: Weight,
    /// Dominant weights with their multiplicities.
    pub dominant: BTreeMap<Weight, u64>,
    /// Every weight with its multiplicity, sorted.
    pub weights: Vec<(Weight, u64)>,
}

impl WeightSystem {
    pub fn multiplicity_of_dominant(&self, mu: &Weight) -> u64 {
        self.dominant.get(mu).copied().unwrap_or(0)
    }

    pub fn dimension(&self) -> u64 {
        self.weights.iter().map(|(_, m)| m).sum()
    }
}

#[derive(Debug)]
pub struct CartanData {
    rank: usize,
    cartan: Vec<Vec<i64>>,
    half_norms: Vec<Q>,
    inverse: Vec<Vec<Q>>,
    form: Vec<Vec<Q>>,
    form_scaled: Vec<Vec<i64>>,
    form_scale: i64,
    positive_roots: Vec<Weight>,
    positive_root_coords: Vec<Vec<i64>>,
    cache: Mutex<HashMap<Weight, Arc<WeightSystem>>>,
}

pub(crate) fn invert(m: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m.to_vec();
    let mut inv: Vec<Vec<Q>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect())
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero()).expect("singular matrix");
        a.swap(col, piv);
        inv.swap(col, piv);
        let p = a[col][col];
        for j in 0..n {
            a[col][j] /= p;
            inv[col][j] /= p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                for j in 0..n {
                    let t = a[col][j];
                    a[r][j] -= f * t;
                    let t = inv[col][j];
                    inv[r][j] -= f * t;
                }
            }
        }
    }
    inv
}

pub(crate) fn determinant(m: &[Vec<Q>]) -> Q {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = Q::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Q::zero();
        };
        if piv != col {
            a.swap(col, piv);
            det = -det;
        }
        let p = a[col][col];
        det *= p;
        for r in col + 1..n {
            let f = a[r][col] / p;
            if !f.is_zero() {
                for j in col..n {
                    let t = a[col][j];
                    a[r][j] -= f * t;
                }
            }
        }
    }
    det
}

fn lcm(a: i64, b: i64) -> i64 {
    num_integer::lcm(a, b)
}

impl CartanData {
    /// Root data for an irreducible Cartan matrix; root lengths are normalized so
    /// that long roots have squared length 2.
    pub fn irreducible(cartan: Vec<Vec<i64>>) -> Self {
        let n = cartan.len();
        let mut d: Vec<Option<Q>> = vec![None; n];
        d[0] = Some(Q::one());
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            let di = d[i].unwrap();
            for j in 0..n {
                if i != j && cartan[i][j] != 0 && d[j].is_none() {
                    // a_ij d_j = a_ji d_i
                    d[j] = Some(di * Q::from(cartan[j][i]) / Q::from(cartan[i][j]));
                    queue.push_back(j);
                }
            }
        }
        let d: Vec<Q> = d.into_iter().map(|x| x.expect("connected diagram")).collect();
        let max = d.iter().copied().max().unwrap();
        let d = d.into_iter().map(|x| x / max).collect();
        Self::new(cartan, d)
    }

    /// Root data for a Cartan matrix together with the half squared lengths of its simple roots.
    pub fn new(cartan: Vec<Vec<i64>>, half_norms: Vec<Q>) -> Self {
        let rank = cartan.len();
        let aq: Vec<Vec<Q>> = cartan.iter().map(|r| r.iter().map(|&x| Q::from(x)).collect()).collect();
        let inverse = if rank == 0 { Vec::new() } else { invert(&aq) };
        let form: Vec<Vec<Q>> = (0..rank)
            .map(|i| (0..rank).map(|j| half_norms[i] * inverse[j][i]).collect())
            .collect();
        let scale = form.iter().flatten().fold(1i64, |acc, q| lcm(acc, *q.denom()));
        let form_scaled = form
            .iter()
            .map(|r| r.iter().map(|q| (q * Q::from(scale)).to_integer()).collect())
            .collect();
        let mut cd = CartanData {
            rank,
            cartan,
            half_norms,
            inverse,
            form,
            form_scaled,
            form_scale: scale,
            positive_roots: Vec::new(),
            positive_root_coords: Vec::new(),
            cache: Mutex::new(HashMap::new()),
        };
        cd.positive_root_coords = cd.compute_positive_root_coords();
        cd.positive_roots = cd.positive_root_coords.iter().map(|c| cd.from_root_coords(c)).collect();
        cd
    }

    fn compute_positive_root_coords(&self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let mut all: Vec<Vec<i64>> = Vec::new();
        let mut known: HashSet<Vec<i64>> = HashSet::new();
        let mut layer: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                let mut v = vec![0; n];
                v[i] = 1;
                v
            })
            .collect();
        while !layer.is_empty() {
            for r in &layer {
                known.insert(r.clone());
            }
            all.extend(layer.iter().cloned());
            let mut next: Vec<Vec<i64>> = Vec::new();
            let mut seen: HashSet<Vec<i64>> = HashSet::new();
            for beta in &layer {
                for i in 0..n {
                    // length of the i-string below beta
                    let mut p = 0;
                    let mut down = beta.clone();
                    loop {
                        down[i] -= 1;
                        if known.contains(&down) {
                            p += 1;
                        } else {
                            break;
                        }
                    }
                    let pairing: i64 = (0..n).map(|j| beta[j] * self.cartan[j][i]).sum();
                    if p - pairing > 0 {
                        let mut up = beta.clone();
                        up[i] += 1;
                        if seen.insert(up.clone()) {
                            next.push(up);
                        }
                    }
                }
            }
            next.sort();
            layer = next;
        }
        all
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn half_norms(&self) -> &[Q] {
        &self.half_norms
    }

    pub fn form(&self) -> &[Vec<Q>] {
        &self.form
    }

    pub fn positive_roots(&self) -> &[Weight] {
        &self.positive_roots
    }

    /// Positive roots in simple-root coordinates, in the same order as `positive_roots`.
    pub fn positive_root_coords(&self) -> &[Vec<i64>] {
        &self.positive_root_coords
    }

    pub fn simple_root(&self, i: usize) -> Weight {
        Weight(self.cartan[i].clone())
    }

    pub fn rho(&self) -> Weight {
        Weight(vec![1; self.rank])
    }

    pub fn from_root_coords(&self, c: &[i64]) -> Weight {
        let mut w = vec![0; self.rank];
        for (i, &ci) in c.iter().enumerate() {
            if ci != 0 {
                for j in 0..self.rank {
                    w[j] += ci * self.cartan[i][j];
                }
            }
        }
        Weight(w)
    }

    /// Simple-root coordinates of `x`, or `None` if `x` is not in the root lattice.
    pub fn root_coords(&self, x: &Weight) -> Option<Vec<i64>> {
        let mut out = Vec::with_capacity(self.rank);
        for i in 0..self.rank {
            let mut acc = Q::zero();
            for j in 0..self.rank {
                if x.0[j] != 0 {
                    acc += Q::from(x.0[j]) * self.inverse[j][i];
                }
            }
            if !acc.is_integer() {
                return None;
            }
            out.push(acc.to_integer());
        }
        Some(out)
    }

    fn root_coords_rational(&self, x: &Weight) -> Vec<Q> {
        (0..self.rank)
            .map(|i| (0..self.rank).map(|j| Q::from(x.0[j]) * self.inverse[j][i]).sum())
            .collect()
    }

    /// The common denominator used by `pairing_scaled`.
    pub fn form_scale(&self) -> i64 {
        self.form_scale
    }

    /// `form_scale() * F(x, y)`, an integer.
    pub fn pairing_scaled(&self, x: &Weight, y: &Weight) -> i64 {
        let mut s = 0i64;
        for i in 0..self.rank {
            if x.0[i] == 0 {
                continue;
            }
            let mut t = 0i64;
            for j in 0..self.rank {
                t += self.form_scaled[i][j] * y.0[j];
            }
            s += x.0[i] * t;
        }
        s
    }

    pub fn pairing(&self, x: &Weight, y: &Weight) -> Q {
        Q::new(self.pairing_scaled(x, y), self.form_scale())
    }

    pub fn reflect(&self, x: &Weight, i: usize) -> Weight {
        let c = x.0[i];
        if c == 0 {
            return x.clone();
        }
        Weight(x.0.iter().zip(&self.cartan[i]).map(|(a, b)| a - c * b).collect())
    }

    /// Dominant representative of the Weyl orbit of `x`, and the parity of the element used.
    pub fn to_dominant(&self, x: &Weight) -> (Weight, Sign) {
        let mut v = x.0.clone();
        let mut sign = Sign::Plus;
        while let Some(i) = v.iter().position(|&c| c < 0) {
            let c = v[i];
            for (a, b) in v.iter_mut().zip(&self.cartan[i]) {
                *a -= c * b;
            }
            sign = sign.flip();
        }
        (Weight(v), sign)
    }

    /// Dot-action reduction: `None` if `x + rho` is singular.
    pub fn shifted_reduce(&self, x: &Weight) -> Option<(Weight, Sign)> {
        let shifted = Weight(x.0.iter().map(|c| c + 1).collect());
        let (d, sign) = self.to_dominant(&shifted);
        if d.0.contains(&0) {
            return None;
        }
        Some((Weight(d.0.iter().map(|c| c - 1).collect()), sign))
    }

    pub fn orbit(&self, x: &Weight) -> Vec<Weight> {
        let mut seen: HashSet<Weight> = HashSet::from([x.clone()]);
        let mut queue = VecDeque::from([x.clone()]);
        while let Some(w) = queue.pop_front() {
            for i in 0..self.rank {
                if w.0[i] != 0 {
                    let r = self.reflect(&w, i);
                    if seen.insert(r.clone()) {
                        queue.push_back(r);
                    }
                }
            }
        }
        let mut out: Vec<Weight> = seen.into_iter().collect();
        out.sort();
        out
    }

    /// Connected components of the Dynkin diagram, each sorted.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.rank];
        let mut out = Vec::new();
        for start in 0..self.rank {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![start];
            comp[start] = id;
            let mut i = 0;
            while i < members.len() {
                let a = members[i];
                for b in 0..self.rank {
                    if self.cartan[a][b] != 0 && comp[b] == usize::MAX {
                        comp[b] = id;
                        members.push(b);
                    }
                }
                i += 1;
            }
            members.sort();
            out.push(members);
        }
        out
    }

    /// Order of the Weyl group, as a product over irreducible components of
    /// `r! * prod(marks) * det(cartan)`.
    pub fn weyl_order(&self) -> u128 {
        let mut order: u128 = 1;
        for comp in self.components() {
            let r = comp.len();
            let sub: Vec<Vec<Q>> = comp
                .iter()
                .map(|&i| comp.iter().map(|&j| Q::from(self.cartan[i][j])).collect())
                .collect();
            let det = determinant(&sub).to_integer().unsigned_abs() as u128;
            let highest = self
                .positive_root_coords
                .iter()
                .filter(|c| c.iter().enumerate().all(|(i, &x)| x == 0 || comp.contains(&i)))
                .max_by_key(|c| c.iter().sum::<i64>())
                .unwrap();
            let marks: u128 = comp.iter().map(|&i| highest[i] as u128).product();
            let fact: u128 = (1..=r as u128).product();
            order *= fact * marks * det;
        }
        order
    }

    /// Irreducible component types, e.g. `["A5", "A2"]`, sorted by series then decreasing rank.
    pub fn component_types(&self) -> Vec<(char, usize)> {
        let mut out = Vec::new();
        for comp in self.components() {
            let r = comp.len();
            let npos = self
                .positive_root_coords
                .iter()
                .filter(|c| c.iter().enumerate().all(|(i, &x)| x == 0 || comp.contains(&i)))
                .count();
            let lens: Vec<Q> = comp.iter().map(|&i| self.half_norms[i]).collect();
            let long = *lens.iter().max().unwrap();
            let short_count = lens.iter().filter(|&&l| l < long).count();
            let t = if short_count == 0 {
                if npos == r * (r + 1) / 2 {
                    ('A', r)
                } else if npos == r * (r - 1) {
                    ('D', r)
                } else {
                    ('E', r)
                }
            } else if r == 2 && npos == 6 {
                ('G', 2)
            } else if r == 4 && npos == 24 {
                ('F', 4)
            } else if r == 2 || short_count > 1 {
                ('C', r)
            } else {
                ('B', r)
            };
            out.push(t);
        }
        out.sort_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
        out
    }

    fn height_from(&self, top: &Weight, mu: &Weight) -> i64 {
        let diff = top - mu;
        let s: Q = self.root_coords_rational(&diff).into_iter().sum();
        s.to_integer()
    }

    /// Dominant weights of the irreducible representation with highest weight `top`.
    fn dominant_weights_below(&self, top: &Weight) -> Vec<Weight> {
        let mut seen: HashSet<Weight> = HashSet::from([top.clone()]);
        let mut queue = VecDeque::from([top.clone()]);
        while let Some(w) = queue.pop_front() {
            for a in &self.positive_roots {
                let v = &w - a;
                if v.is_dominant() && seen.insert(v.clone()) {
                    queue.push_back(v);
                }
            }
        }
        seen.into_iter().collect()
    }

    fn compute_weight_system(&self, top: &Weight) -> WeightSystem {
        let mut dom = self.dominant_weights_below(top);
        dom.sort_by_cached_key(|m| (self.height_from(top, m), m.clone()));
        let rho = self.rho();
        let top_rho = top + &rho;
        let top_norm = self.pairing_scaled(&top_rho, &top_rho) as i128;
        let mut mult: HashMap<Weight, u64> = HashMap::new();
        mult.insert(top.clone(), 1);
        for mu in dom.iter().skip(1) {
            let mut sum: i128 = 0;
            for a in &self.positive_roots {
                let mut nu = mu + a;
                loop {
                    let (d, _) = self.to_dominant(&nu);
                    match mult.get(&d) {
                        Some(&m) => sum += m as i128 * self.pairing_scaled(&nu, a) as i128,
                        None => break,
                    }
                    nu = &nu + a;
                }
            }
            let mu_rho = mu + &rho;
            let denom = top_norm - self.pairing_scaled(&mu_rho, &mu_rho) as i128;
            assert!(denom > 0, "Freudenthal denominator must be positive");
            let num = 2 * sum;
            assert_eq!(num % denom, 0, "Freudenthal recursion gave a non-integer");
            let m = u64::try_from(num / denom).expect("multiplicity overflow");
            mult.insert(mu.clone(), m);
        }
        let dominant: BTreeMap<Weight, u64> = dom.iter().map(|m| (m.clone(), mult[m])).collect();
        let mut weights = Vec::new();
        for (m, &c) in &dominant {
            for w in self.orbit(m) {
                weights.push((w, c));
            }
        }
        weights.sort();
        WeightSystem { highest: top.clone(), dominant, weights }
    }

    /// Memoized weight system of the irreducible representation with dominant highest weight `top`.
    pub fn weight_system(&self, top: &Weight) -> Arc<WeightSystem> {
        debug_assert!(top.is_dominant());
        if let Some(ws) = self.cache.lock().unwrap().get(top) {
            return Arc::clone(ws);
        }
        let ws = Arc::new(self.compute_weight_system(top));
        self.cache.lock().unwrap().insert(top.clone(), Arc::clone(&ws));
        ws
    }

    pub fn multiplicity(&self, top: &Weight, mu: &Weight) -> u64 {
        let ws = self.weight_system(top);
        if self.root_coords(&(top - mu)).is_none() {
            return 0;
        }
        let (d, _) = self.to_dominant(mu);
        ws.multiplicity_of_dominant(&d)
    }

    pub fn weyl_dimension(&self, top: &Weight) -> BigInt {
        let rho = self.rho();
        let shifted = top + &rho;
        let mut acc = BigRational::one();
        for a in &self.positive_roots {
            let num = self.pairing_scaled(&shifted, a);
            let den = self.pairing_scaled(&rho, a);
            acc *= BigRational::new(BigInt::from(num), BigInt::from(den));
        }
        assert!(acc.is_integer() && acc.is_positive());
        acc.to_integer()
    }

    /// Highest root of an irreducible system: the positive root of greatest height.
    pub fn highest_root_coords(&self) -> Vec<i64> {
        self.positive_root_coords
            .iter()
            .max_by_key(|c| c.iter().sum::<i64>())
            .cloned()
            .unwrap_or_default()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g2() -> CartanData {
        CartanData::irreducible(vec![vec![2, -1], vec![-3, 2]])
    }

    #[test]
    fn g2_roots_and_form() {
        let g = g2();
        assert_eq!(g.positive_roots().len(), 6);
        assert_eq!(g.highest_root_coords(), vec![3, 2]);
        assert_eq!(g.from_root_coords(&[3, 2]), Weight::from([0, 1]));
        assert_eq!(g.pairing(&Weight::from([0, 1]), &Weight::from([0, 1])), Q::from(2));
        assert_eq!(g.half_norms()[0], Q::new(1, 3));
        assert_eq!(g.weyl_order(), 12);
    }

    #[test]
    fn g2_adjoint_zero_weight_has_multiplicity_two() {
        let g = g2();
        assert_eq!(g.multiplicity(&Weight::from([0, 1]), &Weight::from([0, 0])), 2);
        assert_eq!(g.multiplicity(&Weight::from([1, 0]), &Weight::from([0, 0])), 1);
        assert_eq!(g.weight_system(&Weight::from([0, 1])).dimension(), 14);
        assert_eq!(g.weyl_dimension(&Weight::from([1, 0])), BigInt::from(7));
    }

    #[test]
    fn reducible_system() {
        // A1 x A1 with different root lengths
        let cd = CartanData::new(vec![vec![2, 0], vec![0, 2]], vec![Q::new(1, 3), Q::one()]);
        assert_eq!(cd.components().len(), 2);
        assert_eq!(cd.weyl_order(), 4);
        assert_eq!(cd.component_types(), vec![('A', 1), ('A', 1)]);
        assert_eq!(cd.weight_system(&Weight::from([1, 1])).dimension(), 4);
    }

    #[test]
    fn determinant_of_a2() {
        let a: Vec<Vec<Q>> = vec![vec![Q::from(2), Q::from(-1)], vec![Q::from(-1), Q::from(2)]];
        assert_eq!(determinant(&a), Q::from(3));
    }
}
