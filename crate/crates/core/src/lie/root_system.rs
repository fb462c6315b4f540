use std::collections::{HashSet, VecDeque};

use num_traits::{Signed, ToPrimitive, Zero};

use super::{LieType, Weight, WeylWord};
use crate::error::{Error, Result};
use crate::poly::RationalMatrix;
use crate::Q;

/// Finite root datum of a simple type.
///
/// Weights are in simple-root coordinates; the bilinear form is the
/// symmetrized Cartan form `(x, y) = sum_ij x_i d_i a_ij y_j`, scaled so
/// that long roots have squared length 2.
#[derive(Debug, Clone)]
pub struct RootSystem {
    lie_type: LieType,
    cartan: Vec<Vec<i64>>,
    symmetrizer: Vec<Q>,
    /// Nonzero entries `(j, (alpha_i, alpha_j))` of each row of the Gram matrix.
    gram: Vec<Vec<(usize, Q)>>,
    positive: Vec<Weight>,
    negative: Vec<Weight>,
    root_set: HashSet<Vec<i64>>,
    highest_root: Weight,
    long_roots: Vec<Weight>,
    xi: Vec<usize>,
}

impl RootSystem {
    pub fn new(lie_type: LieType) -> Result<Self> {
        Self::from_cartan(lie_type, lie_type.cartan_matrix())
    }

    /// Builds the root system from an explicit Cartan matrix, which may use
    /// any ordering of the simple roots of `lie_type`.
    pub fn from_cartan(lie_type: LieType, cartan: Vec<Vec<i64>>) -> Result<Self> {
        let rank = lie_type.rank();
        if cartan.len() != rank || cartan.iter().any(|r| r.len() != rank) {
            return Err(Error::RankMismatch {
                expected: rank,
                found: cartan.len(),
            });
        }
        let symmetrizer = symmetrize(&cartan)?;
        let gram: Vec<Vec<(usize, Q)>> = (0..rank)
            .map(|i| {
                (0..rank)
                    .filter(|&j| cartan[i][j] != 0)
                    .map(|j| (j, &symmetrizer[i] * Q::from_integer(cartan[i][j].into())))
                    .collect()
            })
            .collect();
        let positive_ints = close_under_reflections(&cartan);
        let top = positive_ints
            .last()
            .ok_or_else(|| Error::Internal("no positive roots".into()))?;
        let height = |v: &[i64]| v.iter().sum::<i64>();
        if positive_ints.len() > 1 && height(&positive_ints[positive_ints.len() - 2]) == height(top) {
            return Err(Error::Internal(format!(
                "{lie_type}: maximal root is not unique"
            )));
        }
        let highest = Weight::from_ints(top);

        // (x, x) = sum_i d_i x_i (Cx)_i, grouped by the distinct d_i
        let mut levels: Vec<(Q, Vec<usize>)> = Vec::new();
        for (i, d) in symmetrizer.iter().enumerate() {
            match levels.iter_mut().find(|(e, _)| e == d) {
                Some((_, idx)) => idx.push(i),
                None => levels.push((d.clone(), vec![i])),
            }
        }
        let two = Q::from_integer(2.into());
        let is_long = |v: &[i64]| -> bool {
            let norm: Q = levels
                .iter()
                .map(|(d, idx)| {
                    let t: i64 = idx
                        .iter()
                        .map(|&i| v[i] * cartan[i].iter().zip(v).map(|(a, x)| a * x).sum::<i64>())
                        .sum();
                    d * Q::from_integer(t.into())
                })
                .sum();
            norm == two
        };
        let long_positive: Vec<bool> = positive_ints.iter().map(|v| is_long(v)).collect();

        let positive: Vec<Weight> = positive_ints.iter().map(|v| Weight::from_ints(v)).collect();
        let negative: Vec<Weight> = positive.iter().map(|r| -r).collect();
        let long_roots: Vec<Weight> = positive
            .iter()
            .zip(&long_positive)
            .chain(negative.iter().zip(&long_positive))
            .filter(|(_, &l)| l)
            .map(|(r, _)| r.clone())
            .collect();
        let root_set: HashSet<Vec<i64>> = positive_ints
            .iter()
            .flat_map(|v| [v.clone(), v.iter().map(|x| -x).collect()])
            .collect();

        let mut rs = RootSystem {
            lie_type,
            cartan,
            symmetrizer,
            gram,
            positive,
            negative,
            root_set,
            highest_root: highest,
            long_roots,
            xi: Vec::new(),
        };
        let highest = &rs.highest_root;
        if (0..rank).any(|i| rs.pair_simple_coroot(highest, i).is_negative()) {
            return Err(Error::Internal(format!(
                "{lie_type}: highest root {highest} is not dominant"
            )));
        }
        if !long_positive.last().copied().unwrap_or(false) {
            return Err(Error::Internal("highest root is not long".into()));
        }
        rs.xi = (0..rank)
            .filter(|&i| rs.form(&rs.highest_root, &Weight::simple_root(rank, i)).is_zero())
            .collect();
        Ok(rs)
    }

    pub fn lie_type(&self) -> LieType {
        self.lie_type
    }

    pub fn rank(&self) -> usize {
        self.lie_type.rank()
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// `d_i` with `d_i a_ij = d_j a_ji`; equals half the squared length of
    /// `alpha_i`.
    pub fn symmetrizer(&self) -> &[Q] {
        &self.symmetrizer
    }

    pub fn positive_roots(&self) -> &[Weight] {
        &self.positive
    }

    pub fn negative_roots(&self) -> &[Weight] {
        &self.negative
    }

    /// Positive roots (by height) followed by their negatives.
    pub fn all_roots(&self) -> impl Iterator<Item = &Weight> {
        self.positive.iter().chain(&self.negative)
    }

    pub fn num_roots(&self) -> usize {
        self.positive.len() + self.negative.len()
    }

    pub fn is_root(&self, w: &Weight) -> bool {
        w.coords()
            .iter()
            .map(|c| if c.is_integer() { c.to_integer().to_i64() } else { None })
            .collect::<Option<Vec<i64>>>()
            .is_some_and(|v| self.root_set.contains(&v))
    }

    pub fn highest_root(&self) -> &Weight {
        &self.highest_root
    }

    pub fn long_roots(&self) -> &[Weight] {
        &self.long_roots
    }

    /// 0-based indices of the simple roots orthogonal to the highest root.
    pub fn xi(&self) -> &[usize] {
        &self.xi
    }

    pub fn simple_root(&self, i: usize) -> Weight {
        Weight::simple_root(self.rank(), i)
    }

    fn check_rank(&self, w: &Weight) -> Result<()> {
        if w.rank() != self.rank() {
            return Err(Error::RankMismatch {
                expected: self.rank(),
                found: w.rank(),
            });
        }
        Ok(())
    }

    pub fn inner_product(&self, x: &Weight, y: &Weight) -> Result<Q> {
        self.check_rank(x)?;
        self.check_rank(y)?;
        Ok(self.form(x, y))
    }

    // Callers guarantee matching ranks.
    pub(crate) fn form(&self, x: &Weight, y: &Weight) -> Q {
        let mut acc = Q::zero();
        for (i, xi) in x.coords().iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            let mut row = Q::zero();
            for (j, g) in &self.gram[i] {
                let yj = &y.coords()[*j];
                if !yj.is_zero() {
                    row += g * yj;
                }
            }
            acc += xi * row;
        }
        acc
    }

    /// The vector `Gx` with `(x, y) = sum_j (Gx)_j y_j`.
    pub(crate) fn gram_times(&self, x: &Weight) -> Vec<Q> {
        // the Gram matrix is symmetric
        self.gram
            .iter()
            .map(|row| {
                row.iter()
                    .filter(|(i, _)| !x.coords()[*i].is_zero())
                    .map(|(i, g)| g * &x.coords()[*i])
                    .sum()
            })
            .collect()
    }

    pub fn norm_sq(&self, x: &Weight) -> Q {
        self.form(x, x)
    }

    /// `<x, alpha_i^vee> = sum_j a_ij x_j`.
    pub fn pair_simple_coroot(&self, x: &Weight, i: usize) -> Q {
        x.coords()
            .iter()
            .zip(&self.cartan[i])
            .filter(|(_, a)| **a != 0)
            .map(|(c, &a)| c * Q::from_integer(a.into()))
            .sum()
    }

    /// `<x, beta^vee> = 2 (x, beta) / (beta, beta)`.
    pub fn pair_coroot(&self, x: &Weight, beta: &Weight) -> Result<Q> {
        self.check_rank(x)?;
        self.check_rank(beta)?;
        let nb = self.norm_sq(beta);
        if nb.is_zero() {
            return Err(Error::NotARoot(beta.to_string()));
        }
        Ok(self.form(x, beta) * Q::from_integer(2.into()) / nb)
    }

    fn simple_reflection_unchecked(&self, i: usize, x: &Weight) -> Weight {
        let c = self.pair_simple_coroot(x, i);
        if c.is_zero() {
            return x.clone();
        }
        let mut coords = x.coords().to_vec();
        coords[i] -= c;
        Weight::new(coords)
    }

    pub fn simple_reflection(&self, i: usize, x: &Weight) -> Result<Weight> {
        self.check_rank(x)?;
        if i >= self.rank() {
            return Err(Error::IndexOutOfRange {
                index: i,
                rank: self.rank(),
            });
        }
        Ok(self.simple_reflection_unchecked(i, x))
    }

    /// `s_beta(x) = x - <x, beta^vee> beta` for a root `beta`.
    pub fn reflect(&self, x: &Weight, beta: &Weight) -> Result<Weight> {
        self.check_rank(x)?;
        self.check_rank(beta)?;
        if !self.is_root(beta) {
            return Err(Error::NotARoot(beta.to_string()));
        }
        let c = self.pair_coroot(x, beta)?;
        Ok(x - &beta.scale(&c))
    }

    /// Applies `s_{i1} ... s_{ik}`, rightmost letter first.
    pub fn apply_word(&self, w: &WeylWord, x: &Weight) -> Result<Weight> {
        self.check_rank(x)?;
        if let Some(&bad) = w.letters().iter().find(|&&i| i >= self.rank()) {
            return Err(Error::IndexOutOfRange {
                index: bad,
                rank: self.rank(),
            });
        }
        Ok(w
            .letters()
            .iter()
            .rev()
            .fold(x.clone(), |acc, &i| self.simple_reflection_unchecked(i, &acc)))
    }

    /// Breadth-first closure of `{x}` under the simple reflections.
    pub fn weyl_orbit(&self, x: &Weight, cap: usize) -> Result<Vec<Weight>> {
        self.check_rank(x)?;
        let mut seen: HashSet<Weight> = HashSet::from([x.clone()]);
        let mut order = vec![x.clone()];
        let mut queue = VecDeque::from([x.clone()]);
        while let Some(cur) = queue.pop_front() {
            for i in 0..self.rank() {
                let next = self.simple_reflection_unchecked(i, &cur);
                if seen.insert(next.clone()) {
                    if order.len() >= cap {
                        return Err(Error::CapExceeded {
                            what: "Weyl orbit",
                            cap,
                        });
                    }
                    order.push(next.clone());
                    queue.push_back(next);
                }
            }
        }
        Ok(order)
    }

    /// Fundamental weights, solving `<w_i, alpha_j^vee> = delta_ij` with the
    /// inverse Cartan matrix.
    pub fn fundamental_weights(&self) -> Vec<Weight> {
        let a = RationalMatrix::from_int_rows(&self.cartan);
        let inv = a
            .inverse()
            .expect("Cartan matrices of simple types are invertible");
        (0..self.rank())
            .map(|i| Weight::new((0..self.rank()).map(|j| inv.get(j, i).clone()).collect()))
            .collect()
    }

    /// `Delta \ Delta_P` for the standard parabolic of `parabolic`: the
    /// negative roots not supported on `parabolic`.
    pub fn parabolic_complement(&self, parabolic: &[usize]) -> Vec<Weight> {
        self.negative
            .iter()
            .filter(|r| {
                r.coords()
                    .iter()
                    .enumerate()
                    .any(|(i, c)| !c.is_zero() && !parabolic.contains(&i))
            })
            .cloned()
            .collect()
    }

    pub(crate) fn check_parabolic(&self, parabolic: &[usize]) -> Result<Vec<usize>> {
        let mut p = parabolic.to_vec();
        p.sort_unstable();
        p.dedup();
        if let Some(&bad) = p.iter().find(|&&i| i >= self.rank()) {
            return Err(Error::IndexOutOfRange {
                index: bad,
                rank: self.rank(),
            });
        }
        Ok(p)
    }
}

fn symmetrize(cartan: &[Vec<i64>]) -> Result<Vec<Q>> {
    let n = cartan.len();
    let mut d: Vec<Option<Q>> = vec![None; n];
    d[0] = Some(Q::from_integer(1.into()));
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let di = d[i].clone().unwrap();
        for j in 0..n {
            if i != j && cartan[i][j] != 0 && d[j].is_none() {
                d[j] = Some(&di * Q::new(cartan[i][j].into(), cartan[j][i].into()));
                queue.push_back(j);
            }
        }
    }
    let d: Vec<Q> = d
        .into_iter()
        .collect::<Option<_>>()
        .ok_or_else(|| Error::Internal("Dynkin diagram is not connected".into()))?;
    for i in 0..n {
        for j in 0..n {
            let lhs = &d[i] * Q::from_integer(cartan[i][j].into());
            let rhs = &d[j] * Q::from_integer(cartan[j][i].into());
            if lhs != rhs {
                return Err(Error::Internal("Cartan matrix is not symmetrizable".into()));
            }
        }
    }
    let max = d.iter().max().cloned().unwrap();
    Ok(d.into_iter().map(|x| x / &max).collect())
}

/// Reflection closure of the simple roots, on integer coordinates.
/// Positive roots as integer vectors, by height and then reverse lex.
fn close_under_reflections(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = cartan.len();
    let neighbours: Vec<Vec<(usize, i64)>> = cartan
        .iter()
        .map(|row| row.iter().enumerate().filter(|(_, a)| **a != 0).map(|(j, a)| (j, *a)).collect())
        .collect();
    let reflect = |v: &[i64], i: usize| -> Vec<i64> {
        let c: i64 = neighbours[i].iter().map(|&(j, a)| a * v[j]).sum();
        let mut out = v.to_vec();
        out[i] -= c;
        out
    };
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut queue = VecDeque::new();
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = 1;
        seen.insert(e.clone());
        queue.push_back(e);
    }
    while let Some(v) = queue.pop_front() {
        for i in 0..n {
            let r = reflect(&v, i);
            if seen.insert(r.clone()) {
                queue.push_back(r);
            }
        }
    }
    let mut positive: Vec<Vec<i64>> = seen
        .into_iter()
        .filter(|v| v.iter().all(|&c| c >= 0))
        .collect();
    positive.sort_by(|a, b| {
        let ha: i64 = a.iter().sum();
        let hb: i64 = b.iter().sum();
        ha.cmp(&hb).then_with(|| b.cmp(a))
    });
    positive
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::Family;

    fn rs(s: &str) -> RootSystem {
        RootSystem::new(s.parse().unwrap()).unwrap()
    }

    fn q(n: i64, d: i64) -> Q {
        Q::new(n.into(), d.into())
    }

    #[test]
    fn a1_basics() {
        let a1 = rs("A1");
        assert_eq!(a1.num_roots(), 2);
        assert_eq!(a1.highest_root(), &Weight::from_ints(&[1]));
        assert!(a1.xi().is_empty());
        assert_eq!(a1.inner_product(&a1.simple_root(0), &a1.simple_root(0)).unwrap(), q(2, 1));
    }

    #[test]
    fn b2_basics() {
        let b2 = rs("B2");
        assert_eq!(b2.num_roots(), 8);
        assert_eq!(b2.long_roots().len(), 4);
        assert_eq!(b2.highest_root(), &Weight::from_ints(&[1, 2]));
        assert_eq!(b2.xi(), &[0]);
        let a1 = b2.simple_root(0);
        let a2 = b2.simple_root(1);
        assert_eq!(b2.inner_product(&a2, &a2).unwrap(), q(1, 1));
        assert_eq!(b2.inner_product(b2.highest_root(), &a1).unwrap(), q(0, 1));
    }

    #[test]
    fn g2_basics() {
        let g2 = rs("G2");
        assert_eq!(g2.num_roots(), 12);
        assert_eq!(g2.long_roots().len(), 6);
        assert_eq!(g2.highest_root(), &Weight::from_ints(&[3, 2]));
        // The simple root orthogonal to the highest root is the short one.
        assert_eq!(g2.xi(), &[0]);
        assert_eq!(g2.norm_sq(&g2.simple_root(0)), q(2, 3));
    }

    #[test]
    fn known_root_counts() {
        let expected = [
            ("A3", 12),
            ("B3", 18),
            ("C3", 18),
            ("D4", 24),
            ("E6", 72),
            ("E7", 126),
            ("E8", 240),
            ("F4", 48),
        ];
        for (name, n) in expected {
            assert_eq!(rs(name).num_roots(), n, "{name}");
        }
    }

    #[test]
    fn reflection_examples() {
        let b2 = rs("B2");
        let beta = Weight::from_ints(&[1, 1]);
        assert_eq!(b2.reflect(&beta, &beta).unwrap(), -&beta);
        // (1,2) is orthogonal to alpha_1
        let perp = Weight::from_ints(&[1, 2]);
        let a1 = b2.simple_root(0);
        assert_eq!(b2.reflect(&perp, &a1).unwrap(), perp);
        assert!(matches!(
            b2.reflect(&perp, &Weight::from_ints(&[2, 2])),
            Err(Error::NotARoot(_))
        ));
        assert!(matches!(
            b2.reflect(&Weight::zero(3), &a1),
            Err(Error::RankMismatch { .. })
        ));
    }

    #[test]
    fn apply_word_examples() {
        let a2 = rs("A2");
        let a1 = a2.simple_root(0);
        assert_eq!(a2.apply_word(&WeylWord::identity(), &a1).unwrap(), a1);
        assert_eq!(a2.apply_word(&WeylWord::new(vec![0]), &a1).unwrap(), -&a1);
        // s1 s2 (alpha_1) = s1(alpha_1 + alpha_2) = alpha_2
        assert_eq!(
            a2.apply_word(&WeylWord::new(vec![0, 1]), &a1).unwrap(),
            a2.simple_root(1)
        );
        assert!(matches!(
            a2.apply_word(&WeylWord::new(vec![2]), &a1),
            Err(Error::IndexOutOfRange { index: 2, rank: 2 })
        ));
    }

    #[test]
    fn fundamental_weights_examples() {
        let a1 = rs("A1");
        assert_eq!(a1.fundamental_weights()[0], Weight::new(vec![q(1, 2)]));
        let a2 = rs("A2");
        assert_eq!(a2.fundamental_weights()[0], Weight::new(vec![q(2, 3), q(1, 3)]));
        for t in LieType::all_up_to_rank(8) {
            let r = RootSystem::new(t).unwrap();
            for (i, w) in r.fundamental_weights().iter().enumerate() {
                for j in 0..r.rank() {
                    let expect = if i == j { q(1, 1) } else { q(0, 1) };
                    assert_eq!(r.pair_simple_coroot(w, j), expect, "{t}");
                }
            }
        }
    }

    #[test]
    fn orbits() {
        let g2 = rs("G2");
        assert_eq!(g2.weyl_orbit(&Weight::zero(2), 10).unwrap().len(), 1);
        let orbit: HashSet<Weight> = g2.weyl_orbit(g2.highest_root(), 100).unwrap().into_iter().collect();
        let long: HashSet<Weight> = g2.long_roots().iter().cloned().collect();
        assert_eq!(orbit, long);
        let b2 = rs("B2");
        assert_eq!(b2.weyl_orbit(b2.highest_root(), 100).unwrap().len(), 4);
        assert!(matches!(
            g2.weyl_orbit(g2.highest_root(), 3),
            Err(Error::CapExceeded { cap: 3, .. })
        ));
    }

    #[test]
    fn symmetrizer_normalization() {
        let c3 = rs("C3");
        assert_eq!(c3.symmetrizer(), &[q(1, 2), q(1, 2), q(1, 1)]);
        let f4 = RootSystem::new(LieType::new(Family::F, 4).unwrap()).unwrap();
        assert_eq!(f4.symmetrizer(), &[q(1, 1), q(1, 1), q(1, 2), q(1, 2)]);
    }

    #[test]
    fn xi_and_parabolic_complement_agree() {
        for t in LieType::all_up_to_rank(8) {
            let r = RootSystem::new(t).unwrap();
            let comp = r.parabolic_complement(r.xi());
            let non_orth: Vec<Weight> = r
                .negative_roots()
                .iter()
                .filter(|b| !r.form(r.highest_root(), b).is_zero())
                .cloned()
                .collect();
            assert_eq!(comp, non_orth, "{t}");
        }
    }
}
