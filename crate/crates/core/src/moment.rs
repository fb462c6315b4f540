//! T-fixed points of `P(Theta_min)` and the moment polytope.
//!
//! The fixed points are the root lines `g_gamma` for long roots `gamma`, and
//! the moment map sends `g_gamma` to `gamma`, so the polytope is the convex
//! hull of the long roots.

use std::collections::{BTreeSet, HashMap, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lie::{RootSystem, Weight};
use crate::Q;

/// Long roots, each standing for the fixed point `g_gamma`.
pub fn projective_fixed_points(rs: &RootSystem) -> Vec<Weight> {
    rs.long_roots().to_vec()
}

/// Convex polytope given by its vertex list, every vertex certified extreme.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polytope {
    pub rank: usize,
    pub vertices: Vec<Weight>,
}

impl Polytope {
    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_closed_under_negation(&self) -> bool {
        let set: BTreeSet<&Weight> = self.vertices.iter().collect();
        let neg: Vec<Weight> = self.vertices.iter().map(|v| -v).collect();
        neg.iter().all(|v| set.contains(v))
    }

    /// All values `(u, v)` over pairs of vertices, including `u = v`.
    pub fn inner_product_spectrum(&self, rs: &RootSystem) -> BTreeSet<Q> {
        let mut out = BTreeSet::new();
        for u in &self.vertices {
            for v in &self.vertices {
                out.insert(rs.form(u, v));
            }
        }
        out
    }

    /// Squared norms of the vertices, deduplicated.
    pub fn norms(&self, rs: &RootSystem) -> BTreeSet<Q> {
        self.vertices.iter().map(|v| rs.norm_sq(v)).collect()
    }

    /// Equal norms make `(v, .)` a separating functional for each vertex:
    /// `(v, v) > (v, u)` for every other vertex `u`. Returns the first
    /// vertex where this fails.
    pub fn equal_norm_certificate(&self, rs: &RootSystem) -> Option<usize> {
        let integral: Option<Vec<Vec<i64>>> = self
            .vertices
            .iter()
            .map(|v| v.coords().iter().map(small_integer).collect())
            .collect();
        self.vertices.iter().enumerate().find_map(|(i, v)| {
            let gv = rs.gram_times(v);
            let fast = integral.as_ref().and_then(|ints| {
                let (gi, _) = scaled_functional(&gv, &Q::zero())?;
                let vals = ints
                    .iter()
                    .map(|u| affine_small(&gi, 0, u))
                    .collect::<Option<Vec<i128>>>()?;
                Some(vals.into_iter().map(|x| Q::from_integer(x.into())).collect::<Vec<_>>())
            });
            // values of (v, .) on every vertex, up to a common positive factor
            let vals: Vec<Q> = fast.unwrap_or_else(|| {
                self.vertices
                    .iter()
                    .map(|u| gv.iter().zip(u.coords()).map(|(a, b)| a * b).sum())
                    .collect()
            });
            let ok = vals.iter().enumerate().all(|(j, x)| i == j || x < &vals[i]);
            (!ok).then_some(i)
        })
    }

    /// For each vertex, checks by exact linear programming that it is not
    /// a convex combination of the others. Returns the first vertex that is.
    ///
    /// A separating functional found by the LP for one vertex is carried to
    /// the other vertices of its orbit under the simple reflections, as
    /// `f -> f o s_j`; every functional so obtained is verified directly
    /// against all vertices, and vertices where it fails get their own LP.
    pub fn convexity_certificate(&self, rs: &RootSystem) -> Option<usize> {
        let n = self.vertices.len();
        let coords: Vec<&[Q]> = self.vertices.iter().map(Weight::coords).collect();
        let index: HashMap<&Weight, usize> = self.vertices.iter().enumerate().map(|(i, v)| (v, i)).collect();
        let ints: Option<Vec<Vec<i64>>> = coords
            .iter()
            .map(|p| p.iter().map(small_integer).collect())
            .collect();
        let mut certified = vec![false; n];
        while let Some(start) = certified.iter().position(|c| !c) {
            let others: Vec<&[Q]> = (0..n).filter(|&j| j != start).map(|j| coords[j]).collect();
            let (g, c) = match convex_combination(coords[start], &others) {
                Membership::Inside(_) => return Some(start),
                Membership::Separated { g, c } => (g, c),
            };
            if !separates(&g, &c, start, &coords, ints.as_deref()) {
                return Some(start);
            }
            certified[start] = true;
            let mut queue = VecDeque::from([(start, g)]);
            let mut visited = vec![false; n];
            visited[start] = true;
            while let Some((p, gp)) = queue.pop_front() {
                for j in 0..self.rank {
                    let Ok(image) = rs.simple_reflection(j, &self.vertices[p]) else {
                        continue;
                    };
                    let Some(&i) = index.get(&image) else {
                        continue;
                    };
                    if visited[i] {
                        continue;
                    }
                    visited[i] = true;
                    // (f o s_j)(x) = f(x) - f_j <x, alpha_j^vee>
                    let gj = gp[j].clone();
                    let gi: Vec<Q> = gp
                        .iter()
                        .zip(&rs.cartan_matrix()[j])
                        .map(|(x, &a)| if a == 0 { x.clone() } else { x - &gj * Q::from_integer(a.into()) })
                        .collect();
                    if separates(&gi, &c, i, &coords, ints.as_deref()) {
                        certified[i] = true;
                        queue.push_back((i, gi));
                    }
                }
            }
        }
        None
    }
}

/// True if `g . x + c` is positive at `points[i]` and nonpositive at every
/// other point.
fn separates(g: &[Q], c: &Q, i: usize, points: &[&[Q]], ints: Option<&[Vec<i64>]>) -> bool {
    let fast = ints.zip(scaled_functional(g, c)).and_then(|(ints, (gi, ci))| {
        ints.iter()
            .map(|p| affine_small(&gi, ci, p))
            .collect::<Option<Vec<i128>>>()
    });
    match fast {
        Some(vals) => vals.iter().enumerate().all(|(j, &x)| if j == i { x > 0 } else { x <= 0 }),
        None => points.iter().enumerate().all(|(j, p)| {
            let x = affine(g, c, p);
            if j == i {
                x.is_positive()
            } else {
                !x.is_positive()
            }
        }),
    }
}

/// The polytope with vertex set the long roots, certified both ways.
pub fn moment_polytope(rs: &RootSystem) -> Result<Polytope> {
    let p = Polytope {
        rank: rs.rank(),
        vertices: projective_fixed_points(rs),
    };
    if let Some(i) = p.equal_norm_certificate(rs) {
        return Err(Error::Certification(format!(
            "vertex {} is not separated by its own functional",
            p.vertices[i]
        )));
    }
    if let Some(i) = p.convexity_certificate(rs) {
        return Err(Error::Certification(format!(
            "vertex {} is a convex combination of the others",
            p.vertices[i]
        )));
    }
    Ok(p)
}

/// Outcome of the convex-combination test for one target point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Membership {
    /// Weights `lambda >= 0`, summing to 1, with `sum lambda_j p_j = target`.
    Inside(Vec<Q>),
    /// A functional `(g, c)` with `g . target + c > 0 >= g . p + c` for every
    /// point `p`.
    Separated { g: Vec<Q>, c: Q },
}

/// Decides whether `target` is a convex combination of `points`.
///
/// Phase I of the simplex method (Bland's rule, exact arithmetic) is run
/// with column generation: starting from no points, the dual of the current
/// optimum is a candidate separating functional, and the point violating it
/// most enters the tableau until the functional separates or the artificial
/// cost reaches zero.
pub fn convex_combination(target: &[Q], points: &[&[Q]]) -> Membership {
    let mut lp = PhaseOne::new(target);
    let mut added = vec![false; points.len()];
    let integral: Option<Vec<Vec<i64>>> = points
        .iter()
        .map(|p| p.iter().map(small_integer).collect::<Option<Vec<_>>>())
        .collect();
    loop {
        lp.optimize();
        if lp.neg_cost.is_zero() {
            let mut lambda = vec![Q::zero(); points.len()];
            for (i, &b) in lp.basis.iter().enumerate() {
                if b >= lp.m {
                    lambda[lp.origin[b - lp.m]] = lp.rhs[i].clone();
                }
            }
            return Membership::Inside(lambda);
        }
        let (g, c) = lp.dual();
        let scaled = integral.as_ref().and_then(|ints| scaled_functional(&g, &c).map(|f| (ints, f)));
        let worst = match scaled {
            Some((ints, (gi, ci))) => (0..points.len())
                .filter(|&j| !added[j])
                .map(|j| affine_small(&gi, ci, &ints[j]).map(|s| (Q::from_integer(s.into()), j)))
                .collect::<Option<Vec<_>>>(),
            None => None,
        }
        .unwrap_or_else(|| {
            (0..points.len())
                .filter(|&j| !added[j])
                .map(|j| (affine(&g, &c, points[j]), j))
                .collect()
        })
        .into_iter()
        .filter(|(s, _)| s.is_positive())
        .max_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
        match worst {
            Some((_, j)) => {
                added[j] = true;
                lp.add_column(j, points[j]);
            }
            None => return Membership::Separated { g, c },
        }
    }
}

fn affine(g: &[Q], c: &Q, p: &[Q]) -> Q {
    g.iter()
        .zip(p)
        .filter(|(a, b)| !a.is_zero() && !b.is_zero())
        .map(|(a, b)| a * b)
        .sum::<Q>()
        + c
}

fn small_integer(x: &Q) -> Option<i64> {
    if x.is_integer() {
        x.to_integer().to_i64()
    } else {
        None
    }
}

/// `(g, c)` times the least common denominator, if it fits in `i64`.
/// The positive scaling keeps signs, and ratios between points.
fn scaled_functional(g: &[Q], c: &Q) -> Option<(Vec<i64>, i64)> {
    let lcm = g
        .iter()
        .chain(std::iter::once(c))
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let scale = |x: &Q| (x.numer() * (&lcm / x.denom())).to_i64();
    let gi = g.iter().map(scale).collect::<Option<Vec<_>>>()?;
    Some((gi, scale(c)?))
}

fn affine_small(g: &[i64], c: i64, p: &[i64]) -> Option<i128> {
    g.iter().zip(p).try_fold(c as i128, |acc, (&a, &b)| {
        acc.checked_add((a as i128).checked_mul(b as i128)?)
    })
}

/// Column-major Phase I tableau for `sum lambda_j (p_j, 1) = (target, 1)`.
/// Columns `0..m` are the artificials, so they hold the basis inverse.
struct PhaseOne {
    m: usize,
    flipped: Vec<bool>,
    cols: Vec<Vec<Q>>,
    /// Reduced cost of each column.
    z: Vec<Q>,
    rhs: Vec<Q>,
    /// Minus the current sum of the artificials.
    neg_cost: Q,
    basis: Vec<usize>,
    /// Index into the caller's point list for each structural column.
    origin: Vec<usize>,
}

impl PhaseOne {
    fn new(target: &[Q]) -> Self {
        let m = target.len() + 1;
        let mut rhs: Vec<Q> = target.to_vec();
        rhs.push(Q::one());
        let flipped: Vec<bool> = rhs.iter().map(Signed::is_negative).collect();
        for x in rhs.iter_mut() {
            *x = x.abs();
        }
        let cols = (0..m)
            .map(|k| (0..m).map(|i| if i == k { Q::one() } else { Q::zero() }).collect())
            .collect();
        PhaseOne {
            m,
            flipped,
            cols,
            z: vec![Q::zero(); m],
            neg_cost: -rhs.iter().sum::<Q>(),
            rhs,
            basis: (0..m).collect(),
            origin: Vec::new(),
        }
    }

    /// `(y, c)` with `y_i = 1 - z_i` on the artificials, in the original
    /// row signs.
    fn dual(&self) -> (Vec<Q>, Q) {
        let mut y: Vec<Q> = (0..self.m)
            .map(|i| {
                let yi = Q::one() - &self.z[i];
                if self.flipped[i] {
                    -yi
                } else {
                    yi
                }
            })
            .collect();
        let c = y.pop().expect("at least one row");
        (y, c)
    }

    fn add_column(&mut self, origin: usize, point: &[Q]) {
        let a: Vec<Q> = point
            .iter()
            .cloned()
            .chain(std::iter::once(Q::one()))
            .zip(&self.flipped)
            .map(|(x, &f)| if f { -x } else { x })
            .collect();
        let mut col = vec![Q::zero(); self.m];
        let mut z = Q::zero();
        for (k, ak) in a.iter().enumerate() {
            if ak.is_zero() {
                continue;
            }
            for (ci, bk) in col.iter_mut().zip(&self.cols[k]) {
                if !bk.is_zero() {
                    *ci += bk * ak;
                }
            }
            z -= (Q::one() - &self.z[k]) * ak;
        }
        self.cols.push(col);
        self.z.push(z);
        self.origin.push(origin);
    }

    fn optimize(&mut self) {
        while let Some(enter) = (0..self.cols.len()).find(|&j| self.z[j].is_negative()) {
            let col = &self.cols[enter];
            let leave = (0..self.m)
                .filter(|&i| col[i].is_positive())
                .min_by(|&a, &b| {
                    let ra = &self.rhs[a] / &col[a];
                    let rb = &self.rhs[b] / &col[b];
                    ra.cmp(&rb).then(self.basis[a].cmp(&self.basis[b]))
                })
                .expect("phase I is bounded below by zero");
            self.pivot(enter, leave);
        }
    }

    fn pivot(&mut self, enter: usize, leave: usize) {
        let pc = self.cols[enter].clone();
        let pz = self.z[enter].clone();
        let p = pc[leave].clone();
        let update = |col: &mut Vec<Q>, z: &mut Q| {
            if col[leave].is_zero() {
                return;
            }
            let r = &col[leave] / &p;
            for (i, x) in col.iter_mut().enumerate() {
                if i != leave && !pc[i].is_zero() {
                    *x -= &pc[i] * &r;
                }
            }
            *z -= &pz * &r;
            col[leave] = r;
        };
        for (col, z) in self.cols.iter_mut().zip(self.z.iter_mut()) {
            update(col, z);
        }
        update(&mut self.rhs, &mut self.neg_cost);
        self.basis[leave] = enter;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::CosetTable;
    use crate::DEFAULT_CAP;

    fn rs(s: &str) -> RootSystem {
        RootSystem::new(s.parse().unwrap()).unwrap()
    }

    fn q(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    #[test]
    fn fixed_points() {
        assert_eq!(
            projective_fixed_points(&rs("A1")),
            vec![Weight::from_ints(&[1]), Weight::from_ints(&[-1])]
        );
        assert_eq!(projective_fixed_points(&rs("G2")).len(), 6);
        assert_eq!(projective_fixed_points(&rs("A3")).len(), 12);
    }

    #[test]
    fn hexagon_and_square() {
        let g2 = rs("G2");
        let p = moment_polytope(&g2).unwrap();
        assert_eq!(p.num_vertices(), 6);
        assert_eq!(p.norms(&g2), [q(2)].into());
        assert_eq!(p.inner_product_spectrum(&g2), [q(-2), q(-1), q(1), q(2)].into());

        let b2 = rs("B2");
        let p = moment_polytope(&b2).unwrap();
        assert_eq!(p.num_vertices(), 4);
        assert_eq!(p.inner_product_spectrum(&b2), [q(-2), q(0), q(2)].into());
        assert!(p.vertices.contains(&Weight::from_ints(&[1, 2])));
    }

    #[test]
    fn vertex_count_matches_cosets() {
        for name in ["A2", "B3", "C3", "D4", "G2", "F4"] {
            let r = rs(name);
            let p = moment_polytope(&r).unwrap();
            assert!(p.is_closed_under_negation());
            let cosets = CosetTable::enumerate(&r, r.xi(), DEFAULT_CAP).unwrap();
            assert_eq!(p.num_vertices(), cosets.len(), "{name}");
        }
    }

    #[test]
    fn lp_finds_interior_points() {
        let pts = [vec![q(0), q(0)], vec![q(2), q(0)], vec![q(0), q(2)]];
        let refs: Vec<&[Q]> = pts.iter().map(Vec::as_slice).collect();
        let Membership::Inside(lambda) = convex_combination(&[q(1), q(1)], &refs) else {
            panic!("interior point reported outside");
        };
        let mut sum = vec![q(0), q(0)];
        for (l, p) in lambda.iter().zip(&pts) {
            assert!(!l.is_negative());
            for k in 0..2 {
                sum[k] += l * &p[k];
            }
        }
        assert_eq!(sum, vec![q(1), q(1)]);
        for outside in [[q(3), q(0)], [q(-1), q(1)]] {
            let Membership::Separated { g, c } = convex_combination(&outside, &refs) else {
                panic!("exterior point reported inside");
            };
            let value = |p: &[Q]| g.iter().zip(p).map(|(a, b)| a * b).sum::<Q>() + &c;
            assert!(value(&outside).is_positive());
            assert!(refs.iter().all(|p| !value(p).is_positive()));
        }
    }

    #[test]
    fn non_extreme_vertex_is_reported() {
        let p = Polytope {
            rank: 1,
            vertices: vec![Weight::from_ints(&[1]), Weight::from_ints(&[0]), Weight::from_ints(&[-1])],
        };
        assert_eq!(p.convexity_certificate(&rs("A1")), Some(1));
    }
}

