//! Cohomology of the minimal and regular nilpotent orbits.
//!
//! `H_T^*(Theta_min)` is the quotient of `H_T^*(G/P_Xi)` by the principal
//! ideal of the equivariant Euler class, whose restriction to the fixed
//! point `[w]` is `w . alpha`. Multiplication by the Euler class is
//! injective, so `b_T^{2d}(Theta_min) = b_T^{2d}(G/P_Xi) - b_T^{2d-2}(G/P_Xi)`.
//! `H_T^*(Theta_reg)` has the Betti numbers of `G/B`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::gkm::{predicted_equiv_betti, GkmClass, GkmGraph};
use crate::lie::{CosetTable, LieType, RootSystem};
use crate::poly::{column_space_complement, MultiPoly, RowReducer};
use crate::Q;

/// Dimensions by cohomological degree; only even degrees are stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiTable {
    pub max_degree: u32,
    pub dims: BTreeMap<u32, u64>,
}

impl BettiTable {
    fn from_fn(max_degree: u32, f: impl Fn(u32) -> u64) -> Self {
        BettiTable {
            max_degree,
            dims: (0..=max_degree / 2).map(|d| (2 * d, f(d))).collect(),
        }
    }

    /// Dimension in cohomological degree `i` (zero for odd `i`).
    pub fn get(&self, i: u32) -> u64 {
        self.dims.get(&i).copied().unwrap_or(0)
    }

    /// Even-degree dimensions `b^0, b^2, ...` up to `max_degree`.
    pub fn even_dims(&self) -> Vec<u64> {
        self.dims.values().copied().collect()
    }
}

/// The Euler class of `G x_{P_Xi} g_alpha` on the graph of `G/P_Xi`: the
/// linear form `w . alpha` at the vertex `[w]`.
pub fn euler_class(g: &GkmGraph) -> Result<GkmClass> {
    if !g.is_xi() {
        return Err(Error::NotXiGraph);
    }
    let values = g
        .vertices()
        .iter()
        .map(|v| {
            v.long_root
                .as_ref()
                .map(MultiPoly::from_weight)
                .ok_or(Error::NotXiGraph)
        })
        .collect::<Result<Vec<_>>>()?;
    GkmClass::new(g, 1, values)
}

/// One degree of the quotient ring.
#[derive(Debug, Clone)]
pub struct QuotientDegree {
    /// Polynomial degree `d`; the cohomological degree is `2d`.
    pub degree: u32,
    /// Basis of `H_T^{2d}(G/P_Xi)`.
    pub ambient: Vec<GkmClass>,
    /// `Eul * b` for each `b` in the ambient basis of degree `2d - 2`.
    pub image: Vec<GkmClass>,
    /// Indices into `ambient` of the chosen quotient representatives.
    pub representative_indices: Vec<usize>,
}

impl QuotientDegree {
    pub fn dim(&self) -> usize {
        self.representative_indices.len()
    }

    pub fn representatives(&self) -> impl Iterator<Item = &GkmClass> {
        self.representative_indices.iter().map(|&i| &self.ambient[i])
    }

    /// True if `class` lies in the Euler ideal in this degree.
    pub fn in_ideal(&self, class: &GkmClass) -> Result<bool> {
        if class.degree() != self.degree {
            return Err(Error::Dimension(format!(
                "class of degree {} tested in degree {}",
                class.cohomological_degree(),
                2 * self.degree
            )));
        }
        let coords = class.coordinates();
        let mut r = RowReducer::new(coords.len());
        for c in &self.image {
            r.insert_rational(&c.coordinates());
        }
        Ok(r.contains(&coords))
    }

    /// Coordinates of `class` modulo the ideal, in the basis of
    /// representatives.
    pub fn reduce(&self, class: &GkmClass) -> Result<Vec<Q>> {
        let target = class.coordinates();
        let n = target.len();
        let gens: Vec<Vec<Q>> = self
            .representatives()
            .chain(&self.image)
            .map(GkmClass::coordinates)
            .collect();
        // Solve sum_k c_k gens_k = target through the kernel of
        // [gens | -target]^T.
        let k = gens.len();
        let mut r = RowReducer::new(k + 1);
        for i in 0..n {
            let mut row: Vec<Q> = gens.iter().map(|g| g[i].clone()).collect();
            row.push(-target[i].clone());
            r.insert_rational(&row);
        }
        let sol = r
            .nullspace()
            .into_iter()
            .find(|v| !v[k].is_zero())
            .ok_or_else(|| Error::Internal("class is not in the ambient span".into()))?;
        let scale = sol[k].clone();
        Ok(sol[..self.dim()].iter().map(|x| x / &scale).collect())
    }
}

/// `H_T^*(G/P_Xi) / <Eul>` truncated at a maximal cohomological degree.
#[derive(Debug, Clone)]
pub struct QuotientRing {
    pub graph: GkmGraph,
    pub euler: GkmClass,
    pub degrees: Vec<QuotientDegree>,
}

impl QuotientRing {
    pub fn max_degree(&self) -> u32 {
        self.degrees.last().map_or(0, |d| 2 * d.degree)
    }

    pub fn in_degree(&self, cohomological: u32) -> Option<&QuotientDegree> {
        if cohomological % 2 == 1 {
            return None;
        }
        self.degrees.get((cohomological / 2) as usize)
    }

    pub fn betti(&self) -> BettiTable {
        BettiTable::from_fn(self.max_degree(), |d| self.degrees[d as usize].dim() as u64)
    }
}

/// Computes the quotient ring degree by degree up to `max_degree`
/// (cohomological, even).
pub fn minimal_orbit_cohomology(rs: &RootSystem, max_degree: u32, cap: usize) -> Result<QuotientRing> {
    let graph = GkmGraph::build_xi(rs, cap)?;
    let euler = euler_class(&graph)?;
    let bases = graph.equivariant_bases(max_degree / 2)?;
    let mut degrees = Vec::with_capacity(bases.len());
    for (d, ambient) in bases.iter().enumerate() {
        let image: Vec<GkmClass> = if d == 0 {
            Vec::new()
        } else {
            bases[d - 1]
                .iter()
                .map(|b| euler.mul(b))
                .collect::<Result<_>>()?
        };
        let image_coords: Vec<Vec<Q>> = image.iter().map(GkmClass::coordinates).collect();
        let ambient_coords: Vec<Vec<Q>> = ambient.iter().map(GkmClass::coordinates).collect();
        if !image_coords.is_empty() {
            let mut r = RowReducer::new(image_coords[0].len());
            for v in &image_coords {
                r.insert_rational(v);
            }
            if r.rank() != image.len() {
                return Err(Error::InjectivityFailure {
                    degree: 2 * d,
                });
            }
        }
        let representative_indices = column_space_complement(&image_coords, &ambient_coords)?;
        if representative_indices.len() + image.len() != ambient.len() {
            return Err(Error::Dimension(format!(
                "degree {}: quotient {} + image {} != ambient {}",
                2 * d,
                representative_indices.len(),
                image.len(),
                ambient.len()
            )));
        }
        degrees.push(QuotientDegree {
            degree: d as u32,
            ambient: ambient.clone(),
            image,
            representative_indices,
        });
    }
    Ok(QuotientRing {
        graph,
        euler,
        degrees,
    })
}

/// Equivariant Betti numbers of `G/P` from the coset Poincare polynomial.
pub fn flag_equiv_betti(rs: &RootSystem, parabolic: &[usize], max_degree: u32, cap: usize) -> Result<BettiTable> {
    let poincare = CosetTable::enumerate(rs, parabolic, cap)?.length_counts();
    Ok(BettiTable::from_fn(max_degree, |d| {
        predicted_equiv_betti(&poincare, rs.rank(), d)
    }))
}

/// `b_T^{2d}(Theta_min) = b_T^{2d}(G/P_Xi) - b_T^{2d-2}(G/P_Xi)`, from
/// counting alone.
pub fn minimal_orbit_betti(rs: &RootSystem, max_degree: u32, cap: usize) -> Result<BettiTable> {
    let poincare = CosetTable::enumerate(rs, rs.xi(), cap)?.length_counts();
    let r = rs.rank();
    Ok(BettiTable::from_fn(max_degree, |d| {
        let here = predicted_equiv_betti(&poincare, r, d);
        let below = if d == 0 {
            0
        } else {
            predicted_equiv_betti(&poincare, r, d - 1)
        };
        here - below
    }))
}

/// Betti numbers of `G/B`: the number of Weyl group elements of each
/// length, enumerated only up to length `max_degree / 2`.
pub fn regular_orbit_betti(rs: &RootSystem, max_degree: u32, cap: usize) -> Result<BettiTable> {
    let table = CosetTable::enumerate_up_to(rs, &[], cap, Some((max_degree / 2) as usize))?;
    let counts = table.length_counts();
    Ok(BettiTable::from_fn(max_degree, |d| {
        counts.get(d as usize).copied().unwrap_or(0)
    }))
}

/// `Z(G)` for simply connected `G`, as invariant factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CenterGroup {
    /// Each divides the next; empty for the trivial group.
    pub invariant_factors: Vec<u64>,
}

impl CenterGroup {
    pub fn order(&self) -> u64 {
        self.invariant_factors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }
}

/// Weight lattice modulo root lattice, as the cokernel of the transposed
/// Cartan matrix.
pub fn center_group(t: LieType) -> CenterGroup {
    let cartan = t.cartan_matrix();
    let n = cartan.len();
    let transposed: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| BigInt::from(cartan[j][i])).collect())
        .collect();
    let diag = smith_normal_form(transposed);
    CenterGroup {
        invariant_factors: diag
            .into_iter()
            .filter(|d| d > &BigInt::from(1))
            .map(|d| d.to_u64().expect("small invariant factor"))
            .collect(),
    }
}

/// Diagonal of the Smith normal form of a square integer matrix, with
/// nonnegative entries each dividing the next.
pub fn smith_normal_form(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let n = a.len();
    let m = a.first().map_or(0, Vec::len);
    let size = n.min(m);
    for t in 0..size {
        loop {
            // smallest nonzero entry of the remaining block as pivot
            let Some((pi, pj)) = (t..n)
                .flat_map(|i| (t..m).map(move |j| (i, j)))
                .filter(|&(i, j)| !a[i][j].is_zero())
                .min_by_key(|&(i, j)| a[i][j].abs())
            else {
                return finish_diagonal(&a, size);
            };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            let p = a[t][t].clone();
            let mut clean = true;
            for i in t + 1..n {
                let f = a[i][t].div_floor(&p);
                if !f.is_zero() {
                    for j in t..m {
                        let x = &a[t][j] * &f;
                        a[i][j] -= x;
                    }
                }
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..m {
                let f = a[t][j].div_floor(&p);
                if !f.is_zero() {
                    for row in a.iter_mut() {
                        let x = &row[t] * &f;
                        row[j] -= x;
                    }
                }
                clean &= a[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            // pivot must divide the rest of the block
            let bad = (t + 1..n)
                .flat_map(|i| (t + 1..m).map(move |j| (i, j)))
                .find(|&(i, j)| !(&a[i][j] % &p).is_zero());
            match bad {
                Some((i, _)) => {
                    for j in t..m {
                        let x = a[i][j].clone();
                        a[t][j] += x;
                    }
                }
                None => break,
            }
        }
    }
    finish_diagonal(&a, size)
}

fn finish_diagonal(a: &[Vec<BigInt>], size: usize) -> Vec<BigInt> {
    let mut d: Vec<BigInt> = (0..size).map(|i| a[i][i].abs()).collect();
    d.sort_by(|x, y| match (x.is_zero(), y.is_zero()) {
        (true, false) => std::cmp::Ordering::Greater,
        (false, true) => std::cmp::Ordering::Less,
        _ => x.cmp(y),
    });
    d
}

/// A finitely generated abelian group `Z^free_rank + sum Z/t`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AbelianGroup {
    pub free_rank: u32,
    /// Orders of the cyclic torsion summands, ascending, all `> 1`.
    pub torsion: Vec<u64>,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn integers() -> Self {
        AbelianGroup {
            free_rank: 1,
            torsion: Vec::new(),
        }
    }

    pub fn cyclic(m: u64) -> Self {
        let mut g = Self::trivial();
        g.push_cyclic(m);
        g
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    fn push_cyclic(&mut self, m: u64) {
        if m > 1 {
            self.torsion.push(m);
            self.torsion.sort_unstable();
        }
    }

    fn direct_sum(&mut self, other: &AbelianGroup) {
        self.free_rank += other.free_rank;
        for &t in &other.torsion {
            self.push_cyclic(t);
        }
    }

    fn tensor(&self, other: &AbelianGroup) -> AbelianGroup {
        let mut out = AbelianGroup {
            free_rank: self.free_rank * other.free_rank,
            torsion: Vec::new(),
        };
        for &t in &self.torsion {
            for _ in 0..other.free_rank {
                out.push_cyclic(t);
            }
        }
        for &t in &other.torsion {
            for _ in 0..self.free_rank {
                out.push_cyclic(t);
            }
        }
        for &a in &self.torsion {
            for &b in &other.torsion {
                out.push_cyclic(a.gcd(&b));
            }
        }
        out
    }

    fn tor(&self, other: &AbelianGroup) -> AbelianGroup {
        let mut out = AbelianGroup::trivial();
        for &a in &self.torsion {
            for &b in &other.torsion {
                out.push_cyclic(a.gcd(&b));
            }
        }
        out
    }
}

impl std::fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_trivial() {
            return f.write_str("0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        f.write_str(&parts.join(" + "))
    }
}

/// `H^n(Z/m; Z)`: `Z` for `n = 0`, `Z/m` for even `n > 0`, else 0.
fn cyclic_cohomology(m: u64, n: u32) -> AbelianGroup {
    if n == 0 {
        AbelianGroup::integers()
    } else if n % 2 == 0 {
        AbelianGroup::cyclic(m)
    } else {
        AbelianGroup::trivial()
    }
}

/// `H^n_gp(Z(G); Z)`, assembled from the cyclic factors by the Kunneth
/// formula `H^n(A x B) = sum_{i+j=n} H^i(A) (x) H^j(B) + sum_{i+j=n+1}
/// Tor(H^i(A), H^j(B))`.
pub fn center_group_cohomology(c: &CenterGroup, n: u32) -> AbelianGroup {
    // cohomology of the product so far, degrees 0..=n+1
    let mut acc: Vec<AbelianGroup> = (0..=n + 1)
        .map(|k| if k == 0 { AbelianGroup::integers() } else { AbelianGroup::trivial() })
        .collect();
    for &m in &c.invariant_factors {
        let next: Vec<AbelianGroup> = (0..=n + 1)
            .map(|k| {
                let mut g = AbelianGroup::trivial();
                for i in 0..=k {
                    g.direct_sum(&acc[i as usize].tensor(&cyclic_cohomology(m, k - i)));
                }
                if k < n + 1 {
                    for i in 0..=k + 1 {
                        g.direct_sum(&acc[i as usize].tor(&cyclic_cohomology(m, k + 1 - i)));
                    }
                }
                g
            })
            .collect();
        acc = next;
    }
    acc.swap_remove(n as usize)
}

/// Checks `Eul([w]) - Eul([w s_beta]) = <alpha, beta^vee> (w . beta)` on every
/// edge; returns the offending vertex pair on failure.
pub fn euler_difference_check(g: &GkmGraph) -> Result<Option<(usize, usize)>> {
    let rs = g.root_system();
    for e in g.edges() {
        let (Some(a), Some(b)) = (
            g.vertices()[e.from].long_root.as_ref(),
            g.vertices()[e.to].long_root.as_ref(),
        ) else {
            return Err(Error::NotXiGraph);
        };
        // labels are only defined up to sign
        let diff = a - b;
        let k = rs.pair_coroot(rs.highest_root(), &e.beta)?;
        let expected = e.label.scale(&k);
        if !k.is_integer() || (diff != expected && diff != -&expected) {
            return Ok(Some((e.from, e.to)));
        }
    }
    Ok(None)
}
