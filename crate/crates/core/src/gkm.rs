//! GKM graphs of partial flag varieties `G/P` and their equivariant
//! cohomology, computed degree by degree as piecewise polynomials.
//!
//! Vertices are the cosets `W/W_P`. At a vertex `[w]`, each root `beta` of
//! `Delta \ Delta_P` (the negative roots not supported on `P`) gives an edge
//! to `[w s_beta]` labelled by the weight `w . beta`. A class of degree `2d`
//! assigns a degree-`d` form to each vertex such that the label of every
//! edge divides the difference of the values at its ends.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lie::{CosetTable, LieType, RootSystem, Weight, WeylWord};
use crate::poly::{
    divides_linear, hyperplane_substitution, integer_row, monomial_basis, sym_dim, Monomial,
    MultiPoly, RowReducer, SparseRow,
};
use crate::Q;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub id: usize,
    /// Minimal-length representative `w` of the coset.
    pub word: WeylWord,
    /// `w . lambda_P`
    pub tag: Weight,
    /// `w . alpha` for the highest root `alpha`; set only on `G/P_Xi`.
    pub long_root: Option<Weight>,
}

/// A directed edge `[w] -> [w s_beta]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub beta: Weight,
    /// `w . beta`, normalized so that its first nonzero coordinate is positive.
    pub label: Weight,
}

/// Identifies the graph a class lives on.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GraphKey {
    pub lie_type: LieType,
    pub parabolic: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct GkmGraph {
    rs: RootSystem,
    cosets: CosetTable,
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    complement: Vec<Weight>,
    is_xi: bool,
}

/// A single divisibility condition `label | f(a) - f(b)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Condition {
    pub a: usize,
    pub b: usize,
    pub label: Weight,
}

impl Condition {
    fn new(v: usize, u: usize, label: Weight) -> Self {
        Condition {
            a: v.min(u),
            b: v.max(u),
            label,
        }
    }
}

impl GkmGraph {
    /// Builds the GKM graph of `G/P` for the standard parabolic on the
    /// 0-based simple indices `parabolic`.
    pub fn build(rs: &RootSystem, parabolic: &[usize], cap: usize) -> Result<Self> {
        let cosets = CosetTable::enumerate(rs, parabolic, cap)?;
        let parabolic = cosets.parabolic().to_vec();
        let is_xi = parabolic == rs.xi();
        let complement = rs.parabolic_complement(&parabolic);
        let dominant = cosets.dominant_weight().clone();

        let reflected: Vec<Weight> = complement
            .iter()
            .map(|beta| rs.reflect(&dominant, beta))
            .collect::<Result<_>>()?;

        let mut vertices = Vec::with_capacity(cosets.len());
        let mut edges = Vec::with_capacity(cosets.len() * complement.len());
        for c in cosets.cosets() {
            let long_root = if is_xi {
                Some(rs.apply_word(&c.word, rs.highest_root())?)
            } else {
                None
            };
            vertices.push(Vertex {
                id: c.id,
                word: c.word.clone(),
                tag: c.tag.clone(),
                long_root,
            });
            for (beta, s_lambda) in complement.iter().zip(&reflected) {
                let target = rs.apply_word(&c.word, s_lambda)?;
                let to = cosets.locate(&target).ok_or_else(|| {
                    Error::Internal(format!("edge endpoint {target} is not a coset tag"))
                })?;
                if to == c.id {
                    return Err(Error::Internal(format!(
                        "self-loop at vertex {} for beta = {beta}",
                        c.id
                    )));
                }
                let label = rs.apply_word(&c.word, beta)?.sign_normalized();
                edges.push(Edge {
                    from: c.id,
                    to,
                    beta: beta.clone(),
                    label,
                });
            }
        }
        Ok(GkmGraph {
            rs: rs.clone(),
            cosets,
            vertices,
            edges,
            complement,
            is_xi,
        })
    }

    /// The graph of `G/P_Xi`, whose quotient by the Euler class gives the
    /// minimal orbit.
    pub fn build_xi(rs: &RootSystem, cap: usize) -> Result<Self> {
        Self::build(rs, rs.xi(), cap)
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    pub fn parabolic(&self) -> &[usize] {
        self.cosets.parabolic()
    }

    pub fn is_xi(&self) -> bool {
        self.is_xi
    }

    pub fn key(&self) -> GraphKey {
        GraphKey {
            lie_type: self.rs.lie_type(),
            parabolic: self.parabolic().to_vec(),
        }
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    /// All directed edges, `|Delta \ Delta_P|` per vertex.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn coset_table(&self) -> &CosetTable {
        &self.cosets
    }

    /// `Delta \ Delta_P`
    pub fn complement_roots(&self) -> &[Weight] {
        &self.complement
    }

    /// Coefficients of the Poincare polynomial of `G/P` in `q = t^2`.
    pub fn poincare_polynomial(&self) -> Vec<u64> {
        self.cosets.length_counts()
    }

    /// Out-degree of each vertex, counting multi-edges.
    pub fn vertex_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertices.len()];
        for e in &self.edges {
            deg[e.from] += 1;
        }
        deg
    }

    pub fn is_regular(&self) -> bool {
        self.vertex_degrees()
            .iter()
            .all(|&d| d == self.complement.len())
    }

    /// Every edge `v -> u` has a reverse edge `u -> v` with the same label.
    pub fn is_symmetric(&self) -> bool {
        let set: BTreeSet<(usize, usize, &Weight)> =
            self.edges.iter().map(|e| (e.from, e.to, &e.label)).collect();
        self.edges
            .iter()
            .all(|e| set.contains(&(e.to, e.from, &e.label)))
    }

    /// One condition per unordered edge and label.
    pub fn conditions(&self) -> Vec<Condition> {
        let set: BTreeSet<Condition> = self
            .edges
            .iter()
            .map(|e| Condition::new(e.from, e.to, e.label.clone()))
            .collect();
        set.into_iter().collect()
    }

    /// The literal condition set quantified over every `w` in `W` (not just
    /// coset representatives): `(w . beta) | f([w]) - f([w s_beta])` for all
    /// `beta` in `Delta \ Delta_P`.
    pub fn full_weyl_conditions(&self, cap: usize) -> Result<Vec<Condition>> {
        let weyl = CosetTable::enumerate(&self.rs, &[], cap)?;
        let dominant = self.cosets.dominant_weight();
        let mut set = BTreeSet::new();
        for w in weyl.cosets() {
            let here = self.rs.apply_word(&w.word, dominant)?;
            let v = self
                .cosets
                .locate(&here)
                .ok_or_else(|| Error::Internal(format!("{here} is not a coset tag")))?;
            for beta in &self.complement {
                let there = self
                    .rs
                    .apply_word(&w.word, &self.rs.reflect(dominant, beta)?)?;
                let u = self
                    .cosets
                    .locate(&there)
                    .ok_or_else(|| Error::Internal(format!("{there} is not a coset tag")))?;
                let label = self.rs.apply_word(&w.word, beta)?.sign_normalized();
                set.insert(Condition::new(v, u, label));
            }
        }
        Ok(set.into_iter().collect())
    }

    /// Basis of `H_T^{2d}(G/P)`.
    pub fn equivariant_basis(&self, d: u32) -> Result<Vec<GkmClass>> {
        self.solve(d, &self.conditions())
    }

    /// Bases for `d = 0..=max_d`, computed in parallel.
    pub fn equivariant_bases(&self, max_d: u32) -> Result<Vec<Vec<GkmClass>>> {
        (0..=max_d)
            .into_par_iter()
            .map(|d| self.equivariant_basis(d))
            .collect()
    }

    /// Basis of the degree-`2d` solutions of an arbitrary condition set on
    /// this graph's vertices.
    pub fn solve(&self, d: u32, conditions: &[Condition]) -> Result<Vec<GkmClass>> {
        let r = self.rank();
        let monos = monomial_basis(r, d);
        let m = monos.len();
        let n = self.vertices.len();
        let mut cache: HashMap<&Weight, Vec<SparseRow>> = HashMap::new();
        let mut reducer = RowReducer::new(n * m);
        for cond in conditions {
            if !cache.contains_key(&cond.label) {
                cache.insert(&cond.label, restriction_rows(&cond.label, &monos)?);
            }
            for eq in &cache[&cond.label] {
                let mut row: SparseRow = Vec::with_capacity(2 * eq.len());
                for (k, x) in eq {
                    row.push((cond.a * m + k, x.clone()));
                }
                for (k, x) in eq {
                    row.push((cond.b * m + k, -x.clone()));
                }
                reducer.insert(row);
            }
        }
        Ok(reducer
            .nullspace()
            .into_iter()
            .map(|v| {
                let ints = integer_row(&v);
                let mut coords = vec![Q::zero(); n * m];
                for (j, x) in ints {
                    coords[j] = Q::from_integer(x);
                }
                GkmClass::from_coordinates(self.key(), r, d, n, &coords)
            })
            .collect())
    }

    /// `b_T^{2d}(G/P) = sum_j b^{2j}(G/P) * dim Sym^{d-j}`, by equivariant
    /// formality; independent of the linear algebra.
    pub fn predicted_equiv_betti(&self, d: u32) -> u64 {
        predicted_equiv_betti(&self.poincare_polynomial(), self.rank(), d)
    }

    pub fn is_valid(&self, class: &GkmClass) -> Result<bool> {
        if class.key != self.key() {
            return Err(Error::GraphMismatch);
        }
        for cond in self.conditions() {
            let diff = class.values[cond.a].sub(&class.values[cond.b])?;
            if !divides_linear(&MultiPoly::from_weight(&cond.label), &diff)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn ones(&self) -> GkmClass {
        GkmClass {
            key: self.key(),
            degree: 0,
            values: vec![MultiPoly::one(self.rank()); self.vertices.len()],
        }
    }
}

pub fn predicted_equiv_betti(poincare: &[u64], rank: usize, d: u32) -> u64 {
    (0..=d as usize)
        .filter(|&j| j < poincare.len())
        .map(|j| poincare[j] * sym_dim(rank, d as usize - j))
        .sum()
}

/// Integer rows of the linear map `Sym^d -> Sym^d / (label)`, restricting a
/// form to the hyperplane `label = 0`; columns are indexed by `monos`.
fn restriction_rows(label: &Weight, monos: &[Monomial]) -> Result<Vec<SparseRow>> {
    let r = label.rank();
    let (pivot, value) = hyperplane_substitution(&MultiPoly::from_weight(label))?;
    let mut rows: Vec<(Monomial, Vec<Q>)> = Vec::new();
    let mut row_of: HashMap<Monomial, usize> = HashMap::new();
    for (k, mono) in monos.iter().enumerate() {
        let p = MultiPoly::monomial(mono.clone(), Q::from_integer(1.into()));
        let restricted = p.substitute(pivot, &value)?;
        for (mu, c) in restricted.terms() {
            let idx = *row_of.entry(mu.clone()).or_insert_with(|| {
                rows.push((mu.clone(), vec![Q::zero(); monos.len()]));
                rows.len() - 1
            });
            rows[idx].1[k] = c.clone();
        }
    }
    debug_assert!(rows.iter().all(|(mu, _)| mu.exponents()[pivot] == 0));
    debug_assert!(rows.len() as u64 <= sym_dim(r - 1, monos.first().map_or(0, |m| m.degree() as usize)));
    rows.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(rows.into_iter().map(|(_, v)| integer_row(&v)).collect())
}

/// A piecewise polynomial on a GKM graph: one homogeneous form of degree
/// `d` per vertex, representing a class in `H_T^{2d}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GkmClass {
    key: GraphKey,
    degree: u32,
    values: Vec<MultiPoly>,
}

impl GkmClass {
    pub fn new(graph: &GkmGraph, degree: u32, values: Vec<MultiPoly>) -> Result<Self> {
        if values.len() != graph.num_vertices() {
            return Err(Error::Dimension(format!(
                "{} values for {} vertices",
                values.len(),
                graph.num_vertices()
            )));
        }
        for v in &values {
            if v.num_vars() != graph.rank() {
                return Err(Error::VariableMismatch(v.num_vars(), graph.rank()));
            }
            if !v.is_homogeneous_of(degree) {
                return Err(Error::Dimension(format!(
                    "value {v} is not homogeneous of degree {degree}"
                )));
            }
        }
        Ok(GkmClass {
            key: graph.key(),
            degree,
            values,
        })
    }

    fn from_coordinates(key: GraphKey, rank: usize, d: u32, n: usize, coords: &[Q]) -> Self {
        let monos = monomial_basis(rank, d);
        let m = monos.len();
        let values = (0..n)
            .map(|v| {
                MultiPoly::from_terms(
                    rank,
                    monos
                        .iter()
                        .enumerate()
                        .map(|(k, mono)| (mono.clone(), coords[v * m + k].clone())),
                )
            })
            .collect();
        GkmClass {
            key,
            degree: d,
            values,
        }
    }

    pub fn key(&self) -> &GraphKey {
        &self.key
    }

    /// Polynomial degree `d`; the cohomological degree is `2d`.
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn cohomological_degree(&self) -> u32 {
        2 * self.degree
    }

    pub fn values(&self) -> &[MultiPoly] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(MultiPoly::is_zero)
    }

    /// Coefficients in (vertex, graded-lex monomial) order.
    pub fn coordinates(&self) -> Vec<Q> {
        let rank = self.key.lie_type.rank();
        let monos = monomial_basis(rank, self.degree);
        self.values
            .iter()
            .flat_map(|p| monos.iter().map(move |m| p.coefficient(m)))
            .collect()
    }

    /// Vertexwise product.
    pub fn mul(&self, other: &GkmClass) -> Result<GkmClass> {
        if self.key != other.key || self.values.len() != other.values.len() {
            return Err(Error::GraphMismatch);
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a.mul(b))
            .collect::<Result<_>>()?;
        Ok(GkmClass {
            key: self.key.clone(),
            degree: self.degree + other.degree,
            values,
        })
    }

    pub fn sub(&self, other: &GkmClass) -> Result<GkmClass> {
        if self.key != other.key || self.degree != other.degree {
            return Err(Error::GraphMismatch);
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a.sub(b))
            .collect::<Result<_>>()?;
        Ok(GkmClass {
            key: self.key.clone(),
            degree: self.degree,
            values,
        })
    }
}

pub fn pointwise_product(a: &GkmClass, b: &GkmClass) -> Result<GkmClass> {
    a.mul(b)
}

impl fmt::Display for GkmClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str(")")
    }
}
