use std::fmt::Write as _;

use nilorbit_core::gkm::{GkmClass, GkmGraph};
use nilorbit_core::lie::{RootSystem, Weight};
use nilorbit_core::moment::Polytope;
use nilorbit_core::orbit::{center_group_cohomology, BettiTable, CenterGroup, QuotientRing};
use nilorbit_core::selftest::SelftestReport;
use serde::Serialize;

/// A weight as a list of rationals in lowest terms, `"p/q"` or `"p"`.
pub fn weight(w: &Weight) -> Vec<String> {
    w.coords().iter().map(ToString::to_string).collect()
}

fn one_based(indices: &[usize]) -> Vec<usize> {
    indices.iter().map(|i| i + 1).collect()
}

fn class_values(c: &GkmClass) -> Vec<String> {
    c.values().iter().map(ToString::to_string).collect()
}

fn paren(parts: &[String]) -> String {
    format!("({})", parts.join(", "))
}

#[derive(Serialize)]
pub struct RootsReport {
    #[serde(rename = "type")]
    pub lie_type: String,
    pub rank: usize,
    pub cartan_matrix: Vec<Vec<i64>>,
    pub num_roots: usize,
    pub num_positive_roots: usize,
    pub num_long_roots: usize,
    pub highest_root: Vec<String>,
    pub positive_roots: Vec<Vec<String>>,
    pub long_roots: Vec<Vec<String>>,
    /// 1-based simple indices orthogonal to the highest root.
    pub xi: Vec<usize>,
}

impl RootsReport {
    pub fn new(rs: &RootSystem) -> Self {
        RootsReport {
            lie_type: rs.lie_type().to_string(),
            rank: rs.rank(),
            cartan_matrix: rs.cartan_matrix().to_vec(),
            num_roots: rs.num_roots(),
            num_positive_roots: rs.positive_roots().len(),
            num_long_roots: rs.long_roots().len(),
            highest_root: weight(rs.highest_root()),
            positive_roots: rs.positive_roots().iter().map(weight).collect(),
            long_roots: rs.long_roots().iter().map(weight).collect(),
            xi: one_based(rs.xi()),
        }
    }

    pub fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "type {} (rank {})", self.lie_type, self.rank);
        let _ = writeln!(s, "roots: {} ({} positive)", self.num_roots, self.num_positive_roots);
        let _ = writeln!(s, "long roots: {}", self.num_long_roots);
        let _ = writeln!(s, "highest root: {}", paren(&self.highest_root));
        let xi: Vec<String> = self.xi.iter().map(|i| format!("a{i}")).collect();
        let _ = writeln!(
            s,
            "Xi: {{{}}} (|Xi| = {})",
            xi.join(", "),
            self.xi.len()
        );
        s
    }
}

#[derive(Serialize)]
pub struct VertexReport {
    pub id: usize,
    pub word: Vec<usize>,
    pub tag: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub long_root: Option<Vec<String>>,
}

#[derive(Serialize)]
pub struct EdgeReport {
    pub v: usize,
    pub u: usize,
    pub beta: Vec<String>,
    pub label: Vec<String>,
}

#[derive(Serialize)]
pub struct GraphReport {
    #[serde(rename = "type")]
    pub lie_type: String,
    pub parabolic: Vec<usize>,
    pub num_vertices: usize,
    pub vertex_degree: usize,
    pub vertices: Vec<VertexReport>,
    /// One entry per unordered edge, with `v < u`.
    pub edges: Vec<EdgeReport>,
}

impl GraphReport {
    pub fn new(g: &GkmGraph) -> Self {
        GraphReport {
            lie_type: g.root_system().lie_type().to_string(),
            parabolic: one_based(g.parabolic()),
            num_vertices: g.num_vertices(),
            vertex_degree: g.vertex_degrees().first().copied().unwrap_or(0),
            vertices: g
                .vertices()
                .iter()
                .map(|v| VertexReport {
                    id: v.id,
                    word: v.word.one_based(),
                    tag: weight(&v.tag),
                    long_root: v.long_root.as_ref().map(weight),
                })
                .collect(),
            edges: g
                .edges()
                .iter()
                .filter(|e| e.from < e.to)
                .map(|e| EdgeReport {
                    v: e.from,
                    u: e.to,
                    beta: weight(&e.beta),
                    label: weight(&e.label),
                })
                .collect(),
        }
    }

    pub fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "GKM graph of {}/P, P = {:?}: {} vertices, {} edges, degree {}",
            self.lie_type,
            self.parabolic,
            self.num_vertices,
            self.edges.len(),
            self.vertex_degree
        );
        for v in &self.vertices {
            let word = if v.word.is_empty() {
                "e".to_string()
            } else {
                v.word.iter().map(|i| format!("s{i}")).collect::<Vec<_>>().join(" ")
            };
            let _ = write!(s, "  [{}] w = {word}, tag {}", v.id, paren(&v.tag));
            if let Some(l) = &v.long_root {
                let _ = write!(s, ", long root {}", paren(l));
            }
            s.push('\n');
        }
        for e in &self.edges {
            let _ = writeln!(s, "  {} -- {}  label {}", e.v, e.u, paren(&e.label));
        }
        s
    }
}

#[derive(Serialize)]
pub struct DegreeDim {
    pub degree: u32,
    pub dim: u64,
}

#[derive(Serialize)]
pub struct BettiReport {
    #[serde(rename = "type")]
    pub lie_type: String,
    pub target: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parabolic: Option<Vec<usize>>,
    pub max_degree: u32,
    pub betti: Vec<DegreeDim>,
}

impl BettiReport {
    pub fn new(lie_type: String, target: &str, parabolic: Option<&[usize]>, t: &BettiTable) -> Self {
        BettiReport {
            lie_type,
            target: target.to_string(),
            parabolic: parabolic.map(one_based),
            max_degree: t.max_degree,
            betti: t
                .dims
                .iter()
                .map(|(&degree, &dim)| DegreeDim { degree, dim })
                .collect(),
        }
    }

    pub fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{} {} Betti numbers up to degree {}", self.lie_type, self.target, self.max_degree);
        for b in &self.betti {
            let _ = writeln!(s, "  b^{:<3} = {}", b.degree, b.dim);
        }
        s
    }
}

#[derive(Serialize)]
pub struct RingDegree {
    pub degree: u32,
    pub dim: usize,
    /// Basis classes, each listed by its value at every vertex.
    pub basis: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ambient_dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ideal_dim: Option<usize>,
}

#[derive(Serialize)]
pub struct RingReport {
    #[serde(rename = "type")]
    pub lie_type: String,
    pub target: String,
    pub max_degree: u32,
    pub variables: Vec<String>,
    pub vertices: Vec<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub euler_class: Option<Vec<String>>,
    pub degrees: Vec<RingDegree>,
}

impl RingReport {
    pub fn flag(g: &GkmGraph, bases: &[Vec<GkmClass>], max_degree: u32) -> Self {
        RingReport {
            lie_type: g.root_system().lie_type().to_string(),
            target: "flag-xi".into(),
            max_degree,
            variables: nilorbit_core::poly::variable_names(g.rank()),
            vertices: g.vertices().iter().map(|v| v.word.one_based()).collect(),
            euler_class: None,
            degrees: bases
                .iter()
                .enumerate()
                .map(|(d, b)| RingDegree {
                    degree: 2 * d as u32,
                    dim: b.len(),
                    basis: b.iter().map(class_values).collect(),
                    ambient_dim: None,
                    ideal_dim: None,
                })
                .collect(),
        }
    }

    pub fn min_orbit(q: &QuotientRing) -> Self {
        let g = &q.graph;
        RingReport {
            lie_type: g.root_system().lie_type().to_string(),
            target: "min-orbit".into(),
            max_degree: q.max_degree(),
            variables: nilorbit_core::poly::variable_names(g.rank()),
            vertices: g.vertices().iter().map(|v| v.word.one_based()).collect(),
            euler_class: Some(class_values(&q.euler)),
            degrees: q
                .degrees
                .iter()
                .map(|d| RingDegree {
                    degree: 2 * d.degree,
                    dim: d.dim(),
                    basis: d.representatives().map(class_values).collect(),
                    ambient_dim: Some(d.ambient.len()),
                    ideal_dim: Some(d.image.len()),
                })
                .collect(),
        }
    }

    pub fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "{} {} up to degree {}, variables {}",
            self.lie_type,
            self.target,
            self.max_degree,
            self.variables.join(", ")
        );
        if let Some(e) = &self.euler_class {
            let _ = writeln!(s, "Euler class: {}", paren(e));
        }
        for d in &self.degrees {
            match (d.ambient_dim, d.ideal_dim) {
                (Some(a), Some(i)) => {
                    let _ = writeln!(
                        s,
                        "degree {}: dim {} (ambient {}, ideal {})",
                        d.degree, d.dim, a, i
                    );
                }
                _ => {
                    let _ = writeln!(s, "degree {}: dim {}", d.degree, d.dim);
                }
            }
            for c in &d.basis {
                let _ = writeln!(s, "  {}", paren(c));
            }
        }
        s
    }
}

#[derive(Serialize)]
pub struct PolytopeReport {
    #[serde(rename = "type")]
    pub lie_type: String,
    pub rank: usize,
    pub num_vertices: usize,
    pub vertices: Vec<Vec<String>>,
    pub squared_norms: Vec<String>,
    pub inner_products: Vec<String>,
    pub certified: bool,
}

impl PolytopeReport {
    pub fn new(rs: &RootSystem, p: &Polytope) -> Self {
        PolytopeReport {
            lie_type: rs.lie_type().to_string(),
            rank: p.rank,
            num_vertices: p.num_vertices(),
            vertices: p.vertices.iter().map(weight).collect(),
            squared_norms: p.norms(rs).iter().map(ToString::to_string).collect(),
            inner_products: p.inner_product_spectrum(rs).iter().map(ToString::to_string).collect(),
            certified: true,
        }
    }

    pub fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "moment polytope of P(Theta_min) for {}: {} vertices, all extreme",
            self.lie_type, self.num_vertices
        );
        let _ = writeln!(s, "squared norms: {}", self.squared_norms.join(", "));
        let _ = writeln!(s, "inner products: {}", self.inner_products.join(", "));
        for v in &self.vertices {
            let _ = writeln!(s, "  {}", paren(v));
        }
        s
    }
}

#[derive(Serialize)]
pub struct GroupReport {
    pub degree: u32,
    pub free_rank: u32,
    pub torsion: Vec<u64>,
    pub group: String,
}

#[derive(Serialize)]
pub struct CenterReport {
    #[serde(rename = "type")]
    pub lie_type: String,
    pub invariant_factors: Vec<u64>,
    pub order: u64,
    pub max_degree: u32,
    pub cohomology: Vec<GroupReport>,
}

impl CenterReport {
    pub fn new(lie_type: String, c: &CenterGroup, max_degree: u32) -> Self {
        CenterReport {
            lie_type,
            invariant_factors: c.invariant_factors.clone(),
            order: c.order(),
            max_degree,
            cohomology: (0..=max_degree)
                .map(|n| {
                    let h = center_group_cohomology(c, n);
                    GroupReport {
                        degree: n,
                        free_rank: h.free_rank,
                        group: h.to_string(),
                        torsion: h.torsion,
                    }
                })
                .collect(),
        }
    }

    fn center_name(&self) -> String {
        if self.invariant_factors.is_empty() {
            "trivial".into()
        } else {
            self.invariant_factors
                .iter()
                .map(|t| format!("Z/{t}"))
                .collect::<Vec<_>>()
                .join(" x ")
        }
    }

    pub fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "Z({}) = {} (order {})", self.lie_type, self.center_name(), self.order);
        for h in &self.cohomology {
            let _ = writeln!(s, "  H^{:<3} = {}", h.degree, h.group);
        }
        s
    }
}

#[derive(Serialize)]
pub struct PropertyReport {
    pub name: String,
    pub status: String,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

#[derive(Serialize)]
pub struct SelftestJson {
    #[serde(rename = "type")]
    pub lie_type: String,
    pub max_degree: u32,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<String>,
    pub properties: Vec<PropertyReport>,
}

impl SelftestJson {
    pub fn new(r: &SelftestReport) -> Self {
        SelftestJson {
            lie_type: r.lie_type.to_string(),
            max_degree: r.max_degree,
            passed: r.passed(),
            first_failure: r.first_failure().map(|o| o.name.to_string()),
            properties: r
                .outcomes
                .iter()
                .map(|o| PropertyReport {
                    name: o.name.to_string(),
                    status: o.status.to_string(),
                    detail: o.detail.clone(),
                })
                .collect(),
        }
    }

    pub fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "selftest {} up to degree {}", self.lie_type, self.max_degree);
        for p in &self.properties {
            let _ = write!(s, "  {:<28} {}", p.name, p.status);
            if !p.detail.is_empty() {
                let _ = write!(s, "  ({})", p.detail);
            }
            s.push('\n');
        }
        let _ = writeln!(s, "{}", if self.passed { "all properties hold" } else { "FAILED" });
        s
    }
}
