//! Cross-checks between independent computations for a single type.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::error::{Error, Result};
use crate::gkm::GkmGraph;
use crate::lie::{CosetTable, Family, LieType, RootSystem, Weight};
use crate::moment::moment_polytope;
use crate::orbit::{center_group, euler_class, euler_difference_check, minimal_orbit_betti, minimal_orbit_cohomology};
use crate::Q;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// The check needs an enumeration larger than the cap.
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Skipped => "skipped",
        })
    }
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub name: &'static str,
    pub status: Status,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct SelftestReport {
    pub lie_type: LieType,
    pub max_degree: u32,
    pub outcomes: Vec<Outcome>,
}

impl SelftestReport {
    pub fn first_failure(&self) -> Option<&Outcome> {
        self.outcomes.iter().find(|o| o.status == Status::Fail)
    }

    pub fn passed(&self) -> bool {
        self.first_failure().is_none()
    }
}

/// Names of the property suites, in the order they run.
pub const PROPERTIES: &[&str] = &[
    "reflection-involution",
    "root-count",
    "long-root-orbit",
    "xi-orthogonality",
    "fixed-point-count",
    "gkm-graph-shape",
    "equivariant-dimensions",
    "representative-independence",
    "euler-class",
    "betti-relation",
    "regular-orbit-palindrome",
    "moment-polytope",
    "center-order",
];

type Check = std::result::Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Runs every suite in [`PROPERTIES`] for `t` up to cohomological degree
/// `max_degree`. Errors other than cap overruns are reported as failures.
pub fn run_selftest(t: LieType, max_degree: u32, cap: usize) -> Result<SelftestReport> {
    let rs = RootSystem::new(t)?;
    let d_max = max_degree / 2;
    let mut outcomes = Vec::new();
    for &name in PROPERTIES {
        let result = match name {
            "reflection-involution" => reflection_involution(&rs),
            "root-count" => root_count(&rs),
            "long-root-orbit" => long_root_orbit(&rs, cap),
            "xi-orthogonality" => xi_orthogonality(&rs),
            "fixed-point-count" => fixed_point_count(&rs, cap),
            "gkm-graph-shape" => gkm_graph_shape(&rs, cap),
            "equivariant-dimensions" => equivariant_dimensions(&rs, d_max, cap),
            "representative-independence" => representative_independence(&rs, d_max, cap),
            "euler-class" => euler(&rs, cap),
            "betti-relation" => betti_relation(&rs, max_degree, cap),
            "regular-orbit-palindrome" => palindrome(&rs, cap),
            "moment-polytope" => polytope(&rs),
            "center-order" => center_order(t),
            _ => unreachable!("unknown property {name}"),
        };
        let (status, detail) = match result {
            Ok(Ok(())) => (Status::Pass, String::new()),
            Ok(Err(msg)) => (Status::Fail, msg),
            Err(e @ Error::CapExceeded { .. }) => (Status::Skipped, e.to_string()),
            Err(e) => (Status::Fail, e.to_string()),
        };
        outcomes.push(Outcome {
            name,
            status,
            detail,
        });
    }
    Ok(SelftestReport {
        lie_type: t,
        max_degree,
        outcomes,
    })
}

fn reflection_involution(rs: &RootSystem) -> Result<Check> {
    let r = rs.rank();
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for _ in 0..64 {
        let x = Weight::new(
            (0..r)
                .map(|_| Q::new(rng.gen_range(-20..=20).into(), rng.gen_range(1..=6).into()))
                .collect(),
        );
        for i in 0..r {
            let back = rs.simple_reflection(i, &rs.simple_reflection(i, &x)?)?;
            if back != x {
                return Ok(Err(format!("s{} s{} {x} = {back}", i + 1, i + 1)));
            }
        }
    }
    for beta in rs.all_roots() {
        for i in 0..r {
            let image = rs.simple_reflection(i, beta)?;
            if !rs.is_root(&image) {
                return Ok(Err(format!("s{} {beta} = {image} is not a root", i + 1)));
            }
        }
    }
    Ok(Ok(()))
}

/// Root counts by family from the classification.
fn expected_root_count(t: LieType) -> usize {
    let n = t.rank();
    match t.family() {
        Family::A => n * (n + 1),
        Family::B | Family::C => 2 * n * n,
        Family::D => 2 * n * (n - 1),
        Family::E => match n {
            6 => 72,
            7 => 126,
            _ => 240,
        },
        Family::F => 48,
        Family::G => 12,
    }
}

fn root_count(rs: &RootSystem) -> Result<Check> {
    let want = expected_root_count(rs.lie_type());
    Ok(ensure(rs.num_roots() == want, || {
        format!("{} roots, expected {want}", rs.num_roots())
    }))
}

fn long_root_orbit(rs: &RootSystem, cap: usize) -> Result<Check> {
    let orbit: BTreeSet<Weight> = rs.weyl_orbit(rs.highest_root(), cap)?.into_iter().collect();
    let long: BTreeSet<Weight> = rs.long_roots().iter().cloned().collect();
    Ok(ensure(orbit == long, || {
        format!(
            "orbit of the highest root has {} elements, {} long roots",
            orbit.len(),
            long.len()
        )
    }))
}

fn xi_orthogonality(rs: &RootSystem) -> Result<Check> {
    let theta = rs.highest_root();
    let mut complement: Vec<Weight> = rs
        .negative_roots()
        .iter()
        .filter(|b| !rs.inner_product(theta, b).map_or(true, |x| x.is_zero()))
        .cloned()
        .collect();
    let mut from_xi = rs.parabolic_complement(rs.xi());
    complement.sort();
    from_xi.sort();
    Ok(ensure(complement == from_xi, || {
        format!(
            "{} negative roots pair nontrivially with the highest root, {} lie outside the parabolic",
            complement.len(),
            from_xi.len()
        )
    }))
}

fn fixed_point_count(rs: &RootSystem, cap: usize) -> Result<Check> {
    let cosets = CosetTable::enumerate(rs, rs.xi(), cap)?;
    Ok(ensure(cosets.len() == rs.long_roots().len(), || {
        format!("{} cosets, {} long roots", cosets.len(), rs.long_roots().len())
    }))
}

fn gkm_graph_shape(rs: &RootSystem, cap: usize) -> Result<Check> {
    for parabolic in [rs.xi().to_vec(), Vec::new()] {
        let g = GkmGraph::build(rs, &parabolic, cap)?;
        let degree = rs.parabolic_complement(&parabolic).len();
        if !g.is_regular() || g.vertex_degrees().first().copied().unwrap_or(degree) != degree {
            return Ok(Err(format!("graph for {parabolic:?} is not {degree}-regular")));
        }
        if !g.is_symmetric() {
            return Ok(Err(format!("graph for {parabolic:?} is not symmetric")));
        }
        if let Some(e) = g.edges().iter().find(|e| !rs.is_root(&e.label)) {
            return Ok(Err(format!("edge label {} is not a root", e.label)));
        }
    }
    Ok(Ok(()))
}

fn equivariant_dimensions(rs: &RootSystem, d_max: u32, cap: usize) -> Result<Check> {
    let g = GkmGraph::build_xi(rs, cap)?;
    for d in 0..=d_max {
        let basis = g.equivariant_basis(d)?;
        let want = g.predicted_equiv_betti(d);
        if basis.len() as u64 != want {
            return Ok(Err(format!("degree {}: {} classes, expected {want}", 2 * d, basis.len())));
        }
        if let Some(bad) = basis.iter().position(|c| !g.is_valid(c).unwrap_or(false)) {
            return Ok(Err(format!("degree {}: basis class {bad} violates a condition", 2 * d)));
        }
    }
    Ok(Ok(()))
}

fn representative_independence(rs: &RootSystem, d_max: u32, cap: usize) -> Result<Check> {
    let g = GkmGraph::build_xi(rs, cap)?;
    let full = g.full_weyl_conditions(cap)?;
    for d in 0..=d_max {
        let a = g.equivariant_basis(d)?.len();
        let b = g.solve(d, &full)?.len();
        if a != b {
            return Ok(Err(format!(
                "degree {}: {a} classes from coset conditions, {b} from all of W",
                2 * d
            )));
        }
    }
    Ok(Ok(()))
}

fn euler(rs: &RootSystem, cap: usize) -> Result<Check> {
    let g = GkmGraph::build_xi(rs, cap)?;
    let e = euler_class(&g)?;
    if !g.is_valid(&e)? {
        return Ok(Err("Euler class violates a GKM condition".into()));
    }
    Ok(match euler_difference_check(&g)? {
        Some((a, b)) => Err(format!("Euler difference on edge {a} - {b} is not a multiple of the label")),
        None => Ok(()),
    })
}

fn betti_relation(rs: &RootSystem, max_degree: u32, cap: usize) -> Result<Check> {
    let ring = minimal_orbit_cohomology(rs, max_degree, cap)?.betti();
    let counted = minimal_orbit_betti(rs, max_degree, cap)?;
    Ok(ensure(ring == counted, || {
        format!(
            "quotient dimensions {:?}, counted {:?}",
            ring.even_dims(),
            counted.even_dims()
        )
    }))
}

fn palindrome(rs: &RootSystem, cap: usize) -> Result<Check> {
    let counts = CosetTable::enumerate(rs, &[], cap)?.length_counts();
    let rev: Vec<u64> = counts.iter().rev().copied().collect();
    Ok(ensure(counts == rev && counts.len() == rs.positive_roots().len() + 1, || {
        format!("Weyl group length counts {counts:?}")
    }))
}

fn polytope(rs: &RootSystem) -> Result<Check> {
    let p = moment_polytope(rs)?;
    Ok(ensure(p.is_closed_under_negation(), || {
        "vertex set is not closed under negation".into()
    }))
}

fn center_order(t: LieType) -> Result<Check> {
    let det = bareiss_determinant(&t.cartan_matrix())
        .abs()
        .to_u64()
        .ok_or_else(|| Error::Internal("determinant overflow".into()))?;
    let order = center_group(t).order();
    Ok(ensure(order == det, || {
        format!("center has order {order}, Cartan determinant {det}")
    }))
}

/// Fraction-free Gaussian elimination.
pub fn bareiss_determinant(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return BigInt::zero();
        };
        if p != k {
            a.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    if n == 0 {
        return BigInt::one();
    }
    sign * &a[n - 1][n - 1]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::DEFAULT_CAP;

    #[test]
    fn b2_passes() {
        let report = run_selftest("B2".parse().unwrap(), 10, DEFAULT_CAP).unwrap();
        assert!(report.passed(), "{:?}", report.first_failure());
        assert_eq!(report.outcomes.len(), PROPERTIES.len());
        assert!(report.outcomes.iter().all(|o| o.status == Status::Pass));
    }

    #[test]
    fn caps_skip_rather_than_fail() {
        let report = run_selftest("A3".parse().unwrap(), 2, 10).unwrap();
        assert!(report.passed());
        assert!(report.outcomes.iter().any(|o| o.status == Status::Skipped));
    }

    #[test]
    fn determinants() {
        assert_eq!(bareiss_determinant(&[vec![2, -1], vec![-1, 2]]), BigInt::from(3));
        assert_eq!(bareiss_determinant(&[vec![0, 1], vec![1, 0]]), BigInt::from(-1));
        assert_eq!(bareiss_determinant(&[vec![1, 2], vec![2, 4]]), BigInt::zero());
    }
}
