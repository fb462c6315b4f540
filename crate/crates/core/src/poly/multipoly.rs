use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lie::Weight;
use crate::Q;

/// Exponent vector, ordered so that ascending iteration is graded
/// lexicographic from the top: higher total degree first, then
/// lexicographically larger exponents first (`x1^2 > x1 x2 > x2^2`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(num_vars: usize) -> Self {
        Monomial(vec![0; num_vars])
    }

    pub fn var(num_vars: usize, i: usize) -> Self {
        let mut e = vec![0; num_vars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn num_vars(&self) -> usize {
        self.0.len()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .degree()
            .cmp(&self.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial over Q; no zero coefficients are ever stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    num_vars: usize,
    terms: BTreeMap<Monomial, Q>,
}

impl MultiPoly {
    pub fn zero(num_vars: usize) -> Self {
        MultiPoly {
            num_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(num_vars: usize, c: Q) -> Self {
        Self::monomial(Monomial::one(num_vars), c)
    }

    pub fn one(num_vars: usize) -> Self {
        Self::constant(num_vars, Q::one())
    }

    pub fn var(num_vars: usize, i: usize) -> Self {
        Self::monomial(Monomial::var(num_vars, i), Q::one())
    }

    pub fn monomial(m: Monomial, c: Q) -> Self {
        let mut p = MultiPoly::zero(m.num_vars());
        p.add_term(m, c);
        p
    }

    /// `sum_i c_i x_i` for the weight `sum_i c_i alpha_i`.
    pub fn from_weight(w: &Weight) -> Self {
        let n = w.rank();
        let mut p = MultiPoly::zero(n);
        for (i, c) in w.coords().iter().enumerate() {
            p.add_term(Monomial::var(n, i), c.clone());
        }
        p
    }

    pub fn from_terms(num_vars: usize, terms: impl IntoIterator<Item = (Monomial, Q)>) -> Self {
        let mut p = MultiPoly::zero(num_vars);
        for (m, c) in terms {
            assert_eq!(m.num_vars(), num_vars, "monomial width");
            p.add_term(m, c);
        }
        p
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next().map(Monomial::degree)
    }

    /// Zero counts as homogeneous of every degree.
    pub fn is_homogeneous_of(&self, d: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == d)
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.degree() {
            None => true,
            Some(d) => self.is_homogeneous_of(d),
        }
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check(&self, other: &MultiPoly) -> Result<()> {
        if self.num_vars != other.num_vars {
            return Err(Error::VariableMismatch(self.num_vars, other.num_vars));
        }
        Ok(())
    }

    pub fn add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check(other)?;
        let mut out = MultiPoly::zero(self.num_vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Q) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.num_vars);
        }
        MultiPoly {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn neg(&self) -> MultiPoly {
        self.scale(&-Q::one())
    }

    pub fn pow(&self, k: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(self.num_vars);
        for _ in 0..k {
            acc = acc.mul(self).expect("same ring");
        }
        acc
    }

    /// Coefficients of the linear part, if the polynomial is a homogeneous
    /// linear form.
    pub fn linear_coefficients(&self) -> Option<Vec<Q>> {
        if !self.is_homogeneous_of(1) {
            return None;
        }
        let mut c = vec![Q::zero(); self.num_vars];
        for (m, x) in &self.terms {
            let i = m.exponents().iter().position(|&e| e == 1)?;
            c[i] = x.clone();
        }
        Some(c)
    }

    /// Substitutes the polynomial `value` for the variable `x_var`.
    pub fn substitute(&self, var: usize, value: &MultiPoly) -> Result<MultiPoly> {
        self.check(value)?;
        let mut powers: Vec<MultiPoly> = vec![MultiPoly::one(self.num_vars)];
        let mut out = MultiPoly::zero(self.num_vars);
        for (m, c) in &self.terms {
            let e = m.exponents()[var] as usize;
            while powers.len() <= e {
                let next = powers.last().unwrap().mul(value)?;
                powers.push(next);
            }
            let mut rest = m.exponents().to_vec();
            rest[var] = 0;
            let rest = Monomial(rest);
            for (pm, pc) in &powers[e].terms {
                out.add_term(rest.mul(pm), c * pc);
            }
        }
        Ok(out)
    }

    /// Formats with variables named by `names`.
    pub fn display_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mono: Vec<String> = m
                .exponents()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        names[i].clone()
                    } else {
                        format!("{}^{}", names[i], e)
                    }
                })
                .collect();
            if mono.is_empty() {
                out.push_str(&abs.to_string());
            } else {
                if !abs.is_one() {
                    out.push_str(&abs.to_string());
                    out.push('*');
                }
                out.push_str(&mono.join("*"));
            }
        }
        out
    }
}

/// Variable names `x` (one variable) or `x1, ..., xr`.
pub fn variable_names(num_vars: usize) -> Vec<String> {
    if num_vars == 1 {
        vec!["x".to_string()]
    } else {
        (1..=num_vars).map(|i| format!("x{i}")).collect()
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&variable_names(self.num_vars)))
    }
}

/// True iff the nonzero linear form `l` divides `f`, i.e. `f` vanishes on
/// the hyperplane `l = 0`.
///
/// Eliminates the first variable `x_j` with nonzero coefficient via
/// `x_j = -(sum_{i != j} c_i x_i) / c_j` and tests for zero.
pub fn divides_linear(l: &MultiPoly, f: &MultiPoly) -> Result<bool> {
    l.check(f)?;
    let (pivot, value) = hyperplane_substitution(l)?;
    Ok(f.substitute(pivot, &value)?.is_zero())
}

/// For a nonzero linear form `l`, the pivot variable `j` and the linear
/// polynomial it equals on `l = 0`.
pub(crate) fn hyperplane_substitution(l: &MultiPoly) -> Result<(usize, MultiPoly)> {
    let coeffs = l.linear_coefficients().ok_or(Error::NotLinear)?;
    let pivot = coeffs
        .iter()
        .position(|c| !c.is_zero())
        .ok_or(Error::NotLinear)?;
    let n = l.num_vars();
    let mut value = MultiPoly::zero(n);
    for (i, c) in coeffs.iter().enumerate() {
        if i != pivot {
            value.add_term(Monomial::var(n, i), -c / &coeffs[pivot]);
        }
    }
    Ok((pivot, value))
}

/// All exponent vectors of total degree `d` in `num_vars` variables, in
/// graded lexicographic order.
pub fn monomial_basis(num_vars: usize, d: u32) -> Vec<Monomial> {
    fn rec(pos: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if pos + 1 == cur.len() {
            cur[pos] = left;
            out.push(Monomial(cur.clone()));
            return;
        }
        for e in (0..=left).rev() {
            cur[pos] = e;
            rec(pos + 1, left - e, cur, out);
        }
    }
    if num_vars == 0 {
        return if d == 0 { vec![Monomial(vec![])] } else { vec![] };
    }
    let mut out = Vec::new();
    rec(0, d, &mut vec![0; num_vars], &mut out);
    out
}

/// `C(d + r - 1, r - 1)`: the dimension of degree-`d` forms in `r` variables.
pub fn sym_dim(num_vars: usize, d: usize) -> u64 {
    if num_vars == 0 {
        return u64::from(d == 0);
    }
    binomial((d + num_vars - 1) as u64, (num_vars - 1) as u64)
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(n: usize, i: usize) -> MultiPoly {
        MultiPoly::var(n, i)
    }

    #[test]
    fn ring_examples() {
        let xx = x(1, 0).mul(&x(1, 0)).unwrap();
        assert_eq!(xx, MultiPoly::monomial(Monomial::new(vec![2]), Q::one()));
        let (a, b) = (x(2, 0), x(2, 1));
        let lhs = a.sub(&b).unwrap().mul(&a.add(&b).unwrap()).unwrap();
        let rhs = a.mul(&a).unwrap().sub(&b.mul(&b).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        let zero = MultiPoly::zero(2).mul(&lhs).unwrap();
        assert!(zero.is_zero());
        assert_eq!(zero.num_terms(), 0);
        assert!(matches!(a.add(&x(3, 0)), Err(Error::VariableMismatch(2, 3))));
    }

    #[test]
    fn divisibility_examples() {
        let xx = x(1, 0).pow(2);
        assert!(divides_linear(&x(1, 0), &xx).unwrap());
        assert!(!divides_linear(&x(2, 0), &x(2, 1)).unwrap());
        let (a, b) = (x(2, 0), x(2, 1));
        let l = a.sub(&b).unwrap();
        let f = a.pow(2).sub(&b.pow(2)).unwrap();
        assert!(divides_linear(&l, &f).unwrap());
        assert!(matches!(divides_linear(&MultiPoly::zero(2), &f), Err(Error::NotLinear)));
        assert!(matches!(divides_linear(&f, &f), Err(Error::NotLinear)));
    }

    #[test]
    fn monomial_bases() {
        assert_eq!(monomial_basis(1, 3), vec![Monomial::new(vec![3])]);
        let b = monomial_basis(2, 2);
        assert_eq!(
            b,
            vec![
                Monomial::new(vec![2, 0]),
                Monomial::new(vec![1, 1]),
                Monomial::new(vec![0, 2])
            ]
        );
        assert_eq!(monomial_basis(3, 2).len(), 6);
        for r in 1..5 {
            for d in 0..6 {
                let basis = monomial_basis(r, d);
                assert_eq!(basis.len() as u64, sym_dim(r, d as usize));
                assert!(basis.windows(2).all(|w| w[0] < w[1]), "sorted");
            }
        }
    }

    #[test]
    fn display() {
        let names = variable_names(2);
        let p = MultiPoly::from_terms(
            2,
            [
                (Monomial::new(vec![0, 2]), Q::new(2.into(), 3.into())),
                (Monomial::new(vec![2, 0]), -Q::one()),
                (Monomial::new(vec![1, 1]), Q::one()),
            ],
        );
        assert_eq!(p.display_with(&names), "-x1^2 + x1*x2 + 2/3*x2^2");
        assert_eq!(MultiPoly::zero(1).to_string(), "0");
        assert_eq!(x(1, 0).to_string(), "x");
    }
}
