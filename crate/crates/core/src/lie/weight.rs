use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::Q;

/// A vector of `t*_Q` in the basis of simple roots.
///
/// Roots, the highest root, fundamental weights and coset tags all live
/// here; a weight also doubles as a linear form on `t` (see
/// [`crate::poly::MultiPoly::from_weight`]).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(Vec<Q>);

impl Weight {
    pub fn new(coords: Vec<Q>) -> Self {
        Weight(coords)
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Weight(coords.iter().map(|&c| Q::from_integer(c.into())).collect())
    }

    pub fn zero(rank: usize) -> Self {
        Weight(vec![Q::zero(); rank])
    }

    /// The simple root `alpha_i` (0-based index).
    pub fn simple_root(rank: usize, i: usize) -> Self {
        let mut w = Weight::zero(rank);
        w.0[i] = Q::one();
        w
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Q] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Q> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Sum of the coordinates.
    pub fn height(&self) -> Q {
        self.0.iter().sum()
    }

    pub fn scale(&self, c: &Q) -> Weight {
        Weight(self.0.iter().map(|x| x * c).collect())
    }

    /// Nonzero with every coordinate nonnegative.
    pub fn is_positive(&self) -> bool {
        !self.is_zero() && self.0.iter().all(|c| !c.is_negative())
    }

    /// The representative of `{self, -self}` whose first nonzero
    /// coordinate is positive.
    pub fn sign_normalized(&self) -> Weight {
        match self.0.iter().find(|c| !c.is_zero()) {
            Some(c) if c.is_negative() => -self,
            _ => self.clone(),
        }
    }

    /// Integer coordinates, if every coordinate is integral.
    pub fn to_integers(&self) -> Option<Vec<BigInt>> {
        self.0
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        debug_assert_eq!(self.rank(), rhs.rank());
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        debug_assert_eq!(self.rank(), rhs.rank());
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }
}

impl Neg for Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        -&self
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sign_normalization() {
        let w = Weight::from_ints(&[0, -1, 2]);
        assert_eq!(w.sign_normalized(), Weight::from_ints(&[0, 1, -2]));
        assert_eq!(w.sign_normalized(), (-&w).sign_normalized());
        assert_eq!(Weight::zero(2).sign_normalized(), Weight::zero(2));
    }

    #[test]
    fn display_and_height() {
        let w = Weight::new(vec![Q::new(2.into(), 3.into()), Q::new(1.into(), 3.into())]);
        assert_eq!(w.to_string(), "(2/3, 1/3)");
        assert_eq!(w.height(), Q::one());
        assert!(w.is_positive());
        assert!(w.to_integers().is_none());
    }
}
