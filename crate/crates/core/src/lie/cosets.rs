use std::collections::{HashMap, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use super::{RootSystem, Weight, WeylWord};
use crate::error::{Error, Result};
use crate::Q;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coset {
    /// Position in breadth-first discovery order.
    pub id: usize,
    /// A minimal-length representative.
    pub word: WeylWord,
    /// `u . lambda_P`; identifies the coset `u W_P`.
    pub tag: Weight,
}

impl Coset {
    pub fn length(&self) -> usize {
        self.word.len()
    }
}

/// The cosets `W / W_P` for a subset `P` of simple indices, found by a
/// breadth-first search over the orbit of the dominant weight
/// `lambda_P = sum_{i not in P} w_i`, whose stabilizer is exactly `W_P`.
#[derive(Debug, Clone)]
pub struct CosetTable {
    parabolic: Vec<usize>,
    dominant: Weight,
    scale: BigInt,
    cosets: Vec<Coset>,
    index: HashMap<Vec<i64>, usize>,
    complete: bool,
}

impl CosetTable {
    pub fn enumerate(rs: &RootSystem, parabolic: &[usize], cap: usize) -> Result<Self> {
        Self::enumerate_up_to(rs, parabolic, cap, None)
    }

    /// Enumerates only the cosets of minimal length `<= max_length` when a
    /// bound is given.
    pub fn enumerate_up_to(
        rs: &RootSystem,
        parabolic: &[usize],
        cap: usize,
        max_length: Option<usize>,
    ) -> Result<Self> {
        let parabolic = rs.check_parabolic(parabolic)?;
        let fundamental = rs.fundamental_weights();
        let dominant = fundamental
            .iter()
            .enumerate()
            .filter(|(i, _)| !parabolic.contains(i))
            .fold(Weight::zero(rs.rank()), |acc, (_, w)| &acc + w);
        let scale = dominant
            .coords()
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));

        let rank = rs.rank();
        let cartan = rs.cartan_matrix();
        let start = scaled_key(&dominant, &scale)
            .ok_or_else(|| Error::Internal("dominant weight too large for i64".into()))?;
        let mut index = HashMap::from([(start.clone(), 0usize)]);
        let mut cosets = vec![Coset {
            id: 0,
            word: WeylWord::identity(),
            tag: dominant.clone(),
        }];
        let mut keys = vec![start];
        let mut queue = VecDeque::from([0usize]);
        let mut complete = true;
        while let Some(cur) = queue.pop_front() {
            if max_length.is_some_and(|m| cosets[cur].length() >= m) {
                complete = false;
                continue;
            }
            for i in 0..rank {
                let v = &keys[cur];
                let c: i64 = (0..rank).map(|j| cartan[i][j] * v[j]).sum();
                if c == 0 {
                    continue;
                }
                let mut next = v.clone();
                next[i] -= c;
                if index.contains_key(&next) {
                    continue;
                }
                if cosets.len() >= cap {
                    return Err(Error::CapExceeded {
                        what: "coset enumeration",
                        cap,
                    });
                }
                let id = cosets.len();
                let tag = Weight::new(
                    next.iter()
                        .map(|&x| Q::new(BigInt::from(x), scale.clone()))
                        .collect(),
                );
                cosets.push(Coset {
                    id,
                    word: cosets[cur].word.prepend(i),
                    tag,
                });
                index.insert(next.clone(), id);
                keys.push(next);
                queue.push_back(id);
            }
        }
        Ok(CosetTable {
            parabolic,
            dominant,
            scale,
            cosets,
            index,
            complete,
        })
    }

    pub fn parabolic(&self) -> &[usize] {
        &self.parabolic
    }

    /// `lambda_P`
    pub fn dominant_weight(&self) -> &Weight {
        &self.dominant
    }

    pub fn cosets(&self) -> &[Coset] {
        &self.cosets
    }

    pub fn len(&self) -> usize {
        self.cosets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cosets.is_empty()
    }

    /// False when the enumeration was cut off at a maximal length.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// The coset whose tag is `tag`, if it was enumerated.
    pub fn locate(&self, tag: &Weight) -> Option<usize> {
        scaled_key(tag, &self.scale).and_then(|k| self.index.get(&k).copied())
    }

    /// Number of cosets of each minimal length.
    pub fn length_counts(&self) -> Vec<u64> {
        let top = self.cosets.iter().map(Coset::length).max().unwrap_or(0);
        let mut counts = vec![0u64; top + 1];
        for c in &self.cosets {
            counts[c.length()] += 1;
        }
        counts
    }
}

fn scaled_key(w: &Weight, scale: &BigInt) -> Option<Vec<i64>> {
    w.coords()
        .iter()
        .map(|c| {
            let x = c * Q::from_integer(scale.clone());
            if x.is_integer() {
                x.to_integer().to_i64()
            } else {
                None
            }
        })
        .collect()
}

/// One entry per coset of `W_P` in `W`, minimal representatives in BFS order.
pub fn coset_representatives(
    rs: &RootSystem,
    parabolic: &[usize],
    cap: usize,
) -> Result<Vec<Coset>> {
    Ok(CosetTable::enumerate(rs, parabolic, cap)?.cosets)
}

/// Coefficients of `sum_{u in W/W_P} q^{l(u)}`; the coefficient of `q^d` is
/// the Betti number `b^{2d}(G/P)`.
pub fn coset_poincare_polynomial(
    rs: &RootSystem,
    parabolic: &[usize],
    cap: usize,
) -> Result<Vec<u64>> {
    Ok(CosetTable::enumerate(rs, parabolic, cap)?.length_counts())
}
