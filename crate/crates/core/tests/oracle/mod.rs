//! Reference computations written independently of the library, from the
//! Cartan matrix alone, in integer arithmetic.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet, VecDeque};

/// Symmetrizer `d` with `d_i a_ij = d_j a_ji`, as integers, scaled so the
/// smallest entry is 1.
pub fn symmetrizer(cartan: &[Vec<i64>]) -> Vec<i64> {
    let n = cartan.len();
    // work with numerator/denominator pairs, then clear denominators
    let mut num = vec![0i64; n];
    let mut den = vec![0i64; n];
    num[0] = 1;
    den[0] = 1;
    let mut queue = VecDeque::from([0]);
    while let Some(i) = queue.pop_front() {
        for j in 0..n {
            if j != i && cartan[i][j] != 0 && den[j] == 0 {
                // d_j = d_i a_ij / a_ji
                num[j] = num[i] * cartan[i][j];
                den[j] = den[i] * cartan[j][i];
                queue.push_back(j);
            }
        }
    }
    let l = den.iter().fold(1, |acc, &d| lcm(acc, d.abs()));
    let mut d: Vec<i64> = (0..n).map(|i| num[i] * (l / den[i])).collect();
    let g = d.iter().fold(0, |acc, &x| gcd(acc, x.abs()));
    for x in d.iter_mut() {
        *x /= g;
    }
    d
}

pub fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: i64, b: i64) -> i64 {
    a / gcd(a, b) * b
}

/// `(x, y)` up to a positive factor: `sum_ij x_i d_i a_ij y_j`.
pub fn form(cartan: &[Vec<i64>], d: &[i64], x: &[i64], y: &[i64]) -> i64 {
    let n = cartan.len();
    (0..n)
        .map(|i| x[i] * d[i] * (0..n).map(|j| cartan[i][j] * y[j]).sum::<i64>())
        .sum()
}

/// Positive roots in simple-root coordinates, by closing the simple roots
/// under simple reflections.
pub fn positive_roots(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = cartan.len();
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut queue: VecDeque<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    while let Some(v) = queue.pop_front() {
        if !seen.insert(v.clone()) {
            continue;
        }
        for i in 0..n {
            // s_i v = v - <v, alpha_i^vee> alpha_i
            let c: i64 = (0..n).map(|j| cartan[i][j] * v[j]).sum();
            let mut w = v.clone();
            w[i] -= c;
            if !seen.contains(&w) {
                queue.push_back(w);
            }
        }
    }
    let mut pos: Vec<Vec<i64>> = seen.into_iter().filter(|v| v.iter().all(|&c| c >= 0)).collect();
    pos.sort();
    pos
}

/// Number of long roots, positive and negative.
pub fn long_root_count(cartan: &[Vec<i64>]) -> usize {
    let d = symmetrizer(cartan);
    let pos = positive_roots(cartan);
    let norms: Vec<i64> = pos.iter().map(|r| form(cartan, &d, r, r)).collect();
    let max = *norms.iter().max().unwrap();
    2 * norms.iter().filter(|&&x| x == max).count()
}

/// Orbit of the dominant weight with Dynkin labels `labels` under the simple
/// reflections.
pub fn orbit(cartan: &[Vec<i64>], labels: &[i64]) -> Vec<Vec<i64>> {
    let n = cartan.len();
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut stack = vec![labels.to_vec()];
    while let Some(mu) = stack.pop() {
        if !seen.insert(mu.clone()) {
            continue;
        }
        for i in 0..n {
            // s_i mu = mu - mu_i alpha_i, and alpha_i has labels a_ji
            let mut nu = mu.clone();
            for (j, x) in nu.iter_mut().enumerate() {
                *x -= mu[i] * cartan[j][i];
            }
            if !seen.contains(&nu) {
                stack.push(nu);
            }
        }
    }
    seen.into_iter().collect()
}

/// Coset Poincare polynomial of `W / W_P` for the standard parabolic on
/// `parabolic` (0-based). The minimal length of the coset sending `lambda`
/// to `mu` is the number of positive roots `beta` with `(mu, beta) < 0`.
pub fn coset_poincare(cartan: &[Vec<i64>], parabolic: &[usize]) -> Vec<u64> {
    let n = cartan.len();
    let d = symmetrizer(cartan);
    let pos = positive_roots(cartan);
    let lambda: Vec<i64> = (0..n).map(|i| i64::from(!parabolic.contains(&i))).collect();
    let mut counts = vec![0u64; pos.len() + 1];
    for mu in orbit(cartan, &lambda) {
        // (mu, alpha_i) = d_i mu_i up to the common factor
        let len = pos
            .iter()
            .filter(|b| (0..n).map(|i| b[i] * d[i] * mu[i]).sum::<i64>() < 0)
            .count();
        counts[len] += 1;
    }
    while counts.len() > 1 && counts.last() == Some(&0) {
        counts.pop();
    }
    counts
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// `dim H_T^{2d}(G/P) = sum_j b_{2j} dim Sym^{d-j}(t*)`.
pub fn equivariant_betti(poincare: &[u64], rank: usize, d: u64) -> u64 {
    (0..=d)
        .filter(|&j| (j as usize) < poincare.len())
        .map(|j| poincare[j as usize] * binomial(d - j + rank as u64 - 1, rank as u64 - 1))
        .sum()
}

/// Fraction-free determinant.
pub fn determinant(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| a[i][k] != 0) else {
            return 0;
        };
        if p != k {
            a.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

/// Indices orthogonal to the root of largest height.
pub fn xi(cartan: &[Vec<i64>]) -> Vec<usize> {
    let d = symmetrizer(cartan);
    let pos = positive_roots(cartan);
    let top = pos.iter().max_by_key(|r| r.iter().sum::<i64>()).unwrap();
    let n = cartan.len();
    (0..n)
        .filter(|&i| {
            let e: Vec<i64> = (0..n).map(|j| i64::from(i == j)).collect();
            form(cartan, &d, top, &e) == 0
        })
        .collect()
}
