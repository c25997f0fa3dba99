//! Reference implementations used only by the test suites. Nothing here
//! calls into the library's algebra: matrices are plain nested vectors,
//! inverses come from Gauss-Jordan elimination and Möbius values from the
//! defining recursion.

#![allow(dead_code, clippy::needless_range_loop)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use moebius_dual::RationalMatrix;

pub type Q = BigRational;
pub type Dense = Vec<Vec<Q>>;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(n.into())
}

pub fn binom(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn qbinom(n: usize, k: usize) -> Q {
    Q::from_integer(binom(n as u64, k as u64))
}

pub fn dense(m: &RationalMatrix) -> Dense {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

pub fn identity(n: usize) -> Dense {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Q::one() } else { Q::zero() })
                .collect()
        })
        .collect()
}

pub fn mul(a: &Dense, b: &Dense) -> Dense {
    let (n, m, p) = (a.len(), b.len(), b.first().map_or(0, Vec::len));
    let mut out = vec![vec![Q::zero(); p]; n];
    for i in 0..n {
        for k in 0..m {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..p {
                if !b[k][j].is_zero() {
                    out[i][j] += &a[i][k] * &b[k][j];
                }
            }
        }
    }
    out
}

pub fn transpose(a: &Dense) -> Dense {
    let cols = a.first().map_or(0, Vec::len);
    (0..cols)
        .map(|j| a.iter().map(|r| r[j].clone()).collect())
        .collect()
}

pub fn inverse(a: &Dense) -> Option<Dense> {
    let n = a.len();
    let mut m: Dense = a.clone();
    let mut inv = identity(n);
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        inv.swap(col, pivot);
        let p = m[col][col].clone();
        for j in 0..n {
            m[col][j] /= &p;
            inv[col][j] /= &p;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for j in 0..n {
                    let (mc, ic) = (m[col][j].clone(), inv[col][j].clone());
                    m[r][j] -= &f * mc;
                    inv[r][j] -= &f * ic;
                }
            }
        }
    }
    Some(inv)
}

pub fn is_identity(a: &Dense) -> bool {
    a == &identity(a.len())
}

pub fn nonnegative(a: &Dense) -> bool {
    a.iter().flatten().all(|x| !x.is_negative())
}

pub fn row_sums(a: &Dense) -> Vec<Q> {
    a.iter().map(|r| r.iter().sum()).collect()
}

pub fn stochastic(a: &Dense) -> bool {
    nonnegative(a) && row_sums(a).iter().all(One::is_one)
}

pub fn substochastic(a: &Dense) -> bool {
    nonnegative(a) && row_sums(a).iter().all(|s| *s <= Q::one())
}

pub fn zeta(n: usize, leq: impl Fn(usize, usize) -> bool) -> Dense {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if leq(i, j) { Q::one() } else { Q::zero() })
                .collect()
        })
        .collect()
}

/// `μ(a,a) = 1`, `μ(a,b) = −Σ_{a ⪯ c ≺ b} μ(a,c)`; zero when incomparable.
pub fn mu_recursion(n: usize, leq: impl Fn(usize, usize) -> bool) -> Vec<Vec<i64>> {
    let below: Vec<usize> = (0..n)
        .map(|b| (0..n).filter(|&c| leq(c, b)).count())
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&b| below[b]);
    let mut mu = vec![vec![0i64; n]; n];
    for a in 0..n {
        for &b in &order {
            if !leq(a, b) {
                continue;
            }
            mu[a][b] = if a == b {
                1
            } else {
                -(0..n)
                    .filter(|&c| c != b && leq(a, c) && leq(c, b))
                    .map(|c| mu[a][c])
                    .sum::<i64>()
            };
        }
    }
    mu
}

pub fn subset_leq(a: u32, b: u32) -> bool {
    a & !b == 0
}

/// `α` refines `β` when any two points sharing an `α` block share a `β` block.
pub fn refines(alpha: &[u8], beta: &[u8]) -> bool {
    let n = alpha.len();
    (0..n).all(|i| (0..n).all(|j| alpha[i] != alpha[j] || beta[i] == beta[j]))
}

pub fn blocks(rgs: &[u8]) -> usize {
    rgs.iter().copied().max().map_or(0, |m| m as usize + 1)
}

pub fn factorial(n: usize) -> i64 {
    (1..=n as i64).product()
}

/// `(P^{(cum)}_b)`: forward set kernel from the atoms of an offspring law.
pub fn forward_set_kernel(n: usize, atoms: &[(Vec<u32>, Q)], masks: &[u32]) -> Dense {
    let pos = |m: u32| masks.iter().position(|&x| x == m).expect("mask listed");
    let mut p = vec![vec![Q::zero(); masks.len()]; masks.len()];
    for (ai, &a) in masks.iter().enumerate() {
        for (nu, w) in atoms {
            let image = (0..n)
                .filter(|&i| a >> i & 1 == 1)
                .fold(0, |acc, i| acc | nu[i]);
            p[ai][pos(image)] += w;
        }
    }
    p
}

/// `H̃_ĥ(i,j) = C(i,j)/C(N,j)`.
pub fn hypergeometric(n: usize) -> Dense {
    (0..=n)
        .map(|i| (0..=n).map(|j| qbinom(i, j) / qbinom(n, j)).collect())
        .collect()
}

/// `H̃_ĥ⁻¹(i,j) = (−1)^{i−j} C(i,j) C(N,i)`.
pub fn hypergeometric_inverse(n: usize) -> Dense {
    (0..=n)
        .map(|i| {
            (0..=n)
                .map(|j| {
                    let v = qbinom(i, j) * qbinom(n, i);
                    if i >= j && (i - j) % 2 == 1 {
                        -v
                    } else {
                        v
                    }
                })
                .collect()
        })
        .collect()
}

/// Compositions of `total` into `parts` positive integers.
pub fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 1..=total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// `C(N,j)/C(N,i) · Σ_{l_1+…+l_j=i, l_r≥1} E[∏_r C(|ν_r|, l_r)]`.
pub fn moment_formula(n: usize, atoms: &[(Vec<u32>, Q)]) -> Dense {
    (0..=n)
        .map(|i| {
            (0..=n)
                .map(|j| {
                    let expectation: Q = compositions(i, j)
                        .iter()
                        .map(|l| {
                            atoms
                                .iter()
                                .map(|(nu, w)| {
                                    l.iter().enumerate().fold(w.clone(), |acc, (r, &lr)| {
                                        acc * qbinom(nu[r].count_ones() as usize, lr)
                                    })
                                })
                                .sum::<Q>()
                        })
                        .sum();
                    qbinom(n, j) / qbinom(n, i) * expectation
                })
                .collect()
        })
        .collect()
}

/// Wright-Fisher atoms: child `c` picks parent `code` digit `c` in base `N`.
pub fn wf_atoms(n: usize) -> Vec<(Vec<u32>, Q)> {
    let count = n.pow(n as u32);
    (0..count)
        .map(|mut code| {
            let mut nu = vec![0u32; n];
            for child in 0..n {
                nu[code % n] |= 1 << child;
                code /= n;
            }
            (nu, q(1, count as i64))
        })
        .collect()
}

/// Moran atoms: ordered pair `(b, d)`, `b` reproduces into `d`'s slot.
pub fn moran_atoms(n: usize) -> Vec<(Vec<u32>, Q)> {
    let mut out = Vec::new();
    for b in 0..n {
        for d in 0..n {
            if b != d {
                let mut nu: Vec<u32> = (0..n).map(|i| 1 << i).collect();
                nu[b] |= 1 << d;
                nu[d] = 0;
                out.push((nu, q(1, (n * (n - 1)) as i64)));
            }
        }
    }
    out
}

/// Sums the columns of `m` over classes of `class_of`, reading each class
/// from its first member row; `None` if some member disagrees.
pub fn coarsen_rows(m: &Dense, class_of: &[usize], classes: usize) -> Option<Dense> {
    let mut out: Vec<Option<Vec<Q>>> = vec![None; classes];
    for (a, row) in m.iter().enumerate() {
        let mut sums = vec![Q::zero(); classes];
        for (b, x) in row.iter().enumerate() {
            sums[class_of[b]] += x;
        }
        match &out[class_of[a]] {
            Some(prev) if *prev != sums => return None,
            Some(_) => {}
            None => out[class_of[a]] = Some(sums),
        }
    }
    out.into_iter().collect()
}
