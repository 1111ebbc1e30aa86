//! Reference oracles for the integration tests. They deliberately share no
//! code with the library beyond reading a polytope's `A` and `b`.

#![allow(dead_code)]

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use polycert::polytope::HPolytope;

/// All `k`-subsets of `0..m` in lexicographic order.
pub fn subsets(m: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut cur: Option<Vec<usize>> = (k <= m).then(|| (0..k).collect());
    std::iter::from_fn(move || {
        let out = cur.take()?;
        let mut next = out.clone();
        let mut i = k;
        while i > 0 {
            i -= 1;
            if next[i] < m - k + i {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                cur = Some(next);
                break;
            }
        }
        Some(out)
    })
}

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 1..=k as u128 {
        acc = acc * (n as u128 - k as u128 + i) / i;
    }
    acc
}

/// Vertex count of a simple polytope polar to the cyclic polytope `C(p, n)`,
/// from the Upper Bound Theorem.
pub fn upper_bound(n: u64, p: u64) -> u128 {
    if n.is_multiple_of(2) {
        let h = n / 2;
        binomial(p - h, h) * p as u128 / (p - h) as u128
    } else {
        let h = (n - 1) / 2;
        2 * binomial(p - h - 1, h)
    }
}

/// Facets of the cyclic polytope with `p` points in dimension `n`, by Gale's
/// evenness condition. These are the bases of the polar's vertices.
pub fn gale_facets(n: usize, p: usize) -> Vec<Vec<usize>> {
    subsets(p, n)
        .filter(|s| {
            let inside = |i: usize| s.binary_search(&i).is_ok();
            let outside: Vec<usize> = (0..p).filter(|&i| !inside(i)).collect();
            outside
                .windows(2)
                .all(|w| s.iter().filter(|&&k| w[0] < k && k < w[1]).count() % 2 == 0)
        })
        .collect()
}

fn rows_as_integers(p: &HPolytope) -> Vec<Vec<BigInt>> {
    (0..p.m())
        .map(|i| {
            let mut vals: Vec<BigRational> = p.a().row(i).to_vec();
            vals.push(p.b()[i].clone());
            let l = vals.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
            vals.iter().map(|v| (v * BigRational::from_integer(l.clone())).to_integer()).collect()
        })
        .collect()
}

/// Fraction-free Gauss-Jordan on an `n × (n+1)` integer matrix. Returns
/// `(d, d·x)` with `A x = b`, or `None` if `A` is singular.
fn bareiss(mut m: Vec<Vec<BigInt>>) -> Option<(BigInt, Vec<BigInt>)> {
    let n = m.len();
    let mut prev = BigInt::one();
    for k in 0..n {
        let r = (k..n).find(|&r| !m[r][k].is_zero())?;
        m.swap(k, r);
        for i in 0..n {
            if i == k {
                continue;
            }
            for j in 0..=n {
                if j == k {
                    continue;
                }
                let v = &m[k][k] * &m[i][j] - &m[i][k] * &m[k][j];
                let (q, rem) = v.div_rem(&prev);
                assert!(rem.is_zero(), "inexact fraction-free step");
                m[i][j] = q;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    Some((d, m.into_iter().map(|row| row[n].clone()).collect()))
}

fn rat(v: BigInt) -> BigRational {
    BigRational::from_integer(v)
}

/// Dense rational inverse by Gauss-Jordan with partial search for nonzero
/// pivots.
pub fn inverse(a: &[Vec<BigRational>]) -> Option<Vec<Vec<BigRational>>> {
    let n = a.len();
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            r
        })
        .collect();
    for k in 0..n {
        let r = (k..n).find(|&r| !m[r][k].is_zero())?;
        m.swap(k, r);
        let inv = m[k][k].recip();
        for x in m[k].iter_mut() {
            *x *= &inv;
        }
        let pivot = m[k].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != k && !row[k].is_zero() {
                let f = row[k].clone();
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Lex-feasibility of a basis straight from the definition: form
/// `X = A_I⁻¹ [b | −Id]_I` and compare every row of `A·X` with `[b | −Id]`.
pub fn lex_feasible_by_definition(p: &HPolytope, basis: &[usize]) -> bool {
    let (m, n) = (p.m(), p.n());
    let a_i: Vec<Vec<BigRational>> = basis.iter().map(|&i| p.a().row(i).to_vec()).collect();
    let Some(inv) = inverse(&a_i) else {
        return false;
    };
    let bt = |i: usize, c: usize| -> BigRational {
        if c == 0 {
            p.b()[i].clone()
        } else if c == 1 + i {
            -BigRational::one()
        } else {
            BigRational::zero()
        }
    };
    let x: Vec<Vec<BigRational>> = (0..n)
        .map(|r| {
            (0..=m)
                .map(|c| basis.iter().enumerate().fold(BigRational::zero(), |acc, (k, &i)| acc + &inv[r][k] * bt(i, c)))
                .collect()
        })
        .collect();
    (0..m).all(|j| {
        for c in 0..=m {
            let lhs = x.iter().enumerate().fold(BigRational::zero(), |acc, (r, xr)| acc + &p.a()[(j, r)] * &xr[c]);
            match lhs.cmp(&bt(j, c)) {
                Ordering::Greater => return true,
                Ordering::Less => return false,
                Ordering::Equal => {}
            }
        }
        true
    })
}

/// A nonsingular, classically feasible basis found by exhaustive scan.
#[derive(Clone, Debug)]
pub struct FeasibleBasis {
    pub basis: Vec<usize>,
    pub point: Vec<BigRational>,
    pub lex: bool,
}

/// Every nonsingular `n`-subset whose basic point satisfies `A x ≥ b`,
/// flagged with lex-feasibility.
pub fn scan_feasible(p: &HPolytope) -> Vec<FeasibleBasis> {
    let (m, n) = (p.m(), p.n());
    let rows = rows_as_integers(p);
    let mut out = Vec::new();
    for s in subsets(m, n) {
        let Some((d, dx)) = bareiss(s.iter().map(|&i| rows[i].clone()).collect()) else {
            continue;
        };
        let sign = d.signum();
        let mut degenerate = false;
        let feasible = (0..m).filter(|j| s.binary_search(j).is_err()).all(|j| {
            // d · (A_j x − b_j), sign-corrected
            let v = rows[j][..n].iter().zip(&dx).fold(BigInt::zero(), |acc, (a, y)| acc + a * y) - &rows[j][n] * &d;
            let v = v * &sign;
            degenerate |= v.is_zero();
            !v.is_negative()
        });
        if !feasible {
            continue;
        }
        let lex = !degenerate || lex_feasible_by_definition(p, &s);
        let point = dx.into_iter().map(|y| rat(y) / rat(d.clone())).collect();
        out.push(FeasibleBasis { basis: s, point, lex });
    }
    out
}

/// Vertices of the polytope with the feasible bases defining each.
pub fn vertices_by_scan(scan: &[FeasibleBasis]) -> BTreeMap<Vec<BigRational>, Vec<Vec<usize>>> {
    let mut out: BTreeMap<Vec<BigRational>, Vec<Vec<usize>>> = BTreeMap::new();
    for f in scan {
        out.entry(f.point.clone()).or_default().push(f.basis.clone());
    }
    out
}

/// Pairs of bases (as sorted index vectors) sharing all but one index.
pub fn pivot_edges(bases: &BTreeSet<Vec<usize>>) -> BTreeSet<(Vec<usize>, Vec<usize>)> {
    let list: Vec<&Vec<usize>> = bases.iter().collect();
    let mut out = BTreeSet::new();
    for (i, a) in list.iter().enumerate() {
        for b in &list[i + 1..] {
            let common = a.iter().filter(|x| b.binary_search(x).is_ok()).count();
            if common + 1 == a.len() {
                out.insert(((*a).clone(), (*b).clone()));
            }
        }
    }
    out
}

/// All-pairs shortest path lengths by BFS from every vertex; `None` if the
/// graph is disconnected.
pub fn all_pairs_diameter(adj: &[Vec<usize>]) -> Option<usize> {
    let mut best = 0;
    for s in 0..adj.len() {
        let mut dist = vec![usize::MAX; adj.len()];
        dist[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            for &v in &adj[u] {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    q.push_back(v);
                }
            }
        }
        best = best.max(*dist.iter().max()?);
        if dist.contains(&usize::MAX) {
            return None;
        }
    }
    Some(best)
}

/// Sanity checks on the oracles themselves against hand-computed values.
pub fn oracle_self_checks() {
    assert_eq!(subsets(5, 2).count(), 10);
    assert_eq!(subsets(3, 0).count(), 1);
    assert_eq!(binomial(20, 10), 184_756);
    assert_eq!(upper_bound(6, 12), 112);
    assert_eq!(upper_bound(3, 6), 8);
    assert_eq!(gale_facets(6, 12).len(), 112);
    assert_eq!(gale_facets(2, 7).len(), 7);
    let square = HPolytope::from_int_rows(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]], &[-1, -1, -1, -1]);
    assert_eq!(scan_feasible(&square).len(), 4);
    assert_eq!(all_pairs_diameter(&[vec![1], vec![0, 2], vec![1]]), Some(2));
    assert_eq!(all_pairs_diameter(&[vec![], vec![]]), None);
}
