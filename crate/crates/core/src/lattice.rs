//! Exact integer linear algebra on small lattices.
//!
//! Everything here works on `i64` input vectors and does the elimination in
//! `BigInt`, so determinants and ranks are exact regardless of entry growth.
//! The cone routines assume pointed cones, which is all the Newton and fan
//! code ever needs.

use std::collections::{BTreeSet, HashSet, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A lattice point or integer vector.
pub type Point = Vec<i64>;

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// gcd of the absolute values; 0 for the zero vector.
pub fn gcd_all(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |g, &x| g.gcd(&x))
}

pub fn primitive(v: &[i64]) -> Point {
    let g = gcd_all(v);
    if g == 0 {
        return v.to_vec();
    }
    v.iter().map(|x| x / g).collect()
}

pub fn is_primitive(v: &[i64]) -> bool {
    gcd_all(v) == 1
}

fn to_big(rows: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

/// Determinant of a square matrix given by rows (Bareiss elimination).
pub fn det(rows: &[Vec<i64>]) -> BigInt {
    det_big(to_big(rows))
}

fn det_big(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * m[n - 1][n - 1].clone()
}

/// Rank of a (possibly rectangular) integer matrix given by rows.
#[allow(clippy::needless_range_loop)]
pub fn rank(rows: &[Vec<i64>]) -> usize {
    let mut m = to_big(rows);
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..m.len() {
            if m[i][c].is_zero() {
                continue;
            }
            let (a, b) = (m[r][c].clone(), m[i][c].clone());
            for j in c..cols {
                let v = &m[i][j] * &a - &m[r][j] * &b;
                m[i][j] = v;
            }
            let g = m[i].iter().fold(BigInt::zero(), |g, x| g.gcd(x));
            if !g.is_zero() && !g.is_one() {
                for x in m[i].iter_mut() {
                    *x = &*x / &g;
                }
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

/// Normal of the hyperplane spanned by `rows` (n-1 vectors in Z^n), chosen
/// so that `det([x; rows]) = <N, x>`.
pub fn cofactor_normal(rows: &[Vec<i64>], n: usize) -> Vec<BigInt> {
    debug_assert_eq!(rows.len() + 1, n);
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<i64>> = rows
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|&(c, _)| c != j)
                        .map(|(_, &x)| x)
                        .collect()
                })
                .collect();
            let d = det(&minor);
            if j % 2 == 0 {
                d
            } else {
                -d
            }
        })
        .collect()
}

/// Primitive integer normal of the hyperplane through `rows`, or `None`
/// when the rows are dependent.
pub fn primitive_normal(rows: &[Vec<i64>], n: usize) -> Option<Point> {
    let big = cofactor_normal(rows, n);
    let g = big.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return None;
    }
    big.iter().map(|x| (x / &g).to_i64()).collect()
}

/// Affine dimension of a point set; `None` when empty.
pub fn affine_dim(points: &[Point]) -> Option<usize> {
    let (first, rest) = points.split_first()?;
    let diffs: Vec<Point> = rest
        .iter()
        .map(|p| p.iter().zip(first).map(|(a, b)| a - b).collect())
        .collect();
    Some(rank(&diffs))
}

/// All k-element index combinations of `0..n`, in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        go(0, n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

/// Which vertex a pulling triangulation pulls first at every level.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pull {
    LexMin,
    LexMax,
}

/// Coordinate columns on which the span of `vecs` projects isomorphically.
fn spanning_columns(vecs: &[&Point], r: usize) -> Vec<usize> {
    let dim = vecs.first().map_or(0, |v| v.len());
    let mut cols = Vec::with_capacity(r);
    for c in 0..dim {
        let mut trial = cols.clone();
        trial.push(c);
        let proj: Vec<Point> = vecs
            .iter()
            .map(|v| trial.iter().map(|&t| v[t]).collect())
            .collect();
        if rank(&proj) == trial.len() {
            cols = trial;
            if cols.len() == r {
                break;
            }
        }
    }
    cols
}

/// Facets of the pointed cone spanned by `vectors[idx]`, as index sets.
pub fn cone_facets(vectors: &[Point], idx: &[usize]) -> Vec<Vec<usize>> {
    let sub: Vec<&Point> = idx.iter().map(|&i| &vectors[i]).collect();
    let owned: Vec<Point> = sub.iter().map(|v| (*v).clone()).collect();
    let r = rank(&owned);
    if r <= 1 {
        return Vec::new();
    }
    let cols = spanning_columns(&sub, r);
    let proj: Vec<Point> = sub
        .iter()
        .map(|v| cols.iter().map(|&c| v[c]).collect())
        .collect();
    let mut seen = BTreeSet::new();
    for combo in combinations(proj.len(), r - 1) {
        let rows: Vec<Point> = combo.iter().map(|&i| proj[i].clone()).collect();
        let Some(normal) = primitive_normal(&rows, r) else {
            continue;
        };
        let vals: Vec<i64> = proj.iter().map(|w| dot(&normal, w)).collect();
        let nonneg = vals.iter().all(|&s| s >= 0);
        let nonpos = vals.iter().all(|&s| s <= 0);
        if nonneg || nonpos {
            let facet: Vec<usize> = vals
                .iter()
                .enumerate()
                .filter(|&(_, &s)| s == 0)
                .map(|(i, _)| idx[i])
                .collect();
            seen.insert(facet);
        }
    }
    seen.into_iter().collect()
}

/// Pulling triangulation of the cone spanned by `vectors`. Returns simplices
/// as index lists; each simplex has `rank(vectors)` members.
///
/// The vectors must generate a pointed cone and every vector must span an
/// extreme ray, or lie on an affine hyperplane missing the origin.
pub fn triangulate_cone(vectors: &[Point], pull: Pull) -> Vec<Vec<usize>> {
    let idx: Vec<usize> = (0..vectors.len()).collect();
    pull_rec(vectors, &idx, pull)
}

fn pull_rec(vectors: &[Point], idx: &[usize], pull: Pull) -> Vec<Vec<usize>> {
    let apex = match pull {
        Pull::LexMin => idx.iter().copied().min_by(|&a, &b| vectors[a].cmp(&vectors[b])),
        Pull::LexMax => idx.iter().copied().max_by(|&a, &b| vectors[a].cmp(&vectors[b])),
    };
    let Some(apex) = apex else {
        return Vec::new();
    };
    let owned: Vec<Point> = idx.iter().map(|&i| vectors[i].clone()).collect();
    if rank(&owned) <= 1 {
        return vec![vec![apex]];
    }
    let mut out = Vec::new();
    for facet in cone_facets(vectors, idx) {
        if facet.contains(&apex) {
            continue;
        }
        for mut simplex in pull_rec(vectors, &facet, pull) {
            simplex.insert(0, apex);
            out.push(simplex);
        }
    }
    out
}

/// `k! * Vol_k(cone(vectors))` for vectors spanning Z^k, via a pulling
/// triangulation.
pub fn normalized_cone_volume(vectors: &[Point], pull: Pull) -> BigInt {
    triangulate_cone(vectors, pull)
        .iter()
        .map(|s| {
            let rows: Vec<Point> = s.iter().map(|&i| vectors[i].clone()).collect();
            det(&rows).abs()
        })
        .sum()
}

/// Column matrix `M` with the basis vectors as columns, as rows.
fn column_matrix(basis: &[Point]) -> Vec<Point> {
    let k = basis.len();
    (0..k).map(|r| basis.iter().map(|v| v[r]).collect()).collect()
}

/// Adjugate of a square matrix (rows), so that `M * adj = det * I`.
#[allow(clippy::needless_range_loop)]
fn adjugate(m: &[Point]) -> Vec<Vec<BigInt>> {
    let k = m.len();
    let mut adj = vec![vec![BigInt::zero(); k]; k];
    for i in 0..k {
        for j in 0..k {
            let minor: Vec<Point> = m
                .iter()
                .enumerate()
                .filter(|&(r, _)| r != i)
                .map(|(_, row)| {
                    row.iter()
                        .enumerate()
                        .filter(|&(c, _)| c != j)
                        .map(|(_, &x)| x)
                        .collect()
                })
                .collect();
            let d = det(&minor);
            adj[j][i] = if (i + j) % 2 == 0 { d } else { -d };
        }
    }
    adj
}

/// Coordinates of `x` in the given basis, or `None` if the basis is singular.
pub fn coords_in_basis(basis: &[Point], x: &[i64]) -> Option<Vec<BigRational>> {
    let m = column_matrix(basis);
    let d = det(&m);
    if d.is_zero() {
        return None;
    }
    let adj = adjugate(&m);
    Some(
        adj.iter()
            .map(|row| {
                let num: BigInt = row.iter().zip(x).map(|(a, &b)| a * BigInt::from(b)).sum();
                BigRational::new(num, d.clone())
            })
            .collect(),
    )
}

/// A nonzero lattice point of the half-open fundamental parallelepiped
/// `{ sum l_i v_i : 0 <= l_i < 1 }`, with its coordinates `l_i = num_i / mult`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoxPoint {
    pub point: Point,
    pub numerators: Vec<i64>,
    pub mult: i64,
}

/// All nonzero lattice points of the fundamental parallelepiped of a
/// full-rank square basis. There are `|det| - 1` of them.
pub fn parallelepiped_points(basis: &[Point]) -> Vec<BoxPoint> {
    let m = column_matrix(basis);
    let d = det(&m);
    let mult = d.abs().to_i64().expect("multiplicity fits in i64");
    if mult <= 1 {
        return Vec::new();
    }
    let sign: i64 = if d.is_negative() { -1 } else { 1 };
    let adj = adjugate(&m);
    let k = basis.len();
    let gens: Vec<Vec<i64>> = (0..k)
        .map(|j| {
            (0..k)
                .map(|i| {
                    let v = (&adj[i][j] * BigInt::from(sign)).mod_floor(&BigInt::from(mult));
                    v.to_i64().unwrap()
                })
                .collect()
        })
        .collect();
    let zero = vec![0i64; k];
    let mut seen: HashSet<Vec<i64>> = HashSet::from([zero.clone()]);
    let mut queue = VecDeque::from([zero]);
    while let Some(cur) = queue.pop_front() {
        for g in &gens {
            let next: Vec<i64> = cur
                .iter()
                .zip(g)
                .map(|(a, b)| (a + b).rem_euclid(mult))
                .collect();
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    let mut out: Vec<BoxPoint> = seen
        .into_iter()
        .filter(|k| k.iter().any(|&x| x != 0))
        .map(|nums| {
            let point = (0..k)
                .map(|r| {
                    let s: i64 = (0..k).map(|c| m[r][c] * nums[c]).sum();
                    debug_assert_eq!(s % mult, 0);
                    s / mult
                })
                .collect();
            BoxPoint {
                point,
                numerators: nums,
                mult,
            }
        })
        .collect();
    out.sort_by(|a, b| a.numerators.cmp(&b.numerators));
    out
}
