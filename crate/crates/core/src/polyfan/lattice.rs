//! Integer linear algebra: Hermite normal form, integer kernels, saturation,
//! fraction-free rank and determinants.
//!
//! Vectors are stored as `i64`; every elimination runs on `BigInt` (or on
//! checked `i128` with a `BigInt` fallback) so intermediate growth never
//! overflows.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::FanError;

pub(crate) type BigVec = Vec<BigInt>;

pub fn gcd(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

/// `v / gcd(|v_i|)`, keeping the sign pattern.
pub fn primitive(v: &[i64]) -> Result<Vec<i64>, FanError> {
    let g = v.iter().fold(0i64, |g, &x| g.gcd(&x));
    if g == 0 {
        return Err(FanError::ZeroVector);
    }
    Ok(v.iter().map(|x| x / g).collect())
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    let s: i128 = a.iter().zip(b).map(|(&x, &y)| x as i128 * y as i128).sum();
    i64::try_from(s).expect("integer overflow in dot product")
}

pub(crate) fn to_big(v: &[i64]) -> BigVec {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub(crate) fn from_big(v: &[BigInt]) -> Vec<i64> {
    v.iter().map(|x| x.to_i64().expect("coordinate exceeds the i64 range")).collect()
}

pub(crate) fn big_dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Divides by the content; the zero vector is returned unchanged.
pub(crate) fn big_primitive(v: &mut [BigInt]) {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x /= &g;
        }
    }
}

/// In-place row echelonization by unimodular row operations, pivoting only in
/// the first `pivot_cols` columns. Pivots end up positive with the entries
/// above each pivot reduced into `[0, pivot)`. Returns the number of pivots;
/// rows from that index on are zero in the pivot columns.
pub(crate) fn echelonize(rows: &mut [BigVec], pivot_cols: usize) -> usize {
    let mut r = 0;
    for col in 0..pivot_cols {
        if r == rows.len() {
            break;
        }
        loop {
            let best = (r..rows.len())
                .filter(|&i| !rows[i][col].is_zero())
                .min_by(|&i, &j| rows[i][col].abs().cmp(&rows[j][col].abs()));
            let Some(best) = best else { break };
            rows.swap(r, best);
            let mut clean = true;
            for i in r + 1..rows.len() {
                if rows[i][col].is_zero() {
                    continue;
                }
                let q = rows[i][col].div_floor(&rows[r][col]);
                let (head, tail) = rows.split_at_mut(i);
                for (x, p) in tail[0].iter_mut().zip(&head[r]) {
                    *x -= &q * p;
                }
                if !rows[i][col].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if rows[r][col].is_zero() {
            continue;
        }
        if rows[r][col].is_negative() {
            for x in rows[r].iter_mut() {
                *x = -&*x;
            }
        }
        for i in 0..r {
            let q = rows[i][col].div_floor(&rows[r][col]);
            if q.is_zero() {
                continue;
            }
            let (head, tail) = rows.split_at_mut(r);
            for (x, p) in head[i].iter_mut().zip(&tail[0]) {
                *x -= &q * p;
            }
        }
        r += 1;
    }
    r
}

/// Hermite normal form basis of the lattice generated by `rows`.
pub fn hnf(rows: &[Vec<i64>], n: usize) -> Vec<Vec<i64>> {
    let mut m: Vec<BigVec> = rows.iter().map(|r| to_big(r)).collect();
    let r = echelonize(&mut m, n);
    m[..r].iter().map(|v| from_big(v)).collect()
}

/// Basis (in Hermite normal form) of `{x ∈ ℤ^n : a·x = 0 for every row a}`.
pub fn integer_kernel(rows: &[Vec<i64>], n: usize) -> Vec<Vec<i64>> {
    let m = rows.len();
    let mut aug: Vec<BigVec> = (0..n)
        .map(|i| {
            let mut v: BigVec = rows.iter().map(|r| BigInt::from(r[i])).collect();
            v.extend((0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }));
            v
        })
        .collect();
    let r = echelonize(&mut aug, m);
    let basis: Vec<Vec<i64>> = aug[r..].iter().map(|v| from_big(&v[m..])).collect();
    hnf(&basis, n)
}

/// Hermite basis of `span_ℚ(rows) ∩ ℤ^n`.
pub fn saturate(rows: &[Vec<i64>], n: usize) -> Vec<Vec<i64>> {
    if rows.is_empty() {
        return Vec::new();
    }
    integer_kernel(&integer_kernel(rows, n), n)
}

/// Index of the lattice spanned by `rows` in `ℤ^n`, `None` when not full rank.
pub fn lattice_index(rows: &[Vec<i64>], n: usize) -> Option<BigInt> {
    let mut m: Vec<BigVec> = rows.iter().map(|r| to_big(r)).collect();
    let r = echelonize(&mut m, n);
    if r < n {
        return None;
    }
    Some((0..n).map(|i| m[i][i].clone()).product())
}

/// Canonical representative of the ray through `v` modulo the span of an HNF
/// basis: pivot coordinates are cleared by positive rescaling, then the result
/// is made primitive. Returns the zero vector if `v` lies in the span.
pub(crate) fn reduce_modulo(v: &[i64], hnf_basis: &[Vec<i64>]) -> Vec<i64> {
    let mut w = to_big(v);
    for h in hnf_basis {
        let pivot = h.iter().position(|&x| x != 0).expect("zero row in basis");
        if w[pivot].is_zero() {
            continue;
        }
        let hp = BigInt::from(h[pivot]);
        let wp = w[pivot].clone();
        for (x, &y) in w.iter_mut().zip(h) {
            *x = &hp * &*x - &wp * BigInt::from(y);
        }
        big_primitive(&mut w);
    }
    from_big(&w)
}

/// Bareiss elimination over checked `i128`; `None` on overflow.
fn bareiss_i128(rows: &[Vec<i64>], ncols: usize) -> Option<(usize, i128)> {
    let mut m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut prev: i128 = 1;
    let mut sign: i128 = 1;
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| m[i][col] != 0) else { continue };
        if p != r {
            m.swap(p, r);
            sign = -sign;
        }
        for i in r + 1..m.len() {
            for j in col + 1..ncols {
                let v = m[r][col].checked_mul(m[i][j])?.checked_sub(m[i][col].checked_mul(m[r][j])?)?;
                m[i][j] = v / prev;
            }
            m[i][col] = 0;
        }
        prev = m[r][col];
        r += 1;
        if r == m.len() {
            break;
        }
    }
    Some((r, sign * prev))
}

fn bareiss_big(rows: &[Vec<i64>], ncols: usize) -> (usize, BigInt) {
    let mut m: Vec<BigVec> = rows.iter().map(|r| to_big(r)).collect();
    let mut prev = BigInt::one();
    let mut sign = BigInt::one();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else { continue };
        if p != r {
            m.swap(p, r);
            sign = -sign;
        }
        for i in r + 1..m.len() {
            for j in col + 1..ncols {
                let v = &m[r][col] * &m[i][j] - &m[i][col] * &m[r][j];
                m[i][j] = v / &prev;
            }
            m[i][col] = BigInt::zero();
        }
        prev = m[r][col].clone();
        r += 1;
        if r == m.len() {
            break;
        }
    }
    (r, sign * prev)
}

/// Rank over ℚ by fraction-free elimination.
pub fn rank(rows: &[Vec<i64>]) -> usize {
    let Some(ncols) = rows.first().map(|r| r.len()) else { return 0 };
    match bareiss_i128(rows, ncols) {
        Some((r, _)) => r,
        None => bareiss_big(rows, ncols).0,
    }
}

/// Determinant of a square integer matrix.
pub fn det(rows: &[Vec<i64>]) -> BigInt {
    let n = rows.len();
    if n == 0 {
        return BigInt::one();
    }
    assert!(rows.iter().all(|r| r.len() == n), "determinant of a non-square matrix");
    let (r, d) = match bareiss_i128(rows, n) {
        Some((r, d)) => (r, BigInt::from(d)),
        None => bareiss_big(rows, n),
    };
    if r < n {
        BigInt::zero()
    } else {
        d
    }
}

/// Rows `i` of `rows` that are linearly independent, chosen greedily.
pub fn independent_subset(rows: &[Vec<i64>]) -> Vec<usize> {
    let mut chosen: Vec<Vec<i64>> = Vec::new();
    let mut idx = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        chosen.push(r.clone());
        if rank(&chosen) == chosen.len() {
            idx.push(i);
        } else {
            chosen.pop();
        }
    }
    idx
}

/// Matrix–vector product `m · v`.
pub fn mat_vec(m: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    m.iter().map(|row| dot(row, v)).collect()
}

/// Inverse of an integer matrix with determinant ±1.
pub fn unimodular_inverse(m: &[Vec<i64>]) -> Option<Vec<Vec<i64>>> {
    let n = m.len();
    let d = det(m);
    if d.abs() != BigInt::one() {
        return None;
    }
    // [m | I] row-reduced by unimodular operations ends as [I | m^{-1}].
    let mut aug: Vec<BigVec> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut v = to_big(row);
            v.extend((0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }));
            v
        })
        .collect();
    let r = echelonize(&mut aug, n);
    debug_assert_eq!(r, n);
    Some(aug.iter().map(|v| from_big(&v[n..])).collect())
}

/// `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Coordinates of `v_1 ∧ … ∧ v_p` in the basis `e_J`, `J` running over the
/// `p`-subsets of coordinates in lexicographic order.
pub fn wedge(vectors: &[&[i64]], column_sets: &[Vec<usize>]) -> Vec<i64> {
    let p = vectors.len();
    let mut buf = vec![0i128; p * p];
    column_sets
        .iter()
        .map(|cols| {
            for (i, v) in vectors.iter().enumerate() {
                for (j, &c) in cols.iter().enumerate() {
                    buf[i * p + j] = i128::from(v[c]);
                }
            }
            let d = match small_det(&mut buf, p) {
                Some(d) => BigInt::from(d),
                None => {
                    let minor: Vec<Vec<i64>> = vectors.iter().map(|v| cols.iter().map(|&c| v[c]).collect()).collect();
                    det(&minor)
                }
            };
            d.to_i64().expect("wedge coordinate exceeds the i64 range")
        })
        .collect()
}

/// Bareiss determinant of the row-major `p × p` matrix in `m`, destroying it;
/// `None` on `i128` overflow.
fn small_det(m: &mut [i128], p: usize) -> Option<i128> {
    let mut prev: i128 = 1;
    let mut sign: i128 = 1;
    for k in 0..p {
        let Some(piv) = (k..p).find(|&i| m[i * p + k] != 0) else { return Some(0) };
        if piv != k {
            for j in 0..p {
                m.swap(piv * p + j, k * p + j);
            }
            sign = -sign;
        }
        for i in k + 1..p {
            for j in k + 1..p {
                let v = m[k * p + k].checked_mul(m[i * p + j])?.checked_sub(m[i * p + k].checked_mul(m[k * p + j])?)?;
                m[i * p + j] = v / prev;
            }
        }
        prev = m[k * p + k];
    }
    Some(sign * prev)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primitive_examples() {
        assert_eq!(primitive(&[2, 4]).unwrap(), vec![1, 2]);
        assert_eq!(primitive(&[-3, 6, -9]).unwrap(), vec![-1, 2, -3]);
        assert_eq!(primitive(&[0, 0]), Err(FanError::ZeroVector));
    }

    #[test]
    fn hnf_and_index() {
        let rows = vec![vec![2, 0], vec![0, 3], vec![2, 3]];
        assert_eq!(hnf(&rows, 2), vec![vec![2, 0], vec![0, 3]]);
        assert_eq!(lattice_index(&rows, 2), Some(BigInt::from(6)));
        assert_eq!(lattice_index(&[vec![1, 1]], 2), None);
        assert_eq!(lattice_index(&[vec![1, 1], vec![1, -1]], 2), Some(BigInt::from(2)));
    }

    #[test]
    fn kernel_and_saturation() {
        let k = integer_kernel(&[vec![1, 1, 1]], 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert_eq!(dot(v, &[1, 1, 1]), 0);
        }
        assert_eq!(saturate(&[vec![2, 4, 0]], 3), vec![vec![1, 2, 0]]);
        assert_eq!(saturate(&[vec![1, 1], vec![1, -1]], 2), vec![vec![1, 0], vec![0, 1]]);
    }

    #[test]
    fn rank_and_det() {
        assert_eq!(rank(&[vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]]), 2);
        assert_eq!(det(&[vec![2, 1], vec![1, 1]]), BigInt::from(1));
        assert_eq!(det(&[vec![0, 1], vec![1, 0]]), BigInt::from(-1));
        assert_eq!(det(&[vec![1, 2], vec![2, 4]]), BigInt::zero());
        let big = vec![vec![i64::MAX / 2, 1], vec![1, i64::MAX / 2]];
        let expected = BigInt::from(i64::MAX / 2) * BigInt::from(i64::MAX / 2) - 1;
        assert_eq!(det(&big), expected);
    }

    #[test]
    fn reduce_is_canonical() {
        let lin = hnf(&[vec![1, 1, 0]], 3);
        let a = reduce_modulo(&[2, 0, 1], &lin);
        let b = reduce_modulo(&[5, 3, 1], &lin);
        assert_eq!(a, b);
        assert_eq!(reduce_modulo(&[3, 3, 0], &lin), vec![0, 0, 0]);
    }

    #[test]
    fn inverse() {
        let m = vec![vec![2, 1], vec![1, 1]];
        let inv = unimodular_inverse(&m).unwrap();
        assert_eq!(inv, vec![vec![1, -1], vec![-1, 2]]);
        assert!(unimodular_inverse(&[vec![2, 0], vec![0, 1]]).is_none());
    }

    #[test]
    fn wedge_coordinates() {
        let cols = combinations(3, 2);
        let w = wedge(&[&[1, 0, 0], &[0, 1, 0]], &cols);
        assert_eq!(w, vec![1, 0, 0]);
        assert_eq!(combinations(4, 2).len(), 6);
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
    }
}
