//! Integer lattice helpers: primitive vectors, kernels, and unimodular bases.

use num_integer::Integer;

pub fn gcd_all(v: &[i128]) -> i128 {
    v.iter().fold(0i128, |g, &x| g.gcd(&x))
}

/// Divides by the gcd of the entries. The zero vector is returned unchanged.
pub fn primitive(v: &[i128]) -> Vec<i128> {
    let g = gcd_all(v);
    if g == 0 {
        return v.to_vec();
    }
    v.iter().map(|&x| x / g).collect()
}

/// Determinant of a square integer matrix (fraction-free Bareiss elimination).
pub fn int_det(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m.to_vec();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&r| a[r][k] != 0) else {
                return 0;
            };
            a.swap(k, p);
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

/// Rank over ℚ of a list of integer row vectors.
pub fn int_rank(rows: &[Vec<i128>]) -> usize {
    let mut a: Vec<Vec<i128>> = rows.iter().map(|r| primitive(r)).collect();
    let ncols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..a.len()).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(rank, p);
        for r in rank + 1..a.len() {
            if a[r][col] != 0 {
                let (x, y) = (a[rank][col], a[r][col]);
                let new: Vec<i128> = (0..ncols).map(|c| a[r][c] * x - a[rank][c] * y).collect();
                a[r] = primitive(&new);
            }
        }
        rank += 1;
    }
    rank
}

/// Generalized cross product of `n-1` vectors in ℤⁿ: a vector orthogonal to all of them,
/// zero iff they are linearly dependent.
pub fn cross(vs: &[Vec<i128>], n: usize) -> Vec<i128> {
    debug_assert_eq!(vs.len() + 1, n);
    (0..n)
        .map(|k| {
            let minor: Vec<Vec<i128>> = vs
                .iter()
                .map(|v| (0..n).filter(|&c| c != k).map(|c| v[c]).collect())
                .collect();
            let d = int_det(&minor);
            if k % 2 == 0 {
                d
            } else {
                -d
            }
        })
        .collect()
}

/// A unimodular matrix `U` (with its inverse) such that `rows · U = [H | 0]`, where `H` has
/// `rank` columns. The trailing `n - rank` columns of `U` form a basis of the integer kernel.
#[derive(Clone, Debug)]
pub struct ColumnReduction {
    pub u: Vec<Vec<i128>>,
    pub u_inv: Vec<Vec<i128>>,
    pub rank: usize,
}

pub fn column_reduce(rows: &[Vec<i128>], n: usize) -> ColumnReduction {
    let mut a: Vec<Vec<i128>> = rows.to_vec();
    let mut u = identity(n);
    let mut u_inv = identity(n);
    let mut pivot_col = 0;
    for r in 0..a.len() {
        if pivot_col == n {
            break;
        }
        // Euclid on row r over the columns pivot_col.. until one nonzero entry remains.
        loop {
            let nonzero: Vec<usize> = (pivot_col..n).filter(|&c| a[r][c] != 0).collect();
            if nonzero.len() <= 1 {
                if let Some(&c) = nonzero.first() {
                    swap_cols(&mut a, &mut u, &mut u_inv, c, pivot_col);
                    pivot_col += 1;
                }
                break;
            }
            let &small = nonzero.iter().min_by_key(|&&c| a[r][c].abs()).unwrap();
            for &c in &nonzero {
                if c != small {
                    let q = Integer::div_floor(&a[r][c], &a[r][small]);
                    add_col(&mut a, &mut u, &mut u_inv, c, small, -q);
                }
            }
        }
    }
    ColumnReduction {
        u,
        u_inv,
        rank: pivot_col,
    }
}

fn identity(n: usize) -> Vec<Vec<i128>> {
    (0..n)
        .map(|i| (0..n).map(|j| i128::from(i == j)).collect())
        .collect()
}

fn swap_cols(
    a: &mut [Vec<i128>],
    u: &mut [Vec<i128>],
    u_inv: &mut [Vec<i128>],
    x: usize,
    y: usize,
) {
    if x == y {
        return;
    }
    for row in a.iter_mut().chain(u.iter_mut()) {
        row.swap(x, y);
    }
    u_inv.swap(x, y);
}

/// column `dst += k · column src`, keeping `u_inv` the exact inverse.
fn add_col(
    a: &mut [Vec<i128>],
    u: &mut [Vec<i128>],
    u_inv: &mut [Vec<i128>],
    dst: usize,
    src: usize,
    k: i128,
) {
    for row in a.iter_mut().chain(u.iter_mut()) {
        row[dst] += k * row[src];
    }
    // U' = U E with E = I + k e_src e_dstᵀ, so U'^{-1} = (I - k e_src e_dstᵀ) U^{-1}.
    let dst_row = u_inv[dst].clone();
    for (c, v) in dst_row.iter().enumerate() {
        u_inv[src][c] -= k * v;
    }
}

/// Saturated lattice `ℤⁿ ∩ span(dirs)` together with a dual system for coordinates.
#[derive(Clone, Debug)]
pub struct SublatticeBasis {
    /// `rank` basis vectors of the saturated lattice.
    pub basis: Vec<Vec<i128>>,
    /// `dual[k]` satisfies `⟨dual[k], basis[l]⟩ = δ_kl`, and `⟨dual[k], v⟩` is the `k`-th
    /// coordinate of any `v` in the lattice.
    pub dual: Vec<Vec<i128>>,
}

impl SublatticeBasis {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn coords(&self, v: &[i128]) -> Vec<i128> {
        self.dual
            .iter()
            .map(|d| d.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }
}

pub fn saturated_span(dirs: &[Vec<i128>], n: usize) -> SublatticeBasis {
    let red = column_reduce(dirs, n);
    // Integer kernel K (n - r vectors); the saturation is the kernel of Kᵀ.
    let kernel: Vec<Vec<i128>> = (red.rank..n)
        .map(|c| (0..n).map(|i| red.u[i][c]).collect())
        .collect();
    let red2 = column_reduce(&kernel, n);
    let r = n - red2.rank;
    let basis = (red2.rank..n)
        .map(|c| (0..n).map(|i| red2.u[i][c]).collect())
        .collect();
    let dual = (red2.rank..n).map(|row| red2.u_inv[row].clone()).collect();
    debug_assert_eq!(r, red.rank);
    SublatticeBasis { basis, dual }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn matmul(a: &[Vec<i128>], b: &[Vec<i128>]) -> Vec<Vec<i128>> {
        let n = a.len();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum())
                    .collect()
            })
            .collect()
    }

    #[test]
    fn det_and_rank() {
        let m = vec![vec![2, 0, 1], vec![1, 3, 0], vec![0, 1, 4]];
        assert_eq!(int_det(&m), 2 * 12 - 0 + 1 * 1);
        assert_eq!(int_rank(&[vec![1, 2, 3], vec![2, 4, 6]]), 1);
        assert_eq!(int_rank(&m), 3);
        assert_eq!(int_det(&[vec![0, 1], vec![1, 0]]), -1);
    }

    #[test]
    fn cross_is_orthogonal() {
        let a = vec![-2i128, 1, 0];
        let b = vec![-3i128, 0, 2];
        let c = cross(&[a.clone(), b.clone()], 3);
        assert_eq!(primitive(&c), vec![2, 4, 3]);
        assert_eq!(cross(&[], 1), vec![1]);
    }

    #[test]
    fn column_reduction_is_unimodular() {
        let rows = vec![vec![4i128, 6, 10]];
        let red = column_reduce(&rows, 3);
        assert_eq!(red.rank, 1);
        let id = matmul(&red.u, &red.u_inv);
        assert_eq!(id, vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        for c in 1..3 {
            let dot: i128 = (0..3).map(|i| rows[0][i] * red.u[i][c]).sum();
            assert_eq!(dot, 0);
        }
    }

    #[test]
    fn saturation_of_a_non_primitive_span() {
        // span{(2,0,0),(0,2,2)} saturates to span{(1,0,0),(0,1,1)}
        let s = saturated_span(&[vec![2, 0, 0], vec![0, 2, 2]], 3);
        assert_eq!(s.rank(), 2);
        for (k, b) in s.basis.iter().enumerate() {
            assert_eq!(
                s.coords(b),
                (0..2).map(|l| i128::from(l == k)).collect::<Vec<_>>()
            );
        }
        let c = s.coords(&[1, 1, 1]);
        let back: Vec<i128> = (0..3)
            .map(|i| c[0] * s.basis[0][i] + c[1] * s.basis[1][i])
            .collect();
        assert_eq!(back, vec![1, 1, 1]);
    }
}
