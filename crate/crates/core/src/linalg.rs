//! Small exact linear algebra over Q and Z used by the lattice machinery:
//! Gauss-Jordan inversion, determinants, rational kernels, and Hermite
//! normal forms of integer matrices. Sizes are tiny (at most 8x8), so the
//! implementations favor clarity over asymptotics.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type QMatrix = Vec<Vec<BigRational>>;
pub type ZMatrix = Vec<Vec<BigInt>>;

pub fn qmat_zero(rows: usize, cols: usize) -> QMatrix {
    vec![vec![BigRational::zero(); cols]; rows]
}

pub fn qmat_identity(n: usize) -> QMatrix {
    let mut m = qmat_zero(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = BigRational::one();
    }
    m
}

pub fn qmat_mul(a: &QMatrix, b: &QMatrix) -> QMatrix {
    let (n, k, m) = (a.len(), b.len(), b[0].len());
    let mut out = qmat_zero(n, m);
    for i in 0..n {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..m {
                let t = &a[i][l] * &b[l][j];
                out[i][j] += t;
            }
        }
    }
    out
}

/// Gauss-Jordan inverse; None when singular.
pub fn qmat_inverse(a: &QMatrix) -> Option<QMatrix> {
    let n = a.len();
    let mut m = a.clone();
    let mut inv = qmat_identity(n);
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
                    let t1 = &f * &m[col][j];
                    m[r][j] -= t1;
                    let t2 = &f * &inv[col][j];
                    inv[r][j] -= t2;
                }
            }
        }
    }
    Some(inv)
}

pub fn qmat_det(a: &QMatrix) -> BigRational {
    let n = a.len();
    let mut m = a.clone();
    let mut det = BigRational::one();
    for col in 0..n {
        let pivot = match (col..n).find(|&r| !m[r][col].is_zero()) {
            Some(p) => p,
            None => return BigRational::zero(),
        };
        if pivot != col {
            m.swap(col, pivot);
            det = -det;
        }
        det *= &m[col][col];
        let p = m[col][col].clone();
        for r in (col + 1)..n {
            if !m[r][col].is_zero() {
                let f = &m[r][col] / &p;
                for j in col..n {
                    let t = &f * &m[col][j];
                    m[r][j] -= t;
                }
            }
        }
    }
    det
}

/// Row-space basis of the right kernel {x : a * x = 0}, for a rectangular
/// rational matrix. Returns vectors as rows.
pub fn qmat_kernel(a: &QMatrix) -> Vec<Vec<BigRational>> {
    if a.is_empty() {
        return Vec::new();
    }
    let rows = a.len();
    let cols = a[0].len();
    let mut m = a.clone();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0usize;
    for c in 0..cols {
        let pr = (r..rows).find(|&i| !m[i][c].is_zero());
        let pr = match pr {
            Some(p) => p,
            None => continue,
        };
        m.swap(r, pr);
        let p = m[r][c].clone();
        for j in 0..cols {
            m[r][j] /= &p;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let t = &f * &m[r][j];
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    let mut basis = Vec::new();
    let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
    for free in 0..cols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![BigRational::zero(); cols];
        v[free] = BigRational::one();
        for (ri, &pc) in pivots.iter().enumerate() {
            v[pc] = -m[ri][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Hermite normal form of the row span (row-style, pivots positive,
/// entries above a pivot reduced into [0, pivot)). Zero rows dropped.
pub fn hnf(rows: &ZMatrix) -> ZMatrix {
    if rows.is_empty() {
        return Vec::new();
    }
    let cols = rows[0].len();
    let mut m: ZMatrix = rows.to_vec();
    let nrows = m.len();
    let mut pivot_row = 0usize;
    for col in 0..cols {
        // eliminate below via gcd steps
        loop {
            let mut idx: Option<usize> = None;
            for r in pivot_row..nrows {
                if !m[r][col].is_zero() {
                    idx = match idx {
                        None => Some(r),
                        Some(i) => {
                            if m[r][col].magnitude() < m[i][col].magnitude() {
                                Some(r)
                            } else {
                                Some(i)
                            }
                        }
                    };
                }
            }
            let i = match idx {
                Some(i) => i,
                None => break,
            };
            m.swap(pivot_row, i);
            let mut done = true;
            let pv = m[pivot_row][col].clone();
            for r in (pivot_row + 1)..nrows {
                if !m[r][col].is_zero() {
                    let q = div_round(&m[r][col], &pv);
                    for j in 0..cols {
                        let t = &q * &m[pivot_row][j];
                        m[r][j] -= t;
                    }
                    if !m[r][col].is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if pivot_row < nrows && !m[pivot_row][col].is_zero() {
            if m[pivot_row][col].is_negative() {
                for j in 0..cols {
                    m[pivot_row][j] = -m[pivot_row][j].clone();
                }
            }
            // reduce entries above the pivot
            let pv = m[pivot_row][col].clone();
            for r in 0..pivot_row {
                let q = m[r][col].div_floor(&pv);
                if !q.is_zero() {
                    for j in 0..cols {
                        let t = &q * &m[pivot_row][j];
                        m[r][j] -= t;
                    }
                }
            }
            pivot_row += 1;
            if pivot_row == nrows {
                break;
            }
        }
    }
    m.truncate(pivot_row);
    m
}

/// Nearest-integer quotient, so remainders shrink in absolute value.
fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    if BigInt::from(2) * r.abs() > b.abs() {
        if a.is_negative() == b.is_negative() {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

/// Basis (as rows) of the integer left kernel {x in Z^n : x * a = 0} of an
/// integer matrix, via HNF with a transformation record.
pub fn integer_left_kernel(a: &ZMatrix) -> ZMatrix {
    let nrows = a.len();
    if nrows == 0 {
        return Vec::new();
    }
    let cols = a[0].len();
    let mut m = a.to_vec();
    let mut u: ZMatrix = (0..nrows)
        .map(|i| {
            (0..nrows)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect();
    let mut pivot_row = 0usize;
    for col in 0..cols {
        loop {
            let mut idx: Option<usize> = None;
            for r in pivot_row..nrows {
                if !m[r][col].is_zero() {
                    idx = match idx {
                        None => Some(r),
                        Some(i) => {
                            if m[r][col].magnitude() < m[i][col].magnitude() {
                                Some(r)
                            } else {
                                Some(i)
                            }
                        }
                    };
                }
            }
            let i = match idx {
                Some(i) => i,
                None => break,
            };
            m.swap(pivot_row, i);
            u.swap(pivot_row, i);
            let mut done = true;
            let pv = m[pivot_row][col].clone();
            for r in (pivot_row + 1)..nrows {
                if !m[r][col].is_zero() {
                    let q = div_round(&m[r][col], &pv);
                    for j in 0..cols {
                        let t = &q * &m[pivot_row][j];
                        m[r][j] -= t;
                    }
                    for j in 0..nrows {
                        let t = &q * &u[pivot_row][j];
                        u[r][j] -= t;
                    }
                    if !m[r][col].is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if pivot_row < nrows && !m[pivot_row][col].is_zero() {
            pivot_row += 1;
            if pivot_row == nrows {
                break;
            }
        }
    }
    // rows of m from pivot_row on are zero; the matching rows of u span the kernel
    (pivot_row..nrows).map(|r| u[r].clone()).collect()
}

/// Common denominator clearing: returns (integer matrix, denominator) with
/// a = int / den entrywise.
pub fn clear_denominators(a: &QMatrix) -> (ZMatrix, BigInt) {
    let mut den = BigInt::one();
    for row in a {
        for x in row {
            den = den.lcm(x.denom());
        }
    }
    let int = a
        .iter()
        .map(|row| row.iter().map(|x| (x * BigRational::from(den.clone())).to_integer()).collect())
        .collect();
    (int, den)
}
