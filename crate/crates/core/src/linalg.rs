//! Dense complex linear algebra for small systems: Gaussian elimination
//! with partial pivoting, nullspace extraction, and scalar least squares.
//!
//! Everything here works on row-major `Vec<Complex64>` buffers; the systems
//! are tiny (at most a few hundred rows), so no external solver is needed.

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("matrix is singular to working precision")]
    Singular,
}

/// Max-norm of a complex slice.
pub fn max_abs(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Solve the square system `a x = b` in place; `a` is `n×n` row-major and is
/// destroyed, `b` is overwritten with the solution.
pub fn solve_in_place(n: usize, a: &mut [Complex64], b: &mut [Complex64]) -> Result<(), LinalgError> {
    debug_assert_eq!(a.len(), n * n);
    debug_assert_eq!(b.len(), n);
    for col in 0..n {
        let mut pivot = col;
        let mut best = a[col * n + col].norm();
        for row in col + 1..n {
            let mag = a[row * n + col].norm();
            if mag > best {
                best = mag;
                pivot = row;
            }
        }
        if best == 0.0 {
            return Err(LinalgError::Singular);
        }
        if pivot != col {
            for k in col..n {
                a.swap(col * n + k, pivot * n + k);
            }
            b.swap(col, pivot);
        }
        let diag = a[col * n + col];
        for row in col + 1..n {
            let factor = a[row * n + col] / diag;
            if factor == Complex64::new(0.0, 0.0) {
                continue;
            }
            a[row * n + col] = Complex64::new(0.0, 0.0);
            for k in col + 1..n {
                let v = a[col * n + k];
                a[row * n + k] -= factor * v;
            }
            let bc = b[col];
            b[row] -= factor * bc;
        }
    }
    for col in (0..n).rev() {
        let mut acc = b[col];
        for k in col + 1..n {
            acc -= a[col * n + k] * b[k];
        }
        b[col] = acc / a[col * n + col];
    }
    Ok(())
}

/// Nullspace basis of the `rows×cols` matrix `a` (row-major, consumed).
///
/// Pivots below `rel_tol × max|a_ij|` are treated as zero. The basis is
/// pivot-normalized: vector `k` has a literal `1` in its free column and the
/// back-substituted pivot entries elsewhere, so the output is deterministic.
pub fn nullspace(rows: usize, cols: usize, mut a: Vec<Complex64>, rel_tol: f64) -> Vec<Vec<Complex64>> {
    debug_assert_eq!(a.len(), rows * cols);
    let scale = max_abs(&a);
    if scale == 0.0 {
        // Zero matrix: the whole space, as unit vectors.
        return (0..cols)
            .map(|j| {
                let mut v = vec![Complex64::new(0.0, 0.0); cols];
                v[j] = Complex64::new(1.0, 0.0);
                v
            })
            .collect();
    }
    let tol = rel_tol * scale;

    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut rank = 0usize;
    for col in 0..cols {
        let mut pivot = rank;
        let mut best = 0.0;
        for row in rank..rows {
            let mag = a[row * cols + col].norm();
            if mag > best {
                best = mag;
                pivot = row;
            }
        }
        if best <= tol {
            continue; // free column
        }
        if pivot != rank {
            for k in 0..cols {
                a.swap(rank * cols + k, pivot * cols + k);
            }
        }
        let diag = a[rank * cols + col];
        for k in 0..cols {
            a[rank * cols + k] /= diag;
        }
        for row in 0..rows {
            if row == rank {
                continue;
            }
            let factor = a[row * cols + col];
            if factor == Complex64::new(0.0, 0.0) {
                continue;
            }
            for k in 0..cols {
                let v = a[rank * cols + k];
                a[row * cols + k] -= factor * v;
            }
            a[row * cols + col] = Complex64::new(0.0, 0.0);
        }
        pivot_cols.push(col);
        rank += 1;
        if rank == rows {
            break;
        }
    }

    let mut basis = Vec::new();
    let mut is_pivot = vec![false; cols];
    for &c in &pivot_cols {
        is_pivot[c] = true;
    }
    for free in 0..cols {
        if is_pivot[free] {
            continue;
        }
        let mut v = vec![Complex64::new(0.0, 0.0); cols];
        v[free] = Complex64::new(1.0, 0.0);
        for (r, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = -a[r * cols + free];
        }
        basis.push(v);
    }
    basis
}

/// Least-squares scalar `c` minimizing `‖b − c·a‖₂`; requires `a ≠ 0`.
pub fn lstsq_coeff(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    debug_assert_eq!(a.len(), b.len());
    let mut num = Complex64::new(0.0, 0.0);
    let mut den = 0.0;
    for (x, y) in a.iter().zip(b.iter()) {
        num += x.conj() * y;
        den += x.norm_sqr();
    }
    num / den
}

/// Least-squares coordinates `c` minimizing `‖v − Σ cₖ basisₖ‖₂`, together
/// with the reconstruction `Σ cₖ basisₖ` and its max-norm residual.
/// Returns `None` when the normal equations are singular.
pub fn project_onto_span(
    basis: &[Vec<Complex64>],
    v: &[Complex64],
) -> Option<(Vec<Complex64>, Vec<Complex64>, f64)> {
    let dim = basis.len();
    let n = v.len();
    if dim == 0 {
        let res = max_abs(v);
        return Some((Vec::new(), vec![Complex64::new(0.0, 0.0); n], res));
    }
    let mut gram = vec![Complex64::new(0.0, 0.0); dim * dim];
    let mut rhs = vec![Complex64::new(0.0, 0.0); dim];
    let dot = |a: &[Complex64], b: &[Complex64]| -> Complex64 {
        a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
    };
    for i in 0..dim {
        for j in 0..dim {
            gram[i * dim + j] = dot(&basis[i], &basis[j]);
        }
        rhs[i] = dot(&basis[i], v);
    }
    solve_in_place(dim, &mut gram, &mut rhs).ok()?;
    let mut rebuilt = vec![Complex64::new(0.0, 0.0); n];
    for (i, c) in rhs.iter().enumerate() {
        for (k, out) in rebuilt.iter_mut().enumerate() {
            *out += c * basis[i][k];
        }
    }
    let residual = v
        .iter()
        .zip(rebuilt.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max);
    Some((rhs, rebuilt, residual))
}
