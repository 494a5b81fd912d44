//! Thomas algorithm for complex tridiagonal systems.

use num_complex::Complex64;

const PIVOT_FLOOR: f64 = 1e-300;

/// Zero (or non-finite) pivot encountered at `row`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ZeroPivot {
    pub row: usize,
}

/// Solves `A x = d` in place for tridiagonal `A`.
///
/// - `sub[i]` multiplies `x[i-1]` in row `i` (`sub[0]` unused)
/// - `diag[i]` multiplies `x[i]`
/// - `sup[i]` multiplies `x[i+1]` (`sup[n-1]` unused)
///
/// On success `rhs` holds `x`. `scratch` must have the same length.
pub fn solve_in_place(
    sub: &[Complex64],
    diag: &[Complex64],
    sup: &[Complex64],
    rhs: &mut [Complex64],
    scratch: &mut [Complex64],
) -> Result<(), ZeroPivot> {
    let n = rhs.len();
    assert!(sub.len() == n && diag.len() == n && sup.len() == n && scratch.len() == n);
    if n == 0 {
        return Ok(());
    }

    let pivot = |row: usize, den: Complex64| {
        if den.norm() < PIVOT_FLOOR || !den.is_finite() {
            Err(ZeroPivot { row })
        } else {
            Ok(den)
        }
    };

    let den = pivot(0, diag[0])?;
    scratch[0] = sup[0] / den;
    rhs[0] /= den;
    for i in 1..n {
        let den = pivot(i, diag[i] - sub[i] * scratch[i - 1])?;
        scratch[i] = sup[i] / den;
        rhs[i] = (rhs[i] - sub[i] * rhs[i - 1]) / den;
    }
    for i in (0..n - 1).rev() {
        rhs[i] -= scratch[i] * rhs[i + 1];
    }
    Ok(())
}

/// Allocating convenience wrapper around [`solve_in_place`].
pub fn solve(
    sub: &[Complex64],
    diag: &[Complex64],
    sup: &[Complex64],
    rhs: &[Complex64],
) -> Result<Vec<Complex64>, ZeroPivot> {
    let mut x = rhs.to_vec();
    let mut scratch = vec![Complex64::default(); rhs.len()];
    solve_in_place(sub, diag, sup, &mut x, &mut scratch)?;
    Ok(x)
}
