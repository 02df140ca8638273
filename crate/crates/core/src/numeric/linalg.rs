/// Dense square matrix stored row-major; the quadrature and fixture code
/// only uses sizes 1 through 3.
pub type SymMatrix<const N: usize> = [[f64; N]; N];

/// Determinant of the leading `k x k` block by Gaussian elimination with
/// partial pivoting.
fn leading_det<const N: usize>(m: &SymMatrix<N>, k: usize) -> f64 {
    let mut a = *m;
    let mut det = 1.0;
    for col in 0..k {
        let pivot = (col..k)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap_or(col);
        if a[pivot][col] == 0.0 {
            return 0.0;
        }
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        det *= a[col][col];
        for row in col + 1..k {
            let factor = a[row][col] / a[col][col];
            for c in col..k {
                a[row][c] -= factor * a[col][c];
            }
        }
    }
    det
}

pub fn determinant<const N: usize>(m: &SymMatrix<N>) -> f64 {
    leading_det(m, N)
}

/// Leading principal minors `det(A[..k, ..k])` for `k = 1..=N`.
pub fn leading_minors<const N: usize>(m: &SymMatrix<N>) -> [f64; N] {
    let mut out = [0.0; N];
    for (k, slot) in out.iter_mut().enumerate() {
        *slot = leading_det(m, k + 1);
    }
    out
}

/// Sylvester's criterion: every leading principal minor strictly positive.
pub fn is_positive_definite<const N: usize>(m: &SymMatrix<N>) -> bool {
    leading_minors(m).iter().all(|&d| d > 0.0)
}
