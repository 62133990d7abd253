use alloc::vec::Vec;

use super::dense::DenseMatrix;
#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

/// Eigenvalues and orthonormal eigenvectors of a symmetric matrix.
///
/// `vectors` holds eigenvector `k` in column `k`.
#[derive(Debug, Clone)]
pub struct SymmetricEigen {
    pub values: Vec<f64>,
    pub vectors: DenseMatrix,
}

impl SymmetricEigen {
    /// `V f(Λ) Vᵀ`.
    pub fn reconstruct<F: Fn(f64) -> f64>(&self, f: F) -> DenseMatrix {
        let n = self.values.len();
        let w: Vec<f64> = self.values.iter().map(|&l| f(l)).collect();
        let vt = self.vectors.transpose();
        let mut out = DenseMatrix::zeros(n);
        for i in 0..n {
            let dst = out.row_mut(i);
            for (k, &wk) in w.iter().enumerate() {
                let c = self.vectors.get(i, k) * wk;
                if c == 0.0 {
                    continue;
                }
                for (o, v) in dst.iter_mut().zip(vt.row(k)) {
                    *o += c * v;
                }
            }
        }
        out.symmetrize();
        out
    }
}

/// Cyclic Jacobi eigendecomposition of the symmetric part of `m`.
pub fn symmetric_eigen(m: &DenseMatrix) -> SymmetricEigen {
    let n = m.dim();
    let mut a = m.clone();
    a.symmetrize();
    let mut v = DenseMatrix::identity(n);
    let total: f64 = a.as_slice().iter().map(|x| x * x).sum();
    let floor = f64::EPSILON * f64::EPSILON * total;

    for _sweep in 0..64 {
        let mut off = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off += a.get(p, q) * a.get(p, q);
            }
        }
        if off <= floor || off == 0.0 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a.get(p, q);
                if apq == 0.0 {
                    continue;
                }
                let app = a.get(p, p);
                let aqq = a.get(q, q);
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                rotate(&mut a, &mut v, p, q, c, s);
            }
        }
    }
    let values = (0..n).map(|i| a.get(i, i)).collect();
    SymmetricEigen { values, vectors: v }
}

fn rotate(a: &mut DenseMatrix, v: &mut DenseMatrix, p: usize, q: usize, c: f64, s: f64) {
    let n = a.dim();
    for k in 0..n {
        let akp = a.get(k, p);
        let akq = a.get(k, q);
        a.set(k, p, c * akp - s * akq);
        a.set(k, q, s * akp + c * akq);
    }
    for k in 0..n {
        let apk = a.get(p, k);
        let aqk = a.get(q, k);
        a.set(p, k, c * apk - s * aqk);
        a.set(q, k, s * apk + c * aqk);
    }
    a.set(p, q, 0.0);
    a.set(q, p, 0.0);
    for k in 0..n {
        let vkp = v.get(k, p);
        let vkq = v.get(k, q);
        v.set(k, p, c * vkp - s * vkq);
        v.set(k, q, s * vkp + c * vkq);
    }
}

/// Sum of absolute eigenvalues of a symmetric matrix.
pub fn trace_norm(m: &DenseMatrix) -> f64 {
    symmetric_eigen(m).values.iter().map(|v| v.abs()).sum()
}

/// `‖a − b‖_tr` for symmetric `a`, `b` of equal size.
pub fn trace_distance(a: &DenseMatrix, b: &DenseMatrix) -> f64 {
    let mut d = a.clone();
    d.axpy(-1.0, b);
    trace_norm(&d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn two_by_two() {
        let m = DenseMatrix::from_row_major(2, vec![2.0, 1.0, 1.0, 2.0]).unwrap();
        let mut e = symmetric_eigen(&m).values;
        e.sort_by(f64::total_cmp);
        assert!((e[0] - 1.0).abs() < 1e-14 && (e[1] - 3.0).abs() < 1e-14);
    }

    #[test]
    fn reconstructs_input() {
        let data: Vec<f64> = (0..25).map(|k| ((k * 7 % 11) as f64) - 5.0).collect();
        let mut m = DenseMatrix::from_row_major(5, data).unwrap();
        m.symmetrize();
        let back = symmetric_eigen(&m).reconstruct(|x| x);
        let mut d = back.clone();
        d.axpy(-1.0, &m);
        assert!(d.max_abs() < 1e-12);
    }
}
