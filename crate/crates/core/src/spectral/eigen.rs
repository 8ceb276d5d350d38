//! Cyclic Jacobi eigensolver and Gershgorin disks.

use super::{SpectralError, SymmetricMatrix};

pub const DEFAULT_TOLERANCE: f64 = 1e-12;
pub const MAX_SWEEPS: usize = 100;

/// Eigenpairs must satisfy `‖Mv − λv‖ ≤ RESIDUAL_FACTOR · ‖M‖_F`.
const RESIDUAL_FACTOR: f64 = 1e-8;
/// Number of eigenpairs whose residual is verified.
const RESIDUAL_SAMPLES: usize = 32;

#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    /// Ascending.
    pub values: Vec<f64>,
    /// `vectors[k]` is a unit eigenvector for `values[k]`.
    pub vectors: Vec<Vec<f64>>,
    pub sweeps: usize,
}

pub fn eigenvalues_symmetric(m: &SymmetricMatrix, tol: f64) -> Result<Vec<f64>, SpectralError> {
    eigen_decomposition(m, tol).map(|d| d.values)
}

/// Cyclic-by-row Jacobi rotations until the off-diagonal Frobenius norm drops
/// below `tol · ‖M‖_F`.
pub fn eigen_decomposition(m: &SymmetricMatrix, tol: f64) -> Result<EigenDecomposition, SpectralError> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(SpectralError::InvalidInput(format!("tolerance {tol} must be positive")));
    }
    let n = m.order();
    let norm = m.frobenius_norm();
    let mut a = m.clone().into_data();
    // row k of `vt` converges to the eigenvector for the k-th diagonal entry
    let mut vt = SymmetricMatrix::identity(n).into_data();
    let threshold = tol * norm;
    // entries this small cannot keep the off-diagonal norm above `threshold`
    let negligible = threshold / n.max(1) as f64;

    let off_norm = |a: &[f64]| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                s += 2.0 * a[i * n + j] * a[i * n + j];
            }
        }
        s.sqrt()
    };

    let mut sweeps = 0;
    while off_norm(&a) > threshold {
        if sweeps == MAX_SWEEPS {
            return Err(SpectralError::ConvergenceError {
                sweeps,
                off_norm: off_norm(&a),
            });
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq.abs() <= negligible {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                rotate_rows(&mut a, n, p, q, c, s);
                for k in 0..n {
                    a[k * n + p] = a[p * n + k];
                    a[k * n + q] = a[q * n + k];
                }
                a[p * n + p] = app - t * apq;
                a[q * n + q] = aqq + t * apq;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;

                rotate_rows(&mut vt, n, p, q, c, s);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * n + i].total_cmp(&a[j * n + j]));
    let values: Vec<f64> = order.iter().map(|&i| a[i * n + i]).collect();
    let vectors: Vec<Vec<f64>> = order.iter().map(|&r| vt[r * n..(r + 1) * n].to_vec()).collect();

    let step = n.div_ceil(RESIDUAL_SAMPLES).max(1);
    for k in (0..n).step_by(step) {
        let mv = m.mul_vec(&vectors[k]);
        let residual = mv
            .iter()
            .zip(&vectors[k])
            .map(|(x, y)| (x - values[k] * y).powi(2))
            .sum::<f64>()
            .sqrt();
        if residual > RESIDUAL_FACTOR * norm.max(f64::MIN_POSITIVE) {
            return Err(SpectralError::ConvergenceError {
                sweeps,
                off_norm: residual,
            });
        }
    }

    Ok(EigenDecomposition {
        values,
        vectors,
        sweeps,
    })
}

/// Rows `p < q` become `c·row_p − s·row_q` and `s·row_p + c·row_q`.
fn rotate_rows(m: &mut [f64], n: usize, p: usize, q: usize, c: f64, s: f64) {
    let (head, tail) = m.split_at_mut(q * n);
    let row_p = &mut head[p * n..(p + 1) * n];
    let row_q = &mut tail[..n];
    for (x, y) in row_p.iter_mut().zip(row_q.iter_mut()) {
        let (xp, yq) = (*x, *y);
        *x = c * xp - s * yq;
        *y = s * xp + c * yq;
    }
}

/// `(a_ii, r_i)` with `r_i = Σ_j |a_ij|`, the diagonal included.
pub fn gershgorin_disks(m: &SymmetricMatrix) -> Vec<(f64, f64)> {
    (0..m.order())
        .map(|i| (m.get(i, i), m.row(i).iter().map(|x| x.abs()).sum()))
        .collect()
}

/// `max_i (|a_ii| + r_i)`; every eigenvalue has absolute value at most this.
pub fn gershgorin_bound(m: &SymmetricMatrix) -> f64 {
    gershgorin_disks(m)
        .into_iter()
        .map(|(c, r)| c.abs() + r)
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sym(rows: &[&[f64]]) -> SymmetricMatrix {
        SymmetricMatrix::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    fn close(a: &[f64], b: &[f64], eps: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() < eps)
    }

    fn in_some_disk(m: &SymmetricMatrix, lambda: f64) -> bool {
        gershgorin_disks(m).iter().any(|&(c, r)| (lambda - c).abs() <= r + 1e-9)
    }

    #[test]
    fn two_by_two_examples() {
        let m = sym(&[&[2.0, 1.0], &[1.0, 2.0]]);
        let ev = eigenvalues_symmetric(&m, DEFAULT_TOLERANCE).unwrap();
        assert!(close(&ev, &[1.0, 3.0], 1e-12));
        assert_eq!(gershgorin_disks(&m), vec![(2.0, 3.0), (2.0, 3.0)]);
        assert!(ev.iter().all(|&l| in_some_disk(&m, l)));

        let m = sym(&[&[0.0, 1.0], &[1.0, 0.0]]);
        let ev = eigenvalues_symmetric(&m, DEFAULT_TOLERANCE).unwrap();
        assert!(close(&ev, &[-1.0, 1.0], 1e-12));
        assert_eq!(gershgorin_bound(&m), 1.0);
    }

    #[test]
    fn identity_and_empty() {
        let ev = eigenvalues_symmetric(&SymmetricMatrix::identity(3), DEFAULT_TOLERANCE).unwrap();
        assert_eq!(ev, vec![1.0, 1.0, 1.0]);
        assert!(eigenvalues_symmetric(&SymmetricMatrix::identity(0), DEFAULT_TOLERANCE)
            .unwrap()
            .is_empty());
        let zero = sym(&[&[0.0, 0.0], &[0.0, 0.0]]);
        assert_eq!(eigenvalues_symmetric(&zero, DEFAULT_TOLERANCE).unwrap(), vec![0.0, 0.0]);
    }

    #[test]
    fn rejects_bad_tolerance() {
        let m = SymmetricMatrix::identity(2);
        assert!(matches!(
            eigenvalues_symmetric(&m, 0.0),
            Err(SpectralError::InvalidInput(_))
        ));
        assert!(matches!(
            eigenvalues_symmetric(&m, f64::NAN),
            Err(SpectralError::InvalidInput(_))
        ));
    }

    #[test]
    fn path_graph_spectrum() {
        // eigenvalues of the path P_n are 2cos(kπ/(n+1))
        let n: usize = 12;
        let rows: Vec<Vec<f64>> = (0..n)
            .map(|i| (0..n).map(|j| if i.abs_diff(j) == 1 { 1.0 } else { 0.0 }).collect())
            .collect();
        let ev = eigenvalues_symmetric(&SymmetricMatrix::from_rows(rows).unwrap(), DEFAULT_TOLERANCE).unwrap();
        let mut expected: Vec<f64> = (1..=n)
            .map(|k| 2.0 * (k as f64 * std::f64::consts::PI / (n as f64 + 1.0)).cos())
            .collect();
        expected.sort_by(f64::total_cmp);
        assert!(close(&ev, &expected, 1e-10));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn trace_frobenius_and_gershgorin(n in 1usize..9, entries in proptest::collection::vec(-10.0f64..10.0, 81)) {
            let rows: Vec<Vec<f64>> = (0..n)
                .map(|i| (0..n).map(|j| entries[i.min(j) * 9 + i.max(j)]).collect())
                .collect();
            let m = SymmetricMatrix::from_rows(rows).unwrap();
            let d = eigen_decomposition(&m, DEFAULT_TOLERANCE).unwrap();
            let scale = m.frobenius_norm().max(1.0);
            prop_assert!((d.values.iter().sum::<f64>() - m.trace()).abs() <= 1e-6 * scale);
            let sq: f64 = d.values.iter().map(|l| l * l).sum();
            prop_assert!((sq - m.frobenius_norm().powi(2)).abs() <= 1e-6 * scale * scale);
            for &l in &d.values {
                prop_assert!(in_some_disk(&m, l));
                prop_assert!(l.abs() <= gershgorin_bound(&m) + 1e-9);
            }
            prop_assert!(d.values.windows(2).all(|w| w[0] <= w[1]));
            for (l, v) in d.values.iter().zip(&d.vectors) {
                let mv = m.mul_vec(v);
                let r: f64 = mv.iter().zip(v).map(|(x, y)| (x - l * y).powi(2)).sum::<f64>().sqrt();
                prop_assert!(r <= 1e-8 * scale);
            }
        }
    }
}
