use maxqp_core::instances::brute_force_maxqp;
use maxqp_core::matrix::{
    exact_gibbs, gibbs_order, operator_norm, parse_matrix_market, trace_distance, trace_product,
    truncated_gibbs, write_matrix_market, CooMatrix, DenseMatrix, DensityMatrix, Hamiltonian,
    SparseSymMatrix, DEFAULT_NORM_TOL,
};
use maxqp_core::rounding::{lift, TaylorRounder};
use maxqp_core::solver::repair;
use proptest::prelude::*;

/// Random symmetric matrix with roughly half of the upper triangle filled.
fn sym_matrix(max_n: usize) -> impl Strategy<Value = SparseSymMatrix> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(prop::option::weighted(0.5, -3.0f64..3.0), n * (n + 1) / 2).prop_map(
            move |vals| {
                let mut entries = Vec::new();
                let mut k = 0;
                for i in 0..n {
                    for j in i..n {
                        if let Some(v) = vals[k] {
                            entries.push((i, j, v));
                        }
                        k += 1;
                    }
                }
                SparseSymMatrix::from_entries(n, entries).unwrap()
            },
        )
    })
}

fn nonzero_sym(max_n: usize) -> impl Strategy<Value = SparseSymMatrix> {
    sym_matrix(max_n).prop_filter("nonzero", |a| !a.is_zero())
}

fn norm(a: &SparseSymMatrix) -> f64 {
    operator_norm(a, DEFAULT_NORM_TOL, 10_000, 1).unwrap()
}

fn dense_matvec(m: &DenseMatrix, x: &[f64]) -> Vec<f64> {
    m.matvec(x).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sparse_matvec_matches_dense(a in sym_matrix(10), seed in any::<u64>()) {
        let n = a.dim();
        let x: Vec<f64> = (0..n).map(|i| ((seed >> (i % 60)) & 7) as f64 - 3.5).collect();
        let ys = a.matvec(&x).unwrap();
        let yd = dense_matvec(&a.to_dense(), &x);
        for (s, d) in ys.iter().zip(&yd) {
            prop_assert!((s - d).abs() <= 1e-12 * (1.0 + d.abs()));
        }
    }

    #[test]
    fn trace_product_is_frobenius_dot(a in sym_matrix(8), xs in prop::collection::vec(-1.0f64..1.0, 8)) {
        let n = a.dim();
        let x = &xs[..n];
        prop_assume!(x.iter().any(|v| v.abs() > 1e-3));
        let rho = DensityMatrix::pure(x).unwrap();
        let direct = trace_product(&a, &rho).unwrap();
        let dense = a.to_dense().frobenius_dot(rho.matrix());
        prop_assert!((direct - dense).abs() <= 1e-10 * (1.0 + dense.abs()));
    }

    #[test]
    fn truncated_gibbs_is_within_eps(
        a in nonzero_sym(8),
        coef in -20.0f64..20.0,
        d in prop::collection::vec(-20.0f64..20.0, 8),
        eps in 1e-4f64..0.3,
    ) {
        let n = a.dim();
        let h = Hamiltonian::from_parts(coef, d[..n].to_vec(), norm(&a)).unwrap();
        let approx = truncated_gibbs(&a, &h, gibbs_order(&h, eps)).unwrap();
        let exact = exact_gibbs(&a, &h).unwrap();
        prop_assert!(trace_distance(approx.matrix(), exact.matrix()) <= eps);
    }

    #[test]
    fn diagonal_hamiltonian_gives_softmax(d in prop::collection::vec(-5.0f64..5.0, 1..8)) {
        let n = d.len();
        let a = SparseSymMatrix::identity(n).unwrap();
        let h = Hamiltonian::from_parts(0.0, d.clone(), 1.0).unwrap();
        let rho = exact_gibbs(&a, &h).unwrap();
        let z: f64 = d.iter().map(|v| (-v).exp()).sum();
        for (i, di) in d.iter().enumerate() {
            prop_assert!((rho.get(i, i) - (-di).exp() / z).abs() <= 1e-12);
        }
    }

    #[test]
    fn lift_doubles_the_bilinear_form(
        rows in 1usize..5,
        cols in 1usize..5,
        vals in prop::collection::vec(-2.0f64..2.0, 16),
        signs in prop::collection::vec(any::<bool>(), 8),
    ) {
        let b = CooMatrix::from_row_major(rows, cols, &vals[..rows * cols]).unwrap();
        let l = lift(&b).unwrap();
        let z: Vec<f64> = signs[..rows + cols].iter().map(|&s| if s { 1.0 } else { -1.0 }).collect();
        let (x, y) = z.split_at(rows);
        let lhs = l.lifted.quadratic_form(&z);
        prop_assert!((lhs - 2.0 * b.bilinear(x, y)).abs() <= 1e-12 * (1.0 + lhs.abs()));
        prop_assert!((l.split_value(&z) - b.bilinear(x, y)).abs() <= 1e-12);
    }

    #[test]
    fn operator_norm_bounds_rayleigh_quotients(a in nonzero_sym(10), probe in prop::collection::vec(-1.0f64..1.0, 10)) {
        let n = a.dim();
        let x = &probe[..n];
        let xx: f64 = x.iter().map(|v| v * v).sum();
        prop_assume!(xx > 1e-6);
        let op = norm(&a);
        prop_assert!(op >= a.quadratic_form(x).abs() / xx - DEFAULT_NORM_TOL * op - 1e-12);
    }

    #[test]
    fn brute_force_respects_norm_bounds(a in nonzero_sym(10)) {
        let n = a.dim() as f64;
        let (opt, x) = brute_force_maxqp(&a).unwrap();
        let xf: Vec<f64> = x.iter().map(|&s| f64::from(s)).collect();
        prop_assert!((a.quadratic_form(&xf) - opt).abs() <= 1e-9 * (1.0 + opt.abs()));
        prop_assert!(opt <= n * norm(&a) * (1.0 + DEFAULT_NORM_TOL) + 1e-9);
        prop_assert!(opt <= a.ell1_norm() + 1e-9);
    }

    #[test]
    fn repair_restores_exact_feasibility(
        a in nonzero_sym(8),
        signs in prop::collection::vec(any::<bool>(), 8),
        noise in prop::collection::vec(0.0f64..1.0, 8),
        eps in 0.05f64..0.5,
        t in 0.0f64..1.0,
    ) {
        let n = a.dim();
        let x: Vec<f64> = signs[..n].iter().map(|&s| if s { 1.0 } else { -1.0 }).collect();
        // Mix the feasible xxᵀ/n with a little of an arbitrary diagonal state.
        let mix = 0.5 * t * eps.powi(4);
        let mut m = DensityMatrix::pure(&x).unwrap().into_matrix();
        let total: f64 = noise[..n].iter().sum::<f64>() + 1e-9;
        let sigma = DenseMatrix::from_diagonal(&noise[..n].iter().map(|v| (v + 1e-9 / n as f64) / total).collect::<Vec<_>>());
        m.scale(1.0 - mix);
        m.axpy(mix, &sigma);
        let rho = DensityMatrix::normalized(m).unwrap();
        let sharp = repair(&rho, eps).unwrap();
        let u = 1.0 / n as f64;
        for i in 0..n {
            prop_assert!((sharp.get(i, i) - u).abs() <= 1e-14);
        }
        prop_assert!(sharp.min_eigenvalue() >= -1e-10);
        let delta = (trace_product(&a, &sharp).unwrap() - trace_product(&a, &rho).unwrap()).abs();
        prop_assert!(delta <= 5.0 * eps * norm(&a));
    }

    #[test]
    fn rounding_is_deterministic_signs(a in nonzero_sym(8), seed in any::<u64>(), k in 0u64..100) {
        let n = a.dim();
        let h = Hamiltonian::from_parts(-1.0, vec![0.0; n], norm(&a)).unwrap();
        let r = TaylorRounder::new(&a, &h, 0.1).unwrap();
        let s = r.round(seed, k);
        prop_assert_eq!(s.len(), n);
        prop_assert!(s.iter().all(|&v| v == 1 || v == -1));
        prop_assert_eq!(s, r.round(seed, k));
    }

    #[test]
    fn matrix_market_round_trips(a in sym_matrix(8)) {
        let back = parse_matrix_market(&write_matrix_market(&a)).unwrap();
        prop_assert_eq!(back, a);
    }
}
