use num_traits::Zero;

use real_hurwitz_core::cutjoin::{block_matrix, OperatorKind};
use real_hurwitz_core::evolution::{connected_series, disconnected_series, disconnected_series_with, evolve_block};
use real_hurwitz_core::linalg::Matrix;
use real_hurwitz_core::nonsep::{tilde_evolve, tilde_hurwitz_upto, tilde_operator_matrix, TildeGraph, TildePoly};
use real_hurwitz_core::oracle::{hurwitz_by_paths_upto, mult_c2_matrix, GroundSet, StateGraph};
use real_hurwitz_core::spectral::{common_eigenbasis, DEFAULT_TOLERANCE};
use real_hurwitz_core::types::enumerate_types;
use real_hurwitz_core::{Bidegree, PolyVector, RamificationType, Rational};

/// Coefficients of `∏_k (1−x^k y^k)^{-3} (1−x^k y^{k−1})^{-1} (1−x^{k−1} y^k)^{-1}`.
fn dimension_series(max_total: usize) -> Vec<Vec<u64>> {
    let n = max_total + 1;
    let mut c = vec![vec![0u64; n]; n];
    c[0][0] = 1;
    let mut divide = |a: usize, b: usize| {
        for i in 0..n {
            for j in 0..n {
                if i >= a && j >= b && i + j <= max_total {
                    c[i][j] += c[i - a][j - b];
                }
            }
        }
    };
    for k in 1..=max_total {
        for _ in 0..3 {
            divide(k, k);
        }
        divide(k, k - 1);
        divide(k - 1, k);
    }
    c
}

#[test]
fn dimensions_match_product_formula() {
    let c = dimension_series(6);
    for b in Bidegree::up_to_total(6) {
        let (i, j) = (b.n_plus as usize, b.n_minus as usize);
        assert_eq!(enumerate_types(b).len() as u64, c[i][j], "{b}");
    }
    let row = |t: u32| (0..=t).map(|i| enumerate_types(Bidegree::new(i, t - i)).len()).collect::<Vec<_>>();
    assert_eq!(row(2), [1, 4, 1]);
    assert_eq!(row(3), [1, 5, 5, 1]);
    assert_eq!(row(4), [1, 5, 15, 5, 1]);
    assert_eq!(row(5), [1, 5, 19, 19, 5, 1]);
}

#[test]
fn operators_commute_and_are_self_adjoint() {
    for b in Bidegree::up_to_total(6) {
        let p = block_matrix(OperatorKind::WPlus, b).unwrap();
        let m = block_matrix(OperatorKind::WMinus, b).unwrap();
        assert!((&(&p.matrix * &m.matrix) - &(&m.matrix * &p.matrix)).is_zero(), "{b}");
        let z = Matrix::diagonal(&p.zeta_weights());
        for x in [&p.matrix, &m.matrix] {
            assert_eq!(&x.transpose() * &z, &z * x, "{b}");
        }
        assert!(p.matrix.is_integral() && m.matrix.is_integral());
    }
}

#[test]
fn left_multiplication_is_wplus() {
    for b in Bidegree::up_to_total(5) {
        assert_eq!(mult_c2_matrix(b).unwrap(), block_matrix(OperatorKind::WPlus, b).unwrap(), "{b}");
    }
}

#[test]
fn walks_match_evolution() {
    for b in Bidegree::up_to_total(5) {
        let walks = hurwitz_by_paths_upto(&StateGraph::new(GroundSet::of_bidegree(b)), 6);
        let evolved = evolve_block(b, 6).unwrap();
        for (m, (w, e)) in walks.into_iter().zip(evolved).enumerate() {
            let w: PolyVector = w.into_iter().collect();
            assert_eq!(w, e, "{b} m={m}");
        }
    }
}

#[test]
fn series_is_sign_symmetric_and_operator_independent() {
    let plus = disconnected_series(6, 6).unwrap();
    for p in plus.coeffs() {
        assert_eq!(&p.swap_signs(), p);
    }
    for kind in [OperatorKind::WMinus, OperatorKind::WMean] {
        assert_eq!(disconnected_series_with(kind, 6, 6).unwrap(), plus, "{kind:?}");
    }
}

#[test]
fn connected_coefficients_vanish_for_odd_chi() {
    let h = connected_series(6, 6).unwrap();
    for (m, p) in h.coeffs().iter().enumerate() {
        for (mu, _) in p.iter() {
            assert_eq!(mu.euler_characteristic(m as u32).rem_euclid(2), 0, "{mu} m={m}");
        }
    }
}

#[test]
fn degree_two_family() {
    let h = connected_series(2, 9).unwrap();
    let mu = RamificationType::from_parts(&[2], &[], &[]);
    for m in 0..=9usize {
        let expected = Rational::from_integer(i64::from(m % 2 == 1).into());
        assert_eq!(h.coefficient(m, &mu), expected, "m={m}");
    }
}

#[test]
fn mean_operator_spectrum_is_pairwise_mean() {
    for b in Bidegree::up_to_total(5) {
        let report = common_eigenbasis(b, DEFAULT_TOLERANCE).unwrap();
        if !report.is_fully_exact() {
            continue;
        }
        let w = block_matrix(OperatorKind::WMean, b).unwrap();
        for e in &report.exact {
            let v = e.rational_coords();
            let mean = Rational::new(&e.lambda_plus + &e.lambda_minus, 2.into());
            let image = w.matrix.mul_vec(&v);
            assert!(image.iter().zip(&v).all(|(a, x)| (a - &mean * x).is_zero()), "{b}");
        }
    }
}

#[test]
fn spectral_reports_cover_every_block() {
    for b in Bidegree::up_to_total(6) {
        let r = common_eigenbasis(b, DEFAULT_TOLERANCE).unwrap();
        assert_eq!(r.exact.len() + r.approximate.len(), r.dim(), "{b}");
        assert!(r.approximate.iter().all(|a| a.residual < DEFAULT_TOLERANCE));
    }
}

#[test]
fn tilde_evolution_matches_walks() {
    for n in 0..=5usize {
        let graph = TildeGraph::new(n);
        let walks = tilde_hurwitz_upto(&graph, 6);
        let evolved = tilde_evolve(&tilde_operator_matrix(&graph), 6);
        for (m, (w, e)) in walks.into_iter().zip(evolved).enumerate() {
            let w: TildePoly = w.into_iter().collect();
            assert_eq!(w, e, "n={n} m={m}");
        }
    }
}
