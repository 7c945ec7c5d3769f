//! Property tests over randomly generated matrices, graphs and series:
//! the structural invariants that must hold for any input, not just the
//! curated test family.

use proptest::collection::vec;
use proptest::prelude::*;
use rand::SeedableRng;

use specmeasure::graph::WeightedGraph;
use specmeasure::jsm::{self, MultiIndex};
use specmeasure::linalg::{
    column_mix, eigendecompose, rat_int, rat_to_f64, schur_block, Matrix, Rat, SymmetricMatrix,
};
use specmeasure::series::Series;

fn symmetric_matrix(n: usize) -> impl Strategy<Value = SymmetricMatrix> {
    vec(-2i64..=2, n * (n + 1) / 2).prop_map(move |upper| {
        let mut it = upper.into_iter();
        let mut rows = vec![vec![0.0; n]; n];
        for i in 0..n {
            for j in i..n {
                let v = it.next().unwrap() as f64;
                rows[i][j] = v;
                rows[j][i] = v;
            }
        }
        SymmetricMatrix::from_rows(rows).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn eigendecomposition_reconstructs((n, seed) in (2usize..=6, any::<u64>())) {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let a = WeightedGraph::random_integer_symmetric(n, -2, 2, &mut rng);
        let eig = eigendecompose(&a).unwrap();
        // eigenvalues ascending
        prop_assert!(eig.eigenvalues().windows(2).all(|w| w[0] <= w[1] + 1e-12));
        // orthogonal basis with determinant +1
        let gram = eig.basis().transpose().matmul(eig.basis());
        prop_assert!(gram.sub(&Matrix::identity(n)).max_abs() < 1e-10);
        prop_assert!((eig.basis().det_lu() - 1.0).abs() < 1e-10);
        // reconstruction
        let lambda = Matrix::<f64>::from_fn(n, n, |i, j| if i == j { eig.eigenvalues()[i] } else { 0.0 });
        let re = eig.basis().matmul(&lambda).matmul(&eig.basis().transpose());
        prop_assert!(re.sub(a.matrix()).frobenius_norm() <= 1e-8 * a.frobenius_norm().max(1.0));
    }

    #[test]
    fn measure_mass_is_one(a in symmetric_matrix(5)) {
        let eig = eigendecompose(&a).unwrap();
        let measure = jsm::build_measure(&eig).unwrap();
        prop_assert!((measure.total_mass() - 1.0).abs() < 1e-10);
        // each atom is a permutation of the eigenvalue classes
        for atom in measure.atoms() {
            let mut sorted = atom.classes.clone();
            sorted.sort_unstable();
            sorted.dedup();
            prop_assert_eq!(sorted.len(), eig.classes().len());
        }
    }

    #[test]
    fn float_and_exact_column_mix_determinants_agree(
        a in symmetric_matrix(5),
        k in vec(0usize..=4, 5),
    ) {
        let float_det = column_mix(a.matrix(), &k).det_lu();
        let exact = column_mix(&a.to_rational(), &k).det_bareiss();
        let mixed = column_mix(a.matrix(), &k);
        let scale = (0..5)
            .map(|j| (0..5).map(|i| mixed[(i, j)].powi(2)).sum::<f64>().sqrt())
            .product::<f64>()
            .max(1.0);
        prop_assert!((float_det - rat_to_f64(&exact)).abs() <= 1e-8 * scale);
    }

    #[test]
    fn schur_block_equals_direct_inverse(
        a in symmetric_matrix(5),
        u_bits in 1u32..31,
        z_frac in -0.45f64..0.45,
    ) {
        let u: Vec<usize> = (0..5).filter(|i| u_bits & (1 << i) != 0).collect();
        prop_assume!(!u.is_empty() && u.len() < 5);
        let z = z_frac / a.frobenius_norm().max(1.0);
        let block = schur_block(&a, &u, z).unwrap();
        let full = Matrix::<f64>::identity(5)
            .sub(&a.matrix().scale(&z))
            .inverse()
            .unwrap();
        prop_assert!(block.sub(&full.submatrix(&u, &u)).max_abs() < 1e-10);
    }

    #[test]
    fn power_covariance_is_never_positive(
        seed in any::<u64>(),
        k in 0usize..=5,
    ) {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let g = WeightedGraph::gnp(6, 0.5, &mut rng);
        let cov = jsm::power_covariance(g.adjacency(), 0, 1, k).unwrap();
        prop_assert!(cov <= 1e-9);
    }

    #[test]
    fn series_inverse_roundtrips(coeffs in vec(-5i64..=5, 1..=8)) {
        prop_assume!(coeffs[0] != 0);
        let l = coeffs.len() - 1;
        let s = Series::from_coeffs(coeffs.iter().map(|&c| rat_int(c)).collect::<Vec<Rat>>(), l);
        prop_assert_eq!(s.mul(&s.inverse()), Series::one(l));
    }

    #[test]
    fn series_log_of_product_adds(
        a_tail in vec(-3i64..=3, 5),
        b_tail in vec(-3i64..=3, 5),
    ) {
        // both series have constant term 1
        let l = 5;
        let lift = |tail: &[i64]| {
            let mut coeffs = vec![rat_int(1)];
            coeffs.extend(tail.iter().map(|&c| rat_int(c)));
            Series::from_coeffs(coeffs, l)
        };
        let a = lift(&a_tail);
        let b = lift(&b_tail);
        prop_assert_eq!(a.mul(&b).log(), a.log().add(&b.log()));
    }

    #[test]
    fn generalized_moment_of_zero_index_is_one(a in symmetric_matrix(4)) {
        let m = jsm::generalized_moment_exact(&a, &MultiIndex::zeros(4));
        prop_assert_eq!(m, rat_int(1));
    }
}
