//! Star products `G^(n)`: `n` copies of a base graph merged along a
//! fixed vertex subset `u`, their scaled generalized moments, and the
//! multivariate limit law.
//!
//! The scaled moments `n^{-|k|/2} det(A^(n)[k_1..k_p, 0..0])` converge,
//! as `n` grows, to `det(D[k_1/2..k_p/2])` when every exponent is even
//! (and to zero otherwise), where `D = A_{u,ub} A_{ub,u}` counts common
//! neighbors outside the merge set. Moments are computed two ways: on
//! the assembled matrix directly, and through the block-resolvent
//! reduction `R_u(z) = (I - z A_uu - n z^2 A_{u,ub}(I - z A_{ub,ub})^{-1}
//! A_{ub,u})^{-1}`, whose cost does not grow with `n`.

use num::ToPrimitive;

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::jsm::{
    build_measure, generalized_moment, generalized_moment_exact, MultiIndex, SignedMeasure,
};
use crate::linalg::{
    complement, eigendecompose, rat, validate_subset, Matrix, Rat, SymmetricMatrix,
};
use crate::series::{MatrixSeries, Series};

/// Star products are materialised as dense matrices only up to this
/// dimension; larger ones go through the block-resolvent reduction.
pub const ASSEMBLE_CAP: usize = 600;

/// Default final tolerance of the convergence report (largest `n`).
pub const DEFAULT_FINAL_TOL: f64 = 0.05;

/// A merged star product: `copies` copies of `base` glued along
/// `merge_set`. The assembled adjacency matrix (merge set first, then
/// the non-merged block of each copy) is kept only at desk scale.
pub struct StarProduct {
    base: WeightedGraph,
    merge_set: Vec<usize>,
    copies: usize,
    assembled: Option<SymmetricMatrix>,
}

impl StarProduct {
    pub fn base(&self) -> &WeightedGraph {
        &self.base
    }

    pub fn merge_set(&self) -> &[usize] {
        &self.merge_set
    }

    pub fn copies(&self) -> usize {
        self.copies
    }

    /// Dimension `p + n(N - p)` of the assembled matrix.
    pub fn dim(&self) -> usize {
        let p = self.merge_set.len();
        p + self.copies * (self.base.n() - p)
    }

    /// The assembled adjacency matrix, when within [`ASSEMBLE_CAP`].
    pub fn assembled(&self) -> Option<&SymmetricMatrix> {
        self.assembled.as_ref()
    }
}

/// Builds `G^(n)`. The merge set must be a proper nonempty subset.
pub fn build_star_product(g: &WeightedGraph, u: &[usize], copies: usize) -> Result<StarProduct> {
    validate_subset(g.n(), u, true)?;
    if copies == 0 {
        return Err(Error::argument("star product needs at least one copy"));
    }
    let p = u.len();
    let ubar = complement(g.n(), u);
    let m = ubar.len();
    let dim = p + copies * m;

    let assembled = if dim <= ASSEMBLE_CAP {
        let a = g.adjacency();
        let entry = |i: usize, j: usize| -> f64 {
            let side = |x: usize| -> (Option<usize>, usize) {
                if x < p {
                    (None, u[x])
                } else {
                    ((Some((x - p) / m)), ubar[(x - p) % m])
                }
            };
            let (ci, vi) = side(i);
            let (cj, vj) = side(j);
            match (ci, cj) {
                (None, None) => a.get(vi, vj),
                (None, Some(_)) | (Some(_), None) => a.get(vi, vj),
                (Some(x), Some(y)) if x == y => a.get(vi, vj),
                _ => 0.0,
            }
        };
        Some(SymmetricMatrix::from_fn(dim, entry)?)
    } else {
        None
    };

    Ok(StarProduct {
        base: g.clone(),
        merge_set: u.to_vec(),
        copies,
        assembled,
    })
}

/// `(u,u)` blocks of the powers of the assembled matrix, as a matrix
/// series in the length variable, through the Schur closed form with the
/// copy count `n` sitting on the excursion term.
pub fn star_power_block(
    g: &WeightedGraph,
    u: &[usize],
    copies: usize,
    l: usize,
) -> Result<MatrixSeries<f64>> {
    validate_subset(g.n(), u, true)?;
    let n = g.n();
    let p = u.len();
    let ubar = complement(n, u);
    let a = g.adjacency().matrix();
    let a_uu = a.submatrix(u, u);
    let a_uv = a.submatrix(u, &ubar);
    let a_vu = a.submatrix(&ubar, u);
    let a_vv = a.submatrix(&ubar, &ubar);

    // E(z) = z A_uu + n z^2 A_{u,ub} (I - z A_{ub,ub})^{-1} A_{ub,u}
    let mut e = MatrixSeries::<f64>::zero(p, l);
    if l >= 1 {
        e.set_coeff(1, a_uu);
    }
    let factor = copies as f64;
    let mut inner_power = Matrix::<f64>::identity(ubar.len());
    for k in 0..l.saturating_sub(1) {
        if k > 0 {
            inner_power = inner_power.matmul(&a_vv);
        }
        let sandwich = a_uv.matmul(&inner_power).matmul(&a_vu);
        e.set_coeff(k + 2, sandwich.scale(&factor));
    }
    Ok(MatrixSeries::identity(p, l).sub(&e).inverse())
}

fn sqrt_power(n: usize, total: usize) -> f64 {
    // keep n^{total/2} exact for even totals
    let whole = (n as f64).powi((total / 2) as i32);
    if total % 2 == 1 {
        whole * (n as f64).sqrt()
    } else {
        whole
    }
}

/// Scaled moment `n^{-|k|/2} det(A^(n)[k_1..k_p, 0..0])` on the
/// assembled matrix (errors when the star product was too large to
/// assemble).
pub fn scaled_moment_direct(sp: &StarProduct, k: &MultiIndex) -> Result<f64> {
    let assembled = sp.assembled().ok_or_else(|| {
        Error::argument(format!(
            "star product of dimension {} exceeds the assembly cap {}; use the reduced path",
            sp.dim(),
            ASSEMBLE_CAP
        ))
    })?;
    let p = sp.merge_set.len();
    assert_eq!(k.len(), p, "one exponent per merged vertex");
    let full = MultiIndex::on_subset(sp.dim(), &(0..p).collect::<Vec<_>>(), k.components());
    Ok(generalized_moment(assembled, &full) / sqrt_power(sp.copies, k.total()))
}

/// Scaled moment through the block-resolvent reduction: the determinant
/// of the column-mixed matrix collapses to the `p x p` minor
/// `det( ((A^(n))^{k_i})_{r, u_i} )_{r, i in u}` because all other
/// columns are identity columns.
pub fn scaled_moment_reduced(sp: &StarProduct, k: &MultiIndex) -> Result<f64> {
    let kmax = k.components().iter().copied().max().unwrap_or(0);
    let block = star_power_block(&sp.base, &sp.merge_set, sp.copies, kmax)?;
    Ok(scaled_moment_from_block(&block, sp.copies, k))
}

/// Scaled moment out of a precomputed power block (see
/// [`star_power_block`]); useful when many multi-indices share one block.
pub fn scaled_moment_from_block(block: &MatrixSeries<f64>, copies: usize, k: &MultiIndex) -> f64 {
    let p = block.dim();
    assert_eq!(k.len(), p, "one exponent per merged vertex");
    let minor = Matrix::<f64>::from_fn(p, p, |r, i| block.coeff(k.components()[i])[(r, i)]);
    minor.det_lu() / sqrt_power(copies, k.total())
}

/// Scaled moment along the cheapest exact route available.
pub fn scaled_moment(sp: &StarProduct, k: &MultiIndex) -> Result<f64> {
    if sp.assembled.is_some() {
        scaled_moment_direct(sp, k)
    } else {
        scaled_moment_reduced(sp, k)
    }
}

/// The limit law of the scaled star-product moments: the joint spectral
/// measure of `D = A_{u,ub} A_{ub,u}`, symmetrised by independent
/// Rademacher signs. Distribution-level statements are checked at the
/// level of moments and truncated MGFs; signed measures are not sampled.
pub struct LimitLaw {
    d: SymmetricMatrix,
    y_measure: SignedMeasure,
    y_max: f64,
}

impl LimitLaw {
    pub fn d(&self) -> &SymmetricMatrix {
        &self.d
    }

    pub fn y_measure(&self) -> &SignedMeasure {
        &self.y_measure
    }

    /// Largest eigenvalue of `D` (spectral bound for MGF truncations).
    pub fn y_max(&self) -> f64 {
        self.y_max
    }

    pub fn p(&self) -> usize {
        self.d.n()
    }
}

/// Builds the limit law for merging at `u`. `D` is positive
/// semidefinite; entry `(i,j)` is the weighted count of common
/// neighbors of `u_i` and `u_j` outside `u`.
pub fn build_limit_law(g: &WeightedGraph, u: &[usize]) -> Result<LimitLaw> {
    validate_subset(g.n(), u, true)?;
    let ubar = complement(g.n(), u);
    let a = g.adjacency().matrix();
    let d_mat = a.submatrix(u, &ubar).matmul(&a.submatrix(&ubar, u));
    let d = SymmetricMatrix::from_matrix(d_mat)?;
    let eig = eigendecompose(&d)?;
    let y_max = eig.eigenvalues().last().copied().unwrap_or(0.0);
    let y_measure = build_measure(&eig)?;
    Ok(LimitLaw {
        d,
        y_measure,
        y_max,
    })
}

/// Limit of the scaled moments: `det(D[k_1/2 .. k_p/2])` when every
/// exponent is even, zero otherwise.
pub fn limit_moment(law: &LimitLaw, k: &MultiIndex) -> f64 {
    if k.components().iter().any(|&e| e % 2 == 1) {
        return 0.0;
    }
    let halved: Vec<usize> = k.components().iter().map(|&e| e / 2).collect();
    generalized_moment(&law.d, &MultiIndex::new(halved))
}

/// Exact-rational limit moment.
pub fn limit_moment_exact(law: &LimitLaw, k: &MultiIndex) -> Rat {
    if k.components().iter().any(|&e| e % 2 == 1) {
        return Rat::from_integer(0.into());
    }
    let halved: Vec<usize> = k.components().iter().map(|&e| e / 2).collect();
    generalized_moment_exact(&law.d, &MultiIndex::new(halved))
}

/// One row of a convergence table.
#[derive(Clone, Debug)]
pub struct ConvergenceRow {
    pub n: usize,
    pub scaled: f64,
    pub limit: f64,
    pub gap: f64,
    /// Direct-vs-reduced deviation when both paths ran at this `n`.
    pub path_deviation: Option<f64>,
}

/// Convergence report for one `(G, u, k)` case.
#[derive(Clone, Debug)]
pub struct ConvergenceReport {
    pub rows: Vec<ConvergenceRow>,
    /// Gaps are non-increasing beyond the first row (up to 1e-9 slack).
    pub monotone_ok: bool,
    /// Final gap is within the configured tolerance.
    pub final_ok: bool,
    pub final_gap: f64,
    pub tol_final: f64,
    /// Least-squares slope of `log gap` against `log n` over rows with a
    /// resolvable gap; `None` when fewer than two rows qualify.
    pub loglog_slope: Option<f64>,
    /// Largest direct-vs-reduced deviation observed (both-path rows).
    pub max_path_deviation: f64,
}

impl ConvergenceReport {
    pub fn pass(&self) -> bool {
        self.monotone_ok && self.final_ok
    }
}

/// Runs the star-product experiment over `n_list` (strictly increasing)
/// and compares scaled moments with the limit law.
pub fn convergence_report(
    g: &WeightedGraph,
    u: &[usize],
    k: &MultiIndex,
    n_list: &[usize],
    tol_final: f64,
) -> Result<ConvergenceReport> {
    if n_list.is_empty() || n_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::argument("n_list must be nonempty and increasing"));
    }
    let law = build_limit_law(g, u)?;
    let limit = limit_moment(&law, k);

    let mut rows = Vec::with_capacity(n_list.len());
    for &n in n_list {
        let sp = build_star_product(g, u, n)?;
        let reduced = scaled_moment_reduced(&sp, k)?;
        let path_deviation = if sp.assembled().is_some() {
            let direct = scaled_moment_direct(&sp, k)?;
            Some((direct - reduced).abs())
        } else {
            None
        };
        rows.push(ConvergenceRow {
            n,
            scaled: reduced,
            limit,
            gap: (reduced - limit).abs(),
            path_deviation,
        });
    }

    let monotone_ok = rows.windows(2).skip(1).all(|w| w[1].gap <= w[0].gap + 1e-9);
    let final_gap = rows.last().unwrap().gap;
    let loglog_slope = fit_loglog_slope(&rows);
    let max_path_deviation = rows
        .iter()
        .filter_map(|r| r.path_deviation)
        .fold(0.0, f64::max);
    Ok(ConvergenceReport {
        final_ok: final_gap <= tol_final,
        monotone_ok,
        final_gap,
        tol_final,
        loglog_slope,
        rows,
        max_path_deviation,
    })
}

fn fit_loglog_slope(rows: &[ConvergenceRow]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.gap > 1e-10)
        .map(|r| ((r.n as f64).ln(), r.gap.ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    Some((n * sxy - sx * sy) / (n * sxx - sx * sx))
}

/// Row of the single-root special case: one moment order `k`.
#[derive(Clone, Debug)]
pub struct ObataRow {
    pub k: usize,
    pub report: ConvergenceReport,
    /// `d_o^{k/2}` for even `k`, zero for odd `k`.
    pub expected_limit: f64,
    /// Exact agreement of the limit moment with the expected value.
    pub limit_exact: bool,
}

/// Report of the `p = 1` special case rooted at a single vertex: the
/// limit law is the symmetric two-point law at `+-sqrt(d_o)`.
#[derive(Clone, Debug)]
pub struct ObataReport {
    pub root_degree: f64,
    pub rows: Vec<ObataRow>,
}

impl ObataReport {
    pub fn pass(&self) -> bool {
        self.rows.iter().all(|r| r.report.pass() && r.limit_exact)
    }
}

/// Runs [`convergence_report`] for `u = {root}` and every moment order
/// `k <= kmax`, additionally pinning the limit moments to `d_o^{k/2}`
/// (even) and `0` (odd), exactly.
pub fn obata_special_case(
    g: &WeightedGraph,
    root: usize,
    n_list: &[usize],
    kmax: usize,
    tol_final: f64,
) -> Result<ObataReport> {
    let u = [root];
    let law = build_limit_law(g, &u)?;
    let d_o = law.d().get(0, 0);
    let d_o_exact = rat(d_o);

    let mut rows = Vec::new();
    for k in 1..=kmax {
        let mi = MultiIndex::new(vec![k]);
        let report = convergence_report(g, &u, &mi, n_list, tol_final)?;
        let (expected_limit, expected_exact) = if k % 2 == 0 {
            let mut pow = Rat::from_integer(1.into());
            for _ in 0..k / 2 {
                pow *= d_o_exact.clone();
            }
            (pow.to_f64().unwrap(), pow)
        } else {
            (0.0, Rat::from_integer(0.into()))
        };
        let limit_exact = limit_moment_exact(&law, &mi) == expected_exact;
        rows.push(ObataRow {
            k,
            report,
            expected_limit,
            limit_exact,
        });
    }
    Ok(ObataReport {
        root_degree: d_o,
        rows,
    })
}

/// Both sides of the Rademacher MGF identity
/// `E prod_i (1 - z_i B_i sqrt(Y_i))^{-1} = E prod_i (1 - z_i^2 Y_i)^{-1}`,
/// expanded to total degree `l` over the finite measure of `D` and
/// averaged over the `2^p` sign patterns.
pub fn rademacher_mgf_check(law: &LimitLaw, z: &[f64], l: usize) -> Result<(f64, f64)> {
    let p = law.p();
    if z.len() != p {
        return Err(Error::argument("one z per merged vertex"));
    }
    // truncation control: the factor ratios are bounded by q
    let q = z
        .iter()
        .map(|zi| zi.abs() * law.y_max.max(0.0).sqrt())
        .fold(0.0, f64::max);
    let tail = if q < 1.0 {
        q.powi(l as i32 + 1) / (1.0 - q)
    } else {
        f64::INFINITY
    };
    if tail > 1e-10 {
        let q_target = 1e-10f64.powf(1.0 / (l as f64 + 1.0));
        let max_abs_z = 0.9 * q_target / law.y_max.max(1e-12).sqrt();
        return Err(Error::TruncationTail { max_abs_z });
    }

    let sqrt_y = |y: f64| {
        debug_assert!(y > -1e-9, "limit coordinates must be nonnegative");
        y.max(0.0).sqrt()
    };

    // left side: geometric factors in z_i b_i sqrt(y_i), sign-averaged
    let mut lhs = 0.0;
    for pattern in 0..1u32 << p {
        let mut pattern_total = 0.0;
        for atom in law.y_measure.atoms() {
            let mut product = Series::<f64>::one(l);
            for i in 0..p {
                let b = if pattern & (1 << i) == 0 { 1.0 } else { -1.0 };
                let ratio = z[i] * b * sqrt_y(atom.point[i]);
                product = product.mul(&Series::geometric(ratio, 1, l));
            }
            pattern_total += atom.weight * product.sum_coeffs();
        }
        lhs += pattern_total;
    }
    lhs /= (1u32 << p) as f64;

    // right side: geometric factors in z_i^2 y_i, graded by z-degree
    let mut rhs = 0.0;
    for atom in law.y_measure.atoms() {
        let mut product = Series::<f64>::one(l);
        for i in 0..p {
            let ratio = z[i] * z[i] * atom.point[i].max(0.0);
            product = product.mul(&Series::geometric(ratio, 2, l));
        }
        rhs += atom.weight * product.sum_coeffs();
    }

    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::schur_block;

    #[test]
    fn star_of_edges_is_a_star_graph() {
        // P2 merged at one end, 3 copies: K_{1,3}
        let g = WeightedGraph::path(2);
        let sp = build_star_product(&g, &[0], 3).unwrap();
        assert_eq!(sp.dim(), 4);
        let expect = WeightedGraph::star(3);
        assert_eq!(sp.assembled().unwrap(), expect.adjacency());
    }

    #[test]
    fn one_copy_reproduces_the_base() {
        // u = {1} of P3: relabeled but permutation-similar; degrees agree
        let g = WeightedGraph::path(3);
        let sp = build_star_product(&g, &[1], 1).unwrap();
        let a = sp.assembled().unwrap();
        let mut degrees: Vec<f64> = (0..3).map(|i| (0..3).map(|j| a.get(i, j)).sum()).collect();
        degrees.sort_by(f64::total_cmp);
        assert_eq!(degrees, vec![1.0, 1.0, 2.0]);
    }

    #[test]
    fn middle_merge_of_p3() {
        // two copies of P3 merged at the middle: 5 vertices, center degree 4
        let g = WeightedGraph::path(3);
        let sp = build_star_product(&g, &[1], 2).unwrap();
        assert_eq!(sp.dim(), 5);
        let a = sp.assembled().unwrap();
        let center_degree: f64 = (0..5).map(|j| a.get(0, j)).sum();
        assert_eq!(center_degree, 4.0);
    }

    #[test]
    fn improper_merge_sets_are_rejected() {
        let g = WeightedGraph::path(2);
        assert!(build_star_product(&g, &[], 2).is_err());
        assert!(build_star_product(&g, &[0, 1], 2).is_err());
    }

    #[test]
    fn scaled_moment_examples() {
        let g = WeightedGraph::path(2);
        for n in [1, 3, 10] {
            let sp = build_star_product(&g, &[0], n).unwrap();
            // center degree n over n: exactly one
            let m2 = scaled_moment(&sp, &MultiIndex::new(vec![2])).unwrap();
            assert!((m2 - 1.0).abs() < 1e-12, "n={n}: {m2}");
            // odd moment of a bipartite star vanishes
            let m1 = scaled_moment(&sp, &MultiIndex::new(vec![1])).unwrap();
            assert_eq!(m1, 0.0);
            // zero multi-index: total mass one
            let m0 = scaled_moment(&sp, &MultiIndex::zeros(1)).unwrap();
            assert!((m0 - 1.0).abs() < 1e-12);
        }
        // K3 merged at a vertex: (A^2)_{00}/n = 2n/n
        let k3 = WeightedGraph::complete(3);
        for n in [1, 5, 50] {
            let sp = build_star_product(&k3, &[0], n).unwrap();
            let m2 = scaled_moment(&sp, &MultiIndex::new(vec![2])).unwrap();
            assert!((m2 - 2.0).abs() < 1e-12);
        }
    }

    #[test]
    fn direct_and_reduced_paths_agree() {
        let k3 = WeightedGraph::complete(3);
        let sp = build_star_product(&k3, &[0], 100).unwrap();
        for k in 1..=6usize {
            let mi = MultiIndex::new(vec![k]);
            let direct = scaled_moment_direct(&sp, &mi).unwrap();
            let reduced = scaled_moment_reduced(&sp, &mi).unwrap();
            let scale = direct.abs().max(1.0);
            assert!(
                (direct - reduced).abs() <= 1e-9 * scale,
                "k={k}: {direct} vs {reduced}"
            );
        }
    }

    #[test]
    fn block_resolvent_closed_form_matches_schur() {
        // schur_block on the assembled matrix against the closed form
        // with the factor n on the excursion term
        let g = WeightedGraph::path(3);
        let u = [0, 1];
        for n in [2, 7, 20] {
            let sp = build_star_product(&g, &u, n).unwrap();
            let z = 0.3 / sp.assembled().unwrap().frobenius_norm();
            let merged_u: Vec<usize> = (0..u.len()).collect();
            let lhs = schur_block(sp.assembled().unwrap(), &merged_u, z).unwrap();

            // closed form on base-sized matrices
            let ubar = complement(g.n(), &u);
            let a = g.adjacency().matrix();
            let inner = Matrix::<f64>::identity(1)
                .sub(&a.submatrix(&ubar, &ubar).scale(&z))
                .inverse()
                .unwrap();
            let sandwich = a
                .submatrix(&u, &ubar)
                .matmul(&inner)
                .matmul(&a.submatrix(&ubar, &u))
                .scale(&(n as f64 * z * z));
            let rhs = Matrix::<f64>::identity(2)
                .sub(&a.submatrix(&u, &u).scale(&z))
                .sub(&sandwich)
                .inverse()
                .unwrap();
            assert!(lhs.sub(&rhs).max_abs() < 1e-10);
        }
    }

    #[test]
    fn limit_law_shapes() {
        // P2 at an end: D = (1)
        let law = build_limit_law(&WeightedGraph::path(2), &[0]).unwrap();
        assert_eq!(law.d().get(0, 0), 1.0);
        assert!((limit_moment(&law, &MultiIndex::new(vec![2])) - 1.0).abs() < 1e-12);
        assert!((limit_moment(&law, &MultiIndex::new(vec![4])) - 1.0).abs() < 1e-12);
        assert_eq!(limit_moment(&law, &MultiIndex::new(vec![3])), 0.0);

        // P3 at the two ends: D = [[1,1],[1,1]], det D = 0
        let law = build_limit_law(&WeightedGraph::path(3), &[0, 2]).unwrap();
        assert_eq!(law.d().get(0, 1), 1.0);
        assert_eq!(limit_moment(&law, &MultiIndex::new(vec![2, 2])), 0.0);

        // D is PSD: every limit coordinate is nonnegative
        let law = build_limit_law(&WeightedGraph::complete(4), &[0, 1]).unwrap();
        for atom in law.y_measure().atoms() {
            for &y in &atom.point {
                assert!(y > -1e-10);
            }
        }
    }

    #[test]
    fn convergence_of_k3_fourth_moment() {
        // gap (A^(n)^4)_{00}/n^2 - 4 = 2/n, strictly decreasing
        let k3 = WeightedGraph::complete(3);
        let report = convergence_report(
            &k3,
            &[0],
            &MultiIndex::new(vec![4]),
            &[100, 1000, 10000],
            DEFAULT_FINAL_TOL,
        )
        .unwrap();
        assert!(report.pass(), "{report:?}");
        assert!(report.final_gap < 3e-4);
        let slope = report.loglog_slope.unwrap();
        assert!(slope < -0.9, "slope {slope}");
        assert!(report.max_path_deviation < 1e-9);
    }

    #[test]
    fn exact_zero_gap_cases() {
        // P2 rooted at an end: scaled second moment is exactly 1 at all n
        let report = convergence_report(
            &WeightedGraph::path(2),
            &[0],
            &MultiIndex::new(vec![2]),
            &[1, 10, 100],
            DEFAULT_FINAL_TOL,
        )
        .unwrap();
        assert!(report.pass());
        for row in &report.rows {
            assert_eq!(row.gap, 0.0);
        }
        assert!(report.loglog_slope.is_none());
    }

    #[test]
    fn obata_star_family() {
        // P2 at a degree-one end: d_o = 1, limit moments 1,0,1,0,...
        let rep = obata_special_case(&WeightedGraph::path(2), 0, &[10, 100], 6, 0.05).unwrap();
        assert_eq!(rep.root_degree, 1.0);
        assert!(rep.pass());

        // K3: d_o = 2; K_{1,4} at the center: d_o = 4
        let rep =
            obata_special_case(&WeightedGraph::complete(3), 0, &[100, 1000], 4, 0.05).unwrap();
        assert_eq!(rep.root_degree, 2.0);
        assert_eq!(rep.rows[1].expected_limit, 2.0);
        assert!(rep.rows.iter().all(|r| r.limit_exact));

        let rep = obata_special_case(&WeightedGraph::star(4), 0, &[100, 1000], 2, 0.05).unwrap();
        assert_eq!(rep.root_degree, 4.0);
        assert_eq!(rep.rows[1].expected_limit, 4.0);
    }

    #[test]
    fn atoms_carry_the_full_spectrum_norm() {
        // every atom is a permutation of the spectrum, so its squared
        // euclidean norm equals ||A^(n)||_F^2, which is at most n ||A||_F^2
        let g = WeightedGraph::path(3);
        for copies in [1usize, 2] {
            let sp = build_star_product(&g, &[1], copies).unwrap();
            let assembled = sp.assembled().unwrap();
            let frob_sq = assembled.frobenius_norm().powi(2);
            let bound = copies as f64 * g.adjacency().frobenius_norm().powi(2);
            assert!(frob_sq <= bound + 1e-9);
            let eig = crate::linalg::eigendecompose(assembled).unwrap();
            let measure = build_measure(&eig).unwrap();
            for atom in measure.atoms() {
                let norm_sq: f64 = atom.point.iter().map(|x| x * x).sum();
                assert!((norm_sq - frob_sq).abs() < 1e-9 * frob_sq.max(1.0));
            }
        }
    }

    #[test]
    fn rademacher_identity_small_cases() {
        // p = 1, D = (1), z = 0: both sides are 1
        let law = build_limit_law(&WeightedGraph::path(2), &[0]).unwrap();
        let (lhs, rhs) = rademacher_mgf_check(&law, &[0.0], 10).unwrap();
        assert_eq!((lhs, rhs), (1.0, 1.0));

        // z = 0.1: both sides 1/(1 - 0.01)
        let (lhs, rhs) = rademacher_mgf_check(&law, &[0.1], 40).unwrap();
        assert!((lhs - 1.0 / 0.99).abs() < 1e-10);
        assert!((rhs - 1.0 / 0.99).abs() < 1e-10);

        // p = 2 on the ends of P3
        let law = build_limit_law(&WeightedGraph::path(3), &[0, 2]).unwrap();
        let (lhs, rhs) = rademacher_mgf_check(&law, &[0.1, 0.1], 40).unwrap();
        assert!((lhs - rhs).abs() < 1e-9, "{lhs} vs {rhs}");
    }

    #[test]
    fn truncation_tail_is_guarded() {
        let law = build_limit_law(&WeightedGraph::star(4), &[0]).unwrap();
        let err = rademacher_mgf_check(&law, &[0.6], 10).unwrap_err();
        match err {
            Error::TruncationTail { max_abs_z } => assert!(max_abs_z > 0.0),
            other => panic!("unexpected error {other:?}"),
        }
    }
}
