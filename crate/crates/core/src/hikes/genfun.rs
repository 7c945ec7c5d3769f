//! Walk generating functions as exact truncated series.
//!
//! Everything here is computed over `Rat`: floating edge weights are
//! dyadic rationals, so closed formulas and brute-force enumerations can
//! be compared coefficient by coefficient with no tolerance at all. The
//! series are graded by path length, with
//!
//! * `zeta(z) = det(R(z)) = 1/det(I - zA)` generating hikes,
//! * `M(z) = det(I - zA)` the Moebius function (signed disjoint
//!   cycle covers),
//! * `E_u(z) = z A_uu + z^2 A_{u,ub} (I - z A_{ub,ub})^{-1} A_{ub,u}`
//!   generating excursions on `u`,
//! * `(I - E_u(z))^{-1} = R(z)_{uu}` the resolvent block,
//! * `r_u(z) = det(R(z)_{uu})` generating hikes whose prime right
//!   divisors all intersect `u`.

use crate::error::Result;
use crate::graph::WeightedGraph;
use crate::hikes::heap::{vertex_mask, CycleSet, Hike};
use crate::linalg::{complement, validate_subset, Matrix, Rat, Scalar};
use crate::series::{MatrixSeries, Series};

/// `det(I - zA)` truncated at `l`, through the exact Faddeev–LeVerrier
/// characteristic polynomial: if `det(zI - A) = z^n + c_1 z^{n-1} + ... + c_n`
/// then `det(I - zA) = 1 + c_1 z + ... + c_n z^n`.
pub fn mobius_series(g: &WeightedGraph, l: usize) -> Series<Rat> {
    let a = g.adjacency().to_rational();
    let n = a.rows();
    let mut coeffs = vec![Rat::from_i64(1)];
    let mut work = Matrix::<Rat>::identity(n);
    for k in 1..=n {
        let an = a.matmul(&work);
        let ck = -(an.trace() / Rat::from_i64(k as i64));
        work = an.add(&Matrix::identity(n).scale(&ck));
        coeffs.push(ck);
    }
    Series::from_coeffs(coeffs, l)
}

/// The hike zeta function `zeta(z) = 1/det(I - zA)` truncated at `l`.
pub fn zeta_series(g: &WeightedGraph, l: usize) -> Series<Rat> {
    mobius_series(g, l).inverse()
}

/// Excursion matrix generating function `E_u(z)` by the closed formula.
pub fn excursion_matrix(g: &WeightedGraph, u: &[usize], l: usize) -> Result<MatrixSeries<Rat>> {
    validate_subset(g.n(), u, true)?;
    let n = g.n();
    let ubar = complement(n, u);
    let a = g.adjacency().to_rational();
    let a_uu = a.submatrix(u, u);
    let a_uv = a.submatrix(u, &ubar);
    let a_vu = a.submatrix(&ubar, u);
    let a_vv = a.submatrix(&ubar, &ubar);

    let mut out = MatrixSeries::<Rat>::zero(u.len(), l);
    if l >= 1 {
        out.set_coeff(1, a_uu);
    }
    // coefficient k+2 is A_{u,ub} A_{ub,ub}^k A_{ub,u}
    let mut inner_power = Matrix::<Rat>::identity(ubar.len());
    for k in 0..l.saturating_sub(1) {
        if k > 0 {
            inner_power = inner_power.matmul(&a_vv);
        }
        out.set_coeff(k + 2, a_uv.matmul(&inner_power).matmul(&a_vu));
    }
    Ok(out)
}

/// Resolvent block `R_u(z) = (I - E_u(z))^{-1} = ((I - zA)^{-1})_{uu}`.
pub fn resolvent_block(g: &WeightedGraph, u: &[usize], l: usize) -> Result<MatrixSeries<Rat>> {
    let e = excursion_matrix(g, u, l)?;
    Ok(MatrixSeries::identity(u.len(), l).sub(&e).inverse())
}

/// `r_u(z) = det(R_u(z))`, the generating function of hikes whose prime
/// right divisors all intersect `u`.
pub fn ru_series(g: &WeightedGraph, u: &[usize], l: usize) -> Result<Series<Rat>> {
    Ok(resolvent_block(g, u, l)?.det())
}

/// `sum_h Lambda(h) h z^l(h) = tr R(z)`; the coefficient at `z^0` is `n`
/// (trace of the identity), carried by no hike.
pub fn von_mangoldt_series(g: &WeightedGraph, l: usize) -> Series<Rat> {
    MatrixSeries::resolvent(&g.adjacency().to_rational(), l).trace()
}

/// `sum_h Lambda_u(h) h z^l(h) = tr R_u(z)`; coefficient `|u|` at `z^0`.
pub fn von_mangoldt_u_series(g: &WeightedGraph, u: &[usize], l: usize) -> Result<Series<Rat>> {
    Ok(resolvent_block(g, u, l)?.trace())
}

/// Boolean cumulant series of `X_i`: `B(z) = 1 - 1/M(z)` for the moment
/// series `M(z) = sum_k (A^k)_{ii} z^k`. Equals the excursion series on
/// the singleton `{i}`.
pub fn boolean_cumulants(g: &WeightedGraph, i: usize, l: usize) -> Series<Rat> {
    let moments = MatrixSeries::resolvent(&g.adjacency().to_rational(), l).entry(i, i);
    Series::one(l).sub(&moments.inverse())
}

// ---------------------------------------------------------------------
// Brute-force enumeration sides
// ---------------------------------------------------------------------

/// Generating series of a hike list: `sum_h w(h) z^{l(h)}`.
pub fn hike_series(hikes: &[Hike], l: usize) -> Series<Rat> {
    let mut out = Series::<Rat>::zero(l);
    for h in hikes {
        if h.length() <= l {
            let c = out.coeff(h.length()).clone() + h.weight().clone();
            out.set(h.length(), c);
        }
    }
    out
}

/// Same, restricted to hikes whose prime right divisors all intersect `u`.
pub fn filtered_hike_series(cs: &CycleSet, hikes: &[Hike], u: &[usize], l: usize) -> Series<Rat> {
    let mask = vertex_mask(u);
    let kept: Vec<Hike> = hikes
        .iter()
        .filter(|h| h.right_divisors_intersect(cs, mask))
        .cloned()
        .collect();
    hike_series(&kept, l)
}

/// `sum_pyramids Lambda(h) w(h) z^{l(h)}` from an enumerated hike list.
pub fn pyramid_lambda_series(cs: &CycleSet, hikes: &[Hike], l: usize) -> Series<Rat> {
    let mut out = Series::<Rat>::zero(l);
    for h in hikes {
        if h.length() > l {
            continue;
        }
        let lambda = h.lambda(cs);
        if lambda > 0 {
            let c =
                out.coeff(h.length()).clone() + h.weight().clone() * Rat::from_i64(lambda as i64);
            out.set(h.length(), c);
        }
    }
    out
}

/// `sum_pyramids Lambda_u(h) w(h) z^{l(h)}`.
pub fn pyramid_lambda_u_series(
    cs: &CycleSet,
    hikes: &[Hike],
    u: &[usize],
    l: usize,
) -> Series<Rat> {
    let mask = vertex_mask(u);
    let mut out = Series::<Rat>::zero(l);
    for h in hikes {
        if h.length() > l {
            continue;
        }
        let lam = h.lambda_u(cs, mask);
        if lam > 0 {
            let c = out.coeff(h.length()).clone() + h.weight().clone() * Rat::from_i64(lam as i64);
            out.set(h.length(), c);
        }
    }
    out
}

/// `sum_h Lambda_u(h)/ell_u(h) w(h) z^{l(h)}` with the convention that
/// terms with `ell_u(h) = 0` vanish; the enumeration side of `log r_u`.
pub fn pyramid_log_series(cs: &CycleSet, hikes: &[Hike], u: &[usize], l: usize) -> Series<Rat> {
    let mask = vertex_mask(u);
    let mut out = Series::<Rat>::zero(l);
    for h in hikes {
        if h.length() > l {
            continue;
        }
        let lam = h.lambda_u(cs, mask);
        if lam == 0 {
            continue;
        }
        let visits = h.visits(cs, mask);
        let term = h.weight().clone() * Rat::new((lam as i64).into(), (visits as i64).into());
        let c = out.coeff(h.length()).clone() + term;
        out.set(h.length(), c);
    }
    out
}

/// Brute-force excursion enumeration: entry `(i, j)` at degree `k` is the
/// total weight of walks of length `k` from `u_i` to `u_j` whose interior
/// vertices avoid `u`.
pub fn excursion_enumeration(g: &WeightedGraph, u: &[usize], l: usize) -> MatrixSeries<Rat> {
    let p = u.len();
    let in_u = |v: usize| u.iter().position(|&x| x == v);
    let mut out = MatrixSeries::<Rat>::zero(p, l);
    for (i, &start) in u.iter().enumerate() {
        // DFS over walks start -> (ubar)* -> u, length-bounded
        let mut stack: Vec<(usize, usize, Rat)> = vec![(start, 0, Rat::from_i64(1))];
        while let Some((here, len, weight)) = stack.pop() {
            for next in 0..g.n() {
                let w = g.weight(here, next);
                if w == 0.0 || len + 1 > l {
                    continue;
                }
                let extended = weight.clone() * crate::linalg::rat(w);
                if let Some(j) = in_u(next) {
                    let mut coeff = out.coeff(len + 1).clone();
                    coeff[(i, j)] = coeff[(i, j)].clone() + extended.clone();
                    out.set_coeff(len + 1, coeff);
                } else {
                    stack.push((next, len + 1, extended));
                }
            }
        }
    }
    out
}

/// Signed vertex-disjoint cycle-cover expansion of `det(I - zA)`:
/// `sum over disjoint cycle sets of (-1)^{#cycles} w z^{total length}`.
pub fn cycle_cover_series(cs: &CycleSet, l: usize) -> Series<Rat> {
    let mut out = Series::<Rat>::one(l);
    let mut chosen = Vec::new();
    fn rec(
        cs: &CycleSet,
        from: usize,
        used: u64,
        len: usize,
        weight: &Rat,
        count: usize,
        l: usize,
        chosen: &mut Vec<usize>,
        out: &mut Series<Rat>,
    ) {
        for id in from..cs.len() {
            let clen = cs.length(id);
            if len + clen > l || cs.mask(id) & used != 0 {
                continue;
            }
            let w = weight.clone() * cs.cycle(id).weight().clone();
            let signed = if (count + 1) % 2 == 1 {
                -w.clone()
            } else {
                w.clone()
            };
            let c = out.coeff(len + clen).clone() + signed;
            out.set(len + clen, c);
            chosen.push(id);
            rec(
                cs,
                id + 1,
                used | cs.mask(id),
                len + clen,
                &w,
                count + 1,
                l,
                chosen,
                out,
            );
            chosen.pop();
        }
    }
    rec(cs, 0, 0, 0, &Rat::from_i64(1), 0, l, &mut chosen, &mut out);
    out
}

/// Sum of the weights of simple cycles with vertex set exactly `u`
/// (`c(u)` in the cumulant identity).
pub fn cycle_weight_sum_on(cs: &CycleSet, u: &[usize]) -> Rat {
    let mask = vertex_mask(u);
    cs.cycles()
        .iter()
        .enumerate()
        .filter(|&(id, _)| cs.mask(id) == mask)
        .fold(Rat::from_i64(0), |acc, (_, c)| acc + c.weight().clone())
}

/// Report of [`log_ru_check`]: `log r_u(z)` against the pyramid sums
/// `sum Lambda_u(h)/ell_u(h) h z^{l(h)}`, and for singletons also
/// against closed walks from `i` divided by their visits to `i`.
#[derive(Clone, Debug)]
pub struct LogRuCheck {
    pub log_ru: Series<Rat>,
    pub pyramid_side: Series<Rat>,
    pub walk_side: Option<Series<Rat>>,
    pub pass: bool,
}

pub fn log_ru_check(g: &WeightedGraph, u: &[usize], l: usize) -> Result<LogRuCheck> {
    let log_ru = ru_series(g, u, l)?.log();

    let cs = CycleSet::new(g);
    let hikes = crate::hikes::heap::enumerate_hikes_with_cap(g, l, l.max(super::DEFAULT_HIKE_CAP))?;
    let pyramid_side = pyramid_log_series(&cs, &hikes, u, l);

    let walk_side = if u.len() == 1 {
        let i = u[0];
        let mut s = Series::<Rat>::zero(l);
        for len in 1..=l {
            let mut total = Rat::from_i64(0);
            for walk in crate::hikes::heap::closed_walks_from(g, i, len) {
                let visits = walk[..len].iter().filter(|&&v| v == i).count();
                total += crate::hikes::heap::walk_weight(g, &walk)
                    * Rat::new(1.into(), (visits as i64).into());
            }
            s.set(len, total);
        }
        Some(s)
    } else {
        None
    };

    let pass = log_ru == pyramid_side && walk_side.as_ref().is_none_or(|w| *w == log_ru);
    Ok(LogRuCheck {
        log_ru,
        pyramid_side,
        walk_side,
        pass,
    })
}

/// Exact zeta of the induced subgraph `G(u)`, for the inequality witness
/// `zeta_u != r_u`.
pub fn induced_zeta(g: &WeightedGraph, u: &[usize], l: usize) -> Series<Rat> {
    zeta_series(&g.induced(u), l)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hikes::heap::enumerate_hikes;
    use crate::linalg::rat_int;

    fn series_i64(v: &[i64], l: usize) -> Series<Rat> {
        Series::from_coeffs(v.iter().map(|&x| rat_int(x)).collect(), l)
    }

    #[test]
    fn mobius_of_test_graphs() {
        // cofactor expansions by hand
        let k3 = WeightedGraph::complete(3);
        assert_eq!(mobius_series(&k3, 5), series_i64(&[1, 0, -3, -2], 5));
        let p2 = WeightedGraph::path(2);
        assert_eq!(mobius_series(&p2, 4), series_i64(&[1, 0, -1], 4));
        // empty graph: constant 1
        let empty = WeightedGraph::from_edges(2, &[]).unwrap();
        assert_eq!(mobius_series(&empty, 3), series_i64(&[1], 3));
    }

    #[test]
    fn zeta_expansions() {
        // K3: 1/(1 - 3z^2 - 2z^3) = 1 + 3z^2 + 2z^3 + 9z^4 + ...
        let k3 = WeightedGraph::complete(3);
        let z = zeta_series(&k3, 4);
        assert_eq!(z, series_i64(&[1, 0, 3, 2, 9], 4));
        // P2: geometric series in z^2
        let p2 = WeightedGraph::path(2);
        assert_eq!(zeta_series(&p2, 5), series_i64(&[1, 0, 1, 0, 1, 0], 5));
        // zeta * M = 1
        assert_eq!(z.mul(&mobius_series(&k3, 4)), Series::one(4));
    }

    #[test]
    fn zeta_matches_hike_enumeration() {
        for g in [
            WeightedGraph::complete(3),
            WeightedGraph::path(4),
            WeightedGraph::star(3),
        ] {
            let l = 7;
            let hikes = enumerate_hikes(&g, l).unwrap();
            assert_eq!(zeta_series(&g, l), hike_series(&hikes, l), "graph mismatch");
        }
    }

    #[test]
    fn mobius_matches_cycle_covers() {
        for g in [
            WeightedGraph::complete(4),
            WeightedGraph::path(5),
            WeightedGraph::cycle(5),
        ] {
            let cs = CycleSet::new(&g);
            let l = g.n();
            assert_eq!(mobius_series(&g, l), cycle_cover_series(&cs, l));
        }
    }

    #[test]
    fn excursions_on_test_graphs() {
        // P2, u = {0}: the only excursion is 0 -> 1 -> 0
        let p2 = WeightedGraph::path(2);
        let e = excursion_matrix(&p2, &[0], 6).unwrap();
        assert_eq!(e.entry(0, 0), series_i64(&[0, 0, 1], 6));

        // K3, u = {0}: 2z^2 + 2z^3 + 2z^4 + ...
        let k3 = WeightedGraph::complete(3);
        let e = excursion_matrix(&k3, &[0], 5).unwrap();
        assert_eq!(e.entry(0, 0), series_i64(&[0, 0, 2, 2, 2, 2], 5));

        // single-edge excursion inside u gives the weight at z^1
        let e = excursion_matrix(&k3, &[0, 1], 3).unwrap();
        assert_eq!(e.entry(0, 1).coeff(1), &rat_int(1));

        // closed formula equals brute force
        for u in [vec![0], vec![1], vec![0, 2]] {
            let closed = excursion_matrix(&k3, &u, 7).unwrap();
            let brute = excursion_enumeration(&k3, &u, 7);
            assert_eq!(closed, brute);
        }
    }

    #[test]
    fn resolvent_block_is_power_block() {
        let k3 = WeightedGraph::complete(3);
        let r = resolvent_block(&k3, &[0, 1], 6).unwrap();
        // degree-0 coefficient is the identity
        assert_eq!(r.coeff(0), &Matrix::<Rat>::identity(2));
        // coefficient of z^2 equals (A^2)_{uu} = [[2,1],[1,2]]
        let a2 = k3
            .adjacency()
            .to_rational()
            .pow(2)
            .submatrix(&[0, 1], &[0, 1]);
        assert_eq!(r.coeff(2), &a2);
        // full comparison against the Neumann series block
        let neumann = MatrixSeries::resolvent(&k3.adjacency().to_rational(), 6);
        for k in 0..=6 {
            assert_eq!(r.coeff(k), &neumann.coeff(k).submatrix(&[0, 1], &[0, 1]));
        }
    }

    #[test]
    fn ru_series_examples() {
        let k3 = WeightedGraph::complete(3);
        // (1 - z^2)/(1 - 3z^2 - 2z^3) = 1 + 2z^2 + 2z^3 + 6z^4 + ...
        let r = ru_series(&k3, &[0], 4).unwrap();
        assert_eq!(r, series_i64(&[1, 0, 2, 2, 6], 4));

        // r_u = zeta / zeta_ubar
        let zeta = zeta_series(&k3, 4);
        let zeta_ubar = induced_zeta(&k3, &[1, 2], 4);
        assert_eq!(r.mul(&zeta_ubar), zeta);

        // for |u| = 1 it coincides with the resolvent entry
        let p2 = WeightedGraph::path(2);
        assert_eq!(
            ru_series(&p2, &[0], 6).unwrap(),
            series_i64(&[1, 0, 1, 0, 1, 0, 1], 6)
        );

        // r_u is not the induced-subgraph zeta; K3 at one vertex witnesses it
        let zeta_u = induced_zeta(&k3, &[0], 4);
        assert_eq!(zeta_u, Series::one(4));
        assert_ne!(zeta_u, r);
    }

    #[test]
    fn ru_matches_filtered_hikes() {
        let k3 = WeightedGraph::complete(3);
        let cs = CycleSet::new(&k3);
        let hikes = enumerate_hikes(&k3, 6).unwrap();
        for u in [vec![0], vec![1, 2], vec![0, 1, 2]] {
            let closed = ru_series(&k3, &u, 6);
            let closed = match closed {
                Ok(c) => c,
                // u equal to the whole vertex set: r_u degenerates to zeta
                Err(_) => zeta_series(&k3, 6),
            };
            let brute = filtered_hike_series(&cs, &hikes, &u, 6);
            assert_eq!(closed, brute, "u = {u:?}");
        }
    }

    #[test]
    fn von_mangoldt_series_and_pyramids() {
        let k3 = WeightedGraph::complete(3);
        let tr = von_mangoldt_series(&k3, 5);
        // tr R coefficients are power sums 2^k + 2(-1)^k
        assert_eq!(tr, series_i64(&[3, 0, 6, 6, 18, 30], 5));

        let cs = CycleSet::new(&k3);
        let hikes = enumerate_hikes(&k3, 5).unwrap();
        let pyr = pyramid_lambda_series(&cs, &hikes, 5);
        for k in 1..=5 {
            assert_eq!(tr.coeff(k), pyr.coeff(k), "degree {k}");
        }
        // z^0: trace of the identity, no hike carries it
        assert_eq!(pyr.coeff(0), &rat_int(0));

        // tr R_u for P2, u = {0}
        let p2 = WeightedGraph::path(2);
        let tru = von_mangoldt_u_series(&p2, &[0], 6).unwrap();
        assert_eq!(tru, series_i64(&[1, 0, 1, 0, 1, 0, 1], 6));
    }

    #[test]
    fn empty_graph_series_are_constants() {
        // no edges: only the empty hike exists; traces are dimensions
        let empty = WeightedGraph::from_edges(3, &[]).unwrap();
        assert_eq!(zeta_series(&empty, 4), Series::one(4));
        assert_eq!(
            von_mangoldt_series(&empty, 4),
            Series::constant(rat_int(3), 4)
        );
        assert_eq!(
            von_mangoldt_u_series(&empty, &[0, 2], 4).unwrap(),
            Series::constant(rat_int(2), 4)
        );
    }

    #[test]
    fn log_ru_closed_forms() {
        // P2, u = {0}: log(1/(1-z^2)) = z^2 + z^4/2 + z^6/3
        let p2 = WeightedGraph::path(2);
        let check = log_ru_check(&p2, &[0], 6).unwrap();
        assert!(check.pass);
        assert_eq!(check.log_ru.coeff(0), &rat_int(0));
        assert_eq!(check.log_ru.coeff(2), &rat_int(1));
        assert_eq!(check.log_ru.coeff(4), &Rat::new(1.into(), 2.into()));
        assert_eq!(check.log_ru.coeff(6), &Rat::new(1.into(), 3.into()));

        // K3, u = {0}: coefficient of z^3 is 2 (two triangle walks, one
        // excursion each)
        let k3 = WeightedGraph::complete(3);
        let check = log_ru_check(&k3, &[0], 6).unwrap();
        assert!(check.pass);
        assert_eq!(check.log_ru.coeff(3), &rat_int(2));
    }

    #[test]
    fn boolean_cumulants_are_excursions() {
        let p2 = WeightedGraph::path(2);
        assert_eq!(boolean_cumulants(&p2, 0, 6), series_i64(&[0, 0, 1], 6));

        let k3 = WeightedGraph::complete(3);
        let b = boolean_cumulants(&k3, 0, 6);
        let e = excursion_matrix(&k3, &[0], 6).unwrap().entry(0, 0);
        assert_eq!(b, e);

        // isolated vertex: all positive moments vanish
        let iso = WeightedGraph::from_edges(1, &[]).unwrap();
        assert_eq!(boolean_cumulants(&iso, 0, 4), Series::zero(4));
    }
}
