//! Membership in the attracting sets of `λ(t)` and the limit map.
//!
//! A hub `b B⋯B a` maps `W^2` into `W^2` for every path exactly when `b`
//! maps the smallest `B`-invariant subspace containing `a(W^2)` into `W^2`,
//! so the universally quantified path condition reduces to a saturation.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

use super::invariants::{invariant_record, InvariantRecord};
use super::{FramingSplit, Rep};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Membership {
    /// `lim_{t→0} λ(t)x` exists.
    pub in_t0: bool,
    /// `lim_{t→0} λ(t)x = 0` (hub criterion).
    pub in_t0_tilde: bool,
    /// `lim_{t→∞} λ(t)x` exists.
    pub in_t0_minus: bool,
}

/// Per-vertex bases of the smallest `B`-invariant graded subspace containing
/// the column spans of `seeds`.
pub fn saturate<T: Scalar>(r: &Rep<T>, seeds: &[Matrix<T>], tol: f64) -> Vec<Matrix<T>> {
    let q = r.quiver();
    let vs = r.v().as_usize();
    let n = q.num_vertices();
    // Spans are kept with unit columns and the reference norm never drops
    // below the largest map, so a vertex whose candidates are all roundoff
    // stays empty.
    let seed_floor = seeds.iter().map(Matrix::frobenius_norm).fold(0.0, f64::max);
    let arrow_floor = r.arrows.iter().map(Matrix::frobenius_norm).fold(0.0, f64::max);
    let mut span: Vec<Matrix<T>> =
        (0..n).map(|i| seeds[i].column_space_above(tol, seed_floor).normalized_columns()).collect();
    loop {
        let next: Vec<Matrix<T>> = (0..n)
            .map(|i| {
                let mut parts = vec![span[i].clone()];
                for h in q.arrows().filter(|&h| q.target(h) == i) {
                    parts.push(&r.arrows[h] * &span[q.source(h)]);
                }
                let refs: Vec<&Matrix<T>> = parts.iter().collect();
                Matrix::hstack(&refs, vs[i]).column_space_above(tol, arrow_floor.max(1.0)).normalized_columns()
            })
            .collect();
        let grew = next.iter().zip(&span).any(|(a, b)| a.cols() != b.cols());
        span = next;
        if !grew {
            return span;
        }
    }
}

fn columns<T: Scalar>(m: &Matrix<T>, from: usize, to: usize) -> Matrix<T> {
    m.submatrix(0, from, m.rows(), to - from)
}

fn rows<T: Scalar>(m: &Matrix<T>, from: usize, to: usize) -> Matrix<T> {
    m.submatrix(from, 0, to - from, m.cols())
}

/// Whether the selected rows of `b_i` kill each basis vector of `span_i`.
fn kills<T: Scalar>(b_rows: &Matrix<T>, b_full: &Matrix<T>, span: &Matrix<T>, tol: f64) -> bool {
    let image = b_rows * span;
    let scale = b_full.frobenius_norm();
    (0..span.cols()).all(|c| {
        let col = image.submatrix(0, c, image.rows(), 1);
        let basis_norm = span.submatrix(0, c, span.rows(), 1).frobenius_norm();
        col.is_negligible(scale * basis_norm, tol)
    })
}

pub fn membership<T: Scalar>(r: &Rep<T>, split: &FramingSplit, tol: f64) -> Result<Membership> {
    r.check_split(split)?;
    let n = r.quiver().num_vertices();
    let w1 = split.w1.as_usize();
    let w = r.w().as_usize();

    let from_w2: Vec<Matrix<T>> = (0..n).map(|i| columns(&r.a[i], w1[i], w[i])).collect();
    let from_w1: Vec<Matrix<T>> = (0..n).map(|i| columns(&r.a[i], 0, w1[i])).collect();
    let s = saturate(r, &from_w2, tol);
    let s_all = saturate(r, &r.a, tol);
    let s_w1 = saturate(r, &from_w1, tol);

    let b_w1 = |i: usize| rows(&r.b[i], 0, w1[i]);
    let b_w2 = |i: usize| rows(&r.b[i], w1[i], w[i]);

    let in_t0 = (0..n).all(|i| kills(&b_w1(i), &r.b[i], &s[i], tol));
    let in_t0_tilde = (0..n).all(|i| kills(&r.b[i], &r.b[i], &s[i], tol) && kills(&b_w1(i), &r.b[i], &s_all[i], tol));
    let in_t0_minus = (0..n).all(|i| kills(&b_w2(i), &r.b[i], &s_w1[i], tol));
    Ok(Membership { in_t0, in_t0_tilde, in_t0_minus })
}

/// Invariant record of `lim_{t→0} λ(t)x`: traces are unchanged and every hub
/// keeps only its `W^1→W^1` and `W^2→W^2` blocks.
pub fn limit_invariants<T: Scalar>(
    r: &Rep<T>,
    split: &FramingSplit,
    cap: usize,
    tol: f64,
) -> Result<InvariantRecord<T>> {
    if !membership(r, split, tol)?.in_t0 {
        return Err(Error::NotAttracting);
    }
    let q = r.quiver();
    let w1 = split.w1.as_usize();
    let mut record = invariant_record(r, cap);
    for (key, hub) in record.hubs.iter_mut() {
        let end = key.word.last().map_or(key.start, |&h| q.target(h));
        for row in w1[end]..hub.rows() {
            for col in 0..w1[key.start] {
                hub[(row, col)] = T::zero();
            }
        }
    }
    Ok(record)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{DimVector, Quiver};
    use crate::random::{random_rep, Rng};
    use crate::representation::{records_equal, DEFAULT_TOL};
    use crate::{GaussianRational, Scalar};
    use num_complex::Complex64;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn m(rows: Vec<Vec<f64>>) -> Matrix<Complex64> {
        Matrix::from_rows(rows.into_iter().map(|r| r.into_iter().map(c).collect()).collect())
    }

    /// Jordan, v = 2, W = W^1 ⊕ W^2 one-dimensional each; a sends W^1 to e1,
    /// B_0 sends e1 to e2, and b reads e2 into the W^2 coordinate.
    fn jordan_example() -> (Rep<Complex64>, FramingSplit) {
        let q = Quiver::jordan();
        let r = Rep::new(
            q,
            DimVector(vec![2]),
            DimVector(vec![2]),
            vec![m(vec![vec![0.0, 0.0], vec![1.0, 0.0]]), m(vec![vec![0.0, 0.0], vec![0.0, 0.0]])],
            vec![m(vec![vec![1.0, 0.0], vec![0.0, 0.0]])],
            vec![m(vec![vec![0.0, 0.0], vec![0.0, 1.0]])],
        )
        .unwrap();
        let split = FramingSplit::new(&DimVector(vec![2]), &DimVector(vec![1])).unwrap();
        (r, split)
    }

    #[test]
    fn jordan_path_example() {
        let (r, split) = jordan_example();
        let mem = membership(&r, &split, DEFAULT_TOL).unwrap();
        assert!(mem.in_t0);
        assert!(!mem.in_t0_minus);
        let exact = r.map(|z| GaussianRational::from_c64(*z).unwrap());
        assert_eq!(membership(&exact, &split, 0.0).unwrap(), mem);
    }

    #[test]
    fn fixed_points_are_in_both_attracting_sets() {
        let mut rng = Rng::seeded(4);
        for q in [Quiver::jordan(), Quiver::affine_a1(), Quiver::type_a(2)] {
            let n = q.num_vertices();
            let r1 = random_rep(&q, &DimVector(vec![1; n]), &DimVector(vec![1; n]), &mut rng);
            let r2 = random_rep(&q, &DimVector(vec![2; n]), &DimVector(vec![1; n]), &mut rng);
            let (s, split) = Rep::direct_sum(&r1, &r2).unwrap();
            let mem = membership(&s, &split, DEFAULT_TOL).unwrap();
            assert!(mem.in_t0 && mem.in_t0_minus);
            let cap = 3;
            let lim = limit_invariants(&s, &split, cap, DEFAULT_TOL).unwrap();
            assert!(records_equal(&lim, &invariant_record(&s, cap), 1e-12).unwrap());
        }
    }

    #[test]
    fn vanishing_framing_maps_give_t0_tilde() {
        let mut rng = Rng::seeded(9);
        let q = Quiver::affine_a1();
        let mut r = random_rep(&q, &DimVector(vec![2, 1]), &DimVector(vec![1, 2]), &mut rng);
        for i in 0..2 {
            r.a[i] = Matrix::zeros(r.a[i].rows(), r.a[i].cols());
            r.b[i] = Matrix::zeros(r.b[i].rows(), r.b[i].cols());
        }
        let split = FramingSplit::new(r.w(), &DimVector(vec![1, 1])).unwrap();
        let mem = membership(&r, &split, DEFAULT_TOL).unwrap();
        assert!(mem.in_t0_tilde && mem.in_t0 && mem.in_t0_minus);
        let lim = limit_invariants(&r, &split, 2, DEFAULT_TOL).unwrap();
        assert!(lim.hubs.values().all(|h| h.max_abs() == 0.0));
    }

    #[test]
    fn limit_requires_attracting_point() {
        let (r, split) = jordan_example();
        // swap the roles of W^1 and W^2: now W^2 feeds a path ending in W^1
        let swapped = FramingSplit::new(&DimVector(vec![2]), &DimVector(vec![1])).unwrap();
        let mut r2 = r.clone();
        r2.a[0] = m(vec![vec![0.0, 1.0], vec![0.0, 0.0]]);
        r2.b[0] = m(vec![vec![0.0, 1.0], vec![0.0, 0.0]]);
        assert!(!membership(&r2, &swapped, DEFAULT_TOL).unwrap().in_t0);
        assert_eq!(limit_invariants(&r2, &swapped, 2, DEFAULT_TOL), Err(Error::NotAttracting));
        assert!(limit_invariants(&r, &split, 2, DEFAULT_TOL).is_ok());
    }

    #[test]
    fn trivial_split_always_attracts() {
        let mut rng = Rng::seeded(13);
        let q = Quiver::jordan();
        let r = random_rep(&q, &DimVector(vec![2]), &DimVector(vec![2]), &mut rng);
        let split = FramingSplit::trivial(r.w());
        assert!(membership(&r, &split, DEFAULT_TOL).unwrap().in_t0);
        let lim = limit_invariants(&r, &split, 4, DEFAULT_TOL).unwrap();
        assert!(records_equal(&lim, &invariant_record(&r, 4), 0.0).unwrap());
    }
}
