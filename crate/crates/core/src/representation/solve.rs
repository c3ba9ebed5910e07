//! Damped Gauss-Newton for `mu(B, a, b) = 0` and numeric dimension counts.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::Matrix;

use super::{family_norm, Rep};

#[derive(Clone, Copy, Debug)]
pub struct SolverOptions {
    pub tol: f64,
    pub max_iter: usize,
    /// Tikhonov term added to `J^H J`.
    pub damping: f64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions { tol: 1e-12, max_iter: 200, damping: 1e-8 }
    }
}

/// Coordinates of a representation: all `B_h`, then all `a_i`, then all `b_i`,
/// each row-major.
pub fn flatten(r: &Rep<Complex64>) -> Vec<Complex64> {
    r.arrows.iter().chain(&r.a).chain(&r.b).flat_map(|m| m.entries().iter().copied()).collect()
}

pub fn unflatten(template: &Rep<Complex64>, x: &[Complex64]) -> Rep<Complex64> {
    let mut out = template.clone();
    let mut k = 0;
    for m in out.arrows.iter_mut().chain(out.a.iter_mut()).chain(out.b.iter_mut()) {
        let len = m.rows() * m.cols();
        *m = Matrix::from_vec(m.rows(), m.cols(), x[k..k + len].to_vec());
        k += len;
    }
    assert_eq!(k, x.len(), "coordinate vector length");
    out
}

fn flatten_family(ms: &[Matrix<Complex64>]) -> Vec<Complex64> {
    ms.iter().flat_map(|m| m.entries().iter().copied()).collect()
}

/// Complex Jacobian of the moment map (rows: entries of all `mu_i`).
pub fn moment_jacobian(r: &Rep<Complex64>) -> DMatrix<Complex64> {
    let x = flatten(r);
    let zero = vec![Complex64::new(0.0, 0.0); x.len()];
    let rows: usize = r.v().as_usize().iter().map(|d| d * d).sum();
    let mut jac = DMatrix::zeros(rows, x.len());
    let mut dir = zero.clone();
    for k in 0..x.len() {
        dir[k] = Complex64::new(1.0, 0.0);
        let d = unflatten(r, &dir);
        let col = flatten_family(&r.moment_differential(&d));
        for (row, val) in col.into_iter().enumerate() {
            jac[(row, k)] = val;
        }
        dir[k] = Complex64::new(0.0, 0.0);
    }
    jac
}

/// Infinitesimal gauge action `ξ -> (ξB - Bξ, ξa, -bξ)`, one column per
/// basis element of `⊕ gl(V_i)`.
pub fn gauge_tangent(r: &Rep<Complex64>) -> DMatrix<Complex64> {
    let q = r.quiver();
    let vs = r.v().as_usize();
    let n_coords = flatten(r).len();
    let mut basis = Vec::new();
    for (i, &d) in vs.iter().enumerate() {
        for p in 0..d {
            for s in 0..d {
                basis.push((i, p, s));
            }
        }
    }
    let mut out = DMatrix::zeros(n_coords, basis.len());
    for (col, &(i, p, s)) in basis.iter().enumerate() {
        let xi: Vec<Matrix<Complex64>> = (0..vs.len())
            .map(|j| {
                let mut m = Matrix::zeros(vs[j], vs[j]);
                if j == i {
                    m[(p, s)] = Complex64::new(1.0, 0.0);
                }
                m
            })
            .collect();
        let mut d = r.clone();
        for h in q.arrows() {
            d.arrows[h] = &(&xi[q.target(h)] * &r.arrows[h]) - &(&r.arrows[h] * &xi[q.source(h)]);
        }
        for j in 0..vs.len() {
            d.a[j] = &xi[j] * &r.a[j];
            d.b[j] = -&(&r.b[j] * &xi[j]);
        }
        for (row, val) in flatten(&d).into_iter().enumerate() {
            out[(row, col)] = val;
        }
    }
    out
}

fn residual(r: &Rep<Complex64>) -> f64 {
    family_norm(&r.moment_map())
}

/// Gauss-Newton with Tikhonov damping and step halving, from `start`.
/// Returns `start` unchanged when it already satisfies the tolerance.
pub fn newton_solve_moment(start: &Rep<Complex64>, opts: &SolverOptions) -> Result<Rep<Complex64>> {
    if opts.tol <= 0.0 {
        return Err(Error::Dimension("solver tolerance must be positive".into()));
    }
    let mut current = start.clone();
    let mut res = residual(&current);
    let mut iter = 0;
    while res >= opts.tol {
        if iter == opts.max_iter {
            return Err(Error::NoConvergence { iterations: iter, residual: res });
        }
        iter += 1;
        let jac = moment_jacobian(&current);
        let mu = DMatrix::from_column_slice(jac.nrows(), 1, &flatten_family(&current.moment_map()));
        let jh = jac.adjoint();
        let mut normal = &jh * &jac;
        for k in 0..normal.nrows() {
            normal[(k, k)] += Complex64::new(opts.damping, 0.0);
        }
        let rhs = -(&jh * &mu);
        let Some(step) = normal.cholesky().map(|ch| ch.solve(&rhs)) else {
            return Err(Error::NoConvergence { iterations: iter, residual: res });
        };
        let x = flatten(&current);
        let mut alpha = 1.0;
        let mut accepted = false;
        for _ in 0..40 {
            let trial: Vec<Complex64> = x.iter().zip(step.iter()).map(|(xi, si)| xi + si * alpha).collect();
            let cand = unflatten(&current, &trial);
            let cres = residual(&cand);
            if cres < res {
                current = cand;
                res = cres;
                accepted = true;
                break;
            }
            alpha *= 0.5;
        }
        if !accepted {
            return Err(Error::NoConvergence { iterations: iter, residual: res });
        }
    }
    Ok(current)
}

/// `dim M - rank dmu - rank(gauge orbit map)` at `r`, ranks by singular
/// values above `tol * sigma_max`.
pub fn numeric_dimension(r: &Rep<Complex64>, tol: f64) -> i64 {
    let n = flatten(r).len() as i64;
    let rank = |m: DMatrix<Complex64>| -> i64 {
        if m.nrows() == 0 || m.ncols() == 0 {
            return 0;
        }
        let sv = m.singular_values();
        let smax = sv.iter().cloned().fold(0.0, f64::max);
        if smax == 0.0 {
            return 0;
        }
        sv.iter().filter(|&&s| s > tol * smax).count() as i64
    };
    n - rank(moment_jacobian(r)) - rank(gauge_tangent(r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{DimVector, Quiver};
    use crate::random::{random_rep, Rng};

    #[test]
    fn already_solved_start_is_returned() {
        let q = Quiver::jordan();
        let r = Rep::<Complex64>::zero(&q, &DimVector(vec![2]), &DimVector(vec![1])).unwrap();
        let out = newton_solve_moment(&r, &SolverOptions::default()).unwrap();
        assert_eq!(out, r);
    }

    #[test]
    fn jordan_rank_one_solves() {
        let mut rng = Rng::seeded(1);
        let q = Quiver::jordan();
        let r0 = random_rep(&q, &DimVector(vec![1]), &DimVector(vec![1]), &mut rng);
        let opts = SolverOptions { tol: 1e-10, ..SolverOptions::default() };
        let sol = newton_solve_moment(&r0, &opts).unwrap();
        assert!(residual(&sol) < 1e-10);
        // deterministic
        assert_eq!(newton_solve_moment(&r0, &opts).unwrap(), sol);
    }

    #[test]
    fn zero_iterations_fail() {
        let mut rng = Rng::seeded(2);
        let q = Quiver::jordan();
        let r0 = random_rep(&q, &DimVector(vec![1]), &DimVector(vec![1]), &mut rng);
        let opts = SolverOptions { max_iter: 0, ..SolverOptions::default() };
        assert!(matches!(newton_solve_moment(&r0, &opts), Err(Error::NoConvergence { iterations: 0, .. })));
    }

    #[test]
    fn jacobian_matches_finite_differences() {
        let mut rng = Rng::seeded(3);
        let q = Quiver::affine_a1();
        let r = random_rep(&q, &DimVector(vec![2, 1]), &DimVector(vec![1, 1]), &mut rng);
        let jac = moment_jacobian(&r);
        let x = flatten(&r);
        let h = 1e-6;
        for k in [0, 3, x.len() - 1] {
            let mut xp = x.clone();
            xp[k] += Complex64::new(h, 0.0);
            let mut xm = x.clone();
            xm[k] -= Complex64::new(h, 0.0);
            let fp = flatten_family(&unflatten(&r, &xp).moment_map());
            let fm = flatten_family(&unflatten(&r, &xm).moment_map());
            for row in 0..jac.nrows() {
                let fd = (fp[row] - fm[row]) / (2.0 * h);
                assert!((fd - jac[(row, k)]).norm() < 1e-6);
            }
        }
    }

    #[test]
    fn round_trip_coordinates() {
        let mut rng = Rng::seeded(4);
        let r = random_rep(&Quiver::type_a(3), &DimVector(vec![1, 2, 1]), &DimVector(vec![1, 0, 1]), &mut rng);
        assert_eq!(unflatten(&r, &flatten(&r)), r);
    }
}
