//! Seeded generators for representations, group elements and rational data.
//! Every randomized routine in the crate draws from [`Rng`], so a seed fixes
//! all behaviour.

use num_complex::Complex64;
use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::matrix::Matrix;
use crate::quiver::{DimVector, Quiver};
use crate::representation::{FramingSplit, Rep};
use crate::scalar::{ratio, Scalar};
use crate::Rational;

pub struct Rng(ChaCha8Rng);

impl Rng {
    pub fn seeded(seed: u64) -> Self {
        Rng(ChaCha8Rng::seed_from_u64(seed))
    }

    pub fn uniform(&mut self) -> f64 {
        self.0.gen_range(-1.0..1.0)
    }

    pub fn below(&mut self, n: usize) -> usize {
        self.0.gen_range(0..n)
    }

    pub fn range(&mut self, lo: i64, hi: i64) -> i64 {
        self.0.gen_range(lo..=hi)
    }

    pub fn chance(&mut self, p: f64) -> bool {
        self.0.gen_bool(p)
    }

    pub fn complex(&mut self) -> Complex64 {
        Complex64::new(self.uniform(), self.uniform())
    }

    pub fn complex_matrix(&mut self, rows: usize, cols: usize) -> Matrix<Complex64> {
        Matrix::from_fn(rows, cols, |_, _| self.complex())
    }

    /// Entries `k/den` with `|k| <= num`.
    pub fn rational(&mut self, num: i64, den: i64) -> Rational {
        ratio(self.range(-num, num), den)
    }

    pub fn rational_matrix(&mut self, rows: usize, cols: usize, num: i64, den: i64) -> Matrix<Rational> {
        Matrix::from_fn(rows, cols, |_, _| self.rational(num, den))
    }
}

/// Entries uniform in the unit square of `C`.
pub fn random_rep(q: &Quiver, v: &DimVector, w: &DimVector, rng: &mut Rng) -> Rep<Complex64> {
    let mut r = Rep::zero(q, v, w).expect("dimension vectors match quiver");
    fill(&mut r, rng, |rng| rng.complex());
    r
}

fn fill<T: Scalar>(r: &mut Rep<T>, rng: &mut Rng, mut f: impl FnMut(&mut Rng) -> T) {
    for m in r.arrows.iter_mut().chain(r.a.iter_mut()).chain(r.b.iter_mut()) {
        *m = Matrix::from_fn(m.rows(), m.cols(), |_, _| f(rng));
    }
}

/// Identity plus a random perturbation, rescaled so it stays well conditioned.
pub fn random_gauge(v: &DimVector, rng: &mut Rng) -> Vec<Matrix<Complex64>> {
    v.as_usize()
        .iter()
        .map(|&d| {
            let noise = rng.complex_matrix(d, d).scale(&Complex64::new(0.4, 0.0));
            &Matrix::identity(d) + &noise
        })
        .collect()
}

/// Sparse dyadic entries: each entry is `0` with probability `zero_prob`,
/// otherwise `±1/2` or `±1` (real or imaginary). Products of these stay
/// exactly representable for the path lengths used in tests.
pub fn random_dyadic_rep(q: &Quiver, v: &DimVector, w: &DimVector, zero_prob: f64, rng: &mut Rng) -> Rep<Complex64> {
    let mut r = Rep::zero(q, v, w).expect("dimension vectors match quiver");
    fill(&mut r, rng, |rng| dyadic(rng, zero_prob));
    r
}

fn dyadic(rng: &mut Rng, zero_prob: f64) -> Complex64 {
    if rng.chance(zero_prob) {
        return Complex64::new(0.0, 0.0);
    }
    let mag = if rng.chance(0.5) { 0.5 } else { 1.0 };
    let sign = if rng.chance(0.5) { 1.0 } else { -1.0 };
    if rng.chance(0.75) {
        Complex64::new(sign * mag, 0.0)
    } else {
        Complex64::new(0.0, sign * mag)
    }
}

/// A representation in the attracting set `T_0` for `split`.
///
/// A coordinate subspace `U` is chosen per vertex; `B` preserves `U`,
/// `a(W^2) ⊆ U` and `b(U) ⊆ W^2`, so the smallest `B`-invariant subspace
/// containing `a(W^2)` lies in `U` and is read into `W^2`.
pub fn random_attracting_rep(
    q: &Quiver,
    v: &DimVector,
    split: &FramingSplit,
    zero_prob: f64,
    rng: &mut Rng,
) -> Rep<Complex64> {
    let w = split.w();
    let mut r = random_dyadic_rep(q, v, &w, zero_prob, rng);
    let vs = v.as_usize();
    let w1 = split.w1.as_usize();
    let in_u: Vec<Vec<bool>> = vs.iter().map(|&d| (0..d).map(|_| rng.chance(0.5)).collect()).collect();
    for h in q.arrows() {
        let (s, t) = (q.source(h), q.target(h));
        let m = &mut r.arrows[h];
        for row in 0..m.rows() {
            for col in 0..m.cols() {
                if in_u[s][col] && !in_u[t][row] {
                    m[(row, col)] = Complex64::new(0.0, 0.0);
                }
            }
        }
    }
    for i in 0..vs.len() {
        let a = &mut r.a[i];
        for row in 0..a.rows() {
            for col in w1[i]..a.cols() {
                if !in_u[i][row] {
                    a[(row, col)] = Complex64::new(0.0, 0.0);
                }
            }
        }
        let b = &mut r.b[i];
        for row in 0..w1[i] {
            for col in 0..b.cols() {
                if in_u[i][col] {
                    b[(row, col)] = Complex64::new(0.0, 0.0);
                }
            }
        }
    }
    r
}
