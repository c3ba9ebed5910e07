//! Points `(B, a, b)` of `M(v, w)` and the operations on them: moment map,
//! gauge and torus actions, stability, invariant records, attracting-set
//! membership and the moment-map solver.

mod invariants;
mod json;
mod membership;
mod solve;

pub use json::{matrix_json, rep_from_json, rep_to_json};
pub use invariants::{default_cap, invariant_record, records_equal, HubKey, InvariantRecord};
pub use membership::{limit_invariants, membership, saturate, Membership};
pub use solve::{
    flatten, gauge_tangent, moment_jacobian, newton_solve_moment, numeric_dimension, unflatten,
    SolverOptions,
};


use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::quiver::{DimVector, Quiver};
use crate::scalar::Scalar;

/// Default relative tolerance for numeric rank decisions.
pub const DEFAULT_TOL: f64 = 1e-9;

/// A split `W_i = W^1_i ⊕ W^2_i`; `W^1_i` is spanned by the first `w1_i`
/// coordinates of `W_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FramingSplit {
    pub w1: DimVector,
    pub w2: DimVector,
}

impl FramingSplit {
    pub fn new(w: &DimVector, w1: &DimVector) -> Result<Self> {
        if w.len() != w1.len() {
            return Err(Error::IndexMismatch { expected: w.len(), got: w1.len() });
        }
        let w2 = w - w1;
        if !w1.is_nonnegative() || !w2.is_nonnegative() {
            return Err(Error::Dimension(format!("split {w1} does not fit inside {w}")));
        }
        Ok(FramingSplit { w1: w1.clone(), w2 })
    }

    /// `W^2 = 0`.
    pub fn trivial(w: &DimVector) -> Self {
        FramingSplit { w1: w.clone(), w2: DimVector::zero(w.len()) }
    }

    pub fn w(&self) -> DimVector {
        &self.w1 + &self.w2
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Rep<T> {
    quiver: Quiver,
    v: DimVector,
    w: DimVector,
    /// `B_h : V_out(h) -> V_in(h)`, indexed by arrow id.
    pub arrows: Vec<Matrix<T>>,
    /// `a_i : W_i -> V_i`.
    pub a: Vec<Matrix<T>>,
    /// `b_i : V_i -> W_i`.
    pub b: Vec<Matrix<T>>,
}

impl<T: Scalar> Rep<T> {
    pub fn new(
        quiver: Quiver,
        v: DimVector,
        w: DimVector,
        arrows: Vec<Matrix<T>>,
        a: Vec<Matrix<T>>,
        b: Vec<Matrix<T>>,
    ) -> Result<Self> {
        let r = Rep { quiver, v, w, arrows, a, b };
        r.check_shapes()?;
        Ok(r)
    }

    pub fn zero(quiver: &Quiver, v: &DimVector, w: &DimVector) -> Result<Self> {
        quiver.check_dims(v)?;
        quiver.check_dims(w)?;
        let vs = v.as_usize();
        let ws = w.as_usize();
        let arrows = quiver
            .arrows()
            .map(|h| Matrix::zeros(vs[quiver.target(h)], vs[quiver.source(h)]))
            .collect();
        let a = (0..vs.len()).map(|i| Matrix::zeros(vs[i], ws[i])).collect();
        let b = (0..vs.len()).map(|i| Matrix::zeros(ws[i], vs[i])).collect();
        Rep::new(quiver.clone(), v.clone(), w.clone(), arrows, a, b)
    }

    fn check_shapes(&self) -> Result<()> {
        let q = &self.quiver;
        q.check_dims(&self.v)?;
        q.check_dims(&self.w)?;
        if !self.v.is_nonnegative() || !self.w.is_nonnegative() {
            return Err(Error::Shape("negative dimension".into()));
        }
        let n = q.num_vertices();
        if self.arrows.len() != q.num_arrows() || self.a.len() != n || self.b.len() != n {
            return Err(Error::Shape("wrong number of components".into()));
        }
        let vs = self.v.as_usize();
        let ws = self.w.as_usize();
        for h in q.arrows() {
            let want = (vs[q.target(h)], vs[q.source(h)]);
            if self.arrows[h].shape() != want {
                return Err(Error::Shape(format!("B_{h} is {:?}, expected {want:?}", self.arrows[h].shape())));
            }
        }
        for i in 0..n {
            if self.a[i].shape() != (vs[i], ws[i]) {
                return Err(Error::Shape(format!("a_{i} has shape {:?}", self.a[i].shape())));
            }
            if self.b[i].shape() != (ws[i], vs[i]) {
                return Err(Error::Shape(format!("b_{i} has shape {:?}", self.b[i].shape())));
            }
        }
        Ok(())
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn v(&self) -> &DimVector {
        &self.v
    }

    pub fn w(&self) -> &DimVector {
        &self.w
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U + Copy) -> Rep<U> {
        Rep {
            quiver: self.quiver.clone(),
            v: self.v.clone(),
            w: self.w.clone(),
            arrows: self.arrows.iter().map(|m| m.map(f)).collect(),
            a: self.a.iter().map(|m| m.map(f)).collect(),
            b: self.b.iter().map(|m| m.map(f)).collect(),
        }
    }

    /// `mu_i = Σ_{in(h)=i} ε(h) B_h B_{h̄} + a_i b_i`.
    pub fn moment_map(&self) -> Vec<Matrix<T>> {
        let q = &self.quiver;
        let mut mu: Vec<Matrix<T>> = (0..q.num_vertices()).map(|i| &self.a[i] * &self.b[i]).collect();
        for h in q.arrows() {
            let prod = &self.arrows[h] * &self.arrows[q.bar(h)];
            let i = q.target(h);
            mu[i] = if q.in_orientation(h) { &mu[i] + &prod } else { &mu[i] - &prod };
        }
        mu
    }

    /// Differential of the moment map at `self` in direction `d`.
    pub fn moment_differential(&self, d: &Rep<T>) -> Vec<Matrix<T>> {
        let q = &self.quiver;
        let mut out: Vec<Matrix<T>> =
            (0..q.num_vertices()).map(|i| &(&d.a[i] * &self.b[i]) + &(&self.a[i] * &d.b[i])).collect();
        for h in q.arrows() {
            let hb = q.bar(h);
            let term = &(&d.arrows[h] * &self.arrows[hb]) + &(&self.arrows[h] * &d.arrows[hb]);
            let i = q.target(h);
            out[i] = if q.in_orientation(h) { &out[i] + &term } else { &out[i] - &term };
        }
        out
    }

    /// `(g B g^{-1}, g a, b g^{-1})`.
    pub fn gauge_act(&self, g: &[Matrix<T>], tol: f64) -> Result<Self> {
        let q = &self.quiver;
        let vs = self.v.as_usize();
        if g.len() != q.num_vertices() {
            return Err(Error::Shape("one group element per vertex".into()));
        }
        let mut inv = Vec::with_capacity(g.len());
        for (i, gi) in g.iter().enumerate() {
            if gi.shape() != (vs[i], vs[i]) {
                return Err(Error::Shape(format!("g_{i} has shape {:?}", gi.shape())));
            }
            inv.push(gi.inverse(tol).ok_or(Error::Singular(i))?);
        }
        let arrows = q
            .arrows()
            .map(|h| &(&g[q.target(h)] * &self.arrows[h]) * &inv[q.source(h)])
            .collect();
        let a = (0..g.len()).map(|i| &g[i] * &self.a[i]).collect();
        let b = (0..g.len()).map(|i| &self.b[i] * &inv[i]).collect();
        Ok(Rep { arrows, a, b, ..self.clone() })
    }

    /// `B_h -> t1 B_h` on the orientation, `t2 B_h` on reversed arrows,
    /// `a -> a`, `b -> t1 t2 b`.
    pub fn torus_act(&self, t1: &T, t2: &T) -> Result<Self> {
        if t1.is_zero() || t2.is_zero() {
            return Err(Error::ZeroTorusParameter);
        }
        let q = &self.quiver;
        let arrows = q
            .arrows()
            .map(|h| self.arrows[h].scale(if q.in_orientation(h) { t1 } else { t2 }))
            .collect();
        let t12 = t1.clone() * t2.clone();
        let b = self.b.iter().map(|m| m.scale(&t12)).collect();
        Ok(Rep { arrows, b, ..self.clone() })
    }

    /// Action of `λ(t) = id_{W^1} ⊕ t·id_{W^2}` through `G_W`:
    /// `a -> a λ(t)^{-1}`, `b -> λ(t) b`.
    pub fn lambda_act(&self, t: &T, split: &FramingSplit) -> Result<Self> {
        if t.is_zero() {
            return Err(Error::ZeroTorusParameter);
        }
        self.check_split(split)?;
        let w1 = split.w1.as_usize();
        let inv = T::one() / t.clone();
        let a = self
            .a
            .iter()
            .enumerate()
            .map(|(i, m)| Matrix::from_fn(m.rows(), m.cols(), |r, c| {
                if c >= w1[i] { m[(r, c)].clone() * inv.clone() } else { m[(r, c)].clone() }
            }))
            .collect();
        let b = self
            .b
            .iter()
            .enumerate()
            .map(|(i, m)| Matrix::from_fn(m.rows(), m.cols(), |r, c| {
                if r >= w1[i] { m[(r, c)].clone() * t.clone() } else { m[(r, c)].clone() }
            }))
            .collect();
        Ok(Rep { a, b, ..self.clone() })
    }

    pub(crate) fn check_split(&self, split: &FramingSplit) -> Result<()> {
        if split.w() != self.w {
            return Err(Error::Dimension(format!("split {} + {} does not match w = {}", split.w1, split.w2, self.w)));
        }
        Ok(())
    }

    /// Stability for `ζ = (1, …, 1)`: the largest `B`-invariant graded
    /// subspace contained in `Ker b` is zero.
    ///
    /// Computed by the descending iteration `K^0_i = Ker b_i`,
    /// `K^{m+1}_i = K^m_i ∩ ⋂_{out(h)=i} B_h^{-1}(K^m_{in(h)})`, with each
    /// `K^m_i` stored as the kernel of a constraint matrix.
    pub fn is_stable(&self, tol: f64) -> bool {
        let q = &self.quiver;
        let n = q.num_vertices();
        let vs = self.v.as_usize();
        let mut constraints: Vec<Matrix<T>> = (0..n).map(|i| row_basis(&self.b[i], tol)).collect();
        loop {
            let next: Vec<Matrix<T>> = (0..n)
                .map(|i| {
                    let mut parts = vec![constraints[i].clone()];
                    for h in q.arrows_from(i) {
                        parts.push(&constraints[q.target(h)] * &self.arrows[h]);
                    }
                    let refs: Vec<&Matrix<T>> = parts.iter().collect();
                    row_basis(&Matrix::vstack(&refs, vs[i]), tol)
                })
                .collect();
            let grew = next.iter().zip(&constraints).any(|(a, b)| a.rows() != b.rows());
            constraints = next;
            if !grew {
                break;
            }
        }
        constraints.iter().zip(&vs).all(|(c, &d)| c.rows() == d)
    }

    /// `r1 ⊕ r2` on `V^1 ⊕ V^2`, `W^1 ⊕ W^2`, with the matching split.
    pub fn direct_sum(r1: &Rep<T>, r2: &Rep<T>) -> Result<(Rep<T>, FramingSplit)> {
        if r1.quiver != r2.quiver {
            return Err(Error::Shape("direct sum of representations of different quivers".into()));
        }
        let q = &r1.quiver;
        let v = &r1.v + &r2.v;
        let w = &r1.w + &r2.w;
        let arrows = q.arrows().map(|h| r1.arrows[h].direct_sum(&r2.arrows[h])).collect();
        let a = (0..q.num_vertices()).map(|i| r1.a[i].direct_sum(&r2.a[i])).collect();
        let b = (0..q.num_vertices()).map(|i| r1.b[i].direct_sum(&r2.b[i])).collect();
        let split = FramingSplit { w1: r1.w.clone(), w2: r2.w.clone() };
        Ok((Rep::new(q.clone(), v, w, arrows, a, b)?, split))
    }

    /// Frobenius norm of the whole tuple.
    pub fn norm(&self) -> f64 {
        self.arrows
            .iter()
            .chain(&self.a)
            .chain(&self.b)
            .map(|m| m.frobenius_norm().powi(2))
            .sum::<f64>()
            .sqrt()
    }
}

/// Frobenius norm of a per-vertex family of matrices.
pub fn family_norm<T: Scalar>(ms: &[Matrix<T>]) -> f64 {
    ms.iter().map(|m| m.frobenius_norm().powi(2)).sum::<f64>().sqrt()
}

fn row_basis<T: Scalar>(m: &Matrix<T>, tol: f64) -> Matrix<T> {
    m.transpose().column_space(tol).transpose()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_gauge, random_rep, Rng};
    use num_complex::Complex64;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn m(rows: Vec<Vec<f64>>) -> Matrix<Complex64> {
        Matrix::from_rows(rows.into_iter().map(|r| r.into_iter().map(c).collect()).collect())
    }

    fn jordan_scalar(b1: f64, b2: f64, a: f64, b: f64) -> Rep<Complex64> {
        let q = Quiver::jordan();
        Rep::new(
            q,
            DimVector(vec![1]),
            DimVector(vec![1]),
            vec![m(vec![vec![b1]]), m(vec![vec![b2]])],
            vec![m(vec![vec![a]])],
            vec![m(vec![vec![b]])],
        )
        .unwrap()
    }

    #[test]
    fn moment_map_examples() {
        let z = Rep::<Complex64>::zero(&Quiver::type_a(2), &DimVector(vec![1, 2]), &DimVector(vec![1, 0])).unwrap();
        assert!(z.moment_map().iter().all(Matrix::is_zero));

        let r = jordan_scalar(2.0, 3.0, 5.0, 7.0);
        assert_eq!(r.moment_map()[0][(0, 0)], c(35.0));

        let q = Quiver::from_edges(1, &[]);
        let r = Rep::new(
            q,
            DimVector(vec![1]),
            DimVector(vec![2]),
            vec![],
            vec![m(vec![vec![1.0, 0.0]])],
            vec![m(vec![vec![0.0], vec![1.0]])],
        )
        .unwrap();
        assert!(r.moment_map()[0].is_zero());
    }

    #[test]
    fn jordan_moment_map_is_commutator_plus_ab() {
        let mut rng = Rng::seeded(5);
        let r = random_rep(&Quiver::jordan(), &DimVector(vec![3]), &DimVector(vec![2]), &mut rng);
        let comm = &(&r.arrows[0] * &r.arrows[1]) - &(&r.arrows[1] * &r.arrows[0]);
        let expected = &comm + &(&r.a[0] * &r.b[0]);
        assert!(r.moment_map()[0].approx_eq(&expected, 1e-12));
    }

    #[test]
    fn shape_errors() {
        let q = Quiver::jordan();
        let bad = Rep::new(
            q,
            DimVector(vec![2]),
            DimVector(vec![1]),
            vec![m(vec![vec![1.0]]), m(vec![vec![1.0]])],
            vec![m(vec![vec![1.0], vec![1.0]])],
            vec![m(vec![vec![1.0, 1.0]])],
        );
        assert!(matches!(bad, Err(Error::Shape(_))));
    }

    #[test]
    fn gauge_examples() {
        let mut rng = Rng::seeded(11);
        let q = Quiver::affine_a1();
        let r = random_rep(&q, &DimVector(vec![2, 1]), &DimVector(vec![1, 1]), &mut rng);
        let id: Vec<_> = [2, 1].iter().map(|&d| Matrix::identity(d)).collect();
        assert_eq!(r.gauge_act(&id, DEFAULT_TOL).unwrap(), r);

        let s = c(3.0);
        let g: Vec<_> = [2, 1].iter().map(|&d| Matrix::scalar(d, s)).collect();
        let gr = r.gauge_act(&g, DEFAULT_TOL).unwrap();
        for h in q.arrows() {
            assert!(gr.arrows[h].approx_eq(&r.arrows[h], 1e-12));
        }
        assert!(gr.a[0].approx_eq(&r.a[0].scale(&s), 1e-12));
        assert!(gr.b[1].approx_eq(&r.b[1].scale(&(c(1.0) / s)), 1e-12));

        let singular = vec![Matrix::zeros(2, 2), Matrix::identity(1)];
        assert_eq!(r.gauge_act(&singular, DEFAULT_TOL), Err(Error::Singular(0)));
    }

    #[test]
    fn moment_map_is_equivariant() {
        let mut rng = Rng::seeded(3);
        for q in [Quiver::jordan(), Quiver::type_a(3), Quiver::affine_a1()] {
            let n = q.num_vertices();
            let v = DimVector(vec![2; n]);
            let w = DimVector(vec![1; n]);
            let r = random_rep(&q, &v, &w, &mut rng);
            let g = random_gauge(&v, &mut rng);
            let mu = r.moment_map();
            let mu_g = r.gauge_act(&g, DEFAULT_TOL).unwrap().moment_map();
            for i in 0..n {
                let conj = &(&g[i] * &mu[i]) * &g[i].inverse(DEFAULT_TOL).unwrap();
                assert!(mu_g[i].approx_eq(&conj, 1e-10));
            }
        }
    }

    #[test]
    fn torus_examples() {
        let mut rng = Rng::seeded(8);
        let q = Quiver::type_a(2);
        let r = random_rep(&q, &DimVector(vec![2, 1]), &DimVector(vec![1, 1]), &mut rng);
        assert_eq!(r.torus_act(&c(1.0), &c(1.0)).unwrap(), r);

        let mut r0 = r.clone();
        r0.b.iter_mut().for_each(|b| *b = Matrix::zeros(b.rows(), b.cols()));
        let t = Complex64::new(0.3, 1.7);
        let moved = r0.torus_act(&t, &(c(1.0) / t)).unwrap();
        for (x, y) in moved.moment_map().iter().zip(r0.moment_map()) {
            assert!(x.approx_eq(&y, 1e-12));
        }

        let (t1, t2) = (Complex64::new(-0.4, 2.0), Complex64::new(1.5, 0.25));
        let mu = r.moment_map();
        let mu_t = r.torus_act(&t1, &t2).unwrap().moment_map();
        for (x, y) in mu_t.iter().zip(&mu) {
            let want = y.scale(&(t1 * t2));
            assert!((x - &want).frobenius_norm() <= 1e-12 * want.frobenius_norm().max(1.0));
        }
        assert_eq!(r.torus_act(&c(0.0), &c(1.0)), Err(Error::ZeroTorusParameter));
    }

    #[test]
    fn stability_examples() {
        assert!(jordan_scalar(0.5, 0.2, 0.0, 1.0).is_stable(DEFAULT_TOL));
        assert!(!jordan_scalar(0.5, 0.2, 1.0, 0.0).is_stable(DEFAULT_TOL));
        let q = Quiver::from_edges(1, &[]);
        let r = Rep::new(q, DimVector(vec![1]), DimVector(vec![1]), vec![], vec![m(vec![vec![1.0]])], vec![m(vec![vec![0.0]])])
            .unwrap();
        assert!(!r.is_stable(DEFAULT_TOL));
        // Jordan v=2, w=1: b reads e1 only, B shifts e2 -> e1, so the cyclic vector generates
        let q = Quiver::jordan();
        let r = Rep::new(
            q.clone(),
            DimVector(vec![2]),
            DimVector(vec![1]),
            vec![m(vec![vec![0.0, 1.0], vec![0.0, 0.0]]), m(vec![vec![0.0, 0.0], vec![0.0, 0.0]])],
            vec![m(vec![vec![0.0], vec![0.0]])],
            vec![m(vec![vec![1.0, 0.0]])],
        )
        .unwrap();
        assert!(r.is_stable(DEFAULT_TOL));
        // same with B = 0: e2 spans an invariant subspace inside Ker b
        let mut r2 = r.clone();
        r2.arrows[0] = Matrix::zeros(2, 2);
        assert!(!r2.is_stable(DEFAULT_TOL));
        // exact path agrees
        let exact = r.map(|z| crate::GaussianRational::from_c64(*z).unwrap());
        assert!(exact.is_stable(0.0));
    }

    #[test]
    fn stability_is_gauge_invariant() {
        let mut rng = Rng::seeded(21);
        let q = Quiver::jordan();
        let v = DimVector(vec![3]);
        for k in 0..20 {
            let w = DimVector(vec![1 + (k % 2)]);
            let mut r = random_rep(&q, &v, &w, &mut rng);
            if k % 3 == 0 {
                r.b[0] = Matrix::zeros(w.0[0] as usize, 3);
            }
            let g = random_gauge(&v, &mut rng);
            assert_eq!(r.is_stable(DEFAULT_TOL), r.gauge_act(&g, DEFAULT_TOL).unwrap().is_stable(DEFAULT_TOL));
        }
    }

    #[test]
    fn direct_sum_shapes() {
        let r1 = jordan_scalar(1.0, 2.0, 0.0, 0.0);
        let r2 = jordan_scalar(3.0, 4.0, 0.0, 0.0);
        let (s, split) = Rep::direct_sum(&r1, &r2).unwrap();
        assert_eq!(s.v(), &DimVector(vec![2]));
        assert_eq!(split.w1, DimVector(vec![1]));
        assert_eq!(split.w2, DimVector(vec![1]));
        assert_eq!(s.arrows[0][(1, 1)], c(3.0));
    }

    #[test]
    fn framing_split_validation() {
        let w = DimVector(vec![2, 1]);
        assert!(FramingSplit::new(&w, &DimVector(vec![3, 0])).is_err());
        let s = FramingSplit::new(&w, &DimVector(vec![1, 1])).unwrap();
        assert_eq!(s.w2, DimVector(vec![1, 0]));
        assert_eq!(s.w(), w);
    }
}
