//! Root combinatorics of the symmetric Kac-Moody algebra of a quiver.
//!
//! Positive roots are produced by saturating the loop-free coordinate
//! vectors (real roots) and the fundamental-region vectors (imaginary
//! roots) under reflections at loop-free vertices.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::quiver::{DimVector, Quiver};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RootKind {
    Real,
    Imaginary,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootList {
    pub roots: BTreeMap<DimVector, RootKind>,
}

impl RootList {
    pub fn contains(&self, v: &DimVector) -> bool {
        self.roots.contains_key(v)
    }

    pub fn kind(&self, v: &DimVector) -> Option<RootKind> {
        self.roots.get(v).copied()
    }

    pub fn real(&self) -> impl Iterator<Item = &DimVector> {
        self.roots.iter().filter(|(_, k)| **k == RootKind::Real).map(|(v, _)| v)
    }

    pub fn imaginary(&self) -> impl Iterator<Item = &DimVector> {
        self.roots.iter().filter(|(_, k)| **k == RootKind::Imaginary).map(|(v, _)| v)
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum TypeClass {
    Finite,
    Affine { delta: DimVector },
    Indefinite,
}

/// `v - (v, e_i) e_i`; defined only at loop-free vertices.
pub fn reflect(q: &Quiver, v: &DimVector, i: usize) -> Result<DimVector> {
    q.check_dims(v)?;
    if i >= q.num_vertices() {
        return Err(Error::UnknownVertex(i.to_string()));
    }
    if !q.is_loop_free(i) {
        return Err(Error::LoopVertex(i));
    }
    let c = q.cartan_matrix();
    Ok(reflect_with(&c.0, v, i))
}

fn reflect_with(c: &[Vec<i64>], v: &DimVector, i: usize) -> DimVector {
    let pairing: i64 = v.0.iter().zip(&c[i]).map(|(x, cij)| x * cij).sum();
    let mut out = v.clone();
    out.0[i] -= pairing;
    out
}

/// Connected support and `(v, e_i) <= 0` for every vertex.
pub fn fundamental_region_test(q: &Quiver, v: &DimVector) -> Result<bool> {
    q.check_dims(v)?;
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    if !v.is_nonnegative() {
        return Ok(false);
    }
    let cv = q.cartan_matrix().apply(v);
    Ok(q.support_connected(v) && cv.0.iter().all(|&x| x <= 0))
}

/// Positive roots `v <= bound`, tagged real or imaginary.
///
/// Reflection orbits are explored inside the box `0 <= u <= bound + (Σ bound)·1`
/// and filtered to `bound` afterwards, since an orbit may leave the target
/// box and come back.
pub fn enumerate_roots(q: &Quiver, bound: &DimVector) -> Result<RootList> {
    q.check_dims(bound)?;
    let n = q.num_vertices();
    let c = q.cartan_matrix().0;
    let slack = bound.0.iter().map(|&b| b.max(0)).sum::<i64>();
    let inner = DimVector(bound.0.iter().map(|&b| b.max(0) + slack).collect());
    let loop_free: Vec<usize> = (0..n).filter(|&i| q.is_loop_free(i)).collect();

    let saturate = |seeds: Vec<DimVector>| -> BTreeSet<DimVector> {
        let mut seen: BTreeSet<DimVector> = BTreeSet::new();
        let mut queue: VecDeque<DimVector> = VecDeque::new();
        for s in seeds {
            if s.le(&inner) && seen.insert(s.clone()) {
                queue.push_back(s);
            }
        }
        while let Some(v) = queue.pop_front() {
            for &i in &loop_free {
                let r = reflect_with(&c, &v, i);
                if r.is_nonnegative() && !r.is_zero() && r.le(&inner) && seen.insert(r.clone()) {
                    queue.push_back(r);
                }
            }
        }
        seen
    };

    let real = saturate(loop_free.iter().map(|&i| DimVector::unit(n, i)).collect());
    let fundamental: Vec<DimVector> = bound
        .box_below()
        .into_iter()
        .filter(|v| !v.is_zero())
        .filter(|v| fundamental_region_test(q, v).unwrap_or(false))
        .collect();
    let imaginary = saturate(fundamental);

    let mut roots = BTreeMap::new();
    for v in real.into_iter().filter(|v| v.le(bound)) {
        roots.insert(v, RootKind::Real);
    }
    for v in imaginary.into_iter().filter(|v| v.le(bound)) {
        roots.entry(v).or_insert(RootKind::Imaginary);
    }
    Ok(RootList { roots })
}

/// Finite, affine (with primitive positive `delta`) or indefinite.
pub fn classify_type(q: &Quiver) -> Result<TypeClass> {
    if !q.is_connected() {
        return Err(Error::Disconnected);
    }
    let c = q.cartan_matrix();
    let n = c.size();
    let cq: Matrix<BigRational> = Matrix::from_fn(n, n, |i, j| BigRational::from_i64(c.entry(i, j)));
    let positive_definite = (1..=n).all(|k| determinant(&cq.submatrix(0, 0, k, k)).is_positive());
    if positive_definite {
        return Ok(TypeClass::Finite);
    }
    let kernel = cq.nullspace();
    if kernel.cols() != 1 {
        return Ok(TypeClass::Indefinite);
    }
    let mut gen = kernel.column(0);
    if gen.iter().all(|x| !x.is_positive()) {
        gen = gen.into_iter().map(|x| -x).collect();
    }
    if !gen.iter().all(Signed::is_positive) {
        return Ok(TypeClass::Indefinite);
    }
    // clear denominators, then divide by the gcd
    let lcm = gen.iter().fold(num_bigint::BigInt::from(1), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<num_bigint::BigInt> = gen.iter().map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(num_bigint::BigInt::zero(), |acc, x| acc.gcd(x));
    let delta = DimVector(ints.iter().map(|x| (x / &g).to_i64().expect("small delta")).collect());
    Ok(TypeClass::Affine { delta })
}

fn determinant(m: &Matrix<BigRational>) -> BigRational {
    let n = m.rows();
    let mut a = m.clone();
    let mut det = BigRational::from_i64(1);
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[(r, col)].is_zero()) else {
            return BigRational::zero();
        };
        if p != col {
            for c in 0..n {
                let tmp = a[(p, c)].clone();
                a[(p, c)] = a[(col, c)].clone();
                a[(col, c)] = tmp;
            }
            det = -det;
        }
        let pv = a[(col, col)].clone();
        det *= pv.clone();
        for r in col + 1..n {
            let f = a[(r, col)].clone() / pv.clone();
            for c in col..n {
                let x = a[(col, c)].clone();
                a[(r, c)] = a[(r, c)].clone() - f.clone() * x;
            }
        }
    }
    det
}

/// Dimension vectors of the simple modules of the preprojective algebra that
/// index the strata: coordinate vectors (at loop-free vertices) and, in
/// affine type, the imaginary generator `delta`; all filtered by `bound`.
pub fn simple_module_dims(q: &Quiver, bound: &DimVector) -> Result<Vec<DimVector>> {
    q.check_dims(bound)?;
    let n = q.num_vertices();
    let simple = (0..n).filter(|&i| q.is_loop_free(i)).map(|i| DimVector::unit(n, i));
    match classify_type(q)? {
        TypeClass::Finite => Ok(simple.filter(|e| e.le(bound)).collect()),
        TypeClass::Affine { delta } => {
            let mut out: Vec<DimVector> = simple.filter(|e| e.le(bound)).collect();
            if delta.le(bound) {
                out.push(delta);
            }
            Ok(out)
        }
        TypeClass::Indefinite => Err(Error::UnsupportedType(
            "simple-module dimension vectors are only classified for finite and affine quivers".into(),
        )),
    }
}

/// The imaginary generator, if the quiver is affine.
pub fn affine_delta(q: &Quiver) -> Result<Option<DimVector>> {
    Ok(match classify_type(q)? {
        TypeClass::Affine { delta } => Some(delta),
        _ => None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dv(v: &[i64]) -> DimVector {
        DimVector(v.to_vec())
    }

    #[test]
    fn reflect_examples() {
        let a2 = Quiver::type_a(2);
        assert_eq!(reflect(&a2, &dv(&[1, 0]), 1).unwrap(), dv(&[1, 1]));
        for q in [Quiver::type_a(3), Quiver::affine_a1(), Quiver::type_d(4)] {
            for i in 0..q.num_vertices() {
                let e = DimVector::unit(q.num_vertices(), i);
                assert_eq!(reflect(&q, &e, i).unwrap(), e.scaled(-1));
            }
        }
        assert_eq!(reflect(&Quiver::jordan(), &dv(&[2]), 0), Err(Error::LoopVertex(0)));
    }

    #[test]
    fn reflect_is_an_isometric_involution() {
        let q = Quiver::type_d(4);
        for v in dv(&[2, 1, 3, 1]).box_below() {
            for i in 0..4 {
                let r = reflect(&q, &v, i).unwrap();
                assert_eq!(reflect(&q, &r, i).unwrap(), v);
                assert_eq!(q.bilinear_form(&r, &r).unwrap(), q.bilinear_form(&v, &v).unwrap());
            }
        }
    }

    #[test]
    fn fundamental_region_examples() {
        assert!(fundamental_region_test(&Quiver::jordan(), &dv(&[4])).unwrap());
        assert!(!fundamental_region_test(&Quiver::type_a(2), &dv(&[1, 1])).unwrap());
        assert!(fundamental_region_test(&Quiver::affine_a1(), &dv(&[1, 1])).unwrap());
        assert_eq!(fundamental_region_test(&Quiver::jordan(), &dv(&[0])), Err(Error::ZeroVector));
    }

    #[test]
    fn enumerate_examples() {
        let r = enumerate_roots(&Quiver::type_a(2), &dv(&[1, 1])).unwrap();
        let got: Vec<_> = r.roots.keys().cloned().collect();
        assert_eq!(got, vec![dv(&[0, 1]), dv(&[1, 0]), dv(&[1, 1])]);
        assert!(r.imaginary().next().is_none());

        let r = enumerate_roots(&Quiver::jordan(), &dv(&[3])).unwrap();
        assert_eq!(r.len(), 3);
        assert!(r.roots.values().all(|k| *k == RootKind::Imaginary));

        let r = enumerate_roots(&Quiver::affine_a1(), &dv(&[2, 2])).unwrap();
        let real: Vec<_> = r.real().cloned().collect();
        let imag: Vec<_> = r.imaginary().cloned().collect();
        assert_eq!(real, vec![dv(&[0, 1]), dv(&[1, 0]), dv(&[1, 2]), dv(&[2, 1])]);
        assert_eq!(imag, vec![dv(&[1, 1]), dv(&[2, 2])]);
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify_type(&Quiver::type_a(2)).unwrap(), TypeClass::Finite);
        assert_eq!(classify_type(&Quiver::type_e(8)).unwrap(), TypeClass::Finite);
        assert_eq!(classify_type(&Quiver::jordan()).unwrap(), TypeClass::Affine { delta: dv(&[1]) });
        assert_eq!(classify_type(&Quiver::affine_a1()).unwrap(), TypeClass::Affine { delta: dv(&[1, 1]) });
        // affine D4: centre weight 2
        let d4h = Quiver::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]);
        assert_eq!(classify_type(&d4h).unwrap(), TypeClass::Affine { delta: dv(&[2, 1, 1, 1, 1]) });
        assert_eq!(classify_type(&Quiver::from_edges(1, &[(0, 0), (0, 0)])).unwrap(), TypeClass::Indefinite);
        assert_eq!(classify_type(&Quiver::from_edges(2, &[(0, 1), (0, 1), (0, 1)])).unwrap(), TypeClass::Indefinite);
        assert_eq!(classify_type(&Quiver::from_edges(2, &[])), Err(Error::Disconnected));
    }

    #[test]
    fn simple_module_examples() {
        assert_eq!(
            simple_module_dims(&Quiver::type_a(2), &dv(&[2, 2])).unwrap(),
            vec![dv(&[1, 0]), dv(&[0, 1])]
        );
        assert_eq!(simple_module_dims(&Quiver::jordan(), &dv(&[3])).unwrap(), vec![dv(&[1])]);
        assert_eq!(
            simple_module_dims(&Quiver::affine_a1(), &dv(&[2, 2])).unwrap(),
            vec![dv(&[1, 0]), dv(&[0, 1]), dv(&[1, 1])]
        );
        assert!(matches!(
            simple_module_dims(&Quiver::from_edges(1, &[(0, 0), (0, 0)]), &dv(&[1])),
            Err(Error::UnsupportedType(_))
        ));
    }

    #[test]
    fn finite_type_has_no_imaginary_roots() {
        for q in [Quiver::type_a(3), Quiver::type_d(4), Quiver::type_d(5)] {
            let bound = DimVector(vec![3; q.num_vertices()]);
            let r = enumerate_roots(&q, &bound).unwrap();
            assert!(r.imaginary().next().is_none());
            for v in r.roots.keys() {
                assert_eq!(q.bilinear_form(v, v).unwrap(), 2);
            }
        }
        // D4 has 12 positive roots, all with entries <= 2
        assert_eq!(enumerate_roots(&Quiver::type_d(4), &dv(&[3, 3, 3, 3])).unwrap().len(), 12);
    }
}
