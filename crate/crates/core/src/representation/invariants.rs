use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::quiver::{Arrow, DimVector};
use crate::scalar::Scalar;

use super::Rep;

/// A path in the doubled quiver: start vertex and arrows in the order they
/// are applied. Length-zero paths are distinguished by the start vertex.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HubKey {
    pub start: usize,
    pub word: Vec<Arrow>,
}

/// Values of the generating invariants of the affine quotient:
/// traces `tr(B_{h_N} ⋯ B_{h_1})` over cycles and hub matrices
/// `b_{in(h_N)} B_{h_N} ⋯ B_{h_1} a_{out(h_1)}` over paths.
#[derive(Clone, Debug, PartialEq)]
pub struct InvariantRecord<T> {
    pub cap: usize,
    pub w: DimVector,
    pub traces: BTreeMap<Vec<Arrow>, T>,
    pub hubs: BTreeMap<HubKey, Matrix<T>>,
}

/// `(Σ v_i)^2`: longer words in the arrows are combinations of shorter ones.
pub fn default_cap(v: &DimVector) -> usize {
    let s = v.total().max(0) as usize;
    s * s
}

pub fn invariant_record<T: Scalar>(r: &Rep<T>, cap: usize) -> InvariantRecord<T> {
    let q = r.quiver();
    let vs = r.v().as_usize();
    let mut traces = BTreeMap::new();
    let mut hubs = BTreeMap::new();
    for start in 0..q.num_vertices() {
        // (end vertex, word, product B_{h_k} ⋯ B_{h_1})
        let mut stack: Vec<(usize, Vec<Arrow>, Matrix<T>)> = vec![(start, Vec::new(), Matrix::identity(vs[start]))];
        while let Some((end, word, prod)) = stack.pop() {
            let hub = &(&r.b[end] * &prod) * &r.a[start];
            if !word.is_empty() && end == start {
                traces.insert(word.clone(), prod.trace());
            }
            hubs.insert(HubKey { start, word: word.clone() }, hub);
            if word.len() < cap {
                for h in q.arrows_from(end) {
                    let mut next = word.clone();
                    next.push(h);
                    stack.push((q.target(h), next, &r.arrows[h] * &prod));
                }
            }
        }
    }
    InvariantRecord { cap, w: r.w().clone(), traces, hubs }
}

/// Entrywise comparison; exact scalars compare exactly.
pub fn records_equal<T: Scalar>(r1: &InvariantRecord<T>, r2: &InvariantRecord<T>, tol: f64) -> Result<bool> {
    if r1.cap != r2.cap {
        return Err(Error::IncompatibleRecords(format!("length caps {} and {}", r1.cap, r2.cap)));
    }
    if r1.w != r2.w {
        return Err(Error::IncompatibleRecords(format!("framings {} and {}", r1.w, r2.w)));
    }
    if r1.hubs.len() != r2.hubs.len() || r1.hubs.keys().zip(r2.hubs.keys()).any(|(a, b)| a != b) {
        return Err(Error::IncompatibleRecords("different path sets".into()));
    }
    if r1.traces.len() != r2.traces.len() || r1.traces.keys().zip(r2.traces.keys()).any(|(a, b)| a != b) {
        return Err(Error::IncompatibleRecords("different cycle sets".into()));
    }
    let traces_match = r1.traces.values().zip(r2.traces.values()).all(|(x, y)| x.approx_eq(y, tol));
    Ok(traces_match && r1.hubs.values().zip(r2.hubs.values()).all(|(x, y)| x.approx_eq(y, tol)))
}

impl<T: Scalar> InvariantRecord<T> {
    /// Largest entry magnitude over all traces and hubs.
    pub fn scale(&self) -> f64 {
        let t = self.traces.values().map(Scalar::magnitude).fold(0.0, f64::max);
        self.hubs.values().map(Matrix::max_abs).fold(t, f64::max)
    }

    /// Largest entrywise difference to another record with the same keys.
    pub fn max_difference(&self, other: &InvariantRecord<T>) -> f64 {
        let t = self
            .traces
            .iter()
            .map(|(k, x)| other.traces.get(k).map_or(f64::INFINITY, |y| (x.clone() - y.clone()).magnitude()))
            .fold(0.0, f64::max);
        self.hubs
            .iter()
            .map(|(k, x)| other.hubs.get(k).map_or(f64::INFINITY, |y| (x - y).max_abs()))
            .fold(t, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::Quiver;
    use crate::random::{random_gauge, random_rep, Rng};
    use crate::representation::DEFAULT_TOL;
    use num_complex::Complex64;

    #[test]
    fn zero_rep_record_is_zero() {
        let q = Quiver::jordan();
        let r = Rep::<Complex64>::zero(&q, &DimVector(vec![2]), &DimVector(vec![1])).unwrap();
        let rec = invariant_record(&r, 3);
        assert_eq!(rec.traces.len(), 2 + 4 + 8);
        assert_eq!(rec.hubs.len(), 1 + 2 + 4 + 8);
        assert_eq!(rec.scale(), 0.0);
    }

    #[test]
    fn gauge_invariance() {
        let mut rng = Rng::seeded(17);
        for q in [Quiver::jordan(), Quiver::affine_a1(), Quiver::type_a(3)] {
            let n = q.num_vertices();
            let v = DimVector(vec![2; n]);
            let w = DimVector(vec![1; n]);
            let r = random_rep(&q, &v, &w, &mut rng);
            let g = random_gauge(&v, &mut rng);
            let rg = r.gauge_act(&g, DEFAULT_TOL).unwrap();
            let cap = 4;
            assert!(records_equal(&invariant_record(&r, cap), &invariant_record(&rg, cap), 1e-10).unwrap());
        }
    }

    #[test]
    fn direct_sum_hubs_are_block_diagonal() {
        let mut rng = Rng::seeded(2);
        let q = Quiver::affine_a1();
        let r1 = random_rep(&q, &DimVector(vec![1, 1]), &DimVector(vec![1, 0]), &mut rng);
        let r2 = random_rep(&q, &DimVector(vec![1, 0]), &DimVector(vec![1, 1]), &mut rng);
        let (s, split) = Rep::direct_sum(&r1, &r2).unwrap();
        let w1 = split.w1.as_usize();
        let rec = invariant_record(&s, 4);
        for (k, hub) in &rec.hubs {
            let end = k.word.last().map_or(k.start, |&h| q.target(h));
            for row in 0..hub.rows() {
                for col in 0..hub.cols() {
                    if (row < w1[end]) != (col < w1[k.start]) {
                        assert_eq!(hub[(row, col)], Complex64::new(0.0, 0.0));
                    }
                }
            }
        }
    }

    #[test]
    fn distinct_spectra_are_separated() {
        let q = Quiver::jordan();
        let v = DimVector(vec![2]);
        let w = DimVector(vec![0]);
        let diag = |x: f64, y: f64| Matrix::from_rows(vec![
            vec![Complex64::new(x, 0.0), Complex64::new(0.0, 0.0)],
            vec![Complex64::new(0.0, 0.0), Complex64::new(y, 0.0)],
        ]);
        let mk = |x: f64, y: f64| {
            Rep::new(q.clone(), v.clone(), w.clone(), vec![diag(x, y), diag(0.0, 0.0)], vec![Matrix::zeros(2, 0)], vec![Matrix::zeros(0, 2)]).unwrap()
        };
        let r1 = invariant_record(&mk(1.0, 2.0), 4);
        let r2 = invariant_record(&mk(1.0, 3.0), 4);
        let r3 = invariant_record(&mk(2.0, 1.0), 4);
        assert!(!records_equal(&r1, &r2, 1e-10).unwrap());
        assert!(records_equal(&r1, &r3, 1e-10).unwrap());
        assert!(records_equal(&r1, &r1, 0.0).unwrap());
    }

    #[test]
    fn incompatible_records() {
        let q = Quiver::jordan();
        let r = Rep::<Complex64>::zero(&q, &DimVector(vec![1]), &DimVector(vec![1])).unwrap();
        let a = invariant_record(&r, 2);
        let b = invariant_record(&r, 3);
        assert!(matches!(records_equal(&a, &b, 1e-9), Err(Error::IncompatibleRecords(_))));
    }

    #[test]
    fn default_cap_is_square_of_total() {
        assert_eq!(default_cap(&DimVector(vec![1, 2])), 9);
        assert_eq!(default_cap(&DimVector(vec![0])), 0);
    }
}
