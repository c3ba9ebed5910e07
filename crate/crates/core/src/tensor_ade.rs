//! Weight multiplicities (Freudenthal) and tensor product decompositions
//! (highest-weight peeling) for simply-laced finite types, with weights in
//! fundamental-weight coordinates.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::quiver::{DimVector, Quiver};
use crate::roots::{classify_type, TypeClass};
use crate::scalar::Scalar;
use crate::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn sub(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

/// Multiplicity of each weight.
pub type Character = BTreeMap<Weight, u64>;

/// Cartan data of a simply-laced finite type.
#[derive(Clone, Debug)]
pub struct RootData {
    cartan: Vec<Vec<i64>>,
    /// `det(C) · C⁻¹`: the weight inner product scaled to integers.
    gram: Vec<Vec<i64>>,
    det: i64,
    /// Positive roots in weight coordinates.
    positive: Vec<Weight>,
}

impl RootData {
    pub fn new(q: &Quiver) -> Result<Self> {
        if classify_type(q)? != TypeClass::Finite {
            return Err(Error::UnsupportedType("tensor multiplicities need a finite (ADE) quiver".into()));
        }
        let c = q.cartan_matrix();
        let n = c.size();
        let cq: Matrix<Rational> = Matrix::from_fn(n, n, |i, j| Rational::from_i64(c.entry(i, j)));
        let inv = cq.inverse(0.0).expect("positive definite");
        // the denominators of C⁻¹ divide det C; the lcm of them is enough
        let det = inv.entries().iter().fold(1i64, |acc, x| num_integer::lcm(acc, x.denom().to_i64().expect("small")));
        let gram = (0..n)
            .map(|i| (0..n).map(|j| (inv[(i, j)].clone() * Rational::from_i64(det)).to_integer().to_i64().expect("small")).collect())
            .collect();
        let cartan: Vec<Vec<i64>> = c.0.clone();

        // positive roots: vectors with (β, β) = 2 reached by adding simple roots
        let norm = |b: &[i64]| -> i64 { (0..n).map(|i| (0..n).map(|j| b[i] * cartan[i][j] * b[j]).sum::<i64>()).sum() };
        let mut roots: BTreeSet<Vec<i64>> = (0..n).map(|i| DimVector::unit(n, i).0).collect();
        let mut frontier: Vec<Vec<i64>> = roots.iter().cloned().collect();
        while let Some(b) = frontier.pop() {
            for i in 0..n {
                let mut next = b.clone();
                next[i] += 1;
                if norm(&next) == 2 && roots.insert(next.clone()) {
                    frontier.push(next);
                }
            }
        }
        let positive = roots
            .iter()
            .map(|b| Weight((0..n).map(|i| (0..n).map(|j| cartan[i][j] * b[j]).sum()).collect()))
            .collect();
        Ok(RootData { cartan, gram, det, positive })
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn positive_roots(&self) -> &[Weight] {
        &self.positive
    }

    /// Simple root `α_i` in weight coordinates (row `i` of `C`).
    pub fn simple_root(&self, i: usize) -> Weight {
        Weight(self.cartan[i].clone())
    }

    /// `det · (x, y)`.
    fn scaled_inner(&self, x: &Weight, y: &Weight) -> i64 {
        let n = self.rank();
        (0..n).map(|i| (0..n).map(|j| x.0[i] * self.gram[i][j] * y.0[j]).sum::<i64>()).sum()
    }

    fn rho(&self) -> Weight {
        Weight(vec![1; self.rank()])
    }

    /// `det · (x, ρ)`, the (scaled) height used to order weights.
    fn height(&self, x: &Weight) -> i64 {
        self.scaled_inner(x, &self.rho())
    }

    fn check(&self, w: &Weight) -> Result<()> {
        if w.0.len() != self.rank() {
            return Err(Error::IndexMismatch { expected: self.rank(), got: w.0.len() });
        }
        if !w.is_dominant() {
            return Err(Error::NotDominant(w.0.clone()));
        }
        Ok(())
    }

    /// Weyl dimension formula; for simply-laced types
    /// `(λ+ρ, β) = Σ_i c_i (λ_i + 1)` for `β = Σ c_i α_i`.
    pub fn dimension(&self, lambda: &Weight) -> Result<u64> {
        self.check(lambda)?;
        let mut num = Rational::from_i64(1);
        for beta in &self.positive {
            // root coordinates of beta: C⁻¹ beta = gram·beta / det
            let coords: Vec<i64> = (0..self.rank()).map(|i| (0..self.rank()).map(|j| self.gram[i][j] * beta.0[j]).sum::<i64>() / self.det).collect();
            let top: i64 = coords.iter().zip(&lambda.0).map(|(c, l)| c * (l + 1)).sum();
            let bottom: i64 = coords.iter().sum();
            num = num * crate::scalar::ratio(top, bottom);
        }
        Ok(num.to_integer().to_u64().expect("positive dimension"))
    }

    /// Weight diagram of `V(λ)` by Freudenthal's recursion, descending from
    /// `λ` by simple roots.
    pub fn weight_multiplicities(&self, lambda: &Weight) -> Result<Character> {
        self.check(lambda)?;
        let lr = lambda.add(&self.rho());
        let top = self.scaled_inner(&lr, &lr);
        let mut mult: Character = BTreeMap::new();
        mult.insert(lambda.clone(), 1);
        let mut layer = vec![lambda.clone()];
        while !layer.is_empty() {
            let mut candidates = BTreeSet::new();
            for mu in &layer {
                for i in 0..self.rank() {
                    candidates.insert(mu.sub(&self.simple_root(i)));
                }
            }
            let mut next = Vec::new();
            for mu in candidates {
                if mult.contains_key(&mu) {
                    continue;
                }
                let mr = mu.add(&self.rho());
                let denom = top - self.scaled_inner(&mr, &mr);
                if denom <= 0 {
                    continue;
                }
                let mut sum = 0i64;
                for alpha in &self.positive {
                    let mut shifted = mu.add(alpha);
                    while let Some(&m) = mult.get(&shifted) {
                        sum += m as i64 * self.scaled_inner(&shifted, alpha);
                        shifted = shifted.add(alpha);
                    }
                }
                let value = 2 * sum;
                debug_assert_eq!(value % denom, 0, "Freudenthal quotient not integral");
                if value > 0 {
                    mult.insert(mu.clone(), (value / denom) as u64);
                    next.push(mu);
                }
            }
            layer = next;
        }
        Ok(mult)
    }

    /// Multiplicities of the irreducibles in `V(λ) ⊗ V(μ)`.
    pub fn tensor_decompose(&self, lambda: &Weight, mu: &Weight) -> Result<BTreeMap<Weight, u64>> {
        let a = self.weight_multiplicities(lambda)?;
        let b = self.weight_multiplicities(mu)?;
        let mut product: BTreeMap<Weight, i64> = BTreeMap::new();
        for (x, m) in &a {
            for (y, k) in &b {
                *product.entry(x.add(y)).or_insert(0) += (m * k) as i64;
            }
        }
        let mut out = BTreeMap::new();
        loop {
            product.retain(|_, c| *c != 0);
            let Some(top) = product.keys().max_by_key(|w| (self.height(w), (*w).clone())).cloned() else {
                break;
            };
            let count = product[&top];
            if count < 0 || !top.is_dominant() {
                return Err(Error::Multiplicity(format!("character peeling reached {:?} with coefficient {count}", top.0)));
            }
            out.insert(top.clone(), count as u64);
            for (w, m) in self.weight_multiplicities(&top)? {
                *product.entry(w).or_insert(0) -= count * m as i64;
            }
        }
        Ok(out)
    }
}

/// `w - C v` in fundamental-weight coordinates.
pub fn weight_of(q: &Quiver, v: &DimVector, w: &DimVector) -> Result<Weight> {
    q.check_dims(v)?;
    q.check_dims(w)?;
    if classify_type(q)? != TypeClass::Finite {
        return Err(Error::UnsupportedType("weights are only defined here for finite type".into()));
    }
    let cv = q.cartan_matrix().apply(v);
    Ok(Weight(w.0.iter().zip(&cv.0).map(|(a, b)| a - b).collect()))
}

pub fn weight_multiplicities(q: &Quiver, lambda: &Weight) -> Result<Character> {
    RootData::new(q)?.weight_multiplicities(lambda)
}

pub fn tensor_decompose(q: &Quiver, lambda: &Weight, mu: &Weight) -> Result<BTreeMap<Weight, u64>> {
    RootData::new(q)?.tensor_decompose(lambda, mu)
}

/// Copies of `V(w - Cv⁰)` in `V(w¹ - Cv¹) ⊗ V(w² - Cv²)`.
pub fn multiplicity_n(
    q: &Quiver,
    v1: &DimVector,
    w1: &DimVector,
    v2: &DimVector,
    w2: &DimVector,
    v0: &DimVector,
    w: &DimVector,
) -> Result<u64> {
    let data = RootData::new(q)?;
    if w.0.len() != w1.0.len() || &(w1 + w2) != w {
        return Err(Error::Dimension(format!("w = {w} is not w¹ + w² = {w1} + {w2}")));
    }
    let lhs = weight_of(q, v1, w1)?;
    let rhs = weight_of(q, v2, w2)?;
    let target = weight_of(q, v0, w)?;
    for x in [&lhs, &rhs, &target] {
        if !x.is_dominant() {
            return Err(Error::NotDominant(x.0.clone()));
        }
    }
    Ok(data.tensor_decompose(&lhs, &rhs)?.get(&target).copied().unwrap_or(0))
}
