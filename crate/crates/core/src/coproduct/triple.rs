//! Triple splittings `W = W¹ ⊕ W² ⊕ W³` and the coassociativity criterion.
//!
//! All four classes act on the multiplicity space indexed by triples
//! `(v¹, v², v³)`; each has its own support pattern:
//!
//! | class        | `(β, α)` may be nonzero when                  |
//! |--------------|-----------------------------------------------|
//! | `c^{12,3}`   | `β¹+β² < α¹+α²`                               |
//! | `c^{1,23}`   | `β¹ < α¹`                                     |
//! | `c^{(1,2),3}`| `β³ = α³` and `β¹ < α¹`                       |
//! | `c^{1,(2,3)}`| `β¹ = α¹` and `β² < α²`                       |
//!
//! with `<` the strict componentwise order. Conjugating first by the coarse
//! and then by the refined class must agree along both routes:
//! `c^{12,3} c^{(1,2),3} = c^{1,23} c^{1,(2,3)}`.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::quiver::DimVector;
use crate::random::Rng;
use crate::scalar::Scalar;
use crate::Rational;

use super::{random_class, ComponentPoset, CorrClass};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TriplePattern {
    /// `c^{12,3}`
    Coarse12_3,
    /// `c^{1,23}`
    Coarse1_23,
    /// `c^{(1,2),3}`
    Refined12_3,
    /// `c^{1,(2,3)}`
    Refined1_23,
}

impl TriplePattern {
    pub const ALL: [TriplePattern; 4] =
        [TriplePattern::Coarse12_3, TriplePattern::Coarse1_23, TriplePattern::Refined12_3, TriplePattern::Refined1_23];

    pub fn name(self) -> &'static str {
        match self {
            TriplePattern::Coarse12_3 => "c12,3",
            TriplePattern::Coarse1_23 => "c1,23",
            TriplePattern::Refined12_3 => "c(1,2),3",
            TriplePattern::Refined1_23 => "c1,(2,3)",
        }
    }

    /// Whether block `(β, α)`, `β ≠ α`, may be nonzero.
    pub fn allows(self, beta: &[DimVector; 3], alpha: &[DimVector; 3]) -> bool {
        let lt = |x: &DimVector, y: &DimVector| x != y && x.le(y);
        match self {
            TriplePattern::Coarse12_3 => lt(&(&beta[0] + &beta[1]), &(&alpha[0] + &alpha[1])),
            TriplePattern::Coarse1_23 => lt(&beta[0], &alpha[0]),
            TriplePattern::Refined12_3 => beta[2] == alpha[2] && lt(&beta[0], &alpha[0]),
            TriplePattern::Refined1_23 => beta[0] == alpha[0] && lt(&beta[1], &alpha[1]),
        }
    }
}

/// All `(v¹, v², v³)` with `v¹ + v² + v³ = v`, lexicographic in `(v¹, v²)`.
pub fn triple_components(v: &DimVector) -> Vec<[DimVector; 3]> {
    let mut out = Vec::new();
    for v1 in v.box_below() {
        let rest = v - &v1;
        for v2 in rest.box_below() {
            let v3 = &rest - &v2;
            out.push([v1.clone(), v2, v3]);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriplePoset {
    pub triples: Vec<[DimVector; 3]>,
    pub dims: Vec<usize>,
}

impl TriplePoset {
    pub fn new(triples: Vec<[DimVector; 3]>, dims: Vec<usize>) -> Result<Self> {
        if triples.len() != dims.len() {
            return Err(Error::Shape(format!("{} triples, {} dimensions", triples.len(), dims.len())));
        }
        Ok(TriplePoset { triples, dims })
    }

    /// Every triple decomposition of `v`, each with block dimension `d`.
    pub fn uniform(v: &DimVector, d: usize) -> Self {
        let triples = triple_components(v);
        let dims = vec![d; triples.len()];
        TriplePoset { triples, dims }
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    /// The order in which `pattern` is triangular.
    pub fn poset(&self, pattern: TriplePattern) -> ComponentPoset {
        let n = self.len();
        let le = (0..n)
            .map(|b| (0..n).map(|a| a == b || pattern.allows(&self.triples[b], &self.triples[a])).collect())
            .collect();
        ComponentPoset::from_relation(self.dims.clone(), le)
    }
}

fn check_pattern<T: Scalar>(tp: &TriplePoset, pattern: TriplePattern, c: &CorrClass<T>) -> Result<()> {
    let expected = tp.poset(pattern);
    if c.poset().dims() != expected.dims() {
        return Err(Error::Shape(format!("{} is not indexed by the triple components", pattern.name())));
    }
    let p = &expected;
    for b in 0..p.len() {
        for a in 0..p.len() {
            let blk = p.block(c.matrix(), b, a);
            let ok = if a == b { blk.is_identity() } else { p.le(b, a) || blk.is_zero() };
            if !ok {
                return Err(Error::SupportViolation(format!("{} has a forbidden block ({b}, {a})", pattern.name())));
            }
        }
    }
    Ok(())
}

/// Whether `c^{12,3} c^{(1,2),3} = c^{1,23} c^{1,(2,3)}` exactly, after
/// checking each class against its own support pattern.
pub fn coassoc_check<T: Scalar>(
    tp: &TriplePoset,
    c12_3: &CorrClass<T>,
    c1_23: &CorrClass<T>,
    c_12_3: &CorrClass<T>,
    c_1_23: &CorrClass<T>,
) -> Result<bool> {
    let classes = [c12_3, c1_23, c_12_3, c_1_23];
    for (pattern, c) in TriplePattern::ALL.iter().zip(classes) {
        check_pattern(tp, *pattern, c)?;
    }
    Ok(c12_3.matrix() * c_12_3.matrix() == c1_23.matrix() * c_1_23.matrix())
}

/// A family satisfying the criterion: both coarse classes equal `I + N` with
/// `N` supported where both coarse patterns allow, refined classes trivial.
pub fn diagonal_family(tp: &TriplePoset, num: i64, den: i64, rng: &mut Rng) -> [CorrClass<Rational>; 4] {
    let p12 = tp.poset(TriplePattern::Coarse12_3);
    let p1 = tp.poset(TriplePattern::Coarse1_23);
    let mut m = Matrix::identity(p12.total_dim());
    for (b, a) in p12.relations() {
        if p1.lt(b, a) {
            let blk = rng.rational_matrix(tp.dims[b], tp.dims[a], num, den);
            p12.set_block(&mut m, b, a, &blk);
        }
    }
    [
        CorrClass { poset: p12, matrix: m.clone() },
        CorrClass { poset: p1, matrix: m },
        CorrClass::identity(tp.poset(TriplePattern::Refined12_3)),
        CorrClass::identity(tp.poset(TriplePattern::Refined1_23)),
    ]
}

/// Four independent random classes, each valid for its own pattern.
pub fn random_quadruple(tp: &TriplePoset, num: i64, den: i64, rng: &mut Rng) -> [CorrClass<Rational>; 4] {
    TriplePattern::ALL.map(|p| random_class(&tp.poset(p), 1.0, num, den, rng))
}
