//! Block-matrix model of correspondence classes acting on multiplicity
//! spaces, and the coproduct `Δ_c(A) = c⁻¹ A c`.
//!
//! Component `α` contributes a `d_α`-dimensional block. A class `c` is valid
//! when its diagonal blocks are identities and block `(β, α)` vanishes unless
//! `β ≤ α`; such a `c` is unipotent and its inverse is a finite Neumann series.

mod json;
mod multiplicity;
mod triple;

pub use json::{class_from_json, class_matrix_from_json, class_to_json, poset_from_json, poset_to_json, triple_poset_from_json, PosetJson};
pub use multiplicity::{extract_multiplicities, isotypic_idempotents, MultiplicityTable};
pub use triple::{coassoc_check, diagonal_family, random_quadruple, triple_components, TriplePattern, TriplePoset};

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::random::Rng;
use crate::scalar::Scalar;
use crate::strata::{compare, FixedComponent};
use crate::Rational;

/// Components `0..n` with block dimensions and a partial order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentPoset {
    dims: Vec<usize>,
    /// `le[β][α]` iff `β ≤ α`.
    le: Vec<Vec<bool>>,
    offsets: Vec<usize>,
}

impl ComponentPoset {
    /// `less` lists generating pairs `(β, α)` with `β < α`; the relation is
    /// closed transitively and must stay antisymmetric.
    pub fn new(dims: Vec<usize>, less: &[(usize, usize)]) -> Result<Self> {
        let n = dims.len();
        let mut le = vec![vec![false; n]; n];
        for (i, row) in le.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(b, a) in less {
            if b >= n || a >= n {
                return Err(Error::InvalidClass(format!("relation ({b}, {a}) outside {n} components")));
            }
            le[b][a] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if le[i][k] {
                    for j in 0..n {
                        if le[k][j] {
                            le[i][j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..i {
                if le[i][j] && le[j][i] {
                    return Err(Error::InvalidClass(format!("components {j} and {i} form a cycle")));
                }
            }
        }
        Ok(Self::from_relation(dims, le))
    }

    fn from_relation(dims: Vec<usize>, le: Vec<Vec<bool>>) -> Self {
        let mut offsets = Vec::with_capacity(dims.len() + 1);
        let mut acc = 0;
        for &d in &dims {
            offsets.push(acc);
            acc += d;
        }
        offsets.push(acc);
        ComponentPoset { dims, le, offsets }
    }

    /// Components in the given order with the `v¹`-order between them.
    pub fn from_components(components: &[FixedComponent], dims: Vec<usize>) -> Result<Self> {
        if components.len() != dims.len() {
            return Err(Error::Shape(format!("{} components, {} dimensions", components.len(), dims.len())));
        }
        let n = dims.len();
        let mut le = vec![vec![false; n]; n];
        for b in 0..n {
            for a in 0..n {
                le[b][a] = matches!(compare(&components[b], &components[a])?, Some(Ordering::Less | Ordering::Equal));
            }
        }
        Ok(Self::from_relation(dims, le))
    }

    /// `0 < 1 < ... < n-1`.
    pub fn chain(dims: Vec<usize>) -> Self {
        let n = dims.len();
        let le = (0..n).map(|b| (0..n).map(|a| b <= a).collect()).collect();
        Self::from_relation(dims, le)
    }

    /// Pairwise incomparable components.
    pub fn antichain(dims: Vec<usize>) -> Self {
        let n = dims.len();
        let le = (0..n).map(|b| (0..n).map(|a| a == b).collect()).collect();
        Self::from_relation(dims, le)
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.offsets[self.dims.len()]
    }

    pub fn offset(&self, k: usize) -> usize {
        self.offsets[k]
    }

    pub fn le(&self, beta: usize, alpha: usize) -> bool {
        self.le[beta][alpha]
    }

    pub fn lt(&self, beta: usize, alpha: usize) -> bool {
        beta != alpha && self.le[beta][alpha]
    }

    /// Whether the index order is a linear extension of the partial order.
    pub fn is_linearly_ordered(&self) -> bool {
        (0..self.len()).all(|b| (0..b).all(|a| !self.le[b][a]))
    }

    /// Strict relations `(β, α)`.
    pub fn relations(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n).flat_map(|b| (0..n).map(move |a| (b, a))).filter(|&(b, a)| self.lt(b, a)).collect()
    }

    pub fn block<T: Scalar>(&self, m: &Matrix<T>, beta: usize, alpha: usize) -> Matrix<T> {
        m.submatrix(self.offsets[beta], self.offsets[alpha], self.dims[beta], self.dims[alpha])
    }

    pub fn set_block<T: Scalar>(&self, m: &mut Matrix<T>, beta: usize, alpha: usize, block: &Matrix<T>) {
        m.set_block(self.offsets[beta], self.offsets[alpha], block);
    }

    fn check_shape<T: Scalar>(&self, m: &Matrix<T>) -> Result<()> {
        let d = self.total_dim();
        if m.shape() != (d, d) {
            return Err(Error::Shape(format!("expected {d}x{d}, got {}x{}", m.rows(), m.cols())));
        }
        Ok(())
    }
}

/// A correspondence class in block form over a component poset.
#[derive(Clone, Debug, PartialEq)]
pub struct CorrClass<T> {
    poset: ComponentPoset,
    matrix: Matrix<T>,
}

impl<T: Scalar> CorrClass<T> {
    pub fn new(poset: ComponentPoset, matrix: Matrix<T>) -> Result<Self> {
        poset.check_shape(&matrix)?;
        Ok(CorrClass { poset, matrix })
    }

    pub fn identity(poset: ComponentPoset) -> Self {
        let d = poset.total_dim();
        CorrClass { poset, matrix: Matrix::identity(d) }
    }

    pub fn poset(&self) -> &ComponentPoset {
        &self.poset
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.matrix
    }

    pub fn block(&self, beta: usize, alpha: usize) -> Matrix<T> {
        self.poset.block(&self.matrix, beta, alpha)
    }

    /// Identity diagonal blocks and `c_{β,α} = 0` unless `β ≤ α`.
    pub fn validate(&self) -> bool {
        let p = &self.poset;
        (0..p.len()).all(|a| {
            (0..p.len()).all(|b| {
                let blk = self.block(b, a);
                if a == b {
                    blk.is_identity()
                } else {
                    p.le(b, a) || blk.is_zero()
                }
            })
        })
    }

    /// The splitting criterion read off from the action on basis vectors:
    /// `c e` lies in `⊕_{β ≤ α} H_β` for every basis vector `e` of `H_α`, and
    /// its `H_α`-component is `e` itself.
    pub fn splitting_check(&self) -> bool {
        let p = &self.poset;
        for a in 0..p.len() {
            for j in p.offset(a)..p.offset(a) + p.dims()[a] {
                let col = self.matrix.column(j);
                for b in 0..p.len() {
                    for i in p.offset(b)..p.offset(b) + p.dims()[b] {
                        let expected_zero = !p.le(b, a) || (b == a && i != j);
                        if expected_zero && !col[i].is_zero() {
                            return false;
                        }
                        if i == j && col[i] != T::one() {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// `Σ_k (-N)^k` with `N = c - I`; exact and two-sided.
    pub fn invert(&self) -> Result<CorrClass<T>> {
        if !self.validate() {
            return Err(Error::InvalidClass("class does not satisfy the triangularity conditions".into()));
        }
        let d = self.poset.total_dim();
        let minus_n = &Matrix::identity(d) - &self.matrix;
        let mut term = Matrix::identity(d);
        let mut sum = Matrix::identity(d);
        // N raises the order strictly, so N^len = 0
        for _ in 0..self.poset.len() {
            term = &term * &minus_n;
            if term.is_zero() {
                break;
            }
            sum = &sum + &term;
        }
        Ok(CorrClass { poset: self.poset.clone(), matrix: sum })
    }

    /// `Δ_c(A) = c⁻¹ A c`.
    pub fn delta_c(&self, a: &AlgebraElement<T>) -> Result<Matrix<T>> {
        self.delta_c_matrix(a.matrix())
    }

    pub fn delta_c_matrix(&self, a: &Matrix<T>) -> Result<Matrix<T>> {
        self.poset.check_shape(a)?;
        let inv = self.invert()?;
        Ok(&(&inv.matrix * a) * &self.matrix)
    }

    /// `g⁻¹ c g` for a block-diagonal `g`.
    pub fn conjugate(&self, g: &Matrix<T>, g_inv: &Matrix<T>) -> Result<CorrClass<T>> {
        self.poset.check_shape(g)?;
        Ok(CorrClass { poset: self.poset.clone(), matrix: &(g_inv * &self.matrix) * g })
    }
}

/// Assignment of components to groups (fixed-locus strata sharing a
/// `σ`-image); algebra elements are block diagonal along it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grouping(pub Vec<usize>);

impl Grouping {
    pub fn singletons(n: usize) -> Self {
        Grouping((0..n).collect())
    }

    pub fn whole(n: usize) -> Self {
        Grouping(vec![0; n])
    }

    pub fn num_groups(&self) -> usize {
        self.0.iter().map(|g| g + 1).max().unwrap_or(0)
    }

    pub fn members(&self, g: usize) -> Vec<usize> {
        (0..self.0.len()).filter(|&k| self.0[k] == g).collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraElement<T> {
    matrix: Matrix<T>,
}

impl<T: Scalar> AlgebraElement<T> {
    /// Checks that blocks between different groups vanish.
    pub fn new(poset: &ComponentPoset, grouping: &Grouping, matrix: Matrix<T>) -> Result<Self> {
        poset.check_shape(&matrix)?;
        if grouping.0.len() != poset.len() {
            return Err(Error::Shape(format!("grouping covers {} of {} components", grouping.0.len(), poset.len())));
        }
        for b in 0..poset.len() {
            for a in 0..poset.len() {
                if grouping.0[a] != grouping.0[b] && !poset.block(&matrix, b, a).is_zero() {
                    return Err(Error::InvalidClass(format!("algebra element couples components {b} and {a} of different groups")));
                }
            }
        }
        Ok(AlgebraElement { matrix })
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.matrix
    }
}

pub type RatClass = CorrClass<Rational>;

/// A valid class with off-diagonal entries `k/den`, `|k| <= num`, in each
/// allowed block with probability `density`.
pub fn random_class(poset: &ComponentPoset, density: f64, num: i64, den: i64, rng: &mut Rng) -> RatClass {
    let mut m = Matrix::identity(poset.total_dim());
    for (b, a) in poset.relations() {
        if rng.chance(density) {
            let blk = rng.rational_matrix(poset.dims()[b], poset.dims()[a], num, den);
            poset.set_block(&mut m, b, a, &blk);
        }
    }
    CorrClass { poset: poset.clone(), matrix: m }
}

/// Random rational element block diagonal along `grouping`.
pub fn random_element(poset: &ComponentPoset, grouping: &Grouping, num: i64, den: i64, rng: &mut Rng) -> AlgebraElement<Rational> {
    let mut m = Matrix::zeros(poset.total_dim(), poset.total_dim());
    for b in 0..poset.len() {
        for a in 0..poset.len() {
            if grouping.0[a] == grouping.0[b] {
                let blk = rng.rational_matrix(poset.dims()[b], poset.dims()[a], num, den);
                poset.set_block(&mut m, b, a, &blk);
            }
        }
    }
    AlgebraElement { matrix: m }
}

/// A random poset on `n` components: each pair `i < j` is related with
/// probability `density`, so the index order is a linear extension.
pub fn random_poset(n: usize, max_dim: usize, density: f64, rng: &mut Rng) -> ComponentPoset {
    let dims = (0..n).map(|_| 1 + rng.below(max_dim)).collect();
    let less: Vec<(usize, usize)> = (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).filter(|_| rng.chance(density)).collect();
    ComponentPoset::new(dims, &less).expect("index order is acyclic")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    fn r(p: i64) -> Rational {
        ratio(p, 1)
    }

    fn two_chain() -> ComponentPoset {
        ComponentPoset::chain(vec![1, 2])
    }

    #[test]
    fn poset_closure_and_cycles() {
        let p = ComponentPoset::new(vec![1, 1, 1], &[(0, 1), (1, 2)]).unwrap();
        assert!(p.le(0, 2) && !p.le(2, 0) && p.is_linearly_ordered());
        assert_eq!(p.relations().len(), 3);
        assert!(ComponentPoset::new(vec![1, 1], &[(0, 1), (1, 0)]).is_err());
        assert!(!ComponentPoset::new(vec![1, 1], &[(1, 0)]).unwrap().is_linearly_ordered());
    }

    #[test]
    fn validation_examples() {
        let p = two_chain();
        assert!(CorrClass::<Rational>::identity(p.clone()).validate());
        let mut m = Matrix::identity(3);
        m[(0, 2)] = r(5);
        let above = CorrClass::new(p.clone(), m.clone()).unwrap();
        assert!(above.validate() && above.splitting_check());
        let mut below = m.clone();
        below[(2, 0)] = r(1);
        let below = CorrClass::new(p.clone(), below).unwrap();
        assert!(!below.validate() && !below.splitting_check());
        let mut diag = m;
        diag[(1, 2)] = r(1);
        let diag = CorrClass::new(p.clone(), diag).unwrap();
        assert!(!diag.validate() && !diag.splitting_check());
        assert!(CorrClass::new(p, Matrix::<Rational>::identity(2)).is_err());
    }

    #[test]
    fn inverse_examples() {
        let p = two_chain();
        let id = CorrClass::<Rational>::identity(p.clone());
        assert_eq!(id.invert().unwrap(), id);
        let mut m = Matrix::identity(3);
        m[(0, 1)] = ratio(3, 2);
        m[(0, 2)] = r(-1);
        let c = CorrClass::new(p.clone(), m.clone()).unwrap();
        let mut expected = Matrix::identity(3);
        expected[(0, 1)] = ratio(-3, 2);
        expected[(0, 2)] = r(1);
        assert_eq!(c.invert().unwrap().matrix, expected);
        m[(1, 1)] = r(2);
        assert!(CorrClass::new(p, m).unwrap().invert().is_err());
    }

    #[test]
    fn random_inverses_are_two_sided() {
        let mut rng = Rng::seeded(5);
        for _ in 0..20 {
            let p = random_poset(5, 3, 0.6, &mut rng);
            let c = random_class(&p, 0.8, 5, 3, &mut rng);
            let inv = c.invert().unwrap();
            assert!((&inv.matrix * &c.matrix).is_identity());
            assert!((&c.matrix * &inv.matrix).is_identity());
            assert_eq!(inv.invert().unwrap(), c);
            assert_eq!(c.validate(), c.splitting_check());
        }
    }

    #[test]
    fn delta_is_a_unital_homomorphism() {
        let mut rng = Rng::seeded(6);
        let p = random_poset(4, 2, 0.7, &mut rng);
        let g = Grouping::whole(p.len());
        let c = random_class(&p, 1.0, 4, 2, &mut rng);
        let one = AlgebraElement::new(&p, &g, Matrix::identity(p.total_dim())).unwrap();
        assert!(c.delta_c(&one).unwrap().is_identity());
        let a = random_element(&p, &g, 3, 2, &mut rng);
        let b = random_element(&p, &g, 3, 2, &mut rng);
        let ab = AlgebraElement::new(&p, &g, a.matrix() * b.matrix()).unwrap();
        assert_eq!(c.delta_c(&ab).unwrap(), &c.delta_c(&a).unwrap() * &c.delta_c(&b).unwrap());
        let id = CorrClass::identity(p.clone());
        assert_eq!(id.delta_c(&a).unwrap(), a.matrix().clone());
    }

    #[test]
    fn block_diagonal_elements_preserve_the_filtration() {
        let mut rng = Rng::seeded(8);
        let p = random_poset(5, 2, 0.5, &mut rng);
        let g = Grouping::singletons(p.len());
        let c = random_class(&p, 1.0, 3, 1, &mut rng);
        let a = random_element(&p, &g, 3, 1, &mut rng);
        let image = c.delta_c(&a).unwrap();
        for alpha in 0..p.len() {
            for beta in 0..p.len() {
                if !p.le(beta, alpha) {
                    assert!(p.block(&image, beta, alpha).is_zero());
                }
            }
        }
    }

    #[test]
    fn algebra_elements_respect_grouping() {
        let p = ComponentPoset::antichain(vec![1, 1]);
        let mut m = Matrix::<Rational>::identity(2);
        m[(0, 1)] = r(1);
        assert!(AlgebraElement::new(&p, &Grouping::singletons(2), m.clone()).is_err());
        assert!(AlgebraElement::new(&p, &Grouping::whole(2), m).is_ok());
    }
}
