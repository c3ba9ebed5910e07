//! Tensor product multiplicities as ranks of isotypic projectors.
//!
//! The algebra on the fixed-locus side is semisimple, so the multiplicity
//! space of each group decomposes into copies of the source simples. Given
//! the central idempotents `E_x` of the source simples (as they act after
//! the coproduct), the number of copies of simple `x` in group `g` is
//! `rank(P_g E_x P_g) / d_x`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::random::Rng;
use crate::scalar::Scalar;
use crate::Rational;

use super::{ComponentPoset, Grouping};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultiplicityTable {
    /// `n[g][x]`: copies of source simple `x` in group `g`.
    pub n: Vec<Vec<usize>>,
}

fn group_coords(poset: &ComponentPoset, grouping: &Grouping, g: usize) -> Vec<usize> {
    grouping
        .members(g)
        .into_iter()
        .flat_map(|k| poset.offset(k)..poset.offset(k) + poset.dims()[k])
        .collect()
}

fn coordinate_projector<T: Scalar>(d: usize, coords: &[usize]) -> Matrix<T> {
    let mut p = Matrix::zeros(d, d);
    for &i in coords {
        p[(i, i)] = T::one();
    }
    p
}

pub fn extract_multiplicities<T: Scalar>(
    poset: &ComponentPoset,
    grouping: &Grouping,
    source_dims: &[usize],
    idempotents: &[Matrix<T>],
    tol: f64,
) -> Result<MultiplicityTable> {
    let d = poset.total_dim();
    if grouping.0.len() != poset.len() {
        return Err(Error::Shape(format!("grouping covers {} of {} components", grouping.0.len(), poset.len())));
    }
    if idempotents.len() != source_dims.len() {
        return Err(Error::Multiplicity(format!("{} idempotents for {} source simples", idempotents.len(), source_dims.len())));
    }
    let mut total = Matrix::zeros(d, d);
    for (x, e) in idempotents.iter().enumerate() {
        if e.shape() != (d, d) {
            return Err(Error::Shape(format!("idempotent {x} is not {d}x{d}")));
        }
        if !(e * e).approx_eq(e, tol) {
            return Err(Error::Multiplicity(format!("matrix {x} is not idempotent")));
        }
        for (y, f) in idempotents.iter().enumerate().skip(x + 1) {
            if !(e * f).approx_eq(&Matrix::zeros(d, d), tol) {
                return Err(Error::Multiplicity(format!("idempotents {x} and {y} are not orthogonal")));
            }
        }
        total = &total + e;
    }
    if !total.approx_eq(&Matrix::identity(d), tol) {
        return Err(Error::Multiplicity("idempotents do not sum to the identity".into()));
    }

    let mut n = Vec::with_capacity(grouping.num_groups());
    for g in 0..grouping.num_groups() {
        let coords = group_coords(poset, grouping, g);
        let p: Matrix<T> = coordinate_projector(d, &coords);
        let mut row = Vec::with_capacity(source_dims.len());
        let mut filled = 0;
        for (x, e) in idempotents.iter().enumerate() {
            if !(&p * e).approx_eq(&(e * &p), tol) {
                return Err(Error::Multiplicity(format!("idempotent {x} mixes group {g} with other groups")));
            }
            let r = (&(&p * e) * &p).rank(tol);
            let dx = source_dims[x];
            let copies = match (r, dx) {
                (0, _) => 0,
                (_, 0) => {
                    return Err(Error::Multiplicity(format!("zero-dimensional simple {x} has rank {r} in group {g}")));
                }
                _ if r % dx != 0 => {
                    return Err(Error::Multiplicity(format!("rank {r} in group {g} is not a multiple of dim {dx}")));
                }
                _ => r / dx,
            };
            filled += copies * dx;
            row.push(copies);
        }
        if filled != coords.len() {
            return Err(Error::Multiplicity(format!("group {g} has dimension {} but decomposes into {filled}", coords.len())));
        }
        n.push(row);
    }
    Ok(MultiplicityTable { n })
}

/// Central idempotents for a prescribed decomposition `n[g][x]`, written in a
/// random unitriangular basis of each group.
pub fn isotypic_idempotents(
    poset: &ComponentPoset,
    grouping: &Grouping,
    n: &[Vec<usize>],
    source_dims: &[usize],
    rng: &mut Rng,
) -> Result<Vec<Matrix<Rational>>> {
    let d = poset.total_dim();
    if n.len() != grouping.num_groups() {
        return Err(Error::Multiplicity(format!("table has {} rows for {} groups", n.len(), grouping.num_groups())));
    }
    let mut diag: Vec<Matrix<Rational>> = vec![Matrix::zeros(d, d); source_dims.len()];
    let mut s = Matrix::<Rational>::identity(d);
    for (g, row) in n.iter().enumerate() {
        let coords = group_coords(poset, grouping, g);
        if row.len() != source_dims.len() {
            return Err(Error::Multiplicity(format!("row {g} has {} entries", row.len())));
        }
        let need: usize = row.iter().zip(source_dims).map(|(k, dx)| k * dx).sum();
        if need != coords.len() {
            return Err(Error::Multiplicity(format!("group {g} has dimension {} but the table needs {need}", coords.len())));
        }
        let mut next = coords.iter();
        for (x, (&k, &dx)) in row.iter().zip(source_dims).enumerate() {
            for _ in 0..k * dx {
                let &i = next.next().expect("dimension checked");
                diag[x][(i, i)] = Rational::from_i64(1);
            }
        }
        for (a, &i) in coords.iter().enumerate() {
            for &j in &coords[a + 1..] {
                s[(i, j)] = rng.rational(3, 2);
            }
        }
    }
    let s_inv = s.inverse(0.0).expect("unitriangular");
    Ok(diag.iter().map(|e| &(&s * e) * &s_inv).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_stratum() {
        let p = ComponentPoset::chain(vec![1]);
        let e = vec![Matrix::<Rational>::identity(1)];
        let t = extract_multiplicities(&p, &Grouping::whole(1), &[1], &e, 0.0).unwrap();
        assert_eq!(t.n, vec![vec![1]]);
    }

    #[test]
    fn three_splits_as_one_plus_two() {
        let mut rng = Rng::seeded(21);
        let p = ComponentPoset::chain(vec![1, 2]);
        let g = Grouping::whole(2);
        let e = isotypic_idempotents(&p, &g, &[vec![1, 1]], &[1, 2], &mut rng).unwrap();
        assert!(!e[0].is_zero() && !e[1].is_zero());
        let t = extract_multiplicities(&p, &g, &[1, 2], &e, 0.0).unwrap();
        assert_eq!(t.n, vec![vec![1, 1]]);
        // same data in floating point
        let ef: Vec<Matrix<f64>> = e.iter().map(|m| m.map(|x| x.to_c64().re)).collect();
        assert_eq!(extract_multiplicities(&p, &g, &[1, 2], &ef, 1e-9).unwrap(), t);
    }

    #[test]
    fn zero_dimensional_group() {
        let p = ComponentPoset::antichain(vec![0, 2]);
        let g = Grouping::singletons(2);
        let mut rng = Rng::seeded(3);
        let e = isotypic_idempotents(&p, &g, &[vec![0, 0], vec![2, 0]], &[1, 3], &mut rng).unwrap();
        let t = extract_multiplicities(&p, &g, &[1, 3], &e, 0.0).unwrap();
        assert_eq!(t.n, vec![vec![0, 0], vec![2, 0]]);
    }

    #[test]
    fn inconsistent_data_is_rejected() {
        let p = ComponentPoset::chain(vec![2]);
        let g = Grouping::whole(1);
        let id = Matrix::<Rational>::identity(2);
        // rank 2 is not a multiple of 3
        assert!(matches!(extract_multiplicities(&p, &g, &[3], &[id.clone()], 0.0), Err(Error::Multiplicity(_))));
        // not summing to the identity
        let mut half = Matrix::<Rational>::zeros(2, 2);
        half[(0, 0)] = Rational::from_i64(1);
        assert!(extract_multiplicities(&p, &g, &[1], &[half], 0.0).is_err());
        let mut rng = Rng::seeded(0);
        assert!(isotypic_idempotents(&p, &g, &[vec![1]], &[1], &mut rng).is_err());
    }
}
