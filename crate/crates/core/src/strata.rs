//! Stratifications of the affine quotient and of its fixed locus, the
//! fixed-point components with their partial order, and dimension counts.
//!
//! Strata are indexed by a free part `v⁰` and one partition per imaginary
//! generator `δ` (affine type only). Simple roots carry no partition data:
//! their symmetric products are points, so those factors are collapsed and
//! the leftover `v - v⁰ - |λ|δ` only has to be supported on loop-free
//! vertices. No nonemptiness filtering is attempted.

use std::cmp::Ordering;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quiver::{DimVector, Quiver};
use crate::roots::{classify_type, TypeClass};

/// Nonincreasing positive parts.
pub type Partition = Vec<u32>;

/// All partitions of `n`, largest first part first: `(n), (n-1,1), ...`.
pub fn partitions(n: u32) -> Vec<Partition> {
    fn go(n: u32, max: u32, prefix: &mut Partition, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for k in (1..=n.min(max)).rev() {
            prefix.push(k);
            go(n - k, k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

pub fn partition_size(p: &[u32]) -> u32 {
    p.iter().sum()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FixedComponent {
    pub v1: DimVector,
    pub v2: DimVector,
    pub w1: DimVector,
    pub w2: DimVector,
}

impl FixedComponent {
    pub fn v(&self) -> DimVector {
        &self.v1 + &self.v2
    }

    pub fn w(&self) -> DimVector {
        &self.w1 + &self.w2
    }

    /// The component with the two factors exchanged.
    pub fn swapped(&self) -> FixedComponent {
        FixedComponent { v1: self.v2.clone(), v2: self.v1.clone(), w1: self.w2.clone(), w2: self.w1.clone() }
    }
}

fn check_nonnegative(v: &DimVector) -> Result<()> {
    if v.is_nonnegative() {
        Ok(())
    } else {
        Err(Error::Dimension(format!("{v} has negative entries")))
    }
}

fn check_data(q: &Quiver, vs: &[&DimVector]) -> Result<()> {
    for v in vs {
        q.check_dims(v)?;
        check_nonnegative(v)?;
    }
    Ok(())
}

/// Every decomposition `v = v¹ + v²`, listed with `v¹` decreasing
/// lexicographically (so `v¹ = v` comes first and `v¹ = 0` last).
pub fn fixed_components(q: &Quiver, v: &DimVector, w1: &DimVector, w2: &DimVector) -> Result<Vec<FixedComponent>> {
    check_data(q, &[v, w1, w2])?;
    Ok(v.box_below()
        .into_iter()
        .rev()
        .map(|v1| FixedComponent { v2: v - &v1, v1, w1: w1.clone(), w2: w2.clone() })
        .collect())
}

/// `α ≤ β` iff `v¹(α) ≤ v¹(β)` componentwise; `None` when incomparable.
pub fn compare(alpha: &FixedComponent, beta: &FixedComponent) -> Result<Option<Ordering>> {
    if alpha.v() != beta.v() || alpha.w1 != beta.w1 || alpha.w2 != beta.w2 {
        return Err(Error::Dimension("components live over different (v, w¹, w²)".into()));
    }
    let (a, b) = (&alpha.v1, &beta.v1);
    Ok(match (a.le(b), b.le(a)) {
        (true, true) => Some(Ordering::Equal),
        (true, false) => Some(Ordering::Less),
        (false, true) => Some(Ordering::Greater),
        (false, false) => None,
    })
}

/// Sorts by `v¹` lexicographically, which refines the componentwise order.
pub fn linear_extension(components: &[FixedComponent]) -> Result<Vec<FixedComponent>> {
    if let Some(first) = components.first() {
        for c in components {
            compare(first, c)?;
        }
    }
    let mut out = components.to_vec();
    out.sort_by(|a, b| a.v1.cmp(&b.v1));
    Ok(out)
}

/// `dim M(v, w) = 2 v·w - vᵀCv`.
pub fn quiver_variety_dim(q: &Quiver, v: &DimVector, w: &DimVector) -> Result<i64> {
    q.check_dims(v)?;
    q.check_dims(w)?;
    let c = q.cartan_matrix();
    Ok(2 * v.dot(w) - v.dot(&c.apply(v)))
}

fn require_tame(q: &Quiver) -> Result<TypeClass> {
    match classify_type(q)? {
        TypeClass::Indefinite => Err(Error::UnsupportedType("only finite and affine quivers are supported".into())),
        t => Ok(t),
    }
}

/// Codimension of `M(v¹,w¹) × M(v²,w²)` in `M(v,w)`.
pub fn component_codim(q: &Quiver, alpha: &FixedComponent) -> Result<i64> {
    require_tame(q)?;
    check_data(q, &[&alpha.v1, &alpha.v2, &alpha.w1, &alpha.w2])?;
    Ok(quiver_variety_dim(q, &alpha.v(), &alpha.w())?
        - quiver_variety_dim(q, &alpha.v1, &alpha.w1)?
        - quiver_variety_dim(q, &alpha.v2, &alpha.w2)?)
}

/// Rank of the attracting bundle over `M_α`: half the codimension.
pub fn attracting_rank(q: &Quiver, alpha: &FixedComponent) -> Result<i64> {
    let codim = component_codim(q, alpha)?;
    if codim < 0 || codim % 2 != 0 {
        return Err(Error::Dimension(format!("codimension {codim} of component is not a nonnegative even number")));
    }
    Ok(codim / 2)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct StratumIndex {
    pub v0: DimVector,
    /// One partition per imaginary generator (empty in finite type).
    pub lambda: Vec<Partition>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FixedStratumIndex {
    pub v1: DimVector,
    pub v2: DimVector,
    pub lambda: Vec<Partition>,
}

/// The imaginary generators carrying partition data.
pub fn imaginary_generators(q: &Quiver) -> Result<Vec<DimVector>> {
    Ok(match require_tame(q)? {
        TypeClass::Affine { delta } => vec![delta],
        _ => Vec::new(),
    })
}

/// Whether `r >= 0` is supported on loop-free vertices (a sum of simple roots).
fn collapsible(q: &Quiver, r: &DimVector) -> bool {
    r.0.iter().enumerate().all(|(i, &x)| x >= 0 && (x == 0 || q.is_loop_free(i)))
}

/// `(m, rest, λ)`: total partition size, `v - m δ`, and the partitions.
fn imaginary_parts(q: &Quiver, v: &DimVector) -> Result<Vec<(DimVector, Vec<Partition>)>> {
    let gens = imaginary_generators(q)?;
    let mut out = vec![(v.clone(), Vec::new())];
    for delta in &gens {
        let mut next = Vec::new();
        for (rest, lambda) in out {
            let mut m = 0u32;
            loop {
                let left = &rest - &delta.scaled(m as i64);
                if !left.is_nonnegative() {
                    break;
                }
                for p in partitions(m) {
                    let mut l = lambda.clone();
                    l.push(p);
                    next.push((left.clone(), l));
                }
                m += 1;
            }
        }
        out = next;
    }
    Ok(out)
}

/// Strata `(v⁰, λ)` of `M₀(v, w)`.
pub fn strata_of_m0(q: &Quiver, v: &DimVector, w: &DimVector) -> Result<Vec<StratumIndex>> {
    check_data(q, &[v, w])?;
    let mut out = Vec::new();
    for (rest, lambda) in imaginary_parts(q, v)? {
        for v0 in rest.box_below() {
            if collapsible(q, &(&rest - &v0)) {
                out.push(StratumIndex { v0, lambda: lambda.clone() });
            }
        }
    }
    Ok(out)
}

/// Strata `(¹v, ²v, λ)` of the fixed locus `M₀(v, w)^{C*}` for `w = w¹ ⊕ w²`.
pub fn strata_of_fixed_locus(q: &Quiver, v: &DimVector, w1: &DimVector, w2: &DimVector) -> Result<Vec<FixedStratumIndex>> {
    check_data(q, &[v, w1, w2])?;
    let mut out = Vec::new();
    for (rest, lambda) in imaginary_parts(q, v)? {
        for v1 in rest.box_below().into_iter().rev() {
            let after = &rest - &v1;
            for v2 in after.box_below().into_iter().rev() {
                if collapsible(q, &(&after - &v2)) {
                    out.push(FixedStratumIndex { v1: v1.clone(), v2, lambda: lambda.clone() });
                }
            }
        }
    }
    Ok(out)
}

/// Ordered splittings of the parts of every `λ_k` between the two factors,
/// parts counted as distinguishable: `∏ 2^{#parts(λ_k)}`.
pub fn sigma_fiber_count(t: &FixedStratumIndex) -> u64 {
    t.lambda.iter().map(|p| 1u64 << p.len()).product()
}

/// Hasse diagram of the component order in DOT format.
pub fn poset_dot(components: &[FixedComponent]) -> Result<String> {
    let mut s = String::from("digraph components {\n  rankdir=BT;\n");
    for (k, c) in components.iter().enumerate() {
        let _ = writeln!(s, "  n{k} [label=\"v1={} v2={}\"];", c.v1, c.v2);
    }
    for (i, a) in components.iter().enumerate() {
        for (j, b) in components.iter().enumerate() {
            if compare(a, b)? != Some(Ordering::Less) {
                continue;
            }
            let covered = components.iter().any(|c| {
                matches!(compare(a, c), Ok(Some(Ordering::Less))) && matches!(compare(c, b), Ok(Some(Ordering::Less)))
            });
            if !covered {
                let _ = writeln!(s, "  n{i} -> n{j};");
            }
        }
    }
    s.push_str("}\n");
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dv(v: &[i64]) -> DimVector {
        DimVector(v.to_vec())
    }

    fn comp(v1: &[i64], v2: &[i64], w1: &[i64], w2: &[i64]) -> FixedComponent {
        FixedComponent { v1: dv(v1), v2: dv(v2), w1: dv(w1), w2: dv(w2) }
    }

    #[test]
    fn partition_lists() {
        assert_eq!(partitions(0), vec![Vec::<u32>::new()]);
        assert_eq!(partitions(3), vec![vec![3], vec![2, 1], vec![1, 1, 1]]);
        let counts: Vec<usize> = (0..8).map(|n| partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15]);
    }

    #[test]
    fn fixed_component_examples() {
        let j = Quiver::jordan();
        let cs = fixed_components(&j, &dv(&[1]), &dv(&[1]), &dv(&[1])).unwrap();
        let pairs: Vec<_> = cs.iter().map(|c| (c.v1.clone(), c.v2.clone())).collect();
        assert_eq!(pairs, vec![(dv(&[1]), dv(&[0])), (dv(&[0]), dv(&[1]))]);
        assert_eq!(fixed_components(&j, &dv(&[2]), &dv(&[1]), &dv(&[1])).unwrap().len(), 3);
        let a2 = Quiver::type_a(2);
        assert_eq!(fixed_components(&a2, &dv(&[1, 1]), &dv(&[1, 0]), &dv(&[0, 1])).unwrap().len(), 4);
        assert!(fixed_components(&j, &dv(&[-1]), &dv(&[1]), &dv(&[1])).is_err());
    }

    #[test]
    fn order_examples() {
        let a = comp(&[0], &[2], &[1], &[1]);
        let b = comp(&[1], &[1], &[1], &[1]);
        assert_eq!(compare(&a, &b).unwrap(), Some(Ordering::Less));
        assert_eq!(compare(&b, &a).unwrap(), Some(Ordering::Greater));
        assert_eq!(compare(&a, &a).unwrap(), Some(Ordering::Equal));
        assert!(compare(&a, &comp(&[0], &[3], &[1], &[1])).is_err());

        let x = comp(&[1, 0], &[0, 1], &[1, 1], &[0, 0]);
        let y = comp(&[0, 1], &[1, 0], &[1, 1], &[0, 0]);
        assert_eq!(compare(&x, &y).unwrap(), None);
        assert_eq!(linear_extension(&[x.clone(), y.clone()]).unwrap(), vec![y, x]);
    }

    #[test]
    fn linear_extension_respects_order() {
        let q = Quiver::type_a(3);
        let cs = fixed_components(&q, &dv(&[1, 2, 1]), &dv(&[1, 0, 0]), &dv(&[0, 0, 1])).unwrap();
        let ext = linear_extension(&cs).unwrap();
        for (i, a) in ext.iter().enumerate() {
            for b in &ext[..i] {
                assert_ne!(compare(a, b).unwrap(), Some(Ordering::Less));
            }
        }
    }

    #[test]
    fn attracting_rank_examples() {
        let j = Quiver::jordan();
        assert_eq!(quiver_variety_dim(&j, &dv(&[2]), &dv(&[2])).unwrap(), 8);
        assert_eq!(attracting_rank(&j, &comp(&[1], &[1], &[1], &[1])).unwrap(), 2);
        assert_eq!(attracting_rank(&j, &comp(&[2], &[0], &[2], &[0])).unwrap(), 0);
        let a1 = Quiver::type_a(1);
        assert_eq!(attracting_rank(&a1, &comp(&[1], &[0], &[1], &[1])).unwrap(), 1);
        // 2 vertices, triple edge: indefinite
        let wild = Quiver::from_edges(2, &[(0, 1), (0, 1), (0, 1)]);
        assert!(matches!(attracting_rank(&wild, &comp(&[0, 0], &[0, 0], &[1, 0], &[0, 0])), Err(Error::UnsupportedType(_))));
    }

    #[test]
    fn swapped_components_share_codimension() {
        let q = Quiver::affine_a1();
        for c in fixed_components(&q, &dv(&[2, 1]), &dv(&[1, 0]), &dv(&[1, 1])).unwrap() {
            let codim = component_codim(&q, &c).unwrap();
            assert_eq!(codim, component_codim(&q, &c.swapped()).unwrap());
            if let (Ok(r), Ok(rbar)) = (attracting_rank(&q, &c), attracting_rank(&q, &c.swapped())) {
                assert_eq!(r + rbar, codim);
            }
        }
    }

    #[test]
    fn m0_strata_examples() {
        let a1 = Quiver::type_a(1);
        let s = strata_of_m0(&a1, &dv(&[2]), &dv(&[2])).unwrap();
        assert_eq!(s, (0..3).map(|k| StratumIndex { v0: dv(&[k]), lambda: vec![] }).collect::<Vec<_>>());

        let j = Quiver::jordan();
        let s = strata_of_m0(&j, &dv(&[2]), &dv(&[1])).unwrap();
        let expected = vec![
            StratumIndex { v0: dv(&[2]), lambda: vec![vec![]] },
            StratumIndex { v0: dv(&[1]), lambda: vec![vec![1]] },
            StratumIndex { v0: dv(&[0]), lambda: vec![vec![2]] },
            StratumIndex { v0: dv(&[0]), lambda: vec![vec![1, 1]] },
        ];
        assert_eq!(s, expected);
        assert_eq!(strata_of_m0(&j, &dv(&[0]), &dv(&[1])).unwrap().len(), 1);
        assert_eq!(strata_of_m0(&a1, &dv(&[0]), &dv(&[1])).unwrap().len(), 1);
    }

    #[test]
    fn affine_a1_strata_cover_all_free_parts() {
        let q = Quiver::affine_a1();
        let s = strata_of_m0(&q, &dv(&[2, 1]), &dv(&[1, 0])).unwrap();
        // |λ| = 0: every v⁰ ≤ (2,1); |λ| = 1: every v⁰ ≤ (1,0)
        assert_eq!(s.len(), 6 + 2);
        for t in &s {
            let m = partition_size(&t.lambda[0]) as i64;
            assert!((&t.v0 + &dv(&[m, m])).le(&dv(&[2, 1])));
        }
    }

    #[test]
    fn fixed_locus_strata() {
        let j = Quiver::jordan();
        let s = strata_of_fixed_locus(&j, &dv(&[2]), &dv(&[1]), &dv(&[1])).unwrap();
        assert_eq!(s.len(), 7);
        let by_size = |m: u32| s.iter().filter(|t| partition_size(&t.lambda[0]) == m).count();
        assert_eq!((by_size(0), by_size(1), by_size(2)), (3, 2, 2));
        assert_eq!(strata_of_fixed_locus(&j, &dv(&[0]), &dv(&[1]), &dv(&[1])).unwrap().len(), 1);

        // finite type: pairs of strata with ¹v + ²v ≤ v
        let a2 = Quiver::type_a(2);
        let v = dv(&[1, 1]);
        let s = strata_of_fixed_locus(&a2, &v, &dv(&[1, 0]), &dv(&[0, 1])).unwrap();
        let m0 = strata_of_m0(&a2, &v, &dv(&[1, 1])).unwrap();
        let pairs = m0.iter().flat_map(|x| m0.iter().map(move |y| (x, y))).filter(|(x, y)| (&x.v0 + &y.v0).le(&v)).count();
        assert_eq!(s.len(), pairs);
        assert!(s.iter().all(|t| t.lambda.is_empty()));
    }

    #[test]
    fn sigma_counts() {
        let t = |lambda: Vec<Partition>| FixedStratumIndex { v1: dv(&[0]), v2: dv(&[0]), lambda };
        assert_eq!(sigma_fiber_count(&t(vec![])), 1);
        assert_eq!(sigma_fiber_count(&t(vec![vec![]])), 1);
        assert_eq!(sigma_fiber_count(&t(vec![vec![1, 1]])), 4);
        assert_eq!(sigma_fiber_count(&t(vec![vec![2]])), 2);
    }

    #[test]
    fn dot_output_has_cover_edges() {
        let j = Quiver::jordan();
        let cs = linear_extension(&fixed_components(&j, &dv(&[2]), &dv(&[1]), &dv(&[1])).unwrap()).unwrap();
        let dot = poset_dot(&cs).unwrap();
        assert!(dot.starts_with("digraph"));
        assert_eq!(dot.matches("->").count(), 2);
    }
}
