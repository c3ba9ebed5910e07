//! Brute-force reference computations, written independently of the main
//! algorithms and used to cross-check them.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::matrix::Matrix;
use crate::quiver::{DimVector, Quiver};
use crate::representation::{FramingSplit, Membership, Rep};
use crate::roots::RootKind;
use crate::scalar::Scalar;

/// Positive roots `≤ bound` from the Weyl group: every group element (as an
/// integer matrix, found by breadth-first search over words of length at
/// most `max_len`) is applied to the loop-free simple roots; imaginary roots
/// are the positive multiples of `delta` (if given) and, at vertices with
/// loops, of the coordinate vector.
pub fn weyl_orbit_roots(q: &Quiver, bound: &DimVector, delta: Option<&DimVector>, max_len: usize) -> BTreeMap<DimVector, RootKind> {
    let n = q.num_vertices();
    let c = q.cartan_matrix();
    let gens: Vec<usize> = (0..n).filter(|&i| q.is_loop_free(i)).collect();
    // s_i as a matrix acting on column vectors: s_i(v) = v - (Cv)_i e_i
    let reflection = |i: usize| -> Vec<Vec<i64>> {
        (0..n).map(|r| (0..n).map(|col| i64::from(r == col) - if r == i { c.entry(i, col) } else { 0 }).collect()).collect()
    };
    let mul = |x: &Vec<Vec<i64>>, y: &Vec<Vec<i64>>| -> Vec<Vec<i64>> {
        (0..n).map(|r| (0..n).map(|col| (0..n).map(|k| x[r][k] * y[k][col]).sum()).collect()).collect()
    };
    let identity: Vec<Vec<i64>> = (0..n).map(|r| (0..n).map(|col| i64::from(r == col)).collect()).collect();
    let mut seen = BTreeSet::from([identity.clone()]);
    let mut queue = VecDeque::from([(identity, 0usize)]);
    let mut out = BTreeMap::new();
    while let Some((g, len)) = queue.pop_front() {
        for &i in &gens {
            let col: Vec<i64> = (0..n).map(|r| g[r][i]).collect();
            let root = DimVector(col);
            if root.is_nonnegative() && root.le(bound) {
                out.insert(root, RootKind::Real);
            }
        }
        if len == max_len {
            continue;
        }
        for &i in &gens {
            let h = mul(&g, &reflection(i));
            if seen.insert(h.clone()) {
                queue.push_back((h, len + 1));
            }
        }
    }
    let mut imaginary = Vec::new();
    if let Some(d) = delta {
        imaginary.push(d.clone());
    }
    for i in (0..n).filter(|&i| !q.is_loop_free(i)) {
        imaginary.push(DimVector::unit(n, i));
    }
    for d in imaginary {
        let mut k = 1;
        while d.scaled(k).le(bound) {
            out.entry(d.scaled(k)).or_insert(RootKind::Imaginary);
            k += 1;
        }
    }
    out
}

/// Roots of a finite or affine quiver from the Tits form: positive vectors
/// with connected support and `q(x) = 1` (real) or `q(x) = 0` (imaginary),
/// found by scanning the whole box.
pub fn quadratic_form_roots(q: &Quiver, bound: &DimVector) -> BTreeMap<DimVector, RootKind> {
    let c = q.cartan_matrix();
    let mut out = BTreeMap::new();
    for x in bound.box_below() {
        if x.is_zero() || !q.support_connected(&x) {
            continue;
        }
        let twice_q = x.dot(&c.apply(&x));
        match twice_q {
            2 => {
                out.insert(x, RootKind::Real);
            }
            0 => {
                out.insert(x, RootKind::Imaginary);
            }
            _ => {}
        }
    }
    out
}

/// Membership by enumerating every path of length `<= cap` and inspecting
/// the hub blocks `b B⋯B a` directly. Zero tests are exact, so inputs must
/// be exactly representable through all products (dyadic entries suffice).
pub fn path_membership<T: Scalar>(r: &Rep<T>, split: &FramingSplit, cap: usize) -> Membership {
    let q = r.quiver();
    let vs = r.v().as_usize();
    let w1 = split.w1.as_usize();
    let (mut t0, mut tilde, mut minus) = (true, true, true);
    for start in 0..q.num_vertices() {
        let mut stack = vec![(start, 0usize, Matrix::<T>::identity(vs[start]))];
        while let Some((end, len, prod)) = stack.pop() {
            if prod.is_zero() {
                continue;
            }
            let hub = &(&r.b[end] * &prod) * &r.a[start];
            for row in 0..hub.rows() {
                for col in 0..hub.cols() {
                    if hub[(row, col)].is_zero() {
                        continue;
                    }
                    let into_w1 = row < w1[end];
                    let from_w1 = col < w1[start];
                    match (into_w1, from_w1) {
                        // W² → W¹ blows up as t → 0
                        (true, false) => {
                            t0 = false;
                            tilde = false;
                        }
                        // W¹ → W² blows up as t → ∞
                        (false, true) => minus = false,
                        _ => tilde = false,
                    }
                }
            }
            if !(t0 || tilde || minus) {
                break;
            }
            if len < cap {
                for h in q.arrows_from(end) {
                    stack.push((q.target(h), len + 1, &r.arrows[h] * &prod));
                }
            }
        }
    }
    Membership { in_t0: t0, in_t0_tilde: tilde, in_t0_minus: minus }
}

/// Partition numbers by Euler's pentagonal recurrence.
pub fn partition_numbers(max: usize) -> Vec<u64> {
    let mut p = vec![0i64; max + 1];
    p[0] = 1;
    for n in 1..=max {
        let mut k = 1i64;
        loop {
            let g1 = (k * (3 * k - 1) / 2) as usize;
            if g1 > n {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            p[n] += sign * p[n - g1];
            let g2 = (k * (3 * k + 1) / 2) as usize;
            if g2 <= n {
                p[n] += sign * p[n - g2];
            }
            k += 1;
        }
    }
    p.into_iter().map(|x| x as u64).collect()
}

/// `V(a) ⊗ V(b) = ⊕_{k=0}^{min(a,b)} V(a+b-2k)` for `sl_2`.
pub fn clebsch_gordan(a: i64, b: i64, c: i64) -> u64 {
    u64::from(c >= (a - b).abs() && c <= a + b && (a + b - c) % 2 == 0)
}

type Poly = BTreeMap<Vec<i64>, i64>;

/// Schur polynomial `s_λ(x_1..x_n)` as a sum over semistandard tableaux.
fn schur(shape: &[i64], n: usize) -> Poly {
    let cells: Vec<(usize, usize)> =
        shape.iter().enumerate().flat_map(|(r, &len)| (0..len as usize).map(move |c| (r, c))).collect();
    let mut fill: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut out = Poly::new();
    fn go(k: usize, cells: &[(usize, usize)], n: usize, fill: &mut BTreeMap<(usize, usize), usize>, out: &mut Poly) {
        if k == cells.len() {
            let mut mono = vec![0i64; n];
            for &x in fill.values() {
                mono[x] += 1;
            }
            *out.entry(mono).or_insert(0) += 1;
            return;
        }
        let (r, c) = cells[k];
        let lo_row = if c > 0 { fill[&(r, c - 1)] } else { 0 };
        let lo_col = if r > 0 { fill[&(r - 1, c)] + 1 } else { 0 };
        for x in lo_row.max(lo_col)..n {
            fill.insert((r, c), x);
            go(k + 1, cells, n, fill, out);
        }
        fill.remove(&(r, c));
    }
    go(0, &cells, n, &mut fill, &mut out);
    out
}

/// Fundamental-weight coordinates of `sl_n` to a partition with `n` parts
/// (last part zero).
fn to_partition(weight: &[i64]) -> Vec<i64> {
    let n = weight.len() + 1;
    let mut parts = vec![0i64; n];
    for i in (0..n - 1).rev() {
        parts[i] = parts[i + 1] + weight[i];
    }
    parts
}

/// Tensor product multiplicities for `sl_n` (`n = weight length + 1`) via
/// `a_{λ+ρ} · s_μ = Σ_ν c_ν a_{ν+ρ}`: the coefficient of `x^{ν+ρ}` with
/// strictly decreasing exponents is the multiplicity of `V(ν)`.
pub fn sl_n_tensor(lambda: &[i64], mu: &[i64]) -> BTreeMap<Vec<i64>, u64> {
    let n = lambda.len() + 1;
    let lam = to_partition(lambda);
    let s_mu = schur(&to_partition(mu), n);
    let rho: Vec<i64> = (0..n as i64).rev().collect();
    // antisymmetrization over permutations of the exponent vector λ + ρ
    let base: Vec<i64> = lam.iter().zip(&rho).map(|(a, b)| a + b).collect();
    let mut product = Poly::new();
    for (perm, sign) in permutations(n) {
        for (mono, coeff) in &s_mu {
            let e: Vec<i64> = (0..n).map(|i| base[perm[i]] + mono[i]).collect();
            *product.entry(e).or_insert(0) += sign * coeff;
        }
    }
    let mut out = BTreeMap::new();
    for (e, coeff) in product {
        if coeff != 0 && e.windows(2).all(|w| w[0] > w[1]) {
            let nu: Vec<i64> = e.iter().zip(&rho).map(|(a, b)| a - b).collect();
            let weight: Vec<i64> = nu.windows(2).map(|w| w[0] - w[1]).collect();
            assert!(coeff > 0, "negative tensor coefficient");
            out.insert(weight, coeff as u64);
        }
    }
    out
}

fn permutations(n: usize) -> Vec<(Vec<usize>, i64)> {
    if n == 0 {
        return vec![(Vec::new(), 1)];
    }
    let mut out = Vec::new();
    for (p, s) in permutations(n - 1) {
        // insert n-1 at every position; moving it left past k entries flips sign k times
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            let flips = (p.len() - pos) as i64;
            out.push((q, if flips % 2 == 0 { s } else { -s }));
        }
    }
    out
}
