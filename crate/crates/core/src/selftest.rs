//! End-to-end checks of the library against the reference computations in
//! [`crate::oracle`]. Each check reports pass/fail, a one-line summary and
//! its running time against a budget; [`Effort`] scales the sample sizes.

use std::collections::BTreeMap;
use std::fmt;
use std::time::{Duration, Instant};

use num_complex::Complex64;

use crate::coproduct::{
    coassoc_check, diagonal_family, random_class, random_element, random_poset, random_quadruple, Grouping, TriplePoset,
};
use crate::matrix::Matrix;
use crate::oracle::{clebsch_gordan, partition_numbers, path_membership, quadratic_form_roots, sl_n_tensor, weyl_orbit_roots};
use crate::quiver::{DimVector, Quiver};
use crate::random::{random_attracting_rep, random_dyadic_rep, random_gauge, random_rep, Rng};
use crate::representation::{
    default_cap, invariant_record, limit_invariants, membership, newton_solve_moment, numeric_dimension, records_equal,
    FramingSplit, Rep, SolverOptions, DEFAULT_TOL,
};
use crate::roots::enumerate_roots;
use crate::scalar::{ratio, Scalar};
use crate::strata::{attracting_rank, fixed_components, sigma_fiber_count, strata_of_fixed_locus, strata_of_m0};
use crate::tensor_ade::{multiplicity_n, RootData, Weight};
use crate::{GaussianRational, Rational};

#[derive(Clone, Debug)]
pub struct CheckReport {
    pub id: u8,
    pub name: &'static str,
    pub ok: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub budget: Duration,
}

impl CheckReport {
    /// Correct and within the time budget.
    pub fn passed(&self) -> bool {
        self.ok && self.elapsed <= self.budget
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} [{}] {}: {} ({:.2}s, budget {}s)",
            if self.passed() { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.detail,
            self.elapsed.as_secs_f64(),
            self.budget.as_secs()
        )
    }
}

/// Sample sizes for the randomized checks.
#[derive(Clone, Copy, Debug)]
pub struct Effort {
    pub membership_reps: usize,
    pub limit_reps: usize,
    pub classes: usize,
    pub quadruples: usize,
    pub seed: u64,
}

impl Effort {
    pub fn full(seed: u64) -> Self {
        Effort { membership_reps: 1000, limit_reps: 100, classes: 500, quadruples: 200, seed }
    }

    pub fn quick(seed: u64) -> Self {
        Effort { membership_reps: 100, limit_reps: 20, classes: 50, quadruples: 40, seed }
    }
}

fn timed(id: u8, name: &'static str, budget_secs: u64, f: impl FnOnce() -> (bool, String)) -> CheckReport {
    let start = Instant::now();
    let (ok, detail) = f();
    CheckReport { id, name, ok, detail, elapsed: start.elapsed(), budget: Duration::from_secs(budget_secs) }
}

fn dv(x: &[i64]) -> DimVector {
    DimVector(x.to_vec())
}

fn gr(p: i64, q: i64) -> GaussianRational {
    GaussianRational::new(ratio(p, q), Rational::from_i64(0))
}

/// A one-dimensional `W = 0` summand of the Jordan quiver at `(x, y)`.
fn jordan_point(x: GaussianRational, y: GaussianRational, w: i64) -> Rep<GaussianRational> {
    let q = Quiver::jordan();
    let mut r = Rep::zero(&q, &dv(&[1]), &dv(&[w])).expect("valid dims");
    r.arrows[0] = Matrix::from_vec(1, 1, vec![x]);
    r.arrows[1] = Matrix::from_vec(1, 1, vec![y]);
    r
}

pub fn sigma_collision() -> CheckReport {
    timed(1, "Jordan sigma collision", 1, || {
        let p = jordan_point(gr(1, 2), gr(-3, 1), 1);
        let q = jordan_point(gr(2, 1), gr(5, 3), 1);
        let (s, _) = Rep::direct_sum(&p, &q).expect("same quiver");
        let (t, _) = Rep::direct_sum(&q, &p).expect("same quiver");
        let cap = default_cap(s.v());
        let swapped = records_equal(&invariant_record(&s, cap), &invariant_record(&t, cap), 0.0).unwrap_or(false);
        // control: moving one point separates the records
        let moved = jordan_point(gr(2, 1), gr(5, 2), 1);
        let (u, _) = Rep::direct_sum(&p, &moved).expect("same quiver");
        let separated = !records_equal(&invariant_record(&s, cap), &invariant_record(&u, cap), 0.0).unwrap_or(true);

        let strata = strata_of_fixed_locus(&Quiver::jordan(), &dv(&[2]), &dv(&[1]), &dv(&[1])).expect("affine");
        let counts: Vec<(Vec<u32>, u64)> =
            strata.iter().filter(|t| t.lambda[0].iter().sum::<u32>() == 2).map(|t| (t.lambda[0].clone(), sigma_fiber_count(t))).collect();
        let two = counts.iter().filter(|(l, _)| l == &vec![2]).all(|(_, c)| *c == 2) && counts.iter().any(|(l, _)| l == &vec![2]);
        let ok = swapped && separated && two;
        (ok, format!("swap gives equal records: {swapped}; moved point separated: {separated}; sigma fibers over |λ|=2: {counts:?}"))
    })
}

pub fn root_enumeration() -> CheckReport {
    timed(2, "root enumeration vs Weyl-orbit oracle", 5, || {
        let cases: [(&str, Quiver, Option<DimVector>); 4] = [
            ("A2", Quiver::type_a(2), None),
            ("A3", Quiver::type_a(3), None),
            ("D4", Quiver::type_d(4), None),
            ("affine A1", Quiver::affine_a1(), Some(dv(&[1, 1]))),
        ];
        let mut ok = true;
        let mut sizes = Vec::new();
        for (name, q, delta) in cases {
            let bound = DimVector(vec![3; q.num_vertices()]);
            let mine = match enumerate_roots(&q, &bound) {
                Ok(r) => r.roots,
                Err(e) => return (false, format!("{name}: {e}")),
            };
            let orbit = weyl_orbit_roots(&q, &bound, delta.as_ref(), 4 * bound.total() as usize + 4);
            let form = quadratic_form_roots(&q, &bound);
            ok &= mine == orbit && mine == form;
            sizes.push(format!("{name}: {}", mine.len()));
        }
        (ok, format!("exact set equality with both oracles; root counts {}", sizes.join(", ")))
    })
}

/// Random data with `Σv ≤ 4` on the given quiver.
fn random_dims(q: &Quiver, rng: &mut Rng) -> (DimVector, FramingSplit) {
    let n = q.num_vertices();
    let total = rng.range(1, 4);
    let mut v = vec![0i64; n];
    for _ in 0..total {
        v[rng.below(n)] += 1;
    }
    let w1: Vec<i64> = (0..n).map(|_| rng.range(0, 1)).collect();
    let mut w2: Vec<i64> = (0..n).map(|_| rng.range(0, 1)).collect();
    if w1.iter().chain(&w2).all(|&x| x == 0) {
        w2[rng.below(n)] = 1;
    }
    (DimVector(v), FramingSplit { w1: DimVector(w1), w2: DimVector(w2) })
}

fn test_quivers() -> [Quiver; 3] {
    [Quiver::jordan(), Quiver::type_a(2), Quiver::affine_a1()]
}

pub fn membership_equivalence(effort: &Effort) -> CheckReport {
    timed(3, "membership: saturation vs path enumeration", 60, || {
        let mut rng = Rng::seeded(effort.seed ^ 0x3333);
        let quivers = test_quivers();
        let mut disagreements = 0;
        let mut counts = [0usize; 3];
        for k in 0..effort.membership_reps {
            let q = &quivers[k % 3];
            let (v, split) = random_dims(q, &mut rng);
            let zero_prob = [0.3, 0.5, 0.7][rng.below(3)];
            let r = if rng.chance(0.5) {
                random_attracting_rep(q, &v, &split, zero_prob, &mut rng)
            } else {
                random_dyadic_rep(q, &v, &split.w(), zero_prob, &mut rng)
            };
            let Ok(sat) = membership(&r, &split, DEFAULT_TOL) else {
                disagreements += 1;
                continue;
            };
            let paths = path_membership(&r, &split, default_cap(&v));
            if sat != paths {
                disagreements += 1;
            }
            counts[0] += usize::from(sat.in_t0);
            counts[1] += usize::from(sat.in_t0_tilde);
            counts[2] += usize::from(sat.in_t0_minus);
        }
        let ok = disagreements == 0 && effort.membership_reps > 0;
        (
            ok,
            format!(
                "{} reps, {disagreements} disagreements (in T0: {}, in T0~: {}, in T0-: {})",
                effort.membership_reps, counts[0], counts[1], counts[2]
            ),
        )
    })
}

/// Rescales so that `‖B_h‖ ≤ 1/2` and `‖a_i‖, ‖b_i‖ ≤ 7/10`: every hub and
/// trace entry is then below 1 in absolute value.
fn normalize(r: &mut Rep<Complex64>) {
    let fit = |ms: &mut Vec<Matrix<Complex64>>, target: f64| {
        let m = ms.iter().map(Matrix::frobenius_norm).fold(0.0, f64::max);
        if m > 0.0 {
            let s = Complex64::new(target / m, 0.0);
            for x in ms.iter_mut() {
                *x = x.scale(&s);
            }
        }
    };
    fit(&mut r.arrows, 0.5);
    fit(&mut r.a, 0.7);
    fit(&mut r.b, 0.7);
}

pub fn limit_consistency(effort: &Effort) -> CheckReport {
    timed(4, "limit invariants", 30, || {
        let mut rng = Rng::seeded(effort.seed ^ 0x4444);
        let quivers = test_quivers();
        let t = Complex64::new(1e-6, 0.0);
        let mut worst: f64 = 0.0;
        let mut failures = 0;
        let mut first_error = None;
        for k in 0..effort.limit_reps {
            let q = &quivers[k % 3];
            let (v, split) = random_dims(q, &mut rng);
            let base = random_attracting_rep(q, &v, &split, 0.3, &mut rng);
            let g = random_gauge(&v, &mut rng);
            let Ok(mut r) = base.gauge_act(&g, DEFAULT_TOL) else {
                failures += 1;
                continue;
            };
            normalize(&mut r);
            let cap = default_cap(&v);
            let (limit, moved) = match (limit_invariants(&r, &split, cap, DEFAULT_TOL), r.lambda_act(&t, &split)) {
                (Ok(l), Ok(m)) => (l, m),
                (Err(e), _) | (_, Err(e)) => {
                    failures += 1;
                    first_error.get_or_insert(format!("{e} (quiver {k}, v = {v})"));
                    continue;
                }
            };
            let err = invariant_record(&moved, cap).max_difference(&limit) / limit.scale().max(1.0);
            worst = worst.max(err);
        }
        let ok = failures == 0 && worst < 1e-6 && effort.limit_reps > 0;
        let mut detail = format!("{} reps in T0 at t = 1e-6: worst error {worst:.3e}, {failures} failures", effort.limit_reps);
        if let Some(e) = first_error {
            detail.push_str(&format!(" (first: {e})"));
        }
        (ok, detail)
    })
}

pub fn exact_coproduct(effort: &Effort) -> CheckReport {
    timed(5, "exact coproduct algebra", 30, || {
        let mut rng = Rng::seeded(effort.seed ^ 0x5555);
        let mut failures = 0;
        for _ in 0..effort.classes {
            let n = 1 + rng.below(6);
            let density = [0.3, 0.6, 1.0][rng.below(3)];
            let p = random_poset(n, 3, density, &mut rng);
            let c = random_class(&p, 0.8, 5, 1 + rng.range(0, 3), &mut rng);
            let d = p.total_dim();
            let Ok(inv) = c.invert() else {
                failures += 1;
                continue;
            };
            let two_sided = (inv.matrix() * c.matrix()).is_identity() && (c.matrix() * inv.matrix()).is_identity();
            let grouping = Grouping::whole(n);
            let a = random_element(&p, &grouping, 4, 3, &mut rng);
            let b = random_element(&p, &grouping, 4, 3, &mut rng);
            let unital = c.delta_c_matrix(&Matrix::identity(d)).map(|m| m.is_identity()).unwrap_or(false);
            let multiplicative = match (c.delta_c_matrix(&(a.matrix() * b.matrix())), c.delta_c(&a), c.delta_c(&b)) {
                (Ok(ab), Ok(da), Ok(db)) => ab == &da * &db,
                _ => false,
            };
            let involutive = inv.invert().map(|x| x == c).unwrap_or(false);
            if !(two_sided && unital && multiplicative && involutive && c.validate() && c.splitting_check()) {
                failures += 1;
            }
        }
        (failures == 0 && effort.classes > 0, format!("{} random classes, {failures} failures (zero tolerance)", effort.classes))
    })
}

pub fn coassociativity(effort: &Effort) -> CheckReport {
    timed(6, "coassociativity criterion", 10, || {
        let mut rng = Rng::seeded(effort.seed ^ 0x6666);
        let shapes = [dv(&[1]), dv(&[2]), dv(&[3]), dv(&[1, 1])];
        let mut family_ok = true;
        for v in &shapes {
            for d in 1..=2 {
                let tp = TriplePoset::uniform(v, d);
                for _ in 0..5 {
                    let [a, b, c, e] = diagonal_family(&tp, 5, 2, &mut rng);
                    family_ok &= coassoc_check(&tp, &a, &b, &c, &e).unwrap_or(false);
                }
            }
        }
        let mut failed = 0;
        for k in 0..effort.quadruples {
            let tp = TriplePoset::uniform(&shapes[1 + k % 3], 1 + k % 2);
            let [a, b, c, e] = random_quadruple(&tp, 5, 2, &mut rng);
            if !coassoc_check(&tp, &a, &b, &c, &e).unwrap_or(true) {
                failed += 1;
            }
        }
        let frac = failed as f64 / effort.quadruples.max(1) as f64;
        (
            family_ok && frac >= 0.95 && effort.quadruples > 0,
            format!("diagonal families pass: {family_ok}; random quadruples failing: {failed}/{} ({:.1}%)", effort.quadruples, 100.0 * frac),
        )
    })
}

pub fn tensor_multiplicities() -> CheckReport {
    timed(7, "tensor multiplicities", 30, || {
        let a1 = Quiver::type_a(1);
        let mut a1_cases = 0;
        let mut mismatches = 0;
        for w1 in 0..=6 {
            for w2 in 0..=6 {
                let w = dv(&[w1 + w2]);
                for v1 in 0..=w1 / 2 {
                    for v2 in 0..=w2 / 2 {
                        for v0 in 0..=(w1 + w2) / 2 {
                            let got = multiplicity_n(&a1, &dv(&[v1]), &dv(&[w1]), &dv(&[v2]), &dv(&[w2]), &dv(&[v0]), &w);
                            let expected = clebsch_gordan(w1 - 2 * v1, w2 - 2 * v2, w1 + w2 - 2 * v0);
                            a1_cases += 1;
                            if got != Ok(expected) {
                                mismatches += 1;
                            }
                        }
                    }
                }
            }
        }
        let data = RootData::new(&Quiver::type_a(2)).expect("finite");
        let mut a2_pairs = 0;
        for l in 0..9 {
            for m in 0..9 {
                let (lambda, mu) = (vec![l / 3, l % 3], vec![m / 3, m % 3]);
                let mine = data.tensor_decompose(&Weight(lambda.clone()), &Weight(mu.clone()));
                let oracle: BTreeMap<Weight, u64> = sl_n_tensor(&lambda, &mu).into_iter().map(|(k, v)| (Weight(k), v)).collect();
                a2_pairs += 1;
                if mine != Ok(oracle) {
                    mismatches += 1;
                }
            }
        }
        let eight = data.tensor_decompose(&Weight(vec![1, 1]), &Weight(vec![1, 1])).unwrap_or_default();
        let eight_ok = [(vec![2, 2], 1), (vec![3, 0], 1), (vec![0, 3], 1), (vec![1, 1], 2), (vec![0, 0], 1)]
            .into_iter()
            .all(|(w, k)| eight.get(&Weight(w)) == Some(&k))
            && eight.len() == 5;
        (
            mismatches == 0 && eight_ok,
            format!("{a1_cases} A1 cases vs Clebsch-Gordan, {a2_pairs} A2 pairs vs Schur oracle, {mismatches} mismatches; 8⊗8 = 27+10+10'+2·8+1: {eight_ok}"),
        )
    })
}

/// Dimension of `M(v, w)` read off numerically at a stable solution of
/// `μ = 0`; `None` when no stable solution was found.
pub fn numeric_variety_dim(q: &Quiver, v: &DimVector, w: &DimVector, rng: &mut Rng, attempts: usize) -> Option<i64> {
    if v.is_zero() {
        return Some(0);
    }
    let opts = SolverOptions { tol: 1e-11, ..SolverOptions::default() };
    for _ in 0..attempts {
        let start = random_rep(q, v, w, rng);
        if let Ok(sol) = newton_solve_moment(&start, &opts) {
            if sol.is_stable(1e-7) {
                return Some(numeric_dimension(&sol, DEFAULT_TOL));
            }
        }
    }
    None
}

pub fn dimension_bookkeeping(effort: &Effort) -> CheckReport {
    timed(8, "attracting rank vs numeric codimension", 60, || {
        let mut rng = Rng::seeded(effort.seed ^ 0x8888);
        let cases: Vec<(Quiver, DimVector, DimVector, DimVector)> = vec![
            (Quiver::jordan(), dv(&[1]), dv(&[1]), dv(&[1])),
            (Quiver::jordan(), dv(&[2]), dv(&[1]), dv(&[1])),
            (Quiver::type_a(1), dv(&[1]), dv(&[1]), dv(&[1])),
            (Quiver::type_a(2), dv(&[1, 1]), dv(&[1, 0]), dv(&[0, 1])),
            (Quiver::type_a(2), dv(&[1, 1]), dv(&[1, 1]), dv(&[0, 0])),
        ];
        let mut compared = 0;
        let mut skipped = 0;
        let mut mismatches = Vec::new();
        let mut cache: BTreeMap<(usize, DimVector, DimVector), Option<i64>> = BTreeMap::new();
        for (k, (q, v, w1, w2)) in cases.iter().enumerate() {
            let Ok(components) = fixed_components(q, v, w1, w2) else {
                mismatches.push(format!("case {k}: no components"));
                continue;
            };
            for c in components {
                let mut dim = |vv: &DimVector, ww: &DimVector| -> Option<i64> {
                    *cache.entry((k, vv.clone(), ww.clone())).or_insert_with(|| numeric_variety_dim(q, vv, ww, &mut rng, 30))
                };
                let (Some(total), Some(d1), Some(d2)) = (dim(v, &(w1 + w2)), dim(&c.v1, w1), dim(&c.v2, w2)) else {
                    skipped += 1;
                    continue;
                };
                compared += 1;
                match attracting_rank(q, &c) {
                    Ok(rank) if 2 * rank == total - d1 - d2 => {}
                    other => mismatches.push(format!("case {k} v1={} v2={}: {other:?} vs codim {}", c.v1, c.v2, total - d1 - d2)),
                }
            }
        }
        (
            mismatches.is_empty() && compared >= 8,
            format!("{compared} components compared, {skipped} with an empty factor skipped, mismatches: {mismatches:?}"),
        )
    })
}

pub fn stratification_counts() -> CheckReport {
    timed(9, "Jordan stratification counts", 1, || {
        let p = partition_numbers(4);
        let q = Quiver::jordan();
        let mut counts = Vec::new();
        let mut ok = true;
        for v in 0..=4 {
            let n = strata_of_m0(&q, &dv(&[v]), &dv(&[1])).map(|s| s.len() as u64).unwrap_or(0);
            let expected: u64 = p[..=v as usize].iter().sum();
            ok &= n == expected;
            counts.push(format!("v={v}: {n}/{expected}"));
        }
        (ok, counts.join(", "))
    })
}

pub fn run_all(effort: &Effort) -> Vec<CheckReport> {
    vec![
        sigma_collision(),
        root_enumeration(),
        membership_equivalence(effort),
        limit_consistency(effort),
        exact_coproduct(effort),
        coassociativity(effort),
        tensor_multiplicities(),
        dimension_bookkeeping(effort),
        stratification_counts(),
    ]
}
