use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use quivar_core::coproduct::{
    class_from_json, class_matrix_from_json, class_to_json, coassoc_check, diagonal_family, poset_from_json,
    random_quadruple, triple_poset_from_json, ComponentPoset, CorrClass, TriplePattern, TriplePoset,
};
use quivar_core::random::{random_rep, Rng};
use quivar_core::representation::{
    default_cap, limit_invariants, matrix_json, membership, newton_solve_moment, numeric_dimension, rep_from_json,
    rep_to_json, InvariantRecord, SolverOptions,
};
use quivar_core::roots::{classify_type, enumerate_roots};
use quivar_core::selftest::{run_all, Effort};
use quivar_core::strata::{
    attracting_rank, component_codim, fixed_components, poset_dot, sigma_fiber_count, strata_of_fixed_locus,
    strata_of_m0,
};
use quivar_core::tensor_ade::{multiplicity_n, RootData};
use quivar_core::{
    Complex64, DimVector, FramingSplit, GaussianRational, Matrix, Quiver, Rational, Rep, Scalar, Weight,
};

use crate::io::{dim_arg, load_quiver, parse_list, read_file, resolve_tol, CliResult, Failure};
use crate::output::{render, Format};
use crate::{CoassocArgs, Cli, Command, CoproductOp, RepArgs, SplitDims};

pub fn dispatch(cli: &Cli) -> CliResult<String> {
    let g = &cli.global;
    let tol = resolve_tol(g.tol)?;
    let quiver = || load_quiver(g.quiver.as_deref());
    if g.format == Format::Dot && !matches!(cli.command, Command::Poset(_)) {
        return Err(Failure::usage("--format dot is only available for `poset`"));
    }
    let value = match &cli.command {
        Command::Type => serde_json::to_value(classify_type(&quiver()?)?).expect("serializable"),
        Command::Roots { bound } => {
            let q = quiver()?;
            let roots = enumerate_roots(&q, &dim_arg(&q, bound, "bound")?)?;
            let list: Vec<Value> = roots.roots.iter().map(|(r, k)| json!({"root": r, "kind": k})).collect();
            json!({"count": list.len(), "roots": list})
        }
        Command::Strata { v, w } => {
            let q = quiver()?;
            let strata = strata_of_m0(&q, &dim_arg(&q, v, "v")?, &dim_arg(&q, w, "w")?)?;
            json!({"count": strata.len(), "strata": strata})
        }
        Command::Fixed(d) => fixed(&quiver()?, d)?,
        Command::Poset(d) => {
            let q = quiver()?;
            let comps = components(&q, d)?;
            if g.format == Format::Dot {
                return Ok(poset_dot(&comps)?);
            }
            let poset = ComponentPoset::from_components(&comps, vec![1; comps.len()])?;
            let mut out = quivar_core::coproduct::poset_to_json(&poset, None);
            out["components"] = comps.iter().map(|c| json!({"v1": c.v1, "v2": c.v2})).collect();
            out
        }
        Command::SigmaFibers(d) => {
            let q = quiver()?;
            let (v, w1, w2) = split_dims(&q, d)?;
            let strata = strata_of_fixed_locus(&q, &v, &w1, &w2)?;
            let rows: Vec<Value> = strata
                .iter()
                .map(|t| json!({"v1": t.v1, "v2": t.v2, "lambda": t.lambda, "fibers": sigma_fiber_count(t)}))
                .collect();
            json!({"count": rows.len(), "strata": rows})
        }
        Command::Mu(args) => {
            let (r, _) = load_rep(&quiver()?, args)?;
            if g.exact {
                let mu = exact(&r)?.moment_map();
                let zero = mu.iter().all(Matrix::is_zero);
                json!({"exact": true, "zero": zero, "mu": per_vertex(r.quiver(), mu.iter().map(exact_matrix_json))})
            } else {
                let mu = r.moment_map();
                let residual = mu.iter().map(|m| m.frobenius_norm().powi(2)).sum::<f64>().sqrt();
                json!({"residual": residual, "mu": per_vertex(r.quiver(), mu.iter().map(matrix_json))})
            }
        }
        Command::Stable(args) => {
            let (r, _) = load_rep(&quiver()?, args)?;
            let stable = if g.exact { exact(&r)?.is_stable(0.0) } else { r.is_stable(tol) };
            json!({ "stable": stable })
        }
        Command::Member(args) => {
            let (r, split) = load_rep(&quiver()?, args)?;
            let split = require_split(split)?;
            let m = if g.exact { membership(&exact(&r)?, &split, 0.0)? } else { membership(&r, &split, tol)? };
            serde_json::to_value(m).expect("serializable")
        }
        Command::Limit(args) => {
            let (r, split) = load_rep(&quiver()?, args)?;
            let split = require_split(split)?;
            let cap = g.cap.unwrap_or_else(|| default_cap(r.v()));
            if g.exact {
                record_json(r.quiver(), &limit_invariants(&exact(&r)?, &split, cap, 0.0)?, exact_matrix_json, exact_entry)
            } else {
                record_json(r.quiver(), &limit_invariants(&r, &split, cap, tol)?, matrix_json, |z| json!([z.re, z.im]))
            }
        }
        Command::Solve { rep, v, w, max_iter, attempts } => solve(&quiver()?, g.seed, tol, rep, v, w, *max_iter, *attempts)?,
        Command::Coproduct { op } => match op {
            CoproductOp::Invert { poset, class } => {
                let (p, _) = poset_from_json(&read_file(poset)?)?;
                let c = class_from_json(&p, &read_file(class)?)?;
                class_to_json(&c.invert()?)
            }
            CoproductOp::Check { poset, class } => {
                let (p, _) = poset_from_json(&read_file(poset)?)?;
                let m = class_matrix_from_json(&p, &read_file(class)?)?;
                match CorrClass::new(p, m) {
                    Ok(c) => json!({"valid": c.validate(), "splitting": c.splitting_check()}),
                    Err(e) => json!({"valid": false, "reason": e.to_string()}),
                }
            }
            CoproductOp::Coassoc(args) => coassoc(args, g.seed)?,
        },
        Command::Coassoc(args) => coassoc(args, g.seed)?,
        Command::Tensor { kind, lhs, rhs } => {
            let q = load_quiver(Some(kind))?;
            let data = RootData::new(&q)?;
            let (l, r) = (Weight(parse_list(lhs)?), Weight(parse_list(rhs)?));
            if l.0.len() != data.rank() || r.0.len() != data.rank() {
                return Err(Failure::usage(format!("weights for {kind} need {} coordinates", data.rank())));
            }
            let parts = data.tensor_decompose(&l, &r)?;
            let mut rows = Vec::new();
            let mut total = 0;
            for (nu, k) in &parts {
                let d = data.dimension(nu)?;
                total += k * d;
                rows.push(json!({"weight": nu, "multiplicity": k, "dimension": d}));
            }
            let expected = data.dimension(&l)? * data.dimension(&r)?;
            json!({"type": kind, "lhs": l, "rhs": r, "components": rows, "dimension": expected, "dimension_check": total == expected})
        }
        Command::TensorN { v1, w1, v2, w2, v0 } => {
            let q = quiver()?;
            let (v1, w1, v2, w2, v0) = (
                dim_arg(&q, v1, "v1")?,
                dim_arg(&q, w1, "w1")?,
                dim_arg(&q, v2, "v2")?,
                dim_arg(&q, w2, "w2")?,
                dim_arg(&q, v0, "v0")?,
            );
            let w = &w1 + &w2;
            json!({"n": multiplicity_n(&q, &v1, &w1, &v2, &w2, &v0, &w)?})
        }
        Command::Selftest { quick } => {
            let effort = if *quick { Effort::quick(g.seed) } else { Effort::full(g.seed) };
            let reports = run_all(&effort);
            for r in &reports {
                eprintln!("{r}");
            }
            let rows: Vec<Value> = reports
                .iter()
                .map(|r| json!({"id": r.id, "name": r.name, "passed": r.passed(), "detail": r.detail}))
                .collect();
            let out = render(&Value::Array(rows), g.format);
            if reports.iter().all(|r| r.passed()) {
                return Ok(out);
            }
            print!("{out}");
            return Err(Failure::computation("selftest failed"));
        }
    };
    Ok(render(&value, g.format))
}

fn split_dims(q: &Quiver, d: &SplitDims) -> CliResult<(DimVector, DimVector, DimVector)> {
    Ok((dim_arg(q, &d.v, "v")?, dim_arg(q, &d.w1, "w1")?, dim_arg(q, &d.w2, "w2")?))
}

fn components(q: &Quiver, d: &SplitDims) -> CliResult<Vec<quivar_core::FixedComponent>> {
    let (v, w1, w2) = split_dims(q, d)?;
    Ok(fixed_components(q, &v, &w1, &w2)?)
}

fn fixed(q: &Quiver, d: &SplitDims) -> CliResult<Value> {
    let mut rows = Vec::new();
    for c in components(q, d)? {
        let codim = component_codim(q, &c)?;
        // an odd or negative codimension means one factor is empty
        let rank = attracting_rank(q, &c).ok();
        rows.push(json!({"v1": c.v1, "v2": c.v2, "codim": codim, "attracting_rank": rank}));
    }
    Ok(json!({"count": rows.len(), "components": rows}))
}

fn load_rep(q: &Quiver, args: &RepArgs) -> CliResult<(Rep<Complex64>, Option<FramingSplit>)> {
    let (r, split) = rep_from_json(q, &read_file(&args.rep)?)?;
    let split = match &args.w1 {
        Some(w1) => Some(FramingSplit::new(r.w(), &dim_arg(q, w1, "w1")?)?),
        None => split,
    };
    Ok((r, split))
}

fn require_split(split: Option<FramingSplit>) -> CliResult<FramingSplit> {
    split.ok_or_else(|| Failure::usage("needs a framing split: a `split` entry in the file or --w1"))
}

/// Entries of a float representation converted exactly.
fn exact(r: &Rep<Complex64>) -> CliResult<Rep<GaussianRational>> {
    if r.arrows.iter().chain(&r.a).chain(&r.b).flat_map(|m| m.entries()).any(|z| !(z.re.is_finite() && z.im.is_finite())) {
        return Err(Failure::usage("non-finite matrix entry"));
    }
    Ok(r.map(|z| GaussianRational::from_c64(*z).expect("finite")))
}

fn rational_string(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

fn exact_entry(z: &GaussianRational) -> Value {
    json!([rational_string(&z.re), rational_string(&z.im)])
}

fn exact_matrix_json(m: &Matrix<GaussianRational>) -> Value {
    Value::Array((0..m.rows()).map(|i| Value::Array(m.row(i).iter().map(exact_entry).collect())).collect())
}

fn per_vertex(q: &Quiver, ms: impl Iterator<Item = Value>) -> Value {
    Value::Object(q.vertex_labels().iter().cloned().zip(ms).collect())
}

fn record_json<T: Scalar>(
    q: &Quiver,
    rec: &InvariantRecord<T>,
    matrix: impl Fn(&Matrix<T>) -> Value,
    entry: impl Fn(&T) -> Value,
) -> Value {
    let traces: Vec<Value> = rec.traces.iter().map(|(word, x)| json!({"word": word, "trace": entry(x)})).collect();
    let hubs: Vec<Value> = rec
        .hubs
        .iter()
        .filter(|(_, m)| !m.is_zero())
        .map(|(k, m)| json!({"start": q.vertex_labels()[k.start], "word": k.word, "hub": matrix(m)}))
        .collect();
    json!({"cap": rec.cap, "traces": traces, "nonzero_hubs": hubs})
}

#[allow(clippy::too_many_arguments)]
fn solve(
    q: &Quiver,
    seed: u64,
    tol: f64,
    rep: &Option<String>,
    v: &Option<String>,
    w: &Option<String>,
    max_iter: usize,
    attempts: usize,
) -> CliResult<Value> {
    let opts = SolverOptions { tol, max_iter, ..SolverOptions::default() };
    let mut rng = Rng::seeded(seed);
    let mut last_err = None;
    for attempt in 0..attempts.max(1) {
        let start = match (rep, v, w) {
            (Some(path), _, _) => rep_from_json(q, &read_file(path)?)?.0,
            (None, Some(v), Some(w)) => random_rep(q, &dim_arg(q, v, "v")?, &dim_arg(q, w, "w")?, &mut rng),
            _ => return Err(Failure::usage("solve needs --rep, or --v and --w for a random start")),
        };
        match newton_solve_moment(&start, &opts) {
            Ok(sol) => {
                let stable = sol.is_stable(tol.max(1e-7));
                if !stable && rep.is_none() && attempt + 1 < attempts {
                    continue;
                }
                let residual = sol.moment_map().iter().map(|m| m.frobenius_norm().powi(2)).sum::<f64>().sqrt();
                let mut out = json!({"attempt": attempt, "residual": residual, "stable": stable, "rep": rep_to_json(&sol, None)});
                if stable {
                    out["dimension"] = json!(numeric_dimension(&sol, quivar_core::representation::DEFAULT_TOL));
                }
                return Ok(out);
            }
            Err(e) => {
                eprintln!("attempt {attempt}: {e}");
                last_err = Some(e);
                if rep.is_some() {
                    break;
                }
            }
        }
    }
    Err(last_err.map(Failure::from).unwrap_or_else(|| Failure::computation("no solution")))
}

fn triple_poset(args: &CoassocArgs) -> CliResult<TriplePoset> {
    match (&args.triples, &args.v) {
        (Some(path), _) => Ok(triple_poset_from_json(&read_file(path)?)?),
        (None, Some(v)) => {
            let v = DimVector(parse_list(v)?);
            if !v.is_nonnegative() {
                return Err(Failure::usage("--v must be nonnegative"));
            }
            Ok(TriplePoset::uniform(&v, 1))
        }
        (None, None) => Err(Failure::usage("coassoc needs --triples or --v")),
    }
}

fn coassoc(args: &CoassocArgs, seed: u64) -> CliResult<Value> {
    let tp = triple_poset(args)?;
    let classes: [CorrClass<Rational>; 4] = match (&args.classes, args.generate.as_deref()) {
        (Some(path), None) => {
            let root: Map<String, Value> = serde_json::from_str(&read_file(path)?)
                .map_err(|e| Failure::usage(format!("classes file: {e}")))?;
            let mut out = Vec::new();
            for pattern in TriplePattern::ALL {
                let c = root
                    .get(pattern.name())
                    .ok_or_else(|| Failure::usage(format!("classes file lacks `{}`", pattern.name())))?;
                out.push(class_from_json(&tp.poset(pattern), &c.to_string())?);
            }
            out.try_into().expect("four patterns")
        }
        (None, Some(kind)) => {
            let mut rng = Rng::seeded(seed);
            if kind == "diagonal" {
                diagonal_family(&tp, 5, 2, &mut rng)
            } else {
                random_quadruple(&tp, 5, 2, &mut rng)
            }
        }
        _ => return Err(Failure::usage("give exactly one of --classes and --generate")),
    };
    let [a, b, c, d] = &classes;
    let holds = coassoc_check(&tp, a, b, c, d)?;
    let mut out = json!({"triples": tp.len(), "coassociative": holds});
    if args.generate.is_some() {
        let named: BTreeMap<&str, Value> =
            TriplePattern::ALL.iter().zip(&classes).map(|(p, c)| (p.name(), class_to_json(c))).collect();
        out["classes"] = json!(named);
    }
    Ok(out)
}
