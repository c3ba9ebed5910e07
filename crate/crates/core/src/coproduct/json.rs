//! JSON formats for posets and classes.
//!
//! Poset: `{"dims": [..], "less": [[β, α], ..]}` or, instead of `less`,
//! `"components": [{"v1": [..], "v2": [..]}, ..]` to use the `v¹`-order.
//! Class: `{"blocks": [{"beta": β, "alpha": α, "entries": [[num, den], ..]}]}`
//! with entries row-major; omitted diagonal blocks are identities and
//! omitted off-diagonal blocks are zero.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::quiver::DimVector;
use crate::strata::FixedComponent;
use crate::Rational;

use super::triple::{triple_components, TriplePoset};
use super::{ComponentPoset, CorrClass, Grouping};

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct PosetJson {
    pub dims: Vec<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub less: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub components: Option<Vec<ComponentJson>>,
    /// Group index per component; defaults to one group per component.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub groups: Option<Vec<usize>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComponentJson {
    pub v1: DimVector,
    pub v2: DimVector,
}

fn parse_err(e: impl std::fmt::Display) -> Error {
    Error::Parse(e.to_string())
}

pub fn poset_from_json(s: &str) -> Result<(ComponentPoset, Grouping)> {
    let pj: PosetJson = serde_json::from_str(s).map_err(parse_err)?;
    let n = pj.dims.len();
    let poset = match &pj.components {
        Some(cs) => {
            let comps: Vec<FixedComponent> = cs
                .iter()
                .map(|c| FixedComponent { v1: c.v1.clone(), v2: c.v2.clone(), w1: DimVector::default(), w2: DimVector::default() })
                .collect();
            ComponentPoset::from_components(&comps, pj.dims.clone())?
        }
        None => {
            let less: Vec<(usize, usize)> = pj.less.iter().map(|&[b, a]| (b, a)).collect();
            ComponentPoset::new(pj.dims.clone(), &less)?
        }
    };
    let grouping = match pj.groups {
        Some(g) if g.len() != n => return Err(Error::Parse(format!("{} groups for {n} components", g.len()))),
        Some(g) => Grouping(g),
        None => Grouping::singletons(n),
    };
    Ok((poset, grouping))
}

/// Cover relations are enough; the reader closes them transitively.
pub fn poset_to_json(p: &ComponentPoset, grouping: Option<&Grouping>) -> Value {
    let less: Vec<[usize; 2]> = p
        .relations()
        .into_iter()
        .filter(|&(b, a)| !(0..p.len()).any(|c| p.lt(b, c) && p.lt(c, a)))
        .map(|(b, a)| [b, a])
        .collect();
    let pj = PosetJson { dims: p.dims().to_vec(), less, components: None, groups: grouping.map(|g| g.0.clone()) };
    serde_json::to_value(pj).expect("serializable")
}

#[derive(Deserialize)]
struct TripleJson {
    #[serde(default)]
    v: Option<DimVector>,
    #[serde(default)]
    triples: Option<Vec<[DimVector; 3]>>,
    #[serde(default)]
    dims: Option<Vec<usize>>,
}

/// `{"v": [..]}` (all triple decompositions) or `{"triples": [[v1, v2, v3], ..]}`,
/// optionally with `"dims"` (default 1 each).
pub fn triple_poset_from_json(s: &str) -> Result<TriplePoset> {
    let tj: TripleJson = serde_json::from_str(s).map_err(parse_err)?;
    let triples = match (tj.triples, tj.v) {
        (Some(t), _) => t,
        (None, Some(v)) => triple_components(&v),
        (None, None) => return Err(Error::Parse("triple poset needs `v` or `triples`".into())),
    };
    let dims = tj.dims.unwrap_or_else(|| vec![1; triples.len()]);
    TriplePoset::new(triples, dims)
}

fn parse_int(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n.as_i64().map(BigInt::from).ok_or_else(|| Error::Parse(format!("non-integer {n}"))),
        Value::String(s) => s.trim().parse().map_err(|_| Error::Parse(format!("bad integer `{s}`"))),
        other => Err(Error::Parse(format!("expected integer, got {other}"))),
    }
}

fn parse_rational(v: &Value) -> Result<Rational> {
    let (num, den) = match v {
        Value::Array(pair) if pair.len() == 2 => (parse_int(&pair[0])?, parse_int(&pair[1])?),
        Value::String(s) if s.contains('/') => {
            let (p, q) = s.split_once('/').expect("contains /");
            (parse_int(&Value::String(p.into()))?, parse_int(&Value::String(q.into()))?)
        }
        other => (parse_int(other)?, BigInt::from(1)),
    };
    if den.is_zero() {
        return Err(Error::Parse("zero denominator".into()));
    }
    Ok(Rational::new(num, den))
}

fn int_json(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(n) => json!(n),
        None => json!(x.to_string()),
    }
}

pub fn rational_json(x: &Rational) -> Value {
    json!([int_json(x.numer()), int_json(x.denom())])
}

#[derive(Deserialize)]
struct BlockJson {
    beta: usize,
    alpha: usize,
    entries: Vec<Value>,
}

#[derive(Deserialize)]
struct ClassJson {
    #[serde(default)]
    blocks: Vec<BlockJson>,
}

pub fn class_from_json(poset: &ComponentPoset, s: &str) -> Result<CorrClass<Rational>> {
    CorrClass::new(poset.clone(), class_matrix_from_json(poset, s)?)
}

/// The block matrix of a class file without the support and diagonal checks.
pub fn class_matrix_from_json(poset: &ComponentPoset, s: &str) -> Result<Matrix<Rational>> {
    let cj: ClassJson = serde_json::from_str(s).map_err(parse_err)?;
    let mut m = Matrix::identity(poset.total_dim());
    for b in cj.blocks {
        if b.beta >= poset.len() || b.alpha >= poset.len() {
            return Err(Error::Parse(format!("block ({}, {}) outside the poset", b.beta, b.alpha)));
        }
        let (rows, cols) = (poset.dims()[b.beta], poset.dims()[b.alpha]);
        if b.entries.len() != rows * cols {
            return Err(Error::Parse(format!("block ({}, {}) needs {} entries, got {}", b.beta, b.alpha, rows * cols, b.entries.len())));
        }
        let data = b.entries.iter().map(parse_rational).collect::<Result<Vec<_>>>()?;
        poset.set_block(&mut m, b.beta, b.alpha, &Matrix::from_vec(rows, cols, data));
    }
    Ok(m)
}

/// Diagonal blocks always, off-diagonal blocks when nonzero.
pub fn class_to_json(c: &CorrClass<Rational>) -> Value {
    let p = c.poset();
    let mut blocks = Vec::new();
    for b in 0..p.len() {
        for a in 0..p.len() {
            let blk = c.block(b, a);
            if a == b || !blk.is_zero() {
                let entries: Vec<Value> = blk.entries().iter().map(rational_json).collect();
                blocks.push(json!({"beta": b, "alpha": a, "entries": entries}));
            }
        }
    }
    json!({ "blocks": blocks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coproduct::{random_class, random_poset};
    use crate::random::Rng;

    #[test]
    fn poset_round_trip() {
        let mut rng = Rng::seeded(1);
        let p = random_poset(5, 3, 0.5, &mut rng);
        let g = Grouping(vec![0, 0, 1, 1, 2]);
        let s = poset_to_json(&p, Some(&g)).to_string();
        let (q, h) = poset_from_json(&s).unwrap();
        assert_eq!((p, g), (q, h));
    }

    #[test]
    fn components_give_v1_order() {
        let s = r#"{"dims": [1, 1, 1], "components": [
            {"v1": [0], "v2": [2]}, {"v1": [1], "v2": [1]}, {"v1": [2], "v2": [0]}]}"#;
        let (p, g) = poset_from_json(s).unwrap();
        assert!(p.lt(0, 2) && p.lt(0, 1) && !p.le(2, 1));
        assert_eq!(g, Grouping::singletons(3));
    }

    #[test]
    fn class_round_trip_and_defaults() {
        let mut rng = Rng::seeded(2);
        let p = random_poset(4, 2, 0.7, &mut rng);
        let c = random_class(&p, 1.0, 7, 5, &mut rng);
        let back = class_from_json(&p, &class_to_json(&c).to_string()).unwrap();
        assert_eq!(back, c);
        assert!(class_from_json(&p, "{}").unwrap().matrix().is_identity());
    }

    #[test]
    fn entry_formats() {
        let p = ComponentPoset::chain(vec![1, 1]);
        let s = r#"{"blocks": [{"beta": 0, "alpha": 1, "entries": ["-3/4"]}]}"#;
        let c = class_from_json(&p, s).unwrap();
        assert_eq!(c.block(0, 1)[(0, 0)], crate::scalar::ratio(-3, 4));
        let s = r#"{"blocks": [{"beta": 0, "alpha": 1, "entries": [["123456789012345678901234567890", 7]]}]}"#;
        assert!(class_from_json(&p, s).is_ok());
        assert!(class_from_json(&p, r#"{"blocks": [{"beta": 0, "alpha": 1, "entries": [[1, 0]]}]}"#).is_err());
        assert!(class_from_json(&p, r#"{"blocks": [{"beta": 0, "alpha": 1, "entries": []}]}"#).is_err());
    }

    #[test]
    fn triple_json() {
        let tp = triple_poset_from_json(r#"{"v": [1]}"#).unwrap();
        assert_eq!((tp.len(), tp.dims.clone()), (3, vec![1, 1, 1]));
        assert!(triple_poset_from_json("{}").is_err());
    }
}
