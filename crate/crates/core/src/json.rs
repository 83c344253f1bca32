//! JSON reading and writing for maps, actions, tables and point lists.
//! Rationals travel as `"p/q"` strings; errors carry a path like
//! `generators[1].point[3]`.

use serde_json::{json, Map, Value};

use crate::action::{GroupAction, Word};
use crate::circle::{parse_rational, CirclePoint, Rational};
use crate::cocycle::HomCochain2;
use crate::error::{Error, Result};
use crate::homeo::CircleHomeo;
use crate::monotone::Table;
use crate::pl::{Kind, Knot, Pl, PlLift};
use crate::sullivan::NondegCochain2;

pub fn parse_value(text: &str) -> Result<Value> {
    serde_json::from_str(text)
        .map_err(|e| Error::parse(format!("line {} column {}", e.line(), e.column()), e.to_string()))
}

fn join(path: &str, key: &str) -> String {
    if path.is_empty() {
        key.to_string()
    } else {
        format!("{path}.{key}")
    }
}

fn object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| Error::parse(loc(path), "expected an object"))
}

fn loc(path: &str) -> String {
    if path.is_empty() {
        "<root>".into()
    } else {
        path.to_string()
    }
}

fn array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| Error::parse(loc(path), "expected an array"))
}

fn reject_unknown(obj: &Map<String, Value>, allowed: &[&str], path: &str) -> Result<()> {
    match obj.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(Error::parse(join(path, k), "unknown field")),
        None => Ok(()),
    }
}

pub fn rational_value(v: &Value, path: &str) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s).map_err(|e| Error::parse(loc(path), e.to_string())),
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(Rational::from_integer(i.into())),
            None => Err(Error::parse(loc(path), "numbers must be integers; write fractions as \"p/q\"")),
        },
        _ => Err(Error::parse(loc(path), "expected a rational string")),
    }
}

fn rational_list(obj: &Map<String, Value>, key: &str, path: &str) -> Result<Vec<Rational>> {
    let p = join(path, key);
    let v = obj
        .get(key)
        .ok_or_else(|| Error::parse(p.clone(), "missing field"))?;
    array(v, &p)?
        .iter()
        .enumerate()
        .map(|(i, x)| rational_value(x, &format!("{p}[{i}]")))
        .collect()
}

fn strs(xs: impl IntoIterator<Item = Rational>) -> Value {
    Value::Array(xs.into_iter().map(|x| Value::String(x.to_string())).collect())
}

pub fn map_from_value(v: &Value, path: &str) -> Result<PlLift> {
    let obj = object(v, path)?;
    reject_unknown(obj, &["kind", "breakpoints", "left", "point", "right"], path)?;
    let kind = match obj.get("kind").and_then(Value::as_str) {
        Some("strict") => Kind::Strict,
        Some("monotone") => Kind::Monotone,
        Some(other) => {
            return Err(Error::parse(join(path, "kind"), format!("unknown kind {other:?}")));
        }
        None => return Err(Error::parse(join(path, "kind"), "missing or not a string")),
    };
    let at = rational_list(obj, "breakpoints", path)?;
    let point = rational_list(obj, "point", path)?;
    let n = at.len();
    if n == 0 {
        return Err(Error::parse(join(path, "breakpoints"), "at least one breakpoint is needed"));
    }
    let side = |key: &str| -> Result<Vec<Rational>> {
        match (kind, obj.contains_key(key)) {
            (_, true) => rational_list(obj, key, path),
            (Kind::Strict, false) => Ok(point.clone()),
            (Kind::Monotone, false) => Err(Error::parse(join(path, key), "missing field")),
        }
    };
    let left = side("left")?;
    let right = side("right")?;
    for (key, len) in [("point", point.len()), ("left", left.len()), ("right", right.len())] {
        if len != n {
            return Err(Error::parse(
                join(path, key),
                format!("has {len} entries but there are {n} breakpoints"),
            ));
        }
    }
    let knots = (0..n)
        .map(|i| Knot {
            at: at[i].clone(),
            left: left[i].clone(),
            point: point[i].clone(),
            right: right[i].clone(),
        })
        .collect();
    let pl = Pl::from_sorted_knots(knots, 1).map_err(|e| Error::parse(join(path, "breakpoints"), e.to_string()))?;
    let lift = match kind {
        Kind::Strict => PlLift::strict(pl),
        Kind::Monotone => PlLift::monotone(pl),
    };
    lift.map_err(|e| Error::Validation(format!("{}: {e}", loc(path))))
}

pub fn map_to_value(f: &PlLift) -> Value {
    let knots = f.pl().knots();
    let mut obj = Map::new();
    let strict = f.kind() == Kind::Strict;
    obj.insert("kind".into(), json!(if strict { "strict" } else { "monotone" }));
    obj.insert("breakpoints".into(), strs(knots.iter().map(|k| k.at.clone())));
    if !strict {
        obj.insert("left".into(), strs(knots.iter().map(|k| k.left.clone())));
    }
    obj.insert("point".into(), strs(knots.iter().map(|k| k.point.clone())));
    if !strict {
        obj.insert("right".into(), strs(knots.iter().map(|k| k.right.clone())));
    }
    Value::Object(obj)
}

pub fn parse_map(text: &str) -> Result<PlLift> {
    map_from_value(&parse_value(text)?, "")
}

fn words(v: &Value, path: &str) -> Result<Vec<Word>> {
    array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, w)| {
            let p = format!("{path}[{i}]");
            array(w, &p)?
                .iter()
                .enumerate()
                .map(|(j, a)| {
                    a.as_i64()
                        .and_then(|a| i32::try_from(a).ok())
                        .ok_or_else(|| Error::parse(format!("{p}[{j}]"), "expected a generator index"))
                })
                .collect()
        })
        .collect()
}

pub fn action_from_value(v: &Value, path: &str) -> Result<GroupAction> {
    let obj = object(v, path)?;
    reject_unknown(obj, &["generators", "lifts", "relations"], path)?;
    let gp = join(path, "generators");
    let gens_v = array(obj.get("generators").ok_or_else(|| Error::parse(gp.clone(), "missing field"))?, &gp)?;
    let mut generators = Vec::with_capacity(gens_v.len());
    for (i, g) in gens_v.iter().enumerate() {
        let p = format!("{gp}[{i}]");
        let lift = map_from_value(g, &p)?;
        if lift.kind() != Kind::Strict {
            return Err(Error::parse(join(&p, "kind"), "generators must be strict"));
        }
        generators.push(CircleHomeo::from_lift(&lift)?);
    }
    let lifts = match obj.get("lifts") {
        None | Some(Value::Null) => None,
        Some(l) => {
            let lp = join(path, "lifts");
            let ls = array(l, &lp)?;
            Some(
                ls.iter()
                    .enumerate()
                    .map(|(i, m)| map_from_value(m, &format!("{lp}[{i}]")))
                    .collect::<Result<Vec<_>>>()?,
            )
        }
    };
    let relations = match obj.get("relations") {
        None => Vec::new(),
        Some(r) => words(r, &join(path, "relations"))?,
    };
    GroupAction::new(generators, lifts, relations)
}

pub fn action_to_value(rho: &GroupAction) -> Value {
    let mut obj = Map::new();
    obj.insert(
        "generators".into(),
        Value::Array(rho.generators().iter().map(|g| map_to_value(g.sigma())).collect()),
    );
    if let Some(l) = rho.lifts() {
        obj.insert("lifts".into(), Value::Array(l.iter().map(map_to_value).collect()));
    }
    obj.insert("relations".into(), json!(rho.relations()));
    Value::Object(obj)
}

pub fn parse_action(text: &str) -> Result<GroupAction> {
    action_from_value(&parse_value(text)?, "")
}

pub fn parse_table(text: &str) -> Result<HomCochain2> {
    let v = parse_value(text)?;
    let obj = object(&v, "")?;
    let keys = ["f0", "f1", "f2", "f3", "f+", "f-"];
    reject_unknown(obj, &keys, "")?;
    let mut vals = [0i64; 6];
    for (slot, key) in vals.iter_mut().zip(keys) {
        *slot = obj
            .get(key)
            .ok_or_else(|| Error::parse(key, "missing field"))?
            .as_i64()
            .ok_or_else(|| Error::parse(key, "expected an integer"))?;
    }
    Ok(HomCochain2 {
        f0: vals[0],
        f1: vals[1],
        f2: vals[2],
        f3: vals[3],
        fplus: vals[4],
        fminus: vals[5],
    })
}

pub fn table_to_value(t: &HomCochain2) -> Value {
    serde_json::to_value(t).expect("plain struct")
}

pub fn nondeg_table_to_value(t: &NondegCochain2) -> Value {
    serde_json::to_value(t).expect("plain struct")
}

pub fn points_from_value(v: &Value, path: &str) -> Result<Vec<CirclePoint>> {
    array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, x)| rational_value(x, &format!("{}[{i}]", loc(path))).map(|r| CirclePoint::new(&r)))
        .collect()
}

pub fn points_to_value(pts: &[CirclePoint]) -> Value {
    Value::Array(pts.iter().map(|p| Value::String(p.to_string())).collect())
}

pub fn parse_points(text: &str) -> Result<Vec<CirclePoint>> {
    points_from_value(&parse_value(text)?, "")
}

/// Finite map of circle points given as `[["x","y"], ...]`.
pub fn parse_point_table(text: &str) -> Result<Table> {
    let v = parse_value(text)?;
    let mut out = Table::new();
    for (i, pair) in array(&v, "")?.iter().enumerate() {
        let p = format!("[{i}]");
        let xs = array(pair, &p)?;
        if xs.len() != 2 {
            return Err(Error::parse(p, "expected a pair"));
        }
        let x = CirclePoint::new(&rational_value(&xs[0], &format!("{p}[0]"))?);
        let y = CirclePoint::new(&rational_value(&xs[1], &format!("{p}[1]"))?);
        if out.insert(x, y).is_some() {
            return Err(Error::parse(p, "repeated domain point"));
        }
    }
    Ok(out)
}
