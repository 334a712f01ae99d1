//! Report envelope (`posmap-report/1`) and serialization helpers.
//!
//! Floats are written with 17 significant digits so they round-trip exactly.

use posmap::Complex64;
use serde_json::{Map, Number, Value};

use crate::config::RunConfig;

pub const SCHEMA_ID: &str = "posmap-report/1";
/// JSON Schema for every report this tool emits.
pub const SCHEMA: &str = include_str!("../schema/posmap-report-1.json");

pub fn num(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    let text = format!("{x:.16e}");
    Value::Number(serde_json::from_str::<Number>(&text).expect("formatted float is a JSON number"))
}

pub fn complex(z: Complex64) -> Value {
    Value::Array(vec![num(z.re), num(z.im)])
}

pub fn complex_vec(v: &[Complex64]) -> Value {
    Value::Array(v.iter().map(|z| complex(*z)).collect())
}

pub fn real_vec(v: &[f64]) -> Value {
    Value::Array(v.iter().map(|x| num(*x)).collect())
}

/// Ordered JSON object builder.
#[derive(Debug, Default, Clone)]
pub struct Obj(Map<String, Value>);

impl Obj {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.0.insert(key.to_string(), value.into());
        self
    }

    pub fn num(self, key: &str, x: f64) -> Self {
        self.set(key, num(x))
    }
}

impl From<Obj> for Value {
    fn from(o: Obj) -> Value {
        Value::Object(o.0)
    }
}

#[derive(Debug, Clone)]
pub struct Report {
    pub value: Value,
}

impl Report {
    pub fn new(config: &RunConfig, result: Value) -> Self {
        let value = Obj::new()
            .set("schema", SCHEMA_ID)
            .set("version", posmap::VERSION)
            .set("command", config.command.as_str())
            .set("config", config.to_json())
            .set("result", result)
            .into();
        Self { value }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.value).expect("report serializes")
    }

    /// One `path = value` line per leaf; values use the JSON encoding.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        flatten("", &self.value, &mut out);
        out
    }
}

fn flatten(path: &str, v: &Value, out: &mut String) {
    match v {
        Value::Object(map) if !map.is_empty() => {
            for (k, child) in map {
                let p = if path.is_empty() { k.clone() } else { format!("{path}.{k}") };
                flatten(&p, child, out);
            }
        }
        Value::Array(items) if !items.is_empty() => {
            for (i, child) in items.iter().enumerate() {
                flatten(&format!("{path}[{i}]"), child, out);
            }
        }
        leaf => {
            out.push_str(path);
            out.push_str(" = ");
            out.push_str(&serde_json::to_string(leaf).expect("leaf serializes"));
            out.push('\n');
        }
    }
}

/// Rebuilds the JSON value from [`Report::to_text`] output.
pub fn parse_text(text: &str) -> Option<Value> {
    let mut root = Value::Null;
    for line in text.lines() {
        let (path, raw) = line.split_once(" = ")?;
        let leaf: Value = serde_json::from_str(raw).ok()?;
        let mut cur = &mut root;
        for seg in split_path(path)? {
            cur = match seg {
                Seg::Key(k) => {
                    if !cur.is_object() {
                        *cur = Value::Object(Map::new());
                    }
                    cur.as_object_mut()?.entry(k).or_insert(Value::Null)
                }
                Seg::Index(i) => {
                    if !cur.is_array() {
                        *cur = Value::Array(Vec::new());
                    }
                    let arr = cur.as_array_mut()?;
                    while arr.len() <= i {
                        arr.push(Value::Null);
                    }
                    &mut arr[i]
                }
            };
        }
        *cur = leaf;
    }
    Some(root)
}

enum Seg {
    Key(String),
    Index(usize),
}

fn split_path(path: &str) -> Option<Vec<Seg>> {
    let mut segs = Vec::new();
    for part in path.split('.') {
        let (key, mut rest) = match part.find('[') {
            Some(p) => (&part[..p], &part[p..]),
            None => (part, ""),
        };
        if !key.is_empty() {
            segs.push(Seg::Key(key.to_string()));
        }
        while let Some(stripped) = rest.strip_prefix('[') {
            let end = stripped.find(']')?;
            segs.push(Seg::Index(stripped[..end].parse().ok()?));
            rest = &stripped[end + 1..];
        }
    }
    Some(segs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_significant_digits() {
        assert_eq!(num(0.1).to_string(), "1.0000000000000001e-1");
        assert_eq!(num(-0.025).to_string(), "-2.5000000000000001e-2");
        assert_eq!(num(2.0).to_string(), "2.0000000000000000e+0");
        assert_eq!(num(f64::NAN), Value::Null);
        for x in [1.0 / 3.0, 1e-300, -7.25e12, std::f64::consts::PI] {
            assert_eq!(num(x).as_f64().unwrap(), x);
        }
    }

    #[test]
    fn text_rendering_round_trips() {
        let v: Value = Obj::new()
            .set("a", Obj::new().num("b", 0.5).set("c", Value::Array(vec![])))
            .set("m", Value::Array(vec![complex(Complex64::new(1.0, -2.0)), Value::Null]))
            .set("s", "x = y")
            .set("e", Obj::new())
            .into();
        let r = Report { value: v.clone() };
        assert_eq!(parse_text(&r.to_text()).unwrap(), v);
    }
}
