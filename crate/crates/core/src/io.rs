//! JSON documents for complexes, groups, cochains, towers and coefficient
//! sequences.
//!
//! Readers accept a group in any presentation (for example torsion `[2, 3]`)
//! and interpret coordinates in that presentation; writers always emit the
//! canonical form. Integers are JSON numbers when they fit in 64 bits and
//! decimal strings otherwise. Objects are written with sorted keys, so the
//! same value always serializes to the same bytes.

use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Map, Value};

use crate::abelian::{canonicalize, AbelianGroup, GroupElement, GroupHom, IntMatrix};
use crate::cech::Cochain;
use crate::complexes::Complex;
use crate::exactseq::ShortExactSequence;
use crate::towers::{LinkStack, TowerCocycle};
use crate::{Error, Int, Result};

/// Parses JSON text, reporting the position of syntax errors.
pub fn parse(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

/// Two-space indented text with a trailing newline.
pub fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values always serialize");
    s.push('\n');
    s
}

fn schema(path: &str, reason: impl Into<String>) -> Error {
    Error::Schema {
        path: path.to_string(),
        reason: reason.into(),
    }
}

fn field<'a>(v: &'a Value, path: &str, key: &str) -> Result<&'a Value> {
    let obj = v.as_object().ok_or_else(|| schema(path, "expected an object"))?;
    obj.get(key).ok_or_else(|| schema(&join(path, key), "missing field"))
}

fn join(path: &str, key: &str) -> String {
    if path.is_empty() {
        key.to_string()
    } else {
        format!("{path}.{key}")
    }
}

fn array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| schema(path, "expected an array"))
}

pub fn int_from_json(v: &Value, path: &str) -> Result<Int> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Int::from(i))
            } else if let Some(u) = n.as_u64() {
                Ok(Int::from(u))
            } else {
                Err(schema(path, "expected an integer"))
            }
        }
        Value::String(s) => s.trim().parse::<Int>().map_err(|_| schema(path, "expected an integer")),
        _ => Err(schema(path, "expected an integer")),
    }
}

pub fn int_to_json(x: &Int) -> Value {
    match x.to_i64() {
        Some(i) => json!(i),
        None => json!(x.to_string()),
    }
}

fn usize_from_json(v: &Value, path: &str) -> Result<usize> {
    v.as_u64()
        .and_then(|u| usize::try_from(u).ok())
        .ok_or_else(|| schema(path, "expected a non-negative integer"))
}

fn u32_from_json(v: &Value, path: &str) -> Result<u32> {
    v.as_u64()
        .and_then(|u| u32::try_from(u).ok())
        .ok_or_else(|| schema(path, "expected a vertex label (non-negative 32-bit integer)"))
}

fn ints_to_json(v: &[Int]) -> Value {
    Value::Array(v.iter().map(int_to_json).collect())
}

// ---------------------------------------------------------------- complexes

/// `{"vertices": [...], "simplices": [[...], ...]}`; faces may be omitted.
pub fn complex_from_json(v: &Value) -> Result<Complex> {
    complex_at(v, "")
}

fn complex_at(v: &Value, path: &str) -> Result<Complex> {
    let mut generators: Vec<Vec<u32>> = Vec::new();
    let simplices = array(field(v, path, "simplices")?, &join(path, "simplices"))?;
    for (i, s) in simplices.iter().enumerate() {
        let p = format!("{}[{i}]", join(path, "simplices"));
        let verts = array(s, &p)?
            .iter()
            .enumerate()
            .map(|(j, x)| u32_from_json(x, &format!("{p}[{j}]")))
            .collect::<Result<Vec<_>>>()?;
        if verts.is_empty() {
            return Err(schema(&p, "a simplex needs at least one vertex"));
        }
        generators.push(verts);
    }
    if let Some(vs) = v.get("vertices") {
        let p = join(path, "vertices");
        for (j, x) in array(vs, &p)?.iter().enumerate() {
            generators.push(vec![u32_from_json(x, &format!("{p}[{j}]"))?]);
        }
    }
    Complex::closure(generators)
}

/// Vertices plus facets.
pub fn complex_to_json(x: &Complex) -> Value {
    json!({
        "vertices": x.vertices(),
        "simplices": x.facets(),
    })
}

// ------------------------------------------------------------------- groups

/// A group read from JSON together with the coordinate change from the
/// presentation it was written in.
#[derive(Debug, Clone)]
pub struct PresentedGroup {
    pub group: AbelianGroup,
    moduli: Vec<Int>,
    to_canonical: Option<IntMatrix>,
    from_canonical: Option<IntMatrix>,
}

impl PresentedGroup {
    fn new(free_rank: usize, torsion: Vec<Int>) -> Result<Self> {
        let group = AbelianGroup::try_new(free_rank, torsion.clone())?;
        let mut moduli = vec![Int::zero(); free_rank];
        moduli.extend(torsion);
        if group.moduli() == moduli {
            return Ok(PresentedGroup {
                group,
                moduli,
                to_canonical: None,
                from_canonical: None,
            });
        }
        let c = canonicalize(&moduli);
        Ok(PresentedGroup {
            group: c.group,
            moduli,
            to_canonical: Some(c.to_canonical),
            from_canonical: Some(c.from_canonical),
        })
    }

    /// Number of coordinates in the written presentation.
    pub fn width(&self) -> usize {
        self.moduli.len()
    }

    /// Converts presentation coordinates to an element of the canonical group.
    pub fn element(&self, coords: &[Int], path: &str) -> Result<GroupElement> {
        if coords.len() != self.width() {
            return Err(schema(path, format!("expected {} coordinates, got {}", self.width(), coords.len())));
        }
        let canonical = match &self.to_canonical {
            None => coords.to_vec(),
            Some(t) => t.mul_vec(coords),
        };
        GroupElement::new(self.group.clone(), canonical)
    }

    fn matrix_into(&self, m: &IntMatrix) -> IntMatrix {
        match &self.to_canonical {
            None => m.clone(),
            Some(t) => t.mul(m),
        }
    }

    fn matrix_from(&self, m: &IntMatrix) -> IntMatrix {
        match &self.from_canonical {
            None => m.clone(),
            Some(f) => m.mul(f),
        }
    }
}

/// `{"free_rank": r, "torsion": [...]}`, `{"mod": m}` or `{"Z": r}`; a
/// string is read as shorthand (see [`parse_group_shorthand`]).
pub fn group_from_json(v: &Value) -> Result<AbelianGroup> {
    Ok(presented_group_at(v, "")?.group)
}

pub fn presented_group_from_json(v: &Value) -> Result<PresentedGroup> {
    presented_group_at(v, "")
}

fn presented_group_at(v: &Value, path: &str) -> Result<PresentedGroup> {
    if let Value::String(s) = v {
        let g = parse_group_shorthand(s).map_err(|e| schema(path, e.to_string()))?;
        return PresentedGroup::new(g.free_rank(), g.torsion().to_vec());
    }
    let obj = v.as_object().ok_or_else(|| schema(path, "expected a group object"))?;
    let keys: Vec<&str> = obj.keys().map(String::as_str).collect();
    let (free_rank, torsion) = match keys.as_slice() {
        ["mod"] => {
            let m = int_from_json(&obj["mod"], &join(path, "mod"))?;
            (0, vec![m])
        }
        ["Z"] => (usize_from_json(&obj["Z"], &join(path, "Z"))?, Vec::new()),
        _ => {
            if let Some(k) = keys.iter().find(|k| !matches!(**k, "free_rank" | "torsion")) {
                return Err(schema(&join(path, k), "unknown group field"));
            }
            let r = match obj.get("free_rank") {
                Some(x) => usize_from_json(x, &join(path, "free_rank"))?,
                None => 0,
            };
            let t = match obj.get("torsion") {
                Some(x) => {
                    let p = join(path, "torsion");
                    array(x, &p)?
                        .iter()
                        .enumerate()
                        .map(|(i, d)| int_from_json(d, &format!("{p}[{i}]")))
                        .collect::<Result<Vec<_>>>()?
                }
                None => Vec::new(),
            };
            if obj.is_empty() {
                return Err(schema(path, "expected free_rank/torsion, mod or Z"));
            }
            (r, t)
        }
    };
    if let Some(d) = torsion.iter().find(|d| *d < &Int::from(2)) {
        return Err(schema(&join(path, "torsion"), format!("torsion order {d} must be at least 2")));
    }
    PresentedGroup::new(free_rank, torsion)
}

pub fn group_to_json(g: &AbelianGroup) -> Value {
    json!({
        "free_rank": g.free_rank(),
        "torsion": ints_to_json(g.torsion()),
    })
}

/// Reads `0`, `Z`, `Z^2`, `Z/4`, `Z^2+Z/2+Z/4` and the like (`⊕` may stand
/// for `+`, spaces are ignored).
pub fn parse_group_shorthand(s: &str) -> Result<AbelianGroup> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::Invalid(format!("cannot read `{s}` as a group (try Z, Z/2, Z^2+Z/4 or 0)"));
    if compact.is_empty() {
        return Err(bad());
    }
    if compact == "0" {
        return Ok(AbelianGroup::zero());
    }
    let mut rank = 0usize;
    let mut torsion = Vec::new();
    for part in compact.replace('⊕', "+").split('+') {
        if part == "Z" {
            rank += 1;
        } else if let Some(r) = part.strip_prefix("Z^") {
            rank += r.parse::<usize>().map_err(|_| bad())?;
        } else if let Some(m) = part.strip_prefix("Z/") {
            let m: Int = m.parse().map_err(|_| bad())?;
            if m < Int::from(2) {
                return Err(bad());
            }
            torsion.push(m);
        } else if part != "0" {
            return Err(bad());
        }
    }
    AbelianGroup::try_new(rank, torsion)
}

/// A list of groups.
pub fn stack_from_json(v: &Value) -> Result<LinkStack> {
    let links = array(v, "")?
        .iter()
        .enumerate()
        .map(|(i, g)| Ok(presented_group_at(g, &format!("[{i}]"))?.group))
        .collect::<Result<Vec<_>>>()?;
    LinkStack::new(links).map_err(|e| schema("", e.to_string()))
}

pub fn stack_to_json(s: &LinkStack) -> Value {
    Value::Array(s.links().iter().map(group_to_json).collect())
}

// ----------------------------------------------------------------- cochains

fn simplex_key(s: &[u32]) -> String {
    s.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

fn parse_key(key: &str, path: &str) -> Result<Vec<u32>> {
    key.split(',')
        .map(|t| t.trim().parse::<u32>().map_err(|_| schema(path, format!("`{key}` is not a comma-separated simplex"))))
        .collect()
}

/// `{"degree": k, "group": g, "values": {"0,1,2": [coords], ...}}`, with an
/// optional embedded `"complex"`. Omitted simplices are zero; an unsorted key
/// sets the value of the sorted simplex with the permutation sign applied.
pub fn cochain_from_json(v: &Value, complex: Option<&Complex>) -> Result<Cochain> {
    cochain_at(v, "", complex, None)
}

fn cochain_at(v: &Value, path: &str, complex: Option<&Complex>, default_group: Option<&AbelianGroup>) -> Result<Cochain> {
    let embedded = match v.get("complex") {
        Some(c) => Some(complex_at(c, &join(path, "complex"))?),
        None => None,
    };
    let x = match (embedded, complex) {
        (Some(e), Some(given)) if &e != given => {
            return Err(schema(&join(path, "complex"), "embedded complex differs from the given one"))
        }
        (Some(e), _) => e,
        (None, Some(given)) => given.clone(),
        (None, None) => return Err(schema(&join(path, "complex"), "missing field (no complex given separately)")),
    };
    let degree = usize_from_json(field(v, path, "degree")?, &join(path, "degree"))?;
    let group = match (v.get("group"), default_group) {
        (Some(g), _) => presented_group_at(g, &join(path, "group"))?,
        (None, Some(g)) => PresentedGroup::new(g.free_rank(), g.torsion().to_vec())?,
        (None, None) => return Err(schema(&join(path, "group"), "missing field")),
    };
    if let Some(g) = default_group {
        if &group.group != g {
            return Err(schema(&join(path, "group"), format!("expected {g}, found {}", group.group)));
        }
    }
    let mut c = Cochain::zero(&x, &group.group, degree);
    let values_path = join(path, "values");
    let values = match v.get("values") {
        None => return Ok(c),
        Some(vals) => vals.as_object().ok_or_else(|| schema(&values_path, "expected an object keyed by simplices"))?,
    };
    let mut seen = std::collections::HashSet::new();
    for (key, coords) in values {
        let p = format!("{values_path}.\"{key}\"");
        let tuple = parse_key(key, &p)?;
        let mut sorted = tuple.clone();
        sorted.sort_unstable();
        if !seen.insert(sorted) {
            return Err(schema(&p, "simplex given more than once"));
        }
        let coords = match coords {
            Value::Array(a) => a
                .iter()
                .enumerate()
                .map(|(i, x)| int_from_json(x, &format!("{p}[{i}]")))
                .collect::<Result<Vec<_>>>()?,
            other => vec![int_from_json(other, &p)?],
        };
        let element = group.element(&coords, &p)?;
        c.set(&tuple, &element).map_err(|e| schema(&p, e.to_string()))?;
    }
    Ok(c)
}

/// Writes the nonzero values only.
pub fn cochain_to_json(c: &Cochain) -> Value {
    let mut values = Map::new();
    for (i, s) in c.complex().simplices(c.degree()).iter().enumerate() {
        let v = c.value_at(i);
        if v.iter().any(|x| !x.is_zero()) {
            values.insert(simplex_key(s), ints_to_json(v));
        }
    }
    json!({
        "degree": c.degree(),
        "group": group_to_json(c.group()),
        "values": values,
    })
}

/// Same as [`cochain_to_json`] with the complex embedded.
pub fn cochain_to_json_with_complex(c: &Cochain) -> Value {
    let mut v = cochain_to_json(c);
    v["complex"] = complex_to_json(c.complex());
    v
}

// ------------------------------------------------------------------- towers

/// `{"complex": {...}, "links": [g, ...], "cocycles": [cochain, ...]}`. The
/// cocycles may omit `"group"` (the matching link is used) and `"complex"`.
pub fn tower_from_json(v: &Value) -> Result<TowerCocycle> {
    let x = complex_at(field(v, "", "complex")?, "complex")?;
    let links_v = array(field(v, "", "links")?, "links")?;
    let links = links_v
        .iter()
        .enumerate()
        .map(|(i, g)| Ok(presented_group_at(g, &format!("links[{i}]"))?.group))
        .collect::<Result<Vec<_>>>()?;
    let stack = LinkStack::new(links.clone()).map_err(|e| schema("links", e.to_string()))?;
    let cocycles_v = array(field(v, "", "cocycles")?, "cocycles")?;
    if cocycles_v.len() != links.len() {
        return Err(schema(
            "cocycles",
            format!("{} links but {} cocycles", links.len(), cocycles_v.len()),
        ));
    }
    let cocycles = cocycles_v
        .iter()
        .zip(&links)
        .enumerate()
        .map(|(i, (c, l))| cochain_at(c, &format!("cocycles[{i}]"), Some(&x), Some(l)))
        .collect::<Result<Vec<_>>>()?;
    TowerCocycle::new(x, stack, cocycles)
}

pub fn tower_to_json(t: &TowerCocycle) -> Value {
    json!({
        "complex": complex_to_json(t.complex()),
        "links": stack_to_json(t.stack()),
        "cocycles": t.cocycles().iter().map(cochain_to_json).collect::<Vec<_>>(),
    })
}

// --------------------------------------------------------------------- SES

fn matrix_at(v: &Value, path: &str, rows: usize, cols: usize) -> Result<IntMatrix> {
    let rs = array(v, path)?;
    if rs.len() != rows {
        return Err(schema(path, format!("expected {rows} rows, got {}", rs.len())));
    }
    let rows_v = rs
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let p = format!("{path}[{i}]");
            let entries = array(r, &p)?;
            if entries.len() != cols {
                return Err(schema(&p, format!("expected {cols} entries, got {}", entries.len())));
            }
            entries
                .iter()
                .enumerate()
                .map(|(j, x)| int_from_json(x, &format!("{p}[{j}]")))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(IntMatrix::from_rows(cols, rows_v))
}

fn matrix_to_json(m: &IntMatrix) -> Value {
    Value::Array(m.to_rows().iter().map(|r| ints_to_json(r)).collect())
}

/// `{"A'": g, "A": g, "A''": g, "inject": [[...]], "project": [[...]]}`.
/// Matrix rows index target coordinates, columns source coordinates. The
/// result must be exact.
pub fn ses_from_json(v: &Value) -> Result<ShortExactSequence> {
    let sub = presented_group_at(field(v, "", "A'")?, "A'")?;
    let mid = presented_group_at(field(v, "", "A")?, "A")?;
    let quo = presented_group_at(field(v, "", "A''")?, "A''")?;
    let inject = matrix_at(field(v, "", "inject")?, "inject", mid.width(), sub.width())?;
    let project = matrix_at(field(v, "", "project")?, "project", quo.width(), mid.width())?;
    let canon = |s: &PresentedGroup, t: &PresentedGroup, m: &IntMatrix, name: &str| {
        GroupHom::new(s.group.clone(), t.group.clone(), t.matrix_into(&s.matrix_from(m)))
            .map_err(|e| schema(name, e.to_string()))
    };
    let inject = canon(&sub, &mid, &inject, "inject")?;
    let project = canon(&mid, &quo, &project, "project")?;
    ShortExactSequence::new(inject, project)
}

pub fn ses_to_json(s: &ShortExactSequence) -> Value {
    json!({
        "A'": group_to_json(s.sub()),
        "A": group_to_json(s.middle()),
        "A''": group_to_json(s.quotient()),
        "inject": matrix_to_json(s.inject().matrix()),
        "project": matrix_to_json(s.project().matrix()),
    })
}
