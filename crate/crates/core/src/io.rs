//! JSON file format.
//!
//! Every file is an object with `"format_version": 1`, a `"kind"` and the
//! kind's fields at the top level, for example
//!
//! ```json
//! {"format_version": 1, "kind": "table", "order": 2, "table": [[0, 1], [1, 0]]}
//! ```
//!
//! Subset and map files may also be bare index arrays.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::magma::{Elem, FiniteBinarySystem};
use crate::products::{ComposeSpec, FactorMaps};
use crate::subset::Subset;
use crate::topology::{BaseFamily, FiniteTopology};
use crate::wreath::{WreathSpec, DEFAULT_MAX_SIZE};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableData {
    pub order: usize,
    pub table: Vec<Vec<Elem>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
}

impl TableData {
    pub fn from_system(g: &FiniteBinarySystem) -> Self {
        TableData {
            order: g.order(),
            table: g.rows(),
            names: g.names().map(<[String]>::to_vec),
        }
    }

    /// Builds the structure; errors name the offending cell.
    pub fn to_system(&self) -> Result<FiniteBinarySystem> {
        if self.table.len() != self.order {
            return Err(Error::Parse(format!(
                "field `table` has {} rows but `order` is {}",
                self.table.len(),
                self.order
            )));
        }
        let g = FiniteBinarySystem::from_table(self.table.clone()).map_err(as_parse)?;
        match &self.names {
            Some(n) => g.with_names(n.clone()).map_err(as_parse),
            None => Ok(g),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubsetData {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    pub members: Vec<Elem>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapData {
    pub map: Vec<Elem>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TopologyData {
    pub size: usize,
    pub opens: Vec<Vec<Elem>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BaseData {
    pub size: usize,
    pub families: Vec<Vec<Vec<Elem>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WreathSpecData {
    pub d: TableData,
    pub a: Vec<Elem>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub preferred: Vec<Elem>,
    pub b: TableData,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<Vec<Vec<Elem>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub xi: Option<Vec<Vec<Elem>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eta: Option<Vec<Vec<Vec<Elem>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kappa: Option<Vec<Vec<Vec<Elem>>>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub c1: Vec<(Elem, Elem)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_size: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComposeSpecData {
    pub a1: TableData,
    pub b1: TableData,
    #[serde(default)]
    pub f1: FactorMaps,
    pub a2: TableData,
    pub b2: TableData,
    #[serde(default)]
    pub f2: FactorMaps,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f3: Option<FactorMaps>,
}

/// File contents by kind.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Payload {
    Table(TableData),
    Subset(SubsetData),
    Factors(FactorMaps),
    WreathSpec(WreathSpecData),
    Topology(TopologyData),
    Base(BaseData),
    Map(MapData),
    ComposeSpec(ComposeSpecData),
}

impl Payload {
    pub fn kind(&self) -> &'static str {
        match self {
            Payload::Table(_) => "table",
            Payload::Subset(_) => "subset",
            Payload::Factors(_) => "factors",
            Payload::WreathSpec(_) => "wreath-spec",
            Payload::Topology(_) => "topology",
            Payload::Base(_) => "base",
            Payload::Map(_) => "map",
            Payload::ComposeSpec(_) => "compose-spec",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureFile {
    pub format_version: u32,
    #[serde(flatten)]
    pub payload: Payload,
}

impl StructureFile {
    pub fn new(payload: Payload) -> Self {
        StructureFile {
            format_version: FORMAT_VERSION,
            payload,
        }
    }

    pub fn table(g: &FiniteBinarySystem) -> Self {
        Self::new(Payload::Table(TableData::from_system(g)))
    }

    pub fn subset(s: &Subset) -> Self {
        Self::new(Payload::Subset(SubsetData {
            order: Some(s.order()),
            members: s.members(),
        }))
    }

    pub fn topology(t: &FiniteTopology) -> Self {
        Self::new(Payload::Topology(TopologyData {
            size: t.size(),
            opens: t.opens().iter().map(|u| u.iter().collect()).collect(),
        }))
    }

    pub fn base(b: &BaseFamily) -> Self {
        Self::new(Payload::Base(BaseData {
            size: b.size(),
            families: b
                .families()
                .iter()
                .map(|f| f.iter().map(|u| u.iter().collect()).collect())
                .collect(),
        }))
    }

    /// Canonical text: two-space indentation, arrays of scalars on one line.
    pub fn to_json(&self) -> String {
        let v = serde_json::to_value(self).expect("serializable");
        let mut out = String::new();
        write_value(&v, 0, &mut out);
        out.push('\n');
        out
    }
}

fn as_parse(e: Error) -> Error {
    match e {
        Error::Input(m) | Error::Structure(m) => Error::Parse(m),
        other => other,
    }
}

fn write_value(v: &Value, indent: usize, out: &mut String) {
    let pad = |n: usize| "  ".repeat(n);
    match v {
        Value::Array(items) if items.iter().all(|x| !x.is_array() && !x.is_object()) => {
            let parts: Vec<String> = items.iter().map(|x| x.to_string()).collect();
            out.push('[');
            out.push_str(&parts.join(", "));
            out.push(']');
        }
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, x) in items.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                write_value(x, indent + 1, out);
                if i + 1 < items.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        Value::Object(map) => {
            out.push_str("{\n");
            let n = map.len();
            // format_version and kind lead, the rest keep serde's order
            let mut keys: Vec<&String> = map.keys().collect();
            keys.sort_by_key(|k| match k.as_str() {
                "format_version" => 0,
                "kind" => 1,
                _ => 2,
            });
            for (i, k) in keys.into_iter().enumerate() {
                out.push_str(&pad(indent + 1));
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                write_value(&map[k], indent + 1, out);
                if i + 1 < n {
                    out.push(',');
                }
                out.push('\n');
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
        scalar => out.push_str(&scalar.to_string()),
    }
}

/// Parses and version-checks a file body.
pub fn parse(text: &str) -> Result<StructureFile> {
    let value: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    match value.get("format_version") {
        Some(v) if v.as_u64() == Some(FORMAT_VERSION as u64) => {}
        Some(v) => return Err(Error::Parse(format!("unsupported format_version {v}"))),
        None => return Err(Error::Parse("missing field `format_version`".into())),
    }
    let kind = value.get("kind").and_then(Value::as_str).unwrap_or("?").to_string();
    serde_json::from_value(value).map_err(|e| Error::Parse(format!("{kind} file: {e}")))
}

pub fn load(path: impl AsRef<Path>) -> Result<StructureFile> {
    let path = path.as_ref();
    let text = fs::read_to_string(path)?;
    parse(&text).map_err(|e| match e {
        Error::Parse(m) => Error::Parse(format!("{}: {m}", path.display())),
        other => other,
    })
}

pub fn save(path: impl AsRef<Path>, file: &StructureFile) -> Result<()> {
    fs::write(path, file.to_json())?;
    Ok(())
}

fn wrong_kind(expected: &str, found: &Payload) -> Error {
    Error::Parse(format!("expected a `{expected}` file, found `{}`", found.kind()))
}

/// Loads a table; with `require_latin` a non-Latin table is a parse error.
pub fn load_table(path: impl AsRef<Path>, require_latin: bool) -> Result<FiniteBinarySystem> {
    let path = path.as_ref();
    table_from_payload(load(path)?.payload, require_latin).map_err(|e| match e {
        Error::Parse(m) if !m.starts_with(&path.display().to_string()) => {
            Error::Parse(format!("{}: {m}", path.display()))
        }
        other => other,
    })
}

fn table_from_payload(payload: Payload, require_latin: bool) -> Result<FiniteBinarySystem> {
    match payload {
        Payload::Table(t) => {
            let g = t.to_system()?;
            if require_latin && !g.is_quasigroup() {
                let flat: Vec<u32> = t.table.iter().flatten().map(|&x| x as u32).collect();
                let detail = crate::products::latin_violation(t.order, &flat)
                    .map(|(d, _)| d)
                    .unwrap_or_default();
                return Err(Error::Parse(format!("table is not a Latin square: {detail}")));
            }
            Ok(g)
        }
        other => Err(wrong_kind("table", &other)),
    }
}

fn load_value(path: &Path) -> Result<Value> {
    let text = fs::read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn bare_indices(v: &Value) -> Option<Vec<Elem>> {
    v.as_array()?.iter().map(|x| x.as_u64().map(|u| u as Elem)).collect()
}

/// Loads a subset of a carrier of size `order`.
pub fn load_subset(path: impl AsRef<Path>, order: usize) -> Result<Subset> {
    let path = path.as_ref();
    let members = match bare_indices(&load_value(path)?) {
        Some(m) => m,
        None => match load(path)?.payload {
            Payload::Subset(s) => {
                if let Some(o) = s.order {
                    if o != order {
                        return Err(Error::Parse(format!(
                            "subset is over {o} points, structure has order {order}"
                        )));
                    }
                }
                s.members
            }
            other => return Err(wrong_kind("subset", &other)),
        },
    };
    Subset::new(order, members).map_err(as_parse)
}

/// Loads a permutation given as `map[i]`.
pub fn load_map(path: impl AsRef<Path>) -> Result<Vec<Elem>> {
    let path = path.as_ref();
    match bare_indices(&load_value(path)?) {
        Some(m) => Ok(m),
        None => match load(path)?.payload {
            Payload::Map(m) => Ok(m.map),
            other => Err(wrong_kind("map", &other)),
        },
    }
}

pub fn load_factors(path: impl AsRef<Path>) -> Result<FactorMaps> {
    match load(path)?.payload {
        Payload::Factors(f) => Ok(f),
        other => Err(wrong_kind("factors", &other)),
    }
}

fn to_bits(n: usize, m: &[Elem]) -> Result<BitSet> {
    if let Some(&x) = m.iter().find(|&&x| x >= n) {
        return Err(Error::Parse(format!("point {x} out of range for {n} points")));
    }
    Ok(BitSet::from_indices(n, m.iter().copied()))
}

impl TopologyData {
    pub fn to_topology(&self) -> Result<FiniteTopology> {
        let opens: Vec<BitSet> = self.opens.iter().map(|u| to_bits(self.size, u)).collect::<Result<_>>()?;
        FiniteTopology::new(self.size, opens).map_err(as_parse)
    }
}

impl BaseData {
    pub fn to_base(&self) -> Result<BaseFamily> {
        let fams = self
            .families
            .iter()
            .map(|f| f.iter().map(|u| to_bits(self.size, u)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        BaseFamily::new(self.size, fams).map_err(as_parse)
    }
}

pub fn load_topology(path: impl AsRef<Path>) -> Result<FiniteTopology> {
    match load(path)?.payload {
        Payload::Topology(t) => t.to_topology(),
        other => Err(wrong_kind("topology", &other)),
    }
}

pub fn load_base(path: impl AsRef<Path>) -> Result<BaseFamily> {
    match load(path)?.payload {
        Payload::Base(b) => b.to_base(),
        other => Err(wrong_kind("base", &other)),
    }
}

impl WreathSpecData {
    pub fn to_spec(&self) -> Result<WreathSpec> {
        let d = self.d.to_system()?;
        let b = self.b.to_system()?;
        let a = Subset::new(d.order(), self.a.iter().copied()).map_err(as_parse)?;
        let mut spec = WreathSpec::trivial(d, a, b);
        if let Some(phi) = &self.phi {
            spec.phi = phi.clone();
        }
        if let Some(xi) = &self.xi {
            spec.xi = xi.clone();
        }
        spec.preferred = self.preferred.clone();
        spec.eta = self.eta.clone();
        spec.kappa = self.kappa.clone();
        spec.c1 = self.c1.clone();
        spec.max_size = self.max_size.unwrap_or(DEFAULT_MAX_SIZE);
        Ok(spec)
    }

    pub fn from_spec(spec: &WreathSpec) -> Self {
        WreathSpecData {
            d: TableData::from_system(&spec.d),
            a: spec.a.members(),
            preferred: spec.preferred.clone(),
            b: TableData::from_system(&spec.b),
            phi: Some(spec.phi.clone()),
            xi: Some(spec.xi.clone()),
            eta: spec.eta.clone(),
            kappa: spec.kappa.clone(),
            c1: spec.c1.clone(),
            max_size: (spec.max_size != DEFAULT_MAX_SIZE).then_some(spec.max_size),
        }
    }
}

pub fn load_wreath_spec(path: impl AsRef<Path>) -> Result<WreathSpec> {
    match load(path)?.payload {
        Payload::WreathSpec(w) => w.to_spec(),
        other => Err(wrong_kind("wreath-spec", &other)),
    }
}

impl ComposeSpecData {
    pub fn to_spec(&self) -> Result<ComposeSpec> {
        Ok(ComposeSpec {
            f1: self.f1.apply(self.a1.to_system()?, self.b1.to_system()?)?,
            f2: self.f2.apply(self.a2.to_system()?, self.b2.to_system()?)?,
            f3: self.f3.clone(),
        })
    }
}

pub fn load_compose_spec(path: impl AsRef<Path>) -> Result<ComposeSpec> {
    match load(path)?.payload {
        Payload::ComposeSpec(c) => c.to_spec(),
        other => Err(wrong_kind("compose-spec", &other)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn table_round_trip_text() {
        let z4 = catalog::cyclic(4).unwrap();
        let text = StructureFile::table(&z4).to_json();
        assert!(text.contains("\"kind\": \"table\""));
        assert!(text.contains("[0, 1, 2, 3]"));
        let back = parse(&text).unwrap();
        match &back.payload {
            Payload::Table(t) => assert_eq!(t.to_system().unwrap(), z4),
            other => panic!("{other:?}"),
        }
        assert_eq!(back.to_json(), text);
    }

    #[test]
    fn out_of_range_cell_named() {
        let text = r#"{"format_version": 1, "kind": "table", "order": 2, "table": [[0, 1], [1, 5]]}"#;
        let f = parse(text).unwrap();
        let Payload::Table(t) = f.payload else { panic!() };
        match t.to_system() {
            Err(Error::Parse(m)) => assert!(m.contains("table[1][1]"), "{m}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn malformed_json_reports_position() {
        match parse("{\"format_version\": 1,\n \"kind\": \"table\", \"order\": }") {
            Err(Error::Parse(m)) => assert!(m.contains("line 2"), "{m}"),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse(r#"{"format_version": 2, "kind": "map", "map": []}"#),
            Err(Error::Parse(_))
        ));
        match parse(r#"{"format_version": 1, "kind": "table", "order": 1}"#) {
            Err(Error::Parse(m)) => assert!(m.contains("table"), "{m}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn other_kinds_round_trip() {
        let t = FiniteTopology::discrete(2).unwrap();
        let files = [
            StructureFile::subset(&Subset::new(4, [0, 2]).unwrap()),
            StructureFile::topology(&t),
            StructureFile::base(&BaseFamily::discrete(3)),
            StructureFile::new(Payload::Map(MapData { map: vec![1, 0] })),
            StructureFile::new(Payload::Factors(FactorMaps::default())),
        ];
        for f in files {
            assert_eq!(parse(&f.to_json()).unwrap(), f);
        }
    }
}
