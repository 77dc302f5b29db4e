//! The structure description file: a group, a quasi difference set in it,
//! and optionally how the group splits into summands.

use std::path::Path;

use qdslab_core::groups::{make_group, GroupDescription};
use qdslab_core::qds::qds_sum;
use qdslab_core::{Caps, Element, Error, GroupSpec, IncidenceStructure, QDSet};
use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum GroupField {
    CyclicProduct { moduli: Vec<usize> },
    Cayley { table: Vec<Vec<usize>> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Label {
    Index(usize),
    Residues(Vec<usize>),
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Meta {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub notes: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Description {
    pub group: GroupField,
    pub qds: Vec<Label>,
    /// Number of cyclic factors in each summand, for sums of cyclic
    /// products; absent means a single summand.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub blocks: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meta: Option<Meta>,
}

#[derive(Debug)]
pub enum LoadError {
    Io(String),
    Parse(String),
    Core(Error),
}

impl From<Error> for LoadError {
    fn from(e: Error) -> Self {
        LoadError::Core(e)
    }
}

impl std::fmt::Display for LoadError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LoadError::Io(m) | LoadError::Parse(m) => f.write_str(m),
            LoadError::Core(e) => write!(f, "{e}"),
        }
    }
}

/// A parsed description with its group, set and structure.
#[derive(Debug, Clone)]
pub struct Loaded {
    pub description: Description,
    pub bytes: Vec<u8>,
    pub qds: QDSet,
    pub factors: Vec<QDSet>,
    pub structure: IncidenceStructure,
}

impl Loaded {
    pub fn group(&self) -> &GroupSpec {
        self.qds.group()
    }

    pub fn parse_point(&self, text: &str) -> Result<usize, LoadError> {
        self.group()
            .parse_element(text)
            .map_err(|e| LoadError::Parse(format!("point {text:?}: {e}")))
    }
}

pub fn load(path: &Path, caps: &Caps) -> Result<Loaded, LoadError> {
    let bytes = std::fs::read(path).map_err(|e| LoadError::Io(format!("{}: {e}", path.display())))?;
    let description: Description =
        serde_json::from_slice(&bytes).map_err(|e| LoadError::Parse(format!("{}: {e}", path.display())))?;
    let mut loaded = realize(description, caps)?;
    loaded.bytes = bytes;
    Ok(loaded)
}

fn label_to_element(g: &GroupSpec, label: &Label) -> Result<Element, LoadError> {
    let e = match label {
        Label::Index(i) => g.check(*i),
        Label::Residues(r) => g.from_residues(r),
    };
    e.map_err(|e| LoadError::Parse(format!("element {label:?}: {e}")))
}

/// Builds group, set and structure, splitting into summands when `blocks`
/// is given.
pub fn realize(description: Description, caps: &Caps) -> Result<Loaded, LoadError> {
    let gd = match &description.group {
        GroupField::CyclicProduct { moduli } => GroupDescription::CyclicProduct(moduli.clone()),
        GroupField::Cayley { table } => GroupDescription::Cayley(table.clone()),
    };
    let group = make_group(&gd, caps)?;
    let elements = description
        .qds
        .iter()
        .map(|l| label_to_element(&group, l))
        .collect::<Result<Vec<_>, _>>()?;
    let qds = QDSet::new(group.clone(), &elements)?;
    if !qds.is_qds() {
        return Err(LoadError::Core(Error::NotAQds));
    }
    let factors = match &description.blocks {
        None => vec![qds.clone()],
        Some(blocks) => split(&qds, blocks, caps)?,
    };
    let structure = if factors.len() == 1 {
        IncidenceStructure::build(&qds)?
    } else {
        IncidenceStructure::build_sum(&factors, caps)?
    };
    Ok(Loaded {
        description,
        bytes: Vec::new(),
        qds,
        factors,
        structure,
    })
}

fn split(qds: &QDSet, blocks: &[usize], caps: &Caps) -> Result<Vec<QDSet>, LoadError> {
    let moduli = qds
        .group()
        .moduli()
        .ok_or_else(|| LoadError::Parse("blocks need a cyclic_product group".into()))?
        .to_vec();
    if blocks.iter().sum::<usize>() != moduli.len() || blocks.contains(&0) {
        return Err(LoadError::Parse(format!(
            "blocks {blocks:?} do not partition {} cyclic factors",
            moduli.len()
        )));
    }
    let residues = qds.residues();
    let mut factors = Vec::new();
    let mut start = 0;
    for &b in blocks {
        let g = GroupSpec::cyclic_product(&moduli[start..start + b])?;
        let mut part: Vec<Vec<usize>> = residues.iter().map(|r| r[start..start + b].to_vec()).collect();
        part.sort();
        part.dedup();
        factors.push(QDSet::from_residues(g, &part)?);
        start += b;
    }
    let mut acc = factors[0].clone();
    for f in &factors[1..] {
        acc = qds_sum(&acc, f, caps)?;
    }
    if acc.elements() != qds.elements() {
        return Err(LoadError::Core(Error::BadProvenance(
            "the set is not the sum of its block projections".into(),
        )));
    }
    Ok(factors)
}

/// Canonical description: sorted labels, residues for products of more than
/// one cyclic group.
pub fn describe(qds: &QDSet, blocks: Option<Vec<usize>>, meta: Option<Meta>) -> Description {
    let g = qds.group();
    let group = match g.moduli() {
        Some(m) => GroupField::CyclicProduct { moduli: m.to_vec() },
        None => GroupField::Cayley {
            table: g.cayley_table(),
        },
    };
    let multi = g.moduli().is_some_and(|m| m.len() > 1);
    let qds_labels = qds
        .elements()
        .iter()
        .map(|&x| {
            if multi {
                Label::Residues(g.residues(x))
            } else {
                Label::Index(x)
            }
        })
        .collect();
    let blocks = blocks.filter(|b| b.len() > 1);
    Description {
        group,
        qds: qds_labels,
        blocks,
        meta,
    }
}

/// Blocks of a sum of factors, when every factor is a cyclic product.
pub fn blocks_of(factors: &[QDSet]) -> Option<Vec<usize>> {
    factors
        .iter()
        .map(|f| f.group().moduli().map(<[usize]>::len))
        .collect::<Option<Vec<_>>>()
        .filter(|b| b.len() > 1)
}

/// Pretty JSON with arrays of numbers kept on one line.
pub fn to_json<T: Serialize>(d: &T) -> String {
    let v = serde_json::to_value(d).expect("descriptions serialize");
    let mut out = String::new();
    write_value(&v, 0, &mut out);
    out.push('\n');
    out
}

fn write_value(v: &Value, depth: usize, out: &mut String) {
    let pad = |d: usize| "  ".repeat(d);
    match v {
        Value::Object(map) if !map.is_empty() => {
            out.push_str("{\n");
            for (i, (k, x)) in map.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                out.push_str(&serde_json::to_string(k).unwrap());
                out.push_str(": ");
                write_value(x, depth + 1, out);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push('}');
        }
        Value::Array(xs) if xs.iter().any(|x| x.is_array() || x.is_object()) => {
            out.push_str("[\n");
            for (i, x) in xs.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                write_value(x, depth + 1, out);
                out.push_str(if i + 1 < xs.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push(']');
        }
        Value::Array(xs) => {
            let items: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
            out.push('[');
            out.push_str(&items.join(", "));
            out.push(']');
        }
        other => out.push_str(&other.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use qdslab_core::qds::canonical_set;

    fn round_trip(d: &Description) {
        let back: Description = serde_json::from_str(&to_json(d)).unwrap();
        assert_eq!(&back, d);
        let loaded = realize(back, &Caps::default()).unwrap();
        assert_eq!(&describe(&loaded.qds, blocks_of(&loaded.factors), d.meta.clone()), d);
    }

    #[test]
    fn descriptions_round_trip() {
        let caps = Caps::default();
        let c = canonical_set(&[4, 5, 3]).unwrap();
        let meta = Meta {
            name: Some("c".into()),
            notes: Some("three factors".into()),
        };
        round_trip(&describe(&c, Some(vec![1, 1, 1]), Some(meta)));
        let fano = QDSet::new(GroupSpec::cyclic(7).unwrap(), &[0, 1, 3]).unwrap();
        round_trip(&describe(&fano, None, None));
        let tri = QDSet::new(GroupSpec::cyclic(3).unwrap(), &[0, 1]).unwrap();
        let sum = qds_sum(&tri, &fano, &caps).unwrap();
        round_trip(&describe(&sum, Some(vec![1, 1]), None));
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let bad = [
            r#"{"group": {"type": "cyclic_product", "moduli": [7], "x": 1}, "qds": [0, 1, 3]}"#,
            r#"{"group": {"type": "cyclic_product", "moduli": [7]}, "qds": [0, 1, 3], "meta": {"nam": "f"}}"#,
            r#"{"group": {"type": "dihedral", "n": 3}, "qds": [0, 1]}"#,
        ];
        for text in bad {
            assert!(serde_json::from_str::<Description>(text).is_err(), "{text}");
        }
    }

    #[test]
    fn blocks_must_partition_and_match() {
        let caps = Caps::default();
        let text = r#"{"group": {"type": "cyclic_product", "moduli": [3, 7]}, "qds": [[0, 0], [0, 1], [0, 3], [1, 0]], "blocks": [1, 1]}"#;
        let d: Description = serde_json::from_str(text).unwrap();
        assert_eq!(realize(d.clone(), &caps).unwrap().factors.len(), 2);
        let mut wrong = d;
        wrong.blocks = Some(vec![2, 1]);
        assert!(realize(wrong, &caps).is_err());
    }
}
