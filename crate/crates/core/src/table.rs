//! JSON form of action tables.
//!
//! ```json
//! {"algebra":"loop","box":{"i":[-2,2],"j":[-2,2]},
//!  "entries":[{"sym":"L(1,0)","poly":"2*t-4"},{"sym":"C(0)","poly":"0"}]}
//! ```
//!
//! Block tables add `"q"` and name their box axes `m` and `i`; Virasoro
//! tables have a single axis `i`. Polynomials and scalars use the literal
//! grammars of [`crate::parse`].

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraKind, BasisSymbol, IndexBox};
use crate::error::Error;
use crate::module::ActionTable;
use crate::parse::{parse_element, parse_poly, parse_scalar, ParseScalar};

#[derive(Serialize, Deserialize)]
struct TableFile {
    algebra: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    q: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    k: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    l: Option<i64>,
    #[serde(rename = "box")]
    bx: BTreeMap<String, [i64; 2]>,
    entries: Vec<EntryFile>,
}

#[derive(Serialize, Deserialize)]
struct EntryFile {
    sym: String,
    poly: String,
}

fn axis_names<F>(kind: &AlgebraKind<F>) -> (&'static str, Option<&'static str>) {
    match kind {
        AlgebraKind::Virasoro => ("i", None),
        AlgebraKind::LoopVirasoro => ("i", Some("j")),
        _ => ("m", Some("i")),
    }
}

pub fn table_to_json<F: ParseScalar>(table: &ActionTable<F>) -> String {
    let (a, b) = axis_names(&table.kind);
    let mut bx = BTreeMap::new();
    bx.insert(a.to_string(), [table.bx.first.0, table.bx.first.1]);
    if let Some(b) = b {
        bx.insert(b.to_string(), [table.bx.second.0, table.bx.second.1]);
    }
    let (k, l) = match table.kind {
        AlgebraKind::BlockTrunc { k, l, .. } => (Some(k), Some(l)),
        _ => (None, None),
    };
    let file = TableFile {
        algebra: table.kind.name().to_string(),
        q: table.kind.q().map(|q| q.to_string()),
        k,
        l,
        bx,
        entries: table
            .entries
            .iter()
            .map(|(sym, poly)| EntryFile {
                sym: sym.to_string(),
                poly: poly.to_string(),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&file).expect("table serializes")
}

fn kind_from_file<F: ParseScalar>(file: &TableFile) -> Result<AlgebraKind<F>, Error> {
    let q = || -> Result<F, Error> {
        let text = file
            .q
            .as_deref()
            .ok_or_else(|| Error::Table(format!("algebra {} needs \"q\"", file.algebra)))?;
        Ok(parse_scalar(text)?)
    };
    let kind = match file.algebra.as_str() {
        "virasoro" => AlgebraKind::Virasoro,
        "loop" => AlgebraKind::LoopVirasoro,
        "block" => AlgebraKind::block(q()?)?,
        "block-hat" => AlgebraKind::block_hat(q()?)?,
        "block-trunc" => {
            let (Some(k), Some(l)) = (file.k, file.l) else {
                return Err(Error::Table("block-trunc needs \"k\" and \"l\"".into()));
            };
            AlgebraKind::block_trunc(q()?, k, l)?
        }
        other => return Err(Error::Table(format!("unknown algebra {other:?}"))),
    };
    Ok(kind)
}

pub fn table_from_json<F: ParseScalar>(text: &str) -> Result<ActionTable<F>, Error> {
    let file: TableFile = serde_json::from_str(text)?;
    let kind = kind_from_file::<F>(&file)?;
    let (a, b) = axis_names(&kind);
    let axis = |name: &str| -> Result<(i64, i64), Error> {
        let [lo, hi] = *file
            .bx
            .get(name)
            .ok_or_else(|| Error::Table(format!("box lacks the axis {name:?}")))?;
        Ok((lo, hi))
    };
    let first = axis(a)?;
    let second = match b {
        Some(b) => axis(b)?,
        None => (0, 0),
    };
    if let Some(extra) = file.bx.keys().find(|k| *k != a && Some(k.as_str()) != b) {
        return Err(Error::Table(format!("unexpected box axis {extra:?}")));
    }
    let bx = IndexBox::new(first, second);
    let mut table = ActionTable::new(kind.clone(), bx);
    for entry in &file.entries {
        let sym = parse_symbol(&kind, &entry.sym)?;
        if let BasisSymbol::L(i, j) = sym {
            if !bx.contains_first(i) || j.is_some_and(|j| !bx.contains_second(j)) {
                return Err(Error::Table(format!("{sym} lies outside the box")));
            }
        }
        let poly = parse_poly(&entry.poly)?;
        if table.entries.insert(sym, poly).is_some() {
            return Err(Error::Table(format!("duplicate entry for {sym}")));
        }
    }
    Ok(table)
}

/// Parses a lone basis symbol such as `L(1,0)` or `C`.
pub fn parse_symbol<F: ParseScalar>(
    kind: &AlgebraKind<F>,
    text: &str,
) -> Result<BasisSymbol, Error> {
    let e = parse_element(kind, text)?;
    let mut terms = e.terms();
    match (terms.next(), terms.next()) {
        (Some((sym, c)), None) if c.is_one() => Ok(*sym),
        _ => Err(Error::Table(format!(
            "{text:?} is not a single basis symbol"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::{build_action_table, ModuleSpec};
    use crate::GaussianRational as Q;

    fn s(text: &str) -> Q {
        text.parse().unwrap()
    }

    #[test]
    fn loop_table_round_trip() {
        let spec = ModuleSpec::loop_module(s("2"), s("i"), s("1/2")).unwrap();
        let table =
            build_action_table(&spec, &AlgebraKind::<Q>::LoopVirasoro.default_box(2)).unwrap();
        let json = table_to_json(&table);
        let back: ActionTable<Q> = table_from_json(&json).unwrap();
        assert_eq!(back, table);
    }

    #[test]
    fn block_table_round_trip() {
        let spec = ModuleSpec::block_hv(s("1/2"), s("2"), s("2")).unwrap();
        let kind = spec.algebra();
        let table = build_action_table(&spec, &kind.default_box(2)).unwrap();
        let json = table_to_json(&table);
        assert!(json.contains("\"q\": \"-1\""));
        assert!(json.contains("\"m\""));
        assert_eq!(table_from_json::<Q>(&json).unwrap(), table);
    }

    #[test]
    fn spec_format_reads() {
        let text = r#"{"algebra":"loop","box":{"i":[-2,2],"j":[-2,2]},
            "entries":[{"sym":"L(1,0)","poly":"2*t-4"},{"sym":"C(0)","poly":"0"}]}"#;
        let table: ActionTable<Q> = table_from_json(text).unwrap();
        assert_eq!(table.entries.len(), 2);
        assert_eq!(table.bx, IndexBox::new((-2, 2), (-2, 2)));
    }

    #[test]
    fn malformed_tables() {
        let bad = [
            r#"{"algebra":"loop","box":{"i":[-1,1]},"entries":[]}"#,
            r#"{"algebra":"block","box":{"m":[-1,1],"i":[0,1]},"entries":[]}"#,
            r#"{"algebra":"loop","box":{"i":[-1,1],"j":[0,1]},"entries":[{"sym":"L(5,0)","poly":"t"}]}"#,
            r#"{"algebra":"loop","box":{"i":[-1,1],"j":[0,1]},"entries":[{"sym":"L(1)","poly":"t"}]}"#,
            r#"{"algebra":"loop","box":{"i":[-1,1],"j":[0,1]},"entries":[{"sym":"L(1,0)","poly":"t +"}]}"#,
            r#"{"algebra":"loop","box":{"i":[-1,1],"j":[0,1]},"entries":[{"sym":"2*L(1,0)","poly":"t"}]}"#,
            r#"{"algebra":"lie","box":{},"entries":[]}"#,
            "not json",
        ];
        for text in bad {
            assert!(table_from_json::<Q>(text).is_err(), "{text}");
        }
    }
}
