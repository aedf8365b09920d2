//! JSON documents for polytopes and functionals.
//!
//! Output is canonical: fixed key order, edges normalized and sorted,
//! rationals in lowest terms. Parsing then writing a canonical document
//! reproduces it byte for byte.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::orientation::Functional;
use crate::polytope::Polytope;
use crate::scalar::{parse_scalar, Scalar};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PolytopeDoc {
    dim: usize,
    n: usize,
    edges: Vec<[usize; 2]>,
    faces2: Vec<Vec<usize>>,
    #[serde(default)]
    coords: Option<Vec<Vec<String>>>,
    #[serde(default)]
    name: Option<String>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
enum FunctionalDoc {
    Vector(Vec<String>),
    Order(Vec<usize>),
}

fn json_error(what: &str, e: serde_json::Error) -> Error {
    Error::Parse(format!("{what}: line {}, column {}: {e}", e.line(), e.column()))
}

fn scalar<S: Scalar>(text: &str, place: impl FnOnce() -> String) -> Result<S> {
    parse_scalar(text).ok_or_else(|| Error::Parse(format!("{}: {text:?} is not a rational p/q", place())))
}

pub fn parse_polytope<S: Scalar>(text: &str) -> Result<Polytope<S>> {
    let doc: PolytopeDoc = serde_json::from_str(text).map_err(|e| json_error("polytope document", e))?;
    let coords = match doc.coords {
        None => None,
        Some(rows) => Some(
            rows.iter()
                .enumerate()
                .map(|(i, row)| {
                    row.iter().enumerate().map(|(j, t)| scalar(t, || format!("coords[{i}][{j}]"))).collect::<Result<Vec<S>>>()
                })
                .collect::<Result<Vec<_>>>()?,
        ),
    };
    Polytope::from_parts(doc.dim, doc.n, doc.edges, doc.faces2, coords, doc.name)
}

pub fn parse_functional<S: Scalar>(text: &str) -> Result<Functional<S>> {
    let doc: FunctionalDoc = serde_json::from_str(text).map_err(|e| json_error("functional document", e))?;
    Ok(match doc {
        FunctionalDoc::Vector(c) => {
            Functional::Vector(c.iter().enumerate().map(|(i, t)| scalar(t, || format!("vector[{i}]"))).collect::<Result<_>>()?)
        }
        FunctionalDoc::Order(o) => Functional::Order(o),
    })
}

fn compact<T: Serialize + ?Sized>(v: &T) -> String {
    serde_json::to_string(v).expect("plain data serializes")
}

/// One key per line, values compact.
pub fn polytope_to_json<S: Scalar>(p: &Polytope<S>) -> String {
    let mut lines = vec![
        format!("  \"dim\": {}", p.dim()),
        format!("  \"n\": {}", p.n_vertices()),
        format!("  \"edges\": {}", compact(p.edges())),
        format!("  \"faces2\": {}", compact(p.faces())),
    ];
    if let Some(rows) = p.coords() {
        let rows: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(S::to_string).collect()).collect();
        lines.push(format!("  \"coords\": {}", compact(&rows)));
    }
    if let Some(name) = p.name() {
        lines.push(format!("  \"name\": {}", compact(name)));
    }
    format!("{{\n{}\n}}\n", lines.join(",\n"))
}

pub fn functional_to_json<S: Scalar>(f: &Functional<S>) -> String {
    let doc = match f {
        Functional::Vector(c) => FunctionalDoc::Vector(c.iter().map(S::to_string).collect()),
        Functional::Order(o) => FunctionalDoc::Order(o.clone()),
    };
    compact(&doc) + "\n"
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::FamilySpec;
    use crate::Rational;

    #[test]
    fn round_trip_is_byte_stable() {
        for spec in [FamilySpec::StackedX(7), FamilySpec::Prism(4), FamilySpec::WedgeEdge(5), FamilySpec::CompleteDag(5), FamilySpec::Hypercube(4)] {
            let (p, f) = spec.make::<Rational>().unwrap();
            let text = polytope_to_json(&p);
            let back: Polytope<Rational> = parse_polytope(&text).unwrap();
            assert_eq!(polytope_to_json(&back), text, "{spec}");
            let ftext = functional_to_json(&f);
            assert_eq!(functional_to_json(&parse_functional::<Rational>(&ftext).unwrap()), ftext);
        }
    }

    #[test]
    fn rationals_are_canonicalized() {
        let text = r#"{"dim":2,"n":3,"edges":[[1,0],[1,2],[0,2]],"faces2":[[0,1,2]],"coords":[["0","0"],["2/2","0"],["0","-4/8"]]}"#;
        let p: Polytope<Rational> = parse_polytope(text).unwrap();
        let out = polytope_to_json(&p);
        assert!(out.contains(r#""coords": [["0","0"],["1","0"],["0","-1/2"]]"#));
        assert!(out.contains(r#""edges": [[0,1],[0,2],[1,2]]"#));
    }

    #[test]
    fn errors_carry_location() {
        let err = parse_polytope::<Rational>("{\n  \"dim\": 3,\n  \"n\": x\n}").unwrap_err();
        let Error::Parse(msg) = err else { panic!("{err:?}") };
        assert!(msg.contains("line 3"), "{msg}");
        let err = parse_polytope::<Rational>(r#"{"dim":2,"n":3,"edges":[[0,1],[1,2],[0,2]],"faces2":[],"coords":[["0","0"],["1","q"],["0","1"]]}"#).unwrap_err();
        assert!(matches!(&err, Error::Parse(m) if m.contains("coords[1][1]")), "{err:?}");
        assert!(parse_polytope::<Rational>(r#"{"dim":2,"n":3,"edges":[],"faces2":[],"extra":1}"#).is_err());
        assert!(matches!(parse_polytope::<Rational>(r#"{"dim":2,"n":3,"edges":[[0,1]],"faces2":[]}"#), Err(Error::InvalidPolytope(_))));
    }

    #[test]
    fn functional_forms() {
        let f: Functional<Rational> = parse_functional(r#"{"vector": ["1", "2/4"]}"#).unwrap();
        assert_eq!(functional_to_json(&f), "{\"vector\":[\"1\",\"1/2\"]}\n");
        let g: Functional<Rational> = parse_functional(r#"{"order": [2, 0, 1]}"#).unwrap();
        assert_eq!(g, Functional::Order(vec![2, 0, 1]));
        assert!(parse_functional::<Rational>(r#"{"both": []}"#).is_err());
    }
}
