//! JSON formats for networks, planar graphs and solver reports.
//!
//! Infinite values are written as the string `"inf"`. Output goes through
//! `serde_json::Value`, whose maps are ordered, so keys come out sorted.

use std::io::Read;
use std::path::Path;

use planarint_core::ext::{ExtInt, Finite, Inf};
use planarint_core::reductions::PlanarGraph;
use planarint_core::{Arc, Dart, EmbeddedNetwork, End, Vertex};
use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("cannot read {path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
}

/// Integer or `"inf"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct JsonExt(pub ExtInt);

impl Serialize for JsonExt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0 {
            Finite(x) => s.serialize_i64(x),
            Inf => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for JsonExt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(x) => Ok(JsonExt(Finite(x))),
            Raw::Str(s) if s == "inf" => Ok(JsonExt(Inf)),
            Raw::Str(s) => Err(de::Error::custom(format!("expected an integer or \"inf\", got {s:?}"))),
        }
    }
}

fn inf() -> JsonExt {
    JsonExt(Inf)
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
enum JsonEnd {
    Tail,
    Head,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
struct JsonDart {
    arc: usize,
    end: JsonEnd,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
struct JsonVertex {
    #[serde(default = "inf")]
    cost: JsonExt,
    #[serde(default)]
    demand: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    capacity: Option<JsonExt>,
    rotation: Vec<JsonDart>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
struct JsonArc {
    tail: usize,
    head: usize,
    upper: i64,
    #[serde(default)]
    lower: i64,
    #[serde(default = "inf")]
    cost: JsonExt,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
struct JsonNetwork {
    vertices: Vec<JsonVertex>,
    arcs: Vec<JsonArc>,
    sources: Vec<usize>,
    sinks: Vec<usize>,
}

impl From<&EmbeddedNetwork> for JsonNetwork {
    fn from(net: &EmbeddedNetwork) -> Self {
        JsonNetwork {
            vertices: net
                .vertices
                .iter()
                .map(|v| JsonVertex {
                    cost: JsonExt(v.cost),
                    demand: v.demand,
                    capacity: v.capacity.map(JsonExt),
                    rotation: v
                        .rotation
                        .iter()
                        .map(|d| JsonDart {
                            arc: d.arc,
                            end: match d.end {
                                End::Tail => JsonEnd::Tail,
                                End::Head => JsonEnd::Head,
                            },
                        })
                        .collect(),
                })
                .collect(),
            arcs: net
                .arcs
                .iter()
                .map(|a| JsonArc {
                    tail: a.tail,
                    head: a.head,
                    upper: a.upper,
                    lower: a.lower,
                    cost: JsonExt(a.cost),
                })
                .collect(),
            sources: net.sources.clone(),
            sinks: net.sinks.clone(),
        }
    }
}

impl From<JsonNetwork> for EmbeddedNetwork {
    fn from(j: JsonNetwork) -> Self {
        EmbeddedNetwork {
            vertices: j
                .vertices
                .into_iter()
                .map(|v| Vertex {
                    rotation: v
                        .rotation
                        .into_iter()
                        .map(|d| match d.end {
                            JsonEnd::Tail => Dart::tail(d.arc),
                            JsonEnd::Head => Dart::head(d.arc),
                        })
                        .collect(),
                    cost: v.cost.0,
                    demand: v.demand,
                    capacity: v.capacity.map(|c| c.0),
                })
                .collect(),
            arcs: j
                .arcs
                .into_iter()
                .map(|a| Arc {
                    tail: a.tail,
                    head: a.head,
                    upper: a.upper,
                    lower: a.lower,
                    cost: a.cost.0,
                })
                .collect(),
            sources: j.sources,
            sinks: j.sinks,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
struct JsonGraph {
    edges: Vec<(usize, usize)>,
    rotations: Vec<Vec<usize>>,
}

pub fn network_to_value(net: &EmbeddedNetwork) -> Value {
    serde_json::to_value(JsonNetwork::from(net)).expect("network serializes")
}

pub fn network_from_str(s: &str) -> Result<EmbeddedNetwork, IoError> {
    let j: JsonNetwork = serde_json::from_str(s)?;
    Ok(j.into())
}

pub fn graph_from_str(s: &str) -> Result<PlanarGraph, IoError> {
    let j: JsonGraph = serde_json::from_str(s)?;
    Ok(PlanarGraph {
        edges: j.edges,
        rotations: j.rotations,
    })
}

pub fn graph_to_value(g: &PlanarGraph) -> Value {
    serde_json::to_value(JsonGraph {
        edges: g.edges.clone(),
        rotations: g.rotations.clone(),
    })
    .expect("graph serializes")
}

/// Reads a file, or standard input for `-`.
pub fn read_input(path: &Path) -> Result<String, IoError> {
    let err = |source| IoError::Read {
        path: path.display().to_string(),
        source,
    };
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(err)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(err)
    }
}

pub fn ext_value(x: ExtInt) -> Value {
    serde_json::to_value(JsonExt(x)).expect("extended integer serializes")
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("value serializes");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use planarint_core::gen::{random_planar, GenConfig, Terminals};
    use proptest::prelude::*;

    #[test]
    fn defaults_and_infinity() {
        let net = network_from_str(
            r#"{"vertices":[{"rotation":[{"arc":0,"end":"tail"}]},
                            {"cost":2,"rotation":[{"arc":0,"end":"head"}]}],
                "arcs":[{"tail":0,"head":1,"upper":3}],
                "sources":[0],"sinks":[1]}"#,
        )
        .unwrap();
        assert_eq!(net.vertices[0].cost, Inf);
        assert_eq!(net.vertices[1].cost, Finite(2));
        assert_eq!(net.arcs[0].cost, Inf);
        assert_eq!(net.arcs[0].lower, 0);
        let out = network_to_value(&net);
        assert_eq!(out["arcs"][0]["cost"], "inf");
    }

    #[test]
    fn rejects_bad_values() {
        let bad = r#"{"vertices":[],"arcs":[{"tail":0,"head":1,"upper":3,"cost":"many"}],"sources":[],"sinks":[]}"#;
        assert!(network_from_str(bad).is_err());
        assert!(network_from_str("{").is_err());
    }

    #[test]
    fn keys_are_sorted() {
        let net = random_planar(3, 3, 1, &GenConfig::default(), Terminals::SinglePair);
        let text = render(&network_to_value(&net));
        let arcs = text.find("\"arcs\"").unwrap();
        let sinks = text.find("\"sinks\"").unwrap();
        let sources = text.find("\"sources\"").unwrap();
        let vertices = text.find("\"vertices\"").unwrap();
        assert!(arcs < sinks && sinks < sources && sources < vertices);
    }

    proptest! {
        #[test]
        fn round_trip(seed in 0u64..2000, n in 2usize..9, extra in 0usize..6, vertices in proptest::bool::ANY) {
            let cfg = if vertices { GenConfig::with_vertices() } else { GenConfig::default() };
            let t = Terminals::Balanced { max_terminals: 3, max_demand: 4 };
            let net = random_planar(n, n - 1 + extra, seed, &cfg, t);
            let text = render(&network_to_value(&net));
            prop_assert_eq!(network_from_str(&text).unwrap(), net);
        }
    }
}
