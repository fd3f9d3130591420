//! Commands that take or produce a single graph.

use std::io::Read;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use turanpack::coloring::{
    equitable_coloring, equitable_coloring_exact, verify_equitable, ExactColoring,
};
use turanpack::constructions::{ConstructionDescriptor, Witness};
use turanpack::graph::{parse_graph, to_graph6};
use turanpack::oracle::brute_force_ex;
use turanpack::packing::{
    find_clique_packing_with, find_disjoint_independent_sets_with, verify_witness, Mode,
    PackingWitness,
};
use turanpack::shifting::{resolve_with, Outcome, StructureCertificate};
use turanpack::{ConstructionId, Graph, Pattern, VertexSet};

use crate::error::CliError;
use crate::record::{OutcomeKind, ResultRecord};
use crate::settings::Settings;

/// Reads a graph from a path, or from stdin when the path is `-`.
pub fn read_graph(input: &str) -> Result<Graph, CliError> {
    let text = if input == "-" {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text)?;
        text
    } else {
        std::fs::read_to_string(input).map_err(|e| CliError::Input(format!("{input}: {e}")))?
    };
    parse_graph(&text).map_err(|e| CliError::Input(e.to_string()))
}

pub fn graph6_string(g: &Graph) -> String {
    String::from_utf8(to_graph6(g)).expect("graph6 is ASCII")
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FamilyParams {
    pub n: Option<usize>,
    pub k: Option<usize>,
    pub p: Option<usize>,
    pub s: Option<usize>,
    pub x: Option<usize>,
    pub parts: Option<usize>,
    pub which: Option<String>,
}

pub fn construction_id(family: &str, params: &FamilyParams) -> Result<ConstructionId, CliError> {
    let need = |v: Option<usize>, name: &str| {
        v.ok_or_else(|| CliError::Precondition(format!("family {family} needs --{name}")))
    };
    Ok(match family {
        "turan" => ConstructionId::Turan { n: need(params.n, "n")?, parts: need(params.parts, "parts")? },
        "hub-join" => ConstructionId::HubJoin {
            k: need(params.k, "k")?,
            n: need(params.n, "n")?,
            p: need(params.p, "p")?,
        },
        "J" | "j" => ConstructionId::J { p: need(params.p, "p")?, s: need(params.s, "s")? },
        "tight-a" => ConstructionId::TightA { k: need(params.k, "k")?, p: need(params.p, "p")? },
        "tight-b" => ConstructionId::TightB {
            k: need(params.k, "k")?,
            p: need(params.p, "p")?,
            x: need(params.x, "x")?,
        },
        "witness" => {
            let which: Witness = params
                .which
                .as_deref()
                .ok_or_else(|| CliError::Precondition("family witness needs --which".into()))?
                .parse()?;
            ConstructionId::Witness { which, p: need(params.p, "p")? }
        }
        other => {
            return Err(CliError::Input(format!(
                "unknown family {other:?}; expected turan, hub-join, J, tight-a, tight-b or witness"
            )))
        }
    })
}

pub fn cmd_construct(family: &str, params: &FamilyParams, output: Option<&Path>) -> Result<ResultRecord, CliError> {
    let id = construction_id(family, params)?;
    let g = id.build()?;
    let descriptor: ConstructionDescriptor = id.descriptor()?;
    if descriptor.expected_edges != g.edge_count() as u64 || descriptor.order != g.order() {
        return Err(CliError::Soundness(format!(
            "{family}: built {} vertices / {} edges, descriptor says {} / {}",
            g.order(),
            g.edge_count(),
            descriptor.order,
            descriptor.expected_edges
        )));
    }
    let graph6 = graph6_string(&g);
    if let Some(path) = output {
        std::fs::write(path, format!("{graph6}\n"))?;
        std::fs::write(path.with_extension("json"), serde_json::to_string_pretty(&descriptor)?)?;
    }
    let payload = json!({ "graph6": graph6, "edges": g.edge_count(), "descriptor": descriptor });
    let mut rec = ResultRecord::new("construct", OutcomeKind::Value, payload).param("family", family);
    for (key, v) in [("n", params.n), ("k", params.k), ("p", params.p), ("s", params.s), ("x", params.x), ("parts", params.parts)] {
        if let Some(v) = v {
            rec = rec.param(key, v);
        }
    }
    if let Some(which) = &params.which {
        rec = rec.param("which", which);
    }
    Ok(rec)
}

pub fn cmd_resolve(g: &Graph, p: usize, settings: &Settings) -> Result<ResultRecord, CliError> {
    let resolution = resolve_with(g, p, &settings.resolve())?;
    let kind = match &resolution.outcome {
        Outcome::Witness { witness } => {
            verify_witness(g, witness, 4, p, Mode::Independent)
                .map_err(|v| CliError::Soundness(format!("witness failed re-verification: {v}")))?;
            OutcomeKind::Witness
        }
        Outcome::Certificate { certificate } => {
            certificate
                .verify(g, p)
                .map_err(|e| CliError::Soundness(format!("certificate failed re-verification: {e}")))?;
            OutcomeKind::Certificate
        }
    };
    Ok(ResultRecord::new("resolve", kind, serde_json::to_value(&resolution)?)
        .param("p", p)
        .param("n", g.order())
        .param("graph6", graph6_string(g)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum PackMode {
    Independent,
    Clique,
}

impl From<PackMode> for Mode {
    fn from(m: PackMode) -> Self {
        match m {
            PackMode::Independent => Mode::Independent,
            PackMode::Clique => Mode::Clique,
        }
    }
}

pub fn cmd_pack(g: &Graph, k: usize, p: usize, mode: PackMode, settings: &Settings) -> Result<ResultRecord, CliError> {
    let search = settings.search();
    let found = match mode {
        PackMode::Independent => find_disjoint_independent_sets_with(g, k, p, &search)?,
        PackMode::Clique => find_clique_packing_with(g, k, p, &search)?,
    };
    let rec = match found {
        Some(w) => {
            verify_witness(g, &w, k, p, mode.into())
                .map_err(|v| CliError::Soundness(format!("witness failed re-verification: {v}")))?;
            ResultRecord::new("pack", OutcomeKind::Witness, json!({ "witness": w }))
        }
        None => ResultRecord::new("pack", OutcomeKind::None, json!({ "witness": null })),
    };
    Ok(rec.param("k", k).param("p", p).param("mode", format!("{mode:?}").to_lowercase()))
}

/// Finds the first object stored under `key` anywhere in `v`.
fn find_key<'a>(v: &'a Value, key: &str) -> Option<&'a Value> {
    match v {
        Value::Object(map) => map
            .get(key)
            .filter(|x| !x.is_null())
            .or_else(|| map.values().find_map(|x| find_key(x, key))),
        Value::Array(items) => items.iter().find_map(|x| find_key(x, key)),
        _ => None,
    }
}

/// Deserialised sets carry a minimal universe; widen it to the graph's.
fn bind(set: &VertexSet, g: &Graph) -> Result<VertexSet, CliError> {
    set.rebind(g.order())
        .ok_or_else(|| CliError::Precondition(format!("set {:?} leaves the graph", set.to_vec())))
}

/// Re-checks a witness or certificate, given raw or inside a result record.
pub fn cmd_verify(g: &Graph, claim: &Value, k: usize, p: usize) -> Result<ResultRecord, CliError> {
    if let Some(raw) = find_key(claim, "certificate") {
        let mut cert: StructureCertificate = serde_json::from_value(raw.clone())?;
        cert.isolated = bind(&cert.isolated, g)?;
        cert.seven_cliques = cert.seven_cliques.iter().map(|c| bind(c, g)).collect::<Result<_, _>>()?;
        cert.verify(g, p)
            .map_err(|e| CliError::Precondition(format!("certificate rejected: {e}")))?;
        return Ok(ResultRecord::new("verify", OutcomeKind::Certificate, json!({ "valid": true }))
            .param("p", p));
    }
    let raw = find_key(claim, "witness").unwrap_or(claim);
    let mut w: PackingWitness = serde_json::from_value(raw.clone())?;
    w.sets = w.sets.iter().map(|s| bind(s, g)).collect::<Result<_, _>>()?;
    verify_witness(g, &w, k, p, w.mode)
        .map_err(|v| CliError::Precondition(format!("witness rejected: {v}")))?;
    Ok(ResultRecord::new("verify", OutcomeKind::Witness, json!({ "valid": true }))
        .param("k", k)
        .param("p", p))
}

pub fn cmd_oracle(n: usize, pattern: Pattern) -> Result<ResultRecord, CliError> {
    let value = brute_force_ex(n, pattern)?;
    Ok(ResultRecord::new("oracle", OutcomeKind::Value, json!({ "value": value }))
        .param("n", n)
        .param("pattern", pattern))
}

pub fn cmd_color(g: &Graph, colors: usize, exact: bool, settings: &Settings) -> Result<ResultRecord, CliError> {
    let check = |c| {
        verify_equitable(g, c).map_err(|v| CliError::Soundness(format!("colouring failed re-verification: {v}")))
    };
    let rec = if !exact {
        let coloring = equitable_coloring(g, colors)?;
        check(&coloring)?;
        ResultRecord::new("color", OutcomeKind::Witness, json!({ "coloring": coloring, "sizes": coloring.class_sizes() }))
    } else {
        match equitable_coloring_exact(g, colors, &settings.search())? {
            ExactColoring::Found { coloring } => {
                check(&coloring)?;
                ResultRecord::new("color", OutcomeKind::Witness, json!({ "coloring": coloring, "sizes": coloring.class_sizes() }))
            }
            ExactColoring::None { biclique: Some(cert) } => {
                if !cert.verify(g, colors) {
                    return Err(CliError::Soundness("biclique certificate failed re-verification".into()));
                }
                ResultRecord::new("color", OutcomeKind::Certificate, json!({ "biclique": cert }))
            }
            ExactColoring::None { biclique: None } => {
                ResultRecord::new("color", OutcomeKind::None, json!({ "coloring": null }))
            }
        }
    };
    Ok(rec.param("colors", colors).param("exact", exact))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construct_examples() {
        let j = construction_id("J", &FamilyParams { p: Some(3), s: Some(3), ..Default::default() }).unwrap();
        let g = j.build().unwrap();
        assert_eq!(g, Graph::disjoint_union(&[Graph::complete(7), Graph::empty(7)]));
        let hub = FamilyParams { k: Some(4), n: Some(19), p: Some(3), ..Default::default() };
        let rec = cmd_construct("hub-join", &hub, None).unwrap();
        assert_eq!(rec.payload["edges"], 115);
        let err = cmd_construct("J", &FamilyParams { p: Some(3), s: Some(2), ..Default::default() }, None).unwrap_err();
        assert!(err.to_string().contains("J undefined here"));
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn resolve_examples() {
        let settings = Settings::default();
        let g = Graph::disjoint_union(&[Graph::complete(7), Graph::empty(7)]);
        assert_eq!(cmd_resolve(&g, 3, &settings).unwrap().outcome, OutcomeKind::Certificate);
        let g = g.without_edge(2, 5).unwrap();
        assert_eq!(cmd_resolve(&g, 3, &settings).unwrap().outcome, OutcomeKind::Witness);
        let g = Graph::disjoint_union(&[Graph::complete(9), Graph::empty(5)]);
        let err = cmd_resolve(&g, 3, &settings).unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(err.to_string().contains("Δ=8"));
    }

    #[test]
    fn verify_accepts_records_and_rejects_forgeries() {
        let settings = Settings::default();
        let g = Graph::cycle(6);
        let rec = cmd_pack(&g, 2, 3, PackMode::Independent, &settings).unwrap();
        let value = serde_json::to_value(&rec).unwrap();
        assert!(cmd_verify(&g, &value, 2, 3).is_ok());
        let forged = json!({ "mode": "independent", "sets": [[0, 1, 2]] });
        assert!(cmd_verify(&g, &forged, 1, 3).is_err());

        let k7e7 = Graph::disjoint_union(&[Graph::complete(7), Graph::empty(7)]);
        let cert = cmd_resolve(&k7e7, 3, &settings).unwrap();
        let value = serde_json::to_value(&cert).unwrap();
        assert_eq!(cmd_verify(&k7e7, &value, 4, 3).unwrap().outcome, OutcomeKind::Certificate);
        assert!(cmd_verify(&Graph::empty(14), &value, 4, 3).is_err());
    }

    #[test]
    fn oracle_and_colour() {
        assert_eq!(cmd_oracle(6, "3K2".parse().unwrap()).unwrap().payload["value"], 10);
        assert_eq!(cmd_oracle(8, "K3".parse().unwrap()).unwrap_err().exit_code(), 3);
        let rec = cmd_color(&Graph::cycle(5), 3, false, &Settings::default()).unwrap();
        assert_eq!(rec.outcome, OutcomeKind::Witness);
        let k33 = Graph::join(&Graph::empty(3), &Graph::empty(3));
        let rec = cmd_color(&k33, 3, true, &Settings::default()).unwrap();
        assert_eq!(rec.outcome, OutcomeKind::Certificate);
    }
}
