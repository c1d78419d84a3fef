//! Machine-readable (JSON) and human-readable renderings of an
//! [`AnalysisReport`].
//!
//! JSON schema, `format_version` 1:
//!
//! ```text
//! {
//!   "format_version": 1,
//!   "verdict": "Live" | "NotLive",
//!   "siphons": [ { "places": [id], "max_trap": [id], "initially_marked": bool } ],
//!   "violation": null | {
//!     "siphon": [id], "max_trap": [id],
//!     "plan": { "chain": [ { "transition": id, "residual": [id] } ],
//!               "bounds": null | [int] },
//!     "witness": null
//!       | { "status": "found", "trace": [id], "marking": { id: int },
//!           "dead_transitions": [id], "siphon": [id],
//!           "picked_places": [ { "transition": id, "place": id } ] }
//!       | { "status": "inconclusive", "max_states": int }
//!   },
//!   "oracle_verdict": null | "Live" | "NotLive" | "Inconclusive"
//! }
//! ```
//!
//! All id lists follow declaration order.

use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

use crate::commoner::{AnalysisReport, DeadWitness, Verdict, WitnessOutcome};
use crate::net::{Marking, Net, PlaceSet, TransitionSet};
use crate::reachability::OracleVerdict;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Serialize)]
struct JsonReport {
    format_version: u32,
    verdict: &'static str,
    siphons: Vec<JsonSiphon>,
    violation: Option<JsonViolation>,
    oracle_verdict: Option<OracleVerdict>,
}

#[derive(Serialize)]
struct JsonSiphon {
    places: Vec<String>,
    max_trap: Vec<String>,
    initially_marked: bool,
}

#[derive(Serialize)]
struct JsonViolation {
    siphon: Vec<String>,
    max_trap: Vec<String>,
    plan: JsonPlan,
    witness: Option<JsonWitness>,
}

#[derive(Serialize)]
struct JsonPlan {
    chain: Vec<JsonStep>,
    bounds: Option<Vec<u64>>,
}

#[derive(Serialize)]
struct JsonStep {
    transition: String,
    residual: Vec<String>,
}

#[derive(Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
enum JsonWitness {
    Found {
        trace: Vec<String>,
        marking: NamedMarking,
        dead_transitions: Vec<String>,
        siphon: Vec<String>,
        picked_places: Vec<JsonPick>,
    },
    Inconclusive {
        max_states: usize,
    },
}

#[derive(Serialize)]
struct JsonPick {
    transition: String,
    place: String,
}

/// A marking serialized as an object keyed by place, in declaration order.
struct NamedMarking(Vec<(String, u32)>);

impl Serialize for NamedMarking {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

fn places(net: &Net, set: &PlaceSet) -> Vec<String> {
    net.place_names(set).into_iter().map(String::from).collect()
}

fn transitions(net: &Net, set: &TransitionSet) -> Vec<String> {
    net.transition_names(set)
        .into_iter()
        .map(String::from)
        .collect()
}

fn named_marking(net: &Net, m: &Marking) -> NamedMarking {
    NamedMarking(
        net.places()
            .map(|p| (net.place_name(p).to_string(), m[p]))
            .collect(),
    )
}

fn witness_json(net: &Net, w: &DeadWitness) -> JsonWitness {
    JsonWitness::Found {
        trace: w
            .trace
            .iter()
            .map(|&t| net.transition_name(t).to_string())
            .collect(),
        marking: named_marking(net, &w.marking),
        dead_transitions: transitions(net, &w.dead_transitions),
        siphon: places(net, &w.siphon),
        picked_places: w
            .picked_places
            .iter()
            .map(|&(t, p)| JsonPick {
                transition: net.transition_name(t).to_string(),
                place: net.place_name(p).to_string(),
            })
            .collect(),
    }
}

pub fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Live => "Live",
        Verdict::NotLive => "NotLive",
    }
}

/// Pretty-printed JSON followed by a newline.
pub fn to_json(net: &Net, report: &AnalysisReport) -> String {
    let json = JsonReport {
        format_version: FORMAT_VERSION,
        verdict: verdict_name(report.verdict),
        siphons: report
            .checked_siphons
            .iter()
            .map(|c| JsonSiphon {
                places: places(net, &c.siphon),
                max_trap: places(net, &c.max_trap),
                initially_marked: c.initially_marked,
            })
            .collect(),
        violation: report.violation.as_ref().map(|v| JsonViolation {
            siphon: places(net, &v.siphon),
            max_trap: places(net, &v.max_trap),
            plan: JsonPlan {
                chain: v
                    .plan
                    .chain
                    .iter()
                    .map(|s| JsonStep {
                        transition: net.transition_name(s.transition).to_string(),
                        residual: places(net, &s.residual),
                    })
                    .collect(),
                bounds: v.plan.bounds.clone(),
            },
            witness: v.witness.as_ref().map(|w| match w {
                WitnessOutcome::Found(w) => witness_json(net, w),
                WitnessOutcome::Inconclusive { max_states } => JsonWitness::Inconclusive {
                    max_states: *max_states,
                },
            }),
        }),
        oracle_verdict: report.oracle_verdict,
    };
    let mut text = serde_json::to_string_pretty(&json).expect("report serializes");
    text.push('\n');
    text
}

pub fn set_text(names: &[&str]) -> String {
    format!("{{{}}}", names.join(", "))
}

/// Plain-text summary for terminals.
pub fn to_text(net: &Net, report: &AnalysisReport) -> String {
    let mut out = format!("verdict: {}\n", verdict_name(report.verdict));
    out.push_str(&format!(
        "minimal siphons: {}\n",
        report.checked_siphons.len()
    ));
    for c in &report.checked_siphons {
        out.push_str(&format!(
            "  siphon {}  max trap {}  {}\n",
            set_text(&net.place_names(&c.siphon)),
            set_text(&net.place_names(&c.max_trap)),
            if c.initially_marked {
                "marked"
            } else {
                "UNMARKED"
            }
        ));
    }
    if let Some(v) = &report.violation {
        out.push_str(&format!(
            "violation: siphon {} contains no marked trap (maximal trap {})\n",
            set_text(&net.place_names(&v.siphon)),
            set_text(&net.place_names(&v.max_trap))
        ));
        let chain: Vec<&str> = v
            .plan
            .priority_transitions()
            .map(|t| net.transition_name(t))
            .collect();
        out.push_str(&format!("priority chain: [{}]\n", chain.join(", ")));
        if let Some(bounds) = &v.plan.bounds {
            let b: Vec<String> = bounds.iter().map(u64::to_string).collect();
            out.push_str(&format!("occurrence bounds: [{}]\n", b.join(", ")));
        }
        match &v.witness {
            Some(WitnessOutcome::Found(w)) => {
                let trace: Vec<&str> = w.trace.iter().map(|&t| net.transition_name(t)).collect();
                out.push_str(&format!("witness trace: [{}]\n", trace.join(", ")));
                out.push_str(&format!(
                    "reached marking: {}\n",
                    crate::reachability::marking_label(net, &w.marking)
                ));
                out.push_str(&format!(
                    "dead there: {}\n",
                    set_text(&net.transition_names(&w.dead_transitions))
                ));
            }
            Some(WitnessOutcome::Inconclusive { max_states }) => {
                out.push_str(&format!(
                    "witness: inconclusive (closure exceeded {max_states} states)\n"
                ));
            }
            None => {}
        }
    }
    if let Some(o) = report.oracle_verdict {
        out.push_str(&format!("oracle: {o:?}\n"));
    }
    out
}
