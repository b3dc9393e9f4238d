//! JSON encodings. Candidates are indices; rationals are `"p/q"` strings.

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use seqrules::axioms::{AxiomReport, AxiomWitness, Observation};
use seqrules::{CandSet, CommitteeFamily, Rational};

use crate::profile_file::format_profile;

pub fn set(s: CandSet) -> Value {
    json!(s.to_vec())
}

pub fn family(f: &CommitteeFamily) -> Value {
    json!({ "k": f.k(), "committees": f.iter().map(|w| set(*w)).collect::<Vec<_>>() })
}

pub fn rational(r: &Rational) -> Value {
    Value::String(r.to_pq())
}

pub fn observation(o: &Observation) -> Value {
    match o {
        Observation::Outcome { label, profile, k, family: f } => json!({
            "label": label,
            "profile": format_profile(profile),
            "k": k,
            "committees": f.iter().map(|w| set(*w)).collect::<Vec<_>>(),
        }),
        Observation::Generator { label, profile, committee, output } => json!({
            "label": label,
            "profile": format_profile(profile),
            "committee": set(*committee),
            "output": set(*output),
        }),
    }
}

pub fn witness(w: &AxiomWitness) -> Value {
    json!({
        "summary": w.summary,
        "observations": w.observations.iter().map(observation).collect::<Vec<_>>(),
    })
}

pub fn axiom_report(r: &AxiomReport) -> Value {
    json!({
        "axiom": r.axiom.name(),
        "verdict": r.verdict.as_str(),
        "bounds": r.bounds,
        "instances": r.instances,
        "note": r.note,
        "witness": r.witness.as_ref().map(witness),
    })
}

/// SHA-256 of the compact encoding of `inputs`, in hex.
pub fn digest(inputs: &Value) -> String {
    let bytes = serde_json::to_vec(inputs).expect("JSON values serialize");
    Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect()
}

/// A report with the header fields every command shares.
pub fn envelope(command: &str, inputs: Value, body: Value) -> Value {
    let mut out = json!({ "command": command, "inputs_sha256": digest(&inputs), "inputs": inputs });
    if let (Some(out), Value::Object(body)) = (out.as_object_mut(), body) {
        out.extend(body);
    }
    out
}

pub fn render(report: &Value) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("JSON values serialize");
    s.push('\n');
    s
}
