use serde_json::{json, Value};

use seqrules::axioms::{run_suite, Bounds, Suite, Verdict};
use seqrules::engine::{marginal_scores, DEFAULT_BRANCH_CAP};
use seqrules::witnesses::{
    witness_clone_acceptance, witness_clone_proportionality, witness_clone_rejection, witness_distrust, Witness,
};
use seqrules::{catalog, Error, Profile, Rule};

use crate::profile_file::{format_profile, parse_profile};
use crate::report::{self, envelope, family, rational, set};
use crate::table_file::{parse_counting, CountingTable};
use crate::{CliError, EXIT_OK, EXIT_VIOLATION};

/// A report and the exit status it calls for.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub report: Value,
    pub exit: u8,
}

/// A named input file: the path for messages, the text for parsing.
#[derive(Debug, Clone, Copy)]
pub struct Input<'a> {
    pub path: &'a str,
    pub text: &'a str,
}

fn profile(input: Input<'_>) -> Result<Profile, CliError> {
    parse_profile(input.text).map_err(|source| CliError::Parse { path: input.path.to_string(), source })
}

fn table(input: Input<'_>) -> Result<CountingTable, CliError> {
    parse_counting(input.text).map_err(|source| CliError::Parse { path: input.path.to_string(), source })
}

/// The catalog rule `name`, or the rule of a counting table labelled `name`.
fn resolve_rule(name: &str, counting: Option<Input<'_>>, m: usize, branch_cap: usize) -> Result<Rule, CliError> {
    let rule = match counting {
        Some(input) => {
            let t = table(input)?;
            if t.m() < m {
                return Err(CliError::Usage(format!(
                    "{}: table is defined for m={} but m={m} is needed",
                    input.path,
                    t.m()
                )));
            }
            t.rule(name)?
        }
        None => catalog::by_name(name, m)?,
    };
    Ok(rule.with_branch_cap(branch_cap))
}

/// `f(A, 0..=k)` and, for valuation rules, the marginal score of every
/// candidate outside every committee of the trace below size `k`.
pub fn compute(
    rule_name: &str,
    profile_input: Input<'_>,
    k: usize,
    counting: Option<Input<'_>>,
    branch_cap: Option<usize>,
) -> Result<Outcome, CliError> {
    let a = profile(profile_input)?;
    let cap = branch_cap.unwrap_or(DEFAULT_BRANCH_CAP);
    if k > a.m() {
        return Err(Error::CommitteeTooLarge { k, m: a.m() }.into());
    }
    let rule = resolve_rule(rule_name, counting, a.m(), cap)?;
    let trace = rule.trace(&a, k)?;
    let scores = match rule.valuation() {
        None => Value::Null,
        Some(v) => {
            let mut rows = Vec::new();
            for level in &trace[..k] {
                for w in level.iter() {
                    let marginals = marginal_scores(v, &a, *w)?
                        .iter()
                        .map(|(c, s)| json!({ "candidate": c, "score": rational(s) }))
                        .collect::<Vec<_>>();
                    rows.push(json!({ "committee": set(*w), "marginals": marginals }));
                }
            }
            Value::Array(rows)
        }
    };
    let inputs = json!({
        "rule": rule_name,
        "profile": format_profile(&a),
        "k": k,
        "counting": counting.map(|c| c.text),
        "branch_cap": cap,
    });
    let body = json!({
        "rule": rule.name(),
        "class": rule.class().as_str(),
        "trace": trace.iter().map(family).collect::<Vec<_>>(),
        "winners": family(trace.last().expect("trace is nonempty")),
        "scores": scores,
    });
    Ok(Outcome { report: envelope("compute", inputs, body), exit: EXIT_OK })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AxiomsArgs {
    pub bounds: Bounds,
    pub branch_cap: usize,
}

impl Default for AxiomsArgs {
    fn default() -> Self {
        AxiomsArgs { bounds: Bounds::default(), branch_cap: DEFAULT_BRANCH_CAP }
    }
}

/// One report per axiom of the suite; exits with [`EXIT_VIOLATION`] if any
/// check found a violation.
pub fn axioms(
    rule_name: &str,
    suite: &str,
    args: AxiomsArgs,
    counting: Option<Input<'_>>,
) -> Result<Outcome, CliError> {
    let parsed: Suite = suite.parse().map_err(|_| CliError::Usage(format!("unknown suite `{suite}`")))?;
    let b = args.bounds;
    let rule = resolve_rule(rule_name, counting, b.max_m, args.branch_cap)?;
    let reports = run_suite(&rule, parsed, &b)?;
    let violations = reports.iter().filter(|r| r.verdict == Verdict::Violation).count();
    let inputs = json!({
        "rule": rule_name,
        "suite": suite,
        "counting": counting.map(|c| c.text),
        "bounds": {
            "min_m": b.min_m,
            "max_m": b.max_m,
            "max_voters": b.max_voters,
            "pair_max_voters": b.pair_max_voters,
            "j_max": b.j_max,
            "max_bloc": b.max_bloc,
            "max_bloc_k": b.max_bloc_k,
            "max_w": b.max_w,
        },
        "branch_cap": args.branch_cap,
    });
    let body = json!({
        "rule": rule.name(),
        "suite": suite,
        "violations": violations,
        "reports": reports.iter().map(report::axiom_report).collect::<Vec<_>>(),
    });
    let exit = if violations > 0 { EXIT_VIOLATION } else { EXIT_OK };
    Ok(Outcome { report: envelope("axioms", inputs, body), exit })
}

pub const WITNESS_KINDS: [&str; 4] = ["clone-rejection", "distrust", "clone-acceptance", "clone-proportionality"];

/// Builds the witness of `kind` for a Thiele table and replays it on the
/// table's rule. A verified witness is a violation and exits with
/// [`EXIT_VIOLATION`]; a table for which no witness exists gets a report
/// saying so and exits normally.
pub fn witness(kind: &str, counting: Input<'_>) -> Result<Outcome, CliError> {
    let construct: fn(&seqrules::ThieleCounting) -> seqrules::Result<Witness> = match kind {
        "clone-rejection" => witness_clone_rejection,
        "distrust" => witness_distrust,
        "clone-acceptance" => witness_clone_acceptance,
        "clone-proportionality" => witness_clone_proportionality,
        _ => {
            return Err(CliError::Usage(format!(
                "unknown witness kind `{kind}`, expected one of {}",
                WITNESS_KINDS.join(", ")
            )))
        }
    };
    let CountingTable::Thiele(h) = table(counting)? else {
        return Err(CliError::Usage(format!("{}: witness constructions need a table h(x)", counting.path)));
    };
    let inputs = json!({ "kind": kind, "counting": counting.text });
    let absent = |status: &str, message: String| Outcome {
        report: envelope("witness", inputs.clone(), json!({ "status": status, "message": message })),
        exit: EXIT_OK,
    };
    let w = match construct(&h) {
        Ok(w) => w,
        Err(Error::NoWitness(msg)) => return Ok(absent("no-witness", msg)),
        Err(Error::NotApplicable(msg)) => return Ok(absent("not-applicable", msg)),
        Err(e) => return Err(e.into()),
    };
    let check = w.verify(&catalog::make_seq_thiele("h", h)?)?;
    let status = if check.holds() { "verified" } else { "not-reproduced" };
    let body = json!({
        "status": status,
        "axiom": w.axiom.name(),
        "construction": w.construction,
        "x": w.x,
        "delta": rational(&w.delta),
        "ell": w.ell,
        "k": w.k,
        "profile": format_profile(&w.profile),
        "claim": w.claim,
        "expected": w.expected.iter().map(family).collect::<Vec<_>>(),
        "observed": check.observed.iter().map(family).collect::<Vec<_>>(),
        "violation": check.violation.as_ref().map(report::witness),
    });
    let exit = if check.holds() { EXIT_VIOLATION } else { EXIT_OK };
    Ok(Outcome { report: envelope("witness", inputs, body), exit })
}

/// Canonical text of a profile file.
pub fn format(profile_input: Input<'_>) -> Result<String, CliError> {
    Ok(format_profile(&profile(profile_input)?))
}

/// The named rules of the catalog.
pub fn rules() -> Value {
    let rows: Vec<Value> = catalog::RULES
        .iter()
        .map(|s| {
            json!({
                "name": s.name,
                "class": s.class.as_str(),
                "summary": s.summary,
                "violates": s.violates.map(|a| a.name()),
            })
        })
        .collect();
    json!({ "command": "rules", "rules": rows })
}
