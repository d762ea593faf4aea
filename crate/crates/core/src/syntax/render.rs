use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::htc::{DomainValue, Interpretation, Sort, Valuation};
use crate::linear::Bounds;
use crate::program::{complement_closure, AnswerSet, Rule, TAtom, TProgram};
use crate::search::{Side, ValuationSpace};
use crate::sequiv::SequivVerdict;
use crate::translate::TranslationOutput;

/// Version of the record layout.
pub const SCHEMA_VERSION: u64 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Record,
}

pub fn render_rule(r: &Rule) -> String {
    let mut out = String::new();
    if let Some(h) = &r.head {
        write!(out, "{h}").unwrap();
    }
    let body: Vec<String> = r
        .pos
        .iter()
        .map(|a| a.to_string())
        .chain(r.neg.iter().map(|a| format!("not {a}")))
        .collect();
    if !body.is_empty() || r.head.is_none() {
        if r.head.is_some() {
            out.push(' ');
        }
        out.push_str(":- ");
        out.push_str(&body.join(", "));
    }
    out.push('.');
    out
}

/// Canonical program text: bounds, the externals not implied by rule
/// bodies, then the rules in order.
pub fn render_program(p: &TProgram) -> String {
    let mut out = format!("#bounds {}.\n", p.bounds());
    let implied = complement_closure(
        p.rules()
            .iter()
            .flat_map(Rule::body_atoms)
            .filter_map(TAtom::theory),
    );
    let mut declared = BTreeSet::new();
    for s in p.externals() {
        if !implied.contains(s) && !declared.contains(&s.complement()) {
            declared.insert(s.clone());
        }
    }
    for s in &declared {
        writeln!(out, "#external {s}.").unwrap();
    }
    for r in p.rules() {
        writeln!(out, "{}", render_rule(r)).unwrap();
    }
    out
}

fn plural(n: usize, what: &str) -> String {
    if n == 1 {
        format!("{n} {what}")
    } else {
        format!("{n} {what}s")
    }
}

fn model_list(lines: Vec<String>, what: &str) -> String {
    if lines.is_empty() {
        return "UNSATISFIABLE (0 models)\n".to_string();
    }
    let n = lines.len();
    let mut out = String::new();
    for l in lines {
        out.push_str(&l);
        out.push('\n');
    }
    writeln!(out, "SATISFIABLE ({})", plural(n, what)).unwrap();
    out
}

pub fn render_answer_set(a: &AnswerSet) -> String {
    format!("answer set: {a}")
}

pub fn render_atom_set(x: &BTreeSet<TAtom>) -> String {
    let atoms: Vec<String> = x.iter().map(|a| a.to_string()).collect();
    format!("{{{}}}", atoms.join(", "))
}

fn record(kind: &str, bounds: Bounds, payload: Value) -> String {
    let v = json!({
        "schema": SCHEMA_VERSION,
        "kind": kind,
        "bounds": {"lo": bounds.lo(), "hi": bounds.hi()},
        "payload": payload,
    });
    format!("{v}\n")
}

fn value_json(d: DomainValue) -> Value {
    match d {
        DomainValue::Int(i) => json!(i),
        DomainValue::Truth => json!("t"),
    }
}

/// Sorted `[name, value]` pairs; undefined variables are omitted.
pub fn valuation_json(v: &Valuation) -> Value {
    Value::Array(
        v.iter()
            .map(|(x, d)| json!([x.as_str(), value_json(d)]))
            .collect(),
    )
}

fn interpretation_json(i: &Interpretation) -> Value {
    json!({"here": valuation_json(i.here()), "there": valuation_json(i.there())})
}

pub fn render_program_as(p: &TProgram, format: Format) -> String {
    match format {
        Format::Text => render_program(p),
        Format::Record => record(
            "program",
            p.bounds(),
            json!({
                "text": render_program(p),
                "rules": p.rules().iter().map(render_rule).collect::<Vec<_>>(),
                "externals": p.externals().iter().map(|s| s.to_string()).collect::<Vec<_>>(),
                "founded": p.founded().iter().map(|s| s.to_string()).collect::<Vec<_>>(),
            }),
        ),
    }
}

pub fn render_answer_sets(sets: &[AnswerSet], bounds: Bounds, format: Format) -> String {
    match format {
        Format::Text => model_list(sets.iter().map(render_answer_set).collect(), "answer set"),
        Format::Record => record(
            "answer_sets",
            bounds,
            Value::Array(
                sets.iter()
                    .map(|a| {
                        json!({
                            "regular": a.regular.iter().map(|v| v.as_str()).collect::<Vec<_>>(),
                            "valuation": valuation_json(&a.valuation),
                        })
                    })
                    .collect(),
            ),
        ),
    }
}

pub fn render_stable_models(
    models: &[BTreeSet<TAtom>],
    definition: &str,
    bounds: Bounds,
    format: Format,
) -> String {
    match format {
        Format::Text => model_list(
            models
                .iter()
                .map(|x| format!("stable model: {}", render_atom_set(x)))
                .collect(),
            "stable model",
        ),
        Format::Record => record(
            "stable_models",
            bounds,
            json!({
                "definition": definition,
                "models": models
                    .iter()
                    .map(|x| x.iter().map(|a| a.to_string()).collect::<Vec<_>>())
                    .collect::<Vec<_>>(),
            }),
        ),
    }
}

pub fn render_models(models: &[Interpretation], bounds: Bounds, format: Format) -> String {
    match format {
        Format::Text => model_list(
            models.iter().map(|i| format!("model: {i}")).collect(),
            "model",
        ),
        Format::Record => record(
            "models",
            bounds,
            Value::Array(models.iter().map(interpretation_json).collect()),
        ),
    }
}

pub fn render_translation(t: &TranslationOutput, name: &str, format: Format) -> String {
    let space = ValuationSpace::of_signature(&t.signature);
    let bounds = t.signature.bounds();
    match format {
        Format::Text => {
            let mut out = String::new();
            for (x, s) in space.vars() {
                let range = match s {
                    Sort::Boolean => "t".to_string(),
                    Sort::Integer => bounds.to_string(),
                };
                writeln!(out, "% var {x} : {range}").unwrap();
            }
            for (f, tag) in t.entries() {
                writeln!(out, "{f}.  % {tag}").unwrap();
            }
            out
        }
        Format::Record => record(
            "translation",
            bounds,
            json!({
                "translation": name,
                "variables": space.vars().iter().map(|(x, s)| json!([
                    x.as_str(),
                    match s { Sort::Boolean => "boolean", Sort::Integer => "integer" },
                ])).collect::<Vec<_>>(),
                "formulas": t.entries().map(|(f, tag)| json!({
                    "formula": f.to_string(),
                    "provenance": tag.to_string(),
                })).collect::<Vec<_>>(),
            }),
        ),
    }
}

fn side_name(side: Side) -> &'static str {
    match side {
        Side::LeftOnly => "first",
        Side::RightOnly => "second",
    }
}

fn valuations_text(vs: &[Valuation]) -> String {
    let items: Vec<String> = vs.iter().map(|v| v.to_string()).collect();
    format!("[{}]", items.join(", "))
}

/// Renders a verdict. `space` is the joint valuation space the verdict was
/// computed over.
pub fn render_verdict(v: &SequivVerdict, space: &ValuationSpace, format: Format) -> String {
    match (v, format) {
        (SequivVerdict::Equivalent { bounds }, Format::Text) => {
            format!("Equivalent (bounds {bounds})\n")
        }
        (SequivVerdict::Equivalent { bounds }, Format::Record) => {
            record("verdict", *bounds, json!({"equivalent": true}))
        }
        (
            SequivVerdict::NotEquivalent {
                bounds,
                countermodel,
                side,
                witness,
                evidence,
            },
            Format::Text,
        ) => {
            let mut out = format!("Not equivalent (bounds {bounds})\n");
            writeln!(
                out,
                "countermodel: {countermodel} satisfies only the {} program",
                side_name(*side)
            )
            .unwrap();
            writeln!(out, "witness context ({} case):", witness.case).unwrap();
            for line in witness.render(space) {
                writeln!(out, "  {line}").unwrap();
            }
            writeln!(out, "stable models under the context:").unwrap();
            writeln!(out, "  first:  {}", valuations_text(&evidence.left)).unwrap();
            writeln!(out, "  second: {}", valuations_text(&evidence.right)).unwrap();
            out
        }
        (
            SequivVerdict::NotEquivalent {
                bounds,
                countermodel,
                side,
                witness,
                evidence,
            },
            Format::Record,
        ) => record(
            "verdict",
            *bounds,
            json!({
                "equivalent": false,
                "countermodel": interpretation_json(countermodel),
                "satisfied_by": side_name(*side),
                "witness": {
                    "case": witness.case.to_string(),
                    "statements": witness.render(space),
                },
                "evidence": {
                    "first": evidence.left.iter().map(valuation_json).collect::<Vec<_>>(),
                    "second": evidence.right.iter().map(valuation_json).collect::<Vec<_>>(),
                },
            }),
        ),
    }
}
