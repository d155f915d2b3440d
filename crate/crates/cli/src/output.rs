use std::process::ExitCode;

use clap::ValueEnum;
use covercraft::suites::SCHEMA;
use covercraft::Error;
use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Ok = 0,
    Counterexample = 1,
    Invalid = 2,
    Exhausted = 3,
}

pub struct Output {
    pub body: Value,
    pub outcome: Outcome,
}

impl Output {
    pub fn new(body: Value) -> Self {
        Output {
            body,
            outcome: Outcome::Ok,
        }
    }

    pub fn with(mut self, outcome: Outcome) -> Self {
        self.outcome = outcome;
        self
    }

    pub fn emit(self, format: Format) -> ExitCode {
        println!("{}", render(self.body, format));
        ExitCode::from(self.outcome as u8)
    }
}

fn stamp(body: Value) -> Value {
    match body {
        Value::Object(m) => {
            let mut out = Map::new();
            out.insert("schema".into(), Value::from(SCHEMA));
            out.extend(m);
            Value::Object(out)
        }
        other => other,
    }
}

pub fn render(body: Value, format: Format) -> String {
    let body = stamp(body);
    match format {
        Format::Json => serde_json::to_string_pretty(&body).expect("plain data"),
        Format::Text => match body {
            Value::Object(m) => m
                .iter()
                .map(|(k, v)| match v {
                    Value::String(s) => format!("{k}: {s}"),
                    _ => format!("{k}: {v}"),
                })
                .collect::<Vec<_>>()
                .join("\n"),
            other => other.to_string(),
        },
    }
}

pub fn exit_code_for(e: &Error) -> Outcome {
    match e {
        Error::LimitExceeded { .. } => Outcome::Exhausted,
        _ => Outcome::Invalid,
    }
}

pub fn fail(e: &Error, format: Format) -> ExitCode {
    let body = serde_json::json!({ "error": e.to_string() });
    eprintln!("{}", render(body, format));
    ExitCode::from(exit_code_for(e) as u8)
}
