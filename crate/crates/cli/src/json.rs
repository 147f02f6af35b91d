use num_bigint::BigInt;
use serde_json::{json, Value};

use kmchev::arith::{IntegralityVerdict, NonIntegralWitness, Verdict};
use kmchev::linalg::QMatrix;
use kmchev::rational::{to_canonical, Q};
use kmchev::Error;

pub fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json values always serialize")
}

pub fn rat(x: &Q) -> Value {
    Value::String(to_canonical(x))
}

pub fn big(x: &BigInt) -> Value {
    Value::String(x.to_string())
}

pub fn rats(xs: &[Q]) -> Value {
    Value::Array(xs.iter().map(rat).collect())
}

pub fn matrix(m: &QMatrix) -> Value {
    Value::Array(m.to_rows().iter().map(|r| rats(r)).collect())
}

pub fn witness(w: &NonIntegralWitness) -> Value {
    json!({
        "lambda": w.lambda,
        "source_depth": w.source_depth,
        "probe_vector": w.probe_vector,
        "target_depth": w.target_depth,
        "coordinate": w.coordinate,
        "coefficient": rat(&w.coefficient),
        "inverse": w.inverse,
    })
}

pub fn verdict(v: &IntegralityVerdict) -> Value {
    json!({
        "verdict": match v.verdict {
            Verdict::Integral => "Integral",
            Verdict::NonIntegral => "NonIntegral",
        },
        "witness": v.witness.as_ref().map(witness),
    })
}

/// `{"error": {code, message, context}}`.
pub fn error(e: &Error) -> Value {
    let context = match e {
        Error::Syntax { line, column, expected } => json!({"line": line, "column": column, "expected": expected}),
        Error::ZeroDenominator { line, column } => json!({"line": line, "column": column}),
        Error::MoveBudgetExceeded { budget, reason, subword } => {
            json!({"budget": budget, "reason": reason, "subword": subword})
        }
        Error::NonIntegralParameter { position, value } => json!({"position": position, "value": value}),
        Error::NotOrderedDescending { position } | Error::NotPositiveLetter { position } => {
            json!({"position": position})
        }
        Error::DepthOutOfRange { depth, max } => json!({"depth": depth, "max": max}),
        Error::TruncationOverflow { context } => json!({"detail": context}),
        Error::IndexOutOfRange { index, rank } => json!({"index": index, "rank": rank}),
        Error::NotARoot(c) | Error::NotARealRoot(c) | Error::NotDominant(c) => json!({"vector": c}),
        _ => Value::Null,
    };
    json!({"error": {"code": e.code(), "message": e.to_string(), "context": context}})
}
