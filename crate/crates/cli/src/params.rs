//! Parameter assignments: JSON objects mapping names to exact rationals.

use std::collections::BTreeMap;
use std::fs;

use serde_json::Value;

use elie_core::arith::{parse_rational, ArithError, Rational, Var};
use elie_core::electrical::GeneratorFamily;

use crate::CliError;

/// Reads `src` as inline JSON when it starts with `{`, else as a file path.
/// Values are integers or strings `"p/q"`.
pub fn parse_assignment(src: &str) -> Result<BTreeMap<String, String>, CliError> {
    let text = if src.trim_start().starts_with('{') {
        src.to_string()
    } else {
        fs::read_to_string(src).map_err(|e| CliError::Io(format!("{src}: {e}")))?
    };
    let value: Value = serde_json::from_str(&text).map_err(|e| CliError::Config(format!("parameters: {e}")))?;
    let Value::Object(map) = value else {
        return Err(CliError::Config("parameters must be a JSON object".into()));
    };
    map.into_iter()
        .map(|(k, v)| {
            let s = match v {
                Value::String(s) => s,
                Value::Number(n) if n.is_i64() || n.is_u64() => n.to_string(),
                other => return Err(CliError::Config(format!("{k}: expected an integer or \"p/q\", got {other}"))),
            };
            parse_rational(&s)?;
            Ok((k, s))
        })
        .collect()
}

/// Specializes `fam`; every name must be one of its parameters.
pub fn apply(fam: &GeneratorFamily, values: &BTreeMap<String, String>) -> Result<GeneratorFamily, CliError> {
    let declared = fam.vars();
    let mut assignment: BTreeMap<Var, Rational> = BTreeMap::new();
    for (name, v) in values {
        let var = Var::new(name);
        if !declared.contains(&var) {
            return Err(ArithError::ForeignParameter(name.clone()).into());
        }
        assignment.insert(var, parse_rational(v)?);
    }
    Ok(fam.specialize(&assignment))
}

#[cfg(test)]
mod tests {
    use super::*;
    use elie_core::cartan::{builtin_gcm, Family, ParamFamily};
    use elie_core::electrical::vertex_generators;

    #[test]
    fn inline_values() {
        let m = parse_assignment(r#"{"a1": 0, "a2": "-3/4"}"#).unwrap();
        assert_eq!(m["a2"], "-3/4");
        assert!(parse_assignment(r#"{"a1": 0.5}"#).is_err());
    }

    #[test]
    fn foreign_names_are_rejected() {
        let g = builtin_gcm(Family::A, 2).unwrap();
        let fam = vertex_generators(&g, &ParamFamily::symbolic_vertex(&g));
        let ok = apply(&fam, &parse_assignment(r#"{"a1": 2}"#).unwrap()).unwrap();
        assert_eq!(ok.vars().len(), 1);
        let err = apply(&fam, &parse_assignment(r#"{"z": 1}"#).unwrap()).unwrap_err();
        assert!(err.to_string().contains("not in the declared"), "{err}");
    }
}
