//! Shared helpers for the CLI integration suites: running the binary
//! from the repository root (so fixture paths resolve), parsing its
//! stdout, and validating reports against the schemas under
//! docs/schemas with a small draft-07-subset checker.

#![allow(dead_code)]

use serde_json::Value;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

/// The repository root, two levels above this crate's manifest.
pub fn repo_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../..")
        .canonicalize()
        .expect("the workspace root exists")
}

/// Runs the binary with `args`, cwd at the repository root.
pub fn run(args: &[&str]) -> Output {
    run_in(&repo_root(), args)
}

/// Runs the binary with `args` from `dir`.
pub fn run_in(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_moduli"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("the moduli binary runs")
}

/// Runs the binary with one extra environment variable set.
pub fn run_with_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_moduli"))
        .args(args)
        .current_dir(repo_root())
        .env(key, value)
        .output()
        .expect("the moduli binary runs")
}

pub fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("the binary exits normally")
}

/// Parses the report printed on stdout, panicking with stderr attached
/// when the output is not JSON.
pub fn stdout_json(out: &Output) -> Value {
    let text = String::from_utf8_lossy(&out.stdout);
    serde_json::from_str(&text).unwrap_or_else(|err| {
        panic!(
            "stdout is not JSON ({err}):\n--- stdout ---\n{text}\n--- stderr ---\n{}",
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

/// Loads `docs/schemas/<name>` from the repository root.
pub fn load_schema(name: &str) -> Value {
    let path = repo_root().join("docs/schemas").join(name);
    let text = std::fs::read_to_string(&path)
        .unwrap_or_else(|err| panic!("cannot read {}: {err}", path.display()));
    serde_json::from_str(&text).unwrap_or_else(|err| panic!("{name} is not JSON: {err}"))
}

/// Asserts that `value` conforms to the named schema, reporting every
/// violation at once.
pub fn assert_valid(value: &Value, schema_name: &str) {
    let schema = load_schema(schema_name);
    let mut problems = Vec::new();
    check(value, &schema, &schema, "$", &mut problems);
    assert!(
        problems.is_empty(),
        "value violates {schema_name}:\n  {}",
        problems.join("\n  ")
    );
}

/// Recursive checker for the schema subset the docs use: $ref into
/// #/definitions, type (string or list), enum, minimum, required,
/// properties, additionalProperties: false, items, minItems, maxItems.
fn check(value: &Value, schema: &Value, root: &Value, path: &str, problems: &mut Vec<String>) {
    let Some(obj) = schema.as_object() else { return };

    if let Some(reference) = obj.get("$ref").and_then(Value::as_str) {
        let target = resolve_ref(root, reference)
            .unwrap_or_else(|| panic!("unresolvable $ref {reference:?}"));
        check(value, target, root, path, problems);
        return;
    }

    if let Some(expected) = obj.get("type") {
        let names: Vec<&str> = match expected {
            Value::String(s) => vec![s.as_str()],
            Value::Array(list) => list.iter().filter_map(Value::as_str).collect(),
            _ => panic!("schema type must be a string or list at {path}"),
        };
        if !names.iter().any(|name| type_matches(value, name)) {
            problems.push(format!("{path}: expected type {names:?}, got {value}"));
            return;
        }
    }

    if let Some(allowed) = obj.get("enum").and_then(Value::as_array) {
        if !allowed.contains(value) {
            problems.push(format!("{path}: {value} is not one of {allowed:?}"));
        }
    }

    if let Some(min) = obj.get("minimum").and_then(number_as_i128) {
        if let Some(got) = number_as_i128(value) {
            if got < min {
                problems.push(format!("{path}: {got} is below the minimum {min}"));
            }
        }
    }

    if let Some(map) = value.as_object() {
        if let Some(required) = obj.get("required").and_then(Value::as_array) {
            for key in required.iter().filter_map(Value::as_str) {
                if !map.contains_key(key) {
                    problems.push(format!("{path}: missing required property {key:?}"));
                }
            }
        }
        let properties = obj.get("properties").and_then(Value::as_object);
        if let Some(props) = properties {
            for (key, sub) in props {
                if let Some(inner) = map.get(key) {
                    check(inner, sub, root, &format!("{path}.{key}"), problems);
                }
            }
        }
        if obj.get("additionalProperties") == Some(&Value::Bool(false)) {
            for key in map.keys() {
                if properties.is_none_or(|props| !props.contains_key(key)) {
                    problems.push(format!("{path}: unexpected property {key:?}"));
                }
            }
        }
    }

    if let Some(list) = value.as_array() {
        if let Some(min) = obj.get("minItems").and_then(Value::as_u64) {
            if (list.len() as u64) < min {
                problems.push(format!("{path}: fewer than {min} items"));
            }
        }
        if let Some(max) = obj.get("maxItems").and_then(Value::as_u64) {
            if (list.len() as u64) > max {
                problems.push(format!("{path}: more than {max} items"));
            }
        }
        if let Some(item_schema) = obj.get("items") {
            for (i, item) in list.iter().enumerate() {
                check(item, item_schema, root, &format!("{path}[{i}]"), problems);
            }
        }
    }
}

/// Resolves a local "#/a/b" reference against the schema document.
fn resolve_ref<'a>(root: &'a Value, reference: &str) -> Option<&'a Value> {
    let mut node = root;
    for part in reference.strip_prefix("#/")?.split('/') {
        node = node.get(part)?;
    }
    Some(node)
}

fn type_matches(value: &Value, name: &str) -> bool {
    match name {
        "object" => value.is_object(),
        "array" => value.is_array(),
        "string" => value.is_string(),
        "boolean" => value.is_boolean(),
        "null" => value.is_null(),
        "integer" => value.as_i64().is_some() || value.as_u64().is_some(),
        "number" => value.is_number(),
        other => panic!("unknown schema type {other:?}"),
    }
}

fn number_as_i128(value: &Value) -> Option<i128> {
    value
        .as_i64()
        .map(i128::from)
        .or_else(|| value.as_u64().map(i128::from))
}
