//! Every JSON output of the CLI conforms to its schema in `docs/`.

use std::path::{Path, PathBuf};
use std::process::Command;

use jsonschema::{Registry, Resource};
use serde_json::Value;

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn data(name: &str) -> String {
    root().join("crates/core/data").join(name).to_str().unwrap().to_owned()
}

fn schemas() -> Vec<(String, Value)> {
    let dir = root().join("docs/schemas/v1");
    let mut out: Vec<(String, Value)> = std::fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .map(|p| {
            let v: Value = serde_json::from_str(&std::fs::read_to_string(&p).unwrap()).unwrap();
            (p.file_name().unwrap().to_str().unwrap().trim_end_matches(".schema.json").to_owned(), v)
        })
        .collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

/// Output of the binary: stdout, or stderr when stdout is empty.
fn output(args: &[&str]) -> Value {
    let out = Command::new(env!("CARGO_BIN_EXE_patchwork")).args(args).output().unwrap();
    let text = if out.stdout.is_empty() { out.stderr } else { out.stdout };
    serde_json::from_slice(&text).unwrap_or_else(|e| panic!("{args:?}: {e}"))
}

#[test]
fn outputs_match_schemas() {
    let all = schemas();
    let registry = Registry::new()
        .extend(all.iter().map(|(_, v)| (v["$id"].as_str().unwrap().to_owned(), Resource::from_contents(v.clone()))))
        .unwrap()
        .prepare()
        .unwrap();
    let schema = |name: &str| &all.iter().find(|(n, _)| n == name).unwrap_or_else(|| panic!("no schema {name}")).1;
    let check = |name: &str, value: &Value| {
        let v = jsonschema::options().with_registry(&registry).build(schema(name)).unwrap();
        let errors: Vec<String> = v.iter_errors(value).map(|e| format!("{} at {}", e, e.instance_path())).collect();
        assert!(errors.is_empty(), "{name}: {errors:?}");
    };

    let tmp = std::env::temp_dir().join(format!("patchwork-schema-{}", std::process::id()));
    let out_dir = tmp.to_str().unwrap();
    let mut cases: Vec<(&str, Vec<String>)> = Vec::new();
    for id in ["d1-line", "d3-mcurve", "harnack-sextic", "d6-search-best", "pinwheel-nonregular", "d2-hyperboloid", "bad-overlap"] {
        let doc = data(&format!("{id}.json"));
        cases.push(("patchwork-document", vec!["examples".into(), id.into()]));
        cases.push(("validation-report", vec!["validate".into(), doc.clone()]));
        cases.push(("analysis", vec!["analyze".into(), doc.clone()]));
        cases.push(("build-output", vec!["build".into(), doc.clone()]));
        for op in ["check", "convexify", "refine"] {
            cases.push(("regularity", vec!["regularity".into(), op.into(), doc.clone()]));
        }
    }
    cases.push(("invariants", vec!["invariants".into(), "--n".into(), "3".into(), "--d".into(), "4".into()]));
    cases.push(("invariants", vec!["invariants".into(), "--n".into(), "2".into(), "--d".into(), "6".into()]));
    cases.push(("examples", vec!["examples".into()]));
    cases.push(("error", vec!["examples".into(), "missing".into()]));
    cases.push(("search-summary", vec!["search".into(), "--degree".into(), "3".into(), "--mode".into(), "exhaustive".into()]));
    cases.push(("search-summary", vec!["search".into(), "--degree".into(), "4".into(), "--mode".into(), "random".into(), "--samples".into(), "200".into()]));
    cases.push(("search-summary", vec!["search".into(), "--degree".into(), "4".into(), "--budget".into(), "300".into(), "--out".into(), out_dir.into()]));

    for (name, args) in &cases {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let value = output(&args);
        // errors (invalid documents, unsupported operations) are checked against the error schema
        let name = if value.get("code").is_some() && value.get("message").is_some() { "error" } else { name };
        check(name, &value);
    }
    let index: Value = serde_json::from_str(&std::fs::read_to_string(Path::new(out_dir).join("index.json")).unwrap()).unwrap();
    check("search-summary", &index);
    let best: Value = serde_json::from_str(&std::fs::read_to_string(Path::new(out_dir).join("best-00.json")).unwrap()).unwrap();
    check("patchwork-document", &best);
    std::fs::remove_dir_all(&tmp).ok();
}
