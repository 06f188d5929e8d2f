//! Model-file parsing against the built-in models.

use hopfcyc::{parse_model, CliError};
use hopfcyc_core::models;

#[test]
fn shipped_diamond_file_equals_the_builtin_model() {
    let file = hopfcyc::load("builtin:diamond").unwrap();
    let builtin = models::diamond().unwrap();
    assert_eq!(file.model.lie, builtin.lie);
    assert_eq!(file.model.group, builtin.group);
    assert_eq!(file.classes, vec!["θ2∧θ3∧θ4".to_string()]);
}

#[test]
fn other_builtins_load_without_pipeline() {
    for name in hopfcyc::model_file::builtin_names().keys().filter(|n| **n != "diamond") {
        let file = hopfcyc::load(&format!("builtin:{name}")).unwrap();
        assert!(file.classes.is_empty(), "{name}");
    }
    assert!(matches!(hopfcyc::load("builtin:nope"), Err(CliError::Schema(_))));
}

const BASE: &str = r#"
[g1]
basis = ["T"]
[g2]
basis = ["X"]
[group]
act_left = ["t"]
act_right = ["x"]
g1.coords = ["t"]
g2.coords = ["x"]
mul.g1 = ["t.1 + t.2"]
mul.g2 = ["x.1 + x.2"]
inv.g1 = ["-t"]
inv.g2 = ["-x"]
"#;

#[test]
fn schema_and_syntax_errors_are_distinguished() {
    let ok = parse_model(BASE).unwrap();
    assert_eq!(ok.model.name, "model");
    // unknown key
    let e = parse_model(&format!("colour = 1\n{BASE}")).unwrap_err();
    assert!(matches!(e, CliError::Syntax(_)), "{e}");
    // undeclared coordinate in a law
    let e = parse_model(&BASE.replace("\"x.1 + x.2\"", "\"x.1 + w.2\"")).unwrap_err();
    assert!(matches!(e, CliError::Schema(ref s) if s.contains("\"w\"")), "{e}");
    // wrong number of expressions
    let e = parse_model(&BASE.replace("inv.g2 = [\"-x\"]", "inv.g2 = [\"-x\", \"x\"]")).unwrap_err();
    assert!(matches!(e, CliError::Schema(_)), "{e}");
    // unparseable expression
    let e = parse_model(&BASE.replace("\"-t\"", "\"-(t\"")).unwrap_err();
    assert!(matches!(e, CliError::Syntax(_)), "{e}");
    assert_eq!(e.exit_code(), 2);
    // rational coefficient as "p/q" and bracket indices as integers
    let twod = BASE
        .replace("basis = [\"X\"]", "basis = [\"X\", \"Y\"]\nbrackets = [[0, 1, 1, \"1/2\"]]")
        .replace("act_right = [\"x\"]", "act_right = [\"x\", \"y\"]")
        .replace("g2.coords = [\"x\"]", "g2.coords = [\"x\", \"y\"]")
        .replace("mul.g2 = [\"x.1 + x.2\"]", "mul.g2 = [\"x.1 + x.2\", \"y.1 + y.2\"]")
        .replace("inv.g2 = [\"-x\"]", "inv.g2 = [\"-x\", \"-y\"]");
    assert!(parse_model(&twod).is_ok());
    let e = parse_model(&twod.replace("\"1/2\"", "\"half\"")).unwrap_err();
    assert!(matches!(e, CliError::Syntax(_)), "{e}");
}
