//! Canonical comparison of term tables and realize output.

use hopfcyc::golden::{diff, diff_realization, parse_terms};

#[test]
fn term_tables_ignore_order_and_formatting() {
    let a = parse_terms("# c\nk\tdx\tx*y + 1\nk\tdy\t2\n").unwrap();
    let b = parse_terms("k\tdy\t1+1\nk\tdx\t1 + y*x\n").unwrap();
    assert!(diff(&a, &b).is_empty());
    let c = parse_terms("k\tdx\tx*y\nk\tdx\t1\nk\tdy\t2\nk\tdz\tx - x\n").unwrap();
    assert_eq!(a, c, "equal keys are summed and zero terms dropped");
    let d = parse_terms("k\tdx\tx*y\n").unwrap();
    let msgs = diff(&a, &d);
    assert_eq!(msgs.len(), 2);
    assert!(parse_terms("only two\tfields\n").is_err());
}

#[test]
fn realize_output_compares_after_reparsing() {
    let a = "class\tθ1\nE[0,1]\t1*θ1\nPhi[0,1]\tC^0\tint(f0(θ)*2; dθ)\n";
    let b = "class\tθ1\nE[0,1]\tθ1\nPhi[0,1]\tC^0\tint(2*f0(θ); dθ)\n";
    assert!(diff_realization(a, b).unwrap().is_empty());
    let c = "class\tθ1\nE[0,1]\tθ1\nPhi[0,1]\tC^0\tint(3*f0(θ); dθ)\n";
    assert_eq!(diff_realization(a, c).unwrap().len(), 1);
}

#[test]
fn reference_table_parses() {
    let t = parse_terms(hopfcyc::acceptance::REFERENCE_TERMS).unwrap();
    assert!(t.keys().any(|(k, _)| k == "nu_star"));
    assert!(t.keys().any(|(k, _)| k.starts_with("Phi[")));
}
