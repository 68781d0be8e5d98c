use dgop_web::{ce_homology, compose_trees, x_power};
use serde_json::Value;

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn tree_composition() {
    let v = parse(compose_trees("1(2)", 2, "1(2)").unwrap());
    assert_eq!(v["sum"], "1(2(3))");
    assert!(compose_trees("1(2", 1, "1").is_err());
    assert!(compose_trees("1(2)", 3, "1").is_err());
}

#[test]
fn square_of_x() {
    let v = parse(x_power(2).unwrap());
    assert_eq!(v["at"], "Δ4");
    assert_eq!(v["terms"].as_array().unwrap().len(), 3);
    assert!(x_power(0).is_err());
}

#[test]
fn homology_by_name_and_json() {
    let v = parse(ce_homology("sl2", 2).unwrap());
    assert_eq!(v["homology"], serde_json::json!({"1": 0, "2": 0, "3": 1}));
    let custom = r#"{"names": ["a", "b"], "brackets": [["a", "b", {"a": "1"}]]}"#;
    let v = parse(ce_homology(custom, 1).unwrap());
    assert_eq!(v["homology"], serde_json::json!({"1": 1, "2": 0}));
    assert!(ce_homology("so3", 2).is_err());
}
