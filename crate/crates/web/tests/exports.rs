use ct3_web::{brieskorn, classify, upper_bound};
use serde_json::Value;

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn upper_bound_exports() {
    let v = parse(upper_bound("index1", "x*y+x^7+z^2+u^3", "y", 11));
    assert_eq!(v["upper_bound"], "4/5");
    assert_eq!(v["certificate"], "L3");
    let v = parse(upper_bound("sm", "", "x^2+y^3+z^6", 8));
    assert_eq!((v["upper_bound"].as_str(), v["exact"].as_bool()), (Some("5/6"), Some(true)));
    assert!(parse(upper_bound("sm", "", "x^", 8))["error"].is_string());
    assert!(parse(upper_bound("sm", "", "x", 40))["error"].is_string());
}

#[test]
fn classify_exports() {
    let v = parse(classify("cA", "2", 10));
    assert_eq!(v["family"], "cA");
    assert!(v["values"].as_array().unwrap().iter().any(|x| x == "5/8"));
    assert!(parse(classify("cD-1", "2", 15))["survivors"].as_array().unwrap().is_empty());
    assert!(parse(classify("cA", "1/2,1/3", 10))["error"].is_string());
    assert!(parse(classify("cE", "2", 10))["error"].is_string());
}

#[test]
fn brieskorn_exports() {
    assert_eq!(parse(brieskorn(2, 3, 6))["result"], "5/6");
    assert_eq!(parse(brieskorn(2, 3, 5))["result"], "not-applicable");
    assert!(parse(brieskorn(3, 2, 6))["error"].is_string());
}
