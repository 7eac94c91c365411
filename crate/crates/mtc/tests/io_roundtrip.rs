mod common;

use mtc::classify::{self, Mode};
use mtc::io::{self, IoError};
use mtc::families;

#[test]
fn datum_files_round_trip_bit_exactly() {
    for id in common::family_grid().iter().step_by(7) {
        let m = common::build(id);
        let js = io::datum_to_json(&m);
        let back = io::datum_from_json(&js).unwrap();
        assert_eq!(io::datum_to_json(&back), js, "{id}");
        assert_eq!(back.labels(), m.labels());
        assert_eq!(back.meta(), m.meta());
        let pretty = io::datum_to_json_pretty(&m);
        assert_eq!(io::datum_to_json(&io::datum_from_json(&pretty).unwrap()), js);
    }
}

#[test]
fn file_layout() {
    let m = families::build(&"ising:nu=1".parse().unwrap()).unwrap();
    let v: serde_json::Value = serde_json::from_str(&io::datum_to_json(&m)).unwrap();
    assert_eq!(v["rank"], 3);
    assert_eq!(v["conductor"], 16);
    assert_eq!(v["S"][0][0], serde_json::json!({"n": 1, "c": [[1, 1]]}));
    assert_eq!(v["T"][2]["n"], 16);
    assert_eq!(v["meta"]["family"], "ising");
    assert_eq!(v["labels"], serde_json::json!(["1", "ψ", "σ"]));
}

#[test]
fn malformed_files_are_rejected() {
    let m = families::ising_datum(1).unwrap();
    let js = io::datum_to_json(&m);
    assert!(matches!(io::datum_from_json(&js[..js.len() / 2]), Err(IoError::Json(_))));
    let bad_rank = js.replacen("\"rank\":3", "\"rank\":4", 1);
    assert!(matches!(io::datum_from_json(&bad_rank), Err(IoError::Shape(_))));
    let bad_cond = js.replacen("\"conductor\":16", "\"conductor\":8", 1);
    assert!(matches!(io::datum_from_json(&bad_cond), Err(IoError::ConductorMismatch { declared: 8, actual: 16 })));
    // θ_0 must be 1
    let mut v: serde_json::Value = serde_json::from_str(&js).unwrap();
    v["T"][0] = serde_json::json!({"n": 1, "c": [[-1, 1]]});
    assert!(matches!(io::datum_from_json(&v.to_string()), Err(IoError::Mod(_))));
}

#[test]
fn labels_and_meta_are_optional() {
    let m = families::ising_datum(1).unwrap();
    let mut v: serde_json::Value = serde_json::from_str(&io::datum_to_json(&m)).unwrap();
    v.as_object_mut().unwrap().remove("labels");
    v.as_object_mut().unwrap().remove("meta");
    let back = io::datum_from_json(&v.to_string()).unwrap();
    assert_eq!(back.labels(), ["0", "1", "2"]);
    assert!(back.meta().is_none());
    assert!(back.verify_axioms().passed());
}

#[test]
fn certificates_are_json_lines() {
    let certs = classify::classify_rank(6, Mode::Integral);
    let mut buf = Vec::new();
    io::write_certificates(&mut buf, &certs).unwrap();
    let text = String::from_utf8(buf.clone()).unwrap();
    assert_eq!(text.lines().count(), certs.len());
    for line in text.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert!(v["profile"]["squared_dims"].is_array());
        assert!(v["verdict"]["kind"].is_string());
        assert!(v["rule_trace"].is_array());
    }
    assert_eq!(io::read_certificates(&buf[..]).unwrap(), certs);
}
