use serde_json::Value;
use sha2::{Digest, Sha256};

use sextics::database::{
    bundled_corpus, compare_sextics_over_f, cross_check_record, parse_corpus, parse_corpus_file, SexticComparison, BUNDLED_CORPUS,
};
use sextics::Error;

const SCHEMA: &str = include_str!("../../../corpus/sextics.schema.json");
const CORPUS_SHA256: &str = "d9f58a5d25a810074cc1e7324bec789c364e09d79dee38961b8c7120e4c86bc3";

fn corpus_value() -> Value {
    serde_json::from_str(BUNDLED_CORPUS).unwrap()
}

fn reparse(v: &Value) -> sextics::Result<Vec<sextics::CurveRecord>> {
    parse_corpus(&serde_json::to_string(v).unwrap())
}

#[test]
fn corpus_has_39_records_in_order() {
    let recs = bundled_corpus().unwrap();
    assert_eq!(recs.len(), 39);
    assert!(recs.iter().enumerate().all(|(i, r)| r.id() == i as u32 + 1));
}

#[test]
fn corpus_matches_schema() {
    let schema: Value = serde_json::from_str(SCHEMA).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let errors: Vec<String> = validator.iter_errors(&corpus_value()).map(|e| format!("{}: {e}", e.instance_path())).collect();
    assert!(errors.is_empty(), "{errors:#?}");
}

#[test]
fn schema_rejects_a_bad_rational() {
    let schema: Value = serde_json::from_str(SCHEMA).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let mut v = corpus_value();
    v["records"][0]["field_f"][0]["minpoly"][0] = Value::String("1/0".into());
    assert!(!validator.is_valid(&v));
}

#[test]
fn corpus_checksum_is_frozen() {
    let digest = Sha256::digest(BUNDLED_CORPUS.as_bytes());
    let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
    assert_eq!(hex, CORPUS_SHA256);
}

#[test]
fn json_round_trip() {
    let file = parse_corpus_file(BUNDLED_CORPUS).unwrap();
    let text = serde_json::to_string_pretty(&file).unwrap();
    assert_eq!(parse_corpus_file(&text).unwrap(), file);
    assert_eq!(serde_json::from_str::<Value>(&text).unwrap(), corpus_value());
}

#[test]
fn parametrization_field_differs_exactly_for_four_records() {
    let recs = bundled_corpus().unwrap();
    let flagged: Vec<u32> = recs.iter().filter(|r| r.data.flags.e_differs_from_f).map(|r| r.id()).collect();
    assert_eq!(flagged, [1, 16, 34, 36]);
    for r in &recs {
        assert_eq!(r.field_e.degree() == 2 * r.field_f.degree(), r.data.flags.e_differs_from_f, "record {}", r.id());
        assert!(r.field_e.degree() == r.field_f.degree() || r.data.flags.e_differs_from_f);
    }
}

#[test]
fn record_36_fields() {
    let r = &bundled_corpus().unwrap()[35];
    assert!(r.field_f.is_rationals());
    assert_eq!(r.field_e.describe(), "Q[w]/(w^2 + w + 1)");
    let m = r.field_e.modulus().unwrap();
    let c: Vec<_> = m.coeffs().iter().map(|c| c.as_rational().unwrap()).collect();
    // discriminant b^2 - 4ac of w^2 + w + 1
    assert_eq!(&c[1] * &c[1] - sextics::Rational::from_integer(4.into()) * &c[0] * &c[2], sextics::Rational::from_integer((-3).into()));
}

#[test]
fn autodual_flags() {
    let recs = bundled_corpus().unwrap();
    let flagged: Vec<u32> = recs.iter().filter(|r| r.data.flags.autodual_claimed).map(|r| r.id()).collect();
    assert_eq!(flagged, [26, 36, 38]);
}

#[test]
fn record_3() {
    let r = &bundled_corpus().unwrap()[2];
    assert_eq!(r.data.name, "A_17+A_2");
    let idx: Vec<u32> = r.data.singularities.iter().map(|t| t.index()).collect();
    assert_eq!(idx.iter().sum::<u32>(), 19);
    assert_eq!(idx.iter().filter(|n| *n % 2 == 1).count(), 1);
    assert_eq!(r.data.p.as_ref().unwrap().printed, "t^2-3");
}

#[test]
fn cross_checks_pass_except_literal_case_16() {
    for r in bundled_corpus().unwrap() {
        let c = cross_check_record(&r).unwrap();
        if r.id() == 16 {
            continue;
        }
        assert!(c.pass(), "{c:?}");
    }
}

#[test]
fn case_16_parametrizations_agree_after_diagonal_scaling() {
    let recs = bundled_corpus().unwrap();
    let r = &recs[15];
    let alt = r.alternative.as_ref().unwrap();
    let cmp = compare_sextics_over_f(&r.curve.implicitize().unwrap(), &r.field_f, &alt.curve.implicitize().unwrap()).unwrap();
    let SexticComparison::Rescaled { tau, kappa, zeta } = cmp else { panic!("{cmp:?}") };
    assert_eq!(tau, "0");
    assert_eq!(kappa, "7/512 + 1/128*a");
    assert_eq!(zeta, "7/17 - 4/17*a");
}

#[test]
fn truncated_file_is_a_schema_error() {
    let cut = &BUNDLED_CORPUS[..BUNDLED_CORPUS.len() / 2];
    assert!(matches!(parse_corpus(cut), Err(Error::Schema { .. })));
}

#[test]
fn unknown_field_is_reported_with_its_path() {
    let mut v = corpus_value();
    v["records"][4]["flags"]["extra"] = Value::Bool(true);
    match reparse(&v) {
        Err(Error::Schema { path, .. }) => assert!(path.starts_with("records[4].flags"), "{path}"),
        other => panic!("{other:?}"),
    }
}

#[test]
fn index_sum_18_names_the_record() {
    let mut v = corpus_value();
    v["records"][2]["singularities"][1] = Value::String("A_1".into());
    v["records"][2]["name"] = Value::String("A_17+A_1".into());
    match reparse(&v) {
        Err(Error::Invariant { id, message }) => {
            assert_eq!(id, 3);
            assert!(message.contains("18"), "{message}");
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn wrong_flag_is_an_invariant_error() {
    let mut v = corpus_value();
    v["records"][1]["flags"]["e_differs_from_f"] = Value::Bool(true);
    assert!(matches!(reparse(&v), Err(Error::Invariant { id: 2, .. })));
}

#[test]
fn wrong_schema_version() {
    let mut v = corpus_value();
    v["schema_version"] = Value::from(2);
    assert!(matches!(reparse(&v), Err(Error::Schema { .. })));
}
