use onetwo_web::{classify_report, encode_report, gadget_report};

#[test]
fn gadget_page() {
    let r = gadget_report("sat", 3, 0, 0, 0).unwrap();
    assert!(r.starts_with("6x6 matrix, 9 ones"));
    assert!(r.contains("|T| = 7 of 8"));
    let negated = gadget_report("sat", 3, 0, 0, 0b001).unwrap();
    assert!(negated.contains("n(T) = 239"), "{negated}");
    assert!(gadget_report("range", 4, 3, 1, 0).is_err());
    assert!(gadget_report("distinct", 3, 0, 0, 0).is_err());
    assert!(gadget_report("bogus", 3, 0, 0, 0).is_err());
}

#[test]
fn classifier_page() {
    let r = classify_report(4, 8226).unwrap();
    assert!(r.contains("signature = -15162648248230256"));
    assert!(r.contains("dictionary entry 8226"));
    assert!(r.contains("realizing matrix"));
    assert!(classify_report(5, 1).is_err());
}

#[test]
fn encoder_page() {
    let r = encode_report("p cnf 2 2\n1 2 0\n-1 0\n", false).unwrap();
    assert!(r.contains("matching found: -1 2"));
    assert!(r.contains("exhaustive search agrees: true"));
    let u = encode_report("p cnf 1 2\n1 0\n-1 0\n", false).unwrap();
    assert!(u.contains("unsatisfiable"));
    assert!(encode_report("p cnf 1 1\n2 0\n", false).is_err());
}
