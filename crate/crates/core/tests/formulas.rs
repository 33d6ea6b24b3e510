use schubert::dsl::evaluate_str;
use schubert::spaces::{check_formula, space, verify_all_formulas, Formula, SpaceId, FORMULAS};

#[test]
fn suite_lists_exactly_the_numbered_identities() {
    let labels: Vec<&str> = FORMULAS.iter().map(|f| f.label).collect();
    assert_eq!(
        labels,
        [
            "1", "2", "3", "4", "5", "6", "7", "8", "9", "10", "11", "12", "13", "14", "15", "16",
            "I", "II", "III"
        ]
    );
    let count = |id: SpaceId| FORMULAS.iter().filter(|f| f.space == id).count();
    assert_eq!(count(SpaceId::P3), 4);
    assert_eq!(count(SpaceId::P3Dual), 4);
    assert_eq!(count(SpaceId::G), 8);
    assert_eq!(count(SpaceId::PS), 3);
}

#[test]
fn every_identity_holds_as_normal_forms() {
    let report = verify_all_formulas();
    assert_eq!(report.entries.len(), 19);
    for e in &report.entries {
        assert!(e.holds, "{} fails: {:?}", e.label, e.normal_forms);
        assert!(e.normal_forms.windows(2).all(|w| w[0] == w[1]));
    }
}

#[test]
fn a_false_identity_is_caught() {
    let bogus = Formula {
        label: "x",
        space: SpaceId::G,
        sides: &["g^4", "G"],
    };
    assert!(!check_formula(space(SpaceId::G), &bogus).holds);
    let unknown = Formula {
        label: "y",
        space: SpaceId::G,
        sides: &["g", "q"],
    };
    assert!(!check_formula(space(SpaceId::G), &unknown).holds);
}

#[test]
fn grassmannian_identities_by_evaluation() {
    let top = |s: &str| evaluate_str(s, SpaceId::G).unwrap().top.map(|t| t.to_string());
    assert_eq!(top("g^4").as_deref(), Some("2"));
    assert_eq!(top("g_p^2").as_deref(), Some("1"));
    assert_eq!(top("g_e^2").as_deref(), Some("1"));
    assert_eq!(top("g*g_s").as_deref(), Some("1"));
    assert_eq!(top("g_p*g_e"), None);
}

#[test]
fn derived_grassmannian_relations() {
    let g = space(SpaceId::G);
    let c1 = g.ring().generator("c1").unwrap();
    let c2 = g.ring().generator("c2").unwrap();
    use schubert::RingHandle;
    let two = num_bigint::BigInt::from(2);
    assert!((&(&c1.pow(2) * &c2).scale(&two) - &c1.pow(4)).is_zero());
    assert_eq!(&c1.pow(2) * &c2, c2.pow(2));
    assert_eq!(c1.pow(3), (&c1 * &c2).scale(&two));
}

#[test]
fn flag_space_identities_in_schubert_notation() {
    let s = |e: &str| evaluate_str(e, SpaceId::PS).unwrap().schubert;
    assert_eq!(s("p*g"), "p^2 + g_e");
    assert_eq!(s("p*g_p"), "p^3 + g_s");
    assert_eq!(s("p*g_s"), "G + p^2*g_e");
    assert_eq!(s("p^2*g_p"), "G + p^2*g_e");
    assert_eq!(evaluate_str("p*G", SpaceId::PS).unwrap().top.unwrap(), 1.into());
}
