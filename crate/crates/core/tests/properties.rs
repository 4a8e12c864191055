mod props;

#[test]
fn parse_render_round_trip() {
    props::parse_render_round_trip().unwrap();
}

#[test]
fn canonicalize_is_idempotent() {
    props::canonicalize_is_idempotent().unwrap();
}

#[test]
fn canonical_form_ignores_case() {
    props::canonical_form_ignores_case().unwrap();
}

#[test]
fn esm_is_reflexive() {
    props::esm_is_reflexive().unwrap();
}

#[test]
fn esm_is_symmetric() {
    props::esm_is_symmetric().unwrap();
}

#[test]
fn esm_ignores_select_and_conjunct_order() {
    props::esm_ignores_select_and_conjunct_order().unwrap();
}

#[test]
fn esm_sees_order_by_swaps() {
    props::esm_sees_order_by_swaps().unwrap();
}

#[test]
fn without_values_ignores_literals() {
    props::without_values_ignores_literals().unwrap();
}

#[test]
fn protect_then_restore_is_identity() {
    props::protect_then_restore_is_identity().unwrap();
}

#[test]
fn lemmatize_is_idempotent() {
    props::lemmatize_is_idempotent().unwrap();
}

#[test]
fn journal_replay_is_deterministic() {
    props::journal_replay_is_deterministic().unwrap();
}

#[test]
fn every_property_is_listed_once() {
    let names: std::collections::BTreeSet<&str> = props::ALL.iter().map(|(n, _)| *n).collect();
    assert_eq!(names.len(), 11);
    assert_eq!(props::CASES, 1000);
}
