use std::fs;
use std::path::Path;

use belief_calculus::scenarios::{croupier, family, forensic_ignorant, paradox};
use belief_calculus::{
    condition_mass, find_violation, load_model, ratio, save_model, BettingMode, Error, Model, ProductFrame,
};

fn read(name: &str) -> Model {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../models").join(name);
    load_model(&fs::read_to_string(&path).unwrap()).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

#[test]
fn shipped_models_load() {
    for entry in fs::read_dir(Path::new(env!("CARGO_MANIFEST_DIR")).join("../../models")).unwrap() {
        let path = entry.unwrap().path();
        let text = fs::read_to_string(&path).unwrap();
        let model = load_model(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        // saving is canonical even when the source is not
        let saved = save_model(&model);
        assert_eq!(save_model(&load_model(&saved).unwrap()), saved, "{}", path.display());
    }
}

#[test]
fn forensic_document_matches_builder() {
    let model = read("forensic.json");
    let (pf, built) = forensic_ignorant(&ratio(1, 10)).unwrap();
    assert_eq!(model.mass().unwrap(), &built);
    let g = pf.product().subset(["Ec:G", "E:G"]).unwrap();
    let e = pf.product().subset(["E:Gc", "E:G"]).unwrap();
    // no prior belief in guilt
    assert_eq!(built.belief(g).unwrap(), ratio(0, 1));
    assert_eq!(condition_mass(&built, e).unwrap().belief(g).unwrap(), ratio(9, 10));
}

#[test]
fn family_document_matches_builder() {
    assert_eq!(read("family.json").mass().unwrap(), &family());
}

#[test]
fn price_documents() {
    let ignorant = read("ignorant-prices.json").price_table().unwrap();
    assert!(find_violation(&ignorant, 2, BettingMode::P2).unwrap().is_some());
    assert!(ignorant.is_belief_function().is_belief);
    let remark = read("remark-f.json").price_table().unwrap();
    assert!(!remark.is_belief_function().is_belief);
    assert!(find_violation(&remark, 3, BettingMode::B2Star).unwrap().is_some());
}

#[test]
fn product_models_round_trip() {
    for (pf, m) in [croupier(&ratio(1, 2)).unwrap(), paradox()] {
        let model = Model::from_mass(m.clone()).with_product(pf.clone()).unwrap();
        let text = save_model(&model);
        let back = load_model(&text).unwrap();
        assert_eq!(back.mass().unwrap(), &m);
        let back_pf: &ProductFrame = back.product.as_ref().unwrap();
        assert!(back_pf.left().same_as(pf.left()) && back_pf.right().same_as(pf.right()));
        assert_eq!(save_model(&back), text);
    }
}

#[test]
fn errors_carry_their_location() {
    let text = r#"{
  "frame": ["a", "b"],
  "masses": [
    { "set": ["a"], "mass": "1/2" },
    { "set": ["a", "b"], "mass": "-1/2" }
  ]
}"#;
    match load_model(text) {
        Err(Error::Located { locus, source }) => {
            assert_eq!(locus, "masses[1]");
            assert!(matches!(*source, Error::NegativeMass { .. }));
        }
        other => panic!("{other:?}"),
    }
    match load_model("{ \"frame\": [\"a\"],\n  \"masses\": [ oops ] }") {
        Err(Error::Parse { locus, .. }) => assert!(locus.starts_with("line 2"), "{locus}"),
        other => panic!("{other:?}"),
    }
}
