//! Lifting-property Bruhat order against the brute-force subword oracle,
//! exhaustively on every pair.

mod common;

use kbraid::rootdata::build_cartan;
use kbraid::weyl::WeylGroup;

#[test]
fn lifting_property_matches_subword_oracle() {
    for spec in ["A3", "B2"] {
        let g = WeylGroup::new(build_cartan(spec).unwrap()).unwrap();
        let els = g.all_elements().unwrap();
        for y in &els {
            for w in &els {
                assert_eq!(
                    g.bruhat_leq(y, w).unwrap(),
                    common::bruhat_leq_subword_oracle(y, w),
                    "{spec}: disagreement at y = {y}, w = {w}"
                );
            }
        }
    }
}

#[test]
fn order_axioms_hold() {
    let g = WeylGroup::new(build_cartan("B2").unwrap()).unwrap();
    let els = g.all_elements().unwrap();
    for x in &els {
        assert!(g.bruhat_leq(x, x).unwrap());
        for y in &els {
            // antisymmetry
            if g.bruhat_leq(x, y).unwrap() && g.bruhat_leq(y, x).unwrap() {
                assert_eq!(x, y);
            }
            // transitivity
            for z in &els {
                if g.bruhat_leq(x, y).unwrap() && g.bruhat_leq(y, z).unwrap() {
                    assert!(g.bruhat_leq(x, z).unwrap());
                }
            }
        }
    }
}
