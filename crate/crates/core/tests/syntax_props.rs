mod common;

use common::*;
use esforget::forget::forget_atom;
use esforget::syntax::{render_program, render_theory};
use esforget::{parse_program, parse_theory, Theory};
use proptest::prelude::*;

proptest! {
    #[test]
    fn program_round_trip(p in program()) {
        let text = render_program(&p);
        let back = parse_program(&text).unwrap();
        prop_assert_eq!(&back, &p);
        prop_assert_eq!(render_program(&back), text);
    }

    #[test]
    fn render_is_deterministic(p in program()) {
        prop_assert_eq!(render_program(&p), render_program(&p.clone()));
    }

    #[test]
    fn signature_is_closed(p in program()) {
        for r in p.rules() {
            for a in r.atoms() {
                prop_assert!(p.signature().contains(a));
            }
        }
        let t = p.to_theory();
        prop_assert!(t.occurring_atoms().is_subset(t.signature()));
    }

    #[test]
    fn theory_round_trip(fs in prop::collection::vec(formula(3), 0..4)) {
        let t = Theory::new(fs).canonical();
        let text = render_theory(&t);
        let back = parse_theory(&text).unwrap();
        prop_assert_eq!(back.canonical(), t, "{}", text);
    }

    #[test]
    fn forgetting_output_round_trips(p in program(), a in some_atom()) {
        let t = forget_atom(&p, &a).theory;
        let text = render_theory(&t);
        prop_assert_eq!(parse_theory(&text).unwrap().canonical(), t.canonical(), "{}", text);
    }

    #[test]
    fn programs_parse_as_theories(p in program()) {
        let text = render_program(&p);
        prop_assert_eq!(parse_theory(&text).unwrap(), p.to_theory());
    }
}
