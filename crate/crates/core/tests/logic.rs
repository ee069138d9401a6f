//! Integration tests for the sequent systems: rule checking, bundled
//! scripts, backward search, countermodels and rule-schema soundness.

use tdl_core::algebra::enumerate_tdl_algebras;
use tdl_core::logic::proof::fold_to_formula_sequent;
use tdl_core::logic::*;
use tdl_core::order::distributive_lattice_census;
use tdl_core::samples::*;

fn seq(text: &str) -> Sequent {
    parse_sequent(text, CalculusId::Lt).unwrap()
}

#[test]
fn axiom_and_adjunction_rule_checking() {
    let ax = ProofTree::leaf(RuleId::Axiom, seq("p => p"));
    assert!(check_proof(&ax, CalculusId::Lt).is_ok());

    let bad_ax = ProofTree::leaf(RuleId::Axiom, seq("p => q"));
    assert!(check_proof(&bad_ax, CalculusId::Lt).is_err());

    // [GP] with the mandated single-formula succedent.
    let gp = ProofTree::node(
        RuleId::Gp,
        seq("p => G P p"),
        vec![ProofTree::leaf(RuleId::Axiom, seq("p => p"))],
    );
    assert!(check_proof(&gp, CalculusId::Lt).is_ok());

    // Extra succedent formulas are a rule mismatch for [GP].
    let gp_wide = ProofTree::node(
        RuleId::Gp,
        seq("p => G P p, q"),
        vec![ProofTree::node(
            RuleId::WeakRight,
            seq("p => p, q"),
            vec![ProofTree::leaf(RuleId::Axiom, seq("p => p"))],
        )],
    );
    let err = check_proof(&gp_wide, CalculusId::Lt).unwrap_err();
    assert_eq!(err.rule, RuleId::Gp);
}

#[test]
fn the_displayed_distribution_proof_checks() {
    // G(a & b) => G a & G b via weakening, meet-left, the block rule and
    // meet-right, exactly as bundled.
    let scripts = parse_scripts(tdl_core::logic::script::bundled_scripts(CalculusId::Lt)).unwrap();
    let s = scripts.iter().find(|s| s.name == "gmeet-fwd").unwrap();
    assert!(check_proof(&s.root, CalculusId::Lt).is_ok());
    assert_eq!(s.root.conclusion, seq("G (p & q) => G p & G q"));
}

#[test]
fn foreign_connectives_are_rejected_per_calculus() {
    let classical = parse_sequent("~p, p =>", CalculusId::LtC).unwrap();
    let t = ProofTree::node(
        RuleId::NegLeft,
        classical,
        vec![ProofTree::leaf(RuleId::Axiom, seq("p => p"))],
    );
    assert!(check_proof(&t, CalculusId::LtC).is_ok());
    assert!(check_proof(&t, CalculusId::Lt).is_err());
    assert!(check_proof(&t, CalculusId::LtDm).is_err());
}

#[test]
fn bundled_scripts_all_pass() {
    for calc in [
        CalculusId::Lt,
        CalculusId::LtC,
        CalculusId::LtI,
        CalculusId::LtDm,
    ] {
        let report = run_bundled_proofs(calc);
        let failures: Vec<String> = report
            .failures()
            .iter()
            .map(|r| format!("{}: {:?} sem={}", r.name, r.proof_ok, r.semantics_ok))
            .collect();
        assert!(failures.is_empty(), "{calc}: {failures:?}");
    }
}

#[test]
fn bundle_inventory_matches_the_advertised_items() {
    let lt = parse_scripts(tdl_core::logic::script::bundled_scripts(CalculusId::Lt)).unwrap();
    let templates = lt.iter().filter(|s| !s.hypotheses.is_empty()).count();
    assert_eq!(templates, 12);
    let sequents = lt.iter().filter(|s| s.hypotheses.is_empty()).count();
    assert_eq!(sequents, 32); // ten families, both directions where stated

    let ltc = parse_scripts(tdl_core::logic::script::bundled_scripts(CalculusId::LtC)).unwrap();
    assert_eq!(ltc.len(), 12); // four items, each half or direction
    let lti = parse_scripts(tdl_core::logic::script::bundled_scripts(CalculusId::LtI)).unwrap();
    assert_eq!(lti.len(), 6); // three items, two halves each
    let ltdm =
        parse_scripts(tdl_core::logic::script::bundled_scripts(CalculusId::LtDm)).unwrap();
    assert!(ltdm.len() >= 12);
}

#[test]
fn fold_transformation_preserves_checkability() {
    for calc in [
        CalculusId::Lt,
        CalculusId::LtC,
        CalculusId::LtI,
        CalculusId::LtDm,
    ] {
        let scripts = parse_scripts(tdl_core::logic::script::bundled_scripts(calc)).unwrap();
        for s in scripts.iter().filter(|s| s.hypotheses.is_empty()) {
            let folded = fold_to_formula_sequent(s.root.clone());
            assert!(folded.conclusion.left.len() <= 1);
            assert!(folded.conclusion.right.len() <= 1);
            check_proof(&folded, calc)
                .unwrap_or_else(|e| panic!("folded {} fails: {e}", s.name));
        }
    }
}

#[test]
fn search_finds_the_expected_proofs() {
    let t = prove(&seq("p => G P p"), CalculusId::Lt, 4).expect("provable");
    assert!(check_proof(&t, CalculusId::Lt).is_ok());
    assert_eq!(t.rule, RuleId::Gp);

    let t = prove(&seq("p => p"), CalculusId::Lt, 2).expect("provable");
    assert_eq!(t.rule, RuleId::Axiom);

    assert!(prove(&seq("F p => p"), CalculusId::Lt, 8).is_none());
    assert!(countermodel(&seq("F p => p"), 6, CalculusId::Lt)
        .unwrap()
        .is_some());
}

#[test]
fn search_results_always_recheck() {
    let goals = [
        "p => G P p",
        "p => H F p",
        "G (p & q) => G p & G q",
        "G p & G q => G (p & q)",
        "F (p | q) => F p | F q",
        "G (p | q) => G p | F q",
        "G p & F q => F (p & q)",
        "P G p => p",
        "F H p => p",
        "F p => F H F p",
        "bot => p",
        "p => top",
        "p & q => q",
        "p => p | q",
    ];
    for text in goals {
        let s = seq(text);
        let t = prove(&s, CalculusId::Lt, 8).unwrap_or_else(|| panic!("{text} not found"));
        assert_eq!(t.conclusion, s);
        check_proof(&t, CalculusId::Lt).unwrap_or_else(|e| panic!("{text}: {e}"));
    }
    // Extensions.
    let c = parse_sequent("F p => ~G ~p", CalculusId::LtC).unwrap();
    let t = prove(&c, CalculusId::LtC, 8).expect("classical interdefinability");
    assert!(check_proof(&t, CalculusId::LtC).is_ok());

    let i = parse_sequent("F (p -> q) => G p -> F q", CalculusId::LtI).unwrap();
    let t = prove(&i, CalculusId::LtI, 8).expect("intuitionistic item 1");
    assert!(check_proof(&t, CalculusId::LtI).is_ok());

    let d = parse_sequent("~~p => p", CalculusId::LtDm).unwrap();
    let t = prove(&d, CalculusId::LtDm, 6).expect("double tilde");
    assert!(check_proof(&t, CalculusId::LtDm).is_ok());
}

#[test]
fn provable_sequents_are_valid_and_refuted_ones_are_not() {
    // Soundness via search + countermodel disjointness on a small battery.
    let class = algebra_class(CalculusId::Lt, 5);
    for text in ["p => G P p", "G (p | q) => G p | F q", "G p & F q => F (p & q)"] {
        let s = seq(text);
        assert!(prove(&s, CalculusId::Lt, 8).is_some());
        assert!(consequence(&s, &class).unwrap());
        assert!(countermodel(&s, 6, CalculusId::Lt).unwrap().is_none());
    }
    for text in ["F p => p", "G p => p", "p => G F p", "p => F p"] {
        let s = seq(text);
        let found = countermodel(&s, 6, CalculusId::Lt).unwrap();
        assert!(found.is_some(), "{text} should be refutable");
        let (a, env) = found.unwrap();
        assert!(a.size() <= 6);
        // The witness really refutes it.
        let l = a.lattice();
        let lhs = s
            .left
            .iter()
            .map(|f| evaluate(&a, &env, f).unwrap())
            .fold(l.top(), |x, y| l.meet(x, y));
        let rhs = s
            .right
            .iter()
            .map(|f| evaluate(&a, &env, f).unwrap())
            .fold(l.bottom(), |x, y| l.join(x, y));
        assert!(!l.leq(lhs, rhs));
    }
}

#[test]
fn rule_schemas_preserve_holds_on_small_algebras() {
    // Spot version of the acceptance sweep: weakening, the block rule and
    // the adjunction rules preserve per-algebra validity on every algebra
    // with at most four elements, for a pool of depth <= 2 formulas.
    let pool: Vec<Formula> = {
        let atoms = [Formula::var("p"), Formula::var("q"), Formula::Top, Formula::Bot];
        let mut d1: Vec<Formula> = atoms.to_vec();
        for a in &atoms {
            d1.push(Formula::g(a.clone()));
            d1.push(Formula::f(a.clone()));
            d1.push(Formula::and(a.clone(), Formula::var("q")));
        }
        d1
    };
    let algebras: Vec<_> = distributive_lattice_census(4)
        .into_iter()
        .flat_map(|l| enumerate_tdl_algebras(&l, 8).unwrap())
        .collect();
    for a in &algebras {
        for alpha in &pool {
            // [G*] with Gamma = {q}, Delta = {p}.
            let premise = Sequent::new(
                [Formula::var("q")],
                [Formula::var("p"), alpha.clone()],
            );
            let conclusion = Sequent::new(
                [Formula::g(Formula::var("q"))],
                [Formula::f(Formula::var("p")), Formula::g(alpha.clone())],
            );
            if holds(a, &premise).unwrap() {
                assert!(holds(a, &conclusion).unwrap());
            }
            // [GP].
            let premise = Sequent::new([Formula::var("q")], [alpha.clone()]);
            let conclusion = Sequent::new(
                [Formula::var("q")],
                [Formula::g(Formula::p(alpha.clone()))],
            );
            if holds(a, &premise).unwrap() {
                assert!(holds(a, &conclusion).unwrap());
            }
        }
    }
}
