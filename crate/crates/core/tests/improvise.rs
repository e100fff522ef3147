mod common;

use std::collections::BTreeMap;
use std::sync::Arc;

use improv_core::builtins::{self, hamming_leq_predicate};
use improv_core::improvise::{
    feasibility, synthesize, synthesize_dfa, synthesize_enumerative, synthesize_nfa_special,
    verify_improviser, AdmissibleMass, Admissibility, CIInstance, CaseTag, Guarantee, Improviser,
    Synthesis, SynthesisOptions,
};
use improv_core::random::{random_dfa, small_alphabet};
use improv_core::rational::from_ratio;
use improv_core::{count_words, Alphabet, Automaton, CountValue, Dfa, ListSampler, Nfa, Sampler, Word};
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn r(n: u64, d: u64) -> BigRational {
    from_ratio(n, d)
}

fn running_instance(eps: BigRational, rho: BigRational) -> CIInstance {
    CIInstance::new(
        builtins::running_improv().into(),
        Admissibility::Automaton(builtins::running_admiss().into()),
        eps,
        rho,
    )
    .unwrap()
}

fn dist_compact(imp: &Improviser) -> BTreeMap<String, BigRational> {
    imp.distribution(1000)
        .unwrap()
        .into_iter()
        .map(|(w, p)| (common::compact(&[w])[0].clone(), p))
        .collect()
}

#[test]
fn running_example_case_d_distribution() {
    let syn = synthesize_dfa(
        &builtins::running_improv(),
        &builtins::running_admiss(),
        &r(1, 4),
        &r(1, 4),
    )
    .unwrap();
    let imp = syn.improviser().expect("feasible");
    assert_eq!(imp.case(), CaseTag::D);
    let expected: BTreeMap<String, BigRational> = [
        ("000", r(1, 4)),
        ("001", r(1, 4)),
        ("010", r(1, 8)),
        ("100", r(1, 8)),
        ("101", r(1, 4)),
    ]
    .into_iter()
    .map(|(w, p)| (w.to_string(), p))
    .collect();
    assert_eq!(dist_compact(imp), expected);
    assert_eq!(imp.admissible_mass(), &AdmissibleMass::Exact(r(3, 4)));
    assert_eq!(imp.weights(), vec![r(3, 4), r(1, 4)]);
}

#[test]
fn running_example_infeasible_at_zero_error() {
    match synthesize(&running_instance(r(0, 1), r(1, 4)), &SynthesisOptions::default()).unwrap() {
        Synthesis::Infeasible(v) => {
            assert!(!v.feasible);
            assert_eq!(v.size_i, CountValue::finite(5));
            assert_eq!(v.size_a, CountValue::finite(3));
        }
        other => panic!("expected infeasible, got {other:?}"),
    }
    let ok = synthesize(&running_instance(r(0, 1), r(1, 3)), &SynthesisOptions::default()).unwrap();
    assert_eq!(ok.improviser().unwrap().case(), CaseTag::B);
}

#[test]
fn universal_instance_is_case_a() {
    let sigma = Alphabet::from_chars("01").unwrap();
    let all = Dfa::universal(sigma);
    let imp = synthesize_dfa(&all, &all, &r(0, 1), &r(1, 10)).unwrap().into_improviser().unwrap();
    assert_eq!(imp.case(), CaseTag::A);
    let dist = imp.distribution(100).unwrap();
    assert_eq!(dist.len(), 10);
    assert!(dist.values().all(|p| *p == r(1, 10)));
    assert!(imp.guarantee().within(&r(0, 1), &r(1, 10)));
}

#[test]
fn case_c_mixes_uniform_and_pumped_rest() {
    // I = Σ*, admissible = words of length exactly 2 (4 of them)
    let sigma = Alphabet::from_chars("01").unwrap();
    let i = Dfa::universal(sigma.clone());
    let d = Dfa::from_words(sigma, &[vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
    let imp = synthesize_dfa(&i, &d, &r(1, 2), &r(1, 6)).unwrap().into_improviser().unwrap();
    assert_eq!(imp.case(), CaseTag::C);
    let dist = imp.distribution(100).unwrap();
    assert_eq!(dist.len(), 6);
    let admissible: BigRational = dist.iter().filter(|(w, _)| w.len() == 2).map(|(_, p)| p.clone()).sum();
    assert_eq!(admissible, r(4, 6));
    assert!(dist.values().all(|p| *p <= r(1, 6)));
    assert!(dist.keys().all(|w| i.accepts(w)));
}

#[test]
fn mixture_draws_hit_admissible_fraction() {
    let inst = running_instance(r(1, 4), r(1, 4));
    let imp = synthesize(&inst, &SynthesisOptions::default()).unwrap().into_improviser().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let report = verify_improviser(&imp, &inst, &inst.epsilon, &inst.rho, 100_000, &mut rng).unwrap();
    assert!((report.empirical_admissible() - 0.75).abs() <= 0.01, "{report}");
    assert_eq!(report.membership_violations, 0);
    assert_eq!(report.max_prob, r(1, 4));
    assert!(report.max_prob_exact);
    assert!(report.passed());
}

#[test]
fn broken_improviser_is_flagged() {
    let inst = running_instance(r(1, 4), r(1, 4));
    let bad = Improviser::new(
        vec![(BigRational::one(), Arc::new(ListSampler::new(vec![vec![0, 1, 0]]).unwrap()) as Arc<dyn Sampler>)],
        Guarantee::new(r(1, 4), r(1, 4)),
        CaseTag::B,
        AdmissibleMass::Exact(BigRational::one()),
    )
    .unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    let report = verify_improviser(&bad, &inst, &inst.epsilon, &inst.rho, 1000, &mut rng).unwrap();
    assert_eq!(report.analytic_admissible_mass, Some(BigRational::zero()));
    assert!(!report.epsilon_ok());
    assert!(!report.rho_ok());
    assert!(!report.passed());
}

#[test]
fn case_a_report_bounds_probability() {
    let sigma = Alphabet::from_chars("ab").unwrap();
    let all = Dfa::universal(sigma);
    let inst = CIInstance::new(all.clone().into(), Admissibility::Automaton(all.into()), r(0, 1), r(2, 7)).unwrap();
    let imp = synthesize(&inst, &SynthesisOptions::default()).unwrap().into_improviser().unwrap();
    let report = verify_improviser(&imp, &inst, &inst.epsilon, &inst.rho, 100, &mut ChaCha8Rng::seed_from_u64(1)).unwrap();
    assert_eq!(report.max_prob, r(1, 4));
    assert!(report.passed());
}

#[test]
fn enumerative_running_example() {
    let pred = hamming_leq_predicate(vec![0, 0, 1], 1);
    let syn = synthesize_enumerative(&builtins::running_improv(), &pred, &r(1, 4), &r(1, 4), 100).unwrap();
    let imp = syn.into_improviser().unwrap();
    assert_eq!(imp.case(), CaseTag::Enumerative);
    let dist = dist_compact(&imp);
    let expected: BTreeMap<String, BigRational> =
        [("000", r(1, 4)), ("001", r(1, 4)), ("010", r(1, 4)), ("101", r(1, 4))]
            .into_iter()
            .map(|(w, p)| (w.to_string(), p))
            .collect();
    assert_eq!(dist, expected);
    assert_eq!(imp.admissible_mass(), &AdmissibleMass::Exact(r(3, 4)));
}

#[test]
fn enumerative_with_full_error_is_uniform_prefix() {
    let pred = hamming_leq_predicate(vec![0, 0, 1], 1);
    let imp = synthesize_enumerative(&builtins::running_improv(), &pred, &r(1, 1), &r(1, 3), 100)
        .unwrap()
        .into_improviser()
        .unwrap();
    let dist = dist_compact(&imp);
    assert_eq!(dist.keys().cloned().collect::<Vec<_>>(), ["000", "001", "010"]);
    assert!(dist.values().all(|p| *p == r(1, 3)));
}

#[test]
fn enumerative_exhausts_finite_language() {
    let pred = hamming_leq_predicate(vec![0, 0, 1], 1);
    match synthesize_enumerative(&builtins::running_improv(), &pred, &r(0, 1), &r(1, 4), 100).unwrap() {
        Synthesis::BudgetExhausted { examined, language_exhausted } => {
            assert_eq!(examined, 5);
            assert!(language_exhausted);
        }
        other => panic!("{other:?}"),
    }
    match synthesize_enumerative(&builtins::running_improv(), &pred, &r(1, 4), &r(1, 4), 2).unwrap() {
        Synthesis::BudgetExhausted { examined, language_exhausted } => {
            assert_eq!(examined, 2);
            assert!(!language_exhausted);
        }
        other => panic!("{other:?}"),
    }
}

fn a_star_b_nfa() -> Nfa {
    let sigma = Alphabet::from_chars("ab").unwrap();
    Nfa::from_parts(sigma, 2, &[0], &[1], &[(0, 0, 0), (0, 1, 1)], &[]).unwrap()
}

#[test]
fn nfa_special_pumps_improv_past_admissible_words() {
    let sigma = Alphabet::from_chars("ab").unwrap();
    let a = Dfa::from_words(sigma, &[vec![1], vec![0, 1]]);
    let syn = synthesize_nfa_special(
        &a_star_b_nfa().into(),
        &a.into(),
        &r(1, 2),
        &r(1, 4),
        1 << 20,
    )
    .unwrap();
    let imp = syn.into_improviser().unwrap();
    assert_eq!(imp.case(), CaseTag::NfaSpecial('C'));
    let dist = imp.distribution(100).unwrap();
    let mut words: Vec<Word> = dist.keys().cloned().collect();
    words.sort_by_key(|w| w.len());
    // witness x = ε, y = a, z = b; pumped past length 2
    assert_eq!(words, vec![vec![1], vec![0, 1], vec![0, 0, 1], vec![0, 0, 0, 1]]);
    assert!(dist.values().all(|p| *p == r(1, 4)));
    assert_eq!(imp.admissible_mass(), &AdmissibleMass::Exact(r(1, 2)));
}

#[test]
fn nfa_with_admissible_cycle_is_case_a() {
    let nfa = a_star_b_nfa();
    let syn = synthesize_nfa_special(&nfa.clone().into(), &nfa.into(), &r(0, 1), &r(1, 3), 1 << 20).unwrap();
    let imp = syn.into_improviser().unwrap();
    assert_eq!(imp.case(), CaseTag::NfaSpecial('A'));
    assert_eq!(imp.distribution(100).unwrap().len(), 3);
}

#[test]
fn finite_nfas_over_cap_are_not_applicable() {
    let sigma = Alphabet::from_chars("ab").unwrap();
    // finite: words of length ≤ 3, many subset states
    let mut nfa = Nfa::new(sigma, 4);
    nfa.add_initial(0);
    for q in 0..3 {
        nfa.add_transition(q, 0, q + 1);
        nfa.add_transition(q, 1, q + 1);
        nfa.add_transition(0, 0, q + 1);
    }
    nfa.set_accepting(3, true);
    let syn = synthesize_nfa_special(&nfa.clone().into(), &nfa.into(), &r(0, 1), &r(1, 2), 1).unwrap();
    assert!(matches!(syn, Synthesis::NotApplicable(_)), "{syn:?}");
}

#[test]
fn finite_nfas_under_cap_delegate_to_dfa_scheme() {
    let i = builtins::running_improv().to_nfa();
    let d = builtins::running_admiss();
    let imp = synthesize_nfa_special(&i.into(), &d.into(), &r(1, 4), &r(1, 4), 1 << 20)
        .unwrap()
        .into_improviser()
        .unwrap();
    assert_eq!(imp.case(), CaseTag::NfaSpecial('D'));
    assert_eq!(imp.distribution(100).unwrap().len(), 5);
}

fn grid(k: u64) -> BigRational {
    r(k, 8)
}

/// The three improviser conditions, from exact metadata.
fn audit(imp: &Improviser, i: &Dfa, d: &Dfa, eps: &BigRational, rho: &BigRational) -> Result<(), String> {
    let dist = imp.distribution(100_000).ok_or("distribution unavailable")?;
    let total: BigRational = dist.values().cloned().sum();
    if total != BigRational::one() {
        return Err(format!("mass {total}"));
    }
    let mut admissible = BigRational::zero();
    for (w, p) in &dist {
        if !i.accepts(w) {
            return Err(format!("{w:?} outside I"));
        }
        if p > rho {
            return Err(format!("{w:?} has probability {p} > {rho}"));
        }
        if d.accepts(w) {
            admissible += p;
        }
    }
    if admissible < BigRational::one() - eps {
        return Err(format!("admissible mass {admissible}"));
    }
    if !imp.guarantee().within(eps, rho) {
        return Err("certificate weaker than requested".into());
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn synthesis_succeeds_iff_feasible(
        seed in any::<u64>(),
        ni in 1usize..=5,
        nd in 1usize..=5,
        e in 0u64..=8,
        p in 1u64..=8,
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let i = random_dfa(&mut rng, ni, small_alphabet(2), 0.7, 0.4);
        let d = random_dfa(&mut rng, nd, small_alphabet(2), 0.7, 0.5);
        let (eps, rho) = (grid(e), grid(p));
        let a = Dfa::product(&i, &d).unwrap();
        let verdict = feasibility(count_words(&i), count_words(&a), &eps, &rho).unwrap();
        match synthesize_dfa(&i, &d, &eps, &rho).unwrap() {
            Synthesis::Improviser(imp) => {
                prop_assert!(verdict.feasible);
                if let Err(msg) = audit(&imp, &i, &d, &eps, &rho) {
                    prop_assert!(false, "{}", msg);
                }
            }
            Synthesis::Infeasible(v) => prop_assert!(!v.feasible && !verdict.feasible),
            other => prop_assert!(false, "unexpected {:?}", other),
        }
    }

    #[test]
    fn enumerative_and_dfa_schemes_agree_on_contract(
        seed in any::<u64>(),
        e in 0u64..=8,
        p in 1u64..=8,
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let i = improv_core::random::random_acyclic_dfa(&mut rng, 5, small_alphabet(2), 0.8, 0.5);
        let d = random_dfa(&mut rng, 3, small_alphabet(2), 0.8, 0.5);
        let (eps, rho) = (grid(e), grid(p));
        let dd = d.clone();
        let pred = improv_core::improvise::ComputablePredicate::new("dfa", move |w: &[usize]| dd.accepts(w));
        let by_dfa = synthesize_dfa(&i, &d, &eps, &rho).unwrap();
        let by_enum = synthesize_enumerative(&i, &pred, &eps, &rho, 10_000).unwrap();
        match (&by_dfa, &by_enum) {
            (Synthesis::Improviser(a), Synthesis::Improviser(b)) => {
                prop_assert!(audit(a, &i, &d, &eps, &rho).is_ok());
                prop_assert!(audit(b, &i, &d, &eps, &rho).is_ok());
            }
            (Synthesis::Infeasible(_), Synthesis::BudgetExhausted { language_exhausted: true, .. }) => {}
            other => prop_assert!(false, "schemes disagree: {:?}", other),
        }
    }
}

#[test]
fn instance_rejects_mismatched_alphabets() {
    let i: Automaton = builtins::running_improv().into();
    let d: Automaton = Dfa::universal(Alphabet::from_chars("ab").unwrap()).into();
    assert!(CIInstance::new(i, Admissibility::Automaton(d), r(0, 1), r(1, 2)).is_err());
}

fn count_strategy() -> impl Strategy<Value = CountValue> {
    prop_oneof![
        (0u64..40).prop_map(CountValue::finite),
        Just(CountValue::Infinite),
    ]
}

proptest! {
    #[test]
    fn case_selected_iff_feasible(
        size_i in count_strategy(),
        size_a in count_strategy(),
        e in 0u64..=12,
        p in 1u64..=12,
    ) {
        prop_assume!(size_a <= size_i);
        let (eps, rho) = (r(e, 12), r(p, 12));
        let verdict = feasibility(size_i.clone(), size_a.clone(), &eps, &rho).unwrap();
        let case = improv_core::improvise::select_case(&size_i, &size_a, &eps, &rho);
        prop_assert_eq!(case.is_some(), verdict.feasible);
        if size_a.is_infinite() {
            prop_assert_eq!(case, Some(CaseTag::A));
        }
    }
}
