mod common;

use common::{all_words, brute_language};
use improv_core::factor_oracle::FactorOracle;
use improv_core::random::{random_dfa, random_nfa, small_alphabet};
use improv_core::{
    builtins, count_words, is_language_infinite, trim_dfa, trim_nfa, Alphabet, CountValue, Dfa,
    Nfa, DEFAULT_DETERMINIZE_CAP,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[test]
fn running_example_product_is_admissible_set() {
    let a = Dfa::product(&builtins::running_improv(), &builtins::running_admiss()).unwrap();
    let lang = brute_language(2, 6, |w| a.accepts(w));
    assert_eq!(common::compact(&lang), ["000", "001", "101"]);
    assert!(a.state_count() <= 6 * 8);
}

#[test]
fn running_example_complement_product_is_rest() {
    let i = builtins::running_improv();
    let a = Dfa::product(&i, &builtins::running_admiss()).unwrap();
    let b = Dfa::product(&i, &a.complement()).unwrap();
    assert_eq!(common::compact(&brute_language(2, 6, |w| b.accepts(w))), ["010", "100"]);
}

#[test]
fn product_with_complement_is_empty() {
    let mut r = rng(11);
    for _ in 0..50 {
        let d = random_dfa(&mut r, 5, small_alphabet(2), 0.8, 0.4);
        let p = Dfa::product(&d, &d.complement()).unwrap();
        assert_eq!(count_words(&p), CountValue::finite(0));
    }
}

#[test]
fn running_improv_trim_keeps_everything() {
    let i = builtins::running_improv();
    let (t, report) = trim_dfa(&i);
    assert_eq!(report.kept_states.len(), i.state_count());
    assert!(report.removed_dead.is_empty() && report.removed_unreachable.is_empty());
    assert_eq!(t, i);
}

#[test]
fn trim_preserves_counts_on_random_dfas() {
    let mut r = rng(12);
    for _ in 0..200 {
        let d = random_dfa(&mut r, 6, small_alphabet(2), 0.6, 0.3);
        let (t, report) = trim_dfa(&d);
        let total = report.kept_states.len() + report.removed_dead.len() + report.removed_unreachable.len();
        assert_eq!(total, d.state_count());
        assert_eq!(
            brute_language(2, 12, |w| d.accepts(w)),
            brute_language(2, 12, |w| t.accepts(w))
        );
        assert_eq!(count_words(&d), count_words(&t));
    }
}

#[test]
fn determinized_oracle_matches_subset_simulation() {
    let sigma = Alphabet::from_chars("abc").unwrap();
    let w = sigma.parse_compact("bbac").unwrap();
    let oracle = FactorOracle::build(sigma, &w).unwrap();
    let nfa = oracle.as_nfa(false);
    let dfa = nfa.determinize(DEFAULT_DETERMINIZE_CAP).unwrap();
    for word in all_words(3, 6) {
        assert_eq!(dfa.accepts(&word), nfa.accepts(&word), "{word:?}");
    }
}

#[test]
fn dfa_as_nfa_determinizes_equivalently() {
    let mut r = rng(13);
    for _ in 0..30 {
        let d = random_dfa(&mut r, 5, small_alphabet(2), 0.7, 0.4);
        let back = d.to_nfa().determinize(DEFAULT_DETERMINIZE_CAP).unwrap();
        for w in all_words(2, 8) {
            assert_eq!(back.accepts(&w), d.accepts(&w));
        }
    }
}

#[test]
fn a_star_b_is_infinite_and_running_improv_is_not() {
    let sigma = Alphabet::from_chars("ab").unwrap();
    let a_star_b = Dfa::from_parts(sigma, 2, 0, &[1], &[(0, 0, 0), (0, 1, 1)]).unwrap();
    assert!(is_language_infinite(&a_star_b));
    // enumeration oracle: more distinct accepted lengths than states
    let lengths: std::collections::BTreeSet<usize> =
        brute_language(2, 6, |w| a_star_b.accepts(w)).iter().map(Vec::len).collect();
    assert!(lengths.len() > a_star_b.state_count());
    assert!(!is_language_infinite(&builtins::running_improv()));
}

/// Infinite iff some accepted word has length in [n, 2n), for n states.
fn pumping_probe(width: usize, n: usize, accepts: impl Fn(&[usize]) -> bool) -> bool {
    all_words(width, 2 * n - 1)
        .into_iter()
        .any(|w| w.len() >= n && accepts(&w))
}

fn arb_dfa() -> impl Strategy<Value = Dfa> {
    (1usize..=6, any::<u64>(), 0.2f64..0.95, 0.1f64..0.7).prop_map(|(n, seed, e, a)| {
        random_dfa(&mut ChaCha8Rng::seed_from_u64(seed), n, small_alphabet(2), e, a)
    })
}

fn arb_nfa() -> impl Strategy<Value = Nfa> {
    (1usize..=5, any::<u64>(), 0.05f64..0.5, 0.0f64..0.3, 0.1f64..0.6).prop_map(
        |(n, seed, e, eps, a)| {
            random_nfa(&mut ChaCha8Rng::seed_from_u64(seed), n, small_alphabet(2), e, eps, a)
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn product_and_complement_membership(a in arb_dfa(), b in arb_dfa()) {
        let p = Dfa::product(&a, &b).unwrap();
        let c = a.complement();
        for w in all_words(2, 8) {
            prop_assert_eq!(p.accepts(&w), a.accepts(&w) && b.accepts(&w));
            prop_assert_eq!(c.accepts(&w), !a.accepts(&w));
        }
        prop_assert!(p.state_count() <= a.state_count() * b.state_count());
    }

    #[test]
    fn complement_is_an_involution(a in arb_dfa()) {
        let cc = a.complement().complement();
        for w in all_words(2, 8) {
            prop_assert_eq!(cc.accepts(&w), a.accepts(&w));
        }
    }

    #[test]
    fn determinize_preserves_membership(n in arb_nfa()) {
        let d = n.determinize(DEFAULT_DETERMINIZE_CAP).unwrap();
        let free = n.without_epsilon();
        for w in all_words(2, 8) {
            prop_assert_eq!(d.accepts(&w), n.accepts(&w));
            prop_assert_eq!(free.accepts(&w), n.accepts(&w));
        }
    }

    #[test]
    fn trim_preserves_membership(a in arb_dfa(), n in arb_nfa()) {
        let (ta, _) = trim_dfa(&a);
        let (tn, rn) = trim_nfa(&n);
        for w in all_words(2, 8) {
            prop_assert_eq!(ta.accepts(&w), a.accepts(&w));
            prop_assert_eq!(tn.accepts(&w), n.accepts(&w));
        }
        prop_assert_eq!(
            rn.kept_states.len() + rn.removed_dead.len() + rn.removed_unreachable.len(),
            n.state_count()
        );
    }

    #[test]
    fn infinite_iff_pumping_probe(a in arb_dfa()) {
        let probe = pumping_probe(2, a.state_count(), |w| a.accepts(w));
        prop_assert_eq!(is_language_infinite(&a), probe);
    }

    #[test]
    fn nfa_infinite_iff_pumping_probe(n in arb_nfa()) {
        let probe = pumping_probe(2, n.state_count(), |w| n.accepts(w));
        prop_assert_eq!(is_language_infinite(&n), probe);
    }
}
