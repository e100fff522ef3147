//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails or overruns its time limit.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use improv_core::builtins::{running_admiss, running_improv};
use improv_core::factor_oracle::FactorOracle;
use improv_core::improvise::{synthesize_dfa, synthesize_nfa_special, verify_improviser, Audit, CaseTag, Synthesis};
use improv_core::json::{automaton_from_str, automaton_to_string};
use improv_core::random::{random_acyclic_dfa, random_dfa, small_alphabet};
use improv_core::{
    count_words, is_language_infinite, Alphabet, Automaton, AutomatonError, CountValue, Dfa, Nfa, Symbol,
    UniformSampler, Word,
};
use improv_sat::{enumerate_projected_models, InternalSolver};
use improv_symbolic::{
    approx_count, diameter, encode_dfa, symbolic_is_infinite, synthesize_symbolic, unroll, SymbolicAutomaton,
    SymbolicOptions,
};
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

type Check = Result<String, String>;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn improv(args: &[&str]) -> (Option<i32>, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_improv")).args(args).output().unwrap();
    (out.status.code(), String::from_utf8(out.stdout).unwrap())
}

// ---- test-side oracles ----

/// Word-by-word simulation.
fn runs(dfa: &Dfa, word: &[Symbol]) -> bool {
    let mut q = dfa.initial();
    for &s in word {
        match dfa.next(q, s) {
            Some(t) => q = t,
            None => return false,
        }
    }
    dfa.is_accepting(q)
}

/// Accepted words of length at most `max_len`, by depth-first search over all words.
fn brute_words(dfa: &Dfa, max_len: usize) -> Vec<Word> {
    let width = dfa.alphabet().len();
    let mut out = Vec::new();
    let mut stack = vec![(dfa.initial(), Vec::new())];
    while let Some((q, w)) = stack.pop() {
        if dfa.is_accepting(q) {
            out.push(w.clone());
        }
        if w.len() == max_len {
            continue;
        }
        for s in 0..width {
            if let Some(t) = dfa.next(q, s) {
                let mut v = w.clone();
                v.push(s);
                stack.push((t, v));
            }
        }
    }
    out
}

/// Count by enumeration: an n-state DFA has an infinite language iff it
/// accepts a word of length in [n, 2n); otherwise every word is shorter than n.
fn brute_count(dfa: &Dfa) -> CountValue {
    let n = dfa.state_count();
    let words = brute_words(dfa, 2 * n - 1);
    if words.iter().any(|w| w.len() >= n) {
        CountValue::Infinite
    } else {
        CountValue::Finite(BigUint::from(words.len()))
    }
}

/// Count of the intersection of `dfas` through an explicit graph of state
/// tuples: infinite iff a live tuple lies on a cycle, otherwise a sum over
/// paths in reverse topological order.
fn tuple_count(dfas: &[&Dfa]) -> CountValue {
    let width = dfas[0].alphabet().len();
    let init: Vec<usize> = dfas.iter().map(|d| d.initial()).collect();
    let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(init.clone(), 0)]);
    let mut tuples = vec![init];
    let mut succ: Vec<Vec<usize>> = Vec::new();
    let mut i = 0;
    while i < tuples.len() {
        let mut next = Vec::new();
        for s in 0..width {
            let t: Option<Vec<usize>> = tuples[i].iter().zip(dfas).map(|(&p, d)| d.next(p, s)).collect();
            if let Some(t) = t {
                let id = *index.entry(t.clone()).or_insert_with(|| {
                    tuples.push(t);
                    tuples.len() - 1
                });
                next.push(id);
            }
        }
        succ.push(next);
        i += 1;
    }
    let n = tuples.len();
    let accepting: Vec<bool> = tuples
        .iter()
        .map(|t| t.iter().zip(dfas).all(|(&p, d)| d.is_accepting(p)))
        .collect();
    let mut live = accepting.clone();
    let mut changed = true;
    while changed {
        changed = false;
        for u in 0..n {
            if !live[u] && succ[u].iter().any(|&v| live[v]) {
                live[u] = true;
                changed = true;
            }
        }
    }
    // iterative DFS over live tuples: colour 1 = on stack, 2 = done
    let mut colour = vec![0u8; n];
    let mut order = Vec::new();
    let mut stack = vec![(0usize, 0usize)];
    if !live[0] {
        return CountValue::Finite(BigUint::zero());
    }
    colour[0] = 1;
    while let Some((u, k)) = stack.pop() {
        if k < succ[u].len() {
            stack.push((u, k + 1));
            let v = succ[u][k];
            if !live[v] {
                continue;
            }
            match colour[v] {
                0 => {
                    colour[v] = 1;
                    stack.push((v, 0));
                }
                1 => return CountValue::Infinite,
                _ => {}
            }
        } else {
            colour[u] = 2;
            order.push(u);
        }
    }
    let mut count = vec![BigUint::zero(); n];
    for &u in &order {
        let mut c = BigUint::from(u8::from(accepting[u]));
        for &v in &succ[u] {
            if live[v] {
                c += &count[v];
            }
        }
        count[u] = c;
    }
    CountValue::Finite(count[0].clone())
}

fn at_least(count: &CountValue, bound: &BigRational) -> bool {
    match count {
        CountValue::Infinite => true,
        CountValue::Finite(n) => BigRational::from_integer(n.clone().into()) >= *bound,
    }
}

fn fixed_length(width: usize, len: usize) -> Dfa {
    let sigma = Alphabet::new((0..width).map(|i| format!("s{i}"))).unwrap();
    let mut dfa = Dfa::new(sigma, len + 1, 0).unwrap();
    for q in 0..len {
        for s in 0..width {
            dfa.set_transition(q, s, q + 1);
        }
    }
    dfa.set_accepting(len, true);
    dfa
}

fn running_product() -> Dfa {
    Dfa::product(&running_improv(), &running_admiss()).unwrap()
}

fn random_fixture(rng: &mut ChaCha8Rng, max_states: usize) -> Dfa {
    let states = rng.random_range(1..=max_states);
    let edge = rng.random_range(0.3..1.0);
    let accept = rng.random_range(0.1..0.7);
    if rng.random_bool(0.5) {
        random_dfa(rng, states, small_alphabet(2), edge, accept)
    } else {
        random_acyclic_dfa(rng, states, small_alphabet(2), edge, accept)
    }
}

// ---- criteria ----

fn c1_running_counts() -> Check {
    let (code, out) = improv(&["count", data("running_improv.json").to_str().unwrap()]);
    ensure(code == Some(0) && out == "5\n", || format!("count I printed {out:?} (exit {code:?})"))?;
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("product.json");
    std::fs::write(&path, automaton_to_string(&running_product().into())).unwrap();
    let (code, out) = improv(&["count", path.to_str().unwrap()]);
    ensure(code == Some(0) && out == "3\n", || format!("count A printed {out:?} (exit {code:?})"))?;
    Ok("|I| = 5, |A| = 3".into())
}

fn c2_feasibility_triple() -> Check {
    let cases = [
        ("running_strict.json", "infeasible 5 3 4 4\n", 2),
        ("running_tight.json", "feasible 5 3 3 3\n", 0),
        ("running.json", "feasible 5 3 4 3\n", 0),
    ];
    for (file, expected, exit) in cases {
        let (code, out) = improv(&["feasible", data(file).to_str().unwrap()]);
        ensure(out == expected && code == Some(exit), || format!("{file}: {out:?} exit {code:?}"))?;
    }
    Ok("(0,1/4) infeasible; (0,1/3) and (1/4,1/4) feasible".into())
}

fn c3_running_distribution() -> Check {
    let imp = synthesize_dfa(&running_improv(), &running_admiss(), &q(1, 4), &q(1, 4))
        .map_err(|e| e.to_string())?
        .into_improviser()
        .ok_or("no improviser")?;
    ensure(imp.case() == CaseTag::D, || format!("case {}", imp.case()))?;
    let sigma = running_improv().alphabet().clone();
    let expected: BTreeMap<String, BigRational> = [
        ("000", q(1, 4)),
        ("001", q(1, 4)),
        ("101", q(1, 4)),
        ("010", q(1, 8)),
        ("100", q(1, 8)),
    ]
    .into_iter()
    .map(|(w, p)| (w.to_string(), p))
    .collect();
    let dist: BTreeMap<String, BigRational> = imp
        .distribution(100)
        .ok_or("no analytic distribution")?
        .into_iter()
        .map(|(w, p)| (sigma.format_compact(&w), p))
        .collect();
    ensure(dist == expected, || format!("analytic {dist:?}"))?;
    let draws = 100_000;
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut freq: BTreeMap<String, usize> = BTreeMap::new();
    for _ in 0..draws {
        let w = imp.draw(&mut rng).map_err(|e| e.to_string())?;
        *freq.entry(sigma.format_compact(&w)).or_default() += 1;
    }
    let mut worst = 0.0f64;
    for (w, p) in &expected {
        let f = *freq.get(w).unwrap_or(&0) as f64 / draws as f64;
        worst = worst.max((f - improv_core::rational::to_f64(p)).abs());
    }
    ensure(freq.len() == 5 && worst <= 0.01, || format!("max deviation {worst:.4}, support {}", freq.len()))?;
    Ok(format!("exact metadata; max empirical deviation {worst:.4}"))
}

fn c4_factor_oracle() -> Check {
    let (code, out) = improv(&["oracle", "bbac"]);
    ensure(code == Some(0), || format!("exit {code:?}"))?;
    let v: Value = serde_json::from_str(&out).map_err(|e| e.to_string())?;
    let transitions: BTreeSet<(u64, String, u64)> = v["transitions"]
        .as_array()
        .ok_or("no transitions")?
        .iter()
        .map(|t| (t["from"].as_u64().unwrap(), t["symbol"].as_str().unwrap().to_string(), t["to"].as_u64().unwrap()))
        .collect();
    let links: BTreeSet<(u64, u64)> = v["epsilon"]
        .as_array()
        .ok_or("no suffix links")?
        .iter()
        .map(|e| (e["from"].as_u64().unwrap(), e["to"].as_u64().unwrap()))
        .collect();
    let own = |xs: &[(u64, &str, u64)]| -> BTreeSet<(u64, String, u64)> {
        xs.iter().map(|&(f, s, t)| (f, s.to_string(), t)).collect()
    };
    let direct = own(&[(0, "b", 1), (1, "b", 2), (2, "a", 3), (3, "c", 4)]);
    let external = own(&[(0, "a", 3), (0, "c", 4), (1, "a", 3)]);
    let expected_links: BTreeSet<(u64, u64)> = [(1, 0), (2, 1), (3, 0), (4, 0)].into();
    let all: BTreeSet<_> = direct.union(&external).cloned().collect();
    ensure(transitions == all, || format!("transitions {transitions:?}"))?;
    ensure(links == expected_links, || format!("suffix links {links:?}"))?;

    let sigma = Alphabet::from_chars("abc").unwrap();
    let word = sigma.parse_compact("bbac").unwrap();
    let edges = FactorOracle::build(sigma, &word).map_err(|e| e.to_string())?.edges();
    let widen = |xs: &[(usize, String, usize)]| -> BTreeSet<(u64, String, u64)> {
        xs.iter().map(|(f, s, t)| (*f as u64, s.clone(), *t as u64)).collect()
    };
    ensure(widen(&edges.direct) == direct, || format!("direct {:?}", edges.direct))?;
    ensure(widen(&edges.external) == external, || format!("external {:?}", edges.external))?;
    let lib_links: BTreeSet<(u64, u64)> = edges.suffix_links.iter().map(|&(a, b)| (a as u64, b as u64)).collect();
    ensure(lib_links == expected_links, || format!("library links {lib_links:?}"))?;
    Ok("4 direct, 3 external, 4 suffix links".into())
}

fn c5_feasibility_equivalence() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut produced, mut refused) = (0, 0);
    for trial in 0..500 {
        let ni = rng.random_range(1..=5);
        let i = random_dfa(&mut rng, ni, small_alphabet(2), 0.7, 0.4);
        let nd = rng.random_range(1..=5);
        let d = random_dfa(&mut rng, nd, small_alphabet(2), 0.7, 0.5);
        let eps = q(rng.random_range(0..=8), 8);
        let rho = q(rng.random_range(1..=8), 8);
        let size_i = tuple_count(&[&i]);
        let size_a = tuple_count(&[&i, &d]);
        let condition = at_least(&size_i, &rho.recip()) && at_least(&size_a, &((BigRational::one() - &eps) / &rho));
        let syn = synthesize_dfa(&i, &d, &eps, &rho).map_err(|e| format!("trial {trial}: {e}"))?;
        match syn {
            Synthesis::Improviser(imp) => {
                ensure(condition, || format!("trial {trial}: improviser for an instance failing the condition"))?;
                let dist = imp.distribution(10_000).ok_or_else(|| format!("trial {trial}: no distribution"))?;
                let mut total = BigRational::zero();
                let mut admissible = BigRational::zero();
                for (w, p) in &dist {
                    ensure(runs(&i, w), || format!("trial {trial}: support word {w:?} outside I"))?;
                    ensure(*p <= rho, || format!("trial {trial}: probability {p} above rho {rho}"))?;
                    total += p;
                    if runs(&d, w) {
                        admissible += p;
                    }
                }
                ensure(total.is_one(), || format!("trial {trial}: total mass {total}"))?;
                ensure(admissible >= BigRational::one() - &eps, || {
                    format!("trial {trial}: admissible mass {admissible} below 1 - {eps}")
                })?;
                produced += 1;
            }
            Synthesis::Infeasible(_) => {
                ensure(!condition, || format!("trial {trial}: refused a feasible instance"))?;
                refused += 1;
            }
            other => return Err(format!("trial {trial}: unexpected {other:?}")),
        }
    }
    Ok(format!("500 instances: {produced} improvisers audited, {refused} infeasible"))
}

fn c6_counting_oracle() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut infinite = 0;
    for trial in 0..500 {
        let dfa = random_fixture(&mut rng, 8);
        let truth = brute_count(&dfa);
        let got = count_words(&dfa);
        ensure(got == truth, || format!("trial {trial}: count_words {got}, enumeration {truth}"))?;
        infinite += usize::from(truth == CountValue::Infinite);
    }
    Ok(format!("500 DFAs agree ({infinite} infinite)"))
}

fn c7_exact_uniformity() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut done = 0;
    let mut paths = 0;
    while done < 20 {
        let states = rng.random_range(2..=7);
        let dfa = random_acyclic_dfa(&mut rng, states, small_alphabet(2), 0.8, 0.5);
        let words = brute_words(&dfa, states);
        if words.is_empty() || words.len() > 64 {
            continue;
        }
        let sampler = UniformSampler::new(&dfa).map_err(|e| e.to_string())?;
        let expected = BigRational::new(BigUint::one().into(), BigUint::from(words.len()).into());
        for w in &words {
            let p = sampler.walk_probability(w).ok_or_else(|| format!("walk cannot produce {w:?}"))?;
            ensure(p == expected, || format!("{w:?}: walk probability {p}, expected {expected}"))?;
        }
        paths += words.len();
        done += 1;
    }
    Ok(format!("20 languages, {paths} accepting paths at exactly 1/|L|"))
}

fn twin_fixtures() -> Vec<Dfa> {
    let sigma = small_alphabet(2);
    let mut fixtures = vec![
        running_improv(),
        running_admiss(),
        running_product(),
        Dfa::universal(sigma.clone()),
        Dfa::empty_language(sigma.clone()),
        Dfa::from_parts(Alphabet::from_chars("ab").unwrap(), 2, 0, &[1], &[(0, 0, 0), (0, 1, 1)]).unwrap(),
        fixed_length(2, 6),
        fixed_length(3, 4),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    fixtures.extend((0..120).map(|_| random_fixture(&mut rng, 8)));
    fixtures
}

fn c8_twin_agreement() -> Check {
    let mut oracle = InternalSolver::default();
    let fixtures = twin_fixtures();
    for (k, dfa) in fixtures.iter().enumerate() {
        let sa = encode_dfa(dfa).map_err(|e| e.to_string())?;
        let bounds = diameter(&sa, &mut oracle, 64).map_err(|e| format!("fixture {k}: {e}"))?;
        let inf = symbolic_is_infinite(&sa, &mut oracle, &bounds).map_err(|e| e.to_string())?;
        ensure(inf == is_language_infinite(dfa), || format!("fixture {k}: infinite {inf}"))?;
        if let CountValue::Finite(n) = count_words(dfa) {
            let u = unroll(&sa, bounds.diameter);
            let models = enumerate_projected_models(&mut oracle, &u.cnf, 1 << 16).map_err(|e| e.to_string())?;
            ensure(BigUint::from(models.len()) == n, || format!("fixture {k}: {} models, {n} words", models.len()))?;
        }
    }
    Ok(format!("{} fixtures agree", fixtures.len()))
}

fn c9_approximate_counting() -> Check {
    let fixtures: [(&str, Dfa, u64); 4] = [
        ("product", running_product(), 3),
        ("improvisations", running_improv(), 5),
        ("length-6", fixed_length(2, 6), 64),
        ("length-10", fixed_length(2, 10), 1024),
    ];
    let mut oracle = InternalSolver::default();
    let mut summary = Vec::new();
    for (name, dfa, truth) in fixtures {
        ensure(count_words(&dfa) == CountValue::Finite(truth.into()), || format!("{name}: fixture count"))?;
        let sa = encode_dfa(&dfa).map_err(|e| e.to_string())?;
        let bounds = diameter(&sa, &mut oracle, 64).map_err(|e| e.to_string())?;
        let mut hits = 0;
        for run in 0..20 {
            let mut rng = ChaCha8Rng::seed_from_u64(900 + run);
            let est = approx_count(&sa, &mut oracle, 0.5, 0.1, &bounds, &mut rng).map_err(|e| e.to_string())?;
            let v: f64 = est.value.as_finite().ok_or("infinite estimate")?.to_string().parse().unwrap();
            let t = truth as f64;
            hits += usize::from(v >= t / 1.5 && v <= t * 1.5);
        }
        ensure(hits >= 17, || format!("{name}: {hits}/20 within factor 1.5"))?;
        summary.push(format!("{truth}: {hits}/20"));
    }
    Ok(summary.join(", "))
}

struct Explicit(Dfa, Dfa);

impl Audit for Explicit {
    fn in_improvisations(&self, word: &[Symbol]) -> bool {
        runs(&self.0, word)
    }

    fn admissible(&self, word: &[Symbol]) -> bool {
        runs(&self.0, word) && runs(&self.1, word)
    }
}

fn c10_symbolic_scheme() -> Check {
    let audit = Explicit(running_improv(), running_admiss());
    let i: SymbolicAutomaton = encode_dfa(&audit.0).map_err(|e| e.to_string())?;
    let a = encode_dfa(&audit.1).map_err(|e| e.to_string())?;
    let (eps, rho, tau) = (q(1, 4), q(1, 4), q(7, 1));
    let mut produced = 0;
    let mut lowest = 1.0f64;
    for run in 0..20 {
        let mut rng = ChaCha8Rng::seed_from_u64(1000 + run);
        let out = synthesize_symbolic(&i, &a, &eps, &rho, &tau, 0.2, &SymbolicOptions::default(), &mut rng)
            .map_err(|e| e.to_string())?;
        let Synthesis::Improviser(imp) = out.synthesis else {
            continue;
        };
        produced += 1;
        let report = verify_improviser(&imp, &audit, &eps, &rho, 100_000, &mut rng).map_err(|e| e.to_string())?;
        ensure(report.membership_violations == 0, || format!("run {run}: membership violations"))?;
        let adm = report.empirical_admissible();
        ensure(adm >= 0.74, || format!("run {run}: admissible {adm:.4}"))?;
        lowest = lowest.min(adm);
    }
    ensure(produced >= 16, || format!("{produced}/20 runs produced an improviser"))?;
    Ok(format!("{produced}/20 improvisers, lowest admissible mass {lowest:.4}"))
}

fn c11_rejection_paths() -> Check {
    let pfa = std::fs::read_to_string(data("pfa.json")).unwrap();
    ensure(automaton_from_str(&pfa) == Err(AutomatonError::PfaUnsupported), || "PFA accepted".into())?;
    let (code, _) = improv(&["feasible", data("pfa_instance.json").to_str().unwrap()]);
    ensure(code == Some(1), || format!("PFA instance exit {code:?}"))?;

    let sigma = Alphabet::from_chars("ab").unwrap();
    let mut nfa = Nfa::new(sigma, 4);
    nfa.add_initial(0);
    for q in 0..3 {
        nfa.add_transition(q, 0, q + 1);
        nfa.add_transition(q, 1, q + 1);
        nfa.add_transition(0, 0, q + 1);
    }
    nfa.set_accepting(3, true);
    let nfa: Automaton = nfa.into();
    let syn = synthesize_nfa_special(&nfa, &nfa, &q(0, 1), &q(1, 2), 1).map_err(|e| e.to_string())?;
    ensure(matches!(syn, Synthesis::NotApplicable(_)), || format!("NFA dispatch gave {syn:?}"))?;
    Ok("PFA parse rejected; finite NFA over the determinization cap is not applicable".into())
}

fn main() -> ExitCode {
    let criteria: [(u32, &str, u64, fn() -> Check); 11] = [
        (1, "running-example counts", 1, c1_running_counts),
        (2, "running-example feasibility triple", 1, c2_feasibility_triple),
        (3, "running-example improviser distribution", 10, c3_running_distribution),
        (4, "factor oracle of bbac", 1, c4_factor_oracle),
        (5, "feasibility equivalence on 500 instances", 60, c5_feasibility_equivalence),
        (6, "counting against enumeration on 500 DFAs", 60, c6_counting_oracle),
        (7, "exact uniformity of the path walk", 10, c7_exact_uniformity),
        (8, "symbolic/explicit twin agreement", 120, c8_twin_agreement),
        (9, "approximate counting contract", 600, c9_approximate_counting),
        (10, "symbolic scheme end to end", 600, c10_symbolic_scheme),
        (11, "rejection paths", 1, c11_rejection_paths),
    ];
    let mut failed = 0;
    for (n, name, limit, check) in criteria {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let result = match result {
            Ok(detail) if elapsed > Duration::from_secs(limit) => {
                Err(format!("{detail}; took {:.2}s, limit {limit}s", elapsed.as_secs_f64()))
            }
            other => other,
        };
        match result {
            Ok(detail) => println!("PASS {n:>2} {name} ({:.2}s): {detail}", elapsed.as_secs_f64()),
            Err(why) => {
                failed += 1;
                println!("FAIL {n:>2} {name} ({:.2}s): {why}", elapsed.as_secs_f64());
            }
        }
    }
    println!("{} of 11 criteria passed", 11 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
