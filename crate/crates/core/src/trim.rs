use std::collections::BTreeSet;

use crate::automaton::AsNfa;
use crate::dfa::{Dfa, StateId};
use crate::nfa::Nfa;

/// How [`trim_dfa`] / [`trim_nfa`] partitioned the original states.
///
/// `kept_states[i]` is the original id of new state `i`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TrimReport {
    pub kept_states: Vec<StateId>,
    pub removed_unreachable: BTreeSet<StateId>,
    pub removed_dead: BTreeSet<StateId>,
}

fn mark(adj: &[Vec<StateId>], roots: impl IntoIterator<Item = StateId>) -> Vec<bool> {
    let mut seen = vec![false; adj.len()];
    let mut stack: Vec<StateId> = roots.into_iter().collect();
    while let Some(q) = stack.pop() {
        if !seen[q] {
            seen[q] = true;
            stack.extend(adj[q].iter().copied().filter(|&t| !seen[t]));
        }
    }
    seen
}

/// Forward and backward usefulness of every state, over all edges.
fn useful(
    n: usize,
    edges: &[(StateId, StateId)],
    initial: impl IntoIterator<Item = StateId>,
    accepting: impl IntoIterator<Item = StateId>,
) -> TrimReport {
    let mut fwd = vec![Vec::new(); n];
    let mut bwd = vec![Vec::new(); n];
    for &(a, b) in edges {
        fwd[a].push(b);
        bwd[b].push(a);
    }
    let reach = mark(&fwd, initial);
    let coreach = mark(&bwd, accepting);
    let mut report = TrimReport::default();
    for q in 0..n {
        if !reach[q] {
            report.removed_unreachable.insert(q);
        } else if !coreach[q] {
            report.removed_dead.insert(q);
        } else {
            report.kept_states.push(q);
        }
    }
    report
}

fn renumbering(report: &TrimReport, n: usize) -> Vec<Option<StateId>> {
    let mut map = vec![None; n];
    for (new, &old) in report.kept_states.iter().enumerate() {
        map[old] = Some(new);
    }
    map
}

/// Removes states that are unreachable or cannot reach acceptance. An empty
/// language yields a one-state rejecting DFA (and an empty `kept_states`).
pub fn trim_dfa(dfa: &Dfa) -> (Dfa, TrimReport) {
    let edges: Vec<(StateId, StateId)> = dfa.transitions().map(|(a, _, b)| (a, b)).collect();
    let report = useful(
        dfa.state_count(),
        &edges,
        [dfa.initial()],
        dfa.accepting_states(),
    );
    if report.kept_states.is_empty() {
        return (Dfa::empty_language(dfa.alphabet().clone()), report);
    }
    let map = renumbering(&report, dfa.state_count());
    let mut out = Dfa::new(
        dfa.alphabet().clone(),
        report.kept_states.len(),
        map[dfa.initial()].unwrap(),
    )
    .unwrap();
    for (new, &old) in report.kept_states.iter().enumerate() {
        out.set_accepting(new, dfa.is_accepting(old));
        for (s, t) in dfa.successors(old) {
            if let Some(t) = map[t] {
                out.set_transition(new, s, t);
            }
        }
    }
    (out, report)
}

/// NFA counterpart of [`trim_dfa`]; ε-edges count as edges.
pub fn trim_nfa(nfa: &Nfa) -> (Nfa, TrimReport) {
    let mut edges: Vec<(StateId, StateId)> = nfa.transitions().map(|(a, _, b)| (a, b)).collect();
    edges.extend(nfa.epsilon_edges());
    let report = useful(
        nfa.state_count(),
        &edges,
        nfa.initial().iter().copied(),
        nfa.accepting_states(),
    );
    if report.kept_states.is_empty() {
        return (Nfa::new(nfa.alphabet().clone(), 1), report);
    }
    let map = renumbering(&report, nfa.state_count());
    let mut out = Nfa::new(nfa.alphabet().clone(), report.kept_states.len());
    for &q in nfa.initial() {
        if let Some(q) = map[q] {
            out.add_initial(q);
        }
    }
    for (new, &old) in report.kept_states.iter().enumerate() {
        out.set_accepting(new, nfa.is_accepting(old));
    }
    for (a, s, b) in nfa.transitions() {
        if let (Some(a), Some(b)) = (map[a], map[b]) {
            out.add_transition(a, s, b);
        }
    }
    for (a, b) in nfa.epsilon_edges() {
        if let (Some(a), Some(b)) = (map[a], map[b]) {
            out.add_epsilon(a, b);
        }
    }
    (out, report)
}

/// Strongly connected component index of every node (iterative Tarjan).
pub(crate) fn scc_ids(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![usize::MAX; n];
    let mut stack = Vec::new();
    let mut next_index = 0;
    let mut next_comp = 0;
    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        let mut call: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut i)) = call.last_mut() {
            if *i < adj[v].len() {
                let w = adj[v][*i];
                *i += 1;
                if index[w] == usize::MAX {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    loop {
                        let w = stack.pop().unwrap();
                        on_stack[w] = false;
                        comp[w] = next_comp;
                        if w == v {
                            break;
                        }
                    }
                    next_comp += 1;
                }
            }
        }
    }
    comp
}

/// Whether the accepted language is infinite.
///
/// Decided on the trimmed transition graph with ε-edges included: the language
/// is infinite exactly when some cycle carries at least one symbol, i.e. some
/// symbol-labelled edge joins two states of one strongly connected component.
/// Cycles made only of ε-edges do not count.
pub fn is_language_infinite<A: AsNfa + ?Sized>(automaton: &A) -> bool {
    let nfa = automaton.as_nfa();
    let (trimmed, report) = trim_nfa(&nfa);
    if report.kept_states.is_empty() {
        return false;
    }
    let n = trimmed.state_count();
    let mut adj = vec![Vec::new(); n];
    for (a, _, b) in trimmed.transitions() {
        adj[a].push(b);
    }
    for (a, b) in trimmed.epsilon_edges() {
        adj[a].push(b);
    }
    let comp = scc_ids(&adj);
    let infinite = trimmed.transitions().any(|(a, _, b)| comp[a] == comp[b]);
    infinite
}
