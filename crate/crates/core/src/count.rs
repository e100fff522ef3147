use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::dfa::{Dfa, StateId};
use crate::error::SampleError;
use crate::trim::{scc_ids, trim_dfa, TrimReport};

/// A language size: a natural number or ∞.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CountValue {
    Finite(BigUint),
    Infinite,
}

impl CountValue {
    pub fn finite(n: u64) -> Self {
        CountValue::Finite(BigUint::from(n))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, CountValue::Infinite)
    }

    pub fn as_finite(&self) -> Option<&BigUint> {
        match self {
            CountValue::Finite(n) => Some(n),
            CountValue::Infinite => None,
        }
    }

    /// `self ≥ r`, with ∞ above every rational.
    pub fn at_least(&self, r: &BigRational) -> bool {
        match self {
            CountValue::Infinite => true,
            CountValue::Finite(n) => BigRational::from_integer(BigInt::from(n.clone())) >= *r,
        }
    }
}

impl PartialOrd for CountValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CountValue {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (CountValue::Infinite, CountValue::Infinite) => Ordering::Equal,
            (CountValue::Infinite, _) => Ordering::Greater,
            (_, CountValue::Infinite) => Ordering::Less,
            (CountValue::Finite(a), CountValue::Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for CountValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CountValue::Finite(n) => write!(f, "{n}"),
            CountValue::Infinite => f.write_str("inf"),
        }
    }
}

/// Accepting-path counts of a trimmed acyclic DFA.
///
/// `counts[v]` is the number of words accepted from `v`; equivalently the
/// number of paths from `v` to a fresh sink that every accepting state links to.
#[derive(Clone, Debug)]
pub struct PathCountTable {
    dfa: Dfa,
    counts: Vec<BigUint>,
    report: TrimReport,
}

impl PathCountTable {
    /// The trimmed automaton the counts index into.
    pub fn dfa(&self) -> &Dfa {
        &self.dfa
    }

    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }

    pub fn count(&self, q: StateId) -> &BigUint {
        &self.counts[q]
    }

    pub fn total(&self) -> &BigUint {
        &self.counts[self.dfa.initial()]
    }

    pub fn trim_report(&self) -> &TrimReport {
        &self.report
    }

    /// Whether every state satisfies p_v = Σ p_succ + [v accepting].
    pub fn recurrence_holds(&self) -> bool {
        if self.report.kept_states.is_empty() {
            return self.total().is_zero();
        }
        (0..self.dfa.state_count()).all(|v| {
            let mut sum: BigUint = self
                .dfa
                .successors(v)
                .map(|(_, u)| &self.counts[u])
                .sum();
            if self.dfa.is_accepting(v) {
                sum += 1u32;
            }
            sum == self.counts[v] && !sum.is_zero()
        })
    }
}

fn is_acyclic(dfa: &Dfa) -> bool {
    let mut adj = vec![Vec::new(); dfa.state_count()];
    for (a, _, b) in dfa.transitions() {
        if a == b {
            return false;
        }
        adj[a].push(b);
    }
    let comp = scc_ids(&adj);
    dfa.transitions().all(|(a, _, b)| comp[a] != comp[b])
}

/// Reverse topological order (successors before predecessors) of an acyclic DFA.
fn reverse_topological(dfa: &Dfa) -> Vec<StateId> {
    let n = dfa.state_count();
    let mut order = Vec::with_capacity(n);
    let mut visited = vec![false; n];
    for root in 0..n {
        if visited[root] {
            continue;
        }
        visited[root] = true;
        let mut stack: Vec<(StateId, Vec<StateId>)> =
            vec![(root, dfa.successors(root).map(|(_, t)| t).collect())];
        while let Some((v, pending)) = stack.last_mut() {
            if let Some(t) = pending.pop() {
                if !visited[t] {
                    visited[t] = true;
                    let succ = dfa.successors(t).map(|(_, u)| u).collect();
                    stack.push((t, succ));
                }
            } else {
                order.push(*v);
                stack.pop();
            }
        }
    }
    order
}

/// Path-count table of the trimmed DFA.
pub fn path_counts(dfa: &Dfa) -> Result<PathCountTable, SampleError> {
    let (trimmed, report) = trim_dfa(dfa);
    if report.kept_states.is_empty() {
        return Ok(PathCountTable {
            dfa: trimmed,
            counts: vec![BigUint::zero()],
            report,
        });
    }
    if !is_acyclic(&trimmed) {
        return Err(SampleError::InfiniteLanguage);
    }
    let mut counts = vec![BigUint::zero(); trimmed.state_count()];
    for v in reverse_topological(&trimmed) {
        let mut total = if trimmed.is_accepting(v) {
            BigUint::one()
        } else {
            BigUint::zero()
        };
        for (_, u) in trimmed.successors(v) {
            total += &counts[u];
        }
        counts[v] = total;
    }
    Ok(PathCountTable {
        dfa: trimmed,
        counts,
        report,
    })
}

/// |L(dfa)|.
pub fn count_words(dfa: &Dfa) -> CountValue {
    match path_counts(dfa) {
        Ok(table) => CountValue::Finite(table.total().clone()),
        Err(_) => CountValue::Infinite,
    }
}

/// Length of the longest accepted word of a finite language, `None` when empty.
pub fn max_word_length(dfa: &Dfa) -> Result<Option<usize>, SampleError> {
    let table = path_counts(dfa)?;
    if table.total().is_zero() {
        return Ok(None);
    }
    let d = table.dfa();
    let mut longest = vec![0usize; d.state_count()];
    for v in reverse_topological(d) {
        longest[v] = d
            .successors(v)
            .map(|(_, u)| longest[u] + 1)
            .max()
            .unwrap_or(0);
        // trimmed: every state reaches acceptance, so a successor path ends accepting
    }
    Ok(Some(longest[d.initial()]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;

    #[test]
    fn lone_accepting_initial_counts_epsilon() {
        let sigma = Alphabet::from_chars("a").unwrap();
        let mut d = Dfa::new(sigma, 1, 0).unwrap();
        d.set_accepting(0, true);
        assert_eq!(count_words(&d), CountValue::finite(1));
    }

    #[test]
    fn chain_with_all_accepting() {
        let sigma = Alphabet::from_chars("a").unwrap();
        let k = 6;
        let mut d = Dfa::new(sigma, k + 1, 0).unwrap();
        for i in 0..=k {
            d.set_accepting(i, true);
            if i < k {
                d.set_transition(i, 0, i + 1);
            }
        }
        let table = path_counts(&d).unwrap();
        assert_eq!(*table.total(), BigUint::from(k as u64 + 1));
        assert!(table.recurrence_holds());
        assert_eq!(max_word_length(&d).unwrap(), Some(k));
    }

    #[test]
    fn ordering_puts_infinity_on_top() {
        assert!(CountValue::Infinite > CountValue::finite(1_000_000));
        assert!(CountValue::finite(3) < CountValue::finite(5));
        assert_eq!(CountValue::Infinite.to_string(), "inf");
    }
}
