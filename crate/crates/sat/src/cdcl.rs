//! Internal conflict-driven clause-learning solver.
//!
//! Two watched literals, first-UIP learning, activity-ordered branching with
//! phase saving, and Luby restarts. Aimed at the desk-scale instances the
//! improvisation engine generates; it keeps no clause-deletion policy.

use crate::cnf::{CnfFormula, Lit, Model};
use crate::solver::{SolveOutcome, SolverError, SolverOracle};

const FALSE: u8 = 0;
const TRUE: u8 = 1;
const UNDEF: u8 = 2;
const NO_REASON: u32 = u32::MAX;

#[inline]
fn code(lit: Lit) -> u32 {
    let v = lit.var().index() - 1;
    v * 2 + u32::from(!lit.is_positive())
}

#[inline]
fn lit_value(assign: &[u8], lit: u32) -> u8 {
    let a = assign[(lit >> 1) as usize];
    if a == UNDEF {
        UNDEF
    } else {
        a ^ (lit & 1) as u8
    }
}

/// Max-heap of variables keyed by activity.
struct VarOrder {
    heap: Vec<u32>,
    pos: Vec<u32>,
}

const NOT_IN_HEAP: u32 = u32::MAX;

impl VarOrder {
    fn new(n: usize) -> Self {
        VarOrder {
            heap: (0..n as u32).collect(),
            pos: (0..n as u32).collect(),
        }
    }

    fn contains(&self, v: u32) -> bool {
        self.pos[v as usize] != NOT_IN_HEAP
    }

    fn sift_up(&mut self, mut i: usize, act: &[f64]) {
        let v = self.heap[i];
        while i > 0 {
            let parent = (i - 1) / 2;
            if act[self.heap[parent] as usize] >= act[v as usize] {
                break;
            }
            self.heap[i] = self.heap[parent];
            self.pos[self.heap[i] as usize] = i as u32;
            i = parent;
        }
        self.heap[i] = v;
        self.pos[v as usize] = i as u32;
    }

    fn sift_down(&mut self, mut i: usize, act: &[f64]) {
        let v = self.heap[i];
        let n = self.heap.len();
        loop {
            let left = 2 * i + 1;
            if left >= n {
                break;
            }
            let right = left + 1;
            let child = if right < n && act[self.heap[right] as usize] > act[self.heap[left] as usize] {
                right
            } else {
                left
            };
            if act[self.heap[child] as usize] <= act[v as usize] {
                break;
            }
            self.heap[i] = self.heap[child];
            self.pos[self.heap[i] as usize] = i as u32;
            i = child;
        }
        self.heap[i] = v;
        self.pos[v as usize] = i as u32;
    }

    fn insert(&mut self, v: u32, act: &[f64]) {
        if self.contains(v) {
            return;
        }
        self.heap.push(v);
        let i = self.heap.len() - 1;
        self.pos[v as usize] = i as u32;
        self.sift_up(i, act);
    }

    fn bumped(&mut self, v: u32, act: &[f64]) {
        if self.contains(v) {
            self.sift_up(self.pos[v as usize] as usize, act);
        }
    }

    fn pop(&mut self, act: &[f64]) -> Option<u32> {
        let top = *self.heap.first()?;
        let last = self.heap.pop().unwrap();
        self.pos[top as usize] = NOT_IN_HEAP;
        if !self.heap.is_empty() {
            self.heap[0] = last;
            self.pos[last as usize] = 0;
            self.sift_down(0, act);
        }
        Some(top)
    }
}

pub(crate) struct Engine {
    clauses: Vec<Vec<u32>>,
    watches: Vec<Vec<u32>>,
    assign: Vec<u8>,
    level: Vec<u32>,
    reason: Vec<u32>,
    trail: Vec<u32>,
    trail_lim: Vec<usize>,
    qhead: usize,
    activity: Vec<f64>,
    var_inc: f64,
    order: VarOrder,
    phase: Vec<bool>,
    seen: Vec<bool>,
    ok: bool,
    conflicts: u64,
}

impl Engine {
    pub(crate) fn new(cnf: &CnfFormula) -> Self {
        let n = cnf.num_vars() as usize;
        let mut engine = Engine {
            clauses: Vec::with_capacity(cnf.clauses().len()),
            watches: vec![Vec::new(); 2 * n],
            assign: vec![UNDEF; n],
            level: vec![0; n],
            reason: vec![NO_REASON; n],
            trail: Vec::with_capacity(n),
            trail_lim: Vec::new(),
            qhead: 0,
            activity: vec![0.0; n],
            var_inc: 1.0,
            order: VarOrder::new(n),
            phase: vec![false; n],
            seen: vec![false; n],
            ok: true,
            conflicts: 0,
        };
        for clause in cnf.clauses() {
            engine.add_clause(clause);
            if !engine.ok {
                break;
            }
        }
        engine
    }

    fn decision_level(&self) -> usize {
        self.trail_lim.len()
    }

    fn enqueue(&mut self, lit: u32, reason: u32) {
        let v = (lit >> 1) as usize;
        self.assign[v] = if lit & 1 == 0 { TRUE } else { FALSE };
        self.level[v] = self.decision_level() as u32;
        self.reason[v] = reason;
        self.trail.push(lit);
    }

    /// Adds a clause permanently; the engine is reset to decision level 0.
    pub(crate) fn add_clause(&mut self, clause: &[Lit]) {
        if !self.ok {
            return;
        }
        self.cancel_until(0);
        let mut lits: Vec<u32> = clause.iter().map(|&l| code(l)).collect();
        lits.sort_unstable();
        lits.dedup();
        if lits.windows(2).any(|w| w[0] ^ 1 == w[1]) {
            return;
        }
        if lits.iter().any(|&l| lit_value(&self.assign, l) == TRUE) {
            return;
        }
        lits.retain(|&l| lit_value(&self.assign, l) != FALSE);
        match lits.len() {
            0 => self.ok = false,
            1 => {
                self.enqueue(lits[0], NO_REASON);
                if self.propagate().is_some() {
                    self.ok = false;
                }
            }
            _ => {
                self.attach(lits);
            }
        }
    }

    /// Adds a clause that the current total assignment falsifies, jumping back
    /// only as far as a learnt clause would.
    pub(crate) fn add_blocking(&mut self, clause: &[Lit]) {
        if !self.ok {
            return;
        }
        let mut lits: Vec<u32> = clause.iter().map(|&l| code(l)).collect();
        lits.sort_unstable();
        lits.dedup();
        if lits.is_empty() {
            self.ok = false;
            return;
        }
        if lits.iter().any(|&l| lit_value(&self.assign, l) != FALSE) {
            return self.add_clause(clause);
        }
        lits.sort_by_key(|&l| std::cmp::Reverse(self.level[(l >> 1) as usize]));
        let level = |l: u32| self.level[(l >> 1) as usize] as usize;
        let top = level(lits[0]);
        let second = lits.get(1).map_or(0, |&l| level(l));
        if top == 0 {
            self.ok = false;
        } else if lits.len() == 1 {
            self.cancel_until(0);
            self.enqueue(lits[0], NO_REASON);
        } else if second < top {
            self.cancel_until(second);
            let asserting = lits[0];
            let ci = self.attach(lits);
            self.enqueue(asserting, ci);
        } else {
            self.cancel_until(top - 1);
            self.attach(lits);
        }
    }

    fn attach(&mut self, lits: Vec<u32>) -> u32 {
        let idx = self.clauses.len() as u32;
        self.watches[lits[0] as usize].push(idx);
        self.watches[lits[1] as usize].push(idx);
        self.clauses.push(lits);
        idx
    }

    /// Unit propagation; returns a conflicting clause index if one arises.
    fn propagate(&mut self) -> Option<u32> {
        while self.qhead < self.trail.len() {
            let p = self.trail[self.qhead];
            self.qhead += 1;
            let false_lit = p ^ 1;
            let mut ws = std::mem::take(&mut self.watches[false_lit as usize]);
            let (mut i, mut j) = (0, 0);
            let mut conflict = None;
            while i < ws.len() {
                let ci = ws[i];
                i += 1;
                let clause = &mut self.clauses[ci as usize];
                if clause[0] == false_lit {
                    clause.swap(0, 1);
                }
                if lit_value(&self.assign, clause[0]) == TRUE {
                    ws[j] = ci;
                    j += 1;
                    continue;
                }
                let mut moved = false;
                for k in 2..clause.len() {
                    if lit_value(&self.assign, clause[k]) != FALSE {
                        clause.swap(1, k);
                        self.watches[clause[1] as usize].push(ci);
                        moved = true;
                        break;
                    }
                }
                if moved {
                    continue;
                }
                ws[j] = ci;
                j += 1;
                let first = clause[0];
                if lit_value(&self.assign, first) == FALSE {
                    conflict = Some(ci);
                    while i < ws.len() {
                        ws[j] = ws[i];
                        i += 1;
                        j += 1;
                    }
                    break;
                }
                self.enqueue(first, ci);
            }
            ws.truncate(j);
            self.watches[false_lit as usize] = ws;
            if conflict.is_some() {
                self.qhead = self.trail.len();
                return conflict;
            }
        }
        None
    }

    fn bump(&mut self, v: u32) {
        self.activity[v as usize] += self.var_inc;
        if self.activity[v as usize] > 1e100 {
            for a in &mut self.activity {
                *a *= 1e-100;
            }
            self.var_inc *= 1e-100;
        }
        self.order.bumped(v, &self.activity);
    }

    /// First-UIP conflict analysis: learnt clause (asserting literal first) and
    /// the level to jump back to.
    fn analyze(&mut self, mut confl: u32) -> (Vec<u32>, usize) {
        let current = self.decision_level() as u32;
        let mut learnt: Vec<u32> = vec![0];
        let mut pending = 0usize;
        let mut index = self.trail.len();
        let mut asserting: Option<u32> = None;
        loop {
            let skip = usize::from(asserting.is_some());
            let len = self.clauses[confl as usize].len();
            for k in skip..len {
                let q = self.clauses[confl as usize][k];
                let v = q >> 1;
                if !self.seen[v as usize] && self.level[v as usize] > 0 {
                    self.seen[v as usize] = true;
                    self.bump(v);
                    if self.level[v as usize] >= current {
                        pending += 1;
                    } else {
                        learnt.push(q);
                    }
                }
            }
            loop {
                index -= 1;
                if self.seen[(self.trail[index] >> 1) as usize] {
                    break;
                }
            }
            let p = self.trail[index];
            let v = (p >> 1) as usize;
            self.seen[v] = false;
            pending -= 1;
            asserting = Some(p);
            if pending == 0 {
                break;
            }
            confl = self.reason[v];
        }
        learnt[0] = asserting.unwrap() ^ 1;
        for &l in &learnt[1..] {
            self.seen[(l >> 1) as usize] = false;
        }
        let mut back = 0;
        if learnt.len() > 1 {
            let mut best = 1;
            for k in 2..learnt.len() {
                if self.level[(learnt[k] >> 1) as usize] > self.level[(learnt[best] >> 1) as usize] {
                    best = k;
                }
            }
            learnt.swap(1, best);
            back = self.level[(learnt[1] >> 1) as usize] as usize;
        }
        (learnt, back)
    }

    fn cancel_until(&mut self, level: usize) {
        if self.decision_level() <= level {
            return;
        }
        let stop = self.trail_lim[level];
        for k in (stop..self.trail.len()).rev() {
            let lit = self.trail[k];
            let v = lit >> 1;
            self.phase[v as usize] = lit & 1 == 0;
            self.assign[v as usize] = UNDEF;
            self.reason[v as usize] = NO_REASON;
            self.order.insert(v, &self.activity);
        }
        self.trail.truncate(stop);
        self.trail_lim.truncate(level);
        self.qhead = stop;
    }

    fn pick_branch(&mut self) -> Option<u32> {
        while let Some(v) = self.order.pop(&self.activity) {
            if self.assign[v as usize] == UNDEF {
                return Some(v * 2 + u32::from(!self.phase[v as usize]));
            }
        }
        None
    }

    pub(crate) fn solve(&mut self, conflict_limit: Option<u64>) -> SolveOutcome {
        if !self.ok {
            return SolveOutcome::Unsat;
        }
        let budget_start = self.conflicts;
        let mut restart_round = 0u32;
        let mut since_restart = 0u64;
        let mut restart_limit = 100 * luby(restart_round);
        loop {
            if let Some(confl) = self.propagate() {
                self.conflicts += 1;
                since_restart += 1;
                if self.decision_level() == 0 {
                    self.ok = false;
                    return SolveOutcome::Unsat;
                }
                let (learnt, back) = self.analyze(confl);
                self.cancel_until(back);
                if learnt.len() == 1 {
                    self.enqueue(learnt[0], NO_REASON);
                } else {
                    let asserting = learnt[0];
                    let ci = self.attach(learnt);
                    self.enqueue(asserting, ci);
                }
                self.var_inc /= 0.95;
                if let Some(limit) = conflict_limit {
                    if self.conflicts - budget_start >= limit {
                        self.cancel_until(0);
                        return SolveOutcome::ResourceLimit;
                    }
                }
                if since_restart >= restart_limit {
                    self.cancel_until(0);
                    restart_round += 1;
                    since_restart = 0;
                    restart_limit = 100 * luby(restart_round);
                }
            } else {
                match self.pick_branch() {
                    None => {
                        let model = Model::new(self.assign.iter().map(|&a| a == TRUE).collect());
                        return SolveOutcome::Sat(model);
                    }
                    Some(lit) => {
                        self.trail_lim.push(self.trail.len());
                        self.enqueue(lit, NO_REASON);
                    }
                }
            }
        }
    }
}

/// Luby restart sequence 1, 1, 2, 1, 1, 2, 4, …
fn luby(mut i: u32) -> u64 {
    let mut size = 1u64;
    let mut seq = 0u32;
    while size < u64::from(i) + 1 {
        seq += 1;
        size = 2 * size + 1;
    }
    let mut x = u64::from(i);
    while size - 1 != x {
        size = (size - 1) >> 1;
        seq -= 1;
        x %= size;
    }
    i = seq;
    1u64 << i
}

/// The built-in backend.
#[derive(Clone, Debug, Default)]
pub struct InternalSolver {
    /// Conflicts allowed per query before reporting a resource limit.
    pub conflict_limit: Option<u64>,
}

impl InternalSolver {
    pub fn with_conflict_limit(limit: u64) -> Self {
        InternalSolver {
            conflict_limit: Some(limit),
        }
    }
}

impl SolverOracle for InternalSolver {
    fn backend_id(&self) -> &str {
        "internal"
    }

    fn query(&mut self, cnf: &CnfFormula) -> Result<SolveOutcome, SolverError> {
        Ok(Engine::new(cnf).solve(self.conflict_limit))
    }

    fn enumerate_projected(
        &mut self,
        cnf: &CnfFormula,
        cap: usize,
    ) -> Result<Vec<Vec<bool>>, SolverError> {
        let mut engine = Engine::new(cnf);
        let mut found = Vec::new();
        while found.len() < cap {
            match engine.solve(self.conflict_limit) {
                SolveOutcome::Sat(model) => {
                    if let Some(clause) = cnf.first_violated(&model) {
                        return Err(SolverError::InvalidModel {
                            backend: self.backend_id().to_string(),
                            clause,
                        });
                    }
                    let projected = cnf.project(&model);
                    if cnf.projection().is_empty() {
                        found.push(projected);
                        break;
                    }
                    engine.add_blocking(&cnf.blocking_clause(&projected));
                    found.push(projected);
                }
                SolveOutcome::Unsat => break,
                SolveOutcome::ResourceLimit => return Err(SolverError::ResourceLimit),
            }
        }
        Ok(found)
    }
}
