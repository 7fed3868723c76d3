//! Incremental CDCL SAT engine.
//!
//! Two-watched-literal propagation with blockers, first-UIP learning with
//! local minimization, VSIDS branching with phase saving, Luby restarts and
//! activity-based learnt-clause reduction. Incrementality is through
//! assumptions only: clauses are never retracted, so temporary constraints
//! are added behind fresh activation atoms (see [`Solver::new_var`]).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::logic::{Atom, CnfTheory, Interpretation, Literal};

const TRUE: i8 = 1;
const FALSE: i8 = -1;
const UNDEF: i8 = 0;
const NO_REASON: u32 = u32::MAX;

const VAR_DECAY: f64 = 0.95;
const CLAUSE_DECAY: f64 = 0.999;
const RANDOM_VAR_FREQ: f64 = 0.005;
const RESTART_BASE: u64 = 100;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveResult {
    Sat(Interpretation),
    Unsat,
}

impl SolveResult {
    pub fn is_sat(&self) -> bool {
        matches!(self, SolveResult::Sat(_))
    }

    pub fn model(&self) -> Option<&Interpretation> {
        match self {
            SolveResult::Sat(m) => Some(m),
            SolveResult::Unsat => None,
        }
    }

    pub fn into_model(self) -> Option<Interpretation> {
        match self {
            SolveResult::Sat(m) => Some(m),
            SolveResult::Unsat => None,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Stats {
    pub solves: u64,
    pub decisions: u64,
    pub propagations: u64,
    pub conflicts: u64,
    pub restarts: u64,
}

#[derive(Debug)]
struct Clause {
    lits: Vec<Literal>,
    learnt: bool,
    deleted: bool,
    activity: f64,
}

#[derive(Debug, Clone, Copy)]
struct Watcher {
    cref: u32,
    blocker: Literal,
}

/// Binary max-heap of variables keyed by activity.
#[derive(Debug, Default)]
struct VarHeap {
    heap: Vec<u32>,
    pos: Vec<usize>,
}

impl VarHeap {
    const ABSENT: usize = usize::MAX;

    fn grow(&mut self, n: usize) {
        self.pos.resize(n, Self::ABSENT);
    }

    fn contains(&self, v: u32) -> bool {
        self.pos[v as usize] != Self::ABSENT
    }

    fn is_empty(&self) -> bool {
        self.heap.is_empty()
    }

    fn insert(&mut self, v: u32, act: &[f64]) {
        if self.contains(v) {
            return;
        }
        self.pos[v as usize] = self.heap.len();
        self.heap.push(v);
        self.sift_up(self.heap.len() - 1, act);
    }

    fn pop_max(&mut self, act: &[f64]) -> Option<u32> {
        let top = *self.heap.first()?;
        let last = self.heap.pop().unwrap();
        self.pos[top as usize] = Self::ABSENT;
        if !self.heap.is_empty() {
            self.heap[0] = last;
            self.pos[last as usize] = 0;
            self.sift_down(0, act);
        }
        Some(top)
    }

    fn bumped(&mut self, v: u32, act: &[f64]) {
        if self.contains(v) {
            self.sift_up(self.pos[v as usize], act);
        }
    }

    fn sift_up(&mut self, mut i: usize, act: &[f64]) {
        let v = self.heap[i];
        while i > 0 {
            let parent = (i - 1) / 2;
            let pv = self.heap[parent];
            if act[pv as usize] >= act[v as usize] {
                break;
            }
            self.heap[i] = pv;
            self.pos[pv as usize] = i;
            i = parent;
        }
        self.heap[i] = v;
        self.pos[v as usize] = i;
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
            let cv = self.heap[child];
            if act[cv as usize] <= act[v as usize] {
                break;
            }
            self.heap[i] = cv;
            self.pos[cv as usize] = i;
            i = child;
        }
        self.heap[i] = v;
        self.pos[v as usize] = i;
    }
}

#[inline]
fn lit_value(assigns: &[i8], l: Literal) -> i8 {
    let v = assigns[l.atom().index() as usize];
    if l.is_positive() {
        v
    } else {
        -v
    }
}

fn luby(y: f64, mut x: u64) -> f64 {
    let (mut size, mut seq) = (1u64, 0i32);
    while size < x + 1 {
        seq += 1;
        size = 2 * size + 1;
    }
    while size - 1 != x {
        size = (size - 1) >> 1;
        seq -= 1;
        x %= size;
    }
    y.powi(seq)
}

/// Variables are atoms `1..=num_vars`; index 0 is unused padding.
#[derive(Debug)]
pub struct Solver {
    num_vars: u32,
    clauses: Vec<Clause>,
    learnts: Vec<u32>,
    watches: Vec<Vec<Watcher>>,
    assigns: Vec<i8>,
    level: Vec<u32>,
    reason: Vec<u32>,
    trail: Vec<Literal>,
    trail_lim: Vec<usize>,
    qhead: usize,
    activity: Vec<f64>,
    var_inc: f64,
    cla_inc: f64,
    order: VarHeap,
    phase: Vec<bool>,
    seen: Vec<bool>,
    ok: bool,
    max_learnts: f64,
    rng: ChaCha8Rng,
    stats: Stats,
}

impl Default for Solver {
    fn default() -> Self {
        Solver::with_seed(0)
    }
}

impl Solver {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_seed(seed: u64) -> Self {
        let mut s = Solver {
            num_vars: 0,
            clauses: Vec::new(),
            learnts: Vec::new(),
            watches: vec![Vec::new(), Vec::new()],
            assigns: vec![UNDEF],
            level: vec![0],
            reason: vec![NO_REASON],
            trail: Vec::new(),
            trail_lim: Vec::new(),
            qhead: 0,
            activity: vec![0.0],
            var_inc: 1.0,
            cla_inc: 1.0,
            order: VarHeap::default(),
            phase: vec![false],
            seen: vec![false],
            ok: true,
            max_learnts: 0.0,
            rng: ChaCha8Rng::seed_from_u64(seed),
            stats: Stats::default(),
        };
        s.order.grow(1);
        s
    }

    /// Loads a clausal theory, registering all of its variables.
    pub fn from_cnf(cnf: &CnfTheory, seed: u64) -> Self {
        let mut s = Solver::with_seed(seed);
        s.ensure_vars(cnf.var_count());
        for c in cnf.clauses() {
            s.add_clause(c).expect("clause variables are registered");
        }
        s
    }

    pub fn num_vars(&self) -> u32 {
        self.num_vars
    }

    pub fn stats(&self) -> Stats {
        self.stats
    }

    /// False once the clause database is unsatisfiable on its own.
    pub fn is_ok(&self) -> bool {
        self.ok
    }

    pub fn new_var(&mut self) -> Atom {
        self.num_vars += 1;
        let v = self.num_vars;
        self.assigns.push(UNDEF);
        self.level.push(0);
        self.reason.push(NO_REASON);
        self.activity.push(self.rng.random::<f64>() * 1e-5);
        self.phase.push(false);
        self.seen.push(false);
        self.watches.push(Vec::new());
        self.watches.push(Vec::new());
        self.order.grow(v as usize + 1);
        self.order.insert(v, &self.activity);
        Atom::new(v)
    }

    pub fn ensure_vars(&mut self, n: u32) {
        while self.num_vars < n {
            self.new_var();
        }
    }

    fn decision_level(&self) -> u32 {
        self.trail_lim.len() as u32
    }

    #[inline]
    fn value(&self, l: Literal) -> i8 {
        lit_value(&self.assigns, l)
    }

    /// Adds a clause permanently. Must be called between solves.
    pub fn add_clause(&mut self, lits: &[Literal]) -> Result<()> {
        for l in lits {
            if l.atom().index() > self.num_vars {
                return Err(Error::UnregisteredVariable(l.atom()));
            }
        }
        if !self.ok {
            return Ok(());
        }
        debug_assert_eq!(self.decision_level(), 0);
        let mut c: Vec<Literal> = lits.to_vec();
        c.sort_unstable();
        c.dedup();
        let mut kept = Vec::with_capacity(c.len());
        for (k, &l) in c.iter().enumerate() {
            if k + 1 < c.len() && c[k + 1] == !l {
                return Ok(());
            }
            match self.value(l) {
                TRUE => return Ok(()),
                FALSE => {}
                _ => kept.push(l),
            }
        }
        match kept.len() {
            0 => self.ok = false,
            1 => {
                self.enqueue(kept[0], NO_REASON);
                if self.propagate().is_some() {
                    self.ok = false;
                }
            }
            _ => {
                self.attach(kept, false);
            }
        }
        Ok(())
    }

    fn attach(&mut self, lits: Vec<Literal>, learnt: bool) -> u32 {
        let cref = self.clauses.len() as u32;
        self.watches[lits[0].code()].push(Watcher { cref, blocker: lits[1] });
        self.watches[lits[1].code()].push(Watcher { cref, blocker: lits[0] });
        self.clauses.push(Clause { lits, learnt, deleted: false, activity: 0.0 });
        if learnt {
            self.learnts.push(cref);
        }
        cref
    }

    fn enqueue(&mut self, l: Literal, reason: u32) {
        let v = l.atom().index() as usize;
        self.assigns[v] = if l.is_positive() { TRUE } else { FALSE };
        self.level[v] = self.decision_level();
        self.reason[v] = reason;
        self.trail.push(l);
    }

    /// Unit propagation; returns a conflicting clause if one arises.
    fn propagate(&mut self) -> Option<u32> {
        let mut conflict = None;
        while self.qhead < self.trail.len() {
            let p = self.trail[self.qhead];
            self.qhead += 1;
            self.stats.propagations += 1;
            let false_lit = !p;
            let mut ws = std::mem::take(&mut self.watches[false_lit.code()]);
            let (mut i, mut j) = (0, 0);
            'watchers: while i < ws.len() {
                let w = ws[i];
                i += 1;
                if lit_value(&self.assigns, w.blocker) == TRUE {
                    ws[j] = w;
                    j += 1;
                    continue;
                }
                let clause = &mut self.clauses[w.cref as usize];
                if clause.deleted {
                    continue;
                }
                let lits = &mut clause.lits;
                if lits[0] == false_lit {
                    lits.swap(0, 1);
                }
                let first = lits[0];
                let kept = Watcher { cref: w.cref, blocker: first };
                if first != w.blocker && lit_value(&self.assigns, first) == TRUE {
                    ws[j] = kept;
                    j += 1;
                    continue;
                }
                for k in 2..lits.len() {
                    if lit_value(&self.assigns, lits[k]) != FALSE {
                        lits.swap(1, k);
                        self.watches[lits[1].code()].push(kept);
                        continue 'watchers;
                    }
                }
                ws[j] = kept;
                j += 1;
                if lit_value(&self.assigns, first) == FALSE {
                    conflict = Some(w.cref);
                    while i < ws.len() {
                        ws[j] = ws[i];
                        j += 1;
                        i += 1;
                    }
                    self.qhead = self.trail.len();
                } else {
                    self.enqueue(first, w.cref);
                }
            }
            ws.truncate(j);
            self.watches[false_lit.code()] = ws;
            if conflict.is_some() {
                break;
            }
        }
        conflict
    }

    fn bump_var(&mut self, v: usize) {
        self.activity[v] += self.var_inc;
        if self.activity[v] > 1e100 {
            for a in self.activity.iter_mut() {
                *a *= 1e-100;
            }
            self.var_inc *= 1e-100;
        }
        self.order.bumped(v as u32, &self.activity);
    }

    fn bump_clause(&mut self, cref: u32) {
        let c = &mut self.clauses[cref as usize];
        if !c.learnt {
            return;
        }
        c.activity += self.cla_inc;
        if c.activity > 1e20 {
            for &l in &self.learnts {
                self.clauses[l as usize].activity *= 1e-20;
            }
            self.cla_inc *= 1e-20;
        }
    }

    /// First-UIP conflict analysis. Returns the learnt clause (asserting
    /// literal first, highest remaining level second) and the backjump level.
    fn analyze(&mut self, mut confl: u32) -> (Vec<Literal>, u32) {
        let mut learnt = vec![Atom::FALSUM.positive()];
        let mut pending = 0usize;
        let mut idx = self.trail.len();
        let mut asserting: Option<Literal> = None;
        let dl = self.decision_level();
        loop {
            self.bump_clause(confl);
            let start = usize::from(asserting.is_some());
            let len = self.clauses[confl as usize].lits.len();
            for k in start..len {
                let q = self.clauses[confl as usize].lits[k];
                let v = q.atom().index() as usize;
                if !self.seen[v] && self.level[v] > 0 {
                    self.seen[v] = true;
                    self.bump_var(v);
                    if self.level[v] >= dl {
                        pending += 1;
                    } else {
                        learnt.push(q);
                    }
                }
            }
            loop {
                idx -= 1;
                if self.seen[self.trail[idx].atom().index() as usize] {
                    break;
                }
            }
            let p = self.trail[idx];
            let v = p.atom().index() as usize;
            self.seen[v] = false;
            confl = self.reason[v];
            asserting = Some(p);
            pending -= 1;
            if pending == 0 {
                break;
            }
        }
        learnt[0] = !asserting.unwrap();

        // Drop literals whose reason is subsumed by the rest of the clause.
        let mut out = Vec::with_capacity(learnt.len());
        out.push(learnt[0]);
        for &q in &learnt[1..] {
            let r = self.reason[q.atom().index() as usize];
            let redundant = r != NO_REASON
                && self.clauses[r as usize].lits[1..].iter().all(|l| {
                    let u = l.atom().index() as usize;
                    self.seen[u] || self.level[u] == 0
                });
            if !redundant {
                out.push(q);
            }
        }
        for q in &learnt[1..] {
            self.seen[q.atom().index() as usize] = false;
        }

        let mut bt = 0;
        if out.len() > 1 {
            let mut max_k = 1;
            for k in 2..out.len() {
                if self.level[out[k].atom().index() as usize] > self.level[out[max_k].atom().index() as usize] {
                    max_k = k;
                }
            }
            out.swap(1, max_k);
            bt = self.level[out[1].atom().index() as usize];
        }
        (out, bt)
    }

    fn cancel_until(&mut self, level: u32) {
        if self.decision_level() <= level {
            return;
        }
        let lim = self.trail_lim[level as usize];
        for k in (lim..self.trail.len()).rev() {
            let l = self.trail[k];
            let v = l.atom().index() as usize;
            self.assigns[v] = UNDEF;
            self.reason[v] = NO_REASON;
            self.phase[v] = l.is_positive();
            self.order.insert(v as u32, &self.activity);
        }
        self.trail.truncate(lim);
        self.trail_lim.truncate(level as usize);
        self.qhead = self.trail.len();
    }

    fn pick_branch(&mut self) -> Option<Literal> {
        if !self.order.is_empty() && self.rng.random::<f64>() < RANDOM_VAR_FREQ {
            let v = self.order.heap[self.rng.random_range(0..self.order.heap.len())];
            if self.assigns[v as usize] == UNDEF {
                return Some(Literal::new(Atom::new(v), self.phase[v as usize]));
            }
        }
        while let Some(v) = self.order.pop_max(&self.activity) {
            if self.assigns[v as usize] == UNDEF {
                return Some(Literal::new(Atom::new(v), self.phase[v as usize]));
            }
        }
        None
    }

    fn locked(&self, cref: u32) -> bool {
        let l0 = self.clauses[cref as usize].lits[0];
        self.reason[l0.atom().index() as usize] == cref && self.value(l0) == TRUE
    }

    fn reduce_db(&mut self) {
        let mut learnts = std::mem::take(&mut self.learnts);
        learnts.sort_by(|&a, &b| {
            self.clauses[a as usize].activity.total_cmp(&self.clauses[b as usize].activity)
        });
        let half = learnts.len() / 2;
        let mut kept = Vec::with_capacity(learnts.len());
        for (k, &cref) in learnts.iter().enumerate() {
            let removable = k < half && self.clauses[cref as usize].lits.len() > 2 && !self.locked(cref);
            if removable {
                let c = &mut self.clauses[cref as usize];
                c.deleted = true;
                c.lits = Vec::new();
            } else {
                kept.push(cref);
            }
        }
        self.learnts = kept;
    }

    /// Decides the clause database under `assumptions`, which hold for this
    /// call only. The returned model is total over all registered variables.
    pub fn solve(&mut self, assumptions: &[Literal]) -> SolveResult {
        self.stats.solves += 1;
        if let Some(max) = assumptions.iter().map(|l| l.atom().index()).max() {
            self.ensure_vars(max);
        }
        if !self.ok {
            return SolveResult::Unsat;
        }
        if self.propagate().is_some() {
            self.ok = false;
            return SolveResult::Unsat;
        }
        self.max_learnts = self.max_learnts.max(self.clauses.len() as f64 / 3.0 + 2000.0);
        let mut restarts = 0u64;
        let mut budget = (luby(2.0, restarts) * RESTART_BASE as f64) as u64;
        let mut conflicts = 0u64;
        loop {
            if let Some(confl) = self.propagate() {
                self.stats.conflicts += 1;
                conflicts += 1;
                if self.decision_level() == 0 {
                    self.ok = false;
                    return SolveResult::Unsat;
                }
                let (learnt, bt) = self.analyze(confl);
                self.cancel_until(bt);
                if learnt.len() == 1 {
                    self.enqueue(learnt[0], NO_REASON);
                } else {
                    let first = learnt[0];
                    let cref = self.attach(learnt, true);
                    self.bump_clause(cref);
                    self.enqueue(first, cref);
                }
                self.var_inc /= VAR_DECAY;
                self.cla_inc /= CLAUSE_DECAY;
                continue;
            }
            if conflicts >= budget {
                restarts += 1;
                self.stats.restarts += 1;
                budget = (luby(2.0, restarts) * RESTART_BASE as f64) as u64;
                conflicts = 0;
                self.cancel_until(0);
                continue;
            }
            if self.learnts.len() as f64 >= self.max_learnts + self.trail.len() as f64 {
                self.reduce_db();
                self.max_learnts *= 1.1;
            }
            let mut next = None;
            while (self.decision_level() as usize) < assumptions.len() {
                let p = assumptions[self.decision_level() as usize];
                match self.value(p) {
                    TRUE => self.trail_lim.push(self.trail.len()),
                    FALSE => {
                        self.cancel_until(0);
                        return SolveResult::Unsat;
                    }
                    _ => {
                        next = Some(p);
                        break;
                    }
                }
            }
            let next = match next {
                Some(p) => p,
                None => match self.pick_branch() {
                    Some(l) => {
                        self.stats.decisions += 1;
                        l
                    }
                    None => {
                        let model: Vec<bool> = self.assigns[1..].iter().map(|&v| v == TRUE).collect();
                        self.cancel_until(0);
                        return SolveResult::Sat(Interpretation::from_dense(&model));
                    }
                },
            };
            self.trail_lim.push(self.trail.len());
            self.enqueue(next, NO_REASON);
        }
    }
}
