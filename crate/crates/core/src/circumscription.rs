//! Preferred models of `CIRC(T, P)`: a model `I` of `T` is preferred when
//! no model `J` has `J ∩ P ⊊ I ∩ P`.
//!
//! All procedures run on one incremental [`Solver`] loaded with the clausal
//! form of the theory. Temporary constraints are clauses guarded by fresh
//! activation atoms, which are assumed while the constraint is wanted and
//! permanently falsified once it is not.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::logic::{to_cnf, Atom, Interpretation, Literal, Theory};
use crate::sat::{SolveResult, Solver};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircumscriptionInstance {
    theory: Theory,
    p_set: Vec<Literal>,
    visible: Vec<Atom>,
}

impl CircumscriptionInstance {
    /// Every literal of `p_set` and every `visible` atom must occur in the theory.
    pub fn new(theory: Theory, p_set: Vec<Literal>, visible: Vec<Atom>) -> Result<Self> {
        for a in p_set.iter().map(|l| l.atom()).chain(visible.iter().copied()) {
            if !theory.contains_atom(a) {
                return Err(Error::ForeignAtom(a));
            }
        }
        Ok(CircumscriptionInstance { theory, p_set, visible })
    }

    pub fn theory(&self) -> &Theory {
        &self.theory
    }

    pub fn p_set(&self) -> &[Literal] {
        &self.p_set
    }

    pub fn visible(&self) -> &[Atom] {
        &self.visible
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreferredModel {
    /// Restricted to `atoms(T)`.
    pub full: Interpretation,
    pub p_projection: Vec<Literal>,
    /// Visible atoms that are true, in the instance's visible order.
    pub visible_projection: Vec<Atom>,
}

/// Solver session for one instance. Queries can be issued repeatedly.
#[derive(Debug)]
pub struct Circumscriber {
    theory: Theory,
    p_set: Vec<Literal>,
    visible: Vec<Atom>,
    solver: Solver,
}

impl Circumscriber {
    pub fn new(inst: &CircumscriptionInstance) -> Self {
        Self::with_seed(inst, 0)
    }

    pub fn with_seed(inst: &CircumscriptionInstance, seed: u64) -> Self {
        let cnf = to_cnf(&inst.theory);
        Circumscriber {
            theory: inst.theory.clone(),
            p_set: inst.p_set.clone(),
            visible: inst.visible.clone(),
            solver: Solver::from_cnf(&cnf, seed),
        }
    }

    pub fn solver(&self) -> &Solver {
        &self.solver
    }

    /// Fresh atom for guarding a removable clause.
    pub fn activation(&mut self) -> Atom {
        self.solver.new_var()
    }

    /// Adds `¬act ∨ clause`.
    pub fn add_guarded(&mut self, act: Atom, clause: &[Literal]) {
        let mut c = Vec::with_capacity(clause.len() + 1);
        c.push(act.negative());
        c.extend_from_slice(clause);
        self.solver.add_clause(&c).expect("guarded clause over registered atoms");
    }

    /// Permanently disables every clause guarded by `act`.
    pub fn retire(&mut self, act: Atom) {
        self.solver.add_clause(&[act.negative()]).expect("activation atom is registered");
    }

    pub fn satisfiable(&mut self, assumptions: &[Literal]) -> Option<Interpretation> {
        self.solver.solve(assumptions).into_model()
    }

    /// Descends from `model` to a model that is `≤^p`-minimal among the
    /// models satisfying `assumptions`.
    pub fn minimize(&mut self, mut model: Interpretation, p: &[Literal], assumptions: &[Literal]) -> Interpretation {
        loop {
            let (holding, failing): (Vec<Literal>, Vec<Literal>) = p.iter().partition(|&&l| model.holds(l));
            if holding.is_empty() {
                return model;
            }
            let act = self.activation();
            let shrink: Vec<Literal> = holding.iter().map(|&l| !l).collect();
            self.add_guarded(act, &shrink);
            let mut assume = assumptions.to_vec();
            assume.push(act.positive());
            assume.extend(failing.iter().map(|&l| !l));
            let result = self.solver.solve(&assume);
            self.retire(act);
            match result {
                SolveResult::Sat(next) => model = next,
                SolveResult::Unsat => return model,
            }
        }
    }

    /// A preferred model of `T` under `≤^p` among those satisfying
    /// `assumptions`, as a raw solver model.
    pub fn minimal_model_under(&mut self, p: &[Literal], assumptions: &[Literal]) -> Option<Interpretation> {
        let start = self.satisfiable(assumptions)?;
        Some(self.minimize(start, p, assumptions))
    }

    fn wrap(&self, m: &Interpretation) -> PreferredModel {
        PreferredModel {
            full: m.restrict(self.theory.atoms()),
            p_projection: self.p_set.iter().copied().filter(|&l| m.holds(l)).collect(),
            visible_projection: self.visible_projection(m),
        }
    }

    fn visible_projection(&self, m: &Interpretation) -> Vec<Atom> {
        self.visible.iter().copied().filter(|&a| m.value(a) == Some(true)).collect()
    }

    pub fn preferred_model(&mut self) -> Option<PreferredModel> {
        let p = self.p_set.clone();
        let m = self.minimal_model_under(&p, &[])?;
        Some(self.wrap(&m))
    }

    /// Whether no model `J` has `J ∩ P ⊊ m ∩ P`. `m` must be a model of `T`.
    pub fn check_preferred(&mut self, m: &Interpretation) -> Result<bool> {
        if !self.theory.is_model(m)? {
            return Err(Error::NotAModel);
        }
        let (holding, failing): (Vec<Literal>, Vec<Literal>) = self.p_set.iter().partition(|&&l| m.holds(l));
        if holding.is_empty() {
            return Ok(true);
        }
        let act = self.activation();
        let shrink: Vec<Literal> = holding.iter().map(|&l| !l).collect();
        self.add_guarded(act, &shrink);
        let mut assume = vec![act.positive()];
        assume.extend(failing.iter().map(|&l| !l));
        let smaller = self.solver.solve(&assume).is_sat();
        self.retire(act);
        Ok(!smaller)
    }

    /// Distinct visible projections of preferred models, at most `limit`.
    ///
    /// After each preferred model with `S = I ∩ P`, every model sharing that
    /// P-projection is preferred too, so those are enumerated by blocking
    /// visible projections; then `∨_{ℓ∈S} ¬ℓ` removes all models whose
    /// P-projection contains `S` and the descent restarts.
    pub fn enumerate(&mut self, limit: Option<usize>) -> Vec<Vec<Atom>> {
        let mut out = Vec::new();
        let mut seen = HashSet::new();
        let p = self.p_set.clone();
        let outer = self.activation();
        'outer: while limit.is_none_or(|n| out.len() < n) {
            let Some(model) = self.minimal_model_under(&p, &[outer.positive()]) else {
                break;
            };
            let (holding, failing): (Vec<Literal>, Vec<Literal>) = p.iter().partition(|&&l| model.holds(l));
            let inner = self.activation();
            let mut fixed = vec![outer.positive(), inner.positive()];
            fixed.extend(holding.iter().copied());
            fixed.extend(failing.iter().map(|&l| !l));
            let mut current = model;
            loop {
                let proj = self.visible_projection(&current);
                if seen.insert(proj.clone()) {
                    out.push(proj);
                    if limit.is_some_and(|n| out.len() >= n) {
                        self.retire(inner);
                        break 'outer;
                    }
                }
                let flip: Vec<Literal> = self
                    .visible
                    .iter()
                    .map(|&a| Literal::new(a, current.value(a) != Some(true)))
                    .collect();
                self.add_guarded(inner, &flip);
                match self.solver.solve(&fixed) {
                    SolveResult::Sat(next) => current = next,
                    SolveResult::Unsat => break,
                }
            }
            self.retire(inner);
            let block: Vec<Literal> = holding.iter().map(|&l| !l).collect();
            self.add_guarded(outer, &block);
        }
        self.retire(outer);
        out
    }

    pub fn count(&mut self) -> u64 {
        self.enumerate(None).len() as u64
    }

    /// Whether some preferred model satisfies `q`.
    ///
    /// Searches for a model containing `q`, minimizes it while keeping `q`,
    /// and then checks whether a strictly smaller model exists at all. If
    /// none does, the candidate is preferred. Otherwise the smaller model is
    /// itself minimized. If some model with its P-projection satisfies `q`
    /// the query holds; otherwise both regions are blocked before the next
    /// round.
    pub fn credulous(&mut self, q: Literal) -> bool {
        let p = self.p_set.clone();
        let guard = self.activation();
        let answer = loop {
            let Some(candidate) = self.minimal_model_under(&p, &[guard.positive(), q]) else {
                break false;
            };
            let (holding, failing): (Vec<Literal>, Vec<Literal>) = p.iter().partition(|&&l| candidate.holds(l));
            if holding.is_empty() {
                break true;
            }
            let act = self.activation();
            let shrink: Vec<Literal> = holding.iter().map(|&l| !l).collect();
            self.add_guarded(act, &shrink);
            let mut assume = vec![act.positive()];
            assume.extend(failing.iter().map(|&l| !l));
            let below = self.solver.solve(&assume);
            self.retire(act);
            let SolveResult::Sat(below) = below else {
                break true;
            };
            let witness = self.minimize(below, &p, &[]);
            if witness.holds(q) {
                break true;
            }
            // Models sharing the witness's P-projection are preferred too.
            let mut same_class: Vec<Literal> =
                p.iter().map(|&l| if witness.holds(l) { l } else { !l }).collect();
            same_class.push(q);
            if self.solver.solve(&same_class).is_sat() {
                break true;
            }
            self.add_guarded(guard, &shrink);
            let witness_block: Vec<Literal> = p.iter().filter(|&&l| witness.holds(l)).map(|&l| !l).collect();
            self.add_guarded(guard, &witness_block);
        };
        self.retire(guard);
        answer
    }

    /// Whether every preferred model satisfies `q`.
    pub fn skeptical(&mut self, q: Literal) -> bool {
        !self.credulous(!q)
    }
}

pub fn preferred_model(inst: &CircumscriptionInstance) -> Option<PreferredModel> {
    Circumscriber::new(inst).preferred_model()
}

pub fn check_preferred(inst: &CircumscriptionInstance, m: &Interpretation) -> Result<bool> {
    Circumscriber::new(inst).check_preferred(m)
}

pub fn enumerate_preferred(inst: &CircumscriptionInstance, limit: Option<usize>) -> Vec<Vec<Atom>> {
    Circumscriber::new(inst).enumerate(limit)
}

pub fn count_preferred(inst: &CircumscriptionInstance) -> u64 {
    Circumscriber::new(inst).count()
}

pub fn credulous_query(inst: &CircumscriptionInstance, q: Literal) -> bool {
    Circumscriber::new(inst).credulous(q)
}

pub fn skeptical_query(inst: &CircumscriptionInstance, q: Literal) -> bool {
    Circumscriber::new(inst).skeptical(q)
}
