use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use super::{Atom, Formula, Literal, Theory};

/// Clausal form of a [`Theory`].
///
/// Atoms up to `original_max` are the theory's own; anything above is a
/// definitional auxiliary recorded in `aux_map`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfTheory {
    clauses: Vec<Vec<Literal>>,
    var_count: u32,
    original_max: u32,
    aux_map: BTreeMap<Atom, Formula>,
}

impl CnfTheory {
    pub fn from_clauses(var_count: u32, clauses: Vec<Vec<Literal>>) -> Self {
        CnfTheory { clauses, var_count, original_max: var_count, aux_map: BTreeMap::new() }
    }

    pub fn clauses(&self) -> &[Vec<Literal>] {
        &self.clauses
    }

    pub fn var_count(&self) -> u32 {
        self.var_count
    }

    pub fn original_max(&self) -> u32 {
        self.original_max
    }

    pub fn aux_map(&self) -> &BTreeMap<Atom, Formula> {
        &self.aux_map
    }

    pub fn literal_occurrences(&self) -> usize {
        self.clauses.iter().map(Vec::len).sum()
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = String::new();
        writeln!(out, "p cnf {} {}", self.var_count, self.clauses.len()).unwrap();
        for clause in &self.clauses {
            for l in clause {
                write!(out, "{} ", l.to_dimacs()).unwrap();
            }
            out.push_str("0\n");
        }
        out
    }
}

/// Definitional clausification.
///
/// Clause-shaped formulas (disjunctions, implications with conjunctive
/// bodies, biconditionals over a literal and a flat disjunction) are
/// emitted directly; every other nested subformula gets one auxiliary atom
/// defined by full equivalence, shared between identical subformulas.
pub fn to_cnf(t: &Theory) -> CnfTheory {
    let mut c = Clausifier {
        next_aux: t.max_atom() + 1,
        clauses: Vec::new(),
        defs: HashMap::new(),
        aux_map: BTreeMap::new(),
    };
    for f in t.formulas() {
        c.assert(f, true);
    }
    CnfTheory {
        clauses: c.clauses,
        var_count: c.next_aux - 1,
        original_max: t.max_atom(),
        aux_map: c.aux_map,
    }
}

struct Clausifier {
    next_aux: u32,
    clauses: Vec<Vec<Literal>>,
    defs: HashMap<Formula, Literal>,
    aux_map: BTreeMap<Atom, Formula>,
}

fn as_literal(f: &Formula, pol: bool) -> Option<Literal> {
    match f {
        Formula::Atom(a) => Some(Literal::new(*a, pol)),
        Formula::Not(g) => as_literal(g, !pol),
        Formula::And(cs) | Formula::Or(cs) if cs.len() == 1 => as_literal(&cs[0], pol),
        _ => None,
    }
}

impl Clausifier {
    /// Emit clauses forcing `f` (if `pol`) or `¬f` (otherwise).
    fn assert(&mut self, f: &Formula, pol: bool) {
        match (f, pol) {
            (Formula::Atom(a), _) => self.clauses.push(vec![Literal::new(*a, pol)]),
            (Formula::Not(g), _) => self.assert(g, !pol),
            (Formula::And(cs), true) | (Formula::Or(cs), false) => {
                for c in cs {
                    self.assert(c, pol);
                }
            }
            (Formula::Implies(a, b), false) => {
                self.assert(a, true);
                self.assert(b, false);
            }
            (Formula::Iff(a, b), true) => {
                self.disjunction(&[(a, false), (b, true)]);
                self.disjunction(&[(a, true), (b, false)]);
            }
            (Formula::Iff(a, b), false) => {
                self.disjunction(&[(a, true), (b, true)]);
                self.disjunction(&[(a, false), (b, false)]);
            }
            _ => self.disjunction(&[(f, pol)]),
        }
    }

    fn disjunction(&mut self, items: &[(&Formula, bool)]) {
        let mut lits = Vec::new();
        let mut conjunctions: Vec<(&Formula, bool)> = Vec::new();
        for &(f, pol) in items {
            self.collect(f, pol, &mut lits, &mut conjunctions);
        }
        // A single conjunction of literals is distributed; others are named.
        let mut distribute = None;
        for (k, &(f, pol)) in conjunctions.iter().enumerate() {
            if k == 0 {
                if let Some(parts) = literal_conjuncts(f, pol) {
                    distribute = Some(parts);
                    continue;
                }
            }
            lits.push(self.define(f, pol));
        }
        match distribute {
            Some(parts) => {
                for p in parts {
                    let mut clause = lits.clone();
                    clause.push(p);
                    self.clauses.push(clause);
                }
            }
            None => self.clauses.push(lits),
        }
    }

    fn collect<'f>(
        &mut self,
        f: &'f Formula,
        pol: bool,
        lits: &mut Vec<Literal>,
        conjunctions: &mut Vec<(&'f Formula, bool)>,
    ) {
        match (f, pol) {
            (Formula::Atom(a), _) => lits.push(Literal::new(*a, pol)),
            (Formula::Not(g), _) => self.collect(g, !pol, lits, conjunctions),
            (Formula::Or(cs), true) | (Formula::And(cs), false) => {
                for c in cs {
                    self.collect(c, pol, lits, conjunctions);
                }
            }
            (Formula::Implies(a, b), true) => {
                self.collect(a, false, lits, conjunctions);
                self.collect(b, true, lits, conjunctions);
            }
            (Formula::And(_), true) | (Formula::Or(_), false) | (Formula::Implies(..), false) => {
                conjunctions.push((f, pol))
            }
            (Formula::Iff(..), _) => lits.push(self.define(f, pol)),
        }
    }

    fn define(&mut self, f: &Formula, pol: bool) -> Literal {
        let l = self.define_positive(f);
        if pol {
            l
        } else {
            !l
        }
    }

    fn define_positive(&mut self, f: &Formula) -> Literal {
        if let Some(l) = as_literal(f, true) {
            return l;
        }
        match f {
            Formula::Not(g) => return !self.define_positive(g),
            Formula::And(cs) if cs.is_empty() => return Atom::FALSUM.negative(),
            Formula::Or(cs) if cs.is_empty() => return Atom::FALSUM.positive(),
            _ => {}
        }
        if let Some(&l) = self.defs.get(f) {
            return l;
        }
        let v = Atom::new(self.next_aux);
        self.next_aux += 1;
        let (pv, nv) = (v.positive(), v.negative());
        match f {
            Formula::And(cs) => {
                let ls: Vec<Literal> = cs.iter().map(|c| self.define_positive(c)).collect();
                let mut back = vec![pv];
                for &l in &ls {
                    self.clauses.push(vec![nv, l]);
                    back.push(!l);
                }
                self.clauses.push(back);
            }
            Formula::Or(cs) => {
                let ls: Vec<Literal> = cs.iter().map(|c| self.define_positive(c)).collect();
                let mut fwd = vec![nv];
                for &l in &ls {
                    self.clauses.push(vec![pv, !l]);
                    fwd.push(l);
                }
                self.clauses.push(fwd);
            }
            Formula::Implies(a, b) => {
                let (la, lb) = (self.define_positive(a), self.define_positive(b));
                self.clauses.push(vec![nv, !la, lb]);
                self.clauses.push(vec![pv, la]);
                self.clauses.push(vec![pv, !lb]);
            }
            Formula::Iff(a, b) => {
                let (la, lb) = (self.define_positive(a), self.define_positive(b));
                self.clauses.push(vec![nv, !la, lb]);
                self.clauses.push(vec![nv, la, !lb]);
                self.clauses.push(vec![pv, la, lb]);
                self.clauses.push(vec![pv, !la, !lb]);
            }
            Formula::Atom(_) | Formula::Not(_) => unreachable!(),
        }
        self.defs.insert(f.clone(), pv);
        self.aux_map.insert(v, f.clone());
        pv
    }
}

/// The literals of a conjunction whose conjuncts are all literals.
fn literal_conjuncts(f: &Formula, pol: bool) -> Option<Vec<Literal>> {
    match (f, pol) {
        (Formula::And(cs), true) => cs.iter().map(|c| as_literal(c, true)).collect(),
        (Formula::Or(cs), false) => cs.iter().map(|c| as_literal(c, false)).collect(),
        (Formula::Implies(a, b), false) => Some(vec![as_literal(a, true)?, as_literal(b, false)?]),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::*;

    fn a(i: u32) -> Atom {
        Atom::new(i)
    }

    fn clause_set(cnf: &CnfTheory) -> BTreeSet<BTreeSet<Literal>> {
        cnf.clauses().iter().map(|c| c.iter().copied().collect()).collect()
    }

    fn set(lits: &[Literal]) -> BTreeSet<Literal> {
        lits.iter().copied().collect()
    }

    #[test]
    fn biconditional_with_disjunction() {
        let (x, y1, y2) = (a(2), a(3), a(4));
        let mut t = Theory::new();
        t.push(Formula::iff(x.into(), Formula::or(vec![y1.into(), y2.into()])));
        let cnf = to_cnf(&t);
        let expected: BTreeSet<_> = [
            set(&[Atom::FALSUM.negative()]),
            set(&[x.negative(), y1.positive(), y2.positive()]),
            set(&[y1.negative(), x.positive()]),
            set(&[y2.negative(), x.positive()]),
        ]
        .into_iter()
        .collect();
        assert_eq!(clause_set(&cnf), expected);
        assert_eq!(cnf.clauses().len(), 4);
        assert!(cnf.aux_map().is_empty());
    }

    #[test]
    fn bare_theory_is_single_unit() {
        let cnf = to_cnf(&Theory::new());
        assert_eq!(cnf.clauses(), &[vec![Atom::FALSUM.negative()]]);
        assert_eq!(cnf.var_count(), 1);
    }

    #[test]
    fn implication_with_conjunctive_body_is_one_clause() {
        let (a1, a2, x) = (a(2), a(3), a(4));
        let mut t = Theory::new();
        t.push(Formula::implies(Formula::and(vec![a1.into(), a2.into()]), x.into()));
        let cnf = to_cnf(&t);
        assert_eq!(cnf.clauses().len(), 2);
        assert_eq!(set(&cnf.clauses()[1]), set(&[a1.negative(), a2.negative(), x.positive()]));
    }

    #[test]
    fn implication_into_conjunction_distributes() {
        let (x, p, q) = (a(2), a(3), a(4));
        let mut t = Theory::new();
        t.push(Formula::implies(x.into(), Formula::and(vec![Formula::lit(p.negative()), q.into()])));
        let cnf = to_cnf(&t);
        assert_eq!(
            clause_set(&cnf),
            [
                set(&[Atom::FALSUM.negative()]),
                set(&[x.negative(), p.negative()]),
                set(&[x.negative(), q.positive()]),
            ]
            .into_iter()
            .collect()
        );
    }

    #[test]
    fn shared_subformulas_get_one_auxiliary() {
        let sub = Formula::and(vec![a(2).into(), a(3).into()]);
        let mut t = Theory::new();
        t.push(Formula::or(vec![sub.clone(), Formula::and(vec![a(4).into(), a(5).into()])]));
        t.push(Formula::or(vec![a(6).into(), Formula::iff(sub.clone(), a(4).into())]));
        t.push(Formula::or(vec![a(5).into(), Formula::iff(sub, a(4).into())]));
        let cnf = to_cnf(&t);
        // (a4 ∧ a5), `sub` and the repeated biconditional are each named once.
        assert_eq!(cnf.aux_map().len(), 3);
        assert_eq!(cnf.var_count(), 9);
    }

    #[test]
    fn dimacs_header_and_terminators() {
        let mut t = Theory::new();
        t.push(Formula::or(vec![a(2).into(), Formula::lit(a(3).negative())]));
        assert_eq!(to_cnf(&t).to_dimacs(), "p cnf 3 2\n-1 0\n2 -3 0\n");
    }
}
