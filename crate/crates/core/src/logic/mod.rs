//! Propositional vocabulary: atoms, literals, formulas, theories and
//! interpretations, plus clausal conversion for the SAT engine.
//!
//! Atoms are dense positive integers handed out by an [`AtomRegistry`].
//! Index 1 is reserved for the falsum atom `⊥`, which every [`Theory`]
//! constrains to false through the formula `¬⊥`.

mod cnf;
pub mod dimacs;

use std::fmt;
use std::ops::Not;

use crate::error::{Error, Result};

pub use cnf::{to_cnf, CnfTheory};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom(u32);

impl Atom {
    pub const FALSUM: Atom = Atom(1);

    pub fn new(index: u32) -> Atom {
        assert!(index >= 1, "atom indices start at 1");
        Atom(index)
    }

    #[inline]
    pub fn index(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn positive(self) -> Literal {
        Literal::new(self, true)
    }

    #[inline]
    pub fn negative(self) -> Literal {
        Literal::new(self, false)
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if *self == Atom::FALSUM {
            write!(f, "⊥")
        } else {
            write!(f, "p{}", self.0)
        }
    }
}

/// An atom with a polarity, packed as `atom << 1 | negated`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal(u32);

impl Literal {
    #[inline]
    pub fn new(atom: Atom, positive: bool) -> Literal {
        Literal(atom.0 << 1 | u32::from(!positive))
    }

    #[inline]
    pub fn atom(self) -> Atom {
        Atom(self.0 >> 1)
    }

    #[inline]
    pub fn is_positive(self) -> bool {
        self.0 & 1 == 0
    }

    #[inline]
    pub fn complement(self) -> Literal {
        Literal(self.0 ^ 1)
    }

    /// Dense code usable as an index into per-literal tables.
    #[inline]
    pub fn code(self) -> usize {
        self.0 as usize
    }

    pub fn from_dimacs(value: i64) -> Option<Literal> {
        if value == 0 || value.unsigned_abs() > u64::from(u32::MAX >> 1) {
            return None;
        }
        Some(Literal::new(Atom(value.unsigned_abs() as u32), value > 0))
    }

    pub fn to_dimacs(self) -> i64 {
        let v = i64::from(self.atom().0);
        if self.is_positive() {
            v
        } else {
            -v
        }
    }
}

impl Not for Literal {
    type Output = Literal;

    #[inline]
    fn not(self) -> Literal {
        self.complement()
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_positive() {
            write!(f, "{}", self.atom())
        } else {
            write!(f, "¬{}", self.atom())
        }
    }
}

pub fn complement(l: Literal) -> Literal {
    l.complement()
}

/// Hands out fresh atoms. `⊥` is always taken.
#[derive(Debug, Clone)]
pub struct AtomRegistry {
    next: u32,
}

impl Default for AtomRegistry {
    fn default() -> Self {
        AtomRegistry { next: 2 }
    }
}

impl AtomRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn fresh(&mut self) -> Atom {
        let atom = Atom(self.next);
        self.next += 1;
        atom
    }

    /// Highest index handed out so far.
    pub fn max_index(&self) -> u32 {
        self.next - 1
    }
}

/// Propositional formula with n-ary conjunction and disjunction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Atom(Atom),
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn falsum() -> Formula {
        Formula::Atom(Atom::FALSUM)
    }

    pub fn verum() -> Formula {
        Formula::not(Formula::falsum())
    }

    pub fn atom(a: Atom) -> Formula {
        Formula::Atom(a)
    }

    pub fn lit(l: Literal) -> Formula {
        if l.is_positive() {
            Formula::Atom(l.atom())
        } else {
            Formula::Not(Box::new(Formula::Atom(l.atom())))
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    /// Conjunction; the empty conjunction is `¬⊥` and singletons collapse.
    pub fn and(mut parts: Vec<Formula>) -> Formula {
        match parts.len() {
            0 => Formula::verum(),
            1 => parts.pop().unwrap(),
            _ => Formula::And(parts),
        }
    }

    /// Disjunction; the empty disjunction is `⊥` and singletons collapse.
    pub fn or(mut parts: Vec<Formula>) -> Formula {
        match parts.len() {
            0 => Formula::falsum(),
            1 => parts.pop().unwrap(),
            _ => Formula::Or(parts),
        }
    }

    pub fn implies(lhs: Formula, rhs: Formula) -> Formula {
        Formula::Implies(Box::new(lhs), Box::new(rhs))
    }

    pub fn iff(lhs: Formula, rhs: Formula) -> Formula {
        Formula::Iff(Box::new(lhs), Box::new(rhs))
    }

    /// Calls `visit` on every atom leaf, repeats included.
    pub fn for_each_atom(&self, visit: &mut impl FnMut(Atom)) {
        match self {
            Formula::Atom(a) => visit(*a),
            Formula::Not(g) => g.for_each_atom(visit),
            Formula::And(cs) | Formula::Or(cs) => cs.iter().for_each(|c| c.for_each_atom(visit)),
            Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.for_each_atom(visit);
                b.for_each_atom(visit);
            }
        }
    }

    /// Number of atom leaves.
    pub fn literal_occurrences(&self) -> usize {
        let mut n = 0;
        self.for_each_atom(&mut |_| n += 1);
        n
    }

    /// Size in binary connectives: an n-ary node counts `n - 1` (at least 1),
    /// `↔` counts 2 since it abbreviates two implications, others count 1.
    pub fn connective_weight(&self) -> usize {
        match self {
            Formula::Atom(_) => 0,
            Formula::Not(g) => 1 + g.connective_weight(),
            Formula::And(cs) | Formula::Or(cs) => {
                cs.len().saturating_sub(1).max(1) + cs.iter().map(Formula::connective_weight).sum::<usize>()
            }
            Formula::Implies(a, b) => 1 + a.connective_weight() + b.connective_weight(),
            Formula::Iff(a, b) => 2 + a.connective_weight() + b.connective_weight(),
        }
    }

    pub fn evaluate(&self, i: &Interpretation) -> Result<bool> {
        Ok(match self {
            Formula::Atom(a) if *a == Atom::FALSUM => false,
            Formula::Atom(a) => i.value(*a).ok_or(Error::UnassignedAtom(*a))?,
            Formula::Not(g) => !g.evaluate(i)?,
            Formula::And(cs) => {
                let mut all = true;
                for c in cs {
                    all &= c.evaluate(i)?;
                }
                all
            }
            Formula::Or(cs) => {
                let mut any = false;
                for c in cs {
                    any |= c.evaluate(i)?;
                }
                any
            }
            Formula::Implies(a, b) => !a.evaluate(i)? | b.evaluate(i)?,
            Formula::Iff(a, b) => a.evaluate(i)? == b.evaluate(i)?,
        })
    }
}

impl From<Literal> for Formula {
    fn from(l: Literal) -> Self {
        Formula::lit(l)
    }
}

impl From<Atom> for Formula {
    fn from(a: Atom) -> Self {
        Formula::Atom(a)
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn join(f: &mut fmt::Formatter<'_>, cs: &[Formula], sep: &str) -> fmt::Result {
            write!(f, "(")?;
            for (k, c) in cs.iter().enumerate() {
                if k > 0 {
                    write!(f, " {sep} ")?;
                }
                write!(f, "{c}")?;
            }
            write!(f, ")")
        }
        match self {
            Formula::Atom(a) => write!(f, "{a}"),
            Formula::Not(g) => write!(f, "¬{g}"),
            Formula::And(cs) => join(f, cs, "∧"),
            Formula::Or(cs) => join(f, cs, "∨"),
            Formula::Implies(a, b) => write!(f, "({a} → {b})"),
            Formula::Iff(a, b) => write!(f, "({a} ↔ {b})"),
        }
    }
}

pub fn evaluate(i: &Interpretation, f: &Formula) -> Result<bool> {
    f.evaluate(i)
}

/// A set of formulas that always contains `¬⊥`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Theory {
    formulas: Vec<Formula>,
    occurs: Vec<bool>,
    atom_count: usize,
}

impl Default for Theory {
    fn default() -> Self {
        let mut t = Theory { formulas: Vec::new(), occurs: Vec::new(), atom_count: 0 };
        t.push(Formula::verum());
        t
    }
}

impl Theory {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, f: Formula) {
        f.for_each_atom(&mut |a| {
            let idx = a.index() as usize;
            if idx >= self.occurs.len() {
                self.occurs.resize(idx + 1, false);
            }
            if !self.occurs[idx] {
                self.occurs[idx] = true;
                self.atom_count += 1;
            }
        });
        self.formulas.push(f);
    }

    pub fn formulas(&self) -> &[Formula] {
        &self.formulas
    }

    pub fn len(&self) -> usize {
        self.formulas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.formulas.is_empty()
    }

    /// `atoms(T)` in increasing index order.
    pub fn atoms(&self) -> impl Iterator<Item = Atom> + '_ {
        self.occurs
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| Atom(i as u32))
    }

    pub fn atom_count(&self) -> usize {
        self.atom_count
    }

    pub fn contains_atom(&self, a: Atom) -> bool {
        self.occurs.get(a.index() as usize).copied().unwrap_or(false)
    }

    pub fn max_atom(&self) -> u32 {
        (self.occurs.len() as u32).saturating_sub(1).max(1)
    }

    pub fn literal_occurrences(&self) -> usize {
        self.formulas.iter().map(Formula::literal_occurrences).sum()
    }

    pub fn is_model(&self, i: &Interpretation) -> Result<bool> {
        for f in &self.formulas {
            if !f.evaluate(i)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl Extend<Formula> for Theory {
    fn extend<I: IntoIterator<Item = Formula>>(&mut self, iter: I) {
        for f in iter {
            self.push(f);
        }
    }
}

/// A consistent assignment of truth values to atoms.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Interpretation {
    values: Vec<Option<bool>>,
}

impl Interpretation {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_literals<I: IntoIterator<Item = Literal>>(lits: I) -> Result<Self> {
        let mut i = Interpretation::new();
        for l in lits {
            match i.value(l.atom()) {
                Some(v) if v != l.is_positive() => return Err(Error::InconsistentAssignment(l.atom())),
                _ => i.set(l.atom(), l.is_positive()),
            }
        }
        Ok(i)
    }

    /// Total assignment over atoms `1..=values.len()` from a dense vector
    /// whose entry `k` holds the value of atom `k + 1`.
    pub fn from_dense(values: &[bool]) -> Self {
        let mut v = Vec::with_capacity(values.len() + 1);
        v.push(None);
        v.extend(values.iter().map(|&b| Some(b)));
        Interpretation { values: v }
    }

    pub fn set(&mut self, atom: Atom, value: bool) {
        let idx = atom.index() as usize;
        if idx >= self.values.len() {
            self.values.resize(idx + 1, None);
        }
        self.values[idx] = Some(value);
    }

    pub fn value(&self, atom: Atom) -> Option<bool> {
        self.values.get(atom.index() as usize).copied().flatten()
    }

    pub fn satisfies(&self, l: Literal) -> Option<bool> {
        self.value(l.atom()).map(|v| v == l.is_positive())
    }

    /// True iff the literal is assigned and holds.
    pub fn holds(&self, l: Literal) -> bool {
        self.satisfies(l) == Some(true)
    }

    pub fn literals(&self) -> impl Iterator<Item = Literal> + '_ {
        self.values
            .iter()
            .enumerate()
            .filter_map(|(i, v)| v.map(|b| Literal::new(Atom(i as u32), b)))
    }

    pub fn restrict<I: IntoIterator<Item = Atom>>(&self, atoms: I) -> Interpretation {
        let mut out = Interpretation::new();
        for a in atoms {
            if let Some(v) = self.value(a) {
                out.set(a, v);
            }
        }
        out
    }

    pub fn true_atoms(&self) -> impl Iterator<Item = Atom> + '_ {
        self.literals().filter(|l| l.is_positive()).map(Literal::atom)
    }
}
