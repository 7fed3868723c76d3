//! Propositional encodings of argumentation semantics.
//!
//! Every argument `x` gets an atom `x` (true iff `x` is in the extension).
//! Theories that need them also get `a_x` ("`x` is attacked by the
//! extension") and `r_x` ("`x` is in the range of the extension"). All
//! constructions walk the attack adjacency lists once, so their size and
//! running time are linear in `|arg| + |att|`.

use std::fmt;
use std::str::FromStr;

use crate::af::{ArgId, ArgumentationFramework, Extension};
use crate::circumscription::{Circumscriber, CircumscriptionInstance};
use crate::error::{Error, Result};
use crate::logic::{Atom, AtomRegistry, Formula, Literal, Theory};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Semantics {
    Complete,
    Stable,
    Grounded,
    Preferred,
    SemiStable,
    Stage,
    Ideal,
}

impl Semantics {
    pub const ALL: [Semantics; 7] = [
        Semantics::Complete,
        Semantics::Stable,
        Semantics::Grounded,
        Semantics::Preferred,
        Semantics::SemiStable,
        Semantics::Stage,
        Semantics::Ideal,
    ];

    pub fn code(self) -> &'static str {
        match self {
            Semantics::Complete => "CO",
            Semantics::Stable => "ST",
            Semantics::Grounded => "GR",
            Semantics::Preferred => "PR",
            Semantics::SemiStable => "SST",
            Semantics::Stage => "STG",
            Semantics::Ideal => "ID",
        }
    }
}

impl fmt::Display for Semantics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl FromStr for Semantics {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Semantics::ALL
            .into_iter()
            .find(|sem| sem.code() == s)
            .ok_or_else(|| Error::UnsupportedTask(s.to_string()))
    }
}

/// The base theories that semantics are assembled from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BaseKind {
    ConflictFree,
    Admissible,
    Complete,
    Stable,
    CompleteRange,
    ConflictFreeRange,
}

#[derive(Debug, Clone)]
pub struct VariableMap {
    x_of: Vec<Atom>,
    a_of: Option<Vec<Atom>>,
    r_of: Option<Vec<Atom>>,
}

impl VariableMap {
    fn new(af: &ArgumentationFramework, attacked: bool, range: bool) -> Self {
        let mut reg = AtomRegistry::new();
        let n = af.len();
        let x_of = (0..n).map(|_| reg.fresh()).collect();
        let a_of = attacked.then(|| (0..n).map(|_| reg.fresh()).collect());
        let r_of = range.then(|| (0..n).map(|_| reg.fresh()).collect());
        VariableMap { x_of, a_of, r_of }
    }

    pub fn x(&self, arg: ArgId) -> Atom {
        self.x_of[arg]
    }

    pub fn a(&self, arg: ArgId) -> Option<Atom> {
        self.a_of.as_ref().map(|v| v[arg])
    }

    pub fn r(&self, arg: ArgId) -> Option<Atom> {
        self.r_of.as_ref().map(|v| v[arg])
    }

    pub fn arguments(&self) -> &[Atom] {
        &self.x_of
    }

    pub fn argument_of(&self, atom: Atom) -> Option<ArgId> {
        // Argument atoms are allocated first and densely.
        let first = self.x_of.first()?.index();
        let k = atom.index().checked_sub(first)? as usize;
        (k < self.x_of.len()).then_some(k)
    }

    pub fn extension_of(&self, atoms: &[Atom]) -> Extension {
        atoms.iter().filter_map(|&a| self.argument_of(a)).collect()
    }
}

fn lit(a: Atom, positive: bool) -> Formula {
    Formula::lit(Literal::new(a, positive))
}

/// `{¬x ∨ ¬y | xy ∈ att}`, one clause per unordered pair.
fn push_conflict_free(t: &mut Theory, af: &ArgumentationFramework, v: &VariableMap) {
    for (x, y) in af.arcs() {
        if x > y && af.has_attack(y, x) {
            continue;
        }
        t.push(Formula::or(vec![lit(v.x(x), false), lit(v.x(y), false)]));
    }
}

/// `a_x ↔ ∨_{yx ∈ att} y`; `⊥` on the right when `x` is unattacked.
fn push_attacked(t: &mut Theory, af: &ArgumentationFramework, v: &VariableMap) {
    for x in 0..af.len() {
        let attackers = af.attackers(x).iter().map(|&y| Formula::atom(v.x(y))).collect();
        t.push(Formula::iff(Formula::atom(v.a(x).unwrap()), Formula::or(attackers)));
    }
}

/// Per argument `x`: `x → ∧_{yx ∈ att} (¬y ∧ a_y)`. This packs the
/// conflict-freeness clauses and the defence implications `x → a_y` into
/// one formula per argument.
fn push_defended(t: &mut Theory, af: &ArgumentationFramework, v: &VariableMap) {
    for x in 0..af.len() {
        let mut body = Vec::with_capacity(2 * af.attackers(x).len());
        for &y in af.attackers(x) {
            body.push(lit(v.x(y), false));
            body.push(Formula::atom(v.a(y).unwrap()));
        }
        t.push(Formula::implies(Formula::atom(v.x(x)), Formula::and(body)));
    }
}

/// `(∧_{yx ∈ att} a_y) → x`; a bare `x` when `x` is unattacked.
fn push_complete(t: &mut Theory, af: &ArgumentationFramework, v: &VariableMap) {
    for x in 0..af.len() {
        let attackers = af.attackers(x);
        if attackers.is_empty() {
            t.push(Formula::atom(v.x(x)));
            continue;
        }
        let body = attackers.iter().map(|&y| Formula::atom(v.a(y).unwrap())).collect();
        t.push(Formula::implies(Formula::and(body), Formula::atom(v.x(x))));
    }
}

/// `r_x → x ∨ ∨_{yx ∈ att} y`.
fn push_range(t: &mut Theory, af: &ArgumentationFramework, v: &VariableMap) {
    for x in 0..af.len() {
        let mut body = Vec::with_capacity(af.attackers(x).len() + 1);
        body.push(Formula::atom(v.x(x)));
        body.extend(af.attackers(x).iter().map(|&y| Formula::atom(v.x(y))));
        t.push(Formula::implies(Formula::atom(v.r(x).unwrap()), Formula::Or(body)));
    }
}

pub fn build_base_theory(af: &ArgumentationFramework, kind: BaseKind) -> (Theory, VariableMap) {
    use BaseKind::*;
    let attacked = matches!(kind, Admissible | Complete | Stable | CompleteRange);
    let range = matches!(kind, Stable | CompleteRange | ConflictFreeRange);
    let v = VariableMap::new(af, attacked, range);
    let mut t = Theory::new();
    match kind {
        ConflictFree | ConflictFreeRange => push_conflict_free(&mut t, af, &v),
        _ => {
            push_attacked(&mut t, af, &v);
            push_defended(&mut t, af, &v);
        }
    }
    if matches!(kind, Complete | Stable | CompleteRange) {
        push_complete(&mut t, af, &v);
    }
    if range {
        push_range(&mut t, af, &v);
    }
    if kind == Stable {
        for x in 0..af.len() {
            t.push(Formula::atom(v.r(x).unwrap()));
        }
    }
    (t, v)
}

fn make(theory: Theory, p: Vec<Literal>, v: &VariableMap) -> CircumscriptionInstance {
    CircumscriptionInstance::new(theory, p, v.arguments().to_vec()).expect("encoding atoms occur in the theory")
}

/// The circumscription instance whose preferred models, projected onto the
/// argument atoms, are the extensions of `sem`. For the ideal semantics this
/// first computes the union of all admissible extensions.
pub fn build_instance(af: &ArgumentationFramework, sem: Semantics) -> (CircumscriptionInstance, VariableMap) {
    build_instance_with_seed(af, sem, 0)
}

pub fn build_instance_with_seed(
    af: &ArgumentationFramework,
    sem: Semantics,
    seed: u64,
) -> (CircumscriptionInstance, VariableMap) {
    let n = af.len();
    let (kind, p): (BaseKind, fn(&VariableMap, ArgId) -> Literal) = match sem {
        Semantics::Complete => (BaseKind::Complete, |_, _| unreachable!()),
        Semantics::Stable => (BaseKind::Stable, |_, _| unreachable!()),
        Semantics::Grounded => (BaseKind::Complete, |v, x| v.x(x).positive()),
        Semantics::Preferred => (BaseKind::Complete, |v, x| v.x(x).negative()),
        Semantics::SemiStable => (BaseKind::CompleteRange, |v, x| v.r(x).unwrap().negative()),
        Semantics::Stage => (BaseKind::ConflictFreeRange, |v, x| v.r(x).unwrap().negative()),
        Semantics::Ideal => {
            let union = admissible_union_with_seed(af, seed).union;
            return build_ideal_instance(af, &union);
        }
    };
    let (t, v) = build_base_theory(af, kind);
    let p = match sem {
        Semantics::Complete | Semantics::Stable => Vec::new(),
        _ => (0..n).map(|x| p(&v, x)).collect(),
    };
    (make(t, p, &v), v)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissibleUnion {
    pub union: Extension,
    /// Circumscription calls issued.
    pub calls: usize,
}

/// Union of all admissible extensions. Each round asks for an admissible
/// extension containing some argument outside the current union that
/// accepts as many outside arguments as possible (inclusion-maximal).
pub fn admissible_union(af: &ArgumentationFramework) -> AdmissibleUnion {
    admissible_union_with_seed(af, 0)
}

pub fn admissible_union_with_seed(af: &ArgumentationFramework, seed: u64) -> AdmissibleUnion {
    let (t, v) = build_base_theory(af, BaseKind::Admissible);
    let inst = make(t, Vec::new(), &v);
    let mut circ = Circumscriber::with_seed(&inst, seed);
    let mut in_union = vec![false; af.len()];
    let mut calls = 0;
    loop {
        let outside: Vec<Literal> = (0..af.len()).filter(|&x| !in_union[x]).map(|x| v.x(x).positive()).collect();
        if outside.is_empty() {
            break;
        }
        calls += 1;
        let act = circ.activation();
        circ.add_guarded(act, &outside);
        let p: Vec<Literal> = outside.iter().map(|&l| !l).collect();
        let found = circ.minimal_model_under(&p, &[act.positive()]);
        circ.retire(act);
        let Some(model) = found else {
            break;
        };
        for (x, member) in in_union.iter_mut().enumerate() {
            *member |= model.holds(v.x(x).positive());
        }
    }
    AdmissibleUnion { union: (0..af.len()).filter(|&x| in_union[x]).collect(), calls }
}

/// `CIRC(admissible(G) ∪ {¬x | x ∉ Y}, {¬y | y ∈ Y})` where `Y` drops from
/// `union` every argument attacked by some member of `union`.
pub fn build_ideal_instance(af: &ArgumentationFramework, union: &Extension) -> (CircumscriptionInstance, VariableMap) {
    let (mut t, v) = build_base_theory(af, BaseKind::Admissible);
    let mut in_y = vec![false; af.len()];
    for &x in union {
        in_y[x] = true;
    }
    for &y in union {
        for &x in af.attacks(y) {
            in_y[x] = false;
        }
    }
    let mut p = Vec::new();
    for (x, &keep) in in_y.iter().enumerate() {
        if keep {
            p.push(v.x(x).negative());
        } else {
            t.push(lit(v.x(x), false));
        }
    }
    (make(t, p, &v), v)
}

pub fn ideal_extension(af: &ArgumentationFramework) -> Result<Extension> {
    ideal_extension_with_seed(af, 0)
}

/// The ideal extension. The instance is checked to have exactly one
/// preferred projection; anything else is reported as an error.
pub fn ideal_extension_with_seed(af: &ArgumentationFramework, seed: u64) -> Result<Extension> {
    let (inst, v) = build_instance_with_seed(af, Semantics::Ideal, seed);
    let found = Circumscriber::with_seed(&inst, seed).enumerate(Some(2));
    match found.as_slice() {
        [only] => Ok(v.extension_of(only)),
        other => Err(Error::NonUniqueIdeal(other.len())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circumscription::enumerate_preferred;
    use crate::logic::to_cnf;
    use crate::sat::Solver;

    fn af(n: usize, arcs: &[(usize, usize)]) -> ArgumentationFramework {
        let names: Vec<String> = ["a", "b", "c", "d", "e"][..n].iter().map(|s| s.to_string()).collect();
        ArgumentationFramework::new(names, arcs.iter().copied())
    }

    fn ext(xs: &[ArgId]) -> Extension {
        xs.iter().copied().collect()
    }

    fn extensions(af: &ArgumentationFramework, sem: Semantics) -> Vec<Extension> {
        let (inst, v) = build_instance(af, sem);
        let mut out: Vec<Extension> = enumerate_preferred(&inst, None).iter().map(|m| v.extension_of(m)).collect();
        out.sort();
        out
    }

    #[test]
    fn conflict_free_dedups_symmetric_attacks() {
        let g_mut = af(2, &[(0, 1), (1, 0)]);
        let (t, v) = build_base_theory(&g_mut, BaseKind::ConflictFree);
        let expected = vec![
            Formula::verum(),
            Formula::or(vec![lit(v.x(0), false), lit(v.x(1), false)]),
        ];
        assert_eq!(t.formulas(), expected.as_slice());
        assert!(v.a(0).is_none() && v.r(0).is_none());
    }

    #[test]
    fn stable_theory_of_self_attack() {
        let g_self = af(1, &[(0, 0)]);
        let (t, v) = build_base_theory(&g_self, BaseKind::Stable);
        let (x, r) = (v.x(0), v.r(0).unwrap());
        assert!(t.formulas().contains(&Formula::atom(r)));
        assert!(t
            .formulas()
            .contains(&Formula::implies(Formula::atom(r), Formula::Or(vec![x.into(), x.into()]))));
        let mut s = Solver::from_cnf(&to_cnf(&t), 0);
        assert!(!s.solve(&[]).is_sat());
    }

    #[test]
    fn complete_theory_of_chain_has_one_model() {
        let chain = af(3, &[(0, 1), (1, 2)]);
        let (t, v) = build_base_theory(&chain, BaseKind::Complete);
        let inst = CircumscriptionInstance::new(t, vec![], v.arguments().to_vec()).unwrap();
        let all = enumerate_preferred(&inst, None);
        assert_eq!(all.len(), 1);
        assert_eq!(v.extension_of(&all[0]), ext(&[0, 2]));
    }

    #[test]
    fn admissible_models_defend_their_members() {
        let g = af(4, &[(0, 1), (1, 0), (1, 2), (2, 3), (3, 2)]);
        let (t, v) = build_base_theory(&g, BaseKind::Admissible);
        let mut s = Solver::from_cnf(&to_cnf(&t), 0);
        let mut models = 0;
        while let Some(m) = s.solve(&[]).into_model() {
            models += 1;
            for x in 0..g.len() {
                if m.holds(v.x(x).positive()) {
                    for &y in g.attackers(x) {
                        assert!(m.holds(v.a(y).unwrap().positive()));
                    }
                }
            }
            let block: Vec<Literal> = (1..=t.max_atom())
                .map(Atom::new)
                .map(|a| Literal::new(a, m.value(a) != Some(true)))
                .collect();
            s.add_clause(&block).unwrap();
        }
        assert!(models > 1);
    }

    #[test]
    fn semantics_on_fixtures() {
        let g_mut = af(2, &[(0, 1), (1, 0)]);
        assert_eq!(extensions(&g_mut, Semantics::Preferred), vec![ext(&[0]), ext(&[1])]);
        assert_eq!(extensions(&g_mut, Semantics::Grounded), vec![ext(&[])]);
        let cyc3 = af(3, &[(0, 1), (1, 2), (2, 0)]);
        assert_eq!(extensions(&cyc3, Semantics::Stage), vec![ext(&[0]), ext(&[1]), ext(&[2])]);
        assert_eq!(extensions(&cyc3, Semantics::SemiStable), vec![ext(&[])]);
    }

    #[test]
    fn admissible_union_examples() {
        let chain = af(3, &[(0, 1), (1, 2)]);
        assert_eq!(admissible_union(&chain).union, ext(&[0, 2]));
        let g_mut = af(2, &[(0, 1), (1, 0)]);
        assert_eq!(admissible_union(&g_mut).union, ext(&[0, 1]));
        let g_self = af(1, &[(0, 0)]);
        assert_eq!(admissible_union(&g_self), AdmissibleUnion { union: ext(&[]), calls: 1 });
        assert_eq!(admissible_union(&af(0, &[])).calls, 0);
    }

    #[test]
    fn ideal_instance_examples() {
        let chain = af(3, &[(0, 1), (1, 2)]);
        let (inst, v) = build_ideal_instance(&chain, &ext(&[0, 2]));
        assert_eq!(inst.p_set(), &[v.x(0).negative(), v.x(2).negative()]);
        assert_eq!(ideal_extension(&chain).unwrap(), ext(&[0, 2]));

        let g_mut = af(2, &[(0, 1), (1, 0)]);
        let (inst, _) = build_ideal_instance(&g_mut, &ext(&[0, 1]));
        assert!(inst.p_set().is_empty());
        assert_eq!(ideal_extension(&g_mut).unwrap(), ext(&[]));

        let cyc3 = af(3, &[(0, 1), (1, 2), (2, 0)]);
        assert_eq!(ideal_extension(&cyc3).unwrap(), ext(&[]));
        assert_eq!(ideal_extension(&af(0, &[])).unwrap(), ext(&[]));
    }

    #[test]
    fn stable_size_formula() {
        // ¬⊥, attacked (n+m+u), defended (n+2m+u), complete (n+m), range (2n+m), units (n)
        let g = af(5, &[(0, 1), (1, 2), (2, 0), (3, 3), (0, 3)]);
        let (t, _) = build_base_theory(&g, BaseKind::Stable);
        let (n, m, u) = (5, 5, 1);
        assert_eq!(t.literal_occurrences(), 6 * n + 5 * m + 2 * u + 1);
    }

    #[test]
    fn semantics_codes_round_trip() {
        for sem in Semantics::ALL {
            assert_eq!(sem.code().parse::<Semantics>().unwrap(), sem);
        }
        assert!("XX".parse::<Semantics>().is_err());
    }

    #[test]
    fn argument_atoms_are_dense() {
        let g = af(3, &[(0, 1)]);
        let (_, v) = build_base_theory(&g, BaseKind::Stable);
        assert_eq!(v.argument_of(v.x(2)), Some(2));
        assert_eq!(v.argument_of(v.r(0).unwrap()), None);
        assert_eq!(v.argument_of(Atom::FALSUM), None);
    }
}
