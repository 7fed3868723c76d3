//! ICCMA task identifiers and the reasoning pipeline behind each of them.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::af::{ArgId, ArgumentationFramework, Extension};
use crate::circumscription::Circumscriber;
use crate::encoding::{self, Semantics, VariableMap};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Problem {
    /// Some extension.
    SE,
    /// Credulous acceptance.
    DC,
    /// Skeptical acceptance.
    DS,
    /// Extension count.
    CE,
}

impl Problem {
    pub fn code(self) -> &'static str {
        match self {
            Problem::SE => "SE",
            Problem::DC => "DC",
            Problem::DS => "DS",
            Problem::CE => "CE",
        }
    }

    pub fn takes_query(self) -> bool {
        matches!(self, Problem::DC | Problem::DS)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TaskId {
    pub problem: Problem,
    pub semantics: Semantics,
}

impl TaskId {
    pub const fn new(problem: Problem, semantics: Semantics) -> Self {
        TaskId { problem, semantics }
    }

    pub fn is_supported(self) -> bool {
        SUPPORTED_TASKS.contains(&self)
    }
}

impl fmt::Display for TaskId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.problem.code(), self.semantics.code())
    }
}

impl FromStr for TaskId {
    type Err = Error;

    /// Accepts only supported tasks.
    fn from_str(s: &str) -> Result<Self> {
        SUPPORTED_TASKS
            .iter()
            .copied()
            .find(|t| t.to_string() == s)
            .ok_or_else(|| Error::UnsupportedTask(s.to_string()))
    }
}

use Problem::*;
use Semantics::*;

/// The ICCMA 2021 task list followed by the grounded-semantics extensions.
pub const SUPPORTED_TASKS: &[TaskId] = &[
    TaskId::new(CE, Complete),
    TaskId::new(CE, Preferred),
    TaskId::new(CE, SemiStable),
    TaskId::new(CE, Stable),
    TaskId::new(DC, Complete),
    TaskId::new(DC, Preferred),
    TaskId::new(DC, SemiStable),
    TaskId::new(DC, Stable),
    TaskId::new(DC, Stage),
    TaskId::new(DS, Complete),
    TaskId::new(DS, Ideal),
    TaskId::new(DS, Preferred),
    TaskId::new(DS, SemiStable),
    TaskId::new(DS, Stable),
    TaskId::new(DS, Stage),
    TaskId::new(SE, Complete),
    TaskId::new(SE, Ideal),
    TaskId::new(SE, Preferred),
    TaskId::new(SE, SemiStable),
    TaskId::new(SE, Stable),
    TaskId::new(SE, Stage),
    TaskId::new(CE, Stage),
    TaskId::new(SE, Grounded),
    TaskId::new(DC, Grounded),
    TaskId::new(DS, Grounded),
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TaskResult {
    Extension(Extension),
    NoExtension,
    Verdict(bool),
    Count(u64),
}

/// Runs tasks over one framework. Solver sessions are cached per
/// semantics, so repeated queries reuse the loaded theory.
pub struct Reasoner<'a> {
    af: &'a ArgumentationFramework,
    seed: u64,
    sessions: HashMap<Semantics, (Circumscriber, VariableMap)>,
    admissible_union: Option<Extension>,
    ideal: Option<Extension>,
}

impl<'a> Reasoner<'a> {
    pub fn new(af: &'a ArgumentationFramework) -> Self {
        Self::with_seed(af, 0)
    }

    pub fn with_seed(af: &'a ArgumentationFramework, seed: u64) -> Self {
        Reasoner { af, seed, sessions: HashMap::new(), admissible_union: None, ideal: None }
    }

    pub fn framework(&self) -> &ArgumentationFramework {
        self.af
    }

    fn session(&mut self, sem: Semantics) -> &mut (Circumscriber, VariableMap) {
        let (af, seed) = (self.af, self.seed);
        self.sessions.entry(sem).or_insert_with(|| {
            let (inst, vars) = encoding::build_instance_with_seed(af, sem, seed);
            (Circumscriber::with_seed(&inst, seed), vars)
        })
    }

    fn check(&self, q: ArgId) -> Result<()> {
        if q < self.af.len() {
            Ok(())
        } else {
            Err(Error::UnknownArgument(format!("#{q}")))
        }
    }

    fn admissible_union(&mut self) -> &Extension {
        let (af, seed) = (self.af, self.seed);
        self.admissible_union
            .get_or_insert_with(|| encoding::admissible_union_with_seed(af, seed).union)
    }

    pub fn ideal_extension(&mut self) -> Result<Extension> {
        if let Some(e) = &self.ideal {
            return Ok(e.clone());
        }
        let union = self.admissible_union().clone();
        let (inst, vars) = encoding::build_ideal_instance(self.af, &union);
        let found = Circumscriber::with_seed(&inst, self.seed).enumerate(Some(2));
        let [only] = found.as_slice() else {
            return Err(Error::NonUniqueIdeal(found.len()));
        };
        let e = vars.extension_of(only);
        self.ideal = Some(e.clone());
        Ok(e)
    }

    pub fn single_extension(&mut self, sem: Semantics) -> Result<Option<Extension>> {
        if sem == Ideal {
            return self.ideal_extension().map(Some);
        }
        let (circ, vars) = self.session(sem);
        Ok(circ.preferred_model().map(|m| vars.extension_of(&m.visible_projection)))
    }

    pub fn count_extensions(&mut self, sem: Semantics) -> Result<u64> {
        if matches!(sem, Grounded | Ideal) {
            return Ok(1);
        }
        Ok(self.session(sem).0.count())
    }

    pub fn credulous_accept(&mut self, sem: Semantics, q: ArgId) -> Result<bool> {
        self.check(q)?;
        Ok(match sem {
            // Every complete extension extends to a preferred one.
            Complete | Preferred => {
                let (circ, vars) = self.session(Complete);
                let x = vars.x(q).positive();
                circ.satisfiable(&[x]).is_some()
            }
            Stable => {
                let (circ, vars) = self.session(Stable);
                let x = vars.x(q).positive();
                circ.satisfiable(&[x]).is_some()
            }
            Grounded => self.single_extension(Grounded)?.is_some_and(|e| e.contains(&q)),
            Ideal => self.admissible_union().contains(&q) && self.ideal_extension()?.contains(&q),
            SemiStable | Stage => {
                let (circ, vars) = self.session(sem);
                let x = vars.x(q).positive();
                circ.credulous(x)
            }
        })
    }

    pub fn skeptical_accept(&mut self, sem: Semantics, q: ArgId) -> Result<bool> {
        self.check(q)?;
        Ok(match sem {
            Complete | Stable => {
                let (circ, vars) = self.session(sem);
                let not_x = vars.x(q).negative();
                circ.satisfiable(&[not_x]).is_none()
            }
            Grounded => self.single_extension(Grounded)?.is_some_and(|e| e.contains(&q)),
            Ideal => self.ideal_extension()?.contains(&q),
            Preferred | SemiStable | Stage => {
                let (circ, vars) = self.session(sem);
                let x = vars.x(q).positive();
                circ.skeptical(x)
            }
        })
    }

    pub fn solve(&mut self, task: TaskId, query: Option<ArgId>) -> Result<TaskResult> {
        if !task.is_supported() {
            return Err(Error::UnsupportedTask(task.to_string()));
        }
        match (task.problem.takes_query(), query) {
            (true, None) => return Err(Error::MissingQuery(task.to_string())),
            (false, Some(_)) => return Err(Error::UnexpectedQuery(task.to_string())),
            _ => {}
        }
        let sem = task.semantics;
        Ok(match task.problem {
            SE => match self.single_extension(sem)? {
                Some(e) => TaskResult::Extension(e),
                None => TaskResult::NoExtension,
            },
            DC => TaskResult::Verdict(self.credulous_accept(sem, query.unwrap())?),
            DS => TaskResult::Verdict(self.skeptical_accept(sem, query.unwrap())?),
            CE => TaskResult::Count(self.count_extensions(sem)?),
        })
    }
}

pub fn solve_task(af: &ArgumentationFramework, task: TaskId, query: Option<ArgId>) -> Result<TaskResult> {
    Reasoner::new(af).solve(task, query)
}

pub fn credulous_accept(af: &ArgumentationFramework, sem: Semantics, q: ArgId) -> Result<bool> {
    Reasoner::new(af).credulous_accept(sem, q)
}

pub fn skeptical_accept(af: &ArgumentationFramework, sem: Semantics, q: ArgId) -> Result<bool> {
    Reasoner::new(af).skeptical_accept(sem, q)
}

pub fn single_extension(af: &ArgumentationFramework, sem: Semantics) -> Result<Option<Extension>> {
    Reasoner::new(af).single_extension(sem)
}

pub fn count_extensions(af: &ArgumentationFramework, sem: Semantics) -> Result<u64> {
    Reasoner::new(af).count_extensions(sem)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn af(n: usize, arcs: &[(usize, usize)]) -> ArgumentationFramework {
        let names: Vec<String> = (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect();
        ArgumentationFramework::new(names, arcs.iter().copied())
    }

    fn g_mut() -> ArgumentationFramework {
        af(2, &[(0, 1), (1, 0)])
    }
    fn g_self() -> ArgumentationFramework {
        af(1, &[(0, 0)])
    }
    fn g_chain() -> ArgumentationFramework {
        af(3, &[(0, 1), (1, 2)])
    }
    fn g_cyc3() -> ArgumentationFramework {
        af(3, &[(0, 1), (1, 2), (2, 0)])
    }

    fn task(s: &str) -> TaskId {
        s.parse().unwrap()
    }

    #[test]
    fn solve_task_examples() {
        let r = solve_task(&g_mut(), task("SE-PR"), None).unwrap();
        assert!(r == TaskResult::Extension([0].into()) || r == TaskResult::Extension([1].into()));
        assert_eq!(solve_task(&g_self(), task("SE-ST"), None).unwrap(), TaskResult::NoExtension);
        assert_eq!(solve_task(&g_mut(), task("CE-CO"), None).unwrap(), TaskResult::Count(3));
    }

    #[test]
    fn credulous_examples() {
        assert!(credulous_accept(&g_mut(), Preferred, 0).unwrap());
        assert!(!credulous_accept(&g_cyc3(), Stable, 0).unwrap());
        assert!(credulous_accept(&g_cyc3(), Stage, 0).unwrap());
    }

    #[test]
    fn skeptical_examples() {
        assert!(skeptical_accept(&g_chain(), Complete, 0).unwrap());
        assert!(!skeptical_accept(&g_mut(), Preferred, 0).unwrap());
        assert!(skeptical_accept(&g_self(), Stable, 0).unwrap());
    }

    #[test]
    fn single_extension_examples() {
        assert_eq!(single_extension(&af(0, &[]), Complete).unwrap(), Some(Extension::new()));
        assert_eq!(single_extension(&g_chain(), Ideal).unwrap(), Some([0, 2].into()));
        assert_eq!(single_extension(&g_self(), Stable).unwrap(), None);
    }

    #[test]
    fn count_examples() {
        assert_eq!(count_extensions(&g_mut(), Stable).unwrap(), 2);
        assert_eq!(count_extensions(&g_cyc3(), Stage).unwrap(), 3);
        assert_eq!(count_extensions(&af(0, &[]), Preferred).unwrap(), 1);
    }

    #[test]
    fn query_arity_is_checked() {
        let g = g_mut();
        assert!(matches!(solve_task(&g, task("DC-PR"), None), Err(Error::MissingQuery(_))));
        assert!(matches!(solve_task(&g, task("SE-PR"), Some(0)), Err(Error::UnexpectedQuery(_))));
        assert!(matches!(solve_task(&g, task("DS-PR"), Some(7)), Err(Error::UnknownArgument(_))));
        let dc_id = TaskId::new(DC, Ideal);
        assert!(matches!(solve_task(&g, dc_id, Some(0)), Err(Error::UnsupportedTask(_))));
    }

    #[test]
    fn task_ids_parse_and_print() {
        for t in SUPPORTED_TASKS {
            assert_eq!(t.to_string().parse::<TaskId>().unwrap(), *t);
        }
        assert!("EE-PR".parse::<TaskId>().is_err());
        assert!("CE-GR".parse::<TaskId>().is_err());
        assert!("DC-ID".parse::<TaskId>().is_err());
    }

    #[test]
    fn repeated_queries_on_one_reasoner() {
        let g = g_cyc3();
        let mut r = Reasoner::new(&g);
        for q in 0..3 {
            assert!(r.credulous_accept(Stage, q).unwrap());
            assert!(!r.skeptical_accept(Stage, q).unwrap());
            assert!(!r.credulous_accept(Preferred, q).unwrap());
            assert!(!r.skeptical_accept(Ideal, q).unwrap());
        }
        assert_eq!(r.count_extensions(Stage).unwrap(), 3);
    }
}
