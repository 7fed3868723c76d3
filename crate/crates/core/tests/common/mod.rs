#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use argcirc::oracle;
use argcirc::tasks::{Problem, TaskId, SUPPORTED_TASKS};
use argcirc::{ArgumentationFramework, Extension};
use rand::Rng;

pub const FIXTURES: &[&str] = &["empty", "self", "mut", "chain", "cyc3"];
pub const FORMATS: &[&str] = &["tgf", "apx"];

pub fn names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("a{i}")).collect()
}

pub fn af(n: usize, arcs: &[(usize, usize)]) -> ArgumentationFramework {
    ArgumentationFramework::new(names(n), arcs.iter().copied())
}

/// Every labeled digraph (self-loops allowed) on `n` nodes. `n * n` must stay small.
pub fn all_digraphs(n: usize) -> impl Iterator<Item = ArgumentationFramework> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).collect();
    (0u32..1 << pairs.len()).map(move |bits| {
        let arcs: Vec<_> = pairs.iter().enumerate().filter(|(i, _)| bits & (1 << i) != 0).map(|(_, &p)| p).collect();
        af(n, &arcs)
    })
}

pub fn random_af(rng: &mut impl Rng, n: usize, p: f64) -> ArgumentationFramework {
    let mut arcs = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if rng.random_bool(p) {
                arcs.push((x, y));
            }
        }
    }
    af(n, &arcs)
}

/// Random AF with exactly `m` distinct arcs.
pub fn random_af_with_arcs(rng: &mut impl Rng, n: usize, m: usize) -> ArgumentationFramework {
    let mut arcs = BTreeSet::new();
    while arcs.len() < m {
        arcs.insert((rng.random_range(0..n), rng.random_range(0..n)));
    }
    ArgumentationFramework::new(names(n), arcs)
}

pub fn fixture_path(name: &str, format: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(format!("{name}.{format}"))
}

pub fn golden_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden/cli.txt")
}

pub fn render(af: &ArgumentationFramework, e: &Extension) -> String {
    format!("[{}]", af.names(e).join(","))
}

pub fn oracle_credulous(exts: &BTreeSet<Extension>, q: usize) -> bool {
    exts.iter().any(|e| e.contains(&q))
}

pub fn oracle_skeptical(exts: &BTreeSet<Extension>, q: usize) -> bool {
    exts.iter().all(|e| e.contains(&q))
}

/// Every acceptable stdout line (without newline) for a task, per the oracle.
pub fn oracle_outputs(af: &ArgumentationFramework, task: TaskId, query: Option<usize>) -> Vec<String> {
    let exts = oracle::brute_extensions(af, task.semantics).unwrap();
    let yes_no = |b: bool| if b { "YES" } else { "NO" }.to_string();
    match task.problem {
        Problem::SE if exts.is_empty() => vec!["NO".to_string()],
        Problem::SE => exts.iter().map(|e| render(af, e)).collect(),
        Problem::DC => vec![yes_no(oracle_credulous(&exts, query.unwrap()))],
        Problem::DS => vec![yes_no(oracle_skeptical(&exts, query.unwrap()))],
        Problem::CE => vec![exts.len().to_string()],
    }
}

/// One golden record: invocation and the accepted outputs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoldenCase {
    pub fixture: String,
    pub format: String,
    pub task: String,
    pub query: Option<String>,
    pub accepted: Vec<String>,
}

impl GoldenCase {
    pub fn args(&self) -> Vec<String> {
        let file = fixture_path(&self.fixture, &self.format);
        let mut v = vec!["-p".into(), self.task.clone(), "-f".into(), file.display().to_string(), "-fo".into(), self.format.clone()];
        if let Some(q) = &self.query {
            v.extend(["-a".to_string(), q.clone()]);
        }
        v
    }

    pub fn line(&self) -> String {
        let q = self.query.as_deref().map(|q| format!(" -a {q}")).unwrap_or_default();
        format!("{}.{} {}{} => {}", self.fixture, self.format, self.task, q, self.accepted.join(" | "))
    }

    pub fn parse(line: &str) -> Self {
        let (lhs, rhs) = line.split_once(" => ").expect("golden line without `=>`");
        let mut words = lhs.split_whitespace();
        let (fixture, format) = words.next().unwrap().split_once('.').unwrap();
        let task = words.next().unwrap().to_string();
        let query = match words.next() {
            Some("-a") => Some(words.next().unwrap().to_string()),
            None => None,
            Some(other) => panic!("unexpected token {other}"),
        };
        GoldenCase {
            fixture: fixture.into(),
            format: format.into(),
            task,
            query,
            accepted: rhs.split(" | ").map(str::to_string).collect(),
        }
    }
}

pub fn load_fixture(name: &str, format: &str) -> ArgumentationFramework {
    let bytes = std::fs::read(fixture_path(name, format)).unwrap();
    match format {
        "tgf" => argcirc::af::parse_tgf(&bytes).unwrap(),
        _ => argcirc::af::parse_apx(&bytes).unwrap(),
    }
}

/// Golden cases computed from the oracle for every fixture, format and task.
pub fn oracle_golden() -> Vec<GoldenCase> {
    let mut cases = Vec::new();
    for &fixture in FIXTURES {
        for &format in FORMATS {
            let g = load_fixture(fixture, format);
            for &task in SUPPORTED_TASKS {
                let queries: Vec<Option<usize>> =
                    if task.problem.takes_query() { (0..g.len()).map(Some).collect() } else { vec![None] };
                for q in queries {
                    cases.push(GoldenCase {
                        fixture: fixture.into(),
                        format: format.into(),
                        task: task.to_string(),
                        query: q.map(|q| g.name(q).to_string()),
                        accepted: oracle_outputs(&g, task, q),
                    });
                }
            }
        }
    }
    cases
}

pub fn read_golden() -> Vec<GoldenCase> {
    std::fs::read_to_string(golden_path())
        .unwrap()
        .lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(GoldenCase::parse)
        .collect()
}
