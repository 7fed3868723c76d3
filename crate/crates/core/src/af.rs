//! Abstract argumentation frameworks and the TGF / APX input formats.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt::Write as _;

use crate::error::{Error, ParseError, ParseErrorKind, Result};

/// Arguments are addressed by their position in declaration order.
pub type ArgId = usize;

pub type Extension = BTreeSet<ArgId>;

/// Directed attack graph. `att[x]` lists the arguments `x` attacks and
/// `att_r[x]` the arguments attacking `x`, both sorted and duplicate free.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ArgumentationFramework {
    args: Vec<String>,
    arg_to_idx: HashMap<String, ArgId>,
    att: Vec<Vec<ArgId>>,
    att_r: Vec<Vec<ArgId>>,
}

impl ArgumentationFramework {
    /// Builds a framework from identifiers and attacks given as index pairs.
    /// Duplicate arcs are collapsed.
    ///
    /// # Panics
    /// If an identifier repeats or an attack index is out of range.
    pub fn new<S: Into<String>>(args: impl IntoIterator<Item = S>, attacks: impl IntoIterator<Item = (ArgId, ArgId)>) -> Self {
        let mut b = AfBuilder::default();
        for a in args {
            let a = a.into();
            assert!(!b.af.arg_to_idx.contains_key(&a), "duplicate argument {a}");
            b.argument(a);
        }
        for (x, y) in attacks {
            b.attack(x, y);
        }
        b.finish()
    }

    pub fn len(&self) -> usize {
        self.args.len()
    }

    pub fn is_empty(&self) -> bool {
        self.args.is_empty()
    }

    pub fn args(&self) -> &[String] {
        &self.args
    }

    pub fn name(&self, x: ArgId) -> &str {
        &self.args[x]
    }

    pub fn index_of(&self, name: &str) -> Option<ArgId> {
        self.arg_to_idx.get(name).copied()
    }

    /// Arguments attacked by `x`.
    pub fn attacks(&self, x: ArgId) -> &[ArgId] {
        &self.att[x]
    }

    /// Arguments attacking `x`.
    pub fn attackers(&self, x: ArgId) -> &[ArgId] {
        &self.att_r[x]
    }

    pub fn attack_count(&self) -> usize {
        self.att.iter().map(Vec::len).sum()
    }

    /// All arcs `(attacker, target)` ordered by attacker then target.
    pub fn arcs(&self) -> impl Iterator<Item = (ArgId, ArgId)> + '_ {
        self.att.iter().enumerate().flat_map(|(x, ys)| ys.iter().map(move |&y| (x, y)))
    }

    pub fn has_attack(&self, x: ArgId, y: ArgId) -> bool {
        self.att[x].binary_search(&y).is_ok()
    }

    pub fn names<'a>(&'a self, ext: impl IntoIterator<Item = &'a ArgId>) -> Vec<&'a str> {
        ext.into_iter().map(|&x| self.name(x)).collect()
    }

    fn check(&self, x: ArgId) -> Result<()> {
        if x < self.len() {
            Ok(())
        } else {
            Err(Error::UnknownArgument(format!("#{x}")))
        }
    }
}

/// `ext ∪ {x | some member of ext attacks x}`.
pub fn range_of(af: &ArgumentationFramework, ext: &Extension) -> Result<Extension> {
    let mut out = ext.clone();
    for &x in ext {
        af.check(x)?;
        out.extend(af.attacks(x).iter().copied());
    }
    Ok(out)
}

#[derive(Default)]
struct AfBuilder {
    af: ArgumentationFramework,
    seen: HashSet<(ArgId, ArgId)>,
}

impl AfBuilder {
    fn argument(&mut self, id: String) -> ArgId {
        if let Some(&x) = self.af.arg_to_idx.get(&id) {
            return x;
        }
        let x = self.af.args.len();
        self.af.arg_to_idx.insert(id.clone(), x);
        self.af.args.push(id);
        self.af.att.push(Vec::new());
        self.af.att_r.push(Vec::new());
        x
    }

    fn attack(&mut self, x: ArgId, y: ArgId) {
        let n = self.af.args.len();
        assert!(x < n && y < n, "attack ({x},{y}) out of range");
        if self.seen.insert((x, y)) {
            self.af.att[x].push(y);
            self.af.att_r[y].push(x);
        }
    }

    fn finish(mut self) -> ArgumentationFramework {
        for v in self.af.att.iter_mut().chain(self.af.att_r.iter_mut()) {
            v.sort_unstable();
        }
        self.af
    }
}

fn decode(text: &[u8]) -> Result<&str, ParseError> {
    std::str::from_utf8(text).map_err(|e| {
        let line = text[..e.valid_up_to()].iter().filter(|&&b| b == b'\n').count() + 1;
        ParseError::new(line, ParseErrorKind::InvalidUtf8)
    })
}

/// Trivial graph format: one argument per line, a `#` line, then `x y`
/// attack lines. Blank lines are skipped.
pub fn parse_tgf(text: &[u8]) -> Result<ArgumentationFramework, ParseError> {
    let text = decode(text)?;
    let mut b = AfBuilder::default();
    let mut in_attacks = false;
    for (k, raw) in text.lines().enumerate() {
        let line_no = k + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let err = |kind| ParseError::new(line_no, kind);
        if !in_attacks {
            if line == "#" {
                in_attacks = true;
                continue;
            }
            let mut toks = line.split_whitespace();
            let id = toks.next().ok_or_else(|| err(ParseErrorKind::EmptyArgument))?;
            if toks.next().is_some() {
                return Err(err(ParseErrorKind::TrailingTokens));
            }
            b.argument(id.to_string());
        } else {
            let toks: Vec<&str> = line.split_whitespace().collect();
            let [x, y] = toks.as_slice() else {
                return Err(err(ParseErrorKind::MalformedAttack));
            };
            let resolve = |id: &str| {
                b.af.index_of(id).ok_or_else(|| err(ParseErrorKind::UndeclaredArgument(id.to_string())))
            };
            let (x, y) = (resolve(x)?, resolve(y)?);
            b.attack(x, y);
        }
    }
    if !in_attacks {
        let line = text.lines().count().max(1);
        return Err(ParseError::new(line, ParseErrorKind::MissingSeparator));
    }
    Ok(b.finish())
}

fn is_apx_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Splits `name(a1, ..., an).` into its predicate and trimmed arguments.
fn split_fact(line: &str) -> Option<(&str, Vec<&str>)> {
    let body = line.strip_suffix('.')?.trim_end();
    let body = body.strip_suffix(')')?;
    let (name, args) = body.split_once('(')?;
    Some((name.trim(), args.split(',').map(str::trim).collect()))
}

/// Aspartix format: `arg(x).` and `att(x,y).` facts, one per line; lines
/// starting with `%` are comments. Attacks may precede the declaration of
/// their endpoints.
pub fn parse_apx(text: &[u8]) -> Result<ArgumentationFramework, ParseError> {
    let text = decode(text)?;
    let mut b = AfBuilder::default();
    let mut pending: Vec<(usize, &str, &str)> = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line_no = k + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('%') {
            continue;
        }
        let malformed = || ParseError::new(line_no, ParseErrorKind::MalformedFact(line.to_string()));
        let (name, fields) = split_fact(line).ok_or_else(malformed)?;
        for f in &fields {
            if !is_apx_identifier(f) {
                return Err(ParseError::new(line_no, ParseErrorKind::InvalidIdentifier(f.to_string())));
            }
        }
        match (name, fields.as_slice()) {
            ("arg", [x]) => {
                b.argument(x.to_string());
            }
            ("att", [x, y]) => pending.push((line_no, x, y)),
            _ => return Err(malformed()),
        }
    }
    for (line_no, x, y) in pending {
        let resolve = |id: &str| {
            b.af.index_of(id)
                .ok_or_else(|| ParseError::new(line_no, ParseErrorKind::UndeclaredArgument(id.to_string())))
        };
        let (x, y) = (resolve(x)?, resolve(y)?);
        b.attack(x, y);
    }
    Ok(b.finish())
}

pub fn render_tgf(af: &ArgumentationFramework) -> String {
    let mut out = String::new();
    for a in af.args() {
        writeln!(out, "{a}").unwrap();
    }
    out.push_str("#\n");
    for (x, y) in af.arcs() {
        writeln!(out, "{} {}", af.name(x), af.name(y)).unwrap();
    }
    out
}

pub fn render_apx(af: &ArgumentationFramework) -> String {
    let mut out = String::new();
    for a in af.args() {
        writeln!(out, "arg({a}).").unwrap();
    }
    for (x, y) in af.arcs() {
        writeln!(out, "att({},{}).", af.name(x), af.name(y)).unwrap();
    }
    out
}
