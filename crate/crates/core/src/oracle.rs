//! Reference semantics by exhaustive subset enumeration.
//!
//! Definition-literal and exponential; shares nothing with the encodings or
//! the solver. Subsets are bitmasks over argument indices.

use std::collections::BTreeSet;

use crate::af::{ArgumentationFramework, Extension};
use crate::encoding::Semantics;
use crate::error::{Error, Result};

pub const MAX_ARGS: usize = 20;

/// Base properties the oracle can enumerate besides the semantics proper.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleKind {
    ConflictFree,
    Admissible,
    Semantics(Semantics),
}

impl From<Semantics> for OracleKind {
    fn from(s: Semantics) -> Self {
        OracleKind::Semantics(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleReport {
    pub kind: OracleKind,
    pub extensions: BTreeSet<Extension>,
}

struct Masks {
    n: usize,
    /// `attackers[x]`: arguments attacking `x`.
    attackers: Vec<u32>,
    /// `targets[x]`: arguments attacked by `x`.
    targets: Vec<u32>,
}

impl Masks {
    fn new(af: &ArgumentationFramework) -> Result<Self> {
        let n = af.len();
        if n > MAX_ARGS {
            return Err(Error::OracleTooLarge { limit: MAX_ARGS, actual: n });
        }
        let mut attackers = vec![0u32; n];
        let mut targets = vec![0u32; n];
        for (x, y) in (0..n).flat_map(|x| (0..n).map(move |y| (x, y))) {
            if af.has_attack(x, y) {
                targets[x] |= 1 << y;
                attackers[y] |= 1 << x;
            }
        }
        Ok(Masks { n, attackers, targets })
    }

    fn all(&self) -> u32 {
        (1u32 << self.n) - 1
    }

    fn members(&self, s: u32) -> impl Iterator<Item = usize> {
        (0..self.n).filter(move |&x| s & (1 << x) != 0)
    }

    /// Arguments attacked by some member of `s`.
    fn attacked_by(&self, s: u32) -> u32 {
        self.members(s).fold(0, |acc, x| acc | self.targets[x])
    }

    fn range(&self, s: u32) -> u32 {
        s | self.attacked_by(s)
    }

    fn conflict_free(&self, s: u32) -> bool {
        self.members(s).all(|x| self.attackers[x] & s == 0)
    }

    /// Arguments all of whose attackers are attacked by `s`.
    fn defended(&self, s: u32) -> u32 {
        let hit = self.attacked_by(s);
        (0..self.n)
            .filter(|&x| self.attackers[x] & !hit == 0)
            .fold(0, |acc, x| acc | 1 << x)
    }

    fn admissible(&self, s: u32) -> bool {
        self.conflict_free(s) && s & !self.defended(s) == 0
    }

    fn complete(&self, s: u32) -> bool {
        self.conflict_free(s) && self.defended(s) == s
    }

    fn stable(&self, s: u32) -> bool {
        self.conflict_free(s) && self.range(s) == self.all()
    }

    fn subsets(&self) -> impl Iterator<Item = u32> {
        0..=self.all()
    }
}

fn subset(a: u32, b: u32) -> bool {
    a & !b == 0
}

/// Elements of `sets` whose key is not strictly contained in another's.
fn maximal_by(sets: &[u32], key: impl Fn(u32) -> u32) -> Vec<u32> {
    sets.iter()
        .copied()
        .filter(|&s| !sets.iter().any(|&t| key(s) != key(t) && subset(key(s), key(t))))
        .collect()
}

fn minimal(sets: &[u32]) -> Vec<u32> {
    sets.iter().copied().filter(|&s| !sets.iter().any(|&t| t != s && subset(t, s))).collect()
}

fn to_extension(m: &Masks, s: u32) -> Extension {
    m.members(s).collect()
}

fn masks_for(m: &Masks, kind: OracleKind) -> Vec<u32> {
    let filter = |p: &dyn Fn(u32) -> bool| m.subsets().filter(|&s| p(s)).collect::<Vec<_>>();
    match kind {
        OracleKind::ConflictFree => filter(&|s| m.conflict_free(s)),
        OracleKind::Admissible => filter(&|s| m.admissible(s)),
        OracleKind::Semantics(sem) => match sem {
            Semantics::Complete => filter(&|s| m.complete(s)),
            Semantics::Stable => filter(&|s| m.stable(s)),
            Semantics::Grounded => minimal(&filter(&|s| m.complete(s))),
            Semantics::Preferred => maximal_by(&filter(&|s| m.complete(s)), |s| s),
            Semantics::SemiStable => maximal_by(&filter(&|s| m.complete(s)), |s| m.range(s)),
            Semantics::Stage => maximal_by(&filter(&|s| m.conflict_free(s)), |s| m.range(s)),
            Semantics::Ideal => {
                let adm = filter(&|s| m.admissible(s));
                // Admissible sets no admissible set attacks.
                let unattacked: Vec<u32> = adm
                    .iter()
                    .copied()
                    .filter(|&e| adm.iter().all(|&other| m.attacked_by(other) & e == 0))
                    .collect();
                maximal_by(&unattacked, |s| s)
            }
        },
    }
}

pub fn brute_report(af: &ArgumentationFramework, kind: OracleKind) -> Result<OracleReport> {
    let m = Masks::new(af)?;
    let extensions = masks_for(&m, kind).into_iter().map(|s| to_extension(&m, s)).collect();
    Ok(OracleReport { kind, extensions })
}

pub fn brute_extensions(af: &ArgumentationFramework, sem: Semantics) -> Result<BTreeSet<Extension>> {
    Ok(brute_report(af, sem.into())?.extensions)
}

pub fn is_extension(af: &ArgumentationFramework, sem: Semantics, ext: &Extension) -> Result<bool> {
    Ok(brute_extensions(af, sem)?.contains(ext))
}

/// `ext` plus everything it attacks, straight from the definition.
pub fn brute_range(af: &ArgumentationFramework, ext: &Extension) -> Result<Extension> {
    let m = Masks::new(af)?;
    let s = ext.iter().fold(0u32, |acc, &x| acc | 1 << x);
    Ok(to_extension(&m, m.range(s)))
}

/// Union of every admissible extension.
pub fn brute_admissible_union(af: &ArgumentationFramework) -> Result<Extension> {
    Ok(brute_report(af, OracleKind::Admissible)?.extensions.into_iter().flatten().collect())
}
