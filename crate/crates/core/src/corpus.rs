//! The bundled solution corpus: every solution of size at most 3, the
//! solutions of braces of order at most 4, and the Lyubashenko solutions of
//! every permutation of at most 4 points.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::brace::{enumerate_braces_with, solution_from_brace, MAX_BRACE_ORDER};
use crate::error::{Error, Result};
use crate::exec::{self, Strategy};
use crate::lyubashenko::lyubashenko_solution;
use crate::perm;
use crate::solution::{enumerate_solutions_with, FiniteSolution};

pub const ENUMERATED_UP_TO: usize = 3;
pub const LYUBASHENKO_UP_TO: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub solution: FiniteSolution,
    /// `enumeration`, `brace:<hash>` or `lyubashenko:<cycles>`, sorted.
    pub sources: BTreeSet<String>,
}

impl CorpusEntry {
    pub fn hash(&self) -> String {
        self.solution.canonical_hash()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusCounts {
    pub total: usize,
    /// Distinct solutions per set size.
    pub by_size: BTreeMap<usize, usize>,
    /// Distinct solutions reached by each source kind.
    pub enumeration: usize,
    pub brace: usize,
    pub lyubashenko: usize,
    /// Braces enumerated, all orders together.
    pub braces: usize,
}

/// Counts the corpus must reproduce.
pub fn frozen_counts() -> CorpusCounts {
    CorpusCounts {
        total: 42,
        by_size: BTreeMap::from([(1, 1), (2, 2), (3, 12), (4, 27)]),
        enumeration: 15,
        brace: 7,
        lyubashenko: 33,
        braces: 13,
    }
}

/// Entries sorted by solution (size first), each appearing once.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Corpus {
    pub entries: Vec<CorpusEntry>,
    pub braces: usize,
}

pub fn build_corpus() -> Result<Corpus> {
    build_corpus_with(Strategy::default())
}

pub fn build_corpus_with(strategy: Strategy) -> Result<Corpus> {
    let mut found: BTreeMap<FiniteSolution, BTreeSet<String>> = BTreeMap::new();
    let mut add = |sol: FiniteSolution, source: String| {
        found.entry(sol).or_default().insert(source);
    };
    for n in 1..=ENUMERATED_UP_TO {
        for sol in enumerate_solutions_with(n, strategy)? {
            add(sol, "enumeration".into());
        }
    }
    let mut braces = 0;
    for n in 1..=MAX_BRACE_ORDER {
        let list = enumerate_braces_with(n, strategy)?;
        braces += list.len();
        let sols = exec::map(strategy, &list, |b| solution_from_brace(b).map(|s| (s, b.canonical_hash())));
        for item in sols {
            let (sol, hash) = item?;
            add(sol, format!("brace:{hash}"));
        }
    }
    for n in 1..=LYUBASHENKO_UP_TO {
        for p in perm::permutations(n) {
            add(lyubashenko_solution(&p)?, format!("lyubashenko:{}", perm::cycle_notation(&p)));
        }
    }
    let entries = found
        .into_iter()
        .map(|(solution, sources)| CorpusEntry { solution, sources })
        .collect();
    Ok(Corpus { entries, braces })
}

impl Corpus {
    pub fn solutions(&self) -> impl Iterator<Item = &FiniteSolution> {
        self.entries.iter().map(|e| &e.solution)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn of_size(&self, n: usize) -> impl Iterator<Item = &FiniteSolution> {
        self.solutions().filter(move |s| s.size() == n)
    }

    pub fn counts(&self) -> CorpusCounts {
        let from = |kind: &str| {
            self.entries
                .iter()
                .filter(|e| e.sources.iter().any(|s| s.split(':').next() == Some(kind)))
                .count()
        };
        let mut by_size = BTreeMap::new();
        for s in self.solutions() {
            *by_size.entry(s.size()).or_insert(0) += 1;
        }
        CorpusCounts {
            total: self.len(),
            by_size,
            enumeration: from("enumeration"),
            brace: from("brace"),
            lyubashenko: from("lyubashenko"),
            braces: self.braces,
        }
    }

    /// The manifest document: counts plus one record per entry.
    pub fn manifest(&self) -> String {
        let entries: Vec<_> = self
            .entries
            .iter()
            .map(|e| {
                serde_json::json!({
                    "hash": e.hash(),
                    "size": e.solution.size(),
                    "file": entry_file(e),
                    "sources": e.sources,
                })
            })
            .collect();
        let doc = serde_json::json!({ "counts": self.counts(), "entries": entries });
        serde_json::to_string_pretty(&doc).expect("manifest serializes") + "\n"
    }

    /// Relative path and contents of every file in the corpus directory.
    pub fn files(&self) -> Vec<(String, String)> {
        let mut out = vec![("manifest.json".to_string(), self.manifest())];
        out.extend(
            self.entries
                .iter()
                .map(|e| (entry_file(e), e.solution.to_json_string() + "\n")),
        );
        out
    }

    /// Writes the corpus under `dir`, replacing any previous `manifest.json`
    /// and `solutions/` there.
    pub fn write_to(&self, dir: &Path) -> Result<()> {
        let io = |e: std::io::Error| Error::Invalid(format!("{}: {e}", dir.display()));
        let sols = dir.join("solutions");
        if sols.exists() {
            fs::remove_dir_all(&sols).map_err(io)?;
        }
        fs::create_dir_all(&sols).map_err(io)?;
        for (name, body) in self.files() {
            fs::write(dir.join(name), body).map_err(io)?;
        }
        Ok(())
    }

    /// Files under `dir` that are missing or differ from this corpus.
    pub fn stale_files(&self, dir: &Path) -> Vec<String> {
        let mut stale: Vec<String> = self
            .files()
            .into_iter()
            .filter(|(name, body)| fs::read_to_string(dir.join(name)).ok().as_deref() != Some(body.as_str()))
            .map(|(name, _)| name)
            .collect();
        let expected: BTreeSet<String> = self.files().into_iter().map(|(n, _)| n).collect();
        if let Ok(listing) = fs::read_dir(dir.join("solutions")) {
            for f in listing.flatten() {
                let name = format!("solutions/{}", f.file_name().to_string_lossy());
                if !expected.contains(&name) {
                    stale.push(name);
                }
            }
        }
        stale.sort();
        stale
    }
}

fn entry_file(e: &CorpusEntry) -> String {
    format!("solutions/n{}-{}.json", e.solution.size(), e.hash())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_are_frozen() {
        let c = build_corpus().unwrap();
        assert_eq!(c.counts(), frozen_counts());
        assert_eq!(c.of_size(1).count(), 1);
        let two: Vec<_> = c.of_size(2).cloned().collect();
        let l2 = FiniteSolution::from_fns(2, |_, y| 1 - y, |_, x| 1 - x).unwrap();
        assert_eq!(two.len(), 2);
        assert!(two.contains(&FiniteSolution::flip(2).unwrap()));
        assert!(two.contains(&l2));
    }

    #[test]
    fn strategies_agree() {
        assert_eq!(
            build_corpus_with(Strategy::Sequential).unwrap(),
            build_corpus_with(Strategy::Parallel).unwrap()
        );
    }

    #[test]
    fn sources_are_tracked() {
        let c = build_corpus().unwrap();
        let t2 = c.entries.iter().find(|e| e.solution == FiniteSolution::flip(2).unwrap()).unwrap();
        assert!(t2.sources.contains("enumeration"));
        assert!(t2.sources.contains("lyubashenko:()"));
        assert!(t2.sources.iter().any(|s| s.starts_with("brace:")));
    }

    #[test]
    fn write_twice_is_identical() {
        let c = build_corpus().unwrap();
        let dir = tempfile::tempdir().unwrap();
        c.write_to(dir.path()).unwrap();
        let first: Vec<_> = c.files().iter().map(|(n, _)| fs::read(dir.path().join(n)).unwrap()).collect();
        assert!(c.stale_files(dir.path()).is_empty());
        fs::write(dir.path().join("solutions/extra.json"), "{}").unwrap();
        assert_eq!(c.stale_files(dir.path()), vec!["solutions/extra.json".to_string()]);
        c.write_to(dir.path()).unwrap();
        let second: Vec<_> = c.files().iter().map(|(n, _)| fs::read(dir.path().join(n)).unwrap()).collect();
        assert_eq!(first, second);
        assert!(c.stale_files(dir.path()).is_empty());
    }
}
