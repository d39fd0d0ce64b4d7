//! Finite left braces stored as explicit tables, and the solutions they
//! produce.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::exec::{self, Strategy};
use crate::report::VerificationReport;
use crate::solution::FiniteSolution;

/// Largest order accepted by [`enumerate_braces`].
pub const MAX_BRACE_ORDER: usize = 4;

#[derive(Clone, Debug, Serialize, Deserialize)]
struct BraceTables {
    n: usize,
    add: Vec<Vec<usize>>,
    circle: Vec<Vec<usize>>,
}

/// A set `{0..n-1}` with an addition table and a circle table, both with
/// identity `0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "BraceTables", into = "BraceTables")]
pub struct LeftBrace {
    n: usize,
    add: Vec<Vec<usize>>,
    circle: Vec<Vec<usize>>,
}

impl TryFrom<BraceTables> for LeftBrace {
    type Error = Error;
    fn try_from(t: BraceTables) -> Result<Self> {
        LeftBrace::new(t.n, t.add, t.circle)
    }
}

impl From<LeftBrace> for BraceTables {
    fn from(b: LeftBrace) -> Self {
        BraceTables {
            n: b.n,
            add: b.add,
            circle: b.circle,
        }
    }
}

fn check_shape(name: &str, n: usize, table: &[Vec<usize>]) -> Result<()> {
    if table.len() != n {
        return Err(Error::Malformed(format!("{name} has {} rows, expected {n}", table.len())));
    }
    for (i, row) in table.iter().enumerate() {
        if row.len() != n {
            return Err(Error::Malformed(format!(
                "{name} row {i} has {} entries, expected {n}",
                row.len()
            )));
        }
        if let Some(v) = row.iter().find(|&&v| v >= n) {
            return Err(Error::Malformed(format!("{name} row {i} has entry {v} outside 0..{n}")));
        }
    }
    Ok(())
}

impl LeftBrace {
    /// Checks shape and range only; the axioms are checked by
    /// [`validate_brace`].
    pub fn new(n: usize, add: Vec<Vec<usize>>, circle: Vec<Vec<usize>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Malformed("brace order must be positive".into()));
        }
        check_shape("add", n, &add)?;
        check_shape("circle", n, &circle)?;
        Ok(LeftBrace { n, add, circle })
    }

    /// The brace on ℤ/n with `a ∘ b = a + b`.
    pub fn trivial(n: usize) -> Result<Self> {
        let table: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        LeftBrace::new(n, table.clone(), table)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a][b]
    }

    pub fn circle(&self, a: usize, b: usize) -> usize {
        self.circle[a][b]
    }

    pub fn add_table(&self) -> &[Vec<usize>] {
        &self.add
    }

    pub fn circle_table(&self) -> &[Vec<usize>] {
        &self.circle
    }

    fn neg(&self, a: usize) -> Option<usize> {
        (0..self.n).find(|&b| self.add[a][b] == 0)
    }

    fn circle_inverse(&self, a: usize) -> Option<usize> {
        (0..self.n).find(|&b| self.circle[a][b] == 0)
    }

    /// `a − b`, read from the addition table.
    pub fn sub(&self, a: usize, b: usize) -> Option<usize> {
        self.neg(b).map(|nb| self.add[a][nb])
    }

    pub fn is_trivial(&self) -> bool {
        self.add == self.circle
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("tables serialize")
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Malformed(e.to_string()))
    }

    /// First 16 hex digits of the SHA-256 of the compact JSON form.
    pub fn canonical_hash(&self) -> String {
        hex::encode(Sha256::digest(self.to_json_string().as_bytes()))[..16].to_string()
    }
}

/// First failure of the group axioms for `table` with identity `0`.
fn group_witness(table: &[Vec<usize>], abelian: bool) -> Option<Vec<usize>> {
    let n = table.len();
    if let Some(a) = (0..n).find(|&a| table[0][a] != a || table[a][0] != a) {
        return Some(vec![a]);
    }
    if let Some(a) = (0..n).find(|&a| !(0..n).any(|b| table[a][b] == 0 && table[b][a] == 0)) {
        return Some(vec![a]);
    }
    if abelian {
        for a in 0..n {
            if let Some(b) = (0..n).find(|&b| table[a][b] != table[b][a]) {
                return Some(vec![a, b]);
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if table[table[a][b]][c] != table[a][table[b][c]] {
                    return Some(vec![a, b, c]);
                }
            }
        }
    }
    None
}

/// First `(a, b, c)` violating `a∘(b+c) + a = a∘b + a∘c`, the
/// subtraction-free form of `a·(b+c) = a·b + a·c`.
fn distributive_witness(b: &LeftBrace) -> Option<Vec<usize>> {
    let n = b.n;
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let lhs = b.add(b.circle(x, b.add(y, z)), x);
                let rhs = b.add(b.circle(x, y), b.circle(x, z));
                if lhs != rhs {
                    return Some(vec![x, y, z]);
                }
            }
        }
    }
    None
}

/// Checks `abelian-group`, `circle-group` and `distributive`.
pub fn validate_brace(b: &LeftBrace) -> VerificationReport {
    let mut report = VerificationReport::new(b.canonical_hash());
    report.time("abelian-group", || group_witness(&b.add, true));
    report.time("circle-group", || group_witness(&b.circle, false));
    report.time("distributive", || distributive_witness(b));
    report
}

/// The solution `σ_x(y) = x∘y − x`, `τ_y(x) = t∘x − t` with `t` the
/// ∘-inverse of `σ_x(y)`.
pub fn solution_from_brace(b: &LeftBrace) -> Result<FiniteSolution> {
    let report = validate_brace(b);
    if let Some(fail) = report.failures().next() {
        return Err(Error::Invalid(format!(
            "brace fails {} at {:?}",
            fail.name, fail.witness
        )));
    }
    let lambda = |a: usize, c: usize| b.sub(b.circle(a, c), a).expect("additive inverses exist");
    let inv = |a: usize| b.circle_inverse(a).expect("circle inverses exist");
    FiniteSolution::from_fns(b.n, lambda, |y, x| lambda(inv(lambda(x, y)), x))
}

/// Every brace of order `n` (raw tables, not up to isomorphism), sorted.
pub fn enumerate_braces(n: usize) -> Result<Vec<LeftBrace>> {
    enumerate_braces_with(n, Strategy::default())
}

pub fn enumerate_braces_with(n: usize, strategy: Strategy) -> Result<Vec<LeftBrace>> {
    if n == 0 {
        return Err(Error::Malformed("brace order must be positive".into()));
    }
    if n > MAX_BRACE_ORDER {
        return Err(Error::ResourceLimit(format!(
            "brace enumeration of order {n} exceeds the limit {MAX_BRACE_ORDER}"
        )));
    }
    Ok(search_braces(n, strategy))
}

/// Unbounded brace search. Practical up to order 6 or so.
pub(crate) fn search_braces(n: usize, strategy: Strategy) -> Vec<LeftBrace> {
    let additive = group_tables(n, true);
    let circles = group_tables(n, false);
    exec::flat_map(strategy, &additive, |add| {
        circles
            .iter()
            .map(|circle| LeftBrace {
                n,
                add: add.clone(),
                circle: circle.clone(),
            })
            .filter(|b| distributive_witness(b).is_none())
            .collect()
    })
}

/// All group tables on `{0..n-1}` with identity `0`, in lexicographic order.
fn group_tables(n: usize, abelian: bool) -> Vec<Vec<Vec<usize>>> {
    let mut table = vec![vec![usize::MAX; n]; n];
    for a in 0..n {
        table[0][a] = a;
        table[a][0] = a;
    }
    let cells: Vec<(usize, usize)> = (1..n)
        .flat_map(|a| (1..n).map(move |b| (a, b)))
        .filter(|&(a, b)| !abelian || a <= b)
        .collect();
    let mut out = Vec::new();
    fill(&mut table, &cells, 0, abelian, &mut out);
    out
}

fn fill(table: &mut Vec<Vec<usize>>, cells: &[(usize, usize)], k: usize, abelian: bool, out: &mut Vec<Vec<Vec<usize>>>) {
    let n = table.len();
    if k == cells.len() {
        if group_witness(table, abelian).is_none() {
            out.push(table.clone());
        }
        return;
    }
    let (a, b) = cells[k];
    for v in 0..n {
        let row_ok = (0..n).all(|j| table[a][j] != v);
        let col_ok = (0..n).all(|i| table[i][b] != v);
        let mirror_ok = !abelian || a == b || ((0..n).all(|j| table[b][j] != v) && (0..n).all(|i| table[i][a] != v));
        if !(row_ok && col_ok && mirror_ok) {
            continue;
        }
        table[a][b] = v;
        if abelian {
            table[b][a] = v;
        }
        fill(table, cells, k + 1, abelian, out);
        table[a][b] = usize::MAX;
        if abelian {
            table[b][a] = usize::MAX;
        }
    }
}
