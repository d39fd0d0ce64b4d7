//! Finite set-theoretic solutions `ř(x, y) = (σ_x(y), τ_y(x))` on
//! `X = {0..n-1}`: validation, the two braid constraints, linearization and
//! exhaustive enumeration.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::exec::{self, Strategy};
use crate::matrix::{embed, RingMatrix};
use crate::perm;
use crate::report::VerificationReport;

/// Largest set size accepted by [`enumerate_solutions`].
pub const MAX_ENUMERATION_SIZE: usize = 4;

/// Serialized form: `{"n": .., "sigma": [[..]], "tau": [[..]]}` with
/// `sigma[x][y] = σ_x(y)` and `tau[y][x] = τ_y(x)`.
#[derive(Clone, Debug, Serialize, Deserialize)]
struct SolutionTables {
    n: usize,
    sigma: Vec<Vec<usize>>,
    tau: Vec<Vec<usize>>,
}

/// A non-degenerate pair of tables `(σ, τ)`.
///
/// Construction only enforces non-degeneracy (every row a permutation);
/// involutivity and the braid relation are checked by [`validate_solution`],
/// so invalid candidates can still be represented and examined.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "SolutionTables", into = "SolutionTables")]
pub struct FiniteSolution {
    n: usize,
    sigma: Vec<Vec<usize>>,
    tau: Vec<Vec<usize>>,
}

impl TryFrom<SolutionTables> for FiniteSolution {
    type Error = Error;
    fn try_from(t: SolutionTables) -> Result<Self> {
        FiniteSolution::new(t.n, t.sigma, t.tau)
    }
}

impl From<FiniteSolution> for SolutionTables {
    fn from(s: FiniteSolution) -> Self {
        SolutionTables {
            n: s.n,
            sigma: s.sigma,
            tau: s.tau,
        }
    }
}

fn check_table(name: &str, n: usize, table: &[Vec<usize>]) -> Result<()> {
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
        if !perm::is_permutation(row, n) {
            return Err(Error::Malformed(format!("{name} row {i} is not a permutation of 0..{n}")));
        }
    }
    Ok(())
}

impl FiniteSolution {
    pub fn new(n: usize, sigma: Vec<Vec<usize>>, tau: Vec<Vec<usize>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Malformed("set size must be positive".into()));
        }
        check_table("sigma", n, &sigma)?;
        check_table("tau", n, &tau)?;
        Ok(FiniteSolution { n, sigma, tau })
    }

    /// Builds a solution from closures `σ(x, y) = σ_x(y)` and `τ(y, x) = τ_y(x)`.
    pub fn from_fns<S, T>(n: usize, sigma: S, tau: T) -> Result<Self>
    where
        S: Fn(usize, usize) -> usize,
        T: Fn(usize, usize) -> usize,
    {
        let sigma = (0..n).map(|x| (0..n).map(|y| sigma(x, y)).collect()).collect();
        let tau = (0..n).map(|y| (0..n).map(|x| tau(y, x)).collect()).collect();
        FiniteSolution::new(n, sigma, tau)
    }

    /// The flip `ř(x, y) = (y, x)`, whose linearization is `𝒫`.
    pub fn flip(n: usize) -> Result<Self> {
        FiniteSolution::from_fns(n, |_, y| y, |_, x| x)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    /// `σ_x(y)`.
    pub fn sigma(&self, x: usize, y: usize) -> usize {
        self.sigma[x][y]
    }

    /// `τ_y(x)`.
    pub fn tau(&self, y: usize, x: usize) -> usize {
        self.tau[y][x]
    }

    pub fn sigma_table(&self) -> &[Vec<usize>] {
        &self.sigma
    }

    pub fn tau_table(&self) -> &[Vec<usize>] {
        &self.tau
    }

    /// The set map `ř(x, y) = (σ_x(y), τ_y(x))`.
    pub fn apply(&self, x: usize, y: usize) -> (usize, usize) {
        (self.sigma[x][y], self.tau[y][x])
    }

    /// `σ_x^{-1}(v)`.
    pub fn sigma_inv(&self, x: usize, v: usize) -> usize {
        self.sigma[x].iter().position(|&w| w == v).expect("rows are permutations")
    }

    /// The solution with the roles of `σ` and `τ` exchanged:
    /// `σ'_x(y) = τ_x(y)`, `τ'_y(x) = σ_y(x)`.
    pub fn mirror(&self) -> FiniteSolution {
        FiniteSolution {
            n: self.n,
            sigma: self.tau.clone(),
            tau: self.sigma.clone(),
        }
    }

    pub fn is_flip(&self) -> bool {
        (0..self.n).all(|x| (0..self.n).all(|y| self.apply(x, y) == (y, x)))
    }

    /// Compact single-line JSON form.
    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("tables serialize")
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Malformed(e.to_string()))
    }

    /// First 16 hex digits of the SHA-256 of the compact JSON form.
    pub fn canonical_hash(&self) -> String {
        let digest = Sha256::digest(self.to_json_string().as_bytes());
        hex::encode(digest)[..16].to_string()
    }
}

/// Triples `(η, x, y)` where one of the two braid constraints fails.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstraintReport {
    pub c1_violations: Vec<[usize; 3]>,
    pub c2_violations: Vec<[usize; 3]>,
}

impl ConstraintReport {
    pub fn is_empty(&self) -> bool {
        self.c1_violations.is_empty() && self.c2_violations.is_empty()
    }
}

/// `C₁(η, x, y)`: `σ_{σ_η(x)}(σ_{τ_x(η)}(y)) = σ_η(σ_x(y))`.
pub fn c1_holds(sol: &FiniteSolution, eta: usize, x: usize, y: usize) -> bool {
    let s = |a, b| sol.sigma(a, b);
    s(s(eta, x), s(sol.tau(x, eta), y)) == s(eta, s(x, y))
}

/// `C₂(η, x, y)`: `τ_{τ_y(x)}(τ_{σ_x(y)}(η)) = τ_y(τ_x(η))`.
pub fn c2_holds(sol: &FiniteSolution, eta: usize, x: usize, y: usize) -> bool {
    let t = |a, b| sol.tau(a, b);
    t(t(y, x), t(sol.sigma(x, y), eta)) == t(y, t(x, eta))
}

pub fn check_constraints(sol: &FiniteSolution) -> ConstraintReport {
    let n = sol.size();
    let mut report = ConstraintReport::default();
    for eta in 0..n {
        for x in 0..n {
            for y in 0..n {
                if !c1_holds(sol, eta, x, y) {
                    report.c1_violations.push([eta, x, y]);
                }
                if !c2_holds(sol, eta, x, y) {
                    report.c2_violations.push([eta, x, y]);
                }
            }
        }
    }
    report
}

/// First `(x, y)` with `ř(ř(x, y)) ≠ (x, y)`.
pub fn involutivity_witness(sol: &FiniteSolution) -> Option<(usize, usize)> {
    let n = sol.size();
    (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .find(|&(x, y)| {
            let (u, v) = sol.apply(x, y);
            sol.apply(u, v) != (x, y)
        })
}

/// First `(x, y, z)` where `ř₁₂ř₂₃ř₁₂` and `ř₂₃ř₁₂ř₂₃` disagree as maps on X³.
pub fn braid_witness(sol: &FiniteSolution) -> Option<(usize, usize, usize)> {
    let n = sol.size();
    let r12 = |(a, b, c): (usize, usize, usize)| {
        let (a, b) = sol.apply(a, b);
        (a, b, c)
    };
    let r23 = |(a, b, c): (usize, usize, usize)| {
        let (b, c) = sol.apply(b, c);
        (a, b, c)
    };
    (0..n)
        .flat_map(|x| (0..n).flat_map(move |y| (0..n).map(move |z| (x, y, z))))
        .find(|&t| r12(r23(r12(t))) != r23(r12(r23(t))))
}

/// Matrix form of the braid relation on three legs, as the first differing
/// `(row, col)`.
pub fn braid_matrix_witness(sol: &FiniteSolution) -> Option<(usize, usize)> {
    let n = sol.size();
    let r = linearize(sol, true);
    let r12 = embed(&r, &[0, 1], 3, n).expect("two legs");
    let r23 = embed(&r, &[1, 2], 3, n).expect("two legs");
    let lhs = &(&r12 * &r23) * &r12;
    let rhs = &(&r23 * &r12) * &r23;
    lhs.first_difference(&rhs)
}

/// Checks `non-degenerate`, `involutive` and `braid`; the braid check
/// requires both the map-level and the matrix-level relation.
pub fn validate_solution(sol: &FiniteSolution) -> VerificationReport {
    let n = sol.size();
    let mut report = VerificationReport::new(sol.canonical_hash());
    report.time("non-degenerate", || {
        let bad_sigma = (0..n).find(|&x| !perm::is_permutation(&sol.sigma[x], n));
        let bad_tau = (0..n).find(|&y| !perm::is_permutation(&sol.tau[y], n));
        match (bad_sigma, bad_tau) {
            (Some(x), _) => Some(vec![0, x]),
            (None, Some(y)) => Some(vec![1, y]),
            _ => None,
        }
    });
    report.time("involutive", || involutivity_witness(sol).map(|(x, y)| vec![x, y]));
    report.time("braid", || match braid_witness(sol) {
        Some((x, y, z)) => Some(vec![x, y, z]),
        None => braid_matrix_witness(sol).map(|(r, c)| vec![r, c]),
    });
    report
}

/// True if the solution is non-degenerate, involutive and satisfies the braid
/// relation (map level).
pub fn is_valid(sol: &FiniteSolution) -> bool {
    involutivity_witness(sol).is_none() && braid_witness(sol).is_none()
}

/// Linearization on `ℂX ⊗ ℂX`.
///
/// With `braid = true` returns `ř` acting as `ř(ê_x⊗ê_y) = ê_{σ_x(y)}⊗ê_{τ_y(x)}`;
/// otherwise `r = 𝒫ř`.
pub fn linearize(sol: &FiniteSolution, braid: bool) -> RingMatrix {
    let n = sol.size();
    RingMatrix::from_ones(
        n * n,
        n * n,
        (0..n).flat_map(|x| {
            (0..n).map(move |y| {
                let (u, v) = sol.apply(x, y);
                let row = if braid { u * n + v } else { v * n + u };
                (row, x * n + y)
            })
        }),
    )
}

/// Every valid solution of size `n`, in lexicographic `(σ, τ)` order.
pub fn enumerate_solutions(n: usize) -> Result<Vec<FiniteSolution>> {
    enumerate_solutions_with(n, Strategy::default())
}

pub fn enumerate_solutions_with(n: usize, strategy: Strategy) -> Result<Vec<FiniteSolution>> {
    if n == 0 {
        return Err(Error::Malformed("set size must be positive".into()));
    }
    if n > MAX_ENUMERATION_SIZE {
        return Err(Error::ResourceLimit(format!(
            "enumeration of size {n} exceeds the limit {MAX_ENUMERATION_SIZE}"
        )));
    }
    let perms = perm::permutations(n);
    let inverses: Vec<Vec<usize>> = perms.iter().map(|p| perm::inverse(p)).collect();
    // An involutive solution determines τ from σ: τ_y(x) = σ_{σ_x(y)}^{-1}(x).
    let chunks = exec::map_range(strategy, perms.len(), |first| {
        let mut found = Vec::new();
        let mut choice = vec![0usize; n];
        choice[0] = first;
        loop {
            if let Some(sol) = candidate(n, &perms, &inverses, &choice) {
                found.push(sol);
            }
            // odometer over rows 1..n
            let mut k = n;
            loop {
                if k == 1 {
                    return found;
                }
                k -= 1;
                choice[k] += 1;
                if choice[k] < perms.len() {
                    break;
                }
                choice[k] = 0;
            }
        }
    });
    Ok(chunks.into_iter().flatten().collect())
}

fn candidate(n: usize, perms: &[Vec<usize>], inverses: &[Vec<usize>], choice: &[usize]) -> Option<FiniteSolution> {
    let sigma: Vec<Vec<usize>> = choice.iter().map(|&c| perms[c].clone()).collect();
    let mut tau = vec![vec![0; n]; n];
    for x in 0..n {
        for y in 0..n {
            tau[y][x] = inverses[choice[sigma[x][y]]][x];
        }
    }
    if !tau.iter().all(|row| perm::is_permutation(row, n)) {
        return None;
    }
    let sol = FiniteSolution { n, sigma, tau };
    is_valid(&sol).then_some(sol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::flip;

    fn t2() -> FiniteSolution {
        FiniteSolution::flip(2).unwrap()
    }

    fn l2() -> FiniteSolution {
        FiniteSolution::from_fns(2, |_, y| 1 - y, |_, x| 1 - x).unwrap()
    }

    fn not_involutive() -> FiniteSolution {
        FiniteSolution::new(2, vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1], vec![0, 1]]).unwrap()
    }

    #[test]
    fn flip_and_l2_are_valid() {
        for sol in [t2(), l2()] {
            let r = validate_solution(&sol);
            assert!(r.all_passed(), "{}", r.to_text(false));
            assert_eq!(r.checks.len(), 3);
            assert!(check_constraints(&sol).is_empty());
        }
    }

    #[test]
    fn failed_involutivity_is_witnessed() {
        let sol = not_involutive();
        let r = validate_solution(&sol);
        let inv = r.get("involutive").unwrap();
        assert!(!inv.passed);
        // ř(0,0) = (1,0), ř(1,0) = (0,1)
        assert_eq!(inv.witness, vec![0, 0]);
        let c = check_constraints(&sol);
        assert!(!c.c1_violations.is_empty());
        assert_eq!(c.c1_violations[0], [0, 0, 0]);
    }

    #[test]
    fn malformed_tables_name_the_row() {
        let err = FiniteSolution::new(2, vec![vec![0, 1], vec![1, 1]], vec![vec![0, 1], vec![0, 1]]).unwrap_err();
        assert_eq!(err, Error::Malformed("sigma row 1 is not a permutation of 0..2".into()));
        let err = FiniteSolution::new(2, vec![vec![0, 1], vec![0, 1]], vec![vec![0, 2], vec![0, 1]]).unwrap_err();
        assert!(matches!(err, Error::Malformed(m) if m.contains("tau row 0")));
        assert!(FiniteSolution::new(2, vec![vec![0, 1]], vec![vec![0, 1], vec![0, 1]]).is_err());
        assert!(FiniteSolution::from_json_str("{\"n\":2,\"sigma\":[[0,1]]}").is_err());
    }

    #[test]
    fn linearizations() {
        assert_eq!(linearize(&t2(), true), flip(2));
        assert!(linearize(&t2(), false).is_identity());
        let r = linearize(&l2(), true);
        // (0,0)↦(1,1), (0,1)↦(0,1), (1,0)↦(1,0), (1,1)↦(0,0)
        assert_eq!(r, RingMatrix::permutation(&[3, 1, 2, 0]));
        assert!((&r * &r).is_identity());
        assert_eq!(&flip(2) * &r, linearize(&l2(), false));
    }

    #[test]
    fn json_round_trip_and_hash() {
        let sol = l2();
        let s = sol.to_json_string();
        assert_eq!(s, "{\"n\":2,\"sigma\":[[1,0],[1,0]],\"tau\":[[1,0],[1,0]]}");
        assert_eq!(FiniteSolution::from_json_str(&s).unwrap(), sol);
        assert_eq!(sol.canonical_hash().len(), 16);
        assert_ne!(sol.canonical_hash(), t2().canonical_hash());
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(enumerate_solutions(1).unwrap().len(), 1);
        assert_eq!(enumerate_solutions(2).unwrap(), vec![t2(), l2()]);
        assert!(matches!(enumerate_solutions(5), Err(Error::ResourceLimit(_))));
        let seq = enumerate_solutions_with(3, Strategy::Sequential).unwrap();
        let par = enumerate_solutions_with(3, Strategy::Parallel).unwrap();
        assert_eq!(seq, par);
        assert!(seq.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn mirror_of_valid_is_valid() {
        for sol in enumerate_solutions(3).unwrap() {
            assert!(is_valid(&sol.mirror()));
            assert_eq!(sol.mirror().mirror(), sol);
        }
    }
}
