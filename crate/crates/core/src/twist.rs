//! Two-site Drinfeld twists conjugating the flip `𝒫` into `ř`.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::{embed, flip, unit_tensor_sum, RingMatrix};
use crate::report::VerificationReport;
use crate::scalar::{rational, Poly, Rational};
use crate::solution::{linearize, FiniteSolution};

/// An eigenvector `v` of `𝒫` matched with an eigenvector `v̂` of `ř` for the
/// same eigenvalue. Vectors are unnormalized integer vectors on `X⊗X`;
/// `weight` is the normalization applied to `v̂ vᵀ` (`1` for fixed points,
/// `1/2` for two-element orbits).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenPair {
    pub v: Vec<i64>,
    pub v_hat: Vec<i64>,
    pub eigenvalue: i64,
    pub weight: Rational,
}

/// All `𝒩²` pairs: the `+1` eigenspace first (fixed points, then symmetric
/// combinations), then the antisymmetric `−1` pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenPairing {
    pub n: usize,
    pub pairs: Vec<EigenPair>,
}

fn basis(n: usize, terms: &[(usize, usize, i64)]) -> Vec<i64> {
    let mut v = vec![0; n * n];
    for &(a, b, c) in terms {
        v[a * n + b] += c;
    }
    v
}

/// Pairs the eigenvectors of `𝒫` with those of `ř`.
///
/// Fixed points `(x, y)` of `ř` pair with `ê_x⊗ê_x`. Every other `ř`-orbit
/// `{(x, y), (u, v)}` with `u = σ_x(y)`, `v = τ_y(x)` (smallest element as
/// representative) is matched with the `𝒫`-orbit `{(x, u), (u, x)}`.
pub fn build_eigen_pairing(sol: &FiniteSolution) -> Result<EigenPairing> {
    let n = sol.size();
    let mut fixed = Vec::new();
    let mut sym = Vec::new();
    let mut anti = Vec::new();
    let mut seen = vec![false; n * n];
    for x in 0..n {
        for y in 0..n {
            if seen[x * n + y] {
                continue;
            }
            let (u, v) = sol.apply(x, y);
            seen[x * n + y] = true;
            seen[u * n + v] = true;
            if (u, v) == (x, y) {
                fixed.push(EigenPair {
                    v: basis(n, &[(x, x, 1)]),
                    v_hat: basis(n, &[(x, y, 1)]),
                    eigenvalue: 1,
                    weight: Rational::one(),
                });
                continue;
            }
            if u == x {
                return Err(Error::Internal(format!(
                    "σ_{x}({y}) = {x} but ({x},{y}) is not fixed; solution is not involutive"
                )));
            }
            let half = rational(1, 2);
            sym.push(EigenPair {
                v: basis(n, &[(x, u, 1), (u, x, 1)]),
                v_hat: basis(n, &[(x, y, 1), (u, v, 1)]),
                eigenvalue: 1,
                weight: half.clone(),
            });
            anti.push(EigenPair {
                v: basis(n, &[(x, u, 1), (u, x, -1)]),
                v_hat: basis(n, &[(x, y, 1), (u, v, -1)]),
                eigenvalue: -1,
                weight: half,
            });
        }
    }
    if fixed.len() != n {
        return Err(Error::Internal(format!(
            "ř has {} fixed points, expected {n}",
            fixed.len()
        )));
    }
    let pairs = fixed.into_iter().chain(sym).chain(anti).collect();
    Ok(EigenPairing { n, pairs })
}

impl EigenPairing {
    /// Checks `𝒫v = λv` and `řv̂ = λv̂` for every pair, returning the index of
    /// the first pair that fails.
    pub fn eigen_witness(&self, sol: &FiniteSolution) -> Option<usize> {
        let p = flip(self.n);
        let r = linearize(sol, true);
        self.pairs.iter().position(|pair| {
            let lambda = pair.eigenvalue;
            apply(&p, &pair.v) != scale(&pair.v, lambda) || apply(&r, &pair.v_hat) != scale(&pair.v_hat, lambda)
        })
    }
}

fn apply(m: &RingMatrix, v: &[i64]) -> Vec<i64> {
    (0..m.nrows())
        .map(|r| {
            m.row(r)
                .iter()
                .map(|(c, e)| {
                    let k = e.as_rational().expect("zero-one matrix");
                    assert!(k.is_integer());
                    i64::try_from(k.to_integer()).expect("small entry") * v[*c]
                })
                .sum()
        })
        .collect()
}

fn scale(v: &[i64], k: i64) -> Vec<i64> {
    v.iter().map(|x| x * k).collect()
}

/// `ℱ⁻¹ = Σ_k w_k v̂_k v_kᵀ`, assembled from the eigenvector pairing.
pub fn twist_from_eigen(sol: &FiniteSolution) -> Result<RingMatrix> {
    let pairing = build_eigen_pairing(sol)?;
    let dim = sol.size() * sol.size();
    let mut entries = Vec::new();
    for pair in &pairing.pairs {
        for (i, &a) in pair.v_hat.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in pair.v.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                let c = &pair.weight * Rational::from_integer((a * b).into());
                if !c.is_zero() {
                    entries.push((i, j, Poly::constant(c)));
                }
            }
        }
    }
    Ok(RingMatrix::from_triplets(dim, dim, entries))
}

/// `ℱ = Σ_{x,y} e_{x,x} ⊗ e_{σ_x(y),y}`.
pub fn twist_closed_form(sol: &FiniteSolution) -> RingMatrix {
    let n = sol.size();
    unit_tensor_sum(
        n,
        2,
        (0..n).flat_map(|x| (0..n).map(move |y| [(x, x), (sol.sigma(x, y), y)])),
    )
}

/// `𝒢 = Σ_{x,y} e_{τ_y(x),x} ⊗ e_{y,y}`.
pub fn twist_alt(sol: &FiniteSolution) -> RingMatrix {
    let n = sol.size();
    unit_tensor_sum(
        n,
        2,
        (0..n).flat_map(|x| (0..n).map(move |y| [(sol.tau(y, x), x), (y, y)])),
    )
}

/// Checks `ř = f⁻¹𝒫f` (`similarity`) and `r = f₂₁⁻¹f₁₂` (`factorization`).
pub fn verify_similarity(sol: &FiniteSolution, f: &RingMatrix) -> Result<VerificationReport> {
    let n = sol.size();
    let p = flip(n);
    let f_inv = f.inverse()?;
    let f21 = embed(f, &[1, 0], 2, n)?;
    let mut report = VerificationReport::new(sol.canonical_hash());
    report.record_eq("similarity", &linearize(sol, true), &(&(&f_inv * &p) * f));
    report.record_eq("factorization", &linearize(sol, false), &(&f21.inverse()? * f));
    Ok(report)
}

/// The twist checks for one solution: eigen and closed-form constructions
/// agree, both twists factorize `r`, and `ℱ⁻¹ = ℱᵀ`.
pub fn verify_twists(sol: &FiniteSolution) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(sol.canonical_hash());
    let pairing = build_eigen_pairing(sol)?;
    report.record("eigenvectors", pairing.eigen_witness(sol).map(|k| vec![k]));
    let f = twist_closed_form(sol);
    let f_inv = twist_from_eigen(sol)?;
    report.record_eq("eigen-inverse", &(&f * &f_inv), &RingMatrix::identity(f.nrows()));
    report.record_eq("inverse-is-transpose", &f_inv, &f.transpose());
    let g = twist_alt(sol);
    report.absorb("F", verify_similarity(sol, &f)?);
    let n = sol.size();
    let g21 = embed(&g, &[1, 0], 2, n)?;
    report.record_eq("G/factorization", &linearize(sol, false), &(&g21.inverse()? * &g));
    Ok(report)
}

/// First `x` violating the fixed-point lemma: if `σ_x(y) = x` then
/// `τ_y(x) = y`.
pub fn fixed_point_witness(sol: &FiniteSolution) -> Option<(usize, usize)> {
    let n = sol.size();
    (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .find(|&(x, y)| sol.sigma(x, y) == x && sol.tau(y, x) != y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::kron;
    use crate::solution::enumerate_solutions;

    fn l2() -> FiniteSolution {
        FiniteSolution::from_fns(2, |_, y| 1 - y, |_, x| 1 - x).unwrap()
    }

    fn v2() -> RingMatrix {
        RingMatrix::permutation(&[1, 0])
    }

    #[test]
    fn flip_twists_are_trivial() {
        let t2 = FiniteSolution::flip(2).unwrap();
        let pairing = build_eigen_pairing(&t2).unwrap();
        assert!(pairing.pairs.iter().all(|p| p.v == p.v_hat));
        assert!(twist_from_eigen(&t2).unwrap().is_identity());
        assert!(twist_closed_form(&t2).is_identity());
        assert!(twist_alt(&t2).is_identity());
        assert!(verify_similarity(&t2, &RingMatrix::identity(4)).unwrap().all_passed());
    }

    #[test]
    fn l2_twists() {
        let sol = l2();
        let i2 = RingMatrix::identity(2);
        assert_eq!(twist_closed_form(&sol), kron(&i2, &v2()));
        assert_eq!(twist_from_eigen(&sol).unwrap(), kron(&i2, &v2()));
        assert_eq!(twist_alt(&sol), kron(&v2(), &i2));
        // fixed points of ř are (0,1) and (1,0), paired with (0,0) and (1,1)
        let pairing = build_eigen_pairing(&sol).unwrap();
        assert_eq!(pairing.pairs[0].v_hat, vec![0, 1, 0, 0]);
        assert_eq!(pairing.pairs[0].v, vec![1, 0, 0, 0]);
        assert_eq!(pairing.pairs[1].v_hat, vec![0, 0, 1, 0]);
        assert_eq!(pairing.pairs[1].v, vec![0, 0, 0, 1]);
        assert!(verify_similarity(&sol, &kron(&i2, &v2())).unwrap().all_passed());
        let bad = verify_similarity(&sol, &RingMatrix::identity(4)).unwrap();
        let c = bad.get("similarity").unwrap();
        assert!(!c.passed);
        assert_eq!(c.witness, vec![0, 0]);
    }

    #[test]
    fn eigen_counts_and_signs() {
        for n in 1..=3 {
            for sol in enumerate_solutions(n).unwrap() {
                let p = build_eigen_pairing(&sol).unwrap();
                assert_eq!(p.pairs.len(), n * n);
                let plus = p.pairs.iter().filter(|q| q.eigenvalue == 1).count();
                assert_eq!(plus, (n * n + n) / 2);
                assert_eq!(p.eigen_witness(&sol), None);
                assert_eq!(fixed_point_witness(&sol), None);
            }
        }
    }

    #[test]
    fn all_small_solutions_pass_twist_checks() {
        for n in 1..=3 {
            for sol in enumerate_solutions(n).unwrap() {
                let r = verify_twists(&sol).unwrap();
                assert!(r.all_passed(), "{}", r.to_text(false));
            }
        }
    }

    #[test]
    fn singular_twist_is_an_error() {
        let sol = l2();
        assert_eq!(verify_similarity(&sol, &RingMatrix::zeros(4, 4)), Err(Error::Singular));
    }
}
