//! Coproduct twists, the cocycle condition, `(n+1)`-leg twists and the
//! factorization of the monodromy matrix `T₀,₁…N = r₀N ⋯ r₀₁`.
//!
//! Leg labels are 0-based. A multi-index such as `ℱ₁₂…N₀` is the operator
//! `ℱ₀₁…N` with its `k`-th tensor slot placed on the `k`-th listed leg.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{basis_size, embed, unit_tensor_sum, RingMatrix};
use crate::report::VerificationReport;
use crate::solution::{c1_holds, c2_holds, linearize, FiniteSolution};
use crate::twist::{twist_alt, twist_closed_form};

/// Largest basis (`𝒩^{legs}`) any multi-leg construction will build.
pub const MAX_BASIS: usize = 1_000_000;

/// Which of the two admissible twist families to build: `ℱ`, built from `σ`,
/// or `𝒢`, built from `τ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Flavor {
    F,
    G,
}

impl Flavor {
    pub const BOTH: [Flavor; 2] = [Flavor::F, Flavor::G];
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flavor::F => "F",
            Flavor::G => "G",
        })
    }
}

impl FromStr for Flavor {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "F" | "f" => Ok(Flavor::F),
            "G" | "g" => Ok(Flavor::G),
            other => Err(Error::Malformed(format!("unknown flavor {other:?}"))),
        }
    }
}

/// Refuses leg spaces with more than [`MAX_BASIS`] basis states.
pub fn check_budget(n: usize, legs: usize) -> Result<usize> {
    let size = basis_size(n, legs)?;
    if size > MAX_BASIS {
        return Err(Error::ResourceLimit(format!(
            "{n}^{legs} = {size} basis states exceeds {MAX_BASIS}"
        )));
    }
    Ok(size)
}

/// The 2-site twist of the given flavor.
pub fn base_twist(sol: &FiniteSolution, flavor: Flavor) -> RingMatrix {
    match flavor {
        Flavor::F => twist_closed_form(sol),
        Flavor::G => twist_alt(sol),
    }
}

fn triples(n: usize) -> impl Iterator<Item = (usize, usize, usize)> + Clone {
    (0..n).flat_map(move |e| (0..n).flat_map(move |x| (0..n).map(move |y| (e, x, y))))
}

/// `(f₀,₁₂, f₀₁,₂)` summed over the triples allowed by the flavor's
/// constraint (`C₁` for `ℱ`, `C₂` for `𝒢`).
pub fn coproduct_twists(sol: &FiniteSolution, flavor: Flavor) -> (RingMatrix, RingMatrix) {
    coproduct_twists_filtered(sol, flavor, true)
}

/// As [`coproduct_twists`], optionally without the constraint filter.
pub fn coproduct_twists_filtered(sol: &FiniteSolution, flavor: Flavor, filter: bool) -> (RingMatrix, RingMatrix) {
    let n = sol.size();
    let s = |a, b| sol.sigma(a, b);
    let t = |a, b| sol.tau(a, b);
    let keep = |e, x, y| {
        !filter
            || match flavor {
                Flavor::F => c1_holds(sol, e, x, y),
                Flavor::G => c2_holds(sol, e, x, y),
            }
    };
    let terms = triples(n).filter(|&(e, x, y)| keep(e, x, y));
    match flavor {
        Flavor::F => {
            let a = unit_tensor_sum(
                n,
                3,
                terms.clone().map(|(e, x, y)| [(s(e, x), s(e, x)), (e, t(x, e)), (s(x, y), y)]),
            );
            let b = unit_tensor_sum(
                n,
                3,
                terms.map(|(e, x, y)| [(s(e, x), s(e, x)), (t(x, e), t(x, e)), (s(e, s(x, y)), y)]),
            );
            (a, b)
        }
        Flavor::G => {
            let a = unit_tensor_sum(
                n,
                3,
                terms
                    .clone()
                    .map(|(e, x, y)| [(t(y, t(x, e)), e), (s(x, y), s(x, y)), (t(y, x), t(y, x))]),
            );
            let b = unit_tensor_sum(
                n,
                3,
                terms.map(|(e, x, y)| [(t(x, e), e), (y, s(x, y)), (t(y, x), t(y, x))]),
            );
            (a, b)
        }
    }
}

/// The closed forms of the 3-leg twist: two equivalent forms for `ℱ₀₁₂` and
/// one for `𝒢₀₁₂`.
pub fn three_twist_closed_forms(sol: &FiniteSolution, flavor: Flavor) -> Vec<RingMatrix> {
    let n = sol.size();
    let s = |a, b| sol.sigma(a, b);
    let t = |a, b| sol.tau(a, b);
    match flavor {
        Flavor::F => {
            let terms = triples(n).filter(|&(e, x, y)| c1_holds(sol, e, x, y));
            vec![
                unit_tensor_sum(
                    n,
                    3,
                    terms
                        .clone()
                        .map(|(e, x, y)| [(s(e, x), s(e, x)), (e, t(x, e)), (s(e, s(x, y)), y)]),
                ),
                unit_tensor_sum(n, 3, terms.map(|(e, x, y)| [(e, e), (s(e, x), x), (s(e, s(x, y)), y)])),
            ]
        }
        Flavor::G => {
            let terms = triples(n).filter(|&(e, x, y)| c2_holds(sol, e, x, y));
            vec![unit_tensor_sum(
                n,
                3,
                terms.map(|(e, x, y)| [(t(y, t(x, e)), e), (y, s(x, y)), (t(y, x), t(y, x))]),
            )]
        }
    }
}

fn witness(a: &RingMatrix, b: &RingMatrix) -> Option<Vec<usize>> {
    a.first_difference(b).map(|(r, c)| vec![r, c])
}

/// Checks that the coproduct twists commute with `ř` on the legs they
/// coproduct over, and the `r`-forms obtained by conjugating with flips.
pub fn verify_intertwining(sol: &FiniteSolution, flavor: Flavor) -> Result<VerificationReport> {
    let n = sol.size();
    let (f0_12, f01_2) = coproduct_twists(sol, flavor);
    let rc = linearize(sol, true);
    let r = linearize(sol, false);
    let rc01 = embed(&rc, &[0, 1], 3, n)?;
    let rc12 = embed(&rc, &[1, 2], 3, n)?;
    let r01 = embed(&r, &[0, 1], 3, n)?;
    let r02 = embed(&r, &[0, 2], 3, n)?;
    let f10_2 = embed(&f01_2, &[1, 0, 2], 3, n)?;
    let f1_02 = embed(&f0_12, &[1, 0, 2], 3, n)?;
    let f1_20 = embed(&f0_12, &[1, 2, 0], 3, n)?;
    let mut report = VerificationReport::new(sol.canonical_hash());
    report.record_eq("rcheck01-commutes-01,2", &(&rc01 * &f01_2), &(&f01_2 * &rc01));
    report.record_eq("rcheck12-commutes-0,12", &(&rc12 * &f0_12), &(&f0_12 * &rc12));
    report.record_eq("r01-intertwines-10,2", &(&f10_2 * &r01), &(&r01 * &f01_2));
    report.record_eq("r02-intertwines-1,20", &(&f1_20 * &r02), &(&r02 * &f1_02));
    Ok(report)
}

/// `f₀₁f₀₁,₂ = f₁₂f₀,₁₂`, returning the common 3-leg twist.
///
/// A mismatch of the two products is an admissibility failure; a mismatch
/// with the closed forms is reported as an internal failure.
pub fn cocycle_three(sol: &FiniteSolution, flavor: Flavor) -> Result<RingMatrix> {
    let n = sol.size();
    let base = base_twist(sol, flavor);
    let (f0_12, f01_2) = coproduct_twists(sol, flavor);
    let left = &embed(&base, &[0, 1], 3, n)? * &f01_2;
    let right = &embed(&base, &[1, 2], 3, n)? * &f0_12;
    if let Some(w) = witness(&left, &right) {
        return Err(Error::Admissibility {
            identity: format!("cocycle-{flavor}"),
            witness: w,
        });
    }
    for (k, closed) in three_twist_closed_forms(sol, flavor).iter().enumerate() {
        if let Some(w) = witness(&left, closed) {
            return Err(Error::Internal(format!(
                "3-leg {flavor} twist differs from closed form {k} at {w:?}"
            )));
        }
    }
    Ok(left)
}

/// Report form of [`cocycle_three`] plus the vacuity of the constraint filter.
pub fn verify_cocycle(sol: &FiniteSolution, flavor: Flavor) -> Result<VerificationReport> {
    let n = sol.size();
    let base = base_twist(sol, flavor);
    let (f0_12, f01_2) = coproduct_twists(sol, flavor);
    let left = &embed(&base, &[0, 1], 3, n)? * &f01_2;
    let right = &embed(&base, &[1, 2], 3, n)? * &f0_12;
    let mut report = VerificationReport::new(sol.canonical_hash());
    report.record_eq("cocycle", &left, &right);
    for (k, closed) in three_twist_closed_forms(sol, flavor).iter().enumerate() {
        report.record_eq(format!("closed-form-{k}"), &left, closed);
    }
    let (u0_12, u01_2) = coproduct_twists_filtered(sol, flavor, false);
    report.record(
        "filter-vacuous",
        witness(&f0_12, &u0_12).or_else(|| witness(&f01_2, &u01_2)),
    );
    Ok(report)
}

/// A twist with its coproduct members and `(n+1)`-leg extension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistFamily {
    pub flavor: Flavor,
    /// Set size `𝒩`.
    pub size: usize,
    /// Number of legs `n + 1` of the extended members.
    pub legs: usize,
    pub base: RingMatrix,
    pub f_0_12: RingMatrix,
    pub f_01_2: RingMatrix,
    /// `f₀₁₂`, the common value of the cocycle products.
    pub f_012: RingMatrix,
    /// `f₀₁…ₙ`.
    pub full: RingMatrix,
    /// `f₀,₁…ₙ`.
    pub split_first: RingMatrix,
    /// `f₀₁…ₙ₋₁,ₙ`.
    pub split_last: RingMatrix,
}

impl TwistFamily {
    /// `f₁₂…ₙ₀`: the full twist with leg 0 moved last.
    pub fn moved_last(&self) -> RingMatrix {
        embed(&self.full, &cycle_labels(self.legs), self.legs, self.size).expect("legs fit")
    }
}

/// `[1, 2, …, legs−1, 0]`.
pub fn cycle_labels(legs: usize) -> Vec<usize> {
    (1..legs).chain([0]).collect()
}

fn reverse_legs(m: &RingMatrix, legs: usize, n: usize) -> RingMatrix {
    let labels: Vec<usize> = (0..legs).rev().collect();
    embed(m, &labels, legs, n).expect("legs fit")
}

/// `ℱ₀₁…ₘ₋₁,ₘ = Σ e_{x₁,x₁} ⊗ … ⊗ e_{xₘ,xₘ} ⊗ e_{X,xₘ₊₁}` with
/// `X = σ_{x₁}(σ_{x₂}(…σ_{xₘ}(xₘ₊₁)))`.
fn f_split_last(sol: &FiniteSolution, m: usize) -> RingMatrix {
    let n = sol.size();
    let legs = m + 1;
    let count = n.pow(legs as u32);
    unit_tensor_sum(
        n,
        legs,
        (0..count).map(|i| {
            let xs = crate::matrix::digits(i, n, legs);
            let big_x = xs[..m].iter().rev().fold(xs[m], |acc, &x| sol.sigma(x, acc));
            let mut term: Vec<(usize, usize)> = xs[..m].iter().map(|&x| (x, x)).collect();
            term.push((big_x, xs[m]));
            term
        }),
    )
}

/// `ℱ₀,₁…ₘ = Σ e_{σ_{x₁}(y₁),σ_{x₁}(y₁)} ⊗ e_{x₁,τ_{y₁}(x₁)} ⊗ … ⊗ e_{xₘ,τ_{yₘ}(xₘ)}`
/// over free `x₁…xₘ, yₘ`, with `y_{k−1} = σ_{x_k}(y_k)`.
fn f_split_first(sol: &FiniteSolution, m: usize) -> RingMatrix {
    let n = sol.size();
    let legs = m + 1;
    let count = n.pow(legs as u32);
    unit_tensor_sum(
        n,
        legs,
        (0..count).map(|i| {
            let d = crate::matrix::digits(i, n, legs);
            let xs = &d[..m];
            let mut ys = vec![0; m];
            ys[m - 1] = d[m];
            for k in (1..m).rev() {
                ys[k - 1] = sol.sigma(xs[k], ys[k]);
            }
            let head = sol.sigma(xs[0], ys[0]);
            let mut term = vec![(head, head)];
            term.extend((0..m).map(|k| (xs[k], sol.tau(ys[k], xs[k]))));
            term
        }),
    )
}

/// `ℱ₀₁…ₙ = Σ e_{x₁,x₁} ⊗ e_{σ_{x₁}(x₂),x₂} ⊗ … ⊗ e_{X,xₙ₊₁}`.
fn f_closed(sol: &FiniteSolution, n_legs_minus_one: usize) -> RingMatrix {
    let n = sol.size();
    let legs = n_legs_minus_one + 1;
    let count = n.pow(legs as u32);
    unit_tensor_sum(
        n,
        legs,
        (0..count).map(|i| {
            let xs = crate::matrix::digits(i, n, legs);
            (0..legs)
                .map(|k| (xs[..k].iter().rev().fold(xs[k], |acc, &x| sol.sigma(x, acc)), xs[k]))
                .collect::<Vec<_>>()
        }),
    )
}

/// The `ℱ`-flavor recursions and closed form for `n + 1` legs, returning
/// `(full, split_first, split_last)`.
fn f_family(sol: &FiniteSolution, n: usize) -> Result<(RingMatrix, RingMatrix, RingMatrix)> {
    let size = sol.size();
    let legs = n + 1;
    let dim = check_budget(size, legs)?;
    let mut left = RingMatrix::identity(dim);
    for m in 1..=n {
        let labels: Vec<usize> = (0..=m).collect();
        left = &left * &embed(&f_split_last(sol, m), &labels, legs, size)?;
    }
    let mut right = RingMatrix::identity(dim);
    for k in (0..n).rev() {
        let labels: Vec<usize> = (k..=n).collect();
        right = &right * &embed(&f_split_first(sol, n - k), &labels, legs, size)?;
    }
    if let Some(w) = witness(&left, &right) {
        return Err(Error::Admissibility {
            identity: "recursion-left-right".into(),
            witness: w,
        });
    }
    if let Some(w) = witness(&left, &f_closed(sol, n)) {
        return Err(Error::Admissibility {
            identity: "recursion-closed-form".into(),
            witness: w,
        });
    }
    Ok((left, f_split_first(sol, n), f_split_last(sol, n)))
}

/// Builds the `(n+1)`-leg twist by both orders of the generalized cocycle
/// recursion, checks they agree with each other and with the closed form.
///
/// The `𝒢` family is the leg-reversal of the `ℱ` family of the mirrored
/// solution (`σ ↔ τ`).
pub fn n_twist(sol: &FiniteSolution, n: usize, flavor: Flavor) -> Result<TwistFamily> {
    if n == 0 {
        return Err(Error::Malformed("n-twist needs n ≥ 1".into()));
    }
    let size = sol.size();
    let legs = n + 1;
    let (f0_12, f01_2) = coproduct_twists(sol, flavor);
    let f_012 = cocycle_three(sol, flavor)?;
    let (full, split_first, split_last) = match flavor {
        Flavor::F => f_family(sol, n)?,
        Flavor::G => {
            let (full, first, last) = f_family(&sol.mirror(), n)?;
            (
                reverse_legs(&full, legs, size),
                reverse_legs(&last, legs, size),
                reverse_legs(&first, legs, size),
            )
        }
    };
    Ok(TwistFamily {
        flavor,
        size,
        legs,
        base: base_twist(sol, flavor),
        f_0_12: f0_12,
        f_01_2: f01_2,
        f_012,
        full,
        split_first,
        split_last,
    })
}

/// `T₀,₁…N = r₀N ⋯ r₀₂ r₀₁` on `N + 1` legs. For `N = 2` the product is
/// also compared with its closed form.
pub fn monodromy(sol: &FiniteSolution, big_n: usize) -> Result<RingMatrix> {
    if big_n == 0 {
        return Err(Error::Malformed("monodromy needs N ≥ 1".into()));
    }
    let size = sol.size();
    let legs = big_n + 1;
    let dim = check_budget(size, legs)?;
    let r = linearize(sol, false);
    let mut t = RingMatrix::identity(dim);
    for m in (1..=big_n).rev() {
        t = &t * &embed(&r, &[0, m], legs, size)?;
    }
    if big_n == 2 {
        if let Some(w) = witness(&t, &monodromy_three_closed_form(sol)) {
            return Err(Error::Internal(format!("monodromy differs from its closed form at {w:?}")));
        }
    }
    Ok(t)
}

/// `Σ e_{y,σ_η(σ_x(y))} ⊗ e_{η,τ_{σ_x(y)}(η)} ⊗ e_{x,τ_y(x)}`.
pub fn monodromy_three_closed_form(sol: &FiniteSolution) -> RingMatrix {
    let n = sol.size();
    let s = |a, b| sol.sigma(a, b);
    let t = |a, b| sol.tau(a, b);
    unit_tensor_sum(
        n,
        3,
        triples(n).map(|(e, x, y)| [(y, s(e, s(x, y))), (e, t(s(x, y), e)), (x, t(y, x))]),
    )
}

/// `T₀,₁…N = Σ e_{y_N,σ_{x₁}(y₁)} ⊗ e_{x₁,τ_{y₁}(x₁)} ⊗ … ⊗ e_{x_N,τ_{y_N}(x_N)}`
/// with `y_{k−1} = σ_{x_k}(y_k)`.
pub fn monodromy_closed_form(sol: &FiniteSolution, big_n: usize) -> RingMatrix {
    let n = sol.size();
    let legs = big_n + 1;
    let count = n.pow(legs as u32);
    unit_tensor_sum(
        n,
        legs,
        (0..count).map(|i| {
            let d = crate::matrix::digits(i, n, legs);
            let xs = &d[..big_n];
            let mut ys = vec![0; big_n];
            ys[big_n - 1] = d[big_n];
            for k in (1..big_n).rev() {
                ys[k - 1] = sol.sigma(xs[k], ys[k]);
            }
            let mut term = vec![(ys[big_n - 1], sol.sigma(xs[0], ys[0]))];
            term.extend((0..big_n).map(|k| (xs[k], sol.tau(ys[k], xs[k]))));
            term
        }),
    )
}

/// Data-level form of the three-leg factorization: for every `(η, x, y)` the
/// monodromy sends `(σ_η(σ_x(y)), τ_{σ_x(y)}(η), τ_y(x))` to `(y, η, x)`, and
/// the substitution is a bijection of X³.
pub fn substitution_chain_witness(sol: &FiniteSolution) -> Option<Vec<usize>> {
    let n = sol.size();
    let r = |a: usize, b: usize| (sol.tau(b, a), sol.sigma(a, b));
    let mut hit = vec![false; n * n * n];
    for (e, x, y) in triples(n) {
        let w = sol.sigma(x, y);
        let (eh, xh, yh) = (sol.sigma(e, w), sol.tau(w, e), sol.tau(y, x));
        let idx = (eh * n + xh) * n + yh;
        if std::mem::replace(&mut hit[idx], true) {
            return Some(vec![e, x, y]);
        }
        let (l0, l1) = r(eh, xh);
        let (l0, l2) = r(l0, yh);
        if (l0, l1, l2) != (y, e, x) {
            return Some(vec![e, x, y]);
        }
    }
    None
}

/// Checks `f₁₂…N₀⁻¹ f₀₁…N = T₀,₁…N`, the closed form of `T`, and for `N = 2`
/// the substitution chain.
pub fn verify_factorization(sol: &FiniteSolution, big_n: usize, flavor: Flavor) -> Result<VerificationReport> {
    let family = n_twist(sol, big_n, flavor)?;
    let t = monodromy(sol, big_n)?;
    let mut report = VerificationReport::new(sol.canonical_hash());
    let lhs = &family.moved_last().inverse()? * &family.full;
    report.record_eq("factorization", &lhs, &t);
    report.record_eq("monodromy-closed-form", &t, &monodromy_closed_form(sol, big_n));
    if big_n == 2 {
        report.record("substitution-chain", substitution_chain_witness(sol));
    }
    Ok(report)
}
