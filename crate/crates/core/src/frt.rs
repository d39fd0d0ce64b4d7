//! The quantum algebra generated by `L_{z,w}(λ)`, checked in the evaluation
//! representation `L(λ) = r + λ⁻¹𝒫`.

use crate::error::{Error, Result};
use crate::matrix::{embed, flip, unit_tensor_sum, RingMatrix};
use crate::report::VerificationReport;
use crate::scalar::{Indeterminate, Poly};
use crate::solution::{linearize, FiniteSolution};

/// Blocks of `L(λ) = Σ_{z,w} e_{z,w} ⊗ (L⁽⁰⁾_{z,w} + λ⁻¹ L⁽¹⁾_{z,w})`; all
/// higher orders vanish.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvaluationRep {
    pub size: usize,
    /// `L⁽⁰⁾_{z,w}` at index `z·𝒩 + w`: block `(z, w)` of `r`.
    pub l0: Vec<RingMatrix>,
    /// `L⁽¹⁾_{z,w}`: block `(z, w)` of `𝒫`, i.e. `e_{w,z}`.
    pub l1: Vec<RingMatrix>,
    zero: RingMatrix,
}

impl EvaluationRep {
    /// Reads the blocks without any consistency check.
    pub fn assemble(sol: &FiniteSolution) -> EvaluationRep {
        let n = sol.size();
        let r = linearize(sol, false);
        let p = flip(n);
        let blocks = |m: &RingMatrix| {
            (0..n)
                .flat_map(|z| (0..n).map(move |w| (z, w)))
                .map(|(z, w)| m.block(z, w, n))
                .collect()
        };
        EvaluationRep {
            size: n,
            l0: blocks(&r),
            l1: blocks(&p),
            zero: RingMatrix::zeros(n, n),
        }
    }

    /// `L⁽ᵏ⁾_{z,w}`.
    pub fn generator(&self, order: usize, z: usize, w: usize) -> &RingMatrix {
        let idx = z * self.size + w;
        match order {
            0 => &self.l0[idx],
            1 => &self.l1[idx],
            _ => &self.zero,
        }
    }

    /// `λ·L(λ) = Σ e_{z,w} ⊗ (λ L⁽⁰⁾_{z,w} + L⁽¹⁾_{z,w})`, which equals `λr + 𝒫`.
    pub fn scaled_operator(&self) -> RingMatrix {
        let n = self.size;
        let l = Poly::var(Indeterminate::Lambda);
        let mut out = RingMatrix::zeros(n * n, n * n);
        for z in 0..n {
            for w in 0..n {
                let block = &self.generator(0, z, w).scale(&l) + self.generator(1, z, w);
                let e = unit_tensor_sum(n, 1, [[(z, w)]]);
                out = &out + &crate::matrix::kron(&e, &block);
            }
        }
        out
    }
}

/// Assembles the representation and checks it satisfies the RTT relation.
pub fn build_evaluation_rep(sol: &FiniteSolution) -> Result<EvaluationRep> {
    let rep = EvaluationRep::assemble(sol);
    if let Some(w) = rtt_witness(sol, &rep)? {
        return Err(Error::Internal(format!(
            "evaluation representation fails RTT at {w:?}"
        )));
    }
    Ok(rep)
}

/// `Ř₁₂(λ₁−λ₂) M₀₂(λ₁) M₁₂(λ₂) = M₀₂(λ₂) M₁₂(λ₁) Ř₁₂(λ₁−λ₂)` with
/// `M(λ) = λL(λ)`, auxiliary legs 0 and 1 and quantum leg 2.
fn rtt_witness(sol: &FiniteSolution, rep: &EvaluationRep) -> Result<Option<Vec<usize>>> {
    let n = sol.size();
    let l1 = Poly::var(Indeterminate::Lambda1);
    let l2 = Poly::var(Indeterminate::Lambda2);
    let d = &l1 - &l2;
    let m = rep.scaled_operator();
    let m_at = |arg: &Poly, legs: &[usize]| embed(&m.substitute(Indeterminate::Lambda, arg), legs, 3, n);
    let rc = linearize(sol, true);
    let id = RingMatrix::identity(n * n);
    let check = embed(&(&rc.scale(&d) + &id), &[0, 1], 3, n)?;
    let lhs = &(&check * &m_at(&l1, &[0, 2])?) * &m_at(&l2, &[1, 2])?;
    let rhs = &(&m_at(&l2, &[0, 2])? * &m_at(&l1, &[1, 2])?) * &check;
    Ok(lhs.first_difference(&rhs).map(|(r, c)| vec![r, c]))
}

pub fn verify_rtt(sol: &FiniteSolution) -> Result<VerificationReport> {
    let rep = EvaluationRep::assemble(sol);
    let mut report = VerificationReport::new(sol.canonical_hash());
    report.record(
        "reassembly",
        rep.scaled_operator()
            .first_difference(&crate::baxter::baxterize(sol).r_form)
            .map(|(r, c)| vec![r, c]),
    );
    report.record("rtt", rtt_witness(sol, &rep)?);
    Ok(report)
}

/// The defining relations between `L⁽ⁿ⁾` and `L⁽ᵐ⁾` for `n, m ∈ {0, 1}`,
/// witnessed by the first failing `(z, w, ẑ, ŵ, n, m)`.
pub fn exchange_witness(sol: &FiniteSolution) -> Option<Vec<usize>> {
    let rep = EvaluationRep::assemble(sol);
    let n = sol.size();
    let g = |k: usize, z: usize, w: usize| rep.generator(k, z, w);
    for z in 0..n {
        for w in 0..n {
            for zh in 0..n {
                for wh in 0..n {
                    let sw = sol.sigma(w, wh);
                    let tw = sol.tau(wh, w);
                    let sz = sol.sigma(z, zh);
                    let tz = sol.tau(zh, z);
                    for a in 0..2 {
                        for b in 0..2 {
                            let lhs = &(g(a, z, w) * g(b, zh, wh)) - &(g(b, z, w) * g(a, zh, wh));
                            let rhs = &(&(&(g(b, z, sw) * g(a + 1, zh, tw)) - &(g(b + 1, z, sw) * g(a, zh, tw)))
                                - &(g(a + 1, sz, w) * g(b, tz, wh)))
                                + &(g(a, sz, w) * g(b + 1, tz, wh));
                            if lhs != rhs {
                                return Some(vec![z, w, zh, wh, a, b]);
                            }
                        }
                    }
                }
            }
        }
    }
    None
}

pub fn verify_exchange(sol: &FiniteSolution) -> VerificationReport {
    let mut report = VerificationReport::new(sol.canonical_hash());
    report.time("exchange", || exchange_witness(sol));
    report
}

/// `T₁,₂₃ = Σ e_{τ_y(x),σ_η(x)} ⊗ e_{η,τ_x(η)} ⊗ e_{σ_x(y),y}`.
pub fn coproduct_closed_form(sol: &FiniteSolution) -> RingMatrix {
    let n = sol.size();
    let terms = (0..n).flat_map(|e| (0..n).flat_map(move |x| (0..n).map(move |y| (e, x, y))));
    unit_tensor_sum(
        n,
        3,
        terms.map(|(e, x, y)| {
            [
                (sol.tau(y, x), sol.sigma(e, x)),
                (e, sol.tau(x, e)),
                (sol.sigma(x, y), y),
            ]
        }),
    )
}

/// `T₁,₂₃ = r₁₃ r₁₂` against its closed form, and each block
/// `Δ(𝓛_{a,b})` of it (on the two quantum legs) commuting with `ř`.
pub fn coproduct_blocks(sol: &FiniteSolution) -> Result<VerificationReport> {
    let n = sol.size();
    let r = linearize(sol, false);
    let t = &embed(&r, &[0, 2], 3, n)? * &embed(&r, &[0, 1], 3, n)?;
    let mut report = VerificationReport::new(sol.canonical_hash());
    report.record_eq("coproduct-closed-form", &t, &coproduct_closed_form(sol));
    let rc = linearize(sol, true);
    let mut bad = None;
    'outer: for a in 0..n {
        for b in 0..n {
            let block = t.block(a, b, n * n);
            if &block * &rc != &rc * &block {
                bad = Some(vec![a, b]);
                break 'outer;
            }
        }
    }
    report.record("blocks-commute", bad);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solution::enumerate_solutions;

    #[test]
    fn flip_generators() {
        // for the flip r = 𝒫ř = I, so the order-0 blocks are δ_{zw}·I
        let t2 = FiniteSolution::flip(2).unwrap();
        let rep = build_evaluation_rep(&t2).unwrap();
        for z in 0..2 {
            for w in 0..2 {
                let e_wz = unit_tensor_sum(2, 1, [[(w, z)]]);
                let diag = if z == w { RingMatrix::identity(2) } else { RingMatrix::zeros(2, 2) };
                assert_eq!(rep.generator(0, z, w), &diag);
                assert_eq!(rep.generator(1, z, w), &e_wz);
                assert!(rep.generator(2, z, w).is_zero());
            }
        }
    }

    #[test]
    fn small_solutions_satisfy_the_algebra() {
        for n in 1..=3 {
            for sol in enumerate_solutions(n).unwrap() {
                assert!(build_evaluation_rep(&sol).is_ok());
                assert!(verify_rtt(&sol).unwrap().all_passed());
                assert!(verify_exchange(&sol).all_passed());
                assert!(coproduct_blocks(&sol).unwrap().all_passed());
            }
        }
    }

    #[test]
    fn broken_table_violates_the_relations() {
        // L2 with σ_0 reset to the identity: non-degenerate, not a solution
        let bad = FiniteSolution::new(2, vec![vec![0, 1], vec![1, 0]], vec![vec![1, 0], vec![1, 0]]).unwrap();
        assert!(exchange_witness(&bad).is_some());
        assert!(!verify_rtt(&bad).unwrap().all_passed());
        assert!(matches!(build_evaluation_rep(&bad), Err(Error::Internal(_))));
    }
}
