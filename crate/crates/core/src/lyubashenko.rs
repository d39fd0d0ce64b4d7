//! Lyubashenko solutions `σ_x = σ`, `τ_y = τ` with `σ = τ⁻¹`, their
//! Reshetikhin-type twists `ℱ = I⊗𝒱`, `𝒢 = 𝒱⁻¹⊗I`, and the counit and
//! coproduct observations that hold for them.

use crate::error::{Error, Result};
use crate::matrix::{embed, flip, kron, kron_all, RingMatrix};
use crate::multi_twist::{check_budget, cycle_labels, monodromy, n_twist, Flavor};
use crate::perm;
use crate::report::VerificationReport;
use crate::solution::{linearize, FiniteSolution};
use crate::twist::{twist_alt, twist_closed_form};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LyubashenkoData {
    pub size: usize,
    pub tau_perm: Vec<usize>,
    pub sigma_perm: Vec<usize>,
    /// `𝒱 = Σ_x e_{x,τ(x)}`.
    pub v: RingMatrix,
    /// `𝒱⁻¹ = Σ_x e_{τ(x),x}`.
    pub v_inv: RingMatrix,
}

impl LyubashenkoData {
    pub fn new(tau_perm: Vec<usize>) -> Result<Self> {
        let n = tau_perm.len();
        if n == 0 || !perm::is_permutation(&tau_perm, n) {
            return Err(Error::Malformed(format!("{tau_perm:?} is not a permutation of 0..{n}")));
        }
        let sigma_perm = perm::inverse(&tau_perm);
        Ok(LyubashenkoData {
            size: n,
            v: RingMatrix::permutation(&sigma_perm),
            v_inv: RingMatrix::permutation(&tau_perm),
            tau_perm,
            sigma_perm,
        })
    }

    pub fn from_cycles(cycles: &str, n: usize) -> Result<Self> {
        LyubashenkoData::new(permutation_from_cycles(cycles, n)?)
    }

    pub fn solution(&self) -> FiniteSolution {
        let (s, t) = (&self.sigma_perm, &self.tau_perm);
        FiniteSolution::from_fns(self.size, |_, y| s[y], |_, x| t[x]).expect("constant permutation rows")
    }

    /// Order of `τ`.
    pub fn order(&self) -> usize {
        perm::order(&self.tau_perm)
    }

    /// `𝒱ᵖ` for any integer `p`.
    pub fn v_pow(&self, p: i64) -> RingMatrix {
        let d = self.order() as i64;
        let k = p.rem_euclid(d) as u32;
        self.v.pow(k).expect("square")
    }

    /// `𝒱ᵖ` on leg `k` of `legs`.
    fn v_on(&self, leg: usize, p: i64, legs: usize) -> Result<RingMatrix> {
        embed(&self.v_pow(p), &[leg], legs, self.size)
    }

    fn v_product(&self, legs: usize, power: impl Fn(usize) -> i64) -> Result<RingMatrix> {
        let mats = (0..legs).map(|k| self.v_pow(power(k))).collect::<Vec<_>>();
        let _ = check_budget(self.size, legs)?;
        Ok(kron_all(&mats))
    }
}

/// Parses cycle notation such as `(0 1 2)(3 4)` into the image table of a
/// permutation of `0..n`. The empty string and `()` give the identity.
pub fn permutation_from_cycles(text: &str, n: usize) -> Result<Vec<usize>> {
    let mut image: Vec<usize> = (0..n).collect();
    let mut used = vec![false; n];
    let mut rest = text.trim();
    while !rest.is_empty() {
        let inner_end = rest
            .strip_prefix('(')
            .and_then(|r| r.find(')'))
            .ok_or_else(|| Error::Malformed(format!("bad cycle notation {text:?}")))?;
        let inner = &rest[1..=inner_end];
        rest = rest[inner_end + 2..].trim_start();
        let elems = inner
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .map(|s| {
                s.parse::<usize>()
                    .map_err(|_| Error::Malformed(format!("bad cycle element {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        for &e in &elems {
            if e >= n {
                return Err(Error::Malformed(format!("cycle element {e} outside 0..{n}")));
            }
            if std::mem::replace(&mut used[e], true) {
                return Err(Error::Malformed(format!("element {e} appears twice in {text:?}")));
            }
        }
        for (k, &e) in elems.iter().enumerate() {
            image[e] = elems[(k + 1) % elems.len()];
        }
    }
    Ok(image)
}

/// `ř = Σ e_{x,σ(y)} ⊗ e_{y,τ(x)}`, i.e. `σ_x(y) = σ(y)`, `τ_y(x) = τ(x)`.
pub fn lyubashenko_solution(tau_perm: &[usize]) -> Result<FiniteSolution> {
    Ok(LyubashenkoData::new(tau_perm.to_vec())?.solution())
}

/// `ř = (𝒱⊗I)𝒫(𝒱⁻¹⊗I) = (I⊗𝒱⁻¹)𝒫(I⊗𝒱)`.
pub fn verify_conjugation(data: &LyubashenkoData) -> VerificationReport {
    let sol = data.solution();
    let id = RingMatrix::identity(data.size);
    let p = flip(data.size);
    let rc = linearize(&sol, true);
    let mut report = VerificationReport::new(sol.canonical_hash());
    report.record_eq("conjugation-left", &rc, &(&(&kron(&data.v, &id) * &p) * &kron(&data.v_inv, &id)));
    report.record_eq("conjugation-right", &rc, &(&(&kron(&id, &data.v_inv) * &p) * &kron(&id, &data.v)));
    report
}

/// The `(n+1)`-leg twist in product form, `ℱ₀₁…ₙ = Π 𝒱ₖᵏ` or
/// `𝒢₀₁…ₙ = Π 𝒱ₖ^{−(n−k)}`, cross-checked against the generic recursion
/// and against the split forms
/// `ℱ₀,₁…ₙ = 𝒱₁⋯𝒱ₙ`, `ℱ₁…ₙ,₀ = 𝒱₀ⁿ`, `𝒢₀,₁…ₙ = 𝒱₀⁻ⁿ`, `𝒢₁…ₙ,₀ = 𝒱₁⁻¹⋯𝒱ₙ⁻¹`.
pub fn lyu_n_twist(data: &LyubashenkoData, n: usize, flavor: Flavor) -> Result<RingMatrix> {
    let legs = n + 1;
    check_budget(data.size, legs)?;
    let ni = n as i64;
    let (full, first, last_moved) = match flavor {
        Flavor::F => (
            data.v_product(legs, |k| k as i64)?,
            data.v_product(legs, |k| (k > 0) as i64)?,
            data.v_product(legs, |k| if k == 0 { ni } else { 0 })?,
        ),
        Flavor::G => (
            data.v_product(legs, |k| -(ni - k as i64))?,
            data.v_product(legs, |k| if k == 0 { -ni } else { 0 })?,
            data.v_product(legs, |k| -((k > 0) as i64))?,
        ),
    };
    let family = n_twist(&data.solution(), n, flavor)?;
    let moved = embed(&family.split_last, &cycle_labels(legs), legs, data.size)?;
    for (what, got, want) in [
        ("full twist", &full, &family.full),
        ("split-first twist", &first, &family.split_first),
        ("moved split-last twist", &last_moved, &moved),
    ] {
        if let Some((r, c)) = got.first_difference(want) {
            return Err(Error::Internal(format!(
                "{flavor} {what} product form differs from the recursion at ({r},{c})"
            )));
        }
    }
    Ok(full)
}

/// `r₀ₘ = 𝒱₀⁻¹𝒱ₘ` for every site and `ℱ₁₂…N₀⁻¹ℱ₀₁…N = T₀,₁…N` with the
/// product-form twist.
pub fn verify_lyu_factorization(data: &LyubashenkoData, big_n: usize) -> Result<VerificationReport> {
    let sol = data.solution();
    let legs = big_n + 1;
    let n = data.size;
    let r = linearize(&sol, false);
    let mut report = VerificationReport::new(sol.canonical_hash());
    let mut lemma = None;
    let mut t = RingMatrix::identity(check_budget(n, legs)?);
    for m in (1..=big_n).rev() {
        let r0m = embed(&r, &[0, m], legs, n)?;
        let product = &data.v_on(0, -1, legs)? * &data.v_on(m, 1, legs)?;
        if lemma.is_none() {
            lemma = r0m.first_difference(&product).map(|(a, b)| vec![m, a, b]);
        }
        t = &t * &product;
    }
    report.record("r0m-lemma", lemma);
    report.record_eq("monodromy", &t, &monodromy(&sol, big_n)?);
    let f = lyu_n_twist(data, big_n, Flavor::F)?;
    let f_moved = embed(&f, &cycle_labels(legs), legs, n)?;
    report.record_eq("factorization", &(&f_moved.inverse()? * &f), &t);
    Ok(report)
}

/// A named element of the algebra generated by `I`, `𝒱` and the matrix units.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tag {
    Unit,
    VPow(i64),
    MatrixUnit(usize, usize),
}

impl Tag {
    pub fn counit(self) -> i64 {
        match self {
            Tag::Unit | Tag::VPow(_) => 1,
            Tag::MatrixUnit(..) => 0,
        }
    }

    pub fn antipode(self) -> Tag {
        match self {
            Tag::VPow(p) => Tag::VPow(-p),
            t => t,
        }
    }
}

/// Which of the two twisted coproducts on matrix units.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coproduct {
    /// `Δ₁(e_{x,y}) = e_{x,y}⊗I + I⊗e_{τx,τy}`.
    First,
    /// `Δ₂(e_{x,y}) = e_{σx,σy}⊗I + I⊗e_{x,y}`.
    Second,
}

/// A sum of pure tensors of tags, each with unit coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TagTensor {
    pub terms: Vec<Vec<Tag>>,
}

impl TagTensor {
    pub fn pure(tags: Vec<Tag>) -> Self {
        TagTensor { terms: vec![tags] }
    }

    pub fn realize(&self, data: &LyubashenkoData) -> RingMatrix {
        let n = data.size;
        let legs = self.terms.first().map_or(0, Vec::len);
        let dim = n.pow(legs as u32);
        let one = |t: &Tag| match *t {
            Tag::Unit => RingMatrix::identity(n),
            Tag::VPow(p) => data.v_pow(p),
            Tag::MatrixUnit(x, y) => RingMatrix::unit(n, x, y),
        };
        self.terms.iter().fold(RingMatrix::zeros(dim, dim), |acc, term| {
            let mats: Vec<RingMatrix> = term.iter().map(one).collect();
            &acc + &kron_all(&mats)
        })
    }

    /// Applies `ε` on `leg`, dropping that leg.
    pub fn counit_on(&self, leg: usize) -> TagTensor {
        let terms = self
            .terms
            .iter()
            .filter(|t| t[leg].counit() != 0)
            .map(|t| t.iter().enumerate().filter(|(k, _)| *k != leg).map(|(_, &x)| x).collect())
            .collect();
        TagTensor { terms }
    }

    /// Applies `Δ` on `leg`, splitting it in two.
    pub fn coproduct_on(&self, leg: usize, which: Coproduct, data: &LyubashenkoData) -> TagTensor {
        let mut terms = Vec::new();
        for t in &self.terms {
            for pair in coproduct(t[leg], which, data) {
                let mut out = t[..leg].to_vec();
                out.extend(pair);
                out.extend(&t[leg + 1..]);
                terms.push(out);
            }
        }
        TagTensor { terms }
    }

    /// Reverses the tensor factors.
    pub fn opposite(&self) -> TagTensor {
        TagTensor {
            terms: self.terms.iter().map(|t| t.iter().rev().copied().collect()).collect(),
        }
    }
}

fn coproduct(tag: Tag, which: Coproduct, data: &LyubashenkoData) -> Vec<[Tag; 2]> {
    match tag {
        Tag::Unit => vec![[Tag::Unit, Tag::Unit]],
        Tag::VPow(p) => vec![[Tag::VPow(p), Tag::VPow(p)]],
        Tag::MatrixUnit(x, y) => match which {
            Coproduct::First => vec![
                [Tag::MatrixUnit(x, y), Tag::Unit],
                [Tag::Unit, Tag::MatrixUnit(data.tau_perm[x], data.tau_perm[y])],
            ],
            Coproduct::Second => vec![
                [Tag::MatrixUnit(data.sigma_perm[x], data.sigma_perm[y]), Tag::Unit],
                [Tag::Unit, Tag::MatrixUnit(x, y)],
            ],
        },
    }
}

fn units(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |x| (0..n).map(move |y| (x, y)))
}

/// The counit, antipode and coproduct behaviour of `r = 𝒱⁻¹⊗𝒱`,
/// `ℱ = I⊗𝒱` and `𝒢 = 𝒱⁻¹⊗I`, evaluated on named algebra elements.
pub fn curious_observations(data: &LyubashenkoData) -> Result<VerificationReport> {
    let sol = data.solution();
    let n = data.size;
    let r = TagTensor::pure(vec![Tag::VPow(-1), Tag::VPow(1)]);
    let f = TagTensor::pure(vec![Tag::Unit, Tag::VPow(1)]);
    let g = TagTensor::pure(vec![Tag::VPow(-1), Tag::Unit]);
    let v = TagTensor::pure(vec![Tag::VPow(1)]);
    let v_inv = TagTensor::pure(vec![Tag::VPow(-1)]);
    let id = TagTensor::pure(vec![Tag::Unit]);
    let mut report = VerificationReport::new(sol.canonical_hash());

    report.record_eq("tags/r", &r.realize(data), &linearize(&sol, false));
    report.record_eq("tags/F", &f.realize(data), &twist_closed_form(&sol));
    report.record_eq("tags/G", &g.realize(data), &twist_alt(&sol));

    for (name, tensor, leg, want) in [
        ("counit/F-left", &f, 0, &v),
        ("counit/F-right", &f, 1, &id),
        ("counit/G-right", &g, 1, &v_inv),
        ("counit/G-left", &g, 0, &id),
        ("counit/r-left", &r, 0, &v),
        ("counit/r-right", &r, 1, &v_inv),
    ] {
        report.record_eq(name, &tensor.counit_on(leg).realize(data), &want.realize(data));
    }

    let dv = v.coproduct_on(0, Coproduct::First, data);
    report.record_eq("group-like", &dv.realize(data), &kron(&data.v, &data.v));
    let mut antipode = None;
    for (k, term) in dv.terms.iter().enumerate() {
        let left = TagTensor::pure(vec![term[0].antipode()]).realize(data);
        let right = TagTensor::pure(vec![term[1].antipode()]).realize(data);
        let ok = (&left * &TagTensor::pure(vec![term[1]]).realize(data)).is_identity()
            && (&TagTensor::pure(vec![term[0]]).realize(data) * &right).is_identity();
        if !ok {
            antipode = Some(vec![k]);
            break;
        }
    }
    report.record("antipode", antipode);

    let big_r = crate::baxter::baxterize(&sol).r_form;
    let phi = embed(&data.v, &[2], 3, n)?;
    let phi_hat = embed(&data.v, &[0], 3, n)?;
    let tau_is_id = data.tau_perm.iter().enumerate().all(|(k, &t)| k == t);
    for (which, label, phi) in [(Coproduct::First, "delta1", &phi), (Coproduct::Second, "delta2", &phi_hat)] {
        let phi_inv = phi.inverse()?;
        let mut intertwines = None;
        let mut anomaly = None;
        let mut anomaly_seen = false;
        let mut coassoc = None;
        for (x, y) in units(n) {
            let e = TagTensor::pure(vec![Tag::MatrixUnit(x, y)]);
            let d = e.coproduct_on(0, which, data);
            let lhs = &d.opposite().realize(data) * &big_r;
            let rhs = &big_r * &d.realize(data);
            if intertwines.is_none() && lhs != rhs {
                intertwines = Some(vec![x, y]);
            }
            let reduced = match which {
                Coproduct::First => d.counit_on(0),
                Coproduct::Second => d.counit_on(1),
            };
            let (a, b) = match which {
                Coproduct::First => (data.tau_perm[x], data.tau_perm[y]),
                Coproduct::Second => (data.sigma_perm[x], data.sigma_perm[y]),
            };
            let got = reduced.realize(data);
            let moved = (a, b) != (x, y);
            anomaly_seen |= moved;
            let ok = got == RingMatrix::unit(n, a, b) && (got != e.realize(data)) == moved;
            if anomaly.is_none() && !ok {
                anomaly = Some(vec![x, y]);
            }
            let inner = d.coproduct_on(1, which, data).realize(data);
            let outer = d.coproduct_on(0, which, data).realize(data);
            if coassoc.is_none() && inner != &(&phi_inv * &outer) * phi {
                coassoc = Some(vec![x, y]);
            }
        }
        if anomaly.is_none() && anomaly_seen == tau_is_id {
            anomaly = Some(Vec::new());
        }
        report.record(format!("{label}/intertwines-R"), intertwines);
        report.record(format!("{label}/counit-anomaly"), anomaly);
        report.record(format!("{label}/almost-coassociative"), coassoc);
    }
    Ok(report)
}

/// Every check for one permutation: conjugation, product twists for
/// `n = 1..=max_n` in both flavors, factorization and the observations.
pub fn verify_lyubashenko(data: &LyubashenkoData, max_n: usize) -> Result<VerificationReport> {
    let sol = data.solution();
    let mut report = VerificationReport::new(sol.canonical_hash());
    report.absorb("conjugation", verify_conjugation(data));
    for n in 1..=max_n {
        for flavor in Flavor::BOTH {
            let w = match lyu_n_twist(data, n, flavor) {
                Ok(_) => None,
                Err(Error::Internal(_)) => Some(vec![n]),
                Err(e) => return Err(e),
            };
            report.record(format!("product-twist-{flavor}-{n}"), w);
        }
        report.absorb(&format!("factorization-{n}"), verify_lyu_factorization(data, n)?);
    }
    report.absorb("observations", curious_observations(data)?);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solution::validate_solution;

    #[test]
    fn cycles_parse() {
        assert_eq!(permutation_from_cycles("(0 1 2)", 3).unwrap(), vec![1, 2, 0]);
        assert_eq!(permutation_from_cycles("(0 2)(1 3)", 4).unwrap(), vec![2, 3, 0, 1]);
        assert_eq!(permutation_from_cycles("", 2).unwrap(), vec![0, 1]);
        assert_eq!(permutation_from_cycles("()", 2).unwrap(), vec![0, 1]);
        assert!(permutation_from_cycles("(0 1", 2).is_err());
        assert!(permutation_from_cycles("(0 0)", 2).is_err());
        assert!(permutation_from_cycles("(0 5)", 2).is_err());
        assert!(LyubashenkoData::new(vec![0, 0]).is_err());
    }

    #[test]
    fn identity_gives_the_flip() {
        for n in 1..=4 {
            let d = LyubashenkoData::new((0..n).collect()).unwrap();
            assert!(d.solution().is_flip());
            assert!(verify_lyubashenko(&d, 2).unwrap().all_passed());
        }
    }

    #[test]
    fn two_cycle_is_l2() {
        let d = LyubashenkoData::from_cycles("(0 1)", 2).unwrap();
        let l2 = FiniteSolution::from_fns(2, |_, y| 1 - y, |_, x| 1 - x).unwrap();
        assert_eq!(d.solution(), l2);
        assert_eq!(d.v, RingMatrix::permutation(&[1, 0]));
        let i2 = RingMatrix::identity(2);
        assert_eq!(lyu_n_twist(&d, 1, Flavor::F).unwrap(), kron(&i2, &d.v));
        assert_eq!(lyu_n_twist(&d, 2, Flavor::F).unwrap(), kron_all(&[i2.clone(), d.v.clone(), i2]));
        let obs = curious_observations(&d).unwrap();
        assert!(obs.all_passed(), "{}", obs.to_text(false));
    }

    #[test]
    fn three_cycle() {
        let d = LyubashenkoData::from_cycles("(0 1 2)", 3).unwrap();
        let sol = d.solution();
        assert!(validate_solution(&sol).all_passed());
        assert!(!sol.is_flip());
        let v2 = d.v.pow(2).unwrap();
        assert!(d.v.pow(3).unwrap().is_identity());
        let i3 = RingMatrix::identity(3);
        assert_eq!(lyu_n_twist(&d, 2, Flavor::F).unwrap(), kron_all(&[i3, d.v.clone(), v2]));
        let r = verify_lyubashenko(&d, 3).unwrap();
        assert!(r.all_passed(), "{}", r.to_text(false));
    }

    #[test]
    fn every_small_permutation() {
        for n in 1..=3 {
            for p in perm::permutations(n) {
                let d = LyubashenkoData::new(p).unwrap();
                let r = verify_lyubashenko(&d, 3).unwrap();
                assert!(r.all_passed(), "{}", r.to_text(false));
            }
        }
    }

    #[test]
    fn anomaly_is_reported_per_generator() {
        // τ = (0 1) on 3 points fixes e_{2,2}, so that generator has no anomaly
        let d = LyubashenkoData::from_cycles("(0 1)", 3).unwrap();
        let e22 = TagTensor::pure(vec![Tag::MatrixUnit(2, 2)]);
        let red = e22.coproduct_on(0, Coproduct::First, &d).counit_on(0);
        assert_eq!(red.realize(&d), RingMatrix::unit(3, 2, 2));
        let e01 = TagTensor::pure(vec![Tag::MatrixUnit(0, 1)]);
        let red = e01.coproduct_on(0, Coproduct::First, &d).counit_on(0);
        assert_eq!(red.realize(&d), RingMatrix::unit(3, 1, 0));
        assert!(curious_observations(&d).unwrap().all_passed());
    }

    #[test]
    fn twist_depends_on_powers_mod_order() {
        let d = LyubashenkoData::from_cycles("(0 1)", 2).unwrap();
        // ℱ₀₁₂₃ = I⊗𝒱⊗𝒱²⊗𝒱³ = I⊗𝒱⊗I⊗𝒱 when 𝒱² = I
        let i2 = RingMatrix::identity(2);
        let want = kron_all(&[i2.clone(), d.v.clone(), i2, d.v.clone()]);
        assert_eq!(lyu_n_twist(&d, 3, Flavor::F).unwrap(), want);
    }
}
