use serde::Serialize;

use super::observables::{assemble, gr_eta, pi_check, GradedEta, ObservablesAlgebra};
use crate::algebra::{jacobson_radical, radical_filtration, FinDimAlgebra};
use crate::defth::{compute_hull, default_degree, stabilization_check, TruncatedHull};
use crate::error::{Error, Result};
use crate::repmod::{end_is_scalar, rho_surjectivity, simples_isomorphic, simples_of, ModuleFamily, RhoReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Refused,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Verdict {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BurnsideReport {
    pub end_scalar: Vec<bool>,
    /// Whether each member is isomorphic to a simple `A`-module.
    pub simple: Vec<bool>,
    /// No two members are isomorphic.
    pub distinct: bool,
    /// Whether the members are pairwise distinct simples with `End_A(M_i) = k`.
    pub hypothesis: bool,
    pub rho: RhoReport,
    pub verdict: Verdict,
}

/// Burnside: for pairwise non-isomorphic simple `M_i` with `End_A(M_i) = k`, `rho` is
/// surjective. Without the hypothesis the verdict is `Refused` and the rank is reported as is.
pub fn verify_burnside(a: &FinDimAlgebra, family: &ModuleFamily) -> Result<BurnsideReport> {
    let simples = simples_of(a)?.family;
    let members = family.members();
    let end_scalar: Vec<bool> = members.iter().map(end_is_scalar).collect();
    let simple: Vec<bool> =
        members.iter().map(|m| simples.members().iter().any(|s| simples_isomorphic(s, m))).collect();
    let distinct = (0..members.len())
        .all(|i| (i + 1..members.len()).all(|j| !simple[i] || !simples_isomorphic(&members[i], &members[j])));
    let hypothesis = distinct && end_scalar.iter().chain(&simple).all(|&b| b);
    let rho = rho_surjectivity(family);
    let verdict = if hypothesis { Verdict::from_bool(rho.surjective) } else { Verdict::Refused };
    Ok(BurnsideReport { end_scalar, simple, distinct, hypothesis, rho, verdict })
}

/// Builds the hull at `max_degree`, certifies stability, and assembles the observables.
pub fn observables_at(
    a: &FinDimAlgebra,
    family: &ModuleFamily,
    max_degree: usize,
) -> Result<(TruncatedHull, ObservablesAlgebra)> {
    let h = compute_hull(a, family, max_degree)?;
    if !stabilization_check(&h)? {
        return Err(Error::HullNotStable(max_degree));
    }
    let obs = assemble(&h)?;
    Ok((h, obs))
}

#[derive(Clone, Debug, Serialize)]
pub struct GbtReport {
    pub dim_algebra: usize,
    pub dim_observables: usize,
    pub max_degree: usize,
    pub h_dims: Vec<Vec<usize>>,
    pub eta_rank: usize,
    pub eta_injective: bool,
    pub eta_surjective: bool,
    pub bijective: bool,
    pub pi_check: bool,
    pub gr: Vec<GradedEta>,
    pub burnside: RhoReport,
    pub end_scalar: Vec<bool>,
    pub verdict: Verdict,
}

/// Whether `family` is, up to isomorphism and reordering, exactly the simple modules of `a`.
pub fn is_simple_family(a: &FinDimAlgebra, family: &ModuleFamily) -> Result<bool> {
    let simples = simples_of(a)?.family;
    if simples.len() != family.len() {
        return Ok(false);
    }
    let mut used = vec![false; family.len()];
    for s in simples.members() {
        // a nonzero map out of a simple module of equal dimension is an isomorphism
        let hit = (0..family.len()).find(|&i| !used[i] && simples_isomorphic(s, family.member(i)));
        match hit {
            Some(i) => used[i] = true,
            None => return Ok(false),
        }
    }
    Ok(true)
}

/// The Generalized Burnside Theorem on an instance: `eta: A -> O^A(M)` is an isomorphism when `M`
/// is the family of simples and every `End_A(M_i) = k`.
pub fn verify_gbt(a: &FinDimAlgebra, family: &ModuleFamily) -> Result<GbtReport> {
    if !is_simple_family(a, family)? {
        return Err(Error::HypothesisViolated("the family is not the family of simple modules".into()));
    }
    let end_scalar: Vec<bool> = family.members().iter().map(end_is_scalar).collect();
    if let Some(i) = end_scalar.iter().position(|&b| !b) {
        return Err(Error::HypothesisViolated(format!("End_A(M_{}) is larger than k", i + 1)));
    }
    let max_degree = default_degree(a)?;
    let (h, obs) = observables_at(a, family, max_degree)?;
    let eta_rank = obs.eta_rank();
    let eta_injective = eta_rank == a.dim();
    let eta_surjective = eta_rank == obs.dim();
    let index = radical_filtration(a)?.nilpotency_index;
    let gr = (0..=index.max(1)).map(|q| gr_eta(a, &obs, q)).collect::<Result<Vec<_>>>()?;
    let pi_ok = pi_check(&obs);
    let bijective = eta_injective && eta_surjective;
    let verdict = Verdict::from_bool(bijective && pi_ok && gr.iter().all(|g| g.iso) && a.dim() == obs.dim());
    Ok(GbtReport {
        dim_algebra: a.dim(),
        dim_observables: obs.dim(),
        max_degree,
        h_dims: h.h_dims(),
        eta_rank,
        eta_injective,
        eta_surjective,
        bijective,
        pi_check: pi_ok,
        gr,
        burnside: rho_surjectivity(family),
        end_scalar,
        verdict,
    })
}

/// Dimension tables of one step of the closure construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosureStep {
    pub dim_algebra: usize,
    pub dim_observables: usize,
    pub tangent: Vec<Vec<usize>>,
    pub h_dims: Vec<Vec<usize>>,
    pub block_dims: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClosureReport {
    pub max_degree: usize,
    /// `(A, M) -> B = O^A(M)`.
    pub first: ClosureStep,
    /// `(B, M) -> C = O^B(M)`.
    pub second: ClosureStep,
    pub family_is_simples_of_b: bool,
    /// `rad B = J` and `B / rad B = (+) End_k(M_i)`.
    pub semisimple_quotient: bool,
    pub eta_b_bijective: bool,
    /// The second step reproduces the dimension tables of the first.
    pub idempotent: bool,
    pub verdict: Verdict,
}

fn step(a: &FinDimAlgebra, h: &TruncatedHull, obs: &ObservablesAlgebra) -> ClosureStep {
    ClosureStep {
        dim_algebra: a.dim(),
        dim_observables: obs.dim(),
        tangent: h.tangent(),
        h_dims: h.h_dims(),
        block_dims: obs.block_dims(),
    }
}

/// The closure property on an instance: with `B = O^A(M)`, the family is the family of simple
/// `B`-modules and `eta_B: B -> O^B(M)` is an isomorphism.
pub fn closure_check(a: &FinDimAlgebra, family: &ModuleFamily, max_degree: usize) -> Result<ClosureReport> {
    let (h_a, b) = observables_at(a, family, max_degree)?;
    let family_b = b.family_via_pi()?;
    let family_is_simples_of_b = is_simple_family(&b.algebra, &family_b)?;
    let rad_b = jacobson_radical(&b.algebra)?;
    let square_sum: usize = family.dims().iter().map(|d| d * d).sum();
    let semisimple_quotient = rad_b == b.j && b.dim() - rad_b.dim() == square_sum;
    let (h_b, c) = observables_at(&b.algebra, &family_b, max_degree)?;
    let rank = c.eta_rank();
    let eta_b_bijective = rank == b.dim() && rank == c.dim();
    let first = step(a, &h_a, &b);
    let second = step(&b.algebra, &h_b, &c);
    let idempotent = second.dim_algebra == second.dim_observables
        && second.dim_observables == first.dim_observables
        && second.h_dims == first.h_dims
        && second.tangent == first.tangent;
    let verdict = Verdict::from_bool(family_is_simples_of_b && semisimple_quotient && eta_b_bijective && idempotent);
    Ok(ClosureReport {
        max_degree,
        first,
        second,
        family_is_simples_of_b,
        semisimple_quotient,
        eta_b_bijective,
        idempotent,
        verdict,
    })
}
