//! Rational points of DMR_λ built weight by weight, and the free transitive
//! action of exp(dmr₀) on them.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::dmr::{
    alpha_weight, check_dmr, point_residuals, tangent_families, tangent_residuals, DmrPoint, GradedLieBasis, Report,
    Residuals, TangentKind, Variant,
};
use crate::error::{usage, Error, Result};
use crate::lie::x_lie_basis;
use crate::linalg;
use crate::mt::{exp_s, frobenius, twist};
use crate::scalar::Scalar;
use crate::series::{Alphabet, Series};
use crate::words::CyclicGroup;

type Q = BigRational;

/// How free variables of each affine system are fixed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum FreeChoice {
    #[default]
    Zero,
    /// Free variables set to 1 in weights ≥ `from_weight`, 0 below.
    Ones { from_weight: usize },
}

impl FreeChoice {
    fn value(self, weight: usize) -> Q {
        match self {
            FreeChoice::Ones { from_weight } if weight >= from_weight => Q::one(),
            _ => Q::zero(),
        }
    }
}

/// A point of the weight-≤n truncation of DMR_λ.
#[derive(Clone, Debug, PartialEq)]
pub struct LiftState {
    pub current: Series<Q>,
    pub weight: usize,
    pub lambda: Q,
    pub variant: Variant,
}

impl LiftState {
    pub fn start(group: CyclicGroup, lambda: Q, variant: Variant) -> LiftState {
        LiftState { current: Series::one(group, Alphabet::X, 0), weight: 0, lambda, variant }
    }

    pub fn group(&self) -> CyclicGroup {
        self.current.group()
    }
}

fn theorem_violation(weight: usize, e: Error) -> Error {
    Error::Inconsistent(format!("theorem violation: no solution at weight {weight} ({e})"))
}

fn diff_residuals(a: &Residuals<Q>, base: &Residuals<Q>) -> Residuals<Q> {
    let mut out = a.clone();
    for (k, c) in base {
        crate::series::add_into(&mut out, k.clone(), -c.clone());
    }
    out
}

/// Extends a truncated point by one weight. The new component is
/// [exp(log Φ)]_{n+1} plus a Lie polynomial solving every constraint of
/// weight n+1.
pub fn lift_step(state: &LiftState, choice: FreeChoice) -> Result<LiftState> {
    let group = state.group();
    let w = state.weight + 1;
    let low = state.current.with_trunc(w);
    let particular = state.current.log()?.with_trunc(w).exp()?.homogeneous(w);
    let base = &low + &particular;
    let r0 = point_residuals(&base, &state.lambda, state.variant, w..=w)?;
    let columns = x_lie_basis(group, w, w);
    let cols: Vec<Residuals<Q>> = columns
        .iter()
        .map(|c| point_residuals(&(&base + c), &state.lambda, state.variant, w..=w).map(|r| diff_residuals(&r, &r0)))
        .collect::<Result<_>>()?;
    let mut keys: Vec<(String, String)> =
        cols.iter().flat_map(|r| r.keys().cloned()).chain(r0.keys().cloned()).collect();
    keys.sort();
    keys.dedup();
    let a: Vec<Vec<Q>> =
        keys.iter().map(|k| cols.iter().map(|r| r.get(k).cloned().unwrap_or_else(Q::zero)).collect()).collect();
    let b: Vec<Q> = keys.iter().map(|k| -r0.get(k).cloned().unwrap_or_else(Q::zero)).collect();
    let (x, _) =
        linalg::solve_affine(&a, &b, columns.len(), |_| choice.value(w)).map_err(|e| theorem_violation(w, e))?;
    let mut next = base;
    for (c, l) in x.iter().zip(&columns) {
        if !c.is_zero() {
            next = &next + &l.scale(c);
        }
    }
    Ok(LiftState { current: next, weight: w, lambda: state.lambda.clone(), variant: state.variant })
}

/// Lifts from weight 0 to `trunc` directly at the given λ.
pub fn lift_to(
    group: CyclicGroup,
    lambda: Q,
    variant: Variant,
    trunc: usize,
    choice: FreeChoice,
) -> Result<DmrPoint<Q>> {
    let mut s = LiftState::start(group, lambda, variant);
    while s.weight < trunc {
        s = lift_step(&s, choice)?;
    }
    Ok(DmrPoint { phi: s.current, lambda: s.lambda, variant })
}

/// A rational point of the fiber over λ. For N ≤ 2 the point is obtained by
/// rescaling an even point of the fiber over 1, so it is even itself.
pub fn lift_full(
    group: CyclicGroup,
    lambda: Q,
    variant: Variant,
    trunc: usize,
    choice: FreeChoice,
) -> Result<DmrPoint<Q>> {
    if trunc < alpha_weight(group) {
        return usage(format!("truncation {trunc} is below the weight of the normalization"));
    }
    if group.order() >= 3 {
        return lift_to(group, lambda, variant, trunc, choice);
    }
    let one = lift_to(group, Q::one(), variant, trunc, choice)?;
    let even = symmetrize_parity(&one)?;
    Ok(rescale_even(&even, &lambda))
}

/// Homogeneous action of μ; the result lies over λ·μ^{deg α}.
pub fn rescale<C: Scalar>(point: &DmrPoint<C>, mu: &C) -> DmrPoint<C> {
    let mut factor = C::one();
    for _ in 0..alpha_weight(point.group()) {
        factor = factor * mu.clone();
    }
    DmrPoint { phi: point.phi.homogeneous_action(mu), lambda: point.lambda.clone() * factor, variant: point.variant }
}

/// For an even point over 1: multiplies the weight-2k part by λᵏ, which is
/// the homogeneous action of √λ.
pub fn rescale_even<C: Scalar>(point: &DmrPoint<C>, lambda: &C) -> DmrPoint<C> {
    let trunc = point.phi.trunc();
    let mut powers = vec![C::one()];
    for k in 1..=trunc / 2 {
        powers.push(powers[k - 1].clone() * lambda.clone());
    }
    let phi = point
        .phi
        .map_words(Alphabet::X, |w| (w.weight() % 2 == 0).then(|| (w.clone(), powers[w.weight() / 2].clone())));
    DmrPoint { phi, lambda: point.lambda.clone() * lambda.clone(), variant: point.variant }
}

fn connect_by<C: Scalar>(
    phi1: &Series<C>,
    phi2: &Series<C>,
    mut check: impl FnMut(usize, &Series<C>) -> Result<()>,
    tol: f64,
) -> Result<Series<C>> {
    phi1.check_compatible(phi2)?;
    let trunc = phi1.trunc().min(phi2.trunc());
    let (phi1, phi2) = (phi1.with_trunc(trunc), phi2.with_trunc(trunc));
    let mut psi = Series::zero(phi1.group(), Alphabet::X, trunc);
    for w in 0..=trunc {
        let moved = exp_s(&psi, &phi1)?;
        let defect = (&phi2 - &moved).homogeneous(w);
        if w == 0 {
            if defect.max_magnitude() > tol || (C::EXACT && !defect.is_zero()) {
                return Err(Error::Inconsistent("points differ in the constant term".into()));
            }
            continue;
        }
        check(w, &defect)?;
        psi = &psi + &defect;
    }
    let err = (&exp_s(&psi, &phi1)? - &phi2).max_magnitude();
    if err > tol {
        return Err(Error::Inconsistent(format!("exp(s_ψ)Φ₁ misses Φ₂ by {err:.3e}")));
    }
    Ok(psi)
}

/// The unique ψ in the tangent space `kind` with exp(s_ψ)(Φ₁) = Φ₂, checking
/// each homogeneous component against the defining equations.
pub fn connect<C: Scalar>(phi1: &Series<C>, phi2: &Series<C>, kind: TangentKind, tol: f64) -> Result<Series<C>> {
    let families = tangent_families(phi1.group(), kind);
    connect_by(
        phi1,
        phi2,
        |w, d| {
            let r = tangent_residuals(d, kind, w..=w)?;
            let report = Report::from_residuals(&families, &r, tol);
            match report.first_violation() {
                None => Ok(()),
                Some(f) => Err(if C::EXACT {
                    Error::Inconsistent(format!("weight-{w} defect violates {} of {kind}", f.name))
                } else {
                    Error::Precision(format!(
                        "weight-{w} defect violates {} of {kind} by {:.3e}",
                        f.name, f.max_residual
                    ))
                }),
            }
        },
        tol,
    )
}

/// As [`connect`], asserting membership in precomputed graded bases where
/// available.
pub fn connect_exact(
    phi1: &Series<Q>,
    phi2: &Series<Q>,
    kind: TangentKind,
    bases: &[GradedLieBasis],
) -> Result<Series<Q>> {
    let families = tangent_families(phi1.group(), kind);
    connect_by(
        phi1,
        phi2,
        |w, d| {
            let ok = match bases.iter().find(|b| b.weight == w && b.kind == kind) {
                Some(b) => b.contains(d),
                None => Report::from_residuals(&families, &tangent_residuals(d, kind, w..=w)?, 0.0).passed(),
            };
            if ok {
                Ok(())
            } else {
                Err(Error::Inconsistent(format!("weight-{w} defect is outside {kind}")))
            }
        },
        0.0,
    )
}

/// For N ≤ 2: an even point in the same fiber, exp(s_{ψ/2})(Φ) where
/// twist(Φ) = exp(s_ψ)(Φ).
pub fn symmetrize_parity(point: &DmrPoint<Q>) -> Result<DmrPoint<Q>> {
    if point.group().order() > 2 {
        return usage("parity symmetrization needs N ≤ 2");
    }
    let kind = TangentKind::acting_on(point.variant);
    let twisted = twist(&point.phi);
    let psi = connect(&point.phi, &twisted, kind, 0.0)?;
    let half = psi.scale(&Q::new(1.into(), 2.into()));
    let phi = exp_s(&half, &point.phi)?;
    if twist(&phi) != phi {
        return Err(Error::Inconsistent("symmetrized point is not even".into()));
    }
    Ok(DmrPoint { phi, lambda: point.lambda.clone(), variant: point.variant })
}

/// Homogeneous components ψ₁, …, ψ_W of the ψ with F(Φ) = exp(−s_ψ)(Φ).
pub fn frobenius_decomposition<C: Scalar>(point: &DmrPoint<C>, tol: f64) -> Result<Vec<Series<C>>> {
    let report = check_dmr(&point.phi, &point.lambda, point.variant, tol)?;
    if let Some(f) = report.first_violation() {
        return Err(Error::Precision(format!("input fails {} by {:.3e}", f.name, f.max_residual)));
    }
    let kind = TangentKind::acting_on(point.variant);
    let f_phi = frobenius(&point.phi);
    let psi = connect(&f_phi, &point.phi, kind, tol)?;
    let odd = (&frobenius(&psi) + &psi).max_magnitude();
    if odd > tol {
        return Err(Error::Precision(format!("F(ψ) = −ψ fails by {odd:.3e}")));
    }
    Ok((1..=psi.trunc()).map(|w| psi.homogeneous(w)).collect())
}
