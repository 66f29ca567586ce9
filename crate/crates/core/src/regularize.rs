//! Grouplike series determined by their convergent coefficients.

use num_rational::BigRational;

use crate::error::{usage, Result};
use crate::lie::{u_lie_basis, x_lie_basis};
use crate::linalg;
use crate::scalar::Scalar;
use crate::series::{Alphabet, Coproduct, Series};
use crate::words::{x_words, y_words, Letter, Word};

/// Coefficients fixed by hand: x₁ and x₀ for Δ, y_{1,1} (stored in `x1`) for Δ*.
#[derive(Clone, Debug)]
pub struct Prescribed<C> {
    pub x1: C,
    pub x0: C,
}

impl<C: Scalar> Prescribed<C> {
    pub fn zero() -> Self {
        Prescribed { x1: C::zero(), x0: C::zero() }
    }
}

fn convergent_words(group: crate::words::CyclicGroup, kind: Coproduct, weight: usize) -> Vec<Word> {
    let all = match kind {
        Coproduct::Delta => x_words(group, weight),
        Coproduct::DeltaStar => y_words(group, weight),
    };
    all.into_iter().filter(|w| !w.ends_with_x0() && !w.starts_with_x1()).collect()
}

/// The grouplike series (for `kind`) whose convergent coefficients are those of
/// `cv` and whose remaining weight-one coefficients are `prescribed`.
///
/// Built weight by weight: the weight-w part is exp(log Φ_{<w}) plus a primitive
/// correction fitted to the convergent coefficients.
pub fn grouplike_lift<C: Scalar>(cv: &Series<C>, kind: Coproduct, prescribed: &Prescribed<C>) -> Result<Series<C>> {
    let group = cv.group();
    let trunc = cv.trunc();
    let alphabet = match kind {
        Coproduct::Delta => Alphabet::X,
        Coproduct::DeltaStar => Alphabet::Y,
    };
    if cv.alphabet() != alphabet {
        return usage("convergent part has the wrong alphabet for this coproduct");
    }
    let mut phi = Series::one(group, alphabet, trunc);
    if trunc == 0 {
        return Ok(phi);
    }
    for w in convergent_words(group, kind, 1) {
        phi.add_term(w.clone(), cv.coeff(&w));
    }
    phi.add_term(Word::letter(Letter::X1), prescribed.x1.clone());
    if kind == Coproduct::Delta {
        phi.add_term(Word::letter(Letter::X0), prescribed.x0.clone());
    }
    for weight in 2..=trunc {
        let low = phi.with_trunc(weight - 1);
        let particular = low.log()?.with_trunc(weight).exp()?.homogeneous(weight);
        let basis: Vec<Series<C>> = match kind {
            Coproduct::Delta => x_lie_basis(group, weight, trunc),
            Coproduct::DeltaStar => u_lie_basis(group, weight, trunc),
        }
        .iter()
        .map(|s| s.map_coeffs(|q: &BigRational| C::from_rational(q)))
        .collect();
        let words = convergent_words(group, kind, weight);
        let rows: Vec<Vec<C>> = words.iter().map(|w| basis.iter().map(|b| b.coeff(w)).collect()).collect();
        let rhs: Vec<C> = words.iter().map(|w| cv.coeff(w) - particular.coeff(w)).collect();
        let x = linalg::solve(&rows, &rhs, basis.len())?;
        let mut part = particular.with_trunc(trunc);
        for (b, c) in basis.iter().zip(x) {
            part = &part + &b.scale(&c);
        }
        phi = &phi + &part;
    }
    Ok(phi)
}
