//! The group (MT, ⊛), its infinitesimal operators and related substitutions.

use crate::error::{usage, Result};
use crate::scalar::Scalar;
use crate::series::{bracket, Alphabet, Series};
use crate::words::{CyclicGroup, Letter, Word};

fn require_unit<C: Scalar>(g: &Series<C>) -> Result<()> {
    if g.constant() != C::one() {
        return usage("an MT element needs constant term 1");
    }
    Ok(())
}

fn require_lie<C: Scalar>(psi: &Series<C>) -> Result<()> {
    if !psi.constant().is_zero() {
        return usage("an mt element needs constant term 0");
    }
    Ok(())
}

/// κ_G: x_σ ↦ t_σ(G)⁻¹ x_σ t_σ(G), x₀ ↦ x₀.
pub fn kappa<C: Scalar>(g: &Series<C>, v: &Series<C>) -> Result<Series<C>> {
    require_unit(g)?;
    g.check_compatible(&v.with_alphabet(g.alphabet()))?;
    let group = g.group();
    let trunc = g.trunc().min(v.trunc());
    let g = g.with_trunc(trunc);
    let images: Vec<Series<C>> = group
        .elements()
        .map(|s| {
            let t = g.t_sigma(s);
            let inv = t.inverse().expect("constant term 1");
            &(&inv * &Series::letter(group, trunc, Letter::G(s))) * &t
        })
        .collect();
    Ok(v.with_trunc(trunc).substitute(|l| match l {
        Letter::X0 => Series::letter(group, trunc, Letter::X0),
        Letter::G(s) => images[s as usize].clone(),
    }))
}

/// G ⊛ H = G·κ_G(H).
pub fn mt_mul<C: Scalar>(g: &Series<C>, h: &Series<C>) -> Result<Series<C>> {
    let k = kappa(g, h)?;
    Ok(&g.with_trunc(k.trunc()) * &k)
}

/// ⊛-inverse, solved weight by weight from G ⊛ H = 1.
pub fn mt_inverse<C: Scalar>(g: &Series<C>) -> Result<Series<C>> {
    require_unit(g)?;
    let mut h = Series::one(g.group(), Alphabet::X, g.trunc());
    for w in 1..=g.trunc() {
        let r = mt_mul(g, &h)?.homogeneous(w);
        h = &h - &r;
    }
    Ok(h)
}

/// The derivation with d_ψ(x₀) = 0 and d_ψ(x_σ) = [x_σ, t_σ(ψ)], so that
/// s_ψ(x₁v) = x₁s_ψ(v).
pub fn d_psi<C: Scalar>(psi: &Series<C>, v: &Series<C>) -> Series<C> {
    let group = psi.group();
    let trunc = psi.trunc().min(v.trunc());
    let images: Vec<Series<C>> = group
        .elements()
        .map(|s| bracket(&Series::letter(group, trunc, Letter::G(s)), &psi.t_sigma(s).with_trunc(trunc)))
        .collect();
    derivation(v, trunc, |l| match l {
        Letter::X0 => None,
        Letter::G(s) => Some(&images[s as usize]),
    })
}

/// Applies the derivation given on letters (`None` for 0) to `v`.
fn derivation<'a, C: Scalar>(
    v: &Series<C>,
    trunc: usize,
    image: impl Fn(Letter) -> Option<&'a Series<C>>,
) -> Series<C> {
    let group = v.group();
    let mut out = Series::zero(group, Alphabet::X, trunc);
    for (w, c) in v.iter() {
        let ls = w.letters();
        for (i, &l) in ls.iter().enumerate() {
            let Some(img) = image(l) else { continue };
            let left = Word(ls[..i].to_vec());
            let right = Word(ls[i + 1..].to_vec());
            let rest = left.weight() + right.weight();
            for (u, a) in img.iter() {
                if u.weight() + rest <= trunc {
                    out.add_term(left.concat(u).concat(&right), a.clone() * c.clone());
                }
            }
        }
    }
    out
}

/// s_ψ(v) = ψv + d_ψ(v).
pub fn s_psi<C: Scalar>(psi: &Series<C>, v: &Series<C>) -> Series<C> {
    let v = v.with_alphabet(Alphabet::X);
    &(psi * &v) + &d_psi(psi, &v)
}

/// exp(s_ψ)(v), which equals Exp(ψ) ⊛ v.
pub fn exp_s<C: Scalar>(psi: &Series<C>, v: &Series<C>) -> Result<Series<C>> {
    require_lie(psi)?;
    let trunc = psi.trunc().min(v.trunc());
    let mut term = v.with_trunc(trunc).with_alphabet(Alphabet::X);
    let mut out = term.clone();
    for k in 1..=trunc {
        term = s_psi(psi, &term).scale(&C::from_ratio(1, k as i64));
        if term.is_zero() {
            break;
        }
        out = &out + &term;
    }
    Ok(out)
}

/// {ψ₁, ψ₂} = s_{ψ₁}(ψ₂) − s_{ψ₂}(ψ₁).
pub fn ihara<C: Scalar>(a: &Series<C>, b: &Series<C>) -> Series<C> {
    &s_psi(a, b) - &s_psi(b, a)
}

/// Exp(ψ) = exp(s_ψ)(1).
pub fn mt_exp<C: Scalar>(psi: &Series<C>) -> Result<Series<C>> {
    exp_s(psi, &Series::one(psi.group(), Alphabet::X, psi.trunc()))
}

/// ∂_{x₀}: the derivation sending x₀ to 1 and every x_σ to 0.
pub fn partial_x0<C: Scalar>(u: &Series<C>) -> Series<C> {
    let mut out = Series::zero(u.group(), Alphabet::X, u.trunc());
    for (w, c) in u.iter() {
        let ls = w.letters();
        for (i, l) in ls.iter().enumerate() {
            if l.is_x0() {
                let mut rest = ls[..i].to_vec();
                rest.extend_from_slice(&ls[i + 1..]);
                out.add_term(Word(rest), c.clone());
            }
        }
    }
    out
}

/// sec(v) = Σ (−1)ⁱ/i! ∂_{x₀}ⁱ(v) x₀ⁱ, the section of π_Y on ker ∂_{x₀}.
pub fn sec<C: Scalar>(v: &Series<C>) -> Series<C> {
    let group = v.group();
    let trunc = v.trunc();
    let mut d = v.with_alphabet(Alphabet::X);
    let mut out = d.clone();
    let mut x0_pow = Series::one(group, Alphabet::X, trunc);
    let x0 = Series::letter(group, trunc, Letter::X0);
    let mut fact = C::one();
    for i in 1..=trunc {
        d = partial_x0(&d);
        if d.is_zero() {
            break;
        }
        x0_pow = &x0_pow * &x0;
        fact = fact * C::from_int(i as i64);
        let sign = if i % 2 == 0 { C::one() } else { -C::one() };
        out = &out + &(&d * &x0_pow).scale(&(sign / fact.clone()));
    }
    out
}

/// s^Y_ψ(v) = qs π_Y(s_ψ(ps v)).
pub fn s_psi_y<C: Scalar>(psi: &Series<C>, v: &Series<C>) -> Series<C> {
    let v = v.with_alphabet(Alphabet::X).ps();
    s_psi(psi, &v).pi_y().qs()
}

/// D^Y_ψ(v) = s^Y_ψ(v) − v·qs π_Y(ψ).
pub fn d_psi_y<C: Scalar>(psi: &Series<C>, v: &Series<C>) -> Series<C> {
    let v = v.with_alphabet(Alphabet::Y);
    &s_psi_y(psi, &v) - &(&v * &psi.pi_y().qs())
}

/// F: x_σ ↦ −x_{σ⁻¹}, x₀ ↦ −x₀.
pub fn frobenius<C: Scalar>(u: &Series<C>) -> Series<C> {
    let group = u.group();
    u.map_words(u.alphabet(), |w| {
        let sign = if w.weight() % 2 == 0 { C::one() } else { -C::one() };
        let letters = w
            .letters()
            .iter()
            .map(|l| match l {
                Letter::X0 => Letter::X0,
                Letter::G(k) => Letter::G(group.inv(*k)),
            })
            .collect();
        Some((Word(letters), sign))
    })
}

/// The homogeneous action of −1.
pub fn twist<C: Scalar>(u: &Series<C>) -> Series<C> {
    u.homogeneous_action(&-C::one())
}

/// p^d_*: series over Γ to series over Γ^d.
pub fn pushforward<C: Scalar>(u: &Series<C>, d: u32) -> Result<Series<C>> {
    let group = u.group();
    let target = group.image(d)?;
    let mut out = Series::zero(target, u.alphabet(), u.trunc());
    for (w, c) in u.iter() {
        let mut factor = 1i64;
        let mut letters = Vec::with_capacity(w.weight());
        for l in w.letters() {
            let (f, l2) = l.pushforward(d, group)?;
            factor *= f;
            letters.push(l2);
        }
        out.add_term(Word(letters), c.clone() * C::from_int(factor));
    }
    Ok(out)
}

/// i_d^*: restriction to the letters of Γ^d.
pub fn pullback<C: Scalar>(u: &Series<C>, d: u32) -> Result<Series<C>> {
    let group = u.group();
    let target = group.image(d)?;
    let mut out = Series::zero(target, u.alphabet(), u.trunc());
    'words: for (w, c) in u.iter() {
        let mut letters = Vec::with_capacity(w.weight());
        for l in w.letters() {
            match l.pullback(d, group)? {
                Some(l2) => letters.push(l2),
                None => continue 'words,
            }
        }
        out.add_term(Word(letters), c.clone());
    }
    Ok(out)
}

/// Residues σ with σ^d = 1, the kernel of p^d.
pub fn kernel_of_power(group: CyclicGroup, d: u32) -> Vec<u32> {
    group.elements().filter(|&k| group.pow(k, d) == 0).collect()
}
