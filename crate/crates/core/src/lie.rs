//! Bases of homogeneous primitive elements.
//!
//! Primitives for Δ are Lie polynomials in the letters of X; primitives for Δ*
//! are Lie polynomials in the u_{n,ν}. Both are spanned by standard
//! bracketings of Lyndon words.

use num_rational::BigRational;

use crate::series::{bracket, Alphabet, Series};
use crate::words::{CyclicGroup, Letter, YLetter};

type Q = BigRational;

fn is_lyndon<T: Ord>(w: &[T]) -> bool {
    !w.is_empty() && (1..w.len()).all(|i| w < &w[i..])
}

/// Lyndon words with letters from `alphabet` (each with a weight) of total weight `weight`.
pub fn lyndon_words<T: Ord + Clone>(alphabet: &[(T, usize)], weight: usize) -> Vec<Vec<T>> {
    fn rec<T: Ord + Clone>(alphabet: &[(T, usize)], left: usize, cur: &mut Vec<T>, out: &mut Vec<Vec<T>>) {
        if left == 0 {
            if is_lyndon(cur) {
                out.push(cur.clone());
            }
            return;
        }
        for (l, w) in alphabet {
            if *w <= left {
                cur.push(l.clone());
                rec(alphabet, left - w, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    if weight > 0 {
        rec(alphabet, weight, &mut Vec::new(), &mut out);
    }
    out.sort();
    out
}

/// Standard bracketing: b(l) = [b(u), b(v)] with v the longest proper Lyndon suffix.
pub fn standard_bracket<T: Ord + Clone>(w: &[T], image: &impl Fn(&T) -> Series<Q>) -> Series<Q> {
    if w.len() == 1 {
        return image(&w[0]);
    }
    let split = (1..w.len()).find(|&i| is_lyndon(&w[i..])).expect("a Lyndon word of length ≥ 2 has a Lyndon suffix");
    bracket(&standard_bracket(&w[..split], image), &standard_bracket(&w[split..], image))
}

/// Basis of Lie polynomials of the given weight in the letters of X.
pub fn x_lie_basis(group: CyclicGroup, weight: usize, trunc: usize) -> Vec<Series<Q>> {
    let mut alphabet = vec![(Letter::X0, 1)];
    alphabet.extend(group.elements().map(|k| (Letter::G(k), 1)));
    lyndon_words(&alphabet, weight)
        .iter()
        .map(|w| standard_bracket(w, &|l: &Letter| Series::letter(group, trunc, *l)))
        .collect()
}

/// Basis of Δ*-primitive Y-polynomials of the given weight (Lie polynomials in the u_{n,ν}).
pub fn u_lie_basis(group: CyclicGroup, weight: usize, trunc: usize) -> Vec<Series<Q>> {
    let mut alphabet = Vec::new();
    for n in 1..=weight as u32 {
        for nu in group.elements() {
            alphabet.push((YLetter { n, nu }, n as usize));
        }
    }
    let images: Vec<(YLetter, Series<Q>)> =
        alphabet.iter().map(|(y, _)| (*y, Series::u_basis(group, y.n, y.nu).with_trunc(trunc))).collect();
    let image = |y: &YLetter| images.iter().find(|(z, _)| z == y).map(|(_, s)| s.clone()).expect("letter in alphabet");
    lyndon_words(&alphabet, weight).iter().map(|w| standard_bracket(w, &image).with_alphabet(Alphabet::Y)).collect()
}
