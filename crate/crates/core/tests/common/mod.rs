//! Shared builders and brute-force oracles for the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use proptest::prelude::*;

use dmr_core::{Alphabet, CyclicGroup, Letter, Series, Word, YLetter, YWord, Q};

pub fn g(n: u32) -> CyclicGroup {
    CyclicGroup::new(n).unwrap()
}

pub fn q(p: i64, d: i64) -> Q {
    Q::new(p.into(), d.into())
}

pub fn qi(p: i64) -> Q {
    Q::from_integer(p.into())
}

pub fn word(tokens: &[i64], group: CyclicGroup) -> Word {
    Word::from_tokens(tokens, group).unwrap()
}

pub fn yword(pairs: &[(u32, u32)]) -> YWord {
    YWord(pairs.iter().map(|&(n, nu)| YLetter { n, nu }).collect())
}

/// X-series from (tokens, coefficient) pairs.
pub fn xs(group: CyclicGroup, trunc: usize, terms: &[(&[i64], Q)]) -> Series<Q> {
    let mut s = Series::zero(group, Alphabet::X, trunc);
    for (t, c) in terms {
        s.add_term(word(t, group), c.clone());
    }
    s
}

/// Y-series from ([(n, ν)], coefficient) pairs.
pub fn ys(group: CyclicGroup, trunc: usize, terms: &[(&[(u32, u32)], Q)]) -> Series<Q> {
    let mut s = Series::zero(group, Alphabet::Y, trunc);
    for (p, c) in terms {
        s.add_term(yword(p).to_x(), c.clone());
    }
    s
}

/// All X-words of a weight, by plain base-(N+1) counting.
pub fn all_x_words(group: CyclicGroup, weight: usize) -> Vec<Vec<Letter>> {
    let base = group.order() as usize + 1;
    let total = base.pow(weight as u32);
    (0..total)
        .map(|mut m| {
            let mut w = Vec::with_capacity(weight);
            for _ in 0..weight {
                let d = m % base;
                m /= base;
                w.push(if d == 0 { Letter::X0 } else { Letter::G(d as u32 - 1) });
            }
            w.reverse();
            w
        })
        .collect()
}

/// All Y-words of a weight, as sequences of (n, ν).
pub fn all_y_words(group: CyclicGroup, weight: usize) -> Vec<YWord> {
    if weight == 0 {
        return vec![YWord(vec![])];
    }
    let mut out = Vec::new();
    for n in 1..=weight {
        for nu in 0..group.order() {
            for mut rest in all_y_words(group, weight - n) {
                rest.0.insert(0, YLetter { n: n as u32, nu });
                out.push(rest);
            }
        }
    }
    out
}

/// Shuffle product by enumerating the position sets of the first word.
pub fn brute_shuffle(u: &[Letter], v: &[Letter]) -> BTreeMap<Vec<Letter>, i64> {
    let (p, n) = (u.len(), u.len() + v.len());
    let mut out = BTreeMap::new();
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize != p {
            continue;
        }
        let (mut i, mut j) = (0, 0);
        let mut w = Vec::with_capacity(n);
        for k in 0..n {
            if mask >> k & 1 == 1 {
                w.push(u[i]);
                i += 1;
            } else {
                w.push(v[j]);
                j += 1;
            }
        }
        *out.entry(w).or_insert(0) += 1;
    }
    out
}

/// Stuffle product by the first-letter recursion.
pub fn brute_stuffle(u: &[YLetter], v: &[YLetter], group: CyclicGroup) -> BTreeMap<Vec<YLetter>, i64> {
    let mut out = BTreeMap::new();
    if u.is_empty() || v.is_empty() {
        out.insert([u, v].concat(), 1);
        return out;
    }
    let (a, b) = (u[0], v[0]);
    let mut push = |first: YLetter, rest: BTreeMap<Vec<YLetter>, i64>| {
        for (mut w, c) in rest {
            w.insert(0, first);
            *out.entry(w).or_insert(0) += c;
        }
    };
    push(a, brute_stuffle(&u[1..], v, group));
    push(b, brute_stuffle(u, &v[1..], group));
    push(YLetter { n: a.n + b.n, nu: group.mul(a.nu, b.nu) }, brute_stuffle(&u[1..], &v[1..], group));
    out
}

/// Rank by fraction-free (Bareiss) elimination after clearing denominators.
pub fn bareiss_rank(rows: &[Vec<Q>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| {
            let l = r.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
            r.iter().map(|c| c.numer() * (&l / c.denom())).collect()
        })
        .filter(|r: &Vec<BigInt>| r.iter().any(|c| !c.is_zero()))
        .collect();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..ncols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][col].is_zero()) else { continue };
        m.swap(rank, p);
        let pivot = m[rank][col].clone();
        for i in rank + 1..m.len() {
            let f = m[i][col].clone();
            for j in col..ncols {
                let v = (&pivot * &m[i][j] - &f * &m[rank][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = pivot;
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

/// Random X-series with small integer coefficients; `min_weight` 1 gives zero
/// constant term.
pub fn arb_x_series(n: u32, trunc: usize, min_weight: usize) -> impl Strategy<Value = Series<Q>> {
    let group = g(n);
    let words: Vec<Vec<Letter>> = (min_weight..=trunc).flat_map(|w| all_x_words(group, w)).collect();
    let len = words.len();
    prop::collection::vec((0..len, -3i64..=3), 1..6).prop_map(move |picks| {
        let mut s = Series::zero(group, Alphabet::X, trunc);
        for (i, c) in picks {
            s.add_term(Word(words[i].clone()), qi(c));
        }
        s
    })
}

/// Random Y-series with small integer coefficients.
pub fn arb_y_series(n: u32, trunc: usize, min_weight: usize) -> impl Strategy<Value = Series<Q>> {
    let group = g(n);
    let words: Vec<YWord> = (min_weight..=trunc).flat_map(|w| all_y_words(group, w)).collect();
    let len = words.len();
    prop::collection::vec((0..len, -3i64..=3), 1..6).prop_map(move |picks| {
        let mut s = Series::zero(group, Alphabet::Y, trunc);
        for (i, c) in picks {
            s.add_term(words[i].to_x(), qi(c));
        }
        s
    })
}
