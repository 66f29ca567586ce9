//! Truncated noncommutative series over X or Y and their Hopf structures.
//!
//! A Y-series is stored through the X-form of its words (never ending in x₀),
//! so concatenation is shared between the two alphabets.

use std::collections::{BTreeMap, HashMap};
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{usage, Result};
use crate::scalar::Scalar;
use crate::words::{CyclicGroup, Letter, Word, YLetter, YWord};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Alphabet {
    X,
    Y,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Coproduct {
    /// Letters primitive; dual to the shuffle product.
    Delta,
    /// Δ*(y_{n,ν}) = Σ y_{k,κ}⊗y_{l,λ}; dual to the stuffle product.
    DeltaStar,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Series<C> {
    group: CyclicGroup,
    alphabet: Alphabet,
    trunc: usize,
    terms: BTreeMap<Word, C>,
}

pub(crate) fn add_into<K: Ord, C: Scalar>(map: &mut BTreeMap<K, C>, key: K, c: C) {
    use std::collections::btree_map::Entry;
    if c.is_zero() {
        return;
    }
    match map.entry(key) {
        Entry::Vacant(e) => {
            e.insert(c);
        }
        Entry::Occupied(mut e) => {
            let v = e.get().clone() + c;
            if v.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = v;
            }
        }
    }
}

impl<C: Scalar> Series<C> {
    pub fn zero(group: CyclicGroup, alphabet: Alphabet, trunc: usize) -> Self {
        Series { group, alphabet, trunc, terms: BTreeMap::new() }
    }

    pub fn one(group: CyclicGroup, alphabet: Alphabet, trunc: usize) -> Self {
        Self::monomial(group, alphabet, trunc, Word::empty(), C::one())
    }

    pub fn monomial(group: CyclicGroup, alphabet: Alphabet, trunc: usize, w: Word, c: C) -> Self {
        let mut s = Self::zero(group, alphabet, trunc);
        s.add_term(w, c);
        s
    }

    pub fn letter(group: CyclicGroup, trunc: usize, l: Letter) -> Self {
        Self::monomial(group, Alphabet::X, trunc, Word::letter(l), C::one())
    }

    /// y_{n,ν} as a Y-series.
    pub fn y(group: CyclicGroup, trunc: usize, n: u32, nu: u32) -> Self {
        let w = YWord(vec![YLetter { n, nu }]).to_x();
        Self::monomial(group, Alphabet::Y, trunc, w, C::one())
    }

    /// Builds a series from terms; fails on Y-terms ending in x₀.
    pub fn from_terms(
        group: CyclicGroup,
        alphabet: Alphabet,
        trunc: usize,
        terms: impl IntoIterator<Item = (Word, C)>,
    ) -> Result<Self> {
        let mut s = Self::zero(group, alphabet, trunc);
        for (w, c) in terms {
            if alphabet == Alphabet::Y && w.ends_with_x0() {
                return usage(format!("word {w} is not a Y-word"));
            }
            if w.letters().iter().any(|l| matches!(l, Letter::G(k) if *k >= group.order())) {
                return usage(format!("word {w} has a letter outside Z/{}", group.order()));
            }
            s.add_term(w, c);
        }
        Ok(s)
    }

    pub fn group(&self) -> CyclicGroup {
        self.group
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn terms(&self) -> &BTreeMap<Word, C> {
        &self.terms
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Word, &C)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &Word) -> C {
        self.terms.get(w).cloned().unwrap_or_else(C::zero)
    }

    pub fn constant(&self) -> C {
        self.coeff(&Word::empty())
    }

    /// Adds `c·w`, dropping terms beyond the truncation and exact zeros.
    pub fn add_term(&mut self, w: Word, c: C) {
        if w.weight() <= self.trunc {
            add_into(&mut self.terms, w, c);
        }
    }

    /// Same terms, new bound (terms above it are dropped).
    pub fn with_trunc(&self, trunc: usize) -> Self {
        let terms =
            self.terms.iter().filter(|(w, _)| w.weight() <= trunc).map(|(w, c)| (w.clone(), c.clone())).collect();
        Series { group: self.group, alphabet: self.alphabet, trunc, terms }
    }

    /// Same terms reinterpreted over the other alphabet.
    pub fn with_alphabet(&self, alphabet: Alphabet) -> Self {
        let mut s = self.clone();
        s.alphabet = alphabet;
        if alphabet == Alphabet::Y {
            s.terms.retain(|w, _| !w.ends_with_x0());
        }
        s
    }

    pub fn homogeneous(&self, weight: usize) -> Self {
        let terms =
            self.terms.iter().filter(|(w, _)| w.weight() == weight).map(|(w, c)| (w.clone(), c.clone())).collect();
        Series { group: self.group, alphabet: self.alphabet, trunc: self.trunc, terms }
    }

    pub fn weight_range(&self, lo: usize, hi: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(w, _)| (lo..=hi).contains(&w.weight()))
            .map(|(w, c)| (w.clone(), c.clone()))
            .collect();
        Series { group: self.group, alphabet: self.alphabet, trunc: self.trunc, terms }
    }

    pub fn min_weight(&self) -> Option<usize> {
        self.terms.keys().map(|w| w.weight()).min()
    }

    pub fn max_weight(&self) -> Option<usize> {
        self.terms.keys().map(|w| w.weight()).max()
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut s = Self::zero(self.group, self.alphabet, self.trunc);
        if c.is_zero() {
            return s;
        }
        for (w, a) in &self.terms {
            add_into(&mut s.terms, w.clone(), a.clone() * c.clone());
        }
        s
    }

    pub fn map_coeffs<D: Scalar>(&self, f: impl Fn(&C) -> D) -> Series<D> {
        let mut s = Series::zero(self.group, self.alphabet, self.trunc);
        for (w, c) in &self.terms {
            add_into(&mut s.terms, w.clone(), f(c));
        }
        s
    }

    /// Linear extension of a map on words (`None` kills the word).
    pub fn map_words(&self, alphabet: Alphabet, f: impl Fn(&Word) -> Option<(Word, C)>) -> Self {
        let mut s = Self::zero(self.group, alphabet, self.trunc);
        for (w, c) in &self.terms {
            if let Some((w2, a)) = f(w) {
                s.add_term(w2, a * c.clone());
            }
        }
        s
    }

    /// Homogeneous action of μ: multiplies the weight-k part by μᵏ.
    pub fn homogeneous_action(&self, mu: &C) -> Self {
        let mut powers = vec![C::one()];
        for k in 1..=self.trunc {
            powers.push(powers[k - 1].clone() * mu.clone());
        }
        self.map_words(self.alphabet, |w| Some((w.clone(), powers[w.weight()].clone())))
    }

    pub fn is_compatible(&self, other: &Self) -> bool {
        self.group == other.group && self.alphabet == other.alphabet
    }

    pub fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.group != other.group {
            return usage(format!("group mismatch: N={} vs N={}", self.group.order(), other.group.order()));
        }
        if self.alphabet != other.alphabet {
            return usage("alphabet mismatch");
        }
        Ok(())
    }

    fn assert_compatible(&self, other: &Self) {
        if let Err(e) = self.check_compatible(other) {
            panic!("{e}");
        }
    }

    /// Concatenation product truncated at the smaller bound.
    pub fn concat(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.concat_unchecked(other))
    }

    fn concat_unchecked(&self, other: &Self) -> Self {
        let trunc = self.trunc.min(other.trunc);
        let mut s = Self::zero(self.group, self.alphabet, trunc);
        for (u, a) in &self.terms {
            if u.weight() > trunc {
                continue;
            }
            for (v, b) in &other.terms {
                if u.weight() + v.weight() > trunc {
                    continue;
                }
                add_into(&mut s.terms, u.concat(v), a.clone() * b.clone());
            }
        }
        s
    }

    /// Shuffle product (X side).
    pub fn shuffle(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let trunc = self.trunc.min(other.trunc);
        let mut s = Self::zero(self.group, self.alphabet, trunc);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                if u.weight() + v.weight() > trunc {
                    continue;
                }
                let ab = a.clone() * b.clone();
                for (w, m) in shuffle_words(u.letters(), v.letters()) {
                    add_into(&mut s.terms, w, ab.clone() * C::from_int(m));
                }
            }
        }
        Ok(s)
    }

    /// Stuffle (quasi-shuffle) product of Y-series.
    pub fn stuffle(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        if self.alphabet != Alphabet::Y {
            return usage("stuffle needs Y-series");
        }
        let trunc = self.trunc.min(other.trunc);
        let mut s = Self::zero(self.group, self.alphabet, trunc);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                if u.weight() + v.weight() > trunc {
                    continue;
                }
                let ab = a.clone() * b.clone();
                let uy = u.to_y().expect("Y-series word");
                let vy = v.to_y().expect("Y-series word");
                for (w, m) in stuffle_words(&uy, &vy, self.group) {
                    add_into(&mut s.terms, w.to_x(), ab.clone() * C::from_int(m));
                }
            }
        }
        Ok(s)
    }

    /// Δ (letters primitive), truncated by total weight.
    pub fn delta(&self) -> Tensor<C> {
        let mut t = Tensor::zero(self.group, self.alphabet, self.trunc);
        for (w, c) in &self.terms {
            for ((u, v), m) in delta_word(w) {
                add_into(&mut t.terms, (u, v), c.clone() * C::from_int(m));
            }
        }
        t
    }

    /// Δ* on a Y-series.
    pub fn delta_star(&self) -> Tensor<C> {
        let mut t = Tensor::zero(self.group, Alphabet::Y, self.trunc);
        for (w, c) in &self.terms {
            let y = w.to_y().expect("Δ* needs Y-words");
            for ((u, v), m) in delta_star_word(&y, self.group) {
                add_into(&mut t.terms, (u.to_x(), v.to_x()), c.clone() * C::from_int(m));
            }
        }
        t
    }

    pub fn coproduct(&self, kind: Coproduct) -> Tensor<C> {
        match kind {
            Coproduct::Delta => self.delta(),
            Coproduct::DeltaStar => self.delta_star(),
        }
    }

    /// S(w) = (−1)^|w| reversed(w) for the letter-primitive coproduct.
    pub fn antipode(&self) -> Self {
        self.map_words(self.alphabet, |w| {
            let sign = if w.weight() % 2 == 0 { C::one() } else { -C::one() };
            Some((w.reversed(), sign))
        })
    }

    pub fn exp(&self) -> Result<Self> {
        if !self.constant().is_zero() {
            return usage("exp needs a series with zero constant term");
        }
        let mut out = Self::one(self.group, self.alphabet, self.trunc);
        let mut power = Self::one(self.group, self.alphabet, self.trunc);
        for k in 1..=self.trunc {
            power = power.concat_unchecked(self).scale(&C::from_ratio(1, k as i64));
            if power.is_zero() {
                break;
            }
            out = &out + &power;
        }
        Ok(out)
    }

    pub fn log(&self) -> Result<Self> {
        if self.constant() != C::one() {
            return usage("log needs a series with constant term 1");
        }
        let v = self - &Self::one(self.group, self.alphabet, self.trunc);
        let mut out = Self::zero(self.group, self.alphabet, self.trunc);
        let mut power = Self::one(self.group, self.alphabet, self.trunc);
        for k in 1..=self.trunc {
            power = power.concat_unchecked(&v);
            if power.is_zero() {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            out = &out + &power.scale(&C::from_ratio(sign, k as i64));
        }
        Ok(out)
    }

    /// Inverse for concatenation of a series with constant term 1.
    pub fn inverse(&self) -> Result<Self> {
        if self.constant() != C::one() {
            return usage("inverse needs a series with constant term 1");
        }
        let v = &Self::one(self.group, self.alphabet, self.trunc) - self;
        let mut out = Self::one(self.group, self.alphabet, self.trunc);
        let mut power = Self::one(self.group, self.alphabet, self.trunc);
        for _ in 1..=self.trunc {
            power = power.concat_unchecked(&v);
            if power.is_zero() {
                break;
            }
            out = &out + &power;
        }
        Ok(out)
    }

    /// π_Y: kills words ending in x₀; the result is a Y-series.
    pub fn pi_y(&self) -> Self {
        self.map_words(Alphabet::Y, |w| (!w.ends_with_x0()).then(|| (w.clone(), C::one())))
    }

    /// π_cv: additionally kills words starting with x₁.
    pub fn pi_cv(&self) -> Self {
        self.map_words(self.alphabet, |w| (!w.ends_with_x0() && !w.starts_with_x1()).then(|| (w.clone(), C::one())))
    }

    pub fn ps(&self) -> Self {
        let g = self.group;
        self.map_words(self.alphabet, |w| Some((w.ps(g), C::one())))
    }

    pub fn qs(&self) -> Self {
        let g = self.group;
        self.map_words(self.alphabet, |w| Some((w.qs(g), C::one())))
    }

    pub fn t_sigma(&self, sigma: u32) -> Self {
        let g = self.group;
        self.map_words(self.alphabet, |w| Some((w.t_sigma(sigma, g), C::one())))
    }

    /// Continuous algebra morphism given on letters.
    pub fn substitute(&self, image: impl Fn(Letter) -> Self) -> Self {
        let mut cache: HashMap<Letter, Self> = HashMap::new();
        let mut prefixes: HashMap<Vec<Letter>, Self> = HashMap::new();
        let mut out = Self::zero(self.group, self.alphabet, self.trunc);
        for (w, c) in &self.terms {
            let img = substitute_word(w.letters(), &image, &mut cache, &mut prefixes, self);
            for (u, a) in &img.terms {
                out.add_term(u.clone(), a.clone() * c.clone());
            }
        }
        out
    }

    /// (n,ν) colored-weight part of log(1 + Σ y).
    pub fn u_basis(group: CyclicGroup, n: u32, nu: u32) -> Self {
        let trunc = n as usize;
        if n == 0 {
            return Self::zero(group, Alphabet::Y, trunc);
        }
        let mut y = Self::one(group, Alphabet::Y, trunc);
        for k in 1..=n {
            for c in group.elements() {
                y.add_term(YWord(vec![YLetter { n: k, nu: c }]).to_x(), C::one());
            }
        }
        let l = y.log().expect("constant term 1");
        l.map_words(Alphabet::Y, |w| (w.weight() == trunc && w.total_color(group) == nu).then(|| (w.clone(), C::one())))
    }

    /// `⟨self|w⟩` summed against another series: Σ coeff·coeff.
    pub fn pairing(&self, other: &Self) -> C {
        let mut acc = C::zero();
        for (w, c) in &self.terms {
            if let Some(d) = other.terms.get(w) {
                acc = acc + c.clone() * d.clone();
            }
        }
        acc
    }

    /// Largest coefficient magnitude.
    pub fn max_magnitude(&self) -> f64 {
        self.terms.values().map(|c| c.magnitude()).fold(0.0, f64::max)
    }

    pub fn is_grouplike(&self, kind: Coproduct) -> bool {
        self.constant() == C::one() && self.grouplike_defect(kind).is_zero()
    }

    /// Δ(u) − u⊗u, truncated by total weight.
    pub fn grouplike_defect(&self, kind: Coproduct) -> Tensor<C> {
        let d = self.coproduct(kind);
        let sq = Tensor::product(self, self);
        &d - &sq
    }

    pub fn is_primitive(&self, kind: Coproduct) -> bool {
        self.primitive_defect(kind).terms.is_empty()
    }

    /// Δ(u) − 1⊗u − u⊗1.
    pub fn primitive_defect(&self, kind: Coproduct) -> Tensor<C> {
        let mut d = self.coproduct(kind);
        for (w, c) in &self.terms {
            add_into(&mut d.terms, (Word::empty(), w.clone()), -c.clone());
            add_into(&mut d.terms, (w.clone(), Word::empty()), -c.clone());
        }
        d
    }
}

fn substitute_word<C: Scalar>(
    letters: &[Letter],
    image: &impl Fn(Letter) -> Series<C>,
    cache: &mut HashMap<Letter, Series<C>>,
    prefixes: &mut HashMap<Vec<Letter>, Series<C>>,
    template: &Series<C>,
) -> Series<C> {
    if letters.is_empty() {
        return Series::one(template.group, template.alphabet, template.trunc);
    }
    if let Some(s) = prefixes.get(letters) {
        return s.clone();
    }
    let (last, init) = letters.split_last().expect("non-empty");
    let head = substitute_word(init, image, cache, prefixes, template);
    let tail = cache.entry(*last).or_insert_with(|| image(*last).with_trunc(template.trunc)).clone();
    let s = head.concat_unchecked(&tail);
    prefixes.insert(letters.to_vec(), s.clone());
    s
}

impl<C: Scalar> Add for &Series<C> {
    type Output = Series<C>;

    fn add(self, rhs: &Series<C>) -> Series<C> {
        self.assert_compatible(rhs);
        let mut s = self.with_trunc(self.trunc.min(rhs.trunc));
        for (w, c) in &rhs.terms {
            s.add_term(w.clone(), c.clone());
        }
        s
    }
}

impl<C: Scalar> Sub for &Series<C> {
    type Output = Series<C>;

    fn sub(self, rhs: &Series<C>) -> Series<C> {
        self.assert_compatible(rhs);
        let mut s = self.with_trunc(self.trunc.min(rhs.trunc));
        for (w, c) in &rhs.terms {
            s.add_term(w.clone(), -c.clone());
        }
        s
    }
}

impl<C: Scalar> Neg for &Series<C> {
    type Output = Series<C>;

    fn neg(self) -> Series<C> {
        self.scale(&-C::one())
    }
}

/// Concatenation.
impl<C: Scalar> Mul for &Series<C> {
    type Output = Series<C>;

    fn mul(self, rhs: &Series<C>) -> Series<C> {
        self.assert_compatible(rhs);
        self.concat_unchecked(rhs)
    }
}

/// Commutator ab − ba.
pub fn bracket<C: Scalar>(a: &Series<C>, b: &Series<C>) -> Series<C> {
    &(a * b) - &(b * a)
}

/// Coefficients in (Word, Word), truncated by total weight.
#[derive(Clone, Debug, PartialEq)]
pub struct Tensor<C> {
    group: CyclicGroup,
    alphabet: Alphabet,
    trunc: usize,
    terms: BTreeMap<(Word, Word), C>,
}

impl<C: Scalar> Tensor<C> {
    pub fn zero(group: CyclicGroup, alphabet: Alphabet, trunc: usize) -> Self {
        Tensor { group, alphabet, trunc, terms: BTreeMap::new() }
    }

    /// a ⊗ b truncated by total weight.
    pub fn product(a: &Series<C>, b: &Series<C>) -> Self {
        let trunc = a.trunc.min(b.trunc);
        let mut t = Tensor::zero(a.group, a.alphabet, trunc);
        for (u, x) in &a.terms {
            for (v, y) in &b.terms {
                if u.weight() + v.weight() <= trunc {
                    add_into(&mut t.terms, (u.clone(), v.clone()), x.clone() * y.clone());
                }
            }
        }
        t
    }

    pub fn group(&self) -> CyclicGroup {
        self.group
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn terms(&self) -> &BTreeMap<(Word, Word), C> {
        &self.terms
    }

    pub fn coeff(&self, u: &Word, v: &Word) -> C {
        self.terms.get(&(u.clone(), v.clone())).cloned().unwrap_or_else(C::zero)
    }

    pub fn add_term(&mut self, u: Word, v: Word, c: C) {
        if u.weight() + v.weight() <= self.trunc {
            add_into(&mut self.terms, (u, v), c);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_magnitude(&self) -> f64 {
        self.terms.values().map(|c| c.magnitude()).fold(0.0, f64::max)
    }
}

impl<C: Scalar> Sub for &Tensor<C> {
    type Output = Tensor<C>;

    fn sub(self, rhs: &Tensor<C>) -> Tensor<C> {
        let trunc = self.trunc.min(rhs.trunc);
        let mut t = Tensor::zero(self.group, self.alphabet, trunc);
        for ((u, v), c) in &self.terms {
            t.add_term(u.clone(), v.clone(), c.clone());
        }
        for ((u, v), c) in &rhs.terms {
            t.add_term(u.clone(), v.clone(), -c.clone());
        }
        t
    }
}

impl<C: Scalar> Add for &Tensor<C> {
    type Output = Tensor<C>;

    fn add(self, rhs: &Tensor<C>) -> Tensor<C> {
        let trunc = self.trunc.min(rhs.trunc);
        let mut t = Tensor::zero(self.group, self.alphabet, trunc);
        for ((u, v), c) in self.terms.iter().chain(rhs.terms.iter()) {
            t.add_term(u.clone(), v.clone(), c.clone());
        }
        t
    }
}

/// All shuffles of two words with multiplicities.
pub fn shuffle_words(u: &[Letter], v: &[Letter]) -> BTreeMap<Word, i64> {
    // table[i][j] holds the shuffles of u[i..] and v[j..]
    let (p, q) = (u.len(), v.len());
    let mut table: Vec<Vec<BTreeMap<Vec<Letter>, i64>>> = vec![vec![BTreeMap::new(); q + 1]; p + 1];
    table[p][q].insert(Vec::new(), 1);
    for i in (0..=p).rev() {
        for j in (0..=q).rev() {
            if i == p && j == q {
                continue;
            }
            let mut acc: BTreeMap<Vec<Letter>, i64> = BTreeMap::new();
            if i < p {
                for (w, m) in &table[i + 1][j] {
                    let mut x = Vec::with_capacity(w.len() + 1);
                    x.push(u[i]);
                    x.extend_from_slice(w);
                    *acc.entry(x).or_insert(0) += m;
                }
            }
            if j < q {
                for (w, m) in &table[i][j + 1] {
                    let mut x = Vec::with_capacity(w.len() + 1);
                    x.push(v[j]);
                    x.extend_from_slice(w);
                    *acc.entry(x).or_insert(0) += m;
                }
            }
            table[i][j] = acc;
        }
    }
    std::mem::take(&mut table[0][0]).into_iter().map(|(w, m)| (Word(w), m)).collect()
}

/// Recursive stuffle with (s,σ)⊕(t,τ) = (s+t, στ).
pub fn stuffle_words(u: &YWord, v: &YWord, group: CyclicGroup) -> BTreeMap<YWord, i64> {
    let (p, q) = (u.0.len(), v.0.len());
    let mut table: Vec<Vec<BTreeMap<Vec<YLetter>, i64>>> = vec![vec![BTreeMap::new(); q + 1]; p + 1];
    table[p][q].insert(Vec::new(), 1);
    let prepend = |a: YLetter, from: &BTreeMap<Vec<YLetter>, i64>, acc: &mut BTreeMap<Vec<YLetter>, i64>| {
        for (w, m) in from {
            let mut x = Vec::with_capacity(w.len() + 1);
            x.push(a);
            x.extend_from_slice(w);
            *acc.entry(x).or_insert(0) += m;
        }
    };
    for i in (0..=p).rev() {
        for j in (0..=q).rev() {
            if i == p && j == q {
                continue;
            }
            let mut acc = BTreeMap::new();
            if i < p {
                prepend(u.0[i], &table[i + 1][j], &mut acc);
            }
            if j < q {
                prepend(v.0[j], &table[i][j + 1], &mut acc);
            }
            if i < p && j < q {
                let merged = YLetter { n: u.0[i].n + v.0[j].n, nu: group.mul(u.0[i].nu, v.0[j].nu) };
                prepend(merged, &table[i + 1][j + 1], &mut acc);
            }
            table[i][j] = acc;
        }
    }
    std::mem::take(&mut table[0][0]).into_iter().map(|(w, m)| (YWord(w), m)).collect()
}

/// Δ of one word: all splittings into complementary subwords.
pub fn delta_word(w: &Word) -> BTreeMap<(Word, Word), i64> {
    let mut acc: BTreeMap<(Vec<Letter>, Vec<Letter>), i64> = BTreeMap::new();
    acc.insert((Vec::new(), Vec::new()), 1);
    for &l in w.letters() {
        let mut next = BTreeMap::new();
        for ((u, v), m) in acc {
            let mut u2 = u.clone();
            u2.push(l);
            *next.entry((u2, v.clone())).or_insert(0) += m;
            let mut v2 = v;
            v2.push(l);
            *next.entry((u, v2)).or_insert(0) += m;
        }
        acc = next;
    }
    acc.into_iter().map(|((u, v), m)| ((Word(u), Word(v)), m)).collect()
}

/// Δ* of one Y-word, multiplicative over its letters.
pub fn delta_star_word(w: &YWord, group: CyclicGroup) -> BTreeMap<(YWord, YWord), i64> {
    let mut acc: BTreeMap<(Vec<YLetter>, Vec<YLetter>), i64> = BTreeMap::new();
    acc.insert((Vec::new(), Vec::new()), 1);
    for y in &w.0 {
        let mut splits: Vec<(Option<YLetter>, Option<YLetter>)> = vec![(None, Some(*y)), (Some(*y), None)];
        for k in 1..y.n {
            for kappa in group.elements() {
                let a = YLetter { n: k, nu: kappa };
                let b = YLetter { n: y.n - k, nu: group.div(y.nu, kappa) };
                splits.push((Some(a), Some(b)));
            }
        }
        let mut next = BTreeMap::new();
        for ((u, v), m) in &acc {
            for (a, b) in &splits {
                let mut u2 = u.clone();
                u2.extend(a.iter().copied());
                let mut v2 = v.clone();
                v2.extend(b.iter().copied());
                *next.entry((u2, v2)).or_insert(0) += m;
            }
        }
        acc = next;
    }
    acc.into_iter().map(|((u, v), m)| ((YWord(u), YWord(v)), m)).collect()
}
