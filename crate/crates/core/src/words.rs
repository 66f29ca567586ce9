//! Cyclic groups, the alphabets X and Y, and words over them.
//!
//! The group Γ = Z/N is stored additively; residue `k` stands for ξᵏ with
//! ξ = exp(2iπ/N). The letter x₀ is [`Letter::X0`] and x_{ξᵏ} is
//! [`Letter::G`]`(k)`, so x₁ is `G(0)`.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{usage, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CyclicGroup {
    order: u32,
}

impl CyclicGroup {
    pub fn new(order: u32) -> Result<Self> {
        if order == 0 {
            return usage("group order must be at least 1");
        }
        Ok(CyclicGroup { order })
    }

    pub fn order(self) -> u32 {
        self.order
    }

    pub fn mul(self, a: u32, b: u32) -> u32 {
        (a + b) % self.order
    }

    pub fn inv(self, a: u32) -> u32 {
        (self.order - a % self.order) % self.order
    }

    /// `a / b`, i.e. a·b⁻¹.
    pub fn div(self, a: u32, b: u32) -> u32 {
        self.mul(a, self.inv(b))
    }

    pub fn pow(self, a: u32, d: u32) -> u32 {
        ((a as u64 * d as u64) % self.order as u64) as u32
    }

    pub fn elements(self) -> impl Iterator<Item = u32> {
        0..self.order
    }

    pub fn divisors(self) -> Vec<u32> {
        (1..=self.order).filter(|d| self.order % d == 0).collect()
    }

    pub fn check_divisor(self, d: u32) -> Result<()> {
        if d == 0 || self.order % d != 0 {
            return usage(format!("{d} does not divide the group order {}", self.order));
        }
        Ok(())
    }

    /// The image Γ^d of σ ↦ σ^d, identified with Z/(N/d) via ξ^d ↦ generator.
    pub fn image(self, d: u32) -> Result<CyclicGroup> {
        self.check_divisor(d)?;
        CyclicGroup::new(self.order / d)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    X0,
    G(u32),
}

impl Letter {
    pub const X1: Letter = Letter::G(0);

    pub fn token(self) -> i64 {
        match self {
            Letter::X0 => -1,
            Letter::G(k) => k as i64,
        }
    }

    pub fn from_token(t: i64, group: CyclicGroup) -> Result<Letter> {
        match t {
            -1 => Ok(Letter::X0),
            k if k >= 0 && (k as u64) < group.order() as u64 => Ok(Letter::G(k as u32)),
            _ => usage(format!("letter token {t} out of range for N={}", group.order())),
        }
    }

    pub fn is_x0(self) -> bool {
        self == Letter::X0
    }

    /// Substitution t_σ: shifts the residue of Γ-letters by σ.
    pub fn shift(self, sigma: u32, group: CyclicGroup) -> Letter {
        match self {
            Letter::X0 => Letter::X0,
            Letter::G(k) => Letter::G(group.mul(k, sigma)),
        }
    }

    /// p^d_* on one letter: returns the scalar factor and the image over Γ^d.
    pub fn pushforward(self, d: u32, group: CyclicGroup) -> Result<(i64, Letter)> {
        let target = group.image(d)?;
        Ok(match self {
            Letter::X0 => (d as i64, Letter::X0),
            Letter::G(k) => (1, Letter::G(k % target.order())),
        })
    }

    /// i_d^* on one letter: `None` when the letter is killed.
    pub fn pullback(self, d: u32, group: CyclicGroup) -> Result<Option<Letter>> {
        group.check_divisor(d)?;
        Ok(match self {
            Letter::X0 => Some(Letter::X0),
            Letter::G(k) if k % d == 0 => Some(Letter::G(k / d)),
            Letter::G(_) => None,
        })
    }
}

/// A word over X. Ordered by weight, then depth, then letter tokens.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<Letter>);

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight().cmp(&other.weight()).then(self.depth().cmp(&other.depth())).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn letter(l: Letter) -> Word {
        Word(vec![l])
    }

    pub fn from_tokens(tokens: &[i64], group: CyclicGroup) -> Result<Word> {
        tokens.iter().map(|&t| Letter::from_token(t, group)).collect::<Result<Vec<_>>>().map(Word)
    }

    pub fn tokens(&self) -> Vec<i64> {
        self.0.iter().map(|l| l.token()).collect()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn weight(&self) -> usize {
        self.0.len()
    }

    /// Number of Γ-letters.
    pub fn depth(&self) -> usize {
        self.0.iter().filter(|l| !l.is_x0()).count()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn ends_with_x0(&self) -> bool {
        self.0.last() == Some(&Letter::X0)
    }

    pub fn starts_with_x1(&self) -> bool {
        self.0.first() == Some(&Letter::X1)
    }

    /// Sum of the residues of the Γ-letters.
    pub fn total_color(&self, group: CyclicGroup) -> u32 {
        self.0.iter().fold(0, |acc, l| match l {
            Letter::X0 => acc,
            Letter::G(k) => group.mul(acc, *k),
        })
    }

    pub fn to_y(&self) -> Option<YWord> {
        if self.ends_with_x0() {
            return None;
        }
        let mut out = Vec::new();
        let mut run = 1;
        for l in &self.0 {
            match l {
                Letter::X0 => run += 1,
                Letter::G(k) => {
                    out.push(YLetter { n: run, nu: *k });
                    run = 1;
                }
            }
        }
        Some(YWord(out))
    }

    /// Partial products of the colors, x₀ runs untouched.
    pub fn ps(&self, group: CyclicGroup) -> Word {
        let mut acc = 0;
        Word(
            self.0
                .iter()
                .map(|l| match l {
                    Letter::X0 => Letter::X0,
                    Letter::G(k) => {
                        acc = group.mul(acc, *k);
                        Letter::G(acc)
                    }
                })
                .collect(),
        )
    }

    /// Successive quotients of the colors, inverse of [`Word::ps`].
    pub fn qs(&self, group: CyclicGroup) -> Word {
        let mut prev = 0;
        Word(
            self.0
                .iter()
                .map(|l| match l {
                    Letter::X0 => Letter::X0,
                    Letter::G(k) => {
                        let q = group.div(*k, prev);
                        prev = *k;
                        Letter::G(q)
                    }
                })
                .collect(),
        )
    }

    pub fn t_sigma(&self, sigma: u32, group: CyclicGroup) -> Word {
        Word(self.0.iter().map(|l| l.shift(sigma, group)).collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for l in &self.0 {
            match l {
                Letter::X0 => write!(f, "x0")?,
                Letter::G(k) => write!(f, "x[{k}]")?,
            }
        }
        Ok(())
    }
}

/// y_{n,ν} = x₀^{n−1}x_ν.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct YLetter {
    pub n: u32,
    pub nu: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct YWord(pub Vec<YLetter>);

impl YWord {
    pub fn weight(&self) -> usize {
        self.0.iter().map(|y| y.n as usize).sum()
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn total_color(&self, group: CyclicGroup) -> u32 {
        self.0.iter().fold(0, |acc, y| group.mul(acc, y.nu))
    }

    pub fn to_x(&self) -> Word {
        let mut v = Vec::with_capacity(self.weight());
        for y in &self.0 {
            v.extend(std::iter::repeat(Letter::X0).take(y.n as usize - 1));
            v.push(Letter::G(y.nu));
        }
        Word(v)
    }

    pub fn ps(&self, group: CyclicGroup) -> YWord {
        self.to_x().ps(group).to_y().expect("ps preserves Y-words")
    }

    pub fn qs(&self, group: CyclicGroup) -> YWord {
        self.to_x().qs(group).to_y().expect("qs preserves Y-words")
    }

    /// Convergent words are those not starting with y_{1,1}.
    pub fn is_convergent(&self) -> bool {
        self.0.first() != Some(&YLetter { n: 1, nu: 0 })
    }
}

/// All X-words of the given weight, in monomial order.
pub fn x_words(group: CyclicGroup, weight: usize) -> Vec<Word> {
    let mut alphabet = vec![Letter::X0];
    alphabet.extend(group.elements().map(Letter::G));
    let mut out = vec![Word::empty()];
    for _ in 0..weight {
        let mut next = Vec::with_capacity(out.len() * alphabet.len());
        for w in &out {
            for &l in &alphabet {
                let mut v = w.0.clone();
                v.push(l);
                next.push(Word(v));
            }
        }
        out = next;
    }
    out.sort();
    out
}

/// All Y-words of the given weight (as X-words), in monomial order.
pub fn y_words(group: CyclicGroup, weight: usize) -> Vec<Word> {
    let mut out: Vec<Word> = x_words(group, weight).into_iter().filter(|w| !w.ends_with_x0()).collect();
    out.sort();
    out
}
