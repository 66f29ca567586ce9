//! Numeric values of multiple polylogarithms at roots of unity.
//!
//! Values come from partial sums L^N evaluated along a geometric ladder of
//! bounds N and extrapolated in t = log N. All arithmetic is double-double.

use std::collections::HashMap;

use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Zero};
use twofloat::TwoFloat;

use crate::dmr::{check_dmr, phi_star, point_residuals, DmrPoint, Report, Variant};
use crate::error::{usage, Error, Result};
use crate::linalg;
use crate::regularize::{grouplike_lift, Prescribed};
use crate::series::{Alphabet, Coproduct, Series};
use crate::words::{y_words, CyclicGroup, Letter, Word, YLetter, YWord};
use crate::{CNum, QSeries, Real};

type Q = BigRational;

/// Double-double elementary functions.
pub mod dd {
    use super::Real;
    use twofloat::TwoFloat;

    pub fn real(x: f64) -> Real {
        TwoFloat::from(x)
    }

    pub fn pi() -> Real {
        twofloat::consts::PI
    }

    pub fn ln2() -> Real {
        twofloat::consts::LN_2
    }

    /// sin and cos by Taylor series; accurate for |x| ≤ 4.
    pub fn sin_cos(x: Real) -> (Real, Real) {
        let x2 = x * x;
        let mut term = x;
        let mut sin = x;
        let mut k = 1.0;
        while term.hi().abs() > 1e-34 {
            term = -term * x2 / real((k + 1.0) * (k + 2.0));
            sin += term;
            k += 2.0;
        }
        let mut term = real(1.0);
        let mut cos = real(1.0);
        let mut k = 0.0;
        while term.hi().abs() > 1e-34 {
            term = -term * x2 / real((k + 1.0) * (k + 2.0));
            cos += term;
            k += 2.0;
        }
        (sin, cos)
    }

    /// Natural logarithm via 2·atanh((m−1)/(m+1)) after binary scaling.
    pub fn ln(x: Real) -> Real {
        assert!(x.hi() > 0.0, "ln of a non-positive number");
        let mut e = x.hi().log2().floor() as i32;
        let mut m = x / real(2f64.powi(e));
        if m.hi() > std::f64::consts::SQRT_2 {
            m /= real(2.0);
            e += 1;
        }
        let z = (m - real(1.0)) / (m + real(1.0));
        let z2 = z * z;
        let mut power = z;
        let mut sum = z;
        let mut k = 1.0;
        loop {
            power *= z2;
            k += 2.0;
            let t = power / real(k);
            sum += t;
            if t.hi().abs() < 1e-34 {
                break;
            }
        }
        real(2.0) * sum + real(e as f64) * ln2()
    }
}

fn cnum(re: Real, im: Real) -> CNum {
    Complex::new(re, im)
}

fn creal(x: Real) -> CNum {
    cnum(x, TwoFloat::zero())
}

/// ι(ξᵏ) = exp(2iπk/N).
pub fn root_of_unity(group: CyclicGroup, k: u32) -> CNum {
    let n = group.order() as i64;
    let k = (k as i64).rem_euclid(n);
    // reduce the angle to (−π, π]
    let num = if 2 * k > n { k - n } else { k };
    let theta = dd::real(2.0) * dd::pi() * dd::real(num as f64) / dd::real(n as f64);
    let (s, c) = dd::sin_cos(theta);
    cnum(c, s)
}

/// ζ(2) = π²/6 for N ≤ 2, 2iπ for N ≥ 3: the value of ⟨Φ|α⟩ on the numeric Φ.
pub fn numeric_lambda(group: CyclicGroup) -> CNum {
    if group.order() <= 2 {
        creal(dd::pi() * dd::pi() / dd::real(6.0))
    } else {
        cnum(TwoFloat::zero(), dd::real(2.0) * dd::pi())
    }
}

/// Ladder and fit parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct NumericConfig {
    /// Smallest bound of the ladder.
    pub start: u64,
    /// Ladder points per doubling of N.
    pub per_octave: u32,
    /// Number of ladder points.
    pub points: usize,
    /// Remainder terms t^j/N^k are used for k = 1..=orders.
    pub orders: usize,
    /// Tolerance on the extrapolation error estimate.
    pub tol: f64,
}

impl Default for NumericConfig {
    fn default() -> Self {
        NumericConfig { start: 1000, per_octave: 8, points: 65, orders: 3, tol: 1e-8 }
    }
}

impl NumericConfig {
    /// Defaults overridden by DMR_LADDER_START, DMR_LADDER_PER_OCTAVE,
    /// DMR_LADDER_POINTS, DMR_FIT_ORDERS and DMR_TOL when set.
    pub fn from_env() -> Self {
        fn var<T: std::str::FromStr>(name: &str) -> Option<T> {
            std::env::var(name).ok().and_then(|v| v.parse().ok())
        }
        let d = NumericConfig::default();
        NumericConfig {
            start: var("DMR_LADDER_START").unwrap_or(d.start),
            per_octave: var("DMR_LADDER_PER_OCTAVE").unwrap_or(d.per_octave),
            points: var("DMR_LADDER_POINTS").unwrap_or(d.points),
            orders: var("DMR_FIT_ORDERS").unwrap_or(d.orders),
            tol: var("DMR_TOL").unwrap_or(d.tol),
        }
    }

    /// Geometric ladder rounded to multiples of the group order, so that the
    /// oscillating factors z^N are all 1 at the sample points.
    pub fn ladder(&self, group: CyclicGroup) -> Vec<u64> {
        let m = group.order() as u64;
        let mut out: Vec<u64> = Vec::with_capacity(self.points);
        for j in 0..self.points {
            let x = self.start as f64 * 2f64.powf(j as f64 / self.per_octave as f64);
            let mut n = ((x / m as f64).round() as u64).max(1) * m;
            if let Some(&last) = out.last() {
                if n <= last {
                    n = last + m;
                }
            }
            out.push(n);
        }
        out
    }
}

/// Exact L^N_{s}(σ) for N ≤ 2 (all colors ±1).
pub fn partial_sum_exact(group: CyclicGroup, s: &[u32], colors: &[u32], bound: u64) -> Result<Q> {
    if group.order() > 2 {
        return usage("exact partial sums need N ≤ 2");
    }
    check_composition(group, s, colors)?;
    // acc[i] = sum over the last i indices below the current n
    let r = s.len();
    let mut acc: Vec<Q> = vec![Q::zero(); r + 1];
    acc[0] = Q::one();
    for n in 1..bound {
        for i in (1..=r).rev() {
            let (si, ci) = (s[r - i], colors[r - i]);
            let mut t = Q::new(1.into(), num_bigint::BigInt::from(n).pow(si));
            if ci == 1 && n % 2 == 1 {
                t = -t;
            }
            acc[i] = &acc[i] + t * &acc[i - 1];
        }
    }
    Ok(acc[r].clone())
}

fn check_composition(group: CyclicGroup, s: &[u32], colors: &[u32]) -> Result<()> {
    if s.len() != colors.len() {
        return usage("composition and colors differ in length");
    }
    if s.iter().any(|&x| x == 0) {
        return usage("composition entries must be ≥ 1");
    }
    if colors.iter().any(|&c| c >= group.order()) {
        return usage("color out of range");
    }
    Ok(())
}

pub fn y_word_of(s: &[u32], colors: &[u32]) -> YWord {
    YWord(s.iter().zip(colors).map(|(&n, &nu)| YLetter { n, nu }).collect())
}

/// Partial sums L^N for every requested word at every ladder bound, in a
/// single pass over n. Words are sequences of (s, σ); the result is indexed
/// `[word][ladder point]`.
pub fn partial_sums(group: CyclicGroup, words: &[YWord], ladder: &[u64]) -> Vec<Vec<CNum>> {
    // close under suffixes; index 0 is the empty word
    let mut index: HashMap<Vec<YLetter>, usize> = HashMap::new();
    let mut nodes: Vec<(YLetter, usize, usize)> = Vec::new();
    index.insert(Vec::new(), 0);
    let mut order_of: Vec<usize> = Vec::new();
    fn intern(
        w: &[YLetter],
        index: &mut HashMap<Vec<YLetter>, usize>,
        nodes: &mut Vec<(YLetter, usize, usize)>,
    ) -> usize {
        if let Some(&i) = index.get(w) {
            return i;
        }
        let tail = intern(&w[1..], index, nodes);
        nodes.push((w[0], tail, w.len()));
        let id = nodes.len();
        index.insert(w.to_vec(), id);
        id
    }
    for w in words {
        order_of.push(intern(&w.0, &mut index, &mut nodes));
    }
    // update longest words first so suffixes still hold the sum over indices < n
    let mut update: Vec<usize> = (1..=nodes.len()).collect();
    update.sort_by_key(|&i| std::cmp::Reverse(nodes[i - 1].2));
    let max_s = nodes.iter().map(|(y, _, _)| y.n).max().unwrap_or(1) as usize;
    let roots: Vec<CNum> = group.elements().map(|k| root_of_unity(group, k)).collect();
    let order = group.order() as u64;
    let mut acc: Vec<CNum> = vec![CNum::zero(); nodes.len() + 1];
    acc[0] = CNum::one();
    let mut out = vec![Vec::with_capacity(ladder.len()); words.len()];
    let mut next = 0;
    let last = ladder.last().copied().unwrap_or(0);
    let mut inv_pow = vec![TwoFloat::one(); max_s + 1];
    for n in 1..last {
        while next < ladder.len() && ladder[next] == n {
            for (o, &id) in out.iter_mut().zip(&order_of) {
                o.push(acc[id]);
            }
            next += 1;
        }
        let inv = TwoFloat::one() / TwoFloat::from(n as f64);
        for s in 1..=max_s {
            inv_pow[s] = inv_pow[s - 1] * inv;
        }
        for &i in &update {
            let (y, tail, _) = nodes[i - 1];
            let z = roots[((y.nu as u64 * (n % order)) % order) as usize];
            let a = acc[tail];
            let f = inv_pow[y.n as usize];
            let t = cnum(z.re * a.re - z.im * a.im, z.re * a.im + z.im * a.re);
            acc[i] = cnum(acc[i].re + t.re * f, acc[i].im + t.im * f);
        }
    }
    while next < ladder.len() && ladder[next] == last {
        for (o, &id) in out.iter_mut().zip(&order_of) {
            o.push(acc[id]);
        }
        next += 1;
    }
    out
}

/// A fitted asymptotic expansion S_N ≈ P(log N) + Σ_k Q_k(log N)/N^k.
#[derive(Clone, Debug, PartialEq)]
pub struct AsymptoticFit {
    /// Coefficients of P, constant term first.
    pub poly: Vec<CNum>,
    /// Largest deviation of the fit from the samples.
    pub residual: f64,
    /// Estimated error on the coefficients of P, from refitting on the upper
    /// part of the ladder.
    pub error: f64,
}

impl AsymptoticFit {
    pub fn constant(&self) -> CNum {
        self.poly[0]
    }
}

fn fit_once(ladder: &[u64], values: &[CNum], degree: usize, j_max: usize, orders: usize) -> Result<(Vec<CNum>, f64)> {
    let ncols = degree + 1 + orders * (j_max + 1);
    let rows: Vec<Vec<Real>> = ladder
        .iter()
        .map(|&n| {
            let t = dd::ln(TwoFloat::from(n as f64));
            let inv = TwoFloat::one() / TwoFloat::from(n as f64);
            let mut row = Vec::with_capacity(ncols);
            let mut tp = vec![TwoFloat::one()];
            for i in 1..=degree.max(j_max) {
                tp.push(tp[i - 1] * t);
            }
            row.extend_from_slice(&tp[..=degree]);
            let mut ik = TwoFloat::one();
            for _ in 0..orders {
                ik *= inv;
                for &tj in &tp[..=j_max] {
                    row.push(tj * ik);
                }
            }
            row
        })
        .collect();
    // scale columns to unit max norm
    let scale: Vec<Real> = (0..ncols)
        .map(|j| rows.iter().map(|r| r[j].abs()).fold(TwoFloat::zero(), |a, b| if b > a { b } else { a }))
        .collect();
    let a: Vec<Vec<CNum>> = rows.iter().map(|r| r.iter().zip(&scale).map(|(x, s)| creal(*x / *s)).collect()).collect();
    let x = linalg::least_squares(&a, values, ncols)?;
    let residual = a
        .iter()
        .zip(values)
        .map(|(r, v)| {
            let mut f = CNum::zero();
            for (c, xi) in r.iter().zip(&x) {
                f = f + *c * *xi;
            }
            crate::Scalar::magnitude(&(f - *v))
        })
        .fold(0.0, f64::max);
    let poly = x[..=degree].iter().zip(&scale).map(|(c, s)| cnum(c.re / *s, c.im / *s)).collect();
    Ok((poly, residual))
}

/// Least-squares fit over {tⁱ : i ≤ degree} ∪ {tʲ/Nᵏ : j ≤ max(degree+2, depth), k ≤ orders}.
pub fn as_extract(
    ladder: &[u64],
    values: &[CNum],
    degree: usize,
    depth: usize,
    orders: usize,
) -> Result<AsymptoticFit> {
    let j_max = (degree + 2).max(depth);
    let unknowns = degree + 1 + orders * (j_max + 1);
    if ladder.len() != values.len() {
        return usage("ladder and samples differ in length");
    }
    if ladder.len() < 4 * unknowns {
        return usage(format!("{} ladder points for {unknowns} unknowns; need 4 per unknown", ladder.len()));
    }
    if ladder.windows(2).any(|w| w[0] >= w[1]) {
        return usage("ladder must be strictly increasing");
    }
    let (poly, residual) = fit_once(ladder, values, degree, j_max, orders)?;
    let cut = ladder.len() / 4;
    let (alt, _) = fit_once(&ladder[cut..], &values[cut..], degree, j_max, orders.min(2))?;
    let error = poly.iter().zip(&alt).map(|(a, b)| crate::Scalar::magnitude(&(*a - *b))).fold(0.0, f64::max);
    Ok(AsymptoticFit { poly, residual, error })
}

/// The limit of a convergent multiple polylogarithm, with an error estimate.
pub fn polylog_value(group: CyclicGroup, s: &[u32], colors: &[u32], cfg: &NumericConfig) -> Result<(CNum, f64)> {
    check_composition(group, s, colors)?;
    if s.is_empty() {
        return Ok((CNum::one(), 0.0));
    }
    if s[0] == 1 && colors[0] == 0 {
        return usage("divergent: the first entry is (1, 1)");
    }
    let w = y_word_of(s, colors);
    let ladder = cfg.ladder(group);
    let sums = partial_sums(group, &[w], &ladder);
    let fit = as_extract(&ladder, &sums[0], 0, s.len(), cfg.orders)?;
    if fit.error > cfg.tol {
        return Err(Error::Precision(format!("extrapolation error {:.3e} above {:.1e}", fit.error, cfg.tol)));
    }
    Ok((fit.constant(), fit.error))
}

/// Generating series ℒ_N of the partial sums, exactly, for N ≤ 2:
/// the ordered product 𝒴_{N−1}(1/(N−1))⋯𝒴_1(1/1) truncated at `trunc`.
pub fn partial_sum_series_exact(group: CyclicGroup, bound: u64, trunc: usize) -> Result<QSeries> {
    if group.order() > 2 {
        return usage("exact partial sums need N ≤ 2");
    }
    let mut out = Series::one(group, Alphabet::Y, trunc);
    for n in (1..bound).rev() {
        let mut factor = Series::one(group, Alphabet::Y, trunc);
        for s in 1..=trunc as u32 {
            for nu in group.elements() {
                let mut c = Q::new(1.into(), num_bigint::BigInt::from(n).pow(s));
                if nu == 1 && n % 2 == 1 {
                    c = -c;
                }
                factor.add_term(YWord(vec![YLetter { n: s, nu }]).to_x(), c);
            }
        }
        out = &out * &factor;
    }
    Ok(out)
}

/// The numeric series of a group: Φ (= I) and both constructions of ℒ.
#[derive(Clone, Debug)]
pub struct NumericPhi {
    pub group: CyclicGroup,
    /// Convergent part of ℒ from extrapolated partial sums.
    pub l_cv: Series<CNum>,
    /// The grouplike series over X with zero x₀ and x₁ coefficients.
    pub phi: Series<CNum>,
    /// Φ_corr·qs π_Y(Φ).
    pub l_formula: Series<CNum>,
    /// Δ*-grouplike lift of ℒ_cv with zero y_{1,1} coefficient.
    pub l_direct: Series<CNum>,
    /// Largest extrapolation error estimate among the convergent values.
    pub error: f64,
}

impl NumericPhi {
    /// Max coefficient difference of the two constructions of ℒ.
    pub fn l_discrepancy(&self) -> f64 {
        (&self.l_formula - &self.l_direct).max_magnitude()
    }

    pub fn point(&self) -> DmrPoint<CNum> {
        DmrPoint { phi: self.phi.clone(), lambda: numeric_lambda(self.group), variant: Variant::Dmrd }
    }
}

/// Numeric caps: weight 5 for N = 1, weight 3 for N ≤ 4.
pub fn numeric_cap(group: CyclicGroup) -> usize {
    match group.order() {
        1 => 5,
        2..=4 => 3,
        _ => 2,
    }
}

pub fn numeric_phi(group: CyclicGroup, trunc: usize, cfg: &NumericConfig) -> Result<NumericPhi> {
    if trunc > numeric_cap(group) {
        return usage(format!("weight {trunc} beyond the numeric cap {} for N={}", numeric_cap(group), group.order()));
    }
    let words: Vec<Word> = (1..=trunc).flat_map(|w| y_words(group, w)).filter(|w| !w.starts_with_x1()).collect();
    let ywords: Vec<YWord> = words.iter().map(|w| w.to_y().expect("Y-word")).collect();
    let ladder = cfg.ladder(group);
    let sums = partial_sums(group, &ywords, &ladder);
    let mut l_cv = Series::one(group, Alphabet::Y, trunc);
    let mut error: f64 = 0.0;
    for ((w, y), samples) in words.iter().zip(&ywords).zip(&sums) {
        let fit = as_extract(&ladder, samples, 0, y.depth(), cfg.orders)?;
        error = error.max(fit.error);
        l_cv.add_term(w.clone(), fit.constant());
    }
    if error > cfg.tol {
        return Err(Error::Precision(format!("extrapolation error {error:.3e} above {:.1e}", cfg.tol)));
    }
    let i_cv = l_cv.ps().with_alphabet(Alphabet::X);
    let phi = grouplike_lift(&i_cv, Coproduct::Delta, &Prescribed::zero())?;
    let l_formula = phi_star(&phi)?;
    let l_direct = grouplike_lift(&l_cv, Coproduct::DeltaStar, &Prescribed::zero())?;
    Ok(NumericPhi { group, l_cv, phi, l_formula, l_direct, error })
}

/// check_dmr on the numeric Φ in the fiber of [`numeric_lambda`].
pub fn check_relations(np: &NumericPhi, tol: f64) -> Result<Report> {
    check_dmr(&np.phi, &numeric_lambda(np.group), Variant::Dmrd, tol)
}

/// One convergent distribution identity Σ_{τᵢ^d = σᵢ} L_s(τ) = d^{r−Σs} L_s(σ).
#[derive(Clone, Debug)]
pub struct DistributionRow {
    /// Y-word over the subgroup of d-th powers, colors as residues mod N/d.
    pub word: YWord,
    pub lhs: CNum,
    pub rhs: CNum,
}

impl DistributionRow {
    pub fn error(&self) -> f64 {
        crate::Scalar::magnitude(&(self.lhs - self.rhs))
    }
}

#[derive(Clone, Debug)]
pub struct DistributionReport {
    pub d: u32,
    pub rows: Vec<DistributionRow>,
    /// Largest residual of the regularized identity on the numeric Φ.
    pub series_residual: f64,
    pub max_error: f64,
    pub passed: bool,
}

/// Checks the distribution relations for d | N coefficientwise on convergent
/// words up to `trunc`, and the series identity on the numeric Φ.
pub fn distribution_numeric_check(
    group: CyclicGroup,
    d: u32,
    trunc: usize,
    cfg: &NumericConfig,
    tol: f64,
) -> Result<DistributionReport> {
    let target = group.image(d)?;
    let m = target.order();
    let mut words = Vec::new();
    for w in 1..=trunc {
        for x in y_words(target, w) {
            let y = x.to_y().expect("Y-word");
            if y.0[0] == (YLetter { n: 1, nu: 0 }) {
                continue;
            }
            words.push(y);
        }
    }
    // preimages: residues k of Γ with k ≡ j mod N/d
    let mut all: Vec<YWord> = Vec::new();
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for y in &words {
        let mut lifts: Vec<Vec<YLetter>> = vec![Vec::new()];
        for l in &y.0 {
            let mut next = Vec::new();
            for pre in &lifts {
                for k in group.elements().filter(|k| k % m == l.nu) {
                    let mut p = pre.clone();
                    p.push(YLetter { n: l.n, nu: k });
                    next.push(p);
                }
            }
            lifts = next;
        }
        let mut idx = Vec::new();
        for p in lifts {
            idx.push(all.len());
            all.push(YWord(p));
        }
        // σ itself as an element of Γ: residue d·j
        idx.push(all.len());
        all.push(YWord(y.0.iter().map(|l| YLetter { n: l.n, nu: l.nu * d }).collect()));
        groups.push(idx);
    }
    let ladder = cfg.ladder(group);
    let sums = partial_sums(group, &all, &ladder);
    let mut values = Vec::with_capacity(all.len());
    for (w, s) in all.iter().zip(&sums) {
        values.push(as_extract(&ladder, s, 0, w.depth(), cfg.orders)?.constant());
    }
    let mut rows = Vec::new();
    for (y, idx) in words.iter().zip(&groups) {
        let (last, pre) = idx.split_last().expect("nonempty");
        let mut lhs = CNum::zero();
        for &i in pre {
            lhs = lhs + values[i];
        }
        let exp = y.depth() as i32 - y.weight() as i32;
        let rhs = values[*last] * creal(TwoFloat::from(d as f64).powi(exp));
        rows.push(DistributionRow { word: y.clone(), lhs, rhs });
    }
    let np = numeric_phi(group, trunc.min(numeric_cap(group)), cfg)?;
    let r = point_residuals(&np.phi, &numeric_lambda(group), Variant::Dmrd, 0..=np.phi.trunc())?;
    let fam = format!("distribution/d={d}");
    let series_residual =
        r.iter().filter(|((f, _), _)| *f == fam).map(|(_, c)| crate::Scalar::magnitude(c)).fold(0.0, f64::max);
    let max_error = rows.iter().map(|r| r.error()).fold(series_residual, f64::max);
    Ok(DistributionReport { d, rows, series_residual, max_error, passed: max_error <= tol })
}

/// L₁(ξᵏ) − L₁(ξ⁻ᵏ) for one k, against both candidate closed forms.
#[derive(Clone, Debug)]
pub struct WeightOneRow {
    pub k: u32,
    pub difference: CNum,
    /// Compared with iπ(N−2k)/N.
    pub error_scaled: f64,
    /// Compared with iπ(N−2k).
    pub error_unscaled: f64,
    /// difference(k)/difference(1), compared with (N−2k)/(N−2).
    pub ratio: CNum,
    pub ratio_error: f64,
}

pub fn weight_one_numeric_check(group: CyclicGroup, cfg: &NumericConfig) -> Result<Vec<WeightOneRow>> {
    let n = group.order();
    if n < 3 {
        return usage("weight-one relations need N ≥ 3");
    }
    let ks: Vec<u32> = (1..n).filter(|&k| 2 * k < n).collect();
    let mut ws = Vec::new();
    for &k in &ks {
        ws.push(y_word_of(&[1], &[k]));
        ws.push(y_word_of(&[1], &[group.inv(k)]));
    }
    let ladder = cfg.ladder(group);
    let sums = partial_sums(group, &ws, &ladder);
    let vals: Vec<CNum> =
        sums.iter().map(|s| as_extract(&ladder, s, 0, 1, cfg.orders).map(|f| f.constant())).collect::<Result<_>>()?;
    let diffs: Vec<CNum> = vals.chunks(2).map(|c| c[0] - c[1]).collect();
    let pi = dd::pi();
    Ok(ks
        .iter()
        .zip(&diffs)
        .map(|(&k, &diff)| {
            let m = TwoFloat::from((n as i64 - 2 * k as i64) as f64);
            let scaled = cnum(TwoFloat::zero(), pi * m / TwoFloat::from(n as f64));
            let unscaled = cnum(TwoFloat::zero(), pi * m);
            let ratio = diff / diffs[0];
            let expected = creal(m / TwoFloat::from((n - 2) as f64));
            WeightOneRow {
                k,
                difference: diff,
                error_scaled: crate::Scalar::magnitude(&(diff - scaled)),
                error_unscaled: crate::Scalar::magnitude(&(diff - unscaled)),
                ratio,
                ratio_error: crate::Scalar::magnitude(&(ratio - expected)),
            }
        })
        .collect())
}

/// Converts a complex double-double to f64 parts.
pub fn to_f64(z: &CNum) -> (f64, f64) {
    (z.re.hi() + z.re.lo(), z.im.hi() + z.im.lo())
}

/// Coefficient ⟨s|w⟩ for a letter sequence given by tokens.
pub fn coeff_of(s: &Series<CNum>, letters: &[Letter]) -> CNum {
    s.coeff(&Word(letters.to_vec()))
}
