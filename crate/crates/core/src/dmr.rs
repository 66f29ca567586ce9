//! Double shuffle and distribution relations: point predicates, tangent
//! spaces and their graded bases.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::RangeInclusive;

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{usage, Error, Result};
use crate::lie::x_lie_basis;
use crate::linalg::{self, Echelon};
use crate::mt::{exp_s, ihara, kernel_of_power, pullback, pushforward};
use crate::scalar::Scalar;
use crate::series::{add_into, Alphabet, Coproduct, Series, Tensor};
use crate::words::{CyclicGroup, Letter, Word, YLetter, YWord};

type Q = BigRational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    /// Double shuffle only.
    Dmr,
    /// Double shuffle and the weight-one relations.
    Dmrp,
    /// Double shuffle, weight-one and distribution relations.
    Dmrd,
}

impl Variant {
    pub fn has_weight_one(self) -> bool {
        self != Variant::Dmr
    }

    pub fn has_distribution(self) -> bool {
        self == Variant::Dmrd
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Dmr => "dmr",
            Variant::Dmrp => "dmrp",
            Variant::Dmrd => "dmrd",
        })
    }
}

/// The tangent spaces at 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TangentKind {
    Dmr,
    Dmr0,
    Dmrd,
    Dmrd0,
}

impl TangentKind {
    pub fn has_parity(self) -> bool {
        matches!(self, TangentKind::Dmr0 | TangentKind::Dmrd0)
    }

    pub fn has_distribution(self) -> bool {
        matches!(self, TangentKind::Dmrd | TangentKind::Dmrd0)
    }

    /// The tangent space acting on points of the given variant.
    pub fn acting_on(variant: Variant) -> TangentKind {
        if variant.has_distribution() {
            TangentKind::Dmrd0
        } else {
            TangentKind::Dmr0
        }
    }
}

impl fmt::Display for TangentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TangentKind::Dmr => "dmr",
            TangentKind::Dmr0 => "dmr0",
            TangentKind::Dmrd => "dmrd",
            TangentKind::Dmrd0 => "dmrd0",
        })
    }
}

/// A candidate point of DMR_λ (or its variants).
#[derive(Clone, Debug, PartialEq)]
pub struct DmrPoint<C> {
    pub phi: Series<C>,
    pub lambda: C,
    pub variant: Variant,
}

impl<C: Scalar> DmrPoint<C> {
    pub fn group(&self) -> CyclicGroup {
        self.phi.group()
    }

    pub fn check(&self, tol: f64) -> Result<Report> {
        check_dmr(&self.phi, &self.lambda, self.variant, tol)
    }
}

/// Weight of the normalization element α.
pub fn alpha_weight(group: CyclicGroup) -> usize {
    if group.order() <= 2 {
        2
    } else {
        1
    }
}

/// α = x₀x₁ for N ≤ 2, 2N/(N−2)(x_ξ − x_{ξ⁻¹}) for N ≥ 3.
pub fn alpha<C: Scalar>(group: CyclicGroup, trunc: usize) -> Series<C> {
    let n = group.order() as i64;
    let mut a = Series::zero(group, Alphabet::X, trunc);
    if n <= 2 {
        a.add_term(Word(vec![Letter::X0, Letter::X1]), C::one());
    } else {
        let c = C::from_ratio(2 * n, n - 2);
        a.add_term(Word::letter(Letter::G(1)), c.clone());
        a.add_term(Word::letter(Letter::G(group.inv(1))), -c);
    }
    a
}

fn y_word(letters: &[(u32, u32)]) -> Word {
    YWord(letters.iter().map(|&(n, nu)| YLetter { n, nu }).collect()).to_x()
}

fn x1_power(n: usize) -> Word {
    Word(vec![Letter::X1; n])
}

/// Σ_{n≥2} (−1)^{n−1}/n ⟨u|y_{n,1}⟩ y_{1,1}ⁿ.
fn corr_exponent<C: Scalar>(u: &Series<C>) -> Series<C> {
    let mut out = Series::zero(u.group(), Alphabet::Y, u.trunc());
    for n in 2..=u.trunc() {
        let c = u.coeff(&y_word(&[(n as u32, 0)]));
        let sign = if n % 2 == 0 { -1 } else { 1 };
        out.add_term(x1_power(n), c * C::from_ratio(sign, n as i64));
    }
    out
}

pub fn phi_corr<C: Scalar>(phi: &Series<C>) -> Result<Series<C>> {
    corr_exponent(&phi.pi_y()).exp()
}

/// Φ_* = Φ_corr · qs π_Y(Φ).
pub fn phi_star<C: Scalar>(phi: &Series<C>) -> Result<Series<C>> {
    if phi.constant() != C::one() {
        return usage("Φ_* needs constant term 1");
    }
    Ok(&phi_corr(phi)? * &phi.pi_y().qs())
}

pub fn psi_corr<C: Scalar>(psi: &Series<C>) -> Series<C> {
    corr_exponent(&psi.pi_y())
}

/// ψ_* = qs π_Y(ψ) + ψ_corr.
pub fn psi_star<C: Scalar>(psi: &Series<C>) -> Series<C> {
    &psi.pi_y().qs() + &psi_corr(psi)
}

/// Residual entries keyed by (constraint family, entry label).
pub type Residuals<C> = BTreeMap<(String, String), C>;

fn put<C: Scalar>(r: &mut Residuals<C>, family: &str, key: String, c: C) {
    add_into(r, (family.to_string(), key), c);
}

fn put_tensor<C: Scalar>(r: &mut Residuals<C>, family: &str, t: &Tensor<C>) {
    for ((u, v), c) in t.terms() {
        put(r, family, format!("{u}|{v}"), c.clone());
    }
}

fn put_series<C: Scalar>(r: &mut Residuals<C>, family: &str, s: &Series<C>) {
    for (w, c) in s.iter() {
        put(r, family, w.to_string(), c.clone());
    }
}

/// Weight-w part of Δu − u⊗u.
fn grouplike_defect_at<C: Scalar>(u: &Series<C>, kind: Coproduct, w: usize) -> Tensor<C> {
    let mut t = u.homogeneous(w).coproduct(kind);
    for k in 0..=w {
        t = &t - &Tensor::product(&u.homogeneous(k), &u.homogeneous(w - k));
    }
    t
}

fn weight_one_pairs(group: CyclicGroup) -> Vec<u32> {
    let n = group.order();
    if n < 3 {
        return Vec::new();
    }
    (2..n).filter(|&k| 2 * k < n).collect()
}

fn family_distribution(d: u32) -> String {
    format!("distribution/d={d}")
}

/// The constraint families checked for a point of the given variant.
pub fn point_families(group: CyclicGroup, variant: Variant) -> Vec<String> {
    let mut f: Vec<String> = ["unit", "letters", "shuffle-grouplike", "stuffle-grouplike", "normalization"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    if variant.has_weight_one() && group.order() >= 3 {
        f.push("weight-one".into());
    }
    if variant.has_distribution() {
        f.extend(group.divisors().into_iter().map(family_distribution));
    }
    f
}

/// Residuals of all point constraints whose entries have weight in `weights`.
pub fn point_residuals<C: Scalar>(
    phi: &Series<C>,
    lambda: &C,
    variant: Variant,
    weights: RangeInclusive<usize>,
) -> Result<Residuals<C>> {
    if phi.alphabet() != Alphabet::X {
        return usage("a point is a series over X");
    }
    let group = phi.group();
    let trunc = phi.trunc();
    let mut r = Residuals::new();
    let ws: Vec<usize> = weights.filter(|&w| w <= trunc).collect();
    if ws.contains(&0) {
        put(&mut r, "unit", "1".into(), phi.constant() - C::one());
    }
    if phi.constant() != C::one() {
        return Ok(r);
    }
    if ws.contains(&1) {
        for l in [Letter::X0, Letter::X1] {
            let w = Word::letter(l);
            put(&mut r, "letters", w.to_string(), phi.coeff(&w));
        }
    }
    let star = phi_star(phi)?;
    for &w in &ws {
        if w >= 2 {
            put_tensor(&mut r, "shuffle-grouplike", &grouplike_defect_at(phi, Coproduct::Delta, w));
            put_tensor(&mut r, "stuffle-grouplike", &grouplike_defect_at(&star, Coproduct::DeltaStar, w));
        }
    }
    if ws.contains(&alpha_weight(group)) {
        put(&mut r, "normalization", "alpha".into(), phi.pairing(&alpha(group, trunc)) - lambda.clone());
    }
    if variant.has_weight_one() && ws.contains(&1) {
        let n = group.order() as i64;
        let diff = |k: u32| phi.coeff(&Word::letter(Letter::G(k))) - phi.coeff(&Word::letter(Letter::G(group.inv(k))));
        for k in weight_one_pairs(group) {
            let rhs = diff(1) * C::from_ratio(n - 2 * k as i64, n - 2);
            put(&mut r, "weight-one", format!("k={k}"), diff(k) - rhs);
        }
    }
    if variant.has_distribution() {
        for d in group.divisors() {
            let fam = family_distribution(d);
            let lhs = pushforward(phi, d)?;
            let target = lhs.group();
            let mut c = C::zero();
            for s in kernel_of_power(group, d) {
                c = c + phi.coeff(&Word::letter(Letter::G(s)));
            }
            let e = Series::monomial(target, Alphabet::X, trunc, Word::letter(Letter::X1), c).exp()?;
            let rhs = &e * &pullback(phi, d)?;
            let diff = &lhs - &rhs;
            for &w in &ws {
                put_series(&mut r, &fam, &diff.homogeneous(w));
            }
        }
    }
    Ok(r)
}

/// The constraint families of a tangent space.
pub fn tangent_families(group: CyclicGroup, kind: TangentKind) -> Vec<String> {
    let mut f: Vec<String> =
        ["letters", "shuffle-primitive", "stuffle-primitive"].iter().map(|s| s.to_string()).collect();
    if kind.has_parity() {
        f.push("parity".into());
    }
    if kind.has_distribution() {
        f.extend(group.divisors().into_iter().map(family_distribution));
    }
    f
}

/// Residuals of the (linear) tangent constraints at weights in `weights`.
pub fn tangent_residuals<C: Scalar>(
    psi: &Series<C>,
    kind: TangentKind,
    weights: RangeInclusive<usize>,
) -> Result<Residuals<C>> {
    if psi.alphabet() != Alphabet::X {
        return usage("a tangent vector is a series over X");
    }
    let group = psi.group();
    let trunc = psi.trunc();
    let mut r = Residuals::new();
    let ws: Vec<usize> = weights.filter(|&w| w <= trunc).collect();
    if ws.contains(&0) {
        put(&mut r, "letters", "1".into(), psi.constant());
    }
    if ws.contains(&1) {
        for l in [Letter::X0, Letter::X1] {
            let w = Word::letter(l);
            put(&mut r, "letters", w.to_string(), psi.coeff(&w));
        }
    }
    let star = psi_star(psi);
    for &w in &ws {
        if w >= 1 {
            put_tensor(&mut r, "shuffle-primitive", &psi.homogeneous(w).primitive_defect(Coproduct::Delta));
            put_tensor(&mut r, "stuffle-primitive", &star.homogeneous(w).primitive_defect(Coproduct::DeltaStar));
        }
    }
    if kind.has_parity() {
        for &n in ws.iter().filter(|&&n| n >= 1) {
            let sign = if n % 2 == 0 { C::one() } else { -C::one() };
            for nu in group.elements() {
                let a = star.coeff(&y_word(&[(n as u32, nu)]));
                let b = star.coeff(&y_word(&[(n as u32, group.inv(nu))]));
                put(&mut r, "parity", format!("y[{n},{nu}]"), a + sign.clone() * b);
            }
        }
    }
    if kind.has_distribution() {
        for d in group.divisors() {
            let fam = family_distribution(d);
            let lhs = pushforward(psi, d)?;
            let mut diff = &lhs - &pullback(psi, d)?;
            let mut c = C::zero();
            for s in kernel_of_power(group, d) {
                c = c + psi.coeff(&Word::letter(Letter::G(s)));
            }
            diff.add_term(Word::letter(Letter::X1), -c);
            for &w in &ws {
                put_series(&mut r, &fam, &diff.homogeneous(w));
            }
        }
    }
    Ok(r)
}

/// Outcome of one constraint family.
#[derive(Clone, Debug, PartialEq)]
pub struct FamilyReport {
    pub name: String,
    pub passed: bool,
    pub max_residual: f64,
    /// Label of the largest residual entry, if any entry is nonzero.
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub families: Vec<FamilyReport>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.families.iter().all(|f| f.passed)
    }

    pub fn first_violation(&self) -> Option<&FamilyReport> {
        self.families.iter().find(|f| !f.passed)
    }

    /// Groups residual entries by family. With `tol == 0` a family passes only
    /// if every entry is exactly zero.
    pub fn from_residuals<C: Scalar>(families: &[String], r: &Residuals<C>, tol: f64) -> Report {
        let families = families
            .iter()
            .map(|name| {
                let mut max = 0.0;
                let mut witness = None;
                let mut exact_zero = true;
                for ((f, key), c) in r {
                    if f != name {
                        continue;
                    }
                    if !c.is_zero() {
                        exact_zero = false;
                    }
                    let m = c.magnitude();
                    if m > max || (witness.is_none() && !c.is_zero()) {
                        max = f64::max(max, m);
                        witness = Some(key.clone());
                    }
                }
                let passed = if C::EXACT || tol == 0.0 { exact_zero } else { max <= tol };
                FamilyReport { name: name.clone(), passed, max_residual: max, witness }
            })
            .collect();
        Report { families }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for fam in &self.families {
            write!(
                f,
                "{}: {} (max residual {:.3e}",
                fam.name,
                if fam.passed { "pass" } else { "FAIL" },
                fam.max_residual
            )?;
            if let Some(w) = &fam.witness {
                write!(f, ", at {w}")?;
            }
            writeln!(f, ")")?;
        }
        Ok(())
    }
}

/// Evaluates every constraint of the variant on Φ. `tol` is ignored for exact
/// coefficients.
pub fn check_dmr<C: Scalar>(phi: &Series<C>, lambda: &C, variant: Variant, tol: f64) -> Result<Report> {
    let r = point_residuals(phi, lambda, variant, 0..=phi.trunc())?;
    Ok(Report::from_residuals(&point_families(phi.group(), variant), &r, tol))
}

pub fn check_tangent<C: Scalar>(psi: &Series<C>, kind: TangentKind, tol: f64) -> Result<Report> {
    let r = tangent_residuals(psi, kind, 0..=psi.trunc())?;
    Ok(Report::from_residuals(&tangent_families(psi.group(), kind), &r, tol))
}

/// ⟨ψ_*|y_{n,ν}⟩ + (−1)ⁿ⟨ψ_*|y_{n,ν⁻¹}⟩ = 0 for all (n, ν) up to the truncation.
pub fn check_length_one<C: Scalar>(psi: &Series<C>) -> bool {
    let r = tangent_residuals(psi, TangentKind::Dmr0, 1..=psi.trunc()).expect("series over X");
    r.iter().filter(|((f, _), _)| f == "parity").all(|(_, c)| c.is_zero())
}

/// The homogeneous linear system of a tangent space in one weight, written in
/// the coordinates of a Lie basis (so Δ-primitivity holds by construction).
#[derive(Clone, Debug)]
pub struct TangentSystem {
    pub weight: usize,
    pub kind: TangentKind,
    /// Unknowns: standard Lyndon brackets of the given weight.
    pub columns: Vec<Series<Q>>,
    pub row_keys: Vec<(String, String)>,
    pub matrix: Vec<Vec<Q>>,
}

/// Builds the matrix of a linear map given by residuals on basis columns.
pub(crate) fn residual_matrix<C: Scalar>(cols: &[Residuals<C>]) -> (Vec<(String, String)>, Vec<Vec<C>>) {
    let mut keys: Vec<(String, String)> = cols.iter().flat_map(|r| r.keys().cloned()).collect();
    keys.sort();
    keys.dedup();
    let matrix =
        keys.iter().map(|k| cols.iter().map(|r| r.get(k).cloned().unwrap_or_else(C::zero)).collect()).collect();
    (keys, matrix)
}

impl TangentSystem {
    pub fn new(group: CyclicGroup, weight: usize, kind: TangentKind) -> Result<TangentSystem> {
        if weight == 0 {
            return usage("tangent spaces live in weights ≥ 1");
        }
        let columns = x_lie_basis(group, weight, weight);
        let res: Vec<Residuals<Q>> =
            columns.iter().map(|c| tangent_residuals(c, kind, weight..=weight)).collect::<Result<_>>()?;
        let (row_keys, matrix) = residual_matrix(&res);
        Ok(TangentSystem { weight, kind, columns, row_keys, matrix })
    }

    pub fn nullspace(&self) -> Vec<Vec<Q>> {
        linalg::nullspace(&self.matrix, self.columns.len())
    }

    pub fn combine(&self, coeffs: &[Q]) -> Series<Q> {
        let mut s = Series::zero(self.columns[0].group(), Alphabet::X, self.weight);
        for (c, b) in coeffs.iter().zip(&self.columns) {
            if !c.is_zero() {
                s = &s + &b.scale(c);
            }
        }
        s
    }
}

/// An exact basis of one graded piece, in reduced echelon form over words.
#[derive(Clone, Debug)]
pub struct GradedLieBasis {
    pub group: CyclicGroup,
    pub weight: usize,
    pub kind: TangentKind,
    pub basis: Vec<Series<Q>>,
}

impl GradedLieBasis {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    fn words(&self, extra: &Series<Q>) -> Vec<Word> {
        let mut words: Vec<Word> =
            self.basis.iter().chain(std::iter::once(extra)).flat_map(|b| b.terms().keys().cloned()).collect();
        words.sort();
        words.dedup();
        words
    }

    /// True if `v` (homogeneous of this weight) lies in the span.
    pub fn contains(&self, v: &Series<Q>) -> bool {
        let v = v.homogeneous(self.weight);
        let words = self.words(&v);
        let row = |s: &Series<Q>| words.iter().map(|w| s.coeff(w)).collect::<Vec<Q>>();
        let mut e = Echelon::new(words.len());
        for b in &self.basis {
            e.insert(row(b));
        }
        e.reduce(row(&v)).iter().all(|c| c.is_zero())
    }

    /// Coordinates of `v` in the basis; `None` outside the span.
    pub fn coordinates(&self, v: &Series<Q>) -> Option<Vec<Q>> {
        let v = v.homogeneous(self.weight);
        let words = self.words(&v);
        let rows: Vec<Vec<Q>> = words.iter().map(|w| self.basis.iter().map(|b| b.coeff(w)).collect()).collect();
        let rhs: Vec<Q> = words.iter().map(|w| v.coeff(w)).collect();
        linalg::solve_affine(&rows, &rhs, self.basis.len(), |_| Q::zero()).ok().map(|(x, _)| x)
    }
}

/// Reduced row echelon form of homogeneous series with respect to the word order.
fn echelonize(group: CyclicGroup, weight: usize, vs: &[Series<Q>]) -> Vec<Series<Q>> {
    let mut words: Vec<Word> = vs.iter().flat_map(|b| b.terms().keys().cloned()).collect();
    words.sort();
    words.dedup();
    let mut e = Echelon::new(words.len());
    for v in vs {
        e.insert(words.iter().map(|w| v.coeff(w)).collect());
    }
    e.reduced()
        .into_values()
        .map(|row| {
            let terms = words.iter().cloned().zip(row).filter(|(_, c)| !c.is_zero());
            let mut s = Series::zero(group, Alphabet::X, weight);
            for (w, c) in terms {
                s.add_term(w, c);
            }
            s
        })
        .collect()
}

/// Exact basis of the weight-w piece of dmr, dmr₀, dmrd or dmrd₀.
pub fn graded_basis(group: CyclicGroup, weight: usize, kind: TangentKind) -> Result<GradedLieBasis> {
    let sys = TangentSystem::new(group, weight, kind)?;
    let vs: Vec<Series<Q>> = sys.nullspace().iter().map(|v| sys.combine(v)).collect();
    Ok(GradedLieBasis { group, weight, kind, basis: echelonize(group, weight, &vs) })
}

/// Graded bases for weights 1..=max.
pub fn graded_bases(group: CyclicGroup, max_weight: usize, kind: TangentKind) -> Result<Vec<GradedLieBasis>> {
    (1..=max_weight).map(|w| graded_basis(group, w, kind)).collect()
}

/// Checks that every Ihara bracket of basis elements with total weight at most
/// `max_weight` lies in the corresponding graded piece. Brackets landing in a
/// weight without a computed basis are tested against the defining equations.
/// Returns the first failing pair of (weight, index) positions on failure.
pub fn ihara_closure_check(
    bases: &[GradedLieBasis],
    max_weight: usize,
) -> Result<std::result::Result<usize, ((usize, usize), (usize, usize))>> {
    let Some(first) = bases.first() else { return Ok(Ok(0)) };
    let kind = first.kind;
    let by_weight: BTreeMap<usize, &GradedLieBasis> = bases.iter().map(|b| (b.weight, b)).collect();
    let mut count = 0;
    for a in bases {
        for b in bases {
            if a.weight > b.weight || a.weight + b.weight > max_weight {
                continue;
            }
            let w = a.weight + b.weight;
            for (i, x) in a.basis.iter().enumerate() {
                for (j, y) in b.basis.iter().enumerate() {
                    if a.weight == b.weight && j < i {
                        continue;
                    }
                    let br = ihara(&x.with_trunc(w), &y.with_trunc(w)).homogeneous(w);
                    let ok = match by_weight.get(&w) {
                        Some(target) => target.contains(&br),
                        None => tangent_residuals(&br, kind, w..=w)?.is_empty(),
                    };
                    if !ok {
                        return Ok(Err(((a.weight, i), (b.weight, j))));
                    }
                    count += 1;
                }
            }
        }
    }
    Ok(Ok(count))
}

/// Applies exp(s_ψ) to a point and checks the result with the same λ.
pub fn stability_check<C: Scalar>(point: &DmrPoint<C>, psi: &Series<C>, tol: f64) -> Result<(Series<C>, Report)> {
    let kind = TangentKind::acting_on(point.variant);
    let tr = check_tangent(psi, kind, tol)?;
    if !tr.passed() {
        return Err(Error::Usage(format!(
            "ψ is not in {kind}: {}",
            tr.first_violation().map(|f| f.name.as_str()).unwrap_or("")
        )));
    }
    let moved = exp_s(psi, &point.phi)?;
    let report = check_dmr(&moved, &point.lambda, point.variant, tol)?;
    Ok((moved, report))
}
