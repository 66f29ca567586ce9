mod common;

use std::collections::BTreeMap;

use common::*;
use dmr_core::lie::u_lie_basis;
use dmr_core::mt::{partial_x0, pullback, pushforward, sec};
use dmr_core::series::bracket;
use dmr_core::{Alphabet, Coproduct, Error, Letter, Series, Tensor, Word, YWord, Q};
use num_traits::{One, Zero};
use proptest::prelude::*;

#[test]
fn concat_examples() {
    let n1 = g(1);
    let x0 = xs(n1, 4, &[(&[-1], qi(1))]);
    let x1 = xs(n1, 4, &[(&[0], qi(1))]);
    assert_eq!(x0.concat(&x1).unwrap(), xs(n1, 4, &[(&[-1, 0], qi(1))]));
    let a = &Series::one(n1, Alphabet::X, 4) + &x0;
    let b = &Series::one(n1, Alphabet::X, 4) - &x0;
    assert_eq!(&a * &b, xs(n1, 4, &[(&[], qi(1)), (&[-1, -1], qi(-1))]));
    let u = xs(n1, 3, &[(&[0, -1], q(2, 3)), (&[-1], qi(5))]);
    assert_eq!(&u * &Series::one(n1, Alphabet::X, 7), u);
}

#[test]
fn truncation_is_the_minimum() {
    let n1 = g(1);
    let a = xs(n1, 2, &[(&[0], qi(1))]);
    let b = xs(n1, 5, &[(&[-1, 0], qi(1))]);
    let p = a.concat(&b).unwrap();
    assert_eq!(p.trunc(), 2);
    assert!(p.is_zero());
}

#[test]
fn mismatched_operands_are_usage_errors() {
    let a = xs(g(1), 3, &[(&[0], qi(1))]);
    let b = xs(g(2), 3, &[(&[0], qi(1))]);
    assert!(matches!(a.concat(&b), Err(Error::Usage(_))));
    let y = ys(g(1), 3, &[(&[(1, 0)], qi(1))]);
    assert!(matches!(a.shuffle(&y), Err(Error::Usage(_))));
    assert!(matches!(a.stuffle(&a), Err(Error::Usage(_))));
}

#[test]
fn shuffle_examples() {
    let n1 = g(1);
    let x0 = xs(n1, 4, &[(&[-1], qi(1))]);
    let x1 = xs(n1, 4, &[(&[0], qi(1))]);
    assert_eq!(x0.shuffle(&x1).unwrap(), xs(n1, 4, &[(&[-1, 0], qi(1)), (&[0, -1], qi(1))]));
    let x0x1 = xs(n1, 4, &[(&[-1, 0], qi(1))]);
    assert_eq!(x1.shuffle(&x0x1).unwrap(), xs(n1, 4, &[(&[0, -1, 0], qi(1)), (&[-1, 0, 0], qi(2))]));
}

fn as_series(m: &BTreeMap<Vec<Letter>, i64>, n: u32, trunc: usize) -> Series<Q> {
    let mut s = Series::zero(g(n), Alphabet::X, trunc);
    for (w, c) in m {
        s.add_term(Word(w.clone()), qi(*c));
    }
    s
}

#[test]
fn shuffle_matches_brute_force() {
    for n in 1..=3 {
        let grp = g(n);
        for total in 0..=6 {
            for p in 0..=total {
                for u in all_x_words(grp, p) {
                    for v in all_x_words(grp, total - p) {
                        let a = Series::monomial(grp, Alphabet::X, total, Word(u.clone()), qi(1));
                        let b = Series::monomial(grp, Alphabet::X, total, Word(v.clone()), qi(1));
                        assert_eq!(a.shuffle(&b).unwrap(), as_series(&brute_shuffle(&u, &v), n, total));
                    }
                }
            }
        }
    }
}

#[test]
fn stuffle_examples() {
    let n3 = g(3);
    let (s, sg, t, tau) = (2, 1, 1, 2);
    let a = ys(n3, 4, &[(&[(s, sg)], qi(1))]);
    let b = ys(n3, 4, &[(&[(t, tau)], qi(1))]);
    let want = ys(n3, 4, &[(&[(s, sg), (t, tau)], qi(1)), (&[(t, tau), (s, sg)], qi(1)), (&[(s + t, 0)], qi(1))]);
    assert_eq!(a.stuffle(&b).unwrap(), want);
    let one = Series::one(n3, Alphabet::Y, 4);
    let v = ys(n3, 4, &[(&[(1, 1), (2, 2)], q(1, 2))]);
    assert_eq!(one.stuffle(&v).unwrap(), v);
}

#[test]
fn stuffle_matches_brute_force() {
    for n in 1..=3 {
        let grp = g(n);
        for total in 0..=5 {
            for p in 0..=total {
                for u in all_y_words(grp, p) {
                    for v in all_y_words(grp, total - p) {
                        let a = Series::monomial(grp, Alphabet::Y, total, u.to_x(), qi(1));
                        let b = Series::monomial(grp, Alphabet::Y, total, v.to_x(), qi(1));
                        let mut want = Series::zero(grp, Alphabet::Y, total);
                        for (w, c) in brute_stuffle(&u.0, &v.0, grp) {
                            want.add_term(YWord(w).to_x(), qi(c));
                        }
                        assert_eq!(a.stuffle(&b).unwrap(), want);
                    }
                }
            }
        }
    }
}

#[test]
fn delta_examples() {
    let n1 = g(1);
    let w = xs(n1, 4, &[(&[-1, 0], qi(1))]);
    let d = w.delta();
    let e = |t: &[i64]| word(t, n1);
    assert_eq!(d.terms().len(), 4);
    for (u, v) in [(&[-1, 0][..], &[][..]), (&[-1], &[0]), (&[0], &[-1]), (&[], &[-1, 0])] {
        assert_eq!(d.coeff(&e(u), &e(v)), qi(1));
    }
    let one = Series::<Q>::one(n1, Alphabet::X, 3).delta();
    assert_eq!(one.terms().len(), 1);
    assert_eq!(one.coeff(&Word::empty(), &Word::empty()), qi(1));
    let ex = xs(n1, 5, &[(&[-1], qi(1))]).exp().unwrap();
    assert_eq!(ex.delta(), Tensor::product(&ex, &ex));
}

#[test]
fn delta_star_examples() {
    let n1 = g(1);
    let d = ys(n1, 3, &[(&[(2, 0)], qi(1))]).delta_star();
    let y = |p: &[(u32, u32)]| yword(p).to_x();
    assert_eq!(d.terms().len(), 3);
    assert_eq!(d.coeff(&y(&[(2, 0)]), &Word::empty()), qi(1));
    assert_eq!(d.coeff(&Word::empty(), &y(&[(2, 0)])), qi(1));
    assert_eq!(d.coeff(&y(&[(1, 0)]), &y(&[(1, 0)])), qi(1));
    let n3 = g(3);
    for nu in 0..3 {
        assert!(ys(n3, 3, &[(&[(1, nu)], qi(1))]).is_primitive(Coproduct::DeltaStar));
    }
}

#[test]
fn delta_duality_exhaustive() {
    for n in 1..=3 {
        let grp = g(n);
        for total in 0..=5 {
            let deltas: Vec<(Word, Tensor<Q>)> = all_x_words(grp, total)
                .into_iter()
                .map(|w| {
                    let w = Word(w);
                    let d = Series::monomial(grp, Alphabet::X, total, w.clone(), qi(1)).delta();
                    (w, d)
                })
                .collect();
            for p in 0..=total {
                for u in all_x_words(grp, p) {
                    for v in all_x_words(grp, total - p) {
                        let (u, v) = (Word(u.clone()), Word(v));
                        let a = Series::monomial(grp, Alphabet::X, total, u.clone(), qi(1));
                        let b = Series::monomial(grp, Alphabet::X, total, v.clone(), qi(1));
                        let sh = a.shuffle(&b).unwrap();
                        for (w, d) in &deltas {
                            assert_eq!(d.coeff(&u, &v), sh.coeff(w), "N={n} w={w} u={u} v={v}");
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn delta_star_duality_exhaustive() {
    for n in 1..=3 {
        let grp = g(n);
        for total in 0..=5 {
            let deltas: Vec<(Word, Tensor<Q>)> = all_y_words(grp, total)
                .into_iter()
                .map(|w| {
                    let d = Series::monomial(grp, Alphabet::Y, total, w.to_x(), qi(1)).delta_star();
                    (w.to_x(), d)
                })
                .collect();
            for p in 0..=total {
                for u in all_y_words(grp, p) {
                    for v in all_y_words(grp, total - p) {
                        let (u, v) = (u.to_x(), v.to_x());
                        let a = Series::monomial(grp, Alphabet::Y, total, u.clone(), qi(1));
                        let b = Series::monomial(grp, Alphabet::Y, total, v.clone(), qi(1));
                        let st = a.stuffle(&b).unwrap();
                        for (w, d) in &deltas {
                            assert_eq!(d.coeff(&u, &v), st.coeff(w), "N={n} w={w} u={u} v={v}");
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn delta_star_on_two_letters() {
    // ⟨Δ*v | y_{s,σ}⊗y_{t,τ}⟩ = ⟨v | y_{s+t,στ} + y_{s,σ}y_{t,τ} + y_{t,τ}y_{s,σ}⟩
    let n3 = g(3);
    let words: Vec<YWord> = (1..=5).flat_map(|w| all_y_words(n3, w)).collect();
    let mut v = Series::zero(n3, Alphabet::Y, 5);
    for (i, w) in words.iter().enumerate() {
        v.add_term(w.to_x(), q(i as i64 % 7 - 3, 1 + i as i64 % 4));
    }
    let d = v.delta_star();
    for s in 1..=3u32 {
        for t in 1..=(5 - s) {
            for sg in 0..3 {
                for tau in 0..3 {
                    let lhs = d.coeff(&yword(&[(s, sg)]).to_x(), &yword(&[(t, tau)]).to_x());
                    let rhs = v.coeff(&yword(&[(s + t, n3.mul(sg, tau))]).to_x())
                        + v.coeff(&yword(&[(s, sg), (t, tau)]).to_x())
                        + v.coeff(&yword(&[(t, tau), (s, sg)]).to_x());
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}

fn tensor_mul(a: &Tensor<Q>, b: &Tensor<Q>) -> BTreeMap<(Word, Word), Q> {
    let mut out: BTreeMap<(Word, Word), Q> = BTreeMap::new();
    for ((u1, v1), c1) in a.terms() {
        for ((u2, v2), c2) in b.terms() {
            *out.entry((u1.concat(u2), v1.concat(v2))).or_insert_with(Q::zero) += c1 * c2;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

#[test]
fn delta_is_multiplicative() {
    for n in 1..=2 {
        let grp = g(n);
        for total in 0..=6 {
            for p in 0..=total {
                for u in all_x_words(grp, p) {
                    for v in all_x_words(grp, total - p) {
                        let a = Series::monomial(grp, Alphabet::X, total, Word(u.clone()), qi(1));
                        let b = Series::monomial(grp, Alphabet::X, total, Word(v.clone()), qi(1));
                        assert_eq!(&tensor_mul(&a.delta(), &b.delta()), (&a * &b).delta().terms());
                    }
                }
            }
        }
    }
}

#[test]
fn delta_star_is_multiplicative() {
    let grp = g(2);
    for total in 0..=5 {
        for p in 0..=total {
            for u in all_y_words(grp, p) {
                for v in all_y_words(grp, total - p) {
                    let a = Series::monomial(grp, Alphabet::Y, total, u.to_x(), qi(1));
                    let b = Series::monomial(grp, Alphabet::Y, total, v.to_x(), qi(1));
                    assert_eq!(&tensor_mul(&a.delta_star(), &b.delta_star()), (&a * &b).delta_star().terms());
                }
            }
        }
    }
}

#[test]
fn antipode_examples() {
    let n3 = g(3);
    let w = xs(n3, 4, &[(&[0, -1, 2], qi(1))]);
    assert_eq!(w.antipode(), xs(n3, 4, &[(&[2, -1, 0], qi(-1))]));
    let one = Series::<Q>::one(n3, Alphabet::X, 4);
    assert_eq!(one.antipode(), one);
}

#[test]
fn antipode_convolution_is_counit() {
    // Σ S(w₁)w₂ over Δw = ε(w)
    let grp = g(2);
    for weight in 1..=5 {
        for w in all_x_words(grp, weight) {
            let d = Series::monomial(grp, Alphabet::X, weight, Word(w), qi(1)).delta();
            let mut acc = Series::zero(grp, Alphabet::X, weight);
            for ((u, v), c) in d.terms() {
                let su = Series::monomial(grp, Alphabet::X, weight, u.clone(), c.clone()).antipode();
                acc = &acc + &(&su * &Series::monomial(grp, Alphabet::X, weight, v.clone(), qi(1)));
            }
            assert!(acc.is_zero());
        }
    }
}

#[test]
fn exp_log_examples() {
    let n1 = g(1);
    let one_x0 = xs(n1, 6, &[(&[], qi(1)), (&[-1], qi(1))]);
    assert_eq!(one_x0.log().unwrap().exp().unwrap(), one_x0);
    let e = xs(n1, 6, &[(&[0], qi(1))]).exp().unwrap();
    let mut fact = 1i64;
    for k in 0..=6usize {
        if k > 0 {
            fact *= k as i64;
        }
        assert_eq!(e.coeff(&Word(vec![Letter::X1; k])), q(1, fact));
    }
    assert!(matches!(one_x0.exp(), Err(Error::Usage(_))));
    assert!(matches!(xs(n1, 3, &[(&[0], qi(1))]).log(), Err(Error::Usage(_))));
}

#[test]
fn log_of_grouplike_is_primitive() {
    let n2 = g(2);
    let lie = &bracket(&xs(n2, 5, &[(&[-1], qi(1))]), &xs(n2, 5, &[(&[1], qi(2))])) + &xs(n2, 5, &[(&[0], q(1, 3))]);
    let gl = lie.exp().unwrap();
    assert!(gl.is_grouplike(Coproduct::Delta));
    let back = gl.log().unwrap();
    assert!(back.is_primitive(Coproduct::Delta));
    assert_eq!(back, lie);
}

#[test]
fn grouplike_examples() {
    for n in 1..=3 {
        let grp = g(n);
        let mut y = Series::one(grp, Alphabet::Y, 5);
        for k in 1..=5 {
            for nu in 0..n {
                y.add_term(yword(&[(k, nu)]).to_x(), qi(1));
            }
        }
        assert!(y.is_grouplike(Coproduct::DeltaStar), "N={n}");
    }
    let n1 = g(1);
    let c = bracket(&xs(n1, 6, &[(&[-1], qi(1))]), &xs(n1, 6, &[(&[0], qi(1))]));
    assert!(c.scale(&q(-7, 3)).exp().unwrap().is_grouplike(Coproduct::Delta));
    let bad = xs(n1, 2, &[(&[], qi(1)), (&[-1, 0], qi(1))]);
    assert!(!bad.is_grouplike(Coproduct::Delta));
    let defect = bad.grouplike_defect(Coproduct::Delta);
    assert!(!defect.coeff(&word(&[0], n1), &word(&[-1], n1)).is_zero());
}

#[test]
fn u_basis_examples() {
    let n3 = g(3);
    for nu in 0..3 {
        assert_eq!(Series::<Q>::u_basis(n3, 1, nu), ys(n3, 1, &[(&[(1, nu)], qi(1))]));
        let mut want = ys(n3, 2, &[(&[(2, nu)], qi(1))]);
        for k in 0..3 {
            want.add_term(yword(&[(1, k), (1, n3.div(nu, k))]).to_x(), q(-1, 2));
        }
        assert_eq!(Series::<Q>::u_basis(n3, 2, nu), want);
    }
    assert!(Series::<Q>::u_basis(n3, 0, 0).is_zero());
}

#[test]
fn u_basis_is_primitive_and_x0_lowers_degree() {
    for n in 1..=3 {
        let grp = g(n);
        for k in 1..=5u32 {
            for nu in 0..n {
                let u = Series::<Q>::u_basis(grp, k, nu);
                assert!(u.is_primitive(Coproduct::DeltaStar));
                let d = partial_x0(&u.with_alphabet(Alphabet::X));
                let lower = Series::<Q>::u_basis(grp, k - 1, nu).with_alphabet(Alphabet::X).with_trunc(k as usize);
                assert_eq!(d, lower.scale(&qi(k as i64 - 1)), "N={n} n={k} ν={nu}");
            }
        }
    }
}

#[test]
fn u_substitution_is_unitriangular_in_depth() {
    let grp = g(2);
    for w in 1..=4 {
        for y in all_y_words(grp, w) {
            let mut prod = Series::one(grp, Alphabet::Y, w);
            for l in &y.0 {
                prod = &prod * &Series::<Q>::u_basis(grp, l.n, l.nu).with_trunc(w);
            }
            assert_eq!(prod.coeff(&y.to_x()), qi(1));
            for (z, _) in prod.iter() {
                let zd = z.to_y().unwrap().depth();
                assert!(z == &y.to_x() || zd > y.depth(), "{y:?} has a term {z} of depth {zd}");
            }
        }
    }
}

#[test]
fn u_derivative_reads_depth_one() {
    // for Δ*-primitive ψ written in the u-basis, the u_{s,σ} coefficient is ⟨ψ|y_{s,σ}⟩
    let grp = g(2);
    let u = |n, nu| Series::<Q>::u_basis(grp, n, nu).with_trunc(5);
    let psi = &(&bracket(&u(1, 0), &u(2, 1)).scale(&qi(3)) + &u(3, 1).scale(&q(-2, 5)))
        + &bracket(&u(1, 1), &bracket(&u(1, 0), &u(2, 0)));
    assert!(psi.is_primitive(Coproduct::DeltaStar));
    assert_eq!(psi.coeff(&yword(&[(3, 1)]).to_x()), q(-2, 5));
    for (s, sg) in [(1, 0), (1, 1), (2, 0), (2, 1), (3, 0), (4, 0), (4, 1)] {
        assert!(psi.coeff(&yword(&[(s, sg)]).to_x()).is_zero());
    }
    for b in u_lie_basis(grp, 4, 4) {
        assert!(b.is_primitive(Coproduct::DeltaStar));
    }
}

#[test]
fn projection_examples() {
    let n1 = g(1);
    let s = xs(n1, 3, &[(&[-1, 0], qi(1)), (&[0, -1], qi(1))]);
    let p = s.pi_y();
    assert_eq!(p.alphabet(), Alphabet::Y);
    assert_eq!(p, ys(n1, 3, &[(&[(2, 0)], qi(1))]));
    assert!(xs(n1, 3, &[(&[0, -1, 0], qi(1))]).pi_cv().is_zero());
    let y = ys(n1, 3, &[(&[(1, 0), (2, 0)], qi(1)), (&[(2, 0), (1, 0)], qi(1))]);
    assert_eq!(y.pi_cv(), ys(n1, 3, &[(&[(2, 0), (1, 0)], qi(1))]));
}

#[test]
fn sec_example() {
    let n1 = g(1);
    let s = sec(&ys(n1, 3, &[(&[(2, 0)], qi(1))]));
    assert_eq!(s, xs(n1, 3, &[(&[-1, 0], qi(1)), (&[0, -1], qi(-1))]));
    assert!(partial_x0(&s).is_zero());
}

fn map_tensor(t: &Tensor<Q>, f: impl Fn(&Series<Q>) -> Series<Q>, like: &Series<Q>) -> Tensor<Q> {
    let mut out: Option<Tensor<Q>> = None;
    for ((u, v), c) in t.terms() {
        let mono = |w: &Word| Series::monomial(like.group(), like.alphabet(), like.trunc(), w.clone(), qi(1));
        let term = Tensor::product(&f(&mono(u)).scale(c), &f(&mono(v)));
        out = Some(match out {
            Some(o) => &o + &term,
            None => term,
        });
    }
    out.unwrap()
}

#[test]
fn functorial_maps_commute_with_coproducts() {
    let n4 = g(4);
    let trunc = 4;
    let mut x = Series::zero(n4, Alphabet::X, trunc);
    let mut y = Series::zero(n4, Alphabet::Y, trunc);
    for w in 1..=trunc {
        for (i, t) in all_x_words(n4, w).into_iter().enumerate().filter(|(i, _)| i % 5 == 0) {
            x.add_term(Word(t), q(i as i64 % 5 - 2, 1 + i as i64 % 3));
        }
        for (i, t) in all_y_words(n4, w).into_iter().enumerate().filter(|(i, _)| i % 3 == 0) {
            y.add_term(t.to_x(), q(i as i64 % 7 - 3, 1 + i as i64 % 2));
        }
    }
    for d in [1, 2, 4] {
        let push = |s: &Series<Q>| pushforward(s, d).unwrap();
        let pull = |s: &Series<Q>| pullback(s, d).unwrap();
        assert_eq!(push(&x).delta(), map_tensor(&x.delta(), push, &x), "p_* Δ, d={d}");
        assert_eq!(pull(&x).delta(), map_tensor(&x.delta(), pull, &x), "i^* Δ, d={d}");
        assert_eq!(push(&y).delta_star(), map_tensor(&y.delta_star(), push, &y), "p_* Δ*, d={d}");
        assert_eq!(pull(&y).delta_star(), map_tensor(&y.delta_star(), pull, &y), "i^* Δ*, d={d}");
        assert_eq!(push(&x).pi_y(), push(&x.pi_y()));
        assert_eq!(pull(&x).pi_y(), pull(&x.pi_y()));
        assert_eq!(push(&y).ps(), push(&y.ps()));
        assert_eq!(push(&y).qs(), push(&y.qs()));
        assert_eq!(pull(&y).ps(), pull(&y.ps()));
        assert_eq!(pull(&y).qs(), pull(&y.qs()));
        assert_eq!(pull(&y).pi_cv(), pull(&y.pi_cv()));
    }
    for s in 0..4 {
        let t = |u: &Series<Q>| u.t_sigma(s);
        assert_eq!(t(&x).delta(), map_tensor(&x.delta(), t, &x));
    }
    // words ending in x₀ form a coideal, so π_Y descends to the quotient coproduct
    let quotient = |t: &Tensor<Q>| -> BTreeMap<(Word, Word), Q> {
        t.terms()
            .iter()
            .filter(|((u, v), _)| !u.ends_with_x0() && !v.ends_with_x0())
            .map(|(k, c)| (k.clone(), c.clone()))
            .collect()
    };
    assert_eq!(quotient(&x.delta()), quotient(&x.pi_y().with_alphabet(Alphabet::X).delta()));
}

#[test]
fn pushforward_scales_x0() {
    let n4 = g(4);
    let s = xs(n4, 3, &[(&[-1, 1], qi(1)), (&[-1, -1, 3], qi(1))]);
    let p = pushforward(&s, 2).unwrap();
    assert_eq!(p.group().order(), 2);
    assert_eq!(p.coeff(&word(&[-1, 1], g(2))), qi(2));
    assert_eq!(p.coeff(&word(&[-1, -1, 1], g(2))), qi(4));
    assert_eq!(pushforward(&s, 1).unwrap(), s);
    assert!(pushforward(&s, 3).is_err());
}

fn series_cfg() -> ProptestConfig {
    ProptestConfig { cases: 48, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(series_cfg())]

    #[test]
    fn shuffle_commutative_associative(a in arb_x_series(2, 6, 0), b in arb_x_series(2, 6, 0), c in arb_x_series(2, 6, 0)) {
        prop_assert_eq!(a.shuffle(&b).unwrap(), b.shuffle(&a).unwrap());
        let l = a.shuffle(&b).unwrap().shuffle(&c).unwrap();
        let r = a.shuffle(&b.shuffle(&c).unwrap()).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn stuffle_commutative_associative(a in arb_y_series(2, 6, 0), b in arb_y_series(2, 6, 0), c in arb_y_series(2, 6, 0)) {
        prop_assert_eq!(a.stuffle(&b).unwrap(), b.stuffle(&a).unwrap());
        let l = a.stuffle(&b).unwrap().stuffle(&c).unwrap();
        let r = a.stuffle(&b.stuffle(&c).unwrap()).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn concat_associative(a in arb_x_series(3, 5, 0), b in arb_x_series(3, 5, 0), c in arb_x_series(3, 5, 0)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn antipode_involutive(a in arb_x_series(3, 6, 0)) {
        prop_assert_eq!(a.antipode().antipode(), a);
    }

    #[test]
    fn exp_log_inverse(a in arb_x_series(2, 6, 1)) {
        prop_assert_eq!(a.exp().unwrap().log().unwrap(), a.clone());
        let b = &Series::one(a.group(), Alphabet::X, 6) + &a;
        prop_assert_eq!(b.log().unwrap().exp().unwrap(), b);
    }

    #[test]
    fn inverse_is_two_sided(a in arb_x_series(2, 5, 1)) {
        let b = &Series::one(a.group(), Alphabet::X, 5) + &a;
        let inv = b.inverse().unwrap();
        prop_assert_eq!(&b * &inv, Series::one(a.group(), Alphabet::X, 5));
        prop_assert_eq!(&inv * &b, Series::one(a.group(), Alphabet::X, 5));
    }

    #[test]
    fn exp_of_stuffle_primitive_is_grouplike(c in prop::collection::vec(-3i64..=3, 6)) {
        let grp = g(2);
        let u = |n, nu| Series::<Q>::u_basis(grp, n, nu).with_trunc(5);
        let psi = &(&(&u(1, 1).scale(&qi(c[0])) + &u(2, 0).scale(&qi(c[1])))
            + &bracket(&u(1, 0), &u(2, 1)).scale(&qi(c[2])))
            + &(&u(3, 1).scale(&qi(c[3])) + &bracket(&u(1, 1), &u(1, 0)).scale(&qi(c[4])));
        let e = psi.exp().unwrap();
        prop_assert!(e.is_grouplike(Coproduct::DeltaStar));
        let back = e.log().unwrap();
        prop_assert!(back.is_primitive(Coproduct::DeltaStar));
        prop_assert_eq!(back, psi);
    }

    #[test]
    fn pi_y_after_sec_is_identity(v in arb_y_series(2, 6, 0)) {
        prop_assert_eq!(sec(&v).pi_y(), v.clone());
        prop_assert!(partial_x0(&sec(&v)).is_zero());
    }

    #[test]
    fn ps_qs_series_inverse(v in arb_y_series(3, 6, 0)) {
        prop_assert_eq!(v.ps().qs(), v.clone());
        prop_assert_eq!(v.qs().ps(), v);
    }
}

#[test]
fn canonical_form() {
    let n1 = g(1);
    let mut s = xs(n1, 2, &[(&[0], q(2, 4))]);
    assert_eq!(s.coeff(&word(&[0], n1)), q(1, 2));
    s.add_term(word(&[0], n1), q(-1, 2));
    assert!(s.is_zero());
    assert_eq!(s.len(), 0);
    s.add_term(word(&[0, 0, 0], n1), qi(1));
    assert!(s.is_zero(), "terms above the truncation are dropped");
    let r = Series::from_terms(n1, Alphabet::Y, 3, [(word(&[0, -1], n1), Q::one())]);
    assert!(r.is_err());
}
