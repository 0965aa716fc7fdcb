// SPDX-License-Identifier: Apache-2.0

//! Seeded property checks shared by the `properties` and `acceptance`
//! targets. Each check returns `Err` with the shrunk counterexample.

#![allow(dead_code)]

use braidtrace::burau::principal_minor_sum;
use braidtrace::lefschetz::g_elem;
use braidtrace::*;
use num_bigint::BigInt;
use proptest::collection::vec;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};
use std::result::Result;

pub const SEED: [u8; 32] = *b"braidtrace-property-seed-0000001";

pub fn runner(cases: u32) -> TestRunner {
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &SEED))
}

fn run<S, F>(cases: u32, strategy: S, test: F) -> Result<(), String>
where
    S: Strategy,
    S::Value: std::fmt::Debug,
    F: Fn(S::Value) -> Result<(), TestCaseError>,
{
    runner(cases).run(&strategy, test).map_err(|e| e.to_string())
}

pub fn word(n: usize) -> impl Strategy<Value = FreeWord> {
    vec((1..=n, -3i64..=3), 0..6)
        .prop_map(move |s| FreeWord::from_syllables(n, Basis::A, s).expect("indices in range"))
}

pub fn elem(n: usize) -> impl Strategy<Value = RingElem> {
    vec((word(n), -3i64..=3), 0..4).prop_map(move |terms| {
        let mut x = RingElem::zero(n);
        for (w, c) in terms {
            x += &RingElem::monomial(&w, c);
        }
        x
    })
}

pub fn braid_in(n: usize, max_len: usize) -> impl Strategy<Value = BraidWord> {
    let k = n as i64 - 1;
    vec((1..=k, any::<bool>()), 0..=max_len).prop_map(move |ls| {
        let signed: Vec<i64> = ls.into_iter().map(|(i, neg)| if neg { -i } else { i }).collect();
        BraidWord::from_signed(n, &signed).expect("letters in range")
    })
}

pub fn braid(max_len: usize) -> impl Strategy<Value = BraidWord> {
    (3usize..=6).prop_flat_map(move |n| braid_in(n, max_len))
}

fn braid_with_words(max_len: usize) -> impl Strategy<Value = (BraidWord, FreeWord, FreeWord)> {
    (3usize..=6).prop_flat_map(move |n| (braid_in(n, max_len), word(n), word(n)))
}

fn braid_with_elems(max_len: usize) -> impl Strategy<Value = (BraidWord, RingElem, RingElem)> {
    (3usize..=5).prop_flat_map(move |n| (braid_in(n, max_len), elem(n), elem(n)))
}

fn two_braids(max_len: usize) -> impl Strategy<Value = (BraidWord, BraidWord)> {
    (3usize..=5).prop_flat_map(move |n| (braid_in(n, max_len), braid_in(n, max_len)))
}

pub fn free_group_axioms() -> Result<(), String> {
    let s = (3usize..=6).prop_flat_map(|n| (word(n), word(n), word(n)));
    run(256, s, |(x, y, z)| {
        let n = x.rank();
        let e = FreeWord::identity(n, Basis::A);
        prop_assert_eq!(&(&(&x * &y) * &z), &(&x * &(&y * &z)));
        prop_assert_eq!(&(&e * &x), &x);
        prop_assert_eq!(&(&x * &e), &x);
        prop_assert!((&x * &x.invert()).is_identity());
        prop_assert!((&x.invert() * &x).is_identity());
        prop_assert_eq!((&x * &y).exponent_sum(), x.exponent_sum() + y.exponent_sum());
        let xi = x.convert_basis(Basis::Xi);
        prop_assert_eq!(xi.exponent_sum(), x.exponent_sum());
        prop_assert_eq!(&xi.convert_basis(Basis::A), &x);
        Ok(())
    })
}

pub fn ring_axioms() -> Result<(), String> {
    let s = (3usize..=5).prop_flat_map(|n| (elem(n), elem(n), elem(n)));
    run(128, s, |(x, y, z)| {
        let n = x.rank();
        let one = RingElem::one(n);
        prop_assert_eq!(&(&(&x * &y) * &z), &(&x * &(&y * &z)));
        prop_assert_eq!(&(&x * &(&y + &z)), &(&(&x * &y) + &(&x * &z)));
        prop_assert_eq!(&(&(&x + &y) * &z), &(&(&x * &z) + &(&y * &z)));
        prop_assert_eq!(&(&x + &y), &(&y + &x));
        prop_assert_eq!(&(&one * &x), &x);
        prop_assert_eq!(&(&x * &one), &x);
        let neg = -&x;
        prop_assert!((&x + &neg).is_zero());
        Ok(())
    })
}

pub fn automorphism_law() -> Result<(), String> {
    let s = (3usize..=5).prop_flat_map(|n| (braid_in(n, 5), braid_in(n, 5), elem(n), elem(n)));
    run(64, s, |(b1, b2, x, y)| {
        let img = |v: &RingElem, b: &BraidWord| v.apply_aut(b).expect("same rank");
        prop_assert_eq!(img(&(&x * &y), &b1), &img(&x, &b1) * &img(&y, &b1));
        prop_assert_eq!(img(&(&x + &y), &b1), &img(&x, &b1) + &img(&y, &b1));
        let both = b1.compose(&b2).expect("same strands");
        prop_assert_eq!(img(&img(&x, &b1), &b2), img(&x, &both));
        Ok(())
    })
}

pub fn chain_rule() -> Result<(), String> {
    run(48, two_braids(6), |(b1, b2)| {
        let both = b1.compose(&b2).expect("same strands");
        let rhs = jacobian(&b1).apply_aut(&b2).unwrap().mat_mul(&jacobian(&b2)).unwrap();
        prop_assert_eq!(jacobian(&both), rhs);
        let rhs = reduced_jacobian(&b1).apply_aut(&b2).unwrap().mat_mul(&reduced_jacobian(&b2)).unwrap();
        prop_assert_eq!(reduced_jacobian(&both), rhs);
        Ok(())
    })
}

pub fn fox_fundamental_identity() -> Result<(), String> {
    let s = (3usize..=6).prop_flat_map(elem);
    run(128, s, |x| {
        let n = x.rank();
        let mut total = RingElem::zero(n);
        for j in 1..=n {
            let gen = &RingElem::from_word(&FreeWord::a(n, j, 1)) - &RingElem::one(n);
            total += &(&fox_derivative(&x, j).unwrap() * &gen);
        }
        let augmentation = RingElem::constant(n, x.coefficient_sum());
        prop_assert_eq!(total, &x - &augmentation);
        Ok(())
    })
}

pub fn an_fixed() -> Result<(), String> {
    run(128, braid(10), |b| {
        let n = b.strands();
        prop_assert_eq!(b.act(&FreeWord::a(n, n, 1)).unwrap(), FreeWord::a(n, n, 1));
        Ok(())
    })
}

pub fn exponent_sum_preserved() -> Result<(), String> {
    run(128, braid_with_words(8), |(b, w, _)| {
        prop_assert_eq!(b.act(&w).unwrap().exponent_sum(), w.exponent_sum());
        Ok(())
    })?;
    run(64, braid_with_elems(6), |(b, x, _)| {
        prop_assert_eq!(abelianize(&x.apply_aut(&b).unwrap()), abelianize(&x));
        Ok(())
    })
}

pub fn braid_relations_and_centrality() -> Result<(), String> {
    for n in 3..=7 {
        let s = |i: usize| BraidWord::sigma(n, i).unwrap();
        let rho = BraidWord::rho(n).unwrap();
        for i in 1..n {
            for j in 1..n {
                let lhs = s(i).compose(&s(j)).unwrap();
                let rhs = s(j).compose(&s(i)).unwrap();
                if i.abs_diff(j) >= 2 && !equal_via_action(&lhs, &rhs) {
                    return Err(format!("far commutation fails for n={n}, i={i}, j={j}"));
                }
            }
            if i + 1 < n {
                let lhs = s(i).compose(&s(i + 1)).unwrap().compose(&s(i)).unwrap();
                let rhs = s(i + 1).compose(&s(i)).unwrap().compose(&s(i + 1)).unwrap();
                if !equal_via_action(&lhs, &rhs) {
                    return Err(format!("braid relation fails for n={n}, i={i}"));
                }
                let lhs = s(i).compose(&rho).unwrap();
                let rhs = rho.compose(&s(i + 1)).unwrap();
                if !equal_via_action(&lhs, &rhs) {
                    return Err(format!("rho shift fails for n={n}, i={i}"));
                }
            }
        }
    }
    run(64, braid(10), |b| {
        let theta = BraidWord::theta(b.strands()).unwrap();
        prop_assert!(equal_via_action(&theta.compose(&b).unwrap(), &b.compose(&theta).unwrap()));
        Ok(())
    })
}

pub fn g_m_identity() -> Result<(), String> {
    for n in 4..=6 {
        let tail = &FreeWord::a(n, 3, 1) * &FreeWord::a(n, 2, -1);
        for m in 1..=8 {
            let beta = BraidWord::beta_atom(m, n).unwrap();
            let lhs = g_elem(m, n).apply_aut(&beta).unwrap();
            let rhs = -g_elem(m - 1, n).apply_aut(&beta).unwrap().right_mul_word(&tail);
            if lhs != rhs {
                return Err(format!("identity fails for m={m}, n={n}"));
            }
        }
    }
    Ok(())
}

pub fn twist_identities() -> Result<(), String> {
    for n in 3..=7 {
        let theta = BraidWord::theta(n).unwrap();
        let rho = BraidWord::rho(n).unwrap();
        if !equal_via_action(&rho.power(n as i64), &theta) {
            return Err(format!("rho^n differs from theta for n={n}"));
        }
        let s1rho = BraidWord::sigma(n, 1).unwrap().compose(&rho).unwrap();
        if !equal_via_action(&s1rho.power(n as i64 - 1), &theta) {
            return Err(format!("(s1 rho)^(n-1) differs from theta for n={n}"));
        }
    }
    Ok(())
}

pub type Check = fn() -> Result<(), String>;

/// The suites reported together as one acceptance line.
pub const CORE_SUITES: &[(&str, Check)] = &[
    ("free-group axioms", free_group_axioms),
    ("ring axioms", ring_axioms),
    ("automorphism law", automorphism_law),
    ("chain rule", chain_rule),
    ("fox fundamental identity", fox_fundamental_identity),
    ("a_n fixed", an_fixed),
    ("exponent sums preserved", exponent_sum_preserved),
    ("braid relations and centrality", braid_relations_and_centrality),
    ("g_m identity", g_m_identity),
    ("twist identities", twist_identities),
];

pub fn normalize_round_trip() -> Result<(), String> {
    run(96, braid(8), |b| {
        let nf = normalize(&b).unwrap();
        prop_assert!(verify(&nf, &b));
        prop_assert_eq!(nf.braid().unwrap().exponent_sum(), b.exponent_sum());
        Ok(())
    })
}

pub fn three_strand_collapse() -> Result<(), String> {
    for i in 2..=6 {
        for j in 2..=6 {
            let lhs = BraidWord::beta_seq(&[i, 2, j], 3).unwrap();
            let theta = BraidWord::theta(3).unwrap();
            let rhs = theta.compose(&BraidWord::beta_seq(&[i - 1, j - 1], 3).unwrap()).unwrap();
            if !equal_via_action(&lhs, &rhs) {
                return Err(format!("collapse fails for i={i}, j={j}"));
            }
        }
    }
    Ok(())
}

pub fn classical_lefschetz_conjugation() -> Result<(), String> {
    run(48, two_braids(6), |(b, g)| {
        let conj = g.compose(&b).unwrap().compose(&g.inverse()).unwrap();
        let lhs = foxtrace(&b).representative.coefficient_sum();
        let rhs = foxtrace(&conj).representative.coefficient_sum();
        prop_assert_eq!(lhs, rhs);
        Ok(())
    })
}

pub fn burau_routes_agree() -> Result<(), String> {
    run(64, braid(10), |b| {
        prop_assert_eq!(reduced_burau_by_letters(&b), reduced_burau(&b));
        Ok(())
    })?;
    run(32, two_braids(5), |(b1, b2)| {
        let both = b1.compose(&b2).unwrap();
        prop_assert_eq!(reduced_burau(&both), reduced_burau(&b1).mat_mul(&reduced_burau(&b2)).unwrap());
        Ok(())
    })
}

fn int_matrix(max_dim: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max_dim).prop_flat_map(|k| vec(vec(-3i64..=3, k), k))
}

pub fn minor_cap() -> Result<(), String> {
    run(64, int_matrix(4), |rows| {
        let a = LaurentMatrix::from_integers(&rows).unwrap();
        prop_assert!(principal_minor_sum(&a, a.dim() + 1).is_zero());
        prop_assert!(principal_minor_sum(&a, 0).is_zero());
        prop_assert_eq!(principal_minor_sum(&a, 1), a.trace());
        prop_assert_eq!(principal_minor_sum(&a, a.dim()), a.determinant());
        Ok(())
    })
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn rotation_shift() -> Result<(), String> {
    let s = (3usize..=8, 1usize..=6, -4i64..=4, -3i64..=3);
    run(128, s, |(n, d, mu, k)| {
        let seq = vec![3; d];
        let base = rotation_data_for(mu, &seq, n).unwrap();
        let shifted = rotation_data_for(mu + k, &seq, n).unwrap();
        prop_assert_eq!(shifted.m, base.m);
        prop_assert_eq!(shifted.nu, base.nu + base.m as i64 * k);
        prop_assert_eq!(shifted.rotation_number(), base.rotation_number());
        if gcd(d as u64, n as u64 - 2) == 1 {
            let zero = rotation_data_for(0, &seq, n).unwrap();
            prop_assert_eq!((zero.m, zero.nu), ((n - 2) as u64, d as i64));
            prop_assert_eq!(gcd(zero.m, zero.nu as u64), 1);
        }
        Ok(())
    })
}

pub fn json_round_trips() -> Result<(), String> {
    run(64, braid_with_elems(6), |(b, x, _)| {
        let n = b.strands();
        prop_assert_eq!(&BraidWord::parse(&b.to_string(), n).unwrap(), &b);
        let text = serde_json::to_string(&x.to_json()).unwrap();
        let back: RingElemJson = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(&back.into_elem(n).unwrap(), &x);
        let nf = normalize(&b).unwrap();
        let text = serde_json::to_string(&nf.to_json()).unwrap();
        let back: NormalFormJson = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(&back.into_normal_form().unwrap(), &nf);
        let p = abelianize(&x);
        let back: LaurentPoly = serde_json::from_str(&serde_json::to_string(&p).unwrap()).unwrap();
        prop_assert_eq!(back, p);
        Ok(())
    })
}

pub fn two_routes_small() -> Result<(), String> {
    run(48, braid(6), |b| {
        let nf = normalize(&b).unwrap();
        if nf.is_central() || nf.indices.len() > 6 {
            return Ok(());
        }
        prop_assert_eq!(theorem1(&nf).unwrap().abelianized(), foxtrace(&b).abelianized());
        Ok(())
    })
}

/// `tr A^d` by repeated integer matrix multiplication.
pub fn trace_of_power(a: &[Vec<i64>], d: usize) -> BigInt {
    let k = a.len();
    let big: Vec<Vec<BigInt>> = a.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
    let mut p: Vec<Vec<BigInt>> =
        (0..k).map(|i| (0..k).map(|j| BigInt::from(u8::from(i == j))).collect()).collect();
    for _ in 0..d {
        p = (0..k)
            .map(|i| (0..k).map(|j| (0..k).map(|m| &p[i][m] * &big[m][j]).sum()).collect())
            .collect();
    }
    (0..k).map(|i| p[i][i].clone()).sum()
}
