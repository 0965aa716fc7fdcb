// SPDX-License-Identifier: Apache-2.0

//! One PASS/FAIL line per acceptance criterion. Exits nonzero if any fails.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::result::Result;
use std::time::{Duration, Instant};

use braidtrace::burau::pm_trace_identity;
use braidtrace::lefschetz::{s_count_n3, JacobianFormula};
use braidtrace::*;
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = fn() -> Result<String, String>;

const RANDOM_BRAIDS: usize = 100;
const RANDOM_SEED: u64 = 0x5eed_b4a1d;
const MAX_RANDOM_D: usize = 6;
const MATRIX_SEED: u64 = 0x5eed_3a71;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn poly(pairs: &[(i64, i64)]) -> LaurentPoly {
    LaurentPoly::from_pairs(pairs.iter().map(|&(e, c)| (e, BigInt::from(c))))
}

fn criterion_1() -> Result<String, String> {
    let b = BraidWord::from_signed(3, &[1, -2]).map_err(|e| e.to_string())?;
    let nf = normalize(&b).map_err(|e| e.to_string())?;
    ensure(verify(&nf, &b), || "normal form does not verify".into())?;
    ensure(nf.mu == -1 && nf.indices == [4], || format!("got mu={} I={:?}", nf.mu, nf.indices))?;
    Ok(format!("mu=-1, I=(4), gamma=\"{}\"", nf.gamma))
}

/// Restricted-growth enumeration of all set partitions of `{1..d}`, kept
/// when every block is a cyclic interval of length at most `cap`. A block
/// covering all of `Z_d` is counted once per starting point.
fn brute_force_partitions(d: usize, cap: usize) -> BTreeSet<Vec<Vec<usize>>> {
    let mut out = BTreeSet::new();
    let mut labels = vec![0usize; d];
    loop {
        let count = labels.iter().max().map_or(0, |m| m + 1);
        let blocks: Vec<Vec<usize>> =
            (0..count).map(|b| (1..=d).filter(|&x| labels[x - 1] == b).collect()).collect();
        let mut ordered = Vec::new();
        let mut ok = true;
        for set in &blocks {
            if set.len() > cap {
                ok = false;
                break;
            }
            if set.len() == d {
                continue;
            }
            // the start is the unique member whose predecessor is absent
            let starts: Vec<usize> =
                set.iter().copied().filter(|&x| !set.contains(&((x + d - 2) % d + 1))).collect();
            if starts.len() != 1 {
                ok = false;
                break;
            }
            ordered.push((0..set.len()).map(|k| (starts[0] - 1 + k) % d + 1).collect::<Vec<_>>());
        }
        if ok {
            if blocks.len() == 1 && d <= cap {
                for p in 1..=d {
                    out.insert(vec![(0..d).map(|k| (p - 1 + k) % d + 1).collect()]);
                }
            } else {
                ordered.sort();
                out.insert(ordered);
            }
        }
        // next restricted growth string
        let mut k = d;
        loop {
            if k <= 1 {
                return out;
            }
            k -= 1;
            let prefix_max = labels[..k].iter().max().copied().unwrap_or(0);
            if labels[k] <= prefix_max {
                labels[k] += 1;
                for v in &mut labels[k + 1..] {
                    *v = 0;
                }
                break;
            }
        }
    }
}

fn as_sets(parts: &[Partition]) -> BTreeSet<Vec<Vec<usize>>> {
    parts
        .iter()
        .map(|p| {
            let mut lists = p.to_lists();
            lists.sort();
            lists
        })
        .collect()
}

fn criterion_2() -> Result<String, String> {
    let golden: &[&[&[usize]]] = &[
        &[&[1], &[2], &[3], &[4]],
        &[&[1, 2], &[3], &[4]],
        &[&[1], &[2, 3], &[4]],
        &[&[1], &[2], &[3, 4]],
        &[&[2], &[3], &[4, 1]],
        &[&[1, 2], &[3, 4]],
        &[&[2, 3], &[4, 1]],
        &[&[1, 2, 3], &[4]],
        &[&[1], &[2, 3, 4]],
        &[&[2], &[3, 4, 1]],
        &[&[3], &[4, 1, 2]],
        &[&[1, 2, 3, 4]],
        &[&[2, 3, 4, 1]],
        &[&[3, 4, 1, 2]],
        &[&[4, 1, 2, 3]],
    ];
    let golden: BTreeSet<Vec<Vec<usize>>> = golden
        .iter()
        .map(|p| {
            let mut lists: Vec<Vec<usize>> = p.iter().map(|b| b.to_vec()).collect();
            lists.sort();
            lists
        })
        .collect();
    let got = enumerate_partitions(4, 5);
    ensure(got.len() == 15, || format!("d=4, n=5 gave {} partitions", got.len()))?;
    ensure(as_sets(&got) == golden, || "d=4, n=5 partitions differ from the listed fifteen".into())?;
    let mut checked = 0;
    for n in 3..=6 {
        for d in 1..=8 {
            let parts = enumerate_partitions(d, n);
            let sets = as_sets(&parts);
            ensure(sets.len() == parts.len(), || format!("duplicates for d={d}, n={n}"))?;
            ensure(sets == brute_force_partitions(d, n - 1), || format!("oracle mismatch for d={d}, n={n}"))?;
            checked += 1;
        }
    }
    Ok(format!("15 listed partitions; {checked} (d, n) pairs match brute force"))
}

fn criterion_3() -> Result<String, String> {
    for n in [4, 5] {
        for m in 1..=6 {
            let beta = BraidWord::beta_atom(m, n).map_err(|e| e.to_string())?;
            let rhs = lemma3_matrix(m, n).and_then(|a| a.apply_aut(&beta)).map_err(|e| e.to_string())?;
            ensure(reduced_jacobian(&beta) == rhs, || format!("mismatch for m={m}, n={n}"))?;
        }
    }
    Ok("12 matrices equal".into())
}

fn criterion_4() -> Result<String, String> {
    let mut seqs: Vec<Vec<usize>> = Vec::new();
    for len in 1..=3u32 {
        for code in 0..4usize.pow(len) {
            seqs.push((0..len).map(|k| code / 4usize.pow(k) % 4 + 1).collect());
        }
    }
    let mut entries = 0;
    for n in 3..=5 {
        for seq in &seqs {
            let jac = reduced_jacobian(&BraidWord::beta_seq(seq, n).map_err(|e| e.to_string())?);
            let mut oracle = JacobianFormula::new(seq, n).map_err(|e| e.to_string())?;
            for i in 1..n {
                for j in 1..n {
                    let v = oracle.entry(i, j);
                    ensure(&v == jac.get(i - 1, j - 1), || format!("entry ({i},{j}) of I={seq:?}, n={n}"))?;
                    entries += 1;
                }
            }
        }
    }
    Ok(format!("{} sequences x 3 ranks, {entries} entries equal", seqs.len()))
}

/// Seeded braids with `n` in `3..=6` and at most eight letters, kept when
/// the normal form has `1 <= d <= 6`.
fn random_braids() -> (Vec<(BraidWord, NormalForm)>, usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(RANDOM_SEED);
    let mut kept = Vec::new();
    let mut drawn = 0;
    while kept.len() < RANDOM_BRAIDS {
        drawn += 1;
        let n = rng.gen_range(3..=6usize);
        let len = rng.gen_range(1..=8usize);
        let letters: Vec<i64> = (0..len)
            .map(|_| {
                let i = rng.gen_range(1..n as i64);
                if rng.gen_bool(0.5) {
                    i
                } else {
                    -i
                }
            })
            .collect();
        let b = BraidWord::from_signed(n, &letters).expect("letters in range");
        let nf = normalize(&b).expect("valid braid");
        if !nf.is_central() && nf.indices.len() <= MAX_RANDOM_D {
            kept.push((b, nf));
        }
    }
    (kept, drawn)
}

fn criterion_5() -> Result<String, String> {
    let (set, drawn) = random_braids();
    for (b, nf) in &set {
        ensure(verify(nf, b), || format!("normal form of [{b}] does not verify"))?;
        let lhs = theorem1(nf).map_err(|e| e.to_string())?.abelianized();
        let rhs = foxtrace(b).abelianized();
        ensure(lhs == rhs, || format!("[{b}] in B_{}: {lhs} vs {rhs}", b.strands()))?;
    }
    Ok(format!("{} braids agree ({drawn} drawn)", set.len()))
}

fn criterion_6() -> Result<String, String> {
    let (set, _) = random_braids();
    for (b, _) in &set {
        let tr = reduced_burau(b).trace();
        ensure(tr == -foxtrace(b).abelianized(), || format!("trace mismatch for [{b}]"))?;
        ensure(reduced_burau_by_letters(b).trace() == tr, || format!("letter route differs for [{b}]"))?;
    }
    let mut constant = 0;
    for n in 3..=5 {
        for i in 1..=4 {
            let single = reduced_burau(&BraidWord::beta_atom(i, n).map_err(|e| e.to_string())?);
            for d in 1..=4 {
                let b = BraidWord::beta_seq(&vec![i; d], n).map_err(|e| e.to_string())?;
                let lhs = reduced_burau(&b).trace();
                let rhs = single.pow(d as u32).trace();
                ensure(lhs == rhs, || format!("constant I: i={i}, d={d}, n={n}"))?;
                constant += 1;
            }
        }
    }
    Ok(format!("{} random braids, {constant} constant sequences", set.len()))
}

fn criterion_7() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(MATRIX_SEED);
    for case in 0..50 {
        let dim = rng.gen_range(1..=4usize);
        let rows: Vec<Vec<i64>> = (0..dim).map(|_| (0..dim).map(|_| rng.gen_range(-3..=3)).collect()).collect();
        let a = LaurentMatrix::from_integers(&rows).map_err(|e| e.to_string())?;
        for d in 1..=5 {
            let oracle = LaurentPoly::constant(common::trace_of_power(&rows, d));
            let (lhs, rhs) = pm_trace_identity(&a, d);
            ensure(lhs == oracle && rhs == oracle, || format!("case {case}, d={d}: {rows:?}"))?;
        }
    }
    Ok("50 matrices, d = 1..5".into())
}

fn criterion_8() -> Result<String, String> {
    for n in 3..=5 {
        for i in 2..=8usize {
            let b = BraidWord::beta_atom(i, n).map_err(|e| e.to_string())?;
            let nf = normalize(&b).map_err(|e| e.to_string())?;
            let got = theorem1(&nf).map_err(|e| e.to_string())?.abelianized();
            let pairs: Vec<(i64, i64)> = (2..=i as i64).map(|j| (j, if j % 2 == 0 { 1 } else { -1 })).collect();
            let want = poly(&pairs);
            ensure(got == want, || format!("beta({i}) in B_{n}: {got} vs {want}"))?;
            let upper = nielsen_upper(&[i], n).map_err(|e| e.to_string())?;
            ensure(upper == BigInt::from(i - 1), || format!("upper bound for ({i}), n={n}: {upper}"))?;
        }
    }
    for n in 4..=6 {
        for i1 in 2..=5usize {
            for i2 in 2..=5usize {
                let upper = nielsen_upper(&[i1, i2], n).map_err(|e| e.to_string())?;
                ensure(upper == BigInt::from(i1 * i2 - 1), || format!("({i1},{i2}), n={n}: {upper}"))?;
            }
        }
    }
    Ok("21 single-atom values, 48 two-atom bounds".into())
}

fn brute_force_s_count(seq: &[usize]) -> u64 {
    let d = seq.len();
    let mut count = 0;
    let total: usize = seq.iter().map(|i| i - 1).product();
    for code in 0..total {
        let mut rest = code;
        let j: Vec<usize> = seq
            .iter()
            .map(|&i| {
                let v = rest % (i - 1) + 2;
                rest /= i - 1;
                v
            })
            .collect();
        if (0..d).all(|l| !(j[l] == seq[l] && j[(l + 1) % d] == 2)) {
            count += 1;
        }
    }
    count
}

fn criterion_9() -> Result<String, String> {
    for n in [4, 5] {
        for i in 2..=8usize {
            let b = theorem2_bounds(&[i], n).map_err(|e| e.to_string())?;
            let truth = BigInt::from(i - 1);
            ensure(b.formula_lower <= truth && truth <= b.upper, || {
                format!("beta({i}), n={n}: [{}, {}]", b.formula_lower, b.upper)
            })?;
        }
    }
    let mut seqs = 0;
    for d in 1..=3u32 {
        for code in 0..4usize.pow(d) {
            let seq: Vec<usize> = (0..d).map(|k| code / 4usize.pow(k) % 4 + 3).collect();
            let got = s_count_n3(&seq).map_err(|e| e.to_string())?;
            let want = brute_force_s_count(&seq);
            ensure(got == BigInt::from(want), || format!("#S({seq:?}) = {got}, expected {want}"))?;
            seqs += 1;
        }
    }
    Ok(format!("14 intervals contain i - 1; {seqs} n=3 counts match"))
}

fn criterion_10() -> Result<String, String> {
    // (n, d, mu, m, nu), evaluated by hand from lcm(d, n-2)
    let grid: [(usize, usize, i64, u64, i64); 20] = [
        (3, 1, -1, 1, 0),
        (3, 2, 0, 1, 2),
        (3, 3, 1, 1, 4),
        (4, 1, 0, 2, 1),
        (4, 2, -1, 1, 0),
        (4, 3, 1, 2, 5),
        (4, 4, 0, 1, 2),
        (4, 5, -1, 2, 3),
        (5, 1, 1, 3, 4),
        (5, 2, 0, 3, 2),
        (5, 3, 0, 1, 1),
        (5, 4, -1, 3, 1),
        (5, 5, 1, 3, 8),
        (6, 1, 0, 4, 1),
        (6, 2, 1, 2, 3),
        (6, 3, -1, 4, -1),
        (6, 4, 0, 1, 1),
        (7, 1, -1, 5, -4),
        (7, 3, 0, 5, 3),
        (7, 5, 1, 1, 2),
    ];
    for (n, d, mu, m, nu) in grid {
        let fill = if n == 3 { 3 } else { 2 };
        let r = rotation_data_for(mu, &vec![fill; d], n).map_err(|e| e.to_string())?;
        ensure((r.m, r.nu) == (m, nu), || format!("n={n}, d={d}, mu={mu}: got ({}, {})", r.m, r.nu))?;
    }
    let b = BraidWord::beta_atom(2, 3).map_err(|e| e.to_string())?;
    let nf = normalize(&b).map_err(|e| e.to_string())?;
    match rotation_data(&nf) {
        Err(Error::Precondition(_)) => Ok("20 grid cases; beta(2) in B_3 rejected".into()),
        other => Err(format!("beta(2) in B_3 not rejected: {other:?}")),
    }
}

const SUITE_LIMIT: Duration = Duration::from_secs(60);

fn criterion_11() -> Result<String, String> {
    let mut slowest = Duration::ZERO;
    for (name, suite) in common::CORE_SUITES {
        let start = Instant::now();
        suite().map_err(|e| format!("{name}: {e}"))?;
        let took = start.elapsed();
        ensure(took <= SUITE_LIMIT, || format!("{name} took {took:.1?}"))?;
        slowest = slowest.max(took);
    }
    Ok(format!("{} suites, slowest {slowest:.2?}", common::CORE_SUITES.len()))
}

fn main() -> ExitCode {
    let criteria: [(u8, &str, Duration, Check); 11] = [
        (1, "normalization golden value", Duration::from_secs(1), criterion_1),
        (2, "partition counts", Duration::from_secs(10), criterion_2),
        (3, "A_m matrix oracle", Duration::from_secs(30), criterion_3),
        (4, "closed-form Jacobian entries", Duration::from_secs(120), criterion_4),
        (5, "two-route agreement", Duration::from_secs(300), criterion_5),
        (6, "Burau consistency", Duration::from_secs(300), criterion_6),
        (7, "principal-minor trace identity", Duration::from_secs(60), criterion_7),
        (8, "Lefschetz golden values", Duration::from_secs(60), criterion_8),
        (9, "Nielsen interval", Duration::from_secs(60), criterion_9),
        (10, "rotation data", Duration::from_secs(10), criterion_10),
        (11, "property suites", Duration::from_secs(11 * 60), criterion_11),
    ];
    let mut failed = 0;
    for (id, title, limit, check) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|_| Err("panicked".into()))
            .and_then(|detail| {
                let took = start.elapsed();
                if took > limit {
                    Err(format!("took {took:.2?}, limit {limit:?}"))
                } else {
                    Ok(detail)
                }
            });
        let took = start.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {id:>2}: PASS  {title} [{took:.2?}] {detail}"),
            Err(why) => {
                failed += 1;
                println!("criterion {id:>2}: FAIL  {title} [{took:.2?}] {why}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
