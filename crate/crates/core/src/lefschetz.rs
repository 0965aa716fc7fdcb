// SPDX-License-Identifier: Apache-2.0

//! Generalized Lefschetz numbers of braid-induced homeomorphisms.
//!
//! Two independent routes produce a representative in the group ring:
//! the negated trace of the reduced Fox Jacobian, and a closed sum over
//! cyclic partitions of `Z_d` driven by the normal form
//! `gamma^-1 theta^mu beta(I) gamma`. Representatives are not reduced
//! modulo twisted conjugacy; they only agree after abelianization.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::braid::{Automorphism, BraidWord};
use crate::burau::{abelianize, reduced_burau_by_letters, LaurentPoly};
use crate::error::{Error, Result};
use crate::fox::reduced_jacobian;
use crate::freegroup::{Basis, FreeWord};
use crate::groupring::{RingElem, RingMatrix};
use crate::normalize::NormalForm;

/// Marker reported with every representative: terms are not grouped into
/// Reidemeister classes.
pub const CAVEAT: &str = "reidemeister-classes-not-distinguished";

/// Largest accepted bound for the conjugator search in [`merge_classes`].
pub const MAX_MERGE_BOUND: usize = 4;

/// `c_j = a_2^(j/2)` for even `j`, `a_1 a_2^((j-1)/2)` for odd `j`.
pub fn c_word(j: usize, n: usize) -> FreeWord {
    let half = (j / 2) as i64;
    if j.is_multiple_of(2) {
        FreeWord::a(n, 2, half)
    } else {
        let mut w = FreeWord::a(n, 1, 1);
        w.push(2, half);
        w
    }
}

/// `g_j = (-1)^(j+1) c_j`.
pub fn g_elem(j: usize, n: usize) -> RingElem {
    let sign = if j.is_multiple_of(2) { -1 } else { 1 };
    RingElem::monomial(&c_word(j, n), sign)
}

/// `g_2 + ... + g_m`, zero for `m <= 1`.
pub fn partial_gamma(m: usize, n: usize) -> RingElem {
    let mut out = RingElem::zero(n);
    for j in 2..=m {
        out += &g_elem(j, n);
    }
    out
}

/// A cyclic block `[p, q]` in `Z_d`; `p > q` wraps through `d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Block {
    pub p: usize,
    pub q: usize,
    pub d: usize,
}

impl Block {
    pub fn len(&self) -> usize {
        if self.p <= self.q {
            self.q - self.p + 1
        } else {
            self.d - self.p + 1 + self.q
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn wraps(&self) -> bool {
        self.p > self.q
    }

    pub fn elements(&self) -> Vec<usize> {
        (0..self.len()).map(|k| (self.p - 1 + k) % self.d + 1).collect()
    }

    fn starting_at(p: usize, len: usize, d: usize) -> Block {
        Block { p, q: (p - 1 + len - 1) % d + 1, d }
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elements().iter().map(|e| e.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Blocks covering `Z_d`, sorted by starting element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    pub d: usize,
    pub blocks: Vec<Block>,
}

/// `(p, q)` of a block.
type Span = (usize, usize);

impl Partition {
    fn from_starts(starts: &[usize], d: usize) -> Partition {
        let s = starts.len();
        let blocks = (0..s)
            .map(|k| {
                let p = starts[k];
                let next = if k + 1 < s { starts[k + 1] } else { starts[0] + d };
                Block::starting_at(p, next - p, d)
            })
            .collect();
        Partition { d, blocks }
    }

    pub fn wrap_block(&self) -> Option<&Block> {
        self.blocks.iter().find(|b| b.wraps())
    }

    fn order_key(&self) -> (Option<Span>, Vec<Span>) {
        let wrap = self.wrap_block().map(|b| (b.p, b.q));
        let rest = self.blocks.iter().filter(|b| !b.wraps()).map(|b| (b.p, b.q)).collect();
        (wrap, rest)
    }

    /// Element lists of the blocks, in order.
    pub fn to_lists(&self) -> Vec<Vec<usize>> {
        self.blocks.iter().map(Block::elements).collect()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.blocks.iter().map(|b| b.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Partitions of `Z_d` into cyclic blocks of length at most `n - 1`.
pub fn enumerate_partitions(d: usize, n: usize) -> Vec<Partition> {
    enumerate_partitions_capped(d, n.saturating_sub(1))
}

/// Partitions of `Z_d` into cyclic blocks of length at most `cap`.
///
/// A partition is determined by its set of block starts; every cyclic gap
/// between consecutive starts must be at most `cap`. Order: partitions
/// without a wrapping block first, then by the wrapping block, then by the
/// remaining blocks.
pub fn enumerate_partitions_capped(d: usize, cap: usize) -> Vec<Partition> {
    if d == 0 || cap == 0 {
        return Vec::new();
    }
    fn extend(pos: usize, d: usize, cap: usize, starts: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if pos > d {
            let first = starts[0];
            let last = *starts.last().expect("nonempty");
            if first + d - last <= cap {
                out.push(Partition::from_starts(starts, d));
            }
            return;
        }
        let last = *starts.last().expect("nonempty");
        // `pos` starts a new block, or extends the current one.
        if pos - last <= cap {
            starts.push(pos);
            extend(pos + 1, d, cap, starts, out);
            starts.pop();
        }
        if pos + 1 - last <= cap {
            extend(pos + 1, d, cap, starts, out);
        }
    }
    let mut out = Vec::new();
    for first in 1..=cap.min(d) {
        let mut starts = vec![first];
        extend(first + 1, d, cap, &mut starts, &mut out);
    }
    out.sort_by_cached_key(Partition::order_key);
    out
}

/// Partitions with no cyclically adjacent block lengths `(1, n - 2)`.
pub fn enumerate_partitions_prime(d: usize, n: usize) -> Vec<Partition> {
    enumerate_partitions(d, n)
        .into_iter()
        .filter(|part| {
            let s = part.blocks.len();
            (0..s).all(|j| (part.blocks[j].len(), part.blocks[(j + 1) % s].len()) != (1, n - 2))
        })
        .collect()
}

fn check_sequence(seq: &[usize]) -> Result<()> {
    if seq.is_empty() {
        return Err(Error::EmptySequence);
    }
    if seq.contains(&0) {
        return Err(Error::Precondition("all entries of I are positive".into()));
    }
    Ok(())
}

fn check_block(seq: &[usize], block: &Block, n: usize) -> Result<()> {
    if block.d != seq.len() || block.p == 0 || block.q == 0 || block.p > block.d || block.q > block.d {
        return Err(Error::DimensionMismatch { left: seq.len(), right: block.d });
    }
    if block.len() > n - 1 {
        return Err(Error::Precondition(format!("block length {} exceeds n - 1", block.len())));
    }
    Ok(())
}

/// `(alpha(B), omega(B))`: `beta_p(I)`, and `beta_q(I)` or
/// `beta_q(I) beta(I)^-1` for a wrapping block.
pub fn alpha_omega(block: &Block, seq: &[usize], n: usize) -> Result<(BraidWord, BraidWord)> {
    check_sequence(seq)?;
    check_block(seq, block, n)?;
    let alpha = BraidWord::beta_suffix(seq, block.p, n)?;
    let mut omega = BraidWord::beta_suffix(seq, block.q, n)?;
    if block.wraps() {
        omega.append(&BraidWord::beta_seq(seq, n)?.inverse());
    }
    Ok((alpha, omega))
}

/// Precomputed automorphisms `beta_l(I)` for `l = 1..=d+1`.
struct SeqContext<'a> {
    n: usize,
    seq: &'a [usize],
    suffix: Vec<Automorphism>,
    full_inverse: Automorphism,
}

impl<'a> SeqContext<'a> {
    fn new(seq: &'a [usize], n: usize) -> Result<Self> {
        check_sequence(seq)?;
        if n < 3 {
            return Err(Error::InvalidRank(n));
        }
        let d = seq.len();
        let mut suffix = vec![Automorphism::identity(n); d + 1];
        for l in (1..=d).rev() {
            let atom = BraidWord::beta_atom(seq[l - 1], n)?.automorphism();
            suffix[l - 1] = atom.then(&suffix[l]);
        }
        let full_inverse = BraidWord::beta_seq(seq, n)?.inverse().automorphism();
        Ok(SeqContext { n, seq, suffix, full_inverse })
    }

    fn d(&self) -> usize {
        self.seq.len()
    }

    /// `beta_l`, with `beta_{d+1} = e`.
    fn beta(&self, l: usize) -> &Automorphism {
        &self.suffix[l - 1]
    }

    fn entry(&self, l: usize) -> usize {
        self.seq[l - 1]
    }

    fn omega(&self, block: &Block) -> Automorphism {
        if block.wraps() {
            self.beta(block.q).then(&self.full_inverse)
        } else {
            self.beta(block.q).clone()
        }
    }

    fn w_block(&self, block: &Block) -> RingElem {
        let n = self.n;
        let ip = self.entry(block.p);
        let len = block.len();
        let alpha = self.beta(block.p);
        let omega = self.omega(block);
        if len < n - 1 {
            if ip < 2 {
                return RingElem::zero(n);
            }
            let mut sum = RingElem::zero(n);
            for j in 0..=ip - 2 {
                sum += &g_elem(j, n);
            }
            sum.apply(alpha).right_mul_word(&omega.apply(&FreeWord::a(n, len + 1, 1)))
        } else {
            g_elem(ip, n).apply(alpha).right_mul_word(&omega.apply(&FreeWord::a(n, n - 1, 1)))
        }
    }

    /// `W'` of a block: the refined sum over the index set `S_B(I)`.
    fn w_prime_block(&self, block: &Block) -> RingElem {
        let n = self.n;
        if block.len() < n - 1 {
            return self.w_block(block);
        }
        let d = self.d();
        let ip = self.entry(block.p);
        let next = if block.p < d { block.p + 1 } else { 1 };
        let ip_next = self.entry(next);
        let alpha = self.beta(block.p);
        let alpha_next = if block.p < d { self.beta(block.p + 1).clone() } else { Automorphism::identity(n) };
        let tail = self.omega(block).apply(&FreeWord::a(n, n - 1, 1));
        let mut out = RingElem::zero(n);
        if ip < 2 || ip_next < 2 {
            return out;
        }
        for j in 2..=ip {
            let left = g_elem(j, n).apply(alpha);
            for jj in 0..=ip_next - 2 {
                if (j, jj) == (ip, 0) {
                    continue;
                }
                let right = g_elem(jj, n).apply(&alpha_next).right_mul_word(&tail);
                out += &(&left * &right);
            }
        }
        out
    }

    fn block_cache<F>(&self, mut f: F) -> HashMap<Block, RingElem>
    where
        F: FnMut(&Block) -> RingElem,
    {
        let d = self.d();
        let mut cache = HashMap::new();
        for p in 1..=d {
            for len in 1..=(self.n - 1).min(d) {
                let b = Block::starting_at(p, len, d);
                cache.insert(b, f(&b));
            }
        }
        cache
    }
}

fn partition_product(part: &Partition, cache: &HashMap<Block, RingElem>, n: usize) -> RingElem {
    let mut acc = RingElem::one(n);
    for b in &part.blocks {
        let w = &cache[b];
        if w.is_zero() {
            return RingElem::zero(n);
        }
        acc = &acc * w;
    }
    acc
}

fn sum_over(parts: &[Partition], cache: &HashMap<Block, RingElem>, n: usize) -> RingElem {
    let products: Vec<RingElem> = parts.par_iter().map(|p| partition_product(p, cache, n)).collect();
    let mut total = RingElem::zero(n);
    for p in &products {
        total += p;
    }
    total
}

/// `W_I(B)` for a single block.
pub fn w_block(seq: &[usize], block: &Block, n: usize) -> Result<RingElem> {
    check_block(seq, block, n)?;
    Ok(SeqContext::new(seq, n)?.w_block(block))
}

/// `W_I` of a partition: the product of its block values by increasing start.
pub fn w_partition(seq: &[usize], part: &Partition, n: usize) -> Result<RingElem> {
    let ctx = SeqContext::new(seq, n)?;
    let mut acc = RingElem::one(n);
    for b in &part.blocks {
        check_block(seq, b, n)?;
        acc = &acc * &ctx.w_block(b);
    }
    Ok(acc)
}

/// `W'_I(B)` for a single block.
pub fn w_prime_block(seq: &[usize], block: &Block, n: usize) -> Result<RingElem> {
    check_block(seq, block, n)?;
    Ok(SeqContext::new(seq, n)?.w_prime_block(block))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Route {
    Theorem1,
    Foxtrace,
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Route::Theorem1 => "theorem1",
            Route::Foxtrace => "foxtrace",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LefschetzResult {
    pub route: Route,
    pub representative: RingElem,
    pub normal_form: Option<NormalForm>,
}

impl LefschetzResult {
    pub fn abelianized(&self) -> LaurentPoly {
        abelianize(&self.representative)
    }
}

fn finish_partition_sum(total: RingElem, nf: &NormalForm) -> RingElem {
    let n = nf.strands;
    let twisted = total.apply(&nf.gamma.automorphism());
    -twisted.left_mul_word(&FreeWord::a(n, n, nf.mu))
}

/// `-(a_n^mu * sum over P(d) of W_I(B)^gamma)`.
pub fn theorem1(nf: &NormalForm) -> Result<LefschetzResult> {
    let seq = nf.require_sequence()?;
    let n = nf.strands;
    let ctx = SeqContext::new(seq, n)?;
    let cache = ctx.block_cache(|b| ctx.w_block(b));
    let total = sum_over(&enumerate_partitions(seq.len(), n), &cache, n);
    Ok(LefschetzResult {
        route: Route::Theorem1,
        representative: finish_partition_sum(total, nf),
        normal_form: Some(nf.clone()),
    })
}

/// The same sum over the refined partitions `P'(d)` with the words `W'`.
/// Requires `n >= 4` and all entries at least 2.
pub fn refined_partition_sum(nf: &NormalForm) -> Result<LefschetzResult> {
    let seq = nf.require_sequence()?;
    let n = nf.strands;
    if n < 4 || seq.iter().any(|&i| i < 2) {
        return Err(Error::Precondition("n >= 4 and all i_l >= 2".into()));
    }
    let ctx = SeqContext::new(seq, n)?;
    let cache = ctx.block_cache(|b| ctx.w_prime_block(b));
    let total = sum_over(&enumerate_partitions_prime(seq.len(), n), &cache, n);
    Ok(LefschetzResult {
        route: Route::Theorem1,
        representative: finish_partition_sum(total, nf),
        normal_form: Some(nf.clone()),
    })
}

/// `-trace` of the reduced Fox Jacobian; works for any braid word.
pub fn foxtrace(braid: &BraidWord) -> LefschetzResult {
    LefschetzResult {
        route: Route::Foxtrace,
        representative: -reduced_jacobian(braid).trace(),
        normal_form: None,
    }
}

fn ball(n: usize, radius: usize) -> Vec<FreeWord> {
    let mut out = vec![FreeWord::identity(n, Basis::A)];
    let mut frontier = out.clone();
    for _ in 0..radius {
        let mut next = Vec::new();
        for w in &frontier {
            for g in 1..=n {
                for sign in [1i64, -1] {
                    let last = w.syllables().last();
                    if last.is_some_and(|s| s.generator == g && s.exponent.signum() == -sign) {
                        continue;
                    }
                    let mut v = w.clone();
                    v.push(g, sign);
                    next.push(v);
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Merges terms related by `w2 = c^beta w1 c^-1` for conjugators `c` of at
/// most `bound` letters. Each merged class keeps its least word.
pub fn merge_classes(rep: &RingElem, braid: &BraidWord, bound: usize) -> Result<RingElem> {
    if bound > MAX_MERGE_BOUND {
        return Err(Error::Precondition(format!("merge bound at most {MAX_MERGE_BOUND}")));
    }
    let n = rep.rank();
    if bound == 0 || rep.len() < 2 {
        return Ok(rep.clone());
    }
    let aut = braid.automorphism();
    let conjugators: Vec<(FreeWord, FreeWord)> = ball(n, bound)
        .into_iter()
        .skip(1)
        .map(|c| (aut.apply(&c), c.invert()))
        .collect();
    let words: Vec<&FreeWord> = rep.terms().map(|(w, _)| w).collect();
    let index: HashMap<&FreeWord, usize> = words.iter().enumerate().map(|(k, w)| (*w, k)).collect();
    let mut parent: Vec<usize> = (0..words.len()).collect();
    fn root(parent: &mut [usize], mut k: usize) -> usize {
        while parent[k] != k {
            parent[k] = parent[parent[k]];
            k = parent[k];
        }
        k
    }
    for (k, w) in words.iter().enumerate() {
        for (image, inv) in &conjugators {
            let mut v = image.clone();
            v.extend_from(w);
            v.extend_from(inv);
            if let Some(&other) = index.get(&v) {
                let (a, b) = (root(&mut parent, k), root(&mut parent, other));
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut out = RingElem::zero(n);
    for (k, (_, c)) in rep.terms().enumerate() {
        let r = root(&mut parent, k);
        out.add_term(words[r].clone(), c.clone());
    }
    Ok(out)
}

/// Term count of `W_I(B)`: `i_p - 1` below length `n - 1`, else 1.
pub fn nu_block(seq: &[usize], block: &Block, n: usize) -> usize {
    if block.len() < n - 1 {
        seq[block.p - 1] - 1
    } else {
        1
    }
}

/// Upper bound for the Nielsen number from the term counts of `W_I`.
pub fn nielsen_upper(seq: &[usize], n: usize) -> Result<BigInt> {
    check_sequence(seq)?;
    let mut total = BigInt::zero();
    for part in enumerate_partitions(seq.len(), n) {
        let mut prod = BigInt::one();
        for b in &part.blocks {
            prod *= nu_block(seq, b, n);
        }
        total += prod;
    }
    Ok(total)
}

/// The hypothesis shared by the interval bounds and the rotation data.
pub fn check_main_hypothesis(seq: &[usize], n: usize) -> Result<()> {
    check_sequence(seq)?;
    let ok = (n >= 4 && seq.iter().all(|&i| i >= 2)) || (n == 3 && seq.iter().all(|&i| i >= 3));
    if !ok {
        return Err(Error::Precondition(
            "either n >= 4 and all i_l >= 2, or n = 3 and all i_l >= 3".into(),
        ));
    }
    Ok(())
}

/// `#S_B(I)`: `i_p - 1` below length `n - 1`, otherwise
/// `(i_p - 1)(i_p' - 1) - 1` with `p'` the cyclic successor of `p`.
pub fn s_block_count(seq: &[usize], block: &Block, n: usize) -> BigInt {
    let d = seq.len();
    let ip = seq[block.p - 1] as i64;
    if block.len() < n - 1 {
        BigInt::from(ip - 1)
    } else {
        let next = seq[block.p % d] as i64;
        BigInt::from((ip - 1) * (next - 1) - 1)
    }
}

/// Number of `J` with `2 <= j_l <= i_l` and `(j_l, j_{l+1}) != (i_l, 2)`
/// cyclically. Enumerates directly for small products, otherwise uses a
/// transfer-matrix count.
pub fn s_count_n3(seq: &[usize]) -> Result<BigInt> {
    check_sequence(seq)?;
    if seq.iter().any(|&i| i < 2) {
        return Err(Error::Precondition("all i_l >= 2".into()));
    }
    let size: Option<u64> =
        seq.iter().try_fold(1u64, |acc, &i| acc.checked_mul(i as u64 - 1)).filter(|&s| s <= 1_000_000);
    match size {
        Some(_) => Ok(BigInt::from(s_count_n3_direct(seq))),
        None => Ok(s_count_n3_transfer(seq)),
    }
}

fn s_count_n3_direct(seq: &[usize]) -> u64 {
    let d = seq.len();
    let mut j: Vec<usize> = vec![2; d];
    let mut count = 0u64;
    loop {
        if (0..d).all(|l| (j[l], j[(l + 1) % d]) != (seq[l], 2)) {
            count += 1;
        }
        let mut k = 0;
        loop {
            if k == d {
                return count;
            }
            if j[k] < seq[k] {
                j[k] += 1;
                break;
            }
            j[k] = 2;
            k += 1;
        }
    }
}

fn s_count_n3_transfer(seq: &[usize]) -> BigInt {
    let d = seq.len();
    let mut total = BigInt::zero();
    // Fix j_1, propagate counts of admissible prefixes, close the cycle.
    for j1 in 2..=seq[0] {
        let mut v: Vec<BigInt> = (2..=seq[0]).map(|j| BigInt::from(u8::from(j == j1))).collect();
        for l in 0..d {
            let next_len = seq[(l + 1) % d] - 1;
            let sum: BigInt = v.iter().sum();
            let blocked = v[seq[l] - 2].clone();
            let mut w = vec![sum; next_len];
            w[0] -= blocked;
            v = w;
        }
        total += &v[j1 - 2];
    }
    total
}

/// Bounds on the Nielsen number under [`check_main_hypothesis`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NielsenBounds {
    /// `sum #S` (or `#S(I)` for `n = 3`), the upper bound.
    pub upper: BigInt,
    /// `upper - (2n - 2)`.
    pub formula_lower: BigInt,
    /// Number of distinct monomials in the abelianized Lefschetz number.
    pub abelian_terms: usize,
    /// The larger of the two lower bounds.
    pub lower: BigInt,
}

pub fn theorem2_bounds(seq: &[usize], n: usize) -> Result<NielsenBounds> {
    check_main_hypothesis(seq, n)?;
    let upper = if n == 3 {
        s_count_n3(seq)?
    } else {
        let mut total = BigInt::zero();
        for part in enumerate_partitions_prime(seq.len(), n) {
            let mut prod = BigInt::one();
            for b in &part.blocks {
                prod *= s_block_count(seq, b, n);
            }
            total += prod;
        }
        total
    };
    let formula_lower = &upper - BigInt::from(2 * n - 2);
    let burau = reduced_burau_by_letters(&BraidWord::beta_seq(seq, n)?);
    let abelian_terms = burau.trace().len();
    let lower = formula_lower.clone().max(BigInt::from(abelian_terms));
    Ok(NielsenBounds { upper, formula_lower, abelian_terms, lower })
}

/// Entry formulas for the reduced Jacobian of `beta(I)`, built from the
/// elements `alpha_q^l`, `W_k^l`, `S_l` and `G_l`.
pub struct JacobianFormula<'a> {
    ctx: SeqContext<'a>,
    chains: HashMap<(usize, usize), RingElem>,
}

impl<'a> JacobianFormula<'a> {
    pub fn new(seq: &'a [usize], n: usize) -> Result<Self> {
        Ok(JacobianFormula { ctx: SeqContext::new(seq, n)?, chains: HashMap::new() })
    }

    fn d(&self) -> i64 {
        self.ctx.d() as i64
    }

    fn zero(&self) -> RingElem {
        RingElem::zero(self.ctx.n)
    }

    fn alpha(&self, q: i64, l: i64) -> RingElem {
        let n = self.ctx.n as i64;
        if (1..n).contains(&q) && (1..=self.d()).contains(&l) {
            let w = self.ctx.beta(l as usize).apply(&FreeWord::a(self.ctx.n, q as usize, 1));
            RingElem::from_word(&w)
        } else {
            self.zero()
        }
    }

    /// Sum over non-cyclic partitions of `{k..l}`.
    fn w_chain(&mut self, k: i64, l: i64) -> RingElem {
        let d = self.d();
        if k >= 1 && k == l + 1 && l <= d {
            return RingElem::one(self.ctx.n);
        }
        if !(k >= 1 && k <= l && l <= d) {
            return self.zero();
        }
        if let Some(v) = self.chains.get(&(k as usize, l as usize)) {
            return v.clone();
        }
        let mut total = self.zero();
        let max_len = ((self.ctx.n - 1) as i64).min(l - k + 1);
        for len in 1..=max_len {
            let block = Block { p: k as usize, q: (k + len - 1) as usize, d: d as usize };
            let head = self.ctx.w_block(&block);
            if head.is_zero() {
                continue;
            }
            let rest = self.w_chain(k + len, l);
            total += &(&head * &rest);
        }
        self.chains.insert((k as usize, l as usize), total.clone());
        total
    }

    fn s(&self, l: i64) -> RingElem {
        if !(1..=self.d()).contains(&l) {
            return self.zero();
        }
        let n = self.ctx.n;
        let i = self.ctx.entry(l as usize);
        let inner = &partial_gamma(i, n).right_mul_word(&FreeWord::a(n, 2, -1)) + &g_elem(i - 1, n);
        inner.apply(self.ctx.beta(l as usize))
    }

    fn g(&self, l: i64) -> RingElem {
        let d = self.d();
        if (1..=d).contains(&l) {
            g_elem(self.ctx.entry(l as usize), self.ctx.n).apply(self.ctx.beta(l as usize))
        } else if l == d + 1 {
            RingElem::constant(self.ctx.n, -1)
        } else {
            self.zero()
        }
    }

    /// Entry `(i, j)`, both one-based.
    pub fn entry(&mut self, i: usize, j: usize) -> RingElem {
        let d = self.d();
        let n = self.ctx.n as i64;
        let (i, j) = (i as i64, j as i64);
        let s = self.s(d + 3 - j);
        let g = self.g(d + 2 - j);
        if i == 1 {
            let a = &self.w_chain(1, d + 2 - j) * &s;
            let b = &self.w_chain(1, d + 1 - j) * &g;
            return -(&a + &b);
        }
        let mut total = self.zero();
        let mut u = 0;
        while i + u < n && u < d {
            let alpha = self.alpha(i + u, 1 + u);
            let a = &self.w_chain(2 + u, d + 2 - j) * &s;
            let b = &self.w_chain(2 + u, d + 1 - j) * &g;
            total += &(&alpha * &(&a + &b));
            u += 1;
        }
        if i == j - d {
            total += &RingElem::one(self.ctx.n);
        }
        total
    }

    pub fn matrix(&mut self) -> RingMatrix {
        let n = self.ctx.n;
        let mut m = RingMatrix::zero(n, n - 1);
        for i in 1..n {
            for j in 1..n {
                let v = self.entry(i, j);
                m.set(i - 1, j - 1, v);
            }
        }
        m
    }
}

/// Entry `(i, j)` (one-based) of the reduced Jacobian of `beta(I)` via the
/// closed formula.
pub fn lemma5_entry(seq: &[usize], i: usize, j: usize, n: usize) -> Result<RingElem> {
    if i == 0 || j == 0 || i >= n || j >= n {
        return Err(Error::DimensionMismatch { left: n - 1, right: i.max(j) });
    }
    Ok(JacobianFormula::new(seq, n)?.entry(i, j))
}

/// Converts a count to `i64` when it fits, for reporting.
pub fn count_to_i64(v: &BigInt) -> Option<i64> {
    if v.abs() <= BigInt::from(i64::MAX) {
        v.to_i64()
    } else {
        None
    }
}
