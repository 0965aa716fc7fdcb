// SPDX-License-Identifier: Apache-2.0

//! Conjugation of an arbitrary braid into the shape
//! `gamma^-1 theta^mu beta(I) gamma`.
//!
//! The word is rewritten over the alphabet `{s_1, rho, theta}`: every
//! letter is replaced by an expression in `s_1` and powers of `rho`, the
//! central `theta` factors are pulled into `mu`, cyclic rotations are
//! recorded in `gamma`, and powers `rho^j` with `j != 1` are traded for
//! `theta^(k - l) ((s_1 rho)^(n-2) s_1)^l` where `j = k n - l`. Runs of the
//! form `i, 1, ..., 1, j` (with `n - 2` ones) are collapsed to `i + j - 1`,
//! each collapse contributing one `theta`.

use serde::{Deserialize, Serialize};

use crate::braid::{equal_via_action, BraidWord, Letter};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalForm {
    pub strands: usize,
    pub mu: i64,
    /// The sequence `I`; empty when the braid is a power of `theta`.
    pub indices: Vec<usize>,
    pub gamma: BraidWord,
}

impl NormalForm {
    /// Set when the input acts as a power of the full twist alone.
    pub fn is_central(&self) -> bool {
        self.indices.is_empty()
    }

    /// `gamma^-1 theta^mu beta(I) gamma` as an explicit word.
    pub fn braid(&self) -> Result<BraidWord> {
        let n = self.strands;
        let mut b = self.gamma.inverse();
        b.append(&BraidWord::theta(n)?.power(self.mu));
        if !self.indices.is_empty() {
            b.append(&BraidWord::beta_seq(&self.indices, n)?);
        }
        b.append(&self.gamma);
        Ok(b)
    }

    /// Rejects the central-only form, which has no sequence `I`.
    pub fn require_sequence(&self) -> Result<&[usize]> {
        if self.indices.is_empty() {
            return Err(Error::Precondition(
                "d >= 1: the braid is a power of the full twist, so I is empty".into(),
            ));
        }
        Ok(&self.indices)
    }

    pub fn to_json(&self) -> NormalFormJson {
        NormalFormJson {
            mu: self.mu,
            indices: self.indices.clone(),
            gamma: self.gamma.to_string(),
            n: self.strands,
        }
    }
}

/// Serialized form: `{"mu":-1,"I":[4],"gamma":"1","n":3}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalFormJson {
    pub mu: i64,
    #[serde(rename = "I")]
    pub indices: Vec<usize>,
    pub gamma: String,
    pub n: usize,
}

impl NormalFormJson {
    pub fn into_normal_form(self) -> Result<NormalForm> {
        if self.indices.contains(&0) {
            return Err(Error::parse(0, "entries of I must be positive"));
        }
        Ok(NormalForm {
            strands: self.n,
            mu: self.mu,
            indices: self.indices,
            gamma: BraidWord::parse(&self.gamma, self.n)?,
        })
    }
}

/// `s_1^k` (k > 0) or `rho^j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Tok {
    S(i64),
    R(i64),
}

struct Rewriter {
    n: usize,
    toks: Vec<Tok>,
    mu: i64,
    gamma: BraidWord,
    rho: BraidWord,
}

impl Rewriter {
    fn push(out: &mut Vec<Tok>, t: Tok) {
        let t = match t {
            Tok::S(0) | Tok::R(0) => return,
            t => t,
        };
        match (out.last_mut(), t) {
            (Some(Tok::S(a)), Tok::S(b)) => *a += b,
            (Some(Tok::R(a)), Tok::R(b)) => {
                *a += b;
                if *a == 0 {
                    out.pop();
                }
            }
            _ => out.push(t),
        }
    }

    fn simplify(&mut self) {
        let mut out = Vec::with_capacity(self.toks.len());
        for &t in &self.toks {
            Self::push(&mut out, t);
        }
        self.toks = out;
    }

    fn tokens_braid(&self, toks: &[Tok]) -> BraidWord {
        let s1 = BraidWord::sigma(self.n, 1).expect("n >= 3");
        let mut b = BraidWord::identity(self.n);
        for &t in toks {
            match t {
                Tok::S(k) => b.append(&s1.power(k)),
                Tok::R(j) => b.append(&self.rho.power(j)),
            }
        }
        b
    }

    /// Replaces `X Y` by `Y X`, where `X` is the first `p` tokens.
    fn rotate(&mut self, p: usize) {
        if p == 0 || p >= self.toks.len() {
            return;
        }
        let tail = self.toks.split_off(p);
        let mut gamma = self.tokens_braid(&tail);
        gamma.append(&self.gamma);
        self.gamma = gamma;
        let head = std::mem::replace(&mut self.toks, tail);
        self.toks.extend(head);
        self.simplify();
    }

    /// `rho^j = theta^(k-l) ((s_1 rho)^(n-2) s_1)^l` with `j = k n - l`.
    fn expand_rho(&mut self, j: i64, out: &mut Vec<Tok>) {
        let n = self.n as i64;
        let k = j.div_euclid(n) + i64::from(j.rem_euclid(n) != 0);
        let l = k * n - j;
        self.mu += k - l;
        for _ in 0..l {
            for _ in 0..n - 2 {
                Self::push(out, Tok::S(1));
                Self::push(out, Tok::R(1));
            }
            Self::push(out, Tok::S(1));
        }
    }

    fn substitute(&mut self, braid: &BraidWord) {
        let n = self.n;
        let letters = braid.letters();
        let rho_letters: Vec<Letter> =
            (1..n).rev().map(|index| Letter { index, inverse: false }).collect();
        let twist: Vec<Letter> =
            (0..n).flat_map(|_| (1..n).map(|index| Letter { index, inverse: false })).collect();
        let twist_inv: Vec<Letter> =
            (0..n).flat_map(|_| (1..n).rev().map(|index| Letter { index, inverse: true })).collect();
        let mut toks = Vec::new();
        let mut p = 0;
        while p < letters.len() {
            if letters[p..].starts_with(&twist) {
                self.mu += 1;
                p += twist.len();
                continue;
            }
            if letters[p..].starts_with(&twist_inv) {
                self.mu -= 1;
                p += twist_inv.len();
                continue;
            }
            if letters[p..].starts_with(&rho_letters) {
                Self::push(&mut toks, Tok::R(1));
                p += rho_letters.len();
                continue;
            }
            let Letter { index, inverse } = letters[p];
            let i = index as i64;
            if !inverse {
                // s_i = rho^(1-i) s_1 rho^(i-1)
                Self::push(&mut toks, Tok::R(1 - i));
                Self::push(&mut toks, Tok::S(1));
                Self::push(&mut toks, Tok::R(i - 1));
            } else {
                // s_i^-1 = theta^-1 rho^(2-i) (s_1 rho)^(n-2) rho^(i-1)
                self.mu -= 1;
                Self::push(&mut toks, Tok::R(2 - i));
                for _ in 0..n - 2 {
                    Self::push(&mut toks, Tok::S(1));
                    Self::push(&mut toks, Tok::R(1));
                }
                Self::push(&mut toks, Tok::R(i - 1));
            }
            p += 1;
        }
        self.toks = toks;
    }

    /// Merges the two ends while they are of the same kind.
    fn close_cycle(&mut self) {
        while self.toks.len() >= 2 {
            let (first, last) = (self.toks[0], self.toks[self.toks.len() - 1]);
            let same = matches!((first, last), (Tok::S(_), Tok::S(_)) | (Tok::R(_), Tok::R(_)));
            if !same {
                break;
            }
            self.rotate(self.toks.len() - 1);
        }
    }

    /// One collapse of `i, 1^(n-2), j`; returns whether anything changed.
    fn collapse_ones(&mut self) -> bool {
        let seq: Vec<i64> = self
            .toks
            .iter()
            .filter_map(|t| if let Tok::S(k) = t { Some(*k) } else { None })
            .collect();
        let d = seq.len();
        let n = self.n;
        if d < n {
            return false;
        }
        for p in 0..d {
            if (1..=n - 2).all(|u| seq[(p + u) % d] == 1) {
                if p + n > d {
                    self.rotate(2 * p);
                    return true;
                }
                let merged = seq[p] + seq[p + n - 1] - 1;
                let mut toks = Vec::with_capacity(self.toks.len());
                for (k, &v) in seq.iter().enumerate() {
                    if k == p {
                        toks.push(Tok::S(merged));
                        toks.push(Tok::R(1));
                    } else if k < p || k >= p + n {
                        toks.push(Tok::S(v));
                        toks.push(Tok::R(1));
                    }
                }
                self.toks = toks;
                self.mu += 1;
                return true;
            }
        }
        false
    }

    fn run(&mut self) {
        loop {
            self.simplify();
            self.close_cycle();
            match self.toks.as_slice() {
                [] => return,
                [Tok::S(k)] => {
                    // s_1^k = s_1^k rho rho^-1
                    let k = *k;
                    let mut out = vec![Tok::S(k), Tok::R(1)];
                    self.expand_rho(-1, &mut out);
                    self.toks = out;
                    continue;
                }
                [Tok::R(j)] => {
                    let j = *j;
                    let mut out = Vec::new();
                    self.expand_rho(j, &mut out);
                    self.toks = out;
                    continue;
                }
                _ => {}
            }
            if self.toks.iter().any(|t| matches!(t, Tok::R(j) if *j != 1)) {
                let toks = std::mem::take(&mut self.toks);
                let mut out = Vec::with_capacity(toks.len());
                for t in toks {
                    match t {
                        Tok::R(j) if j != 1 => self.expand_rho(j, &mut out),
                        t => Self::push(&mut out, t),
                    }
                }
                self.toks = out;
                continue;
            }
            if let Some(Tok::R(_)) = self.toks.first() {
                self.rotate(self.toks.len() - 1);
                continue;
            }
            if self.collapse_ones() {
                continue;
            }
            return;
        }
    }
}

/// Brings `braid` into the form `gamma^-1 theta^mu beta(I) gamma`.
pub fn normalize(braid: &BraidWord) -> Result<NormalForm> {
    let n = braid.strands();
    if n < 3 {
        return Err(Error::InvalidRank(n));
    }
    if let Some(mu) = central_power(braid)? {
        return Ok(NormalForm { strands: n, mu, indices: Vec::new(), gamma: BraidWord::identity(n) });
    }
    // braid = P Y P^-1 with Y cyclically reduced
    let reduced = free_reduce(braid.letters());
    let mut peel = 0;
    while peel * 2 + 1 < reduced.len()
        && reduced[peel].flipped() == reduced[reduced.len() - 1 - peel]
    {
        peel += 1;
    }
    let prefix = BraidWord::new(n, reduced[..peel].to_vec())?;
    let core = &reduced[peel..reduced.len() - peel];
    let rotations = if core.len() <= MAX_ROTATIONS { core.len().max(1) } else { 1 };
    let mut best: Option<NormalForm> = None;
    for r in 0..rotations {
        // X Y -> Y X, so gamma picks up X^-1
        let mut word = core[r..].to_vec();
        word.extend_from_slice(&core[..r]);
        let mut nf = run_rewriter(&BraidWord::new(n, word)?)?;
        nf.gamma.append(&BraidWord::new(n, core[..r].to_vec())?.inverse());
        nf.gamma.append(&prefix.inverse());
        if best.as_ref().is_none_or(|b| nf.indices.len() < b.indices.len()) {
            best = Some(nf);
        }
    }
    Ok(best.expect("at least one rotation"))
}

/// Cyclic rotations tried before keeping the shortest `I`.
const MAX_ROTATIONS: usize = 32;

fn free_reduce(letters: &[Letter]) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(letters.len());
    for &l in letters {
        if out.last() == Some(&l.flipped()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

fn run_rewriter(braid: &BraidWord) -> Result<NormalForm> {
    let n = braid.strands();
    let mut rw = Rewriter {
        n,
        toks: Vec::new(),
        mu: 0,
        gamma: BraidWord::identity(n),
        rho: BraidWord::rho(n)?,
    };
    rw.substitute(braid);
    rw.run();
    let indices = rw
        .toks
        .iter()
        .filter_map(|t| if let Tok::S(k) = t { Some(*k as usize) } else { None })
        .collect();
    Ok(NormalForm { strands: n, mu: rw.mu, indices, gamma: rw.gamma })
}

/// `Some(mu)` when `braid` acts as `theta^mu`.
fn central_power(braid: &BraidWord) -> Result<Option<i64>> {
    let n = braid.strands() as i64;
    let e = braid.exponent_sum();
    if e.rem_euclid(n * (n - 1)) != 0 {
        return Ok(None);
    }
    let mu = e / (n * (n - 1));
    let twist = BraidWord::theta(braid.strands())?.power(mu);
    Ok(equal_via_action(braid, &twist).then_some(mu))
}

/// Checks that `nf` describes `braid` by comparing actions.
pub fn verify(nf: &NormalForm, braid: &BraidWord) -> bool {
    nf.strands == braid.strands()
        && nf.braid().map(|b| equal_via_action(&b, braid)).unwrap_or(false)
}
