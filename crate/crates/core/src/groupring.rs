// SPDX-License-Identifier: Apache-2.0

//! The integral group ring of the free group and square matrices over it.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::braid::{Automorphism, BraidWord};
use crate::error::{Error, Result};
use crate::freegroup::{Basis, FreeWord};

/// Finite integer combination of words, stored in the `a` basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingElem {
    rank: usize,
    terms: BTreeMap<FreeWord, BigInt>,
}

impl RingElem {
    pub fn zero(rank: usize) -> Self {
        RingElem { rank, terms: BTreeMap::new() }
    }

    pub fn one(rank: usize) -> Self {
        Self::from_word(&FreeWord::identity(rank, Basis::A))
    }

    pub fn from_word(word: &FreeWord) -> Self {
        Self::monomial(word, BigInt::one())
    }

    pub fn monomial(word: &FreeWord, coeff: impl Into<BigInt>) -> Self {
        let mut out = Self::zero(word.rank());
        out.add_term(word.convert_basis(Basis::A), coeff.into());
        out
    }

    /// `c * e`.
    pub fn constant(rank: usize, coeff: impl Into<BigInt>) -> Self {
        Self::monomial(&FreeWord::identity(rank, Basis::A), coeff)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of terms with nonzero coefficient.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical word order.
    pub fn terms(&self) -> impl Iterator<Item = (&FreeWord, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, word: &FreeWord) -> BigInt {
        self.terms.get(&word.convert_basis(Basis::A)).cloned().unwrap_or_default()
    }

    /// Sum of all coefficients (the augmentation).
    pub fn coefficient_sum(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub(crate) fn add_term(&mut self, word: FreeWord, coeff: BigInt) {
        debug_assert_eq!(word.basis(), Basis::A);
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(word) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_rank(&self, other: &RingElem) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch { left: self.rank, right: other.rank });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &RingElem) -> Result<RingElem> {
        self.check_rank(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &RingElem) -> Result<RingElem> {
        self.checked_add(&other.neg_ref())
    }

    pub fn checked_mul(&self, other: &RingElem) -> Result<RingElem> {
        self.check_rank(other)?;
        let mut out = RingElem::zero(self.rank);
        for (u, c) in &self.terms {
            for (v, d) in &other.terms {
                let mut w = u.clone();
                w.extend_from(v);
                out.add_term(w, c * d);
            }
        }
        Ok(out)
    }

    fn neg_ref(&self) -> RingElem {
        RingElem {
            rank: self.rank,
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> RingElem {
        if k.is_zero() {
            return RingElem::zero(self.rank);
        }
        RingElem {
            rank: self.rank,
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c * k)).collect(),
        }
    }

    /// Multiplies every term on the left by `word`.
    pub fn left_mul_word(&self, word: &FreeWord) -> RingElem {
        let word = word.convert_basis(Basis::A);
        self.map_words(|w| &word * w)
    }

    /// Multiplies every term on the right by `word`.
    pub fn right_mul_word(&self, word: &FreeWord) -> RingElem {
        let word = word.convert_basis(Basis::A);
        self.map_words(|w| w * &word)
    }

    /// Replaces every word by `f(word)` and re-collects coefficients.
    pub fn map_words<F>(&self, mut f: F) -> RingElem
    where
        F: FnMut(&FreeWord) -> FreeWord,
    {
        let mut out = RingElem::zero(self.rank);
        for (w, c) in &self.terms {
            out.add_term(f(w).convert_basis(Basis::A), c.clone());
        }
        out
    }

    /// Image under a precomputed free-group automorphism.
    pub fn apply(&self, aut: &Automorphism) -> RingElem {
        self.map_words(|w| aut.apply(w))
    }

    /// Image under the automorphism induced by a braid.
    pub fn apply_aut(&self, braid: &BraidWord) -> Result<RingElem> {
        if braid.strands() != self.rank {
            return Err(Error::RankMismatch { left: self.rank, right: braid.strands() });
        }
        Ok(self.apply(&braid.automorphism()))
    }

    pub fn to_json(&self) -> RingElemJson {
        RingElemJson {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| TermJson { word: w.to_string(), coeff: c.to_string() })
                .collect(),
        }
    }
}

/// Serialized form: `{"terms":[{"word":"a1 a2^-1","coeff":"-3"}]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingElemJson {
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub word: String,
    pub coeff: String,
}

impl RingElemJson {
    pub fn into_elem(self, rank: usize) -> Result<RingElem> {
        let mut out = RingElem::zero(rank);
        for (pos, t) in self.terms.into_iter().enumerate() {
            let word = FreeWord::parse(&t.word, rank)?;
            let coeff: BigInt = t
                .coeff
                .parse()
                .map_err(|_| Error::parse(pos + 1, format!("bad coefficient `{}`", t.coeff)))?;
            out.add_term(word.convert_basis(Basis::A), coeff);
        }
        Ok(out)
    }
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if k == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let mag = c.abs();
            if mag.is_one() {
                write!(f, "{w}")?;
            } else {
                write!(f, "{mag}*{w}")?;
            }
        }
        Ok(())
    }
}

impl Add<&RingElem> for &RingElem {
    type Output = RingElem;
    fn add(self, rhs: &RingElem) -> RingElem {
        self.checked_add(rhs).expect("ring elements of equal rank")
    }
}

impl AddAssign<&RingElem> for RingElem {
    fn add_assign(&mut self, rhs: &RingElem) {
        assert_eq!(self.rank, rhs.rank, "ring elements of equal rank");
        for (w, c) in &rhs.terms {
            self.add_term(w.clone(), c.clone());
        }
    }
}

impl Sub<&RingElem> for &RingElem {
    type Output = RingElem;
    fn sub(self, rhs: &RingElem) -> RingElem {
        self.checked_sub(rhs).expect("ring elements of equal rank")
    }
}

impl Mul<&RingElem> for &RingElem {
    type Output = RingElem;
    fn mul(self, rhs: &RingElem) -> RingElem {
        self.checked_mul(rhs).expect("ring elements of equal rank")
    }
}

impl Neg for &RingElem {
    type Output = RingElem;
    fn neg(self) -> RingElem {
        self.neg_ref()
    }
}

impl Neg for RingElem {
    type Output = RingElem;
    fn neg(self) -> RingElem {
        self.neg_ref()
    }
}

/// Square matrix over the group ring, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingMatrix {
    rank: usize,
    dim: usize,
    entries: Vec<RingElem>,
}

impl RingMatrix {
    pub fn zero(rank: usize, dim: usize) -> Self {
        RingMatrix { rank, dim, entries: vec![RingElem::zero(rank); dim * dim] }
    }

    pub fn identity(rank: usize, dim: usize) -> Self {
        let mut m = Self::zero(rank, dim);
        for i in 0..dim {
            m.set(i, i, RingElem::one(rank));
        }
        m
    }

    pub fn from_rows(rank: usize, rows: Vec<Vec<RingElem>>) -> Result<Self> {
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch { left: dim, right: row.len() });
            }
            for e in row {
                if e.rank() != rank {
                    return Err(Error::RankMismatch { left: rank, right: e.rank() });
                }
                entries.push(e);
            }
        }
        Ok(RingMatrix { rank, dim, entries })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Entry at zero-based `(row, col)`.
    pub fn get(&self, row: usize, col: usize) -> &RingElem {
        &self.entries[row * self.dim + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: RingElem) {
        self.entries[row * self.dim + col] = value;
    }

    pub fn trace(&self) -> RingElem {
        let mut out = RingElem::zero(self.rank);
        for i in 0..self.dim {
            out = &out + self.get(i, i);
        }
        out
    }

    /// `(AB)_ik = sum_j A_ij B_jk`, with entries of `A` on the left.
    pub fn mat_mul(&self, other: &RingMatrix) -> Result<RingMatrix> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: other.dim });
        }
        if self.rank != other.rank {
            return Err(Error::RankMismatch { left: self.rank, right: other.rank });
        }
        let mut out = RingMatrix::zero(self.rank, self.dim);
        for i in 0..self.dim {
            for k in 0..self.dim {
                let mut acc = RingElem::zero(self.rank);
                for j in 0..self.dim {
                    let (a, b) = (self.get(i, j), other.get(j, k));
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                out.set(i, k, acc);
            }
        }
        Ok(out)
    }

    pub fn apply(&self, aut: &Automorphism) -> RingMatrix {
        RingMatrix {
            rank: self.rank,
            dim: self.dim,
            entries: self.entries.iter().map(|e| e.apply(aut)).collect(),
        }
    }

    /// Entrywise image under the automorphism induced by `braid`.
    pub fn apply_aut(&self, braid: &BraidWord) -> Result<RingMatrix> {
        if braid.strands() != self.rank {
            return Err(Error::RankMismatch { left: self.rank, right: braid.strands() });
        }
        Ok(self.apply(&braid.automorphism()))
    }

    /// The top-left `k x k` block.
    pub fn leading_block(&self, k: usize) -> RingMatrix {
        let mut out = RingMatrix::zero(self.rank, k);
        for i in 0..k {
            for j in 0..k {
                out.set(i, j, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn rows(&self) -> impl Iterator<Item = &[RingElem]> {
        self.entries.chunks(self.dim.max(1)).take(self.dim)
    }

    /// Row-major array of serialized entries.
    pub fn to_json(&self) -> Vec<Vec<RingElemJson>> {
        self.rows().map(|r| r.iter().map(RingElem::to_json).collect()).collect()
    }
}
