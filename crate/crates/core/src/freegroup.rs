// SPDX-License-Identifier: Apache-2.0

//! Words in the free group of rank `n`.
//!
//! Two bases are supported: the standard generators `x1..xn` and the
//! partial products `a_i = x1 x2 ... x_i` (with `a_0 = e`). Words are kept
//! as freely reduced syllable lists so that equality is structural.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Basis {
    /// Standard generators `x_i`.
    Xi,
    /// Partial products `a_i = x_1 ... x_i`.
    A,
}

impl Basis {
    fn letter(self) -> char {
        match self {
            Basis::Xi => 'x',
            Basis::A => 'a',
        }
    }
}

/// A generator raised to a nonzero power.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Syllable {
    pub generator: usize,
    pub exponent: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FreeWord {
    rank: usize,
    basis: Basis,
    syllables: Vec<Syllable>,
}

fn push_reduced(out: &mut Vec<Syllable>, generator: usize, exponent: i64) {
    if exponent == 0 {
        return;
    }
    if let Some(last) = out.last_mut() {
        if last.generator == generator {
            last.exponent += exponent;
            if last.exponent == 0 {
                out.pop();
            }
            return;
        }
    }
    out.push(Syllable { generator, exponent });
}

impl FreeWord {
    pub fn identity(rank: usize, basis: Basis) -> Self {
        FreeWord { rank, basis, syllables: Vec::new() }
    }

    /// `g_index^exponent`. In the `A` basis index 0 stands for `a_0 = e`.
    pub fn generator_power(rank: usize, basis: Basis, index: usize, exponent: i64) -> Result<Self> {
        let mut w = FreeWord::identity(rank, basis);
        if index == 0 && basis == Basis::A {
            return Ok(w);
        }
        if index == 0 || index > rank {
            return Err(Error::GeneratorOutOfRange { index: index as i64, max: rank });
        }
        push_reduced(&mut w.syllables, index, exponent);
        Ok(w)
    }

    pub fn generator(rank: usize, basis: Basis, index: usize) -> Result<Self> {
        Self::generator_power(rank, basis, index, 1)
    }

    /// Shorthand for `a_index^exponent`; panics on an out-of-range index.
    pub fn a(rank: usize, index: usize, exponent: i64) -> Self {
        Self::generator_power(rank, Basis::A, index, exponent).expect("generator index in range")
    }

    /// Builds a word from arbitrary (possibly unreduced) syllables.
    pub fn from_syllables<I>(rank: usize, basis: Basis, syllables: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, i64)>,
    {
        let mut out = Vec::new();
        for (g, k) in syllables {
            if g == 0 && basis == Basis::A {
                continue;
            }
            if g == 0 || g > rank {
                return Err(Error::GeneratorOutOfRange { index: g as i64, max: rank });
            }
            push_reduced(&mut out, g, k);
        }
        Ok(FreeWord { rank, basis, syllables: out })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Number of letters, counting `g^k` as `|k|` letters.
    pub fn letter_length(&self) -> u64 {
        self.syllables.iter().map(|s| s.exponent.unsigned_abs()).sum()
    }

    fn check_compatible(&self, other: &FreeWord) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch { left: self.rank, right: other.rank });
        }
        if self.basis != other.basis {
            return Err(Error::BasisMismatch);
        }
        Ok(())
    }

    pub fn concat(&self, other: &FreeWord) -> Result<FreeWord> {
        self.check_compatible(other)?;
        let mut out = self.syllables.clone();
        out.reserve(other.syllables.len());
        for s in &other.syllables {
            push_reduced(&mut out, s.generator, s.exponent);
        }
        Ok(FreeWord { rank: self.rank, basis: self.basis, syllables: out })
    }

    /// Appends `g^k` in place.
    pub(crate) fn push(&mut self, generator: usize, exponent: i64) {
        debug_assert!(generator >= 1 && generator <= self.rank);
        push_reduced(&mut self.syllables, generator, exponent);
    }

    pub(crate) fn extend_from(&mut self, other: &FreeWord) {
        debug_assert_eq!(self.basis, other.basis);
        for s in &other.syllables {
            push_reduced(&mut self.syllables, s.generator, s.exponent);
        }
    }

    pub fn invert(&self) -> FreeWord {
        let syllables = self
            .syllables
            .iter()
            .rev()
            .map(|s| Syllable { generator: s.generator, exponent: -s.exponent })
            .collect();
        FreeWord { rank: self.rank, basis: self.basis, syllables }
    }

    pub fn pow(&self, k: i64) -> FreeWord {
        let base = if k < 0 { self.invert() } else { self.clone() };
        let mut out = FreeWord::identity(self.rank, self.basis);
        for _ in 0..k.unsigned_abs() {
            out.extend_from(&base);
        }
        out
    }

    /// Exponent sum with respect to the standard generators (`e(a_i) = i`).
    pub fn exponent_sum(&self) -> i64 {
        match self.basis {
            Basis::Xi => self.syllables.iter().map(|s| s.exponent).sum(),
            Basis::A => self.syllables.iter().map(|s| s.generator as i64 * s.exponent).sum(),
        }
    }

    pub fn convert_basis(&self, target: Basis) -> FreeWord {
        if target == self.basis {
            return self.clone();
        }
        let mut out = FreeWord::identity(self.rank, target);
        for s in &self.syllables {
            let i = s.generator;
            match target {
                // x_i = a_{i-1}^-1 a_i
                Basis::A => {
                    for _ in 0..s.exponent.unsigned_abs() {
                        if s.exponent > 0 {
                            if i > 1 {
                                out.push(i - 1, -1);
                            }
                            out.push(i, 1);
                        } else {
                            out.push(i, -1);
                            if i > 1 {
                                out.push(i - 1, 1);
                            }
                        }
                    }
                }
                // a_i = x_1 ... x_i
                Basis::Xi => {
                    for _ in 0..s.exponent.unsigned_abs() {
                        if s.exponent > 0 {
                            for g in 1..=i {
                                out.push(g, 1);
                            }
                        } else {
                            for g in (1..=i).rev() {
                                out.push(g, -1);
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// Parses `e` or tokens like `a1 a2^-3` / `x1^2 x3`.
    pub fn parse(text: &str, rank: usize) -> Result<FreeWord> {
        let tokens: Vec<&str> = text.split_whitespace().collect();
        if tokens.is_empty() {
            return Err(Error::parse(0, "empty word"));
        }
        if tokens == ["e"] {
            return Ok(FreeWord::identity(rank, Basis::A));
        }
        let mut basis = None;
        let mut parts = Vec::with_capacity(tokens.len());
        for (pos, tok) in tokens.iter().enumerate() {
            let position = pos + 1;
            let mut chars = tok.chars();
            let b = match chars.next() {
                Some('a') => Basis::A,
                Some('x') => Basis::Xi,
                _ => return Err(Error::parse(position, format!("unexpected token `{tok}`"))),
            };
            if *basis.get_or_insert(b) != b {
                return Err(Error::parse(position, "mixed bases in one word"));
            }
            let rest = chars.as_str();
            let (idx, exp) = match rest.split_once('^') {
                Some((i, k)) => (i, k),
                None => (rest, "1"),
            };
            let index: usize = idx
                .parse()
                .map_err(|_| Error::parse(position, format!("bad generator index in `{tok}`")))?;
            let exponent: i64 = exp
                .parse()
                .map_err(|_| Error::parse(position, format!("bad exponent in `{tok}`")))?;
            if index == 0 || index > rank {
                return Err(Error::parse(position, "generator index out of range"));
            }
            parts.push((index, exponent));
        }
        FreeWord::from_syllables(rank, basis.unwrap_or(Basis::A), parts)
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            return f.write_str("e");
        }
        let letter = self.basis.letter();
        for (k, s) in self.syllables.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{letter}{}", s.generator)?;
            if s.exponent != 1 {
                write!(f, "^{}", s.exponent)?;
            }
        }
        Ok(())
    }
}

impl Ord for FreeWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.syllables
            .len()
            .cmp(&other.syllables.len())
            .then_with(|| {
                let lhs = self.syllables.iter().map(|s| (s.generator, s.exponent));
                let rhs = other.syllables.iter().map(|s| (s.generator, s.exponent));
                lhs.cmp(rhs)
            })
            .then_with(|| self.rank.cmp(&other.rank))
            .then_with(|| self.basis.cmp(&other.basis))
    }
}

impl PartialOrd for FreeWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Group product. Panics when rank or basis differ; use [`FreeWord::concat`]
/// for a checked version.
impl Mul<&FreeWord> for &FreeWord {
    type Output = FreeWord;

    fn mul(self, rhs: &FreeWord) -> FreeWord {
        self.concat(rhs).expect("free words from the same group")
    }
}
