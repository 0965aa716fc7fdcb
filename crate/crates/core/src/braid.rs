// SPDX-License-Identifier: Apache-2.0

//! Braid words and their right action on the free group.
//!
//! In the `a` basis the generator `s_i` sends `a_i` to `a_{i+1} a_i^-1 a_{i-1}`
//! and fixes every other `a_j`. Letters act left to right, so the image of
//! `w` under `b1 b2` is the image under `b2` of the image under `b1`.

use std::fmt;

use crate::error::{Error, Result};
use crate::freegroup::{Basis, FreeWord};

/// `s_index` or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub index: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn signed(self) -> i64 {
        if self.inverse {
            -(self.index as i64)
        } else {
            self.index as i64
        }
    }

    pub(crate) fn flipped(self) -> Letter {
        Letter { index: self.index, inverse: !self.inverse }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<Letter>,
}

fn check_strands(n: usize) -> Result<()> {
    if n < 3 {
        return Err(Error::InvalidRank(n));
    }
    Ok(())
}

impl BraidWord {
    pub fn identity(strands: usize) -> Self {
        BraidWord { strands, letters: Vec::new() }
    }

    pub fn new(strands: usize, letters: Vec<Letter>) -> Result<Self> {
        check_strands(strands)?;
        for l in &letters {
            if l.index == 0 || l.index >= strands {
                return Err(Error::GeneratorOutOfRange { index: l.signed(), max: strands - 1 });
            }
        }
        Ok(BraidWord { strands, letters })
    }

    /// `+i` is `s_i`, `-i` is its inverse.
    pub fn from_signed(strands: usize, letters: &[i64]) -> Result<Self> {
        check_strands(strands)?;
        let mut out = Vec::with_capacity(letters.len());
        for &k in letters {
            if k == 0 || k.unsigned_abs() as usize >= strands {
                return Err(Error::GeneratorOutOfRange { index: k, max: strands - 1 });
            }
            out.push(Letter { index: k.unsigned_abs() as usize, inverse: k < 0 });
        }
        Ok(BraidWord { strands, letters: out })
    }

    pub fn sigma(strands: usize, index: usize) -> Result<Self> {
        Self::new(strands, vec![Letter { index, inverse: false }])
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Signed letter count.
    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|l| if l.inverse { -1 } else { 1 }).sum()
    }

    pub fn compose(&self, other: &BraidWord) -> Result<BraidWord> {
        if self.strands != other.strands {
            return Err(Error::RankMismatch { left: self.strands, right: other.strands });
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord { strands: self.strands, letters })
    }

    pub(crate) fn append(&mut self, other: &BraidWord) {
        debug_assert_eq!(self.strands, other.strands);
        self.letters.extend_from_slice(&other.letters);
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|l| l.flipped()).collect(),
        }
    }

    pub fn power(&self, k: i64) -> BraidWord {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut letters = Vec::with_capacity(base.letters.len() * k.unsigned_abs() as usize);
        for _ in 0..k.unsigned_abs() {
            letters.extend_from_slice(&base.letters);
        }
        BraidWord { strands: self.strands, letters }
    }

    /// `rho = s_{n-1} ... s_2 s_1`.
    pub fn rho(strands: usize) -> Result<BraidWord> {
        let letters: Vec<i64> = (1..strands as i64).rev().collect();
        Self::from_signed(strands, &letters)
    }

    /// The full twist `(s_1 ... s_{n-1})^n`.
    pub fn theta(strands: usize) -> Result<BraidWord> {
        let letters: Vec<i64> = (1..strands as i64).collect();
        Ok(Self::from_signed(strands, &letters)?.power(strands as i64))
    }

    /// `beta(i) = s_1^i rho`.
    pub fn beta_atom(i: usize, strands: usize) -> Result<BraidWord> {
        let mut b = Self::sigma(strands, 1)?.power(i as i64);
        b.append(&Self::rho(strands)?);
        Ok(b)
    }

    /// `beta(I) = beta(i_1) ... beta(i_d)`.
    pub fn beta_seq(seq: &[usize], strands: usize) -> Result<BraidWord> {
        if seq.is_empty() {
            return Err(Error::EmptySequence);
        }
        Self::beta_suffix(seq, 1, strands)
    }

    /// `beta_l(I) = beta(i_l, ..., i_d)`, the identity for `l = d + 1`.
    pub fn beta_suffix(seq: &[usize], l: usize, strands: usize) -> Result<BraidWord> {
        check_strands(strands)?;
        let mut b = BraidWord::identity(strands);
        for &i in seq.iter().skip(l.saturating_sub(1)) {
            b.append(&Self::beta_atom(i, strands)?);
        }
        Ok(b)
    }

    /// Images of all `a_j` under this braid.
    pub fn automorphism(&self) -> Automorphism {
        let mut aut = Automorphism::identity(self.strands);
        for &l in &self.letters {
            for img in aut.images.iter_mut() {
                *img = substitute_letter(img, l);
            }
        }
        aut
    }

    pub fn act(&self, word: &FreeWord) -> Result<FreeWord> {
        if word.rank() != self.strands {
            return Err(Error::RankMismatch { left: self.strands, right: word.rank() });
        }
        Ok(self.automorphism().apply(word))
    }

    /// Puncture labels after the braid, indexed by position.
    pub fn induced_permutation(&self) -> Permutation {
        let mut labels: Vec<usize> = (1..=self.strands).collect();
        for l in &self.letters {
            labels.swap(l.index - 1, l.index);
        }
        Permutation(labels)
    }

    /// Accepts signed integers (`1 -2`) or `s1^-1` style tokens. An empty
    /// string or `e` gives the identity.
    pub fn parse(text: &str, strands: usize) -> Result<BraidWord> {
        check_strands(strands)?;
        let mut letters = Vec::new();
        let tokens: Vec<&str> = text.split_whitespace().collect();
        if tokens == ["e"] {
            return Ok(BraidWord::identity(strands));
        }
        for (pos, tok) in tokens.iter().enumerate() {
            let position = pos + 1;
            let (index, count): (i64, i64) = if let Some(rest) = tok.strip_prefix('s') {
                let (i, k) = rest.split_once('^').unwrap_or((rest, "1"));
                let i: i64 =
                    i.parse().map_err(|_| Error::parse(position, format!("bad generator `{tok}`")))?;
                let k: i64 =
                    k.parse().map_err(|_| Error::parse(position, format!("bad exponent `{tok}`")))?;
                if k == 0 {
                    return Err(Error::parse(position, "zero exponent"));
                }
                (i, k)
            } else {
                let k: i64 = tok
                    .parse()
                    .map_err(|_| Error::parse(position, format!("not an integer: `{tok}`")))?;
                if k == 0 {
                    return Err(Error::parse(position, "zero is not a generator"));
                }
                (k.abs(), k.signum())
            };
            if index < 1 || index >= strands as i64 {
                return Err(Error::parse(position, "generator index out of range"));
            }
            let letter = Letter { index: index as usize, inverse: count < 0 };
            for _ in 0..count.unsigned_abs() {
                letters.push(letter);
            }
        }
        Ok(BraidWord { strands, letters })
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, l) in self.letters.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}", l.signed())?;
        }
        Ok(())
    }
}

/// `true` when both braids send every `a_i` to the same word.
pub fn equal_via_action(lhs: &BraidWord, rhs: &BraidWord) -> bool {
    lhs.strands == rhs.strands && lhs.automorphism() == rhs.automorphism()
}

fn substitute_letter(word: &FreeWord, letter: Letter) -> FreeWord {
    let n = word.rank();
    let i = letter.index;
    if !word.syllables().iter().any(|s| s.generator == i) {
        return word.clone();
    }
    // s_i: a_i -> a_{i+1} a_i^-1 a_{i-1};  s_i^-1: a_i -> a_{i-1} a_i^-1 a_{i+1}
    let (left, right) = if letter.inverse { (i - 1, i + 1) } else { (i + 1, i - 1) };
    let mut image = FreeWord::identity(n, Basis::A);
    if left > 0 {
        image.push(left, 1);
    }
    image.push(i, -1);
    if right > 0 {
        image.push(right, 1);
    }
    let image_inv = image.invert();
    let mut out = FreeWord::identity(n, Basis::A);
    for s in word.syllables() {
        if s.generator == i {
            let piece = if s.exponent > 0 { &image } else { &image_inv };
            for _ in 0..s.exponent.unsigned_abs() {
                out.extend_from(piece);
            }
        } else {
            out.push(s.generator, s.exponent);
        }
    }
    out
}

/// A free-group endomorphism given by the images of `a_1..a_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automorphism {
    images: Vec<FreeWord>,
}

impl Automorphism {
    pub fn identity(rank: usize) -> Self {
        Automorphism { images: (1..=rank).map(|j| FreeWord::a(rank, j, 1)).collect() }
    }

    pub fn rank(&self) -> usize {
        self.images.len()
    }

    /// Image of `a_j` (one-based), in the `a` basis.
    pub fn image(&self, j: usize) -> &FreeWord {
        &self.images[j - 1]
    }

    /// The automorphism applying `self` first and then `next`.
    pub fn then(&self, next: &Automorphism) -> Automorphism {
        Automorphism { images: self.images.iter().map(|w| next.apply(w)).collect() }
    }

    /// Image of `word`, returned in the basis of the input.
    pub fn apply(&self, word: &FreeWord) -> FreeWord {
        let basis = word.basis();
        let w = word.convert_basis(Basis::A);
        let mut out = FreeWord::identity(w.rank(), Basis::A);
        for s in w.syllables() {
            let img = &self.images[s.generator - 1];
            if s.exponent > 0 {
                for _ in 0..s.exponent {
                    out.extend_from(img);
                }
            } else {
                let inv = img.invert();
                for _ in 0..(-s.exponent) {
                    out.extend_from(&inv);
                }
            }
        }
        out.convert_basis(basis)
    }
}

/// Labels by position: entry `k` is the label now at position `k + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Permutation(pub Vec<usize>);

impl Permutation {
    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(k, &l)| l == k + 1)
    }

    /// Cycle lengths, longest first.
    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            let mut len = 0;
            let mut k = start;
            while !seen[k] {
                seen[k] = true;
                k = self.0[k] - 1;
                len += 1;
            }
            if len > 0 {
                out.push(len);
            }
        }
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }

    pub fn is_full_cycle(&self) -> bool {
        self.cycle_type() == [self.0.len()]
    }
}
