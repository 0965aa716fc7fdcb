// SPDX-License-Identifier: Apache-2.0

//! Laurent polynomials, the abelianization `w -> t^e(w)` of the group ring,
//! and reduced Burau matrices obtained by abelianizing reduced Fox
//! Jacobians in the `a` basis.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::braid::{BraidWord, Letter};
use crate::error::{Error, Result};
use crate::fox::reduced_jacobian;
use crate::groupring::{RingElem, RingMatrix};
use crate::lefschetz::enumerate_partitions_capped;

/// Element of `Z[t, t^-1]`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, BigInt::one())
    }

    pub fn monomial(exponent: i64, coeff: impl Into<BigInt>) -> Self {
        let mut p = Self::zero();
        p.add_term(exponent, coeff.into());
        p
    }

    pub fn constant(coeff: impl Into<BigInt>) -> Self {
        Self::monomial(0, coeff)
    }

    pub fn from_pairs<I: IntoIterator<Item = (i64, BigInt)>>(pairs: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in pairs {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, exponent: i64, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(exponent).or_default();
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&exponent);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of nonzero monomials.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exponent: i64) -> BigInt {
        self.terms.get(&exponent).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    /// Value at `t = 1`.
    pub fn eval_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn pow(&self, k: u32) -> LaurentPoly {
        let mut out = LaurentPoly::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// `self / divisor` when the quotient is again a Laurent polynomial.
    pub fn exact_div(&self, divisor: &LaurentPoly) -> Option<LaurentPoly> {
        let (&top_b, lead_b) = divisor.terms.iter().next_back()?;
        let low_b = *divisor.terms.keys().next()?;
        let mut rem = self.clone();
        let mut quot = LaurentPoly::zero();
        let floor = match rem.terms.keys().next() {
            Some(&low_a) => low_a - low_b,
            None => return Some(quot),
        };
        while let Some((&top_a, lead_a)) = rem.terms.iter().next_back() {
            let e = top_a - top_b;
            if e < floor {
                return None;
            }
            let (c, r) = lead_a.div_rem(lead_b);
            if !r.is_zero() {
                return None;
            }
            let step = LaurentPoly::monomial(e, c);
            rem = &rem - &(&step * divisor);
            quot += &step;
        }
        Some(quot)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (&e, c)) in self.terms.iter().enumerate() {
            if k == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            let mag = c.abs();
            if e == 0 {
                write!(f, "{mag}")?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{mag}")?;
            }
            if e == 1 {
                f.write_str("t")?;
            } else {
                write!(f, "t^{e}")?;
            }
        }
        Ok(())
    }
}

/// `{"-1": "2", "3": "-1"}`, exponents ascending.
impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.terms.len()))?;
        for (e, c) in &self.terms {
            map.serialize_entry(&e.to_string(), &c.to_string())?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw: BTreeMap<String, String> = BTreeMap::deserialize(deserializer)?;
        let mut p = LaurentPoly::zero();
        for (e, c) in raw {
            let e: i64 = e.parse().map_err(D::Error::custom)?;
            let c: BigInt = c.parse().map_err(D::Error::custom)?;
            p.add_term(e, c);
        }
        Ok(p)
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

/// Sends each word `w` to `t^e(w)`.
pub fn abelianize(x: &RingElem) -> LaurentPoly {
    let mut p = LaurentPoly::zero();
    for (w, c) in x.terms() {
        p.add_term(w.exponent_sum(), c.clone());
    }
    p
}

/// Square matrix over `Z[t, t^-1]`, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentMatrix {
    dim: usize,
    entries: Vec<LaurentPoly>,
}

impl LaurentMatrix {
    pub fn zero(dim: usize) -> Self {
        LaurentMatrix { dim, entries: vec![LaurentPoly::zero(); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zero(dim);
        for i in 0..dim {
            m.set(i, i, LaurentPoly::one());
        }
        m
    }

    pub fn from_integers(rows: &[Vec<i64>]) -> Result<Self> {
        let dim = rows.len();
        let mut m = Self::zero(dim);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::DimensionMismatch { left: dim, right: row.len() });
            }
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, LaurentPoly::constant(v));
            }
        }
        Ok(m)
    }

    /// Entrywise abelianization.
    pub fn abelianize(m: &RingMatrix) -> Self {
        let dim = m.dim();
        let mut out = Self::zero(dim);
        for i in 0..dim {
            for j in 0..dim {
                out.set(i, j, abelianize(m.get(i, j)));
            }
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> &LaurentPoly {
        &self.entries[row * self.dim + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: LaurentPoly) {
        self.entries[row * self.dim + col] = value;
    }

    pub fn trace(&self) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for i in 0..self.dim {
            out += self.get(i, i);
        }
        out
    }

    pub fn mat_mul(&self, other: &LaurentMatrix) -> Result<LaurentMatrix> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: other.dim });
        }
        let n = self.dim;
        let mut out = Self::zero(n);
        for i in 0..n {
            for k in 0..n {
                let mut acc = LaurentPoly::zero();
                for j in 0..n {
                    acc += &(self.get(i, j) * other.get(j, k));
                }
                out.set(i, k, acc);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> LaurentMatrix {
        let mut out = Self::identity(self.dim);
        for _ in 0..k {
            out = out.mat_mul(self).expect("same dimension");
        }
        out
    }

    /// Submatrix on the given rows and columns (the same index set).
    pub fn principal_submatrix(&self, indices: &[usize]) -> LaurentMatrix {
        let k = indices.len();
        let mut out = Self::zero(k);
        for (a, &i) in indices.iter().enumerate() {
            for (b, &j) in indices.iter().enumerate() {
                out.set(a, b, self.get(i, j).clone());
            }
        }
        out
    }

    /// Fraction-free elimination; every division is exact.
    pub fn determinant(&self) -> LaurentPoly {
        let n = self.dim;
        if n == 0 {
            return LaurentPoly::one();
        }
        let mut m: Vec<Vec<LaurentPoly>> =
            (0..n).map(|i| (0..n).map(|j| self.get(i, j).clone()).collect()).collect();
        let mut negate = false;
        let mut prev = LaurentPoly::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                    Some(i) => {
                        m.swap(i, k);
                        negate = !negate;
                    }
                    None => return LaurentPoly::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                    m[i][j] = num.exact_div(&prev).expect("fraction-free elimination divides exactly");
                }
            }
            prev = m[k][k].clone();
        }
        let det = m[n - 1][n - 1].clone();
        if negate {
            -det
        } else {
            det
        }
    }

    pub fn rows(&self) -> impl Iterator<Item = &[LaurentPoly]> {
        self.entries.chunks(self.dim.max(1)).take(self.dim)
    }
}

/// `Bur(beta)`: the reduced Fox Jacobian with every entry abelianized.
pub fn reduced_burau(braid: &BraidWord) -> LaurentMatrix {
    LaurentMatrix::abelianize(&reduced_jacobian(braid))
}

/// `Bur(beta)` as a product of single-letter matrices.
pub fn reduced_burau_by_letters(braid: &BraidWord) -> LaurentMatrix {
    let n = braid.strands();
    let mut cache: HashMap<Letter, LaurentMatrix> = HashMap::new();
    let mut out = LaurentMatrix::identity(n - 1);
    for &l in braid.letters() {
        let m = cache.entry(l).or_insert_with(|| {
            let single = BraidWord::new(n, vec![l]).expect("letter of a valid braid");
            reduced_burau(&single)
        });
        out = out.mat_mul(m).expect("same dimension");
    }
    out
}

/// Sum of the principal minors of order `k`; zero unless `1 <= k <= dim`.
pub fn principal_minor_sum(a: &LaurentMatrix, k: usize) -> LaurentPoly {
    let dim = a.dim();
    if k == 0 || k > dim {
        return LaurentPoly::zero();
    }
    let mut total = LaurentPoly::zero();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        total += &a.principal_submatrix(&idx).determinant();
        // next k-subset in lexicographic order
        let mut pos = k;
        while pos > 0 && idx[pos - 1] == dim - k + pos - 1 {
            pos -= 1;
        }
        if pos == 0 {
            return total;
        }
        idx[pos - 1] += 1;
        for q in pos..k {
            idx[q] = idx[q - 1] + 1;
        }
    }
}

/// Both sides of `tr A^d = sum over partitions of (-1)^(d + #blocks)
/// prod PM(A; |B|)`, with block lengths capped by the dimension.
pub fn pm_trace_identity(a: &LaurentMatrix, d: usize) -> (LaurentPoly, LaurentPoly) {
    let lhs = a.pow(d as u32).trace();
    let pms: Vec<LaurentPoly> = (0..=a.dim()).map(|k| principal_minor_sum(a, k)).collect();
    let mut rhs = LaurentPoly::zero();
    for part in enumerate_partitions_capped(d, a.dim()) {
        let mut term = if (d + part.blocks.len()).is_multiple_of(2) { LaurentPoly::one() } else { -LaurentPoly::one() };
        for b in &part.blocks {
            term = &term * &pms[b.len()];
        }
        rhs += &term;
    }
    (lhs, rhs)
}

pub fn pm_trace_identity_check(a: &LaurentMatrix, d: usize) -> bool {
    let (lhs, rhs) = pm_trace_identity(a, d);
    lhs == rhs
}
