// SPDX-License-Identifier: Apache-2.0

//! Free differential calculus in the `a` basis and Jacobians of braid
//! automorphisms.

use num_bigint::BigInt;
use num_traits::One;

use crate::braid::BraidWord;
use crate::error::{Error, Result};
use crate::freegroup::{Basis, FreeWord};
use crate::groupring::{RingElem, RingMatrix};
use crate::lefschetz::{g_elem, partial_gamma};

/// Adds `coeff * d(word)/d(a_j)` to `out[j - 1]` for every `j` in one pass.
fn accumulate_gradient(word: &FreeWord, coeff: &BigInt, out: &mut [RingElem]) {
    let word = word.convert_basis(Basis::A);
    let mut prefix = FreeWord::identity(word.rank(), Basis::A);
    for s in word.syllables() {
        let target = &mut out[s.generator - 1];
        if s.exponent > 0 {
            // prefix * (e + a + ... + a^(k-1))
            for m in 0..s.exponent {
                let mut w = prefix.clone();
                w.push(s.generator, m);
                target.add_term(w, coeff.clone());
            }
        } else {
            // -prefix * (a^-1 + ... + a^k)
            for m in 1..=-s.exponent {
                let mut w = prefix.clone();
                w.push(s.generator, -m);
                target.add_term(w, -coeff);
            }
        }
        prefix.push(s.generator, s.exponent);
    }
}

/// `d x / d a_j` for `j` in `1..=n`.
pub fn fox_derivative(x: &RingElem, j: usize) -> Result<RingElem> {
    let n = x.rank();
    if j == 0 || j > n {
        return Err(Error::GeneratorOutOfRange { index: j as i64, max: n });
    }
    let mut grad = vec![RingElem::zero(n); n];
    for (w, c) in x.terms() {
        accumulate_gradient(w, c, &mut grad);
    }
    Ok(grad.swap_remove(j - 1))
}

/// All partial derivatives of a single word.
pub fn word_gradient(word: &FreeWord) -> Vec<RingElem> {
    let mut grad = vec![RingElem::zero(word.rank()); word.rank()];
    accumulate_gradient(word, &BigInt::one(), &mut grad);
    grad
}

/// `J_ij = d(a_i^beta)/d(a_j)`, an `n x n` matrix.
pub fn jacobian(braid: &BraidWord) -> RingMatrix {
    jacobian_block(braid, braid.strands())
}

/// The top-left `(n-1) x (n-1)` block of the Jacobian.
pub fn reduced_jacobian(braid: &BraidWord) -> RingMatrix {
    jacobian_block(braid, braid.strands() - 1)
}

fn jacobian_block(braid: &BraidWord, dim: usize) -> RingMatrix {
    let n = braid.strands();
    let aut = braid.automorphism();
    let mut m = RingMatrix::zero(n, dim);
    for i in 0..dim {
        let grad = word_gradient(aut.image(i + 1));
        for (j, entry) in grad.into_iter().take(dim).enumerate() {
            m.set(i, j, entry);
        }
    }
    m
}

/// The explicit matrix `A_m` whose image under `beta(m)` is the reduced
/// Jacobian of `beta(m)`.
pub fn lemma3_matrix(m: usize, n: usize) -> Result<RingMatrix> {
    if n < 3 {
        return Err(Error::InvalidRank(n));
    }
    if m == 0 {
        return Err(Error::Precondition("m >= 1".into()));
    }
    let dim = n - 1;
    let gm = partial_gamma(m, n);
    let a2_inv = FreeWord::a(n, 2, -1);
    let mut a = RingMatrix::zero(n, dim);
    a.set(0, 0, gm.clone());
    a.set(0, 1, -g_elem(m, n));
    if dim > 2 {
        let third = &gm.right_mul_word(&a2_inv) + &g_elem(m - 1, n);
        a.set(0, 2, -third);
    }
    for i in 1..dim {
        a.set(i, 0, -RingElem::from_word(&FreeWord::a(n, i + 1, 1)));
        if i + 1 < dim {
            a.set(i, i + 1, RingElem::one(n));
        }
    }
    Ok(a)
}
