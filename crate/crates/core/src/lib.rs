// SPDX-License-Identifier: Apache-2.0

//! Braid words acting on free groups, Fox calculus, and Lefschetz-type
//! invariants of punctured-disk homeomorphisms.
//!
//! Braids act on `F_n` from the right in the basis `a_i = x_1 ... x_i`.
//! A braid is first brought to the shape `gamma^-1 theta^mu beta(I) gamma`
//! ([`normalize()`]); the Lefschetz representative is then either summed
//! over cyclic partitions ([`theorem1`]) or read off the Fox Jacobian
//! ([`foxtrace`]).

pub mod braid;
pub mod burau;
pub mod dynamics;
pub mod error;
pub mod fox;
pub mod freegroup;
pub mod groupring;
pub mod lefschetz;
pub mod normalize;

pub use num_bigint::BigInt;

pub use braid::{equal_via_action, Automorphism, BraidWord, Letter, Permutation};
pub use burau::{
    abelianize, principal_minor_sum, pm_trace_identity_check, reduced_burau, reduced_burau_by_letters,
    LaurentMatrix, LaurentPoly,
};
pub use dynamics::{
    classify, cyclicity_report, pseudo_anosov_certificate, rotation_data, rotation_data_for, Classification,
    CertificateReport, CyclicityReport, RotationData,
};
pub use error::{Error, Result};
pub use fox::{fox_derivative, jacobian, lemma3_matrix, reduced_jacobian};
pub use freegroup::{Basis, FreeWord, Syllable};
pub use groupring::{RingElem, RingElemJson, RingMatrix};
pub use lefschetz::{
    enumerate_partitions, enumerate_partitions_capped, enumerate_partitions_prime, foxtrace, lemma5_entry,
    merge_classes, nielsen_upper, theorem1, theorem2_bounds, Block, LefschetzResult, Partition, Route,
    NielsenBounds,
};
pub use normalize::{normalize, verify, NormalForm, NormalFormJson};
