// SPDX-License-Identifier: Apache-2.0

//! Boundary rotation data and sufficient conditions for pseudo-Anosov
//! behaviour, computed from `(mu, I, n)` alone.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::braid::BraidWord;
use crate::error::Result;
use crate::lefschetz::check_main_hypothesis;
use crate::normalize::{normalize, NormalForm, NormalFormJson};

/// Least boundary period `m`, the integer `nu`, and `nu / m mod 1` reduced
/// into `[0, 1)`. `nu` is only meaningful modulo `m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RotationData {
    pub m: u64,
    pub nu: i64,
    pub rotation_numerator: u64,
    pub rotation_denominator: u64,
}

impl RotationData {
    pub fn rotation_number(&self) -> String {
        format!("{}/{}", self.rotation_numerator, self.rotation_denominator)
    }
}

/// Rotation data of `theta^mu beta(I)` in `B_n`.
pub fn rotation_data_for(mu: i64, seq: &[usize], n: usize) -> Result<RotationData> {
    check_main_hypothesis(seq, n)?;
    let d = seq.len() as u64;
    let l = d.lcm(&(n as u64 - 2));
    let m = l / d;
    let nu = m as i64 * mu + (l / (n as u64 - 2)) as i64;
    let num = nu.rem_euclid(m as i64) as u64;
    let g = num.gcd(&m);
    Ok(RotationData { m, nu, rotation_numerator: num / g, rotation_denominator: m / g })
}

pub fn rotation_data(nf: &NormalForm) -> Result<RotationData> {
    rotation_data_for(nf.mu, nf.require_sequence()?, nf.strands)
}

pub const PSEUDO_ANOSOV_STATEMENT: &str = "pseudo-Anosov, foliations with no interior singularities";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateReport {
    pub certified: bool,
    pub reasons: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub statement: Option<String>,
}

/// Checks `n >= 5`, all `i_l >= 2`, uniform parity of `I`, and
/// `gcd(n - 2, d) = 1`. Every hypothesis gets a reason line.
pub fn pseudo_anosov_certificate(seq: &[usize], n: usize) -> CertificateReport {
    let mut reasons = Vec::new();
    let mut ok = true;
    let mut check = |pass: bool, good: String, bad: String| {
        ok &= pass;
        reasons.push(if pass { good } else { bad });
    };
    check(n >= 5, "n >= 5".into(), "n < 5".into());
    check(!seq.is_empty(), format!("d = {}", seq.len()), "d = 0: empty sequence".into());
    check(seq.iter().all(|&i| i >= 2), "all i_l >= 2".into(), "some i_l < 2".into());
    let even = seq.iter().all(|i| i % 2 == 0);
    let odd = seq.iter().all(|i| i % 2 == 1);
    check(
        even || odd,
        if even { "all i_l even".into() } else { "all i_l odd".into() },
        "mixed parity".into(),
    );
    let g = (n.saturating_sub(2)).gcd(&seq.len());
    check(g == 1, "gcd(n - 2, d) = 1".into(), format!("gcd(n - 2, d) = {g}"));
    CertificateReport { certified: ok, reasons, statement: ok.then(|| PSEUDO_ANOSOV_STATEMENT.to_string()) }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclicityReport {
    pub n_cycle: bool,
    pub n_prime: bool,
    pub exponent_sum: i64,
    pub exponent_sum_divisible_by_n_minus_1: bool,
    /// Conclusions of the cited criteria; informational only.
    pub flags: Vec<String>,
}

fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|k| k * k <= n).all(|k| !n.is_multiple_of(k))
}

pub fn cyclicity_report(braid: &BraidWord) -> CyclicityReport {
    let n = braid.strands();
    let n_cycle = braid.induced_permutation().is_full_cycle();
    let n_prime = is_prime(n);
    let exponent_sum = braid.exponent_sum();
    let divisible = exponent_sum.rem_euclid(n as i64 - 1) == 0;
    let mut flags = Vec::new();
    if n_cycle && n_prime {
        flags.push("irreducible".to_string());
        if !divisible {
            flags.push("pseudo-anosov".to_string());
        }
    }
    CyclicityReport { n_cycle, n_prime, exponent_sum, exponent_sum_divisible_by_n_minus_1: divisible, flags }
}

/// Everything the `classify` command reports for one braid.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub normal_form: NormalFormJson,
    pub rotation: Option<RotationData>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rotation_error: Option<String>,
    pub pseudo_anosov: CertificateReport,
    pub cyclicity: CyclicityReport,
}

pub fn classify(braid: &BraidWord) -> Result<Classification> {
    let nf = normalize(braid)?;
    let (rotation, rotation_error) = match rotation_data(&nf) {
        Ok(r) => (Some(r), None),
        Err(e) => (None, Some(e.to_string())),
    };
    Ok(Classification {
        normal_form: nf.to_json(),
        rotation,
        rotation_error,
        pseudo_anosov: pseudo_anosov_certificate(&nf.indices, braid.strands()),
        cyclicity: cyclicity_report(braid),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rotation_values() {
        let r = rotation_data_for(0, &[2, 2, 2], 5).unwrap();
        assert_eq!((r.m, r.nu), (1, 1));
        let r = rotation_data_for(0, &[3], 4).unwrap();
        assert_eq!((r.m, r.nu), (2, 1));
        assert_eq!(r.rotation_number(), "1/2");
        let r = rotation_data_for(-1, &[4], 3).unwrap();
        assert_eq!((r.m, r.nu), (1, 0));
        assert_eq!(r.rotation_number(), "0/1");
        assert!(rotation_data_for(0, &[2], 3).unwrap_err().to_string().contains("hypothesis"));
    }

    #[test]
    fn certificate_cases() {
        let c = pseudo_anosov_certificate(&[2, 4], 5);
        assert!(c.certified);
        assert_eq!(c.statement.as_deref(), Some(PSEUDO_ANOSOV_STATEMENT));
        let c = pseudo_anosov_certificate(&[2, 3], 5);
        assert!(!c.certified);
        assert!(c.reasons.iter().any(|r| r == "mixed parity"));
        let c = pseudo_anosov_certificate(&[2], 4);
        assert!(!c.certified);
        assert!(c.reasons.iter().any(|r| r == "n < 5"));
    }

    #[test]
    fn cyclicity_cases() {
        let r = cyclicity_report(&BraidWord::rho(5).unwrap());
        assert!(r.n_cycle && r.n_prime);
        let r = cyclicity_report(&BraidWord::theta(5).unwrap());
        assert!(!r.n_cycle);
        let r = cyclicity_report(&BraidWord::beta_atom(2, 3).unwrap());
        assert_eq!(r.exponent_sum, 4);
        assert!(r.exponent_sum_divisible_by_n_minus_1);
        assert!(!r.flags.iter().any(|f| f == "pseudo-anosov"));
    }
}
