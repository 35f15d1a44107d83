//! Entropies of signed or complex "distributions" through the multi-branch
//! complex logarithm.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::PartitionScheme;
use crate::error::{Error, Result};
use crate::photon_dist::PhotonDistribution;
use crate::specfun::ComplexScalar;
use crate::sum::neumaier_sum_complex;

/// How the subsystem entropies are formed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ComplexReading {
    /// Subsystem 1 uses the same per-term sum as the joint entropy and
    /// subsystem 2 a single term built from the total, so `I = H(2)`.
    Literal,
    /// Block and residue-class sums, as for real distributions.
    #[default]
    Block,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ComplexEntropyReport {
    pub h_joint: ComplexScalar,
    pub h_sub1: ComplexScalar,
    pub h_sub2: ComplexScalar,
    pub information: ComplexScalar,
    pub branch_index: i64,
    pub reading: ComplexReading,
}

/// `ln|z| + i(φ + 2πb)` with `φ ∈ (-π, π]`.
pub fn complex_log(z: Complex64, branch: i64) -> Complex64 {
    let mut phi = z.im.atan2(z.re);
    if phi == -PI {
        phi = PI;
    }
    Complex64::new(z.norm().ln(), phi + 2.0 * PI * branch as f64)
}

/// `-z ln z` on the given branch, 0 for `z = 0`.
fn neg_zlogz(z: Complex64, branch: i64) -> Complex64 {
    if z == Complex64::new(0.0, 0.0) {
        Complex64::new(0.0, 0.0)
    } else {
        -z * complex_log(z, branch)
    }
}

fn entropy_of(values: &[Complex64], branch: i64) -> Complex64 {
    neumaier_sum_complex(values.iter().map(|&z| neg_zlogz(z, branch)))
}

pub fn complex_information(
    dist: &PhotonDistribution,
    scheme: PartitionScheme,
    branch: i64,
) -> Result<ComplexEntropyReport> {
    complex_information_with(dist, scheme, branch, ComplexReading::default())
}

pub fn complex_information_with(
    dist: &PhotonDistribution,
    scheme: PartitionScheme,
    branch: i64,
    reading: ComplexReading,
) -> Result<ComplexEntropyReport> {
    let tail = dist.tail_bound();
    if !tail.is_finite() {
        return Err(Error::DivergentTail(tail));
    }
    let values = dist.values();
    let h_joint = entropy_of(values, branch);
    let (h_sub1, h_sub2) = match reading {
        ComplexReading::Literal => {
            let total = neumaier_sum_complex(values.iter().copied());
            let abs_total: f64 = crate::sum::neumaier_sum(values.iter().map(|z| z.norm()));
            let h2 = if total == Complex64::new(0.0, 0.0) {
                Complex64::new(0.0, 0.0)
            } else {
                let phase = complex_log(total, branch).im;
                -total * Complex64::new(abs_total.ln(), phase)
            };
            (h_joint, h2)
        }
        ComplexReading::Block => {
            let m = scheme.block_size();
            let blocks: Vec<Complex64> = values
                .chunks(m)
                .map(|c| neumaier_sum_complex(c.iter().copied()))
                .collect();
            let residues: Vec<Complex64> = (0..m)
                .map(|j| neumaier_sum_complex(values.iter().skip(j).step_by(m).copied()))
                .collect();
            (entropy_of(&blocks, branch), entropy_of(&residues, branch))
        }
    };
    Ok(ComplexEntropyReport {
        h_joint: h_joint.into(),
        h_sub1: h_sub1.into(),
        h_sub2: h_sub2.into(),
        information: (h_sub1 + h_sub2 - h_joint).into(),
        branch_index: branch,
        reading,
    })
}
