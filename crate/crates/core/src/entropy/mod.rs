//! Block-partition Shannon entropies (nats), information and subadditivity.
//!
//! A single sequence `p_n` is read as a bipartite table through
//! `n -> (n / m, n % m)`: "subsystem 1" is the block index, "subsystem 2" the
//! residue class.

mod complex;
mod inequality;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::photon_dist::{PhotonDistribution, TwoModeJointDistribution, MASS_TOLERANCE};
use crate::sum::{neumaier_sum, NeumaierSum};

pub use complex::{complex_information, complex_information_with, complex_log, ComplexEntropyReport, ComplexReading};
pub use inequality::{
    f_coherent_inequality, hermite_inequality, laguerre_inequality, legendre_inequality, poisson_inequality,
    poisson_information_closed_form, poisson_residue_information_trig, q_coherent_information,
    InequalityForm, InequalityReport,
};

/// Threshold below which information counts as nonnegative.
pub const SUBADDITIVITY_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionScheme {
    block_size: usize,
}

impl PartitionScheme {
    pub fn new(block_size: usize) -> Result<Self> {
        if block_size < 2 {
            return Err(Error::Domain(format!("block size must be at least 2, got {block_size}")));
        }
        Ok(Self { block_size })
    }

    pub fn pairs() -> Self {
        Self { block_size: 2 }
    }

    pub fn block_size(&self) -> usize {
        self.block_size
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EntropyReport {
    pub h_joint: f64,
    pub h_sub1: f64,
    pub h_sub2: f64,
    pub information: f64,
    pub subadditive: bool,
}

impl EntropyReport {
    fn new(h_joint: f64, h_sub1: f64, h_sub2: f64) -> Self {
        let information = h_sub1 + h_sub2 - h_joint;
        Self {
            h_joint,
            h_sub1,
            h_sub2,
            information,
            subadditive: information >= -SUBADDITIVITY_TOLERANCE,
        }
    }
}

/// `-p ln p`, with `0 ln 0 = 0`.
pub(crate) fn neg_plogp(p: f64) -> f64 {
    if p > 0.0 {
        -p * p.ln()
    } else {
        0.0
    }
}

pub(crate) fn shannon<I: IntoIterator<Item = f64>>(ps: I) -> f64 {
    neumaier_sum(ps.into_iter().map(neg_plogp))
}

/// Entropies of a real sequence without any classification check.
pub fn block_entropies_of(values: &[f64], scheme: PartitionScheme) -> EntropyReport {
    let m = scheme.block_size;
    let blocks: Vec<f64> = values.chunks(m).map(|c| neumaier_sum(c.iter().copied())).collect();
    let residues: Vec<f64> = (0..m)
        .map(|j| neumaier_sum(values.iter().skip(j).step_by(m).copied()))
        .collect();
    EntropyReport::new(
        shannon(values.iter().copied()),
        shannon(blocks),
        shannon(residues),
    )
}

fn require_probability(dist: &PhotonDistribution) -> Result<()> {
    if dist.is_probability() {
        Ok(())
    } else {
        Err(Error::NotProbability(dist.classification()))
    }
}

pub fn block_entropies(dist: &PhotonDistribution, scheme: PartitionScheme) -> Result<EntropyReport> {
    require_probability(dist)?;
    Ok(block_entropies_of(&dist.real_values(), scheme))
}

pub fn information(dist: &PhotonDistribution, scheme: PartitionScheme) -> Result<f64> {
    Ok(block_entropies(dist, scheme)?.information)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SubadditivityVerdict {
    pub holds: bool,
    pub margin: f64,
}

pub fn subadditivity_check(dist: &PhotonDistribution, scheme: PartitionScheme) -> Result<SubadditivityVerdict> {
    let report = block_entropies(dist, scheme)?;
    Ok(SubadditivityVerdict {
        holds: report.subadditive,
        margin: report.information,
    })
}

/// Entropies of a two-mode table with marginal subsystem entropies.
pub fn joint_entropy_report(joint: &TwoModeJointDistribution) -> Result<EntropyReport> {
    let total = joint.total();
    if (total - 1.0).abs() > joint.tail_bound() + MASS_TOLERANCE {
        return Err(Error::Unnormalized(total));
    }
    let mut h = NeumaierSum::new();
    for v in joint.values().iter().flatten() {
        h.add(neg_plogp(*v));
    }
    Ok(EntropyReport::new(
        h.value(),
        shannon(joint.marginal1()),
        shannon(joint.marginal2()),
    ))
}
