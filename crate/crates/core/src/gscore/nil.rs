//! Nilpotence certificates: g of degree <= c_k has g^(n_k) in the ideal.

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use super::blueprint::GSBlueprint;
use crate::error::{Error, Result};
use crate::field::FieldDescriptor;
use crate::freealg::Polynomial;
use crate::graded::{build_table, membership, GradedIdealTable};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verification {
    /// No table covering degree n·deg g was supplied.
    NotChecked,
    Verified,
    /// Some homogeneous component of g^n is not in the ideal.
    Failed { degree: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilCertificate {
    pub block: usize,
    pub exponent: BigUint,
    pub verification: Verification,
}

impl NilCertificate {
    pub fn verified(&self) -> bool {
        self.verification == Verification::Verified
    }
}

pub fn nil_certificate(g: &Polynomial, blueprint: &GSBlueprint, table: Option<&GradedIdealTable>) -> Result<NilCertificate> {
    if g.ambient().d != blueprint.d {
        return Err(Error::AmbientMismatch(g.ambient().to_string(), format!("blueprint with d={}", blueprint.d)));
    }
    if !g.constant_term().is_zero() {
        return Err(Error::ConstantTerm);
    }
    let degree = g.degree().unwrap_or(0);
    let block = blueprint.covering_block(degree).ok_or(Error::DegreeNotCovered { degree })?;
    let mut cert = NilCertificate { block: block.k, exponent: block.n.clone(), verification: Verification::NotChecked };
    let Some(table) = table else { return Ok(cert) };
    let Some(n) = block.n.to_u32() else { return Ok(cert) };
    if (n as usize).saturating_mul(degree) > table.maxdeg() {
        return Ok(cert);
    }
    let power = g.pow(n);
    cert.verification = Verification::Verified;
    for (deg, component) in power.homogeneous_components() {
        if !membership(&component, table)?.member {
            cert.verification = Verification::Failed { degree: deg };
            break;
        }
    }
    Ok(cert)
}

/// Table of the ideal generated by every materialized generator, mapped
/// into `field`.
pub fn blueprint_table(blueprint: &GSBlueprint, field: FieldDescriptor, maxdeg: usize) -> Result<GradedIdealTable> {
    if blueprint.blocks.iter().any(|b| b.generators.is_none()) {
        return Err(Error::InvalidParams("blueprint has blocks without materialized generators".into()));
    }
    let generators = blueprint.generators().into_iter().map(|g| g.map_field(field)).collect::<Result<Vec<_>>>()?;
    build_table(&generators, blueprint.d, field, maxdeg)
}
