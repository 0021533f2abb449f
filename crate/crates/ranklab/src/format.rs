//! JSON forms of codes, instances and reports.
//!
//! Field elements are written as packed serials `sum c_i q^i`. With
//! `pretty`, instances also carry the coefficient tuples `(c_0, ..., c_{m-1})`.

use std::sync::Arc;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use ranklab_core::adversarial::{AdversarialInstance, InstanceClaim, InstanceKind, VerificationReport};
use ranklab_core::constructions::PolyFamily;
use ranklab_core::{Elem, Field, GabidulinCode, LinearizedPoly, ModulusTable, RankWord};

use crate::error::{CliError, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeDescriptor {
    pub q: u32,
    pub n: u32,
    pub m: u32,
    pub k: u32,
    /// Coefficients `c_0 .. c_m` of the modulus of GF(q^m).
    pub modulus: Vec<u32>,
    /// `None` for codes built from arbitrary evaluation points.
    pub beta_exponent: Option<u64>,
    pub eval_point_serials: Vec<u64>,
}

impl CodeDescriptor {
    pub fn from_code(code: &GabidulinCode) -> Self {
        let f = code.field();
        CodeDescriptor {
            q: f.characteristic(),
            n: code.n() as u32,
            m: f.degree(),
            k: code.k() as u32,
            modulus: f.modulus().to_vec(),
            beta_exponent: code.beta_exponent(),
            eval_point_serials: code.eval_points().iter().map(|a| a.serial()).collect(),
        }
    }

    /// Rebuilds the code. A shifted code is regenerated from its exponent
    /// and must reproduce the listed evaluation points.
    pub fn to_code(&self, table: &ModulusTable) -> Result<GabidulinCode> {
        if self.modulus.len() != self.m as usize + 1 {
            return Err(CliError::Config(format!("modulus has {} coefficients, expected {}", self.modulus.len(), self.m + 1)));
        }
        if self.eval_point_serials.len() != self.n as usize {
            return Err(CliError::Config(format!("{} evaluation points listed for n = {}", self.eval_point_serials.len(), self.n)));
        }
        let field = Arc::new(Field::new(self.q, &self.modulus)?);
        let points = decode_elems(&field, &self.eval_point_serials)?;
        match self.beta_exponent {
            None => Ok(GabidulinCode::with_points(&field, points, self.k as usize)?),
            Some(exp) => {
                let mut t = table.clone();
                t.insert(self.q, self.modulus.clone());
                let code = GabidulinCode::new(&t, self.q, self.n, self.m, self.k, exp)?;
                if code.eval_points() != points.as_slice() {
                    return Err(CliError::Config("evaluation points do not match beta_exponent".into()));
                }
                Ok(code)
            }
        }
    }
}

fn decode_elems(field: &Arc<Field>, serials: &[u64]) -> Result<Vec<Elem>> {
    Ok(serials.iter().map(|&s| field.elem(s)).collect::<ranklab_core::Result<Vec<_>>>()?)
}

pub fn decode_word(code: &GabidulinCode, serials: &[u64]) -> Result<RankWord> {
    if serials.len() != code.n() {
        return Err(CliError::Config(format!("word of length {} for a code of length {}", serials.len(), code.n())));
    }
    Ok(RankWord::new(code.field(), decode_elems(code.field(), serials)?)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyParamsFile {
    pub q: u32,
    pub n: u32,
    pub r: u32,
    pub g: u32,
    pub s: u32,
    pub ell: u32,
}

/// The shifted polynomial family behind an instance, over GF(q^m).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyFile {
    pub kind: String,
    pub params: FamilyParamsFile,
    pub degenerate: bool,
    /// Shared coefficients, highest index first.
    pub mutual_top: Vec<u64>,
    /// Coefficient serials of each member, lowest index first.
    pub members: Vec<Vec<u64>>,
}

impl FamilyFile {
    pub fn from_family(family: &PolyFamily) -> Self {
        let p = &family.params;
        FamilyFile {
            kind: family.kind.as_str().into(),
            params: FamilyParamsFile { q: p.q, n: p.n, r: p.r, g: p.g, s: p.s, ell: p.ell },
            degenerate: family.degenerate,
            mutual_top: family.mutual_top.iter().map(|a| a.serial()).collect(),
            members: family.members.iter().map(LinearizedPoly::serials).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceParams {
    pub g: u32,
    pub s: u32,
    pub ell: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrettyInstance {
    pub pivot: Vec<Vec<u32>>,
    pub center: Vec<Vec<u32>>,
    pub codewords: Vec<Vec<Vec<u32>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub kind: String,
    pub code: CodeDescriptor,
    pub tau: u32,
    pub params: InstanceParams,
    /// Coefficient serials of `R`, lowest index first.
    pub pivot: Vec<u64>,
    pub center: Vec<u64>,
    pub codewords: Vec<Vec<u64>>,
    /// Decimal, since the bound can exceed 64 bits.
    pub claimed_bound: String,
    pub degenerate: bool,
    pub family: FamilyFile,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pretty: Option<PrettyInstance>,
}

fn parse_kind(s: &str) -> Result<InstanceKind> {
    match s {
        "counting" => Ok(InstanceKind::Counting),
        "explicit" => Ok(InstanceKind::Explicit),
        other => Err(CliError::Config(format!("unknown instance kind {other:?}"))),
    }
}

impl InstanceFile {
    pub fn from_instance(inst: &AdversarialInstance, pretty: bool) -> Self {
        let f = inst.code.field();
        let digits = |xs: &[Elem]| -> Vec<Vec<u32>> { xs.iter().map(|&a| f.digits(a)).collect() };
        let pretty = pretty.then(|| PrettyInstance {
            pivot: digits(inst.pivot.coeffs()),
            center: digits(inst.center.coords()),
            codewords: inst.codewords.iter().map(|w| digits(w.coords())).collect(),
        });
        InstanceFile {
            kind: inst.kind.as_str().into(),
            code: CodeDescriptor::from_code(&inst.code),
            tau: inst.tau as u32,
            params: InstanceParams { g: inst.g, s: inst.s, ell: inst.ell },
            pivot: inst.pivot.serials(),
            center: inst.center.serials(),
            codewords: inst.codewords.iter().map(RankWord::serials).collect(),
            claimed_bound: inst.claimed_bound.to_string(),
            degenerate: inst.degenerate,
            family: FamilyFile::from_family(&inst.family),
            pretty,
        }
    }

    /// The part of the file that verification re-derives. The family is
    /// informational and is not read back.
    pub fn to_claim(&self, table: &ModulusTable) -> Result<InstanceClaim> {
        let code = self.code.to_code(table)?;
        let pivot = LinearizedPoly::new(code.field(), decode_elems(code.field(), &self.pivot)?)?;
        let center = decode_word(&code, &self.center)?;
        let codewords = self.codewords.iter().map(|w| decode_word(&code, w)).collect::<Result<Vec<_>>>()?;
        let claimed_bound: BigUint = self
            .claimed_bound
            .parse()
            .map_err(|_| CliError::Config(format!("claimed_bound {:?} is not a decimal integer", self.claimed_bound)))?;
        Ok(InstanceClaim {
            kind: parse_kind(&self.kind)?,
            code,
            tau: self.tau as usize,
            ell: self.params.ell,
            pivot: Some(pivot),
            center,
            codewords,
            claimed_bound,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckFile {
    pub name: String,
    pub status: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportFile {
    pub command: String,
    pub checks: Vec<CheckFile>,
    pub all_passed: bool,
}

impl ReportFile {
    pub fn new(command: &str, report: &VerificationReport) -> Self {
        ReportFile {
            command: command.into(),
            checks: report
                .checks
                .iter()
                .map(|c| CheckFile { name: c.name.into(), status: c.status.as_str().into(), detail: c.detail.clone() })
                .collect(),
            all_passed: report.all_passed(),
        }
    }

    pub fn failed(&self) -> Vec<&str> {
        self.checks.iter().filter(|c| c.status == "fail").map(|c| c.name.as_str()).collect()
    }
}

/// Pretty-printed JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}
