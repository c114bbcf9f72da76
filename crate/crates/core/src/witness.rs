//! Verified decomposition records `C = P + N`.

use serde::{Deserialize, Serialize};

use crate::companion::companion_from_coeffs;
use crate::error::{Error, Result};
use crate::gf::{Element, FieldSpec};
use crate::mat::{Mat, Potency};

/// How a witness was produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    Constructive,
    Brute,
}

/// A decomposition of the companion matrix with lower coefficients
/// `companion_coeffs` into a `P` that is potent under `potency` and a
/// square-zero `N`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawWitness")]
pub struct Witness {
    pub field: FieldSpec,
    pub n: usize,
    pub companion_coeffs: Vec<u32>,
    pub potency: Potency,
    #[serde(rename = "P")]
    pub potent: Mat,
    #[serde(rename = "N")]
    pub nilpotent: Mat,
    pub potency_exponent: Option<u64>,
    pub commuting: bool,
    pub source: Source,
}

#[derive(Deserialize)]
struct RawWitness {
    field: FieldSpec,
    n: usize,
    companion_coeffs: Vec<u32>,
    potency: Potency,
    #[serde(rename = "P")]
    potent: Vec<Vec<u32>>,
    #[serde(rename = "N")]
    nilpotent: Vec<Vec<u32>>,
    potency_exponent: Option<u64>,
    commuting: bool,
    source: Source,
}

impl TryFrom<RawWitness> for Witness {
    type Error = Error;

    fn try_from(raw: RawWitness) -> Result<Witness> {
        let potent = Mat::from_rows(&raw.field, &raw.potent)?;
        let nilpotent = Mat::from_rows(&raw.field, &raw.nilpotent)?;
        if potent.n() != raw.n || nilpotent.n() != raw.n {
            return Err(Error::DimensionMismatch(raw.n, potent.n()));
        }
        Ok(Witness {
            field: raw.field,
            n: raw.n,
            companion_coeffs: raw.companion_coeffs,
            potency: raw.potency,
            potent,
            nilpotent,
            potency_exponent: raw.potency_exponent,
            commuting: raw.commuting,
            source: raw.source,
        })
    }
}

impl Witness {
    /// Record `C = P + N`, computing the potency exponent and whether the
    /// parts commute.
    pub fn new(
        companion: &Mat,
        coeffs: &[Element],
        potency: Potency,
        potent: Mat,
        nilpotent: Mat,
        source: Source,
    ) -> Result<Witness> {
        potent.compatible_with(companion)?;
        nilpotent.compatible_with(companion)?;
        let potency_exponent = potent.potency_exponent()?;
        let commuting = potent.commutes_with(&nilpotent)?;
        Ok(Witness {
            field: companion.field().clone(),
            n: companion.n(),
            companion_coeffs: coeffs.iter().map(|c| c.0).collect(),
            potency,
            potent,
            nilpotent,
            potency_exponent,
            commuting,
            source,
        })
    }

    pub fn companion(&self) -> Result<Mat> {
        let coeffs = self
            .companion_coeffs
            .iter()
            .map(|&c| self.field.check(Element(c)))
            .collect::<Result<Vec<_>>>()?;
        Ok(companion_from_coeffs(&self.field, &coeffs)?.matrix().clone())
    }

    /// Re-check every claim from scratch: `P + N = C`, `P` potent under both
    /// potency tests, `N² = 0`, the recorded exponent, and the commuting flag.
    /// Returns a description of the first failed check.
    pub fn verify(&self) -> std::result::Result<(), String> {
        let c = self.companion().map_err(|e| e.to_string())?;
        if c.n() != self.n {
            return Err(format!("companion has size {}, witness claims {}", c.n(), self.n));
        }
        let sum = self.potent.add(&self.nilpotent).map_err(|e| e.to_string())?;
        if sum != c {
            return Err("P + N differs from the companion matrix".into());
        }
        if !self.potency.holds(&self.potent) {
            return Err(format!("P fails the {} minimal polynomial test", self.potency));
        }
        match self.potency.holds_iterative(&self.potent) {
            Ok(true) => {}
            Ok(false) => return Err("P fails the direct power test".into()),
            Err(e) => return Err(e.to_string()),
        }
        if !self.nilpotent.is_square_zero() {
            return Err("N^2 is nonzero".into());
        }
        let t = self.potent.potency_exponent().map_err(|e| e.to_string())?;
        if t != self.potency_exponent {
            return Err(format!(
                "recorded potency exponent {:?} differs from {:?}",
                self.potency_exponent, t
            ));
        }
        if let Some(t) = t {
            if self.potent.pow(t) != self.potent {
                return Err("P^t differs from P".into());
            }
        }
        let commutes = self
            .potent
            .commutes_with(&self.nilpotent)
            .map_err(|e| e.to_string())?;
        if commutes != self.commuting {
            return Err("commuting flag is wrong".into());
        }
        Ok(())
    }
}
