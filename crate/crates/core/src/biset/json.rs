//! JSON form of biset elements, with exact rational coefficients.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{space, BisetElt};
use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::group::Group;
use crate::rational;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    /// Element indices in the product `dst × src` (pair `(h,g)` is `h·|src| + g`).
    pub subgroup: Vec<usize>,
    pub coeff: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BisetJson {
    pub src: String,
    pub dst: String,
    pub terms: Vec<TermJson>,
}

impl BisetElt {
    pub fn to_json(&self) -> BisetJson {
        BisetJson {
            src: self.src().name().to_string(),
            dst: self.dst().name().to_string(),
            terms: self
                .sorted_terms()
                .into_iter()
                .map(|(l, c)| TermJson { subgroup: l.to_vec(), coeff: rational::to_string(&c) })
                .collect(),
        }
    }

    /// Reads an element of `B(dst, src)` back; group names must match.
    pub fn from_json(json: &BisetJson, dst: &Arc<Group>, src: &Arc<Group>) -> Result<BisetElt> {
        if json.src != src.name() || json.dst != dst.name() {
            return Err(Error::Serialization(format!(
                "expected B({},{}), found B({},{})",
                dst.name(),
                src.name(),
                json.dst,
                json.src
            )));
        }
        let sp = space(dst, src)?;
        let mut r = BisetElt::zero_in(&sp);
        for t in &json.terms {
            if t.subgroup.iter().any(|&x| x >= sp.ambient.order()) {
                return Err(Error::Serialization("element index out of range".into()));
            }
            let l = Bits::from_indices(t.subgroup.iter().copied());
            let c = sp.checked_class_of(&l).map_err(|_| Error::Serialization("term is not a subgroup".into()))?;
            r.add_class(c, rational::parse(&t.coeff)?);
        }
        Ok(r)
    }
}
