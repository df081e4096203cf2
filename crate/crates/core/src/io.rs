//! JSON forms of subspaces, partitions and partial spreads.
//!
//! Field elements are written as their integer encodings and every basis must
//! already be in reduced row echelon form.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Space, Subspace};
use crate::gf::FieldSpec;
use crate::partition::SubspacePartition;
use crate::spreadlab::PartialSpread;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubspaceJson {
    pub n: usize,
    pub basis: Vec<Vec<u32>>,
}

impl From<&Subspace> for SubspaceJson {
    fn from(w: &Subspace) -> Self {
        SubspaceJson { n: w.n(), basis: w.to_rows() }
    }
}

impl SubspaceJson {
    pub fn parse(&self, space: &Space) -> Result<Subspace> {
        if self.n != space.n() {
            return Err(Error::DimensionMismatch { expected: space.n(), found: self.n });
        }
        space.subspace_from_rows(&self.basis)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartitionJson {
    pub field: FieldSpec,
    pub n: usize,
    pub parts: Vec<SubspaceJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpreadJson {
    pub field: FieldSpec,
    pub n: usize,
    pub t: usize,
    pub parts: Vec<SubspaceJson>,
}

/// Builds the ambient space and parses every part; errors here are malformed input.
fn parse_parts(field: &FieldSpec, n: usize, parts: &[SubspaceJson]) -> Result<(Arc<Space>, Vec<Subspace>)> {
    let space = Space::new(n, field.clone())?;
    let parts = parts.iter().map(|w| w.parse(&space)).collect::<Result<_>>()?;
    Ok((space, parts))
}

impl PartitionJson {
    pub fn from_partition(p: &SubspacePartition) -> Self {
        PartitionJson {
            field: p.space().field().clone(),
            n: p.n(),
            parts: p.parts().iter().map(SubspaceJson::from).collect(),
        }
    }

    /// The ambient space and the parts, without checking the partition property.
    pub fn parse(&self) -> Result<(Arc<Space>, Vec<Subspace>)> {
        parse_parts(&self.field, self.n, &self.parts)
    }

    pub fn into_partition(&self) -> Result<SubspacePartition> {
        let (space, parts) = self.parse()?;
        SubspacePartition::validate(space, parts)
    }
}

impl SpreadJson {
    pub fn from_spread(s: &PartialSpread) -> Self {
        SpreadJson {
            field: s.space().field().clone(),
            n: s.space().n(),
            t: s.t(),
            parts: s.members().iter().map(SubspaceJson::from).collect(),
        }
    }

    pub fn parse(&self) -> Result<(Arc<Space>, Vec<Subspace>)> {
        parse_parts(&self.field, self.n, &self.parts)
    }

    pub fn into_spread(&self) -> Result<PartialSpread> {
        let (space, parts) = self.parse()?;
        PartialSpread::new(space, self.t, parts)
    }
}

pub fn partition_to_string(p: &SubspacePartition) -> String {
    serde_json::to_string_pretty(&PartitionJson::from_partition(p)).expect("serializable")
}

pub fn spread_to_string(s: &PartialSpread) -> String {
    serde_json::to_string_pretty(&SpreadJson::from_spread(s)).expect("serializable")
}

pub fn partition_from_str(s: &str) -> Result<SubspacePartition> {
    serde_json::from_str::<PartitionJson>(s)?.into_partition()
}

pub fn spread_from_str(s: &str) -> Result<PartialSpread> {
    serde_json::from_str::<SpreadJson>(s)?.into_spread()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{desarguesian_spread, embedded_spread_maximal, pi_big_m};

    #[test]
    fn partition_round_trip() {
        let field = FieldSpec::prime(2).unwrap();
        let p = pi_big_m(5, 2, &field).unwrap().partition;
        assert_eq!(partition_from_str(&partition_to_string(&p)).unwrap(), p);
        let s = embedded_spread_maximal(4, 2, &field).unwrap();
        assert_eq!(spread_from_str(&spread_to_string(&s)).unwrap(), s);
    }

    #[test]
    fn literal_format() {
        let text = r#"{"field":{"p":2,"e":1,"modulus":[0,1]},"n":2,
            "parts":[{"n":2,"basis":[[1,0]]},{"n":2,"basis":[[0,1]]},{"n":2,"basis":[[1,1]]}]}"#;
        let p = partition_from_str(text).unwrap();
        assert_eq!(p.len(), 3);
        let spread = desarguesian_spread(1, 2, &FieldSpec::prime(2).unwrap()).unwrap();
        assert_eq!(spread.len(), 1);
    }

    #[test]
    fn malformed_inputs() {
        let bad_rref = r#"{"field":{"p":2,"e":1,"modulus":[0,1]},"n":2,"parts":[{"n":2,"basis":[[1,1],[0,1]]}]}"#;
        assert!(partition_from_str(bad_rref).unwrap_err().is_malformed());
        let bad_n = r#"{"field":{"p":2,"e":1,"modulus":[0,1]},"n":2,"parts":[{"n":3,"basis":[[1,0,0]]}]}"#;
        assert!(partition_from_str(bad_n).unwrap_err().is_malformed());
        assert!(partition_from_str("{").unwrap_err().is_malformed());
        let dup = r#"{"field":{"p":2,"e":1,"modulus":[0,1]},"n":2,
            "parts":[{"n":2,"basis":[[1,0]]},{"n":2,"basis":[[1,0]]},{"n":2,"basis":[[0,1]]},{"n":2,"basis":[[1,1]]}]}"#;
        let err = partition_from_str(dup).unwrap_err();
        assert!(matches!(err, Error::NotAPartition { .. }));
        assert!(!err.is_malformed());
    }
}
