//! Input files.
//!
//! ```json
//! {
//!   "cfg": { "points": [[0, 0], [1, 0], [1, 1], [0, 1]] },
//!   "C": [["1", "-2", "1/2", 3], [1, 1, -1, "-1/3"]],
//!   "ordering": [0, 1, 3, 2],
//!   "epsilon": 1
//! }
//! ```
//!
//! `C` and `ordering` are optional. An ordering lists classes in order; a
//! bare index is a class of one element.

use circuit_descartes::descartes::OrderingData;
use circuit_descartes::{CoefficientMatrix, ExponentConfig};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};
use crate::format::{from_q, Q};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigJson {
    pub points: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ClassEntry {
    Index(usize),
    Class(Vec<usize>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub cfg: ConfigJson,
    #[serde(rename = "C", default, skip_serializing_if = "Option::is_none")]
    pub c: Option<Vec<Vec<Q>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ordering: Option<Vec<ClassEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<i8>,
}

impl InstanceFile {
    pub fn parse(text: &str) -> CliResult<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let inst: InstanceFile = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            CliError::InvalidInput(format!("invalid instance at `{path}`: {}", e.into_inner()))
        })?;
        if let Some(eps) = inst.epsilon {
            if eps != 1 && eps != -1 {
                return Err(CliError::InvalidInput(format!(
                    "invalid instance at `epsilon`: must be 1 or -1, got {eps}"
                )));
            }
        }
        Ok(inst)
    }

    pub fn from_parts(
        cfg: &ExponentConfig,
        c: Option<&CoefficientMatrix>,
        ordering: Option<&OrderingData>,
    ) -> Self {
        InstanceFile {
            cfg: ConfigJson {
                points: cfg.points().to_vec(),
            },
            c: c.map(|c| {
                c.matrix()
                    .to_rows()
                    .iter()
                    .map(|r| crate::format::to_q(r))
                    .collect()
            }),
            ordering: ordering.map(|o| {
                o.classes()
                    .iter()
                    .map(|cl| match cl.as_slice() {
                        [j] => ClassEntry::Index(*j),
                        _ => ClassEntry::Class(cl.clone()),
                    })
                    .collect()
            }),
            epsilon: ordering.map(|o| o.epsilon()),
        }
    }

    pub fn config(&self) -> CliResult<ExponentConfig> {
        Ok(ExponentConfig::new(self.cfg.points.clone())?)
    }

    pub fn coefficient_matrix(&self) -> CliResult<Option<CoefficientMatrix>> {
        let Some(rows) = &self.c else { return Ok(None) };
        let rows = rows.iter().map(|r| from_q(r)).collect();
        Ok(Some(CoefficientMatrix::from_rows(rows)?))
    }

    pub fn require_c(&self) -> CliResult<CoefficientMatrix> {
        self.coefficient_matrix()?
            .ok_or_else(|| CliError::InvalidInput("instance has no coefficient matrix `C`".into()))
    }

    pub fn ordering_data(&self) -> CliResult<Option<OrderingData>> {
        let Some(entries) = &self.ordering else {
            return Ok(None);
        };
        let classes = entries
            .iter()
            .map(|e| match e {
                ClassEntry::Index(j) => vec![*j],
                ClassEntry::Class(c) => c.clone(),
            })
            .collect();
        Ok(Some(OrderingData::from_classes(
            classes,
            self.epsilon.unwrap_or(1),
        )?))
    }
}
