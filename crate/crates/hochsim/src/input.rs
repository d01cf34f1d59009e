//! JSON input schemas for groups, posets and amalgams, as consumed by the
//! command line and the fuzz targets.
//!
//! Groups are `{"cyclic": n}` or `{"table": [[...]], "identity": i}`;
//! posets are `{"size": n, "relations": [[i, j], ...]}`; amalgams are
//! `{"poset": {...}, "groups": [groupspec, ...]}`. All indices are 0-based.

use serde::Deserialize;

use crate::algebra::{AmalgamCategory, FiniteGroup, FinitePoset};
use crate::Error;

/// Hard caps so hostile inputs cannot request gigantic validation loops.
const MAX_GROUP_ORDER: usize = 256;
const MAX_POSET_SIZE: usize = 64;

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum GroupSpec {
    Cyclic {
        cyclic: usize,
    },
    Table {
        table: Vec<Vec<usize>>,
        identity: usize,
    },
}

#[derive(Clone, Debug, Deserialize)]
pub struct PosetSpec {
    pub size: usize,
    pub relations: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct AmalgamSpec {
    pub poset: PosetSpec,
    pub groups: Vec<GroupSpec>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum AnySpec {
    Amalgam(AmalgamSpec),
    Poset(PosetSpec),
    Group(GroupSpec),
}

#[derive(Clone, Debug)]
pub enum AlgebraInput {
    Group(FiniteGroup),
    Poset(FinitePoset),
    Amalgam(AmalgamCategory),
}

impl GroupSpec {
    pub fn build(&self) -> Result<FiniteGroup, Error> {
        match self {
            GroupSpec::Cyclic { cyclic } => {
                if *cyclic == 0 || *cyclic > MAX_GROUP_ORDER {
                    return Err(Error::InvalidInput(format!(
                        "cyclic order must be in 1..={MAX_GROUP_ORDER}, got {cyclic}"
                    )));
                }
                Ok(FiniteGroup::cyclic(*cyclic))
            }
            GroupSpec::Table { table, identity } => {
                if table.len() > MAX_GROUP_ORDER {
                    return Err(Error::InvalidInput(format!(
                        "group order must be at most {MAX_GROUP_ORDER}"
                    )));
                }
                FiniteGroup::from_table(table, *identity)
            }
        }
    }
}

impl PosetSpec {
    pub fn build(&self) -> Result<FinitePoset, Error> {
        if self.size > MAX_POSET_SIZE {
            return Err(Error::InvalidInput(format!(
                "poset size must be at most {MAX_POSET_SIZE}"
            )));
        }
        FinitePoset::from_relations(self.size, &self.relations)
    }
}

impl AmalgamSpec {
    pub fn build(&self) -> Result<AmalgamCategory, Error> {
        let poset = self.poset.build()?;
        let groups = self
            .groups
            .iter()
            .map(GroupSpec::build)
            .collect::<Result<Vec<_>, _>>()?;
        let total: usize = groups.iter().map(FiniteGroup::order).sum();
        if total > MAX_GROUP_ORDER {
            return Err(Error::InvalidInput(format!(
                "total loop order must be at most {MAX_GROUP_ORDER}"
            )));
        }
        AmalgamCategory::new(poset, groups)
    }
}

fn json_error(e: serde_json::Error) -> Error {
    // serde_json reports the line and column of the failure
    Error::InvalidInput(format!("malformed JSON: {e}"))
}

pub fn parse_group(json: &str) -> Result<FiniteGroup, Error> {
    let spec: GroupSpec = serde_json::from_str(json).map_err(json_error)?;
    spec.build()
}

pub fn parse_poset(json: &str) -> Result<FinitePoset, Error> {
    let spec: PosetSpec = serde_json::from_str(json).map_err(json_error)?;
    spec.build()
}

pub fn parse_amalgam(json: &str) -> Result<AmalgamCategory, Error> {
    let spec: AmalgamSpec = serde_json::from_str(json).map_err(json_error)?;
    spec.build()
}

/// Parse any of the three schemas, trying amalgam, poset, then group.
pub fn parse_any(json: &str) -> Result<AlgebraInput, Error> {
    let spec: AnySpec = serde_json::from_str(json).map_err(json_error)?;
    Ok(match spec {
        AnySpec::Amalgam(s) => AlgebraInput::Amalgam(s.build()?),
        AnySpec::Poset(s) => AlgebraInput::Poset(s.build()?),
        AnySpec::Group(s) => AlgebraInput::Group(s.build()?),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_three_schemas() {
        let g = parse_group(r#"{"cyclic": 3}"#).unwrap();
        assert_eq!(g.order(), 3);
        let g = parse_group(r#"{"table": [[0, 1], [1, 0]], "identity": 0}"#).unwrap();
        assert_eq!(g.order(), 2);
        let p = parse_poset(r#"{"size": 3, "relations": [[0, 1], [1, 2]]}"#).unwrap();
        assert!(p.leq(0, 2));
        let a = parse_amalgam(
            r#"{"poset": {"size": 2, "relations": [[0, 1]]}, "groups": [{"cyclic": 2}, {"cyclic": 1}]}"#,
        )
        .unwrap();
        assert_eq!(a.morphism_count(), 4);
    }

    #[test]
    fn any_spec_dispatch() {
        assert!(matches!(parse_any(r#"{"cyclic": 2}"#), Ok(AlgebraInput::Group(_))));
        assert!(matches!(
            parse_any(r#"{"size": 2, "relations": []}"#),
            Ok(AlgebraInput::Poset(_))
        ));
        assert!(matches!(
            parse_any(r#"{"poset": {"size": 1, "relations": []}, "groups": [{"cyclic": 2}]}"#),
            Ok(AlgebraInput::Amalgam(_))
        ));
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(parse_group("{").is_err());
        assert!(parse_group(r#"{"cyclic": 0}"#).is_err());
        assert!(parse_group(r#"{"cyclic": 100000}"#).is_err());
        // not a group: no identity row
        assert!(parse_group(r#"{"table": [[1, 1], [1, 1]], "identity": 0}"#).is_err());
        // cycle in the relation
        assert!(parse_poset(r#"{"size": 2, "relations": [[0, 1], [1, 0]]}"#).is_err());
        // group count mismatch
        assert!(parse_amalgam(
            r#"{"poset": {"size": 2, "relations": []}, "groups": [{"cyclic": 2}]}"#
        )
        .is_err());
    }

    #[test]
    fn json_errors_carry_position() {
        let err = parse_group("{\n  \"cyclic\": ").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("line"), "{msg}");
    }
}
