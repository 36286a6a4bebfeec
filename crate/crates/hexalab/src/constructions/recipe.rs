//! JSON recipes describing how to build a space, so the CLI and fixtures can
//! name constructions instead of shipping explicit matrices.

use super::named::{named_graph, NamedGraph};
use super::{
    cayley_graph, cantor_space, graph_substitution, hamming_space, product_space, union_space,
    zmod_graph, BuildError, CayleySpec, NormP, ProductSpec,
};
use crate::group::Group;
use crate::io::SpaceJson;
use crate::rational::parse_q;
use crate::space::Space;
use serde::{Deserialize, Serialize};

/// A buildable description of a space.
///
/// ```json
/// {"kind": "cayley", "group": [3, 4], "generators": [[1, 0], [0, 1]]}
/// {"kind": "named", "name": "petersen"}
/// {"kind": "product", "p": 1, "factors": [ ... , ... ]}
/// {"kind": "union", "l": "10/1", "factors": [ ... , ... ]}
/// {"kind": "substitution", "l": "10", "backbone": ..., "parts": [ ... ]}
/// {"kind": "hamming", "n": 5, "a": ["1", "1", "1", "1", "1"]}
/// {"kind": "cantor", "depth": 6}
/// {"kind": "zmod", "n": 7, "generators": [1, 3]}
/// {"kind": "explicit", "points": [...], "weights": [...], "dist": [[...]], "value_kind": "plain"}
/// ```
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Recipe {
    Cayley {
        group: GroupField,
        generators: GeneratorsField,
    },
    Named {
        name: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        n: Option<u32>,
    },
    Product {
        p: NormField,
        factors: Vec<Recipe>,
    },
    Union {
        l: String,
        factors: Vec<Recipe>,
    },
    Substitution {
        l: String,
        backbone: Box<Recipe>,
        parts: Vec<Recipe>,
    },
    Hamming {
        n: u32,
        a: Vec<String>,
    },
    Cantor {
        depth: u32,
    },
    Zmod {
        n: u32,
        generators: Vec<i64>,
    },
    Explicit(SpaceJson),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupField {
    /// Product of cyclic groups, e.g. `[3, 4]`.
    CyclicFactors(Vec<u32>),
    /// `"S3"` through `"S6"`.
    Symmetric(String),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GeneratorsField {
    /// Coordinate tuples for cyclic products, e.g. `[[1, 0], [0, 1]]`.
    Coords(Vec<Vec<i64>>),
    /// `"transpositions"` for a symmetric group.
    Keyword(String),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum NormField {
    Number(f64),
    /// `"inf"`.
    Word(String),
}

/// A built space, plus the group behind it when the recipe was group-based
/// (needed by the Patterson commands).
#[derive(Clone, Debug)]
pub struct BuiltSpace {
    pub space: Space,
    pub group: Option<Group>,
}

/// Materializes a recipe into an explicit space.
pub fn build_recipe(recipe: &Recipe) -> Result<BuiltSpace, BuildError> {
    match recipe {
        Recipe::Cayley { group, generators } => {
            let group = match group {
                GroupField::CyclicFactors(factors) => Group::cyclic_product(factors.clone())?,
                GroupField::Symmetric(name) => {
                    let n: u32 = name
                        .strip_prefix('S')
                        .or_else(|| name.strip_prefix('s'))
                        .and_then(|rest| rest.parse().ok())
                        .ok_or_else(|| {
                            BuildError::Precondition(format!(
                                "unknown group `{name}`; use cyclic factors or S2..S6"
                            ))
                        })?;
                    Group::symmetric(n)?
                }
            };
            let gens = match generators {
                GeneratorsField::Coords(coords) => coords
                    .iter()
                    .map(|c| group.element_from_coords(c))
                    .collect::<Result<Vec<_>, _>>()?,
                GeneratorsField::Keyword(word) if word == "transpositions" => {
                    group.transpositions()
                }
                GeneratorsField::Keyword(word) => {
                    return Err(BuildError::Precondition(format!(
                        "unknown generator keyword `{word}`"
                    )))
                }
            };
            let space = cayley_graph(&CayleySpec::new(group.clone(), gens))?;
            Ok(BuiltSpace {
                space,
                group: Some(group),
            })
        }
        Recipe::Named { name, n } => {
            let space = named_graph(&NamedGraph::parse(name, *n)?)?;
            Ok(BuiltSpace { space, group: None })
        }
        Recipe::Product { p, factors } => {
            let [left, right] = two_factors(factors)?;
            let p = match p {
                NormField::Word(w) if w == "inf" => NormP::Inf,
                NormField::Word(w) => {
                    return Err(BuildError::Precondition(format!("unknown norm `{w}`")))
                }
                NormField::Number(x) if *x == 1.0 => NormP::One,
                NormField::Number(x) if *x == 2.0 => NormP::Two,
                NormField::Number(x) => NormP::Float(*x),
            };
            let space = product_space(&ProductSpec {
                left: &left,
                right: &right,
                p,
            })?;
            Ok(BuiltSpace { space, group: None })
        }
        Recipe::Union { l, factors } => {
            let [left, right] = two_factors(factors)?;
            let l = parse_q(l).map_err(|e| BuildError::Precondition(e.to_string()))?;
            let space = union_space(&left, &right, &l)?;
            Ok(BuiltSpace { space, group: None })
        }
        Recipe::Substitution { l, backbone, parts } => {
            let l = parse_q(l).map_err(|e| BuildError::Precondition(e.to_string()))?;
            let backbone = build_recipe(backbone)?.space;
            let parts = parts
                .iter()
                .map(|p| build_recipe(p).map(|b| b.space))
                .collect::<Result<Vec<_>, _>>()?;
            let space = graph_substitution(&backbone, &l, &parts)?;
            Ok(BuiltSpace { space, group: None })
        }
        Recipe::Hamming { n, a } => {
            let a = a
                .iter()
                .map(|w| parse_q(w))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| BuildError::Precondition(e.to_string()))?;
            let space = hamming_space(*n, &a)?;
            Ok(BuiltSpace { space, group: None })
        }
        Recipe::Cantor { depth } => {
            let space = cantor_space(*depth)?;
            Ok(BuiltSpace { space, group: None })
        }
        Recipe::Zmod { n, generators } => {
            let space = zmod_graph(*n, generators)?;
            Ok(BuiltSpace {
                space,
                group: Some(Group::cyclic(*n)),
            })
        }
        Recipe::Explicit(json) => {
            let space = json
                .to_space()
                .map_err(|e| BuildError::Precondition(e.to_string()))?;
            Ok(BuiltSpace { space, group: None })
        }
    }
}

fn two_factors(factors: &[Recipe]) -> Result<[Space; 2], BuildError> {
    if factors.len() != 2 {
        return Err(BuildError::Precondition(format!(
            "exactly two factors required, found {}",
            factors.len()
        )));
    }
    let left = build_recipe(&factors[0])?.space;
    let right = build_recipe(&factors[1])?.space;
    Ok([left, right])
}

/// Parses a recipe from JSON text.
pub fn recipe_from_json(text: &str) -> Result<Recipe, serde_json::Error> {
    serde_json::from_str(text)
}
