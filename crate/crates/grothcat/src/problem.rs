//! The JSON problem-file format (schema version 1) and its conversion into
//! validated domain objects.
//!
//! Paths are written in composition order, the way the word is read:
//! the relation ba = dc is `{"lhs": ["b","a"], "rhs": ["d","c"]}`.
//! Coefficients are strings (`"1"`, `"-2/3"`) or plain integers. See
//! `docs/input-schema.md` for the full format.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::congruence::PairRelationSet;
use crate::functor_model::{
    induce_from_vertex_map, ArrowAction, FiberPresentation, FunctorAssignment,
};
use crate::path_algebra::{Algebra, LinComb, LinearRelationSet};
use crate::quiver::{Path, Quiver, VertexId};
use crate::scalar::{Field, Scalar};
use crate::Error;

pub const DEFAULT_BOUND: usize = 12;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ProblemFile {
    #[serde(default = "default_schema_version")]
    pub schema_version: u32,
    #[serde(default)]
    pub field: FieldSpec,
    pub index_category: IndexSection,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub fibers: BTreeMap<String, FiberSection>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub actions: BTreeMap<String, ActionSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<AlgebraSection>,
    #[serde(default, skip_serializing_if = "BoundsSection::is_default")]
    pub bounds: BoundsSection,
}

fn default_schema_version() -> u32 {
    1
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Default)]
#[serde(untagged)]
pub enum FieldSpec {
    #[default]
    #[serde(skip)]
    Unset,
    Named(String),
    Prime {
        prime: u64,
    },
}

impl FieldSpec {
    pub fn resolve(&self) -> Result<Field, Error> {
        match self {
            FieldSpec::Unset => Ok(Field::Rational),
            FieldSpec::Named(s) if s == "rational" => Ok(Field::Rational),
            FieldSpec::Named(s) => Field::parse_descriptor(s),
            FieldSpec::Prime { prime } => Field::prime(*prime),
        }
    }

    pub fn from_field(f: Field) -> FieldSpec {
        match f {
            Field::Rational => FieldSpec::Named("rational".to_string()),
            Field::Prime(p) => FieldSpec::Prime { prime: p },
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct IndexSection {
    pub quiver: QuiverSection,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub relations: Vec<PairRelationSection>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct QuiverSection {
    pub vertices: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub arrows: Vec<ArrowSection>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ArrowSection {
    pub id: String,
    pub tail: String,
    pub head: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct PairRelationSection {
    /// Arrow ids in composition order (as the word is written).
    pub lhs: Vec<String>,
    pub rhs: Vec<String>,
    /// Vertex for a side that is a trivial path, when not inferable.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub at: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct FiberSection {
    pub quiver: QuiverSection,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub relations: Vec<LinCombSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct LinCombSection {
    pub terms: Vec<TermSection>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct TermSection {
    pub coeff: CoeffValue,
    /// Arrow ids in composition order; empty means a trivial path at `at`.
    pub path: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub at: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum CoeffValue {
    Int(i64),
    Str(String),
}

impl CoeffValue {
    fn parse(&self, field: Field) -> Result<Scalar, Error> {
        match self {
            CoeffValue::Int(n) => Ok(field.integer(*n)),
            CoeffValue::Str(s) => Scalar::parse(s, field),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum ActionSection {
    VertexMap {
        vertex_map: BTreeMap<String, String>,
    },
    Explicit {
        object_map: BTreeMap<String, String>,
        #[serde(default)]
        arrow_map: BTreeMap<String, LinCombSection>,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct AlgebraSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub labels: Vec<String>,
    pub unit: Vec<CoeffValue>,
    /// structure[i][j] = coordinates of labels[i] · labels[j].
    pub structure: Vec<Vec<Vec<CoeffValue>>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Default)]
pub struct BoundsSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub index: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fiber: Option<usize>,
}

impl BoundsSection {
    fn is_default(&self) -> bool {
        self.index.is_none() && self.fiber.is_none()
    }
}

/// A fully validated problem: the index presentation, optionally a functor
/// (when fiber sections are present) and an algebra, plus the canonical
/// file image for round-tripping.
#[derive(Clone, Debug)]
pub struct Problem {
    pub field: Field,
    pub i_quiver: Quiver,
    pub i_relations: PairRelationSet,
    pub index_bound: usize,
    pub fiber_bound: usize,
    pub functor: Option<FunctorAssignment>,
    pub algebra: Option<Algebra>,
    pub file: ProblemFile,
}

/// Overrides applied on top of the file (CLI flags).
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub bound: Option<usize>,
    pub field: Option<Field>,
}

fn build_quiver(section: &QuiverSection) -> Result<Quiver, Error> {
    Quiver::new(
        section.vertices.clone(),
        section.arrows.iter().map(|a| (a.id.clone(), a.tail.clone(), a.head.clone())).collect(),
    )
}

fn path_from_section(
    q: &Quiver,
    word: &[String],
    at: Option<&str>,
    what: &str,
) -> Result<Path, Error> {
    if word.is_empty() {
        let at =
            at.ok_or_else(|| Error::Input(format!("{what}: a trivial path needs an `at` vertex")))?;
        return Ok(q.trivial_path(q.vertex(at)?));
    }
    let refs: Vec<&str> = word.iter().map(String::as_str).collect();
    q.path_from_word(&refs)
}

/// Converts a linear-combination section, splitting non-homogeneous input
/// into homogeneous components.
fn lincombs_from_section(
    q: &Quiver,
    section: &LinCombSection,
    field: Field,
    what: &str,
) -> Result<Vec<LinComb>, Error> {
    let mut by_endpoints: BTreeMap<(VertexId, VertexId), Vec<(Path, Scalar)>> = BTreeMap::new();
    for term in &section.terms {
        let path = path_from_section(q, &term.path, term.at.as_deref(), what)?;
        let coeff = term.coeff.parse(field)?;
        by_endpoints.entry((path.tail(), path.head())).or_default().push((path, coeff));
    }
    let mut out = Vec::new();
    for ((tail, head), terms) in by_endpoints {
        let mut lc = LinComb::zero(tail, head);
        for (p, c) in terms {
            lc = crate::path_algebra::lin_add(q, &lc, &LinComb::term(p, c))?;
        }
        if !lc.is_zero() {
            out.push(lc);
        }
    }
    Ok(out)
}

/// One homogeneous linear combination (no splitting allowed).
fn single_lincomb_from_section(
    q: &Quiver,
    section: &LinCombSection,
    field: Field,
    expected: (VertexId, VertexId),
    what: &str,
) -> Result<LinComb, Error> {
    let mut lc = LinComb::zero(expected.0, expected.1);
    for term in &section.terms {
        let path = if term.path.is_empty() && term.at.is_none() {
            if expected.0 != expected.1 {
                return Err(Error::Input(format!(
                    "{what}: trivial path cannot run between distinct vertices"
                )));
            }
            q.trivial_path(expected.0)
        } else {
            path_from_section(q, &term.path, term.at.as_deref(), what)?
        };
        if path.tail() != expected.0 || path.head() != expected.1 {
            return Err(Error::Input(format!(
                "{what}: term `{}` is not parallel to the required endpoints",
                q.display_path(&path)
            )));
        }
        let coeff = term.coeff.parse(field)?;
        lc = crate::path_algebra::lin_add(q, &lc, &LinComb::term(path, coeff))?;
    }
    Ok(lc)
}

impl Problem {
    pub fn from_file(file: ProblemFile, overrides: &Overrides) -> Result<Problem, Error> {
        if file.schema_version != 1 {
            return Err(Error::Input(format!(
                "unsupported schema_version {} (this build reads version 1)",
                file.schema_version
            )));
        }
        let field = match overrides.field {
            Some(f) => f,
            None => file.field.resolve()?,
        };
        let i_quiver = build_quiver(&file.index_category.quiver)?;
        let mut pairs = Vec::new();
        for rel in &file.index_category.relations {
            let lhs = path_from_section(&i_quiver, &rel.lhs, rel.at.as_deref(), "index relation")?;
            let rhs = path_from_section(&i_quiver, &rel.rhs, rel.at.as_deref(), "index relation")?;
            pairs.push((lhs, rhs));
        }
        let i_relations = PairRelationSet::new(&i_quiver, pairs)?;
        let index_bound = overrides.bound.or(file.bounds.index).unwrap_or(DEFAULT_BOUND);
        let fiber_bound = overrides.bound.or(file.bounds.fiber).unwrap_or(DEFAULT_BOUND);

        let functor = if file.fibers.is_empty() {
            if !file.actions.is_empty() {
                return Err(Error::Input("actions given without fiber sections".to_string()));
            }
            None
        } else {
            let mut fibers = BTreeMap::new();
            for (name, section) in &file.fibers {
                let fq = build_quiver(&section.quiver)?;
                let mut rels = Vec::new();
                for r in &section.relations {
                    rels.extend(lincombs_from_section(
                        &fq,
                        r,
                        field,
                        &format!("fiber `{name}` relation"),
                    )?);
                }
                let relations = LinearRelationSet::new(rels)?;
                let bound = section.bound.unwrap_or(fiber_bound);
                fibers.insert(
                    name.clone(),
                    FiberPresentation::new(name, fq, relations, field, bound)?,
                );
            }
            let mut actions = BTreeMap::new();
            for (name, section) in &file.actions {
                let arrow = i_quiver.arrow(name)?;
                let src_name = i_quiver.vertex_name(i_quiver.tail(arrow));
                let dst_name = i_quiver.vertex_name(i_quiver.head(arrow));
                let src = fibers.get(src_name).ok_or_else(|| {
                    Error::Input(format!("action `{name}`: missing fiber `{src_name}`"))
                })?;
                let dst = fibers.get(dst_name).ok_or_else(|| {
                    Error::Input(format!("action `{name}`: missing fiber `{dst_name}`"))
                })?;
                let action = match section {
                    ActionSection::VertexMap { vertex_map } => {
                        induce_from_vertex_map(src.quiver(), dst.quiver(), vertex_map, field)?
                    }
                    ActionSection::Explicit { object_map, arrow_map } => {
                        let mut omap = BTreeMap::new();
                        for v in src.quiver().vertex_ids() {
                            let v_name = src.quiver().vertex_name(v);
                            let img = object_map.get(v_name).ok_or_else(|| {
                                Error::Input(format!(
                                    "action `{name}`: object map misses `{v_name}`"
                                ))
                            })?;
                            omap.insert(v, dst.quiver().vertex(img)?);
                        }
                        let mut amap = BTreeMap::new();
                        for alpha in src.quiver().arrow_ids() {
                            let a_name = src.quiver().arrow_name(alpha);
                            let section = arrow_map.get(a_name).ok_or_else(|| {
                                Error::Input(format!(
                                    "action `{name}`: arrow map misses `{a_name}`"
                                ))
                            })?;
                            let expected =
                                (omap[&src.quiver().tail(alpha)], omap[&src.quiver().head(alpha)]);
                            amap.insert(
                                alpha,
                                single_lincomb_from_section(
                                    dst.quiver(),
                                    section,
                                    field,
                                    expected,
                                    &format!("action `{name}`, arrow `{a_name}`"),
                                )?,
                            );
                        }
                        ArrowAction { object_map: omap, arrow_map: amap }
                    }
                };
                actions.insert(name.clone(), action);
            }
            Some(FunctorAssignment::new(fibers, actions))
        };

        let algebra = match &file.algebra {
            None => None,
            Some(section) => {
                let unit =
                    section.unit.iter().map(|c| c.parse(field)).collect::<Result<Vec<_>, _>>()?;
                let structure = section
                    .structure
                    .iter()
                    .map(|row| {
                        row.iter()
                            .map(|cell| {
                                cell.iter().map(|c| c.parse(field)).collect::<Result<Vec<_>, _>>()
                            })
                            .collect::<Result<Vec<_>, _>>()
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Some(Algebra::new(
                    section.name.as_deref().unwrap_or("A"),
                    section.labels.clone(),
                    unit,
                    structure,
                    field,
                )?)
            }
        };

        let canonical = canonicalize(&file, field);
        Ok(Problem {
            field,
            i_quiver,
            i_relations,
            index_bound,
            fiber_bound,
            functor,
            algebra,
            file: canonical,
        })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.file).expect("serializable");
        s.push('\n');
        s
    }
}

/// Canonical file image: coefficients rendered as strings in the resolved
/// field, the field made explicit.
fn canonicalize(file: &ProblemFile, field: Field) -> ProblemFile {
    let canon_coeff = |c: &CoeffValue| -> CoeffValue {
        match c.parse(field) {
            Ok(s) => CoeffValue::Str(s.to_string()),
            Err(_) => c.clone(),
        }
    };
    let canon_lincomb = |lc: &LinCombSection| LinCombSection {
        terms: lc
            .terms
            .iter()
            .map(|t| TermSection {
                coeff: canon_coeff(&t.coeff),
                path: t.path.clone(),
                at: t.at.clone(),
            })
            .collect(),
    };
    ProblemFile {
        schema_version: file.schema_version,
        field: FieldSpec::from_field(field),
        index_category: file.index_category.clone(),
        fibers: file
            .fibers
            .iter()
            .map(|(k, v)| {
                (
                    k.clone(),
                    FiberSection {
                        quiver: v.quiver.clone(),
                        relations: v.relations.iter().map(canon_lincomb).collect(),
                        bound: v.bound,
                    },
                )
            })
            .collect(),
        actions: file
            .actions
            .iter()
            .map(|(k, v)| {
                let v = match v {
                    ActionSection::VertexMap { vertex_map } => {
                        ActionSection::VertexMap { vertex_map: vertex_map.clone() }
                    }
                    ActionSection::Explicit { object_map, arrow_map } => ActionSection::Explicit {
                        object_map: object_map.clone(),
                        arrow_map: arrow_map
                            .iter()
                            .map(|(a, lc)| (a.clone(), canon_lincomb(lc)))
                            .collect(),
                    },
                };
                (k.clone(), v)
            })
            .collect(),
        algebra: file.algebra.as_ref().map(|a| AlgebraSection {
            name: a.name.clone(),
            labels: a.labels.clone(),
            unit: a.unit.iter().map(canon_coeff).collect(),
            structure: a
                .structure
                .iter()
                .map(|row| row.iter().map(|cell| cell.iter().map(canon_coeff).collect()).collect())
                .collect(),
        }),
        bounds: file.bounds.clone(),
    }
}

/// A parse failure: JSON syntax errors carry the position.
#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Json { line: usize, column: usize, message: String },
    #[error("{0}")]
    Semantic(#[from] Error),
    #[error("cannot read `{path}`: {message}")]
    Io { path: String, message: String },
}

pub fn parse_str(text: &str, overrides: &Overrides) -> Result<Problem, LoadError> {
    let file: ProblemFile = serde_json::from_str(text).map_err(|e| LoadError::Json {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    Ok(Problem::from_file(file, overrides)?)
}

pub fn load(path: &std::path::Path, overrides: &Overrides) -> Result<Problem, LoadError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| LoadError::Io { path: path.display().to_string(), message: e.to_string() })?;
    parse_str(&text, overrides)
}
