//! Functors X: I → k-Cat given on the generators of a presentation of I.
//!
//! Each fiber X(i) is presented by a quiver with linear relations; each
//! arrow a: i → j of I's presentation quiver acts by an object map on fiber
//! vertices together with an arrow map sending each fiber arrow to a linear
//! combination in the target fiber. Validation is eager: endpoint
//! compatibility, preservation of fiber relations, and coherence across the
//! relations of I are all checked with witnesses before anything downstream
//! runs.

use std::collections::BTreeMap;
use std::fmt;

use crate::congruence::{ClassId, FinPresCategory};
use crate::path_algebra::{hom_basis, lin_mul, HomBasis, LinComb, LinearRelationSet};
use crate::quiver::{ArrowId, Path, Quiver, VertexId};
use crate::scalar::{Field, Scalar};
use crate::Error;

/// A fiber X(i) = kQ^(i)/⟨R^(i)⟩ with hom bases for every vertex pair.
#[derive(Clone, Debug)]
pub struct FiberPresentation {
    index: String,
    quiver: Quiver,
    relations: LinearRelationSet,
    field: Field,
    bound: usize,
    bases: BTreeMap<(VertexId, VertexId), HomBasis>,
}

impl FiberPresentation {
    /// Builds the fiber, searching for the smallest bound (up to `max_bound`)
    /// at which every hom pair passes the finite-dimensionality certificate,
    /// and checking the hypothesis that no trivial path lies in the ideal.
    pub fn new(
        index: &str,
        quiver: Quiver,
        relations: LinearRelationSet,
        field: Field,
        max_bound: usize,
    ) -> Result<FiberPresentation, Error> {
        let start = relations.max_term_len().max(1);
        if start > max_bound {
            return Err(Error::Input(format!(
                "fiber `{index}`: bound {max_bound} is smaller than the longest relation term ({start})"
            )));
        }
        let mut last_err = None;
        for bound in start..=max_bound {
            match try_bases(&quiver, &relations, field, bound) {
                Ok(bases) => {
                    let fiber = FiberPresentation {
                        index: index.to_string(),
                        quiver,
                        relations,
                        field,
                        bound,
                        bases,
                    };
                    for x in fiber.quiver.vertex_ids() {
                        let e = LinComb::from_path(fiber.quiver.trivial_path(x), field);
                        let coords = fiber.hom_basis(x, x).reduce(&fiber.quiver, &e)?;
                        if coords.iter().all(Scalar::is_zero) {
                            return Err(Error::Input(format!(
                                "fiber `{}`: the ideal contains the trivial path e_{}",
                                fiber.index,
                                fiber.quiver.vertex_name(x)
                            )));
                        }
                    }
                    return Ok(fiber);
                }
                Err(e @ Error::PossiblyInfinite { .. }) => last_err = Some(e),
                Err(e) => return Err(e),
            }
        }
        Err(last_err.expect("at least one bound attempted"))
    }

    pub fn index(&self) -> &str {
        &self.index
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &LinearRelationSet {
        &self.relations
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn hom_basis(&self, x: VertexId, y: VertexId) -> &HomBasis {
        &self.bases[&(x, y)]
    }

    /// Reduces a homogeneous element of arbitrary term length to its normal
    /// form: terms longer than the bound are rewritten window-by-window
    /// using the certificate, then reduced in the hom basis.
    pub fn reduce_full(&self, v: &LinComb) -> Result<LinComb, Error> {
        let mut cur = v.clone();
        while cur.max_term_len() > self.bound {
            let mut next = LinComb::zero(cur.tail(), cur.head());
            for (p, c) in cur.terms() {
                if p.len() <= self.bound {
                    next.add_term(p.clone(), c.clone());
                    continue;
                }
                // Rewrite the initial window of maximal bounded length.
                let arrows = p.arrows();
                let window_arrows: Vec<ArrowId> = arrows[..self.bound].to_vec();
                let mid = self.quiver.head(window_arrows[self.bound - 1]);
                let window = Path::from_parts(p.tail(), mid, window_arrows);
                let basis = self.hom_basis(p.tail(), mid);
                let nf =
                    basis.normal_form(&self.quiver, &LinComb::from_path(window, self.field))?;
                for (w, d) in nf.terms() {
                    debug_assert!(w.len() < self.bound);
                    let mut new_arrows = w.arrows().to_vec();
                    new_arrows.extend_from_slice(&arrows[self.bound..]);
                    next.add_term(Path::from_parts(p.tail(), p.head(), new_arrows), c.mul(d));
                }
            }
            cur = next;
        }
        self.hom_basis(cur.tail(), cur.head()).normal_form(&self.quiver, &cur)
    }
}

fn try_bases(
    quiver: &Quiver,
    relations: &LinearRelationSet,
    field: Field,
    bound: usize,
) -> Result<BTreeMap<(VertexId, VertexId), HomBasis>, Error> {
    let mut bases = BTreeMap::new();
    for x in quiver.vertex_ids() {
        for y in quiver.vertex_ids() {
            bases.insert((x, y), hom_basis(quiver, relations, x, y, bound, field)?);
        }
    }
    Ok(bases)
}

/// The action of one arrow a: i → j of I: an object map on fiber vertices
/// and an arrow map into the target fiber's linear combinations.
#[derive(Clone, Debug)]
pub struct ArrowAction {
    /// Source fiber vertex → target fiber vertex.
    pub object_map: BTreeMap<VertexId, VertexId>,
    /// Source fiber arrow → element of kQ^(j).
    pub arrow_map: BTreeMap<ArrowId, LinComb>,
}

/// Derives the functor induced by a vertex map, for quivers with neither
/// double arrows nor loops: an arrow x → y goes to the unique arrow
/// f(x) → f(y) when the images differ and to the trivial path otherwise.
pub fn induce_from_vertex_map(
    src: &Quiver,
    dst: &Quiver,
    vmap: &BTreeMap<String, String>,
    field: Field,
) -> Result<ArrowAction, Error> {
    for (name, q) in [("source", src), ("target", dst)] {
        for a in q.arrow_ids() {
            if q.tail(a) == q.head(a) {
                return Err(Error::Induction(format!(
                    "{name} quiver has a loop `{}`",
                    q.arrow_name(a)
                )));
            }
            for b in q.arrow_ids() {
                if a < b && q.tail(a) == q.tail(b) && q.head(a) == q.head(b) {
                    return Err(Error::Induction(format!(
                        "{name} quiver has double arrows `{}`, `{}`",
                        q.arrow_name(a),
                        q.arrow_name(b)
                    )));
                }
            }
        }
    }
    let mut object_map = BTreeMap::new();
    for x in src.vertex_ids() {
        let name = src.vertex_name(x);
        let img = vmap
            .get(name)
            .ok_or_else(|| Error::Induction(format!("vertex map missing `{name}`")))?;
        object_map.insert(x, dst.vertex(img)?);
    }
    let mut arrow_map = BTreeMap::new();
    for a in src.arrow_ids() {
        let fx = object_map[&src.tail(a)];
        let fy = object_map[&src.head(a)];
        if fx == fy {
            arrow_map.insert(a, LinComb::from_path(dst.trivial_path(fx), field));
        } else {
            let between = dst.arrows_between(fx, fy);
            match between.as_slice() {
                [unique] => {
                    arrow_map.insert(a, LinComb::from_path(dst.arrow_path(*unique), field));
                }
                [] => {
                    return Err(Error::Induction(format!(
                        "no arrow {} -> {} to carry `{}` (and the images differ)",
                        dst.vertex_name(fx),
                        dst.vertex_name(fy),
                        src.arrow_name(a)
                    )));
                }
                _ => unreachable!("double arrows rejected above"),
            }
        }
    }
    Ok(ArrowAction { object_map, arrow_map })
}

/// One violated functor invariant, with a witness.
#[derive(Clone, Debug)]
pub enum Violation {
    MissingFiber(String),
    ExtraFiber(String),
    MissingAction(String),
    ExtraAction(String),
    ObjectMapIncomplete {
        action: String,
        vertex: String,
    },
    EndpointMismatch {
        action: String,
        arrow: String,
        expected: (String, String),
        got: (String, String),
    },
    RelationNotPreserved {
        fiber: String,
        action: String,
        relation: String,
        image: String,
    },
    CoherenceObject {
        lhs: String,
        rhs: String,
        object: String,
        via_lhs: String,
        via_rhs: String,
    },
    CoherenceArrow {
        lhs: String,
        rhs: String,
        arrow: String,
        via_lhs: String,
        via_rhs: String,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::MissingFiber(i) => write!(f, "no fiber given for vertex `{i}` of I"),
            Violation::ExtraFiber(i) => write!(f, "fiber `{i}` does not match a vertex of I"),
            Violation::MissingAction(a) => write!(f, "no action given for arrow `{a}` of I"),
            Violation::ExtraAction(a) => write!(f, "action `{a}` does not match an arrow of I"),
            Violation::ObjectMapIncomplete { action, vertex } => {
                write!(f, "action `{action}`: object map misses fiber vertex `{vertex}`")
            }
            Violation::EndpointMismatch { action, arrow, expected, got } => write!(
                f,
                "action `{action}`: image of arrow `{arrow}` should run {} -> {} but runs {} -> {}",
                expected.0, expected.1, got.0, got.1
            ),
            Violation::RelationNotPreserved { fiber, action, relation, image } => write!(
                f,
                "action `{action}` does not preserve relation `{relation}` of fiber `{fiber}`: image reduces to `{image}`"
            ),
            Violation::CoherenceObject { lhs, rhs, object, via_lhs, via_rhs } => write!(
                f,
                "relation ({lhs}, {rhs}) of I is incoherent on object `{object}`: `{via_lhs}` vs `{via_rhs}`"
            ),
            Violation::CoherenceArrow { lhs, rhs, arrow, via_lhs, via_rhs } => write!(
                f,
                "relation ({lhs}, {rhs}) of I is incoherent on arrow `{arrow}`: `{via_lhs}` vs `{via_rhs}`"
            ),
        }
    }
}

/// The outcome of functor validation; empty means valid.
#[derive(Clone, Debug, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return write!(f, "valid");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "- {v}")?;
        }
        Ok(())
    }
}

/// A functor X: I → k-Cat on the generators of I's presentation.
#[derive(Clone, Debug)]
pub struct FunctorAssignment {
    fibers: BTreeMap<String, FiberPresentation>,
    actions: BTreeMap<String, ArrowAction>,
}

impl FunctorAssignment {
    pub fn new(
        fibers: BTreeMap<String, FiberPresentation>,
        actions: BTreeMap<String, ArrowAction>,
    ) -> FunctorAssignment {
        FunctorAssignment { fibers, actions }
    }

    pub fn fiber(&self, i: &str) -> Result<&FiberPresentation, Error> {
        self.fibers.get(i).ok_or_else(|| Error::Input(format!("no fiber for vertex `{i}`")))
    }

    pub fn fibers(&self) -> impl Iterator<Item = (&String, &FiberPresentation)> {
        self.fibers.iter()
    }

    pub fn action(&self, a: &str) -> Result<&ArrowAction, Error> {
        self.actions.get(a).ok_or_else(|| Error::Input(format!("no action for arrow `{a}`")))
    }

    pub fn field(&self) -> Field {
        self.fibers.values().next().map(FiberPresentation::field).unwrap_or(Field::Rational)
    }

    /// Follows the object maps along a path of I (diagrammatic order).
    pub fn apply_path_object(
        &self,
        i_quiver: &Quiver,
        path: &Path,
        x: VertexId,
    ) -> Result<VertexId, Error> {
        let mut cur = x;
        for &a in path.arrows() {
            let action = self.action(i_quiver.arrow_name(a))?;
            cur = *action.object_map.get(&cur).ok_or_else(|| {
                Error::Input(format!(
                    "action `{}`: object map misses vertex #{}",
                    i_quiver.arrow_name(a),
                    cur.0
                ))
            })?;
        }
        Ok(cur)
    }

    /// Applies the arrow maps along a path of I to a fiber element,
    /// reducing to normal form in each intermediate fiber.
    pub fn apply_path_morphism(
        &self,
        i_quiver: &Quiver,
        path: &Path,
        v: &LinComb,
    ) -> Result<LinComb, Error> {
        let mut cur_vertex = path.tail();
        let mut cur = self.fiber(i_quiver.vertex_name(cur_vertex))?.reduce_full(v)?;
        for &a in path.arrows() {
            let action = self.action(i_quiver.arrow_name(a))?;
            cur_vertex = i_quiver.head(a);
            let target = self.fiber(i_quiver.vertex_name(cur_vertex))?;
            cur = apply_action(action, target, &cur)?;
        }
        Ok(cur)
    }

    /// Action of a morphism class of I on a fiber object, along the
    /// canonical representative.
    pub fn act_on_object(
        &self,
        i_cat: &FinPresCategory,
        class: ClassId,
        x: VertexId,
    ) -> Result<VertexId, Error> {
        self.apply_path_object(i_cat.quiver(), i_cat.class(class).rep(), x)
    }

    /// Action of a morphism class of I on a fiber element, reduced in the
    /// target fiber.
    pub fn act_on_morphism(
        &self,
        i_cat: &FinPresCategory,
        class: ClassId,
        v: &LinComb,
    ) -> Result<LinComb, Error> {
        self.apply_path_morphism(i_cat.quiver(), i_cat.class(class).rep(), v)
    }

    /// Checks all functor invariants and reports every violation found.
    pub fn validate(&self, i_cat: &FinPresCategory) -> ValidationReport {
        let mut report = ValidationReport::default();
        let iq = i_cat.quiver();
        for v in iq.vertex_ids() {
            if !self.fibers.contains_key(iq.vertex_name(v)) {
                report.violations.push(Violation::MissingFiber(iq.vertex_name(v).to_string()));
            }
        }
        for name in self.fibers.keys() {
            if iq.vertex(name).is_err() {
                report.violations.push(Violation::ExtraFiber(name.clone()));
            }
        }
        for a in iq.arrow_ids() {
            if !self.actions.contains_key(iq.arrow_name(a)) {
                report.violations.push(Violation::MissingAction(iq.arrow_name(a).to_string()));
            }
        }
        for name in self.actions.keys() {
            if iq.arrow(name).is_err() {
                report.violations.push(Violation::ExtraAction(name.clone()));
            }
        }
        if !report.is_valid() {
            return report;
        }

        // Per-arrow structural checks and relation preservation.
        for a in iq.arrow_ids() {
            let a_name = iq.arrow_name(a);
            let action = &self.actions[a_name];
            let src = &self.fibers[iq.vertex_name(iq.tail(a))];
            let dst = &self.fibers[iq.vertex_name(iq.head(a))];
            let mut structural_ok = true;
            for x in src.quiver().vertex_ids() {
                if !action.object_map.contains_key(&x) {
                    report.violations.push(Violation::ObjectMapIncomplete {
                        action: a_name.to_string(),
                        vertex: src.quiver().vertex_name(x).to_string(),
                    });
                    structural_ok = false;
                }
            }
            if !structural_ok {
                continue;
            }
            for alpha in src.quiver().arrow_ids() {
                let Some(img) = action.arrow_map.get(&alpha) else {
                    report.violations.push(Violation::ObjectMapIncomplete {
                        action: a_name.to_string(),
                        vertex: format!("(arrow `{}`)", src.quiver().arrow_name(alpha)),
                    });
                    structural_ok = false;
                    continue;
                };
                let want_tail = action.object_map[&src.quiver().tail(alpha)];
                let want_head = action.object_map[&src.quiver().head(alpha)];
                if img.tail() != want_tail || img.head() != want_head {
                    report.violations.push(Violation::EndpointMismatch {
                        action: a_name.to_string(),
                        arrow: src.quiver().arrow_name(alpha).to_string(),
                        expected: (
                            dst.quiver().vertex_name(want_tail).to_string(),
                            dst.quiver().vertex_name(want_head).to_string(),
                        ),
                        got: (
                            dst.quiver().vertex_name(img.tail()).to_string(),
                            dst.quiver().vertex_name(img.head()).to_string(),
                        ),
                    });
                    structural_ok = false;
                }
            }
            if !structural_ok {
                continue;
            }
            for rel in src.relations().iter() {
                match apply_action(action, dst, rel) {
                    Ok(img) if img.is_zero() => {}
                    Ok(img) => report.violations.push(Violation::RelationNotPreserved {
                        fiber: src.index().to_string(),
                        action: a_name.to_string(),
                        relation: rel.display(src.quiver()),
                        image: img.display(dst.quiver()),
                    }),
                    Err(e) => report.violations.push(Violation::RelationNotPreserved {
                        fiber: src.index().to_string(),
                        action: a_name.to_string(),
                        relation: rel.display(src.quiver()),
                        image: format!("<error: {e}>"),
                    }),
                }
            }
        }
        if !report.is_valid() {
            return report;
        }

        // Coherence across the relations of I.
        for rel in i_cat.relations().iter() {
            let src_vertex = rel.lhs.tail();
            let src = &self.fibers[iq.vertex_name(src_vertex)];
            let lhs_disp = iq.display_path(&rel.lhs);
            let rhs_disp = iq.display_path(&rel.rhs);
            for x in src.quiver().vertex_ids() {
                let via_l = self.apply_path_object(iq, &rel.lhs, x);
                let via_r = self.apply_path_object(iq, &rel.rhs, x);
                match (via_l, via_r) {
                    (Ok(l), Ok(r)) if l == r => {}
                    (l, r) => {
                        let tgt = &self.fibers[iq.vertex_name(rel.lhs.head())];
                        let show = |v: Result<VertexId, Error>| match v {
                            Ok(id) => tgt.quiver().vertex_name(id).to_string(),
                            Err(e) => format!("<error: {e}>"),
                        };
                        report.violations.push(Violation::CoherenceObject {
                            lhs: lhs_disp.clone(),
                            rhs: rhs_disp.clone(),
                            object: src.quiver().vertex_name(x).to_string(),
                            via_lhs: show(l),
                            via_rhs: show(r),
                        });
                    }
                }
            }
            for alpha in src.quiver().arrow_ids() {
                let v = LinComb::from_path(src.quiver().arrow_path(alpha), src.field());
                let via_l = self.apply_path_morphism(iq, &rel.lhs, &v);
                let via_r = self.apply_path_morphism(iq, &rel.rhs, &v);
                match (via_l, via_r) {
                    (Ok(l), Ok(r)) if l == r => {}
                    (l, r) => {
                        let tgt = &self.fibers[iq.vertex_name(rel.lhs.head())];
                        let show = |v: Result<LinComb, Error>| match v {
                            Ok(lc) => lc.display(tgt.quiver()),
                            Err(e) => format!("<error: {e}>"),
                        };
                        report.violations.push(Violation::CoherenceArrow {
                            lhs: lhs_disp.clone(),
                            rhs: rhs_disp.clone(),
                            arrow: src.quiver().arrow_name(alpha).to_string(),
                            via_lhs: show(l),
                            via_rhs: show(r),
                        });
                    }
                }
            }
        }
        report
    }
}

/// Applies one arrow action to a normal-form element of the source fiber:
/// the linear-multiplicative extension of the arrow map, reduced in the
/// target fiber.
fn apply_action(
    action: &ArrowAction,
    target: &FiberPresentation,
    v: &LinComb,
) -> Result<LinComb, Error> {
    let tq = target.quiver();
    let out_tail = action.object_map[&v.tail()];
    let out_head = action.object_map[&v.head()];
    let mut out = LinComb::zero(out_tail, out_head);
    for (p, c) in v.terms() {
        let mut img = LinComb::from_path(tq.trivial_path(out_tail), target.field());
        for &alpha in p.arrows() {
            let step = action
                .arrow_map
                .get(&alpha)
                .ok_or_else(|| Error::Input("arrow map incomplete".to_string()))?;
            img = lin_mul(tq, step, &img)?;
        }
        let img = target.reduce_full(&img)?;
        for (w, d) in img.terms() {
            out.add_term(w.clone(), c.mul(d));
        }
    }
    target.reduce_full(&out)
}
