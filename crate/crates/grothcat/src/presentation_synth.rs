//! Synthesis of the quiver presentation (Q′, R′) of Gr(X), the comparison
//! functor Φ: kQ′ → Gr(X), and verification of the isomorphism.
//!
//! Q′ has one vertex ⟨i, x⟩ per fiber vertex, an inner arrow per fiber
//! arrow, and a connecting arrow (a, ⟨i, x⟩): ⟨i, x⟩ → ⟨j, ax⟩ per arrow
//! a: i → j of I and fiber vertex x. The relations come in three families:
//! R′₁ embeds the fiber relations, R′₂ equates the connecting chains
//! π(g, x) and π(h, x) along each relation (g, h) of I, and R′₃ are the
//! mixed squares (a, y)·α − (aα)·(a, x) built from chosen lifts aα of the
//! arrow actions. Verification checks Φ(R′) = 0, the object bijection, and
//! per-hom dimension equality between kQ′/⟨R′⟩ (by bounded linear algebra)
//! and the concrete Gr(X) hom spaces, plus independence of the lift choice.

use std::collections::BTreeMap;
use std::fmt;

use crate::congruence::{ClassId, FinPresCategory};
use crate::functor_model::{FunctorAssignment, ValidationReport};
use crate::grothendieck::{
    gr_compose, gr_hom_basis, gr_identity, GrHomBasis, GrMorphism, GrObject,
};
use crate::linalg::RowEchelon;
use crate::path_algebra::{hom_basis, lin_mul, lin_scale, LinComb, LinearRelationSet};
use crate::quiver::{ArrowId, DotOptions, Path, Quiver, VertexId};
use crate::scalar::Field;
use crate::Error;

/// What a Q′ arrow is: a relabeled fiber arrow or a connecting arrow.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum GrArrowKind {
    Inner { index: String, arrow: String },
    Connecting { i_arrow: String, index: String, fiber_object: String },
}

/// The synthesized quiver Q′ with structured vertex and arrow metadata.
#[derive(Clone, Debug)]
pub struct GrQuiver {
    quiver: Quiver,
    /// (index vertex, fiber vertex) per Q′ vertex, dense order.
    vertex_pairs: Vec<(String, String)>,
    vertex_lookup: BTreeMap<(String, String), VertexId>,
    /// Arrow kind per Q′ arrow, dense order.
    kinds: Vec<GrArrowKind>,
    inner_lookup: BTreeMap<(String, String), ArrowId>,
    connecting_lookup: BTreeMap<(String, String), ArrowId>,
}

impl GrQuiver {
    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn vertex_for(&self, index: &str, fiber_object: &str) -> Result<VertexId, Error> {
        self.vertex_lookup
            .get(&(index.to_string(), fiber_object.to_string()))
            .copied()
            .ok_or_else(|| Error::UnknownVertex(format!("<{index},{fiber_object}>")))
    }

    pub fn pair_of(&self, v: VertexId) -> (&str, &str) {
        let (i, x) = &self.vertex_pairs[v.0 as usize];
        (i, x)
    }

    pub fn object_of(&self, v: VertexId) -> GrObject {
        let (i, x) = self.pair_of(v);
        GrObject::new(i, x)
    }

    pub fn kind(&self, a: ArrowId) -> &GrArrowKind {
        &self.kinds[a.0 as usize]
    }

    pub fn inner_arrow(&self, index: &str, arrow: &str) -> Result<ArrowId, Error> {
        self.inner_lookup
            .get(&(index.to_string(), arrow.to_string()))
            .copied()
            .ok_or_else(|| Error::UnknownArrow(format!("inner ({index}, {arrow})")))
    }

    pub fn connecting_arrow(&self, i_arrow: &str, fiber_object: &str) -> Result<ArrowId, Error> {
        self.connecting_lookup
            .get(&(i_arrow.to_string(), fiber_object.to_string()))
            .copied()
            .ok_or_else(|| Error::UnknownArrow(format!("connecting ({i_arrow}, {fiber_object})")))
    }

    /// Inner arrows first (by index vertex, then fiber arrow), then
    /// connecting arrows (by I-arrow, then fiber vertex): the listing
    /// order used by text output.
    pub fn arrows_in_family_order(&self) -> Vec<ArrowId> {
        let mut inner: Vec<ArrowId> = self.inner_lookup.values().copied().collect();
        inner.sort_by_key(|a| {
            let GrArrowKind::Inner { index, arrow } = self.kind(*a) else { unreachable!() };
            (index.clone(), arrow.clone())
        });
        let mut connecting: Vec<ArrowId> = self.connecting_lookup.values().copied().collect();
        connecting.sort_by_key(|a| {
            let GrArrowKind::Connecting { i_arrow, index, fiber_object } = self.kind(*a) else {
                unreachable!()
            };
            (i_arrow.clone(), index.clone(), fiber_object.clone())
        });
        inner.extend(connecting);
        inner
    }

    /// DOT options rendering connecting arrows dashed.
    pub fn dot_options(&self) -> DotOptions {
        let mut opts = DotOptions { graph_name: Some("Q'".to_string()), ..Default::default() };
        for a in self.quiver.arrow_ids() {
            if matches!(self.kind(a), GrArrowKind::Connecting { .. }) {
                opts.dashed_arrows.insert(self.quiver.arrow_name(a).to_string());
            }
        }
        opts
    }
}

fn vertex_label(i: &str, x: &str, sep: &str) -> String {
    format!("_{i}{sep}{x}")
}

fn inner_label(i: &str, alpha: &str, sep: &str) -> String {
    format!("_{i}{sep}{alpha}")
}

fn connecting_label(a: &str, i: &str, x: &str, sep: &str) -> String {
    format!("({a},_{i}{sep}{x})")
}

/// Builds Q′ from a validated functor assignment. Labels follow the compact
/// `_1x` / `_1α` / `(a,_1x)` convention; when compact labels collide a `.`
/// separator is inserted throughout.
pub fn build_qprime(x: &FunctorAssignment, i_quiver: &Quiver) -> Result<GrQuiver, Error> {
    for sep in ["", "."] {
        match try_build_qprime(x, i_quiver, sep) {
            Ok(gq) => return Ok(gq),
            Err(Error::Input(msg)) if msg.contains("collide") && sep.is_empty() => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::Input(
        "vertex/arrow labels collide even with separators; rename the inputs".to_string(),
    ))
}

fn try_build_qprime(
    x: &FunctorAssignment,
    i_quiver: &Quiver,
    sep: &str,
) -> Result<GrQuiver, Error> {
    let mut vertices: Vec<String> = Vec::new();
    let mut pair_by_label: BTreeMap<String, (String, String)> = BTreeMap::new();
    for iv in i_quiver.vertex_ids() {
        let i_name = i_quiver.vertex_name(iv);
        let fiber = x.fiber(i_name)?;
        for fv in fiber.quiver().vertex_ids() {
            let x_name = fiber.quiver().vertex_name(fv);
            let label = vertex_label(i_name, x_name, sep);
            if pair_by_label
                .insert(label.clone(), (i_name.to_string(), x_name.to_string()))
                .is_some()
            {
                return Err(Error::Input(format!("vertex labels collide at `{label}`")));
            }
            vertices.push(label);
        }
    }
    let mut arrows: Vec<(String, String, String)> = Vec::new();
    let mut kind_by_label: BTreeMap<String, GrArrowKind> = BTreeMap::new();
    for iv in i_quiver.vertex_ids() {
        let i_name = i_quiver.vertex_name(iv);
        let fiber = x.fiber(i_name)?;
        let fq = fiber.quiver();
        for alpha in fq.arrow_ids() {
            let label = inner_label(i_name, fq.arrow_name(alpha), sep);
            let tail = vertex_label(i_name, fq.vertex_name(fq.tail(alpha)), sep);
            let head = vertex_label(i_name, fq.vertex_name(fq.head(alpha)), sep);
            if kind_by_label
                .insert(
                    label.clone(),
                    GrArrowKind::Inner {
                        index: i_name.to_string(),
                        arrow: fq.arrow_name(alpha).to_string(),
                    },
                )
                .is_some()
            {
                return Err(Error::Input(format!("arrow labels collide at `{label}`")));
            }
            arrows.push((label, tail, head));
        }
    }
    for a in i_quiver.arrow_ids() {
        let a_name = i_quiver.arrow_name(a);
        let i_name = i_quiver.vertex_name(i_quiver.tail(a));
        let j_name = i_quiver.vertex_name(i_quiver.head(a));
        let src_fiber = x.fiber(i_name)?;
        let dst_fiber = x.fiber(j_name)?;
        let action = x.action(a_name)?;
        for fv in src_fiber.quiver().vertex_ids() {
            let x_name = src_fiber.quiver().vertex_name(fv);
            let ax = action.object_map.get(&fv).ok_or_else(|| {
                Error::Input(format!("action `{a_name}`: object map misses `{x_name}`"))
            })?;
            let label = connecting_label(a_name, i_name, x_name, sep);
            let tail = vertex_label(i_name, x_name, sep);
            let head = vertex_label(j_name, dst_fiber.quiver().vertex_name(*ax), sep);
            if kind_by_label
                .insert(
                    label.clone(),
                    GrArrowKind::Connecting {
                        i_arrow: a_name.to_string(),
                        index: i_name.to_string(),
                        fiber_object: x_name.to_string(),
                    },
                )
                .is_some()
            {
                return Err(Error::Input(format!("arrow labels collide at `{label}`")));
            }
            arrows.push((label, tail, head));
        }
    }
    let quiver = Quiver::new(vertices, arrows)?;
    let mut vertex_pairs = vec![(String::new(), String::new()); quiver.vertex_count()];
    let mut vertex_lookup = BTreeMap::new();
    for v in quiver.vertex_ids() {
        let pair = pair_by_label[quiver.vertex_name(v)].clone();
        vertex_lookup.insert(pair.clone(), v);
        vertex_pairs[v.0 as usize] = pair;
    }
    let mut kinds = Vec::with_capacity(quiver.arrow_count());
    let mut inner_lookup = BTreeMap::new();
    let mut connecting_lookup = BTreeMap::new();
    for a in quiver.arrow_ids() {
        let kind = kind_by_label[quiver.arrow_name(a)].clone();
        match &kind {
            GrArrowKind::Inner { index, arrow } => {
                inner_lookup.insert((index.clone(), arrow.clone()), a);
            }
            GrArrowKind::Connecting { i_arrow, fiber_object, .. } => {
                connecting_lookup.insert((i_arrow.clone(), fiber_object.clone()), a);
            }
        }
        kinds.push(kind);
    }
    Ok(GrQuiver { quiver, vertex_pairs, vertex_lookup, kinds, inner_lookup, connecting_lookup })
}

/// The connecting chain π(a, ⟨i, x⟩) threading the fiber object x along the
/// path a of I; its length equals the length of a.
pub fn pi_path(
    x: &FunctorAssignment,
    gq: &GrQuiver,
    i_quiver: &Quiver,
    a: &Path,
    start: &str,
) -> Result<Path, Error> {
    let i_name = i_quiver.vertex_name(a.tail());
    let mut cur_vertex = gq.vertex_for(i_name, start)?;
    let mut fiber = x.fiber(i_name)?;
    let mut fv = fiber.quiver().vertex(start)?;
    let mut arrows = Vec::with_capacity(a.len());
    for &step in a.arrows() {
        let a_name = i_quiver.arrow_name(step);
        let x_name = fiber.quiver().vertex_name(fv);
        let conn = gq.connecting_arrow(a_name, x_name)?;
        debug_assert_eq!(gq.quiver().tail(conn), cur_vertex);
        arrows.push(conn);
        let action = x.action(a_name)?;
        let next_fv = action.object_map[&fv];
        let j_name = i_quiver.vertex_name(i_quiver.head(step));
        fiber = x.fiber(j_name)?;
        fv = next_fv;
        cur_vertex = gq.quiver().head(conn);
    }
    let tail = gq.vertex_for(i_name, start)?;
    Ok(Path::from_parts(tail, cur_vertex, arrows))
}

/// Embeds a fiber element into kQ′ by relabeling arrows and vertices.
pub fn sigma_embed(
    x: &FunctorAssignment,
    gq: &GrQuiver,
    index: &str,
    v: &LinComb,
) -> Result<LinComb, Error> {
    let fiber = x.fiber(index)?;
    let fq = fiber.quiver();
    let tail = gq.vertex_for(index, fq.vertex_name(v.tail()))?;
    let head = gq.vertex_for(index, fq.vertex_name(v.head()))?;
    let mut out = LinComb::zero(tail, head);
    for (p, c) in v.terms() {
        let mut arrows = Vec::with_capacity(p.len());
        for &alpha in p.arrows() {
            arrows.push(gq.inner_arrow(index, fq.arrow_name(alpha))?);
        }
        let t = gq.vertex_for(index, fq.vertex_name(p.tail()))?;
        let h = gq.vertex_for(index, fq.vertex_name(p.head()))?;
        out.add_term(Path::from_parts(t, h, arrows), c.clone());
    }
    Ok(out)
}

/// The canonical lift aα: the normal form in the target fiber of the arrow
/// action applied to α. Its class maps onto X(ā)Φ^(i)(α) by construction.
pub fn choose_lift(
    x: &FunctorAssignment,
    i_quiver: &Quiver,
    a: ArrowId,
    alpha: ArrowId,
) -> Result<LinComb, Error> {
    let a_name = i_quiver.arrow_name(a);
    let i_name = i_quiver.vertex_name(i_quiver.tail(a));
    let j_name = i_quiver.vertex_name(i_quiver.head(a));
    let src = x.fiber(i_name)?;
    let dst = x.fiber(j_name)?;
    let action = x.action(a_name)?;
    let img = action
        .arrow_map
        .get(&alpha)
        .ok_or_else(|| {
            Error::Input(format!(
                "action `{a_name}` has no image for arrow `{}`",
                src.quiver().arrow_name(alpha)
            ))
        })?
        .clone();
    dst.reduce_full(&img)
}

/// Relation family tags.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Family {
    R1,
    R2,
    R3,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::R1 => write!(f, "R1"),
            Family::R2 => write!(f, "R2"),
            Family::R3 => write!(f, "R3"),
        }
    }
}

/// One relation of R′, with its family tag and a human-readable origin.
#[derive(Clone, Debug)]
pub struct GrRelation {
    pub family: Family,
    pub label: String,
    pub value: LinComb,
}

impl GrRelation {
    /// Sign-normalized rendering (leading term positive).
    pub fn display(&self, q: &Quiver) -> String {
        self.value.display_normalized(q)
    }
}

/// The family-tagged relation set R′ = R′₁ ∪ R′₂ ∪ R′₃.
#[derive(Clone, Debug, Default)]
pub struct GrRelationSet {
    pub relations: Vec<GrRelation>,
}

impl GrRelationSet {
    pub fn len(&self) -> usize {
        self.relations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.relations.is_empty()
    }

    pub fn family_count(&self, family: Family) -> usize {
        self.relations.iter().filter(|r| r.family == family).count()
    }

    pub fn as_linear(&self) -> Result<LinearRelationSet, Error> {
        LinearRelationSet::new(self.relations.iter().map(|r| r.value.clone()).collect())
    }
}

/// Builds R′ with the canonical lifts.
pub fn build_relations(
    x: &FunctorAssignment,
    i_cat: &FinPresCategory,
    gq: &GrQuiver,
) -> Result<GrRelationSet, Error> {
    build_relations_with_lifts(x, i_cat, gq, &BTreeMap::new())
}

/// Builds R′, overriding the lift aα for the pairs present in `lifts`
/// (keyed by (I-arrow id, fiber arrow id)). Used to test that ⟨R′⟩ does not
/// depend on the choice of lifts.
pub fn build_relations_with_lifts(
    x: &FunctorAssignment,
    i_cat: &FinPresCategory,
    gq: &GrQuiver,
    lifts: &BTreeMap<(String, String), LinComb>,
) -> Result<GrRelationSet, Error> {
    let iq = i_cat.quiver();
    let mut relations = Vec::new();
    // R′₁: embedded fiber relations.
    for iv in iq.vertex_ids() {
        let i_name = iq.vertex_name(iv);
        let fiber = x.fiber(i_name)?;
        for (k, mu) in fiber.relations().iter().enumerate() {
            relations.push(GrRelation {
                family: Family::R1,
                label: format!("sigma_{i_name}(relation {k})"),
                value: sigma_embed(x, gq, i_name, mu)?,
            });
        }
    }
    // R′₂: π-differences along the relations of I, one per fiber vertex.
    for rel in i_cat.relations().iter() {
        let i_name = iq.vertex_name(rel.lhs.tail());
        let fiber = x.fiber(i_name)?;
        for fv in fiber.quiver().vertex_ids() {
            let x_name = fiber.quiver().vertex_name(fv);
            let pg = pi_path(x, gq, iq, &rel.lhs, x_name)?;
            let ph = pi_path(x, gq, iq, &rel.rhs, x_name)?;
            let field = fiber.field();
            let diff = crate::path_algebra::lin_add(
                gq.quiver(),
                &LinComb::from_path(pg, field),
                &lin_scale(&field.integer(-1), &LinComb::from_path(ph, field)),
            )?;
            relations.push(GrRelation {
                family: Family::R2,
                label: format!(
                    "pi({},_{}{}) - pi({},_{}{})",
                    iq.display_path(&rel.lhs),
                    i_name,
                    x_name,
                    iq.display_path(&rel.rhs),
                    i_name,
                    x_name
                ),
                value: diff,
            });
        }
    }
    // R′₃: commutation squares through the chosen lifts.
    for a in iq.arrow_ids() {
        let a_name = iq.arrow_name(a);
        let i_name = iq.vertex_name(iq.tail(a));
        let j_name = iq.vertex_name(iq.head(a));
        let fiber = x.fiber(i_name)?;
        let fq = fiber.quiver();
        for alpha in fq.arrow_ids() {
            let alpha_name = fq.arrow_name(alpha);
            let x_name = fq.vertex_name(fq.tail(alpha));
            let y_name = fq.vertex_name(fq.head(alpha));
            let field = fiber.field();
            // (a, ⟨i,y⟩) ∘ ⟨i,α⟩
            let inner = gq.inner_arrow(i_name, alpha_name)?;
            let conn_y = gq.connecting_arrow(a_name, y_name)?;
            let lhs_path = Path::from_parts(
                gq.quiver().tail(inner),
                gq.quiver().head(conn_y),
                vec![inner, conn_y],
            );
            // σ_j(aα) ∘ (a, ⟨i,x⟩)
            let lift = match lifts.get(&(a_name.to_string(), alpha_name.to_string())) {
                Some(l) => l.clone(),
                None => choose_lift(x, iq, a, alpha)?,
            };
            let embedded = sigma_embed(x, gq, j_name, &lift)?;
            let conn_x = gq.connecting_arrow(a_name, x_name)?;
            let conn_x_lc = LinComb::from_path(
                Path::from_parts(gq.quiver().tail(conn_x), gq.quiver().head(conn_x), vec![conn_x]),
                field,
            );
            let rhs = lin_mul(gq.quiver(), &embedded, &conn_x_lc)?;
            let value = crate::path_algebra::lin_add(
                gq.quiver(),
                &LinComb::from_path(lhs_path, field),
                &lin_scale(&field.integer(-1), &rhs),
            )?;
            relations.push(GrRelation {
                family: Family::R3,
                label: format!(
                    "({a_name},_{i_name}{y_name})·_{i_name}{alpha_name} - _{j_name}({a_name}{alpha_name})·({a_name},_{i_name}{x_name})"
                ),
                value,
            });
        }
    }
    Ok(GrRelationSet { relations })
}

/// Evaluates the comparison functor Φ on an element of kQ′: inner arrows go
/// to their fiber classes at the identity component, connecting arrows to
/// identity components at their I-arrow's class, extended multiplicatively
/// and linearly.
pub fn phi_eval(
    x: &FunctorAssignment,
    i_cat: &FinPresCategory,
    gq: &GrQuiver,
    v: &LinComb,
) -> Result<GrMorphism, Error> {
    let source = gq.object_of(v.tail());
    let target = gq.object_of(v.head());
    let mut out = GrMorphism::zero(source.clone(), target.clone());
    for (path, coeff) in v.terms() {
        let mut cur = gr_identity(x, i_cat, &gq.object_of(path.tail()))?;
        for &arrow in path.arrows() {
            let step = phi_arrow(x, i_cat, gq, arrow)?;
            cur = gr_compose(x, i_cat, &step, &cur)?;
        }
        out.add_assign(&cur.scale(coeff));
    }
    Ok(out)
}

fn phi_arrow(
    x: &FunctorAssignment,
    i_cat: &FinPresCategory,
    gq: &GrQuiver,
    arrow: ArrowId,
) -> Result<GrMorphism, Error> {
    let source = gq.object_of(gq.quiver().tail(arrow));
    let target = gq.object_of(gq.quiver().head(arrow));
    let mut out = GrMorphism::zero(source.clone(), target.clone());
    match gq.kind(arrow) {
        GrArrowKind::Inner { index, arrow: alpha_name } => {
            let i = i_cat.quiver().vertex(index)?;
            let fiber = x.fiber(index)?;
            let fq = fiber.quiver();
            let alpha = fq.arrow(alpha_name)?;
            let v = LinComb::from_path(fq.arrow_path(alpha), fiber.field());
            let coords = fiber.hom_basis(fq.tail(alpha), fq.head(alpha)).reduce(fq, &v)?;
            out.components.insert(i_cat.identity_class(i), coords);
        }
        GrArrowKind::Connecting { i_arrow, index, fiber_object } => {
            let iq = i_cat.quiver();
            let a = iq.arrow(i_arrow)?;
            let a_class = i_cat.class_of_path(&iq.arrow_path(a))?;
            let src_fiber = x.fiber(index)?;
            let fv = src_fiber.quiver().vertex(fiber_object)?;
            let ax = x.act_on_object(i_cat, a_class, fv)?;
            let j_name = iq.vertex_name(iq.head(a));
            let dst_fiber = x.fiber(j_name)?;
            let e = LinComb::from_path(dst_fiber.quiver().trivial_path(ax), dst_fiber.field());
            let coords = dst_fiber.hom_basis(ax, ax).reduce(dst_fiber.quiver(), &e)?;
            out.components.insert(a_class, coords);
        }
    }
    out.components.retain(|_, c| c.iter().any(|s| !s.is_zero()));
    Ok(out)
}

/// One element of the presented hom basis M: a path ν·π(a, ⟨i,x⟩) in Q′
/// tagged with its class and fiber basis index.
#[derive(Clone, Debug)]
pub struct PresentedBasisElement {
    pub class: ClassId,
    pub fiber_index: usize,
    pub path: Path,
}

/// The normal-form basis {ν · π(a, ⟨i,x⟩)} of (kQ′/⟨R′⟩)(s, t), indexed by
/// classes a of I(i, j) and the fiber hom bases of X(j)(ax, y). Its
/// cardinality equals the Gr(X) hom dimension by construction.
pub fn presented_hom_basis(
    x: &FunctorAssignment,
    i_cat: &FinPresCategory,
    gq: &GrQuiver,
    s: VertexId,
    t: VertexId,
) -> Result<Vec<PresentedBasisElement>, Error> {
    let (i_name, x_name) = gq.pair_of(s);
    let (j_name, y_name) = gq.pair_of(t);
    let iq = i_cat.quiver();
    let i = iq.vertex(i_name)?;
    let j = iq.vertex(j_name)?;
    let src_fiber = x.fiber(i_name)?;
    let dst_fiber = x.fiber(j_name)?;
    let fv = src_fiber.quiver().vertex(x_name)?;
    let ty = dst_fiber.quiver().vertex(y_name)?;
    let mut out = Vec::new();
    for &a in i_cat.hom_set(i, j)? {
        let pi = pi_path(x, gq, iq, i_cat.class(a).rep(), x_name)?;
        let ax = x.act_on_object(i_cat, a, fv)?;
        let basis = dst_fiber.hom_basis(ax, ty);
        for (k, nu) in basis.basis_paths().iter().enumerate() {
            let sigma =
                sigma_embed(x, gq, j_name, &LinComb::from_path(nu.clone(), dst_fiber.field()))?;
            let (sigma_path, _) = sigma.terms().next().expect("single term");
            let path = crate::quiver::compose_paths(gq.quiver(), sigma_path, &pi)?;
            out.push(PresentedBasisElement { class: a, fiber_index: k, path });
        }
    }
    Ok(out)
}

/// Per-hom-pair verification data.
#[derive(Clone, Debug)]
pub struct HomCheck {
    pub source: String,
    pub target: String,
    pub dim_presented: Option<usize>,
    pub dim_gr: usize,
    pub phi_rank: usize,
    pub ok: bool,
    pub note: Option<String>,
}

/// Outcome of the lift-independence re-run.
#[derive(Clone, Debug)]
pub struct LiftCheck {
    pub perturbed: usize,
    pub ok: bool,
    pub mismatches: Vec<String>,
}

/// The full verification report for the synthesized presentation.
#[derive(Clone, Debug)]
pub struct PresentationReport {
    pub functor: ValidationReport,
    /// (fiber vertex total, Q′ vertex count, ok)
    pub objects: (usize, usize, bool),
    pub relation_checks: Vec<(String, bool)>,
    pub hom_checks: Vec<HomCheck>,
    pub lift_check: Option<LiftCheck>,
}

impl PresentationReport {
    pub fn passed(&self) -> bool {
        self.functor.is_valid()
            && self.objects.2
            && self.relation_checks.iter().all(|(_, ok)| *ok)
            && self.hom_checks.iter().all(|c| c.ok)
            && self.lift_check.as_ref().map(|l| l.ok).unwrap_or(true)
    }
}

fn presented_dim(
    gq: &GrQuiver,
    rels: &LinearRelationSet,
    s: VertexId,
    t: VertexId,
    bound: usize,
    field: Field,
) -> Result<usize, Error> {
    let mut b = bound;
    for _ in 0..2 {
        match hom_basis(gq.quiver(), rels, s, t, b, field) {
            Ok(basis) => return Ok(basis.dim()),
            Err(Error::PossiblyInfinite { .. }) => b += 2,
            Err(e) => return Err(e),
        }
    }
    hom_basis(gq.quiver(), rels, s, t, b, field).map(|basis| basis.dim())
}

/// The verification bound for kQ′/⟨R′⟩: every normal form ν·π(a, ⟨i,x⟩) has
/// length at most (I's saturation bound) + (max fiber bound).
fn verification_bound(x: &FunctorAssignment, i_cat: &FinPresCategory) -> usize {
    let fiber_max = x.fibers().map(|(_, f)| f.bound()).max().unwrap_or(1);
    i_cat.bound() + fiber_max
}

/// Verifies the synthesized presentation against the concrete Gr(X):
/// Φ(R′) = 0, the object bijection, per-hom dimension equality between
/// kQ′/⟨R′⟩ and Gr(X) with Φ carrying the presented basis onto a spanning
/// independent set, and invariance of all presented dimensions under a
/// perturbed (but still valid) choice of lifts.
pub fn verify_presentation(
    x: &FunctorAssignment,
    i_cat: &FinPresCategory,
) -> Result<PresentationReport, Error> {
    let functor = x.validate(i_cat);
    if !functor.is_valid() {
        return Ok(PresentationReport {
            functor,
            objects: (0, 0, false),
            relation_checks: Vec::new(),
            hom_checks: Vec::new(),
            lift_check: None,
        });
    }
    let iq = i_cat.quiver();
    let gq = build_qprime(x, iq)?;
    let relations = build_relations(x, i_cat, &gq)?;
    let field = x.field();

    // (2) Object bijection: Q′ vertices correspond to fiber vertices.
    let fiber_total: usize = x.fibers().map(|(_, f)| f.quiver().vertex_count()).sum();
    let objects =
        (fiber_total, gq.quiver().vertex_count(), fiber_total == gq.quiver().vertex_count());

    // (1) Φ(R′) = 0, relation by relation.
    let mut relation_checks = Vec::new();
    for rel in &relations.relations {
        let image = phi_eval(x, i_cat, &gq, &rel.value)?;
        relation_checks
            .push((format!("{}: {}", rel.family, rel.value.display(gq.quiver())), image.is_zero()));
    }

    // (3) Hom dimensions and Φ on the presented basis.
    let bound = verification_bound(x, i_cat);
    let lin = relations.as_linear()?;
    let hom_checks = hom_checks_for(x, i_cat, &gq, &lin, bound, field, true)?;

    // (4) Lift independence: perturb every lift with a nonzero ideal
    // component at its target and compare all presented dimensions.
    let lift_check = {
        let mut lifts = BTreeMap::new();
        for a in iq.arrow_ids() {
            let a_name = iq.arrow_name(a);
            let i_name = iq.vertex_name(iq.tail(a));
            let j_name = iq.vertex_name(iq.head(a));
            let src = x.fiber(i_name)?;
            let dst = x.fiber(j_name)?;
            for alpha in src.quiver().arrow_ids() {
                let default = choose_lift(x, iq, a, alpha)?;
                let basis = dst.hom_basis(default.tail(), default.head());
                let ideal = basis.ideal_elements();
                if let Some(extra) = ideal.first() {
                    let perturbed = crate::path_algebra::lin_add(dst.quiver(), &default, extra)?;
                    lifts.insert(
                        (a_name.to_string(), src.quiver().arrow_name(alpha).to_string()),
                        perturbed,
                    );
                }
            }
        }
        if lifts.is_empty() {
            None
        } else {
            let perturbed_relations = build_relations_with_lifts(x, i_cat, &gq, &lifts)?;
            let perturbed_lin = perturbed_relations.as_linear()?;
            let perturbed_checks =
                hom_checks_for(x, i_cat, &gq, &perturbed_lin, bound, field, false)?;
            let mut mismatches = Vec::new();
            for (orig, pert) in hom_checks.iter().zip(&perturbed_checks) {
                if orig.dim_presented != pert.dim_presented {
                    mismatches.push(format!(
                        "({}, {}): {:?} vs {:?}",
                        orig.source, orig.target, orig.dim_presented, pert.dim_presented
                    ));
                }
            }
            Some(LiftCheck { perturbed: lifts.len(), ok: mismatches.is_empty(), mismatches })
        }
    };

    Ok(PresentationReport { functor, objects, relation_checks, hom_checks, lift_check })
}

fn hom_checks_for(
    x: &FunctorAssignment,
    i_cat: &FinPresCategory,
    gq: &GrQuiver,
    lin: &LinearRelationSet,
    bound: usize,
    field: Field,
    with_phi: bool,
) -> Result<Vec<HomCheck>, Error> {
    let mut out = Vec::new();
    for s in gq.quiver().vertex_ids() {
        for t in gq.quiver().vertex_ids() {
            let s_name = gq.quiver().vertex_name(s).to_string();
            let t_name = gq.quiver().vertex_name(t).to_string();
            let gr_basis: GrHomBasis = gr_hom_basis(x, i_cat, &gq.object_of(s), &gq.object_of(t))?;
            let dim_gr = gr_basis.dim();
            let (dim_presented, note) = match presented_dim(gq, lin, s, t, bound, field) {
                Ok(d) => (Some(d), None),
                Err(e) => (None, Some(e.to_string())),
            };
            let mut phi_rank = 0;
            let mut phi_ok = true;
            if with_phi {
                let m = presented_hom_basis(x, i_cat, gq, s, t)?;
                let mut echelon = RowEchelon::new(field, dim_gr.max(1));
                for elem in &m {
                    let image =
                        phi_eval(x, i_cat, gq, &LinComb::from_path(elem.path.clone(), field))?;
                    let mut coords = gr_basis.flatten(&image, field);
                    if coords.is_empty() {
                        coords = vec![field.zero()];
                    }
                    echelon.insert(coords);
                }
                phi_rank = echelon.rank();
                phi_ok = m.len() == dim_gr && phi_rank == dim_gr;
            }
            let ok = dim_presented == Some(dim_gr) && phi_ok;
            out.push(HomCheck {
                source: s_name,
                target: t_name,
                dim_presented,
                dim_gr,
                phi_rank,
                ok,
                note,
            });
        }
    }
    Ok(out)
}

/// Tietze arrow elimination: repeatedly, when a relation has a single-arrow
/// term whose arrow appears nowhere else in that relation, solve for the
/// arrow, substitute throughout, delete the arrow and drop the relation.
/// Scan order is deterministic (relation order; largest eligible term
/// first); the result presents an isomorphic category.
pub fn simplify_presentation(
    gq: &GrQuiver,
    rels: &GrRelationSet,
) -> Result<(GrQuiver, GrRelationSet), Error> {
    let mut cur_gq = gq.clone();
    let mut cur_rels = rels.relations.clone();
    'outer: loop {
        for (ri, rel) in cur_rels.iter().enumerate() {
            let Some((z_path, z_coeff)) = eligible_term(&rel.value) else {
                continue;
            };
            let z_arrow = z_path.arrows()[0];
            let z_name = cur_gq.quiver().arrow_name(z_arrow).to_string();
            // Solve: z = -(1/λ)·(rel − λ·z).
            let field = z_coeff.field();
            let rest = crate::path_algebra::lin_add(
                cur_gq.quiver(),
                &rel.value,
                &lin_scale(&z_coeff.neg(), &LinComb::from_path(z_path.clone(), field)),
            )?;
            let expr = lin_scale(&z_coeff.inv().neg(), &rest);
            // Rebuild the quiver without z and substitute everywhere.
            let new_gq = remove_arrow(&cur_gq, &z_name)?;
            let expr_new = remap(&cur_gq, &new_gq, &expr)?;
            let mut new_rels = Vec::with_capacity(cur_rels.len() - 1);
            for (rj, other) in cur_rels.iter().enumerate() {
                if rj == ri {
                    continue;
                }
                let substituted = substitute(&cur_gq, &new_gq, &other.value, &z_name, &expr_new)?;
                if !substituted.is_zero() {
                    new_rels.push(GrRelation {
                        family: other.family,
                        label: other.label.clone(),
                        value: substituted,
                    });
                }
            }
            cur_gq = new_gq;
            cur_rels = new_rels;
            continue 'outer;
        }
        break;
    }
    Ok((cur_gq, GrRelationSet { relations: cur_rels }))
}

/// The largest single-arrow term whose arrow occurs in no other term.
fn eligible_term(rel: &LinComb) -> Option<(Path, crate::scalar::Scalar)> {
    let terms: Vec<(&Path, &crate::scalar::Scalar)> = rel.terms().collect();
    for (path, coeff) in terms.iter().rev() {
        if path.len() != 1 {
            continue;
        }
        let arrow = path.arrows()[0];
        let elsewhere = terms.iter().any(|(p, _)| *p != *path && p.arrows().contains(&arrow));
        if !elsewhere {
            return Some(((*path).clone(), (*coeff).clone()));
        }
    }
    None
}

fn remove_arrow(gq: &GrQuiver, z_name: &str) -> Result<GrQuiver, Error> {
    let q = gq.quiver();
    let vertices: Vec<String> = q.vertex_ids().map(|v| q.vertex_name(v).to_string()).collect();
    let mut arrows = Vec::new();
    let mut kind_by_label = BTreeMap::new();
    for a in q.arrow_ids() {
        let name = q.arrow_name(a);
        if name == z_name {
            continue;
        }
        arrows.push((
            name.to_string(),
            q.vertex_name(q.tail(a)).to_string(),
            q.vertex_name(q.head(a)).to_string(),
        ));
        kind_by_label.insert(name.to_string(), gq.kind(a).clone());
    }
    let quiver = Quiver::new(vertices, arrows)?;
    let mut vertex_pairs = vec![(String::new(), String::new()); quiver.vertex_count()];
    let mut vertex_lookup = BTreeMap::new();
    for v in quiver.vertex_ids() {
        let old = gq.quiver().vertex(quiver.vertex_name(v))?;
        let (i, xv) = gq.pair_of(old);
        let pair = (i.to_string(), xv.to_string());
        vertex_lookup.insert(pair.clone(), v);
        vertex_pairs[v.0 as usize] = pair;
    }
    let mut kinds = Vec::with_capacity(quiver.arrow_count());
    let mut inner_lookup = BTreeMap::new();
    let mut connecting_lookup = BTreeMap::new();
    for a in quiver.arrow_ids() {
        let kind = kind_by_label[quiver.arrow_name(a)].clone();
        match &kind {
            GrArrowKind::Inner { index, arrow } => {
                inner_lookup.insert((index.clone(), arrow.clone()), a);
            }
            GrArrowKind::Connecting { i_arrow, fiber_object, .. } => {
                connecting_lookup.insert((i_arrow.clone(), fiber_object.clone()), a);
            }
        }
        kinds.push(kind);
    }
    Ok(GrQuiver { quiver, vertex_pairs, vertex_lookup, kinds, inner_lookup, connecting_lookup })
}

/// Re-expresses an element of the old quiver in the new one (same labels).
fn remap(old: &GrQuiver, new: &GrQuiver, v: &LinComb) -> Result<LinComb, Error> {
    let oq = old.quiver();
    let nq = new.quiver();
    let tail = nq.vertex(oq.vertex_name(v.tail()))?;
    let head = nq.vertex(oq.vertex_name(v.head()))?;
    let mut out = LinComb::zero(tail, head);
    for (p, c) in v.terms() {
        let mut arrows = Vec::with_capacity(p.len());
        for &a in p.arrows() {
            arrows.push(nq.arrow(oq.arrow_name(a))?);
        }
        let t = nq.vertex(oq.vertex_name(p.tail()))?;
        let h = nq.vertex(oq.vertex_name(p.head()))?;
        out.add_term(Path::from_parts(t, h, arrows), c.clone());
    }
    Ok(out)
}

/// Substitutes `expr` (over the new quiver) for every occurrence of the
/// arrow `z` in `v` (over the old quiver), multiplying out.
fn substitute(
    old: &GrQuiver,
    new: &GrQuiver,
    v: &LinComb,
    z_name: &str,
    expr: &LinComb,
) -> Result<LinComb, Error> {
    let oq = old.quiver();
    let nq = new.quiver();
    let field = expr_field(v, expr);
    let tail = nq.vertex(oq.vertex_name(v.tail()))?;
    let head = nq.vertex(oq.vertex_name(v.head()))?;
    let mut out = LinComb::zero(tail, head);
    for (p, c) in v.terms() {
        let t = nq.vertex(oq.vertex_name(p.tail()))?;
        let mut acc = LinComb::from_path(nq.trivial_path(t), field);
        for &a in p.arrows() {
            let name = oq.arrow_name(a);
            let step = if name == z_name {
                expr.clone()
            } else {
                LinComb::from_path(nq.arrow_path(nq.arrow(name)?), field)
            };
            acc = lin_mul(nq, &step, &acc)?;
        }
        out = crate::path_algebra::lin_add(nq, &out, &lin_scale(c, &acc))?;
    }
    Ok(out)
}

fn expr_field(v: &LinComb, expr: &LinComb) -> Field {
    v.terms()
        .next()
        .map(|(_, c)| c.field())
        .or_else(|| expr.terms().next().map(|(_, c)| c.field()))
        .unwrap_or(Field::Rational)
}
