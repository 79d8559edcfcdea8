//! Presentations ⟨Q | R⟩ of small categories.
//!
//! Relations are pairs of parallel paths. The congruence they generate is
//! computed by bounded saturation: all paths of length ≤ B are enumerated,
//! the relation pairs seed a union-find, and classes are closed under pre-
//! and post-composition by arrows (which suffices for closure under all path
//! extensions inside the bounded universe). The bound B grows until two
//! consecutive rounds agree on the shared universe and every maximal-length
//! path is equivalent to a strictly shorter one; that certificate makes every
//! longer path length-reducible, so composition of canonical representatives
//! stays decidable. The word problem is undecidable in general, so saturation
//! reports an explicit error, carrying the partial partition, when the bound
//! is exhausted. Completeness of the partition at the final bound is
//! heuristic in the same sense; the certificate only guarantees termination
//! of length reduction.

use std::collections::{BTreeMap, HashMap};

use crate::quiver::{compose_paths, ArrowId, Path, Quiver, VertexId};
use crate::Error;

/// A relation: two parallel paths to be identified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairRelation {
    pub lhs: Path,
    pub rhs: Path,
}

/// A finite list of parallel path pairs.
#[derive(Clone, Debug, Default)]
pub struct PairRelationSet {
    relations: Vec<PairRelation>,
}

impl PairRelationSet {
    pub fn empty() -> Self {
        PairRelationSet { relations: Vec::new() }
    }

    pub fn new(q: &Quiver, pairs: Vec<(Path, Path)>) -> Result<Self, Error> {
        let mut relations = Vec::with_capacity(pairs.len());
        for (lhs, rhs) in pairs {
            if !lhs.is_parallel_to(&rhs) {
                return Err(Error::NotParallel(q.display_path(&lhs), q.display_path(&rhs)));
            }
            relations.push(PairRelation { lhs, rhs });
        }
        Ok(PairRelationSet { relations })
    }

    pub fn iter(&self) -> impl Iterator<Item = &PairRelation> {
        self.relations.iter()
    }

    pub fn len(&self) -> usize {
        self.relations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.relations.is_empty()
    }

    fn max_side_len(&self) -> usize {
        self.relations.iter().map(|r| r.lhs.len().max(r.rhs.len())).max().unwrap_or(0)
    }
}

/// Union-find whose root is always the smallest member index; since the
/// universe is stored in global path order, the root is the canonical
/// representative of its class.
struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n as u32).collect() }
    }

    fn find(&mut self, mut i: u32) -> u32 {
        while self.parent[i as usize] != i {
            let p = self.parent[i as usize];
            self.parent[i as usize] = self.parent[p as usize];
            i = self.parent[i as usize];
        }
        i
    }

    fn union(&mut self, a: u32, b: u32) -> bool {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi as usize] = lo;
        true
    }
}

/// One bounded closure round: the path universe (globally ordered) together
/// with the congruence-closed union-find over it.
struct Closure {
    paths: Vec<Path>,
    roots: Vec<u32>,
    /// Minimal member length per root index.
    min_len: HashMap<u32, usize>,
}

fn enumerate_universe(q: &Quiver, bound: usize) -> (Vec<Path>, HashMap<Path, u32>) {
    let mut paths = Vec::new();
    let mut level: Vec<Path> = q.vertex_ids().map(|v| q.trivial_path(v)).collect();
    paths.extend(level.iter().cloned());
    for _ in 0..bound {
        let mut next = Vec::new();
        for p in &level {
            for &a in q.arrows_from(p.head()) {
                next.push(p.extended(q, a));
            }
        }
        if next.is_empty() {
            break;
        }
        paths.extend(next.iter().cloned());
        level = next;
    }
    let index = paths.iter().enumerate().map(|(i, p)| (p.clone(), i as u32)).collect();
    (paths, index)
}

fn closure_at(q: &Quiver, r: &PairRelationSet, bound: usize) -> Closure {
    let (paths, index) = enumerate_universe(q, bound);
    let mut uf = UnionFind::new(paths.len());
    for rel in r.iter() {
        uf.union(index[&rel.lhs], index[&rel.rhs]);
    }
    // Close under one-arrow extensions until stable; extension by whole paths
    // follows by induction since every intermediate stays within the bound.
    let mut changed = true;
    while changed {
        changed = false;
        for i in 0..paths.len() as u32 {
            let root = uf.find(i);
            if root == i {
                continue;
            }
            if paths[i as usize].len() + 1 > bound {
                continue;
            }
            let (pi, pr) = (paths[i as usize].clone(), paths[root as usize].clone());
            for &a in q.arrows_from(pi.head()) {
                let ei = index[&pi.extended(q, a)];
                let er = index[&pr.extended(q, a)];
                changed |= uf.union(ei, er);
            }
            for &a in q.arrows_into(pi.tail()) {
                let ei = index[&pi.prefixed(q, a)];
                let er = index[&pr.prefixed(q, a)];
                changed |= uf.union(ei, er);
            }
        }
    }
    let roots: Vec<u32> = (0..paths.len() as u32).map(|i| uf.find(i)).collect();
    let mut min_len: HashMap<u32, usize> = HashMap::new();
    for (i, p) in paths.iter().enumerate() {
        let e = min_len.entry(roots[i]).or_insert(usize::MAX);
        *e = (*e).min(p.len());
    }
    Closure { paths, roots, min_len }
}

/// Partitions agree on the shared universe (the prefix of length `n`): the
/// root maps must factor through each other.
fn partitions_agree(prev: &Closure, cur: &Closure, n: usize) -> bool {
    let mut fwd: HashMap<u32, u32> = HashMap::new();
    let mut bwd: HashMap<u32, u32> = HashMap::new();
    for i in 0..n as u32 {
        let a = prev.roots[i as usize];
        let b = cur.roots[i as usize];
        if *fwd.entry(a).or_insert(b) != b || *bwd.entry(b).or_insert(a) != a {
            return false;
        }
    }
    true
}

/// Every path of maximal length is equivalent to a strictly shorter one.
fn max_length_reducible(c: &Closure, bound: usize) -> bool {
    c.paths
        .iter()
        .enumerate()
        .filter(|(_, p)| p.len() == bound)
        .all(|(i, _)| c.min_len[&c.roots[i]] < bound)
}

/// Identifier of a morphism class of a saturated category.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ClassId(pub(crate) u32);

/// A morphism class: parallel paths identified by the congruence, with the
/// order-minimal member as canonical representative.
#[derive(Clone, Debug)]
pub struct MorphismClass {
    tail: VertexId,
    head: VertexId,
    rep: Path,
    members: Vec<Path>,
}

impl MorphismClass {
    pub fn tail(&self) -> VertexId {
        self.tail
    }

    pub fn head(&self) -> VertexId {
        self.head
    }

    pub fn rep(&self) -> &Path {
        &self.rep
    }

    pub fn members(&self) -> &[Path] {
        &self.members
    }
}

/// Data carried by a non-stabilization error: the classes found at the last
/// bound tried.
#[derive(Clone, Debug)]
pub struct PartialSaturation {
    pub bound: usize,
    pub hom_class_counts: BTreeMap<(String, String), usize>,
}

/// A finitely presented category with saturated morphism classes.
#[derive(Clone, Debug)]
pub struct FinPresCategory {
    quiver: Quiver,
    relations: PairRelationSet,
    bound: usize,
    classes: Vec<MorphismClass>,
    class_lookup: HashMap<Path, ClassId>,
    hom: BTreeMap<(VertexId, VertexId), Vec<ClassId>>,
    identities: Vec<ClassId>,
    table: BTreeMap<(ClassId, ClassId), ClassId>,
}

/// Computes ⟨Q | R⟩ by bounded saturation. `max_bound` caps the growth of the
/// path universe; stabilization failure is an explicit error carrying the
/// partial partition.
pub fn saturate(
    q: &Quiver,
    r: &PairRelationSet,
    max_bound: usize,
) -> Result<FinPresCategory, Error> {
    if max_bound < 1 {
        return Err(Error::Input("saturation bound must be at least 1".to_string()));
    }
    let start = r.max_side_len().max(1);
    if start > max_bound {
        return Err(Error::Input(format!(
            "saturation bound {max_bound} is smaller than the longest relation side ({start})"
        )));
    }
    let mut prev = closure_at(q, r, start);
    for bound in start + 1..=max_bound {
        let cur = closure_at(q, r, bound);
        if partitions_agree(&prev, &cur, prev.paths.len()) && max_length_reducible(&cur, bound) {
            return Ok(build_category(q, r, cur, bound));
        }
        prev = cur;
    }
    let mut counts: BTreeMap<(String, String), usize> = BTreeMap::new();
    let mut seen: HashMap<u32, ()> = HashMap::new();
    for (i, p) in prev.paths.iter().enumerate() {
        if seen.insert(prev.roots[i], ()).is_none() {
            let key = (q.vertex_name(p.tail()).to_string(), q.vertex_name(p.head()).to_string());
            *counts.entry(key).or_insert(0) += 1;
        }
    }
    Err(Error::NonStabilizing {
        bound: max_bound,
        partial: PartialSaturation { bound: max_bound, hom_class_counts: counts },
    })
}

fn build_category(q: &Quiver, r: &PairRelationSet, c: Closure, bound: usize) -> FinPresCategory {
    // Group members per root; paths are stored in global order, so the first
    // member of each group is the canonical representative.
    let mut groups: BTreeMap<u32, Vec<Path>> = BTreeMap::new();
    for (i, p) in c.paths.iter().enumerate() {
        groups.entry(c.roots[i]).or_default().push(p.clone());
    }
    let mut classes: Vec<MorphismClass> = groups
        .into_values()
        .map(|members| MorphismClass {
            tail: members[0].tail(),
            head: members[0].head(),
            rep: members[0].clone(),
            members,
        })
        .collect();
    classes.sort_by(|a, b| (a.tail, a.head, &a.rep).cmp(&(b.tail, b.head, &b.rep)));
    let mut class_lookup = HashMap::new();
    let mut hom: BTreeMap<(VertexId, VertexId), Vec<ClassId>> = BTreeMap::new();
    let mut identities = vec![ClassId(0); q.vertex_count()];
    for (i, cls) in classes.iter().enumerate() {
        let id = ClassId(i as u32);
        for m in &cls.members {
            class_lookup.insert(m.clone(), id);
        }
        hom.entry((cls.tail, cls.head)).or_default().push(id);
        if cls.rep.is_trivial() {
            identities[cls.tail.0 as usize] = id;
        }
    }
    let mut cat = FinPresCategory {
        quiver: q.clone(),
        relations: r.clone(),
        bound,
        classes,
        class_lookup,
        hom,
        identities,
        table: BTreeMap::new(),
    };
    // Composition table on representatives; composites beyond the bound are
    // folded back by the length-reduction certificate.
    let mut table = BTreeMap::new();
    for (g_idx, g) in cat.classes.iter().enumerate() {
        for (f_idx, f) in cat.classes.iter().enumerate() {
            if f.head == g.tail {
                let composed =
                    compose_paths(&cat.quiver, &g.rep, &f.rep).expect("endpoints checked");
                let h = cat.class_of_path_internal(&composed);
                table.insert((ClassId(g_idx as u32), ClassId(f_idx as u32)), h);
            }
        }
    }
    cat.table = table;
    cat
}

impl FinPresCategory {
    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &PairRelationSet {
        &self.relations
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn class(&self, id: ClassId) -> &MorphismClass {
        &self.classes[id.0 as usize]
    }

    pub fn class_ids(&self) -> impl Iterator<Item = ClassId> {
        (0..self.classes.len() as u32).map(ClassId)
    }

    /// The identity morphism class at a vertex.
    pub fn identity_class(&self, v: VertexId) -> ClassId {
        self.identities[v.0 as usize]
    }

    /// Morphism classes from `i` to `j`, ordered by canonical representative.
    pub fn hom_set(&self, i: VertexId, j: VertexId) -> Result<&[ClassId], Error> {
        if i.0 as usize >= self.quiver.vertex_count() {
            return Err(Error::UnknownVertex(format!("#{}", i.0)));
        }
        if j.0 as usize >= self.quiver.vertex_count() {
            return Err(Error::UnknownVertex(format!("#{}", j.0)));
        }
        Ok(self.hom.get(&(i, j)).map(Vec::as_slice).unwrap_or(&[]))
    }

    /// Rewrites a path of arbitrary length into the bounded universe by
    /// repeatedly replacing its initial length-B window with that window's
    /// canonical representative (strictly shorter, by the stabilization
    /// certificate).
    pub fn reduce_path(&self, p: &Path) -> Path {
        let mut cur = p.clone();
        while cur.len() > self.bound {
            let arrows = cur.arrows();
            let window_arrows: Vec<ArrowId> = arrows[..self.bound].to_vec();
            let mid = self.quiver.head(window_arrows[self.bound - 1]);
            let window = Path::from_parts(cur.tail(), mid, window_arrows);
            let id = self.class_lookup[&window];
            let rep = self.classes[id.0 as usize].rep.clone();
            debug_assert!(rep.len() < self.bound);
            let mut new_arrows = rep.arrows().to_vec();
            new_arrows.extend_from_slice(&arrows[self.bound..]);
            cur = Path::from_parts(cur.tail(), cur.head(), new_arrows);
        }
        cur
    }

    fn class_of_path_internal(&self, p: &Path) -> ClassId {
        let reduced = self.reduce_path(p);
        self.class_lookup[&reduced]
    }

    /// The morphism class of a path (length-reducing first if needed).
    pub fn class_of_path(&self, p: &Path) -> Result<ClassId, Error> {
        let reduced = self.reduce_path(p);
        self.class_lookup.get(&reduced).copied().ok_or_else(|| {
            Error::Input(format!(
                "path {} is not in the saturated universe",
                self.quiver.display_path(p)
            ))
        })
    }

    /// True iff the parallel paths lie in the same morphism class.
    pub fn are_equivalent(&self, p: &Path, q: &Path) -> Result<bool, Error> {
        if !p.is_parallel_to(q) {
            return Err(Error::NotParallel(
                self.quiver.display_path(p),
                self.quiver.display_path(q),
            ));
        }
        Ok(self.class_of_path(p)? == self.class_of_path(q)?)
    }

    /// Composes morphism classes: `later ∘ earlier`.
    pub fn compose_classes(&self, later: ClassId, earlier: ClassId) -> Result<ClassId, Error> {
        self.table.get(&(later, earlier)).copied().ok_or_else(|| Error::Composition {
            later: self.quiver.display_path(&self.class(later).rep),
            earlier: self.quiver.display_path(&self.class(earlier).rep),
        })
    }

    pub fn display_class(&self, id: ClassId) -> String {
        self.quiver.display_path(&self.class(id).rep)
    }

    /// Factors a generator assignment through the quotient (the universal
    /// property): checks that every relation pair maps to equal morphisms in
    /// the target and returns the induced functor on morphism classes.
    pub fn factor_through_quotient(
        &self,
        target: &FinCategory,
        object_map: &BTreeMap<String, String>,
        arrow_map: &BTreeMap<String, String>,
    ) -> Result<QuotientFunctor, Error> {
        let mut objects = Vec::with_capacity(self.quiver.vertex_count());
        for v in self.quiver.vertex_ids() {
            let name = self.quiver.vertex_name(v);
            let img = object_map
                .get(name)
                .ok_or_else(|| Error::Input(format!("object map missing vertex `{name}`")))?;
            objects.push(target.object(img)?);
        }
        let mut arrows = Vec::with_capacity(self.quiver.arrow_count());
        for a in self.quiver.arrow_ids() {
            let name = self.quiver.arrow_name(a);
            let img = arrow_map
                .get(name)
                .ok_or_else(|| Error::Input(format!("arrow map missing arrow `{name}`")))?;
            let m = target.morphism(img)?;
            let (src, dst) = target.endpoints(m);
            if src != objects[self.quiver.tail(a).0 as usize]
                || dst != objects[self.quiver.head(a).0 as usize]
            {
                return Err(Error::Input(format!(
                    "arrow `{name}` maps to `{img}` with incompatible endpoints"
                )));
            }
            arrows.push(m);
        }
        let eval = |p: &Path| -> usize {
            let mut cur = target.identity(objects[p.tail().0 as usize]);
            for &a in p.arrows() {
                cur = target.compose(arrows[a.0 as usize], cur).expect("endpoints align");
            }
            cur
        };
        for rel in self.relations.iter() {
            let l = eval(&rel.lhs);
            let r = eval(&rel.rhs);
            if l != r {
                return Err(Error::Factorization {
                    lhs: self.quiver.display_path(&rel.lhs),
                    rhs: self.quiver.display_path(&rel.rhs),
                    lhs_image: target.morphism_name(l).to_string(),
                    rhs_image: target.morphism_name(r).to_string(),
                });
            }
        }
        let mut class_map = Vec::with_capacity(self.classes.len());
        for cls in &self.classes {
            let img = eval(&cls.rep);
            debug_assert!(cls.members.iter().all(|m| eval(m) == img));
            class_map.push(img);
        }
        Ok(QuotientFunctor { object_map: objects, class_map })
    }
}

/// The functor induced on the quotient by a relation-respecting assignment.
#[derive(Clone, Debug)]
pub struct QuotientFunctor {
    /// Target object per source vertex (dense order of the source quiver).
    pub object_map: Vec<usize>,
    /// Target morphism per source morphism class (dense class order).
    pub class_map: Vec<usize>,
}

/// An explicitly tabulated finite category: objects, morphisms, identities
/// and a composition table, validated for unit and associativity laws.
#[derive(Clone, Debug)]
pub struct FinCategory {
    objects: Vec<String>,
    morphisms: Vec<(String, usize, usize)>,
    object_lookup: HashMap<String, usize>,
    morphism_lookup: HashMap<String, usize>,
    identities: Vec<usize>,
    table: BTreeMap<(usize, usize), usize>,
}

impl FinCategory {
    /// `morphisms` are `(id, src object, dst object)`; `identities` names the
    /// identity morphism per object; `compositions` lists `((g, f), g∘f)` for
    /// every composable pair of morphisms (identity pairs may be omitted).
    pub fn new(
        objects: Vec<&str>,
        morphisms: Vec<(&str, &str, &str)>,
        identities: Vec<(&str, &str)>,
        compositions: Vec<((&str, &str), &str)>,
    ) -> Result<FinCategory, Error> {
        let object_lookup: HashMap<String, usize> =
            objects.iter().enumerate().map(|(i, o)| (o.to_string(), i)).collect();
        if object_lookup.len() != objects.len() {
            return Err(Error::Input("duplicate object id".to_string()));
        }
        let mut morphism_lookup = HashMap::new();
        let mut mors = Vec::new();
        for (id, s, d) in &morphisms {
            let si = *object_lookup
                .get(*s)
                .ok_or_else(|| Error::Input(format!("unknown object `{s}`")))?;
            let di = *object_lookup
                .get(*d)
                .ok_or_else(|| Error::Input(format!("unknown object `{d}`")))?;
            if morphism_lookup.insert(id.to_string(), mors.len()).is_some() {
                return Err(Error::Input(format!("duplicate morphism id `{id}`")));
            }
            mors.push((id.to_string(), si, di));
        }
        let mut ids = vec![usize::MAX; objects.len()];
        for (obj, m) in &identities {
            let oi = *object_lookup
                .get(*obj)
                .ok_or_else(|| Error::Input(format!("unknown object `{obj}`")))?;
            let mi = *morphism_lookup
                .get(*m)
                .ok_or_else(|| Error::Input(format!("unknown morphism `{m}`")))?;
            if mors[mi].1 != oi || mors[mi].2 != oi {
                return Err(Error::Input(format!(
                    "identity `{m}` is not an endomorphism of `{obj}`"
                )));
            }
            ids[oi] = mi;
        }
        if ids.contains(&usize::MAX) {
            return Err(Error::Input("missing identity morphism".to_string()));
        }
        let mut table = BTreeMap::new();
        for ((g, f), h) in &compositions {
            let gi = *morphism_lookup
                .get(*g)
                .ok_or_else(|| Error::Input(format!("unknown morphism `{g}`")))?;
            let fi = *morphism_lookup
                .get(*f)
                .ok_or_else(|| Error::Input(format!("unknown morphism `{f}`")))?;
            let hi = *morphism_lookup
                .get(*h)
                .ok_or_else(|| Error::Input(format!("unknown morphism `{h}`")))?;
            table.insert((gi, fi), hi);
        }
        // Identity composites are forced; fill any the caller omitted.
        for (mi, m) in mors.iter().enumerate() {
            table.entry((ids[m.2], mi)).or_insert(mi);
            table.entry((mi, ids[m.1])).or_insert(mi);
        }
        let cat = FinCategory {
            objects: objects.into_iter().map(String::from).collect(),
            morphisms: mors,
            object_lookup,
            morphism_lookup,
            identities: ids,
            table,
        };
        cat.validate()?;
        Ok(cat)
    }

    fn validate(&self) -> Result<(), Error> {
        for (gi, g) in self.morphisms.iter().enumerate() {
            for (fi, f) in self.morphisms.iter().enumerate() {
                if f.2 != g.1 {
                    if self.table.contains_key(&(gi, fi)) {
                        return Err(Error::Input(format!(
                            "composition table defines non-composable pair ({}, {})",
                            g.0, f.0
                        )));
                    }
                    continue;
                }
                let Some(&h) = self.table.get(&(gi, fi)) else {
                    return Err(Error::Input(format!(
                        "composition table missing composable pair ({}, {})",
                        g.0, f.0
                    )));
                };
                let hm = &self.morphisms[h];
                if hm.1 != f.1 || hm.2 != g.2 {
                    return Err(Error::Input(format!(
                        "composite of ({}, {}) has wrong endpoints",
                        g.0, f.0
                    )));
                }
            }
        }
        for (mi, m) in self.morphisms.iter().enumerate() {
            if self.table[&(self.identities[m.2], mi)] != mi
                || self.table[&(mi, self.identities[m.1])] != mi
            {
                return Err(Error::Input(format!("identity law fails at `{}`", m.0)));
            }
        }
        for (hi, h) in self.morphisms.iter().enumerate() {
            for (gi, g) in self.morphisms.iter().enumerate() {
                if g.2 != h.1 {
                    continue;
                }
                for (fi, f) in self.morphisms.iter().enumerate() {
                    if f.2 != g.1 {
                        continue;
                    }
                    let left = self.table[&(self.table[&(hi, gi)], fi)];
                    let right = self.table[&(hi, self.table[&(gi, fi)])];
                    if left != right {
                        return Err(Error::Input(format!(
                            "associativity fails at ({}, {}, {})",
                            h.0, g.0, f.0
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn object(&self, id: &str) -> Result<usize, Error> {
        self.object_lookup
            .get(id)
            .copied()
            .ok_or_else(|| Error::Input(format!("unknown object `{id}`")))
    }

    pub fn morphism(&self, id: &str) -> Result<usize, Error> {
        self.morphism_lookup
            .get(id)
            .copied()
            .ok_or_else(|| Error::Input(format!("unknown morphism `{id}`")))
    }

    pub fn object_name(&self, i: usize) -> &str {
        &self.objects[i]
    }

    pub fn morphism_name(&self, m: usize) -> &str {
        &self.morphisms[m].0
    }

    pub fn endpoints(&self, m: usize) -> (usize, usize) {
        (self.morphisms[m].1, self.morphisms[m].2)
    }

    pub fn identity(&self, obj: usize) -> usize {
        self.identities[obj]
    }

    pub fn is_identity(&self, m: usize) -> bool {
        self.identities.contains(&m)
    }

    pub fn compose(&self, later: usize, earlier: usize) -> Option<usize> {
        self.table.get(&(later, earlier)).copied()
    }

    pub fn hom(&self, i: usize, j: usize) -> Vec<usize> {
        (0..self.morphisms.len())
            .filter(|&m| self.morphisms[m].1 == i && self.morphisms[m].2 == j)
            .collect()
    }
}

/// Presents a tabulated finite category by a quiver with relations: one
/// vertex per object, one arrow per non-identity morphism, and the pairs
/// (g·f, [g∘f]) for composable non-identity arrows. Identity morphisms are
/// elected as trivial paths rather than extra loop arrows.
pub fn present_category(cat: &FinCategory) -> Result<(Quiver, PairRelationSet), Error> {
    let vertices: Vec<String> =
        (0..cat.object_count()).map(|i| cat.object_name(i).to_string()).collect();
    let mut arrows = Vec::new();
    for m in 0..cat.morphism_count() {
        if cat.is_identity(m) {
            continue;
        }
        let (s, d) = cat.endpoints(m);
        arrows.push((
            cat.morphism_name(m).to_string(),
            cat.object_name(s).to_string(),
            cat.object_name(d).to_string(),
        ));
    }
    let quiver = Quiver::new(vertices, arrows)?;
    let mut pairs = Vec::new();
    for g in 0..cat.morphism_count() {
        if cat.is_identity(g) {
            continue;
        }
        for f in 0..cat.morphism_count() {
            if cat.is_identity(f) || cat.endpoints(f).1 != cat.endpoints(g).0 {
                continue;
            }
            let gf = cat.compose(g, f).expect("validated table is total");
            let lhs = quiver.path_from_word(&[cat.morphism_name(g), cat.morphism_name(f)])?;
            let rhs = if cat.is_identity(gf) {
                quiver.trivial_path(quiver.vertex(cat.object_name(cat.endpoints(f).0))?)
            } else {
                quiver.path_from_word(&[cat.morphism_name(gf)])?
            };
            pairs.push((lhs, rhs));
        }
    }
    let relations = PairRelationSet::new(&quiver, pairs)?;
    Ok((quiver, relations))
}

#[cfg(test)]
pub(crate) fn corrupt_table_entry(cat: &mut FinPresCategory) -> bool {
    // Swap one non-forced table entry to a different class with the same
    // endpoints, if any exists; used by fault-injection tests.
    let keys: Vec<(ClassId, ClassId)> = cat.table.keys().copied().collect();
    for key in keys {
        let current = cat.table[&key];
        let cls = cat.class(current);
        let (t, h) = (cls.tail(), cls.head());
        let candidates: Vec<ClassId> =
            cat.hom[&(t, h)].iter().copied().filter(|&c| c != current).collect();
        if let Some(&other) = candidates.first() {
            cat.table.insert(key, other);
            return true;
        }
    }
    false
}
