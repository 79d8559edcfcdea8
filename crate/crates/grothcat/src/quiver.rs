//! Quivers, paths, path composition and DOT export.
//!
//! A quiver is a finite directed multigraph; loops and parallel arrows are
//! allowed. Paths are stored in diagrammatic order (the first arrow applied
//! first) but composition and display follow the right-to-left convention, so
//! the composite of `a: 1 -> 2` followed by `b: 2 -> 3` reads `ba`.
//!
//! Vertices and arrows are identified by opaque strings; internally both are
//! re-sorted by identifier so that dense index order coincides with the
//! lexicographic order of identifiers. The global path order used everywhere
//! downstream (normal forms, canonical representatives, golden output) is
//! (length, lexicographic on the arrow-id sequence).

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use crate::Error;

/// Dense index of a vertex within its quiver.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct VertexId(pub(crate) u32);

impl VertexId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Dense index of an arrow within its quiver.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ArrowId(pub(crate) u32);

impl ArrowId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Debug)]
struct Arrow {
    id: String,
    tail: VertexId,
    head: VertexId,
}

/// A finite directed multigraph.
#[derive(Clone, Debug)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    vertex_lookup: HashMap<String, VertexId>,
    arrow_lookup: HashMap<String, ArrowId>,
    out_arrows: Vec<Vec<ArrowId>>,
    in_arrows: Vec<Vec<ArrowId>>,
}

impl Quiver {
    /// Builds a quiver from vertex ids and `(arrow id, tail, head)` triples.
    pub fn new<S: Into<String>>(vertices: Vec<S>, arrows: Vec<(S, S, S)>) -> Result<Quiver, Error> {
        let mut vertex_names: Vec<String> = vertices.into_iter().map(Into::into).collect();
        vertex_names.sort();
        let mut vertex_lookup = HashMap::new();
        for (i, v) in vertex_names.iter().enumerate() {
            if vertex_lookup.insert(v.clone(), VertexId(i as u32)).is_some() {
                return Err(Error::Input(format!("duplicate vertex id `{v}`")));
            }
        }
        let mut named: Vec<(String, String, String)> =
            arrows.into_iter().map(|(id, t, h)| (id.into(), t.into(), h.into())).collect();
        named.sort_by(|a, b| a.0.cmp(&b.0));
        let mut arrow_lookup = HashMap::new();
        let mut arrow_list = Vec::with_capacity(named.len());
        for (i, (id, t, h)) in named.into_iter().enumerate() {
            let tail = *vertex_lookup.get(&t).ok_or_else(|| Error::UnknownVertex(t.clone()))?;
            let head = *vertex_lookup.get(&h).ok_or_else(|| Error::UnknownVertex(h.clone()))?;
            if arrow_lookup.insert(id.clone(), ArrowId(i as u32)).is_some() {
                return Err(Error::Input(format!("duplicate arrow id `{id}`")));
            }
            arrow_list.push(Arrow { id, tail, head });
        }
        let mut out_arrows = vec![Vec::new(); vertex_names.len()];
        let mut in_arrows = vec![Vec::new(); vertex_names.len()];
        for (i, a) in arrow_list.iter().enumerate() {
            out_arrows[a.tail.0 as usize].push(ArrowId(i as u32));
            in_arrows[a.head.0 as usize].push(ArrowId(i as u32));
        }
        Ok(Quiver {
            vertices: vertex_names,
            arrows: arrow_list,
            vertex_lookup,
            arrow_lookup,
            out_arrows,
            in_arrows,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> {
        (0..self.vertices.len() as u32).map(VertexId)
    }

    pub fn arrow_ids(&self) -> impl Iterator<Item = ArrowId> {
        (0..self.arrows.len() as u32).map(ArrowId)
    }

    pub fn vertex(&self, id: &str) -> Result<VertexId, Error> {
        self.vertex_lookup.get(id).copied().ok_or_else(|| Error::UnknownVertex(id.to_string()))
    }

    pub fn arrow(&self, id: &str) -> Result<ArrowId, Error> {
        self.arrow_lookup.get(id).copied().ok_or_else(|| Error::UnknownArrow(id.to_string()))
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v.0 as usize]
    }

    pub fn arrow_name(&self, a: ArrowId) -> &str {
        &self.arrows[a.0 as usize].id
    }

    pub fn tail(&self, a: ArrowId) -> VertexId {
        self.arrows[a.0 as usize].tail
    }

    pub fn head(&self, a: ArrowId) -> VertexId {
        self.arrows[a.0 as usize].head
    }

    pub fn arrows_from(&self, v: VertexId) -> &[ArrowId] {
        &self.out_arrows[v.0 as usize]
    }

    pub fn arrows_into(&self, v: VertexId) -> &[ArrowId] {
        &self.in_arrows[v.0 as usize]
    }

    pub fn arrows_between(&self, tail: VertexId, head: VertexId) -> Vec<ArrowId> {
        self.arrows_from(tail).iter().copied().filter(|&a| self.head(a) == head).collect()
    }

    fn check_vertex(&self, v: VertexId) -> Result<(), Error> {
        if (v.0 as usize) < self.vertices.len() {
            Ok(())
        } else {
            Err(Error::UnknownVertex(format!("#{}", v.0)))
        }
    }

    pub fn trivial_path(&self, v: VertexId) -> Path {
        Path { tail: v, head: v, arrows: Vec::new() }
    }

    pub fn arrow_path(&self, a: ArrowId) -> Path {
        Path { tail: self.tail(a), head: self.head(a), arrows: vec![a] }
    }

    /// Builds a path from arrow ids written in composition order, i.e. the
    /// word as it is written: `["b", "a"]` is the composite `b∘a`.
    pub fn path_from_word(&self, word: &[&str]) -> Result<Path, Error> {
        let mut arrows = Vec::with_capacity(word.len());
        for id in word.iter().rev() {
            arrows.push(self.arrow(id)?);
        }
        if arrows.is_empty() {
            return Err(Error::Input(
                "empty word: build trivial paths with trivial_path".to_string(),
            ));
        }
        let tail = self.tail(arrows[0]);
        let mut cur = self.head(arrows[0]);
        for &a in &arrows[1..] {
            if self.tail(a) != cur {
                return Err(Error::Composition {
                    later: self.arrow_name(a).to_string(),
                    earlier: self.vertex_name(cur).to_string(),
                });
            }
            cur = self.head(a);
        }
        Ok(Path { tail, head: cur, arrows })
    }

    /// Renders a path in composition order, collapsing runs into powers:
    /// `g g g` displays as `g^3`, the trivial path at x as `e_x`.
    pub fn display_path(&self, p: &Path) -> String {
        if p.is_trivial() {
            return format!("e_{}", self.vertex_name(p.tail));
        }
        let mut out = String::new();
        let mut i = p.arrows.len();
        while i > 0 {
            let a = p.arrows[i - 1];
            let mut run = 1;
            while i > run && p.arrows[i - 1 - run] == a {
                run += 1;
            }
            out.push_str(self.arrow_name(a));
            if run > 1 {
                let _ = write!(out, "^{run}");
            }
            i -= run;
        }
        out
    }
}

/// A composable sequence of arrows; the empty sequence is the trivial path.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Path {
    tail: VertexId,
    head: VertexId,
    /// Diagrammatic order: `arrows[0]` is applied first.
    arrows: Vec<ArrowId>,
}

#[allow(clippy::len_without_is_empty)] // the domain name is is_trivial
impl Path {
    pub fn tail(&self) -> VertexId {
        self.tail
    }

    pub fn head(&self) -> VertexId {
        self.head
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn arrows(&self) -> &[ArrowId] {
        &self.arrows
    }

    pub fn is_parallel_to(&self, other: &Path) -> bool {
        self.tail == other.tail && self.head == other.head
    }

    pub(crate) fn from_parts(tail: VertexId, head: VertexId, arrows: Vec<ArrowId>) -> Path {
        Path { tail, head, arrows }
    }

    /// Appends one arrow after this path (post-composition), without checks.
    pub(crate) fn extended(&self, q: &Quiver, a: ArrowId) -> Path {
        debug_assert_eq!(q.tail(a), self.head);
        let mut arrows = self.arrows.clone();
        arrows.push(a);
        Path { tail: self.tail, head: q.head(a), arrows }
    }

    /// Prepends one arrow before this path (pre-composition), without checks.
    pub(crate) fn prefixed(&self, q: &Quiver, a: ArrowId) -> Path {
        debug_assert_eq!(q.head(a), self.tail);
        let mut arrows = Vec::with_capacity(self.arrows.len() + 1);
        arrows.push(a);
        arrows.extend_from_slice(&self.arrows);
        Path { tail: q.tail(a), head: self.head, arrows }
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Path {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // Global path order: (length, lex on arrow ids, endpoints).
        self.arrows
            .len()
            .cmp(&other.arrows.len())
            .then_with(|| self.arrows.cmp(&other.arrows))
            .then_with(|| self.tail.cmp(&other.tail))
            .then_with(|| self.head.cmp(&other.head))
    }
}

/// Composes `later ∘ earlier`; fails unless `tail(later) = head(earlier)`.
pub fn compose_paths(q: &Quiver, later: &Path, earlier: &Path) -> Result<Path, Error> {
    if later.tail != earlier.head {
        return Err(Error::Composition {
            later: q.display_path(later),
            earlier: q.display_path(earlier),
        });
    }
    let mut arrows = Vec::with_capacity(earlier.arrows.len() + later.arrows.len());
    arrows.extend_from_slice(&earlier.arrows);
    arrows.extend_from_slice(&later.arrows);
    Ok(Path { tail: earlier.tail, head: later.head, arrows })
}

/// All paths `from -> to` of length at most `max_len`, in the global path
/// order; duplicate-free by construction.
pub fn enumerate_paths(
    q: &Quiver,
    from: VertexId,
    to: VertexId,
    max_len: usize,
) -> Result<Vec<Path>, Error> {
    q.check_vertex(from)?;
    q.check_vertex(to)?;
    let mut result = Vec::new();
    // Level sets of paths starting at `from`; each level is generated in
    // lexicographic order, so the concatenation is globally ordered.
    let mut level = vec![q.trivial_path(from)];
    if from == to {
        result.push(level[0].clone());
    }
    for _ in 0..max_len {
        let mut next = Vec::new();
        for p in &level {
            for &a in q.arrows_from(p.head) {
                let ext = p.extended(q, a);
                if ext.head == to {
                    result.push(ext.clone());
                }
                next.push(ext);
            }
        }
        if next.is_empty() {
            break;
        }
        level = next;
    }
    Ok(result)
}

/// Rendering options for [`export_dot`].
#[derive(Clone, Debug, Default)]
pub struct DotOptions {
    pub graph_name: Option<String>,
    /// Label overrides keyed by vertex id.
    pub vertex_labels: BTreeMap<String, String>,
    /// Label overrides keyed by arrow id.
    pub arrow_labels: BTreeMap<String, String>,
    /// Arrow ids to render with a dashed style.
    pub dashed_arrows: BTreeSet<String>,
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Emits the quiver as a Graphviz DOT digraph. Output is a pure function of
/// the inputs: vertices and arrows are listed in identifier order.
pub fn export_dot(q: &Quiver, opts: &DotOptions) -> String {
    let name = opts.graph_name.as_deref().unwrap_or("Q");
    let mut out = String::new();
    let _ = writeln!(out, "digraph \"{}\" {{", dot_escape(name));
    for v in q.vertex_ids() {
        let id = q.vertex_name(v);
        let label = opts.vertex_labels.get(id).map(String::as_str).unwrap_or(id);
        let _ = writeln!(out, "  \"{}\" [label=\"{}\"];", dot_escape(id), dot_escape(label));
    }
    for a in q.arrow_ids() {
        let id = q.arrow_name(a);
        let label = opts.arrow_labels.get(id).map(String::as_str).unwrap_or(id);
        let style = if opts.dashed_arrows.contains(id) { ", style=dashed" } else { "" };
        let _ = writeln!(
            out,
            "  \"{}\" -> \"{}\" [label=\"{}\"{}];",
            dot_escape(q.vertex_name(q.tail(a))),
            dot_escape(q.vertex_name(q.head(a))),
            dot_escape(label),
            style
        );
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a3() -> Quiver {
        Quiver::new(vec!["1", "2", "3"], vec![("α", "1", "2"), ("β", "2", "3")]).unwrap()
    }

    fn loop_quiver() -> Quiver {
        Quiver::new(vec!["1"], vec![("g", "1", "1")]).unwrap()
    }

    /// The five-vertex quiver of the running diamond example:
    /// a: 1->2, b: 2->5, c: 1->3, d: 3->5, e: 1->4, f: 4->5.
    pub(crate) fn diamond() -> Quiver {
        Quiver::new(
            vec!["1", "2", "3", "4", "5"],
            vec![
                ("a", "1", "2"),
                ("b", "2", "5"),
                ("c", "1", "3"),
                ("d", "3", "5"),
                ("e", "1", "4"),
                ("f", "4", "5"),
            ],
        )
        .unwrap()
    }

    #[test]
    fn compose_with_identity_is_neutral() {
        let q = a3();
        let p = q.path_from_word(&["β", "α"]).unwrap();
        let e3 = q.trivial_path(q.vertex("3").unwrap());
        let e1 = q.trivial_path(q.vertex("1").unwrap());
        assert_eq!(compose_paths(&q, &e3, &p).unwrap(), p);
        assert_eq!(compose_paths(&q, &p, &e1).unwrap(), p);
    }

    #[test]
    fn compose_concatenates() {
        let q = a3();
        let alpha = q.path_from_word(&["α"]).unwrap();
        let beta = q.path_from_word(&["β"]).unwrap();
        let ba = compose_paths(&q, &beta, &alpha).unwrap();
        assert_eq!(ba.len(), 2);
        assert_eq!(q.vertex_name(ba.tail()), "1");
        assert_eq!(q.vertex_name(ba.head()), "3");
        assert_eq!(q.display_path(&ba), "βα");
    }

    #[test]
    fn compose_powers_on_loop() {
        let q = loop_quiver();
        let g = q.path_from_word(&["g"]).unwrap();
        let gg = compose_paths(&q, &g, &g).unwrap();
        let ggg = compose_paths(&q, &g, &gg).unwrap();
        assert_eq!(ggg.len(), 3);
        assert_eq!(q.display_path(&ggg), "g^3");
    }

    #[test]
    fn compose_mismatch_errors() {
        let q = a3();
        let alpha = q.path_from_word(&["α"]).unwrap();
        assert!(matches!(compose_paths(&q, &alpha, &alpha), Err(Error::Composition { .. })));
    }

    #[test]
    fn enumerate_loop_paths() {
        let q = loop_quiver();
        let v = q.vertex("1").unwrap();
        let paths = enumerate_paths(&q, v, v, 3).unwrap();
        let shown: Vec<String> = paths.iter().map(|p| q.display_path(p)).collect();
        assert_eq!(shown, vec!["e_1", "g", "g^2", "g^3"]);
    }

    #[test]
    fn enumerate_diamond_paths() {
        let q = diamond();
        let paths = enumerate_paths(&q, q.vertex("1").unwrap(), q.vertex("5").unwrap(), 2).unwrap();
        let shown: Vec<String> = paths.iter().map(|p| q.display_path(p)).collect();
        assert_eq!(shown, vec!["ba", "dc", "fe"]);
    }

    #[test]
    fn enumerate_zero_bound_between_distinct_vertices() {
        let q = a3();
        let paths = enumerate_paths(&q, q.vertex("1").unwrap(), q.vertex("2").unwrap(), 0).unwrap();
        assert!(paths.is_empty());
    }

    #[test]
    fn enumerate_unknown_vertex_errors() {
        let q = a3();
        assert!(q.vertex("9").is_err());
        assert!(enumerate_paths(&q, VertexId(9), VertexId(0), 1).is_err());
    }

    #[test]
    fn enumeration_is_duplicate_free_and_ordered() {
        let q = diamond();
        for from in q.vertex_ids() {
            for to in q.vertex_ids() {
                let paths = enumerate_paths(&q, from, to, 4).unwrap();
                for w in paths.windows(2) {
                    assert!(w[0] < w[1]);
                }
            }
        }
    }

    #[test]
    fn dot_output_shapes() {
        let single = Quiver::new(vec!["x"], vec![]).unwrap();
        let dot = export_dot(&single, &DotOptions::default());
        assert!(dot.contains("\"x\""));
        assert!(!dot.contains("->"));

        let empty = Quiver::new(Vec::<&str>::new(), vec![]).unwrap();
        let dot = export_dot(&empty, &DotOptions::default());
        assert_eq!(dot, "digraph \"Q\" {\n}\n");
    }

    #[test]
    fn dot_is_deterministic() {
        let q = diamond();
        let opts = DotOptions::default();
        assert_eq!(export_dot(&q, &opts), export_dot(&q, &opts));
    }

    #[test]
    fn dot_label_overrides_and_escaping() {
        let q = Quiver::new(vec!["v\"1"], vec![("a", "v\"1", "v\"1")]).unwrap();
        let mut opts = DotOptions::default();
        opts.vertex_labels.insert("v\"1".to_string(), "x".to_string());
        opts.arrow_labels.insert("a".to_string(), "loop".to_string());
        let dot = export_dot(&q, &opts);
        assert!(dot.contains("\"v\\\"1\" [label=\"x\"]"));
        assert!(dot.contains("[label=\"loop\"]"));
    }
}
