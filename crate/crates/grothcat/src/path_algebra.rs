//! Linear combinations of parallel paths, linear-relation ideals, hom-space
//! bases and normal forms for kQ/⟨R⟩, and finite-dimensional algebras for
//! the A-coefficient variants AQ.
//!
//! Coefficients live in an exact field (ℚ or a prime field). Hom spaces are
//! handled by bounded enumeration: the ideal component at (x, y) is spanned
//! by all products (path)·(relation)·(path) whose terms fit within the
//! bound, echelonized against the global path order so that normal forms
//! are supported on the order-smallest paths. Finite-dimensionality is
//! certified by checking that every maximal-length path reduces to strictly
//! shorter ones; when the certificate fails the error is explicit.

use std::collections::BTreeMap;

use crate::linalg::RowEchelon;
use crate::quiver::{compose_paths, enumerate_paths, Path, Quiver, VertexId};
use crate::scalar::{Field, Scalar};
use crate::Error;

/// A k-linear combination of parallel paths; empty terms is the zero element.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct LinComb {
    tail: VertexId,
    head: VertexId,
    terms: BTreeMap<Path, Scalar>,
}

impl LinComb {
    pub fn zero(tail: VertexId, head: VertexId) -> LinComb {
        LinComb { tail, head, terms: BTreeMap::new() }
    }

    pub fn from_path(path: Path, field: Field) -> LinComb {
        LinComb::term(path, field.one())
    }

    pub fn term(path: Path, coeff: Scalar) -> LinComb {
        let mut lc = LinComb::zero(path.tail(), path.head());
        if !coeff.is_zero() {
            lc.terms.insert(path, coeff);
        }
        lc
    }

    pub fn tail(&self) -> VertexId {
        self.tail
    }

    pub fn head(&self) -> VertexId {
        self.head
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Path, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn max_term_len(&self) -> usize {
        self.terms.keys().map(Path::len).max().unwrap_or(0)
    }

    pub fn coeff(&self, p: &Path) -> Option<&Scalar> {
        self.terms.get(p)
    }

    pub(crate) fn add_term(&mut self, path: Path, coeff: Scalar) {
        debug_assert!(path.tail() == self.tail && path.head() == self.head);
        match self.terms.entry(path) {
            std::collections::btree_map::Entry::Vacant(e) => {
                if !coeff.is_zero() {
                    e.insert(coeff);
                }
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add(&coeff);
                if sum.is_zero() {
                    e.remove();
                } else {
                    e.insert(sum);
                }
            }
        }
    }

    /// Renders with the overall sign normalized so that the leading
    /// (largest-path) term is positive: the convention for printing
    /// relations, where v and -v generate the same ideal.
    pub fn display_normalized(&self, q: &Quiver) -> String {
        match self.terms.iter().next_back() {
            Some((_, c)) if crate::scalar::is_negative(c) => {
                lin_scale(&c.field().integer(-1), self).display(q)
            }
            _ => self.display(q),
        }
    }

    /// Renders with terms in descending path order, e.g. `ba-dc`.
    pub fn display(&self, q: &Quiver) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (path, coeff) in self.terms.iter().rev() {
            let neg = crate::scalar::is_negative(coeff);
            let abs = if neg { coeff.neg() } else { coeff.clone() };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push(if neg { '-' } else { '+' });
            }
            if !abs.is_one() {
                out.push_str(&abs.to_string());
                out.push('*');
            }
            out.push_str(&q.display_path(path));
        }
        out
    }
}

/// Adds two parallel linear combinations.
pub fn lin_add(q: &Quiver, x: &LinComb, y: &LinComb) -> Result<LinComb, Error> {
    if x.tail != y.tail || x.head != y.head {
        return Err(Error::NotParallel(x.display(q), y.display(q)));
    }
    let mut out = x.clone();
    for (p, c) in y.terms() {
        out.add_term(p.clone(), c.clone());
    }
    Ok(out)
}

/// Scales a linear combination.
pub fn lin_scale(c: &Scalar, x: &LinComb) -> LinComb {
    let mut out = LinComb::zero(x.tail, x.head);
    if c.is_zero() {
        return out;
    }
    for (p, k) in x.terms() {
        out.terms.insert(p.clone(), k.mul(c));
    }
    out
}

/// Multiplies (composes) two linear combinations: `later ∘ earlier`,
/// bilinear in each argument.
pub fn lin_mul(q: &Quiver, later: &LinComb, earlier: &LinComb) -> Result<LinComb, Error> {
    if later.tail != earlier.head {
        return Err(Error::Composition { later: later.display(q), earlier: earlier.display(q) });
    }
    let mut out = LinComb::zero(earlier.tail, later.head);
    for (p, c) in later.terms() {
        for (r, d) in earlier.terms() {
            let composed = compose_paths(q, p, r).expect("endpoints checked");
            out.add_term(composed, c.mul(d));
        }
    }
    Ok(out)
}

/// Linear relations: homogeneous nonzero elements of kQ generating the
/// two-sided ideal to quotient by.
#[derive(Clone, Debug, Default)]
pub struct LinearRelationSet {
    relations: Vec<LinComb>,
}

impl LinearRelationSet {
    pub fn empty() -> Self {
        LinearRelationSet { relations: Vec::new() }
    }

    pub fn new(relations: Vec<LinComb>) -> Result<Self, Error> {
        for r in &relations {
            if r.is_zero() {
                return Err(Error::Input("zero relation in relation set".to_string()));
            }
        }
        Ok(LinearRelationSet { relations })
    }

    pub fn iter(&self) -> impl Iterator<Item = &LinComb> {
        self.relations.iter()
    }

    pub fn len(&self) -> usize {
        self.relations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.relations.is_empty()
    }

    pub fn max_term_len(&self) -> usize {
        self.relations.iter().map(LinComb::max_term_len).max().unwrap_or(0)
    }
}

/// The spanning set of the ideal component ⟨R⟩(x, y) within the bound: all
/// products (path y'→y)·r·(path x→x') whose every term has length ≤ bound,
/// deduplicated and deterministically ordered.
pub fn ideal_component(
    q: &Quiver,
    r: &LinearRelationSet,
    x: VertexId,
    y: VertexId,
    bound: usize,
    field: Field,
) -> Result<Vec<LinComb>, Error> {
    let mut seen = std::collections::BTreeSet::new();
    for rel in r.iter() {
        let m = rel.max_term_len();
        if m > bound {
            continue;
        }
        let pre_paths = enumerate_paths(q, x, rel.tail(), bound - m)?;
        for pre in &pre_paths {
            let room = bound - m - pre.len();
            let post_paths = enumerate_paths(q, rel.head(), y, room)?;
            for post in &post_paths {
                let mid = lin_mul(q, rel, &LinComb::from_path(pre.clone(), field))?;
                let prod = lin_mul(q, &LinComb::from_path(post.clone(), field), &mid)?;
                if !prod.is_zero() {
                    seen.insert(prod);
                }
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// An echelonized basis of (kQ/⟨R⟩)(x, y) on the bounded path universe,
/// together with the reduction map onto normal forms.
#[derive(Clone, Debug)]
pub struct HomBasis {
    source: VertexId,
    target: VertexId,
    bound: usize,
    field: Field,
    /// All paths x→y of length ≤ bound, ascending global order.
    paths: Vec<Path>,
    path_index: BTreeMap<Path, usize>,
    /// RREF of the ideal component over columns in descending path order
    /// (column j is paths[n-1-j]), so pivots eliminate the largest paths.
    echelon: RowEchelon,
    /// Non-pivot paths in ascending order: the normal-form monomials.
    basis_paths: Vec<Path>,
}

/// Computes the hom basis of (kQ/⟨R⟩)(x, y) within the bound. Fails with a
/// possibly-infinite-dimensional error when some normal form would have
/// maximal length (the finite-dimensionality certificate).
pub fn hom_basis(
    q: &Quiver,
    r: &LinearRelationSet,
    x: VertexId,
    y: VertexId,
    bound: usize,
    field: Field,
) -> Result<HomBasis, Error> {
    let paths = enumerate_paths(q, x, y, bound)?;
    let n = paths.len();
    let path_index: BTreeMap<Path, usize> =
        paths.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let spanning = ideal_component(q, r, x, y, bound, field)?;
    let mut echelon = RowEchelon::new(field, n);
    for s in &spanning {
        let mut row = vec![field.zero(); n];
        for (p, c) in s.terms() {
            row[n - 1 - path_index[p]] = c.clone();
        }
        echelon.insert(row);
    }
    let mut basis_paths = Vec::new();
    for (i, p) in paths.iter().enumerate() {
        if !echelon.is_pivot(n - 1 - i) {
            basis_paths.push(p.clone());
        }
    }
    if bound > 0 && basis_paths.iter().any(|p| p.len() == bound) {
        return Err(Error::PossiblyInfinite {
            src: q.vertex_name(x).to_string(),
            dst: q.vertex_name(y).to_string(),
            bound,
        });
    }
    Ok(HomBasis { source: x, target: y, bound, field, paths, path_index, echelon, basis_paths })
}

impl HomBasis {
    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn target(&self) -> VertexId {
        self.target
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.basis_paths.len()
    }

    /// Rank of the ideal component on the bounded universe.
    pub fn ideal_rank(&self) -> usize {
        self.echelon.rank()
    }

    pub fn path_count(&self) -> usize {
        self.paths.len()
    }

    pub fn basis_paths(&self) -> &[Path] {
        &self.basis_paths
    }

    pub fn basis_element(&self, i: usize) -> LinComb {
        LinComb::from_path(self.basis_paths[i].clone(), self.field)
    }

    /// Reduces a homogeneous element to its coordinates in the normal-form
    /// basis. Terms beyond the bound are an error.
    pub fn reduce(&self, q: &Quiver, v: &LinComb) -> Result<Vec<Scalar>, Error> {
        if v.tail() != self.source || v.head() != self.target {
            return Err(Error::NotParallel(
                v.display(q),
                format!("hom({}, {})", q.vertex_name(self.source), q.vertex_name(self.target)),
            ));
        }
        let n = self.paths.len();
        let mut vec = vec![self.field.zero(); n];
        for (p, c) in v.terms() {
            let Some(&i) = self.path_index.get(p) else {
                return Err(Error::OutOfBound { path: q.display_path(p), bound: self.bound });
            };
            vec[n - 1 - i] = c.clone();
        }
        self.echelon.reduce_vec(&mut vec);
        Ok(self.basis_paths.iter().map(|p| vec[n - 1 - self.path_index[p]].clone()).collect())
    }

    /// Re-expands coordinates into the normal-form linear combination.
    pub fn expand(&self, coords: &[Scalar]) -> LinComb {
        assert_eq!(coords.len(), self.basis_paths.len());
        let mut out = LinComb::zero(self.source, self.target);
        for (p, c) in self.basis_paths.iter().zip(coords) {
            if !c.is_zero() {
                out.terms.insert(p.clone(), c.clone());
            }
        }
        out
    }

    /// The normal form of an in-bound element.
    pub fn normal_form(&self, q: &Quiver, v: &LinComb) -> Result<LinComb, Error> {
        Ok(self.expand(&self.reduce(q, v)?))
    }

    /// Rows of the ideal echelon re-expanded as elements of the ideal
    /// component (used to perturb lifts).
    pub fn ideal_elements(&self) -> Vec<LinComb> {
        let n = self.paths.len();
        self.echelon
            .rows()
            .iter()
            .map(|row| {
                let mut out = LinComb::zero(self.source, self.target);
                for (j, c) in row.iter().enumerate() {
                    if !c.is_zero() {
                        out.terms.insert(self.paths[n - 1 - j].clone(), c.clone());
                    }
                }
                out
            })
            .collect()
    }
}

/// A finite-dimensional associative unital algebra given by structure
/// constants; associativity and the unit laws are validated at construction.
#[derive(Clone, Debug)]
pub struct Algebra {
    name: String,
    labels: Vec<String>,
    field: Field,
    /// structure[i][j] = coordinates of basis_i · basis_j.
    structure: Vec<Vec<Vec<Scalar>>>,
    unit: Vec<Scalar>,
}

impl Algebra {
    pub fn new(
        name: &str,
        labels: Vec<String>,
        unit: Vec<Scalar>,
        structure: Vec<Vec<Vec<Scalar>>>,
        field: Field,
    ) -> Result<Algebra, Error> {
        let n = labels.len();
        if unit.len() != n || structure.len() != n {
            return Err(Error::Input("algebra dimension mismatch".to_string()));
        }
        for row in &structure {
            if row.len() != n || row.iter().any(|v| v.len() != n) {
                return Err(Error::Input("algebra structure constants malformed".to_string()));
            }
        }
        let alg = Algebra { name: name.to_string(), labels, field, structure, unit };
        for i in 0..n {
            let e = alg.basis_vec(i);
            if alg.mul(&alg.unit, &e)? != e || alg.mul(&e, &alg.unit)? != e {
                return Err(Error::Input(format!(
                    "algebra `{}`: unit law fails at basis element {}",
                    alg.name, alg.labels[i]
                )));
            }
            for j in 0..n {
                for k in 0..n {
                    let (a, b, c) = (alg.basis_vec(i), alg.basis_vec(j), alg.basis_vec(k));
                    let left = alg.mul(&alg.mul(&a, &b)?, &c)?;
                    let right = alg.mul(&a, &alg.mul(&b, &c)?)?;
                    if left != right {
                        return Err(Error::Input(format!(
                            "algebra `{}`: associativity fails at ({}, {}, {})",
                            alg.name, alg.labels[i], alg.labels[j], alg.labels[k]
                        )));
                    }
                }
            }
        }
        Ok(alg)
    }

    /// The base field itself as a one-dimensional algebra.
    pub fn field_algebra(field: Field) -> Algebra {
        Algebra::new(
            "k",
            vec!["1".to_string()],
            vec![field.one()],
            vec![vec![vec![field.one()]]],
            field,
        )
        .expect("field algebra is valid")
    }

    /// Dual numbers k[t]/(t²).
    pub fn dual_numbers(field: Field) -> Algebra {
        let (o, z) = (field.one(), field.zero());
        Algebra::new(
            "k[t]/(t^2)",
            vec!["1".to_string(), "t".to_string()],
            vec![o.clone(), z.clone()],
            vec![
                vec![vec![o.clone(), z.clone()], vec![z.clone(), o.clone()]],
                vec![vec![z.clone(), o.clone()], vec![z.clone(), z.clone()]],
            ],
            field,
        )
        .expect("dual numbers are valid")
    }

    /// Upper-triangular 2×2 matrices over k, basis (e11, e12, e22).
    pub fn upper_triangular2(field: Field) -> Algebra {
        let (o, z) = (field.one(), field.zero());
        let zero3 = vec![z.clone(), z.clone(), z.clone()];
        let e = |i: usize| {
            let mut v = zero3.clone();
            v[i] = o.clone();
            v
        };
        Algebra::new(
            "T2(k)",
            vec!["e11".to_string(), "e12".to_string(), "e22".to_string()],
            vec![o.clone(), z.clone(), o.clone()],
            vec![
                vec![e(0), e(1), zero3.clone()],
                vec![zero3.clone(), zero3.clone(), e(1)],
                vec![zero3.clone(), zero3.clone(), e(2)],
            ],
            field,
        )
        .expect("upper triangular algebra is valid")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn zero_vec(&self) -> Vec<Scalar> {
        vec![self.field.zero(); self.dim()]
    }

    pub fn basis_vec(&self, i: usize) -> Vec<Scalar> {
        let mut v = self.zero_vec();
        v[i] = self.field.one();
        v
    }

    /// Bilinear product through the structure constants.
    pub fn mul(&self, u: &[Scalar], v: &[Scalar]) -> Result<Vec<Scalar>, Error> {
        if u.len() != self.dim() || v.len() != self.dim() {
            return Err(Error::Input(format!(
                "algebra `{}`: coordinate vector dimension mismatch",
                self.name
            )));
        }
        let mut out = self.zero_vec();
        for (i, a) in u.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in v.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a.mul(b);
                for (k, c) in self.structure[i][j].iter().enumerate() {
                    if !c.is_zero() {
                        out[k] = out[k].add(&ab.mul(c));
                    }
                }
            }
        }
        Ok(out)
    }
}

/// The quotient of the free A-module on `s` by the differences of an
/// equivalence relation: basis indexed by classes, with the projection and a
/// kernel-membership test (class sums vanish).
#[derive(Clone, Debug)]
pub struct QuotientModule {
    elements: Vec<String>,
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
    algebra_dim: usize,
    field: Field,
}

/// Builds S/E for an explicit equivalence relation `e` (given as the full
/// set of related pairs over `s`); rejects non-equivalences.
pub fn quotient_free_module(
    s: &[String],
    e: &[(String, String)],
    algebra: &Algebra,
) -> Result<QuotientModule, Error> {
    let index: BTreeMap<&str, usize> = s.iter().enumerate().map(|(i, x)| (x.as_str(), i)).collect();
    if index.len() != s.len() {
        return Err(Error::Input("duplicate element in S".to_string()));
    }
    let mut rel = vec![vec![false; s.len()]; s.len()];
    for (a, b) in e {
        let ia =
            *index.get(a.as_str()).ok_or_else(|| Error::Input(format!("unknown element `{a}`")))?;
        let ib =
            *index.get(b.as_str()).ok_or_else(|| Error::Input(format!("unknown element `{b}`")))?;
        rel[ia][ib] = true;
    }
    for i in 0..s.len() {
        if !rel[i][i] {
            return Err(Error::Input(format!("relation is not reflexive at `{}`", s[i])));
        }
        for j in 0..s.len() {
            if rel[i][j] && !rel[j][i] {
                return Err(Error::Input(format!(
                    "relation is not symmetric at (`{}`, `{}`)",
                    s[i], s[j]
                )));
            }
            for k in 0..s.len() {
                if rel[i][j] && rel[j][k] && !rel[i][k] {
                    return Err(Error::Input(format!(
                        "relation is not transitive at (`{}`, `{}`, `{}`)",
                        s[i], s[j], s[k]
                    )));
                }
            }
        }
    }
    let mut class_of = vec![usize::MAX; s.len()];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for i in 0..s.len() {
        if class_of[i] != usize::MAX {
            continue;
        }
        let members: Vec<usize> = (0..s.len()).filter(|&j| rel[i][j]).collect();
        for &m in &members {
            class_of[m] = classes.len();
        }
        classes.push(members);
    }
    Ok(QuotientModule {
        elements: s.to_vec(),
        class_of,
        classes,
        algebra_dim: algebra.dim(),
        field: algebra.field(),
    })
}

impl QuotientModule {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn element_count(&self) -> usize {
        self.elements.len()
    }

    pub fn class_of(&self, i: usize) -> usize {
        self.class_of[i]
    }

    /// Class labels: the first member of each class.
    pub fn basis_labels(&self) -> Vec<&str> {
        self.classes.iter().map(|c| self.elements[c[0]].as_str()).collect()
    }

    /// Projection ε: sums A-coordinates within each class.
    pub fn project(&self, vector: &[Vec<Scalar>]) -> Result<Vec<Vec<Scalar>>, Error> {
        if vector.len() != self.elements.len() || vector.iter().any(|v| v.len() != self.algebra_dim)
        {
            return Err(Error::Input("module vector dimension mismatch".to_string()));
        }
        let mut out = vec![vec![self.field.zero(); self.algebra_dim]; self.classes.len()];
        for (i, coords) in vector.iter().enumerate() {
            let c = self.class_of[i];
            for (k, x) in coords.iter().enumerate() {
                out[c][k] = out[c][k].add(x);
            }
        }
        Ok(out)
    }

    /// Membership in Σ A(g−h): every class sum is zero.
    pub fn kernel_member(&self, vector: &[Vec<Scalar>]) -> Result<bool, Error> {
        Ok(self.project(vector)?.iter().all(|class| class.iter().all(Scalar::is_zero)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::Quiver;

    fn a3() -> Quiver {
        Quiver::new(vec!["1", "2", "3"], vec![("α", "1", "2"), ("β", "2", "3")]).unwrap()
    }

    fn square() -> (Quiver, LinearRelationSet) {
        // Commutative square: u: 1->2, v: 2->4, p: 1->3, q: 3->4, vu = qp.
        let q = Quiver::new(
            vec!["1", "2", "3", "4"],
            vec![("u", "1", "2"), ("v", "2", "4"), ("p", "1", "3"), ("q", "3", "4")],
        )
        .unwrap();
        let vu = q.path_from_word(&["v", "u"]).unwrap();
        let qp = q.path_from_word(&["q", "p"]).unwrap();
        let rel = lin_add(
            &q,
            &LinComb::from_path(vu, Field::Rational),
            &lin_scale(&Field::Rational.integer(-1), &LinComb::from_path(qp, Field::Rational)),
        )
        .unwrap();
        let rels = LinearRelationSet::new(vec![rel]).unwrap();
        (q, rels)
    }

    #[test]
    fn lin_ops_basics() {
        let q = a3();
        let f = Field::Rational;
        let alpha = LinComb::from_path(q.path_from_word(&["α"]).unwrap(), f);
        let beta = LinComb::from_path(q.path_from_word(&["β"]).unwrap(), f);
        let ba = lin_mul(&q, &beta, &alpha).unwrap();
        assert_eq!(ba.num_terms(), 1);
        assert_eq!(ba.display(&q), "βα");
        // x + (-1)x = 0
        let zero = lin_add(&q, &alpha, &lin_scale(&f.integer(-1), &alpha)).unwrap();
        assert!(zero.is_zero());
        // bilinearity over a parallel pair
        let q2 = Quiver::new(
            vec!["1", "2", "3"],
            vec![("α", "1", "2"), ("α'", "1", "2"), ("β", "2", "3")],
        )
        .unwrap();
        let a1 = LinComb::from_path(q2.path_from_word(&["α"]).unwrap(), f);
        let a2 = LinComb::from_path(q2.path_from_word(&["α'"]).unwrap(), f);
        let b = LinComb::from_path(q2.path_from_word(&["β"]).unwrap(), f);
        let sum =
            lin_add(&q2, &lin_scale(&f.integer(2), &a1), &lin_scale(&f.integer(3), &a2)).unwrap();
        let prod = lin_mul(&q2, &b, &sum).unwrap();
        assert_eq!(prod.display(&q2), "3*βα'+2*βα");
        assert!(matches!(lin_mul(&q, &alpha, &alpha), Err(Error::Composition { .. })));
        assert!(matches!(lin_add(&q, &alpha, &beta), Err(Error::NotParallel(..))));
    }

    #[test]
    fn ideal_component_examples() {
        let q = a3();
        let empty = LinearRelationSet::empty();
        let x = q.vertex("1").unwrap();
        let y = q.vertex("3").unwrap();
        assert!(ideal_component(&q, &empty, x, y, 4, Field::Rational).unwrap().is_empty());

        // Parallel pair with no composable extensions.
        let q2 = Quiver::new(vec!["1", "2"], vec![("α", "1", "2"), ("α'", "1", "2")]).unwrap();
        let f = Field::Rational;
        let rel = lin_add(
            &q2,
            &LinComb::from_path(q2.path_from_word(&["α"]).unwrap(), f),
            &lin_scale(&f.integer(-1), &LinComb::from_path(q2.path_from_word(&["α'"]).unwrap(), f)),
        )
        .unwrap();
        let rels = LinearRelationSet::new(vec![rel.clone()]).unwrap();
        let comp =
            ideal_component(&q2, &rels, q2.vertex("1").unwrap(), q2.vertex("2").unwrap(), 2, f)
                .unwrap();
        assert_eq!(comp, vec![rel]);
    }

    #[test]
    fn hom_basis_free_a3() {
        let q = a3();
        let b = hom_basis(
            &q,
            &LinearRelationSet::empty(),
            q.vertex("1").unwrap(),
            q.vertex("3").unwrap(),
            4,
            Field::Rational,
        )
        .unwrap();
        assert_eq!(b.dim(), 1);
        assert_eq!(q.display_path(&b.basis_paths()[0]), "βα");
    }

    #[test]
    fn hom_basis_commutative_square() {
        let (q, rels) = square();
        let b = hom_basis(
            &q,
            &rels,
            q.vertex("1").unwrap(),
            q.vertex("4").unwrap(),
            4,
            Field::Rational,
        )
        .unwrap();
        assert_eq!(b.dim(), 1);
        assert_eq!(b.ideal_rank(), 1);
        assert_eq!(b.path_count(), 2);
        // reduce(upper) = reduce(lower)
        let vu = LinComb::from_path(q.path_from_word(&["v", "u"]).unwrap(), Field::Rational);
        let qp = LinComb::from_path(q.path_from_word(&["q", "p"]).unwrap(), Field::Rational);
        assert_eq!(b.reduce(&q, &vu).unwrap(), b.reduce(&q, &qp).unwrap());
        // reduce of the generating relation is zero
        for r in rels.iter() {
            assert!(b.reduce(&q, r).unwrap().iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn hom_basis_identity_component() {
        let q = a3();
        let x = q.vertex("1").unwrap();
        let b = hom_basis(&q, &LinearRelationSet::empty(), x, x, 4, Field::Rational).unwrap();
        assert_eq!(b.dim(), 1);
        assert!(b.basis_paths()[0].is_trivial());
    }

    #[test]
    fn hom_basis_detects_possibly_infinite() {
        let q = Quiver::new(vec!["1"], vec![("g", "1", "1")]).unwrap();
        let v = q.vertex("1").unwrap();
        let err = hom_basis(&q, &LinearRelationSet::empty(), v, v, 6, Field::Rational).unwrap_err();
        assert!(matches!(err, Error::PossiblyInfinite { bound: 6, .. }));
    }

    #[test]
    fn basis_plus_ideal_rank_exhausts_paths() {
        let (q, rels) = square();
        for x in q.vertex_ids() {
            for y in q.vertex_ids() {
                let b = hom_basis(&q, &rels, x, y, 4, Field::Rational).unwrap();
                assert_eq!(b.dim() + b.ideal_rank(), b.path_count());
            }
        }
    }

    #[test]
    fn reduce_is_idempotent_and_linear_on_basis() {
        let (q, rels) = square();
        let b = hom_basis(
            &q,
            &rels,
            q.vertex("1").unwrap(),
            q.vertex("4").unwrap(),
            4,
            Field::Rational,
        )
        .unwrap();
        let elem = b.basis_element(0);
        let coords = b.reduce(&q, &elem).unwrap();
        assert_eq!(coords.len(), 1);
        assert!(coords[0].is_one());
        let nf = b.normal_form(&q, &elem).unwrap();
        assert_eq!(b.normal_form(&q, &nf).unwrap(), nf);
    }

    #[test]
    fn reduce_rejects_out_of_bound_paths() {
        let q = a3();
        let b = hom_basis(
            &q,
            &LinearRelationSet::empty(),
            q.vertex("1").unwrap(),
            q.vertex("3").unwrap(),
            1,
            Field::Rational,
        )
        .unwrap();
        // bound 1 has no paths 1->3, so dim 0; a length-2 path is out of bound.
        let ba = LinComb::from_path(q.path_from_word(&["β", "α"]).unwrap(), Field::Rational);
        assert!(matches!(b.reduce(&q, &ba), Err(Error::OutOfBound { .. })));
    }

    #[test]
    fn algebra_validation_and_multiplication() {
        let f = Field::Rational;
        let k = Algebra::field_algebra(f);
        let v = vec![f.integer(5)];
        assert_eq!(k.mul(k.unit(), &v).unwrap(), v);

        let dual = Algebra::dual_numbers(f);
        let t = dual.basis_vec(1);
        assert_eq!(dual.mul(&t, &t).unwrap(), dual.zero_vec());
        assert_eq!(dual.mul(dual.unit(), &t).unwrap(), t);

        let t2 = Algebra::upper_triangular2(f);
        let e11 = t2.basis_vec(0);
        let e12 = t2.basis_vec(1);
        let e22 = t2.basis_vec(2);
        assert_eq!(t2.mul(&e11, &e12).unwrap(), e12);
        assert_eq!(t2.mul(&e12, &e22).unwrap(), e12);
        assert_eq!(t2.mul(&e12, &e12).unwrap(), t2.zero_vec());
        assert_eq!(t2.mul(&e22, &e11).unwrap(), t2.zero_vec());
        assert!(t2.mul(&e11, &[f.one()]).is_err());

        // A table breaking the unit law is rejected: 1·x = 0 here.
        let bad = Algebra::new(
            "bad",
            vec!["1".to_string(), "x".to_string()],
            vec![f.one(), f.zero()],
            vec![
                vec![vec![f.one(), f.zero()], vec![f.zero(), f.zero()]],
                vec![vec![f.zero(), f.one()], vec![f.zero(), f.zero()]],
            ],
            f,
        );
        assert!(bad.is_err());
    }

    #[test]
    fn quotient_module_examples() {
        let f = Field::Rational;
        let k = Algebra::field_algebra(f);
        let s: Vec<String> = ["a", "b"].iter().map(|x| x.to_string()).collect();
        // Identity relation: projection is a bijection.
        let e_id = vec![("a".to_string(), "a".to_string()), ("b".to_string(), "b".to_string())];
        let m = quotient_free_module(&s, &e_id, &k).unwrap();
        assert_eq!(m.class_count(), 2);
        // Glue a ~ b: rank-1 quotient, a - b in the kernel.
        let e_glue = vec![
            ("a".to_string(), "a".to_string()),
            ("b".to_string(), "b".to_string()),
            ("a".to_string(), "b".to_string()),
            ("b".to_string(), "a".to_string()),
        ];
        let m = quotient_free_module(&s, &e_glue, &k).unwrap();
        assert_eq!(m.class_count(), 1);
        let diff = vec![vec![f.one()], vec![f.integer(-1)]];
        assert!(m.kernel_member(&diff).unwrap());
        let not = vec![vec![f.one()], vec![f.one()]];
        assert!(!m.kernel_member(&not).unwrap());
        // Non-equivalence is rejected.
        let bad = vec![("a".to_string(), "b".to_string())];
        assert!(quotient_free_module(&s, &bad, &k).is_err());
    }
}
