//! Bound quiver algebras `KQ/I` with an explicit path basis and structure constants.
//!
//! The ideal is computed as a linear closure: starting from the relations, every
//! new independent element is multiplied on both sides by single arrows until
//! nothing new appears, working modulo paths longer than the current cutoff.
//! The cutoff grows until a whole path layer falls into the ideal.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::{Arc, OnceLock, Weak};

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::matrix::Matrix;
use crate::quiver::{Path, Quiver};

pub const DEFAULT_MAX_LENGTH: usize = 30;
const PATH_LIMIT: usize = 200_000;

/// Coordinates of an algebra element with respect to the path basis.
pub type Element = Vec<Scalar>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    terms: Vec<(Scalar, Path)>,
}

impl Relation {
    /// Terms must be parallel paths of length at least two.
    pub fn new(terms: Vec<(Scalar, Path)>) -> Result<Self> {
        if let Some((_, first)) = terms.first() {
            for (_, p) in &terms {
                if p.len() < 2 {
                    return Err(Error::InvalidRelation(format!(
                        "relation term of length {} (admissible relations need length >= 2)",
                        p.len()
                    )));
                }
                if p.source() != first.source() || p.target() != first.target() {
                    return Err(Error::InvalidRelation("relation terms are not parallel".into()));
                }
            }
        }
        Ok(Relation { terms })
    }

    /// A single path set to zero.
    pub fn zero_path(field: Field, path: Path) -> Result<Self> {
        Self::new(vec![(field.one(), path)])
    }

    /// `p - q`.
    pub fn commutativity(field: Field, p: Path, q: Path) -> Result<Self> {
        Self::new(vec![(field.one(), p), (field.from_i64(-1), q)])
    }

    pub fn terms(&self) -> &[(Scalar, Path)] {
        &self.terms
    }

    pub fn reversed(&self) -> Relation {
        Relation {
            terms: self
                .terms
                .iter()
                .map(|(c, p)| (c.clone(), p.reversed()))
                .collect(),
        }
    }

    pub fn display(&self, quiver: &Quiver) -> String {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(c, p)| format!("({c})*{}", p.display(quiver)))
            .collect();
        parts.join(" + ")
    }
}

pub struct BoundAlgebra {
    field: Field,
    quiver: Quiver,
    relations: Vec<Relation>,
    max_length: usize,
    basis: Vec<Path>,
    basis_index: HashMap<Path, usize>,
    /// basis indices per (source, target), row-major over vertices
    blocks: Vec<Vec<usize>>,
    nilpotency_degree: usize,
    normal_forms: HashMap<Path, Vec<(usize, Scalar)>>,
    products: Vec<Vec<(usize, Scalar)>>,
    opposite: OnceLock<Arc<BoundAlgebra>>,
    opposite_of: OnceLock<Weak<BoundAlgebra>>,
}

/// Nilpotency and basis bookkeeping for a built algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibilityReport {
    pub dimension: usize,
    pub nilpotency_degree: usize,
    /// `((source, target), count)` for every pair with a nonzero count.
    pub block_counts: Vec<((usize, usize), usize)>,
    pub relations_in_arrow_square: bool,
    pub relations_vanish: bool,
}

/// Sparse linear combination of paths.
type Combination = Vec<(Path, Scalar)>;

fn normalize(mut terms: Combination) -> Combination {
    terms.sort_by(|a, b| a.0.cmp(&b.0));
    let mut out: Combination = Vec::with_capacity(terms.len());
    for (p, c) in terms {
        match out.last_mut() {
            Some((q, d)) if *q == p => *d += &c,
            _ => out.push((p, c)),
        }
    }
    out.retain(|(_, c)| !c.is_zero());
    out
}

/// Incremental echelon basis of a subspace of one (source, target) block.
struct BlockSpan {
    rows: Vec<(usize, Vec<Scalar>)>,
}

impl BlockSpan {
    fn reduce(&self, mut v: Vec<Scalar>) -> Vec<Scalar> {
        for (pivot, row) in &self.rows {
            if !v[*pivot].is_zero() {
                let f = v[*pivot].clone();
                for (x, r) in v.iter_mut().zip(row) {
                    if !r.is_zero() {
                        *x = &*x - &(&f * r);
                    }
                }
            }
        }
        v
    }

    /// Adds `v` if independent; returns whether it was.
    fn insert(&mut self, v: Vec<Scalar>) -> bool {
        let v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].inverse().expect("nonzero");
        let v: Vec<Scalar> = v.iter().map(|x| x * &inv).collect();
        self.rows.push((p, v));
        true
    }

    fn contains(&self, v: Vec<Scalar>) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }
}

/// Paths of one (source, target) block ordered by decreasing (length, names),
/// so echelon pivots land on the largest paths.
struct Block {
    paths: Vec<Path>,
    column: HashMap<Path, usize>,
}

impl BoundAlgebra {
    pub fn build(
        field: Field,
        quiver: Quiver,
        relations: Vec<Relation>,
        max_length: usize,
    ) -> Result<Self> {
        for r in &relations {
            for (c, p) in r.terms() {
                if c.field() != field {
                    return Err(Error::InvalidRelation(format!(
                        "coefficient over {} in an algebra over {field}",
                        c.field()
                    )));
                }
                if p.arrows().iter().any(|&a| a >= quiver.arrows().len()) {
                    return Err(Error::InvalidRelation("path uses an unknown arrow".into()));
                }
            }
        }
        let name_rank = name_ranks(&quiver);
        let key = |p: &Path| -> (usize, Vec<usize>) {
            (p.len(), p.arrows().iter().map(|&a| name_rank[a]).collect())
        };
        let nv = quiver.vertex_count();
        let block_of = |p: &Path| (p.source() - 1) * nv + (p.target() - 1);

        for cutoff in 1..=max_length {
            let all_paths = enumerate_paths(&quiver, cutoff)?;
            let mut blocks: Vec<Block> = (0..nv * nv)
                .map(|_| Block {
                    paths: Vec::new(),
                    column: HashMap::new(),
                })
                .collect();
            for p in all_paths {
                blocks[block_of(&p)].paths.push(p);
            }
            for b in &mut blocks {
                b.paths.sort_by_key(|p| std::cmp::Reverse(key(p)));
                b.column = b.paths.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
            }
            let dense = |comb: &Combination, b: &Block| -> Vec<Scalar> {
                let mut v = vec![field.zero(); b.paths.len()];
                for (p, c) in comb {
                    v[b.column[p]] += c;
                }
                v
            };

            let mut spans: Vec<BlockSpan> = (0..nv * nv).map(|_| BlockSpan { rows: vec![] }).collect();
            let mut queue: VecDeque<Combination> = relations
                .iter()
                .map(|r| {
                    normalize(
                        r.terms()
                            .iter()
                            .filter(|(_, p)| p.len() <= cutoff)
                            .map(|(c, p)| (p.clone(), c.clone()))
                            .collect(),
                    )
                })
                .filter(|c| !c.is_empty())
                .collect();
            while let Some(g) = queue.pop_front() {
                let (s, t) = (g[0].0.source(), g[0].0.target());
                let bi = (s - 1) * nv + (t - 1);
                if !spans[bi].insert(dense(&g, &blocks[bi])) {
                    continue;
                }
                for a in quiver.arrows_into(s) {
                    let pre = Path::arrow(&quiver, a);
                    let prod: Combination = g
                        .iter()
                        .filter(|(p, _)| p.len() < cutoff)
                        .map(|(p, c)| (pre.then(p).expect("composable"), c.clone()))
                        .collect();
                    if !prod.is_empty() {
                        queue.push_back(normalize(prod));
                    }
                }
                for a in quiver.arrows_from(t) {
                    let prod: Combination = g
                        .iter()
                        .filter(|(p, _)| p.len() < cutoff)
                        .map(|(p, c)| (p.extend(&quiver, a), c.clone()))
                        .collect();
                    if !prod.is_empty() {
                        queue.push_back(normalize(prod));
                    }
                }
            }

            let top_layer_vanishes = blocks.iter().zip(&spans).all(|(b, span)| {
                b.paths.iter().filter(|p| p.len() == cutoff).all(|p| {
                    let mut v = vec![field.zero(); b.paths.len()];
                    v[b.column[p]] = field.one();
                    span.contains(v)
                })
            });
            if !top_layer_vanishes {
                continue;
            }
            return Ok(Self::assemble(
                field, quiver, relations, max_length, cutoff, blocks, spans, &key,
            ));
        }
        Err(Error::NotAdmissible(format!(
            "paths of length {max_length} are not all in the ideal"
        )))
    }

    #[allow(clippy::too_many_arguments)]
    fn assemble(
        field: Field,
        quiver: Quiver,
        relations: Vec<Relation>,
        max_length: usize,
        nilpotency_degree: usize,
        blocks: Vec<Block>,
        spans: Vec<BlockSpan>,
        key: &dyn Fn(&Path) -> (usize, Vec<usize>),
    ) -> Self {
        let nv = quiver.vertex_count();
        // Per block: reduced echelon form of the ideal span, free columns are the basis.
        let mut reduced = Vec::with_capacity(blocks.len());
        let mut basis: Vec<Path> = Vec::new();
        for (b, span) in blocks.iter().zip(&spans) {
            let rows: Vec<Vec<Scalar>> = span.rows.iter().map(|(_, r)| r.clone()).collect();
            let m = if rows.is_empty() {
                Matrix::zeros(field, 0, b.paths.len())
            } else {
                Matrix::from_rows(field, rows).expect("consistent rows")
            };
            let ech = m.rref();
            let mut pivot_row = vec![None; b.paths.len()];
            for (r, &c) in ech.pivots.iter().enumerate() {
                pivot_row[c] = Some(r);
            }
            for (c, p) in b.paths.iter().enumerate() {
                if pivot_row[c].is_none() {
                    basis.push(p.clone());
                }
            }
            reduced.push((ech.matrix, pivot_row));
        }
        basis.sort_by(|p, q| {
            (p.source(), p.target(), key(p)).cmp(&(q.source(), q.target(), key(q)))
        });
        let basis_index: HashMap<Path, usize> =
            basis.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let mut block_lists = vec![Vec::new(); nv * nv];
        for (i, p) in basis.iter().enumerate() {
            block_lists[(p.source() - 1) * nv + (p.target() - 1)].push(i);
        }

        let mut normal_forms = HashMap::new();
        for (b, (m, pivot_row)) in blocks.iter().zip(&reduced) {
            for (c, p) in b.paths.iter().enumerate() {
                let nf = match pivot_row[c] {
                    None => vec![(basis_index[p], field.one())],
                    Some(r) => (0..b.paths.len())
                        .filter(|&j| pivot_row[j].is_none() && !m.get(r, j).is_zero())
                        .map(|j| (basis_index[&b.paths[j]], -m.get(r, j)))
                        .collect(),
                };
                normal_forms.insert(p.clone(), nf);
            }
        }

        let dim = basis.len();
        let mut products = vec![Vec::new(); dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                if let Some(p) = basis[i].then(&basis[j]) {
                    if p.len() < nilpotency_degree {
                        products[i * dim + j] = normal_forms[&p].clone();
                    }
                }
            }
        }

        BoundAlgebra {
            field,
            quiver,
            relations,
            max_length,
            basis,
            basis_index,
            blocks: block_lists,
            nilpotency_degree,
            normal_forms,
            products,
            opposite: OnceLock::new(),
            opposite_of: OnceLock::new(),
        }
    }

    /// Path algebra of an acyclic quiver (no relations).
    pub fn path_algebra(field: Field, quiver: Quiver) -> Result<Self> {
        Self::build(field, quiver, Vec::new(), DEFAULT_MAX_LENGTH)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn vertex_count(&self) -> usize {
        self.quiver.vertex_count()
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn max_length(&self) -> usize {
        self.max_length
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn nilpotency_degree(&self) -> usize {
        self.nilpotency_degree
    }

    pub fn basis(&self) -> &[Path] {
        &self.basis
    }

    pub fn basis_index(&self, p: &Path) -> Option<usize> {
        self.basis_index.get(p).copied()
    }

    /// Basis indices of residues of paths from `s` to `t`, in basis order.
    pub fn basis_between(&self, s: usize, t: usize) -> &[usize] {
        let nv = self.vertex_count();
        &self.blocks[(s - 1) * nv + (t - 1)]
    }

    /// Same quiver, field and relations.
    pub fn same_presentation(&self, other: &BoundAlgebra) -> bool {
        std::ptr::eq(self, other)
            || (self.field == other.field
                && self.quiver == other.quiver
                && self.relations == other.relations)
    }

    pub fn zero_element(&self) -> Element {
        vec![self.field.zero(); self.dimension()]
    }

    pub fn basis_element(&self, i: usize) -> Element {
        let mut e = self.zero_element();
        e[i] = self.field.one();
        e
    }

    /// Residue of a path, in basis coordinates.
    pub fn reduce_path(&self, p: &Path) -> Element {
        let mut e = self.zero_element();
        if p.len() < self.nilpotency_degree {
            for (i, c) in &self.normal_forms[p] {
                e[*i] += c;
            }
        }
        e
    }

    /// Structure constants of `b_i · b_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.products[i * self.dimension() + j]
    }

    pub fn multiply(&self, x: &[Scalar], y: &[Scalar]) -> Element {
        let mut out = self.zero_element();
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (k, c) in self.basis_product(i, j) {
                    out[*k] += &(&ab * c);
                }
            }
        }
        out
    }

    /// Exhaustive associativity check of the structure constants.
    pub fn is_associative(&self) -> bool {
        table_is_associative(self.field, self.dimension(), |i, j| self.basis_product(i, j))
    }

    /// Algebra built from the reversed quiver and reversed relations.
    pub fn opposite(&self) -> Result<BoundAlgebra> {
        BoundAlgebra::build(
            self.field,
            self.quiver.opposite(),
            self.relations.iter().map(Relation::reversed).collect(),
            self.max_length,
        )
    }

    pub fn admissibility_report(&self) -> AdmissibilityReport {
        let nv = self.vertex_count();
        let mut block_counts = Vec::new();
        for s in 1..=nv {
            for t in 1..=nv {
                let c = self.basis_between(s, t).len();
                if c > 0 {
                    block_counts.push(((s, t), c));
                }
            }
        }
        let relations_vanish = self.relations.iter().all(|r| {
            let mut e = self.zero_element();
            for (c, p) in r.terms() {
                for (x, y) in e.iter_mut().zip(self.reduce_path(p)) {
                    *x += &(c * &y);
                }
            }
            e.iter().all(Scalar::is_zero)
        });
        AdmissibilityReport {
            dimension: self.dimension(),
            nilpotency_degree: self.nilpotency_degree,
            block_counts,
            relations_in_arrow_square: self
                .relations
                .iter()
                .all(|r| r.terms().iter().all(|(_, p)| p.len() >= 2)),
            relations_vanish,
        }
    }
}

/// Opposite algebra, shared: the opposite of the opposite is the original `Arc`
/// while that is still alive.
pub fn opposite_of(a: &Arc<BoundAlgebra>) -> Arc<BoundAlgebra> {
    if let Some(orig) = a.opposite_of.get().and_then(Weak::upgrade) {
        return orig;
    }
    a.opposite
        .get_or_init(|| {
            let op = a.opposite().expect("opposite of an admissible algebra is admissible");
            let _ = op.opposite_of.set(Arc::downgrade(a));
            Arc::new(op)
        })
        .clone()
}

/// Checks associativity of a sparse structure-constant table on all basis triples.
pub fn table_is_associative<'a>(
    field: Field,
    dim: usize,
    product: impl Fn(usize, usize) -> &'a [(usize, Scalar)],
) -> bool {
    let combine = |terms: &mut Vec<Scalar>, left: &[(usize, Scalar)], right_of: &dyn Fn(usize) -> &'a [(usize, Scalar)]| {
        for (m, c) in left {
            for (k, d) in right_of(*m) {
                terms[*k] += &(c * d);
            }
        }
    };
    for i in 0..dim {
        for j in 0..dim {
            let ij = product(i, j);
            for k in 0..dim {
                let mut lhs = vec![field.zero(); dim];
                combine(&mut lhs, ij, &|m| product(m, k));
                let mut rhs = vec![field.zero(); dim];
                combine(&mut rhs, product(j, k), &|m| product(i, m));
                if lhs != rhs {
                    return false;
                }
            }
        }
    }
    true
}

fn name_ranks(q: &Quiver) -> Vec<usize> {
    let mut order: Vec<usize> = (0..q.arrows().len()).collect();
    order.sort_by(|&a, &b| q.arrow(a).name.cmp(&q.arrow(b).name));
    let mut rank = vec![0; order.len()];
    for (r, a) in order.into_iter().enumerate() {
        rank[a] = r;
    }
    rank
}

fn enumerate_paths(q: &Quiver, max_len: usize) -> Result<Vec<Path>> {
    let mut all: Vec<Path> = (1..=q.vertex_count()).map(Path::stationary).collect();
    let mut frontier = all.clone();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for p in &frontier {
            for a in q.arrows_from(p.target()) {
                next.push(p.extend(q, a));
            }
        }
        all.extend(next.iter().cloned());
        if all.len() > PATH_LIMIT {
            return Err(Error::NotAdmissible(format!(
                "more than {PATH_LIMIT} paths of length <= {max_len}"
            )));
        }
        frontier = next;
    }
    Ok(all)
}

impl Clone for BoundAlgebra {
    fn clone(&self) -> Self {
        BoundAlgebra {
            field: self.field,
            quiver: self.quiver.clone(),
            relations: self.relations.clone(),
            max_length: self.max_length,
            basis: self.basis.clone(),
            basis_index: self.basis_index.clone(),
            blocks: self.blocks.clone(),
            nilpotency_degree: self.nilpotency_degree,
            normal_forms: self.normal_forms.clone(),
            products: self.products.clone(),
            opposite: OnceLock::new(),
            opposite_of: OnceLock::new(),
        }
    }
}

impl fmt::Debug for BoundAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BoundAlgebra")
            .field("field", &self.field)
            .field("vertices", &self.vertex_count())
            .field("arrows", &self.quiver.arrows().len())
            .field("relations", &self.relations.len())
            .field("dimension", &self.dimension())
            .field("nilpotency_degree", &self.nilpotency_degree)
            .finish()
    }
}
