//! Finite-dimensional right modules as quiver representations.
//!
//! A path `[a, b]` acts on a representation by `M_b · M_a`.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::algebra::{opposite_of, BoundAlgebra};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::{column_basis, complement_indices, Matrix};
use crate::quiver::Path;

/// Class of a module in the Grothendieck group: multiplicities of the simples,
/// indexed by vertex (entry `v - 1` belongs to vertex `v`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DimVector(pub Vec<usize>);

impl DimVector {
    pub fn zeros(n: usize) -> Self {
        DimVector(vec![0; n])
    }

    /// Multiplicity at vertex `v` (1-based).
    pub fn at(&self, v: usize) -> usize {
        self.0[v - 1]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }
}

impl std::ops::Add for &DimVector {
    type Output = DimVector;
    fn add(self, rhs: &DimVector) -> DimVector {
        assert_eq!(self.len(), rhs.len());
        DimVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Clone)]
pub struct Representation {
    algebra: Arc<BoundAlgebra>,
    dims: Vec<usize>,
    maps: Vec<Matrix>,
}

/// A relation (or long path) that does not act as zero.
#[derive(Clone, Debug)]
pub struct Violation {
    pub description: String,
    pub matrix: Matrix,
}

#[derive(Clone, Debug, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl Representation {
    /// Checks shapes and fields; relations are checked by [`Representation::validate`].
    pub fn new(algebra: Arc<BoundAlgebra>, dims: Vec<usize>, maps: Vec<Matrix>) -> Result<Self> {
        let q = algebra.quiver();
        if dims.len() != q.vertex_count() {
            return Err(Error::DimensionMismatch(format!(
                "{} dimensions for {} vertices",
                dims.len(),
                q.vertex_count()
            )));
        }
        if maps.len() != q.arrows().len() {
            return Err(Error::DimensionMismatch(format!(
                "{} matrices for {} arrows",
                maps.len(),
                q.arrows().len()
            )));
        }
        for (a, m) in q.arrows().iter().zip(&maps) {
            let want = (dims[a.target - 1], dims[a.source - 1]);
            if m.shape() != want {
                return Err(Error::DimensionMismatch(format!(
                    "arrow {} needs a {}x{} matrix, got {}x{}",
                    a.name, want.0, want.1, m.rows(), m.cols()
                )));
            }
            if m.field() != algebra.field() {
                return Err(Error::DimensionMismatch(format!(
                    "arrow {} matrix is over {}, algebra over {}",
                    a.name,
                    m.field(),
                    algebra.field()
                )));
            }
        }
        Ok(Representation {
            algebra,
            dims,
            maps,
        })
    }

    /// Matrices by arrow name; omitted arrows act as zero.
    pub fn from_named(
        algebra: Arc<BoundAlgebra>,
        dims: Vec<usize>,
        named: HashMap<String, Matrix>,
    ) -> Result<Self> {
        let q = algebra.quiver();
        if dims.len() != q.vertex_count() {
            return Err(Error::DimensionMismatch(format!(
                "{} dimensions for {} vertices",
                dims.len(),
                q.vertex_count()
            )));
        }
        for name in named.keys() {
            if q.arrow_index(name).is_none() {
                return Err(Error::InvalidRepresentation(format!("unknown arrow {name}")));
            }
        }
        let field = algebra.field();
        let maps = q
            .arrows()
            .iter()
            .map(|a| {
                named.get(&a.name).cloned().unwrap_or_else(|| {
                    Matrix::zeros(field, dims[a.target - 1], dims[a.source - 1])
                })
            })
            .collect();
        Self::new(algebra, dims, maps)
    }

    pub fn zero(algebra: Arc<BoundAlgebra>) -> Self {
        let dims = vec![0; algebra.vertex_count()];
        Self::from_named(algebra, dims, HashMap::new()).expect("zero module is well formed")
    }

    pub fn algebra(&self) -> &Arc<BoundAlgebra> {
        &self.algebra
    }

    pub fn field(&self) -> Field {
        self.algebra.field()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Dimension at vertex `v` (1-based).
    pub fn dim_at(&self, v: usize) -> usize {
        self.dims[v - 1]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    pub fn map(&self, arrow: usize) -> &Matrix {
        &self.maps[arrow]
    }

    pub fn map_by_name(&self, name: &str) -> Option<&Matrix> {
        self.algebra.quiver().arrow_index(name).map(|i| &self.maps[i])
    }

    pub fn same_algebra(&self, other: &Representation) -> bool {
        Arc::ptr_eq(&self.algebra, &other.algebra)
            || self.algebra.same_presentation(&other.algebra)
    }

    pub(crate) fn check_same_algebra(&self, other: &Representation) -> Result<()> {
        if self.same_algebra(other) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    /// Linear map by which `path` acts.
    pub fn path_matrix(&self, path: &Path) -> Matrix {
        let mut m = Matrix::identity(self.field(), self.dim_at(path.source()));
        for &a in path.arrows() {
            m = self.maps[a].mul(&m);
        }
        m
    }

    /// Evaluates every relation, and checks that paths of the nilpotency length act as zero.
    pub fn validate(&self) -> ValidationReport {
        let q = self.algebra.quiver();
        let mut violations = Vec::new();
        for (idx, r) in self.algebra.relations().iter().enumerate() {
            let Some((_, first)) = r.terms().first() else {
                continue;
            };
            let mut acc = Matrix::zeros(
                self.field(),
                self.dim_at(first.target()),
                self.dim_at(first.source()),
            );
            for (c, p) in r.terms() {
                acc = acc.add(&self.path_matrix(p).scale(c));
            }
            if !acc.is_zero() {
                violations.push(Violation {
                    description: format!("relation #{idx}: {}", r.display(q)),
                    matrix: acc,
                });
            }
        }
        // Paths of length L (the nilpotency degree) must vanish too.
        let field = self.field();
        let mut layer: Vec<(Path, Matrix)> = (1..=q.vertex_count())
            .map(|v| (Path::stationary(v), Matrix::identity(field, self.dim_at(v))))
            .collect();
        for _ in 0..self.algebra.nilpotency_degree() {
            let mut next = Vec::new();
            for (p, m) in &layer {
                for a in q.arrows_from(p.target()) {
                    let nm = self.maps[a].mul(m);
                    if !nm.is_zero() {
                        next.push((p.extend(q, a), nm));
                    }
                }
            }
            layer = next;
        }
        if let Some((p, m)) = layer.into_iter().next() {
            violations.push(Violation {
                description: format!("path {} lies in the ideal but acts nonzero", p.display(q)),
                matrix: m,
            });
        }
        ValidationReport { violations }
    }

    pub fn dim_vector(&self) -> DimVector {
        DimVector(self.dims.clone())
    }

    pub fn direct_sum(&self, other: &Representation) -> Result<Representation> {
        self.check_same_algebra(other)?;
        let dims = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let maps = self
            .maps
            .iter()
            .zip(&other.maps)
            .map(|(a, b)| a.block_diag(b))
            .collect();
        Representation::new(self.algebra.clone(), dims, maps)
    }

    /// Radical: at each vertex, the sum of the images of the incoming arrows.
    pub fn radical(&self) -> Subspace {
        let q = self.algebra.quiver();
        let field = self.field();
        let generators = (1..=q.vertex_count())
            .map(|v| {
                let mut span = Matrix::zeros(field, self.dim_at(v), 0);
                for a in q.arrows_into(v) {
                    span = span.hstack(&self.maps[a]);
                }
                column_basis(&span)
            })
            .collect();
        Subspace {
            ambient: self.clone(),
            generators,
        }
    }

    /// Class of `M / rad M`.
    pub fn top(&self) -> DimVector {
        let rad = self.radical();
        DimVector(
            self.dims
                .iter()
                .zip(rad.generators.iter())
                .map(|(d, g)| d - g.cols())
                .collect(),
        )
    }

    /// Socle: at each vertex, the common kernel of the outgoing arrows.
    pub fn socle_subspace(&self) -> Subspace {
        let q = self.algebra.quiver();
        let field = self.field();
        let generators = (1..=q.vertex_count())
            .map(|v| {
                let d = self.dim_at(v);
                let mut stacked = Matrix::zeros(field, 0, d);
                for a in q.arrows_from(v) {
                    stacked = stacked.vstack(&self.maps[a]);
                }
                Matrix::from_columns(field, d, &stacked.nullspace_basis())
            })
            .collect();
        Subspace {
            ambient: self.clone(),
            generators,
        }
    }

    pub fn socle(&self) -> DimVector {
        self.socle_subspace().dim_vector()
    }

    /// `D M = Hom_K(M, K)` as a module over the opposite algebra.
    pub fn dual(&self) -> Representation {
        Representation {
            algebra: opposite_of(&self.algebra),
            dims: self.dims.clone(),
            maps: self.maps.iter().map(Matrix::transpose).collect(),
        }
    }

    /// Regards a module over a quotient `B` of `target` (arrows matched by name and
    /// endpoints) as a `target`-module; arrows absent from `B` act as zero.
    pub fn inflate(&self, target: &Arc<BoundAlgebra>) -> Result<Representation> {
        let src = self.algebra.quiver();
        let tq = target.quiver();
        if src.vertex_count() != tq.vertex_count() {
            return Err(Error::InvalidRepresentation(
                "inflation needs matching vertex sets".into(),
            ));
        }
        if target.field() != self.field() {
            return Err(Error::InvalidRepresentation("inflation across fields".into()));
        }
        let mut named = HashMap::new();
        for (a, m) in src.arrows().iter().zip(&self.maps) {
            let ti = tq.arrow_index(&a.name).ok_or_else(|| {
                Error::InvalidRepresentation(format!("arrow {} missing from target", a.name))
            })?;
            let ta = tq.arrow(ti);
            if (ta.source, ta.target) != (a.source, a.target) {
                return Err(Error::InvalidRepresentation(format!(
                    "arrow {} has different endpoints in the target",
                    a.name
                )));
            }
            named.insert(a.name.clone(), m.clone());
        }
        Representation::from_named(target.clone(), self.dims.clone(), named)
    }
}

impl fmt::Debug for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q = self.algebra.quiver();
        let mut d = f.debug_struct("Representation");
        d.field("dims", &self.dims);
        for (a, m) in q.arrows().iter().zip(&self.maps) {
            if !m.is_zero() {
                d.field(&a.name, m);
            }
        }
        d.finish()
    }
}

/// A subrepresentation, given by a column basis at every vertex.
#[derive(Clone, Debug)]
pub struct Subspace {
    ambient: Representation,
    generators: Vec<Matrix>,
}

impl Subspace {
    /// Fails unless the spans are closed under every arrow.
    pub fn new(ambient: &Representation, generators: Vec<Matrix>) -> Result<Self> {
        if generators.len() != ambient.dims.len() {
            return Err(Error::DimensionMismatch("one generator block per vertex".into()));
        }
        let generators: Vec<Matrix> = generators
            .iter()
            .zip(&ambient.dims)
            .map(|(g, &d)| {
                if g.rows() != d {
                    Err(Error::DimensionMismatch(format!(
                        "generators with {} rows in a {d}-dimensional space",
                        g.rows()
                    )))
                } else {
                    Ok(column_basis(g))
                }
            })
            .collect::<Result<_>>()?;
        let sub = Subspace {
            ambient: ambient.clone(),
            generators,
        };
        for (i, a) in ambient.algebra.quiver().arrows().iter().enumerate() {
            let img = ambient.maps[i].mul(&sub.generators[a.source - 1]);
            if sub.generators[a.target - 1].solve_matrix(&img)?.is_none() {
                return Err(Error::InvalidRepresentation(format!(
                    "subspace is not closed under arrow {}",
                    a.name
                )));
            }
        }
        Ok(sub)
    }

    pub fn ambient(&self) -> &Representation {
        &self.ambient
    }

    /// Column basis at vertex `v` (1-based).
    pub fn generators(&self, v: usize) -> &Matrix {
        &self.generators[v - 1]
    }

    pub fn dim_vector(&self) -> DimVector {
        DimVector(self.generators.iter().map(Matrix::cols).collect())
    }

    /// The subspace as a module in its own right, with coordinates in the chosen bases.
    pub fn to_representation(&self) -> Representation {
        let amb = &self.ambient;
        let maps = amb
            .algebra
            .quiver()
            .arrows()
            .iter()
            .enumerate()
            .map(|(i, a)| {
                restrict(
                    &amb.maps[i],
                    &self.generators[a.source - 1],
                    &self.generators[a.target - 1],
                )
            })
            .collect();
        Representation::new(amb.algebra.clone(), self.dim_vector().0, maps)
            .expect("restriction preserves shapes")
    }

    /// Quotient module together with the projection at every vertex.
    pub fn quotient(&self) -> (Representation, Vec<Matrix>) {
        let amb = &self.ambient;
        let field = amb.field();
        let mut projections = Vec::new();
        let mut sections = Vec::new();
        for (g, &d) in self.generators.iter().zip(&amb.dims) {
            let comp = complement_indices(field, d, g);
            let mut full = g.clone();
            let mut section = Matrix::zeros(field, d, comp.len());
            for (j, &i) in comp.iter().enumerate() {
                section.set(i, j, field.one());
            }
            full = full.hstack(&section);
            let inv = full.invert().expect("basis extended to the whole space");
            projections.push(inv.submatrix(g.cols(), d, 0, d));
            sections.push(section);
        }
        let maps = amb
            .algebra
            .quiver()
            .arrows()
            .iter()
            .enumerate()
            .map(|(i, a)| {
                projections[a.target - 1]
                    .mul(&amb.maps[i])
                    .mul(&sections[a.source - 1])
            })
            .collect();
        let dims = sections.iter().map(Matrix::cols).collect();
        let q = Representation::new(amb.algebra.clone(), dims, maps)
            .expect("quotient preserves shapes");
        (q, projections)
    }
}

/// Matrix of `map` restricted to `span(source_basis) -> span(target_basis)`.
pub(crate) fn restrict(map: &Matrix, source_basis: &Matrix, target_basis: &Matrix) -> Matrix {
    let img = map.mul(source_basis);
    target_basis
        .solve_matrix(&img)
        .expect("shapes agree")
        .expect("image lies in the target span")
}

pub fn simple(algebra: &Arc<BoundAlgebra>, v: usize) -> Result<Representation> {
    check_vertex(algebra, v)?;
    let mut dims = vec![0; algebra.vertex_count()];
    dims[v - 1] = 1;
    Representation::from_named(algebra.clone(), dims, HashMap::new())
}

/// `e_v A`: basis the residues of paths starting at `v`, arrows acting by post-composition.
pub fn projective(algebra: &Arc<BoundAlgebra>, v: usize) -> Result<Representation> {
    check_vertex(algebra, v)?;
    let q = algebra.quiver();
    let field = algebra.field();
    let dims: Vec<usize> = (1..=q.vertex_count())
        .map(|w| algebra.basis_between(v, w).len())
        .collect();
    let maps = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, a)| {
            let src = algebra.basis_between(v, a.source);
            let tgt = algebra.basis_between(v, a.target);
            let mut m = Matrix::zeros(field, tgt.len(), src.len());
            for (col, &b) in src.iter().enumerate() {
                let moved = algebra.reduce_path(&algebra.basis()[b].extend(q, ai));
                for (row, &t) in tgt.iter().enumerate() {
                    m.set(row, col, moved[t].clone());
                }
            }
            m
        })
        .collect();
    Representation::new(algebra.clone(), dims, maps)
}

/// `D(A e_v)`, computed as the dual of the opposite algebra's projective at `v`.
pub fn injective(algebra: &Arc<BoundAlgebra>, v: usize) -> Result<Representation> {
    check_vertex(algebra, v)?;
    let op = opposite_of(algebra);
    Ok(projective(&op, v)?.dual())
}

pub fn direct_sum_all(algebra: &Arc<BoundAlgebra>, parts: &[Representation]) -> Result<Representation> {
    let mut acc = Representation::zero(algebra.clone());
    for p in parts {
        acc = acc.direct_sum(p)?;
    }
    Ok(acc)
}

fn check_vertex(algebra: &BoundAlgebra, v: usize) -> Result<()> {
    if v == 0 || v > algebra.vertex_count() {
        Err(Error::OutOfRange(format!(
            "vertex {v} outside 1..={}",
            algebra.vertex_count()
        )))
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{Arrow, Quiver};

    fn a2(field: Field) -> Arc<BoundAlgebra> {
        let q = Quiver::new(2, vec![Arrow::new("a", 1, 2)]).unwrap();
        Arc::new(BoundAlgebra::path_algebra(field, q).unwrap())
    }

    #[test]
    fn shapes_are_checked() {
        let a = a2(Field::Rational);
        let bad = Representation::new(a.clone(), vec![1, 1], vec![Matrix::zeros(Field::Rational, 2, 1)]);
        assert!(matches!(bad, Err(Error::DimensionMismatch(_))));
        let mut named = HashMap::new();
        named.insert("zz".to_string(), Matrix::zeros(Field::Rational, 1, 1));
        assert!(Representation::from_named(a, vec![1, 1], named).is_err());
    }

    #[test]
    fn projectives_and_injectives_of_a2() {
        let a = a2(Field::Rational);
        assert_eq!(projective(&a, 1).unwrap().dim_vector().0, vec![1, 1]);
        assert_eq!(projective(&a, 2).unwrap().dim_vector().0, vec![0, 1]);
        assert_eq!(injective(&a, 1).unwrap().dim_vector().0, vec![1, 0]);
        assert_eq!(injective(&a, 2).unwrap().dim_vector().0, vec![1, 1]);
        let i2 = injective(&a, 2).unwrap();
        assert!(Arc::ptr_eq(i2.algebra(), &a));
        assert!(projective(&a, 3).is_err());
    }

    #[test]
    fn top_and_socle_of_a_uniserial() {
        let a = a2(Field::Rational);
        let p1 = projective(&a, 1).unwrap();
        assert_eq!(p1.top().0, vec![1, 0]);
        assert_eq!(p1.socle().0, vec![0, 1]);
        let rad = p1.radical().to_representation();
        assert_eq!(rad.dim_vector().0, vec![0, 1]);
        let (quot, _) = p1.radical().quotient();
        assert_eq!(quot.dim_vector().0, vec![1, 0]);
    }

    #[test]
    fn subspace_closure_enforced() {
        let a = a2(Field::Rational);
        let p1 = projective(&a, 1).unwrap();
        let f = Field::Rational;
        let gens = vec![Matrix::from_i64(f, &[&[1]]), Matrix::zeros(f, 1, 0)];
        assert!(Subspace::new(&p1, gens).is_err());
    }

    #[test]
    fn zero_module_is_valid() {
        let a = a2(Field::prime(2).unwrap());
        assert!(Representation::zero(a).validate().is_valid());
    }
}
