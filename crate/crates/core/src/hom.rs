//! Hom spaces as solution spaces of intertwiner systems, brick and isomorphism
//! tests, syzygies, and `Ext¹`.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::BoundAlgebra;
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::matrix::{complement_indices, Matrix};
use crate::rep::{projective, DimVector, Representation, Subspace};

/// A tuple of vertex maps `f_v : M_v -> N_v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    components: Vec<Matrix>,
}

impl Morphism {
    pub fn new(components: Vec<Matrix>) -> Self {
        Morphism { components }
    }

    pub fn zero(m: &Representation, n: &Representation) -> Self {
        let f = m.field();
        Morphism {
            components: m
                .dims()
                .iter()
                .zip(n.dims())
                .map(|(&dm, &dn)| Matrix::zeros(f, dn, dm))
                .collect(),
        }
    }

    pub fn identity(m: &Representation) -> Self {
        Morphism {
            components: m.dims().iter().map(|&d| Matrix::identity(m.field(), d)).collect(),
        }
    }

    pub fn components(&self) -> &[Matrix] {
        &self.components
    }

    /// Component at vertex `v` (1-based).
    pub fn at(&self, v: usize) -> &Matrix {
        &self.components[v - 1]
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &Morphism) -> Morphism {
        Morphism {
            components: self
                .components
                .iter()
                .zip(&next.components)
                .map(|(f, g)| g.mul(f))
                .collect(),
        }
    }

    pub fn add(&self, other: &Morphism) -> Morphism {
        Morphism {
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(f, g)| f.add(g))
                .collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Morphism {
        Morphism {
            components: self.components.iter().map(|f| f.scale(s)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Matrix::is_zero)
    }

    /// Whether `f_t · M_α = N_α · f_s` for every arrow `α: s -> t`.
    pub fn is_intertwiner(&self, m: &Representation, n: &Representation) -> bool {
        if self.components.len() != m.dims().len() {
            return false;
        }
        for (v, f) in self.components.iter().enumerate() {
            if f.shape() != (n.dims()[v], m.dims()[v]) {
                return false;
            }
        }
        m.algebra()
            .quiver()
            .arrows()
            .iter()
            .enumerate()
            .all(|(i, a)| {
                self.components[a.target - 1].mul(m.map(i)) == n.map(i).mul(&self.components[a.source - 1])
            })
    }

    /// Componentwise inverse, if every component is invertible.
    pub fn inverse(&self) -> Option<Morphism> {
        self.components
            .iter()
            .map(Matrix::invert)
            .collect::<Option<Vec<_>>>()
            .map(Morphism::new)
    }

    pub fn is_isomorphism(&self) -> bool {
        self.inverse().is_some()
    }

    pub fn kernel(&self, source: &Representation) -> Subspace {
        let f = source.field();
        let gens = self
            .components
            .iter()
            .zip(source.dims())
            .map(|(c, &d)| Matrix::from_columns(f, d, &c.nullspace_basis()))
            .collect();
        Subspace::new(source, gens).expect("kernel of a module map is a submodule")
    }

    pub fn image(&self, target: &Representation) -> Subspace {
        Subspace::new(target, self.components.clone()).expect("image of a module map is a submodule")
    }

    pub fn cokernel(&self, target: &Representation) -> Representation {
        self.image(target).quotient().0
    }

    fn flatten(&self) -> Vec<Scalar> {
        self.components
            .iter()
            .flat_map(|c| c.entries().iter().cloned())
            .collect()
    }
}

/// Layout of the unknowns `f_v` (row-major blocks) in the intertwiner system.
struct Unknowns {
    offsets: Vec<usize>,
    total: usize,
}

impl Unknowns {
    fn new(m: &Representation, n: &Representation) -> Self {
        let mut offsets = Vec::with_capacity(m.dims().len());
        let mut total = 0;
        for (&dm, &dn) in m.dims().iter().zip(n.dims()) {
            offsets.push(total);
            total += dm * dn;
        }
        Unknowns { offsets, total }
    }

    fn index(&self, v0: usize, row: usize, col: usize, cols: usize) -> usize {
        self.offsets[v0] + row * cols + col
    }
}

/// Coefficient matrix of the intertwiner equations `f_t M_α - N_α f_s = 0`.
fn intertwiner_system(m: &Representation, n: &Representation) -> (Matrix, Unknowns) {
    let field = m.field();
    let unknowns = Unknowns::new(m, n);
    let q = m.algebra().quiver();
    let eq_count: usize = q
        .arrows()
        .iter()
        .map(|a| n.dims()[a.target - 1] * m.dims()[a.source - 1])
        .sum();
    let mut sys = Matrix::zeros(field, eq_count, unknowns.total);
    let mut row = 0;
    for (i, a) in q.arrows().iter().enumerate() {
        let (s, t) = (a.source - 1, a.target - 1);
        let (ms, mt, ns, nt) = (m.dims()[s], m.dims()[t], n.dims()[s], n.dims()[t]);
        let mm = m.map(i);
        let nm = n.map(i);
        for r in 0..nt {
            for c in 0..ms {
                // (f_t M_α)[r,c] = Σ_k f_t[r,k] M_α[k,c]
                for k in 0..mt {
                    let coef = mm.get(k, c);
                    if !coef.is_zero() {
                        let idx = unknowns.index(t, r, k, mt);
                        let v = sys.get(row, idx) + coef;
                        sys.set(row, idx, v);
                    }
                }
                // -(N_α f_s)[r,c] = -Σ_k N_α[r,k] f_s[k,c]
                for k in 0..ns {
                    let coef = nm.get(r, k);
                    if !coef.is_zero() {
                        let idx = unknowns.index(s, k, c, ms);
                        let v = sys.get(row, idx) - coef;
                        sys.set(row, idx, v);
                    }
                }
                row += 1;
            }
        }
    }
    (sys, unknowns)
}

fn unflatten(m: &Representation, n: &Representation, u: &Unknowns, v: &[Scalar]) -> Morphism {
    let field = m.field();
    let components = m
        .dims()
        .iter()
        .zip(n.dims())
        .enumerate()
        .map(|(i, (&dm, &dn))| {
            let mut c = Matrix::zeros(field, dn, dm);
            for r in 0..dn {
                for k in 0..dm {
                    c.set(r, k, v[u.index(i, r, k, dm)].clone());
                }
            }
            c
        })
        .collect();
    Morphism::new(components)
}

/// Deterministic basis of `Hom_A(m, n)`.
pub fn hom_basis(m: &Representation, n: &Representation) -> Result<Vec<Morphism>> {
    m.check_same_algebra(n)?;
    let (sys, unknowns) = intertwiner_system(m, n);
    Ok(sys
        .nullspace_basis()
        .iter()
        .map(|v| unflatten(m, n, &unknowns, v))
        .collect())
}

pub fn hom_dim(m: &Representation, n: &Representation) -> Result<usize> {
    m.check_same_algebra(n)?;
    let (sys, unknowns) = intertwiner_system(m, n);
    Ok(unknowns.total - sys.rank())
}

/// `End(m)` is one-dimensional.
pub fn is_brick(m: &Representation) -> Result<bool> {
    if m.is_zero() {
        return Err(Error::Usage("brick test on the zero module".into()));
    }
    Ok(hom_dim(m, m)? == 1)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoVerdict {
    /// Witness with every component invertible.
    Iso(Morphism),
    NotIso(String),
    /// Sampling found no invertible morphism; never produced by the exhaustive path.
    Undetermined,
}

impl IsoVerdict {
    pub fn is_iso(&self) -> bool {
        matches!(self, IsoVerdict::Iso(_))
    }

    pub fn label(&self) -> &'static str {
        match self {
            IsoVerdict::Iso(_) => "iso",
            IsoVerdict::NotIso(_) => "not_iso",
            IsoVerdict::Undetermined => "undetermined",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IsoOptions {
    pub seed: u64,
    pub trials: usize,
    /// Enumerate all of `Hom(m, n)` when `|K|^dim` is at most this.
    pub exhaustive_limit: u64,
}

impl Default for IsoOptions {
    fn default() -> Self {
        IsoOptions {
            seed: 0,
            trials: 64,
            exhaustive_limit: 1 << 16,
        }
    }
}

fn combine(field: Field, basis: &[Morphism], coeffs: &[Scalar], m: &Representation, n: &Representation) -> Morphism {
    let mut acc = Morphism::zero(m, n);
    for (b, c) in basis.iter().zip(coeffs) {
        if !c.is_zero() {
            acc = acc.add(&b.scale(c));
        }
    }
    debug_assert_eq!(field, m.field());
    acc
}

pub fn are_isomorphic(m: &Representation, n: &Representation, opts: &IsoOptions) -> Result<IsoVerdict> {
    m.check_same_algebra(n)?;
    if m.dim_vector() != n.dim_vector() {
        return Ok(IsoVerdict::NotIso(format!(
            "dimension vectors differ: {} vs {}",
            m.dim_vector(),
            n.dim_vector()
        )));
    }
    let hmn = hom_dim(m, n)?;
    let hnm = hom_dim(n, m)?;
    let hmm = hom_dim(m, m)?;
    let hnn = hom_dim(n, n)?;
    if hmn != hnm || hmm != hnn || hmn != hmm {
        return Ok(IsoVerdict::NotIso(format!(
            "hom dimensions differ: dim Hom(M,N)={hmn}, dim Hom(N,M)={hnm}, dim End(M)={hmm}, dim End(N)={hnn}"
        )));
    }
    if m.is_zero() {
        return Ok(IsoVerdict::Iso(Morphism::identity(m)));
    }
    let basis = hom_basis(m, n)?;
    let field = m.field();
    let exhaustive = field
        .order()
        .and_then(|p| p.checked_pow(basis.len() as u32))
        .filter(|&count| count <= opts.exhaustive_limit);
    if let Some(count) = exhaustive {
        let p = field.order().expect("finite");
        for code in 1..count {
            let mut c = code;
            let coeffs: Vec<Scalar> = (0..basis.len())
                .map(|_| {
                    let digit = c % p;
                    c /= p;
                    field.element(digit)
                })
                .collect();
            let f = combine(field, &basis, &coeffs, m, n);
            if f.is_isomorphism() {
                return Ok(IsoVerdict::Iso(f));
            }
        }
        return Ok(IsoVerdict::NotIso(
            "no invertible element in Hom(M,N) (exhaustive search)".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for _ in 0..opts.trials {
        let coeffs: Vec<Scalar> = (0..basis.len())
            .map(|_| match field.order() {
                Some(p) => field.element(rng.random_range(0..p)),
                None => field.from_i64(rng.random_range(-16..=16)),
            })
            .collect();
        let f = combine(field, &basis, &coeffs, m, n);
        if f.is_isomorphism() {
            return Ok(IsoVerdict::Iso(f));
        }
    }
    Ok(IsoVerdict::Undetermined)
}

/// Projective cover `P -> M` and its kernel `ΩM`.
#[derive(Clone, Debug)]
pub struct Syzygy {
    pub cover: Representation,
    /// `(vertex, top vector)` for each indecomposable summand `e_v A` of the cover.
    pub generators: Vec<(usize, Vec<Scalar>)>,
    pub surjection: Morphism,
    pub kernel: Representation,
    pub inclusion: Morphism,
}

impl Syzygy {
    /// Multiplicity of each vertex projective in the cover.
    pub fn cover_multiplicities(&self, vertex_count: usize) -> DimVector {
        let mut d = DimVector::zeros(vertex_count);
        for (v, _) in &self.generators {
            d.0[v - 1] += 1;
        }
        d
    }
}

/// Top representatives of `m`: per vertex, standard vectors completing a basis of `rad M`.
pub(crate) fn top_generators(m: &Representation) -> Vec<(usize, Vec<Scalar>)> {
    let field = m.field();
    let rad = m.radical();
    let mut out = Vec::new();
    for v in 1..=m.dims().len() {
        let d = m.dim_at(v);
        for i in complement_indices(field, d, rad.generators(v)) {
            let mut e = vec![field.zero(); d];
            e[i] = field.one();
            out.push((v, e));
        }
    }
    out
}

pub fn syzygy(m: &Representation) -> Result<Syzygy> {
    let algebra: &Arc<BoundAlgebra> = m.algebra();
    let field = m.field();
    let generators = top_generators(m);
    let mut cover = Representation::zero(algebra.clone());
    for (v, _) in &generators {
        cover = cover.direct_sum(&projective(algebra, *v)?)?;
    }
    let components = (1..=algebra.vertex_count())
        .map(|w| {
            let mut cols = Vec::new();
            for (v, t) in &generators {
                for &b in algebra.basis_between(*v, w) {
                    cols.push(m.path_matrix(&algebra.basis()[b]).mul_vec(t));
                }
            }
            Matrix::from_columns(field, m.dim_at(w), &cols)
        })
        .collect();
    let surjection = Morphism::new(components);
    debug_assert!(surjection.is_intertwiner(&cover, m));
    let ker = surjection.kernel(&cover);
    let kernel = ker.to_representation();
    let inclusion = Morphism::new((1..=algebra.vertex_count()).map(|v| ker.generators(v).clone()).collect());
    Ok(Syzygy {
        cover,
        generators,
        surjection,
        kernel,
        inclusion,
    })
}

pub fn is_projective(m: &Representation) -> Result<bool> {
    Ok(syzygy(m)?.kernel.is_zero())
}

/// `pd M <= 1`, i.e. `ΩM` is projective.
pub fn projective_dimension_at_most_one(m: &Representation) -> Result<bool> {
    is_projective(&syzygy(m)?.kernel)
}

/// `dim Ext¹(m, n)` as the cokernel dimension of `Hom(P, n) -> Hom(ΩM, n)`, `f ↦ f ∘ ι`.
pub fn ext1_dim(m: &Representation, n: &Representation) -> Result<usize> {
    m.check_same_algebra(n)?;
    let syz = syzygy(m)?;
    let target_dim = hom_dim(&syz.kernel, n)?;
    let restricted: Vec<Vec<Scalar>> = hom_basis(&syz.cover, n)?
        .iter()
        .map(|f| syz.inclusion.then(f).flatten())
        .collect();
    let rank = if restricted.is_empty() || restricted[0].is_empty() {
        0
    } else {
        Matrix::from_rows(m.field(), restricted)?.rank()
    };
    Ok(target_dim - rank)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{Arrow, Quiver};
    use crate::rep::{injective, simple};

    fn a3(field: Field) -> Arc<BoundAlgebra> {
        let q = Quiver::new(3, vec![Arrow::new("a", 1, 2), Arrow::new("b", 2, 3)]).unwrap();
        Arc::new(BoundAlgebra::path_algebra(field, q).unwrap())
    }

    #[test]
    fn hom_into_zero() {
        let a = a3(Field::Rational);
        let m = projective(&a, 1).unwrap();
        let z = Representation::zero(a.clone());
        assert_eq!(hom_dim(&m, &z).unwrap(), 0);
        assert_eq!(hom_dim(&z, &m).unwrap(), 0);
    }

    #[test]
    fn hom_basis_elements_intertwine() {
        let a = a3(Field::prime(3).unwrap());
        let p1 = projective(&a, 1).unwrap();
        let i3 = injective(&a, 3).unwrap();
        for f in hom_basis(&p1, &i3).unwrap() {
            assert!(f.is_intertwiner(&p1, &i3));
        }
    }

    #[test]
    fn brick_of_zero_is_a_usage_error() {
        let a = a3(Field::Rational);
        assert!(is_brick(&Representation::zero(a)).is_err());
    }

    #[test]
    fn simple_is_brick_and_sum_is_not() {
        let a = a3(Field::Rational);
        let s = simple(&a, 2).unwrap();
        assert!(is_brick(&s).unwrap());
        assert!(!is_brick(&s.direct_sum(&s).unwrap()).unwrap());
    }

    #[test]
    fn a3_uniserial_ext() {
        let a = a3(Field::Rational);
        let s1 = simple(&a, 1).unwrap();
        let s2 = simple(&a, 2).unwrap();
        let s3 = simple(&a, 3).unwrap();
        assert_eq!(ext1_dim(&s1, &s2).unwrap(), 1);
        assert_eq!(ext1_dim(&s1, &s3).unwrap(), 0);
        assert_eq!(ext1_dim(&s2, &s1).unwrap(), 0);
        assert_eq!(ext1_dim(&projective(&a, 1).unwrap(), &s3).unwrap(), 0);
    }

    #[test]
    fn projective_recognition() {
        let a = a3(Field::Rational);
        assert!(is_projective(&projective(&a, 2).unwrap()).unwrap());
        assert!(!is_projective(&simple(&a, 1).unwrap()).unwrap());
        assert!(projective_dimension_at_most_one(&simple(&a, 1).unwrap()).unwrap());
    }

    #[test]
    fn iso_verdicts() {
        let a = a3(Field::prime(2).unwrap());
        let p3 = projective(&a, 3).unwrap();
        let s3 = simple(&a, 3).unwrap();
        match are_isomorphic(&p3, &s3, &IsoOptions::default()).unwrap() {
            IsoVerdict::Iso(w) => {
                assert!(w.is_intertwiner(&p3, &s3));
                let inv = w.inverse().unwrap();
                assert!(inv.is_intertwiner(&s3, &p3));
                assert_eq!(w.then(&inv), Morphism::identity(&p3));
            }
            other => panic!("expected iso, got {other:?}"),
        }
        let s2 = simple(&a, 2).unwrap();
        assert!(matches!(
            are_isomorphic(&s2, &s3, &IsoOptions::default()).unwrap(),
            IsoVerdict::NotIso(_)
        ));
    }

    #[test]
    fn rational_iso_uses_sampling() {
        let a = a3(Field::Rational);
        let p1 = projective(&a, 1).unwrap();
        let i3 = injective(&a, 3).unwrap();
        assert!(are_isomorphic(&p1, &i3, &IsoOptions::default()).unwrap().is_iso());
    }
}
