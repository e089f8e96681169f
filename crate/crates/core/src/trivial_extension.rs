//! The trivial extension `T(H) = H ⊕ D(H)` as a structure-constant table.
//!
//! Coordinates `0..d` are the path basis of `H`, coordinates `d..2d` its dual
//! basis. With `b_i b_j = Σ_k c_ij^k b_k` in `H`, the bimodule actions are
//! `b_i · b_k* = Σ_m c_mi^k b_m*` and `b_k* · b_i = Σ_m c_im^k b_m*`.

use crate::algebra::BoundAlgebra;
use crate::field::{Field, Scalar};
use crate::matrix::Matrix;

#[derive(Clone, Debug)]
pub struct TrivialExtension {
    field: Field,
    base_dimension: usize,
    products: Vec<Vec<(usize, Scalar)>>,
    form: Matrix,
}

impl TrivialExtension {
    pub fn new(h: &BoundAlgebra) -> Self {
        let field = h.field();
        let d = h.dimension();
        let n = 2 * d;
        let mut products: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); n * n];
        for i in 0..d {
            for j in 0..d {
                // (a,0)(b,0) = (ab, 0)
                products[i * n + j] = h.basis_product(i, j).to_vec();
            }
        }
        for m in 0..d {
            for i in 0..d {
                // c_mi^k contributes b_i · b_k* ∋ c_mi^k b_m*
                for (k, c) in h.basis_product(m, i) {
                    products[i * n + (d + k)].push((d + m, c.clone()));
                }
                // c_im^k contributes b_k* · b_i ∋ c_im^k b_m*
                for (k, c) in h.basis_product(i, m) {
                    products[(d + k) * n + i].push((d + m, c.clone()));
                }
            }
        }
        for entry in &mut products {
            entry.sort_by_key(|(k, _)| *k);
        }

        // The trace form ((a,f),(b,g)) ↦ f(b) + g(a), read off as φ(x·y)
        // with φ(a,f) = f(1) and 1 = Σ e_i.
        let unit_coords: Vec<bool> = h.basis().iter().map(|p| p.is_stationary()).collect();
        let mut form = Matrix::zeros(field, n, n);
        for x in 0..n {
            for y in 0..n {
                let mut v = field.zero();
                for (k, c) in &products[x * n + y] {
                    if *k >= d && unit_coords[*k - d] {
                        v += c;
                    }
                }
                form.set(x, y, v);
            }
        }

        TrivialExtension {
            field,
            base_dimension: d,
            products,
            form,
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dimension(&self) -> usize {
        2 * self.base_dimension
    }

    pub fn base_dimension(&self) -> usize {
        self.base_dimension
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.products[i * self.dimension() + j]
    }

    pub fn multiply(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![self.field.zero(); self.dimension()];
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

    /// Gram matrix of the canonical symmetric form.
    pub fn form(&self) -> &Matrix {
        &self.form
    }

    pub fn form_is_symmetric(&self) -> bool {
        self.form == self.form.transpose()
    }

    pub fn form_is_nondegenerate(&self) -> bool {
        self.form.invert().is_some()
    }

    /// Exhaustive check of `(b_i b_j) b_k = b_i (b_j b_k)` on basis triples.
    pub fn is_associative(&self) -> bool {
        crate::algebra::table_is_associative(self.field, self.dimension(), |i, j| {
            self.basis_product(i, j)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::Quiver;

    #[test]
    fn trivial_extension_of_the_ground_field() {
        let f = Field::Rational;
        let k = BoundAlgebra::path_algebra(f, Quiver::new(1, vec![]).unwrap()).unwrap();
        let t = TrivialExtension::new(&k);
        assert_eq!(t.dimension(), 2);
        assert!(t.basis_product(1, 1).is_empty());
        assert_eq!(t.basis_product(0, 1).to_vec(), vec![(1, f.one())]);
        assert_eq!(t.basis_product(1, 0).to_vec(), vec![(1, f.one())]);
        assert!(t.is_associative());
        assert!(t.form_is_symmetric());
        assert!(t.form_is_nondegenerate());
    }
}
