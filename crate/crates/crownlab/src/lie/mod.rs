//! Real Lie algebras given by structure constants: brackets, Euler-element
//! detection, 3-gradings with their involutions, wedge data and solvable
//! splittings.

mod catalog;

pub use catalog::{catalog, sl3_basis_matrices, CatalogAlgebra};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::Deserialize;

use crate::error::{Error, Result};

/// Tolerance for algebraic identities (brackets, projectors, involutions).
pub const TOL_ALGEBRAIC: f64 = 1e-12;
/// Tolerance for anything downstream of eigenstructure.
pub const TOL_EIGEN: f64 = 1e-9;
/// Coefficient tolerance of the minimal-polynomial divisibility test.
pub const TOL_MINPOLY: f64 = 1e-10;

/// An element of a Lie algebra, as coordinates in the algebra basis.
#[derive(Debug, Clone, PartialEq)]
pub struct LieElement(pub Vec<f64>);

impl LieElement {
    pub fn from_slice(coords: &[f64]) -> Self {
        LieElement(coords.to_vec())
    }

    pub fn zero(dim: usize) -> Self {
        LieElement(vec![0.0; dim])
    }

    pub fn basis_vector(dim: usize, k: usize) -> Self {
        let mut v = vec![0.0; dim];
        v[k] = 1.0;
        LieElement(v)
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn scaled(&self, c: f64) -> Self {
        LieElement(self.0.iter().map(|x| c * x).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        LieElement(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn norm_inf(&self) -> f64 {
        self.0.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    fn as_dvector(&self) -> DVector<f64> {
        DVector::from_column_slice(&self.0)
    }
}

/// A finite-dimensional real Lie algebra with bracket
/// `[e_i, e_j] = sum_k c[i][j][k] e_k`.
#[derive(Debug, Clone)]
pub struct LieAlgebra {
    dim: usize,
    basis_names: Vec<String>,
    c: Vec<Vec<Vec<f64>>>,
}

#[derive(Deserialize)]
struct AlgebraJson {
    dim: usize,
    #[serde(default)]
    names: Option<Vec<String>>,
    c: Vec<Vec<Vec<f64>>>,
}

impl LieAlgebra {
    /// Build an algebra from structure constants, checking antisymmetry and
    /// the Jacobi identity.
    pub fn new(basis_names: Vec<String>, c: Vec<Vec<Vec<f64>>>) -> Result<Self> {
        let dim = c.len();
        if dim == 0 {
            return Err(Error::InvalidAlgebra("dimension must be positive".into()));
        }
        if basis_names.len() != dim {
            return Err(Error::InvalidAlgebra(format!(
                "{} basis names for dimension {dim}",
                basis_names.len()
            )));
        }
        for row in &c {
            if row.len() != dim || row.iter().any(|col| col.len() != dim) {
                return Err(Error::InvalidAlgebra("structure tensor is not dim x dim x dim".into()));
            }
        }
        for (i, ci) in c.iter().enumerate() {
            for (j, cij) in ci.iter().enumerate() {
                for (k, &v) in cij.iter().enumerate() {
                    if !v.is_finite() {
                        return Err(Error::InvalidAlgebra("non-finite structure constant".into()));
                    }
                    if (v + c[j][i][k]).abs() > TOL_ALGEBRAIC {
                        return Err(Error::InvalidAlgebra(format!(
                            "antisymmetry violated at ({i},{j},{k})"
                        )));
                    }
                }
            }
        }
        let alg = LieAlgebra { dim, basis_names, c };
        let jac = alg.jacobi_residual();
        if jac > TOL_ALGEBRAIC {
            return Err(Error::InvalidAlgebra(format!("Jacobi residual {jac:.3e}")));
        }
        Ok(alg)
    }

    /// Load an algebra from the JSON form `{"dim": n, "names": [...], "c": [[[...]]]}`.
    pub fn from_json_str(s: &str) -> Result<Self> {
        let parsed: AlgebraJson =
            serde_json::from_str(s).map_err(|e| Error::InvalidAlgebra(e.to_string()))?;
        if parsed.c.len() != parsed.dim {
            return Err(Error::InvalidAlgebra(format!(
                "declared dim {} does not match tensor size {}",
                parsed.dim,
                parsed.c.len()
            )));
        }
        let names = parsed
            .names
            .unwrap_or_else(|| (0..parsed.dim).map(|k| format!("e{k}")).collect());
        Self::new(names, parsed.c)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    pub fn structure_constants(&self) -> &Vec<Vec<Vec<f64>>> {
        &self.c
    }

    fn check_dim(&self, x: &LieElement) -> Result<()> {
        if x.0.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: x.0.len() });
        }
        Ok(())
    }

    /// The Lie bracket `[a, b]` evaluated through the structure constants.
    pub fn bracket(&self, a: &LieElement, b: &LieElement) -> Result<LieElement> {
        self.check_dim(a)?;
        self.check_dim(b)?;
        let mut out = vec![0.0; self.dim];
        for (i, &ai) in a.0.iter().enumerate() {
            if ai == 0.0 {
                continue;
            }
            for (j, &bj) in b.0.iter().enumerate() {
                if bj == 0.0 {
                    continue;
                }
                let cij = &self.c[i][j];
                for (k, out_k) in out.iter_mut().enumerate() {
                    *out_k += ai * bj * cij[k];
                }
            }
        }
        Ok(LieElement(out))
    }

    /// Matrix of `ad x : v -> [x, v]` in the algebra basis.
    pub fn ad(&self, x: &LieElement) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.dim, self.dim);
        for j in 0..self.dim {
            for (i, &xi) in x.0.iter().enumerate() {
                if xi == 0.0 {
                    continue;
                }
                for k in 0..self.dim {
                    m[(k, j)] += xi * self.c[i][j][k];
                }
            }
        }
        m
    }

    /// Largest Jacobi defect over all basis triples.
    pub fn jacobi_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        let basis: Vec<LieElement> =
            (0..self.dim).map(|k| LieElement::basis_vector(self.dim, k)).collect();
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                for k in (j + 1)..self.dim {
                    let t1 = self.bracket(&self.bracket(&basis[i], &basis[j]).unwrap(), &basis[k]).unwrap();
                    let t2 = self.bracket(&self.bracket(&basis[j], &basis[k]).unwrap(), &basis[i]).unwrap();
                    let t3 = self.bracket(&self.bracket(&basis[k], &basis[i]).unwrap(), &basis[j]).unwrap();
                    worst = worst.max(t1.add(&t2).add(&t3).norm_inf());
                }
            }
        }
        worst
    }

    /// Euler test: `ad x` nonzero, diagonalizable with spectrum in {-1, 0, 1}.
    ///
    /// Implemented as the minimal-polynomial divisibility `m(t) | t^3 - t`,
    /// i.e. `(ad x)^3 = ad x`, with the coefficient tolerance scaled by the
    /// cube of the matrix magnitude.
    pub fn is_euler(&self, x: &LieElement) -> bool {
        if x.0.len() != self.dim {
            return false;
        }
        let a = self.ad(x);
        let scale = a.amax();
        if scale <= TOL_ALGEBRAIC {
            return false;
        }
        let cube = &a * &a * &a;
        let residual = (&cube - &a).amax();
        residual <= TOL_MINPOLY * scale.powi(3).max(1.0)
    }

    /// Grading projectors, involution and quarter-rotation for an Euler
    /// element, via Lagrange interpolation in `ad h`.
    pub fn euler_structure(&self, h: &LieElement) -> Result<EulerStructure> {
        self.check_dim(h)?;
        if !self.is_euler(h) {
            return Err(Error::NotEuler);
        }
        let a = self.ad(h);
        let a2 = &a * &a;
        let id = DMatrix::<f64>::identity(self.dim, self.dim);
        let p_minus = (&a2 - &a) * 0.5;
        let p_zero = &id - &a2;
        let p_plus = (&a2 + &a) * 0.5;
        let tau_h = &id - &a2 * 2.0;
        let mut zeta = DMatrix::<Complex64>::zeros(self.dim, self.dim);
        for r in 0..self.dim {
            for cidx in 0..self.dim {
                // zeta multiplies the lambda-eigenspace by exp(-i pi lambda / 2)
                zeta[(r, cidx)] = Complex64::new(p_zero[(r, cidx)], p_minus[(r, cidx)] - p_plus[(r, cidx)]);
            }
        }
        let mult = |p: &DMatrix<f64>| p.trace().round() as usize;
        let mut spectrum = Vec::with_capacity(self.dim);
        spectrum.extend(std::iter::repeat_n(-1.0, mult(&p_minus)));
        spectrum.extend(std::iter::repeat_n(0.0, mult(&p_zero)));
        spectrum.extend(std::iter::repeat_n(1.0, mult(&p_plus)));
        Ok(EulerStructure {
            h: h.clone(),
            p_minus,
            p_zero,
            p_plus,
            tau_h,
            zeta,
            spectrum,
        })
    }

    /// Splitting `g = n x| R h` of a solvable algebra along a non-central
    /// Euler element: returns a basis of a codimension-1 ideal containing
    /// `[g, g]` and not containing `h`.
    pub fn solvable_splitting(&self, h: &LieElement) -> Result<(Vec<LieElement>, LieElement)> {
        self.check_dim(h)?;
        if !self.is_solvable() {
            return Err(Error::NotSolvable);
        }
        if self.ad(h).amax() <= TOL_ALGEBRAIC {
            return Err(Error::CentralElement);
        }
        if !self.is_euler(h) {
            return Err(Error::NotEuler);
        }
        let derived = self.derived_subalgebra_basis();
        // functional vanishing on [g, g] with f(h) = 1: project h off the
        // derived algebra (h never lies in [g, g] for a solvable algebra)
        let mut f = h.as_dvector();
        for d in &derived {
            let p = f.dot(d);
            f -= d * p;
        }
        let fn_h = f.dot(&h.as_dvector());
        if f.norm() <= TOL_EIGEN || fn_h.abs() <= TOL_EIGEN {
            return Err(Error::WrongAlgebra("Euler element lies in the derived algebra".into()));
        }
        f /= f.norm();
        // the ideal is the kernel of f
        let mut ideal = Vec::new();
        for k in 0..self.dim {
            let mut v = DVector::zeros(self.dim);
            v[k] = 1.0;
            let p = f.dot(&v);
            v -= &f * p;
            for b in &ideal {
                let q = v.dot(b);
                v -= b * q;
            }
            if v.norm() > 1e-8 {
                v /= v.norm();
                ideal.push(v);
            }
        }
        debug_assert_eq!(ideal.len(), self.dim - 1);
        // verify the ideal property by brackets
        for k in 0..self.dim {
            let ek = LieElement::basis_vector(self.dim, k);
            for n in &ideal {
                let bn = self.bracket(&ek, &LieElement(n.as_slice().to_vec()))?;
                let mut r = bn.as_dvector();
                for b in &ideal {
                    let q = r.dot(b);
                    r -= b * q;
                }
                if r.norm() > TOL_EIGEN {
                    return Err(Error::WrongAlgebra("candidate subspace is not an ideal".into()));
                }
            }
        }
        let basis = ideal.into_iter().map(|v| LieElement(v.as_slice().to_vec())).collect();
        Ok((basis, h.clone()))
    }

    /// Solvability via the derived series reaching zero.
    pub fn is_solvable(&self) -> bool {
        let mut current: Vec<DVector<f64>> =
            (0..self.dim).map(|k| DVector::from_fn(self.dim, |r, _| if r == k { 1.0 } else { 0.0 })).collect();
        loop {
            let next = self.bracket_span(&current, &current);
            if next.is_empty() {
                return true;
            }
            if next.len() >= current.len() {
                return false;
            }
            current = next;
        }
    }

    /// Orthonormal basis of `[g, g]`.
    pub fn derived_subalgebra_basis(&self) -> Vec<DVector<f64>> {
        let basis: Vec<DVector<f64>> =
            (0..self.dim).map(|k| DVector::from_fn(self.dim, |r, _| if r == k { 1.0 } else { 0.0 })).collect();
        self.bracket_span(&basis, &basis)
    }

    fn bracket_span(&self, lhs: &[DVector<f64>], rhs: &[DVector<f64>]) -> Vec<DVector<f64>> {
        let mut span: Vec<DVector<f64>> = Vec::new();
        for u in lhs {
            for v in rhs {
                let b = self
                    .bracket(&LieElement(u.as_slice().to_vec()), &LieElement(v.as_slice().to_vec()))
                    .unwrap();
                let mut w = b.as_dvector();
                for s in &span {
                    let p = w.dot(s);
                    w -= s * p;
                }
                if w.norm() > 1e-9 {
                    w /= w.norm();
                    span.push(w);
                }
            }
        }
        span
    }
}

/// Grading data of an Euler element: spectral projectors of `ad h`, the
/// involution `tau_h`, and the quarter-rotation `zeta`.
#[derive(Debug, Clone)]
pub struct EulerStructure {
    pub h: LieElement,
    pub p_minus: DMatrix<f64>,
    pub p_zero: DMatrix<f64>,
    pub p_plus: DMatrix<f64>,
    pub tau_h: DMatrix<f64>,
    pub zeta: DMatrix<Complex64>,
    pub spectrum: Vec<f64>,
}

impl EulerStructure {
    pub fn grading_dims(&self) -> (usize, usize, usize) {
        (
            self.p_minus.trace().round() as usize,
            self.p_zero.trace().round() as usize,
            self.p_plus.trace().round() as usize,
        )
    }

    /// Apply `zeta` to a real element, yielding complex coordinates.
    pub fn zeta_apply(&self, x: &LieElement) -> Vec<Complex64> {
        let n = self.zeta.nrows();
        let mut out = vec![Complex64::new(0.0, 0.0); n];
        for (r, out_r) in out.iter_mut().enumerate() {
            for (cidx, &xc) in x.0.iter().enumerate() {
                *out_r += self.zeta[(r, cidx)] * xc;
            }
        }
        out
    }

    /// Wedge data: bases of `g^{-tau_h}`, of its image under `x -> i zeta(x)`
    /// (the unit coordinate box stands in for the unspecified cone), and of
    /// the centralizer `g^h`.
    pub fn wedge_data(&self) -> WedgeData {
        let minus_tau = &self.p_plus + &self.p_minus;
        let omega_prime_basis = column_space_basis(&minus_tau);
        // i zeta maps x_1 + x_{-1} to x_1 - x_{-1}
        let flip = &self.p_plus - &self.p_minus;
        let omega_basis: Vec<LieElement> = omega_prime_basis
            .iter()
            .map(|b| {
                let v = &flip * b.as_dvector();
                LieElement(v.as_slice().to_vec())
            })
            .collect();
        let centralizer_basis = column_space_basis(&self.p_zero);
        WedgeData { omega_prime_basis, omega_basis, centralizer_basis }
    }
}

/// Infinitesimal wedge data attached to an Euler structure.
#[derive(Debug, Clone)]
pub struct WedgeData {
    pub omega_prime_basis: Vec<LieElement>,
    pub omega_basis: Vec<LieElement>,
    pub centralizer_basis: Vec<LieElement>,
}

fn column_space_basis(m: &DMatrix<f64>) -> Vec<LieElement> {
    let mut basis: Vec<DVector<f64>> = Vec::new();
    let target = m.trace().round() as usize;
    for j in 0..m.ncols() {
        let mut v = m.column(j).clone_owned();
        for b in &basis {
            let p = v.dot(b);
            v -= b * p;
        }
        if v.norm() > 1e-9 {
            v /= v.norm();
            basis.push(v);
        }
        if basis.len() == target {
            break;
        }
    }
    basis.into_iter().map(|v| LieElement(v.as_slice().to_vec())).collect()
}

/// Euler classification in the split oscillator algebra (basis z, q, p, h):
/// the Euler set is the pair of hyperplanes with h-coordinate exactly +-1.
pub fn classify_euler_split_oscillator(algebra: &LieAlgebra, x: &LieElement) -> Result<bool> {
    let reference = catalog("split_oscillator")?;
    if algebra.dim() != 4 {
        return Err(Error::WrongAlgebra("expected the 4-dimensional split oscillator".into()));
    }
    let rc = reference.algebra.structure_constants();
    for (ci, ri) in algebra.c.iter().zip(rc) {
        for (cij, rij) in ci.iter().zip(ri) {
            for (cv, rv) in cij.iter().zip(rij) {
                if (cv - rv).abs() > TOL_ALGEBRAIC {
                    return Err(Error::WrongAlgebra("structure constants differ from the split oscillator".into()));
                }
            }
        }
    }
    if x.0.len() != 4 {
        return Err(Error::WrongAlgebra("element has wrong dimension".into()));
    }
    Ok(x.0[3] == 1.0 || x.0[3] == -1.0)
}

#[cfg(test)]
mod tests;
