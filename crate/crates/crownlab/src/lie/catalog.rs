//! Built-in algebras: aff(R), sl2(R), heis(R^2), the split oscillator and
//! sl3(R) with the embedded oscillator generators.

use std::collections::BTreeMap;

use super::{LieAlgebra, LieElement};
use crate::error::{Error, Result};

/// A catalog algebra together with its distinguished elements.
#[derive(Debug, Clone)]
pub struct CatalogAlgebra {
    pub algebra: LieAlgebra,
    /// Named generators: `x`, `h` for aff; `e`, `h`, `f` for sl2; `z`, `q`,
    /// `p` (and `h` where present) for the Heisenberg-type algebras. For sl3
    /// these are the embedding coordinates of the oscillator generators.
    pub elements: BTreeMap<String, LieElement>,
}

impl CatalogAlgebra {
    pub fn element(&self, name: &str) -> Option<&LieElement> {
        self.elements.get(name)
    }
}

fn zeros(dim: usize) -> Vec<Vec<Vec<f64>>> {
    vec![vec![vec![0.0; dim]; dim]; dim]
}

fn set(c: &mut [Vec<Vec<f64>>], i: usize, j: usize, k: usize, v: f64) {
    c[i][j][k] = v;
    c[j][i][k] = -v;
}

/// Look up a catalog algebra by name.
///
/// Known names: `aff`, `sl2`, `heis`, `split_oscillator`, `sl3`.
pub fn catalog(name: &str) -> Result<CatalogAlgebra> {
    match name {
        "aff" => aff(),
        "sl2" => sl2(),
        "heis" => heis(),
        "split_oscillator" => split_oscillator(),
        "sl3" => sl3(),
        other => Err(Error::UnknownAlgebra(other.to_string())),
    }
}

/// aff(R) with basis (x, h), [h, x] = x.
fn aff() -> Result<CatalogAlgebra> {
    let mut c = zeros(2);
    set(&mut c, 1, 0, 0, 1.0);
    let algebra = LieAlgebra::new(vec!["x".into(), "h".into()], c)?;
    let mut elements = BTreeMap::new();
    elements.insert("x".into(), LieElement::from_slice(&[1.0, 0.0]));
    elements.insert("h".into(), LieElement::from_slice(&[0.0, 1.0]));
    Ok(CatalogAlgebra { algebra, elements })
}

/// sl2(R) with basis (e, h, f), [h,e] = e, [h,f] = -f, [e,f] = 2h;
/// h corresponds to (1/2) diag(1, -1).
fn sl2() -> Result<CatalogAlgebra> {
    let mut c = zeros(3);
    set(&mut c, 1, 0, 0, 1.0);
    set(&mut c, 1, 2, 2, -1.0);
    set(&mut c, 0, 2, 1, 2.0);
    let algebra = LieAlgebra::new(vec!["e".into(), "h".into(), "f".into()], c)?;
    let mut elements = BTreeMap::new();
    elements.insert("e".into(), LieElement::basis_vector(3, 0));
    elements.insert("h".into(), LieElement::basis_vector(3, 1));
    elements.insert("f".into(), LieElement::basis_vector(3, 2));
    Ok(CatalogAlgebra { algebra, elements })
}

/// heis(R^2) with basis (z, q, p), [q, p] = z.
fn heis() -> Result<CatalogAlgebra> {
    let mut c = zeros(3);
    set(&mut c, 1, 2, 0, 1.0);
    let algebra = LieAlgebra::new(vec!["z".into(), "q".into(), "p".into()], c)?;
    let mut elements = BTreeMap::new();
    elements.insert("z".into(), LieElement::basis_vector(3, 0));
    elements.insert("q".into(), LieElement::basis_vector(3, 1));
    elements.insert("p".into(), LieElement::basis_vector(3, 2));
    Ok(CatalogAlgebra { algebra, elements })
}

/// Split oscillator heis(R^2) x| R h with basis (z, q, p, h):
/// [q,p] = z, [h,q] = q, [h,p] = -p, [h,z] = 0.
fn split_oscillator() -> Result<CatalogAlgebra> {
    let mut c = zeros(4);
    set(&mut c, 1, 2, 0, 1.0);
    set(&mut c, 3, 1, 1, 1.0);
    set(&mut c, 3, 2, 2, -1.0);
    let algebra =
        LieAlgebra::new(vec!["z".into(), "q".into(), "p".into(), "h".into()], c)?;
    let mut elements = BTreeMap::new();
    elements.insert("z".into(), LieElement::basis_vector(4, 0));
    elements.insert("q".into(), LieElement::basis_vector(4, 1));
    elements.insert("p".into(), LieElement::basis_vector(4, 2));
    elements.insert("h".into(), LieElement::basis_vector(4, 3));
    Ok(CatalogAlgebra { algebra, elements })
}

type Mat3 = [[f64; 3]; 3];

/// The 3x3 matrices realizing the sl3 basis used by the catalog:
/// E12, E13, E23, E21, E31, E32, H1 = diag(1,-1,0), H2 = diag(0,1,-1).
pub fn sl3_basis_matrices() -> Vec<(String, Mat3)> {
    let e = |r: usize, cidx: usize| -> Mat3 {
        let mut m = [[0.0; 3]; 3];
        m[r][cidx] = 1.0;
        m
    };
    vec![
        ("E12".into(), e(0, 1)),
        ("E13".into(), e(0, 2)),
        ("E23".into(), e(1, 2)),
        ("E21".into(), e(1, 0)),
        ("E31".into(), e(2, 0)),
        ("E32".into(), e(2, 1)),
        ("H1".into(), [[1.0, 0.0, 0.0], [0.0, -1.0, 0.0], [0.0, 0.0, 0.0]]),
        ("H2".into(), [[0.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, -1.0]]),
    ]
}

fn mat_commutator(a: &Mat3, b: &Mat3) -> Mat3 {
    let mut ab = [[0.0; 3]; 3];
    let mut ba = [[0.0; 3]; 3];
    for r in 0..3 {
        for cidx in 0..3 {
            for k in 0..3 {
                ab[r][cidx] += a[r][k] * b[k][cidx];
                ba[r][cidx] += b[r][k] * a[k][cidx];
            }
        }
    }
    let mut out = [[0.0; 3]; 3];
    for r in 0..3 {
        for cidx in 0..3 {
            out[r][cidx] = ab[r][cidx] - ba[r][cidx];
        }
    }
    out
}

/// Expand a traceless 3x3 matrix in the catalog basis.
fn sl3_coords(m: &Mat3) -> [f64; 8] {
    // off-diagonal entries are direct coordinates; the diagonal expands in
    // H1, H2 as diag(d1, d2, d3) = d1 H1 + (-d3) H2 when d1 + d2 + d3 = 0
    [m[0][1], m[0][2], m[1][2], m[1][0], m[2][0], m[2][1], m[0][0], -m[2][2]]
}

/// sl3(R) with structure constants computed from the matrix realization.
/// The distinguished elements are the oscillator generators
/// h = (1/3) diag(1, -2, 1), q = E12, p = E23, z = E13.
fn sl3() -> Result<CatalogAlgebra> {
    let basis = sl3_basis_matrices();
    let names: Vec<String> = basis.iter().map(|(n, _)| n.clone()).collect();
    let mut c = zeros(8);
    for i in 0..8 {
        for j in (i + 1)..8 {
            let comm = mat_commutator(&basis[i].1, &basis[j].1);
            let coords = sl3_coords(&comm);
            for (k, &v) in coords.iter().enumerate() {
                if v != 0.0 {
                    set(&mut c, i, j, k, v);
                }
            }
        }
    }
    let algebra = LieAlgebra::new(names, c)?;
    let mut elements = BTreeMap::new();
    let third = 1.0 / 3.0;
    elements.insert(
        "h".into(),
        LieElement::from_slice(&[0.0, 0.0, 0.0, 0.0, 0.0, 0.0, third, -third]),
    );
    elements.insert("q".into(), LieElement::basis_vector(8, 0));
    elements.insert("z".into(), LieElement::basis_vector(8, 1));
    elements.insert("p".into(), LieElement::basis_vector(8, 2));
    Ok(CatalogAlgebra { algebra, elements })
}
