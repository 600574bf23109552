use super::*;
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn oscillator() -> CatalogAlgebra {
    catalog("split_oscillator").unwrap()
}

/// Matrix exponential of a complex matrix by plain series summation;
/// independent oracle for the interpolation-based `zeta`.
fn mat_exp(m: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let n = m.nrows();
    let mut term = DMatrix::<Complex64>::identity(n, n);
    let mut sum = term.clone();
    for k in 1..60 {
        term = (&term * m) / Complex64::new(k as f64, 0.0);
        sum += &term;
    }
    sum
}

#[test]
fn bracket_oscillator_relations() {
    let cat = oscillator();
    let g = &cat.algebra;
    let (z, q, p, h) = (
        cat.element("z").unwrap(),
        cat.element("q").unwrap(),
        cat.element("p").unwrap(),
        cat.element("h").unwrap(),
    );
    assert_eq!(g.bracket(q, p).unwrap(), *z);
    assert_eq!(g.bracket(h, q).unwrap(), *q);
    assert_eq!(g.bracket(h, p).unwrap(), p.scaled(-1.0));
    assert_eq!(g.bracket(h, z).unwrap(), LieElement::zero(4));
}

#[test]
fn bracket_is_alternating() {
    let cat = oscillator();
    let x = LieElement::from_slice(&[0.3, -1.2, 0.7, 2.0]);
    let b = cat.algebra.bracket(&x, &x).unwrap();
    assert!(b.norm_inf() < 1e-15);
}

#[test]
fn bracket_aff_relation() {
    let cat = catalog("aff").unwrap();
    let (x, h) = (cat.element("x").unwrap(), cat.element("h").unwrap());
    assert_eq!(cat.algebra.bracket(h, x).unwrap(), *x);
}

#[test]
fn bracket_dimension_mismatch() {
    let cat = catalog("aff").unwrap();
    let bad = LieElement::from_slice(&[1.0, 2.0, 3.0]);
    assert!(matches!(
        cat.algebra.bracket(&bad, cat.element("h").unwrap()),
        Err(Error::DimensionMismatch { .. })
    ));
}

#[test]
fn oscillator_h_is_euler_center_is_not() {
    let cat = oscillator();
    assert!(cat.algebra.is_euler(cat.element("h").unwrap()));
    assert!(!cat.algebra.is_euler(cat.element("z").unwrap()));
}

#[test]
fn twice_h_is_not_euler() {
    let cat = oscillator();
    let two_h = cat.element("h").unwrap().scaled(2.0);
    // oracle: the actual eigenvalues of ad(2h) are {0, 0, 2, -2}
    let eigs = cat.algebra.ad(&two_h).complex_eigenvalues();
    let mut mags: Vec<f64> = eigs.iter().map(|e| e.re).collect();
    mags.sort_by(f64::total_cmp);
    assert!((mags[0] + 2.0).abs() < 1e-9 && (mags[3] - 2.0).abs() < 1e-9);
    assert!(!cat.algebra.is_euler(&two_h));
}

#[test]
fn aff_grading_is_x_h_split() {
    let cat = catalog("aff").unwrap();
    let s = cat.algebra.euler_structure(cat.element("h").unwrap()).unwrap();
    assert_eq!(s.grading_dims(), (0, 1, 1));
    // g_1 = R x: the plus projector fixes x
    let x = cat.element("x").unwrap();
    let px = &s.p_plus * nalgebra::DVector::from_column_slice(x.coords());
    assert!((px - nalgebra::DVector::from_column_slice(x.coords())).amax() < 1e-12);
}

#[test]
fn sl3_grading_dims_match_eigensolve() {
    let cat = catalog("sl3").unwrap();
    let h = cat.element("h").unwrap();
    let s = cat.algebra.euler_structure(h).unwrap();
    assert_eq!(s.grading_dims(), (2, 4, 2));
    // oracle: count eigenvalues of ad h near each grade
    let eigs = cat.algebra.ad(h).complex_eigenvalues();
    let count = |target: f64| eigs.iter().filter(|e| (e.re - target).abs() < 1e-9 && e.im.abs() < 1e-9).count();
    assert_eq!((count(-1.0), count(0.0), count(1.0)), (2, 4, 2));
}

#[test]
fn zeta_matches_matrix_exponential_oracle() {
    for name in ["aff", "sl2", "split_oscillator", "sl3"] {
        let cat = catalog(name).unwrap();
        let h = cat.element("h").unwrap();
        let s = cat.algebra.euler_structure(h).unwrap();
        let n = cat.algebra.dim();
        let ad = cat.algebra.ad(h);
        let mut m = DMatrix::<Complex64>::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                m[(r, c)] = Complex64::new(0.0, -std::f64::consts::FRAC_PI_2) * ad[(r, c)];
            }
        }
        let exp = mat_exp(&m);
        let worst = (exp - &s.zeta).iter().map(|z| z.norm()).fold(0.0, f64::max);
        assert!(worst < 1e-9, "zeta mismatch for {name}");
    }
}

#[test]
fn zeta_on_aff_sends_ix_to_x() {
    let cat = catalog("aff").unwrap();
    let s = cat.algebra.euler_structure(cat.element("h").unwrap()).unwrap();
    // zeta(x) = -i x on g_1, hence zeta(i x) = x
    let zx = s.zeta_apply(cat.element("x").unwrap());
    assert!((zx[0] - Complex64::new(0.0, -1.0)).norm() < 1e-12);
    assert!(zx[1].norm() < 1e-12);
}

#[test]
fn tau_h_is_an_involutive_automorphism() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for name in ["aff", "sl2", "split_oscillator", "sl3"] {
        let cat = catalog(name).unwrap();
        let s = cat.algebra.euler_structure(cat.element("h").unwrap()).unwrap();
        let n = cat.algebra.dim();
        let id = DMatrix::<f64>::identity(n, n);
        assert!((&s.tau_h * &s.tau_h - &id).amax() < 1e-12);
        assert!((&s.p_minus + &s.p_zero + &s.p_plus - &id).amax() < 1e-12);
        for _ in 0..20 {
            let u = LieElement((0..n).map(|_| rng.gen_range(-1.0..1.0)).collect());
            let v = LieElement((0..n).map(|_| rng.gen_range(-1.0..1.0)).collect());
            let lhs = &s.tau_h * cat.algebra.bracket(&u, &v).unwrap().as_dvector();
            let tu = LieElement((&s.tau_h * u.as_dvector()).as_slice().to_vec());
            let tv = LieElement((&s.tau_h * v.as_dvector()).as_slice().to_vec());
            let rhs = cat.algebra.bracket(&tu, &tv).unwrap().as_dvector();
            assert!((lhs - rhs).amax() < 1e-12, "tau_h not an automorphism of {name}");
        }
    }
}

#[test]
fn grading_brackets_land_in_the_right_grade() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for name in ["aff", "sl2", "split_oscillator", "sl3"] {
        let cat = catalog(name).unwrap();
        let s = cat.algebra.euler_structure(cat.element("h").unwrap()).unwrap();
        let n = cat.algebra.dim();
        let projs = [(-1i32, &s.p_minus), (0, &s.p_zero), (1, &s.p_plus)];
        for _ in 0..10 {
            let u = nalgebra::DVector::from_fn(n, |_, _| rng.gen_range(-1.0..1.0_f64));
            let v = nalgebra::DVector::from_fn(n, |_, _| rng.gen_range(-1.0..1.0_f64));
            for (lu, pu) in projs {
                for (lv, pv) in projs {
                    let a = LieElement((pu * &u).as_slice().to_vec());
                    let b = LieElement((pv * &v).as_slice().to_vec());
                    let br = cat.algebra.bracket(&a, &b).unwrap().as_dvector();
                    let sum = lu + lv;
                    let residual = if (-1..=1).contains(&sum) {
                        let p = projs.iter().find(|(l, _)| *l == sum).unwrap().1;
                        (p * &br - &br).amax()
                    } else {
                        br.amax()
                    };
                    assert!(residual < 1e-12, "grade leak {lu}+{lv} in {name}");
                }
            }
        }
    }
}

#[test]
fn catalog_euler_elements_satisfy_cubic_identity() {
    for name in ["aff", "sl2", "split_oscillator", "sl3"] {
        let cat = catalog(name).unwrap();
        let a = cat.algebra.ad(cat.element("h").unwrap());
        assert!(((&a * &a * &a) - &a).amax() < 1e-12, "cubic identity fails for {name}");
    }
}

#[test]
fn classify_oscillator_hyperplanes() {
    let cat = oscillator();
    let g = &cat.algebra;
    let yes = LieElement::from_slice(&[5.0, 3.0, -1.0, 1.0]); // h + 3q - p + 5z
    let no = LieElement::from_slice(&[0.0, 1.0, 0.0, 0.0]); // q
    let neg = LieElement::from_slice(&[1.0, 0.0, 0.0, -1.0]); // -h + z
    assert!(classify_euler_split_oscillator(g, &yes).unwrap());
    assert!(g.is_euler(&yes));
    assert!(!classify_euler_split_oscillator(g, &no).unwrap());
    assert!(!g.is_euler(&no));
    assert!(classify_euler_split_oscillator(g, &neg).unwrap());
    assert!(g.is_euler(&neg));
}

#[test]
fn classify_rejects_other_algebras() {
    let cat = catalog("heis").unwrap();
    let x = LieElement::zero(3);
    assert!(matches!(
        classify_euler_split_oscillator(&cat.algebra, &x),
        Err(Error::WrongAlgebra(_))
    ));
}

#[test]
fn classification_agrees_with_euler_test_on_samples() {
    let cat = oscillator();
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for trial in 0..2000 {
        let mut coords: Vec<f64> = (0..4).map(|_| rng.gen_range(-2.0..2.0)).collect();
        if trial % 2 == 0 {
            coords[3] = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        }
        let x = LieElement(coords);
        let by_hyperplane = classify_euler_split_oscillator(&cat.algebra, &x).unwrap();
        assert_eq!(by_hyperplane, cat.algebra.is_euler(&x));
    }
}

#[test]
fn splitting_of_the_oscillator_recovers_heisenberg() {
    let cat = oscillator();
    let (ideal, h) = cat.algebra.solvable_splitting(cat.element("h").unwrap()).unwrap();
    assert_eq!(ideal.len(), 3);
    assert_eq!(h, *cat.element("h").unwrap());
    // the ideal is span(z, q, p): no h-component anywhere
    for v in &ideal {
        assert!(v.coords()[3].abs() < 1e-12);
    }
}

#[test]
fn splitting_of_aff_recovers_translations() {
    let cat = catalog("aff").unwrap();
    let (ideal, _) = cat.algebra.solvable_splitting(cat.element("h").unwrap()).unwrap();
    assert_eq!(ideal.len(), 1);
    assert!(ideal[0].coords()[1].abs() < 1e-12);
    assert!(ideal[0].coords()[0].abs() > 0.9);
}

#[test]
fn splitting_rejects_central_elements() {
    let c = zeros2();
    let abelian = LieAlgebra::new(vec!["a".into(), "b".into()], c).unwrap();
    let h = LieElement::from_slice(&[1.0, 0.0]);
    assert!(matches!(abelian.solvable_splitting(&h), Err(Error::CentralElement)));
}

#[test]
fn splitting_rejects_non_solvable() {
    let cat = catalog("sl2").unwrap();
    assert!(!cat.algebra.is_solvable());
    assert!(matches!(
        cat.algebra.solvable_splitting(cat.element("h").unwrap()),
        Err(Error::NotSolvable)
    ));
}

fn zeros2() -> Vec<Vec<Vec<f64>>> {
    vec![vec![vec![0.0; 2]; 2]; 2]
}

#[test]
fn catalog_rejects_unknown_name() {
    assert!(matches!(catalog("so8"), Err(Error::UnknownAlgebra(_))));
}

#[test]
fn sl3_embedding_satisfies_oscillator_relations() {
    let cat = catalog("sl3").unwrap();
    let g = &cat.algebra;
    let (h, q, p, z) = (
        cat.element("h").unwrap(),
        cat.element("q").unwrap(),
        cat.element("p").unwrap(),
        cat.element("z").unwrap(),
    );
    for (a, b, want) in [
        (q, p, z.clone()),
        (h, q, q.clone()),
        (h, p, p.scaled(-1.0)),
        (h, z, LieElement::zero(8)),
    ] {
        let got = g.bracket(a, b).unwrap();
        let diff: f64 =
            got.coords().iter().zip(want.coords()).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
        assert!(diff < 1e-12);
    }
}

#[test]
fn sl3_matrix_commutator_oracle() {
    // [q, p] = z holds for the 3x3 matrices themselves
    let mats = sl3_basis_matrices();
    let get = |name: &str| mats.iter().find(|(n, _)| n == name).unwrap().1;
    let (q, p, z) = (get("E12"), get("E23"), get("E13"));
    let mut comm = [[0.0_f64; 3]; 3];
    for r in 0..3 {
        for c in 0..3 {
            for k in 0..3 {
                comm[r][c] += q[r][k] * p[k][c] - p[r][k] * q[k][c];
            }
        }
    }
    for r in 0..3 {
        for c in 0..3 {
            assert!((comm[r][c] - z[r][c]).abs() < 1e-15);
        }
    }
}

#[test]
fn heis_derived_series() {
    let cat = catalog("heis").unwrap();
    let d1 = cat.algebra.derived_subalgebra_basis();
    assert_eq!(d1.len(), 1);
    assert!((d1[0][0].abs() - 1.0).abs() < 1e-12); // [g, g] = R z
    assert!(cat.algebra.is_solvable());
}

#[test]
fn jacobi_residuals_of_catalog_algebras() {
    for name in ["aff", "sl2", "heis", "split_oscillator", "sl3"] {
        let cat = catalog(name).unwrap();
        assert!(cat.algebra.jacobi_residual() < 1e-12, "Jacobi residual too large for {name}");
    }
}

#[test]
fn fixed_subspace_of_an_ideal_is_invariant() {
    // joint kernel of ad(n) over the Heisenberg ideal of the oscillator,
    // inside the adjoint module, must be invariant under the full algebra
    let cat = oscillator();
    let g = &cat.algebra;
    let (ideal, _) = g.solvable_splitting(cat.element("h").unwrap()).unwrap();
    let n = g.dim();
    let mut stacked = DMatrix::<f64>::zeros(n * ideal.len(), n);
    for (b, v) in ideal.iter().enumerate() {
        let ad = g.ad(v);
        for r in 0..n {
            for cidx in 0..n {
                stacked[(b * n + r, cidx)] = ad[(r, cidx)];
            }
        }
    }
    let svd = stacked.svd(true, true);
    let v_t = svd.v_t.unwrap();
    let mut kernel: Vec<nalgebra::DVector<f64>> = Vec::new();
    for (i, s) in svd.singular_values.iter().enumerate() {
        if *s < 1e-9 {
            kernel.push(v_t.row(i).transpose());
        }
    }
    assert!(!kernel.is_empty());
    // invariance: ad(e_k) maps the kernel into itself
    for k in 0..n {
        let ad = g.ad(&LieElement::basis_vector(n, k));
        for v in &kernel {
            let img = &ad * v;
            let mut residual = img.clone();
            for b in &kernel {
                let p = residual.dot(b) / b.dot(b);
                residual -= b * p;
            }
            assert!(residual.amax() < 1e-9);
        }
    }
}

#[test]
fn json_loader_roundtrip_and_validation() {
    let good = r#"{"dim": 2, "names": ["x", "h"], "c": [[[0,0],[-1,0]],[[1,0],[0,0]]]}"#;
    let alg = LieAlgebra::from_json_str(good).unwrap();
    assert_eq!(alg.dim(), 2);
    assert_eq!(alg.basis_names()[1], "h");
    let x = LieElement::from_slice(&[1.0, 0.0]);
    let h = LieElement::from_slice(&[0.0, 1.0]);
    assert_eq!(alg.bracket(&h, &x).unwrap(), x);

    let bad_antisym = r#"{"dim": 2, "c": [[[0,0],[1,0]],[[1,0],[0,0]]]}"#;
    assert!(LieAlgebra::from_json_str(bad_antisym).is_err());
    let bad_dim = r#"{"dim": 3, "c": [[[0,0],[0,0]],[[0,0],[0,0]]]}"#;
    assert!(LieAlgebra::from_json_str(bad_dim).is_err());
    assert!(LieAlgebra::from_json_str("not json").is_err());
}

#[test]
fn json_loader_rejects_jacobi_violation() {
    // antisymmetric but fails Jacobi: [e0,e1] = e2, [e0,e2] = e0
    let s = r#"{"dim": 3, "c": [
        [[0,0,0],[0,0,1],[1,0,0]],
        [[0,0,-1],[0,0,0],[0,0,0]],
        [[-1,0,0],[0,0,0],[0,0,0]]]}"#;
    let r = LieAlgebra::from_json_str(s);
    assert!(matches!(r, Err(Error::InvalidAlgebra(msg)) if msg.contains("Jacobi")));
}

#[test]
fn wedge_data_of_the_oscillator() {
    let cat = oscillator();
    let s = cat.algebra.euler_structure(cat.element("h").unwrap()).unwrap();
    let w = s.wedge_data();
    // g^{-tau} = span(q, p), centralizer = span(z, h)
    assert_eq!(w.omega_prime_basis.len(), 2);
    assert_eq!(w.omega_basis.len(), 2);
    assert_eq!(w.centralizer_basis.len(), 2);
    for v in &w.omega_prime_basis {
        // fixed by -tau_h: tau v = -v
        let tv = &s.tau_h * v.as_dvector();
        assert!((tv + v.as_dvector()).amax() < 1e-12);
        // no z or h component
        assert!(v.coords()[0].abs() < 1e-12 && v.coords()[3].abs() < 1e-12);
    }
    for v in &w.omega_basis {
        let tv = &s.tau_h * v.as_dvector();
        assert!((tv + v.as_dvector()).amax() < 1e-12);
    }
    // [h, g^h] = 0
    for v in &w.centralizer_basis {
        let br = cat.algebra.bracket(cat.element("h").unwrap(), v).unwrap();
        assert!(br.norm_inf() < 1e-12);
    }
}

#[test]
fn wedge_data_of_aff_is_the_translation_ray() {
    let cat = catalog("aff").unwrap();
    let s = cat.algebra.euler_structure(cat.element("h").unwrap()).unwrap();
    let w = s.wedge_data();
    assert_eq!(w.omega_prime_basis.len(), 1);
    // on a grade-(+1) vector the flip x_1 - x_{-1} is the identity
    assert_eq!(w.omega_basis.len(), 1);
    let diff: f64 = w.omega_prime_basis[0]
        .coords()
        .iter()
        .zip(w.omega_basis[0].coords())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    assert!(diff < 1e-12);
    assert_eq!(w.centralizer_basis.len(), 1);
    assert!(w.centralizer_basis[0].coords()[0].abs() < 1e-12);
}
