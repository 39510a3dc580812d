use cusp_core::{CuspShape, ElasticModuli};
use cusp_fem::generate::self_similar_count;
use cusp_fem::solve::quadratic_energy;
use cusp_fem::*;
use proptest::prelude::*;

fn unit() -> ElasticModuli {
    ElasticModuli::new(1.0, 1.0, 1.0).unwrap()
}

fn ridge(m: f64, rho: f64) -> Mesh {
    let shape = CuspShape::from_horn(1.0, m).unwrap();
    let n_s = self_similar_count(rho, 1.0, 0.85);
    generate_ridge_mesh(&shape, rho, 1.0, n_s, 8, 0.85).unwrap()
}

fn gorge(m: f64) -> Mesh {
    let shape = CuspShape::from_graph(1.0, 1.0 / m).unwrap();
    generate_gorge_mesh(&shape, 0.5, 0.5, GorgeResolution::default()).unwrap()
}

const G: [[f64; 2]; 2] = [[1e-3, 4e-4], [-2e-4, 5e-4]];

fn patch_test(mesh: &Mesh) {
    let tags: Vec<BoundaryTag> = mesh.groups().keys().copied().collect();
    let bcs: Vec<Dirichlet> = tags.iter().map(|&t| Dirichlet::linear(t, G)).collect();
    let sol = solve_static(mesh, &unit(), &bcs, &Loads::default()).unwrap();
    let scale = mesh
        .nodes()
        .iter()
        .map(|p| p[0].abs().max(p[1].abs()))
        .fold(0.0, f64::max)
        * 1e-3;
    for (p, u) in mesh.nodes().iter().zip(&sol.displacement) {
        let exact = [
            G[0][0] * p[0] + G[0][1] * p[1],
            G[1][0] * p[0] + G[1][1] * p[1],
        ];
        assert!(
            (u[0] - exact[0]).abs() <= 1e-10 * scale && (u[1] - exact[1]).abs() <= 1e-10 * scale
        );
    }
    // sigma = lambda tr(e) I + 2 mu e with lambda = mu = 1
    let tr = G[0][0] + G[1][1];
    let (sxx, syy, sxy) = (tr + 2.0 * G[0][0], tr + 2.0 * G[1][1], G[0][1] + G[1][0]);
    for s in &sol.element_stress {
        assert!((s.xx - sxx).abs() < 1e-10 * sxx.abs());
        assert!((s.yy - syy).abs() < 1e-10 * sxx.abs());
        assert!((s.xy - sxy).abs() < 1e-10 * sxx.abs());
    }
}

#[test]
fn patch_test_ridge_mesh() {
    patch_test(&ridge(2.4, 0.01));
}

#[test]
fn patch_test_gorge_mesh() {
    patch_test(&gorge(2.4));
}

#[test]
fn equilibrium_and_energy_identity() {
    let mesh = ridge(2.4, 0.01);
    let k = assemble(&mesh, &unit());
    assert_eq!(k.asymmetry(), 0.0);
    let loads = Loads {
        body_force: [1.0, 0.0],
        tractions: vec![(BoundaryTag::Terminal, [-50.0, 0.0])],
    };
    let sol = apply_bc_and_solve(
        &mesh,
        &unit(),
        &k,
        &[Dirichlet::fixed(BoundaryTag::Remote)],
        &loads,
        SolverChoice::Auto,
    )
    .unwrap();
    let r = sol.reactions[&BoundaryTag::Remote];
    let scale = sol.applied[0].abs().max(r[0].abs());
    assert!(
        (r[0] + sol.applied[0]).abs() < 1e-8 * scale,
        "{r:?} vs {:?}",
        sol.applied
    );
    assert!((r[1] + sol.applied[1]).abs() < 1e-8 * scale);
    let e = sol.total_energy();
    assert!((e - quadratic_energy(&k, &sol.displacement)).abs() < 1e-12 * e);
    assert!((e - 0.5 * sol.external_work).abs() < 1e-8 * e);
}

#[test]
fn gorge_equilibrium_under_remote_strain() {
    let mesh = gorge(2.4);
    let bc = [Dirichlet::linear(
        BoundaryTag::Outer,
        [[1e-3, 0.0], [0.0, 0.0]],
    )];
    let sol = solve_static(&mesh, &unit(), &bc, &Loads::default()).unwrap();
    let r = sol.reactions[&BoundaryTag::Outer];
    let scale = sol
        .element_stress
        .iter()
        .map(|s| s.norm())
        .fold(0.0, f64::max);
    assert!(
        r[0].abs() < 1e-8 * scale && r[1].abs() < 1e-8 * scale,
        "{r:?}"
    );
    let e = sol.total_energy();
    assert!((e - 0.5 * sol.external_work).abs() < 1e-8 * e);
}

#[test]
fn resultants_constant_along_unloaded_horn() {
    // a thick horn carrying a tip force and no body load
    let shape = CuspShape::from_horn(0.5, 1.5).unwrap();
    let mesh = generate_ridge_mesh(&shape, 0.1, 1.0, 80, 32, 0.975).unwrap();
    let (n0, q0) = (1.0, 0.2);
    let b = 0.5 * 0.1f64.powf(1.5);
    let loads = Loads {
        tractions: vec![(BoundaryTag::Terminal, [-n0 / (2.0 * b), -q0 / (2.0 * b)])],
        ..Loads::default()
    };
    let sol = solve_static(
        &mesh,
        &unit(),
        &[Dirichlet::fixed(BoundaryTag::Remote)],
        &loads,
    )
    .unwrap();
    let sections = [0.2, 0.3, 0.45, 0.6, 0.75];
    let rs: Vec<Resultants> = sections
        .iter()
        .map(|&s| sectional_resultants(&sol, &mesh, s).unwrap())
        .collect();
    for (s, r) in sections.iter().zip(&rs) {
        assert!((r.n - n0).abs() < 0.02 * n0, "N({s}) = {}", r.n);
        assert!((r.q - q0).abs() < 0.02 * q0, "Q({s}) = {}", r.q);
    }
    let flux: Vec<f64> = sections
        .iter()
        .zip(&rs)
        .map(|(&s, r)| r.moment_flux(s))
        .collect();
    // the terminal traction has moment arm 0.1 about the origin
    let want = 0.1 * q0;
    for f in flux {
        assert!((f - want).abs() < 0.02 * want.abs(), "flux {f} vs {want}");
    }
    assert!(sectional_resultants(&sol, &mesh, 2.0).is_err());
}

#[test]
fn zero_field_has_zero_resultants() {
    let mesh = ridge(2.0, 0.05);
    let sol = solve_static(
        &mesh,
        &unit(),
        &[Dirichlet::fixed(BoundaryTag::Remote)],
        &Loads::default(),
    )
    .unwrap();
    assert_eq!(
        sectional_resultants(&sol, &mesh, 0.3).unwrap(),
        Resultants::default()
    );
}

#[test]
fn percentile_of_uniform_field_and_monotonicity() {
    let mesh = generate_rectangle(2.0, 1.0, 6, 3).unwrap();
    let bcs: Vec<Dirichlet> = mesh
        .groups()
        .keys()
        .map(|&t| Dirichlet::linear(t, G))
        .collect();
    let sol = solve_static(&mesh, &unit(), &bcs, &Loads::default()).unwrap();
    let want = sol.element_stress[0].norm();
    let p = stress_percentile(&sol, &mesh, |_| true, 95.0).unwrap();
    assert!((p - want).abs() < 1e-12 * want);
    assert!(matches!(
        stress_percentile(&sol, &mesh, |c| c[0] > 5.0, 95.0),
        Err(Error::EmptyRegion)
    ));

    let mesh = ridge(2.4, 0.02);
    let sol = solve_static(
        &mesh,
        &unit(),
        &[Dirichlet::fixed(BoundaryTag::Remote)],
        &Loads {
            body_force: [1.0, 0.0],
            ..Loads::default()
        },
    )
    .unwrap();
    let mut last = 0.0;
    for pct in [0.0, 25.0, 50.0, 75.0, 95.0, 100.0] {
        let v = stress_percentile(&sol, &mesh, |c| c[0] < 0.2, pct).unwrap();
        assert!(v >= last);
        last = v;
    }
}

#[test]
fn mesh_text_round_trip() {
    let mesh = gorge(1.8);
    let text = mesh.to_text();
    let back = Mesh::from_text(&text).unwrap();
    assert_eq!(back, mesh);
    assert_eq!(back.to_text(), text);
}

#[test]
fn solves_are_bit_reproducible() {
    let mesh = ridge(2.4, 0.01);
    let loads = Loads {
        body_force: [1.0, 0.0],
        ..Loads::default()
    };
    let a = solve_static(
        &mesh,
        &unit(),
        &[Dirichlet::fixed(BoundaryTag::Remote)],
        &loads,
    )
    .unwrap();
    let b = solve_static(
        &mesh,
        &unit(),
        &[Dirichlet::fixed(BoundaryTag::Remote)],
        &loads,
    )
    .unwrap();
    assert_eq!(a, b);
}

#[test]
fn direct_and_iterative_agree_on_gorge() {
    let shape = CuspShape::from_graph(1.0, 1.0 / 2.4).unwrap();
    let res = GorgeResolution {
        inner_ratio: 1e-2,
        ..GorgeResolution::default()
    };
    let mesh = generate_gorge_mesh(&shape, 0.5, 0.5, res).unwrap();
    let k = assemble(&mesh, &unit());
    let bc = [Dirichlet::linear(
        BoundaryTag::Outer,
        [[1e-3, 0.0], [0.0, 0.0]],
    )];
    let d = apply_bc_and_solve(
        &mesh,
        &unit(),
        &k,
        &bc,
        &Loads::default(),
        SolverChoice::Direct,
    )
    .unwrap();
    let c = apply_bc_and_solve(
        &mesh,
        &unit(),
        &k,
        &bc,
        &Loads::default(),
        SolverChoice::ConjugateGradient,
    )
    .unwrap();
    let scale = d
        .displacement
        .iter()
        .flatten()
        .fold(0.0f64, |a, b| a.max(b.abs()));
    for (u, v) in d
        .displacement
        .iter()
        .flatten()
        .zip(c.displacement.iter().flatten())
    {
        assert!((u - v).abs() < 1e-7 * scale);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn ridge_elements_positive(m in 1.2f64..3.0, rho in 0.003f64..0.1, n_eta in 4usize..12) {
        let shape = CuspShape::from_horn(1.0, m).unwrap();
        let n_s = self_similar_count(rho, 1.0, 0.85).max(4);
        let mesh = generate_ridge_mesh(&shape, rho, 1.0, n_s, n_eta, 0.85).unwrap();
        prop_assert!(mesh.quality().min_area > 0.0);
        for p in mesh.nodes() {
            prop_assert!(p[1].abs() <= p[0].powf(m) + 1e-12);
        }
    }

    #[test]
    fn element_stiffness_rigid_kernel(
        pts in prop::array::uniform3(prop::array::uniform2(-1.0f64..1.0)),
    ) {
        let area = 0.5 * ((pts[1][0] - pts[0][0]) * (pts[2][1] - pts[0][1]) - (pts[2][0] - pts[0][0]) * (pts[1][1] - pts[0][1]));
        prop_assume!(area > 1e-3);
        let k = cusp_fem::assembly::element_stiffness(pts, &unit());
        let modes: [[f64; 6]; 3] = [
            [1.0, 0.0, 1.0, 0.0, 1.0, 0.0],
            [0.0, 1.0, 0.0, 1.0, 0.0, 1.0],
            [-pts[0][1], pts[0][0], -pts[1][1], pts[1][0], -pts[2][1], pts[2][0]],
        ];
        let kmax = k.iter().flatten().fold(0.0f64, |a, b| a.max(b.abs()));
        for mode in modes {
            for row in &k {
                let v: f64 = row.iter().zip(mode).map(|(a, b)| a * b).sum();
                prop_assert!(v.abs() < 1e-12 * kmax);
            }
        }
    }
}
