//! Constant-strain triangle stiffness in plane strain.

use rayon::prelude::*;

use cusp_core::{ElasticModuli, Stress2};

use crate::mesh::Mesh;
use crate::sparse::CsrMatrix;

/// Strain-displacement matrix rows `(e_xx, e_yy, gamma_xy)` of a triangle
/// and its area.
pub fn strain_matrix(p: [[f64; 2]; 3]) -> ([[f64; 6]; 3], f64) {
    let area = 0.5
        * ((p[1][0] - p[0][0]) * (p[2][1] - p[0][1]) - (p[2][0] - p[0][0]) * (p[1][1] - p[0][1]));
    let mut bm = [[0.0; 6]; 3];
    for i in 0..3 {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        let b = (p[j][1] - p[k][1]) / (2.0 * area);
        let c = (p[k][0] - p[j][0]) / (2.0 * area);
        bm[0][2 * i] = b;
        bm[1][2 * i + 1] = c;
        bm[2][2 * i] = c;
        bm[2][2 * i + 1] = b;
    }
    (bm, area)
}

fn constitutive(m: &ElasticModuli) -> [[f64; 3]; 3] {
    let p = m.lambda + 2.0 * m.mu;
    [[p, m.lambda, 0.0], [m.lambda, p, 0.0], [0.0, 0.0, m.mu]]
}

/// Element stiffness `A B^T D B` (unit thickness).
pub fn element_stiffness(p: [[f64; 2]; 3], moduli: &ElasticModuli) -> [[f64; 6]; 6] {
    let (bm, area) = strain_matrix(p);
    let d = constitutive(moduli);
    let mut db = [[0.0; 6]; 3];
    for r in 0..3 {
        for c in 0..6 {
            db[r][c] = (0..3).map(|k| d[r][k] * bm[k][c]).sum();
        }
    }
    let mut k = [[0.0; 6]; 6];
    for i in 0..6 {
        for j in i..6 {
            k[i][j] = area * (0..3).map(|r| bm[r][i] * db[r][j]).sum::<f64>();
            k[j][i] = k[i][j];
        }
    }
    k
}

/// In-plane stress of an element from its six nodal displacements.
pub fn element_stress(
    p: [[f64; 2]; 3],
    u: &[f64; 6],
    moduli: &ElasticModuli,
) -> (Stress2, [f64; 3]) {
    let (bm, _) = strain_matrix(p);
    let e: [f64; 3] = std::array::from_fn(|r| (0..6).map(|c| bm[r][c] * u[c]).sum());
    let d = constitutive(moduli);
    let s: [f64; 3] = std::array::from_fn(|r| (0..3).map(|k| d[r][k] * e[k]).sum());
    (Stress2::new(s[0], s[1], s[2]), e)
}

pub(crate) fn element_points(mesh: &Mesh, t: usize) -> [[f64; 2]; 3] {
    mesh.triangles()[t].map(|i| mesh.nodes()[i])
}

pub(crate) fn element_dofs(tri: &[usize; 3]) -> [usize; 6] {
    [
        2 * tri[0],
        2 * tri[0] + 1,
        2 * tri[1],
        2 * tri[1] + 1,
        2 * tri[2],
        2 * tri[2] + 1,
    ]
}

/// Global stiffness on `2 * nodes` unknowns ordered `(u_x, u_y)` per node.
///
/// Element matrices are formed in parallel; the sum runs serially in
/// element order so results are bit-reproducible.
pub fn assemble(mesh: &Mesh, moduli: &ElasticModuli) -> CsrMatrix {
    let n_nodes = mesh.nodes().len();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n_nodes];
    for t in mesh.triangles() {
        for &a in t {
            adj[a].extend_from_slice(t);
        }
    }
    let mut rows = Vec::with_capacity(2 * n_nodes);
    for mut nb in adj {
        nb.sort_unstable();
        nb.dedup();
        let cols: Vec<usize> = nb.iter().flat_map(|&v| [2 * v, 2 * v + 1]).collect();
        rows.push(cols.clone());
        rows.push(cols);
    }
    let mut k = CsrMatrix::from_pattern(rows);
    let locals: Vec<[[f64; 6]; 6]> = (0..mesh.triangles().len())
        .into_par_iter()
        .map(|t| element_stiffness(element_points(mesh, t), moduli))
        .collect();
    for (tri, ke) in mesh.triangles().iter().zip(&locals) {
        let dofs = element_dofs(tri);
        for i in 0..6 {
            for j in 0..6 {
                *k.entry_mut(dofs[i], dofs[j])
                    .expect("pattern covers element couplings") += ke[i][j];
            }
        }
    }
    k
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit() -> ElasticModuli {
        ElasticModuli::new(1.0, 1.0, 1.0).unwrap()
    }

    #[test]
    fn unit_right_triangle() {
        let k = element_stiffness([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]], &unit());
        for (i, row) in k.iter().enumerate() {
            for (j, kij) in row.iter().enumerate() {
                assert!((kij - k[j][i]).abs() < 1e-15);
            }
            // rigid translations in x and y
            let tx: f64 = (0..3).map(|a| k[i][2 * a]).sum();
            let ty: f64 = (0..3).map(|a| k[i][2 * a + 1]).sum();
            assert!(tx.abs() < 1e-14 && ty.abs() < 1e-14);
        }
        // infinitesimal rotation u = (-y, x)
        let rot = [0.0, 0.0, 0.0, 1.0, -1.0, 0.0];
        for row in &k {
            assert!(row.iter().zip(rot).map(|(a, b)| a * b).sum::<f64>().abs() < 1e-14);
        }
        // (lambda + 2 mu) / 2 on the x-x diagonal of node 1
        assert!((k[2][2] - 1.5).abs() < 1e-15);
    }

    #[test]
    fn stress_of_linear_field() {
        let p = [[0.2, 0.1], [1.3, 0.4], [0.5, 1.2]];
        // u = (0.01 x + 0.02 y, 0.03 x - 0.005 y)
        let u: Vec<f64> = p
            .iter()
            .flat_map(|q| [0.01 * q[0] + 0.02 * q[1], 0.03 * q[0] - 0.005 * q[1]])
            .collect();
        let (s, e) = element_stress(p, &u.try_into().unwrap(), &unit());
        assert!(
            (e[0] - 0.01).abs() < 1e-15
                && (e[1] + 0.005).abs() < 1e-15
                && (e[2] - 0.05).abs() < 1e-15
        );
        assert!((s.xx - (3.0 * 0.01 - 0.005)).abs() < 1e-15);
        assert!((s.xy - 0.05).abs() < 1e-15);
    }
}
