//! Boundary conditions, loads and the static solve.

use std::collections::BTreeMap;

use rayon::prelude::*;

use cusp_core::{ElasticModuli, Stress2};

use crate::assembly::{assemble, element_dofs, element_points, element_stress};
use crate::error::{invalid, Error, Result};
use crate::mesh::{BoundaryTag, Mesh};
use crate::sparse::{solve_spd, CsrMatrix, SolveReport, SolverChoice};

/// Prescribed component `offset + gradient . x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Affine {
    pub offset: f64,
    pub gradient: [f64; 2],
}

impl Affine {
    pub const ZERO: Affine = Affine {
        offset: 0.0,
        gradient: [0.0, 0.0],
    };

    pub fn constant(offset: f64) -> Self {
        Affine {
            offset,
            gradient: [0.0, 0.0],
        }
    }

    pub fn at(&self, p: [f64; 2]) -> f64 {
        self.offset + self.gradient[0] * p[0] + self.gradient[1] * p[1]
    }
}

/// Displacement prescribed on the nodes of a group; `None` leaves a
/// component free. Later entries override earlier ones on shared nodes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dirichlet {
    pub tag: BoundaryTag,
    pub ux: Option<Affine>,
    pub uy: Option<Affine>,
}

impl Dirichlet {
    pub fn fixed(tag: BoundaryTag) -> Self {
        Dirichlet {
            tag,
            ux: Some(Affine::ZERO),
            uy: Some(Affine::ZERO),
        }
    }

    /// `u = G x`, with `G` given row-wise.
    pub fn linear(tag: BoundaryTag, g: [[f64; 2]; 2]) -> Self {
        Dirichlet {
            tag,
            ux: Some(Affine {
                offset: 0.0,
                gradient: g[0],
            }),
            uy: Some(Affine {
                offset: 0.0,
                gradient: g[1],
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Loads {
    /// Force per unit area.
    pub body_force: [f64; 2],
    /// Uniform traction (force per unit length) on a group.
    pub tractions: Vec<(BoundaryTag, [f64; 2])>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FieldSolution {
    pub displacement: Vec<[f64; 2]>,
    pub element_stress: Vec<Stress2>,
    /// `1/2 sigma : e * area`.
    pub element_energy: Vec<f64>,
    /// Net reaction force on each Dirichlet group.
    pub reactions: BTreeMap<BoundaryTag, [f64; 2]>,
    /// Net applied force (body plus tractions).
    pub applied: [f64; 2],
    /// Work of applied loads and reactions on the solved displacement.
    pub external_work: f64,
    pub report: SolveReport,
}

impl FieldSolution {
    pub fn total_energy(&self) -> f64 {
        self.element_energy.iter().sum()
    }

    pub fn stress_magnitude(&self, t: usize) -> f64 {
        self.element_stress[t].norm()
    }
}

/// Consistent nodal load vector.
pub fn load_vector(mesh: &Mesh, loads: &Loads) -> Vec<f64> {
    let mut f = vec![0.0; 2 * mesh.nodes().len()];
    if loads.body_force != [0.0, 0.0] {
        for (t, tri) in mesh.triangles().iter().enumerate() {
            let share = mesh.signed_area(t) / 3.0;
            for &v in tri {
                f[2 * v] += share * loads.body_force[0];
                f[2 * v + 1] += share * loads.body_force[1];
            }
        }
    }
    for &(tag, tr) in &loads.tractions {
        for e in mesh.group(tag) {
            let (a, b) = (mesh.nodes()[e[0]], mesh.nodes()[e[1]]);
            let half = 0.5 * (b[0] - a[0]).hypot(b[1] - a[1]);
            for &v in e {
                f[2 * v] += half * tr[0];
                f[2 * v + 1] += half * tr[1];
            }
        }
    }
    f
}

/// Solve `K u = f` with the Dirichlet rows and columns eliminated and their
/// values lifted into the load.
pub fn apply_bc_and_solve(
    mesh: &Mesh,
    moduli: &ElasticModuli,
    k: &CsrMatrix,
    dirichlet: &[Dirichlet],
    loads: &Loads,
    choice: SolverChoice,
) -> Result<FieldSolution> {
    let ndof = 2 * mesh.nodes().len();
    if k.dim() != ndof {
        return Err(invalid("operator size does not match the mesh"));
    }
    let mut prescribed: Vec<Option<f64>> = vec![None; ndof];
    let mut owner: Vec<Option<BoundaryTag>> = vec![None; ndof];
    for bc in dirichlet {
        if mesh.group(bc.tag).is_empty() {
            return Err(invalid(format!("Dirichlet group `{}` is empty", bc.tag)));
        }
        for v in mesh.group_nodes(bc.tag) {
            let p = mesh.nodes()[v];
            for (c, comp) in [bc.ux, bc.uy].into_iter().enumerate() {
                if let Some(a) = comp {
                    prescribed[2 * v + c] = Some(a.at(p));
                    owner[2 * v + c] = Some(bc.tag);
                }
            }
        }
    }
    let f = load_vector(mesh, loads);
    let mut u: Vec<f64> = prescribed.iter().map(|p| p.unwrap_or(0.0)).collect();
    let free: Vec<usize> = (0..ndof).filter(|&i| prescribed[i].is_none()).collect();

    // rhs = f_f - K_fc u_c
    let ku_c = k.mul_vec(&u);
    let rhs: Vec<f64> = free.iter().map(|&i| f[i] - ku_c[i]).collect();
    let kff = k.submatrix(&free);
    let (uf, report) = solve_spd(&kff, &rhs, choice)?;
    for (&i, x) in free.iter().zip(uf) {
        u[i] = x;
    }

    let ku = k.mul_vec(&u);
    let mut reactions: BTreeMap<BoundaryTag, [f64; 2]> =
        dirichlet.iter().map(|bc| (bc.tag, [0.0, 0.0])).collect();
    for (i, o) in owner.iter().enumerate() {
        if let Some(tag) = o {
            reactions.get_mut(tag).expect("owner is a Dirichlet tag")[i % 2] += ku[i] - f[i];
        }
    }
    let applied = [f.iter().step_by(2).sum(), f.iter().skip(1).step_by(2).sum()];
    let reaction_force: Vec<f64> = (0..ndof)
        .map(|i| {
            if owner[i].is_some() {
                ku[i] - f[i]
            } else {
                0.0
            }
        })
        .collect();
    let external_work = (0..ndof).map(|i| (f[i] + reaction_force[i]) * u[i]).sum();

    let displacement: Vec<[f64; 2]> = u.chunks_exact(2).map(|c| [c[0], c[1]]).collect();
    let per_element: Vec<(Stress2, f64)> = (0..mesh.triangles().len())
        .into_par_iter()
        .map(|t| {
            let p = element_points(mesh, t);
            let ue: [f64; 6] = element_dofs(&mesh.triangles()[t]).map(|d| u[d]);
            let (s, e) = element_stress(p, &ue, moduli);
            let energy = 0.5 * (s.xx * e[0] + s.yy * e[1] + s.xy * e[2]) * mesh.signed_area(t);
            (s, energy)
        })
        .collect();
    let (element_stress, element_energy) = per_element.into_iter().unzip();
    Ok(FieldSolution {
        displacement,
        element_stress,
        element_energy,
        reactions,
        applied,
        external_work,
        report,
    })
}

/// Assemble and solve with the automatic solver choice.
pub fn solve_static(
    mesh: &Mesh,
    moduli: &ElasticModuli,
    dirichlet: &[Dirichlet],
    loads: &Loads,
) -> Result<FieldSolution> {
    let k = assemble(mesh, moduli);
    apply_bc_and_solve(mesh, moduli, &k, dirichlet, loads, SolverChoice::Auto)
}

/// `1/2 u^T K u` for a nodal displacement field.
pub fn quadratic_energy(k: &CsrMatrix, displacement: &[[f64; 2]]) -> f64 {
    let u: Vec<f64> = displacement.iter().flatten().copied().collect();
    0.5 * u.iter().zip(k.mul_vec(&u)).map(|(a, b)| a * b).sum::<f64>()
}

pub(crate) fn ensure_nonempty<T>(v: &[T]) -> Result<()> {
    if v.is_empty() {
        Err(Error::EmptyRegion)
    } else {
        Ok(())
    }
}
