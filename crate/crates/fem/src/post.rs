//! Sectional resultants, stress percentiles and region energies.

use crate::error::{invalid, Result};
use crate::mesh::Mesh;
use crate::solve::{ensure_nonempty, FieldSolution};

/// Force and moment carried through a section `x = s` of a horn along `x`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Resultants {
    /// `int sigma_ss dn`.
    pub n: f64,
    /// `int sigma_sn dn`.
    pub q: f64,
    /// `int n sigma_ss dn`.
    pub m: f64,
}

impl Resultants {
    /// Moment of the section traction about the origin, `s Q - M`.
    pub fn moment_flux(&self, s: f64) -> f64 {
        s * self.q - self.m
    }
}

/// Resultants averaged over the element layer containing `x = s_value`.
///
/// The layer is bounded by the nearest node abscissae on either side;
/// elements are assigned by centroid. For a field with constant `N`, `Q` and
/// `sQ - M` the layer average reproduces them exactly, while pointwise cuts
/// through constant-strain elements scatter by a few percent.
pub fn sectional_resultants(
    solution: &FieldSolution,
    mesh: &Mesh,
    s_value: f64,
) -> Result<Resultants> {
    let lo = mesh
        .nodes()
        .iter()
        .map(|p| p[0])
        .filter(|&x| x <= s_value)
        .fold(f64::NEG_INFINITY, f64::max);
    let hi = mesh
        .nodes()
        .iter()
        .map(|p| p[0])
        .filter(|&x| x > s_value)
        .fold(f64::INFINITY, f64::min);
    if !(lo.is_finite() && hi.is_finite()) {
        return Err(invalid(format!("section x = {s_value} misses the mesh")));
    }
    let width = hi - lo;
    let mut r = Resultants::default();
    for t in 0..mesh.triangles().len() {
        let c = mesh.centroid(t);
        if !(lo < c[0] && c[0] < hi) {
            continue;
        }
        let a = mesh.signed_area(t) / width;
        let st = solution.element_stress[t];
        r.n += st.xx * a;
        r.q += st.xy * a;
        // y sigma_xx integrates exactly with the centroid for constant stress;
        // the x-shift keeps sQ - M consistent at the requested section
        r.m += (c[1] * st.xx - (c[0] - s_value) * st.xy) * a;
    }
    Ok(r)
}

/// Percentile with linear interpolation between order statistics.
pub fn percentile(values: &mut [f64], pct: f64) -> Result<f64> {
    ensure_nonempty(values)?;
    if !(0.0..=100.0).contains(&pct) {
        return Err(invalid("percentile must lie in [0, 100]"));
    }
    values.sort_by(f64::total_cmp);
    let pos = pct / 100.0 * (values.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    Ok(values[lo] + (values[hi] - values[lo]) * (pos - lo as f64))
}

/// `pct`-percentile of element `|sigma|` (Frobenius) over elements whose
/// centroid satisfies `region`.
pub fn stress_percentile<F: Fn([f64; 2]) -> bool>(
    solution: &FieldSolution,
    mesh: &Mesh,
    region: F,
    pct: f64,
) -> Result<f64> {
    let mut v: Vec<f64> = (0..mesh.triangles().len())
        .filter(|&t| region(mesh.centroid(t)))
        .map(|t| solution.stress_magnitude(t))
        .collect();
    percentile(&mut v, pct)
}

/// Elastic energy of the elements whose centroid satisfies `region`.
pub fn region_energy<F: Fn([f64; 2]) -> bool>(
    solution: &FieldSolution,
    mesh: &Mesh,
    region: F,
) -> f64 {
    (0..mesh.triangles().len())
        .filter(|&t| region(mesh.centroid(t)))
        .map(|t| solution.element_energy[t])
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn percentile_matches_linear_interpolation() {
        let mut v = vec![4.0, 1.0, 3.0, 2.0, 5.0];
        assert_eq!(percentile(&mut v, 50.0).unwrap(), 3.0);
        assert!((percentile(&mut v, 95.0).unwrap() - 4.8).abs() < 1e-15);
        assert_eq!(percentile(&mut [7.0; 3], 95.0).unwrap(), 7.0);
        assert!(percentile(&mut [], 95.0).is_err());
        assert!(percentile(&mut [1.0], 101.0).is_err());
    }
}
