//! Structured meshes for the ridge, the gorge and a test rectangle.

use std::collections::BTreeMap;

use cusp_core::CuspShape;

use crate::error::{invalid, Error, Result};
use crate::mesh::{BoundaryTag, Mesh};

/// Abscissae `s_0 = a < ... < s_n = b` with `h_{i+1} = h_i / grading`, so the
/// cells shrink toward `a` when `grading < 1`.
pub fn graded_points(a: f64, b: f64, n: usize, grading: f64) -> Vec<f64> {
    let r = 1.0 / grading;
    let weights: Vec<f64> = (0..n).map(|i| r.powi(i as i32)).collect();
    let total: f64 = weights.iter().sum();
    let mut pts = Vec::with_capacity(n + 1);
    let mut acc = 0.0;
    pts.push(a);
    for w in &weights[..n - 1] {
        acc += w;
        pts.push(a + (b - a) * acc / total);
    }
    pts.push(b);
    pts
}

/// Smallest cell count along `[a, b]` whose cells near `a` stay no larger
/// than about `(1/grading - 1) a`, i.e. cells proportional to distance.
pub fn self_similar_count(a: f64, b: f64, grading: f64) -> usize {
    ((b / a).ln() / (1.0 / grading).ln()).ceil().max(1.0) as usize
}

/// Abscissae `a * 2^(i/k)` from `a`, closed at `b`; a final cell shorter
/// than half its predecessor is merged. Octave boundaries `2^j a` are nodes.
pub fn octave_points(a: f64, b: f64, per_octave: usize) -> Vec<f64> {
    let c = 2f64.powf(1.0 / per_octave as f64);
    let mut pts = vec![a];
    let mut i = 1;
    loop {
        // exact powers of two keep the octave points bit-exact
        let (octave, step) = (i / per_octave, i % per_octave);
        let s = a * 2f64.powi(octave as i32) * c.powi(step as i32);
        if s >= b {
            break;
        }
        pts.push(s);
        i += 1;
    }
    let n = pts.len();
    if n >= 2 && b - pts[n - 1] < 0.5 * (pts[n - 1] - pts[n - 2]) {
        pts.pop();
    }
    pts.push(b);
    pts
}

/// Split the quad `[a, b, c, d]` (counterclockwise) along `a-c` or `b-d`.
fn split_quad(q: [usize; 4], diagonal_ac: bool, out: &mut Vec<[usize; 3]>) {
    let [a, b, c, d] = q;
    if diagonal_ac {
        out.push([a, b, c]);
        out.push([a, c, d]);
    } else {
        out.push([a, b, d]);
        out.push([b, c, d]);
    }
}

/// Horn mesh on `rho_cut <= s <= ell`, `|n| <= B s^m`, with the axis along
/// `x`. Quads of the `(s, eta)` grid are split symmetrically about `eta = 0`.
pub fn generate_ridge_mesh(
    shape: &CuspShape,
    rho_cut: f64,
    ell: f64,
    n_s: usize,
    n_eta: usize,
    grading: f64,
) -> Result<Mesh> {
    if !(rho_cut > 0.0 && rho_cut < ell) {
        return Err(invalid("need 0 < rho_cut < ell"));
    }
    if n_s < 4 || n_eta < 4 {
        return Err(invalid("need n_s, n_eta >= 4"));
    }
    if !(grading > 0.0 && grading <= 1.0) {
        return Err(invalid("grading must lie in (0, 1]"));
    }
    generate_ridge_mesh_on(shape, &graded_points(rho_cut, ell, n_s, grading), n_eta)
}

/// Horn mesh on the given increasing abscissae.
pub fn generate_ridge_mesh_on(shape: &CuspShape, s: &[f64], n_eta: usize) -> Result<Mesh> {
    if s.len() < 5 || n_eta < 4 {
        return Err(invalid("need n_s, n_eta >= 4"));
    }
    if !(s[0] > 0.0) || s.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(invalid("abscissae must be positive and increasing"));
    }
    let n_s = s.len() - 1;
    let (b, m) = (shape.b(), shape.m());
    let id = |i: usize, j: usize| i * (n_eta + 1) + j;
    let mut nodes = Vec::with_capacity((n_s + 1) * (n_eta + 1));
    for &si in s {
        let half = b * si.powf(m);
        for j in 0..=n_eta {
            let eta = -1.0 + 2.0 * j as f64 / n_eta as f64;
            nodes.push([si, half * eta]);
        }
    }
    let mut tris = Vec::with_capacity(2 * n_s * n_eta);
    for i in 0..n_s {
        for j in 0..n_eta {
            let q = [id(i, j), id(i + 1, j), id(i + 1, j + 1), id(i, j + 1)];
            split_quad(q, 2 * j < n_eta, &mut tris);
        }
    }
    let mut groups = BTreeMap::new();
    let mut side = Vec::with_capacity(2 * n_s);
    for i in 0..n_s {
        side.push([id(i, 0), id(i + 1, 0)]);
        side.push([id(i + 1, n_eta), id(i, n_eta)]);
    }
    groups.insert(BoundaryTag::CuspSide, side);
    groups.insert(
        BoundaryTag::Terminal,
        (0..n_eta).map(|j| [id(0, j + 1), id(0, j)]).collect(),
    );
    groups.insert(
        BoundaryTag::Remote,
        (0..n_eta).map(|j| [id(n_s, j), id(n_s, j + 1)]).collect(),
    );
    Mesh::new(nodes, tris, groups)
}

/// Resolution of the gorge mesh.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GorgeResolution {
    /// Half-size of the innermost ring, relative to `r_out`.
    pub inner_ratio: f64,
    /// Ratio of consecutive ring sizes (inner over outer).
    pub grading: f64,
    /// Cells along each quarter-side of a ring.
    pub n_quarter: usize,
}

impl Default for GorgeResolution {
    fn default() -> Self {
        GorgeResolution {
            inner_ratio: 1e-4,
            grading: 0.85,
            n_quarter: 6,
        }
    }
}

/// One block of the gorge mesh: a grid of ring index by path index.
struct Block {
    /// `points[k][j]` on ring `k`.
    points: Vec<Vec<[f64; 2]>>,
}

fn lerp(a: [f64; 2], b: [f64; 2], t: f64) -> [f64; 2] {
    [a[0] + (b[0] - a[0]) * t, a[1] + (b[1] - a[1]) * t]
}

/// Polyline through `corners` with `counts[i]` uniform cells on leg `i`.
fn polyline(corners: &[[f64; 2]], counts: &[usize]) -> Vec<[f64; 2]> {
    let mut pts = vec![corners[0]];
    for (leg, &n) in counts.iter().enumerate() {
        for i in 1..=n {
            let p = if i == n {
                corners[leg + 1]
            } else {
                lerp(corners[leg], corners[leg + 1], i as f64 / n as f64)
            };
            pts.push(p);
        }
    }
    pts
}

/// Gorge mesh: the material `z < A|x|^alpha` inside the box
/// `[-r_out, r_out] x [-depth, r_out]`, with the notch bottom at the origin.
///
/// Rings are the box outlines scaled by `t` (notch removed), geometrically
/// spaced down to `inner_ratio * r_out`; a fan closes the innermost ring at
/// the origin. The right block (`x >= 0, z >= 0`), the lower block
/// (`z <= 0`) and the mirrored left block are generated separately and
/// merged along `z = 0`.
pub fn generate_gorge_mesh(
    shape: &CuspShape,
    r_out: f64,
    depth: f64,
    res: GorgeResolution,
) -> Result<Mesh> {
    if !(r_out > 0.0 && depth > 0.0) {
        return Err(invalid("need r_out, depth > 0"));
    }
    if !(res.inner_ratio > 0.0 && res.inner_ratio < 1.0)
        || !(res.grading > 0.0 && res.grading < 1.0)
    {
        return Err(invalid("need inner_ratio and grading in (0, 1)"));
    }
    if res.n_quarter < 1 {
        return Err(invalid("need n_quarter >= 1"));
    }
    let face = |t: f64| shape.half_width(t).map_err(Error::from);
    if face(r_out)? >= r_out {
        return Err(invalid("notch mouth is wider than the box; shrink r_out"));
    }
    let kappa = depth / r_out;
    let n_rings = self_similar_count(res.inner_ratio * r_out, r_out, res.grading);
    let radii: Vec<f64> = (0..=n_rings)
        .map(|k| r_out * res.grading.powi((n_rings - k) as i32))
        .collect();
    let n = res.n_quarter;

    let mut right = Block { points: Vec::new() };
    let mut lower = Block { points: Vec::new() };
    let mut left = Block { points: Vec::new() };
    for &t in &radii {
        let xf = face(t)?;
        right
            .points
            .push(polyline(&[[xf, t], [t, t], [t, 0.0]], &[n, n]));
        lower.points.push(polyline(
            &[[t, 0.0], [t, -kappa * t], [-t, -kappa * t], [-t, 0.0]],
            &[n, 2 * n, n],
        ));
        left.points
            .push(polyline(&[[-t, 0.0], [-t, t], [-xf, t]], &[n, n]));
    }

    // merge blocks into one path per ring, checking the interfaces
    let mut paths: Vec<Vec<[f64; 2]>> = Vec::with_capacity(radii.len());
    for k in 0..radii.len() {
        let mut p = right.points[k].clone();
        for (name, next) in [
            ("right/lower", &lower.points[k]),
            ("lower/left", &left.points[k]),
        ] {
            if p.last() != next.first() {
                return Err(Error::NonConforming(format!(
                    "{name} interface on ring {k}"
                )));
            }
            p.extend_from_slice(&next[1..]);
        }
        paths.push(p);
    }
    let width = paths[0].len();

    let mut nodes = vec![[0.0, 0.0]];
    for p in &paths {
        nodes.extend_from_slice(p);
    }
    let id = |k: usize, j: usize| 1 + k * width + j;
    let cells = width - 1;
    let mut tris = Vec::with_capacity(cells * (2 * n_rings + 1));
    for j in 0..cells {
        // the path runs clockwise, so (origin, j+1, j) is counterclockwise
        tris.push([0, id(0, j + 1), id(0, j)]);
    }
    for k in 0..n_rings {
        for j in 0..cells {
            let q = [id(k, j), id(k, j + 1), id(k + 1, j + 1), id(k + 1, j)];
            split_quad(q, 2 * j >= cells, &mut tris);
        }
    }

    let mut side = vec![[id(0, 0), 0], [0, id(0, cells)]];
    for k in 0..n_rings {
        side.push([id(k + 1, 0), id(k, 0)]);
        side.push([id(k, cells), id(k + 1, cells)]);
    }
    let outer = (0..cells)
        .map(|j| [id(n_rings, j), id(n_rings, j + 1)])
        .collect();
    let groups = BTreeMap::from([(BoundaryTag::CuspSide, side), (BoundaryTag::Outer, outer)]);
    Mesh::new(nodes, tris, groups)
}

/// Rectangle `[0, w] x [0, h]`: left `terminal`, right `remote`, bottom
/// `outer`, top `cusp_side`.
pub fn generate_rectangle(w: f64, h: f64, nx: usize, ny: usize) -> Result<Mesh> {
    if !(w > 0.0 && h > 0.0) || nx == 0 || ny == 0 {
        return Err(invalid("need positive sizes and cell counts"));
    }
    let id = |i: usize, j: usize| j * (nx + 1) + i;
    let mut nodes = Vec::with_capacity((nx + 1) * (ny + 1));
    for j in 0..=ny {
        for i in 0..=nx {
            nodes.push([w * i as f64 / nx as f64, h * j as f64 / ny as f64]);
        }
    }
    let mut tris = Vec::with_capacity(2 * nx * ny);
    for j in 0..ny {
        for i in 0..nx {
            split_quad(
                [id(i, j), id(i + 1, j), id(i + 1, j + 1), id(i, j + 1)],
                (i + j) % 2 == 0,
                &mut tris,
            );
        }
    }
    let groups = BTreeMap::from([
        (
            BoundaryTag::Terminal,
            (0..ny).map(|j| [id(0, j + 1), id(0, j)]).collect(),
        ),
        (
            BoundaryTag::Remote,
            (0..ny).map(|j| [id(nx, j), id(nx, j + 1)]).collect(),
        ),
        (
            BoundaryTag::Outer,
            (0..nx).map(|i| [id(i, 0), id(i + 1, 0)]).collect(),
        ),
        (
            BoundaryTag::CuspSide,
            (0..nx).map(|i| [id(i + 1, ny), id(i, ny)]).collect(),
        ),
    ]);
    Mesh::new(nodes, tris, groups)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn horn(m: f64) -> CuspShape {
        CuspShape::from_horn(1.0, m).unwrap()
    }

    #[test]
    fn graded_points_ratio() {
        let p = graded_points(0.01, 1.0, 10, 0.8);
        assert_eq!(p.len(), 11);
        assert_eq!((p[0], p[10]), (0.01, 1.0));
        for i in 1..9 {
            let r = (p[i] - p[i - 1]) / (p[i + 1] - p[i]);
            assert!((r - 0.8).abs() < 1e-12);
        }
        let u = graded_points(0.0, 1.0, 4, 1.0);
        assert!(u
            .iter()
            .zip([0.0, 0.25, 0.5, 0.75, 1.0])
            .all(|(a, b)| (a - b).abs() < 1e-15));
    }

    #[test]
    fn octave_points_hit_octaves() {
        let p = octave_points(0.01, 1.0, 4);
        assert_eq!(p[4], 0.01 * 2.0);
        assert!((p[8] - 0.04).abs() < 1e-17);
        assert_eq!(*p.last().unwrap(), 1.0);
        let n = p.len();
        assert!(p[n - 1] - p[n - 2] >= 0.5 * (p[n - 2] - p[n - 3]));
    }

    #[test]
    fn ridge_counts_and_tags() {
        let m = generate_ridge_mesh(&horn(2.4), 0.1, 1.0, 4, 4, 0.85).unwrap();
        assert_eq!(m.triangles().len(), 32);
        assert_eq!(m.nodes().len(), 25);
        assert_eq!(m.group(BoundaryTag::Terminal).len(), 4);
        assert_eq!(m.group(BoundaryTag::CuspSide).len(), 8);
        assert!(generate_ridge_mesh(&horn(2.4), 0.1, 1.0, 3, 4, 0.85).is_err());
    }

    #[test]
    fn ridge_nodes_inside_horn_and_mirror_symmetric() {
        let m = generate_ridge_mesh(&horn(2.4), 0.005, 1.0, 33, 8, 0.85).unwrap();
        for p in m.nodes() {
            assert!(p[1].abs() <= p[0].powf(2.4) + 1e-12);
        }
        assert!(m.quality().min_area > 0.0);
        let mut a: Vec<[u64; 2]> = m
            .nodes()
            .iter()
            .map(|p| [p[0].to_bits(), p[1].abs().to_bits()])
            .collect();
        a.sort_unstable();
        // every node off the axis has a mirror image
        let off = m.nodes().iter().filter(|p| p[1] != 0.0).count();
        a.dedup();
        assert_eq!(a.len(), m.nodes().len() - off / 2);
    }

    #[test]
    fn gorge_faces_on_graph_and_symmetric() {
        for mm in [1.8, 2.4, 2.8] {
            let shape = CuspShape::from_graph(1.0, 1.0 / mm).unwrap();
            let m = generate_gorge_mesh(&shape, 0.5, 0.5, GorgeResolution::default()).unwrap();
            for &v in &m.group_nodes(BoundaryTag::CuspSide) {
                let [x, z] = m.nodes()[v];
                assert!((z - shape.a_coef() * x.abs().powf(shape.alpha())).abs() < 1e-12);
            }
            let mut keys: Vec<(i64, i64)> = m
                .nodes()
                .iter()
                .map(|p| ((p[0] * 1e12).round() as i64, (p[1] * 1e12).round() as i64))
                .collect();
            let mut mirrored: Vec<(i64, i64)> = keys.iter().map(|&(x, z)| (-x, z)).collect();
            keys.sort_unstable();
            mirrored.sort_unstable();
            assert_eq!(keys, mirrored);
            assert!(m.quality().min_area > 0.0);
        }
    }

    #[test]
    fn gorge_rejects_wide_mouth() {
        let shape = CuspShape::from_graph(1.0, 1.0 / 2.4).unwrap();
        assert!(generate_gorge_mesh(&shape, 1.5, 1.0, GorgeResolution::default()).is_err());
    }

    #[test]
    fn rectangle_tags() {
        let m = generate_rectangle(2.0, 1.0, 4, 2).unwrap();
        assert_eq!(m.triangles().len(), 16);
        assert_eq!(m.group_nodes(BoundaryTag::Terminal), vec![0, 5, 10]);
    }
}
