//! Triangle meshes with named boundary groups.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use crate::error::{invalid, Error, Result};

/// Named boundary groups. Every boundary edge carries exactly one tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BoundaryTag {
    CuspSide,
    Remote,
    Terminal,
    Outer,
}

impl BoundaryTag {
    pub const ALL: [BoundaryTag; 4] = [
        BoundaryTag::CuspSide,
        BoundaryTag::Remote,
        BoundaryTag::Terminal,
        BoundaryTag::Outer,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            BoundaryTag::CuspSide => "cusp_side",
            BoundaryTag::Remote => "remote",
            BoundaryTag::Terminal => "terminal",
            BoundaryTag::Outer => "outer",
        }
    }
}

impl fmt::Display for BoundaryTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BoundaryTag {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        BoundaryTag::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| invalid(format!("unknown boundary tag `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Mesh {
    nodes: Vec<[f64; 2]>,
    triangles: Vec<[usize; 3]>,
    groups: BTreeMap<BoundaryTag, Vec<[usize; 2]>>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeshQuality {
    pub min_area: f64,
    /// Longest edge over shortest altitude, maximized over elements.
    pub max_aspect: f64,
}

fn edge_key(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

impl Mesh {
    /// Build and validate: counterclockwise triangles with positive area,
    /// group edges on the boundary, each boundary edge tagged exactly once.
    pub fn new(
        nodes: Vec<[f64; 2]>,
        triangles: Vec<[usize; 3]>,
        groups: BTreeMap<BoundaryTag, Vec<[usize; 2]>>,
    ) -> Result<Self> {
        let mesh = Mesh {
            nodes,
            triangles,
            groups,
        };
        mesh.validate()?;
        Ok(mesh)
    }

    fn validate(&self) -> Result<()> {
        let n = self.nodes.len();
        if self
            .nodes
            .iter()
            .any(|p| !p[0].is_finite() || !p[1].is_finite())
        {
            return Err(Error::InvalidMesh("non-finite node coordinate".into()));
        }
        for (i, t) in self.triangles.iter().enumerate() {
            if t.iter().any(|&v| v >= n) {
                return Err(Error::InvalidMesh(format!(
                    "triangle {i} references a missing node"
                )));
            }
            let area = self.signed_area(i);
            if !(area > 0.0) {
                return Err(Error::DegenerateElement { index: i, area });
            }
        }
        let boundary = self.boundary_edge_counts();
        let mut tagged: HashMap<(usize, usize), BoundaryTag> = HashMap::new();
        for (&tag, edges) in &self.groups {
            for e in edges {
                let k = edge_key(e[0], e[1]);
                if boundary.get(&k) != Some(&1) {
                    return Err(Error::InvalidMesh(format!(
                        "{tag} edge {e:?} is not a boundary edge"
                    )));
                }
                if let Some(prev) = tagged.insert(k, tag) {
                    return Err(Error::InvalidMesh(format!(
                        "edge {e:?} tagged both {prev} and {tag}"
                    )));
                }
            }
        }
        let untagged = boundary
            .iter()
            .filter(|(k, &c)| c == 1 && !tagged.contains_key(k))
            .count();
        if untagged > 0 {
            return Err(Error::InvalidMesh(format!(
                "{untagged} boundary edges carry no tag"
            )));
        }
        Ok(())
    }

    fn boundary_edge_counts(&self) -> HashMap<(usize, usize), u32> {
        let mut count = HashMap::new();
        for t in &self.triangles {
            for k in 0..3 {
                *count.entry(edge_key(t[k], t[(k + 1) % 3])).or_insert(0) += 1;
            }
        }
        count
    }

    pub fn nodes(&self) -> &[[f64; 2]] {
        &self.nodes
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    pub fn groups(&self) -> &BTreeMap<BoundaryTag, Vec<[usize; 2]>> {
        &self.groups
    }

    pub fn group(&self, tag: BoundaryTag) -> &[[usize; 2]] {
        self.groups.get(&tag).map_or(&[], Vec::as_slice)
    }

    /// Sorted distinct nodes of a group.
    pub fn group_nodes(&self, tag: BoundaryTag) -> Vec<usize> {
        let mut v: Vec<usize> = self.group(tag).iter().flatten().copied().collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn signed_area(&self, t: usize) -> f64 {
        let [a, b, c] = self.triangles[t].map(|i| self.nodes[i]);
        0.5 * ((b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1]))
    }

    pub fn centroid(&self, t: usize) -> [f64; 2] {
        let [a, b, c] = self.triangles[t].map(|i| self.nodes[i]);
        [(a[0] + b[0] + c[0]) / 3.0, (a[1] + b[1] + c[1]) / 3.0]
    }

    pub fn quality(&self) -> MeshQuality {
        let mut min_area = f64::INFINITY;
        let mut max_aspect: f64 = 0.0;
        for (i, t) in self.triangles.iter().enumerate() {
            let area = self.signed_area(i);
            let p = t.map(|k| self.nodes[k]);
            let longest = (0..3)
                .map(|k| {
                    let (a, b) = (p[k], p[(k + 1) % 3]);
                    (b[0] - a[0]).hypot(b[1] - a[1])
                })
                .fold(0.0, f64::max);
            min_area = min_area.min(area);
            // shortest altitude = 2A / longest edge
            max_aspect = max_aspect.max(longest * longest / (2.0 * area));
        }
        MeshQuality {
            min_area,
            max_aspect,
        }
    }

    /// Text form; see [`crate::io`].
    pub fn to_text(&self) -> String {
        crate::io::write_mesh(self)
    }

    pub fn from_text(text: &str) -> Result<Self> {
        crate::io::read_mesh(text)
    }
}
