//! Plain-text mesh format.
//!
//! The writer emits exactly the following, each line ending in `\n`:
//!
//! ```text
//! nodes <N> triangles <T>
//! <x> <y>                      N lines
//! <a> <b> <c>                  T lines, 0-based node indices, counterclockwise
//! groups <G>
//! <tag> edges <E>              repeated G times, tags in the order
//! <a> <b>                      cusp_side, remote, terminal, outer; E lines each
//! ```
//!
//! Coordinates use Rust's shortest round-trip `f64` formatting, so a read
//! followed by a write reproduces the input byte for byte. Fields are
//! separated by one space. Groups with no edges are omitted. The reader
//! accepts any run of spaces or tabs between fields and ignores blank lines.

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::error::{Error, Result};
use crate::mesh::{BoundaryTag, Mesh};

pub fn write_mesh(mesh: &Mesh) -> String {
    let mut out = String::new();
    let groups: Vec<_> = mesh
        .groups()
        .iter()
        .filter(|(_, e)| !e.is_empty())
        .collect();
    writeln!(
        out,
        "nodes {} triangles {}",
        mesh.nodes().len(),
        mesh.triangles().len()
    )
    .unwrap();
    for p in mesh.nodes() {
        writeln!(out, "{:?} {:?}", p[0], p[1]).unwrap();
    }
    for t in mesh.triangles() {
        writeln!(out, "{} {} {}", t[0], t[1], t[2]).unwrap();
    }
    writeln!(out, "groups {}", groups.len()).unwrap();
    for (tag, edges) in groups {
        writeln!(out, "{tag} edges {}", edges.len()).unwrap();
        for e in edges {
            writeln!(out, "{} {}", e[0], e[1]).unwrap();
        }
    }
    out
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    fn next(&mut self) -> Result<(usize, Vec<&'a str>)> {
        for (i, l) in self.inner.by_ref() {
            let f: Vec<&str> = l.split_whitespace().collect();
            if !f.is_empty() {
                return Ok((i + 1, f));
            }
        }
        Err(Error::Parse {
            line: 0,
            msg: "unexpected end of input".into(),
        })
    }
}

fn parse<T: std::str::FromStr>(line: usize, s: &str) -> Result<T> {
    s.parse().map_err(|_| Error::Parse {
        line,
        msg: format!("cannot parse `{s}`"),
    })
}

fn expect(line: usize, fields: &[&str], pattern: &[Option<&str>]) -> Result<()> {
    let ok = fields.len() == pattern.len()
        && fields
            .iter()
            .zip(pattern)
            .all(|(f, p)| p.is_none_or(|p| p == *f));
    if ok {
        Ok(())
    } else {
        Err(Error::Parse {
            line,
            msg: format!("malformed line `{}`", fields.join(" ")),
        })
    }
}

pub fn read_mesh(text: &str) -> Result<Mesh> {
    let mut lines = Lines {
        inner: text.lines().enumerate(),
    };
    let (ln, h) = lines.next()?;
    expect(ln, &h, &[Some("nodes"), None, Some("triangles"), None])?;
    let (nn, nt): (usize, usize) = (parse(ln, h[1])?, parse(ln, h[3])?);
    let mut nodes = Vec::with_capacity(nn);
    for _ in 0..nn {
        let (ln, f) = lines.next()?;
        expect(ln, &f, &[None, None])?;
        nodes.push([parse(ln, f[0])?, parse(ln, f[1])?]);
    }
    let mut triangles = Vec::with_capacity(nt);
    for _ in 0..nt {
        let (ln, f) = lines.next()?;
        expect(ln, &f, &[None, None, None])?;
        triangles.push([parse(ln, f[0])?, parse(ln, f[1])?, parse(ln, f[2])?]);
    }
    let (ln, g) = lines.next()?;
    expect(ln, &g, &[Some("groups"), None])?;
    let ng: usize = parse(ln, g[1])?;
    let mut groups = BTreeMap::new();
    for _ in 0..ng {
        let (ln, f) = lines.next()?;
        expect(ln, &f, &[None, Some("edges"), None])?;
        let tag: BoundaryTag = f[0].parse().map_err(|_| Error::Parse {
            line: ln,
            msg: format!("unknown tag `{}`", f[0]),
        })?;
        let ne: usize = parse(ln, f[2])?;
        let mut edges = Vec::with_capacity(ne);
        for _ in 0..ne {
            let (ln, e) = lines.next()?;
            expect(ln, &e, &[None, None])?;
            edges.push([parse(ln, e[0])?, parse(ln, e[1])?]);
        }
        if groups.insert(tag, edges).is_some() {
            return Err(Error::Parse {
                line: ln,
                msg: format!("group `{tag}` repeated"),
            });
        }
    }
    if let Ok((ln, _)) = lines.next() {
        return Err(Error::Parse {
            line: ln,
            msg: "trailing content".into(),
        });
    }
    Mesh::new(nodes, triangles, groups)
}
