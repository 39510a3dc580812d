//! Compressed sparse rows, reverse Cuthill-McKee ordering, a skyline
//! Cholesky factorization and a Jacobi-preconditioned conjugate gradient.

use std::collections::VecDeque;

use crate::error::{invalid, Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct CsrMatrix {
    n: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
    values: Vec<f64>,
}

impl CsrMatrix {
    /// Zero matrix with the given sorted, duplicate-free column lists per row.
    pub fn from_pattern(rows: Vec<Vec<usize>>) -> Self {
        let n = rows.len();
        let mut row_ptr = Vec::with_capacity(n + 1);
        row_ptr.push(0);
        let mut col_idx = Vec::new();
        for r in rows {
            debug_assert!(r.windows(2).all(|w| w[0] < w[1]));
            col_idx.extend(r);
            row_ptr.push(col_idx.len());
        }
        let values = vec![0.0; col_idx.len()];
        CsrMatrix {
            n,
            row_ptr,
            col_idx,
            values,
        }
    }

    /// Build from `(row, col, value)` triplets; duplicates are summed in
    /// input order.
    pub fn from_triplets(n: usize, triplets: &[(usize, usize, f64)]) -> Result<Self> {
        let mut rows = vec![Vec::new(); n];
        for &(i, j, _) in triplets {
            if i >= n || j >= n {
                return Err(invalid("triplet index out of range"));
            }
            rows[i].push(j);
        }
        for r in &mut rows {
            r.sort_unstable();
            r.dedup();
        }
        let mut a = CsrMatrix::from_pattern(rows);
        for &(i, j, v) in triplets {
            *a.entry_mut(i, j).expect("pattern holds every triplet") += v;
        }
        Ok(a)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn nnz(&self) -> usize {
        self.col_idx.len()
    }

    pub fn row(&self, i: usize) -> (&[usize], &[f64]) {
        let r = self.row_ptr[i]..self.row_ptr[i + 1];
        (&self.col_idx[r.clone()], &self.values[r])
    }

    fn position(&self, i: usize, j: usize) -> Option<usize> {
        let (cols, _) = self.row(i);
        cols.binary_search(&j).ok().map(|k| self.row_ptr[i] + k)
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.position(i, j).map_or(0.0, |k| self.values[k])
    }

    pub fn entry_mut(&mut self, i: usize, j: usize) -> Option<&mut f64> {
        self.position(i, j).map(move |k| &mut self.values[k])
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.get(i, i)).collect()
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        (0..self.n)
            .map(|i| {
                let (c, v) = self.row(i);
                c.iter().zip(v).map(|(&j, a)| a * x[j]).sum()
            })
            .collect()
    }

    /// Largest `|a_ij - a_ji|`.
    pub fn asymmetry(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.n {
            let (c, v) = self.row(i);
            for (&j, a) in c.iter().zip(v) {
                worst = worst.max((a - self.get(j, i)).abs());
            }
        }
        worst
    }

    /// Principal submatrix on `keep` (in that order).
    pub fn submatrix(&self, keep: &[usize]) -> CsrMatrix {
        let mut map = vec![usize::MAX; self.n];
        for (new, &old) in keep.iter().enumerate() {
            map[old] = new;
        }
        let mut row_ptr = vec![0];
        let mut col_idx = Vec::new();
        let mut values = Vec::new();
        for &old in keep {
            let (c, v) = self.row(old);
            let mut entries: Vec<(usize, f64)> = c
                .iter()
                .zip(v)
                .filter(|(&j, _)| map[j] != usize::MAX)
                .map(|(&j, &a)| (map[j], a))
                .collect();
            entries.sort_unstable_by_key(|e| e.0);
            for (j, a) in entries {
                col_idx.push(j);
                values.push(a);
            }
            row_ptr.push(col_idx.len());
        }
        CsrMatrix {
            n: keep.len(),
            row_ptr,
            col_idx,
            values,
        }
    }
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Reverse Cuthill-McKee permutation: `perm[new] = old`. Each component
/// starts from a pseudo-peripheral node; ties break on degree, then index.
pub fn rcm_ordering(a: &CsrMatrix) -> Vec<usize> {
    let n = a.dim();
    let degree: Vec<usize> = (0..n).map(|i| a.row(i).0.len()).collect();
    let mut visited = vec![false; n];
    let mut order = Vec::with_capacity(n);

    let bfs_last = |start: usize, visited: &[bool]| -> (usize, usize) {
        let mut level = vec![usize::MAX; n];
        let mut queue = VecDeque::from([start]);
        level[start] = 0;
        let mut last = start;
        while let Some(u) = queue.pop_front() {
            let lu = level[u];
            if lu > level[last] || (lu == level[last] && degree[u] < degree[last]) {
                last = u;
            }
            for &v in a.row(u).0 {
                if !visited[v] && level[v] == usize::MAX {
                    level[v] = lu + 1;
                    queue.push_back(v);
                }
            }
        }
        (last, level[last])
    };

    let mut seeds: Vec<usize> = (0..n).collect();
    seeds.sort_by_key(|&i| (degree[i], i));
    for seed in seeds {
        if visited[seed] {
            continue;
        }
        // a few sweeps toward a pseudo-peripheral node
        let mut start = seed;
        let mut ecc = 0;
        for _ in 0..8 {
            let (far, e) = bfs_last(start, &visited);
            if e <= ecc {
                break;
            }
            ecc = e;
            start = far;
        }
        let first = order.len();
        visited[start] = true;
        order.push(start);
        let mut head = first;
        while head < order.len() {
            let u = order[head];
            head += 1;
            let mut nbrs: Vec<usize> = a
                .row(u)
                .0
                .iter()
                .copied()
                .filter(|&v| !visited[v])
                .collect();
            nbrs.sort_by_key(|&v| (degree[v], v));
            for v in nbrs {
                visited[v] = true;
                order.push(v);
            }
        }
    }
    order.reverse();
    order
}

/// Skyline (variable band) Cholesky factor of a symmetrically permuted,
/// diagonally scaled matrix.
#[derive(Debug, Clone)]
pub struct SkylineCholesky {
    perm: Vec<usize>,
    scale: Vec<f64>,
    first: Vec<usize>,
    start: Vec<usize>,
    data: Vec<f64>,
}

impl SkylineCholesky {
    pub fn factor(a: &CsrMatrix) -> Result<Self> {
        let n = a.dim();
        let perm = rcm_ordering(a);
        let mut inv = vec![0; n];
        for (new, &old) in perm.iter().enumerate() {
            inv[old] = new;
        }
        let mut scale = vec![0.0; n];
        for (i, sc) in scale.iter_mut().enumerate() {
            let d = a.get(i, i);
            if !(d > 0.0) {
                return Err(Error::Singular {
                    equation: i,
                    pivot: d,
                });
            }
            *sc = 1.0 / d.sqrt();
        }
        let mut first: Vec<usize> = (0..n).collect();
        for old in 0..n {
            let i = inv[old];
            for &jo in a.row(old).0 {
                let j = inv[jo];
                if j < i {
                    first[i] = first[i].min(j);
                }
            }
        }
        let mut start = Vec::with_capacity(n + 1);
        start.push(0);
        for i in 0..n {
            start.push(start[i] + i - first[i] + 1);
        }
        let mut data = vec![0.0; start[n]];
        for old in 0..n {
            let i = inv[old];
            let (c, v) = a.row(old);
            for (&jo, &x) in c.iter().zip(v) {
                let j = inv[jo];
                if j <= i {
                    data[start[i] + j - first[i]] = x * scale[old] * scale[jo];
                }
            }
        }
        // row-oriented Crout: L[i][j] for first[i] <= j <= i
        for i in 0..n {
            let fi = first[i];
            let row_i = start[i];
            for j in fi..i {
                let fj = first[j];
                let k0 = fi.max(fj);
                let row_j = start[j];
                let mut sum = data[row_i + j - fi];
                for k in k0..j {
                    sum -= data[row_i + k - fi] * data[row_j + k - fj];
                }
                data[row_i + j - fi] = sum / data[row_j + j - fj];
            }
            let mut d = data[row_i + i - fi];
            for k in fi..i {
                let l = data[row_i + k - fi];
                d -= l * l;
            }
            // scaled diagonal is one; a vanishing pivot means a free rigid mode
            if !(d > 1e-13) {
                return Err(Error::Singular {
                    equation: perm[i],
                    pivot: d,
                });
            }
            data[row_i + i - fi] = d.sqrt();
        }
        Ok(SkylineCholesky {
            perm,
            scale,
            first,
            start,
            data,
        })
    }

    pub fn profile_size(&self) -> usize {
        self.data.len()
    }

    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let n = self.perm.len();
        let mut y: Vec<f64> = self.perm.iter().map(|&o| b[o] * self.scale[o]).collect();
        for i in 0..n {
            let (fi, r) = (self.first[i], self.start[i]);
            let mut s = y[i];
            for (a, yk) in self.data[r..r + i - fi].iter().zip(&y[fi..i]) {
                s -= a * yk;
            }
            y[i] = s / self.data[r + i - fi];
        }
        for i in (0..n).rev() {
            let (fi, r) = (self.first[i], self.start[i]);
            y[i] /= self.data[r + i - fi];
            let yi = y[i];
            for (yk, a) in y[fi..i].iter_mut().zip(&self.data[r..r + i - fi]) {
                *yk -= a * yi;
            }
        }
        let mut x = vec![0.0; n];
        for (new, &old) in self.perm.iter().enumerate() {
            x[old] = y[new] * self.scale[old];
        }
        x
    }
}

/// Unknown count above which [`SolverChoice::Auto`] switches to PCG.
pub const DIRECT_LIMIT: usize = 200_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SolverChoice {
    #[default]
    Auto,
    Direct,
    ConjugateGradient,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveReport {
    /// Componentwise backward error `max_i |b - A x|_i / (|A| |x| + |b|)_i`.
    pub backward_error: f64,
    /// `|b - A x| / |b|` of the Jacobi-scaled system `D A D y = D b`.
    pub relative_residual: f64,
    pub iterations: usize,
    pub direct: bool,
}

/// Backward-error target of every solve.
///
/// A plain relative residual cannot reach this level on slender horns:
/// rounding `x` alone leaves `|r| ~ eps |A| |x|`, which exceeds
/// `1e-10 |b|` once the conditioning passes about `1e6`.
pub const RESIDUAL_TOL: f64 = 1e-10;

struct Residual {
    r: Vec<f64>,
    backward: f64,
    relative: f64,
}

fn residual(a: &CsrMatrix, x: &[f64], b: &[f64], d: &[f64]) -> Residual {
    let n = a.dim();
    let mut r = vec![0.0; n];
    let mut backward: f64 = 0.0;
    for i in 0..n {
        let (c, v) = a.row(i);
        let mut ax = 0.0;
        let mut abs = 0.0;
        for (&j, aij) in c.iter().zip(v) {
            ax += aij * x[j];
            abs += (aij * x[j]).abs();
        }
        r[i] = b[i] - ax;
        let den = abs + b[i].abs();
        if den > 0.0 {
            backward = backward.max(r[i].abs() / den);
        } else if r[i] != 0.0 {
            backward = f64::INFINITY;
        }
    }
    let num = norm(&r.iter().zip(d).map(|(ri, di)| ri * di).collect::<Vec<_>>());
    let den = norm(&b.iter().zip(d).map(|(bi, di)| bi * di).collect::<Vec<_>>());
    let relative = if den == 0.0 { num } else { num / den };
    Residual {
        r,
        backward,
        relative,
    }
}

/// Solve the symmetric positive definite system `A x = b`.
pub fn solve_spd(
    a: &CsrMatrix,
    b: &[f64],
    choice: SolverChoice,
) -> Result<(Vec<f64>, SolveReport)> {
    let n = a.dim();
    if b.len() != n {
        return Err(invalid("right-hand side length mismatch"));
    }
    if n == 0 {
        let report = SolveReport {
            backward_error: 0.0,
            relative_residual: 0.0,
            iterations: 0,
            direct: true,
        };
        return Ok((Vec::new(), report));
    }
    let d: Vec<f64> = a
        .diagonal()
        .iter()
        .map(|&x| if x > 0.0 { 1.0 / x.sqrt() } else { 1.0 })
        .collect();
    let direct = match choice {
        SolverChoice::Auto => n <= DIRECT_LIMIT,
        SolverChoice::Direct => true,
        SolverChoice::ConjugateGradient => false,
    };
    if !direct {
        return pcg(a, b, &d);
    }
    let chol = SkylineCholesky::factor(a)?;
    let mut x = chol.solve(b);
    let mut res = residual(a, &x, b, &d);
    let mut it = 0;
    // refinement mops up rounding in ill-conditioned horns
    while res.backward > 4.0 * f64::EPSILON && it < 8 {
        let dx = chol.solve(&res.r);
        let trial: Vec<f64> = x.iter().zip(&dx).map(|(a, b)| a + b).collect();
        let next = residual(a, &trial, b, &d);
        if !(next.backward < res.backward) {
            break;
        }
        x = trial;
        res = next;
        it += 1;
    }
    if !(res.backward < RESIDUAL_TOL) {
        return Err(Error::NoConvergence {
            residual: res.backward,
            iterations: it,
        });
    }
    let report = SolveReport {
        backward_error: res.backward,
        relative_residual: res.relative,
        iterations: it,
        direct: true,
    };
    Ok((x, report))
}

fn pcg(a: &CsrMatrix, b: &[f64], d: &[f64]) -> Result<(Vec<f64>, SolveReport)> {
    let n = a.dim();
    let minv: Vec<f64> = d.iter().map(|x| x * x).collect();
    let bn = norm(&b.iter().zip(d).map(|(bi, di)| bi * di).collect::<Vec<_>>());
    let mut x = vec![0.0; n];
    if bn == 0.0 {
        let report = SolveReport {
            backward_error: 0.0,
            relative_residual: 0.0,
            iterations: 0,
            direct: false,
        };
        return Ok((x, report));
    }
    let mut r = b.to_vec();
    let mut z: Vec<f64> = r.iter().zip(&minv).map(|(a, b)| a * b).collect();
    let mut p = z.clone();
    let mut rz = dot(&r, &z);
    let max_it = 20 * n + 100;
    for it in 1..=max_it {
        let ap = a.mul_vec(&p);
        let pap = dot(&p, &ap);
        if !(pap > 0.0) {
            return Err(Error::Singular {
                equation: 0,
                pivot: pap,
            });
        }
        let alpha = rz / pap;
        for i in 0..n {
            x[i] += alpha * p[i];
            r[i] -= alpha * ap[i];
        }
        for i in 0..n {
            z[i] = r[i] * minv[i];
        }
        let rz_new = dot(&r, &z);
        // sqrt(r^T M^-1 r) is the residual norm of the scaled system
        if rz_new.max(0.0).sqrt() < 1e-3 * RESIDUAL_TOL * bn || it == max_it {
            let res = residual(a, &x, b, d);
            if res.backward < RESIDUAL_TOL {
                let report = SolveReport {
                    backward_error: res.backward,
                    relative_residual: res.relative,
                    iterations: it,
                    direct: false,
                };
                return Ok((x, report));
            }
            if it == max_it {
                return Err(Error::NoConvergence {
                    residual: res.backward,
                    iterations: it,
                });
            }
        }
        let beta = rz_new / rz;
        rz = rz_new;
        for i in 0..n {
            p[i] = z[i] + beta * p[i];
        }
    }
    unreachable!("loop returns on its last iteration")
}
