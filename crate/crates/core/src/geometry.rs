//! The dual polar space as a point-line incidence geometry: points are the
//! maximal totally isotropic subspaces, lines the next-to-maximal ones, a
//! line passing through the points that contain it. Also the loader for
//! geometries given by file, which keeps only the combinatorics.
//!
//! Indexing is deterministic: points in lexicographic order of their
//! canonical subspace bytes, lines in lexicographic order of their sorted
//! point tuples. The content hash is the SHA-256 of the canonical `.npg`
//! serialization and is what ovoid certificates bind to.

use crate::bitset::Bitset;
use crate::files::{self, sha256_hex, NpgData};
use crate::matrix::{mat_mul, rank, kernel, Mat};
use crate::polar::{enumerate_generators, EnumLimits, FormSpace, PolarError, Subspace};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::borrow::Cow;
use std::collections::HashMap;
use thiserror::Error;

/// Full n x n distance matrices are only kept this far.
pub const DIST_MATRIX_LIMIT: usize = 4096;
/// Pair and point-line scans are exhaustive up to this point count and
/// fall back to seeded sampling above it.
pub const EXHAUSTIVE_LIMIT: usize = 1200;
/// Sample count used once a geometry is too large for exhaustive scans.
pub const SAMPLE_COUNT: usize = 1000;

#[derive(Debug, Error)]
pub enum GeometryError {
    #[error(transparent)]
    Polar(#[from] PolarError),
    #[error(transparent)]
    Format(#[from] files::FormatError),
    #[error("irregular geometry: {0}")]
    Irregular(String),
    #[error("points {x} and {y} lie on two lines ({l1} and {l2})")]
    RepeatedPair { x: u32, y: u32, l1: u32, l2: u32 },
    #[error("point {point} and line {line}: {count} points of the line attain the minimum distance {dist}")]
    NoUniqueNearest { point: u32, line: u32, dist: u8, count: usize },
    #[error("point index {0} out of range")]
    IndexRange(usize),
}

/// The subspaces behind a built geometry; absent for loaded files.
/// `maximals[i]` is point i.
pub struct SubspaceData {
    pub space: FormSpace,
    pub maximals: Vec<Subspace>,
    pub next_to_maximals: Vec<Subspace>,
}

pub struct Geometry {
    pub name: String,
    /// Family tag (dq / dw / dh) for built geometries; opaque for loaded.
    pub family: String,
    pub q: u32,
    pub d: u32,
    pub n: usize,
    pub lines: Vec<Vec<u32>>,
    pub point_lines: Vec<Vec<u32>>,
    /// Collinearity graph, one bitset per point.
    pub adj: Vec<Bitset>,
    pub neighbors: Vec<Vec<u32>>,
    pub s_plus_1: usize,
    pub t_plus_1: usize,
    pub diameter: usize,
    /// Row-major byte distances when n <= DIST_MATRIX_LIMIT.
    dist: Option<Vec<u8>>,
    pub hash_hex: String,
    pub subspaces: Option<SubspaceData>,
}

impl Geometry {
    pub fn to_npg(&self) -> NpgData {
        NpgData {
            name: self.name.clone(),
            family: self.family.clone(),
            q: self.q,
            d: self.d,
            n: self.n,
            lines: self.lines.clone(),
        }
    }

    /// Graph distance. Prefers the precomputed matrix, then the subspace
    /// formula d - dim(x meet y), then a BFS row.
    pub fn distance(&self, x: usize, y: usize) -> u8 {
        if let Some(m) = &self.dist {
            return m[x * self.n + y];
        }
        if let Some(sd) = &self.subspaces {
            return subspace_distance(sd, x, y);
        }
        self.bfs_row(x)[y]
    }

    /// The whole distance row from x, borrowed from the matrix when present.
    pub fn dist_row(&self, x: usize) -> Cow<'_, [u8]> {
        match &self.dist {
            Some(m) => Cow::Borrowed(&m[x * self.n..(x + 1) * self.n]),
            None => Cow::Owned(self.bfs_row(x)),
        }
    }

    pub fn bfs_row(&self, x: usize) -> Vec<u8> {
        let mut row = vec![u8::MAX; self.n];
        row[x] = 0;
        let mut queue = Vec::with_capacity(self.n);
        queue.push(x as u32);
        let mut head = 0;
        while head < queue.len() {
            let v = queue[head] as usize;
            head += 1;
            let dv = row[v];
            for &w in &self.neighbors[v] {
                if row[w as usize] == u8::MAX {
                    row[w as usize] = dv + 1;
                    queue.push(w);
                }
            }
        }
        row
    }

    /// All points at distance exactly i from x, ascending.
    pub fn sphere(&self, x: usize, i: usize) -> Vec<u32> {
        assert!(i <= self.diameter, "distance {i} beyond diameter {}", self.diameter);
        let row = self.dist_row(x);
        (0..self.n).filter(|&y| row[y] as usize == i).map(|y| y as u32).collect()
    }

    /// One bitset per distance 0..=diameter from x.
    pub fn sphere_bitsets(&self, x: usize) -> Vec<Bitset> {
        let row = self.dist_row(x);
        let mut out = vec![Bitset::new(self.n); self.diameter + 1];
        for y in 0..self.n {
            let dxy = row[y] as usize;
            assert!(dxy <= self.diameter);
            out[dxy].set(y);
        }
        out
    }
}

fn subspace_distance(sd: &SubspaceData, x: usize, y: usize) -> u8 {
    if x == y {
        return 0;
    }
    let f = &sd.space.f;
    let d = sd.space.d;
    let mx = &sd.maximals[x];
    let my = &sd.maximals[y];
    let mut rows = Vec::with_capacity(2 * d);
    for i in 0..d {
        rows.push(mx.row_fe(i));
    }
    for i in 0..d {
        rows.push(my.row_fe(i));
    }
    let r = rank(f, &Mat::from_rows(&rows));
    let meet = 2 * d - r;
    (d - meet) as u8
}

/// Builds the dual polar space on a form. Points come out in lex order of
/// canonical subspace bytes; a line is the set of maximals over a common
/// next-to-maximal.
pub fn build_dual_polar(space: FormSpace) -> Result<Geometry, GeometryError> {
    let gens = enumerate_generators(&space, EnumLimits::default())?;
    let f = &space.f;
    let d = space.d;
    let n = gens.maximals.len();
    let q = f.q as usize;

    let mut line_slot: HashMap<&Subspace, u32> = HashMap::with_capacity(gens.next_to_maximals.len());
    for (i, s) in gens.next_to_maximals.iter().enumerate() {
        line_slot.insert(s, i as u32);
    }
    let mut line_pts: Vec<Vec<u32>> = vec![Vec::new(); gens.next_to_maximals.len()];

    // Hyperplanes of a maximal <-> functionals c in PG(d-1, q), lead
    // coefficient normalized to 1. The hyperplane basis is ker(c) * M.
    let mut functionals: Vec<Vec<crate::fields::Fe>> = Vec::new();
    for lead in 0..d {
        let free = d - lead - 1;
        let mut digits = vec![0u32; free];
        loop {
            let mut c = vec![f.zero(); d];
            c[lead] = f.one();
            for (j, &e) in digits.iter().enumerate() {
                c[lead + 1 + j] = crate::fields::Fe(e as u16);
            }
            functionals.push(c);
            let mut i = free;
            let mut advanced = false;
            while i > 0 {
                i -= 1;
                if digits[i] as usize + 1 < q {
                    digits[i] += 1;
                    digits[i + 1..].fill(0);
                    advanced = true;
                    break;
                }
            }
            if !advanced {
                break;
            }
        }
    }

    for (pi, m) in gens.maximals.iter().enumerate() {
        let mmat = m.to_mat();
        for c in &functionals {
            let k = kernel(f, &Mat::from_rows(&[c.clone()]));
            let amb = mat_mul(f, &k, &mmat);
            let rows: Vec<Vec<crate::fields::Fe>> = (0..amb.rows).map(|i| amb.row(i).to_vec()).collect();
            let sub = Subspace::canonical(f, &rows);
            let slot = line_slot.get(&sub).copied().ok_or_else(|| {
                GeometryError::Irregular(format!("hyperplane of maximal {pi} is not next-to-maximal"))
            })?;
            line_pts[slot as usize].push(pi as u32);
        }
    }

    let mut lines = line_pts;
    for l in &mut lines {
        l.sort_unstable();
        l.dedup();
    }
    lines.sort_unstable();

    let sd = SubspaceData {
        maximals: gens.maximals,
        next_to_maximals: gens.next_to_maximals,
        space,
    };
    let name = sd.space.geometry_name();
    let family = sd.space.family.tag().to_string();
    let base_q = sd.space.base_q;
    let g = assemble(name, family, base_q, d as u32, n, lines, Some(sd))?;

    if g.diameter != d {
        return Err(GeometryError::Irregular(format!(
            "diameter {} differs from rank {d}",
            g.diameter
        )));
    }
    spot_check_subspace_distance(&g)?;
    Ok(g)
}

/// For large geometries the distance oracle is the subspace formula; check
/// it against BFS on a few seeded rows.
fn spot_check_subspace_distance(g: &Geometry) -> Result<(), GeometryError> {
    let Some(_) = &g.subspaces else { return Ok(()) };
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let rows = if g.n <= DIST_MATRIX_LIMIT { 4 } else { 8 };
    for _ in 0..rows {
        let x = rng.gen_range(0..g.n);
        let bfs = g.bfs_row(x);
        for _ in 0..200 {
            let y = rng.gen_range(0..g.n);
            let by_rank = subspace_distance(g.subspaces.as_ref().unwrap(), x, y);
            if by_rank != bfs[y] {
                return Err(GeometryError::Irregular(format!(
                    "distance mismatch at ({x},{y}): subspace rank gives {by_rank}, BFS gives {}",
                    bfs[y]
                )));
            }
        }
    }
    Ok(())
}

/// Rebuilds a geometry from parsed file data; only combinatorics, no forms.
pub fn from_npg(data: NpgData) -> Result<Geometry, GeometryError> {
    assemble(data.name, data.family, data.q, data.d, data.n, data.lines, None)
}

pub fn load_npg(path: &std::path::Path) -> Result<Geometry, GeometryError> {
    from_npg(files::read_npg(path)?)
}

fn assemble(
    name: String,
    family: String,
    q: u32,
    d: u32,
    n: usize,
    lines: Vec<Vec<u32>>,
    subspaces: Option<SubspaceData>,
) -> Result<Geometry, GeometryError> {
    if n == 0 || lines.is_empty() {
        return Err(GeometryError::Irregular("empty geometry".into()));
    }
    let s_plus_1 = lines[0].len();
    if s_plus_1 < 2 {
        return Err(GeometryError::Irregular("lines must have at least 2 points".into()));
    }
    for (i, l) in lines.iter().enumerate() {
        if l.len() != s_plus_1 {
            return Err(GeometryError::Irregular(format!(
                "line {i} has {} points, line 0 has {s_plus_1}",
                l.len()
            )));
        }
        if l.windows(2).any(|w| w[0] >= w[1]) || l.iter().any(|&p| p as usize >= n) {
            return Err(GeometryError::Irregular(format!("line {i} is not ascending in range")));
        }
        if i > 0 && lines[i - 1] >= lines[i] {
            return Err(GeometryError::Irregular(format!("lines {} and {i} out of order", i - 1)));
        }
    }

    let mut point_lines: Vec<Vec<u32>> = vec![Vec::new(); n];
    for (li, l) in lines.iter().enumerate() {
        for &p in l {
            point_lines[p as usize].push(li as u32);
        }
    }
    let t_plus_1 = point_lines[0].len();
    for (p, pl) in point_lines.iter().enumerate() {
        if pl.len() != t_plus_1 {
            return Err(GeometryError::Irregular(format!(
                "point {p} lies on {} lines, point 0 on {t_plus_1}",
                pl.len()
            )));
        }
    }
    if t_plus_1 == 0 {
        return Err(GeometryError::Irregular("a point lies on no line".into()));
    }

    // Two points share at most one line: two offending lines would both
    // appear in point_lines of either shared point, so scanning line pairs
    // through each point sees every violation.
    for (p, pl) in point_lines.iter().enumerate() {
        for (ai, &la) in pl.iter().enumerate() {
            for &lb in &pl[ai + 1..] {
                let a = &lines[la as usize];
                let b = &lines[lb as usize];
                for &y in a {
                    if y != p as u32 && b.binary_search(&y).is_ok() {
                        return Err(GeometryError::RepeatedPair { x: p as u32, y, l1: la, l2: lb });
                    }
                }
            }
        }
    }

    let mut adj = vec![Bitset::new(n); n];
    for l in &lines {
        for (ai, &a) in l.iter().enumerate() {
            for &b in &l[ai + 1..] {
                adj[a as usize].set(b as usize);
                adj[b as usize].set(a as usize);
            }
        }
    }
    let neighbors: Vec<Vec<u32>> =
        adj.iter().map(|b| b.iter().map(|i| i as u32).collect()).collect();

    let mut g = Geometry {
        name,
        family,
        q,
        d,
        n,
        lines,
        point_lines,
        adj,
        neighbors,
        s_plus_1,
        t_plus_1,
        diameter: 0,
        dist: None,
        hash_hex: String::new(),
        subspaces,
    };

    let mut diameter = 0usize;
    if n <= DIST_MATRIX_LIMIT {
        let mut m = vec![0u8; n * n];
        for x in 0..n {
            let row = g.bfs_row(x);
            if let Some(y) = row.iter().position(|&v| v == u8::MAX) {
                return Err(GeometryError::Irregular(format!(
                    "not connected: no path from {x} to {y}"
                )));
            }
            diameter = diameter.max(*row.iter().max().unwrap() as usize);
            m[x * n..(x + 1) * n].copy_from_slice(&row);
        }
        g.dist = Some(m);
    } else {
        // Distance-regularity makes every eccentricity the diameter; take a
        // few rows so a defect still has a chance to surface.
        for x in [0, n / 3, n / 2, 2 * n / 3, n - 1] {
            let row = g.bfs_row(x);
            if let Some(y) = row.iter().position(|&v| v == u8::MAX) {
                return Err(GeometryError::Irregular(format!(
                    "not connected: no path from {x} to {y}"
                )));
            }
            diameter = diameter.max(*row.iter().max().unwrap() as usize);
        }
    }
    g.diameter = diameter;
    g.hash_hex = sha256_hex(&files::npg_bytes(&g.to_npg()));
    Ok(g)
}

/// The two near-polygon axioms. Pair uniqueness is checked exhaustively in
/// `assemble`; here the unique-nearest-point axiom is scanned over every
/// (point, line) pair at desk scale and over SAMPLE_COUNT seeded points
/// (each against every line) beyond that.
pub fn near_polygon_check(g: &Geometry, seed: u64) -> Result<(), GeometryError> {
    let exhaustive = g.n <= EXHAUSTIVE_LIMIT;
    let points: Vec<usize> = if exhaustive {
        (0..g.n).collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..SAMPLE_COUNT).map(|_| rng.gen_range(0..g.n)).collect()
    };
    for x in points {
        let row = g.dist_row(x);
        for (li, l) in g.lines.iter().enumerate() {
            let mut best = u8::MAX;
            let mut count = 0usize;
            for &p in l {
                let dxp = row[p as usize];
                if dxp < best {
                    best = dxp;
                    count = 1;
                } else if dxp == best {
                    count += 1;
                }
            }
            if count != 1 {
                return Err(GeometryError::NoUniqueNearest {
                    point: x as u32,
                    line: li as u32,
                    dist: best,
                    count,
                });
            }
        }
    }
    Ok(())
}
