//! Canonical labeling of a geometry with a marked point set, for
//! equivalence classification and stabilizer computation.
//!
//! The object being labeled is the bipartite point/line incidence graph
//! with three vertex colors: marked point, unmarked point, line. Labeling
//! is individualization-refinement: refine the coloring to an equitable
//! partition, individualize one vertex of the first smallest non-singleton
//! cell, recurse over the cell's candidates, and keep the best leaf by
//! lexicographic (trace, bytes). Leaves that reproduce the first leaf's
//! bytes yield automorphisms, which in turn prune candidate orbits, so the
//! tree stays near the size of the automorphism group itself.

use crate::geometry::Geometry;
use crate::group::{closure, GroupError, Perm};
use crate::ovoid::OvoidCertificate;
use crate::files::sha256_hex;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CanonError {
    #[error("certificate is not verified")]
    NotVerified,
    #[error("certificate bound to geometry {expected}, got {found}")]
    HashMismatch { expected: String, found: String },
    #[error("labeling tree exceeded {cap} nodes")]
    CapExceeded { cap: usize },
    #[error("group enumeration exceeded its cap")]
    GroupCap(#[from] GroupError),
}

/// Vertex-colored graph in CSR form. Vertices 0..n, colors need not be
/// contiguous; edges stored both ways.
#[derive(Debug, Clone)]
pub struct ColoredGraph {
    pub n: usize,
    pub colors: Vec<u32>,
    off: Vec<u32>,
    adj: Vec<u32>,
}

impl ColoredGraph {
    pub fn new(n: usize, colors: Vec<u32>, edges: &[(u32, u32)]) -> ColoredGraph {
        assert_eq!(colors.len(), n);
        let mut deg = vec![0u32; n];
        for &(a, b) in edges {
            deg[a as usize] += 1;
            deg[b as usize] += 1;
        }
        let mut off = vec![0u32; n + 1];
        for i in 0..n {
            off[i + 1] = off[i] + deg[i];
        }
        let mut adj = vec![0u32; off[n] as usize];
        let mut cur = off.clone();
        for &(a, b) in edges {
            adj[cur[a as usize] as usize] = b;
            cur[a as usize] += 1;
            adj[cur[b as usize] as usize] = a;
            cur[b as usize] += 1;
        }
        let mut g = ColoredGraph { n, colors, off, adj };
        g.sort_adj();
        g
    }

    fn sort_adj(&mut self) {
        for v in 0..self.n {
            let (a, b) = (self.off[v] as usize, self.off[v + 1] as usize);
            self.adj[a..b].sort_unstable();
        }
    }

    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.adj[self.off[v] as usize..self.off[v + 1] as usize]
    }

    /// The graph with every vertex v renamed to perm(v); for self-tests.
    pub fn permuted(&self, perm: &Perm) -> ColoredGraph {
        assert_eq!(perm.degree(), self.n);
        let mut colors = vec![0u32; self.n];
        let mut edges = Vec::with_capacity(self.adj.len() / 2);
        for v in 0..self.n {
            colors[perm.apply(v as u32) as usize] = self.colors[v];
            for &w in self.neighbors(v) {
                if v as u32 <= w {
                    edges.push((perm.apply(v as u32), perm.apply(w)));
                }
            }
        }
        ColoredGraph::new(self.n, colors, &edges)
    }

    fn is_automorphism(&self, p: &Perm) -> bool {
        if p.degree() != self.n {
            return false;
        }
        for v in 0..self.n {
            let w = p.apply(v as u32) as usize;
            if self.colors[v] != self.colors[w] {
                return false;
            }
            let mut img: Vec<u32> = self.neighbors(v).iter().map(|&x| p.apply(x)).collect();
            img.sort_unstable();
            if img != self.neighbors(w) {
                return false;
            }
        }
        true
    }
}

/// Point vertices 0..n (marked points color 0, others 1), line vertices
/// n..n+L (color 2), edges by incidence.
pub fn incidence_graph(g: &Geometry, members: &[u32]) -> ColoredGraph {
    let n = g.n + g.lines.len();
    let mut colors = vec![1u32; n];
    for &p in members {
        colors[p as usize] = 0;
    }
    let mut edges = Vec::new();
    for (li, line) in g.lines.iter().enumerate() {
        let lv = (g.n + li) as u32;
        colors[lv as usize] = 2;
        for &p in line {
            edges.push((p, lv));
        }
    }
    ColoredGraph::new(n, colors, &edges)
}

fn fnv_fold(h: u64, x: u64) -> u64 {
    (h ^ x).wrapping_mul(0x100_0000_01b3)
}

/// Refines to an equitable coloring: each round a vertex gets a key
/// hashed from its color and the sorted colors of its neighbors, and new
/// color ids are assigned by key rank; repeat to fixpoint. The key is a
/// function of isomorphism-invariant data only, so the resulting
/// partition, while possibly coarser on a hash collision, is identical
/// across isomorphic graphs. Each round appends an invariant hash to the
/// trace.
fn refine(cg: &ColoredGraph, colors: &mut [u32], trace: &mut Vec<u64>) -> usize {
    let mut ncolors = {
        let mut c: Vec<u32> = colors.to_vec();
        c.sort_unstable();
        c.dedup();
        c.len()
    };
    let mut keys = vec![0u64; cg.n];
    let mut order: Vec<u32> = (0..cg.n as u32).collect();
    let mut scratch: Vec<u32> = Vec::new();
    loop {
        for v in 0..cg.n {
            scratch.clear();
            scratch.extend(cg.neighbors(v).iter().map(|&w| colors[w as usize]));
            scratch.sort_unstable();
            let mut h = fnv_fold(0xcbf2_9ce4_8422_2325, colors[v] as u64);
            for &c in &scratch {
                h = fnv_fold(h, c as u64);
            }
            keys[v] = h;
        }
        order.sort_unstable_by_key(|&v| keys[v as usize]);
        let mut next = 0u32;
        let mut round_hash = 0xcbf2_9ce4_8422_2325u64;
        for (i, &v) in order.iter().enumerate() {
            if i > 0 && keys[order[i - 1] as usize] != keys[v as usize] {
                next += 1;
            }
            colors[v as usize] = next;
            round_hash = fnv_fold(round_hash, keys[v as usize]);
        }
        let now = next as usize + 1;
        trace.push(fnv_fold(round_hash, now as u64));
        if now == ncolors {
            return now;
        }
        ncolors = now;
    }
}

/// First smallest non-singleton color class, as its sorted vertex list.
fn target_cell(cg: &ColoredGraph, colors: &[u32], ncolors: usize) -> Option<Vec<u32>> {
    let mut size = vec![0u32; ncolors];
    for &c in colors {
        size[c as usize] += 1;
    }
    let mut best: Option<(u32, u32)> = None;
    for (c, &s) in size.iter().enumerate() {
        if s > 1 && best.map_or(true, |(bs, _)| s < bs) {
            best = Some((s, c as u32));
        }
    }
    let (_, cell) = best?;
    Some((0..cg.n as u32).filter(|&v| colors[v as usize] == cell).collect())
}

fn leaf_bytes(cg: &ColoredGraph, colors: &[u32]) -> (Vec<u8>, Vec<u32>) {
    // discrete coloring: the color of a vertex is its canonical position
    let labeling: Vec<u32> = colors.to_vec();
    let mut inv = vec![0u32; cg.n];
    for (v, &pos) in labeling.iter().enumerate() {
        inv[pos as usize] = v as u32;
    }
    let mut bytes = Vec::with_capacity(8 + cg.n * 4 + cg.adj.len() * 4);
    bytes.extend_from_slice(b"CIG1");
    bytes.extend_from_slice(&(cg.n as u32).to_le_bytes());
    for pos in 0..cg.n {
        bytes.extend_from_slice(&cg.colors[inv[pos] as usize].to_le_bytes());
    }
    for pos in 0..cg.n {
        let mut nb: Vec<u32> =
            cg.neighbors(inv[pos] as usize).iter().map(|&w| labeling[w as usize]).collect();
        nb.sort_unstable();
        bytes.extend_from_slice(&(nb.len() as u32).to_le_bytes());
        for w in nb {
            bytes.extend_from_slice(&w.to_le_bytes());
        }
    }
    (bytes, labeling)
}

#[derive(Debug, Clone)]
pub struct CanonicalForm {
    pub bytes: Vec<u8>,
    /// sha256 of bytes; the classification key.
    pub digest: String,
    /// vertex -> canonical position.
    pub labeling: Vec<u32>,
    /// Automorphisms of the colored graph harvested during labeling;
    /// generate the full automorphism group.
    pub aut_gens: Vec<Perm>,
}

pub const DEFAULT_CANON_CAP: usize = 2_000_000;

struct Leaf {
    trace: Vec<u64>,
    bytes: Vec<u8>,
    labeling: Vec<u32>,
}

struct Searcher<'a> {
    cg: &'a ColoredGraph,
    cap: usize,
    nodes: usize,
    first: Option<Leaf>,
    best: Option<Leaf>,
    auts: Vec<Perm>,
}

impl Searcher<'_> {
    /// Lexicographic comparison of a partial trace against a leaf trace.
    fn cmp_prefix(current: &[u64], leaf: &[u64]) -> std::cmp::Ordering {
        for (i, &x) in current.iter().enumerate() {
            match leaf.get(i) {
                Some(&y) => match x.cmp(&y) {
                    std::cmp::Ordering::Equal => continue,
                    o => return o,
                },
                // longer than the leaf trace: by construction traces of
                // leaves extend traces of their ancestors, so a strictly
                // longer prefix means a different (deeper) shape; order it
                // after.
                None => return std::cmp::Ordering::Greater,
            }
        }
        std::cmp::Ordering::Equal
    }

    fn orbit_reps(&self, cell: &[u32], fixed: &[u32]) -> Vec<u32> {
        if self.auts.is_empty() {
            return cell.to_vec();
        }
        let mut parent: Vec<u32> = (0..self.cg.n as u32).collect();
        fn find(p: &mut [u32], mut i: u32) -> u32 {
            while p[i as usize] != i {
                p[i as usize] = p[p[i as usize] as usize];
                i = p[i as usize];
            }
            i
        }
        for g in &self.auts {
            if fixed.iter().any(|&v| g.apply(v) != v) {
                continue;
            }
            for v in 0..self.cg.n as u32 {
                let (a, b) = (find(&mut parent, v), find(&mut parent, g.apply(v)));
                if a != b {
                    parent[a.max(b) as usize] = a.min(b);
                }
            }
        }
        let mut seen = std::collections::HashSet::new();
        cell.iter().copied().filter(|&v| seen.insert(find(&mut parent, v))).collect()
    }

    fn descend(
        &mut self,
        colors: Vec<u32>,
        ncolors: usize,
        trace: Vec<u64>,
        fixed: &mut Vec<u32>,
    ) -> Result<(), CanonError> {
        self.nodes += 1;
        if self.nodes > self.cap {
            return Err(CanonError::CapExceeded { cap: self.cap });
        }
        let cell = match target_cell(self.cg, &colors, ncolors) {
            None => {
                let (bytes, labeling) = leaf_bytes(self.cg, &colors);
                match &self.first {
                    None => {
                        let leaf = Leaf { trace: trace.clone(), bytes: bytes.clone(), labeling: labeling.clone() };
                        self.first = Some(leaf);
                        self.best = Some(Leaf { trace, bytes, labeling });
                    }
                    Some(first) => {
                        if bytes == first.bytes {
                            // two labelings of one graph with equal images
                            // compose to an automorphism
                            let mut inv = vec![0u32; self.cg.n];
                            for (v, &pos) in first.labeling.iter().enumerate() {
                                inv[pos as usize] = v as u32;
                            }
                            let gamma =
                                Perm(labeling.iter().map(|&pos| inv[pos as usize]).collect());
                            if !gamma.is_identity() && self.cg.is_automorphism(&gamma) {
                                self.auts.push(gamma);
                            }
                        }
                        let best = self.best.as_ref().unwrap();
                        if (&trace, &bytes) < (&best.trace, &best.bytes) {
                            self.best = Some(Leaf { trace, bytes, labeling });
                        }
                    }
                }
                return Ok(());
            }
            Some(c) => c,
        };
        for v in self.orbit_reps(&cell, fixed) {
            let mut c2 = colors.clone();
            c2[v as usize] = ncolors as u32;
            let mut t2 = trace.clone();
            let nc2 = refine(self.cg, &mut c2, &mut t2);
            // keep subtrees that can still beat the best leaf, plus those
            // tracking the first leaf (the automorphism anchor)
            if let Some(best) = &self.best {
                let vs_best = Self::cmp_prefix(&t2, &best.trace);
                let anchored = self
                    .first
                    .as_ref()
                    .is_some_and(|f| Self::cmp_prefix(&t2, &f.trace) == std::cmp::Ordering::Equal);
                if vs_best == std::cmp::Ordering::Greater && !anchored {
                    continue;
                }
            }
            fixed.push(v);
            self.descend(c2, nc2, t2, fixed)?;
            fixed.pop();
        }
        Ok(())
    }
}

/// Canonical form of a colored graph: equal bytes exactly when two graphs
/// are isomorphic as colored graphs.
pub fn canonical_graph(cg: &ColoredGraph, cap: usize) -> Result<CanonicalForm, CanonError> {
    let mut colors = cg.colors.clone();
    let mut trace = Vec::new();
    let ncolors = refine(cg, &mut colors, &mut trace);
    let mut s = Searcher { cg, cap, nodes: 0, first: None, best: None, auts: Vec::new() };
    s.descend(colors, ncolors, trace, &mut Vec::new())?;
    let best = s.best.expect("at least one leaf");
    Ok(CanonicalForm {
        digest: sha256_hex(&best.bytes),
        bytes: best.bytes,
        labeling: best.labeling,
        aut_gens: s.auts,
    })
}

fn check_cert(g: &Geometry, cert: &OvoidCertificate) -> Result<(), CanonError> {
    if !cert.verified {
        return Err(CanonError::NotVerified);
    }
    if cert.geometry_hash != g.hash_hex {
        return Err(CanonError::HashMismatch {
            expected: cert.geometry_hash.clone(),
            found: g.hash_hex.clone(),
        });
    }
    Ok(())
}

/// Canonical form of (geometry, marked point set).
pub fn canonical_form(g: &Geometry, cert: &OvoidCertificate) -> Result<CanonicalForm, CanonError> {
    check_cert(g, cert)?;
    canonical_graph(&incidence_graph(g, &cert.members), DEFAULT_CANON_CAP)
}

/// Generators of the automorphism group of the geometry preserving the
/// marked set, as point permutations.
pub fn automorphism_point_group(g: &Geometry, members: &[u32]) -> Result<Vec<Perm>, CanonError> {
    let cf = canonical_graph(&incidence_graph(g, members), DEFAULT_CANON_CAP)?;
    Ok(cf
        .aut_gens
        .iter()
        .map(|p| Perm(p.0[..g.n].to_vec()))
        .filter(|p| !p.is_identity())
        .collect())
}

#[derive(Debug, Clone)]
pub struct Classification {
    /// Certificate indices grouped by equivalence, classes ordered by
    /// digest, members ascending.
    pub classes: Vec<Vec<usize>>,
    /// Digest per class, parallel to classes.
    pub digests: Vec<String>,
}

/// Partition of certificates into equivalence classes under colored-graph
/// isomorphism.
pub fn classify(g: &Geometry, certs: &[OvoidCertificate]) -> Result<Classification, CanonError> {
    let mut by_digest: std::collections::BTreeMap<String, Vec<usize>> =
        std::collections::BTreeMap::new();
    for (i, cert) in certs.iter().enumerate() {
        check_cert(g, cert)?;
        let cf = canonical_form(g, cert)?;
        by_digest.entry(cf.digest).or_default().push(i);
    }
    let mut classes = Vec::new();
    let mut digests = Vec::new();
    for (d, members) in by_digest {
        digests.push(d);
        classes.push(members);
    }
    Ok(Classification { classes, digests })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilizerReport {
    pub group_order: u64,
    pub order: u64,
    /// (element order, how many elements of that order), ascending.
    pub element_orders: Vec<(u64, usize)>,
}

/// Setwise stabilizer of a point set inside the group generated by the
/// given permutations, by filtering the full enumeration.
pub fn stabilizer_in_group(
    n: usize,
    members: &[u32],
    gens: &[Perm],
    cap: usize,
) -> Result<StabilizerReport, CanonError> {
    let elements = if gens.is_empty() { vec![Perm::identity(n)] } else { closure(gens, cap)? };
    let mut inset = vec![false; n];
    for &p in members {
        inset[p as usize] = true;
    }
    let mut orders: std::collections::BTreeMap<u64, usize> = std::collections::BTreeMap::new();
    let mut order = 0u64;
    for g in &elements {
        if members.iter().all(|&p| inset[g.apply(p) as usize]) {
            order += 1;
            *orders.entry(g.order()).or_default() += 1;
        }
    }
    Ok(StabilizerReport {
        group_order: elements.len() as u64,
        order,
        element_orders: orders.into_iter().collect(),
    })
}
