//! Polar spaces of parabolic quadrics Q(2d,q), symplectic spaces W(2d-1,q)
//! and Hermitian spaces H(2d-1,q^2), and the enumeration of their totally
//! isotropic subspaces.
//!
//! Subspaces are kept in reduced row echelon form, which is a canonical
//! representative of the row space: two subspaces are equal as sets of
//! vectors exactly when their RREF matrices are equal. Enumeration walks
//! dimension by dimension, extending each totally isotropic subspace by a
//! perpendicular isotropic point and deduplicating through the canonical
//! form, so each subspace is produced exactly once however it is reached.

use std::collections::{HashMap, HashSet};

use thiserror::Error;

use crate::bitset::Bitset;
use crate::fields::{Fe, Field, FieldError};
use crate::matrix::{in_rowspace, rref, Mat};

#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Family {
    /// Parabolic quadric Q(2d, q), ambient dimension 2d+1.
    Q,
    /// Symplectic space W(2d-1, q), ambient dimension 2d.
    W,
    /// Hermitian space H(2d-1, q^2), ambient dimension 2d over GF(q^2).
    H,
}

impl Family {
    pub fn tag(self) -> &'static str {
        match self {
            Family::Q => "dq",
            Family::W => "dw",
            Family::H => "dh",
        }
    }
}

#[derive(Debug, Error)]
pub enum PolarError {
    #[error("rank {0} out of the supported range 2..=4")]
    RankOutOfRange(usize),
    #[error("base order {0} out of the supported range (prime powers up to 13)")]
    OrderOutOfRange(u32),
    #[error("{0} is not a prime power")]
    NotPrimePower(u32),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("level {level} exceeded the enumeration cap of {cap} subspaces")]
    LevelCap { level: usize, cap: usize },
}

/// A form of Witt index d over its field, with the ambient dimension fixed
/// by the family.
pub struct FormSpace {
    pub family: Family,
    pub d: usize,
    pub dim: usize,
    pub f: Field,
    /// Base order: the q in Q(2d,q) / W(2d-1,q) / H(2d-1,q^2).
    pub base_q: u32,
}

fn prime_power(q: u32) -> Option<(u32, u32)> {
    for p in 2..=q {
        if q % p == 0 {
            let mut k = 0;
            let mut m = q;
            while m % p == 0 {
                m /= p;
                k += 1;
            }
            return if m == 1 { Some((p, k)) } else { None };
        }
    }
    None
}

pub fn form_make(family: Family, d: usize, q: u32) -> Result<FormSpace, PolarError> {
    if !(2..=4).contains(&d) {
        return Err(PolarError::RankOutOfRange(d));
    }
    if !(2..=13).contains(&q) {
        return Err(PolarError::OrderOutOfRange(q));
    }
    let (p, k) = prime_power(q).ok_or(PolarError::NotPrimePower(q))?;
    let (f, dim) = match family {
        Family::Q => (Field::new(p, k)?, 2 * d + 1),
        Family::W => (Field::new(p, k)?, 2 * d),
        Family::H => (Field::new(p, 2 * k)?, 2 * d),
    };
    Ok(FormSpace { family, d, dim, f, base_q: q })
}

impl FormSpace {
    /// Name of the dual polar space this form carries, e.g. "DQ(6,3)".
    pub fn geometry_name(&self) -> String {
        match self.family {
            Family::Q => format!("DQ({},{})", 2 * self.d, self.f.q),
            Family::W => format!("DW({},{})", 2 * self.d - 1, self.f.q),
            Family::H => format!("DH({},{})", 2 * self.d - 1, self.f.q),
        }
    }

    /// The bilinear (for Q: polar, for H: sesquilinear) form.
    pub fn bilinear(&self, u: &[Fe], v: &[Fe]) -> Fe {
        let f = &self.f;
        let n = self.dim;
        let mut acc = Fe(0);
        match self.family {
            Family::Q => {
                let two = f.from_int(2);
                acc = f.mul(two, f.mul(u[0], v[0]));
                for i in 0..self.d {
                    let (a, b) = (1 + 2 * i, 2 + 2 * i);
                    acc = f.add(acc, f.add(f.mul(u[a], v[b]), f.mul(u[b], v[a])));
                }
            }
            Family::W => {
                for i in 0..self.d {
                    let t = f.sub(f.mul(u[i], v[n - 1 - i]), f.mul(u[n - 1 - i], v[i]));
                    acc = f.add(acc, t);
                }
            }
            Family::H => {
                for i in 0..n {
                    acc = f.add(acc, f.mul(u[i], f.conj(v[n - 1 - i])));
                }
            }
        }
        acc
    }

    /// Quadratic form value; only the Q family carries one.
    pub fn quad(&self, v: &[Fe]) -> Fe {
        assert!(self.family == Family::Q);
        let f = &self.f;
        let mut acc = f.mul(v[0], v[0]);
        for i in 0..self.d {
            acc = f.add(acc, f.mul(v[1 + 2 * i], v[2 + 2 * i]));
        }
        acc
    }

    /// Is the single vector isotropic / singular for the form?
    pub fn is_isotropic_vec(&self, v: &[Fe]) -> bool {
        match self.family {
            Family::Q => self.quad(v).0 == 0,
            // Alternating: every vector is isotropic.
            Family::W => true,
            Family::H => self.bilinear(v, v).0 == 0,
        }
    }

    /// Totally isotropic test for a subspace in canonical form. For quadrics
    /// in characteristic 2 the quadratic form is evaluated on every vector
    /// of the span rather than through the polar form alone.
    pub fn is_totally_isotropic(&self, s: &Subspace) -> bool {
        let rows: Vec<Vec<Fe>> = (0..s.nrows()).map(|i| s.row_fe(i)).collect();
        for (i, u) in rows.iter().enumerate() {
            if !self.is_isotropic_vec(u) {
                return false;
            }
            for v in rows.iter().skip(i + 1) {
                if self.bilinear(u, v).0 != 0 {
                    return false;
                }
            }
        }
        if self.family == Family::Q && self.f.p == 2 {
            return self.quad_vanishes_on_span(&rows);
        }
        true
    }

    fn quad_vanishes_on_span(&self, rows: &[Vec<Fe>]) -> bool {
        let f = &self.f;
        let r = rows.len();
        let mut coeff = vec![Fe(0); r];
        loop {
            // next odometer state
            let mut i = 0;
            loop {
                if i == r {
                    return true;
                }
                if (coeff[i].0 as u32) + 1 < f.q {
                    coeff[i].0 += 1;
                    break;
                }
                coeff[i] = Fe(0);
                i += 1;
            }
            let mut v = vec![Fe(0); self.dim];
            for (c, row) in coeff.iter().zip(rows) {
                if c.0 != 0 {
                    for (vj, rj) in v.iter_mut().zip(row) {
                        *vj = f.add(*vj, f.mul(*c, *rj));
                    }
                }
            }
            if self.quad(&v).0 != 0 {
                return false;
            }
        }
    }

    /// All isotropic projective points, as normalized representatives
    /// (leading coordinate 1), in lexicographic order.
    pub fn isotropic_points(&self) -> Vec<Vec<Fe>> {
        let mut out = Vec::new();
        let q = self.f.q;
        let n = self.dim;
        for lead in 0..n {
            let free = n - lead - 1;
            let mut digits = vec![0u32; free];
            loop {
                let mut v = vec![Fe(0); n];
                v[lead] = Fe(1);
                for (i, &dg) in digits.iter().enumerate() {
                    v[lead + 1 + i] = Fe(dg as u16);
                }
                if self.is_isotropic_vec(&v) {
                    out.push(v);
                }
                // odometer on the free coordinates, rightmost fastest
                let mut advanced = false;
                let mut i = free;
                while i > 0 {
                    i -= 1;
                    if digits[i] + 1 < q {
                        digits[i] += 1;
                        for d in digits[i + 1..].iter_mut() {
                            *d = 0;
                        }
                        advanced = true;
                        break;
                    }
                }
                if !advanced {
                    break;
                }
            }
        }
        out
    }
}

/// A subspace by its RREF basis, rows flattened row-major as element
/// encodings. Equality, hashing and ordering all read this canonical form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Subspace {
    pub cols: u16,
    pub rows: Vec<u16>,
}

impl Subspace {
    pub fn canonical(f: &Field, rows: &[Vec<Fe>]) -> Subspace {
        let mut m = Mat::from_rows(rows);
        rref(f, &mut m);
        Subspace::from_rref(&m)
    }

    fn from_rref(m: &Mat) -> Subspace {
        Subspace { cols: m.cols as u16, rows: m.a.iter().map(|e| e.0).collect() }
    }

    pub fn nrows(&self) -> usize {
        if self.cols == 0 {
            0
        } else {
            self.rows.len() / self.cols as usize
        }
    }

    pub fn row_fe(&self, i: usize) -> Vec<Fe> {
        let c = self.cols as usize;
        self.rows[i * c..(i + 1) * c].iter().map(|&e| Fe(e)).collect()
    }

    pub fn to_mat(&self) -> Mat {
        Mat {
            rows: self.nrows(),
            cols: self.cols as usize,
            a: self.rows.iter().map(|&e| Fe(e)).collect(),
        }
    }

    /// Canonical byte serialization: big-endian element encodings, row-major,
    /// so byte order and element order agree.
    pub fn canonical_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(2 + 2 * self.rows.len());
        out.extend_from_slice(&self.cols.to_be_bytes());
        for &e in &self.rows {
            out.extend_from_slice(&e.to_be_bytes());
        }
        out
    }
}

#[derive(Copy, Clone, Debug)]
pub struct EnumLimits {
    /// Cap on the number of subspaces held at any one dimension.
    pub max_level: usize,
}

impl Default for EnumLimits {
    fn default() -> Self {
        EnumLimits { max_level: 5_000_000 }
    }
}

pub struct Generators {
    /// Totally isotropic subspaces of vector dimension d, sorted.
    pub maximals: Vec<Subspace>,
    /// Vector dimension d-1, sorted.
    pub next_to_maximals: Vec<Subspace>,
}

/// Pairwise-perpendicularity bitsets are only precomputed when the point
/// count keeps them under ~50 MB.
const PERP_TABLE_LIMIT: usize = 20_000;

pub fn enumerate_generators(s: &FormSpace, limits: EnumLimits) -> Result<Generators, PolarError> {
    let pts = s.isotropic_points();
    let npts = pts.len();
    let f = &s.f;

    let mut pt_index: HashMap<Vec<Fe>, u32> = HashMap::with_capacity(npts);
    for (i, p) in pts.iter().enumerate() {
        pt_index.insert(p.clone(), i as u32);
    }

    let perp: Option<Vec<Bitset>> = if npts <= PERP_TABLE_LIMIT {
        let mut table = vec![Bitset::new(npts); npts];
        for i in 0..npts {
            table[i].set(i);
            for j in (i + 1)..npts {
                if s.bilinear(&pts[i], &pts[j]).0 == 0 {
                    table[i].set(j);
                    table[j].set(i);
                }
            }
        }
        Some(table)
    } else {
        None
    };

    let mut level: Vec<Subspace> = pts.iter().map(|p| Subspace::canonical(f, &[p.clone()])).collect();
    level.sort();
    if level.len() > limits.max_level {
        return Err(PolarError::LevelCap { level: 1, cap: limits.max_level });
    }
    let mut prev: Vec<Subspace> = Vec::new();

    for lvl in 1..s.d {
        let mut next: HashSet<Subspace> = HashSet::new();
        let mut cand = Bitset::new(npts);
        for u in &level {
            let mat = u.to_mat();
            let row_ids: Vec<u32> = (0..u.nrows()).map(|i| pt_index[&u.row_fe(i)]).collect();
            let candidates: Vec<usize> = if let Some(table) = &perp {
                cand.zero();
                cand.or_assign(&table[row_ids[0] as usize]);
                for &r in &row_ids[1..] {
                    cand.and_assign(&table[r as usize]);
                }
                cand.iter().collect()
            } else {
                (0..npts)
                    .filter(|&j| row_ids.iter().all(|&r| s.bilinear(&pts[r as usize], &pts[j]).0 == 0))
                    .collect()
            };
            for c in candidates {
                if in_rowspace(f, &mat, &pts[c]) {
                    continue;
                }
                let mut rows: Vec<Vec<Fe>> = (0..u.nrows()).map(|i| u.row_fe(i)).collect();
                rows.push(pts[c].clone());
                next.insert(Subspace::canonical(f, &rows));
                if next.len() > limits.max_level {
                    return Err(PolarError::LevelCap { level: lvl + 1, cap: limits.max_level });
                }
            }
        }
        prev = level;
        level = next.into_iter().collect();
        level.sort();
    }

    Ok(Generators { maximals: level, next_to_maximals: prev })
}
