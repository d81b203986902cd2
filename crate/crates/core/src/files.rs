//! Plain-text interchange formats and content hashing.
//!
//! Three formats, all line-oriented, decimal integers, 0-based indices:
//!
//! * `.npg`: a point-line geometry. Serialization is canonical and
//!   `parse(serialize(x)) == x` holds byte for byte; the content hash of a
//!   geometry is the SHA-256 of exactly these bytes.
//! * `.ovd`: a candidate m-ovoid, bound to its geometry by hash.
//! * `.grp`: matrix generators of a prescribed group, as field-element
//!   encodings; `frob r` marks a semilinear generator acting with the
//!   r-th Frobenius power.

use sha2::{Digest, Sha256};
use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("io: {0}")]
    Io(#[from] io::Error),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

fn perr<T>(line: usize, msg: impl Into<String>) -> Result<T, FormatError> {
    Err(FormatError::Parse { line, msg: msg.into() })
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    let mut out = String::with_capacity(64);
    for b in digest {
        write!(out, "{b:02x}").unwrap();
    }
    out
}

/// Splits into lines, rejecting anything but '\n' terminators.
struct LineReader<'a> {
    rest: &'a str,
    /// 1-based number of the line about to be read.
    pub lineno: usize,
}

impl<'a> LineReader<'a> {
    fn new(text: &'a str) -> Self {
        LineReader { rest: text, lineno: 1 }
    }

    fn next_line(&mut self) -> Option<&'a str> {
        if self.rest.is_empty() {
            return None;
        }
        let (line, rest) = match self.rest.find('\n') {
            Some(i) => (&self.rest[..i], &self.rest[i + 1..]),
            None => (self.rest, ""),
        };
        self.rest = rest;
        self.lineno += 1;
        Some(line)
    }

    fn expect_kv(&mut self, key: &str) -> Result<&'a str, FormatError> {
        let at = self.lineno;
        match self.next_line() {
            Some(l) => match l.strip_prefix(key).and_then(|r| r.strip_prefix(' ')) {
                Some(v) if !v.is_empty() => Ok(v),
                _ => perr(at, format!("expected `{key} <value>`, got `{l}`")),
            },
            None => perr(at, format!("expected `{key} <value>`, got end of file")),
        }
    }
}

fn parse_int<T: std::str::FromStr>(line: usize, s: &str, what: &str) -> Result<T, FormatError> {
    // Reject leading zeros and signs so the canonical form is unique.
    if s != "0" && (s.starts_with('0') || s.starts_with('+') || s.starts_with('-')) {
        return perr(line, format!("non-canonical {what} `{s}`"));
    }
    s.parse::<T>().map_err(|_| FormatError::Parse {
        line,
        msg: format!("bad {what} `{s}`"),
    })
}

fn parse_index_row(line: usize, s: &str, n: usize, what: &str) -> Result<Vec<u32>, FormatError> {
    let mut out = Vec::new();
    for tok in s.split(' ') {
        let v: u32 = parse_int(line, tok, what)?;
        if (v as usize) >= n {
            return perr(line, format!("{what} {v} out of range (n = {n})"));
        }
        if let Some(&last) = out.last() {
            if v <= last {
                return perr(line, format!("{what}s not strictly ascending at {v}"));
            }
        }
        out.push(v);
    }
    Ok(out)
}

// ---------------------------------------------------------------- .npg

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NpgData {
    pub name: String,
    pub family: String,
    pub q: u32,
    pub d: u32,
    pub n: usize,
    /// Each line ascending, whole list lexicographically sorted.
    pub lines: Vec<Vec<u32>>,
}

pub fn npg_bytes(g: &NpgData) -> Vec<u8> {
    let mut s = String::new();
    s.push_str("NPG 1\n");
    writeln!(s, "name {}", g.name).unwrap();
    writeln!(s, "family {}", g.family).unwrap();
    writeln!(s, "q {}", g.q).unwrap();
    writeln!(s, "d {}", g.d).unwrap();
    writeln!(s, "n {}", g.n).unwrap();
    writeln!(s, "lines {}", g.lines.len()).unwrap();
    for line in &g.lines {
        let mut first = true;
        for &p in line {
            if !first {
                s.push(' ');
            }
            write!(s, "{p}").unwrap();
            first = false;
        }
        s.push('\n');
    }
    s.into_bytes()
}

pub fn parse_npg(bytes: &[u8]) -> Result<NpgData, FormatError> {
    let text = std::str::from_utf8(bytes)
        .map_err(|_| FormatError::Parse { line: 0, msg: "not utf-8".into() })?;
    let mut r = LineReader::new(text);
    match r.next_line() {
        Some("NPG 1") => {}
        other => return perr(1, format!("expected `NPG 1`, got `{}`", other.unwrap_or(""))),
    }
    let name = r.expect_kv("name")?.to_string();
    let family = r.expect_kv("family")?.to_string();
    let (at, v) = (r.lineno, r.expect_kv("q")?);
    let q: u32 = parse_int(at, v, "q")?;
    let (at, v) = (r.lineno, r.expect_kv("d")?);
    let d: u32 = parse_int(at, v, "d")?;
    let (at, v) = (r.lineno, r.expect_kv("n")?);
    let n: usize = parse_int(at, v, "n")?;
    let (at, v) = (r.lineno, r.expect_kv("lines")?);
    let nlines: usize = parse_int(at, v, "line count")?;

    let mut lines: Vec<Vec<u32>> = Vec::with_capacity(nlines);
    for _ in 0..nlines {
        let at = r.lineno;
        let Some(row) = r.next_line() else {
            return perr(at, format!("expected {nlines} geometry lines, file ends early"));
        };
        let row = parse_index_row(at, row, n, "point index")?;
        if let Some(prev) = lines.last() {
            if row <= *prev {
                return perr(at, "geometry lines not sorted strictly ascending");
            }
        }
        lines.push(row);
    }
    if let Some(_) = r.next_line() {
        return perr(r.lineno - 1, "trailing content after the declared lines");
    }
    let parsed = NpgData { name, family, q, d, n, lines };
    if npg_bytes(&parsed) != bytes {
        return perr(0, "file is not in canonical serialized form");
    }
    Ok(parsed)
}

pub fn read_npg(path: &Path) -> Result<NpgData, FormatError> {
    parse_npg(&fs::read(path)?)
}

pub fn write_npg(path: &Path, g: &NpgData) -> io::Result<()> {
    fs::write(path, npg_bytes(g))
}

// ---------------------------------------------------------------- .ovd

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OvdData {
    /// SHA-256 of the geometry's canonical bytes, lowercase hex.
    pub geom: String,
    pub m: u32,
    pub members: Vec<u32>,
}

pub fn ovd_bytes(o: &OvdData) -> Vec<u8> {
    let mut s = String::new();
    s.push_str("OVD 1\n");
    writeln!(s, "geom {}", o.geom).unwrap();
    writeln!(s, "m {}", o.m).unwrap();
    for &p in &o.members {
        writeln!(s, "{p}").unwrap();
    }
    s.into_bytes()
}

pub fn parse_ovd(bytes: &[u8]) -> Result<OvdData, FormatError> {
    let text = std::str::from_utf8(bytes)
        .map_err(|_| FormatError::Parse { line: 0, msg: "not utf-8".into() })?;
    let mut r = LineReader::new(text);
    match r.next_line() {
        Some("OVD 1") => {}
        other => return perr(1, format!("expected `OVD 1`, got `{}`", other.unwrap_or(""))),
    }
    let (at, geom) = (r.lineno, r.expect_kv("geom")?.to_string());
    if geom.len() != 64 || !geom.bytes().all(|b| b.is_ascii_hexdigit() && !b.is_ascii_uppercase()) {
        return perr(at, "geom must be 64 lowercase hex digits");
    }
    let (at, v) = (r.lineno, r.expect_kv("m")?);
    let m: u32 = parse_int(at, v, "m")?;
    let mut members = Vec::new();
    while let Some(l) = r.next_line() {
        let at = r.lineno - 1;
        let v: u32 = parse_int(at, l, "point index")?;
        if let Some(&last) = members.last() {
            if v <= last {
                return perr(at, format!("indices not strictly ascending at {v}"));
            }
        }
        members.push(v);
    }
    Ok(OvdData { geom, m, members })
}

pub fn read_ovd(path: &Path) -> Result<OvdData, FormatError> {
    parse_ovd(&fs::read(path)?)
}

pub fn write_ovd(path: &Path, o: &OvdData) -> io::Result<()> {
    fs::write(path, ovd_bytes(o))
}

// ---------------------------------------------------------------- .grp

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrpGen {
    /// Frobenius power applied before the matrix; 0 for a linear map.
    pub frob: u32,
    /// dim rows of dim field-element encodings.
    pub rows: Vec<Vec<u32>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrpData {
    /// Field order the encodings live in (the full order, q^2 for Hermitian).
    pub q: u32,
    pub dim: usize,
    pub gens: Vec<GrpGen>,
}

pub fn grp_bytes(g: &GrpData) -> Vec<u8> {
    let mut s = String::new();
    s.push_str("GRP 1\n");
    writeln!(s, "q {}", g.q).unwrap();
    writeln!(s, "dim {}", g.dim).unwrap();
    for gen in &g.gens {
        s.push('\n');
        if gen.frob != 0 {
            writeln!(s, "frob {}", gen.frob).unwrap();
        }
        for row in &gen.rows {
            let mut first = true;
            for &e in row {
                if !first {
                    s.push(' ');
                }
                write!(s, "{e}").unwrap();
                first = false;
            }
            s.push('\n');
        }
    }
    s.into_bytes()
}

pub fn parse_grp(bytes: &[u8]) -> Result<GrpData, FormatError> {
    let text = std::str::from_utf8(bytes)
        .map_err(|_| FormatError::Parse { line: 0, msg: "not utf-8".into() })?;
    let mut r = LineReader::new(text);
    match r.next_line() {
        Some("GRP 1") => {}
        other => return perr(1, format!("expected `GRP 1`, got `{}`", other.unwrap_or(""))),
    }
    let (at, v) = (r.lineno, r.expect_kv("q")?);
    let q: u32 = parse_int(at, v, "q")?;
    if q < 2 {
        return perr(at, "q must be at least 2");
    }
    let (at, v) = (r.lineno, r.expect_kv("dim")?);
    let dim: usize = parse_int(at, v, "dim")?;
    if dim == 0 {
        return perr(at, "dim must be positive");
    }

    let mut gens = Vec::new();
    loop {
        // Skip blank separator lines between generator blocks.
        let mut first = loop {
            match r.next_line() {
                None => {
                    return if gens.is_empty() {
                        perr(r.lineno, "no generators")
                    } else {
                        Ok(GrpData { q, dim, gens })
                    };
                }
                Some("") => continue,
                Some(l) => break l,
            }
        };
        let mut frob = 0u32;
        if let Some(v) = first.strip_prefix("frob ") {
            frob = parse_int(r.lineno - 1, v, "frob")?;
            let at = r.lineno;
            first = match r.next_line() {
                Some(l) if !l.is_empty() => l,
                _ => return perr(at, "expected a matrix row after `frob`"),
            };
        }
        let mut rows = Vec::with_capacity(dim);
        let mut row_line = first;
        loop {
            let at = r.lineno - 1;
            let mut row = Vec::with_capacity(dim);
            for tok in row_line.split(' ') {
                let e: u32 = parse_int(at, tok, "matrix entry")?;
                if e >= q {
                    return perr(at, format!("entry {e} not a field element (q = {q})"));
                }
                row.push(e);
            }
            if row.len() != dim {
                return perr(at, format!("row has {} entries, expected {dim}", row.len()));
            }
            rows.push(row);
            if rows.len() == dim {
                break;
            }
            let at = r.lineno;
            row_line = match r.next_line() {
                Some(l) if !l.is_empty() => l,
                _ => return perr(at, format!("matrix ends after {} of {dim} rows", rows.len())),
            };
        }
        gens.push(GrpGen { frob, rows });
    }
}

pub fn read_grp(path: &Path) -> Result<GrpData, FormatError> {
    parse_grp(&fs::read(path)?)
}

pub fn write_grp(path: &Path, g: &GrpData) -> io::Result<()> {
    fs::write(path, grp_bytes(g))
}
