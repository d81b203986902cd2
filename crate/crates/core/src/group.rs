//! Permutation groups on geometry points, matrix similitudes of the
//! underlying forms, and the bridge between the two representations.
//!
//! A matrix generator is a semilinear map x -> frob^r(x) M acting on row
//! vectors. It induces a permutation of the maximals, hence of geometry
//! points; conversely an abstract point permutation that really comes from
//! a semilinear similitude can be lifted back to matrix form. Both
//! directions verify their output, so a wrong lift cannot escape.

use crate::fields::{Fe, Field};
use crate::files::{GrpData, GrpGen};
use crate::geometry::Geometry;
use crate::matrix::{inverse, mat_mul, rank, vec_mat, Mat};
use crate::polar::{Family, FormSpace, Subspace};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::{HashMap, HashSet, VecDeque};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GroupError {
    #[error("group closure exceeds the cap of {cap} elements")]
    TooLarge { cap: usize },
    #[error("generator {gen} is singular")]
    NotInvertible { gen: usize },
    #[error("generator {gen} does not scale the form")]
    NotSimilitude { gen: usize },
    #[error("generator file mismatch: {0}")]
    WrongShape(String),
    #[error("geometry carries no subspace data; build it from a form first")]
    NoSubspaceData,
    #[error("map does not send every point to a point (maximal {0} has no image)")]
    NotPointMap(u32),
    #[error("point map does not send line {0} to a line")]
    NotLineMap(u32),
    #[error("permutation is not induced by a semilinear similitude: {0}")]
    NotSemilinear(String),
}

/// A permutation of 0..n sending i to images[i].
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Perm(pub Vec<u32>);

impl Perm {
    pub fn identity(n: usize) -> Perm {
        Perm((0..n as u32).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, i: u32) -> u32 {
        self.0[i as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// self followed by other.
    pub fn then(&self, other: &Perm) -> Perm {
        assert_eq!(self.degree(), other.degree());
        Perm(self.0.iter().map(|&x| other.0[x as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Perm(inv)
    }

    /// Least common multiple of the cycle lengths.
    pub fn order(&self) -> u64 {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut acc: u128 = 1;
        for i in 0..n {
            if seen[i] {
                continue;
            }
            let mut len = 0u128;
            let mut j = i;
            while !seen[j] {
                seen[j] = true;
                j = self.0[j] as usize;
                len += 1;
            }
            acc = acc / gcd(acc, len) * len;
        }
        u64::try_from(acc).expect("element order overflows u64")
    }

    pub fn pow(&self, e: u64) -> Perm {
        let mut acc = Perm::identity(self.degree());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.then(&base);
            }
            base = base.then(&base);
            e >>= 1;
        }
        acc
    }
}

fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Every element generated by gens, identity first, in breadth-first
/// order. Errors once the element count would pass cap.
pub fn closure(gens: &[Perm], cap: usize) -> Result<Vec<Perm>, GroupError> {
    let n = gens.first().map_or(0, Perm::degree);
    let id = Perm::identity(n);
    let mut seen: HashSet<Perm> = HashSet::new();
    seen.insert(id.clone());
    let mut out = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        for h in gens {
            let gh = g.then(h);
            if seen.insert(gh.clone()) {
                if out.len() >= cap {
                    return Err(GroupError::TooLarge { cap });
                }
                out.push(gh.clone());
                queue.push_back(gh);
            }
        }
    }
    Ok(out)
}

/// Orbit id per point (ids 0.. in order of least orbit member) and the
/// orbit count.
pub fn orbits(gens: &[Perm], n: usize) -> (Vec<u32>, usize) {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for g in gens {
        for i in 0..n {
            let (a, b) = (find(&mut parent, i), find(&mut parent, g.0[i] as usize));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut id = vec![u32::MAX; n];
    let mut count = 0;
    for i in 0..n {
        let r = find(&mut parent, i);
        if id[r] == u32::MAX {
            id[r] = count as u32;
            count += 1;
        }
        id[i] = id[r];
    }
    (id, count)
}

/// Semilinear map x -> frob^r(x) M on row vectors.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MatGen {
    pub frob: u32,
    pub mat: Mat,
}

pub fn apply_semilinear(f: &Field, g: &MatGen, v: &[Fe]) -> Vec<Fe> {
    let sv: Vec<Fe> = v.iter().map(|&a| f.frobenius(a, g.frob)).collect();
    vec_mat(f, &sv, &g.mat)
}

/// a followed by b.
pub fn matgen_compose(f: &Field, a: &MatGen, b: &MatGen) -> MatGen {
    let mut twisted = a.mat.clone();
    for e in twisted.a.iter_mut() {
        *e = f.frobenius(*e, b.frob);
    }
    MatGen {
        frob: (a.frob + b.frob) % f.k,
        mat: mat_mul(f, &twisted, &b.mat),
    }
}

/// The scalar by which the map multiplies the form, when it is a
/// similitude: every basis Gram value (and quadratic value, for quadrics)
/// must come out as lambda times the frob-image of the original.
pub fn similitude_factor(fs: &FormSpace, g: &MatGen) -> Option<Fe> {
    let f = &fs.f;
    let n = fs.dim;
    let tau = |a: Fe| f.frobenius(a, g.frob);
    let basis = Mat::identity(n);
    let mut conds: Vec<(Fe, Fe)> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let lhs = fs.bilinear(g.mat.row(i), g.mat.row(j));
            let rhs = tau(fs.bilinear(basis.row(i), basis.row(j)));
            conds.push((lhs, rhs));
        }
    }
    if fs.family == Family::Q {
        for i in 0..n {
            conds.push((fs.quad(g.mat.row(i)), tau(fs.quad(basis.row(i)))));
        }
    }
    let &(l0, r0) = conds.iter().find(|&&(_, r)| r.0 != 0)?;
    if l0.0 == 0 {
        return None;
    }
    let lambda = f.div(l0, r0);
    for (lhs, rhs) in conds {
        if lhs != f.mul(lambda, rhs) {
            return None;
        }
    }
    Some(lambda)
}

/// Parses and fully validates a generator file against a form: field and
/// dimension agreement, invertibility, and the similitude condition.
pub fn load_group(fs: &FormSpace, data: &GrpData) -> Result<Vec<MatGen>, GroupError> {
    if data.q != fs.f.q {
        return Err(GroupError::WrongShape(format!(
            "file uses field order {}, form lives over {}",
            data.q, fs.f.q
        )));
    }
    if data.dim != fs.dim {
        return Err(GroupError::WrongShape(format!(
            "file matrices are {}x{}, ambient dimension is {}",
            data.dim, data.dim, fs.dim
        )));
    }
    let mut out = Vec::with_capacity(data.gens.len());
    for (gi, gen) in data.gens.iter().enumerate() {
        if gen.frob >= fs.f.k {
            return Err(GroupError::WrongShape(format!(
                "generator {gi} frobenius power {} out of range (field degree {})",
                gen.frob, fs.f.k
            )));
        }
        let rows: Vec<Vec<Fe>> = gen
            .rows
            .iter()
            .map(|r| r.iter().map(|&e| Fe(e as u16)).collect())
            .collect();
        let mg = MatGen { frob: gen.frob, mat: Mat::from_rows(&rows) };
        if inverse(&fs.f, &mg.mat).is_none() {
            return Err(GroupError::NotInvertible { gen: gi });
        }
        if similitude_factor(fs, &mg).is_none() {
            return Err(GroupError::NotSimilitude { gen: gi });
        }
        out.push(mg);
    }
    Ok(out)
}

pub fn to_grp_data(f: &Field, dim: usize, gens: &[MatGen]) -> GrpData {
    GrpData {
        q: f.q,
        dim,
        gens: gens
            .iter()
            .map(|g| GrpGen {
                frob: g.frob,
                rows: (0..dim)
                    .map(|i| g.mat.row(i).iter().map(|e| e.0 as u32).collect())
                    .collect(),
            })
            .collect(),
    }
}

/// The permutation the map induces on geometry points (maximals), with the
/// line structure verified along the way.
pub fn induced_point_perm(geom: &Geometry, g: &MatGen) -> Result<Perm, GroupError> {
    let sd = geom.subspaces.as_ref().ok_or(GroupError::NoSubspaceData)?;
    let f = &sd.space.f;
    let index: HashMap<&Subspace, u32> =
        sd.maximals.iter().enumerate().map(|(i, s)| (s, i as u32)).collect();
    let mut images = Vec::with_capacity(geom.n);
    for (mi, m) in sd.maximals.iter().enumerate() {
        let rows: Vec<Vec<Fe>> =
            (0..m.nrows()).map(|i| apply_semilinear(f, g, &m.row_fe(i))).collect();
        let image = Subspace::canonical(f, &rows);
        match index.get(&image) {
            Some(&j) => images.push(j),
            None => return Err(GroupError::NotPointMap(mi as u32)),
        }
    }
    let mut seen = vec![false; geom.n];
    for &j in &images {
        if std::mem::replace(&mut seen[j as usize], true) {
            return Err(GroupError::NotPointMap(j));
        }
    }
    let pi = Perm(images);
    verify_line_action(geom, &pi)?;
    Ok(pi)
}

fn verify_line_action(geom: &Geometry, pi: &Perm) -> Result<(), GroupError> {
    let lines: HashSet<&[u32]> = geom.lines.iter().map(Vec::as_slice).collect();
    for (li, line) in geom.lines.iter().enumerate() {
        let mut img: Vec<u32> = line.iter().map(|&p| pi.apply(p)).collect();
        img.sort_unstable();
        if !lines.contains(img.as_slice()) {
            return Err(GroupError::NotLineMap(li as u32));
        }
    }
    Ok(())
}

fn random_vec(f: &Field, n: usize, rng: &mut ChaCha8Rng) -> Vec<Fe> {
    (0..n).map(|_| Fe(rng.gen_range(0..f.q) as u16)).collect()
}

/// Reflection in an anisotropic vector: x -> x - (B(x,v)/Q(v)) v. An
/// isometry of the quadratic form in every characteristic.
pub fn reflection(fs: &FormSpace, v: &[Fe]) -> Option<Mat> {
    assert!(fs.family == Family::Q);
    let f = &fs.f;
    let qv = fs.quad(v);
    if qv.0 == 0 {
        return None;
    }
    let rows: Vec<Vec<Fe>> = (0..fs.dim)
        .map(|i| {
            let mut e = vec![Fe(0); fs.dim];
            e[i] = Fe(1);
            let c = f.div(fs.bilinear(&e, v), qv);
            for (x, &vv) in e.iter_mut().zip(v) {
                *x = f.sub(*x, f.mul(c, vv));
            }
            e
        })
        .collect();
    Some(Mat::from_rows(&rows))
}

/// Symplectic transvection x -> x + lambda B(x,v) v.
pub fn transvection_w(fs: &FormSpace, v: &[Fe], lambda: Fe) -> Mat {
    assert!(fs.family == Family::W);
    shear(fs, v, lambda)
}

/// Unitary transvection x -> x + lambda B(x,v) v for isotropic v and
/// trace-zero lambda.
pub fn transvection_h(fs: &FormSpace, v: &[Fe], lambda: Fe) -> Option<Mat> {
    assert!(fs.family == Family::H);
    let f = &fs.f;
    if fs.bilinear(v, v).0 != 0 || f.add(lambda, f.conj(lambda)).0 != 0 {
        return None;
    }
    Some(shear(fs, v, lambda))
}

fn shear(fs: &FormSpace, v: &[Fe], lambda: Fe) -> Mat {
    let f = &fs.f;
    let rows: Vec<Vec<Fe>> = (0..fs.dim)
        .map(|i| {
            let mut e = vec![Fe(0); fs.dim];
            e[i] = Fe(1);
            let c = f.mul(lambda, fs.bilinear(&e, v));
            for (x, &vv) in e.iter_mut().zip(v) {
                *x = f.add(*x, f.mul(c, vv));
            }
            e
        })
        .collect();
    Mat::from_rows(&rows)
}

/// Seeded supply of verified nonidentity isometries of the form.
pub fn isometry_pool(fs: &FormSpace, count: usize, seed: u64) -> Vec<MatGen> {
    let f = &fs.f;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    let id = Mat::identity(fs.dim);
    while out.len() < count {
        let mat = match fs.family {
            Family::Q => {
                let v = random_vec(f, fs.dim, &mut rng);
                match reflection(fs, &v) {
                    Some(m) => m,
                    None => continue,
                }
            }
            Family::W => {
                let v = random_vec(f, fs.dim, &mut rng);
                if v.iter().all(|e| e.0 == 0) {
                    continue;
                }
                let lambda = Fe(rng.gen_range(1..f.q) as u16);
                transvection_w(fs, &v, lambda)
            }
            Family::H => {
                let v = random_vec(f, fs.dim, &mut rng);
                if v.iter().all(|e| e.0 == 0) || fs.bilinear(&v, &v).0 != 0 {
                    continue;
                }
                let lambda = loop {
                    let l = Fe(rng.gen_range(1..f.q) as u16);
                    if f.add(l, f.conj(l)).0 == 0 {
                        break l;
                    }
                };
                match transvection_h(fs, &v, lambda) {
                    Some(m) => m,
                    None => continue,
                }
            }
        };
        if mat == id {
            continue;
        }
        let mg = MatGen { frob: 0, mat };
        assert!(similitude_factor(fs, &mg).is_some(), "basic isometry failed verification");
        out.push(mg);
    }
    out
}

pub fn matgen_power(f: &Field, g: &MatGen, e: u64) -> MatGen {
    let mut acc = MatGen { frob: 0, mat: Mat::identity(g.mat.rows) };
    let mut base = g.clone();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = matgen_compose(f, &acc, &base);
        }
        base = matgen_compose(f, &base, &base);
        e >>= 1;
    }
    acc
}

/// Searches seeded random products of basic isometries for one whose
/// induced point permutation has order in the requested range, powering
/// down elements whose order is a proper multiple of a value in range.
pub fn find_small_order_isometry(
    fs: &FormSpace,
    geom: &Geometry,
    seed: u64,
    min_order: u64,
    max_order: u64,
    tries: usize,
) -> Option<(MatGen, Perm, u64)> {
    for t in 0..tries {
        let len = 2 + t % 3;
        let pool = isometry_pool(fs, len, seed.wrapping_add(t as u64).wrapping_mul(0x9e37_79b9));
        let mut g = pool[0].clone();
        for h in &pool[1..] {
            g = matgen_compose(&fs.f, &g, h);
        }
        let perm = match induced_point_perm(geom, &g) {
            Ok(p) => p,
            Err(_) => continue,
        };
        let o = perm.order();
        if o < min_order {
            continue;
        }
        if o <= max_order {
            return Some((g, perm, o));
        }
        for want in (min_order..=max_order).rev() {
            if o % want == 0 {
                let e = o / want;
                let powered = matgen_power(&fs.f, &g, e);
                let p = perm.pow(e);
                debug_assert_eq!(p.order(), want);
                return Some((powered, p, want));
            }
        }
    }
    None
}

/// Union-find over scalar columns carrying the ratio lambda_i / lambda_root.
struct RatioUf {
    parent: Vec<usize>,
    ratio: Vec<Fe>,
}

impl RatioUf {
    fn new(n: usize) -> RatioUf {
        RatioUf { parent: (0..n).collect(), ratio: vec![Fe(1); n] }
    }

    fn find(&mut self, f: &Field, i: usize) -> (usize, Fe) {
        if self.parent[i] == i {
            return (i, self.ratio[i]);
        }
        let (root, up) = self.find(f, self.parent[i]);
        self.parent[i] = root;
        self.ratio[i] = f.mul(self.ratio[i], up);
        (root, self.ratio[i])
    }

    /// Enforce lambda_i = rho lambda_j; false on contradiction.
    fn union(&mut self, f: &Field, i: usize, j: usize, rho: Fe) -> bool {
        let (ri, qi) = self.find(f, i);
        let (rj, qj) = self.find(f, j);
        if ri == rj {
            return qi == f.mul(rho, qj);
        }
        // lambda_ri = qi^-1 rho qj lambda_rj
        self.parent[ri] = rj;
        self.ratio[ri] = f.div(f.mul(rho, qj), qi);
        true
    }
}

/// Lifts a point permutation of a built geometry back to a semilinear
/// similitude inducing it. The matrix is normalized so its first nonzero
/// entry is one; the result is verified by re-inducing the permutation.
pub fn lift_point_perm(geom: &Geometry, pi: &Perm) -> Result<MatGen, GroupError> {
    let sd = geom.subspaces.as_ref().ok_or(GroupError::NoSubspaceData)?;
    let fs = &sd.space;
    let f = &fs.f;
    let n = fs.dim;
    let iso = fs.isotropic_points();
    let pt_index: HashMap<&[Fe], u32> =
        iso.iter().enumerate().map(|(i, v)| (v.as_slice(), i as u32)).collect();

    // Incidence signature of each isotropic point: the set of maximals
    // containing it. The permutation of maximals must permute these
    // signatures, which pins down its action on projective points.
    let mut through = vec![crate::bitset::Bitset::new(geom.n); iso.len()];
    for (mi, m) in sd.maximals.iter().enumerate() {
        let dm = m.nrows();
        let rows: Vec<Vec<Fe>> = (0..dm).map(|i| m.row_fe(i)).collect();
        // Coefficient vectors with leading coordinate 1 enumerate the
        // projective points of the span, already normalized because the
        // basis rows are in reduced echelon form.
        for lead in 0..dm {
            let free = dm - lead - 1;
            let mut digits = vec![0u32; free];
            loop {
                let mut v = rows[lead].clone();
                for (i, &dg) in digits.iter().enumerate() {
                    let c = Fe(dg as u16);
                    for (x, &r) in v.iter_mut().zip(&rows[lead + 1 + i]) {
                        *x = f.add(*x, f.mul(c, r));
                    }
                }
                let pt = pt_index[v.as_slice()];
                through[pt as usize].set(mi);
                let mut advanced = false;
                let mut i = free;
                while i > 0 {
                    i -= 1;
                    if digits[i] + 1 < f.q {
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
    }
    let by_sig: HashMap<&crate::bitset::Bitset, u32> =
        through.iter().enumerate().map(|(i, b)| (b, i as u32)).collect();
    let mut rho = Vec::with_capacity(iso.len());
    for sig in &through {
        let mut img = crate::bitset::Bitset::new(geom.n);
        for mi in sig.iter() {
            img.set(pi.apply(mi as u32) as usize);
        }
        match by_sig.get(&img) {
            Some(&j) => rho.push(j as usize),
            None => {
                return Err(GroupError::NotSemilinear(
                    "image of a point pencil is not a point pencil".into(),
                ))
            }
        }
    }

    // A basis of isotropic points pins the map up to one scalar per basis
    // vector; the remaining points tie those scalars together.
    let mut basis: Vec<usize> = Vec::new();
    let mut brows: Vec<Vec<Fe>> = Vec::new();
    for (i, v) in iso.iter().enumerate() {
        brows.push(v.clone());
        if rank(f, &Mat::from_rows(&brows)) == brows.len() {
            basis.push(i);
        } else {
            brows.pop();
        }
        if basis.len() == n {
            break;
        }
    }
    if basis.len() < n {
        return Err(GroupError::NotSemilinear("isotropic points do not span".into()));
    }
    let bmat = Mat::from_rows(&brows);
    let binv = inverse(f, &bmat).expect("basis rows are independent");
    let fmat = Mat::from_rows(&basis.iter().map(|&b| iso[rho[b]].clone()).collect::<Vec<_>>());
    let finv = match inverse(f, &fmat) {
        Some(m) => m,
        None => {
            return Err(GroupError::NotSemilinear(
                "images of independent points are dependent".into(),
            ))
        }
    };

    'frob: for r in 0..f.k {
        let tau = |a: Fe| f.frobenius(a, r);
        let mut uf = RatioUf::new(n);
        for (pi_pt, v) in iso.iter().enumerate() {
            let c = vec_mat(f, v, &binv);
            let d = vec_mat(f, &iso[rho[pi_pt]], &finv);
            let supp: Vec<usize> = (0..n).filter(|&i| c[i].0 != 0).collect();
            for i in 0..n {
                if (c[i].0 == 0) != (d[i].0 == 0) {
                    return Err(GroupError::NotSemilinear(
                        "point images break coordinate supports".into(),
                    ));
                }
            }
            for w in supp.windows(2) {
                let (i, j) = (w[0], w[1]);
                // d_i = kappa tau(c_i) lambda_i, so lambda_i / lambda_j
                // = d_i tau(c_j) / (d_j tau(c_i)).
                let rho_ij =
                    f.div(f.mul(d[i], tau(c[j])), f.mul(d[j], tau(c[i])));
                if !uf.union(f, i, j, rho_ij) {
                    continue 'frob;
                }
            }
        }
        let mut lambda = Vec::with_capacity(n);
        for i in 0..n {
            lambda.push(uf.find(f, i).1);
        }
        let mut scaled = fmat.clone();
        for i in 0..n {
            for j in 0..n {
                scaled.set(i, j, f.mul(lambda[i], scaled.at(i, j)));
            }
        }
        let mut btau = binv.clone();
        for e in btau.a.iter_mut() {
            *e = tau(*e);
        }
        let mut m = mat_mul(f, &btau, &scaled);
        if let Some(&lead) = m.a.iter().find(|e| e.0 != 0) {
            let c = f.inv(lead);
            for e in m.a.iter_mut() {
                *e = f.mul(c, *e);
            }
        }
        let g = MatGen { frob: r, mat: m };
        if similitude_factor(fs, &g).is_none() {
            continue;
        }
        if let Ok(p) = induced_point_perm(geom, &g) {
            if &p == pi {
                return Ok(g);
            }
        }
    }
    Err(GroupError::NotSemilinear("no frobenius twist matches".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::build_dual_polar;
    use crate::files::{grp_bytes, parse_grp};
    use crate::polar::form_make;

    #[test]
    fn perm_algebra() {
        let a = Perm(vec![1, 2, 0, 3]);
        let b = Perm(vec![0, 1, 3, 2]);
        assert_eq!(a.then(&a).then(&a), Perm::identity(4));
        assert_eq!(a.order(), 3);
        assert_eq!(b.order(), 2);
        assert_eq!(a.then(&b).0, vec![1, 3, 0, 2]);
        assert_eq!(a.inverse().then(&a), Perm::identity(4));
        assert_eq!(a.pow(2), a.then(&a));
        assert_eq!(a.pow(3), Perm::identity(4));
        let c = a.then(&b);
        assert_eq!(c.order(), 4);
    }

    #[test]
    fn closure_and_orbits() {
        let cycle = Perm(vec![1, 2, 0]);
        let swap = Perm(vec![1, 0, 2]);
        let s3 = closure(&[cycle.clone(), swap], 100).unwrap();
        assert_eq!(s3.len(), 6);
        assert!(matches!(
            closure(&[cycle.clone()], 2),
            Err(GroupError::TooLarge { cap: 2 })
        ));
        let (ids, count) = orbits(&[Perm(vec![1, 0, 2, 3])], 4);
        assert_eq!(count, 3);
        assert_eq!(ids, vec![0, 0, 1, 2]);
        let (_, one) = orbits(&[cycle], 3);
        assert_eq!(one, 1);
    }

    #[test]
    fn pool_maps_induce_geometry_symmetries() {
        for (fam, d, q) in [(Family::W, 2, 2), (Family::Q, 2, 3), (Family::H, 2, 2)] {
            let fs = form_make(fam, d, q).unwrap();
            let g = build_dual_polar(form_make(fam, d, q).unwrap()).unwrap();
            let pool = isometry_pool(&fs, 4, 11);
            let mut moved = false;
            for mg in &pool {
                let perm = induced_point_perm(&g, mg).unwrap();
                moved |= !perm.is_identity();
                // compose in the matrix world, compare in the permutation world
                let sq = matgen_compose(&fs.f, mg, mg);
                assert_eq!(induced_point_perm(&g, &sq).unwrap(), perm.then(&perm));
            }
            assert!(moved, "every sampled isometry acted trivially on {}", g.name);
        }
    }

    #[test]
    fn small_order_element_is_found() {
        let fs = form_make(Family::W, 2, 2).unwrap();
        let g = build_dual_polar(form_make(Family::W, 2, 2).unwrap()).unwrap();
        let (_, perm, o) = find_small_order_isometry(&fs, &g, 5, 2, 6, 200).unwrap();
        assert_eq!(perm.order(), o);
        assert!((2..=6).contains(&o));
        // exact order through the power of a larger element
        let (mg, perm, o) = find_small_order_isometry(&fs, &g, 5, 3, 3, 500).unwrap();
        assert_eq!(o, 3);
        assert_eq!(perm.order(), 3);
        assert_eq!(induced_point_perm(&g, &mg).unwrap(), perm);
    }

    #[test]
    fn similitude_rejects_non_preserving_matrix() {
        let fs = form_make(Family::W, 2, 2).unwrap();
        // invertible but mixes a hyperbolic pair into everything else
        let mut m = Mat::identity(4);
        m.set(0, 1, Fe(1));
        assert!(similitude_factor(&fs, &MatGen { frob: 0, mat: m }).is_none());
        assert!(similitude_factor(&fs, &MatGen { frob: 0, mat: Mat::identity(4) }).is_some());
    }

    #[test]
    fn grp_files_roundtrip_and_validate() {
        let fs = form_make(Family::Q, 2, 3).unwrap();
        let pool = isometry_pool(&fs, 2, 3);
        let data = to_grp_data(&fs.f, fs.dim, &pool);
        let parsed = parse_grp(&grp_bytes(&data)).unwrap();
        assert_eq!(parsed, data);
        let loaded = load_group(&fs, &parsed).unwrap();
        assert_eq!(loaded, pool);

        let mut bad = data.clone();
        bad.gens[0].rows[0] = bad.gens[0].rows[1].clone();
        assert!(matches!(load_group(&fs, &bad), Err(GroupError::NotInvertible { gen: 0 })));
        let mut wrong_q = data.clone();
        wrong_q.q = 5;
        assert!(matches!(load_group(&fs, &wrong_q), Err(GroupError::WrongShape(_))));
        let mut twisted = data;
        twisted.gens[0].frob = 7;
        assert!(matches!(load_group(&fs, &twisted), Err(GroupError::WrongShape(_))));
    }

    #[test]
    fn frobenius_generator_acts_on_hermitian_space() {
        // x -> x^2 entrywise is a semilinear similitude of H(3,4).
        let fs = form_make(Family::H, 2, 2).unwrap();
        let g = build_dual_polar(form_make(Family::H, 2, 2).unwrap()).unwrap();
        let mg = MatGen { frob: 1, mat: Mat::identity(4) };
        assert!(similitude_factor(&fs, &mg).is_some());
        let perm = induced_point_perm(&g, &mg).unwrap();
        assert_eq!(perm.then(&perm), Perm::identity(g.n));
    }

    #[test]
    fn lift_recovers_matrix_action() {
        for (fam, d, q) in [(Family::W, 2, 2), (Family::Q, 2, 3), (Family::H, 2, 2)] {
            let g = build_dual_polar(form_make(fam, d, q).unwrap()).unwrap();
            let id = lift_point_perm(&g, &Perm::identity(g.n)).unwrap();
            assert_eq!(id.frob, 0);
            assert_eq!(id.mat, Mat::identity(g.subspaces.as_ref().unwrap().space.dim));

            let fs = form_make(fam, d, q).unwrap();
            for mg in isometry_pool(&fs, 3, 17) {
                let pi = induced_point_perm(&g, &mg).unwrap();
                let lifted = lift_point_perm(&g, &pi).unwrap();
                assert_eq!(induced_point_perm(&g, &lifted).unwrap(), pi);
            }
        }
    }

    #[test]
    fn lift_rejects_non_geometric_permutation() {
        let g = build_dual_polar(form_make(Family::W, 2, 2).unwrap()).unwrap();
        // swapping two arbitrary points is almost never an automorphism
        let mut v: Vec<u32> = (0..g.n as u32).collect();
        v.swap(0, 1);
        assert!(lift_point_perm(&g, &Perm(v)).is_err());
    }
}
