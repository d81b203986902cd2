//! m-ovoid certificates and the counting identities they must satisfy.
//!
//! An m-ovoid is a point set meeting every line in exactly m points. Every
//! check here is exact integer arithmetic; fractional identities are
//! verified in cross-multiplied form, so there is no tolerance anywhere.
//!
//! The battery, beyond the line-count definition itself:
//!
//! * per-point sphere counts |Gamma_i(x) meet O| in both membership cases;
//! * the degree identity (A + (t+1)I) chi_O = m(t+1) 1;
//! * constancy of the pair vector product mu over pairs at distance i
//!   (requires the parameter identity at i, below, and 3 <= i <= d);
//! * cross-sphere counts p^1_(i,i-1) f_i with s f_i = m - f_(i-1), f_1 = 1;
//! * the two-way pair count that the main nonexistence argument equates.
//!
//! Parameter-level checks: the identity
//! t_i+1 = (s^i+(-1)^i)(t_(i-1)+1+(-1)^i s^(i-2))/(s^(i-2)+(-1)^i),
//! interval bounds on t_i+1, and the resulting admissible m values.

use crate::bitset::Bitset;
use crate::geometry::{Geometry, EXHAUSTIVE_LIMIT, SAMPLE_COUNT};
use crate::scheme::{intersection_table, ParameterSet, SchemeError};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum OvoidError {
    #[error("bad member list: {0}")]
    BadMembers(String),
    #[error("certificate bound to geometry {expected}, loaded geometry hashes to {found}")]
    HashMismatch { expected: String, found: String },
    #[error("certificate is not verified")]
    NotVerified,
    #[error("line {line} carries {count} members, line {reference} carries {expected}")]
    LineCount { line: u32, count: u32, reference: u32, expected: u32 },
    #[error("|Gamma_{i}({x}) meet O| = {measured}, formula gives {num}/{den}")]
    SphereCount { x: u32, i: usize, measured: i64, num: i128, den: i128 },
    #[error("point {x}: |Gamma_1(x) meet O| = {measured}, degree identity needs {expected}")]
    EigenIdentity { x: u32, measured: i64, expected: i64 },
    #[error("parameter identity does not hold at i = {i}; the pair product is only constant under it")]
    Hypothesis { i: usize },
    #[error("distance {i} outside 3..={d}")]
    BadDistance { i: usize, d: usize },
    #[error("pair ({x},{y}) at distance {i}: v.chi = {measured}, expected {num}/{den}")]
    PairProduct { x: u32, y: u32, i: usize, measured: i64, num: i128, den: i128 },
    #[error("x = {x}, z = {z}, i = {i}: cross-sphere member count {measured}, expected {num}/{den}")]
    CrossSphere { x: u32, z: u32, i: usize, measured: i64, num: i128, den: i128 },
    #[error("x = {x}, i = {i}: pair counts disagree, {first} one way and {second} the other")]
    DoubleCount { x: u32, i: usize, first: i64, second: i64 },
    #[error(transparent)]
    Scheme(#[from] SchemeError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OvoidCertificate {
    pub geometry_hash: String,
    pub m: u32,
    /// Sorted ascending point indices.
    pub members: Vec<u32>,
    pub verified: bool,
}

impl OvoidCertificate {
    pub fn bitset(&self, n: usize) -> Bitset {
        let mut b = Bitset::new(n);
        for &p in &self.members {
            b.set(p as usize);
        }
        b
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VerifyOutcome {
    /// Every line carries exactly this many members.
    Constant(u32),
    /// First line whose count differs from the reference line's.
    Offending { line: u32, count: u32, reference: u32, expected: u32 },
}

fn validate_members(n: usize, members: &[u32]) -> Result<(), OvoidError> {
    for w in members.windows(2) {
        if w[0] >= w[1] {
            return Err(OvoidError::BadMembers(format!("indices not strictly ascending at {}", w[1])));
        }
    }
    if let Some(&last) = members.last() {
        if last as usize >= n {
            return Err(OvoidError::BadMembers(format!("index {last} out of range (n = {n})")));
        }
    }
    Ok(())
}

/// Counts members on every line; constant count or first offender.
pub fn verify_m_ovoid(g: &Geometry, members: &[u32]) -> Result<VerifyOutcome, OvoidError> {
    validate_members(g.n, members)?;
    let bs = {
        let mut b = Bitset::new(g.n);
        for &p in members {
            b.set(p as usize);
        }
        b
    };
    let mut reference = 0u32;
    for (li, line) in g.lines.iter().enumerate() {
        let count = line.iter().filter(|&&p| bs.get(p as usize)).count() as u32;
        if li == 0 {
            reference = count;
        } else if count != reference {
            return Ok(VerifyOutcome::Offending {
                line: li as u32,
                count,
                reference: 0,
                expected: reference,
            });
        }
    }
    Ok(VerifyOutcome::Constant(reference))
}

/// A verified certificate, or the offending line as an error.
pub fn certify(g: &Geometry, members: Vec<u32>) -> Result<OvoidCertificate, OvoidError> {
    match verify_m_ovoid(g, &members)? {
        VerifyOutcome::Constant(m) => Ok(OvoidCertificate {
            geometry_hash: g.hash_hex.clone(),
            m,
            members,
            verified: true,
        }),
        VerifyOutcome::Offending { line, count, reference, expected } => {
            Err(OvoidError::LineCount { line, count, reference, expected })
        }
    }
}

/// The complementary (s+1-m)-ovoid.
pub fn complement(g: &Geometry, cert: &OvoidCertificate) -> Result<OvoidCertificate, OvoidError> {
    if !cert.verified {
        return Err(OvoidError::NotVerified);
    }
    let bs = cert.bitset(g.n);
    let rest: Vec<u32> = (0..g.n as u32).filter(|&p| !bs.get(p as usize)).collect();
    let out = certify(g, rest)?;
    debug_assert_eq!(out.m as usize, g.s_plus_1 - cert.m as usize);
    Ok(out)
}

fn ipow(s: i128, e: u32) -> i128 {
    let mut acc = 1i128;
    for _ in 0..e {
        acc *= s;
    }
    acc
}

fn sign(i: usize) -> i128 {
    if i % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Numerator and denominator of the expected |Gamma_i(x) meet O| for an
/// m-ovoid, by membership of x. Denominator is s^i (s+1).
pub fn expected_sphere_count(ps: &ParameterSet, k_i: i64, i: usize, m: i64, member: bool) -> (i128, i128) {
    let s = ps.s as i128;
    let den = ipow(s, i as u32) * (s + 1);
    let num = if member {
        k_i as i128 * (m as i128 * ipow(s, i as u32) + sign(i) * (s + 1 - m as i128))
    } else {
        k_i as i128 * m as i128 * (ipow(s, i as u32) - sign(i))
    };
    (num, den)
}

/// Per-distance member counts around one point against the exact formulas.
/// Returns the measured counts when every distance agrees.
pub fn sphere_count_check(
    g: &Geometry,
    ps: &ParameterSet,
    cert: &OvoidCertificate,
    x: usize,
) -> Result<Vec<i64>, OvoidError> {
    if !cert.verified {
        return Err(OvoidError::NotVerified);
    }
    let k = ps.k()?;
    let bs = cert.bitset(g.n);
    let member = bs.get(x);
    let spheres = g.sphere_bitsets(x);
    let mut out = Vec::with_capacity(ps.d + 1);
    for i in 0..=ps.d {
        let measured = spheres[i].count_and(&bs) as i64;
        let (num, den) = expected_sphere_count(ps, k[i], i, cert.m as i64, member);
        if measured as i128 * den != num {
            return Err(OvoidError::SphereCount { x: x as u32, i, measured, num, den });
        }
        out.push(measured);
    }
    Ok(out)
}

/// sphere_count_check at every point (n <= EXHAUSTIVE_LIMIT) or at
/// SAMPLE_COUNT seeded points.
pub fn sphere_count_check_all(
    g: &Geometry,
    ps: &ParameterSet,
    cert: &OvoidCertificate,
    seed: u64,
) -> Result<(), OvoidError> {
    for x in sample_points(g.n, seed) {
        sphere_count_check(g, ps, cert, x)?;
    }
    Ok(())
}

fn sample_points(n: usize, seed: u64) -> Vec<usize> {
    if n <= EXHAUSTIVE_LIMIT {
        (0..n).collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..SAMPLE_COUNT).map(|_| rng.gen_range(0..n)).collect()
    }
}

/// The exact degree identity (A + (t+1)I) chi_O = m(t+1) 1, checked on
/// every coordinate.
pub fn eigen_identity_check(g: &Geometry, cert: &OvoidCertificate) -> Result<(), OvoidError> {
    if !cert.verified {
        return Err(OvoidError::NotVerified);
    }
    let bs = cert.bitset(g.n);
    let t1 = g.t_plus_1 as i64;
    let m = cert.m as i64;
    for x in 0..g.n {
        let measured = g.adj[x].count_and(&bs) as i64 + t1 * (bs.get(x) as i64);
        if measured != m * t1 {
            return Err(OvoidError::EigenIdentity {
                x: x as u32,
                measured,
                expected: m * t1,
            });
        }
    }
    Ok(())
}

/// The i for which t_i+1 equals the quotient identity exactly, within 3..=d.
pub fn check_two_parameter_identity(ps: &ParameterSet) -> Vec<usize> {
    let s = ps.s as i128;
    let mut out = Vec::new();
    for i in 3..=ps.d {
        let lhs = (ps.t_seq[i] + 1) as i128 * (ipow(s, i as u32 - 2) + sign(i));
        let rhs = (ipow(s, i as u32) + sign(i))
            * ((ps.t_seq[i - 1] + 1) as i128 + sign(i) * ipow(s, i as u32 - 2));
        if lhs == rhs {
            out.push(i);
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundsReport {
    pub i: usize,
    /// t_i + 1.
    pub value: i64,
    pub lower: f64,
    pub upper: f64,
    pub lower_attained: bool,
    pub upper_attained: bool,
    pub violated: bool,
}

/// Evaluates the interval bounds
/// (s^i-1)(t_(i-1)+1-s^(i-2))/(s^(i-2)-1) <= t_i+1 <=
/// (s^i+1)(t_(i-1)+1+s^(i-2))/(s^(i-2)+1) for i in 3..=d.
/// Requires s >= 2; returns an empty report otherwise.
pub fn check_parameter_bounds(ps: &ParameterSet) -> Vec<BoundsReport> {
    if ps.s < 2 {
        return Vec::new();
    }
    let s = ps.s as i128;
    let mut out = Vec::new();
    for i in 3..=ps.d {
        let v = (ps.t_seq[i] + 1) as i128;
        let lo_num = (ipow(s, i as u32) - 1) * ((ps.t_seq[i - 1] + 1) as i128 - ipow(s, i as u32 - 2));
        let lo_den = ipow(s, i as u32 - 2) - 1;
        let hi_num = (ipow(s, i as u32) + 1) * ((ps.t_seq[i - 1] + 1) as i128 + ipow(s, i as u32 - 2));
        let hi_den = ipow(s, i as u32 - 2) + 1;
        let lower_attained = v * lo_den == lo_num;
        let upper_attained = v * hi_den == hi_num;
        let violated = v * lo_den < lo_num || v * hi_den > hi_num;
        out.push(BoundsReport {
            i,
            value: v as i64,
            lower: lo_num as f64 / lo_den as f64,
            upper: hi_num as f64 / hi_den as f64,
            lower_attained,
            upper_attained,
            violated,
        });
    }
    out
}

/// Nontrivial m values not excluded by the parameter identity: under it
/// only the middle value survives (and none when s is even); without it
/// all of 1..=s remain candidates.
pub fn admissible_m(ps: &ParameterSet) -> Vec<i64> {
    if check_two_parameter_identity(ps).is_empty() {
        (1..=ps.s).collect()
    } else if ps.s % 2 == 1 {
        vec![(ps.s + 1) / 2]
    } else {
        Vec::new()
    }
}

#[derive(Debug, Clone)]
pub struct PairProductReport {
    pub i: usize,
    /// mu as an exact fraction num/den, den = s+1.
    pub mu_num: i128,
    pub mu_den: i128,
    pub pairs_checked: usize,
}

/// Constancy of the pair product over pairs at distance i. The vector for
/// a pair (x,y) weights x and y by alpha = s(c_(i-1)+(-1)^i s^(i-2)) and
/// the two mixed spheres Gamma_1 meet Gamma_(i-1) by 1; its product with
/// chi_O must be 2(alpha+c_i)m/(s+1) for every pair. Only meaningful when
/// the parameter identity holds at i, hence the refusal.
pub fn pair_product_check(
    g: &Geometry,
    ps: &ParameterSet,
    cert: &OvoidCertificate,
    i: usize,
    seed: u64,
) -> Result<PairProductReport, OvoidError> {
    if !cert.verified {
        return Err(OvoidError::NotVerified);
    }
    if !(3..=ps.d).contains(&i) {
        return Err(OvoidError::BadDistance { i, d: ps.d });
    }
    if !check_two_parameter_identity(ps).contains(&i) {
        return Err(OvoidError::Hypothesis { i });
    }
    let s = ps.s as i128;
    let alpha = s * (ps.c(i - 1) as i128 + sign(i) * ipow(s, i as u32 - 2));
    let mu_num = 2 * (alpha + ps.c(i) as i128) * cert.m as i128;
    let mu_den = s + 1;

    let bs = cert.bitset(g.n);
    let mut pairs_checked = 0usize;
    let exhaustive = g.n <= EXHAUSTIVE_LIMIT;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let check_pair = |x: usize, y: usize, row_x: &[u8]| -> Result<(), OvoidError> {
        // v . chi_O by direct enumeration of the two mixed spheres.
        let mut measured = alpha * ((bs.get(x) as i128) + (bs.get(y) as i128));
        for &w in &g.neighbors[x] {
            if bs.get(w as usize) && g.distance(w as usize, y) as usize == i - 1 {
                measured += 1;
            }
        }
        for &w in &g.neighbors[y] {
            if bs.get(w as usize) && row_x[w as usize] as usize == i - 1 {
                measured += 1;
            }
        }
        if measured * mu_den != mu_num {
            return Err(OvoidError::PairProduct {
                x: x as u32,
                y: y as u32,
                i,
                measured: measured as i64,
                num: mu_num,
                den: mu_den,
            });
        }
        Ok(())
    };

    if exhaustive {
        for x in 0..g.n {
            let row = g.dist_row(x);
            for y in x + 1..g.n {
                if row[y] as usize == i {
                    check_pair(x, y, &row)?;
                    pairs_checked += 1;
                }
            }
        }
    } else {
        while pairs_checked < SAMPLE_COUNT {
            let x = rng.gen_range(0..g.n);
            let row = g.dist_row(x);
            // The sphere at distance i is a constant fraction of the
            // points, so rejection terminates fast.
            let y = loop {
                let y = rng.gen_range(0..g.n);
                if row[y] as usize == i {
                    break y;
                }
            };
            check_pair(x, y, &row)?;
            pairs_checked += 1;
        }
    }
    Ok(PairProductReport { i, mu_num, mu_den, pairs_checked })
}

/// Integer sequence F_i = s^(i-1) f_i where s f_i = m - f_(i-1), f_1 = 1.
fn f_seq(s: i64, m: i64, d: usize) -> Vec<i128> {
    let mut fs = vec![0i128; d + 1];
    if d >= 1 {
        fs[1] = 1;
    }
    for i in 2..=d {
        fs[i] = m as i128 * ipow(s as i128, i as u32 - 2) - fs[i - 1];
    }
    fs
}

/// Cross-sphere counts around non-members: for z in O adjacent to x (not
/// in O), |Gamma_(i-1)(z) meet Gamma_i(x) meet O| = p^1_(i,i-1) f_i, and
/// for z in O at distance i-1 from x, |Gamma_1(z) meet Gamma_i(x) meet O|
/// = (t - t_(i-1))(m-1). Exhaustive at desk scale, sampled beyond.
pub fn cross_sphere_check(
    g: &Geometry,
    ps: &ParameterSet,
    cert: &OvoidCertificate,
    seed: u64,
) -> Result<(), OvoidError> {
    if !cert.verified {
        return Err(OvoidError::NotVerified);
    }
    let it = intersection_table(ps)?;
    let bs = cert.bitset(g.n);
    let m = cert.m as i64;
    let fs = f_seq(ps.s, m, ps.d);
    let s = ps.s as i128;

    let xs: Vec<usize> = sample_points(g.n, seed).into_iter().filter(|&x| !bs.get(x)).collect();
    for x in xs {
        let sx = g.sphere_bitsets(x);
        for i in 1..=ps.d {
            let scale = ipow(s, i as u32 - 1);
            let expect_a = it.p[1][i][i - 1] as i128 * fs[i];
            for &z in &g.neighbors[x] {
                let z = z as usize;
                if !bs.get(z) {
                    continue;
                }
                let sz_prev = sphere_bitset_at(g, z, i - 1);
                let measured = sz_prev.count_and3(&sx[i], &bs) as i64;
                if measured as i128 * scale != expect_a {
                    return Err(OvoidError::CrossSphere {
                        x: x as u32,
                        z: z as u32,
                        i,
                        measured,
                        num: expect_a,
                        den: scale,
                    });
                }
            }
            if i >= 2 {
                let expect_b = (ps.t() - ps.t_seq[i - 1]) as i128 * (m - 1) as i128;
                for z in sx[i - 1].iter() {
                    if !bs.get(z) {
                        continue;
                    }
                    let measured = g.adj[z].count_and3(&sx[i], &bs) as i64;
                    if measured as i128 != expect_b {
                        return Err(OvoidError::CrossSphere {
                            x: x as u32,
                            z: z as u32,
                            i,
                            measured,
                            num: expect_b,
                            den: 1,
                        });
                    }
                }
            }
        }
    }
    Ok(())
}

fn sphere_bitset_at(g: &Geometry, x: usize, i: usize) -> Bitset {
    let row = g.dist_row(x);
    let mut b = Bitset::new(g.n);
    for y in 0..g.n {
        if row[y] as usize == i {
            b.set(y);
        }
    }
    b
}

/// Counts, by direct enumeration, the pairs (y,z) of members with
/// dist(x,y) = i and either dist(y,z) = i-1, dist(x,z) = 1 or
/// dist(y,z) = 1, dist(x,z) = i-1 — once grouped by y and once by z. The
/// two totals count the same set, so this is a structural self-test of
/// geometry and certificate together.
pub fn double_count_check(
    g: &Geometry,
    cert: &OvoidCertificate,
    i: usize,
    seed: u64,
) -> Result<(), OvoidError> {
    if !cert.verified {
        return Err(OvoidError::NotVerified);
    }
    let bs = cert.bitset(g.n);
    let xs: Vec<usize> = sample_points(g.n, seed).into_iter().filter(|&x| !bs.get(x)).collect();
    for x in xs {
        let sx = g.sphere_bitsets(x);
        let mut first = 0i64;
        for y in sx[i].iter() {
            if !bs.get(y) {
                continue;
            }
            let sy_prev = sphere_bitset_at(g, y, i - 1);
            first += g.adj[x].count_and3(&sy_prev, &bs) as i64;
            first += g.adj[y].count_and3(&sx[i - 1], &bs) as i64;
        }
        let mut second = 0i64;
        for z in sx[1].iter() {
            if !bs.get(z) {
                continue;
            }
            let sz_prev = sphere_bitset_at(g, z, i - 1);
            second += sz_prev.count_and3(&sx[i], &bs) as i64;
        }
        for z in sx[i - 1].iter() {
            if !bs.get(z) {
                continue;
            }
            second += g.adj[z].count_and3(&sx[i], &bs) as i64;
        }
        if first != second {
            return Err(OvoidError::DoubleCount { x: x as u32, i, first, second });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::build_dual_polar;
    use crate::polar::{form_make, Family};
    use crate::scheme::parameters_from_geometry;

    fn gq22() -> Geometry {
        build_dual_polar(form_make(Family::W, 2, 2).unwrap()).unwrap()
    }

    /// All 1-ovoids of GQ(2,2) by brute force over 15-bit masks.
    fn brute_force_ovoids(g: &Geometry) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        for mask in 0u32..1 << g.n {
            if mask.count_ones() != 5 {
                continue;
            }
            let ok = g.lines.iter().all(|l| {
                l.iter().filter(|&&p| mask >> p & 1 == 1).count() == 1
            });
            if ok {
                out.push((0..g.n as u32).filter(|&p| mask >> p & 1 == 1).collect());
            }
        }
        out
    }

    #[test]
    fn trivial_ovoids() {
        let g = gq22();
        let empty = certify(&g, vec![]).unwrap();
        assert_eq!(empty.m, 0);
        let full = certify(&g, (0..15).collect()).unwrap();
        assert_eq!(full.m as usize, g.s_plus_1);
        let c = complement(&g, &full).unwrap();
        assert_eq!(c.m, 0);
        assert_eq!(complement(&g, &c).unwrap(), full);
    }

    #[test]
    fn gq22_ovoids_pass_every_check() {
        let g = gq22();
        let ps = parameters_from_geometry(&g).unwrap();
        let ovoids = brute_force_ovoids(&g);
        // GQ(2,2) has exactly 6 ovoids.
        assert_eq!(ovoids.len(), 6);
        for members in ovoids {
            let cert = certify(&g, members).unwrap();
            assert_eq!(cert.m, 1);
            assert_eq!(cert.members.len(), 5);
            sphere_count_check_all(&g, &ps, &cert, 0).unwrap();
            eigen_identity_check(&g, &cert).unwrap();
            cross_sphere_check(&g, &ps, &cert, 0).unwrap();
            double_count_check(&g, &cert, 2, 0).unwrap();
            let c = complement(&g, &cert).unwrap();
            assert_eq!(c.m, 2);
            sphere_count_check_all(&g, &ps, &c, 0).unwrap();
            eigen_identity_check(&g, &c).unwrap();
        }
    }

    #[test]
    fn violations_are_reported_with_a_line() {
        let g = gq22();
        // 5 points that are not an ovoid: take a full line plus others.
        let mut bad: Vec<u32> = g.lines[0].clone();
        bad.push(13);
        bad.push(14);
        bad.sort_unstable();
        bad.dedup();
        let out = verify_m_ovoid(&g, &bad).unwrap();
        assert!(matches!(out, VerifyOutcome::Offending { .. }));
        assert!(certify(&g, bad).is_err());
        assert!(verify_m_ovoid(&g, &[3, 3]).is_err());
        assert!(verify_m_ovoid(&g, &[99]).is_err());
    }

    #[test]
    fn eigen_identity_fails_on_non_ovoid() {
        let g = gq22();
        // A set containing a full line cannot satisfy the degree
        // identity for m = 1; forge the verified flag to reach it.
        let mut members: Vec<u32> = g.lines[0].clone();
        for p in (0..15).rev() {
            if members.len() >= 5 {
                break;
            }
            if !members.contains(&p) {
                members.push(p);
            }
        }
        members.sort_unstable();
        let cert = OvoidCertificate {
            geometry_hash: g.hash_hex.clone(),
            m: 1,
            members,
            verified: true,
        };
        assert!(eigen_identity_check(&g, &cert).is_err());
    }

    #[test]
    fn formula_values_for_hemisystem_parameters() {
        // Direct formula evaluation at s=3, m=2, k=(1,39,351,729).
        let ps = ParameterSet::new(3, vec![-1, 0, 3, 12]).unwrap();
        let k = ps.k().unwrap();
        let inside: Vec<i64> = (0..=3)
            .map(|i| {
                let (num, den) = expected_sphere_count(&ps, k[i], i, 2, true);
                assert_eq!(num % den, 0);
                (num / den) as i64
            })
            .collect();
        assert_eq!(inside, vec![1, 13, 195, 351]);
        assert_eq!(inside.iter().sum::<i64>(), 560);
        let outside: Vec<i64> = (0..=3)
            .map(|i| {
                let (num, den) = expected_sphere_count(&ps, k[i], i, 2, false);
                assert_eq!(num % den, 0);
                (num / den) as i64
            })
            .collect();
        assert_eq!(outside, vec![0, 26, 156, 378]);
        assert_eq!(outside.iter().sum::<i64>(), 560);
    }

    #[test]
    fn hypothesis_and_bounds() {
        let dq63 = ParameterSet::new(3, vec![-1, 0, 3, 12]).unwrap();
        assert_eq!(check_two_parameter_identity(&dq63), vec![3]);
        assert_eq!(admissible_m(&dq63), vec![2]);
        let b = check_parameter_bounds(&dq63);
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].value, 13);
        assert_eq!(b[0].lower, 13.0);
        assert_eq!(b[0].upper, 49.0);
        assert!(b[0].lower_attained && !b[0].upper_attained && !b[0].violated);

        let dh54 = ParameterSet::new(2, vec![-1, 0, 4, 20]).unwrap();
        assert_eq!(check_two_parameter_identity(&dh54), vec![3]);
        assert_eq!(admissible_m(&dh54), Vec::<i64>::new());
        assert!(check_parameter_bounds(&dh54)[0].lower_attained);

        let perturbed = ParameterSet::new(3, vec![-1, 0, 3, 13]).unwrap();
        assert_eq!(check_two_parameter_identity(&perturbed), Vec::<usize>::new());
        assert_eq!(admissible_m(&perturbed), vec![1, 2, 3]);

        let wild = ParameterSet::new(3, vec![-1, 0, 3, 60]).unwrap();
        let b = check_parameter_bounds(&wild);
        assert!(b[0].violated);

        // Diameter 2 has no i in range: empty reports.
        let gq = ParameterSet::new(2, vec![-1, 0, 2]).unwrap();
        assert!(check_two_parameter_identity(&gq).is_empty());
        assert!(check_parameter_bounds(&gq).is_empty());
        assert_eq!(admissible_m(&gq), vec![1, 2]);
    }

    #[test]
    fn pair_product_refuses_out_of_range_or_identity() {
        let g = gq22();
        let ps = parameters_from_geometry(&g).unwrap();
        let cert = certify(&g, brute_force_ovoids(&g).remove(0)).unwrap();
        assert!(matches!(
            pair_product_check(&g, &ps, &cert, 2, 0),
            Err(OvoidError::BadDistance { .. })
        ));
    }

    #[test]
    fn cross_sphere_fractions() {
        // F_i = s^(i-1) f_i for s=3, m=2: f = (1, 1/3, 5/9).
        let fs = f_seq(3, 2, 3);
        assert_eq!(fs[1], 1);
        assert_eq!(fs[2], 1);
        assert_eq!(fs[3], 5);
    }
}
