//! Distance-regularity parameters, intersection numbers and eigendata of
//! the collinearity graph.
//!
//! Everything combinatorial is exact integer arithmetic; eigenvalues are
//! integers whenever the characteristic polynomial has integer roots
//! (always the case for the built families) and bisection approximations
//! otherwise. The intersection matrix is tridiagonal, so its leading
//! principal blocks give strictly interlacing roots and bisection never
//! needs a starting guess.

use crate::geometry::Geometry;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SchemeError {
    #[error("not distance regular: at distance {i} the pair ({x1},{y1}) has {v1} neighbors of the second point at distance {j}, pair ({x2},{y2}) has {v2}")]
    NotDistanceRegular { i: usize, j: usize, x1: u32, y1: u32, v1: i64, x2: u32, y2: u32, v2: i64 },
    #[error("distance regular but not a near polygon: {relation} fails at i = {i} ({lhs} != {rhs})")]
    NotNearPolygon { relation: &'static str, i: usize, lhs: i64, rhs: i64 },
    #[error("invalid parameters: {0}")]
    BadParameters(String),
    #[error("sphere size k_{i} from the k-recursion is not an integer")]
    NonIntegralK { i: usize },
    #[error("intersection number p^{l}_({i},{j}) is not a nonnegative integer")]
    BadPEntry { l: usize, i: usize, j: usize },
    #[error("eigenvalues {0} and {1} coincide")]
    RepeatedEigenvalue(f64, f64),
    #[error("eigenvalue {0} expected but not present")]
    MissingEigenvalue(i64),
    #[error("vector has length {got}, geometry has {want} points")]
    LengthMismatch { got: usize, want: usize },
}

/// The near-polygon parameters (s, t_2, ..., t_d) together with the forced
/// prefix t_0 = -1, t_1 = 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParameterSet {
    pub s: i64,
    pub d: usize,
    /// t_seq[i] = t_i; length d+1, starts -1, 0.
    pub t_seq: Vec<i64>,
}

impl std::fmt::Display for ParameterSet {
    fn fmt(&self, fm: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(fm, "(s")?;
        for i in 2..=self.d {
            write!(fm, ", t_{i}")?;
        }
        write!(fm, ") = ({}", self.s)?;
        for i in 2..=self.d {
            write!(fm, ", {}", self.t_seq[i])?;
        }
        write!(fm, ")")
    }
}

impl ParameterSet {
    pub fn new(s: i64, t_seq: Vec<i64>) -> Result<ParameterSet, SchemeError> {
        let d = t_seq.len().checked_sub(1).unwrap_or(0);
        if d < 2 {
            return Err(SchemeError::BadParameters("diameter must be at least 2".into()));
        }
        if s < 1 {
            return Err(SchemeError::BadParameters(format!("s = {s} must be positive")));
        }
        if t_seq[0] != -1 || t_seq[1] != 0 {
            return Err(SchemeError::BadParameters("t_0 = -1 and t_1 = 0 are forced".into()));
        }
        let t = t_seq[d];
        for (i, &ti) in t_seq.iter().enumerate().skip(1) {
            if ti < 0 {
                return Err(SchemeError::BadParameters(format!("t_{i} = {ti} is negative")));
            }
            if i < d && ti >= t {
                return Err(SchemeError::BadParameters(format!(
                    "t_{i} = {ti} not below t = {t}, so b_{i} would vanish"
                )));
            }
        }
        Ok(ParameterSet { s, d, t_seq })
    }

    pub fn t(&self) -> i64 {
        self.t_seq[self.d]
    }

    pub fn c(&self, i: usize) -> i64 {
        self.t_seq[i] + 1
    }

    pub fn a(&self, i: usize) -> i64 {
        (self.s - 1) * (self.t_seq[i] + 1)
    }

    pub fn b(&self, i: usize) -> i64 {
        self.s * (self.t() - self.t_seq[i])
    }

    pub fn k1(&self) -> i64 {
        self.s * (self.t() + 1)
    }

    /// Sphere sizes k_0..k_d via k_i = k_(i-1) b_(i-1) / c_i.
    pub fn k(&self) -> Result<Vec<i64>, SchemeError> {
        let mut k = vec![1i64; self.d + 1];
        for i in 1..=self.d {
            let num = k[i - 1] * self.b(i - 1);
            if num % self.c(i) != 0 {
                return Err(SchemeError::NonIntegralK { i });
            }
            k[i] = num / self.c(i);
        }
        Ok(k)
    }

    pub fn n(&self) -> Result<i64, SchemeError> {
        Ok(self.k()?.iter().sum())
    }
}

/// Measures s, diameter and the t_i from the graph and verifies
/// distance-regularity over every ordered point pair.
pub fn parameters_from_geometry(g: &Geometry) -> Result<ParameterSet, SchemeError> {
    let dia = g.diameter;
    let n = g.n;
    // c/a/b observed at each distance, with the pair that set them.
    let mut seen: Vec<[Option<(i64, u32, u32)>; 3]> = vec![[None; 3]; dia + 1];
    for x in 0..n {
        let row = g.dist_row(x);
        for y in 0..n {
            if y == x {
                continue;
            }
            let i = row[y] as usize;
            debug_assert!((1..=dia).contains(&i));
            let mut cnt = [0i64; 3];
            for &w in &g.neighbors[y] {
                let dw = row[w as usize] as usize;
                // Triangle inequality pins dw to {i-1, i, i+1}.
                cnt[dw + 1 - i] += 1;
            }
            for (off, &v) in cnt.iter().enumerate() {
                match seen[i][off] {
                    None => seen[i][off] = Some((v, x as u32, y as u32)),
                    Some((v1, x1, y1)) if v1 != v => {
                        return Err(SchemeError::NotDistanceRegular {
                            i,
                            j: i + off - 1,
                            x1,
                            y1,
                            v1,
                            x2: x as u32,
                            y2: y as u32,
                            v2: v,
                        });
                    }
                    _ => {}
                }
            }
        }
    }

    let s = (g.s_plus_1 - 1) as i64;
    let t = (g.t_plus_1 - 1) as i64;
    let mut t_seq = Vec::with_capacity(dia + 1);
    t_seq.push(-1);
    for i in 1..=dia {
        let (c, _, _) = seen[i][0].expect("distance attained somewhere");
        let (a, _, _) = seen[i][1].unwrap();
        let (b, _, _) = seen[i][2].unwrap();
        // Near-polygon structure: lines through y sort into c_i reaching
        // closer and the rest staying level or receding.
        if a != (s - 1) * c {
            return Err(SchemeError::NotNearPolygon { relation: "a_i = (s-1)(t_i+1)", i, lhs: a, rhs: (s - 1) * c });
        }
        if b != s * (t - (c - 1)) {
            return Err(SchemeError::NotNearPolygon { relation: "b_i = s(t-t_i)", i, lhs: b, rhs: s * (t - (c - 1)) });
        }
        t_seq.push(c - 1);
    }
    if t_seq[1] != 0 {
        return Err(SchemeError::NotNearPolygon { relation: "t_1 = 0", i: 1, lhs: t_seq[1], rhs: 0 });
    }
    if t_seq[dia] != t {
        return Err(SchemeError::NotNearPolygon { relation: "t_d = t", i: dia, lhs: t_seq[dia], rhs: t });
    }
    ParameterSet::new(s, t_seq)
}

#[derive(Debug, Clone)]
pub struct IntersectionTable {
    pub c: Vec<i64>,
    pub a: Vec<i64>,
    pub b: Vec<i64>,
    pub k: Vec<i64>,
    pub n: i64,
    /// p[l][i][j] = |Gamma_i(x) meet Gamma_j(y)| for any pair at distance l.
    pub p: Vec<Vec<Vec<i64>>>,
}

/// Fills the full intersection-number table by the three-term recursion on
/// i, checking integrality, nonnegativity, symmetry and the k-balance.
pub fn intersection_table(ps: &ParameterSet) -> Result<IntersectionTable, SchemeError> {
    let d = ps.d;
    let c: Vec<i64> = (0..=d).map(|i| ps.c(i)).collect();
    let a: Vec<i64> = (0..=d).map(|i| ps.a(i)).collect();
    let b: Vec<i64> = (0..=d).map(|i| ps.b(i)).collect();
    let k = ps.k()?;
    let n: i64 = k.iter().sum();

    let mut p = vec![vec![vec![0i64; d + 1]; d + 1]; d + 1];
    for l in 0..=d {
        for j in 0..=d {
            p[l][0][j] = if j == l { 1 } else { 0 };
        }
        // p^l_(1,j) is the definition of c_l, a_l, b_l.
        if l >= 1 {
            p[l][1][l - 1] = c[l];
        }
        p[l][1][l] = a[l];
        if l + 1 <= d {
            p[l][1][l + 1] = b[l];
        }
    }
    // p^0_(i,j) = delta_ij k_i.
    for i in 0..=d {
        for j in 0..=d {
            p[0][i][j] = if i == j { k[i] } else { 0 };
        }
    }

    for i in 1..d {
        for l in 0..=d {
            for j in 0..=d {
                let mut num: i128 = 0;
                if l >= 1 {
                    num += p[l - 1][i][j] as i128 * c[l] as i128;
                }
                num += p[l][i][j] as i128 * (a[l] as i128 - a[i] as i128);
                if l + 1 <= d {
                    num += p[l + 1][i][j] as i128 * b[l] as i128;
                }
                if i >= 1 {
                    num -= p[l][i - 1][j] as i128 * b[i - 1] as i128;
                }
                let den = c[i + 1] as i128;
                if num % den != 0 || num / den < 0 {
                    return Err(SchemeError::BadPEntry { l, i: i + 1, j });
                }
                let v = (num / den) as i64;
                p[l][i + 1][j] = v;
            }
        }
    }

    let it = IntersectionTable { c, a, b, k, n, p };
    for l in 0..=d {
        for i in 0..=d {
            let mut row_sum = 0i64;
            for j in 0..=d {
                let v = it.p[l][i][j];
                if v != it.p[l][j][i] {
                    return Err(SchemeError::BadPEntry { l, i, j });
                }
                if it.k[l] * v != it.k[i] * it.p[i][l][j] {
                    return Err(SchemeError::BadPEntry { l, i, j });
                }
                row_sum += v;
            }
            if row_sum != it.k[i] {
                return Err(SchemeError::BadPEntry { l, i, j: d + 1 });
            }
        }
    }
    Ok(it)
}

#[derive(Debug, Clone)]
pub struct EigenData {
    /// Strictly descending; theta[0] = k_1.
    pub theta: Vec<f64>,
    /// The same values when they are exact integers.
    pub theta_exact: Vec<Option<i64>>,
    pub mult: Vec<f64>,
    /// proj[j] = coefficients (ascending powers) of the degree-d polynomial
    /// f_j with f_j(A) = E_j, Lagrange form over the eigenvalues.
    pub proj: Vec<Vec<f64>>,
}

/// Eigenvalues of the tridiagonal intersection matrix by interlaced
/// bisection on its leading principal blocks, integer roots recognized
/// exactly; multiplicities by the standard-sequence formula.
pub fn eigendata(ps: &ParameterSet) -> Result<EigenData, SchemeError> {
    let d = ps.d;
    let k = ps.k()?;
    let n: i64 = k.iter().sum();
    let k1 = ps.k1();

    // Characteristic polynomials of leading blocks, integer coefficients,
    // ascending powers. D_0 = 1, D_(i+1) = (x - a_i) D_i - b_(i-1) c_i D_(i-1).
    let mut polys: Vec<Vec<i128>> = vec![vec![1]];
    for i in 0..=d {
        let prev = &polys[i];
        let mut next = vec![0i128; prev.len() + 1];
        for (j, &co) in prev.iter().enumerate() {
            next[j + 1] += co;
            next[j] -= ps.a(i) as i128 * co;
        }
        if i >= 1 {
            let w = ps.b(i - 1) as i128 * ps.c(i) as i128;
            for (j, &co) in polys[i - 1].iter().enumerate() {
                next[j] -= w * co;
            }
        }
        polys.push(next);
    }

    let eval = |poly: &[i128], x: f64| -> f64 {
        let mut acc = 0f64;
        for &co in poly.iter().rev() {
            acc = acc * x + co as f64;
        }
        acc
    };
    let eval_int = |poly: &[i128], x: i128| -> i128 {
        let mut acc = 0i128;
        for &co in poly.iter().rev() {
            acc = acc * x + co;
        }
        acc
    };

    // All eigenvalues lie in [-k1, k1]: every Gershgorin row sums to k1.
    let bound = k1 as f64 + 1.0;
    let mut roots: Vec<f64> = Vec::new();
    for i in 1..=d + 1 {
        let poly = &polys[i];
        let mut next_roots = Vec::with_capacity(i);
        for j in 0..i {
            let lo = if j == 0 { -bound } else { roots[j - 1] };
            let hi = if j == i - 1 { bound } else { roots[j] };
            let (mut lo, mut hi) = (lo, hi);
            // Sign at the top end of the bracket is that of the leading
            // coefficient (+1); it alternates downward through the roots.
            let hi_sign = if (i - 1 - j) % 2 == 0 { 1.0 } else { -1.0 };
            for _ in 0..100 {
                let mid = 0.5 * (lo + hi);
                if eval(poly, mid) * hi_sign >= 0.0 {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            next_roots.push(0.5 * (lo + hi));
        }
        roots = next_roots;
    }
    roots.reverse(); // descending

    let full = &polys[d + 1];
    let mut theta = Vec::with_capacity(d + 1);
    let mut theta_exact = Vec::with_capacity(d + 1);
    for r in roots {
        let near = r.round();
        if (near - r).abs() < 1e-6 && eval_int(full, near as i128) == 0 {
            theta.push(near);
            theta_exact.push(Some(near as i64));
        } else {
            theta.push(r);
            theta_exact.push(None);
        }
    }

    for w in theta.windows(2) {
        if (w[0] - w[1]).abs() < 1e-7 * (1.0 + w[0].abs()) {
            return Err(SchemeError::RepeatedEigenvalue(w[0], w[1]));
        }
    }
    if theta_exact[0] != Some(k1) {
        return Err(SchemeError::MissingEigenvalue(k1));
    }
    if !theta_exact.contains(&Some(-(ps.t() + 1))) {
        return Err(SchemeError::MissingEigenvalue(-(ps.t() + 1)));
    }

    // Standard sequence u(0)=1, u(1)=theta/k1,
    // c_i u(i-1) + a_i u(i) + b_i u(i+1) = theta u(i).
    let mut mult = Vec::with_capacity(d + 1);
    for &th in &theta {
        let mut u = vec![0f64; d + 1];
        u[0] = 1.0;
        u[1] = th / k1 as f64;
        for i in 1..d {
            u[i + 1] = ((th - ps.a(i) as f64) * u[i] - ps.c(i) as f64 * u[i - 1]) / ps.b(i) as f64;
        }
        let denom: f64 = (0..=d).map(|i| k[i] as f64 * u[i] * u[i]).sum();
        mult.push(n as f64 / denom);
    }
    let mult_sum: f64 = mult.iter().sum();
    if (mult_sum - n as f64).abs() > 1e-6 * n as f64 || mult.iter().any(|&m| m <= 0.0) {
        return Err(SchemeError::BadParameters(format!(
            "multiplicities sum to {mult_sum}, expected {n}"
        )));
    }

    // Lagrange polynomials: f_j(x) = prod_(l != j) (x - theta_l)/(theta_j - theta_l).
    let mut proj = Vec::with_capacity(d + 1);
    for j in 0..=d {
        let mut co = vec![0f64; d + 1];
        co[0] = 1.0;
        let mut deg = 0;
        let mut denom = 1.0;
        for l in 0..=d {
            if l == j {
                continue;
            }
            denom *= theta[j] - theta[l];
            for idx in (0..=deg).rev() {
                co[idx + 1] += co[idx];
                co[idx] *= -theta[l];
            }
            deg += 1;
        }
        for c in &mut co {
            *c /= denom;
        }
        proj.push(co);
    }

    Ok(EigenData { theta, theta_exact, mult, proj })
}

/// Applies the polynomial (ascending coefficients) in the adjacency
/// operator to v, by Horner with one sparse multiply per degree.
pub fn apply_adjacency_poly(g: &Geometry, coeffs: &[f64], v: &[f64]) -> Vec<f64> {
    let n = g.n;
    let mut acc = vec![coeffs[coeffs.len() - 1]; n];
    for i in 0..n {
        acc[i] *= v[i];
    }
    for &co in coeffs.iter().rev().skip(1) {
        let mut next = vec![0f64; n];
        for (x, nb) in g.neighbors.iter().enumerate() {
            let mut s = 0f64;
            for &w in nb {
                s += acc[w as usize];
            }
            next[x] = s + co * v[x];
        }
        acc = next;
    }
    acc
}

/// Indices j >= 1 with ||E_j v||^2 > eps ||v||^2.
pub fn dual_degree_set(
    g: &Geometry,
    ed: &EigenData,
    v: &[f64],
    eps: f64,
) -> Result<Vec<usize>, SchemeError> {
    if v.len() != g.n {
        return Err(SchemeError::LengthMismatch { got: v.len(), want: g.n });
    }
    let vnorm: f64 = v.iter().map(|x| x * x).sum();
    let mut out = Vec::new();
    for j in 1..ed.proj.len() {
        let w = apply_adjacency_poly(g, &ed.proj[j], v);
        let wnorm: f64 = w.iter().map(|x| x * x).sum();
        if wnorm > eps * vnorm {
            out.push(j);
        }
    }
    Ok(out)
}

/// Compares every p^l_(i,j) against sphere intersections on the graph for
/// `pairs` seeded pairs per distance l.
pub fn verify_p_table_on_graph(
    g: &Geometry,
    it: &IntersectionTable,
    pairs: usize,
    seed: u64,
) -> Result<(), SchemeError> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let d = g.diameter;
    for l in 0..=d {
        let mut done = 0;
        let mut attempts = 0;
        while done < pairs && attempts < pairs * 200 {
            attempts += 1;
            let x = rng.gen_range(0..g.n);
            let y = if l == 0 {
                x
            } else {
                // Walk into the right sphere cheaply: sample then test.
                let y = rng.gen_range(0..g.n);
                if g.distance(x, y) as usize != l {
                    continue;
                }
                y
            };
            let sx = g.sphere_bitsets(x);
            let sy = g.sphere_bitsets(y);
            for i in 0..=d {
                for j in 0..=d {
                    let got = sx[i].count_and(&sy[j]) as i64;
                    if got != it.p[l][i][j] {
                        return Err(SchemeError::NotDistanceRegular {
                            i,
                            j,
                            x1: x as u32,
                            y1: y as u32,
                            v1: got,
                            x2: x as u32,
                            y2: y as u32,
                            v2: it.p[l][i][j],
                        });
                    }
                }
            }
            done += 1;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::build_dual_polar;
    use crate::polar::{form_make, Family};

    fn geom(family: Family, d: usize, q: u32) -> Geometry {
        build_dual_polar(form_make(family, d, q).unwrap()).unwrap()
    }

    #[test]
    fn gq22_parameters_and_spectrum() {
        let g = geom(Family::W, 2, 2);
        let ps = parameters_from_geometry(&g).unwrap();
        assert_eq!(ps.s, 2);
        assert_eq!(ps.d, 2);
        assert_eq!(ps.t_seq, vec![-1, 0, 2]);
        let it = intersection_table(&ps).unwrap();
        assert_eq!(it.k, vec![1, 6, 8]);
        assert_eq!(it.n, 15);
        let ed = eigendata(&ps).unwrap();
        assert_eq!(ed.theta_exact, vec![Some(6), Some(1), Some(-3)]);
        let mult: Vec<i64> = ed.mult.iter().map(|m| m.round() as i64).collect();
        assert_eq!(mult, vec![1, 9, 5]);
        for (m, r) in ed.mult.iter().zip(&mult) {
            assert!((m - *r as f64).abs() < 1e-9);
        }
    }

    #[test]
    fn dq63_parameters_and_spectrum() {
        let g = geom(Family::Q, 3, 3);
        let ps = parameters_from_geometry(&g).unwrap();
        assert_eq!(ps.s, 3);
        assert_eq!(ps.t_seq, vec![-1, 0, 3, 12]);
        let it = intersection_table(&ps).unwrap();
        assert_eq!(it.k, vec![1, 39, 351, 729]);
        assert_eq!(it.n, 1120);
        // Two quoted table entries: p^1_(2,1) = k2 c2 / k1 and p^3_(1,2) = c3.
        assert_eq!(it.p[1][2][1], 36);
        assert_eq!(it.p[3][1][2], 13);
        let ed = eigendata(&ps).unwrap();
        assert_eq!(
            ed.theta_exact,
            vec![Some(39), Some(11), Some(-1), Some(-13)]
        );
        assert!(ed.mult.iter().all(|m| (m - m.round()).abs() < 1e-6));
    }

    #[test]
    fn dw53_matches_dq63_parameters() {
        let gq = geom(Family::Q, 3, 3);
        let gw = geom(Family::W, 3, 3);
        assert_eq!(parameters_from_geometry(&gq).unwrap(), parameters_from_geometry(&gw).unwrap());
        assert_ne!(gq.hash_hex, gw.hash_hex);
    }

    #[test]
    fn dh54_parameters() {
        let g = geom(Family::H, 3, 2);
        let ps = parameters_from_geometry(&g).unwrap();
        assert_eq!(ps.s, 2);
        assert_eq!(ps.t_seq, vec![-1, 0, 4, 20]);
        let it = intersection_table(&ps).unwrap();
        assert_eq!(it.k, vec![1, 42, 336, 512]);
        assert_eq!(it.n, 891);
        let ed = eigendata(&ps).unwrap();
        assert!(ed.theta_exact.contains(&Some(-21)));
    }

    #[test]
    fn p_table_matches_graph_counts() {
        let g = geom(Family::Q, 3, 3);
        let ps = parameters_from_geometry(&g).unwrap();
        let it = intersection_table(&ps).unwrap();
        verify_p_table_on_graph(&g, &it, 100, 7).unwrap();
        let g = geom(Family::H, 3, 2);
        let ps = parameters_from_geometry(&g).unwrap();
        let it = intersection_table(&ps).unwrap();
        verify_p_table_on_graph(&g, &it, 60, 7).unwrap();
    }

    #[test]
    fn projectors_resolve_the_identity() {
        let g = geom(Family::W, 2, 3);
        let ps = parameters_from_geometry(&g).unwrap();
        let ed = eigendata(&ps).unwrap();
        // Sum of E_j v over all j returns v; test on a few basis vectors.
        for x in [0usize, 7, 23] {
            let mut v = vec![0f64; g.n];
            v[x] = 1.0;
            let mut acc = vec![0f64; g.n];
            for j in 0..ed.proj.len() {
                let w = apply_adjacency_poly(&g, &ed.proj[j], &v);
                for i in 0..g.n {
                    acc[i] += w[i];
                }
            }
            for i in 0..g.n {
                assert!((acc[i] - v[i]).abs() < 1e-8, "entry {i}: {}", acc[i]);
            }
        }
    }

    #[test]
    fn dual_degree_of_structured_vectors() {
        let g = geom(Family::W, 2, 2);
        let ps = parameters_from_geometry(&g).unwrap();
        let ed = eigendata(&ps).unwrap();
        let ones = vec![1f64; g.n];
        assert_eq!(dual_degree_set(&g, &ed, &ones, 1e-8).unwrap(), Vec::<usize>::new());
        let mut single = vec![0f64; g.n];
        single[3] = 1.0;
        assert_eq!(dual_degree_set(&g, &ed, &single, 1e-8).unwrap(), vec![1, 2]);
    }

    #[test]
    fn invalid_parameters_are_rejected()  {
        assert!(ParameterSet::new(3, vec![-1, 0, 3]).is_ok());
        assert!(ParameterSet::new(3, vec![0, 0, 3]).is_err());
        assert!(ParameterSet::new(0, vec![-1, 0, 3]).is_err());
        assert!(ParameterSet::new(3, vec![-1, 0, 5, 3]).is_err());
        // t_2 chosen so c_2 = 3 does not divide k_1 b_1 = 10 * 8.
        let ps = ParameterSet::new(2, vec![-1, 0, 4, 20]).unwrap();
        assert!(intersection_table(&ps).is_ok());
        let ps = ParameterSet::new(2, vec![-1, 0, 2, 4]).unwrap();
        assert!(matches!(
            intersection_table(&ps).unwrap_err(),
            SchemeError::NonIntegralK { i: 2 }
        ));
    }
}
