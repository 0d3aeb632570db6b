//! Numerical construction of Type I even-degree covers and the genus-2
//! curves they induce.
//!
//! Coordinates are normalized so that `x = 0, 1, oo` are unramified points
//! over `0, 1, oo`. The cover is
//!
//! ```text
//! phi(x) = lambda x (x - w4) P(x)^2 / ((x - w6) Q(x)^2)
//! ```
//!
//! with `P, Q, R` monic of degree `d = (n - 2) / 2` and
//! `phi - 1 = lambda (x - 1)(x - w5) R^2 / ((x - w6) Q^2)`. The extra branch
//! value `s` carries `n/2` double points, `t` a single one.

use std::cmp::Ordering;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{complex_roots, ComplexScalar, Poly};
use crate::error::{domain, Error, Result};
use crate::igusa::{sextic_invariants, IgusaVector};
use crate::ramification::{lemma2_parity_check, RamificationProfile};

type C = Complex64;

const ZERO: C = C::new(0.0, 0.0);
const ONE: C = C::new(1.0, 0.0);

/// Anchors for the extra branch values when none are given.
pub const DEFAULT_ANCHORS: (C, C) = (C::new(-1.3, 0.7), C::new(2.1, -0.4));

/// Unknown layout and residual blocks for a fixed degree.
///
/// Unknowns, in order: `lambda, w4, w5, w6`, the low coefficients of `P, Q,
/// R` (`d` each), of `S` (`n/2`), of `U` (`n - 2`), the double point `r`, and
/// `s, t`. Rows: the `n + 1` coefficients of
/// `lambda x (x-w4) P^2 - (x-w6) Q^2 - lambda (x-1)(x-w5) R^2`, the `n + 1`
/// coefficients of `lambda x (x-w4) P^2 - s (x-w6) Q^2 - lambda S^2`, the
/// `n + 1` coefficients of `lambda x (x-w4) P^2 - t (x-w6) Q^2 - lambda (x-r)^2 U`,
/// and two anchor rows `s - s0`, `t - t0`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CoverSystem {
    pub n: usize,
    pub d: usize,
    pub anchors: (C, C),
    pub unknowns: usize,
    pub equations: usize,
}

#[derive(Clone, Debug)]
struct Unpacked {
    lambda: C,
    w: [C; 3],
    p: Vec<C>,
    q: Vec<C>,
    r: Vec<C>,
    s_poly: Vec<C>,
    u: Vec<C>,
    double: C,
    s: C,
    t: C,
}

fn monic(low: &[C]) -> Vec<C> {
    let mut v = low.to_vec();
    v.push(ONE);
    v
}

fn mul(a: &[C], b: &[C]) -> Vec<C> {
    let mut out = vec![ZERO; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn scale(a: &[C], k: C) -> Vec<C> {
    a.iter().map(|x| x * k).collect()
}

fn sub_into(acc: &mut Vec<C>, b: &[C]) {
    if acc.len() < b.len() {
        acc.resize(b.len(), ZERO);
    }
    for (x, y) in acc.iter_mut().zip(b) {
        *x -= y;
    }
}

fn eval(a: &[C], x: C) -> C {
    a.iter().rev().fold(ZERO, |acc, c| acc * x + c)
}

fn deriv(a: &[C]) -> Vec<C> {
    if a.len() <= 1 {
        return vec![ZERO];
    }
    a.iter().enumerate().skip(1).map(|(i, c)| c * i as f64).collect()
}

fn linear(root: C) -> [C; 2] {
    [-root, ONE]
}

impl CoverSystem {
    fn unpack(&self, z: &[C]) -> Unpacked {
        let d = self.d;
        let n = self.n;
        let mut at = 4;
        let mut take = |k: usize| {
            let v = monic(&z[at..at + k]);
            at += k;
            v
        };
        let p = take(d);
        let q = take(d);
        let r = take(d);
        let s_poly = take(n / 2);
        let u = take(n - 2);
        Unpacked {
            lambda: z[0],
            w: [z[1], z[2], z[3]],
            p,
            q,
            r,
            s_poly,
            u,
            double: z[at],
            s: z[at + 1],
            t: z[at + 2],
        }
    }

    #[cfg(test)]
    fn pack(&self, u: &Unpacked) -> Vec<C> {
        let low = |v: &[C]| v[..v.len() - 1].to_vec();
        let mut z = vec![u.lambda, u.w[0], u.w[1], u.w[2]];
        for part in [&u.p, &u.q, &u.r, &u.s_poly, &u.u] {
            z.extend(low(part));
        }
        z.extend([u.double, u.s, u.t]);
        z
    }

    pub fn residual(&self, z: &[C]) -> Vec<C> {
        let v = self.unpack(z);
        let n = self.n;
        let numer = scale(&mul(&mul(&[ZERO, ONE], &linear(v.w[0])), &mul(&v.p, &v.p)), v.lambda);
        let denom = mul(&linear(v.w[2]), &mul(&v.q, &v.q));
        let mut out = Vec::with_capacity(self.equations);
        let mut push_block = |mut block: Vec<C>| {
            block.resize(n + 1, ZERO);
            out.extend(block);
        };

        let mut a = numer.clone();
        sub_into(&mut a, &denom);
        sub_into(&mut a, &scale(&mul(&mul(&linear(ONE), &linear(v.w[1])), &mul(&v.r, &v.r)), v.lambda));
        push_block(a);

        let mut b = numer.clone();
        sub_into(&mut b, &scale(&denom, v.s));
        sub_into(&mut b, &scale(&mul(&v.s_poly, &v.s_poly), v.lambda));
        push_block(b);

        let mut c = numer;
        sub_into(&mut c, &scale(&denom, v.t));
        let dp = linear(v.double);
        sub_into(&mut c, &scale(&mul(&mul(&dp, &dp), &v.u), v.lambda));
        push_block(c);

        out.push(v.s - self.anchors.0);
        out.push(v.t - self.anchors.1);
        out
    }

    fn jacobian(&self, z: &[C]) -> DMatrix<C> {
        let m = self.equations;
        let k = self.unknowns;
        let mut j = DMatrix::from_element(m, k, ZERO);
        let mut zz = z.to_vec();
        for col in 0..k {
            let h = 1e-6 * (1.0 + z[col].norm());
            zz[col] = z[col] + h;
            let fp = self.residual(&zz);
            zz[col] = z[col] - h;
            let fm = self.residual(&zz);
            zz[col] = z[col];
            for row in 0..m {
                j[(row, col)] = (fp[row] - fm[row]) / (2.0 * h);
            }
        }
        j
    }
}

pub fn build_system(n: usize) -> Result<CoverSystem> {
    build_system_with(n, DEFAULT_ANCHORS)
}

pub fn build_system_with(n: usize, anchors: (C, C)) -> Result<CoverSystem> {
    if n % 2 == 1 || n < 4 {
        return domain(format!("cover system needs an even degree >= 4, got {n}"));
    }
    let (s, t) = anchors;
    let pts = [ZERO, ONE, s, t];
    for i in 0..4 {
        for j in i + 1..4 {
            if (pts[i] - pts[j]).norm() < 1e-6 || !pts[i].is_finite() || !pts[j].is_finite() {
                return domain("branch values 0, 1, s, t must be finite and distinct");
            }
        }
    }
    let d = (n - 2) / 2;
    let unknowns = 4 + 3 * d + n / 2 + (n - 2) + 3;
    Ok(CoverSystem { n, d, anchors, unknowns, equations: 3 * (n + 1) + 2 })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CoverInstance {
    pub n: usize,
    pub lambda: C,
    pub w4: C,
    pub w5: C,
    pub w6: C,
    /// Ascending coefficients, leading 1.
    pub p: Vec<C>,
    pub q: Vec<C>,
    pub r: Vec<C>,
    pub s: C,
    pub t: C,
    /// `S` with `phi - s = lambda S^2 / ((x - w6) Q^2)`.
    pub s_square_root: Vec<C>,
    /// Double point over `t` and the cofactor `U`.
    pub t_double_point: C,
    pub t_cofactor: Vec<C>,
    /// Max modulus of the identity-system residual.
    pub residual: f64,
}

impl CoverInstance {
    fn from_unpacked(n: usize, v: Unpacked, residual: f64) -> Self {
        Self {
            n,
            lambda: v.lambda,
            w4: v.w[0],
            w5: v.w[1],
            w6: v.w[2],
            p: v.p,
            q: v.q,
            r: v.r,
            s: v.s,
            t: v.t,
            s_square_root: v.s_poly,
            t_double_point: v.double,
            t_cofactor: v.u,
            residual,
        }
    }

    /// `phi = numerator / denominator`, ascending coefficients.
    pub fn rational_map(&self) -> (Vec<C>, Vec<C>) {
        let numer = scale(&mul(&mul(&[ZERO, ONE], &linear(self.w4)), &mul(&self.p, &self.p)), self.lambda);
        let denom = mul(&linear(self.w6), &mul(&self.q, &self.q));
        (numer, denom)
    }

    fn coordinates(&self) -> Vec<C> {
        let mut v = vec![self.lambda, self.w4, self.w5, self.w6];
        v.extend(self.p.iter().chain(&self.q).chain(&self.r));
        v
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum VerificationStatus {
    Verified,
    Failed(String),
    Inconclusive(String),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub status: VerificationStatus,
    /// Fibers over `0, 1, oo, s, t`.
    pub profile: Option<RamificationProfile>,
    pub critical_points: usize,
    pub total_ramification: usize,
    /// Largest chordal distance from a critical value to its branch value.
    pub max_branch_deviation: f64,
    /// Smallest distance between two critical points.
    pub min_critical_separation: f64,
    /// Weierstrass images over `0, 1, oo, s`.
    pub weierstrass_counts: Vec<i64>,
    pub parity_ok: bool,
}

impl VerificationReport {
    pub fn verified(&self) -> bool {
        self.status == VerificationStatus::Verified
    }
}

/// Chordal distance on `P^1` between `[a0 : a1]` and `[b0 : b1]`.
fn chordal(a: (C, C), b: (C, C)) -> f64 {
    let num = (a.0 * b.1 - a.1 * b.0).norm();
    let den = (a.0.norm_sqr() + a.1.norm_sqr()).sqrt() * (b.0.norm_sqr() + b.1.norm_sqr()).sqrt();
    if den == 0.0 {
        f64::INFINITY
    } else {
        num / den
    }
}

fn finite(z: C) -> (C, C) {
    (z, ONE)
}

const INFINITY_PT: (C, C) = (ONE, ZERO);

/// Relative tolerance for matching critical values to branch values.
pub const CLUSTER_TOLERANCE: f64 = 1e-6;

/// Checks the ramification of `phi` from scratch: critical points are the
/// roots of `N' D - N D'`, each must be simple, and the critical values must
/// land on `0, 1, oo, s, t` with Type I multiplicities.
pub fn verify_cover(c: &CoverInstance) -> VerificationReport {
    let n = c.n;
    let d = (n - 2) / 2;
    let mut report = VerificationReport {
        status: VerificationStatus::Verified,
        profile: None,
        critical_points: 0,
        total_ramification: 0,
        max_branch_deviation: f64::INFINITY,
        min_critical_separation: 0.0,
        weierstrass_counts: Vec::new(),
        parity_ok: false,
    };
    let fail = |mut r: VerificationReport, why: String| {
        r.status = VerificationStatus::Failed(why);
        r
    };
    let (numer, denom) = c.rational_map();
    let mut wronskian = mul(&deriv(&numer), &denom);
    sub_into(&mut wronskian, &mul(&numer, &deriv(&denom)));
    let coeffs: Option<Vec<ComplexScalar>> = wronskian
        .iter()
        .map(|z| ComplexScalar::new(z.re, z.im).ok())
        .collect();
    let Some(coeffs) = coeffs else {
        report.status = VerificationStatus::Inconclusive("non-finite derivative numerator".into());
        return report;
    };
    let crit = match complex_roots(&Poly::new(coeffs)) {
        Ok(r) => r,
        Err(e) => {
            report.status = VerificationStatus::Inconclusive(format!("root finding failed: {e}"));
            return report;
        }
    };
    report.critical_points = crit.len();
    if crit.len() != 2 * n - 2 {
        return fail(report, format!("wrong number of critical points ({}, expected {})", crit.len(), 2 * n - 2));
    }
    let mut sep = f64::INFINITY;
    for i in 0..crit.len() {
        for j in i + 1..crit.len() {
            sep = sep.min((crit[i] - crit[j]).norm());
        }
    }
    report.min_critical_separation = sep;

    let targets = [finite(ZERO), finite(ONE), INFINITY_PT, finite(c.s), finite(c.t)];
    let mut counts = [0usize; 5];
    let mut worst: f64 = 0.0;
    for &x in &crit {
        let value = (eval(&numer, x), eval(&denom, x));
        let (k, dist) = targets
            .iter()
            .enumerate()
            .map(|(k, &t)| (k, chordal(value, t)))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("five targets");
        worst = worst.max(dist);
        counts[k] += 1;
    }
    report.max_branch_deviation = worst;
    // simple critical points only: every ramified point has index 2
    let fibers: Vec<Vec<usize>> = counts.iter().map(|&k| vec![2; k]).collect();
    let profile = RamificationProfile::new(n, fibers).ok();
    report.total_ramification = counts.iter().sum();
    report.profile = profile;
    if worst > CLUSTER_TOLERANCE {
        return fail(report, format!("critical values off the branch set (deviation {worst:.3e})"));
    }
    if sep < 1e3 * CLUSTER_TOLERANCE {
        return fail(report, format!("critical points coalesce (separation {sep:.3e})"));
    }
    if counts != [d, d, d, n / 2, 1] {
        return fail(report, format!("ramification not Type I (counts {counts:?} over 0, 1, oo, s, t)"));
    }

    let lemma_targets = [finite(ZERO), finite(ONE), INFINITY_PT, finite(c.s)];
    let mut images: Vec<(C, C)> =
        [ZERO, ONE, c.w4, c.w5, c.w6].iter().map(|&x| (eval(&numer, x), eval(&denom, x))).collect();
    // phi(oo) = oo since deg N = deg D + 1
    images.push(INFINITY_PT);
    let mut wcounts = vec![0i64; 4];
    for img in images {
        match lemma_targets.iter().position(|&t| chordal(img, t) < CLUSTER_TOLERANCE) {
            Some(k) => wcounts[k] += 1,
            None => {
                report.weierstrass_counts = wcounts;
                return fail(report, "a Weierstrass point maps off the 2-torsion branch values".into());
            }
        }
    }
    report.parity_ok = lemma2_parity_check(&wcounts, n as i64).unwrap_or(false);
    report.weierstrass_counts = wcounts.clone();
    if wcounts != [2, 2, 2, 0] || !report.parity_ok {
        return fail(report, format!("Weierstrass distribution wrong ({wcounts:?})"));
    }
    report
}

#[derive(Clone, Debug, Serialize)]
pub struct SolveOptions {
    pub seeds: usize,
    pub tolerance: f64,
    pub rng_seed: u64,
    pub max_iterations: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self { seeds: 500, tolerance: 1e-10, rng_seed: 42, max_iterations: 200 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SolveOutcome {
    pub instances: Vec<CoverInstance>,
    pub converged_starts: usize,
    /// Discard reasons with counts, sorted.
    pub discarded: Vec<(String, usize)>,
}

fn unit_disk(rng: &mut ChaCha8Rng) -> C {
    let r: f64 = rng.gen::<f64>().sqrt();
    let theta: f64 = rng.gen::<f64>() * std::f64::consts::TAU;
    C::from_polar(r, theta)
}

fn max_norm(v: &[C]) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Damped Gauss–Newton (Levenberg–Marquardt) from one start.
fn levenberg_marquardt(sys: &CoverSystem, mut z: Vec<C>, tol: f64, max_iter: usize) -> Option<(Vec<C>, f64)> {
    let mut f = sys.residual(&z);
    let mut cost = f.iter().map(|v| v.norm_sqr()).sum::<f64>();
    let mut mu = 1e-3;
    for it in 0..max_iter {
        if max_norm(&f) < tol * 1e-2 {
            break;
        }
        // starts still far off after many steps are abandoned
        if it == max_iter / 3 && cost > 1e-4 {
            return None;
        }
        let j = sys.jacobian(&z);
        let jh = j.adjoint();
        let fv = DVector::from_vec(f.clone());
        let g = &jh * &fv;
        let mut a = &jh * &j;
        let mut stepped = false;
        for _ in 0..12 {
            for i in 0..a.nrows() {
                a[(i, i)] = (jh.row(i) * j.column(i))[(0, 0)] + C::new(mu, 0.0);
            }
            let Some(chol) = a.clone().cholesky() else {
                mu *= 10.0;
                continue;
            };
            let delta = chol.solve(&g);
            let trial: Vec<C> = z.iter().zip(delta.iter()).map(|(x, dx)| x - dx).collect();
            if trial.iter().any(|v| !v.is_finite() || v.norm() > 1e6) {
                return None;
            }
            let ft = sys.residual(&trial);
            let ct = ft.iter().map(|v| v.norm_sqr()).sum::<f64>();
            if ct < cost {
                z = trial;
                f = ft;
                cost = ct;
                mu = (mu / 5.0).max(1e-15);
                stepped = true;
                break;
            }
            mu *= 4.0;
        }
        if !stepped {
            break;
        }
    }
    let res = max_norm(&f);
    (res < tol).then_some((z, res))
}

fn admissibility(c: &CoverInstance) -> std::result::Result<(), String> {
    const SEP: f64 = 1e-6;
    if c.lambda.norm() < SEP {
        return Err("lambda vanishes".into());
    }
    let marked = [ZERO, ONE, c.w4, c.w5, c.w6];
    for i in 0..5 {
        for j in i + 1..5 {
            if (marked[i] - marked[j]).norm() < SEP {
                return Err("marked points 0, 1, w4, w5, w6 collide".into());
            }
        }
    }
    // every point named in a fiber over 0, 1, oo, s, t must be distinct
    let mut points = marked.to_vec();
    points.push(c.t_double_point);
    for poly in [&c.p, &c.q, &c.r, &c.s_square_root, &c.t_cofactor] {
        let cs: Vec<ComplexScalar> = poly.iter().map(|z| ComplexScalar::from_c64(*z)).collect();
        points.extend(complex_roots(&Poly::new(cs)).map_err(|e| e.to_string())?);
    }
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            if (points[i] - points[j]).norm() < SEP {
                return Err("fiber points collide (P, Q, R, S, U not squarefree and coprime)".into());
            }
        }
    }
    Ok(())
}

fn lex_cmp(a: &[C], b: &[C]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        let o = x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im));
        if o != Ordering::Equal {
            return o;
        }
    }
    a.len().cmp(&b.len())
}

/// Multi-start solve. Start `k` draws from its own stream of a ChaCha RNG
/// seeded with `rng_seed`, so results do not depend on the thread count.
pub fn solve(sys: &CoverSystem, opts: &SolveOptions) -> Result<SolveOutcome> {
    if !(opts.tolerance > 0.0) {
        return domain("tolerance must be positive");
    }
    let runs: Vec<std::result::Result<CoverInstance, String>> = (0..opts.seeds)
        .into_par_iter()
        .filter_map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.rng_seed);
            rng.set_stream(k as u64);
            let mut z: Vec<C> = (0..sys.unknowns).map(|_| unit_disk(&mut rng)).collect();
            let last = z.len();
            z[last - 2] = sys.anchors.0;
            z[last - 1] = sys.anchors.1;
            let (z, res) = levenberg_marquardt(sys, z, opts.tolerance, opts.max_iterations)?;
            let inst = CoverInstance::from_unpacked(sys.n, sys.unpack(&z), res);
            Some(match admissibility(&inst) {
                Err(why) => Err(why),
                Ok(()) => {
                    let rep = verify_cover(&inst);
                    match rep.status {
                        VerificationStatus::Verified => Ok(inst),
                        VerificationStatus::Failed(w) | VerificationStatus::Inconclusive(w) => {
                            let kind = w.split(" (").next().unwrap_or(&w);
                            Err(format!("verification: {kind}"))
                        }
                    }
                }
            })
        })
        .collect();
    let converged_starts = runs.len();
    let mut discarded = std::collections::BTreeMap::<String, usize>::new();
    let mut found = Vec::new();
    for r in runs {
        match r {
            Ok(inst) => found.push(inst),
            Err(why) => *discarded.entry(why).or_default() += 1,
        }
    }
    found.sort_by(|a, b| lex_cmp(&a.coordinates(), &b.coordinates()));
    let mut instances: Vec<CoverInstance> = Vec::new();
    for inst in found {
        let dup = instances.iter_mut().find(|o| {
            o.coordinates()
                .iter()
                .zip(inst.coordinates().iter())
                .all(|(a, b)| (a - b).norm() <= 1e-6 * (1.0 + a.norm()))
        });
        match dup {
            Some(o) if o.residual <= inst.residual => {}
            Some(o) => *o = inst,
            None => instances.push(inst),
        }
    }
    instances.sort_by(|a, b| {
        a.residual
            .total_cmp(&b.residual)
            .then_with(|| lex_cmp(&a.coordinates(), &b.coordinates()))
    });
    Ok(SolveOutcome { instances, converged_starts, discarded: discarded.into_iter().collect() })
}

/// The induced genus-2 curve `y^2 = x (x-1)(x-w4)(x-w5)(x-w6)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EmittedCurve {
    pub roots: [C; 5],
    /// Ascending coefficients of the quintic.
    pub quintic: Vec<C>,
    pub invariants: IgusaVector<C>,
}

pub fn emit_curve(c: &CoverInstance) -> Result<EmittedCurve> {
    let roots = [ZERO, ONE, c.w4, c.w5, c.w6];
    for i in 0..5 {
        for j in i + 1..5 {
            if (roots[i] - roots[j]).norm() < 1e-8 {
                return domain("Weierstrass points nearly collide; curve would be singular");
            }
        }
    }
    if !verify_cover(c).verified() {
        return Err(Error::Domain("instance does not pass verification".into()));
    }
    let quintic = roots.iter().fold(vec![ONE], |acc, &w| mul(&acc, &linear(w)));
    let coeffs: Vec<ComplexScalar> = quintic.iter().map(|z| ComplexScalar::from_c64(*z)).collect();
    let v = sextic_invariants(&coeffs);
    let invariants = IgusaVector { j2: v.j2.c64(), j4: v.j4.c64(), j6: v.j6.c64(), j10: v.j10.c64() };
    Ok(EmittedCurve { roots, quintic, invariants })
}
