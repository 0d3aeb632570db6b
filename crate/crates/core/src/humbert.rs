//! Singular relations on the Siegel upper half space of degree 2.
//!
//! A point `[[z1, z2], [z2, z3]]` satisfies the relation `(a, b, c, d, e)` when
//! `a z1 + b z2 + c z3 + d (z2^2 - z1 z3) + e = 0`; its discriminant is
//! `b^2 - 4ac - 4de`.

use std::fmt;

use num_complex::{Complex, Complex64};
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{int, parse_rational, rational_to_f64, Rational};
use crate::error::{domain, Error, Result};

pub type GaussianRational = Complex<Rational>;

/// Parses `a`, `bi`, `a+bi`, `a-bi` with rational or decimal `a`, `b`
/// (`i` alone is `1i`).
pub fn parse_gaussian(s: &str) -> Result<GaussianRational> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::Parse(format!("not a complex rational: {s:?}"));
    if t.is_empty() {
        return Err(bad());
    }
    let Some(body) = t.strip_suffix('i') else {
        return Ok(Complex::new(parse_rational(&t)?, int(0)));
    };
    // split before the sign that starts the imaginary part
    let split = body
        .char_indices()
        .skip(1)
        .filter(|&(k, c)| (c == '+' || c == '-') && !body[..k].ends_with('/'))
        .map(|(k, _)| k)
        .last();
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("", body),
    };
    let im = match im {
        "" | "+" => int(1),
        "-" => int(-1),
        other => parse_rational(other).map_err(|_| bad())?,
    };
    let re = if re.is_empty() { int(0) } else { parse_rational(re).map_err(|_| bad())? };
    Ok(Complex::new(re, im))
}

/// Parses `"z1,z2,z3"` into a validated point.
pub fn parse_tau(s: &str) -> Result<SiegelPoint> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(Error::Parse(format!("tau needs three entries z1,z2,z3: {s:?}")));
    }
    SiegelPoint::new(parse_gaussian(parts[0])?, parse_gaussian(parts[1])?, parse_gaussian(parts[2])?)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SiegelPoint {
    z: [GaussianRational; 3],
}

impl SiegelPoint {
    pub fn new(z1: GaussianRational, z2: GaussianRational, z3: GaussianRational) -> Result<Self> {
        let (y1, y2, y3) = (&z1.im, &z2.im, &z3.im);
        let det = y1 * y3 - y2 * y2;
        if *y1 <= int(0) || det <= int(0) {
            return domain("imaginary part is not positive definite");
        }
        Ok(Self { z: [z1, z2, z3] })
    }

    /// Nearest rational point to floating entries (exact binary expansion).
    pub fn from_c64(z: [Complex64; 3]) -> Result<Self> {
        let conv = |x: f64| {
            Rational::from_float(x).ok_or_else(|| crate::Error::Domain(format!("non-finite entry {x}")))
        };
        let mut out = Vec::with_capacity(3);
        for w in z {
            out.push(Complex::new(conv(w.re)?, conv(w.im)?));
        }
        let [z1, z2, z3]: [GaussianRational; 3] = out.try_into().expect("three entries");
        Self::new(z1, z2, z3)
    }

    pub fn entries(&self) -> &[GaussianRational; 3] {
        &self.z
    }

    pub fn to_c64(&self) -> [Complex64; 3] {
        self.z.clone().map(|w| Complex64::new(rational_to_f64(&w.re), rational_to_f64(&w.im)))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SingularRelation {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
    pub e: i64,
}

impl SingularRelation {
    pub fn new(a: i64, b: i64, c: i64, d: i64, e: i64) -> Result<Self> {
        if [a, b, c, d, e] == [0; 5] {
            return domain("singular relation must not be all zero");
        }
        Ok(Self { a, b, c, d, e })
    }

    pub fn as_array(&self) -> [i64; 5] {
        [self.a, self.b, self.c, self.d, self.e]
    }

    pub fn negate(&self) -> Self {
        let [a, b, c, d, e] = self.as_array().map(|v| -v);
        Self { a, b, c, d, e }
    }
}

impl fmt::Display for SingularRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {}, {})", self.a, self.b, self.c, self.d, self.e)
    }
}

pub fn relation_residual(p: &SiegelPoint, r: &SingularRelation) -> GaussianRational {
    let [z1, z2, z3] = &p.z;
    let k = |v: i64| Complex::new(int(v), int(0));
    k(r.a) * z1 + k(r.b) * z2 + k(r.c) * z3 + k(r.d) * (z2 * z2 - z1 * z3) + k(r.e)
}

fn residual_c64(z: &[Complex64; 3], r: [i64; 5]) -> Complex64 {
    let [a, b, c, d, e] = r.map(|v| v as f64);
    z[0] * a + z[1] * b + z[2] * c + (z[1] * z[1] - z[0] * z[2]) * d + e
}

/// `b^2 - 4ac - 4de`, widened to avoid overflow.
pub fn discriminant(r: &SingularRelation) -> i128 {
    let [a, b, c, d, e] = r.as_array().map(i128::from);
    b * b - 4 * a * c - 4 * d * e
}

pub fn humbert_nonempty(delta: i128) -> bool {
    delta > 0 && matches!(delta.rem_euclid(4), 0 | 1)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RelationHit {
    pub relation: SingularRelation,
    pub discriminant: i128,
    /// Modulus of the exactly evaluated residual.
    pub residual: f64,
}

/// Exhaustive search over `|a|, ..., |e| <= height`. Each relation is listed
/// once, with its first nonzero entry positive. Sorted by residual, then
/// lexicographically.
pub fn find_relation(
    p: &SiegelPoint,
    height: i64,
    target_delta: Option<i128>,
    tol: f64,
) -> Result<Vec<RelationHit>> {
    if height < 1 {
        return domain("height must be at least 1");
    }
    if !(tol > 0.0) {
        return domain("tolerance must be positive");
    }
    let z = p.to_c64();
    let scale = 1.0 + z.iter().map(|w| w.norm()).fold(0.0, f64::max).powi(2);
    let range = -height..=height;
    let mut hits: Vec<RelationHit> = range
        .clone()
        .into_par_iter()
        .flat_map_iter(|a| {
            let range = range.clone();
            let z = &z;
            quadruples(range).filter_map(move |[b, c, d, e]| {
                let r = [a, b, c, d, e];
                let first = r.iter().copied().find(|&v| v != 0)?;
                if first < 0 {
                    return None;
                }
                let rel = SingularRelation { a, b, c, d, e };
                if let Some(t) = target_delta {
                    if discriminant(&rel) != t {
                        return None;
                    }
                }
                // coarse float screen, then exact confirmation
                if residual_c64(z, r).norm() > tol + 1e-12 * scale * height as f64 {
                    return None;
                }
                let res = relation_residual(p, &rel);
                let residual = Complex64::new(rational_to_f64(&res.re), rational_to_f64(&res.im)).norm();
                (residual < tol).then(|| RelationHit { relation: rel, discriminant: discriminant(&rel), residual })
            })
        })
        .collect();
    hits.sort_by(|x, y| x.residual.total_cmp(&y.residual).then(x.relation.cmp(&y.relation)));
    Ok(hits)
}

fn quadruples(range: std::ops::RangeInclusive<i64>) -> impl Iterator<Item = [i64; 4]> {
    let r = range;
    r.clone().flat_map(move |b| {
        let r = r.clone();
        r.clone().flat_map(move |c| {
            let r = r.clone();
            r.clone().flat_map(move |d| r.clone().map(move |e| [b, c, d, e]))
        })
    })
}

/// The point `[[z1, 1/n], [1/n, z3]]` of the special form.
pub fn special_form(z1: GaussianRational, n: i64, z3: GaussianRational) -> Result<SiegelPoint> {
    if n == 0 {
        return domain("n must be nonzero");
    }
    SiegelPoint::new(z1, Complex::new(Rational::new(1.into(), n.into()), int(0)), z3)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use num_traits::Zero;
    use proptest::prelude::*;

    fn gi(re: Rational, im: Rational) -> GaussianRational {
        Complex::new(re, im)
    }

    #[test]
    fn special_form_relation() {
        for n in 2..=10 {
            let p = special_form(gi(rat(1, 5), int(1)), n, gi(int(-3), int(2))).unwrap();
            let r = SingularRelation::new(0, n, 0, 0, -1).unwrap();
            assert!(relation_residual(&p, &r).is_zero());
            assert_eq!(discriminant(&r), (n * n) as i128);
        }
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(discriminant(&SingularRelation::new(0, 1, 0, 0, 0).unwrap()), 1);
        let r = SingularRelation::new(1, 0, 1, 0, 0).unwrap();
        assert_eq!(discriminant(&r), -4);
        assert!(!humbert_nonempty(-4));
        assert!(SingularRelation::new(0, 0, 0, 0, 0).is_err());
    }

    #[test]
    fn nonempty_rule() {
        assert!(humbert_nonempty(16));
        assert!(!humbert_nonempty(6));
        assert!(humbert_nonempty(1));
        assert!(!humbert_nonempty(0));
        assert!(humbert_nonempty(5));
        assert!(!humbert_nonempty(-3));
    }

    #[test]
    fn search_special_points() {
        let p = special_form(gi(int(0), int(1)), 2, gi(int(0), int(2))).unwrap();
        let hits = find_relation(&p, 5, Some(4), 1e-9).unwrap();
        assert!(hits.iter().any(|h| h.relation.as_array() == [0, 2, 0, 0, -1]));
        let p = special_form(gi(int(0), int(1)), 3, gi(int(0), int(2))).unwrap();
        let hits = find_relation(&p, 5, Some(9), 1e-9).unwrap();
        assert!(hits.iter().any(|h| h.relation.as_array() == [0, 3, 0, 0, -1]));
        assert!(hits.iter().all(|h| h.discriminant == 9 && h.residual == 0.0));
    }

    #[test]
    fn generic_point_has_no_low_height_relation() {
        let z = [
            Complex64::new(0.3183098861837907, 1.2247448713915890),
            Complex64::new(0.1414213562373095, 0.2718281828459045),
            Complex64::new(-0.5772156649015329, 1.6180339887498949),
        ];
        let p = SiegelPoint::from_c64(z).unwrap();
        assert!(find_relation(&p, 10, None, 1e-9).unwrap().is_empty());
    }

    #[test]
    fn gaussian_literals() {
        assert_eq!(parse_gaussian("i").unwrap(), gi(int(0), int(1)));
        assert_eq!(parse_gaussian("-i").unwrap(), gi(int(0), int(-1)));
        assert_eq!(parse_gaussian("1/2").unwrap(), gi(rat(1, 2), int(0)));
        assert_eq!(parse_gaussian("1/3 + 2i").unwrap(), gi(rat(1, 3), int(2)));
        assert_eq!(parse_gaussian("-0.5-1.5i").unwrap(), gi(rat(-1, 2), rat(-3, 2)));
        assert_eq!(parse_gaussian("2/3i").unwrap(), gi(int(0), rat(2, 3)));
        for bad in ["", "i+", "1+2j", "ii", "1//2", "+-i"] {
            assert!(parse_gaussian(bad).is_err(), "{bad}");
        }
        let p = parse_tau("i, 1/2, 2i").unwrap();
        assert_eq!(p.entries()[1], gi(rat(1, 2), int(0)));
        assert!(parse_tau("i,1/2").is_err());
        assert!(parse_tau("-i,0,i").is_err());
    }

    #[test]
    fn point_validation() {
        assert!(SiegelPoint::new(gi(int(0), int(-1)), gi(int(0), int(0)), gi(int(0), int(1))).is_err());
        assert!(SiegelPoint::new(gi(int(0), int(1)), gi(int(0), int(2)), gi(int(0), int(1))).is_err());
        assert!(find_relation(&special_form(gi(int(0), int(1)), 2, gi(int(0), int(1))).unwrap(), 0, None, 1e-9).is_err());
    }

    fn small_gauss() -> impl Strategy<Value = GaussianRational> {
        (-50i64..50, 1i64..20, -50i64..50, 1i64..20).prop_map(|(a, b, c, d)| gi(rat(a, b), rat(c, d)))
    }

    proptest! {
        #[test]
        fn residual_is_linear(
            z1 in small_gauss(), z2 in small_gauss(), z3 in small_gauss(),
            r in prop::array::uniform5(-10i64..10), s in prop::array::uniform5(-10i64..10),
        ) {
            let p = SiegelPoint { z: [z1, z2, z3] };
            let sum: Vec<i64> = r.iter().zip(&s).map(|(x, y)| x + y).collect();
            prop_assume!(r != [0; 5] && s != [0; 5] && sum.iter().any(|&v| v != 0));
            let rr = SingularRelation::new(r[0], r[1], r[2], r[3], r[4]).unwrap();
            let ss = SingularRelation::new(s[0], s[1], s[2], s[3], s[4]).unwrap();
            let tt = SingularRelation::new(sum[0], sum[1], sum[2], sum[3], sum[4]).unwrap();
            prop_assert_eq!(relation_residual(&p, &tt), relation_residual(&p, &rr) + relation_residual(&p, &ss));
            prop_assert_eq!(discriminant(&rr), discriminant(&rr.negate()));
        }

        #[test]
        fn squares_are_nonempty(n in 1i128..100_000) {
            prop_assert!(humbert_nonempty(n * n));
        }
    }
}
