//! The one-parameter family of genus-2 curves with a degree-4 elliptic
//! subcover of degenerate ramification `(2, 2, 2, 4)`.
//!
//! For a parameter `b` the curve is `y^2 = q1 q2 q3` with
//!
//! ```text
//! q1 = x^2 + 2/3 (1 - b) x + (1 - b)/3
//! q2 = x^2 + (b - 4)/3 x + (b - 4) b / 12
//! q3 = x^2 - 2/3 (b + 2) x + b
//! ```
//!
//! and the subcover is `v^2 = u (u - 1) (u - lambda)` with
//! `lambda = b^3 (4 - b) / (16 (b - 1))`.

use serde::Serialize;

use crate::algebra::{int, parse_rational, poly_discriminant, poly_gcd, rat, serde_rational, Poly, Rational, Scalar};
use crate::error::{domain, Result};
use crate::igusa::{igusa_invariants, GenusTwoCurve, IgusaVector};

#[derive(Clone, Debug, PartialEq)]
pub struct DegenerateFamilyMember {
    b: Rational,
    curve: GenusTwoCurve,
    lambda: Rational,
}

impl DegenerateFamilyMember {
    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn curve(&self) -> &GenusTwoCurve {
        &self.curve
    }

    /// Legendre parameter of the elliptic subcover.
    pub fn lambda(&self) -> &Rational {
        &self.lambda
    }

    pub fn delta_c(&self) -> Rational {
        delta_c(&self.b)
    }

    pub fn delta_e(&self) -> Rational {
        delta_e(&self.b)
    }
}

/// The three quadratic factors, ascending coefficients.
pub fn quadratics(b: &Rational) -> [Poly<Rational>; 3] {
    let one = int(1);
    let third = rat(1, 3);
    [
        Poly::new(vec![(one.clone() - b) * &third, rat(2, 3) * (one.clone() - b), one.clone()]),
        Poly::new(vec![(b - int(4)) * b / int(12), (b - int(4)) * &third, one.clone()]),
        Poly::new(vec![b.clone(), -rat(2, 3) * (b + int(2)), one]),
    ]
}

pub fn family_sextic(b: &Rational) -> Poly<Rational> {
    let [q1, q2, q3] = quadratics(b);
    &(&q1 * &q2) * &q3
}

/// `b (b - 4) (b - 2) (b - 1) (b + 2)`
pub fn delta_c(b: &Rational) -> Rational {
    DELTA_C_ROOTS.iter().map(|&r| b - int(r)).fold(int(1), |acc, f| acc * f)
}

/// `(b - 4)^2 (b - 2)^6 b^6 (b + 2)^2 / (65536 (b - 1)^4)`, zero at `b = 1`
/// where the printed expression has a pole.
pub fn delta_e(b: &Rational) -> Rational {
    let bm1 = b - int(1);
    if Scalar::is_zero(&bm1) {
        return int(0);
    }
    (b - int(4)).pow(2) * (b - int(2)).pow(6) * b.pow(6) * (b + int(2)).pow(2)
        / (int(65536) * bm1.pow(4))
}

/// Roots of the printed `Delta_C`, in its factor order.
pub const DELTA_C_ROOTS: [i64; 5] = [0, 4, 2, 1, -2];

fn factor_name(r: i64) -> String {
    match r {
        0 => "b".into(),
        r if r < 0 => format!("(b+{})", -r),
        r => format!("(b-{r})"),
    }
}

pub fn build_member(b: &Rational) -> Result<DegenerateFamilyMember> {
    if let Some(&r) = DELTA_C_ROOTS.iter().find(|&&r| *b == int(r)) {
        return domain(format!(
            "b = {b} excluded: Delta_C factor {} vanishes",
            factor_name(r)
        ));
    }
    let lambda = b.pow(3) * (int(4) - b) / (int(16) * (b - int(1)));
    let curve = GenusTwoCurve::new(family_sextic(b))?;
    Ok(DegenerateFamilyMember { b: b.clone(), curve, lambda })
}

/// Left-hand sides of the two relations cutting out the degenerate locus.
pub fn locus_relations(v: &IgusaVector<Rational>) -> [Rational; 2] {
    let c = |s: &str| parse_rational(s).expect("constant");
    let (j2, j4, j6, j10) = (&v.j2, &v.j4, &v.j6, &v.j10);
    let r1 = c("1541086152812576000") * j2.pow(2) * j4.pow(2)
        - c("22835312232360960000") * j2 * j4 * j6
        + c("5009676947631") * j2.pow(6)
        - c("8782271900467200000") * j6.pow(2)
        + c("1176812184652746480") * j2.pow(4) * j4
        + c("12448207102988800000") * j4.pow(3)
        - c("3715799948429529600") * j2.pow(3) * j6;
    let r2 = c("186626560000") * j2.pow(2) * j4.pow(4)
        + c("138962144767343358744576000000") * j10.pow(2)
        + c("282429536481/10000") * j2.pow(10)
        + c("619923800736") * j2.pow(6) * j4.pow(2)
        - c("25600000000") * j4.pow(5)
        - c("28249152375924/100") * j2.pow(8) * j4
        + c("266576269949878792320") * j2.pow(5) * j10
        - c("510202022400") * j2.pow(4) * j4.pow(3)
        + c("693067624145203200000") * j2 * j4.pow(2) * j10
        + c("1763516708182388736000") * j2.pow(3) * j4 * j10;
    [r1, r2]
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LocusReport {
    #[serde(with = "serde_rational")]
    pub b: Rational,
    #[serde(serialize_with = "ser_igusa")]
    pub invariants: IgusaVector<Rational>,
    #[serde(serialize_with = "ser_pair")]
    pub residues: [Rational; 2],
    pub on_locus: bool,
}

fn ser_igusa<S: serde::Serializer>(v: &IgusaVector<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeStruct;
    let mut st = s.serialize_struct("IgusaVector", 4)?;
    st.serialize_field("j2", &v.j2.to_string())?;
    st.serialize_field("j4", &v.j4.to_string())?;
    st.serialize_field("j6", &v.j6.to_string())?;
    st.serialize_field("j10", &v.j10.to_string())?;
    st.end()
}

fn ser_pair<S: serde::Serializer>(v: &[Rational; 2], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(2))?;
    for r in v {
        seq.serialize_element(&r.to_string())?;
    }
    seq.end()
}

pub fn verify_locus(m: &DegenerateFamilyMember) -> LocusReport {
    let invariants = igusa_invariants(&m.curve);
    let residues = locus_relations(&invariants);
    let on_locus = residues.iter().all(Scalar::is_zero);
    LocusReport { b: m.b.clone(), invariants, residues, on_locus }
}

/// Ratio `Delta_E / (lambda^2 (lambda - 1)^2)` expected on the whole family.
pub const SUBCOVER_DISCRIMINANT_CONSTANT: i64 = 1;

pub fn verify_subcover_discriminant(m: &DegenerateFamilyMember) -> bool {
    let l = &m.lambda;
    let legendre = l.pow(2) * (l - int(1)).pow(2);
    let printed = m.delta_e();
    !Scalar::is_zero(&printed) && printed == legendre * int(SUBCOVER_DISCRIMINANT_CONSTANT)
}

/// Discriminant of the family sextic as a polynomial in `b`, recovered by
/// exact interpolation (coefficients of `f` have degree at most 4 in `b`, so
/// the discriminant has degree at most 40) and checked at extra points.
pub fn discriminant_in_b() -> Poly<Rational> {
    const BOUND: i64 = 40;
    let nodes: Vec<Rational> = (0..=BOUND).map(|k| int(k - 20) + rat(1, 7)).collect();
    let values: Vec<Rational> = nodes
        .iter()
        .map(|b| poly_discriminant(&family_sextic(b)).expect("sextic"))
        .collect();
    let p = interpolate(&nodes, &values);
    for k in 0..5 {
        let b = rat(3 * k + 1, 11);
        assert_eq!(
            p.eval(&b),
            poly_discriminant(&family_sextic(&b)).expect("sextic"),
            "degree bound violated"
        );
    }
    p
}

fn interpolate(xs: &[Rational], ys: &[Rational]) -> Poly<Rational> {
    let n = xs.len();
    let mut dd = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            dd[i] = (dd[i].clone() - dd[i - 1].clone()) / (xs[i].clone() - xs[i - j].clone());
        }
    }
    let mut p = Poly::constant(dd[n - 1].clone());
    for i in (0..n - 1).rev() {
        p = &(&p * &Poly::linear(xs[i].clone())) + &Poly::constant(dd[i].clone());
    }
    p
}

/// Whether the discriminant of the family vanishes exactly on the roots of
/// the printed `Delta_C`: the squarefree part of the former equals the monic
/// `Delta_C`.
pub fn discriminant_root_locus_matches() -> bool {
    let d = discriminant_in_b();
    if d.is_zero() {
        return false;
    }
    let g = poly_gcd(&d, &d.derivative()).expect("nonzero");
    let (radical, _) = d.div_rem(&g).expect("nonzero gcd");
    let printed = Poly::from_roots(DELTA_C_ROOTS.map(int).iter());
    radical.monic() == printed
}
