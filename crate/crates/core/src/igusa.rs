//! Invariants of binary sextics.
//!
//! `J2, J4, J6, J10` are the Igusa–Clebsch invariants: in terms of the roots
//! `r1..r6` of a sextic with leading coefficient `a`,
//!
//! ```text
//! J2  = a^2  * sum_15 (12)^2 (34)^2 (56)^2
//! J4  = a^4  * sum_10 (12)^2 (23)^2 (31)^2 (45)^2 (56)^2 (64)^2
//! J6  = a^6  * sum_60 (12)^2 (23)^2 (31)^2 (45)^2 (56)^2 (64)^2 (14)^2 (25)^2 (36)^2
//! J10 = a^10 * prod_{i<j} (ij)^2
//! ```
//!
//! with `(ij) = ri - rj`. No further rescaling is applied; with this
//! normalization the degree-4 degenerate locus relations in [`crate::family4`]
//! vanish identically, so `J10` is exactly the discriminant of the sextic.
//!
//! The invariants are evaluated exactly from the coefficients through
//! Clebsch's transvectant construction.

use serde::Serialize;

use crate::algebra::{poly_discriminant, Poly, Rational, Scalar};
use crate::error::{domain, Result};

/// Binary form of degree `coeffs.len() - 1`; `coeffs[i]` multiplies `X^i Z^(deg-i)`.
#[derive(Clone, Debug, PartialEq)]
struct BinaryForm<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> BinaryForm<T> {
    fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    fn d_x(&self) -> Self {
        let m = self.degree();
        Self {
            coeffs: (1..=m)
                .map(|i| self.coeffs[i].clone() * T::from_i64(i as i64))
                .collect(),
        }
    }

    fn d_z(&self) -> Self {
        let m = self.degree();
        Self {
            coeffs: (0..m)
                .map(|i| self.coeffs[i].clone() * T::from_i64((m - i) as i64))
                .collect(),
        }
    }

    fn mul(&self, other: &Self) -> Self {
        let mut out = vec![T::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self { coeffs: out }
    }

    fn scale(&self, c: &T) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|a| a.clone() * c.clone()).collect(),
        }
    }

    fn add(&self, other: &Self) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    /// `d^k / dX^(k-j) dZ^j`
    fn partial(&self, k: usize, j: usize) -> Self {
        let mut f = self.clone();
        for _ in 0..k - j {
            f = f.d_x();
        }
        for _ in 0..j {
            f = f.d_z();
        }
        f
    }

    /// The value of a degree-0 form.
    fn value(&self) -> T {
        debug_assert_eq!(self.coeffs.len(), 1);
        self.coeffs[0].clone()
    }
}

fn factorial(n: usize) -> i64 {
    (1..=n as i64).product()
}

fn binomial(n: usize, k: usize) -> i64 {
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// k-th transvectant `(f, g)_k`.
fn transvectant<T: Scalar>(f: &BinaryForm<T>, g: &BinaryForm<T>, k: usize) -> BinaryForm<T> {
    let (m, n) = (f.degree(), g.degree());
    assert!(k <= m && k <= n, "transvectant order exceeds degree");
    let mut acc = BinaryForm {
        coeffs: vec![T::zero(); m + n - 2 * k + 1],
    };
    for j in 0..=k {
        let term = f.partial(k, j).mul(&g.partial(k, k - j));
        let c = binomial(k, j) * if j % 2 == 0 { 1 } else { -1 };
        acc = acc.add(&term.scale(&T::from_i64(c)));
    }
    let num = T::from_i64(factorial(m - k) * factorial(n - k));
    let den = T::from_i64(factorial(m) * factorial(n));
    acc.scale(&(num / den))
}

/// The weight (2, 4, 6, 10) invariants of a sextic.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IgusaVector<T> {
    pub j2: T,
    pub j4: T,
    pub j6: T,
    pub j10: T,
}

impl<T: Scalar> IgusaVector<T> {
    /// Weighted rescaling `(l^2 J2, l^4 J4, l^6 J6, l^10 J10)`.
    pub fn weighted_scale(&self, l: &T) -> Self {
        Self {
            j2: self.j2.clone() * l.pow(2),
            j4: self.j4.clone() * l.pow(4),
            j6: self.j6.clone() * l.pow(6),
            j10: self.j10.clone() * l.pow(10),
        }
    }
}

/// Invariants of the sextic form whose dehomogenization has coefficients
/// `coeffs` (ascending, length at most 7; missing top coefficients are zero,
/// which places roots at infinity).
pub fn sextic_invariants<T: Scalar>(coeffs: &[T]) -> IgusaVector<T> {
    assert!(coeffs.len() <= 7, "not a sextic");
    let mut c = coeffs.to_vec();
    c.resize(7, T::zero());
    let f = BinaryForm { coeffs: c };
    let i = transvectant(&f, &f, 4);
    let delta = transvectant(&i, &i, 2);
    let y1 = transvectant(&f, &i, 4);
    let y2 = transvectant(&i, &y1, 2);
    let y3 = transvectant(&i, &y2, 2);
    let a = transvectant(&f, &f, 6).value();
    let b = transvectant(&i, &i, 4).value();
    let c = transvectant(&i, &delta, 4).value();
    let d = transvectant(&y3, &y1, 2).value();

    let k = |v: i64| T::from_i64(v);
    let j2 = k(-120) * a.clone();
    let j4 = k(-720) * a.pow(2) + k(6750) * b.clone();
    let j6 = k(8640) * a.pow(3) - k(108000) * a.clone() * b.clone() + k(202500) * c.clone();
    let j10 = k(-62208) * a.pow(5) + k(972000) * a.pow(3) * b.clone()
        + k(1620000) * a.pow(2) * c.clone()
        - k(3037500) * a.clone() * b.pow(2)
        - k(6075000) * b * c
        - k(4556250) * d;
    IgusaVector { j2, j4, j6, j10 }
}

/// Genus-2 curve `y^2 = f(x)` with `deg f` in {5, 6} and `f` squarefree.
#[derive(Clone, Debug, PartialEq)]
pub struct GenusTwoCurve {
    f: Poly<Rational>,
}

impl GenusTwoCurve {
    pub fn new(f: Poly<Rational>) -> Result<Self> {
        match f.degree() {
            Some(5) | Some(6) => {}
            d => return domain(format!("genus-2 model needs degree 5 or 6, got {d:?}")),
        }
        if Scalar::is_zero(&homogenized_discriminant(&f)?) {
            return domain("singular sextic: repeated root");
        }
        Ok(Self { f })
    }

    pub fn f(&self) -> &Poly<Rational> {
        &self.f
    }

    /// `x^6 f((a x + b) / (c x + d))`-style substitution
    /// `(c x + d)^6 f((a x + b)/(c x + d))`; `ad - bc` must be nonzero.
    pub fn transform(&self, a: &Rational, b: &Rational, c: &Rational, d: &Rational) -> Result<Self> {
        let det = a.clone() * d.clone() - b.clone() * c.clone();
        if Scalar::is_zero(&det) {
            return domain("singular substitution");
        }
        Self::new(mobius_sextic(self.f.coeffs(), a, b, c, d))
    }
}

pub(crate) fn mobius_sextic<T: Scalar>(f: &[T], a: &T, b: &T, c: &T, d: &T) -> Poly<T> {
    let num = Poly::new(vec![b.clone(), a.clone()]);
    let den = Poly::new(vec![d.clone(), c.clone()]);
    let mut acc = Poly::zero();
    for (i, fi) in f.iter().enumerate() {
        let term = &num.pow(i as u32) * &den.pow(6 - i as u32);
        acc = &acc + &term.scale(fi);
    }
    acc
}

/// Discriminant of the degree-6 binary form: `disc(f)` for a sextic,
/// `lc(f)^2 disc(f)` for a quintic (simple root at infinity).
pub fn homogenized_discriminant<T: Scalar>(f: &Poly<T>) -> Result<T> {
    match f.degree() {
        Some(6) => poly_discriminant(f),
        Some(5) => Ok(f.leading().expect("deg 5").pow(2) * poly_discriminant(f)?),
        _ => domain("not a quintic or sextic"),
    }
}

pub fn igusa_invariants(c: &GenusTwoCurve) -> IgusaVector<Rational> {
    sextic_invariants(c.f.coeffs())
}

/// Weight-zero ratios of an [`IgusaVector`], tagged by the chart used.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum AbsoluteInvariants<T> {
    /// `J2 != 0`: `(J2^5/J10, J2^3 J4/J10, J2^2 J6/J10)`
    J2Chart([T; 3]),
    /// `J2 = 0`: `(J4 J6/J10, J4^5/J10^2, J6^5/J10^3)`
    J10Chart([T; 3]),
}

impl<T> AbsoluteInvariants<T> {
    pub fn values(&self) -> &[T; 3] {
        match self {
            Self::J2Chart(v) | Self::J10Chart(v) => v,
        }
    }
}

pub fn absolute_invariants<T: Scalar>(v: &IgusaVector<T>) -> Result<AbsoluteInvariants<T>> {
    if v.j10.is_zero() {
        return domain("J10 = 0: singular sextic");
    }
    let j10 = v.j10.clone();
    Ok(if !v.j2.is_zero() {
        AbsoluteInvariants::J2Chart([
            v.j2.pow(5) / j10.clone(),
            v.j2.pow(3) * v.j4.clone() / j10.clone(),
            v.j2.pow(2) * v.j6.clone() / j10,
        ])
    } else {
        AbsoluteInvariants::J10Chart([
            v.j4.clone() * v.j6.clone() / j10.clone(),
            v.j4.pow(5) / j10.pow(2),
            v.j6.pow(5) / j10.pow(3),
        ])
    })
}
