use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::scalar::Scalar;
use crate::error::{domain, Result};

/// Dense univariate polynomial, coefficients in ascending degree.
///
/// The coefficient vector never ends in a zero; the zero polynomial is empty.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Self::new(vec![T::zero(), T::one()])
    }

    /// `x - root`
    pub fn linear(root: T) -> Self {
        Self::new(vec![-root, T::one()])
    }

    pub fn from_i64s(cs: &[i64]) -> Self {
        Self::new(cs.iter().map(|&c| T::from_i64(c)).collect())
    }

    /// Product of `(x - r)` over the given roots.
    pub fn from_roots<'a>(roots: impl IntoIterator<Item = &'a T>) -> Self
    where
        T: 'a,
    {
        roots
            .into_iter()
            .fold(Self::constant(T::one()), |acc, r| &acc * &Self::linear(r.clone()))
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    /// Coefficient of `x^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.clone() * T::from_i64(i as i64))
                .collect(),
        )
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::constant(T::one()), |acc, _| &acc * self)
    }

    /// Divides by the leading coefficient. The zero polynomial stays zero.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(lc) => {
                let inv = T::one() / lc.clone();
                self.scale(&inv)
            }
        }
    }

    /// Euclidean division over the coefficient field.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        let Some(dd) = d.degree() else {
            return domain("division by the zero polynomial");
        };
        let lc = d.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree().filter(|&n| n >= dd) else {
            return Ok((Self::zero(), self.clone()));
        };
        let mut quot = vec![T::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let q = rem[k + dd].clone() / lc.clone();
            if !q.is_zero() {
                for (j, c) in d.coeffs.iter().enumerate() {
                    rem[k + j] = rem[k + j].clone() - q.clone() * c.clone();
                }
            }
            rem[k + dd] = T::zero();
            quot[k] = q;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Pseudo-remainder `lc(d)^(deg p - deg d + 1) * p mod d`, fraction-free.
    pub fn pseudo_rem(&self, d: &Self) -> Result<Self> {
        let Some(dd) = d.degree() else {
            return domain("pseudo-division by the zero polynomial");
        };
        let lc = d.coeffs[dd].clone();
        let mut r = self.clone();
        let Some(pd) = self.degree() else {
            return Ok(r);
        };
        if pd < dd {
            return Ok(r);
        }
        let mut e = pd - dd + 1;
        while let Some(rd) = r.degree().filter(|&rd| rd >= dd) {
            let shift = rd - dd;
            let top = r.coeffs[rd].clone();
            let mut next: Vec<T> = r.coeffs.iter().map(|c| c.clone() * lc.clone()).collect();
            for (j, c) in d.coeffs.iter().enumerate() {
                next[shift + j] = next[shift + j].clone() - top.clone() * c.clone();
            }
            next[rd] = T::zero();
            r = Self::new(next);
            e -= 1;
        }
        Ok(r.scale(&lc.pow(e as u32)))
    }
}

impl<T: Scalar> Add for &Poly<T> {
    type Output = Poly<T>;
    fn add(self, rhs: Self) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<T: Scalar> Sub for &Poly<T> {
    type Output = Poly<T>;
    fn sub(self, rhs: Self) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<T: Scalar> Mul for &Poly<T> {
    type Output = Poly<T>;
    fn mul(self, rhs: Self) -> Poly<T> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }
}

impl<T: Scalar> Neg for &Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<T: Scalar> $tr for Poly<T> {
            type Output = Poly<T>;
            fn $m(self, rhs: Self) -> Poly<T> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Monic greatest common divisor.
pub fn poly_gcd<T: Scalar>(p: &Poly<T>, q: &Poly<T>) -> Result<Poly<T>> {
    if p.is_zero() && q.is_zero() {
        return domain("gcd of two zero polynomials");
    }
    let (mut a, mut b) = (p.clone(), q.clone());
    while !b.is_zero() {
        let (_, r) = a.div_rem(&b)?;
        a = b;
        b = r;
    }
    Ok(a.monic())
}

pub fn poly_eval<T: Scalar>(p: &Poly<T>, x0: &T) -> T {
    p.eval(x0)
}

/// Resultant by the subresultant pseudo-remainder sequence.
pub fn resultant<T: Scalar>(a: &Poly<T>, b: &Poly<T>) -> T {
    let (Some(da), Some(db)) = (a.degree(), b.degree()) else {
        return T::zero();
    };
    let (mut a, mut b) = (a.clone(), b.clone());
    let mut sign_neg = false;
    if da < db {
        std::mem::swap(&mut a, &mut b);
        sign_neg = da % 2 == 1 && db % 2 == 1;
    }
    let mut g = T::one();
    let mut h = T::one();
    loop {
        let da = a.degree().expect("nonzero");
        let db = b.degree().expect("nonzero");
        if db == 0 {
            // h <- h^(1 - da) * lc(b)^da
            let lb = b.coeffs[0].clone();
            let res = if da == 0 {
                h
            } else {
                lb.pow(da as u32) / h.pow(da as u32 - 1)
            };
            return if sign_neg { -res } else { res };
        }
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            sign_neg = !sign_neg;
        }
        let r = a.pseudo_rem(&b).expect("b nonzero");
        if r.is_zero() {
            return T::zero();
        }
        let divisor = g.clone() * h.pow(delta as u32);
        a = b;
        b = r.scale(&(T::one() / divisor));
        g = a.leading().expect("nonzero").clone();
        // h <- h^(1 - delta) * g^delta
        h = if delta == 0 {
            h
        } else {
            g.pow(delta as u32) / h.pow(delta as u32 - 1)
        };
    }
}

/// `(-1)^(d(d-1)/2) Res(p, p') / lc(p)`; zero iff `p` has a repeated root.
pub fn poly_discriminant<T: Scalar>(p: &Poly<T>) -> Result<T> {
    let d = match p.degree() {
        Some(d) if d >= 1 => d,
        _ => return domain("discriminant needs degree at least 1"),
    };
    if d == 1 {
        return Ok(T::one());
    }
    let res = resultant(p, &p.derivative());
    let v = res / p.leading().expect("nonzero").clone();
    Ok(if (d * (d - 1) / 2) % 2 == 1 { -v } else { v })
}

pub fn is_squarefree<T: Scalar>(p: &Poly<T>) -> bool {
    match poly_gcd(p, &p.derivative()) {
        Ok(g) => g.degree() == Some(0),
        Err(_) => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::{int, rat, ComplexScalar, Rational};
    use proptest::prelude::*;

    type QP = Poly<Rational>;

    fn q(cs: &[i64]) -> QP {
        Poly::from_i64s(cs)
    }

    /// Sylvester determinant by fraction-free Gaussian elimination; test-side oracle.
    fn sylvester_resultant(a: &QP, b: &QP) -> Rational {
        let (m, n) = (a.degree().unwrap(), b.degree().unwrap());
        let size = m + n;
        let mut mat = vec![vec![int(0); size]; size];
        for row in 0..n {
            for (j, c) in a.coeffs().iter().rev().enumerate() {
                mat[row][row + j] = c.clone();
            }
        }
        for row in 0..m {
            for (j, c) in b.coeffs().iter().rev().enumerate() {
                mat[n + row][row + j] = c.clone();
            }
        }
        let mut det = int(1);
        for col in 0..size {
            let Some(piv) = (col..size).find(|&r| !Scalar::is_zero(&mat[r][col])) else {
                return int(0);
            };
            if piv != col {
                mat.swap(piv, col);
                det = -det;
            }
            let p = mat[col][col].clone();
            det = det * p.clone();
            for r in col + 1..size {
                let f = mat[r][col].clone() / p.clone();
                for c in col..size {
                    let v = mat[col][c].clone();
                    mat[r][c] = mat[r][c].clone() - f.clone() * v;
                }
            }
        }
        det
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(poly_discriminant(&q(&[-1, 0, 1])).unwrap(), int(4));
        assert_eq!(poly_discriminant(&q(&[1, 2, 1])).unwrap(), int(0));
        // x(x-1)...(x-5), value from an external CAS
        let p = QP::from_roots(&(0..6).map(int).collect::<Vec<_>>());
        assert_eq!(poly_discriminant(&p).unwrap(), int(1194393600));
    }

    #[test]
    fn discriminant_errors() {
        assert!(poly_discriminant(&QP::zero()).is_err());
        assert!(poly_discriminant(&q(&[5])).is_err());
        assert_eq!(poly_discriminant(&q(&[3, 2])).unwrap(), int(1));
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(poly_gcd(&q(&[-1, 0, 1]), &q(&[-1, 1])).unwrap(), q(&[-1, 1]));
        assert_eq!(poly_gcd(&q(&[1, 0, 1]), &q(&[-1, 0, 1])).unwrap(), q(&[1]));
        assert_eq!(poly_gcd(&q(&[0, -1, 0, 1]), &q(&[0, -1, 1])).unwrap(), q(&[0, -1, 1]));
        assert!(poly_gcd(&QP::zero(), &QP::zero()).is_err());
        assert_eq!(poly_gcd(&QP::zero(), &q(&[2, 4])).unwrap(), Poly::new(vec![rat(1, 2), int(1)]));
    }

    #[test]
    fn eval_examples() {
        assert_eq!(q(&[1, 0, 1]).eval(&int(2)), int(5));
        assert_eq!(QP::zero().eval(&rat(7, 3)), int(0));
        assert_eq!(q(&[0, 0, 0, 0, 0, 0, 1]).eval(&rat(1, 2)), rat(1, 64));
    }

    #[test]
    fn div_rem_identity() {
        let a = q(&[3, -1, 4, 1, -5, 9]);
        let b = q(&[2, 0, 7]);
        let (qq, r) = a.div_rem(&b).unwrap();
        assert_eq!(&(&qq * &b) + &r, a);
        assert!(r.degree().unwrap() < 2);
        assert!(a.div_rem(&QP::zero()).is_err());
    }

    #[test]
    fn complex_agrees_with_exact() {
        let p = q(&[3, -1, 4, 1, -5, 9, 2]);
        let exact = poly_discriminant(&p).unwrap();
        let pc: Poly<ComplexScalar> = Poly::new(p.coeffs().iter().map(ComplexScalar::from).collect());
        let approx = poly_discriminant(&pc).unwrap();
        let e = crate::algebra::scalar::rational_to_f64(&exact);
        assert!(((approx.re() - e) / e).abs() < 1e-12, "{approx} vs {e}");
        assert!(approx.im().abs() < 1e-12 * e.abs());
        let ve = p.eval(&rat(1, 2));
        let vr = pc.eval(&ComplexScalar::real(0.5));
        assert!((vr.re() - crate::algebra::scalar::rational_to_f64(&ve)).abs() < 1e-12);
    }

    fn small_poly(max_deg: usize) -> impl Strategy<Value = QP> {
        prop::collection::vec(-6i64..=6, 1..=max_deg + 1).prop_map(|v| q(&v))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(96))]

        #[test]
        fn resultant_matches_sylvester(a in small_poly(6), b in small_poly(6)) {
            prop_assume!(a.degree().unwrap_or(0) >= 1 && b.degree().unwrap_or(0) >= 1);
            prop_assert_eq!(resultant(&a, &b), sylvester_resultant(&a, &b));
        }

        #[test]
        fn gcd_keeps_common_factor(a in small_poly(4), b in small_poly(4), g in small_poly(4)) {
            prop_assume!(!g.is_zero() && !(a.is_zero() && b.is_zero()));
            let d = poly_gcd(&(&a * &g), &(&b * &g)).unwrap();
            let (_, r) = d.div_rem(&g.monic()).unwrap();
            prop_assert!(r.is_zero());
        }

        #[test]
        fn discriminant_zero_iff_common_root_with_derivative(a in small_poly(8)) {
            prop_assume!(a.degree().unwrap_or(0) >= 1);
            let disc = poly_discriminant(&a).unwrap();
            let g = poly_gcd(&a, &a.derivative()).unwrap();
            prop_assert_eq!(Scalar::is_zero(&disc), g.degree().unwrap() >= 1);
        }

        #[test]
        fn squared_factor_kills_discriminant(a in small_poly(3), r in -5i64..5) {
            prop_assume!(!a.is_zero());
            let p = &a * &Poly::from_roots(&[int(r), int(r)]);
            prop_assert!(Scalar::is_zero(&poly_discriminant(&p).unwrap()));
            prop_assert!(!is_squarefree(&p));
        }
    }
}
