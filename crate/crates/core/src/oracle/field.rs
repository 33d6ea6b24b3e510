//! Exact arithmetic in ℚ and in quadratic extensions ℚ(√d).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Writes a nonzero rational as r²·d with d a square-free-ish integer
/// (all small square factors removed). `d == 1` means r is its square root.
pub fn split_square(x: &Q) -> (Q, BigInt) {
    assert!(!x.is_zero(), "square root of zero handled by caller");
    // x = num/den = num·den / den²
    let mut d = x.numer() * x.denom();
    let mut r = Q::new(BigInt::one(), x.denom().clone());
    let root = d.abs().sqrt();
    if &root * &root == d.abs() {
        let sign = if d.is_negative() { -BigInt::one() } else { BigInt::one() };
        return (r * Q::from_integer(root), sign);
    }
    let mut p = BigInt::from(2);
    let limit = BigInt::from(1000);
    while p <= limit {
        let p2 = &p * &p;
        while (&d % &p2).is_zero() {
            d /= &p2;
            r *= Q::from_integer(p.clone());
        }
        p += 1;
    }
    (r, d)
}

/// a + b·√d, with `d` not a perfect square whenever `b ≠ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticNumber {
    pub a: Q,
    pub b: Q,
    pub d: BigInt,
}

impl QuadraticNumber {
    pub fn rational(a: Q) -> Self {
        QuadraticNumber {
            a,
            b: Q::zero(),
            d: BigInt::one(),
        }
    }

    pub fn new(a: Q, b: Q, d: BigInt) -> Self {
        if b.is_zero() {
            return Self::rational(a);
        }
        let root = d.abs().sqrt();
        assert!(
            d.is_negative() || &root * &root != d,
            "√{d} is rational; use a rational value"
        );
        QuadraticNumber { a, b, d }
    }

    pub fn zero() -> Self {
        Self::rational(Q::zero())
    }

    pub fn one() -> Self {
        Self::rational(Q::one())
    }

    /// √x for rational x, in the smallest field containing it.
    pub fn sqrt_of(x: &Q) -> Self {
        if x.is_zero() {
            return Self::zero();
        }
        let (r, d) = split_square(x);
        if d.is_one() {
            Self::rational(r)
        } else {
            Self::new(Q::zero(), r, d)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<Q> {
        self.is_rational().then(|| self.a.clone())
    }

    fn common_d(&self, other: &Self) -> BigInt {
        match (self.b.is_zero(), other.b.is_zero()) {
            (true, _) => other.d.clone(),
            (_, true) => self.d.clone(),
            _ => {
                assert_eq!(self.d, other.d, "values from different quadratic fields");
                self.d.clone()
            }
        }
    }

    pub fn conjugate(&self) -> Self {
        QuadraticNumber {
            a: self.a.clone(),
            b: -&self.b,
            d: self.d.clone(),
        }
    }

    /// a² − b²d.
    pub fn norm(&self) -> Q {
        &self.a * &self.a - &self.b * &self.b * Q::from_integer(self.d.clone())
    }

    pub fn inverse(&self) -> Option<Self> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        let c = self.conjugate();
        Some(QuadraticNumber::new(&c.a / &n, &c.b / &n, c.d))
    }

    pub fn scale(&self, k: &Q) -> Self {
        QuadraticNumber::new(&self.a * k, &self.b * k, self.d.clone())
    }
}

impl Add for &QuadraticNumber {
    type Output = QuadraticNumber;
    fn add(self, rhs: &QuadraticNumber) -> QuadraticNumber {
        let d = self.common_d(rhs);
        QuadraticNumber::new(&self.a + &rhs.a, &self.b + &rhs.b, d)
    }
}

impl Sub for &QuadraticNumber {
    type Output = QuadraticNumber;
    fn sub(self, rhs: &QuadraticNumber) -> QuadraticNumber {
        let d = self.common_d(rhs);
        QuadraticNumber::new(&self.a - &rhs.a, &self.b - &rhs.b, d)
    }
}

impl Mul for &QuadraticNumber {
    type Output = QuadraticNumber;
    fn mul(self, rhs: &QuadraticNumber) -> QuadraticNumber {
        let d = self.common_d(rhs);
        let dq = Q::from_integer(d.clone());
        QuadraticNumber::new(
            &self.a * &rhs.a + &self.b * &rhs.b * dq,
            &self.a * &rhs.b + &self.b * &rhs.a,
            d,
        )
    }
}

impl Neg for &QuadraticNumber {
    type Output = QuadraticNumber;
    fn neg(self) -> QuadraticNumber {
        QuadraticNumber::new(-&self.a, -&self.b, self.d.clone())
    }
}

impl fmt::Display for QuadraticNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let root = format!("sqrt({})", self.d);
        let b_abs = self.b.abs();
        let b_part = if b_abs.is_one() {
            root
        } else {
            format!("{b_abs}*{root}")
        };
        match (self.a.is_zero(), self.b.is_negative()) {
            (true, false) => write!(f, "{b_part}"),
            (true, true) => write!(f, "-{b_part}"),
            (false, false) => write!(f, "{} + {b_part}", self.a),
            (false, true) => write!(f, "{} - {b_part}", self.a),
        }
    }
}

/// Basis of the right nullspace of a rational matrix, from reduced row echelon form.
pub fn nullspace(rows: &[Vec<Q>], ncols: usize) -> Vec<Vec<Q>> {
    let mut m: Vec<Vec<Q>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][col].recip();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                let pr = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(pr) {
                    *x = &*x - &f * y;
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Q::zero(); ncols];
            v[free] = Q::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -&m[row][free];
            }
            v
        })
        .collect()
}

/// Scales a nonzero rational vector to coprime integers with a positive
/// first nonzero entry.
pub fn canonical_integral(v: &[Q]) -> Vec<Q> {
    use num_integer::Integer;
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Q::from_integer(lcm.clone())).to_integer()).collect();
    let mut g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return v.to_vec();
    }
    if ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        g = -g;
    }
    ints.into_iter().map(|x| Q::from_integer(x / &g)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_splitting() {
        assert_eq!(split_square(&q(12)), (q(2), BigInt::from(3)));
        assert_eq!(split_square(&Q::new(9.into(), 4.into())), (Q::new(3.into(), 2.into()), BigInt::one()));
        assert_eq!(split_square(&q(-4)), (q(2), BigInt::from(-1)));
    }

    #[test]
    fn field_arithmetic() {
        let r2 = QuadraticNumber::sqrt_of(&q(2));
        assert_eq!(&r2 * &r2, QuadraticNumber::rational(q(2)));
        let x = &QuadraticNumber::one() + &r2;
        assert_eq!(&x * &x.inverse().unwrap(), QuadraticNumber::one());
        assert_eq!(x.to_string(), "1 + sqrt(2)");
        assert_eq!(QuadraticNumber::sqrt_of(&q(9)), QuadraticNumber::rational(q(3)));
    }

    #[test]
    fn nullspace_of_rank_one() {
        let ns = nullspace(&[vec![q(1), q(2), q(3)]], 3);
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert!((&v[0] + q(2) * &v[1] + q(3) * &v[2]).is_zero());
        }
    }

    #[test]
    fn canonical_scaling() {
        let v = canonical_integral(&[q(0), Q::new((-1).into(), 2.into()), q(3)]);
        assert_eq!(v, vec![q(0), q(1), q(-6)]);
    }
}
