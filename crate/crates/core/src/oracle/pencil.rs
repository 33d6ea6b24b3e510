//! Tangent lines in a pencil: lines of a plane through a fixed vertex that
//! are tangent to the plane section of a surface.
//!
//! The pencil is parameterized by λ as the lines through V and A + λB. On
//! each line the surface restricts to a polynomial g(s) = f(V + s(A + λB))
//! with coefficients in ℚ[λ], and the tangent lines are the zeros of its
//! discriminant in λ.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use rand::Rng;

use super::field::{nullspace, q, Q};
use super::lines::ProjectivePoint;
use super::OracleError;

/// Dense univariate polynomial over ℚ, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct UniPoly(Vec<Q>);

impl UniPoly {
    pub fn new(mut c: Vec<Q>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        UniPoly(c)
    }

    pub fn zero() -> Self {
        UniPoly(Vec::new())
    }

    pub fn constant(c: Q) -> Self {
        Self::new(vec![c])
    }

    /// a + bλ
    pub fn linear(a: Q, b: Q) -> Self {
        Self::new(vec![a, b])
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.0
    }

    pub fn leading(&self) -> Q {
        self.0.last().cloned().unwrap_or_else(Q::zero)
    }

    pub fn scale(&self, k: &Q) -> Self {
        Self::new(self.0.iter().map(|c| c * k).collect())
    }

    pub fn eval(&self, x: &Q) -> Q {
        self.0.iter().rev().fold(Q::zero(), |acc, c| acc * x + c)
    }

    /// Quotient by `d`, which must divide exactly.
    pub fn div_exact(&self, d: &UniPoly) -> UniPoly {
        let dd = d.degree().expect("division by zero polynomial");
        let mut rem = self.0.clone();
        if rem.len() <= dd {
            assert!(self.is_zero(), "inexact polynomial division");
            return UniPoly::zero();
        }
        let mut quot = vec![Q::zero(); rem.len() - dd];
        let lead = d.leading();
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] / &lead;
            for (j, dc) in d.0.iter().enumerate() {
                rem[i + j] = &rem[i + j] - &c * dc;
            }
            quot[i] = c;
        }
        assert!(rem.iter().all(Zero::is_zero), "inexact polynomial division");
        UniPoly::new(quot)
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.0.len().max(rhs.0.len());
        UniPoly::new(
            (0..n)
                .map(|i| {
                    let a = self.0.get(i).cloned().unwrap_or_else(Q::zero);
                    let b = rhs.0.get(i).cloned().unwrap_or_else(Q::zero);
                    a + b
                })
                .collect(),
        )
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly(self.0.iter().map(|c| -c).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        self + &(-rhs)
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Q::zero(); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in rhs.0.iter().enumerate() {
                out[i + j] = &out[i + j] + a * b;
            }
        }
        UniPoly::new(out)
    }
}

/// Determinant by fraction-free (Bareiss) elimination over ℚ[λ].
pub fn determinant(mut m: Vec<Vec<UniPoly>>) -> UniPoly {
    let n = m.len();
    if n == 0 {
        return UniPoly::constant(Q::one());
    }
    let mut negate = false;
    let mut prev = UniPoly::constant(Q::one());
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return UniPoly::zero();
            };
            m.swap(k, p);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.div_exact(&prev);
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -&det
    } else {
        det
    }
}

/// Discriminant of Σ cₖsᵏ (formal degree n = c.len() − 1, cₙ ≠ 0 as a polynomial):
/// (−1)^{n(n−1)/2}·Res(g, g′)/cₙ.
pub fn discriminant(c: &[UniPoly]) -> UniPoly {
    let n = c.len() - 1;
    assert!(n >= 1, "discriminant needs degree at least one");
    assert!(!c[n].is_zero(), "formal leading coefficient vanishes identically");
    let size = 2 * n - 1;
    let g: Vec<UniPoly> = c.iter().rev().cloned().collect();
    let dg: Vec<UniPoly> = (1..=n)
        .rev()
        .map(|k| c[k].scale(&q(k as i64)))
        .collect();
    let mut rows = Vec::with_capacity(size);
    for i in 0..n - 1 {
        let mut row = vec![UniPoly::zero(); size];
        for (j, x) in g.iter().enumerate() {
            row[i + j] = x.clone();
        }
        rows.push(row);
    }
    for i in 0..n {
        let mut row = vec![UniPoly::zero(); size];
        for (j, x) in dg.iter().enumerate() {
            row[i + j] = x.clone();
        }
        rows.push(row);
    }
    let res = determinant(rows).div_exact(&c[n]);
    if (n * (n - 1) / 2) % 2 == 1 {
        -&res
    } else {
        res
    }
}

/// A nonzero homogeneous form of degree n in x₀..x₃.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceForm {
    degree: u32,
    terms: BTreeMap<[u32; 4], Q>,
}

impl SurfaceForm {
    pub fn new(terms: impl IntoIterator<Item = ([u32; 4], Q)>) -> Result<Self, OracleError> {
        let mut map: BTreeMap<[u32; 4], Q> = BTreeMap::new();
        for (e, c) in terms {
            let entry = map.entry(e).or_insert_with(Q::zero);
            *entry = &*entry + c;
        }
        map.retain(|_, c| !c.is_zero());
        let mut degrees = map.keys().map(|e| e.iter().sum::<u32>());
        let Some(degree) = degrees.next() else {
            return Err(OracleError::ZeroSurface);
        };
        if degrees.any(|d| d != degree) {
            return Err(OracleError::NotHomogeneous);
        }
        Ok(SurfaceForm { degree, terms: map })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<[u32; 4], Q> {
        &self.terms
    }

    pub fn eval(&self, x: &[Q; 4]) -> Q {
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut v = c.clone();
                for (xi, ei) in x.iter().zip(e) {
                    for _ in 0..*ei {
                        v = &v * xi;
                    }
                }
                v
            })
            .fold(Q::zero(), |a, b| a + b)
    }

    /// Uniform random integer coefficients in [−bound, bound] on every monomial.
    pub fn random<R: Rng>(degree: u32, bound: i64, rng: &mut R) -> Self {
        loop {
            let mut terms = Vec::new();
            for a in 0..=degree {
                for b in 0..=degree - a {
                    for c in 0..=degree - a - b {
                        let e = [a, b, c, degree - a - b - c];
                        terms.push((e, q(rng.gen_range(-bound..=bound))));
                    }
                }
            }
            if let Ok(f) = SurfaceForm::new(terms) {
                return f;
            }
        }
    }

    /// Coefficients in s of f(V + s·(A + λB)), each a polynomial in λ.
    pub fn restrict_to_pencil(&self, v: &[Q; 4], a: &[Q; 4], b: &[Q; 4]) -> Vec<UniPoly> {
        // coordinate i as a polynomial in s with ℚ[λ] coefficients
        let coord: Vec<Vec<UniPoly>> = (0..4)
            .map(|i| {
                vec![
                    UniPoly::constant(v[i].clone()),
                    UniPoly::linear(a[i].clone(), b[i].clone()),
                ]
            })
            .collect();
        let n = self.degree as usize;
        let mut out = vec![UniPoly::zero(); n + 1];
        for (e, c) in &self.terms {
            let mut prod = vec![UniPoly::constant(c.clone())];
            for (i, ei) in e.iter().enumerate() {
                for _ in 0..*ei {
                    prod = mul_s(&prod, &coord[i]);
                }
            }
            for (k, p) in prod.into_iter().enumerate() {
                out[k] = &out[k] + &p;
            }
        }
        out
    }
}

fn mul_s(x: &[UniPoly], y: &[UniPoly]) -> Vec<UniPoly> {
    let mut out = vec![UniPoly::zero(); x.len() + y.len() - 1];
    for (i, a) in x.iter().enumerate() {
        for (j, b) in y.iter().enumerate() {
            out[i + j] = &out[i + j] + &(a * b);
        }
    }
    out
}

/// Result of a pencil computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PencilCount {
    pub count: usize,
    pub discriminant: UniPoly,
    /// Spanning points of the pencil actually used.
    pub a: [Q; 4],
    pub b: [Q; 4],
}

fn dot(x: &[Q; 4], y: &[Q; 4]) -> Q {
    x.iter().zip(y).map(|(a, b)| a * b).fold(Q::zero(), |a, b| a + b)
}

fn combo(w: &[Vec<Q>], k: [i64; 3]) -> [Q; 4] {
    std::array::from_fn(|i| (0..3).map(|j| &w[j][i] * q(k[j])).fold(Q::zero(), |a, b| a + b))
}

/// Number of lines in the plane `plane · x = 0` through `vertex` that are
/// tangent to the section of `f`, counted with multiplicity.
pub fn pencil_tangency_count(
    f: &SurfaceForm,
    plane: &[Q; 4],
    vertex: &ProjectivePoint,
) -> Result<PencilCount, OracleError> {
    let v = vertex.coords();
    if plane.iter().all(Zero::is_zero) {
        return Err(OracleError::ZeroVector);
    }
    if !dot(plane, v).is_zero() {
        return Err(OracleError::VertexNotInPlane);
    }
    let w = nullspace(&[plane.to_vec()], 4);
    let chart = |i: usize| -> [Q; 4] { w[i].clone().try_into().expect("four coordinates") };
    // the affine chart w₀ + s(w₁ + λw₂) is dense in the plane
    if f.restrict_to_pencil(&chart(0), &chart(1), &chart(2)).iter().all(UniPoly::is_zero) {
        return Err(OracleError::SectionVanishes);
    }
    if f.eval(v).is_zero() {
        return Err(OracleError::VertexOnCurve);
    }
    let n = f.degree() as usize;
    let candidates: Vec<[i64; 3]> = {
        let mut c = Vec::new();
        for x in -2..=2i64 {
            for y in -2..=2i64 {
                for z in -2..=2i64 {
                    if (x, y, z) != (0, 0, 0) {
                        c.push([x, y, z]);
                    }
                }
            }
        }
        c
    };
    let mut section_seen = false;
    for ka in &candidates {
        for kb in &candidates {
            let a = combo(&w, *ka);
            let b = combo(&w, *kb);
            let span = nullspace(&[v.to_vec(), a.to_vec(), b.to_vec()], 4);
            if span.len() != 1 {
                continue;
            }
            let coeffs = f.restrict_to_pencil(v, &a, &b);
            section_seen = true;
            if n == 0 {
                return Err(OracleError::ZeroSurface);
            }
            // both ends of the parameterization off the curve
            if f.eval(&a).is_zero() || f.eval(&b).is_zero() {
                continue;
            }
            // the line through V and B (λ = ∞) must not be tangent
            let at_infinity: Vec<UniPoly> = f
                .restrict_to_pencil(v, &b, &[Q::zero(), Q::zero(), Q::zero(), Q::zero()])
                .iter()
                .map(|c| UniPoly::constant(c.eval(&Q::zero())))
                .collect();
            if discriminant(&at_infinity).is_zero() {
                continue;
            }
            let d = discriminant(&coeffs);
            if d.is_zero() {
                return Err(OracleError::DegenerateSection);
            }
            return Ok(PencilCount {
                count: d.degree().unwrap_or(0),
                discriminant: d,
                a,
                b,
            });
        }
    }
    if section_seen {
        Err(OracleError::NoGoodParameterization)
    } else {
        Err(OracleError::DegeneratePlane)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn up(c: &[i64]) -> UniPoly {
        UniPoly::new(c.iter().map(|&x| q(x)).collect())
    }

    #[test]
    fn quadratic_discriminant() {
        // s² + λs + 1 → λ² − 4
        let d = discriminant(&[up(&[1]), up(&[0, 1]), up(&[1])]);
        assert_eq!(d, up(&[-4, 0, 1]));
    }

    #[test]
    fn cubic_discriminant() {
        // s³ + λs + 1 → −4λ³ − 27
        let d = discriminant(&[up(&[1]), up(&[0, 1]), up(&[0]), up(&[1])]);
        assert_eq!(d, up(&[-27, 0, 0, -4]));
    }

    #[test]
    fn bareiss_matches_cofactor_expansion() {
        let m = vec![
            vec![up(&[1, 1]), up(&[2]), up(&[0, 0, 1])],
            vec![up(&[0]), up(&[3, -1]), up(&[1])],
            vec![up(&[1]), up(&[0]), up(&[2, 1])],
        ];
        let a = |i: usize, j: usize| m[i][j].clone();
        let cof = &(&(&a(0, 0) * &(&(&a(1, 1) * &a(2, 2)) - &(&a(1, 2) * &a(2, 1))))
            - &(&a(0, 1) * &(&(&a(1, 0) * &a(2, 2)) - &(&a(1, 2) * &a(2, 0)))))
            + &(&a(0, 2) * &(&(&a(1, 0) * &a(2, 1)) - &(&a(1, 1) * &a(2, 0))));
        assert_eq!(determinant(m), cof);
    }

    #[test]
    fn sphere_pencil() {
        // x² + y² + z² − w²
        let f = SurfaceForm::new([
            ([2, 0, 0, 0], q(1)),
            ([0, 2, 0, 0], q(1)),
            ([0, 0, 2, 0], q(1)),
            ([0, 0, 0, 2], q(-1)),
        ])
        .unwrap();
        let plane = [q(1), q(2), q(-1), q(3)];
        let v = ProjectivePoint::from_i64([1, 0, 1, 0]);
        assert_eq!(pencil_tangency_count(&f, &plane, &v).unwrap().count, 2);
    }

    #[test]
    fn plane_has_no_tangents() {
        let f = SurfaceForm::new([([1, 0, 0, 0], q(1)), ([0, 0, 0, 1], q(2))]).unwrap();
        let plane = [q(0), q(0), q(1), q(0)];
        let v = ProjectivePoint::from_i64([1, 0, 0, 1]);
        assert_eq!(pencil_tangency_count(&f, &plane, &v).unwrap().count, 0);
    }

    #[test]
    fn error_cases() {
        let f = SurfaceForm::new([([1, 1, 0, 0], q(1))]).unwrap();
        let plane = [q(1), q(0), q(0), q(0)];
        // x·y vanishes on x = 0
        let v = ProjectivePoint::from_i64([0, 1, 0, 0]);
        assert_eq!(pencil_tangency_count(&f, &plane, &v), Err(OracleError::SectionVanishes));
        let v = ProjectivePoint::from_i64([1, 0, 0, 0]);
        assert_eq!(pencil_tangency_count(&f, &plane, &v), Err(OracleError::VertexNotInPlane));
        let g = SurfaceForm::new([([2, 0, 0, 0], q(1)), ([0, 1, 1, 0], q(1))]).unwrap();
        let v = ProjectivePoint::from_i64([0, 0, 0, 1]);
        assert_eq!(pencil_tangency_count(&g, &plane, &v), Err(OracleError::VertexOnCurve));
        assert!(SurfaceForm::new([([1, 0, 0, 0], q(1)), ([2, 0, 0, 0], q(1))]).is_err());
    }
}
