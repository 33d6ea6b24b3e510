//! Points and lines of ℙ³ in Plücker coordinates, and the four-lines problem.

use std::fmt;

use num_traits::{One, Zero};
use serde_json::{json, Value};

use super::field::{canonical_integral, nullspace, q, QuadraticNumber, Q};
use super::OracleError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectivePoint([Q; 4]);

impl ProjectivePoint {
    pub fn new(coords: [Q; 4]) -> Result<Self, OracleError> {
        if coords.iter().all(Zero::is_zero) {
            return Err(OracleError::ZeroVector);
        }
        let c = canonical_integral(&coords);
        Ok(ProjectivePoint(c.try_into().expect("four coordinates")))
    }

    pub fn from_i64(c: [i64; 4]) -> Self {
        Self::new(c.map(q)).expect("nonzero point")
    }

    pub fn coords(&self) -> &[Q; 4] {
        &self.0
    }
}

/// Coordinate pairs in storage order (p01, p02, p03, p23, p31, p12).
const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (2, 3), (3, 1), (1, 2)];

/// A line of ℙ³ as a point of the Plücker quadric, scaled to coprime integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlueckerLine([Q; 6]);

pub fn plucker_quadric<T>(p: &[T; 6]) -> T
where
    for<'a> &'a T: std::ops::Mul<&'a T, Output = T> + std::ops::Add<&'a T, Output = T>,
{
    let a = &p[0] * &p[3];
    let b = &p[1] * &p[4];
    let c = &p[2] * &p[5];
    &(&a + &b) + &c
}

/// Polarized Plücker pairing; vanishes iff the lines meet.
pub fn pairing<T>(p: &[T; 6], r: &[T; 6]) -> T
where
    for<'a> &'a T: std::ops::Mul<&'a T, Output = T> + std::ops::Add<&'a T, Output = T>,
{
    let terms = [
        &p[0] * &r[3],
        &p[3] * &r[0],
        &p[1] * &r[4],
        &p[4] * &r[1],
        &p[2] * &r[5],
        &p[5] * &r[2],
    ];
    let mut acc = &terms[0] + &terms[1];
    for t in &terms[2..] {
        acc = &acc + t;
    }
    acc
}

impl PlueckerLine {
    pub fn new(coords: [Q; 6]) -> Result<Self, OracleError> {
        if coords.iter().all(Zero::is_zero) {
            return Err(OracleError::ZeroVector);
        }
        if !plucker_quadric(&coords).is_zero() {
            return Err(OracleError::NotOnQuadric);
        }
        let c = canonical_integral(&coords);
        Ok(PlueckerLine(c.try_into().expect("six coordinates")))
    }

    pub fn coords(&self) -> &[Q; 6] {
        &self.0
    }

    pub fn to_json(&self) -> Value {
        json!(self.0.iter().map(|x| x.to_string()).collect::<Vec<_>>())
    }
}

impl fmt::Display for PlueckerLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// The line through two distinct points.
pub fn plucker_from_points(p: &ProjectivePoint, r: &ProjectivePoint) -> Result<PlueckerLine, OracleError> {
    let (x, y) = (p.coords(), r.coords());
    let coords = PAIRS.map(|(i, j)| &x[i] * &y[j] - &x[j] * &y[i]);
    if coords.iter().all(Zero::is_zero) {
        return Err(OracleError::CoincidentPoints);
    }
    PlueckerLine::new(coords)
}

pub fn incidence_form(a: &PlueckerLine, b: &PlueckerLine) -> Q {
    pairing(a.coords(), b.coords())
}

/// A solution line, with coordinates in ℚ or in a quadratic extension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionLine([QuadraticNumber; 6]);

impl SolutionLine {
    fn normalized(coords: [QuadraticNumber; 6]) -> Self {
        let lead = coords
            .iter()
            .find(|x| !x.is_zero())
            .expect("nonzero solution")
            .inverse()
            .expect("nonzero element of a field");
        let scaled = coords.map(|x| &x * &lead);
        if scaled.iter().all(QuadraticNumber::is_rational) {
            let rational: Vec<Q> = scaled.iter().map(|x| x.a.clone()).collect();
            let c = canonical_integral(&rational);
            return SolutionLine(
                c.into_iter()
                    .map(QuadraticNumber::rational)
                    .collect::<Vec<_>>()
                    .try_into()
                    .expect("six coordinates"),
            );
        }
        SolutionLine(scaled)
    }

    pub fn coords(&self) -> &[QuadraticNumber; 6] {
        &self.0
    }

    pub fn as_rational(&self) -> Option<PlueckerLine> {
        let c: Option<Vec<Q>> = self.0.iter().map(QuadraticNumber::as_rational).collect();
        PlueckerLine::new(c?.try_into().ok()?).ok()
    }

    pub fn satisfies_quadric(&self) -> bool {
        plucker_quadric(&self.0).is_zero()
    }

    pub fn meets(&self, l: &PlueckerLine) -> bool {
        let lq = l.coords().clone().map(QuadraticNumber::rational);
        pairing(&self.0, &lq).is_zero()
    }

    pub fn to_json(&self) -> Value {
        json!(self.0.iter().map(|x| x.to_string()).collect::<Vec<_>>())
    }
}

impl fmt::Display for SolutionLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolutionSet {
    Finite(Vec<(SolutionLine, u32)>),
    Infinite,
}

impl SolutionSet {
    pub fn total_multiplicity(&self) -> Option<u32> {
        match self {
            SolutionSet::Finite(v) => Some(v.iter().map(|(_, m)| m).sum()),
            SolutionSet::Infinite => None,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            SolutionSet::Infinite => json!({"kind": "infinite"}),
            SolutionSet::Finite(v) => json!({
                "kind": "finite",
                "total_multiplicity": self.total_multiplicity(),
                "solutions": v.iter().map(|(l, m)| json!({
                    "plucker": l.to_json(),
                    "multiplicity": m,
                })).collect::<Vec<_>>(),
            }),
        }
    }
}

/// Lines meeting four given lines: the common zeros in ℙ⁵ of four incidence
/// forms and the Plücker quadric.
pub fn lines_meeting_four(lines: &[PlueckerLine; 4]) -> Result<SolutionSet, OracleError> {
    for i in 0..4 {
        for j in 0..i {
            if lines[i] == lines[j] {
                return Err(OracleError::RepeatedLine(j, i));
            }
        }
    }
    // pairing(l, x) as a row acting on x
    let rows: Vec<Vec<Q>> = lines
        .iter()
        .map(|l| {
            let c = l.coords();
            vec![
                c[3].clone(),
                c[4].clone(),
                c[5].clone(),
                c[0].clone(),
                c[1].clone(),
                c[2].clone(),
            ]
        })
        .collect();
    let kernel = nullspace(&rows, 6);
    match kernel.len() {
        0 | 1 => unreachable!("four equations in six unknowns leave at least a pencil"),
        2 => {}
        // a plane or more of ℙ⁵ meets the quadric in a positive-dimensional set
        _ => return Ok(SolutionSet::Infinite),
    }
    let a: [Q; 6] = kernel[0].clone().try_into().expect("six");
    let b: [Q; 6] = kernel[1].clone().try_into().expect("six");
    // Q(μa + νb) = Aμ² + 2Bμν + Cν²
    let qa = plucker_quadric(&a);
    let qb = pairing(&a, &b) / q(2);
    let qc = plucker_quadric(&b);
    if qa.is_zero() && qb.is_zero() && qc.is_zero() {
        return Ok(SolutionSet::Infinite);
    }
    let disc = &qb * &qb - &qa * &qc;
    let combine = |mu: &QuadraticNumber, nu: &QuadraticNumber| {
        let coords: [QuadraticNumber; 6] = std::array::from_fn(|i| {
            &(&QuadraticNumber::rational(a[i].clone()) * mu) + &(&QuadraticNumber::rational(b[i].clone()) * nu)
        });
        SolutionLine::normalized(coords)
    };
    let rat = |x: Q| QuadraticNumber::rational(x);
    let solutions = if disc.is_zero() {
        let (mu, nu) = if qa.is_zero() {
            (Q::one(), Q::zero())
        } else {
            (-qb.clone(), qa.clone())
        };
        vec![(combine(&rat(mu), &rat(nu)), 2)]
    } else if qa.is_zero() {
        vec![
            (combine(&rat(Q::one()), &rat(Q::zero())), 1),
            (combine(&rat(-qc.clone()), &rat(q(2) * &qb)), 1),
        ]
    } else {
        let root = QuadraticNumber::sqrt_of(&disc);
        let minus_b = rat(-qb.clone());
        let nu = rat(qa.clone());
        vec![
            (combine(&(&minus_b + &root), &nu), 1),
            (combine(&(&minus_b - &root), &nu), 1),
        ]
    };
    Ok(SolutionSet::Finite(solutions))
}

/// Four lines spanned by consecutive edges of a tetrahedron PQRS: PQ, QR, RS, SP.
pub fn tetrahedron_lines(
    pts: &[ProjectivePoint; 4],
) -> Result<([PlueckerLine; 4], [PlueckerLine; 2]), OracleError> {
    let l = |i: usize, j: usize| plucker_from_points(&pts[i], &pts[j]);
    Ok((
        [l(0, 1)?, l(1, 2)?, l(2, 3)?, l(3, 0)?],
        [l(0, 2)?, l(1, 3)?],
    ))
}

/// The line of the first ruling of xw − yz = 0 through (s, 0, t, 0) and (0, s, 0, t).
pub fn quadric_ruling_a(s: i64, t: i64) -> PlueckerLine {
    plucker_from_points(
        &ProjectivePoint::from_i64([s, 0, t, 0]),
        &ProjectivePoint::from_i64([0, s, 0, t]),
    )
    .expect("distinct points")
}

/// The line of the second ruling through (u, v, 0, 0) and (0, 0, u, v).
pub fn quadric_ruling_b(u: i64, v: i64) -> PlueckerLine {
    plucker_from_points(
        &ProjectivePoint::from_i64([u, v, 0, 0]),
        &ProjectivePoint::from_i64([0, 0, u, v]),
    )
    .expect("distinct points")
}

/// Four lines of one ruling of xw − yz = 0.
pub fn quadric_ruling_configuration() -> [PlueckerLine; 4] {
    [
        quadric_ruling_a(1, 0),
        quadric_ruling_a(0, 1),
        quadric_ruling_a(1, 1),
        quadric_ruling_a(1, 2),
    ]
}

/// Three lines of one ruling and a line tangent to the quadric at
/// P = (1, 0, 0, 0) but not on it. Returns the lines and the expected double
/// solution, the other-ruling line through P.
pub fn tangent_configuration() -> ([PlueckerLine; 4], PlueckerLine) {
    let tangent = plucker_from_points(
        &ProjectivePoint::from_i64([1, 0, 0, 0]),
        &ProjectivePoint::from_i64([0, 1, 1, 0]),
    )
    .expect("distinct points");
    (
        [
            quadric_ruling_a(0, 1),
            quadric_ruling_a(1, 1),
            quadric_ruling_a(1, -1),
            tangent,
        ],
        quadric_ruling_b(1, 0),
    )
}
