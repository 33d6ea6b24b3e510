//! Independent exact geometry used to cross-check the symbolic counts.
//!
//! Everything is exact: rationals, plus quadratic extensions for the two
//! solutions of the four-lines problem. Random instances come from a seeded
//! ChaCha generator with small integer coordinates.

pub mod field;
pub mod lines;
pub mod pencil;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

pub use field::{QuadraticNumber, Q};
pub use lines::{
    incidence_form, lines_meeting_four, plucker_from_points, quadric_ruling_configuration,
    tangent_configuration, tetrahedron_lines, PlueckerLine, ProjectivePoint, SolutionLine,
    SolutionSet,
};
pub use pencil::{pencil_tangency_count, PencilCount, SurfaceForm, UniPoly};

use field::{nullspace, q};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("all coordinates are zero")]
    ZeroVector,
    #[error("coordinates do not satisfy the Plücker relation")]
    NotOnQuadric,
    #[error("the two points coincide")]
    CoincidentPoints,
    #[error("input lines {0} and {1} coincide")]
    RepeatedLine(usize, usize),
    #[error("surface form is zero")]
    ZeroSurface,
    #[error("surface form is not homogeneous")]
    NotHomogeneous,
    #[error("vertex does not lie in the plane")]
    VertexNotInPlane,
    #[error("vertex lies on the plane section")]
    VertexOnCurve,
    #[error("surface contains the plane")]
    SectionVanishes,
    #[error("plane section has a multiple component")]
    DegenerateSection,
    #[error("plane does not contain a usable pencil")]
    DegeneratePlane,
    #[error("no parameterization of the pencil avoids tangency at infinity")]
    NoGoodParameterization,
}

/// Coordinate bound for random instances.
pub const COEFF_BOUND: i64 = 10;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_point<R: Rng>(rng: &mut R) -> ProjectivePoint {
    loop {
        let c = [(); 4].map(|_| rng.gen_range(-COEFF_BOUND..=COEFF_BOUND));
        if c.iter().any(|&x| x != 0) {
            return ProjectivePoint::from_i64(c);
        }
    }
}

pub fn random_line<R: Rng>(rng: &mut R) -> PlueckerLine {
    loop {
        if let Ok(l) = plucker_from_points(&random_point(rng), &random_point(rng)) {
            return l;
        }
    }
}

/// Rank of the incidence system of four lines (4 when they impose
/// independent conditions).
pub fn incidence_rank(lines: &[PlueckerLine; 4]) -> usize {
    let rows: Vec<Vec<Q>> = lines
        .iter()
        .map(|l| {
            let c = l.coords();
            vec![c[3].clone(), c[4].clone(), c[5].clone(), c[0].clone(), c[1].clone(), c[2].clone()]
        })
        .collect();
    6 - nullspace(&rows, 6).len()
}

/// Four random lines imposing independent conditions, with a finite answer.
pub fn random_four_lines<R: Rng>(rng: &mut R) -> [PlueckerLine; 4] {
    loop {
        let lines = [(); 4].map(|_| random_line(rng));
        if incidence_rank(&lines) == 4
            && matches!(lines_meeting_four(&lines), Ok(SolutionSet::Finite(_)))
        {
            return lines;
        }
    }
}

/// Four points in general position (no three collinear, not coplanar).
pub fn random_tetrahedron<R: Rng>(rng: &mut R) -> [ProjectivePoint; 4] {
    loop {
        let pts = [(); 4].map(|_| random_point(rng));
        let rows: Vec<Vec<Q>> = pts.iter().map(|p| p.coords().to_vec()).collect();
        if nullspace(&rows, 4).is_empty() {
            return pts;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PencilInstance {
    pub surface: SurfaceForm,
    pub plane: [Q; 4],
    pub vertex: ProjectivePoint,
}

/// A random surface of the given degree with a random plane and vertex,
/// rejecting configurations the pencil count does not accept.
pub fn random_pencil_instance<R: Rng>(degree: u32, rng: &mut R) -> (PencilInstance, PencilCount) {
    loop {
        let surface = SurfaceForm::random(degree, COEFF_BOUND, rng);
        let plane = [(); 4].map(|_| q(rng.gen_range(-COEFF_BOUND..=COEFF_BOUND)));
        if plane.iter().all(|x| x == &q(0)) {
            continue;
        }
        let basis = nullspace(&[plane.to_vec()], 4);
        let k = [(); 3].map(|_| q(rng.gen_range(-COEFF_BOUND..=COEFF_BOUND)));
        let v: [Q; 4] = std::array::from_fn(|i| {
            (0..3).map(|j| &basis[j][i] * &k[j]).fold(q(0), |a, b| a + b)
        });
        let Ok(vertex) = ProjectivePoint::new(v) else {
            continue;
        };
        if let Ok(count) = pencil_tangency_count(&surface, &plane, &vertex) {
            return (
                PencilInstance {
                    surface,
                    plane,
                    vertex,
                },
                count,
            );
        }
    }
}
