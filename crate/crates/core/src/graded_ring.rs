//! Finitely presented graded-commutative rings over ℤ.
//!
//! A presentation is a list of generators with positive degrees and a list of
//! homogeneous integer relations. At construction every graded piece up to the
//! top degree is computed by integer elimination on the span of all monomial
//! multiples of the relations. Columns are ordered by descending graded-lex
//! order, so the surviving (non-pivot) monomials form the basis of each piece
//! and every other monomial gets a fixed integer rewrite over them.
//!
//! Degrees are complex codimensions throughout.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::lattice::{smith_invariants, Hermite};
use crate::poly::{monomials_of_degree, render_signed_terms, Monomial, Polynomial};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("generator `{0}` must have degree at least 1")]
    ZeroDegreeGenerator(String),
    #[error("generator name `{0}` is used twice")]
    DuplicateGenerator(String),
    #[error("relation #{index} is not homogeneous: {relation}")]
    NonHomogeneousRelation { index: usize, relation: String },
    #[error("top class {top_class} does not have degree {top_degree}")]
    TopClassDegree { top_class: String, top_degree: u32 },
    #[error("graded piece of degree {degree} has rank {rank}, expected 1")]
    TopRank { degree: u32, rank: usize },
    #[error("top class reduces to {multiple} times the generator of the top piece, expected ±1")]
    TopClassNotGenerator { multiple: BigInt },
    #[error("graded piece of degree {degree} has torsion (invariant factors {factors:?})")]
    Torsion { degree: u32, factors: Vec<BigInt> },
    #[error("graded piece of degree {degree} is free but has no monomial basis in the chosen order")]
    NonMonomialBasis { degree: u32 },
    #[error("graded piece of degree {degree} above the top degree is nonzero (rank {rank})")]
    NonzeroAboveTop { degree: u32, rank: usize },
    #[error("degree {degree} is outside 0..={top_degree}")]
    DegreeOutOfRange { degree: i64, top_degree: u32 },
    #[error("elements belong to different presentations")]
    MixedPresentations,
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("element is not homogeneous")]
    NotHomogeneous,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSpec {
    pub name: String,
    pub degree: u32,
}

impl GeneratorSpec {
    pub fn new(name: impl Into<String>, degree: u32) -> Self {
        GeneratorSpec {
            name: name.into(),
            degree,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedBasis {
    pub degree: u32,
    pub basis_monomials: Vec<Monomial>,
    pub rank: usize,
}

/// Monomials of `degree` (descending graded-lex) and the Hermite form of the
/// span of all monomial multiples of `relations` landing in that degree.
fn relation_lattice(
    weights: &[u32],
    relations: &[(Polynomial, u32)],
    degree: u32,
) -> (Vec<Monomial>, Hermite) {
    let columns = monomials_of_degree(weights, degree);
    let index: HashMap<&Monomial, usize> =
        columns.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut rows = Vec::new();
    for (rel, rel_degree) in relations {
        if *rel_degree > degree {
            continue;
        }
        for m in monomials_of_degree(weights, degree - rel_degree) {
            let mut row = vec![BigInt::zero(); columns.len()];
            for (n, c) in rel.mul_monomial(&m).terms() {
                row[index[n]] += c;
            }
            rows.push(row);
        }
    }
    let hermite = Hermite::new(rows, columns.len());
    (columns, hermite)
}

/// Integer ideal membership, degree by degree: `p` lies in the ideal of ℤ[x]
/// generated by the homogeneous `relations`.
pub fn ideal_contains(weights: &[u32], relations: &[Polynomial], p: &Polynomial) -> bool {
    let graded: Vec<(Polynomial, u32)> = relations
        .iter()
        .filter_map(|r| {
            assert!(r.is_homogeneous(weights), "relations must be homogeneous");
            r.degree(weights).map(|d| (r.clone(), d))
        })
        .collect();
    p.homogeneous_components(weights).into_iter().all(|(d, part)| {
        let (columns, hermite) = relation_lattice(weights, &graded, d);
        let v: Vec<BigInt> = columns.iter().map(|m| part.coefficient(m)).collect();
        hermite.contains(&v)
    })
}

/// Reduction data for one graded piece.
#[derive(Debug)]
struct Piece {
    basis: Vec<Monomial>,
    // every monomial of this degree ↦ its coordinates over `basis`
    rewrite: HashMap<Monomial, Vec<BigInt>>,
}

impl Piece {
    fn compute(
        weights: &[u32],
        relations: &[(Polynomial, u32)],
        degree: u32,
    ) -> Result<Piece, RingError> {
        let (columns, hermite) = relation_lattice(weights, relations, degree);
        if !hermite.has_unit_pivots() {
            let factors: Vec<BigInt> = smith_invariants(&hermite.rows, columns.len())
                .into_iter()
                .filter(|d| !d.is_one())
                .collect();
            return Err(if factors.is_empty() {
                RingError::NonMonomialBasis { degree }
            } else {
                RingError::Torsion { degree, factors }
            });
        }
        let is_pivot: Vec<bool> = {
            let mut v = vec![false; columns.len()];
            for &c in &hermite.pivots {
                v[c] = true;
            }
            v
        };
        let basis_cols: Vec<usize> = (0..columns.len()).filter(|&c| !is_pivot[c]).collect();
        let position: HashMap<usize, usize> =
            basis_cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut rewrite = HashMap::new();
        for &c in &basis_cols {
            let mut v = vec![BigInt::zero(); basis_cols.len()];
            v[position[&c]] = BigInt::one();
            rewrite.insert(columns[c].clone(), v);
        }
        // a unit-pivot row reads  e_pivot + Σ_{non-pivot c} r_c e_c ≡ 0
        for (row, &p) in hermite.rows.iter().zip(&hermite.pivots) {
            let v: Vec<BigInt> = basis_cols.iter().map(|&c| -&row[c]).collect();
            rewrite.insert(columns[p].clone(), v);
        }
        Ok(Piece {
            basis: basis_cols.iter().map(|&c| columns[c].clone()).collect(),
            rewrite,
        })
    }
}

/// A validated presentation `ℤ[generators] / (relations)`.
#[derive(Debug)]
pub struct GradedRingPresentation {
    generators: Vec<GeneratorSpec>,
    weights: Vec<u32>,
    relations: Vec<Polynomial>,
    top_degree: u32,
    top_class: Polynomial,
    // sign s with top_class ≡ s·(basis monomial of the top piece)
    top_sign: BigInt,
    pieces: Vec<Piece>,
}

/// Builds and validates a presentation.
///
/// `top_class` is the class declared to integrate to 1. It is usually a
/// monomial, but any homogeneous polynomial reducing to a generator of the
/// rank-one top piece is accepted.
pub fn present_ring(
    generators: Vec<GeneratorSpec>,
    relations: Vec<Polynomial>,
    top_degree: u32,
    top_class: Polynomial,
) -> Result<Arc<GradedRingPresentation>, RingError> {
    GradedRingPresentation::new(generators, relations, top_degree, top_class).map(Arc::new)
}

impl GradedRingPresentation {
    pub fn new(
        generators: Vec<GeneratorSpec>,
        relations: Vec<Polynomial>,
        top_degree: u32,
        top_class: Polynomial,
    ) -> Result<Self, RingError> {
        for (i, g) in generators.iter().enumerate() {
            if g.degree == 0 {
                return Err(RingError::ZeroDegreeGenerator(g.name.clone()));
            }
            if generators[..i].iter().any(|h| h.name == g.name) {
                return Err(RingError::DuplicateGenerator(g.name.clone()));
            }
        }
        let weights: Vec<u32> = generators.iter().map(|g| g.degree).collect();
        let names: Vec<&str> = generators.iter().map(|g| g.name.as_str()).collect();
        let mut graded_relations = Vec::new();
        for (index, rel) in relations.iter().enumerate() {
            assert_eq!(rel.nvars(), generators.len(), "relation arity mismatch");
            if !rel.is_homogeneous(&weights) {
                return Err(RingError::NonHomogeneousRelation {
                    index,
                    relation: rel.render(&names, &weights),
                });
            }
            if let Some(d) = rel.degree(&weights) {
                graded_relations.push((rel.clone(), d));
            }
        }
        if !top_class.is_homogeneous(&weights) || top_class.degree(&weights) != Some(top_degree) {
            return Err(RingError::TopClassDegree {
                top_class: top_class.render(&names, &weights),
                top_degree,
            });
        }

        let mut pieces = Vec::with_capacity(top_degree as usize + 1);
        for d in 0..=top_degree {
            pieces.push(Piece::compute(&weights, &graded_relations, d)?);
        }
        // Everything above the top degree must vanish; checking one maximal
        // generator degree past the top suffices.
        let max_weight = weights.iter().copied().max().unwrap_or(1);
        for d in top_degree + 1..=top_degree + max_weight {
            let piece = Piece::compute(&weights, &graded_relations, d)?;
            if !piece.basis.is_empty() {
                return Err(RingError::NonzeroAboveTop {
                    degree: d,
                    rank: piece.basis.len(),
                });
            }
        }
        let top = &pieces[top_degree as usize];
        if top.basis.len() != 1 {
            return Err(RingError::TopRank {
                degree: top_degree,
                rank: top.basis.len(),
            });
        }
        let mut multiple = BigInt::zero();
        for (m, c) in top_class.terms() {
            multiple += c * &top.rewrite[m][0];
        }
        if multiple.abs() != BigInt::one() {
            return Err(RingError::TopClassNotGenerator { multiple });
        }
        Ok(GradedRingPresentation {
            generators,
            weights,
            relations,
            top_degree,
            top_class,
            top_sign: multiple,
            pieces,
        })
    }

    pub fn generators(&self) -> &[GeneratorSpec] {
        &self.generators
    }

    pub fn generator_names(&self) -> Vec<&str> {
        self.generators.iter().map(|g| g.name.as_str()).collect()
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn relations(&self) -> &[Polynomial] {
        &self.relations
    }

    pub fn top_degree(&self) -> u32 {
        self.top_degree
    }

    pub fn top_class(&self) -> &Polynomial {
        &self.top_class
    }

    pub fn nvars(&self) -> usize {
        self.generators.len()
    }

    pub fn graded_basis(&self, degree: i64) -> Result<GradedBasis, RingError> {
        let d = u32::try_from(degree)
            .ok()
            .filter(|&d| d <= self.top_degree)
            .ok_or(RingError::DegreeOutOfRange {
                degree,
                top_degree: self.top_degree,
            })?;
        let basis = self.pieces[d as usize].basis.clone();
        Ok(GradedBasis {
            degree: d,
            rank: basis.len(),
            basis_monomials: basis,
        })
    }

    /// Ranks of the graded pieces in degrees `0..=top_degree`.
    pub fn ranks(&self) -> Vec<usize> {
        self.pieces.iter().map(|p| p.basis.len()).collect()
    }

    /// Normal-form coordinates of a homogeneous polynomial of degree `d`.
    pub fn coordinates(&self, p: &Polynomial, degree: u32) -> Vec<BigInt> {
        let piece = &self.pieces[degree as usize];
        let mut acc = vec![BigInt::zero(); piece.basis.len()];
        for (m, c) in p.terms() {
            if m.degree(&self.weights) != degree {
                continue;
            }
            for (a, r) in acc.iter_mut().zip(&piece.rewrite[m]) {
                *a += c * r;
            }
        }
        acc
    }

    fn reduce_terms(&self, p: &Polynomial) -> BTreeMap<Monomial, BigInt> {
        assert_eq!(p.nvars(), self.nvars(), "polynomial arity mismatch");
        let mut out: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for (m, c) in p.terms() {
            let d = m.degree(&self.weights);
            if d > self.top_degree {
                continue;
            }
            let piece = &self.pieces[d as usize];
            for (b, r) in piece.basis.iter().zip(&piece.rewrite[m]) {
                if r.is_zero() {
                    continue;
                }
                let e = out.entry(b.clone()).or_insert_with(BigInt::zero);
                *e += c * r;
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }
}

/// Element of a presented ring, always stored in normal form.
#[derive(Clone, Debug)]
pub struct RingElement {
    ring: Arc<GradedRingPresentation>,
    terms: BTreeMap<Monomial, BigInt>,
}

impl PartialEq for RingElement {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for RingElement {}

/// Constructors that need the shared handle.
pub trait RingHandle {
    fn element(&self, p: &Polynomial) -> RingElement;
    fn zero(&self) -> RingElement;
    fn one(&self) -> RingElement;
    fn integer(&self, k: impl Into<BigInt>) -> RingElement;
    fn generator(&self, name: &str) -> Result<RingElement, RingError>;
}

impl RingHandle for Arc<GradedRingPresentation> {
    fn element(&self, p: &Polynomial) -> RingElement {
        RingElement {
            ring: Arc::clone(self),
            terms: self.reduce_terms(p),
        }
    }

    fn zero(&self) -> RingElement {
        self.element(&Polynomial::zero(self.nvars()))
    }

    fn one(&self) -> RingElement {
        self.integer(1)
    }

    fn integer(&self, k: impl Into<BigInt>) -> RingElement {
        self.element(&Polynomial::constant(self.nvars(), k))
    }

    fn generator(&self, name: &str) -> Result<RingElement, RingError> {
        let i = self
            .generators
            .iter()
            .position(|g| g.name == name)
            .ok_or_else(|| RingError::UnknownGenerator(name.to_string()))?;
        Ok(self.element(&Polynomial::var(self.nvars(), i)))
    }
}

impl RingElement {
    pub fn ring(&self) -> &Arc<GradedRingPresentation> {
        &self.ring
    }

    pub fn same_ring(&self, other: &RingElement) -> bool {
        Arc::ptr_eq(&self.ring, &other.ring)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn to_polynomial(&self) -> Polynomial {
        Polynomial::from_terms(
            self.ring.nvars(),
            self.terms.iter().map(|(m, c)| (m.clone(), c.clone())),
        )
    }

    /// Re-reduces the stored terms. Stored terms are already reduced, so this
    /// is the identity; it exists to make idempotence checkable.
    pub fn normal_form(&self) -> RingElement {
        self.ring.element(&self.to_polynomial())
    }

    pub fn try_add(&self, other: &RingElement) -> Result<RingElement, RingError> {
        self.check(other)?;
        Ok(self.ring.element(&(&self.to_polynomial() + &other.to_polynomial())))
    }

    pub fn try_sub(&self, other: &RingElement) -> Result<RingElement, RingError> {
        self.check(other)?;
        Ok(self.ring.element(&(&self.to_polynomial() - &other.to_polynomial())))
    }

    pub fn try_mul(&self, other: &RingElement) -> Result<RingElement, RingError> {
        self.check(other)?;
        Ok(self.ring.element(&(&self.to_polynomial() * &other.to_polynomial())))
    }

    pub fn scale(&self, k: &BigInt) -> RingElement {
        self.ring.element(&self.to_polynomial().scale(k))
    }

    pub fn pow(&self, exp: u32) -> RingElement {
        let mut acc = self.ring.one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    fn check(&self, other: &RingElement) -> Result<(), RingError> {
        if self.same_ring(other) {
            Ok(())
        } else {
            Err(RingError::MixedPresentations)
        }
    }

    /// The degree of the element if it is homogeneous and nonzero.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|m| m.degree(self.ring.weights()));
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn homogeneous_components(&self) -> BTreeMap<u32, RingElement> {
        self.to_polynomial()
            .homogeneous_components(self.ring.weights())
            .into_iter()
            .map(|(d, p)| (d, self.ring.element(&p)))
            .collect()
    }

    pub fn homogeneous_part(&self, degree: u32) -> RingElement {
        self.ring
            .element(&self.to_polynomial().homogeneous_part(self.ring.weights(), degree))
    }

    /// Coordinates over the graded basis of `degree`.
    pub fn coordinates(&self, degree: u32) -> Vec<BigInt> {
        self.ring.coordinates(&self.to_polynomial(), degree)
    }

    /// Integral over the fundamental class: the top-degree coordinate relative
    /// to the declared top class. Other degrees contribute nothing.
    pub fn evaluate_top(&self) -> BigInt {
        let top = self.ring.top_degree;
        let c = &self.ring.coordinates(&self.to_polynomial(), top)[0];
        c * &self.ring.top_sign
    }

    pub fn evaluate_top_i64(&self) -> i64 {
        self.evaluate_top()
            .to_i64()
            .expect("top-degree integral fits in i64")
    }

    pub fn render(&self) -> String {
        let names = self.ring.generator_names();
        let weights = self.ring.weights();
        let mut terms: Vec<(&Monomial, &BigInt)> = self.terms.iter().collect();
        // ascending degree, graded-lex descending inside a degree
        terms.sort_by(|(a, _), (b, _)| {
            a.degree(weights)
                .cmp(&b.degree(weights))
                .then_with(|| b.cmp(a))
        });
        render_signed_terms(terms.into_iter().map(|(m, c)| (m.render(&names), c.clone())))
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl<'a> Add<&'a RingElement> for &'a RingElement {
    type Output = RingElement;
    fn add(self, rhs: &RingElement) -> RingElement {
        self.try_add(rhs).expect("mixed presentations")
    }
}

impl<'a> Sub<&'a RingElement> for &'a RingElement {
    type Output = RingElement;
    fn sub(self, rhs: &RingElement) -> RingElement {
        self.try_sub(rhs).expect("mixed presentations")
    }
}

impl<'a> Mul<&'a RingElement> for &'a RingElement {
    type Output = RingElement;
    fn mul(self, rhs: &RingElement) -> RingElement {
        self.try_mul(rhs).expect("mixed presentations")
    }
}

impl Neg for &RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        self.scale(&BigInt::from(-1))
    }
}

impl Add for RingElement {
    type Output = RingElement;
    fn add(self, rhs: RingElement) -> RingElement {
        &self + &rhs
    }
}

impl Sub for RingElement {
    type Output = RingElement;
    fn sub(self, rhs: RingElement) -> RingElement {
        &self - &rhs
    }
}

impl Mul for RingElement {
    type Output = RingElement;
    fn mul(self, rhs: RingElement) -> RingElement {
        &self * &rhs
    }
}

impl Neg for RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        -&self
    }
}
