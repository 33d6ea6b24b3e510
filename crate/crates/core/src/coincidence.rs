//! Pairs of points of ℙ³ and the diagonal.
//!
//! The blow-up X̃ of ℙ³×ℙ³ along the diagonal Δ carries the pullbacks t₁, t₂
//! of the hyperplane classes and the exceptional class ε. Lines through two
//! distinct points give a map φ: X̃ → G, and counts of tangent and bitangent
//! lines to a surface come from evaluating pulled-back Schubert conditions
//! against the excess class of the surface along Δ̃.
//!
//! The ring used here has generators (ε, t₁, t₂) of degree 1 and relations
//!
//! ```text
//! t₁⁴,  t₂⁴,  ε·(t₁ − t₂),
//! t₁³ + t₁²t₂ + t₁t₂² + t₂³ − (ε³ − 4ε²t₂ + 6εt₂²)
//! ```
//!
//! The last relation identifies the pullback of [Δ] with the pushforward of
//! c₂ of the excess bundle; without it the pullback along φ is not well
//! defined. The top class is t₁³t₂³.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::chern_segre::{invert_total_class, power_of_line_class};
use crate::dsl::syntax::Expr;
use crate::graded_ring::{present_ring, GeneratorSpec, GradedRingPresentation, RingElement, RingHandle};
use crate::poly::{render_signed_terms, Monomial, Polynomial};
use crate::spaces::{space, SpaceId, SymbolMonomial};

pub const EPS: usize = 0;
pub const T1: usize = 1;
pub const T2: usize = 2;
const NVARS: usize = 3;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoincidenceError {
    #[error("degree must be at least 1, got {0}")]
    DegreeTooSmall(i64),
    #[error("class does not live on the Grassmannian")]
    NotGrassmannian,
    #[error("no interpretation for condition `{0}`")]
    Uninterpreted(String),
    #[error("count {0} is odd and cannot be halved")]
    OddCount(BigInt),
}

/// The blow-up ring, built once.
pub fn blowup_ring() -> &'static Arc<GradedRingPresentation> {
    static RING: OnceLock<Arc<GradedRingPresentation>> = OnceLock::new();
    RING.get_or_init(|| {
        let p = |terms: &[(&[u32], i64)]| Polynomial::from_i64(NVARS, terms);
        present_ring(
            vec![
                GeneratorSpec::new("eps", 1),
                GeneratorSpec::new("t1", 1),
                GeneratorSpec::new("t2", 1),
            ],
            vec![
                p(&[(&[0, 4, 0], 1)]),
                p(&[(&[0, 0, 4], 1)]),
                p(&[(&[1, 1, 0], 1), (&[1, 0, 1], -1)]),
                p(&[
                    (&[0, 3, 0], 1),
                    (&[0, 2, 1], 1),
                    (&[0, 1, 2], 1),
                    (&[0, 0, 3], 1),
                    (&[3, 0, 0], -1),
                    (&[2, 0, 1], 4),
                    (&[1, 0, 2], -6),
                ]),
            ],
            6,
            p(&[(&[0, 3, 3], 1)]),
        )
        .expect("blow-up presentation")
    })
}

/// A class on the blow-up, kept in normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlowupClass(RingElement);

impl BlowupClass {
    pub fn from_polynomial(p: &Polynomial) -> Self {
        BlowupClass(blowup_ring().element(p))
    }

    pub fn zero() -> Self {
        BlowupClass(blowup_ring().zero())
    }

    pub fn one() -> Self {
        BlowupClass(blowup_ring().one())
    }

    pub fn eps() -> Self {
        Self::from_polynomial(&Polynomial::var(NVARS, EPS))
    }

    pub fn t1() -> Self {
        Self::from_polynomial(&Polynomial::var(NVARS, T1))
    }

    /// `t₂`, written `t` on ε-terms since εt₁ = εt₂.
    pub fn t2() -> Self {
        Self::from_polynomial(&Polynomial::var(NVARS, T2))
    }

    pub fn element(&self) -> &RingElement {
        &self.0
    }

    pub fn to_polynomial(&self) -> Polynomial {
        self.0.to_polynomial()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn scale(&self, k: impl Into<BigInt>) -> Self {
        BlowupClass(self.0.scale(&k.into()))
    }

    pub fn pow(&self, k: u32) -> Self {
        BlowupClass(self.0.pow(k))
    }

    /// Normal form split into the ε-free part and the cofactor of ε.
    pub fn split(&self) -> (Polynomial, Polynomial) {
        let mut free = Polynomial::zero(NVARS);
        let mut eps = Polynomial::zero(NVARS);
        for (m, c) in self.0.terms() {
            let e = m.exponents();
            if e[EPS] == 0 {
                free.add_term(m.clone(), c.clone());
            } else {
                eps.add_term(Monomial::new(vec![e[EPS] - 1, e[T1], e[T2]]), c.clone());
            }
        }
        (free, eps)
    }

    /// ⟨self, X̃⟩ via `evaluate_top`.
    pub fn evaluate_top(&self) -> BigInt {
        self.0.evaluate_top()
    }

    pub fn render(&self) -> String {
        self.0.render()
    }
}

impl fmt::Display for BlowupClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

macro_rules! blowup_op {
    ($tr:ident, $m:ident, $op:tt) => {
        impl std::ops::$tr<&BlowupClass> for &BlowupClass {
            type Output = BlowupClass;
            fn $m(self, rhs: &BlowupClass) -> BlowupClass {
                BlowupClass(&self.0 $op &rhs.0)
            }
        }
        impl std::ops::$tr for BlowupClass {
            type Output = BlowupClass;
            fn $m(self, rhs: BlowupClass) -> BlowupClass {
                BlowupClass(&self.0 $op &rhs.0)
            }
        }
    };
}
blowup_op!(Add, add, +);
blowup_op!(Sub, sub, -);
blowup_op!(Mul, mul, *);

impl std::ops::Neg for &BlowupClass {
    type Output = BlowupClass;
    fn neg(self) -> BlowupClass {
        BlowupClass(-&self.0)
    }
}

fn pullback_images() -> [Polynomial; 2] {
    let p = |terms: &[(&[u32], i64)]| Polynomial::from_i64(NVARS, terms);
    [
        // c₁ ↦ ε − t₁ − t₂
        p(&[(&[1, 0, 0], 1), (&[0, 1, 0], -1), (&[0, 0, 1], -1)]),
        // c₂ ↦ t₁t₂ − εt
        p(&[(&[0, 1, 1], 1), (&[1, 0, 1], -1)]),
    ]
}

/// φ*: H*(G) → blow-up, c₁ ↦ ε − t₁ − t₂, c₂ ↦ t₁t₂ − εt.
pub fn phi_pullback(e: &RingElement) -> Result<BlowupClass, CoincidenceError> {
    if !Arc::ptr_eq(e.ring(), space(SpaceId::G).ring()) {
        return Err(CoincidenceError::NotGrassmannian);
    }
    Ok(BlowupClass::from_polynomial(
        &e.to_polynomial().substitute(&pullback_images()),
    ))
}

/// φ* of the polynomial relations of H*(G); all vanish when φ* is well defined.
pub fn pulled_back_relations() -> Vec<BlowupClass> {
    space(SpaceId::G)
        .ring()
        .relations()
        .iter()
        .map(|r| BlowupClass::from_polynomial(&r.substitute(&pullback_images())))
        .collect()
}

/// The coincidence class ε = t₁ + t₂ − φ*(g).
pub fn coincidence_class() -> BlowupClass {
    let g = space(SpaceId::G).symbol_class("g").expect("g on G");
    let eps = &(&BlowupClass::t1() + &BlowupClass::t2())
        - &phi_pullback(&g).expect("g lives on G");
    assert_eq!(eps, BlowupClass::eps(), "coincidence formula");
    eps
}

/// n²t₁t₂ − n·t·ε: the class of F×F minus its excess along the diagonal,
/// for a surface F of degree n.
pub fn surface_excess_class(n: i64) -> Result<BlowupClass, CoincidenceError> {
    if n < 1 {
        return Err(CoincidenceError::DegreeTooSmall(n));
    }
    let p = Polynomial::from_i64(NVARS, &[(&[0, 1, 1], n * n), (&[1, 0, 1], -n)]);
    let class = BlowupClass::from_polynomial(&p);
    let excess = BlowupClass::from_polynomial(&Polynomial::from_i64(NVARS, &[(&[1, 0, 1], n)]));
    let full = BlowupClass::from_polynomial(&Polynomial::from_i64(NVARS, &[(&[0, 1, 1], n * n)]));
    assert_eq!(&class + &excess, full, "excess decomposition");
    Ok(class)
}

/// π₍!₎(εᵏ) on Δ ≅ ℙ³ for k ≥ 2, as coefficients of tᵏ⁻² (zero when k − 2 > 3).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SegrePushTable {
    // entry[j] is the coefficient c with π₍!₎(ε^{j+2}) = c·tʲ
    entries: Vec<BigInt>,
}

impl SegrePushTable {
    /// (−1)ᵏ s_{k−2}(Tℙ³), with s = (1 + t)⁻⁴.
    pub fn new() -> Self {
        let t = Polynomial::var(1, 0);
        let s = invert_total_class(&power_of_line_class(&t, 4, 3), 3);
        let entries = (0..=3)
            .map(|j| {
                let k = j + 2;
                let coeff = s.component(j).coefficient(&Monomial::new(vec![j as u32]));
                if k % 2 == 0 {
                    coeff
                } else {
                    -coeff
                }
            })
            .collect();
        SegrePushTable { entries }
    }

    /// Coefficient c in π₍!₎(εᵏ) = c·t^{k−2}; zero for k < 2 and k > 5.
    pub fn coefficient(&self, k: u32) -> BigInt {
        match k.checked_sub(2) {
            Some(j) => self.entries.get(j as usize).cloned().unwrap_or_else(BigInt::zero),
            None => BigInt::zero(),
        }
    }

    /// π₍!₎(εᵏ) as a polynomial in t.
    pub fn push(&self, k: u32) -> Polynomial {
        match k.checked_sub(2) {
            Some(j) => Polynomial::monomial(Monomial::new(vec![j]), self.coefficient(k)),
            None => Polynomial::zero(1),
        }
    }

    pub fn render(&self, k: u32) -> String {
        self.push(k).render(&["t"], &[1])
    }
}

impl Default for SegrePushTable {
    fn default() -> Self {
        Self::new()
    }
}

fn push_table() -> &'static SegrePushTable {
    static TABLE: OnceLock<SegrePushTable> = OnceLock::new();
    TABLE.get_or_init(SegrePushTable::new)
}

/// Evaluation on Δ̃ of a polynomial in (ε, t₁, t₂), reduced or not: set
/// t₁ = t₂ = t, push εᵏtᵃ to tᵃ·π₍!₎(εᵏ), read off the coefficient of t³.
pub fn eval_exceptional_polynomial(p: &Polynomial) -> BigInt {
    assert_eq!(p.nvars(), NVARS, "expected a polynomial in eps, t1, t2");
    let table = push_table();
    let mut total = BigInt::zero();
    for (m, c) in p.terms() {
        let e = m.exponents();
        let (k, a) = (e[EPS], e[T1] + e[T2]);
        if k >= 2 && a + (k - 2) == 3 {
            total += c * table.coefficient(k);
        }
    }
    total
}

pub fn eval_exceptional(c: &BlowupClass) -> BigInt {
    eval_exceptional_polynomial(&c.to_polynomial())
}

/// Evaluation on X̃: the ε-free part by its t₁³t₂³ coefficient, ε·x by
/// `eval_exceptional(x)`.
pub fn eval_total(c: &BlowupClass) -> BigInt {
    let (free, eps) = c.split();
    free.coefficient(&Monomial::new(vec![0, 3, 3])) + eval_exceptional_polynomial(&eps)
}

/// ⟨(n²t₁t₂ − ntε)·φ*(g_s), Δ̃⟩: tangent lines to a degree-n surface through
/// a general line of ℙ³, i.e. the class n(n − 1) of a plane section.
pub fn tangent_count(n: i64) -> Result<BigInt, CoincidenceError> {
    let excess = surface_excess_class(n)?;
    let gs = space(SpaceId::G).symbol_class("g_s").expect("g_s on G");
    let class = &excess * &phi_pullback(&gs)?;
    Ok(eval_exceptional(&class))
}

/// A monomial in the bitangent calculus: powers of the point conditions
/// p_1..p_4 (one per intersection point) times a product of line symbols.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CondMonomial {
    pub points: BTreeMap<u8, u32>,
    pub line: BTreeMap<String, u32>,
}

const LINE_ORDER: [&str; 5] = ["g", "g_e", "g_p", "g_s", "G"];

fn line_rank(s: &str) -> usize {
    LINE_ORDER.iter().position(|x| *x == s).unwrap_or(LINE_ORDER.len())
}

fn point_symbol(s: &str) -> Option<u8> {
    let i = s.strip_prefix("p_")?.parse::<u8>().ok()?;
    (1..=4).contains(&i).then_some(i)
}

impl CondMonomial {
    pub fn one() -> Self {
        CondMonomial {
            points: BTreeMap::new(),
            line: BTreeMap::new(),
        }
    }

    pub fn point(i: u8) -> Self {
        let mut m = Self::one();
        m.points.insert(i, 1);
        m
    }

    pub fn line_symbol(s: &str) -> Self {
        let mut m = Self::one();
        m.line.insert(s.to_string(), 1);
        m
    }

    pub fn mul(&self, other: &CondMonomial) -> CondMonomial {
        let mut out = self.clone();
        for (i, e) in &other.points {
            *out.points.entry(*i).or_insert(0) += e;
        }
        for (s, e) in &other.line {
            *out.line.entry(s.clone()).or_insert(0) += e;
        }
        out
    }

    /// Factors as (symbol, exponent), points first.
    pub fn factors(&self) -> Vec<(String, u32)> {
        let mut line: Vec<(&String, &u32)> = self.line.iter().collect();
        line.sort_by_key(|(s, _)| line_rank(s));
        self.points
            .iter()
            .map(|(i, e)| (format!("p_{i}"), *e))
            .chain(line.into_iter().map(|(s, e)| (s.clone(), *e)))
            .collect()
    }

    /// Sorted multiset of symbols, for order-insensitive comparison.
    pub fn multiset(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .factors()
            .into_iter()
            .flat_map(|(s, e)| std::iter::repeat(s).take(e as usize))
            .collect();
        out.sort();
        out
    }

    fn line_monomial(&self) -> SymbolMonomial {
        let f: Vec<(&str, u32)> = self.line.iter().map(|(s, e)| (s.as_str(), *e)).collect();
        SymbolMonomial::new(&f)
    }

    fn sort_key(&self) -> (std::cmp::Reverse<usize>, Vec<(u8, std::cmp::Reverse<u32>)>, Vec<(usize, u32)>) {
        let mut line: Vec<(usize, u32)> = self.line.iter().map(|(s, e)| (line_rank(s), *e)).collect();
        line.sort();
        (
            std::cmp::Reverse(self.points.len()),
            self.points.iter().map(|(i, e)| (*i, std::cmp::Reverse(*e))).collect(),
            line,
        )
    }

    /// Canonical representative under relabelings that preserve the pairs
    /// {1, 2} and {3, 4}.
    pub fn symmetrize(&self) -> CondMonomial {
        const GROUP: [[u8; 4]; 8] = [
            [1, 2, 3, 4],
            [2, 1, 3, 4],
            [1, 2, 4, 3],
            [2, 1, 4, 3],
            [3, 4, 1, 2],
            [4, 3, 1, 2],
            [3, 4, 2, 1],
            [4, 3, 2, 1],
        ];
        GROUP
            .iter()
            .map(|sigma| CondMonomial {
                points: self
                    .points
                    .iter()
                    .map(|(i, e)| (sigma[*i as usize - 1], *e))
                    .collect(),
                line: self.line.clone(),
            })
            .min_by(|a, b| a.sort_key().cmp(&b.sort_key()).then_with(|| a.cmp(b)))
            .expect("group is non-empty")
    }

    pub fn render(&self) -> String {
        let f = self.factors();
        if f.is_empty() {
            return "1".into();
        }
        f.iter()
            .map(|(s, e)| if *e == 1 { s.clone() } else { format!("{s}^{e}") })
            .collect::<Vec<_>>()
            .join("*")
    }
}

/// An integer combination of condition monomials in display order.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CondPolynomial {
    terms: BTreeMap<CondMonomial, BigInt>,
}

impl CondPolynomial {
    pub fn add_term(&mut self, m: CondMonomial, c: BigInt) {
        let entry = self.terms.entry(m.clone()).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn sum(terms: impl IntoIterator<Item = (CondMonomial, BigInt)>) -> Self {
        let mut out = CondPolynomial::default();
        for (m, c) in terms {
            out.add_term(m, c);
        }
        out
    }

    pub fn mul(&self, other: &CondPolynomial) -> CondPolynomial {
        CondPolynomial::sum(self.terms.iter().flat_map(|(a, x)| {
            other.terms.iter().map(move |(b, y)| (a.mul(b), x * y))
        }))
    }

    /// Terms in display order: more distinct points first.
    pub fn terms(&self) -> Vec<(CondMonomial, BigInt)> {
        let mut out: Vec<(CondMonomial, BigInt)> =
            self.terms.iter().map(|(m, c)| (m.clone(), c.clone())).collect();
        out.sort_by(|(a, _), (b, _)| a.sort_key().cmp(&b.sort_key()));
        out
    }

    /// `(coefficient, sorted symbol multiset)` pairs, sorted.
    pub fn term_multisets(&self) -> Vec<(BigInt, Vec<String>)> {
        let mut out: Vec<(BigInt, Vec<String>)> =
            self.terms.iter().map(|(m, c)| (c.clone(), m.multiset())).collect();
        out.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
        out
    }

    /// Formal expansion of an expression over condition symbols, with no
    /// relations applied.
    pub fn from_expr(e: &Expr) -> CondPolynomial {
        match e {
            Expr::Int(n) => CondPolynomial::sum([(CondMonomial::one(), BigInt::from(n.clone()))]),
            Expr::Sym(s) => {
                let m = match point_symbol(s) {
                    Some(i) => CondMonomial::point(i),
                    None => CondMonomial::line_symbol(s),
                };
                CondPolynomial::sum([(m, BigInt::one())])
            }
            Expr::Neg(b) => CondPolynomial::from_expr(b).scale(&BigInt::from(-1)),
            Expr::Add(a, b) => CondPolynomial::from_expr(a).plus(&CondPolynomial::from_expr(b)),
            Expr::Sub(a, b) => CondPolynomial::from_expr(a)
                .plus(&CondPolynomial::from_expr(b).scale(&BigInt::from(-1))),
            Expr::Mul(a, b) => CondPolynomial::from_expr(a).mul(&CondPolynomial::from_expr(b)),
            Expr::Pow(b, k) => {
                let base = CondPolynomial::from_expr(b);
                (0..*k).fold(CondPolynomial::sum([(CondMonomial::one(), BigInt::one())]), |acc, _| {
                    acc.mul(&base)
                })
            }
        }
    }

    pub fn scale(&self, k: &BigInt) -> CondPolynomial {
        CondPolynomial::sum(self.terms.iter().map(|(m, c)| (m.clone(), c * k)))
    }

    pub fn plus(&self, other: &CondPolynomial) -> CondPolynomial {
        CondPolynomial::sum(self.terms.iter().chain(other.terms.iter()).map(|(m, c)| (m.clone(), c.clone())))
    }

    pub fn render(&self) -> String {
        render_signed_terms(self.terms().into_iter().map(|(m, c)| (m.render(), c)))
    }
}

impl fmt::Display for CondPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Integer polynomial in n, coefficients from degree 0 upward.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NPolynomial(pub Vec<BigInt>);

impl NPolynomial {
    /// ∏ (n − rᵢ) over the given roots.
    pub fn from_roots(roots: &[i64]) -> Self {
        let mut c = vec![BigInt::one()];
        for r in roots {
            let mut next = vec![BigInt::zero(); c.len() + 1];
            for (i, x) in c.iter().enumerate() {
                next[i + 1] += x;
                next[i] -= x * r;
            }
            c = next;
        }
        NPolynomial(c)
    }

    pub fn zero() -> Self {
        NPolynomial(Vec::new())
    }

    pub fn eval(&self, n: i64) -> BigInt {
        self.0
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * n + c)
    }
}

/// Numbers of point configurations satisfying a fully constrained condition
/// monomial, for a surface of degree n met by a line in n points.
#[derive(Clone, Debug)]
pub struct InterpretationTable {
    entries: Vec<(CondMonomial, NPolynomial)>,
}

impl InterpretationTable {
    pub fn standard() -> Self {
        let mut p1p3ge = CondMonomial::point(1).mul(&CondMonomial::point(3));
        p1p3ge.line.insert("g_e".into(), 1);
        InterpretationTable {
            entries: vec![
                // ordered 4-tuples of distinct points on a general line
                (CondMonomial::line_symbol("G"), NPolynomial::from_roots(&[0, 1, 2, 3])),
                // two points fixed by planes, two more on a line in a plane
                (p1p3ge, NPolynomial::from_roots(&[0, 0, 2, 3])),
            ],
        }
    }

    pub fn lookup(&self, m: &CondMonomial) -> Result<NPolynomial, CoincidenceError> {
        // p³ = 0 on ℙ³-valued points restricted to a surface
        if m.points.values().any(|&e| e >= 3) {
            return Ok(NPolynomial::zero());
        }
        self.entries
            .iter()
            .find(|(k, _)| k == m)
            .map(|(_, v)| v.clone())
            .ok_or_else(|| CoincidenceError::Uninterpreted(m.render()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub step: String,
    pub expression: String,
}

#[derive(Clone, Debug)]
pub struct BitangentDerivation {
    pub n: i64,
    pub count: BigInt,
    /// 2ε₂₂ after symmetrization.
    pub doubled_class: CondPolynomial,
    /// 2ε₂₂·g_e before the flag-space rewrite.
    pub times_ge_raw: CondPolynomial,
    /// 2ε₂₂·g_e in final form.
    pub times_ge: CondPolynomial,
    pub doubled_count: BigInt,
    pub trace: Vec<TraceStep>,
}

/// Rewrites the line part of every term in the Schubert basis of G.
fn reduce_line_parts(p: &CondPolynomial) -> CondPolynomial {
    let g = space(SpaceId::G);
    let mut out = CondPolynomial::default();
    for (m, c) in p.terms() {
        let class = g.monomial_class(&m.line_monomial()).expect("line symbols live on G");
        if class.is_zero() {
            continue;
        }
        let combo = g.express_in_schubert_basis(&class).expect("monomials are homogeneous");
        for (sm, k) in combo.terms {
            let mut nm = CondMonomial {
                points: m.points.clone(),
                line: BTreeMap::new(),
            };
            for (s, e) in sm.factors() {
                *nm.line.entry(s.clone()).or_insert(0) += e;
            }
            out.add_term(nm, &c * k);
        }
    }
    out
}

/// p_i·g_s = G + p_i³·g, formula III on the flag space, for the lowest
/// index point of exponent one.
fn apply_flag_rewrite(p: &CondPolynomial) -> CondPolynomial {
    let ps = space(SpaceId::PS);
    let lhs = ps.eval_str("p*g_s").expect("PS symbols");
    let rhs = ps.eval_str("G + p^3*g").expect("PS symbols");
    assert_eq!(lhs, rhs, "flag-space rewrite must hold on PS");

    let mut out = CondPolynomial::default();
    for (m, c) in p.terms() {
        let single = m.points.iter().find(|(_, e)| **e == 1).map(|(i, _)| *i);
        let is_gs = m.line.len() == 1 && m.line.get("g_s") == Some(&1);
        match (single, is_gs) {
            (Some(i), true) => {
                let mut rest = m.clone();
                rest.points.remove(&i);
                rest.line.clear();
                let g_term = rest.mul(&CondMonomial::line_symbol("G"));
                let mut cubed = rest.clone();
                cubed.points.insert(i, 3);
                let cubed = cubed.mul(&CondMonomial::line_symbol("g"));
                out.add_term(g_term, c.clone());
                out.add_term(cubed, c);
            }
            _ => out.add_term(m, c),
        }
    }
    out
}

/// Bitangent lines to a surface of degree n meeting a general line: the
/// classical derivation with the pair-of-pairs coincidence class ε₂₂.
pub fn bitangent_derivation(n: i64) -> Result<BitangentDerivation, CoincidenceError> {
    if n < 1 {
        return Err(CoincidenceError::DegreeTooSmall(n));
    }
    let lin = |a: u8, b: u8| {
        CondPolynomial::sum([
            (CondMonomial::point(a), BigInt::one()),
            (CondMonomial::point(b), BigInt::one()),
            (CondMonomial::line_symbol("g"), BigInt::from(-1)),
        ])
    };
    let mut trace = Vec::new();
    let mut record = |step: &str, p: &CondPolynomial| {
        trace.push(TraceStep {
            step: step.into(),
            expression: p.render(),
        })
    };

    let expanded = lin(1, 2).mul(&lin(3, 4));
    record("expand (p_1 + p_2 - g)*(p_3 + p_4 - g)", &expanded);

    let symmetric = CondPolynomial::sum(expanded.terms().into_iter().map(|(m, c)| (m.symmetrize(), c)));
    let doubled_class = reduce_line_parts(&symmetric);
    record("symmetrize and reduce on G: 2*eps_22", &doubled_class);

    let times_ge_raw =
        reduce_line_parts(&doubled_class.mul(&CondPolynomial::sum([(CondMonomial::line_symbol("g_e"), BigInt::one())])));
    record("multiply by g_e on G", &times_ge_raw);

    let times_ge = apply_flag_rewrite(&times_ge_raw);
    record("rewrite p*g_s = G + p^3*g on PS", &times_ge);

    let table = InterpretationTable::standard();
    let mut doubled_count = BigInt::zero();
    for (m, c) in times_ge.terms() {
        doubled_count += c * table.lookup(&m)?.eval(n);
    }
    trace.push(TraceStep {
        step: "interpret at n".into(),
        expression: format!("2*count = {doubled_count}"),
    });
    let (count, rem) = doubled_count.div_rem(&BigInt::from(2));
    if !rem.is_zero() {
        return Err(CoincidenceError::OddCount(doubled_count));
    }
    trace.push(TraceStep {
        step: "halve".into(),
        expression: format!("count = {count}"),
    });
    Ok(BitangentDerivation {
        n,
        count,
        doubled_class,
        times_ge_raw,
        times_ge,
        doubled_count,
        trace,
    })
}

/// ε-free part of the diagonal restriction t₁ = t₂ = t of a·t₁ + b·t₂: the
/// coefficient of t, which is a + b for a bidegree-(a, b) correspondence.
pub fn diagonal_degree(c: &BlowupClass) -> BigInt {
    let (free, _) = c.split();
    free.coefficient(&Monomial::new(vec![0, 1, 0])) + free.coefficient(&Monomial::new(vec![0, 0, 1]))
}
