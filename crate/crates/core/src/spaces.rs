//! The four base spaces: ℙ³, the dual ℙ³ of planes, the Grassmannian G of
//! lines in ℙ³, and the flag space PS of pairs (line, point on the line).
//!
//! Each space couples a graded ring presentation with a table of condition
//! symbols (`p`, `g_e`, `G`, …) and a per-degree Schubert basis used to print
//! classes in symbol notation.
//!
//! | space  | generators     | relations                                  | top       |
//! |--------|----------------|--------------------------------------------|-----------|
//! | P3     | t              | t⁴                                         | t³        |
//! | P3dual | e              | e⁴                                         | e³        |
//! | G      | c1, c2         | 2c1c2 − c1³, c1⁴ − 3c1²c2 + c2²            | c2²       |
//! | PS     | t, c1, c2      | those of G, t² − t·c1 + c2                 | −t·c2²    |
//!
//! On G the tautological rank-2 bundle has Chern classes c1, c2; on PS the
//! extra generator t is the first Chern class of the tautological line, so the
//! point condition is `p = −t`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::dsl::syntax::{parse, Expr, ParseError};
use crate::graded_ring::{present_ring, GeneratorSpec, GradedRingPresentation, RingElement, RingError, RingHandle};
use crate::poly::{render_signed_terms, Polynomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SpaceId {
    P3,
    P3Dual,
    G,
    PS,
}

impl SpaceId {
    pub const ALL: [SpaceId; 4] = [SpaceId::P3, SpaceId::P3Dual, SpaceId::G, SpaceId::PS];

    pub fn name(self) -> &'static str {
        match self {
            SpaceId::P3 => "P3",
            SpaceId::P3Dual => "P3dual",
            SpaceId::G => "G",
            SpaceId::PS => "PS",
        }
    }

    pub fn parse(name: &str) -> Option<SpaceId> {
        SpaceId::ALL.into_iter().find(|s| s.name() == name)
    }
}

impl fmt::Display for SpaceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpaceError {
    #[error("unknown symbol `{name}` in {space}; available: {}", available.join(", "))]
    UnknownSymbol {
        name: String,
        space: SpaceId,
        available: Vec<String>,
    },
    #[error("expression is not homogeneous")]
    NotHomogeneous,
    #[error("{0} is only defined on PS")]
    WrongSpace(&'static str),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// A product of condition symbols, e.g. `p^2*g_e`. Empty means `1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymbolMonomial(Vec<(String, u32)>);

impl SymbolMonomial {
    pub fn new(factors: &[(&str, u32)]) -> Self {
        SymbolMonomial(
            factors
                .iter()
                .filter(|(_, e)| *e > 0)
                .map(|(s, e)| (s.to_string(), *e))
                .collect(),
        )
    }

    pub fn one() -> Self {
        SymbolMonomial(Vec::new())
    }

    pub fn factors(&self) -> &[(String, u32)] {
        &self.0
    }

    pub fn render(&self) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        self.0
            .iter()
            .map(|(s, e)| if *e == 1 { s.clone() } else { format!("{s}^{e}") })
            .collect::<Vec<_>>()
            .join("*")
    }
}

impl fmt::Display for SymbolMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// An integer combination of symbol monomials, in render-table order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchubertCombination {
    pub degree: Option<u32>,
    pub terms: Vec<(SymbolMonomial, BigInt)>,
}

impl SchubertCombination {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &SymbolMonomial) -> BigInt {
        self.terms
            .iter()
            .find(|(n, _)| n == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(BigInt::zero)
    }
}

impl fmt::Display for SchubertCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_signed_terms(
            self.terms.iter().map(|(m, c)| (m.render(), c.clone())),
        ))
    }
}

#[derive(Debug)]
struct RenderRow {
    basis: Vec<SymbolMonomial>,
    // graded-basis coordinates ↦ symbol-basis coordinates
    inverse: Vec<Vec<BigInt>>,
}

#[derive(Debug)]
pub struct SchubertSpace {
    id: SpaceId,
    ring: Arc<GradedRingPresentation>,
    symbols: Vec<(String, RingElement)>,
    render_table: Vec<RenderRow>,
}

/// The fully constructed space, built once and shared.
pub fn space(id: SpaceId) -> &'static SchubertSpace {
    static SPACES: [OnceLock<SchubertSpace>; 4] =
        [OnceLock::new(), OnceLock::new(), OnceLock::new(), OnceLock::new()];
    let slot = match id {
        SpaceId::P3 => &SPACES[0],
        SpaceId::P3Dual => &SPACES[1],
        SpaceId::G => &SPACES[2],
        SpaceId::PS => &SPACES[3],
    };
    slot.get_or_init(|| {
        let s = build(id);
        debug_assert!(
            verify_formula_suite(&s).all_hold(),
            "formula suite fails for {id}"
        );
        s
    })
}

fn grassmannian_relations(nvars: usize, c1: usize, c2: usize) -> Vec<Polynomial> {
    let c1 = Polynomial::var(nvars, c1);
    let c2 = Polynomial::var(nvars, c2);
    let two = BigInt::from(2);
    let three = BigInt::from(3);
    // y₃ and y₄ of the Segre series of (1 + c1 + c2)
    let y3 = &(&c1 * &c2).scale(&two) - &c1.pow(3);
    let y4 = &(&c1.pow(4) - &(&c1.pow(2) * &c2).scale(&three)) + &c2.pow(2);
    vec![y3, y4]
}

fn build(id: SpaceId) -> SchubertSpace {
    let m = |f: &[(&str, u32)]| SymbolMonomial::new(f);
    let (ring, symbols, table): (_, Vec<(&str, Polynomial)>, Vec<Vec<SymbolMonomial>>) = match id {
        SpaceId::P3 | SpaceId::P3Dual => {
            let (gen, s1, s2, s3) = if id == SpaceId::P3 {
                ("t", "p", "p_g", "P")
            } else {
                ("e", "e", "e_g", "E")
            };
            let ring = present_ring(
                vec![GeneratorSpec::new(gen, 1)],
                vec![Polynomial::from_i64(1, &[(&[4], 1)])],
                3,
                Polynomial::from_i64(1, &[(&[3], 1)]),
            )
            .expect("projective space presentation");
            let x = Polynomial::var(1, 0);
            let symbols = vec![(s1, x.clone()), (s2, x.pow(2)), (s3, x.pow(3))];
            let table = vec![
                vec![SymbolMonomial::one()],
                vec![m(&[(s1, 1)])],
                vec![m(&[(s2, 1)])],
                vec![m(&[(s3, 1)])],
            ];
            (ring, symbols, table)
        }
        SpaceId::G => {
            let ring = present_ring(
                vec![GeneratorSpec::new("c1", 1), GeneratorSpec::new("c2", 2)],
                grassmannian_relations(2, 0, 1),
                4,
                Polynomial::from_i64(2, &[(&[0, 2], 1)]),
            )
            .expect("Grassmannian presentation");
            let symbols = vec![
                ("g", Polynomial::from_i64(2, &[(&[1, 0], -1)])),
                ("g_p", Polynomial::from_i64(2, &[(&[2, 0], 1), (&[0, 1], -1)])),
                ("g_e", Polynomial::from_i64(2, &[(&[0, 1], 1)])),
                ("g_s", Polynomial::from_i64(2, &[(&[1, 1], -1)])),
                ("G", Polynomial::from_i64(2, &[(&[0, 2], 1)])),
            ];
            let table = vec![
                vec![SymbolMonomial::one()],
                vec![m(&[("g", 1)])],
                vec![m(&[("g_p", 1)]), m(&[("g_e", 1)])],
                vec![m(&[("g_s", 1)])],
                vec![m(&[("G", 1)])],
            ];
            (ring, symbols, table)
        }
        SpaceId::PS => {
            let mut relations = grassmannian_relations(3, 1, 2);
            relations.push(Polynomial::from_i64(
                3,
                &[(&[2, 0, 0], 1), (&[1, 1, 0], -1), (&[0, 0, 1], 1)],
            ));
            let ring = present_ring(
                vec![
                    GeneratorSpec::new("t", 1),
                    GeneratorSpec::new("c1", 1),
                    GeneratorSpec::new("c2", 2),
                ],
                relations,
                5,
                Polynomial::from_i64(3, &[(&[1, 0, 2], -1)]),
            )
            .expect("point-line flag space presentation");
            let symbols = vec![
                ("p", Polynomial::from_i64(3, &[(&[1, 0, 0], -1)])),
                ("p_g", Polynomial::from_i64(3, &[(&[2, 0, 0], 1)])),
                ("P", Polynomial::from_i64(3, &[(&[3, 0, 0], -1)])),
                ("g", Polynomial::from_i64(3, &[(&[0, 1, 0], -1)])),
                ("g_p", Polynomial::from_i64(3, &[(&[0, 2, 0], 1), (&[0, 0, 1], -1)])),
                ("g_e", Polynomial::from_i64(3, &[(&[0, 0, 1], 1)])),
                ("g_s", Polynomial::from_i64(3, &[(&[0, 1, 1], -1)])),
                ("G", Polynomial::from_i64(3, &[(&[0, 0, 2], 1)])),
            ];
            let table = vec![
                vec![SymbolMonomial::one()],
                vec![m(&[("p", 1)]), m(&[("g", 1)])],
                vec![m(&[("p", 2)]), m(&[("g_p", 1)]), m(&[("g_e", 1)])],
                vec![m(&[("p", 3)]), m(&[("p", 1), ("g_e", 1)]), m(&[("g_s", 1)])],
                vec![m(&[("G", 1)]), m(&[("p", 2), ("g_e", 1)])],
                vec![m(&[("p", 1), ("G", 1)])],
            ];
            (ring, symbols, table)
        }
    };

    let symbols: Vec<(String, RingElement)> = symbols
        .into_iter()
        .map(|(name, p)| {
            let class = ring.element(&p);
            assert!(
                class.homogeneous_degree().is_some(),
                "symbol {name} must be a nonzero homogeneous class"
            );
            (name.to_string(), class)
        })
        .collect();
    let mut s = SchubertSpace {
        id,
        ring,
        symbols,
        render_table: Vec::new(),
    };
    s.render_table = table
        .into_iter()
        .enumerate()
        .map(|(d, basis)| s.render_row(d as u32, basis))
        .collect();
    s
}

impl SchubertSpace {
    pub fn id(&self) -> SpaceId {
        self.id
    }

    pub fn ring(&self) -> &Arc<GradedRingPresentation> {
        &self.ring
    }

    pub fn symbol_names(&self) -> Vec<&str> {
        self.symbols.iter().map(|(n, _)| n.as_str()).collect()
    }

    pub fn symbols(&self) -> impl Iterator<Item = (&str, &RingElement)> {
        self.symbols.iter().map(|(n, c)| (n.as_str(), c))
    }

    pub fn has_symbol(&self, name: &str) -> bool {
        self.symbols.iter().any(|(n, _)| n == name)
    }

    pub fn symbol_class(&self, name: &str) -> Result<RingElement, SpaceError> {
        self.symbols
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, c)| c.clone())
            .ok_or_else(|| SpaceError::UnknownSymbol {
                name: name.to_string(),
                space: self.id,
                available: self.symbols.iter().map(|(n, _)| n.clone()).collect(),
            })
    }

    pub fn monomial_class(&self, m: &SymbolMonomial) -> Result<RingElement, SpaceError> {
        let mut acc = self.ring.one();
        for (s, e) in m.factors() {
            acc = &acc * &self.symbol_class(s)?.pow(*e);
        }
        Ok(acc)
    }

    pub fn combination_class(&self, c: &SchubertCombination) -> Result<RingElement, SpaceError> {
        let mut acc = self.ring.zero();
        for (m, k) in &c.terms {
            acc = &acc + &self.monomial_class(m)?.scale(k);
        }
        Ok(acc)
    }

    /// The Schubert basis used for printing in `degree`.
    pub fn render_basis(&self, degree: u32) -> &[SymbolMonomial] {
        &self.render_table[degree as usize].basis
    }

    fn render_row(&self, degree: u32, basis: Vec<SymbolMonomial>) -> RenderRow {
        let rank = self.ring.ranks()[degree as usize];
        assert_eq!(basis.len(), rank, "{}: render basis size in degree {degree}", self.id);
        let rows: Vec<Vec<BigInt>> = basis
            .iter()
            .map(|m| {
                let class = self.monomial_class(m).expect("render table uses known symbols");
                assert!(
                    class.is_zero() || class.homogeneous_degree() == Some(degree),
                    "{}: {m} is not of degree {degree}",
                    self.id
                );
                class.coordinates(degree)
            })
            .collect();
        let inverse = integer_inverse(&rows).unwrap_or_else(|| {
            panic!("{}: render basis in degree {degree} is not a ℤ-basis", self.id)
        });
        RenderRow { basis, inverse }
    }

    /// Writes a homogeneous class over the Schubert basis of its degree.
    pub fn express_in_schubert_basis(
        &self,
        e: &RingElement,
    ) -> Result<SchubertCombination, SpaceError> {
        if e.is_zero() {
            return Ok(SchubertCombination {
                degree: None,
                terms: Vec::new(),
            });
        }
        let d = e.homogeneous_degree().ok_or(SpaceError::NotHomogeneous)?;
        let row = &self.render_table[d as usize];
        let v = e.coordinates(d);
        let terms = row
            .basis
            .iter()
            .enumerate()
            .filter_map(|(j, m)| {
                let x: BigInt = v.iter().zip(&row.inverse).map(|(vi, inv)| vi * &inv[j]).sum();
                (!x.is_zero()).then(|| (m.clone(), x))
            })
            .collect();
        Ok(SchubertCombination {
            degree: Some(d),
            terms,
        })
    }

    /// Renders any class, homogeneous component by component.
    pub fn render_schubert(&self, e: &RingElement) -> String {
        let parts: Vec<SchubertCombination> = e
            .homogeneous_components()
            .into_values()
            .map(|c| {
                self.express_in_schubert_basis(&c)
                    .expect("components are homogeneous")
            })
            .filter(|c| !c.is_zero())
            .collect();
        render_signed_terms(
            parts
                .iter()
                .flat_map(|c| c.terms.iter().map(|(m, k)| (m.render(), k.clone()))),
        )
    }

    /// Evaluates an expression tree over the symbol table.
    pub fn eval_expr(&self, e: &Expr) -> Result<RingElement, SpaceError> {
        Ok(match e {
            Expr::Int(n) => self.ring.integer(BigInt::from(n.clone())),
            Expr::Sym(s) => self.symbol_class(s)?,
            Expr::Neg(b) => -&self.eval_expr(b)?,
            Expr::Add(a, b) => &self.eval_expr(a)? + &self.eval_expr(b)?,
            Expr::Sub(a, b) => &self.eval_expr(a)? - &self.eval_expr(b)?,
            Expr::Mul(a, b) => &self.eval_expr(a)? * &self.eval_expr(b)?,
            Expr::Pow(b, k) => self.eval_expr(b)?.pow(*k),
        })
    }

    pub fn eval_str(&self, text: &str) -> Result<RingElement, SpaceError> {
        self.eval_expr(&parse(text)?)
    }
}

/// Inverse of a square integer matrix if it is unimodular.
fn integer_inverse(rows: &[Vec<BigInt>]) -> Option<Vec<Vec<BigInt>>> {
    let n = rows.len();
    let mut a: Vec<Vec<BigRational>> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            assert_eq!(r.len(), n, "square matrix");
            let mut row: Vec<BigRational> =
                r.iter().map(|x| BigRational::from_integer(x.clone())).collect();
            row.extend((0..n).map(|j| {
                if i == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            }));
            row
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&i| !a[i][col].is_zero())?;
        a.swap(col, pivot);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..n {
            if i != col && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                let pivot_row = a[col].clone();
                for (x, p) in a[i].iter_mut().zip(pivot_row) {
                    *x = &*x - &f * p;
                }
            }
        }
    }
    a.into_iter()
        .map(|row| {
            row[n..]
                .iter()
                .map(|x| x.is_integer().then(|| x.to_integer()))
                .collect()
        })
        .collect()
}

/// π₍!₎ for PS → G: H*(G)-linear with π₍!₎(1) = 0, π₍!₎(t) = −1, and
/// π₍!₎(tᵏ) = π₍!₎(tᵏ⁻¹)·c1 − π₍!₎(tᵏ⁻²)·c2 from t² = t·c1 − c2.
pub fn pushforward_ps_to_g(e: &RingElement) -> Result<RingElement, SpaceError> {
    let ps = space(SpaceId::PS);
    let g = space(SpaceId::G);
    if !Arc::ptr_eq(e.ring(), ps.ring()) {
        return Err(SpaceError::WrongSpace("pushforward_ps_to_g"));
    }
    let c1 = g.ring().generator("c1")?;
    let c2 = g.ring().generator("c2")?;
    let mut t_push: Vec<RingElement> = vec![g.ring().zero(), g.ring().integer(-1)];
    let mut acc = g.ring().zero();
    for (m, coeff) in e.terms() {
        let [k, a, b] = m.exponents() else {
            unreachable!("PS has three generators")
        };
        while t_push.len() <= *k as usize {
            let n = t_push.len();
            let next = &(&t_push[n - 1] * &c1) - &(&t_push[n - 2] * &c2);
            t_push.push(next);
        }
        let base = &c1.pow(*a) * &c2.pow(*b);
        acc = &acc + &(&t_push[*k as usize] * &base).scale(coeff);
    }
    Ok(acc)
}

/// The pullback H*(G) → H*(PS).
pub fn pullback_g_to_ps(e: &RingElement) -> Result<RingElement, SpaceError> {
    let ps = space(SpaceId::PS);
    let g = space(SpaceId::G);
    if !Arc::ptr_eq(e.ring(), g.ring()) {
        return Err(SpaceError::WrongSpace("pullback_g_to_ps"));
    }
    let images = [Polynomial::var(3, 1), Polynomial::var(3, 2)];
    Ok(ps.ring().element(&e.to_polynomial().substitute(&images)))
}

/// A numbered identity between condition expressions, all sides equal.
#[derive(Clone, Copy, Debug)]
pub struct Formula {
    pub label: &'static str,
    pub space: SpaceId,
    pub sides: &'static [&'static str],
}

/// The classical identities, numbered as in Schubert's book.
pub const FORMULAS: &[Formula] = &[
    Formula { label: "1", space: SpaceId::P3, sides: &["p^2", "p_g"] },
    Formula { label: "2", space: SpaceId::P3, sides: &["p^3", "p*p_g"] },
    Formula { label: "3", space: SpaceId::P3, sides: &["p*p_g", "P"] },
    Formula { label: "4", space: SpaceId::P3, sides: &["p^3", "P"] },
    Formula { label: "5", space: SpaceId::P3Dual, sides: &["e^2", "e_g"] },
    Formula { label: "6", space: SpaceId::P3Dual, sides: &["e^3", "e*e_g"] },
    Formula { label: "7", space: SpaceId::P3Dual, sides: &["e*e_g", "E"] },
    Formula { label: "8", space: SpaceId::P3Dual, sides: &["e^3", "E"] },
    Formula { label: "9", space: SpaceId::G, sides: &["g^2", "g_p + g_e"] },
    Formula { label: "10", space: SpaceId::G, sides: &["g*g_p", "g_s"] },
    Formula { label: "11", space: SpaceId::G, sides: &["g*g_e", "g_s"] },
    Formula { label: "12", space: SpaceId::G, sides: &["g*g_s", "G"] },
    Formula { label: "13", space: SpaceId::G, sides: &["g_p*g_e", "0"] },
    Formula { label: "14", space: SpaceId::G, sides: &["g^3", "g*g_p + g*g_e"] },
    Formula { label: "15", space: SpaceId::G, sides: &["g^3", "2*g_s"] },
    Formula {
        label: "16",
        space: SpaceId::G,
        sides: &["g^4", "2*g*g_s", "2*g^2*g_e", "2*g^2*g_p", "2*g_p^2", "2*g_e^2", "2*G"],
    },
    Formula { label: "I", space: SpaceId::PS, sides: &["p*g", "p_g + g_e", "p^2 + g_e"] },
    Formula { label: "II", space: SpaceId::PS, sides: &["p*g_p", "p^3 + g_s"] },
    Formula {
        label: "III",
        space: SpaceId::PS,
        sides: &["p*g_s", "p^2*g_p", "G + p^3*g", "G + p^2*g_e"],
    },
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormulaCheck {
    pub label: &'static str,
    pub space: SpaceId,
    pub sides: Vec<&'static str>,
    /// Normal form of each side (or the evaluation error).
    pub normal_forms: Vec<String>,
    pub holds: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FormulaReport {
    pub entries: Vec<FormulaCheck>,
}

impl FormulaReport {
    pub fn all_hold(&self) -> bool {
        self.entries.iter().all(|e| e.holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &FormulaCheck> {
        self.entries.iter().filter(|e| !e.holds)
    }
}

pub fn check_formula(s: &SchubertSpace, f: &Formula) -> FormulaCheck {
    let values: Vec<Result<RingElement, SpaceError>> =
        f.sides.iter().map(|side| s.eval_str(side)).collect();
    let holds = f.space == s.id()
        && values.iter().all(|v| v.is_ok())
        && values.windows(2).all(|w| w[0] == w[1]);
    FormulaCheck {
        label: f.label,
        space: f.space,
        sides: f.sides.to_vec(),
        normal_forms: values
            .iter()
            .map(|v| match v {
                Ok(e) => e.render(),
                Err(err) => format!("error: {err}"),
            })
            .collect(),
        holds,
    }
}

/// Checks every numbered identity that lives on `s`.
pub fn verify_formula_suite(s: &SchubertSpace) -> FormulaReport {
    FormulaReport {
        entries: FORMULAS
            .iter()
            .filter(|f| f.space == s.id())
            .map(|f| check_formula(s, f))
            .collect(),
    }
}

/// Runs the suites of all four spaces, in table order.
pub fn verify_all_formulas() -> FormulaReport {
    let mut report = FormulaReport::default();
    for id in SpaceId::ALL {
        report.entries.extend(verify_formula_suite(space(id)).entries);
    }
    report
}

/// Evaluation pairing between two ordered families of classes.
pub fn pairing_matrix(left: &[RingElement], right: &[RingElement]) -> Vec<Vec<BigInt>> {
    left.iter()
        .map(|a| right.iter().map(|b| (a * b).evaluate_top()).collect())
        .collect()
}

/// Symbol table export: `{symbol: normal form}` for every symbol.
pub fn symbol_table(s: &SchubertSpace) -> BTreeMap<String, String> {
    s.symbols().map(|(n, c)| (n.to_string(), c.render())).collect()
}

#[allow(dead_code)]
fn is_unimodular(rows: &[Vec<BigInt>]) -> bool {
    integer_inverse(rows).is_some() && rows.iter().all(|r| r.iter().all(|x| x.abs() < BigInt::from(1) << 64))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn projective_space_symbols() {
        let s = space(SpaceId::P3);
        assert_eq!(s.symbol_class("p").unwrap().render(), "t");
        assert_eq!(s.symbol_class("p_g").unwrap().render(), "t^2");
        assert_eq!(s.symbol_class("P").unwrap().render(), "t^3");
        assert_eq!(s.symbol_class("P").unwrap().evaluate_top_i64(), 1);
    }

    #[test]
    fn grassmannian_symbols() {
        let s = space(SpaceId::G);
        assert_eq!(s.symbol_class("g").unwrap().render(), "-c1");
        assert_eq!(s.symbol_class("g_s").unwrap().render(), "-c1*c2");
        assert_eq!(s.symbol_class("G").unwrap().render(), "c2^2");
        let err = s.symbol_class("q").unwrap_err();
        assert!(err.to_string().contains("available: g, g_p, g_e, g_s, G"));
    }

    #[test]
    fn dual_space_line_condition() {
        let s = space(SpaceId::P3Dual);
        assert_eq!(s.symbol_class("e_g").unwrap(), s.eval_str("e^2").unwrap());
    }

    #[test]
    fn flag_space_point_symbol() {
        let s = space(SpaceId::PS);
        assert_eq!(s.symbol_class("p").unwrap().render(), "-t");
        assert_eq!(s.eval_str("p*G").unwrap().evaluate_top_i64(), 1);
        assert_eq!(s.ring().ranks(), vec![1, 2, 3, 3, 2, 1]);
        // t^2 reduces through the tautological relation
        let t2 = s.ring().generator("t").unwrap().pow(2);
        assert_eq!(t2.render(), "t*c1 - c2");
    }

    #[test]
    fn schubert_renderings() {
        let g = space(SpaceId::G);
        let c1sq = g.ring().generator("c1").unwrap().pow(2);
        assert_eq!(g.express_in_schubert_basis(&c1sq).unwrap().to_string(), "g_p + g_e");
        assert_eq!(g.express_in_schubert_basis(&g.ring().zero()).unwrap().to_string(), "0");
        assert!(g.express_in_schubert_basis(&g.ring().zero()).unwrap().is_zero());

        let ps = space(SpaceId::PS);
        let pgs = ps.eval_str("p*g_s").unwrap();
        assert_eq!(ps.express_in_schubert_basis(&pgs).unwrap().to_string(), "G + p^2*g_e");
        let pg = ps.eval_str("p*g").unwrap();
        assert_eq!(ps.express_in_schubert_basis(&pg).unwrap().to_string(), "p^2 + g_e");
    }

    #[test]
    fn non_homogeneous_rendering_is_an_error() {
        let g = space(SpaceId::G);
        let e = g.eval_str("g + G").unwrap();
        assert_eq!(g.express_in_schubert_basis(&e), Err(SpaceError::NotHomogeneous));
        assert_eq!(g.render_schubert(&e), "g + G");
    }

    #[test]
    fn pushforward_examples() {
        let ps = space(SpaceId::PS);
        let g = space(SpaceId::G);
        let t = ps.ring().generator("t").unwrap();
        assert!(pushforward_ps_to_g(&ps.ring().one()).unwrap().is_zero());
        assert_eq!(pushforward_ps_to_g(&-&t).unwrap(), g.ring().one());
        assert_eq!(
            pushforward_ps_to_g(&t.pow(2)).unwrap(),
            -&g.ring().generator("c1").unwrap()
        );
        assert!(pushforward_ps_to_g(&g.ring().one()).is_err());
    }

    #[test]
    fn every_formula_holds() {
        let report = verify_all_formulas();
        let failed: Vec<_> = report.failures().map(|f| f.label).collect();
        assert!(failed.is_empty(), "failing formulas: {failed:?}");
        assert_eq!(report.entries.len(), FORMULAS.len());
    }

    #[test]
    fn formula_on_wrong_space_is_reported() {
        let check = check_formula(space(SpaceId::G), &FORMULAS[0]);
        assert!(!check.holds);
    }

    #[test]
    fn sample_formulas_by_hand() {
        let g = space(SpaceId::G);
        assert_eq!(g.eval_str("g^3").unwrap().render(), "-2*c1*c2");
        assert_eq!(g.eval_str("2*g_s").unwrap().render(), "-2*c1*c2");
        let ps = space(SpaceId::PS);
        assert_eq!(ps.eval_str("p*g_p").unwrap(), ps.eval_str("p^3 + g_s").unwrap());
    }
}
