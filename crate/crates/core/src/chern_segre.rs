//! Truncated total Chern and Segre classes.
//!
//! A total class `1 + a₁ + a₂ + …` is stored by its positive-degree
//! components. Entries live in an ambient polynomial ring; reducing into a
//! quotient is left to the caller, since the inversion identity already holds
//! before quotienting.

use num_bigint::BigInt;

use crate::poly::Polynomial;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TotalClass {
    nvars: usize,
    // components[i] has degree i + 1
    components: Vec<Polynomial>,
}

impl TotalClass {
    /// `1 + components[0] + components[1] + …`, truncated at `components.len()`.
    pub fn new(nvars: usize, components: Vec<Polynomial>) -> Self {
        for c in &components {
            assert_eq!(c.nvars(), nvars, "component arity mismatch");
        }
        TotalClass { nvars, components }
    }

    /// The class `1`, kept up to `bound`.
    pub fn one(nvars: usize, bound: usize) -> Self {
        TotalClass {
            nvars,
            components: vec![Polynomial::zero(nvars); bound],
        }
    }

    pub fn bound(&self) -> usize {
        self.components.len()
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Component of degree `i`; degree 0 is `1`, degrees past the bound are 0.
    pub fn component(&self, i: usize) -> Polynomial {
        match i {
            0 => Polynomial::one(self.nvars),
            _ => self
                .components
                .get(i - 1)
                .cloned()
                .unwrap_or_else(|| Polynomial::zero(self.nvars)),
        }
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn truncate(&self, bound: usize) -> TotalClass {
        TotalClass {
            nvars: self.nvars,
            components: (1..=bound).map(|i| self.component(i)).collect(),
        }
    }

    /// The full sum `1 + a₁ + … + a_bound` as one polynomial.
    pub fn total(&self) -> Polynomial {
        self.components
            .iter()
            .fold(Polynomial::one(self.nvars), |acc, c| &acc + c)
    }
}

/// The inverse `s` of `c`, with `c·s ≡ 1` through degree `bound`:
/// `sₖ = −Σ_{i=1..k} cᵢ·sₖ₋ᵢ`.
pub fn invert_total_class(c: &TotalClass, bound: usize) -> TotalClass {
    let n = c.nvars();
    let mut s: Vec<Polynomial> = Vec::with_capacity(bound);
    for k in 1..=bound {
        let mut acc = Polynomial::zero(n);
        for i in 1..=k {
            let prev = if i == k {
                Polynomial::one(n)
            } else {
                s[k - i - 1].clone()
            };
            acc = &acc + &(&c.component(i) * &prev);
        }
        s.push(-acc);
    }
    TotalClass::new(n, s)
}

/// Graded convolution `(1 + a)(1 + b)` truncated at `bound`.
pub fn product_total_class(a: &TotalClass, b: &TotalClass, bound: usize) -> TotalClass {
    assert_eq!(a.nvars(), b.nvars(), "incompatible coefficient rings");
    let n = a.nvars();
    let comps = (1..=bound)
        .map(|k| {
            (0..=k).fold(Polynomial::zero(n), |acc, i| {
                &acc + &(&a.component(i) * &b.component(k - i))
            })
        })
        .collect();
    TotalClass::new(n, comps)
}

/// `(1 + x)^k` for a single degree-one class `x`, as a total class truncated at `bound`.
pub fn power_of_line_class(x: &Polynomial, k: u32, bound: usize) -> TotalClass {
    let n = x.nvars();
    let comps = (1..=bound)
        .map(|i| {
            let binom = binomial(k, i as u32);
            x.pow(i as u32).scale(&binom)
        })
        .collect();
    TotalClass::new(n, comps)
}

fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    (0..k).fold(BigInt::from(1), |acc, i| acc * (n - i) / (i + 1))
}
