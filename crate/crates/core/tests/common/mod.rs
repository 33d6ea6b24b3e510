#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use schubert::dsl::Expr;
use schubert::poly::monomials_of_degree;
use schubert::{GradedRingPresentation, Monomial, Polynomial, RingElement, RingHandle};
use std::sync::Arc;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random polynomial in the generators of `ring`, degrees 0..=top.
pub fn random_polynomial<R: Rng>(ring: &GradedRingPresentation, rng: &mut R) -> Polynomial {
    let weights = ring.weights();
    let mut p = Polynomial::zero(ring.nvars());
    for _ in 0..rng.gen_range(1..=5) {
        let d = rng.gen_range(0..=ring.top_degree());
        let monos = monomials_of_degree(weights, d);
        if monos.is_empty() {
            continue;
        }
        let m = monos[rng.gen_range(0..monos.len())].clone();
        p.add_term(m, BigInt::from(rng.gen_range(-5..=5)));
    }
    p
}

pub fn random_element<R: Rng>(ring: &Arc<GradedRingPresentation>, rng: &mut R) -> RingElement {
    ring.element(&random_polynomial(ring, rng))
}

/// A random homogeneous polynomial of degree `d`.
pub fn random_homogeneous<R: Rng>(ring: &GradedRingPresentation, d: u32, rng: &mut R) -> Polynomial {
    let mut p = Polynomial::zero(ring.nvars());
    for m in monomials_of_degree(ring.weights(), d) {
        p.add_term(m, BigInt::from(rng.gen_range(-6..=6)));
    }
    p
}

/// Rank over ℚ of the degree-d piece of ℚ[x]/I, by elimination on the
/// spanning set {m·r} without any reduction machinery from the library.
pub fn brute_force_rank(weights: &[u32], relations: &[Polynomial], d: u32) -> usize {
    let columns = monomials_of_degree(weights, d);
    let mut rows: Vec<Vec<BigRational>> = Vec::new();
    for r in relations {
        let Some(rd) = r.degree(weights) else { continue };
        if rd > d {
            continue;
        }
        for m in monomials_of_degree(weights, d - rd) {
            let prod = r.mul_monomial(&m);
            rows.push(
                columns
                    .iter()
                    .map(|c| BigRational::from_integer(prod.coefficient(c)))
                    .collect(),
            );
        }
    }
    columns.len() - rational_rank(rows, columns.len())
}

fn rational_rank(mut rows: Vec<Vec<BigRational>>, ncols: usize) -> usize {
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        for i in rank + 1..rows.len() {
            if rows[i][col].is_zero() {
                continue;
            }
            let f = &rows[i][col] / &rows[rank][col];
            let pivot = rows[rank].clone();
            for (x, y) in rows[i].iter_mut().zip(pivot) {
                *x = &*x - &f * y;
            }
        }
        rank += 1;
    }
    rank
}

pub fn mono(e: &[u32]) -> Monomial {
    Monomial::new(e.to_vec())
}

const NAMES: [&str; 10] = ["g", "g_e", "g_p", "g_s", "G", "p", "p_g", "P", "x", "c1"];

/// A random expression tree of bounded depth.
pub fn random_expr<R: Rng>(rng: &mut R, depth: u32) -> Expr {
    let leaf = depth == 0 || rng.gen_bool(0.3);
    if leaf {
        return if rng.gen_bool(0.4) {
            Expr::Int(rng.gen_range(0u32..20).into())
        } else {
            Expr::Sym(NAMES[rng.gen_range(0..NAMES.len())].to_string())
        };
    }
    let sub = |rng: &mut R| Box::new(random_expr(rng, depth - 1));
    match rng.gen_range(0..5) {
        0 => Expr::Neg(sub(rng)),
        1 => Expr::Add(sub(rng), sub(rng)),
        2 => Expr::Sub(sub(rng), sub(rng)),
        3 => Expr::Mul(sub(rng), sub(rng)),
        _ => Expr::Pow(sub(rng), rng.gen_range(0..5)),
    }
}
