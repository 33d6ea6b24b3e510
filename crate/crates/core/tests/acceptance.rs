//! Acceptance criteria, one PASS/FAIL line each. All comparisons are exact.

mod common;

use std::panic::{self, AssertUnwindSafe};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use schubert::chern_segre::{invert_total_class, power_of_line_class, product_total_class, TotalClass};
use schubert::cli::run_cli;
use schubert::coincidence::{
    bitangent_derivation, eval_exceptional_polynomial, tangent_count, CondPolynomial, SegrePushTable,
};
use schubert::dsl::{evaluate_str, parse};
use schubert::oracle::{
    self, lines_meeting_four, quadric_ruling_configuration, tangent_configuration, tetrahedron_lines,
    SolutionSet,
};
use schubert::spaces::{pairing_matrix, pushforward_ps_to_g, space, verify_all_formulas, SpaceId};
use schubert::{Polynomial, RingHandle};

fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

fn check(cond: bool, what: &str) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.to_string())
    }
}

fn criterion_1() -> Result<(), String> {
    let r = evaluate_str("g^4", SpaceId::G).map_err(|e| e.to_string())?;
    check(r.top == Some(big(2)), "evaluate_top(g^4) != 2")?;
    check(r.schubert == "2*G", "g^4 does not render as 2*G")?;

    let mut rng = oracle::rng(1);
    for i in 0..200 {
        let lines = oracle::random_four_lines(&mut rng);
        let set = lines_meeting_four(&lines).map_err(|e| e.to_string())?;
        check(set.total_multiplicity() == Some(2), &format!("instance {i}: total multiplicity != 2"))?;
        if let SolutionSet::Finite(sols) = &set {
            for (s, _) in sols {
                check(
                    s.satisfies_quadric() && lines.iter().all(|l| s.meets(l)),
                    &format!("instance {i}: solution fails incidence"),
                )?;
            }
        }
    }

    let pts = oracle::random_tetrahedron(&mut oracle::rng(2));
    let (lines, diagonals) = tetrahedron_lines(&pts).map_err(|e| e.to_string())?;
    match lines_meeting_four(&lines).map_err(|e| e.to_string())? {
        SolutionSet::Finite(sols) => {
            check(sols.len() == 2, "tetrahedron: expected two lines")?;
            for (s, m) in &sols {
                check(*m == 1, "tetrahedron: multiplicity != 1")?;
                let l = s.as_rational().ok_or("tetrahedron: irrational solution")?;
                check(diagonals.contains(&l), "tetrahedron: solution is not a diagonal")?;
            }
            check(sols[0].0 != sols[1].0, "tetrahedron: repeated diagonal")?;
        }
        SolutionSet::Infinite => return Err("tetrahedron: infinite".into()),
    }

    check(
        lines_meeting_four(&quadric_ruling_configuration()) == Ok(SolutionSet::Infinite),
        "quadric ruling is not infinite",
    )?;

    let (lines, expect) = tangent_configuration();
    match lines_meeting_four(&lines).map_err(|e| e.to_string())? {
        SolutionSet::Finite(sols) => check(
            sols.len() == 1 && sols[0].1 == 2 && sols[0].0.as_rational().as_ref() == Some(&expect),
            "tangent configuration: expected one double line",
        ),
        SolutionSet::Infinite => Err("tangent configuration: infinite".into()),
    }
}

fn criterion_2() -> Result<(), String> {
    let report = verify_all_formulas();
    let labels: Vec<&str> = report.entries.iter().map(|e| e.label).collect();
    for required in ["1", "2", "3", "4", "5", "6", "7", "8", "9", "10", "11", "12", "13", "14", "I", "II", "III"] {
        check(labels.contains(&required), &format!("formula {required} missing"))?;
    }
    if let Some(f) = report.failures().next() {
        return Err(format!("formula {} fails", f.label));
    }
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run_cli(["schubert", "verify-formulas"], &mut out, &mut err);
    check(code == 0, "verify-formulas exit code != 0")
}

fn criterion_3() -> Result<(), String> {
    for (id, expect) in [(SpaceId::G, vec![1, 1, 2, 1, 1]), (SpaceId::PS, vec![1, 2, 3, 3, 2, 1])] {
        let ring = space(id).ring();
        for (d, want) in expect.iter().enumerate() {
            let rank = ring.graded_basis(d as i64).map_err(|e| e.to_string())?.rank;
            let oracle = common::brute_force_rank(ring.weights(), ring.relations(), d as u32);
            check(rank == *want && oracle == *want, &format!("{id}: rank {rank}/{oracle} in degree {d}, want {want}"))?;
        }
    }
    let g = space(SpaceId::G).ring();
    let c1 = g.generator("c1").map_err(|e| e.to_string())?;
    let c2 = g.generator("c2").map_err(|e| e.to_string())?;
    check((&(&c1.pow(2) * &c2).scale(&big(2)) - &c1.pow(4)).is_zero(), "2c1^2c2 - c1^4 != 0")?;
    check(&c1.pow(2) * &c2 == c2.pow(2), "c1^2c2 != c2^2")
}

fn criterion_4() -> Result<(), String> {
    let p = |t: &[(&[u32], i64)]| Polynomial::from_i64(2, t);
    let c = TotalClass::new(2, vec![Polynomial::var(2, 0), Polynomial::var(2, 1)]);
    let s = invert_total_class(&c, 4);
    check(s.component(1) == p(&[(&[1, 0], -1)]), "y1")?;
    check(s.component(2) == p(&[(&[2, 0], 1), (&[0, 1], -1)]), "y2")?;
    check(s.component(3) == p(&[(&[1, 1], 2), (&[3, 0], -1)]), "y3")?;
    check(s.component(4) == p(&[(&[4, 0], 1), (&[2, 1], -3), (&[0, 2], 1)]), "y4")?;

    // the printed degree-4 class x1^4 - x2^2 + 3x1^2x2 must fail the defining identity
    let printed = TotalClass::new(
        2,
        vec![
            s.component(1),
            s.component(2),
            s.component(3),
            p(&[(&[4, 0], 1), (&[0, 2], -1), (&[2, 1], 3)]),
        ],
    );
    check(product_total_class(&c, &printed, 4) != TotalClass::one(2, 4), "printed y4 satisfies the identity")?;
    check(product_total_class(&c, &s, 4) == TotalClass::one(2, 4), "series y4 fails the identity")?;

    let mut rng = common::rng(40);
    let ring = space(SpaceId::G).ring();
    for _ in 0..100 {
        let a = TotalClass::new(2, (1..=4).map(|d| common::random_homogeneous(ring, d, &mut rng)).collect());
        check(invert_total_class(&invert_total_class(&a, 4), 4) == a, "inversion is not an involution")?;
    }
    Ok(())
}

fn criterion_5() -> Result<(), String> {
    for n in 1..=8 {
        let got = tangent_count(n).map_err(|e| e.to_string())?;
        check(got == big(n * (n - 1)), &format!("tangent_count({n}) = {got}"))?;
        let worked = Polynomial::from_i64(3, &[(&[3, 0, 2], -n), (&[2, 0, 3], n * n + 3 * n)]);
        check(eval_exceptional_polynomial(&worked) == big(n * (n - 1)), "worked evaluation")?;
    }
    let mut rng = oracle::rng(3);
    for n in 1..=3u32 {
        for i in 0..20 {
            let (_, c) = oracle::random_pencil_instance(n, &mut rng);
            check(
                big(c.count as i64) == tangent_count(n as i64).map_err(|e| e.to_string())?,
                &format!("pencil n={n} instance {i}: {} tangents", c.count),
            )?;
        }
    }
    Ok(())
}

fn criterion_6() -> Result<(), String> {
    for n in 1..=8 {
        let d = bitangent_derivation(n).map_err(|e| e.to_string())?;
        check(d.count == big(n * (n - 2) * (n - 3) * (n + 3) / 2), &format!("bitangents for n={n}: {}", d.count))?;
    }
    let d = bitangent_derivation(4).map_err(|e| e.to_string())?;
    check(d.count == big(28), "n=4 is not 28")?;
    let step2 = CondPolynomial::from_expr(&parse("4*p_1*p_3 - 4*g*p_1 + g_e + g_p").map_err(|e| e.to_string())?);
    let step3 = CondPolynomial::from_expr(&parse("4*p_1*p_3*g_e - 4*p_1^3*g - 3*G").map_err(|e| e.to_string())?);
    check(d.doubled_class.term_multisets() == step2.term_multisets(), "2*eps_22 differs")?;
    check(d.times_ge.term_multisets() == step3.term_multisets(), "2*eps_22*g_e differs")
}

fn criterion_7() -> Result<(), String> {
    let table = SegrePushTable::new();
    check(table.render(2) == "1", "push(eps^2) != 1")?;
    check(table.render(3) == "4*t", "push(eps^3) != 4t")?;
    check(table.render(4) == "10*t^2", "push(eps^4) != 10t^2")?;
    check(table.render(5) == "20*t^3", "push(eps^5) != (-1)^5 s_3 = 20t^3")?;
    let t = Polynomial::var(1, 0);
    let s = invert_total_class(&power_of_line_class(&t, 4, 3), 3);
    for k in 2..=5u32 {
        let sign = if k % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        check(table.push(k) == s.component((k - 2) as usize).scale(&sign), &format!("k={k} disagrees with s(TP3)"))?;
    }
    Ok(())
}

fn criterion_8() -> Result<(), String> {
    for id in SpaceId::ALL {
        let ring = space(id).ring();
        let mut rng = common::rng(800 + id as u64);
        for _ in 0..1000 {
            let a = common::random_element(ring, &mut rng);
            let b = common::random_element(ring, &mut rng);
            let c = common::random_element(ring, &mut rng);
            check(&(&a * &b) * &c == &a * &(&b * &c), &format!("{id}: associativity"))?;
            check(&a * &b == &b * &a, &format!("{id}: commutativity"))?;
            check(&a * &(&b + &c) == &(&a * &b) + &(&a * &c), &format!("{id}: distributivity"))?;
            check(&(&a + &b) + &c == &a + &(&b + &c), &format!("{id}: additive associativity"))?;
            check(&a * &ring.one() == a, &format!("{id}: unit"))?;
            check(a.normal_form() == a && ring.element(&a.to_polynomial()) == a, &format!("{id}: idempotence"))?;
        }
    }

    let g = space(SpaceId::G);
    let cls = |s: &str| g.eval_str(s).map_err(|e| e.to_string());
    let basis = [vec!["1"], vec!["g"], vec!["g_p", "g_e"], vec!["g_s"], vec!["G"]];
    for d in 0..=4 {
        let left = basis[d].iter().map(|s| cls(s)).collect::<Result<Vec<_>, _>>()?;
        let right = basis[4 - d].iter().rev().map(|s| cls(s)).collect::<Result<Vec<_>, _>>()?;
        let m = pairing_matrix(&left, &right);
        // the middle degree is self-dual: g_p·g_p = g_e·g_e = 1
        let m: Vec<Vec<BigInt>> = if d == 2 { m.into_iter().map(|r| r.into_iter().rev().collect()).collect() } else { m };
        for (i, row) in m.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                check(*x == if i == j { BigInt::one() } else { BigInt::zero() }, "duality pairing is not the identity")?;
            }
        }
    }

    let ps = space(SpaceId::PS);
    let mut rng = common::rng(801);
    for _ in 0..500 {
        let x = ps.ring().element(&common::random_homogeneous(ps.ring(), 5, &mut rng));
        let pushed = pushforward_ps_to_g(&x).map_err(|e| e.to_string())?;
        check(pushed.evaluate_top() == x.evaluate_top(), "pushforward changes the degree")?;
    }

    let mut rng = common::rng(802);
    for _ in 0..1000 {
        let e = common::random_expr(&mut rng, 5);
        let text = e.to_string();
        check(parse(&text).as_ref() == Ok(&e), &format!("round trip fails on {text}"))?;
    }
    Ok(())
}

fn main() {
    let criteria: [(&str, fn() -> Result<(), String>); 8] = [
        ("four-lines count", criterion_1),
        ("formula suite", criterion_2),
        ("presentation fidelity", criterion_3),
        ("Segre inversion", criterion_4),
        ("tangent count", criterion_5),
        ("bitangent count", criterion_6),
        ("pushforward table", criterion_7),
        ("property suites", criterion_8),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let result = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        match result {
            Ok(()) => println!("criterion {}: PASS  {name}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
