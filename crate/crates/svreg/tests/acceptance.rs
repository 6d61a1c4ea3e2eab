//! Acceptance suite: one test per criterion, each printing a pass/fail line
//! (run with `cargo test --test acceptance -- --nocapture` to see them all).

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use svreg::field::{FieldElement, Place};
use svreg::manifest::parse_expr;
use num_traits::Zero;
use svreg::poly::{q_int, q_ratio, Poly, Q};
use svreg::polylog::{p_mod_value, p_zag_value, SpherePoint};
use svreg::regulator::{self, StandardIntegral};
use svreg::relations::{self, AuxKind, VerifyMode};
use svreg::symbols::{
    self, correction_form::cancellation_check, ChainElement, RelationPool, SymbolTerm, Variant,
};

fn report(criterion: &str, pass: bool, detail: String) {
    println!(
        "criterion {:<38} {}  {}",
        criterion,
        if pass { "PASS" } else { "FAIL" },
        detail
    );
    assert!(pass, "criterion {criterion} failed: {detail}");
}

fn random_z(rng: &mut ChaCha8Rng, rmin: f64, rmax: f64) -> Complex64 {
    let r = rmin * (rmax / rmin).powf(rng.gen::<f64>());
    let theta = rng.gen::<f64>() * 2.0 * std::f64::consts::PI;
    Complex64::from_polar(r, theta)
}

fn t() -> FieldElement {
    FieldElement::var()
}

fn t_minus(a: i64) -> FieldElement {
    FieldElement::build(&q_int(1), &[(Poly::from_ints(&[-a, 1]), q_int(1))]).unwrap()
}

fn rat(n: i64, d: i64) -> FieldElement {
    FieldElement::from_rational(&q_ratio(n, d)).unwrap()
}

#[test]
fn criterion_01_inversion_functional_equation() {
    let started = std::time::Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let z = random_z(&mut rng, 0.05, 20.0);
        for n in 2..=5u32 {
            let a = p_mod_value(n, SpherePoint::Finite(z)).unwrap();
            let b = p_mod_value(n, SpherePoint::Finite(z.inv())).unwrap();
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            worst = worst.max((a + sign * b).norm());
        }
    }
    let elapsed = started.elapsed();
    report(
        "01 inversion n=2..5",
        worst < 1e-10 && elapsed.as_secs() < 10,
        format!("max residual {worst:.3e} in {} ms", elapsed.as_millis()),
    );
}

#[test]
fn criterion_02_weight3_log_correction() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst: f64 = 0.0;
    for _ in 0..500 {
        let z = random_z(&mut rng, 0.05, 15.0);
        if (z - Complex64::new(1.0, 0.0)).norm() < 1e-3 {
            continue;
        }
        let zag = p_zag_value(3, z).unwrap();
        let pmod = p_mod_value(3, SpherePoint::Finite(z)).unwrap();
        let corr = z.norm().ln().powi(2) * (Complex64::new(1.0, 0.0) - z).norm().ln() / 6.0;
        worst = worst.max((zag - pmod + corr).norm());
    }
    report(
        "02 weight-3 log correction",
        worst < 1e-10,
        format!("max residual {worst:.3e}"),
    );
}

#[test]
fn criterion_03_zag_to_mod_expansion() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst: f64 = 0.0;
    for _ in 0..500 {
        let z = random_z(&mut rng, 0.05, 15.0);
        if (z - Complex64::new(1.0, 0.0)).norm() < 1e-3 {
            continue;
        }
        let l = z.norm().ln();
        for n in 2..=5u32 {
            let zag = p_zag_value(n, z).unwrap();
            let mut acc = Complex64::new(0.0, 0.0);
            let mut j = 0;
            while 2 * j < n {
                let mut fact = 1.0;
                for m in 2..=(2 * j + 1) {
                    fact *= m as f64;
                }
                acc += l.powi(2 * j as i32) / fact
                    * p_mod_value(n - 2 * j, SpherePoint::Finite(z)).unwrap();
                j += 1;
            }
            worst = worst.max((zag - acc).norm());
        }
    }
    report(
        "03 Zag-to-mod n=2..5",
        worst < 1e-10,
        format!("max residual {worst:.3e}"),
    );
}

#[test]
fn criterion_04_pzag_differential() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let h = 1e-5;
    let mut worst: f64 = 0.0;
    for n in 2..=4u32 {
        let mut taken = 0;
        while taken < 50 {
            let z = random_z(&mut rng, 0.15, 6.0);
            if (z - Complex64::new(1.0, 0.0)).norm() < 0.2 || z.norm() < 0.15 {
                continue;
            }
            taken += 1;
            let fx = (p_zag_value(n, z + Complex64::new(h, 0.0)).unwrap()
                - p_zag_value(n, z - Complex64::new(h, 0.0)).unwrap())
                / (2.0 * h);
            let fy = (p_zag_value(n, z + Complex64::new(0.0, h)).unwrap()
                - p_zag_value(n, z - Complex64::new(0.0, h)).unwrap())
                / (2.0 * h);
            // expected: P_(n-1),Zag d i arg z + (-1)^n log^(n-1)|z|/(n-1)! pi_(n-1) dlog(1-z)
            let pz = p_zag_value(n - 1, z).unwrap();
            let (x, y) = (z.re, z.im);
            let r2 = x * x + y * y;
            let i = Complex64::new(0.0, 1.0);
            let u = -1.0 / (Complex64::new(1.0, 0.0) - z);
            let mut fact = 1.0;
            for m in 2..n {
                fact *= m as f64;
            }
            let sgn = if n % 2 == 0 { 1.0 } else { -1.0 };
            let coef = sgn * z.norm().ln().powi(n as i32 - 1) / fact;
            let proj = |w: Complex64| -> Complex64 {
                if (n - 1) % 2 == 0 {
                    Complex64::new(w.re, 0.0)
                } else {
                    Complex64::new(0.0, w.im)
                }
            };
            let rx = pz * i * (-y / r2) + coef * proj(u);
            let ry = pz * i * (x / r2) + coef * proj(i * u);
            let err = ((fx - rx).norm() / rx.norm().max(1e-8))
                .max((fy - ry).norm() / ry.norm().max(1e-8));
            worst = worst.max(err);
        }
    }
    report(
        "04 P_n,Zag differential",
        worst < 1e-5,
        format!("max relative FD error {worst:.3e}"),
    );
}

#[test]
fn criterion_05_five_term() {
    // symbolic certificates at the three catalogued parameter pairs
    let pairs = vec![
        (t(), rat(1, 2)),
        (t(), t()),
        (t(), rat(-3, 1)),
    ];
    let mut sym_ok = true;
    for (x, y) in &pairs {
        let r = relations::five_term(x, y).unwrap();
        sym_ok &= relations::symbolic_certificate(&r.terms, 2).unwrap();
    }
    // numeric five-term sum at 500 random complex pairs
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst: f64 = 0.0;
    let mut taken = 0;
    while taken < 500 {
        let x = random_z(&mut rng, 0.05, 5.0);
        let y = random_z(&mut rng, 0.05, 5.0);
        if (x * y - Complex64::new(1.0, 0.0)).norm() < 1e-2 {
            continue;
        }
        match relations::five_term_dsum(x, y) {
            Ok(v) => {
                worst = worst.max(v);
                taken += 1;
            }
            Err(_) => continue,
        }
    }
    // the auxiliary relations, both modes
    let mut aux_ok = true;
    for kind in [AuxKind::Inversion, AuxKind::OneMinus, AuxKind::Duplication] {
        for x in [t(), t_minus(3), rat(2, 1), rat(5, 7)] {
            let r = relations::aux_relation(kind, &x).unwrap();
            let v = relations::verify_relation(&r, 2, VerifyMode::Both, 1e-9).unwrap();
            aux_ok &= v.pass;
        }
    }
    report(
        "05 five-term + auxiliaries",
        sym_ok && worst < 1e-9 && aux_ok,
        format!("symbolic {sym_ok}, numeric max {worst:.3e}, aux {aux_ok}"),
    );
}

#[test]
fn criterion_06_goncharov_22() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut worst: f64 = 0.0;
    let mut taken = 0;
    while taken < 100 {
        let pick = |rng: &mut ChaCha8Rng| -> f64 {
            let num = rng.gen_range(-12i64..=12);
            let den = rng.gen_range(1i64..=6);
            num as f64 / den as f64
        };
        let (a1, a2, a3) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
        if a1.abs() < 1e-9 || a2.abs() < 1e-9 || a3.abs() < 1e-9 {
            continue;
        }
        match relations::goncharov_psum(a1, a2, a3) {
            Ok(v) if v.is_finite() => {
                worst = worst.max(v);
                taken += 1;
            }
            _ => continue,
        }
    }
    let r = relations::goncharov_22([&t(), &rat(2, 1), &rat(3, 1)]).unwrap();
    let sym = relations::symbolic_certificate(&r.terms, 3).unwrap();
    report(
        "06 22-term relation",
        worst < 1e-8 && sym,
        format!("numeric max {worst:.3e} over 100 triples, symbolic(t,2,3) {sym}"),
    );
}

#[test]
fn criterion_07_family_constancy() {
    let five = relations::five_term(&t(), &rat(1, 2)).unwrap();
    let v2 = regulator::constancy_check(&five.terms, 2, 100, 1e-8).unwrap();
    let gon = relations::goncharov_22([&t(), &rat(2, 1), &rat(3, 1)]).unwrap();
    let v3 = regulator::constancy_check(&gon.terms, 3, 100, 1e-8).unwrap();
    report(
        "07 certified-family constancy",
        v2.pass && v3.pass,
        format!(
            "five-term dev {:.3e}, goncharov dev {:.3e}",
            v2.residual.unwrap_or(0.0),
            v3.residual.unwrap_or(0.0)
        ),
    );
}

#[test]
fn criterion_08_standard_integrals() {
    let started = std::time::Instant::now();
    let c = Complex64::new(2.0, 0.0);
    let v1 = regulator::standard_integral(StandardIntegral::DiargDlog, c).unwrap();
    let v2 = regulator::standard_integral(StandardIntegral::DiargDiarg, c).unwrap();
    let v3 = regulator::standard_integral(StandardIntegral::Bump, c).unwrap();
    let elapsed = started.elapsed();
    report(
        "08 standard integrals",
        v1.pass && v2.pass && v3.pass && elapsed.as_secs() < 60,
        format!(
            "diarg-dlog {}, diarg-diarg {}, bump {} in {} ms",
            v1.pass,
            v2.pass,
            v3.pass,
            elapsed.as_millis()
        ),
    );
}

#[test]
fn criterion_09_boundary_residue() {
    let started = std::time::Instant::now();
    // single term at its pole place: matches -6 P_3^mod(3)
    let e1 = ChainElement::degree2(4, Variant::MTilde, vec![(q_int(1), t(), t_minus(3))]).unwrap();
    let x3 = Place::Rational(q_int(3));
    let v1 = regulator::verify_boundary(&e1, &x3, 1e-4, 1e-12).unwrap();
    // [t]_3 (x) t at t = 0: both sides vanish
    let e2 = ChainElement::degree2(4, Variant::MTilde, vec![(q_int(1), t(), t())]).unwrap();
    let x0 = Place::Rational(q_int(0));
    let v2 = regulator::verify_boundary(&e2, &x0, 1e-6, 1e-12).unwrap();
    // the inversion pair cancels at t = 3
    let e3 = ChainElement::degree2(
        4,
        Variant::MTilde,
        vec![
            (q_int(1), t(), t_minus(3)),
            (q_int(1), t().invert(), t().div(&t_minus(3))),
        ],
    )
    .unwrap();
    let v3 = regulator::verify_boundary(&e3, &x3, 1e-4, 1e-12).unwrap();
    // negative control: factor 5 instead of 6 must fail
    let v4 = regulator::verify_boundary_with_factor(&e1, &x3, 1e-4, -5.0, 1e-12).unwrap();
    let elapsed = started.elapsed();
    report(
        "09 boundary residue",
        v1.pass && v2.pass && v3.pass && !v4.pass && elapsed.as_secs() < 60,
        format!(
            "single {}, zero {}, inversion-pair {}, negative-control-fails {} in {} ms",
            v1.pass,
            v2.pass,
            v3.pass,
            !v4.pass,
            elapsed.as_millis()
        ),
    );
}

#[test]
fn criterion_10_integrand_inversion_vanishing() {
    let mut ok = true;
    let mut worst: f64 = 0.0;
    for n in 2..=4u32 {
        let v = regulator::inversion_vanish_check(&t(), &t_minus(3), n, 100, 1e-12).unwrap();
        ok &= v.pass;
        worst = worst.max(v.residual.unwrap_or(0.0));
    }
    report(
        "10 integrand inversion vanishing",
        ok,
        format!("max pointwise residual {worst:.3e}"),
    );
}

#[test]
fn criterion_11_symbolic_suites() {
    // d.d = 0 on 100 randomized elements, exact
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let args = [t(), t_minus(1), t_minus(3), t_minus(-2), rat(2, 1), rat(3, 1)];
    let wedges = [t(), t_minus(1), t_minus(3), t_minus(-2)];
    let mut dd_ok = true;
    for i in 0..100 {
        let variant = if i % 2 == 0 { Variant::M } else { Variant::MTilde };
        let weight = 3 + (i % 3) as u32;
        let degree = 1 + (i as u32 % weight.saturating_sub(2).max(1));
        let order = match ChainElement::expected_order(weight, degree, variant) {
            Some(o) if degree + 2 <= weight => o,
            _ => continue,
        };
        let wlen = ChainElement::expected_wedge_len(weight, degree, variant);
        let mut terms = vec![];
        for _ in 0..3 {
            let arg = args[rng.gen_range(0..args.len())].clone();
            let mut wedge = vec![];
            for _ in 0..wlen {
                wedge.push(wedges[rng.gen_range(0..wedges.len())].clone());
            }
            terms.push(SymbolTerm::new(
                q_int(rng.gen_range(-3i64..=3)),
                order,
                arg,
                wedge,
            ));
        }
        let e = ChainElement::new(weight, degree, variant, terms).unwrap();
        dd_ok &= e.differential().unwrap().differential().unwrap().is_zero();
    }

    // identity suite on every solver cocycle from a 10-term pool
    let pool_args: Vec<FieldElement> = vec![
        t(),
        t().invert(),
        t_minus(1),
        t_minus(3),
        t_minus(-2),
        t_minus(1).invert(),
    ];
    let pool_wedges: Vec<FieldElement> = vec![
        t(),
        t_minus(1),
        t_minus(3),
        t().div(&t_minus(3)),
        t_minus(-2),
    ];
    let mut terms = vec![];
    for i in 0..10 {
        terms.push(SymbolTerm::new(
            q_int(1),
            3,
            pool_args[i % pool_args.len()].clone(),
            vec![pool_wedges[(i * 3 + 1) % pool_wedges.len()].clone()],
        ));
    }
    let empty = RelationPool::default();
    let kernel = symbols::solve_cocycles(4, Variant::MTilde, &terms, &empty).unwrap();
    let mut suite_ok = !kernel.is_empty();
    for e in &kernel {
        suite_ok &= symbols::identity_suite(e).unwrap().pass;
    }

    // the correction-form cancellation for n = 2..6
    let mut l419_ok = true;
    for n in 2..=6 {
        l419_ok &= cancellation_check(n).pass;
    }

    // principal divisors have degree zero on 100 random elements
    let mut div_ok = true;
    for _ in 0..100 {
        let mut f = rat(rng.gen_range(1i64..=20), rng.gen_range(1i64..=9));
        for _ in 0..3 {
            let g = args[rng.gen_range(0..args.len())].clone();
            let e = q_int(rng.gen_range(-3i64..=3));
            f = FieldElement::group_op(&f, &q_int(1), &g, &e);
        }
        let mut total = Q::zero();
        for (p, _) in f.factors() {
            let place = Place::from_poly(p).unwrap();
            total += f.order_at(&place) * q_int(place.degree() as i64);
        }
        total += f.order_at(&Place::Infinity);
        div_ok &= total.is_zero();
    }

    report(
        "11 symbolic suites",
        dd_ok && suite_ok && l419_ok && div_ok,
        format!(
            "d.d {}, identity suite on {} cocycles {}, correction form {}, divisor degree {}",
            dd_ok,
            kernel.len(),
            suite_ok,
            l419_ok,
            div_ok
        ),
    );
}

#[test]
fn criterion_12_equality_oracle_consistency() {
    // boundary identically zero
    let e1 = ChainElement::degree2(4, Variant::MTilde, vec![(q_int(1), t(), t())]).unwrap();
    let v1 = e1.is_global(1e-8, 1e-12).unwrap();
    // zero by the inversion functional equation
    let e2 = ChainElement::degree2(
        4,
        Variant::MTilde,
        vec![
            (q_int(1), t(), t_minus(3)),
            (q_int(1), t().invert(), t().div(&t_minus(3))),
        ],
    )
    .unwrap();
    let v2 = e2.is_global(1e-8, 1e-12).unwrap();
    // nonzero: the residual is the Bloch-Wigner value at the primitive sixth
    // root of unity, |D| = 1.0149416064096537
    let w6 = parse_expr("t^2-t+1").unwrap();
    let e3 = ChainElement::degree2(3, Variant::MTilde, vec![(q_int(1), t(), w6)]).unwrap();
    let v3 = e3.is_global(1e-8, 1e-12).unwrap();
    let resid = v3.residual.unwrap_or(0.0);
    let oracle = 1.0149416064096537;
    report(
        "12 equality-oracle consistency",
        v1.pass && v2.pass && !v3.pass && (resid - oracle).abs() < 1e-6,
        format!(
            "zero {}, inversion-zero {}, nonzero residual {resid:.10} vs oracle {oracle:.10}",
            v1.pass, v2.pass
        ),
    );
}

#[test]
fn criterion_13_determinant() {
    let i = Complex64::new(0.0, 1.0);
    let two_pi_i = Complex64::new(0.0, 2.0 * std::f64::consts::PI);
    // 1x1 exact
    let n = 2u32;
    let q = 0.375;
    let (val, resid) = regulator::regulator_determinant(
        &[vec![two_pi_i.powu(n) * i * q]],
        &[vec![i]],
        n,
    )
    .unwrap();
    let ok1 = (val - q).abs() < 1e-12 && resid.abs() < 1e-12;
    // diagonal exact
    let d1 = Complex64::new(0.0, 2.0);
    let d2 = Complex64::new(0.0, -3.0);
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let (val2, _) = regulator::regulator_determinant(
        &[vec![d1, zero], vec![zero, d2]],
        &[vec![one, zero], vec![zero, one]],
        1,
    )
    .unwrap();
    let expect2 = (d1 * d2 / two_pi_i.powu(2)).re;
    let ok2 = (val2 - expect2).abs() < 1e-12;
    // multilinear scaling law
    let lambda = 7.0 / 3.0;
    let (val3, _) = regulator::regulator_determinant(
        &[vec![d1 * lambda, zero], vec![zero, d2 * lambda]],
        &[vec![one, zero], vec![zero, one]],
        1,
    )
    .unwrap();
    let ok3 = (val3 - lambda * lambda * val2).abs() < 1e-12;
    report(
        "13 regulator determinant",
        ok1 && ok2 && ok3,
        format!("1x1 {ok1}, diagonal {ok2}, scaling {ok3}"),
    );
}
