//! Acceptance suite: one PASS/FAIL line per criterion, all checks exact.

use std::time::Instant;

use num::BigRational;
use oreseries::fields::{BinaryFunctionField, GaloisField, PrimeField, RationalFunctionField, Rationals};
use oreseries::linalg::{self, Matrix};
use oreseries::rational::{self, Verdict};
use oreseries::{
    expand_fraction, make_context, module_action, Error, Field, FieldCtx, LinRep, OreFraction, OrePoly,
    Side, TwistedSeries,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type FnField = RationalFunctionField<PrimeField>;

const FIXTURES: usize = 50;
const PRECISION: usize = 2 * 4 + 5;
const M_MAX: usize = 6;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn galois(spec: &str) -> GaloisField {
    match make_context(spec).unwrap() {
        FieldCtx::Galois(f) => f,
        other => panic!("unexpected context {other}"),
    }
}

fn function_field(spec: &str) -> FnField {
    match make_context(spec).unwrap() {
        FieldCtx::RationalFunctionsP(f) => f,
        other => panic!("unexpected context {other}"),
    }
}

fn binary_field(spec: &str) -> BinaryFunctionField {
    match make_context(spec).unwrap() {
        FieldCtx::Binary(f) => f,
        other => panic!("unexpected context {other}"),
    }
}

fn nonzero<F: Field, R: Rng>(f: &F, rng: &mut R) -> F::Elem {
    loop {
        let x = f.random_elem(rng);
        if !f.is_zero(&x) {
            return x;
        }
    }
}

fn random_poly<F: Field, R: Rng>(f: &F, rng: &mut R, deg: usize) -> OrePoly<F> {
    let mut c: Vec<F::Elem> = (0..deg).map(|_| f.random_elem(rng)).collect();
    c.push(nonzero(f, rng));
    OrePoly::new(f, c)
}

/// P⁻¹Q with deg P, deg Q ≤ 4 and P(0) = 1, kept unreduced as generated.
fn random_fraction<F: Field, R: Rng>(f: &F, rng: &mut R) -> OreFraction<F> {
    let (dp, dq) = (rng.gen_range(0..=4), rng.gen_range(0..=4));
    let mut p = random_poly(f, rng, dp).into_coeffs();
    p[0] = f.one();
    let q = random_poly(f, rng, dq);
    OreFraction::from_parts(OrePoly::new(f, p), q).unwrap()
}

fn fixtures<F: Field>(f: &F, seed: u64) -> Vec<OreFraction<F>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..FIXTURES).map(|_| random_fraction(f, &mut rng)).collect()
}

fn random_matrix<F: Field, R: Rng>(f: &F, rng: &mut R, rows: usize, cols: usize) -> Matrix<F::Elem> {
    (0..rows).map(|_| (0..cols).map(|_| f.random_elem(rng)).collect()).collect()
}

fn random_invertible<F: Field, R: Rng>(f: &F, rng: &mut R, m: usize) -> Matrix<F::Elem> {
    loop {
        let b = random_matrix(f, rng, m, m);
        if linalg::inverse(f, &b).is_some() {
            return b;
        }
    }
}

fn random_rep<F: Field, R: Rng>(f: &F, rng: &mut R, m: usize) -> LinRep<F> {
    let x = random_matrix(f, rng, 1, m).remove(0);
    let y = random_matrix(f, rng, 1, m).remove(0);
    LinRep::new(f, x, random_matrix(f, rng, m, m), y).unwrap()
}

fn left_bound<F: Field>(x: &OreFraction<F>) -> usize {
    let p = x.denominator().degree().unwrap();
    x.numerator().degree().map_or(p, |q| p.max(q + 1))
}

fn golden() -> Check {
    let f = galois("GF(4)[x^2]");
    let a = f.named_constant("a").unwrap();
    let poly = |s: &str| OrePoly::parse(&f, s).unwrap();
    let x = OreFraction::parse(&f, "(1+a*T)^-1*(1)").unwrap();
    let series = expand_fraction(&x, 8).map_err(|e| e.to_string())?;
    ensure!(series.coeffs() == [1, a, 1, a, 1, a, 1, a], "expansion {series}");
    let data = rational::canonical_data(&x).map_err(|e| e.to_string())?;
    let r = &data.minimal_polynomial;
    ensure!(*r == poly("T+a"), "minimal polynomial {r}");
    ensure!(data.rank == 1, "rank {}", data.rank);
    let (p, q) = &data.right_fraction;
    ensure!(p.is_one() && *q == poly("1+a*T"), "right fraction ({p}, {q})");
    ensure!(data.k == 0, "k = {}", data.k);
    ensure!(q.reciprocal(Side::Left).unwrap().shift_up(data.k) == *r, "T^k Q_* differs from R");
    ensure!(r.reciprocal(Side::Right).unwrap() == *q, "R* differs from Q");
    ensure!(data.regular, "not regular");
    let rep = rational::fraction_to_rep(&x).and_then(|r| r.minimize()).map_err(|e| e.to_string())?;
    ensure!(rep.dim() == 1 && rep.a() == &vec![vec![a]], "reduced rep {:?}", rep);
    Ok("F4 fixture exact".into())
}

fn round_trip<F: Field>(fx: &[OreFraction<F>]) -> Result<(), String> {
    for (i, x) in fx.iter().enumerate() {
        let f = expand_fraction(x, PRECISION).map_err(|e| format!("#{i}: {e}"))?;
        let (_, g) = rational::guess_left_denominator(&f, 4).map_err(|e| format!("#{i}: {e}"))?;
        let m = rational::minimal_left_fraction(x).map_err(|e| format!("#{i}: {e}"))?;
        ensure!(
            g.denominator() == m.denominator() && g.numerator() == m.numerator() && g == *x,
            "#{i}: guessed {g}, minimal {m}"
        );
    }
    Ok(())
}

fn kronecker_agreement<F: Field>(fx: &[OreFraction<F>], rank: impl Fn(&OreFraction<F>) -> usize) -> Result<(), String> {
    for (i, x) in fx.iter().enumerate() {
        let f = expand_fraction(x, PRECISION).map_err(|e| e.to_string())?;
        let report = rational::kronecker_test(&f, M_MAX).map_err(|e| format!("#{i}: {e}"))?;
        ensure!(report.verdict == Verdict::Rational, "#{i}: verdict {:?}", report.verdict);
        let r = rank(x);
        for (m, d) in &report.determinants {
            ensure!(*m < r || f.field().is_zero(d), "#{i}: det D_{m} nonzero at rank {r}");
        }
    }
    Ok(())
}

fn squares_unknown() -> Result<(), String> {
    let q = Rationals;
    let coeffs = (0..11i64)
        .map(|n| BigRational::from_integer(([0, 1, 4, 9].contains(&n) as i64).into()))
        .collect();
    let report = rational::kronecker_test(&TwistedSeries::new(&q, coeffs), 5).map_err(|e| e.to_string())?;
    ensure!(report.verdict == Verdict::UnknownAtPrecision, "squares reported rational");
    ensure!(report.determinants.iter().all(|(_, d)| !q.is_zero(d)), "a determinant vanished");
    Ok(())
}

fn rank_equality<F: Field>(fx: &[OreFraction<F>], seed: u64) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for (i, x) in fx.iter().enumerate() {
        let err = |e: Error| format!("#{i}: {e}");
        let f = x.field();
        let deg_r = rational::minimal_polynomial(x).map_err(err)?.degree().unwrap();
        let rank = rational::rank(x).map_err(err)?;
        let (p, q) = rational::minimal_right_fraction(x).map_err(err)?;
        let right = q.degree().unwrap().max(p.degree().map_or(0, |d| d + 1));
        // a padded, scrambled representation of the same series
        let core = rational::fraction_to_rep(x).map_err(err)?;
        let pad = LinRep::new(f, vec![f.zero(); 2], random_matrix(f, &mut rng, 2, 2), random_matrix(f, &mut rng, 1, 2).remove(0))
            .unwrap();
        let b = random_invertible(f, &mut rng, core.dim() + 2);
        let rep = core.sum(&pad).conjugate(&b).map_err(err)?;
        let dim = rep.minimize().map_err(err)?.dim();
        ensure!(
            deg_r == rank && rank == dim && dim == right,
            "#{i}: deg R {deg_r}, rank {rank}, dim {dim}, right {right}"
        );
    }
    Ok(())
}

fn similarity<F: Field>(f: &F, count: usize, seed: u64) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..count {
        let err = |e: Error| format!("#{i}: {e}");
        let m = rng.gen_range(1..=3);
        let r1 = random_rep(f, &mut rng, m).minimize().map_err(err)?;
        let b0 = random_invertible(f, &mut rng, r1.dim());
        let r2 = r1.conjugate(&b0).map_err(err)?;
        let b = r1.similarity_witness(&r2).map_err(err)?;
        let binv = linalg::inverse(f, &b).ok_or(format!("#{i}: witness singular"))?;
        let a2 = linalg::mat_mul(f, &linalg::mat_mul(f, &binv, r1.a()), &linalg::mat_sigma(f, &b, 1).unwrap());
        ensure!(linalg::vec_mat(f, r1.x(), &b) == r2.x(), "#{i}: X equation");
        ensure!(a2 == *r2.a(), "#{i}: A equation");
        ensure!(linalg::mat_vec(f, &binv, r1.y()) == r2.y(), "#{i}: Y equation");
    }
    Ok(())
}

fn hadamard_algebra<F: Field>(f: &F, count: usize, seed: u64) -> Result<usize, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut regular_pairs = 0;
    for i in 0..count {
        let err = |e: Error| format!("#{i}: {e}");
        let (m1, m2) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
        let (r1, r2) = (random_rep(f, &mut rng, m1), random_rep(f, &mut rng, m2));
        let h = r1.hadamard(&r2);
        let (e1, e2) = (r1.expand(12).map_err(err)?, r2.expand(12).map_err(err)?);
        ensure!(h.expand(12).map_err(err)? == e1.hadamard(&e2), "#{i}: expansion");
        let (x1, x2, xh) = (
            r1.to_fraction().map_err(err)?,
            r2.to_fraction().map_err(err)?,
            h.to_fraction().map_err(err)?,
        );
        let (k1, k2, kh) = (
            rational::rank(&x1).map_err(err)?,
            rational::rank(&x2).map_err(err)?,
            rational::rank(&xh).map_err(err)?,
        );
        ensure!(kh <= k1 * k2, "#{i}: rank {kh} > {k1}*{k2}");
        let unit = r1.hadamard(&LinRep::ones(f));
        ensure!(unit.to_fraction().map_err(err)? == x1, "#{i}: unit law");
        let (g1, g2) = (rational::is_regular(&x1).map_err(err)?, rational::is_regular(&x2).map_err(err)?);
        if g1.regular && g2.regular {
            regular_pairs += 1;
            ensure!(rational::is_regular(&xh).map_err(err)?.regular, "#{i}: regularity lost");
        }
    }
    Ok(regular_pairs)
}

fn random_series<F: Field, R: Rng>(f: &F, rng: &mut R, n: usize, unit: bool) -> TwistedSeries<F> {
    let mut c: Vec<F::Elem> = (0..n).map(|_| f.random_elem(rng)).collect();
    if unit {
        c[0] = nonzero(f, rng);
    }
    TwistedSeries::new(f, c)
}

fn same<F: Field>(a: &TwistedSeries<F>, b: &TwistedSeries<F>) -> bool {
    a.precision() == b.precision() && a == b
}

fn shift_calculus<F: Field>(f: &F, count: usize, seed: u64) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = 10;
    for i in 0..count {
        let err = |e: Error| format!("#{i}: {e}");
        let fs = random_series(f, &mut rng, n, false);
        let g = random_series(f, &mut rng, n, false);
        let g0 = f.sigma(g.coeff(0).unwrap());
        let lhs = fs.mul(&g).shift(1).map_err(err)?;
        let rhs = fs.mul(&g.shift(1).map_err(err)?).add(&fs.shift(1).map_err(err)?.scale_right(&g0));
        ensure!(same(&lhs, &rhs), "#{i}: product rule");

        let u = random_series(f, &mut rng, n, true);
        let ui = u.inv().map_err(err)?;
        let c = f.sigma(ui.coeff(0).unwrap());
        let rhs = ui.mul(&u.shift(1).map_err(err)?).scale_right(&c).neg();
        ensure!(same(&ui.shift(1).map_err(err)?, &rhs), "#{i}: inverse rule");

        let lhs = fs.hadamard(&g).shift(1).map_err(err)?;
        ensure!(same(&lhs, &fs.shift(1).unwrap().hadamard(&g.shift(1).unwrap())), "#{i}: Hadamard rule");

        let (d1, d2) = (rng.gen_range(0..=3), rng.gen_range(0..=3));
        let (p1, p2) = (random_poly(f, &mut rng, d1), random_poly(f, &mut rng, d2));
        let lhs = module_action(&p1.mul(&p2), &fs).map_err(err)?;
        let rhs = module_action(&p1, &module_action(&p2, &fs).map_err(err)?).map_err(err)?;
        ensure!(same(&lhs, &rhs), "#{i}: module axiom");
    }
    Ok(())
}

fn regularity<F: Field>(fx: &[OreFraction<F>]) -> Result<(usize, usize), String> {
    let f = fx[0].field();
    let t = OreFraction::from_poly(OrePoly::t(f));
    let mut cases: Vec<OreFraction<F>> = fx.to_vec();
    cases.extend(fx.iter().map(|x| t.mul(x).unwrap()));
    cases.extend(fx.iter().map(|x| OreFraction::from_poly(x.numerator().clone())));
    let (mut yes, mut no) = (0, 0);
    for (i, x) in cases.iter().enumerate() {
        match rational::is_regular(x) {
            Ok(r) if r.regular => yes += 1,
            Ok(_) => no += 1,
            Err(e) => return Err(format!("case {i}: {e}")),
        }
    }
    Ok((yes, no))
}

fn endomorphism_only(fx: &[OreFraction<BinaryFunctionField>]) -> Check {
    let f = fx[0].field();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for i in 0..20 {
        let (a, b) = (random_poly(f, &mut rng, 3), random_poly(f, &mut rng, 2));
        let (q, r) = a.mul(&b).add(&a).right_divmod(&b).map_err(|e| e.to_string())?;
        ensure!(q.mul(&b).add(&r) == a.mul(&b).add(&a), "#{i}: right division");
        ensure!(r.degree().is_none_or(|d| d < 2), "#{i}: remainder degree");
    }
    round_trip(fx)?;
    kronecker_agreement(fx, left_bound)?;
    let x = &fx[0];
    ensure!(rational::minimal_polynomial(x) == Err(Error::RequiresAutomorphism), "minpoly ran");
    ensure!(rational::rank(x) == Err(Error::RequiresAutomorphism), "rank ran");
    let rep = LinRep::ones(f);
    ensure!(rep.minimize() == Err(Error::RequiresAutomorphism), "minimize ran");
    Ok(format!("{} fixtures over {}", fx.len(), f.spec()))
}

fn main() {
    let start = Instant::now();
    let q = Rationals;
    let g4 = galois("GF(4)[x^2]");
    let f5 = function_field("GF(5)(t)[t->t+1]");
    let f2 = binary_field("GF(2)(t)[t->t^2]");
    let (fq, fg, ff, f2x) = (fixtures(&q, 1), fixtures(&g4, 2), fixtures(&f5, 3), fixtures(&f2, 4));

    let criteria: Vec<(&str, Box<dyn Fn() -> Check + '_>)> = vec![
        ("F4 golden fixture", Box::new(golden)),
        (
            "rationality round-trip",
            Box::new(|| {
                round_trip(&fq)?;
                round_trip(&fg)?;
                round_trip(&ff)?;
                Ok(format!("{} fixtures", 3 * FIXTURES))
            }),
        ),
        (
            "Kronecker agreement",
            Box::new(|| {
                kronecker_agreement(&fq, |x| rational::rank(x).unwrap())?;
                kronecker_agreement(&fg, |x| rational::rank(x).unwrap())?;
                kronecker_agreement(&ff, |x| rational::rank(x).unwrap())?;
                squares_unknown()?;
                Ok("150 fixtures rational, squares unknown".into())
            }),
        ),
        (
            "four-way rank equality",
            Box::new(|| {
                rank_equality(&fq, 11)?;
                rank_equality(&fg, 12)?;
                rank_equality(&ff, 13)?;
                Ok("150 fixtures".into())
            }),
        ),
        (
            "sigma-similarity",
            Box::new(|| {
                similarity(&q, 7, 21)?;
                similarity(&g4, 7, 22)?;
                similarity(&f5, 6, 23)?;
                Ok("20 conjugated pairs".into())
            }),
        ),
        (
            "Hadamard algebra",
            Box::new(|| {
                let n = hadamard_algebra(&q, 10, 31)?
                    + hadamard_algebra(&g4, 10, 32)?
                    + hadamard_algebra(&f5, 10, 33)?;
                ensure!(n > 0, "no regular pairs exercised");
                Ok(format!("30 pairs, {n} regular"))
            }),
        ),
        (
            "shift calculus",
            Box::new(|| {
                shift_calculus(&q, 34, 41)?;
                shift_calculus(&g4, 33, 42)?;
                shift_calculus(&f5, 33, 43)?;
                Ok("100 instances per identity".into())
            }),
        ),
        (
            "regularity tri-equivalence",
            Box::new(|| {
                let (mut yes, mut no) = regularity(&fq)?;
                for (y, n) in [regularity(&fg)?, regularity(&ff)?] {
                    yes += y;
                    no += n;
                }
                ensure!(yes > 0 && no > 0, "one side of the equivalence never exercised");
                Ok(format!("{yes} regular, {no} non-regular"))
            }),
        ),
        ("endomorphism-only path", Box::new(|| endomorphism_only(&f2x))),
    ];

    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = run();
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name} ({detail}; {secs:.2}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why} ({secs:.2}s)", i + 1);
            }
        }
    }
    println!("total {:.2}s", start.elapsed().as_secs_f64());
    if failed > 0 {
        std::process::exit(1);
    }
}
