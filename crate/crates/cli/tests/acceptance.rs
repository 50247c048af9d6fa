//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use cyclotorsion::cyclotomic::{conductor_reduce, lcm, totient};
use cyclotorsion::fixtures;
use cyclotorsion::polytope::{minkowski_sum, newton, toric_bezout_bound};
use cyclotorsion::torsion::{
    bound_torsion, brute_force_torsion, conjugacy_witness, distribute, enumerate_torsion,
    torus_intersection_count,
};
use cyclotorsion::{
    CycloNum, EnumerationResult, Error, FamilyCase, MobiusMap, RootOfUnity, TorsionPoint,
    TorusCurve,
};
use cyclotorsion_cli::app::{verify, Example, GlobalArgs};
use cyclotorsion_cli::parse::parse_matrix;
use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

type Check = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Check + 'a>);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn fail<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn golden(level: u64, list: &[(i64, i64)]) -> Vec<TorsionPoint> {
    let mut v: Vec<_> = list
        .iter()
        .map(|&(j, k)| TorsionPoint::from_exponents(level, j, k).unwrap())
        .collect();
    v.sort();
    v
}

fn reproduction(which: Example, level: u64, list: &[(i64, i64)], limit: Duration) -> Check {
    let start = Instant::now();
    let v = verify(&GlobalArgs::default(), which).map_err(fail)?;
    let took = start.elapsed();
    ensure!(
        v.points == 14 && v.points_match,
        "found {} points, golden set match {}",
        v.points,
        v.points_match
    );
    let Some(pts) = v.document.points.as_ref() else {
        return Err("no points in report".into());
    };
    let got: Vec<TorsionPoint> = pts
        .iter()
        .map(|p| TorsionPoint::from_exponents(p.n, p.x as i64, p.y as i64).unwrap())
        .collect();
    let mut got_sorted = got.clone();
    got_sorted.sort();
    ensure!(
        got_sorted == golden(level, list),
        "reported points differ from the golden list"
    );
    ensure!(took < limit, "took {took:?}");
    Ok(format!(
        "14 points, exact match, {:.2}s",
        took.as_secs_f64()
    ))
}

fn sizes(t: &cyclotorsion::DistributionTable) -> Vec<usize> {
    t.rows.iter().map(|r| r.points.len()).collect()
}

fn distributions() -> Check {
    let g1 = distribute(&fixtures::gamma1().graph_curve()).map_err(fail)?;
    ensure!(
        sizes(&g1) == [0, 0, 2, 4, 4, 4, 4],
        "first example sizes {:?}",
        sizes(&g1)
    );
    let mut mult: BTreeMap<TorsionPoint, Vec<String>> = BTreeMap::new();
    for r in &g1.rows {
        for p in &r.points {
            mult.entry(*p).or_default().push(r.label.clone());
        }
    }
    let triple: Vec<_> = mult.iter().filter(|(_, v)| v.len() > 1).collect();
    ensure!(
        triple.len() == 2,
        "{} points lie on several members",
        triple.len()
    );
    for (p, members) in &triple {
        ensure!(
            golden(30, &[(3, 9), (18, 24)]).contains(p) && members.as_slice() == ["f3", "f4", "f7"],
            "{p} lies on {members:?}"
        );
    }
    ensure!(
        g1.incidences() == 18 && g1.distinct().len() == 14,
        "incidences {}, distinct {}",
        g1.incidences(),
        g1.distinct().len()
    );

    let g2 = distribute(&fixtures::gamma2().graph_curve()).map_err(fail)?;
    ensure!(
        sizes(&g2) == [0, 0, 2, 4, 2, 2, 4],
        "second example sizes {:?}",
        sizes(&g2)
    );
    ensure!(
        g2.incidences() == 14 && g2.distinct().len() == 14,
        "second example points are not distinct"
    );
    let extra: Vec<usize> = g2.rows.iter().map(|r| r.nontorsion).collect();
    ensure!(
        extra == [0, 0, 0, 0, 2, 2, 0],
        "non-torsion counts {extra:?}"
    );
    for (table, level, rows) in [
        (&g1, 30, fixtures::S1_DISTRIBUTION),
        (&g2, 60, fixtures::S2_DISTRIBUTION),
    ] {
        for (r, &(_, pts, _)) in table.rows.iter().zip(rows) {
            ensure!(
                r.points == golden(level, pts),
                "member {} differs from the golden table",
                r.label
            );
        }
    }
    Ok("sizes, multiplicities and non-torsion counts match".into())
}

fn total_of(f: &TorusCurve) -> Result<Option<u64>, String> {
    Ok(bound_torsion(f).map_err(fail)?.total)
}

fn bounds(corpus: &[TorusCurve]) -> Check {
    for (gamma, n) in [(fixtures::gamma1(), 5), (fixtures::gamma2(), 15)] {
        let b = bound_torsion(&gamma.graph_curve()).map_err(fail)?;
        ensure!(
            b.case == FamilyCase::IV && b.conductor == n && b.total == Some(18),
            "{:?} N={} total {:?}",
            b.case,
            b.conductor,
            b.total
        );
    }
    let quartic = parse_matrix("order = 4\na = 1 + z\nb = 2\nc = 1\nd = 3 - z\n")
        .map_err(fail)?
        .graph_curve();
    let b = bound_torsion(&quartic).map_err(fail)?;
    ensure!(
        b.case == FamilyCase::V && b.conductor == 4 && b.total == Some(10),
        "quartic case {:?} total {:?}",
        b.case,
        b.total
    );

    let mut checked = 0;
    for f in corpus.iter().chain([
        &fixtures::gamma1().graph_curve(),
        &fixtures::gamma2().graph_curve(),
        &quartic,
    ]) {
        let EnumerationResult::Finite(pts) = enumerate_torsion(f).map_err(fail)? else {
            continue;
        };
        let Some(total) = total_of(f)? else {
            return Err(format!("finite curve without a total: {f}"));
        };
        ensure!(
            pts.len() as u64 <= total,
            "{} points exceed bound {} on {f}",
            pts.len(),
            total
        );
        checked += 1;
    }
    Ok(format!(
        "18, 18, 10; counts within bounds on {checked} curves"
    ))
}

fn random_num(rng: &mut ChaCha8Rng, level: u64) -> CycloNum {
    let coords: Vec<i64> = (0..totient(level)).map(|_| rng.gen_range(-2..=2)).collect();
    CycloNum::from_int_coords(level, &coords).unwrap()
}

fn random_curve(rng: &mut ChaCha8Rng, level: u64) -> Option<TorusCurve> {
    let mut terms = Vec::new();
    for i in 0..=2 {
        for j in 0..=2 {
            if rng.gen_bool(0.45) {
                terms.push(((i, j), random_num(rng, level)));
            }
        }
    }
    TorusCurve::new(terms).ok().filter(|c| c.terms().len() >= 2)
}

fn toric_property() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let levels = [1, 3, 4, 5, 7, 8, 9, 12];
    let (mut pairs, mut tight, mut skipped) = (0, 0, 0);
    while pairs < 200 {
        let level = levels[rng.gen_range(0..levels.len())];
        let (Some(f), Some(g)) = (random_curve(&mut rng, level), random_curve(&mut rng, level))
        else {
            continue;
        };
        ensure!(lcm(f.level(), g.level()) <= 12, "conductor above 12");
        let count = match torus_intersection_count(&f, &g) {
            Ok(c) => c,
            Err(Error::CommonComponent) => {
                skipped += 1;
                continue;
            }
            Err(e) => return Err(e.to_string()),
        };
        let bound = toric_bezout_bound(&f, &g);
        ensure!(
            Rational64::from_integer(count as i64) <= bound,
            "{count} > {bound} for {f} and {g}"
        );
        tight += usize::from(Rational64::from_integer(count as i64) == bound);
        pairs += 1;
    }

    let mut bilinear = vec![
        fixtures::gamma1().graph_curve(),
        fixtures::gamma2().graph_curve(),
    ];
    while bilinear.len() < 12 {
        let level = [1, 3, 5, 7][rng.gen_range(0..4)];
        let m = MobiusMap::new(
            random_num(&mut rng, level),
            random_num(&mut rng, level),
            random_num(&mut rng, level),
            random_num(&mut rng, level),
        );
        if let Ok(m) = m {
            let f = m.graph_curve();
            if f.terms().len() == 4 && f.level() % 2 == 1 {
                bilinear.push(f);
            }
        }
    }
    let mut family_pairs = 0;
    for f in &bilinear {
        let fam = cyclotorsion::curves::conjugate_family(f, f.level()).map_err(fail)?;
        for (label, g) in &fam.members {
            let count = match torus_intersection_count(f, g) {
                Ok(c) => c,
                Err(Error::CommonComponent) => continue,
                Err(e) => return Err(e.to_string()),
            };
            let bound = toric_bezout_bound(f, g);
            ensure!(
                Rational64::from_integer(count as i64) <= bound,
                "{label}: {count} > {bound} for {f}"
            );
            family_pairs += 1;
        }
        for (label, g) in &fam.members[3..] {
            let (p, q) = (newton(f), newton(g));
            let sum = minkowski_sum(&p, &q);
            let parts = (sum.area(), p.area(), q.area());
            ensure!(
                parts == (9.into(), 1.into(), 4.into()),
                "{label}: areas {parts:?}"
            );
            ensure!(
                toric_bezout_bound(f, g) == 4.into(),
                "{label}: bound {}",
                toric_bezout_bound(f, g)
            );
        }
    }
    Ok(format!(
        "{pairs} random pairs ({tight} tight, {skipped} non-coprime skipped), {family_pairs} family pairs; \
         9 - 1 - 4 = 4 on {} bilinear curves",
        bilinear.len()
    ))
}

fn root(n: u64, k: i64) -> RootOfUnity {
    RootOfUnity::new(n, k).unwrap()
}

/// Random graph curves over Q(ζ_N); every other one is forced through a
/// torsion point of order dividing lcm(N, 2).
fn oracle_corpus() -> Vec<TorusCurve> {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut out = Vec::new();
    while out.len() < 60 {
        let level = [1, 3, 4, 5][out.len() % 4];
        let [a, mut b, c, d] = [0; 4].map(|_| random_num(&mut rng, level));
        if out.len() % 2 == 1 {
            let m = lcm(level, 2);
            let x0 = CycloNum::root_of_unity(root(m, rng.gen_range(0..m as i64)), level).unwrap();
            let y0 = CycloNum::root_of_unity(root(m, rng.gen_range(0..m as i64)), level).unwrap();
            b = (&c * &x0 + &d) * &y0 - &a * &x0;
        }
        let Ok(g) = MobiusMap::new(a, b, c, d) else {
            continue;
        };
        let f = g.graph_curve();
        let rank = cyclotorsion::polytope::difference_lattice(&f).rank;
        if rank == 2 && !g.in_h() && f.level() == level {
            out.push(f);
        }
    }
    out
}

fn oracle_equivalence(corpus: &[TorusCurve]) -> Check {
    let start = Instant::now();
    let results: Vec<Result<usize, String>> = corpus
        .par_iter()
        .map(|f| {
            let EnumerationResult::Finite(found) = enumerate_torsion(f).map_err(fail)? else {
                return Err(format!("infinite on {f}"));
            };
            let brute = brute_force_torsion(f, 240).map_err(fail)?;
            ensure!(
                found == brute,
                "{f}: enumerate {} points, oracle {}",
                found.len(),
                brute.len()
            );
            Ok(found.len())
        })
        .collect();
    let mut total = 0;
    for r in results {
        total += r?;
    }
    let took = start.elapsed();
    ensure!(took < Duration::from_secs(600), "took {took:?}");
    Ok(format!(
        "{} curves, {total} points, {:.1}s",
        corpus.len(),
        took.as_secs_f64()
    ))
}

fn dichotomy() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for i in 0..60 {
        let mut g = MobiusMap::identity();
        for _ in 0..rng.gen_range(1..=3) {
            let n = rng.gen_range(1..=12);
            let r = root(n, rng.gen_range(0..n as i64));
            let step = if rng.gen_bool(0.5) {
                MobiusMap::rotation(r)
            } else {
                MobiusMap::reflection(r)
            };
            g = g.compose(&step).map_err(fail)?;
        }
        ensure!(g.in_h(), "composite {i} left H");
        let f = g.graph_curve();
        let EnumerationResult::Infinite(w) = enumerate_torsion(&f).map_err(fail)? else {
            return Err(format!("finite enumeration for {g}"));
        };
        for k in 0..12 {
            let x = CycloNum::root_of_unity(root(12, k), lcm(g.level(), 12)).unwrap();
            let Some(y) = g.image(&x).map_err(fail)? else {
                continue;
            };
            let y = y
                .as_root_of_unity()
                .ok_or_else(|| format!("{g} sent a root of unity off the circle"))?;
            let p = TorsionPoint::new(root(12, k), y);
            ensure!(
                w.contains(&p) && f.vanishes_at(p.x, p.y).map_err(fail)?,
                "{p} not on witness {w}"
            );
        }
    }
    for g in [fixtures::gamma1(), fixtures::gamma2()] {
        ensure!(!g.in_h(), "example map reported in H");
        ensure!(
            !enumerate_torsion(&g.graph_curve())
                .map_err(fail)?
                .is_infinite(),
            "example enumeration infinite"
        );
    }
    Ok(
        "60 random elements of H infinite with valid witnesses; both examples outside H and finite"
            .into(),
    )
}

/// Φ_n by exact division of x^n − 1 by Φ_d for the proper divisors d.
fn cyclotomic(n: u64, memo: &mut BTreeMap<u64, Vec<i64>>) -> Vec<i64> {
    if let Some(p) = memo.get(&n) {
        return p.clone();
    }
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        let den = cyclotomic(d, memo);
        let mut q = vec![0i64; num.len() - den.len() + 1];
        for i in (0..q.len()).rev() {
            q[i] = num[i + den.len() - 1];
            for (j, &c) in den.iter().enumerate() {
                num[i + j] -= q[i] * c;
            }
        }
        assert!(num.iter().all(|&c| c == 0));
        num = q;
    }
    memo.insert(n, num.clone());
    num
}

fn conjugacy() -> Check {
    let mut memo = BTreeMap::new();
    for n in 1..=200u64 {
        let w = conjugacy_witness(n).map_err(fail)?;
        let base = CycloNum::zeta_pow(n, if w.square { 2 } else { 1 }).unwrap();
        let image = if w.sign < 0 { -base } else { base };
        let phi = cyclotomic(n, &mut memo);
        let value = phi.iter().rev().fold(CycloNum::zero(), |acc, &c| {
            acc * &image + CycloNum::from_integer(c)
        });
        ensure!(
            value.is_zero(),
            "N={n}: image is not a root of its cyclotomic polynomial"
        );
        ensure!(
            image == CycloNum::zeta_pow(n, w.exponent as i64).unwrap(),
            "N={n}: exponent {} disagrees",
            w.exponent
        );
        let expected = match n % 4 {
            1 | 3 => (1, true),
            2 => (-1, true),
            _ => (-1, false),
        };
        ensure!(
            (w.sign, w.square) == expected,
            "N={n}: shape {:?}",
            (w.sign, w.square)
        );
    }
    Ok("N = 1..200 images are primitive N-th roots".into())
}

fn reduced_form() -> Check {
    let derived = fixtures::gamma1_xi_derived();
    for (k, (raw, want)) in fixtures::GAMMA1_ENTRIES.iter().zip(&derived).enumerate() {
        let reduced = conductor_reduce(&fixtures::sparse(30, raw));
        ensure!(
            5 % reduced.level() == 0 && reduced == *want,
            "entry {k} reduces to {reduced}"
        );
    }
    let [a, b, c, d] = fixtures::gamma1_xi_quoted();
    let quoted = MobiusMap::new(a.clone(), b.clone(), c.clone(), d.clone())
        .map_err(fail)?
        .graph_curve();
    let at_one = quoted
        .eval(&CycloNum::one(), &CycloNum::one())
        .map_err(fail)?;
    let direct = a + b - c - d;
    let xi = CycloNum::zeta_pow(5, 3).unwrap();
    ensure!(
        !at_one.is_zero() && direct == -(&xi * &xi),
        "quoted form gives f(1,1) = {direct}"
    );
    let derived_curve = MobiusMap::new(
        derived[0].clone(),
        derived[1].clone(),
        derived[2].clone(),
        derived[3].clone(),
    )
    .map_err(fail)?
    .graph_curve();
    ensure!(
        derived_curve
            .eval(&CycloNum::one(), &CycloNum::one())
            .map_err(fail)?
            .is_zero(),
        "derived form misses (1, 1)"
    );
    Ok(format!(
        "derived matrix matches; quoted form has f(1,1) = {direct} = -xi^2"
    ))
}

fn main() {
    let corpus = oracle_corpus();
    let checks: Vec<Criterion> = vec![
        (
            "S1 reproduction",
            Box::new(|| {
                reproduction(
                    Example::S1,
                    30,
                    fixtures::S1_POINTS,
                    Duration::from_secs(60),
                )
            }),
        ),
        (
            "S2 reproduction",
            Box::new(|| {
                reproduction(
                    Example::S2,
                    60,
                    fixtures::S2_POINTS,
                    Duration::from_secs(120),
                )
            }),
        ),
        ("distribution tables", Box::new(distributions)),
        ("bounds", Box::new(|| bounds(&corpus))),
        ("toric Bezout property", Box::new(toric_property)),
        (
            "oracle equivalence",
            Box::new(|| oracle_equivalence(&corpus)),
        ),
        ("H dichotomy", Box::new(dichotomy)),
        ("conjugacy witness", Box::new(conjugacy)),
        ("reduced form of the first example", Box::new(reduced_form)),
    ];
    let mut failed = 0;
    for (i, (name, check)) in checks.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {}. {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {}. {name}: {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
