//! Acceptance suite: one PASS/FAIL line per criterion. Runs without the
//! libtest harness and exits nonzero if any criterion fails.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;

use tgain::angle::GainAngle;
use tgain::families::{
    gen_complete, gen_complete_bipartite, gen_cycle, gen_random_connected, FamilySpec, GainPolicy,
};
use tgain::gaintheory::{
    classify_cycle, cycle_gain, cycle_rank_formula, is_balanced, switch, CycleType,
    SwitchingFunction,
};
use tgain::graph::{parse_gain_graph, GainGraph};
use tgain::spectral::{
    a_alpha_matrix, adjacency_matrix, hermitian_eigenvalues, rank_by_elimination, rank_by_spectrum,
    Spectrum,
};
use tgain::verify::{
    builtin_families, check_bipartite_symmetry, check_cycle_alpha_spectrum,
    check_multiplicity_bound, check_rank_bounds, check_sandwich, Builtin, ReportRow, TheoremTag,
    DEFAULT_ALPHAS,
};
use tgain::zeroforcing::{closure, zero_forcing_number, zf_bound_general, zf_bound_strict};

struct Case {
    spec: FamilySpec,
    graph: GainGraph,
}

fn paper_corpus() -> Vec<Case> {
    builtin_families(Builtin::PaperFamilies)
        .into_iter()
        .map(|spec| Case {
            graph: spec.build().unwrap(),
            spec,
        })
        .collect()
}

fn angle(num: i64, den: i64) -> GainAngle {
    GainAngle::new(num, den).unwrap()
}

fn spectrum(g: &GainGraph, alpha: f64) -> Spectrum {
    hermitian_eigenvalues(&a_alpha_matrix(g, alpha).unwrap()).unwrap()
}

/// Multiplicity of the cluster whose representative is within `tol` of `lambda`.
fn mult_near(s: &Spectrum, lambda: f64, tol: f64) -> usize {
    s.clusters
        .iter()
        .find(|c| (c.0 - lambda).abs() <= tol)
        .map_or(0, |c| c.1)
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn criterion_1(corpus: &[Case]) -> Outcome {
    let start = Instant::now();
    let (mut checked, mut violations, mut row_failures) = (0usize, 0usize, 0usize);
    for case in corpus {
        let g = &case.graph;
        let (n, d) = (g.order() as u64, g.max_degree() as u64);
        if !g.is_connected() || d < 2 {
            continue;
        }
        for &alpha in &DEFAULT_ALPHAS {
            for &(_, m) in &spectrum(g, alpha).clusters {
                checked += 1;
                if m as u64 * (d - 1) > (d - 2) * n + 2 {
                    violations += 1;
                }
            }
        }
        let rows = check_multiplicity_bound(g, &DEFAULT_ALPHAS).unwrap();
        row_failures += rows.iter().filter(|r| !r.pass).count();
    }
    let elapsed = start.elapsed();
    outcome(
        violations == 0 && row_failures == 0 && elapsed < Duration::from_secs(60),
        format!("{checked} clusters, {violations} violations, {row_failures} failed rows, {elapsed:.2?}"),
    )
}

fn criterion_2(corpus: &[Case]) -> Outcome {
    let tol = 1e-8;
    let mut problems = Vec::new();
    let mut simple_j0 = 0;
    for &alpha in &DEFAULT_ALPHAS {
        for n in 3..=8usize {
            let g = gen_complete(n, GainPolicy::AllOnes);
            let lambda = alpha * (n - 1) as f64 - (1.0 - alpha);
            if mult_near(&spectrum(&g, alpha), lambda, tol) != n - 1 {
                problems.push(format!("K_{n} alpha={alpha}"));
            }
            let row = &check_multiplicity_bound(&g, &[alpha]).unwrap()[0];
            if row.equality_case.as_deref() != Some("(i)") {
                problems.push(format!("K_{n} alpha={alpha} case {:?}", row.equality_case));
            }
        }
        for n in 3..=12usize {
            let s = spectrum(&gen_cycle(n, GainAngle::ONE).unwrap(), alpha);
            for j in 0..n.div_ceil(2) {
                let lambda =
                    2.0 * alpha + 2.0 * (1.0 - alpha) * (2.0 * PI * j as f64 / n as f64).cos();
                let m = mult_near(&s, lambda, tol);
                match (j, m) {
                    (0, 1) => simple_j0 += 1,
                    (_, 2) if j > 0 => {}
                    _ => problems.push(format!("C_{n} gain 1 j={j} alpha={alpha} mult {m}")),
                }
            }
            let s = spectrum(&gen_cycle(n, GainAngle::MINUS_ONE).unwrap(), alpha);
            for j in 0..n / 2 {
                let lambda =
                    2.0 * alpha + 2.0 * (1.0 - alpha) * ((2 * j + 1) as f64 * PI / n as f64).cos();
                if mult_near(&s, lambda, tol) != 2 {
                    problems.push(format!("C_{n} gain -1 j={j} alpha={alpha}"));
                }
            }
        }
        for n in [6usize, 8] {
            let g = gen_complete_bipartite(n / 2, n / 2, GainPolicy::AllOnes).unwrap();
            if mult_near(&spectrum(&g, alpha), alpha * n as f64 / 2.0, tol) != n - 2 {
                problems.push(format!("K_{{{0},{0}}} alpha={alpha}", n / 2));
            }
            let row = &check_multiplicity_bound(&g, &[alpha]).unwrap()[0];
            if row.equality_case.as_deref() != Some("(iv)") {
                let (half, case) = (n / 2, &row.equality_case);
                problems.push(format!("K_{{{half},{half}}} alpha={alpha} case {case:?}"));
            }
        }
    }
    let mut equality_rows = 0;
    for case in corpus {
        let Ok(rows) = check_multiplicity_bound(&case.graph, &DEFAULT_ALPHAS) else {
            continue;
        };
        for row in rows.iter().filter(|r| r.equality_case.is_some()) {
            equality_rows += 1;
            if !row.pass || row.equality_case.as_deref() == Some("unclassified") {
                problems.push(format!(
                    "{} alpha={:?} unclassified",
                    case.spec.label(),
                    row.alpha
                ));
            }
        }
    }
    outcome(
        problems.is_empty(),
        format!(
            "{equality_rows} corpus equality rows classified; j=0 value simple in {simple_j0} cycles; problems: {problems:?}"
        ),
    )
}

fn criterion_3() -> Outcome {
    let mut worst = 0.0f64;
    let mut failures = Vec::new();
    for n in 3..=12usize {
        for theta in [angle(0, 1), angle(1, 3), angle(1, 2), angle(1, 1)] {
            for alpha in [0.0, 0.5] {
                let s = spectrum(&gen_cycle(n, theta).unwrap(), alpha);
                let mut expected: Vec<f64> = (0..n)
                    .map(|j| {
                        2.0 * alpha
                            + 2.0
                                * (1.0 - alpha)
                                * ((theta.radians() + 2.0 * PI * j as f64) / n as f64).cos()
                    })
                    .collect();
                expected.sort_by(f64::total_cmp);
                let dev = s
                    .eigenvalues
                    .iter()
                    .zip(&expected)
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0, f64::max);
                worst = worst.max(dev);
                let row = check_cycle_alpha_spectrum(n, theta, alpha).unwrap();
                if dev > 1e-8 || !row.pass || s.max_multiplicity() > 2 {
                    failures.push(format!("n={n} theta={theta} alpha={alpha}"));
                }
            }
        }
    }
    outcome(
        failures.is_empty(),
        format!("max deviation {worst:.2e}; failures {failures:?}"),
    )
}

fn criterion_4(corpus: &[Case]) -> Outcome {
    let mut seen = [false; 5];
    let mut mismatches = Vec::new();
    let gains: Vec<GainAngle> = (0..12)
        .map(|k| angle(k, 6))
        .chain([angle(1, 4), angle(3, 4)])
        .collect();
    for n in 3..=10usize {
        for &gain in &gains {
            let g = gen_cycle(n, gain).unwrap();
            let t = classify_cycle(&g).unwrap();
            seen[t as usize] = true;
            let r = rank_by_spectrum(&adjacency_matrix(&g)).unwrap();
            if r != cycle_rank_formula(t, n) {
                mismatches.push(format!("n={n} gain={gain} {t}: rank {r}"));
            }
        }
    }
    let mut disagreements = 0;
    for case in corpus {
        let a = adjacency_matrix(&case.graph);
        if rank_by_spectrum(&a).unwrap() != rank_by_elimination(&a) {
            disagreements += 1;
        }
    }
    let types = [
        CycleType::A,
        CycleType::B,
        CycleType::C,
        CycleType::D,
        CycleType::E,
    ];
    let covered = types.iter().all(|&t| seen[t as usize]);
    outcome(
        mismatches.is_empty() && disagreements == 0 && covered,
        format!(
            "{} cycles, types A-E covered: {covered}, mismatches {mismatches:?}; oracle disagreements {disagreements}/{}",
            8 * gains.len(),
            corpus.len()
        ),
    )
}

fn row(rows: &[ReportRow], tag: TheoremTag) -> &ReportRow {
    rows.iter().find(|r| r.theorem_tag == tag).unwrap()
}

fn criterion_5(corpus: &[Case]) -> Outcome {
    let mut problems = Vec::new();
    let (mut equalities, mut flagged, mut exceptions) = (Vec::new(), 0, Vec::new());
    for case in corpus {
        let g = &case.graph;
        let (n, d) = (g.order(), g.max_degree());
        if !g.is_connected() {
            continue;
        }
        let rows = check_rank_bounds(g).unwrap();
        let r = rank_by_elimination(&adjacency_matrix(g));
        let balanced = is_balanced(g).unwrap().balanced;
        let parts = g.complete_bipartite_parts();
        let label = case.spec.label();
        if d >= 2 {
            if r * (d - 1) < n - 2 {
                problems.push(format!("{label}: RANK_N2_D1 violated"));
            }
            let equality = r * (d - 1) == n - 2;
            let type_a = g.is_cycle() && n % 2 == 0 && classify_cycle(g).unwrap() == CycleType::A;
            let half = balanced && parts == Some((n / 2, n / 2));
            if equality != (type_a || half) {
                problems.push(format!(
                    "{label}: equality {equality}, expected {}",
                    type_a || half
                ));
            }
            if equality {
                equalities.push(label.clone());
            }
            let n2 = row(&rows, TheoremTag::RankN2D1);
            if !n2.pass {
                problems.push(format!("{label}: RANK_N2_D1 row failed"));
            }
            let gain_pm1 = n % 2 == 0
                && g.cycle_order().is_some_and(|c| {
                    let t = cycle_gain(g, &c).unwrap();
                    t == GainAngle::ONE || t == GainAngle::MINUS_ONE
                });
            let discrepancy = gain_pm1 && !type_a && !half;
            if discrepancy != n2.note.is_some() {
                problems.push(format!("{label}: reading discrepancy not flagged"));
            }
            flagged += usize::from(n2.note.is_some());
        }
        if d >= 3 {
            let holds = r * (d - 1) >= n;
            let exception = balanced && parts.is_some_and(|(a, b)| a - b <= 1);
            if holds == exception {
                problems.push(format!(
                    "{label}: RANK_N_D1 holds={holds} exception={exception}"
                ));
            }
            let nd1 = row(&rows, TheoremTag::RankND1);
            if exception {
                exceptions.push(label.clone());
                if !nd1.pass
                    || !nd1
                        .equality_case
                        .as_deref()
                        .unwrap_or("")
                        .starts_with("exception")
                {
                    problems.push(format!("{label}: exception not reported"));
                }
            }
        }
    }
    outcome(
        problems.is_empty(),
        format!(
            "equality on {equalities:?}; {flagged} cycles flagged for the +-1 vs (-1)^(n/2) reading; \
             expected exceptions {exceptions:?}; problems {problems:?}"
        ),
    )
}

fn criterion_6(corpus: &[Case]) -> Outcome {
    let mut problems = Vec::new();
    let mut slowest = Duration::ZERO;
    let mut timed_z = |g: &GainGraph| {
        let start = Instant::now();
        let z = zero_forcing_number(g).unwrap().number;
        slowest = slowest.max(start.elapsed());
        z
    };
    let general = |n: usize, d: usize| zf_bound_general(n, d).unwrap();
    for n in 3..=12usize {
        let z = timed_z(&gen_cycle(n, GainAngle::ONE).unwrap());
        if z != 2 || general(n, 2) != Ratio::from_integer(z as i64) {
            problems.push(format!("Z(C_{n}) = {z}"));
        }
    }
    for n in 3..=12usize {
        let z = timed_z(&gen_complete(n, GainPolicy::AllOnes));
        if z != n - 1 || general(n, n - 1) != Ratio::from_integer(z as i64) {
            problems.push(format!("Z(K_{n}) = {z}"));
        }
    }
    for n in (4..=12usize).step_by(2) {
        let z = timed_z(&gen_complete_bipartite(n / 2, n / 2, GainPolicy::AllOnes).unwrap());
        if z != n - 2 || general(n, n / 2) != Ratio::from_integer(z as i64) {
            problems.push(format!("Z(K_{{{0},{0}}}) = {z}", n / 2));
        }
    }
    let (mut checked, mut strict_checked) = (0, 0);
    for case in corpus {
        let g = &case.graph;
        let (n, d) = (g.order(), g.max_degree());
        if !g.is_connected() || d < 2 {
            continue;
        }
        let z = timed_z(g);
        checked += 1;
        if (z as i64) * (d as i64 - 1) > (d as i64 - 2) * n as i64 + 2 {
            problems.push(format!("{}: Z={z} above general bound", case.spec.label()));
        }
        let excluded = g.is_complete()
            || g.complete_bipartite_parts()
                .is_some_and(|(a, b)| a - b <= 1);
        if d >= 3 && !excluded {
            strict_checked += 1;
            if Ratio::from_integer(z as i64) > zf_bound_strict(n, d).unwrap() {
                problems.push(format!("{}: Z={z} above strict bound", case.spec.label()));
            }
        }
    }
    outcome(
        problems.is_empty() && slowest < Duration::from_secs(10),
        format!(
            "closed forms n<=12 checked; {checked} corpus graphs under general bound, {strict_checked} under strict \
             bound; slowest search {slowest:.2?}; problems {problems:?}"
        ),
    )
}

fn criterion_7(corpus: &[Case]) -> Outcome {
    let mut failures = Vec::new();
    let mut equal = 0;
    for case in corpus {
        let row = check_sandwich(&case.graph, 50).unwrap();
        if !row.pass {
            failures.push(case.spec.label());
        }
        equal += usize::from(row.equality_case.is_some());
    }
    outcome(
        failures.is_empty(),
        format!(
            "{} graphs x 50 samples; {equal} attain Z; violations {failures:?}",
            corpus.len()
        ),
    )
}

fn criterion_8(corpus: &[Case]) -> Outcome {
    let mut worst = 0.0f64;
    let mut count = 0;
    let mut failures = Vec::new();
    for case in corpus.iter().filter(|c| c.graph.bipartition().is_some()) {
        let row = check_bipartite_symmetry(&case.graph).unwrap();
        count += 1;
        worst = worst.max(row.measured);
        if !row.pass {
            failures.push(case.spec.label());
        }
    }
    outcome(
        failures.is_empty() && count > 0,
        format!("{count} bipartite graphs, worst pairing error {worst:.2e}"),
    )
}

fn random_angle(rng: &mut SplitMix64) -> GainAngle {
    let den = [1, 2, 3, 4, 6][rng.gen_range(0..5)];
    angle(rng.gen_range(0..2 * den), den)
}

fn random_graph(rng: &mut SplitMix64) -> GainGraph {
    let n = rng.gen_range(3..=10);
    gen_random_connected(n, rng.gen_range(2..=4), rng.gen()).unwrap()
}

/// Forcing in a random vertex order, one force at a time.
fn closure_random_order(g: &GainGraph, init: &[usize], rng: &mut SplitMix64) -> Vec<usize> {
    let mut black = vec![false; g.order()];
    for &v in init {
        black[v] = true;
    }
    loop {
        let mut order: Vec<usize> = (0..g.order()).collect();
        for i in (1..order.len()).rev() {
            order.swap(i, rng.gen_range(0..=i));
        }
        let forcer = order
            .into_iter()
            .find(|&v| black[v] && g.neighbors(v).iter().filter(|&&w| !black[w]).count() == 1);
        match forcer {
            Some(v) => {
                let w = *g.neighbors(v).iter().find(|&&w| !black[w]).unwrap();
                black[w] = true;
            }
            None => break,
        }
    }
    (0..g.order()).filter(|&v| black[v]).collect()
}

fn criterion_9() -> Outcome {
    let mut rng = SplitMix64::seed_from_u64(0x5eed);
    let mut problems = Vec::new();

    for k in 0..100 {
        let g = random_graph(&mut rng);
        let zeta = SwitchingFunction {
            zeta: (0..g.order()).map(|_| random_angle(&mut rng)).collect(),
        };
        let h = switch(&g, &zeta).unwrap();
        let alpha = [0.0, 0.3, 0.7][k % 3];
        let (a, b) = (spectrum(&g, alpha), spectrum(&h, alpha));
        let dev = a
            .eigenvalues
            .iter()
            .zip(&b.eigenvalues)
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max);
        if dev > 1e-8 {
            problems.push(format!("switching pair {k}: deviation {dev:.2e}"));
        }
    }

    for k in 0..100 {
        let g = random_graph(&mut rng);
        let n = g.order();
        let s: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.3)).collect();
        let t: Vec<usize> = (0..n)
            .filter(|v| s.contains(v) || rng.gen_bool(0.3))
            .collect();
        let cs = closure(&g, &s).unwrap();
        let ct = closure(&g, &t).unwrap();
        if !cs.iter().all(|v| ct.contains(v)) {
            problems.push(format!("closure case {k}: not monotone"));
        }
        if closure(&g, &cs).unwrap() != cs {
            problems.push(format!("closure case {k}: not idempotent"));
        }
        if closure_random_order(&g, &s, &mut rng) != cs {
            problems.push(format!("closure case {k}: order dependent"));
        }
    }

    for k in 0..200 {
        let g = random_graph(&mut rng);
        let keep: Vec<usize> = (0..g.order()).filter(|_| rng.gen_bool(0.6)).collect();
        if keep.is_empty() {
            continue;
        }
        let h = g.induced_subgraph(&keep).unwrap();
        let (rg, rh) = (
            rank_by_elimination(&adjacency_matrix(&g)),
            rank_by_elimination(&adjacency_matrix(&h)),
        );
        if rh > rg {
            problems.push(format!("induced pair {k}: rank {rh} > {rg}"));
        }
    }

    for k in 0..100 {
        let g = random_graph(&mut rng);
        let text = g.to_ggr();
        match parse_gain_graph(&text) {
            Ok(back) if back == g && back.to_ggr() == text => {}
            _ => problems.push(format!("round trip {k} failed")),
        }
    }

    outcome(
        problems.is_empty(),
        format!("100 switching pairs, 100 closure cases, 200 induced pairs, 100 round trips; problems {problems:?}"),
    )
}

fn main() {
    let corpus = paper_corpus();
    type Check<'a> = Box<dyn Fn() -> Outcome + 'a>;
    let criteria: Vec<(&str, Check)> = vec![
        ("multiplicity bound", Box::new(|| criterion_1(&corpus))),
        ("equality cases", Box::new(|| criterion_2(&corpus))),
        ("cycle closed form", Box::new(criterion_3)),
        ("cycle rank theorem", Box::new(|| criterion_4(&corpus))),
        ("rank bounds", Box::new(|| criterion_5(&corpus))),
        ("zero forcing", Box::new(|| criterion_6(&corpus))),
        ("sandwich chain", Box::new(|| criterion_7(&corpus))),
        ("bipartite symmetry", Box::new(|| criterion_8(&corpus))),
        ("structural properties", Box::new(criterion_9)),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let o = check();
        println!(
            "{} criterion {}: {name}: {}",
            if o.pass { "PASS" } else { "FAIL" },
            k + 1,
            o.detail
        );
        failed += usize::from(!o.pass);
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
