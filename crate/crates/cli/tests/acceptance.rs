//! End-to-end acceptance checks. Each criterion prints one PASS or FAIL
//! line; the process exits nonzero if any fails. All comparisons are exact.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::de::DeserializeOwned;
use serde::Serialize;

use circle_genera::exact_ring::{Rational, YPolynomial};
use circle_genera::generators::{cp_n_dataset, product_dataset, semifree_sphere_power};
use circle_genera::genus::{todd_weight_factor_closed_form, GenusSpec};
use circle_genera::localization::{chi_y_isolated, genus_via_localization, FixedPoint, FixedPointSet};
use circle_genera::series::PowerSeries;
use circle_genera::theorems::{
    betti_from_moment_map, check_parity_lemma, classify_hamiltonian, parity_obstruction_value,
    poincare_identity_check, semifree_profile, signature_relation_check, solve_semifree_system,
    HamiltonicityVerdict, Verdict,
};
use circle_genera_cli::{ComputeReport, FullReport, SemifreeReport};

type Check = Result<String, String>;
type Criterion = fn() -> Check;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

/// Distinct weights `a_0..a_n` drawn from `[-12, 12]`, in random order.
fn random_weights(n: usize, rng: &mut ChaCha8Rng) -> Vec<i64> {
    sample(rng, 25, n + 1).into_iter().map(|i| i as i64 - 12).collect()
}

fn standard_weights(n: usize) -> Vec<i64> {
    (0..=n as i64).collect()
}

/// CP(n) for n = 1..6: the standard weights followed by three random ones.
fn projective_spaces() -> Vec<(String, FixedPointSet)> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    let mut out = Vec::new();
    for n in 1..=6 {
        let mut vectors = vec![standard_weights(n)];
        vectors.extend((0..3).map(|_| random_weights(n, &mut rng)));
        for a in vectors {
            out.push((format!("CP({n}) a={a:?}"), cp_n_dataset(&a).unwrap()));
        }
    }
    out
}

/// CP(i) x CP(j) with i + j <= 5, each factor with its own weights.
fn products() -> Vec<(String, FixedPointSet)> {
    let mut out = Vec::new();
    for i in 1..=4 {
        for j in 1..=5 - i {
            let a = cp_n_dataset(&standard_weights(i)).unwrap();
            let b: Vec<i64> = (0..=j as i64).map(|k| 3 * k - 2).collect();
            let b = cp_n_dataset(&b).unwrap();
            out.push((format!("CP({i})xCP({j})"), product_dataset(&a, &b)));
        }
    }
    out
}

fn todd(fps: &FixedPointSet) -> (bool, Rational) {
    let r = genus_via_localization(&GenusSpec::todd(), fps, fps.default_order()).unwrap();
    (r.negative_part_zero, r.constant_term)
}

fn chi_y(fps: &FixedPointSet) -> (bool, YPolynomial) {
    let r = genus_via_localization(&GenusSpec::chi_y(), fps, fps.default_order()).unwrap();
    (r.negative_part_zero, r.constant_term)
}

fn criterion_1() -> Check {
    let start = Instant::now();
    let sets = projective_spaces();
    for (name, fps) in &sets {
        let (ok, value) = todd(fps);
        ensure!(ok, "{name}: Todd sum has a pole");
        ensure!(value.is_one(), "{name}: Todd genus {value}");
        let v = classify_hamiltonian(fps).unwrap();
        ensure!(v.verdict == Verdict::Hamiltonian, "{name}: {}", v.verdict);
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(5), "took {elapsed:?}");
    Ok(format!("{} projective spaces, Td = 1, Hamiltonian, {elapsed:.2?}", sets.len()))
}

fn criterion_2() -> Check {
    let mut sets = projective_spaces();
    sets.extend(products());
    for (name, fps) in &sets {
        let (ok, chi) = chi_y(fps);
        ensure!(ok, "{name}: chi_y sum has a pole");
        ensure!(chi == chi_y_isolated(fps), "{name}: {chi} vs {}", chi_y_isolated(fps));
        let (_, td) = todd(fps);
        let sig = genus_via_localization(&GenusSpec::signature(), fps, fps.default_order()).unwrap();
        ensure!(chi.eval(&Rational::zero()) == td, "{name}: chi_0 != Td");
        ensure!(sig.negative_part_zero, "{name}: signature sum has a pole");
        ensure!(chi.eval(&Rational::one()) == sig.constant_term, "{name}: chi_1 != sigma");
        ensure!(
            chi.eval(&Rational::from(-1)) == Rational::from(fps.len() as i64),
            "{name}: chi_-1 != point count"
        );
    }
    Ok(format!("{} datasets, localized chi_y equals the fixed-point sum", sets.len()))
}

fn criterion_3() -> Check {
    let lambdas = [
        Rational::zero(),
        Rational::one(),
        Rational::from(2),
        Rational::new(7, 3).unwrap(),
    ];
    for n in 1..=10 {
        for lambda in &lambdas {
            let solved = solve_semifree_system(n, lambda).unwrap();
            let mut binom = Rational::one();
            for (k, f) in solved.counts.iter().enumerate() {
                ensure!(*f == lambda * &binom, "n={n} lambda={lambda}: F_{k} = {f}");
                binom = &(&binom * &Rational::from((n - k) as i64)) / &Rational::from(k as i64 + 1);
            }
            ensure!(solved == semifree_profile(n, lambda).unwrap(), "n={n} lambda={lambda}");
        }
    }
    for n in 1..=8 {
        let fps = semifree_sphere_power(n).unwrap();
        let mut histogram = vec![0i64; n + 1];
        for p in &fps.points {
            histogram[p.negative_weight_count()] += 1;
        }
        let expected: Vec<Rational> = semifree_profile(n, &Rational::one()).unwrap().counts;
        let histogram: Vec<Rational> = histogram.into_iter().map(Rational::from).collect();
        ensure!(histogram == expected, "(S^2)^{n}: histogram {histogram:?}");
        let (ok, td) = todd(&fps);
        ensure!(ok && td.is_one(), "(S^2)^{n}: Todd {td}");
        let v = classify_hamiltonian(&fps).unwrap();
        ensure!(v.verdict == Verdict::Hamiltonian, "(S^2)^{n}: {}", v.verdict);
    }
    Ok("semi-free system solved for n <= 10, (S^2)^n histograms for n <= 8".to_string())
}

fn random_products(count: usize) -> Vec<(String, FixedPointSet)> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0004);
    (0..count)
        .map(|_| {
            let i = rng.gen_range(1..=3);
            let j = rng.gen_range(1..=4 - i);
            let a = random_weights(i, &mut rng);
            let b = random_weights(j, &mut rng);
            let fps = product_dataset(&cp_n_dataset(&a).unwrap(), &cp_n_dataset(&b).unwrap());
            (format!("CP{a:?}xCP{b:?}"), fps)
        })
        .collect()
}

fn criterion_4() -> Check {
    let mut sets = projective_spaces();
    sets.extend(products());
    sets.extend((1..=8).map(|n| (format!("(S^2)^{n}"), semifree_sphere_power(n).unwrap())));
    sets.extend(random_products(50));
    for (name, fps) in &sets {
        ensure!(todd(fps).0, "{name}: Todd sum has a pole");
        ensure!(check_parity_lemma(fps).unwrap().holds, "{name}: one parity only");
        let v = parity_obstruction_value(fps).unwrap();
        ensure!(v.is_zero(), "{name}: obstruction {v}");
    }
    for w in [vec![1, 1], vec![1, 2]] {
        let fps = FixedPointSet::new(2, vec![FixedPoint::new(w.clone())]);
        let v = parity_obstruction_value(&fps).unwrap();
        ensure!(!v.is_zero(), "single point {w:?}: obstruction vanishes");
        ensure!(!check_parity_lemma(&fps).unwrap().holds, "single point {w:?}");
    }
    Ok(format!("{} datasets, obstruction nonzero on (1,1) and (1,2)", sets.len()))
}

fn criterion_5() -> Check {
    let mut sets = projective_spaces();
    sets.extend(products());
    sets.extend((1..=8).map(|n| (format!("(S^2)^{n}"), semifree_sphere_power(n).unwrap())));
    for (name, fps) in &sets {
        ensure!(poincare_identity_check(fps).unwrap().holds, "{name}: Poincaré identity");
        if fps.half_dimension % 2 == 0 {
            ensure!(signature_relation_check(fps).unwrap().holds, "{name}: signature relation");
        }
    }
    let cases = [
        ("CP(2)", cp_n_dataset(&[0, 1, 2]).unwrap(), vec![1, -1, 1], 1),
        ("S2xS2", semifree_sphere_power(2).unwrap(), vec![1, -2, 1], 0),
    ];
    for (name, fps, poly, sigma) in cases {
        let check = poincare_identity_check(&fps).unwrap();
        let expected = YPolynomial::from_integers(&poly);
        ensure!(check.lhs == expected && check.rhs == expected, "{name}: {} vs {}", check.lhs, check.rhs);
        let sig = signature_relation_check(&fps).unwrap();
        ensure!(
            sig.holds && sig.lhs == Rational::from(sigma),
            "{name}: sigma = {}",
            sig.lhs
        );
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
    for n in 1..=6 {
        let standard = cp_n_dataset(&standard_weights(n)).unwrap();
        let reference = (chi_y(&standard).1, betti_from_moment_map(&standard).unwrap());
        for _ in 0..3 {
            let a = random_weights(n, &mut rng);
            let fps = cp_n_dataset(&a).unwrap();
            let other = (chi_y(&fps).1, betti_from_moment_map(&fps).unwrap());
            ensure!(other == reference, "CP({n}) a={a:?}: differs from the standard action");
        }
    }
    Ok(format!("{} datasets, CP(2) sigma = 1, S2xS2 sigma = 0, CP(n) independent of a", sets.len()))
}

/// `u + c_2 u^2 + ... + c_30 u^30` with small random rationals.
fn random_series(order: usize, rng: &mut ChaCha8Rng) -> PowerSeries<Rational> {
    let mut c = vec![Rational::zero(), Rational::one()];
    c.extend((2..=order).map(|_| Rational::new(rng.gen_range(-5..=5), rng.gen_range(1..=4)).unwrap()));
    PowerSeries::from_coeffs(c)
}

fn criterion_6() -> Check {
    const ORDER: usize = 30;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0006);
    let mut series = vec![
        ("log todd", GenusSpec::todd().log_series(ORDER).unwrap()),
        ("log signature", GenusSpec::signature().log_series(ORDER).unwrap()),
        ("random", random_series(ORDER, &mut rng)),
    ];
    series.push(("exp todd", series[0].1.revert().unwrap()));
    let start = Instant::now();
    let id = PowerSeries::<Rational>::variable(ORDER);
    for (name, g) in &series {
        let inv = g.revert().unwrap();
        ensure!(g.compose(&inv).unwrap() == id, "{name}: g(g^-1(u)) != u");
        ensure!(inv.compose(g).unwrap() == id, "{name}: g^-1(g(u)) != u");
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(2), "reversions took {elapsed:?}");

    let log = GenusSpec::todd().logarithm(12).unwrap();
    for j in (-6..=6).filter(|&j| j != 0) {
        let factor = log.weight_factor(j).unwrap();
        ensure!(factor == todd_weight_factor_closed_form(j, 12).unwrap(), "j = {j}");
        // 1 - (1 - u)^j straight from the binomial series
        let mut term = Rational::one();
        let mut closed = vec![Rational::zero()];
        for k in 1..=12i64 {
            term = &(&term * &Rational::from(j - k + 1)) / &Rational::from(k);
            let sign = if k % 2 == 0 { Rational::one() } else { Rational::from(-1) };
            closed.push(-&(&term * &sign));
        }
        ensure!(factor == PowerSeries::from_coeffs(closed), "j = {j}: binomial expansion");
    }
    Ok(format!("{} round trips at order 30 in {elapsed:.2?}, Todd factors to order 12", series.len()))
}

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_circle-genera"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Parses `text` as `T` and serializes it back the way the CLI does.
fn reserialize<T: Serialize + DeserializeOwned>(text: &str) -> Result<String, String> {
    let value: T = serde_json::from_str(text).map_err(|e| e.to_string())?;
    let mut back = serde_json::to_string_pretty(&value).unwrap();
    back.push('\n');
    Ok(back)
}

fn criterion_7() -> Check {
    let dir = tempfile::tempdir().unwrap();
    let path = |name: &str| dir.path().join(name).to_str().unwrap().to_string();
    let write = |name: &str, text: &str| fs::write(Path::new(&path(name)), text).unwrap();

    let o = cli(&["example", "cpn", "--weights", "0,1,2", "--out", &path("cp2.json")]);
    ensure!(o.status.code() == Some(0), "example cpn exit {:?}", o.status.code());
    let text = fs::read_to_string(path("cp2.json")).unwrap();
    ensure!(reserialize::<FixedPointSet>(&text)? == text, "dataset JSON does not round-trip");
    let cp2: FixedPointSet = serde_json::from_str(&text).unwrap();
    ensure!(cp2 == cp_n_dataset(&[0, 1, 2]).unwrap(), "example differs from the library");

    // exit 0
    let o = cli(&["compute", "--genus", "todd", &path("cp2.json")]);
    ensure!(o.status.code() == Some(0), "compute exit {:?}", o.status.code());
    ensure!(stdout(&o).contains("Td = 1"), "compute output: {}", stdout(&o));

    // exit 1
    write("broken.json", "{\"half_dimension\": 2, \"points\": [");
    let o = cli(&["compute", &path("broken.json")]);
    ensure!(o.status.code() == Some(1), "malformed input exit {:?}", o.status.code());
    let o = cli(&["example", "cpn", "--weights", "0,0,1"]);
    ensure!(o.status.code() == Some(1), "repeated weights exit {:?}", o.status.code());
    ensure!(
        String::from_utf8_lossy(&o.stderr).contains("weights must be distinct"),
        "repeated weights message"
    );

    // exit 2
    write("single.json", r#"{"half_dimension":2,"points":[{"weights":[1,1]}]}"#);
    let o = cli(&["compute", &path("single.json")]);
    ensure!(o.status.code() == Some(2), "pole exit {:?}", o.status.code());
    ensure!(
        String::from_utf8_lossy(&o.stderr).contains("negative part"),
        "pole diagnostic missing"
    );
    let o = cli(&["classify", &path("single.json")]);
    ensure!(o.status.code() == Some(2), "classify exit {:?}", o.status.code());

    // machine JSON round trips
    for genus in ["todd", "chi_y", "signature", "euler"] {
        let o = cli(&["compute", "--json", "--genus", genus, &path("cp2.json")]);
        let text = stdout(&o);
        ensure!(reserialize::<ComputeReport>(&text)? == text, "compute {genus} JSON");
    }
    let o = cli(&["compute", "--json", &path("single.json")]);
    let text = stdout(&o);
    ensure!(reserialize::<ComputeReport>(&text)? == text, "compute JSON with poles");
    let o = cli(&["classify", "--json", &path("cp2.json")]);
    let text = stdout(&o);
    ensure!(reserialize::<HamiltonicityVerdict>(&text)? == text, "classify JSON");
    let verdict: HamiltonicityVerdict = serde_json::from_str(&text).unwrap();
    ensure!(verdict == classify_hamiltonian(&cp2).unwrap(), "classify differs from the library");
    let o = cli(&["report", "--json", &path("cp2.json")]);
    let text = stdout(&o);
    ensure!(reserialize::<FullReport>(&text)? == text, "report JSON");
    let report: FullReport = serde_json::from_str(&text).unwrap();
    ensure!(report.checks.all_hold(), "CP(2) report checks");
    ensure!(report.betti == vec![1, 0, 1, 0, 1], "CP(2) betti {:?}", report.betti);
    let o = cli(&["semifree", "--json", "--n", "4", "--lambda", "7/3"]);
    let text = stdout(&o);
    ensure!(reserialize::<SemifreeReport>(&text)? == text, "semifree JSON");
    Ok("exit codes 0/1/2 exercised, JSON reports round-trip".to_string())
}

fn main() {
    let criteria: [(&str, Criterion); 7] = [
        ("fixed-point Todd sums of projective spaces", criterion_1),
        ("chi_y localization against the fixed-point count", criterion_2),
        ("semi-free actions", criterion_3),
        ("parity of negative weights", criterion_4),
        ("Poincaré polynomial and signature", criterion_5),
        ("series engine", criterion_6),
        ("command-line contract", criterion_7),
    ];
    let mut failed = 0;
    for (i, (title, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {} {title}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {title}: {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
