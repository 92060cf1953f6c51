//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any criterion fails.

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::Instant;

use fusionkit::fixtures::{self, TableFixture};
use fusionkit::fusion::{
    build_fusion_algebra, build_fusion_algebra_with, kac_walton, level1_group_fusion, FusionOptions,
};
use fusionkit::orbits::{count_orbits_partition_sum, count_triple_orbits, OrbitLabel};
use fusionkit::report::Report;
use fusionkit::tensor::racah_speiser;
use fusionkit::verify::{self, group_element_orders, labels_up_to};
use fusionkit::weights::{dimension, freudenthal_multiplicities, racah_multiplicities, Limits};
use fusionkit::{root_system, RootSystem, Weight};

type Outcome = Result<Vec<String>, String>;

fn w<const N: usize>(l: [i64; N]) -> Weight {
    Weight::from(l)
}

fn failures_of(reports: &[Report], out: &mut Vec<String>) {
    for r in reports {
        if r.checked == 0 {
            out.push(format!("{}: nothing checked", r.name));
        }
        for c in r.counterexamples.iter().take(3) {
            out.push(format!("{}: {c}", r.name));
        }
    }
}

fn table_regressions() -> Outcome {
    let mut bad = Vec::new();
    let fixtures: [&TableFixture; 5] = [
        &fixtures::A1_LEVEL2,
        &fixtures::A1_LEVEL3,
        &fixtures::A2_LEVEL2,
        &fixtures::A2_LEVEL3_PARTIAL,
        &fixtures::B2_LEVEL2,
    ];
    let mut reports = Vec::new();
    for f in fixtures {
        if !f.is_partial() {
            let n = f.labels.len();
            if f.entries().map_err(|e| e.to_string())?.len() != n * (n + 1) / 2 {
                bad.push(format!("{} is not a full table", f.name));
            }
        }
        reports.push(verify::table_report(f).map_err(|e| e.to_string())?);
    }
    failures_of(&reports, &mut bad);

    let a2 = root_system("A2").unwrap();
    let fa = build_fusion_algebra(&a2, 3).map_err(|e| e.to_string())?;
    let nine = w([1, 1]);
    let row = fa.product_weights(&nine, &nine).unwrap();
    let expect = BTreeMap::from([(w([0, 0]), 1), (w([3, 0]), 1), (w([0, 3]), 1), (nine.clone(), 2)]);
    if row != expect {
        bad.push(format!("[9]·[9] = {row:?}"));
    }
    if fa.coeff_weights(&nine, &nine, &nine) != 2 {
        bad.push("N_{9,9}^9 != 2".into());
    }
    let checked: u64 = reports.iter().map(|r| r.checked).sum();
    done(bad, vec![format!("{checked} printed entries")])
}

fn b2_level1() -> Outcome {
    let b2 = root_system("B2").unwrap();
    let fa = build_fusion_algebra(&b2, 1).map_err(|e| e.to_string())?;
    let table = fa
        .relabel(&fixtures::B2_LEVEL1.weight_map())
        .map_err(|e| e.to_string())?;
    let mut bad = Vec::new();
    for (a, b, expect) in [
        (1, 1, BTreeMap::from([(0, 1)])),
        (1, 2, BTreeMap::from([(2, 1)])),
        (2, 2, BTreeMap::from([(0, 1), (1, 1)])),
    ] {
        if *table.product(a, b) != expect {
            bad.push(format!("[{a}]·[{b}] = {:?}", table.product(a, b)));
        }
    }
    done(bad, vec!["3 products".into()])
}

fn dimensions() -> Outcome {
    let a2 = root_system("A2").unwrap();
    let mut bad = Vec::new();
    let ws = racah_multiplicities(&a2, &w([3, 2])).map_err(|e| e.to_string())?;
    let mut shells: BTreeMap<u64, usize> = BTreeMap::new();
    for (_, m) in ws.iter() {
        *shells.entry(m).or_default() += 1;
    }
    if shells != BTreeMap::from([(1, 15), (2, 9), (3, 3)]) {
        bad.push(format!("(3,2) shells {shells:?}"));
    }
    if dimension(&ws) != 42 {
        bad.push(format!("dim (3,2) = {}", dimension(&ws)));
    }
    let grid = labels_up_to(2, 6);
    for lambda in &grid {
        let (a, b) = (lambda[0] as u64, lambda[1] as u64);
        let d = dimension(&racah_multiplicities(&a2, lambda).map_err(|e| e.to_string())?);
        if d != (a + b + 2) * (a + 1) * (b + 1) / 2 {
            bad.push(format!("dim {lambda} = {d}"));
        }
    }
    done(bad, vec![format!("{} weights", grid.len())])
}

fn tensor_example() -> Outcome {
    let a2 = root_system("A2").unwrap();
    let d = racah_speiser(&a2, &w([3, 2]), &w([1, 0])).map_err(|e| e.to_string())?;
    let expect = BTreeMap::from([(w([4, 2]), 1), (w([3, 1]), 1), (w([2, 3]), 1)]);
    let bad = if d.terms == expect {
        vec![]
    } else {
        vec![format!("{:?}", d.terms)]
    };
    done(bad, vec!["(4,2)+(3,1)+(2,3)".into()])
}

/// Dominant weights with Weyl dimension at most `max_dim`, grown label by label.
fn small_irreps(rs: &RootSystem, max_dim: u128) -> Vec<Weight> {
    let mut seen = BTreeSet::from([Weight::zero(rs.rank())]);
    let mut frontier = vec![Weight::zero(rs.rank())];
    while let Some(x) = frontier.pop() {
        for i in 1..=rs.rank() {
            let y = &x + &Weight::fundamental(rs.rank(), i);
            if rs.weyl_dimension(&y) <= max_dim && seen.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    seen.into_iter().collect()
}

fn oracle_equivalence() -> Outcome {
    let mut bad = Vec::new();
    let mut count = 0;
    let mut cases: Vec<(RootSystem, Vec<Weight>)> = Vec::new();
    for name in ["A2", "B2", "G2"] {
        let rs = root_system(name).unwrap();
        cases.push((rs, labels_up_to(2, 6)));
    }
    for name in ["A3", "B3", "C3", "D4"] {
        let rs = root_system(name).unwrap();
        let irreps = small_irreps(&rs, 5000);
        cases.push((rs, irreps));
    }
    for (rs, lambdas) in &cases {
        for lambda in lambdas {
            let racah = racah_multiplicities(rs, lambda).map_err(|e| format!("{} {lambda}: {e}", rs.id()))?;
            let freud = freudenthal_multiplicities(rs, lambda).map_err(|e| format!("{} {lambda}: {e}", rs.id()))?;
            if racah != freud {
                bad.push(format!("{} {lambda}", rs.id()));
            }
            count += 1;
        }
    }
    done(bad, vec![format!("{count} highest weights")])
}

fn stabilization() -> Outcome {
    let mut reports = Vec::new();
    for name in ["A2", "B2", "G2"] {
        let rs = root_system(name).unwrap();
        reports.push(verify::stabilization_report(&rs, 3, 4).map_err(|e| e.to_string())?);
    }
    let mut bad = Vec::new();
    failures_of(&reports, &mut bad);
    let a2 = root_system("A2").unwrap();
    let (lambda, mu) = (w([3, 2]), w([1, 0]));
    let top = &lambda + &mu;
    for k in 5..=12 {
        let n = kac_walton(&a2, &lambda, &mu, k).map_err(|e| e.to_string())?;
        let got = n.get(&top).copied().unwrap_or(0);
        if got != u64::from(k >= 6) {
            bad.push(format!("N^({k}) at (4,2) = {got}"));
        }
    }
    let checked: u64 = reports.iter().map(|r| r.checked).sum();
    done(bad, vec![format!("{checked} checks")])
}

fn stable_multiplicities() -> Outcome {
    let mut reports = Vec::new();
    for name in ["A2", "B2"] {
        let rs = root_system(name).unwrap();
        reports.push(verify::stable_multiplicity_report(&rs, 3).map_err(|e| e.to_string())?);
    }
    let mut bad = Vec::new();
    failures_of(&reports, &mut bad);
    let checked: u64 = reports.iter().map(|r| r.checked).sum();
    done(bad, vec![format!("{checked} instances")])
}

fn axioms() -> Outcome {
    let mut bad = Vec::new();
    let mut built = Vec::new();
    // G2 near 200 basis elements has modules above the default dimension bound
    let opts = FusionOptions {
        limits: Limits {
            max_dim: 100_000_000,
            ..Limits::default()
        },
        ..FusionOptions::default()
    };
    for name in ["A1", "A2", "A3", "A4", "B2", "G2", "B3", "C3", "D4"] {
        let rs = root_system(name).unwrap();
        let mut k = 1;
        loop {
            let n = rs.enumerate_level(k).len();
            if n > 200 {
                break;
            }
            let fa = build_fusion_algebra_with(&rs, k, &opts).map_err(|e| format!("{name} level {k}: {e}"))?;
            if let Err(e) = fa.verify_axioms(&rs) {
                bad.push(format!("{name} level {k}: {e}"));
            }
            if fa.len() != n {
                bad.push(format!("{name} level {k}: basis {} != {n}", fa.len()));
            }
            k += 1;
        }
        built.push(format!("{name} k<={}", k - 1));
    }
    done(bad, vec![built.join(" ")])
}

fn level1_groups() -> Outcome {
    let mut bad = Vec::new();
    for (name, n) in [("A1", 2), ("A2", 3), ("A3", 4), ("A4", 5), ("A5", 6)] {
        let rs = root_system(name).unwrap();
        let fa = build_fusion_algebra(&rs, 1).map_err(|e| e.to_string())?;
        match group_element_orders(&fa) {
            Some(o) if o.len() == n && o.contains(&n) => {}
            other => bad.push(format!("{name}: orders {other:?}")),
        }
        if fa != level1_group_fusion(&rs).map_err(|e| e.to_string())? {
            bad.push(format!("{name}: differs from group rule"));
        }
    }
    let d4 = root_system("D4").unwrap();
    let fa = build_fusion_algebra(&d4, 1).map_err(|e| e.to_string())?;
    match group_element_orders(&fa) {
        Some(o) if o == [1, 2, 2, 2] => {}
        other => bad.push(format!("D4: orders {other:?}")),
    }
    done(bad, vec!["Z_2..Z_6, Z_2xZ_2".into()])
}

fn orbit_identities() -> Outcome {
    let mut bad = Vec::new();
    let reports = verify::orbit_identities_suite().map_err(|e| e.to_string())?;
    failures_of(&reports[..2], &mut bad);
    let nine = OrbitLabel::new(vec![1, 1, 1]).unwrap();
    let m = count_triple_orbits(&nine, &nine, &nine).map_err(|e| e.to_string())?;
    let a2 = root_system("A2").unwrap();
    let fa = build_fusion_algebra(&a2, 3).map_err(|e| e.to_string())?;
    let n = fa.coeff_weights(&nine.to_weight(), &nine.to_weight(), &nine.to_weight());
    if (m, n) != (3, 2) || m != n * (n + 1) / 2 {
        bad.push(format!("M([9],[9],[9]) = {m}, N = {n}"));
    }
    let checked: u64 = reports[..2].iter().map(|r| r.checked).sum();
    done(bad, vec![format!("{checked} triples")])
}

fn ramanujan() -> Outcome {
    let mut bad = Vec::new();
    let report = verify::ramanujan_report(8).map_err(|e| e.to_string())?;
    failures_of(std::slice::from_ref(&report), &mut bad);
    let total: u64 = (0..3).map(|r| count_orbits_partition_sum(3, 3, r)).sum();
    if total != 10 {
        bad.push(format!("sum M(3,3,r) = {total}"));
    }
    done(bad, vec![format!("{} checks", report.checked)])
}

fn covers() -> Outcome {
    let mut bad = Vec::new();
    let reports = verify::covers_suite().map_err(|e| e.to_string())?;
    failures_of(&reports, &mut bad);
    done(bad, vec![format!("{} reports", reports.len())])
}

fn sl2_rules() -> Outcome {
    let mut bad = Vec::new();
    let report = verify::sl2_rules_report(8).map_err(|e| e.to_string())?;
    failures_of(std::slice::from_ref(&report), &mut bad);
    done(bad, vec![format!("{} coefficients", report.checked)])
}

fn probe_and_threshold() -> Outcome {
    let mut reports = Vec::new();
    for name in ["A2", "B2", "G2"] {
        let rs = root_system(name).unwrap();
        reports.push(verify::affine_probe_report(&rs, 3, 10).map_err(|e| e.to_string())?);
        reports.push(verify::theta_threshold_report(&rs, 3, 10).map_err(|e| e.to_string())?);
    }
    let mut bad = Vec::new();
    failures_of(&reports, &mut bad);
    let checked: u64 = reports.iter().map(|r| r.checked).sum();
    done(bad, vec![format!("{checked} instances")])
}

fn done(bad: Vec<String>, notes: Vec<String>) -> Outcome {
    if bad.is_empty() {
        Ok(notes)
    } else {
        Err(bad.join("; "))
    }
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 14] = [
        ("table regressions", table_regressions),
        ("B2 level 1 products", b2_level1),
        ("dimensions and multiplicities", dimensions),
        ("tensor example", tensor_example),
        ("Racah recursion matches Freudenthal", oracle_equivalence),
        ("fusion stabilizes to tensor", stabilization),
        (
            "tensor multiplicities stable under mu + lambda_j",
            stable_multiplicities,
        ),
        ("fusion algebra axioms", axioms),
        ("level-1 group fusion", level1_groups),
        ("orbit identities", orbit_identities),
        ("orbit count formula", ramanujan),
        ("group covers", covers),
        ("sl2 fusion rules", sl2_rules),
        ("affine probe and theta threshold", probe_and_threshold),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(notes) => println!("PASS criterion {:>2}: {name} ({}; {secs:.1}s)", i + 1, notes.join(", ")),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {:>2}: {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
