//! Cross-module verification sweeps, grouped into named suites.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde_json::json;

use crate::cartan::{root_system, RootSystem, Weight};
use crate::cover::{sl2_cover, verify_cover, GroupPartition};
use crate::error::{Error, Result};
use crate::fixtures::{self, TableFixture};
use crate::fusion::{
    affine_image_probe, build_fusion_algebra, kac_walton, level1_group_fusion, sl2_fusion_direct, FusionAlgebra,
    ProbeOutcome, Spin,
};
use crate::orbits::{
    count_orbits_bruteforce, count_orbits_formula, count_orbits_partition_sum, p_admissible, verify_sl2_orbit_fusion,
    verify_sl3_orbit_fusion,
};
use crate::report::Report;
use crate::tensor::{racah_speiser, stability_threshold, verify_fk_containment};
use crate::weights::{weight_string, weight_system, Direction, WeightSystem};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Tables,
    Stability,
    OrbitIdentities,
    Covers,
    Ramanujan,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 6] = ["tables", "stability", "orbit-identities", "covers", "ramanujan", "all"];
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "tables" => Suite::Tables,
            "stability" => Suite::Stability,
            "orbit-identities" => Suite::OrbitIdentities,
            "covers" => Suite::Covers,
            "ramanujan" => Suite::Ramanujan,
            "all" => Suite::All,
            _ => {
                return Err(Error::Parse {
                    input: s.to_string(),
                    position: 0,
                    message: format!("unknown suite, expected one of {}", Suite::NAMES.join(", ")),
                })
            }
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = match self {
            Suite::Tables => 0,
            Suite::Stability => 1,
            Suite::OrbitIdentities => 2,
            Suite::Covers => 3,
            Suite::Ramanujan => 4,
            Suite::All => 5,
        };
        f.write_str(Suite::NAMES[i])
    }
}

pub fn run_suite(suite: Suite) -> Result<Vec<Report>> {
    Ok(match suite {
        Suite::Tables => tables_suite()?,
        Suite::Stability => stability_suite()?,
        Suite::OrbitIdentities => orbit_identities_suite()?,
        Suite::Covers => covers_suite()?,
        Suite::Ramanujan => ramanujan_suite()?,
        Suite::All => {
            let mut all = Vec::new();
            for s in [
                Suite::Tables,
                Suite::Stability,
                Suite::OrbitIdentities,
                Suite::Covers,
                Suite::Ramanujan,
            ] {
                all.extend(run_suite(s)?);
            }
            all
        }
    })
}

/// True when every non-experimental report passed.
pub fn all_passed(reports: &[Report]) -> bool {
    reports.iter().all(|r| r.experimental || r.passed())
}

/// Every weight of the given rank whose labels are all at most `max`.
pub fn labels_up_to(rank: usize, max: i64) -> Vec<Weight> {
    let mut out = vec![Weight::zero(rank)];
    for i in 0..rank {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..=max).map(move |a| {
                    let mut v = w.clone();
                    v.labels_mut()[i] = a;
                    v
                })
            })
            .collect();
    }
    out.sort();
    out
}

fn rank2() -> Result<Vec<RootSystem>> {
    ["A2", "B2", "G2"].iter().map(|n| root_system(n)).collect()
}

fn product_json(p: &BTreeMap<usize, u64>) -> serde_json::Value {
    json!(p.iter().map(|(c, n)| [*c as u64, *n]).collect::<Vec<_>>())
}

/// Compare a computed algebra with a printed table under its label map.
pub fn table_report(fixture: &TableFixture) -> Result<Report> {
    let rs = root_system(fixture.algebra)?;
    let fa = build_fusion_algebra(&rs, fixture.level)?;
    let table = fa.relabel(&fixture.weight_map())?;
    let mut report = Report::new(format!("table {}", fixture.name));
    for (i, j, printed) in fixture.entries()? {
        let computed = table.product(i, j);
        report.record(
            *computed == printed,
            || json!({"a": i, "b": j, "printed": product_json(&printed), "computed": product_json(computed)}),
        );
    }
    Ok(report)
}

/// Orders of the elements if the level-1 algebra is a group algebra.
pub fn group_element_orders(fa: &FusionAlgebra) -> Option<Vec<usize>> {
    let n = fa.len();
    let mul = |a: usize, b: usize| match fa.product(a, b) {
        [(c, 1)] => Some(*c),
        _ => None,
    };
    for a in 0..n {
        for b in 0..n {
            mul(a, b)?;
        }
    }
    let mut orders = Vec::with_capacity(n);
    for a in 0..n {
        let (mut x, mut order) = (a, 1);
        while x != 0 {
            x = mul(x, a)?;
            order += 1;
            if order > n {
                return None;
            }
        }
        orders.push(order);
    }
    Some(orders)
}

fn level1_report() -> Result<Report> {
    let mut report = Report::new("level-1 group algebras");
    let cases: [(&str, usize); 6] = [("A1", 2), ("A2", 3), ("A3", 4), ("A4", 5), ("A5", 6), ("D4", 0)];
    for (name, cyclic) in cases {
        let rs = root_system(name)?;
        let built = build_fusion_algebra(&rs, 1)?;
        let group = level1_group_fusion(&rs)?;
        report.record(
            built == group,
            || json!({"algebra": name, "issue": "group rule differs from folding"}),
        );
        let orders = group_element_orders(&built);
        let ok = match (&orders, cyclic) {
            (Some(o), 0) => o.len() == 4 && o.iter().all(|&x| x <= 2),
            (Some(o), n) => o.len() == n && o.contains(&n),
            (None, _) => false,
        };
        report.record(ok, || json!({"algebra": name, "orders": orders}));
    }
    Ok(report)
}

fn b2_level1_report() -> Result<Report> {
    let b2 = root_system("B2")?;
    let fa = build_fusion_algebra(&b2, 1)?;
    let table = fa.relabel(&fixtures::B2_LEVEL1.weight_map())?;
    let mut report = Report::new("B2 level 1 products");
    for (a, b, expect) in [
        (1, 1, BTreeMap::from([(0, 1)])),
        (1, 2, BTreeMap::from([(2, 1)])),
        (2, 2, BTreeMap::from([(0, 1), (1, 1)])),
    ] {
        let got = table.product(a, b);
        report.record(
            *got == expect,
            || json!({"a": a, "b": b, "computed": product_json(got)}),
        );
    }
    Ok(report)
}

pub fn tables_suite() -> Result<Vec<Report>> {
    let mut out = Vec::new();
    for fixture in fixtures::TABLES {
        out.push(table_report(fixture)?);
    }
    out.push(b2_level1_report()?);
    out.push(level1_report()?);
    Ok(out)
}

/// Memoised tensor products for one algebra.
struct Products<'a> {
    rs: &'a RootSystem,
    tensor: HashMap<(Weight, Weight), Arc<BTreeMap<Weight, u64>>>,
}

impl<'a> Products<'a> {
    fn new(rs: &'a RootSystem) -> Self {
        Products {
            rs,
            tensor: HashMap::new(),
        }
    }

    fn tensor(&mut self, lambda: &Weight, mu: &Weight) -> Result<Arc<BTreeMap<Weight, u64>>> {
        let key = (lambda.clone(), mu.clone());
        if let Some(t) = self.tensor.get(&key) {
            return Ok(t.clone());
        }
        let t = Arc::new(racah_speiser(self.rs, lambda, mu)?.terms);
        self.tensor.insert(key, t.clone());
        Ok(t)
    }
}

fn pointwise_le(a: &BTreeMap<Weight, u64>, b: &BTreeMap<Weight, u64>) -> bool {
    a.iter().all(|(w, &n)| n <= b.get(w).copied().unwrap_or(0))
}

fn map_json(m: &BTreeMap<Weight, u64>) -> serde_json::Value {
    json!(m.iter().map(|(w, n)| (w.to_string(), *n)).collect::<BTreeMap<_, _>>())
}

/// Level-k fusion against tensor products: equal from `⟨λ+μ,θ⟩` on,
/// bounded by them and increasing in k below it.
pub fn stabilization_report(rs: &RootSystem, max_label: i64, extra_levels: i64) -> Result<Report> {
    let mut report = Report::new(format!("{} fusion stabilizes at <lambda+mu,theta>", rs.id()));
    let labels = labels_up_to(rs.rank(), max_label);
    let mut products = Products::new(rs);
    for lambda in &labels {
        for mu in &labels {
            let tensor = products.tensor(lambda, mu)?;
            let t = rs.level_of(&(lambda + mu));
            let lo = rs.level_of(lambda).max(rs.level_of(mu)).max(1);
            let mut previous: Option<BTreeMap<Weight, u64>> = None;
            for k in lo..=t + extra_levels {
                let fk = kac_walton(rs, lambda, mu, k)?;
                let payload = || json!({"lambda": lambda, "mu": mu, "k": k, "fusion": map_json(&fk), "tensor": map_json(&tensor)});
                if k >= t {
                    report.record(fk == *tensor, payload);
                } else {
                    report.record(pointwise_le(&fk, &tensor), payload);
                }
                if let Some(prev) = &previous {
                    report.record(
                        pointwise_le(prev, &fk),
                        || json!({"lambda": lambda, "mu": mu, "k": k, "issue": "decreases from k-1"}),
                    );
                }
                previous = Some(fk);
            }
        }
    }
    Ok(report)
}

/// Whenever `⟨μ,α̌_j⟩ ≥ q_{β,j}` and `β+μ` is dominant, the multiplicity
/// of `β+μ` in `V^λ⊗V^μ` equals that of `β+μ+λ_j` in `V^λ⊗V^{μ+λ_j}`.
pub fn stable_multiplicity_report(rs: &RootSystem, max_label: i64) -> Result<Report> {
    let mut report = Report::new(format!("{} multiplicities stable past q", rs.id()));
    let mut products = Products::new(rs);
    let rank = rs.rank();
    for lambda in labels_up_to(rank, max_label) {
        let ws = weight_system(rs, &lambda)?;
        for (beta, _) in ws.iter() {
            for j in 1..=rank {
                let q = stability_threshold(rs, &ws, beta, j)? as i64;
                for mu in labels_up_to(rank, q + 2) {
                    let nu = beta + &mu;
                    if mu[j - 1] < q || !nu.is_dominant() {
                        continue;
                    }
                    let step = Weight::fundamental(rank, j);
                    let grown = &mu + &step;
                    let nu_grown = &nu + &step;
                    let before = products.tensor(&lambda, &mu)?.get(&nu).copied().unwrap_or(0);
                    let after = products.tensor(&lambda, &grown)?.get(&nu_grown).copied().unwrap_or(0);
                    report.record(before == after, || {
                        json!({"lambda": lambda, "beta": beta, "mu": mu, "j": j, "q": q, "before": before, "after": after})
                    });
                }
            }
        }
    }
    Ok(report)
}

/// `Π^λ+μ+ρ` lies inside the open level-k alcove exactly when `k ≥ ⟨λ+μ,θ⟩`.
pub fn containment_report(rs: &RootSystem, max_label: i64, max_level: i64) -> Result<Report> {
    let mut report = Report::new(format!("{} containment iff k >= <lambda+mu,theta>", rs.id()));
    let labels = labels_up_to(rs.rank(), max_label);
    for lambda in &labels {
        for mu in &labels {
            let t = rs.level_of(&(lambda + mu));
            for k in 1..=max_level {
                let inside = verify_fk_containment(rs, lambda, mu, k)?;
                report.record(
                    inside == (k >= t),
                    || json!({"lambda": lambda, "mu": mu, "k": k, "inside": inside}),
                );
            }
        }
    }
    Ok(report)
}

/// Instances `(λ, μ, β, k)` with `λ, μ, β+μ ∈ P_k^+` and `β ∈ Π^λ`.
fn level_instances(
    rs: &RootSystem,
    max_label: i64,
    max_level: i64,
    mut visit: impl FnMut(&Weight, &Weight, &WeightSystem, &Weight, i64) -> Result<()>,
) -> Result<()> {
    let labels = labels_up_to(rs.rank(), max_label);
    for lambda in &labels {
        let ws = weight_system(rs, lambda)?;
        for mu in &labels {
            let lo = rs.level_of(lambda).max(rs.level_of(mu)).max(1);
            for k in lo..=max_level {
                for (beta, _) in ws.iter() {
                    let nu = beta + mu;
                    if nu.is_dominant() && rs.level_of(&nu) <= k {
                        visit(lambda, mu, &ws, beta, k)?;
                    }
                }
            }
        }
    }
    Ok(())
}

/// Fusion equals tensor multiplicity at `β+μ` once `k ≥ ⟨μ,θ⟩ + r`,
/// with r the θ-string length below β.
pub fn theta_threshold_report(rs: &RootSystem, max_label: i64, max_level: i64) -> Result<Report> {
    let mut report = Report::experimental(format!(
        "{} fusion equals tensor past the theta-string threshold",
        rs.id()
    ));
    let mut products = Products::new(rs);
    let mut fusion: HashMap<(Weight, Weight, i64), BTreeMap<Weight, u64>> = HashMap::new();
    level_instances(rs, max_label, max_level, |lambda, mu, ws, beta, k| {
        let r = weight_string(rs, ws, beta, Direction::Theta)?.r as i64;
        if k < rs.level_of(mu) + r {
            return Ok(());
        }
        let nu = beta + mu;
        let key = (lambda.clone(), mu.clone(), k);
        if !fusion.contains_key(&key) {
            fusion.insert(key.clone(), kac_walton(rs, lambda, mu, k)?);
        }
        let f = fusion[&key].get(&nu).copied().unwrap_or(0);
        let m = products.tensor(lambda, mu)?.get(&nu).copied().unwrap_or(0);
        report.record(
            f == m,
            || json!({"lambda": lambda, "mu": mu, "beta": beta, "k": k, "fusion": f, "tensor": m}),
        );
        Ok(())
    })?;
    Ok(report)
}

/// An affine Weyl element taking `β+μ+ρ` into `Π^λ+μ+ρ` must be finite,
/// whenever `r_0(β+μ+ρ)` is not already in that set.
pub fn affine_probe_report(rs: &RootSystem, max_label: i64, max_level: i64) -> Result<Report> {
    let mut report = Report::experimental(format!("{} affine images of beta+mu+rho stay finite", rs.id()));
    level_instances(rs, max_label, max_level, |lambda, mu, _, beta, k| {
        match affine_image_probe(rs, lambda, mu, beta, k)? {
            ProbeOutcome::HypothesisNotMet { .. } => {}
            ProbeOutcome::Holds { .. } => report.record(true, || json!(null)),
            violated @ ProbeOutcome::Violated { .. } => report.record(
                false,
                || json!({"lambda": lambda, "mu": mu, "beta": beta, "k": k, "outcome": violated}),
            ),
        }
        Ok(())
    })?;
    Ok(report)
}

pub fn stability_suite() -> Result<Vec<Report>> {
    let mut out = Vec::new();
    for rs in rank2()? {
        out.push(stabilization_report(&rs, 3, 2)?);
    }
    for name in ["A2", "B2"] {
        out.push(stable_multiplicity_report(&root_system(name)?, 3)?);
    }
    for rs in rank2()? {
        out.push(containment_report(&rs, 3, 10)?);
    }
    for rs in rank2()? {
        out.push(theta_threshold_report(&rs, 3, 10)?);
        out.push(affine_probe_report(&rs, 3, 10)?);
    }
    Ok(out)
}

/// Dimension-triangle rule, direct spin rule and affine folding agree on A1.
pub fn sl2_rules_report(max_level: u32) -> Result<Report> {
    let a1 = root_system("A1")?;
    let mut report = Report::new(format!("sl2 fusion rules agree for k <= {max_level}"));
    for k in 1..=max_level {
        for a in 0..=k {
            for b in 0..=k {
                let folded = kac_walton(&a1, &Weight::from([a as i64]), &Weight::from([b as i64]), i64::from(k))?;
                let direct = sl2_fusion_direct(k, Spin::from_twice(a), Spin::from_twice(b))?;
                for c in 0..=k {
                    let f = folded.get(&Weight::from([c as i64])).copied().unwrap_or(0);
                    let d = direct.get(&Spin::from_twice(c)).copied().unwrap_or(0);
                    let p = u64::from(p_admissible(a + 1, b + 1, c + 1, k + 2));
                    report.record(
                        f == d && d == p,
                        || json!({"k": k, "a": a, "b": b, "c": c, "folding": f, "spins": d, "admissible": p}),
                    );
                }
            }
        }
    }
    Ok(report)
}

pub fn orbit_identities_suite() -> Result<Vec<Report>> {
    let mut sl2 = Report::new("orbit count vs sl2 fusion, k <= 8");
    for k in 1..=8 {
        sl2.merge(verify_sl2_orbit_fusion(k)?);
    }
    let mut sl3 = Report::new("orbit count vs sl3 fusion, k <= 5");
    for k in 1..=5 {
        sl3.merge(verify_sl3_orbit_fusion(k)?);
    }
    Ok(vec![sl2, sl3, sl2_rules_report(8)?])
}

fn cover_report(name: &str, partition: &GroupPartition, fixture: &TableFixture) -> Result<Report> {
    let rs = root_system(fixture.algebra)?;
    let computed = build_fusion_algebra(&rs, fixture.level)?.relabel(&fixture.weight_map())?;
    let identity: Vec<usize> = (0..partition.len()).collect();
    let mut report = Report::new(name);
    for (source, table) in [("printed", fixture.table()?), ("computed", computed)] {
        let ok = verify_cover(partition, &table, &identity)?;
        report.record(ok, || json!({"table": source}));
    }
    Ok(report)
}

pub fn covers_suite() -> Result<Vec<Report>> {
    let mut out = vec![
        cover_report(
            "Z2^2 covers A1 level 2",
            &fixtures::z2_squared_cover(),
            &fixtures::A1_LEVEL2,
        )?,
        cover_report(
            "Z2^3 covers A1 level 3",
            &fixtures::z2_cubed_cover(),
            &fixtures::A1_LEVEL3,
        )?,
        cover_report(
            "Z3^2 covers A2 level 2",
            &fixtures::z3_squared_cover(),
            &fixtures::A2_LEVEL2,
        )?,
    ];
    let mut w3 = Report::new("Z3^2 covers W3(1,1)");
    let ok = verify_cover(
        &fixtures::z3_squared_cover(),
        &fixtures::w3_table(),
        &fixtures::W3_BIJECTION,
    )?;
    w3.record(ok, || json!({"bijection": fixtures::W3_BIJECTION}));
    out.push(w3);

    let mut hamming = Report::new("Hamming partition of Z2^k covers sl2 level k, k <= 8");
    for k in 1..=8 {
        let (_, ok) = sl2_cover(k)?;
        hamming.record(ok, || json!({"k": k}));
    }
    out.push(hamming);

    let mut rejected = Report::new("A2 level 3 rejected for a coefficient above 1");
    let a2 = root_system("A2")?;
    let table = build_fusion_algebra(&a2, 3)?.relabel(&fixtures::A2_LEVEL3_PARTIAL.weight_map())?;
    let identity: Vec<usize> = (0..table.size()).collect();
    let outcome = verify_cover(&fixtures::z3_squared_cover(), &table, &identity);
    let ok = matches!(
        outcome,
        Err(Error::UnsupportedCoefficient {
            a: 9,
            b: 9,
            c: 9,
            value: 2
        })
    );
    rejected.record(ok, || json!({"outcome": format!("{outcome:?}")}));
    out.push(rejected);
    Ok(out)
}

pub fn ramanujan_report(max: u64) -> Result<Report> {
    let mut report = Report::new(format!("orbit counts three ways, n,k <= {max}"));
    for n in 1..=max {
        for k in 1..=max {
            let mut total = num_bigint::BigUint::from(0u32);
            for r in 0..n {
                let formula = count_orbits_formula(n, k, r)?;
                let partitions = count_orbits_partition_sum(n, k, r);
                let enumerated = count_orbits_bruteforce(n, k, r)?;
                report.record(formula == partitions.into() && partitions == enumerated, || {
                    json!({"n": n, "k": k, "r": r, "formula": formula.to_string(), "partitions": partitions, "enumerated": enumerated})
                });
                total += formula;
            }
            let expect = num_integer::binomial(num_bigint::BigUint::from(n + k - 1), num_bigint::BigUint::from(k));
            report.record(total == expect, || json!({"n": n, "k": k, "total": total.to_string()}));
            for r in 0..n.max(k) {
                let left = count_orbits_formula(n, k, r)?;
                let right = count_orbits_formula(k, n, r)?;
                report.record(
                    left == right,
                    || json!({"n": n, "k": k, "r": r, "M(n,k,r)": left.to_string(), "M(k,n,r)": right.to_string()}),
                );
            }
        }
    }
    Ok(report)
}

pub fn ramanujan_suite() -> Result<Vec<Report>> {
    let mut small = Report::new("M(3,3,r) sums to 10");
    let total: u64 = (0..3).map(|r| count_orbits_partition_sum(3, 3, r)).sum();
    small.record(total == 10, || json!({"total": total}));
    Ok(vec![ramanujan_report(8)?, small])
}
