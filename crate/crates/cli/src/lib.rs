//! Command-line front end: argument definitions, command dispatch and
//! text/JSON rendering. `main.rs` only parses, prints and sets the exit code.

pub mod diagram;
pub mod input;
pub mod text;

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use fusionkit::cover::{sl2_cover, verify_cover, GroupPartition};
use fusionkit::fixtures::{self, table_for, TableFixture};
use fusionkit::fusion::{build_fusion_algebra_with, kac_walton_with, FusionOptions, FusionTable, Spin};
use fusionkit::orbits::{count_orbits_formula, orbit_count_table, orbit_fusion_data};
use fusionkit::tensor::racah_speiser_with;
use fusionkit::verify::{all_passed, run_suite, Suite};
use fusionkit::weights::{dimension, weight_system_with, Limits};
use fusionkit::{root_system, Error, Family, Result, RootSystem, Weight};

use crate::diagram::{render_svg, DiagramSpec};
use crate::input::parse_weight;
use crate::text::{aligned, product_expr, upper_triangular};

#[derive(Parser, Debug)]
#[command(
    name = "fusionkit",
    version,
    about = "Weight multiplicities, tensor products and affine fusion rules"
)]
pub struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Write the output to FILE instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,
    /// Largest module dimension to expand.
    #[arg(long, global = true, value_name = "N")]
    pub max_dim: Option<u64>,
    /// Largest Weyl group to enumerate.
    #[arg(long, global = true, value_name = "N")]
    pub max_group_order: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decompose V(lambda) ⊗ V(mu).
    Tensor {
        algebra: String,
        #[arg(allow_hyphen_values = true)]
        lambda: String,
        #[arg(allow_hyphen_values = true)]
        mu: String,
    },
    /// Level-k fusion product of two weights.
    Fusion {
        algebra: String,
        level: i64,
        lambda: String,
        mu: String,
    },
    /// Full fusion table at level k.
    Table { algebra: String, level: i64 },
    /// Weight multiplicities of V(lambda).
    Weights { algebra: String, highest: String },
    /// SVG drawing of a rank-2 weight diagram.
    Diagram {
        algebra: String,
        /// Highest weight of the module to draw.
        #[arg(long, allow_hyphen_values = true)]
        highest: Option<String>,
        /// Translate the diagram by this weight, e.g. mu+rho.
        #[arg(long, allow_hyphen_values = true)]
        shift: Option<String>,
        /// Draw the affine wall for this level.
        #[arg(long)]
        level: Option<i64>,
        #[arg(long)]
        no_axes: bool,
        #[arg(long)]
        no_mults: bool,
    },
    /// Orbit counts for the cyclic action on tuples.
    #[command(subcommand)]
    Orbits(OrbitsCommand),
    /// Check that a group partition covers a fusion table.
    #[command(subcommand)]
    Cover(CoverCommand),
    /// Run a verification suite.
    Verify {
        /// tables, stability, orbit-identities, covers, ramanujan or all
        suite: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum OrbitsCommand {
    /// Orbits of Z_n on Z_n^k with coordinate sum r.
    #[command(name = "M", alias = "m")]
    Count { n: u64, k: u64, r: u64 },
    /// The counts for every residue r.
    Table { n: u64, k: u64 },
    /// Triple orbit counts next to A_{n-1} level-k fusion coefficients.
    Fusion { n: u32, k: u32 },
}

#[derive(Subcommand, Debug)]
pub enum CoverCommand {
    /// Hamming partition of Z_2^k against sl2 at level k.
    Sl2 { k: u32 },
    /// A stored cover: z2-squared, z2-cubed, z3-squared or w3.
    Fixture { name: String },
}

pub struct Output {
    pub text: String,
    pub json: Value,
    /// False when a check ran and failed.
    pub ok: bool,
}

impl Output {
    fn ok(text: String, json: Value) -> Self {
        Output { text, json, ok: true }
    }
}

/// 1 for failed checks, 2 for bad requests.
pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::AxiomViolation(_) | Error::CountMismatch { .. } | Error::InexactDivision { .. } => 1,
        _ => 2,
    }
}

fn limits(cli: &Cli) -> Limits {
    let d = Limits::default();
    Limits {
        max_dim: cli.max_dim.unwrap_or(d.max_dim),
        max_group_order: cli.max_group_order.unwrap_or(d.max_group_order),
    }
}

fn terms_json(terms: &BTreeMap<Weight, u64>) -> Value {
    json!(terms
        .iter()
        .map(|(w, m)| json!({"weight": w, "mult": m}))
        .collect::<Vec<_>>())
}

fn is_a1(rs: &RootSystem) -> bool {
    rs.id().family() == Family::A && rs.rank() == 1
}

fn terms_text(rs: &RootSystem, terms: &BTreeMap<Weight, u64>) -> String {
    let spins = is_a1(rs);
    let mut rows = vec![vec!["weight".to_string(), "mult".into(), "dim".into()]];
    if spins {
        rows[0].push("spin".into());
    }
    for (w, m) in terms.iter().rev() {
        let mut row = vec![w.to_string(), m.to_string(), rs.weyl_dimension(w).to_string()];
        if spins {
            row.push(Spin::from_twice(w[0] as u32).to_string());
        }
        rows.push(row);
    }
    aligned(&rows)
}

/// A product written in a fixture's `[i]` labels, if every weight has one.
fn fixture_expr(fixture: &TableFixture, terms: &BTreeMap<Weight, u64>) -> Option<String> {
    let map = fixture.weight_map();
    let mut p = BTreeMap::new();
    for (w, m) in terms {
        p.insert(map.iter().position(|x| x == w)?, *m);
    }
    Some(product_expr(&p))
}

pub fn run(cli: &Cli) -> Result<Output> {
    let limits = limits(cli);
    match &cli.command {
        Command::Tensor { algebra, lambda, mu } => {
            let rs = root_system(algebra)?;
            let (l, m) = (parse_weight(&rs, lambda)?, parse_weight(&rs, mu)?);
            let d = racah_speiser_with(&rs, &l, &m, &limits)?;
            let json = json!({"algebra": rs.id(), "left": l, "right": m, "terms": terms_json(&d.terms)});
            Ok(Output::ok(terms_text(&rs, &d.terms), json))
        }
        Command::Fusion {
            algebra,
            level,
            lambda,
            mu,
        } => {
            let rs = root_system(algebra)?;
            let (l, m) = (parse_weight(&rs, lambda)?, parse_weight(&rs, mu)?);
            let terms = kac_walton_with(&rs, &l, &m, *level, &limits)?;
            let mut text = terms_text(&rs, &terms);
            let mut json =
                json!({"algebra": rs.id(), "level": level, "left": l, "right": m, "terms": terms_json(&terms)});
            if let Some(fixture) = table_for(&rs.id().to_string(), *level) {
                if let (Some(a), Some(b), Some(p)) = (
                    fixture_expr(fixture, &BTreeMap::from([(l.clone(), 1)])),
                    fixture_expr(fixture, &BTreeMap::from([(m.clone(), 1)])),
                    fixture_expr(fixture, &terms),
                ) {
                    text.push_str(&format!("{a}·{b} = {p}\n"));
                    json["labels"] = json!(format!("{a}·{b} = {p}"));
                }
            }
            Ok(Output::ok(text, json))
        }
        Command::Table { algebra, level } => {
            let rs = root_system(algebra)?;
            let opts = FusionOptions {
                limits,
                ..FusionOptions::default()
            };
            let fa = build_fusion_algebra_with(&rs, *level, &opts)?;
            let fixture = table_for(&rs.id().to_string(), *level);
            let labels: Vec<Weight> = match fixture {
                Some(f) => f.weight_map(),
                None => fa.basis().to_vec(),
            };
            let table = fa.relabel(&labels)?;
            let mut text = upper_triangular(&table);
            text.push('\n');
            let legend: Vec<Vec<String>> = labels
                .iter()
                .enumerate()
                .map(|(i, w)| vec![format!("[{i}]"), w.to_string()])
                .collect();
            text.push_str(&aligned(&legend));
            let mut json = serde_json::to_value(&fa).map_err(|e| Error::Serialization(e.to_string()))?;
            json["labels"] = json!(labels);
            Ok(Output::ok(text, json))
        }
        Command::Weights { algebra, highest } => {
            let rs = root_system(algebra)?;
            let h = parse_weight(&rs, highest)?;
            let ws = weight_system_with(&rs, &h, &limits)?;
            let dim = dimension(&ws);
            let mut text = terms_text_plain(&ws.mults);
            text.push_str(&format!("dimension {dim}\n"));
            let json = json!({"algebra": rs.id(), "highest": h, "dimension": dim, "weights": terms_json(&ws.mults)});
            Ok(Output::ok(text, json))
        }
        Command::Diagram {
            algebra,
            highest,
            shift,
            level,
            no_axes,
            no_mults,
        } => {
            let rs = root_system(algebra)?;
            let mut spec = DiagramSpec::new(rs.id());
            if let Some(h) = highest {
                spec.highest = Some(parse_weight(&rs, h)?);
            }
            if let Some(s) = shift {
                spec.shift = parse_weight(&rs, s)?;
            }
            spec.level = *level;
            spec.show_axes = !no_axes;
            spec.show_mults = !no_mults;
            let svg = render_svg(&spec, &limits)?;
            let json = json!({"algebra": rs.id(), "svg": svg});
            Ok(Output::ok(svg, json))
        }
        Command::Orbits(cmd) => orbits(cmd),
        Command::Cover(cmd) => cover(cmd),
        Command::Verify { suite } => {
            let suite: Suite = suite.parse()?;
            let reports = run_suite(suite)?;
            let ok = all_passed(&reports);
            let mut text = String::new();
            for r in &reports {
                let status = match (r.passed(), r.experimental) {
                    (true, false) => "PASS",
                    (false, false) => "FAIL",
                    (true, true) => "PASS (experimental)",
                    (false, true) => "FAIL (experimental)",
                };
                text.push_str(&format!("{status}  {}  [{} checks]\n", r.name, r.checked));
                for c in r.counterexamples.iter().take(5) {
                    text.push_str(&format!("    {c}\n"));
                }
            }
            text.push_str(if ok {
                "all checks passed\n"
            } else {
                "verification failed\n"
            });
            let json = json!({"suite": suite.to_string(), "passed": ok, "reports": reports});
            Ok(Output { text, json, ok })
        }
    }
}

fn terms_text_plain(mults: &BTreeMap<Weight, u64>) -> String {
    let mut rows = vec![vec!["weight".to_string(), "mult".into()]];
    rows.extend(mults.iter().rev().map(|(w, m)| vec![w.to_string(), m.to_string()]));
    aligned(&rows)
}

fn orbits(cmd: &OrbitsCommand) -> Result<Output> {
    match *cmd {
        OrbitsCommand::Count { n, k, r } => {
            let count = count_orbits_formula(n, k, r)?;
            let json = json!({"n": n, "k": k, "r": r, "count": count.to_string()});
            Ok(Output::ok(format!("{count}\n"), json))
        }
        OrbitsCommand::Table { n, k } => {
            let table = orbit_count_table(n, k)?;
            let mut rows = vec![vec!["r".to_string(), "M(n,k,r)".into()]];
            rows.extend(table.iter().map(|(r, c)| vec![r.to_string(), c.to_string()]));
            let json = json!({"n": n, "k": k, "counts": table.values().map(|c| c.to_string()).collect::<Vec<_>>()});
            Ok(Output::ok(aligned(&rows), json))
        }
        OrbitsCommand::Fusion { n, k } => {
            let data = orbit_fusion_data(n, k)?;
            // The identities relating the two columns are known for n = 2, 3.
            let expected = |f: u64| match n {
                2 => Some(f),
                3 => Some(f * (f + 1) / 2),
                _ => None,
            };
            let ok = data
                .iter()
                .all(|row| expected(row.fusion).is_none_or(|e| e == row.orbits));
            let mut rows = vec![vec![
                "a".to_string(),
                "b".into(),
                "c".into(),
                "orbits".into(),
                "fusion".into(),
            ]];
            for row in &data {
                let occ = |l: &fusionkit::orbits::OrbitLabel| {
                    l.occupancy.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
                };
                rows.push(vec![
                    occ(&row.a),
                    occ(&row.b),
                    occ(&row.c),
                    row.orbits.to_string(),
                    row.fusion.to_string(),
                ]);
            }
            Ok(Output {
                text: aligned(&rows),
                json: json!({"n": n, "k": k, "rows": data, "consistent": ok}),
                ok,
            })
        }
    }
}

fn cover_output(name: &str, partition: &GroupPartition, table: &FusionTable, bijection: &[usize]) -> Result<Output> {
    let ok = verify_cover(partition, table, bijection)?;
    let text = format!("{name}: {}\n", if ok { "pass" } else { "fail" });
    let json = json!({"cover": name, "passed": ok, "partition": partition, "bijection": bijection});
    Ok(Output { text, json, ok })
}

fn cover(cmd: &CoverCommand) -> Result<Output> {
    match cmd {
        CoverCommand::Sl2 { k } => {
            let (partition, _) = sl2_cover(*k)?;
            let rs = root_system("A1")?;
            let table = fusionkit::fusion::build_fusion_algebra(&rs, i64::from(*k))?.to_table();
            let bijection: Vec<usize> = (0..partition.len()).collect();
            cover_output(
                &format!("Z_2^{k} Hamming partition covers sl2 level {k}"),
                &partition,
                &table,
                &bijection,
            )
        }
        CoverCommand::Fixture { name } => {
            let identity = |n: usize| (0..n).collect::<Vec<_>>();
            let (partition, table, bijection) = match name.as_str() {
                "z2-squared" => (fixtures::z2_squared_cover(), fixtures::A1_LEVEL2.table()?, identity(3)),
                "z2-cubed" => (fixtures::z2_cubed_cover(), fixtures::A1_LEVEL3.table()?, identity(4)),
                "z3-squared" => (fixtures::z3_squared_cover(), fixtures::A2_LEVEL2.table()?, identity(6)),
                "w3" => (
                    fixtures::z3_squared_cover(),
                    fixtures::w3_table(),
                    fixtures::W3_BIJECTION.to_vec(),
                ),
                _ => {
                    return Err(Error::Parse {
                        input: name.clone(),
                        position: 0,
                        message: "expected z2-squared, z2-cubed, z3-squared or w3".into(),
                    })
                }
            };
            cover_output(name, &partition, &table, &bijection)
        }
    }
}
