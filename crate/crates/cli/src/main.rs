use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use dimerweb::dimer::{self, fmt_subset};
use dimerweb::moves::{self, apply_move, Move};
use dimerweb::network::PlanarNetwork;
use dimerweb::poly::Rational;
use dimerweb::report::Report;
use dimerweb::web::Web;
use dimerweb::{tl, webimm};

#[derive(Parser)]
#[command(name = "dimerweb", version, about = "Exact dimer, double-dimer and triple-dimer invariants of planar bipartite networks")]
struct Cli {
    /// Override symbolic weights, e.g. a=2,b=1/3
    #[arg(long, global = true, value_name = "name=p/q,...")]
    weights: Option<String>,
    /// Seed for randomized checks
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// JSON output mirroring the TSV columns
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Boundary measurements Δ_I for every k-subset
    Plucker { network: PathBuf },
    /// Temperley-Lieb immanants F_{τ,T}
    Tl { network: PathBuf },
    /// Web immanants F_D
    Webs { network: PathBuf },
    /// Reduce a web to non-elliptic webs
    Reduce { web: String },
    /// Apply a move script and certify each step
    Move {
        network: PathBuf,
        script: PathBuf,
        /// Write the final network here
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run verification suites
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        network: PathBuf,
    },
    /// The ensembles M(N), A(N) and D(N)
    Ensembles { network: PathBuf },
    /// Sizes of the enumerated objects
    Count { network: PathBuf },
    /// Degree two and three basis rank checks
    Rank { network: PathBuf },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    All,
    Plucker,
    Tl,
    Triple,
    Moves,
    Confluence,
    Rank,
    Bridge,
}

struct Table {
    columns: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

impl Table {
    fn new(columns: &[&'static str]) -> Table {
        Table {
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    fn report(&mut self, case: &str, r: &Report) {
        let status = if r.passed() { "pass" } else { "FAIL" };
        let witness = r.first_failure().map_or_else(|| format!("{} checked", r.checked), str::to_string);
        self.push(vec![case.to_string(), status.to_string(), witness]);
    }

    fn print(&self, json: bool) {
        if json {
            let rows: Vec<serde_json::Map<String, serde_json::Value>> = self
                .rows
                .iter()
                .map(|r| {
                    self.columns
                        .iter()
                        .zip(r)
                        .map(|(c, v)| (c.to_string(), serde_json::Value::String(v.clone())))
                        .collect()
                })
                .collect();
            println!("{}", serde_json::to_string_pretty(&rows).unwrap());
        } else {
            println!("{}", self.columns.join("\t"));
            for r in &self.rows {
                println!("{}", r.join("\t"));
            }
        }
    }
}

enum Failure {
    Input(String),
    Verification,
}

fn input<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Input(e.to_string())
}

fn parse_weights(spec: &str) -> Result<HashMap<String, Rational>, Failure> {
    spec.split(',')
        .filter(|s| !s.is_empty())
        .map(|kv| {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| Failure::Input(format!("bad weight `{kv}`, expected name=p/q")))?;
            let value: Rational = v.trim().parse().map_err(|_| Failure::Input(format!("bad rational `{v}`")))?;
            Ok((k.trim().to_string(), value))
        })
        .collect()
}

fn load(path: &Path, weights: &Option<String>) -> Result<PlanarNetwork, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let net = PlanarNetwork::parse(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    Ok(match weights {
        Some(w) => net.specialize(&parse_weights(w)?),
        None => net,
    })
}

fn run(cli: &Cli) -> Result<Table, Failure> {
    let net = |p: &Path| load(p, &cli.weights);
    match &cli.command {
        Command::Plucker { network } => {
            let n = net(network)?;
            let pt = dimer::grassmann_point(&n).map_err(input)?;
            let mut t = Table::new(&["I", "Delta"]);
            for (i, f) in &pt.coords {
                t.push(vec![fmt_subset(i), f.to_string()]);
            }
            Ok(t)
        }
        Command::Tl { network } => {
            let mut t = Table::new(&["pairing", "F"]);
            for (p, f) in tl::tl_immanants(&net(network)?) {
                t.push(vec![p.to_string(), f.to_string()]);
            }
            Ok(t)
        }
        Command::Webs { network } => {
            let mut t = Table::new(&["web", "F_D"]);
            for (w, f) in webimm::web_immanants(&net(network)?).into_values() {
                t.push(vec![w.to_string(), f.to_string()]);
            }
            Ok(t)
        }
        Command::Reduce { web } => {
            let w = Web::parse(web).map_err(input)?;
            let mut t = Table::new(&["coefficient", "web"]);
            for (d, c) in w.reduce().terms() {
                t.push(vec![c.to_string(), d.to_string()]);
            }
            Ok(t)
        }
        Command::Move { network, script, out } => {
            let mut current = net(network)?;
            let text = std::fs::read_to_string(script).map_err(|e| Failure::Input(format!("{}: {e}", script.display())))?;
            let mut t = Table::new(&["step", "move", "alpha", "status"]);
            let mut failed = false;
            let steps = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
            for (k, line) in steps.enumerate() {
                let m = Move::parse(line).map_err(input)?;
                let applied = apply_move(&current, &m).map_err(input)?;
                let (alpha, status) = match &applied.alpha {
                    Some(a) => {
                        let r = moves::verify_move_invariance(&current, &applied);
                        failed |= !r.passed();
                        (a.to_string(), if r.passed() { "pass".to_string() } else { r.to_string() })
                    }
                    None => ("-".to_string(), "new point".to_string()),
                };
                t.push(vec![(k + 1).to_string(), m.to_string(), alpha, status]);
                current = applied.network;
            }
            if let Some(path) = out {
                std::fs::write(path, current.serialize()).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            }
            if failed {
                t.print(cli.json);
                return Err(Failure::Verification);
            }
            Ok(t)
        }
        Command::Verify { suite, network } => {
            let n = net(network)?;
            let t = verify(&n, *suite, cli.seed);
            if t.rows.iter().any(|r| r[1] != "pass") {
                t.print(cli.json);
                return Err(Failure::Verification);
            }
            Ok(t)
        }
        Command::Ensembles { network } => {
            let n = net(network)?;
            let mut t = Table::new(&["ensemble", "element"]);
            for i in dimer::matroid(&n).map_err(input)? {
                t.push(vec!["M".into(), fmt_subset(&i)]);
            }
            for p in tl::pairing_ensemble(&n) {
                t.push(vec!["A".into(), p.to_string()]);
            }
            for w in webimm::web_ensemble(&n) {
                t.push(vec!["D".into(), w.to_string()]);
            }
            Ok(t)
        }
        Command::Count { network } => {
            let n = net(network)?;
            let st = n.stats();
            let mut t = Table::new(&["quantity", "value"]);
            let rows: Vec<(&str, usize)> = vec![
                ("n", n.n()),
                ("k", st.k.max(0) as usize),
                ("matchings", dimer::enumerate_matchings(&n).len()),
                ("M", dimer::matroid(&n).map(|m| m.len()).unwrap_or(0)),
                ("tl_subgraphs", tl::enumerate_tl_subgraphs(&n).len()),
                ("A", tl::pairing_ensemble(&n).len()),
                ("weblike_subgraphs", webimm::enumerate_weblike(&n).len()),
                ("D", webimm::web_ensemble(&n).len()),
            ];
            for (q, v) in rows {
                t.push(vec![q.to_string(), v.to_string()]);
            }
            Ok(t)
        }
        Command::Rank { network } => {
            let n = net(network)?;
            let t = verify(&n, Suite::Rank, cli.seed);
            if t.rows.iter().any(|r| r[1] != "pass") {
                t.print(cli.json);
                return Err(Failure::Verification);
            }
            Ok(t)
        }
    }
}

fn verify(net: &PlanarNetwork, suite: Suite, seed: u64) -> Table {
    let mut t = Table::new(&["case", "status", "witness"]);
    let on = |s: Suite| suite == s || (suite == Suite::All && s != Suite::Bridge);
    if on(Suite::Plucker) {
        t.report("plucker", &dimer::verify_plucker(net));
    }
    if on(Suite::Tl) {
        t.report("tl-sweep", &tl::verify_tl_sweep(net));
    }
    if on(Suite::Triple) {
        t.report("triple-sweep", &webimm::verify_triple_sweep(net));
    }
    if on(Suite::Moves) {
        for m in moves::move_sites(net) {
            let r = match apply_move(net, &m) {
                Ok(a) => moves::verify_move_invariance(net, &a),
                Err(e) => {
                    let mut r = Report::new("move");
                    r.check(false, || e.to_string());
                    r
                }
            };
            t.report(&format!("move {m}"), &r);
        }
    }
    if on(Suite::Confluence) {
        t.report("confluence", &confluence(net, seed));
    }
    if on(Suite::Rank) {
        t.report("rank-2", &moves::basis_rank_check(net, 2));
        t.report("rank-3", &moves::basis_rank_check(net, 3));
    }
    if on(Suite::Bridge) {
        for i in 1..net.n() {
            match moves::verify_bridge_tl(net, i) {
                Ok((r, _)) => t.report(&format!("bridge-tl {i}"), &r),
                Err(e) => t.push(vec![format!("bridge-tl {i}"), "FAIL".into(), e.to_string()]),
            }
            match moves::verify_bridge_web(net, i) {
                Ok((r, _)) => t.report(&format!("bridge-web {i}"), &r),
                Err(e) => t.push(vec![format!("bridge-web {i}"), "FAIL".into(), e.to_string()]),
            }
        }
    }
    t
}

/// Random reduction orders on the elliptic webs of the network's weblike
/// subgraphs agree with the deterministic reduction.
fn confluence(net: &PlanarNetwork, seed: u64) -> Report {
    let mut report = Report::new("confluence");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = std::collections::BTreeSet::new();
    let webs: Vec<Web> = webimm::enumerate_weblike(net)
        .iter()
        .map(|(g, _)| webimm::web_of(net, g))
        .filter(|w| !w.is_nonelliptic() && seen.insert(w.key()))
        .take(10)
        .collect();
    for w in &webs {
        let base = w.reduce();
        report.check(base.terms().all(|(d, _)| d.degree() == w.degree()), || format!("degree changes in {w}"));
        for _ in 0..20 {
            let other = w.reduce_random(&mut rng);
            report.check(other == base, || format!("order-dependent result for {w}"));
        }
    }
    report
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(t) => {
            t.print(cli.json);
            ExitCode::SUCCESS
        }
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
