use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use metaloop::analysis;
use metaloop::coset;
use metaloop::io::{self, StructureFile};
use metaloop::products::{self, FactorMaps};
use metaloop::search::{self, Predicate};
use metaloop::topology;
use metaloop::wreath;
use metaloop::{ClassTag, Error, FiniteBinarySystem, Report, Result, Transversal};

#[derive(Parser)]
#[command(name = "metaloop", version, about = "Checks loops, metagroups and their products given as Cayley tables")]
struct Cli {
    /// Bound on wreath function spaces and product orders.
    #[arg(long, global = true)]
    max_size: Option<usize>,
    /// Worker threads for exhaustive search.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for randomized search.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Direct,
    Smashed,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a table, or check it up to a given axiom level.
    Verify {
        table: PathBuf,
        /// quasigroup, loop, metagroup, central or group
        #[arg(long)]
        level: Option<ClassTag>,
    },
    /// Commutant, nuclei, center and associator statistics.
    Analyze { table: PathBuf },
    /// Right cosets of a subset and the induced quotient.
    Coset {
        table: PathBuf,
        #[arg(long)]
        sub: PathBuf,
        /// Write the quotient table here.
        #[arg(long)]
        quotient_table: Option<PathBuf>,
    },
    /// Transversal set with the psi/tau factorization.
    Transversal {
        table: PathBuf,
        #[arg(long)]
        sub: PathBuf,
        /// Also check the nested transversals of A in AC1 in D.
        #[arg(long, requires = "c1")]
        check_nested: bool,
        #[arg(long)]
        c1: Option<PathBuf>,
    },
    /// Direct or smashed twisted product of two tables.
    Product {
        #[arg(long, value_enum)]
        mode: Mode,
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        /// Factor maps; missing maps are trivial.
        #[arg(long)]
        factors: Option<PathBuf>,
        /// Check the factor system, the embeddings and invariance of B.
        #[arg(long)]
        validate: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Compose two smashed products into D = (A1 * B1) * (A2 * B2).
    Compose {
        #[arg(long)]
        spec: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Smashed twisted wreath product.
    Wreath {
        #[arg(long)]
        spec: PathBuf,
        /// Transport along automorphisms given by --i and --j.
        #[arg(long, requires_all = ["i", "j"])]
        theta: bool,
        #[arg(long)]
        i: Option<PathBuf>,
        #[arg(long)]
        j: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Continuity of the operations, base axioms and W-set identities.
    Topology {
        #[arg(long, requires = "top")]
        table: Option<PathBuf>,
        #[arg(long)]
        top: Option<PathBuf>,
        /// Check a family of neighborhood bases against the table.
        #[arg(long, requires = "table")]
        check_base: Option<PathBuf>,
        /// Check the W-set identities on functions from V points into B.
        #[arg(long, requires_all = ["v", "b"])]
        w_sets: bool,
        #[arg(long)]
        v: Option<usize>,
        #[arg(long)]
        b: Option<PathBuf>,
    },
    /// Write a catalog structure.
    Catalog {
        /// cyclic, klein, s3, q8, dihedral, elementary or cd_basis
        name: String,
        params: Vec<usize>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Count reduced Latin squares of an order satisfying a predicate.
    Search {
        #[arg(long)]
        order: usize,
        #[arg(long, default_value = "any")]
        predicate: Predicate,
        /// Random samples when the order is beyond exhaustive reach.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
}

/// What a command found: data lines, an optional report, and the pass flag.
struct Outcome {
    lines: Vec<String>,
    data: serde_json::Map<String, Value>,
    report: Report,
    /// Printed verbatim instead of the fields.
    raw: Option<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome {
            lines: Vec::new(),
            data: serde_json::Map::new(),
            report: Report::new(),
            raw: None,
        }
    }

    fn field(&mut self, key: &str, text: impl std::fmt::Display, value: Value) {
        self.lines.push(format!("{key}: {text}"));
        self.data.insert(key.to_string(), value);
    }

    fn passed(&self) -> bool {
        self.report.all_passed()
    }

    fn print(&self, format: Format) {
        if let Some(raw) = &self.raw {
            print!("{raw}");
            return;
        }
        match format {
            Format::Text => {
                for l in &self.lines {
                    println!("{l}");
                }
                print!("{}", self.report);
            }
            Format::Json => {
                let mut v = self.data.clone();
                v.insert("passed".into(), json!(self.passed()));
                v.insert("checks".into(), json!(self.report.items));
                if !self.report.notes.is_empty() {
                    v.insert("notes".into(), json!(self.report.notes));
                }
                println!("{}", serde_json::to_string_pretty(&v).expect("serializable"));
            }
        }
    }
}

fn members(s: &metaloop::Subset) -> String {
    format!("{:?}", s.members())
}

fn write_table(path: &Path, g: &FiniteBinarySystem, out: &mut Outcome) -> Result<()> {
    io::save(path, &StructureFile::table(g))?;
    out.field("written", path.display(), json!(path.display().to_string()));
    Ok(())
}

fn describe(g: &FiniteBinarySystem, out: &mut Outcome) {
    out.field("order", g.order(), json!(g.order()));
    let class = g.classify();
    out.field("class", class, json!(class));
}

fn verify(table: &Path, level: Option<ClassTag>) -> Result<Outcome> {
    let g = io::load_table(table, false)?;
    let mut out = Outcome::new();
    describe(&g, &mut out);
    if let Some(t) = analysis::first_nonassociative_triple(&g) {
        out.field("nonassociative", format!("{t:?}"), json!(t));
    }
    if let Some(level) = level {
        out.report = analysis::verify_class(&g, level);
    }
    Ok(out)
}

fn analyze(table: &Path) -> Result<Outcome> {
    let g = io::load_table(table, false)?;
    let a = analysis::analyze(&g)?;
    let mut out = Outcome::new();
    let v = serde_json::to_value(&a).expect("serializable");
    if let Value::Object(map) = v {
        for (k, val) in map {
            let text = match &val {
                Value::Null => "none".to_string(),
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            out.lines.push(format!("{k}: {text}"));
            out.data.insert(k, val);
        }
    }
    Ok(out)
}

fn coset_cmd(table: &Path, sub: &Path, quotient_table: Option<&Path>) -> Result<Outcome> {
    let g = io::load_table(table, true)?;
    let h = io::load_subset(sub, g.order())?;
    let mut out = Outcome::new();
    out.field("sub", members(&h), json!(h.members()));
    let cond = coset::check_coset_condition(&g, &h)?;
    let holds = cond.holds();
    out.report.verdict("(Hb)a = H(ba)", cond);
    if !holds {
        return Ok(out);
    }
    let q = coset::quotient(&g, &h)?;
    let cosets: Vec<Vec<usize>> = q.cosets().iter().map(|c| c.members()).collect();
    out.field("cosets", format!("{cosets:?}"), json!(cosets));
    out.field("pi", format!("{:?}", q.pi_table()), json!(q.pi_table()));
    out.report
        .verdict("pi(g b) = S_b(pi(g))", coset::check_translation_commutes(&g, &q)?);
    if let Some(path) = quotient_table {
        let quo = coset::quotient_structure(&g, &q)?;
        describe(&quo, &mut out);
        write_table(path, &quo, &mut out)?;
    }
    Ok(out)
}

fn transversal_cmd(table: &Path, sub: &Path, c1: Option<&Path>) -> Result<Outcome> {
    let g = io::load_table(table, true)?;
    let h = io::load_subset(sub, g.order())?;
    let t = Transversal::new(&g, &h)?;
    let mut out = Outcome::new();
    out.field("reps", format!("{:?}", t.reps()), json!(t.reps()));
    let psi: Vec<usize> = (0..g.order()).map(|d| t.psi(d)).collect();
    let tau: Vec<usize> = (0..g.order()).map(|d| t.tau(d)).collect();
    out.field("psi", format!("{psi:?}"), json!(psi));
    out.field("tau", format!("{tau:?}"), json!(tau));
    out.report = t.check(&g);
    if let Some(c1) = c1 {
        let c1 = io::load_subset(c1, g.order())?;
        let nested = coset::check_nested_transversals(&g, &h, &c1)?;
        out.field("ac1", members(&nested.ac1), json!(nested.ac1.members()));
        out.report.extend("nested: ", nested.report);
    }
    Ok(out)
}

fn product_cmd(
    mode: Mode,
    a: &Path,
    b: &Path,
    factors: Option<&Path>,
    validate: bool,
    output: Option<&Path>,
) -> Result<Outcome> {
    let a = io::load_table(a, false)?;
    let b = io::load_table(b, false)?;
    let mut out = Outcome::new();
    let g = match mode {
        Mode::Direct => products::direct_product(&a, &b),
        Mode::Smashed => {
            let maps = match factors {
                Some(p) => io::load_factors(p)?,
                None => FactorMaps::default(),
            };
            let f = maps.apply(a, b)?;
            if validate {
                out.report.extend("factors: ", products::validate_factors(&f));
            }
            let g = products::smashed_twisted_product(&f)?;
            if validate {
                out.report
                    .extend("product: ", products::embeddings_and_invariance(&g, &f)?);
            }
            g
        }
    };
    describe(&g, &mut out);
    if let Some(p) = output {
        write_table(p, &g, &mut out)?;
    }
    Ok(out)
}

fn compose_cmd(spec: &Path, output: Option<&Path>) -> Result<Outcome> {
    let spec = io::load_compose_spec(spec)?;
    let c = products::compose_smashed(&spec)?;
    let mut out = Outcome::new();
    describe(&c.d, &mut out);
    out.field("a", members(&c.a), json!(c.a.members()));
    out.field("c1", members(&c.c1), json!(c.c1.members()));
    out.report = c.report;
    if let Some(p) = output {
        write_table(p, &c.d, &mut out)?;
    }
    Ok(out)
}

fn wreath_cmd(
    spec: &Path,
    maps: Option<(&Path, &Path)>,
    max_size: Option<usize>,
    output: Option<&Path>,
) -> Result<Outcome> {
    let mut spec = io::load_wreath_spec(spec)?;
    if let Some(m) = max_size {
        spec.max_size = m;
    }
    let w = wreath::wreath_product(spec)?;
    let mut out = Outcome::new();
    describe(w.product(), &mut out);
    out.field(
        "transversal",
        format!("{:?}", w.transversal().reps()),
        json!(w.transversal().reps()),
    );
    out.field("functions", w.functions().len(), json!(w.functions().len()));
    out.report.extend("", w.check_factors());
    out.report.extend("", w.check_action());
    if let Some((i, j)) = maps {
        let theta = wreath::theta_isomorphism(&w, &io::load_map(i)?, &io::load_map(j)?)?;
        out.report.extend("", theta.report);
    }
    if let Some(p) = output {
        write_table(p, w.product(), &mut out)?;
    }
    Ok(out)
}

fn topology_cmd(
    table: Option<&Path>,
    top: Option<&Path>,
    base: Option<&Path>,
    w_sets: Option<(usize, &Path)>,
    max_size: usize,
) -> Result<Outcome> {
    let mut out = Outcome::new();
    if let (Some(table), Some(top)) = (table, top) {
        let g = io::load_table(table, true)?;
        let t = io::load_topology(top)?;
        out.report.extend("", topology::check_continuity(&g, &t)?);
        let derived = topology::base_from_topology(&g, &t)?;
        let back = topology::topology_from_base(&derived)?;
        out.report.check("topology recovered from its bases", back == t, Vec::new);
        if let Some(base) = base {
            let base = io::load_base(base)?;
            out.report.extend("base: ", topology::verify_base_axioms(&g, &base)?);
        }
    } else if top.is_some() {
        return Err(Error::Input("--top needs --table".into()));
    }
    if let Some((v, b)) = w_sets {
        let b = io::load_table(b, true)?;
        out.report
            .extend("W: ", topology::verify_w_set_identities(v, &b, max_size)?);
    }
    if out.report.items.is_empty() {
        return Err(Error::Input(
            "nothing to check: give --table with --top, or --w-sets".into(),
        ));
    }
    Ok(out)
}

fn catalog_cmd(name: &str, params: &[usize], output: Option<&Path>) -> Result<Outcome> {
    let g = metaloop::catalog::catalog(name, params)?;
    let mut out = Outcome::new();
    match output {
        Some(p) => {
            describe(&g, &mut out);
            write_table(p, &g, &mut out)?;
        }
        None => out.raw = Some(StructureFile::table(&g).to_json()),
    }
    Ok(out)
}

fn search_cmd(order: usize, predicate: Predicate, samples: usize, jobs: Option<usize>, seed: Option<u64>) -> Result<Outcome> {
    let s = match seed {
        Some(seed) if order > search::MAX_EXHAUSTIVE_ORDER => search::search_random(order, predicate, samples, seed)?,
        _ => search::search_small(order, predicate, jobs)?,
    };
    let mut out = Outcome::new();
    let v = serde_json::to_value(&s).expect("serializable");
    if let Value::Object(map) = v {
        for (k, val) in map {
            let text = match &val {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            out.lines.push(format!("{k}: {text}"));
            out.data.insert(k, val);
        }
    }
    if !s.exhaustive {
        out.field("seed", seed.unwrap_or_default(), json!(seed));
    }
    Ok(out)
}

fn run(cli: Cli) -> Result<Outcome> {
    let max_size = cli.max_size.unwrap_or(wreath::DEFAULT_MAX_SIZE);
    match cli.command {
        Command::Verify { table, level } => verify(&table, level),
        Command::Analyze { table } => analyze(&table),
        Command::Coset { table, sub, quotient_table } => coset_cmd(&table, &sub, quotient_table.as_deref()),
        Command::Transversal { table, sub, check_nested, c1 } => {
            transversal_cmd(&table, &sub, c1.as_deref().filter(|_| check_nested))
        }
        Command::Product { mode, a, b, factors, validate, output } => {
            product_cmd(mode, &a, &b, factors.as_deref(), validate, output.as_deref())
        }
        Command::Compose { spec, output } => compose_cmd(&spec, output.as_deref()),
        Command::Wreath { spec, theta, i, j, output } => {
            let maps = match (theta, i.as_deref(), j.as_deref()) {
                (true, Some(i), Some(j)) => Some((i, j)),
                _ => None,
            };
            wreath_cmd(&spec, maps, cli.max_size, output.as_deref())
        }
        Command::Topology { table, top, check_base, w_sets, v, b } => {
            let w = match (w_sets, v, b.as_deref()) {
                (true, Some(v), Some(b)) => Some((v, b)),
                _ => None,
            };
            topology_cmd(table.as_deref(), top.as_deref(), check_base.as_deref(), w, max_size)
        }
        Command::Catalog { name, params, output } => catalog_cmd(&name, &params, output.as_deref()),
        Command::Search { order, predicate, samples } => search_cmd(order, predicate, samples, cli.jobs, cli.seed),
    }
}

fn report_error(e: &Error, format: Format) {
    match format {
        Format::Text => eprintln!("error: {e}"),
        Format::Json => {
            let witness = match e {
                Error::Precondition { witness, .. } | Error::FactorRejected { witness, .. } => witness.clone(),
                _ => Vec::new(),
            };
            let v = json!({ "passed": false, "error": e.to_string(), "witness": witness });
            println!("{}", serde_json::to_string_pretty(&v).expect("serializable"));
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    match run(cli) {
        Ok(out) => {
            out.print(format);
            if out.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            report_error(&e, format);
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
