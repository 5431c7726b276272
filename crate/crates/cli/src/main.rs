mod output;
mod problem;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Instant;

use clap::{Parser, Subcommand};
use galcoh::arith::{
    brauer_obstruction_groups, check_toral_ext0, ext0_isogeny, fundamental_group, pi1_obstruction_groups, quasi_trivial_cover,
};
use galcoh::cohomology::cohomology;
use galcoh::sha::{module_localization, verify_annihilation, LemmaCheck, ShaOptions};
use galcoh::suites::{run_suite, Suite};
use galcoh::Error;
use serde_json::{json, Map, Value};

use output::{cochains, invariants, matrices, Format};
use problem::{Problem, SCHEMA_VERSION};

#[derive(Parser)]
#[command(name = "galcoh", version, about = "Cohomology and Sha groups of finite Galois modules")]
struct Cli {
    /// Omit the `timing` field so output is byte-reproducible.
    #[arg(long, global = true)]
    no_timing: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// H^i(g, M).
    Cohomology {
        problem: PathBuf,
        #[arg(long)]
        module: String,
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        representatives: bool,
    },
    /// Sh^i_S(M), with Sh^i_S / Sh^i_empty and Sh^i_omega alongside.
    Sha {
        problem: PathBuf,
        #[arg(long)]
        module: String,
        #[arg(long)]
        degree: usize,
        /// Excluded places; replaces the file's `S`.
        #[arg(long = "S", value_delimiter = ',')]
        s: Option<Vec<String>>,
        /// Report Sh^i_omega as the headline value.
        #[arg(long)]
        omega: bool,
        #[arg(long)]
        representatives: bool,
    },
    /// Algebraic Brauer group of a homogeneous space, by both routes.
    Brauer {
        problem: PathBuf,
        #[arg(long)]
        homspace: String,
        #[arg(long = "S", value_delimiter = ',')]
        s: Option<Vec<String>>,
    },
    /// pi_1 from cocharacter data, and Sh^2 of its dual complex.
    Pi1 {
        problem: PathBuf,
        #[arg(long)]
        cochar: String,
        #[arg(long = "S", value_delimiter = ',')]
        s: Option<Vec<String>>,
    },
    /// Quasi-trivial cover and the characters of its kernel.
    Cover {
        problem: PathBuf,
        #[arg(long)]
        cochar: String,
    },
    /// Ext^0(M' -> M, Z) of an isogeny datum.
    Ext0 {
        problem: PathBuf,
        #[arg(long)]
        isogeny: String,
    },
    /// Run a seeded verification suite.
    Verify {
        /// s13, metacyclic, sha-iso, prop-sh1, ext0, cover, resolution, shapiro or all.
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Instances per suite (per group for s13 and metacyclic).
        #[arg(long)]
        instances: Option<usize>,
    },
}

/// Failures the CLI reports on stderr, mapped to exit codes.
enum Failure {
    Lib(Error),
    Io { path: PathBuf, message: String },
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Lib(Error::Resource { .. }) => 4,
            _ => 3,
        }
    }

    fn payload(&self) -> Value {
        let (kind, message, path) = match self {
            Failure::Lib(Error::Input { path, message }) => ("input", message.clone(), Some(path.clone())),
            Failure::Lib(Error::Structural(m)) => ("structural", m.clone(), None),
            Failure::Lib(e @ Error::Resource { .. }) => ("resource", e.to_string(), None),
            Failure::Io { path, message } => ("io", message.clone(), Some(path.display().to_string())),
            Failure::Usage(m) => ("usage", m.clone(), None),
        };
        let mut err = Map::new();
        err.insert("kind".into(), kind.into());
        err.insert("message".into(), message.into());
        if let Some(p) = path {
            err.insert("path".into(), p.into());
        }
        json!({ "error": err })
    }
}

/// A finished command: its report and whether every check passed.
struct Report {
    body: Map<String, Value>,
    passed: bool,
}

impl Report {
    fn new(command: &str) -> Self {
        let mut body = Map::new();
        body.insert("schema_version".into(), SCHEMA_VERSION.into());
        body.insert("command".into(), command.into());
        Report { body, passed: true }
    }

    fn set(&mut self, key: &str, v: Value) {
        self.body.insert(key.into(), v);
    }

    fn check(&mut self, c: &LemmaCheck) {
        self.passed &= c.passed;
        self.set("check", serde_json::to_value(c).expect("checks serialize"));
    }
}

fn load(path: &Path) -> Result<Problem, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Io { path: path.into(), message: e.to_string() })?;
    Ok(Problem::parse(&text)?)
}

fn check_degree(degree: usize, allowed: &[usize]) -> Result<(), Failure> {
    if allowed.contains(&degree) {
        Ok(())
    } else {
        Err(Error::input("--degree", format!("degree {degree} is not supported (allowed: {allowed:?})")).into())
    }
}

fn run(cmd: Command) -> Result<Report, Failure> {
    match cmd {
        Command::Cohomology { problem, module, degree, representatives } => {
            check_degree(degree, &[0, 1, 2])?;
            let p = load(&problem)?;
            let m = p.module(&module)?;
            let h = cohomology(&p.group, &m, degree)?;
            let mut r = Report::new("cohomology");
            r.set("invariant_factors", invariants(&h.invariant_factors()));
            if representatives {
                r.set("representatives", cochains(h.representatives(), p.group.order(), degree, m.rank()));
            }
            Ok(r)
        }
        Command::Sha { problem, module, degree, s, omega, representatives } => {
            check_degree(degree, &[1, 2])?;
            let p = load(&problem)?;
            let m = p.module(&module)?;
            let sel = p.selection(s.as_deref())?;
            let loc = module_localization(&p.datum, &m, degree, &sel, &ShaOptions::default())?;
            let (sh_s, sh_omega) = (loc.sha(&sel), loc.sha_omega());
            let headline = if omega { &sh_omega } else { &sh_s };
            let mut r = Report::new("sha");
            r.set("invariant_factors", invariants(&headline.value.invariant_factors()));
            if representatives {
                r.set("representatives", cochains(headline.representatives(), p.group.order(), degree, m.rank()));
            }
            r.set(
                "groups",
                json!({
                    format!("H{degree}"): invariants(&loc.ambient.invariant_factors()),
                    format!("Sh{degree}_S"): invariants(&sh_s.value.invariant_factors()),
                    format!("Sh{degree}_S/Sh{degree}_empty"): invariants(&loc.sha_quotient(&sel).invariant_factors()),
                    format!("Sh{degree}_omega"): invariants(&sh_omega.value.invariant_factors()),
                }),
            );
            r.set("S", json!(sel.excluded));
            if degree == 1 {
                r.check(&verify_annihilation(&p.datum, &m)?);
            }
            Ok(r)
        }
        Command::Brauer { problem, homspace, s } => {
            let p = load(&problem)?;
            let h = p.homspace(&homspace)?;
            let sel = p.selection(s.as_deref())?;
            let b = brauer_obstruction_groups(&h, &sel)?;
            let mut r = Report::new("brauer");
            r.set("invariant_factors", invariants(&b.b_s.invariant_factors()));
            r.set(
                "groups",
                json!({
                    "B_S": invariants(&b.b_s.invariant_factors()),
                    "B_S/B_empty": invariants(&b.b_s_quotient.invariant_factors()),
                    "B_omega": invariants(&b.b_omega.invariant_factors()),
                }),
            );
            r.set("S", json!(sel.excluded));
            r.set("verdicts", serde_json::to_value(&b.verdicts).expect("verdicts serialize"));
            r.check(&b.check);
            Ok(r)
        }
        Command::Pi1 { problem, cochar, s } => {
            let p = load(&problem)?;
            let d = p.cochar(&cochar)?;
            let sel = p.selection(s.as_deref())?;
            let pi1 = fundamental_group(&d);
            let g = pi1_obstruction_groups(&pi1, &p.datum, &sel)?;
            let mut r = Report::new("pi1");
            r.set("invariant_factors", invariants(&pi1.underlying().invariant_factors()));
            r.set("action", matrices(pi1.action()));
            r.set(
                "groups",
                json!({
                    "Sh2_S": invariants(&g.sh2_s.invariant_factors()),
                    "Sh2_S/Sh2_empty": invariants(&g.sh2_s_quotient.invariant_factors()),
                    "Sh2_omega": invariants(&g.sh2_omega.invariant_factors()),
                }),
            );
            r.set("S", json!(sel.excluded));
            r.set("verdicts", serde_json::to_value(&g.verdicts).expect("verdicts serialize"));
            r.check(&g.check);
            Ok(r)
        }
        Command::Cover { problem, cochar } => {
            let p = load(&problem)?;
            let c = quasi_trivial_cover(&p.cochar(&cochar)?)?;
            let mut r = Report::new("cover");
            r.set("invariant_factors", invariants(&c.h_char.underlying().invariant_factors()));
            r.set("action", matrices(c.h_char.action()));
            r.set("q_cochar_rank", c.q_cochar.module().rank().into());
            r.set("q_cochar_action", matrices(c.q_cochar.module().action()));
            r.set("map", matrices(std::slice::from_ref(&c.map.matrix)));
            r.check(&c.report);
            Ok(r)
        }
        Command::Ext0 { problem, isogeny } => {
            let p = load(&problem)?;
            let d = p.isogeny(&isogeny)?;
            let e = ext0_isogeny(&d)?;
            let mut r = Report::new("ext0");
            r.set("invariant_factors", invariants(&e.underlying().invariant_factors()));
            r.set("action", matrices(e.action()));
            r.set("trivial_action", e.is_trivial_action().into());
            if d.f.f.source.underlying().is_free() && d.f.f.target.underlying().is_free() {
                r.check(&check_toral_ext0(&d)?);
            }
            Ok(r)
        }
        Command::Verify { suite, seed, instances } => {
            let suites: Vec<Suite> = if suite == "all" {
                Suite::ALL.to_vec()
            } else {
                vec![Suite::from_str(&suite).map_err(|_| Failure::Usage(format!("unknown suite `{suite}`")))?]
            };
            let mut r = Report::new("verify");
            r.set("seed", seed.into());
            r.set("prng", "ChaCha8 (rand_chacha), stream = instance index".into());
            let mut reports = Vec::new();
            for s in suites {
                let rep = run_suite(s, seed, instances)?;
                r.passed &= rep.passed();
                let mut v = serde_json::to_value(&rep).expect("reports serialize");
                v["suite"] = s.name().into();
                v["passed"] = rep.passed().into();
                reports.push(v);
            }
            r.set("suites", reports.into());
            r.set("passed", r.passed.into());
            Ok(r)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let f = Failure::Usage(e.render().to_string().trim_end().to_string());
            eprintln!("{}", f.payload());
            return ExitCode::from(f.exit_code());
        }
    };
    let start = Instant::now();
    match run(cli.command) {
        Ok(mut r) => {
            if !cli.no_timing {
                r.set("timing", json!({ "seconds": start.elapsed().as_secs_f64() }));
            }
            println!("{}", output::render(&Value::Object(r.body), cli.format));
            if r.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
        Err(f) => {
            eprintln!("{}", f.payload());
            ExitCode::from(f.exit_code())
        }
    }
}
