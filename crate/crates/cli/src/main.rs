use anyhow::{anyhow, Result};
use clap::{Args, Parser, Subcommand};
use qdelta_cli::doc::{self, Loaded};
use qdelta_cli::report;
use qdelta::invariants::delta_conductor;
use qdelta::jacobian::{jac_number, kernel_dims_along_chain};
use qdelta::normalize::{full_genus_change, represent_normalization, two_step_analysis, SuppliedNormalization};
use qdelta::series::Budget;
use qdelta::verify::{fixture, run_corpus, run_fixture, run_presentation, run_random_corpus, Family, VerdictSet};
use std::io::{Read, Write};
use std::process::ExitCode;
use std::time::Instant;

/// q-invariants, δ, genus changes and Jacobian numbers of DVRs over imperfect fields.
#[derive(Parser)]
#[command(name = "qdelta", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Args, Clone)]
struct Opts {
    /// Starting S-adic precision (doubled on demand).
    #[arg(long, global = true)]
    precision: Option<usize>,
    /// Largest precision tried before giving up (exit 3).
    #[arg(long, global = true)]
    cap: Option<usize>,
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Timings and progress on stderr.
    #[arg(long, global = true)]
    trace: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// q(x), e, f, δ, conductor and genus change of R → R(1_x).
    Invariants {
        /// Input document (JSON); `-` reads stdin.
        doc: String,
        /// Overrides the document's x.
        #[arg(long)]
        x: Option<String>,
    },
    /// Two-step analysis along x and a presentation of R(1_x).
    Normalize {
        doc: String,
        #[arg(long)]
        x: Option<String>,
    },
    /// jac(R) by three routes and, when the p-basis chain is available, its kernels.
    Jacobian { doc: String },
    /// Every applicable check on a document, one fixture, or the fixture corpus.
    Verify {
        /// Input document (omit with --fixture or --corpus).
        doc: Option<String>,
        /// Fixture family: fam1, fam2, fam3, fam3prime, fam4, fam4prime.
        #[arg(long, conflicts_with_all = ["doc", "corpus"])]
        fixture: Option<String>,
        #[arg(long, default_value_t = 3, requires = "fixture")]
        p: u32,
        #[arg(long, default_value_t = 2, requires = "fixture")]
        n: usize,
        /// m for fam4prime (default n + 2).
        #[arg(long, requires = "fixture")]
        m: Option<usize>,
        /// All fixtures.
        #[arg(long, conflicts_with = "doc")]
        corpus: bool,
    },
    /// The fixture corpus and randomized normal-form presentations.
    Corpus {
        /// Random presentations per p ∈ {2, 3, 5}.
        #[arg(long, default_value_t = 20)]
        random: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

/// 0 pass, 1 check failure, 2 input error, 3 precision exhausted.
fn exit_code(e: &anyhow::Error) -> u8 {
    for cause in e.chain() {
        if let Some(qe) = cause.downcast_ref::<qdelta::Error>() {
            return match qe {
                qdelta::Error::Precision { .. } | qdelta::Error::PrecisionExhausted { .. } => 3,
                qdelta::Error::OracleMismatch(_) | qdelta::Error::CheckFailed(_) => 1,
                _ => 2,
            };
        }
    }
    2
}

fn read_input(path: &str) -> Result<String> {
    let mut s = String::new();
    if path == "-" {
        std::io::stdin().read_to_string(&mut s)?;
    } else {
        s = std::fs::read_to_string(path).map_err(|e| anyhow!(qdelta::Error::input(format!("{path}: {e}"))))?;
    }
    Ok(s)
}

struct Ctx {
    opts: Opts,
    t0: Instant,
}

impl Ctx {
    fn trace(&self, what: &str) {
        if self.opts.trace {
            eprintln!("[{:>8.3}s] {what}", self.t0.elapsed().as_secs_f64());
        }
    }
    fn load(&self, path: &str, x: Option<&str>) -> Result<(Loaded, Budget)> {
        let l = doc::load(&read_input(path)?, x)?;
        let b = doc::budget(&l.doc, self.opts.precision, self.opts.cap);
        self.trace(&format!("loaded {} (precision {}..{})", l.pres.describe(), b.n0, b.cap));
        Ok((l, b))
    }
    fn emit(&self, json: &impl serde::Serialize, text: impl FnOnce() -> String) -> Result<()> {
        let s = if self.opts.json { serde_json::to_string_pretty(json)? + "\n" } else { text() };
        match std::io::stdout().lock().write_all(s.as_bytes()) {
            Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
            _ => Ok(()),
        }
    }
}

/// Chain supplied normalizations: the document's R(1_x) when x is the first variable.
fn chain_supplied(l: &Loaded) -> Vec<Option<SuppliedNormalization>> {
    match (l.x, &l.supplied) {
        (Some(0), Some(s)) => vec![Some(s.clone())],
        _ => vec![],
    }
}

fn run(cli: Cli) -> Result<bool> {
    let ctx = Ctx { opts: cli.opts.clone(), t0: Instant::now() };
    match cli.cmd {
        Cmd::Invariants { doc, x } => {
            let (l, b) = ctx.load(&doc, x.as_deref())?;
            let rep = delta_conductor(&l.pres, &l.x_elem()?, b, true)?;
            ctx.trace("invariants done");
            ctx.emit(&rep, || report::invariants(&rep))?;
            Ok(rep.conductor_identity_holds())
        }
        Cmd::Normalize { doc, x } => {
            let (l, b) = ctx.load(&doc, x.as_deref())?;
            let xe = l.x_elem()?;
            let two = two_step_analysis(&l.pres, &xe, b, l.supplied.as_ref(), false)?;
            ctx.trace("two-step analysis done");
            let nz = represent_normalization(&l.pres, &xe, b, l.supplied.as_ref())?;
            let n = b.n0;
            let out = report::NormalizeOut::new(&two, &nz, n)?;
            ctx.emit(&out, || report::normalize(&out))?;
            Ok(two.holds())
        }
        Cmd::Jacobian { doc } => {
            let (l, b) = ctx.load(&doc, None)?;
            let jr = jac_number(&l.pres, b)?;
            ctx.trace("jac done");
            let chain = full_genus_change(&l.pres, None, b, &chain_supplied(&l))?;
            let kernels = if chain.complete && chain.rings.len() == chain.steps.len() { Some(kernel_dims_along_chain(&l.pres, &chain, b)?) } else { None };
            ctx.trace("kernel chain done");
            let p = chain.p;
            let genus_change = chain.failure.is_none().then_some(chain.total);
            let headline = genus_change.map(|g| 2 * p * g == (p - 1) * jr.jac);
            let out = report::JacobianOut { p, jacobian: jr, genus_change, chain_failure: chain.failure.clone(), headline, kernels };
            ctx.emit(&out, || report::jacobian(&out))?;
            Ok(out.holds())
        }
        Cmd::Verify { doc, fixture: fam, p, n, m, corpus } => {
            let set = if corpus {
                run_corpus(budget_of(&ctx))?
            } else if let Some(id) = fam {
                let family = Family::from_id(&id).ok_or_else(|| anyhow!(qdelta::Error::input(format!("unknown fixture '{id}' (fam1, fam2, fam3, fam3prime, fam4, fam4prime)"))))?;
                let fx = fixture(family, p, n, Some(m.unwrap_or(n + 2)))?;
                VerdictSet { instances: vec![run_fixture(&fx, budget_of(&ctx))] }
            } else {
                let path = doc.ok_or_else(|| anyhow!(qdelta::Error::input("verify needs a document, --fixture or --corpus")))?;
                let (l, b) = ctx.load(&path, None)?;
                let label = std::path::Path::new(&path).file_stem().map_or(path.clone(), |s| s.to_string_lossy().into_owned());
                let mut r = run_presentation(&label, &l.pres, l.x, l.supplied.as_ref(), b);
                if !l.doc.analyses.is_empty() {
                    r.outcomes.retain(|o| l.doc.analyses.contains(&o.check));
                }
                if let Some(e) = r.error.as_ref().filter(|e| e.contains("precision")) {
                    return Err(anyhow!(qdelta::Error::PrecisionExhausted { cap: b.cap, what: e.clone() }));
                }
                VerdictSet { instances: vec![r] }
            };
            ctx.trace("verification done");
            ctx.emit(&set, || report::verdicts(&set))?;
            Ok(set.all_pass())
        }
        Cmd::Corpus { random, seed } => {
            let b = budget_of(&ctx);
            let set = run_corpus(b)?;
            ctx.trace("fixtures done");
            let set = set.merge(run_random_corpus(random, seed, b)?);
            ctx.trace("random presentations done");
            ctx.emit(&set, || report::verdicts(&set))?;
            Ok(set.all_pass())
        }
    }
}

fn budget_of(ctx: &Ctx) -> Budget {
    let d = Budget::default();
    Budget { n0: ctx.opts.precision.unwrap_or(d.n0), cap: ctx.opts.cap.unwrap_or(d.cap) }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
