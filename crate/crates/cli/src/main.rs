use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use forge_core::cylinder::{cylinder_reduction, dcr, degree_table, sibling_criterion, DegreeTable};
use forge_core::desing::{oracle_bound, oracle_desingularize_bounded, zipper_desingularize, Certificate, DesingResult};
use forge_core::harness::{
    gen_corpus, run_counterexamples, verify_all, verify_lemma_suite, verify_main_theorem, Corpus, CorpusParams, Report,
};
use forge_core::poset::{barratt, parse_pmap, MonotoneMap};
use forge_core::sset::{parse_sset, print_smap, print_sset};
use forge_core::subdivision::{b_nat, last_vertex, sd};
use forge_core::SimplicialSet;

/// Kan subdivision, Barratt nerves, desingularization and mapping cylinders of finite
/// simplicial sets.
#[derive(Parser)]
#[command(name = "forge", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Kan subdivision `Sd X`.
    Sd(MapIo),
    /// Barratt nerve `BX = N(X#)`.
    Barratt(MapIo),
    /// The comparison `b_X : Sd X -> BX`.
    Bnat(MapIo),
    /// The last vertex map `d_X : Sd X -> X`.
    Lastvertex(MapIo),
    /// Desingularization `D X` with its projection.
    Desing {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Zipper)]
        method: Method,
        /// Cell bound for the oracle; defaults to FORGE_ORACLE_BOUND or 10.
        #[arg(long)]
        bound: Option<usize>,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        emit_eta: Option<PathBuf>,
    },
    /// Mapping cylinders of a monotone map.
    Cylinder {
        phi: PathBuf,
        #[command(flatten)]
        kind: CylinderKind,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Degreewise injectivity and surjectivity of `cr` and `dcr`.
    Dcr { phi: PathBuf },
    /// Write a deterministic corpus to a directory.
    Corpus {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long, default_value_t = CorpusParams::default().random_quotients)]
        random_quotients: usize,
        #[arg(long, default_value_t = CorpusParams::default().max_quotient_cells)]
        max_quotient_cells: usize,
    },
    /// Run a verification campaign over a corpus.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long)]
        corpus: PathBuf,
        #[command(flatten)]
        report: ReportOut,
    },
    /// Reproduce the two cylinder counterexamples.
    Counterexamples {
        #[command(flatten)]
        report: ReportOut,
    },
}

#[derive(Args)]
struct MapIo {
    input: PathBuf,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
#[group(multiple = false)]
struct CylinderKind {
    /// The nerve `M` of the poset pushout.
    #[arg(long)]
    reduced: bool,
    /// The pushout `T` (default).
    #[arg(long)]
    topological: bool,
    /// `T`, `M` and the reduction map `cr`.
    #[arg(long)]
    bundle: bool,
}

#[derive(Args)]
struct ReportOut {
    /// Write the report here instead of stdout.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Include per-case milliseconds.
    #[arg(long)]
    timings: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Zipper,
    Oracle,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Main,
    Lemmas,
    All,
}

fn read_sset(path: &Path) -> Result<Arc<SimplicialSet>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(Arc::new(parse_sset(&text).with_context(|| format!("parsing {}", path.display()))?))
}

fn read_pmap(path: &Path) -> Result<MonotoneMap> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_pmap(&text).with_context(|| format!("parsing {}", path.display()))
}

fn emit(output: Option<&Path>, text: &str) -> Result<()> {
    match output {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_report(r: &Report, out: &ReportOut) -> Result<ExitCode> {
    emit(out.report.as_deref(), &r.render(out.timings))?;
    let failed = r.failed();
    eprintln!("{}: {} failed", r.title, failed);
    Ok(if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn render_table(name: &str, t: &DegreeTable) -> String {
    let flags = |v: &[bool]| v.iter().map(|&b| if b { "1" } else { "0" }).collect::<Vec<_>>().join(" ");
    format!("{name} injective {}\n{name} surjective {}\n", flags(&t.injective), flags(&t.surjective))
}

fn desing(x: &Arc<SimplicialSet>, method: Method, bound: Option<usize>) -> Result<DesingResult> {
    Ok(match method {
        Method::Zipper => zipper_desingularize(x),
        Method::Oracle => oracle_desingularize_bounded(x, bound.unwrap_or_else(oracle_bound))?,
    })
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Sd(io) => {
            let x = read_sset(&io.input)?;
            emit(io.output.as_deref(), &print_sset(&sd(&x).set))?;
        }
        Command::Barratt(io) => {
            let x = read_sset(&io.input)?;
            emit(io.output.as_deref(), &print_sset(&barratt(&x).sset))?;
        }
        Command::Bnat(io) => {
            let x = read_sset(&io.input)?;
            let s = sd(&x);
            let b = b_nat(&s, &barratt(&x))?;
            emit(io.output.as_deref(), &print_smap(&b))?;
        }
        Command::Lastvertex(io) => {
            let x = read_sset(&io.input)?;
            let d = last_vertex(&sd(&x))?;
            emit(io.output.as_deref(), &print_smap(&d))?;
        }
        Command::Desing {
            input,
            method,
            bound,
            output,
            emit_eta,
        } => {
            let x = read_sset(&input)?;
            let r = desing(&x, method, bound)?;
            emit(output.as_deref(), &print_sset(&r.quotient))?;
            if let Some(p) = emit_eta {
                emit(Some(&p), &print_smap(&r.eta))?;
            }
            eprintln!("certificate {:?} moves {}", r.certificate, r.moves.len());
            if r.certificate == Certificate::Uncertified {
                return Ok(ExitCode::from(2));
            }
        }
        Command::Cylinder { phi, kind, output } => {
            let phi = read_pmap(&phi)?;
            let b = cylinder_reduction(&phi)?;
            let text = if kind.reduced {
                print_sset(b.m())
            } else if kind.bundle {
                format!("{}{}{}", print_sset(b.t()), print_sset(b.m()), print_smap(b.cr()))
            } else {
                print_sset(b.t())
            };
            emit(output.as_deref(), &text)?;
        }
        Command::Dcr { phi } => {
            let phi = read_pmap(&phi)?;
            let (bundle, d) = dcr(&phi)?;
            let top = bundle.t().dim().max(bundle.m().dim());
            let mut out = format!(
                "T cells {:?}\nDT cells {:?}\nM cells {:?}\ncertificate {:?}\n",
                bundle.t().counts(),
                d.desing.quotient.counts(),
                bundle.m().counts(),
                d.desing.certificate
            );
            out.push_str(&render_table("cr", &degree_table(bundle.cr(), top)));
            out.push_str(&render_table("dcr", &degree_table(&d.dcr, top)));
            for s in sibling_criterion(&d.desing.eta, &d.dcr) {
                out.push_str(&format!(
                    "siblings degree {} injective {} identified {}\n",
                    s.degree, s.injective, s.siblings_identified
                ));
            }
            print!("{out}");
        }
        Command::Corpus {
            seed,
            output,
            random_quotients,
            max_quotient_cells,
        } => {
            let params = CorpusParams {
                random_quotients,
                max_quotient_cells,
                ..CorpusParams::default()
            };
            let c = gen_corpus(seed, params);
            c.write_to(&output).with_context(|| format!("writing {}", output.display()))?;
            eprintln!("{} members", c.members.len());
        }
        Command::Verify { suite, corpus, report } => {
            let c = Corpus::read_from(&corpus).with_context(|| format!("reading corpus {}", corpus.display()))?;
            let r = match suite {
                Suite::Main => verify_main_theorem(&c),
                Suite::Lemmas => verify_lemma_suite(&c),
                Suite::All => verify_all(&c),
            };
            return emit_report(&r, &report);
        }
        Command::Counterexamples { report } => return emit_report(&run_counterexamples(), &report),
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
