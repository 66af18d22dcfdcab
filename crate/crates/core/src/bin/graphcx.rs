use clap::{Args, Parser, Subcommand, ValueEnum};
use graphcx::bordification::{self, PhiChoice};
use graphcx::chain::{Chain, Key};
use graphcx::chord;
use graphcx::forested::{self, ForestedGraph};
use graphcx::format;
use graphcx::linalg::Echelon;
use graphcx::morita;
use graphcx::random;
use graphcx::report::{Format, Report};
use graphcx::trace;
use graphcx::{Error, Result};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "graphcx",
    version,
    about = "Forested graph complex, graphical trace, chord diagrams and filtered graph chains"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Worker threads (default: all cores). Results do not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Write relator matrices and pivot lists here.
    #[arg(long, global = true, value_name = "PATH")]
    emit_certificate: Option<PathBuf>,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = OutFormat::Human)]
    format: OutFormat,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Human,
    Kv,
}

#[derive(Subcommand)]
enum Command {
    /// Rank-4 pipeline: chord diagrams, the cycle z and its trace.
    VerifyMu3,
    /// Rank-6 pipeline: sliding relations, type-one and type-two boundaries.
    VerifyMu5,
    /// Vanishing of the top rank-6 quotient.
    VerifyH9,
    /// Graphical trace of a forested graph file.
    Trace {
        file: PathBuf,
        /// Single-vertex forest components become type-B vertices.
        #[arg(long)]
        with_b: bool,
    },
    /// Boundary of a forested graph file.
    Boundary {
        file: PathBuf,
        /// Reduce each term to chord diagrams (terms must carry maximal trees).
        #[arg(long)]
        chords: bool,
    },
    /// Chord diagrams without isolated chords.
    Chords {
        #[arg(long)]
        rank: usize,
        /// One diagram per line (the default).
        #[arg(long, conflicts_with = "relations")]
        enumerate: bool,
        /// One sliding relator per line.
        #[arg(long)]
        relations: bool,
    },
    /// The filtered-graph cycle of an AB-graph file.
    Phi { file: PathBuf },
    /// Exact rank of a matrix file.
    Rank { file: PathBuf },
    /// Randomized identity checks.
    Selftest {
        #[arg(long, default_value_t = 100)]
        cases: usize,
    },
}

fn read(path: &PathBuf) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))
}

fn write_certificate(path: &Option<PathBuf>, text: &str) -> Result<()> {
    if let Some(p) = path {
        std::fs::write(p, text).map_err(|e| Error::Invalid(format!("{}: {e}", p.display())))?;
    }
    Ok(())
}

fn render(report: &Report, f: OutFormat) -> bool {
    print!(
        "{}",
        report.render(match f {
            OutFormat::Human => Format::Human,
            OutFormat::Kv => Format::Kv,
        })
    );
    report.passed()
}

fn forested_header(c: &Chain<Key>) -> Vec<(&'static str, String)> {
    match c.keys().next().map(forested::grading_of) {
        Some(Ok(g)) => vec![("rank", g.rank.to_string()), ("forest", g.forest.to_string())],
        _ => vec![("rank", "-".into()), ("forest", "-".into())],
    }
}

fn selftest(cases: usize, seed: u64) -> Result<Report> {
    let mut r = Report::new("selftest");
    let mut rng = random::rng(seed);
    let (mut dd, mut tr) = (0, 0);
    for _ in 0..cases {
        let fg = random::forested_graph(&mut rng, 5);
        let b = forested::boundary(&fg.normalize())?;
        dd += forested::boundary(&b)?.is_zero() as usize;
        tr += trace::trace_chain(&b)?.is_zero() as usize;
    }
    r.check_against("boundary_squared_zero", cases, dd);
    r.check_against("trace_of_boundary_zero", cases, tr);
    let mut d2 = 0;
    let filtered = cases.min(50);
    for _ in 0..filtered {
        let fg = random::filtered_graph(&mut rng, 3, 8);
        d2 += bordification::d(&bordification::d(&fg.normalize())?)?.is_zero() as usize;
    }
    r.check_against("filtered_d_squared_zero", filtered, d2);
    Ok(r)
}

fn run(cli: Cli) -> Result<bool> {
    let g = &cli.global;
    match &cli.command {
        Command::VerifyMu3 => Ok(render(&morita::verify_mu3()?, g.format)),
        Command::VerifyMu5 => {
            let v = morita::verify_mu5()?;
            write_certificate(&g.emit_certificate, &v.certificate)?;
            Ok(render(&v.report, g.format))
        }
        Command::VerifyH9 => {
            let v = morita::verify_h9()?;
            write_certificate(&g.emit_certificate, &v.certificate)?;
            Ok(render(&v.report, g.format))
        }
        Command::Trace { file, with_b } => {
            let fg = format::parse_graph(&read(file)?)?.to_forested()?;
            let c = if *with_b { trace::graphical_trace_ab(&fg) } else { trace::graphical_trace(&fg) };
            print!("{}", format::write_chain(&[("kind", "odd".into())], &c));
            Ok(true)
        }
        Command::Boundary { file, chords } => {
            let fg: ForestedGraph = format::parse_graph(&read(file)?)?.to_forested()?;
            let b = forested::boundary(&fg.normalize())?;
            if *chords {
                println!("{}", chord::show(&morita::chord_image(&b)?));
            } else {
                print!("{}", format::write_chain(&forested_header(&b), &b));
            }
            Ok(true)
        }
        Command::Chords { rank, relations, .. } => {
            if *rank < 2 {
                return Err(Error::Invalid("rank must be at least 2".into()));
            }
            if *relations {
                for r in chord::sliding_relations(*rank) {
                    println!("{}", chord::show(&r));
                }
            } else {
                for d in chord::enumerate(*rank) {
                    println!("{d}");
                }
            }
            Ok(true)
        }
        Command::Phi { file } => {
            let x = format::parse_graph(&read(file)?)?.to_ab()?;
            let (c, h) = bordification::phi(&x, &PhiChoice::default_for(&x))?;
            let header = [
                ("n", h.n.to_string()),
                ("a", h.a.to_string()),
                ("b", h.b.to_string()),
                ("vb", h.vb.to_string()),
                ("degree", h.degree.to_string()),
            ];
            print!("{}", format::write_chain(&header, &c));
            Ok(true)
        }
        Command::Rank { file } => {
            let (labels, rows) = format::read_matrix(&read(file)?)?;
            let mut ech = Echelon::new();
            for r in &rows {
                ech.insert(r);
            }
            println!("rank={}", ech.rank());
            let pivots: Vec<&str> = ech.pivots().iter().map(|&p| labels[p].as_str()).collect();
            write_certificate(&g.emit_certificate, &format!("pivots: {}\n", pivots.join(" ")))?;
            Ok(true)
        }
        Command::Selftest { cases } => Ok(render(&selftest(*cases, g.seed)?, g.format)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.global.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
