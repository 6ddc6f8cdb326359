use std::fs::File;
use std::io::{self, BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use thickknot::analysis::{
    alexander_determinant, read_records, radius_of_gyration, radius_of_gyration_sq, write_obj,
    write_records, write_stats, write_trace, KnotRecord, StatsRecord,
};
use thickknot::canonicalize::canonicalize;
use thickknot::mcmc::{run_chain, ChainConfig, Start};
use thickknot::{injectivity_radius, regular_polygon, Error, KnotPolygon};

#[derive(Parser)]
#[command(name = "thickknot", version, about = "Thick equilateral polygonal knots")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the regular planar n-gon as a knot file.
    GenRegular {
        #[arg(long)]
        n: usize,
    },
    /// Print the thickness report of each record ("-" reads stdin).
    Thickness { file: PathBuf },
    /// Run the reflection chain.
    Sample {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.0)]
        thickness: f64,
        #[arg(long)]
        steps: u64,
        #[arg(long, default_value_t = 0)]
        burn_in: u64,
        #[arg(long, default_value_t = 1)]
        stride: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Batch cap N.
        #[arg(long = "cap", default_value_t = 6)]
        cap: usize,
        /// Continuation probability used for every slot.
        #[arg(long = "cont-prob", default_value_t = 0.5)]
        cont_prob: f64,
        /// Start from the first record of this file instead of the regular polygon.
        #[arg(long)]
        start: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        stats: Option<PathBuf>,
    },
    /// Canonicalize the first record of a file.
    Canonicalize {
        file: PathBuf,
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Write the final polygon here (default stdout).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Per-record observables as CSV on stdout.
    Analyze {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "gyration,thickness")]
        observables: Vec<Observable>,
    },
    /// Export geometry for external viewers.
    Convert {
        file: PathBuf,
        #[arg(long, value_enum)]
        to: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Observable {
    Gyration,
    Thickness,
    Unknot,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Obj,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::PipelineStall { .. } | Error::IntegrityFailure { .. } => 3,
        Error::Config(_) => 1,
        _ => 2,
    }
}

fn load(path: &Path) -> thickknot::Result<Vec<KnotRecord>> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        read_records(s.as_bytes())
    } else {
        read_records(BufReader::new(File::open(path)?))
    }
}

fn load_first(path: &Path) -> thickknot::Result<KnotPolygon> {
    load(path)?
        .into_iter()
        .next()
        .map(|r| r.polygon)
        .ok_or_else(|| Error::Parse {
            line: 0,
            message: "file has no records".into(),
        })
}

fn output(path: Option<&Path>) -> thickknot::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn run(cmd: Command) -> thickknot::Result<()> {
    match cmd {
        Command::GenRegular { n } => {
            let k = regular_polygon(n)?;
            let mut r = KnotRecord::new(k.clone());
            r.header.thickness = Some(thickknot::thickness(&k));
            write_records(output(None)?, &[r])
        }
        Command::Thickness { file } => {
            let mut w = output(None)?;
            for (idx, r) in load(&file)?.iter().enumerate() {
                if idx > 0 {
                    writeln!(w)?;
                }
                let t = injectivity_radius(&r.polygon);
                writeln!(w, "record={idx}")?;
                writeln!(w, "n={}", r.polygon.len())?;
                writeln!(w, "minrad={:.16e}", t.minrad)?;
                writeln!(w, "minrad_vertex={}", t.minrad_vertex)?;
                match (t.dcsd, &t.dcsd_pair) {
                    (Some(d), Some(p)) => {
                        writeln!(w, "dcsd={d:.16e}")?;
                        writeln!(w, "dcsd_pair={:?} {:?} {:?}", p.kind, p.a, p.b)?;
                    }
                    _ => writeln!(w, "dcsd=none")?,
                }
                writeln!(w, "injectivity_radius={:.16e}", t.injectivity_radius)?;
                writeln!(w, "arclength={:.16e}", t.arclength)?;
                writeln!(w, "thickness={:.16e}", t.thickness)?;
            }
            w.flush()?;
            Ok(())
        }
        Command::Sample {
            n,
            thickness,
            steps,
            burn_in,
            stride,
            seed,
            cap,
            cont_prob,
            start,
            out,
            stats,
        } => {
            let mut cfg = ChainConfig::new(n, thickness, seed, steps);
            cfg.burn_in = burn_in;
            cfg.stride = stride;
            cfg.p = vec![cont_prob; cap];
            if let Some(path) = start {
                cfg.start = Start::Polygon(load_first(&path)?);
            }
            let mut chain = run_chain(cfg)?;
            let mut records = Vec::new();
            let mut rows = Vec::new();
            for s in chain.by_ref() {
                let s = s?;
                let rep = injectivity_radius(&s.polygon);
                rows.push(StatsRecord {
                    step: s.step,
                    thickness: rep.thickness,
                    minrad: rep.minrad,
                    dcsd: rep.dcsd,
                    rg2: radius_of_gyration_sq(&s.polygon),
                    accepted: s.accepted,
                    m: s.m,
                });
                let mut r = KnotRecord::new(s.polygon);
                r.header.thickness = Some(rep.thickness);
                r.header.seed = Some(seed);
                r.header.step = Some(s.step);
                records.push(r);
            }
            write_records(BufWriter::new(File::create(&out)?), &records)?;
            if let Some(p) = stats {
                write_stats(BufWriter::new(File::create(p)?), rows)?;
            }
            let st = chain.stats();
            eprintln!(
                "steps={} accepted={} rate={:.6} emitted={} audits={}",
                st.steps,
                st.accepted,
                st.acceptance_rate(),
                records.len(),
                st.audits
            );
            Ok(())
        }
        Command::Canonicalize { file, trace, out } => {
            let k = load_first(&file)?;
            let t = canonicalize(&k)?;
            if let Some(p) = trace {
                write_trace(BufWriter::new(File::create(p)?), &t)?;
            }
            let last = t.last_polygon().clone();
            let mut r = KnotRecord::new(last.clone());
            r.header.thickness = Some(thickknot::thickness(&last));
            write_records(output(out.as_deref())?, &[r])?;
            eprintln!("moves={}", t.len());
            Ok(())
        }
        Command::Analyze { file, observables } => {
            let mut w = output(None)?;
            let mut head = vec!["record"];
            for o in &observables {
                head.push(match o {
                    Observable::Gyration => "rg",
                    Observable::Thickness => "thickness",
                    Observable::Unknot => "determinant",
                });
            }
            writeln!(w, "{}", head.join(","))?;
            for (idx, r) in load(&file)?.iter().enumerate() {
                let mut cols = vec![idx.to_string()];
                for o in &observables {
                    cols.push(match o {
                        Observable::Gyration => format!("{:.16e}", radius_of_gyration(&r.polygon)),
                        Observable::Thickness => format!("{:.16e}", thickknot::thickness(&r.polygon)),
                        Observable::Unknot => alexander_determinant(&r.polygon)?.to_string(),
                    });
                }
                writeln!(w, "{}", cols.join(","))?;
            }
            w.flush()?;
            Ok(())
        }
        Command::Convert { file, to: Format::Obj, out } => {
            let ks: Vec<KnotPolygon> = load(&file)?.into_iter().map(|r| r.polygon).collect();
            write_obj(output(out.as_deref())?, &ks)
        }
    }
}
