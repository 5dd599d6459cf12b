use std::io::stdout;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use equikh::algebra::{Fp, Q};
use equikh::diagram::LinkDiagram;
use equikh_cli::config::{FieldChoice, Output, RunArgs, RunConfig};
use equikh_cli::record::{self, all_passed};
use equikh_cli::{run, CliError};

#[derive(Parser)]
#[command(name = "equikh", version, about = "s_t profiles from equivariant Khovanov homology")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// s_t (and the reduced value) at the requested t
    Compute(RunArgs),
    /// run the check suite on a diagram
    Verify(RunArgs),
    /// run the bundled corpus
    Selftest {
        #[arg(long, value_enum, default_value = "json")]
        output: Output,
    },
}

macro_rules! with_field {
    ($field:expr, $F:ident => $body:expr) => {
        match $field {
            FieldChoice::Q => {
                type $F = Q;
                $body
            }
            FieldChoice::Fp(2) => {
                type $F = Fp<2>;
                $body
            }
            FieldChoice::Fp(3) => {
                type $F = Fp<3>;
                $body
            }
            FieldChoice::Fp(5) => {
                type $F = Fp<5>;
                $body
            }
            FieldChoice::Fp(7) => {
                type $F = Fp<7>;
                $body
            }
            FieldChoice::Fp(11) => {
                type $F = Fp<11>;
                $body
            }
            FieldChoice::Fp(13) => {
                type $F = Fp<13>;
                $body
            }
            FieldChoice::Fp(31) => {
                type $F = Fp<31>;
                $body
            }
            FieldChoice::Fp(p) => return Err(CliError::Input(format!("unsupported prime {p}"))),
        }
    };
}

fn load(args: &RunArgs, cfg: &RunConfig) -> Result<LinkDiagram, CliError> {
    let input = |e: equikh::diagram::DiagramError| CliError::Input(e.to_string());
    let d = if let Some(pd) = &args.pd {
        LinkDiagram::parse(pd).map_err(input)?
    } else if let Some(path) = &args.file {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        LinkDiagram::parse(&text).map_err(input)?
    } else if args.unknot {
        LinkDiagram::unknot()
    } else {
        return Err(CliError::Input("no diagram: give --pd, --file or --unknot".into()));
    };
    match (cfg.basepoint, d.basepoint()) {
        (Some(e), _) => d.with_basepoint(e).map_err(input),
        // the reduced theory needs a mark; the first edge is as good as any on a knot
        (None, None) if cfg.reduced => {
            let e = *d.edge_labels().first().ok_or_else(|| CliError::Input("diagram has no edges".into()))?;
            d.with_basepoint(e).map_err(input)
        }
        _ => Ok(d),
    }
}

fn compute(args: &RunArgs) -> Result<bool, CliError> {
    let cfg = RunConfig::resolve(args)?;
    let d = load(args, &cfg)?;
    let mut rec = with_field!(cfg.field, F => {
        let mut rec = run::compute::<F>(&d, &cfg)?;
        if cfg.verify {
            rec.verification = Some(run::verify::<F>(&d, &cfg));
        }
        rec
    });
    let ok = rec.flags.reduced_bound != Some(false) && rec.verification.as_deref().is_none_or(all_passed);
    if cfg.output == Output::Csv {
        // CSV carries the profile only
        rec.verification = None;
    }
    record::write_result(stdout().lock(), &rec, cfg.output).map_err(|e| CliError::Failure(e.to_string()))?;
    Ok(ok)
}

fn verify(args: &RunArgs) -> Result<bool, CliError> {
    let cfg = RunConfig::resolve(args)?;
    let d = load(args, &cfg)?;
    let rows = with_field!(cfg.field, F => run::verify::<F>(&d, &cfg));
    record::write_checks(stdout().lock(), &rows, cfg.output).map_err(|e| CliError::Failure(e.to_string()))?;
    Ok(all_passed(&rows))
}

fn threads() -> Result<(), CliError> {
    if let Ok(v) = std::env::var("EQUIKH_THREADS") {
        let n: usize = v.parse().map_err(|_| CliError::Input(format!("EQUIKH_THREADS={v:?} is not a number")))?;
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| CliError::Failure(e.to_string()))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    let result = threads().and_then(|_| match &cli.cmd {
        Cmd::Compute(a) => compute(a),
        Cmd::Verify(a) => verify(a),
        Cmd::Selftest { output } => {
            let rows = run::selftest();
            record::write_selftest(stdout().lock(), &rows, *output).map_err(|e| CliError::Failure(e.to_string()))?;
            Ok(rows.iter().all(|r| r.status == record::Status::Pass))
        }
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                CliError::Input(_) => 2,
                CliError::Failure(_) => 1,
            })
        }
    }
}
