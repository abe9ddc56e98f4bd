use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use oscquad::names;
use oscquad::{emit_report, run_sweep, CliError, Destination, Format, SweepRow, SweepSpec};
use oscquad_core::engine::{InnerMode, PanelScheme, Summation, Tail};
use oscquad_core::pipelines::{Form, InnerSource, PipelineConfig, PipelineId};
use oscquad_core::rules::gauss_legendre;

/// Environment variable overriding the worker thread count.
const THREADS_ENV: &str = "OSCQUAD_THREADS";

#[derive(Parser)]
#[command(name = "oscquad", version, about = "Composite Gauss-Legendre evaluation of slowly convergent oscillatory integrals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the nodes and weights of a Gauss-Legendre rule.
    Rules {
        #[arg(long)]
        order: usize,
        #[arg(long, default_value = "csv", value_parser = Format::parse)]
        format: Format,
        #[arg(long)]
        out: Option<String>,
    },
    /// ∫₀^U sin u/u du, target π/2.
    Dirichlet(Common),
    /// ∫ sin(ω²/4)/ω dω with ζ-truncation U, target π/4.
    Fresnel(Common),
    /// The two-term triangular identity, target π²/12.
    Identity {
        #[arg(long, default_value = "A", value_parser = names::parse_form)]
        form: Form,
        #[command(flatten)]
        common: Common,
    },
    /// Product of the two curly brackets, target −π²/4.
    Bracket(Common),
    /// Tier n ∈ {1, 2, 3} of the multiple integral, target 2/n!·(π/4)ⁿ.
    In {
        #[arg(long)]
        n: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Run a convergence sweep described by a spec file.
    Sweep {
        #[arg(long)]
        spec: PathBuf,
        /// Overrides the spec's `output`.
        #[arg(long, value_parser = Format::parse)]
        format: Option<Format>,
        /// Overrides the spec's `output_path`.
        #[arg(long)]
        out: Option<String>,
        #[arg(long)]
        no_timing: bool,
    },
}

#[derive(Args, Clone)]
struct Common {
    /// Truncation bound (ζ-truncation for fresnel, bracket and in --n 2).
    #[arg(long)]
    umax: Option<f64>,
    #[arg(long, default_value_t = 10)]
    order: usize,
    #[arg(long, default_value_t = 1.0)]
    panel_width: f64,
    #[arg(long, default_value = "compensated", value_parser = names::parse_summation)]
    summation: Summation,
    #[arg(long, default_value = "truncate", value_parser = names::parse_tail)]
    tail: Tail,
    /// Inner integral source: closed | prefix.
    #[arg(long, default_value = "prefix", value_parser = names::parse_inner_source)]
    inner: InnerSource,
    /// Inner integral mode for prefix sources: exact | emulate.
    #[arg(long, default_value = "exact", value_parser = names::parse_inner_mode)]
    inner_mode: InnerMode,
    #[arg(long, default_value = "csv", value_parser = Format::parse)]
    format: Format,
    #[arg(long)]
    out: Option<String>,
    /// Write elapsed_ms as 0 so repeated runs are byte-identical.
    #[arg(long)]
    no_timing: bool,
}

fn default_u_max(id: PipelineId) -> f64 {
    match id {
        PipelineId::Dirichlet => 2e6,
        PipelineId::FresnelQuarter | PipelineId::BracketProduct | PipelineId::I2 => 1e6,
        PipelineId::IdentityFormA | PipelineId::IdentityFormB | PipelineId::I1 | PipelineId::I3 => 1e5,
    }
}

fn destination(out: Option<&str>) -> Destination {
    out.map(Destination::parse).unwrap_or_default()
}

fn run_single(id: PipelineId, c: &Common) -> Result<(), CliError> {
    let u_max = c.umax.unwrap_or_else(|| default_u_max(id));
    let scheme = PanelScheme::new(u_max)
        .with_order(c.order)
        .with_panel_width(c.panel_width)
        .with_summation(c.summation)
        .with_tail(c.tail);
    let cfg = PipelineConfig::new(scheme)
        .with_inner_source(c.inner)
        .with_inner_mode(c.inner_mode);
    let result = id.run(&cfg)?;
    let form = match id {
        PipelineId::IdentityFormA => Some(Form::A),
        PipelineId::IdentityFormB => Some(Form::B),
        _ => None,
    };
    let inner_mode = (id.uses_inner() && c.inner == InnerSource::QuadraturePrefix).then_some(c.inner_mode);
    let row = SweepRow::new(id, u_max, c.order, form, inner_mode, &result, !c.no_timing);
    emit_report(&[row], c.format, &destination(c.out.as_deref()))
}

fn print_rules(order: usize, format: Format, out: Option<&str>) -> Result<(), CliError> {
    let rule = gauss_legendre(order)?;
    let text = match format {
        Format::Csv => {
            let mut s = String::from("index,node,weight\n");
            for (i, (x, w)) in rule.iter().enumerate() {
                s.push_str(&format!("{i},{x:.16e},{w:.16e}\n"));
            }
            s
        }
        Format::Json => {
            let v = serde_json::json!({
                "order": order,
                "nodes": rule.nodes(),
                "weights": rule.weights(),
            });
            format!("{}\n", serde_json::to_string_pretty(&v)?)
        }
    };
    match destination(out) {
        Destination::Stdout => std::io::stdout().lock().write_all(text.as_bytes())?,
        Destination::File(path) => std::fs::write(path, text)?,
    }
    Ok(())
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = raw
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Invalid(format!("{THREADS_ENV} must be a positive integer, got '{raw}'")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Invalid(format!("cannot configure thread pool: {e}")))
}

fn run(cli: Cli) -> Result<(), CliError> {
    configure_threads()?;
    match cli.command {
        Command::Rules { order, format, out } => print_rules(order, format, out.as_deref()),
        Command::Dirichlet(c) => run_single(PipelineId::Dirichlet, &c),
        Command::Fresnel(c) => run_single(PipelineId::FresnelQuarter, &c),
        Command::Identity { form, common } => {
            let id = match form {
                Form::A => PipelineId::IdentityFormA,
                Form::B => PipelineId::IdentityFormB,
            };
            run_single(id, &common)
        }
        Command::Bracket(c) => run_single(PipelineId::BracketProduct, &c),
        Command::In { n, common } => {
            let id = match n {
                1 => PipelineId::I1,
                2 => PipelineId::I2,
                3 => PipelineId::I3,
                other => return Err(oscquad_core::Error::UnsupportedTier(other).into()),
            };
            run_single(id, &common)
        }
        Command::Sweep { spec, format, out, no_timing } => {
            let mut spec = SweepSpec::from_file(&spec)?;
            if let Some(f) = format {
                spec.output = f;
            }
            if let Some(o) = out {
                spec.output_path = Destination::parse(&o);
            }
            if no_timing {
                spec.record_timing = false;
            }
            let rows = run_sweep(&spec)?;
            emit_report(&rows, spec.output, &spec.output_path)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("oscquad: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
