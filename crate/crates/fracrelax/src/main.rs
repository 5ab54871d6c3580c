//! Thin command-line front end over the library: figure data, Mittag-Leffler
//! evaluation, relaxation solutions, model reports, and hereditary responses.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use fracrelax::figures::{format_value, write_figure, FigureId};
use fracrelax::relaxation::{solve, RelaxationProblem};
use fracrelax::signal::{geomspace, linspace, SampledSignal};
use fracrelax::special::{ml1, ml2};
use fracrelax::viscoelastic::{
    classify, material_functions, respond, MaterialFunctions, ModelSpec, ResponseMode,
};

#[derive(Parser)]
#[command(name = "fracrelax", version, about = "Fractional relaxation and linear viscoelasticity")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write figure data (fig1, fig2, fig5) as CSV files.
    Figure(FigureArgs),
    /// Evaluate a Mittag-Leffler function.
    Eval(EvalArgs),
    /// Solve a fractional relaxation problem on a time grid.
    Relax(RelaxArgs),
    /// Report material functions, type, and reciprocity residual of a model.
    ModelReport(ModelReportArgs),
    /// Convolve a stress or strain history through a model.
    Respond(RespondArgs),
}

#[derive(Args)]
struct FigureArgs {
    /// Figure identifier: fig1, fig2, or fig5.
    #[arg(long)]
    id: String,
    /// Output directory for the CSV files.
    #[arg(long)]
    out_dir: PathBuf,
}

#[derive(Args)]
struct EvalArgs {
    /// Order mu > 0.
    #[arg(long, allow_hyphen_values = true)]
    mu: f64,
    /// Optional second parameter nu (defaults to 1).
    #[arg(long, allow_hyphen_values = true)]
    nu: Option<f64>,
    /// Single argument z.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "grid")]
    z: Option<f64>,
    /// Argument grid START,STOP,COUNT with optional ",log" suffix.
    #[arg(long, allow_hyphen_values = true)]
    grid: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Caputo,
    Rl,
    Renewal,
    Hilfer,
}

#[derive(Args)]
struct RelaxArgs {
    /// Problem kind.
    #[arg(long, value_enum)]
    kind: KindArg,
    /// Order mu in (0, 1].
    #[arg(long)]
    mu: f64,
    /// Hilfer type nu in [0, 1] (hilfer kind only).
    #[arg(long)]
    nu: Option<f64>,
    #[arg(long, default_value_t = 1e-2)]
    t_min: f64,
    #[arg(long, default_value_t = 1e2)]
    t_max: f64,
    #[arg(long, default_value_t = 201)]
    points: usize,
    /// Logarithmic time grid instead of linear.
    #[arg(long)]
    log: bool,
    /// Write CSV here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ModelReportArgs {
    /// Path to the model JSON document.
    #[arg(long)]
    model: PathBuf,
    /// Optionally write J(t), G(t) curves as CSV.
    #[arg(long)]
    csv: Option<PathBuf>,
    #[arg(long, default_value_t = 1e-2)]
    t_min: f64,
    #[arg(long, default_value_t = 1e2)]
    t_max: f64,
    #[arg(long, default_value_t = 201)]
    points: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    StressToStrain,
    StrainToStress,
}

#[derive(Args)]
struct RespondArgs {
    /// Path to the model JSON document.
    #[arg(long)]
    model: PathBuf,
    /// History CSV with header and columns t,value (t strictly increasing).
    #[arg(long)]
    history: PathBuf,
    #[arg(long, value_enum)]
    mode: ModeArg,
    /// Write CSV here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Figure(args) => cmd_figure(args),
        Command::Eval(args) => cmd_eval(args),
        Command::Relax(args) => cmd_relax(args),
        Command::ModelReport(args) => cmd_model_report(args),
        Command::Respond(args) => cmd_respond(args),
    }
}

fn cmd_figure(args: FigureArgs) -> Result<()> {
    let id: FigureId = args.id.parse().map_err(|e: String| anyhow!("IoFailure: {e}"))?;
    let paths = write_figure(id, &args.out_dir).context("IoFailure")?;
    for p in paths {
        println!("{}", p.display());
    }
    Ok(())
}

fn parse_grid(spec: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = spec.split(',').collect();
    if parts.len() != 3 && !(parts.len() == 4 && parts[3] == "log") {
        bail!("grid spec must be START,STOP,COUNT or START,STOP,COUNT,log; got {spec:?}");
    }
    let start: f64 = parts[0].parse().context("bad grid start")?;
    let stop: f64 = parts[1].parse().context("bad grid stop")?;
    let count: usize = parts[2].parse().context("bad grid count")?;
    if count < 2 {
        bail!("grid needs at least 2 points");
    }
    Ok(if parts.len() == 4 { geomspace(start, stop, count) } else { linspace(start, stop, count) })
}

fn cmd_eval(args: EvalArgs) -> Result<()> {
    let nu = args.nu.unwrap_or(1.0);
    let zs = match (&args.z, &args.grid) {
        (Some(z), None) => vec![*z],
        (None, Some(g)) => parse_grid(g)?,
        _ => bail!("provide exactly one of --z or --grid"),
    };
    println!("z,value,regime,est_abs_error");
    for &z in &zs {
        let r = if args.nu.is_some() { ml2(args.mu, nu, z)? } else { ml1(args.mu, z)? };
        println!(
            "{},{},{:?},{:.3e}",
            format_value(z),
            format_value(r.value),
            r.regime,
            r.est_abs_error
        );
    }
    Ok(())
}

fn cmd_relax(args: RelaxArgs) -> Result<()> {
    let problem = match args.kind {
        KindArg::Caputo => RelaxationProblem::caputo(args.mu),
        KindArg::Rl => RelaxationProblem::riemann_liouville(args.mu),
        KindArg::Renewal => RelaxationProblem::renewal(args.mu),
        KindArg::Hilfer => RelaxationProblem::hilfer(
            args.mu,
            args.nu.ok_or_else(|| anyhow!("hilfer kind requires --nu"))?,
        ),
    };
    let grid = if args.log {
        geomspace(args.t_min, args.t_max, args.points)
    } else {
        linspace(args.t_min, args.t_max, args.points)
    };
    let sig = solve(&problem, &grid)?;
    let mut out = String::from("t,u\n");
    for (&t, &u) in sig.grid().iter().zip(sig.values()) {
        out.push_str(&format!("{},{}\n", format_value(t), format_value(u)));
    }
    emit(&out, args.out.as_deref())
}

fn mode_table(label: &str, modes: &[fracrelax::viscoelastic::Mode]) -> String {
    if modes.is_empty() {
        return format!("{label}: none\n");
    }
    let mut s = format!("{label}:\n");
    for m in modes {
        s.push_str(&format!("  coeff {}  tau {}\n", format_value(m.coeff), format_value(m.tau)));
    }
    s
}

fn reciprocity_scan(mf: &MaterialFunctions) -> f64 {
    let mut worst = 0.0f64;
    for &s in geomspace(0.1, 10.0, 20).iter() {
        let r = fracrelax::viscoelastic::material::reciprocity_residual_mf(
            mf,
            Complex64::new(s, 0.0),
        )
        .unwrap_or(f64::INFINITY);
        worst = worst.max(r);
    }
    worst
}

fn cmd_model_report(args: ModelReportArgs) -> Result<()> {
    let text = std::fs::read_to_string(&args.model)
        .with_context(|| format!("IoFailure: reading {}", args.model.display()))?;
    let spec = ModelSpec::from_json(&text)?;
    let mf = material_functions(&spec)?;

    let mut report = String::new();
    report.push_str(&format!("family: {:?}\n", spec.family));
    report.push_str(&format!("type: {}\n", classify(&mf)));
    report.push_str(&format!("nu: {}\n", mf.nu));
    report.push_str(&format!("Jg: {}\n", format_value(mf.jg)));
    report.push_str(&format!("Je: {}\n", mf.je()));
    report.push_str(&format!("Ge: {}\n", format_value(mf.ge)));
    report.push_str(&format!("Gg: {}\n", mf.gg()));
    report.push_str(&format!("J_plus: {}\n", format_value(mf.j_plus)));
    report.push_str(&format!("G_minus: {}\n", format_value(mf.g_minus)));
    report.push_str(&mode_table("retardation modes (J_n, tau_eps)", &mf.j_modes));
    report.push_str(&mode_table("relaxation modes (G_n, tau_sig)", &mf.g_modes));
    report.push_str(&format!("max reciprocity residual: {:.3e}\n", reciprocity_scan(&mf)));
    print!("{report}");

    if let Some(csv_path) = &args.csv {
        let grid = geomspace(args.t_min, args.t_max, args.points);
        let mut csv = String::from("t,J,G\n");
        for &t in &grid {
            csv.push_str(&format!(
                "{},{},{}\n",
                format_value(t),
                format_value(mf.creep(t)?),
                format_value(mf.relaxation(t)?)
            ));
        }
        std::fs::write(csv_path, csv)
            .with_context(|| format!("IoFailure: writing {}", csv_path.display()))?;
    }
    Ok(())
}

fn read_history_csv(path: &PathBuf) -> Result<SampledSignal> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("IoFailure: reading {}", path.display()))?;
    let mut grid = Vec::new();
    let mut values = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if i == 0 {
            continue; // header
        }
        if line.trim().is_empty() {
            continue;
        }
        let mut cells = line.split(',');
        let (t, v) = (cells.next(), cells.next());
        let parse = |c: Option<&str>| -> Result<f64> {
            c.ok_or_else(|| anyhow!("MalformedCsv: line {} needs t,value", i + 1))?
                .trim()
                .parse::<f64>()
                .map_err(|e| anyhow!("MalformedCsv: line {}: {e}", i + 1))
        };
        grid.push(parse(t)?);
        values.push(parse(v)?);
    }
    SampledSignal::new(grid, values).map_err(|e| anyhow!("MalformedCsv: {e}"))
}

fn cmd_respond(args: RespondArgs) -> Result<()> {
    let text = std::fs::read_to_string(&args.model)
        .with_context(|| format!("IoFailure: reading {}", args.model.display()))?;
    let spec = ModelSpec::from_json(&text)?;
    let mf = material_functions(&spec)?;
    let history = read_history_csv(&args.history)?;
    let mode = match args.mode {
        ModeArg::StressToStrain => ResponseMode::StressToStrain,
        ModeArg::StrainToStress => ResponseMode::StrainToStress,
    };
    let out_sig = respond(&mf, &history, mode)?;
    let mut out = String::from("t,value\n");
    for (&t, &v) in out_sig.grid().iter().zip(out_sig.values()) {
        out.push_str(&format!("{},{}\n", format_value(t), format_value(v)));
    }
    emit(&out, args.out.as_deref())
}

fn emit(content: &str, path: Option<&std::path::Path>) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, content)
            .with_context(|| format!("IoFailure: writing {}", p.display())),
        None => {
            std::io::stdout().write_all(content.as_bytes()).context("IoFailure: stdout")?;
            Ok(())
        }
    }
}
