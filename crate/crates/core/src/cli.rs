//! Command-line entry point wiring the pipeline stages together.
//!
//! `extract` turns a report into an FD file, `validate` checks one, `plan`
//! compiles an FD into a timed plan, `render` draws a plan, and `simulate`
//! runs the whole chain. Diagnostics go to stderr as warnings without
//! failing the run; hard errors exit 1 with one machine-readable line.

use crate::extract::extract_fd;
use crate::fd::{parse_fd, parse_fd_unchecked, serialize_fd, validate_fd, ParseError};
use crate::lexicon::{Lexicon, LexiconError, ENGLISH, FRENCH_CUES};
use crate::plan::{import_plan, plan, plan_to_json, ExportedPlan, PlanError, PlannerConfig};
use crate::render::{render_animation, FrameSpec, RenderError};
use clap::{Args, Parser, Subcommand};
use serde::Deserialize;
use std::path::{Path, PathBuf};

#[derive(Parser, Debug)]
#[command(
    name = "carsim",
    version,
    about = "Compiles written car-accident reports into timed top-down animations"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Extract a formal accident description from a report text.
    Extract(CommonArgs),
    /// Check a formal description and report every violated invariant.
    Validate(CommonArgs),
    /// Compile a formal description into a timed animation plan.
    Plan(CommonArgs),
    /// Draw the frames of an exported animation plan.
    Render(CommonArgs),
    /// Full chain: report text to rendered frames.
    Simulate(CommonArgs),
}

#[derive(Args, Debug, Default)]
struct CommonArgs {
    /// Input file; the report text, FD document, or plan export the
    /// subcommand consumes.
    input: Option<PathBuf>,
    /// Output file (extract, plan) or frame directory (render, simulate).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Lexicon file; falls back to CARSIM_LEXICON, then the built-in English
    /// tables.
    #[arg(long, env = "CARSIM_LEXICON")]
    lexicon: Option<PathBuf>,
    /// TOML file with [planner] and [frames] tables. Flags win over it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Number of frames to render.
    #[arg(long)]
    frames: Option<u32>,
    /// Radius of the circle the accident planner removes around a collision.
    #[arg(long)]
    collision_radius: Option<f64>,
    /// Write the built-in lexicon files into this directory and, if no input
    /// is given, exit.
    #[arg(long)]
    seed_defaults: Option<PathBuf>,
}

pub struct AppError {
    pub code: &'static str,
    pub message: String,
}

impl AppError {
    fn new(code: &'static str, message: impl Into<String>) -> Self {
        AppError { code, message: message.into() }
    }
}

impl From<ParseError> for AppError {
    fn from(e: ParseError) -> Self {
        let code = match e {
            ParseError::Invalid(_) => "fd.invalid",
            _ => "fd.parse",
        };
        AppError::new(code, e.to_string())
    }
}

impl From<LexiconError> for AppError {
    fn from(e: LexiconError) -> Self {
        AppError::new("lexicon.parse", e.to_string())
    }
}

impl From<PlanError> for AppError {
    fn from(e: PlanError) -> Self {
        let code = match e {
            PlanError::InvalidConfig(_) => "plan.config",
            PlanError::InvalidDescription(_) => "plan.invalid_description",
            PlanError::TooManySameDirection { .. } => "plan.direction_overflow",
            PlanError::TrajectoryInsideCircle { .. } => "plan.inside_circle",
            PlanError::CollisionOrderViolated { .. } => "plan.order",
            PlanError::MissingPosition(_) => "plan.position",
        };
        AppError::new(code, e.to_string())
    }
}

impl From<RenderError> for AppError {
    fn from(e: RenderError) -> Self {
        let code = match e {
            RenderError::TimeOutOfRange(_) => "render.time",
            RenderError::InvalidSpec(_) => "render.spec",
            RenderError::Io(_) => "io.write",
        };
        AppError::new(code, e.to_string())
    }
}

/// Settings file: both tables optional, both overridable by flags.
#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct ConfigFile {
    planner: PlannerConfig,
    frames: FrameSpec,
}

struct Settings {
    planner: PlannerConfig,
    frames: FrameSpec,
}

fn read_to_string(path: &Path) -> Result<String, AppError> {
    std::fs::read_to_string(path)
        .map_err(|e| AppError::new("io.read", format!("cannot read {}: {e}", path.display())))
}

fn write_output(path: &Path, contents: &str) -> Result<(), AppError> {
    std::fs::write(path, contents)
        .map_err(|e| AppError::new("io.write", format!("cannot write {}: {e}", path.display())))
}

fn load_settings(args: &CommonArgs) -> Result<Settings, AppError> {
    let mut file = ConfigFile::default();
    if let Some(path) = &args.config {
        let text = read_to_string(path)?;
        file = toml::from_str(&text)
            .map_err(|e| AppError::new("config.parse", format!("{}: {e}", path.display())))?;
    }
    let mut settings = Settings { planner: file.planner, frames: file.frames };
    if let Some(r) = args.collision_radius {
        settings.planner.collision_radius = r;
    }
    if let Some(n) = args.frames {
        settings.frames.frame_count = n;
    } else if args.config.is_none() {
        settings.frames.frame_count = settings.planner.frames_hint + 1;
    }
    Ok(settings)
}

fn load_lexicon(args: &CommonArgs) -> Result<Lexicon, AppError> {
    match &args.lexicon {
        Some(path) => Ok(Lexicon::load(path)?),
        None => Ok(Lexicon::english()),
    }
}

fn seed_defaults(dir: &Path) -> Result<(), AppError> {
    std::fs::create_dir_all(dir)
        .map_err(|e| AppError::new("io.write", format!("cannot create {}: {e}", dir.display())))?;
    write_output(&dir.join("english.lex"), ENGLISH)?;
    write_output(&dir.join("french_cues.lex"), FRENCH_CUES)?;
    Ok(())
}

fn warn_all(diags: &[String]) {
    for d in diags {
        eprintln!("warning: {d}");
    }
}

fn require_input(args: &CommonArgs) -> Result<&Path, AppError> {
    args.input.as_deref().ok_or_else(|| AppError::new("cli.args", "an input file is required"))
}

/// Run one subcommand; the returned integer is the process exit status.
pub fn run(cli: Cli) -> Result<i32, AppError> {
    let args = match &cli.command {
        Command::Extract(a)
        | Command::Validate(a)
        | Command::Plan(a)
        | Command::Render(a)
        | Command::Simulate(a) => a,
    };
    if let Some(dir) = &args.seed_defaults {
        seed_defaults(dir)?;
        if args.input.is_none() {
            return Ok(0);
        }
    }
    let settings = load_settings(args)?;

    match &cli.command {
        Command::Extract(args) => {
            let lex = load_lexicon(args)?;
            let text = read_to_string(require_input(args)?)?;
            let outcome = extract_fd(&text, &lex);
            warn_all(&outcome.diagnostics);
            let doc = serialize_fd(&outcome.fd);
            match &args.out {
                Some(path) => write_output(path, &doc)?,
                None => print!("{doc}"),
            }
            Ok(0)
        }
        Command::Validate(args) => {
            let text = read_to_string(require_input(args)?)?;
            let fd = parse_fd_unchecked(&text)?;
            let violations = validate_fd(&fd);
            for v in &violations {
                println!("{v}");
            }
            Ok(if violations.is_empty() { 0 } else { 1 })
        }
        Command::Plan(args) => {
            let text = read_to_string(require_input(args)?)?;
            let fd = parse_fd(&text)?;
            let result = plan(&fd, &settings.planner)?;
            warn_all(&result.scene.diagnostics);
            let json = plan_to_json(&result);
            match &args.out {
                Some(path) => write_output(path, &json)?,
                None => println!("{json}"),
            }
            Ok(0)
        }
        Command::Render(args) => {
            let text = read_to_string(require_input(args)?)?;
            let doc: ExportedPlan = serde_json::from_str(&text)
                .map_err(|e| AppError::new("plan.parse", e.to_string()))?;
            let result = import_plan(&doc);
            let out = args.out.clone().unwrap_or_else(|| PathBuf::from("frames"));
            let paths = render_animation(&result, &settings.frames, &out)?;
            eprintln!("wrote {} frames to {}", paths.len(), out.display());
            Ok(0)
        }
        Command::Simulate(args) => {
            let lex = load_lexicon(args)?;
            let text = read_to_string(require_input(args)?)?;
            let outcome = extract_fd(&text, &lex);
            warn_all(&outcome.diagnostics);
            let result = plan(&outcome.fd, &settings.planner)?;
            warn_all(&result.scene.diagnostics);
            let out = args.out.clone().unwrap_or_else(|| PathBuf::from("frames"));
            let paths = render_animation(&result, &settings.frames, &out)?;
            eprintln!("wrote {} frames to {}", paths.len(), out.display());
            Ok(0)
        }
    }
}
