//! The `cablefloer` command line.
//!
//! Exit codes: 0 success, 1 failed verification or internal error, 2 usage or parse
//! error, 3 a request outside the supported regime.

pub mod report;
pub mod svg;

use std::io::Write;

use cablefloer::cables::{classify, CableLink, Grading};
use cablefloer::homology::{format_decomposition, hfl_hat, hfl_minus, module_decomposition};
use cablefloer::knots::parse_knot;
use cablefloer::oracle::{sweep_hat, sweep_minus};
use cablefloer::presets::preset;
use cablefloer::surgery::{surgery_description, SurgeryFraming};
use cablefloer::{Error, GradedDim, HalfInt};
use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};

use report::{Document, Output, OutputTable, ProfileRow, TableRow, VerifyReport};

#[derive(Debug, Parser)]
#[command(name = "cablefloer", version, about = "Link Floer homology of L-space cable links")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Diagonal h-function and β profile.
    Profile(Common),
    /// HFL⁻ at one grading.
    Hfl(GradingArgs),
    /// HFL-hat at one grading.
    Hflhat(GradingArgs),
    /// Nonzero groups over a window, one row per orbit of the symmetric group.
    Table(TableArgs),
    /// U-module decomposition of HFL⁻.
    Decompose(Common),
    /// Closed formulas against the cube-complex computation.
    Verify(VerifyArgs),
    /// Linking-matrix determinant and connected-sum description of a surgery.
    Surgery(SurgeryArgs),
    /// Diagonal Euler characteristic polynomial.
    Chi(Common),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Tsv,
    Json,
    Svg,
}

#[derive(Debug, Clone, Args)]
pub struct LinkArgs {
    /// unknot, trefoil, torus(p,q), cable(<knot>,m,n) or poly:<polynomial>.
    #[arg(long, conflicts_with = "preset")]
    pub knot: Option<String>,
    #[arg(long = "r")]
    pub r: Option<usize>,
    #[arg(long = "m", allow_hyphen_values = true)]
    pub m: Option<i64>,
    #[arg(long = "n", allow_hyphen_values = true)]
    pub n: Option<i64>,
    /// T22, T33, T46, T69, CABLE-TREFOIL-46, TREFOIL-22, HOPF or T<n><n>.
    #[arg(long)]
    pub preset: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    #[command(flatten)]
    pub link: LinkArgs,
    /// Diagonal window `A:B`, half-integers allowed.
    #[arg(long, env = "CABLEFLOER_WINDOW", allow_hyphen_values = true, value_parser = parse_window)]
    pub window: Option<(HalfInt, HalfInt)>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, Args)]
pub struct GradingArgs {
    #[command(flatten)]
    pub common: Common,
    /// Comma-separated coordinates such as `1/2,-3/2`.
    #[arg(long, allow_hyphen_values = true)]
    pub grading: String,
}

#[derive(Debug, Clone, Args)]
pub struct TableArgs {
    #[command(flatten)]
    pub common: Common,
    /// Tabulate HFL-hat instead of HFL⁻.
    #[arg(long)]
    pub hat: bool,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub common: Common,
    /// Also compare HFL-hat wherever no higher differential can interfere.
    #[arg(long)]
    pub hat: bool,
}

#[derive(Debug, Clone, Args)]
pub struct SurgeryArgs {
    #[command(flatten)]
    pub common: Common,
    /// Surgery coefficients `p1,p2,...`.
    #[arg(long, allow_hyphen_values = true, value_delimiter = ',', required = true)]
    pub p: Vec<i64>,
}

pub fn parse_window(s: &str) -> Result<(HalfInt, HalfInt), String> {
    let (a, b) = s.split_once(':').ok_or_else(|| format!("expected A:B, got {s:?}"))?;
    let a: HalfInt = a.parse().map_err(|e| format!("{e}"))?;
    let b: HalfInt = b.parse().map_err(|e| format!("{e}"))?;
    if a > b {
        return Err(format!("empty window {s:?}"));
    }
    Ok((a, b))
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Lib(Error),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(m) => Failure::Usage(m),
            e @ (Error::InvalidPolynomial(_)
            | Error::GradingParity { .. }
            | Error::GradingLength { .. }
            | Error::Precondition(_)) => Failure::Usage(e.to_string()),
            e => Failure::Lib(e),
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Unsupported(_)
        | Error::UnsupportedInBoundaryRegime(_)
        | Error::NotLSpaceLink
        | Error::Rejected(_)
        | Error::CablingCondition { .. }
        | Error::NotCoprime(..) => 3,
        _ => 1,
    }
}

/// Parses `argv` (including the program name), runs the command and returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    match execute(&cli.command, out) {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}\n\n{}", Cli::command().render_usage());
            2
        }
        Err(Failure::Lib(e)) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
        Err(Failure::Verification) => 1,
    }
}

fn resolve(args: &LinkArgs) -> Result<(CableLink, String), Failure> {
    if let Some(name) = &args.preset {
        let p = preset(name)?;
        let caption = format!("{}: {}", p.name, p.caption);
        return Ok((p.link()?, caption));
    }
    let knot = args
        .knot
        .as_deref()
        .ok_or_else(|| Failure::Usage("either --preset or --knot is required".into()))?;
    let missing = |f: &str| Failure::Usage(format!("--{f} is required with --knot"));
    let r = args.r.ok_or_else(|| missing("r"))?;
    let m = args.m.ok_or_else(|| missing("m"))?;
    let n = args.n.ok_or_else(|| missing("n"))?;
    let link = classify(&parse_knot(knot)?, r, m, n)?;
    let caption = link.to_string();
    Ok((link, caption))
}

/// Snaps a window inward onto the coordinate lattice of `link`.
fn lattice_window(link: &CableLink, window: Option<(HalfInt, HalfInt)>) -> Result<(HalfInt, HalfInt), Failure> {
    let (lo, hi) = window.unwrap_or_else(|| link.default_window());
    let p = link.parity();
    let lo = if lo.parity() == p { lo } else { lo + HalfInt::HALF };
    let hi = if hi.parity() == p { hi } else { hi - HalfInt::HALF };
    if lo > hi {
        return Err(Failure::Usage(format!("window contains no lattice point for {link}")));
    }
    Ok((lo, hi))
}

fn pick(format: Option<Format>, default: Format, allowed: &[Format]) -> Result<Format, Failure> {
    let f = format.unwrap_or(default);
    if allowed.contains(&f) {
        Ok(f)
    } else {
        Err(Failure::Usage(format!(
            "format {f:?} is not available for this command"
        )))
    }
}

fn dims_cell(d: &GradedDim) -> String {
    d.iter().map(|(m, n)| format!("{m}:{n}")).collect::<Vec<_>>().join(",")
}

fn execute(cmd: &Command, out: &mut dyn Write) -> Result<(), Failure> {
    use Format::*;
    let io = |e: std::io::Error| Failure::Lib(Error::Precondition(format!("write failed: {e}")));
    match cmd {
        Command::Profile(c) => {
            let (link, _) = resolve(&c.link)?;
            link.require_lspace()?;
            let window = lattice_window(&link, c.window)?;
            let mut rows = Vec::new();
            let mut k = window.0;
            while k <= window.1 {
                rows.push(ProfileRow {
                    k,
                    hh: link.hh(k)?,
                    beta: link.beta(k)?,
                });
                k = k + 1;
            }
            match pick(c.format, Tsv, &[Tsv, Json])? {
                Json => writeln!(
                    out,
                    "{}",
                    Document::new(&link, Output::Profile { window, rows }).to_json()
                ),
                _ => {
                    let mut s = String::from("k\thh\tbeta\n");
                    for r in &rows {
                        s += &format!("{}\t{}\t{}\n", r.k, r.hh, r.beta);
                    }
                    write!(out, "{s}")
                }
            }
            .map_err(io)
        }
        Command::Hfl(g) | Command::Hflhat(g) => {
            let hat = matches!(cmd, Command::Hflhat(_));
            let (link, _) = resolve(&g.common.link)?;
            let v: Grading = g.grading.parse()?;
            let dims = if hat {
                hfl_hat(&link, &v)?
            } else {
                hfl_minus(&link, &v)?
            };
            match pick(g.common.format, Json, &[Text, Tsv, Json])? {
                Text => writeln!(out, "{dims}"),
                Tsv => writeln!(out, "{v}\t{}", dims_cell(&dims)),
                _ => {
                    let doc = Document::new(
                        &link,
                        Output::Hfl {
                            grading: v,
                            hat,
                            maslov_dims: dims,
                        },
                    );
                    writeln!(out, "{}", doc.to_json())
                }
            }
            .map_err(io)
        }
        Command::Table(t) => {
            let (link, caption) = resolve(&t.common.link)?;
            let window = lattice_window(&link, t.common.window)?;
            let format = pick(t.common.format, Tsv, &[Tsv, Json, Svg])?;
            let table = build_table(&link, caption, window, t.hat, format)?;
            match format {
                Json => writeln!(out, "{}", Document::new(&link, Output::Table(table)).to_json()),
                Svg => write!(out, "{}", svg::render(&table, link.r(), stable_corner(&link)?)),
                _ => write!(out, "{}", table_tsv(&table, t.hat)),
            }
            .map_err(io)
        }
        Command::Decompose(c) => {
            let (link, _) = resolve(&c.link)?;
            let summands = module_decomposition(&link)?;
            let summary = format_decomposition(link.r(), &summands);
            match pick(c.format, Text, &[Text, Json])? {
                Json => writeln!(
                    out,
                    "{}",
                    Document::new(&link, Output::Decompose { summary, summands }).to_json()
                ),
                _ => writeln!(out, "{summary}"),
            }
            .map_err(io)
        }
        Command::Verify(v) => {
            let (link, _) = resolve(&v.common.link)?;
            link.require_lspace()?;
            let window = lattice_window(&link, v.common.window)?;
            let minus = sweep_minus(&link, window.0, window.1)?;
            let hat = if v.hat {
                link.require_strict("hat verification")?;
                Some(sweep_hat(&link, window.0, window.1)?)
            } else {
                None
            };
            let first_counterexample = minus
                .mismatches
                .first()
                .or_else(|| hat.as_ref().and_then(|h| h.mismatches.first()))
                .cloned();
            let passed = first_counterexample.is_none();
            let report = VerifyReport {
                window,
                minus,
                hat,
                passed,
                first_counterexample,
            };
            match pick(v.common.format, Text, &[Text, Json])? {
                Json => writeln!(
                    out,
                    "{}",
                    Document::new(&link, Output::Verify(report.clone())).to_json()
                ),
                _ => write!(out, "{}", verify_text(&link, &report)),
            }
            .map_err(io)?;
            if passed {
                Ok(())
            } else {
                Err(Failure::Verification)
            }
        }
        Command::Surgery(s) => {
            let (link, _) = resolve(&s.common.link)?;
            if s.p.len() != link.r() {
                return Err(Failure::Usage(format!(
                    "expected {} surgery coefficients, got {}",
                    link.r(),
                    s.p.len()
                )));
            }
            let framing = SurgeryFraming::new(s.p.clone(), link.l())?;
            let description = if s.p[0] == link.l() {
                Some(surgery_description(&link, &s.p)?.to_string())
            } else {
                None
            };
            let output = Output::Surgery {
                p: s.p.clone(),
                det: framing.det_lambda(),
                positive_cone: framing.is_positive_cone(),
                description,
            };
            pick(s.common.format, Json, &[Json])?;
            writeln!(out, "{}", Document::new(&link, output).to_json()).map_err(io)
        }
        Command::Chi(c) => {
            let (link, _) = resolve(&c.link)?;
            let polynomial = link.multivariable_chi()?.to_string();
            match pick(c.format, Text, &[Text, Json])? {
                Json => writeln!(out, "{}", Document::new(&link, Output::Chi { polynomial }).to_json()),
                _ => writeln!(out, "{polynomial}"),
            }
            .map_err(io)
        }
    }
}

/// Representatives have non-increasing coordinates; rows come out in ascending grading order.
pub fn build_table(
    link: &CableLink,
    caption: String,
    window: (HalfInt, HalfInt),
    hat: bool,
    format: Format,
) -> Result<OutputTable, Error> {
    if hat {
        link.require_strict("HFL-hat tables")?;
    } else {
        link.require_lspace()?;
    }
    let mut rows = Vec::new();
    for v in Grading::box_iter(window.0, window.1, link.r(), link.parity()) {
        if v.coords().windows(2).any(|w| w[0] < w[1]) {
            continue;
        }
        let dims = if hat { hfl_hat(link, &v)? } else { hfl_minus(link, &v)? };
        if !dims.is_empty() {
            rows.push(TableRow { grading: v, dims });
        }
    }
    rows.sort_by(|a, b| a.grading.cmp(&b.grading));
    let format = match format {
        Format::Text => "text",
        Format::Tsv => "tsv",
        Format::Json => "json",
        Format::Svg => "svg",
    };
    Ok(OutputTable {
        caption,
        format: format.into(),
        window,
        rows,
    })
}

fn stable_corner(link: &CableLink) -> Result<HalfInt, Error> {
    let profile = link.diagonal_profile()?;
    let top = link.r() as i64 - 1;
    let (lo, hi) = profile.window();
    let mut k = lo;
    while k < hi && profile.beta(k + 1) == top {
        k = k + 1;
    }
    Ok(if profile.beta(k) == top { k } else { lo - 1 })
}

pub fn table_tsv(table: &OutputTable, hat: bool) -> String {
    let group = if hat { "HFL-hat" } else { "HFL-minus" };
    let mut s = format!(
        "# {}\n# {group}, nonzero groups with v1 >= v2 >= ..., window {}:{}\ngrading\tmaslov:dim\n",
        table.caption, table.window.0, table.window.1
    );
    for row in &table.rows {
        s += &format!("{}\t{}\n", row.grading, dims_cell(&row.dims));
    }
    s
}

fn verify_text(link: &CableLink, r: &VerifyReport) -> String {
    let mut s = format!("{link}: window {}:{}\n", r.window.0, r.window.1);
    let line = |name: &str, rep: &cablefloer::oracle::SweepReport| {
        format!(
            "{name}: {} ({} checked, {} skipped, {} mismatches)\n",
            if rep.passed() { "pass" } else { "FAIL" },
            rep.checked,
            rep.skipped,
            rep.mismatches.len()
        )
    };
    s += &line("minus", &r.minus);
    if let Some(h) = &r.hat {
        s += &line("hat", h);
    }
    match &r.first_counterexample {
        Some(v) => s += &format!("first counterexample: {v}\n"),
        None => s += "all gradings agree\n",
    }
    s
}
