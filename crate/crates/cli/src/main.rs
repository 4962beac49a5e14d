use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use arcram::lab::{
    generic_jump_scan, strong_filtration_check, swan_infinity_estimate, verify_jet_order, ArcLiteral,
    ExperimentReport, JetOrderConfig, ScanConfig,
};
use arcram::{Arc, CoverSpec, Error, Field, RepSpec};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

#[derive(Parser)]
#[command(name = "arcram", version, about = "Wild ramification of covers of k[[T,U]] along arcs")]
struct Cli {
    /// Residue characteristic.
    #[arg(long, global = true, default_value_t = 3)]
    p: u32,
    /// Degree of the coefficient field over F_p.
    #[arg(long, global = true, default_value_t = 1)]
    ext_degree: u32,
    /// Working precision (number of series coefficients).
    #[arg(long, global = true, default_value_t = arcram::DEFAULT_PRECISION)]
    precision: i64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Cmd {
    /// Wild jumps of the cover restricted to an arc.
    Jumps {
        cover: PathBuf,
        #[arg(long)]
        arc: String,
    },
    /// Intersection multiplicity of two arcs.
    Intersect {
        #[arg(long)]
        c: String,
        #[arg(long)]
        d: String,
    },
    /// Hamburger–Noether expansion of an arc.
    Hn {
        #[arg(long)]
        arc: String,
    },
    /// Lifts of an arc to a Kummer cover.
    Lift {
        cover: PathBuf,
        #[arg(long)]
        arc: String,
    },
    /// Check that arcs tangent beyond the jet threshold share their wild jumps.
    VerifyJetOrder {
        cover: PathBuf,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 6)]
        rmax: u32,
    },
    /// Maximal and most frequent jumps along sampled jets of each contact order.
    GenericScan {
        cover: PathBuf,
        #[arg(long, default_value_t = 9)]
        rmax: u32,
        #[arg(long, default_value_t = 50)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Compare whole ramification filtrations of tangent arcs.
    StrongCheck {
        cover: PathBuf,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 6)]
        rmax: u32,
    },
    /// Swan conductors of a representation along sampled jets.
    SwanScan {
        cover: PathBuf,
        #[arg(long)]
        rep: PathBuf,
        #[arg(long, default_value_t = 9)]
        rmax: u32,
        #[arg(long, default_value_t = 50)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Serialize)]
struct ScanCsv {
    r: u32,
    i: usize,
    w_max: i64,
    w_mode: i64,
    ratio: f64,
}

#[derive(Serialize)]
struct SwanCsv<'a> {
    r: u32,
    sw_max: &'a str,
    sw_mode: &'a str,
    ratio: f64,
}

struct Ctx {
    field: Field,
    prec: i64,
    format: Format,
}

impl Ctx {
    fn arc(&self, literal: &str) -> anyhow::Result<Arc> {
        let lit = ArcLiteral::from_json(literal)?;
        Ok(lit.to_arc(&self.field, self.prec)?)
    }

    fn cover(&self, path: &Path) -> anyhow::Result<CoverSpec> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        CoverSpec::from_json(&self.field, &text).with_context(|| format!("parsing {}", path.display()))
    }

    fn emit(&self, v: serde_json::Value) -> anyhow::Result<()> {
        if self.format == Format::Csv {
            bail!("csv output is only available for generic-scan and swan-scan");
        }
        println!("{v}");
        Ok(())
    }

    fn report<R: Serialize>(&self, rep: &ExperimentReport<R>) -> anyhow::Result<()> {
        if self.format == Format::Csv {
            bail!("csv output is only available for generic-scan and swan-scan");
        }
        std::io::stdout().write_all(rep.to_json_lines().as_bytes())?;
        Ok(())
    }
}

fn csv_out<T: Serialize>(rows: impl IntoIterator<Item = T>) -> anyhow::Result<()> {
    let mut w = csv::Writer::from_writer(std::io::stdout());
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<()> {
    let field = Field::new(cli.p, cli.ext_degree).with_context(|| format!("F_{}^{}", cli.p, cli.ext_degree))?;
    let ctx = Ctx {
        field,
        prec: cli.precision,
        format: cli.format,
    };
    let jet = |trials, seed, r_max| JetOrderConfig {
        trials,
        seed,
        r_max,
        precision: ctx.prec,
    };
    let scan = |r_max, samples_per_r, seed| ScanConfig {
        r_max,
        samples_per_r,
        seed,
        precision: ctx.prec,
    };
    match cli.cmd {
        Cmd::Jumps { cover, arc } => {
            let cv = ctx.cover(&cover)?;
            let c = ctx.arc(&arc)?;
            let fl = cv.ramification_on_arc(&c)?;
            ctx.emit(json!({
                "arc": ArcLiteral::from(&c),
                "wild_jumps": cv.wild_jumps_on_arc(&c)?,
                "lower_jumps": fl.filtration().lower_jumps(),
            }))
        }
        Cmd::Intersect { c, d } => {
            let (c, d) = (ctx.arc(&c)?, ctx.arc(&d)?);
            let value = match c.intersect(&d) {
                Ok(n) => json!(n),
                Err(Error::Infinite) => json!("infinite"),
                Err(e) => return Err(e.into()),
            };
            ctx.emit(json!({ "intersection": value }))
        }
        Cmd::Hn { arc } => ctx.emit(ctx.arc(&arc)?.hn_expand()?.to_json()),
        Cmd::Lift { cover, arc } => {
            let cv = ctx.cover(&cover)?;
            let c = ctx.arc(&arc)?;
            let lifts: Vec<ArcLiteral> = cv.lift_arc_kummer(&c)?.iter().map(ArcLiteral::from).collect();
            ctx.emit(json!({ "count": lifts.len(), "lifts": lifts }))
        }
        Cmd::VerifyJetOrder { cover, trials, seed, rmax } => {
            ctx.report(&verify_jet_order(&ctx.cover(&cover)?, &jet(trials, seed, rmax))?)
        }
        Cmd::StrongCheck { cover, trials, seed, rmax } => {
            ctx.report(&strong_filtration_check(&ctx.cover(&cover)?, &jet(trials, seed, rmax))?)
        }
        Cmd::GenericScan { cover, rmax, samples, seed } => {
            let rep = generic_jump_scan(&ctx.cover(&cover)?, &scan(rmax, samples, seed))?;
            match ctx.format {
                Format::Json => ctx.report(&rep),
                Format::Csv => csv_out(rep.records.iter().map(|r| ScanCsv {
                    r: r.r,
                    i: r.i,
                    w_max: r.w_max,
                    w_mode: r.w_mode,
                    ratio: r.ratio,
                })),
            }
        }
        Cmd::SwanScan { cover, rep, rmax, samples, seed } => {
            let text = std::fs::read_to_string(&rep).with_context(|| format!("reading {}", rep.display()))?;
            let chars = RepSpec::from_json(&text)?;
            let out = swan_infinity_estimate(&ctx.cover(&cover)?, &chars, &scan(rmax, samples, seed))?;
            match ctx.format {
                Format::Json => ctx.report(&out),
                Format::Csv => csv_out(out.records.iter().map(|r| SwanCsv {
                    r: r.r,
                    sw_max: &r.sw_max,
                    sw_mode: &r.sw_mode,
                    ratio: r.ratio,
                })),
            }
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
